//! Partial-spread verification: pairwise intersection checks, holes,
//! vector space partition types, and hyperplane spectra.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::codes::SubspaceCode;
use crate::subspace::{ambient_points, dot, Point};
use crate::{Error, Result};

/// Outcome of a pairwise spread check. `valid` holds exactly when every
/// pair of codewords meets trivially, i.e. the minimum subspace distance is
/// 2k for k-dimensional codewords.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub valid: bool,
    pub codeword_count: usize,
    /// Minimum pairwise subspace distance; `None` for fewer than two
    /// codewords.
    pub min_subspace_distance: Option<u32>,
    /// Lexicographically first pair of codeword indices with a nontrivial
    /// meet, when the code is not a partial spread.
    pub witness_pair: Option<(usize, usize)>,
    /// Number of uncovered points, present when the code is valid:
    /// (q^n - 1)/(q - 1) - |C| (q^k - 1)/(q - 1).
    pub hole_count: Option<BigUint>,
}

/// Cap for operations that enumerate every point of the ambient space.
const POINT_ENUMERATION_CAP: u64 = 1 << 24;

/// Number of points of a d-dimensional space over GF(q).
fn point_count(q: u64, d: usize) -> BigUint {
    if d == 0 {
        return BigUint::zero();
    }
    (BigUint::from(q).pow(d as u32) - BigUint::one()) / BigUint::from(q - 1)
}

fn check_enumerable(code: &SubspaceCode) -> Result<()> {
    let total = point_count(code.ctx().q(), code.ambient_dim());
    if total > BigUint::from(POINT_ENUMERATION_CAP) {
        return Err(Error::TooLarge(format!(
            "{total} ambient points exceed the enumeration cap {POINT_ENUMERATION_CAP}"
        )));
    }
    Ok(())
}

/// Checks that all pairwise meets are trivial. Pairs are examined in
/// parallel; the reported witness is the lexicographically first violating
/// pair regardless of thread count.
pub fn verify_spread(code: &SubspaceCode) -> VerificationReport {
    let words = code.codewords();
    let m = words.len();
    let (min_distance, witness) = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut row_min = u32::MAX;
            let mut row_witness = None;
            for j in i + 1..m {
                let d = words[i].distances(&words[j]).expect("codewords share an ambient space");
                row_min = row_min.min(d.subspace);
                if d.dim_meet > 0 && row_witness.is_none() {
                    row_witness = Some((i, j));
                }
            }
            (row_min, row_witness)
        })
        .reduce(
            || (u32::MAX, None),
            |a, b| {
                let min = a.0.min(b.0);
                let witness = match (a.1, b.1) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (w, None) | (None, w) => w,
                };
                (min, witness)
            },
        );
    let valid = witness.is_none();
    let hole_count = valid.then(|| {
        let q = code.ctx().q();
        point_count(q, code.ambient_dim()) - BigUint::from(m) * point_count(q, code.dim())
    });
    VerificationReport {
        valid,
        codeword_count: m,
        min_subspace_distance: (m >= 2).then_some(min_distance),
        witness_pair: witness,
        hole_count,
    }
}

/// The uncovered points of a valid partial spread, in lexicographic order.
pub fn compute_holes(code: &SubspaceCode) -> Result<Vec<Point>> {
    let report = verify_spread(code);
    if !report.valid {
        return Err(Error::NotASpread);
    }
    check_enumerable(code)?;
    let n = code.ambient_dim();
    let all = ambient_points(code.ctx(), n);
    let mut covered = vec![false; all.len()];
    for word in code.codewords() {
        for p in word.enumerate_points() {
            let idx = all.binary_search(&p).expect("point of the ambient space");
            debug_assert!(!covered[idx], "partial spread covers each point at most once");
            covered[idx] = true;
        }
    }
    let holes: Vec<Point> = all
        .into_iter()
        .zip(&covered)
        .filter_map(|(p, &c)| (!c).then_some(p))
        .collect();
    debug_assert_eq!(BigUint::from(holes.len()), report.hole_count.unwrap());
    Ok(holes)
}

/// The type of a vector space partition: multiplicities per member
/// dimension, written k^{m_k} ... 1^{m_1}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PartitionType {
    mults: BTreeMap<u32, BigUint>,
}

impl PartitionType {
    pub fn new<I: IntoIterator<Item = (u32, BigUint)>>(entries: I) -> Self {
        let mut mults = BTreeMap::new();
        for (d, m) in entries {
            if m.is_zero() {
                continue;
            }
            *mults.entry(d).or_insert_with(BigUint::zero) += m;
        }
        PartitionType { mults }
    }

    /// Multiplicity of dimension d.
    pub fn mult(&self, d: u32) -> BigUint {
        self.mults.get(&d).cloned().unwrap_or_else(BigUint::zero)
    }

    /// (dimension, multiplicity) pairs, largest dimension first.
    pub fn entries(&self) -> Vec<(u32, BigUint)> {
        self.mults.iter().rev().map(|(&d, m)| (d, m.clone())).collect()
    }

    /// Smallest dimension with positive multiplicity and its multiplicity:
    /// the tail of the partition and its length.
    pub fn tail(&self) -> Option<(u32, BigUint)> {
        self.mults.iter().next().map(|(&d, m)| (d, m.clone()))
    }

    /// Whether sum_d m_d (q^d - 1) = q^n - 1, i.e. the type is consistent
    /// with a vector space partition of F_q^n.
    pub fn is_full_partition(&self, q: u64, n: u32) -> bool {
        let total: BigUint = self
            .mults
            .iter()
            .map(|(&d, m)| m * (BigUint::from(q).pow(d) - BigUint::one()))
            .sum();
        total == BigUint::from(q).pow(n) - BigUint::one()
    }
}

impl std::fmt::Display for PartitionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.mults.is_empty() {
            return write!(f, "(empty)");
        }
        let parts: Vec<String> = self
            .mults
            .iter()
            .rev()
            .map(|(d, m)| format!("{d}^{m}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The partition type of a valid partial spread: m_k = |C|, and the holes
/// as dimension-1 members when requested (then the full-partition identity
/// holds).
pub fn partition_type(code: &SubspaceCode, count_holes_as_points: bool) -> Result<PartitionType> {
    let report = verify_spread(code);
    if !report.valid {
        return Err(Error::NotASpread);
    }
    let mut entries = vec![(code.dim() as u32, BigUint::from(code.len()))];
    if count_holes_as_points {
        entries.push((1, report.hole_count.expect("valid spread")));
    }
    Ok(PartitionType::new(entries))
}

/// Per-hyperplane section data for a partial spread: `contained` codewords
/// lie inside the hyperplane (section dimension k), `cut` codewords meet it
/// in dimension k-1, and `holes_on` of the spread's holes lie on it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HyperplaneRecord {
    pub contained: usize,
    pub cut: usize,
    pub holes_on: usize,
}

/// Distribution of section types over all hyperplanes.
#[derive(Clone, Debug)]
pub struct HyperplaneSpectrum {
    /// One record per hyperplane, in normal-vector enumeration order.
    pub records: Vec<HyperplaneRecord>,
    /// Number of hyperplanes per section type (holes of the section counted
    /// as dimension-1 members).
    pub by_type: BTreeMap<PartitionType, u64>,
}

impl HyperplaneSpectrum {
    /// Counts of hyperplanes by number of contained codewords, ascending.
    pub fn by_contained(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for r in &self.records {
            *out.entry(r.contained).or_insert(0) += 1;
        }
        out
    }
}

/// Classifies every hyperplane of the ambient space by its section with the
/// spread and the holes lying on it. A codeword U is contained in the
/// hyperplane with normal v iff every basis row of U is orthogonal to v.
pub fn hyperplane_spectrum(code: &SubspaceCode) -> Result<HyperplaneSpectrum> {
    let report = verify_spread(code);
    if !report.valid {
        return Err(Error::NotASpread);
    }
    check_enumerable(code)?;
    let ctx = code.ctx();
    let holes = compute_holes(code)?;
    let k = code.dim() as u32;
    let normals = ambient_points(ctx, code.ambient_dim());
    let records: Vec<HyperplaneRecord> = normals
        .par_iter()
        .map(|normal| {
            let nv = normal.coords();
            let contained = code
                .codewords()
                .iter()
                .filter(|w| (0..w.dim()).all(|r| dot(ctx, w.basis().row(r), nv) == 0))
                .count();
            let holes_on = holes.iter().filter(|h| dot(ctx, h.coords(), nv) == 0).count();
            HyperplaneRecord { contained, cut: code.len() - contained, holes_on }
        })
        .collect();
    let mut by_type = BTreeMap::new();
    for r in &records {
        let mut entries = vec![(k, BigUint::from(r.contained))];
        if k >= 2 {
            // Cut codewords of 1-dimensional members vanish from the section.
            entries.push((k - 1, BigUint::from(r.cut)));
        }
        entries.push((1, BigUint::from(r.holes_on)));
        *by_type.entry(PartitionType::new(entries)).or_insert(0) += 1;
    }
    Ok(HyperplaneSpectrum { records, by_type })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::multi_component;
    use crate::field::FieldCtx;
    use crate::subspace::Subspace;

    fn gf2() -> FieldCtx {
        FieldCtx::new(2, 1).unwrap()
    }

    #[test]
    fn multi_component_2_10_4_verifies() {
        let code = multi_component(2, 10, 4).unwrap();
        let report = verify_spread(&code);
        assert!(report.valid);
        assert_eq!(report.codeword_count, 65);
        assert_eq!(report.min_subspace_distance, Some(8));
        assert_eq!(report.hole_count, Some(BigUint::from(48u32)));
        assert_eq!(compute_holes(&code).unwrap().len(), 48);
    }

    #[test]
    fn overlapping_pair_reported() {
        let u = Subspace::from_generators(gf2(), 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let v = Subspace::from_generators(gf2(), 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let code = SubspaceCode::new(gf2(), 4, 2, vec![u, v], None).unwrap();
        let report = verify_spread(&code);
        assert!(!report.valid);
        assert_eq!(report.witness_pair, Some((0, 1)));
        assert!(report.hole_count.is_none());
        assert!(matches!(compute_holes(&code), Err(Error::NotASpread)));
    }

    #[test]
    fn partition_types() {
        let code = multi_component(2, 10, 4).unwrap();
        let with_holes = partition_type(&code, true).unwrap();
        assert_eq!(with_holes.mult(4), BigUint::from(65u32));
        assert_eq!(with_holes.mult(1), BigUint::from(48u32));
        assert!(with_holes.is_full_partition(2, 10));
        assert_eq!(with_holes.to_string(), "4^65 1^48");

        let without = partition_type(&code, false).unwrap();
        assert_eq!(without.mult(1), BigUint::zero());
        assert!(!without.is_full_partition(2, 10));
        assert_eq!(without.tail(), Some((4, BigUint::from(65u32))));
    }

    #[test]
    fn spectrum_identities_2_8_3() {
        let code = multi_component(2, 8, 3).unwrap();
        let spectrum = hyperplane_spectrum(&code).unwrap();
        assert_eq!(spectrum.records.len(), 255);
        let contained_flags: usize = spectrum.records.iter().map(|r| r.contained).sum();
        // Each 3-dim codeword lies in 2^5 - 1 hyperplanes of F_2^8.
        assert_eq!(contained_flags, 33 * 31);
        let hole_flags: usize = spectrum.records.iter().map(|r| r.holes_on).sum();
        assert_eq!(hole_flags, 24 * 127);
        let pair_flags: usize =
            spectrum.records.iter().map(|r| r.contained * (r.contained - 1) / 2).sum();
        // Disjoint pairs span dimension 6; 3 hyperplanes of F_2^8 contain a
        // fixed 6-space.
        assert_eq!(pair_flags, 33 * 32 / 2 * 3);
        let total: u64 = spectrum.by_type.values().sum();
        assert_eq!(total, 255);
    }

    #[test]
    fn full_spread_2_8_4_has_no_holes() {
        // A 17-element 4-spread of F_2^8: the lifted MRD code [I | A]
        // together with the complementary block [0 | I].
        let lifted = crate::codes::lifted_mrd(2, 8, 4, 8).unwrap();
        assert_eq!(lifted.len(), 16);
        let mut words = lifted.codewords().to_vec();
        let tail = Subspace::from_generators(
            gf2(),
            8,
            &(0..4)
                .map(|i| {
                    let mut v = vec![0u64; 8];
                    v[4 + i] = 1;
                    v
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        words.push(tail);
        let spread = SubspaceCode::new(gf2(), 8, 4, words, Some(8)).unwrap();
        assert_eq!(spread.len(), 17);
        let report = verify_spread(&spread);
        assert!(report.valid);
        assert_eq!(report.hole_count, Some(BigUint::zero()));
        assert!(compute_holes(&spread).unwrap().is_empty());
        let ptype = partition_type(&spread, true).unwrap();
        assert_eq!(ptype.to_string(), "4^17");
        assert!(ptype.is_full_partition(2, 8));
    }

    #[test]
    fn spectrum_of_point_code() {
        // k = 1: cut codewords vanish from the sections entirely.
        let words: Vec<Subspace> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            .iter()
            .map(|v| Subspace::from_generators(gf2(), 3, &[v.to_vec()]).unwrap())
            .collect();
        let code = SubspaceCode::new(gf2(), 3, 1, words, Some(2)).unwrap();
        let spectrum = hyperplane_spectrum(&code).unwrap();
        assert_eq!(spectrum.records.len(), 7);
        let contained: usize = spectrum.records.iter().map(|r| r.contained).sum();
        assert_eq!(contained, 3 * 3);
        for section in spectrum.by_type.keys() {
            assert!(section.entries().iter().all(|(d, _)| *d == 1));
        }
    }

    #[test]
    fn point_count_formula() {
        assert_eq!(point_count(2, 10), BigUint::from(1023u32));
        assert_eq!(point_count(3, 4), BigUint::from(40u32));
        assert_eq!(point_count(2, 0), BigUint::zero());
    }

    mod point_disjointness {
        use super::*;
        use proptest::prelude::*;
        use std::collections::HashSet;

        proptest! {
            // The rank-based pairwise check agrees with point-set
            // disjointness on random codes.
            #[test]
            fn verify_agrees_with_point_sets(seed in 0u64..300) {
                let ctx = gf2();
                let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(0x2545f4914f6cdd1d);
                let mut next = move |m: u64| {
                    state = state.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(0x2545f4914f6cdd1d);
                    (state >> 33) % m
                };
                let n = 5usize;
                let mut words = Vec::new();
                while words.len() < 3 {
                    let gens: Vec<Vec<u64>> = (0..2).map(|_| (0..n).map(|_| next(2)).collect()).collect();
                    if let Ok(s) = Subspace::from_generators(ctx, n, &gens) {
                        if s.dim() == 2 && !words.contains(&s) {
                            words.push(s);
                        }
                    }
                }
                let code = SubspaceCode::new(ctx, n, 2, words, None).unwrap();
                let report = verify_spread(&code);
                let mut seen: HashSet<Point> = HashSet::new();
                let mut overlap = false;
                for w in code.codewords() {
                    for p in w.enumerate_points() {
                        overlap |= !seen.insert(p);
                    }
                }
                prop_assert_eq!(report.valid, !overlap);
                if report.valid {
                    prop_assert_eq!(report.hole_count, Some(BigUint::from(31u32 - 9)));
                }
            }
        }
    }
}
