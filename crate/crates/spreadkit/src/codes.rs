//! Code constructions: full-rank-distance MRD matrix codes, lifted MRD
//! codes, the multi-component partial-spread construction, and
//! echelon-Ferrers assembly.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;

use crate::field::FieldCtx;
use crate::matrix::FqMatrix;
use crate::subspace::Subspace;
use crate::{Error, Result};

/// Cap on the number of codewords any construction will materialize.
pub const CONSTRUCTION_CAP: u64 = 1 << 20;

/// A rank-metric code: a set of equal-shape matrices over GF(q).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixCode {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    codewords: Vec<FqMatrix>,
    declared_min_rank_distance: Option<u32>,
}

impl MatrixCode {
    pub fn new(
        ctx: FieldCtx,
        rows: usize,
        cols: usize,
        codewords: Vec<FqMatrix>,
        declared_min_rank_distance: Option<u32>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for m in &codewords {
            if m.ctx() != ctx {
                return Err(Error::AmbientMismatch);
            }
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::Shape(format!(
                    "codeword is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !seen.insert(m.clone()) {
                return Err(Error::DuplicateCodeword);
            }
        }
        Ok(MatrixCode { ctx, rows, cols, codewords, declared_min_rank_distance })
    }

    /// The single-codeword code consisting of the zero matrix.
    pub fn trivial_zero(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        MatrixCode {
            ctx,
            rows,
            cols,
            codewords: vec![FqMatrix::zero(ctx, rows, cols)],
            declared_min_rank_distance: None,
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn codewords(&self) -> &[FqMatrix] {
        &self.codewords
    }

    pub fn declared_min_rank_distance(&self) -> Option<u32> {
        self.declared_min_rank_distance
    }
}

/// A constant-dimension subspace code: a set of k-dimensional subspaces of
/// F_q^n, stored canonically sorted. A partial k-spread is the special case
/// of minimum subspace distance 2k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceCode {
    ctx: FieldCtx,
    ambient_dim: usize,
    dim: usize,
    codewords: Vec<Subspace>,
    declared_min_subspace_distance: Option<u32>,
}

impl SubspaceCode {
    pub fn new(
        ctx: FieldCtx,
        ambient_dim: usize,
        dim: usize,
        mut codewords: Vec<Subspace>,
        declared_min_subspace_distance: Option<u32>,
    ) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::Parameter("a subspace code needs at least one codeword".into()));
        }
        for c in &codewords {
            if c.ctx() != ctx || c.ambient_dim() != ambient_dim {
                return Err(Error::AmbientMismatch);
            }
            if c.dim() != dim {
                return Err(Error::MixedDimensions);
            }
        }
        codewords.sort_unstable();
        if codewords.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCodeword);
        }
        Ok(SubspaceCode { ctx, ambient_dim, dim, codewords, declared_min_subspace_distance })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Codewords in canonical (basis-lexicographic) order.
    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }

    pub fn declared_min_subspace_distance(&self) -> Option<u32> {
        self.declared_min_subspace_distance
    }
}

/// The MRD size bound: q^{max(m,n) * (min(m,n) - d + 1)} matrices when
/// d <= min(m, n), and a single matrix otherwise.
pub fn mrd_size(q: u64, m: u32, n: u32, d: u32) -> BigUint {
    assert!(q >= 2 && m >= 1 && n >= 1 && d >= 1);
    if d > m.min(n) {
        return BigUint::one();
    }
    BigUint::from(q).pow(m.max(n) * (m.min(n) - d + 1))
}

/// A q^{m(k-d+1)}-element rank-metric code of k x m matrices over GF(q)
/// with minimum rank distance exactly d, for 1 <= d <= k <= m and prime q.
///
/// Codewords evaluate the q-linearized polynomials f(y) = sum_j a_j y^{q^j}
/// of q-degree below k - d + 1 at the GF(q)-independent points
/// 1, x, ..., x^{k-1} of GF(q^m); row i of a codeword is the expansion of
/// f(x^i) over the base field. A nonzero such f has kernel dimension at
/// most k - d, so difference matrices have rank at least d.
pub fn gabidulin_code(q: u64, k: u32, m: u32, d: u32) -> Result<MatrixCode> {
    if k < 1 || d < 1 || d > k || k > m {
        return Err(Error::Parameter(format!(
            "rank-metric construction requires 1 <= d <= k <= m, got k={k}, m={m}, d={d}"
        )));
    }
    let size = mrd_size(q, k, m, d);
    if size > BigUint::from(CONSTRUCTION_CAP) {
        return Err(Error::TooLarge(format!("{size} codewords exceeds the construction cap")));
    }
    let base = FieldCtx::new(q, 1)?;
    let s = k - d + 1;
    if d == 1 {
        // The whole matrix space; enumerate directly.
        let total = q.pow(k * m);
        let mut codewords = Vec::with_capacity(total as usize);
        for mut idx in 0..total {
            let mut mat = FqMatrix::zero(base, k as usize, m as usize);
            for r in 0..k as usize {
                for c in 0..m as usize {
                    mat.set(r, c, idx % q);
                    idx /= q;
                }
            }
            codewords.push(mat);
        }
        return MatrixCode::new(base, k as usize, m as usize, codewords, Some(1));
    }
    let ext = FieldCtx::new(q, m)?;
    // eval_points[i][j] = (x^i)^(q^j) in GF(q^m).
    let mut eval_points = vec![vec![0u64; s as usize]; k as usize];
    for i in 0..k {
        let g = ext.pow(q, i as u64); // the element x^i, packed
        for j in 0..s {
            eval_points[i as usize][j as usize] = ext.pow(g, q.pow(j));
        }
    }
    let count = ext.q().checked_pow(s).expect("code size fits u64");
    let mut codewords = Vec::with_capacity(count as usize);
    let mut message = vec![0u64; s as usize];
    for _ in 0..count {
        let mut mat = FqMatrix::zero(base, k as usize, m as usize);
        for i in 0..k as usize {
            let mut val = 0;
            for (j, &a) in message.iter().enumerate() {
                val = ext.add(val, ext.mul(a, eval_points[i][j]));
            }
            for (c, coeff) in ext.expand_to_base(val).into_iter().enumerate() {
                mat.set(i, c, coeff);
            }
        }
        codewords.push(mat);
        // Advance the message counter in base q^m.
        for a in message.iter_mut() {
            *a += 1;
            if *a < ext.q() {
                break;
            }
            *a = 0;
        }
    }
    MatrixCode::new(base, k as usize, m as usize, codewords, Some(d))
}

/// The full-rank-distance MRD code: q^m codewords of shape k x m with
/// minimum rank distance exactly k (requires m >= k).
pub fn mrd_full_rank_code(q: u64, k: u32, m: u32) -> Result<MatrixCode> {
    if m < k {
        return Err(Error::Parameter(format!(
            "full-rank MRD code requires m >= k, got k={k}, m={m}"
        )));
    }
    gabidulin_code(q, k, m, k)
}

/// Minimum rank distance over all distinct pairs; `None` when the code has
/// fewer than two codewords.
pub fn min_rank_distance(code: &MatrixCode) -> Option<u32> {
    let words = code.codewords();
    if words.len() < 2 {
        return None;
    }
    let mut best = u32::MAX;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let d = words[i].sub(&words[j]).expect("equal shapes").rank() as u32;
            best = best.min(d);
        }
    }
    Some(best)
}

fn transpose_code(code: MatrixCode) -> MatrixCode {
    let declared = code.declared_min_rank_distance();
    let (rows, cols) = (code.cols(), code.rows());
    let ctx = code.ctx();
    let codewords = code.codewords.into_iter().map(|m| m.transpose()).collect();
    MatrixCode::new(ctx, rows, cols, codewords, declared).expect("transposed code is valid")
}

/// Lifted MRD code in G_q(n, k) with subspace distance >= d (d even):
/// row spaces of [I_k | A] with A running over an MRD code of rank
/// distance d/2 in k x (n-k) matrices. Size q^{max(k,n-k)(min(k,n-k)-d/2+1)}
/// when d <= 2 min(k, n-k), otherwise the single codeword [I_k | 0].
pub fn lifted_mrd(q: u64, n: u32, k: u32, d: u32) -> Result<SubspaceCode> {
    if !d.is_multiple_of(2) || d < 2 {
        return Err(Error::Parameter(format!("subspace distance must be even and >= 2, got {d}")));
    }
    if k < 1 || k > n {
        return Err(Error::Parameter(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let base = FieldCtx::new(q, 1)?;
    let delta = d / 2;
    let inner = if delta > k.min(n - k) {
        MatrixCode::trivial_zero(base, k as usize, (n - k) as usize)
    } else if n - k >= k {
        gabidulin_code(q, k, n - k, delta)?
    } else {
        transpose_code(gabidulin_code(q, n - k, k, delta)?)
    };
    let codewords = inner
        .codewords()
        .iter()
        .map(|a| {
            let mut m = FqMatrix::zero(base, k as usize, n as usize);
            for r in 0..k as usize {
                m.set(r, r, 1);
                for c in 0..(n - k) as usize {
                    m.set(r, k as usize + c, a.get(r, c));
                }
            }
            Subspace::from_rref_unchecked(m, (0..k as usize).collect())
        })
        .collect();
    SubspaceCode::new(base, n as usize, k as usize, codewords, Some(d))
}

/// The multi-component partial spread construction for n not divisible by
/// k: block i (1 <= i <= floor(n/k)) contributes row spaces of
/// [0 | I_k | A] with the identity in columns (i-1)k+1..ik and A running
/// over a full-rank MRD code in the remaining columns (the final block
/// contributes the single codeword with A = 0). The result has minimum
/// subspace distance 2k and cardinality 1 + sum_{i=1}^{floor(n/k)-1} q^{n-ik}.
pub fn multi_component(q: u64, n: u32, k: u32) -> Result<SubspaceCode> {
    if k < 1 || n < k {
        return Err(Error::Parameter(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if n.is_multiple_of(k) {
        return Err(Error::Parameter(format!(
            "{k} divides {n}: use the spread construction instead"
        )));
    }
    let base = FieldCtx::new(q, 1)?;
    let blocks = n / k;
    let mut codewords = Vec::new();
    for i in 1..=blocks {
        let offset = ((i - 1) * k) as usize;
        let tail = (n - i * k) as usize;
        let block: Vec<FqMatrix> = if i < blocks {
            mrd_full_rank_code(q, k, n - i * k)?.codewords().to_vec()
        } else {
            vec![FqMatrix::zero(base, k as usize, tail)]
        };
        for a in block {
            let mut m = FqMatrix::zero(base, k as usize, n as usize);
            for r in 0..k as usize {
                m.set(r, offset + r, 1);
                for c in 0..tail {
                    m.set(r, (n as usize - tail) + c, a.get(r, c));
                }
            }
            let pivots = (offset..offset + k as usize).collect();
            codewords.push(Subspace::from_rref_unchecked(m, pivots));
        }
    }
    SubspaceCode::new(base, n as usize, k as usize, codewords, Some(2 * k))
}

/// A binary pivot pattern: the positions of the leading ones of an echelon
/// basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PivotVector {
    bits: Vec<bool>,
}

impl PivotVector {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.iter().filter(|&&b| b).count() == 0 {
            return Err(Error::Parameter("pivot vector must have positive weight".into()));
        }
        Ok(PivotVector { bits })
    }

    /// Builds the length-n vector with ones exactly at `positions`.
    pub fn from_positions(n: usize, positions: &[usize]) -> Result<Self> {
        let mut bits = vec![false; n];
        for &p in positions {
            if p >= n {
                return Err(Error::Parameter(format!("position {p} out of range for length {n}")));
            }
            bits[p] = true;
        }
        Self::new(bits)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn positions(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    pub fn hamming_distance(&self, other: &PivotVector) -> u32 {
        debug_assert_eq!(self.len(), other.len());
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count() as u32
    }
}

/// Assembles a constant dimension code from a skeleton of pivot vectors and
/// one rank-metric component per vector, in the style of the multilevel
/// construction. Components must fit the rectangular echelon region right
/// of their last pivot; pairwise Hamming distances of the skeleton must be
/// at least 2d and every multi-codeword component must have minimum rank
/// distance at least d. The union then has subspace distance >= 2d.
pub fn echelon_ferrers_assemble(
    skeleton: &[PivotVector],
    components: &[MatrixCode],
    d: u32,
) -> Result<SubspaceCode> {
    if skeleton.is_empty() || skeleton.len() != components.len() {
        return Err(Error::Parameter(format!(
            "skeleton has {} vectors but {} components",
            skeleton.len(),
            components.len()
        )));
    }
    if d < 1 {
        return Err(Error::Parameter("rank distance must be at least 1".into()));
    }
    let n = skeleton[0].len();
    let k = skeleton[0].weight();
    for v in skeleton {
        if v.len() != n {
            return Err(Error::Parameter("pivot vectors have mixed lengths".into()));
        }
        if v.weight() != k {
            return Err(Error::Parameter("pivot vectors have mixed weights".into()));
        }
    }
    if d as usize > k {
        return Err(Error::Parameter(format!("rank distance {d} exceeds codeword dimension {k}")));
    }
    for i in 0..skeleton.len() {
        for j in i + 1..skeleton.len() {
            let dist = skeleton[i].hamming_distance(&skeleton[j]);
            if dist < 2 * d {
                return Err(Error::SkeletonDistance { i, j, dist, required: 2 * d });
            }
        }
    }
    let ctx = components[0].ctx();
    let mut codewords = Vec::new();
    for (index, (v, comp)) in skeleton.iter().zip(components).enumerate() {
        if comp.ctx() != ctx {
            return Err(Error::AmbientMismatch);
        }
        let pivots = v.positions();
        let tail_start = pivots[k - 1] + 1;
        let tail = n - tail_start;
        if comp.rows() != k || comp.cols() != tail {
            return Err(Error::Shape(format!(
                "component {index} is {}x{}, its echelon region is {k}x{tail}",
                comp.rows(),
                comp.cols()
            )));
        }
        if comp.len() > 1 {
            let found = comp
                .declared_min_rank_distance()
                .or_else(|| min_rank_distance(comp))
                .expect("multi-codeword component has a rank distance");
            if found < d {
                return Err(Error::ComponentDistance { index, found, required: d });
            }
        }
        for a in comp.codewords() {
            let mut m = FqMatrix::zero(ctx, k, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, 1);
                for c in 0..tail {
                    m.set(r, tail_start + c, a.get(r, c));
                }
            }
            codewords.push(Subspace::from_rref_unchecked(m, pivots.clone()));
        }
    }
    SubspaceCode::new(ctx, n, k, codewords, Some(2 * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_spread;

    #[test]
    fn mrd_size_values() {
        assert_eq!(mrd_size(2, 4, 6, 4), BigUint::from(64u32));
        assert_eq!(mrd_size(2, 4, 2, 3), BigUint::one());
        assert_eq!(mrd_size(2, 3, 3, 1), BigUint::from(512u32));
    }

    #[test]
    fn full_rank_mrd_small() {
        // (2,2,3): 8 codewords, every nonzero difference has rank 2.
        let c = mrd_full_rank_code(2, 2, 3).unwrap();
        assert_eq!(c.len(), 8);
        assert_eq!(min_rank_distance(&c), Some(2));

        // Square case: q^k codewords at distance k.
        let c = mrd_full_rank_code(3, 2, 2).unwrap();
        assert_eq!(c.len(), 9);
        assert_eq!(min_rank_distance(&c), Some(2));

        assert!(mrd_full_rank_code(2, 4, 3).is_err());
    }

    #[test]
    fn mrd_sizes_match_bound_on_grid() {
        for q in [2u64, 3] {
            for k in 1..=4u32 {
                for m in k..=6u32 {
                    let c = mrd_full_rank_code(q, k, m).unwrap();
                    assert_eq!(BigUint::from(c.len()), mrd_size(q, k, m, k), "q={q} k={k} m={m}");
                    assert_eq!(min_rank_distance(&c), Some(k), "q={q} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn intermediate_rank_distance() {
        // d = 2 inside 3x4 matrices over GF(2): size q^{m(k-d+1)} = 2^8.
        let c = gabidulin_code(2, 3, 4, 2).unwrap();
        assert_eq!(BigUint::from(c.len()), mrd_size(2, 3, 4, 2));
        assert_eq!(min_rank_distance(&c), Some(2));
    }

    #[test]
    fn min_rank_distance_trivia() {
        let gf2 = FieldCtx::new(2, 1).unwrap();
        let zero = FqMatrix::zero(gf2, 2, 2);
        let id = FqMatrix::identity(gf2, 2);
        let c = MatrixCode::new(gf2, 2, 2, vec![zero.clone(), id], None).unwrap();
        assert_eq!(min_rank_distance(&c), Some(2));
        let mut rank1 = FqMatrix::zero(gf2, 2, 2);
        rank1.set(0, 0, 1);
        let c = MatrixCode::new(gf2, 2, 2, vec![zero.clone(), rank1], None).unwrap();
        assert_eq!(min_rank_distance(&c), Some(1));
        let c = MatrixCode::new(gf2, 2, 2, vec![zero], None).unwrap();
        assert_eq!(min_rank_distance(&c), None);
    }

    #[test]
    fn lifted_mrd_sizes() {
        let c = lifted_mrd(2, 10, 4, 8).unwrap();
        assert_eq!(c.len(), 64);
        let c = lifted_mrd(2, 7, 3, 8).unwrap();
        assert_eq!(c.len(), 1);
        assert!(lifted_mrd(2, 7, 3, 5).is_err());
    }

    #[test]
    fn lifted_mrd_is_spread_when_d_is_2k() {
        let c = lifted_mrd(2, 6, 3, 6).unwrap();
        assert_eq!(c.len(), 8);
        let report = verify_spread(&c);
        assert!(report.valid);
        assert_eq!(report.min_subspace_distance, Some(6));
        // Identity prefix on every codeword.
        for w in c.codewords() {
            assert_eq!(w.pivots(), &[0, 1, 2]);
        }
    }

    #[test]
    fn lifted_mrd_distance_matches_rank_of_difference() {
        let c = lifted_mrd(2, 6, 3, 4).unwrap();
        assert_eq!(BigUint::from(c.len()), mrd_size(2, 3, 3, 2));
        let words = c.codewords();
        for i in (0..words.len()).step_by(7) {
            for j in (i + 1..words.len()).step_by(5) {
                let d = words[i].distances(&words[j]).unwrap().subspace;
                assert!(d >= 4);
                // d_S([I|A], [I|B]) = 2 rank(A - B).
                let a = words[i].basis();
                let b = words[j].basis();
                let mut diff_rows = Vec::new();
                for r in 0..3 {
                    let row: Vec<u64> =
                        (3..6).map(|col| c.ctx().sub(a.get(r, col), b.get(r, col))).collect();
                    diff_rows.push(row);
                }
                let diff = FqMatrix::from_rows(c.ctx(), &diff_rows).unwrap();
                assert_eq!(d as usize, 2 * diff.rank());
            }
        }
    }

    #[test]
    fn multi_component_sizes() {
        assert_eq!(multi_component(2, 10, 4).unwrap().len(), 65);
        assert_eq!(multi_component(2, 8, 3).unwrap().len(), 33);
        assert_eq!(multi_component(3, 10, 4).unwrap().len(), 730);
        assert!(multi_component(2, 8, 4).is_err());
    }

    #[test]
    fn multi_component_closed_forms_agree() {
        for (q, n, k) in [(2u64, 7u32, 3u32), (2, 8, 3), (2, 10, 4), (3, 7, 3), (5, 7, 3)] {
            let code = multi_component(q, n, k).unwrap();
            let qb = BigUint::from(q);
            let r = n % k;
            // 1 + sum_{i=1}^{floor(n/k)-1} q^{n-ik}
            let mut direct = BigUint::one();
            for i in 1..(n / k) {
                direct += qb.pow(n - i * k);
            }
            // (q^n - q^{k+r} + q^k - 1) / (q^k - 1)
            let fraction = (qb.pow(n) - qb.pow(k + r) + qb.pow(k) - BigUint::one())
                / (qb.pow(k) - BigUint::one());
            assert_eq!(direct, fraction);
            assert_eq!(BigUint::from(code.len()), direct);
        }
    }

    #[test]
    fn multi_component_distance_exhaustive() {
        for (q, n, k) in [(2u64, 7u32, 3u32), (2, 8, 3), (3, 7, 3)] {
            let code = multi_component(q, n, k).unwrap();
            let report = verify_spread(&code);
            assert!(report.valid, "q={q} n={n} k={k}");
            assert_eq!(report.min_subspace_distance, Some(2 * k), "q={q} n={n} k={k}");
        }
    }

    #[test]
    fn lifted_mrd_2_10_4_is_a_spread() {
        let code = lifted_mrd(2, 10, 4, 8).unwrap();
        assert_eq!(code.len(), 64);
        let report = verify_spread(&code);
        assert!(report.valid);
        assert_eq!(report.min_subspace_distance, Some(8));
    }

    #[test]
    fn multi_component_blocks_have_disjoint_pivots() {
        let code = multi_component(2, 7, 3).unwrap();
        for (i, a) in code.codewords().iter().enumerate() {
            for b in code.codewords().iter().skip(i + 1) {
                if a.pivots() != b.pivots() {
                    let shared: Vec<_> =
                        a.pivots().iter().filter(|p| b.pivots().contains(p)).collect();
                    assert!(shared.is_empty());
                    assert_eq!(a.distances(b).unwrap().dim_meet, 0);
                }
            }
        }
    }

    #[test]
    fn echelon_ferrers_matches_multi_component() {
        let (q, n, k) = (2u64, 8u32, 3u32);
        let blocks = n / k;
        let mut skeleton = Vec::new();
        let mut components = Vec::new();
        let base = FieldCtx::new(q, 1).unwrap();
        for i in 1..=blocks {
            let offset = ((i - 1) * k) as usize;
            skeleton.push(
                PivotVector::from_positions(n as usize, &[(offset), (offset + 1), (offset + 2)])
                    .unwrap(),
            );
            if i < blocks {
                components.push(mrd_full_rank_code(q, k, n - i * k).unwrap());
            } else {
                components.push(MatrixCode::trivial_zero(base, k as usize, (n % k) as usize));
            }
        }
        let ef = echelon_ferrers_assemble(&skeleton, &components, k).unwrap();
        let mc = multi_component(q, n, k).unwrap();
        assert_eq!(ef, mc);
    }

    #[test]
    fn echelon_ferrers_two_blocks() {
        let base = FieldCtx::new(2, 1).unwrap();
        let skeleton = vec![
            PivotVector::from_positions(6, &[0, 1, 2]).unwrap(),
            PivotVector::from_positions(6, &[3, 4, 5]).unwrap(),
        ];
        let components = vec![
            mrd_full_rank_code(2, 3, 3).unwrap(),
            MatrixCode::trivial_zero(base, 3, 0),
        ];
        let code = echelon_ferrers_assemble(&skeleton, &components, 3).unwrap();
        assert_eq!(code.len(), 9);
        let report = verify_spread(&code);
        assert!(report.valid);
        assert_eq!(report.min_subspace_distance, Some(6));
    }

    #[test]
    fn echelon_ferrers_rejects_close_skeleton() {
        let base = FieldCtx::new(2, 1).unwrap();
        // Hamming distance 2 < 2d = 4.
        let skeleton = vec![
            PivotVector::from_positions(6, &[0, 1]).unwrap(),
            PivotVector::from_positions(6, &[0, 2]).unwrap(),
        ];
        let components = vec![
            MatrixCode::trivial_zero(base, 2, 4),
            MatrixCode::trivial_zero(base, 2, 3),
        ];
        let err = echelon_ferrers_assemble(&skeleton, &components, 2).unwrap_err();
        assert!(matches!(err, Error::SkeletonDistance { dist: 2, required: 4, .. }));
    }

    #[test]
    fn echelon_ferrers_rejects_bad_shape() {
        let base = FieldCtx::new(2, 1).unwrap();
        let skeleton = vec![PivotVector::from_positions(6, &[0, 1, 2]).unwrap()];
        let components = vec![MatrixCode::trivial_zero(base, 3, 2)]; // region is 3x3
        assert!(matches!(
            echelon_ferrers_assemble(&skeleton, &components, 3),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn duplicate_codewords_rejected() {
        let gf2 = FieldCtx::new(2, 1).unwrap();
        let u = Subspace::from_generators(gf2, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let err = SubspaceCode::new(gf2, 4, 2, vec![u.clone(), u], None).unwrap_err();
        assert!(matches!(err, Error::DuplicateCodeword));
    }
}
