//! Counting certificates for vector space partitions: tail admissibility,
//! forbidden partition types, and the standard equations for hyperplane
//! spectra. Everything here is exact integer or rational arithmetic; no
//! floating point.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::verify::PartitionType;
use crate::{Error, Result};

const ENUMERATION_ITERATION_CAP: u64 = 4_000_000;
const SOLUTION_CAP: usize = 100_000;

fn pow_big(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

/// (q^d - 1)/(q - 1): the number of points of a d-dimensional space.
fn points(q: u64, d: u32) -> BigUint {
    if d == 0 {
        return BigUint::zero();
    }
    (pow_big(q, d) - BigUint::one()) / BigUint::from(q - 1)
}

/// Which of the four tail-length cases applied.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TailClause {
    I,
    II,
    III,
    IV,
}

impl std::fmt::Display for TailClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TailClause::I => "(i)",
            TailClause::II => "(ii)",
            TailClause::III => "(iii)",
            TailClause::IV => "(iv)",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TailVerdict {
    pub admissible: bool,
    pub clause: TailClause,
}

/// Admissibility of a tail of length n1 in dimension d1, with d2 the second
/// lowest dimension of the partition. The four cases:
///
/// - (i) q^{d2-d1} does not divide n1, d2 < 2 d1: need n1 >= q^{d1} + 1;
/// - (ii) q^{d2-d1} does not divide n1, d2 >= 2 d1: need d1 | d2 and
///   n1 = (q^{d2}-1)/(q^{d1}-1), or n1 > 2 q^{d2-d1};
/// - (iii) q^{d2-d1} divides n1, d2 < 2 d1: need n1 >= q^{d2} - q^{d1} + q^{d2-d1};
/// - (iv) q^{d2-d1} divides n1, d2 >= 2 d1: need n1 >= q^{d2}.
pub fn tail_admissible(q: u64, d1: u32, d2: u32, n1: &BigUint) -> Result<TailVerdict> {
    if q < 2 {
        return Err(Error::Parameter(format!("q must be at least 2, got {q}")));
    }
    if d1 < 1 || d1 >= d2 {
        return Err(Error::Parameter(format!("need 1 <= d1 < d2, got d1={d1}, d2={d2}")));
    }
    if n1.is_zero() {
        return Err(Error::Parameter("tail length must be positive".into()));
    }
    let gap = pow_big(q, d2 - d1);
    let divides = (n1 % &gap).is_zero();
    let (clause, admissible) = match (divides, d2 >= 2 * d1) {
        (false, false) => (TailClause::I, *n1 >= pow_big(q, d1) + BigUint::one()),
        (false, true) => {
            let exceptional = d2.is_multiple_of(d1)
                && *n1 == (pow_big(q, d2) - BigUint::one()) / (pow_big(q, d1) - BigUint::one());
            (TailClause::II, exceptional || *n1 > 2u32 * gap)
        }
        (true, false) => {
            (TailClause::III, *n1 >= pow_big(q, d2) - pow_big(q, d1) + pow_big(q, d2 - d1))
        }
        (true, true) => (TailClause::IV, *n1 >= pow_big(q, d2)),
    };
    Ok(TailVerdict { admissible, clause })
}

/// Which forbidden-partition lemma to evaluate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ForbiddenVariant {
    /// q = 2: no partition of type k^{n_k} (k-1)^{n_{k-1}} 1^{1+2^{k-1}} in
    /// F_2^{k(t+1)+1}.
    Q2Lemma,
    /// odd q: no partition of type k^{p-1} (k-1)^{m-p+1} 1^{(q+1)/2+q^{k-1}}
    /// in F_q^{k(t+1)+1}.
    OddQLemma,
}

/// The double-counting contradiction behind a forbidden partition type.
/// All quantities are computed, not assumed: `certified` holds exactly when
/// the implied hole total strictly exceeds the holes available.
#[derive(Clone, Debug)]
pub struct ContradictionCertificate {
    pub variant: ForbiddenVariant,
    pub q: u64,
    pub k: u32,
    pub t: u32,
    /// Dimension k(t+1)+1 of the space the partition would live in.
    pub ambient_dim: u32,
    pub partition: PartitionType,
    /// Holes per hyperplane are constrained modulo q^{k-2} ...
    pub residue_modulus: BigUint,
    /// ... to this residue.
    pub residue: BigUint,
    /// Hole counts per hyperplane compatible with residue and hole budget.
    pub admissible_hole_counts: Vec<BigUint>,
    /// Candidates struck out by the tail condition (for every possible
    /// second-lowest section dimension).
    pub excluded_by_tail: Vec<BigUint>,
    /// Smallest surviving per-hyperplane hole count.
    pub min_holes_per_hyperplane: Option<BigUint>,
    /// Lower bound on total holes: min per hyperplane, times hyperplanes,
    /// divided by hyperplanes per hole.
    pub implied_total_holes: Option<BigRational>,
    /// Holes the partition type actually provides.
    pub available_holes: BigUint,
    pub certified: bool,
}

/// Reproduces the counting contradiction that rules out the partition type
/// of the given variant: computes the admissible residues of the number of
/// holes per hyperplane, removes the minimal case via the tail condition,
/// and compares the implied hole total against the available holes in exact
/// rational arithmetic.
pub fn forbidden_partition_check(
    q: u64,
    k: u32,
    t: u32,
    variant: ForbiddenVariant,
) -> Result<ContradictionCertificate> {
    if k < 4 {
        return Err(Error::Parameter(format!("need k >= 4, got {k}")));
    }
    if t < 1 {
        return Err(Error::Parameter(format!("need t >= 1, got {t}")));
    }
    let one = BigUint::one();
    let qk1 = pow_big(q, k) - &one; // q^k - 1
    let (n_k, n_km1, holes) = match variant {
        ForbiddenVariant::Q2Lemma => {
            if q != 2 {
                return Err(Error::Parameter(format!("variant requires q = 2, got {q}")));
            }
            // n_k = (2^{kt+2} + 2^k - 5)/(2^k - 1), n_{k-1} = 2^{kt+2} - 3,
            // holes = 1 + 2^{k-1}.
            let num = pow_big(2, k * t + 2) + pow_big(2, k) - BigUint::from(5u32);
            let (n_k, rem) = num.div_rem(&qk1);
            if !rem.is_zero() {
                return Err(Error::Parameter("partition type is not integral".into()));
            }
            let n_km1 = pow_big(2, k * t + 2) - BigUint::from(3u32);
            let holes = &one + pow_big(2, k - 1);
            (n_k, n_km1, holes)
        }
        ForbiddenVariant::OddQLemma => {
            if q < 3 || q.is_multiple_of(2) {
                return Err(Error::Parameter(format!("variant requires odd q >= 3, got {q}")));
            }
            // p = (q^{kt+2} - q^2)/(q^k - 1) + (q+1)/2,
            // m = (q^{k(t+1)+2} - q^2)/(q^k - 1) - (q^2-1)/2,
            // type k^{p-1} (k-1)^{m-p+1} 1^{(q+1)/2 + q^{k-1}}.
            let half = BigUint::from(q.div_ceil(2));
            let (p_num, rem) = (pow_big(q, k * t + 2) - pow_big(q, 2)).div_rem(&qk1);
            if !rem.is_zero() {
                return Err(Error::Parameter("partition type is not integral".into()));
            }
            let p = p_num + &half;
            let (m_num, rem) = (pow_big(q, k * (t + 1) + 2) - pow_big(q, 2)).div_rem(&qk1);
            debug_assert!(rem.is_zero());
            let m = m_num - BigUint::from((q * q - 1) / 2);
            let n_k = &p - &one;
            let n_km1 = &m - &p + &one;
            let holes = half + pow_big(q, k - 1);
            (n_k, n_km1, holes)
        }
    };
    let ambient_dim = k * (t + 1) + 1;
    let partition = PartitionType::new([
        (k, n_k.clone()),
        (k - 1, n_km1.clone()),
        (1, holes.clone()),
    ]);
    if !partition.is_full_partition(q, ambient_dim) {
        return Err(Error::Parameter("partition type does not fill the space".into()));
    }

    // Sections of the non-holes have dimension k, k-1, or k-2, and each
    // contributes (q^d - 1)/(q - 1) = 1 + q + ... + q^{k-3} (mod q^{k-2})
    // points of the hyperplane. That pins the hole count L_H mod q^{k-2}.
    let modulus = pow_big(q, k - 2);
    let hyperplane_points = points(q, ambient_dim - 1);
    let section_share = points(q, k - 2); // 1 + q + ... + q^{k-3}
    let non_holes = &n_k + &n_km1;
    let residue_int = (hyperplane_points.to_bigint() - (non_holes * section_share).to_bigint())
        .mod_floor(&modulus.to_bigint());
    let residue = residue_int.to_biguint().expect("mod_floor of a positive modulus");

    let mut admissible = Vec::new();
    let mut l = residue.clone();
    while l <= holes {
        admissible.push(l.clone());
        l += &modulus;
    }

    // The tail condition can only strike a candidate if it does so for every
    // possible second-lowest section dimension.
    let mut excluded_by_tail = Vec::new();
    let mut min_holes = None;
    for cand in &admissible {
        let strikable = !cand.is_zero()
            && [k - 2, k - 1, k].iter().all(|&d2| {
                tail_admissible(q, 1, d2, cand)
                    .map(|v| !v.admissible)
                    .unwrap_or(false)
            });
        if strikable && min_holes.is_none() {
            excluded_by_tail.push(cand.clone());
        } else if min_holes.is_none() {
            min_holes = Some(cand.clone());
        }
    }

    // Each hole lies on (q^{N-1}-1)/(q-1) of the (q^N-1)/(q-1) hyperplanes,
    // so L_H >= min on every hyperplane forces at least
    // min * (q^N - 1)/(q^{N-1} - 1) holes in total.
    let implied_total_holes = min_holes.as_ref().map(|min| {
        BigRational::new(
            (min * (pow_big(q, ambient_dim) - &one)).to_bigint(),
            (pow_big(q, ambient_dim - 1) - &one).to_bigint(),
        )
    });
    let certified = match &implied_total_holes {
        None => true,
        Some(total) => *total > BigRational::from(holes.to_bigint()),
    };
    Ok(ContradictionCertificate {
        variant,
        q,
        k,
        t,
        ambient_dim,
        partition,
        residue_modulus: modulus,
        residue,
        admissible_hole_counts: admissible,
        excluded_by_tail,
        min_holes_per_hyperplane: min_holes,
        implied_total_holes,
        available_holes: holes,
        certified,
    })
}

trait ToBigIntExt {
    fn to_bigint(&self) -> BigInt;
}

impl ToBigIntExt for BigUint {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(self.clone())
    }
}

/// One unknown of the standard equations expressed in the free variables:
/// a = constant + sum_j free_coeffs[j] * (free variable j).
#[derive(Clone, PartialEq, Debug)]
pub struct AffineForm {
    pub constant: BigRational,
    pub free_coeffs: Vec<BigRational>,
}

/// Solution set of the standard equations for a spectrum (a_i).
#[derive(Clone, Debug)]
pub struct StandardEquationsSolution {
    /// The (contained codewords, holes) profiles the unknowns refer to.
    pub profiles: Vec<(u64, u64)>,
    /// Right-hand sides: hyperplane count, codeword flags, codeword pair
    /// flags.
    pub equation_rhs: [BigUint; 3],
    /// Indices (into `profiles`) of the free variables after elimination.
    pub free_vars: Vec<usize>,
    /// Each unknown as an affine form in the free variables.
    pub general: Vec<AffineForm>,
    /// Scan range of the free variable when there is exactly one.
    pub free_range: Option<(BigInt, BigInt)>,
    /// All nonnegative integer solutions, ordered by the free variables.
    pub solutions: Vec<Vec<BigUint>>,
    /// Index of the profile whose hole count equals the total hole count,
    /// if any; the span constraint applies to its unknown.
    pub span_profile: Option<usize>,
    /// Admissible values for that unknown under the span constraint.
    pub span_allowed: Option<Vec<BigUint>>,
    /// Solutions surviving the span constraint.
    pub span_filtered: Option<Vec<Vec<BigUint>>>,
    /// The span-constraint instantiation is backed by the q = 2 argument;
    /// other field sizes are exposed but unvalidated.
    pub span_rule_validated: bool,
}

/// Enumerates the nonnegative integer solutions of the standard equations
/// for a partial spread of `code_size` k-dimensional codewords in F_q^n
/// whose hyperplane profiles (contained codewords, holes on the
/// hyperplane) are restricted to `profiles`:
///
/// - sum a_i                  = number of hyperplanes,
/// - sum i * a_i              = code_size * (hyperplanes through a codeword),
/// - sum C(i, 2) * a_i        = C(code_size, 2) * (hyperplanes above a 2k-space).
///
/// With `span_dim_lower_bound` set, the unknown counting all-holes
/// hyperplanes is additionally restricted to values (q^j - 1)/(q - 1) for
/// 0 <= j <= n - bound, the number of hyperplanes containing the span of
/// the holes.
pub fn solve_standard_equations(
    n: u32,
    k: u32,
    q: u64,
    code_size: u64,
    profiles: &[(u64, u64)],
    span_dim_lower_bound: Option<u32>,
) -> Result<StandardEquationsSolution> {
    if profiles.is_empty() {
        return Err(Error::Parameter("profiles must be nonempty".into()));
    }
    if code_size < 1 {
        return Err(Error::Parameter("code size must be positive".into()));
    }
    if q < 2 || k < 1 || n < k {
        return Err(Error::Parameter(format!("invalid parameters q={q}, n={n}, k={k}")));
    }
    for (idx, (i, _)) in profiles.iter().enumerate() {
        if *i > code_size {
            return Err(Error::Parameter(format!(
                "profile {idx} contains {i} codewords, more than the code size {code_size}"
            )));
        }
        if profiles[..idx].iter().any(|(j, _)| j == i) {
            return Err(Error::Parameter(format!("duplicate profile with {i} codewords")));
        }
    }

    let hyperplanes = points(q, n);
    let per_codeword = points(q, n - k);
    let per_pair = if n >= 2 * k { points(q, n - 2 * k) } else { BigUint::zero() };
    let m = BigUint::from(code_size);
    let pairs = &m * (&m - BigUint::one()) / BigUint::from(2u32);
    let rhs = [
        hyperplanes.clone(),
        &m * &per_codeword,
        pairs * &per_pair,
    ];

    // Three equations over the unknowns a_i, eliminated exactly over the
    // rationals.
    let u = profiles.len();
    let rat = |b: &BigUint| BigRational::from(b.to_bigint());
    let mut rows: Vec<Vec<BigRational>> = vec![
        (0..u).map(|_| BigRational::one()).chain([rat(&rhs[0])]).collect(),
        profiles
            .iter()
            .map(|(i, _)| BigRational::from(BigInt::from(*i)))
            .chain([rat(&rhs[1])])
            .collect(),
        profiles
            .iter()
            .map(|(i, _)| BigRational::from(BigInt::from(i * i.saturating_sub(1) / 2)))
            .chain([rat(&rhs[2])])
            .collect(),
    ];

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_row = 0;
    for col in 0..u {
        if pivot_row == rows.len() {
            break;
        }
        let Some(src) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(src, pivot_row);
        let inv = rows[pivot_row][col].recip();
        for c in col..=u {
            rows[pivot_row][c] = &rows[pivot_row][c] * &inv;
        }
        for r in 0..rows.len() {
            if r == pivot_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..=u {
                rows[r][c] = &rows[r][c] - &factor * &rows[pivot_row][c];
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    for r in pivot_row..rows.len() {
        if !rows[r][u].is_zero() {
            return Err(Error::InconsistentSystem);
        }
    }
    let free_vars: Vec<usize> = (0..u).filter(|c| !pivot_cols.contains(c)).collect();

    let general: Vec<AffineForm> = (0..u)
        .map(|col| {
            if let Some(row) = pivot_cols.iter().position(|&p| p == col) {
                AffineForm {
                    constant: rows[row][u].clone(),
                    free_coeffs: free_vars.iter().map(|&f| -rows[row][f].clone()).collect(),
                }
            } else {
                let pos = free_vars.iter().position(|&f| f == col).expect("free column");
                AffineForm {
                    constant: BigRational::zero(),
                    free_coeffs: (0..free_vars.len())
                        .map(|j| {
                            if j == pos {
                                BigRational::one()
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect(),
                }
            }
        })
        .collect();

    // Per-variable cap from the original equations (coefficients are
    // nonnegative, so a_j <= rhs / coeff for any positive coefficient).
    let global_ub: Vec<BigInt> = (0..u)
        .map(|j| {
            let mut ub = rhs[0].to_bigint(); // coefficient 1 in the first equation
            let i = profiles[j].0;
            if i > 0 {
                ub = ub.min(rhs[1].to_bigint() / BigInt::from(i));
            }
            let c2 = i * i.saturating_sub(1) / 2;
            if c2 > 0 {
                ub = ub.min(rhs[2].to_bigint() / BigInt::from(c2));
            }
            ub
        })
        .collect();

    let mut enumerator = Enumerator {
        pivot_rows: pivot_cols
            .iter()
            .enumerate()
            .map(|(row, &col)| PivotRow {
                col,
                rhs: rows[row][u].clone(),
                free_coeffs: free_vars.iter().map(|&f| rows[row][f].clone()).collect(),
            })
            .collect(),
        free_vars: free_vars.clone(),
        free_ub: free_vars.iter().map(|&f| global_ub[f].clone()).collect(),
        var_count: u,
        solutions: Vec::new(),
        iterations: 0,
        root_range: None,
    };
    enumerator.run()?;
    let solutions = enumerator.solutions;
    if solutions.is_empty() {
        return Err(Error::InconsistentSystem);
    }
    let free_range = if free_vars.len() == 1 { enumerator.root_range } else { None };

    // Span constraint: hyperplanes containing all holes are exactly those
    // above the span of the holes.
    let total_holes = {
        let covered = &m * points(q, k);
        if covered > hyperplanes {
            return Err(Error::Parameter("code size exceeds the point capacity".into()));
        }
        &hyperplanes - covered
    };
    let span_profile = profiles
        .iter()
        .position(|(_, l)| BigUint::from(*l) == total_holes && !total_holes.is_zero());
    let (span_allowed, span_filtered) = match span_dim_lower_bound {
        None => (None, None),
        Some(bound) => {
            if bound > n {
                return Err(Error::Parameter(format!(
                    "span dimension bound {bound} exceeds the ambient dimension {n}"
                )));
            }
            let allowed: Vec<BigUint> = (0..=n - bound).map(|j| points(q, j)).collect();
            let filtered = match span_profile {
                None => solutions.clone(),
                Some(idx) => solutions
                    .iter()
                    .filter(|sol| allowed.contains(&sol[idx]))
                    .cloned()
                    .collect(),
            };
            (Some(allowed), Some(filtered))
        }
    };

    Ok(StandardEquationsSolution {
        profiles: profiles.to_vec(),
        equation_rhs: rhs,
        free_vars,
        general,
        free_range,
        solutions,
        span_profile,
        span_allowed,
        span_filtered,
        span_rule_validated: q == 2,
    })
}

struct PivotRow {
    col: usize,
    rhs: BigRational,
    free_coeffs: Vec<BigRational>,
}

struct Enumerator {
    pivot_rows: Vec<PivotRow>,
    free_vars: Vec<usize>,
    free_ub: Vec<BigInt>,
    var_count: usize,
    solutions: Vec<Vec<BigUint>>,
    iterations: u64,
    root_range: Option<(BigInt, BigInt)>,
}

impl Enumerator {
    fn run(&mut self) -> Result<()> {
        let rhs: Vec<BigRational> = self.pivot_rows.iter().map(|r| r.rhs.clone()).collect();
        let mut assigned = vec![BigInt::zero(); self.free_vars.len()];
        self.descend(0, rhs, &mut assigned)
    }

    /// Bounds for free variable `g` from nonnegativity of the pivot
    /// variables, with the other unfixed free variables ranging over their
    /// boxes.
    fn bounds(&self, level: usize, g: usize, rhs: &[BigRational]) -> (BigInt, BigInt) {
        let mut lo = BigInt::zero();
        let mut hi = self.free_ub[g].clone();
        for (row, cur) in self.pivot_rows.iter().zip(rhs) {
            let coef = &row.free_coeffs[g];
            if coef.is_zero() {
                continue;
            }
            // cur - coef * x_g - sum_{f > level, f != g} coef_f * x_f >= 0.
            let mut slack = cur.clone();
            for f in level..self.free_vars.len() {
                if f == g {
                    continue;
                }
                let c = &row.free_coeffs[f];
                if c.is_negative() {
                    slack -= c * BigRational::from(self.free_ub[f].clone());
                }
            }
            let bound = slack / coef;
            if coef.is_positive() {
                let b = bound.floor().to_integer();
                if b < hi {
                    hi = b;
                }
            } else {
                let b = bound.ceil().to_integer();
                if b > lo {
                    lo = b;
                }
            }
        }
        (lo, hi)
    }

    fn descend(
        &mut self,
        level: usize,
        rhs: Vec<BigRational>,
        assigned: &mut Vec<BigInt>,
    ) -> Result<()> {
        if level == self.free_vars.len() {
            let mut solution = vec![BigUint::zero(); self.var_count];
            for (row, value) in self.pivot_rows.iter().zip(&rhs) {
                if !value.is_integer() || value.is_negative() {
                    return Ok(());
                }
                solution[row.col] = value.to_integer().to_biguint().expect("nonnegative");
            }
            for (f, value) in self.free_vars.iter().zip(assigned.iter()) {
                solution[*f] = value.to_biguint().expect("nonnegative assignment");
            }
            if self.solutions.len() >= SOLUTION_CAP {
                return Err(Error::TooLarge(format!(
                    "more than {SOLUTION_CAP} spectra satisfy the equations"
                )));
            }
            self.solutions.push(solution);
            return Ok(());
        }
        let (lo, hi) = self.bounds(level, level, &rhs);
        if level == 0 && self.root_range.is_none() {
            self.root_range = Some((lo.clone(), hi.clone()));
        }
        let mut value = lo;
        while value <= hi {
            self.iterations += 1;
            if self.iterations > ENUMERATION_ITERATION_CAP {
                return Err(Error::TooLarge("solution enumeration exceeded its budget".into()));
            }
            let stepped: Vec<BigRational> = self
                .pivot_rows
                .iter()
                .zip(&rhs)
                .map(|(row, cur)| cur - &row.free_coeffs[level] * BigRational::from(value.clone()))
                .collect();
            assigned[level] = value.clone();
            self.descend(level + 1, stepped, assigned)?;
            value += 1;
        }
        Ok(())
    }
}
