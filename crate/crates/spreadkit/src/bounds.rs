//! Lower bounds, upper bounds, and known exact values of A_q(n, 2k; k),
//! the maximum size of a partial k-spread in F_q^n, with provenance.
//!
//! Writing n = k(t+1) + r with 0 <= r < k, every bound is expressed through
//! the deficiency s in A_q(n, 2k; k) = q^r (q^{k(t+1)} - 1)/(q^k - 1) - s.
//! Bound rules are registered with applicability predicates and combined by
//! min/max; ties are broken by a fixed priority order.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{prime_power, MAX_FIELD_ORDER};
use crate::subspace::gaussian_binomial;
use crate::{Error, Result};

/// Provenance of a bound or exact value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rule {
    /// k divides n: spreads exist and meet the counting bound.
    Spread,
    /// n = 1 (mod k): the exact value (q^n - q^{k+1} + q^k - 1)/(q^k - 1).
    Beutelspacher,
    /// q = 2, k = 3, n = 2 (mod 3), n >= 8: the exact value (2^n - 18)/7.
    BinaryK3,
    /// q = 2, k >= 4, n = 2 (mod k), n >= 2k+2: the exact value
    /// (2^n - 3 * 2^k - 1)/(2^k - 1).
    BinaryR2,
    /// k = 1: all points of the ambient space.
    K1Points,
    /// n < 2k: two k-spaces must meet, so a single subspace is the maximum.
    SingleSubspace,
    /// The multi-component construction of size
    /// (q^n - q^{k+r} + q^k - 1)/(q^k - 1).
    MultiComponent,
    /// The deficiency bound s >= floor(theta) + 1 with
    /// 2 theta = sqrt(1 + 4 q^k (q^k - q^r)) - (2 q^k - 2 q^r + 1).
    Theta,
    /// The deficiency bounds s >= q - 1 and s > (q^r - 1)/2 - q^{2r-k}/5.
    SBound,
    /// q = 3, k >= 4, n = 2 (mod k), n >= 2k+2: the upper bound
    /// (3^n - 9)/(3^k - 1) - 5.
    TernaryR2,
    /// floor((q^n - 1)/(q^k - 1)) by counting points.
    TrivialCounting,
    /// Any single k-subspace.
    TrivialOne,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Spread => "spread",
            Rule::Beutelspacher => "beutelspacher",
            Rule::BinaryK3 => "binary-k3",
            Rule::BinaryR2 => "binary-r2",
            Rule::K1Points => "k1-points",
            Rule::SingleSubspace => "single-subspace",
            Rule::MultiComponent => "multi-component",
            Rule::Theta => "theta",
            Rule::SBound => "s-bound",
            Rule::TernaryR2 => "ternary-r2",
            Rule::TrivialCounting => "trivial-counting",
            Rule::TrivialOne => "trivial-one",
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn pow_big(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

fn div_exact(num: BigUint, den: &BigUint) -> BigUint {
    let (quot, rem) = num.div_rem(den);
    debug_assert!(rem.is_zero());
    quot
}

fn validate(q: u64, n: u32, k: u32) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::Parameter(format!("{q} is not a prime power")));
    }
    if q > MAX_FIELD_ORDER {
        return Err(Error::Parameter(format!("q = {q} exceeds the field cap {MAX_FIELD_ORDER}")));
    }
    if k < 1 || n < k {
        return Err(Error::Parameter(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    Ok(())
}

/// q^r (q^{k(t+1)} - 1)/(q^k - 1) = sum_{i=0}^{t} q^{ik+r}: the size a
/// partial spread would have at deficiency s = 0. Requires r = n mod k >= 1.
pub fn deficiency_base(q: u64, n: u32, k: u32) -> Result<BigUint> {
    validate(q, n, k)?;
    let r = n % k;
    if r == 0 {
        return Err(Error::Parameter("deficiency is defined only for n not divisible by k".into()));
    }
    Ok(pow_big(q, r) * div_exact(pow_big(q, n - r) - BigUint::one(), &(pow_big(q, k) - BigUint::one())))
}

/// The deficiency s = q^r (q^{k(t+1)} - 1)/(q^k - 1) - size of a code of
/// the given size.
pub fn deficiency(q: u64, n: u32, k: u32, size: &BigUint) -> Result<BigInt> {
    Ok(BigInt::from(deficiency_base(q, n, k)?) - BigInt::from(size.clone()))
}

/// Exact floor(theta) where
/// 2 theta = sqrt(1 + 4 q^k (q^k - q^r)) - (2 q^k - 2 q^r + 1),
/// computed with an integer square root; no floating point.
pub fn theta_floor(q: u64, k: u32, r: u32) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::Parameter(format!("q must be at least 2, got {q}")));
    }
    if r == 0 || r >= k {
        return Err(Error::Parameter(format!("need 0 < r < k, got r={r}, k={k}")));
    }
    let qk = pow_big(q, k);
    let qr = pow_big(q, r);
    let discriminant = BigUint::one() + 4u32 * &qk * (&qk - &qr);
    let root = discriminant.sqrt(); // floor square root
    // floor((sqrt(D) - c)/2) = floor((floor(sqrt(D)) - c)/2) for integer c.
    let c = BigInt::from(2u32 * qk) - BigInt::from(2u32 * qr) + BigInt::one();
    let theta = (BigInt::from(root) - c).div_floor(&BigInt::from(2));
    debug_assert!(!theta.is_negative());
    Ok(theta.to_biguint().expect("theta is nonnegative"))
}

/// The exact value of A_q(n, 2k; k) when (q, n, k) lies in a solved family.
pub fn exact_value(q: u64, n: u32, k: u32) -> Result<Option<(BigUint, Rule)>> {
    validate(q, n, k)?;
    let one = BigUint::one();
    let qk1 = pow_big(q, k) - &one;
    let r = n % k;
    if k == 1 {
        return Ok(Some((gaussian_binomial(n, 1, q), Rule::K1Points)));
    }
    if n < 2 * k {
        return Ok(Some((one, Rule::SingleSubspace)));
    }
    if r == 0 {
        return Ok(Some((div_exact(pow_big(q, n) - &one, &qk1), Rule::Spread)));
    }
    if r == 1 {
        let value = div_exact(pow_big(q, n) - pow_big(q, k + 1) + pow_big(q, k) - &one, &qk1);
        return Ok(Some((value, Rule::Beutelspacher)));
    }
    if q == 2 && k == 3 && r == 2 {
        return Ok(Some((div_exact(pow_big(2, n) - BigUint::from(18u32), &qk1), Rule::BinaryK3)));
    }
    if q == 2 && k >= 4 && r == 2 {
        let value = div_exact(pow_big(2, n) - 3u32 * pow_big(2, k) - &one, &qk1);
        return Ok(Some((value, Rule::BinaryR2)));
    }
    Ok(None)
}

/// All applicable upper-bound rules with their values, strongest-priority
/// first: exact families, then parameter-special bounds, the theta bound,
/// the deficiency bound, and trivial counting.
pub fn upper_bound_rules(q: u64, n: u32, k: u32) -> Result<Vec<(Rule, BigUint)>> {
    validate(q, n, k)?;
    let one = BigUint::one();
    let qk1 = pow_big(q, k) - &one;
    let r = n % k;
    let mut rules = Vec::new();
    if let Some((value, rule)) = exact_value(q, n, k)? {
        rules.push((rule, value));
    }
    if q == 3 && k >= 4 && r == 2 && n >= 2 * k + 2 {
        let value = div_exact(pow_big(3, n) - BigUint::from(9u32), &qk1) - BigUint::from(5u32);
        rules.push((Rule::TernaryR2, value));
    }
    if r >= 1 {
        let base = deficiency_base(q, n, k)?;
        rules.push((Rule::Theta, &base - theta_floor(q, k, r)? - &one));

        // s >= q - 1 and s > (q^r - 1)/2 - q^{2r-k}/5, the latter made
        // integral as the smallest integer strictly above the exact rational.
        let fraction = BigRational::new(BigInt::from(pow_big(q, r)) - BigInt::one(), BigInt::from(2))
            - BigRational::new(
                BigInt::from(q).pow(2 * r),
                BigInt::from(5) * BigInt::from(q).pow(k),
            );
        let strict = fraction.floor().to_integer() + BigInt::one();
        let s_min = strict.max(BigInt::from(q - 1)).max(BigInt::one());
        let value = BigInt::from(base) - s_min;
        debug_assert!(value.is_positive());
        rules.push((Rule::SBound, value.to_biguint().expect("bound stays positive")));
    }
    rules.push((
        Rule::TrivialCounting,
        (pow_big(q, n) - &one).div_floor(&qk1),
    ));
    Ok(rules)
}

/// The best upper bound and the rule achieving it (ties broken by rule
/// priority).
pub fn upper_bound(q: u64, n: u32, k: u32) -> Result<(BigUint, Rule)> {
    let rules = upper_bound_rules(q, n, k)?;
    let (rule, value) = rules
        .into_iter()
        .min_by(|a, b| a.1.cmp(&b.1))
        .expect("trivial counting always applies");
    Ok((value, rule))
}

/// All applicable lower-bound rules with their values: constructions first,
/// then solved families, finally the single-subspace fallback.
pub fn lower_bound_rules(q: u64, n: u32, k: u32) -> Result<Vec<(Rule, BigUint)>> {
    validate(q, n, k)?;
    let one = BigUint::one();
    let qk1 = pow_big(q, k) - &one;
    let r = n % k;
    let mut rules = Vec::new();
    if r == 0 {
        rules.push((Rule::Spread, div_exact(pow_big(q, n) - &one, &qk1)));
    } else {
        // (q^n - q^{k+r} + q^k - 1)/(q^k - 1), realized by multi_component.
        let value = div_exact(pow_big(q, n) - pow_big(q, k + r) + pow_big(q, k) - &one, &qk1);
        rules.push((Rule::MultiComponent, value));
    }
    if let Some((value, rule)) = exact_value(q, n, k)? {
        if rule != Rule::Spread {
            rules.push((rule, value));
        }
    }
    rules.push((Rule::TrivialOne, one));
    Ok(rules)
}

/// The best lower bound and the rule achieving it (construction rules win
/// ties).
pub fn lower_bound(q: u64, n: u32, k: u32) -> Result<(BigUint, Rule)> {
    let rules = lower_bound_rules(q, n, k)?;
    let (rule, value) = rules
        .into_iter()
        .max_by(|a, b| {
            // Stable max: later entries win only on strictly larger values.
            match a.1.cmp(&b.1) {
                std::cmp::Ordering::Equal => std::cmp::Ordering::Greater,
                other => other,
            }
        })
        .expect("at least the trivial rule applies");
    Ok((value, rule))
}

/// Bounds for one parameter triple, with provenance and the deficiency
/// bookkeeping.
#[derive(Clone, Debug)]
pub struct BoundsRecord {
    pub q: u64,
    pub n: u32,
    pub k: u32,
    pub lower: BigUint,
    pub upper: BigUint,
    pub exact: Option<BigUint>,
    pub lower_rule: Rule,
    pub upper_rule: Rule,
    pub exact_rule: Option<Rule>,
    /// n mod k.
    pub r: u32,
    /// t with n = k(t+1) + r.
    pub t: u32,
    /// Deficiency implied by the upper bound (r >= 1 only).
    pub s_lower: Option<BigUint>,
    /// Deficiency q^r - 1 of the multi-component construction (r >= 1 only).
    pub s_construction: Option<BigUint>,
}

impl BoundsRecord {
    pub fn gap(&self) -> BigUint {
        &self.upper - &self.lower
    }
}

pub fn bounds_record(q: u64, n: u32, k: u32) -> Result<BoundsRecord> {
    let (lower, lower_rule) = lower_bound(q, n, k)?;
    let (upper, upper_rule) = upper_bound(q, n, k)?;
    let exact = exact_value(q, n, k)?;
    assert!(lower <= upper, "lower bound exceeds upper bound at ({q}, {n}, {k})");
    if let Some((value, _)) = &exact {
        assert!(
            *value == lower && *value == upper,
            "exact value disagrees with bounds at ({q}, {n}, {k})"
        );
    }
    let r = n % k;
    let t = n / k - 1;
    let (s_lower, s_construction) = if r >= 1 {
        let base = deficiency_base(q, n, k)?;
        (Some(&base - &upper), Some(pow_big(q, r) - BigUint::one()))
    } else {
        (None, None)
    };
    let (exact, exact_rule) = match exact {
        Some((value, rule)) => (Some(value), Some(rule)),
        None => (None, None),
    };
    Ok(BoundsRecord {
        q,
        n,
        k,
        lower,
        upper,
        exact,
        lower_rule,
        upper_rule,
        exact_rule,
        r,
        t,
        s_lower,
        s_construction,
    })
}

/// Records for the cross product of the given parameters, ordered by
/// (q, k, n); triples with k > n are skipped.
pub fn bounds_table(
    qs: &[u64],
    k_range: std::ops::RangeInclusive<u32>,
    n_range: std::ops::RangeInclusive<u32>,
) -> Result<Vec<BoundsRecord>> {
    if qs.is_empty() || k_range.is_empty() || n_range.is_empty() {
        return Err(Error::Parameter("empty parameter ranges".into()));
    }
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let mut out = Vec::new();
    for &q in &qs {
        for k in k_range.clone() {
            for n in n_range.clone() {
                if k < 1 || n < k {
                    continue;
                }
                out.push(bounds_record(q, n, k)?);
            }
        }
    }
    Ok(out)
}
