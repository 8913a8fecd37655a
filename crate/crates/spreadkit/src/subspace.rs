//! Canonical subspaces of F_q^n, projective points, hyperplanes, and the
//! Gaussian binomial coefficient.
//!
//! A subspace is represented by its unique reduced-row-echelon basis with
//! zero rows removed, so two values are equal iff they describe the same
//! subspace. Points (1-dimensional subspaces) are normalized so their first
//! nonzero coordinate is 1.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::field::FieldCtx;
use crate::matrix::FqMatrix;
use crate::{Error, Result};

/// The Gaussian binomial coefficient [n choose k]_q: the number of
/// k-dimensional subspaces of F_q^n. Computed exactly via the product
/// formula prod_{i=1}^{k} (q^{n-k+i} - 1) / (q^i - 1) in integer
/// arithmetic; 0 when k < 0 or k > n.
pub fn gaussian_binomial(n: u32, k: i64, q: u64) -> BigUint {
    assert!(q >= 2, "Gaussian binomial requires q >= 2");
    if k < 0 || k > n as i64 {
        return BigUint::zero();
    }
    // Symmetry keeps the products short.
    let k = (k as u32).min(n - k as u32);
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=k {
        num *= q.pow(n - k + i) - 1u32;
        den *= q.pow(i) - 1u32;
    }
    let (quot, rem) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(rem.is_zero());
    quot
}

/// A projective point of F_q^n: a nonzero vector normalized so that its
/// first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Point {
    ctx: FieldCtx,
    coords: Vec<u64>,
}

impl Point {
    pub fn new(ctx: FieldCtx, coords: &[u64]) -> Result<Self> {
        for &v in coords {
            if !ctx.is_element(v) {
                return Err(Error::Parameter(format!("{v} is not an element of {ctx}")));
            }
        }
        let Some(lead) = coords.iter().position(|&v| v != 0) else {
            return Err(Error::ZeroVector);
        };
        let scale = ctx.inv(coords[lead]).expect("leading coordinate is nonzero");
        let coords = coords.iter().map(|&v| ctx.mul(v, scale)).collect();
        Ok(Point { ctx, coords })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

/// Dot product of two coordinate vectors over the given field.
pub fn dot(ctx: FieldCtx, a: &[u64], b: &[u64]) -> u64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| ctx.add(acc, ctx.mul(x, y)))
}

/// Pairwise dimension data of two subspaces: dim(U+V), dim(U ∩ V), the
/// subspace distance and the injection distance.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Distances {
    pub dim_sum: usize,
    pub dim_meet: usize,
    pub subspace: u32,
    pub injection: u32,
}

/// A k-dimensional subspace of F_q^n in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subspace {
    basis: FqMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonical subspace spanned by the generators; independent of
    /// generator order and scaling. Errors if all generators are zero.
    pub fn from_generators(ctx: FieldCtx, n: usize, generators: &[Vec<u64>]) -> Result<Self> {
        for g in generators {
            if g.len() != n {
                return Err(Error::Shape(format!(
                    "generator has length {}, ambient dimension is {n}",
                    g.len()
                )));
            }
        }
        let m = FqMatrix::from_rows(ctx, generators)?;
        let r = if m.rows() == 0 { FqMatrix::zero(ctx, 0, n).rref() } else { m.rref() };
        if r.rank == 0 {
            return Err(Error::ZeroSpace);
        }
        Ok(Subspace { basis: r.matrix, pivots: r.pivots })
    }

    /// Wraps a matrix that is already a reduced-row-echelon basis. Verified
    /// in debug builds; construction sites must guarantee canonicity.
    pub(crate) fn from_rref_unchecked(basis: FqMatrix, pivots: Vec<usize>) -> Self {
        debug_assert!({
            let r = basis.rref();
            r.matrix == basis && r.pivots == pivots
        });
        Subspace { basis, pivots }
    }

    /// The zero subspace of F_q^n (dimension 0).
    pub fn zero(ctx: FieldCtx, n: usize) -> Self {
        Subspace { basis: FqMatrix::zero(ctx, 0, n), pivots: Vec::new() }
    }

    pub fn full_space(ctx: FieldCtx, n: usize) -> Self {
        Subspace { basis: FqMatrix::identity(ctx, n), pivots: (0..n).collect() }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.basis.ctx()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Membership test by eliminating `v` against the echelon basis.
    pub fn contains_vector(&self, v: &[u64]) -> bool {
        if v.len() != self.ambient_dim() {
            return false;
        }
        let ctx = self.ctx();
        let mut v = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            let factor = v[p];
            if factor == 0 {
                continue;
            }
            for c in 0..v.len() {
                v[c] = ctx.sub(v[c], ctx.mul(factor, self.basis.get(row, c)));
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.contains_vector(p.coords())
    }

    /// dim(U + V) via the rank of the stacked bases.
    pub fn sum_dim(&self, other: &Subspace) -> Result<usize> {
        if self.ctx() != other.ctx() || self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.basis.stack(&other.basis)?.rank())
    }

    /// Subspace and injection distances together with the sum/meet
    /// dimensions they derive from.
    pub fn distances(&self, other: &Subspace) -> Result<Distances> {
        let dim_sum = self.sum_dim(other)?;
        let (du, dv) = (self.dim(), other.dim());
        let dim_meet = du + dv - dim_sum;
        Ok(Distances {
            dim_sum,
            dim_meet,
            subspace: (2 * dim_sum - du - dv) as u32,
            injection: (du.max(dv) - dim_meet) as u32,
        })
    }

    /// Canonical basis of the dual space {x : b . x = 0 for all basis rows b}.
    pub fn dual(&self) -> FqMatrix {
        self.basis.null_space()
    }

    /// U ∩ V, computed by stacking the duals and dualizing again. May be the
    /// zero subspace.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ctx() != other.ctx() || self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch);
        }
        let stacked = self.dual().stack(&other.dual())?;
        let r = stacked.null_space().rref();
        Ok(Subspace { basis: r.matrix, pivots: r.pivots })
    }

    /// All (q^dim - 1)/(q - 1) distinct points of the subspace, in
    /// lexicographic coordinate order.
    pub fn enumerate_points(&self) -> Vec<Point> {
        let ctx = self.ctx();
        let q = ctx.q();
        let k = self.dim();
        let n = self.ambient_dim();
        let mut out = Vec::new();
        // One coefficient vector per projective coefficient class: the
        // leading coefficient is pinned to 1.
        for lead in 0..k {
            let tail_len = k - lead - 1;
            let combos = q.pow(tail_len as u32);
            for mut idx in 0..combos {
                let mut coeffs = vec![0u64; k];
                coeffs[lead] = 1;
                for c in coeffs.iter_mut().skip(lead + 1) {
                    *c = idx % q;
                    idx /= q;
                }
                let mut v = vec![0u64; n];
                for (row, &c) in coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for col in 0..n {
                        v[col] = ctx.add(v[col], ctx.mul(c, self.basis.get(row, col)));
                    }
                }
                out.push(Point::new(ctx, &v).expect("combination of basis rows is nonzero"));
            }
        }
        out.sort_unstable();
        debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
        out
    }
}

impl std::fmt::Display for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.basis.rows() {
            if r > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = self.basis.row(r).iter().map(|v| v.to_string()).collect();
            write!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// All points of the ambient space F_q^n in lexicographic order.
pub fn ambient_points(ctx: FieldCtx, n: usize) -> Vec<Point> {
    Subspace::full_space(ctx, n).enumerate_points()
}

/// The hyperplane {x : normal . x = 0} as a canonical (n-1)-dimensional
/// subspace.
pub fn hyperplane_from_normal(normal: &Point) -> Subspace {
    let ctx = normal.ctx();
    let n = normal.ambient_dim();
    let m = FqMatrix::from_rows(ctx, &[normal.coords().to_vec()]).expect("normal is a valid row");
    let r = m.null_space().rref();
    debug_assert_eq!(r.rank, n - 1);
    Subspace { basis: r.matrix, pivots: r.pivots }
}

/// The normalized normal vector of a hyperplane (its 1-dimensional dual).
pub fn hyperplane_normal(h: &Subspace) -> Result<Point> {
    if h.dim() + 1 != h.ambient_dim() {
        return Err(Error::Parameter(format!(
            "expected a hyperplane, got dimension {} in ambient {}",
            h.dim(),
            h.ambient_dim()
        )));
    }
    let dual = h.dual();
    debug_assert_eq!(dual.rows(), 1);
    Point::new(h.ctx(), dual.row(0))
}

/// All (q^n - 1)/(q - 1) hyperplanes of F_q^n, indexed by their normalized
/// normal vectors in lexicographic order.
pub fn enumerate_hyperplanes(ctx: FieldCtx, n: usize) -> Vec<Subspace> {
    assert!(n >= 1);
    ambient_points(ctx, n)
        .iter()
        .map(hyperplane_from_normal)
        .collect()
}

/// U ∩ H for a hyperplane H: U itself when U ⊆ H, otherwise one dimension
/// less.
pub fn hyperplane_section(u: &Subspace, h: &Subspace) -> Result<Subspace> {
    if h.dim() + 1 != h.ambient_dim() {
        return Err(Error::Parameter("section requires a hyperplane".into()));
    }
    u.intersect(h)
}
