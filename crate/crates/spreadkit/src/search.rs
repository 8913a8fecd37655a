//! Independent brute-force oracle: enumerate all k-subspaces of F_q^n and
//! find a maximum partial spread by branch-and-bound clique search on the
//! trivial-intersection compatibility graph.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::codes::SubspaceCode;
use crate::field::FieldCtx;
use crate::matrix::FqMatrix;
use crate::subspace::{ambient_points, gaussian_binomial, Subspace};
use crate::{Error, Result};

/// Cap on the number of subspaces the oracle will enumerate.
pub const ENUMERATION_CAP: u64 = 200_000;

/// All canonical k-subspaces of F_q^n, generated by echelon pattern: choose
/// pivot columns in lexicographic order, then fill the free cells in
/// row-major base-q counting order. The count equals the Gaussian binomial
/// [n choose k]_q, which is an independent check of that formula.
pub fn enumerate_k_subspaces(q: u64, n: u32, k: u32) -> Result<Vec<Subspace>> {
    if k < 1 || n < k {
        return Err(Error::Parameter(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let expected = gaussian_binomial(n, k as i64, q);
    if expected > BigUint::from(ENUMERATION_CAP) {
        return Err(Error::TooLarge(format!(
            "G_q(n,k) has {expected} elements, enumeration cap is {ENUMERATION_CAP}"
        )));
    }
    let ctx = FieldCtx::new(q, 1)?;
    let n = n as usize;
    let k = k as usize;
    let mut out = Vec::with_capacity(expected.to_usize().expect("within cap"));
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free cells: row i, column c with c > pivots[i] and c not a pivot.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let combos = q.checked_pow(free.len() as u32).expect("within cap");
        for mut idx in 0..combos {
            let mut m = FqMatrix::zero(ctx, k, n);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, 1);
            }
            for &(i, c) in &free {
                m.set(i, c, idx % q);
                idx /= q;
            }
            out.push(Subspace::from_rref_unchecked(m, pivots.clone()));
        }
        // Next pivot combination in lexicographic order.
        let Some(pos) = (0..k).rev().find(|&i| pivots[i] < n - k + i) else {
            break;
        };
        pivots[pos] += 1;
        for i in pos + 1..k {
            pivots[i] = pivots[i - 1] + 1;
        }
    }
    debug_assert_eq!(BigUint::from(out.len()), expected);
    Ok(out)
}

/// The compatibility graph of G_q(n, k): vertices are all k-subspaces in
/// enumeration order, and two vertices are adjacent iff they intersect
/// trivially (equivalently, their point sets are disjoint).
pub struct CompatibilityGraph {
    pub vertices: Vec<Subspace>,
    adjacency: Vec<Vec<u64>>,
    point_sets: Vec<Vec<u64>>,
    words: usize,
    total_points: usize,
    points_per_subspace: usize,
}

impl CompatibilityGraph {
    pub fn build(q: u64, n: u32, k: u32) -> Result<Self> {
        let vertices = enumerate_k_subspaces(q, n, k)?;
        let ctx = vertices[0].ctx();
        let points = ambient_points(ctx, n as usize);
        let total_points = points.len();
        let words = total_points.div_ceil(64);
        let point_sets: Vec<Vec<u64>> = vertices
            .iter()
            .map(|v| {
                let mut set = vec![0u64; words];
                for p in v.enumerate_points() {
                    let idx = points.binary_search(&p).expect("point of the ambient space");
                    set[idx / 64] |= 1 << (idx % 64);
                }
                set
            })
            .collect();
        let m = vertices.len();
        let mut adjacency = vec![vec![0u64; m.div_ceil(64)]; m];
        for i in 0..m {
            for j in i + 1..m {
                let disjoint = point_sets[i]
                    .iter()
                    .zip(&point_sets[j])
                    .all(|(a, b)| a & b == 0);
                if disjoint {
                    adjacency[i][j / 64] |= 1 << (j % 64);
                    adjacency[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        let points_per_subspace = ((q.pow(k) - 1) / (q - 1)) as usize;
        Ok(CompatibilityGraph {
            vertices,
            adjacency,
            point_sets,
            words,
            total_points,
            points_per_subspace,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j / 64] & (1 << (j % 64)) != 0
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Budgets and switches for the oracle search.
#[derive(Clone, Debug)]
pub struct SearchLimits {
    pub time: Option<Duration>,
    pub node_budget: Option<u64>,
    /// Fix the lexicographically least subspace into the spread. Sound
    /// because GL(n, q) acts transitively on G_q(n, k), so some maximum
    /// spread contains any prescribed subspace; switchable for audit runs.
    pub symmetry: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { time: None, node_budget: None, symmetry: true }
    }
}

/// Outcome of a branch-and-bound run. When `proved_optimal` is set,
/// `best_size` equals A_q(n, 2k; k).
pub struct SearchResult {
    pub best_size: usize,
    pub witness: SubspaceCode,
    pub proved_optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

struct Searcher<'g> {
    graph: &'g CompatibilityGraph,
    best: Vec<usize>,
    stack: Vec<usize>,
    covered: Vec<u64>,
    capacity: usize,
    nodes: u64,
    node_budget: u64,
    deadline: Option<Instant>,
    aborted: bool,
}

enum Stop {
    /// The current best meets the global point-capacity bound.
    CapacityReached,
    /// Time or node budget exhausted.
    BudgetExhausted,
}

impl<'g> Searcher<'g> {
    fn point_bound(&self, cands: &[usize]) -> usize {
        // Uncovered points still coverable by some candidate, divided by the
        // points each subspace covers.
        let mut reachable = vec![0u64; self.graph.words];
        for &v in cands {
            for (acc, w) in reachable.iter_mut().zip(&self.graph.point_sets[v]) {
                *acc |= w;
            }
        }
        let uncovered: usize = reachable
            .iter()
            .zip(&self.covered)
            .map(|(r, c)| (r & !c).count_ones() as usize)
            .sum();
        uncovered / self.graph.points_per_subspace
    }

    fn extend(&mut self, cands: &[usize]) -> Option<Stop> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            self.aborted = true;
            return Some(Stop::BudgetExhausted);
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    self.aborted = true;
                    return Some(Stop::BudgetExhausted);
                }
            }
        }
        if self.stack.len() > self.best.len() {
            self.best = self.stack.clone();
            if self.best.len() >= self.capacity {
                return Some(Stop::CapacityReached);
            }
        }
        if cands.is_empty() {
            return None;
        }
        if self.stack.len() + cands.len() > self.best.len()
            && self.stack.len() + self.point_bound(cands) <= self.best.len()
        {
            return None;
        }
        for (idx, &v) in cands.iter().enumerate() {
            if self.stack.len() + (cands.len() - idx) <= self.best.len() {
                return None;
            }
            let next: Vec<usize> = cands[idx + 1..]
                .iter()
                .copied()
                .filter(|&u| self.graph.adjacent(v, u))
                .collect();
            self.push(v);
            let stop = self.extend(&next);
            self.pop(v);
            if stop.is_some() {
                return stop;
            }
        }
        None
    }

    fn push(&mut self, v: usize) {
        self.stack.push(v);
        for (acc, w) in self.covered.iter_mut().zip(&self.graph.point_sets[v]) {
            *acc ^= w; // clique members cover disjoint point sets
        }
    }

    fn pop(&mut self, v: usize) {
        self.stack.pop();
        for (acc, w) in self.covered.iter_mut().zip(&self.graph.point_sets[v]) {
            *acc ^= w;
        }
    }
}

/// Finds a maximum partial k-spread of F_q^n by branch-and-bound, starting
/// from a greedy solution. Deterministic: vertices are branched in
/// descending-degree then lexicographic order, and the search is
/// single-threaded.
pub fn max_partial_spread(q: u64, n: u32, k: u32, limits: &SearchLimits) -> Result<SearchResult> {
    let started = Instant::now();
    let graph = CompatibilityGraph::build(q, n, k)?;
    let m = graph.vertex_count();

    // Branch order: descending degree, ties by the subspace order itself.
    let mut order: Vec<usize> = (0..m).collect();
    let degrees: Vec<usize> = (0..m).map(|i| graph.degree(i)).collect();
    order.sort_by(|&a, &b| {
        degrees[b]
            .cmp(&degrees[a])
            .then_with(|| graph.vertices[a].cmp(&graph.vertices[b]))
    });

    let (base_stack, cands): (Vec<usize>, Vec<usize>) = if limits.symmetry {
        let v0 = (0..m)
            .min_by(|&a, &b| graph.vertices[a].cmp(&graph.vertices[b]))
            .expect("at least one vertex");
        (vec![v0], order.iter().copied().filter(|&u| graph.adjacent(v0, u)).collect())
    } else {
        (Vec::new(), order)
    };

    let mut searcher = Searcher {
        graph: &graph,
        best: Vec::new(),
        stack: Vec::new(),
        covered: vec![0u64; graph.words],
        capacity: graph.total_points / graph.points_per_subspace,
        nodes: 0,
        node_budget: limits.node_budget.unwrap_or(u64::MAX),
        deadline: limits.time.map(|t| started + t),
        aborted: false,
    };
    for &v in &base_stack {
        searcher.push(v);
    }

    // Greedy initial solution along the branch order.
    let mut greedy = base_stack.clone();
    {
        let mut covered = searcher.covered.clone();
        for &v in &cands {
            let disjoint = graph.point_sets[v]
                .iter()
                .zip(&covered)
                .all(|(a, b)| a & b == 0);
            if disjoint {
                greedy.push(v);
                for (acc, w) in covered.iter_mut().zip(&graph.point_sets[v]) {
                    *acc |= w;
                }
            }
        }
    }
    searcher.best = greedy;

    let proved = if searcher.best.len() >= searcher.capacity {
        true
    } else {
        match searcher.extend(&cands) {
            Some(Stop::CapacityReached) => true,
            Some(Stop::BudgetExhausted) => false,
            None => true,
        }
    };

    let witness_words: Vec<Subspace> = searcher
        .best
        .iter()
        .map(|&i| graph.vertices[i].clone())
        .collect();
    let ctx = witness_words[0].ctx();
    let witness = SubspaceCode::new(ctx, n as usize, k as usize, witness_words, Some(2 * k))?;
    Ok(SearchResult {
        best_size: searcher.best.len(),
        witness,
        proved_optimal: proved && !searcher.aborted,
        nodes_explored: searcher.nodes,
        elapsed: started.elapsed(),
    })
}
