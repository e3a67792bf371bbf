//! τ-sequences from the Laufer computation sequence, graded roots, d and the
//! involutive pair, and monotone subroots.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::contfrac::ExactRational;
use crate::graph_core::PlumbingGraph;
use crate::seifert_splice::{brieskorn_plumbing, BrieskornTriple};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauSequence {
    values: Vec<i64>,
    stabilization: usize,
    window: usize,
    period: usize,
    ks: i64,
}

impl TauSequence {
    /// τ(0), ..., τ(stabilization index).
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Past this index the increments are nonnegative.
    pub fn stabilization_index(&self) -> usize {
        self.stabilization
    }

    /// Number of Laufer steps computed, including the certificate period.
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn min(&self) -> i64 {
        self.values.iter().copied().min().unwrap_or(0)
    }

    /// K² + s of the plumbing the sequence was computed on.
    pub fn k_squared_plus_s(&self) -> i64 {
        self.ks
    }

    /// min τ - (K² + s)/8, the minimum in the normalization where d = -2 min.
    pub fn normalized_min(&self) -> ExactRational {
        ExactRational::from_integer(self.min()) - ExactRational::new(self.ks, 8).expect("nonzero")
    }
}

/// τ(0..=steps) along the generalized Laufer sequence anchored at `center`.
/// The graph must be negative definite.
pub fn laufer_tau(g: &PlumbingGraph, center: usize, steps: usize) -> Result<Vec<i64>> {
    if !g.is_negative_definite() {
        return Err(Error::InvalidArgument("Laufer sequence needs a negative-definite plumbing".into()));
    }
    let n = g.len();
    let w = g.weights();
    let adj = g.adjacency();
    // pairing[u] = (x . E_u)
    let mut pairing = vec![0i64; n];
    let mut chi = 0i64;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(0);
    let mut work: Vec<usize> = Vec::new();
    let add = |u: usize, chi: &mut i64, pairing: &mut Vec<i64>, work: &mut Vec<usize>| {
        *chi += 1 - pairing[u];
        pairing[u] += w[u];
        for &v in &adj[u] {
            pairing[v] += 1;
            if v != center && pairing[v] > 0 {
                work.push(v);
            }
        }
        if u != center && pairing[u] > 0 {
            work.push(u);
        }
    };
    for _ in 0..steps {
        add(center, &mut chi, &mut pairing, &mut work);
        while let Some(u) = work.pop() {
            if pairing[u] > 0 {
                add(u, &mut chi, &mut pairing, &mut work);
            }
        }
        out.push(chi);
    }
    Ok(out)
}

/// τ of Σ(p,q,r) on its canonical plumbing, over two periods pqr; the second
/// period certifies that the sequence has stabilized.
pub fn tau_sequence(t: BrieskornTriple) -> Result<TauSequence> {
    let g = brieskorn_plumbing(t);
    let center = g.index_of("c").expect("star center");
    let period = usize::try_from(t.product()).map_err(|_| Error::InvalidArgument("triple too large".into()))?;
    let window = 2 * period;
    let tau = laufer_tau(&g, center, window)?;
    let last_drop = (0..window).rev().find(|&i| tau[i + 1] < tau[i]);
    let stabilization = last_drop.map_or(0, |i| i + 1);
    if stabilization > period {
        return Err(Error::Internal(format!(
            "τ still decreasing in the certificate period of {t} (index {stabilization})"
        )));
    }
    let ks = g
        .canonical_square_plus_rank()
        .and_then(|r| r.to_integer().to_i64().filter(|_| r.is_integer()))
        .ok_or_else(|| Error::Internal("K² + s is not an integer".into()))?;
    let mut values = tau;
    values.truncate(stabilization + 1);
    Ok(TauSequence { values, stabilization, window, period, ks })
}

/// Alternating local extrema min, max, ..., min of a level sequence. A
/// boundary that is higher than its neighbor is part of the stem and dropped.
fn extrema(seq: &[i64]) -> Vec<i64> {
    let mut flat: Vec<i64> = Vec::with_capacity(seq.len());
    for &x in seq {
        if flat.last() != Some(&x) {
            flat.push(x);
        }
    }
    if flat.len() <= 1 {
        return flat;
    }
    let mut ext = Vec::new();
    if flat[0] < flat[1] {
        ext.push(flat[0]);
    }
    for i in 1..flat.len() - 1 {
        if (flat[i] - flat[i - 1]).signum() != (flat[i + 1] - flat[i]).signum() {
            ext.push(flat[i]);
        }
    }
    let k = flat.len() - 1;
    if flat[k] < flat[k - 1] {
        ext.push(flat[k]);
    }
    ext
}

/// Graded root of a level sequence: leaves at local minima, junctions at the
/// intervening maxima. A vertex at τ-level h has grading shift - 2h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRoot {
    shift: i64,
    ext: Vec<i64>,
}

impl GradedRoot {
    pub fn from_levels(shift: i64, levels: &[i64]) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidArgument("empty level sequence".into()));
        }
        Ok(GradedRoot { shift, ext: extrema(levels) })
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Alternating extrema levels, minima at even positions.
    pub fn extrema(&self) -> &[i64] {
        &self.ext
    }

    pub fn grading(&self, level: i64) -> i64 {
        self.shift - 2 * level
    }

    /// Grading without the K² + s normalization.
    pub fn raw_grading(&self, level: i64) -> i64 {
        -2 * level
    }

    pub fn leaf_levels(&self) -> impl Iterator<Item = i64> + '_ {
        self.ext.iter().step_by(2).copied()
    }

    pub fn leaf_gradings(&self) -> Vec<i64> {
        self.leaf_levels().map(|l| self.grading(l)).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.ext.len().div_ceil(2)
    }

    /// Level at which leaves i and j (by leaf order) meet.
    pub fn join_level(&self, i: usize, j: usize) -> i64 {
        let (a, b) = (2 * i.min(j), 2 * i.max(j));
        if a == b {
            return self.ext[a];
        }
        (a + 1..b).step_by(2).map(|k| self.ext[k]).max().expect("nonempty")
    }

    /// Invariant under the reflection reversing the leaf order.
    pub fn is_symmetric(&self) -> bool {
        self.ext.iter().eq(self.ext.iter().rev())
    }

    pub fn is_trivial(&self) -> bool {
        self.ext.len() == 1
    }

    /// Level of the lowest vertex fixed by the reflection.
    fn axis_position(&self) -> usize {
        (self.ext.len() - 1) / 2
    }

    /// Explicit tree: leaves first (in order), then junctions.
    pub fn tree(&self) -> RootTree {
        let k = self.leaf_count();
        let mut nodes: Vec<RootNode> = self
            .leaf_levels()
            .enumerate()
            .map(|(i, l)| RootNode { level: l, grading: self.grading(l), children: Vec::new(), leaf: Some(i) })
            .collect();
        let mut top: Vec<usize> = (0..k).collect();
        let mut owner: Vec<usize> = (0..k).collect();
        let mut order: Vec<usize> = (0..k.saturating_sub(1)).collect();
        order.sort_by_key(|&j| (self.ext[2 * j + 1], j));
        let find = |owner: &mut Vec<usize>, mut x: usize| {
            while owner[x] != x {
                owner[x] = owner[owner[x]];
                x = owner[x];
            }
            x
        };
        for j in order {
            let level = self.ext[2 * j + 1];
            let (a, b) = (find(&mut owner, j), find(&mut owner, j + 1));
            let (ta, tb) = (top[a], top[b]);
            let joins = |n: &RootNode| n.leaf.is_none() && n.level == level;
            let target = if joins(&nodes[ta]) {
                ta
            } else if joins(&nodes[tb]) {
                tb
            } else {
                nodes.push(RootNode { level, grading: self.grading(level), children: vec![ta], leaf: None });
                nodes.len() - 1
            };
            for other in [ta, tb] {
                if other == target {
                    continue;
                }
                if joins(&nodes[other]) {
                    let moved = core::mem::take(&mut nodes[other].children);
                    nodes[target].children.extend(moved);
                } else if !nodes[target].children.contains(&other) {
                    nodes[target].children.push(other);
                }
            }
            owner[b] = a;
            top[a] = target;
        }
        let root = top[find(&mut owner, 0)];
        let mut tree = RootTree { nodes, top: root };
        tree.prune();
        tree
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootNode {
    pub level: i64,
    pub grading: i64,
    pub children: Vec<usize>,
    /// Leaf position, for leaves.
    pub leaf: Option<usize>,
}

/// Finite part of a graded root; an infinite stem hangs below `top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootTree {
    pub nodes: Vec<RootNode>,
    pub top: usize,
}

impl RootTree {
    // Junctions emptied by merging are left unreachable; renumber the rest.
    fn prune(&mut self) {
        let mut keep = vec![false; self.nodes.len()];
        let mut stack = vec![self.top];
        while let Some(v) = stack.pop() {
            keep[v] = true;
            stack.extend(self.nodes[v].children.iter().copied());
        }
        let mut map = vec![usize::MAX; self.nodes.len()];
        let mut next = 0;
        for (i, k) in keep.iter().enumerate() {
            if *k {
                map[i] = next;
                next += 1;
            }
        }
        let old = core::mem::take(&mut self.nodes);
        for (i, mut n) in old.into_iter().enumerate() {
            if keep[i] {
                n.children = n.children.iter().map(|c| map[*c]).collect();
                self.nodes.push(n);
            }
        }
        self.top = map[self.top];
    }
}

pub fn graded_root(tau: &TauSequence) -> GradedRoot {
    GradedRoot { shift: tau.ks / 4, ext: extrema(&tau.values) }
}

/// d = highest leaf grading.
pub fn d_invariant(r: &GradedRoot) -> i64 {
    r.leaf_gradings().into_iter().max().expect("a root has a leaf")
}

/// (d̄, d̲): d̄ is the top leaf grading of the monotone subroot, d̲ the grading
/// of the highest vertex fixed by the reflection.
pub fn involutive_ds(r: &GradedRoot) -> Result<(i64, i64)> {
    let m = monotone_subroot(r)?;
    let dbar = d_invariant(&m.root);
    let dunder = r.grading(r.ext[r.axis_position()]);
    Ok((dbar, dunder))
}

/// Subroot spanned by the reflection-fixed vertex and the leaves that are
/// Pareto-optimal for (leaf grading, grading where the leaf meets its mirror).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneRoot {
    pub root: GradedRoot,
    /// Positions in the source extrema list; an odd position is the axis junction.
    pub positions: Vec<usize>,
}

impl MonotoneRoot {
    pub fn is_trivial(&self) -> bool {
        self.root.is_trivial()
    }

    /// Whether this is the subroot of `r` spanned by `positions`.
    pub fn is_subroot_of(&self, r: &GradedRoot) -> bool {
        self.positions.iter().all(|&p| p < r.ext.len())
            && self.root.shift == r.shift
            && induced(r, &self.positions) == self.root
    }
}

fn induced(r: &GradedRoot, positions: &[usize]) -> GradedRoot {
    let mut seq = Vec::with_capacity(2 * positions.len());
    for (i, &p) in positions.iter().enumerate() {
        if i > 0 {
            let prev = positions[i - 1];
            let between = (prev..=p).filter(|k| k % 2 == 1).map(|k| r.ext[k]).max();
            seq.push(between.expect("distinct leaves are separated by a junction"));
        }
        seq.push(r.ext[p]);
    }
    GradedRoot { shift: r.shift, ext: extrema(&seq) }
}

pub fn monotone_subroot(r: &GradedRoot) -> Result<MonotoneRoot> {
    if !r.is_symmetric() {
        return Err(Error::InvalidArgument("graded root is not symmetric".into()));
    }
    let axis = r.axis_position();
    let axis_level = r.ext[axis];
    let k = r.leaf_count();
    // (leaf level, level where the leaf meets its mirror), lower is better
    let cand: Vec<(usize, i64, i64)> = (0..k)
        .filter(|&i| 2 * i != axis)
        .map(|i| (i, r.ext[2 * i], r.join_level(i, k - 1 - i)))
        .filter(|&(_, a, _)| a < axis_level)
        .collect();
    let dominated = |a: i64, b: i64| {
        cand.iter().any(|&(_, a2, b2)| a2 <= a && b2 <= b && (a2, b2) != (a, b))
    };
    let mut positions: Vec<usize> = cand
        .iter()
        .filter(|&&(_, a, b)| !dominated(a, b))
        .map(|&(i, _, _)| 2 * i)
        .collect();
    positions.push(axis);
    positions.sort_unstable();
    let root = induced(r, &positions);
    Ok(MonotoneRoot { root, positions })
}

/// τ-increments predicted by the Seifert invariants:
/// Δ(n) = 1 - e0 n - Σ ceil(n ω_i / α_i).
pub fn seifert_tau_increment(e0: i64, legs: &[(i64, i64)], n: i64) -> i64 {
    1 - e0 * n - legs.iter().map(|&(a, w)| (n * w + a - 1).div_euclid(a)).sum::<i64>()
}

/// Normalization shift (K² + s)/4 as an exact rational, for diagnostics.
pub fn grading_shift(g: &PlumbingGraph) -> Option<ExactRational> {
    let ks = g.canonical_square_plus_rank()?;
    Some(ExactRational::from(ks) * ExactRational::new(BigInt::from(1), BigInt::from(4)).ok()?)
}
