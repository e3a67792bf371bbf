//! Plumbing calculus moves, deterministic reduction, splice diagrams and an
//! equivalence procedure for graph homology spheres.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::graph_core::tree::far_side_dets;
use crate::graph_core::{natural_cmp, PlumbingGraph, Vertex};
use crate::invariants::{brieskorn_of, casson_brieskorn, mu_bar};
use crate::{Error, Result};

/// Where a blow-up happens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Site {
    Edge(String, String),
    Vertex(String),
}

/// Blow down a ±1 vertex of valence at most two.
pub fn blow_down(g: &PlumbingGraph, id: &str) -> Result<PlumbingGraph> {
    let v = g.require(id)?;
    let eps = g.weight(v);
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidMove(format!("{id} has weight {eps}, not ±1")));
    }
    if g.has_arrow(v) {
        return Err(Error::InvalidMove(format!("{id} carries an arrow")));
    }
    let nbrs = g.neighbors(v).to_vec();
    if nbrs.len() > 2 {
        return Err(Error::InvalidMove(format!("{id} has valence {}", nbrs.len())));
    }
    if nbrs.len() == 2 && nbrs[0] == nbrs[1] {
        return Err(Error::InvalidMove(format!("{id} meets one vertex twice")));
    }
    let intermediate = g.is_intermediate();
    let (mut vs, mut es, ar) = g.clone().into_parts();
    for &u in &nbrs {
        vs[u].weight -= eps;
    }
    if let [a, b] = nbrs[..] {
        es.push((a, b));
    }
    remove_vertex(vs, es, ar, v, intermediate)
}

fn remove_vertex(
    mut vs: Vec<Vertex>,
    es: Vec<(usize, usize)>,
    ar: Vec<(usize, String)>,
    v: usize,
    intermediate: bool,
) -> Result<PlumbingGraph> {
    vs.remove(v);
    let fix = |i: usize| if i > v { i - 1 } else { i };
    let es = es.into_iter().filter(|&(a, b)| a != v && b != v).map(|(a, b)| (fix(a), fix(b))).collect();
    let ar = ar.into_iter().filter(|(a, _)| *a != v).map(|(a, l)| (fix(a), l)).collect();
    PlumbingGraph::from_indexed(vs, es, ar, intermediate)
}

/// Blow up with a new -1 vertex.
pub fn blow_up(g: &PlumbingGraph, site: &Site) -> Result<PlumbingGraph> {
    blow_up_signed(g, site, -1)
}

/// Blow up with a new vertex of weight `sign` (±1); the affected weights
/// change by `sign`.
pub fn blow_up_signed(g: &PlumbingGraph, site: &Site, sign: i64) -> Result<PlumbingGraph> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidMove(format!("blow-up weight must be ±1, got {sign}")));
    }
    let fresh = g.fresh_id("e");
    let intermediate = g.is_intermediate();
    let (mut vs, mut es, ar) = g.clone().into_parts();
    let x = vs.len();
    vs.push(Vertex::new(fresh, sign));
    match site {
        Site::Edge(a, b) => {
            let (a, b) = (g.require(a)?, g.require(b)?);
            let pos = es
                .iter()
                .position(|&(p, q)| (p, q) == (a, b) || (p, q) == (b, a))
                .ok_or_else(|| Error::InvalidMove("no such edge".into()))?;
            es.remove(pos);
            vs[a].weight += sign;
            vs[b].weight += sign;
            es.push((a, x));
            es.push((x, b));
        }
        Site::Vertex(a) => {
            let a = g.require(a)?;
            vs[a].weight += sign;
            es.push((a, x));
        }
    }
    PlumbingGraph::from_indexed(vs, es, ar, intermediate)
}

/// Remove a 0-weight vertex of valence two and merge its neighbors.
pub fn absorb_zero_chain(g: &PlumbingGraph, id: &str) -> Result<PlumbingGraph> {
    let v = g.require(id)?;
    if g.weight(v) != 0 {
        return Err(Error::InvalidMove(format!("{id} has weight {}, not 0", g.weight(v))));
    }
    if g.valence(v) != 2 {
        return Err(Error::InvalidMove(format!("{id} has valence {}, not 2", g.valence(v))));
    }
    if g.has_arrow(v) {
        return Err(Error::InvalidMove(format!("{id} carries an arrow")));
    }
    let (a, b) = (g.neighbors(v)[0], g.neighbors(v)[1]);
    if a == b {
        return Err(Error::InvalidMove(format!("{id} meets one vertex twice")));
    }
    if g.edge_multiplicity(a, b) > 0 {
        return Err(Error::InvalidMove("merging would create a self-loop".into()));
    }
    // keep the neighbor with the smaller id
    let (keep, gone) = if natural_cmp(&g.vertex(a).id, &g.vertex(b).id).is_le() { (a, b) } else { (b, a) };
    let intermediate = g.is_intermediate();
    let (mut vs, es, ar) = g.clone().into_parts();
    vs[keep].weight += vs[gone].weight;
    let redirect = |i: usize| if i == gone { keep } else { i };
    let es: Vec<(usize, usize)> = es
        .into_iter()
        .filter(|&(p, q)| p != v && q != v)
        .map(|(p, q)| (redirect(p), redirect(q)))
        .collect();
    let ar: Vec<(usize, String)> = ar.into_iter().map(|(p, l)| (redirect(p), l)).collect();
    // drop v first (higher index adjusts), then the merged-away vertex
    let (first, second) = if v > gone { (v, gone) } else { (gone, v) };
    let g1 = remove_vertex(vs, es, ar, first, true)?;
    let (vs, es, ar) = g1.into_parts();
    remove_vertex(vs, es, ar, second, intermediate)
}

fn blow_down_applies(g: &PlumbingGraph, v: usize) -> bool {
    let w = g.weight(v);
    let nb = g.neighbors(v);
    (w == 1 || w == -1) && nb.len() <= 2 && !g.has_arrow(v) && !(nb.len() == 2 && nb[0] == nb[1])
}

fn absorb_applies(g: &PlumbingGraph, v: usize) -> bool {
    let nb = g.neighbors(v);
    g.weight(v) == 0
        && nb.len() == 2
        && nb[0] != nb[1]
        && !g.has_arrow(v)
        && g.edge_multiplicity(nb[0], nb[1]) == 0
}

/// One reduction step at the smallest id where a move applies.
fn reduce_step(g: &PlumbingGraph) -> Option<PlumbingGraph> {
    for v in g.sorted_indices() {
        let id = &g.vertex(v).id;
        if blow_down_applies(g, v) {
            return blow_down(g, id).ok();
        }
        if absorb_applies(g, v) {
            return absorb_zero_chain(g, id).ok();
        }
    }
    None
}

/// Apply blow-downs and 0-chain absorptions until none applies.
pub fn reduce(g: &PlumbingGraph) -> PlumbingGraph {
    let mut cur = g.clone();
    while let Some(next) = reduce_step(&cur) {
        cur = next;
    }
    cur
}

/// Number of moves `reduce` performs.
pub fn reduction_length(g: &PlumbingGraph) -> usize {
    let mut cur = g.clone();
    let mut n = 0;
    while let Some(next) = reduce_step(&cur) {
        cur = next;
        n += 1;
    }
    n
}

/// Blow down -1 vertices of valence at most two, smallest id first.
pub fn contract_minus_ones(g: &PlumbingGraph) -> PlumbingGraph {
    let mut cur = g.clone();
    loop {
        let next = cur
            .sorted_indices()
            .into_iter()
            .find(|&v| cur.weight(v) == -1 && blow_down_applies(&cur, v));
        match next {
            Some(v) => {
                let id = cur.vertex(v).id.clone();
                cur = blow_down(&cur, &id).expect("checked applicable");
            }
            None => return cur,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceNode {
    pub id: String,
    /// Leaf weights, ascending.
    pub leaves: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceEdge {
    pub a: usize,
    pub b: usize,
    pub weight_at_a: BigInt,
    pub weight_at_b: BigInt,
}

/// Node-decorated tree of leaf and edge weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpliceDiagram {
    pub nodes: Vec<SpliceNode>,
    pub edges: Vec<SpliceEdge>,
}

impl SpliceDiagram {
    /// All weights around node i: leaves, then edge ends.
    pub fn weights_at(&self, i: usize) -> Vec<BigInt> {
        let mut w = self.nodes[i].leaves.clone();
        for e in &self.edges {
            if e.a == i {
                w.push(e.weight_at_a.clone());
            } else if e.b == i {
                w.push(e.weight_at_b.clone());
            }
        }
        w
    }

    pub fn valence(&self, i: usize) -> usize {
        self.nodes[i].leaves.len() + self.edges.iter().filter(|e| e.a == i || e.b == i).count()
    }

    /// Edge determinants in edge order; empty for a single node.
    pub fn edge_determinants(&self) -> Vec<BigInt> {
        (0..self.edges.len()).map(|e| edge_determinant(self, e)).collect()
    }

    /// Isomorphism-invariant encoding.
    pub fn canonical_form(&self) -> String {
        let n = self.nodes.len();
        if n == 0 {
            return "()".to_string();
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.a].push((e.b, k));
            adj[e.b].push((e.a, k));
        }
        let plain: Vec<Vec<usize>> = adj.iter().map(|l| l.iter().map(|x| x.0).collect()).collect();
        crate::graph_core::centroids(&plain)
            .into_iter()
            .map(|c| self.encode(&adj, c, usize::MAX))
            .min()
            .unwrap_or_default()
    }

    fn encode(&self, adj: &[Vec<(usize, usize)>], v: usize, from: usize) -> String {
        let mut leaves: Vec<&BigInt> = self.nodes[v].leaves.iter().collect();
        leaves.sort();
        let mut parts: Vec<String> = adj[v]
            .iter()
            .filter(|(u, _)| *u != from)
            .map(|&(u, k)| {
                let e = &self.edges[k];
                let (here, there) =
                    if e.a == v { (&e.weight_at_a, &e.weight_at_b) } else { (&e.weight_at_b, &e.weight_at_a) };
                format!("<{here},{there}>{}", self.encode(adj, u, v))
            })
            .collect();
        parts.sort();
        let ls: Vec<String> = leaves.iter().map(|x| x.to_string()).collect();
        format!("({};{})", ls.join(","), parts.concat())
    }

    pub fn is_isomorphic(&self, other: &SpliceDiagram) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Minimal form: drop weight-1 leaves at nodes of valence at least four,
    /// dissolve valence-3 nodes with a weight-1 leaf, and merge nodes across
    /// edges of determinant zero.
    pub fn normalized(&self) -> SpliceDiagram {
        let mut d = self.clone();
        while d.normalize_step() {}
        d
    }

    pub fn is_minimal(&self) -> bool {
        self.clone().normalize_step_check()
    }

    fn normalize_step_check(mut self) -> bool {
        !self.normalize_step()
    }

    fn normalize_step(&mut self) -> bool {
        let one = BigInt::one();
        for i in 0..self.nodes.len() {
            let Some(pos) = self.nodes[i].leaves.iter().position(|w| *w == one) else { continue };
            if self.valence(i) >= 4 {
                self.nodes[i].leaves.remove(pos);
                return true;
            }
            if self.valence(i) == 3 {
                self.nodes[i].leaves.remove(pos);
                self.dissolve(i);
                return true;
            }
        }
        if let Some(k) = (0..self.edges.len()).find(|&k| edge_determinant(self, k).is_zero()) {
            let SpliceEdge { a, b, .. } = self.edges.remove(k);
            let moved = core::mem::take(&mut self.nodes[b].leaves);
            self.nodes[a].leaves.extend(moved);
            self.nodes[a].leaves.sort();
            for e in &mut self.edges {
                if e.a == b {
                    e.a = a;
                }
                if e.b == b {
                    e.b = a;
                }
            }
            self.drop_node(b);
            return true;
        }
        false
    }

    /// Remove a node with exactly two remaining directions, joining them.
    fn dissolve(&mut self, i: usize) {
        let incident: Vec<usize> = (0..self.edges.len()).filter(|&k| self.edges[k].a == i || self.edges[k].b == i).collect();
        let far = |e: &SpliceEdge| if e.a == i { (e.b, e.weight_at_b.clone()) } else { (e.a, e.weight_at_a.clone()) };
        match incident.as_slice() {
            [k1, k2] => {
                let (a, wa) = far(&self.edges[*k1]);
                let (b, wb) = far(&self.edges[*k2]);
                self.edges.push(SpliceEdge { a, b, weight_at_a: wa, weight_at_b: wb });
            }
            [k] => {
                // the remaining leaf is dropped; the far node sees a leaf
                let (a, wa) = far(&self.edges[*k]);
                self.nodes[a].leaves.push(wa);
                self.nodes[a].leaves.sort();
            }
            _ => {}
        }
        self.edges.retain(|e| e.a != i && e.b != i);
        self.drop_node(i);
    }

    fn drop_node(&mut self, i: usize) {
        self.nodes.remove(i);
        for e in &mut self.edges {
            if e.a > i {
                e.a -= 1;
            }
            if e.b > i {
                e.b -= 1;
            }
        }
    }
}

fn product(ws: &[BigInt]) -> BigInt {
    ws.iter().fold(BigInt::one(), |acc, w| acc * w)
}

/// Near weights product minus the product of all other weights at both ends.
pub fn edge_determinant(d: &SpliceDiagram, e: usize) -> BigInt {
    let edge = &d.edges[e];
    let others = |node: usize| {
        let mut w = d.nodes[node].leaves.clone();
        for (k, f) in d.edges.iter().enumerate() {
            if k == e {
                continue;
            }
            if f.a == node {
                w.push(f.weight_at_a.clone());
            } else if f.b == node {
                w.push(f.weight_at_b.clone());
            }
        }
        product(&w)
    };
    &edge.weight_at_a * &edge.weight_at_b - others(edge.a) * others(edge.b)
}

/// Splice diagram of a homology-sphere tree: nodes are vertices of valence
/// at least three, weights are far-side determinants in absolute value.
pub fn splice_diagram(g: &PlumbingGraph) -> Result<SpliceDiagram> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let det = g.determinant();
    if !det.abs().is_one() {
        return Err(Error::NotHomologySphere(det));
    }
    let weights = g.weights();
    let nodes: Vec<usize> = (0..g.len()).filter(|&v| g.valence(v) >= 3).collect();
    let mut slot = vec![usize::MAX; g.len()];
    for (k, &v) in nodes.iter().enumerate() {
        slot[v] = k;
    }
    let mut out = SpliceDiagram::default();
    let mut pending: Vec<(usize, usize, BigInt)> = Vec::new();
    for &v in &nodes {
        let far = far_side_dets(&weights, g.adjacency(), v);
        let mut leaves = Vec::new();
        for (&u, d) in g.neighbors(v).iter().zip(far) {
            let d = d.abs();
            match walk(g, v, u) {
                Some(node) => pending.push((slot[v], slot[node], d)),
                None => leaves.push(d),
            }
        }
        leaves.sort();
        out.nodes.push(SpliceNode { id: g.vertex(v).id.clone(), leaves });
    }
    for (a, b, wa) in &pending {
        if a < b {
            let wb = pending
                .iter()
                .find(|(x, y, _)| x == b && y == a)
                .map(|t| t.2.clone())
                .ok_or_else(|| Error::Internal("unpaired splice edge".into()))?;
            out.edges.push(SpliceEdge { a: *a, b: *b, weight_at_a: wa.clone(), weight_at_b: wb });
        }
    }
    for i in 0..out.nodes.len() {
        let ws = out.weights_at(i);
        for x in 0..ws.len() {
            for y in x + 1..ws.len() {
                if !ws[x].gcd(&ws[y]).is_one() {
                    return Err(Error::InvalidArgument(format!(
                        "weights {} and {} at node {} are not coprime",
                        ws[x], ws[y], out.nodes[i].id
                    )));
                }
            }
        }
    }
    Ok(out)
}

/// Follow a chain from `v` through `u`; the first vertex of valence >= 3 or
/// None if the chain ends in a leaf.
fn walk(g: &PlumbingGraph, v: usize, u: usize) -> Option<usize> {
    let (mut prev, mut cur) = (v, u);
    loop {
        match g.valence(cur) {
            1 => return None,
            2 => {
                let next = *g.neighbors(cur).iter().find(|&&x| x != prev)?;
                (prev, cur) = (cur, next);
            }
            _ => return Some(cur),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equivalent,
    Distinct,
    Unknown,
}

/// A named invariant with its value on each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

/// What established an Equivalent verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    ReducedForms,
    SpliceDiagram(SpliceDiagram),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub tag: Verdict,
    pub witness: Option<Witness>,
    pub certificate: Option<Certificate>,
}

impl EquivalenceVerdict {
    fn distinct(invariant: &str, left: impl ToString, right: impl ToString) -> Self {
        EquivalenceVerdict {
            tag: Verdict::Distinct,
            witness: Some(Witness { invariant: invariant.into(), left: left.to_string(), right: right.to_string() }),
            certificate: None,
        }
    }

    fn equivalent(c: Certificate) -> Self {
        EquivalenceVerdict { tag: Verdict::Equivalent, witness: None, certificate: Some(c) }
    }
}

fn oriented_casson(g: &PlumbingGraph) -> Option<i64> {
    let (t, orient) = brieskorn_of(g)?;
    casson_brieskorn(t).ok().map(|l| orient * l)
}

/// Decide whether two homology-sphere trees bound the same 3-manifold.
///
/// Invariant mismatches (μ̄, Casson on Brieskorn stars) give Distinct;
/// isomorphic reduced graphs or isomorphic minimal splice diagrams give
/// Equivalent. Splice diagrams do not see orientation, which only the
/// invariant checks can detect.
pub fn equivalent(g1: &PlumbingGraph, g2: &PlumbingGraph) -> Result<EquivalenceVerdict> {
    let m1 = mu_bar(g1)?;
    let m2 = mu_bar(g2)?;
    if m1 != m2 {
        return Ok(EquivalenceVerdict::distinct("mu_bar", m1, m2));
    }
    if let (Some(l1), Some(l2)) = (oriented_casson(g1), oriented_casson(g2)) {
        if l1 != l2 {
            return Ok(EquivalenceVerdict::distinct("casson", l1, l2));
        }
    }
    let (r1, r2) = (reduce(g1), reduce(g2));
    if r1.canonical_form()? == r2.canonical_form()? {
        return Ok(EquivalenceVerdict::equivalent(Certificate::ReducedForms));
    }
    let (d1, d2) = match (splice_diagram(g1), splice_diagram(g2)) {
        (Ok(a), Ok(b)) => (a.normalized(), b.normalized()),
        _ => return Ok(EquivalenceVerdict { tag: Verdict::Unknown, witness: None, certificate: None }),
    };
    if d1.is_isomorphic(&d2) {
        return Ok(EquivalenceVerdict::equivalent(Certificate::SpliceDiagram(d1)));
    }
    Ok(EquivalenceVerdict::distinct("splice_diagram", d1.canonical_form(), d2.canonical_form()))
}
