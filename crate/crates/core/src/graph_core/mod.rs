//! Plumbing graphs: representation, validation, linear algebra and
//! canonical forms.

mod matrix;
pub(crate) mod ring;
pub(crate) mod tree;

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

pub use matrix::IntegerMatrix;

use crate::contfrac::ExactRational;
use crate::{Error, Result};

/// A genus-zero vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub weight: i64,
}

impl Vertex {
    pub fn new(id: impl Into<String>, weight: i64) -> Self {
        Vertex { id: id.into(), weight }
    }
}

/// A fiber marker attached to a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub at: String,
    pub label: String,
}

impl Arrow {
    pub fn new(at: impl Into<String>, label: impl Into<String>) -> Self {
        Arrow { at: at.into(), label: label.into() }
    }
}

/// Weighted multigraph of genus-zero vertices with optional arrows.
///
/// Values are immutable; every move returns a new graph.
#[derive(Clone, Debug)]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    arrows: Vec<(usize, String)>,
    index: BTreeMap<String, usize>,
    adj: Vec<Vec<usize>>,
    intermediate: bool,
}

impl PartialEq for PlumbingGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.arrows == other.arrows
            && self.intermediate == other.intermediate
    }
}

impl Eq for PlumbingGraph {}

impl PlumbingGraph {
    /// Validated construction. The graph must be connected.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(String, String)>, arrows: Vec<Arrow>) -> Result<Self> {
        Self::build(vertices, edges, arrows, false)
    }

    /// Like [`PlumbingGraph::new`] but allows a disconnected graph.
    pub fn new_intermediate(
        vertices: Vec<Vertex>,
        edges: Vec<(String, String)>,
        arrows: Vec<Arrow>,
    ) -> Result<Self> {
        Self::build(vertices, edges, arrows, true)
    }

    fn build(
        vertices: Vec<Vertex>,
        edges: Vec<(String, String)>,
        arrows: Vec<Arrow>,
        intermediate: bool,
    ) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {:?}", v.id)));
            }
        }
        let look = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex id {id:?}")))
        };
        let mut e = Vec::with_capacity(edges.len());
        for (a, b) in &edges {
            e.push((look(a)?, look(b)?));
        }
        let mut arr = Vec::with_capacity(arrows.len());
        for a in arrows {
            arr.push((look(&a.at)?, a.label));
        }
        Self::from_indexed(vertices, e, arr, intermediate)
    }

    pub(crate) fn from_indexed(
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        arrows: Vec<(usize, String)>,
        intermediate: bool,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {:?}", v.id)));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph("edge endpoint out of range".into()));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {:?}", vertices[a].id)));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        if arrows.iter().any(|(a, _)| *a >= n) {
            return Err(Error::InvalidGraph("arrow references a missing vertex".into()));
        }
        let g = PlumbingGraph { vertices, edges, arrows, index, adj, intermediate };
        if !intermediate && !g.is_connected() {
            return Err(Error::InvalidGraph("graph is disconnected".into()));
        }
        Ok(g)
    }

    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Linear chain with ids `v0, v1, ...`.
    pub fn chain(weights: &[i64]) -> Self {
        let edges = (1..weights.len()).map(|i| (i - 1, i)).collect();
        Self::from_weights(weights, edges).expect("a chain is connected")
    }

    /// Graph with ids `v0, v1, ...` and the given index edges.
    pub fn from_weights(weights: &[i64], edges: Vec<(usize, usize)>) -> Result<Self> {
        let vs = weights.iter().enumerate().map(|(i, &w)| Vertex::new(format!("v{i}"), w)).collect();
        Self::from_indexed(vs, edges, Vec::new(), false)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.vertices[i].weight
    }

    pub fn weights(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.weight).collect()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub(crate) fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::InvalidArgument(format!("no vertex with id {id:?}")))
    }

    /// Edges as index pairs, in insertion order.
    pub fn edge_indices(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(a, b)| (self.vertices[a].id.as_str(), self.vertices[b].id.as_str()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_multiplicity(&self, a: usize, b: usize) -> usize {
        self.adj[a].iter().filter(|&&x| x == b).count()
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.arrows
            .iter()
            .map(|(i, l)| Arrow { at: self.vertices[*i].id.clone(), label: l.clone() })
    }

    pub(crate) fn arrow_indices(&self) -> &[(usize, String)] {
        &self.arrows
    }

    pub fn has_arrow(&self, i: usize) -> bool {
        self.arrows.iter().any(|(a, _)| *a == i)
    }

    /// Neighbors with multiplicity.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn valence(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn is_intermediate(&self) -> bool {
        self.intermediate
    }

    pub fn component_count(&self) -> usize {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for r in 0..n {
            if seen[r] {
                continue;
            }
            count += 1;
            let mut stack = vec![r];
            seen[r] = true;
            while let Some(v) = stack.pop() {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// First Betti number of the underlying multigraph.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.component_count() - self.len()
    }

    pub fn is_forest(&self) -> bool {
        self.cycle_rank() == 0
    }

    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.is_connected()
    }

    /// Smallest id of the form `{prefix}{k}` not yet used.
    pub fn fresh_id(&self, prefix: &str) -> String {
        (0..)
            .map(|k| format!("{prefix}{k}"))
            .find(|s| !self.index.contains_key(s))
            .expect("unbounded search")
    }

    /// Vertex indices sorted by natural id order.
    pub fn sorted_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| natural_cmp(&self.vertices[a].id, &self.vertices[b].id));
        idx
    }

    /// Induced subgraph on the complement of `removed`; arrows on removed
    /// vertices are dropped. The result may be disconnected.
    pub fn without(&self, removed: &BTreeSet<usize>) -> PlumbingGraph {
        let mut map = vec![usize::MAX; self.len()];
        let mut vs = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !removed.contains(&i) {
                map[i] = vs.len();
                vs.push(v.clone());
            }
        }
        let es = self
            .edges
            .iter()
            .filter(|(a, b)| map[*a] != usize::MAX && map[*b] != usize::MAX)
            .map(|&(a, b)| (map[a], map[b]))
            .collect();
        let ar = self
            .arrows
            .iter()
            .filter(|(a, _)| map[*a] != usize::MAX)
            .map(|(a, l)| (map[*a], l.clone()))
            .collect();
        PlumbingGraph::from_indexed(vs, es, ar, true).expect("induced subgraph is valid")
    }

    /// Same graph with vertex storage order permuted: new position i holds old vertex perm[i].
    pub fn permuted(&self, perm: &[usize]) -> PlumbingGraph {
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let vs = perm.iter().map(|&p| self.vertices[p].clone()).collect();
        let es = self.edges.iter().map(|&(a, b)| (inv[a], inv[b])).collect();
        let ar = self.arrows.iter().map(|(a, l)| (inv[*a], l.clone())).collect();
        PlumbingGraph::from_indexed(vs, es, ar, self.intermediate).expect("permutation is valid")
    }

    /// Same graph with ids replaced positionally.
    pub fn with_ids(&self, ids: Vec<String>) -> Result<PlumbingGraph> {
        if ids.len() != self.len() {
            return Err(Error::InvalidArgument("id list has the wrong length".into()));
        }
        let vs = self
            .vertices
            .iter()
            .zip(ids)
            .map(|(v, id)| Vertex { id, weight: v.weight })
            .collect();
        PlumbingGraph::from_indexed(vs, self.edges.clone(), self.arrows.clone(), self.intermediate)
    }

    /// Orientation reversal: every weight negated.
    pub fn negated(&self) -> PlumbingGraph {
        let vs = self.vertices.iter().map(|v| Vertex { id: v.id.clone(), weight: -v.weight }).collect();
        PlumbingGraph::from_indexed(vs, self.edges.clone(), self.arrows.clone(), self.intermediate)
            .expect("same structure")
    }

    pub(crate) fn into_parts(self) -> (Vec<Vertex>, Vec<(usize, usize)>, Vec<(usize, String)>) {
        (self.vertices, self.edges, self.arrows)
    }

    pub fn intersection_matrix(&self) -> IntegerMatrix {
        let n = self.len();
        let mut m = IntegerMatrix::zeros(n);
        for (i, v) in self.vertices.iter().enumerate() {
            m.set(i, i, BigInt::from(v.weight));
        }
        for &(a, b) in &self.edges {
            let x: BigInt = m.get(a, b) + 1;
            m.set(a, b, x.clone());
            m.set(b, a, x);
        }
        m
    }

    /// Exact determinant; leaf elimination on forests, Bareiss otherwise.
    pub fn determinant(&self) -> BigInt {
        if self.is_forest() {
            tree::forest_determinant(&self.weights(), &self.adj)
        } else {
            self.intersection_matrix().determinant()
        }
    }

    /// Determinant through the dense matrix, independent of tree shape.
    pub fn determinant_dense(&self) -> BigInt {
        self.intersection_matrix().determinant()
    }

    /// (positive, negative, zero) eigenvalue counts.
    pub fn inertia(&self) -> (usize, usize, usize) {
        if self.is_forest() {
            tree::forest_inertia(&self.weights(), &self.adj)
        } else {
            self.intersection_matrix().inertia()
        }
    }

    /// Exact solution of M x = rhs, or None when M is singular.
    pub fn solve(&self, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
        if self.is_forest() {
            if let Some(x) = tree::forest_solve(&self.weights(), &self.adj, rhs) {
                return Some(x);
            }
        }
        self.intersection_matrix().solve_rational(rhs)
    }

    /// K² + #vertices, where K is the characteristic class with
    /// K.E_v = -E_v² - 2; None for degenerate forms.
    pub fn canonical_square_plus_rank(&self) -> Option<BigRational> {
        let rhs: Vec<BigRational> =
            self.vertices.iter().map(|v| BigRational::from_integer(BigInt::from(-v.weight - 2))).collect();
        let k = self.solve(&rhs)?;
        let k2: BigRational = k.iter().zip(&rhs).map(|(a, b)| a * b).sum();
        Some(k2 + BigRational::from_integer(BigInt::from(self.len())))
    }

    pub fn signature(&self) -> i64 {
        let (p, n, _) = self.inertia();
        p as i64 - n as i64
    }

    pub fn is_negative_definite(&self) -> bool {
        self.inertia().1 == self.len()
    }

    pub fn h1_order(&self) -> BigInt {
        self.determinant().abs()
    }

    pub fn is_homology_sphere(&self) -> bool {
        self.is_tree() && self.determinant().abs().is_one()
    }

    /// Every vertex of valence at most two has weight at most -2.
    pub fn is_absolutely_minimal(&self) -> bool {
        (0..self.len()).all(|i| self.valence(i) > 2 || self.weight(i) <= -2)
    }

    /// Weight- and arrow-aware canonical encoding of a tree, rooted at the
    /// centroid (the smaller encoding wins when there are two centroids).
    pub fn canonical_form(&self) -> Result<Vec<u8>> {
        if !self.is_tree() {
            return Err(Error::NotATree);
        }
        if self.is_empty() {
            return Ok(b"()".to_vec());
        }
        let labels: Vec<String> = (0..self.len())
            .map(|i| {
                let mut ls: Vec<&str> = self
                    .arrows
                    .iter()
                    .filter(|(a, _)| *a == i)
                    .map(|(_, l)| l.as_str())
                    .collect();
                ls.sort_unstable();
                let mut s = self.weight(i).to_string();
                for l in ls {
                    s.push_str(&format!("[{}:{}]", l.len(), l));
                }
                s
            })
            .collect();
        centroids(&self.adj)
            .into_iter()
            .map(|c| encode_rooted(&self.adj, &labels, c))
            .min()
            .ok_or(Error::NotATree)
    }
}

fn encode_rooted(adj: &[Vec<usize>], labels: &[String], root: usize) -> Vec<u8> {
    let (order, parent) = tree::rooted_order(adj, root, None);
    let mut enc: Vec<Option<Vec<u8>>> = vec![None; adj.len()];
    for v in order {
        let mut kids: Vec<Vec<u8>> = adj[v]
            .iter()
            .filter(|&&u| parent[u] == v)
            .map(|&u| enc[u].take().expect("post-order"))
            .collect();
        kids.sort_unstable();
        let mut s = Vec::new();
        s.push(b'(');
        s.extend_from_slice(labels[v].as_bytes());
        for k in kids {
            s.extend(k);
        }
        s.push(b')');
        enc[v] = Some(s);
    }
    enc[root].take().expect("root encoded")
}

/// One or two centroids of a tree.
pub(crate) fn centroids(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    let (order, parent) = tree::rooted_order(adj, 0, None);
    let mut size = vec![1usize; n];
    for &v in &order {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    let heaviest = |v: usize| {
        let mut m = n - size[v];
        for &u in &adj[v] {
            if parent[u] == v {
                m = m.max(size[u]);
            }
        }
        m
    };
    let best = (0..n).map(heaviest).min().unwrap_or(0);
    (0..n).filter(|&v| heaviest(v) == best).collect()
}

/// Compare ids so that embedded digit runs order numerically (`v2 < v10`).
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return a.cmp(b),
            (None, _) => return Ordering::Less,
            (_, None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let lx = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let ly = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let tx = trim_zeros(&x[..lx]);
                let ty = trim_zeros(&y[..ly]);
                let ord = tx.len().cmp(&ty.len()).then_with(|| tx.cmp(ty));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[lx..];
                y = &y[ly..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn trim_zeros(s: &[u8]) -> &[u8] {
    let k = s.iter().take_while(|&&c| c == b'0').count();
    &s[k..]
}

/// Incremental construction by id.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<(String, String)>,
    arrows: Vec<Arrow>,
}

impl GraphBuilder {
    pub fn vertex(mut self, id: &str, weight: i64) -> Self {
        self.vertices.push(Vertex::new(id, weight));
        self
    }

    pub fn edge(mut self, a: &str, b: &str) -> Self {
        self.edges.push((a.to_owned(), b.to_owned()));
        self
    }

    pub fn arrow(mut self, at: &str, label: &str) -> Self {
        self.arrows.push(Arrow::new(at, label));
        self
    }

    pub fn build(self) -> Result<PlumbingGraph> {
        PlumbingGraph::new(self.vertices, self.edges, self.arrows)
    }

    pub fn build_intermediate(self) -> Result<PlumbingGraph> {
        PlumbingGraph::new_intermediate(self.vertices, self.edges, self.arrows)
    }
}

/// Invariant bundle for one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub det: BigInt,
    pub h1_order: BigInt,
    pub signature: i64,
    pub is_zhs: bool,
    pub mu_bar: Option<i64>,
    pub rokhlin: Option<u8>,
    pub casson: Option<ExactRational>,
    pub d: Option<i64>,
    pub dbar: Option<i64>,
    pub dunder: Option<i64>,
}
