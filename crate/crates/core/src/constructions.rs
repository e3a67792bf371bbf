//! Edge expansion, cycle cutting and the boundary families X, Y, Z, W.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;

use crate::calculus::contract_minus_ones;
use crate::contfrac::hj_expand;
use crate::graph_core::{PlumbingGraph, Vertex};
use crate::{Error, Result};

/// Coprime positive pair (a, b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CutData {
    a: i64,
    b: i64,
}

impl CutData {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 1 || b < 1 {
            return Err(Error::InvalidArgument(format!("cut data ({a},{b}) must be positive")));
        }
        if a.gcd(&b) != 1 {
            return Err(Error::InvalidArgument(format!("cut data ({a},{b}) is not coprime")));
        }
        Ok(CutData { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }
}

/// Which endpoint of the edge receives the Δ chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    DeltaAtFirst,
    DeltaAtSecond,
}

/// Replace edge `k`-`l` by Δ - E0 - Δ'. Returns the graph and the id of E0.
pub fn expand_edge_with_e0(
    g: &PlumbingGraph,
    k: &str,
    l: &str,
    cut: CutData,
    orientation: Orientation,
) -> Result<(PlumbingGraph, String)> {
    let (k, l) = match orientation {
        Orientation::DeltaAtFirst => (k, l),
        Orientation::DeltaAtSecond => (l, k),
    };
    let (vk, vl) = (g.require(k)?, g.require(l)?);
    if g.edge_multiplicity(vk, vl) == 0 {
        return Err(Error::InvalidMove(format!("no edge {k}-{l}")));
    }
    let (a, b) = (cut.a, cut.b);
    let left = hj_expand(a + b, b)?;
    let right = hj_expand(a + b, a)?;
    let (left, right) = (left.coefficients(), right.coefficients());

    let mut taken: BTreeSet<String> = g.vertices().iter().map(|v| v.id.clone()).collect();
    let mut fresh = |prefix: &str| {
        let id = (0..).map(|i| format!("{prefix}{i}")).find(|s| !taken.contains(s)).expect("unbounded");
        taken.insert(id.clone());
        id
    };
    let mut chain: Vec<(String, i64)> = Vec::new();
    for &c in &left[1..] {
        chain.push((fresh("d"), -c));
    }
    let e0 = fresh("E0.");
    chain.push((e0.clone(), -1));
    for &c in right[1..].iter().rev() {
        chain.push((fresh("p"), -c));
    }

    let intermediate = g.is_intermediate();
    let (mut vs, mut es, ar) = g.clone().into_parts();
    let pos = es
        .iter()
        .position(|&(p, q)| (p, q) == (vk, vl) || (p, q) == (vl, vk))
        .expect("edge exists");
    es.remove(pos);
    vs[vk].weight -= left[0] - 1;
    vs[vl].weight -= right[0] - 1;
    let mut prev = vk;
    for (id, w) in chain {
        let i = vs.len();
        vs.push(Vertex::new(id, w));
        es.push((prev, i));
        prev = i;
    }
    es.push((prev, vl));
    Ok((PlumbingGraph::from_indexed(vs, es, ar, intermediate)?, e0))
}

pub fn expand_edge(g: &PlumbingGraph, k: &str, l: &str, cut: CutData, orientation: Orientation) -> Result<PlumbingGraph> {
    expand_edge_with_e0(g, k, l, cut, orientation).map(|x| x.0)
}

/// Expand an edge lying on a cycle and delete E0.
pub fn cut_cycle(g: &PlumbingGraph, k: &str, l: &str, cut: CutData, orientation: Orientation) -> Result<PlumbingGraph> {
    let (vk, vl) = (g.require(k)?, g.require(l)?);
    if g.edge_multiplicity(vk, vl) == 0 {
        return Err(Error::InvalidMove(format!("no edge {k}-{l}")));
    }
    if !on_cycle(g, vk, vl) {
        return Err(Error::InvalidMove(format!("edge {k}-{l} is not on a cycle")));
    }
    let (h, e0) = expand_edge_with_e0(g, k, l, cut, orientation)?;
    let e = h.require(&e0)?;
    let (mut vs, es, ar) = h.clone().into_parts();
    vs.remove(e);
    let fix = |i: usize| if i > e { i - 1 } else { i };
    let es = es.into_iter().filter(|&(p, q)| p != e && q != e).map(|(p, q)| (fix(p), fix(q))).collect();
    let ar = ar.into_iter().map(|(p, s)| (fix(p), s)).collect();
    PlumbingGraph::from_indexed(vs, es, ar, g.is_intermediate())
}

fn on_cycle(g: &PlumbingGraph, a: usize, b: usize) -> bool {
    if g.edge_multiplicity(a, b) > 1 {
        return true;
    }
    // reachable from a to b without the edge
    let mut seen = alloc::vec![false; g.len()];
    let mut stack = alloc::vec![a];
    seen[a] = true;
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if (v == a && u == b) || (v == b && u == a) || seen[u] {
                continue;
            }
            if u == b {
                return true;
            }
            seen[u] = true;
            stack.push(u);
        }
    }
    false
}

fn base(vertices: &[(&str, i64)], edges: &[(&str, &str)]) -> PlumbingGraph {
    let mut b = PlumbingGraph::builder();
    for &(id, w) in vertices {
        b = b.vertex(id, w);
    }
    for &(x, y) in edges {
        b = b.edge(x, y);
    }
    b.build_intermediate().expect("fixture is well formed")
}

fn finish(g: PlumbingGraph) -> Result<PlumbingGraph> {
    let (vs, es, ar) = contract_minus_ones(&g).into_parts();
    PlumbingGraph::from_indexed(vs, es, ar, false)
}

/// Four-line construction with blow-up count `k` and cutting data ab, cd.
pub fn family_gm(k: i64, ab: CutData, cd: CutData) -> Result<PlumbingGraph> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("k = {k} must be positive")));
    }
    let (a, b, c, d) = (ab.a as i128, ab.b as i128, cd.a as i128, cd.b as i128);
    let cond = a * c - a * d - b * c;
    if cond != 1 && cond != -1 {
        return Err(Error::InvalidArgument(format!("ac - ad - bc = {cond}, not ±1")));
    }
    let g = base(
        &[("E", -1), ("l1", 0), ("l2", 0), ("l3", 0), ("l4", 1)],
        &[("E", "l1"), ("E", "l2"), ("E", "l3"), ("l4", "l1"), ("l4", "l2"), ("l4", "l3")],
    );
    let g = cut_cycle(&g, "l1", "l4", ab, Orientation::DeltaAtFirst)?;
    let g = cut_cycle(&g, "l2", "l4", cd, Orientation::DeltaAtFirst)?;
    let (mut vs, mut es, ar) = g.into_parts();
    let l3 = vs.iter().position(|v| v.id == "l3").expect("fixture vertex");
    vs[l3].weight -= 1;
    let mut prev = l3;
    for i in 1..k {
        vs.push(Vertex::new(format!("t{i}"), -2));
        es.push((prev, vs.len() - 1));
        prev = vs.len() - 1;
    }
    finish(PlumbingGraph::from_indexed(vs, es, ar, true)?)
}

pub fn family_z(n: i64) -> Result<PlumbingGraph> {
    check_n(n)?;
    family_gm(1, CutData::new(n + 2, 1)?, CutData::new(n + 1, n)?)
}

pub fn family_x(n: i64) -> Result<PlumbingGraph> {
    check_n(n)?;
    let g = base(
        &[("L1", 0), ("L2", 0), ("L3", 0), ("L4", 0), ("L5", -1), ("L6", -1), ("L7", -1)],
        &[
            ("L6", "L3"),
            ("L6", "L4"),
            ("L6", "L5"),
            ("L7", "L1"),
            ("L7", "L2"),
            ("L7", "L5"),
            ("L3", "L1"),
            ("L3", "L2"),
            ("L4", "L1"),
            ("L4", "L2"),
        ],
    );
    let one = CutData::new(1, 1)?;
    let mut g = g;
    for (p, q) in [("L2", "L3"), ("L2", "L7"), ("L5", "L6")] {
        g = cut_cycle(&g, p, q, one, Orientation::DeltaAtFirst)?;
    }
    let g = cut_cycle(&g, "L1", "L4", CutData::new(4 * n + 1, 3 * n + 1)?, Orientation::DeltaAtFirst)?;
    finish(g)
}

fn zaidenberg(n: i64, second: CutData) -> Result<PlumbingGraph> {
    check_n(n)?;
    let g = base(
        &[
            ("c", 0),
            ("e0", -2),
            ("e1", -1),
            ("l1", 0),
            ("E1", -3),
            ("E2", -2),
            ("E3", -1),
            ("F1", -3),
            ("F2", -2),
            ("F3", -1),
        ],
        &[
            ("c", "E3"),
            ("c", "F3"),
            ("c", "l1"),
            ("c", "l1"),
            ("l1", "e0"),
            ("e0", "F2"),
            ("e1", "F1"),
            ("F1", "F3"),
            ("F2", "F3"),
            ("E1", "E3"),
            ("E2", "E3"),
        ],
    );
    let g = cut_cycle(&g, "c", "l1", CutData::new(1, 1)?, Orientation::DeltaAtFirst)?;
    let g = cut_cycle(&g, "c", "l1", second, Orientation::DeltaAtFirst)?;
    finish(g)
}

pub fn family_y(n: i64) -> Result<PlumbingGraph> {
    zaidenberg(n, CutData::new(n + 1, n)?)
}

pub fn family_w(n: i64) -> Result<PlumbingGraph> {
    zaidenberg(n, CutData::new(n, n + 1)?)
}

fn check_n(n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 1")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X,
    Y,
    Z,
    W,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::X, Family::Y, Family::Z, Family::W];

    pub fn build(self, n: i64) -> Result<PlumbingGraph> {
        match self {
            Family::X => family_x(n),
            Family::Y => family_y(n),
            Family::Z => family_z(n),
            Family::W => family_w(n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::X => "X",
            Family::Y => "Y",
            Family::Z => "Z",
            Family::W => "W",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Family::X),
            "Y" | "y" => Ok(Family::Y),
            "Z" | "z" => Ok(Family::Z),
            "W" | "w" => Ok(Family::W),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HandleCounts {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
}

impl HandleCounts {
    /// Fusion number of the ribbon knot behind the Poénaru handle picture.
    pub fn fusion_number(&self) -> u64 {
        self.h1.saturating_sub(1)
    }
}

pub fn expected_handle_counts(family: Family, n: u64) -> Result<HandleCounts> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".to_string()));
    }
    let h = match family {
        Family::X => 1,
        Family::Y | Family::W => 2,
        Family::Z => n + 1,
    };
    Ok(HandleCounts { h0: 1, h1: h, h2: h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::splice_diagram;
    use crate::invariants::{mu_bar, rokhlin};
    use num_bigint::BigInt;
    use num_traits::Signed;

    fn node_sets(g: &PlumbingGraph) -> Vec<Vec<i64>> {
        let d = splice_diagram(g).unwrap().normalized();
        let mut out: Vec<Vec<i64>> = (0..d.nodes.len())
            .map(|i| {
                let mut w: Vec<i64> = d.weights_at(i).iter().map(|x| i64::try_from(x).unwrap()).collect();
                w.sort();
                w
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn expand_examples() {
        let g = PlumbingGraph::chain(&[-2, -3]);
        let one = CutData::new(1, 1).unwrap();
        let h = expand_edge(&g, "v0", "v1", one, Orientation::DeltaAtFirst).unwrap();
        assert_eq!(h.canonical_form().unwrap(), PlumbingGraph::chain(&[-3, -1, -4]).canonical_form().unwrap());
        let h = expand_edge(&g, "v0", "v1", CutData::new(2, 1).unwrap(), Orientation::DeltaAtFirst).unwrap();
        assert_eq!(h.canonical_form().unwrap(), PlumbingGraph::chain(&[-4, -1, -2, -4]).canonical_form().unwrap());
        let (h, e0) = expand_edge_with_e0(&g, "v0", "v1", CutData::new(2, 1).unwrap(), Orientation::DeltaAtFirst).unwrap();
        let path = ["v0", e0.as_str()];
        assert_eq!(h.edge_multiplicity(h.index_of(path[0]).unwrap(), h.index_of(path[1]).unwrap()), 1);
        assert!(CutData::new(2, 4).is_err());
        assert!(expand_edge(&g, "v0", "v9", one, Orientation::DeltaAtFirst).is_err());
    }

    #[test]
    fn expand_n_one() {
        for n in 1..8 {
            let g = PlumbingGraph::chain(&[-5, -7]);
            let h = expand_edge(&g, "v0", "v1", CutData::new(n, 1).unwrap(), Orientation::DeltaAtFirst).unwrap();
            let mut want = alloc::vec![-5 - n, -1];
            want.extend(core::iter::repeat(-2).take(n as usize - 1));
            want.push(-8);
            assert_eq!(h.canonical_form().unwrap(), PlumbingGraph::chain(&want).canonical_form().unwrap());
        }
    }

    #[test]
    fn expand_then_blow_down_keeps_det() {
        let g = PlumbingGraph::chain(&[-2, -3, -5]);
        for (a, b) in [(1, 1), (2, 1), (3, 2), (5, 3)] {
            let h = expand_edge(&g, "v0", "v1", CutData::new(a, b).unwrap(), Orientation::DeltaAtSecond).unwrap();
            assert_eq!(h.determinant().abs(), g.determinant().abs());
        }
    }

    #[test]
    fn cut_triangle() {
        let g = PlumbingGraph::builder()
            .vertex("a", 0)
            .vertex("b", 0)
            .vertex("c", 1)
            .edge("a", "b")
            .edge("b", "c")
            .edge("c", "a")
            .build_intermediate()
            .unwrap();
        let h = cut_cycle(&g, "a", "b", CutData::new(1, 1).unwrap(), Orientation::DeltaAtFirst).unwrap();
        assert!(h.is_tree());
        assert_eq!(h.cycle_rank(), g.cycle_rank() - 1);
        assert_eq!(h.canonical_form().unwrap(), PlumbingGraph::chain(&[-1, 1, -1]).canonical_form().unwrap());
        assert!(cut_cycle(&h, "a", "c", CutData::new(1, 1).unwrap(), Orientation::DeltaAtFirst).is_err());
    }

    #[test]
    fn gm_admissibility() {
        let g = family_gm(1, CutData::new(3, 1).unwrap(), CutData::new(2, 1).unwrap()).unwrap();
        assert!(g.is_tree());
        assert_eq!(g.determinant().abs(), BigInt::from(1));
        assert!(family_gm(1, CutData::new(2, 1).unwrap(), CutData::new(2, 1).unwrap()).is_err());
        for n in 1..50i64 {
            assert_eq!((n + 2) * (n + 1) - (n + 2) * n - (n + 1), 1);
        }
    }

    #[test]
    fn z_family() {
        for n in 1..=10 {
            let g = family_z(n).unwrap();
            assert!(g.is_homology_sphere(), "n={n}");
            assert!(g.is_absolutely_minimal(), "n={n}");
            let (a, b) = (n + 1, n + 2);
            assert_eq!(node_sets(&g), alloc::vec![alloc::vec![a, b, n * n + 3 * n + 1], alloc::vec![a, b, n * n + 3 * n + 3]]);
        }
    }

    #[test]
    fn other_families() {
        assert_eq!(node_sets(&family_x(1).unwrap()), alloc::vec![alloc::vec![2, 5, 17], alloc::vec![3, 4, 7]]);
        assert_eq!(node_sets(&family_y(1).unwrap()), alloc::vec![alloc::vec![2, 3, 5], alloc::vec![2, 3, 19]]);
        // the middle node is a cable piece: its weight-1 direction is an edge
        assert_eq!(
            node_sets(&family_w(1).unwrap()),
            alloc::vec![alloc::vec![1, 2, 3], alloc::vec![2, 3, 37], alloc::vec![2, 7, 9]]
        );
        for f in Family::ALL {
            for n in 1..=4 {
                let g = f.build(n).unwrap();
                assert!(g.is_tree() && g.is_homology_sphere() && g.is_absolutely_minimal(), "{f}({n})");
                assert_eq!(mu_bar(&g).unwrap(), 0, "{f}({n})");
                assert_eq!(rokhlin(&g).unwrap(), 0);
            }
        }
        for n in 1..30i64 {
            assert_eq!(4 * (3 * n + 1) - 3 * (4 * n + 1), 1);
        }
    }

    #[test]
    fn handle_counts() {
        let hc = |f, n| expected_handle_counts(f, n).unwrap();
        assert_eq!(hc(Family::X, 3), HandleCounts { h0: 1, h1: 1, h2: 1 });
        assert_eq!(hc(Family::Z, 4), HandleCounts { h0: 1, h1: 5, h2: 5 });
        assert_eq!(hc(Family::W, 2), HandleCounts { h0: 1, h1: 2, h2: 2 });
        assert_eq!(hc(Family::Y, 7).fusion_number(), 1);
        assert!(expected_handle_counts(Family::X, 0).is_err());
        assert_eq!("z".parse::<Family>().unwrap(), Family::Z);
    }
}
