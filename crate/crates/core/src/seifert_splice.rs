//! Brieskorn plumbings, Seifert invariants of star-shaped graphs and the
//! splice of two graphs along singular fibers.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::contfrac::{bracket_fraction, hj_expand, ExactRational};
use crate::graph_core::{PlumbingGraph, Vertex};
use crate::{Error, Result};

/// Central weight e0 and leg pairs (alpha, omega), 0 < omega < alpha.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub e0: i64,
    pub legs: Vec<(i64, i64)>,
}

impl SeifertData {
    /// e = e0 + sum omega_i / alpha_i.
    pub fn orbifold_euler(&self) -> ExactRational {
        self.legs.iter().fold(ExactRational::from_integer(self.e0), |acc, &(a, w)| {
            acc + ExactRational::new(w, a).expect("alpha is positive")
        })
    }

    pub fn multiplicities(&self) -> Vec<i64> {
        self.legs.iter().map(|l| l.0).collect()
    }
}

/// Pairwise coprime p < q < r, all at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrieskornTriple {
    p: i64,
    q: i64,
    r: i64,
}

impl BrieskornTriple {
    /// Accepts the entries in any order.
    pub fn new(p: i64, q: i64, r: i64) -> Result<Self> {
        let mut v = [p, q, r];
        v.sort_unstable();
        if v[0] < 2 {
            return Err(Error::InvalidArgument(format!("multiplicities must be >= 2, got {v:?}")));
        }
        if v[0].gcd(&v[1]) != 1 || v[0].gcd(&v[2]) != 1 || v[1].gcd(&v[2]) != 1 {
            return Err(Error::InvalidArgument(format!("{v:?} is not pairwise coprime")));
        }
        Ok(BrieskornTriple { p: v[0], q: v[1], r: v[2] })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.p, self.q, self.r]
    }

    pub fn product(&self) -> i64 {
        self.p * self.q * self.r
    }
}

impl fmt::Display for BrieskornTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ({},{},{})", self.p, self.q, self.r)
    }
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as i64)
}

/// Seifert invariants of the negative-definite plumbing of Σ(p,q,r).
pub fn brieskorn_seifert(t: BrieskornTriple) -> SeifertData {
    let big_p = t.product() as i128;
    let legs: Vec<(i64, i64)> = t
        .as_array()
        .iter()
        .map(|&a| {
            let inv = mod_inverse(((big_p / a as i128) % a as i128) as i64, a).expect("coprime");
            (a, (-inv).rem_euclid(a))
        })
        .collect();
    // e0 = -(sum omega/alpha + 1/P), an integer
    let num: i128 = legs.iter().map(|&(a, w)| w as i128 * (big_p / a as i128)).sum::<i128>() + 1;
    debug_assert_eq!(num % big_p, 0);
    SeifertData { e0: -(num / big_p) as i64, legs }
}

/// Label of the singular fiber of multiplicity `alpha`.
pub fn fiber_label(alpha: i64) -> String {
    format!("K({alpha})")
}

/// Plumbing of a Seifert star: center `c`, leg j vertices `a{alpha}.{k}`.
/// Legs whose multiplicity appears in `marked` get an arrow at their end.
pub fn star_plumbing(s: &SeifertData, marked: &[i64]) -> Result<PlumbingGraph> {
    let mut vs = vec![Vertex::new("c", s.e0)];
    let mut es = Vec::new();
    let mut arrows = Vec::new();
    for &(a, w) in &s.legs {
        let chain = hj_expand(a, w)?;
        let mut prev = 0;
        for (k, &c) in chain.coefficients().iter().enumerate() {
            let id = format!("a{a}.{}", k + 1);
            if vs.iter().any(|v| v.id == id) {
                return Err(Error::InvalidArgument(format!("repeated multiplicity {a}")));
            }
            vs.push(Vertex::new(id, -c));
            es.push((prev, vs.len() - 1));
            prev = vs.len() - 1;
        }
        if marked.contains(&a) {
            arrows.push((prev, fiber_label(a)));
        }
    }
    PlumbingGraph::from_indexed(vs, es, arrows, false)
}

/// Canonical negative-definite plumbing of Σ(p,q,r) (no arrows).
pub fn brieskorn_plumbing(t: BrieskornTriple) -> PlumbingGraph {
    brieskorn_plumbing_marked(t, &[])
}

/// Brieskorn plumbing with arrows at the ends of the legs listed in `marked`.
pub fn brieskorn_plumbing_marked(t: BrieskornTriple, marked: &[i64]) -> PlumbingGraph {
    star_plumbing(&brieskorn_seifert(t), marked).expect("Seifert data of a triple is valid")
}

/// Seifert invariants read back from a star-shaped graph.
pub fn seifert_data(g: &PlumbingGraph) -> Result<SeifertData> {
    if !g.is_tree() || g.is_empty() {
        return Err(Error::InvalidArgument("not a star-shaped tree".into()));
    }
    let nodes: Vec<usize> = (0..g.len()).filter(|&i| g.valence(i) >= 3).collect();
    let center = match nodes.as_slice() {
        [c] => *c,
        [] => g.sorted_indices()[0],
        _ => return Err(Error::InvalidArgument("more than one vertex of valence >= 3".into())),
    };
    let mut legs = Vec::new();
    for &first in g.neighbors(center) {
        let mut chain = Vec::new();
        let (mut prev, mut cur) = (center, first);
        loop {
            chain.push(-g.weight(cur));
            match g.neighbors(cur).iter().find(|&&u| u != prev) {
                Some(&next) => (prev, cur) = (cur, next),
                None => break,
            }
        }
        let (a, w) = bracket_fraction(&chain);
        let (a, w) = (to_i64(&a)?, to_i64(&w)?);
        if !(0 < w && w < a) {
            return Err(Error::InvalidArgument(format!("leg {chain:?} is not in normal form")));
        }
        legs.push((a, w));
    }
    Ok(SeifertData { e0: g.weight(center), legs })
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::InvalidArgument(format!("{x} does not fit in 64 bits")))
}

/// Moser: the framing -1 surgery on T(p,q) is Σ(p,q,pq-1), framing +1 gives Σ(p,q,pq+1).
pub fn torus_knot_surgery(p: i64, q: i64, framing: i64) -> Result<BrieskornTriple> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::InvalidArgument(format!("T({p},{q}) needs coprime p, q >= 2")));
    }
    match framing {
        -1 => BrieskornTriple::new(p, q, p * q - 1),
        1 => BrieskornTriple::new(p, q, p * q + 1),
        _ => Err(Error::InvalidArgument(format!("framing must be +1 or -1, got {framing}"))),
    }
}

fn normalize_label(l: &str) -> String {
    l.chars().filter(|c| !matches!(c, '(' | ')') && !c.is_whitespace()).collect()
}

/// Index of the unique arrow matching `label` (`K5` and `K(5)` are the same).
pub fn find_arrow(g: &PlumbingGraph, label: &str) -> Result<usize> {
    let want = normalize_label(label);
    let hits: Vec<usize> = g
        .arrow_indices()
        .iter()
        .filter(|(_, l)| normalize_label(l) == want)
        .map(|(i, _)| *i)
        .collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        [] => Err(Error::InvalidArgument(format!("no arrow labelled {label:?}"))),
        _ => Err(Error::InvalidArgument(format!("several arrows labelled {label:?}"))),
    }
}

/// The single arrow of `g`, if there is exactly one.
pub fn only_arrow(g: &PlumbingGraph) -> Result<String> {
    match g.arrow_indices() {
        [(_, l)] => Ok(l.clone()),
        [] => Err(Error::InvalidArgument("graph carries no arrow".into())),
        _ => Err(Error::InvalidArgument("graph carries several arrows; name one".into())),
    }
}

/// Splice of g1 (arrow `label1` at vertex e_n) with g2 (arrow `label2` at
/// e_m): the disjoint union joined by e_n - X - Y - e_m with
/// X = det(g1) det(g1 - e_n) and Y = det(g2) det(g2 - e_m).
/// Vertex ids get prefixes `a.` and `b.`.
pub fn splice(g1: &PlumbingGraph, label1: &str, g2: &PlumbingGraph, label2: &str) -> Result<PlumbingGraph> {
    for g in [g1, g2] {
        if !g.is_tree() {
            return Err(Error::NotATree);
        }
        let d = g.determinant();
        if d.abs() != BigInt::from(1) {
            return Err(Error::NotHomologySphere(d));
        }
    }
    let en = find_arrow(g1, label1)?;
    let em = find_arrow(g2, label2)?;
    for (g, v) in [(g1, en), (g2, em)] {
        if g.valence(v) != 1 {
            return Err(Error::InvalidArgument(format!(
                "arrow at {:?} is not on a leg end",
                g.vertex(v).id
            )));
        }
    }
    let x = to_i64(&(g1.determinant() * g1.without(&BTreeSet::from([en])).determinant()))?;
    let y = to_i64(&(g2.determinant() * g2.without(&BTreeSet::from([em])).determinant()))?;

    let mut vs = Vec::with_capacity(g1.len() + g2.len() + 2);
    let mut es = Vec::new();
    let mut arrows = Vec::new();
    let off = g1.len();
    for (g, prefix, shift, used) in [(g1, "a.", 0, en), (g2, "b.", off, em)] {
        for v in g.vertices() {
            vs.push(Vertex::new(format!("{prefix}{}", v.id), v.weight));
        }
        es.extend(g.edge_indices().iter().map(|&(a, b)| (a + shift, b + shift)));
        arrows.extend(
            g.arrow_indices()
                .iter()
                .filter(|(a, _)| *a != used)
                .map(|(a, l)| (a + shift, l.clone())),
        );
    }
    let xi = vs.len();
    vs.push(Vertex::new("x", x));
    vs.push(Vertex::new("y", y));
    es.push((en, xi));
    es.push((xi, xi + 1));
    es.push((xi + 1, em + off));
    let out = PlumbingGraph::from_indexed(vs, es, arrows, false)?;
    if !out.is_homology_sphere() {
        return Err(Error::Internal(format!("splice has det {}", out.determinant())));
    }
    Ok(out)
}

pub fn sigma1_triple(n: i64) -> BrieskornTriple {
    BrieskornTriple::new(n + 1, n + 2, n * n + 3 * n + 1).expect("consecutive integers are coprime")
}

pub fn sigma2_triple(n: i64) -> BrieskornTriple {
    BrieskornTriple::new(n + 1, n + 2, n * n + 3 * n + 3).expect("consecutive integers are coprime")
}

/// Σ(n+1, n+2, n²+3n+1) with an arrow on the third leg.
pub fn sigma1(n: i64) -> PlumbingGraph {
    let t = sigma1_triple(n);
    brieskorn_plumbing_marked(t, &[t.r()])
}

/// Σ(n+1, n+2, n²+3n+3) with an arrow on the third leg.
pub fn sigma2(n: i64) -> PlumbingGraph {
    let t = sigma2_triple(n);
    brieskorn_plumbing_marked(t, &[t.r()])
}

/// splice(sigma1(n), sigma2(n)) along the marked fibers.
pub fn theorem_splice(n: i64) -> PlumbingGraph {
    let (a, b) = (sigma1(n), sigma2(n));
    let (la, lb) = (only_arrow(&a).expect("marked"), only_arrow(&b).expect("marked"));
    splice(&a, &la, &b, &lb).expect("both pieces are homology spheres")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::tree::far_side_dets;

    fn t(p: i64, q: i64, r: i64) -> BrieskornTriple {
        BrieskornTriple::new(p, q, r).unwrap()
    }

    #[test]
    fn e8_from_235() {
        let g = brieskorn_plumbing(t(2, 3, 5));
        assert_eq!(g.len(), 8);
        assert!(g.weights().iter().all(|&w| w == -2));
        let s = seifert_data(&g).unwrap();
        assert_eq!(s.e0, -2);
        assert_eq!(s.legs, vec![(2, 1), (3, 2), (5, 4)]);
    }

    #[test]
    fn star_237() {
        let g = brieskorn_plumbing(t(2, 3, 7));
        let mut w = g.weights();
        w.sort_unstable();
        assert_eq!(w, vec![-7, -3, -2, -1]);
        assert_eq!(seifert_data(&g).unwrap(), SeifertData { e0: -1, legs: vec![(2, 1), (3, 1), (7, 1)] });
    }

    #[test]
    fn star_3_4_13() {
        let g = brieskorn_plumbing(t(3, 4, 13));
        assert!(g.is_homology_sphere());
        assert!(g.is_negative_definite());
        let c = g.index_of("c").unwrap();
        let mut far: Vec<BigInt> = far_side_dets(&g.weights(), g.adjacency(), c).into_iter().map(|d| d.abs()).collect();
        far.sort();
        assert_eq!(far, vec![BigInt::from(3), BigInt::from(4), BigInt::from(13)]);
    }

    #[test]
    fn orbifold_euler_number() {
        for tr in [t(2, 3, 5), t(2, 3, 7), t(3, 4, 13), t(5, 7, 11)] {
            let e = brieskorn_seifert(tr).orbifold_euler();
            assert_eq!(e, ExactRational::new(-1, tr.product()).unwrap());
        }
    }

    #[test]
    fn single_vertex_chain() {
        let g = PlumbingGraph::chain(&[-1]);
        assert_eq!(seifert_data(&g).unwrap(), SeifertData { e0: -1, legs: vec![] });
        let two_nodes = PlumbingGraph::from_weights(
            &[-2, -2, -2, -2, -2, -2],
            vec![(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)],
        )
        .unwrap();
        assert!(seifert_data(&two_nodes).is_err());
    }

    #[test]
    fn triple_validation() {
        assert!(BrieskornTriple::new(2, 4, 5).is_err());
        assert!(BrieskornTriple::new(1, 3, 5).is_err());
        assert_eq!(t(7, 2, 3).as_array(), [2, 3, 7]);
    }

    #[test]
    fn moser_triples() {
        assert_eq!(torus_knot_surgery(2, 3, -1).unwrap(), t(2, 3, 5));
        assert_eq!(torus_knot_surgery(2, 3, 1).unwrap(), t(2, 3, 7));
        assert_eq!(torus_knot_surgery(3, 4, -1).unwrap(), t(3, 4, 11));
        assert!(torus_knot_surgery(2, 4, 1).is_err());
        assert!(torus_knot_surgery(2, 3, 2).is_err());
    }

    #[test]
    fn sigma_pieces() {
        let s1 = sigma1(1);
        assert_eq!(s1.len(), 8);
        let arrow = s1.arrows().next().unwrap();
        assert_eq!(arrow.label, "K(5)");
        assert_eq!(s1.valence(s1.index_of(&arrow.at).unwrap()), 1);
        let s2 = sigma2(1);
        let arrow = s2.arrows().next().unwrap();
        assert_eq!(s2.weight(s2.index_of(&arrow.at).unwrap()), -7);
        assert_eq!(seifert_data(&sigma2(2)).unwrap().multiplicities(), vec![3, 4, 13]);
    }

    #[test]
    fn worked_splice_n1() {
        let g = theorem_splice(1);
        assert_eq!(g.len(), 14);
        assert_eq!(g.weight(g.index_of("x").unwrap()), -2);
        assert_eq!(g.weight(g.index_of("y").unwrap()), -1);
        assert_eq!(g.determinant(), BigInt::from(-1));
        assert_eq!(g.arrows().count(), 0);
    }

    #[test]
    fn splice_rejections() {
        let e7 = PlumbingGraph::from_weights(&[-2; 7], vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]).unwrap();
        let s2 = sigma2(1);
        assert!(matches!(splice(&e7, "K", &s2, "K7"), Err(Error::NotHomologySphere(_))));
        let plain = brieskorn_plumbing(t(2, 3, 5));
        assert!(splice(&plain, "K5", &s2, "K7").is_err());
        let center = PlumbingGraph::builder()
            .vertex("c", -1)
            .vertex("a", -2)
            .vertex("b", -3)
            .vertex("d", -7)
            .edge("c", "a")
            .edge("c", "b")
            .edge("c", "d")
            .arrow("c", "K")
            .build()
            .unwrap();
        assert!(splice(&center, "K", &s2, "K(7)").is_err());
    }
}
