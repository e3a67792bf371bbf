#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Signed;
use plumbcalc_core::calculus::{absorb_zero_chain, blow_down, blow_up_signed, reduce, splice_diagram, Site};
use plumbcalc_core::invariants::mu_bar;
use plumbcalc_core::seifert_splice::{brieskorn_plumbing, BrieskornTriple};
use plumbcalc_core::{PlumbingGraph, Vertex};

/// Choices drawn from a fixed stream, cycling when exhausted.
pub struct Choices<'a> {
    xs: &'a [u32],
    i: usize,
}

impl<'a> Choices<'a> {
    pub fn new(xs: &'a [u32]) -> Self {
        Choices { xs, i: 0 }
    }

    pub fn pick(&mut self, n: usize) -> usize {
        let x = self.xs[self.i % self.xs.len()] as usize ^ (self.i / self.xs.len());
        self.i += 1;
        x % n.max(1)
    }
}

/// Random tree with the given weights: vertex i > 0 hangs off an earlier one.
pub fn random_tree(weights: &[i64], parents: &[usize]) -> PlumbingGraph {
    let edges = (1..weights.len()).map(|i| (parents[i - 1] % i, i)).collect();
    PlumbingGraph::from_weights(weights, edges).unwrap()
}

pub fn base_spheres() -> Vec<PlumbingGraph> {
    let mut out = vec![PlumbingGraph::chain(&[-1]), PlumbingGraph::chain(&[1])];
    for (p, q, r) in [(2, 3, 5), (2, 3, 7), (2, 3, 11), (2, 5, 7), (3, 4, 5), (2, 5, 9), (3, 5, 7), (2, 7, 9)] {
        let g = brieskorn_plumbing(BrieskornTriple::new(p, q, r).unwrap());
        if g.len() <= 15 {
            out.push(g);
        }
    }
    out
}

/// Inverse of absorb_zero_chain: split v into v - 0 - u, moving some
/// neighbors to u.
pub fn split_vertex(g: &PlumbingGraph, v: usize, keep: i64, mask: u32) -> PlumbingGraph {
    let mut vs: Vec<Vertex> = g.vertices().to_vec();
    let w = vs[v].weight;
    vs[v].weight = keep;
    let z = vs.len();
    vs.push(Vertex::new(g.fresh_id("z"), 0));
    let u = vs.len();
    vs.push(Vertex::new(g.fresh_id("u"), w - keep));
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut k = 0;
    for &(a, b) in g.edge_indices() {
        let (a, b) = if a == v || b == v {
            k += 1;
            let moved = mask >> (k % 32) & 1 == 1;
            let other = if a == v { b } else { a };
            (if moved { u } else { v }, other)
        } else {
            (a, b)
        };
        edges.push((a, b));
    }
    edges.push((v, z));
    edges.push((z, u));
    let ids: Vec<(String, i64)> = vs.iter().map(|x| (x.id.clone(), x.weight)).collect();
    let edge_ids = edges.iter().map(|&(a, b)| (ids[a].0.clone(), ids[b].0.clone())).collect();
    PlumbingGraph::new(vs, edge_ids, g.arrows().collect()).unwrap()
}

fn diagram_key(g: &PlumbingGraph) -> Result<String, String> {
    splice_diagram(g).map(|d| d.normalized().canonical_form()).map_err(|e| format!("{e} on {g:?}"))
}

/// One random move applied to g, or None when the chosen move does not apply.
pub fn random_move(g: &PlumbingGraph, c: &mut Choices) -> Option<(String, PlumbingGraph)> {
    let n = g.len();
    if n == 0 {
        return None;
    }
    let v = c.pick(n);
    let id = g.vertex(v).id.clone();
    let grow = n < 15;
    match c.pick(5) {
        0 if grow => {
            let sign = if c.pick(2) == 0 { -1 } else { 1 };
            Some((format!("blow_up {id} {sign}"), blow_up_signed(g, &Site::Vertex(id), sign).ok()?))
        }
        1 if grow && g.edge_count() > 0 => {
            let (a, b) = g.edges().nth(c.pick(g.edge_count()))?;
            let sign = if c.pick(2) == 0 { -1 } else { 1 };
            let site = Site::Edge(a.to_string(), b.to_string());
            Some((format!("blow_up {a}-{b} {sign}"), blow_up_signed(g, &site, sign).ok()?))
        }
        2 if grow => {
            let keep = c.pick(7) as i64 - 3;
            let mask = c.pick(1 << 16) as u32;
            Some((format!("split {id}"), split_vertex(g, v, keep, mask)))
        }
        3 => Some((format!("absorb {id}"), absorb_zero_chain(g, &id).ok()?)),
        _ => {
            let target = (0..n).find(|&i| {
                let w = g.weight(i);
                (w == 1 || w == -1) && g.valence(i) <= 2
            })?;
            let tid = g.vertex(target).id.clone();
            Some((format!("blow_down {tid}"), blow_down(g, &tid).ok()?))
        }
    }
}

/// Apply `steps` random moves to a base sphere, checking |det|, μ̄ and the
/// normalized splice diagram after every move, then reduce idempotence.
pub fn fuzz_sequence(choices: &[u32], steps: usize) -> Result<usize, String> {
    let mut c = Choices::new(choices);
    let bases = base_spheres();
    let mut g = bases[c.pick(bases.len())].clone();
    let det = g.determinant().abs();
    let mu = mu_bar(&g).map_err(|e| e.to_string())?;
    let key = diagram_key(&g)?;
    let mut applied = 0;
    let mut log = Vec::new();
    for _ in 0..steps * 4 {
        if applied == steps {
            break;
        }
        let Some((name, h)) = random_move(&g, &mut c) else { continue };
        log.push(name);
        if h.determinant().abs() != det {
            return Err(format!("|det| changed after {log:?}"));
        }
        if det == BigInt::from(1) {
            let m = mu_bar(&h).map_err(|e| e.to_string())?;
            if m != mu {
                return Err(format!("mu_bar {mu} -> {m} after {log:?}"));
            }
            if h.is_tree() && !h.is_empty() {
                let k = diagram_key(&h)?;
                if k != key {
                    return Err(format!("splice diagram {key} -> {k} after {log:?}"));
                }
            }
        }
        g = h;
        applied += 1;
    }
    let r = reduce(&g);
    if reduce(&r) != r {
        return Err(format!("reduce not idempotent on {g:?}"));
    }
    Ok(applied)
}
