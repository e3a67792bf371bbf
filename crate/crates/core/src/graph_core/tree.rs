//! Linear-time recursions on weighted forests: leaf-elimination determinants
//! and Jacobs-Trevisan inertia.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ring::Ring;

/// Post-order of the component containing `root`, skipping `blocked`.
/// Returns (order, parent).
pub(crate) fn rooted_order(
    adj: &[Vec<usize>],
    root: usize,
    blocked: Option<usize>,
) -> (Vec<usize>, Vec<usize>) {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut pre = Vec::new();
    let mut stack = vec![root];
    seen[root] = true;
    if let Some(b) = blocked {
        seen[b] = true;
    }
    while let Some(v) = stack.pop() {
        pre.push(v);
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                stack.push(u);
            }
        }
    }
    pre.reverse();
    (pre, parent)
}

/// Subtree determinants A_v for the component of `root` (with `blocked`
/// removed), rooted at `root`. A leaf has A = w; an internal vertex has
/// A_v = w_v * prod A_c - sum_c B_c * prod_{c' != c} A_c' with B_c = prod of
/// the grandchildren's A.
fn subtree_dets_generic<T: Ring>(
    weights: &[i64],
    adj: &[Vec<usize>],
    root: usize,
    blocked: Option<usize>,
) -> Option<(Vec<usize>, Vec<Option<T>>)> {
    let (order, parent) = rooted_order(adj, root, blocked);
    let n = adj.len();
    let mut a: Vec<Option<T>> = vec![None; n];
    let mut b: Vec<Option<T>> = vec![None; n];
    let mut kids: Vec<usize> = Vec::new();
    for &v in &order {
        kids.clear();
        kids.extend(
            adj[v]
                .iter()
                .copied()
                .filter(|&u| parent[u] == v && Some(u) != blocked),
        );
        let (av, bv) = combine(weights[v], &kids, &a, &b)?;
        a[v] = Some(av);
        b[v] = Some(bv);
    }
    Some((order, a))
}

/// One step of the leaf-elimination recursion.
fn combine<T: Ring>(w: i64, kids: &[usize], a: &[Option<T>], b: &[Option<T>]) -> Option<(T, T)> {
    let one = T::from_i64(1);
    let k = kids.len();
    let mut prefix = Vec::with_capacity(k + 1);
    prefix.push(one.clone());
    for &c in kids {
        let next = prefix.last()?.mul(a[c].as_ref()?)?;
        prefix.push(next);
    }
    let mut suffix = one.clone();
    let mut sum = T::from_i64(0);
    for (i, &c) in kids.iter().enumerate().rev() {
        let others = prefix[i].mul(&suffix)?;
        sum = sum.add(&b[c].as_ref()?.mul(&others)?)?;
        suffix = suffix.mul(a[c].as_ref()?)?;
    }
    let prod = prefix.pop()?;
    let av = T::from_i64(w).mul(&prod)?.sub(&sum)?;
    Some((av, prod))
}

/// Determinant of the tridiagonal-like intersection form of a forest.
fn forest_det_generic<T: Ring>(weights: &[i64], adj: &[Vec<usize>]) -> Option<T> {
    let n = adj.len();
    let mut done = vec![false; n];
    let mut det = T::from_i64(1);
    for r in 0..n {
        if done[r] {
            continue;
        }
        let (order, a) = subtree_dets_generic::<T>(weights, adj, r, None)?;
        for v in order {
            done[v] = true;
        }
        det = det.mul(a[r].as_ref()?)?;
    }
    Some(det)
}

pub(crate) fn forest_determinant(weights: &[i64], adj: &[Vec<usize>]) -> BigInt {
    match forest_det_generic::<i128>(weights, adj) {
        Some(d) => d.into_big(),
        None => forest_det_generic::<BigInt>(weights, adj).expect("bigint never overflows"),
    }
}

/// Determinants of the components of `adj \ {center}`, one per neighbor of
/// `center`, in adjacency order.
pub(crate) fn far_side_dets(weights: &[i64], adj: &[Vec<usize>], center: usize) -> Vec<BigInt> {
    adj[center]
        .iter()
        .map(|&u| {
            let fast = subtree_dets_generic::<i128>(weights, adj, u, Some(center))
                .and_then(|(_, a)| a[u].clone());
            match fast {
                Some(d) => d.into_big(),
                None => subtree_dets_generic::<BigInt>(weights, adj, u, Some(center))
                    .and_then(|(_, a)| a[u].clone())
                    .expect("bigint never overflows"),
            }
        })
        .collect()
}

/// (positive, negative, zero) eigenvalue counts of a forest's intersection
/// form, by Jacobs-Trevisan diagonalization carried out on unreduced
/// fractions num/den.
fn forest_inertia_generic<T: Ring>(weights: &[i64], adj: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    let n = adj.len();
    let mut visited = vec![false; n];
    let mut num: Vec<Option<T>> = vec![None; n];
    let mut den: Vec<Option<T>> = vec![None; n];
    let mut sign = vec![Ordering::Equal; n];
    let mut cut = vec![false; n];
    let mut kids: Vec<usize> = Vec::new();
    for r in 0..n {
        if visited[r] {
            continue;
        }
        let (order, parent) = rooted_order(adj, r, None);
        for &v in &order {
            visited[v] = true;
            kids.clear();
            kids.extend(adj[v].iter().copied().filter(|&u| parent[u] == v && !cut[u]));
            if let Some(&z) = kids.iter().find(|&&c| num[c].as_ref().is_some_and(|x| x.is_zero())) {
                sign[z] = Ordering::Greater;
                sign[v] = Ordering::Less;
                cut[v] = true;
                continue;
            }
            let (nv, dv) = combine(weights[v], &kids, &num, &den)?;
            sign[v] = match (nv.sign(), dv.sign()) {
                (Ordering::Equal, _) => Ordering::Equal,
                (x, Ordering::Greater) => x,
                (x, _) => x.reverse(),
            };
            num[v] = Some(nv);
            den[v] = Some(dv);
        }
    }
    let pos = sign.iter().filter(|s| **s == Ordering::Greater).count();
    let neg = sign.iter().filter(|s| **s == Ordering::Less).count();
    Some((pos, neg, n - pos - neg))
}

pub(crate) fn forest_inertia(weights: &[i64], adj: &[Vec<usize>]) -> (usize, usize, usize) {
    forest_inertia_generic::<i128>(weights, adj)
        .or_else(|| forest_inertia_generic::<BigInt>(weights, adj))
        .expect("bigint never overflows")
}

/// Solve M k = rhs for a forest by eliminating leaves toward each root.
/// Returns None when a pivot vanishes.
pub(crate) fn forest_solve(weights: &[i64], adj: &[Vec<usize>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = adj.len();
    let mut a: Vec<BigRational> = vec![BigRational::zero(); n];
    let mut r: Vec<BigRational> = rhs.to_vec();
    let mut k: Vec<BigRational> = vec![BigRational::zero(); n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let (order, parent) = rooted_order(adj, root, None);
        for &v in &order {
            seen[v] = true;
            let mut av = BigRational::from_integer(BigInt::from(weights[v]));
            for &c in adj[v].iter().filter(|&&c| parent[c] == v) {
                if a[c].is_zero() {
                    return None;
                }
                av -= a[c].recip();
                let t = &r[c] / &a[c];
                r[v] -= t;
            }
            a[v] = av;
        }
        if a[root].is_zero() {
            return None;
        }
        for &v in order.iter().rev() {
            let up = if parent[v] == usize::MAX { BigRational::zero() } else { k[parent[v]].clone() };
            k[v] = (&r[v] - up) / &a[v];
        }
    }
    Some(k)
}
