//! Wu classes, the Neumann-Siebenmann invariant, Rokhlin, torus-knot
//! Alexander polynomials and two routes to the Casson invariant.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::contfrac::ExactRational;
use crate::graded_roots::{self, GradedRoot};
use crate::graph_core::{InvariantReport, PlumbingGraph};
use crate::seifert_splice::{seifert_data, BrieskornTriple};
use crate::{Error, Result};

/// Characteristic 0/1 vector w with M w = diag(M) mod 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WuClass {
    bits: Vec<bool>,
}

impl WuClass {
    pub fn coefficients(&self) -> &[bool] {
        &self.bits
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)
    }
}

fn require_zhs(g: &PlumbingGraph) -> Result<()> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let d = g.determinant();
    if !d.abs().is_one() {
        return Err(Error::NotHomologySphere(d));
    }
    Ok(())
}

/// Solve M w = diag(M) over GF(2). Rows are bit-packed; column n holds the
/// right-hand side.
fn solve_gf2(g: &PlumbingGraph) -> Option<Vec<bool>> {
    let n = g.len();
    let words = (n + 1).div_ceil(64);
    let mut rows: Vec<Vec<u64>> = vec![vec![0; words]; n];
    let flip = |row: &mut Vec<u64>, j: usize| row[j / 64] ^= 1 << (j % 64);
    for (i, row) in rows.iter_mut().enumerate() {
        if g.weight(i).rem_euclid(2) == 1 {
            flip(row, i);
            flip(row, n);
        }
        for &u in g.neighbors(i) {
            flip(row, u);
        }
    }
    let bit = |row: &[u64], j: usize| row[j / 64] >> (j % 64) & 1 == 1;
    for c in 0..n {
        let p = (c..n).find(|&i| bit(&rows[i], c))?;
        rows.swap(c, p);
        let pivot = rows[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != c && bit(row, c) {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
    }
    Some((0..n).map(|i| bit(&rows[i], n)).collect())
}

pub fn wu_class(g: &PlumbingGraph) -> Result<WuClass> {
    require_zhs(g)?;
    let bits = solve_gf2(g).ok_or_else(|| Error::Internal("odd determinant but singular mod 2".into()))?;
    Ok(WuClass { bits })
}

/// w.M.w for a 0/1 vector.
fn wu_square(g: &PlumbingGraph, w: &WuClass) -> i64 {
    let on = w.coefficients();
    let diag: i64 = w.support().map(|i| g.weight(i)).sum();
    let inner = g.edge_indices().iter().filter(|&&(a, b)| on[a] && on[b]).count() as i64;
    diag + 2 * inner
}

/// μ̄ = (σ - w.M.w) / 8.
pub fn mu_bar(g: &PlumbingGraph) -> Result<i64> {
    let w = wu_class(g)?;
    let num = g.signature() - wu_square(g, &w);
    if num % 8 != 0 {
        return Err(Error::Internal(format!("sigma - w^2 = {num} is not divisible by 8")));
    }
    Ok(num / 8)
}

pub fn rokhlin(g: &PlumbingGraph) -> Result<u8> {
    Ok(mu_bar(g)?.rem_euclid(2) as u8)
}

/// Finite sum of c_k t^k with integer k.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut p = LaurentPolynomial::default();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: i64, c: BigInt) {
        let e = self.terms.entry(k).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coefficient(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(k, c)| self.coefficient(-k) == *c)
    }

    pub fn shift(&self, by: i64) -> Self {
        LaurentPolynomial { terms: self.terms.iter().map(|(k, c)| (k + by, c.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = LaurentPolynomial::default();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    /// Exact quotient, or None if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dlo, dhi) = (d.min_degree()?, d.max_degree()?);
        let lead = d.coefficient(dhi);
        let mut rem = self.clone();
        let mut q = LaurentPolynomial::default();
        while let Some(top) = rem.max_degree() {
            if top - dhi < rem.min_degree()? - dlo {
                return None;
            }
            let c = rem.coefficient(top);
            if !c.is_multiple_of(&lead) {
                return None;
            }
            let f = c / &lead;
            for (k, x) in &d.terms {
                rem.add_term(k + top - dhi, -(x * &f));
            }
            q.add_term(top - dhi, f);
        }
        Some(q)
    }

    /// Second derivative at t = 1: sum of c_k k (k - 1).
    pub fn second_derivative_at_1(&self) -> BigInt {
        self.terms.iter().map(|(k, c)| c * BigInt::from(*k) * BigInt::from(k - 1)).sum()
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            write!(f, "{}t^{}", c.abs(), k)?;
        }
        Ok(())
    }
}

fn binomial_minus_one(k: i64) -> LaurentPolynomial {
    LaurentPolynomial::from_terms([(k, BigInt::one()), (0, -BigInt::one())])
}

/// Symmetrized Alexander polynomial of T(p,q).
pub fn alexander_torus(p: i64, q: i64) -> Result<LaurentPolynomial> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::InvalidArgument(format!("T({p},{q}) needs coprime p, q >= 2")));
    }
    let num = binomial_minus_one(p * q).mul(&binomial_minus_one(1));
    let den = binomial_minus_one(p).mul(&binomial_minus_one(q));
    let d = num.div_exact(&den).ok_or_else(|| Error::Internal("torus knot quotient is not exact".into()))?;
    let top = d.max_degree().unwrap_or(0);
    Ok(d.shift(-top / 2))
}

pub fn second_derivative_at_1(p: &LaurentPolynomial) -> BigInt {
    p.second_derivative_at_1()
}

/// Closed form (p²-1)(q²-1)/12 of Δ''(1) for T(p,q).
pub fn torus_second_derivative_closed(p: i64, q: i64) -> i64 {
    (p * p - 1) * (q * q - 1) / 12
}

/// λ(S³_{1/m}(T(p,q))) = (m/2) Δ''(1).
pub fn casson_surgery(p: i64, q: i64, m: i64) -> Result<ExactRational> {
    if m == 0 {
        return Err(Error::InvalidArgument("surgery coefficient 1/0 is not allowed".into()));
    }
    let dd = alexander_torus(p, q)?.second_derivative_at_1();
    ExactRational::new(dd * m, 2)
}

/// Signature of the Milnor fiber of x^p + y^q + z^r by direct enumeration.
pub fn milnor_signature(t: BrieskornTriple) -> i64 {
    let [p, q, r] = t.as_array();
    let big = p * q * r;
    let (mut plus, mut minus) = (0i64, 0i64);
    for i in 1..p {
        for j in 1..q {
            for k in 1..r {
                // i/p + j/q + k/r scaled by pqr; never an exact multiple of pqr
                let s = i * q * r + j * p * r + k * p * q;
                if s < big || s > 2 * big {
                    plus += 1;
                } else {
                    minus += 1;
                }
            }
        }
    }
    plus - minus
}

/// λ(Σ(p,q,r)) = σ/8.
pub fn casson_brieskorn(t: BrieskornTriple) -> Result<i64> {
    let s = milnor_signature(t);
    if s % 8 != 0 {
        return Err(Error::Internal(format!("Milnor signature {s} is not divisible by 8")));
    }
    Ok(s / 8)
}

/// Brieskorn triple of a three-legged Seifert homology sphere, with +1 when
/// the graph is the negative-definite orientation and -1 for the reverse.
pub fn brieskorn_of(g: &PlumbingGraph) -> Option<(BrieskornTriple, i64)> {
    [(1, g.clone()), (-1, g.negated())].into_iter().find_map(|(orient, h)| {
        let s = seifert_data(&h).ok()?;
        if s.legs.len() != 3 {
            return None;
        }
        let m = s.multiplicities();
        let t = BrieskornTriple::new(m[0], m[1], m[2]).ok()?;
        let scaled = s.orbifold_euler() * ExactRational::from_integer(t.product());
        (scaled.to_integer()?.to_i64()? == -1).then_some((t, orient))
    })
}

/// Largest pqr for which the report computes graded-root data.
pub const REPORT_TAU_LIMIT: i64 = 5_000_000;

/// Invariant bundle; optional fields are filled when their preconditions hold.
pub fn report(g: &PlumbingGraph) -> InvariantReport {
    let det = g.determinant();
    let h1_order = det.abs();
    let is_zhs = g.is_tree() && h1_order.is_one();
    let mu = if is_zhs { mu_bar(g).ok() } else { None };
    let mut out = InvariantReport {
        det,
        h1_order,
        signature: g.signature(),
        is_zhs,
        mu_bar: mu,
        rokhlin: mu.map(|m| m.rem_euclid(2) as u8),
        casson: None,
        d: None,
        dbar: None,
        dunder: None,
    };
    if let Some((t, orient)) = brieskorn_of(g) {
        out.casson = casson_brieskorn(t).ok().map(|l| ExactRational::from_integer(orient * l));
        if t.product() <= REPORT_TAU_LIMIT {
            if let Ok(root) = graded_roots::tau_sequence(t).map(|s| graded_roots::graded_root(&s)) {
                fill_d(&mut out, &root, orient);
            }
        }
    }
    out
}

fn fill_d(out: &mut InvariantReport, root: &GradedRoot, orient: i64) {
    let d = graded_roots::d_invariant(root);
    if let Ok((dbar, dunder)) = graded_roots::involutive_ds(root) {
        if orient == 1 {
            (out.d, out.dbar, out.dunder) = (Some(d), Some(dbar), Some(dunder));
        } else {
            // reversing orientation negates d and swaps the involutive pair
            (out.d, out.dbar, out.dunder) = (Some(-d), Some(-dunder), Some(-dbar));
        }
    }
}
