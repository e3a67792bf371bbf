//! Parallel per-n checks with results kept in n-order.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed};
use plumbcalc_core::calculus::{equivalent, Verdict};
use plumbcalc_core::constructions::{family_z, Family};
use plumbcalc_core::contfrac::ExactRational;
use plumbcalc_core::graded_roots::{d_invariant, graded_root, involutive_ds, monotone_subroot, tau_sequence};
use plumbcalc_core::invariants::{casson_brieskorn, mu_bar, rokhlin};
use plumbcalc_core::seifert_splice::{sigma1, sigma1_triple, sigma2, sigma2_triple, theorem_splice};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::output::verdict_name;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Theorem2,
    Mubar,
    Antisymmetry,
    Families,
    Dinv,
    Casson,
}

impl Check {
    pub const NAMES: [&'static str; 6] = ["theorem2", "mubar", "antisymmetry", "families", "dinv", "casson"];
}

impl FromStr for Check {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "theorem2" => Check::Theorem2,
            "mubar" => Check::Mubar,
            "antisymmetry" => Check::Antisymmetry,
            "families" => Check::Families,
            "dinv" => Check::Dinv,
            "casson" => Check::Casson,
            _ => return Err(CliError::Input(format!("unknown check {s:?}; expected one of {:?}", Check::NAMES))),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: i64,
    pub det: Option<String>,
    pub mu_bar: Option<i64>,
    pub d: Option<i64>,
    pub verdict: Option<String>,
    pub detail: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub check: Check,
    pub from: i64,
    pub to: i64,
    pub rows: Vec<SweepRow>,
    pub pass: bool,
}

impl SweepReport {
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:>4}  {:>6}  {:>6}  {:>4}  {:<10}  {:<4}  detail", "n", "det", "mu_bar", "d", "verdict", "ok");
        let opt = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:>4}  {:>6}  {:>6}  {:>4}  {:<10}  {:<4}  {}",
                r.n,
                r.det.as_deref().unwrap_or("-"),
                opt(r.mu_bar),
                opt(r.d),
                r.verdict.as_deref().unwrap_or("-"),
                if r.pass { "yes" } else { "NO" },
                r.detail
            );
        }
        let _ = writeln!(s, "{}", if self.pass { "PASS" } else { "FAIL" });
        s
    }
}

pub fn sweep(check: Check, from: i64, to: i64) -> Result<SweepReport, CliError> {
    if from < 1 || to < from {
        return Err(CliError::Input(format!("bad range {from}..={to}; need 1 <= from <= to")));
    }
    let rows: Vec<SweepRow> = (from..=to)
        .into_par_iter()
        .map(|n| row(check, n).unwrap_or_else(|e| SweepRow { n, detail: e.to_string(), ..SweepRow::default() }))
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    Ok(SweepReport { check, from, to, rows, pass })
}

fn row(check: Check, n: i64) -> Result<SweepRow, CliError> {
    let mut r = SweepRow { n, ..SweepRow::default() };
    match check {
        Check::Theorem2 => {
            let (z, s) = (family_z(n)?, theorem_splice(n));
            r.det = Some(s.determinant().to_string());
            r.mu_bar = Some(mu_bar(&s)?);
            let v = equivalent(&z, &s)?;
            r.verdict = Some(verdict_name(v.tag).to_string());
            r.pass = v.tag == Verdict::Equivalent;
            r.detail = format!("Z({n}) vs Σ({},{},{}) ⋈ Σ({},{},{})", n + 1, n + 2, n * n + 3 * n + 1, n + 1, n + 2, n * n + 3 * n + 3);
        }
        Check::Mubar => {
            let g = sigma2(n);
            let m = mu_bar(&g)?;
            let want = if n % 2 == 1 { (n * n + 4 * n + 3) / 8 } else { (n * n + 2 * n) / 8 };
            r.det = Some(g.determinant().to_string());
            r.mu_bar = Some(m);
            r.pass = m == want;
            r.detail = format!("closed form {want}");
        }
        Check::Antisymmetry => {
            let (a, b) = (mu_bar(&sigma1(n))?, mu_bar(&sigma2(n))?);
            let s = mu_bar(&theorem_splice(n))?;
            r.mu_bar = Some(s);
            r.pass = a == -b && s == 0;
            r.detail = format!("sigma1 {a}, sigma2 {b}, splice {s}");
        }
        Check::Families => {
            let mut bad = Vec::new();
            for f in Family::ALL {
                let g = f.build(n)?;
                let ok = g.is_tree()
                    && g.determinant().abs().is_one()
                    && g.is_absolutely_minimal()
                    && mu_bar(&g)? == 0
                    && rokhlin(&g)? == 0;
                if !ok {
                    bad.push(f.to_string());
                }
            }
            r.pass = bad.is_empty();
            r.detail = if bad.is_empty() { "X Y Z W ok".into() } else { format!("failing: {}", bad.join(" ")) };
        }
        Check::Dinv => {
            let mut notes = Vec::new();
            let mut pass = true;
            for (name, t, g) in [("sigma1", sigma1_triple(n), sigma1(n)), ("sigma2", sigma2_triple(n), sigma2(n))] {
                let root = graded_root(&tau_sequence(t)?);
                let d = d_invariant(&root);
                let (dbar, dunder) = involutive_ds(&root)?;
                let mu = mu_bar(&g)?;
                pass &= dunder == -2 * mu;
                if name == "sigma2" {
                    pass &= d == 0 && dbar == d;
                    r.d = Some(d);
                    r.mu_bar = Some(mu);
                } else {
                    pass &= monotone_subroot(&root)?.is_trivial();
                }
                notes.push(format!("{name}: d {d}, dbar {dbar}, dunder {dunder}"));
            }
            r.pass = pass;
            r.detail = notes.join("; ");
        }
        Check::Casson => {
            let (p, q) = (n + 1, n + 2);
            let l1 = casson_brieskorn(sigma1_triple(n))?;
            let l2 = casson_brieskorn(sigma2_triple(n))?;
            let want = ExactRational::new(-(p * p - 1) * (q * q - 1), 12)?;
            r.pass = ExactRational::from(l1 + l2) == want;
            r.detail = format!("{l1} + {l2} vs {want}");
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass_in_order() {
        for c in Check::NAMES {
            let rep = sweep(c.parse().unwrap(), 1, 3).unwrap();
            assert!(rep.pass, "{c}: {}", rep.table());
            assert_eq!(rep.rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![1, 2, 3]);
        }
        assert!(sweep(Check::Mubar, 0, 3).is_err());
        assert!("bogus".parse::<Check>().is_err());
    }
}
