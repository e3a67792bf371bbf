mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rayon::prelude::*;

use plumbcalc_core::calculus::{equivalent, reduce, splice_diagram, SpliceDiagram, Verdict};
use plumbcalc_core::constructions::{family_z, Family};
use plumbcalc_core::contfrac::{cf_eval, hj_expand, ExactRational};
use plumbcalc_core::graded_roots::{d_invariant, graded_root, involutive_ds, monotone_subroot, tau_sequence};
use plumbcalc_core::invariants::{casson_brieskorn, casson_surgery, mu_bar, rokhlin};
use plumbcalc_core::seifert_splice::{
    brieskorn_plumbing, sigma1, sigma1_triple, sigma2, sigma2_triple, theorem_splice, BrieskornTriple,
};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Outcome {
    for n in 1..=30i64 {
        let want = if n % 2 == 1 { (n * n + 4 * n + 3) / 8 } else { (n * n + 2 * n) / 8 };
        let got = mu_bar(&sigma2(n)).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("n={n}: mu_bar {got}, closed form {want}"))?;
    }
    Ok(())
}

fn c2() -> Outcome {
    for n in 1..=30i64 {
        let a = mu_bar(&sigma1(n)).map_err(|e| e.to_string())?;
        let b = mu_bar(&sigma2(n)).map_err(|e| e.to_string())?;
        ensure(a == -b, || format!("n={n}: {a} != -{b}"))?;
        let s = mu_bar(&theorem_splice(n)).map_err(|e| e.to_string())?;
        ensure(s == 0, || format!("n={n}: splice mu_bar {s}"))?;
    }
    Ok(())
}

fn expected_theorem_diagram(n: i64) -> SpliceDiagram {
    let g = theorem_splice(n);
    splice_diagram(&g).expect("splice is a homology sphere")
}

fn diagram_nodes(d: &SpliceDiagram) -> Vec<Vec<i64>> {
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

fn c3() -> Outcome {
    for n in 1..=10i64 {
        let z = family_z(n).map_err(|e| e.to_string())?;
        let s = theorem_splice(n);
        let v = equivalent(&z, &s).map_err(|e| e.to_string())?;
        ensure(v.tag == Verdict::Equivalent, || format!("n={n}: verdict {:?}", v))?;
        let (a, b, c1, c2) = (n + 1, n + 2, n * n + 3 * n + 1, n * n + 3 * n + 3);
        let want = vec![vec![a, b, c1], vec![a, b, c2]];
        let dz = splice_diagram(&z).map_err(|e| e.to_string())?.normalized();
        ensure(diagram_nodes(&dz) == want, || format!("n={n}: Z diagram {:?}", diagram_nodes(&dz)))?;
        ensure(dz.is_isomorphic(&expected_theorem_diagram(n)), || format!("n={n}: diagrams differ"))?;
        let e = &dz.edges[0];
        let mut near = [i64::try_from(&e.weight_at_a).unwrap(), i64::try_from(&e.weight_at_b).unwrap()];
        near.sort();
        ensure(near == [c1, c2], || format!("n={n}: edge weights {near:?}"))?;
    }
    Ok(())
}

fn c4() -> Outcome {
    let g = theorem_splice(1);
    let w = |id: &str| g.index_of(id).map(|i| g.weight(i));
    ensure(w("x") == Some(-2) && w("y") == Some(-1), || format!("inserted weights {:?} {:?}", w("x"), w("y")))?;
    ensure(g.determinant().abs().is_one(), || format!("det {}", g.determinant()))?;
    let d = splice_diagram(&g).map_err(|e| e.to_string())?;
    let e8 = d.nodes.iter().position(|n| n.id == "a.c").ok_or("no E8 node")?;
    let e = &d.edges[0];
    let far = if e.a == e8 { &e.weight_at_a } else { &e.weight_at_b };
    ensure(*far == BigInt::from(5), || format!("far-side weight {far}"))
}

fn c5() -> Outcome {
    for n in 1..=15i64 {
        for (which, t, g) in [("sigma1", sigma1_triple(n), sigma1(n)), ("sigma2", sigma2_triple(n), sigma2(n))] {
            let tau = tau_sequence(t).map_err(|e| e.to_string())?;
            let root = graded_root(&tau);
            let (dbar, dunder) = involutive_ds(&root).map_err(|e| e.to_string())?;
            let mu = mu_bar(&g).map_err(|e| e.to_string())?;
            ensure(dunder == -2 * mu, || format!("{which}({n}): dunder {dunder}, mu_bar {mu}"))?;
            if which == "sigma2" {
                let d = d_invariant(&root);
                ensure(d == 0, || format!("sigma2({n}): d = {d}"))?;
                ensure(dbar == d, || format!("sigma2({n}): dbar {dbar} != d {d}"))?;
            } else {
                let m = monotone_subroot(&root).map_err(|e| e.to_string())?;
                ensure(m.is_trivial(), || format!("sigma1({n}): monotone subroot not trivial"))?;
            }
        }
    }
    Ok(())
}

fn c6() -> Outcome {
    for n in 1..=15i64 {
        let (p, q) = (n + 1, n + 2);
        let l1 = casson_brieskorn(sigma1_triple(n)).map_err(|e| e.to_string())?;
        let l2 = casson_brieskorn(sigma2_triple(n)).map_err(|e| e.to_string())?;
        let want = ExactRational::new(-(p * p - 1) * (q * q - 1), 12).map_err(|e| e.to_string())?;
        ensure(ExactRational::from(l1 + l2) == want, || format!("n={n}: {l1} + {l2} != {want}"))?;
        for (t, g) in [(sigma1_triple(n), sigma1(n)), (sigma2_triple(n), sigma2(n))] {
            let l = casson_brieskorn(t).map_err(|e| e.to_string())?;
            let m = mu_bar(&g).map_err(|e| e.to_string())?;
            ensure((l - m).rem_euclid(2) == 0, || format!("{t}: lambda {l}, mu_bar {m}"))?;
        }
    }
    for p in 2..=12i64 {
        for q in p + 1..=12 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let t = BrieskornTriple::new(p, q, p * q - 1).map_err(|e| e.to_string())?;
            let l = casson_brieskorn(t).map_err(|e| e.to_string())?;
            let s = casson_surgery(p, q, -1).map_err(|e| e.to_string())?;
            ensure(ExactRational::from(l) == s, || format!("{t}: milnor route {l}, surgery route {s}"))?;
            let m = mu_bar(&brieskorn_plumbing(t)).map_err(|e| e.to_string())?;
            ensure((l - m).rem_euclid(2) == 0, || format!("{t}: lambda {l}, mu_bar {m}"))?;
        }
    }
    Ok(())
}

fn c7() -> Outcome {
    let hj = |p: i64, q: i64| hj_expand(p, q).map(|e| e.coefficients().to_vec()).map_err(|e| e.to_string());
    for n in 1..=200i64 {
        ensure(hj(n + 1, 1)? == vec![n + 1], || format!("({}) / 1", n + 1))?;
        ensure(hj(n + 1, n)? == vec![2; n as usize], || format!("({}) / {n}", n + 1))?;
        ensure(hj(7 * n + 2, 3 * n + 1)? == vec![3, 2, 2, n + 1], || format!("n={n}: 3n+1 branch"))?;
        let mut want = vec![2, 5];
        want.extend(vec![2; n as usize - 1]);
        ensure(hj(7 * n + 2, 4 * n + 1)? == want, || format!("n={n}: 4n+1 branch"))?;
        // three followed by n - 1 twos
        let mut want = vec![3];
        want.extend(vec![2; n as usize - 1]);
        ensure(hj(2 * n + 1, n)? == want, || format!("n={n}: (2n+1)/n"))?;
        for p in [(n + 1, 1), (n + 1, n), (7 * n + 2, 3 * n + 1), (7 * n + 2, 4 * n + 1), (2 * n + 1, n)] {
            let e = hj_expand(p.0, p.1).map_err(|e| e.to_string())?;
            let back = cf_eval(&e).map_err(|e| e.to_string())?;
            ensure(back == ExactRational::new(p.0, p.1).unwrap(), || format!("round trip {p:?}"))?;
        }
    }
    Ok(())
}

fn c8() -> Outcome {
    for f in Family::ALL {
        for n in 1..=10 {
            let g = f.build(n).map_err(|e| format!("{f}({n}): {e}"))?;
            ensure(g.is_tree(), || format!("{f}({n}) not a tree"))?;
            ensure(g.determinant().abs().is_one(), || format!("{f}({n}) det {}", g.determinant()))?;
            ensure(g.is_absolutely_minimal(), || format!("{f}({n}) not absolutely minimal"))?;
            let m = mu_bar(&g).map_err(|e| e.to_string())?;
            let r = rokhlin(&g).map_err(|e| e.to_string())?;
            ensure(m == 0 && r == 0, || format!("{f}({n}): mu_bar {m}, rokhlin {r}"))?;
        }
    }
    Ok(())
}

fn c9() -> Outcome {
    let config = Config { cases: 500, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = proptest::collection::vec(any::<u32>(), 64);
    runner
        .run(&strategy, |choices| {
            common::fuzz_sequence(&choices, 10)
                .map(|_| ())
                .map_err(TestCaseError::fail)
        })
        .map_err(|e| e.to_string())?;
    for f in Family::ALL {
        let g = f.build(3).map_err(|e| e.to_string())?;
        let r = reduce(&g);
        ensure(reduce(&r) == r, || format!("reduce not idempotent on {f}(3)"))?;
    }
    Ok(())
}

fn c10() -> Outcome {
    let config = Config { cases: 1000, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = tree_strategy();
    runner
        .run(&strategy, |g| {
            if g.determinant() == g.determinant_dense() {
                Ok(())
            } else {
                Err(TestCaseError::fail(format!("{g:?}")))
            }
        })
        .map_err(|e| e.to_string())?;

    const LIMIT: i64 = 100_000;
    let mut pairs = Vec::new();
    for p in 2..LIMIT {
        if p * (p + 1) * (p + 2) > LIMIT {
            break;
        }
        for q in p + 1..LIMIT {
            if p * q * (q + 1) > LIMIT {
                break;
            }
            if num_integer::gcd(p, q) == 1 {
                pairs.push((p, q));
            }
        }
    }
    let bad: Vec<String> = pairs
        .par_iter()
        .flat_map_iter(|&(p, q)| {
            (q + 1..=LIMIT / (p * q)).filter_map(move |r| {
                let t = BrieskornTriple::new(p, q, r).ok()?;
                let g = brieskorn_plumbing(t);
                let ok = g.is_negative_definite() && g.determinant().abs().is_one();
                (!ok).then(|| t.to_string())
            })
        })
        .collect();
    let count: usize = pairs
        .iter()
        .map(|&(p, q)| (q + 1..=LIMIT / (p * q)).filter(|&r| num_integer::gcd(p * q, r) == 1).count())
        .sum();
    ensure(bad.is_empty(), || format!("{} failing triples, first {:?}", bad.len(), bad.first()))?;
    println!("    {count} coprime triples with pqr <= {LIMIT}");
    Ok(())
}

fn tree_strategy() -> impl Strategy<Value = plumbcalc_core::PlumbingGraph> {
    (1usize..=12)
        .prop_flat_map(|n| {
            (proptest::collection::vec(-8i64..=6, n), proptest::collection::vec(any::<usize>(), n.saturating_sub(1)))
        })
        .prop_map(|(w, p)| common::random_tree(&w, &p))
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 10] = [
        (1, "mu_bar closed formula for sigma2(n), n <= 30", Duration::from_secs(10), c1),
        (2, "mu_bar antisymmetry and splice additivity, n <= 30", Duration::from_secs(30), c2),
        (3, "family Z(n) equivalent to the splice, n <= 10", Duration::from_secs(60), c3),
        (4, "worked n = 1 splice anchors", Duration::from_secs(1), c4),
        (5, "d, dbar, dunder and monotone subroots, n <= 15", Duration::from_secs(300), c5),
        (6, "Casson sums, two routes and parity", Duration::from_secs(60), c6),
        (7, "continued-fraction lemma families, n <= 200", Duration::from_secs(1), c7),
        (8, "family gates X, Y, Z, W, n <= 10", Duration::from_secs(30), c8),
        (9, "move-invariance fuzzing, 500 sequences", Duration::from_secs(60), c9),
        (10, "determinant oracle and Brieskorn sweep pqr <= 1e5", Duration::from_secs(120), c10),
    ];
    let mut failed = 0;
    for (k, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = outcome.and_then(|_| {
            ensure(took <= limit, || format!("took {took:.2?}, limit {limit:?}"))
        });
        match outcome {
            Ok(()) => println!("PASS criterion {k}: {name} ({took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {k}: {name} ({took:.2?}): {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
