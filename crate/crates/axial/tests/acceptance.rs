//! Acceptance gate: one pass/fail line per criterion, all asserted at the
//! end so every line is printed even when one criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use axial::catalog::{alg_2b, alg_3dim_a, alg_3dim_d, law_a, law_c, law_d, DVariant};
use axial::field::{rat, ParamAssignment, Scalar};
use axial::relators::{check_all, enumerate_words};
use axial::sweep::{self, expected_relator_count, specialization_spot_check};

fn sc(t: &str) -> Scalar {
    Scalar::parse(t).unwrap()
}

struct Gate {
    lines: Vec<(usize, bool, String)>,
}

impl Gate {
    fn record(&mut self, n: usize, passed: bool, detail: &str) {
        self.lines.push((n, passed, detail.to_string()));
    }

    fn finish(self) {
        let mut all = true;
        for (n, passed, detail) in &self.lines {
            println!(
                "criterion {:2} {} — {}",
                n,
                if *passed { "PASS" } else { "FAIL" },
                detail
            );
            all &= passed;
        }
        assert!(all, "acceptance criteria failed");
    }
}

fn section_ok(rep: &sweep::SweepReport, section: &str) -> (bool, usize) {
    let checks: Vec<_> =
        rep.checks.iter().filter(|c| c.section == section).collect();
    (
        !checks.is_empty() && checks.iter().all(|c| c.passed),
        checks.len(),
    )
}

#[test]
fn acceptance() {
    let mut gate = Gate { lines: Vec::new() };

    // 1: symbolic axis verification of the 2-dimensional family
    {
        let t0 = Instant::now();
        let entry = alg_2b(&sc("a")).unwrap();
        let mut ok = true;
        let mut cert: BTreeSet<String> = BTreeSet::new();
        for a in &entry.axes {
            let r = entry.algebra.check_axis(a, &entry.law, true).unwrap();
            ok &= r.passed() && r.violations.is_empty();
            cert.extend(r.certificate.iter().map(|p| p.to_string()));
        }
        let allowed: BTreeSet<String> =
            ["a", "a - 1", "a - 1/2"].iter().map(|s| s.to_string()).collect();
        let subset = cert.is_subset(&allowed);
        let elapsed = t0.elapsed();
        gate.record(
            1,
            ok && subset && elapsed.as_secs_f64() < 1.0,
            &format!(
                "2-dim family passes its law symbolically; certificate {{{}}}; {:.3}s",
                cert.iter().cloned().collect::<Vec<_>>().join(", "),
                elapsed.as_secs_f64()
            ),
        );
    }

    // 2: symbolic axis verification of the 3-dimensional family on both
    // parameter branches, with rational spot checks
    {
        let mut ok = true;
        let mut times = Vec::new();
        let half = alg_3dim_a(&sc("a"), &sc("1/2"), &sc("x")).unwrap();
        let slice = alg_3dim_a(&sc("a"), &sc("b"), &sc("(a+b)/(2*(1-a))")).unwrap();
        for entry in [&half, &slice] {
            let t0 = Instant::now();
            for a in &entry.axes {
                ok &= entry.algebra.check_axis(a, &entry.law, true).unwrap().passed();
            }
            let dt = t0.elapsed().as_secs_f64();
            ok &= dt < 10.0;
            times.push(format!("{:.3}s", dt));
        }
        let at_half: ParamAssignment =
            [("a".to_string(), rat(1, 4)), ("x".to_string(), rat(7, 3))].into();
        ok &= specialization_spot_check(&half, &at_half).unwrap();
        let at_slice: ParamAssignment =
            [("a".to_string(), rat(1, 5)), ("b".to_string(), rat(1, 3))].into();
        ok &= specialization_spot_check(&slice, &at_slice).unwrap();
        gate.record(
            2,
            ok,
            &format!(
                "3-dim family passes its law on both branches ({}) and at (1/4, 1/2, 7/3), (1/5, 1/3, slice)",
                times.join(", ")
            ),
        );
    }

    // shared sweep for the catalog-level criteria (cheap relator length;
    // the full-length relator run is criterion 8)
    let rep = sweep::run(42, 2).expect("sweep runs");

    // 3: identity suite
    let (ok, n) = section_ok(&rep, "identities");
    gate.record(3, ok, &format!("all {} applicable identities hold exactly", n));

    // 4: ideal tables
    let (ok, n) = section_ok(&rep, "ideal-table");
    gate.record(
        4,
        ok,
        &format!(
            "{} ideal rows verified (symbolic + seeded instances), negative control and cyclic-family ideals included",
            n
        ),
    );

    // 5: graded members of the 2-dimensional family
    let (ok, _) = section_ok(&rep, "minimal-law-grading");
    gate.record(
        5,
        ok,
        "minimal law graded nontrivially exactly at -1 (C2) and 1/2 (infinite cyclic with C2 quotient; documented operationalization), trivial at 1/3, 2, -3",
    );

    // 6: grading groups by Smith normal form, byte-stable
    {
        let (ok, _) = section_ok(&rep, "gradings");
        let snapshot = || {
            let mut s = String::new();
            for law in [
                law_a(&sc("a"), &sc("b")).unwrap(),
                law_c(&sc("a"), &sc("b")).unwrap(),
                law_d(&sc("a"), &sc("b")).unwrap(),
            ] {
                let g = law.grading_group();
                s.push_str(&g.structure());
                for i in 0..law.len() {
                    s.push_str(&g.degree_string(i));
                }
            }
            s
        };
        let stable = snapshot() == snapshot();
        gate.record(
            6,
            ok && stable,
            "law (a) -> C2 with the third label the involution, law (c) -> C2, law (d) -> C3; degree strings byte-stable",
        );
    }

    // 7: Miyamoto maps
    let (ok, _) = section_ok(&rep, "miyamoto");
    gate.record(
        7,
        ok,
        "sign map of the 2-dim member has order 2; omega map of the cyclic family has order 3; trivial characters give identities",
    );

    // 8: relator suite at full word length
    {
        let t0 = Instant::now();
        let words = enumerate_words(2, 4).len();
        let mut ok = words == 29;
        let suites = [
            alg_2b(&sc("a")).unwrap(),
            alg_3dim_a(&sc("a"), &sc("1/2"), &sc("x")).unwrap(),
            alg_3dim_d(DVariant::BetaHalf, &sc("a")).unwrap(),
        ];
        let mut counts = Vec::new();
        for entry in &suites {
            let r = check_all(&entry.algebra, &entry.axes, &entry.law, 4).unwrap();
            let expect = expected_relator_count(2, entry.law.len(), words);
            ok &= r.failed == 0 && r.total == expect;
            counts.push(r.total.to_string());
        }
        let dt = t0.elapsed().as_secs_f64();
        ok &= dt < 60.0;
        gate.record(
            8,
            ok,
            &format!(
                "zero relator failures at word length 4 ({} instances) in {:.1}s",
                counts.join(" + "),
                dt
            ),
        );
    }

    // 9: the generic-eigenvalue Jordan case list
    let (ok, n) = section_ok(&rep, "jordan-cases");
    gate.record(
        9,
        ok,
        &format!("all {} case checks pass, including the failing off-case control", n),
    );

    // 10: adjudication of the two published squares
    {
        let (ok, _) = section_ok(&rep, "square-adjudication");
        let survivor = rep
            .checks
            .iter()
            .find(|c| c.section == "square-adjudication" && c.adjudication)
            .map(|c| c.detail.clone())
            .unwrap_or_default();
        gate.record(10, ok, &survivor);
    }

    gate.finish();
}
