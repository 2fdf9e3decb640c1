//! Full verification sweep: every catalog invariant, the identity suite,
//! the ideal tables, grading and Miyamoto checks, the relator suite and
//! the adjudication of the two published candidate squares.
//!
//! Checks are split into reproductions (must pass) and adjudications
//! (documented discrepancies between two published forms; the sweep
//! reports which form survives, and the check passes when the outcome is
//! definitive).

use crate::algebra::{AlgebraError, AlgebraMap};
use crate::catalog::{
    alg_1a, alg_2b, alg_3dim_a, alg_3dim_d, alg_3dim_d_alt_square, identity_suite,
    jordan_generic, law_a, law_c, law_d, verify_d_ideals, verify_entry,
    verify_ideal_table, CatalogEntry, DVariant,
};
use crate::field::{ParamAssignment, Scalar};
use crate::fusion::FusionLaw;
use crate::linalg::{Matrix, Vect};
use crate::relators::check_all;

fn sc(t: &str) -> Scalar {
    Scalar::parse(t).expect("static scalar expression")
}

#[derive(Clone, Debug)]
pub struct Check {
    pub section: String,
    pub name: String,
    pub passed: bool,
    /// True for documented open-question adjudications; these never mask a
    /// reproduction regression and are reported separately.
    pub adjudication: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub checks: Vec<Check>,
}

impl SweepReport {
    /// All reproduction checks passed and all adjudications were
    /// definitive.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, section: &str, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            section: section.into(),
            name: name.into(),
            passed,
            adjudication: false,
            detail,
        });
    }

    fn push_adj(&mut self, section: &str, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            section: section.into(),
            name: name.into(),
            passed,
            adjudication: true,
            detail,
        });
    }
}

fn entry_set() -> Vec<CatalogEntry> {
    vec![
        alg_1a(),
        alg_2b(&sc("a")).unwrap(),
        alg_3dim_a(&sc("a"), &sc("1/2"), &sc("x")).unwrap(),
        alg_3dim_a(&sc("a"), &sc("b"), &sc("(a+b)/(2*(1-a))")).unwrap(),
        alg_3dim_d(DVariant::BetaHalf, &sc("a")).unwrap(),
        alg_3dim_d(DVariant::AlphaHalf, &sc("b")).unwrap(),
    ]
}

pub fn run(seed: u64, max_len: usize) -> Result<SweepReport, AlgebraError> {
    let mut rep = SweepReport::default();
    entries(&mut rep)?;
    identities(&mut rep)?;
    ideals(&mut rep)?;
    gradings(&mut rep);
    minimal_law_gradings(&mut rep)?;
    miyamoto(&mut rep)?;
    relators(&mut rep, max_len)?;
    jordan_cases(&mut rep)?;
    adjudicate_square(&mut rep)?;
    let _ = seed;
    ideal_table(&mut rep, seed);
    Ok(rep)
}

fn entries(rep: &mut SweepReport) -> Result<(), AlgebraError> {
    for entry in entry_set() {
        let r = verify_entry(&entry)?;
        rep.push(
            "entries",
            &entry.name,
            r.passed(),
            format!(
                "axes pass: {}; generates: {}; swap automorphism: {}",
                r.axis_reports.iter().all(|a| a.passed()),
                r.generates,
                r.swap_automorphism
            ),
        );
    }
    Ok(())
}

fn identities(rep: &mut SweepReport) -> Result<(), AlgebraError> {
    for entry in [
        alg_3dim_a(&sc("a"), &sc("1/2"), &sc("x")).unwrap(),
        alg_3dim_a(&sc("a"), &sc("b"), &sc("(a+b)/(2*(1-a))")).unwrap(),
        alg_3dim_d(DVariant::BetaHalf, &sc("a")).unwrap(),
    ] {
        for r in identity_suite(&entry)? {
            if !r.applicable {
                continue;
            }
            rep.push(
                "identities",
                &format!("{} in {}", r.name, entry.name),
                r.holds,
                if r.holds {
                    "residual 0".into()
                } else {
                    format!("residual {}", r.residual)
                },
            );
        }
    }
    Ok(())
}

fn ideal_table(rep: &mut SweepReport, seed: u64) {
    for r in verify_ideal_table(seed) {
        rep.push("ideal-table", &r.description, r.passed(), r.detail.clone());
    }
}

fn ideals(rep: &mut SweepReport) -> Result<(), AlgebraError> {
    for r in verify_d_ideals()? {
        rep.push("ideal-table", &r.description, r.passed(), r.detail.clone());
    }
    Ok(())
}

fn grading_check(rep: &mut SweepReport, name: &str, law: &FusionLaw, expect: &str) {
    let g = law.grading_group();
    let degs: Vec<String> = (0..law.len()).map(|i| g.degree_string(i)).collect();
    rep.push(
        "gradings",
        name,
        g.structure() == expect,
        format!("group {}; degrees {}", g.structure(), degs.join(" ")),
    );
}

fn gradings(rep: &mut SweepReport) {
    let a = sc("a");
    let b = sc("b");
    let la = law_a(&a, &b).unwrap();
    let g = la.grading_group();
    rep.push(
        "gradings",
        "law_a -> C2 with the third label the involution",
        g.structure() == "C2"
            && g.label_map[0] == vec![0]
            && g.label_map[1] == vec![0]
            && g.label_map[2] == vec![1],
        format!(
            "group {}; degrees ({}, {}, {})",
            g.structure(),
            g.degree_string(0),
            g.degree_string(1),
            g.degree_string(2)
        ),
    );
    let lc = law_c(&a, &b).unwrap();
    let gc = lc.grading_group();
    rep.push(
        "gradings",
        "law_c -> C2 with both non-unit labels nontrivial and equal",
        gc.structure() == "C2"
            && gc.label_map[1] == vec![1]
            && gc.label_map[2] == vec![1],
        format!("group {}", gc.structure()),
    );
    grading_check(rep, "law_d -> C3", &law_d(&a, &b).unwrap(), "C3");
}

fn minimal_law_gradings(rep: &mut SweepReport) -> Result<(), AlgebraError> {
    // the symbolic coefficient of the 1-component of v*v in 2B(t) is
    // -t(2t-1)/(t-1)^2: the minimal law loses the 1-entry exactly at
    // t in {0, 1/2}; combined with the grading this reproduces the two
    // graded members at t in {-1, 1/2}
    let cases: [(&str, &str, bool); 5] = [
        ("-1", "C2", false),
        ("1/2", "Z", true),
        ("1/3", "trivial", false),
        ("2", "trivial", false),
        ("-3", "trivial", false),
    ];
    for (t, expect, adjudicated) in cases {
        let entry = alg_2b(&sc(t))?;
        let law = entry
            .algebra
            .minimal_fusion_law(&entry.axes[0], entry.law.labels())?;
        let g = law.grading_group();
        let got = g.structure();
        let passed = got == expect;
        let detail = if adjudicated {
            format!(
                "minimal law has an empty non-unit diagonal entry, grading group {} \
                 (infinite cyclic, nontrivial with C2 quotient); the literal C2 is \
                 not attained at this point",
                got
            )
        } else {
            format!("grading group {}", got)
        };
        if adjudicated {
            rep.push_adj("minimal-law-grading", &format!("2B({})", t), passed, detail);
        } else {
            rep.push("minimal-law-grading", &format!("2B({})", t), passed, detail);
        }
    }
    Ok(())
}

fn matrix_is_identity(m: &Matrix, omega: bool) -> bool {
    let id = Matrix::identity(m.rows);
    *m == if omega { id.lift_omega() } else { id }
}

fn miyamoto(rep: &mut SweepReport) -> Result<(), AlgebraError> {
    // sign map of 2B(-1): involution fixing the axis
    let entry = alg_2b(&sc("-1"))?;
    let law = entry
        .algebra
        .minimal_fusion_law(&entry.axes[0], entry.law.labels())?;
    let g = law.grading_group();
    let decomp = entry.algebra.eigendecompose(&entry.axes[0], law.labels())?;
    let chars = g
        .characters(false)
        .map_err(|e| AlgebraError::BadParameter(e.to_string()))?;
    let mut sign_ok = false;
    let mut trivial_ok = false;
    for chi in &chars {
        let map = entry.algebra.miyamoto(&decomp, &g, chi)?;
        let (is_hom, _) = entry.algebra.check_map(&map);
        if chi.is_trivial() {
            trivial_ok = is_hom && matrix_is_identity(&map.matrix, false);
        } else {
            let square = map.matrix.mul(&map.matrix);
            sign_ok = is_hom
                && matrix_is_identity(&square, false)
                && !matrix_is_identity(&map.matrix, false);
        }
    }
    rep.push(
        "miyamoto",
        "2B(-1) sign map: automorphism, order 2",
        sign_ok,
        format!("{} characters", chars.len()),
    );
    rep.push(
        "miyamoto",
        "2B(-1) trivial character gives the identity map",
        trivial_ok,
        String::new(),
    );

    // omega-character map of the cyclically graded family: order 3
    let entry = alg_3dim_d(DVariant::BetaHalf, &sc("a"))?;
    let g = entry.law.grading_group();
    let decomp = entry.algebra.eigendecompose(&entry.axes[0], entry.law.labels())?;
    let chars = g
        .characters(true)
        .map_err(|e| AlgebraError::BadParameter(e.to_string()))?;
    let lifted = entry.algebra.lift_omega();
    let mut order3_ok = false;
    let mut trivial_ok = false;
    for chi in &chars {
        let map = entry.algebra.miyamoto(&decomp, &g, chi)?;
        let (is_hom, _) = lifted.check_map(&AlgebraMap::linear(map.matrix.clone()));
        if chi.is_trivial() {
            trivial_ok = is_hom && matrix_is_identity(&map.matrix, true);
        } else if !order3_ok {
            let cube = map.matrix.mul(&map.matrix).mul(&map.matrix);
            order3_ok = is_hom
                && matrix_is_identity(&cube, true)
                && !matrix_is_identity(&map.matrix, true);
        }
    }
    rep.push(
        "miyamoto",
        "cyclic family omega map: automorphism over Q(omega), order 3",
        order3_ok,
        format!("{} characters", chars.len()),
    );
    rep.push(
        "miyamoto",
        "cyclic family trivial character gives the identity map",
        trivial_ok,
        String::new(),
    );
    Ok(())
}

/// Expected instance count of the relator suite: per axis one idempotency
/// relator, one primitivity relator per word, and one fusion relator per
/// label pair and word pair.
pub fn expected_relator_count(axes: usize, labels: usize, words: usize) -> usize {
    axes * (1 + words + labels * labels * words * words)
}

fn relators(rep: &mut SweepReport, max_len: usize) -> Result<(), AlgebraError> {
    let words = crate::relators::enumerate_words(2, max_len).len();
    let suites: Vec<(CatalogEntry, &str)> = vec![
        (alg_2b(&sc("a"))?, "2B(a) under its two-eigenvalue law"),
        (
            alg_3dim_a(&sc("a"), &sc("1/2"), &sc("x")).unwrap(),
            "3-dimensional family (beta = 1/2) under its law",
        ),
        (
            alg_3dim_d(DVariant::BetaHalf, &sc("a"))?,
            "cyclically graded family under its law",
        ),
    ];
    for (entry, name) in suites {
        let report = check_all(&entry.algebra, &entry.axes, &entry.law, max_len)?;
        let expect = expected_relator_count(2, entry.law.len(), words);
        rep.push(
            "relators",
            name,
            report.failed == 0 && report.total == expect,
            format!(
                "{} instances ({} expected), {} failed",
                report.total, expect, report.failed
            ),
        );
    }
    Ok(())
}

fn axis_check(entry: &CatalogEntry, law: &FusionLaw) -> Result<bool, AlgebraError> {
    Ok(entry
        .axes
        .iter()
        .map(|a| entry.algebra.check_axis(a, law, true))
        .collect::<Result<Vec<_>, _>>()?
        .iter()
        .all(|r| r.passed()))
}

fn jordan_cases(rep: &mut SweepReport) -> Result<(), AlgebraError> {
    let cases: Vec<(&str, CatalogEntry, FusionLaw)> = vec![
        (
            "3-dim: alpha = 0, beta = 1/2, x free",
            alg_3dim_a(&sc("0"), &sc("1/2"), &sc("x")).unwrap(),
            jordan_generic(&sc("0"), &sc("1/2")).unwrap(),
        ),
        (
            "3-dim: alpha = 0, x = beta/2",
            alg_3dim_a(&sc("0"), &sc("b"), &sc("b/2")).unwrap(),
            jordan_generic(&sc("0"), &sc("b")).unwrap(),
        ),
        (
            "3-dim: beta = 1/2, x = 1",
            alg_3dim_a(&sc("a"), &sc("1/2"), &sc("1")).unwrap(),
            jordan_generic(&sc("a"), &sc("1/2")).unwrap(),
        ),
        (
            "3-dim: beta = -1, x = -1/2",
            alg_3dim_a(&sc("a"), &sc("-1"), &sc("-1/2")).unwrap(),
            jordan_generic(&sc("a"), &sc("-1")).unwrap(),
        ),
        (
            "3-dim: beta = 2 - 3 alpha, x = 1",
            alg_3dim_a(&sc("a"), &sc("2-3*a"), &sc("1")).unwrap(),
            jordan_generic(&sc("a"), &sc("2-3*a")).unwrap(),
        ),
        (
            "2B(0) with the first eigenvalue slot",
            alg_2b(&sc("0"))?,
            jordan_generic(&sc("0"), &sc("b")).unwrap(),
        ),
        (
            "2B(1/2) with the first eigenvalue slot",
            alg_2b(&sc("1/2"))?,
            jordan_generic(&sc("1/2"), &sc("b")).unwrap(),
        ),
        (
            "2B(-1) with the second eigenvalue slot",
            alg_2b(&sc("-1"))?,
            jordan_generic(&sc("a"), &sc("-1")).unwrap(),
        ),
        (
            "2B(1/2) with the second eigenvalue slot",
            alg_2b(&sc("1/2"))?,
            jordan_generic(&sc("a"), &sc("1/2")).unwrap(),
        ),
    ];
    for (name, entry, law) in cases {
        let ok = axis_check(&entry, &law)?;
        rep.push("jordan-cases", name, ok, String::new());
    }

    // the two published values for the 2B first-slot case disagree (-1/2
    // vs 1/2); 1/2 satisfies the law, -1/2 does not
    let printed = alg_2b(&sc("-1/2"))?;
    let law = jordan_generic(&sc("-1/2"), &sc("b")).unwrap();
    let fails = !axis_check(&printed, &law)?;
    rep.push_adj(
        "jordan-cases",
        "first-slot value disagreement: -1/2 vs 1/2",
        fails,
        if fails {
            "2B(-1/2) does not satisfy the law; 2B(1/2) does — 1/2 is the \
             surviving value"
                .into()
        } else {
            "both values satisfy the law; adjudication inconclusive".into()
        },
    );

    // off-case control: a generic admissible point outside every case
    let off = alg_3dim_a(&sc("1/4"), &sc("1/3"), &sc("7/18")).unwrap();
    let law = jordan_generic(&sc("1/4"), &sc("1/3")).unwrap();
    let r = off.algebra.check_axis(&off.axes[0], &law, true)?;
    let has_aa_violation = r
        .violations
        .iter()
        .any(|v| v.lambda == 1 && v.mu == 1 && v.component == 0);
    rep.push(
        "jordan-cases",
        "off-case control fails with a unit component in the (alpha, alpha) product",
        !r.passed() && has_aa_violation,
        format!("violations: {:?}", r.violations),
    );
    Ok(())
}

fn adjudicate_square(rep: &mut SweepReport) -> Result<(), AlgebraError> {
    // the two published squares of a0a1 in the pinned-1/2 family
    let mut survivor_sym = None;
    let good = alg_3dim_d(DVariant::BetaHalf, &sc("a"))?;
    let alt = alg_3dim_d_alt_square(&sc("a"))?;
    let g = axis_check(&good, &good.law)?;
    let b = axis_check(&alt, &alt.law)?;
    if g && !b {
        survivor_sym = Some("(1/4 - t)(a0 + a1) + (2t + 1/2) a0a1");
    } else if !g && b {
        survivor_sym = Some("1/4 (4 - t)(a0 + a1 - 2 a0a1)");
    }
    let mut numeric_agrees = true;
    for t in ["1/4", "3", "-2"] {
        let en = alg_3dim_d(DVariant::BetaHalf, &sc(t))?;
        let an = alg_3dim_d_alt_square(&sc(t))?;
        let gn = axis_check(&en, &en.law)?;
        let bn = axis_check(&an, &an.law)?;
        if gn != g || bn != b {
            numeric_agrees = false;
        }
    }
    let definitive = survivor_sym.is_some() && numeric_agrees;
    rep.push_adj(
        "square-adjudication",
        "exactly one candidate square satisfies the cyclic law",
        definitive,
        match survivor_sym {
            Some(s) => format!(
                "survivor: {} (symbolically and at t in {{1/4, 3, -2}})",
                s
            ),
            None => "inconclusive: both or neither candidate passed".into(),
        },
    );

    // the pinned-slot presentation printed with labels (1, t, 1/2) is the
    // same table as the cyclic law, and relabels onto the other slotting
    let printed = law_d(&sc("a"), &sc("1/2")).unwrap();
    let other = law_d(&sc("1/2"), &sc("a")).unwrap();
    let same = printed == good.law;
    let relabels = printed.isomorphism(&other, true).is_some();
    rep.push(
        "square-adjudication",
        "printed pinned-slot law equals the cyclic law and relabels onto the other slotting",
        same && relabels,
        format!("equal: {}; relabeling found: {}", same, relabels),
    );
    Ok(())
}

/// Specialization spot-check used by the full-verification criteria:
/// the symbolic axis check specializes correctly at a rational point.
pub fn specialization_spot_check(
    entry: &CatalogEntry,
    at: &ParamAssignment,
) -> Result<bool, AlgebraError> {
    let alg = entry.algebra.specialize(at)?;
    let mut labels = Vec::new();
    for l in entry.law.labels() {
        labels.push(l.specialize(at).map_err(AlgebraError::Field)?);
    }
    let law = FusionLaw::new(labels).map_err(|e| AlgebraError::BadParameter(e.to_string()))?;
    let mut law = law;
    for i in 0..entry.law.len() {
        for j in i..entry.law.len() {
            let v: Vec<usize> = entry.law.entry(i, j).iter().copied().collect();
            law.set(i, j, &v);
        }
    }
    let mut ok = true;
    for a in &entry.axes {
        let av = Vect::new(
            a.coords
                .iter()
                .map(|c| c.specialize(at))
                .collect::<Result<Vec<_>, _>>()
                .map_err(AlgebraError::Field)?,
        );
        ok &= alg.check_axis(&av, &law, true)?.passed();
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn expected_counts() {
        assert_eq!(expected_relator_count(2, 2, 29), 2 * (1 + 29 + 4 * 841));
        assert_eq!(expected_relator_count(2, 3, 29), 2 * (1 + 29 + 9 * 841));
    }

    #[test]
    fn spot_check_specializes() {
        let entry = alg_3dim_a(&sc("a"), &sc("1/2"), &sc("x")).unwrap();
        let at: ParamAssignment =
            [("a".to_string(), rat(1, 4)), ("x".to_string(), rat(7, 3))].into();
        assert!(specialization_spot_check(&entry, &at).unwrap());
    }
}
