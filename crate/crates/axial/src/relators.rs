//! Bounded-degree evaluation of the universal-algebra relators inside a
//! concrete algebra: idempotency of each axis, primitivity relators
//! f_{F\{1}}(ad_a)(w - phi_a(w) a), and fusion relators
//! f_{lambda*mu}(ad_a)((f_{F\{lambda}}(ad_a) w1)(f_{F\{mu}}(ad_a) w2)),
//! all of which must vanish in any algebra satisfying the law.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{Algebra, AlgebraError, EigenDecomposition};
use crate::field::Scalar;
use crate::fusion::FusionLaw;
use crate::linalg::Vect;

/// Word in the free commutative nonassociative magma; products keep their
/// smaller child on the left, so equal words have equal representations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum MagmaWord {
    Gen(usize),
    Prod(Box<MagmaWord>, Box<MagmaWord>),
}

impl MagmaWord {
    pub fn gen(i: usize) -> MagmaWord {
        MagmaWord::Gen(i)
    }

    /// Canonical product: commutativity is normalized away by ordering the
    /// children.
    pub fn prod(a: MagmaWord, b: MagmaWord) -> MagmaWord {
        let (x, y) = if cmp_words(&a, &b) == std::cmp::Ordering::Greater {
            (b, a)
        } else {
            (a, b)
        };
        MagmaWord::Prod(Box::new(x), Box::new(y))
    }

    pub fn len(&self) -> usize {
        match self {
            MagmaWord::Gen(_) => 1,
            MagmaWord::Prod(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn eval(&self, alg: &Algebra, gens: &[Vect]) -> Vect {
        match self {
            MagmaWord::Gen(i) => gens[*i].clone(),
            MagmaWord::Prod(a, b) => alg.product(&a.eval(alg, gens), &b.eval(alg, gens)),
        }
    }
}

/// Total order: shorter words first, then structural.
fn cmp_words(a: &MagmaWord, b: &MagmaWord) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match a.len().cmp(&b.len()) {
        Ordering::Equal => match (a, b) {
            (MagmaWord::Gen(i), MagmaWord::Gen(j)) => i.cmp(j),
            (MagmaWord::Gen(_), MagmaWord::Prod(_, _)) => Ordering::Less,
            (MagmaWord::Prod(_, _), MagmaWord::Gen(_)) => Ordering::Greater,
            (MagmaWord::Prod(a1, a2), MagmaWord::Prod(b1, b2)) => {
                cmp_words(a1, b1).then_with(|| cmp_words(a2, b2))
            }
        },
        o => o,
    }
}

impl fmt::Display for MagmaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagmaWord::Gen(i) => write!(f, "a{}", i),
            MagmaWord::Prod(a, b) => write!(f, "({}{})", a, b),
        }
    }
}

/// All canonical words of length at most max_len over n_gens generators.
pub fn enumerate_words(n_gens: usize, max_len: usize) -> Vec<MagmaWord> {
    assert!(n_gens >= 1 && max_len >= 1);
    let mut by_len: Vec<BTreeSet<MagmaWord>> = vec![BTreeSet::new(); max_len + 1];
    for i in 0..n_gens {
        by_len[1].insert(MagmaWord::gen(i));
    }
    for n in 2..=max_len {
        for i in 1..=n / 2 {
            let lows: Vec<MagmaWord> = by_len[i].iter().cloned().collect();
            let highs: Vec<MagmaWord> = by_len[n - i].iter().cloned().collect();
            for a in &lows {
                for b in &highs {
                    by_len[n].insert(MagmaWord::prod(a.clone(), b.clone()));
                }
            }
        }
    }
    by_len.into_iter().flatten().collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RelatorInstance {
    Idempotent { axis: usize },
    Primitivity { axis: usize, word: MagmaWord },
    Fusion { axis: usize, lambda: usize, mu: usize, w1: MagmaWord, w2: MagmaWord },
}

impl fmt::Display for RelatorInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelatorInstance::Idempotent { axis } => write!(f, "idempotent(axis {})", axis),
            RelatorInstance::Primitivity { axis, word } => {
                write!(f, "primitivity(axis {}, word {})", axis, word)
            }
            RelatorInstance::Fusion { axis, lambda, mu, w1, w2 } => write!(
                f,
                "fusion(axis {}, pair ({}, {}), words {} and {})",
                axis, lambda, mu, w1, w2
            ),
        }
    }
}

/// Evaluate one relator; the result must be zero in any algebra that is a
/// quotient of the universal object for this law.
pub fn eval_relator(
    alg: &Algebra,
    r: &RelatorInstance,
    law: &FusionLaw,
    axes: &[Vect],
    decomps: &[EigenDecomposition],
) -> Result<Vect, AlgebraError> {
    let labels = law.labels();
    let one = Scalar::one();
    match r {
        RelatorInstance::Idempotent { axis } => {
            let a = &axes[*axis];
            Ok(alg.product(a, a).sub(a))
        }
        RelatorInstance::Primitivity { axis, word } => {
            let a = &axes[*axis];
            let v = word.eval(alg, axes);
            let p = alg.phi(a, &decomps[*axis], &v)?;
            let reduced = v.sub(&a.scale(&p));
            let non_unit: Vec<Scalar> =
                labels.iter().filter(|l| **l != one).cloned().collect();
            Ok(alg.f_poly_adjoint(a, &non_unit, &reduced))
        }
        RelatorInstance::Fusion { axis, lambda, mu, w1, w2 } => {
            let a = &axes[*axis];
            let without = |k: usize| -> Vec<Scalar> {
                labels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != k)
                    .map(|(_, l)| l.clone())
                    .collect()
            };
            let u = alg.f_poly_adjoint(a, &without(*lambda), &w1.eval(alg, axes));
            let v = alg.f_poly_adjoint(a, &without(*mu), &w2.eval(alg, axes));
            let prod = alg.product(&u, &v);
            let target: Vec<Scalar> =
                law.entry(*lambda, *mu).iter().map(|&k| labels[k].clone()).collect();
            Ok(alg.f_poly_adjoint(a, &target, &prod))
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelatorReport {
    pub total: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

/// Evaluate every relator instance over words of length <= max_len for
/// every axis.
pub fn check_all(
    alg: &Algebra,
    axes: &[Vect],
    law: &FusionLaw,
    max_len: usize,
) -> Result<RelatorReport, AlgebraError> {
    let words = enumerate_words(axes.len(), max_len);
    let labels = law.labels();
    let one = Scalar::one();
    let mut decomps = Vec::new();
    for a in axes {
        decomps.push(alg.eigendecompose(a, labels)?);
    }
    let mut total = 0usize;
    let mut failures = Vec::new();
    fn record(failures: &mut Vec<String>, inst: &RelatorInstance, v: Vect) {
        if !v.is_zero() {
            failures.push(format!("{} = {}", inst, v));
        }
    }
    for (ai, a) in axes.iter().enumerate() {
        let inst = RelatorInstance::Idempotent { axis: ai };
        let v = eval_relator(alg, &inst, law, axes, &decomps)?;
        total += 1;
        record(&mut failures, &inst, v);

        // cache word vectors and their per-eigenvalue projections
        let word_vecs: Vec<Vect> = words.iter().map(|w| w.eval(alg, axes)).collect();
        let non_unit: Vec<Scalar> =
            labels.iter().filter(|l| **l != one).cloned().collect();
        for (wi, w) in words.iter().enumerate() {
            let inst = RelatorInstance::Primitivity { axis: ai, word: w.clone() };
            let p = alg.phi(a, &decomps[ai], &word_vecs[wi])?;
            let reduced = word_vecs[wi].sub(&a.scale(&p));
            let v = alg.f_poly_adjoint(a, &non_unit, &reduced);
            total += 1;
            record(&mut failures, &inst, v);
        }
        // projections f_{F\{k}}(ad_a)(word) for each eigenvalue index k
        let mut proj: Vec<Vec<Vect>> = Vec::with_capacity(labels.len());
        for k in 0..labels.len() {
            let without: Vec<Scalar> = labels
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, l)| l.clone())
                .collect();
            proj.push(
                word_vecs
                    .iter()
                    .map(|v| alg.f_poly_adjoint(a, &without, v))
                    .collect(),
            );
        }
        for lambda in 0..labels.len() {
            for mu in 0..labels.len() {
                let target: Vec<Scalar> =
                    law.entry(lambda, mu).iter().map(|&k| labels[k].clone()).collect();
                for (i1, w1) in words.iter().enumerate() {
                    for (i2, w2) in words.iter().enumerate() {
                        let prod = alg.product(&proj[lambda][i1], &proj[mu][i2]);
                        let v = alg.f_poly_adjoint(a, &target, &prod);
                        total += 1;
                        if !v.is_zero() {
                            let inst = RelatorInstance::Fusion {
                                axis: ai,
                                lambda,
                                mu,
                                w1: w1.clone(),
                                w2: w2.clone(),
                            };
                            failures.push(format!("{} = {}", inst, v));
                        }
                    }
                }
            }
        }
    }
    Ok(RelatorReport { failed: failures.len(), total, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    #[test]
    fn word_counts() {
        assert_eq!(enumerate_words(1, 1).len(), 1);
        let w2 = enumerate_words(2, 2);
        assert_eq!(w2.len(), 5);
        let by_len =
            |n: usize| enumerate_words(2, 4).iter().filter(|w| w.len() == n).count();
        assert_eq!(by_len(1), 2);
        assert_eq!(by_len(2), 3);
        assert_eq!(by_len(3), 6);
        assert_eq!(by_len(4), 18);
        assert_eq!(enumerate_words(2, 4).len(), 29);
    }

    #[test]
    fn canonical_child_order() {
        let a = MagmaWord::gen(0);
        let b = MagmaWord::gen(1);
        assert_eq!(
            MagmaWord::prod(a.clone(), b.clone()),
            MagmaWord::prod(b.clone(), a.clone())
        );
        let ab = MagmaWord::prod(a.clone(), b.clone());
        assert_eq!(
            MagmaWord::prod(ab.clone(), a.clone()),
            MagmaWord::prod(a.clone(), ab.clone())
        );
    }

    fn two_b(alpha: &str) -> (Algebra, Vec<Vect>) {
        let mut alg = Algebra::new(vec!["a0".into(), "a1".into()]);
        alg.set_product(0, 0, Vect::new(vec![s("1"), s("0")]));
        alg.set_product(1, 1, Vect::new(vec![s("0"), s("1")]));
        let a = s(alpha);
        alg.set_product(0, 1, Vect::new(vec![a.clone(), a]));
        (alg, vec![Vect::unit(2, 0), Vect::unit(2, 1)])
    }

    fn two_eval_law(alpha: &str) -> FusionLaw {
        let mut law = FusionLaw::new(vec![s("1"), s(alpha)]).unwrap();
        law.set(0, 0, &[0]);
        law.set(0, 1, &[1]);
        law.set(1, 1, &[0, 1]);
        law
    }

    #[test]
    fn eval_word_invariance() {
        let (alg, gens) = two_b("a");
        let w1 = MagmaWord::prod(MagmaWord::gen(0), MagmaWord::gen(1));
        let w2 = MagmaWord::prod(MagmaWord::gen(1), MagmaWord::gen(0));
        assert_eq!(w1.eval(&alg, &gens), w2.eval(&alg, &gens));
        assert_eq!(w1.eval(&alg, &gens), Vect::new(vec![s("a"), s("a")]));
    }

    #[test]
    fn relators_vanish_for_2b() {
        let (alg, gens) = two_b("a");
        let law = two_eval_law("a");
        let report = check_all(&alg, &gens, &law, 3).unwrap();
        assert_eq!(report.failed, 0, "failures: {:?}", report.failures);
        let words = enumerate_words(2, 3).len();
        assert_eq!(report.total, 2 * (1 + words + 4 * words * words));
    }

    #[test]
    fn mismatched_law_reports_failures() {
        // three-eigenvalue cyclic law cannot hold in 2B(a)
        let (alg, gens) = two_b("a");
        let mut law = FusionLaw::new(vec![s("1"), s("a"), s("b")]).unwrap();
        law.set(0, 0, &[0]);
        law.set(0, 1, &[1]);
        law.set(0, 2, &[2]);
        law.set(1, 1, &[2]);
        law.set(1, 2, &[0]);
        law.set(2, 2, &[1]);
        let report = check_all(&alg, &gens, &law, 2).unwrap();
        assert!(report.failed > 0);
    }

    #[test]
    fn idempotent_relator_detects_non_idempotent() {
        let (alg, _) = two_b("a");
        let bad = vec![Vect::new(vec![s("2"), s("0")]), Vect::unit(2, 1)];
        let inst = RelatorInstance::Idempotent { axis: 0 };
        let law = two_eval_law("a");
        let decomps = vec![
            alg.eigendecompose(&bad[0], law.labels()).unwrap(),
            alg.eigendecompose(&bad[1], law.labels()).unwrap(),
        ];
        let v = eval_relator(&alg, &inst, &law, &bad, &decomps).unwrap();
        assert!(!v.is_zero());
        let _ = Matrix::identity(2);
    }
}
