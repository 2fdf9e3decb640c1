//! Property-based invariants of the exact arithmetic and linear algebra.

use std::collections::BTreeMap;

use proptest::prelude::*;

use axial::field::{rat, ParamAssignment, Scalar};
use axial::fusion::FusionLaw;
use axial::linalg::{Matrix, Vect};
use axial::relators::{enumerate_words, MagmaWord};

/// Small random scalar in up to two parameters.
fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    let coeff = (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Scalar::from_rat(rat(n, d)));
    let atom = prop_oneof![
        coeff,
        Just(Scalar::param("a")),
        Just(Scalar::param("b")),
    ];
    atom.prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), inner).prop_flat_map(|(x, y)| {
            prop_oneof![
                Just(x.add(&y)),
                Just(x.mul(&y)),
                Just(x.sub(&y)),
            ]
        })
    })
}

fn assignment_strategy() -> impl Strategy<Value = ParamAssignment> {
    ((-5i64..=5, 1i64..=3), (-5i64..=5, 1i64..=3)).prop_map(|(a, b)| {
        let mut m = ParamAssignment::new();
        m.insert("a".into(), rat(a.0, a.1));
        m.insert("b".into(), rat(b.0, b.1));
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_laws(x in scalar_strategy(), y in scalar_strategy(), z in scalar_strategy()) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.sub(&x), Scalar::zero());
        if !x.is_zero() {
            let inv = x.inv().unwrap();
            prop_assert_eq!(x.mul(&inv), Scalar::one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        x in scalar_strategy(),
        y in scalar_strategy(),
        at in assignment_strategy(),
    ) {
        // skip points where a denominator vanishes
        if let (Ok(xv), Ok(yv), Ok(sv), Ok(pv)) = (
            x.eval(&at), y.eval(&at), x.add(&y).eval(&at), x.mul(&y).eval(&at),
        ) {
            prop_assert_eq!(sv, xv.clone() + yv.clone());
            prop_assert_eq!(pv, xv * yv);
        }
    }

    #[test]
    fn rank_equals_transpose_rank(
        entries in proptest::collection::vec(scalar_strategy(), 9),
    ) {
        let mut m = Matrix::zero(3, 3);
        for (k, e) in entries.into_iter().enumerate() {
            *m.at_mut(k / 3, k % 3) = e;
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn certificate_soundness(
        entries in proptest::collection::vec(scalar_strategy(), 9),
        at in assignment_strategy(),
    ) {
        // a symbolic rank computation specializes to the same rank at any
        // point where every certificate polynomial is nonzero
        let mut m = Matrix::zero(3, 3);
        for (k, e) in entries.into_iter().enumerate() {
            *m.at_mut(k / 3, k % 3) = e;
        }
        let (_, _, cert, rank) = m.rref();
        let mut admissible = true;
        for p in &cert {
            match p.eval(&at) {
                Some(v) => admissible &= v != rat(0, 1),
                None => admissible = false,
            }
        }
        // the point must also keep every matrix entry finite
        let mut spec = Matrix::zero(3, 3);
        let mut defined = true;
        for i in 0..3 {
            for j in 0..3 {
                match m.at(i, j).eval(&at) {
                    Ok(v) => *spec.at_mut(i, j) = Scalar::from_rat(v),
                    Err(_) => defined = false,
                }
            }
        }
        if admissible && defined {
            prop_assert_eq!(spec.rank(), rank);
        }
    }

    #[test]
    fn word_product_is_canonical(i in 0usize..2, j in 0usize..2, k in 0usize..2) {
        let w1 = MagmaWord::prod(MagmaWord::gen(i), MagmaWord::gen(j));
        let w2 = MagmaWord::prod(MagmaWord::gen(j), MagmaWord::gen(i));
        prop_assert_eq!(w1.clone(), w2);
        let u = MagmaWord::prod(w1.clone(), MagmaWord::gen(k));
        let v = MagmaWord::prod(MagmaWord::gen(k), w1);
        prop_assert_eq!(u, v);
    }
}

#[test]
fn word_enumeration_counts() {
    let lens: Vec<usize> = (1..=4)
        .map(|l| {
            enumerate_words(2, l).len()
        })
        .collect();
    assert_eq!(lens, vec![2, 5, 11, 29]);
}

#[test]
fn sublaw_reflexive_and_transitive() {
    let parse = |labels: &[&str], entries: &[((usize, usize), &[usize])]| {
        let mut law = FusionLaw::new(
            labels.iter().map(|s| Scalar::parse(s).unwrap()).collect(),
        )
        .unwrap();
        for ((i, j), v) in entries {
            law.set(*i, *j, v);
        }
        law
    };
    let small = parse(&["1", "a"], &[((0, 0), &[0]), ((1, 1), &[0])]);
    let mid = parse(&["1", "a"], &[((0, 0), &[0]), ((0, 1), &[1]), ((1, 1), &[0, 1])]);
    assert!(small.is_sublaw_of(&small).0);
    assert!(mid.is_sublaw_of(&mid).0);
    assert!(small.is_sublaw_of(&mid).0);
    assert!(!mid.is_sublaw_of(&small).0);
}

#[test]
fn scalar_display_roundtrip() {
    for t in ["(a-1)/(2*b)", "a^2 - 1/2", "-(a+b)^3/(a-b)"] {
        let s = Scalar::parse(t).unwrap();
        let r = Scalar::parse(&s.to_string()).unwrap();
        assert_eq!(s, r);
    }
}

#[test]
fn matrix_inverse_roundtrip() {
    let mut m = Matrix::identity(3);
    *m.at_mut(0, 1) = Scalar::param("a");
    *m.at_mut(1, 2) = Scalar::parse("a*b - 1").unwrap();
    *m.at_mut(2, 0) = Scalar::from_rat(rat(2, 3));
    *m.at_mut(2, 2) = Scalar::param("b");
    let (inv, _) = m.inverse().expect("invertible");
    assert_eq!(m.mul(&inv), Matrix::identity(3));
    let v = Vect::new(vec![
        Scalar::param("a"),
        Scalar::one(),
        Scalar::parse("b/2").unwrap(),
    ]);
    assert_eq!(inv.mul_vec(&m.mul_vec(&v)), v);
}

#[test]
fn specialization_commutes_with_products() {
    use axial::catalog::{alg_3dim_a, eigvecs};
    let sc = |t: &str| Scalar::parse(t).unwrap();
    let entry = alg_3dim_a(&sc("a"), &sc("1/2"), &sc("x")).unwrap();
    let at: ParamAssignment = BTreeMap::from([
        ("a".to_string(), rat(3, 7)),
        ("x".to_string(), rat(-2, 5)),
    ]);
    let spec = entry.algebra.specialize(&at).unwrap();
    let (va, vb) = eigvecs(&entry).unwrap();
    let sym = entry.algebra.product(&va, &vb);
    let specialize_vect = |v: &Vect| {
        Vect::new(v.coords.iter().map(|c| c.specialize(&at).unwrap()).collect())
    };
    let lhs = specialize_vect(&sym);
    let rhs = spec.product(&specialize_vect(&va), &specialize_vect(&vb));
    assert_eq!(lhs, rhs);
}
