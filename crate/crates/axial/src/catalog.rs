//! Constructors for the classified algebras and fusion laws, the expected
//! ideal tables, and the named identity suite used by the verification
//! sweep.
//!
//! Every 3-dimensional entry uses the basis {a0, a1, m} with m = a0*a1 and
//! equal projections phi_{a0}(a1) = phi_{a1}(a0) = x.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{marked_iso, Algebra, AlgebraError, AxisReport};
use crate::field::{rat, FieldError, Scalar};
use crate::fusion::{FusionError, FusionLaw};
use crate::linalg::{Certificate, Matrix, Subspace, Vect};

fn sc(t: &str) -> Scalar {
    Scalar::parse(t).expect("static scalar expression")
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: Algebra,
    /// Marked generating axes.
    pub axes: Vec<Vect>,
    /// Declared fusion law the axes must satisfy.
    pub law: FusionLaw,
    /// Parameter values used by the constructor, when applicable.
    pub alpha: Option<Scalar>,
    pub beta: Option<Scalar>,
    pub x: Option<Scalar>,
}

// ---- fusion laws ----

/// Unit row 1*1={1}, 1*l={l} plus the given lower-right block.
fn three_law(
    alpha: &Scalar,
    beta: &Scalar,
    aa: &[usize],
    ab: &[usize],
    bb: &[usize],
) -> Result<FusionLaw, FusionError> {
    let mut law = FusionLaw::new(vec![Scalar::one(), alpha.clone(), beta.clone()])?;
    law.set(0, 0, &[0]);
    law.set(0, 1, &[1]);
    law.set(0, 2, &[2]);
    law.set(1, 1, aa);
    law.set(1, 2, ab);
    law.set(2, 2, bb);
    Ok(law)
}

/// a*a = {1,a}, a*b = {b}, b*b = {1,a}.
pub fn law_a(alpha: &Scalar, beta: &Scalar) -> Result<FusionLaw, FusionError> {
    three_law(alpha, beta, &[0, 1], &[2], &[0, 1])
}

/// a*a = a*b = b*b = {1}.
pub fn law_c(alpha: &Scalar, beta: &Scalar) -> Result<FusionLaw, FusionError> {
    three_law(alpha, beta, &[0], &[0], &[0])
}

/// a*a = {b}, a*b = {1}, b*b = {a}: the cyclically graded law.
pub fn law_d(alpha: &Scalar, beta: &Scalar) -> Result<FusionLaw, FusionError> {
    three_law(alpha, beta, &[2], &[0], &[1])
}

/// Two eigenvalues: a*a = {1, a}.
pub fn two_eval(alpha: &Scalar) -> Result<FusionLaw, FusionError> {
    let mut law = FusionLaw::new(vec![Scalar::one(), alpha.clone()])?;
    law.set(0, 0, &[0]);
    law.set(0, 1, &[1]);
    law.set(1, 1, &[0, 1]);
    Ok(law)
}

/// Eigenvalues {1, 0, eta}: 0*0={0}, 0*eta={eta}, eta*eta={1,0}.
pub fn jordan_type(eta: &Scalar) -> Result<FusionLaw, FusionError> {
    three_law(&Scalar::zero(), eta, &[1], &[2], &[0, 1])
}

/// The Jordan shape with generic eigenvalues: a*a={a}, a*b={b}, b*b={1,a}.
pub fn jordan_generic(alpha: &Scalar, beta: &Scalar) -> Result<FusionLaw, FusionError> {
    three_law(alpha, beta, &[1], &[2], &[0, 1])
}

// ---- algebras ----

pub fn alg_1a() -> CatalogEntry {
    let mut alg = Algebra::new(vec!["a0".into()]);
    alg.set_product(0, 0, Vect::unit(1, 0));
    let mut law = FusionLaw::new(vec![Scalar::one()]).unwrap();
    law.set(0, 0, &[0]);
    CatalogEntry {
        name: "1A".into(),
        algebra: alg,
        axes: vec![Vect::unit(1, 0), Vect::unit(1, 0)],
        law,
        alpha: None,
        beta: None,
        x: None,
    }
}

pub fn alg_2b(alpha: &Scalar) -> Result<CatalogEntry, AlgebraError> {
    if alpha == &Scalar::one() {
        return Err(AlgebraError::BadParameter("alpha = 1".into()));
    }
    let mut alg = Algebra::new(vec!["a0".into(), "a1".into()]);
    alg.set_product(0, 0, Vect::new(vec![Scalar::one(), Scalar::zero()]));
    alg.set_product(1, 1, Vect::new(vec![Scalar::zero(), Scalar::one()]));
    alg.set_product(0, 1, Vect::new(vec![alpha.clone(), alpha.clone()]));
    let law = two_eval(alpha).map_err(|e| AlgebraError::BadParameter(e.to_string()))?;
    Ok(CatalogEntry {
        name: format!("2B({})", alpha),
        algebra: alg,
        axes: vec![Vect::unit(2, 0), Vect::unit(2, 1)],
        law,
        alpha: Some(alpha.clone()),
        beta: None,
        x: None,
    })
}

fn base_preconditions(alpha: &Scalar, beta: &Scalar) -> Result<(), AlgebraError> {
    let one = Scalar::one();
    if alpha == &one {
        return Err(AlgebraError::BadParameter("alpha = 1".into()));
    }
    if beta == &one {
        return Err(AlgebraError::BadParameter("beta = 1".into()));
    }
    if alpha == beta {
        return Err(AlgebraError::BadParameter("alpha = beta".into()));
    }
    Ok(())
}

/// Structure constants of the symmetric (x = y) 3-dimensional family on
/// {a0, a1, m}; no slice constraint imposed on x.
fn three_dim_products(alpha: &Scalar, beta: &Scalar, x: &Scalar) -> Algebra {
    let mut alg = Algebra::new(vec!["a0".into(), "a1".into(), "m".into()]);
    let z = Scalar::zero();
    let one = Scalar::one();
    alg.set_product(0, 0, Vect::new(vec![one.clone(), z.clone(), z.clone()]));
    alg.set_product(1, 1, Vect::new(vec![z.clone(), one.clone(), z.clone()]));
    alg.set_product(0, 1, Vect::new(vec![z.clone(), z.clone(), one.clone()]));
    // a0*m = (a-1)(b-1)x a0 - ab a1 + (a+b) m; a1*m mirrors it
    let am = alpha.sub(&one).mul(&beta.sub(&one)).mul(x);
    let ab = alpha.mul(beta).neg();
    let s = alpha.add(beta);
    alg.set_product(0, 2, Vect::new(vec![am.clone(), ab.clone(), s.clone()]));
    alg.set_product(1, 2, Vect::new(vec![ab, am, s.clone()]));
    // m*m = (b(a-1)(a+b-1)x - ab(a+b))(a0+a1)
    //       + ((1-a)(a-b+1)x + a^2+3ab+2b^2-b) m
    let c1 = beta
        .mul(&alpha.sub(&one))
        .mul(&s.sub(&one))
        .mul(x)
        .sub(&alpha.mul(beta).mul(&s));
    let c2 = one
        .sub(alpha)
        .mul(&alpha.sub(beta).add(&one))
        .mul(x)
        .add(&alpha.mul(alpha))
        .add(&Scalar::from_int(3).mul(&alpha.mul(beta)))
        .add(&Scalar::from_int(2).mul(&beta.mul(beta)))
        .sub(beta);
    alg.set_product(2, 2, Vect::new(vec![c1.clone(), c1, c2]));
    alg
}

/// The 3-dimensional algebra on the admissible slice: beta = 1/2 or
/// x = (alpha + beta)/(2(1 - alpha)).
pub fn alg_3dim_a(
    alpha: &Scalar,
    beta: &Scalar,
    x: &Scalar,
) -> Result<CatalogEntry, AlgebraError> {
    base_preconditions(alpha, beta)?;
    let half = sc("1/2");
    if beta != &half {
        let denom = Scalar::from_int(2).mul(&Scalar::one().sub(alpha));
        if denom.is_zero() {
            return Err(AlgebraError::BadParameter("alpha = 1".into()));
        }
        let slice = alpha.add(beta).div(&denom)?;
        if x != &slice {
            return Err(AlgebraError::BadParameter(format!(
                "beta != 1/2 requires x = (alpha+beta)/(2(1-alpha)) = {}, got {}",
                slice, x
            )));
        }
    }
    Ok(alg_3dim_a_generic_x(alpha, beta, x)?)
}

/// The same structure-constant family with x unconstrained; used for ideal
/// rows whose parameters leave the admissible slice.
pub fn alg_3dim_a_generic_x(
    alpha: &Scalar,
    beta: &Scalar,
    x: &Scalar,
) -> Result<CatalogEntry, AlgebraError> {
    base_preconditions(alpha, beta)?;
    let alg = three_dim_products(alpha, beta, x);
    let law = law_a(alpha, beta).map_err(|e| AlgebraError::BadParameter(e.to_string()))?;
    Ok(CatalogEntry {
        name: format!("3dimA({}, {}, {})", alpha, beta, x),
        algebra: alg,
        axes: vec![Vect::unit(3, 0), Vect::unit(3, 1)],
        law,
        alpha: Some(alpha.clone()),
        beta: Some(beta.clone()),
        x: Some(x.clone()),
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DVariant {
    /// First non-unit eigenvalue fixed at 1/2, second free.
    AlphaHalf,
    /// Second non-unit eigenvalue fixed at 1/2, first free.
    BetaHalf,
}

/// The cyclically graded 3-dimensional algebra: x = y = 1, one eigenvalue
/// pinned at 1/2, and (a0a1)^2 = (1/4 - t)(a0 + a1) + (2t + 1/2) a0a1 in
/// the free parameter t.
pub fn alg_3dim_d(variant: DVariant, free: &Scalar) -> Result<CatalogEntry, AlgebraError> {
    let half = sc("1/2");
    if free == &Scalar::one() || free == &half {
        return Err(AlgebraError::BadParameter(format!(
            "free parameter must avoid 1 and 1/2, got {}",
            free
        )));
    }
    let (alpha, beta) = match variant {
        DVariant::AlphaHalf => (half.clone(), free.clone()),
        DVariant::BetaHalf => (free.clone(), half.clone()),
    };
    let mut alg = three_dim_products(&alpha, &beta, &Scalar::one());
    let q = sc("1/4").sub(free);
    let l = Scalar::from_int(2).mul(free).add(&half);
    alg.set_product(2, 2, Vect::new(vec![q.clone(), q, l]));
    let law = law_d(&alpha, &beta).map_err(|e| AlgebraError::BadParameter(e.to_string()))?;
    Ok(CatalogEntry {
        name: format!("3dimD({:?}, {})", variant, free),
        algebra: alg,
        axes: vec![Vect::unit(3, 0), Vect::unit(3, 1)],
        law,
        alpha: Some(alpha),
        beta: Some(beta),
        x: Some(Scalar::one()),
    })
}

/// Alternate candidate square for the BetaHalf variant:
/// (a0a1)^2 = 1/4 (4 - t)(a0 + a1 - 2 a0a1). Retained so the fusion check
/// can adjudicate between the two published forms.
pub fn alg_3dim_d_alt_square(free: &Scalar) -> Result<CatalogEntry, AlgebraError> {
    let mut entry = alg_3dim_d(DVariant::BetaHalf, free)?;
    let c = sc("1/4").mul(&Scalar::from_int(4).sub(free));
    let l = Scalar::from_int(-2).mul(&c);
    entry
        .algebra
        .set_product(2, 2, Vect::new(vec![c.clone(), c, l]));
    entry.name = format!("3dimD(BetaHalf-alt, {})", free);
    Ok(entry)
}

/// Eigenvectors of ad_{a0} for a 3-dimensional entry:
/// v_alpha = (beta-1)x a0 - beta a1 + m and
/// v_beta  = (alpha-1)x a0 - alpha a1 + m.
pub fn eigvecs(entry: &CatalogEntry) -> Result<(Vect, Vect), AlgebraError> {
    if entry.algebra.dim() != 3 {
        return Err(AlgebraError::DimMismatch);
    }
    let (Some(alpha), Some(beta), Some(x)) = (&entry.alpha, &entry.beta, &entry.x) else {
        return Err(AlgebraError::BadParameter("entry has no recorded parameters".into()));
    };
    let one = Scalar::one();
    let va = Vect::new(vec![beta.sub(&one).mul(x), beta.neg(), one.clone()]);
    let vb = Vect::new(vec![alpha.sub(&one).mul(x), alpha.neg(), one.clone()]);
    Ok((va, vb))
}

// ---- entry verification ----

#[derive(Clone, Debug)]
pub struct EntryReport {
    pub axis_reports: Vec<AxisReport>,
    pub generates: bool,
    pub swap_automorphism: bool,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.axis_reports.iter().all(AxisReport::passed)
            && self.generates
            && self.swap_automorphism
    }
}

/// Idempotency, completeness, primitivity and fusion for both marked axes,
/// generation of the whole algebra by the axes, and invariance under the
/// a0 <-> a1 swap.
pub fn verify_entry(entry: &CatalogEntry) -> Result<EntryReport, AlgebraError> {
    let mut axis_reports = Vec::new();
    for a in &entry.axes {
        axis_reports.push(entry.algebra.check_axis(a, &entry.law, true)?);
    }
    let generates =
        entry.algebra.subalgebra_closure(&entry.axes).dim() == entry.algebra.dim();
    let swap = swap_map(entry.algebra.dim());
    let (swap_automorphism, _) = entry
        .algebra
        .check_map(&crate::algebra::AlgebraMap::linear(swap));
    Ok(EntryReport { axis_reports, generates, swap_automorphism })
}

/// The linear a0 <-> a1 swap fixing any remaining basis vectors.
pub fn swap_map(dim: usize) -> Matrix {
    let mut m = Matrix::identity(dim);
    if dim >= 2 {
        *m.at_mut(0, 0) = Scalar::zero();
        *m.at_mut(1, 1) = Scalar::zero();
        *m.at_mut(0, 1) = Scalar::one();
        *m.at_mut(1, 0) = Scalar::one();
    }
    m
}

// ---- identity suite ----

#[derive(Clone, Debug)]
pub struct IdentityResult {
    pub name: &'static str,
    /// False when the entry's parameters do not satisfy the identity's
    /// constraint branch; the check is then skipped.
    pub applicable: bool,
    pub holds: bool,
    pub residual: String,
}

fn identity(name: &'static str, lhs: &Vect, rhs: &Vect) -> IdentityResult {
    let res = lhs.sub(rhs);
    IdentityResult {
        name,
        applicable: true,
        holds: res.is_zero(),
        residual: res.to_string(),
    }
}

fn skipped(name: &'static str) -> IdentityResult {
    IdentityResult { name, applicable: false, holds: true, residual: String::new() }
}

/// The named product identities of the 3-dimensional families, each under
/// its own constraint branch.
pub fn identity_suite(entry: &CatalogEntry) -> Result<Vec<IdentityResult>, AlgebraError> {
    let alg = &entry.algebra;
    let (va, vb) = eigvecs(entry)?;
    let (Some(alpha), Some(beta), Some(x)) = (&entry.alpha, &entry.beta, &entry.x) else {
        return Err(AlgebraError::BadParameter("entry has no recorded parameters".into()));
    };
    let one = Scalar::one();
    let half = sc("1/2");
    let a0 = Vect::unit(3, 0);
    let a1 = Vect::unit(3, 1);
    let m = Vect::unit(3, 2);
    let is_d_family = entry.name.starts_with("3dimD");
    let mut out = Vec::new();

    let vbvb = alg.product(&vb, &vb);
    let vava = alg.product(&va, &va);
    let vavb = alg.product(&va, &vb);

    // (1) beta = 1/2:
    // vb*vb = 1/4 (2a-1)((a-1)x + a)(a0 + a1 - 2m)
    if !is_d_family && beta == &half {
        let c = sc("1/4")
            .mul(&Scalar::from_int(2).mul(alpha).sub(&one))
            .mul(&alpha.sub(&one).mul(x).add(alpha));
        let rhs = a0.add(&a1).sub(&m.scale(&Scalar::from_int(2))).scale(&c);
        out.push(identity("vb_vb_beta_half", &vbvb, &rhs));
    } else {
        out.push(skipped("vb_vb_beta_half"));
    }

    // slice x = (a+b)/(2(1-a))
    let on_slice = !is_d_family && {
        let denom = Scalar::from_int(2).mul(&one.sub(alpha));
        !denom.is_zero() && *x == alpha.add(beta).div(&denom)?
    };

    // (2) on the slice:
    // vb*vb = 1/4 (a-b)((4ab-a-b)a0 + 2(a+b-1)(b a1 - m))
    if on_slice {
        let inner = a1
            .scale(beta)
            .sub(&m)
            .scale(&Scalar::from_int(2).mul(&alpha.add(beta).sub(&one)))
            .add(&a0.scale(
                &Scalar::from_int(4).mul(&alpha.mul(beta)).sub(alpha).sub(beta),
            ));
        let rhs = inner.scale(&sc("1/4").mul(&alpha.sub(beta)));
        out.push(identity("vb_vb_on_slice", &vbvb, &rhs));
    } else {
        out.push(skipped("vb_vb_on_slice"));
    }

    // (3) on the slice:
    // a0(vb*vb) - a vb*vb = 1/4 (a-b)^2 b (2-3a-b) a0
    if on_slice {
        let lhs = alg.product(&a0, &vbvb).sub(&vbvb.scale(alpha));
        let c = sc("1/4")
            .mul(&alpha.sub(beta).pow(2)?)
            .mul(beta)
            .mul(&Scalar::from_int(2).sub(&Scalar::from_int(3).mul(alpha)).sub(beta));
        out.push(identity("a0_vb_vb_on_slice", &lhs, &a0.scale(&c)));
    } else {
        out.push(skipped("a0_vb_vb_on_slice"));
    }

    // (4) va*vb = -(a+b-1)((1-b)x - b) vb
    if !is_d_family {
        let c = alpha
            .add(beta)
            .sub(&one)
            .mul(&one.sub(beta).mul(x).sub(beta))
            .neg();
        out.push(identity("va_vb_multiple_of_vb", &vavb, &vb.scale(&c)));
    } else {
        out.push(skipped("va_vb_multiple_of_vb"));
    }

    // (5) a0(va*va) - a va*va = a(a-b)(a-1)((1-b)x - b)(x-1) a0
    if !is_d_family {
        let lhs = alg.product(&a0, &vava).sub(&vava.scale(alpha));
        let c = alpha
            .mul(&alpha.sub(beta))
            .mul(&alpha.sub(&one))
            .mul(&one.sub(beta).mul(x).sub(beta))
            .mul(&x.sub(&one));
        out.push(identity("a0_va_va", &lhs, &a0.scale(&c)));
    } else {
        out.push(skipped("a0_va_va"));
    }

    // (6) difference formulas with y = x:
    // (va*va - vb*vb)/(a-b) and (va*va - va*vb)/(a-b)
    if !is_d_family {
        let d = alpha.sub(beta);
        let lhs1 = vava.sub(&vbvb).scale(&d.inv()?);
        let two = Scalar::from_int(2);
        let r1 = a0
            .scale(
                &alpha
                    .add(beta)
                    .sub(&two.mul(&alpha.mul(beta)))
                    .mul(&x.mul(x))
                    .sub(&two.mul(&alpha.mul(beta))),
            )
            .add(&a1.scale(
                &two.mul(&alpha.mul(beta)).mul(x)
                    .add(&two.mul(&alpha.sub(&one)).mul(&beta.sub(&one)).mul(x))
                    .sub(alpha)
                    .sub(beta),
            ))
            .sub(&m.scale(&two.mul(&x.sub(alpha).sub(beta))));
        out.push(identity("difference_va_vb_squares", &lhs1, &r1));
        let lhs2 = vava.sub(&vavb).scale(&d.inv()?);
        let r2 = a0
            .scale(&alpha.mul(&one.sub(beta)).mul(&x.mul(x)).sub(&alpha.mul(beta)))
            .add(&a1.scale(
                &alpha
                    .mul(beta)
                    .mul(x)
                    .add(&alpha.sub(&one).mul(&beta.sub(&one)).mul(x))
                    .sub(beta),
            ))
            .add(&m.scale(&beta.sub(alpha).sub(&one).mul(x).add(alpha).add(beta)));
        out.push(identity("difference_va_va_vavb", &lhs2, &r2));
    } else {
        out.push(skipped("difference_va_vb_squares"));
        out.push(skipped("difference_va_va_vavb"));
    }

    // (7) cyclically graded family (free parameter t, pinned value 1/2):
    // va*va = va*vb = 0 and vb*vb = -2(t - 1/2)^2 va
    if is_d_family {
        out.push(identity("d_va_va_zero", &vava, &Vect::zero(3)));
        out.push(identity("d_va_vb_zero", &vavb, &Vect::zero(3)));
        let free = if beta == &half { alpha } else { beta };
        let c = Scalar::from_int(-2).mul(&free.sub(&half).pow(2)?);
        out.push(identity("d_vb_vb_multiple_of_va", &vbvb, &va.scale(&c)));
    } else {
        out.push(skipped("d_va_va_zero"));
        out.push(skipped("d_va_vb_zero"));
        out.push(skipped("d_vb_vb_multiple_of_va"));
    }

    Ok(out)
}

// ---- ideal table ----

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenSym {
    A0,
    VAlpha,
    VBeta,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpectedQuotient {
    OneA,
    TwoBAlpha,
    TwoBBeta,
}

#[derive(Clone, Debug)]
pub struct IdealRow {
    pub description: &'static str,
    /// Parameter values as expressions in the free parameter "a".
    pub alpha: &'static str,
    pub beta: &'static str,
    pub x: &'static str,
    pub gens: &'static [GenSym],
    pub expected: ExpectedQuotient,
    /// Expressions in "a" that must not vanish at sampled instances.
    pub exclusions: &'static [&'static str],
}

/// The expected nontrivial proper ideals of the 3-dimensional symmetric
/// family, with the parameter conditions under which each occurs.
pub fn ideal_rows() -> Vec<IdealRow> {
    vec![
        IdealRow {
            description: "<v_alpha> at beta = -1, x = -1/2",
            alpha: "a",
            beta: "-1",
            x: "-1/2",
            gens: &[GenSym::VAlpha],
            expected: ExpectedQuotient::TwoBBeta,
            exclusions: &["a", "a-1", "a+1", "2*a-1"],
        },
        IdealRow {
            description: "<v_alpha> at beta = 1/2, x = 1",
            alpha: "a",
            beta: "1/2",
            x: "1",
            gens: &[GenSym::VAlpha],
            expected: ExpectedQuotient::TwoBBeta,
            exclusions: &["a", "a-1", "2*a-1"],
        },
        IdealRow {
            description: "<v_beta> at beta = 1/2, x = a/(1-a)",
            alpha: "a",
            beta: "1/2",
            x: "a/(1-a)",
            gens: &[GenSym::VBeta],
            expected: ExpectedQuotient::TwoBAlpha,
            exclusions: &["a", "a-1", "2*a-1", "a+1"],
        },
        IdealRow {
            description: "<a0, v_alpha> at beta = 0, x = 0",
            alpha: "a",
            beta: "0",
            x: "0",
            gens: &[GenSym::A0, GenSym::VAlpha],
            expected: ExpectedQuotient::OneA,
            exclusions: &["a", "a-1"],
        },
        IdealRow {
            description: "<a0, v_beta> at alpha = 0, beta = 1/2, x = 0",
            alpha: "0",
            beta: "1/2",
            x: "0",
            gens: &[GenSym::A0, GenSym::VBeta],
            expected: ExpectedQuotient::OneA,
            exclusions: &[],
        },
        IdealRow {
            description: "<v_alpha, v_beta> at beta = 1/2, x = 1",
            alpha: "a",
            beta: "1/2",
            x: "1",
            gens: &[GenSym::VAlpha, GenSym::VBeta],
            expected: ExpectedQuotient::OneA,
            exclusions: &["a", "a-1", "2*a-1"],
        },
        IdealRow {
            description: "<v_alpha, v_beta> at beta = 2 - 3a, x = 1",
            alpha: "a",
            beta: "2-3*a",
            x: "1",
            gens: &[GenSym::VAlpha, GenSym::VBeta],
            expected: ExpectedQuotient::OneA,
            exclusions: &["a", "a-1", "2*a-1", "4*a-2", "3*a-1", "2-3*a", "1-3*a"],
        },
        IdealRow {
            description: "<v_alpha, v_beta> at beta = 0, x = 1",
            alpha: "a",
            beta: "0",
            x: "1",
            gens: &[GenSym::VAlpha, GenSym::VBeta],
            expected: ExpectedQuotient::OneA,
            exclusions: &["a", "a-1", "a-2"],
        },
    ]
}

#[derive(Clone, Debug)]
pub struct IdealRowResult {
    pub description: String,
    pub symbolic_ok: bool,
    pub instances_ok: bool,
    pub detail: String,
}

impl IdealRowResult {
    pub fn passed(&self) -> bool {
        self.symbolic_ok && self.instances_ok
    }
}

fn resolve_gens(entry: &CatalogEntry, gens: &[GenSym]) -> Result<Vec<Vect>, AlgebraError> {
    let (va, vb) = eigvecs(entry)?;
    Ok(gens
        .iter()
        .map(|g| match g {
            GenSym::A0 => Vect::unit(3, 0),
            GenSym::VAlpha => va.clone(),
            GenSym::VBeta => vb.clone(),
        })
        .collect())
}

/// Check one parameter point (symbolic or rational) of an ideal row:
/// the generators close up to their own span, the ideal is proper and
/// nontrivial, and the quotient is marked-isomorphic to the expectation.
fn check_row_at(
    row: &IdealRow,
    alpha: &Scalar,
    beta: &Scalar,
    x: &Scalar,
) -> Result<(), String> {
    let entry =
        alg_3dim_a_generic_x(alpha, beta, x).map_err(|e| format!("constructor: {e}"))?;
    let gens = resolve_gens(&entry, row.gens).map_err(|e| format!("gens: {e}"))?;
    let span = Subspace::from_vectors(3, &gens, Certificate::new());
    let closed = entry.algebra.ideal_closure(&gens);
    if closed.dim() != span.dim() {
        return Err(format!(
            "closure grew from dim {} to dim {}",
            span.dim(),
            closed.dim()
        ));
    }
    if closed.dim() == 0 || closed.dim() == 3 {
        return Err(format!("ideal not proper nontrivial (dim {})", closed.dim()));
    }
    let (q, proj) = entry
        .algebra
        .quotient(&closed)
        .map_err(|e| format!("quotient: {e}"))?;
    let images: Vec<Vect> = entry.axes.iter().map(|a| proj.mul_vec(a)).collect();
    let expected = match row.expected {
        ExpectedQuotient::OneA => alg_1a(),
        ExpectedQuotient::TwoBAlpha => {
            alg_2b(alpha).map_err(|e| format!("expected algebra: {e}"))?
        }
        ExpectedQuotient::TwoBBeta => {
            alg_2b(beta).map_err(|e| format!("expected algebra: {e}"))?
        }
    };
    if q.dim() != expected.algebra.dim() {
        return Err(format!(
            "quotient dim {} but expected {}",
            q.dim(),
            expected.algebra.dim()
        ));
    }
    match marked_iso(&q, &images, &expected.algebra, &expected.axes, true) {
        Some(_) => Ok(()),
        None => Err("quotient not marked-isomorphic to the expected algebra".into()),
    }
}

/// Verify every ideal row symbolically in its free parameter plus three
/// seeded random rational instances, and run the generic negative control.
pub fn verify_ideal_table(seed: u64) -> Vec<IdealRowResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for row in ideal_rows() {
        let sym = |t: &str| -> Scalar { sc(t) };
        let symbolic = check_row_at(&row, &sym(row.alpha), &sym(row.beta), &sym(row.x));
        let mut instance_err = None;
        let mut found = 0;
        let mut guard = 0;
        while found < 3 && guard < 500 {
            guard += 1;
            let num = rng.gen_range(-8i64..=8);
            let den = rng.gen_range(1i64..=4);
            let a = Scalar::from_rat(rat(num, den));
            let at: crate::field::ParamAssignment =
                [("a".to_string(), rat(num, den))].into();
            if row
                .exclusions
                .iter()
                .any(|e| sc(e).eval(&at).map(|v| v == rat(0, 1)).unwrap_or(true))
            {
                continue;
            }
            let subst = |t: &str| -> Result<Scalar, FieldError> { sc(t).specialize(&at) };
            let (Ok(alpha), Ok(beta), Ok(x)) =
                (subst(row.alpha), subst(row.beta), subst(row.x))
            else {
                continue;
            };
            // guard the constructor preconditions at the sampled point
            if alpha == Scalar::one() || beta == Scalar::one() || alpha == beta {
                continue;
            }
            let _ = &a;
            found += 1;
            if let Err(e) = check_row_at(&row, &alpha, &beta, &x) {
                instance_err = Some(format!("at a = {}: {}", Scalar::from_rat(rat(num, den)), e));
                break;
            }
        }
        out.push(IdealRowResult {
            description: row.description.to_string(),
            symbolic_ok: symbolic.is_ok(),
            instances_ok: instance_err.is_none() && found == 3,
            detail: symbolic
                .err()
                .or(instance_err)
                .unwrap_or_else(|| "ok".into()),
        });
    }
    // negative control: at generic parameters no 1-dimensional eigenvector
    // ideal exists
    let entry = alg_3dim_a_generic_x(&sc("a"), &sc("b"), &sc("x")).unwrap();
    let (va, _) = eigvecs(&entry).unwrap();
    let closed = entry.algebra.ideal_closure(&[va]);
    out.push(IdealRowResult {
        description: "negative control: <v_alpha> at generic parameters".into(),
        symbolic_ok: closed.dim() > 1,
        instances_ok: true,
        detail: format!("closure dim {}", closed.dim()),
    });
    out
}

/// The two expected ideals of the cyclically graded family (BetaHalf
/// variant, symbolic free parameter): <v_alpha> with quotient 2B(1/2) and
/// <v_alpha, v_beta> with quotient 1A.
pub fn verify_d_ideals() -> Result<Vec<IdealRowResult>, AlgebraError> {
    let entry = alg_3dim_d(DVariant::BetaHalf, &sc("a"))?;
    let (va, vb) = eigvecs(&entry)?;
    let mut out = Vec::new();
    for (desc, gens, expected_dim, expected) in [
        (
            "<v_alpha> in the cyclic family",
            vec![va.clone()],
            2usize,
            Some(alg_2b(&sc("1/2"))?),
        ),
        (
            "<v_alpha, v_beta> in the cyclic family",
            vec![va.clone(), vb.clone()],
            1usize,
            None,
        ),
    ] {
        let span = Subspace::from_vectors(3, &gens, Certificate::new());
        let closed = entry.algebra.ideal_closure(&gens);
        let mut ok = closed.dim() == span.dim();
        let mut detail = String::from("ok");
        if !ok {
            detail = format!("closure grew to dim {}", closed.dim());
        } else {
            let (q, proj) = entry.algebra.quotient(&closed)?;
            if q.dim() != expected_dim {
                ok = false;
                detail = format!("quotient dim {}", q.dim());
            } else {
                let images: Vec<Vect> =
                    entry.axes.iter().map(|a| proj.mul_vec(a)).collect();
                let exp = expected.unwrap_or_else(alg_1a);
                if marked_iso(&q, &images, &exp.algebra, &exp.axes, true).is_none() {
                    ok = false;
                    detail = "quotient not marked-isomorphic".into();
                }
            }
        }
        out.push(IdealRowResult {
            description: desc.into(),
            symbolic_ok: ok,
            instances_ok: true,
            detail,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_shapes() {
        let a = sc("a");
        let b = sc("b");
        let la = law_a(&a, &b).unwrap();
        assert_eq!(
            la.entry(2, 2).iter().copied().collect::<Vec<_>>(),
            vec![0, 1]
        );
        let ld = law_d(&a, &b).unwrap();
        assert_eq!(ld.entry(1, 1).iter().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(ld.entry(1, 2).iter().copied().collect::<Vec<_>>(), vec![0]);
        let jg = jordan_generic(&a, &b).unwrap();
        assert_eq!(jg.entry(1, 1).iter().copied().collect::<Vec<_>>(), vec![1]);
        let jt = jordan_type(&sc("1/4")).unwrap();
        assert_eq!(jt.labels()[1], Scalar::zero());
        assert!(law_c(&a, &b).unwrap().checks().one_is_unit);
        assert!(two_eval(&sc("a")).is_ok());
        assert!(matches!(
            two_eval(&Scalar::one()),
            Err(FusionError::DuplicateEigenvalue(_))
        ));
        assert!(matches!(law_a(&a, &a), Err(FusionError::DuplicateEigenvalue(_))));
    }

    #[test]
    fn constructor_preconditions() {
        assert!(matches!(
            alg_2b(&Scalar::one()),
            Err(AlgebraError::BadParameter(_))
        ));
        assert!(matches!(
            alg_3dim_a(&sc("a"), &sc("a"), &sc("1")),
            Err(AlgebraError::BadParameter(_))
        ));
        // off the admissible slice with beta != 1/2
        assert!(matches!(
            alg_3dim_a(&sc("a"), &sc("1/3"), &sc("7")),
            Err(AlgebraError::BadParameter(_))
        ));
        // on the slice is fine
        assert!(alg_3dim_a(&sc("a"), &sc("b"), &sc("(a+b)/(2*(1-a))")).is_ok());
        // beta = 1/2 frees x
        assert!(alg_3dim_a(&sc("a"), &sc("1/2"), &sc("x")).is_ok());
        assert!(matches!(
            alg_3dim_d(DVariant::BetaHalf, &sc("1/2")),
            Err(AlgebraError::BadParameter(_))
        ));
    }

    #[test]
    fn products_match_closed_forms() {
        let e = alg_3dim_a(&sc("a"), &sc("1/2"), &sc("x")).unwrap();
        let a0 = Vect::unit(3, 0);
        let m = Vect::unit(3, 2);
        // a0*m = (a-1)(b-1)x a0 - ab a1 + (a+b) m at b = 1/2 equals
        // 1/2((1-a)x a0 - a a1 + (2a+1) m)
        let got = e.algebra.product(&a0, &m);
        let want = Vect::new(vec![
            sc("((1-a)*x)/2"),
            sc("-a/2"),
            sc("(2*a+1)/2"),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn slice_product_presentations_agree() {
        // on x = (a+b)/(2(1-a)) the products collapse to the short forms
        let e = alg_3dim_a(&sc("a"), &sc("b"), &sc("(a+b)/(2*(1-a))")).unwrap();
        let a0 = Vect::unit(3, 0);
        let m = Vect::unit(3, 2);
        let got = e.algebra.product(&a0, &m);
        let want = Vect::new(vec![
            sc("(1-b)*(a+b)/2"),
            sc("-a*b"),
            sc("a+b"),
        ]);
        assert_eq!(got, want);
        let got_mm = e.algebra.product(&m, &m);
        let c = sc("(1-3*a-b)*(a+b)/2").mul(&sc("b"));
        let want_mm = Vect::new(vec![
            c.clone(),
            c,
            sc("(3*a^2+6*a*b+a+3*b^2-b)/2"),
        ]);
        assert_eq!(got_mm, want_mm);
    }

    #[test]
    fn eigvecs_are_eigenvectors() {
        let e = alg_3dim_a(&sc("a"), &sc("1/2"), &sc("x")).unwrap();
        let (va, vb) = eigvecs(&e).unwrap();
        let a0 = Vect::unit(3, 0);
        assert_eq!(e.algebra.product(&a0, &va), va.scale(&sc("a")));
        assert_eq!(e.algebra.product(&a0, &vb), vb.scale(&sc("1/2")));
        assert_eq!(
            e.algebra.product(&a0, &va.scale(&sc("2"))),
            va.scale(&sc("2*a"))
        );
    }

    #[test]
    fn entries_verify() {
        for entry in [
            alg_1a(),
            alg_2b(&sc("a")).unwrap(),
            alg_3dim_a(&sc("a"), &sc("1/2"), &sc("x")).unwrap(),
            alg_3dim_a(&sc("a"), &sc("b"), &sc("(a+b)/(2*(1-a))")).unwrap(),
            alg_3dim_d(DVariant::BetaHalf, &sc("a")).unwrap(),
            alg_3dim_d(DVariant::AlphaHalf, &sc("b")).unwrap(),
        ] {
            let r = verify_entry(&entry).unwrap();
            assert!(r.passed(), "{} failed: {:?}", entry.name, r);
        }
    }

    #[test]
    fn identity_suite_all_hold() {
        for entry in [
            alg_3dim_a(&sc("a"), &sc("1/2"), &sc("x")).unwrap(),
            alg_3dim_a(&sc("a"), &sc("b"), &sc("(a+b)/(2*(1-a))")).unwrap(),
            alg_3dim_d(DVariant::BetaHalf, &sc("a")).unwrap(),
        ] {
            for r in identity_suite(&entry).unwrap() {
                assert!(
                    r.holds,
                    "{} in {}: residual {}",
                    r.name, entry.name, r.residual
                );
            }
        }
    }

    #[test]
    fn ideal_table_verifies() {
        for r in verify_ideal_table(42) {
            assert!(r.passed(), "{}: {}", r.description, r.detail);
        }
        for r in verify_d_ideals().unwrap() {
            assert!(r.passed(), "{}: {}", r.description, r.detail);
        }
    }

    #[test]
    fn alt_square_candidate_fails_fusion() {
        let good = alg_3dim_d(DVariant::BetaHalf, &sc("a")).unwrap();
        let bad = alg_3dim_d_alt_square(&sc("a")).unwrap();
        let rg = good
            .algebra
            .check_axis(&good.axes[0], &good.law, true)
            .unwrap();
        assert!(rg.passed());
        let rb = bad
            .algebra
            .check_axis(&bad.axes[0], &bad.law, true)
            .unwrap();
        assert!(!rb.passed());
    }
}
