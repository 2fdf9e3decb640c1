//! Elements of Q(parameters), optionally extended by a primitive cube root
//! of unity w with w^2 + w + 1 = 0.
//!
//! Canonical form: value = (num + omega*w) / den with gcd(num, omega, den)
//! a unit and den monic in graded lex. Two scalars are equal iff their
//! representations are identical. The omega component being `Some` marks
//! extension mode; arithmetic between modes is a programming error and
//! panics. Use `lift_omega` to convert explicitly.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use super::poly::MultiPoly;
use super::rational::{parse_rat, Rat};

/// Maps each parameter name to a rational value.
pub type ParamAssignment = BTreeMap<String, Rat>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the given assignment")]
    DenominatorVanishes,
    #[error("value has a nonzero omega part, no rational evaluation")]
    OmegaUnevaluable,
    #[error("assignment missing parameter {0}")]
    MissingParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Scalar {
    num: MultiPoly,
    den: MultiPoly,
    omega: Option<MultiPoly>,
}

impl Scalar {
    pub fn normalize(
        num: MultiPoly,
        den: MultiPoly,
        omega: Option<MultiPoly>,
    ) -> Result<Scalar, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        // constant denominator: no gcd to take, just fold it into the
        // numerator (dominant case, keeps polynomial workloads fast)
        if den.is_constant() {
            let lc = den.leading_coeff();
            if lc.is_one() {
                return Ok(Scalar { num, den, omega });
            }
            let inv = Rat::one() / lc;
            return Ok(Scalar {
                num: num.scale(&inv),
                den: MultiPoly::one(),
                omega: omega.map(|o| o.scale(&inv)),
            });
        }
        let mut g = MultiPoly::gcd(&num, &den);
        if let Some(o) = &omega {
            g = MultiPoly::gcd(&g, o);
        }
        let (mut num, mut den, mut omega) = if g.is_zero() {
            (num, den, omega)
        } else {
            (
                num.divexact(&g).unwrap(),
                den.divexact(&g).unwrap(),
                omega.map(|o| o.divexact(&g).unwrap()),
            )
        };
        // gcd of constants is 1, so plain rational content survives; fold it
        // into the numerator by making the denominator monic.
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
            omega = omega.map(|o| o.scale(&inv));
        }
        Ok(Scalar { num, den, omega })
    }

    fn build(num: MultiPoly, den: MultiPoly, omega: Option<MultiPoly>) -> Scalar {
        Scalar::normalize(num, den, omega).expect("nonzero denominator")
    }

    pub fn zero() -> Scalar {
        Scalar { num: MultiPoly::zero(), den: MultiPoly::one(), omega: None }
    }

    pub fn one() -> Scalar {
        Scalar { num: MultiPoly::one(), den: MultiPoly::one(), omega: None }
    }

    pub fn from_rat(c: Rat) -> Scalar {
        Scalar { num: MultiPoly::constant(c), den: MultiPoly::one(), omega: None }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rat(Rat::from(num::BigInt::from(n)))
    }

    pub fn param(name: &str) -> Scalar {
        Scalar { num: MultiPoly::var(name), den: MultiPoly::one(), omega: None }
    }

    pub fn from_poly(p: MultiPoly) -> Scalar {
        Scalar { num: p, den: MultiPoly::one(), omega: None }
    }

    /// The extension generator w itself.
    pub fn omega() -> Scalar {
        Scalar {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
            omega: Some(MultiPoly::one()),
        }
    }

    /// w^2 = -1 - w.
    pub fn omega_sq() -> Scalar {
        Scalar {
            num: MultiPoly::constant(-Rat::one()),
            den: MultiPoly::one(),
            omega: Some(MultiPoly::constant(-Rat::one())),
        }
    }

    pub fn is_omega_mode(&self) -> bool {
        self.omega.is_some()
    }

    /// Zero in the same field mode as `self`.
    pub fn zero_like(&self) -> Scalar {
        if self.is_omega_mode() {
            Scalar::zero().lift_omega()
        } else {
            Scalar::zero()
        }
    }

    /// One in the same field mode as `self`.
    pub fn one_like(&self) -> Scalar {
        if self.is_omega_mode() {
            Scalar::one().lift_omega()
        } else {
            Scalar::one()
        }
    }

    /// Convert a plain scalar into extension mode (zero omega part).
    pub fn lift_omega(&self) -> Scalar {
        match &self.omega {
            Some(_) => self.clone(),
            None => Scalar {
                num: self.num.clone(),
                den: self.den.clone(),
                omega: Some(MultiPoly::zero()),
            },
        }
    }

    /// Drop a zero omega part; panics if the omega part is nonzero.
    pub fn drop_omega(&self) -> Scalar {
        match &self.omega {
            None => self.clone(),
            Some(o) => {
                assert!(o.is_zero(), "nonzero omega part cannot be dropped");
                Scalar { num: self.num.clone(), den: self.den.clone(), omega: None }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero() && self.omega.as_ref().map_or(true, |o| o.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one() || self == &Scalar::one().lift_omega()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn params(&self) -> Vec<String> {
        let mut names: Vec<String> = self.num.vars().to_vec();
        for v in self.den.vars() {
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
        if let Some(o) = &self.omega {
            for v in o.vars() {
                if !names.contains(v) {
                    names.push(v.clone());
                }
            }
        }
        names.sort();
        names
    }

    fn unify(a: &Scalar, b: &Scalar) -> bool {
        match (&a.omega, &b.omega) {
            (None, None) => false,
            (Some(_), Some(_)) => true,
            _ => panic!("mixed plain and omega-extension scalars"),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let ext = Scalar::unify(self, other);
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        let omega = if ext {
            let oa = self.omega.as_ref().unwrap();
            let ob = other.omega.as_ref().unwrap();
            Some(oa.mul(&other.den).add(&ob.mul(&self.den)))
        } else {
            None
        };
        Scalar::build(num, den, omega)
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
            omega: self.omega.as_ref().map(|o| o.neg()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        let ext = Scalar::unify(self, other);
        let den = self.den.mul(&other.den);
        if ext {
            let (n1, o1) = (&self.num, self.omega.as_ref().unwrap());
            let (n2, o2) = (&other.num, other.omega.as_ref().unwrap());
            // (n1 + o1 w)(n2 + o2 w), w^2 = -1 - w
            let oo = o1.mul(o2);
            let num = n1.mul(n2).sub(&oo);
            let omega = n1.mul(o2).add(&o1.mul(n2)).sub(&oo);
            Scalar::build(num, den, Some(omega))
        } else {
            Scalar::build(self.num.mul(&other.num), den, None)
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match &self.omega {
            None => Ok(Scalar::build(self.den.clone(), self.num.clone(), None)),
            Some(o) => {
                // 1/(n + o w) = (n - o - o w) / (n^2 - n o + o^2)
                let n = &self.num;
                let norm = n.mul(n).sub(&n.mul(o)).add(&o.mul(o));
                let num = self.den.mul(&n.sub(o));
                let omega = self.den.mul(&o.neg());
                Ok(Scalar::build(num, norm, Some(omega)))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Scalar, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = if self.is_omega_mode() {
            Scalar::one().lift_omega()
        } else {
            Scalar::one()
        };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn eval(&self, at: &ParamAssignment) -> Result<Rat, FieldError> {
        let missing = |p: &MultiPoly| {
            p.vars()
                .iter()
                .find(|v| !at.contains_key(*v))
                .cloned()
                .map(FieldError::MissingParameter)
        };
        for p in [&self.num, &self.den] {
            if let Some(e) = missing(p) {
                return Err(e);
            }
        }
        if let Some(o) = &self.omega {
            if let Some(e) = missing(o) {
                return Err(e);
            }
            if !o.eval(at).unwrap().is_zero() {
                return Err(FieldError::OmegaUnevaluable);
            }
        }
        let d = self.den.eval(at).unwrap();
        if d.is_zero() {
            return Err(FieldError::DenominatorVanishes);
        }
        Ok(self.num.eval(at).unwrap() / d)
    }

    /// Substitute rational values for a subset of parameters, keeping the
    /// rest symbolic. Fails if the denominator collapses to zero.
    pub fn specialize(&self, at: &ParamAssignment) -> Result<Scalar, FieldError> {
        let subst = |p: &MultiPoly| -> MultiPoly {
            let mut acc = p.clone();
            for (name, val) in at {
                acc = subst_var(&acc, name, val);
            }
            acc
        };
        let den = subst(&self.den);
        if den.is_zero() {
            return Err(FieldError::DenominatorVanishes);
        }
        Scalar::normalize(subst(&self.num), den, self.omega.as_ref().map(subst))
    }

    /// Rename parameters (used by semiautomorphism coefficient twists).
    pub fn rename_params(&self, map: &BTreeMap<String, String>) -> Scalar {
        Scalar::build(
            self.num.rename_vars(map),
            self.den.rename_vars(map),
            self.omega.as_ref().map(|o| o.rename_vars(map)),
        )
    }

    pub fn parse(input: &str) -> Result<Scalar, FieldError> {
        let mut p = Parser { chars: input.chars().collect(), pos: 0 };
        let s = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(FieldError::Parse(format!(
                "unexpected character '{}' at offset {}",
                p.chars[p.pos], p.pos
            )));
        }
        Ok(s)
    }
}

/// Substitute one variable by a rational constant.
fn subst_var(p: &MultiPoly, name: &str, val: &Rat) -> MultiPoly {
    if !p.vars().iter().any(|v| v == name) {
        return p.clone();
    }
    // p = sum_d c_d(rest) * name^d; reuse eval on the single variable via
    // polynomial composition: replace name by the constant polynomial.
    let target = MultiPoly::constant(val.clone());
    compose_var(p, name, &target)
}

fn compose_var(p: &MultiPoly, name: &str, value: &MultiPoly) -> MultiPoly {
    // Rebuild term by term; exponent of `name` becomes a power of `value`.
    let idx = match p.vars().iter().position(|v| v == name) {
        Some(i) => i,
        None => return p.clone(),
    };
    let mut acc = MultiPoly::zero();
    for (mono, coeff) in p.terms_iter() {
        let mut rest = MultiPoly::constant(coeff.clone());
        for (i, (&e, var)) in mono.0.iter().zip(p.vars()).enumerate() {
            if e == 0 {
                continue;
            }
            let factor = if i == idx { value.clone() } else { MultiPoly::var(var) };
            rest = rest.mul(&factor.pow(e));
        }
        acc = acc.add(&rest);
    }
    acc
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, FieldError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, FieldError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, FieldError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(FieldError::Parse("expected exponent".into()));
            }
            let e: i32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| FieldError::Parse("exponent overflow".into()))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, FieldError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(FieldError::Parse("expected ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                let r = parse_rat(&text)
                    .ok_or_else(|| FieldError::Parse(format!("bad number '{}'", text)))?;
                Ok(Scalar::from_rat(r))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric()
                        || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                Ok(Scalar::param(&name))
            }
            Some(c) => Err(FieldError::Parse(format!("unexpected character '{}'", c))),
            None => Err(FieldError::Parse("unexpected end of input".into())),
        }
    }
}

fn poly_frag(p: &MultiPoly) -> String {
    let s = p.to_string();
    if s.contains(' ') {
        format!("({})", s)
    } else {
        s
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_one = self.den == MultiPoly::one();
        let top = match &self.omega {
            Some(o) if !o.is_zero() => {
                let w = if o == &MultiPoly::one() {
                    "w".to_string()
                } else {
                    format!("{}*w", poly_frag(o))
                };
                if self.num.is_zero() {
                    w
                } else {
                    format!("{} + {}", self.num, w)
                }
            }
            _ => self.num.to_string(),
        };
        if den_one {
            write!(f, "{}", top)
        } else {
            let top = if top.contains(' ') { format!("({})", top) } else { top };
            write!(f, "{}/{}", top, poly_frag(&self.den))
        }
    }
}
