//! Multivariate polynomials over Q in named parameters.
//!
//! Canonical form: variables sorted by name, every stored variable occurs in
//! some term, no zero coefficients, terms ordered graded-lexicographically.
//! Two polynomials are equal iff their representations are identical.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Signed, Zero};

use super::rational::{rat_gcd, Rat};

/// Exponent vector; length always matches the owning polynomial's var list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn product(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

// Graded lexicographic: first by total degree, then a higher exponent on an
// earlier variable wins.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { vars: vec![], terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(vec![]), c);
        }
        MultiPoly { vars: vec![], terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono(vec![1]), Rat::one());
        MultiPoly { vars: vec![name.to_string()], terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms_iter(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::total_degree).max().unwrap_or(0)
    }

    /// Leading (graded-lex maximal) term.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    /// Drop vars that no longer occur and sort the remaining ones.
    fn canonicalize(vars: Vec<String>, terms: BTreeMap<Mono, Rat>) -> Self {
        let n = vars.len();
        let mut used = vec![false; n];
        for (m, c) in &terms {
            if c.is_zero() {
                continue;
            }
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    used[i] = true;
                }
            }
        }
        let mut order: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        order.sort_by(|&a, &b| vars[a].cmp(&vars[b]));
        let new_vars: Vec<String> = order.iter().map(|&i| vars[i].clone()).collect();
        let mut new_terms = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            let nm = Mono(order.iter().map(|&i| m.0[i]).collect());
            new_terms.insert(nm, c);
        }
        MultiPoly { vars: new_vars, terms: new_terms }
    }

    /// Re-express both polynomials over the union of their variable lists.
    fn align(a: &MultiPoly, b: &MultiPoly) -> (Vec<String>, BTreeMap<Mono, Rat>, BTreeMap<Mono, Rat>) {
        let mut names: BTreeSet<&String> = a.vars.iter().collect();
        names.extend(b.vars.iter());
        let vars: Vec<String> = names.into_iter().cloned().collect();
        let remap = |p: &MultiPoly| {
            let idx: Vec<usize> = p
                .vars
                .iter()
                .map(|v| vars.iter().position(|w| w == v).unwrap())
                .collect();
            p.terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0u32; vars.len()];
                    for (k, &i) in idx.iter().enumerate() {
                        e[i] = m.0[k];
                    }
                    (Mono(e), c.clone())
                })
                .collect::<BTreeMap<_, _>>()
        };
        let (ta, tb) = (remap(a), remap(b));
        (vars, ta, tb)
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let (vars, mut ta, tb) = Self::align(self, other);
        for (m, c) in tb {
            let e = ta.entry(m).or_insert_with(Rat::zero);
            *e += c;
        }
        Self::canonicalize(vars, ta)
    }

    pub fn neg(&self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        let (vars, ta, tb) = Self::align(self, other);
        let mut out: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (ma, ca) in &ta {
            for (mb, cb) in &tb {
                let m = ma.product(mb);
                let e = out.entry(m).or_insert_with(Rat::zero);
                *e += ca * cb;
            }
        }
        Self::canonicalize(vars, out)
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn divexact(&self, other: &MultiPoly) -> Option<MultiPoly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        let (vars, ta, tb) = Self::align(self, other);
        let nb = vars.len();
        let b = MultiPoly { vars: vars.clone(), terms: tb };
        let (lb, cb) = {
            let (m, c) = b.terms.iter().next_back().unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = MultiPoly { vars: vars.clone(), terms: ta };
        let mut quo: BTreeMap<Mono, Rat> = BTreeMap::new();
        while !rem.is_zero() {
            // rem may have been canonicalized to fewer vars; re-align.
            let (_, tr, _) = Self::align(&rem, &b);
            let rem_full = MultiPoly { vars: vars.clone(), terms: tr };
            let (la, ca) = {
                let (m, c) = rem_full.terms.iter().next_back().unwrap();
                (m.clone(), c.clone())
            };
            debug_assert_eq!(la.0.len(), nb);
            if !lb.divides(&la) {
                return None;
            }
            let qm = la.quotient(&lb);
            let qc = ca / &cb;
            let t = MultiPoly {
                vars: vars.clone(),
                terms: BTreeMap::from([(qm.clone(), qc.clone())]),
            };
            rem = rem_full.sub(&t.mul(&b));
            quo.insert(qm, qc);
        }
        Some(Self::canonicalize(vars, quo))
    }

    /// Rational content: gcd of the coefficients, sign taken from the
    /// leading coefficient.
    pub fn rat_content(&self) -> Rat {
        let mut g = Rat::zero();
        for c in self.terms.values() {
            g = rat_gcd(&g, c);
        }
        if self.leading_coeff().is_negative() {
            -g
        } else {
            g
        }
    }

    pub fn eval(&self, at: &BTreeMap<String, Rat>) -> Option<Rat> {
        let vals: Option<Vec<&Rat>> = self.vars.iter().map(|v| at.get(v)).collect();
        let vals = vals?;
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= vals[i];
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Rename variables; `map` must be injective on this polynomial's vars.
    pub fn rename_vars(&self, map: &BTreeMap<String, String>) -> MultiPoly {
        let vars: Vec<String> = self
            .vars
            .iter()
            .map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone()))
            .collect();
        Self::canonicalize(vars, self.terms.clone())
    }

    // ---- gcd machinery ----

    /// View as univariate in `self.vars[k]` with MultiPoly coefficients in
    /// the remaining vars. Returns dense coefficient list by degree.
    fn to_univariate(&self, k: usize) -> Vec<MultiPoly> {
        let deg = self.terms.keys().map(|m| m.0[k]).max().unwrap_or(0) as usize;
        let mut coeffs: Vec<BTreeMap<Mono, Rat>> = vec![BTreeMap::new(); deg + 1];
        let rest_vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, v)| v.clone())
            .collect();
        for (m, c) in &self.terms {
            let d = m.0[k] as usize;
            let e: Vec<u32> = m
                .0
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, &x)| x)
                .collect();
            coeffs[d].insert(Mono(e), c.clone());
        }
        coeffs
            .into_iter()
            .map(|t| Self::canonicalize(rest_vars.clone(), t))
            .collect()
    }

    fn from_univariate(coeffs: &[MultiPoly], var: &str) -> MultiPoly {
        let x = MultiPoly::var(var);
        let mut acc = MultiPoly::zero();
        for (d, c) in coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&x.pow(d as u32)));
        }
        acc
    }

    pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let g = Self::gcd_inner(a, b);
        if g.is_zero() {
            return g;
        }
        // Unique representative: scale so the leading coefficient is 1.
        let lc = g.leading_coeff();
        g.scale(&(Rat::one() / lc))
    }

    fn gcd_inner(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.is_constant() || b.is_constant() {
            return MultiPoly::one();
        }
        let (vars, ta, tb) = Self::align(a, b);
        let k = vars.len() - 1;
        let a = MultiPoly { vars: vars.clone(), terms: ta };
        let b = MultiPoly { vars: vars.clone(), terms: tb };
        let ua = a.to_univariate(k);
        let ub = b.to_univariate(k);
        let ca = uni_content(&ua);
        let cb = uni_content(&ub);
        let pa = uni_strip_rat_content(uni_div_poly(&ua, &ca));
        let pb = uni_strip_rat_content(uni_div_poly(&ub, &cb));
        let gp = uni_primitive_gcd(pa, pb);
        let cg = Self::gcd_inner(&ca, &cb);
        Self::from_univariate(&gp, &vars[k]).mul(&cg)
    }
}

fn uni_deg(f: &[MultiPoly]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

fn uni_trim(mut f: Vec<MultiPoly>) -> Vec<MultiPoly> {
    while matches!(f.last(), Some(c) if c.is_zero()) {
        f.pop();
    }
    f
}

fn uni_content(f: &[MultiPoly]) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in f {
        g = MultiPoly::gcd_inner(&g, c);
    }
    if g.is_zero() {
        MultiPoly::one()
    } else {
        let lc = g.leading_coeff();
        g.scale(&(Rat::one() / lc))
    }
}

fn uni_div_poly(f: &[MultiPoly], d: &MultiPoly) -> Vec<MultiPoly> {
    f.iter()
        .map(|c| c.divexact(d).expect("content must divide"))
        .collect()
}

/// Divide out the rational content common to all coefficients; keeps the
/// numbers in a pseudo-remainder sequence from exploding.
fn uni_strip_rat_content(f: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut g = Rat::zero();
    for c in &f {
        for (_, r) in c.terms_iter() {
            g = rat_gcd(&g, r);
        }
    }
    if g.is_zero() || g.is_one() {
        return f;
    }
    let inv = Rat::one() / g;
    f.into_iter().map(|c| c.scale(&inv)).collect()
}

fn uni_scale(f: &[MultiPoly], s: &MultiPoly) -> Vec<MultiPoly> {
    f.iter().map(|c| c.mul(s)).collect()
}

fn uni_sub(f: &[MultiPoly], g: &[MultiPoly]) -> Vec<MultiPoly> {
    let n = f.len().max(g.len());
    let z = MultiPoly::zero();
    let out: Vec<MultiPoly> = (0..n)
        .map(|i| f.get(i).unwrap_or(&z).sub(g.get(i).unwrap_or(&z)))
        .collect();
    uni_trim(out)
}

/// Pseudo-remainder of f by g in the main variable.
fn uni_prem(f: &[MultiPoly], g: &[MultiPoly]) -> Vec<MultiPoly> {
    let df = match uni_deg(f) {
        Some(d) => d,
        None => return vec![],
    };
    let dg = uni_deg(g).expect("prem by zero");
    if df < dg {
        return f.to_vec();
    }
    let lg = g[dg].clone();
    let mut r = uni_scale(f, &lg.pow((df - dg + 1) as u32));
    r = uni_trim(r);
    while let Some(dr) = uni_deg(&r) {
        if dr < dg {
            break;
        }
        let q = r[dr].divexact(&lg).expect("pseudo-division step");
        // subtract q * x^(dr-dg) * g
        let mut shifted = vec![MultiPoly::zero(); dr - dg];
        shifted.extend(g.iter().map(|c| c.mul(&q)));
        r = uni_sub(&r, &shifted);
    }
    r
}

fn uni_primitive_gcd(mut f: Vec<MultiPoly>, mut g: Vec<MultiPoly>) -> Vec<MultiPoly> {
    loop {
        let df = uni_deg(&f);
        let dg = uni_deg(&g);
        match (df, dg) {
            (None, _) => return g,
            (_, None) => return f,
            (Some(a), Some(b)) if a < b => {
                std::mem::swap(&mut f, &mut g);
            }
            _ => {}
        }
        let dg = uni_deg(&g).unwrap();
        if dg == 0 {
            // g is a nonzero content-free constant in the main variable
            return vec![MultiPoly::one()];
        }
        let r = uni_prem(&f, &g);
        if uni_deg(&r).is_none() {
            // make g primitive before returning
            let c = uni_content(&g);
            return uni_div_poly(&g, &c);
        }
        let c = uni_content(&r);
        f = g;
        g = uni_strip_rat_content(uni_div_poly(&r, &c));
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let ac = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const_term = m.0.iter().all(|&e| e == 0);
            if is_const_term {
                write!(f, "{}", ac)?;
            } else {
                let mut wrote = false;
                if !ac.is_one() {
                    write!(f, "{}", ac)?;
                    wrote = true;
                }
                for (i, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if wrote {
                        write!(f, "*")?;
                    }
                    wrote = true;
                    if e == 1 {
                        write!(f, "{}", self.vars[i])?;
                    } else {
                        write!(f, "{}^{}", self.vars[i], e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{rat, rat_int};

    fn v(n: &str) -> MultiPoly {
        MultiPoly::var(n)
    }

    #[test]
    fn canonical_ordering() {
        let a = v("a");
        let b = v("b");
        // a^2 - b^2
        let p = a.mul(&a).sub(&b.mul(&b));
        assert_eq!(p.to_string(), "a^2 - b^2");
        let q = b.mul(&b).neg().add(&a.mul(&a));
        assert_eq!(p, q);
    }

    #[test]
    fn gcd_difference_of_squares() {
        let a = v("a");
        let b = v("b");
        let num = a.mul(&a).sub(&b.mul(&b));
        let den = a.sub(&b);
        let g = MultiPoly::gcd(&num, &den);
        assert_eq!(g, den); // a - b is monic already
        assert_eq!(num.divexact(&g).unwrap(), a.add(&b));
    }

    #[test]
    fn gcd_with_content() {
        // gcd(2a^2+2ab, 4a) should be associate to a
        let a = v("a");
        let b = v("b");
        let p = a.mul(&a).scale(&rat_int(2)).add(&a.mul(&b).scale(&rat_int(2)));
        let q = a.scale(&rat_int(4));
        let g = MultiPoly::gcd(&p, &q);
        assert_eq!(g, a);
    }

    #[test]
    fn divexact_failure() {
        let a = v("a");
        let b = v("b");
        assert!(a.divexact(&b).is_none());
        assert!(a.add(&MultiPoly::one()).divexact(&a).is_none());
    }

    #[test]
    fn eval_homomorphism() {
        let a = v("a");
        let b = v("b");
        let p = a.mul(&b).add(&MultiPoly::constant(rat(1, 2)));
        let at = BTreeMap::from([("a".to_string(), rat_int(2)), ("b".to_string(), rat(1, 3))]);
        assert_eq!(p.eval(&at).unwrap(), rat(7, 6));
    }

    #[test]
    fn display_matches_grammar() {
        let p = v("a").pow(2).mul(&v("b")).scale(&rat_int(3)).sub(&MultiPoly::constant(rat(1, 2)));
        assert_eq!(p.to_string(), "3*a^2*b - 1/2");
    }
}
