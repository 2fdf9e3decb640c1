//! Arbitrary-precision rationals, kept in lowest terms with positive
//! denominator. Thin layer over `num::BigRational`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Parse "p", "-p" or "p/q".
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rat::from(p))
        }
    }
}

/// gcd of two rationals as content helper: gcd(a/b, c/d) = gcd(a,c)/lcm(b,d).
/// Returns a positive rational r such that x/r and y/r are "coprime" integers
/// scaled consistently; gcd(0, 0) = 0.
pub fn rat_gcd(x: &Rat, y: &Rat) -> Rat {
    if x.is_zero() {
        return y.abs();
    }
    if y.is_zero() {
        return x.abs();
    }
    let num = num::integer::gcd(x.numer().clone(), y.numer().clone());
    let den = num::integer::lcm(x.denom().clone(), y.denom().clone());
    Rat::new(num, den).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-4").unwrap(), rat_int(-4));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(format!("{}", rat(-2, 4)), "-1/2");
    }

    #[test]
    fn gcd_content() {
        assert_eq!(rat_gcd(&rat(2, 3), &rat(4, 9)), rat(2, 9));
        assert_eq!(rat_gcd(&rat_int(0), &rat(-1, 2)), rat(1, 2));
    }
}
