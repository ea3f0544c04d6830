//! Rational scalars and their `"num/den"` string form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Formats as `"num/den"`, including a `/1` for integers.
pub fn to_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `"num/den"` or a bare integer.
pub fn parse(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_sign_and_gcd() {
        let x = parse("4/-6").unwrap();
        assert_eq!(to_string(&x), "-2/3");
        assert_eq!(parse("7").unwrap(), q(7));
        assert_eq!(to_string(&q(3)), "3/1");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
