//! Exact rational scalars.
//!
//! All arithmetic in the crate is carried out over `BigRational`, which keeps
//! every value in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Canonical text form: `"p"` when the denominator is 1, otherwise `"p/q"`,
/// with the sign carried by the numerator.
pub fn to_string(x: &Scalar) -> String {
    x.to_string()
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`. Whitespace, `+` signs and negative
/// denominators are rejected.
pub fn parse(s: &str) -> Result<Scalar> {
    let bad = || Error::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let valid = |t: &str, signed: bool| {
        let digits = if signed {
            t.strip_prefix('-').unwrap_or(t)
        } else {
            t
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// True when `s` is exactly the canonical rendering of its value.
pub fn is_canonical(s: &str) -> bool {
    parse(s).map(|v| to_string(&v) == s).unwrap_or(false)
}

pub fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(to_string(&ratio(6, 4)), "3/2");
        assert_eq!(to_string(&ratio(6, -4)), "-3/2");
        assert_eq!(to_string(&ratio(-8, -4)), "2");
        assert_eq!(to_string(&zero()), "0");
        assert!(is_canonical("-3/2"));
        assert!(!is_canonical("6/4"));
        assert!(!is_canonical("3/-2"));
        assert!(!is_canonical("2/1"));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "/", "1/", "/2", "1/0", "a", "1.5", " 1", "1/-2", "--1", "+1"] {
            assert!(parse(s).is_err(), "{s:?} should be rejected");
        }
        assert_eq!(parse("-0").unwrap(), zero());
        assert_eq!(parse("10/4").unwrap(), ratio(5, 2));
    }

    proptest! {
        #[test]
        fn normalized_and_invertible(p in -10_000i64..10_000, q in 1i64..10_000) {
            let x = ratio(p, q);
            prop_assert!(x.denom() > &BigInt::zero());
            let g = num_integer::gcd(x.numer().clone(), x.denom().clone());
            prop_assert!(g.is_one());
            prop_assert_eq!(parse(&to_string(&x)).unwrap(), x.clone());
            if !x.is_zero() {
                prop_assert_eq!(&x * x.recip(), one());
            }
        }
    }
}
