use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

/// Reduced fraction of arbitrary-precision integers with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical `num/den` text, denominator always written (`3/1`, `-1/2`).
pub fn fmt_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// The value as an `i64` when it is an integer that fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}

/// Serialize a rational as its canonical `num/den` string.
pub(crate) mod serde_text {
    use super::{fmt_rational, Rational};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_always_carries_denominator() {
        assert_eq!(fmt_rational(&int(3)), "3/1");
        assert_eq!(fmt_rational(&ratio(2, -4)), "-1/2");
        assert_eq!(fmt_rational(&int(0)), "0/1");
    }

    #[test]
    fn integrality() {
        assert_eq!(to_i64(&ratio(84, 2)), Some(42));
        assert_eq!(to_i64(&ratio(1, 2)), None);
    }
}
