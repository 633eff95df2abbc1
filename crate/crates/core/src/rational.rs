//! Exact scalar helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `num / den` in lowest terms. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_big(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// Canonical `num/den` rendering (denominator always present and positive).
pub fn format_rational(v: &BigRational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Parses `"7"`, `"-3/4"` or `"6/8"` (reduced on the way in).
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(from_big),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
    }
}

/// `C(n, 2)` as an exact rational.
pub fn choose2(n: u64) -> BigRational {
    from_big(BigInt::from(n) * BigInt::from(n.saturating_sub(1)) / BigInt::from(2))
}

/// `base^exp` with the empty-product convention `0^0 = 1`; negative
/// exponents invert.
pub fn pow(base: &BigRational, exp: i64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let mut acc = BigRational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Least common multiple of the denominators in `row`.
pub(crate) fn denominator_lcm<'a, I>(row: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigRational>,
{
    row.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_are_canonical() {
        assert_eq!(parse_rational("6/8"), Some(ratio(3, 4)));
        assert_eq!(parse_rational("-2"), Some(int(-2)));
        assert_eq!(parse_rational(" 1 / -2 "), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&ratio(-6, 8)), "-3/4");
        assert_eq!(format_rational(&int(5)), "5/1");
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(pow(&int(0), 0), int(1));
        assert_eq!(pow(&int(2), -2), ratio(1, 4));
        assert_eq!(pow(&int(3), 3), int(27));
    }

    #[test]
    fn choose2_small() {
        assert_eq!(choose2(0), int(0));
        assert_eq!(choose2(1), int(0));
        assert_eq!(choose2(5), int(10));
    }
}
