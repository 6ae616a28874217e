//! Exact scalar types used for vertex weights, step sizes and LP values.
//!
//! Every solver path is generic over [`Scalar`], which is implemented for any
//! [`Ratio`] over a signed integer type. Floating point types do not implement
//! `Scalar`: feasibility, slackness and duality are tested with exact
//! equality.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed};

/// An exact ordered field element.
pub trait Scalar: Clone + Ord + Hash + Debug + Display + FromStr + Signed + Send + Sync + 'static {
    /// The scalar equal to the integer `n`.
    fn from_int(n: i64) -> Self;

    /// The scalar `num / den`. Panics when `den == 0`.
    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Parses `"a"` or `"a/b"`.
    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        if let Some((_, den)) = s.split_once('/') {
            // `Ratio::from_str` panics on a zero denominator in some versions.
            if den.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
                return None;
            }
        }
        s.parse().ok()
    }

    fn half() -> Self {
        Self::from_frac(1, 2)
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Integer + Clone + Signed + Hash + Debug + Display + FromPrimitive + FromStr + Send + Sync + 'static,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer out of range for scalar type"))
    }
}

/// Sum of an iterator of scalars.
pub fn sum<W: Scalar, I: IntoIterator<Item = W>>(iter: I) -> W {
    iter.into_iter().fold(W::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, Rational64};
    use proptest::prelude::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(Rational::parse_exact("3/2"), Some(Rational::from_frac(3, 2)));
        assert_eq!(Rational::parse_exact("6/4"), Some(Rational::from_frac(3, 2)));
        assert_eq!(Rational::parse_exact("7"), Some(Rational::from_int(7)));
        assert_eq!(Rational::parse_exact("1/0"), None);
        assert_eq!(Rational::parse_exact("x"), None);
        assert_eq!(Rational64::parse_exact(""), None);
    }

    #[test]
    fn renders_lowest_terms() {
        assert_eq!(Rational::from_frac(6, 4).to_string(), "3/2");
        assert_eq!(Rational::from_frac(4, 2).to_string(), "2");
        assert_eq!(Rational::from_frac(0, 5).to_string(), "0");
    }

    proptest! {
        #[test]
        fn add_sub_is_exact(a in -1000i64..1000, b in 1i64..50, c in -1000i64..1000, d in 1i64..50) {
            let x = Rational::from_frac(a, b);
            let y = Rational::from_frac(c, d);
            prop_assert_eq!((x.clone() + y.clone()) - y, x.clone());
            let reparsed = Rational::parse_exact(&x.to_string()).unwrap();
            prop_assert_eq!(reparsed.to_string(), x.to_string());
            prop_assert!(x.denom() > &num_bigint::BigInt::from(0));
        }
    }
}
