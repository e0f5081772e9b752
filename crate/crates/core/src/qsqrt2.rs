//! Exact arithmetic in the real quadratic field ℚ(√2).
//!
//! Every scalar of the closed-form derivative matrices lives here: a value is
//! `rat + sqrt2·√2` with arbitrary-precision rational parts. Coefficients of
//! the published forms such as 9/(8√2) normalize to this shape (1/√2 is
//! stored as (1/2)√2).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Error raised by [`QSqrt2::checked_div`] on a zero divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionByZero;

impl fmt::Display for DivisionByZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "division by zero in Q(sqrt2)")
    }
}

impl std::error::Error for DivisionByZero {}

/// An element a + b√2 of ℚ(√2), with `a`, `b` reduced rationals.
///
/// The rationals are kept canonical by `num-rational` (reduced, positive
/// denominator), so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    rat: BigRational,
    sqrt2: BigRational,
}

impl QSqrt2 {
    pub fn new(rat: BigRational, sqrt2: BigRational) -> Self {
        QSqrt2 { rat, sqrt2 }
    }

    pub fn zero() -> Self {
        QSqrt2::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        QSqrt2::from_int(1)
    }

    /// The element √2 itself.
    pub fn sqrt2() -> Self {
        QSqrt2::new(
            BigRational::zero(),
            BigRational::from_integer(BigInt::from(1)),
        )
    }

    pub fn from_int(n: i64) -> Self {
        QSqrt2::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    /// Exact rational p/q. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        QSqrt2::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        QSqrt2::new(r, BigRational::zero())
    }

    pub fn rat_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.sqrt2
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.sqrt2.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt2.is_zero()
    }

    /// Field norm a² − 2b²; zero exactly on the zero element since √2 ∉ ℚ.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat
            - BigRational::from_integer(BigInt::from(2)) * &self.sqrt2 * &self.sqrt2
    }

    /// Galois conjugate a − b√2.
    pub fn conjugate(&self) -> Self {
        QSqrt2::new(self.rat.clone(), -self.sqrt2.clone())
    }

    pub fn checked_div(&self, rhs: &QSqrt2) -> Result<QSqrt2, DivisionByZero> {
        if rhs.is_zero() {
            return Err(DivisionByZero);
        }
        let n = rhs.norm();
        let conj = rhs.conjugate();
        let prod = self * &conj;
        Ok(QSqrt2::new(prod.rat / &n, prod.sqrt2 / &n))
    }

    /// Sign of the real value a + b√2, computed exactly.
    pub fn sign(&self) -> Ordering {
        let sa = rational_sign(&self.rat);
        let sb = rational_sign(&self.sqrt2);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            _ => {
                // opposite signs: compare a² with 2b²
                let a2 = &self.rat * &self.rat;
                let b2 = BigRational::from_integer(BigInt::from(2)) * &self.sqrt2 * &self.sqrt2;
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal, // impossible for nonzero parts
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let b = self.sqrt2.to_f64().unwrap_or(f64::NAN);
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        b.mul_add(std::f64::consts::SQRT_2, a)
    }
}

fn rational_sign(r: &BigRational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: QSqrt2) -> QSqrt2 {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: &QSqrt2) -> QSqrt2 {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<QSqrt2> for &QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: QSqrt2) -> QSqrt2 {
                self.$method(&rhs)
            }
        }
    };
}

impl std::ops::Add<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.rat + &rhs.rat, &self.sqrt2 + &rhs.sqrt2)
    }
}
forward_binop!(Add, add);

impl std::ops::Sub<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.rat - &rhs.rat, &self.sqrt2 - &rhs.sqrt2)
    }
}
forward_binop!(Sub, sub);

impl std::ops::Mul<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(BigInt::from(2));
        QSqrt2::new(
            &self.rat * &rhs.rat + two * &self.sqrt2 * &rhs.sqrt2,
            &self.rat * &rhs.sqrt2 + &self.sqrt2 * &rhs.rat,
        )
    }
}
forward_binop!(Mul, mul);

impl std::ops::Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.rat.clone(), -self.sqrt2.clone())
    }
}

impl std::ops::Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.rat, -self.sqrt2)
    }
}

/// Canonical text form: `p/q`, `r/s*sqrt2`, or `p/q+r/s*sqrt2` (no spaces,
/// `-` folded into the parts). `0` for zero.
impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut lead = true;
        if !self.rat.is_zero() {
            write!(f, "{}", self.rat)?;
            lead = false;
        }
        if !self.sqrt2.is_zero() {
            if !lead && self.sqrt2.is_positive() {
                write!(f, "+")?;
            }
            write!(f, "{}*sqrt2", self.sqrt2)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSqrt2({})", self)
    }
}

/// Error from parsing the text form of a [`QSqrt2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseQSqrt2Error(pub String);

impl fmt::Display for ParseQSqrt2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid Q(sqrt2) literal: {}", self.0)
    }
}

impl std::error::Error for ParseQSqrt2Error {}

impl FromStr for QSqrt2 {
    type Err = ParseQSqrt2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseQSqrt2Error(s.to_string());
        if s.is_empty() {
            return Err(err());
        }
        // split into signed pieces at top level ('+'/'-' not at position 0)
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let bytes = s.as_bytes();
        let mut neg = bytes[0] == b'-';
        let mut i = if bytes[0] == b'-' || bytes[0] == b'+' {
            1
        } else {
            0
        };
        let mut piece_from = i;
        while i < bytes.len() {
            if bytes[i] == b'+' || bytes[i] == b'-' {
                pieces.push((neg, &s[piece_from..i]));
                neg = bytes[i] == b'-';
                piece_from = i + 1;
            }
            i += 1;
        }
        pieces.push((neg, &s[piece_from..]));

        let mut out = QSqrt2::zero();
        for (is_neg, piece) in pieces {
            if piece.is_empty() {
                return Err(err());
            }
            let (coef_str, is_sqrt2) = if let Some(stripped) = piece.strip_suffix("*sqrt2") {
                (stripped, true)
            } else if piece == "sqrt2" {
                ("1", true)
            } else {
                (piece, false)
            };
            let coef: BigRational = parse_rational(coef_str).ok_or_else(err)?;
            let coef = if is_neg { -coef } else { coef };
            let part = if is_sqrt2 {
                QSqrt2::new(BigRational::zero(), coef)
            } else {
                QSqrt2::from_rational(coef)
            };
            out = &out + &part;
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QSqrt2 {
        s.parse().unwrap()
    }

    #[test]
    fn half_sqrt2_squares_to_half() {
        // (1/√2)² = 1/2, with 1/√2 stored as (1/2)√2
        let half_sqrt2 = q("1/2*sqrt2");
        let sq = &half_sqrt2 * &half_sqrt2;
        assert_eq!(sq, q("1/2"));
    }

    #[test]
    fn conjugate_product_is_norm() {
        // (1 + √2)(1 − √2) = −1
        let a = q("1+1*sqrt2");
        let b = q("1-1*sqrt2");
        assert_eq!(&a * &b, q("-1"));
        assert_eq!(a.norm(), BigRational::from_integer(BigInt::from(-1)));
    }

    #[test]
    fn division_rationalizes() {
        // (3/16) / √2 = (3/32)√2
        let n = q("3/16");
        let d = QSqrt2::sqrt2();
        assert_eq!(n.checked_div(&d).unwrap(), q("3/32*sqrt2"));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q("1").checked_div(&QSqrt2::zero()), Err(DivisionByZero));
    }

    #[test]
    fn sign_handles_mixed_parts() {
        assert_eq!(q("3/2-1*sqrt2").sign(), Ordering::Greater); // 1.5 > 1.414
        assert_eq!(q("7/5-1*sqrt2").sign(), Ordering::Less); // 1.4 < 1.414
        assert_eq!(QSqrt2::zero().sign(), Ordering::Equal);
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "0",
            "3/4",
            "-3/4",
            "9/16*sqrt2",
            "-1/2+3/32*sqrt2",
            "2-5*sqrt2",
        ] {
            let v = q(s);
            assert_eq!(v.to_string(), s);
            assert_eq!(q(&v.to_string()), v);
        }
    }

    #[test]
    fn to_f64_matches() {
        let v = q("-1/2+3/32*sqrt2");
        let expect = -0.5 + 3.0 / 32.0 * std::f64::consts::SQRT_2;
        assert!((v.to_f64() - expect).abs() < 1e-15);
    }

    #[test]
    fn malformed_literals_are_rejected() {
        for s in ["", "1//2", "sqrt3", "1/0", "+", "2*sqrt2*sqrt2", "1.5"] {
            assert!(s.parse::<QSqrt2>().is_err(), "{s:?} must not parse");
        }
    }
}
