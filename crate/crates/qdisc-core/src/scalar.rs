//! The exact scalar field `Q(q)` of rational functions in the deformation
//! parameter.
//!
//! A [`Scalar`] is a reduced fraction of two [`IntPoly`] values. The canonical
//! form divides out the full `Z[q]`-gcd of numerator and denominator (content
//! included) and gives the denominator a positive leading coefficient, so
//! structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};

use crate::error::ScalarError;
use crate::poly::IntPoly;

/// An element of `Q(q)`, kept in reduced canonical form at all times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    num: IntPoly,
    den: IntPoly,
}

impl Scalar {
    fn reduced(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "scalar with zero denominator");
        if num.is_zero() {
            return Scalar { num, den: IntPoly::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        if den.leading_coeff().unwrap().sign() == Sign::Minus {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn zero() -> Self {
        Scalar { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: IntPoly::one(), den: IntPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { num: IntPoly::from_int(n), den: IntPoly::one() }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        Scalar { num: p, den: IntPoly::one() }
    }

    pub fn from_ratio(num: IntPoly, den: IntPoly) -> Self {
        Scalar::reduced(num, den)
    }

    /// `q^n`, with negative exponents landing in the denominator.
    pub fn q_pow(n: i64) -> Self {
        if n >= 0 {
            Scalar::from_poly(IntPoly::q_pow(n as u32))
        } else {
            Scalar { num: IntPoly::one(), den: IntPoly::q_pow((-n) as u32) }
        }
    }

    /// The `q^m`-integer `[n]_{q^m} = (q^{mn} - 1) / (q^m - 1)`, i.e.
    /// `1 + q^m + ... + q^{m(n-1)}` for positive `n` and `m`. Other signs
    /// yield the rational function the same formula defines.
    pub fn q_int(n: i64, m: i64) -> Self {
        assert!(m != 0, "q_int requires a nonzero power step");
        if n == 0 {
            return Scalar::zero();
        }
        let num = Scalar::q_pow(m.checked_mul(n).expect("q_int exponent overflow")) - Scalar::one();
        let den = Scalar::q_pow(m) - Scalar::one();
        num.checked_div(&den).expect("q^m - 1 is nonzero")
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// Exact evaluation at a rational `q`, failing only on a genuine pole
    /// (the canonical form guarantees no removable singularities survive).
    pub fn eval_at(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        let den = self.den.eval(q0);
        if den.is_zero() {
            return Err(ScalarError::Pole { at: q0.to_string() });
        }
        Ok(self.num.eval(q0) / den)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::reduced(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::reduced(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $trait::$method(&self, rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Division panics on a zero divisor; use [`Scalar::checked_div`] where the
/// divisor is not known to be nonzero.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.iter().count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.iter().count() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q_pow(1)
    }

    #[test]
    fn canonical_form_reduces() {
        // (q^4 - 1)/(q^2 - 1) = q^2 + 1
        let a = Scalar::from_ratio(
            IntPoly::q_pow(4).sub(&IntPoly::one()),
            IntPoly::q_pow(2).sub(&IntPoly::one()),
        );
        let b = Scalar::from_poly(IntPoly::q_pow(2).add(&IntPoly::one()));
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_form_sign() {
        // 1/(-q) normalizes to -1/q: denominator leading coefficient positive
        let a = Scalar::from_ratio(IntPoly::one(), IntPoly::monomial(1, BigInt::from(-1)));
        assert_eq!(a, -Scalar::q_pow(-1));
        assert_eq!(a.denominator(), &IntPoly::q_pow(1));
    }

    #[test]
    fn canonical_form_content() {
        // 2/4 reduces to 1/2 - content participates in the gcd
        let a = Scalar::from_ratio(IntPoly::from_int(2), IntPoly::from_int(4));
        assert_eq!(a.numerator(), &IntPoly::one());
        assert_eq!(a.denominator(), &IntPoly::from_int(2));
    }

    #[test]
    fn q_int_small_values() {
        // [3]_{q^4} = q^8 + q^4 + 1
        let expect = IntPoly::q_pow(8).add(&IntPoly::q_pow(4)).add(&IntPoly::one());
        assert_eq!(Scalar::q_int(3, 4), Scalar::from_poly(expect));
        // [1] = 1, [0] = 0
        assert_eq!(Scalar::q_int(1, 2), Scalar::one());
        assert_eq!(Scalar::q_int(0, 2), Scalar::zero());
    }

    #[test]
    fn q_int_negative_index() {
        // [-1]_{q^2} = (q^{-2} - 1)/(q^2 - 1) = -q^{-2}
        assert_eq!(Scalar::q_int(-1, 2), -Scalar::q_pow(-2));
        // [-n]_{q^m} = -q^{-mn} [n]_{q^m}
        let lhs = Scalar::q_int(-3, 2);
        let rhs = -(Scalar::q_pow(-6) * Scalar::q_int(3, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_int_negative_step() {
        // [2]_{q^{-2}} = 1 + q^{-2}
        let expect = Scalar::one() + Scalar::q_pow(-2);
        assert_eq!(Scalar::q_int(2, -2), expect);
    }

    #[test]
    fn field_ops() {
        let a = (q() + Scalar::one()) * (q() - Scalar::one());
        assert_eq!(a, Scalar::from_poly(IntPoly::q_pow(2).sub(&IntPoly::one())));
        let b = a.checked_div(&(q() - Scalar::one())).unwrap();
        assert_eq!(b, q() + Scalar::one());
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn eval_at_exact() {
        // (q^2 + 1)/(q^4 + 1) at q = 1/2 is (5/4)/(17/16) = 20/17
        let s = Scalar::from_ratio(
            IntPoly::q_pow(2).add(&IntPoly::one()),
            IntPoly::q_pow(4).add(&IntPoly::one()),
        );
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let got = s.eval_at(&half).unwrap();
        assert_eq!(got, BigRational::new(BigInt::from(20), BigInt::from(17)));
    }

    #[test]
    fn eval_at_pole() {
        let s = Scalar::from_ratio(IntPoly::one(), IntPoly::q_pow(2).sub(&IntPoly::one()));
        let one = BigRational::one();
        assert!(matches!(s.eval_at(&one), Err(ScalarError::Pole { .. })));
        // but a reducible "pole" is gone after canonicalization
        let t = Scalar::from_ratio(
            IntPoly::q_pow(2).sub(&IntPoly::one()),
            IntPoly::q_pow(1).sub(&IntPoly::one()),
        );
        assert_eq!(t.eval_at(&one).unwrap(), BigRational::from(BigInt::from(2)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::q_pow(-2).to_string(), "1/q^2");
        let s = Scalar::from_ratio(
            IntPoly::q_pow(2).add(&IntPoly::one()),
            IntPoly::q_pow(4).add(&IntPoly::one()),
        );
        assert_eq!(s.to_string(), "(q^2 + 1)/(q^4 + 1)");
        assert_eq!(Scalar::zero().to_string(), "0");
    }
}
