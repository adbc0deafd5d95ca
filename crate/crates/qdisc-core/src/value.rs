//! A tagged union over the graded pieces of the calculus, with the product
//! dispatch used by both the expression evaluator and the identity checker.

use std::fmt;

use num::BigRational;

use crate::calculus::{wedge, OneForm, TwoForm};
use crate::disc::DiscElement;
use crate::error::{EvalError, ScalarError};
use crate::scalar::Scalar;

/// Any value of the algebra or its calculus. Scalars are kept distinct from
/// constant disc elements for display purposes but compare and combine as if
/// embedded, since `Q(q) ⊂ O(D_q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgValue {
    Scalar(Scalar),
    Disc(DiscElement),
    One(OneForm),
    Two(TwoForm),
}

impl AlgValue {
    pub fn kind(&self) -> &'static str {
        match self {
            AlgValue::Scalar(_) => "scalar",
            AlgValue::Disc(_) => "element",
            AlgValue::One(_) => "1-form",
            AlgValue::Two(_) => "2-form",
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AlgValue::Scalar(s) => s.is_zero(),
            AlgValue::Disc(a) => a.is_zero(),
            AlgValue::One(nu) => nu.is_zero(),
            AlgValue::Two(w) => w.is_zero(),
        }
    }

    /// Embeds scalars into the algebra so that values of the two kinds
    /// compare and combine correctly.
    pub fn promote(self) -> AlgValue {
        match self {
            AlgValue::Scalar(s) => AlgValue::Disc(DiscElement::from_scalar(s)),
            other => other,
        }
    }

    /// Exact structural equality after scalar promotion.
    pub fn alg_eq(&self, other: &AlgValue) -> bool {
        match (self.clone().promote(), other.clone().promote()) {
            (AlgValue::Disc(a), AlgValue::Disc(b)) => a == b,
            (AlgValue::One(a), AlgValue::One(b)) => a == b,
            (AlgValue::Two(a), AlgValue::Two(b)) => a == b,
            (a, b) => a.is_zero() && b.is_zero(),
        }
    }

    /// Whether `+`/`-`/`==` between the kinds make sense: same grade, or
    /// either side zero (the zero of any grade is the zero of every grade).
    pub fn compatible(&self, other: &AlgValue) -> bool {
        if self.is_zero() || other.is_zero() {
            return true;
        }
        matches!(
            (self.clone().promote(), other.clone().promote()),
            (AlgValue::Disc(_), AlgValue::Disc(_))
                | (AlgValue::One(_), AlgValue::One(_))
                | (AlgValue::Two(_), AlgValue::Two(_))
        )
    }

    pub fn add(&self, other: &AlgValue) -> Result<AlgValue, EvalError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        match (self.clone(), other.clone()) {
            (AlgValue::Scalar(a), AlgValue::Scalar(b)) => Ok(AlgValue::Scalar(a + b)),
            (AlgValue::One(a), AlgValue::One(b)) => Ok(AlgValue::One(a.add(&b))),
            (AlgValue::Two(a), AlgValue::Two(b)) => Ok(AlgValue::Two(a.add(&b))),
            (a, b) => match (a.promote(), b.promote()) {
                (AlgValue::Disc(a), AlgValue::Disc(b)) => Ok(AlgValue::Disc(a.add(&b))),
                (a, b) => Err(EvalError::type_err(format!(
                    "cannot add {} and {}",
                    a.kind(),
                    b.kind()
                ))),
            },
        }
    }

    pub fn neg(&self) -> AlgValue {
        match self {
            AlgValue::Scalar(s) => AlgValue::Scalar(-s),
            AlgValue::Disc(a) => AlgValue::Disc(a.neg()),
            AlgValue::One(nu) => AlgValue::One(nu.neg()),
            AlgValue::Two(w) => AlgValue::Two(w.neg()),
        }
    }

    pub fn sub(&self, other: &AlgValue) -> Result<AlgValue, EvalError> {
        self.add(&other.neg())
    }

    /// Grade-dispatched product: algebra product, module actions, wedge, and
    /// the vanishing of everything above degree 2.
    pub fn mul(&self, other: &AlgValue) -> Result<AlgValue, EvalError> {
        use AlgValue::{Disc, One, Scalar as Sc, Two};
        Ok(match (self, other) {
            (Sc(a), Sc(b)) => Sc(a * b),
            (Sc(a), Disc(b)) => Disc(b.scale(a)),
            (Disc(a), Sc(b)) => Disc(a.scale(b)),
            (Sc(a), One(nu)) => One(nu.scale(a)),
            (One(nu), Sc(a)) => One(nu.scale(a)),
            (Sc(a), Two(w)) => Two(w.scale(a)),
            (Two(w), Sc(a)) => Two(w.scale(a)),
            (Disc(a), Disc(b)) => Disc(a.mul(b)),
            (Disc(a), One(nu)) => One(nu.left_mul(a)),
            (One(nu), Disc(a)) => One(nu.right_mul(a)),
            (Disc(a), Two(w)) => Two(w.left_mul(a)),
            (Two(w), Disc(a)) => Two(w.right_mul(a)),
            (One(nu), One(mu)) => Two(wedge(nu, mu)),
            // forms of degree three and higher vanish identically
            (One(_), Two(_)) | (Two(_), One(_)) | (Two(_), Two(_)) => Two(TwoForm::zero()),
        })
    }

    /// Division is scalar-only on the right.
    pub fn div(&self, other: &AlgValue) -> Result<AlgValue, EvalError> {
        let AlgValue::Scalar(b) = other else {
            return Err(EvalError::type_err(format!(
                "division requires a scalar divisor, got {}",
                other.kind()
            )));
        };
        let inv = b.inv().map_err(EvalError::Scalar)?;
        self.mul(&AlgValue::Scalar(inv))
    }

    pub fn star(&self) -> AlgValue {
        match self {
            AlgValue::Scalar(s) => AlgValue::Scalar(s.clone()),
            AlgValue::Disc(a) => AlgValue::Disc(a.star()),
            AlgValue::One(nu) => AlgValue::One(nu.star()),
            AlgValue::Two(w) => AlgValue::Two(w.star()),
        }
    }

    /// Numeric snapshot at rational `q0`: a canonical string of the
    /// coefficient values, equal iff the evaluated values are equal.
    pub fn numeric_key(&self, q0: &BigRational) -> Result<String, ScalarError> {
        match self.clone().promote() {
            AlgValue::Scalar(_) => unreachable!("promoted"),
            AlgValue::Disc(a) => {
                let vals = a.eval_at(q0)?;
                Ok(format!("disc:{vals:?}"))
            }
            AlgValue::One(nu) => {
                let [p, r] = nu.eval_at(q0)?;
                Ok(format!("one:{p:?}|{r:?}"))
            }
            AlgValue::Two(w) => {
                let vals = w.eval_at(q0)?;
                Ok(format!("two:{vals:?}"))
            }
        }
    }

    /// Whether the two values evaluate identically at `q0` (exact rational
    /// arithmetic; zero values of different grades count as equal).
    pub fn numeric_eq(&self, other: &AlgValue, q0: &BigRational) -> Result<bool, ScalarError> {
        let a = self.numeric_key(q0)?;
        let b = other.numeric_key(q0)?;
        if a == b {
            return Ok(true);
        }
        // grade-mismatched zeros: compare emptiness
        let empty = |k: &str| k.ends_with(":{}") || k.ends_with("{}|{}");
        Ok(empty(&a) && empty(&b))
    }
}

impl fmt::Display for AlgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgValue::Scalar(s) => write!(f, "{s}"),
            AlgValue::Disc(a) => write!(f, "{a}"),
            AlgValue::One(nu) => write!(f, "{nu}"),
            AlgValue::Two(w) => write!(f, "{w}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::CircleElement;

    #[test]
    fn scalar_disc_promotion() {
        let one = AlgValue::Scalar(Scalar::one());
        let unit = AlgValue::Disc(DiscElement::one());
        assert!(one.alg_eq(&unit));
        let sum = one.add(&AlgValue::Disc(DiscElement::x())).unwrap();
        assert_eq!(
            sum,
            AlgValue::Disc(DiscElement::one().add(&DiscElement::x()))
        );
    }

    #[test]
    fn grade_dispatch() {
        let z = AlgValue::Disc(DiscElement::z());
        let zs = AlgValue::Disc(DiscElement::z_star());
        let w = AlgValue::One(OneForm::omega());
        let ws = AlgValue::One(OneForm::omega_star());
        // z·z* = 1 − x
        assert!(z
            .mul(&zs)
            .unwrap()
            .alg_eq(&AlgValue::Disc(DiscElement::one().sub(&DiscElement::x()))));
        // ω∧ω* = v
        assert!(w.mul(&ws).unwrap().alg_eq(&AlgValue::Two(TwoForm::volume())));
        // ω·v = 0 (degree 3)
        let v = AlgValue::Two(TwoForm::volume());
        assert!(w.mul(&v).unwrap().is_zero());
    }

    #[test]
    fn division_rules() {
        let x = AlgValue::Disc(DiscElement::x());
        let two = AlgValue::Scalar(Scalar::from_int(2));
        let halved = x.div(&two).unwrap();
        assert!(halved.alg_eq(&AlgValue::Disc(DiscElement::x().scale(&Scalar::from_ratio(
            crate::IntPoly::from_int(1),
            crate::IntPoly::from_int(2),
        )))));
        assert!(x.div(&x).is_err());
        assert!(two.div(&AlgValue::Scalar(Scalar::zero())).is_err());
    }

    #[test]
    fn zero_values_are_cross_grade_compatible() {
        let zero_two = AlgValue::Two(TwoForm::zero());
        let z = AlgValue::Disc(DiscElement::z());
        assert!(zero_two.compatible(&z));
        assert_eq!(zero_two.add(&z).unwrap(), z);
        assert!(zero_two.alg_eq(&AlgValue::Scalar(Scalar::zero())));
    }

    #[test]
    fn numeric_equality_detects_differences() {
        let q0 = BigRational::new(num::BigInt::from(1), num::BigInt::from(2));
        let lhs = AlgValue::Disc(DiscElement::z().mul(&DiscElement::z_star()));
        let rhs = AlgValue::Disc(DiscElement::one().sub(&DiscElement::x()));
        assert!(lhs.numeric_eq(&rhs, &q0).unwrap());
        let wrong = AlgValue::Disc(DiscElement::one().add(&DiscElement::x()));
        assert!(!lhs.numeric_eq(&wrong, &q0).unwrap());
        // v vs −q⁶v differ numerically as well
        let v = AlgValue::Two(TwoForm::volume());
        let neg = AlgValue::Two(TwoForm::new(CircleElement::monomial(0, -Scalar::q_pow(6))));
        assert!(!v.numeric_eq(&neg, &q0).unwrap());
    }
}
