//! The quantum disc algebra: normal-form elements, the rewriting product,
//! the *-structure, the ℤ-grading, the degree-counting automorphism σ, and
//! the twisted derivations ∂ and ∂̄.
//!
//! Elements are stored in the monomial basis `x^k z^l` (`k ≥ 0`, `l ∈ ℤ`,
//! with `z^l` for negative `l` meaning `(z*)^{−l}`). The product reduces any
//! expression to this basis through the confluent rewrite system
//!
//! ```text
//! z·x  → q^{−2}·x·z      z·z*  → 1 − x
//! z*·x → q²·x·z*         z*·z  → 1 − q²·x
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::Sign;
use num::{BigRational, Zero};

use crate::error::ScalarError;
use crate::scalar::Scalar;

/// An element of the disc algebra in normal form: a finitely supported map
/// `(k, l) → Scalar` denoting `Σ c_{k,l} x^k z^l`. Zero coefficients are
/// never stored, so structural equality is algebra equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiscElement {
    terms: BTreeMap<(u32, i64), Scalar>,
}

impl DiscElement {
    pub fn zero() -> Self {
        DiscElement::default()
    }

    pub fn one() -> Self {
        DiscElement::monomial(0, 0, Scalar::one())
    }

    /// The self-adjoint generator `x = 1 − zz*`.
    pub fn x() -> Self {
        DiscElement::monomial(1, 0, Scalar::one())
    }

    pub fn z() -> Self {
        DiscElement::monomial(0, 1, Scalar::one())
    }

    pub fn z_star() -> Self {
        DiscElement::monomial(0, -1, Scalar::one())
    }

    /// The single-term element `c·x^k z^l`.
    pub fn monomial(k: u32, l: i64, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((k, l), c);
        }
        DiscElement { terms }
    }

    pub fn from_scalar(c: Scalar) -> Self {
        DiscElement::monomial(0, 0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: u32, l: i64) -> Scalar {
        self.terms.get(&(k, l)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, i64), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, k: u32, l: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((k, l)).or_insert_with(Scalar::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&(k, l));
        }
    }

    pub fn add(&self, other: &DiscElement) -> DiscElement {
        let mut out = self.clone();
        for ((k, l), c) in other.iter() {
            out.insert_add(*k, *l, c);
        }
        out
    }

    pub fn sub(&self, other: &DiscElement) -> DiscElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiscElement {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> DiscElement {
        if c.is_zero() {
            return DiscElement::zero();
        }
        DiscElement {
            terms: self.terms.iter().map(|(key, a)| (*key, a * c)).collect(),
        }
    }

    /// Left multiplication by `x^j`, which on normal forms just shifts the
    /// x-exponent.
    fn x_shift(&self, j: u32) -> DiscElement {
        DiscElement {
            terms: self.terms.iter().map(|((k, l), c)| ((k + j, *l), c.clone())).collect(),
        }
    }

    /// The product in the algebra, reduced to normal form.
    ///
    /// On monomials, `z^{l} x^{k} = q^{−2lk} x^{k} z^{l}` moves x-powers to
    /// the left; [`z_mul`] then resolves the mixed `z`/`z*` word.
    pub fn mul(&self, other: &DiscElement) -> DiscElement {
        let mut out = DiscElement::zero();
        for ((k1, l1), c1) in self.iter() {
            for ((k2, l2), c2) in other.iter() {
                let coeff = &(c1 * c2) * &Scalar::q_pow(-2 * l1 * (*k2 as i64));
                let word = z_mul(*l1, *l2).x_shift(k1 + k2);
                out = out.add(&word.scale(&coeff));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> DiscElement {
        let mut out = DiscElement::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// The adjoint. On monomials, `(c·x^k z^l)* = c·q^{2kl}·x^k z^{−l}`
    /// (coefficients are fixed because `q` is real).
    pub fn star(&self) -> DiscElement {
        let mut out = DiscElement::zero();
        for ((k, l), c) in self.iter() {
            let twist = Scalar::q_pow(2 * (*k as i64) * l);
            out.insert_add(*k, -l, &(c * &twist));
        }
        out
    }

    /// Splits into homogeneous components keyed by ℤ-degree (the z-exponent).
    pub fn homogeneous_components(&self) -> BTreeMap<i64, DiscElement> {
        let mut out: BTreeMap<i64, DiscElement> = BTreeMap::new();
        for ((k, l), c) in self.iter() {
            out.entry(*l).or_default().insert_add(*k, *l, c);
        }
        out
    }

    /// ℤ-degree of a homogeneous element; `None` for zero or mixed input.
    pub fn degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(|(_, l)| *l);
        let first = degrees.next()?;
        degrees.all(|l| l == first).then_some(first)
    }

    /// The automorphism power `σ^p`: each degree-`l` component is scaled by
    /// `q^{2pl}`. `p = −1` gives the inverse automorphism.
    pub fn sigma_pow(&self, p: i64) -> DiscElement {
        let mut out = DiscElement::zero();
        for ((k, l), c) in self.iter() {
            out.insert_add(*k, *l, &(c * &Scalar::q_pow(2 * p * l)));
        }
        out
    }

    pub fn sigma(&self) -> DiscElement {
        self.sigma_pow(1)
    }

    /// The twisted derivation ∂, the unique linear map with `∂(z) = z*`,
    /// `∂(z*) = 0` and `∂(ab) = ∂(a)σ(b) + a∂(b)`. Lowers degree by 2.
    pub fn partial(&self) -> DiscElement {
        let mut out = DiscElement::zero();
        for ((k, l), c) in self.iter() {
            out = out.add(&partial_monomial(*k, *l).scale(c));
        }
        out
    }

    /// The conjugate twisted derivation ∂̄, with `∂̄(z) = 0`, `∂̄(z*) = q²z`
    /// and the same Leibniz rule. Raises degree by 2.
    pub fn partial_bar(&self) -> DiscElement {
        let mut out = DiscElement::zero();
        for ((k, l), c) in self.iter() {
            out = out.add(&partial_bar_monomial(*k, *l).scale(c));
        }
        out
    }

    /// Coefficient-wise exact evaluation at a rational `q`; zero-valued
    /// coefficients are dropped so equal values compare equal as maps.
    pub fn eval_at(&self, q0: &BigRational) -> Result<BTreeMap<(u32, i64), BigRational>, ScalarError> {
        let mut out = BTreeMap::new();
        for (key, c) in self.iter() {
            let val = c.eval_at(q0)?;
            if !val.is_zero() {
                out.insert(*key, val);
            }
        }
        Ok(out)
    }
}

/// Normal form of `z^{l1}·z^{l2}`, peeling inner `z z*` / `z* z` pairs.
fn z_mul(l1: i64, l2: i64) -> DiscElement {
    if l1 == 0 || l2 == 0 || (l1 > 0) == (l2 > 0) {
        return DiscElement::monomial(0, l1 + l2, Scalar::one());
    }
    if l1 > 0 {
        // z^{l1} z*^{−l2} = inner − q^{−2(l1−1)}·x·inner, inner = z^{l1−1}z*^{−l2−1}
        let inner = z_mul(l1 - 1, l2 + 1);
        inner.sub(&inner.x_shift(1).scale(&Scalar::q_pow(-2 * (l1 - 1))))
    } else {
        // z*^{−l1} z^{l2} = inner − q^{−2l1}·x·inner, inner = z*^{−l1−1}z^{l2−1}
        let inner = z_mul(l1 + 1, l2 - 1);
        inner.sub(&inner.x_shift(1).scale(&Scalar::q_pow(-2 * l1)))
    }
}

/// `∂(x^k z^l) = ∂(x^k)·σ(z^l) + x^k·∂(z^l)`.
fn partial_monomial(k: u32, l: i64) -> DiscElement {
    let zl = DiscElement::monomial(0, l, Scalar::one());
    partial_x_pow(k).mul(&zl.sigma()).add(&partial_z_pow(l).x_shift(k))
}

fn partial_bar_monomial(k: u32, l: i64) -> DiscElement {
    let zl = DiscElement::monomial(0, l, Scalar::one());
    partial_bar_x_pow(k).mul(&zl.sigma()).add(&partial_bar_z_pow(l).x_shift(k))
}

/// `∂(x^k)` by the Leibniz rule from `∂(x) = −q^{−2}z*²` (itself the Leibniz
/// image of `x = 1 − zz*`); σ is the identity on the degree-0 element `x`.
fn partial_x_pow(k: u32) -> DiscElement {
    if k == 0 {
        return DiscElement::zero();
    }
    let dx = DiscElement::monomial(0, -2, -Scalar::q_pow(-2));
    let xk1 = DiscElement::monomial(k - 1, 0, Scalar::one());
    dx.mul(&xk1).add(&partial_x_pow(k - 1).x_shift(1))
}

/// `∂̄(x^k)` from `∂̄(x) = −q²z²`.
fn partial_bar_x_pow(k: u32) -> DiscElement {
    if k == 0 {
        return DiscElement::zero();
    }
    let dx = DiscElement::monomial(0, 2, -Scalar::q_pow(2));
    let xk1 = DiscElement::monomial(k - 1, 0, Scalar::one());
    dx.mul(&xk1).add(&partial_bar_x_pow(k - 1).x_shift(1))
}

/// `∂(z^l)`; zero for `l ≤ 0` since `∂(z*) = 0`.
fn partial_z_pow(l: i64) -> DiscElement {
    if l <= 0 {
        return DiscElement::zero();
    }
    let tail = DiscElement::monomial(0, l - 1, Scalar::one());
    DiscElement::z_star().mul(&tail.sigma()).add(&DiscElement::z().mul(&partial_z_pow(l - 1)))
}

/// `∂̄(z^l)`; zero for `l ≥ 0` since `∂̄(z) = 0`.
fn partial_bar_z_pow(l: i64) -> DiscElement {
    if l >= 0 {
        return DiscElement::zero();
    }
    let tail = DiscElement::monomial(0, l + 1, Scalar::one());
    let dzs = DiscElement::monomial(0, 1, Scalar::q_pow(2));
    dzs.mul(&tail.sigma()).add(&DiscElement::z_star().mul(&partial_bar_z_pow(l + 1)))
}

impl Add for &DiscElement {
    type Output = DiscElement;
    fn add(self, rhs: &DiscElement) -> DiscElement {
        DiscElement::add(self, rhs)
    }
}

impl Sub for &DiscElement {
    type Output = DiscElement;
    fn sub(self, rhs: &DiscElement) -> DiscElement {
        DiscElement::sub(self, rhs)
    }
}

impl Mul for &DiscElement {
    type Output = DiscElement;
    fn mul(self, rhs: &DiscElement) -> DiscElement {
        DiscElement::mul(self, rhs)
    }
}

impl Neg for &DiscElement {
    type Output = DiscElement;
    fn neg(self) -> DiscElement {
        DiscElement::neg(self)
    }
}

/// Renders one basis monomial; shared with the CLI printers.
pub(crate) fn format_monomial(k: u32, l: i64) -> String {
    let mut parts = Vec::new();
    match k {
        0 => {}
        1 => parts.push("x".to_string()),
        _ => parts.push(format!("x^{k}")),
    }
    match l {
        0 => {}
        1 => parts.push("z".to_string()),
        -1 => parts.push("zs".to_string()),
        _ if l > 1 => parts.push(format!("z^{l}")),
        _ => parts.push(format!("zs^{}", -l)),
    }
    parts.join("*")
}

/// Renders `c·m` for a monomial string `m`, parenthesizing compound scalars.
pub(crate) fn format_scaled(c: &Scalar, monomial: &str) -> String {
    if monomial.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return monomial.to_string();
    }
    if (-c).is_one() {
        return format!("-{monomial}");
    }
    let needs_parens = c.numerator().iter().count() > 1 || !c.denominator().is_one();
    if needs_parens {
        format!("({c})*{monomial}")
    } else {
        format!("{c}*{monomial}")
    }
}

impl fmt::Display for DiscElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((k, l), c) in self.iter() {
            let negative = c.numerator().leading_coeff().map(|a| a.sign()) == Some(Sign::Minus);
            let (sep, shown) = if first {
                (String::new(), c.clone())
            } else if negative {
                (" - ".to_string(), -c)
            } else {
                (" + ".to_string(), c.clone())
            };
            write!(f, "{sep}{}", format_scaled(&shown, &format_monomial(*k, *l)))?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_pow(n: i64) -> Scalar {
        Scalar::q_pow(n)
    }

    #[test]
    fn generators_and_relations() {
        let z = DiscElement::z();
        let zs = DiscElement::z_star();
        let x = DiscElement::x();
        // zz* = 1 − x, z*z = 1 − q²x
        assert_eq!(z.mul(&zs), DiscElement::one().sub(&x));
        assert_eq!(zs.mul(&z), DiscElement::one().sub(&x.scale(&q_pow(2))));
        // the defining relation z*z − q²zz* = 1 − q²
        let lhs = zs.mul(&z).sub(&z.mul(&zs).scale(&q_pow(2)));
        let rhs = DiscElement::from_scalar(Scalar::one() - Scalar::q_pow(2));
        assert_eq!(lhs, rhs);
        // xz = q²zx, already in normal form on the left
        assert_eq!(x.mul(&z), z.mul(&x).scale(&q_pow(2)));
        assert_eq!(x.mul(&z), DiscElement::monomial(1, 1, Scalar::one()));
    }

    #[test]
    fn mul_mixed_monomials() {
        // x²z · xz* = q^{−2}(x³ − x⁴)
        let a = DiscElement::monomial(2, 1, Scalar::one());
        let b = DiscElement::monomial(1, -1, Scalar::one());
        let expect = DiscElement::monomial(3, 0, q_pow(-2)).sub(&DiscElement::monomial(4, 0, q_pow(-2)));
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn mul_deep_cancellation() {
        // z*²z² = (1 − q²x)(1 − q⁴x)
        let z2 = DiscElement::monomial(0, 2, Scalar::one());
        let zs2 = DiscElement::monomial(0, -2, Scalar::one());
        let f1 = DiscElement::one().sub(&DiscElement::x().scale(&q_pow(2)));
        let f2 = DiscElement::one().sub(&DiscElement::x().scale(&q_pow(4)));
        assert_eq!(zs2.mul(&z2), f1.mul(&f2));
    }

    #[test]
    fn star_examples() {
        assert_eq!(DiscElement::z().star(), DiscElement::z_star());
        assert_eq!(DiscElement::x().star(), DiscElement::x());
        // (xz)* = q²xz*
        let xz = DiscElement::monomial(1, 1, Scalar::one());
        assert_eq!(xz.star(), DiscElement::monomial(1, -1, q_pow(2)));
    }

    #[test]
    fn star_antimultiplicative_involution() {
        let a = DiscElement::monomial(2, 3, q_pow(1)).add(&DiscElement::monomial(0, -1, Scalar::from_int(2)));
        let b = DiscElement::monomial(1, -2, Scalar::one()).add(&DiscElement::one());
        assert_eq!(a.star().star(), a);
        assert_eq!(a.mul(&b).star(), b.star().mul(&a.star()));
    }

    #[test]
    fn grading_and_components() {
        let zs3 = DiscElement::monomial(0, -3, Scalar::one());
        assert_eq!(zs3.degree(), Some(-3));
        assert_eq!(DiscElement::monomial(5, 0, Scalar::one()).degree(), Some(0));
        assert_eq!(DiscElement::zero().degree(), None);

        let mixed = DiscElement::z().add(&DiscElement::monomial(1, -1, Scalar::one()));
        assert_eq!(mixed.degree(), None);
        let comps = mixed.homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&1], DiscElement::z());
        assert_eq!(comps[&-1], DiscElement::monomial(1, -1, Scalar::one()));
        // components sum back to the element
        let sum = comps.values().fold(DiscElement::zero(), |acc, c| acc.add(c));
        assert_eq!(sum, mixed);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(DiscElement::z().sigma(), DiscElement::z().scale(&q_pow(2)));
        assert_eq!(DiscElement::x().sigma_pow(7), DiscElement::x());
        let zs2 = DiscElement::monomial(0, -2, Scalar::one());
        assert_eq!(zs2.sigma_pow(2), zs2.scale(&q_pow(-8)));
        // composition law
        let a = DiscElement::monomial(2, 3, Scalar::one()).add(&DiscElement::z_star());
        assert_eq!(a.sigma_pow(2).sigma_pow(-3), a.sigma_pow(-1));
    }

    #[test]
    fn partial_generator_values() {
        assert_eq!(DiscElement::z().partial(), DiscElement::z_star());
        assert_eq!(DiscElement::z_star().partial(), DiscElement::zero());
        // ∂x = −q^{−2}z*²
        assert_eq!(DiscElement::x().partial(), DiscElement::monomial(0, -2, -q_pow(-2)));
        // ∂(z²) = (q²+1) − (q⁴+1)x
        let z2 = DiscElement::monomial(0, 2, Scalar::one());
        let expect = DiscElement::from_scalar(Scalar::q_pow(2) + Scalar::one())
            .sub(&DiscElement::x().scale(&(Scalar::q_pow(4) + Scalar::one())));
        assert_eq!(z2.partial(), expect);
    }

    #[test]
    fn partial_x_powers_closed_form() {
        // ∂(x^k) = −q^{−2}[k]_{q⁴} x^{k−1} z*²
        for k in 1..8u32 {
            let xk = DiscElement::monomial(k, 0, Scalar::one());
            let expect = DiscElement::monomial(k - 1, -2, -(Scalar::q_pow(-2) * Scalar::q_int(k as i64, 4)));
            assert_eq!(xk.partial(), expect, "k = {k}");
        }
    }

    #[test]
    fn partial_bar_generator_values() {
        assert_eq!(DiscElement::z_star().partial_bar(), DiscElement::z().scale(&q_pow(2)));
        assert_eq!(DiscElement::z().partial_bar(), DiscElement::zero());
        // ∂̄x = −q²z²
        assert_eq!(DiscElement::x().partial_bar(), DiscElement::monomial(0, 2, -q_pow(2)));
    }

    #[test]
    fn twisted_leibniz_spot_check() {
        let a = DiscElement::monomial(1, 2, q_pow(-1));
        let b = DiscElement::monomial(2, -3, Scalar::from_int(3)).add(&DiscElement::z());
        let ab = a.mul(&b);
        assert_eq!(ab.partial(), a.partial().mul(&b.sigma()).add(&a.mul(&b.partial())));
        assert_eq!(ab.partial_bar(), a.partial_bar().mul(&b.sigma()).add(&a.mul(&b.partial_bar())));
    }

    #[test]
    fn degree_shifts() {
        for (k, l) in [(0u32, 3i64), (2, -4), (3, 0), (1, 1)] {
            let m = DiscElement::monomial(k, l, Scalar::one());
            let d = m.partial();
            if !d.is_zero() {
                assert_eq!(d.degree(), Some(l - 2));
            }
            let db = m.partial_bar();
            if !db.is_zero() {
                assert_eq!(db.degree(), Some(l + 2));
            }
        }
    }

    #[test]
    fn eval_at_drops_vanishing_coefficients() {
        // (q² − 1/4)·z vanishes at q = 1/2
        let c = Scalar::q_pow(2) - Scalar::from_ratio(crate::IntPoly::from_int(1), crate::IntPoly::from_int(4));
        let a = DiscElement::z().scale(&c).add(&DiscElement::x());
        let half = BigRational::new(num::BigInt::from(1), num::BigInt::from(2));
        let vals = a.eval_at(&half).unwrap();
        assert_eq!(vals.len(), 1);
        assert!(vals.contains_key(&(1, 0)));
    }

    #[test]
    fn display_readable() {
        let a = DiscElement::one().sub(&DiscElement::x());
        assert_eq!(a.to_string(), "1 - x");
        let b = DiscElement::monomial(1, -2, -q_pow(2));
        assert_eq!(b.to_string(), "-q^2*x*zs^2");
        let c = DiscElement::monomial(0, 1, Scalar::q_pow(2) + Scalar::one());
        assert_eq!(c.to_string(), "(q^2 + 1)*z");
        assert_eq!(DiscElement::zero().to_string(), "0");
    }
}
