//! The two-dimensional differential calculus over the disc algebra.
//!
//! Degree 1: `Ω¹` is free as a left module on the pair `ω`, `ω*`, with the
//! right module structure `ω·a = σ(a)·ω` (same for `ω*`) and the differential
//! `d(a) = ∂(a)ω + ∂̄(a)ω*`.
//!
//! Degree 2: `Ω²` is generated by the anti-self-adjoint volume form `v` with
//! `x·v = v·x = 0` and `v·a = σ²(a)·v`, so a 2-form is canonically a Laurent
//! polynomial in the circle variable (the image of `z` mod `⟨x⟩`) times `v`.
//! The product table of basic 1-form pairs is
//!
//! ```text
//! ω∧ω* = v                ω∧ω  = q^{12}(q²−1)/(q⁴+1)·z⁴v
//! ω*∧ω = −q⁶v             ω*∧ω* = q^{−4}(q²−1)/(q⁴+1)·z*⁴v
//! dω = q⁸z²v              dω* = −z*²v
//! ```
//!
//! Everything above degree 2 is zero.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::Sign;
use num::{BigRational, Zero};

use crate::disc::{format_monomial, format_scaled, DiscElement};
use crate::error::ScalarError;
use crate::scalar::Scalar;

/// A 1-form `p·ω + r·ω*` with left coefficients `p`, `r`; the representation
/// is unique because the module is free.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OneForm {
    pub coeff_omega: DiscElement,
    pub coeff_omega_star: DiscElement,
}

/// A Laurent polynomial in the circle variable: the quotient of the disc
/// algebra by the ideal generated by `x`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CircleElement {
    terms: BTreeMap<i64, Scalar>,
}

/// A 2-form `f·v` with `f` a [`CircleElement`]; right coefficients are
/// normalized to the left through `v·a = σ²(a)·v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoForm {
    pub coeff: CircleElement,
}

impl OneForm {
    pub fn zero() -> Self {
        OneForm::default()
    }

    pub fn new(coeff_omega: DiscElement, coeff_omega_star: DiscElement) -> Self {
        OneForm { coeff_omega, coeff_omega_star }
    }

    pub fn omega() -> Self {
        OneForm::new(DiscElement::one(), DiscElement::zero())
    }

    pub fn omega_star() -> Self {
        OneForm::new(DiscElement::zero(), DiscElement::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff_omega.is_zero() && self.coeff_omega_star.is_zero()
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm::new(
            self.coeff_omega.add(&other.coeff_omega),
            self.coeff_omega_star.add(&other.coeff_omega_star),
        )
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> OneForm {
        OneForm::new(self.coeff_omega.neg(), self.coeff_omega_star.neg())
    }

    pub fn scale(&self, c: &Scalar) -> OneForm {
        OneForm::new(self.coeff_omega.scale(c), self.coeff_omega_star.scale(c))
    }

    /// `ν·a`, pushing `a` through the generators: `(pω + rω*)a = pσ(a)ω + rσ(a)ω*`.
    pub fn right_mul(&self, a: &DiscElement) -> OneForm {
        let sa = a.sigma();
        OneForm::new(self.coeff_omega.mul(&sa), self.coeff_omega_star.mul(&sa))
    }

    /// `a·ν`: the free left action on coefficients.
    pub fn left_mul(&self, a: &DiscElement) -> OneForm {
        OneForm::new(a.mul(&self.coeff_omega), a.mul(&self.coeff_omega_star))
    }

    /// The *-structure: `(pω + rω*)* = σ(r*)ω + σ(p*)ω*`.
    pub fn star(&self) -> OneForm {
        OneForm::new(
            self.coeff_omega_star.star().sigma(),
            self.coeff_omega.star().sigma(),
        )
    }

    /// ℤ-degree (`ω` contributes +2, `ω*` contributes −2); `None` for zero
    /// or inhomogeneous forms.
    pub fn degree(&self) -> Option<i64> {
        let from_omega = self.coeff_omega.degree().map(|d| d + 2);
        let from_star = self.coeff_omega_star.degree().map(|d| d - 2);
        match (self.coeff_omega.is_zero(), self.coeff_omega_star.is_zero()) {
            (true, true) => None,
            (false, true) => from_omega,
            (true, false) => from_star,
            (false, false) => match (from_omega, from_star) {
                (Some(a), Some(b)) if a == b => Some(a),
                _ => None,
            },
        }
    }

    pub fn eval_at(
        &self,
        q0: &BigRational,
    ) -> Result<[BTreeMap<(u32, i64), BigRational>; 2], ScalarError> {
        Ok([self.coeff_omega.eval_at(q0)?, self.coeff_omega_star.eval_at(q0)?])
    }
}

impl CircleElement {
    pub fn zero() -> Self {
        CircleElement::default()
    }

    pub fn one() -> Self {
        CircleElement::monomial(0, Scalar::one())
    }

    pub fn monomial(l: i64, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(l, c);
        }
        CircleElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, l: i64) -> Scalar {
        self.terms.get(&l).cloned().unwrap_or_else(Scalar::zero)
    }

    fn insert_add(&mut self, l: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(l).or_insert_with(Scalar::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&l);
        }
    }

    pub fn add(&self, other: &CircleElement) -> CircleElement {
        let mut out = self.clone();
        for (l, c) in other.iter() {
            out.insert_add(*l, c);
        }
        out
    }

    pub fn sub(&self, other: &CircleElement) -> CircleElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CircleElement {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> CircleElement {
        if c.is_zero() {
            return CircleElement::zero();
        }
        CircleElement { terms: self.terms.iter().map(|(l, a)| (*l, a * c)).collect() }
    }

    /// Commutative Laurent multiplication.
    pub fn mul(&self, other: &CircleElement) -> CircleElement {
        let mut out = CircleElement::zero();
        for (l1, c1) in self.iter() {
            for (l2, c2) in other.iter() {
                out.insert_add(l1 + l2, &(c1 * c2));
            }
        }
        out
    }

    /// `σ^p` descends to the quotient: degree-`l` terms scale by `q^{2pl}`.
    pub fn sigma_pow(&self, p: i64) -> CircleElement {
        let mut out = CircleElement::zero();
        for (l, c) in self.iter() {
            out.insert_add(*l, &(c * &Scalar::q_pow(2 * p * l)));
        }
        out
    }

    /// The circle *-structure (the image of the disc one).
    pub fn star(&self) -> CircleElement {
        let mut out = CircleElement::zero();
        for (l, c) in self.iter() {
            out.insert_add(-l, c);
        }
        out
    }

    pub fn eval_at(&self, q0: &BigRational) -> Result<BTreeMap<i64, BigRational>, ScalarError> {
        let mut out = BTreeMap::new();
        for (l, c) in self.iter() {
            let val = c.eval_at(q0)?;
            if !val.is_zero() {
                out.insert(*l, val);
            }
        }
        Ok(out)
    }
}

/// The quotient map onto the circle algebra: drop every monomial with an
/// x-power, keep `z^l ↦ (circle monomial l)`.
pub fn project_circle(a: &DiscElement) -> CircleElement {
    let mut out = CircleElement::zero();
    for ((k, l), c) in a.iter() {
        if *k == 0 {
            out.insert_add(*l, c);
        }
    }
    out
}

impl TwoForm {
    pub fn zero() -> Self {
        TwoForm::default()
    }

    pub fn new(coeff: CircleElement) -> Self {
        TwoForm { coeff }
    }

    /// The volume form `v` itself.
    pub fn volume() -> Self {
        TwoForm::new(CircleElement::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn add(&self, other: &TwoForm) -> TwoForm {
        TwoForm::new(self.coeff.add(&other.coeff))
    }

    pub fn sub(&self, other: &TwoForm) -> TwoForm {
        TwoForm::new(self.coeff.sub(&other.coeff))
    }

    pub fn neg(&self) -> TwoForm {
        TwoForm::new(self.coeff.neg())
    }

    pub fn scale(&self, c: &Scalar) -> TwoForm {
        TwoForm::new(self.coeff.scale(c))
    }

    /// `a·(f·v)`: the action factors through the circle quotient.
    pub fn left_mul(&self, a: &DiscElement) -> TwoForm {
        TwoForm::new(project_circle(a).mul(&self.coeff))
    }

    /// `(f·v)·a = (f·σ²(a) mod x)·v` by the commutation rule for `v`.
    pub fn right_mul(&self, a: &DiscElement) -> TwoForm {
        TwoForm::new(self.coeff.mul(&project_circle(&a.sigma_pow(2))))
    }

    /// The graded *-structure: `(f·v)* = −σ²(f*)·v`.
    pub fn star(&self) -> TwoForm {
        TwoForm::new(self.coeff.star().sigma_pow(2).neg())
    }

    /// ℤ-degree (`v` contributes 0); `None` for zero or inhomogeneous forms.
    pub fn degree(&self) -> Option<i64> {
        let mut degrees = self.coeff.iter().map(|(l, _)| *l);
        let first = degrees.next()?;
        degrees.all(|l| l == first).then_some(first)
    }

    pub fn eval_at(&self, q0: &BigRational) -> Result<BTreeMap<i64, BigRational>, ScalarError> {
        self.coeff.eval_at(q0)
    }
}

/// The differential in degree 0: `d(a) = ∂(a)ω + ∂̄(a)ω*`.
pub fn d0(a: &DiscElement) -> OneForm {
    OneForm::new(a.partial(), a.partial_bar())
}

/// `dω` as a 2-form: `q⁸z²·v`.
fn d_omega() -> TwoForm {
    TwoForm::new(CircleElement::monomial(2, Scalar::q_pow(8)))
}

/// `dω*` as a 2-form: `−z*²·v`.
fn d_omega_star() -> TwoForm {
    TwoForm::new(CircleElement::monomial(-2, -Scalar::one()))
}

/// Product of basic generator pairs, the defining table of `Ω²`.
fn basic_wedge(left_is_star: bool, right_is_star: bool) -> TwoForm {
    let ratio = (Scalar::q_pow(2) - Scalar::one())
        .checked_div(&(Scalar::q_pow(4) + Scalar::one()))
        .expect("q^4 + 1 is nonzero");
    match (left_is_star, right_is_star) {
        (false, true) => TwoForm::volume(),
        (true, false) => TwoForm::volume().scale(&-Scalar::q_pow(6)),
        (false, false) => TwoForm::new(CircleElement::monomial(4, &Scalar::q_pow(12) * &ratio)),
        (true, true) => TwoForm::new(CircleElement::monomial(-4, &Scalar::q_pow(-4) * &ratio)),
    }
}

/// The wedge product `ν∧μ`, bilinear over the bimodule structure:
/// `(pω + rω*)(sω + tω*)` pushes `s`, `t` through the left generator by σ and
/// then multiplies the four basic products from the left.
pub fn wedge(nu: &OneForm, mu: &OneForm) -> TwoForm {
    let mut out = TwoForm::zero();
    let pairs = [
        (&nu.coeff_omega, &mu.coeff_omega, false, false),
        (&nu.coeff_omega, &mu.coeff_omega_star, false, true),
        (&nu.coeff_omega_star, &mu.coeff_omega, true, false),
        (&nu.coeff_omega_star, &mu.coeff_omega_star, true, true),
    ];
    for (left, right, ls, rs) in pairs {
        if left.is_zero() || right.is_zero() {
            continue;
        }
        let coeff = left.mul(&right.sigma());
        out = out.add(&basic_wedge(ls, rs).left_mul(&coeff));
    }
    out
}

/// The differential in degree 1, by the graded Leibniz rule applied to the
/// free presentation: `d(pω + rω*) = d(p)∧ω + p·dω + d(r)∧ω* + r·dω*`.
pub fn d1(nu: &OneForm) -> TwoForm {
    wedge(&d0(&nu.coeff_omega), &OneForm::omega())
        .add(&d_omega().left_mul(&nu.coeff_omega))
        .add(&wedge(&d0(&nu.coeff_omega_star), &OneForm::omega_star()))
        .add(&d_omega_star().left_mul(&nu.coeff_omega_star))
}

fn format_factor(coeff: &DiscElement, generator: &str, out: &mut Vec<String>) {
    if coeff.is_zero() {
        return;
    }
    if coeff == &DiscElement::one() {
        out.push(generator.to_string());
    } else if coeff.num_terms() == 1 {
        let ((k, l), c) = coeff.iter().next().expect("single term");
        let monomial = format_monomial(*k, *l);
        let scaled = format_scaled(c, &monomial);
        out.push(format!("{scaled}*{generator}"));
    } else {
        out.push(format!("({coeff})*{generator}"));
    }
}

fn join_signed(chunks: Vec<String>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if chunks.is_empty() {
        return write!(f, "0");
    }
    for (i, chunk) in chunks.iter().enumerate() {
        if i == 0 {
            write!(f, "{chunk}")?;
        } else if let Some(rest) = chunk.strip_prefix('-') {
            write!(f, " - {rest}")?;
        } else {
            write!(f, " + {chunk}")?;
        }
    }
    Ok(())
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut chunks = Vec::new();
        format_factor(&self.coeff_omega, "w", &mut chunks);
        format_factor(&self.coeff_omega_star, "ws", &mut chunks);
        join_signed(chunks, f)
    }
}

impl fmt::Display for CircleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in self.iter() {
            let negative = c.numerator().leading_coeff().map(|a| a.sign()) == Some(Sign::Minus);
            let (sep, shown) = if first {
                (String::new(), c.clone())
            } else if negative {
                (" - ".to_string(), -c)
            } else {
                (" + ".to_string(), c.clone())
            };
            write!(f, "{sep}{}", format_scaled(&shown, &format_monomial(0, *l)))?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.coeff == CircleElement::one() {
            return write!(f, "v");
        }
        let mut chunks = Vec::new();
        if self.coeff.iter().count() == 1 {
            let (l, c) = self.coeff.iter().next().expect("single term");
            let monomial = format_monomial(0, *l);
            chunks.push(format!("{}*v", format_scaled(c, &monomial)));
        } else {
            chunks.push(format!("({})*v", self.coeff));
        }
        join_signed(chunks, f)
    }
}
