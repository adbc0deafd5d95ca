//! The quantum cone subalgebras: membership by ℤ-degree, the generator
//! relations for `y = z^N`, and constructive Bezout witnesses showing that
//! the calculus restricted to the cone contains `z*²ω`, `z^{N−2}ω`, and the
//! volume form.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::calculus::{d0, OneForm, TwoForm};
use crate::disc::DiscElement;
use crate::scalar::Scalar;

/// Parameters of the cone `O(C^N_q)`: the degree modulus `N ≥ 2`
/// (`N = 1` is the disc itself).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConeParams {
    n: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("cone modulus must be at least 2, got {0}")]
    ModulusTooSmall(u32),
    #[error("coefficient polynomials are not coprime: gcd = {gcd}")]
    NotCoprime { gcd: String },
    #[error("element is not in the cone subalgebra for N = {n}")]
    NotConeElement { n: u32 },
}

impl ConeParams {
    pub fn new(n: u32) -> Result<Self, ConeError> {
        if n < 2 {
            return Err(ConeError::ModulusTooSmall(n));
        }
        Ok(ConeParams { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The cone generator `y = z^N`.
    pub fn y(&self) -> DiscElement {
        DiscElement::monomial(0, self.n as i64, Scalar::one())
    }

    pub fn y_star(&self) -> DiscElement {
        self.y().star()
    }

    /// Degree-membership for algebra elements: every monomial degree must be
    /// divisible by `N`.
    pub fn is_cone_element(&self, a: &DiscElement) -> bool {
        a.iter().all(|((_, l), _)| l.rem_euclid(self.n as i64) == 0)
    }

    /// Membership for 1-forms: `ω` contributes +2 and `ω*` contributes −2 to
    /// the degree of each monomial.
    pub fn is_cone_one_form(&self, nu: &OneForm) -> bool {
        let n = self.n as i64;
        nu.coeff_omega.iter().all(|((_, l), _)| (l + 2).rem_euclid(n) == 0)
            && nu.coeff_omega_star.iter().all(|((_, l), _)| (l - 2).rem_euclid(n) == 0)
    }

    /// Membership for 2-forms: `v` is degree 0.
    pub fn is_cone_two_form(&self, w: &TwoForm) -> bool {
        w.coeff.iter().all(|(l, _)| l.rem_euclid(self.n as i64) == 0)
    }
}

/// A polynomial in `x` with scalar coefficients — the coefficient ring for
/// the Bezout witnesses, a genuine Euclidean domain over `Q(q)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyX {
    coeffs: BTreeMap<u32, Scalar>,
}

impl PolyX {
    pub fn zero() -> Self {
        PolyX::default()
    }

    pub fn one() -> Self {
        PolyX::monomial(0, Scalar::one())
    }

    pub fn monomial(k: u32, c: Scalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        PolyX { coeffs }
    }

    /// `1 − c·x`, the ubiquitous linear factor.
    pub fn one_minus(c: Scalar) -> Self {
        PolyX::one().sub(&PolyX::monomial(1, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.values().next_back()
    }

    pub fn coeff(&self, k: u32) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &Scalar)> {
        self.coeffs.iter()
    }

    fn insert_add(&mut self, k: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(Scalar::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add(&self, other: &PolyX) -> PolyX {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.insert_add(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &PolyX) -> PolyX {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyX {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> PolyX {
        if c.is_zero() {
            return PolyX::zero();
        }
        PolyX { coeffs: self.coeffs.iter().map(|(k, a)| (*k, a * c)).collect() }
    }

    pub fn mul(&self, other: &PolyX) -> PolyX {
        let mut out = PolyX::zero();
        for (k1, c1) in self.iter() {
            for (k2, c2) in other.iter() {
                out.insert_add(k1 + k2, &(c1 * c2));
            }
        }
        out
    }

    /// Euclidean division over the field: `self = q·d + r` with
    /// `deg r < deg d`.
    pub fn div_rem(&self, d: &PolyX) -> (PolyX, PolyX) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.leading_coeff().expect("nonzero divisor").clone();
        let mut quot = PolyX::zero();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff().expect("nonzero remainder") / &lead;
            let shift = rd - dd;
            quot.insert_add(shift, &factor);
            rem = rem.sub(&d.mul(&PolyX::monomial(shift, factor)));
        }
        (quot, rem)
    }

    /// The element `Σ c_k x^k` of the disc algebra.
    pub fn to_disc(&self) -> DiscElement {
        let mut out = DiscElement::zero();
        for (k, c) in self.iter() {
            out = out.add(&DiscElement::monomial(*k, 0, c.clone()));
        }
        out
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_disc())
    }
}

/// Extended Euclidean algorithm over `Q(q)[x]`: returns `(g, a, b)` with
/// `g = gcd(p, r)` monic and `a·p + b·r = g` exactly.
pub fn ext_gcd_x(p: &PolyX, r: &PolyX) -> (PolyX, PolyX, PolyX) {
    assert!(!(p.is_zero() && r.is_zero()), "gcd of two zero polynomials");
    let (mut r0, mut r1) = (p.clone(), r.clone());
    let (mut s0, mut s1) = (PolyX::one(), PolyX::zero());
    let (mut t0, mut t1) = (PolyX::zero(), PolyX::one());
    // Every remainder is rescaled to be monic as soon as it is produced.
    // Without this the leading coefficients pile up multiplicatively and the
    // rational functions inside the remainder sequence grow exponentially;
    // the final triple is unaffected because the minimal-degree Bezout pair
    // for the monic gcd is unique.
    if let Some(lead) = r1.leading_coeff() {
        let inv = lead.inv().expect("leading coefficient is nonzero");
        r1 = r1.scale(&inv);
        t1 = t1.scale(&inv);
    }
    while !r1.is_zero() {
        let (q, rem) = r0.div_rem(&r1);
        let mut rn = rem;
        let mut sn = s0.sub(&q.mul(&s1));
        let mut tn = t0.sub(&q.mul(&t1));
        if let Some(lead) = rn.leading_coeff() {
            let inv = lead.inv().expect("leading coefficient is nonzero");
            rn = rn.scale(&inv);
            sn = sn.scale(&inv);
            tn = tn.scale(&inv);
        }
        (r0, r1) = (r1, rn);
        (s0, s1) = (s1, sn);
        (t0, t1) = (t1, tn);
    }
    let lead = r0.leading_coeff().expect("nonzero gcd").clone();
    let inv = lead.inv().expect("leading coefficient is nonzero");
    (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
}

/// The closed form `dy = ([N]_{q²} − q^{−2N+4}[N]_{q⁴}·x)·z^{N−2}·ω`.
pub fn dy_formula(p: &ConeParams) -> OneForm {
    let n = p.n() as i64;
    let head = Scalar::q_int(n, 2);
    let tail = &Scalar::q_pow(-2 * n + 4) * &Scalar::q_int(n, 4);
    let poly = PolyX::one_minus(&tail / &head).scale(&head);
    let coeff = poly.to_disc().mul(&DiscElement::monomial(0, n - 2, Scalar::one()));
    OneForm::new(coeff, DiscElement::zero())
}

/// One Bezout certificate: scalars `a(x)`, `b(x)` with
/// `a·lhs_left + b·lhs_right = target` in `Ω¹`, all four forms recorded.
#[derive(Debug, Clone)]
pub struct ConeWitness {
    pub a: PolyX,
    pub b: PolyX,
    pub lhs_left: OneForm,
    pub lhs_right: OneForm,
    pub combination: OneForm,
    pub target: OneForm,
}

impl ConeWitness {
    pub fn verified(&self) -> bool {
        self.combination == self.target
    }
}

/// Extracts `P` with `nu = P(x)·z^{l}·ω`; `None` if `nu` has any `ω*` part
/// or a different z-degree.
fn omega_x_poly(nu: &OneForm, l: i64) -> Option<PolyX> {
    if !nu.coeff_omega_star.is_zero() {
        return None;
    }
    let mut out = PolyX::zero();
    for ((k, zl), c) in nu.coeff_omega.iter() {
        if *zl != l {
            return None;
        }
        out.insert_add(*k, c);
    }
    Some(out)
}

fn bezout_combination(
    lhs_left: OneForm,
    lhs_right: OneForm,
    target: OneForm,
    l: i64,
) -> Result<ConeWitness, ConeError> {
    let p = omega_x_poly(&lhs_left, l).expect("left form is an x-polynomial times z^l ω");
    let r = omega_x_poly(&lhs_right, l).expect("right form is an x-polynomial times z^l ω");
    let (g, a, b) = ext_gcd_x(&p, &r);
    if g != PolyX::one() {
        return Err(ConeError::NotCoprime { gcd: g.to_string() });
    }
    let combination = lhs_left.left_mul(&a.to_disc()).add(&lhs_right.left_mul(&b.to_disc()));
    Ok(ConeWitness { a, b, lhs_left, lhs_right, combination, target })
}

/// Witness that `z*²ω ∈ Ω¹(C^N_q)`: the combination `a(x)·(y*·dy) + b(x)·(dy·y*)`.
pub fn witness_zstar2_omega(p: &ConeParams) -> Result<ConeWitness, ConeError> {
    let dy = d0(&p.y());
    let left = dy.left_mul(&p.y_star());
    let right = dy.right_mul(&p.y_star());
    let target = OneForm::omega().left_mul(&DiscElement::monomial(0, -2, Scalar::one()));
    bezout_combination(left, right, target, -2)
}

/// Witness that `z^{N−2}ω ∈ Ω¹(C^N_q)`: the combination
/// `a(x)·(z*²ω·y) + b(x)·(y·z*²ω)`.
pub fn witness_zn2_omega(p: &ConeParams) -> Result<ConeWitness, ConeError> {
    let zstar2_omega = OneForm::omega().left_mul(&DiscElement::monomial(0, -2, Scalar::one()));
    let left = zstar2_omega.right_mul(&p.y());
    let right = zstar2_omega.left_mul(&p.y());
    let n = p.n() as i64;
    let target = OneForm::omega().left_mul(&DiscElement::monomial(0, n - 2, Scalar::one()));
    bezout_combination(left, right, target, n - 2)
}

/// The two sides of the volume identity `wedge(z²ω*, z*²ω) = −q²·v`,
/// exhibiting `v` inside `Ω²(C^N_q)` for every `N`.
pub fn witness_volume() -> (TwoForm, TwoForm) {
    let lhs = crate::calculus::wedge(
        &OneForm::omega_star().left_mul(&DiscElement::monomial(0, 2, Scalar::one())),
        &OneForm::omega().left_mul(&DiscElement::monomial(0, -2, Scalar::one())),
    );
    (lhs, TwoForm::volume().scale(&-Scalar::q_pow(2)))
}

/// The three defining relations of the cone, as (lhs, rhs) pairs:
/// `xy = q^{2N}yx`, `yy* = Π_{l=0}^{N−1}(1−q^{−2l}x)`,
/// `y*y = Π_{l=1}^{N}(1−q^{2l}x)`.
pub fn cone_relation_sides(p: &ConeParams) -> [(String, DiscElement, DiscElement); 3] {
    let n = p.n() as i64;
    let (x, y, ys) = (DiscElement::x(), p.y(), p.y_star());
    let xy = (
        "xy".to_string(),
        x.mul(&y),
        y.mul(&x).scale(&Scalar::q_pow(2 * n)),
    );
    let mut prod_down = DiscElement::one();
    for l in 0..n {
        prod_down = prod_down.mul(&PolyX::one_minus(Scalar::q_pow(-2 * l)).to_disc());
    }
    let yys = ("yy*".to_string(), y.mul(&ys), prod_down);
    let mut prod_up = DiscElement::one();
    for l in 1..=n {
        prod_up = prod_up.mul(&PolyX::one_minus(Scalar::q_pow(2 * l)).to_disc());
    }
    let ysy = ("y*y".to_string(), ys.mul(&y), prod_up);
    [xy, yys, ysy]
}

/// The obstruction scalars `q^{2k}(q^{2N}+1) − (q²+1)` for every admissible
/// exponent `k ∈ [−2N+2, −N−1] ∪ [2, N−1]`; each must be nonzero, which is
/// exactly the non-solvability making the coprimality argument work.
pub fn crit_values(n: u32) -> Vec<(i64, Scalar)> {
    let n = n as i64;
    let mut out = Vec::new();
    let factor = Scalar::q_pow(2 * n) + Scalar::one();
    let target = Scalar::q_pow(2) + Scalar::one();
    for k in (-2 * n + 2..=-n - 1).chain(2..=n - 1) {
        out.push((k, &(&Scalar::q_pow(2 * k) * &factor) - &target));
    }
    out
}
