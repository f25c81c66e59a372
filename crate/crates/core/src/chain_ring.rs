//! The chain ring R = F_{p^k} + uF_{p^k} (u^2 = 0) and the quotient ring
//! R[x]/<x^{p^s} - 1>.
//!
//! In characteristic p, x^{p^s} - 1 = (x - 1)^{p^s}, so with y = x - 1 the
//! quotient is the truncated polynomial ring R[y]/<y^{p^s}>. Polynomials are
//! stored in the y-basis; the x-basis only appears at conversion edges.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::limits::MAX_LENGTH;

/// `a + u b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl RingElement {
    pub const ZERO: RingElement = RingElement::new(FieldElement::ZERO, FieldElement::ZERO);
    pub const ONE: RingElement = RingElement::new(FieldElement::ONE, FieldElement::ZERO);
    pub const U: RingElement = RingElement::new(FieldElement::ZERO, FieldElement::ONE);

    pub const fn new(a: FieldElement, b: FieldElement) -> Self {
        RingElement { a, b }
    }

    pub const fn scalar(a: FieldElement) -> Self {
        RingElement { a, b: FieldElement::ZERO }
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_unit(self) -> bool {
        !self.a.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    /// `r1 * r2^{-1}`.
    InvMul,
}

/// Arithmetic of F_{p^k} + uF_{p^k} over a shared field context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRing {
    field: Arc<FieldCtx>,
}

impl ChainRing {
    pub fn new(field: Arc<FieldCtx>) -> Self {
        ChainRing { field }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn add(&self, x: RingElement, y: RingElement) -> RingElement {
        RingElement::new(self.field.add(x.a, y.a), self.field.add(x.b, y.b))
    }

    pub fn sub(&self, x: RingElement, y: RingElement) -> RingElement {
        RingElement::new(self.field.sub(x.a, y.a), self.field.sub(x.b, y.b))
    }

    pub fn neg(&self, x: RingElement) -> RingElement {
        RingElement::new(self.field.neg(x.a), self.field.neg(x.b))
    }

    pub fn mul(&self, x: RingElement, y: RingElement) -> RingElement {
        let f = &self.field;
        RingElement::new(f.mul(x.a, y.a), f.add(f.mul(x.a, y.b), f.mul(x.b, y.a)))
    }

    /// `(a + ub)^{-1} = a^{-1} - u b a^{-2}`.
    pub fn inv(&self, x: RingElement) -> Result<RingElement> {
        let f = &self.field;
        let ai = f.inv(x.a).ok_or(Error::NonUnit)?;
        Ok(RingElement::new(ai, f.neg(f.mul(x.b, f.mul(ai, ai)))))
    }

    pub fn ring_arith(&self, x: RingElement, y: RingElement, op: RingOp) -> Result<RingElement> {
        for e in [x.a, x.b, y.a, y.b] {
            self.field.element(e.code())?;
        }
        Ok(match op {
            RingOp::Add => self.add(x, y),
            RingOp::Sub => self.sub(x, y),
            RingOp::Mul => self.mul(x, y),
            RingOp::InvMul => self.mul(x, self.inv(y)?),
        })
    }

    /// The order-2 automorphism `a + ub -> a^{p^{k/2}} + u b^{p^{k/2}}`.
    pub fn rho(&self, x: RingElement) -> Result<RingElement> {
        let k = self.field.k();
        if !k.is_multiple_of(2) {
            return Err(Error::OddDegree(k));
        }
        Ok(self.rho_unchecked(x))
    }

    pub(crate) fn rho_unchecked(&self, x: RingElement) -> RingElement {
        let half = (self.field.k() / 2) as u64;
        RingElement::new(self.field.frobenius(x.a, half), self.field.frobenius(x.b, half))
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        self.field
            .elements()
            .flat_map(move |b| self.field.elements().map(move |a| RingElement::new(a, b)))
    }
}

/// C(n, j) mod p by Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut j: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || j > 0 {
        let (nd, jd) = (n % p, j % p);
        if jd > nd {
            return 0;
        }
        acc = acc * small_binomial(nd, jd, p) % p;
        n /= p;
        j /= p;
    }
    acc
}

/// C(n, j) mod p for n < p, via the multiplicative formula.
fn small_binomial(n: u64, j: u64, p: u64) -> u64 {
    let j = j.min(n - j);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..j {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// The quotient ring R[x]/<x^{p^s} - 1> with n = p^s.
#[derive(Debug)]
pub struct PolyRing {
    ring: ChainRing,
    s: u32,
    n: usize,
    /// `binom[m][j] = C(m, j) mod p` for m, j < n.
    binom: Vec<Vec<u64>>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.s == other.s
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new(field: Arc<FieldCtx>, s: u32) -> Result<Arc<PolyRing>> {
        if s < 1 {
            return Err(Error::range("s", s, ">= 1"));
        }
        let p = field.p();
        let n = p
            .checked_pow(s)
            .filter(|&n| n <= MAX_LENGTH)
            .ok_or_else(|| Error::bound("length p^s", format!("{p}^{s}"), MAX_LENGTH))?
            as usize;
        let binom = (0..n)
            .map(|m| (0..n).map(|j| binomial_mod(m as u64, j as u64, p)).collect())
            .collect();
        Ok(Arc::new(PolyRing {
            ring: ChainRing::new(field),
            s,
            n,
            binom,
        }))
    }

    /// Convenience constructor building the field as well.
    pub fn create(p: u64, k: u32, s: u32) -> Result<Arc<PolyRing>> {
        PolyRing::new(FieldCtx::new(p, k)?, s)
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.ring.field()
    }

    pub fn p(&self) -> u64 {
        self.field().p()
    }

    pub fn k(&self) -> u32 {
        self.field().k()
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// The length n = p^s.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn binom(&self, m: usize, j: usize) -> u64 {
        if j > m {
            0
        } else {
            self.binom[m][j]
        }
    }

    /// `(-1)^e` as a field element.
    pub fn sign(&self, e: usize) -> FieldElement {
        if e.is_multiple_of(2) {
            FieldElement::ONE
        } else {
            self.field().from_int(-1)
        }
    }
}

/// Element of R[x]/<x^{p^s} - 1>; `coeffs[j]` is the coefficient of (x - 1)^j.
#[derive(Clone, Debug)]
pub struct QuotientPoly {
    ring: Arc<PolyRing>,
    coeffs: Vec<RingElement>,
}

impl PartialEq for QuotientPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.coeffs == other.coeffs
    }
}

impl Eq for QuotientPoly {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    X,
    Y,
}

#[derive(Serialize)]
struct PolyJson {
    basis: &'static str,
    coeffs: Vec<[String; 2]>,
}

impl QuotientPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        QuotientPoly {
            ring: ring.clone(),
            coeffs: vec![RingElement::ZERO; ring.n()],
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::monomial(ring, 0, RingElement::ONE)
    }

    /// `c (x - 1)^j`, zero when j >= n.
    pub fn monomial(ring: &Arc<PolyRing>, j: usize, c: RingElement) -> Self {
        let mut f = Self::zero(ring);
        if j < ring.n() {
            f.coeffs[j] = c;
        }
        f
    }

    /// The polynomial x.
    pub fn x(ring: &Arc<PolyRing>) -> Self {
        let mut f = Self::one(ring);
        f.coeffs[1] = RingElement::ONE;
        f
    }

    /// Builds from y-basis coefficients.
    pub fn from_y(ring: &Arc<PolyRing>, coeffs: Vec<RingElement>) -> Result<Self> {
        if coeffs.len() != ring.n() {
            return Err(Error::WrongLength {
                expected: ring.n(),
                got: coeffs.len(),
            });
        }
        Ok(QuotientPoly {
            ring: ring.clone(),
            coeffs,
        })
    }

    /// Builds from x-basis coefficients: x^m = sum_j C(m, j) y^j.
    pub fn from_x(ring: &Arc<PolyRing>, xs: &[RingElement]) -> Result<Self> {
        let n = ring.n();
        if xs.len() != n {
            return Err(Error::WrongLength {
                expected: n,
                got: xs.len(),
            });
        }
        let r = ring.ring();
        let f = ring.field();
        let mut ys = vec![RingElement::ZERO; n];
        for (m, &c) in xs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, y) in ys.iter_mut().enumerate().take(m + 1) {
                let b = ring.binom(m, j);
                if b != 0 {
                    *y = r.add(*y, r.mul(c, RingElement::scalar(f.from_int(b as i64))));
                }
            }
        }
        Ok(QuotientPoly {
            ring: ring.clone(),
            coeffs: ys,
        })
    }

    /// x-basis coefficients: y^j = sum_i C(j, i) (-1)^{j-i} x^i.
    pub fn to_x(&self) -> Vec<RingElement> {
        let ring = &self.ring;
        let r = ring.ring();
        let f = ring.field();
        let n = ring.n();
        let mut xs = vec![RingElement::ZERO; n];
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, x) in xs.iter_mut().enumerate().take(j + 1) {
                let b = ring.binom(j, i);
                if b != 0 {
                    let coef = f.mul(f.from_int(b as i64), ring.sign(j - i));
                    *x = r.add(*x, r.mul(c, RingElement::scalar(coef)));
                }
            }
        }
        xs
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> RingElement {
        self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &QuotientPoly) -> Result<()> {
        if *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &QuotientPoly) -> Result<QuotientPoly> {
        self.check(other)?;
        let r = self.ring.ring();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| r.add(a, b))
            .collect();
        Ok(QuotientPoly {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &QuotientPoly) -> Result<QuotientPoly> {
        self.check(other)?;
        let r = self.ring.ring();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| r.sub(a, b))
            .collect();
        Ok(QuotientPoly {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// Product in R[y]/<y^n>; terms of y-degree >= n vanish.
    pub fn mul(&self, other: &QuotientPoly) -> Result<QuotientPoly> {
        self.check(other)?;
        let r = self.ring.ring();
        let n = self.ring.n();
        let mut out = vec![RingElement::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = r.add(out[i + j], r.mul(a, b));
                }
            }
        }
        Ok(QuotientPoly {
            ring: self.ring.clone(),
            coeffs: out,
        })
    }

    pub fn scalar_mul(&self, c: RingElement) -> QuotientPoly {
        let r = self.ring.ring();
        QuotientPoly {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|&a| r.mul(c, a)).collect(),
        }
    }

    /// Multiplication by y^e.
    pub fn shift_y(&self, e: usize) -> QuotientPoly {
        let n = self.ring.n();
        let mut out = vec![RingElement::ZERO; n];
        if e < n {
            out[e..].copy_from_slice(&self.coeffs[..n - e]);
        }
        QuotientPoly {
            ring: self.ring.clone(),
            coeffs: out,
        }
    }

    /// Ring map fixing R and sending x to x^{-1} = x^{n-1}.
    pub fn conjugate(&self) -> QuotientPoly {
        let xs = self.to_x();
        let n = xs.len();
        let flipped: Vec<_> = (0..n).map(|i| xs[(n - i) % n]).collect();
        QuotientPoly::from_x(&self.ring, &flipped).expect("length preserved")
    }

    /// Reduction modulo u.
    pub fn mu(&self) -> QuotientPoly {
        QuotientPoly {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| RingElement::scalar(c.a)).collect(),
        }
    }

    /// The u-component `b(y)` as a pure-field polynomial `b(y) + u 0`.
    pub fn u_part(&self) -> QuotientPoly {
        QuotientPoly {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| RingElement::scalar(c.b)).collect(),
        }
    }

    /// (x - 1)-adic valuation of the residue `mu(f)`; n when it vanishes.
    pub fn a_valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.a.is_zero())
            .unwrap_or(self.ring.n())
    }

    /// (x - 1)-adic valuation of the u-component; n when it vanishes.
    pub fn b_valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.b.is_zero())
            .unwrap_or(self.ring.n())
    }

    pub fn to_json(&self, basis: Basis) -> serde_json::Value {
        let f = self.ring.field();
        let coeffs = match basis {
            Basis::Y => self.coeffs.clone(),
            Basis::X => self.to_x(),
        };
        let body = PolyJson {
            basis: match basis {
                Basis::X => "x",
                Basis::Y => "y",
            },
            coeffs: coeffs
                .iter()
                .map(|c| [f.digit_string(c.a), f.digit_string(c.b)])
                .collect(),
        };
        serde_json::to_value(body).expect("plain data serializes")
    }
}
