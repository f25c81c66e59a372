//! Prime fields F_p and their extensions F_{p^k}.
//!
//! An element is the coefficient vector of a polynomial of degree < k in the
//! generator `g`, packed as the base-p integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
//! The packing keeps elements `Copy` and hashable; `coeffs` unpacks it.
//!
//! The modulus of a context is the lexicographically smallest monic irreducible
//! polynomial of degree k (coefficients compared from the constant term up), so
//! equal `(p, k)` always give the same context.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::{MAX_FIELD_ORDER, MUL_TABLE_ORDER};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a packed code without checking it against any context.
    pub const fn from_code(code: u64) -> Self {
        FieldElement(code)
    }

    pub const fn code(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub struct FieldCtx {
    p: u64,
    k: u32,
    order: u64,
    modulus: Vec<u64>,
    mul_table: Option<Vec<u32>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// Builds F_{p^k}. Fails for composite p, k = 0, or p^k above `MAX_FIELD_ORDER`.
    pub fn new(p: u64, k: u32) -> Result<Arc<FieldCtx>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::InvalidDegree(k));
        }
        let order = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| Error::bound("field order p^k", format!("{p}^{k}"), MAX_FIELD_ORDER))?;
        let modulus = smallest_irreducible(p, k as usize);
        let mut ctx = FieldCtx {
            p,
            k,
            order,
            modulus,
            mul_table: None,
        };
        if order <= MUL_TABLE_ORDER {
            let mut table = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    table[(a * order + b) as usize] =
                        ctx.mul_slow(FieldElement(a), FieldElement(b)).0 as u32;
                }
            }
            ctx.mul_table = Some(table);
        }
        Ok(Arc::new(ctx))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Modulus coefficients, low-to-high, including the leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        join_digits(&self.modulus)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The class of the polynomial variable; for k = 1 this is the root of x, i.e. 0.
    pub fn generator(&self) -> FieldElement {
        if self.k == 1 {
            FieldElement::ZERO
        } else {
            FieldElement(self.p)
        }
    }

    /// The F_p-basis `1, g, ..., g^{k-1}`.
    pub fn basis(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.k).map(move |i| FieldElement(self.p.pow(i)))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement(c.rem_euclid(self.p as i64) as u64)
    }

    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code < self.order {
            Ok(FieldElement(code))
        } else {
            Err(Error::ForeignElement(code))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.k as usize {
            return Err(Error::WrongLength {
                expected: self.k as usize,
                got: coeffs.len(),
            });
        }
        let mut code = 0;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::ForeignElement(c));
            }
            code = code * self.p + c;
        }
        Ok(FieldElement(code))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut c = a.0;
        for _ in 0..self.k {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.k == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..self.k {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..self.k {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.mul_table {
            Some(t) => FieldElement(t[(a.0 * self.order + b.0) as usize] as u64),
            None => self.mul_slow(a, b),
        }
    }

    /// Schoolbook product reduced by the modulus; the table path must agree with it.
    pub fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let k = self.k as usize;
        if k == 1 {
            return FieldElement(a.0 * b.0 % self.p);
        }
        let (da, db) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for i in 0..k {
                let sub = c * self.modulus[i] % self.p;
                prod[d - k + i] = (prod[d - k + i] + self.p - sub) % self.p;
            }
            prod[d] = 0;
        }
        let mut code = 0;
        for &c in prod[..k].iter().rev() {
            code = code * self.p + c;
        }
        FieldElement(code)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order - 2))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, inv))
    }

    /// Checked arithmetic entry point: operands must be codes of this field.
    pub fn field_arith(&self, a: FieldElement, b: FieldElement, op: FieldOp) -> Result<FieldElement> {
        self.element(a.0)?;
        self.element(b.0)?;
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Div => self.div(a, b)?,
        })
    }

    /// a^{p^m}.
    pub fn frobenius(&self, a: FieldElement, m: u64) -> FieldElement {
        let mut out = a;
        for _ in 0..(m % self.k as u64) {
            out = self.pow(out, self.p);
        }
        out
    }

    /// Polynomial in `g`, e.g. `g^2+2g+1`.
    pub fn render(&self, a: FieldElement) -> String {
        let c = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let coef = if ci == 1 && i > 0 { String::new() } else { ci.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}g"),
                _ => format!("{coef}g^{i}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Comma-separated F_p digits, low-to-high.
    pub fn digit_string(&self, a: FieldElement) -> String {
        join_digits(&self.coeffs(a))
    }
}

pub(crate) fn join_digits(d: &[u64]) -> String {
    d.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Remainder of `num` modulo the monic `den` over F_p; both low-to-high.
fn poly_rem(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut den = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                den.push(c % p);
                c /= p;
            }
            den.push(1);
            if poly_rem(f, &den, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let count = p.pow(k as u32);
    for t in 0..count {
        // c_0 is the most significant digit of t, giving low-degree-first lexicographic order.
        let mut f = vec![0u64; k + 1];
        let mut c = t;
        for i in (0..k).rev() {
            f[i] = c % p;
            c /= p;
        }
        f[k] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("every degree has a monic irreducible polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_for_small_fields() {
        assert_eq!(FieldCtx::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldCtx::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldCtx::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn modulus_matches_exhaustive_scan_over_f3() {
        // Monic quadratics x^2 + b x + c, ordered by (c, b); irreducible iff no root in F_3.
        let mut expected = None;
        'scan: for c in 0..3u64 {
            for b in 0..3u64 {
                if (0..3u64).all(|x| (x * x + b * x + c) % 3 != 0) {
                    expected = Some(vec![c, b, 1]);
                    break 'scan;
                }
            }
        }
        assert_eq!(FieldCtx::new(3, 2).unwrap().modulus(), expected.unwrap().as_slice());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldCtx::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldCtx::new(2, 0).unwrap_err(), Error::InvalidDegree(0));
        assert!(FieldCtx::new(2, 40).unwrap_err().is_size_bound());
    }

    #[test]
    fn f4_relations() {
        let f = FieldCtx::new(2, 2).unwrap();
        let g = f.generator();
        let g1 = f.add(g, f.one());
        assert_eq!(f.mul(g, g), g1);
        assert_eq!(f.mul(g, g1), f.one());
        assert_eq!(f.frobenius(g, 1), g1);
        assert_eq!(f.frobenius(g, 0), g);
        assert_eq!(f.frobenius(f.frobenius(g, 1), 1), g);
        assert_eq!(f.add(g, f.zero()), g);
        assert_eq!(f.render(g1), "g+1");
    }

    #[test]
    fn field_arith_errors() {
        let f = FieldCtx::new(3, 1).unwrap();
        let two = f.from_int(2);
        assert_eq!(f.field_arith(two, f.zero(), FieldOp::Div), Err(Error::DivisionByZero));
        assert_eq!(
            f.field_arith(FieldElement::from_code(7), two, FieldOp::Add),
            Err(Error::ForeignElement(7))
        );
        assert_eq!(f.field_arith(two, two, FieldOp::Mul).unwrap(), f.one());
    }

    fn small_fields() -> Vec<Arc<FieldCtx>> {
        let mut out = Vec::new();
        for (p, kmax) in [(2u64, 8u32), (3, 5), (5, 3), (7, 2), (11, 2), (13, 2)] {
            for k in 1..=kmax {
                if p.pow(k) <= 256 {
                    out.push(FieldCtx::new(p, k).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn inverses_exhaustive() {
        for f in small_fields() {
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one(), "{f:?} {a:?}");
            }
        }
    }

    #[test]
    fn table_agrees_with_schoolbook() {
        for f in small_fields() {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                }
            }
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism() {
        for f in small_fields() {
            for a in f.elements() {
                assert_eq!(f.frobenius(a, f.k() as u64), a);
                for b in f.elements() {
                    let fa = f.frobenius(a, 1);
                    let fb = f.frobenius(b, 1);
                    assert_eq!(f.frobenius(f.add(a, b), 1), f.add(fa, fb));
                    assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(fa, fb));
                }
            }
        }
    }

    #[test]
    fn half_frobenius_fixed_points() {
        for f in small_fields().into_iter().filter(|f| f.k() % 2 == 0) {
            let half = (f.k() / 2) as u64;
            let fixed = f.elements().filter(|&a| f.frobenius(a, half) == a).count() as u64;
            assert_eq!(fixed, f.p().pow(f.k() / 2));
            assert!(f.elements().all(|a| f.frobenius(f.frobenius(a, half), half) == a));
        }
    }

    #[test]
    fn coefficient_round_trip() {
        let f = FieldCtx::new(5, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        }
    }
}
