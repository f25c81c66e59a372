//! Ideals of R[x]/<x^{p^s} - 1>, i.e. cyclic codes of length p^s over
//! R = F_{p^k} + uF_{p^k}.
//!
//! Every ideal C has a unique generator pair
//!
//! ```text
//! f0 = (x-1)^T0 + u * sum_{j<T1} h_j (x-1)^j,   f1 = u (x-1)^T1
//! ```
//!
//! where T0 and T1 are the (x-1)-valuations of the residue and torsion codes of C
//! (f0 = 0 when T0 = p^s, f1 = 0 when T1 = p^s). The triple (T0, T1, h) is the
//! identity of an ideal throughout the crate.
//!
//! The family A = {T0 + T1 <= p^s} is enumerated directly; the rest of the lattice
//! is its image under the annihilator map, which exchanges A and A' = {T0 + T1 >= p^s}.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bigcount::BigCount;
use crate::chain_ring::{PolyRing, QuotientPoly, RingElement};
use crate::error::{Error, Result};
use crate::gf::{is_prime, FieldCtx, FieldElement};
use crate::limits::MAX_ENUMERATION;
use crate::linalg::FqMatrix;

/// Numeric parameters (p, k, s) of the ring R[x]/<x^{p^s} - 1> over F_{p^k} + uF_{p^k}.
///
/// Counting needs no field arithmetic, so these are separate from `PolyRing`
/// and may describe rings far too large to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub p: u64,
    pub k: u32,
    pub s: u32,
}

impl CodeParams {
    pub fn new(p: u64, k: u32, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::InvalidDegree(k));
        }
        if s < 1 {
            return Err(Error::range("s", s, ">= 1"));
        }
        p.checked_pow(s)
            .filter(|&n| n <= 1 << 20)
            .ok_or_else(|| Error::bound("length p^s", format!("{p}^{s}"), 1u64 << 20))?;
        Ok(CodeParams { p, k, s })
    }

    pub fn of(ring: &PolyRing) -> Self {
        CodeParams {
            p: ring.p(),
            k: ring.k(),
            s: ring.s(),
        }
    }

    pub fn n(&self) -> u64 {
        self.p.pow(self.s)
    }

    /// |F_{p^k}| as an exact count.
    pub fn q(&self) -> Result<BigCount> {
        BigCount::power(self.p, self.k as u64)
    }
}

/// Number of ideals with T0 + T1 = d (all of which lie in A).
pub fn count_ideals_with_sum(params: CodeParams, d: u64) -> Result<BigCount> {
    let n = params.n();
    if d > n {
        return Err(Error::range("d", d, format!("[0, {n}]")));
    }
    let half = d / 2;
    BigCount::geometric(&params.q()?, half.min(n - half))
}

/// |A|, the number of ideals with T0 + T1 <= p^s.
pub fn count_family_a(params: CodeParams) -> Result<BigCount> {
    let n = params.n();
    let q = params.q()?;
    // count(d) = 1 + q + ... + q^{floor(d/2)} for every d <= n.
    let mut total = BigCount::zero();
    let mut geo = BigCount::one();
    let mut term = BigCount::one();
    let mut half = 0;
    for d in 0..=n {
        while half < d / 2 {
            term = &term * &q;
            geo = &geo + &term;
            half += 1;
        }
        total = &total + &geo;
    }
    Ok(total)
}

/// Total number of cyclic codes, with the closed-form summary kept for comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicCount {
    pub count: BigCount,
    /// `2|A| - (q^{2^{s-1}+1} - 1)/(q - 1)` for p = 2 and `2|A| - 1` for odd p.
    /// The odd-p branch undercounts the overlap and disagrees with `count`.
    pub closed_form: BigCount,
    pub closed_form_mismatch: bool,
}

/// 2|A| - |A ∩ A'| via the annihilator bijection between A and A'.
pub fn count_all_ideals(params: CodeParams) -> Result<CyclicCount> {
    let a = count_family_a(params)?;
    let overlap = count_ideals_with_sum(params, params.n())?;
    let twice = &a + &a;
    let count = &twice - &overlap;
    let closed_form = if params.p == 2 {
        // (q^{2^{s-1}+1} - 1)/(q - 1) coincides with the overlap term.
        let q = params.q()?;
        &twice - &BigCount::geometric(&q, params.n() / 2)?
    } else {
        &twice - &BigCount::one()
    };
    Ok(CyclicCount {
        closed_form_mismatch: closed_form != count,
        closed_form,
        count,
    })
}

#[derive(Clone, Debug)]
pub struct CanonicalIdeal {
    ring: Arc<PolyRing>,
    t0: usize,
    t1: usize,
    h: Vec<FieldElement>,
}

impl PartialEq for CanonicalIdeal {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.key() == other.key()
    }
}

impl Eq for CanonicalIdeal {}

#[derive(Serialize)]
struct IdealJson {
    #[serde(rename = "T0")]
    t0: usize,
    #[serde(rename = "T1")]
    t1: usize,
    h: Vec<String>,
    generators: String,
}

impl CanonicalIdeal {
    /// Validates a triple. Beyond `T1 <= T0 <= n` and the length of h, a triple
    /// with T0 + T1 > n must have `h_j = 0` for `j < T0 + T1 - n`
    /// (multiplying f0 by (x-1)^{n-T0} lands in the torsion part).
    pub fn new(ring: &Arc<PolyRing>, t0: usize, t1: usize, h: Vec<FieldElement>) -> Result<Self> {
        let n = ring.n();
        if t0 > n || t1 > t0 {
            return Err(Error::InvalidTriple(format!(
                "need 0 <= T1 <= T0 <= {n}, got T0 = {t0}, T1 = {t1}"
            )));
        }
        let expected = if t0 < n { t1 } else { 0 };
        if h.len() != expected {
            return Err(Error::InvalidTriple(format!(
                "h must have {expected} entries, got {}",
                h.len()
            )));
        }
        for &c in &h {
            ring.field().element(c.code())?;
        }
        if t0 + t1 > n {
            let low = t0 + t1 - n;
            if h[..low.min(h.len())].iter().any(|c| !c.is_zero()) {
                return Err(Error::InvalidTriple(format!(
                    "h_j must vanish for j < T0 + T1 - n = {low}"
                )));
            }
        }
        Ok(CanonicalIdeal {
            ring: ring.clone(),
            t0,
            t1,
            h,
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        CanonicalIdeal {
            ring: ring.clone(),
            t0: ring.n(),
            t1: ring.n(),
            h: Vec::new(),
        }
    }

    pub fn whole(ring: &Arc<PolyRing>) -> Self {
        CanonicalIdeal {
            ring: ring.clone(),
            t0: 0,
            t1: 0,
            h: Vec::new(),
        }
    }

    /// ⟨u⟩ = ⟨⟨0, u⟩⟩.
    pub fn u_ideal(ring: &Arc<PolyRing>) -> Self {
        CanonicalIdeal {
            ring: ring.clone(),
            t0: ring.n(),
            t1: 0,
            h: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn t0(&self) -> usize {
        self.t0
    }

    pub fn t1(&self) -> usize {
        self.t1
    }

    pub fn h(&self) -> &[FieldElement] {
        &self.h
    }

    pub fn key(&self) -> (usize, usize, &[FieldElement]) {
        (self.t0, self.t1, &self.h)
    }

    pub fn in_family_a(&self) -> bool {
        self.t0 + self.t1 <= self.ring.n()
    }

    pub fn in_family_a_prime(&self) -> bool {
        self.t0 + self.t1 >= self.ring.n()
    }

    /// The canonical pair (f0, f1); zero polynomials where the theory says so.
    pub fn generators(&self) -> (QuotientPoly, QuotientPoly) {
        let n = self.ring.n();
        let f0 = if self.t0 < n {
            let mut coeffs = vec![RingElement::ZERO; n];
            coeffs[self.t0].a = FieldElement::ONE;
            for (j, &hj) in self.h.iter().enumerate() {
                coeffs[j].b = hj;
            }
            QuotientPoly::from_y(&self.ring, coeffs).expect("length n")
        } else {
            QuotientPoly::zero(&self.ring)
        };
        let f1 = QuotientPoly::monomial(&self.ring, self.t1, RingElement::U);
        (f0, f1)
    }

    /// The nonzero canonical generators.
    pub fn generator_list(&self) -> Vec<QuotientPoly> {
        let (f0, f1) = self.generators();
        [f0, f1].into_iter().filter(|g| !g.is_zero()).collect()
    }

    /// log_p |C| = k (2n - T0 - T1).
    pub fn cardinality_log(&self) -> u64 {
        self.ring.k() as u64 * (2 * self.ring.n() - self.t0 - self.t1) as u64
    }

    pub fn contains(&self, f: &QuotientPoly) -> Result<bool> {
        if **f.ring() != *self.ring {
            return Err(Error::ContextMismatch);
        }
        let n = self.ring.n();
        let v = f.a_valuation();
        if v < self.t0 {
            return Ok(false);
        }
        let rest = if v == n {
            f.clone()
        } else {
            // a(y) = y^T0 w(y); subtract w f0 to clear the residue.
            let w: Vec<_> = (0..n)
                .map(|j| {
                    if j + self.t0 < n {
                        RingElement::scalar(f.coeff(j + self.t0).a)
                    } else {
                        RingElement::ZERO
                    }
                })
                .collect();
            let w = QuotientPoly::from_y(&self.ring, w)?;
            f.sub(&w.mul(&self.generators().0)?)?
        };
        debug_assert_eq!(rest.a_valuation(), n);
        Ok(rest.b_valuation() >= self.t1)
    }

    /// Ann(C): T0' = n - T1, T1' = n - T0, and h' = -h moved by n - T0 - T1 places.
    pub fn annihilator(&self) -> CanonicalIdeal {
        let n = self.ring.n() as isize;
        let (t0, t1) = (self.t0 as isize, self.t1 as isize);
        let (a0, a1) = (n - t1, n - t0);
        let f = self.ring.field();
        let h = if a0 < n {
            (0..a1)
                .map(|j| {
                    let idx = j + t0 + t1 - n;
                    if (0..t1).contains(&idx) {
                        f.neg(self.h[idx as usize])
                    } else {
                        FieldElement::ZERO
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        CanonicalIdeal {
            ring: self.ring.clone(),
            t0: a0 as usize,
            t1: a1 as usize,
            h,
        }
    }

    /// Image under x -> x^{-1}. Valuations are preserved; the u-part picks up
    /// the factor `(-1)^{T0+j} x^{T0-j}` expanded around x = 1.
    pub fn conjugate(&self) -> CanonicalIdeal {
        if self.t0 == self.ring.n() {
            return self.clone();
        }
        let f = self.ring.field();
        let h = (0..self.t1)
            .map(|r| {
                (0..=r).fold(FieldElement::ZERO, |acc, j| {
                    let term = self.signed_binom(self.t0 + j, self.t0 - j, r - j);
                    f.add(acc, f.mul(term, self.h[j]))
                })
            })
            .collect();
        CanonicalIdeal {
            ring: self.ring.clone(),
            t0: self.t0,
            t1: self.t1,
            h,
        }
    }

    /// `(-1)^sign_exp * C(m, j)` in F_p.
    fn signed_binom(&self, sign_exp: usize, m: usize, j: usize) -> FieldElement {
        let f = self.ring.field();
        f.mul(self.ring.sign(sign_exp), f.from_int(self.ring.binom(m, j) as i64))
    }

    /// Applies ρ coefficientwise; needs even k.
    pub fn rho(&self) -> Result<CanonicalIdeal> {
        let f = self.ring.field();
        if !f.k().is_multiple_of(2) {
            return Err(Error::OddDegree(f.k()));
        }
        let half = (f.k() / 2) as u64;
        Ok(CanonicalIdeal {
            ring: self.ring.clone(),
            t0: self.t0,
            t1: self.t1,
            h: self.h.iter().map(|&c| f.frobenius(c, half)).collect(),
        })
    }

    /// C^⊥E. For members of A with f0 != 0 this is the explicit dual generator
    /// formula; otherwise the conjugate of the annihilator.
    pub fn euclidean_dual(&self) -> CanonicalIdeal {
        if self.in_family_a() && self.t0 < self.ring.n() {
            self.euclidean_dual_formula()
        } else {
            self.annihilator().conjugate()
        }
    }

    /// For C = ⟨⟨(x-1)^{i0} + u h(x), u(x-1)^{i1}⟩⟩ in A:
    /// C^⊥E = ⟨⟨(x-1)^{n-i1} - u(x-1)^{n-i0-i1} sum_r c_r (x-1)^r, u(x-1)^{n-i0}⟩⟩ with
    /// c_r = sum_{j<=r} (-1)^{i0+j} C(i0-j, r-j) h_j.
    pub(crate) fn euclidean_dual_formula(&self) -> CanonicalIdeal {
        let n = self.ring.n();
        let (i0, i1) = (self.t0, self.t1);
        debug_assert!(i0 < n && i0 + i1 <= n);
        let f = self.ring.field();
        let (d0, d1) = (n - i1, n - i0);
        let h = if d0 < n {
            let shift = n - i0 - i1;
            let mut h = vec![FieldElement::ZERO; d1];
            for r in 0..i1 {
                let c = (0..=r).fold(FieldElement::ZERO, |acc, j| {
                    f.add(acc, f.mul(self.signed_binom(i0 + j, i0 - j, r - j), self.h[j]))
                });
                h[shift + r] = f.neg(c);
            }
            h
        } else {
            Vec::new()
        };
        CanonicalIdeal {
            ring: self.ring.clone(),
            t0: d0,
            t1: d1,
            h,
        }
    }

    /// C^⊥H = ρ(C^⊥E); needs even k.
    pub fn hermitian_dual(&self) -> Result<CanonicalIdeal> {
        self.euclidean_dual().rho()
    }

    pub fn is_euclidean_self_dual(&self) -> bool {
        self.euclidean_dual() == *self
    }

    pub fn is_hermitian_self_dual(&self) -> Result<bool> {
        Ok(self.hermitian_dual()? == *self)
    }

    pub fn render(&self) -> String {
        let n = self.ring.n();
        let f = self.ring.field();
        let power = |e: usize| match e {
            0 => "1".to_string(),
            1 => "(x-1)".to_string(),
            _ => format!("(x-1)^{e}"),
        };
        let f0 = if self.t0 == n {
            "0".to_string()
        } else {
            let terms: Vec<String> = self
                .h
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, &c)| {
                    let mut coef = f.render(c);
                    if coef.contains('+') {
                        coef = format!("({coef})");
                    }
                    match (coef == "1", j) {
                        (_, 0) => coef,
                        (true, _) => power(j),
                        (false, _) => format!("{coef}{}", power(j)),
                    }
                })
                .collect();
            if terms.is_empty() {
                power(self.t0)
            } else if terms.len() == 1 && terms[0].starts_with('(') {
                format!("{} + u{}", power(self.t0), terms[0])
            } else {
                format!("{} + u({})", power(self.t0), terms.join(" + "))
            }
        };
        let f1 = match self.t1 {
            t if t == n => "0".to_string(),
            0 => "u".to_string(),
            t => format!("u{}", power(t)),
        };
        format!("⟨⟨{f0}, {f1}⟩⟩")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = self.ring.field();
        serde_json::to_value(IdealJson {
            t0: self.t0,
            t1: self.t1,
            h: self.h.iter().map(|&c| f.digit_string(c)).collect(),
            generators: self.render(),
        })
        .expect("plain data serializes")
    }
}

impl fmt::Display for CanonicalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// F_p coordinates of a y-basis polynomial: residue digits first, then u-part digits,
/// each ordered by (x-1)-degree and then by digit.
fn fp_coordinates(f: &QuotientPoly, fp: &FieldCtx) -> Vec<FieldElement> {
    let field = f.ring().field();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for c in f.coeffs() {
        a.extend(field.coeffs(c.a).into_iter().map(|d| fp.from_int(d as i64)));
        b.extend(field.coeffs(c.b).into_iter().map(|d| fp.from_int(d as i64)));
    }
    a.extend(b);
    a
}

/// Canonical triple of the ideal generated by `gens`.
///
/// The ideal is materialized as the F_p-span of `g * β * e * (x-1)^m` over the
/// generators g, the F_p-basis β of F_{p^k}, e in {1, u} and m < n. With the
/// residue coordinates ordered first, the reduced echelon basis exposes T0 as
/// the first residue pivot, T1 as the first u-part pivot, and the row pivoting
/// at (x-1)^T0 is exactly f0.
pub fn canonicalize(gens: &[QuotientPoly]) -> Result<CanonicalIdeal> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    let ring = first.ring().clone();
    if gens.iter().any(|g| **g.ring() != *ring) {
        return Err(Error::ContextMismatch);
    }
    let n = ring.n();
    let k = ring.k() as usize;
    let field = ring.field();
    let fp = FieldCtx::new(ring.p(), 1)?;

    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        for beta in field.basis() {
            for e in [RingElement::scalar(beta), RingElement::new(FieldElement::ZERO, beta)] {
                let ge = g.scalar_mul(e);
                for m in 0..n {
                    let row = ge.shift_y(m);
                    if !row.is_zero() {
                        rows.push(fp_coordinates(&row, &fp));
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(CanonicalIdeal::zero(&ring));
    }
    let mut m = FqMatrix::from_rows(&fp, rows);
    let pivots = m.rref();
    let split = n * k;
    let t0 = pivots.iter().find(|&&c| c < split).map_or(n, |&c| c / k);
    let t1 = pivots
        .iter()
        .find(|&&c| c >= split)
        .map_or(n, |&c| (c - split) / k);

    let h = if t0 < n {
        let r = pivots.iter().position(|&c| c == t0 * k).expect("T0 column pivots");
        let row = m.row(r);
        (0..t1)
            .map(|j| {
                let digits: Vec<u64> = (0..k).map(|d| row[split + j * k + d].code()).collect();
                field.from_coeffs(&digits)
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    CanonicalIdeal::new(&ring, t0, t1, h)
}

/// All vectors of F_q^len in lexicographic order of codes (first coordinate slowest).
pub(crate) fn field_vectors(q: u64, len: usize) -> impl Iterator<Item = Vec<FieldElement>> {
    let mut next = Some(vec![0u64; len]);
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = len;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < q {
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(cur.into_iter().map(FieldElement::from_code).collect())
    })
}

/// The family A: (i0, i1, h) with i0 < n, i1 <= min(i0, n - i0), h in F_q^{i1},
/// followed by ⟨⟨0, u⟩⟩.
pub fn enumerate_family_a(ring: &Arc<PolyRing>) -> impl Iterator<Item = CanonicalIdeal> {
    let n = ring.n();
    let q = ring.field().order();
    let r = ring.clone();
    let r2 = ring.clone();
    (0..n)
        .flat_map(move |i0| (0..=i0.min(n - i0)).map(move |i1| (i0, i1)))
        .flat_map(move |(i0, i1)| {
            let r = r.clone();
            field_vectors(q, i1).map(move |h| CanonicalIdeal {
                ring: r.clone(),
                t0: i0,
                t1: i1,
                h,
            })
        })
        .chain(std::iter::once_with(move || CanonicalIdeal::u_ideal(&r2)))
}

/// Every ideal exactly once: all of A, then Ann(C) for C in A with T0 + T1 < n.
pub fn enumerate_ideals(ring: &Arc<PolyRing>) -> Result<impl Iterator<Item = CanonicalIdeal>> {
    let total = count_all_ideals(CodeParams::of(ring))?.count;
    if total > BigCount::from(MAX_ENUMERATION) {
        return Err(Error::bound("number of ideals", total, MAX_ENUMERATION));
    }
    let n = ring.n();
    let rest = enumerate_family_a(ring)
        .filter(move |c| c.t0 + c.t1 < n)
        .map(|c| c.annihilator());
    Ok(enumerate_family_a(ring).chain(rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn y_poly(ring: &Arc<PolyRing>, terms: &[(usize, RingElement)]) -> QuotientPoly {
        terms.iter().fold(QuotientPoly::zero(ring), |acc, &(j, c)| {
            acc.add(&QuotientPoly::monomial(ring, j, c)).unwrap()
        })
    }

    #[test]
    fn canonicalize_examples() {
        let ring = PolyRing::create(2, 1, 1).unwrap();
        let y = y_poly(&ring, &[(1, RingElement::ONE)]);
        let u = y_poly(&ring, &[(0, RingElement::U)]);
        let c = canonicalize(&[y, u]).unwrap();
        assert_eq!((c.t0(), c.t1(), c.h()), (1, 0, &[][..]));

        let ring = PolyRing::create(2, 1, 2).unwrap();
        let y2 = y_poly(&ring, &[(2, RingElement::ONE)]);
        let c = canonicalize(&[y2]).unwrap();
        assert_eq!((c.t0(), c.t1()), (2, 2));
        assert_eq!(c.h(), &[FieldElement::ZERO, FieldElement::ZERO]);

        let c = canonicalize(&[QuotientPoly::zero(&ring)]).unwrap();
        assert_eq!(c, CanonicalIdeal::zero(&ring));
        assert_eq!(canonicalize(&[]), Err(Error::EmptyGenerators));
        let other = PolyRing::create(2, 1, 1).unwrap();
        assert_eq!(
            canonicalize(&[QuotientPoly::one(&ring), QuotientPoly::one(&other)]),
            Err(Error::ContextMismatch)
        );
    }

    #[test]
    fn worked_example_from_four_generators() {
        // ⟨(x-1)^2⟩, ⟨(x-1)^2 + u(x-1)^2⟩, ⟨(x-1)^2 + u(x-1)^3⟩ all reduce to ⟨⟨(x-1)^2, u(x-1)^2⟩⟩.
        let ring = PolyRing::create(2, 1, 2).unwrap();
        let one = RingElement::ONE;
        let expected = CanonicalIdeal::new(&ring, 2, 2, vec![FieldElement::ZERO; 2]).unwrap();
        for g in [
            y_poly(&ring, &[(2, one)]),
            y_poly(&ring, &[(2, RingElement::new(FieldElement::ONE, FieldElement::ONE))]),
            y_poly(&ring, &[(2, one), (3, RingElement::U)]),
        ] {
            assert_eq!(canonicalize(&[g]).unwrap(), expected);
        }
    }

    #[test]
    fn membership() {
        let ring = PolyRing::create(2, 1, 1).unwrap();
        let c = canonicalize(&[y_poly(&ring, &[(1, RingElement::ONE)])]).unwrap();
        assert!(c.contains(&y_poly(&ring, &[(1, RingElement::U)])).unwrap());
        assert!(!c.contains(&y_poly(&ring, &[(0, RingElement::U)])).unwrap());
        assert!(CanonicalIdeal::whole(&ring).contains(&QuotientPoly::one(&ring)).unwrap());
    }

    #[test]
    fn cardinality_examples() {
        let ring = PolyRing::create(2, 1, 1).unwrap();
        let c = CanonicalIdeal::new(&ring, 1, 1, vec![FieldElement::ZERO]).unwrap();
        assert_eq!(c.cardinality_log(), 2);
        assert_eq!(CanonicalIdeal::zero(&ring).cardinality_log(), 0);
        let ring = PolyRing::create(3, 2, 1).unwrap();
        assert_eq!(CanonicalIdeal::whole(&ring).cardinality_log(), 2 * 2 * 3);
    }

    #[test]
    fn annihilator_examples() {
        let ring = PolyRing::create(2, 1, 1).unwrap();
        let u = CanonicalIdeal::u_ideal(&ring);
        assert_eq!(u.annihilator(), u);
        // Ann(⟨x-1, u⟩) = ⟨⟨0, u(x-1)⟩⟩.
        let c = CanonicalIdeal::new(&ring, 1, 0, vec![]).unwrap();
        assert_eq!(c.annihilator(), CanonicalIdeal::new(&ring, 2, 1, vec![]).unwrap());
        assert_eq!(CanonicalIdeal::whole(&ring).annihilator(), CanonicalIdeal::zero(&ring));
    }

    #[test]
    fn dual_examples() {
        let ring = PolyRing::create(2, 1, 1).unwrap();
        assert_eq!(CanonicalIdeal::whole(&ring).euclidean_dual(), CanonicalIdeal::zero(&ring));
        let c = CanonicalIdeal::new(&ring, 1, 1, vec![FieldElement::ONE]).unwrap();
        assert_eq!(c.euclidean_dual(), c);
        let u = CanonicalIdeal::u_ideal(&ring);
        assert_eq!(u.euclidean_dual(), u);

        let ring = PolyRing::create(2, 2, 1).unwrap();
        let f = ring.field().clone();
        let g = f.generator();
        let c = CanonicalIdeal::new(&ring, 1, 1, vec![g]).unwrap();
        let expected = CanonicalIdeal::new(&ring, 1, 1, vec![f.mul(g, g)]).unwrap();
        assert_eq!(c.hermitian_dual().unwrap(), expected);
        let u = CanonicalIdeal::u_ideal(&ring);
        assert_eq!(u.hermitian_dual().unwrap(), u);
        assert_eq!(
            CanonicalIdeal::zero(&ring).hermitian_dual().unwrap(),
            CanonicalIdeal::whole(&ring)
        );

        let odd = PolyRing::create(2, 1, 1).unwrap();
        assert_eq!(CanonicalIdeal::u_ideal(&odd).hermitian_dual(), Err(Error::OddDegree(1)));
    }

    #[test]
    fn triple_validation() {
        let ring = PolyRing::create(2, 1, 2).unwrap();
        assert!(CanonicalIdeal::new(&ring, 1, 2, vec![FieldElement::ZERO; 2]).is_err());
        assert!(CanonicalIdeal::new(&ring, 2, 1, vec![]).is_err());
        // T0 + T1 = 6 > 4 forces h_0 = h_1 = 0.
        assert!(CanonicalIdeal::new(&ring, 3, 3, vec![FieldElement::ONE, FieldElement::ZERO, FieldElement::ONE]).is_err());
        assert!(CanonicalIdeal::new(&ring, 3, 3, vec![FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]).is_ok());
        assert!(CanonicalIdeal::new(&ring, 4, 1, vec![]).is_ok());
    }

    #[test]
    fn counts_per_sum() {
        let p211 = CodeParams::new(2, 1, 1).unwrap();
        assert_eq!(count_ideals_with_sum(p211, 2).unwrap(), BigCount::from(3));
        assert_eq!(count_ideals_with_sum(p211, 0).unwrap(), BigCount::from(1));
        assert!(count_ideals_with_sum(p211, 3).is_err());
        let p212 = CodeParams::new(2, 1, 2).unwrap();
        assert_eq!(count_ideals_with_sum(p212, 4).unwrap(), BigCount::from(7));
    }

    #[test]
    fn total_counts() {
        for ((p, k, s), n) in [((2, 1, 1), 7u64), ((2, 1, 2), 23), ((2, 3, 1), 13), ((2, 4, 1), 21), ((2, 2, 1), 9)] {
            let c = count_all_ideals(CodeParams::new(p, k, s).unwrap()).unwrap();
            assert_eq!(c.count, BigCount::from(n));
            assert!(!c.closed_form_mismatch);
        }
        let c = count_all_ideals(CodeParams::new(3, 1, 1).unwrap()).unwrap();
        assert_eq!(c.count, BigCount::from(16));
        assert_eq!(c.closed_form, BigCount::from(19));
        assert!(c.closed_form_mismatch);
    }

    const POINTS: [(u64, u32, u32); 4] = [(2, 1, 1), (2, 1, 2), (3, 1, 1), (2, 2, 1)];

    #[test]
    fn enumeration_matches_counts_and_is_duplicate_free() {
        for (p, k, s) in POINTS.into_iter().chain([(2, 3, 1), (3, 1, 2), (5, 1, 1)]) {
            let ring = PolyRing::create(p, k, s).unwrap();
            let all: Vec<_> = enumerate_ideals(&ring).unwrap().collect();
            let keys: HashSet<_> = all.iter().map(|c| (c.t0, c.t1, c.h.clone())).collect();
            assert_eq!(keys.len(), all.len());
            let expected = count_all_ideals(CodeParams::of(&ring)).unwrap().count;
            assert_eq!(BigCount::from(all.len() as u64), expected);
            for d in 0..=ring.n() {
                let in_a = all
                    .iter()
                    .filter(|c| c.in_family_a() && c.t0 + c.t1 == d)
                    .count() as u64;
                let params = CodeParams::of(&ring);
                assert_eq!(BigCount::from(in_a), count_ideals_with_sum(params, d as u64).unwrap());
            }
        }
    }

    #[test]
    fn lattice_laws_on_every_ideal() {
        for (p, k, s) in POINTS {
            let ring = PolyRing::create(p, k, s).unwrap();
            let total = 2 * k as u64 * ring.n() as u64;
            for c in enumerate_ideals(&ring).unwrap() {
                CanonicalIdeal::new(&ring, c.t0, c.t1, c.h.clone()).unwrap();
                assert!(c.t1 <= c.t0);
                let ann = c.annihilator();
                assert_eq!(ann.annihilator(), c);
                assert_eq!(c.cardinality_log() + ann.cardinality_log(), total);
                let dual = c.euclidean_dual();
                assert_eq!(dual.euclidean_dual(), c);
                assert_eq!(dual, ann.conjugate());
                assert_eq!(c.cardinality_log() + dual.cardinality_log(), total);
                if c.in_family_a() && c.t0 < ring.n() {
                    assert_eq!(c.euclidean_dual_formula(), c.annihilator().conjugate());
                }
                if k % 2 == 0 {
                    assert_eq!(c.hermitian_dual().unwrap().hermitian_dual().unwrap(), c);
                }
                assert_eq!(canonicalize(&c.generator_list().into_iter().chain([QuotientPoly::zero(&ring)]).collect::<Vec<_>>()).unwrap(), c);
                for g in c.generator_list() {
                    assert!(c.contains(&g).unwrap());
                }
                // u(x-1)^t ∈ C implies t >= T1.
                for t in 0..ring.n() {
                    if c.contains(&QuotientPoly::monomial(&ring, t, RingElement::U)).unwrap() {
                        assert!(t >= c.t1);
                    }
                }
            }
        }
    }

    #[test]
    fn odd_p_fixed_points_of_annihilation() {
        // For odd p, C = Ann(C) in A ∩ A' happens exactly when h = 0.
        for (p, s) in [(3u64, 1u32), (5, 1), (3, 2)] {
            let ring = PolyRing::create(p, 1, s).unwrap();
            for c in enumerate_family_a(&ring).filter(|c| c.t0 + c.t1 == ring.n()) {
                let fixed = c.annihilator() == c;
                assert_eq!(fixed, c.h.iter().all(|x| x.is_zero()), "{c}");
            }
        }
    }

    #[test]
    fn rendering() {
        let ring = PolyRing::create(2, 1, 1).unwrap();
        let c = CanonicalIdeal::new(&ring, 1, 1, vec![FieldElement::ONE]).unwrap();
        assert_eq!(c.render(), "⟨⟨(x-1) + u(1), u(x-1)⟩⟩");
        assert_eq!(CanonicalIdeal::u_ideal(&ring).render(), "⟨⟨0, u⟩⟩");
        let ring4 = PolyRing::create(2, 1, 2).unwrap();
        let one = FieldElement::ONE;
        let single = CanonicalIdeal::new(&ring4, 2, 2, vec![FieldElement::ZERO, one]).unwrap();
        assert_eq!(single.render(), "⟨⟨(x-1)^2 + u(x-1), u(x-1)^2⟩⟩");
        let both = CanonicalIdeal::new(&ring4, 2, 2, vec![one, one]).unwrap();
        assert_eq!(both.render(), "⟨⟨(x-1)^2 + u(1 + (x-1)), u(x-1)^2⟩⟩");
        let ring4 = PolyRing::create(2, 2, 1).unwrap();
        let g = CanonicalIdeal::new(&ring4, 1, 1, vec![ring4.field().generator()]).unwrap();
        assert_eq!(g.render(), "⟨⟨(x-1) + u(g), u(x-1)⟩⟩");
        assert_eq!(
            c.to_json().to_string(),
            r#"{"T0":1,"T1":1,"generators":"⟨⟨(x-1) + u(1), u(x-1)⟩⟩","h":["1"]}"#
        );
    }
}
