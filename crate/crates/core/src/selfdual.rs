//! Euclidean and Hermitian self-dual cyclic codes of length p^s over F_{p^k} + uF_{p^k}.
//!
//! A self-dual ideal has T0 + T1 = p^s, so it is (p^s - i1, i1, h) with
//! i1 <= p^s/2, plus ⟨u⟩ for i1 = 0. Writing i0 = p^s - i1, the dual formula turns
//! self-duality into a lower-triangular system in h:
//!
//! ```text
//! Euclidean:  M h = 0
//! Hermitian:  M h + h^{p^{k/2}} - h = 0
//! M[r][r] = (-1)^{i0+r} + 1,   M[r][j] = (-1)^{i0+j} C(i0-j, r-j)  (j < r)
//! ```

use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bigcount::BigCount;
use crate::chain_ring::{binomial_mod, PolyRing};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::ideal_canon::{field_vectors, CanonicalIdeal, CodeParams};
use crate::limits::{MAX_ENUMERATION, MAX_LENGTH};
use crate::linalg::FqMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerProduct {
    Euclidean,
    Hermitian,
}

impl InnerProduct {
    pub fn name(self) -> &'static str {
        match self {
            InnerProduct::Euclidean => "euclidean",
            InnerProduct::Hermitian => "hermitian",
        }
    }
}

fn check_i1(n: usize, i1: usize) -> Result<()> {
    if i1 < 1 || i1 > n / 2 {
        return Err(Error::range("i1", i1, format!("[1, {}]", n / 2)));
    }
    Ok(())
}

fn matrix_over(field: &Arc<FieldCtx>, n: usize, i1: usize) -> Result<FqMatrix> {
    check_i1(n, i1)?;
    let p = field.p();
    let i0 = n - i1;
    let sign = |e: usize| if e.is_multiple_of(2) { 1i64 } else { -1 };
    let mut m = FqMatrix::zeros(field, i1, i1);
    for r in 0..i1 {
        m.set(r, r, field.from_int(sign(i0 + r) + 1));
        for j in 0..r {
            let c = binomial_mod((i0 - j) as u64, (r - j) as u64, p) as i64;
            m.set(r, j, field.from_int(sign(i0 + j) * c));
        }
    }
    Ok(m)
}

/// M(p^s, i1) over the coefficient field of `ring`.
pub fn build_matrix(ring: &PolyRing, i1: usize) -> Result<FqMatrix> {
    matrix_over(ring.field(), ring.n(), i1)
}

/// M(p^s, i1) over F_p. Its entries lie in the prime field, so its nullity is the
/// same over every extension.
pub fn build_matrix_prime(p: u64, s: u32, i1: usize) -> Result<FqMatrix> {
    let params = CodeParams::new(p, 1, s)?;
    let n = params.n();
    if n > MAX_LENGTH {
        return Err(Error::bound("length p^s", n, MAX_LENGTH));
    }
    matrix_over(&FieldCtx::new(p, 1)?, n as usize, i1)
}

pub fn nullspace(m: &FqMatrix) -> Vec<Vec<FieldElement>> {
    m.nullspace()
}

/// κ(i1): floor(i1/2) for odd p, ceil((i1+1)/2) for p = 2.
pub fn nullity_closed_form(p: u64, i1: usize) -> usize {
    if p == 2 {
        (i1 + 2) / 2
    } else {
        i1 / 2
    }
}

pub fn computed_nullity(p: u64, s: u32, i1: usize) -> Result<usize> {
    Ok(build_matrix_prime(p, s, i1)?.nullity())
}

/// All F-linear combinations of `basis`, coefficient tuples in lexicographic order.
fn combinations(field: &FieldCtx, order: u64, basis: &[Vec<FieldElement>], len: usize) -> Vec<Vec<FieldElement>> {
    field_vectors(order, basis.len())
        .map(|coefs| {
            let mut v = vec![FieldElement::ZERO; len];
            for (c, b) in coefs.iter().zip(basis) {
                for (vi, &bi) in v.iter_mut().zip(b) {
                    *vi = field.add(*vi, field.mul(*c, bi));
                }
            }
            v
        })
        .collect()
}

fn check_solution_count(p: u64, dim: u64) -> Result<()> {
    let count = BigCount::power(p, dim)?;
    if count > BigCount::from(MAX_ENUMERATION) {
        return Err(Error::bound("number of solutions", count, MAX_ENUMERATION));
    }
    Ok(())
}

/// Every h with M(p^s, i1) h = 0 over F_{p^k}.
pub fn euclidean_solutions(ring: &PolyRing, i1: usize) -> Result<Vec<Vec<FieldElement>>> {
    let basis = build_matrix(ring, i1)?.nullspace();
    let f = ring.field();
    check_solution_count(ring.p(), ring.k() as u64 * basis.len() as u64)?;
    Ok(combinations(f, f.order(), &basis, i1))
}

/// F_p-matrix of h ↦ M h + h^{p^{k/2}} - h, with F_{p^k}^{i1} identified with
/// F_p^{k i1} through the power basis (coordinate j*k + d is digit d of h_j).
pub fn hermitian_linearization(ring: &PolyRing, i1: usize) -> Result<FqMatrix> {
    let f = ring.field();
    let k = f.k() as usize;
    if !k.is_multiple_of(2) {
        return Err(Error::OddDegree(f.k()));
    }
    let m = build_matrix(ring, i1)?;
    let fp = FieldCtx::new(ring.p(), 1)?;
    let dim = k * i1;
    let mut lin = FqMatrix::zeros(&fp, dim, dim);
    let basis: Vec<_> = f.basis().collect();
    for j in 0..i1 {
        for (d, &beta) in basis.iter().enumerate() {
            let mut h = vec![FieldElement::ZERO; i1];
            h[j] = beta;
            let mh = m.mul_vec(&h);
            for r in 0..i1 {
                let v = f.add(mh[r], f.sub(f.frobenius(h[r], (k / 2) as u64), h[r]));
                for (dd, digit) in f.coeffs(v).into_iter().enumerate() {
                    lin.set(r * k + dd, j * k + d, fp.from_int(digit as i64));
                }
            }
        }
    }
    Ok(lin)
}

/// F_p-basis of the Hermitian solution space, as vectors over F_{p^k}.
fn hermitian_basis(ring: &PolyRing, i1: usize) -> Result<Vec<Vec<FieldElement>>> {
    let f = ring.field();
    let k = f.k() as usize;
    let kernel = hermitian_linearization(ring, i1)?.nullspace();
    kernel
        .into_iter()
        .map(|v| {
            (0..i1)
                .map(|j| {
                    let digits: Vec<u64> = v[j * k..(j + 1) * k].iter().map(|c| c.code()).collect();
                    f.from_coeffs(&digits)
                })
                .collect()
        })
        .collect()
}

/// Every h with M h + h^{p^{k/2}} - h = 0; needs even k.
pub fn solve_hermitian(ring: &PolyRing, i1: usize) -> Result<Vec<Vec<FieldElement>>> {
    let basis = hermitian_basis(ring, i1)?;
    check_solution_count(ring.p(), basis.len() as u64)?;
    Ok(combinations(ring.field(), ring.p(), &basis, i1))
}

fn check_listing(count: &BigCount) -> Result<()> {
    if *count > BigCount::from(MAX_ENUMERATION) {
        return Err(Error::bound("number of self-dual codes", count, MAX_ENUMERATION));
    }
    Ok(())
}

/// ⟨u⟩, then (p^s - i1, i1, h) for ascending i1 and every solution h.
/// With `only_i1`, just the codes of that torsion degree.
pub fn enumerate_selfdual(
    ring: &Arc<PolyRing>,
    inner: InnerProduct,
    only_i1: Option<usize>,
) -> Result<Vec<CanonicalIdeal>> {
    let n = ring.n();
    if let Some(i1) = only_i1 {
        if i1 > n / 2 {
            return Err(Error::range("i1", i1, format!("[0, {}]", n / 2)));
        }
    }
    let total = match inner {
        InnerProduct::Euclidean => count_euclidean(CodeParams::of(ring))?.count,
        InnerProduct::Hermitian => count_hermitian(ring)?.count,
    };
    check_listing(&total)?;
    let mut out = Vec::new();
    if only_i1.is_none_or(|i| i == 0) {
        out.push(CanonicalIdeal::u_ideal(ring));
    }
    for i1 in 1..=n / 2 {
        if only_i1.is_some_and(|i| i != i1) {
            continue;
        }
        let sols = match inner {
            InnerProduct::Euclidean => euclidean_solutions(ring, i1)?,
            InnerProduct::Hermitian => solve_hermitian(ring, i1)?,
        };
        for h in sols {
            out.push(CanonicalIdeal::new(ring, n - i1, i1, h)?);
        }
    }
    Ok(out)
}

pub fn enumerate_euclidean_selfdual(ring: &Arc<PolyRing>) -> Result<Vec<CanonicalIdeal>> {
    enumerate_selfdual(ring, InnerProduct::Euclidean, None)
}

pub fn enumerate_hermitian_selfdual(ring: &Arc<PolyRing>) -> Result<Vec<CanonicalIdeal>> {
    enumerate_selfdual(ring, InnerProduct::Hermitian, None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionTerm {
    pub i1: u64,
    /// F_p-dimension of the solution space for this i1.
    pub dimension: u64,
    pub count: BigCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfDualCount {
    pub inner: InnerProduct,
    /// "nullspace", "linearized kernel" or "term formula".
    pub method: &'static str,
    pub count: BigCount,
    pub by_torsion_degree: Vec<TorsionTerm>,
    pub closed_form: BigCount,
    pub closed_form_mismatch: bool,
}

fn assemble(inner: InnerProduct, method: &'static str, p: u64, dims: Vec<(u64, u64)>, closed_form: BigCount) -> Result<SelfDualCount> {
    let mut by_torsion_degree = vec![TorsionTerm {
        i1: 0,
        dimension: 0,
        count: BigCount::one(),
    }];
    for (i1, dimension) in dims {
        by_torsion_degree.push(TorsionTerm {
            i1,
            dimension,
            count: BigCount::power(p, dimension)?,
        });
    }
    let count = by_torsion_degree
        .iter()
        .fold(BigCount::zero(), |acc, t| &acc + &t.count);
    Ok(SelfDualCount {
        inner,
        method,
        closed_form_mismatch: closed_form != count,
        closed_form,
        count,
        by_torsion_degree,
    })
}

/// Closed-form summary of the Euclidean self-dual count. For p = 2 and s >= 3 it
/// omits the i1 = 2^{s-1} term and comes out smaller than the true count.
pub fn euclidean_closed_form(params: CodeParams) -> Result<BigCount> {
    let n = params.n();
    let q = params.q()?;
    let one = BigCount::one();
    let two = BigCount::from(2);
    Ok(if params.p == 2 {
        match params.s {
            1 => &one + &q,
            2 => &(&one + &q) + &q.pow(&BigUint::from(2u32))?,
            s => {
                let tail = BigCount::geometric(&q, (1u64 << (s - 2)) - 2)?;
                let q2 = q.pow(&BigUint::from(2u32))?;
                &(&one + &q) + &(&(&two * &q2) * &tail)
            }
        }
    } else if n % 4 == 3 {
        &two * &BigCount::geometric(&q, (n + 1) / 4 - 1)?
    } else {
        let m = (n - 1) / 4;
        let head = if m == 0 {
            BigCount::zero()
        } else {
            &two * &BigCount::geometric(&q, m - 1)?
        };
        &head + &q.pow(&BigUint::from(m))?
    })
}

/// NE(p^k, p^s) = 1 + Σ_{i1} p^{k κ(i1)} with κ computed by elimination over F_p.
pub fn count_euclidean(params: CodeParams) -> Result<SelfDualCount> {
    let n = params.n() as usize;
    let mut dims = Vec::new();
    for i1 in 1..=n / 2 {
        let kappa = computed_nullity(params.p, params.s, i1)? as u64;
        dims.push((i1 as u64, params.k as u64 * kappa));
    }
    assemble(InnerProduct::Euclidean, "nullspace", params.p, dims, euclidean_closed_form(params)?)
}

/// ((p^{k/2})^{⌊p^s/2⌋+1} - 1) / (p^{k/2} - 1), evaluated by exact division.
pub fn hermitian_closed_form(params: CodeParams) -> Result<BigCount> {
    if !params.k.is_multiple_of(2) {
        return Err(Error::OddDegree(params.k));
    }
    let r = BigCount::power(params.p, (params.k / 2) as u64)?;
    let top = r.pow(&BigUint::from(params.n() / 2 + 1))?;
    let num = top.inner() - 1u32;
    let den = r.inner() - 1u32;
    Ok(BigCount::from(num / den))
}

/// NH(p^k, p^s) term by term: the i1 summand is p^{k i1 / 2}. Needs even k.
/// Used where the coefficient field is too large to build.
pub fn count_hermitian_formula(params: CodeParams) -> Result<SelfDualCount> {
    let closed = hermitian_closed_form(params)?;
    let half = (params.k / 2) as u64;
    let dims = (1..=params.n() / 2).map(|i1| (i1, half * i1)).collect();
    assemble(InnerProduct::Hermitian, "term formula", params.p, dims, closed)
}

/// NH(p^k, p^s) from the kernel dimension of the linearized system at each i1.
pub fn count_hermitian(ring: &PolyRing) -> Result<SelfDualCount> {
    let params = CodeParams::of(ring);
    let closed = hermitian_closed_form(params)?;
    let mut dims = Vec::new();
    for i1 in 1..=ring.n() / 2 {
        dims.push((i1 as u64, hermitian_linearization(ring, i1)?.nullity() as u64));
    }
    assemble(InnerProduct::Hermitian, "linearized kernel", params.p, dims, closed)
}

/// Largest F_p-dimension k*i1 of a linearized Hermitian system solved directly.
const MAX_LINEARIZED_DIM: u64 = 128;

/// NE or NH for any parameters. Hermitian counts come from the linearized kernels
/// when the ring can be built and the systems are small, else from the term formula.
pub fn count_selfdual(params: CodeParams, inner: InnerProduct) -> Result<SelfDualCount> {
    match inner {
        InnerProduct::Euclidean => count_euclidean(params),
        InnerProduct::Hermitian => {
            if !params.k.is_multiple_of(2) {
                return Err(Error::OddDegree(params.k));
            }
            if params.k as u64 * (params.n() / 2) <= MAX_LINEARIZED_DIM {
                match PolyRing::create(params.p, params.k, params.s) {
                    Ok(ring) => return count_hermitian(&ring),
                    Err(e) if !e.is_size_bound() => return Err(e),
                    Err(_) => {}
                }
            }
            count_hermitian_formula(params)
        }
    }
}
