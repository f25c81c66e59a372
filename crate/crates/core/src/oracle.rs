//! Brute-force ground truth for small rings.
//!
//! Everything here works on explicit codewords: elements of R[x]/<x^n - 1> in the
//! power basis x^i, flattened to F_p-vectors, with ideals held as F_p-subspaces in
//! reduced echelon form. Nothing goes through the (x-1)-basis or the canonical-form
//! theory; ring products are cyclic convolutions and (x-1)^j is built by repeated
//! multiplication.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::chain_ring::{PolyRing, QuotientPoly, RingElement};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::ideal_canon::{field_vectors, CanonicalIdeal};
use crate::limits::{MAX_AMBIENT_DIM, MAX_ENUMERATION, MAX_EXHAUSTIVE_RING, MAX_WORDS};
use crate::selfdual::InnerProduct;

/// A word c_0 + c_1 x + ... + c_{n-1} x^{n-1} over R.
pub type Word = Vec<RingElement>;

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let (mut b, mut e) = (a as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Reduced echelon form over F_p, leftmost pivots. Returns (rows, pivots).
fn echelon(p: u32, mut rows: Vec<Vec<u32>>, cols: usize) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = inv_mod(rows[rank][c], p);
        for v in rows[rank].iter_mut() {
            *v = (*v as u64 * inv as u64 % p as u64) as u32;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let f = row[c] as u64;
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = ((*v as u64 + (p as u64 - f) * pv as u64) % p as u64) as u32;
            }
        }
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Kernel basis of the F_p-matrix with the given rows.
fn kernel(p: u32, rows: Vec<Vec<u32>>, cols: usize) -> Vec<Vec<u32>> {
    let (rows, pivots) = echelon(p, rows, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u32; cols];
            v[free] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (p - row[free]) % p;
            }
            v
        })
        .collect()
}

/// An F_p-subspace of F_p^dim, identified by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn span(p: u32, dim: usize, vectors: Vec<Vec<u32>>) -> Self {
        let (rows, _) = echelon(p, vectors, dim);
        Subspace { p, dim, rows }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        echelon(self.p, rows, self.dim).0.len() == self.rows.len()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::span(self.p, self.dim, rows)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

/// A lexicographically sorted, duplicate-free list of codewords in F_p-digit form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodewordSet {
    words: Vec<Vec<u32>>,
}

impl CodewordSet {
    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Explicit arithmetic on R[x]/<x^n - 1> in the power basis.
#[derive(Clone, Debug)]
pub struct OracleRing {
    field: Arc<FieldCtx>,
    n: usize,
}

impl OracleRing {
    pub fn new(field: &Arc<FieldCtx>, s: u32) -> Result<Self> {
        let n = field
            .p()
            .checked_pow(s)
            .filter(|&n| n <= 1 << 16)
            .ok_or_else(|| Error::bound("length p^s", format!("{}^{s}", field.p()), 1 << 16))?;
        Ok(OracleRing {
            field: field.clone(),
            n: n as usize,
        })
    }

    pub fn of(ring: &PolyRing) -> Self {
        OracleRing {
            field: ring.field().clone(),
            n: ring.n(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn p(&self) -> u32 {
        self.field.p() as u32
    }

    fn k(&self) -> usize {
        self.field.k() as usize
    }

    /// F_p-dimension of the whole ring.
    pub fn dim(&self) -> usize {
        2 * self.k() * self.n
    }

    /// log_p of the number of ring elements.
    fn size_log(&self) -> u64 {
        self.dim() as u64
    }

    fn radd(&self, x: RingElement, y: RingElement) -> RingElement {
        let f = &self.field;
        RingElement::new(f.add(x.a, y.a), f.add(x.b, y.b))
    }

    fn rmul(&self, x: RingElement, y: RingElement) -> RingElement {
        let f = &self.field;
        RingElement::new(f.mul(x.a, y.a), f.add(f.mul(x.a, y.b), f.mul(x.b, y.a)))
    }

    pub fn zero(&self) -> Word {
        vec![RingElement::ZERO; self.n]
    }

    pub fn monomial(&self, i: usize, c: RingElement) -> Word {
        let mut w = self.zero();
        w[i % self.n] = c;
        w
    }

    pub fn mul(&self, x: &Word, y: &Word) -> Word {
        let mut out = self.zero();
        for (i, &xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, &yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let t = (i + j) % self.n;
                out[t] = self.radd(out[t], self.rmul(xi, yj));
            }
        }
        out
    }

    pub fn add(&self, x: &Word, y: &Word) -> Word {
        x.iter().zip(y).map(|(&a, &b)| self.radd(a, b)).collect()
    }

    /// (x - 1)^j by repeated multiplication.
    pub fn x_minus_one_pow(&self, j: usize) -> Word {
        let minus_one = RingElement::scalar(self.field.from_int(-1));
        let base = self.add(&self.monomial(1, RingElement::ONE), &self.monomial(0, minus_one));
        (0..j).fold(self.monomial(0, RingElement::ONE), |acc, _| self.mul(&acc, &base))
    }

    /// Residue digits of every position, then u-part digits.
    pub fn to_fp(&self, w: &Word) -> Vec<u32> {
        let digits = |c: FieldElement| self.field.coeffs(c).into_iter().map(|d| d as u32);
        let mut v: Vec<u32> = w.iter().flat_map(|c| digits(c.a)).collect();
        v.extend(w.iter().flat_map(|c| digits(c.b)));
        v
    }

    pub fn from_fp(&self, v: &[u32]) -> Word {
        let k = self.k();
        let elem = |chunk: &[u32]| {
            let digits: Vec<u64> = chunk.iter().map(|&d| d as u64).collect();
            self.field.from_coeffs(&digits).expect("digit block of length k")
        };
        let half = self.n * k;
        (0..self.n)
            .map(|i| RingElement::new(elem(&v[i * k..(i + 1) * k]), elem(&v[half + i * k..half + (i + 1) * k])))
            .collect()
    }

    /// Every multiple `g * β * e * x^m`, β in the power basis of F_{p^k}, e in {1, u}.
    pub fn spanning_set(&self, gens: &[Word]) -> Vec<Word> {
        let mut out = Vec::new();
        for g in gens {
            for beta in self.field.basis() {
                for e in [RingElement::scalar(beta), RingElement::new(FieldElement::ZERO, beta)] {
                    for m in 0..self.n {
                        out.push(self.mul(g, &self.monomial(m, e)));
                    }
                }
            }
        }
        out
    }

    /// The ideal generated by `gens`.
    pub fn ideal(&self, gens: &[Word]) -> Subspace {
        let rows = self.spanning_set(gens).iter().map(|w| self.to_fp(w)).collect();
        Subspace::span(self.p(), self.dim(), rows)
    }

    /// Checks that `space` is closed under multiplication by x, u and the field basis.
    pub fn is_ideal(&self, space: &Subspace) -> bool {
        let words: Vec<Word> = space.basis().iter().map(|v| self.from_fp(v)).collect();
        self.spanning_set(&words)
            .iter()
            .all(|w| space.contains(&self.to_fp(w)))
    }

    /// Codewords of the ideal ⟨⟨f0, f1⟩⟩ for a canonical triple.
    pub fn canonical_generators(&self, c: &CanonicalIdeal) -> Vec<Word> {
        let n = self.n;
        let mut gens = Vec::new();
        if c.t0() < n {
            let mut f0 = self.x_minus_one_pow(c.t0());
            for (j, &hj) in c.h().iter().enumerate() {
                let term = self.mul(&self.monomial(0, RingElement::new(FieldElement::ZERO, hj)), &self.x_minus_one_pow(j));
                f0 = self.add(&f0, &term);
            }
            gens.push(f0);
        }
        if c.t1() < n {
            gens.push(self.mul(&self.monomial(0, RingElement::U), &self.x_minus_one_pow(c.t1())));
        }
        gens
    }

    /// F_p-span of the canonical generators' multiples.
    pub fn expand_space(&self, c: &CanonicalIdeal) -> Subspace {
        self.ideal(&self.canonical_generators(c))
    }

    /// All words of `space`, sorted.
    pub fn words(&self, space: &Subspace) -> Result<CodewordSet> {
        let count = (self.p() as u64).checked_pow(space.dimension() as u32).filter(|&c| c <= MAX_WORDS);
        let count = count.ok_or_else(|| {
            Error::bound("number of codewords", format!("{}^{}", self.p(), space.dimension()), MAX_WORDS)
        })?;
        if !self.is_ideal(space) {
            return Err(Error::InvalidTriple("word set is not an ideal".into()));
        }
        let p = self.p();
        let mut words: Vec<Vec<u32>> = field_vectors(p as u64, space.dimension())
            .map(|coefs| {
                let mut v = vec![0u32; self.dim()];
                for (c, row) in coefs.iter().zip(space.basis()) {
                    for (vi, &ri) in v.iter_mut().zip(row) {
                        *vi = ((*vi as u64 + c.code() * ri as u64) % p as u64) as u32;
                    }
                }
                v
            })
            .collect();
        words.sort();
        words.dedup();
        debug_assert_eq!(words.len() as u64, count);
        Ok(CodewordSet { words })
    }

    /// The codeword set of a canonical ideal.
    pub fn expand(&self, c: &CanonicalIdeal) -> Result<CodewordSet> {
        self.words(&self.expand_space(c))
    }

    fn rho(&self, x: RingElement) -> RingElement {
        let half = (self.field.k() / 2) as u64;
        RingElement::new(self.field.frobenius(x.a, half), self.field.frobenius(x.b, half))
    }

    /// Σ_i c_i v_i, or Σ_i c_i ρ(v_i) for the Hermitian form.
    pub fn inner_product(&self, c: &Word, v: &Word, inner: InnerProduct) -> RingElement {
        c.iter().zip(v).fold(RingElement::ZERO, |acc, (&ci, &vi)| {
            let vi = match inner {
                InnerProduct::Euclidean => vi,
                InnerProduct::Hermitian => self.rho(vi),
            };
            self.radd(acc, self.rmul(ci, vi))
        })
    }

    fn check_inner(&self, inner: InnerProduct) -> Result<()> {
        if inner == InnerProduct::Hermitian && !self.field.k().is_multiple_of(2) {
            return Err(Error::OddDegree(self.field.k()));
        }
        Ok(())
    }

    fn check_ambient(&self) -> Result<()> {
        if self.dim() > MAX_AMBIENT_DIM {
            return Err(Error::bound("ambient F_p-dimension", self.dim(), MAX_AMBIENT_DIM));
        }
        Ok(())
    }

    /// Solutions v of the F_p-linear system `f(c, v) = 0` for every basis word c.
    fn solve(&self, space: &Subspace, f: impl Fn(&Word, &Word) -> Word) -> Subspace {
        let dim = self.dim();
        let units: Vec<Word> = (0..dim)
            .map(|t| {
                let mut e = vec![0u32; dim];
                e[t] = 1;
                self.from_fp(&e)
            })
            .collect();
        let mut rows = Vec::new();
        for c in space.basis() {
            let c = self.from_fp(c);
            let images: Vec<Vec<u32>> = units.iter().map(|e| self.to_fp(&f(&c, e))).collect();
            let width = images.first().map_or(0, |v| v.len());
            for r in 0..width {
                rows.push(images.iter().map(|img| img[r]).collect());
            }
        }
        Subspace::span(self.p(), dim, kernel(self.p(), rows, dim))
    }

    /// {v : ⟨c, v⟩ = 0 for all c in the space}.
    pub fn dual_bruteforce(&self, space: &Subspace, inner: InnerProduct) -> Result<Subspace> {
        self.check_inner(inner)?;
        self.check_ambient()?;
        Ok(self.solve(space, |c, v| {
            let mut w = self.zero();
            w[0] = self.inner_product(c, v, inner);
            w
        }))
    }

    /// {v : v c = 0 for all c in the space}.
    pub fn ann_bruteforce(&self, space: &Subspace) -> Result<Subspace> {
        self.check_ambient()?;
        Ok(self.solve(space, |c, v| self.mul(v, c)))
    }

    /// Image under x ↦ x^{-1}.
    pub fn conjugate(&self, space: &Subspace) -> Subspace {
        let rows = space
            .basis()
            .iter()
            .map(|v| {
                let w = self.from_fp(v);
                let conj: Word = (0..self.n).map(|i| w[(self.n - i) % self.n]).collect();
                self.to_fp(&conj)
            })
            .collect();
        Subspace::span(self.p(), self.dim(), rows)
    }

    /// (x-1)-adic valuation of a residue polynomial, n for zero.
    fn valuation(&self, a: &[FieldElement]) -> usize {
        let f = &self.field;
        let mut poly = a.to_vec();
        let mut v = 0;
        while v < self.n && poly.iter().any(|c| !c.is_zero()) {
            // Synthetic division by (x - 1); stop when the remainder a(1) is nonzero.
            let mut q = vec![FieldElement::ZERO; poly.len()];
            let mut carry = FieldElement::ZERO;
            for i in (1..poly.len()).rev() {
                carry = f.add(carry, poly[i]);
                q[i - 1] = carry;
            }
            if !f.add(carry, poly[0]).is_zero() {
                break;
            }
            poly = q;
            v += 1;
        }
        if poly.iter().all(|c| c.is_zero()) {
            self.n
        } else {
            v
        }
    }

    /// (min residue valuation, min torsion valuation) over the ideal.
    pub fn torsion_degrees(&self, space: &Subspace) -> (usize, usize) {
        let half = self.n * self.k();
        let mut t0 = self.n;
        let mut t1 = self.n;
        // Residue coordinates come first, so rows without a residue part span the torsion.
        for row in space.basis() {
            let w = self.from_fp(row);
            if row[..half].iter().any(|&d| d != 0) {
                let a: Vec<_> = w.iter().map(|c| c.a).collect();
                t0 = t0.min(self.valuation(&a));
            } else {
                let b: Vec<_> = w.iter().map(|c| c.b).collect();
                t1 = t1.min(self.valuation(&b));
            }
        }
        (t0, t1)
    }

    /// The word as a library polynomial.
    pub fn to_quotient(&self, ring: &Arc<PolyRing>, w: &Word) -> Result<QuotientPoly> {
        QuotientPoly::from_x(ring, w)
    }

    /// C ⊆ C^⊥ (checked on all pairs of a spanning set) and |C| = p^{k n}.
    pub fn passes_selfdual_test(&self, gens: &[Word], inner: InnerProduct) -> Result<bool> {
        self.check_inner(inner)?;
        let span = self.spanning_set(gens);
        let orthogonal = span
            .iter()
            .all(|a| span.iter().all(|b| self.inner_product(a, b, inner).is_zero()));
        let rank = self.ideal(gens).dimension();
        Ok(orthogonal && rank == self.k() * self.n)
    }
}

/// The full ideal lattice found by brute force.
#[derive(Clone, Debug)]
pub struct OracleLattice {
    pub ideals: Vec<Subspace>,
    /// Ordered generator pairs whose closures were taken.
    pub pairs_closed: u64,
    pub principal_ideals: usize,
    /// Whether sums of more than two principal ideals produced nothing new.
    pub two_generators_suffice: bool,
}

/// Closes every ordered pair (a, b) of ring elements, as ⟨a⟩ + ⟨b⟩, then keeps adding
/// sums until the set stops growing.
pub fn all_ideals_bruteforce(ring: &OracleRing) -> Result<OracleLattice> {
    let size = (ring.p() as u64).checked_pow(ring.size_log() as u32).filter(|&s| s <= MAX_EXHAUSTIVE_RING);
    let size = size.ok_or_else(|| {
        Error::bound("ring size", format!("{}^{}", ring.p(), ring.size_log()), MAX_EXHAUSTIVE_RING)
    })?;
    let mut principal = BTreeSet::new();
    for v in field_vectors(ring.p() as u64, ring.dim()) {
        let digits: Vec<u32> = v.iter().map(|c| c.code() as u32).collect();
        principal.insert(ring.ideal(&[ring.from_fp(&digits)]));
    }
    let principal: Vec<Subspace> = principal.into_iter().collect();
    let mut ideals: BTreeSet<Subspace> = principal.iter().cloned().collect();
    for a in &principal {
        for b in &principal {
            ideals.insert(a.sum(b));
        }
    }
    let after_pairs = ideals.len();
    loop {
        let current: Vec<Subspace> = ideals.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for b in &principal {
                grew |= ideals.insert(a.sum(b));
            }
        }
        if !grew {
            break;
        }
    }
    Ok(OracleLattice {
        two_generators_suffice: ideals.len() == after_pairs,
        ideals: ideals.into_iter().collect(),
        pairs_closed: size * size,
        principal_ideals: principal.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMode {
    Exhaustive,
    Cheap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub mode: CensusMode,
    pub inner: InnerProduct,
    pub count: u64,
    /// Ideals (exhaustive) or canonical candidates (cheap) examined.
    pub examined: u64,
    pub pairs_closed: u64,
}

/// Canonical triples with T0 + T1 = n: ⟨u⟩ and (n - i1, i1, h) for 1 <= i1 <= n/2.
pub fn selfdual_candidates(ring: &Arc<PolyRing>) -> Result<Vec<CanonicalIdeal>> {
    let n = ring.n();
    let q = ring.field().order();
    let mut total: u64 = 1;
    for i1 in 1..=n / 2 {
        total = q
            .checked_pow(i1 as u32)
            .and_then(|t| total.checked_add(t))
            .filter(|&t| t <= MAX_ENUMERATION)
            .ok_or_else(|| Error::bound("number of candidates", "over limit", MAX_ENUMERATION))?;
    }
    let mut out = vec![CanonicalIdeal::u_ideal(ring)];
    for i1 in 1..=n / 2 {
        for h in field_vectors(q, i1) {
            out.push(CanonicalIdeal::new(ring, n - i1, i1, h)?);
        }
    }
    Ok(out)
}

/// Self-dual ideals found by brute force (exhaustive mode only).
pub fn selfdual_ideals(ring: &OracleRing, lattice: &OracleLattice, inner: InnerProduct) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for c in &lattice.ideals {
        if ring.dual_bruteforce(c, inner)? == *c {
            out.push(c.clone());
        }
    }
    Ok(out)
}

pub fn selfdual_census(ring: &Arc<PolyRing>, inner: InnerProduct, mode: CensusMode) -> Result<Census> {
    let oracle = OracleRing::of(ring);
    oracle.check_inner(inner)?;
    match mode {
        CensusMode::Exhaustive => {
            let lattice = all_ideals_bruteforce(&oracle)?;
            let found = selfdual_ideals(&oracle, &lattice, inner)?;
            Ok(Census {
                mode,
                inner,
                count: found.len() as u64,
                examined: lattice.ideals.len() as u64,
                pairs_closed: lattice.pairs_closed,
            })
        }
        CensusMode::Cheap => {
            let candidates = selfdual_candidates(ring)?;
            let mut count = 0;
            for c in &candidates {
                if oracle.passes_selfdual_test(&oracle.canonical_generators(c), inner)? {
                    count += 1;
                }
            }
            Ok(Census {
                mode,
                inner,
                count,
                examined: candidates.len() as u64,
                pairs_closed: 0,
            })
        }
    }
}
