//! Self-dual abelian codes in F_{2^k}[A x Z_2 x Z_{2^s}] for an odd abelian group A.
//!
//! F_{2^k}[Z_2 x Z_{2^s}] is the cyclic-code ring R[x]/<x^{2^s} - 1> with
//! R = F_{2^k} + uF_{2^k} (the Z_2 generator becomes 1 + u), and adjoining A splits
//! it along the 2^k-cyclotomic classes of A. A class of size m contributes a
//! component of cyclic codes over F_{2^{km}} + uF_{2^{km}}; how that component is
//! constrained by self-duality depends on the class's relation to -a
//! (Euclidean types I, II, III) or to -2^{k/2}a (Hermitian types I', II').

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bigcount::BigCount;
use crate::chain_ring::{mod_pow, PolyRing};
use crate::error::{Error, Result};
use crate::ideal_canon::{count_all_ideals, enumerate_ideals, CanonicalIdeal, CodeParams};
use crate::limits::{MAX_COUNT_GROUP_ORDER, MAX_ENUMERATION, MAX_GROUP_ORDER};
use crate::selfdual::{count_euclidean, count_hermitian_formula, InnerProduct};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Divisors of n in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for &d in &divs {
            let mut pk = 1;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    divs
}

fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Order of r modulo d, for r already reduced and coprime to d.
fn order_of(r: u64, d: u64) -> u64 {
    if d == 1 {
        return 1;
    }
    let phi = factorize(d)
        .iter()
        .fold(1, |acc, &(p, e)| acc * (p - 1) * p.pow(e - 1));
    let mut ord = phi;
    for (p, _) in factorize(phi) {
        while ord % p == 0 && mod_pow(r, ord / p, d) == 1 {
            ord /= p;
        }
    }
    ord
}

/// Least e >= 1 with q^e ≡ 1 (mod d).
pub fn mult_order(q: u64, d: u64) -> Result<u64> {
    if d == 0 || gcd(q, d) != 1 {
        return Err(Error::NotCoprime { q, d });
    }
    Ok(order_of(q % d, d))
}

fn check_odd(d: u64) -> Result<()> {
    if d.is_multiple_of(2) {
        return Err(Error::EvenOrder(d));
    }
    Ok(())
}

/// ord_d(2^e) without forming 2^e.
pub fn order_of_pow2(e: u64, d: u64) -> Result<u64> {
    check_odd(d)?;
    Ok(order_of(mod_pow(2, e, d), d))
}

/// Whether -1 is a power (with odd exponent, if `odd_only`) of 2^e modulo d.
/// The only element of order 2 in <2^e> is 2^{e ord/2}, and exponents reaching it
/// are ord/2 + multiples of ord, which share the parity of ord/2.
fn minus_one_reachable(d: u64, e: u64, odd_only: bool) -> Result<bool> {
    check_odd(d)?;
    if d == 1 {
        return Ok(true);
    }
    let r = mod_pow(2, e, d);
    let ord = order_of(r, d);
    Ok(ord.is_multiple_of(2) && mod_pow(r, ord / 2, d) == d - 1 && (!odd_only || (ord / 2) % 2 == 1))
}

/// χ(d, 2^k): 0 when d divides 2^{kt} + 1 for some t >= 1, else 1.
pub fn chi(d: u64, k: u32) -> Result<u8> {
    Ok(u8::from(!minus_one_reachable(d, k as u64, false)?))
}

/// λ(d, 2^h): 0 when d divides 2^{ht} + 1 for some odd t, else 1.
pub fn lambda(d: u64, half_k: u32) -> Result<u8> {
    Ok(u8::from(!minus_one_reachable(d, half_k as u64, true)?))
}

/// A finite abelian group Z_{m_1} x ... x Z_{m_r} of odd order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    order: u64,
    exponent: u64,
}

impl AbelianGroup {
    /// Factors of order 1 are allowed; an empty list is the trivial group.
    pub fn new(factors: &[u64]) -> Result<Self> {
        let mut order: u64 = 1;
        let mut exponent = 1;
        for &m in factors {
            if m == 0 {
                return Err(Error::range("cyclic factor", 0, ">= 1"));
            }
            check_odd(m)?;
            order = order
                .checked_mul(m)
                .filter(|&o| o <= MAX_COUNT_GROUP_ORDER)
                .ok_or_else(|| Error::bound("group order", format!("product of {factors:?}"), MAX_COUNT_GROUP_ORDER))?;
            exponent = lcm(exponent, m);
        }
        Ok(AbelianGroup {
            factors: factors.to_vec(),
            order,
            exponent,
        })
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            factors: Vec::new(),
            order: 1,
            exponent: 1,
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.factors)
            .fold(1, |acc, (&x, &m)| lcm(acc, m / gcd(x % m, m)))
    }

    /// N_A(d), by Möbius inversion of #{a : d a = 0} = Π gcd(d, m_i).
    pub fn elements_of_order(&self, d: u64) -> Result<u64> {
        if d == 0 || !self.exponent.is_multiple_of(d) {
            return Err(Error::NotADivisor {
                d,
                exponent: self.exponent,
            });
        }
        let total: i128 = divisors(d)
            .into_iter()
            .map(|e| {
                let killed: i128 = self.factors.iter().map(|&m| gcd(e, m) as i128).product();
                mobius(d / e) as i128 * killed
            })
            .sum();
        Ok(total as u64)
    }

    fn index(&self, a: &[u64]) -> usize {
        a.iter()
            .zip(&self.factors)
            .fold(0, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    fn element(&self, mut idx: usize) -> Vec<u64> {
        let mut a = vec![0; self.factors.len()];
        for (slot, &m) in a.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % m as usize) as u64;
            idx /= m as usize;
        }
        a
    }

    /// c·a for a scalar given as 2^e times a sign.
    fn scale(&self, a: &[u64], e: u64, negate: bool) -> Vec<u64> {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &m)| {
                let v = ((x as u128 * mod_pow(2, e, m) as u128) % m as u128) as u64;
                if negate {
                    (m - v) % m
                } else {
                    v
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EuclideanType {
    /// a = -a
    I,
    /// -a in S(a), a != -a
    II,
    /// -a not in S(a)
    III,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HermitianType {
    /// -2^{k/2} a in S(a)
    #[serde(rename = "I'")]
    IPrime,
    #[serde(rename = "II'")]
    IIPrime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicClass {
    pub representative: Vec<u64>,
    pub members: Vec<Vec<u64>>,
    /// Order of the representative; shared by every member.
    pub element_order: u64,
    pub type_euclidean: EuclideanType,
    /// Index of the class containing -a, for type III.
    pub partner_euclidean: Option<usize>,
    pub type_hermitian: Option<HermitianType>,
    /// Index of the class containing -2^{k/2} a, for type II'.
    pub partner_hermitian: Option<usize>,
}

impl CyclotomicClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub total: usize,
    pub r_i: usize,
    pub r_ii: usize,
    /// Pairs of type III classes.
    pub r_iii: usize,
    pub r_i_prime: Option<usize>,
    pub r_ii_prime: Option<usize>,
}

/// The 2^k-cyclotomic classes of A, ordered by smallest member
/// (elements ordered lexicographically as residue vectors).
pub fn cyclotomic_classes(group: &AbelianGroup, k: u32) -> Result<Vec<CyclotomicClass>> {
    if k < 1 {
        return Err(Error::InvalidDegree(k));
    }
    if group.order > MAX_GROUP_ORDER {
        return Err(Error::bound("group order", group.order, MAX_GROUP_ORDER));
    }
    let size = group.order as usize;
    let mut class_of = vec![usize::MAX; size];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..size {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = Vec::new();
        let mut cur = start;
        loop {
            class_of[cur] = id;
            orbit.push(cur);
            cur = group.index(&group.scale(&group.element(cur), k as u64, false));
            if cur == start {
                break;
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let classes = orbits
        .iter()
        .enumerate()
        .map(|(id, orbit)| {
            let rep = group.element(orbit[0]);
            let neg = class_of[group.index(&group.scale(&rep, 0, true))];
            let type_euclidean = if group.scale(&rep, 0, true) == rep {
                EuclideanType::I
            } else if neg == id {
                EuclideanType::II
            } else {
                EuclideanType::III
            };
            let (type_hermitian, partner_hermitian) = if k.is_multiple_of(2) {
                let twisted = class_of[group.index(&group.scale(&rep, (k / 2) as u64, true))];
                if twisted == id {
                    (Some(HermitianType::IPrime), None)
                } else {
                    (Some(HermitianType::IIPrime), Some(twisted))
                }
            } else {
                (None, None)
            };
            CyclotomicClass {
                element_order: group.element_order(&rep),
                members: orbit.iter().map(|&i| group.element(i)).collect(),
                representative: rep,
                partner_euclidean: (type_euclidean == EuclideanType::III).then_some(neg),
                type_euclidean,
                type_hermitian,
                partner_hermitian,
            }
        })
        .collect();
    Ok(classes)
}

pub fn class_counts(classes: &[CyclotomicClass]) -> ClassCounts {
    let count_e = |t| classes.iter().filter(|c| c.type_euclidean == t).count();
    let hermitian = classes.first().and_then(|c| c.type_hermitian).is_some();
    let count_h = |t| classes.iter().filter(|c| c.type_hermitian == Some(t)).count();
    ClassCounts {
        total: classes.len(),
        r_i: count_e(EuclideanType::I),
        r_ii: count_e(EuclideanType::II),
        r_iii: count_e(EuclideanType::III) / 2,
        r_i_prime: hermitian.then(|| count_h(HermitianType::IPrime)),
        r_ii_prime: hermitian.then(|| count_h(HermitianType::IIPrime) / 2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountFactor {
    pub d: u64,
    pub ord: u64,
    /// χ(d, 2^k) for Euclidean counts, λ(d, 2^{k/2}) for Hermitian counts.
    pub predicate: u8,
    pub base: &'static str,
    pub base_value: BigCount,
    pub exponent: BigCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianCount {
    pub group: Vec<u64>,
    pub k: u32,
    pub s: u32,
    pub inner: InnerProduct,
    pub count: BigCount,
    pub factors: Vec<CountFactor>,
}

fn exact_div(num: u64, den: u64) -> Result<u64> {
    if !num.is_multiple_of(den) {
        return Err(Error::NonIntegralExponent { num, den });
    }
    Ok(num / den)
}

fn component_params(k: u32, ord: u64, s: u32) -> Result<CodeParams> {
    let degree = (k as u64)
        .checked_mul(ord)
        .filter(|&d| d <= u32::MAX as u64)
        .ok_or_else(|| Error::bound("component extension degree", format!("{k}*{ord}"), u32::MAX))?;
    CodeParams::new(2, degree as u32, s)
}

/// Caches the cyclic counts NE, NH and N by (base, component degree).
#[derive(Default)]
struct BaseCounts(HashMap<(&'static str, u64), BigCount>);

impl BaseCounts {
    fn get(&mut self, base: &'static str, k: u32, ord: u64, s: u32) -> Result<BigCount> {
        if let Some(v) = self.0.get(&(base, ord)) {
            return Ok(v.clone());
        }
        let params = component_params(k, ord, s)?;
        let v = match base {
            "NE" => count_euclidean(params)?.count,
            "NH" => count_hermitian_formula(params)?.count,
            _ => count_all_ideals(params)?.count,
        };
        self.0.insert((base, ord), v.clone());
        Ok(v)
    }
}

fn evaluate(group: &AbelianGroup, k: u32, s: u32, inner: InnerProduct) -> Result<AbelianCount> {
    if k < 1 {
        return Err(Error::InvalidDegree(k));
    }
    if s < 1 {
        return Err(Error::range("s", s, ">= 1"));
    }
    if inner == InnerProduct::Hermitian && !k.is_multiple_of(2) {
        return Err(Error::OddDegree(k));
    }
    let mut cache = BaseCounts::default();
    let mut factors = Vec::new();
    let mut count = BigCount::one();
    for d in divisors(group.exponent) {
        let ord = order_of_pow2(k as u64, d)?;
        let na = group.elements_of_order(d)?;
        let predicate = match inner {
            InnerProduct::Euclidean => chi(d, k)?,
            InnerProduct::Hermitian => lambda(d, k / 2)?,
        };
        let (base, exponent) = match (predicate, ord, inner) {
            (1, _, _) => ("N", exact_div(na, 2 * ord)?),
            (_, 1, InnerProduct::Euclidean) => ("NE", na),
            _ => ("NH", exact_div(na, ord)?),
        };
        let base_value = cache.get(base, k, ord, s)?;
        count = &count * &base_value.pow(&BigUint::from(exponent))?;
        factors.push(CountFactor {
            d,
            ord,
            predicate,
            base,
            base_value,
            exponent: BigCount::from(exponent),
        });
    }
    Ok(AbelianCount {
        group: group.factors.clone(),
        k,
        s,
        inner,
        count,
        factors,
    })
}

/// Number of Euclidean self-dual abelian codes in F_{2^k}[A x Z_2 x Z_{2^s}].
pub fn count_euclidean_abelian(group: &AbelianGroup, k: u32, s: u32) -> Result<AbelianCount> {
    evaluate(group, k, s, InnerProduct::Euclidean)
}

/// Number of Hermitian self-dual abelian codes in F_{2^k}[A x Z_2 x Z_{2^s}]; needs even k.
pub fn count_hermitian_abelian(group: &AbelianGroup, k: u32, s: u32) -> Result<AbelianCount> {
    evaluate(group, k, s, InnerProduct::Hermitian)
}

/// The ring whose ideals are the components over `class`: cyclic codes of length
/// 2^s over F_{2^{k m}} + uF_{2^{k m}}, m the class size.
pub fn component_ring(class: &CyclotomicClass, k: u32, s: u32) -> Result<Arc<PolyRing>> {
    PolyRing::create(2, k * class.size() as u32, s)
}

/// Checks the self-duality conditions for a choice of one component code per
/// class, `profile[i]` belonging to `classes[i]`:
/// type I (resp. I') components self-dual for the Euclidean (resp. Hermitian) form,
/// type II components Hermitian self-dual, and paired classes (III, resp. II')
/// carrying D and the Euclidean dual of D.
pub fn validate_profile(
    classes: &[CyclotomicClass],
    k: u32,
    s: u32,
    inner: InnerProduct,
    profile: &[CanonicalIdeal],
) -> Result<bool> {
    if profile.len() != classes.len() {
        return Err(Error::ProfileShape(format!(
            "{} classes but {} components",
            classes.len(),
            profile.len()
        )));
    }
    if inner == InnerProduct::Hermitian && !k.is_multiple_of(2) {
        return Err(Error::OddDegree(k));
    }
    for (i, (class, c)) in classes.iter().zip(profile).enumerate() {
        let ring = c.ring();
        if (ring.p(), ring.k() as usize, ring.s()) != (2, k as usize * class.size(), s) {
            return Err(Error::ProfileShape(format!(
                "component {i} lives over F_{}^{} with s = {}, expected F_2^{} with s = {s}",
                ring.p(),
                ring.k(),
                ring.s(),
                k as usize * class.size()
            )));
        }
    }
    for (i, (class, c)) in classes.iter().zip(profile).enumerate() {
        let ok = match inner {
            InnerProduct::Euclidean => match class.type_euclidean {
                EuclideanType::I => c.is_euclidean_self_dual(),
                EuclideanType::II => c.is_hermitian_self_dual()?,
                EuclideanType::III => {
                    let j = class.partner_euclidean.expect("type III has a partner");
                    i > j || profile[j] == c.euclidean_dual()
                }
            },
            InnerProduct::Hermitian => match class.type_hermitian.ok_or(Error::OddDegree(k))? {
                HermitianType::IPrime => c.is_hermitian_self_dual()?,
                HermitianType::IIPrime => {
                    let j = class.partner_hermitian.expect("type II' has a partner");
                    i > j || profile[j] == c.euclidean_dual()
                }
            },
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileCensus {
    /// Number of profiles examined (every choice of cyclic code per class).
    pub profiles: u64,
    pub self_dual: u64,
}

/// Counts self-dual profiles by trying every assignment of cyclic codes to classes.
pub fn profile_census(group: &AbelianGroup, k: u32, s: u32, inner: InnerProduct) -> Result<ProfileCensus> {
    let classes = cyclotomic_classes(group, k)?;
    let mut by_degree: BTreeMap<usize, Arc<Vec<CanonicalIdeal>>> = BTreeMap::new();
    let mut choices = Vec::new();
    let mut total: u64 = 1;
    for class in &classes {
        let list = match by_degree.get(&class.size()) {
            Some(l) => l.clone(),
            None => {
                let ring = component_ring(class, k, s)?;
                let l = Arc::new(enumerate_ideals(&ring)?.collect::<Vec<_>>());
                by_degree.insert(class.size(), l.clone());
                l
            }
        };
        total = total
            .checked_mul(list.len() as u64)
            .filter(|&t| t <= MAX_ENUMERATION)
            .ok_or_else(|| Error::bound("number of profiles", "over limit", MAX_ENUMERATION))?;
        choices.push(list);
    }
    let mut pick = vec![0usize; classes.len()];
    let mut self_dual = 0;
    for _ in 0..total {
        let profile: Vec<_> = pick.iter().zip(&choices).map(|(&i, l)| l[i].clone()).collect();
        if validate_profile(&classes, k, s, inner, &profile)? {
            self_dual += 1;
        }
        for (slot, l) in pick.iter_mut().zip(&choices).rev() {
            *slot += 1;
            if *slot < l.len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(ProfileCensus {
        profiles: total,
        self_dual,
    })
}
