//! Property tests on random generator sets and random canonical triples.

use std::sync::Arc;

use chaincodes::ideal_canon::{canonicalize, CanonicalIdeal};
use chaincodes::oracle::OracleRing;
use chaincodes::{FieldElement, PolyRing, QuotientPoly, RingElement};
use proptest::prelude::*;

fn element(ring: &PolyRing, a: u64, b: u64) -> RingElement {
    let q = ring.field().order();
    RingElement::new(FieldElement::from_code(a % q), FieldElement::from_code(b % q))
}

fn poly(ring: &Arc<PolyRing>, coeffs: &[(u64, u64)]) -> QuotientPoly {
    let cs: Vec<RingElement> = coeffs.iter().map(|&(a, b)| element(ring, a, b)).collect();
    QuotientPoly::from_x(ring, &cs).unwrap()
}


/// A valid triple built from raw draws: clamp T1 <= T0, zero the forced prefix of h.
fn triple(ring: &Arc<PolyRing>, t0: usize, t1: usize, raw: &[u64]) -> CanonicalIdeal {
    let n = ring.n();
    let t0 = t0 % (n + 1);
    let t1 = t1 % (t0 + 1);
    let low = (t0 + t1).saturating_sub(n);
    let q = ring.field().order();
    let h = if t0 < n {
        (0..t1)
            .map(|j| if j < low { FieldElement::ZERO } else { FieldElement::from_code(raw[j] % q) })
            .collect()
    } else {
        Vec::new()
    };
    CanonicalIdeal::new(ring, t0, t1, h).unwrap()
}

fn rings() -> Vec<Arc<PolyRing>> {
    [(2, 2, 2), (3, 1, 2), (3, 2, 1), (5, 1, 1), (2, 1, 3)]
        .into_iter()
        .map(|(p, k, s)| PolyRing::create(p, k, s).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_of_random_generators_matches_closure(
        which in 0usize..5,
        gens in prop::collection::vec(prop::collection::vec((0u64..25, 0u64..25), 9), 1..4),
    ) {
        let ring = &rings()[which];
        let n = ring.n();
        let gens: Vec<QuotientPoly> = gens.iter().map(|g| poly(ring, &g[..n])).collect();
        let c = canonicalize(&gens).unwrap();
        let oracle = OracleRing::of(ring);
        let words: Vec<_> = gens.iter().map(|g| g.to_x()).collect();
        prop_assert_eq!(oracle.expand_space(&c), oracle.ideal(&words));
        for g in &gens {
            prop_assert!(c.contains(g).unwrap());
        }
    }

    #[test]
    fn duality_laws_on_random_triples(
        which in 0usize..5,
        t0 in 0usize..10,
        t1 in 0usize..10,
        raw in prop::collection::vec(0u64..25, 9),
    ) {
        let ring = &rings()[which];
        let c = triple(ring, t0, t1, &raw);
        let total = 2 * ring.k() as u64 * ring.n() as u64;
        let ann = c.annihilator();
        prop_assert_eq!(&ann.annihilator(), &c);
        prop_assert_eq!(c.cardinality_log() + ann.cardinality_log(), total);
        let dual = c.euclidean_dual();
        prop_assert_eq!(&dual.euclidean_dual(), &c);
        prop_assert_eq!(&dual, &ann.conjugate());
        prop_assert_eq!(&c.conjugate().conjugate(), &c);
        if ring.k().is_multiple_of(2) {
            let h = c.hermitian_dual().unwrap();
            prop_assert_eq!(&h.hermitian_dual().unwrap(), &c);
        }
        prop_assert_eq!(&canonicalize(&c.generator_list()).unwrap_or_else(|_| CanonicalIdeal::zero(ring)), &c);
    }

    #[test]
    fn multiples_of_generators_are_members(
        which in 0usize..5,
        t0 in 0usize..10,
        t1 in 0usize..10,
        raw in prop::collection::vec(0u64..25, 9),
        r0 in prop::collection::vec((0u64..25, 0u64..25), 9),
        r1 in prop::collection::vec((0u64..25, 0u64..25), 9),
    ) {
        let ring = &rings()[which];
        let n = ring.n();
        let c = triple(ring, t0, t1, &raw);
        let (f0, f1) = c.generators();
        let m = poly(ring, &r0[..n]).mul(&f0).unwrap().add(&poly(ring, &r1[..n]).mul(&f1).unwrap()).unwrap();
        prop_assert!(c.contains(&m).unwrap());
    }
}
