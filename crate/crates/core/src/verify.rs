//! The oracle suite: library results checked against brute force at one parameter point.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::chain_ring::{PolyRing, QuotientPoly};
use crate::error::Result;
use crate::ideal_canon::{canonicalize, count_all_ideals, enumerate_ideals, CanonicalIdeal, CodeParams};
use crate::oracle::{all_ideals_bruteforce, selfdual_ideals, CensusMode, OracleRing, Subspace};
use crate::selfdual::{count_selfdual, enumerate_selfdual, InnerProduct};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub p: u64,
    pub k: u32,
    pub s: u32,
    pub mode: CensusMode,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

struct Suite {
    timings: bool,
    checks: Vec<CheckResult>,
}

impl Suite {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, Value)>) -> Result<()> {
        let start = Instant::now();
        let (passed, detail) = f()?;
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail,
            millis: self.timings.then(|| start.elapsed().as_millis() as u64),
        });
        Ok(())
    }
}

fn inners(k: u32) -> Vec<InnerProduct> {
    if k.is_multiple_of(2) {
        vec![InnerProduct::Euclidean, InnerProduct::Hermitian]
    } else {
        vec![InnerProduct::Euclidean]
    }
}

fn exhaustive(suite: &mut Suite, ring: &Arc<PolyRing>) -> Result<()> {
    let params = CodeParams::of(ring);
    let oracle = OracleRing::of(ring);
    let lattice = all_ideals_bruteforce(&oracle)?;
    let canonical: Vec<CanonicalIdeal> = enumerate_ideals(ring)?.collect();

    suite.run("ideal_count", || {
        let c = count_all_ideals(params)?;
        let found = lattice.ideals.len() as u64;
        Ok((
            c.count.to_u64() == Some(found) && canonical.len() as u64 == found,
            json!({
                "oracle": found.to_string(),
                "pairs_closed": lattice.pairs_closed.to_string(),
                "principal_ideals": lattice.principal_ideals,
                "enumerated": canonical.len().to_string(),
                "inclusion_exclusion": c.count,
                "closed_form": c.closed_form,
                "closed_form_mismatch": c.closed_form_mismatch,
            }),
        ))
    })?;

    suite.run("two_generators_suffice", || {
        Ok((lattice.two_generators_suffice, json!({ "ideals": lattice.ideals.len() })))
    })?;

    suite.run("canonical_forms_match_lattice", || {
        let expanded: BTreeSet<Subspace> = canonical.iter().map(|c| oracle.expand_space(c)).collect();
        let found: BTreeSet<Subspace> = lattice.ideals.iter().cloned().collect();
        Ok((expanded == found && expanded.len() == canonical.len(), json!({ "distinct_word_sets": expanded.len() })))
    })?;

    suite.run("canonicalize_round_trip", || {
        let mut bad = 0;
        for space in &lattice.ideals {
            let mut gens: Vec<QuotientPoly> = space
                .basis()
                .iter()
                .map(|v| oracle.to_quotient(ring, &oracle.from_fp(v)))
                .collect::<Result<_>>()?;
            if gens.is_empty() {
                gens.push(QuotientPoly::zero(ring));
            }
            let c = canonicalize(&gens)?;
            let ok = oracle.expand_space(&c) == *space
                && oracle.torsion_degrees(space) == (c.t0(), c.t1())
                && space.dimension() as u64 == c.cardinality_log();
            bad += usize::from(!ok);
        }
        Ok((bad == 0, json!({ "ideals": lattice.ideals.len(), "failures": bad })))
    })?;

    for inner in inners(ring.k()) {
        suite.run(&format!("{}_duality_laws", inner.name()), || {
            let mut bad = 0;
            for c in &canonical {
                let space = oracle.expand_space(c);
                let dual = oracle.dual_bruteforce(&space, inner)?;
                let lib_dual = match inner {
                    InnerProduct::Euclidean => c.euclidean_dual(),
                    InnerProduct::Hermitian => c.hermitian_dual()?,
                };
                let mut ok = oracle.expand_space(&lib_dual) == dual
                    && oracle.dual_bruteforce(&dual, inner)? == space
                    && dual.dimension() + space.dimension() == oracle.dim();
                if inner == InnerProduct::Euclidean {
                    let ann = oracle.ann_bruteforce(&space)?;
                    ok &= oracle.expand_space(&c.annihilator()) == ann
                        && oracle.ann_bruteforce(&ann)? == space
                        && oracle.conjugate(&ann) == dual;
                }
                bad += usize::from(!ok);
            }
            Ok((bad == 0, json!({ "ideals": canonical.len(), "failures": bad })))
        })?;
    }

    for inner in inners(ring.k()) {
        suite.run(&format!("{}_self_dual_census", inner.name()), || {
            let found: BTreeSet<Subspace> = selfdual_ideals(&oracle, &lattice, inner)?.into_iter().collect();
            let listed: BTreeSet<Subspace> = enumerate_selfdual(ring, inner, None)?
                .iter()
                .map(|c| oracle.expand_space(c))
                .collect();
            let count = count_selfdual(params, inner)?;
            let ok = found == listed && count.count.to_u64() == Some(found.len() as u64);
            Ok((
                ok,
                json!({
                    "oracle": found.len().to_string(),
                    "listed": listed.len().to_string(),
                    "count": count.count,
                    "closed_form": count.closed_form,
                    "closed_form_mismatch": count.closed_form_mismatch,
                }),
            ))
        })?;
    }
    Ok(())
}

fn cheap(suite: &mut Suite, ring: &Arc<PolyRing>) -> Result<()> {
    let params = CodeParams::of(ring);
    let oracle = OracleRing::of(ring);
    for inner in inners(ring.k()) {
        suite.run(&format!("{}_self_dual_candidates", inner.name()), || {
            let census = crate::oracle::selfdual_census(ring, inner, CensusMode::Cheap)?;
            let count = count_selfdual(params, inner)?;
            Ok((
                count.count.to_u64() == Some(census.count),
                json!({
                    "candidates": census.examined.to_string(),
                    "passing": census.count.to_string(),
                    "count": count.count,
                    "closed_form": count.closed_form,
                    "closed_form_mismatch": count.closed_form_mismatch,
                }),
            ))
        })?;
        suite.run(&format!("{}_listing_orthogonality", inner.name()), || {
            let listed = enumerate_selfdual(ring, inner, None)?;
            let mut bad = 0;
            for c in &listed {
                bad += usize::from(!oracle.passes_selfdual_test(&oracle.canonical_generators(c), inner)?);
            }
            Ok((bad == 0, json!({ "listed": listed.len(), "failures": bad })))
        })?;
    }
    Ok(())
}

/// Runs every check available in `mode`. Size-bound refusals are returned as errors.
pub fn verify(p: u64, k: u32, s: u32, mode: CensusMode, timings: bool) -> Result<VerifyReport> {
    let ring = PolyRing::create(p, k, s)?;
    let mut suite = Suite {
        timings,
        checks: Vec::new(),
    };
    match mode {
        CensusMode::Exhaustive => exhaustive(&mut suite, &ring)?,
        CensusMode::Cheap => cheap(&mut suite, &ring)?,
    }
    Ok(VerifyReport {
        p,
        k,
        s,
        mode,
        passed: suite.checks.iter().all(|c| c.passed),
        checks: suite.checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_points_pass() {
        for (p, k, s) in [(2, 1, 1), (2, 2, 1)] {
            let r = verify(p, k, s, CensusMode::Exhaustive, false).unwrap();
            assert!(r.passed, "{:?}", r.checks);
        }
        let r = verify(2, 1, 3, CensusMode::Cheap, false).unwrap();
        assert!(r.passed);
        assert_eq!(r.checks[0].detail["closed_form_mismatch"], true);
        assert!(verify(3, 1, 2, CensusMode::Exhaustive, false).unwrap_err().is_size_bound());
    }
}
