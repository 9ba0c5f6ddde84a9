//! Randomized property checks over the Heisenberg presets.
//!
//! Every check is deterministic in its seed and returns a [`CheckOutcome`]
//! listing the first failures verbatim.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{antisymmetrize, is_cohomologous, BilinearCocycle};
use crate::crossed_product::{
    conjugate, idempotent_relations, invert_homogeneous, phi, phi_inverse, CrossedProductElement,
};
use crate::error::Result;
use crate::factor_systems::{validate_factor_system, FactorSystem, FactorWindow, Relation};
use crate::fibers::{evaluate_fiber, pushforward, Character, TwistedAlgebraElement};
use crate::group_ring::GroupRingElement;
use crate::groups::{central_k_plus_lprime, heisenberg_central, heisenberg_semidirect, Group, GroupElement};
use crate::intmat::IntMatrix;
use crate::oracles::matrix_oracle_check;
use crate::scalars::{rat, CycScalar};

pub const DEFAULT_SEED: u64 = 42;

const KEPT_FAILURES: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub checks: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        Self { name: name.into(), cases: 0, checks: 0, failure_count: 0, failures: Vec::new(), elapsed_ms: 0 }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(detail());
            }
        }
    }
}

fn timed(name: &str, body: impl FnOnce(&mut CheckOutcome) -> Result<()>) -> Result<CheckOutcome> {
    let start = Instant::now();
    let mut out = CheckOutcome::new(name);
    body(&mut out)?;
    out.elapsed_ms = start.elapsed().as_millis();
    Ok(out)
}

pub fn extension_system(g: &Group) -> &FactorSystem {
    match g {
        Group::Extension(fs) => fs,
        _ => panic!("{g} is not an extension"),
    }
}

/// A random Gaussian rational a/b + (c/d)i with |a|, |c| ≤ 3 and b, d ≤ 3.
pub fn random_gaussian(rng: &mut impl Rng) -> CycScalar {
    let re = rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    let im = rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    CycScalar::gaussian(re, im)
}

pub fn random_nonzero_gaussian(rng: &mut impl Rng) -> CycScalar {
    loop {
        let c = random_gaussian(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random element of ℂ[G] supported on at most `max_support` points of
/// `ball`, with Gaussian rational coefficients.
pub fn random_element(rng: &mut impl Rng, group: &Group, ball: &[GroupElement], max_support: usize) -> Result<GroupRingElement> {
    let size = rng.gen_range(0..=max_support.min(ball.len()));
    let terms = ball.choose_multiple(rng, size).map(|g| (g.clone(), random_nonzero_gaussian(rng))).collect::<Vec<_>>();
    GroupRingElement::from_terms(group, 4, terms)
}

/// Φ(f⋆g) = Φ(f)•Φ(g), Φ(f*) = Φ(f)* and Φ⁻¹Φ = id over both presets.
pub fn check_phi(pairs: usize, max_support: usize, seed: u64) -> Result<CheckOutcome> {
    timed("phi-homomorphism", |out| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in [heisenberg_semidirect(), heisenberg_central()] {
            let cs = extension_system(&g).lift();
            let ball = g.ball(3)?;
            for _ in 0..pairs {
                let f = random_element(&mut rng, &g, &ball, max_support)?;
                let h = random_element(&mut rng, &g, &ball, max_support)?;
                let (pf, ph) = (phi(&cs, &f)?, phi(&cs, &h)?);
                out.cases += 1;
                let lhs = phi(&cs, &f.convolve(&h)?)?;
                let rhs = pf.mul(&ph)?;
                out.check(lhs == rhs, || format!("{g}: Phi(f*g) != Phi(f)Phi(g) for f = {f}, g = {h}"));
                let adj = phi(&cs, &f.involute()?)?;
                out.check(adj == pf.involute()?, || format!("{g}: Phi(f^*) != Phi(f)^* for f = {f}"));
                out.check(phi_inverse(&pf)? == f, || format!("{g}: Phi^-1 Phi(f) != f for f = {f}"));
            }
        }
        Ok(())
    })
}

/// (c δ_n d_h)⁻¹ from the closed formula is a two-sided inverse.
pub fn check_homogeneous_inverse(count: usize, seed: u64) -> Result<CheckOutcome> {
    timed("homogeneous-inverse", |out| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in [heisenberg_semidirect(), heisenberg_central()] {
            let cs = extension_system(&g).lift();
            let ns = cs.normal().ball(3)?;
            let hs = cs.quotient().ball(3)?;
            for _ in 0..count {
                let n = ns.choose(&mut rng).expect("nonempty ball").clone();
                let h = hs.choose(&mut rng).expect("nonempty ball").clone();
                let f = GroupRingElement::monomial(cs.normal(), n, random_nonzero_gaussian(&mut rng))?;
                out.cases += 1;
                let x = CrossedProductElement::homogeneous(&cs, f.clone(), h.clone())?;
                match invert_homogeneous(&cs, &f, &h) {
                    Ok(y) => {
                        let one = CrossedProductElement::one(&cs, 4);
                        out.check(x.mul(&y)? == one, || format!("{g}: x y != 1 for x = {x}"));
                        out.check(y.mul(&x)? == one, || format!("{g}: y x != 1 for x = {x}"));
                        let deg = cs.quotient().inv(&h)?;
                        out.check(y.as_homogeneous().is_some_and(|(d, _)| d == deg), || {
                            format!("{g}: inverse of {x} is not homogeneous of degree {deg}")
                        });
                    }
                    Err(e) => out.check(false, || format!("{g}: inverse of {x} failed: {e}")),
                }
            }
        }
        Ok(())
    })
}

/// Conjugating an element supported in degrees 2ℤ of the semidirect preset by
/// a random homogeneous unit keeps its support in 2ℤ.
pub fn check_conjugation_invariance(count: usize, seed: u64) -> Result<CheckOutcome> {
    timed("conjugation-invariance", |out| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = heisenberg_semidirect();
        let cs = extension_system(&g).lift();
        let ns = cs.normal().ball(2)?;
        let even: Vec<GroupElement> = (-2..=2).map(|k| GroupElement::vector(vec![2 * k])).collect();
        let hs = cs.quotient().ball(3)?;
        for _ in 0..count {
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(1..=3) {
                let f = random_element(&mut rng, cs.normal(), &ns, 3)?;
                terms.push((even.choose(&mut rng).expect("nonempty").clone(), f));
            }
            let x = CrossedProductElement::from_terms(&cs, 4, terms)?;
            let n = ns.choose(&mut rng).expect("nonempty").clone();
            let u = GroupRingElement::monomial(cs.normal(), n, random_nonzero_gaussian(&mut rng))?;
            let h = hs.choose(&mut rng).expect("nonempty").clone();
            out.cases += 1;
            let y = conjugate(&x, &u, &h)?;
            let inside = y.support().iter().all(|d| d.as_ints().is_some_and(|v| v[0] % 2 == 0));
            out.check(inside, || format!("conjugating {x} by ({u}) D{h} gives {y}"));
            let back = conjugate(&y, &invert_homogeneous(&cs, &u, &h)?.component(&cs.quotient().inv(&h)?), &cs.quotient().inv(&h)?)?;
            out.check(back == x, || format!("conjugation by ({u}) D{h} is not undone by its inverse on {x}"));
        }
        Ok(())
    })
}

/// Idempotent relations hold on 0, 1 and the torsion example and fail on
/// random non-idempotents.
pub fn check_idempotent_relations(random: usize, seed: u64) -> Result<CheckOutcome> {
    timed("idempotent-relations", |out| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = heisenberg_semidirect();
        let cs = extension_system(&g).lift();
        let half = CycScalar::from_rational(4, rat(1, 2));
        let torsion_fs = FactorSystem::trivial(Group::FiniteCyclic(2), Group::FreeAbelian(1));
        let tcs = torsion_fs.lift();
        let e = GroupRingElement::from_terms(
            tcs.normal(),
            4,
            [(GroupElement::cyclic(0, 2), half.clone()), (GroupElement::cyclic(1, 2), half)],
        )?;
        let torsion = CrossedProductElement::homogeneous(&tcs, e, tcs.quotient().identity())?;
        for x in [CrossedProductElement::zero(&cs, 4), CrossedProductElement::one(&cs, 4), torsion] {
            out.cases += 1;
            let r = idempotent_relations(&x)?;
            out.check(r.passed(), || format!("relations fail on idempotent {x}: {:?}", r.violations.first()));
        }
        let ns = cs.normal().ball(2)?;
        let hs = cs.quotient().ball(1)?;
        let mut produced = 0;
        while produced < random {
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(1..=3) {
                terms.push((hs.choose(&mut rng).expect("nonempty").clone(), random_element(&mut rng, cs.normal(), &ns, 3)?));
            }
            let x = CrossedProductElement::from_terms(&cs, 4, terms)?;
            if x.mul(&x)? == x && x.involute()? == x {
                continue;
            }
            produced += 1;
            out.cases += 1;
            let r = idempotent_relations(&x)?;
            out.check(!r.passed(), || format!("no violation reported for non-idempotent {x}"));
        }
        Ok(())
    })
}

fn random_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows(&rows).expect("square")
}

/// is_cohomologous on random pairs of bilinear cocycles on ℤ² against
/// equality of antisymmetrizations; half the pairs differ by a symmetric
/// matrix so both answers occur. Positive witnesses are re-checked here.
pub fn check_cohomology(pairs: usize, seed: u64) -> Result<CheckOutcome> {
    timed("cohomology-classification", |out| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..pairs {
            let b1 = random_matrix(&mut rng, 2, 3);
            let b2 = if i % 2 == 0 {
                let s = random_matrix(&mut rng, 2, 3);
                b1.sub(&s.sub(&s.transpose().neg()).neg())
            } else {
                random_matrix(&mut rng, 2, 3)
            };
            let (c1, c2) = (BilinearCocycle::new(b1.clone())?, BilinearCocycle::new(b2.clone())?);
            out.cases += 1;
            let v = is_cohomologous(&c1, &c2)?;
            let expected = b1.sub(&b1.transpose()) == b2.sub(&b2.transpose());
            out.check(v.cohomologous == expected, || format!("verdict {} for {:?} vs {:?}", v.cohomologous, b1.to_rows(), b2.to_rows()));
            out.check(v.class_left == antisymmetrize(&c1), || format!("class of {:?}", b1.to_rows()));
            if v.cohomologous {
                match &v.witness {
                    None => out.check(false, || format!("no witness for {:?} ~ {:?}", b1.to_rows(), b2.to_rows())),
                    Some(w) => {
                        let mut ok = w.verified_pairs > 0;
                        let r = w.verified_radius;
                        for x in (-r..=r).flat_map(|a| (-r..=r).map(move |b| [a, b])) {
                            for y in (-r..=r).flat_map(|a| (-r..=r).map(move |b| [a, b])) {
                                let delta = w.eval(&x) + w.eval(&y) - w.eval(&[x[0] + y[0], x[1] + y[1]]);
                                ok &= delta == c1.eval(&x, &y) - c2.eval(&x, &y);
                            }
                        }
                        out.check(ok, || format!("witness fails for {:?} ~ {:?}", b1.to_rows(), b2.to_rows()));
                    }
                }
            } else {
                out.check(v.witness.is_none(), || format!("witness for non-cohomologous {:?}", b1.to_rows()));
            }
        }
        Ok(())
    })
}

/// Fiber evaluation is multiplicative and *-preserving for every character
/// of the listed orders; the trivial-character fiber is the pushforward; the
/// order-4 character gives u_(1,0) u_(0,1) = i u_(0,1) u_(1,0).
pub fn check_fibers(pairs: usize, orders: &[u32], seed: u64) -> Result<CheckOutcome> {
    timed("fiber-homomorphism", |out| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = heisenberg_central();
        let fs = extension_system(&g).clone();
        let ball = g.ball(2)?;
        let chars: Vec<Character> = orders.iter().flat_map(|&q| Character::all_of_order(1, q)).collect();
        for _ in 0..pairs {
            let x = random_element(&mut rng, &g, &ball, 4)?;
            let y = random_element(&mut rng, &g, &ball, 4)?;
            let xy = x.convolve(&y)?;
            out.cases += 1;
            for chi in &chars {
                let (fx, fy) = (evaluate_fiber(&x, chi)?, evaluate_fiber(&y, chi)?);
                out.check(evaluate_fiber(&xy, chi)? == fx.mul(&fy)?, || format!("fiber at {chi} not multiplicative on {x}, {y}"));
                out.check(evaluate_fiber(&x.involute()?, chi)? == fx.involute()?, || format!("fiber at {chi} not *-preserving on {x}"));
            }
            let eps = evaluate_fiber(&x, &Character::trivial(1))?.to_group_ring()?;
            out.check(eps == pushforward(&x)?, || format!("trivial fiber differs from pushforward on {x}"));
        }
        if orders.contains(&4) {
            let chi = Character::new(4, vec![1])?;
            let one = CycScalar::one(4);
            let a = TwistedAlgebraElement::monomial(&fs, &chi, GroupElement::vector(vec![1, 0]), one.clone())?;
            let b = TwistedAlgebraElement::monomial(&fs, &chi, GroupElement::vector(vec![0, 1]), one)?;
            let ba = b.mul(&a)?;
            let i_ba = ba.mul(&TwistedAlgebraElement::monomial(&fs, &chi, GroupElement::vector(vec![0, 0]), CycScalar::i())?)?;
            out.check(a.mul(&b)? == i_ba, || "u_(1,0) u_(0,1) != i u_(0,1) u_(1,0)".into());
        }
        Ok(())
    })
}

/// Both presets satisfy the factor-system relations on the window with
/// H-radius `h_radius` and N-radius `n_radius`.
pub fn check_presets(h_radius: usize, n_radius: usize) -> Result<CheckOutcome> {
    timed("factor-system-presets", |out| {
        for g in [heisenberg_semidirect(), heisenberg_central()] {
            let fs = extension_system(&g);
            let w = FactorWindow::balls(fs.normal(), fs.quotient(), h_radius, n_radius)?;
            let r = validate_factor_system(fs, &w)?;
            out.cases += 1;
            out.checks += r.checks.saturating_sub(1);
            out.check(r.passed(), || format!("{g}: {:?}", r.violations.first()));
        }
        Ok(())
    })
}

/// The linear k + l′ cocycle is rejected with a cocycle witness; k·l′ passes.
pub fn check_linear_cocycle_rejected() -> Result<CheckOutcome> {
    timed("linear-cocycle-rejected", |out| {
        let bad = central_k_plus_lprime();
        let w = FactorWindow::balls(bad.normal(), bad.quotient(), 2, 2)?;
        let r = validate_factor_system(&bad, &w)?;
        out.cases += 2;
        out.check(r.first(Relation::Cocycle).is_some_and(|v| v.witness.len() == 3), || "k + l' not rejected with a cocycle triple".into());
        let good = heisenberg_central();
        let r = validate_factor_system(extension_system(&good), &w)?;
        out.check(r.passed(), || format!("k l' rejected: {:?}", r.violations.first()));
        Ok(())
    })
}

pub fn check_matrix_oracle(words: usize, seed: u64) -> Result<CheckOutcome> {
    timed("matrix-oracle", |out| {
        let r = matrix_oracle_check(words, seed)?;
        out.cases = 2 * words as u64;
        out.checks = r.checks;
        out.failure_count = r.mismatches.len() as u64;
        out.failures = r.mismatches.into_iter().take(KEPT_FAILURES).collect();
        Ok(())
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub outcomes: Vec<CheckOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }
}

/// The full property suite at reduced case counts.
pub fn run_selftest(seed: u64) -> Result<SelftestReport> {
    let outcomes = vec![
        check_presets(2, 2)?,
        check_linear_cocycle_rejected()?,
        check_phi(100, 6, seed)?,
        check_homogeneous_inverse(100, seed)?,
        check_conjugation_invariance(100, seed)?,
        check_idempotent_relations(30, seed)?,
        check_cohomology(50, seed)?,
        check_fibers(50, &[1, 2, 3, 4, 6], seed)?,
        check_matrix_oracle(1000, seed)?,
    ];
    Ok(SelftestReport { seed, outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        for o in [
            check_phi(10, 4, 1).unwrap(),
            check_homogeneous_inverse(10, 1).unwrap(),
            check_conjugation_invariance(10, 1).unwrap(),
            check_idempotent_relations(5, 1).unwrap(),
            check_cohomology(10, 1).unwrap(),
            check_fibers(5, &[1, 2, 4], 1).unwrap(),
            check_linear_cocycle_rejected().unwrap(),
        ] {
            assert!(o.passed(), "{}: {:?}", o.name, o.failures);
            assert!(o.checks > 0);
        }
    }
}
