//! Spot-checks that a generator correspondence extends to an injective
//! homomorphism on a word-metric window.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::Result;
use crate::groups::{Group, GroupElement};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoViolation {
    pub kind: &'static str,
    pub witness: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoReport {
    pub radius: usize,
    pub domain_size: usize,
    pub window_size: usize,
    pub product_checks: u64,
    pub violations: Vec<IsoViolation>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Extends `gen_map` along words to the ball of radius 2r in G1 (with respect
/// to the given generators), then checks that every path yields the same
/// image, that φ(xy) = φ(x)φ(y) for x, y in the ball of radius r, and that φ
/// is injective on the radius-2r ball.
pub fn grp_iso_check(
    g1: &Group,
    g2: &Group,
    gen_map: &[(GroupElement, GroupElement)],
    radius: usize,
) -> Result<IsoReport> {
    let mut moves = Vec::with_capacity(2 * gen_map.len());
    for (s, t) in gen_map {
        g1.check(s)?;
        g2.check(t)?;
        moves.push((s.clone(), t.clone()));
        moves.push((g1.inv(s)?, g2.inv(t)?));
    }
    let mut violations = Vec::new();
    let mut image: HashMap<GroupElement, GroupElement> = HashMap::new();
    let mut dist: HashMap<GroupElement, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    image.insert(g1.identity(), g2.identity());
    dist.insert(g1.identity(), 0);
    queue.push_back(g1.identity());
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == 2 * radius {
            continue;
        }
        let fx = image[&x].clone();
        for (s, t) in &moves {
            let y = g1.mul(&x, s)?;
            let fy = g2.mul(&fx, t)?;
            match image.get(&y) {
                Some(prev) if *prev != fy => {
                    if violations.len() < 16 {
                        violations.push(IsoViolation {
                            kind: "relation",
                            witness: vec![x.to_string(), s.to_string()],
                            detail: format!("{y} reached with images {prev} and {fy}"),
                        });
                    }
                }
                Some(_) => {}
                None => {
                    image.insert(y.clone(), fy);
                    dist.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
    }

    let mut window: Vec<&GroupElement> = dist.iter().filter(|(_, d)| **d <= radius).map(|(g, _)| g).collect();
    window.sort();
    let mut checks = 0u64;
    for x in &window {
        for y in &window {
            checks += 1;
            let xy = g1.mul(x, y)?;
            let lhs = &image[&xy];
            let rhs = g2.mul(&image[*x], &image[*y])?;
            if *lhs != rhs && violations.len() < 32 {
                violations.push(IsoViolation {
                    kind: "product",
                    witness: vec![x.to_string(), y.to_string()],
                    detail: format!("phi(xy) = {lhs} but phi(x)phi(y) = {rhs}"),
                });
            }
        }
    }

    let mut seen: HashMap<&GroupElement, &GroupElement> = HashMap::new();
    let mut domain: Vec<&GroupElement> = image.keys().collect();
    domain.sort();
    for x in domain {
        if let Some(prev) = seen.insert(&image[x], x) {
            violations.push(IsoViolation {
                kind: "injectivity",
                witness: vec![prev.to_string(), x.to_string()],
                detail: format!("both map to {}", image[x]),
            });
            break;
        }
    }

    Ok(IsoReport { radius, domain_size: image.len(), window_size: window.len(), product_checks: checks, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::extension_family;
    use crate::groups::{heisenberg_central, heisenberg_semidirect};
    use crate::intmat::IntMatrix;

    fn el(s: &str) -> GroupElement {
        s.parse().unwrap()
    }

    fn h3_map() -> Vec<(GroupElement, GroupElement)> {
        vec![
            (el("([1,0];[0])"), el("([0];[1,0])")),
            (el("([0,0];[1])"), el("([0];[0,1])")),
            (el("([0,-1];[0])"), el("([1];[0,0])")),
        ]
    }

    #[test]
    fn identity_on_z2() {
        let z2 = Group::FreeAbelian(2);
        let m: Vec<_> = z2.generators().into_iter().map(|g| (g.clone(), g)).collect();
        assert!(grp_iso_check(&z2, &z2, &m, 3).unwrap().passed());
    }

    #[test]
    fn heisenberg_presets_are_isomorphic() {
        let r = grp_iso_check(&heisenberg_semidirect(), &heisenberg_central(), &h3_map(), 2).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.window_size > 20);
    }

    #[test]
    fn family_member_matches_heisenberg() {
        let a = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let g = extension_family(2, &a).unwrap();
        assert!(grp_iso_check(&heisenberg_semidirect(), &g, &h3_map(), 2).unwrap().passed());
    }

    #[test]
    fn wrong_map_fails() {
        let mut m = h3_map();
        m[0].1 = heisenberg_central().identity();
        let r = grp_iso_check(&heisenberg_semidirect(), &heisenberg_central(), &m, 2).unwrap();
        assert!(!r.passed());
        assert!(!r.violations[0].witness.is_empty());
    }
}
