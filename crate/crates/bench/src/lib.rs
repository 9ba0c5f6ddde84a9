//! Deterministic fixtures shared by the benchmarks.

use grext::crossed_product::{phi, CrossedProductElement};
use grext::groups::{heisenberg_central, heisenberg_semidirect};
use grext::oracles::search::preset_grid;
use grext::oracles::{SearchAlgebra, SearchSpace};
use grext::selftest::{extension_system, random_element};
use grext::{CrossedSystem, Group, GroupRingElement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 7;

pub fn presets() -> Vec<(&'static str, Group)> {
    vec![("semidirect", heisenberg_semidirect()), ("central", heisenberg_central())]
}

/// `count` random elements of the group ring with at most `support` terms on
/// the radius-3 ball.
pub fn elements(group: &Group, count: usize, support: usize) -> Vec<GroupRingElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let ball = group.ball(3).expect("ball");
    (0..count).map(|_| random_element(&mut rng, group, &ball, support).expect("element")).collect()
}

pub fn lifted(group: &Group) -> CrossedSystem {
    extension_system(group).lift()
}

pub fn crossed_elements(group: &Group, count: usize, support: usize) -> Vec<CrossedProductElement> {
    let cs = lifted(group);
    elements(group, count, support).iter().map(|x| phi(&cs, x).expect("phi")).collect()
}

/// The crossed-product search space with N-radius 1, H-radius 1 and the
/// given grid and support bound.
pub fn crossed_space(grid: &str, max_support: usize) -> SearchSpace {
    let cs = lifted(&heisenberg_semidirect());
    let window = SearchSpace::crossed_window(&cs, 1, 1).expect("window");
    SearchSpace::new(SearchAlgebra::CrossedProduct(cs), window, preset_grid(grid).expect("grid"), max_support)
        .expect("space")
}

pub fn laurent_space(radius: i64, grid: &str, max_support: usize) -> SearchSpace {
    let z = Group::FreeAbelian(1);
    let window = (-radius..=radius).map(|k| grext::GroupElement::vector(vec![k])).collect();
    SearchSpace::new(SearchAlgebra::GroupRing(z), window, preset_grid(grid).expect("grid"), max_support).expect("space")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        let g = heisenberg_semidirect();
        assert_eq!(elements(&g, 5, 6), elements(&g, 5, 6));
        assert_eq!(crossed_space("gaussian_half", 2).candidate_count(), 3871);
        assert_eq!(laurent_space(2, "signs", 3).candidate_count(), 131);
    }
}
