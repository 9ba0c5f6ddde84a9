//! The 3×3 upper unitriangular integer model of the Heisenberg group,
//! [[1,a,c],[0,1,b],[0,0,1]] ↔ (a, b, c), used to cross-check both presets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::groups::{heisenberg_central, heisenberg_semidirect, Group, GroupElement};

pub type Unitriangular = [i64; 3];

pub const MATRIX_IDENTITY: Unitriangular = [0, 0, 0];

pub fn unitriangular_mul(x: &Unitriangular, y: &Unitriangular) -> Unitriangular {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]]
}

pub fn unitriangular_inv(x: &Unitriangular) -> Unitriangular {
    [-x[0], -x[1], x[0] * x[1] - x[2]]
}

fn coords(g: &GroupElement) -> (Vec<i64>, Vec<i64>) {
    let (n, h) = g.as_pair().expect("extension element");
    (n.as_ints().expect("vector"), h.as_ints().expect("vector"))
}

/// ((m, n); k) ↦ (a = m, b = k, c = mk − n).
pub fn semidirect_to_matrix(g: &GroupElement) -> Unitriangular {
    let (n, h) = coords(g);
    [n[0], h[0], n[0] * h[0] - n[1]]
}

/// (z; (k, k')) ↦ (a = k, b = k', c = z).
pub fn central_to_matrix(g: &GroupElement) -> Unitriangular {
    let (z, h) = coords(g);
    [h[0], h[1], z[0]]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixReport {
    pub seed: u64,
    pub words_per_preset: usize,
    pub checks: u64,
    pub mismatches: Vec<String>,
}

impl MatrixReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Multiplies `count` random words (length 1 to 16 in the generators and
/// their inverses) in each preset both abstractly and in the matrix model.
pub fn matrix_oracle_check(count: usize, seed: u64) -> Result<MatrixReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MatrixReport { seed, words_per_preset: count, checks: 0, mismatches: Vec::new() };
    let presets: [(Group, fn(&GroupElement) -> Unitriangular, &str); 2] = [
        (heisenberg_semidirect(), semidirect_to_matrix, "semidirect"),
        (heisenberg_central(), central_to_matrix, "central"),
    ];
    for (g, to_matrix, name) in &presets {
        let mut letters = Vec::new();
        for s in g.generators() {
            letters.push(g.inv(&s)?);
            letters.push(s);
        }
        for w in 0..count {
            let len = rng.gen_range(1..=16);
            let mut abstract_prod = g.identity();
            let mut matrix_prod = MATRIX_IDENTITY;
            let mut word = Vec::with_capacity(len);
            for _ in 0..len {
                let letter = &letters[rng.gen_range(0..letters.len())];
                abstract_prod = g.mul(&abstract_prod, letter)?;
                matrix_prod = unitriangular_mul(&matrix_prod, &to_matrix(letter));
                word.push(letter.to_string());
            }
            report.checks += 2;
            if to_matrix(&abstract_prod) != matrix_prod {
                report.mismatches.push(format!("{name} word {w} [{}]: {abstract_prod} vs {matrix_prod:?}", word.join(" ")));
            }
            if to_matrix(&g.inv(&abstract_prod)?) != unitriangular_inv(&matrix_prod) {
                report.mismatches.push(format!("{name} word {w}: inverse of {abstract_prod}"));
            }
        }
    }
    Ok(report)
}
