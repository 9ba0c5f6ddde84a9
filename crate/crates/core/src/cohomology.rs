//! Bilinear 2-cocycles ℤᵐ × ℤᵐ → ℤ with trivial action: classification by
//! antisymmetrization, coboundary witnesses, and the resulting family of
//! central extensions of ℤᵐ by ℤ.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::factor_systems::{validate_factor_system, FactorSystem, FactorWindow};
use crate::groups::Group;
use crate::intmat::IntMatrix;

/// β(x, y) = xᵀ B y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearCocycle {
    matrix: IntMatrix,
}

impl BilinearCocycle {
    /// Accepts any square matrix; the trivial-action cocycle identity is
    /// re-checked on the unit ball.
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(AlgebraError::InvalidArgument(format!("cocycle matrix {matrix:?} is not square")));
        }
        let c = Self { matrix };
        let fs = c.factor_system()?;
        let w = FactorWindow::balls(fs.normal(), fs.quotient(), 1, 0)?;
        if !validate_factor_system(&fs, &w)?.passed() {
            return Err(AlgebraError::InvalidFactorSystem("bilinear cocycle failed validation".into()));
        }
        Ok(c)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let m = IntMatrix::from_rows(rows).ok_or_else(|| AlgebraError::InvalidArgument("ragged matrix".into()))?;
        Self::new(m)
    }

    pub fn zero(rank: usize) -> Self {
        Self { matrix: IntMatrix::zeros(rank, rank) }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn eval(&self, x: &[i64], y: &[i64]) -> i64 {
        self.matrix.bilinear(x, y)
    }

    /// Central extension of ℤᵐ by ℤ with ω = β.
    pub fn factor_system(&self) -> Result<FactorSystem> {
        FactorSystem::central_bilinear(self.rank(), vec![self.matrix.clone()])
    }
}

/// A = B − Bᵀ, which determines the cohomology class.
pub fn antisymmetrize(c: &BilinearCocycle) -> IntMatrix {
    c.matrix.sub(&c.matrix.transpose())
}

/// b(x) = −[Σᵢ Dᵢᵢ C(xᵢ, 2) + Σ_{i<j} Dᵢⱼ xᵢ xⱼ] for a symmetric D, so that
/// b(x) + b(y) − b(x + y) = xᵀ D y.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoboundaryWitness {
    #[serde(serialize_with = "crate::format::ser_matrix")]
    pub quadratic: IntMatrix,
    pub verified_radius: i64,
    pub verified_pairs: u64,
}

impl CoboundaryWitness {
    pub fn eval(&self, x: &[i64]) -> i64 {
        let d = &self.quadratic;
        let mut acc = 0;
        for i in 0..x.len() {
            acc += d.get(i, i) * (x[i] * (x[i] - 1) / 2);
            for j in i + 1..x.len() {
                acc += d.get(i, j) * x[i] * x[j];
            }
        }
        -acc
    }

    /// δb(x, y) = b(x) + b(y) − b(x + y).
    pub fn coboundary(&self, x: &[i64], y: &[i64]) -> i64 {
        let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.eval(x) + self.eval(y) - self.eval(&sum)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyVerdict {
    pub cohomologous: bool,
    #[serde(serialize_with = "crate::format::ser_matrix")]
    pub class_left: IntMatrix,
    #[serde(serialize_with = "crate::format::ser_matrix")]
    pub class_right: IntMatrix,
    pub witness: Option<CoboundaryWitness>,
}

/// Box radius on which coboundary witnesses are verified.
pub fn witness_radius(rank: usize) -> i64 {
    match rank {
        0..=2 => 5,
        3 => 2,
        _ => 1,
    }
}

fn box_points(rank: usize, radius: i64) -> Vec<Vec<i64>> {
    (0..rank).map(|_| -radius..=radius).multi_cartesian_product().collect()
}

/// Decides whether β₁ − β₂ is a coboundary. When it is, a witness b with
/// δb = β₁ − β₂ is built and checked on every pair in the box
/// [−r, r]ᵐ, r = [`witness_radius`].
pub fn is_cohomologous(c1: &BilinearCocycle, c2: &BilinearCocycle) -> Result<CohomologyVerdict> {
    if c1.rank() != c2.rank() {
        return Err(AlgebraError::RankMismatch(c1.rank(), c2.rank()));
    }
    let (a1, a2) = (antisymmetrize(c1), antisymmetrize(c2));
    let cohomologous = a1 == a2;
    let witness = if cohomologous {
        let d = c1.matrix.sub(&c2.matrix);
        let radius = witness_radius(c1.rank());
        let mut w = CoboundaryWitness { quadratic: d, verified_radius: radius, verified_pairs: 0 };
        let pts = if c1.rank() == 0 { vec![vec![]] } else { box_points(c1.rank(), radius) };
        for x in &pts {
            for y in &pts {
                if w.coboundary(x, y) != c1.eval(x, y) - c2.eval(x, y) {
                    return Err(AlgebraError::InvalidArgument(format!(
                        "coboundary witness failed at {x:?}, {y:?}"
                    )));
                }
                w.verified_pairs += 1;
            }
        }
        Some(w)
    } else {
        None
    };
    Ok(CohomologyVerdict { cohomologous, class_left: a1, class_right: a2, witness })
}

/// The central extension of ℤᵐ by ℤ in the class of the antisymmetric
/// `class_param`, using the strict upper triangle as representative.
pub fn extension_family(rank: usize, class_param: &IntMatrix) -> Result<Group> {
    if class_param.rows() != rank || class_param.cols() != rank {
        return Err(AlgebraError::RankMismatch(class_param.rows(), rank));
    }
    if !class_param.is_antisymmetric() {
        return Err(AlgebraError::NotAntisymmetric);
    }
    let mut b = IntMatrix::zeros(rank, rank);
    for i in 0..rank {
        for j in i + 1..rank {
            b.set(i, j, class_param.get(i, j));
        }
    }
    let fs = BilinearCocycle::new(b)?.factor_system()?;
    let w = FactorWindow::balls(fs.normal(), fs.quotient(), 2, 1)?;
    if !validate_factor_system(&fs, &w)?.passed() {
        return Err(AlgebraError::InvalidFactorSystem("family member failed validation".into()));
    }
    Ok(Group::Extension(fs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupElement;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn antisymmetrization_examples() {
        let h = BilinearCocycle::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(antisymmetrize(&h), m(&[vec![0, 1], vec![-1, 0]]));
        let sym = BilinearCocycle::from_rows(&[vec![2, 3], vec![3, -1]]).unwrap();
        assert!(antisymmetrize(&sym).is_zero());
        let t = BilinearCocycle::new(h.matrix().transpose()).unwrap();
        assert_eq!(antisymmetrize(&t), antisymmetrize(&h).neg());
    }

    #[test]
    fn self_is_cohomologous_with_zero_witness() {
        let c = BilinearCocycle::from_rows(&[vec![1, 4], vec![-2, 3]]).unwrap();
        let v = is_cohomologous(&c, &c).unwrap();
        assert!(v.cohomologous);
        let w = v.witness.unwrap();
        assert!(w.quadratic.is_zero());
        assert_eq!(w.eval(&[3, -7]), 0);
    }

    #[test]
    fn square_cocycle_is_coboundary() {
        let c = BilinearCocycle::from_rows(&[vec![1]]).unwrap();
        let v = is_cohomologous(&c, &BilinearCocycle::zero(1)).unwrap();
        let w = v.witness.unwrap();
        for x in -5..=5 {
            assert_eq!(w.eval(&[x]), -(x * (x - 1) / 2));
        }
        assert_eq!(w.verified_pairs, 121);
    }

    #[test]
    fn heisenberg_class_is_nontrivial() {
        let h = BilinearCocycle::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        let v = is_cohomologous(&h, &BilinearCocycle::zero(2)).unwrap();
        assert!(!v.cohomologous);
        assert!(v.witness.is_none());
        assert!(matches!(is_cohomologous(&h, &BilinearCocycle::zero(3)), Err(AlgebraError::RankMismatch(2, 3))));
    }

    #[test]
    fn family_members() {
        let g0 = extension_family(2, &IntMatrix::zeros(2, 2)).unwrap();
        let a = GroupElement::pair(GroupElement::vector([0]), GroupElement::vector([1, 0]));
        let b = GroupElement::pair(GroupElement::vector([0]), GroupElement::vector([0, 1]));
        assert_eq!(g0.commutator(&a, &b).unwrap(), g0.identity());
        let g2 = extension_family(2, &m(&[vec![0, 2], vec![-2, 0]])).unwrap();
        let c = g2.commutator(&a, &b).unwrap();
        let (z, h) = c.as_pair().unwrap();
        assert_eq!(*h, GroupElement::vector([0, 0]));
        assert_eq!(z.as_ints().unwrap()[0].abs(), 2);
        assert!(matches!(extension_family(2, &m(&[vec![0, 1], vec![0, 0]])), Err(AlgebraError::NotAntisymmetric)));
    }
}
