//! Finite-order characters of the center ℤᵏ of a central extension and the
//! evaluation of ℂ[G] onto the twisted group algebras ℂ[H, χ∘ω].

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::factor_systems::FactorSystem;
use crate::group_ring::GroupRingElement;
use crate::groups::{Group, GroupElement};
use crate::scalars::CycScalar;

/// χ(z) = ζ_q^{Σ aᵢ zᵢ}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub order: u32,
    pub exponents: Vec<i64>,
}

impl Character {
    pub fn new(order: u32, exponents: Vec<i64>) -> Result<Self> {
        if order == 0 {
            return Err(AlgebraError::InvalidArgument("character order must be positive".into()));
        }
        let q = i64::from(order);
        Ok(Self { order, exponents: exponents.into_iter().map(|a| a.rem_euclid(q)).collect() })
    }

    /// ε on ℤᵏ.
    pub fn trivial(rank: usize) -> Self {
        Self { order: 1, exponents: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    pub fn value(&self, z: &[i64]) -> CycScalar {
        let q = i64::from(self.order);
        let k = self.exponents.iter().zip(z).fold(0i64, |acc, (a, x)| (acc + a * x.rem_euclid(q)).rem_euclid(q));
        CycScalar::zeta_pow(self.order, k)
    }

    /// All qᵏ characters whose values are q-th roots of unity, in
    /// lexicographic exponent order.
    pub fn all_of_order(rank: usize, order: u32) -> Vec<Self> {
        if rank == 0 {
            return vec![Self { order, exponents: Vec::new() }];
        }
        (0..rank)
            .map(|_| 0..i64::from(order))
            .multi_cartesian_product()
            .map(|exponents| Self { order, exponents })
            .collect()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[q={}; {:?}]", self.order, self.exponents)
    }
}

/// An element Σ c_h u_h of ℂ[H, χ∘ω] with u_h u_h' = χ(ω(h, h')) u_{hh'}.
#[derive(Clone, PartialEq)]
pub struct TwistedAlgebraElement {
    fs: FactorSystem,
    chi: Character,
    order: u32,
    terms: HashMap<GroupElement, CycScalar>,
}

fn central_rank(fs: &FactorSystem) -> Result<usize> {
    match fs.normal() {
        Group::FreeAbelian(k) if fs.is_central() => Ok(*k),
        _ => Err(AlgebraError::NotCentral(format!("{} by {}", fs.normal(), fs.quotient()))),
    }
}

fn central_system(g: &Group) -> Result<&FactorSystem> {
    match g {
        Group::Extension(fs) => {
            central_rank(fs)?;
            Ok(fs)
        }
        other => Err(AlgebraError::NotCentral(other.to_string())),
    }
}

impl TwistedAlgebraElement {
    pub fn zero(fs: &FactorSystem, chi: &Character, order: u32) -> Result<Self> {
        let k = central_rank(fs)?;
        if chi.rank() != k {
            return Err(AlgebraError::RankMismatch(chi.rank(), k));
        }
        if order % chi.order != 0 {
            return Err(AlgebraError::NotEmbeddable { from: chi.order, to: order });
        }
        Ok(Self { fs: fs.clone(), chi: chi.clone(), order, terms: HashMap::new() })
    }

    /// c·u_h.
    pub fn monomial(fs: &FactorSystem, chi: &Character, h: GroupElement, c: CycScalar) -> Result<Self> {
        let mut out = Self::zero(fs, chi, c.order())?;
        fs.quotient().check(&h)?;
        out.accumulate(h, &c);
        Ok(out)
    }

    /// u_e.
    pub fn one(fs: &FactorSystem, chi: &Character, order: u32) -> Result<Self> {
        Self::monomial(fs, chi, fs.quotient().identity(), CycScalar::one(order))
    }

    fn accumulate(&mut self, h: GroupElement, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&h) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&h);
        } else {
            self.terms.insert(h, sum);
        }
    }

    pub fn character(&self) -> &Character {
        &self.chi
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, h: &GroupElement) -> CycScalar {
        self.terms.get(h).cloned().unwrap_or_else(|| CycScalar::zero(self.order))
    }

    pub fn sorted_terms(&self) -> Vec<(&GroupElement, &CycScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    fn twist(&self, h: &GroupElement, h2: &GroupElement) -> Result<CycScalar> {
        let w = self.fs.omega(h, h2)?;
        self.chi.value(&w.as_ints().expect("central part is a vector")).embed(self.order)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.fs != other.fs || self.chi != other.chi {
            return Err(AlgebraError::InvalidArgument("twisted algebras differ".into()));
        }
        if self.order != other.order {
            return Err(AlgebraError::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.accumulate(h.clone(), c);
        }
        Ok(out)
    }

    /// Bilinear extension of u_h u_h' = χ(ω(h, h')) u_{hh'}.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let q = self.fs.quotient();
        let mut out = Self { terms: HashMap::new(), ..self.clone() };
        for (h, a) in &self.terms {
            for (h2, b) in &other.terms {
                let c = &(a * b) * &self.twist(h, h2)?;
                out.accumulate(q.mul(h, h2)?, &c);
            }
        }
        Ok(out)
    }

    /// (c u_h)* = conj(c)·conj(χ(ω(h⁻¹, h))) u_{h⁻¹}.
    pub fn involute(&self) -> Result<Self> {
        let q = self.fs.quotient();
        let mut out = Self { terms: HashMap::new(), ..self.clone() };
        for (h, c) in &self.terms {
            let h_inv = q.inv(h)?;
            let t = self.twist(&h_inv, h)?.conj();
            out.accumulate(h_inv, &(&c.conj() * &t));
        }
        Ok(out)
    }

    /// The same coefficients viewed in the untwisted ℂ[H].
    pub fn to_group_ring(&self) -> Result<GroupRingElement> {
        GroupRingElement::from_terms(self.fs.quotient(), self.order, self.terms.iter().map(|(h, c)| (h.clone(), c.clone())))
    }
}

impl fmt::Display for TwistedAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (h, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*u{h}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TwistedAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} at {}", self.chi)
    }
}

/// Σ f_(z,h) δ_(z,h) ↦ Σ χ(z) f_(z,h) u_h, with coefficients in
/// ℚ(ζ_L), L = lcm(order of x, order of χ).
pub fn evaluate_fiber(x: &GroupRingElement, chi: &Character) -> Result<TwistedAlgebraElement> {
    let fs = central_system(x.group())?;
    let order = x.order().lcm(&chi.order);
    let mut out = TwistedAlgebraElement::zero(fs, chi, order)?;
    for (g, c) in x.terms() {
        let (z, h) = g.as_pair().expect("extension elements are pairs");
        let value = chi.value(&z.as_ints().expect("central part is a vector")).embed(order)?;
        out.accumulate(h.clone(), &(&value * &c.embed(order)?));
    }
    Ok(out)
}

/// Pushforward along q: G → H, Σ f_(z,h) δ_h.
pub fn pushforward(x: &GroupRingElement) -> Result<GroupRingElement> {
    let fs = central_system(x.group())?;
    x.map_support(fs.quotient(), |g| Ok(g.as_pair().expect("pair").1.clone()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberVerdict {
    pub character: Character,
    pub idempotent: bool,
    pub nontrivial: bool,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub fibers: Vec<FiberVerdict>,
    /// Index into `fibers` of the first image that is not idempotent.
    pub first_failure: Option<usize>,
    pub nontrivial_idempotents: usize,
}

impl ScanReport {
    pub fn all_idempotent(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks, for every character of each listed order, whether the fiber image
/// of x is idempotent and whether it is a non-trivial idempotent.
pub fn fiber_idempotent_scan(x: &GroupRingElement, orders: &[u32]) -> Result<ScanReport> {
    let fs = central_system(x.group())?;
    let k = central_rank(fs)?;
    let chars: Vec<Character> = orders.iter().flat_map(|&q| Character::all_of_order(k, q)).collect();
    let fibers = chars
        .into_par_iter()
        .map(|chi| -> Result<FiberVerdict> {
            let img = evaluate_fiber(x, &chi)?;
            let idempotent = img.mul(&img)? == img;
            let trivial = img.is_zero() || img == TwistedAlgebraElement::one(fs, &chi, img.order())?;
            Ok(FiberVerdict { image: img.to_string(), character: chi, idempotent, nontrivial: idempotent && !trivial })
        })
        .collect::<Result<Vec<_>>>()?;
    let first_failure = fibers.iter().position(|f| !f.idempotent);
    let nontrivial_idempotents = fibers.iter().filter(|f| f.nontrivial).count();
    Ok(ScanReport { fibers, first_failure, nontrivial_idempotents })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::heisenberg_central;

    fn el(s: &str) -> GroupElement {
        s.parse().unwrap()
    }

    fn fs() -> FactorSystem {
        match heisenberg_central() {
            Group::Extension(fs) => fs,
            _ => unreachable!(),
        }
    }

    #[test]
    fn character_values() {
        let chi = Character::new(4, vec![1]).unwrap();
        assert_eq!(chi.value(&[1]), CycScalar::i());
        assert_eq!(chi.value(&[-1]), -&CycScalar::i());
        assert!(Character::trivial(1).value(&[7]).is_one());
        assert_eq!(Character::all_of_order(2, 3).len(), 9);
        assert_eq!(Character::new(4, vec![-1]).unwrap().exponents, vec![3]);
    }

    #[test]
    fn rational_torus_relation() {
        let fs = fs();
        let chi = Character::new(4, vec![1]).unwrap();
        let one = CycScalar::one(4);
        let a = TwistedAlgebraElement::monomial(&fs, &chi, el("[1,0]"), one.clone()).unwrap();
        let b = TwistedAlgebraElement::monomial(&fs, &chi, el("[0,1]"), one.clone()).unwrap();
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        assert_eq!(ab, TwistedAlgebraElement::monomial(&fs, &chi, el("[1,1]"), CycScalar::i()).unwrap());
        assert_eq!(ba, TwistedAlgebraElement::monomial(&fs, &chi, el("[1,1]"), one).unwrap());
    }

    #[test]
    fn central_dirac_evaluates_to_scalar() {
        let g = heisenberg_central();
        let chi = Character::new(3, vec![2]).unwrap();
        let x = GroupRingElement::dirac(&g, el("([1];[0,0])"), 4).unwrap();
        let img = evaluate_fiber(&x, &chi).unwrap();
        assert_eq!(img.order(), 12);
        assert_eq!(img.coeff(&el("[0,0]")), CycScalar::zeta_pow(3, 2).embed(12).unwrap());
    }

    #[test]
    fn trivial_fiber_is_pushforward() {
        let g = heisenberg_central();
        let x = GroupRingElement::from_terms(
            &g,
            4,
            [(el("([1];[1,0])"), CycScalar::one(4)), (el("([-3];[1,0])"), CycScalar::i())],
        )
        .unwrap();
        let img = evaluate_fiber(&x, &Character::trivial(1)).unwrap();
        assert_eq!(img.to_group_ring().unwrap(), pushforward(&x).unwrap());
    }

    #[test]
    fn scans() {
        let g = heisenberg_central();
        let one = GroupRingElement::one(&g, 4);
        let r = fiber_idempotent_scan(&one, &[1, 2, 4]).unwrap();
        assert_eq!(r.fibers.len(), 7);
        assert!(r.all_idempotent());
        assert_eq!(r.nontrivial_idempotents, 0);
        let zero = GroupRingElement::zero(&g, 4);
        assert!(fiber_idempotent_scan(&zero, &[3]).unwrap().all_idempotent());
        let x = GroupRingElement::dirac(&g, el("([0];[1,0])"), 4).unwrap();
        let r = fiber_idempotent_scan(&x, &[1, 2]).unwrap();
        assert_eq!(r.first_failure, Some(0));
    }

    #[test]
    fn non_central_rejected() {
        let g = crate::groups::heisenberg_semidirect();
        let x = GroupRingElement::one(&g, 4);
        assert!(matches!(evaluate_fiber(&x, &Character::trivial(2)), Err(AlgebraError::NotCentral(_))));
        let c = GroupRingElement::one(&heisenberg_central(), 4);
        assert!(matches!(evaluate_fiber(&c, &Character::trivial(2)), Err(AlgebraError::RankMismatch(2, 1))));
    }
}
