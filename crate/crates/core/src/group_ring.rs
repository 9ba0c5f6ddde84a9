//! The complex group ring ℂ[G] over an exact cyclotomic coefficient field.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{AlgebraError, Result};
use crate::groups::{Group, GroupElement};
use crate::scalars::{decimal_ceil, sqrt_bounds, CycScalar, Rational};

/// Digits used for the certified decimal bounds of irrational moduli.
const NORM_DIGITS: u32 = 30;

/// A finitely supported function G → ℚ(ζ_q). Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq)]
pub struct GroupRingElement {
    group: Group,
    order: u32,
    terms: HashMap<GroupElement, CycScalar>,
}

impl GroupRingElement {
    pub fn zero(group: &Group, order: u32) -> Self {
        Self { group: group.clone(), order, terms: HashMap::new() }
    }

    /// δ_e.
    pub fn one(group: &Group, order: u32) -> Self {
        Self::dirac(group, group.identity(), order).expect("identity belongs to the group")
    }

    pub fn dirac(group: &Group, g: GroupElement, order: u32) -> Result<Self> {
        Self::monomial(group, g, CycScalar::one(order))
    }

    /// c·δ_g.
    pub fn monomial(group: &Group, g: GroupElement, c: CycScalar) -> Result<Self> {
        group.check(&g)?;
        let mut out = Self::zero(group, c.order());
        if !c.is_zero() {
            out.terms.insert(g, c);
        }
        Ok(out)
    }

    /// Sums the given terms; repeated elements accumulate.
    pub fn from_terms(
        group: &Group,
        order: u32,
        terms: impl IntoIterator<Item = (GroupElement, CycScalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(group, order);
        for (g, c) in terms {
            group.check(&g)?;
            if c.order() != order {
                return Err(AlgebraError::OrderMismatch(order, c.order()));
            }
            out.accumulate(g, &c);
        }
        Ok(out)
    }

    pub(crate) fn accumulate(&mut self, g: GroupElement, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &GroupElement) -> CycScalar {
        self.terms.get(g).cloned().unwrap_or_else(|| CycScalar::zero(self.order))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &CycScalar)> {
        self.terms.iter()
    }

    /// Terms ordered by group element.
    pub fn sorted_terms(&self) -> Vec<(&GroupElement, &CycScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn support(&self) -> Vec<GroupElement> {
        let mut v: Vec<_> = self.terms.keys().cloned().collect();
        v.sort();
        v
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(AlgebraError::GroupMismatch(self.group.to_string(), other.group.to_string()));
        }
        if self.order != other.order {
            return Err(AlgebraError::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.accumulate(g.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &CycScalar) -> Result<Self> {
        if c.order() != self.order {
            return Err(AlgebraError::OrderMismatch(self.order, c.order()));
        }
        if c.is_zero() {
            return Ok(Self::zero(&self.group, self.order));
        }
        Ok(self.map_coeffs(|x| x * c))
    }

    fn map_coeffs(&self, f: impl Fn(&CycScalar) -> CycScalar) -> Self {
        Self {
            group: self.group.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(g, c)| (g.clone(), f(c))).collect(),
        }
    }

    /// Convolution (f ⋆ f')(x) = Σ_g f_g f'_{g⁻¹x}.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.group, self.order);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                let gh = self.group.mul_unchecked(g, h)?;
                out.accumulate(gh, &(a * b));
            }
        }
        Ok(out)
    }

    /// f* = Σ conj(f_g) δ_{g⁻¹}.
    pub fn involute(&self) -> Result<Self> {
        let mut terms = HashMap::with_capacity(self.terms.len());
        for (g, c) in &self.terms {
            terms.insert(self.group.inv(g)?, c.conj());
        }
        Ok(Self { group: self.group.clone(), order: self.order, terms })
    }

    /// Maps every group element through `f`, keeping coefficients. `f` must be
    /// injective on the support for the result to be meaningful as an image
    /// under a group homomorphism; collisions accumulate.
    pub fn map_support(
        &self,
        target: &Group,
        mut f: impl FnMut(&GroupElement) -> Result<GroupElement>,
    ) -> Result<Self> {
        let mut out = Self::zero(target, self.order);
        for (g, c) in &self.terms {
            let image = f(g)?;
            target.check(&image)?;
            out.accumulate(image, c);
        }
        Ok(out)
    }

    /// Re-expresses all coefficients in ℚ(ζ_target).
    pub fn embed_order(&self, target: u32) -> Result<Self> {
        let mut terms = HashMap::with_capacity(self.terms.len());
        for (g, c) in &self.terms {
            terms.insert(g.clone(), c.embed(target)?);
        }
        Ok(Self { group: self.group.clone(), order: target, terms })
    }

    /// (c, g) when the element is c·δ_g with c ≠ 0.
    pub fn as_trivial_unit(&self) -> Option<(CycScalar, GroupElement)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (g, c) = self.terms.iter().next()?;
        Some((c.clone(), g.clone()))
    }

    /// Inverse of a trivial unit: (c·δ_g)⁻¹ = c⁻¹·δ_{g⁻¹}. Other units are not
    /// certified.
    pub fn trivial_unit_inverse(&self) -> Result<Self> {
        let (c, g) = self.as_trivial_unit().ok_or_else(|| {
            AlgebraError::CannotCertify(format!("{self} is not a scalar multiple of a group element"))
        })?;
        Self::monomial(&self.group, self.group.inv(&g)?, c.inverse()?)
    }

    /// The 1-norm Σ|f_g| in exact form where possible, with certified bounds
    /// otherwise.
    pub fn one_norm(&self) -> OneNorm {
        let mut squared_moduli = Vec::with_capacity(self.terms.len());
        let mut lower = Rational::zero();
        let mut upper = Rational::zero();
        let mut all_exact = true;
        for (_, c) in self.sorted_terms() {
            let m2 = c.norm_squared();
            match m2.as_rational() {
                Some(r) => {
                    let (lo, hi, exact) = sqrt_bounds(r, NORM_DIGITS);
                    all_exact &= exact.is_some();
                    lower += lo;
                    upper += hi;
                }
                None => {
                    all_exact = false;
                    upper += c.triangle_bound();
                }
            }
            squared_moduli.push(m2);
        }
        OneNorm {
            term_count: self.terms.len(),
            exact: all_exact.then(|| upper.clone()),
            squared_moduli,
            lower,
            upper,
        }
    }
}

/// Exact data for ‖f‖₁: squared moduli per term (in element order), a rational
/// enclosure `lower ≤ ‖f‖₁ ≤ upper`, and the exact value when every modulus is
/// rational.
#[derive(Clone, Debug, PartialEq)]
pub struct OneNorm {
    pub term_count: usize,
    pub squared_moduli: Vec<CycScalar>,
    pub exact: Option<Rational>,
    pub lower: Rational,
    pub upper: Rational,
}

impl OneNorm {
    /// Upper bound rounded up to `digits` decimal places.
    pub fn decimal_upper(&self, digits: u32) -> String {
        decimal_ceil(&self.upper, digits)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "d{g}")?;
            } else {
                write!(f, "{c}*d{g}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in C[{}]", self.group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn z() -> Group {
        Group::FreeAbelian(1)
    }

    fn d(k: i64) -> GroupRingElement {
        GroupRingElement::dirac(&z(), GroupElement::vector([k]), 4).unwrap()
    }

    fn c(re: i64, im: i64) -> CycScalar {
        CycScalar::gaussian(rat(re, 1), rat(im, 1))
    }

    #[test]
    fn addition_prunes_zeros() {
        let two_d0 = d(0).scale(&c(2, 0)).unwrap();
        let f = two_d0.add(&d(1)).unwrap();
        assert_eq!(f.len(), 2);
        let g = f.add(&two_d0.neg()).unwrap();
        assert_eq!(g, d(1));
        assert!(f.add(&f.neg()).unwrap().is_zero());
        let ab = d(0).add(&d(3)).unwrap();
        assert_eq!(ab.len(), 2);
    }

    #[test]
    fn mismatches_are_rejected() {
        let other = GroupRingElement::one(&Group::FreeAbelian(2), 4);
        assert!(d(0).add(&other).is_err());
        let order3 = GroupRingElement::one(&z(), 3);
        assert_eq!(d(0).convolve(&order3), Err(AlgebraError::OrderMismatch(4, 3)));
    }

    #[test]
    fn convolution_examples() {
        let f = d(1).add(&d(0)).unwrap();
        let g = d(1).sub(&d(0)).unwrap();
        assert_eq!(f.convolve(&g).unwrap(), d(2).sub(&d(0)).unwrap());
        assert_eq!(d(0).convolve(&f).unwrap(), f);

        let z2 = Group::FiniteCyclic(2);
        let e0 = GroupRingElement::dirac(&z2, GroupElement::cyclic(0, 2), 4).unwrap();
        let e1 = GroupRingElement::dirac(&z2, GroupElement::cyclic(1, 2), 4).unwrap();
        let p = e0.add(&e1).unwrap();
        let m = e0.sub(&e1).unwrap();
        assert!(p.convolve(&m).unwrap().is_zero());
    }

    #[test]
    fn involution() {
        let f = d(1).scale(&CycScalar::i()).unwrap();
        assert_eq!(f.involute().unwrap(), d(-1).scale(&(-&CycScalar::i())).unwrap());
    }

    #[test]
    fn one_norm_values() {
        assert_eq!(d(5).one_norm().exact, Some(rat(1, 1)));
        assert_eq!(GroupRingElement::zero(&z(), 4).one_norm().exact, Some(rat(0, 1)));
        let f = d(0).scale(&c(3, 0)).unwrap().add(&d(1).scale(&c(0, -4)).unwrap()).unwrap();
        let n = f.one_norm();
        assert_eq!(n.exact, Some(rat(7, 1)));
        assert_eq!(n.squared_moduli, vec![c(9, 0), c(16, 0)]);
        assert_eq!(n.decimal_upper(2), "7.00");

        let g = d(0).scale(&c(1, 1)).unwrap();
        let n = g.one_norm();
        assert!(n.exact.is_none());
        assert!(n.lower < n.upper);
        assert!(&n.lower * &n.lower < rat(2, 1) && &n.upper * &n.upper > rat(2, 1));
        assert!(n.decimal_upper(5).starts_with("1.4142"));
    }

    #[test]
    fn trivial_units() {
        let f = d(3).scale(&c(5, 0)).unwrap();
        assert_eq!(f.as_trivial_unit(), Some((c(5, 0), GroupElement::vector([3]))));
        assert_eq!(d(0).add(&d(1)).unwrap().as_trivial_unit(), None);
        assert_eq!(GroupRingElement::zero(&z(), 4).as_trivial_unit(), None);
        let inv = f.trivial_unit_inverse().unwrap();
        assert_eq!(f.convolve(&inv).unwrap(), d(0));
    }
}
