//! The crossed product ℂ[N] ×_(S̄,ω̄) H: elements Σ f_h d_h with f_h ∈ ℂ[N].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::factor_systems::CrossedSystem;
use crate::group_ring::GroupRingElement;
use crate::groups::{Group, GroupElement};
use crate::scalars::CycScalar;

#[derive(Clone, PartialEq)]
pub struct CrossedProductElement {
    system: CrossedSystem,
    order: u32,
    terms: HashMap<GroupElement, GroupRingElement>,
}

impl CrossedProductElement {
    pub fn zero(system: &CrossedSystem, order: u32) -> Self {
        Self { system: system.clone(), order, terms: HashMap::new() }
    }

    /// d_e = δ_e d_e.
    pub fn one(system: &CrossedSystem, order: u32) -> Self {
        let f = GroupRingElement::one(system.normal(), order);
        Self::homogeneous(system, f, system.quotient().identity()).expect("identity degree")
    }

    /// f d_h.
    pub fn homogeneous(system: &CrossedSystem, f: GroupRingElement, h: GroupElement) -> Result<Self> {
        let mut out = Self::zero(system, f.order());
        out.check_coeff(&f)?;
        system.quotient().check(&h)?;
        if !f.is_zero() {
            out.terms.insert(h, f);
        }
        Ok(out)
    }

    /// c δ_n d_h.
    pub fn monomial(system: &CrossedSystem, n: GroupElement, h: GroupElement, c: CycScalar) -> Result<Self> {
        Self::homogeneous(system, GroupRingElement::monomial(system.normal(), n, c)?, h)
    }

    pub fn from_terms(
        system: &CrossedSystem,
        order: u32,
        terms: impl IntoIterator<Item = (GroupElement, GroupRingElement)>,
    ) -> Result<Self> {
        let mut out = Self::zero(system, order);
        for (h, f) in terms {
            system.quotient().check(&h)?;
            out.check_coeff(&f)?;
            out.accumulate(h, &f)?;
        }
        Ok(out)
    }

    fn check_coeff(&self, f: &GroupRingElement) -> Result<()> {
        if f.group() != self.system.normal() {
            return Err(AlgebraError::GroupMismatch(f.group().to_string(), self.system.normal().to_string()));
        }
        if f.order() != self.order {
            return Err(AlgebraError::OrderMismatch(self.order, f.order()));
        }
        Ok(())
    }

    fn accumulate(&mut self, h: GroupElement, f: &GroupRingElement) -> Result<()> {
        if f.is_zero() {
            return Ok(());
        }
        let sum = match self.terms.get(&h) {
            Some(g) => g.add(f)?,
            None => f.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&h);
        } else {
            self.terms.insert(h, sum);
        }
        Ok(())
    }

    pub fn system(&self) -> &CrossedSystem {
        &self.system
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// f_h, the component of degree h.
    pub fn component(&self, h: &GroupElement) -> GroupRingElement {
        self.terms
            .get(h)
            .cloned()
            .unwrap_or_else(|| GroupRingElement::zero(self.system.normal(), self.order))
    }

    /// Degrees with nonzero component, sorted.
    pub fn support(&self) -> Vec<GroupElement> {
        let mut v: Vec<_> = self.terms.keys().cloned().collect();
        v.sort();
        v
    }

    pub fn sorted_terms(&self) -> Vec<(&GroupElement, &GroupRingElement)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.system != other.system {
            return Err(AlgebraError::CrossedSystemMismatch);
        }
        if self.order != other.order {
            return Err(AlgebraError::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (h, f) in &other.terms {
            out.accumulate(h.clone(), f)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            system: self.system.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(h, f)| (h.clone(), f.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycScalar) -> Result<Self> {
        let mut out = Self::zero(&self.system, self.order);
        for (h, f) in &self.terms {
            out.accumulate(h.clone(), &f.scale(c)?)?;
        }
        Ok(out)
    }

    /// f d_h • f' d_h' = f ⋆ S̄(h)(f') ⋆ ω̄(h, h') d_{hh'}, extended bilinearly.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let cs = &self.system;
        let mut out = Self::zero(cs, self.order);
        for (h, f) in &self.terms {
            for (h2, f2) in &other.terms {
                let w = cs.omega(h, h2, self.order)?;
                let prod = f.convolve(&cs.apply(h, f2)?)?.convolve(&w)?;
                out.accumulate(cs.quotient().mul(h, h2)?, &prod)?;
            }
        }
        Ok(out)
    }

    /// (f d_h)* = ω̄(h⁻¹, h)⁻¹ ⋆ S̄(h⁻¹)(f*) d_{h⁻¹}.
    pub fn involute(&self) -> Result<Self> {
        let cs = &self.system;
        let mut out = Self::zero(cs, self.order);
        for (h, f) in &self.terms {
            let h_inv = cs.quotient().inv(h)?;
            let w_inv = cs.omega_inverse(&h_inv, h, self.order)?;
            out.accumulate(h_inv.clone(), &w_inv.convolve(&cs.apply(&h_inv, &f.involute()?)?)?)?;
        }
        Ok(out)
    }

    /// (h, f_h) when exactly one component is nonzero.
    pub fn as_homogeneous(&self) -> Option<(GroupElement, GroupRingElement)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(h, f)| (h.clone(), f.clone()))
    }

    pub fn embed_order(&self, target: u32) -> Result<Self> {
        let mut terms = HashMap::with_capacity(self.terms.len());
        for (h, f) in &self.terms {
            terms.insert(h.clone(), f.embed_order(target)?);
        }
        Ok(Self { system: self.system.clone(), order: target, terms })
    }

    /// Lowest and highest degree when H = ℤ.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        if *self.system.quotient() != Group::FreeAbelian(1) {
            return None;
        }
        let degs = self.terms.keys().filter_map(|h| h.as_ints().map(|v| v[0]));
        degs.fold(None, |acc, d| match acc {
            None => Some((d, d)),
            Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
        })
    }
}

impl fmt::Display for CrossedProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (h, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) D{h}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CrossedProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn lifted_group(cs: &CrossedSystem) -> Result<Group> {
    cs.factor_system()
        .map(|fs| Group::Extension(fs.clone()))
        .ok_or_else(|| AlgebraError::InvalidArgument("crossed system is not lifted from a factor system".into()))
}

/// Φ: ℂ[G] → ℂ[N] ×_(S̄,ω̄) H, δ_(n,h) = δ_n ⋆ δ_σ(h) ↦ δ_n d_h, where G is the
/// extension group of the factor system `cs` was lifted from.
pub fn phi(cs: &CrossedSystem, x: &GroupRingElement) -> Result<CrossedProductElement> {
    let g = lifted_group(cs)?;
    if *x.group() != g {
        return Err(AlgebraError::GroupMismatch(x.group().to_string(), g.to_string()));
    }
    let mut parts: HashMap<GroupElement, Vec<(GroupElement, CycScalar)>> = HashMap::new();
    for (nh, c) in x.terms() {
        let (n, h) = nh.as_pair().expect("extension elements are pairs");
        parts.entry(h.clone()).or_default().push((n.clone(), c.clone()));
    }
    let mut out = CrossedProductElement::zero(cs, x.order());
    for (h, ts) in parts {
        out.accumulate(h, &GroupRingElement::from_terms(cs.normal(), x.order(), ts)?)?;
    }
    Ok(out)
}

/// Φ⁻¹: δ_n d_h ↦ δ_(n,h).
pub fn phi_inverse(x: &CrossedProductElement) -> Result<GroupRingElement> {
    let g = lifted_group(&x.system)?;
    let mut terms = Vec::new();
    for (h, f) in &x.terms {
        for (n, c) in f.terms() {
            terms.push((GroupElement::pair(n.clone(), h.clone()), c.clone()));
        }
    }
    GroupRingElement::from_terms(&g, x.order, terms)
}

/// (f d_h)⁻¹ = ω̄(h⁻¹, h)⁻¹ ⋆ S̄(h⁻¹)(f⁻¹) d_{h⁻¹}, for f a trivial unit of
/// ℂ[N]. Both one-sided products are verified to equal d_e.
pub fn invert_homogeneous(cs: &CrossedSystem, f: &GroupRingElement, h: &GroupElement) -> Result<CrossedProductElement> {
    let f_inv = f.trivial_unit_inverse()?;
    let order = f.order();
    let h_inv = cs.quotient().inv(h)?;
    let w_inv = cs.omega_inverse(&h_inv, h, order)?;
    let g = CrossedProductElement::homogeneous(cs, w_inv.convolve(&cs.apply(&h_inv, &f_inv)?)?, h_inv)?;
    let x = CrossedProductElement::homogeneous(cs, f.clone(), h.clone())?;
    let one = CrossedProductElement::one(cs, order);
    if g.mul(&x)? != one || x.mul(&g)? != one {
        return Err(AlgebraError::CannotCertify(format!("inverse formula does not verify for ({f}) D{h}")));
    }
    Ok(g)
}

/// (f d_h) • x • (f d_h)⁻¹.
pub fn conjugate(x: &CrossedProductElement, f: &GroupRingElement, h: &GroupElement) -> Result<CrossedProductElement> {
    let u = CrossedProductElement::homogeneous(&x.system, f.clone(), h.clone())?;
    let u_inv = invert_homogeneous(&x.system, f, h)?;
    u.mul(x)?.mul(&u_inv)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdempotentRelation {
    /// f_h = Σ_k f_k ⋆ S̄(k)(f_{k⁻¹h}) ⋆ ω̄(k, k⁻¹h).
    Square,
    /// f_{h⁻¹} = ω̄(h⁻¹, h)⁻¹ ⋆ S̄(h⁻¹)(f_h*).
    Adjoint,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationViolation {
    pub relation: IdempotentRelation,
    pub degree: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RelationReport {
    pub checks: u64,
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the component relations characterizing x = x* = x • x on every
/// degree where either side can be nonzero.
pub fn idempotent_relations(x: &CrossedProductElement) -> Result<RelationReport> {
    let cs = &x.system;
    let q = cs.quotient();
    let order = x.order;
    let supp = x.support();
    let mut report = RelationReport::default();

    let mut degrees: BTreeSet<GroupElement> = supp.iter().cloned().collect();
    for a in &supp {
        for b in &supp {
            degrees.insert(q.mul(a, b)?);
        }
    }
    for h in &degrees {
        let mut rhs = GroupRingElement::zero(cs.normal(), order);
        for k in &supp {
            let rest = q.mul(&q.inv(k)?, h)?;
            let Some(f_rest) = x.terms.get(&rest) else { continue };
            let term = x.terms[k].convolve(&cs.apply(k, f_rest)?)?.convolve(&cs.omega(k, &rest, order)?)?;
            rhs = rhs.add(&term)?;
        }
        let lhs = x.component(h);
        report.checks += 1;
        if lhs != rhs {
            report.violations.push(RelationViolation {
                relation: IdempotentRelation::Square,
                degree: h.to_string(),
                expected: lhs.to_string(),
                actual: rhs.to_string(),
            });
        }
    }

    let mut adjoint_degrees: BTreeSet<GroupElement> = supp.iter().cloned().collect();
    for h in &supp {
        adjoint_degrees.insert(q.inv(h)?);
    }
    for h in &adjoint_degrees {
        let h_inv = q.inv(h)?;
        let rhs = cs
            .omega_inverse(&h_inv, h, order)?
            .convolve(&cs.apply(&h_inv, &x.component(h).involute()?)?)?;
        let lhs = x.component(&h_inv);
        report.checks += 1;
        if lhs != rhs {
            report.violations.push(RelationViolation {
                relation: IdempotentRelation::Adjoint,
                degree: h.to_string(),
                expected: lhs.to_string(),
                actual: rhs.to_string(),
            });
        }
    }
    Ok(report)
}
