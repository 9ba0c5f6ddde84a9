//! Factor systems (S, ω) of group extensions, their validation on finite
//! windows, derivation from a section of a concrete extension, and the lift to
//! ring-level crossed systems (S̄, ω̄) over ℂ[N].

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::group_ring::GroupRingElement;
use crate::groups::{Group, GroupElement};
use crate::intmat::IntMatrix;

/// Number of violations kept verbatim in a report; the total is always counted.
pub const MAX_RECORDED_VIOLATIONS: usize = 32;

/// The action h ↦ S(h) ∈ Aut(N).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Action {
    Trivial,
    /// N = ℤⁿ, H = ℤʳ, S(h) = A₁^{h₁}⋯A_r^{h_r} for commuting unimodular Aᵢ.
    Linear(LinearAction),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearAction {
    generators: Vec<IntMatrix>,
    inverses: Vec<IntMatrix>,
}

impl LinearAction {
    pub fn new(generators: Vec<IntMatrix>) -> Result<Self> {
        let mut inverses = Vec::with_capacity(generators.len());
        for (i, a) in generators.iter().enumerate() {
            let inv = a.unimodular_inverse().ok_or_else(|| {
                AlgebraError::InvalidFactorSystem(format!("action matrix {i} is not unimodular"))
            })?;
            inverses.push(inv);
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if a.mul(b) != b.mul(a) {
                    return Err(AlgebraError::InvalidFactorSystem(
                        "action matrices must commute".into(),
                    ));
                }
            }
        }
        Ok(Self { generators, inverses })
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    /// The matrix of S(h).
    pub fn matrix(&self, h: &[i64]) -> IntMatrix {
        let n = self.generators.first().map_or(0, IntMatrix::rows);
        let mut acc = IntMatrix::identity(n);
        for (i, &k) in h.iter().enumerate() {
            let base = if k < 0 { &self.inverses[i] } else { &self.generators[i] };
            acc = acc.mul(&base.pow(k.unsigned_abs()));
        }
        acc
    }
}

/// The cocycle ω: H × H → N.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Cocycle {
    Trivial,
    /// N = ℤⁿ, H = ℤʳ, ω(h, h')ⱼ = hᵀ Bⱼ h'.
    Bilinear(Vec<IntMatrix>),
    /// N = ℤⁿ, H = ℤʳ, ω(h, h')ⱼ = ⟨leftⱼ, h⟩ + ⟨rightⱼ, h'⟩.
    LinearForms { left: Vec<Vec<i64>>, right: Vec<Vec<i64>> },
}

/// Evaluation maps of a factor system not described by one of the closed forms.
pub trait CustomFactorMaps: Send + Sync {
    fn act(&self, h: &GroupElement, n: &GroupElement) -> Result<GroupElement>;
    fn act_inverse(&self, h: &GroupElement, n: &GroupElement) -> Result<GroupElement>;
    fn omega(&self, h: &GroupElement, h2: &GroupElement) -> Result<GroupElement>;
    fn describe(&self) -> String;
}

#[derive(Clone)]
enum Maps {
    Standard { action: Action, cocycle: Cocycle },
    Custom(Arc<dyn CustomFactorMaps>),
}

struct Inner {
    normal: Group,
    quotient: Group,
    maps: Maps,
}

/// A factor system (S, ω) for an extension of H by N.
#[derive(Clone)]
pub struct FactorSystem(Arc<Inner>);

impl PartialEq for FactorSystem {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.normal != other.0.normal || self.0.quotient != other.0.quotient {
            return false;
        }
        match (&self.0.maps, &other.0.maps) {
            (
                Maps::Standard { action: a1, cocycle: c1 },
                Maps::Standard { action: a2, cocycle: c2 },
            ) => a1 == a2 && c1 == c2,
            (Maps::Custom(x), Maps::Custom(y)) => Arc::ptr_eq(x, y),
            _ => false,
        }
    }
}

impl fmt::Debug for FactorSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactorSystem({} by {}: {})", self.normal(), self.quotient(), self.label())
    }
}

fn free_rank(g: &Group, what: &str) -> Result<usize> {
    match g {
        Group::FreeAbelian(n) => Ok(*n),
        _ => Err(AlgebraError::InvalidFactorSystem(format!("{what} must be free abelian, got {g}"))),
    }
}

fn ints(g: &GroupElement) -> Result<&[i64]> {
    match g {
        GroupElement::FreeAbelian(v) => Ok(v),
        other => Err(AlgebraError::InvalidArgument(format!("expected a vector, got {other}"))),
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl FactorSystem {
    /// Closed-form factor system; shapes are checked against N and H.
    pub fn standard(normal: Group, quotient: Group, action: Action, cocycle: Cocycle) -> Result<Self> {
        if let Action::Linear(lin) = &action {
            let n = free_rank(&normal, "N")?;
            let r = free_rank(&quotient, "H")?;
            if lin.generators.len() != r {
                return Err(AlgebraError::RankMismatch(lin.generators.len(), r));
            }
            if let Some(bad) = lin.generators.iter().find(|m| m.rows() != n || m.cols() != n) {
                return Err(AlgebraError::InvalidFactorSystem(format!(
                    "action matrix {bad:?} is not {n}x{n}"
                )));
            }
        }
        match &cocycle {
            Cocycle::Trivial => {}
            Cocycle::Bilinear(ms) => {
                let n = free_rank(&normal, "N")?;
                let r = free_rank(&quotient, "H")?;
                if ms.len() != n {
                    return Err(AlgebraError::RankMismatch(ms.len(), n));
                }
                if let Some(bad) = ms.iter().find(|m| m.rows() != r || m.cols() != r) {
                    return Err(AlgebraError::InvalidFactorSystem(format!(
                        "cocycle matrix {bad:?} is not {r}x{r}"
                    )));
                }
            }
            Cocycle::LinearForms { left, right } => {
                let n = free_rank(&normal, "N")?;
                let r = free_rank(&quotient, "H")?;
                if left.len() != n || right.len() != n {
                    return Err(AlgebraError::RankMismatch(left.len().max(right.len()), n));
                }
                if left.iter().chain(right).any(|v| v.len() != r) {
                    return Err(AlgebraError::InvalidFactorSystem(format!(
                        "linear forms must have length {r}"
                    )));
                }
            }
        }
        Ok(Self(Arc::new(Inner { normal, quotient, maps: Maps::Standard { action, cocycle } })))
    }

    /// S ≡ id, ω ≡ e: the direct product N × H.
    pub fn trivial(normal: Group, quotient: Group) -> Self {
        Self(Arc::new(Inner {
            normal,
            quotient,
            maps: Maps::Standard { action: Action::Trivial, cocycle: Cocycle::Trivial },
        }))
    }

    /// ℤⁿ ⋊ ℤʳ with S(eᵢ) = matrices[i].
    pub fn semidirect(normal: Group, quotient: Group, matrices: Vec<IntMatrix>) -> Result<Self> {
        Self::standard(normal, quotient, Action::Linear(LinearAction::new(matrices)?), Cocycle::Trivial)
    }

    /// Central extension of ℤʳ by ℤⁿ (n = matrices.len()) with
    /// ω(x, y)ⱼ = xᵀ Bⱼ y.
    pub fn central_bilinear(rank: usize, matrices: Vec<IntMatrix>) -> Result<Self> {
        let n = matrices.len();
        Self::standard(
            Group::FreeAbelian(n),
            Group::FreeAbelian(rank),
            Action::Trivial,
            Cocycle::Bilinear(matrices),
        )
    }

    /// Trivial action with ω(x, y)ⱼ = ⟨leftⱼ, x⟩ + ⟨rightⱼ, y⟩.
    pub fn central_linear_forms(rank: usize, left: Vec<Vec<i64>>, right: Vec<Vec<i64>>) -> Result<Self> {
        let n = left.len();
        Self::standard(
            Group::FreeAbelian(n),
            Group::FreeAbelian(rank),
            Action::Trivial,
            Cocycle::LinearForms { left, right },
        )
    }

    pub fn custom(normal: Group, quotient: Group, maps: Arc<dyn CustomFactorMaps>) -> Self {
        Self(Arc::new(Inner { normal, quotient, maps: Maps::Custom(maps) }))
    }

    pub fn normal(&self) -> &Group {
        &self.0.normal
    }

    pub fn quotient(&self) -> &Group {
        &self.0.quotient
    }

    /// Action and cocycle of a closed-form system.
    pub fn standard_parts(&self) -> Option<(&Action, &Cocycle)> {
        match &self.0.maps {
            Maps::Standard { action, cocycle } => Some((action, cocycle)),
            Maps::Custom(_) => None,
        }
    }

    /// True when the action is trivial and N is abelian, so N is central.
    pub fn is_central(&self) -> bool {
        matches!(self.0.normal, Group::FreeAbelian(_) | Group::FiniteCyclic(_))
            && matches!(self.0.maps, Maps::Standard { action: Action::Trivial, .. })
    }

    /// Short description used in group names.
    pub fn label(&self) -> String {
        match &self.0.maps {
            Maps::Custom(c) => c.describe(),
            Maps::Standard { action, cocycle } => {
                let mut parts = Vec::new();
                if let Action::Linear(lin) = action {
                    parts.push(format!("S={:?}", lin.generators));
                }
                match cocycle {
                    Cocycle::Trivial => {}
                    Cocycle::Bilinear(ms) => parts.push(format!("w={ms:?}")),
                    Cocycle::LinearForms { left, right } => {
                        parts.push(format!("w=lin{left:?}+{right:?}"))
                    }
                }
                if parts.is_empty() {
                    "triv".into()
                } else {
                    parts.join(",")
                }
            }
        }
    }

    /// S(h)(n).
    pub fn act(&self, h: &GroupElement, n: &GroupElement) -> Result<GroupElement> {
        match &self.0.maps {
            Maps::Custom(c) => c.act(h, n),
            Maps::Standard { action: Action::Trivial, .. } => Ok(n.clone()),
            Maps::Standard { action: Action::Linear(lin), .. } => {
                Ok(GroupElement::FreeAbelian(lin.matrix(ints(h)?).mul_vec(ints(n)?)))
            }
        }
    }

    /// S(h)⁻¹(n).
    pub fn act_inverse(&self, h: &GroupElement, n: &GroupElement) -> Result<GroupElement> {
        match &self.0.maps {
            Maps::Custom(c) => c.act_inverse(h, n),
            Maps::Standard { action: Action::Trivial, .. } => Ok(n.clone()),
            Maps::Standard { action: Action::Linear(lin), .. } => {
                let neg: Vec<i64> = ints(h)?.iter().map(|k| -k).collect();
                Ok(GroupElement::FreeAbelian(lin.matrix(&neg).mul_vec(ints(n)?)))
            }
        }
    }

    /// ω(h, h').
    pub fn omega(&self, h: &GroupElement, h2: &GroupElement) -> Result<GroupElement> {
        match &self.0.maps {
            Maps::Custom(c) => c.omega(h, h2),
            Maps::Standard { cocycle: Cocycle::Trivial, .. } => Ok(self.0.normal.identity()),
            Maps::Standard { cocycle: Cocycle::Bilinear(ms), .. } => {
                let (x, y) = (ints(h)?, ints(h2)?);
                Ok(GroupElement::FreeAbelian(ms.iter().map(|b| b.bilinear(x, y)).collect()))
            }
            Maps::Standard { cocycle: Cocycle::LinearForms { left, right }, .. } => {
                let (x, y) = (ints(h)?, ints(h2)?);
                Ok(GroupElement::FreeAbelian(
                    left.iter().zip(right).map(|(l, r)| dot(l, x) + dot(r, y)).collect(),
                ))
            }
        }
    }

    /// (n, h)(n', h') = (n · S(h)(n') · ω(h, h'), hh').
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let ((n1, h1), (n2, h2)) = (split(a)?, split(b)?);
        let (normal, quotient) = (&self.0.normal, &self.0.quotient);
        let twisted = self.act(h1, n2)?;
        let n = normal.mul_unchecked(&normal.mul_unchecked(n1, &twisted)?, &self.omega(h1, h2)?)?;
        Ok(GroupElement::pair(n, quotient.mul_unchecked(h1, h2)?))
    }

    /// (n, h)⁻¹ = (ω(h⁻¹, h)⁻¹ · S(h⁻¹)(n⁻¹), h⁻¹).
    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement> {
        let (n, h) = split(a)?;
        let (normal, quotient) = (&self.0.normal, &self.0.quotient);
        let h_inv = quotient.inv(h)?;
        let w = normal.inv(&self.omega(&h_inv, h)?)?;
        let moved = self.act(&h_inv, &normal.inv(n)?)?;
        Ok(GroupElement::pair(normal.mul_unchecked(&w, &moved)?, h_inv))
    }

    /// The ring-level crossed system (S̄, ω̄) with S̄(h)(δ_n) = δ_{S(h)(n)} and
    /// ω̄(h, h') = δ_{ω(h, h')}.
    pub fn lift(&self) -> CrossedSystem {
        CrossedSystem {
            normal: self.0.normal.clone(),
            quotient: self.0.quotient.clone(),
            repr: Repr::Lifted(self.clone()),
        }
    }
}

fn split(a: &GroupElement) -> Result<(&GroupElement, &GroupElement)> {
    a.as_pair()
        .ok_or_else(|| AlgebraError::InvalidArgument(format!("{a} is not an extension pair")))
}

/// Finite sets of H- and N-elements on which identities are tested.
#[derive(Clone, Debug)]
pub struct FactorWindow {
    pub quotient: Vec<GroupElement>,
    pub normal: Vec<GroupElement>,
}

impl FactorWindow {
    /// Word-metric balls of the given radii in H and N.
    pub fn balls(normal: &Group, quotient: &Group, h_radius: usize, n_radius: usize) -> Result<Self> {
        Ok(Self { quotient: quotient.ball(h_radius)?, normal: normal.ball(n_radius)? })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Normalization,
    ActionHomomorphism,
    ActionInverse,
    ActionComposition,
    Cocycle,
    Unit,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::Normalization => "normalization",
            Relation::ActionHomomorphism => "action-homomorphism",
            Relation::ActionInverse => "action-inverse",
            Relation::ActionComposition => "action-composition",
            Relation::Cocycle => "cocycle",
            Relation::Unit => "unit",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub relation: Relation,
    #[serde(serialize_with = "crate::format::ser_elements")]
    pub witness: Vec<GroupElement>,
    pub detail: String,
}

/// Outcome of an exhaustive window check. Violations are data, not errors.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn check(&mut self, ok: bool, relation: Relation, witness: &[&GroupElement], detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < MAX_RECORDED_VIOLATIONS {
                self.violations.push(Violation {
                    relation,
                    witness: witness.iter().map(|g| (*g).clone()).collect(),
                    detail: detail(),
                });
            }
        }
    }

    /// First recorded violation of the given relation.
    pub fn first(&self, relation: Relation) -> Option<&Violation> {
        self.violations.iter().find(|v| v.relation == relation)
    }
}

/// Tests normalization, that every S(h) is an automorphism with the stated
/// inverse, S(h)S(h') = C(ω(h,h'))S(hh'), and
/// ω(h,h')ω(hh',h'') = S(h)(ω(h',h''))ω(h,h'h'') on all window tuples.
pub fn validate_factor_system(fs: &FactorSystem, window: &FactorWindow) -> Result<ValidationReport> {
    let (normal, quotient) = (fs.normal(), fs.quotient());
    let mut report = ValidationReport::default();
    let e_h = quotient.identity();
    let e_n = normal.identity();

    for n in &window.normal {
        let img = fs.act(&e_h, n)?;
        report.check(img == *n, Relation::Normalization, &[&e_h, n], || format!("S(e)({n}) = {img}"));
    }
    for h in &window.quotient {
        let right = fs.omega(h, &e_h)?;
        report.check(right == e_n, Relation::Normalization, &[h, &e_h], || format!("w({h}, e) = {right}"));
        let left = fs.omega(&e_h, h)?;
        report.check(left == e_n, Relation::Normalization, &[&e_h, h], || format!("w(e, {h}) = {left}"));
    }

    for h in &window.quotient {
        for n in &window.normal {
            let there = fs.act(h, n)?;
            let back = fs.act_inverse(h, &there)?;
            let back2 = fs.act(h, &fs.act_inverse(h, n)?)?;
            report.check(back == *n && back2 == *n, Relation::ActionInverse, &[h, n], || {
                format!("S(h)^-1 S(h) n = {back}, S(h) S(h)^-1 n = {back2}")
            });
            for m in &window.normal {
                let lhs = fs.act(h, &normal.mul(n, m)?)?;
                let rhs = normal.mul(&there, &fs.act(h, m)?)?;
                report.check(lhs == rhs, Relation::ActionHomomorphism, &[h, n, m], || {
                    format!("S(h)(nm) = {lhs} but S(h)(n)S(h)(m) = {rhs}")
                });
            }
        }
    }

    for h in &window.quotient {
        for h2 in &window.quotient {
            let w = fs.omega(h, h2)?;
            let w_inv = normal.inv(&w)?;
            let hh2 = quotient.mul(h, h2)?;
            for n in &window.normal {
                let lhs = fs.act(h, &fs.act(h2, n)?)?;
                let rhs = normal.mul(&normal.mul(&w, &fs.act(&hh2, n)?)?, &w_inv)?;
                report.check(lhs == rhs, Relation::ActionComposition, &[h, h2, n], || {
                    format!("S(h)S(h')(n) = {lhs} but w S(hh')(n) w^-1 = {rhs}")
                });
            }
            for h3 in &window.quotient {
                let lhs = normal.mul(&w, &fs.omega(&hh2, h3)?)?;
                let h2h3 = quotient.mul(h2, h3)?;
                let rhs = normal.mul(&fs.act(h, &fs.omega(h2, h3)?)?, &fs.omega(h, &h2h3)?)?;
                report.check(lhs == rhs, Relation::Cocycle, &[h, h2, h3], || {
                    format!("w(h,h')w(hh',h'') = {lhs} but S(h)(w(h',h''))w(h,h'h'') = {rhs}")
                });
            }
        }
    }
    Ok(report)
}

/// A group G with a normal subgroup N and quotient map q: G → H, given by
/// evaluation functions on its own element encoding.
pub trait ConcreteExtension: Send + Sync {
    fn normal(&self) -> Group;
    fn quotient(&self) -> Group;
    fn identity(&self) -> GroupElement;
    fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement>;
    fn inv(&self, a: &GroupElement) -> Result<GroupElement>;
    /// q(g).
    fn project(&self, g: &GroupElement) -> Result<GroupElement>;
    /// The N-coordinates of g, or `None` when g ∉ N.
    fn restrict(&self, g: &GroupElement) -> Result<Option<GroupElement>>;
    /// N ↪ G.
    fn include(&self, n: &GroupElement) -> Result<GroupElement>;
    fn name(&self) -> String;
}

pub type Section = Arc<dyn Fn(&GroupElement) -> Result<GroupElement> + Send + Sync>;

struct DerivedMaps<E: ConcreteExtension> {
    ext: Arc<E>,
    section: Section,
}

impl<E: ConcreteExtension> DerivedMaps<E> {
    fn into_n(&self, g: &GroupElement) -> Result<GroupElement> {
        self.ext
            .restrict(g)?
            .ok_or_else(|| AlgebraError::InvalidSection(format!("{g} does not lie in N")))
    }

    fn conj(&self, s: &GroupElement, n: &GroupElement) -> Result<GroupElement> {
        let x = self.ext.mul(&self.ext.mul(s, &self.ext.include(n)?)?, &self.ext.inv(s)?)?;
        self.into_n(&x)
    }
}

impl<E: ConcreteExtension> CustomFactorMaps for DerivedMaps<E> {
    fn act(&self, h: &GroupElement, n: &GroupElement) -> Result<GroupElement> {
        self.conj(&(self.section)(h)?, n)
    }

    fn act_inverse(&self, h: &GroupElement, n: &GroupElement) -> Result<GroupElement> {
        self.conj(&self.ext.inv(&(self.section)(h)?)?, n)
    }

    fn omega(&self, h: &GroupElement, h2: &GroupElement) -> Result<GroupElement> {
        let q = self.ext.quotient();
        let s = self.ext.mul(&(self.section)(h)?, &(self.section)(h2)?)?;
        let s_hh = (self.section)(&q.mul(h, h2)?)?;
        self.into_n(&self.ext.mul(&s, &self.ext.inv(&s_hh)?)?)
    }

    fn describe(&self) -> String {
        format!("derived:{}", self.ext.name())
    }
}

/// S := C_N ∘ σ and ω(h, h') = σ(h)σ(h')σ(hh')⁻¹. The section is checked to be
/// normalized and a right inverse of q on `window.quotient`, and every ω value
/// on the window is checked to lie in N.
pub fn derive_factor_system<E: ConcreteExtension + 'static>(
    ext: Arc<E>,
    section: Section,
    window: &FactorWindow,
) -> Result<FactorSystem> {
    let e_h = ext.quotient().identity();
    if section(&e_h)? != ext.identity() {
        return Err(AlgebraError::InvalidSection("sigma(e) is not the identity".into()));
    }
    for h in &window.quotient {
        let back = ext.project(&section(h)?)?;
        if back != *h {
            return Err(AlgebraError::InvalidSection(format!("q(sigma({h})) = {back}")));
        }
    }
    let maps = Arc::new(DerivedMaps { ext: ext.clone(), section });
    for h in &window.quotient {
        for h2 in &window.quotient {
            maps.omega(h, h2)?;
        }
    }
    Ok(FactorSystem::custom(ext.normal(), ext.quotient(), maps))
}

/// An extension group N ×_(S,ω) H viewed as a concrete extension with
/// N = {(n, e)} and q(n, h) = h. With a trivial factor system this is the
/// direct product.
pub struct PairExtension {
    fs: FactorSystem,
    group: Group,
}

impl PairExtension {
    pub fn new(fs: FactorSystem) -> Self {
        Self { group: Group::Extension(fs.clone()), fs }
    }

    pub fn direct_product(normal: Group, quotient: Group) -> Self {
        Self::new(FactorSystem::trivial(normal, quotient))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }
}

impl ConcreteExtension for PairExtension {
    fn normal(&self) -> Group {
        self.fs.normal().clone()
    }
    fn quotient(&self) -> Group {
        self.fs.quotient().clone()
    }
    fn identity(&self) -> GroupElement {
        self.group.identity()
    }
    fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.group.mul(a, b)
    }
    fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        self.group.inv(a)
    }
    fn project(&self, g: &GroupElement) -> Result<GroupElement> {
        Ok(split(g)?.1.clone())
    }
    fn restrict(&self, g: &GroupElement) -> Result<Option<GroupElement>> {
        let (n, h) = split(g)?;
        Ok((*h == self.fs.quotient().identity()).then(|| n.clone()))
    }
    fn include(&self, n: &GroupElement) -> Result<GroupElement> {
        Ok(GroupElement::pair(n.clone(), self.fs.quotient().identity()))
    }
    fn name(&self) -> String {
        self.group.to_string()
    }
}

/// Upper unitriangular integer matrices [[1,a,c],[0,1,b],[0,0,1]] encoded as
/// vectors [a, b, c], with N = {b = 0} ≅ ℤ² via (m, n) ↦ (m, 0, −n) and
/// q(a, b, c) = b.
pub struct HeisenbergMatrices;

impl HeisenbergMatrices {
    pub fn matrix_mul(x: &[i64], y: &[i64]) -> Vec<i64> {
        vec![x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]]
    }

    pub fn matrix_inv(x: &[i64]) -> Vec<i64> {
        vec![-x[0], -x[1], x[0] * x[1] - x[2]]
    }

    /// σ(k) = (0, k, 0).
    pub fn standard_section() -> Section {
        Arc::new(|h: &GroupElement| Ok(GroupElement::vector(vec![0, ints(h)?[0], 0])))
    }
}

impl ConcreteExtension for HeisenbergMatrices {
    fn normal(&self) -> Group {
        Group::FreeAbelian(2)
    }
    fn quotient(&self) -> Group {
        Group::FreeAbelian(1)
    }
    fn identity(&self) -> GroupElement {
        GroupElement::vector(vec![0, 0, 0])
    }
    fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        Ok(GroupElement::vector(Self::matrix_mul(ints(a)?, ints(b)?)))
    }
    fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        Ok(GroupElement::vector(Self::matrix_inv(ints(a)?)))
    }
    fn project(&self, g: &GroupElement) -> Result<GroupElement> {
        Ok(GroupElement::vector(vec![ints(g)?[1]]))
    }
    fn restrict(&self, g: &GroupElement) -> Result<Option<GroupElement>> {
        let v = ints(g)?;
        Ok((v[1] == 0).then(|| GroupElement::vector(vec![v[0], -v[2]])))
    }
    fn include(&self, n: &GroupElement) -> Result<GroupElement> {
        let v = ints(n)?;
        Ok(GroupElement::vector(vec![v[0], 0, -v[1]]))
    }
    fn name(&self) -> String {
        "H3(Z)".into()
    }
}

/// Ring-level maps of an abstract (ℂ[N], H)-crossed system.
pub trait RingCrossedMaps: Send + Sync {
    /// S̄(h)(δ_n) with coefficients in ℚ(ζ_order).
    fn dirac_image(&self, h: &GroupElement, n: &GroupElement, order: u32) -> Result<GroupRingElement>;
    /// ω̄(h, h').
    fn omega(&self, h: &GroupElement, h2: &GroupElement, order: u32) -> Result<GroupRingElement>;
    fn describe(&self) -> String;
}

#[derive(Clone)]
enum Repr {
    Lifted(FactorSystem),
    Abstract(Arc<dyn RingCrossedMaps>),
}

/// A crossed system (S̄, ω̄) over the base ring ℂ[N].
#[derive(Clone)]
pub struct CrossedSystem {
    normal: Group,
    quotient: Group,
    repr: Repr,
}

impl PartialEq for CrossedSystem {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Lifted(a), Repr::Lifted(b)) => a == b,
            (Repr::Abstract(a), Repr::Abstract(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl fmt::Debug for CrossedSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Lifted(fs) => write!(f, "lift({fs:?})"),
            Repr::Abstract(m) => write!(f, "CrossedSystem({} by {}: {})", self.normal, self.quotient, m.describe()),
        }
    }
}

impl CrossedSystem {
    pub fn from_maps(normal: Group, quotient: Group, maps: Arc<dyn RingCrossedMaps>) -> Self {
        Self { normal, quotient, repr: Repr::Abstract(maps) }
    }

    pub fn normal(&self) -> &Group {
        &self.normal
    }

    pub fn quotient(&self) -> &Group {
        &self.quotient
    }

    /// The factor system this was lifted from, if any.
    pub fn factor_system(&self) -> Option<&FactorSystem> {
        match &self.repr {
            Repr::Lifted(fs) => Some(fs),
            Repr::Abstract(_) => None,
        }
    }

    fn check_base(&self, f: &GroupRingElement) -> Result<()> {
        if *f.group() != self.normal {
            return Err(AlgebraError::GroupMismatch(f.group().to_string(), self.normal.to_string()));
        }
        Ok(())
    }

    /// S̄(h)(f), extended linearly from the Dirac basis.
    pub fn apply(&self, h: &GroupElement, f: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_base(f)?;
        match &self.repr {
            Repr::Lifted(fs) => f.map_support(&self.normal, |n| fs.act(h, n)),
            Repr::Abstract(m) => {
                let mut out = GroupRingElement::zero(&self.normal, f.order());
                for (n, c) in f.terms() {
                    out = out.add(&m.dirac_image(h, n, f.order())?.scale(c)?)?;
                }
                Ok(out)
            }
        }
    }

    /// S̄(h)⁻¹(f). Abstract systems use
    /// S̄(h)⁻¹(f) = ω̄(h⁻¹,h)⁻¹ ⋆ S̄(h⁻¹)(f) ⋆ ω̄(h⁻¹,h).
    pub fn apply_inverse(&self, h: &GroupElement, f: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_base(f)?;
        match &self.repr {
            Repr::Lifted(fs) => f.map_support(&self.normal, |n| fs.act_inverse(h, n)),
            Repr::Abstract(_) => {
                let h_inv = self.quotient.inv(h)?;
                let w = self.omega(&h_inv, h, f.order())?;
                let w_inv = self.omega_inverse(&h_inv, h, f.order())?;
                w_inv.convolve(&self.apply(&h_inv, f)?)?.convolve(&w)
            }
        }
    }

    /// ω̄(h, h').
    pub fn omega(&self, h: &GroupElement, h2: &GroupElement, order: u32) -> Result<GroupRingElement> {
        match &self.repr {
            Repr::Lifted(fs) => GroupRingElement::dirac(&self.normal, fs.omega(h, h2)?, order),
            Repr::Abstract(m) => m.omega(h, h2, order),
        }
    }

    /// ω̄(h, h')⁻¹; certified only for trivial units.
    pub fn omega_inverse(&self, h: &GroupElement, h2: &GroupElement, order: u32) -> Result<GroupRingElement> {
        match &self.repr {
            Repr::Lifted(fs) => {
                GroupRingElement::dirac(&self.normal, self.normal.inv(&fs.omega(h, h2)?)?, order)
            }
            Repr::Abstract(m) => m.omega(h, h2, order)?.trivial_unit_inverse(),
        }
    }
}

/// Tests the crossed-system axioms on the Dirac basis over the window:
/// normalization, that S̄(h) is unital and multiplicative,
/// S̄(h)S̄(h')(δ_n) ⋆ ω̄(h,h') = ω̄(h,h') ⋆ S̄(hh')(δ_n), and
/// ω̄(h,h') ⋆ ω̄(hh',h'') = S̄(h)(ω̄(h',h'')) ⋆ ω̄(h,h'h'').
pub fn validate_crossed_system(cs: &CrossedSystem, window: &FactorWindow, order: u32) -> Result<ValidationReport> {
    let (normal, quotient) = (cs.normal(), cs.quotient());
    let mut report = ValidationReport::default();
    let e_h = quotient.identity();
    let one = GroupRingElement::one(normal, order);
    let dirac = |n: &GroupElement| GroupRingElement::dirac(normal, n.clone(), order);

    for n in &window.normal {
        let img = cs.apply(&e_h, &dirac(n)?)?;
        let ok = img == dirac(n)?;
        report.check(ok, Relation::Normalization, &[&e_h, n], || format!("S(e)(d{n}) = {img}"));
    }
    for h in &window.quotient {
        for (a, b) in [(h, &e_h), (&e_h, h)] {
            let w = cs.omega(a, b, order)?;
            report.check(w == one, Relation::Normalization, &[a, b], || format!("w = {w}"));
        }
        let u = cs.apply(h, &one)?;
        report.check(u == one, Relation::Unit, &[h], || format!("S(h)(1) = {u}"));
        for n in &window.normal {
            let sn = cs.apply(h, &dirac(n)?)?;
            let back = cs.apply_inverse(h, &sn)?;
            report.check(back == dirac(n)?, Relation::ActionInverse, &[h, n], || format!("{back}"));
            for m in &window.normal {
                let lhs = cs.apply(h, &dirac(&normal.mul(n, m)?)?)?;
                let rhs = sn.convolve(&cs.apply(h, &dirac(m)?)?)?;
                report.check(lhs == rhs, Relation::ActionHomomorphism, &[h, n, m], || {
                    format!("{lhs} vs {rhs}")
                });
            }
        }
    }
    for h in &window.quotient {
        for h2 in &window.quotient {
            let w = cs.omega(h, h2, order)?;
            let hh2 = quotient.mul(h, h2)?;
            for n in &window.normal {
                let lhs = cs.apply(h, &cs.apply(h2, &dirac(n)?)?)?.convolve(&w)?;
                let rhs = w.convolve(&cs.apply(&hh2, &dirac(n)?)?)?;
                report.check(lhs == rhs, Relation::ActionComposition, &[h, h2, n], || {
                    format!("{lhs} vs {rhs}")
                });
            }
            for h3 in &window.quotient {
                let lhs = w.convolve(&cs.omega(&hh2, h3, order)?)?;
                let rhs = cs
                    .apply(h, &cs.omega(h2, h3, order)?)?
                    .convolve(&cs.omega(h, &quotient.mul(h2, h3)?, order)?)?;
                report.check(lhs == rhs, Relation::Cocycle, &[h, h2, h3], || format!("{lhs} vs {rhs}"));
            }
        }
    }
    Ok(report)
}

struct RestrictedMaps {
    cs: CrossedSystem,
    order: u32,
}

fn unit_dirac(f: &GroupRingElement) -> Option<GroupElement> {
    let (c, g) = f.as_trivial_unit()?;
    c.is_one().then_some(g)
}

impl RestrictedMaps {
    fn exponent(&self, f: Result<GroupRingElement>) -> Result<GroupElement> {
        let f = f?;
        unit_dirac(&f)
            .ok_or_else(|| AlgebraError::InvalidFactorSystem(format!("{f} is not a Dirac element of N")))
    }
}

impl CustomFactorMaps for RestrictedMaps {
    fn act(&self, h: &GroupElement, n: &GroupElement) -> Result<GroupElement> {
        let d = GroupRingElement::dirac(&self.cs.normal, n.clone(), self.order)?;
        self.exponent(self.cs.apply(h, &d))
    }
    fn act_inverse(&self, h: &GroupElement, n: &GroupElement) -> Result<GroupElement> {
        let d = GroupRingElement::dirac(&self.cs.normal, n.clone(), self.order)?;
        self.exponent(self.cs.apply_inverse(h, &d))
    }
    fn omega(&self, h: &GroupElement, h2: &GroupElement) -> Result<GroupElement> {
        self.exponent(self.cs.omega(h, h2, self.order))
    }
    fn describe(&self) -> String {
        format!("restricted:{:?}", self.cs)
    }
}

/// Recovers (S, ω) when, on the window, S̄(h) maps Dirac elements of N to
/// Dirac elements and every ω̄ value is a coefficient-1 Dirac element.
pub fn restrict_crossed_system(cs: &CrossedSystem, window: &FactorWindow, order: u32) -> Option<FactorSystem> {
    let monomial_ok = || -> Result<bool> {
        for h in &window.quotient {
            for n in &window.normal {
                let d = GroupRingElement::dirac(cs.normal(), n.clone(), order)?;
                if unit_dirac(&cs.apply(h, &d)?).is_none() {
                    return Ok(false);
                }
            }
            for h2 in &window.quotient {
                if unit_dirac(&cs.omega(h, h2, order)?).is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    if !monomial_ok().unwrap_or(false) {
        return None;
    }
    Some(match &cs.repr {
        Repr::Lifted(fs) => fs.clone(),
        Repr::Abstract(_) => FactorSystem::custom(
            cs.normal.clone(),
            cs.quotient.clone(),
            Arc::new(RestrictedMaps { cs: cs.clone(), order }),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{central_k_plus_lprime, heisenberg_central, heisenberg_semidirect};
    use crate::scalars::{rat, CycScalar};

    fn el(s: &str) -> GroupElement {
        s.parse().unwrap()
    }

    fn fs_of(g: &Group) -> &FactorSystem {
        match g {
            Group::Extension(fs) => fs,
            _ => panic!("not an extension"),
        }
    }

    fn window(fs: &FactorSystem, h: usize, n: usize) -> FactorWindow {
        FactorWindow::balls(fs.normal(), fs.quotient(), h, n).unwrap()
    }

    #[test]
    fn presets_validate() {
        for g in [heisenberg_semidirect(), heisenberg_central()] {
            let fs = fs_of(&g);
            let r = validate_factor_system(fs, &window(fs, 2, 2)).unwrap();
            assert!(r.passed(), "{:?}", r.violations.first());
            assert!(r.checks > 100);
        }
        let triv = FactorSystem::trivial(Group::FiniteCyclic(3), Group::FreeAbelian(1));
        assert!(validate_factor_system(&triv, &window(&triv, 2, 1)).unwrap().passed());
    }

    #[test]
    fn linear_cocycle_fails() {
        let fs = central_k_plus_lprime();
        let r = validate_factor_system(&fs, &window(&fs, 1, 1)).unwrap();
        assert!(!r.passed());
        let v = r.first(Relation::Cocycle).unwrap();
        assert_eq!(v.witness.len(), 3);
        // ω(x,y) = x₁ + y₂, so the defect at (x,y,z) is x₁ − z₂.
        let defect = |w: &[GroupElement]| w[0].as_ints().unwrap()[0] - w[2].as_ints().unwrap()[1];
        assert_ne!(defect(&v.witness), 0);
        assert!(r.first(Relation::Normalization).is_some());
    }

    #[test]
    fn incompatible_action_and_cocycle_detected() {
        let a = IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
        let b = IntMatrix::from_rows(&[vec![1]]).unwrap();
        let fs = FactorSystem::standard(
            Group::FreeAbelian(2),
            Group::FreeAbelian(1),
            Action::Linear(LinearAction::new(vec![a]).unwrap()),
            Cocycle::Bilinear(vec![b.clone(), b]),
        )
        .unwrap();
        let r = validate_factor_system(&fs, &window(&fs, 1, 1)).unwrap();
        assert!(r.first(Relation::Cocycle).is_some());
    }

    #[test]
    fn constructor_errors() {
        let bad = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(FactorSystem::semidirect(Group::FreeAbelian(2), Group::FreeAbelian(1), vec![bad]).is_err());
        let id = IntMatrix::identity(2);
        assert!(matches!(
            FactorSystem::semidirect(Group::FreeAbelian(2), Group::FreeAbelian(2), vec![id]),
            Err(AlgebraError::RankMismatch(1, 2))
        ));
        let x = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let y = IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
        assert!(FactorSystem::semidirect(Group::FreeAbelian(2), Group::FreeAbelian(2), vec![x, y]).is_err());
    }

    #[test]
    fn extension_inverse_and_multiplication() {
        let g = heisenberg_semidirect();
        let a = el("([1,0];[1])");
        let inv = g.inv(&a).unwrap();
        assert_eq!(g.mul(&a, &inv).unwrap(), g.identity());
        assert_eq!(g.mul(&inv, &a).unwrap(), g.identity());
        let c = heisenberg_central();
        let x = el("([3];[1,-2])");
        let xi = c.inv(&x).unwrap();
        assert_eq!(c.mul(&x, &xi).unwrap(), c.identity());
        assert_eq!(c.mul(&xi, &x).unwrap(), c.identity());
    }

    #[test]
    fn derive_from_direct_product() {
        let ext = Arc::new(PairExtension::direct_product(Group::FreeAbelian(2), Group::FreeAbelian(1)));
        let w = FactorWindow::balls(&ext.normal(), &ext.quotient(), 2, 2).unwrap();
        let section: Section = Arc::new(|h| Ok(GroupElement::pair(GroupElement::vector([0, 0]), h.clone())));
        let fs = derive_factor_system(ext, section, &w).unwrap();
        for h in &w.quotient {
            for n in &w.normal {
                assert_eq!(fs.act(h, n).unwrap(), *n);
            }
            for h2 in &w.quotient {
                assert_eq!(fs.omega(h, h2).unwrap(), GroupElement::vector([0, 0]));
            }
        }
        assert!(validate_factor_system(&fs, &w).unwrap().passed());
    }

    #[test]
    fn derive_from_heisenberg_matrices() {
        let ext = Arc::new(HeisenbergMatrices);
        let w = FactorWindow::balls(&ext.normal(), &ext.quotient(), 3, 2).unwrap();
        let fs = derive_factor_system(ext, HeisenbergMatrices::standard_section(), &w).unwrap();
        for h in &w.quotient {
            let k = h.as_ints().unwrap()[0];
            for n in &w.normal {
                let v = n.as_ints().unwrap();
                assert_eq!(fs.act(h, n).unwrap(), GroupElement::vector([v[0], k * v[0] + v[1]]));
            }
            for h2 in &w.quotient {
                assert_eq!(fs.omega(h, h2).unwrap(), GroupElement::vector([0, 0]));
            }
        }
        assert!(validate_factor_system(&fs, &w).unwrap().passed());
        assert!(fs.label().starts_with("derived:"));
    }

    #[test]
    fn derive_from_central_extension() {
        let central = fs_of(&heisenberg_central()).clone();
        let ext = Arc::new(PairExtension::new(central));
        let w = FactorWindow::balls(&ext.normal(), &ext.quotient(), 2, 1).unwrap();
        let section: Section = Arc::new(|h| Ok(GroupElement::pair(GroupElement::vector([0]), h.clone())));
        let fs = derive_factor_system(ext, section, &w).unwrap();
        for h in &w.quotient {
            for h2 in &w.quotient {
                let (x, y) = (h.as_ints().unwrap(), h2.as_ints().unwrap());
                assert_eq!(fs.omega(h, h2).unwrap(), GroupElement::vector([x[0] * y[1]]));
            }
        }
    }

    #[test]
    fn bad_sections_rejected() {
        let ext = Arc::new(HeisenbergMatrices);
        let w = FactorWindow::balls(&ext.normal(), &ext.quotient(), 1, 1).unwrap();
        let shifted: Section = Arc::new(|h| Ok(GroupElement::vector(vec![1, h.as_ints().unwrap()[0], 0])));
        assert!(matches!(
            derive_factor_system(ext.clone(), shifted, &w),
            Err(AlgebraError::InvalidSection(_))
        ));
        let wrong: Section = Arc::new(|h| Ok(GroupElement::vector(vec![0, 2 * h.as_ints().unwrap()[0], 0])));
        assert!(derive_factor_system(ext, wrong, &w).is_err());
    }

    #[test]
    fn lift_matches_action() {
        let g = heisenberg_semidirect();
        let cs = fs_of(&g).lift();
        let d = GroupRingElement::dirac(cs.normal(), el("[1,0]"), 4).unwrap();
        let img = cs.apply(&el("[1]"), &d).unwrap();
        assert_eq!(img, GroupRingElement::dirac(cs.normal(), el("[1,1]"), 4).unwrap());
        assert_eq!(cs.apply_inverse(&el("[1]"), &img).unwrap(), d);
        let w = window(fs_of(&g), 1, 1);
        assert!(validate_crossed_system(&cs, &w, 4).unwrap().passed());
        let cc = fs_of(&heisenberg_central()).lift();
        let w = window(cc.factor_system().unwrap(), 1, 1);
        assert!(validate_crossed_system(&cc, &w, 4).unwrap().passed());
    }

    #[test]
    fn trivial_lift_is_identity() {
        let fs = FactorSystem::trivial(Group::FreeAbelian(1), Group::FreeAbelian(1));
        let cs = fs.lift();
        let w = window(&fs, 2, 2);
        for h in &w.quotient {
            for h2 in &w.quotient {
                assert_eq!(cs.omega(h, h2, 4).unwrap(), GroupRingElement::one(cs.normal(), 4));
            }
        }
    }

    struct Scaled {
        scale_omega: bool,
    }

    impl RingCrossedMaps for Scaled {
        fn dirac_image(&self, _h: &GroupElement, n: &GroupElement, order: u32) -> Result<GroupRingElement> {
            let z = Group::FreeAbelian(1);
            let d = GroupRingElement::dirac(&z, n.clone(), order)?;
            if self.scale_omega {
                Ok(d)
            } else {
                let shifted = GroupElement::vector([n.as_ints().unwrap()[0] + 1]);
                d.add(&GroupRingElement::dirac(&z, shifted, order)?)
            }
        }
        fn omega(&self, h: &GroupElement, h2: &GroupElement, order: u32) -> Result<GroupRingElement> {
            let z = Group::FreeAbelian(1);
            let c = if self.scale_omega && *h == el("[1]") && *h2 == el("[1]") {
                CycScalar::from_rational(order, rat(2, 1))
            } else {
                CycScalar::one(order)
            };
            GroupRingElement::monomial(&z, GroupElement::vector([0]), c)
        }
        fn describe(&self) -> String {
            "scaled".into()
        }
    }

    #[test]
    fn restriction_round_trip_and_rejections() {
        let g = heisenberg_semidirect();
        let fs = fs_of(&g);
        let w = window(fs, 2, 1);
        assert_eq!(restrict_crossed_system(&fs.lift(), &w, 4).as_ref(), Some(fs));

        let z = Group::FreeAbelian(1);
        let two = CrossedSystem::from_maps(z.clone(), z.clone(), Arc::new(Scaled { scale_omega: true }));
        let wz = FactorWindow::balls(&z, &z, 1, 1).unwrap();
        assert!(restrict_crossed_system(&two, &wz, 4).is_none());
        let spread = CrossedSystem::from_maps(z.clone(), z.clone(), Arc::new(Scaled { scale_omega: false }));
        assert!(restrict_crossed_system(&spread, &wz, 4).is_none());
    }

    #[test]
    fn abstract_restriction_recovers_maps() {
        struct Shift;
        impl RingCrossedMaps for Shift {
            fn dirac_image(&self, h: &GroupElement, n: &GroupElement, order: u32) -> Result<GroupRingElement> {
                let k = h.as_ints().unwrap()[0];
                let v = n.as_ints().unwrap();
                GroupRingElement::dirac(&Group::FreeAbelian(2), GroupElement::vector([v[0], k * v[0] + v[1]]), order)
            }
            fn omega(&self, _h: &GroupElement, _h2: &GroupElement, order: u32) -> Result<GroupRingElement> {
                Ok(GroupRingElement::one(&Group::FreeAbelian(2), order))
            }
            fn describe(&self) -> String {
                "shift".into()
            }
        }
        let cs = CrossedSystem::from_maps(Group::FreeAbelian(2), Group::FreeAbelian(1), Arc::new(Shift));
        let w = FactorWindow::balls(cs.normal(), cs.quotient(), 2, 2).unwrap();
        assert!(validate_crossed_system(&cs, &w, 4).unwrap().passed());
        let fs = restrict_crossed_system(&cs, &w, 4).unwrap();
        let preset = heisenberg_semidirect();
        let reference = fs_of(&preset);
        for h in &w.quotient {
            for n in &w.normal {
                assert_eq!(fs.act(h, n).unwrap(), reference.act(h, n).unwrap());
                assert_eq!(fs.act_inverse(h, n).unwrap(), reference.act_inverse(h, n).unwrap());
            }
        }
        assert!(validate_factor_system(&fs, &w).unwrap().passed());
    }
}
