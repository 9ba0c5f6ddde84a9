//! JSON formats for scalars, groups, factor systems, elements, cocycles and
//! characters.
//!
//! Scalars are `{"order": q, "coeffs": [[num, den], ...]}` in the power basis
//! of ℚ(ζ_q); integers may be JSON numbers or decimal strings. Coefficients of
//! elements may also be written as an integer or a string `"p/q"`.
//! Elements use the textual syntax `[1,-2]`, `3 mod 5`, `([1,0];[2])`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};

use crate::cohomology::BilinearCocycle;
use crate::crossed_product::CrossedProductElement;
use crate::error::{AlgebraError, Result};
use crate::factor_systems::{Action, Cocycle, CrossedSystem, FactorSystem, LinearAction};
use crate::group_ring::GroupRingElement;
use crate::groups::{heisenberg_central, heisenberg_semidirect, Group, GroupElement};
use crate::intmat::IntMatrix;
use crate::scalars::{CycScalar, Rational};

pub const DEFAULT_ORDER: u32 = 4;

pub(crate) fn ser_elements<S: Serializer>(elems: &[GroupElement], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(elems.iter().map(ToString::to_string))
}

pub(crate) fn ser_matrix<S: Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.to_rows())
}

fn parse_err(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse(msg.into())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntJson {
    Num(i64),
    Text(String),
}

impl IntJson {
    fn from_big(b: &BigInt) -> Self {
        b.to_i64().map_or_else(|| IntJson::Text(b.to_string()), IntJson::Num)
    }

    fn to_big(&self) -> Result<BigInt> {
        match self {
            IntJson::Num(n) => Ok(BigInt::from(*n)),
            IntJson::Text(s) => BigInt::from_str(s.trim()).map_err(|_| parse_err(format!("bad integer {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarJson {
    pub order: u32,
    pub coeffs: Vec<[IntJson; 2]>,
}

impl ScalarJson {
    pub fn from_scalar(c: &CycScalar) -> Self {
        Self {
            order: c.order(),
            coeffs: c.coeffs().iter().map(|r| [IntJson::from_big(r.numer()), IntJson::from_big(r.denom())]).collect(),
        }
    }

    pub fn to_scalar(&self) -> Result<CycScalar> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for [n, d] in &self.coeffs {
            let d = d.to_big()?;
            if d == BigInt::from(0) {
                return Err(parse_err("zero denominator"));
            }
            coeffs.push(Rational::new(n.to_big()?, d));
        }
        CycScalar::from_coeffs(self.order, coeffs)
    }
}

/// A coefficient: full scalar object, integer, or rational string "p/q".
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Scalar(ScalarJson),
    Int(i64),
    Text(String),
}

impl CoeffJson {
    pub fn to_scalar(&self, order: u32) -> Result<CycScalar> {
        let c = match self {
            CoeffJson::Scalar(s) => s.to_scalar()?,
            CoeffJson::Int(n) => CycScalar::from_int(order, *n),
            CoeffJson::Text(s) => CycScalar::from_rational(order, parse_rational(s)?),
        };
        if c.order() == order {
            Ok(c)
        } else {
            c.embed(order)
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n = BigInt::from_str(n.trim()).map_err(|_| parse_err(format!("bad rational {s:?}")))?;
    let d = BigInt::from_str(d.trim()).map_err(|_| parse_err(format!("bad rational {s:?}")))?;
    if d == BigInt::from(0) {
        return Err(parse_err(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    FreeAbelian(usize),
    Cyclic(u64),
    Preset(String),
    Extension(Box<FactorSystemSpec>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group> {
        Ok(match self {
            GroupSpec::FreeAbelian(n) => Group::FreeAbelian(*n),
            GroupSpec::Cyclic(0) => return Err(parse_err("cyclic modulus must be positive")),
            GroupSpec::Cyclic(m) => Group::FiniteCyclic(*m),
            GroupSpec::Preset(name) => Group::Extension(preset_factor_system(name)?),
            GroupSpec::Extension(fs) => Group::Extension(fs.build()?),
        })
    }

    pub fn describe(g: &Group) -> Option<Self> {
        Some(match g {
            Group::FreeAbelian(n) => GroupSpec::FreeAbelian(*n),
            Group::FiniteCyclic(m) => GroupSpec::Cyclic(*m),
            Group::Extension(fs) => GroupSpec::Extension(Box::new(FactorSystemSpec::describe(fs)?)),
        })
    }
}

pub fn preset_factor_system(name: &str) -> Result<FactorSystem> {
    let g = match name {
        "heisenberg_semidirect" => heisenberg_semidirect(),
        "heisenberg_central" => heisenberg_central(),
        "central_k_plus_lprime" => return Ok(crate::groups::central_k_plus_lprime()),
        other => return Err(parse_err(format!("unknown preset {other:?}"))),
    };
    match g {
        Group::Extension(fs) => Ok(fs),
        _ => unreachable!("presets are extensions"),
    }
}

type Rows = Vec<Vec<i64>>;

fn matrix(rows: &Rows) -> Result<IntMatrix> {
    IntMatrix::from_rows(rows).ok_or_else(|| parse_err("ragged matrix"))
}

/// Factor-system descriptors for the closed-form families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FactorSystemSpec {
    Trivial {
        normal: GroupSpec,
        quotient: GroupSpec,
    },
    /// ℤⁿ ⋊ ℤʳ: one n×n matrix per generator of H, plus optional bilinear
    /// cocycle matrices (one r×r matrix per coordinate of N).
    Semidirect {
        matrix_action: Vec<Rows>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cocycle_matrices: Option<Vec<Rows>>,
    },
    /// Central extension of ℤʳ by ℤ (`matrix`) or by ℤⁿ (`matrices`).
    CentralBilinear {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<Rows>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrices: Option<Vec<Rows>>,
    },
    CentralLinear {
        rank: usize,
        left: Rows,
        right: Rows,
    },
    Preset {
        name: String,
    },
}

impl FactorSystemSpec {
    pub fn build(&self) -> Result<FactorSystem> {
        match self {
            FactorSystemSpec::Trivial { normal, quotient } => Ok(FactorSystem::trivial(normal.build()?, quotient.build()?)),
            FactorSystemSpec::Semidirect { matrix_action, cocycle_matrices } => {
                let gens = matrix_action.iter().map(matrix).collect::<Result<Vec<_>>>()?;
                let n = gens.first().map_or(0, IntMatrix::rows);
                let r = gens.len();
                let cocycle = match cocycle_matrices {
                    None => Cocycle::Trivial,
                    Some(ms) => Cocycle::Bilinear(ms.iter().map(matrix).collect::<Result<_>>()?),
                };
                FactorSystem::standard(
                    Group::FreeAbelian(n),
                    Group::FreeAbelian(r),
                    Action::Linear(LinearAction::new(gens)?),
                    cocycle,
                )
            }
            FactorSystemSpec::CentralBilinear { matrix: one, matrices } => {
                let ms = match (one, matrices) {
                    (Some(m), None) => vec![matrix(m)?],
                    (None, Some(ms)) => ms.iter().map(matrix).collect::<Result<_>>()?,
                    _ => return Err(parse_err("central_bilinear needs exactly one of \"matrix\" or \"matrices\"")),
                };
                let r = ms.first().map_or(0, IntMatrix::rows);
                FactorSystem::central_bilinear(r, ms)
            }
            FactorSystemSpec::CentralLinear { rank, left, right } => {
                FactorSystem::central_linear_forms(*rank, left.clone(), right.clone())
            }
            FactorSystemSpec::Preset { name } => preset_factor_system(name),
        }
    }

    /// Descriptor of a closed-form factor system; `None` for custom maps.
    pub fn describe(fs: &FactorSystem) -> Option<Self> {
        let (action, cocycle) = fs.standard_parts()?;
        let rows = |ms: &[IntMatrix]| ms.iter().map(IntMatrix::to_rows).collect::<Vec<_>>();
        Some(match (action, cocycle) {
            (Action::Trivial, Cocycle::Trivial) => FactorSystemSpec::Trivial {
                normal: GroupSpec::describe(fs.normal())?,
                quotient: GroupSpec::describe(fs.quotient())?,
            },
            (Action::Linear(lin), c) => FactorSystemSpec::Semidirect {
                matrix_action: rows(lin.generators()),
                cocycle_matrices: match c {
                    Cocycle::Trivial => None,
                    Cocycle::Bilinear(ms) => Some(rows(ms)),
                    Cocycle::LinearForms { .. } => return None,
                },
            },
            (Action::Trivial, Cocycle::Bilinear(ms)) if ms.len() == 1 => {
                FactorSystemSpec::CentralBilinear { matrix: Some(ms[0].to_rows()), matrices: None }
            }
            (Action::Trivial, Cocycle::Bilinear(ms)) => {
                FactorSystemSpec::CentralBilinear { matrix: None, matrices: Some(rows(ms)) }
            }
            (Action::Trivial, Cocycle::LinearForms { left, right }) => FactorSystemSpec::CentralLinear {
                rank: fs.quotient().abelian_rank()?,
                left: left.clone(),
                right: right.clone(),
            },
        })
    }
}

/// A factor-system file: either a bare descriptor or `{"factor_system": ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorSystemFile {
    Wrapped { factor_system: FactorSystemSpec },
    Bare(FactorSystemSpec),
}

impl FactorSystemFile {
    pub fn spec(&self) -> &FactorSystemSpec {
        match self {
            FactorSystemFile::Wrapped { factor_system } | FactorSystemFile::Bare(factor_system) => factor_system,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub elem: String,
    pub coeff: CoeffJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRingJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub terms: Vec<TermJson>,
}

pub fn parse_element(s: &str, group: &Group) -> Result<GroupElement> {
    let g: GroupElement = s.parse().map_err(|e| match e {
        AlgebraError::Parse(m) => parse_err(format!("element {s:?}: {m}")),
        other => other,
    })?;
    group.check(&g)?;
    Ok(g)
}

impl GroupRingJson {
    pub fn from_element(x: &GroupRingElement, with_group: bool) -> Self {
        Self {
            group: if with_group { GroupSpec::describe(x.group()) } else { None },
            order: Some(x.order()),
            terms: x
                .sorted_terms()
                .into_iter()
                .map(|(g, c)| TermJson { elem: g.to_string(), coeff: CoeffJson::Scalar(ScalarJson::from_scalar(c)) })
                .collect(),
        }
    }

    /// Builds the element; `default_group` is used when no group is given.
    pub fn build(&self, default_group: Option<&Group>) -> Result<GroupRingElement> {
        let group = match (&self.group, default_group) {
            (Some(spec), Some(expected)) => {
                let g = spec.build()?;
                if g != *expected {
                    return Err(AlgebraError::GroupMismatch(g.to_string(), expected.to_string()));
                }
                g
            }
            (Some(spec), None) => spec.build()?,
            (None, Some(g)) => g.clone(),
            (None, None) => return Err(parse_err("missing \"group\"")),
        };
        let order = self.order.unwrap_or(DEFAULT_ORDER);
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push((parse_element(&t.elem, &group)?, t.coeff.to_scalar(order)?));
        }
        GroupRingElement::from_terms(&group, order, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedTermJson {
    pub h: String,
    pub coeff_ring_elem: GroupRingJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedProductJson {
    pub crossed_system: FactorSystemSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub terms: Vec<CrossedTermJson>,
}

impl CrossedProductJson {
    pub fn from_element(x: &CrossedProductElement) -> Result<Self> {
        let fs = x
            .system()
            .factor_system()
            .ok_or_else(|| AlgebraError::InvalidArgument("abstract crossed systems have no descriptor".into()))?;
        let spec = FactorSystemSpec::describe(fs)
            .ok_or_else(|| AlgebraError::InvalidArgument("factor system has no descriptor".into()))?;
        Ok(Self {
            crossed_system: spec,
            order: Some(x.order()),
            terms: x
                .sorted_terms()
                .into_iter()
                .map(|(h, f)| CrossedTermJson { h: h.to_string(), coeff_ring_elem: GroupRingJson::from_element(f, false) })
                .collect(),
        })
    }

    pub fn build(&self) -> Result<CrossedProductElement> {
        let cs = self.crossed_system.build()?.lift();
        self.build_in(&cs)
    }

    pub fn build_in(&self, cs: &CrossedSystem) -> Result<CrossedProductElement> {
        let order = self.order.unwrap_or(DEFAULT_ORDER);
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let h = parse_element(&t.h, cs.quotient())?;
            let mut f = t.coeff_ring_elem.build(Some(cs.normal()))?;
            if f.order() != order {
                f = f.embed_order(order)?;
            }
            terms.push((h, f));
        }
        CrossedProductElement::from_terms(cs, order, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleJson {
    pub rank: usize,
    pub matrix: Rows,
}

impl CocycleJson {
    pub fn build(&self) -> Result<BilinearCocycle> {
        let c = BilinearCocycle::new(matrix(&self.matrix)?)?;
        if c.rank() != self.rank {
            return Err(AlgebraError::RankMismatch(c.rank(), self.rank));
        }
        Ok(c)
    }

    pub fn from_cocycle(c: &BilinearCocycle) -> Self {
        Self { rank: c.rank(), matrix: c.matrix().to_rows() }
    }
}

/// A grid file: a JSON list of coefficients.
pub fn parse_grid(json: &str, order: u32) -> std::result::Result<Vec<CycScalar>, GridError> {
    let raw: Vec<CoeffJson> = serde_json::from_str(json).map_err(GridError::Json)?;
    raw.iter().map(|c| c.to_scalar(order)).collect::<Result<_>>().map_err(GridError::Algebra)
}

#[derive(Debug)]
pub enum GridError {
    Json(serde_json::Error),
    Algebra(AlgebraError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn scalar_round_trip() {
        let c = CycScalar::gaussian(rat(3, 2), rat(-7, 5));
        let j = ScalarJson::from_scalar(&c);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"order":4,"coeffs":[[3,2],[-7,5]]}"#);
        let back: ScalarJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_scalar().unwrap(), c);
        let big: ScalarJson = serde_json::from_str(r#"{"order":1,"coeffs":[["123456789012345678901234567890","1"]]}"#).unwrap();
        assert!(big.to_scalar().unwrap().as_rational().is_some());
        assert!(serde_json::from_str::<ScalarJson>(r#"{"order":4,"coeffs":[[1,1]]}"#).unwrap().to_scalar().is_err());
    }

    #[test]
    fn factor_system_descriptors_round_trip() {
        for name in ["heisenberg_semidirect", "heisenberg_central", "central_k_plus_lprime"] {
            let fs = preset_factor_system(name).unwrap();
            let spec = FactorSystemSpec::describe(&fs).unwrap();
            let text = serde_json::to_string(&spec).unwrap();
            let back: FactorSystemSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back.build().unwrap(), fs);
        }
        let spec: FactorSystemSpec =
            serde_json::from_str(r#"{"kind":"trivial","normal":{"cyclic":2},"quotient":{"free_abelian":1}}"#).unwrap();
        assert_eq!(spec.build().unwrap(), FactorSystem::trivial(Group::FiniteCyclic(2), Group::FreeAbelian(1)));
        assert!(serde_json::from_str::<FactorSystemSpec>(r#"{"kind":"bogus"}"#).is_err());
    }

    #[test]
    fn group_ring_round_trip() {
        let text = r#"{"group":{"preset":"heisenberg_semidirect"},"terms":[{"elem":"([1,0];[1])","coeff":"1/2"},{"elem":"([0,0];[0])","coeff":{"order":4,"coeffs":[[0,1],[1,1]]}}]}"#;
        let j: GroupRingJson = serde_json::from_str(text).unwrap();
        let x = j.build(None).unwrap();
        assert_eq!(x.len(), 2);
        let again = GroupRingJson::from_element(&x, true);
        let y: GroupRingJson = serde_json::from_str(&serde_json::to_string(&again).unwrap()).unwrap();
        assert_eq!(y.build(None).unwrap(), x);
        let bad: GroupRingJson = serde_json::from_str(r#"{"group":{"free_abelian":2},"terms":[{"elem":"[1,","coeff":1}]}"#).unwrap();
        let err = bad.build(None).unwrap_err().to_string();
        assert!(err.contains("column"), "{err}");
    }

    #[test]
    fn crossed_product_round_trip() {
        let text = r#"{"crossed_system":{"kind":"preset","name":"heisenberg_central"},"terms":[{"h":"[1,0]","coeff_ring_elem":{"terms":[{"elem":"[2]","coeff":-3}]}}]}"#;
        let j: CrossedProductJson = serde_json::from_str(text).unwrap();
        let x = j.build().unwrap();
        let out = CrossedProductJson::from_element(&x).unwrap();
        assert_eq!(out.build().unwrap(), x);
    }

    #[test]
    fn grids() {
        let g = parse_grid(r#"[0, 1, "-1/2", {"order":4,"coeffs":[[0,1],[1,1]]}]"#, 4).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g[3], CycScalar::i());
        assert!(parse_grid("[1,", 4).is_err());
    }
}
