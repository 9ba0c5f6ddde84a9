//! Group elements in canonical form and the closed-form group families:
//! free abelian groups ℤⁿ, finite cyclic groups ℤ/m and extension groups
//! N ×_(S,ω) H.
//!
//! Elements carry no reference to their group; every operation takes the
//! [`Group`] explicitly.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{AlgebraError, Result};
use crate::factor_systems::FactorSystem;
use crate::intmat::IntMatrix;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    FreeAbelian(Vec<i64>),
    FiniteCyclic { residue: u64, modulus: u64 },
    /// `(n, h)` in N ×_(S,ω) H.
    Pair(Box<GroupElement>, Box<GroupElement>),
}

impl GroupElement {
    pub fn vector(v: impl Into<Vec<i64>>) -> Self {
        GroupElement::FreeAbelian(v.into())
    }

    pub fn cyclic(value: i64, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        GroupElement::FiniteCyclic {
            residue: value.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn pair(normal: GroupElement, quotient: GroupElement) -> Self {
        GroupElement::Pair(Box::new(normal), Box::new(quotient))
    }

    pub fn as_pair(&self) -> Option<(&GroupElement, &GroupElement)> {
        match self {
            GroupElement::Pair(n, h) => Some((n, h)),
            _ => None,
        }
    }

    /// Integer coordinates of an element of ℤⁿ or ℤ/m.
    pub fn as_ints(&self) -> Option<Vec<i64>> {
        match self {
            GroupElement::FreeAbelian(v) => Some(v.clone()),
            GroupElement::FiniteCyclic { residue, .. } => Some(vec![*residue as i64]),
            GroupElement::Pair(..) => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::FreeAbelian(v) => {
                write!(f, "[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            GroupElement::FiniteCyclic { residue, modulus } => write!(f, "{residue} mod {modulus}"),
            GroupElement::Pair(n, h) => write!(f, "({n};{h})"),
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Grammar:
///
/// ```text
/// element := vector | cyclic | pair
/// vector  := "[" [ int { "," int } ] "]"
/// cyclic  := int "mod" int
/// pair    := "(" element ";" element ")"
/// ```
///
/// Whitespace is allowed between tokens.
impl FromStr for GroupElement {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = ElementParser { src: s.as_bytes(), pos: 0 };
        let elem = parser.element()?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(elem)
    }
}

struct ElementParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ElementParser<'_> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at column {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| {
                self.pos = start;
                self.error("expected integer")
            })
    }

    fn element(&mut self) -> Result<GroupElement> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let mut v = Vec::new();
                if self.peek() == Some(b']') {
                    self.pos += 1;
                    return Ok(GroupElement::FreeAbelian(v));
                }
                loop {
                    v.push(self.int()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b']') => {
                            self.pos += 1;
                            return Ok(GroupElement::FreeAbelian(v));
                        }
                        _ => return Err(self.error("expected ',' or ']'")),
                    }
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let n = self.element()?;
                self.expect(b';')?;
                let h = self.element()?;
                self.expect(b')')?;
                Ok(GroupElement::pair(n, h))
            }
            Some(_) => {
                let value = self.int()?;
                self.skip_ws();
                if !self.src[self.pos..].starts_with(b"mod") {
                    return Err(self.error("expected 'mod'"));
                }
                self.pos += 3;
                let modulus = self.int()?;
                if modulus <= 0 {
                    return Err(self.error("modulus must be positive"));
                }
                Ok(GroupElement::cyclic(value, modulus as u64))
            }
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[derive(Clone, PartialEq)]
pub enum Group {
    FreeAbelian(usize),
    FiniteCyclic(u64),
    Extension(FactorSystem),
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::FreeAbelian(1) => write!(f, "Z"),
            Group::FreeAbelian(n) => write!(f, "Z^{n}"),
            Group::FiniteCyclic(m) => write!(f, "Z/{m}"),
            Group::Extension(fs) => {
                write!(f, "({} x_[{}] {})", fs.normal(), fs.label(), fs.quotient())
            }
        }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Group {
    pub fn extension(fs: FactorSystem) -> Self {
        Group::Extension(fs)
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Group::FreeAbelian(n) => GroupElement::FreeAbelian(vec![0; *n]),
            Group::FiniteCyclic(m) => GroupElement::cyclic(0, *m),
            Group::Extension(fs) => {
                GroupElement::pair(fs.normal().identity(), fs.quotient().identity())
            }
        }
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        match (self, a) {
            (Group::FreeAbelian(n), GroupElement::FreeAbelian(v)) => v.len() == *n,
            (Group::FiniteCyclic(m), GroupElement::FiniteCyclic { residue, modulus }) => {
                modulus == m && residue < m
            }
            (Group::Extension(fs), GroupElement::Pair(n, h)) => {
                fs.normal().contains(n) && fs.quotient().contains(h)
            }
            _ => false,
        }
    }

    pub fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(AlgebraError::ElementMismatch { element: a.to_string(), group: self.to_string() })
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        self.mul_unchecked(a, b)
    }

    pub(crate) fn mul_unchecked(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        Ok(match (self, a, b) {
            (Group::FreeAbelian(_), GroupElement::FreeAbelian(x), GroupElement::FreeAbelian(y)) => {
                GroupElement::FreeAbelian(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (
                Group::FiniteCyclic(m),
                GroupElement::FiniteCyclic { residue: x, .. },
                GroupElement::FiniteCyclic { residue: y, .. },
            ) => GroupElement::FiniteCyclic { residue: (x + y) % m, modulus: *m },
            (Group::Extension(fs), GroupElement::Pair(..), GroupElement::Pair(..)) => {
                fs.multiply(a, b)?
            }
            _ => {
                return Err(AlgebraError::ElementMismatch {
                    element: format!("{a} * {b}"),
                    group: self.to_string(),
                })
            }
        })
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(match (self, a) {
            (Group::FreeAbelian(_), GroupElement::FreeAbelian(x)) => {
                GroupElement::FreeAbelian(x.iter().map(|p| -p).collect())
            }
            (Group::FiniteCyclic(m), GroupElement::FiniteCyclic { residue, .. }) => {
                GroupElement::FiniteCyclic { residue: (m - residue) % m, modulus: *m }
            }
            (Group::Extension(fs), GroupElement::Pair(..)) => fs.invert(a)?,
            _ => unreachable!("checked membership"),
        })
    }

    /// aᵏ for any integer k.
    pub fn pow(&self, a: &GroupElement, k: i64) -> Result<GroupElement> {
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base)?;
        }
        Ok(acc)
    }

    /// a b a⁻¹ b⁻¹.
    pub fn commutator(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let ab = self.mul(a, b)?;
        let ab_ai = self.mul(&ab, &self.inv(a)?)?;
        self.mul(&ab_ai, &self.inv(b)?)
    }

    /// Canonical generating set: unit vectors, `1 mod m`, and for extensions the
    /// generators of N embedded as (g, e) followed by those of H as (e, g).
    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            Group::FreeAbelian(n) => (0..*n)
                .map(|i| {
                    let mut v = vec![0; *n];
                    v[i] = 1;
                    GroupElement::FreeAbelian(v)
                })
                .collect(),
            Group::FiniteCyclic(1) => Vec::new(),
            Group::FiniteCyclic(m) => vec![GroupElement::cyclic(1, *m)],
            Group::Extension(fs) => {
                let e_n = fs.normal().identity();
                let e_h = fs.quotient().identity();
                let mut gens: Vec<_> = fs
                    .normal()
                    .generators()
                    .into_iter()
                    .map(|g| GroupElement::pair(g, e_h.clone()))
                    .collect();
                gens.extend(
                    fs.quotient()
                        .generators()
                        .into_iter()
                        .map(|g| GroupElement::pair(e_n.clone(), g)),
                );
                gens
            }
        }
    }

    /// All elements of word length at most `radius` with respect to
    /// [`Group::generators`], sorted.
    pub fn ball(&self, radius: usize) -> Result<Vec<GroupElement>> {
        let gens = self.generators();
        let mut moves = gens.clone();
        for g in &gens {
            moves.push(self.inv(g)?);
        }
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut queue = VecDeque::new();
        let e = self.identity();
        seen.insert(e.clone());
        queue.push_back((e, 0usize));
        while let Some((g, d)) = queue.pop_front() {
            if d == radius {
                continue;
            }
            for m in &moves {
                let next = self.mul(&g, m)?;
                if seen.insert(next.clone()) {
                    queue.push_back((next, d + 1));
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Recorded sufficient condition: ℤⁿ and the trivial group are torsion-free,
    /// ℤ/m for m > 1 is not, and an extension is flagged torsion-free when both
    /// building blocks are.
    pub fn is_torsion_free(&self) -> bool {
        match self {
            Group::FreeAbelian(_) => true,
            Group::FiniteCyclic(m) => *m == 1,
            Group::Extension(fs) => fs.normal().is_torsion_free() && fs.quotient().is_torsion_free(),
        }
    }

    /// Builds the element of ℤⁿ or ℤ/m with the given coordinates.
    pub fn element_from_ints(&self, coords: &[i64]) -> Result<GroupElement> {
        match self {
            Group::FreeAbelian(n) if coords.len() == *n => Ok(GroupElement::vector(coords.to_vec())),
            Group::FiniteCyclic(m) if coords.len() == 1 => Ok(GroupElement::cyclic(coords[0], *m)),
            _ => Err(AlgebraError::InvalidArgument(format!(
                "cannot build an element of {self} from coordinates {coords:?}"
            ))),
        }
    }

    /// Rank of ℤⁿ (1 for cyclic groups); `None` for extension groups.
    pub fn abelian_rank(&self) -> Option<usize> {
        match self {
            Group::FreeAbelian(n) => Some(*n),
            Group::FiniteCyclic(_) => Some(1),
            Group::Extension(_) => None,
        }
    }
}

/// The discrete Heisenberg group realized as ℤ² ⋊_S ℤ with
/// S(k)(m, n) = (m, km + n).
pub fn heisenberg_semidirect() -> Group {
    let action = IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).expect("rectangular");
    let fs = FactorSystem::semidirect(Group::FreeAbelian(2), Group::FreeAbelian(1), vec![action])
        .expect("unimodular action");
    Group::Extension(fs)
}

/// The discrete Heisenberg group realized as a central extension of ℤ by ℤ²
/// with bilinear cocycle β((k, k'), (l, l')) = k·l'.
pub fn heisenberg_central() -> Group {
    let beta = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]).expect("rectangular");
    Group::Extension(FactorSystem::central_bilinear(2, vec![beta]).expect("square matrix"))
}

/// Central extension of ℤ by ℤ² with the linear "cocycle"
/// ω((k, k'), (l, l')) = k + l'. It violates the cocycle identity and the
/// normalization conditions; kept as a validation fixture.
pub fn central_k_plus_lprime() -> FactorSystem {
    FactorSystem::central_linear_forms(2, vec![vec![1, 0]], vec![vec![0, 1]])
        .expect("well-shaped forms")
}

/// Parses a whitespace-separated list of elements; used by the CLI and tests.
pub fn parse_elements(items: &[&str]) -> Result<Vec<GroupElement>> {
    items.iter().map(|s| s.parse()).collect()
}

/// Index of each element in a slice, for quick lookups over windows.
pub fn index_map(elems: &[GroupElement]) -> HashMap<GroupElement, usize> {
    elems.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect()
}
