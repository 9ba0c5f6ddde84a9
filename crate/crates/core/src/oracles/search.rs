//! Exhaustive desk-scale searches for zero divisors, units and idempotents.
//!
//! A candidate is Σ cᵢ bᵢ over at most `max_support` basis elements of the
//! window with coefficients from the nonzero grid values. Candidates are
//! enumerated by support size, then lexicographically by positions, then by
//! grid indices. Products are computed from a table of basis products built
//! with the algebra's own multiplication; every reported witness is
//! recomputed with direct arithmetic.

use std::collections::HashMap;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::crossed_product::CrossedProductElement;
use crate::error::{AlgebraError, Result};
use crate::factor_systems::CrossedSystem;
use crate::group_ring::GroupRingElement;
use crate::groups::{Group, GroupElement};
use crate::scalars::{euler_phi, CycScalar, CyclotomicField};

/// Upper bound on materialized candidates.
pub const MAX_CANDIDATES: u64 = 2_000_000;
/// Witnesses kept verbatim; the total is always counted.
pub const MAX_WITNESSES: usize = 10_000;

#[derive(Clone, Debug)]
pub enum SearchAlgebra {
    /// ℂ[G], basis δ_g.
    GroupRing(Group),
    /// ℂ[N] ×_(S̄,ω̄) H, basis δ_n d_h encoded as pairs (n, h).
    CrossedProduct(CrossedSystem),
}

impl SearchAlgebra {
    fn identity(&self) -> GroupElement {
        match self {
            SearchAlgebra::GroupRing(g) => g.identity(),
            SearchAlgebra::CrossedProduct(cs) => GroupElement::pair(cs.normal().identity(), cs.quotient().identity()),
        }
    }

    fn describe(&self) -> String {
        match self {
            SearchAlgebra::GroupRing(g) => format!("C[{g}]"),
            SearchAlgebra::CrossedProduct(cs) => format!("C[{}] x {}", cs.normal(), cs.quotient()),
        }
    }

    fn check_position(&self, p: &GroupElement) -> Result<()> {
        match self {
            SearchAlgebra::GroupRing(g) => g.check(p),
            SearchAlgebra::CrossedProduct(cs) => {
                let (n, h) = p
                    .as_pair()
                    .ok_or_else(|| AlgebraError::InvalidArgument(format!("{p} is not a pair (n;h)")))?;
                cs.normal().check(n)?;
                cs.quotient().check(h)
            }
        }
    }
}

/// A finite search space.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub algebra: SearchAlgebra,
    pub window: Vec<GroupElement>,
    pub grid: Vec<CycScalar>,
    pub max_support: usize,
}

impl SearchSpace {
    pub fn new(algebra: SearchAlgebra, window: Vec<GroupElement>, grid: Vec<CycScalar>, max_support: usize) -> Result<Self> {
        for p in &window {
            algebra.check_position(p)?;
        }
        if window.iter().duplicates().next().is_some() {
            return Err(AlgebraError::InvalidArgument("window contains duplicates".into()));
        }
        if let Some(c) = grid.first() {
            if let Some(bad) = grid.iter().find(|x| x.order() != c.order()) {
                return Err(AlgebraError::OrderMismatch(c.order(), bad.order()));
            }
        }
        Ok(Self { algebra, window, grid, max_support })
    }

    /// Window N-ball(n_radius) × H-ball(h_radius) of a crossed product.
    pub fn crossed_window(cs: &CrossedSystem, n_radius: usize, h_radius: usize) -> Result<Vec<GroupElement>> {
        let ns = cs.normal().ball(n_radius)?;
        let hs = cs.quotient().ball(h_radius)?;
        Ok(hs.iter().flat_map(|h| ns.iter().map(move |n| GroupElement::pair(n.clone(), h.clone()))).collect())
    }

    /// Distinct nonzero grid values, in first-occurrence order.
    pub fn nonzero_grid(&self) -> Vec<CycScalar> {
        let mut out: Vec<CycScalar> = Vec::new();
        for c in &self.grid {
            if !c.is_zero() && !out.contains(c) {
                out.push(c.clone());
            }
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.grid.first().map_or(4, CycScalar::order)
    }

    /// Σ_{s ≤ max} C(|window|, s)·|nonzero grid|^s, the zero element included.
    pub fn candidate_count(&self) -> u128 {
        let w = self.window.len() as u128;
        let g = self.nonzero_grid().len() as u128;
        let mut total = 0u128;
        let mut binom = 1u128;
        let mut gp = 1u128;
        for s in 0..=self.max_support as u128 {
            if s > w {
                break;
            }
            total += binom * gp;
            binom = binom * (w - s) / (s + 1);
            gp *= g;
        }
        total
    }

    pub fn descriptor(&self) -> SpaceDescriptor {
        SpaceDescriptor {
            algebra: self.algebra.describe(),
            window: self.window.iter().map(ToString::to_string).collect(),
            grid: self.nonzero_grid().iter().map(ToString::to_string).collect(),
            max_support: self.max_support,
            order: self.order(),
        }
    }
}

/// The named default grids.
pub fn preset_grid(name: &str) -> Result<Vec<CycScalar>> {
    use crate::scalars::rat;
    let g = |re: (i64, i64), im: (i64, i64)| CycScalar::gaussian(rat(re.0, re.1), rat(im.0, im.1));
    Ok(match name {
        "rational" => vec![g((-1, 1), (0, 1)), g((-1, 2), (0, 1)), g((0, 1), (0, 1)), g((1, 2), (0, 1)), g((1, 1), (0, 1))],
        "gaussian" => vec![g((0, 1), (0, 1)), g((1, 1), (0, 1)), g((-1, 1), (0, 1)), g((0, 1), (1, 1)), g((0, 1), (-1, 1))],
        "gaussian_half" => vec![
            g((0, 1), (0, 1)),
            g((1, 1), (0, 1)),
            g((-1, 1), (0, 1)),
            g((0, 1), (1, 1)),
            g((0, 1), (-1, 1)),
            g((1, 2), (0, 1)),
            g((-1, 2), (0, 1)),
        ],
        "signs" => vec![g((-1, 1), (0, 1)), g((0, 1), (0, 1)), g((1, 1), (0, 1))],
        "halves" => vec![g((0, 1), (0, 1)), g((1, 1), (0, 1)), g((1, 2), (0, 1))],
        "zero" => vec![g((0, 1), (0, 1))],
        other => return Err(AlgebraError::InvalidArgument(format!("unknown grid preset {other:?}"))),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpaceDescriptor {
    pub algebra: String,
    pub window: Vec<String>,
    pub grid: Vec<String>,
    pub max_support: usize,
    pub order: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchKind {
    ZeroDivisors,
    Units,
    Idempotents,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub f: String,
    pub g: Option<String>,
    /// f•g (or f•f for idempotents), recomputed by direct multiplication.
    pub product: String,
    pub reverse_product: Option<String>,
    pub verified: bool,
    pub trivial: bool,
    pub homogeneous: bool,
}

/// Deterministic search outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub kind: SearchKind,
    pub space: SpaceDescriptor,
    pub candidate_count: u64,
    pub enumerated: u64,
    pub pairs_checked: u64,
    pub backend: &'static str,
    pub witness_count: u64,
    pub witnesses: Vec<Witness>,
    pub nontrivial_count: u64,
    pub verdict: String,
}

impl SearchReport {
    /// True when no counterexample to the relevant conjecture was found:
    /// no zero divisors, every unit homogeneous (crossed products) or trivial
    /// (group rings), only trivial idempotents.
    pub fn conjecture_holds(&self) -> bool {
        self.nontrivial_count == 0
    }
}

struct Candidate {
    positions: Vec<u32>,
    values: Vec<u32>,
}

fn enumerate(space: &SearchSpace, ngrid: usize) -> Vec<Candidate> {
    let w = space.window.len();
    let mut out = Vec::new();
    for s in 0..=space.max_support.min(w) {
        for pos in (0..w as u32).combinations(s) {
            if s == 0 {
                out.push(Candidate { positions: Vec::new(), values: Vec::new() });
                continue;
            }
            for vals in (0..s).map(|_| 0..ngrid as u32).multi_cartesian_product() {
                out.push(Candidate { positions: pos.clone(), values: vals });
            }
        }
    }
    out
}

/// Basis products bᵢ • bⱼ = Σ c k, keys interned to u32 (key 0 = identity).
struct Table {
    n: usize,
    window_keys: Vec<u32>,
    entries: Vec<Vec<(u32, CycScalar)>>,
    unit_coeffs: bool,
}

impl Table {
    fn build(space: &SearchSpace, order: u32) -> Result<Self> {
        let mut keys: HashMap<GroupElement, u32> = HashMap::new();
        keys.insert(space.algebra.identity(), 0);
        let mut intern = |g: GroupElement| -> u32 {
            let next = keys.len() as u32;
            *keys.entry(g).or_insert(next)
        };
        let n = space.window.len();
        let window_keys: Vec<u32> = space.window.iter().map(|p| intern(p.clone())).collect();
        let mut entries = Vec::with_capacity(n * n);
        let mut unit_coeffs = true;
        for a in &space.window {
            for b in &space.window {
                let terms: Vec<(GroupElement, CycScalar)> = match &space.algebra {
                    SearchAlgebra::GroupRing(g) => {
                        let x = GroupRingElement::dirac(g, a.clone(), order)?;
                        let y = GroupRingElement::dirac(g, b.clone(), order)?;
                        x.convolve(&y)?.sorted_terms().into_iter().map(|(k, c)| (k.clone(), c.clone())).collect()
                    }
                    SearchAlgebra::CrossedProduct(cs) => {
                        let x = cp_basis(cs, a, order)?;
                        let y = cp_basis(cs, b, order)?;
                        let mut v = Vec::new();
                        for (h, f) in x.mul(&y)?.sorted_terms() {
                            for (m, c) in f.sorted_terms() {
                                v.push((GroupElement::pair(m.clone(), h.clone()), c.clone()));
                            }
                        }
                        v
                    }
                };
                if terms.len() != 1 || !terms[0].1.is_one() {
                    unit_coeffs = false;
                }
                entries.push(terms.into_iter().map(|(k, c)| (intern(k), c)).collect());
            }
        }
        Ok(Self { n, window_keys, entries, unit_coeffs })
    }

    fn get(&self, i: u32, j: u32) -> &[(u32, CycScalar)] {
        &self.entries[i as usize * self.n + j as usize]
    }
}

fn cp_basis(cs: &CrossedSystem, p: &GroupElement, order: u32) -> Result<CrossedProductElement> {
    let (n, h) = p.as_pair().expect("checked position");
    CrossedProductElement::monomial(cs, n.clone(), h.clone(), CycScalar::one(order))
}

/// Coefficient arithmetic used by the kernel.
trait Backend: Sync {
    type V: Clone + PartialEq + Send + Sync;
    const NAME: &'static str;
    fn is_zero(&self, v: &Self::V) -> bool;
    /// a·b·c for the table coefficient c.
    fn product(&self, a: &Self::V, b: &Self::V, c: &CycScalar) -> Self::V;
    /// acc += a·b·c.
    fn mul_add(&self, acc: &mut Self::V, a: &Self::V, b: &Self::V, c: &CycScalar);
    /// The value of 1 in product scale.
    fn product_one(&self) -> Self::V;
    /// A grid value brought to product scale.
    fn to_product_scale(&self, a: &Self::V) -> Self::V;
}

struct Exact {
    order: u32,
}

impl Backend for Exact {
    type V = CycScalar;
    const NAME: &'static str = "exact";
    fn is_zero(&self, v: &CycScalar) -> bool {
        v.is_zero()
    }
    fn product(&self, a: &CycScalar, b: &CycScalar, c: &CycScalar) -> CycScalar {
        let p = a * b;
        if c.is_one() {
            p
        } else {
            &p * c
        }
    }
    fn mul_add(&self, acc: &mut CycScalar, a: &CycScalar, b: &CycScalar, c: &CycScalar) {
        *acc = &*acc + &self.product(a, b, c);
    }
    fn product_one(&self) -> CycScalar {
        CycScalar::one(self.order)
    }
    fn to_product_scale(&self, a: &CycScalar) -> CycScalar {
        a.clone()
    }
}

type IVec = [i64; 8];

/// Grid values scaled by a common denominator D to integer power-basis
/// vectors; products are exact integers at scale D². Only used when every
/// basis product is a single basis element with coefficient 1.
struct Scaled {
    phi: usize,
    d: i64,
    reduce: Vec<IVec>,
}

impl Backend for Scaled {
    type V = IVec;
    const NAME: &'static str = "scaled-integer";
    fn is_zero(&self, v: &IVec) -> bool {
        v.iter().all(|&x| x == 0)
    }
    fn product(&self, a: &IVec, b: &IVec, c: &CycScalar) -> IVec {
        let mut acc = [0; 8];
        self.mul_add(&mut acc, a, b, c);
        acc
    }
    fn mul_add(&self, acc: &mut IVec, a: &IVec, b: &IVec, _c: &CycScalar) {
        for i in 0..self.phi {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.phi {
                if b[j] == 0 {
                    continue;
                }
                let ab = a[i] * b[j];
                let r = &self.reduce[i * self.phi + j];
                for k in 0..self.phi {
                    acc[k] += ab * r[k];
                }
            }
        }
    }
    fn product_one(&self) -> IVec {
        let mut v = [0; 8];
        v[0] = self.d * self.d;
        v
    }
    fn to_product_scale(&self, a: &IVec) -> IVec {
        a.map(|x| x * self.d)
    }
}

impl Scaled {
    fn try_new(grid: &[CycScalar], order: u32, max_support: usize) -> Option<(Self, Vec<IVec>)> {
        let phi = euler_phi(order);
        if phi > 8 {
            return None;
        }
        let field = CyclotomicField::get(order).ok()?;
        let mut d = num_bigint::BigInt::one();
        for c in grid {
            for r in c.coeffs() {
                d = d.lcm(r.denom());
            }
        }
        let d_big = num_rational::BigRational::from_integer(d.clone());
        let d = d.to_i64()?;
        let mut scaled = Vec::with_capacity(grid.len());
        let mut max_abs = 0i64;
        for c in grid {
            let mut v = [0i64; 8];
            for (k, r) in c.coeffs().iter().enumerate() {
                let x = (r * &d_big).to_integer().to_i64()?;
                max_abs = max_abs.max(x.abs());
                v[k] = x;
            }
            scaled.push(v);
        }
        let mut reduce = Vec::with_capacity(phi * phi);
        let mut max_red = 1i64;
        for i in 0..phi {
            for j in 0..phi {
                let mut v = [0i64; 8];
                for (k, &x) in field.power((i + j) as i64).iter().enumerate() {
                    v[k] = x;
                    max_red = max_red.max(x.abs());
                }
                reduce.push(v);
            }
        }
        let s = max_support.max(1) as i128;
        let bound = s * s * (phi as i128).pow(2) * (max_abs as i128).pow(2) * max_red as i128;
        let scale = (d as i128) * (d as i128) * (max_abs as i128 + 1);
        if bound.max(scale) >= (1i128 << 60) {
            return None;
        }
        Some((Self { phi, d, reduce }, scaled))
    }
}

struct Kernel<'a, B: Backend> {
    backend: &'a B,
    table: &'a Table,
    values: &'a [B::V],
    candidates: &'a [Candidate],
}

type Sparse<V> = Vec<(u32, V)>;

impl<B: Backend> Kernel<'_, B> {
    /// f•g as (key, value) pairs sorted by key, zeros removed.
    fn product(&self, f: &Candidate, g: &Candidate, out: &mut Sparse<B::V>) {
        out.clear();
        for (pi, vi) in f.positions.iter().zip(&f.values) {
            let a = &self.values[*vi as usize];
            for (pj, vj) in g.positions.iter().zip(&g.values) {
                let b = &self.values[*vj as usize];
                for (k, c) in self.table.get(*pi, *pj) {
                    match out.iter_mut().find(|(key, _)| key == k) {
                        Some((_, acc)) => self.backend.mul_add(acc, a, b, c),
                        None => out.push((*k, self.backend.product(a, b, c))),
                    }
                }
            }
        }
        out.retain(|(_, v)| !self.backend.is_zero(v));
        out.sort_by_key(|(k, _)| *k);
    }

    /// f at product scale in key space, sorted by key.
    fn as_product_scale(&self, f: &Candidate) -> Sparse<B::V> {
        let mut v: Sparse<B::V> = f
            .positions
            .iter()
            .zip(&f.values)
            .map(|(p, x)| (self.table.window_keys[*p as usize], self.backend.to_product_scale(&self.values[*x as usize])))
            .collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    fn run(&self, kind: SearchKind) -> (Vec<(u32, u32)>, u64) {
        let n = self.candidates.len();
        let one = vec![(0u32, self.backend.product_one())];
        let chunks: Vec<(Vec<(u32, u32)>, u64)> = (0..n)
            .into_par_iter()
            .map(|i| {
                let f = &self.candidates[i];
                let mut found = Vec::new();
                let mut buf = Vec::new();
                let mut checked = 0u64;
                match kind {
                    SearchKind::Idempotents => {
                        checked += 1;
                        self.product(f, f, &mut buf);
                        if buf == self.as_product_scale(f) {
                            found.push((i as u32, i as u32));
                        }
                    }
                    SearchKind::ZeroDivisors | SearchKind::Units => {
                        if f.positions.is_empty() {
                            return (found, 0);
                        }
                        for (j, g) in self.candidates.iter().enumerate() {
                            if g.positions.is_empty() {
                                continue;
                            }
                            checked += 1;
                            self.product(f, g, &mut buf);
                            let hit = match kind {
                                SearchKind::ZeroDivisors => buf.is_empty(),
                                _ => {
                                    buf == one && {
                                        self.product(g, f, &mut buf);
                                        buf == one
                                    }
                                }
                            };
                            if hit {
                                found.push((i as u32, j as u32));
                            }
                        }
                    }
                }
                (found, checked)
            })
            .collect();
        let mut hits = Vec::new();
        let mut checked = 0;
        for (h, c) in chunks {
            hits.extend(h);
            checked += c;
        }
        (hits, checked)
    }
}

enum Built {
    Group(GroupRingElement),
    Crossed(CrossedProductElement),
}

impl Built {
    fn mul(&self, other: &Self) -> Result<Built> {
        Ok(match (self, other) {
            (Built::Group(a), Built::Group(b)) => Built::Group(a.convolve(b)?),
            (Built::Crossed(a), Built::Crossed(b)) => Built::Crossed(a.mul(b)?),
            _ => unreachable!("same algebra"),
        })
    }

    fn is_zero(&self) -> bool {
        match self {
            Built::Group(a) => a.is_zero(),
            Built::Crossed(a) => a.is_zero(),
        }
    }

    fn is_one(&self) -> bool {
        match self {
            Built::Group(a) => *a == GroupRingElement::one(a.group(), a.order()),
            Built::Crossed(a) => *a == CrossedProductElement::one(a.system(), a.order()),
        }
    }

    fn same(&self, other: &Self) -> bool {
        match (self, other) {
            (Built::Group(a), Built::Group(b)) => a == b,
            (Built::Crossed(a), Built::Crossed(b)) => a == b,
            _ => false,
        }
    }

    fn text(&self) -> String {
        match self {
            Built::Group(a) => a.to_string(),
            Built::Crossed(a) => a.to_string(),
        }
    }
}

fn build(space: &SearchSpace, grid: &[CycScalar], c: &Candidate, order: u32) -> Result<Built> {
    let terms = c.positions.iter().zip(&c.values).map(|(p, v)| (&space.window[*p as usize], &grid[*v as usize]));
    Ok(match &space.algebra {
        SearchAlgebra::GroupRing(g) => {
            Built::Group(GroupRingElement::from_terms(g, order, terms.map(|(p, v)| (p.clone(), v.clone())))?)
        }
        SearchAlgebra::CrossedProduct(cs) => {
            let mut x = CrossedProductElement::zero(cs, order);
            for (p, v) in terms {
                let (n, h) = p.as_pair().expect("checked position");
                x = x.add(&CrossedProductElement::monomial(cs, n.clone(), h.clone(), v.clone())?)?;
            }
            Built::Crossed(x)
        }
    })
}

fn homogeneous(space: &SearchSpace, c: &Candidate) -> bool {
    match &space.algebra {
        SearchAlgebra::GroupRing(_) => c.positions.len() <= 1,
        SearchAlgebra::CrossedProduct(_) => c
            .positions
            .iter()
            .map(|p| space.window[*p as usize].as_pair().expect("pair").1)
            .all_equal(),
    }
}

fn search(space: &SearchSpace, kind: SearchKind) -> Result<SearchReport> {
    let order = space.order();
    let grid = space.nonzero_grid();
    let count = space.candidate_count();
    if count > u128::from(MAX_CANDIDATES) {
        return Err(AlgebraError::InvalidArgument(format!(
            "search space has {count} candidates, above the limit of {MAX_CANDIDATES}"
        )));
    }
    let candidates = enumerate(space, grid.len());
    debug_assert_eq!(candidates.len() as u128, count);
    let table = Table::build(space, order)?;

    let fast = if table.unit_coeffs { Scaled::try_new(&grid, order, space.max_support) } else { None };
    let ((hits, checked), backend) = match &fast {
        Some((scaled, values)) => {
            let k = Kernel { backend: scaled, table: &table, values, candidates: &candidates };
            (k.run(kind), Scaled::NAME)
        }
        None => {
            let exact = Exact { order };
            let k = Kernel { backend: &exact, table: &table, values: &grid, candidates: &candidates };
            (k.run(kind), Exact::NAME)
        }
    };

    let mut witnesses = Vec::new();
    let mut nontrivial = 0u64;
    for &(i, j) in &hits {
        let (fc, gc) = (&candidates[i as usize], &candidates[j as usize]);
        let trivial_f = fc.positions.len() <= 1;
        let homogeneous_f = homogeneous(space, fc);
        let counts = match kind {
            SearchKind::ZeroDivisors => true,
            SearchKind::Units => match space.algebra {
                SearchAlgebra::GroupRing(_) => !trivial_f,
                SearchAlgebra::CrossedProduct(_) => !homogeneous_f,
            },
            SearchKind::Idempotents => !(fc.positions.is_empty() || (trivial_f && {
                let w = &space.window[fc.positions[0] as usize];
                *w == space.algebra.identity() && grid[fc.values[0] as usize].is_one()
            })),
        };
        if counts {
            nontrivial += 1;
        }
        if witnesses.len() >= MAX_WITNESSES {
            continue;
        }
        let f = build(space, &grid, fc, order)?;
        let w = match kind {
            SearchKind::Idempotents => {
                let ff = f.mul(&f)?;
                Witness {
                    verified: ff.same(&f),
                    f: f.text(),
                    g: None,
                    product: ff.text(),
                    reverse_product: None,
                    trivial: trivial_f,
                    homogeneous: homogeneous_f,
                }
            }
            _ => {
                let g = build(space, &grid, gc, order)?;
                let fg = f.mul(&g)?;
                let gf = g.mul(&f)?;
                let verified = match kind {
                    SearchKind::ZeroDivisors => fg.is_zero(),
                    _ => fg.is_one() && gf.is_one(),
                };
                Witness {
                    verified,
                    f: f.text(),
                    g: Some(g.text()),
                    product: fg.text(),
                    reverse_product: Some(gf.text()),
                    trivial: trivial_f,
                    homogeneous: homogeneous_f,
                }
            }
        };
        if !w.verified {
            return Err(AlgebraError::InvalidArgument(format!("kernel witness failed re-verification: {}", w.f)));
        }
        witnesses.push(w);
    }

    let verdict = match (kind, nontrivial) {
        (SearchKind::ZeroDivisors, 0) => "no-zero-divisors",
        (SearchKind::ZeroDivisors, _) => "zero-divisors-found",
        (SearchKind::Units, 0) => match space.algebra {
            SearchAlgebra::GroupRing(_) => "all-units-trivial",
            SearchAlgebra::CrossedProduct(_) => "all-units-homogeneous",
        },
        (SearchKind::Units, _) => match space.algebra {
            SearchAlgebra::GroupRing(_) => "non-trivial-unit-found",
            SearchAlgebra::CrossedProduct(_) => "non-homogeneous-unit-found",
        },
        (SearchKind::Idempotents, 0) => "only-trivial-idempotents",
        (SearchKind::Idempotents, _) => "non-trivial-idempotent-found",
    };
    Ok(SearchReport {
        kind,
        space: space.descriptor(),
        candidate_count: count as u64,
        enumerated: candidates.len() as u64,
        pairs_checked: checked,
        backend,
        witness_count: hits.len() as u64,
        witnesses,
        nontrivial_count: nontrivial,
        verdict: verdict.into(),
    })
}

/// All ordered pairs of nonzero candidates (f, g) with f•g = 0.
pub fn zero_divisor_search(space: &SearchSpace) -> Result<SearchReport> {
    search(space, SearchKind::ZeroDivisors)
}

/// All pairs of candidates with f•g = g•f = 1, classified as trivial or
/// homogeneous.
pub fn unit_search(space: &SearchSpace) -> Result<SearchReport> {
    search(space, SearchKind::Units)
}

/// All candidates with f•f = f, including 0 and 1.
pub fn idempotent_search(space: &SearchSpace) -> Result<SearchReport> {
    search(space, SearchKind::Idempotents)
}
