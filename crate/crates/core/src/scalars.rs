//! Exact scalars: arbitrary-precision rationals and elements of the cyclotomic
//! fields ℚ(ζ_q).
//!
//! An element of ℚ(ζ_q) is stored as its coefficient vector with respect to the
//! power basis 1, ζ, …, ζ^{φ(q)-1}, i.e. as the unique residue of a polynomial
//! modulo the q-th cyclotomic polynomial. Equality is therefore component-wise.
//! Order 4 gives the Gaussian rationals with ζ_4 = i.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Largest cyclotomic order accepted. Keeps the dense power tables small.
pub const MAX_ORDER: u32 = 2048;

/// Arithmetic tables for ℚ(ζ_q), shared between all scalars of that order.
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    /// Φ_q, lowest degree first; monic.
    modulus: Vec<i64>,
    /// `powers[j]` is ζ^j reduced to the power basis, for j in 0..q.
    powers: Vec<Vec<i64>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

impl CyclotomicField {
    pub fn get(order: u32) -> Result<Arc<CyclotomicField>> {
        if order == 0 || order > MAX_ORDER {
            return Err(AlgebraError::InvalidArgument(format!(
                "cyclotomic order must lie in 1..={MAX_ORDER}, got {order}"
            )));
        }
        static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(field) = cache.read().unwrap().get(&order) {
            return Ok(field.clone());
        }
        let field = Arc::new(Self::build(order));
        cache.write().unwrap().entry(order).or_insert(field.clone());
        Ok(field)
    }

    fn build(order: u32) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        debug_assert_eq!(degree, euler_phi(order));
        let mut powers = Vec::with_capacity(order as usize);
        let mut current = vec![0i64; degree];
        current[0] = 1;
        for _ in 0..order {
            powers.push(current.clone());
            // multiply by x, then subtract top * Φ_q
            let top = current[degree - 1];
            let mut next = vec![0i64; degree];
            next[1..degree].copy_from_slice(&current[..(degree - 1)]);
            if top != 0 {
                for (k, slot) in next.iter_mut().enumerate() {
                    *slot -= top * modulus[k];
                }
            }
            current = next;
        }
        Self { order, degree, modulus, powers }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(q), the dimension of the field over ℚ.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// ζ^j in the power basis.
    pub fn power(&self, j: i64) -> &[i64] {
        &self.powers[j.rem_euclid(self.order as i64) as usize]
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            poly = poly_div_exact(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

/// An element of ℚ(ζ_q).
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl CycScalar {
    pub fn zero(order: u32) -> Self {
        let field = CyclotomicField::get(order).expect("valid cyclotomic order");
        let coeffs = vec![Rational::zero(); field.degree];
        Self { field, coeffs }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u32, value: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn from_int(order: u32, value: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(value.into()))
    }

    /// Builds a scalar from its power-basis coefficients; the length must be φ(q).
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let field = CyclotomicField::get(order)?;
        if coeffs.len() != field.degree {
            return Err(AlgebraError::InvalidArgument(format!(
                "Q(zeta_{order}) has dimension {}, got {} coefficients",
                field.degree,
                coeffs.len()
            )));
        }
        Ok(Self { field, coeffs })
    }

    /// ζ_q^k.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let field = CyclotomicField::get(order).expect("valid cyclotomic order");
        let coeffs = field
            .power(k)
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        Self { field, coeffs }
    }

    /// The Gaussian rational `re + im·i` (order 4).
    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Self::from_coeffs(4, vec![re, im]).expect("order 4 has dimension 2")
    }

    pub fn i() -> Self {
        Self::zeta_pow(4, 1)
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this scalar lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(AlgebraError::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { field: self.field.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let degree = self.field.degree;
        let mut acc = vec![Rational::zero(); degree];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                for (slot, &p) in acc.iter_mut().zip(self.field.power((i + j) as i64)) {
                    match p {
                        0 => {}
                        1 => *slot += &prod,
                        -1 => *slot -= &prod,
                        _ => *slot += &prod * Rational::from_integer(p.into()),
                    }
                }
            }
        }
        Ok(Self { field: self.field.clone(), coeffs: acc })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Image under ζ ↦ ζ^{-1}, i.e. complex conjugation.
    pub fn conj(&self) -> Self {
        self.substitute_power(-1)
    }

    /// Applies the Galois-type substitution ζ ↦ ζ^k (linear extension).
    fn substitute_power(&self, k: i64) -> Self {
        let mut acc = vec![Rational::zero(); self.field.degree];
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (slot, &p) in acc.iter_mut().zip(self.field.power(k * j as i64)) {
                if p != 0 {
                    *slot += a * Rational::from_integer(p.into());
                }
            }
        }
        Self { field: self.field.clone(), coeffs: acc }
    }

    /// Image in ℚ(ζ_target) under ζ_q ↦ ζ_target^{target/q}.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target == self.order() {
            return Ok(self.clone());
        }
        if target % self.order() != 0 {
            return Err(AlgebraError::NotEmbeddable { from: self.order(), to: target });
        }
        let field = CyclotomicField::get(target)?;
        let step = (target / self.order()) as i64;
        let mut acc = vec![Rational::zero(); field.degree];
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (slot, &p) in acc.iter_mut().zip(field.power(step * j as i64)) {
                if p != 0 {
                    *slot += a * Rational::from_integer(p.into());
                }
            }
        }
        Ok(Self { field, coeffs: acc })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in ℚ[x]
    /// against Φ_q.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        let modulus: Vec<Rational> = self
            .field
            .modulus
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        // invariant: t_k * a ≡ r_k (mod Φ_q)
        let mut r0 = modulus.clone();
        let mut r1 = trim(self.coeffs.clone());
        let mut t0: Vec<Rational> = Vec::new();
        let mut t1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (quot, rem) = poly_divrem(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&quot, &t1));
            r0 = std::mem::replace(&mut r1, rem);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // Φ_q is irreducible and deg a < φ(q), so the gcd is a nonzero constant.
        if r0.len() != 1 {
            return Err(AlgebraError::NotInvertible);
        }
        let c = r0[0].recip();
        let mut coeffs = vec![Rational::zero(); self.field.degree];
        let (_, reduced) = poly_divrem(&t0, &modulus);
        for (slot, v) in coeffs.iter_mut().zip(reduced) {
            *slot = v * &c;
        }
        Ok(Self { field: self.field.clone(), coeffs })
    }

    /// |a|² = a · conj(a), an element of the real subfield.
    pub fn norm_squared(&self) -> Self {
        self.try_mul(&self.conj()).expect("same order")
    }

    /// Σ |coefficient|, an upper bound for the complex modulus.
    pub fn triangle_bound(&self) -> Rational {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    let out = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(out)
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    assert!(!den.is_empty(), "polynomial division by zero");
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = den.last().unwrap().recip();
    let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() {
        let shift = rem.len() - den.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (j, d) in den.iter().enumerate() {
            rem[shift + j] -= &c * d;
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CycScalar {}

impl Hash for CycScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (order {})", self.order())
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = match (self.order(), k) {
                (_, 0) => String::new(),
                (4, 1) => "i".to_string(),
                (q, 1) => format!("z{q}"),
                (q, k) => format!("z{q}^{k}"),
            };
            let term = if basis.is_empty() {
                fmt_rational(c)
            } else if c.is_one() {
                basis
            } else if (-c).is_one() {
                format!("-{basis}")
            } else {
                format!("{}*{basis}", fmt_rational(c))
            };
            parts.push(term);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        if parts.len() > 1 {
            write!(f, "({out})")
        } else {
            write!(f, "{out}")
        }
    }
}

// Operator forms panic on order mismatch; use the `try_*` methods at API
// boundaries where the orders are not already known to agree.
impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.try_add(rhs).expect("scalar order mismatch")
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.try_sub(rhs).expect("scalar order mismatch")
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.try_mul(rhs).expect("scalar order mismatch")
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Rational square-root bounds: returns `(lower, upper, exact)` with
/// `lower ≤ √r ≤ upper` and `upper - lower ≤ 10^-digits`, and `exact` set when
/// r is the square of a rational.
pub fn sqrt_bounds(r: &Rational, digits: u32) -> (Rational, Rational, Option<Rational>) {
    assert!(!r.is_negative(), "square root of a negative rational");
    let (n, d) = (r.numer().clone(), r.denom().clone());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &sn * &sn == n && &sd * &sd == d {
        let exact = Rational::new(sn, sd);
        return (exact.clone(), exact.clone(), Some(exact));
    }
    // √(n/d) = √(n·d)/d
    let scale = BigInt::from(10u32).pow(digits);
    let radicand = &n * &d * &scale * &scale;
    let floor = radicand.sqrt();
    let denom = &d * &scale;
    let lower = Rational::new(floor.clone(), denom.clone());
    let upper = Rational::new(floor + 1, denom);
    (lower, upper, None)
}

/// Decimal rendering of a rational rounded up at `digits` places.
pub fn decimal_ceil(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let ceil = scaled.ceil().to_integer();
    let (int, frac) = ceil.div_mod_floor(&scale);
    if digits == 0 {
        return int.to_string();
    }
    let frac = frac.to_u64().map(|f| f.to_string()).unwrap_or_else(|| frac.to_string());
    format!("{int}.{frac:0>width$}", width = digits as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3(a: i64, b: i64) -> CycScalar {
        CycScalar::from_coeffs(3, vec![rat(a, 1), rat(b, 1)]).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for q in 1..60 {
            assert_eq!(cyclotomic_polynomial(q).len() - 1, euler_phi(q));
        }
    }

    #[test]
    fn gaussian_addition_and_product() {
        let one = CycScalar::one(4);
        let i = CycScalar::i();
        assert_eq!(&one + &i, CycScalar::gaussian(rat(1, 1), rat(1, 1)));
        assert_eq!(&i * &i, CycScalar::from_int(4, -1));
        let a = CycScalar::gaussian(rat(3, 2), rat(-7, 5));
        assert_eq!(&a + &CycScalar::zero(4), a);
        assert_eq!(&a * &one, a);
    }

    #[test]
    fn order_three_reduction() {
        // ζ + ζ² = -1
        let zeta = CycScalar::zeta_pow(3, 1);
        let zeta2 = CycScalar::zeta_pow(3, 2);
        assert_eq!(zeta2, z3(-1, -1));
        assert_eq!(&zeta + &zeta2, CycScalar::from_int(3, -1));
        assert_eq!(&zeta * &zeta, z3(-1, -1));
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let a = CycScalar::one(4);
        let b = CycScalar::one(3);
        assert_eq!(a.try_add(&b), Err(AlgebraError::OrderMismatch(4, 3)));
        assert_eq!(a.try_mul(&b), Err(AlgebraError::OrderMismatch(4, 3)));
    }

    #[test]
    fn conjugation() {
        assert_eq!(CycScalar::i().conj(), -&CycScalar::i());
        let r = CycScalar::from_rational(4, rat(3, 2));
        assert_eq!(r.conj(), r);
        assert_eq!(CycScalar::zeta_pow(3, 1).conj(), CycScalar::zeta_pow(3, 2));
    }

    #[test]
    fn inverses() {
        assert_eq!(CycScalar::i().inverse().unwrap(), -&CycScalar::i());
        assert_eq!(
            CycScalar::from_int(4, 2).inverse().unwrap(),
            CycScalar::from_rational(4, rat(1, 2))
        );
        // (1 + ζ₃)⁻¹ = -ζ₃
        assert_eq!(z3(1, 1).inverse().unwrap(), z3(0, -1));
        assert_eq!(CycScalar::zero(5).inverse(), Err(AlgebraError::NotInvertible));
    }

    #[test]
    fn embedding_respects_arithmetic() {
        let a = z3(2, -1);
        let b = z3(1, 3);
        let prod = (&a * &b).embed(6).unwrap();
        assert_eq!(prod, &a.embed(6).unwrap() * &b.embed(6).unwrap());
        assert_eq!(CycScalar::i().embed(12).unwrap(), CycScalar::zeta_pow(12, 3));
        assert!(CycScalar::i().embed(6).is_err());
    }

    #[test]
    fn sqrt_and_decimal() {
        let (lo, hi, exact) = sqrt_bounds(&rat(49, 4), 10);
        assert_eq!(exact, Some(rat(7, 2)));
        assert_eq!(lo, hi);
        let (lo, hi, exact) = sqrt_bounds(&rat(2, 1), 10);
        assert!(exact.is_none());
        assert!(&lo * &lo < rat(2, 1) && &hi * &hi > rat(2, 1));
        assert_eq!(decimal_ceil(&rat(7, 1), 3), "7.000");
        assert_eq!(decimal_ceil(&rat(1, 3), 3), "0.334");
    }

    #[test]
    fn display() {
        assert_eq!(CycScalar::gaussian(rat(3, 1), rat(-4, 1)).to_string(), "(3 - 4*i)");
        assert_eq!(CycScalar::i().to_string(), "i");
        assert_eq!(CycScalar::zero(4).to_string(), "0");
        assert_eq!(CycScalar::from_rational(4, rat(-1, 2)).to_string(), "-1/2");
    }
}
