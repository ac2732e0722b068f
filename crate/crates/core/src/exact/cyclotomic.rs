//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! An element is stored as a coefficient vector in the power basis
//! `1, ζ_m, …, ζ_m^{φ(m)-1}` after reduction modulo the `m`-th cyclotomic
//! polynomial `Φ_m`. Because `Φ_m` is the minimal polynomial of `ζ_m`, two
//! elements of the same conductor are equal exactly when their coefficient
//! vectors are equal. Elements of different conductors are compared after
//! embedding both into `Q(ζ_lcm)`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Largest conductor supported by the cyclotomic polynomial table.
pub const MAX_CONDUCTOR: u32 = 120;

fn cyclotomic_table() -> &'static [Vec<i64>] {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let bound = MAX_CONDUCTOR as usize;
        let mut table: Vec<Vec<i64>> = vec![Vec::new(); bound + 1];
        for m in 1..=bound {
            // x^m - 1 divided by every Φ_d with d | m, d < m.
            let mut num = vec![0i64; m + 1];
            num[0] = -1;
            num[m] = 1;
            for (d, phi_d) in table.iter().enumerate().take(m).skip(1) {
                if m.is_multiple_of(d) {
                    num = divide_monic_int(&num, phi_d);
                }
            }
            table[m] = num;
        }
        table
    })
}

fn divide_monic_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = num.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Coefficients of `Φ_m`, lowest degree first. Panics above [`MAX_CONDUCTOR`].
pub fn cyclotomic_polynomial(m: u32) -> &'static [i64] {
    assert!((1..=MAX_CONDUCTOR).contains(&m), "conductor {m} out of range");
    &cyclotomic_table()[m as usize]
}

/// Euler's totient, which is also `deg Φ_m`.
pub fn euler_phi(m: u32) -> usize {
    let mut result = m as u64;
    let mut n = m as u64;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
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

fn check_conductor(m: u64) -> Result<u32, ExactError> {
    if m == 0 || m > MAX_CONDUCTOR as u64 {
        return Err(ExactError::ConductorOverflow {
            conductor: m,
            bound: MAX_CONDUCTOR,
        });
    }
    Ok(m as u32)
}

/// Reduces an arbitrary-length polynomial modulo `Φ_m` in place and
/// truncates it to `φ(m)` coefficients.
fn reduce(m: u32, mut poly: Vec<BigRational>) -> Vec<BigRational> {
    let phi_poly = cyclotomic_polynomial(m);
    let deg = phi_poly.len() - 1;
    if poly.len() > deg {
        for k in (deg..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[k], BigRational::zero());
            for (i, &p) in phi_poly[..deg].iter().enumerate() {
                if p != 0 {
                    poly[k - deg + i] -= &c * BigRational::from_integer(BigInt::from(p));
                }
            }
        }
    }
    poly.resize(deg, BigRational::zero());
    poly
}

/// Integer numerators over the least common denominator.
fn integer_form(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) });
    let nums = coeffs
        .iter()
        .map(|c| {
            if c.denom().is_one() {
                c.numer() * &den
            } else {
                c.numer() * (&den / c.denom())
            }
        })
        .collect();
    (nums, den)
}

fn reduce_integer(m: u32, mut poly: Vec<BigInt>) -> Vec<BigInt> {
    let phi_poly = cyclotomic_polynomial(m);
    let deg = phi_poly.len() - 1;
    if poly.len() > deg {
        for k in (deg..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[k]);
            for (i, &p) in phi_poly[..deg].iter().enumerate() {
                if p != 0 {
                    poly[k - deg + i] -= &c * p;
                }
            }
        }
    }
    poly.resize(deg, BigInt::zero());
    poly
}

/// An exact element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct CycScalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycScalar {
    /// Builds an element from power-basis coefficients, reducing modulo `Φ_m`.
    /// Extra coefficients beyond `φ(m)` are allowed and folded in.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<BigRational>) -> Result<Self, ExactError> {
        let m = check_conductor(conductor as u64)?;
        Ok(CycScalar {
            conductor: m,
            coeffs: reduce(m, coeffs),
        })
    }

    pub fn zero() -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn root_of_unity(m: u32, k: i64) -> Result<Self, ExactError> {
        let m = check_conductor(m as u64)?;
        let e = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Ok(CycScalar {
            conductor: m,
            coeffs: reduce(m, poly),
        })
    }

    /// The primitive root `ζ_m = exp(2πi/m)`.
    pub fn zeta(m: u32) -> Result<Self, ExactError> {
        Self::root_of_unity(m, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The value as a machine integer, if it is one and fits.
    pub fn to_i64(&self) -> Option<i64> {
        let r = self.to_rational()?;
        if !r.is_integer() {
            return None;
        }
        i64::try_from(r.to_integer()).ok()
    }

    /// Embeds into `Q(ζ_target)`; `target` must be a multiple of the conductor.
    pub fn lift(&self, target: u32) -> Result<Self, ExactError> {
        if target == self.conductor {
            return Ok(self.clone());
        }
        let target = check_conductor(target as u64)?;
        if target % self.conductor != 0 {
            return Err(ExactError::IncompatibleConductor {
                from: self.conductor,
                to: target,
            });
        }
        let step = (target / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(CycScalar {
            conductor: target,
            coeffs: reduce(target, poly),
        })
    }

    fn common_conductor(&self, other: &Self) -> Result<u32, ExactError> {
        if self.conductor == other.conductor {
            return Ok(self.conductor);
        }
        check_conductor((self.conductor as u64).lcm(&(other.conductor as u64)))
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self), ExactError> {
        let m = self.common_conductor(other)?;
        Ok((self.lift(m)?, other.lift(m)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        if self.conductor == other.conductor {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return Ok(CycScalar {
                conductor: self.conductor,
                coeffs,
            });
        }
        // A rational operand only touches the constant coefficient.
        if other.conductor == 1 {
            let mut out = self.clone();
            out.coeffs[0] += &other.coeffs[0];
            return Ok(out);
        }
        if self.conductor == 1 {
            return other.checked_add(self);
        }
        let (a, b) = self.aligned(other)?;
        a.checked_add(&b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.is_zero() || other.is_zero() {
            return Ok(CycScalar::zero());
        }
        // Rational scalars skip the convolution.
        if other.conductor == 1 || (self.conductor == other.conductor && other.to_rational().is_some()) {
            return Ok(self.scale(&other.coeffs[0]));
        }
        if self.conductor == 1 || (self.conductor == other.conductor && self.to_rational().is_some()) {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if self.conductor != other.conductor {
            let (a, b) = self.aligned(other)?;
            return a.checked_mul(&b);
        }
        // Convolve integer numerators over a common denominator, then reduce
        // modulo the monic integer polynomial Φ_m.
        let (an, ad) = integer_form(&self.coeffs);
        let (bn, bd) = integer_form(&other.coeffs);
        let n = an.len();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in an.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in bn.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let den = ad * bd;
        let coeffs = reduce_integer(self.conductor, prod)
            .into_iter()
            .map(|c| {
                if c.is_zero() {
                    BigRational::zero()
                } else {
                    BigRational::new(c, den.clone())
                }
            })
            .collect();
        Ok(CycScalar {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_mul(&other.inv()?)
    }

    /// Multiplies by a rational number.
    pub fn scale(&self, r: &BigRational) -> Self {
        CycScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Applies the Galois automorphism `ζ_m ↦ ζ_m^j`; `j` must be coprime to
    /// the conductor.
    pub fn galois(&self, j: i64) -> Self {
        let m = self.conductor as i64;
        debug_assert!(m == 1 || j.rem_euclid(m).gcd(&m) == 1);
        let mut poly = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = ((i as i64) * j).rem_euclid(m) as usize;
            poly[e] += c;
        }
        CycScalar {
            conductor: self.conductor,
            coeffs: reduce(self.conductor, poly),
        }
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Field norm down to `Q`, the product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let m = self.conductor as i64;
        let mut acc = self.clone();
        for j in 2..m.max(2) {
            if j.gcd(&m) == 1 {
                acc = &acc * &self.galois(j);
            }
        }
        acc.to_rational().expect("norm of a cyclotomic number is rational")
    }

    /// Multiplicative inverse as the product of the non-trivial conjugates
    /// divided by the norm.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(CycScalar::from_rational(r.recip()).lift(self.conductor).unwrap());
        }
        let m = self.conductor as i64;
        let mut cofactor = CycScalar::one();
        for j in 2..m {
            if j.gcd(&m) == 1 {
                cofactor = &cofactor * &self.galois(j);
            }
        }
        let norm = (self * &cofactor)
            .to_rational()
            .expect("norm of a cyclotomic number is rational");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycScalar::one().lift(self.conductor)?;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Tries to write the element in `Q(ζ_target)` for a divisor `target` of
    /// the conductor.
    pub fn restrict(&self, target: u32) -> Option<Self> {
        if target == 0 || !self.conductor.is_multiple_of(target) {
            return None;
        }
        if target == self.conductor {
            return Some(self.clone());
        }
        let d = euler_phi(target);
        // Columns: images of 1, ζ_t, …, ζ_t^{d-1}; solve for the coefficients.
        let cols: Vec<CycScalar> = (0..d)
            .map(|i| {
                CycScalar::root_of_unity(target, i as i64)
                    .and_then(|z| z.lift(self.conductor))
                    .expect("divisor conductor")
            })
            .collect();
        let rows = self.coeffs.len();
        let mut aug: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coeffs[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let solution = solve_rational(&mut aug, d)?;
        Some(CycScalar {
            conductor: target,
            coeffs: solution,
        })
    }

    /// The same value written over the smallest conductor containing it.
    pub fn normalized(&self) -> Self {
        let m = self.conductor;
        for d in 1..m {
            if m.is_multiple_of(d) {
                if let Some(r) = self.restrict(d) {
                    return r;
                }
            }
        }
        self.clone()
    }

    /// Deterministic total order: lexicographic on the coefficient vectors
    /// after embedding into the common conductor. It carries no arithmetic
    /// meaning and exists for canonical sorting.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        match self.aligned(other) {
            Ok((a, b)) => a.coeffs.cmp(&b.coeffs),
            Err(_) => self
                .conductor
                .cmp(&other.conductor)
                .then_with(|| self.coeffs.cmp(&other.coeffs)),
        }
    }
}

/// Gaussian elimination on an augmented rational matrix; returns the unique
/// solution of the first `unknowns` columns or `None` if inconsistent.
fn solve_rational(aug: &mut [Vec<BigRational>], unknowns: usize) -> Option<Vec<BigRational>> {
    let rows = aug.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(p) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, p);
        let inv = aug[pivot_row][col].recip();
        for x in &mut aug[pivot_row][col..=unknowns] {
            *x = &*x * &inv;
        }
        let pivot: Vec<BigRational> = aug[pivot_row][col..=unknowns].to_vec();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..=unknowns].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if aug[pivot_row..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = aug[r][unknowns].clone();
    }
    Some(sol)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        match self.aligned(other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", super::literal::format_literal(self), self.conductor)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::literal::format_literal(self))
    }
}

impl From<i64> for CycScalar {
    fn from(n: i64) -> Self {
        CycScalar::from_integer(n)
    }
}

impl From<BigRational> for CycScalar {
    fn from(r: BigRational) -> Self {
        CycScalar::from_rational(r)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

// Operator forms panic when the merged conductor exceeds MAX_CONDUCTOR or on
// division by zero; use the checked_* methods to get an error instead.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else if rhs.conductor == 1 {
            self.coeffs[0] += &rhs.coeffs[0];
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else if rhs.conductor == 1 {
            self.coeffs[0] -= &rhs.coeffs[0];
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycScalar> for CycScalar {
    fn mul_assign(&mut self, rhs: &CycScalar) {
        *self = &*self * rhs;
    }
}

impl Sum for CycScalar {
    fn sum<I: Iterator<Item = CycScalar>>(iter: I) -> Self {
        iter.fold(CycScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a CycScalar> for CycScalar {
    fn sum<I: Iterator<Item = &'a CycScalar>>(iter: I) -> Self {
        iter.fold(CycScalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for CycScalar {
    fn product<I: Iterator<Item = CycScalar>>(iter: I) -> Self {
        iter.fold(CycScalar::one(), |acc, x| acc * x)
    }
}

/// Sign helper used by the literal printer.
pub(crate) fn is_negative(r: &BigRational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycScalar {
        CycScalar::root_of_unity(m, k).unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), &[-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), &[1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), &[1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).contains(&-2));
        for m in 1..=MAX_CONDUCTOR {
            assert_eq!(cyclotomic_polynomial(m).len() - 1, euler_phi(m));
        }
    }

    #[test]
    fn zeta3_sum_is_minus_one() {
        assert_eq!(z(3, 1) + z(3, 2), CycScalar::from_integer(-1));
    }

    #[test]
    fn norm_of_one_plus_two_zeta3() {
        let a = CycScalar::one() + z(3, 1).scale(&BigRational::from_integer(2.into()));
        let b = CycScalar::one() + z(3, 2).scale(&BigRational::from_integer(2.into()));
        // Oracle: (1+2x)(1+2x^2) = 1 + 2x + 2x^2 + 4x^3 in Q[x]/(x^2+x+1),
        // where x^3 = 1 and x^2 = -1 - x, gives 1 + 2x + 2(-1-x) + 4 = 3.
        assert_eq!(&a * &b, CycScalar::from_integer(3));
        assert_eq!(a.norm(), BigRational::from_integer(3.into()));
    }

    #[test]
    fn i_squared() {
        assert_eq!(z(4, 1) * z(4, 1), CycScalar::from_integer(-1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            CycScalar::one().checked_div(&CycScalar::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn conductor_overflow_is_an_error() {
        let a = z(11, 1);
        let b = z(13, 1);
        assert!(matches!(
            a.checked_add(&b),
            Err(ExactError::ConductorOverflow { conductor: 143, .. })
        ));
        assert!(CycScalar::zeta(121).is_err());
    }

    #[test]
    fn mixed_conductor_equality() {
        assert_eq!(z(3, 1), z(12, 4));
        assert_eq!(z(2, 1), CycScalar::from_integer(-1));
        assert_ne!(z(3, 1), z(3, 2));
    }

    #[test]
    fn normalization_finds_smallest_field() {
        let x = z(3, 1).lift(60).unwrap();
        let n = x.normalized();
        assert_eq!(n.conductor(), 3);
        assert_eq!(n.coeffs(), z(3, 1).coeffs());
        assert_eq!(z(8, 1).normalized().conductor(), 8);
        assert_eq!((z(8, 1) * z(8, 1)).normalized().conductor(), 4);
    }

    #[test]
    fn inverse_round_trip() {
        let x = CycScalar::from_integer(3) + z(7, 2) - z(7, 5).scale(&BigRational::new(2.into(), 5.into()));
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(z(5, 2).pow(-3).unwrap(), z(5, 4));
    }
}
