//! Truncated power series in `ħ`, the target of `q ↦ exp(ħ)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{CycScalar, ExactError, LaurentQ};

/// `Σ_{k ≤ N} c_k ħ^k`. Products and sums truncate at the smaller order.
#[derive(Clone, PartialEq, Eq)]
pub struct HbarSeries {
    coeffs: Vec<CycScalar>,
}

impl HbarSeries {
    pub fn zero(order: usize) -> Self {
        HbarSeries {
            coeffs: vec![CycScalar::zero(); order + 1],
        }
    }

    pub fn constant(c: CycScalar, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(coeffs: Vec<CycScalar>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least a constant term");
        HbarSeries { coeffs }
    }

    /// `exp(k ħ)` truncated at `ħ^order`.
    pub fn exp_multiple(k: i64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = BigRational::one();
        let k = BigRational::from_integer(BigInt::from(k));
        for j in 0..=order {
            if j > 0 {
                term = term * &k / BigRational::from_integer(BigInt::from(j));
            }
            coeffs.push(CycScalar::from_rational(term.clone()));
        }
        HbarSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &CycScalar {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[CycScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycScalar::is_zero)
    }

    /// Index of the first non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        HbarSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        HbarSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Division by a series with non-zero constant term.
    pub fn checked_div(&self, rhs: &HbarSeries) -> Result<HbarSeries, ExactError> {
        let order = self.order().min(rhs.order());
        let inv0 = rhs.coeffs[0].inv()?;
        let mut out: Vec<CycScalar> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &(&rhs.coeffs[j] * &out[k - j]);
            }
            out.push(&acc * &inv0);
        }
        Ok(HbarSeries { coeffs: out })
    }
}

/// Substitutes `q = exp(ħ)` into `f` and truncates at `ħ^order`: the
/// coefficient of `ħ^k` is `Σ_j f_j j^k / k!`.
pub fn expand_exp(f: &LaurentQ, order: usize) -> HbarSeries {
    let mut coeffs = vec![CycScalar::zero(); order + 1];
    for (j, c) in f.terms() {
        let e = HbarSeries::exp_multiple(j, order);
        for (slot, t) in coeffs.iter_mut().zip(e.coeffs) {
            *slot += &(c * &t);
        }
    }
    HbarSeries { coeffs }
}

impl Add<&HbarSeries> for &HbarSeries {
    type Output = HbarSeries;
    fn add(self, rhs: &HbarSeries) -> HbarSeries {
        let order = self.order().min(rhs.order());
        HbarSeries {
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub<&HbarSeries> for &HbarSeries {
    type Output = HbarSeries;
    fn sub(self, rhs: &HbarSeries) -> HbarSeries {
        let order = self.order().min(rhs.order());
        HbarSeries {
            coeffs: (0..=order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul<&HbarSeries> for &HbarSeries {
    type Output = HbarSeries;
    fn mul(self, rhs: &HbarSeries) -> HbarSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| {
                (0..=k)
                    .filter(|&i| !self.coeffs[i].is_zero() && !rhs.coeffs[k - i].is_zero())
                    .map(|i| &self.coeffs[i] * &rhs.coeffs[k - i])
                    .sum()
            })
            .collect();
        HbarSeries { coeffs }
    }
}

impl Neg for &HbarSeries {
    type Output = HbarSeries;
    fn neg(self) -> HbarSeries {
        HbarSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})h^{k}"))
            .collect();
        write!(f, "HbarSeries[{}; O(h^{})]", parts.join(" + "), self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> CycScalar {
        CycScalar::from_ratio(n, d)
    }

    #[test]
    fn q_expands_to_exponential() {
        let s = expand_exp(&LaurentQ::q(), 2);
        assert_eq!(s.coeffs(), &[rat(1, 1), rat(1, 1), rat(1, 2)]);
    }

    #[test]
    fn constant_expands_to_constant() {
        let s = expand_exp(&LaurentQ::one(), 5);
        assert!(s.coeff(0).is_one());
        assert!(s.coeffs()[1..].iter().all(CycScalar::is_zero));
    }

    #[test]
    fn q_inverse_minus_q() {
        // Oracle: term-by-term, ((-1)^k - 1)/k! gives 0, -2, 0, -2/6.
        let f = LaurentQ::q().shift(-2) - LaurentQ::q();
        let s = expand_exp(&f, 3);
        assert_eq!(s.coeffs(), &[rat(0, 1), rat(-2, 1), rat(0, 1), rat(-1, 3)]);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = expand_exp(&LaurentQ::from_ints(&[1, 2, 3]), 6);
        let b = expand_exp(&LaurentQ::from_ints(&[2, 0, -1, 1]), 6);
        let c = (&a * &b).checked_div(&b).unwrap();
        assert_eq!(c, a);
        assert!(a.checked_div(&HbarSeries::zero(6)).is_err());
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = HbarSeries::exp_multiple(1, 3);
        let b = HbarSeries::exp_multiple(1, 5);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a * &b), HbarSeries::exp_multiple(2, 3));
    }
}
