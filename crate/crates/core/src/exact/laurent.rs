//! Laurent polynomials in `q` with cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{CycScalar, ExactError};

/// A finite sum `Σ c_k q^k`, `k ∈ Z`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentQ {
    terms: BTreeMap<i64, CycScalar>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ::default()
    }

    pub fn one() -> Self {
        Self::constant(CycScalar::one())
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(CycScalar::one(), 1)
    }

    pub fn constant(c: CycScalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: CycScalar, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentQ { terms }
    }

    /// Builds `Σ coeffs[i] q^i` from integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| Self::monomial(CycScalar::from_integer(c), i as i64))
            .fold(Self::zero(), |a, b| a + b)
    }

    /// `1 - q^d`.
    pub fn one_minus_q_pow(d: i64) -> Self {
        Self::one() - Self::monomial(CycScalar::one(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> CycScalar {
        self.terms.get(&exp).cloned().unwrap_or_else(CycScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycScalar)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentQ {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentQ {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> CycScalar {
        self.terms.values().sum()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a
    /// remainder or the divisor is zero.
    pub fn div_exact(&self, divisor: &LaurentQ) -> Result<LaurentQ, ExactError> {
        let (Some(dlo), Some(dhi)) = (divisor.min_degree(), divisor.max_degree()) else {
            return Err(ExactError::DivisionByZero);
        };
        let lead_inv = divisor.terms[&dhi].inv()?;
        let mut rem = self.clone();
        let mut quot = LaurentQ::zero();
        while let Some(hi) = rem.max_degree() {
            let lo = rem.min_degree().unwrap();
            // Once the remainder is shorter than the divisor it cannot vanish.
            if hi - lo < dhi - dlo {
                return Err(ExactError::Inexact);
            }
            let c = &rem.terms[&hi] * &lead_inv;
            let k = hi - dhi;
            for (e, d) in divisor.terms() {
                rem.add_term(e + k, &-(&c * d));
            }
            quot.add_term(k, &c);
        }
        Ok(quot)
    }
}

impl Add<&LaurentQ> for &LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub<&LaurentQ> for &LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, &-c);
        }
        out
    }
}

impl Mul<&LaurentQ> for &LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<LaurentQ> for LaurentQ {
            type Output = LaurentQ;
            fn $method(self, rhs: LaurentQ) -> LaurentQ {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentQ> for LaurentQ {
            type Output = LaurentQ;
            fn $method(self, rhs: &LaurentQ) -> LaurentQ {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        -&self
    }
}

impl std::iter::Sum for LaurentQ {
    fn sum<I: Iterator<Item = LaurentQ>>(iter: I) -> Self {
        iter.fold(LaurentQ::zero(), |a, b| a + b)
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let (neg, body) = match c.to_rational() {
                Some(r) if r < num_rational::BigRational::from_integer(0.into()) => {
                    (true, (-r).to_string())
                }
                Some(r) => (false, r.to_string()),
                None => (false, format!("({c})")),
            };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let unit = body == "1";
            match e {
                0 => f.write_str(&body)?,
                _ => {
                    if !unit {
                        write!(f, "{body}*")?;
                    }
                    if e == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentQ({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        // (1 - q^4)(1 - q^6) / (1 - q)^2 has no remainder.
        let num = LaurentQ::one_minus_q_pow(4) * LaurentQ::one_minus_q_pow(6);
        let den = LaurentQ::one_minus_q_pow(1).pow(2);
        let quot = num.div_exact(&den).unwrap();
        assert_eq!(&quot * &den, num);
        assert_eq!(quot.eval_at_one(), CycScalar::from_integer(24));
        assert_eq!(
            LaurentQ::one_minus_q_pow(2).div_exact(&LaurentQ::one_minus_q_pow(3)),
            Err(ExactError::Inexact)
        );
        assert_eq!(LaurentQ::one().div_exact(&LaurentQ::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn laurent_division_with_negative_powers() {
        let f = LaurentQ::q().shift(-3) - LaurentQ::q();
        let g = LaurentQ::one() + LaurentQ::q();
        let h = (&f * &g).div_exact(&g).unwrap();
        assert_eq!(h, f);
    }

    #[test]
    fn display() {
        let f = LaurentQ::from_ints(&[1, -2, 0, 3]).shift(-1);
        assert_eq!(f.to_string(), "q^-1 - 2 + 3*q^2");
        assert_eq!(LaurentQ::zero().to_string(), "0");
    }
}
