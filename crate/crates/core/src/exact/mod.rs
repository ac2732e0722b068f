//! The exact scalar tower: rationals, cyclotomic numbers, Laurent
//! polynomials in `q` and truncated power series in `ħ`.

mod cyclotomic;
pub mod laurent;
pub mod linalg;
pub mod literal;
pub mod series;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycScalar, MAX_CONDUCTOR};
pub use laurent::LaurentQ;
pub use linalg::{Subspace, Vector};
pub use literal::{format_literal, format_literal_in, parse_literal};
pub use series::{expand_exp, HbarSeries};

pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {conductor} exceeds the supported bound {bound}")]
    ConductorOverflow { conductor: u64, bound: u32 },
    #[error("cannot embed conductor {from} into conductor {to}")]
    IncompatibleConductor { from: u32, to: u32 },
    #[error("division leaves a non-zero remainder")]
    Inexact,
    #[error("literal parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn scalar(m: u32) -> impl Strategy<Value = CycScalar> {
        prop::collection::vec(-6i64..6, 1..8).prop_map(move |v| {
            let coeffs = v.into_iter().map(|c| BigRational::from_integer(c.into())).collect();
            CycScalar::from_coeffs(m, coeffs).unwrap()
        })
    }

    fn laurent() -> impl Strategy<Value = LaurentQ> {
        (prop::collection::vec(-4i64..4, 0..5), -3i64..3)
            .prop_map(|(v, s)| LaurentQ::from_ints(&v).shift(s))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn inverse_is_exact(m in prop::sample::select(vec![1u32, 3, 4, 5, 8, 12, 15]), x in scalar(12)) {
            let x = x.lift(12 * m / num_integer::gcd(12, m)).unwrap();
            prop_assume!(!x.is_zero());
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }

        #[test]
        fn mixed_conductors_agree_with_lifting(x in scalar(8), r in -5i64..5, y in scalar(3)) {
            let q = CycScalar::from_integer(r);
            let (x24, y24) = (x.lift(24).unwrap(), y.lift(24).unwrap());
            prop_assert_eq!(&x * &q, &x24 * &q.lift(24).unwrap());
            prop_assert_eq!(&q * &x, &x * &q);
            prop_assert_eq!(&x + &q, &x24 + &q.lift(24).unwrap());
            prop_assert_eq!(&x * &y, &x24 * &y24);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            let mut acc = x.clone();
            acc -= &q;
            acc += &q;
            prop_assert_eq!(acc, x);
        }

        #[test]
        fn embedding_then_restricting_is_identity(x in scalar(6), k in 1u32..6) {
            let up = x.lift(6 * k).unwrap();
            let back = up.restrict(6).unwrap();
            prop_assert_eq!(back.coeffs(), x.coeffs());
        }

        #[test]
        fn expansion_is_multiplicative(f in laurent(), g in laurent(), n in 0usize..6) {
            let lhs = expand_exp(&(&f * &g), n);
            let rhs = &expand_exp(&f, n) * &expand_exp(&g, n);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn constant_term_is_value_at_one(f in laurent(), n in 0usize..4) {
            prop_assert_eq!(expand_exp(&f, n).coeff(0).clone(), f.eval_at_one());
        }
    }
}
