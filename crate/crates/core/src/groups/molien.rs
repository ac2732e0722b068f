use crate::exact::{CycScalar, LaurentQ};

use super::{GroupError, ReflGroup};

/// Power series of `1/p(q)` to `q^len` for `p(0) = 1`.
fn inverse_series(p: &[CycScalar], len: usize) -> Vec<CycScalar> {
    let mut out = vec![CycScalar::zero(); len + 1];
    out[0] = CycScalar::one();
    for k in 1..=len {
        let mut acc = CycScalar::zero();
        for (j, c) in p.iter().enumerate().skip(1).take(k) {
            if !c.is_zero() {
                acc -= &(c * &out[k - j]);
            }
        }
        out[k] = acc;
    }
    out
}

/// Extracts the degrees from the truncated Molien series
/// `(1/|W|) Σ_w 1/det(1 - q w)` and then checks the factorization exactly.
pub(super) fn invariant_degrees(g: &ReflGroup) -> Result<Vec<u32>, GroupError> {
    let order = g.order();
    let len = order;
    let mut series = vec![CycScalar::zero(); len + 1];
    for (c, class) in g.classes().iter().enumerate() {
        let det = g.det_one_minus_q(c);
        let coeffs: Vec<CycScalar> = (0..=g.dim() as i64).map(|k| det.coeff(k)).collect();
        let weight = CycScalar::from_ratio(class.size() as i64, order as i64);
        for (slot, t) in series.iter_mut().zip(inverse_series(&coeffs, len)) {
            *slot += &(&t * &weight);
        }
    }

    let fail = |msg: String| Err(GroupError::DegreeExtraction(msg));
    let mut degrees = Vec::new();
    while degrees.len() < g.dim() {
        let Some(d) = (1..=len).find(|&k| !series[k].is_zero()) else {
            return fail(format!("series exhausted after degrees {degrees:?}"));
        };
        let Some(mult) = series[d].to_i64().filter(|&m| m > 0) else {
            return fail(format!("coefficient of q^{d} is not a positive integer"));
        };
        for _ in 0..mult {
            degrees.push(d as u32);
            for k in (d..=len).rev() {
                let lower = series[k - d].clone();
                series[k] -= &lower;
            }
        }
    }

    if degrees.len() != g.dim() {
        return fail(format!("found {} degrees in dimension {}", degrees.len(), g.dim()));
    }
    let product: usize = degrees.iter().map(|&d| d as usize).product();
    if product != order {
        return fail(format!("product of degrees {product} differs from |W| = {order}"));
    }
    let reflections = g.reflections().len();
    let expected: usize = degrees.iter().map(|&d| d as usize - 1).sum();
    if reflections != expected {
        return fail(format!(
            "{reflections} reflections but the degrees predict {expected}"
        ));
    }
    // Exact rational identity: Σ_C |C| ∏(1 - q^{d_i}) / det(1 - q w) = |W|.
    let numerator = degrees
        .iter()
        .fold(LaurentQ::one(), |acc, &d| &acc * &LaurentQ::one_minus_q_pow(d as i64));
    let mut total = LaurentQ::zero();
    for (c, class) in g.classes().iter().enumerate() {
        let Ok(quot) = numerator.div_exact(&g.det_one_minus_q(c)) else {
            return fail(format!("det(1 - q w) does not divide the degree product on class {c}"));
        };
        total = &total + &quot.scale(&CycScalar::from_integer(class.size() as i64));
    }
    if total != LaurentQ::constant(CycScalar::from_integer(order as i64)) {
        return fail("Molien identity fails for the extracted degrees".into());
    }
    Ok(degrees)
}
