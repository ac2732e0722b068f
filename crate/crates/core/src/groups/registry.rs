//! Built-in groups: `Cyc1`..`Cyc12` (μ_d acting on ℂ), `G(d,1,2)` for
//! `d ≤ 4`, `S3` on its reflection representation, and `G4`.

use crate::exact::CycScalar;

use super::{GroupBuilder, GroupError, Matrix, ReflGroup, DEFAULT_MAX_ORDER};

pub fn names() -> Vec<String> {
    let mut out: Vec<String> = (1..=12).map(|d| format!("Cyc{d}")).collect();
    out.extend((1..=4).map(|d| format!("G({d},1,2)")));
    out.push("S3".into());
    out.push("G4".into());
    out
}

fn int(n: i64) -> CycScalar {
    CycScalar::from_integer(n)
}

fn rows(r: Vec<Vec<CycScalar>>) -> Matrix {
    Matrix::from_rows(r).expect("square")
}

/// Generator matrices of a registered group.
pub fn generators(name: &str) -> Result<Vec<Matrix>, GroupError> {
    let unknown = || GroupError::UnknownGroup(name.to_string());
    if let Some(d) = name.strip_prefix("Cyc") {
        let d: u32 = d.parse().map_err(|_| unknown())?;
        if !(1..=12).contains(&d) {
            return Err(unknown());
        }
        if d == 1 {
            return Ok(Vec::new());
        }
        return Ok(vec![Matrix::diagonal(vec![CycScalar::zeta(d)?])]);
    }
    if let Some(rest) = name.strip_prefix("G(").and_then(|r| r.strip_suffix(",1,2)")) {
        let d: u32 = rest.parse().map_err(|_| unknown())?;
        if !(1..=4).contains(&d) {
            return Err(unknown());
        }
        let swap = rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        if d == 1 {
            return Ok(vec![swap]);
        }
        let t = Matrix::diagonal(vec![CycScalar::zeta(d)?, int(1)]);
        return Ok(vec![swap, t]);
    }
    match name {
        "S3" => Ok(vec![
            rows(vec![vec![int(-1), int(1)], vec![int(0), int(1)]]),
            rows(vec![vec![int(1), int(0)], vec![int(1), int(-1)]]),
        ]),
        "G4" => {
            let z = CycScalar::zeta(3)?;
            let z2 = &z * &z;
            Ok(vec![
                rows(vec![vec![z.clone(), int(0)], vec![z2.clone(), int(1)]]),
                rows(vec![vec![int(1), -z2], vec![int(0), z]]),
            ])
        }
        _ => Err(unknown()),
    }
}

pub fn build(name: &str) -> Result<ReflGroup, GroupError> {
    build_with_bound(name, DEFAULT_MAX_ORDER)
}

pub fn build_with_bound(name: &str, bound: usize) -> Result<ReflGroup, GroupError> {
    let gens = generators(name)?;
    let dim = if name.starts_with("Cyc") { 1 } else { 2 };
    GroupBuilder::new(name).dim(dim).max_order(bound).build(gens)
}
