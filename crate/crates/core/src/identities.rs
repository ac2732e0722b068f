//! Exact identity suites run over every flat of a group.

use rayon::prelude::*;
use serde::Serialize;

use crate::center::{
    class_sum, filtration, idempotent, transfer, transfer_class_sum_formula, transfer_idempotent_formula,
    transfer_span,
};
use crate::chartab::{coinvariant_character, ClassFunction, GradedCharacter};
use crate::chern::{default_order, ChernContext, ChernError};
use crate::exact::{CycScalar, HbarSeries};
use crate::groups::{Flat, ReflGroup, Subgroup};

/// Outcome of one identity over all of its cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl IdentityCheck {
    fn new(name: &str) -> Self {
        IdentityCheck {
            name: name.to_string(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(case());
        }
    }

    fn merge(&mut self, other: IdentityCheck) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub group: String,
    pub checks: Vec<IdentityCheck>,
    /// Codimensions above the largest flat codimension, where no parabolic
    /// subgroup exists and the span identity is not evaluated.
    pub skipped_codims: Vec<usize>,
    pub passed: bool,
}

impl IdentityReport {
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# group\t{}\n# passed\t{}\n", self.group, self.passed);
        if !self.skipped_codims.is_empty() {
            let s: Vec<String> = self.skipped_codims.iter().map(usize::to_string).collect();
            out.push_str(&format!("# skipped_codims\t{}\n", s.join(",")));
        }
        out.push_str("check\tcases\tfailures\tpassed\n");
        for c in &self.checks {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", c.name, c.cases, c.failures.len(), c.passed()));
        }
        for c in &self.checks {
            for f in &c.failures {
                out.push_str(&format!("# witness\t{}\t{f}\n", c.name));
            }
        }
        out
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const TRANSFER_CLASS_SUMS: &str = "transfer-class-sums";
pub const TRANSFER_IDEMPOTENTS: &str = "transfer-idempotents";
pub const PARABOLIC_SPAN: &str = "parabolic-span";
pub const CHERN_INDUCED: &str = "chern-induced";
pub const UNIT_NORMALIZATION: &str = "unit-normalization";
pub const EXTERIOR_COINVARIANT: &str = "exterior-coinvariant";

fn flat_label(i: usize, f: &Flat) -> String {
    format!("flat {i} (r={})", f.codim)
}

/// `Tr(Σ_H(h))` by coset conjugation against the centralizer formula, for
/// every class of the parabolic.
pub fn check_transfer_class_sums(g: &ReflGroup, i: usize, flat: &Flat, sub: &Subgroup) -> Result<IdentityCheck, ChernError> {
    let mut check = IdentityCheck::new(TRANSFER_CLASS_SUMS);
    for class in sub.group.classes() {
        let h = class.representative;
        let raw = transfer(g, sub, &class_sum(&sub.group, h))?;
        let closed = transfer_class_sum_formula(g, sub, h)?;
        check.record(raw == closed, || format!("{}, element {h}", flat_label(i, flat)));
    }
    Ok(check)
}

/// `Tr(e_η)` by coset conjugation against the induction formula, for every
/// irreducible `η` of the parabolic.
pub fn check_transfer_idempotents(g: &ReflGroup, i: usize, flat: &Flat, sub: &Subgroup) -> Result<IdentityCheck, ChernError> {
    let mut check = IdentityCheck::new(TRANSFER_IDEMPOTENTS);
    let table = sub.group.character_table()?;
    for (name, eta) in table.names().iter().zip(table.characters()) {
        let raw = transfer(g, sub, &idempotent(&sub.group, eta)?)?;
        let closed = transfer_idempotent_formula(g, sub, eta)?;
        check.record(raw == closed, || format!("{}, character {name}", flat_label(i, flat)));
    }
    Ok(check)
}

/// The exterior-twisted induction identity for every irreducible of the
/// parabolic placed in degree 0.
pub fn check_chern_induced(
    ctx: &ChernContext<'_>,
    i: usize,
    flat: &Flat,
    sub: &Subgroup,
    order: usize,
) -> Result<IdentityCheck, ChernError> {
    let mut check = IdentityCheck::new(CHERN_INDUCED);
    let table = sub.group.character_table()?;
    for (name, chi) in table.names().iter().zip(table.characters()) {
        let e = GradedCharacter::from_class_function(chi, 0);
        let r = ctx.chern_induced(flat, sub, &e, order)?;
        check.record(r.holds(), || {
            format!(
                "{}, character {name}: laurent {}, intermediate {}, series {}",
                flat_label(i, flat),
                r.laurent_identity,
                r.intermediate_identity,
                r.lhs == r.rhs
            )
        });
    }
    Ok(check)
}

/// `F_r(Z(ℂW)) = Σ_{codim W' = r} Tr(Z(ℂW'))` for each `r` up to the largest
/// flat codimension. Returns the check and the codimensions left out.
pub fn check_parabolic_span(g: &ReflGroup, flats: &[Flat], subs: &[Subgroup]) -> Result<(IdentityCheck, Vec<usize>), ChernError> {
    let mut check = IdentityCheck::new(PARABOLIC_SPAN);
    let filt = filtration(g);
    let max_codim = flats.iter().map(|f| f.codim).max().unwrap_or(0);
    for r in 0..=max_codim {
        let of_codim: Vec<&Subgroup> = flats.iter().zip(subs).filter(|(f, _)| f.codim == r).map(|(_, s)| s).collect();
        let span = transfer_span(g, &of_codim)?;
        let piece = filt.piece(r);
        let equal = span.contains_subspace(piece) && piece.contains_subspace(&span);
        check.record(equal, || format!("r={r}: span dim {} vs filtration dim {}", span.dim(), piece.dim()));
    }
    Ok((check, (max_codim + 1..=g.dim()).collect()))
}

/// `ch_c(ℂ) = 1` up to `ħ^order`.
pub fn check_unit_normalization(ctx: &ChernContext<'_>, g: &ReflGroup, order: usize) -> Result<IdentityCheck, ChernError> {
    let mut check = IdentityCheck::new(UNIT_NORMALIZATION);
    let unit = GradedCharacter::from_class_function(&ClassFunction::trivial(g), 0);
    let class = ctx.ch_c(&unit, order)?;
    let one = HbarSeries::constant(CycScalar::one(), order);
    for (i, s) in class.coords().iter().enumerate() {
        check.record(*s == one && s.order() == order, || format!("idempotent {i}: {s:?}"));
    }
    Ok(check)
}

/// `∧V* ⊗ ℂ[V]^{co(W)} = ∏(1 - q^{d_i}) · 1` as graded characters.
pub fn check_exterior_coinvariant(ctx: &ChernContext<'_>, g: &ReflGroup) -> Result<IdentityCheck, ChernError> {
    let mut check = IdentityCheck::new(EXTERIOR_COINVARIANT);
    let lhs = ctx.exterior_algebra()?.tensor(&coinvariant_character(g)?)?;
    let p = &ctx.degree_product;
    for (c, v) in lhs.values().iter().enumerate() {
        check.record(v == p, || format!("class {c}"));
    }
    Ok(check)
}

/// Runs every suite on `g`.
pub fn verify_identities(g: &ReflGroup) -> Result<IdentityReport, ChernError> {
    let ctx = ChernContext::new(g)?;
    let order = default_order(g);
    let flats = g.flats().to_vec();
    let subs = flats.iter().map(|f| g.parabolic(f)).collect::<Result<Vec<_>, _>>()?;
    for sub in &subs {
        sub.group.character_table()?;
    }

    let per_flat = flats
        .par_iter()
        .zip(&subs)
        .enumerate()
        .map(|(i, (f, sub))| {
            Ok([
                check_transfer_class_sums(g, i, f, sub)?,
                check_transfer_idempotents(g, i, f, sub)?,
                check_chern_induced(&ctx, i, f, sub, order)?,
            ])
        })
        .collect::<Result<Vec<_>, ChernError>>()?;

    let mut checks = vec![
        IdentityCheck::new(TRANSFER_CLASS_SUMS),
        IdentityCheck::new(TRANSFER_IDEMPOTENTS),
        IdentityCheck::new(CHERN_INDUCED),
    ];
    for triple in per_flat {
        for (acc, c) in checks.iter_mut().zip(triple) {
            acc.merge(c);
        }
    }
    let (span, skipped_codims) = check_parabolic_span(g, &flats, &subs)?;
    checks.insert(2, span);
    checks.push(check_unit_normalization(&ctx, g, order)?);
    checks.push(check_exterior_coinvariant(&ctx, g)?);

    Ok(IdentityReport {
        group: g.name().to_string(),
        passed: checks.iter().all(IdentityCheck::passed),
        checks,
        skipped_codims,
    })
}
