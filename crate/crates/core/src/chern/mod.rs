//! The equivariant Chern character on graded characters and the lattice it
//! generates inside `ℂ[ħ] ⊗ Z(ℂW)`.

mod theorem_a;

use thiserror::Error;

use crate::center::{idempotent, transfer, CenterElement, CenterError};
use crate::chartab::{
    coinvariant_character, exterior_class, graded_pairing, int_ratio, CharacterTable, ChartabError,
    ClassFunction, GradedCharacter,
};
use crate::exact::{expand_exp, CycScalar, ExactError, HbarSeries, LaurentQ};
use crate::groups::{Flat, GroupError, GroupId, ReflGroup, Subgroup};

pub use theorem_a::{verify_theorem_a, ImageLattice, TheoremAReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("image class belongs to a different group")]
    GroupMismatch,
    #[error("component ħ^{needed} requested from a series truncated at ħ^{order}")]
    Truncation { needed: usize, order: usize },
    #[error("coefficient mismatch: {0}")]
    CoefficientMismatch(String),
    #[error("component ħ^{j} is non-zero below the expected degree {r}")]
    LowerComponent { j: usize, r: usize },
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error(transparent)]
    Center(#[from] CenterError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `N = 2n + 4`.
pub fn default_order(g: &ReflGroup) -> usize {
    2 * g.dim() + 4
}

/// An element of `ℂ[[ħ]] ⊗ Z(ℂW)` in the idempotent basis, truncated at `ħ^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageClass {
    group: GroupId,
    order: usize,
    coords: Vec<HbarSeries>,
}

impl ImageClass {
    pub fn new(g: &ReflGroup, coords: Vec<HbarSeries>) -> Result<Self, ChernError> {
        if coords.len() != g.num_classes() {
            return Err(ChernError::GroupMismatch);
        }
        let order = coords.iter().map(HbarSeries::order).min().unwrap_or(0);
        Ok(ImageClass {
            group: g.id(),
            order,
            coords: coords.iter().map(|s| s.truncate(order)).collect(),
        })
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Series attached to each irreducible, in character-table order.
    pub fn coords(&self) -> &[HbarSeries] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(HbarSeries::is_zero)
    }

    fn zip(&self, other: &Self, f: impl Fn(&HbarSeries, &HbarSeries) -> HbarSeries) -> Result<Self, ChernError> {
        if self.group != other.group {
            return Err(ChernError::GroupMismatch);
        }
        Ok(ImageClass {
            group: self.group,
            order: self.order.min(other.order),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, ChernError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ChernError> {
        self.zip(other, |a, b| a - b)
    }

    /// Product, diagonal in the idempotent basis.
    pub fn mul(&self, other: &Self) -> Result<Self, ChernError> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        ImageClass {
            group: self.group,
            order: self.order,
            coords: self.coords.iter().map(|s| s.scale(c)).collect(),
        }
    }

    /// Idempotent coordinates of the `ħ^j` component.
    pub fn component_coords(&self, j: usize) -> Result<Vec<CycScalar>, ChernError> {
        if j > self.order {
            return Err(ChernError::Truncation {
                needed: j,
                order: self.order,
            });
        }
        Ok(self.coords.iter().map(|s| s.coeff(j).clone()).collect())
    }
}

/// Per-group data shared by every Chern-character evaluation: the character
/// table, coinvariant character, fake degrees and idempotents.
pub struct ChernContext<'g> {
    pub g: &'g ReflGroup,
    pub table: &'g CharacterTable,
    pub coinvariants: GradedCharacter,
    pub fake_degrees: Vec<LaurentQ>,
    pub degree_product: LaurentQ,
    idempotents: Vec<CenterElement>,
}

impl<'g> ChernContext<'g> {
    pub fn new(g: &'g ReflGroup) -> Result<Self, ChernError> {
        let table = g.character_table()?;
        let coinvariants = coinvariant_character(g)?;
        let fake_degrees = table
            .characters()
            .iter()
            .map(|chi| graded_pairing(g, &GradedCharacter::from_class_function(chi, 0), &coinvariants))
            .collect::<Result<_, _>>()?;
        let degree_product = g
            .invariant_degrees()?
            .iter()
            .fold(LaurentQ::one(), |acc, &d| &acc * &LaurentQ::one_minus_q_pow(d as i64));
        let idempotents = table
            .characters()
            .iter()
            .map(|chi| idempotent(g, chi))
            .collect::<Result<_, _>>()?;
        Ok(ChernContext {
            g,
            table,
            coinvariants,
            fake_degrees,
            degree_product,
            idempotents,
        })
    }

    /// `⟨χ, coinvariants ⊗ E⟩^gr` for every irreducible `χ`.
    pub fn numerators(&self, e: &GradedCharacter) -> Result<Vec<LaurentQ>, ChernError> {
        let twisted = self.coinvariants.tensor(e)?;
        self.pairings(&twisted)
    }

    /// `⟨χ, E⟩^gr` for every irreducible `χ`.
    pub fn pairings(&self, e: &GradedCharacter) -> Result<Vec<LaurentQ>, ChernError> {
        self.table
            .characters()
            .iter()
            .map(|chi| Ok(graded_pairing(self.g, &GradedCharacter::from_class_function(chi, 0), e)?))
            .collect()
    }

    /// Expands `numerator_χ / fake_χ` at `q = exp(ħ)` for every `χ`.
    pub fn ratio_class(&self, numerators: &[LaurentQ], order: usize) -> Result<ImageClass, ChernError> {
        let coords = numerators
            .iter()
            .zip(&self.fake_degrees)
            .map(|(num, fake)| Ok(expand_exp(num, order).checked_div(&expand_exp(fake, order))?))
            .collect::<Result<Vec<_>, ChernError>>()?;
        ImageClass::new(self.g, coords)
    }

    /// `ch_c(E) = Σ_χ ⟨χ, coinvariants ⊗ E⟩^gr / ⟨χ, coinvariants⟩^gr e_χ`.
    pub fn ch_c(&self, e: &GradedCharacter, order: usize) -> Result<ImageClass, ChernError> {
        self.ratio_class(&self.numerators(e)?, order)
    }

    /// The `ħ^j` component as a central element.
    pub fn component(&self, class: &ImageClass, j: usize) -> Result<CenterElement, ChernError> {
        if class.group != self.g.id() {
            return Err(ChernError::GroupMismatch);
        }
        self.from_idempotent_coords(&class.component_coords(j)?)
    }

    pub fn from_idempotent_coords(&self, coeffs: &[CycScalar]) -> Result<CenterElement, ChernError> {
        let mut out = CenterElement::zero(self.g);
        for (c, e) in coeffs.iter().zip(&self.idempotents) {
            if !c.is_zero() {
                out = out.add(&e.scale(c))?;
            }
        }
        Ok(out)
    }

    /// `∧V* = Σ_i (-1)^i q^i [∧^i V*]`, i.e. `w ↦ det(1 - q w^{-1})`.
    pub fn exterior_algebra(&self) -> Result<GradedCharacter, ChernError> {
        let g = self.g;
        Ok(GradedCharacter::new(
            g,
            (0..g.num_classes()).map(|c| g.det_one_minus_q(g.inverse_class(c))).collect(),
        )?)
    }

    /// The exterior-twisted induction check for one parabolic and one graded
    /// character of it.
    pub fn chern_induced(
        &self,
        flat: &Flat,
        sub: &Subgroup,
        e_sub: &GradedCharacter,
        order: usize,
    ) -> Result<InducedCheck, ChernError> {
        let g = self.g;
        let n_minus_r = (g.dim() - flat.codim) as u32;
        let ext = exterior_class(g, flat, sub)?;
        let induced_twist = ext.tensor(e_sub)?.induce(g, sub)?;
        let induced = e_sub.induce(g, sub)?;
        let one_minus_q = LaurentQ::one_minus_q_pow(1).pow(n_minus_r);

        let lhs_num = self.numerators(&induced_twist)?;
        let b = self.pairings(&induced)?;
        let laurent_identity = lhs_num
            .iter()
            .zip(&b)
            .all(|(a, b)| &one_minus_q * a == &self.degree_product * b);
        let intermediate_identity =
            induced_twist.scale(&one_minus_q) == self.exterior_algebra()?.tensor(&induced)?;

        let prefactor = self.degree_product.div_exact(&one_minus_q)?;
        let rhs_num: Vec<LaurentQ> = b.iter().map(|b| &prefactor * b).collect();
        let lhs = self.ratio_class(&lhs_num, order)?;
        let rhs = self.ratio_class(&rhs_num, order)?;
        Ok(InducedCheck {
            lhs,
            rhs,
            laurent_identity,
            intermediate_identity,
        })
    }

    /// The `ħ^r` component of `(χ'(1)/|W'|) ch_c(Ind(∧(V')^⊥ ⊗ χ'))`,
    /// checked against its closed form and against `(-1)^r Tr(e_{χ'})`.
    pub fn star_generator(
        &self,
        flat: &Flat,
        sub: &Subgroup,
        chi_sub: &ClassFunction,
        order: usize,
    ) -> Result<StarGenerator, ChernError> {
        let g = self.g;
        let r = flat.codim;
        if order < r {
            return Err(ChernError::Truncation { needed: r, order });
        }
        let sign = CycScalar::from_integer(if r.is_multiple_of(2) { 1 } else { -1 });

        // (1 - q^{d_1})...(1 - q^{d_n}) / (1 - q)^{n-r} ≡ (-1)^r d_1...d_n ħ^r.
        let one_minus_q = LaurentQ::one_minus_q_pow(1).pow((g.dim() - r) as u32);
        let prefactor = expand_exp(&self.degree_product.div_exact(&one_minus_q)?, r);
        let lead = CycScalar::from_integer(g.order() as i64);
        let expect_lead = &sign * &lead;
        if (0..r).any(|j| !prefactor.coeff(j).is_zero()) || *prefactor.coeff(r) != expect_lead {
            return Err(ChernError::CoefficientMismatch(format!(
                "prefactor expansion {prefactor:?} does not start with {expect_lead} ħ^{r}"
            )));
        }

        let weight = chi_sub.degree().scale(&int_ratio(1, sub.group.order()));
        let e_sub = GradedCharacter::from_class_function(chi_sub, 0);
        let check = self.chern_induced(flat, sub, &e_sub, order)?;
        let class = check.lhs.scale(&weight);
        for j in 0..r {
            if class.coords.iter().any(|s| !s.coeff(j).is_zero()) {
                return Err(ChernError::LowerComponent { j, r });
            }
        }
        let element = self.component(&class, r)?;

        let ind = crate::chartab::induce(g, sub, chi_sub)?;
        let closed: Vec<CycScalar> = self
            .table
            .characters()
            .iter()
            .map(|chi| {
                let m = crate::chartab::inner_product(g, chi, &ind)?;
                let c = &(&m * &lead) * &chi.degree().inv()?;
                Ok(&(&c * &weight) * &sign)
            })
            .collect::<Result<_, ChernError>>()?;
        if element != self.from_idempotent_coords(&closed)? {
            return Err(ChernError::CoefficientMismatch(
                "ħ^r component differs from the closed formula".into(),
            ));
        }
        let e_chi = idempotent(&sub.group, chi_sub)?;
        let tr = transfer(g, sub, &e_chi)?.scale(&sign);
        if element != tr {
            return Err(ChernError::CoefficientMismatch(
                "ħ^r component differs from (-1)^r Tr(e)".into(),
            ));
        }
        Ok(StarGenerator {
            codim: r,
            element,
            class,
            laurent_identity: check.laurent_identity,
        })
    }
}

/// Both sides of the exterior-twisted induction formula.
#[derive(Debug, Clone)]
pub struct InducedCheck {
    pub lhs: ImageClass,
    pub rhs: ImageClass,
    /// `(1-q)^{n-r} A_χ = ∏(1-q^{d_i}) B_χ` for every `χ`, as Laurent data.
    pub laurent_identity: bool,
    /// `(1-q)^{n-r} Ind(∧(V')^⊥ ⊗ E') = ∧V* ⊗ Ind E'` as graded characters.
    pub intermediate_identity: bool,
}

impl InducedCheck {
    pub fn holds(&self) -> bool {
        self.laurent_identity && self.intermediate_identity && self.lhs == self.rhs
    }
}

#[derive(Debug, Clone)]
pub struct StarGenerator {
    pub codim: usize,
    pub element: CenterElement,
    /// The full scaled class whose `ħ^r` component is `element`.
    pub class: ImageClass,
    pub laurent_identity: bool,
}

/// `ch_c(E)` without a prepared context.
pub fn ch_c(g: &ReflGroup, e: &GradedCharacter, order: usize) -> Result<ImageClass, ChernError> {
    ChernContext::new(g)?.ch_c(e, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::registry;

    fn series(v: &[(i64, i64)]) -> HbarSeries {
        HbarSeries::from_coeffs(v.iter().map(|&(n, d)| CycScalar::from_ratio(n, d)).collect())
    }

    #[test]
    fn trivial_maps_to_one() {
        for name in registry::names() {
            let g = registry::build(&name).unwrap();
            let ctx = ChernContext::new(&g).unwrap();
            let n = default_order(&g);
            let one = GradedCharacter::from_class_function(&ClassFunction::trivial(&g), 0);
            let c = ctx.ch_c(&one, n).unwrap();
            for s in c.coords() {
                assert_eq!(s, &HbarSeries::constant(CycScalar::one(), n), "{name}");
            }
        }
    }

    #[test]
    fn mu2_eps() {
        let g = registry::build("Cyc2").unwrap();
        let ctx = ChernContext::new(&g).unwrap();
        let eps = GradedCharacter::from_class_function(ctx.table.get("eps").unwrap(), 0);
        let c = ctx.ch_c(&eps, 3).unwrap();
        assert_eq!(c.coords()[0], series(&[(1, 1), (1, 1), (1, 2), (1, 6)]));
        assert_eq!(c.coords()[1], series(&[(1, 1), (-1, 1), (1, 2), (-1, 6)]));
        // Shifting E by q^k multiplies by exp(kħ).
        let shifted = ctx.ch_c(&eps.shift(2), 3).unwrap();
        for (a, b) in shifted.coords().iter().zip(c.coords()) {
            assert_eq!(*a, b * &HbarSeries::exp_multiple(2, 3));
        }
    }

    #[test]
    fn regular_character() {
        let g = registry::build("G4").unwrap();
        let ctx = ChernContext::new(&g).unwrap();
        let n = 6;
        let reg = GradedCharacter::from_class_function(&ClassFunction::regular(&g), 0);
        let c = ctx.ch_c(&reg, n).unwrap();
        let grdim = ctx.degree_product.div_exact(&LaurentQ::one_minus_q_pow(1).pow(2)).unwrap();
        for (i, chi) in ctx.table.characters().iter().enumerate() {
            let want = expand_exp(&grdim.scale(chi.degree()), n)
                .checked_div(&expand_exp(&ctx.fake_degrees[i], n))
                .unwrap();
            assert_eq!(c.coords()[i], want);
        }
    }

    #[test]
    fn mu2_star_generator() {
        let g = registry::build("Cyc2").unwrap();
        let ctx = ChernContext::new(&g).unwrap();
        let flat = &g.flats()[1];
        let sub = g.parabolic(flat).unwrap();
        let t = sub.group.character_table().unwrap();
        let sg = ctx.star_generator(flat, &sub, t.get("eps").unwrap(), 4).unwrap();
        let e_eps = idempotent(&g, ctx.table.get("eps").unwrap()).unwrap();
        assert_eq!(sg.element, e_eps.scale(&CycScalar::from_integer(-1)));
        // E' = eps: both sides equal (e^{-ħ} - e^{ħ}) e_eps.
        let check = ctx
            .chern_induced(flat, &sub, &GradedCharacter::from_class_function(t.get("eps").unwrap(), 0), 4)
            .unwrap();
        assert!(check.holds());
        assert!(check.lhs.coords()[0].is_zero());
        assert_eq!(check.lhs.coords()[1], series(&[(0, 1), (-2, 1), (0, 1), (-1, 3), (0, 1)]));
        // E' = 1: both sides equal (1 - e^{2ħ}) e_1.
        let check = ctx
            .chern_induced(flat, &sub, &GradedCharacter::from_class_function(t.get("1").unwrap(), 0), 4)
            .unwrap();
        assert!(check.holds());
        assert_eq!(check.lhs.coords()[0], series(&[(0, 1), (-2, 1), (-2, 1), (-4, 3), (-2, 3)]));
        assert!(check.lhs.coords()[1].is_zero());
    }

    #[test]
    fn trivial_parabolic_gives_regular() {
        let g = registry::build("S3").unwrap();
        let ctx = ChernContext::new(&g).unwrap();
        let flat = &g.flats()[0];
        let sub = g.parabolic(flat).unwrap();
        let one = GradedCharacter::from_class_function(&ClassFunction::trivial(&sub.group), 0);
        let check = ctx.chern_induced(flat, &sub, &one, 8).unwrap();
        assert!(check.holds());
        let reg = GradedCharacter::from_class_function(&ClassFunction::regular(&g), 0);
        assert_eq!(check.lhs, ctx.ch_c(&reg, 8).unwrap());
    }
}
