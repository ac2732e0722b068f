use crate::exact::{linalg, CycScalar, LaurentQ};
use crate::groups::{elementary_from_power_sums, Flat, GroupId, Matrix, ReflGroup, Subgroup};

use super::{int_ratio, ChartabError, ClassFunction};

/// A graded virtual character, stored class-wise with values in `ℤ[q, q^{-1}]`
/// (over the cyclotomic field).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCharacter {
    group: GroupId,
    values: Vec<LaurentQ>,
}

impl GradedCharacter {
    pub fn new(g: &ReflGroup, values: Vec<LaurentQ>) -> Result<Self, ChartabError> {
        if values.len() != g.num_classes() {
            return Err(ChartabError::WrongLength {
                expected: g.num_classes(),
                got: values.len(),
            });
        }
        Ok(GradedCharacter {
            group: g.id(),
            values,
        })
    }

    /// `f` placed in q-degree `degree`.
    pub fn from_class_function(f: &ClassFunction, degree: i64) -> Self {
        GradedCharacter {
            group: f.group(),
            values: f
                .values()
                .iter()
                .map(|v| LaurentQ::monomial(v.clone(), degree))
                .collect(),
        }
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn values(&self) -> &[LaurentQ] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &LaurentQ {
        &self.values[class]
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        GradedCharacter {
            group: self.group,
            values: self.values.iter().map(|v| v.shift(k)).collect(),
        }
    }

    pub fn scale(&self, c: &LaurentQ) -> Self {
        GradedCharacter {
            group: self.group,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&LaurentQ, &LaurentQ) -> LaurentQ) -> Result<Self, ChartabError> {
        if self.group != other.group {
            return Err(ChartabError::GroupMismatch);
        }
        Ok(GradedCharacter {
            group: self.group,
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, ChartabError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ChartabError> {
        self.zip(other, |a, b| a - b)
    }

    /// Graded tensor product.
    pub fn tensor(&self, other: &Self) -> Result<Self, ChartabError> {
        self.zip(other, |a, b| a * b)
    }

    /// Specialization `q ↦ 1`.
    pub fn at_one(&self) -> ClassFunction {
        ClassFunction {
            group: self.group,
            values: self.values.iter().map(LaurentQ::eval_at_one).collect(),
        }
    }

    /// Homogeneous piece of q-degree `k` as a class function.
    pub fn coefficient(&self, k: i64) -> ClassFunction {
        ClassFunction {
            group: self.group,
            values: self.values.iter().map(|v| v.coeff(k)).collect(),
        }
    }

    pub(crate) fn check(&self, g: &ReflGroup) -> Result<(), ChartabError> {
        if self.group != g.id() {
            return Err(ChartabError::GroupMismatch);
        }
        Ok(())
    }

    /// Induction, degree by degree.
    pub fn induce(&self, g: &ReflGroup, sub: &Subgroup) -> Result<Self, ChartabError> {
        self.check(&sub.group)?;
        let mut degrees: Vec<i64> = self
            .values
            .iter()
            .flat_map(|v| v.terms().map(|(k, _)| k).collect::<Vec<_>>())
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut out = vec![LaurentQ::zero(); g.num_classes()];
        for k in degrees {
            let ind = super::induce(g, sub, &self.coefficient(k))?;
            for (slot, v) in out.iter_mut().zip(ind.values()) {
                *slot = &*slot + &LaurentQ::monomial(v.clone(), k);
            }
        }
        GradedCharacter::new(g, out)
    }
}

/// `⟨M, N⟩^gr = Σ_{i,j} ⟨M_i, N_j⟩ q^{i+j}`, computed class-wise as
/// `(1/|W|) Σ_C |C| M(C) N(C^{-1})`.
pub fn graded_pairing(g: &ReflGroup, m: &GradedCharacter, n: &GradedCharacter) -> Result<LaurentQ, ChartabError> {
    m.check(g)?;
    n.check(g)?;
    let total: LaurentQ = g
        .classes()
        .iter()
        .enumerate()
        .map(|(c, class)| {
            (&m.values[c] * &n.values[g.inverse_class(c)])
                .scale(&CycScalar::from_rational(int_ratio(class.size(), 1)))
        })
        .sum();
    Ok(total.scale(&CycScalar::from_rational(int_ratio(1, g.order()))))
}

fn degree_product(g: &ReflGroup) -> Result<LaurentQ, ChartabError> {
    Ok(g
        .invariant_degrees()?
        .iter()
        .fold(LaurentQ::one(), |acc, &d| &acc * &LaurentQ::one_minus_q_pow(d as i64)))
}

/// Graded character of the coinvariant algebra:
/// `w ↦ ∏(1 - q^{d_i}) / det(1 - q w^{-1})`.
pub fn coinvariant_character(g: &ReflGroup) -> Result<GradedCharacter, ChartabError> {
    let p = degree_product(g)?;
    let values = (0..g.num_classes())
        .map(|c| {
            p.div_exact(&g.det_one_minus_q(g.inverse_class(c)))
                .map_err(|_| ChartabError::CoinvariantRemainder(c))
        })
        .collect::<Result<_, _>>()?;
    GradedCharacter::new(g, values)
}

/// `⟨χ, coinvariants⟩^gr`.
pub fn fake_degree(g: &ReflGroup, chi: &ClassFunction) -> Result<LaurentQ, ChartabError> {
    graded_pairing(
        g,
        &GradedCharacter::from_class_function(chi, 0),
        &coinvariant_character(g)?,
    )
}

/// Matrix of `w` acting on the row vectors `basis ⊆ V*` by `a ↦ a w^{-1}`,
/// or `None` if the span is not stable.
fn dual_action(w_inv: &Matrix, basis: &[Vec<CycScalar>]) -> Option<Matrix> {
    let rows: Vec<Vec<CycScalar>> = basis
        .iter()
        .map(|a| {
            let image: Vec<CycScalar> = (0..w_inv.dim())
                .map(|j| (0..w_inv.dim()).map(|k| &a[k] * w_inv.get(k, j)).sum())
                .collect();
            linalg::solve_in_rows(basis, &image)
        })
        .collect::<Option<_>>()?;
    Matrix::from_rows(rows)
}

/// `Σ_i (-1)^i [∧^i (V')^⊥] q^i` as a graded character of the parabolic
/// subgroup `sub` attached to `flat`, from the eigenvalue symmetric functions
/// of each element on the annihilator `(V')^⊥ ⊆ V*`.
pub fn exterior_class(g: &ReflGroup, flat: &Flat, sub: &Subgroup) -> Result<GradedCharacter, ChartabError> {
    if !sub.check_parent(g) {
        return Err(ChartabError::EmbeddingMismatch);
    }
    let ann = flat.annihilator();
    let h = &sub.group;
    let values = h
        .classes()
        .iter()
        .map(|class| {
            let w = class.representative;
            if ann.is_empty() {
                return Ok(LaurentQ::one());
            }
            let m = dual_action(h.element(h.inverse(w)), &ann).ok_or(ChartabError::UnstableFlat)?;
            let mut power = m.clone();
            let mut sums = Vec::with_capacity(ann.len());
            for _ in 0..ann.len() {
                sums.push(power.trace());
                power = power.mul(&m);
            }
            let e = elementary_from_power_sums(&sums);
            Ok(e.into_iter()
                .enumerate()
                .map(|(i, c)| LaurentQ::monomial(if i % 2 == 0 { c } else { -c }, i as i64))
                .sum())
        })
        .collect::<Result<_, ChartabError>>()?;
    GradedCharacter::new(h, values)
}

/// The same class computed as `det(1 - q w^{-1}) / (1 - q)^{n-r}`, valid
/// because the parabolic acts trivially on `(V')^*`.
pub fn exterior_class_via_det(g: &ReflGroup, flat: &Flat, sub: &Subgroup) -> Result<GradedCharacter, ChartabError> {
    if !sub.check_parent(g) {
        return Err(ChartabError::EmbeddingMismatch);
    }
    let h = &sub.group;
    let trivial_part = LaurentQ::one_minus_q_pow(1).pow((g.dim() - flat.codim) as u32);
    let values = (0..h.num_classes())
        .map(|c| {
            h.det_one_minus_q(h.inverse_class(c))
                .div_exact(&trivial_part)
                .map_err(|_| ChartabError::UnstableFlat)
        })
        .collect::<Result<_, _>>()?;
    GradedCharacter::new(h, values)
}
