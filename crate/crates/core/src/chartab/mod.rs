//! Exact character theory of the constructed groups.

mod graded;
mod table;

use thiserror::Error;

use crate::exact::{CycScalar, ExactError};
use crate::groups::{GroupError, GroupId, ReflGroup, Subgroup};

pub use graded::{
    coinvariant_character, exterior_class, exterior_class_via_det, fake_degree, graded_pairing,
    GradedCharacter,
};
pub use table::CharacterTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartabError {
    #[error("class function belongs to a different group")]
    GroupMismatch,
    #[error("expected {expected} class values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("found only {found} of {classes} irreducible characters within the tensor depth bound")]
    Incomplete { found: usize, classes: usize },
    #[error("character table fails orthogonality: {0}")]
    Orthogonality(String),
    #[error("unknown character name {0:?}")]
    UnknownCharacter(String),
    #[error("subgroup embedding does not belong to this group")]
    EmbeddingMismatch,
    #[error("flat is not stable under the parabolic subgroup")]
    UnstableFlat,
    #[error("coinvariant character is not a Laurent polynomial on class {0}")]
    CoinvariantRemainder(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A class function, indexed by the conjugacy classes of its group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    group: GroupId,
    values: Vec<CycScalar>,
}

impl ClassFunction {
    pub fn new(g: &ReflGroup, values: Vec<CycScalar>) -> Result<Self, ChartabError> {
        if values.len() != g.num_classes() {
            return Err(ChartabError::WrongLength {
                expected: g.num_classes(),
                got: values.len(),
            });
        }
        Ok(ClassFunction {
            group: g.id(),
            values,
        })
    }

    pub fn constant(g: &ReflGroup, c: CycScalar) -> Self {
        ClassFunction {
            group: g.id(),
            values: vec![c; g.num_classes()],
        }
    }

    pub fn trivial(g: &ReflGroup) -> Self {
        Self::constant(g, CycScalar::one())
    }

    /// The character of the regular representation.
    pub fn regular(g: &ReflGroup) -> Self {
        let mut values = vec![CycScalar::zero(); g.num_classes()];
        values[0] = CycScalar::from_integer(g.order() as i64);
        ClassFunction {
            group: g.id(),
            values,
        }
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn values(&self) -> &[CycScalar] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycScalar {
        &self.values[class]
    }

    /// Value at the identity class.
    pub fn degree(&self) -> &CycScalar {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycScalar::is_zero)
    }

    fn zip(&self, other: &Self, f: impl Fn(&CycScalar, &CycScalar) -> CycScalar) -> Result<Self, ChartabError> {
        if self.group != other.group {
            return Err(ChartabError::GroupMismatch);
        }
        Ok(ClassFunction {
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

    /// Pointwise product (tensor product of representations).
    pub fn product(&self, other: &Self) -> Result<Self, ChartabError> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        ClassFunction {
            group: self.group,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `w ↦ f(w^{-1})`, the character of the dual representation.
    pub fn dual(&self, g: &ReflGroup) -> Self {
        ClassFunction {
            group: self.group,
            values: (0..self.values.len())
                .map(|c| self.values[g.inverse_class(c)].clone())
                .collect(),
        }
    }

    /// Applies `ζ ↦ ζ^j` to every value.
    pub fn galois(&self, j: i64) -> Self {
        ClassFunction {
            group: self.group,
            values: self.values.iter().map(|v| v.galois(j)).collect(),
        }
    }

    pub(crate) fn check(&self, g: &ReflGroup) -> Result<(), ChartabError> {
        if self.group != g.id() {
            return Err(ChartabError::GroupMismatch);
        }
        Ok(())
    }
}

/// `⟨a, b⟩_W = (1/|W|) Σ_w a(w) b(w^{-1})`.
pub fn inner_product(g: &ReflGroup, a: &ClassFunction, b: &ClassFunction) -> Result<CycScalar, ChartabError> {
    a.check(g)?;
    b.check(g)?;
    let sum: CycScalar = g
        .classes()
        .iter()
        .enumerate()
        .filter(|(c, _)| !a.values[*c].is_zero())
        .map(|(c, class)| {
            (&a.values[c] * &b.values[g.inverse_class(c)]).scale(&int_ratio(class.size(), 1))
        })
        .sum();
    Ok(sum.scale(&int_ratio(1, g.order())))
}

pub(crate) fn int_ratio(n: usize, d: usize) -> num_rational::BigRational {
    num_rational::BigRational::new((n as i64).into(), (d as i64).into())
}

/// Trace of each class representative on `V`.
pub fn reflection_character(g: &ReflGroup) -> ClassFunction {
    ClassFunction {
        group: g.id(),
        values: (0..g.num_classes())
            .map(|c| g.class_elementary_symmetric(c)[1].clone())
            .collect(),
    }
}

/// `ε = det`.
pub fn det_character(g: &ReflGroup) -> ClassFunction {
    ClassFunction {
        group: g.id(),
        values: (0..g.num_classes())
            .map(|c| g.class_elementary_symmetric(c)[g.dim()].clone())
            .collect(),
    }
}

/// `Ind_H^G f`, computed class-wise as `(|G| / (|H| |C|)) Σ_{h ∈ H ∩ C} f(h)`.
pub fn induce(g: &ReflGroup, sub: &Subgroup, f: &ClassFunction) -> Result<ClassFunction, ChartabError> {
    if !sub.check_parent(g) {
        return Err(ChartabError::EmbeddingMismatch);
    }
    f.check(&sub.group)?;
    let mut buckets = vec![CycScalar::zero(); g.num_classes()];
    for (h, &image) in sub.embedding.iter().enumerate() {
        let v = &f.values[sub.group.class_of(h)];
        if !v.is_zero() {
            buckets[g.class_of(image)] += v;
        }
    }
    let values = buckets
        .into_iter()
        .zip(g.classes())
        .map(|(b, class)| b.scale(&int_ratio(g.order(), sub.group.order() * class.size())))
        .collect();
    Ok(ClassFunction {
        group: g.id(),
        values,
    })
}

/// `Res_H^G f`.
pub fn restrict(g: &ReflGroup, sub: &Subgroup, f: &ClassFunction) -> Result<ClassFunction, ChartabError> {
    if !sub.check_parent(g) {
        return Err(ChartabError::EmbeddingMismatch);
    }
    f.check(g)?;
    let values = sub
        .group
        .classes()
        .iter()
        .map(|class| f.values[g.class_of(sub.embedding[class.representative])].clone())
        .collect();
    Ok(ClassFunction {
        group: sub.group.id(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::registry;

    #[test]
    fn mu2_table() {
        let g = registry::build("Cyc2").unwrap();
        let t = g.character_table().unwrap();
        assert_eq!(t.names(), &["1", "eps"]);
        assert_eq!(t.get("eps").unwrap().values(), &[CycScalar::one(), CycScalar::from_integer(-1)]);
    }

    #[test]
    fn g4_table_shape() {
        let g = registry::build("G4").unwrap();
        let t = g.character_table().unwrap();
        assert_eq!(t.names(), &["1", "eps", "eps2", "chi", "chi_eps", "chi_eps2", "theta"]);
        let degrees: Vec<i64> = t.characters().iter().map(|c| c.degree().to_i64().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 1, 2, 2, 2, 3]);
        let s = g.generators()[0];
        let cs = g.class_of(s);
        assert!(t.get("theta").unwrap().value(cs).is_zero());
        assert_eq!(*t.get("eps").unwrap().value(cs), CycScalar::zeta(3).unwrap());
        assert_eq!(*t.get("chi").unwrap().value(cs), CycScalar::from_integer(-1));
        assert!(t.get("chi").unwrap().values().iter().all(|v| v.to_rational().is_some()));
    }

    #[test]
    fn orthogonality_for_every_registered_group() {
        for name in registry::names() {
            let g = registry::build(&name).unwrap();
            let t = g.character_table().unwrap();
            assert_eq!(t.len(), g.num_classes(), "{name}");
            for (i, a) in t.characters().iter().enumerate() {
                for (j, b) in t.characters().iter().enumerate() {
                    let m = inner_product(&g, a, b).unwrap();
                    assert_eq!(m.is_one(), i == j, "{name} {i} {j}");
                    if i != j {
                        assert!(m.is_zero());
                    }
                }
            }
            let sum: i64 = t.characters().iter().map(|c| c.degree().to_i64().unwrap().pow(2)).sum();
            assert_eq!(sum as usize, g.order());
            // Column orthogonality: Σ_χ χ(C) χ(D^{-1}) = δ |C_W(C)|.
            for c in 0..g.num_classes() {
                for d in 0..g.num_classes() {
                    let s: CycScalar = t
                        .characters()
                        .iter()
                        .map(|x| x.value(c) * x.value(g.inverse_class(d)))
                        .sum();
                    let want = if c == d { g.order() / g.classes()[c].size() } else { 0 };
                    assert_eq!(s, CycScalar::from_integer(want as i64));
                }
            }
        }
    }

    #[test]
    fn induction_examples() {
        let g = registry::build("Cyc2").unwrap();
        let triv = Subgroup::trivial(&g).unwrap();
        let r = induce(&g, &triv, &ClassFunction::trivial(&triv.group)).unwrap();
        assert_eq!(r, ClassFunction::regular(&g));

        let g = registry::build("G4").unwrap();
        let s = g.generators()[0];
        let h = g.subgroup(&[s], "<s>", true).unwrap();
        let ind = induce(&g, &h, &ClassFunction::trivial(&h.group)).unwrap();
        assert_eq!(ind.degree().to_i64(), Some(8));

        let whole = Subgroup::whole(&g).unwrap();
        let chi = g.character_table().unwrap().get("theta").unwrap().clone();
        let res = restrict(&g, &whole, &chi).unwrap();
        let back = induce(&g, &whole, &res).unwrap();
        assert_eq!(back, chi);
    }

    #[test]
    fn frobenius_reciprocity_on_parabolics() {
        for name in ["G4", "G(3,1,2)", "S3"] {
            let g = registry::build(name).unwrap();
            let t = g.character_table().unwrap();
            for f in g.flat_representatives() {
                let sub = g.parabolic(f).unwrap();
                let ts = sub.group.character_table().unwrap();
                for eta in ts.characters() {
                    let ind = induce(&g, &sub, eta).unwrap();
                    for chi in t.characters() {
                        let lhs = inner_product(&g, &ind, chi).unwrap();
                        let res = restrict(&g, &sub, chi).unwrap();
                        let rhs = inner_product(&sub.group, eta, &res).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_groups_rejected() {
        let a = registry::build("Cyc2").unwrap();
        let b = registry::build("Cyc2").unwrap();
        let fa = ClassFunction::trivial(&a);
        let fb = ClassFunction::trivial(&b);
        assert_eq!(fa.product(&fb), Err(ChartabError::GroupMismatch));
        assert_eq!(inner_product(&a, &fa, &fb), Err(ChartabError::GroupMismatch));
    }
}
