//! The centre `Z(ℂW)` in the class-sum basis, its codimension filtration,
//! transfer maps from subgroups, and family subalgebras.

mod family;

use thiserror::Error;

use crate::chartab::{induce, inner_product, int_ratio, ChartabError, ClassFunction};
use crate::exact::{CycScalar, Subspace};
use crate::groups::{GroupId, ReflGroup, Subgroup};

pub use family::{parse_family_file, rees_lattice, FamilyPartition, ReesLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CenterError {
    #[error("central element belongs to a different group")]
    GroupMismatch,
    #[error("subgroup embedding does not belong to this group")]
    EmbeddingMismatch,
    #[error("transferred element is not central")]
    NotCentral,
    #[error("invalid family partition: {0}")]
    InvalidPartition(String),
    #[error("family file: {0}")]
    Parse(String),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
}

/// An element of `Z(ℂW)`, written in the class-sum basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterElement {
    group: GroupId,
    coords: Vec<CycScalar>,
}

impl CenterElement {
    pub fn new(g: &ReflGroup, coords: Vec<CycScalar>) -> Result<Self, CenterError> {
        if coords.len() != g.num_classes() {
            return Err(CenterError::GroupMismatch);
        }
        Ok(CenterElement {
            group: g.id(),
            coords,
        })
    }

    pub fn zero(g: &ReflGroup) -> Self {
        CenterElement {
            group: g.id(),
            coords: vec![CycScalar::zero(); g.num_classes()],
        }
    }

    pub fn unit(g: &ReflGroup) -> Self {
        class_sum(g, g.identity())
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn coords(&self) -> &[CycScalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<CycScalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CycScalar::is_zero)
    }

    fn zip(&self, other: &Self, f: impl Fn(&CycScalar, &CycScalar) -> CycScalar) -> Result<Self, CenterError> {
        if self.group != other.group {
            return Err(CenterError::GroupMismatch);
        }
        Ok(CenterElement {
            group: self.group,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, CenterError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CenterError> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        CenterElement {
            group: self.group,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Product in `Z(ℂW)` through the class structure constants.
    pub fn mul(&self, g: &ReflGroup, other: &Self) -> Result<Self, CenterError> {
        self.check(g)?;
        other.check(g)?;
        let s = g.class_structure_constants();
        let k = g.num_classes();
        let mut out = vec![CycScalar::zero(); k];
        for (a, x) in self.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in other.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (c, slot) in out.iter_mut().enumerate() {
                    let n = s[a][b][c];
                    if n != 0 {
                        *slot += &xy.scale(&int_ratio(n as usize, 1));
                    }
                }
            }
        }
        Ok(CenterElement {
            group: self.group,
            coords: out,
        })
    }

    fn check(&self, g: &ReflGroup) -> Result<(), CenterError> {
        if self.group != g.id() {
            return Err(CenterError::GroupMismatch);
        }
        Ok(())
    }
}

/// `Σ_W(w)`: the sum of the conjugates of `w`.
pub fn class_sum(g: &ReflGroup, w: usize) -> CenterElement {
    let mut coords = vec![CycScalar::zero(); g.num_classes()];
    coords[g.class_of(w)] = CycScalar::one();
    CenterElement {
        group: g.id(),
        coords,
    }
}

/// `ω_χ(z) = Σ_C z_C |C| χ(C) / χ(1)`.
pub fn central_character(g: &ReflGroup, chi: &ClassFunction, z: &CenterElement) -> Result<CycScalar, CenterError> {
    z.check(g)?;
    if chi.group() != g.id() {
        return Err(CenterError::GroupMismatch);
    }
    let total: CycScalar = z
        .coords
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (x * chi.value(c)).scale(&int_ratio(g.classes()[c].size(), 1)))
        .sum();
    Ok(&total * &chi.degree().inv().map_err(ChartabError::from)?)
}

/// `e_χ = (χ(1)/|W|) Σ_w χ(w^{-1}) w`.
pub fn idempotent(g: &ReflGroup, chi: &ClassFunction) -> Result<CenterElement, CenterError> {
    if chi.group() != g.id() {
        return Err(CenterError::GroupMismatch);
    }
    let f = chi.degree().scale(&int_ratio(1, g.order()));
    Ok(CenterElement {
        group: g.id(),
        coords: (0..g.num_classes())
            .map(|c| &f * chi.value(g.inverse_class(c)))
            .collect(),
    })
}

/// Coordinates of `z` in the idempotent basis, in character-table order:
/// `z = Σ_χ ω_χ(z) e_χ`.
pub fn idempotent_coords(g: &ReflGroup, z: &CenterElement) -> Result<Vec<CycScalar>, CenterError> {
    let table = g.character_table()?;
    table
        .characters()
        .iter()
        .map(|chi| central_character(g, chi, z))
        .collect()
}

/// `Σ_χ c_χ e_χ` in class-sum coordinates.
pub fn from_idempotent_coords(g: &ReflGroup, coeffs: &[CycScalar]) -> Result<CenterElement, CenterError> {
    let table = g.character_table()?;
    if coeffs.len() != table.len() {
        return Err(CenterError::GroupMismatch);
    }
    let mut out = CenterElement::zero(g);
    for (c, chi) in coeffs.iter().zip(table.characters()) {
        if !c.is_zero() {
            out = out.add(&idempotent(g, chi)?.scale(c))?;
        }
    }
    Ok(out)
}

/// The chain `F_0 ⊆ … ⊆ F_n` of `Z(ℂW)`, `F_i` spanned by the class sums of
/// codimension at most `i`.
#[derive(Debug, Clone)]
pub struct FiltrationLattice {
    pub pieces: Vec<Subspace>,
    pub dims: Vec<usize>,
}

impl FiltrationLattice {
    /// `F_min(i, n)`.
    pub fn piece(&self, i: usize) -> &Subspace {
        &self.pieces[i.min(self.pieces.len() - 1)]
    }
}

pub fn filtration(g: &ReflGroup) -> FiltrationLattice {
    let k = g.num_classes();
    let pieces: Vec<Subspace> = (0..=g.dim())
        .map(|i| {
            Subspace::span(
                k,
                g.classes()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.codim <= i)
                    .map(|(ci, _)| unit_vector(k, ci)),
            )
        })
        .collect();
    let dims = pieces.iter().map(Subspace::dim).collect();
    FiltrationLattice { pieces, dims }
}

pub(crate) fn unit_vector(k: usize, i: usize) -> Vec<CycScalar> {
    let mut v = vec![CycScalar::zero(); k];
    v[i] = CycScalar::one();
    v
}

/// `Tr_H^G(z) = Σ_{x ∈ [G/H]} x z x^{-1}`, computed element by element.
pub fn transfer(g: &ReflGroup, sub: &Subgroup, z: &CenterElement) -> Result<CenterElement, CenterError> {
    if !sub.check_parent(g) {
        return Err(CenterError::EmbeddingMismatch);
    }
    z.check(&sub.group)?;
    let h = &sub.group;
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &e in &sub.embedding {
            covered[g.mul(x, e)] = true;
        }
    }
    let mut elementwise = vec![CycScalar::zero(); g.order()];
    for (hi, &e) in sub.embedding.iter().enumerate() {
        let c = &z.coords[h.class_of(hi)];
        if c.is_zero() {
            continue;
        }
        for &x in &reps {
            elementwise[g.conjugate(x, e)] += c;
        }
    }
    let mut coords = Vec::with_capacity(g.num_classes());
    for class in g.classes() {
        let v = &elementwise[class.representative];
        if class.members.iter().any(|&m| elementwise[m] != *v) {
            return Err(CenterError::NotCentral);
        }
        coords.push(v.clone());
    }
    Ok(CenterElement {
        group: g.id(),
        coords,
    })
}

/// Closed form for class sums: `Tr_H^G(Σ_H(h)) = (|C_G(h)| / |C_H(h)|) Σ_G(h)`.
pub fn transfer_class_sum_formula(g: &ReflGroup, sub: &Subgroup, h: usize) -> Result<CenterElement, CenterError> {
    if !sub.check_parent(g) {
        return Err(CenterError::EmbeddingMismatch);
    }
    let image = sub.embedding[h];
    let ratio = int_ratio(g.centralizer_order(image), sub.group.centralizer_order(h));
    Ok(class_sum(g, image).scale(&CycScalar::from_rational(ratio)))
}

/// Closed form for idempotents:
/// `Tr_H^G(e_η) = (η(1)/|H|) Σ_γ (|G|/γ(1)) ⟨γ, Ind η⟩ e_γ`.
pub fn transfer_idempotent_formula(g: &ReflGroup, sub: &Subgroup, eta: &ClassFunction) -> Result<CenterElement, CenterError> {
    let ind = induce(g, sub, eta)?;
    let table = g.character_table()?;
    let front = eta.degree().scale(&int_ratio(1, sub.group.order()));
    let mut coeffs = Vec::with_capacity(table.len());
    for gamma in table.characters() {
        let m = inner_product(g, gamma, &ind)?;
        let c = &(&m * &gamma.degree().inv().map_err(ChartabError::from)?)
            .scale(&int_ratio(g.order(), 1))
            * &front;
        coeffs.push(c);
    }
    from_idempotent_coords(g, &coeffs)
}

/// Span of `Tr_{W'}^W(Z(ℂW'))` over the given parabolic subgroups.
pub fn transfer_span(g: &ReflGroup, subs: &[&Subgroup]) -> Result<Subspace, CenterError> {
    let mut vectors = Vec::new();
    for sub in subs {
        for class in sub.group.classes() {
            let z = class_sum(&sub.group, class.representative);
            vectors.push(transfer(g, sub, &z)?.coords);
        }
    }
    Ok(Subspace::span(g.num_classes(), vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::registry;

    fn zeta3() -> CycScalar {
        CycScalar::zeta(3).unwrap()
    }

    #[test]
    fn g4_class_sums_and_central_characters() {
        let g = registry::build("G4").unwrap();
        let t = g.character_table().unwrap();
        let s = g.generators()[0];
        assert_eq!(g.classes()[g.class_of(s)].size(), 4);
        let sig = class_sum(&g, s);
        assert!(central_character(&g, t.get("theta").unwrap(), &sig).unwrap().is_zero());
        let s2 = g.mul(s, s);
        let z = CenterElement::unit(&g)
            .scale(&CycScalar::from_integer(4))
            .add(&sig)
            .unwrap()
            .add(&class_sum(&g, s2))
            .unwrap();
        assert_eq!(
            central_character(&g, t.get("chi_eps").unwrap(), &z).unwrap(),
            CycScalar::from_integer(6)
        );
        // Multiplicativity on a product of class sums.
        let prod = sig.mul(&g, &class_sum(&g, s2)).unwrap();
        for chi in t.characters() {
            let lhs = central_character(&g, chi, &prod).unwrap();
            let rhs = &central_character(&g, chi, &sig).unwrap()
                * &central_character(&g, chi, &class_sum(&g, s2)).unwrap();
            assert_eq!(lhs, rhs);
        }
        let _ = zeta3();
    }

    #[test]
    fn idempotents_are_complete_and_orthogonal() {
        for name in registry::names() {
            let g = registry::build(&name).unwrap();
            let t = g.character_table().unwrap();
            let es: Vec<CenterElement> = t.characters().iter().map(|c| idempotent(&g, c).unwrap()).collect();
            let mut total = CenterElement::zero(&g);
            for (i, a) in es.iter().enumerate() {
                total = total.add(a).unwrap();
                for (j, b) in es.iter().enumerate() {
                    let p = a.mul(&g, b).unwrap();
                    if i == j {
                        assert_eq!(&p, a);
                    } else {
                        assert!(p.is_zero());
                    }
                    let w = central_character(&g, t.character(i), b).unwrap();
                    assert_eq!(w.is_one(), i == j);
                }
            }
            assert_eq!(total, CenterElement::unit(&g), "{name}");
        }
    }

    #[test]
    fn mu2_idempotent() {
        let g = registry::build("Cyc2").unwrap();
        let t = g.character_table().unwrap();
        let e1 = idempotent(&g, t.get("1").unwrap()).unwrap();
        let half = CycScalar::from_ratio(1, 2);
        assert_eq!(e1.coords(), &[half.clone(), half]);
        let g = registry::build("Cyc1").unwrap();
        let t = g.character_table().unwrap();
        assert_eq!(idempotent(&g, t.character(0)).unwrap(), CenterElement::unit(&g));
    }

    #[test]
    fn basis_change_is_involutive() {
        let g = registry::build("G(3,1,2)").unwrap();
        let z = CenterElement::new(
            &g,
            (0..g.num_classes()).map(|i| CycScalar::from_integer(i as i64 - 3)).collect(),
        )
        .unwrap();
        let back = from_idempotent_coords(&g, &idempotent_coords(&g, &z).unwrap()).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn filtration_dims() {
        let cases = [("G4", vec![1, 3, 7]), ("Cyc5", vec![1, 5]), ("G(2,1,2)", vec![1, 3, 5]), ("S3", vec![1, 2, 3])];
        for (name, want) in cases {
            let g = registry::build(name).unwrap();
            assert_eq!(filtration(&g).dims, want, "{name}");
        }
    }

    #[test]
    fn transfer_examples() {
        let g = registry::build("G4").unwrap();
        let whole = Subgroup::whole(&g).unwrap();
        let z = class_sum(&whole.group, g.generators()[1]);
        let tz = transfer(&g, &whole, &z).unwrap();
        assert_eq!(tz.coords(), z.coords());

        let triv = Subgroup::trivial(&g).unwrap();
        let one = CenterElement::unit(&triv.group);
        assert_eq!(
            transfer(&g, &triv, &one).unwrap(),
            CenterElement::unit(&g).scale(&CycScalar::from_integer(24))
        );

        let s = g.generators()[0];
        let h = g.subgroup(&[s], "<s>", true).unwrap();
        let hs = h.embedding.iter().position(|&e| e == s).unwrap();
        let t = transfer(&g, &h, &class_sum(&h.group, hs)).unwrap();
        assert_eq!(t, class_sum(&g, s).scale(&CycScalar::from_integer(2)));
        assert_eq!(t, transfer_class_sum_formula(&g, &h, hs).unwrap());
    }
}
