//! Finite complex reflection groups as explicit matrix groups.
//!
//! A [`ReflGroup`] is built by closing a generator list under
//! multiplication. Every element is stored as a matrix whose entries share a
//! single conductor: the least common multiple of the generator entry
//! conductors and of the element orders, so that character values live in
//! the same field as the matrices.

pub mod file;
mod flats;
mod matrix;
mod molien;
pub mod registry;

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::BigRational;
use thiserror::Error;

use crate::chartab::{CharacterTable, ChartabError};
use crate::exact::{CycScalar, ExactError, LaurentQ};

pub use flats::Flat;
pub use file::{parse_group_file, render_group_file, GroupSpec};
pub use matrix::Matrix;

/// Default closure bound; larger groups are treated as probably infinite.
pub const DEFAULT_MAX_ORDER: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator {index} is not a square matrix of dimension {dim}")]
    BadShape { index: usize, dim: usize },
    #[error("generator {index} is not invertible")]
    NotInvertible { index: usize },
    #[error("group order exceeds the bound {bound}; the generated group is probably infinite")]
    OrderBoundExceeded { bound: usize },
    #[error("group of order {order} is not generated by its reflections (they generate {generated})")]
    NotReflectionGenerated { order: usize, generated: usize },
    #[error("invariant degrees could not be extracted from the Molien series: {0}")]
    DegreeExtraction(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("group definition: {0}")]
    Definition(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Process-unique identity of a constructed group, used to reject mixing
/// class functions of different groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId(u64);

impl GroupId {
    fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(1);
        GroupId(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

/// A conjugacy class. `members` are element indices in increasing order and
/// the representative is the smallest of them.
#[derive(Debug, Clone)]
pub struct ConjClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub codim: usize,
    pub order: usize,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

pub struct ReflGroup {
    id: GroupId,
    name: String,
    dim: usize,
    conductor: u32,
    generators: Vec<usize>,
    elements: Vec<Matrix>,
    index: HashMap<Vec<BigRational>, usize>,
    inverse: Vec<usize>,
    orders: Vec<usize>,
    codims: Vec<usize>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    degrees: OnceLock<Result<Vec<u32>, GroupError>>,
    class_polys: OnceLock<Vec<Vec<CycScalar>>>,
    table: OnceLock<Result<CharacterTable, ChartabError>>,
    flats: OnceLock<Vec<Flat>>,
    structure: OnceLock<Vec<Vec<Vec<u64>>>>,
}

impl std::fmt::Debug for ReflGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReflGroup")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("order", &self.order())
            .field("conductor", &self.conductor)
            .finish()
    }
}

/// Builds the group generated by `generators`, bounded by [`DEFAULT_MAX_ORDER`].
pub fn generate_group(generators: Vec<Matrix>, name: &str) -> Result<ReflGroup, GroupError> {
    GroupBuilder::new(name).build(generators)
}

/// Construction options for [`ReflGroup`].
#[derive(Debug, Clone)]
pub struct GroupBuilder {
    name: String,
    dim: Option<usize>,
    max_order: usize,
    min_conductor: u32,
    require_reflections: bool,
}

impl GroupBuilder {
    pub fn new(name: &str) -> Self {
        GroupBuilder {
            name: name.to_string(),
            dim: None,
            max_order: DEFAULT_MAX_ORDER,
            min_conductor: 1,
            require_reflections: true,
        }
    }

    /// Needed only when the generator list may be empty.
    pub fn dim(mut self, dim: usize) -> Self {
        self.dim = Some(dim);
        self
    }

    pub fn max_order(mut self, bound: usize) -> Self {
        self.max_order = bound;
        self
    }

    /// Forces the working conductor to be a multiple of `m`.
    pub fn min_conductor(mut self, m: u32) -> Self {
        self.min_conductor = m;
        self
    }

    pub fn require_reflections(mut self, on: bool) -> Self {
        self.require_reflections = on;
        self
    }

    pub fn build(self, generators: Vec<Matrix>) -> Result<ReflGroup, GroupError> {
        let dim = match (self.dim, generators.first()) {
            (Some(d), _) => d,
            (None, Some(g)) => g.dim(),
            (None, None) => {
                return Err(GroupError::Definition(
                    "an empty generator list needs an explicit dimension".into(),
                ))
            }
        };
        for (index, g) in generators.iter().enumerate() {
            if g.dim() != dim || dim == 0 {
                return Err(GroupError::BadShape { index, dim });
            }
            if g.rank() != dim {
                return Err(GroupError::NotInvertible { index });
            }
        }

        let entry_conductor = generators
            .iter()
            .fold(self.min_conductor as u64, |acc, g| acc.lcm(&g.conductor()));
        let entry_conductor = checked_conductor(entry_conductor)?;
        let gens: Vec<Matrix> = generators
            .iter()
            .map(|g| g.lift(entry_conductor))
            .collect::<Result<_, _>>()?;

        // Breadth-first closure under right multiplication by generators.
        let mut elements = vec![Matrix::identity(dim).lift(entry_conductor)?];
        let mut index = HashMap::new();
        index.insert(elements[0].key(entry_conductor), 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let p = elements[i].mul(g);
                let key = p.key(entry_conductor);
                if let Entry::Vacant(slot) = index.entry(key) {
                    if elements.len() >= self.max_order {
                        return Err(GroupError::OrderBoundExceeded {
                            bound: self.max_order,
                        });
                    }
                    slot.insert(elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }

        let lookup = |index: &HashMap<Vec<BigRational>, usize>, m: &Matrix, cond: u32| -> usize {
            *index.get(&m.key(cond)).expect("closed under multiplication")
        };

        let mut orders = Vec::with_capacity(elements.len());
        let mut inverse = Vec::with_capacity(elements.len());
        for (i, w) in elements.iter().enumerate() {
            let mut power = w.clone();
            let mut prev = 0;
            let mut k = 1;
            while !power.is_identity() {
                prev = lookup(&index, &power, entry_conductor);
                power = power.mul(w);
                k += 1;
            }
            orders.push(k);
            inverse.push(if k == 1 { i } else { prev });
        }
        let exponent = orders.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64)));
        let conductor = checked_conductor(exponent.lcm(&(entry_conductor as u64)))?;
        if conductor != entry_conductor {
            elements = elements
                .iter()
                .map(|m| m.lift(conductor))
                .collect::<Result<_, _>>()?;
            index = elements
                .iter()
                .enumerate()
                .map(|(i, m)| (m.key(conductor), i))
                .collect();
        }
        let generators: Vec<usize> = gens
            .iter()
            .map(|g| lookup(&index, g, conductor))
            .collect();

        let codims: Vec<usize> = elements.iter().map(|w| dim - w.fixed_space().len()).collect();

        let mut group = ReflGroup {
            id: GroupId::fresh(),
            name: self.name,
            dim,
            conductor,
            generators,
            elements,
            index,
            inverse,
            orders,
            codims,
            classes: Vec::new(),
            class_of: Vec::new(),
            degrees: OnceLock::new(),
            class_polys: OnceLock::new(),
            table: OnceLock::new(),
            flats: OnceLock::new(),
            structure: OnceLock::new(),
        };
        group.compute_classes();

        if self.require_reflections {
            let reflections = group.reflections();
            let generated = group.closure_of(&reflections).len();
            if generated != group.order() {
                return Err(GroupError::NotReflectionGenerated {
                    order: group.order(),
                    generated,
                });
            }
        }
        Ok(group)
    }
}

fn checked_conductor(m: u64) -> Result<u32, GroupError> {
    if m > crate::exact::MAX_CONDUCTOR as u64 {
        return Err(ExactError::ConductorOverflow {
            conductor: m,
            bound: crate::exact::MAX_CONDUCTOR,
        }
        .into());
    }
    Ok(m as u32)
}

impl ReflGroup {
    fn compute_classes(&mut self) {
        let n = self.elements.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut members = vec![start];
            class_of[start] = cid;
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                for &g in &self.generators {
                    let y = self.conjugate(g, x);
                    if class_of[y] == usize::MAX {
                        class_of[y] = cid;
                        members.push(y);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(ConjClass {
                representative: members[0],
                codim: self.codims[start],
                order: self.orders[start],
                members,
            });
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Dimension `n` of the ambient space `V`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The working conductor shared by all matrix entries.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of a matrix in the group, if it belongs to it.
    pub fn find(&self, m: &Matrix) -> Option<usize> {
        let m = m.lift(self.conductor).ok()?;
        self.index.get(&m.key(self.conductor)).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].mul(&self.elements[b]);
        self.index[&p.key(self.conductor)]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^{-1}`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    /// `cod(w) = n - dim V^w`.
    pub fn codim(&self, a: usize) -> usize {
        self.codims[a]
    }

    pub fn is_reflection(&self, a: usize) -> bool {
        self.codims[a] == 1
    }

    pub fn reflections(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.is_reflection(i)).collect()
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// Class of the inverses of the elements of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of[self.inverse[self.classes[c].representative]]
    }

    pub fn centralizer_order(&self, a: usize) -> usize {
        self.order() / self.classes[self.class_of[a]].size()
    }

    /// Element indices of the subgroup generated by `gens`.
    pub fn closure_of(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    /// Elementary symmetric functions `e_0..e_n` of the eigenvalues of a class
    /// representative on `V`, from traces of powers via Newton's identities.
    pub fn class_elementary_symmetric(&self, c: usize) -> &[CycScalar] {
        &self.class_polys.get_or_init(|| {
            (0..self.num_classes())
                .map(|c| {
                    let w = self.classes[c].representative;
                    let power_sums: Vec<CycScalar> = (1..=self.dim)
                        .map(|k| self.elements[self.power(w, k)].trace())
                        .collect();
                    elementary_from_power_sums(&power_sums)
                })
                .collect()
        })[c]
    }

    /// `det(1 - q w)` for `w` in class `c`.
    pub fn det_one_minus_q(&self, c: usize) -> LaurentQ {
        self.class_elementary_symmetric(c)
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let sign = if k % 2 == 0 { e.clone() } else { -e };
                LaurentQ::monomial(sign, k as i64)
            })
            .sum()
    }

    /// Structure constants of the class algebra:
    /// `Σ(C_a) Σ(C_b) = Σ_c s[a][b][c] Σ(C_c)`.
    pub fn class_structure_constants(&self) -> &[Vec<Vec<u64>>] {
        self.structure.get_or_init(|| {
            let k = self.num_classes();
            let mut s = vec![vec![vec![0u64; k]; k]; k];
            for (c, class) in self.classes.iter().enumerate() {
                let g = class.representative;
                for x in 0..self.order() {
                    // x * (x^{-1} g) = g
                    let y = self.mul(self.inverse[x], g);
                    s[self.class_of[x]][self.class_of[y]][c] += 1;
                }
            }
            s
        })
    }

    /// Molien-series invariant degrees, sorted ascending.
    pub fn invariant_degrees(&self) -> Result<Vec<u32>, GroupError> {
        self.degrees
            .get_or_init(|| molien::invariant_degrees(self))
            .clone()
    }

    pub fn character_table(&self) -> Result<&CharacterTable, ChartabError> {
        self.table
            .get_or_init(|| CharacterTable::compute(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// All flats (intersections of reflecting hyperplanes), sorted by codim.
    pub fn flats(&self) -> &[Flat] {
        self.flats.get_or_init(|| flats::enumerate(self))
    }

    /// Flats grouped by codimension `r = 0..=n`.
    pub fn parabolic_subgroups(&self) -> Vec<Vec<&Flat>> {
        let mut by_codim = vec![Vec::new(); self.dim + 1];
        for f in self.flats() {
            by_codim[f.codim].push(f);
        }
        by_codim
    }

    /// One flat from each `W`-orbit of flats.
    pub fn flat_representatives(&self) -> Vec<&Flat> {
        self.flats().iter().filter(|f| f.is_orbit_representative).collect()
    }

    /// The subgroup generated by the given elements, as a standalone group
    /// over the same conductor together with its embedding.
    pub fn subgroup(
        &self,
        gens: &[usize],
        name: &str,
        require_reflections: bool,
    ) -> Result<Subgroup, GroupError> {
        let sub = GroupBuilder::new(name)
            .dim(self.dim)
            .min_conductor(self.conductor)
            .require_reflections(require_reflections)
            .max_order(self.order())
            .build(gens.iter().map(|&g| self.elements[g].clone()).collect())?;
        let embedding = sub
            .elements
            .iter()
            .map(|m| self.find(m).expect("subgroup element lies in the group"))
            .collect();
        Ok(Subgroup {
            group: sub,
            parent: self.id,
            embedding,
        })
    }

    /// The parabolic subgroup attached to a flat, built from the reflections
    /// it contains.
    pub fn parabolic(&self, flat: &Flat) -> Result<Subgroup, GroupError> {
        let gens: Vec<usize> = flat
            .parabolic
            .iter()
            .copied()
            .filter(|&w| self.is_reflection(w))
            .collect();
        let name = format!("{}|W'(r={})", self.name, flat.codim);
        let sub = self.subgroup(&gens, &name, true)?;
        let mut members = sub.embedding.clone();
        members.sort_unstable();
        if members != flat.parabolic {
            return Err(GroupError::NotReflectionGenerated {
                order: flat.parabolic.len(),
                generated: members.len(),
            });
        }
        Ok(sub)
    }
}

/// Newton's identities: `e_0..e_k` from the power sums `p_1..p_k`.
pub fn elementary_from_power_sums(p: &[CycScalar]) -> Vec<CycScalar> {
    let mut e = vec![CycScalar::one()];
    for k in 1..=p.len() {
        let mut acc = CycScalar::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        e.push(acc.scale(&BigRational::new(1.into(), (k as i64).into())));
    }
    e
}

/// A subgroup `H ≤ G` as its own group plus the index map `H → G`.
#[derive(Debug)]
pub struct Subgroup {
    pub group: ReflGroup,
    pub parent: GroupId,
    pub embedding: Vec<usize>,
}

impl Subgroup {
    /// The whole group viewed as a subgroup of itself.
    pub fn whole(g: &ReflGroup) -> Result<Subgroup, GroupError> {
        let gens: Vec<usize> = g.generators().to_vec();
        g.subgroup(&gens, g.name(), false)
    }

    pub fn trivial(g: &ReflGroup) -> Result<Subgroup, GroupError> {
        g.subgroup(&[], &format!("{}|1", g.name()), false)
    }

    pub fn check_parent(&self, g: &ReflGroup) -> bool {
        self.parent == g.id() && self.embedding.iter().all(|&i| i < g.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu2_is_order_two() {
        let g = registry::build("Cyc2").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.num_classes(), 2);
        let codims: Vec<usize> = g.classes().iter().map(|c| c.codim).collect();
        assert_eq!(codims, vec![0, 1]);
    }

    #[test]
    fn g4_closure_and_classes() {
        let g = registry::build("G4").unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.num_classes(), 7);
        let mut codims: Vec<usize> = g.classes().iter().map(|c| c.codim).collect();
        codims.sort_unstable();
        assert_eq!(codims, vec![0, 1, 1, 2, 2, 2, 2]);
        let sizes: usize = g.classes().iter().map(ConjClass::size).sum();
        assert_eq!(sizes, 24);
        for c in g.classes() {
            assert_eq!(24 % c.size(), 0);
        }
        // Class of s has 4 elements: |C_W(s)| = 6.
        assert_eq!(g.centralizer_order(g.generators()[0]), 6);
        assert_eq!(g.reflections().len(), 8);
    }

    #[test]
    fn signed_permutations() {
        let g = registry::build("G(2,1,2)").unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn class_invariants_agree() {
        let g = registry::build("G4").unwrap();
        for (ci, c) in g.classes().iter().enumerate() {
            let t0 = g.element(c.representative).trace();
            for &m in &c.members {
                assert_eq!(g.class_of(m), ci);
                assert_eq!(g.codim(m), c.codim);
                assert_eq!(g.element(m).trace(), t0);
                assert_eq!(g.element_order(m), c.order);
            }
        }
        assert_eq!(g.codim(0), 0);
    }

    #[test]
    fn infinite_group_hits_bound() {
        let two = CycScalar::from_integer(2);
        let m = Matrix::diagonal(vec![two]);
        let err = GroupBuilder::new("inf")
            .max_order(50)
            .require_reflections(false)
            .build(vec![m])
            .unwrap_err();
        assert_eq!(err, GroupError::OrderBoundExceeded { bound: 50 });
    }

    #[test]
    fn singular_generator_rejected() {
        let m = Matrix::diagonal(vec![CycScalar::one(), CycScalar::zero()]);
        assert_eq!(
            generate_group(vec![m], "bad").unwrap_err(),
            GroupError::NotInvertible { index: 0 }
        );
    }

    #[test]
    fn non_reflection_group_rejected() {
        // -I on C^2 has codim 2 and generates a group with no reflections.
        let m = Matrix::diagonal(vec![CycScalar::from_integer(-1), CycScalar::from_integer(-1)]);
        assert!(matches!(
            generate_group(vec![m], "minus-one"),
            Err(GroupError::NotReflectionGenerated { order: 2, generated: 1 })
        ));
    }

    #[test]
    fn structure_constants_count_products() {
        let g = registry::build("S3").unwrap();
        let s = g.class_structure_constants();
        // Σ(C_a) Σ(1) = Σ(C_a).
        for (a, row) in s.iter().enumerate() {
            for (c, &n) in row[0].iter().enumerate() {
                assert_eq!(n, u64::from(a == c));
            }
        }
    }
}
