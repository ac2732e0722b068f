use std::collections::BTreeSet;

use serde::Deserialize;


use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::exact::{CycScalar, Subspace};
use crate::groups::{GroupId, ReflGroup};

use super::{filtration, CenterElement, CenterError};

/// A partition of `Irr(W)` into families, by character name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPartition {
    group: GroupId,
    blocks: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamilies {
    #[serde(default)]
    group: Option<String>,
    blocks: Vec<Vec<String>>,
}

/// Parses `blocks = [["1", "eps"], ["eps2"]]`, with an optional
/// `group = "..."` line. Names are validated later against a table.
pub fn parse_family_file(text: &str) -> Result<(Option<String>, Vec<Vec<String>>), CenterError> {
    let raw: RawFamilies = toml::from_str(text).map_err(|e| CenterError::Parse(e.message().to_string()))?;
    Ok((raw.group, raw.blocks))
}

impl FamilyPartition {
    pub fn new(g: &ReflGroup, blocks: Vec<Vec<String>>) -> Result<Self, CenterError> {
        let table = g.character_table()?;
        let mut seen = BTreeSet::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(CenterError::InvalidPartition("empty block".into()));
            }
            for name in block {
                table
                    .index_of(name)
                    .map_err(|_| CenterError::InvalidPartition(format!("unknown character {name:?}")))?;
                if !seen.insert(name.clone()) {
                    return Err(CenterError::InvalidPartition(format!("{name:?} occurs twice")));
                }
            }
        }
        if seen.len() != table.len() {
            let missing: Vec<&String> = table.names().iter().filter(|n| !seen.contains(*n)).collect();
            return Err(CenterError::InvalidPartition(format!("blocks miss {missing:?}")));
        }
        Ok(FamilyPartition {
            group: g.id(),
            blocks,
        })
    }

    /// One block per irreducible character.
    pub fn singletons(g: &ReflGroup) -> Result<Self, CenterError> {
        let names = g.character_table()?.names().to_vec();
        Self::new(g, names.into_iter().map(|n| vec![n]).collect())
    }

    /// A single block containing every character.
    pub fn single_block(g: &ReflGroup) -> Result<Self, CenterError> {
        let names = g.character_table()?.names().to_vec();
        Self::new(g, vec![names])
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    /// `e_ℰ = Σ_{χ ∈ ℰ} e_χ` for block `i`.
    pub fn family_idempotent(&self, g: &ReflGroup, i: usize) -> Result<CenterElement, CenterError> {
        if self.group != g.id() {
            return Err(CenterError::GroupMismatch);
        }
        let table = g.character_table()?;
        let chars = self.blocks[i].iter().map(|name| table.get(name)).collect::<Result<Vec<_>, _>>()?;
        // Σ_χ χ(1) χ(w^{-1}), scaled by 1/|W| once at the end.
        let scale = BigRational::new(BigInt::one(), BigInt::from(g.order()));
        let coords = (0..g.num_classes())
            .map(|c| {
                let inv = g.inverse_class(c);
                let s: CycScalar = chars.iter().map(|chi| chi.degree() * chi.value(inv)).sum();
                s.scale(&scale)
            })
            .collect();
        CenterElement::new(g, coords)
    }
}

/// `F_i(A) = A ∩ F_i(ℂW)` for the span `A` of the family idempotents.
#[derive(Debug, Clone)]
pub struct ReesLattice {
    pub bases: Vec<Subspace>,
    /// `dim F_i(A)` for `i = 0..=n`.
    pub dims: Vec<usize>,
    /// `dim F_i(A) - dim F_{i-1}(A)`.
    pub gr_dims: Vec<usize>,
}

pub fn rees_lattice(g: &ReflGroup, fam: &FamilyPartition) -> Result<ReesLattice, CenterError> {
    let k = g.num_classes();
    let gens = (0..fam.blocks.len())
        .map(|i| fam.family_idempotent(g, i).map(CenterElement::into_coords))
        .collect::<Result<Vec<_>, _>>()?;
    let a = Subspace::span(k, gens);
    let bases: Vec<Subspace> = filtration(g)
        .pieces
        .iter()
        .map(|f| a.intersection(f))
        .collect();
    let dims: Vec<usize> = bases.iter().map(Subspace::dim).collect();
    let gr_dims = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| if i == 0 { d } else { d - dims[i - 1] })
        .collect();
    Ok(ReesLattice { bases, dims, gr_dims })
}
