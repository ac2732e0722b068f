use rayon::prelude::*;
use serde::Serialize;

use crate::center::filtration;
use crate::chartab::{ClassFunction, GradedCharacter};
use crate::exact::{format_literal_in, CycScalar, Subspace, Vector};
use crate::groups::{GroupId, ReflGroup};

use super::{ChernContext, ChernError, ImageClass};

/// Degree-wise spans of the `ħ^j` components of the classes added so far,
/// in the class-sum basis of `Z(ℂW)`.
#[derive(Debug, Clone)]
pub struct ImageLattice {
    group: GroupId,
    degrees: Vec<Subspace>,
}

impl ImageLattice {
    pub fn new(g: &ReflGroup, order: usize) -> Self {
        ImageLattice {
            group: g.id(),
            degrees: vec![Subspace::zero(g.num_classes()); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn add_vector(&mut self, j: usize, v: Vector) {
        if j < self.degrees.len() && v.iter().any(|x| !x.is_zero()) {
            self.degrees[j] = self.degrees[j].with_vector(v);
        }
    }

    /// Adds every homogeneous component of `class` up to the lattice order.
    pub fn add_class(&mut self, ctx: &ChernContext<'_>, class: &ImageClass) -> Result<(), ChernError> {
        if class.group() != self.group {
            return Err(ChernError::GroupMismatch);
        }
        for j in 0..=self.order().min(class.order()) {
            let v = ctx.component(class, j)?.into_coords();
            self.add_vector(j, v);
        }
        Ok(())
    }

    /// Closes under multiplication by `ħ`: degree `j` is pushed into `j + 1`.
    pub fn close_under_shift(&mut self) {
        for j in 1..self.degrees.len() {
            let lower = self.degrees[j - 1].clone();
            self.degrees[j] = self.degrees[j].sum(&lower);
        }
    }

    pub fn degree(&self, j: usize) -> &Subspace {
        &self.degrees[j]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Subspace::dim).collect()
    }
}

/// Result of comparing the generated lattice with `Rees_F(Z(ℂW))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremAReport {
    pub group: String,
    #[serde(rename = "N")]
    pub order: usize,
    pub degree_dims_image: Vec<usize>,
    pub degree_dims_rees: Vec<usize>,
    pub equal: bool,
    pub witnesses: Vec<String>,
}

impl TheoremAReport {
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# group\t{}\n# N\t{}\n# equal\t{}\n", self.group, self.order, self.equal);
        out.push_str("degree\timage\trees\n");
        for (j, (a, b)) in self.degree_dims_image.iter().zip(&self.degree_dims_rees).enumerate() {
            out.push_str(&format!("{j}\t{a}\t{b}\n"));
        }
        for w in &self.witnesses {
            out.push_str(&format!("# witness\t{w}\n"));
        }
        out
    }
}

/// Class-sum coordinates written over `z = ζ_conductor`.
pub(crate) fn render_vector(v: &[CycScalar], conductor: u32) -> String {
    let cells: Vec<String> = v
        .iter()
        .map(|x| format_literal_in(x, conductor).expect("values lie in the group's field"))
        .collect();
    format!("[{}] (z = ζ_{conductor})", cells.join(", "))
}

/// Builds the lattice generated by the unit and by
/// `(χ'(1)/|W'|) ch_c(Ind(∧(V')^⊥ ⊗ χ'))` for every flat representative and
/// every irreducible `χ'` of its parabolic, closes it under `ħ`, and compares
/// degree `j` with `F_min(j, n)`.
pub fn verify_theorem_a(g: &ReflGroup, order: usize) -> Result<TheoremAReport, ChernError> {
    let ctx = ChernContext::new(g)?;
    let flats = g.flat_representatives();
    let parabolics = flats
        .iter()
        .map(|f| g.parabolic(f))
        .collect::<Result<Vec<_>, _>>()?;
    for sub in &parabolics {
        sub.group.character_table()?;
    }
    let mut jobs = Vec::new();
    for (i, sub) in parabolics.iter().enumerate() {
        for c in 0..sub.group.num_classes() {
            jobs.push((i, c));
        }
    }
    let classes = jobs
        .par_iter()
        .map(|&(i, c)| {
            let sub = &parabolics[i];
            let chi = sub.group.character_table()?.character(c);
            Ok(ctx.star_generator(flats[i], sub, chi, order)?.class)
        })
        .collect::<Result<Vec<ImageClass>, ChernError>>()?;

    let mut lattice = ImageLattice::new(g, order);
    let unit = GradedCharacter::from_class_function(&ClassFunction::trivial(g), 0);
    lattice.add_class(&ctx, &ctx.ch_c(&unit, order)?)?;
    for class in &classes {
        lattice.add_class(&ctx, class)?;
    }
    lattice.close_under_shift();

    let filt = filtration(g);
    let mut witnesses = Vec::new();
    let mut rees_dims = Vec::with_capacity(order + 1);
    for j in 0..=order {
        let rees = filt.piece(j);
        rees_dims.push(rees.dim());
        let image = lattice.degree(j);
        if let Some(v) = image.basis().iter().find(|v| !rees.contains(v)) {
            witnesses.push(format!("degree {j}: image vector {} outside Rees", render_vector(v, g.conductor())));
        }
        if let Some(v) = rees.basis().iter().find(|v| !image.contains(v)) {
            witnesses.push(format!("degree {j}: Rees vector {} outside image", render_vector(v, g.conductor())));
        }
    }
    Ok(TheoremAReport {
        group: g.name().to_string(),
        order,
        degree_dims_image: lattice.dims(),
        degree_dims_rees: rees_dims,
        equal: witnesses.is_empty(),
        witnesses,
    })
}
