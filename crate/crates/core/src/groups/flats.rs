use crate::exact::{linalg, CycScalar, Subspace, Vector};

use super::ReflGroup;

/// An intersection of reflecting hyperplanes together with its pointwise
/// stabilizer.
#[derive(Debug, Clone)]
pub struct Flat {
    pub subspace: Subspace,
    pub codim: usize,
    /// Element indices fixing the flat pointwise, ascending.
    pub parabolic: Vec<usize>,
    /// Index of the `W`-orbit this flat belongs to.
    pub orbit: usize,
    pub is_orbit_representative: bool,
}

fn fixes_pointwise(g: &ReflGroup, w: usize, s: &Subspace) -> bool {
    let m = g.element(w);
    s.basis().iter().all(|v| m.apply(v) == *v)
}

fn image(g: &ReflGroup, w: usize, s: &Subspace) -> Subspace {
    let m = g.element(w);
    Subspace::span(s.ambient(), s.basis().iter().map(|v| m.apply(v)))
}

fn hyperplane(g: &ReflGroup, w: usize) -> Subspace {
    Subspace::span(g.dim(), g.element(w).fixed_space())
}

pub(super) fn enumerate(g: &ReflGroup) -> Vec<Flat> {
    let n = g.dim();
    let mut hyperplanes: Vec<Subspace> = Vec::new();
    for s in g.reflections() {
        let h = hyperplane(g, s);
        if !hyperplanes.contains(&h) {
            hyperplanes.push(h);
        }
    }

    // Incremental closure: every new flat is intersected with every
    // hyperplane until nothing new appears.
    let mut subspaces = vec![Subspace::full(n)];
    let mut k = 0;
    while k < subspaces.len() {
        let current = subspaces[k].clone();
        for h in &hyperplanes {
            let next = current.intersection(h);
            if !subspaces.contains(&next) {
                subspaces.push(next);
            }
        }
        k += 1;
    }
    // Stable sort keeps discovery order within a codimension.
    subspaces.sort_by_key(|s| n - s.dim());

    let mut orbit = vec![usize::MAX; subspaces.len()];
    let mut next_orbit = 0;
    for i in 0..subspaces.len() {
        if orbit[i] != usize::MAX {
            continue;
        }
        orbit[i] = next_orbit;
        let mut stack = vec![i];
        while let Some(j) = stack.pop() {
            for &gen in g.generators() {
                let img = image(g, gen, &subspaces[j]);
                let pos = subspaces
                    .iter()
                    .position(|s| *s == img)
                    .expect("the flat lattice is W-stable");
                if orbit[pos] == usize::MAX {
                    orbit[pos] = next_orbit;
                    stack.push(pos);
                }
            }
        }
        next_orbit += 1;
    }

    let mut seen = vec![false; next_orbit];
    subspaces
        .into_iter()
        .zip(orbit)
        .map(|(subspace, orbit)| {
            let parabolic = (0..g.order())
                .filter(|&w| fixes_pointwise(g, w, &subspace))
                .collect();
            let is_orbit_representative = !std::mem::replace(&mut seen[orbit], true);
            Flat {
                codim: n - subspace.dim(),
                subspace,
                parabolic,
                orbit,
                is_orbit_representative,
            }
        })
        .collect()
}

impl Flat {
    /// A basis of the annihilator `(V')^⊥ ⊆ V*` in dual coordinates: the row
    /// vectors `a` with `a · v = 0` for every `v` in the flat.
    pub fn annihilator(&self) -> Vec<Vector> {
        linalg::kernel(self.subspace.basis(), self.subspace.ambient())
    }

    pub fn contains(&self, v: &[CycScalar]) -> bool {
        self.subspace.contains(v)
    }
}
