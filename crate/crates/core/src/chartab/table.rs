use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exact::{linalg, CycScalar, Subspace};
use crate::groups::{GroupId, ReflGroup};

use super::{det_character, inner_product, int_ratio, reflection_character, ChartabError, ClassFunction};

/// The irreducible characters of a group with their canonical names.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: GroupId,
    names: Vec<String>,
    characters: Vec<ClassFunction>,
}

impl CharacterTable {
    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn characters(&self) -> &[ClassFunction] {
        &self.characters
    }

    pub fn character(&self, i: usize) -> &ClassFunction {
        &self.characters[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ChartabError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ChartabError::UnknownCharacter(name.to_string()))
    }

    pub fn get(&self, name: &str) -> Result<&ClassFunction, ChartabError> {
        Ok(&self.characters[self.index_of(name)?])
    }

    /// Multiplicities `⟨f, χ⟩` of every irreducible in `f`.
    pub fn decompose(&self, g: &ReflGroup, f: &ClassFunction) -> Result<Vec<CycScalar>, ChartabError> {
        self.characters.iter().map(|chi| inner_product(g, f, chi)).collect()
    }

    pub(crate) fn compute(g: &ReflGroup) -> Result<CharacterTable, ChartabError> {
        let found = Peeler::new(g).run()?;
        let table = name_characters(g, found)?;
        table.check_orthogonality(g)?;
        Ok(table)
    }

    fn check_orthogonality(&self, g: &ReflGroup) -> Result<(), ChartabError> {
        for (i, a) in self.characters.iter().enumerate() {
            for (j, b) in self.characters.iter().enumerate().skip(i) {
                let ip = inner_product(g, a, b)?;
                if ip != CycScalar::from_integer(i64::from(i == j)) {
                    return Err(ChartabError::Orthogonality(format!(
                        "<{}, {}> = {ip}",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }
        let total: CycScalar = self.characters.iter().map(|c| c.degree() * c.degree()).sum();
        if total != CycScalar::from_integer(g.order() as i64) {
            return Err(ChartabError::Orthogonality(format!(
                "sum of squared degrees is {total}"
            )));
        }
        Ok(())
    }
}

/// Finds irreducibles by projecting candidate characters off the ones
/// already known. A residual of norm one is `±χ` for a new irreducible `χ`;
/// residuals of larger norm are kept in a pool and reduced against each other.
struct Peeler<'a> {
    g: &'a ReflGroup,
    found: Vec<ClassFunction>,
    pool: Vec<(ClassFunction, i64)>,
}

const POOL_LIMIT: usize = 48;

impl<'a> Peeler<'a> {
    fn new(g: &'a ReflGroup) -> Self {
        Peeler {
            g,
            found: Vec::new(),
            pool: Vec::new(),
        }
    }

    fn complete(&self) -> bool {
        self.found.len() == self.g.num_classes()
    }

    fn residual(&self, f: &ClassFunction) -> Result<ClassFunction, ChartabError> {
        let mut r = f.clone();
        for chi in &self.found {
            let m = inner_product(self.g, &r, chi)?;
            if !m.is_zero() {
                r = r.sub(&chi.scale(&m))?;
            }
        }
        Ok(r)
    }

    fn pairing(&self, a: &ClassFunction, b: &ClassFunction) -> Result<i64, ChartabError> {
        inner_product(self.g, a, b)?
            .to_i64()
            .ok_or_else(|| ChartabError::Orthogonality("virtual characters pair to a non-integer".into()))
    }

    /// Records an irreducible together with its Galois and complex conjugates.
    fn add_irreducible(&mut self, chi: ClassFunction) -> Result<(), ChartabError> {
        let m = self.g.conductor() as i64;
        let mut stack = vec![chi];
        while let Some(x) = stack.pop() {
            if self.found.contains(&x) {
                continue;
            }
            for j in (2..m).filter(|j| num_integer::gcd(*j, m) == 1) {
                stack.push(x.galois(j));
            }
            stack.push(x.dual(self.g));
            self.found.push(x);
        }
        let pool = std::mem::take(&mut self.pool);
        for (p, _) in pool {
            self.offer(p)?;
        }
        Ok(())
    }

    fn offer(&mut self, f: ClassFunction) -> Result<(), ChartabError> {
        if self.complete() {
            return Ok(());
        }
        let r = self.residual(&f)?;
        if r.is_zero() {
            return Ok(());
        }
        let norm = self.pairing(&r, &r)?;
        if norm == 1 {
            let negative = r.degree().to_i64().is_some_and(|d| d < 0);
            let chi = if negative { r.scale(&CycScalar::from_integer(-1)) } else { r };
            return self.add_irreducible(chi);
        }
        if self.pool.iter().any(|(p, _)| *p == r) {
            return Ok(());
        }
        let pos = self.pool.partition_point(|(_, n)| *n <= norm);
        self.pool.insert(pos, (r, norm));
        self.pool.truncate(POOL_LIMIT);
        Ok(())
    }

    /// Size-reduces pool members against each other, Gauss/LLL style, until
    /// no norm decreases.
    fn reduce_pool(&mut self) -> Result<(), ChartabError> {
        let mut changed = true;
        while changed && !self.complete() {
            changed = false;
            'outer: for i in 0..self.pool.len() {
                for j in 0..self.pool.len() {
                    if i == j {
                        continue;
                    }
                    let (u, nu) = &self.pool[i];
                    let (v, nv) = &self.pool[j];
                    let ip = self.pairing(u, v)?;
                    let m = (2 * ip + nv).div_euclid(2 * nv);
                    if m == 0 {
                        continue;
                    }
                    let new_norm = nu - 2 * m * ip + m * m * nv;
                    if new_norm >= *nu {
                        continue;
                    }
                    let w = u.sub(&v.scale(&CycScalar::from_integer(m)))?;
                    self.pool.remove(i);
                    self.offer(w)?;
                    changed = true;
                    break 'outer;
                }
            }
        }
        Ok(())
    }

    /// `(u * f)(g) = (1/|W|) Σ_x u(x) f(x^{-1} g)`.
    fn convolve(&self, u: &ClassFunction, f: &[CycScalar]) -> Vec<CycScalar> {
        let g = self.g;
        let s = g.class_structure_constants();
        let k = g.num_classes();
        let scale = int_ratio(1, g.order());
        (0..k)
            .map(|c| {
                let mut acc = CycScalar::zero();
                for (a, ua) in u.values().iter().enumerate() {
                    if ua.is_zero() {
                        continue;
                    }
                    for (b, fb) in f.iter().enumerate() {
                        let n = s[a][b][c];
                        if n != 0 && !fb.is_zero() {
                            acc += &(ua * fb).scale(&int_ratio(n as usize, 1));
                        }
                    }
                }
                acc.scale(&scale)
            })
            .collect()
    }

    /// Convolution by a virtual character `u` acts on each irreducible `χ`
    /// by the rational scalar `⟨u, χ⟩ / χ(1)`. Simultaneous eigenspaces of
    /// these operators on the orthogonal complement of the known characters
    /// are lines spanned by the missing irreducibles.
    fn split_by_convolution(&mut self) -> Result<(), ChartabError> {
        let g = self.g;
        let k = g.num_classes();
        let rows: Vec<Vec<CycScalar>> = self
            .found
            .iter()
            .map(|chi| {
                (0..k)
                    .map(|c| chi.value(g.inverse_class(c)).scale(&int_ratio(g.classes()[c].size(), 1)))
                    .collect()
            })
            .collect();
        let mut spaces = vec![Subspace::span(k, linalg::kernel(&rows, k))];
        let remaining = g.order() as i64
            - self
                .found
                .iter()
                .map(|c| c.degree().to_i64().unwrap_or(0).pow(2))
                .sum::<i64>();
        let degrees: Vec<i64> = (1..=g.order() as i64)
            .filter(|d| g.order() as i64 % d == 0 && d * d <= remaining)
            .collect();
        let pool: Vec<(ClassFunction, i64)> = self.pool.clone();
        for (u, norm) in &pool {
            let max_m = (1..).find(|m| m * m > *norm).unwrap_or(1) - 1;
            let mut candidates: Vec<BigRational> = vec![BigRational::from_integer(0.into())];
            for d in &degrees {
                for m in 1..=max_m {
                    for sign in [1, -1] {
                        candidates.push(BigRational::new((sign * m).into(), (*d).into()));
                    }
                }
            }
            candidates.sort();
            candidates.dedup();
            let mut next = Vec::new();
            for space in spaces {
                let dim = space.dim();
                if dim <= 1 {
                    next.push(space);
                    continue;
                }
                let basis = space.basis().to_vec();
                // Row i holds the coordinates of u * basis[i]; transpose to act on columns.
                let images: Vec<Vec<CycScalar>> = basis
                    .iter()
                    .map(|b| linalg::solve_in_rows(&basis, &self.convolve(u, b)).expect("subspace is stable"))
                    .collect();
                let mut parts = Vec::new();
                let mut total = 0;
                for lambda in &candidates {
                    let shifted: Vec<Vec<CycScalar>> = (0..dim)
                        .map(|r| {
                            (0..dim)
                                .map(|c| {
                                    let mut x = images[c][r].clone();
                                    if r == c {
                                        x -= &CycScalar::from_rational(lambda.clone());
                                    }
                                    x
                                })
                                .collect()
                        })
                        .collect();
                    let ker = linalg::kernel(&shifted, dim);
                    if ker.is_empty() {
                        continue;
                    }
                    total += ker.len();
                    let vectors = ker.iter().map(|coef| {
                        (0..k)
                            .map(|j| coef.iter().zip(&basis).map(|(a, b)| a * &b[j]).sum())
                            .collect::<Vec<CycScalar>>()
                    });
                    parts.push(Subspace::span(k, vectors));
                    if total == dim {
                        break;
                    }
                }
                if total == dim {
                    next.extend(parts);
                } else {
                    next.push(space);
                }
            }
            spaces = next;
        }
        for space in spaces.into_iter().filter(|s| s.dim() == 1) {
            let f = &space.basis()[0];
            if f[0].is_zero() {
                continue;
            }
            let inv = f[0].inv()?;
            let normalized = ClassFunction::new(g, f.iter().map(|x| x * &inv).collect())?;
            let n = inner_product(g, &normalized, &normalized)?;
            let Some(n) = n.to_rational() else { continue };
            // ⟨χ/χ(1), χ/χ(1)⟩ = 1/χ(1)^2.
            let inv_n = n.recip();
            if !inv_n.is_integer() {
                continue;
            }
            let d = inv_n.to_integer();
            let Some(root) = (1..=g.order() as i64).find(|r| BigInt::from(r * r) >= d) else { continue };
            if BigInt::from(root * root) != d {
                continue;
            }
            let chi = normalized.scale(&CycScalar::from_integer(root));
            if !self.found.contains(&chi) {
                self.add_irreducible(chi)?;
            }
        }
        Ok(())
    }

    /// Characters induced from linear characters of cyclic subgroups.
    fn cyclic_inductions(&self) -> Vec<ClassFunction> {
        let g = self.g;
        let mut out = Vec::new();
        for class in g.classes() {
            let w = class.representative;
            let m = class.order;
            let powers: Vec<usize> = (0..m).map(|k| g.power(w, k)).collect();
            for j in 0..m as i64 {
                let mut buckets = vec![CycScalar::zero(); g.num_classes()];
                for (k, &p) in powers.iter().enumerate() {
                    let z = CycScalar::root_of_unity(m as u32, j * k as i64).expect("order divides conductor");
                    buckets[g.class_of(p)] += &z;
                }
                let values = buckets
                    .into_iter()
                    .zip(g.classes())
                    .map(|(b, c)| b.scale(&int_ratio(g.order(), m * c.size())))
                    .collect();
                out.push(ClassFunction::new(g, values).expect("one value per class"));
            }
        }
        out
    }

    fn run(mut self) -> Result<Vec<ClassFunction>, ChartabError> {
        let g = self.g;
        let rho = reflection_character(g);
        let det = det_character(g);
        let seeds = vec![rho.clone(), rho.dual(g), det.clone(), det.dual(g)];
        self.add_irreducible(ClassFunction::trivial(g))?;
        for s in &seeds {
            self.offer(s.clone())?;
        }
        let mut done: HashSet<(usize, usize)> = HashSet::new();
        let mut pool_done = 0;
        for round in 0..2 * g.num_classes() {
            if self.complete() {
                break;
            }
            let n = self.found.len();
            for i in 0..n {
                for (k, s) in seeds.iter().enumerate() {
                    if done.insert((i, usize::MAX - k)) {
                        self.offer(self.found[i].product(s)?)?;
                    }
                }
                for j in i..n {
                    if done.insert((i, j)) {
                        self.offer(self.found[i].product(&self.found[j])?)?;
                    }
                }
            }
            let pool: Vec<ClassFunction> = self.pool.iter().map(|(p, _)| p.clone()).collect();
            if round >= pool_done {
                for p in pool {
                    for s in &seeds[..2] {
                        self.offer(p.product(s)?)?;
                    }
                }
                pool_done = round + 1;
            }
            if round == 0 {
                for c in self.cyclic_inductions() {
                    self.offer(c)?;
                }
            }
            self.reduce_pool()?;
            if !self.complete() && !self.pool.is_empty() {
                self.split_by_convolution()?;
            }
        }
        if !self.complete() {
            return Err(ChartabError::Incomplete {
                found: self.found.len(),
                classes: g.num_classes(),
            });
        }
        Ok(self.found)
    }
}

fn cmp_values(a: &ClassFunction, b: &ClassFunction) -> Ordering {
    let da = a.degree().to_rational().expect("degrees are rational");
    let db = b.degree().to_rational().expect("degrees are rational");
    da.cmp(&db).then_with(|| {
        a.values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| x.cmp_canonical(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn name_characters(g: &ReflGroup, found: Vec<ClassFunction>) -> Result<CharacterTable, ChartabError> {
    let trivial = ClassFunction::trivial(g);
    let det = det_character(g);
    let mut det_powers = Vec::new();
    let mut p = det.clone();
    while p != trivial {
        det_powers.push(p.clone());
        p = p.product(&det)?;
    }

    if g.name() == "G4" && g.order() == 24 && g.num_classes() == 7 {
        if let Some(t) = g4_names(g, &found, &det)? {
            return Ok(t);
        }
    }

    let mut names = vec!["1".to_string()];
    let mut characters = vec![trivial.clone()];
    for (k, d) in det_powers.iter().enumerate() {
        names.push(if k == 0 { "eps".into() } else { format!("eps{}", k + 1) });
        characters.push(d.clone());
    }
    let mut rest: Vec<ClassFunction> = found
        .into_iter()
        .filter(|c| !characters.contains(c))
        .collect();
    rest.sort_by(cmp_values);
    let mut counter: std::collections::BTreeMap<String, usize> = Default::default();
    for c in rest {
        let deg = c.degree().to_string();
        let k = counter.entry(deg.clone()).or_insert(0);
        *k += 1;
        names.push(format!("chi{deg}_{k}"));
        characters.push(c);
    }
    Ok(CharacterTable {
        group: g.id(),
        names,
        characters,
    })
}

/// Labels for `G4`: `chi` is the degree-2 character with rational values,
/// `theta` the degree-3 one, and the rest are products with powers of `eps`.
fn g4_names(
    g: &ReflGroup,
    found: &[ClassFunction],
    det: &ClassFunction,
) -> Result<Option<CharacterTable>, ChartabError> {
    let rational = |c: &ClassFunction| c.values().iter().all(|v| v.to_rational().is_some());
    let of_degree = |d: i64| found.iter().filter(move |c| c.degree().to_i64() == Some(d));
    let Some(chi) = of_degree(2).find(|c| rational(c)).cloned() else {
        return Ok(None);
    };
    let Some(theta) = of_degree(3).next().cloned() else {
        return Ok(None);
    };
    let det2 = det.product(det)?;
    let characters = vec![
        ClassFunction::trivial(g),
        det.clone(),
        det2.clone(),
        chi.clone(),
        chi.product(det)?,
        chi.product(&det2)?,
        theta,
    ];
    if characters.iter().any(|c| !found.contains(c)) {
        return Ok(None);
    }
    let names = ["1", "eps", "eps2", "chi", "chi_eps", "chi_eps2", "theta"]
        .map(String::from)
        .to_vec();
    Ok(Some(CharacterTable {
        group: g.id(),
        names,
        characters,
    }))
}
