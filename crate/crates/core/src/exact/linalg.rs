//! Exact row reduction and subspace arithmetic over cyclotomic fields.
//!
//! Pivoting always takes the first non-zero entry, so the reduced echelon
//! form of a given spanning set is reproducible and, being unique, doubles as
//! a canonical key for subspace equality.

use super::CycScalar;

pub type Vector = Vec<CycScalar>;

/// Brings `rows` to reduced row echelon form, drops zero rows, and returns
/// the pivot columns.
pub fn rref(rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is non-zero");
        let pivot_row: Vector = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if !p.is_zero() {
                        *x -= &(&f * p);
                    }
                }
            }
        }
        rows[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : A x = 0}` for the matrix with the given rows.
pub fn kernel(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CycScalar::zero(); ncols];
            v[f] = CycScalar::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Solves `x A = b` for a row vector `x`, where `A` is given by its rows:
/// returns coefficients expressing `b` in the rows, if possible.
pub fn solve_in_rows(rows: &[Vector], b: &[CycScalar]) -> Option<Vector> {
    let k = rows.len();
    let n = b.len();
    // Transpose into the system sum_i x_i rows[i] = b.
    let mut aug: Vec<Vector> = (0..n)
        .map(|c| {
            let mut row: Vector = rows.iter().map(|r| r[c].clone()).collect();
            row.push(b[c].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![CycScalar::zero(); k];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

/// A subspace of `K^n`, stored as the reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![CycScalar::zero(); ambient];
                v[i] = CycScalar::one();
                v
            })
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = Vector>>(ambient: usize, vectors: I) -> Self {
        let mut rows: Vec<Vector> = vectors.into_iter().collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref(&mut rows, ambient);
        Subspace {
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v`
    /// lies in the subspace.
    pub fn residue(&self, v: &[CycScalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (x, r) in w.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &(&f * r);
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[CycScalar]) -> bool {
        self.residue(v).iter().all(CycScalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn with_vector(&self, v: Vector) -> Subspace {
        Subspace::span(self.ambient, self.basis.iter().cloned().chain(Some(v)))
    }

    /// Intersection by the Zassenhaus construction: reduce the rows `(u | u)`
    /// and `(w | 0)`; rows whose left half vanishes span `U ∩ W` on the right.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.dim() <= other.dim() && other.contains_subspace(self) {
            return self.clone();
        }
        if other.dim() <= self.dim() && self.contains_subspace(other) {
            return other.clone();
        }
        let n = self.ambient;
        let mut rows: Vec<Vector> = self
            .basis
            .iter()
            .map(|u| u.iter().chain(u.iter()).cloned().collect())
            .chain(other.basis.iter().map(|w| {
                w.iter()
                    .cloned()
                    .chain(std::iter::repeat_n(CycScalar::zero(), n))
                    .collect()
            }))
            .collect();
        let pivots = rref(&mut rows, 2 * n);
        let right = rows
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(row, _)| row[n..].to_vec());
        Subspace::span(n, right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| CycScalar::from_integer(x)).collect()
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::span(3, [v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
    }

    #[test]
    fn kernel_and_solve() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6])];
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for x in &k {
            let dot: CycScalar = x.iter().zip(&rows[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        let x = solve_in_rows(&[v(&[1, 1]), v(&[1, -1])], &v(&[3, 1])).unwrap();
        assert_eq!(x, v(&[2, 1]));
        assert!(solve_in_rows(&[v(&[1, 1])], &v(&[1, 0])).is_none());
    }

    #[test]
    fn cyclotomic_pivots() {
        let z = CycScalar::zeta(3).unwrap();
        let a = Subspace::span(2, [vec![CycScalar::one(), z.clone()]]);
        assert!(a.contains(&[z.clone(), &z * &z]));
        assert!(!a.contains(&[CycScalar::one(), CycScalar::one()]));
    }
}
