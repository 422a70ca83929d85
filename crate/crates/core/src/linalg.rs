//! Dense Gaussian elimination over F_p.
//!
//! Pivots are chosen as the first nonzero entry scanning rows top to bottom
//! within the current column, so reduced forms and kernel bases depend only
//! on the input matrix.

use crate::field::{Fp, PrimeField};

/// Reduced row echelon form of a matrix with `ncols` columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Fp>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(matrix: &[Vec<Fp>], ncols: usize) -> Echelon {
    let mut m: Vec<Vec<Fp>> = matrix.to_vec();
    for row in &m {
        assert_eq!(row.len(), ncols, "ragged matrix");
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon {
        rows: m,
        pivots,
        ncols,
    }
}

pub fn rank(matrix: &[Vec<Fp>], ncols: usize) -> usize {
    rref(matrix, ncols).rank()
}

/// Basis of `{ v : M v = 0 }`, one vector per free column with that
/// coordinate set to 1.
pub fn kernel(field: &PrimeField, matrix: &[Vec<Fp>], ncols: usize) -> Vec<Vec<Fp>> {
    let e = rref(matrix, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &e.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in e.rows.iter().zip(&e.pivots) {
            v[pc] = -row[free];
        }
        basis.push(v);
    }
    basis
}

pub fn mat_vec(field: &PrimeField, matrix: &[Vec<Fp>], v: &[Fp]) -> Vec<Fp> {
    matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(field.zero(), |acc, (&a, &b)| acc + a * b)
        })
        .collect()
}

/// Whether `v` lies in the row space of `matrix`.
pub fn in_row_span(matrix: &[Vec<Fp>], v: &[Fp]) -> bool {
    let n = v.len();
    let base = rank(matrix, n);
    let mut ext = matrix.to_vec();
    ext.push(v.to_vec());
    rank(&ext, n) == base
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(k: &PrimeField, rows: &[&[i64]]) -> Vec<Vec<Fp>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| k.elem(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let k = PrimeField::new(5).unwrap();
        let a = m(&k, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&a, 3), 2);
        let ker = kernel(&k, &a, 3);
        assert_eq!(ker.len(), 1);
        assert!(mat_vec(&k, &a, &ker[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let rows: &[&[i64]] = &[&[2, 1], &[1, 2]];
        let k3 = PrimeField::new(3).unwrap();
        let k5 = PrimeField::new(5).unwrap();
        assert_eq!(rank(&m(&k3, rows), 2), 1);
        assert_eq!(rank(&m(&k5, rows), 2), 2);
    }

    #[test]
    fn empty_matrix() {
        let k = PrimeField::new(7).unwrap();
        assert_eq!(rank(&[], 3), 0);
        assert_eq!(kernel(&k, &[], 2).len(), 2);
        assert!(in_row_span(&[], &[k.zero(), k.zero()]));
        assert!(!in_row_span(&[], &[k.one(), k.zero()]));
    }
}
