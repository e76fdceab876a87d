//! Exact matrices: rational matrices with determinant and inverse, and
//! matrices of polynomials with symbolic determinants and maximal minors.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::scalar::Rat;
use super::Ring;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    e: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, e: Vec<Rat>) -> Self {
        assert_eq!(e.len(), rows * cols, "entry count does not match dimensions");
        RatMatrix { rows, cols, e }
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            e: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            e: rows
                .iter()
                .flat_map(|row| row.iter().map(|&v| Rat::from_integer(v.into())))
                .collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![Rat::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = Rat::one();
        }
        RatMatrix { rows: n, cols: n, e }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.e[i * self.cols + j] = v;
    }

    pub fn matmul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = RatMatrix::new(
            self.rows,
            other.cols,
            vec![Rat::zero(); self.rows * other.cols],
        );
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    acc += self.get(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    /// v·M for a row vector v.
    pub fn vec_mul(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        (0..self.cols)
            .map(|j| {
                let mut acc = Rat::zero();
                for i in 0..self.rows {
                    acc += &v[i] * self.get(i, j);
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut e = Vec::with_capacity(self.e.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                e.push(self.get(i, j).clone());
            }
        }
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            e,
        }
    }

    pub fn determinant(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Rat::zero();
            };
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            let pv = m[col][col].clone();
            det *= &pv;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &pv;
                for c in col..n {
                    let t = &m[col][c] * &f;
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && !self.determinant().is_zero()
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(piv, col);
            let pv = m[col][col].clone();
            for c in col..2 * n {
                m[col][c] = &m[col][c] / &pv;
            }
            for r in 0..n {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].clone();
                for c in col..2 * n {
                    let t = &m[col][c] * &f;
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        let e = m.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Some(RatMatrix { rows: n, cols: n, e })
    }
}

/// Dense matrix of multivariate polynomials, row-major, all in one ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    e: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, e: Vec<MPoly>) -> Self {
        assert_eq!(e.len(), rows * cols, "entry count does not match dimensions");
        assert!(e.iter().all(|f| f.ring() == ring), "ring mismatch");
        PolyMatrix { ring, rows, cols, e }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.e[i * self.cols + j]
    }

    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().map(f).collect(),
        }
    }

    /// Right multiplication by a constant rational matrix.
    pub fn mul_rat(&self, a: &RatMatrix) -> PolyMatrix {
        assert_eq!(self.cols, a.rows(), "dimension mismatch");
        let mut e = Vec::with_capacity(self.rows * a.cols());
        for i in 0..self.rows {
            for j in 0..a.cols() {
                let mut acc = MPoly::zero(self.ring);
                for k in 0..self.cols {
                    acc = &acc + &self.get(i, k).scale(a.get(k, j));
                }
                e.push(acc);
            }
        }
        PolyMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: a.cols(),
            e,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let e = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        PolyMatrix {
            ring: self.ring,
            rows: rows.len(),
            cols: cols.len(),
            e,
        }
    }

    /// Symbolic determinant by dynamic programming over column subsets
    /// (Laplace expansion row by row, sharing minors).
    pub fn determinant(&self) -> MPoly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return MPoly::one(self.ring);
        }
        assert!(n <= 31, "determinant dimension too large");
        let mut dp: BTreeMap<u32, MPoly> = (0..n as u32)
            .map(|j| (1u32 << j, self.get(0, j as usize).clone()))
            .collect();
        for row in 1..n {
            let mut next: BTreeMap<u32, MPoly> = BTreeMap::new();
            for (mask, minor) in &dp {
                if minor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let bit = 1u32 << j;
                    if mask & bit != 0 {
                        continue;
                    }
                    let new_mask = mask | bit;
                    let pos = (new_mask & (bit - 1)).count_ones() as usize;
                    let mut term = self.get(row, j) * minor;
                    if (row + pos) % 2 == 1 {
                        term = -term;
                    }
                    match next.get_mut(&new_mask) {
                        Some(acc) => *acc = &*acc + &term,
                        None => {
                            next.insert(new_mask, term);
                        }
                    }
                }
            }
            dp = next;
        }
        dp.remove(&(((1u64 << n) - 1) as u32))
            .unwrap_or_else(|| MPoly::zero(self.ring))
    }

    /// All maximal minors using every row: with p = rows, the determinants of
    /// the p×p submatrices over the C(cols, p) column subsets, listed in
    /// lexicographic order of the column index sets. Empty when cols < p.
    pub fn p_minors(&self) -> Vec<MPoly> {
        let p = self.rows;
        if self.cols < p || p == 0 {
            return Vec::new();
        }
        let all_rows: Vec<usize> = (0..p).collect();
        combinations(self.cols, p)
            .into_iter()
            .map(|cols| self.submatrix(&all_rows, &cols).determinant())
            .collect()
    }
}

/// Index subsets of size k from 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::mpoly::{truncated_jacobian, MPoly, Monomial};
    use super::super::scalar::{rat, ratio, Rat};
    use super::*;

    #[test]
    fn determinant_and_inverse() {
        let a = RatMatrix::from_int_rows(&[&[1, 1], &[-1, 1]]);
        assert_eq!(a.determinant(), rat(2));
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), RatMatrix::identity(2));
        assert_eq!(*inv.get(0, 0), ratio(1, 2));
        let singular = RatMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.determinant(), rat(0));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn determinant_3x3_with_swap() {
        let a = RatMatrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]);
        assert_eq!(a.determinant(), rat(-3));
    }

    #[test]
    fn poly_determinant_matches_cofactor_expansion() {
        let r = Ring::x_only(2);
        let x = MPoly::var(r, 0);
        let y = MPoly::var(r, 1);
        let one = MPoly::one(r);
        let m = PolyMatrix::new(
            r,
            2,
            2,
            alloc::vec![x.clone(), y.clone(), one.clone(), x.clone()],
        );
        let det = m.determinant();
        assert_eq!(det, &(&x * &x) - &y);
    }

    #[test]
    fn poly_determinant_3x3() {
        let r = Ring::x_only(3);
        let v: Vec<MPoly> = (0..3).map(|j| MPoly::var(r, j)).collect();
        let zero = MPoly::zero(r);
        let one = MPoly::one(r);
        // [[x, y, z], [0, 1, 0], [1, 0, 1]] has determinant x − z
        let m = PolyMatrix::new(
            r,
            3,
            3,
            alloc::vec![
                v[0].clone(),
                v[1].clone(),
                v[2].clone(),
                zero.clone(),
                one.clone(),
                zero.clone(),
                one.clone(),
                zero.clone(),
                one.clone()
            ],
        );
        assert_eq!(m.determinant(), &v[0] - &v[2]);
    }

    #[test]
    fn minors_of_a_wide_matrix() {
        // p_minors of a 1×1 matrix is the entry itself
        let r = Ring::x_only(2);
        let x2 = MPoly::var(r, 1);
        let m = PolyMatrix::new(r, 1, 1, alloc::vec![x2.scale(&rat(2))]);
        assert_eq!(m.p_minors(), alloc::vec![x2.scale(&rat(2))]);

        // a 2×3 matrix has C(3,2) = 3 maximal minors, and the lexicographic
        // column-set order is {0,1}, {0,2}, {1,2}
        let r4 = Ring::x_only(3);
        let vars: Vec<MPoly> = (0..3).map(|j| MPoly::var(r4, j)).collect();
        let one = MPoly::one(r4);
        let m = PolyMatrix::new(
            r4,
            2,
            3,
            alloc::vec![
                vars[0].clone(),
                vars[1].clone(),
                vars[2].clone(),
                one.clone(),
                one.clone(),
                one.clone()
            ],
        );
        let minors = m.p_minors();
        assert_eq!(minors.len(), 3);
        assert_eq!(minors[0], &vars[0] - &vars[1]);
        assert_eq!(minors[1], &vars[0] - &vars[2]);
        assert_eq!(minors[2], &vars[1] - &vars[2]);

        // 2×1 matrix with p = 2 rows has no 2×2 minors
        let narrow = PolyMatrix::new(r4, 2, 1, alloc::vec![vars[0].clone(), vars[1].clone()]);
        assert!(narrow.p_minors().is_empty());
    }

    #[test]
    fn minor_count_for_truncated_jacobians() {
        // n = 4, p = 2, i = 1: jac(F, 1) is 2×3, so C(3, 2) = 3 minors
        let r = Ring::x_only(4);
        let vars: Vec<MPoly> = (0..4).map(|j| MPoly::var(r, j)).collect();
        let f1 = &(&vars[0] * &vars[1]) + &(&vars[2] * &vars[3]);
        let f2 = &(&vars[1] * &vars[2]) - &MPoly::one(r);
        let tj = truncated_jacobian(&[f1, f2], 1);
        assert_eq!((tj.rows(), tj.cols()), (2, 3));
        assert_eq!(tj.p_minors().len(), 3);
    }

    #[test]
    fn vec_mul_is_row_vector_product() {
        let a = RatMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let v = alloc::vec![rat(1), rat(1)];
        assert_eq!(a.vec_mul(&v), alloc::vec![rat(4), rat(6)]);
        assert_eq!(a.mul_vec(&v), alloc::vec![rat(3), rat(7)]);
    }

    #[test]
    fn monomial_sanity() {
        let m = Monomial::from_exps(alloc::vec![1, 2]);
        let n = Monomial::from_exps(alloc::vec![0, 1]);
        assert!(n.divides(&m));
        assert_eq!(m.checked_div(&n).unwrap(), Monomial::from_exps(alloc::vec![1, 1]));
        let _unused: Rat = rat(0);
    }
}
