//! Exact rational linear algebra plus the few floating-point helpers the
//! sampling layer needs.
//!
//! Every combinatorial decision in the crate (vertex identity, tightness,
//! cone membership) goes through the exact routines here. Floating point is
//! only used for directions and measures.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Tolerance for orthonormality of float bases.
pub const ORTHO_TOL: f64 = 1e-10;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty {rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().copied().map(int).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational::one();
        }
        Self { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Rational::is_integer)
    }

    /// Integer view of the entries; `None` if any entry is fractional.
    pub fn to_int_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_integral() {
            return None;
        }
        Some(
            (0..self.rows)
                .map(|i| self.row(i).iter().map(|v| v.to_integer()).collect())
                .collect(),
        )
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(to_f64).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                data.push(acc);
            }
        }
        Ok(Self { rows: self.rows, cols: other.cols, data })
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix applied to length-{} vector",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Result<Self> {
        let data = idx.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        Self::new(idx.len(), self.cols, data)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Self::new(rows.len(), cols.len(), data)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "square matrix required, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Rows scaled to integers, together with the product of the row scales.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let d = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                scale *= &d;
                row.iter().map(|v| (v * &d).to_integer()).collect()
            })
            .collect();
        (rows, scale)
    }

    pub fn det(&self) -> Result<Rational> {
        self.require_square()?;
        let (rows, scale) = self.integer_rows();
        Ok(Rational::new(bareiss_det(rows), scale))
    }

    /// Classical adjoint, `M * adj(M) = det(M) * I`.
    pub fn adjugate(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Self::new(1, 1, vec![Rational::one()]);
        }
        let (rows, _) = self.integer_rows();
        let scales: Vec<BigInt> = (0..n)
            .map(|i| self.row(i).iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom())))
            .collect();
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            let others: BigInt = scales
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, s)| s.clone())
                .product();
            for j in 0..n {
                let minor: Vec<Vec<BigInt>> = rows
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != i)
                    .map(|(_, row)| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let mut c = Rational::new(bareiss_det(minor), others.clone());
                if (i + j) % 2 == 1 {
                    c = -c;
                }
                // adj(M)[j][i] = cofactor(i, j)
                data[j * n + i] = c;
            }
        }
        Self::new(n, n, data)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.row_vecs();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &m[rank][col];
                for c in col..cols {
                    let t = &f * &m[rank][c];
                    m[r][c] -= t;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Exact solution of `M x = rhs` for square nonsingular `M`.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        self.require_square()?;
        let n = self.rows;
        if rhs.len() != n {
            return Err(Error::Dimension(format!(
                "{n}x{n} system with length-{} right-hand side",
                rhs.len()
            )));
        }
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(rhs[i].clone());
                r
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::Singular)?;
            m.swap(col, p);
            let inv = m[col][col].recip();
            for c in col..=n {
                m[col][c] = &m[col][c] * &inv;
            }
            for r in 0..n {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].clone();
                for c in col..=n {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
        Ok(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
    }

    /// Exact inverse, `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        self.require_square()?;
        let d = self.det()?;
        if d.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.adjugate()?.scale(&d.recip())))
    }
}

/// Fraction-free Gaussian elimination. Every intermediate division is exact.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant of a small integer matrix, falling back to big integers on overflow.
pub fn int_det(m: &[Vec<i64>]) -> BigInt {
    if let Some(d) = small_bareiss(m) {
        return BigInt::from(d);
    }
    bareiss_det(
        m.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect(),
    )
}

fn small_bareiss(src: &[Vec<i64>]) -> Option<i128> {
    let n = src.len();
    if n == 0 {
        return Some(1);
    }
    let mut m: Vec<Vec<i128>> = src.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return Some(0);
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
        }
        prev = m[k][k];
    }
    Some(sign * m[n - 1][n - 1])
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn norm_sq(a: &[Rational]) -> Rational {
    dot(a, a)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators; scale through the bit lengths.
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = n.max(d) - 60;
        let num = (r.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
        let den = (r.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
        num / den
    })
}

/// Exact dyadic value of a finite float.
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// Vector spanning the kernel of a `(n-1) x n` matrix of full row rank, via
/// signed maximal minors. Zero when the rows are dependent.
pub fn kernel_vector(rows: &[Vec<Rational>], n: usize) -> Vec<Rational> {
    debug_assert!(rows.iter().all(|r| r.len() == n));
    debug_assert_eq!(rows.len() + 1, n);
    (0..n)
        .map(|j| {
            if rows.is_empty() {
                return Rational::one();
            }
            let minor: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let d = RationalMatrix::from_rows(&minor)
                .and_then(|m| m.det())
                .expect("square minor");
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Orthonormal basis of the span of `vectors` by Gram-Schmidt with pivoting on
/// the largest remaining residual. Dependent directions are dropped.
pub fn orthonormal_basis(vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut residual: Vec<Vec<f64>> = vectors.to_vec();
    let scale = vectors
        .iter()
        .map(|v| f_norm(v))
        .fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut basis: Vec<Vec<f64>> = Vec::new();
    loop {
        let Some((idx, norm)) = residual
            .iter()
            .enumerate()
            .map(|(i, v)| (i, f_norm(v)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
        else {
            break;
        };
        if norm <= ORTHO_TOL * scale {
            break;
        }
        let mut q: Vec<f64> = residual[idx].iter().map(|x| x / norm).collect();
        // second pass keeps orthogonality at the 1e-15 level
        for b in &basis {
            let d = f_dot(&q, b);
            q.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let qn = f_norm(&q);
        q.iter_mut().for_each(|x| *x /= qn);
        residual.swap_remove(idx);
        for r in residual.iter_mut() {
            let d = f_dot(r, &q);
            r.iter_mut().zip(&q).for_each(|(x, y)| *x -= d * y);
        }
        basis.push(q);
    }
    basis
}

pub fn f_dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn f_norm(a: &[f64]) -> f64 {
    f_dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(RationalMatrix::identity(3).det().unwrap(), int(1));
        assert_eq!(m(&[vec![1, 2], vec![3, 4]]).det().unwrap(), int(-2));
        assert_eq!(
            m(&[vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 3]]).det().unwrap(),
            int(0)
        );
        // needs a pivot swap
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).det().unwrap(), int(-1));
    }

    #[test]
    fn det_rejects_non_square() {
        assert!(matches!(m(&[vec![1, 2, 3], vec![4, 5, 6]]).det(), Err(Error::Dimension(_))));
        assert!(m(&[vec![1, 2]]).adjugate().is_err());
    }

    #[test]
    fn det_of_fractional_matrix() {
        let half = Rational::new(1.into(), 2.into());
        let a = RationalMatrix::from_rows(&[vec![half.clone(), int(1)], vec![int(1), half]]).unwrap();
        // 1/4 - 1
        assert_eq!(a.det().unwrap(), Rational::new((-3).into(), 4.into()));
    }

    #[test]
    fn adjugate_small_cases() {
        assert_eq!(RationalMatrix::identity(4).adjugate().unwrap(), RationalMatrix::identity(4));
        assert_eq!(
            m(&[vec![1, 2], vec![3, 4]]).adjugate().unwrap(),
            m(&[vec![4, -2], vec![-3, 1]])
        );
    }

    #[test]
    fn solve_cases() {
        let b = vec![int(3), int(-1), int(2)];
        assert_eq!(RationalMatrix::identity(3).solve(&b).unwrap(), b);
        assert_eq!(
            m(&[vec![2, 0], vec![0, 4]]).solve(&[int(2), int(4)]).unwrap(),
            vec![int(1), int(1)]
        );
        assert!(matches!(
            m(&[vec![1, 2], vec![1, 2]]).solve(&[int(1), int(1)]),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn rank_cases() {
        assert_eq!(m(&[vec![1, 1]]).rank(), 1);
        assert_eq!(m(&[vec![1, 0], vec![2, 0], vec![3, 0]]).rank(), 1);
        assert_eq!(m(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]).rank(), 2);
    }

    #[test]
    fn int_det_matches_bareiss() {
        let a = vec![vec![3, -1, 2], vec![0, 4, 1], vec![5, 2, -2]];
        let big = bareiss_det(a.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect());
        assert_eq!(int_det(&a), big);
        assert_eq!(int_det(&[vec![0, 0], vec![0, 1]]), BigInt::zero());
        let huge = vec![vec![i64::MAX, 1], vec![1, i64::MAX]];
        let expect = BigInt::from(i64::MAX) * BigInt::from(i64::MAX) - 1;
        assert_eq!(int_det(&huge), expect);
    }

    #[test]
    fn kernel_vector_is_orthogonal() {
        let rows = vec![vec![int(1), int(2), int(3)], vec![int(0), int(1), int(-1)]];
        let k = kernel_vector(&rows, 3);
        assert!(rows.iter().all(|r| dot(r, &k).is_zero()));
        assert!(k.iter().any(|v| !v.is_zero()));
    }

    #[test]
    fn orthonormal_basis_cases() {
        let b = orthonormal_basis(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(b.len(), 2);

        let b = orthonormal_basis(&[vec![1.0, 1.0, 0.0]]);
        assert_eq!(b.len(), 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b[0][0].abs() - s).abs() < 1e-12 && (b[0][1].abs() - s).abs() < 1e-12);
        assert_eq!(b[0][2], 0.0);

        let b = orthonormal_basis(&[vec![1.0, 0.0], vec![2.0, 0.0]]);
        assert_eq!(b.len(), 1);
        assert!((b[0][0].abs() - 1.0).abs() < 1e-12);

        assert!(orthonormal_basis(&[vec![0.0, 0.0]]).is_empty());
        assert!(orthonormal_basis(&[]).is_empty());
    }

    #[test]
    fn rational_from_f64_is_exact() {
        let r = rational_from_f64(0.1);
        assert_eq!(to_f64(&r), 0.1);
        assert!(r.denom().bits() > 50);
    }
}
