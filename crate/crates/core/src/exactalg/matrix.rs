//! Matrices over `T[t]` and `T(t)`, and linear solves by fraction-free
//! (Bareiss) elimination.

use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::AlgebraError;
use crate::scalar::Scalar;

/// Dense rectangular matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

pub type PolyMatrix<T> = Matrix<Polynomial<T>>;
pub type RFMatrix<T> = Matrix<RationalFunction<T>>;

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

impl<T: Scalar> RFMatrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { RationalFunction::one() } else { RationalFunction::zero() })
    }

    pub fn mul_vec(&self, x: &[RationalFunction<T>]) -> Vec<RationalFunction<T>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(RationalFunction::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }
}

/// Solution of a polynomial system written over one common denominator:
/// `x_i = numerators[i] / denominator`.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionFreeSolution<T> {
    pub numerators: Vec<Polynomial<T>>,
    pub denominator: Polynomial<T>,
}

impl<T: Scalar> FractionFreeSolution<T> {
    pub fn component(&self, i: usize) -> RationalFunction<T> {
        RationalFunction::new(self.numerators[i].clone(), self.denominator.clone())
            .expect("nonsingular system has nonzero determinant")
    }

    pub fn to_rational_functions(&self) -> Vec<RationalFunction<T>> {
        (0..self.numerators.len()).map(|i| self.component(i)).collect()
    }
}

/// Solve `M x = b` over `T[t]` with Bareiss elimination. The returned
/// denominator is the (signed) determinant of `M`; every numerator is a
/// polynomial by Cramer's rule, so back substitution divides exactly.
pub fn solve_fraction_free<T: Scalar>(
    m: &PolyMatrix<T>,
    b: &[Polynomial<T>],
) -> Result<FractionFreeSolution<T>, AlgebraError> {
    let n = m.rows();
    if m.cols() != n {
        return Err(AlgebraError::Shape(format!("{}x{} matrix is not square", n, m.cols())));
    }
    if b.len() != n {
        return Err(AlgebraError::Shape(format!("right-hand side has {} rows, expected {n}", b.len())));
    }
    if n == 0 {
        return Ok(FractionFreeSolution { numerators: Vec::new(), denominator: Polynomial::one() });
    }
    // Augmented rows: columns 0..n are M, column n is b.
    let mut a: Vec<Vec<Polynomial<T>>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut prev = Polynomial::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].degree())
            .ok_or(AlgebraError::SingularMatrix)?;
        a.swap(k, pivot);
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pkk = &pivot_row[k];
        for row in lower.iter_mut() {
            let factor = std::mem::replace(&mut row[k], Polynomial::zero());
            for j in k + 1..=n {
                let scaled = if row[j].is_zero() { Polynomial::zero() } else { pkk * &row[j] };
                let updated = if factor.is_zero() || pivot_row[j].is_zero() {
                    scaled
                } else {
                    &scaled - &(&factor * &pivot_row[j])
                };
                row[j] = if updated.is_zero() || prev.is_one() { updated } else { updated.exact_div(&prev) };
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    let mut numerators = vec![Polynomial::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &det * &a[i][n];
        for j in i + 1..n {
            if !a[i][j].is_zero() && !numerators[j].is_zero() {
                acc = &acc - &(&a[i][j] * &numerators[j]);
            }
        }
        numerators[i] = acc.exact_div(&a[i][i]);
    }
    Ok(FractionFreeSolution { numerators, denominator: det })
}

/// Solve `M x = b` over `T(t)`. Each row is cleared to polynomials first,
/// then handed to [`solve_fraction_free`].
pub fn solve_linear<T: Scalar>(
    m: &RFMatrix<T>,
    b: &[RationalFunction<T>],
) -> Result<Vec<RationalFunction<T>>, AlgebraError> {
    let n = m.rows();
    if b.len() != n {
        return Err(AlgebraError::Shape(format!("right-hand side has {} rows, expected {n}", b.len())));
    }
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for (i, bi) in b.iter().enumerate() {
        let entries: Vec<&RationalFunction<T>> = m.row(i).iter().chain(std::iter::once(bi)).collect();
        let lcm = entries.iter().fold(Polynomial::one(), |acc, e| {
            let g = acc.gcd(e.denom());
            (&acc * e.denom()).exact_div(&g)
        });
        let mut cleared: Vec<Polynomial<T>> =
            entries.iter().map(|e| &e.numer().clone() * &lcm.exact_div(e.denom())).collect();
        rhs.push(cleared.pop().expect("row has a right-hand side"));
        rows.push(cleared);
    }
    let pm = Matrix::from_rows(rows)?;
    if pm.cols() != n {
        return Err(AlgebraError::Shape(format!("{}x{} matrix is not square", n, pm.cols())));
    }
    Ok(solve_fraction_free(&pm, &rhs)?.to_rational_functions())
}

/// Gauss-Jordan solve over the scalar field itself.
pub fn solve_scalar<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Result<Vec<T>, AlgebraError> {
    let n = m.rows();
    if m.cols() != n || b.len() != n {
        return Err(AlgebraError::Shape("scalar system must be square".into()));
    }
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_negligible())
            .max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .ok_or(AlgebraError::SingularMatrix)?;
        a.swap(k, pivot);
        let inv = T::one() / a[k][k].clone();
        for v in a[k].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k || row[k].is_zero() {
                continue;
            }
            let f = row[k].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - f.clone() * p.clone();
            }
        }
    }
    Ok(a.into_iter().map(|mut row| row.pop().expect("augmented")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;
    type P = Polynomial<Q>;
    type RF = RationalFunction<Q>;

    fn rf(num: &[i64], den: &[i64]) -> RF {
        RF::new(P::from_ints(num), P::from_ints(den)).unwrap()
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let b = vec![rf(&[0, 1], &[1, -1]), rf(&[3], &[2, 5])];
        assert_eq!(solve_linear(&RFMatrix::identity(2), &b).unwrap(), b);
    }

    #[test]
    fn scalar_entry() {
        let m = Matrix::from_rows(vec![vec![rf(&[1, -1], &[1])]]).unwrap();
        assert_eq!(solve_linear(&m, &[RF::one()]).unwrap(), vec![rf(&[1], &[1, -1])]);
    }

    #[test]
    fn single_loop_state() {
        // (E - sA) x = 1 with three loops and s = t/3
        let s = rf(&[0, 1], &[3]);
        let entry = &RF::one() - &(&s * &RF::constant(Q::from_int(3)));
        let m = Matrix::from_rows(vec![vec![entry]]).unwrap();
        assert_eq!(solve_linear(&m, &[RF::one()]).unwrap(), vec![rf(&[1], &[1, -1])]);
    }

    #[test]
    fn singular_is_reported() {
        let m =
            Matrix::from_rows(vec![vec![rf(&[0, 1], &[1]), rf(&[0, 2], &[1])], vec![rf(&[1], &[1]), rf(&[2], &[1])]])
                .unwrap();
        assert_eq!(solve_linear(&m, &[RF::one(), RF::one()]), Err(AlgebraError::SingularMatrix));
    }

    #[test]
    fn solve_then_multiply_back() {
        // needs a row swap: first column starts with zero
        let m = Matrix::from_rows(vec![
            vec![RF::zero(), rf(&[1, 1], &[1]), rf(&[2], &[1, -1])],
            vec![rf(&[0, 1], &[1]), RF::one(), RF::zero()],
            vec![rf(&[1], &[3]), rf(&[0, 0, 1], &[1]), rf(&[5, 1], &[1])],
        ])
        .unwrap();
        let b = vec![RF::one(), rf(&[0, 1], &[1, 1]), rf(&[2], &[1])];
        let x = solve_linear(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn scalar_solver() {
        let q = |n: i64, d: i64| Q::from_ratio(n, d);
        let m = Matrix::from_rows(vec![vec![q(0, 1), q(1, 1)], vec![q(2, 1), q(1, 1)]]).unwrap();
        let x = solve_scalar(&m, &[q(3, 1), q(5, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 1), q(3, 1)]);
    }
}
