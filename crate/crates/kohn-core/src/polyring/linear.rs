use super::poly::{Poly, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Zero};

/// Determinant of the Jacobian matrix `∂(fs)/∂(z_vars)`.
///
/// Expansion along rows with memoized column-subset minors, so no division
/// is ever needed in the polynomial ring.
pub fn jacobian_det(fs: &[Poly], vars: &[usize]) -> Result<Poly> {
    if fs.len() != vars.len() {
        return Err(Error::Count {
            expected: vars.len(),
            got: fs.len(),
        });
    }
    let nvars = match fs.first() {
        Some(f) => f.nvars(),
        None => return Err(Error::Empty("jacobian of an empty tuple")),
    };
    for f in fs {
        if f.nvars() != nvars {
            return Err(Error::Dimension {
                left: nvars,
                right: f.nvars(),
            });
        }
    }
    let mut matrix = Vec::with_capacity(fs.len());
    for f in fs {
        let row: Result<Vec<Poly>> = vars.iter().map(|&v| f.partial_derivative(v)).collect();
        matrix.push(row?);
    }
    Ok(poly_det(&matrix, nvars))
}

/// Determinant of a square matrix of polynomials.
pub fn poly_det(matrix: &[Vec<Poly>], nvars: usize) -> Poly {
    let k = matrix.len();
    if k == 0 {
        return Poly::one(nvars);
    }
    assert!(k <= 20, "determinant size {k} too large for subset expansion");
    // minors[S] = det of rows 0..|S| restricted to the columns in S.
    let mut minors: Vec<Option<Poly>> = vec![None; 1 << k];
    minors[0] = Some(Poly::one(nvars));
    for size in 1..=k {
        let row = &matrix[size - 1];
        for mask in 0usize..(1 << k) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let mut acc = Poly::zero(nvars);
            for j in 0..k {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let rest = mask & !(1 << j);
                if let Some(sub) = &minors[rest] {
                    if !sub.is_zero() && !row[j].is_zero() {
                        let term = &row[j] * sub;
                        // Laplace along the minor's last row; `above` is the
                        // position of column j inside the subset.
                        let above = (mask & ((1 << j) - 1)).count_ones();
                        if (size - 1 + above as usize) % 2 == 0 {
                            acc = &acc + &term;
                        } else {
                            acc = &acc - &term;
                        }
                    }
                }
            }
            minors[mask] = Some(acc);
        }
        // Free minors of size-1 once size is built.
        if size >= 2 {
            for mask in 0usize..(1 << k) {
                if mask.count_ones() as usize == size - 1 {
                    minors[mask] = None;
                }
            }
        }
    }
    minors[(1 << k) - 1].take().unwrap()
}

/// Square rational matrix helpers.
pub fn rational_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

pub fn rational_inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let inv = a[col][col].recip();
        for c in 0..2 * n {
            a[col][c] *= &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Invertible linear substitution `p ↦ p(L·z)`, i.e. `z_i ↦ Σ_j L[i][j] z_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    matrix: Vec<Vec<Rational>>,
}

impl LinearChange {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::Empty("linear change of zero variables"));
        }
        for row in &matrix {
            if row.len() != n {
                return Err(Error::Dimension {
                    left: n,
                    right: row.len(),
                });
            }
        }
        if rational_det(&matrix).is_zero() {
            return Err(Error::Singular);
        }
        Ok(LinearChange { matrix })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        LinearChange { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn det(&self) -> Rational {
        rational_det(&self.matrix)
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange {
            matrix: rational_inverse(&self.matrix).expect("invertible by construction"),
        }
    }

    /// `self ∘ other` as substitutions: applying the result equals applying
    /// `self` first and then `other`.
    pub fn then(&self, other: &LinearChange) -> LinearChange {
        // p(A z) then q(z) = p(A z) evaluated at B z ⇒ p(A B z)
        let n = self.dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut s = Rational::zero();
                        for k in 0..n {
                            s += &self.matrix[i][k] * &other.matrix[k][j];
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        LinearChange { matrix }
    }

    /// The linear forms `Σ_j L[i][j] z_j` as polynomials.
    pub fn forms(&self) -> Vec<Poly> {
        let n = self.dim();
        self.matrix
            .iter()
            .map(|row| {
                let mut p = Poly::zero(n);
                for (j, c) in row.iter().enumerate() {
                    p = &p + &Poly::var(n, j).unwrap().scale(c);
                }
                p
            })
            .collect()
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        if p.nvars() != self.dim() {
            return Err(Error::Dimension {
                left: self.dim(),
                right: p.nvars(),
            });
        }
        p.compose(&self.forms())
    }
}

/// `p ∘ L` (free-function spelling).
pub fn apply_linear_change(p: &Poly, l: &LinearChange) -> Result<Poly> {
    l.apply(p)
}

/// Sylvester resultant of `a` and `b` with respect to variable `v`; it lies
/// in the ideal `(a, b)` and does not involve `v`.
pub fn resultant(a: &Poly, b: &Poly, v: usize) -> Result<Poly> {
    if a.nvars() != b.nvars() {
        return Err(Error::Dimension {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    let n = a.nvars();
    if v >= n {
        return Err(Error::IndexOutOfRange { index: v, nvars: n });
    }
    let (m, l) = (a.degree_in(v) as usize, b.degree_in(v) as usize);
    if m + l == 0 {
        return Ok(Poly::one(n));
    }
    let ca: Vec<Poly> = (0..=m).rev().map(|e| a.coefficient_in(v, e as u32)).collect();
    let cb: Vec<Poly> = (0..=l).rev().map(|e| b.coefficient_in(v, e as u32)).collect();
    let size = m + l;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..l {
        let mut row = vec![Poly::zero(n); size];
        for (i, c) in ca.iter().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Poly::zero(n); size];
        for (i, c) in cb.iter().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    Ok(poly_det(&rows, n))
}
