//! Small dense complex matrices.
//!
//! Everything here works on square operators of dimension at most a few
//! dozen (the largest in practice is 9 for two spin-1 particles), so storage
//! is a flat row-major `Vec` and all products are the textbook triple loop.
//! The Hermitian eigensolver is delegated to `nalgebra`; the grouping of
//! eigenvalues into spectral projectors is done here.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar field of every Hilbert space in this crate.
pub type ComplexScalar = Complex64;

/// Tolerance on `max |A - A^dagger|` below which an operator counts as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Default width within which eigenvalues are merged into one spectral value.
pub const DEFAULT_GROUP_TOL: f64 = 1e-9;

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    data: Vec<ComplexScalar>,
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        Operator {
            dim,
            data: vec![ComplexScalar::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zeros(dim);
        for i in 0..dim {
            op.data[i * dim + i] = ComplexScalar::new(1.0, 0.0);
        }
        op
    }

    /// Builds an operator from rows, rejecting ragged or non-finite input.
    pub fn from_rows(rows: Vec<Vec<ComplexScalar>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                context: "operator",
                expected: 1,
                found: 0,
            });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: dim,
                });
            }
            for (c, z) in row.into_iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
                data.push(z);
            }
        }
        Ok(Operator { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut op = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            op.data[i * diag.len() + i] = ComplexScalar::new(x, 0.0);
        }
        op
    }

    /// Rank-one operator `|v><v|` (not normalized).
    pub fn outer(v: &[ComplexScalar]) -> Self {
        let dim = v.len();
        let mut op = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                op.data[i * dim + j] = v[i] * v[j].conj();
            }
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> ComplexScalar {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: ComplexScalar) {
        self.data[row * self.dim + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ComplexScalar]> {
        self.data.chunks(self.dim)
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        Operator {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> ComplexScalar {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Operator) -> ComplexScalar {
        assert_eq!(self.dim, other.dim, "trace_product: dimension mismatch");
        let n = self.dim;
        let mut acc = ComplexScalar::new(0.0, 0.0);
        for r in 0..n {
            for c in 0..n {
                acc += self.data[r * n + c] * other.data[c * n + r];
            }
        }
        acc
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |A - A^dagger|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    fn ensure_hermitian(&self) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian { defect });
        }
        Ok(())
    }

    fn to_nalgebra(&self) -> DMatrix<ComplexScalar> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator({}x{})", self.dim, self.dim)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|z| format!("{:+.6}{:+.6}i", z.re, z.im)).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator addition: dimension mismatch");
        Operator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator subtraction: dimension mismatch");
        Operator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator product: dimension mismatch");
        let n = self.dim;
        let mut out = Operator::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ComplexScalar::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

/// Kronecker product. Entry `(i1*d2 + i2, j1*d2 + j2)` is `a[i1,j1] * b[i2,j2]`.
pub fn tensor(a: &Operator, b: &Operator) -> Operator {
    let (d1, d2) = (a.dim, b.dim);
    let n = d1 * d2;
    let mut out = Operator::zeros(n);
    for i1 in 0..d1 {
        for j1 in 0..d1 {
            let x = a.data[i1 * d1 + j1];
            for i2 in 0..d2 {
                for j2 in 0..d2 {
                    out.data[(i1 * d2 + i2) * n + (j1 * d2 + j2)] = x * b.data[i2 * d2 + j2];
                }
            }
        }
    }
    out
}

/// `tr(rho (a (x) b))` without materializing the Kronecker product.
pub fn trace_with_tensor(rho: &Operator, a: &Operator, b: &Operator) -> ComplexScalar {
    let (d1, d2) = (a.dim, b.dim);
    assert_eq!(rho.dim, d1 * d2, "trace_with_tensor: dimension mismatch");
    let n = rho.dim;
    let mut acc = ComplexScalar::new(0.0, 0.0);
    for i1 in 0..d1 {
        for j1 in 0..d1 {
            let x = a.data[j1 * d1 + i1];
            if x == ComplexScalar::new(0.0, 0.0) {
                continue;
            }
            let mut inner = ComplexScalar::new(0.0, 0.0);
            for i2 in 0..d2 {
                let row = &rho.data[(i1 * d2 + i2) * n + j1 * d2..(i1 * d2 + i2) * n + (j1 + 1) * d2];
                for (j2, r) in row.iter().enumerate() {
                    inner += r * b.data[j2 * d2 + i2];
                }
            }
            acc += x * inner;
        }
    }
    acc
}

/// Eigenvalues (descending, grouped) with their eigenprojectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub projectors: Vec<Operator>,
}

impl SpectralDecomposition {
    /// `sum_k lambda_k P_k`.
    pub fn reconstruct(&self) -> Operator {
        let dim = self.projectors.first().map_or(0, Operator::dim);
        self.eigenvalues
            .iter()
            .zip(&self.projectors)
            .fold(Operator::zeros(dim), |acc, (&l, p)| &acc + &p.scale(l))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }
}

/// Spectral decomposition of a Hermitian operator.
///
/// Eigenvalues are sorted in descending order; a run of eigenvalues whose
/// consecutive gaps are all within `group_tol` becomes one entry (the mean)
/// whose projector is the sum of the individual rank-one projectors.
pub fn hermitian_eigendecomposition(a: &Operator, group_tol: f64) -> Result<SpectralDecomposition> {
    a.ensure_hermitian()?;
    let m = a.to_nalgebra();
    let sym = (&m + m.adjoint()) * ComplexScalar::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();

    let mut order: Vec<usize> = (0..a.dim).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));

    let mut eigenvalues: Vec<f64> = Vec::new();
    let mut projectors: Vec<Operator> = Vec::new();
    let mut group: Vec<f64> = Vec::new();
    let mut proj = Operator::zeros(a.dim);
    let mut prev = f64::NAN;

    for &k in &order {
        let lambda = eig.eigenvalues[k];
        if !group.is_empty() && prev - lambda > group_tol {
            eigenvalues.push(group.iter().sum::<f64>() / group.len() as f64);
            projectors.push(std::mem::replace(&mut proj, Operator::zeros(a.dim)));
            group.clear();
        }
        let v: Vec<ComplexScalar> = eig.eigenvectors.column(k).iter().copied().collect();
        proj = &proj + &Operator::outer(&v);
        group.push(lambda);
        prev = lambda;
    }
    if !group.is_empty() {
        eigenvalues.push(group.iter().sum::<f64>() / group.len() as f64);
        projectors.push(proj);
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        projectors,
    })
}

/// `true` iff the smallest eigenvalue is at least `-tol`.
pub fn is_positive_semidefinite(a: &Operator, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(a)? >= -tol)
}

/// Smallest eigenvalue of a Hermitian operator (ungrouped).
pub fn min_eigenvalue(a: &Operator) -> Result<f64> {
    a.ensure_hermitian()?;
    let m = a.to_nalgebra();
    let sym = (&m + m.adjoint()) * ComplexScalar::new(0.5, 0.0);
    Ok(sym
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min))
}
