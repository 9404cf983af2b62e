//! Dense complex linear algebra and quantum-state primitives.
//!
//! Everything here is small (dimension ≤ 27) and immutable once built. The
//! matrix type is a thin wrapper over `nalgebra::DMatrix<Complex64>`.

use std::fmt;
use std::ops::{Index, Mul};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Tolerance for structural checks: unitarity, trace, Hermiticity, norms.
pub const STRUCTURE_TOL: f64 = 1e-9;
/// Tolerance for comparing two independent routes to the same quantity.
pub const ORACLE_TOL: f64 = 1e-10;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix(DMatrix<C64>);

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// Builds a matrix from entries listed row by row.
    pub fn from_rows(rows: usize, cols: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                got: format!("{} entries", entries.len()),
            });
        }
        Ok(Self(DMatrix::from_row_slice(rows, cols, entries)))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(DMatrix::from_fn(rows, cols, f))
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r] } else { ZERO })
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(&self.0 * s)
    }

    pub fn add(&self, other: &CMatrix) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self(&self.0 + &other.0))
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<Self> {
        if self.cols() != other.rows() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols()),
                got: format!("{} rows", other.rows()),
            });
        }
        Ok(Self(&self.0 * &other.0))
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols() {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.cols()),
                got: format!("length {}", v.len()),
            });
        }
        let out = &self.0 * DVector::from_column_slice(v);
        Ok(out.iter().copied().collect())
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        self.0.column(j).iter().copied().collect()
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |U†U − I|` over all entries; infinite for non-square input.
    pub fn unitarity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let prod = self.adjoint() * self;
        prod.max_abs_diff(&CMatrix::identity(self.rows()))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    pub fn determinant(&self) -> C64 {
        self.0.clone().determinant()
    }

    fn same_shape(&self, other: &CMatrix) -> Result<()> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows(), self.cols()),
                got: format!("{}x{}", other.rows(), other.cols()),
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.0[(r, c)]
    }
}

/// Panics on shape mismatch; use [`CMatrix::matmul`] for the checked form.
impl Mul<&CMatrix> for CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        CMatrix(self.0 * &rhs.0)
    }
}

impl Mul<&CMatrix> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        CMatrix(&self.0 * &rhs.0)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows(), self.cols())?;
        for r in 0..self.rows() {
            write!(f, "  ")?;
            for c in 0..self.cols() {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if amplitudes.is_empty() || (norm_sq - 1.0).abs() > STRUCTURE_TOL {
            return Err(Error::InvalidState { norm_sq });
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn to_density(&self) -> DensityMatrix {
        let n = self.dim();
        let a = &self.amplitudes;
        DensityMatrix {
            m: CMatrix::from_fn(n, n, |r, c| a[r] * a[c].conj()),
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity at [`STRUCTURE_TOL`].
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidDensity(format!(
                "not square ({}x{})",
                m.rows(),
                m.cols()
            )));
        }
        let herm = m.hermiticity_deviation();
        if herm > STRUCTURE_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (deviation {herm:.3e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STRUCTURE_TOL || tr.im.abs() > STRUCTURE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let min_eig = m
            .inner()
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -STRUCTURE_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self { m })
    }

    /// Maximally mixed state `I/dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            m: CMatrix::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0)),
        }
    }

    /// Diagonal state with the given populations (must sum to one).
    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        let entries: Vec<C64> = populations.iter().map(|&p| C64::new(p, 0.0)).collect();
        Self::new(CMatrix::diagonal(&entries))
    }

    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn entry(&self, r: usize, c: usize) -> C64 {
        self.m[(r, c)]
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// Real parts of the diagonal, unclamped.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.m[(i, i)].re).collect()
    }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    CMatrix(a.0.kronecker(&b.0))
}

/// `U ρ U†`.
pub fn evolve(rho: &DensityMatrix, u: &CMatrix) -> Result<DensityMatrix> {
    if u.rows() != rho.dim() || u.cols() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: format!("{0}x{0} operator", rho.dim()),
            got: format!("{}x{}", u.rows(), u.cols()),
        });
    }
    let deviation = u.unitarity_deviation();
    if deviation > STRUCTURE_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(DensityMatrix::from_matrix_unchecked(
        &(u * rho.matrix()) * &u.adjoint(),
    ))
}

/// Computational-basis dephasing of the joint system: every off-diagonal
/// entry is scaled by `1 - lambda`. `lambda = 1` removes all coherences.
pub fn dephase(rho: &DensityMatrix, lambda: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let keep = 1.0 - lambda;
    let n = rho.dim();
    let m = CMatrix::from_fn(n, n, |r, c| {
        let z = rho.entry(r, c);
        if r == c {
            z
        } else {
            z * keep
        }
    });
    Ok(DensityMatrix::from_matrix_unchecked(m))
}

/// `⟨index|ρ|index⟩`, with round-off negativity clamped to zero.
pub fn basis_probability(rho: &DensityMatrix, index: usize) -> Result<f64> {
    if index >= rho.dim() {
        return Err(Error::IndexOutOfRange {
            index,
            dim: rho.dim(),
        });
    }
    clamp_probability(rho.entry(index, index).re)
}

pub(crate) fn clamp_probability(p: f64) -> Result<f64> {
    if p < -STRUCTURE_TOL {
        return Err(Error::NegativeProbability(p));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Completes a square partial isometry to a unitary.
///
/// Columns with norm below [`STRUCTURE_TOL`] are treated as unspecified; the
/// remaining columns must be orthonormal and are kept verbatim. Unspecified
/// columns are filled, in index order, by Gram–Schmidt on the standard basis
/// vectors `e_0, e_1, ...` taken in order, skipping any that are already in
/// the span.
pub fn complete_to_unitary(partial: &CMatrix) -> Result<CMatrix> {
    if !partial.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            got: format!("{}x{}", partial.rows(), partial.cols()),
        });
    }
    let n = partial.rows();
    let mut columns: Vec<Option<Vec<C64>>> = (0..n)
        .map(|j| {
            let col = partial.column(j);
            let norm_sq: f64 = col.iter().map(|z| z.norm_sqr()).sum();
            (norm_sq.sqrt() > STRUCTURE_TOL).then_some(col)
        })
        .collect();

    let given: Vec<&Vec<C64>> = columns.iter().flatten().collect();
    for (i, a) in given.iter().enumerate() {
        for (j, b) in given.iter().enumerate().skip(i) {
            let ip = inner(a, b);
            let target = if i == j { ONE } else { ZERO };
            if (ip - target).norm() > STRUCTURE_TOL {
                return Err(Error::NotOrthonormal(format!("<c{i}|c{j}> = {ip:.3e}")));
            }
        }
    }

    let mut span: Vec<Vec<C64>> = given.into_iter().cloned().collect();
    let mut next_basis = 0usize;
    for slot in columns.iter_mut().filter(|c| c.is_none()) {
        loop {
            if next_basis >= n {
                // Only reachable if the given columns were not independent,
                // which the orthonormality check above rules out.
                return Err(Error::NotOrthonormal("basis exhausted".into()));
            }
            let mut v = vec![ZERO; n];
            v[next_basis] = ONE;
            next_basis += 1;
            // two passes of modified Gram–Schmidt
            for _ in 0..2 {
                for u in &span {
                    let ip = inner(u, &v);
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi -= ui * ip;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                v.iter_mut().for_each(|z| *z /= norm);
                span.push(v.clone());
                *slot = Some(v);
                break;
            }
        }
    }

    let cols: Vec<Vec<C64>> = columns.into_iter().map(|c| c.expect("filled")).collect();
    Ok(CMatrix::from_fn(n, n, |r, c| cols[c][r]))
}

/// `⟨a|b⟩`.
fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Random unitary obtained by orthonormalizing a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    loop {
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
        let mut degenerate = false;
        for _ in 0..dim {
            let mut v: Vec<C64> = (0..dim)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            for _ in 0..2 {
                for u in &cols {
                    let ip = inner(u, &v);
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi -= ui * ip;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                degenerate = true;
                break;
            }
            v.iter_mut().for_each(|z| *z /= norm);
            cols.push(v);
        }
        if !degenerate {
            return CMatrix::from_fn(dim, dim, |r, c| cols[c][r]);
        }
    }
}

/// Random element of SU(dim): a random unitary rescaled to determinant one.
pub fn random_special_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let u = random_unitary(dim, rng);
    let det = u.determinant();
    let root = C64::from_polar(1.0, -det.arg() / dim as f64);
    u.scale(root)
}

/// Pauli matrices, mostly used in tests and named operators.
pub mod pauli {
    use super::{CMatrix, C64, I, ONE, ZERO};

    pub fn x() -> CMatrix {
        CMatrix::from_fn(2, 2, |r, c| if r != c { ONE } else { ZERO })
    }

    pub fn y() -> CMatrix {
        CMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => -I,
            (1, 0) => I,
            _ => ZERO,
        })
    }

    pub fn z() -> CMatrix {
        CMatrix::diagonal(&[ONE, C64::new(-1.0, 0.0)])
    }
}
