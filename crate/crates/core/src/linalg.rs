//! Dense complex linear algebra for small multi-qudit systems.
//!
//! Everything downstream (state constructors, swapping, entanglement
//! measures, separability tests) computes with the row-major
//! [`ComplexMatrix`] defined here. Composite systems carry a
//! [`SubsystemDims`] annotation and are flattened row-major, subsystem 0
//! most significant: a basis label (j₀, j₁, …) of a system with dimensions
//! (d₀, d₁, …) maps to the flat index j₀·d₁·d₂·… + j₁·d₂·… + ….
//!
//! Partial trace, partial transpose and realignment are direct index
//! contractions; Hermitian spectra and singular values are delegated to
//! `nalgebra`'s dense solvers behind the postconditions stated on each
//! function.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::C64;

/// Maximum composite side length accepted by dense density-matrix paths.
/// Closed-form paths serve larger dimensions.
pub const DENSE_DIM_CAP: usize = 4096;

/// Tolerance on max |M - M†| accepted by [`hermitian_eigenvalues`]; inputs
/// within it are symmetrized before the eigensolve.
pub const EPS_HERM: f64 = 1e-9;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex matrix, row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Build from row-major entries, rejecting empty shapes, length
    /// mismatches, and non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be non-empty");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Outer product |v⟩⟨v| of a column vector.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |r, c| v[r] * v[c].conj())
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

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let src = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in dst.iter_mut().zip(src) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Matrix-vector product M·v.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(&a, &x)| a * x)
                    .sum()
            })
            .collect()
    }

    /// Conjugate transpose M†.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| s * z).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "add shape mismatch"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "sub shape mismatch"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// tr(self · rhs) without forming the product.
    pub fn trace_product(&self, rhs: &Self) -> C64 {
        assert_eq!(self.cols, rhs.rows, "trace_product shape mismatch");
        assert_eq!(rhs.cols, self.rows, "trace_product shape mismatch");
        let mut acc = ZERO;
        for r in 0..self.rows {
            for c in 0..self.cols {
                acc += self[(r, c)] * rhs[(c, r)];
            }
        }
        acc
    }

    /// Quadratic form ⟨v|M|v⟩.
    pub fn expectation(&self, v: &[C64]) -> C64 {
        assert!(
            self.is_square() && self.rows == v.len(),
            "expectation shape mismatch"
        );
        let mv = self.apply(v);
        v.iter().zip(&mv).map(|(&a, &b)| a.conj() * b).sum()
    }

    /// Max-abs deviation from M = M†; 0 for exactly Hermitian input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0_f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn to_na(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Ordered per-subsystem dimensions annotating a composite matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemDims {
    dims: Vec<usize>,
}

impl SubsystemDims {
    /// Each subsystem must be at least a qubit (dimension ≥ 2).
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::DimensionMismatch("empty subsystem list".into()));
        }
        if let Some(&bad) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::DimensionMismatch(format!(
                "subsystem dimension {bad} is below 2"
            )));
        }
        Ok(Self { dims })
    }

    /// Bipartite d×d annotation.
    pub fn pair(d: usize) -> Self {
        Self::new(vec![d, d]).expect("pair dimensions are valid")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    fn check_total(&self, side: usize) -> Result<()> {
        if self.total_dim() != side {
            return Err(Error::DimensionMismatch(format!(
                "subsystem dimensions {:?} multiply to {}, matrix side is {}",
                self.dims,
                self.total_dim(),
                side
            )));
        }
        Ok(())
    }

    /// Row-major strides of each subsystem index in the flat basis.
    fn strides(&self) -> Vec<usize> {
        let n = self.dims.len();
        let mut s = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.dims[i + 1];
        }
        s
    }

    /// Flat offsets of every multi-index restricted to `subset`, odometer
    /// order (last listed subsystem fastest).
    fn offsets(&self, subset: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let sub_dims: Vec<usize> = subset.iter().map(|&i| self.dims[i]).collect();
        let sub_strides: Vec<usize> = subset.iter().map(|&i| strides[i]).collect();
        let total: usize = sub_dims.iter().product();
        let mut counter = vec![0usize; subset.len()];
        let mut out = Vec::with_capacity(total);
        for _ in 0..total {
            out.push(counter.iter().zip(&sub_strides).map(|(&c, &s)| c * s).sum());
            for pos in (0..counter.len()).rev() {
                counter[pos] += 1;
                if counter[pos] < sub_dims[pos] {
                    break;
                }
                counter[pos] = 0;
            }
        }
        out
    }
}

/// Kronecker product a ⊗ b; dimensions multiply.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Trace out every subsystem not listed in `keep`; kept subsystems stay in
/// their original order. `keep` must be non-empty, strictly increasing, and
/// in range. Preserves the total trace.
pub fn partial_trace(
    rho: &ComplexMatrix,
    dims: &SubsystemDims,
    keep: &[usize],
) -> Result<ComplexMatrix> {
    if !rho.is_square() {
        return Err(Error::DimensionMismatch(
            "partial trace of a non-square matrix".into(),
        ));
    }
    dims.check_total(rho.rows())?;
    if keep.is_empty() {
        return Err(Error::InvalidArgument(
            "partial trace must keep at least one subsystem".into(),
        ));
    }
    if !keep.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument(
            "kept subsystems must be strictly increasing".into(),
        ));
    }
    if let Some(&bad) = keep.iter().find(|&&i| i >= dims.len()) {
        return Err(Error::SubsystemOutOfRange {
            index: bad,
            count: dims.len(),
        });
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let kept_off = dims.offsets(keep);
    let traced_off = dims.offsets(&traced);
    let k = kept_off.len();
    let mut out = ComplexMatrix::zeros(k, k);
    for (ri, &ro) in kept_off.iter().enumerate() {
        for (ci, &co) in kept_off.iter().enumerate() {
            let mut acc = ZERO;
            for &to in &traced_off {
                acc += rho[(ro + to, co + to)];
            }
            out[(ri, ci)] = acc;
        }
    }
    Ok(out)
}

/// Transpose the indices of one subsystem only. A pure entry permutation,
/// so applying it twice returns the input exactly.
pub fn partial_transpose(
    rho: &ComplexMatrix,
    dims: &SubsystemDims,
    subsystem: usize,
) -> Result<ComplexMatrix> {
    if !rho.is_square() {
        return Err(Error::DimensionMismatch(
            "partial transpose of a non-square matrix".into(),
        ));
    }
    dims.check_total(rho.rows())?;
    if subsystem >= dims.len() {
        return Err(Error::SubsystemOutOfRange {
            index: subsystem,
            count: dims.len(),
        });
    }
    let stride = dims.strides()[subsystem];
    let d_s = dims.dims()[subsystem];
    let side = rho.rows();
    let mut out = ComplexMatrix::zeros(side, side);
    for r in 0..side {
        let rs = (r / stride) % d_s;
        for c in 0..side {
            let cs = (c / stride) % d_s;
            let r2 = r - rs * stride + cs * stride;
            let c2 = c - cs * stride + rs * stride;
            out[(r2, c2)] = rho[(r, c)];
        }
    }
    Ok(out)
}

/// Realignment reshuffle of a d×d bipartite matrix:
/// R[(i,j),(k,l)] = ρ[(i,k),(j,l)]. Its trace norm exceeds 1 only for
/// entangled states (CCNR criterion).
pub fn realign(rho: &ComplexMatrix, dims: &SubsystemDims) -> Result<ComplexMatrix> {
    if dims.len() != 2 || dims.dims()[0] != dims.dims()[1] {
        return Err(Error::DimensionMismatch(format!(
            "realignment needs a square d x d bipartition, got {:?}",
            dims.dims()
        )));
    }
    if !rho.is_square() {
        return Err(Error::DimensionMismatch(
            "realignment of a non-square matrix".into(),
        ));
    }
    dims.check_total(rho.rows())?;
    let d = dims.dims()[0];
    let mut out = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    out[(i * d + j, k * d + l)] = rho[(i * d + k, j * d + l)];
                }
            }
        }
    }
    Ok(out)
}

/// Real eigenvalues of a Hermitian matrix, ascending. Inputs within
/// [`EPS_HERM`] of Hermitian are symmetrized as (M + M†)/2 before the
/// eigensolve; anything further off is rejected.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "eigenvalues of a non-square matrix".into(),
        ));
    }
    let dev = m.hermitian_deviation();
    if dev > EPS_HERM {
        return Err(Error::NotHermitian {
            deviation: dev,
            tolerance: EPS_HERM,
        });
    }
    let sym = m.add(&m.adjoint()).scale(C64::new(0.5, 0.0));
    let eig = sym.to_na().symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Singular values, descending; non-negative by construction.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let sv = m.to_na().singular_values();
    let mut vals: Vec<f64> = sv.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Trace norm (Ky Fan norm): sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    singular_values(m).iter().sum()
}
