//! State and operator constructors: Schmidt-form biqudit pure states, the
//! generalized Bell basis, Weyl operators, SU(d) generators, isotropic
//! mixtures, and the validated [`DensityMatrix`] wrapper.
//!
//! Index arithmetic on basis labels is modular with non-negative residues
//! (⊕ and ⊖ below denote addition and subtraction mod d).

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, SubsystemDims, EPS_HERM};
use crate::C64;

/// Tolerance for probability-vector and amplitude normalization; inputs off
/// by more than this are rejected, inputs within it are renormalized.
pub const EPS_PROB: f64 = 1e-10;

/// Unit-trace tolerance for density matrices.
pub const TRACE_EPS: f64 = 1e-10;

/// Eigenvalue floor for the positive-semidefinite check.
pub const PSD_EPS: f64 = 1e-10;

/// a ⊕ b mod d.
pub(crate) fn mod_add(a: usize, b: usize, d: usize) -> usize {
    (a + b) % d
}

/// e^{2πi k / d} with the exponent reduced mod d first.
pub(crate) fn root_of_unity(d: usize, k: i64) -> C64 {
    let e = k.rem_euclid(d as i64) as f64;
    C64::cis(std::f64::consts::TAU * e / d as f64)
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    Ok(())
}

fn check_label(d: usize, u: usize, v: usize) -> Result<()> {
    if u >= d || v >= d {
        return Err(Error::LabelOutOfRange { u, v, d });
    }
    Ok(())
}

/// Probability vector (p_0, …, p_{d-1}) defining a Schmidt-form biqudit
/// pure state Σ_j √p_j |jj⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtVector {
    p: Vec<f64>,
}

impl SchmidtVector {
    /// Entries must be finite and non-negative and sum to 1 within
    /// [`EPS_PROB`]; inputs inside the tolerance are renormalized exactly.
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.len() < 2 {
            return Err(Error::InvalidSchmidt(format!(
                "need at least 2 probabilities, got {}",
                p.len()
            )));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSchmidt("non-finite probability".into()));
        }
        if let Some(&bad) = p.iter().find(|&&x| x < 0.0) {
            return Err(Error::InvalidSchmidt(format!("negative probability {bad}")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > EPS_PROB {
            return Err(Error::InvalidSchmidt(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        let p = p.into_iter().map(|x| x / sum).collect();
        Ok(Self { p })
    }

    /// The maximally entangled profile p_j = 1/d.
    pub fn uniform(d: usize) -> Result<Self> {
        check_dim(d)?;
        Ok(Self {
            p: vec![1.0 / d as f64; d],
        })
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.p
    }
}

impl FromStr for SchmidtVector {
    type Err = Error;

    /// Parse a comma-separated decimal list, e.g. `0.8,0.2`.
    fn from_str(s: &str) -> Result<Self> {
        let p = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidSchmidt(format!("cannot parse `{tok}` as a number")))
            })
            .collect::<Result<Vec<f64>>>()?;
        Self::new(p)
    }
}

/// Pure state of a d×d bipartite system, stored as the amplitude matrix
/// a[i][j] over the product basis |i⟩|j⟩.
#[derive(Clone, Debug)]
pub struct PureBipartiteState {
    d: usize,
    amp: ComplexMatrix,
}

impl PureBipartiteState {
    /// Amplitudes must form a square d×d matrix (d ≥ 2) with unit norm
    /// within [`EPS_PROB`]; near-unit inputs are renormalized.
    pub fn new(amp: ComplexMatrix) -> Result<Self> {
        if !amp.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "amplitude matrix must be square, got {}x{}",
                amp.rows(),
                amp.cols()
            )));
        }
        let d = amp.rows();
        check_dim(d)?;
        let norm_sq: f64 = amp.data().iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > EPS_PROB {
            return Err(Error::InvalidArgument(format!(
                "state norm² is {norm_sq}, expected 1"
            )));
        }
        let amp = amp.scale(C64::new(1.0 / norm_sq.sqrt(), 0.0));
        Ok(Self { d, amp })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &ComplexMatrix {
        &self.amp
    }

    /// Flat state vector with |i⟩|j⟩ at index i·d + j.
    pub fn state_vector(&self) -> Vec<C64> {
        self.amp.data().to_vec()
    }

    /// Reduced state of the first subsystem, ρ_A = a a†.
    pub fn reduced_first(&self) -> ComplexMatrix {
        self.amp.matmul(&self.amp.adjoint())
    }

    /// Purity tr(ρ_A²) of the reduced state.
    pub fn reduced_purity(&self) -> f64 {
        let rho_a = self.reduced_first();
        rho_a.data().iter().map(|z| z.norm_sqr()).sum()
    }

    /// |ψ⟩⟨ψ| with a [d, d] subsystem annotation.
    pub fn density(&self) -> DensityMatrix {
        let mat = ComplexMatrix::outer(&self.state_vector());
        DensityMatrix::new(mat, SubsystemDims::pair(self.d))
            .expect("pure-state projector is a valid density matrix")
    }

    /// Overlap |⟨ψ|φ⟩|².
    pub fn overlap(&self, other: &Self) -> f64 {
        let inner: C64 = self
            .state_vector()
            .iter()
            .zip(other.state_vector())
            .map(|(a, b)| a.conj() * b)
            .sum();
        inner.norm_sqr()
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix with an attached
/// subsystem-dimension list. All three properties are checked on
/// construction (PSD within [`PSD_EPS`], trace within [`TRACE_EPS`],
/// Hermiticity within [`linalg::EPS_HERM`][EPS_HERM]).
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: SubsystemDims,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, dims: SubsystemDims) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::InvalidDensity(format!(
                "matrix is {}x{}, not square",
                mat.rows(),
                mat.cols()
            )));
        }
        if dims.total_dim() != mat.rows() {
            return Err(Error::DimensionMismatch(format!(
                "subsystem dimensions {:?} do not match matrix side {}",
                dims.dims(),
                mat.rows()
            )));
        }
        let dev = mat.hermitian_deviation();
        if dev > EPS_HERM {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian: max |M - M†| = {dev:.3e}"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_EPS || tr.im.abs() > TRACE_EPS {
            return Err(Error::InvalidDensity(format!("trace is {tr}, expected 1")));
        }
        let eigs = hermitian_eigenvalues(&mat)?;
        if eigs[0] < -PSD_EPS {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {:.3e}",
                eigs[0]
            )));
        }
        Ok(Self { mat, dims })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn side(&self) -> usize {
        self.mat.rows()
    }

    /// The qudit dimension d of a d×d bipartite annotation; errors for any
    /// other subsystem layout.
    pub fn bipartite_dim(&self) -> Result<usize> {
        let dims = self.dims.dims();
        if dims.len() == 2 && dims[0] == dims[1] {
            Ok(dims[0])
        } else {
            Err(Error::DimensionMismatch(format!(
                "expected a d x d bipartite state, got subsystems {dims:?}"
            )))
        }
    }
}

/// Isotropic state: visibility-weighted mix of the maximally entangled
/// state with white noise, v·|Φ+⟩⟨Φ+| + (1-v)·𝕀/d². Invariant under all
/// U ⊗ U* rotations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsotropicState {
    d: usize,
    visibility: f64,
}

impl IsotropicState {
    /// The admissible visibility interval is [-1/(d²-1), 1]; the lower end
    /// is where the smallest eigenvalue hits zero.
    pub fn new(d: usize, visibility: f64) -> Result<Self> {
        check_dim(d)?;
        let min = Self::min_visibility(d);
        if !visibility.is_finite() || visibility < min - 1e-12 || visibility > 1.0 + 1e-12 {
            return Err(Error::VisibilityOutOfRange {
                value: visibility,
                min,
                d,
            });
        }
        Ok(Self {
            d,
            visibility: visibility.clamp(min, 1.0),
        })
    }

    pub fn min_visibility(d: usize) -> f64 {
        -1.0 / ((d * d - 1) as f64)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn visibility(&self) -> f64 {
        self.visibility
    }

    /// Expand to the dense d²×d² density matrix.
    pub fn density(&self) -> DensityMatrix {
        isotropic_density(self.d, self.visibility).expect("validated isotropic state expands")
    }
}

/// Bell-measurement outcome label (phase index u, shift index v).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeylLabel {
    pub u: usize,
    pub v: usize,
}

impl std::fmt::Display for WeylLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// |Φ+⟩ = Σ_j |jj⟩/√d.
pub fn maximally_entangled(d: usize) -> Result<PureBipartiteState> {
    check_dim(d)?;
    let amp = ComplexMatrix::from_fn(d, d, |i, j| {
        if i == j {
            C64::new(1.0 / (d as f64).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    PureBipartiteState::new(amp)
}

/// Schmidt-form state Σ_j √p_j |jj⟩.
pub fn schmidt_state(p: &SchmidtVector) -> PureBipartiteState {
    let d = p.dim();
    let amp = ComplexMatrix::from_fn(d, d, |i, j| {
        if i == j {
            C64::new(p.probs()[i].sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    PureBipartiteState::new(amp).expect("Schmidt amplitudes are normalized")
}

/// Generalized Bell state |Ψ_uv⟩ = Σ_l e^{2πi l u / d} |l⟩|l ⊕ v⟩ / √d.
/// The d² labels form an orthonormal basis of the bipartite space.
pub fn generalized_bell(d: usize, u: usize, v: usize) -> Result<PureBipartiteState> {
    check_dim(d)?;
    check_label(d, u, v)?;
    let scale = 1.0 / (d as f64).sqrt();
    let amp = ComplexMatrix::from_fn(d, d, |l, c| {
        if c == mod_add(l, v, d) {
            root_of_unity(d, (l * u) as i64) * scale
        } else {
            C64::new(0.0, 0.0)
        }
    });
    PureBipartiteState::new(amp)
}

/// Weyl operator Û_uv = Σ_j ω_d^{ju} |j⟩⟨j ⊕ v| with ω_d = e^{2πi/d}.
pub fn weyl(d: usize, u: usize, v: usize) -> Result<ComplexMatrix> {
    check_dim(d)?;
    check_label(d, u, v)?;
    Ok(ComplexMatrix::from_fn(d, d, |j, c| {
        if c == mod_add(j, v, d) {
            root_of_unity(d, (j * u) as i64)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// The d²-1 generalized Gell-Mann generators of SU(d): symmetric pairs
/// |i⟩⟨j| + |j⟩⟨i| for i < j, then antisymmetric pairs -i|i⟩⟨j| + i|j⟩⟨i|,
/// then the d-1 diagonal generators, each family in lexicographic order.
/// All are traceless and Hermitian with tr(λ_μ λ_ν) = 2δ_μν.
pub fn gellmann_generators(d: usize) -> Vec<ComplexMatrix> {
    assert!(d >= 2, "dimension must be at least 2");
    let mut out = Vec::with_capacity(d * d - 1);
    for i in 0..d {
        for j in (i + 1)..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(i, j)] = C64::new(1.0, 0.0);
            m[(j, i)] = C64::new(1.0, 0.0);
            out.push(m);
        }
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(i, j)] = C64::new(0.0, -1.0);
            m[(j, i)] = C64::new(0.0, 1.0);
            out.push(m);
        }
    }
    for l in 1..d {
        let norm = (2.0 / (l as f64 * (l + 1) as f64)).sqrt();
        let mut m = ComplexMatrix::zeros(d, d);
        for k in 0..l {
            m[(k, k)] = C64::new(norm, 0.0);
        }
        m[(l, l)] = C64::new(-(l as f64) * norm, 0.0);
        out.push(m);
    }
    out
}

/// Isotropic density matrix v·|Φ+⟩⟨Φ+| + (1-v)·𝕀_{d²}/d².
pub fn isotropic_density(d: usize, visibility: f64) -> Result<DensityMatrix> {
    let state = IsotropicState::new(d, visibility)?;
    let v = state.visibility();
    let me = maximally_entangled(d)?;
    let projector = ComplexMatrix::outer(&me.state_vector());
    let noise = ComplexMatrix::identity(d * d).scale(C64::new((1.0 - v) / (d * d) as f64, 0.0));
    let mat = projector.scale(C64::new(v, 0.0)).add(&noise);
    DensityMatrix::new(mat, SubsystemDims::pair(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron, partial_trace};
    use nalgebra::DMatrix;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;
    use rand_distr::StandardNormal;

    const TOL: f64 = 1e-12;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn schmidt_vector_validates_and_renormalizes() {
        assert!(SchmidtVector::new(vec![1.0]).is_err());
        assert!(SchmidtVector::new(vec![0.5, -0.5]).is_err());
        assert!(SchmidtVector::new(vec![0.6, 0.6]).is_err());
        assert!(SchmidtVector::new(vec![0.5, f64::NAN]).is_err());
        let almost = SchmidtVector::new(vec![0.8 + 3e-11, 0.2]).unwrap();
        assert!((almost.probs().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn schmidt_vector_parses_from_decimal_list() {
        let p: SchmidtVector = "0.8, 0.2".parse().unwrap();
        assert_eq!(p.probs(), &[0.8, 0.2]);
        assert!("0.8,abc".parse::<SchmidtVector>().is_err());
        assert!("0.9,0.3".parse::<SchmidtVector>().is_err());
    }

    #[test]
    fn maximally_entangled_matches_bell_state() {
        let me = maximally_entangled(2).unwrap();
        let s = 1.0 / 2.0_f64.sqrt();
        assert!((me.amplitudes()[(0, 0)] - r(s)).norm() < TOL);
        assert!((me.amplitudes()[(1, 1)] - r(s)).norm() < TOL);
        assert!(me.amplitudes()[(0, 1)].norm() < TOL);
        assert!(maximally_entangled(1).is_err());
    }

    #[test]
    fn maximally_entangled_reduces_to_maximally_mixed() {
        for d in [2usize, 3, 5] {
            let me = maximally_entangled(d).unwrap();
            let red = me.reduced_first();
            let expect = ComplexMatrix::identity(d).scale(r(1.0 / d as f64));
            assert!(red.max_abs_diff(&expect) < TOL);
        }
    }

    #[test]
    fn schmidt_state_diagonal_amplitudes() {
        let p = SchmidtVector::new(vec![1.0, 0.0]).unwrap();
        let st = schmidt_state(&p);
        assert!((st.amplitudes()[(0, 0)] - r(1.0)).norm() < TOL);
        assert!(st.amplitudes()[(1, 1)].norm() < TOL);

        let bell = schmidt_state(&SchmidtVector::new(vec![0.5, 0.5]).unwrap());
        assert!(bell.overlap(&maximally_entangled(2).unwrap()) > 1.0 - TOL);
    }

    #[test]
    fn schmidt_state_reduced_purity() {
        let p = SchmidtVector::new(vec![0.8, 0.2]).unwrap();
        let st = schmidt_state(&p);
        assert!((st.reduced_purity() - 0.68).abs() < TOL);
    }

    #[test]
    fn generalized_bell_d2_members() {
        let s = 1.0 / 2.0_f64.sqrt();
        let b00 = generalized_bell(2, 0, 0).unwrap();
        assert!((b00.amplitudes()[(0, 0)] - r(s)).norm() < TOL);
        assert!((b00.amplitudes()[(1, 1)] - r(s)).norm() < TOL);
        // u=1, v=1: (|01⟩ - |10⟩)/√2 from the phase e^{iπl}.
        let b11 = generalized_bell(2, 1, 1).unwrap();
        assert!((b11.amplitudes()[(0, 1)] - r(s)).norm() < TOL);
        assert!((b11.amplitudes()[(1, 0)] + r(s)).norm() < TOL);
        assert!(generalized_bell(2, 2, 0).is_err());
    }

    /// Brute-force Gram check: the d² Bell states are orthonormal.
    #[test]
    fn generalized_bell_basis_is_orthonormal() {
        for d in 2..=5usize {
            let states: Vec<Vec<C64>> = (0..d)
                .flat_map(|u| (0..d).map(move |v| (u, v)))
                .map(|(u, v)| generalized_bell(d, u, v).unwrap().state_vector())
                .collect();
            for (a, sa) in states.iter().enumerate() {
                for (b, sb) in states.iter().enumerate() {
                    let inner: C64 = sa.iter().zip(sb).map(|(x, y)| x.conj() * y).sum();
                    let expect = if a == b { 1.0 } else { 0.0 };
                    assert!(
                        (inner.norm() - expect).abs() < 1e-10,
                        "d={d} ⟨{a}|{b}⟩ = {inner}"
                    );
                }
            }
        }
    }

    /// Σ_uv |Ψ_uv⟩⟨Ψ_uv| resolves the identity.
    #[test]
    fn generalized_bell_basis_resolves_identity() {
        for d in 2..=5usize {
            let mut sum = ComplexMatrix::zeros(d * d, d * d);
            for u in 0..d {
                for v in 0..d {
                    let st = generalized_bell(d, u, v).unwrap();
                    sum = sum.add(&ComplexMatrix::outer(&st.state_vector()));
                }
            }
            assert!(
                sum.max_abs_diff(&ComplexMatrix::identity(d * d)) < 1e-10,
                "d={d}"
            );
        }
    }

    #[test]
    fn weyl_d2_members_are_paulis() {
        let u00 = weyl(2, 0, 0).unwrap();
        assert!(u00.max_abs_diff(&ComplexMatrix::identity(2)) < TOL);
        let u01 = weyl(2, 0, 1).unwrap();
        let sx = ComplexMatrix::new(2, 2, vec![r(0.0), r(1.0), r(1.0), r(0.0)]).unwrap();
        assert!(u01.max_abs_diff(&sx) < TOL);
        let u10 = weyl(2, 1, 0).unwrap();
        let sz = ComplexMatrix::diagonal(&[r(1.0), r(-1.0)]);
        assert!(u10.max_abs_diff(&sz) < TOL);
    }

    #[test]
    fn weyl_operators_are_unitary_and_orthogonal() {
        for d in [2usize, 3, 4] {
            for u in 0..d {
                for v in 0..d {
                    let w = weyl(d, u, v).unwrap();
                    let prod = w.matmul(&w.adjoint());
                    assert!(prod.max_abs_diff(&ComplexMatrix::identity(d)) < 1e-12);
                }
            }
            // tr(Û_uv† Û_u'v') = d δ_uu' δ_vv'
            for u in 0..d {
                for v in 0..d {
                    for u2 in 0..d {
                        for v2 in 0..d {
                            let a = weyl(d, u, v).unwrap();
                            let b = weyl(d, u2, v2).unwrap();
                            let tr = a.adjoint().trace_product(&b);
                            let expect = if (u, v) == (u2, v2) { d as f64 } else { 0.0 };
                            assert!((tr.re - expect).abs() < 1e-10 && tr.im.abs() < 1e-10);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gellmann_d2_are_paulis() {
        let gens = gellmann_generators(2);
        assert_eq!(gens.len(), 3);
        let sx = ComplexMatrix::new(2, 2, vec![r(0.0), r(1.0), r(1.0), r(0.0)]).unwrap();
        let sy = ComplexMatrix::new(
            2,
            2,
            vec![r(0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), r(0.0)],
        )
        .unwrap();
        let sz = ComplexMatrix::diagonal(&[r(1.0), r(-1.0)]);
        assert!(gens[0].max_abs_diff(&sx) < TOL);
        assert!(gens[1].max_abs_diff(&sy) < TOL);
        assert!(gens[2].max_abs_diff(&sz) < TOL);
    }

    /// Brute-force Gram check of tr(λ_μ λ_ν) = 2δ_μν, plus tracelessness
    /// and Hermiticity.
    #[test]
    fn gellmann_generators_are_orthonormal() {
        for d in 2..=5usize {
            let gens = gellmann_generators(d);
            assert_eq!(gens.len(), d * d - 1);
            for g in &gens {
                assert!(g.trace().norm() < 1e-14);
                assert!(g.hermitian_deviation() < 1e-14);
            }
            for (a, ga) in gens.iter().enumerate() {
                for (b, gb) in gens.iter().enumerate() {
                    let tr = ga.trace_product(gb);
                    let expect = if a == b { 2.0 } else { 0.0 };
                    assert!(
                        (tr.re - expect).abs() < 1e-12 && tr.im.abs() < 1e-12,
                        "d={d} tr(λ_{a} λ_{b}) = {tr}"
                    );
                }
            }
        }
    }

    #[test]
    fn isotropic_density_limits() {
        let noise = isotropic_density(2, 0.0).unwrap();
        let expect = ComplexMatrix::identity(4).scale(r(0.25));
        assert!(noise.matrix().max_abs_diff(&expect) < TOL);

        let pure = isotropic_density(2, 1.0).unwrap();
        let me = maximally_entangled(2).unwrap();
        assert!(pure.matrix().max_abs_diff(me.density().matrix()) < TOL);

        assert!(isotropic_density(2, 1.5).is_err());
        assert!(isotropic_density(2, -0.5).is_err());
        // Lower boundary -1/(d²-1) is admissible.
        assert!(isotropic_density(2, -1.0 / 3.0).is_ok());
    }

    #[test]
    fn isotropic_density_largest_eigenvalue() {
        let rho = isotropic_density(2, 0.5).unwrap();
        let eigs = hermitian_eigenvalues(rho.matrix()).unwrap();
        assert!((eigs.last().unwrap() - 0.625).abs() < 1e-12);
    }

    /// Invariance under U ⊗ U* for random unitaries.
    #[test]
    fn isotropic_density_is_u_ubar_invariant() {
        let mut rng = ChaCha12Rng::seed_from_u64(0x150);
        for d in [2usize, 3] {
            let rho = isotropic_density(d, 0.7).unwrap();
            for _ in 0..20 {
                let g = DMatrix::<C64>::from_fn(d, d, |_, _| {
                    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                });
                let q = g.qr().q();
                let u = ComplexMatrix::from_fn(d, d, |r_, c_| q[(r_, c_)]);
                let u_conj = ComplexMatrix::from_fn(d, d, |r_, c_| q[(r_, c_)].conj());
                let op = kron(&u, &u_conj);
                let rotated = op.matmul(rho.matrix()).matmul(&op.adjoint());
                assert!(rotated.max_abs_diff(rho.matrix()) < 1e-9, "d={d}");
            }
        }
    }

    #[test]
    fn density_matrix_rejects_bad_inputs() {
        // Not unit trace.
        let m = ComplexMatrix::identity(4);
        assert!(DensityMatrix::new(m, SubsystemDims::pair(2)).is_err());
        // Not PSD.
        let m = ComplexMatrix::diagonal(&[r(1.5), r(-0.5)]);
        assert!(DensityMatrix::new(m, SubsystemDims::new(vec![2]).unwrap()).is_err());
        // Dims mismatch.
        let m = ComplexMatrix::identity(4).scale(r(0.25));
        assert!(DensityMatrix::new(m, SubsystemDims::new(vec![2, 3]).unwrap()).is_err());
    }

    #[test]
    fn constructed_states_satisfy_density_invariants() {
        // Spot-check the constructors feed valid density matrices.
        let p = SchmidtVector::new(vec![0.8, 0.2]).unwrap();
        let rho = schmidt_state(&p).density();
        let eigs = hermitian_eigenvalues(rho.matrix()).unwrap();
        assert!(eigs[0] > -1e-10);
        assert!((eigs.iter().sum::<f64>() - 1.0).abs() < 1e-10);

        let iso = isotropic_density(3, 0.4).unwrap();
        let red = partial_trace(iso.matrix(), iso.dims(), &[0]).unwrap();
        assert!((red.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mod_arithmetic_is_non_negative() {
        assert_eq!(mod_add(2, 2, 3), 1);
        let w = root_of_unity(4, -1);
        assert!((w - C64::new(0.0, -1.0)).norm() < TOL);
    }
}
