//! Entanglement swapping between two Schmidt-form (or general bipartite)
//! links.
//!
//! Two independent pairs (A, B) and (C, D) are combined and the inner
//! particles (B, C) are projected onto a generalized Bell state |Ψ_uv⟩.
//! Two routes are provided:
//!
//! - [`swap_pure`]: the closed form for Schmidt-diagonal pure inputs — the
//!   branch (u, v) leaves (A, D) in the state with amplitude
//!   √(p_l p′_{l⊕v}) e^{-2πi l u / d} / √P_uv on |l⟩_A |l⊕v⟩_D, where
//!   P_uv = Σ_l p_l p′_{l⊕v}, and occurs with probability P_uv / d;
//! - [`swap_general`]: the dense route for arbitrary density-matrix inputs —
//!   sandwich ρ_AB ⊗ ρ_CD between Π = 𝕀_A ⊗ |Ψ_uv⟩⟨Ψ_uv|_BC ⊗ 𝕀_D, read the
//!   probability off the trace, partial-trace out (B, C), renormalize.
//!
//! Subsystems are ordered A, B, C, D and flattened row-major (subsystem A
//! most significant); tests pin this layout. The u-dependent phase is kept
//! in the pure path so teleportation corrections compose, even though the
//! entanglement measures ignore it.

use crate::error::{Error, Result};
use crate::linalg::{kron, partial_trace, ComplexMatrix, SubsystemDims, DENSE_DIM_CAP};
use crate::states::{
    generalized_bell, mod_add, root_of_unity, weyl, DensityMatrix, IsotropicState,
    PureBipartiteState, SchmidtVector, WeylLabel,
};
use crate::C64;

/// Branches with P_uv below this are reported with probability 0 and no
/// state object (the closed form divides by √P_uv).
pub const ZERO_BRANCH_EPS: f64 = 1e-12;

/// One Bell-measurement branch: its label, its probability, and the
/// post-measurement state of (A, D) when the branch is reachable.
#[derive(Clone, Debug)]
pub struct SwapOutcome {
    pub label: WeylLabel,
    pub probability: f64,
    pub state: Option<PureBipartiteState>,
}

/// Normalization weight P_uv = Σ_l p_l p′_{l⊕v}; independent of u.
pub fn branch_weight(p: &SchmidtVector, p2: &SchmidtVector, v: usize) -> f64 {
    let d = p.dim();
    (0..d)
        .map(|l| p.probs()[l] * p2.probs()[mod_add(l, v, d)])
        .sum()
}

fn check_same_dim(p: &SchmidtVector, p2: &SchmidtVector) -> Result<usize> {
    if p.dim() != p2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "Schmidt vectors have dimensions {} and {}",
            p.dim(),
            p2.dim()
        )));
    }
    Ok(p.dim())
}

/// Closed-form swap branch for Schmidt-form pure inputs.
pub fn swap_pure(p: &SchmidtVector, p2: &SchmidtVector, u: usize, v: usize) -> Result<SwapOutcome> {
    let d = check_same_dim(p, p2)?;
    if u >= d || v >= d {
        return Err(Error::LabelOutOfRange { u, v, d });
    }
    let weight = branch_weight(p, p2, v);
    let label = WeylLabel { u, v };
    if weight < ZERO_BRANCH_EPS {
        return Ok(SwapOutcome {
            label,
            probability: 0.0,
            state: None,
        });
    }
    let norm = weight.sqrt();
    let amp = ComplexMatrix::from_fn(d, d, |l, c| {
        if c == mod_add(l, v, d) {
            let mag = (p.probs()[l] * p2.probs()[c]).sqrt() / norm;
            root_of_unity(d, -((l * u) as i64)) * mag
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let state = PureBipartiteState::new(amp)?;
    Ok(SwapOutcome {
        label,
        probability: weight / d as f64,
        state: Some(state),
    })
}

/// All d² branches, ordered ascending in (u, v). Probabilities sum to 1.
pub fn swap_outcome_distribution(
    p: &SchmidtVector,
    p2: &SchmidtVector,
) -> Result<Vec<SwapOutcome>> {
    let d = check_same_dim(p, p2)?;
    let mut out = Vec::with_capacity(d * d);
    for u in 0..d {
        for v in 0..d {
            out.push(swap_pure(p, p2, u, v)?);
        }
    }
    Ok(out)
}

/// Dense-projection swap branch for arbitrary bipartite density-matrix
/// inputs. Returns the renormalized (A, D) state (None when the branch has
/// probability below [`ZERO_BRANCH_EPS`]) and the branch probability.
pub fn swap_general(
    rho_ab: &DensityMatrix,
    rho_cd: &DensityMatrix,
    u: usize,
    v: usize,
) -> Result<(Option<DensityMatrix>, f64)> {
    let d = rho_ab.bipartite_dim()?;
    let d2 = rho_cd.bipartite_dim()?;
    if d != d2 {
        return Err(Error::DimensionMismatch(format!(
            "link dimensions differ: {d} vs {d2}"
        )));
    }
    if u >= d || v >= d {
        return Err(Error::LabelOutOfRange { u, v, d });
    }
    let total = d * d * d * d;
    if total > DENSE_DIM_CAP {
        return Err(Error::DimensionCapExceeded {
            dim: total,
            cap: DENSE_DIM_CAP,
        });
    }

    let joint = kron(rho_ab.matrix(), rho_cd.matrix());
    let bell = generalized_bell(d, u, v)?;
    let bell_projector = ComplexMatrix::outer(&bell.state_vector());
    let eye = ComplexMatrix::identity(d);
    let projector = kron(&kron(&eye, &bell_projector), &eye);
    let projected = projector.matmul(&joint).matmul(&projector);

    let probability = projected.trace().re.max(0.0);
    if probability < ZERO_BRANCH_EPS {
        return Ok((None, 0.0));
    }
    let dims = SubsystemDims::new(vec![d, d, d, d])?;
    let reduced =
        partial_trace(&projected, &dims, &[0, 3])?.scale(C64::new(1.0 / probability, 0.0));
    let state = DensityMatrix::new(reduced, SubsystemDims::pair(d))?;
    Ok((Some(state), probability))
}

/// Swapping two isotropic links multiplies their visibilities: each branch
/// yields (after the local Weyl correction of [`canonicalize_outcome`]) the
/// isotropic state of visibility v₁·v₂, with probability 1/d².
pub fn swap_isotropic(s1: &IsotropicState, s2: &IsotropicState) -> Result<IsotropicState> {
    if s1.dim() != s2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "isotropic dimensions differ: {} vs {}",
            s1.dim(),
            s2.dim()
        )));
    }
    IsotropicState::new(s1.dim(), s1.visibility() * s2.visibility())
}

/// Map the branch-(u, v) output onto the branch-(0, 0) reference form by
/// the local rotation 𝕀 ⊗ Û_uv. Entanglement measures are unchanged.
pub fn canonicalize_outcome(state: &DensityMatrix, u: usize, v: usize) -> Result<DensityMatrix> {
    let d = state.bipartite_dim()?;
    if u >= d || v >= d {
        return Err(Error::LabelOutOfRange { u, v, d });
    }
    let correction = kron(&ComplexMatrix::identity(d), &weyl(d, u, v)?);
    let rotated = correction
        .matmul(state.matrix())
        .matmul(&correction.adjoint());
    DensityMatrix::new(rotated, SubsystemDims::pair(d))
}
