//! Entanglement quantifiers: I-concurrence and negativity for pure Schmidt
//! states, per-branch and averaged values after swapping, PPT negativity of
//! arbitrary bipartite density matrices, and the isotropic closed forms in
//! terms of fidelity.
//!
//! Negativity is everywhere the normalized variant with prefactor 2/(d-1),
//! so pure, swapped, and isotropic values are mutually comparable and the
//! maximally entangled state scores 1 in every dimension. I-concurrence is
//! the unnormalized √(2[1 - tr ρ_A²]), reaching √(2(d-1)/d).

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, partial_transpose, DENSE_DIM_CAP};
use crate::states::{mod_add, DensityMatrix, IsotropicState, PureBipartiteState, SchmidtVector};
use crate::swap::branch_weight;

/// Values this close to zero are clamped to exactly zero before any
/// entangled/separable verdict, so boundary states read as separable.
pub const ZERO_CLAMP: f64 = 1e-12;

fn clamp_zero(x: f64) -> f64 {
    if x.abs() < ZERO_CLAMP {
        0.0
    } else {
        x
    }
}

/// Fidelity (singlet fraction) F = ⟨Φ+|ρ|Φ+⟩, validated to [0, 1].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityValue {
    f: f64,
}

impl FidelityValue {
    pub fn new(f: f64) -> Result<Self> {
        if !f.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&f) {
            return Err(Error::InvalidFidelity(f));
        }
        Ok(Self {
            f: f.clamp(0.0, 1.0),
        })
    }

    pub fn value(&self) -> f64 {
        self.f
    }
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

/// I-concurrence √(2[1 - tr ρ_A²]) of a bipartite pure state.
pub fn iconcurrence_pure(state: &PureBipartiteState) -> f64 {
    let purity = state.reduced_purity();
    clamp_zero((2.0 * (1.0 - purity)).max(0.0).sqrt())
}

/// Negativity (2/(d-1)) Σ_{i<j} √(p_i p_j) of a Schmidt-form pure state.
pub fn negativity_pure_schmidt(p: &SchmidtVector) -> f64 {
    let d = p.dim();
    let probs = p.probs();
    let mut acc = 0.0;
    for i in 0..d {
        for j in (i + 1)..d {
            acc += (probs[i] * probs[j]).sqrt();
        }
    }
    clamp_zero(2.0 * acc / (d as f64 - 1.0))
}

/// Closed-form I-concurrence of the branch-(u, v) swapped state,
/// [2(1 - Σ_l (p_l p′_{l⊕v})² / P_uv²)]^{1/2}. Independent of u.
pub fn iconcurrence_outcome(p: &SchmidtVector, p2: &SchmidtVector, v: usize) -> Result<f64> {
    let d = check_same_dim(p, p2)?;
    if v >= d {
        return Err(Error::LabelOutOfRange { u: 0, v, d });
    }
    let weight = branch_weight(p, p2, v);
    if weight < crate::swap::ZERO_BRANCH_EPS {
        return Err(Error::ZeroProbabilityBranch { u: 0, v });
    }
    let sq_sum: f64 = (0..d)
        .map(|l| {
            let t = p.probs()[l] * p2.probs()[mod_add(l, v, d)];
            t * t
        })
        .sum();
    Ok(clamp_zero(
        (2.0 * (1.0 - sq_sum / (weight * weight))).max(0.0).sqrt(),
    ))
}

/// Probability-weighted average of the branch I-concurrences over all d²
/// outcomes: √2 Σ_v [P_v² - Σ_l (p_l p′_{l⊕v})²]^{1/2}.
pub fn avg_iconcurrence(p: &SchmidtVector, p2: &SchmidtVector) -> Result<f64> {
    let d = check_same_dim(p, p2)?;
    let mut acc = 0.0;
    for v in 0..d {
        let weight = branch_weight(p, p2, v);
        let sq_sum: f64 = (0..d)
            .map(|l| {
                let t = p.probs()[l] * p2.probs()[mod_add(l, v, d)];
                t * t
            })
            .sum();
        acc += (weight * weight - sq_sum).max(0.0).sqrt();
    }
    Ok(clamp_zero(std::f64::consts::SQRT_2 * acc))
}

/// Closed-form negativity of the branch-(u, v) swapped state,
/// (2/(P_uv(d-1))) Σ_{i<j} √(p_i p′_{i⊕v} p_j p′_{j⊕v}). Independent of u.
pub fn negativity_outcome(p: &SchmidtVector, p2: &SchmidtVector, v: usize) -> Result<f64> {
    let d = check_same_dim(p, p2)?;
    if v >= d {
        return Err(Error::LabelOutOfRange { u: 0, v, d });
    }
    let weight = branch_weight(p, p2, v);
    if weight < crate::swap::ZERO_BRANCH_EPS {
        return Err(Error::ZeroProbabilityBranch { u: 0, v });
    }
    let mut acc = 0.0;
    for i in 0..d {
        for j in (i + 1)..d {
            acc += (p.probs()[i]
                * p2.probs()[mod_add(i, v, d)]
                * p.probs()[j]
                * p2.probs()[mod_add(j, v, d)])
            .sqrt();
        }
    }
    Ok(clamp_zero(2.0 * acc / (weight * (d as f64 - 1.0))))
}

/// Probability-weighted average of the branch negativities over all d²
/// outcomes: (2/(d-1)) Σ_v Σ_{i<j} √(p_i p′_{i⊕v} p_j p′_{j⊕v}).
pub fn avg_negativity(p: &SchmidtVector, p2: &SchmidtVector) -> Result<f64> {
    let d = check_same_dim(p, p2)?;
    let mut acc = 0.0;
    for v in 0..d {
        for i in 0..d {
            for j in (i + 1)..d {
                acc += (p.probs()[i]
                    * p2.probs()[mod_add(i, v, d)]
                    * p.probs()[j]
                    * p2.probs()[mod_add(j, v, d)])
                .sqrt();
            }
        }
    }
    Ok(clamp_zero(2.0 * acc / (d as f64 - 1.0)))
}

/// PPT negativity of a d×d bipartite density matrix: (2/(d-1)) times the
/// absolute sum of the negative eigenvalues of the partial transpose.
/// A value of 0 does not certify separability in general (PPT-entangled
/// states exist); on the families handled here it coincides with the
/// separability boundary.
pub fn negativity_density(rho: &DensityMatrix) -> Result<f64> {
    let d = rho.bipartite_dim()?;
    if rho.side() > DENSE_DIM_CAP {
        return Err(Error::DimensionCapExceeded {
            dim: rho.side(),
            cap: DENSE_DIM_CAP,
        });
    }
    let pt = partial_transpose(rho.matrix(), rho.dims(), 0)?;
    let eigs = hermitian_eigenvalues(&pt)?;
    let neg: f64 = eigs.iter().filter(|&&e| e < 0.0).map(|e| -e).sum();
    Ok(clamp_zero(2.0 * neg / (d as f64 - 1.0)))
}

/// Fidelity of an isotropic state with the maximally entangled reference:
/// F = v + (1 - v)/d².
pub fn isotropic_fidelity(s: &IsotropicState) -> FidelityValue {
    let d2 = (s.dim() * s.dim()) as f64;
    let f = s.visibility() + (1.0 - s.visibility()) / d2;
    FidelityValue::new(f).expect("admissible visibility maps into [0, 1]")
}

/// I-concurrence of an isotropic state in terms of fidelity: 0 up to
/// F = 1/d, then √(2d/(d-1))·(F - 1/d).
pub fn iconcurrence_isotropic(d: usize, f: FidelityValue) -> f64 {
    assert!(d >= 2, "dimension must be at least 2");
    let threshold = 1.0 / d as f64;
    let excess = clamp_zero(f.value() - threshold);
    if excess <= 0.0 {
        0.0
    } else {
        clamp_zero((2.0 * d as f64 / (d as f64 - 1.0)).sqrt() * excess)
    }
}

/// Negativity of an isotropic state in terms of fidelity: 0 up to F = 1/d,
/// then (Fd - 1)/(d - 1); reaches 1 at F = 1 in every dimension.
pub fn negativity_isotropic(d: usize, f: FidelityValue) -> f64 {
    assert!(d >= 2, "dimension must be at least 2");
    let value = clamp_zero((f.value() * d as f64 - 1.0) / (d as f64 - 1.0));
    if value <= 0.0 {
        0.0
    } else {
        value
    }
}
