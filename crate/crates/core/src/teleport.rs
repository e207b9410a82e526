//! Weyl-corrected qudit teleportation over an arbitrary bipartite channel,
//! plus repeater chains of isotropic links.
//!
//! The sender holds the unknown qudit |φ⟩ and one half of the channel
//! ρ_ch; the joint system is ordered (input, sender half, receiver half)
//! and flattened row-major. A branch (u, v) projects the first two
//! subsystems onto the generalized Bell state |Ψ_uv⟩; the receiver then
//! applies the Weyl correction Û_uv. With the Bell basis and Weyl
//! operators defined in [`states`][crate::states], applying Û_uv with the
//! measured labels directly restores the input exactly on a maximally
//! entangled channel, for every branch — tests pin this convention.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{kron, partial_trace, ComplexMatrix, SubsystemDims};
use crate::measures::{isotropic_fidelity, FidelityValue};
use crate::states::{generalized_bell, weyl, DensityMatrix, IsotropicState, WeylLabel, EPS_PROB};
use crate::swap::{swap_isotropic, ZERO_BRANCH_EPS};
use crate::C64;

/// One teleportation branch: measured labels, branch probability, the
/// receiver's corrected state, and its overlap with the input.
#[derive(Clone, Debug)]
pub struct TeleportResult {
    pub outcome: WeylLabel,
    pub probability: f64,
    pub output_state: DensityMatrix,
    pub fidelity_to_input: f64,
}

/// End-to-end report for a repeater chain of isotropic links.
#[derive(Clone, Copy, Debug)]
pub struct ChainReport {
    pub link_count: usize,
    /// Product of the link visibilities.
    pub end_visibility: f64,
    /// Fidelity of the end-to-end link with the maximally entangled state.
    pub end_fidelity: FidelityValue,
    /// Monte Carlo average teleportation fidelity through the end link.
    pub avg_teleport_fidelity: f64,
}

fn validate_input(d: usize, input: &[C64]) -> Result<Vec<C64>> {
    if input.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "input qudit has {} amplitudes, channel dimension is {d}",
            input.len()
        )));
    }
    let norm_sq: f64 = input.iter().map(|z| z.norm_sqr()).sum();
    if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > EPS_PROB {
        return Err(Error::InvalidArgument(format!(
            "input norm² is {norm_sq}, expected 1"
        )));
    }
    let scale = 1.0 / norm_sq.sqrt();
    Ok(input.iter().map(|&z| z * scale).collect())
}

/// Unnormalized branch computation: probability plus the corrected,
/// renormalized receiver matrix. Skips density-matrix validation so the
/// Monte Carlo loop stays lean.
fn branch_raw(
    channel: &ComplexMatrix,
    d: usize,
    input: &[C64],
    u: usize,
    v: usize,
) -> Result<(f64, ComplexMatrix)> {
    let input_density = ComplexMatrix::outer(input);
    let joint = kron(&input_density, channel);
    let bell = generalized_bell(d, u, v)?;
    let projector = kron(
        &ComplexMatrix::outer(&bell.state_vector()),
        &ComplexMatrix::identity(d),
    );
    let measured = projector.matmul(&joint).matmul(&projector);
    let probability = measured.trace().re.max(0.0);
    if probability < ZERO_BRANCH_EPS {
        return Err(Error::ZeroProbabilityBranch { u, v });
    }
    let dims = SubsystemDims::new(vec![d, d, d])?;
    let receiver = partial_trace(&measured, &dims, &[2])?;
    let correction = weyl(d, u, v)?;
    let corrected = correction
        .matmul(&receiver)
        .matmul(&correction.adjoint())
        .scale(C64::new(1.0 / probability, 0.0));
    Ok((probability, corrected))
}

/// Teleport `input` through `channel` conditioned on Bell outcome (u, v).
pub fn teleport_branch(
    channel: &DensityMatrix,
    input: &[C64],
    u: usize,
    v: usize,
) -> Result<TeleportResult> {
    let d = channel.bipartite_dim()?;
    if u >= d || v >= d {
        return Err(Error::LabelOutOfRange { u, v, d });
    }
    let input = validate_input(d, input)?;
    let (probability, corrected) = branch_raw(channel.matrix(), d, &input, u, v)?;
    let fidelity = corrected.expectation(&input).re.clamp(0.0, 1.0);
    let output_state = DensityMatrix::new(corrected, SubsystemDims::new(vec![d])?)?;
    Ok(TeleportResult {
        outcome: WeylLabel { u, v },
        probability,
        output_state,
        fidelity_to_input: fidelity,
    })
}

/// Normalized Haar-random pure qudit from seeded complex Gaussians.
pub fn haar_random_state(d: usize, rng: &mut impl Rng) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..d)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Per-sample teleportation fidelities: each sample draws a Haar-random
/// input and averages the branch fidelities weighted by branch probability.
/// Sample i uses RNG stream i of the given seed, so the result is
/// deterministic for a fixed (seed, samples) regardless of evaluation
/// order.
pub fn teleport_fidelity_samples(
    channel: &DensityMatrix,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be at least 1".into(),
        ));
    }
    let d = channel.bipartite_dim()?;
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let input = haar_random_state(d, &mut rng);
        let mut fid = 0.0;
        for u in 0..d {
            for v in 0..d {
                match branch_raw(channel.matrix(), d, &input, u, v) {
                    Ok((prob, corrected)) => {
                        fid += prob * corrected.expectation(&input).re.clamp(0.0, 1.0);
                    }
                    // Unreachable branches carry zero weight in the average.
                    Err(Error::ZeroProbabilityBranch { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        out.push(fid);
    }
    Ok(out)
}

/// Mean teleportation fidelity over Haar-random inputs and all branches.
pub fn teleport_average_fidelity(
    channel: &DensityMatrix,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let fids = teleport_fidelity_samples(channel, samples, seed)?;
    Ok(fids.iter().sum::<f64>() / fids.len() as f64)
}

/// Compose a chain of isotropic links by iterated swapping, then report
/// the end-to-end visibility, fidelity, and Monte Carlo teleportation
/// fidelity through the resulting link.
pub fn repeater_chain(
    d: usize,
    link_visibilities: &[f64],
    samples: usize,
    seed: u64,
) -> Result<ChainReport> {
    if link_visibilities.is_empty() {
        return Err(Error::InvalidArgument(
            "chain needs at least one link".into(),
        ));
    }
    let mut end = IsotropicState::new(d, link_visibilities[0])?;
    for &v in &link_visibilities[1..] {
        end = swap_isotropic(&end, &IsotropicState::new(d, v)?)?;
    }
    let end_fidelity = isotropic_fidelity(&end);
    let avg = teleport_average_fidelity(&end.density(), samples, seed)?;
    Ok(ChainReport {
        link_count: link_visibilities.len(),
        end_visibility: end.visibility(),
        end_fidelity,
        avg_teleport_fidelity: avg,
    })
}
