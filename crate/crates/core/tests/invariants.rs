//! Property tests for the structural invariants that must hold across
//! randomly generated states: trace preservation, physical spectra, exact
//! involutions, separable bounds, probability bookkeeping, and agreement
//! between the closed-form and dense routes.

use proptest::prelude::*;

use qswap::linalg::{
    hermitian_eigenvalues, kron, partial_trace, partial_transpose, realign, trace_norm,
    ComplexMatrix, SubsystemDims,
};
use qswap::measures::{
    avg_iconcurrence, avg_negativity, iconcurrence_outcome, iconcurrence_pure, negativity_density,
    negativity_outcome, negativity_pure_schmidt,
};
use qswap::states::{DensityMatrix, IsotropicState, PureBipartiteState, SchmidtVector};
use qswap::swap::{swap_isotropic, swap_outcome_distribution, swap_pure};
use qswap::teleport::teleport_branch;
use qswap::C64;

fn schmidt_vector(d: usize) -> impl Strategy<Value = SchmidtVector> {
    prop::collection::vec(1e-3..1.0f64, d).prop_map(|raw| {
        let sum: f64 = raw.iter().sum();
        SchmidtVector::new(raw.into_iter().map(|x| x / sum).collect()).unwrap()
    })
}

fn pure_state(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n).prop_filter_map(
        "state norm too small",
        |pairs| {
            let v: Vec<C64> = pairs.into_iter().map(|(re, im)| C64::new(re, im)).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            (norm > 1e-3).then(|| v.into_iter().map(|z| z / norm).collect::<Vec<C64>>())
        },
    )
}

/// Rank-≤3 mixture of random pure states over the given bipartition.
fn density(d1: usize, d2: usize) -> impl Strategy<Value = DensityMatrix> {
    let n = d1 * d2;
    (
        prop::collection::vec(pure_state(n), 3),
        prop::collection::vec(0.05..1.0f64, 3),
    )
        .prop_map(move |(states, weights)| {
            let total: f64 = weights.iter().sum();
            let mut m = ComplexMatrix::zeros(n, n);
            for (psi, w) in states.iter().zip(&weights) {
                m = m.add(&ComplexMatrix::outer(psi).scale(C64::new(w / total, 0.0)));
            }
            DensityMatrix::new(m, SubsystemDims::new(vec![d1, d2]).unwrap()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_preserves_trace(rho in density(2, 3)) {
        for keep in [&[0usize][..], &[1][..], &[0, 1][..]] {
            let red = partial_trace(rho.matrix(), rho.dims(), keep).unwrap();
            let diff = (red.trace() - rho.matrix().trace()).norm();
            prop_assert!(diff < 1e-12);
        }
    }

    #[test]
    fn density_spectra_are_physical(rho in density(3, 2)) {
        let eigs = hermitian_eigenvalues(rho.matrix()).unwrap();
        prop_assert!(eigs[0] >= -1e-10);
        prop_assert!((eigs.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn partial_transpose_twice_is_identity_exactly(rho in density(2, 2)) {
        for subsystem in [0usize, 1] {
            let once = partial_transpose(rho.matrix(), rho.dims(), subsystem).unwrap();
            let twice = partial_transpose(&once, rho.dims(), subsystem).unwrap();
            prop_assert!(twice == *rho.matrix());
        }
    }

    #[test]
    fn kron_trace_is_multiplicative(a in density(2, 2), b in density(2, 3)) {
        let lhs = kron(a.matrix(), b.matrix()).trace();
        let rhs = a.matrix().trace() * b.matrix().trace();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn realignment_of_products_respects_separable_bound(
        a in pure_state(2),
        b in pure_state(2),
        mix in 0.0..1.0f64,
    ) {
        // Mixture of two product projectors on each side is still product ⊗.
        let rho_a = ComplexMatrix::outer(&a).scale(C64::new(mix, 0.0)).add(
            &ComplexMatrix::identity(2).scale(C64::new((1.0 - mix) / 2.0, 0.0)),
        );
        let rho_b = ComplexMatrix::outer(&b);
        let prod = kron(&rho_a, &rho_b);
        let re = realign(&prod, &SubsystemDims::pair(2)).unwrap();
        prop_assert!(trace_norm(&re) <= 1.0 + 1e-10);
    }

    #[test]
    fn swap_probabilities_sum_to_one_and_ignore_u(
        p in schmidt_vector(3),
        q in schmidt_vector(3),
    ) {
        let dist = swap_outcome_distribution(&p, &q).unwrap();
        let total: f64 = dist.iter().map(|o| o.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
        // P_uv never depends on u: compare branch (u, v) to (0, v) bitwise.
        for o in &dist {
            let reference = dist
                .iter()
                .find(|r| r.label.u == 0 && r.label.v == o.label.v)
                .unwrap();
            prop_assert!(o.probability == reference.probability);
        }
    }

    #[test]
    fn branch_measures_match_the_explicit_state(
        p in schmidt_vector(3),
        q in schmidt_vector(3),
        v in 0usize..3,
    ) {
        let outcome = swap_pure(&p, &q, 1, v).unwrap();
        prop_assume!(outcome.state.is_some());
        let state = outcome.state.unwrap();
        let c_closed = iconcurrence_outcome(&p, &q, v).unwrap();
        prop_assert!((iconcurrence_pure(&state) - c_closed).abs() < 1e-9);
        let n_closed = negativity_outcome(&p, &q, v).unwrap();
        let n_dense = negativity_density(&state.density()).unwrap();
        prop_assert!((n_dense - n_closed).abs() < 1e-9);
    }

    #[test]
    fn averages_equal_probability_weighted_branch_sums(
        p in schmidt_vector(4),
        q in schmidt_vector(4),
    ) {
        let dist = swap_outcome_distribution(&p, &q).unwrap();
        let mut c_sum = 0.0;
        let mut n_sum = 0.0;
        for o in &dist {
            if o.probability > 0.0 {
                c_sum += o.probability * iconcurrence_outcome(&p, &q, o.label.v).unwrap();
                n_sum += o.probability * negativity_outcome(&p, &q, o.label.v).unwrap();
            }
        }
        prop_assert!((avg_iconcurrence(&p, &q).unwrap() - c_sum).abs() < 1e-10);
        prop_assert!((avg_negativity(&p, &q).unwrap() - n_sum).abs() < 1e-10);
    }

    #[test]
    fn isotropic_composition_commutes_and_chains_to_products(
        vs in prop::collection::vec(0.0..1.0f64, 1..5),
    ) {
        let d = 3;
        let mut chained = IsotropicState::new(d, vs[0]).unwrap();
        for &v in &vs[1..] {
            chained = swap_isotropic(&chained, &IsotropicState::new(d, v).unwrap()).unwrap();
        }
        let product: f64 = vs.iter().product();
        prop_assert!((chained.visibility() - product).abs() < 1e-12);
    }

    #[test]
    fn measures_stay_within_their_bounds(
        amp in pure_state(9),
        p in schmidt_vector(3),
    ) {
        let d = 3usize;
        let mat = ComplexMatrix::new(d, d, amp).unwrap();
        let state = PureBipartiteState::new(mat).unwrap();
        let cmax = (2.0 * (d as f64 - 1.0) / d as f64).sqrt();
        prop_assert!(iconcurrence_pure(&state) <= cmax + 1e-10);
        let n = negativity_pure_schmidt(&p);
        prop_assert!((0.0..=1.0 + 1e-10).contains(&n));
    }

    #[test]
    fn teleport_branch_probabilities_sum_to_one(
        channel in density(2, 2),
        input in pure_state(2),
    ) {
        let total: f64 = (0..2)
            .flat_map(|u| (0..2).map(move |v| (u, v)))
            .map(|(u, v)| teleport_branch(&channel, &input, u, v).unwrap().probability)
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }
}
