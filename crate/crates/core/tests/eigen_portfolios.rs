mod common;

use common::{dot, fixture_moments, random_spd, rng};
use markowitz::eigen::DEFAULT_SHRINK_STEP;
use markowitz::{
    build_eigen_portfolios, correlation_from_covariance, find_dep, shrink_covariance, sym_eigen,
    MomentEstimates, SymMatrix,
};
use proptest::prelude::*;
use rand::Rng;

fn negative_pair_instance() -> MomentEstimates {
    let vols = [0.02, 0.015, 0.025];
    let corr = [[1.0, -0.9, 0.0], [-0.9, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let cov = SymMatrix::from_fn(3, |i, j| corr[i][j] * vols[i] * vols[j]).unwrap();
    MomentEstimates::unlabelled(vec![0.001, 0.0015, 0.0008], cov).unwrap()
}

#[test]
fn fixture_basis_is_decorrelated_and_complete() {
    let m = fixture_moments();
    let basis = build_eigen_portfolios(&m).unwrap();
    assert!(basis.excluded.is_empty());
    assert_eq!(basis.portfolios.len(), 10);
    for (i, a) in basis.portfolios.iter().enumerate() {
        assert!((a.weights.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        let own = m.covariance.quad_form(&a.weights);
        let predicted = a.eigenvalue / (a.alpha * a.alpha);
        assert!((own - predicted).abs() <= 1e-10 * predicted);
        assert!((a.risk - own.sqrt()).abs() <= 1e-15);
        for b in &basis.portfolios[i + 1..] {
            assert!(m.covariance.bilinear(&a.weights, &b.weights).abs() <= 1e-10);
        }
    }
    // smallest singular value of the stacked ψ rows, via eigenvalues of ΨΨᵀ
    let psi: Vec<&Vec<f64>> = basis.portfolios.iter().map(|p| &p.weights).collect();
    let gram = SymMatrix::from_fn(10, |i, j| dot(psi[i], psi[j])).unwrap();
    let smallest = sym_eigen(&gram).unwrap().eigenvalues[9];
    assert!(smallest.sqrt() > 1e-10);
}

#[test]
fn fixture_dep_needs_no_shrinkage() {
    let m = fixture_moments();
    let corr = correlation_from_covariance(&m.covariance).unwrap();
    assert!(corr.to_rows().iter().flatten().all(|c| *c > 0.0));
    let dep = find_dep(&m, DEFAULT_SHRINK_STEP).unwrap();
    assert_eq!(dep.gamma, 0.0);
    assert!(dep.dep.weights.iter().all(|w| *w > 0.0));
    let first = &build_eigen_portfolios(&m).unwrap().portfolios[0];
    for (a, b) in dep.dep.weights.iter().zip(&first.weights) {
        assert!((a - b).abs() <= 1e-12);
    }
    assert_eq!(dep.shrunk_covariance, m.covariance);
}

#[test]
fn strongly_negative_pair_needs_shrinkage() {
    let m = negative_pair_instance();
    let basis = build_eigen_portfolios(&m).unwrap();
    assert!(basis.portfolios[0].weights.iter().any(|w| *w <= 0.0) || basis.excluded.contains(&1));
    let dep = find_dep(&m, DEFAULT_SHRINK_STEP).unwrap();
    assert!(dep.gamma > 0.0);
    assert!(dep.dep.weights.iter().all(|w| *w > 0.0));
    assert!((dep.dep.weights.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    // return and risk are measured under the unshrunk covariance
    assert!((dep.dep.risk - m.covariance.quad_form(&dep.dep.weights).sqrt()).abs() <= 1e-15);
    let expected = shrink_covariance(&m.covariance, dep.gamma).unwrap();
    assert_eq!(dep.shrunk_covariance, expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decorrelation_on_random_instances(seed in any::<u64>(), n in 2usize..=10) {
        let mut rng = rng(seed);
        let cov = random_spd(&mut rng, n, 0.03, 1e-6);
        let r = (0..n).map(|_| rng.random_range(-0.01..0.02)).collect();
        let m = MomentEstimates::unlabelled(r, cov).unwrap();
        let basis = build_eigen_portfolios(&m).unwrap();
        for (i, a) in basis.portfolios.iter().enumerate() {
            let own = m.covariance.quad_form(&a.weights);
            let predicted = a.eigenvalue / (a.alpha * a.alpha);
            prop_assert!((own - predicted).abs() <= 1e-9 * predicted);
            for b in &basis.portfolios[i + 1..] {
                let cross = m.covariance.bilinear(&a.weights, &b.weights);
                let scale = (own * m.covariance.quad_form(&b.weights)).sqrt();
                prop_assert!(cross.abs() <= 1e-9 * scale);
            }
        }
    }

    #[test]
    fn correlation_round_trip(seed in any::<u64>(), n in 1usize..=10) {
        let cov = random_spd(&mut rng(seed), n, 1.0, 1e-3);
        let c = correlation_from_covariance(&cov).unwrap();
        let vols: Vec<f64> = cov.diagonal().iter().map(|v| v.sqrt()).collect();
        for i in 0..n {
            prop_assert!((c.get(i, i) - 1.0).abs() <= 1e-12);
            for j in 0..n {
                prop_assert!(c.get(i, j).abs() <= 1.0 + 1e-12);
                let back = vols[i] * c.get(i, j) * vols[j];
                prop_assert!((back - cov.get(i, j)).abs() <= 1e-12 * cov.max_abs());
            }
        }
    }

    #[test]
    fn shrinkage_is_affine(seed in any::<u64>(), n in 1usize..=8, g1 in 0.0f64..0.5, g2 in 0.0f64..0.5) {
        let s = random_spd(&mut rng(seed), n, 1.0, 1e-3);
        let a = shrink_covariance(&s, g1).unwrap();
        let b = shrink_covariance(&s, g2).unwrap();
        let c = shrink_covariance(&s, g1 + g2).unwrap();
        for i in 0..n {
            prop_assert_eq!(a.get(i, i), s.get(i, i));
            for j in 0..n {
                let lhs = a.get(i, j) + b.get(i, j);
                let rhs = c.get(i, j) + s.get(i, j);
                prop_assert!((lhs - rhs).abs() <= 1e-14 * s.max_abs().max(1.0));
            }
        }
        // SPD is preserved
        prop_assert!(markowitz::spd_inverse(&c).is_ok());
    }

    #[test]
    fn dep_is_long_only(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = rng(seed);
        let cov = random_spd(&mut rng, n, 0.03, 1e-6);
        let r = (0..n).map(|_| rng.random_range(-0.01..0.02)).collect();
        let m = MomentEstimates::unlabelled(r, cov).unwrap();
        let dep = find_dep(&m, 0.05).unwrap();
        prop_assert!((0.0..=1.0).contains(&dep.gamma));
        prop_assert!(dep.dep.weights.iter().all(|w| *w > 0.0));
    }
}
