mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use common::{random_orthogonal, random_subspace, rng, sized_diagram};
use nalgebra::DMatrix;
use proptest::prelude::*;
use pts_core::grassmann::{
    chordal_distance, geodesic_distance, gram_matrix, min_eigenvalue, normalized_geodesic, principal_angles,
    projection_kernel, rbf_kernel, GrassmannPoint, RbfForm, SubspaceKernel,
};
use pts_core::pts::{fit_scaling, pts_embed_transformed, transform_axes, PtsConfig};

fn span(n: usize, cols: &[&[f64]]) -> GrassmannPoint {
    let m = DMatrix::from_fn(n, cols.len(), |i, j| cols[j][i]);
    GrassmannPoint::from_span(&m, 0).unwrap()
}

#[test]
fn principal_angle_examples() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let e1 = span(3, &[&[1.0, 0.0, 0.0]]);
    let e2 = span(3, &[&[0.0, 1.0, 0.0]]);
    let diag = span(3, &[&[s, s, 0.0]]);
    assert!(principal_angles(&e1, &e1).unwrap().max().abs() <= 1e-9);
    assert!((principal_angles(&e1, &diag).unwrap().max() - FRAC_PI_4).abs() <= 1e-9);
    assert!((principal_angles(&e1, &e2).unwrap().max() - FRAC_PI_2).abs() <= 1e-9);
}

#[test]
fn triangle_inequality_on_random_planes() {
    let mut r = rng(21);
    for _ in 0..10_000 {
        let x = random_subspace(&mut r, 25, 2);
        let y = random_subspace(&mut r, 25, 2);
        let z = random_subspace(&mut r, 25, 2);
        for f in [geodesic_distance, chordal_distance] {
            let (xy, yz, xz) = (f(&x, &y).unwrap(), f(&y, &z).unwrap(), f(&x, &z).unwrap());
            assert!(xz <= xy + yz + 1e-9);
            assert!((xy - f(&y, &x).unwrap()).abs() <= 1e-9);
            assert!(f(&x, &x).unwrap() <= 1e-9);
        }
    }
}

#[test]
fn projection_kernel_complements_chordal_distance() {
    let mut r = rng(22);
    for p in 1..=6 {
        for _ in 0..200 {
            let x = random_subspace(&mut r, 30, p);
            let y = random_subspace(&mut r, 30, p);
            let d = chordal_distance(&x, &y).unwrap();
            assert!((d * d + projection_kernel(&x, &y).unwrap() - p as f64).abs() <= 1e-9);
        }
    }
}

#[test]
fn distances_ignore_the_choice_of_basis() {
    let mut r = rng(23);
    for p in [1, 2, 5] {
        for _ in 0..100 {
            let x = random_subspace(&mut r, 40, p);
            let y = random_subspace(&mut r, 40, p);
            let xq = x.rotated(&random_orthogonal(&mut r, p)).unwrap();
            assert!(geodesic_distance(&x, &xq).unwrap() <= 1e-9);
            assert!(chordal_distance(&x, &xq).unwrap() <= 1e-9);
            assert!((geodesic_distance(&x, &y).unwrap() - geodesic_distance(&xq, &y).unwrap()).abs() <= 1e-9);
            assert!((chordal_distance(&x, &y).unwrap() - chordal_distance(&xq, &y).unwrap()).abs() <= 1e-9);
        }
    }
}

#[test]
fn projection_gram_of_embeddings_is_psd() {
    let mut r = rng(24);
    let cfg = PtsConfig { sigma: 0.05, grid_k: 20, perturb_m: 10, subspace_p: 4, ..PtsConfig::default() };
    let transformed: Vec<_> = (0..50).map(|_| transform_axes(&sized_diagram(&mut r, 1..=8))).collect();
    let scaling = fit_scaling(&transformed, cfg.margin).unwrap();
    let emb: Vec<_> = transformed.iter().map(|t| pts_embed_transformed(t, &cfg, &scaling).unwrap()).collect();
    let g = gram_matrix(&emb, SubspaceKernel::Projection).unwrap();
    assert!(min_eigenvalue(&g) >= -1e-8);
    for i in 0..emb.len() {
        for j in 0..emb.len() {
            assert_eq!(g[(i, j)], g[(j, i)]);
        }
    }
}

#[test]
fn normalized_geodesic_stays_in_unit_interval() {
    let mut r = rng(25);
    for _ in 0..500 {
        let x = random_subspace(&mut r, 12, 3);
        let y = random_subspace(&mut r, 12, 3);
        let d = normalized_geodesic(&x, &y).unwrap();
        assert!((0.0..=1.0).contains(&d));
    }
    // orthogonal subspaces hit the maximum
    let a = span(4, &[&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]]);
    let b = span(4, &[&[0.0, 0.0, 1.0, 0.0], &[0.0, 0.0, 0.0, 1.0]]);
    assert!((normalized_geodesic(&a, &b).unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn nearly_identical_subspaces_resolve_small_angles() {
    let mut r = rng(26);
    let x = random_subspace(&mut r, 20, 3);
    for eps in [1e-4, 1e-6, 1e-8] {
        let pert = x.basis() + DMatrix::from_fn(20, 3, |i, j| if (i + j) % 3 == 0 { eps } else { 0.0 });
        let y = GrassmannPoint::from_span(&pert, 0).unwrap();
        let d = geodesic_distance(&x, &y).unwrap();
        let c = chordal_distance(&x, &y).unwrap();
        // sin(theta) ~ theta for small angles, so the two distances agree
        assert!(d > 0.0 && (d - c).abs() <= 1e-3 * d, "eps {eps}: {d} vs {c}");
    }
}

#[test]
fn rbf_forms() {
    let mut r = rng(27);
    let x = random_subspace(&mut r, 10, 2);
    let y = random_subspace(&mut r, 10, 2);
    let kp = projection_kernel(&x, &y).unwrap();
    let d = chordal_distance(&x, &y).unwrap();
    assert!((rbf_kernel(&x, &y, 1.0, RbfForm::Projection).unwrap() - (-kp).exp()).abs() <= 1e-12);
    assert!((rbf_kernel(&x, &y, 0.5, RbfForm::Conventional).unwrap() - (-0.5 * d * d).exp()).abs() <= 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn angles_are_clamped_and_sorted(seed in any::<u64>(), n in 3usize..30, p in 1usize..3) {
        let mut r = rng(seed);
        let x = random_subspace(&mut r, n, p);
        let y = random_subspace(&mut r, n, p);
        let a = principal_angles(&x, &y).unwrap();
        prop_assert!(a.angles().iter().all(|t| (0.0..=FRAC_PI_2).contains(t)));
        prop_assert!(a.angles().windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(a.cosines().iter().all(|c| (0.0..=1.0).contains(c)));
    }
}
