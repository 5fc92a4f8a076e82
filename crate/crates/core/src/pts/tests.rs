use alloc::vec;
use alloc::vec::Vec;
use nalgebra::DMatrix;

use super::*;
use crate::diagram::PersistenceDiagram;
use crate::error::Error;
use crate::grassmann::{geodesic_distance, orthonormality_error, principal_angles};

fn diagram() -> PersistenceDiagram {
    PersistenceDiagram::from_pairs(&[(0.1, 0.9), (0.2, 0.5), (0.4, 0.6), (0.3, 1.2)], 1).unwrap()
}

fn cfg() -> PtsConfig {
    PtsConfig { sigma: 0.05, grid_k: 20, perturb_m: 12, perturb_r: 0.02, subspace_p: 4, seed: 5, ..Default::default() }
}

fn scaling_for(pd: &PersistenceDiagram) -> Scaling {
    fit_scaling(&[transform_axes(pd)], 0.1).unwrap()
}

#[test]
fn zero_radius_rank_one() {
    let pd = diagram();
    let s = scaling_for(&pd);
    let c = PtsConfig { perturb_r: 0.0, subspace_p: 1, ..cfg() };
    let g = pts_embed(&pd, &c, &s).unwrap();
    let surf = kde_surface(&transform_axes(&pd), &c, &s).unwrap();
    let norm = libm::sqrt(surf.values().iter().map(|v| v * v).sum::<f64>());
    for (b, v) in g.basis().iter().zip(surf.values()) {
        assert!((b.abs() - v / norm).abs() < 1e-10);
    }
    let c2 = PtsConfig { subspace_p: 2, ..c };
    assert_eq!(pts_embed(&pd, &c2, &s), Err(Error::RankDeficient { requested: 2, rank: 1 }));
}

#[test]
fn embedding_is_orthonormal_and_deterministic() {
    let pd = diagram();
    let s = scaling_for(&pd);
    let a = pts_embed(&pd, &cfg(), &s).unwrap();
    let b = pts_embed(&pd, &cfg(), &s).unwrap();
    assert!(orthonormality_error(a.basis()) <= 1e-8);
    assert_eq!(a.basis().as_slice(), b.basis().as_slice());
    assert_eq!(a.dim(), 4);
    assert_eq!(a.ambient_dim(), 400);
}

#[test]
fn basis_rotation_is_the_same_point() {
    let pd = diagram();
    let a = pts_embed(&pd, &cfg(), &scaling_for(&pd)).unwrap();
    let th: f64 = 0.7;
    let mut q = DMatrix::identity(4, 4);
    q[(0, 0)] = libm::cos(th);
    q[(0, 2)] = -libm::sin(th);
    q[(2, 0)] = libm::sin(th);
    q[(2, 2)] = libm::cos(th);
    let r = a.rotated(&q).unwrap();
    assert!(geodesic_distance(&a, &r).unwrap() <= 1e-7);
}

#[test]
fn multiscale_stacks_every_bandwidth() {
    let pd = diagram();
    let s = scaling_for(&pd);
    let c = PtsConfig { sigma_list: Some(vec![0.03, 0.08]), subspace_p: 6, ..cfg() };
    let stack = surface_stack(&transform_axes(&pd), &c, &s).unwrap();
    assert_eq!(stack.ncols(), 26);
    pts_embed(&pd, &c, &s).unwrap();
}

#[test]
fn empty_diagram_rejected() {
    let pd = PersistenceDiagram::empty(1.0);
    assert!(pts_embed(&pd, &cfg(), &Scaling::UNIT).is_err());
}

fn gaussian_surface(k: usize, sigma: f64, mu: [f64; 2]) -> PersistenceSurface {
    kde_surface_with(&TransformedDiagram { points: vec![mu] }, sigma, k, &Scaling::UNIT).unwrap()
}

#[test]
fn isotropic_gaussian_gradients_are_orthogonal() {
    let s = gaussian_surface(40, 0.08, [0.5, 0.5]);
    let (dx, dy) = surface_gradients(&s);
    let dot: f64 = dx.iter().zip(&dy).map(|(a, b)| a * b).sum();
    let nx: f64 = dx.iter().map(|a| a * a).sum();
    assert!(dot.abs() < 1e-12 * nx);
}

#[test]
fn finite_differences_match_closed_form() {
    // d/dx of the normalized sampled Gaussian is -(x - mu)/sigma^2 * rho.
    let k = 50;
    for cells in [3.0, 4.0, 6.0] {
        let sigma = cells / k as f64;
        let mu = [0.5, 0.47];
        let s = gaussian_surface(k, sigma, mu);
        let (dx, dy) = surface_gradients(&s);
        let mut err = 0.0;
        let mut norm = 0.0;
        for i in 0..k {
            for j in 0..k {
                let rho = s.get(i, j);
                let ex = -(s.center(i) - mu[0]) / (sigma * sigma) * rho;
                let ey = -(s.center(j) - mu[1]) / (sigma * sigma) * rho;
                err += (dx[i * k + j] - ex).powi(2) + (dy[i * k + j] - ey).powi(2);
                norm += ex * ex + ey * ey;
            }
        }
        let rel = libm::sqrt(err / norm);
        assert!(rel < 1e-3, "sigma = {cells} cells: relative error {rel}");
    }
}

#[test]
fn tangent_dimensions_and_rank_errors() {
    let s = gaussian_surface(30, 0.07, [0.4, 0.6]);
    assert_eq!(analytic_tangent_subspace(&s, PerturbationModel::Translation).unwrap().dim(), 2);
    assert_eq!(analytic_tangent_subspace(&s, PerturbationModel::Affine).unwrap().dim(), 6);
    let flat = PersistenceSurface::new(10, vec![0.01; 100]).unwrap();
    assert_eq!(
        analytic_tangent_subspace(&flat, PerturbationModel::Translation),
        Err(Error::RankDeficient { requested: 2, rank: 0 })
    );
}

#[test]
fn small_shifts_span_the_translation_subspace() {
    let k = 40;
    let pd = PersistenceDiagram::from_pairs(&[(0.25, 0.75)], 1).unwrap();
    let s = Scaling::UNIT;
    let c = PtsConfig { sigma: 0.1, grid_k: k, perturb_m: 30, perturb_r: 0.5 / k as f64, subspace_p: 2, seed: 1, ..Default::default() };
    let surf = kde_surface(&transform_axes(&pd), &c, &s).unwrap();
    let analytic = analytic_tangent_subspace(&surf, PerturbationModel::Translation).unwrap();
    let empirical = perturbation_tangent_embed(&pd, &c, &s).unwrap();
    let angles = principal_angles(&analytic, &empirical).unwrap();
    assert!(angles.max() < 0.2, "{:?}", angles);
    // the raw stack spans rho plus the tangent plane
    let raw = pts_embed(&pd, &PtsConfig { subspace_p: 3, ..c }, &s).unwrap();
    assert!(principal_angles(&analytic, &raw).unwrap().max() < 0.2);
}

#[test]
fn aggregation_identities() {
    let pd = diagram();
    let a = pts_embed(&pd, &cfg(), &scaling_for(&pd)).unwrap();
    let one = aggregate_embeddings(core::slice::from_ref(&a), 4, 4).unwrap();
    assert!(principal_angles(&a, &one).unwrap().max() < 1e-8);
    let two = aggregate_embeddings(&[a.clone(), a.clone()], 4, 4).unwrap();
    assert!(principal_angles(&a, &two).unwrap().max() < 1e-8);
    assert!(orthonormality_error(two.basis()) <= 1e-8);
    assert!(aggregate_embeddings(std::slice::from_ref(&a), 5, 4).is_err());
    assert!(aggregate_embeddings(std::slice::from_ref(&a), 2, 3).is_err());
    let other = crate::grassmann::GrassmannPoint::from_span(&DMatrix::identity(9, 4), 3).unwrap();
    assert!(matches!(aggregate_embeddings(&[a, other], 2, 2), Err(Error::DimensionMismatch(400, 9))));
}

#[test]
fn structure_tensor_eigenvalue_positive_for_gaussian() {
    let s = gaussian_surface(30, 0.07, [0.4, 0.6]);
    let l = structure_tensor_min_eigenvalue(&s);
    let (dx, dy) = surface_gradients(&s);
    let m = DMatrix::from_fn(dx.len(), 2, |r, c| if c == 0 { dx[r] } else { dy[r] });
    let brute = crate::grassmann::min_eigenvalue(&m.tr_mul(&m));
    assert!(l > 0.0);
    assert!((l - brute).abs() <= 1e-9 * brute);
    let _: Vec<f64> = Vec::new();
}
