use alloc::vec::Vec;
use rand::Rng;

use super::config::PtsConfig;
use super::scaling::{Scaling, TransformedDiagram};
use crate::seed;

/// `cfg.perturb_m` randomly displaced copies of `pd`.
///
/// Copy `j` moves every point by an independent uniform draw from
/// `[-r, r]^2` in normalized units, scaled back through `scaling`, then
/// clamps the lifetime at zero. Copy `j` draws from its own stream seeded
/// by `(cfg.seed, j)`, so copies can be generated in any order.
pub fn perturb(pd: &TransformedDiagram, cfg: &PtsConfig, scaling: &Scaling) -> Vec<TransformedDiagram> {
    (0..cfg.perturb_m).map(|j| perturb_copy(pd, cfg, scaling, j)).collect()
}

pub fn perturb_copy(pd: &TransformedDiagram, cfg: &PtsConfig, scaling: &Scaling, copy: usize) -> TransformedDiagram {
    let r = cfg.perturb_r;
    if r == 0.0 {
        return pd.clone();
    }
    let ext = scaling.extent();
    let mut rng = seed::rng(cfg.seed, &[copy as u64]);
    let points = pd
        .points
        .iter()
        .map(|p| {
            let du: f64 = rng.random_range(-r..=r);
            let dv: f64 = rng.random_range(-r..=r);
            [p[0] + du * ext[0], (p[1] + dv * ext[1]).max(0.0)]
        })
        .collect();
    TransformedDiagram { points }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TransformedDiagram {
        TransformedDiagram { points: alloc::vec![[0.5, 0.0], [0.2, 0.7], [0.9, 0.01]] }
    }

    #[test]
    fn zero_radius_copies_input() {
        let cfg = PtsConfig { perturb_r: 0.0, perturb_m: 5, ..Default::default() };
        let out = perturb(&sample(), &cfg, &Scaling::UNIT);
        assert_eq!(out.len(), 5);
        assert!(out.iter().all(|c| *c == sample()));
    }

    #[test]
    fn deterministic_and_bounded() {
        let cfg = PtsConfig { perturb_r: 0.1, perturb_m: 20, seed: 9, ..Default::default() };
        let s = Scaling::new([0.0, 0.0], [2.0, 4.0]).unwrap();
        let a = perturb(&sample(), &cfg, &s);
        let b = perturb(&sample(), &cfg, &s);
        assert_eq!(a, b);
        for copy in &a {
            assert_eq!(copy.len(), 3);
            for (p, q) in copy.points.iter().zip(&sample().points) {
                assert!(p[1] >= 0.0);
                assert!((p[0] - q[0]).abs() <= 0.1 * 2.0 + 1e-12);
                assert!(p[1] - q[1] <= 0.1 * 4.0 + 1e-12);
            }
        }
        let other = perturb(&sample(), &PtsConfig { seed: 10, ..cfg.clone() }, &s);
        assert_ne!(a, other);
    }
}
