use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::diagram::PersistenceDiagram;
use crate::error::{invalid, Error, Result};

/// A diagram in `(mean, lifetime)` coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformedDiagram {
    pub points: Vec<[f64; 2]>,
}

impl TransformedDiagram {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `(b, d) -> ((b + d) / 2, |d - b|)` for every point, essential ones included.
pub fn transform_axes(pd: &PersistenceDiagram) -> TransformedDiagram {
    TransformedDiagram {
        points: pd
            .points
            .iter()
            .map(|p| [(p.birth + p.death) / 2.0, p.lifetime()])
            .collect(),
    }
}

/// Axis-aligned box mapped linearly onto `[0, 1]^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scaling {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
}

impl Scaling {
    pub const UNIT: Scaling = Scaling { lo: [0.0, 0.0], hi: [1.0, 1.0] };

    pub fn new(lo: [f64; 2], hi: [f64; 2]) -> Result<Self> {
        for a in 0..2 {
            if !(hi[a] > lo[a]) || !lo[a].is_finite() || !hi[a].is_finite() {
                return Err(invalid!("degenerate scaling box on axis {a}: [{}, {}]", lo[a], hi[a]));
            }
        }
        Ok(Self { lo, hi })
    }

    pub fn extent(&self) -> [f64; 2] {
        [self.hi[0] - self.lo[0], self.hi[1] - self.lo[1]]
    }

    pub fn to_unit(&self, p: [f64; 2]) -> [f64; 2] {
        let e = self.extent();
        [(p[0] - self.lo[0]) / e[0], (p[1] - self.lo[1]) / e[1]]
    }

    pub fn from_unit(&self, u: [f64; 2]) -> [f64; 2] {
        let e = self.extent();
        [self.lo[0] + u[0] * e[0], self.lo[1] + u[1] * e[1]]
    }
}

/// Dataset-wide bounding box of transformed diagrams, widened by `margin`
/// times the extent on each side. An axis with zero extent gets a
/// unit-width box centred on the data before the margin is applied.
pub fn fit_scaling(pds: &[TransformedDiagram], margin: f64) -> Result<Scaling> {
    if !(0.0..0.5).contains(&margin) {
        return Err(invalid!("margin must lie in [0, 0.5), got {margin}"));
    }
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in pds.iter().flat_map(|d| &d.points) {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    if !lo[0].is_finite() {
        return Err(Error::Empty("all diagrams are empty"));
    }
    for a in 0..2 {
        if hi[a] - lo[a] <= 0.0 {
            let c = lo[a];
            lo[a] = c - 0.5;
            hi[a] = c + 0.5;
        }
        let pad = margin * (hi[a] - lo[a]);
        lo[a] -= pad;
        hi[a] += pad;
    }
    Scaling::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn td(points: &[[f64; 2]]) -> TransformedDiagram {
        TransformedDiagram { points: points.to_vec() }
    }

    #[test]
    fn axis_transform() {
        let pd = PersistenceDiagram::from_pairs(&[(0.0, 4.0), (1.0, 1.0), (2.0, 6.0)], 1).unwrap();
        assert_eq!(transform_axes(&pd).points, vec![[2.0, 4.0], [1.0, 0.0], [4.0, 4.0]]);
    }

    #[test]
    fn degenerate_box_falls_back_to_unit_width() {
        let s = fit_scaling(&[td(&[[2.0, 4.0]])], 0.0).unwrap();
        assert_eq!(s.lo, [1.5, 3.5]);
        assert_eq!(s.hi, [2.5, 4.5]);
    }

    #[test]
    fn box_over_several_diagrams() {
        let s = fit_scaling(&[td(&[[0.0, 0.0]]), td(&[[1.0, 1.0]])], 0.0).unwrap();
        assert_eq!(s, Scaling::UNIT);
        let s = fit_scaling(&[td(&[[0.0, 0.0], [10.0, 10.0]])], 0.05).unwrap();
        assert_eq!(s.lo, [-0.5, -0.5]);
        assert_eq!(s.hi, [10.5, 10.5]);
    }

    #[test]
    fn all_empty_is_an_error() {
        assert!(fit_scaling(&[td(&[]), td(&[])], 0.0).is_err());
        assert!(fit_scaling(&[], 0.0).is_err());
    }

    #[test]
    fn unit_round_trip() {
        let s = Scaling::new([-1.0, 2.0], [3.0, 4.0]).unwrap();
        let p = [0.7, 3.1];
        let q = s.from_unit(s.to_unit(p));
        assert!((p[0] - q[0]).abs() < 1e-15 && (p[1] - q[1]).abs() < 1e-15);
    }
}
