//! Persistence diagrams.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// One persistence pair. `essential` marks a class that never died inside
/// the filtration range; its `death` is the diagram's cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PersistencePoint {
    pub birth: f64,
    pub death: f64,
    pub dim: u32,
    pub essential: bool,
}

impl PersistencePoint {
    pub fn new(birth: f64, death: f64, dim: u32) -> Self {
        Self {
            birth,
            death,
            dim,
            essential: false,
        }
    }

    pub fn essential(birth: f64, cap: f64, dim: u32) -> Self {
        Self {
            birth,
            death: cap,
            dim,
            essential: true,
        }
    }

    /// `|death - birth|`.
    pub fn lifetime(&self) -> f64 {
        (self.death - self.birth).abs()
    }
}

/// A multiset of persistence pairs sharing one truncation cap.
///
/// Diagrams produced from sublevel filtrations (Vietoris-Rips, sublevel
/// scalar fields) satisfy `birth <= death`. Superlevel scalar-field diagrams
/// keep raw function values and therefore have `birth >= death`; every
/// consumer works with `lifetime()` so both orientations are handled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pub points: Vec<PersistencePoint>,
    pub cap: f64,
}

impl PersistenceDiagram {
    pub fn new(points: Vec<PersistencePoint>, cap: f64) -> Result<Self> {
        if !cap.is_finite() {
            return Err(invalid!("diagram cap must be finite, got {cap}"));
        }
        for (i, p) in points.iter().enumerate() {
            if !p.birth.is_finite() || !p.death.is_finite() {
                return Err(invalid!("point {i} has non-finite coordinates"));
            }
            if p.essential && p.death != cap {
                return Err(invalid!(
                    "essential point {i} has death {} but cap is {cap}",
                    p.death
                ));
            }
        }
        Ok(Self { points, cap })
    }

    /// Builds a diagram of finite (non-essential) `(birth, death)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)], dim: u32) -> Result<Self> {
        let cap = pairs
            .iter()
            .map(|&(b, d)| if b > d { b } else { d })
            .fold(0.0_f64, f64::max);
        let points = pairs
            .iter()
            .map(|&(b, d)| PersistencePoint::new(b, d, dim))
            .collect();
        Self::new(points, cap)
    }

    pub fn empty(cap: f64) -> Self {
        Self {
            points: Vec::new(),
            cap,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn finite(&self) -> impl Iterator<Item = &PersistencePoint> {
        self.points.iter().filter(|p| !p.essential)
    }

    pub fn essentials(&self) -> impl Iterator<Item = &PersistencePoint> {
        self.points.iter().filter(|p| p.essential)
    }

    pub fn has_essential(&self) -> bool {
        self.points.iter().any(|p| p.essential)
    }

    /// True when every point satisfies `birth <= death`.
    pub fn is_sublevel_oriented(&self) -> bool {
        self.points.iter().all(|p| p.birth <= p.death)
    }

    /// Multiplies every birth, death and the cap by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|p| PersistencePoint {
                    birth: p.birth * c,
                    death: p.death * c,
                    ..*p
                })
                .collect(),
            cap: self.cap * c,
        }
    }

    /// Finite points with lifetime strictly above `min_lifetime`, sorted by
    /// decreasing lifetime.
    pub fn lifetimes_desc(&self) -> Vec<f64> {
        let mut l: Vec<f64> = self.finite().map(|p| p.lifetime()).collect();
        l.sort_by(|a, b| b.total_cmp(a));
        l
    }

    /// Sorts points by `(dim, birth, death, essential)` for canonical output.
    pub fn sort(&mut self) {
        self.points.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.total_cmp(&b.birth))
                .then(a.death.total_cmp(&b.death))
                .then(a.essential.cmp(&b.essential))
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifetime_is_absolute() {
        assert_eq!(PersistencePoint::new(3.0, 1.0, 0).lifetime(), 2.0);
        assert_eq!(PersistencePoint::new(1.0, 3.0, 0).lifetime(), 2.0);
    }

    #[test]
    fn rejects_non_finite_and_bad_essential() {
        assert!(PersistenceDiagram::new(alloc::vec![PersistencePoint::new(0.0, f64::NAN, 0)], 1.0).is_err());
        assert!(PersistenceDiagram::new(alloc::vec![PersistencePoint::essential(0.0, 2.0, 0)], 1.0).is_err());
        assert!(PersistenceDiagram::new(alloc::vec![], f64::INFINITY).is_err());
    }

    #[test]
    fn scaling_scales_everything() {
        let d = PersistenceDiagram::new(
            alloc::vec![PersistencePoint::new(1.0, 2.0, 1), PersistencePoint::essential(0.0, 5.0, 0)],
            5.0,
        )
        .unwrap();
        let s = d.scaled(2.0);
        assert_eq!(s.cap, 10.0);
        assert_eq!(s.points[0].death, 4.0);
        assert_eq!(s.points[1].death, 10.0);
    }
}
