use alloc::vec::Vec;

use super::cloud::PointCloud;
use crate::error::{invalid, Error, Result};

/// Delay-coordinate embedding: point `i` is
/// `(x[i], x[i + lag], ..., x[i + (embed_dim - 1) * lag])`.
pub fn delay_embed(series: &[f64], embed_dim: usize, lag: usize) -> Result<PointCloud> {
    if embed_dim == 0 || lag == 0 {
        return Err(invalid!("embed_dim and lag must be at least 1"));
    }
    let span = (embed_dim - 1) * lag;
    let required = span + 1;
    if series.len() < required {
        return Err(Error::SeriesTooShort {
            len: series.len(),
            required,
        });
    }
    let count = series.len() - span;
    let mut coords = Vec::with_capacity(count * embed_dim);
    for i in 0..count {
        coords.extend((0..embed_dim).map(|d| series[i + d * lag]));
    }
    PointCloud::from_flat(embed_dim, coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_example() {
        let c = delay_embed(&[1.0, 2.0, 3.0, 4.0, 5.0], 2, 1).unwrap();
        let pts: Vec<Vec<f64>> = c.points().map(|p| p.to_vec()).collect();
        assert_eq!(pts, vec![vec![1.0, 2.0], vec![2.0, 3.0], vec![3.0, 4.0], vec![4.0, 5.0]]);
    }

    #[test]
    fn dim_one_is_identity() {
        let s = [0.5, -1.0, 2.0];
        let c = delay_embed(&s, 1, 7).unwrap();
        assert_eq!(c.coords(), &s);
    }

    #[test]
    fn too_short_reports_minimum() {
        assert_eq!(
            delay_embed(&[1.0; 4], 3, 2),
            Err(Error::SeriesTooShort { len: 4, required: 5 })
        );
        assert!(delay_embed(&[1.0], 0, 1).is_err());
    }
}
