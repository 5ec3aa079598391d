//! Finite, downward-closed sets of exponent vectors in `N^d`.

use serde::{Deserialize, Serialize};

/// A downward-closed region of `N^d`, used both as the truncation shape of a
/// series and as the iteration domain of sweeps. Points are always visited in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridRegion {
    /// `0 <= n_j <= caps[j]` for every coordinate.
    Box(Vec<u64>),
    /// `n_1 + ... + n_dim <= total`.
    Simplex { dim: usize, total: u64 },
}

impl GridRegion {
    pub fn cube(dim: usize, cap: u64) -> Self {
        GridRegion::Box(vec![cap; dim])
    }

    pub fn dim(&self) -> usize {
        match self {
            GridRegion::Box(caps) => caps.len(),
            GridRegion::Simplex { dim, .. } => *dim,
        }
    }

    pub fn contains(&self, n: &[u64]) -> bool {
        if n.len() != self.dim() {
            return false;
        }
        match self {
            GridRegion::Box(caps) => n.iter().zip(caps).all(|(a, c)| a <= c),
            GridRegion::Simplex { total, .. } => n.iter().sum::<u64>() <= *total,
        }
    }

    /// Largest admissible value of coordinate `level` once the coordinates
    /// before it are fixed to `prefix` (and the ones after it are zero).
    pub fn upper(&self, level: usize, prefix: &[u64]) -> u64 {
        match self {
            GridRegion::Box(caps) => caps[level],
            GridRegion::Simplex { total, .. } => total.saturating_sub(prefix.iter().sum()),
        }
    }

    /// All points in lexicographic order.
    pub fn points(&self) -> Vec<Vec<u64>> {
        let d = self.dim();
        let mut out = Vec::new();
        if d == 0 {
            return out;
        }
        let mut point = vec![0u64; d];
        self.collect(0, &mut point, &mut out);
        out
    }

    fn collect(&self, level: usize, point: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let hi = self.upper(level, &point[..level]);
        for v in 0..=hi {
            point[level] = v;
            if level + 1 == point.len() {
                out.push(point.clone());
            } else {
                self.collect(level + 1, point, out);
            }
        }
        point[level] = 0;
    }
}
