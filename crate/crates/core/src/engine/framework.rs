use rand::Rng;
use serde::{Deserialize, Serialize};

use super::EngineError;
use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::scalar::Field;

/// Integer coordinates for each vertex, `coords[u * d + i]` is axis `i` of
/// vertex `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Framework {
    v: usize,
    d: usize,
    coords: Vec<i64>,
}

impl Framework {
    pub fn new(v: usize, d: usize, coords: Vec<i64>) -> Self {
        assert_eq!(coords.len(), v * d, "need v * d coordinates");
        Framework { v, d, coords }
    }

    /// Coordinates uniform on `[1, bound]`.
    pub fn random<R: Rng + ?Sized>(v: usize, d: usize, bound: u64, rng: &mut R) -> Self {
        let coords = (0..v * d)
            .map(|_| rng.random_range(1..=bound) as i64)
            .collect();
        Framework { v, d, coords }
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn point(&self, u: usize) -> &[i64] {
        &self.coords[u * self.d..(u + 1) * self.d]
    }

    /// Column of axis `i` across all vertices, mapped into `field`.
    pub fn axis<F: Field>(&self, field: &F, i: usize) -> Vec<F::Elem> {
        (0..self.v)
            .map(|u| field.integer(self.coords[u * self.d + i]))
            .collect()
    }

    pub(crate) fn check_shape(&self, g: &Graph, d: usize) -> Result<(), EngineError> {
        if self.v != g.vertex_count() || self.d != d {
            return Err(EngineError::FrameworkShape {
                want: g.vertex_count(),
                want_dim: d,
                got: self.v,
                got_dim: self.d,
            });
        }
        Ok(())
    }
}

/// The `e x vd` rigidity matrix, halved Jacobian of the squared edge lengths.
/// Row `k` belongs to the `k`-th canonical edge `(u, w)` and carries
/// `p(u) - p(w)` in `u`'s columns and `p(w) - p(u)` in `w`'s.
pub fn rigidity_matrix<F: Field>(
    field: &F,
    g: &Graph,
    f: &Framework,
) -> Result<Matrix<F>, EngineError> {
    f.check_shape(g, f.dim())?;
    let d = f.dim();
    let mut m = Matrix::zeros(field.clone(), g.edge_count(), g.vertex_count() * d);
    for (row, &(u, w)) in g.edges().iter().enumerate() {
        for i in 0..d {
            let diff = f.point(u)[i] - f.point(w)[i];
            m[(row, u * d + i)] = field.integer(diff);
            m[(row, w * d + i)] = field.integer(-diff);
        }
    }
    Ok(m)
}
