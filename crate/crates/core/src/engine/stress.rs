use rand::Rng;

use super::{constants, rigidity_matrix, Framework, Rejection};
use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::scalar::Field;

/// Per-edge weights in canonical edge order.
#[derive(Debug, Clone, PartialEq)]
pub struct StressVector<F: Field> {
    pub field: F,
    pub weights: Vec<F::Elem>,
}

/// The `v x v` matrix of a stress: `-w(uv)` off the diagonal on edges, row
/// sums zero.
#[derive(Debug, Clone, PartialEq)]
pub struct StressMatrix<F: Field> {
    pub matrix: Matrix<F>,
}

impl<F: Field> StressMatrix<F> {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn kernel_dim(&self) -> usize {
        self.matrix.cols() - self.rank()
    }
}

pub fn stress_matrix_from_vector<F: Field>(g: &Graph, omega: &StressVector<F>) -> StressMatrix<F> {
    let field = &omega.field;
    let mut m = Matrix::zeros(field.clone(), g.vertex_count(), g.vertex_count());
    for (&(u, w), x) in g.edges().iter().zip(&omega.weights) {
        m[(u, w)] = field.neg(x);
        m[(w, u)] = field.neg(x);
        m[(u, u)] = field.add(&m[(u, u)], x);
        m[(w, w)] = field.add(&m[(w, w)], x);
    }
    StressMatrix { matrix: m }
}

/// One stress drawn by the extended-system construction, with the ranks
/// observed along the way.
#[derive(Debug, Clone)]
pub struct StressSample<F: Field> {
    pub vector: StressVector<F>,
    pub matrix: StressMatrix<F>,
    pub rigidity_rank: usize,
    pub extended_rank: usize,
}

/// Draws a stress by solving `E w = b`, where `E` is the transposed rigidity
/// matrix with `e - t` random rows (entries in `[1, sample_bound]`) stacked
/// below it and `b` is zero except for a one at the first random row.
///
/// `E` has `vd + e - t` rows; only its column rank matters. A column rank
/// below `e` rejects the round.
pub fn stress_sample<F: Field, R: Rng + ?Sized>(
    field: &F,
    g: &Graph,
    fw: &Framework,
    sample_bound: u64,
    rng: &mut R,
) -> Result<StressSample<F>, Rejection> {
    let (v, d, e) = (g.vertex_count(), fw.dim(), g.edge_count());
    let (t, _) = constants(v, d).map_err(|_| Rejection::SmallGraph { v, d })?;
    if e < t {
        return Err(Rejection::TooFewEdges { e, t });
    }
    let rig = rigidity_matrix(field, g, fw).expect("framework sized for graph");
    let rigidity_rank = rig.rank();
    if rigidity_rank < t {
        return Err(Rejection::RigidityRank {
            rank: rigidity_rank,
            t,
        });
    }

    let extra = e - t;
    let h_entries: Vec<i64> = (0..extra * e)
        .map(|_| rng.random_range(1..=sample_bound) as i64)
        .collect();
    let h = Matrix::from_i64(field.clone(), extra, e, &h_entries);
    let ext = rig.transpose().vstack(&h).expect("both have e columns");
    let extended_rank = ext.rank();
    if extended_rank < e {
        return Err(Rejection::ExtendedRank {
            rank: extended_rank,
            e,
        });
    }

    let mut b = vec![field.zero(); ext.rows()];
    if extra > 0 {
        b[v * d] = field.one();
    }
    let weights = ext.solve(&b).map_err(|_| Rejection::ExtendedRank {
        rank: extended_rank,
        e,
    })?;
    let vector = StressVector {
        field: field.clone(),
        weights,
    };
    let matrix = stress_matrix_from_vector(g, &vector);
    Ok(StressSample {
        vector,
        matrix,
        rigidity_rank,
        extended_rank,
    })
}

/// A basis of the stress space (kernel of the transposed rigidity matrix),
/// each element converted to its stress matrix. Rejects frameworks whose
/// rigidity matrix rank is below `t`.
pub fn stress_basis<F: Field>(
    field: &F,
    g: &Graph,
    fw: &Framework,
) -> Result<Vec<StressMatrix<F>>, Rejection> {
    let (v, d) = (g.vertex_count(), fw.dim());
    let (t, _) = constants(v, d).map_err(|_| Rejection::SmallGraph { v, d })?;
    let rig = rigidity_matrix(field, g, fw).expect("framework sized for graph");
    let rank = rig.rank();
    if rank < t {
        return Err(Rejection::RigidityRank { rank, t });
    }
    Ok(rig
        .transpose()
        .kernel_vectors()
        .into_iter()
        .map(|weights| {
            stress_matrix_from_vector(
                g,
                &StressVector {
                    field: field.clone(),
                    weights,
                },
            )
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StressViolation {
    #[error("not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("nonzero entry at non-edge ({0}, {1})")]
    NonEdge(usize, usize),
    #[error("row {0} does not sum to zero")]
    RowSum(usize),
    #[error("not in equilibrium along axis {0}")]
    Equilibrium(usize),
    #[error("weights do not annihilate the rigidity matrix")]
    Annihilator,
    #[error("wrong shape")]
    Shape,
}

/// Checks symmetry, zeros on non-edges, zero row sums and `Omega * p_i = 0`
/// for every coordinate axis.
pub fn verify_stress_matrix<F: Field>(
    g: &Graph,
    fw: &Framework,
    omega: &StressMatrix<F>,
) -> Result<(), StressViolation> {
    let m = &omega.matrix;
    let f = m.field();
    let v = g.vertex_count();
    if m.shape() != (v, v) || fw.vertex_count() != v {
        return Err(StressViolation::Shape);
    }
    for u in 0..v {
        for w in 0..v {
            if m[(u, w)] != m[(w, u)] {
                return Err(StressViolation::Asymmetric(u, w));
            }
            if u != w && !g.has_edge(u, w) && !f.is_zero(&m[(u, w)]) {
                return Err(StressViolation::NonEdge(u, w));
            }
        }
    }
    let ones = vec![f.one(); v];
    for (u, x) in m.mul_vec(&ones).expect("square").iter().enumerate() {
        if !f.is_zero(x) {
            return Err(StressViolation::RowSum(u));
        }
    }
    for i in 0..fw.dim() {
        let col = fw.axis(f, i);
        if m.mul_vec(&col)
            .expect("square")
            .iter()
            .any(|x| !f.is_zero(x))
        {
            return Err(StressViolation::Equilibrium(i));
        }
    }
    Ok(())
}

/// Checks that the transposed rigidity matrix annihilates the weights.
pub fn verify_stress_vector<F: Field>(
    g: &Graph,
    fw: &Framework,
    omega: &StressVector<F>,
) -> Result<(), StressViolation> {
    let f = &omega.field;
    if omega.weights.len() != g.edge_count() {
        return Err(StressViolation::Shape);
    }
    let rig = rigidity_matrix(f, g, fw).map_err(|_| StressViolation::Shape)?;
    let r = rig.transpose().mul_vec(&omega.weights).expect("e columns");
    if r.iter().any(|x| !f.is_zero(x)) {
        return Err(StressViolation::Annihilator);
    }
    Ok(())
}
