//! Stress-kernel diagnostics and the combinatorial necessary conditions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::local_with_tag;
use super::stress::{stress_basis, stress_sample, StressMatrix};
use super::{constants, Framework, Rejection};
use crate::config::TestConfig;
use crate::connectivity::vertex_connectivity_at_least;
use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::primes::PrimePool;
use crate::rng::{round_rng, tag};
use crate::scalar::{Field, PrimeField};

/// Smallest stress-kernel dimension seen across rounds, with the stress that
/// achieved it.
#[derive(Debug, Clone)]
pub struct KMin {
    pub k_min: usize,
    pub stress_rank: usize,
    pub accepted_rounds: u32,
    pub witness: StressMatrix<PrimeField>,
    pub framework: Framework,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSh {
    pub k_sh: usize,
    /// `vd - k_sh * d`.
    pub gauss_rank: usize,
    /// Dimension of the stress space, `e - t` at a generic framework.
    pub basis_dim: usize,
    pub accepted_rounds: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Hendrickson {
    pub connectivity_ok: bool,
    pub redundant_ok: bool,
}

struct Rounds {
    pool: PrimePool,
    bound: u64,
    s: usize,
}

fn global_rounds(g: &Graph, d: usize, cfg: &TestConfig) -> Result<Rounds, Rejection> {
    let (v, e) = (g.vertex_count(), g.edge_count());
    if v <= d + 1 {
        return Err(Rejection::SmallGraph { v, d });
    }
    let (t, s) = constants(v, d).expect("v > d + 1");
    if e < t {
        return Err(Rejection::TooFewEdges { e, t });
    }
    let bound = cfg.sample_bound.unwrap_or((4 * t).max(4 * v * e) as u64);
    Ok(Rounds {
        pool: PrimePool::build(4 * v * e, bound),
        bound,
        s,
    })
}

/// `v - rank(Omega)` for random-combination stresses, minimized over rounds.
/// Modular rank can only drop, so the largest observed rank is kept.
pub fn k_min_estimate(g: &Graph, d: usize, cfg: &TestConfig) -> Result<KMin, Rejection> {
    let setup = global_rounds(g, d, cfg)?;
    let v = g.vertex_count();
    let mut best: Option<KMin> = None;
    let mut accepted = 0;
    for round in 0..cfg.rounds {
        let mut rng = round_rng(cfg.seed, tag::K_MIN, round as u64);
        let field = PrimeField::new(setup.pool.choose(&mut rng)).expect("pool prime");
        let fw = Framework::random(v, d, setup.bound, &mut rng);
        let Ok(sample) = stress_sample(&field, g, &fw, setup.bound, &mut rng) else {
            continue;
        };
        accepted += 1;
        let rank = sample.matrix.rank();
        if best.as_ref().is_none_or(|b| rank > b.stress_rank) {
            best = Some(KMin {
                k_min: v - rank,
                stress_rank: rank,
                accepted_rounds: 0,
                witness: sample.matrix,
                framework: fw,
            });
        }
        if rank == setup.s {
            break;
        }
    }
    let mut best = best.ok_or(Rejection::AllRoundsRejected)?;
    best.accepted_rounds = accepted;
    Ok(best)
}

/// Shared stress nullity: `v` minus the rank of all basis stress matrices
/// stacked vertically, minimized over rounds.
pub fn k_sh_estimate(g: &Graph, d: usize, cfg: &TestConfig) -> Result<KSh, Rejection> {
    let setup = global_rounds(g, d, cfg)?;
    let v = g.vertex_count();
    let mut best: Option<(usize, usize)> = None;
    let mut accepted = 0;
    for round in 0..cfg.rounds {
        let mut rng = round_rng(cfg.seed, tag::K_SH, round as u64);
        let field = PrimeField::new(setup.pool.choose(&mut rng)).expect("pool prime");
        let fw = Framework::random(v, d, setup.bound, &mut rng);
        let Ok(basis) = stress_basis(&field, g, &fw) else {
            continue;
        };
        accepted += 1;
        let rank = stacked_rank(&field, v, &basis);
        if best.is_none_or(|(r, _)| rank > r) {
            best = Some((rank, basis.len()));
        }
        if rank == setup.s {
            break;
        }
    }
    let (rank, basis_dim) = best.ok_or(Rejection::AllRoundsRejected)?;
    let k_sh = v - rank;
    Ok(KSh {
        k_sh,
        gauss_rank: v * d - k_sh * d,
        basis_dim,
        accepted_rounds: accepted,
    })
}

fn stacked_rank<F: Field>(field: &F, v: usize, basis: &[StressMatrix<F>]) -> usize {
    basis
        .iter()
        .try_fold(Matrix::zeros(field.clone(), 0, v), |acc, s| {
            acc.vstack(&s.matrix)
        })
        .expect("all stress matrices are v x v")
        .rank()
}

/// Dimension of the span of the edge vectors
/// `<a, b>(uw) = (a(w) - a(u)) (b(w) - b(u))` over all pairs of stress-kernel
/// basis vectors `a`, `b`.
pub fn dot_space_dim<F: Field>(g: &Graph, omega: &StressMatrix<F>) -> usize {
    let f = omega.matrix.field();
    let kernel = omega.matrix.kernel_vectors();
    let e = g.edge_count();
    let mut rows = Vec::new();
    for (i, a) in kernel.iter().enumerate() {
        for b in &kernel[i..] {
            rows.extend(g.edges().iter().map(|&(u, w)| {
                let da = f.sub(&a[w], &a[u]);
                let db = f.sub(&b[w], &b[u]);
                f.mul(&da, &db)
            }));
        }
    }
    let n = rows.len() / e.max(1);
    if e == 0 || n == 0 {
        return 0;
    }
    Matrix::from_vec(f.clone(), n, e, rows).rank()
}

/// (d+1)-connectivity and redundant rigidity (local rigidity after deleting
/// any one edge).
pub fn check_hendrickson(g: &Graph, d: usize, cfg: &TestConfig) -> Hendrickson {
    let connectivity_ok = vertex_connectivity_at_least(g, d + 1);
    let redundant_ok = g.edges().par_iter().enumerate().all(|(j, &(u, w))| {
        let h = g.delete_edge(u, w).expect("edge from g");
        local_with_tag(&h, d, cfg, tag::REDUNDANT + j as u64)
            .verdict
            .is_yes()
    });
    Hendrickson {
        connectivity_ok,
        redundant_ok,
    }
}

/// On the line, generic global rigidity is exactly 2-connectivity.
pub fn check_dimension_one(g: &Graph) -> bool {
    vertex_connectivity_at_least(g, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, generate, Family};

    fn cfg(d: usize) -> TestConfig {
        TestConfig::new(d).with_seed(3)
    }

    #[test]
    fn k4_in_the_plane() {
        let g = complete(4);
        let k = k_min_estimate(&g, 2, &cfg(2)).unwrap();
        assert_eq!((k.k_min, k.stress_rank), (3, 1));
        let sh = k_sh_estimate(&g, 2, &cfg(2)).unwrap();
        assert_eq!((sh.k_sh, sh.gauss_rank, sh.basis_dim), (3, 2, 1));
        assert_eq!(dot_space_dim(&g, &k.witness), 3);
    }

    #[test]
    fn tripod_is_rejected() {
        let g = generate(Family::CompleteBipartite, &[1, 3]).unwrap();
        assert_eq!(
            k_min_estimate(&g, 2, &cfg(2)).unwrap_err(),
            Rejection::TooFewEdges { e: 3, t: 5 }
        );
        assert!(k_sh_estimate(&g, 2, &cfg(2)).is_err());
    }

    #[test]
    fn prism_has_no_stress() {
        let g = generate(Family::Prism, &[]).unwrap();
        let k = k_min_estimate(&g, 2, &cfg(2)).unwrap();
        assert_eq!(k.k_min, 6);
        let sh = k_sh_estimate(&g, 2, &cfg(2)).unwrap();
        assert_eq!((sh.k_sh, sh.basis_dim), (6, 0));
    }

    #[test]
    fn kernel_of_only_ones_gives_zero() {
        // Laplacian of K3 over F_7: kernel is spanned by the all-ones vector.
        let f = PrimeField::new(7).unwrap();
        let lap = Matrix::from_i64(f, 3, 3, &[2, -1, -1, -1, 2, -1, -1, -1, 2]);
        assert_eq!(
            dot_space_dim(&complete(3), &StressMatrix { matrix: lap }),
            0
        );
    }

    #[test]
    fn hendrickson_examples() {
        let prism = generate(Family::Prism, &[]).unwrap();
        assert_eq!(
            check_hendrickson(&prism, 2, &cfg(2)),
            Hendrickson {
                connectivity_ok: true,
                redundant_ok: false
            }
        );
        let p3 = generate(Family::Path, &[3]).unwrap();
        assert_eq!(
            check_hendrickson(&p3, 1, &cfg(1)),
            Hendrickson {
                connectivity_ok: false,
                redundant_ok: false
            }
        );
        let k4 = complete(4);
        assert_eq!(
            check_hendrickson(&k4, 2, &cfg(2)),
            Hendrickson {
                connectivity_ok: true,
                redundant_ok: true
            }
        );
    }

    #[test]
    fn dimension_one_examples() {
        assert!(check_dimension_one(&generate(Family::Cycle, &[5]).unwrap()));
        assert!(!check_dimension_one(&generate(Family::Path, &[4]).unwrap()));
        assert!(check_dimension_one(&generate(Family::Prism, &[]).unwrap()));
    }
}
