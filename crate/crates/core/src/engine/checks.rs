//! One-sided randomized tests for generic local and global rigidity.
//!
//! A "yes" is only ever returned after observing a rank that cannot exceed
//! its generic value, so it is always correct. A "no" may be wrong with the
//! recorded probability bound.

use rand::Rng;

use super::stress::stress_sample;
use super::{
    constants, rigidity_matrix, Evidence, Framework, Probability, Rejection, RoundRecord, Rule,
    Verdict, VerdictKind,
};
use crate::config::TestConfig;
use crate::graph::Graph;
use crate::primes::PrimePool;
use crate::rng::{round_rng, tag};
use crate::scalar::{Field, PrimeField};
use crate::Rationals;

/// A verdict plus the rounds that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub rounds: Vec<RoundRecord>,
}

fn small_graph_outcome(g: &Graph, yes: VerdictKind, no: VerdictKind) -> Outcome {
    let evidence = Evidence {
        rule: Rule::SmallGraph,
        sample_bound: None,
        pool_size: None,
        rounds_run: 0,
        target_rank: None,
        best_rank: None,
    };
    let verdict = if g.is_complete() {
        Verdict::yes(yes, evidence)
    } else {
        Verdict::no(no, Probability::zero(), evidence)
    };
    Outcome {
        verdict,
        rounds: Vec::new(),
    }
}

/// Arithmetic a round runs in: a fresh prime from the pool, or exact
/// rationals.
trait RoundField {
    type F: Field;
    fn pick<R: Rng + ?Sized>(&self, rng: &mut R) -> (Self::F, Option<u64>);
}

impl RoundField for PrimePool {
    type F = PrimeField;

    fn pick<R: Rng + ?Sized>(&self, rng: &mut R) -> (PrimeField, Option<u64>) {
        let p = self.choose(rng);
        (PrimeField::new(p).expect("pool holds odd primes"), Some(p))
    }
}

struct Exact;

impl RoundField for Exact {
    type F = Rationals;

    fn pick<R: Rng + ?Sized>(&self, _rng: &mut R) -> (Rationals, Option<u64>) {
        (Rationals::new(), None)
    }
}

struct Schedule {
    bound: u64,
    pool_size: Option<usize>,
    seed: u64,
    tag: u64,
    rounds: u32,
    /// Per-round false-negative probability as `num/den`.
    per_round: (u64, u64),
}

fn run_local<A: RoundField>(g: &Graph, d: usize, t: usize, arith: &A, sched: &Schedule) -> Outcome {
    let v = g.vertex_count();
    let mut records = Vec::new();
    let mut best = 0;
    for round in 0..sched.rounds {
        let mut rng = round_rng(sched.seed, sched.tag, round as u64);
        let (field, prime) = arith.pick(&mut rng);
        let fw = Framework::random(v, d, sched.bound, &mut rng);
        let rank = rigidity_matrix(&field, g, &fw)
            .expect("framework sized for graph")
            .rank();
        best = best.max(rank);
        records.push(RoundRecord {
            round,
            prime,
            rigidity_rank: rank,
            extended_rank: None,
            stress_rank: None,
            rejected: false,
        });
        if rank == t {
            break;
        }
    }
    let evidence = Evidence {
        rule: Rule::Randomized,
        sample_bound: Some(sched.bound),
        pool_size: sched.pool_size,
        rounds_run: records.len() as u32,
        target_rank: Some(t),
        best_rank: Some(best),
    };
    let verdict = if best == t {
        Verdict::yes(VerdictKind::LocallyRigid, evidence)
    } else {
        let (num, den) = sched.per_round;
        Verdict::no(
            VerdictKind::NotLocallyRigid,
            Probability::power(num, den, records.len() as u32),
            evidence,
        )
    };
    Outcome {
        verdict,
        rounds: records,
    }
}

fn run_global<A: RoundField>(
    g: &Graph,
    d: usize,
    s: usize,
    arith: &A,
    sched: &Schedule,
) -> Outcome {
    let v = g.vertex_count();
    let mut records = Vec::new();
    let mut best: Option<usize> = None;
    for round in 0..sched.rounds {
        let mut rng = round_rng(sched.seed, sched.tag, round as u64);
        let (field, prime) = arith.pick(&mut rng);
        let fw = Framework::random(v, d, sched.bound, &mut rng);
        let record = match stress_sample(&field, g, &fw, sched.bound, &mut rng) {
            Ok(sample) => {
                let rank = sample.matrix.rank();
                best = Some(best.map_or(rank, |b| b.max(rank)));
                RoundRecord {
                    round,
                    prime,
                    rigidity_rank: sample.rigidity_rank,
                    extended_rank: Some(sample.extended_rank),
                    stress_rank: Some(rank),
                    rejected: false,
                }
            }
            Err(rejection) => {
                let (rigidity_rank, extended_rank) = match rejection {
                    Rejection::RigidityRank { rank, .. } => (rank, None),
                    Rejection::ExtendedRank { rank, .. } => {
                        let t = constants(v, d).map(|c| c.0).unwrap_or(0);
                        (t, Some(rank))
                    }
                    _ => (0, None),
                };
                RoundRecord {
                    round,
                    prime,
                    rigidity_rank,
                    extended_rank,
                    stress_rank: None,
                    rejected: true,
                }
            }
        };
        let done = record.stress_rank == Some(s);
        records.push(record);
        if done {
            break;
        }
    }
    let evidence = Evidence {
        rule: Rule::Randomized,
        sample_bound: Some(sched.bound),
        pool_size: sched.pool_size,
        rounds_run: records.len() as u32,
        target_rank: Some(s),
        best_rank: best,
    };
    let verdict = if best == Some(s) {
        Verdict::yes(VerdictKind::GloballyRigid, evidence)
    } else {
        let (num, den) = sched.per_round;
        Verdict::no(
            VerdictKind::NotGloballyRigid,
            Probability::power(num, den, records.len() as u32),
            evidence,
        )
    };
    Outcome {
        verdict,
        rounds: records,
    }
}

/// Schwartz-Zippel failure `deg / N` plus, for modular rounds, at most `1/4`
/// for the chosen prime dividing the witness polynomial.
fn per_round(degree: usize, bound: u64, modular: bool) -> (u64, u64) {
    let deg = degree as u64;
    if modular {
        (4 * deg + bound, 4 * bound)
    } else {
        (deg, bound)
    }
}

pub(crate) fn local_with_tag(g: &Graph, d: usize, cfg: &TestConfig, stream: u64) -> Outcome {
    let v = g.vertex_count();
    if v <= d + 1 {
        return small_graph_outcome(g, VerdictKind::LocallyRigid, VerdictKind::NotLocallyRigid);
    }
    let (t, _) = constants(v, d).expect("v > d + 1");
    let bound = cfg.sample_bound.unwrap_or(4 * t as u64);
    let pool = PrimePool::build(4 * t, bound);
    let sched = Schedule {
        bound,
        pool_size: Some(pool.len()),
        seed: cfg.seed,
        tag: stream,
        rounds: cfg.rounds,
        per_round: per_round(t, bound, true),
    };
    run_local(g, d, t, &pool, &sched)
}

/// Generic local rigidity in dimension `d`.
///
/// With `v <= d + 1` the answer is exact: rigid iff complete. Otherwise each
/// round reduces modulo a random prime from a pool sized for `N = 4t`, draws
/// coordinates from `[1, N]`, and answers yes as soon as the rigidity matrix
/// reaches rank `t`.
pub fn check_local(g: &Graph, d: usize, cfg: &TestConfig) -> Outcome {
    local_with_tag(g, d, cfg, tag::LOCAL)
}

/// Generic global rigidity in dimension `d`: yes as soon as a random stress
/// matrix reaches rank `s = v - d - 1`.
pub fn check_global(g: &Graph, d: usize, cfg: &TestConfig) -> Outcome {
    let v = g.vertex_count();
    if v <= d + 1 {
        return small_graph_outcome(g, VerdictKind::GloballyRigid, VerdictKind::NotGloballyRigid);
    }
    let (t, s) = constants(v, d).expect("v > d + 1");
    if let Some(out) = too_few_edges(g, t) {
        return out;
    }
    let ve = v * g.edge_count();
    let bound = cfg.sample_bound.unwrap_or((4 * t).max(4 * ve) as u64);
    let pool = PrimePool::build(4 * ve, bound);
    let sched = Schedule {
        bound,
        pool_size: Some(pool.len()),
        seed: cfg.seed,
        tag: tag::GLOBAL,
        rounds: cfg.rounds,
        per_round: per_round(ve, bound, true),
    };
    run_global(g, d, s, &pool, &sched)
}

fn too_few_edges(g: &Graph, t: usize) -> Option<Outcome> {
    (g.edge_count() < t).then(|| Outcome {
        verdict: Verdict::no(
            VerdictKind::NotGloballyRigid,
            Probability::zero(),
            Evidence {
                rule: Rule::EdgeCount,
                sample_bound: None,
                pool_size: None,
                rounds_run: 0,
                target_rank: None,
                best_rank: None,
            },
        ),
        rounds: Vec::new(),
    })
}

/// [`check_local`] with exact rational arithmetic at integer frameworks.
/// The false-negative bound per round is `t / N`.
pub fn oracle_check_local_rational(g: &Graph, d: usize, cfg: &TestConfig) -> Outcome {
    let v = g.vertex_count();
    if v <= d + 1 {
        return small_graph_outcome(g, VerdictKind::LocallyRigid, VerdictKind::NotLocallyRigid);
    }
    let (t, _) = constants(v, d).expect("v > d + 1");
    let bound = cfg.sample_bound.unwrap_or(4 * t as u64);
    let sched = Schedule {
        bound,
        pool_size: None,
        seed: cfg.seed,
        tag: tag::ORACLE_LOCAL,
        rounds: cfg.rounds,
        per_round: per_round(t, bound, false),
    };
    run_local(g, d, t, &Exact, &sched)
}

/// The global pipeline of [`check_global`] with every rank and solve done
/// over the rationals. Stands in for fully symbolic elimination; its
/// false-negative bound per round is `ve / N`.
pub fn oracle_check_global_rational(g: &Graph, d: usize, cfg: &TestConfig) -> Outcome {
    let v = g.vertex_count();
    if v <= d + 1 {
        return small_graph_outcome(g, VerdictKind::GloballyRigid, VerdictKind::NotGloballyRigid);
    }
    let (t, s) = constants(v, d).expect("v > d + 1");
    if let Some(out) = too_few_edges(g, t) {
        return out;
    }
    let ve = v * g.edge_count();
    let bound = cfg.sample_bound.unwrap_or((4 * t).max(4 * ve) as u64);
    let sched = Schedule {
        bound,
        pool_size: None,
        seed: cfg.seed,
        tag: tag::ORACLE_GLOBAL,
        rounds: cfg.rounds,
        per_round: per_round(ve, bound, false),
    };
    run_global(g, d, s, &Exact, &sched)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Certainty;
    use crate::graph::{complete, generate, Family};

    fn cfg(d: usize) -> TestConfig {
        TestConfig::new(d).with_seed(11)
    }

    fn fam(f: Family, p: &[usize]) -> Graph {
        generate(f, p).unwrap()
    }

    #[test]
    fn local_examples() {
        let tripod = fam(Family::CompleteBipartite, &[1, 3]);
        let out = check_local(&tripod, 2, &cfg(2));
        assert_eq!(out.verdict.kind, VerdictKind::NotLocallyRigid);
        assert_eq!(out.verdict.certainty, Certainty::ProbabilisticNo);
        assert_eq!(out.rounds.len(), 40);
        assert_eq!(out.verdict.false_no_bound, Probability::power(1, 2, 40));

        let prism = fam(Family::Prism, &[]);
        let out = check_local(&prism, 2, &cfg(2));
        assert_eq!(out.verdict.kind, VerdictKind::LocallyRigid);
        assert_eq!(out.verdict.certainty, Certainty::CertainYes);
        assert_eq!(out.verdict.false_no_bound, Probability::zero());

        let k3 = complete(3);
        let out = check_local(&k3, 2, &cfg(2));
        assert_eq!(out.verdict.kind, VerdictKind::LocallyRigid);
        assert_eq!(out.verdict.evidence.rule, Rule::SmallGraph);
    }

    #[test]
    fn global_examples() {
        let prism = fam(Family::Prism, &[]);
        assert_eq!(
            check_global(&prism, 2, &cfg(2)).verdict.kind,
            VerdictKind::NotGloballyRigid
        );
        let k55 = fam(Family::CompleteBipartite, &[5, 5]);
        let out = check_global(&k55, 3, &cfg(3));
        assert_eq!(out.verdict.kind, VerdictKind::NotGloballyRigid);
        assert_eq!(out.verdict.evidence.best_rank, Some(2));
        let c4 = fam(Family::Cycle, &[4]);
        assert_eq!(
            check_global(&c4, 1, &cfg(1)).verdict.kind,
            VerdictKind::GloballyRigid
        );
        assert_eq!(
            check_global(&complete(4), 2, &cfg(2)).verdict.kind,
            VerdictKind::GloballyRigid
        );
    }

    #[test]
    fn edge_count_shortcut() {
        let tripod = fam(Family::CompleteBipartite, &[1, 3]);
        let out = check_global(&tripod, 2, &cfg(2));
        assert_eq!(out.verdict.kind, VerdictKind::NotGloballyRigid);
        assert_eq!(out.verdict.evidence.rule, Rule::EdgeCount);
        assert!(out.rounds.is_empty());
    }

    #[test]
    fn small_graph_rule() {
        let p3 = fam(Family::Path, &[3]);
        let out = check_global(&p3, 2, &cfg(2));
        assert_eq!(out.verdict.kind, VerdictKind::NotGloballyRigid);
        assert_eq!(out.verdict.false_no_bound, Probability::zero());
        assert_eq!(
            check_global(&complete(2), 1, &cfg(1)).verdict.kind,
            VerdictKind::GloballyRigid
        );
        assert_eq!(
            check_global(&Graph::empty(1), 3, &cfg(3)).verdict.kind,
            VerdictKind::GloballyRigid
        );
    }

    #[test]
    fn rational_oracle_examples() {
        let c = cfg(2).with_rounds(10);
        assert_eq!(
            oracle_check_global_rational(&complete(4), 2, &c)
                .verdict
                .kind,
            VerdictKind::GloballyRigid
        );
        assert_eq!(
            oracle_check_global_rational(&fam(Family::Prism, &[]), 2, &c)
                .verdict
                .kind,
            VerdictKind::NotGloballyRigid
        );
        assert_eq!(
            oracle_check_global_rational(&fam(Family::Wheel, &[5]), 2, &c)
                .verdict
                .kind,
            VerdictKind::GloballyRigid
        );
        let out = oracle_check_global_rational(&fam(Family::Prism, &[]), 2, &c);
        // ve / N = 1/4 per round
        assert_eq!(out.verdict.false_no_bound, Probability::power(1, 4, 10));
        assert!(out.rounds.iter().all(|r| r.prime.is_none()));
        assert_eq!(
            oracle_check_local_rational(&fam(Family::Prism, &[]), 2, &c)
                .verdict
                .kind,
            VerdictKind::LocallyRigid
        );
    }

    #[test]
    fn sample_bound_override_loosens_the_bound() {
        let mut c = cfg(2).with_rounds(2);
        c.sample_bound = Some(10);
        let tripod = fam(Family::CompleteBipartite, &[1, 3]);
        // t = 5: 5/10 + 1/4 = 3/4 per round
        let out = check_local(&tripod, 2, &c);
        assert_eq!(out.verdict.false_no_bound, Probability::power(3, 4, 2));
    }

    #[test]
    fn reproducible() {
        let g = fam(Family::Wheel, &[6]);
        assert_eq!(check_global(&g, 2, &cfg(2)), check_global(&g, 2, &cfg(2)));
    }
}
