//! Verification suites shared by the command line and the test targets.
//!
//! Randomized suites draw trial `t` from its own ChaCha stream of the seed, so
//! results depend only on `(seed, t)` and not on how trials are sharded.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::census::{run_census_batch, run_sharded, verify_lemma_batch, CensusResult, ClassSpec, LemmaReport};
use crate::error::Result;
use crate::graph::{complete, extremal_graph, g6_encode, shiu_graph, ExtremalParams, Graph};
use crate::quotient::{
    charpoly_3x3, check_interlacing, cubic_coefficients, is_equitable, largest_cubic_root, quotient_matrix,
    three_part_quotient, Partition,
};
use crate::report::Failure;
use crate::rewiring::{
    corollary_check, perron_sum_test, verify_monotonicity, Relation, RewireSpec, RewireTolerances, Verdict,
};
use crate::spectral::{full_spectrum, perron, DEFAULT_TOL};

pub const CUBIC_ROOT_TOL: f64 = 1e-9;
pub const QUADRATIC_FORM_TOL: f64 = 1e-9;
pub const SUBGRAPH_GAP: f64 = 1e-12;
pub const EQUITABLE_TOL: f64 = 1e-9;
pub const COMPLETE_TOL: f64 = 1e-12;
pub const SOLVER_AGREEMENT_TOL: f64 = 1e-9;

/// Tallies for one suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: String,
    /// Instances on which the statement was actually tested.
    pub checked: u64,
    /// Instances set aside because the statement does not apply (disconnected result).
    pub skipped: u64,
    /// Instances whose premise failed, so the implication holds vacuously.
    pub vacuous: u64,
    /// Largest error observed against the suite's main tolerance.
    pub worst: f64,
    pub failures: Vec<Failure>,
}

impl SuiteOutcome {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            checked: 0,
            skipped: 0,
            vacuous: 0,
            worst: 0.0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(mut self, other: SuiteOutcome) -> Self {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.vacuous += other.vacuous;
        self.worst = self.worst.max(other.worst);
        self.failures.extend(other.failures);
        self
    }
}

fn merge(name: &str, parts: Vec<SuiteOutcome>) -> SuiteOutcome {
    parts.into_iter().fold(SuiteOutcome::new(name), SuiteOutcome::absorb)
}

/// Generator for trial `trial` of a seeded suite.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Erdős–Rényi graph of order `n` with a random edge probability in
/// `[0.2, 0.9]`, resampled until connected.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    loop {
        let p: f64 = rng.gen_range(0.2..0.9);
        let mut g = Graph::new(n).expect("n >= 1");
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.set_edge(u, v, true);
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

/// Random pivot with random subsets of its neighbours and non-neighbours.
pub fn random_rewire<R: Rng>(rng: &mut R, g: &Graph) -> RewireSpec {
    let n = g.order();
    let v = rng.gen_range(0..n);
    let q_del: f64 = rng.gen_range(0.0..1.0);
    let q_add: f64 = rng.gen_range(0.0..1.0);
    let del = g.neighbors(v).filter(|_| rng.gen_bool(q_del)).collect();
    let add = (0..n)
        .filter(|&w| w != v && !g.has_edge(v, w))
        .filter(|_| rng.gen_bool(q_add))
        .collect();
    RewireSpec::new(v, del, add)
}

fn rho(g: &Graph) -> f64 {
    perron(g, DEFAULT_TOL).expect("connected graphs converge").rho
}

/// Closed-form cubic against the quotient determinant and the power iteration
/// for every valid triple with order in `orders`.
pub fn cubic_suite(orders: RangeInclusive<usize>, tol: f64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("cubic");
    let (lo, hi) = (*orders.start(), *orders.end());
    for p in ExtremalParams::grid(lo..hi + 1, false) {
        out.checked += 1;
        let closed = cubic_coefficients(p);
        let q = three_part_quotient(p).integer_entries().expect("integer quotient");
        let det = charpoly_3x3(&q);
        if det != closed {
            out.failures.push(Failure::new(
                "cubic-coefficients",
                format!("{p}: det(xI - Q) = {det}, closed form {closed}"),
            ));
        }
        let root = largest_cubic_root(closed);
        let r = rho(&extremal_graph(p));
        let gap = (root - r).abs();
        out.worst = out.worst.max(gap);
        if gap.is_nan() || gap > tol {
            out.failures.push(Failure::new(
                "cubic-root",
                format!("{p}: cubic root {root}, power iteration {r}, gap {gap:e}"),
            ));
        }
    }
    out
}

fn rewire_failure(check: &str, g: &Graph, s: &RewireSpec, message: String) -> Failure {
    Failure::new(check, message)
        .with_graph(g6_encode(g))
        .with_spec(s.to_string())
}

/// Spectral monotonicity under rewiring on `trials` random instances of order
/// `3..=n_max`, plus the quadratic-form identity on every instance.
pub fn rewire_suite(trials: u64, seed: u64, n_max: usize, tol: &RewireTolerances, shards: usize) -> SuiteOutcome {
    let parts = run_sharded(trials, shards, |a, b| {
        let mut out = SuiteOutcome::new("rewire");
        for t in a..b {
            let mut rng = trial_rng(seed, t);
            let n = rng.gen_range(3..=n_max.max(3));
            let g = random_connected_graph(&mut rng, n);
            let s = random_rewire(&mut rng, &g);
            let r = verify_monotonicity(&g, &s, tol).expect("generated specs are valid");
            out.worst = out.worst.max(r.quadratic_form_residual);
            if r.quadratic_form_residual > QUADRATIC_FORM_TOL {
                out.failures.push(rewire_failure(
                    "quadratic-form",
                    &g,
                    &s,
                    format!("residual {:e}", r.quadratic_form_residual),
                ));
            }
            match r.verdict {
                Verdict::Pass => out.checked += 1,
                Verdict::Skip => out.skipped += 1,
                Verdict::PremiseNotMet => out.vacuous += 1,
                Verdict::Fail => {
                    out.checked += 1;
                    out.failures.push(rewire_failure(
                        "monotonicity",
                        &g,
                        &s,
                        format!(
                            "sum_del {} sum_add {} rho {} rho* {:?}",
                            r.sum_del, r.sum_add, r.rho_g, r.rho_star
                        ),
                    ));
                }
            }
        }
        out
    });
    merge("rewire", parts)
}

/// The corollary on `trials` instances, each resampled until the premise
/// holds and the rewired graph is connected.
pub fn corollary_suite(trials: u64, seed: u64, n_max: usize, tol: &RewireTolerances, shards: usize) -> SuiteOutcome {
    let parts = run_sharded(trials, shards, |a, b| {
        let mut out = SuiteOutcome::new("corollary");
        for t in a..b {
            let mut rng = trial_rng(seed, t);
            let (g, s) = loop {
                let n = rng.gen_range(3..=n_max.max(3));
                let g = random_connected_graph(&mut rng, n);
                let s = random_rewire(&mut rng, &g);
                let sums = perron_sum_test(&g, &s).expect("generated specs are valid");
                let star = crate::rewiring::rewire(&g, &s).expect("valid");
                if sums.relation != Relation::Gt && star.is_connected() {
                    break (g, s);
                }
                out.vacuous += 1;
            };
            let r = corollary_check(&g, &s, tol).expect("generated specs are valid");
            out.checked += 1;
            if let Some(after) = r.after {
                out.worst = out.worst.max(after.sum_del - after.sum_add);
            }
            if r.verdict != Verdict::Pass {
                out.failures.push(rewire_failure("corollary", &g, &s, format!("{r:?}")));
            }
        }
        out
    });
    merge("corollary", parts)
}

/// A proper connected subgraph: maybe drop a vertex, then drop random edges
/// that keep it connected; at least one of the two always happens.
pub fn random_proper_subgraph<R: Rng>(rng: &mut R, g: &Graph) -> Graph {
    let mut h = g.clone();
    let mut changed = false;
    if h.order() > 2 && rng.gen_bool(0.5) {
        let v = rng.gen_range(0..h.order());
        let cand = h.remove_vertex(v).expect("in range");
        if cand.is_connected() {
            h = cand;
            changed = true;
        }
    }
    let mut edges: Vec<(usize, usize)> = h.edges().collect();
    edges.shuffle(rng);
    let q: f64 = rng.gen_range(0.0..0.6);
    for (u, v) in edges {
        if rng.gen_bool(q) || !changed {
            h.set_edge(u, v, false);
            if h.is_connected() {
                changed = true;
            } else {
                h.set_edge(u, v, true);
            }
        }
    }
    if !changed {
        // a tree: drop a leaf
        let leaf = (0..h.order()).find(|&v| h.degree(v) == 1).expect("trees have leaves");
        h = h.remove_vertex(leaf).expect("in range");
    }
    h
}

/// A proper connected subgraph has strictly smaller spectral radius.
pub fn subgraph_suite(trials: u64, seed: u64, n_max: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("subgraph");
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(2..=n_max.max(2));
        let g = random_connected_graph(&mut rng, n);
        let h = random_proper_subgraph(&mut rng, &g);
        out.checked += 1;
        let (rg, rh) = (rho(&g), rho(&h));
        out.worst = out.worst.max(rh - rg);
        if rh >= rg - SUBGRAPH_GAP {
            out.failures.push(
                Failure::new(
                    "subgraph",
                    format!("rho(H) = {rh}, rho(G) = {rg}; H = {}", g6_encode(&h)),
                )
                .with_graph(g6_encode(&g)),
            );
        }
    }
    out
}

/// Random partition of `0..n` into `m` nonempty blocks.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize, m: usize) -> Partition {
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    let mut blocks = vec![Vec::new(); m];
    for (i, &v) in verts.iter().enumerate() {
        let b = if i < m { i } else { rng.gen_range(0..m) };
        blocks[b].push(v);
    }
    Partition::new(n, blocks).expect("covers every vertex once")
}

/// Quotient eigenvalues interlace the adjacency eigenvalues for random
/// partitions; equitable canonical partitions of extremal graphs of order in
/// `grid` reproduce the largest eigenvalue.
pub fn interlacing_suite(trials: u64, seed: u64, n_max: usize, grid: RangeInclusive<usize>) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("interlacing");
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(1..=n_max.max(1));
        let mut g = Graph::new(n).expect("n >= 1");
        let p_edge: f64 = rng.gen_range(0.1..0.9);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p_edge) {
                    g.set_edge(u, v, true);
                }
            }
        }
        let m = rng.gen_range(1..=n);
        let part = random_partition(&mut rng, n, m);
        let q = quotient_matrix(&g, &part).expect("same order");
        let full = full_spectrum(&g.adjacency_matrix()).expect("symmetric");
        out.checked += 1;
        if !check_interlacing(&q.spectrum().expect("symmetric"), &full).expect("m <= n") {
            out.failures
                .push(Failure::new("interlacing", format!("partition {:?}", part.blocks())).with_graph(g6_encode(&g)));
        }
    }
    let (lo, hi) = (*grid.start(), *grid.end());
    for p in ExtremalParams::grid(lo..hi + 1, false) {
        let g = extremal_graph(p);
        let part = Partition::canonical(p);
        out.checked += 1;
        if !is_equitable(&g, &part).expect("same order") {
            out.failures.push(Failure::new(
                "equitable",
                format!("{p}: canonical partition not equitable"),
            ));
            continue;
        }
        let lq = quotient_matrix(&g, &part)
            .expect("same order")
            .spectrum()
            .expect("symmetric")
            .largest();
        let la = full_spectrum(&g.adjacency_matrix()).expect("symmetric").largest();
        let gap = (lq - la).abs();
        out.worst = out.worst.max(gap);
        if gap > EQUITABLE_TOL {
            out.failures
                .push(Failure::new("equitable", format!("{p}: quotient {lq}, adjacency {la}")));
        }
    }
    out
}

/// `ρ(K_n) = n - 1` for `n <= complete_max`; power iteration against Jacobi
/// and Perron positivity on random connected graphs of order `2..=n_max`.
pub fn solver_suite(trials: u64, seed: u64, n_max: usize, complete_max: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("solver");
    for n in 1..=complete_max {
        out.checked += 1;
        let r = rho(&complete(n).expect("n >= 1"));
        let gap = (r - (n as f64 - 1.0)).abs();
        if gap > COMPLETE_TOL {
            out.failures.push(Failure::new("complete", format!("rho(K_{n}) = {r}")));
        }
    }
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(2..=n_max.max(2));
        let g = random_connected_graph(&mut rng, n);
        out.checked += 1;
        let pair = perron(&g, DEFAULT_TOL).expect("connected");
        let jac = full_spectrum(&g.adjacency_matrix()).expect("symmetric").largest();
        let gap = (pair.rho - jac).abs();
        out.worst = out.worst.max(gap);
        if gap > SOLVER_AGREEMENT_TOL {
            out.failures.push(
                Failure::new("solver-agreement", format!("power {} vs jacobi {jac}", pair.rho))
                    .with_graph(g6_encode(&g)),
            );
        }
        if pair.vec.iter().any(|&x| x <= 0.0) {
            out.failures
                .push(Failure::new("perron-positivity", format!("{:?}", pair.vec)).with_graph(g6_encode(&g)));
        }
    }
    out
}

/// Classes of the main theorem at order `n`: `1 <= k <= delta <= n - 2` with
/// `n >= 2 delta + 2 - k`.
pub fn main_classes(n: usize) -> Vec<ClassSpec> {
    ExtremalParams::grid(n..n + 1, true)
        .map(|p| ClassSpec::new(p.n(), p.k(), p.delta()).expect("grid triples are valid"))
        .collect()
}

pub fn main_census(orders: RangeInclusive<usize>, shards: usize) -> Result<Vec<CensusResult>> {
    let mut out = Vec::new();
    for n in orders {
        out.extend(run_census_batch(n, &main_classes(n), shards, |c| {
            Ok(extremal_graph(c.params()))
        })?);
    }
    Ok(out)
}

/// Classes `delta = k` for `1 <= k <= n - 2`, each against `K_k + (K_1 ∪ K_{n-k-1})`.
pub fn shiu_census(orders: RangeInclusive<usize>, shards: usize) -> Result<Vec<CensusResult>> {
    let mut out = Vec::new();
    for n in orders {
        let classes: Vec<ClassSpec> = (1..n.saturating_sub(1))
            .map(|k| ClassSpec::new(n, k, k))
            .collect::<Result<_>>()?;
        out.extend(run_census_batch(n, &classes, shards, |c| shiu_graph(c.n, c.k))?);
    }
    Ok(out)
}

/// The lemma for every `1 <= k <= n - 2` at each order.
pub fn lemma_census(orders: RangeInclusive<usize>, shards: usize) -> Result<Vec<LemmaReport>> {
    let mut out = Vec::new();
    for n in orders {
        let ks: Vec<usize> = (0..n.saturating_sub(1)).collect();
        if !ks.is_empty() {
            out.extend(verify_lemma_batch(n, &ks, shards)?);
        }
    }
    Ok(out)
}

pub fn census_failures(results: &[CensusResult]) -> Vec<Failure> {
    results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            Failure::new(
                "census",
                format!(
                    "{}: {} maximizer(s) {:?}, expected {}",
                    r.class,
                    r.maximizers.len(),
                    r.maximizers,
                    r.reference
                ),
            )
        })
        .collect()
}

pub fn lemma_failures(reports: &[LemmaReport]) -> Vec<Failure> {
    reports
        .iter()
        .flat_map(|r| {
            r.counterexamples.iter().map(move |g6| {
                Failure::new("lemma", format!("n={} k={}: not {}-connected", r.n, r.k, r.k + 1)).with_graph(g6.clone())
            })
        })
        .collect()
}
