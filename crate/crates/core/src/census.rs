//! Exhaustive census over all labeled graphs of small order.
//!
//! Masks are split into contiguous shards. Each shard keeps, per class, every
//! member whose float radius is within [`FLOAT_BAND`] of its local maximum;
//! the merge keeps what is within the band of the global maximum, so the
//! surviving set never depends on how the range was cut. Ties inside the band
//! are then settled with exact characteristic-polynomial comparison and
//! isomorphism.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::connectivity::{is_k_connected, kappa, lemma_guarantee};
use crate::error::{Error, Result};
use crate::graph::{extremal_graph, g6_encode, shiu_graph, ExtremalParams, Graph};
use crate::spectral::{exact_compare_rho, int_charpoly, perron, RhoOrdering, DEFAULT_TOL};

/// Largest order the labeled enumeration accepts.
pub const CENSUS_ORDER_CAP: usize = 8;
/// Width of the float band whose members are re-compared exactly.
pub const FLOAT_BAND: f64 = 1e-7;
/// Node budget for the isomorphism search.
pub const ISO_BUDGET: u64 = 10_000_000;

/// The class of connected graphs of order `n` with `κ ≤ k` and `δ ≥ delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassSpec {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
}

impl ClassSpec {
    pub fn new(n: usize, k: usize, delta: usize) -> Result<Self> {
        let p = ExtremalParams::new(n, k, delta)?;
        Ok(Self {
            n: p.n(),
            k: p.k(),
            delta: p.delta(),
        })
    }

    pub fn params(self) -> ExtremalParams {
        ExtremalParams::new(self.n, self.k, self.delta).expect("validated at construction")
    }
}

impl std::fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, k={}, delta={})", self.n, self.k, self.delta)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusResult {
    pub class: ClassSpec,
    /// Labeled members of the class.
    pub class_size: u64,
    pub max_rho: Option<f64>,
    /// One representative per isomorphism class attaining the maximum, as graph6.
    pub maximizers: Vec<String>,
    /// The reference graph the maximizer was compared against, as graph6.
    pub reference: String,
    pub matches_extremal: bool,
    pub unique: bool,
    pub graphs_scanned: u64,
    /// Wall-clock seconds; kept out of the serialized form so reports are reproducible.
    #[serde(skip)]
    pub elapsed: f64,
}

impl CensusResult {
    /// The theorem holds for this class: one maximizer, and it is the reference.
    pub fn passed(&self) -> bool {
        self.unique && self.matches_extremal
    }

    pub fn csv_header() -> &'static str {
        "n,k,delta,class_size,max_rho,maximizers,unique,matches_extremal,graphs_scanned"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.class.n,
            self.class.k,
            self.class.delta,
            self.class_size,
            self.max_rho.map_or(String::new(), |r| format!("{r:.12}")),
            self.maximizers.join(" "),
            self.unique,
            self.matches_extremal,
            self.graphs_scanned
        )
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > CENSUS_ORDER_CAP {
        return Err(Error::OrderCap {
            order: n,
            cap: CENSUS_ORDER_CAP,
            what: "labeled enumeration",
        });
    }
    Ok(())
}

fn mask_count(n: usize) -> u64 {
    1u64 << (n * n.saturating_sub(1) / 2)
}

/// Every labeled graph on `n` vertices, in ascending mask order.
pub fn enumerate_labeled(n: usize) -> Result<impl Iterator<Item = Graph>> {
    enumerate_range(n, 0, mask_count(n.min(CENSUS_ORDER_CAP)))
}

/// Labeled graphs with masks in `start..end`, for restarting or sharding.
pub fn enumerate_range(n: usize, start: u64, end: u64) -> Result<impl Iterator<Item = Graph>> {
    check_order(n)?;
    let end = end.min(mask_count(n));
    Ok((start..end).map(move |m| Graph::from_upper_mask(n, m).expect("mask within range")))
}

/// Membership in the class: connected, `κ ≤ k`, `δ ≥ delta`.
pub fn in_class(g: &Graph, c: ClassSpec) -> bool {
    g.order() == c.n && g.min_degree() >= c.delta && g.is_connected() && kappa(g) <= c.k
}

/// Per-vertex invariant used to prune the isomorphism search: degree and the
/// sorted degrees of the neighbours.
fn vertex_signatures(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    let deg = g.degrees();
    (0..g.order())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|w| deg[w]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect()
}

/// Exact isomorphism test by backtracking over signature-compatible maps.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    find_isomorphism(g, h, ISO_BUDGET).map(|m| m.is_some())
}

/// A bijection `map` with `g.has_edge(u, v) == h.has_edge(map[u], map[v])`,
/// if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph, budget: u64) -> Result<Option<Vec<usize>>> {
    let n = g.order();
    if n != h.order() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let sg = vertex_signatures(g);
    let sh = vertex_signatures(h);
    let mut a = sg.clone();
    let mut b = sh.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    // rarest signature first, then by decreasing degree for early pruning
    let mut order: Vec<usize> = (0..n).collect();
    let freq = |s: &(usize, Vec<usize>)| sg.iter().filter(|t| *t == s).count();
    order.sort_by_key(|&v| (freq(&sg[v]), usize::MAX - sg[v].0, v));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut nodes = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn search(
        depth: usize,
        order: &[usize],
        g: &Graph,
        h: &Graph,
        sg: &[(usize, Vec<usize>)],
        sh: &[(usize, Vec<usize>)],
        map: &mut [usize],
        used: &mut [bool],
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        if depth == order.len() {
            return Ok(true);
        }
        let u = order[depth];
        for x in 0..h.order() {
            if used[x] || sh[x] != sg[u] {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::IsomorphismBudget(budget));
            }
            let consistent = order[..depth]
                .iter()
                .all(|&w| g.has_edge(u, w) == h.has_edge(x, map[w]));
            if !consistent {
                continue;
            }
            map[u] = x;
            used[x] = true;
            if search(depth + 1, order, g, h, sg, sh, map, used, nodes, budget)? {
                return Ok(true);
            }
            used[x] = false;
            map[u] = usize::MAX;
        }
        Ok(false)
    }
    let found = search(0, &order, g, h, &sg, &sh, &mut map, &mut used, &mut nodes, budget)?;
    Ok(found.then_some(map))
}

/// Band of near-maximal members kept by one shard for one class.
#[derive(Debug, Clone, Default)]
struct Band {
    best: f64,
    members: Vec<(u64, f64)>,
    class_size: u64,
}

impl Band {
    fn new(floor: f64) -> Self {
        Self {
            best: floor,
            members: Vec::new(),
            class_size: 0,
        }
    }

    fn offer(&mut self, mask: u64, rho: f64) {
        if rho < self.best - FLOAT_BAND {
            return;
        }
        if rho > self.best {
            self.best = rho;
            let cutoff = rho - FLOAT_BAND;
            self.members.retain(|&(_, r)| r >= cutoff);
        }
        self.members.push((mask, rho));
    }

    fn merge(mut self, other: Band) -> Band {
        self.best = self.best.max(other.best);
        self.class_size += other.class_size;
        self.members.extend(other.members);
        let cutoff = self.best - FLOAT_BAND;
        self.members.retain(|&(_, r)| r >= cutoff);
        self.members.sort_unstable_by_key(|&(m, _)| m);
        self
    }
}

/// Upper bound `sqrt(2m - n + 1)` on the radius of a graph without isolated
/// vertices (Hong), with a little slack for rounding.
fn radius_upper_bound(n: usize, m: usize) -> f64 {
    ((2 * m + 1).saturating_sub(n) as f64).sqrt() + 1e-9
}

struct ShardOutput {
    bands: Vec<Band>,
    scanned: u64,
}

/// Scans masks `start..end` once for all classes of the same order.
fn scan_shard(n: usize, classes: &[ClassSpec], floors: &[f64], start: u64, end: u64) -> ShardOutput {
    let mut bands: Vec<Band> = floors.iter().map(|&f| Band::new(f)).collect();
    let min_delta = classes.iter().map(|c| c.delta).min().unwrap_or(0);
    let mut scanned = 0;
    for mask in start..end {
        scanned += 1;
        let g = Graph::from_upper_mask(n, mask).expect("mask within range");
        let min_deg = g.min_degree();
        if min_deg < min_delta || !g.is_connected() {
            continue;
        }
        let kap = kappa(&g);
        let bound = radius_upper_bound(n, g.edge_count());
        let mut rho: Option<f64> = None;
        for (c, band) in classes.iter().zip(bands.iter_mut()) {
            if min_deg < c.delta || kap > c.k {
                continue;
            }
            band.class_size += 1;
            if bound < band.best - FLOAT_BAND {
                continue;
            }
            let r = *rho.get_or_insert_with(|| perron(&g, DEFAULT_TOL).expect("connected graphs converge").rho);
            band.offer(mask, r);
        }
    }
    ShardOutput { bands, scanned }
}

fn shard_ranges(total: u64, shards: usize) -> Vec<(u64, u64)> {
    let shards = shards.max(1) as u64;
    (0..shards)
        .map(|i| (total * i / shards, total * (i + 1) / shards))
        .collect()
}

/// Runs `f` over the shard ranges, on scoped threads when there is more than one.
pub(crate) fn run_sharded<T: Send>(total: u64, shards: usize, f: impl Fn(u64, u64) -> T + Sync) -> Vec<T> {
    let ranges = shard_ranges(total, shards);
    if ranges.len() == 1 {
        return vec![f(ranges[0].0, ranges[0].1)];
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(a, b)| {
                let f = &f;
                s.spawn(move || f(a, b))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    })
}

/// Maximizers within the merged band, settled exactly and up to isomorphism.
fn settle(n: usize, band: &Band) -> Result<Vec<Graph>> {
    if band.members.is_empty() {
        return Ok(Vec::new());
    }
    // graphs sharing a characteristic polynomial share a radius
    let mut groups: Vec<(crate::spectral::IntCharPoly, Vec<Graph>)> = Vec::new();
    for &(mask, _) in &band.members {
        let g = Graph::from_upper_mask(n, mask)?;
        let p = int_charpoly(&g)?;
        match groups.iter_mut().find(|(q, _)| *q == p) {
            Some((_, gs)) => gs.push(g),
            None => groups.push((p, vec![g])),
        }
    }
    let mut top: Vec<usize> = vec![0];
    for i in 1..groups.len() {
        match exact_compare_rho(&groups[i].1[0], &groups[top[0]].1[0])? {
            RhoOrdering::Greater => top = vec![i],
            o if o.is_tie() => top.push(i),
            _ => {}
        }
    }
    let mut reps: Vec<Graph> = Vec::new();
    for i in top {
        for g in &groups[i].1 {
            let mut seen = false;
            for r in &reps {
                if is_isomorphic(g, r)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                reps.push(g.clone());
            }
        }
    }
    Ok(reps)
}

/// Censuses several classes of one order in a single pass over the masks.
/// `reference` supplies the graph each class's winner is compared with.
pub fn run_census_batch(
    n: usize,
    classes: &[ClassSpec],
    shards: usize,
    reference: impl Fn(ClassSpec) -> Result<Graph>,
) -> Result<Vec<CensusResult>> {
    check_order(n)?;
    if let Some(c) = classes.iter().find(|c| c.n != n) {
        return Err(Error::SizeMismatch(format!("class {c} in a census of order {n}")));
    }
    let started = Instant::now();
    let references: Vec<Graph> = classes.iter().map(|&c| reference(c)).collect::<Result<_>>()?;
    // a known member's radius is a valid starting floor for pruning
    let floors: Vec<f64> = classes
        .iter()
        .zip(&references)
        .map(|(&c, r)| {
            if in_class(r, c) {
                perron(r, DEFAULT_TOL).map(|p| p.rho - FLOAT_BAND)
            } else {
                Ok(f64::NEG_INFINITY)
            }
        })
        .collect::<Result<_>>()?;

    let outputs = run_sharded(mask_count(n), shards, |a, b| scan_shard(n, classes, &floors, a, b));
    let scanned: u64 = outputs.iter().map(|o| o.scanned).sum();
    let mut merged: Vec<Band> = floors.iter().map(|&f| Band::new(f)).collect();
    for out in outputs {
        merged = merged.into_iter().zip(out.bands).map(|(a, b)| a.merge(b)).collect();
    }

    let mut results = Vec::with_capacity(classes.len());
    for ((&c, band), reference) in classes.iter().zip(&merged).zip(&references) {
        let reps = settle(n, band)?;
        let matches_extremal = match reps.first() {
            Some(r) => is_isomorphic(r, reference)?,
            None => false,
        };
        let max_rho = band
            .members
            .iter()
            .map(|&(_, r)| r)
            .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))));
        results.push(CensusResult {
            class: c,
            class_size: band.class_size,
            max_rho,
            maximizers: reps.iter().map(g6_encode).collect(),
            reference: g6_encode(reference),
            matches_extremal,
            unique: reps.len() == 1,
            graphs_scanned: scanned,
            elapsed: 0.0,
        });
    }
    let elapsed = started.elapsed().as_secs_f64();
    for r in &mut results {
        r.elapsed = elapsed;
    }
    Ok(results)
}

/// Census of one class against its extremal graph.
pub fn run_census(c: ClassSpec, shards: usize) -> Result<CensusResult> {
    let mut out = run_census_batch(c.n, &[c], shards, |c| Ok(extremal_graph(c.params())))?;
    Ok(out.remove(0))
}

/// Census of the class with `delta = k`, against `K_k + (K_1 ∪ K_{n-k-1})`.
pub fn verify_shiu(n: usize, k: usize, shards: usize) -> Result<CensusResult> {
    let c = ClassSpec::new(n, k, k)?;
    let mut out = run_census_batch(n, &[c], shards, |c| shiu_graph(c.n, c.k))?;
    Ok(out.remove(0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub n: usize,
    pub k: usize,
    pub graphs_scanned: u64,
    /// Graphs whose minimum degree satisfies the lemma's hypothesis.
    pub premise_count: u64,
    /// graph6 of each premise-satisfying graph that is not `(k+1)`-connected.
    pub counterexamples: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Every graph of order `n` with `δ > (n+k)/2 + 1` is `(k+1)`-connected.
pub fn verify_lemma(n: usize, k: usize, shards: usize) -> Result<LemmaReport> {
    Ok(verify_lemma_batch(n, &[k], shards)?.remove(0))
}

/// The lemma for several `k` at once, sharing one pass over the masks.
pub fn verify_lemma_batch(n: usize, ks: &[usize], shards: usize) -> Result<Vec<LemmaReport>> {
    check_order(n)?;
    // smallest degree meeting the hypothesis, per k
    let thresholds: Vec<usize> = ks
        .iter()
        .map(|&k| (0..=n).find(|&d| lemma_guarantee(n, k, d)).unwrap_or(n + 1))
        .collect();
    let min_threshold = thresholds.iter().copied().min().unwrap_or(n + 1);
    let outputs = run_sharded(mask_count(n), shards, |a, b| {
        let mut counts = vec![0u64; ks.len()];
        let mut bad: Vec<Vec<u64>> = vec![Vec::new(); ks.len()];
        for mask in a..b {
            let g = Graph::from_upper_mask(n, mask).expect("mask within range");
            let d = g.min_degree();
            if d < min_threshold {
                continue;
            }
            for (i, &k) in ks.iter().enumerate() {
                if d >= thresholds[i] {
                    counts[i] += 1;
                    if !is_k_connected(&g, k + 1) {
                        bad[i].push(mask);
                    }
                }
            }
        }
        (counts, bad, b - a)
    });
    let scanned: u64 = outputs.iter().map(|o| o.2).sum();
    ks.iter()
        .enumerate()
        .map(|(i, &k)| {
            let premise_count = outputs.iter().map(|o| o.0[i]).sum();
            let counterexamples = outputs
                .iter()
                .flat_map(|o| o.1[i].iter())
                .map(|&m| Graph::from_upper_mask(n, m).map(|g| g6_encode(&g)))
                .collect::<Result<_>>()?;
            Ok(LemmaReport {
                n,
                k,
                graphs_scanned: scanned,
                premise_count,
                counterexamples,
            })
        })
        .collect()
}
