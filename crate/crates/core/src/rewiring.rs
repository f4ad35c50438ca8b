//! Rewiring at a single pivot: drop the edges from `v` to one vertex set and
//! add edges from `v` to another. If the Perron mass moved onto is at least
//! the mass moved off, the spectral radius cannot drop; if strictly more, it
//! strictly rises.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{perron, PerronPair, DEFAULT_TOL};

/// Pivot `v`, neighbours to disconnect, non-neighbours to connect.
///
/// Text form: `v|d1,d2,...|a1,a2,...` with either list possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RewireSpec {
    pub pivot: usize,
    pub del: Vec<usize>,
    pub add: Vec<usize>,
}

impl RewireSpec {
    pub fn new(pivot: usize, del: Vec<usize>, add: Vec<usize>) -> Self {
        Self { pivot, del, add }
    }

    /// Spec undoing this one on the rewired graph.
    pub fn inverse(&self) -> Self {
        Self {
            pivot: self.pivot,
            del: self.add.clone(),
            add: self.del.clone(),
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let v = self.pivot;
        let bad = |msg: String| Err(Error::InvalidRewire(msg));
        if v >= g.order() {
            return bad(format!("pivot {v} out of range for order {}", g.order()));
        }
        let mut seen = vec![0u8; g.order()];
        for &d in &self.del {
            if d >= g.order() {
                return bad(format!("deleted endpoint {d} out of range"));
            }
            if !g.has_edge(v, d) {
                return bad(format!("{d} is not a neighbour of pivot {v}"));
            }
            if seen[d] != 0 {
                return bad(format!("{d} listed twice"));
            }
            seen[d] = 1;
        }
        for &a in &self.add {
            if a >= g.order() {
                return bad(format!("added endpoint {a} out of range"));
            }
            if a == v {
                return bad(format!("cannot join pivot {v} to itself"));
            }
            if seen[a] == 1 {
                return bad(format!("{a} is in both the delete and add sets"));
            }
            if g.has_edge(v, a) {
                return bad(format!("{a} is already a neighbour of pivot {v}"));
            }
            if seen[a] == 2 {
                return bad(format!("{a} listed twice"));
            }
            seen[a] = 2;
        }
        Ok(())
    }
}

impl fmt::Display for RewireSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}|{}", self.pivot, join(&self.del), join(&self.add))
    }
}

impl FromStr for RewireSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split('|').collect();
        let [pivot, del, add] = parts.as_slice() else {
            return Err(Error::InvalidRewire(format!(
                "expected `v|del|add`, found {} field(s)",
                parts.len()
            )));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::InvalidRewire(format!("bad index {t:?}: {e}")))
        };
        let list = |t: &str| -> Result<Vec<usize>> {
            if t.trim().is_empty() {
                Ok(Vec::new())
            } else {
                t.split(',').map(num).collect()
            }
        };
        Ok(Self {
            pivot: num(pivot)?,
            del: list(del)?,
            add: list(add)?,
        })
    }
}

pub fn rewire(g: &Graph, s: &RewireSpec) -> Result<Graph> {
    s.validate(g)?;
    let mut out = g.clone();
    for &d in &s.del {
        out.set_edge(s.pivot, d, false);
    }
    for &a in &s.add {
        out.set_edge(s.pivot, a, true);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Lt,
    Eq,
    Gt,
}

/// Tolerances for the monotonicity and corollary checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RewireTolerances {
    /// Sums within this distance compare as equal.
    pub sum_eq: f64,
    /// Slack allowed on the weak conclusion.
    pub weak: f64,
    /// Premise margin beyond which the conclusion must be strict.
    pub strict_premise: f64,
    /// Required gap for a strict conclusion on the radii.
    pub strict_gap: f64,
}

impl Default for RewireTolerances {
    fn default() -> Self {
        Self {
            sum_eq: 1e-10,
            weak: 1e-10,
            strict_premise: 1e-8,
            strict_gap: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerronSums {
    pub sum_del: f64,
    pub sum_add: f64,
    pub relation: Relation,
}

fn sums_for(x: &[f64], s: &RewireSpec, tol: f64) -> PerronSums {
    let sum_del: f64 = s.del.iter().map(|&d| x[d]).sum();
    let sum_add: f64 = s.add.iter().map(|&a| x[a]).sum();
    let relation = if (sum_del - sum_add).abs() <= tol {
        Relation::Eq
    } else if sum_del < sum_add {
        Relation::Lt
    } else {
        Relation::Gt
    };
    PerronSums {
        sum_del,
        sum_add,
        relation,
    }
}

/// Perron mass of `g` on the deleted and added endpoints.
pub fn perron_sum_test(g: &Graph, s: &RewireSpec) -> Result<PerronSums> {
    s.validate(g)?;
    let x = perron(g, DEFAULT_TOL)?;
    Ok(sums_for(&x.vec, s, RewireTolerances::default().sum_eq))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The rewired graph is disconnected.
    Skip,
    /// The premise of the statement does not hold.
    PremiseNotMet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub rho_g: f64,
    pub rho_star: Option<f64>,
    pub sum_del: f64,
    pub sum_add: f64,
    /// `sum_del <= sum_add` up to the equality tolerance.
    pub premise: bool,
    /// `sum_add - sum_del` exceeds the strict margin.
    pub strict_premise: bool,
    /// `|x^T (A(G*) - A(G)) x - 2 x_v (sum_add - sum_del)|`.
    pub quadratic_form_residual: f64,
    pub verdict: Verdict,
}

/// Computes both radii and checks the implication for one instance.
pub fn verify_monotonicity(g: &Graph, s: &RewireSpec, tol: &RewireTolerances) -> Result<MonotonicityReport> {
    let star = rewire(g, s)?;
    let PerronPair { rho: rho_g, vec: x } = perron(g, DEFAULT_TOL)?;
    let sums = sums_for(&x, s, tol.sum_eq);
    let premise = sums.relation != Relation::Gt;
    let strict_premise = sums.sum_add - sums.sum_del > tol.strict_premise;
    let quadratic_form_residual = quadratic_form_residual(g, &star, &x, s, &sums);

    let mut report = MonotonicityReport {
        rho_g,
        rho_star: None,
        sum_del: sums.sum_del,
        sum_add: sums.sum_add,
        premise,
        strict_premise,
        quadratic_form_residual,
        verdict: Verdict::Skip,
    };
    if !star.is_connected() {
        return Ok(report);
    }
    let rho_star = perron(&star, DEFAULT_TOL)?.rho;
    report.rho_star = Some(rho_star);
    report.verdict = if !premise {
        Verdict::PremiseNotMet
    } else if rho_g > rho_star + tol.weak || (strict_premise && rho_star - rho_g <= tol.strict_gap) {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    Ok(report)
}

/// Evaluates both quadratic forms with full matrix-vector products and
/// compares their difference with the closed form.
fn quadratic_form_residual(g: &Graph, star: &Graph, x: &[f64], s: &RewireSpec, sums: &PerronSums) -> f64 {
    let n = g.order();
    let mut ax = vec![0.0; n];
    let mut bx = vec![0.0; n];
    g.mul_vec(x, &mut ax);
    star.mul_vec(x, &mut bx);
    let dot = |a: &[f64]| x.iter().zip(a).map(|(p, q)| p * q).sum::<f64>();
    let direct = dot(&bx) - dot(&ax);
    let closed = 2.0 * x[s.pivot] * (sums.sum_add - sums.sum_del);
    (direct - closed).abs()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorollaryReport {
    /// Sums over the Perron vector of the original graph.
    pub before: PerronSums,
    /// Sums over the Perron vector of the rewired graph.
    pub after: Option<PerronSums>,
    pub strict_premise: bool,
    pub verdict: Verdict,
}

/// After a rewiring whose premise holds, the rewired graph's own Perron
/// vector still puts at least as much mass on the added endpoints, and
/// strictly more when the premise was strict.
pub fn corollary_check(g: &Graph, s: &RewireSpec, tol: &RewireTolerances) -> Result<CorollaryReport> {
    let star = rewire(g, s)?;
    let x = perron(g, DEFAULT_TOL)?;
    let before = sums_for(&x.vec, s, tol.sum_eq);
    let strict_premise = before.sum_add - before.sum_del > tol.strict_premise;
    let mut report = CorollaryReport {
        before,
        after: None,
        strict_premise,
        verdict: Verdict::PremiseNotMet,
    };
    if before.relation == Relation::Gt {
        return Ok(report);
    }
    if !star.is_connected() {
        report.verdict = Verdict::Skip;
        return Ok(report);
    }
    let y = perron(&star, DEFAULT_TOL)?;
    let after = sums_for(&y.vec, s, tol.sum_eq);
    let weak_ok = after.sum_add >= after.sum_del - tol.weak;
    let strict_ok = !strict_premise || after.sum_add > after.sum_del;
    report.after = Some(after);
    report.verdict = if weak_ok && strict_ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}
