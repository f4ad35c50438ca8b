//! Vertex partitions, quotient matrices and interlacing, plus the closed-form
//! cubic whose largest root is `ρ(K_k + (K_{delta-k+1} ∪ K_{n-delta-1}))`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bitset_of, ExtremalParams, Graph};
use crate::spectral::poly::IntPoly;
use crate::spectral::{full_spectrum, DenseMatrix, RootInterval, Spectrum};

pub const INTERLACING_SLACK: f64 = 1e-9;

/// Ordered list of disjoint nonempty blocks covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidPartition(format!("block {i} is empty")));
            }
            for &v in b {
                if v >= n {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} out of range for order {n}"
                    )));
                }
                if owner[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} lies in blocks {} and {i}",
                        owner[v]
                    )));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Self { n, blocks })
    }

    /// `(S, A, B)` blocks of the canonical extremal layout.
    pub fn canonical(p: ExtremalParams) -> Self {
        let blocks = p.blocks().into_iter().map(|r| r.collect()).collect();
        Self { n: p.n(), blocks }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn check_order(&self, g: &Graph) -> Result<()> {
        if g.order() == self.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch(format!(
                "partition of {} vertices for a graph of order {}",
                self.n,
                g.order()
            )))
        }
    }
}

/// Block-averaged adjacency: `q[i][j] = e_ij / n_i` off the diagonal and
/// `q[i][i] = 2 e_i / n_i`, where `e_ij` counts edges between blocks `i`, `j`
/// and `e_i` counts edges inside block `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientMatrix {
    pub q: Vec<Vec<f64>>,
    pub sizes: Vec<usize>,
    /// `edges[i][j] = e_ij` for `i != j`, `edges[i][i] = e_i`.
    pub edges: Vec<Vec<usize>>,
}

impl QuotientMatrix {
    fn from_edges(sizes: Vec<usize>, edges: Vec<Vec<usize>>) -> Self {
        let m = sizes.len();
        let q = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let e = if i == j { 2 * edges[i][i] } else { edges[i][j] };
                        e as f64 / sizes[i] as f64
                    })
                    .collect()
            })
            .collect();
        Self { q, sizes, edges }
    }

    pub fn dim(&self) -> usize {
        self.sizes.len()
    }

    /// `D^{1/2} Q D^{-1/2}`: symmetric, with the same eigenvalues as `Q`.
    pub fn symmetrized(&self) -> DenseMatrix {
        let m = self.dim();
        let mut s = DenseMatrix::zeros(m);
        for i in 0..m {
            for j in 0..m {
                s[(i, j)] = if i == j {
                    self.q[i][i]
                } else {
                    self.edges[i][j] as f64 / ((self.sizes[i] * self.sizes[j]) as f64).sqrt()
                };
            }
        }
        s
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        full_spectrum(&self.symmetrized())
    }

    /// Integer entries, when every `e_ij` is divisible by `n_i`.
    pub fn integer_entries(&self) -> Option<Vec<Vec<i64>>> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let e = if i == j { 2 * self.edges[i][i] } else { self.edges[i][j] };
                        (e % self.sizes[i] == 0).then(|| (e / self.sizes[i]) as i64)
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .collect()
    }
}

pub fn quotient_matrix(g: &Graph, p: &Partition) -> Result<QuotientMatrix> {
    p.check_order(g)?;
    let n = g.order();
    let sets: Vec<Vec<u64>> = p.blocks.iter().map(|b| bitset_of(n, b.iter().copied())).collect();
    let m = p.len();
    let mut edges = vec![vec![0usize; m]; m];
    for (i, row) in edges.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let ends: usize = p.blocks[i].iter().map(|&v| g.neighbors_in(v, &sets[j])).sum();
            *e = if i == j { ends / 2 } else { ends };
        }
    }
    Ok(QuotientMatrix::from_edges(p.sizes(), edges))
}

/// Every vertex of block `i` has the same number of neighbours in block `j`.
pub fn is_equitable(g: &Graph, p: &Partition) -> Result<bool> {
    p.check_order(g)?;
    let n = g.order();
    let sets: Vec<Vec<u64>> = p.blocks.iter().map(|b| bitset_of(n, b.iter().copied())).collect();
    Ok(p.blocks.iter().all(|block| {
        sets.iter().all(|s| {
            let first = g.neighbors_in(block[0], s);
            block.iter().all(|&v| g.neighbors_in(v, s) == first)
        })
    }))
}

/// Closed form of the canonical quotient of the extremal graph:
/// `[[k-1, delta-k+1, n-delta-1], [k, delta-k, 0], [k, 0, n-delta-2]]`.
pub fn three_part_quotient(p: ExtremalParams) -> QuotientMatrix {
    let (n, k, d) = (p.n(), p.k(), p.delta());
    let [s, a, b] = p.block_sizes();
    let edges = vec![
        vec![k * (k - 1) / 2, s * a, s * b],
        vec![a * s, a * (d - k) / 2, 0],
        vec![b * s, 0, b * (n - d - 2) / 2],
    ];
    QuotientMatrix::from_edges(vec![s, a, b], edges)
}

/// Quotient of `K_k + (K_{n1} ∪ K_{n2})` by its three natural blocks:
/// `[[k-1, n1, n2], [k, n1-1, 0], [k, 0, n2-1]]`.
pub fn two_clique_quotient(k: usize, n1: usize, n2: usize) -> QuotientMatrix {
    let edges = vec![
        vec![k * (k - 1) / 2, k * n1, k * n2],
        vec![n1 * k, n1 * (n1 - 1) / 2, 0],
        vec![n2 * k, 0, n2 * (n2 - 1) / 2],
    ];
    QuotientMatrix::from_edges(vec![k, n1, n2], edges)
}

/// `x^3 + c2 x^2 + c1 x + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubicCoeffs {
    pub c2: i64,
    pub c1: i64,
    pub c0: i64,
}

impl CubicCoeffs {
    pub fn to_poly(self) -> IntPoly {
        IntPoly::from_i64(&[self.c0, self.c1, self.c2, 1])
    }

    pub fn eval(self, x: f64) -> f64 {
        ((x + self.c2 as f64) * x + self.c1 as f64) * x + self.c0 as f64
    }
}

impl std::fmt::Display for CubicCoeffs {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.to_poly().fmt(f)
    }
}

/// Coefficients of the closed-form cubic for `(n, k, delta)`:
/// `c2 = 3 - n`,
/// `c1 = nδ - δ² - n - kn + k + kδ + 2 - 2δ`,
/// `c0 = knδ + k² + nδ + k²δ - kδ - k²n - kδ² - 2δ - δ²`.
pub fn cubic_coefficients(p: ExtremalParams) -> CubicCoeffs {
    let (n, k, d) = (p.n() as i64, p.k() as i64, p.delta() as i64);
    CubicCoeffs {
        c2: 3 - n,
        c1: n * d - d * d - n - k * n + k + k * d + 2 - 2 * d,
        c0: k * n * d + k * k + n * d + k * k * d - k * d - k * k * n - k * d * d - 2 * d - d * d,
    }
}

/// `det(xI - M)` for an integer 3×3 matrix, by cofactor expansion.
pub fn charpoly_3x3(m: &[Vec<i64>]) -> CubicCoeffs {
    let [a, b, c] = [m[0][0], m[0][1], m[0][2]];
    let [d, e, f] = [m[1][0], m[1][1], m[1][2]];
    let [g, h, i] = [m[2][0], m[2][1], m[2][2]];
    let trace = a + e + i;
    let minors = (e * i - f * h) + (a * i - c * g) + (a * e - b * d);
    let det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    CubicCoeffs {
        c2: -trace,
        c1: minors,
        c0: -det,
    }
}

/// Largest real root of the monic cubic.
///
/// The root is isolated exactly (Sturm counting over the rationals, bisecting
/// `(-B, B]` with `B` from [`root_bound`]) and then polished with a bracketed
/// Newton iteration in floating point.
pub fn largest_cubic_root(c: CubicCoeffs) -> f64 {
    let bound = root_bound(c);
    let poly = c.to_poly();
    let iv = RootInterval::largest(&poly, &BigInt::from(bound)).expect("odd degree has a real root");
    // work on the square-free part: the largest root is simple there
    let sf = poly.squarefree();
    let lo = num_traits::ToPrimitive::to_f64(&iv.lo).expect("finite");
    let hi = num_traits::ToPrimitive::to_f64(&iv.hi).expect("finite");
    polish(&sf, lo, hi)
}

/// Integer `B` exceeding every root modulus of the monic cubic:
/// `|z| <= 2 max(|c2|, |c1|^(1/2), (|c0|/2)^(1/3))` (Fujiwara), so any `B`
/// with `B >= 2|c2|`, `B^2 >= 4|c1|` and `B^3 >= 4|c0|` works; one more keeps
/// the roots off the endpoints.
fn root_bound(c: CubicCoeffs) -> u64 {
    let (a2, a1, a0) = (
        c.c2.unsigned_abs() as u128,
        c.c1.unsigned_abs() as u128,
        c.c0.unsigned_abs() as u128,
    );
    let mut b = (2 * a2).max(1);
    while b * b < 4 * a1 || b * b * b < 4 * a0 {
        b *= 2;
    }
    b as u64 + 1
}

/// Safeguarded Newton on a bracket `(lo, hi]` that holds exactly one simple root.
fn polish(p: &IntPoly, mut lo: f64, mut hi: f64) -> f64 {
    let dp = p.derivative();
    let sign_hi = p.eval_f64(hi).signum();
    if p.eval_f64(hi) == 0.0 {
        return hi;
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = p.eval_f64(x);
        if fx == 0.0 {
            return x;
        }
        if fx.signum() == sign_hi {
            hi = x;
        } else {
            lo = x;
        }
        let step = fx / dp.eval_f64(x);
        let mut next = x - step;
        if !(next > lo && next < hi) || !step.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-15 * x.abs().max(1.0) || hi - lo <= 1e-15 * x.abs().max(1.0) {
            return next;
        }
        x = next;
    }
    x
}

/// Interlacing `λ_i(A) >= λ_i(Q) >= λ_{i+n-m}(A)` with eigenvalues indexed in
/// descending order, within [`INTERLACING_SLACK`].
pub fn check_interlacing(sub: &Spectrum, full: &Spectrum) -> Result<bool> {
    let (m, n) = (sub.len(), full.len());
    if m > n || m == 0 {
        return Err(Error::SizeMismatch(format!(
            "cannot interlace {m} eigenvalues into {n}"
        )));
    }
    let a: Vec<f64> = full.descending().collect();
    let q: Vec<f64> = sub.descending().collect();
    Ok((0..m).all(|i| a[i] + INTERLACING_SLACK >= q[i] && q[i] + INTERLACING_SLACK >= a[i + n - m]))
}

/// Extends block values to all vertices.
pub fn lift(p: &Partition, block_values: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; p.order()];
    for (b, &val) in p.blocks.iter().zip(block_values) {
        for &v in b {
            x[v] = val;
        }
    }
    x
}

/// Perron root and vector of an irreducible quotient, by power iteration on
/// `Q + I`. The vector is normalised to unit Euclidean length.
pub fn quotient_perron(q: &QuotientMatrix) -> (f64, Vec<f64>) {
    let m = q.dim();
    let apply = |y: &[f64]| -> Vec<f64> { (0..m).map(|i| (0..m).map(|j| q.q[i][j] * y[j]).sum()).collect() };
    let mut y = vec![1.0 / (m as f64).sqrt(); m];
    for _ in 0..1_000_000 {
        let mut z: Vec<f64> = apply(&y).iter().zip(&y).map(|(a, b)| a + b).collect();
        let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        z.iter_mut().for_each(|v| *v /= norm);
        let moved = z.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        y = z;
        if moved < 1e-15 {
            break;
        }
    }
    let qy = apply(&y);
    let rho = qy.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
    (rho, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, extremal_graph, path};
    use crate::spectral::{graph_spectrum, perron, DEFAULT_TOL};

    fn p(n: usize, k: usize, d: usize) -> ExtremalParams {
        ExtremalParams::new(n, k, d).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0], vec![1, 2]]).is_ok());
        assert!(Partition::new(3, vec![vec![0], vec![]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1, 3]]).is_err());
    }

    #[test]
    fn equitable_examples() {
        let k5 = complete(5).unwrap();
        let one = Partition::new(5, vec![(0..5).collect()]).unwrap();
        assert!(is_equitable(&k5, &one).unwrap());
        assert_eq!(quotient_matrix(&k5, &one).unwrap().q, vec![vec![4.0]]);

        let pp = p(9, 2, 4);
        assert!(is_equitable(&extremal_graph(pp), &Partition::canonical(pp)).unwrap());

        let p3 = path(3).unwrap();
        let part = Partition::new(3, vec![vec![0], vec![1, 2]]).unwrap();
        assert!(!is_equitable(&p3, &part).unwrap());
    }

    #[test]
    fn canonical_quotients() {
        let pp = p(7, 2, 3);
        let q = quotient_matrix(&extremal_graph(pp), &Partition::canonical(pp)).unwrap();
        let expected = vec![vec![1, 2, 3], vec![2, 1, 0], vec![2, 0, 2]];
        assert_eq!(q.integer_entries().unwrap(), expected);
        assert_eq!(three_part_quotient(pp).integer_entries().unwrap(), expected);
        assert_eq!(three_part_quotient(pp), q);
        assert_eq!(
            three_part_quotient(p(4, 1, 1)).integer_entries().unwrap(),
            vec![vec![0, 1, 2], vec![1, 0, 0], vec![1, 0, 1]]
        );
        assert_eq!(
            two_clique_quotient(2, 3, 4).integer_entries().unwrap(),
            vec![vec![1, 3, 4], vec![2, 2, 0], vec![2, 0, 3]]
        );
    }

    #[test]
    fn cubic_matches_determinant_oracle() {
        for (pp, want) in [(p(7, 2, 3), (-4, -5, 12)), (p(4, 1, 1), (-1, -3, 1))] {
            let c = cubic_coefficients(pp);
            assert_eq!((c.c2, c.c1, c.c0), want);
            let det = charpoly_3x3(&three_part_quotient(pp).integer_entries().unwrap());
            assert_eq!(det, c);
        }
    }

    #[test]
    fn largest_roots() {
        let r = largest_cubic_root(CubicCoeffs { c2: -4, c1: -5, c0: 12 });
        assert!(r > 4.5 && r < 4.52, "{r}");
        assert!(CubicCoeffs { c2: -4, c1: -5, c0: 12 }.eval(r).abs() < 1e-10);
        let r = largest_cubic_root(CubicCoeffs { c2: -1, c1: -3, c0: 1 });
        assert!((r - 2.17009).abs() < 1e-5);
        // (x - (n-1)) (x + 1)^2 = x^3 + (3-n) x^2 + (3 - 2n) x + (1 - n)
        for n in 2..40i64 {
            let c = CubicCoeffs {
                c2: 3 - n,
                c1: 3 - 2 * n,
                c0: 1 - n,
            };
            assert!((largest_cubic_root(c) - (n - 1) as f64).abs() < 1e-12);
        }
        // double largest root: (x-2)^2 (x+1)
        let r = largest_cubic_root(CubicCoeffs { c2: -3, c1: 0, c0: 4 });
        assert!((r - 2.0).abs() < 1e-12, "{r}");
    }

    #[test]
    fn cubic_root_is_the_spectral_radius() {
        for pp in ExtremalParams::grid(4..12, false) {
            let rho = perron(&extremal_graph(pp), DEFAULT_TOL).unwrap().rho;
            let root = largest_cubic_root(cubic_coefficients(pp));
            assert!((rho - root).abs() <= 1e-9, "{pp}: {rho} vs {root}");
        }
    }

    #[test]
    fn interlacing_and_equitable_equality() {
        let pp = p(8, 2, 3);
        let g = extremal_graph(pp);
        let q = quotient_matrix(&g, &Partition::canonical(pp)).unwrap();
        let qs = q.spectrum().unwrap();
        let gs = graph_spectrum(&g).unwrap();
        assert!(check_interlacing(&qs, &gs).unwrap());
        assert!((qs.largest() - gs.largest()).abs() < 1e-9);
        assert!(check_interlacing(&gs, &gs).unwrap());
        assert!(check_interlacing(&gs, &qs).is_err());
    }

    #[test]
    fn quotient_perron_vector_lifts_to_an_eigenvector() {
        let pp = p(10, 3, 4);
        let g = extremal_graph(pp);
        let part = Partition::canonical(pp);
        let (rho, y) = quotient_perron(&quotient_matrix(&g, &part).unwrap());
        let x = lift(&part, &y);
        let mut ax = vec![0.0; x.len()];
        g.mul_vec(&x, &mut ax);
        let resid = ax.iter().zip(&x).map(|(a, b)| (a - rho * b).abs()).fold(0.0, f64::max);
        assert!(resid < 1e-9, "{resid}");
    }
}
