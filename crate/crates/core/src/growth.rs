//! Growth moduli of the languages read by the automata `A(G)` built from
//! simple graphs `G` on the letters.
//!
//! For an edge `{a, b}` of `G`, `A(G)` has an edge from state `a` to state
//! `b^{-1}` and one from `b` to `a^{-1}`; a word is read by visiting the
//! states named by its letters. The complete graph gives the reduced words.

use num_traits::PrimInt;

use crate::error::{Error, Result};
use crate::primitivity::WhiteheadGraph;
use crate::scalar::{from_usize, lit, Real};
use crate::words::{Alphabet, Letter};

pub const MAX_POWER_ITERATIONS: usize = 1_000_000;

/// 0/1 transition matrix of order `2r`, rows and columns in letter order.
#[derive(Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    order: usize,
    entries: Vec<u8>,
}

impl TransitionMatrix {
    pub fn zero(order: usize) -> Self {
        Self { order, entries: vec![0; order * order] }
    }

    /// Builds a matrix from 0/1 rows.
    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        let order = rows.len();
        let mut m = Self::zero(order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order || row.iter().any(|&e| e > 1) {
                return Err(Error::Config(format!("row {i} is not a 0/1 row of length {order}")));
            }
            m.entries[i * order..(i + 1) * order].copy_from_slice(row);
        }
        Ok(m)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.entries[i * self.order + j] = 1;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.order);
        for i in 0..self.order {
            for j in 0..self.order {
                t.entries[j * self.order + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.order).map(|i| self.row(i).iter().map(|&e| e as usize).sum()).collect()
    }
}

impl std::fmt::Debug for TransitionMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn automaton_matrix(g: &WhiteheadGraph) -> TransitionMatrix {
    let mut m = TransitionMatrix::zero(g.vertex_count());
    for (a, b) in g.edges() {
        m.set(a.ordinal(), b.inverse().ordinal());
        m.set(b.ordinal(), a.inverse().ordinal());
    }
    m
}

/// The complete graph with the edge `{x, y}` deleted: `G_{a,a}` for
/// `y = x^{-1}`, `G_{a,b}` for `y ∉ {x, x^{-1}}`.
pub fn deleted_edge_graph(alphabet: Alphabet, x: Letter, y: Letter) -> WhiteheadGraph {
    let mut g = WhiteheadGraph::complete(alphabet);
    g.remove_edge(x, y);
    g
}

/// Power-iteration estimate of a spectral radius together with the
/// Collatz–Wielandt bracket `lower <= ρ <= upper` of the last iterate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenEstimate<T> {
    pub value: T,
    pub lower: T,
    pub upper: T,
    pub iterations: usize,
}

/// Spectral radius of `M` as the maximum over its strongly connected
/// components. On each component `M + I` is primitive, so power iteration
/// from the all-ones vector (normalized to maximum 1) converges
/// geometrically. The estimate is `‖(M + I)x‖∞ - 1`; the iterate stays
/// strictly positive, so each step also yields the bracket
/// `min_i (Mx)_i/x_i <= ρ <= max_i (Mx)_i/x_i`, which contains the estimate.
/// A component stops once its bracket is narrower than `tol`, or once the
/// estimate moves by less than `tol / 1000`. The reported bracket is the
/// componentwise maximum of both ends, `iterations` the total.
pub fn power_iteration<T: Real>(m: &TransitionMatrix, tol: T) -> Result<EigenEstimate<T>> {
    let zero = T::zero();
    let mut total = EigenEstimate { value: zero, lower: zero, upper: zero, iterations: 0 };
    for component in strong_components(m) {
        let index = |v: usize| component.binary_search(&v).ok();
        let rows: Vec<Vec<usize>> = component
            .iter()
            .map(|&i| (0..m.order()).filter(|&j| m.get(i, j) == 1).filter_map(index).collect())
            .collect();
        if rows.iter().all(Vec::is_empty) {
            continue;
        }
        let e = power_iteration_irreducible(&rows, tol)?;
        total.value = total.value.max(e.value);
        total.lower = total.lower.max(e.lower);
        total.upper = total.upper.max(e.upper);
        total.iterations += e.iterations;
    }
    Ok(total)
}

/// Strongly connected components, each sorted, from the transitive closure.
fn strong_components(m: &TransitionMatrix) -> Vec<Vec<usize>> {
    let n = m.order();
    let mut reach: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || m.get(i, j) == 1).collect()).collect();
    for k in 0..n {
        let via = reach[k].clone();
        for row in reach.iter_mut().filter(|row| row[k]) {
            row.iter_mut().zip(&via).for_each(|(x, &y)| *x |= y);
        }
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for i in 0..n {
        if !seen[i] {
            let c: Vec<usize> = (i..n).filter(|&j| reach[i][j] && reach[j][i]).collect();
            c.iter().for_each(|&j| seen[j] = true);
            components.push(c);
        }
    }
    components
}

fn power_iteration_irreducible<T: Real>(rows: &[Vec<usize>], tol: T) -> Result<EigenEstimate<T>> {
    let n = rows.len();
    let mut x = vec![T::one(); n];
    let mut y = vec![T::zero(); n];
    let stall = tol * lit::<T>(1e-3);
    let mut previous = T::neg_infinity();
    for iteration in 1..=MAX_POWER_ITERATIONS {
        let (mut lower, mut upper) = (T::infinity(), T::neg_infinity());
        let mut scale = T::zero();
        for i in 0..n {
            let mx = rows[i].iter().fold(T::zero(), |s, &j| s + x[j]);
            let ratio = mx / x[i];
            lower = lower.min(ratio);
            upper = upper.max(ratio);
            y[i] = mx + x[i];
            scale = scale.max(y[i]);
        }
        let value = (scale - T::one()).max(lower).min(upper);
        if upper - lower <= tol || (value - previous).abs() <= stall {
            return Ok(EigenEstimate { value, lower, upper, iterations: iteration });
        }
        previous = value;
        for (xi, &yi) in x.iter_mut().zip(&y) {
            *xi = yi / scale;
        }
    }
    Err(Error::NoConvergence { iterations: MAX_POWER_ITERATIONS })
}

pub fn dominant_eigenvalue<T: Real>(m: &TransitionMatrix, tol: T) -> Result<T> {
    power_iteration(m, tol).map(|e| e.value)
}

/// `½ (2r - 3 + √((2r + 1)² - 8))`.
pub fn gaa_modulus<T: Real>(r: u32) -> T {
    let two_r = from_usize::<T>(2 * r as usize);
    let three = from_usize::<T>(3);
    let eight = from_usize::<T>(8);
    ((two_r - three) + ((two_r + T::one()).powi(2) - eight).sqrt()) / lit(2.0)
}

/// `X³ - (2r - 1) X² + 4(r - 1)`.
pub fn gab_polynomial<T: Real>(r: u32, x: T) -> T {
    let c = from_usize::<T>(2 * r as usize) - T::one();
    let d = from_usize::<T>(4 * (r as usize - 1));
    x * x * x - c * x * x + d
}

/// Largest real root of [`gab_polynomial`], by bisection on
/// `[⅔ (2r - 1), 2r - 1]` keeping `P(lo) <= 0 < P(hi)`. The left end is the
/// local minimum of `P`; it is returned as is when `P` vanishes there (the
/// double root at `r = 2`).
pub fn gab_modulus<T: Real>(r: u32) -> T {
    let top = from_usize::<T>(2 * r as usize) - T::one();
    let mut lo = (top + top) / from_usize(3);
    let mut hi = top;
    if gab_polynomial(r, lo) >= T::zero() {
        return lo;
    }
    for _ in 0..2000 {
        let mid = (lo + hi) / lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if gab_polynomial(r, mid) <= T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `(2r - 1)(1 - ½ r⁻²)`.
pub fn cut_vertex_growth_bound<T: Real>(r: u32) -> T {
    let rf = from_usize::<T>(r as usize);
    (rf + rf - T::one()) * (T::one() - lit::<T>(0.5) / (rf * rf))
}

/// Largest rank for which [`cut_vertex_modulus`] enumerates graphs.
pub const MAX_ENUMERATION_RANK: u32 = 3;

/// `λ0`: the largest spectral radius of `M(G)` over the graphs `G` on the
/// letters that are disconnected or have a cut vertex. The fraction of
/// reduced words of length `n` whose `W'` is such a graph decays like
/// `(λ0 / (2r - 1))^n`. All `2^(r(2r-1))` graphs are enumerated and only the
/// maximal ones evaluated.
pub fn cut_vertex_modulus<T: Real>(alphabet: Alphabet, tol: T) -> Result<T> {
    let r = alphabet.rank();
    if r > MAX_ENUMERATION_RANK {
        return Err(Error::Config(format!("graph enumeration supports rank <= {MAX_ENUMERATION_RANK}, got {r}")));
    }
    let pairs: Vec<(Letter, Letter)> = WhiteheadGraph::complete(alphabet).edges().collect();
    let build = |mask: u32| {
        let mut g = WhiteheadGraph::empty(alphabet);
        for (i, &(x, y)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(x, y);
            }
        }
        g
    };
    let bad: Vec<bool> = (0..1u32 << pairs.len()).map(|m| !build(m).connected_without_cutvertex()).collect();
    let mut best = T::zero();
    for (mask, _) in bad.iter().enumerate().filter(|(_, &b)| b) {
        let maximal = (0..pairs.len()).all(|i| mask >> i & 1 == 1 || !bad[mask | 1 << i]);
        if maximal {
            best = best.max(power_iteration(&automaton_matrix(&build(mask as u32)), tol)?.value);
        }
    }
    Ok(best)
}

/// `(2k - 1)^(1/(μ - 2d))`.
pub fn ctp_growth_bound<T: Real>(k: usize, mu: usize, d: usize) -> Result<T> {
    if k == 0 || mu <= 2 * d {
        return Err(Error::Config(format!("growth bound needs k >= 1 and mu > 2d, got k={k}, mu={mu}, d={d}")));
    }
    let base = from_usize::<T>(2 * k - 1);
    Ok(base.powf(T::one() / from_usize::<T>(mu - 2 * d)))
}

fn checked_product<N: PrimInt>(a: &[N], b: &[N], n: usize) -> Result<Vec<N>> {
    let overflow = Error::Overflow { what: "matrix power" };
    let mut c = vec![N::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let term = aik.checked_mul(&b[k * n + j]).ok_or(overflow.clone())?;
                c[i * n + j] = c[i * n + j].checked_add(&term).ok_or(overflow.clone())?;
            }
        }
    }
    Ok(c)
}

/// `M^e` over an integer type, failing on overflow.
pub fn matrix_power<N: PrimInt>(m: &TransitionMatrix, mut e: u32) -> Result<Vec<N>> {
    let n = m.order();
    let mut result: Vec<N> = (0..n * n).map(|k| if k / n == k % n { N::one() } else { N::zero() }).collect();
    let mut base: Vec<N> = m.entries.iter().map(|&x| if x == 1 { N::one() } else { N::zero() }).collect();
    while e > 0 {
        if e & 1 == 1 {
            result = checked_product(&result, &base, n)?;
        }
        e >>= 1;
        if e > 0 {
            base = checked_product(&base, &base, n)?;
        }
    }
    Ok(result)
}

/// Number of words of length `len` read by the automaton from any state:
/// the entry sum of `M^(len-1)`, and 1 for the empty word.
pub fn count_paths<N: PrimInt>(m: &TransitionMatrix, len: u32) -> Result<N> {
    if len == 0 {
        return Ok(N::one());
    }
    matrix_power::<N>(m, len - 1)?
        .into_iter()
        .try_fold(N::zero(), |s, x| s.checked_add(&x))
        .ok_or(Error::Overflow { what: "path count" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::count_reduced;

    fn alphabet(r: u32) -> Alphabet {
        Alphabet::new(r).unwrap()
    }

    #[test]
    fn clique_rows_sum_to_2r_minus_1() {
        for r in 1..6 {
            let m = automaton_matrix(&WhiteheadGraph::complete(alphabet(r)));
            assert!(m.row_sums().iter().all(|&s| s == 2 * r as usize - 1));
            for x in alphabet(r).letters() {
                assert_eq!(m.get(x.ordinal(), x.inverse().ordinal()), 0);
            }
        }
    }

    #[test]
    fn clique_counts_reduced_words() {
        for r in 1..=3 {
            let m = automaton_matrix(&WhiteheadGraph::complete(alphabet(r)));
            for n in 0..=8 {
                assert_eq!(count_paths::<u64>(&m, n).unwrap() as u128, count_reduced(r, n).unwrap());
            }
        }
    }

    #[test]
    fn path_count_overflow() {
        let m = automaton_matrix(&WhiteheadGraph::complete(alphabet(3)));
        assert!(matches!(count_paths::<u8>(&m, 5), Err(Error::Overflow { .. })));
        assert_eq!(count_paths::<u16>(&m, 4).unwrap(), 6 * 125);
    }

    #[test]
    fn eigenvalue_examples() {
        let clique = automaton_matrix(&WhiteheadGraph::complete(alphabet(2)));
        assert!((dominant_eigenvalue(&clique, 1e-10).unwrap() - 3.0f64).abs() < 1e-9);
        let a = Letter::gen(1);
        let gaa = automaton_matrix(&deleted_edge_graph(alphabet(2), a, a.inverse()));
        let expected = (1.0 + 17f64.sqrt()) / 2.0;
        assert!((dominant_eigenvalue(&gaa, 1e-10).unwrap() - expected).abs() < 1e-8);
        assert_eq!(dominant_eigenvalue(&TransitionMatrix::zero(4), 1e-10f64).unwrap(), 0.0);
    }

    #[test]
    fn bracket_contains_closed_form() {
        for r in 2..=5 {
            let a = Letter::gen(1);
            let m = automaton_matrix(&deleted_edge_graph(alphabet(r), a, a.inverse()));
            let e = power_iteration(&m, 1e-12f64).unwrap();
            let exact = gaa_modulus::<f64>(r);
            assert!(e.lower <= exact + 1e-12 && exact <= e.upper + 1e-12, "{e:?} vs {exact}");
        }
    }

    #[test]
    fn cut_vertex_modulus_small_ranks() {
        let l2: f64 = cut_vertex_modulus(alphabet(2), 1e-10).unwrap();
        let l3: f64 = cut_vertex_modulus(alphabet(3), 1e-10).unwrap();
        eprintln!("lambda0(2) = {l2}, lambda0(3) = {l3}");
        for (r, l) in [(2, l2), (3, l3)] {
            assert!(l < gaa_modulus::<f64>(r).max(gab_modulus(r)));
            assert!(l > 1.0);
        }
        assert!(cut_vertex_modulus::<f64>(alphabet(4), 1e-10).is_err());
    }

    #[test]
    fn closed_forms() {
        assert!((gaa_modulus::<f64>(2) - 2.561_552_812_808_83).abs() < 1e-12);
        assert!((gab_modulus::<f64>(2) - 2.0).abs() < 1e-12);
        for r in 2..=8 {
            let g = gab_modulus::<f64>(r);
            assert!(gab_polynomial(r, g).abs() < 1e-9);
            assert!(g <= cut_vertex_growth_bound::<f64>(r));
            assert!(gaa_modulus::<f64>(r) <= cut_vertex_growth_bound::<f64>(r));
        }
        assert!((cut_vertex_growth_bound::<f64>(2) - 2.625).abs() < 1e-12);
        assert!((gab_modulus::<f32>(3) - 4.626_198).abs() < 1e-4);
    }

    #[test]
    fn ctp_growth_bound_examples() {
        assert!((ctp_growth_bound::<f64>(2, 3, 1).unwrap() - 3.0).abs() < 1e-12);
        assert!((ctp_growth_bound::<f64>(2, 6, 1).unwrap() - 1.316_074).abs() < 1e-6);
        assert_eq!(ctp_growth_bound::<f64>(1, 9, 2).unwrap(), 1.0);
        assert!(ctp_growth_bound::<f64>(2, 4, 2).is_err());
    }

    #[test]
    fn transpose_and_rows() {
        let m = TransitionMatrix::from_rows(&[&[0, 1], &[0, 0]]).unwrap();
        assert_eq!(m.transpose(), TransitionMatrix::from_rows(&[&[0, 0], &[1, 0]]).unwrap());
        assert!(TransitionMatrix::from_rows(&[&[0, 2], &[0, 0]]).is_err());
        // reducible: split into components, each exact
        let m = TransitionMatrix::from_rows(&[&[1, 0], &[0, 0]]).unwrap();
        let e = power_iteration(&m, 1e-9f64).unwrap();
        assert_eq!((e.value, e.lower, e.upper), (1.0, 1.0, 1.0));
        // 2x2 Jordan block at 2, e.g. G_ab at rank 2
        let m = TransitionMatrix::from_rows(&[&[1, 1, 0, 0], &[1, 1, 0, 0], &[1, 0, 1, 1], &[0, 1, 1, 1]]).unwrap();
        let e = power_iteration(&m, 1e-12f64).unwrap();
        assert!((e.value - 2.0).abs() < 1e-12 && e.iterations < 100, "{e:?}");
    }
}
