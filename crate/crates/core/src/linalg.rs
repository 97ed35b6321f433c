//! Exact sparse integer linear algebra: Smith normal form with unimodular
//! transforms, homology of integer chain complexes with explicit generator
//! data, and induced maps on homology.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::IntMatrix;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("boundary composition is nonzero at degree {0}")]
    CompositionNonzero(usize),
    #[error("matrix dimensions are inconsistent")]
    DimensionMismatch,
    #[error("the given map does not commute with the boundaries at degree {0}")]
    NotAChainMap(usize),
    #[error("vector is not in the image lattice")]
    NotSolvable,
}

/// Triplet-form sparse integer matrix (interchange format; the elimination
/// itself runs on a dense working copy, which at desk scale is faster than
/// maintaining sparsity through fill-in).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<(usize, usize, BigInt)>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<(usize, usize, BigInt)>) -> Self {
        let entries: Vec<_> = entries.into_iter().filter(|(_, _, v)| !v.is_zero()).collect();
        for &(r, c, _) in &entries {
            assert!(r < rows && c < cols, "sparse entry out of range");
        }
        SparseIntMatrix { rows, cols, entries }
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let mut entries = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m[(r, c)].is_zero() {
                    entries.push((r, c, m[(r, c)].clone()));
                }
            }
        }
        SparseIntMatrix { rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows, self.cols);
        for (r, c, v) in &self.entries {
            m[(*r, *c)] = v.clone();
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
}

/// Smith normal form U * A * V = diag(d_1, ..., d_r) with d_1 | d_2 | ... and
/// U, V unimodular.
#[derive(Debug, Clone)]
pub struct SNFResult {
    pub divisors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SNFResult {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

/// Division with remainder of minimal absolute value.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        if r.sign() == b.sign() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

pub fn snf(a: &SparseIntMatrix) -> SNFResult {
    snf_dense(&a.to_dense())
}

/// SNF on a dense matrix: greedy smallest-magnitude pivoting with
/// deterministic tie-breaking (lowest row, then column).
pub fn snf_dense(a: &IntMatrix) -> SNFResult {
    let rows = a.rows();
    let cols = a.cols();
    let mut m = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let row_sub = |m: &mut IntMatrix, u: &mut IntMatrix, target: usize, src: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for c in 0..m.cols() {
            let d = &m[(src, c)] * q;
            m[(target, c)] -= d;
        }
        for c in 0..u.cols() {
            let d = &u[(src, c)] * q;
            u[(target, c)] -= d;
        }
    };
    let col_sub = |m: &mut IntMatrix, v: &mut IntMatrix, target: usize, src: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for r in 0..m.rows() {
            let d = &m[(r, src)] * q;
            m[(r, target)] -= d;
        }
        for r in 0..v.rows() {
            let d = &v[(r, src)] * q;
            v[(r, target)] -= d;
        }
    };
    let swap_rows = |m: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize| {
        if i == j {
            return;
        }
        for c in 0..m.cols() {
            let tmp = m[(i, c)].clone();
            m[(i, c)] = m[(j, c)].clone();
            m[(j, c)] = tmp;
        }
        for c in 0..u.cols() {
            let tmp = u[(i, c)].clone();
            u[(i, c)] = u[(j, c)].clone();
            u[(j, c)] = tmp;
        }
    };
    let swap_cols = |m: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize| {
        if i == j {
            return;
        }
        for r in 0..m.rows() {
            let tmp = m[(r, i)].clone();
            m[(r, i)] = m[(r, j)].clone();
            m[(r, j)] = tmp;
        }
        for r in 0..v.rows() {
            let tmp = v[(r, i)].clone();
            v[(r, i)] = v[(r, j)].clone();
            v[(r, j)] = tmp;
        }
    };

    let mut k = 0usize;
    while k < rows && k < cols {
        // move the smallest nonzero of the remaining submatrix to (k, k)
        let mut pivot: Option<(usize, usize)> = None;
        for r in k..rows {
            for c in k..cols {
                if !m[(r, c)].is_zero()
                    && pivot.is_none_or(|(pr, pc)| m[(r, c)].abs() < m[(pr, pc)].abs())
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        swap_rows(&mut m, &mut u, k, pr);
        swap_cols(&mut m, &mut v, k, pc);

        'reduce: loop {
            // clear column k below the pivot
            for r in (k + 1)..rows {
                if !m[(r, k)].is_zero() {
                    let q = div_nearest(&m[(r, k)], &m[(k, k)]);
                    row_sub(&mut m, &mut u, r, k, &q);
                    if !m[(r, k)].is_zero() {
                        swap_rows(&mut m, &mut u, r, k);
                        continue 'reduce;
                    }
                }
            }
            // clear row k right of the pivot
            for c in (k + 1)..cols {
                if !m[(k, c)].is_zero() {
                    let q = div_nearest(&m[(k, c)], &m[(k, k)]);
                    col_sub(&mut m, &mut v, c, k, &q);
                    if !m[(k, c)].is_zero() {
                        swap_cols(&mut m, &mut v, c, k);
                        continue 'reduce;
                    }
                }
            }
            // enforce divisibility of the remaining submatrix by the pivot
            let mut culprit = None;
            'find: for r in (k + 1)..rows {
                for c in (k + 1)..cols {
                    if !(&m[(r, c)] % &m[(k, k)]).is_zero() {
                        culprit = Some(r);
                        break 'find;
                    }
                }
            }
            match culprit {
                Some(r) => {
                    let one = BigInt::from(-1);
                    row_sub(&mut m, &mut u, k, r, &one); // row k += row r
                    continue 'reduce;
                }
                None => break,
            }
        }
        if m[(k, k)].is_negative() {
            for c in 0..cols {
                let x = -&m[(k, c)];
                m[(k, c)] = x;
            }
            for c in 0..rows {
                let x = -&u[(k, c)];
                u[(k, c)] = x;
            }
        }
        k += 1;
    }

    let divisors = (0..k).map(|i| m[(i, i)].clone()).collect();
    SNFResult { divisors, u, v }
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn determinant(a: &IntMatrix) -> BigInt {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            // find a row to swap in
            let swap = ((k + 1)..n).find(|&r| !m[(r, k)].is_zero());
            match swap {
                None => return BigInt::zero(),
                Some(r) => {
                    for c in 0..n {
                        let tmp = m[(k, c)].clone();
                        m[(k, c)] = m[(r, c)].clone();
                        m[(r, c)] = tmp;
                    }
                    sign = -sign;
                }
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[(i, j)] = q;
            }
        }
        for i in (k + 1)..n {
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    sign * m[(n - 1, n - 1)].clone()
}

pub fn is_unimodular(a: &IntMatrix) -> bool {
    a.is_square() && determinant(a).abs().is_one()
}

/// Coefficients of the characteristic polynomial det(xI - A), constant term
/// first, leading coefficient 1; Faddeev-LeVerrier with exact divisions.
pub fn char_poly(a: &IntMatrix) -> Vec<BigInt> {
    assert!(a.is_square());
    let d = a.rows();
    let mut coeffs = vec![BigInt::zero(); d + 1];
    coeffs[d] = BigInt::one();
    let mut m = IntMatrix::zero(d, d);
    for k in 1..=d {
        // M_k = A (M_{k-1} + c_{d-k+1} I)
        let mut shifted = m.clone();
        for i in 0..d {
            let c = coeffs[d - k + 1].clone();
            shifted[(i, i)] += c;
        }
        m = a.mul(&shifted);
        let trace: BigInt = (0..d).map(|i| m[(i, i)].clone()).sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k as i64));
        debug_assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
        coeffs[d - k] = q;
    }
    coeffs
}

/// Inverse of a unimodular matrix through its Smith decomposition:
/// U A V = I implies A^-1 = V U.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    if !a.is_square() {
        return None;
    }
    let s = snf_dense(a);
    if s.rank() != a.rows() || s.divisors.iter().any(|d| !d.is_one()) {
        return None;
    }
    let inv = s.v.mul(&s.u);
    debug_assert!(a.mul(&inv).is_identity());
    Some(inv)
}

/// Basis of the kernel lattice of `a`, one column per basis vector.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = snf_dense(a);
    let r = s.rank();
    let cols = a.cols();
    IntMatrix::from_fn(cols, cols - r, |i, j| s.v[(i, r + j)].clone())
}

/// Exact solve A x = b over the integers; returns None when unsolvable.
/// When A has full column rank the solution is unique.
pub fn solve_exact(s: &SNFResult, rows: usize, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), rows);
    let ub = s.u.mul_vec(b);
    let r = s.rank();
    let mut y = vec![BigInt::zero(); cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < r {
            let (q, rem) = ubi.div_rem(&s.divisors[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

// ---------------------------------------------------------------------------
// Integer chain complexes and homology
// ---------------------------------------------------------------------------

/// Chain complex of finitely generated free Z-modules. `boundaries[k]` is the
/// map C_{k+1} -> C_k; consecutive boundaries compose to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerComplex {
    pub ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl IntegerComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, LinalgError> {
        if boundaries.len() + 1 != ranks.len() && !(ranks.len() <= 1 && boundaries.is_empty()) {
            return Err(LinalgError::DimensionMismatch);
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[k] || b.cols() != ranks[k + 1] {
                return Err(LinalgError::DimensionMismatch);
            }
        }
        let cx = IntegerComplex { ranks, boundaries };
        cx.check_composition()?;
        Ok(cx)
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    /// The boundary C_k -> C_{k-1}; None for k = 0 or k beyond the top.
    pub fn boundary(&self, k: usize) -> Option<&IntMatrix> {
        if k == 0 {
            None
        } else {
            self.boundaries.get(k - 1)
        }
    }

    pub fn check_composition(&self) -> Result<(), LinalgError> {
        for k in 2..=self.top_degree() {
            let lower = self.boundary(k - 1).unwrap();
            let upper = self.boundary(k).unwrap();
            if !lower.mul(upper).is_zero() {
                return Err(LinalgError::CompositionNonzero(k));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// A degree of homology: free rank plus the ordered elementary divisor list
/// (each > 1, each dividing the next), with optional generator data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    #[serde(skip)]
    pub basis: Option<Box<HomologyBasis>>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of generators (torsion then free).
    pub fn generator_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Per-generator orders: the torsion divisors followed by zeros for the
    /// free generators.
    pub fn orders(&self) -> Vec<BigInt> {
        let mut o = self.torsion.clone();
        o.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        o
    }

    /// Same abstract group: equal free rank and equal divisor chains.
    pub fn same_group(&self, other: &HomologyGroup) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Generator data: chain-coordinate representatives of the homology
/// generators and the reduction machinery expressing arbitrary cycles in
/// generator coordinates.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    /// Chain rank of C_k.
    pub chain_rank: usize,
    /// Columns are chain representatives of the generators (torsion first).
    pub generators: IntMatrix,
    /// Columns form a basis of the cycle lattice Z_k.
    pub kernel: IntMatrix,
    kernel_snf: SNFResult,
    /// Rows map kernel coordinates to generator coordinates.
    to_quotient: IntMatrix,
    /// Orders aligned with the generators (0 for free).
    pub orders: Vec<BigInt>,
}

impl HomologyBasis {
    /// Express a cycle in generator coordinates, reduced modulo the orders.
    pub fn reduce_cycle(&self, cycle: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        let y = solve_exact(&self.kernel_snf, self.kernel.rows(), self.kernel.cols(), cycle)
            .ok_or(LinalgError::NotSolvable)?;
        let w = self.to_quotient.mul_vec(&y);
        Ok(w.iter()
            .zip(&self.orders)
            .map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) })
            .collect())
    }
}

/// Homology of the complex in a single degree.
pub fn homology_degree(
    cx: &IntegerComplex,
    k: usize,
    with_basis: bool,
) -> Result<HomologyGroup, LinalgError> {
    let rank_k = *cx.ranks.get(k).unwrap_or(&0);
    // cycle lattice
    let kernel = match cx.boundary(k) {
        Some(b) => kernel_basis(b),
        None => IntMatrix::identity(rank_k),
    };
    let z = kernel.cols();
    let kernel_snf = snf_dense(&kernel);
    // boundaries expressed in kernel coordinates
    let x = match cx.boundary(k + 1) {
        Some(b) => {
            let mut x = IntMatrix::zero(z, b.cols());
            for c in 0..b.cols() {
                let col = b.column(c);
                let y = solve_exact(&kernel_snf, kernel.rows(), kernel.cols(), &col)
                    .ok_or(LinalgError::NotSolvable)?;
                for (r, val) in y.into_iter().enumerate() {
                    x[(r, c)] = val;
                }
            }
            x
        }
        None => IntMatrix::zero(z, 0),
    };
    let sx = snf_dense(&x);
    let r = sx.rank();
    let free_rank = z - r;
    let torsion: Vec<BigInt> = sx.divisors.iter().filter(|d| !d.is_one()).cloned().collect();

    let basis = if with_basis {
        // quotient coordinates w = U_X y; generator positions are the
        // divisors > 1 followed by the free coordinates
        let ux_inv = unimodular_inverse(&sx.u).expect("SNF transform is unimodular");
        let mut kept: Vec<usize> = Vec::new();
        let mut orders: Vec<BigInt> = Vec::new();
        for (i, d) in sx.divisors.iter().enumerate() {
            if !d.is_one() {
                kept.push(i);
                orders.push(d.clone());
            }
        }
        for i in r..z {
            kept.push(i);
            orders.push(BigInt::zero());
        }
        let generators = IntMatrix::from_fn(rank_k, kept.len(), |row, j| {
            // chain coords of generator j: K * (U_X^-1 e_{kept[j]})
            (0..z).map(|m| &kernel[(row, m)] * &ux_inv[(m, kept[j])]).sum()
        });
        let to_quotient =
            IntMatrix::from_fn(kept.len(), z, |j, c| sx.u[(kept[j], c)].clone());
        Some(Box::new(HomologyBasis {
            chain_rank: rank_k,
            generators,
            kernel,
            kernel_snf,
            to_quotient,
            orders,
        }))
    } else {
        None
    };

    Ok(HomologyGroup { degree: k, free_rank, torsion, basis })
}

/// Homology in all degrees 0..=top (or up to `max_degree` when given).
pub fn homology(
    cx: &IntegerComplex,
    max_degree: Option<usize>,
    with_basis: bool,
) -> Result<Vec<HomologyGroup>, LinalgError> {
    cx.check_composition()?;
    let top = cx.top_degree();
    let hi = max_degree.map_or(top, |m| m.min(top));
    (0..=hi).map(|k| homology_degree(cx, k, with_basis)).collect()
}

/// Least N with N * H = 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exponent {
    Finite(u64),
    Infinite(String),
}

impl Exponent {
    pub fn infinite() -> Self {
        Exponent::Infinite("infinite".to_string())
    }

    pub fn divides(&self, n: u64) -> bool {
        match self {
            Exponent::Finite(e) => n % e == 0,
            Exponent::Infinite(_) => false,
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Infinite(_) => write!(f, "infinite"),
        }
    }
}

pub fn annihilator_exponent(h: &HomologyGroup) -> Exponent {
    if h.free_rank > 0 {
        return Exponent::infinite();
    }
    let mut acc = BigInt::one();
    for d in &h.torsion {
        acc = acc.lcm(d);
    }
    Exponent::Finite(u64::try_from(&acc).expect("annihilator exponent exceeds u64"))
}

// ---------------------------------------------------------------------------
// Chain maps and induced maps on homology
// ---------------------------------------------------------------------------

/// A degree-preserving map of integer chain complexes.
#[derive(Debug, Clone)]
pub struct ChainMap {
    /// blocks[k]: source C_k -> target C_k.
    pub blocks: Vec<IntMatrix>,
}

impl ChainMap {
    /// Check commutation with the boundaries in every degree.
    pub fn validate(
        &self,
        source: &IntegerComplex,
        target: &IntegerComplex,
    ) -> Result<(), LinalgError> {
        if self.blocks.len() != source.ranks.len() || source.ranks.len() != target.ranks.len() {
            return Err(LinalgError::DimensionMismatch);
        }
        for k in 1..source.ranks.len() {
            let lhs = target.boundary(k).unwrap().mul(&self.blocks[k]);
            let rhs = self.blocks[k - 1].mul(source.boundary(k).unwrap());
            if lhs != rhs {
                return Err(LinalgError::NotAChainMap(k));
            }
        }
        Ok(())
    }
}

/// An induced homomorphism between two finitely generated abelian groups,
/// written on the SNF-derived generators, entries reduced modulo the target
/// generator orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub matrix: IntMatrix,
    pub source_orders: Vec<BigInt>,
    pub target_orders: Vec<BigInt>,
}

fn reduce_entry(x: &BigInt, order: &BigInt) -> BigInt {
    if order.is_zero() {
        x.clone()
    } else {
        x.mod_floor(order)
    }
}

impl InducedMap {
    fn reduced(matrix: IntMatrix, source_orders: Vec<BigInt>, target_orders: Vec<BigInt>) -> Self {
        let m = IntMatrix::from_fn(matrix.rows(), matrix.cols(), |r, c| {
            reduce_entry(&matrix[(r, c)], &target_orders[r])
        });
        InducedMap { matrix: m, source_orders, target_orders }
    }

    pub fn is_identity(&self) -> bool {
        if self.source_orders != self.target_orders {
            return false;
        }
        let id = IntMatrix::identity(self.target_orders.len());
        self.matrix
            == IntMatrix::from_fn(id.rows(), id.cols(), |r, c| {
                reduce_entry(&id[(r, c)], &self.target_orders[r])
            })
    }

    pub fn is_multiplication_by(&self, k: i64) -> bool {
        if self.source_orders != self.target_orders {
            return false;
        }
        let n = self.target_orders.len();
        let expected = IntMatrix::from_fn(n, n, |r, c| {
            let v = if r == c { BigInt::from(k) } else { BigInt::zero() };
            reduce_entry(&v, &self.target_orders[r])
        });
        self.matrix == expected
    }

    /// Composition self ∘ other.
    pub fn compose(&self, other: &InducedMap) -> InducedMap {
        assert_eq!(self.source_orders, other.target_orders, "incompatible composition");
        InducedMap::reduced(
            self.matrix.mul(&other.matrix),
            other.source_orders.clone(),
            self.target_orders.clone(),
        )
    }

    /// Relation lattice of the target group: columns d_j e_j for the torsion
    /// generators.
    fn target_relations(&self) -> IntMatrix {
        let torsion: Vec<(usize, BigInt)> = self
            .target_orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| (i, d.clone()))
            .collect();
        IntMatrix::from_fn(self.target_orders.len(), torsion.len(), |r, c| {
            if r == torsion[c].0 {
                torsion[c].1.clone()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Does every element of the kernel have order dividing `e`?
    pub fn kernel_exponent_divides(&self, e: u64) -> bool {
        let rel = self.target_relations();
        let stacked = self.matrix.hcat(&rel.neg());
        let ker = kernel_basis(&stacked);
        let e = BigInt::from(e);
        for j in 0..ker.cols() {
            for (i, d) in self.source_orders.iter().enumerate() {
                let scaled = &ker[(i, j)] * &e;
                let ok = if d.is_zero() { scaled.is_zero() } else { (&scaled % d).is_zero() };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Is k * (target group) contained in the image?
    pub fn image_contains_multiples(&self, k: u64) -> bool {
        let rel = self.target_relations();
        let ext = self.matrix.hcat(&rel);
        let s = snf_dense(&ext);
        let k = BigInt::from(k);
        for j in 0..self.target_orders.len() {
            let mut b = vec![BigInt::zero(); self.target_orders.len()];
            b[j] = k.clone();
            if solve_exact(&s, ext.rows(), ext.cols(), &b).is_none() {
                return false;
            }
        }
        true
    }
}

/// The map induced on degree-k homology by a validated chain map. Both
/// homology groups must carry basis data.
pub fn induced_map(
    f: &ChainMap,
    source: &IntegerComplex,
    target: &IntegerComplex,
    source_h: &HomologyGroup,
    target_h: &HomologyGroup,
    k: usize,
) -> Result<InducedMap, LinalgError> {
    f.validate(source, target)?;
    let sb = source_h.basis.as_ref().expect("source homology lacks basis data");
    let tb = target_h.basis.as_ref().expect("target homology lacks basis data");
    let block = &f.blocks[k];
    if block.cols() != sb.chain_rank || block.rows() != tb.chain_rank {
        return Err(LinalgError::DimensionMismatch);
    }
    let images = block.mul(&sb.generators);
    let mut matrix = IntMatrix::zero(target_h.generator_count(), source_h.generator_count());
    for c in 0..images.cols() {
        let coords = tb.reduce_cycle(&images.column(c))?;
        for (r, v) in coords.into_iter().enumerate() {
            matrix[(r, c)] = v;
        }
    }
    let induced =
        InducedMap::reduced(matrix, source_h.orders(), target_h.orders());
    // well-definedness: the order of each source generator annihilates its image
    for (c, d) in induced.source_orders.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        for (r, t) in induced.target_orders.iter().enumerate() {
            let scaled = &induced.matrix[(r, c)] * d;
            let ok = if t.is_zero() { scaled.is_zero() } else { (&scaled % t).is_zero() };
            debug_assert!(ok, "induced map is not well defined");
        }
    }
    Ok(induced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn sparse(rows: usize, cols: usize, vals: &[(usize, usize, i64)]) -> SparseIntMatrix {
        SparseIntMatrix::new(
            rows,
            cols,
            vals.iter().map(|&(r, c, v)| (r, c, BigInt::from(v))).collect(),
        )
    }

    fn check_snf(a: &IntMatrix) -> SNFResult {
        let s = snf_dense(a);
        // reconstruction: U A V = diag(D)
        let lhs = s.u.mul(a).mul(&s.v);
        for r in 0..lhs.rows() {
            for c in 0..lhs.cols() {
                let expected = if r == c && r < s.rank() {
                    s.divisors[r].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(lhs[(r, c)], expected, "SNF reconstruction failed at ({r},{c})");
            }
        }
        assert!(determinant(&s.u).abs().is_one());
        assert!(determinant(&s.v).abs().is_one());
        for w in s.divisors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisor chain violated");
        }
        s
    }

    #[test]
    fn snf_examples() {
        // zero matrix: empty divisor list
        let s = snf(&sparse(3, 2, &[]));
        assert!(s.divisors.is_empty());
        // identity
        let s = snf_dense(&IntMatrix::identity(4));
        assert_eq!(s.divisors, vec![BigInt::one(); 4]);
        // [[2,4],[6,8]] -> (2, 4)
        let a = IntMatrix::from_rows_i64(&[vec![2, 4], vec![6, 8]]);
        let s = check_snf(&a);
        assert_eq!(s.divisors, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn snf_randomized_reconstruction() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..60 {
            let rows = rng.gen_range(1..7);
            let cols = rng.gen_range(1..7);
            let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9i64..=9)));
            check_snf(&a);
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&IntMatrix::identity(3)), BigInt::one());
        let a = IntMatrix::from_rows_i64(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(determinant(&a), BigInt::from(-8));
        let sing = IntMatrix::from_rows_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(determinant(&sing), BigInt::zero());
    }

    #[test]
    fn char_poly_examples() {
        // det(xI - A) for A = [[1,-1],[0,1]] is (x-1)^2 = x^2 - 2x + 1
        let a = IntMatrix::from_rows_i64(&[vec![1, -1], vec![0, 1]]);
        let cp = char_poly(&a);
        assert_eq!(cp, vec![BigInt::from(1), BigInt::from(-2), BigInt::from(1)]);
        // companion-style check against determinant and trace of a 3x3
        let b = IntMatrix::from_rows_i64(&[vec![2, 1, 0], vec![0, 3, 1], vec![1, 0, 1]]);
        let cp = char_poly(&b);
        assert_eq!(cp[3], BigInt::one());
        assert_eq!(cp[2], BigInt::from(-6)); // -trace
        assert_eq!(cp[0], -determinant(&b)); // (-1)^3 det
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let a = IntMatrix::from_rows_i64(&[vec![1, -1], vec![0, 1]]);
        let inv = unimodular_inverse(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        let not_unimodular = IntMatrix::from_rows_i64(&[vec![2, 0], vec![0, 1]]);
        assert!(unimodular_inverse(&not_unimodular).is_none());
    }

    #[test]
    fn kernel_and_solve() {
        let a = IntMatrix::from_rows_i64(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        let s = snf_dense(&a);
        let b = vec![BigInt::from(6), BigInt::from(12)];
        let x = solve_exact(&s, 2, 3, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(solve_exact(&s, 2, 3, &[BigInt::from(1), BigInt::from(1)]).is_none());
    }

    fn cx(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> IntegerComplex {
        IntegerComplex::new(ranks, boundaries).unwrap()
    }

    #[test]
    fn homology_of_multiplication_by_two() {
        // 0 -> Z --(x2)--> Z -> 0: H_0 = Z/2, H_1 = 0
        let complex = cx(vec![1, 1], vec![IntMatrix::from_rows_i64(&[vec![2]])]);
        let h = homology(&complex, None, false).unwrap();
        assert_eq!(h[0].free_rank, 0);
        assert_eq!(h[0].torsion, vec![BigInt::from(2)]);
        assert!(h[1].is_trivial());
        assert_eq!(annihilator_exponent(&h[0]), Exponent::Finite(2));
    }

    #[test]
    fn homology_invariant_under_unimodular_change() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        // random complex: C_1 -> C_0 with arbitrary boundary, then conjugate
        for _ in 0..20 {
            let r0 = rng.gen_range(1..5);
            let r1 = rng.gen_range(1..5);
            let b1 = IntMatrix::from_fn(r0, r1, |_, _| BigInt::from(rng.gen_range(-4i64..=4)));
            let complex = cx(vec![r0, r1], vec![b1.clone()]);
            let h = homology(&complex, None, false).unwrap();
            // random unimodular change of basis on C_0 and C_1
            let mut p0 = IntMatrix::identity(r0);
            let mut p1 = IntMatrix::identity(r1);
            for _ in 0..6 {
                let i = rng.gen_range(0..r0);
                let j = rng.gen_range(0..r0);
                if i != j {
                    let q = BigInt::from(rng.gen_range(-2i64..=2));
                    for c in 0..r0 {
                        let d = &p0[(j, c)] * &q;
                        p0[(i, c)] += d;
                    }
                }
                let i = rng.gen_range(0..r1);
                let j = rng.gen_range(0..r1);
                if i != j {
                    let q = BigInt::from(rng.gen_range(-2i64..=2));
                    for c in 0..r1 {
                        let d = &p1[(j, c)] * &q;
                        p1[(i, c)] += d;
                    }
                }
            }
            let changed = cx(vec![r0, r1], vec![p0.mul(&b1).mul(&unimodular_inverse(&p1).unwrap())]);
            let h2 = homology(&changed, None, false).unwrap();
            for (a, b) in h.iter().zip(&h2) {
                assert!(a.same_group(b));
            }
        }
    }

    #[test]
    fn alternating_sums_match() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let r0 = rng.gen_range(1..4);
            let r1 = rng.gen_range(1..4);
            let b = IntMatrix::from_fn(r0, r1, |_, _| BigInt::from(rng.gen_range(-3i64..=3)));
            let complex = cx(vec![r0, r1], vec![b]);
            let h = homology(&complex, None, false).unwrap();
            let hom_sum: i64 = h
                .iter()
                .map(|g| {
                    let sgn = if g.degree % 2 == 0 { 1 } else { -1 };
                    sgn * g.free_rank as i64
                })
                .sum();
            assert_eq!(hom_sum, complex.euler_characteristic());
        }
    }

    #[test]
    fn annihilator_exponent_examples() {
        let zero = HomologyGroup { degree: 0, free_rank: 0, torsion: vec![], basis: None };
        assert_eq!(annihilator_exponent(&zero), Exponent::Finite(1));
        let t22 = HomologyGroup {
            degree: 0,
            free_rank: 0,
            torsion: vec![BigInt::from(2), BigInt::from(2)],
            basis: None,
        };
        assert_eq!(annihilator_exponent(&t22), Exponent::Finite(2));
        let free = HomologyGroup { degree: 0, free_rank: 1, torsion: vec![], basis: None };
        assert_eq!(annihilator_exponent(&free), Exponent::infinite());
        assert!(!annihilator_exponent(&free).divides(4));
        assert!(annihilator_exponent(&t22).divides(4));
    }

    #[test]
    fn induced_identity_and_scalar() {
        // complex with torsion: Z --(x2)--> Z in degrees 1 -> 0 plus a free Z
        let b = IntMatrix::from_rows_i64(&[vec![2], vec![0]]);
        let complex = cx(vec![2, 1], vec![b]);
        let h = homology(&complex, None, true).unwrap();
        // H_0 = Z/2 + Z
        assert_eq!(h[0].torsion, vec![BigInt::from(2)]);
        assert_eq!(h[0].free_rank, 1);
        let id = ChainMap { blocks: vec![IntMatrix::identity(2), IntMatrix::identity(1)] };
        let m = induced_map(&id, &complex, &complex, &h[0], &h[0], 0).unwrap();
        assert!(m.is_identity());
        let double = ChainMap {
            blocks: vec![
                IntMatrix::identity(2).scale(&BigInt::from(2)),
                IntMatrix::identity(1).scale(&BigInt::from(2)),
            ],
        };
        let m2 = induced_map(&double, &complex, &complex, &h[0], &h[0], 0).unwrap();
        assert!(m2.is_multiplication_by(2));
        assert!(!m2.is_identity());
        // x2 kills Z/2, so its kernel has exponent 2; image contains 2H
        assert!(m2.kernel_exponent_divides(2));
        assert!(m2.image_contains_multiples(2));
        assert!(!m2.image_contains_multiples(1));
        // composition respects products
        let comp = m2.compose(&m);
        assert!(comp.is_multiplication_by(2));
    }

    #[test]
    fn composition_error_paths() {
        let complex = cx(vec![1, 1], vec![IntMatrix::from_rows_i64(&[vec![2]])]);
        let bad = ChainMap {
            blocks: vec![IntMatrix::from_rows_i64(&[vec![1]]), IntMatrix::from_rows_i64(&[vec![3]])],
        };
        assert_eq!(bad.validate(&complex, &complex).unwrap_err(), LinalgError::NotAChainMap(1));
        // non-composing boundaries are rejected
        let b2 = IntMatrix::from_rows_i64(&[vec![1]]);
        let b1 = IntMatrix::from_rows_i64(&[vec![1]]);
        assert_eq!(
            IntegerComplex::new(vec![1, 1, 1], vec![b1, b2]).unwrap_err(),
            LinalgError::CompositionNonzero(2)
        );
    }
}
