//! Exact sparse linear algebra over a fixed cyclotomic field: reduced
//! echelonization, kernels, span membership and a small exact LP feasibility
//! test for convex-hull membership of lattice points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::CycNum;

/// Sparse vector: (index, nonzero scalar) pairs sorted by index.
pub type SparseVec = Vec<(usize, CycNum)>;

pub fn sparse_from_dense(v: &[CycNum]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize, order: u64) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(order); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn sparse_scale(v: &SparseVec, c: &CycNum) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.mul(c))).collect()
}

/// a + c * b, merging sorted supports.
pub fn sparse_axpy(a: &SparseVec, c: &CycNum, b: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ia, va)), Some((ib, vb))) => {
                if ia < ib {
                    out.push((*ia, va.clone()));
                    i += 1;
                } else if ib < ia {
                    out.push((*ib, vb.mul(c)));
                    j += 1;
                } else {
                    let s = va.add(&vb.mul(c));
                    if !s.is_zero() {
                        out.push((*ia, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((ia, va)), None) => {
                out.push((*ia, va.clone()));
                i += 1;
            }
            (None, Some((ib, vb))) => {
                out.push((*ib, vb.mul(c)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// An incrementally built reduced row echelon basis. Rows are normalized to
/// pivot 1; pivots are leftmost; insertion keeps the basis fully reduced, so
/// the final row set is the unique RREF basis of the span.
pub struct Echelon {
    /// rows sorted by pivot column; parallel `pivots`
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Default for Echelon {
    fn default() -> Self {
        Self::new()
    }
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduce v against the current rows (eliminating all pivot coordinates).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        loop {
            // find first coordinate of v that is a pivot column
            let mut hit = None;
            for (i, c) in v.iter() {
                if let Ok(r) = self.pivots.binary_search(i) {
                    hit = Some((r, c.clone()));
                    break;
                }
            }
            let Some((r, c)) = hit else {
                return v;
            };
            v = sparse_axpy(&v, &c.neg(), &self.rows[r]);
        }
    }

    /// Reduce and record the elimination coefficients against the basis rows:
    /// returns (residue, coeffs) with v = residue + sum coeffs[r] * rows[r].
    pub fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, Vec<CycNum>) {
        let order = order_of(v).unwrap_or(1);
        let mut coeffs = vec![CycNum::zero(order); self.rows.len()];
        let mut v = v.clone();
        loop {
            let mut hit = None;
            for (i, c) in v.iter() {
                if let Ok(r) = self.pivots.binary_search(i) {
                    hit = Some((r, c.clone()));
                    break;
                }
            }
            let Some((r, c)) = hit else {
                return (v, coeffs);
            };
            if coeffs[r].order() != c.order() {
                coeffs[r] = CycNum::zero(c.order());
            }
            coeffs[r] = coeffs[r].add(&c);
            v = sparse_axpy(&v, &c.neg(), &self.rows[r]);
        }
    }

    /// Insert a vector into the span; returns true when it enlarged the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        // normalize to pivot 1
        let (pivot, lead) = (v[0].0, v[0].1.clone());
        let inv = lead.inv().expect("nonzero leading scalar");
        v = sparse_scale(&v, &inv);
        // back-substitute into existing rows to keep the basis reduced
        for row in self.rows.iter_mut() {
            if let Some(pos) = row.iter().position(|(i, _)| *i == pivot) {
                let c = row[pos].1.clone();
                *row = sparse_axpy(row, &c.neg(), &v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }

    /// True when v lies in the span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

fn order_of(v: &SparseVec) -> Option<u64> {
    v.first().map(|(_, c)| c.order())
}

/// Reduced echelon basis of the span of the given vectors.
pub fn rref_span(vectors: impl IntoIterator<Item = SparseVec>) -> Echelon {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(&v);
    }
    ech
}

/// Kernel basis of the linear map given by columns, as vectors of length
/// `ncols`. The matrix rows are echelonized; each free column yields one
/// kernel vector, normalized with a 1 in the free coordinate. Kernel vectors
/// are returned in increasing free-column order; the result is the RREF basis
/// of the kernel (up to coordinate ordering conventions it is canonical).
pub fn kernel_from_columns(columns: &[SparseVec], ncols: usize, order: u64) -> Vec<SparseVec> {
    // transpose to rows
    let mut rows_map: std::collections::BTreeMap<usize, SparseVec> = Default::default();
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col {
            rows_map.entry(*i).or_default().push((j, c.clone()));
        }
    }
    let ech = rref_span(rows_map.into_values());
    let pivot_set: Vec<usize> = ech.pivots().to_vec();
    let mut kernel = Vec::new();
    for free in 0..ncols {
        if pivot_set.binary_search(&free).is_ok() {
            continue;
        }
        // v[free] = 1, v[pivot_r] = -row_r[free]
        let mut v: SparseVec = vec![(free, CycNum::one(order))];
        for (r, row) in ech.rows().iter().enumerate() {
            if let Some((_, c)) = row.iter().find(|(j, _)| *j == free) {
                v.push((pivot_set[r], c.neg()));
            }
        }
        v.sort_by_key(|(i, _)| *i);
        kernel.push(v);
    }
    kernel
}

/// Solver for coordinates modulo a subspace: given a spanning family B
/// (classes assumed independent modulo K) and the subspace K, expresses
/// vectors v as sum a_i b_i modulo K.
pub struct ModKernelSolver {
    kernel: Echelon,
    reduced_basis: Echelon,
    /// coefficient bookkeeping: reduced_basis row r = sum over i of
    /// basis_coeffs[r][i] * (b_i reduced mod K)
    basis_coeffs: Vec<Vec<CycNum>>,
    order: u64,
    basis_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("basis classes are linearly dependent modulo the kernel")]
    DependentBasis,
    #[error("vector class does not lie in the span of the basis classes")]
    Inconsistent,
}

impl ModKernelSolver {
    pub fn new(
        basis: &[SparseVec],
        kernel_vectors: &[SparseVec],
        order: u64,
    ) -> Result<Self, SolveError> {
        let kernel = rref_span(kernel_vectors.iter().cloned());
        let mut reduced_basis = Echelon::new();
        let mut basis_coeffs: Vec<Vec<CycNum>> = Vec::new();
        for (i, b) in basis.iter().enumerate() {
            let reduced = kernel.reduce(b);
            // track: reduced = residue + sum coeffs[r] * existing rows
            let (residue, coeffs) = reduced_basis.reduce_tracked(&reduced);
            if residue.is_empty() {
                return Err(SolveError::DependentBasis);
            }
            let lead_inv = residue[0].1.inv().expect("nonzero lead");
            let normalized = sparse_scale(&residue, &lead_inv);
            // normalized = (reduced - sum coeffs[r] rows[r]) / lead
            let mut unit = vec![CycNum::zero(order); basis.len()];
            unit[i] = CycNum::one(order);
            for (r, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    for (k, old) in basis_coeffs[r].clone().into_iter().enumerate() {
                        unit[k] = unit[k].sub(&old.mul(c));
                    }
                }
            }
            let row_coeffs: Vec<CycNum> = unit.iter().map(|u| u.mul(&lead_inv)).collect();
            // back-substitution inside insert changes earlier rows; replay it here
            let pivot = normalized[0].0;
            for (r, row) in reduced_basis.rows.iter().enumerate() {
                if let Some(pos) = row.iter().position(|(p, _)| *p == pivot) {
                    let c = row[pos].1.clone();
                    for k in 0..basis.len() {
                        let delta = row_coeffs[k].mul(&c);
                        basis_coeffs[r][k] = basis_coeffs[r][k].sub(&delta);
                    }
                }
            }
            let inserted = reduced_basis.insert(&normalized);
            assert!(inserted);
            let at = reduced_basis.pivots.binary_search(&pivot).unwrap();
            basis_coeffs.insert(at, row_coeffs);
        }
        Ok(ModKernelSolver {
            kernel,
            reduced_basis,
            basis_coeffs,
            order,
            basis_len: basis.len(),
        })
    }

    pub fn kernel(&self) -> &Echelon {
        &self.kernel
    }

    /// Coordinates a with v = sum a_i b_i modulo the kernel.
    pub fn solve(&self, v: &SparseVec) -> Result<Vec<CycNum>, SolveError> {
        let reduced = self.kernel.reduce(v);
        let (residue, coeffs) = self.reduced_basis.reduce_tracked(&reduced);
        if !residue.is_empty() {
            return Err(SolveError::Inconsistent);
        }
        let mut out = vec![CycNum::zero(self.order); self.basis_len];
        for (r, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, bc) in self.basis_coeffs[r].iter().enumerate() {
                if !bc.is_zero() {
                    out[k] = out[k].add(&bc.mul(c));
                }
            }
        }
        Ok(out)
    }
}

/// Exact feasibility test: is p a convex combination of the given points?
/// Solved as a phase-1 simplex with Bland's rule over exact rationals.
pub fn point_in_convex_hull(points: &[Vec<i64>], p: &[i64]) -> bool {
    let dim = p.len();
    let n = points.len();
    if n == 0 {
        return false;
    }
    // constraints: sum_i l_i * points[i] = p, sum_i l_i = 1, l_i >= 0
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(dim + 1);
    let mut b: Vec<BigRational> = Vec::with_capacity(dim + 1);
    for d in 0..dim {
        a.push(points.iter().map(|q| BigRational::from_integer(BigInt::from(q[d]))).collect());
        b.push(BigRational::from_integer(BigInt::from(p[d])));
    }
    a.push(vec![BigRational::one(); n]);
    b.push(BigRational::one());
    lp_feasible_eq_nonneg(a, b)
}

/// Feasibility of { A x = b, x >= 0 } by phase-1 simplex with Bland's rule.
fn lp_feasible_eq_nonneg(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let m = a.len();
    let n = if m > 0 { a[0].len() } else { 0 };
    // make b nonnegative
    for r in 0..m {
        if b[r].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
            b[r] = -b[r].clone();
        }
    }
    // tableau with artificial variables; objective: minimize their sum
    let total = n + m;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for r in 0..m {
        let mut row = a[r].clone();
        for r2 in 0..m {
            row.push(if r2 == r { BigRational::one() } else { BigRational::zero() });
        }
        row.push(b[r].clone());
        tab.push(row);
    }
    // objective row: z = sum of artificials; express in terms of nonbasic vars
    let mut obj = vec![BigRational::zero(); total + 1];
    for r in 0..m {
        for c in 0..n {
            obj[c] -= &tab[r][c];
        }
        obj[total] -= &tab[r][total];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Bland: entering = smallest index with negative reduced cost
    while let Some(enter) = (0..total).find(|&c| obj[c].is_negative()) {
        // ratio test; Bland tie-break on smallest basis variable
        let mut best: Option<(BigRational, usize, usize)> = None;
        for r in 0..m {
            if tab[r][enter].is_positive() {
                let ratio = &tab[r][total] / &tab[r][enter];
                let key = (ratio.clone(), basis[r]);
                match &best {
                    None => best = Some((key.0, key.1, r)),
                    Some((br, bv, _)) => {
                        if key.0 < *br || (key.0 == *br && key.1 < *bv) {
                            best = Some((key.0, key.1, r));
                        }
                    }
                }
            }
        }
        let Some((_, _, leave)) = best else {
            // unbounded phase-1 cannot happen with artificials, treat as infeasible
            return false;
        };
        // pivot
        let piv = tab[leave][enter].clone();
        for x in tab[leave].iter_mut() {
            *x /= piv.clone();
        }
        for r in 0..m {
            if r != leave && !tab[r][enter].is_zero() {
                let f = tab[r][enter].clone();
                let src = tab[leave].clone();
                for (c, s) in src.iter().enumerate() {
                    let d = s * &f;
                    tab[r][c] -= d;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            let src = tab[leave].clone();
            for (c, s) in src.iter().enumerate() {
                let d = s * &f;
                obj[c] -= d;
            }
        }
        basis[leave] = enter;
    }
    // feasible iff optimum of artificial sum is 0
    obj[total].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(order: u64, n: i64) -> CycNum {
        CycNum::from_integer(order, n)
    }

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, v)| (i, c(4, v))).collect()
    }

    #[test]
    fn echelon_rank_and_reduce() {
        let mut e = Echelon::new();
        assert!(e.insert(&sv(&[(0, 1), (1, 2)])));
        assert!(e.insert(&sv(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&sv(&[(0, 2), (1, 6), (2, 2)])));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), &[0, 1]);
        // rows are fully reduced: row 0 has no coordinate 1
        assert!(e.rows()[0].iter().all(|(i, _)| *i != 1));
    }

    #[test]
    fn kernel_of_rank_deficient_map() {
        // columns of [[1,0,1],[0,1,1]] as a map on 3 columns
        let cols = vec![sv(&[(0, 1)]), sv(&[(1, 1)]), sv(&[(0, 1), (1, 1)])];
        let k = kernel_from_columns(&cols, 3, 4);
        assert_eq!(k.len(), 1);
        // kernel = span (1,1,-1) normalized with free column 2
        let dense = sparse_to_dense(&k[0], 3, 4);
        assert_eq!(dense[2], c(4, 1));
        assert_eq!(dense[0], c(4, -1));
        assert_eq!(dense[1], c(4, -1));
    }

    #[test]
    fn solve_mod_kernel() {
        // basis b1 = e0, b2 = e1; kernel = span(e2)
        let basis = vec![sv(&[(0, 1)]), sv(&[(1, 1)])];
        let kernel = vec![sv(&[(2, 1)])];
        let solver = ModKernelSolver::new(&basis, &kernel, 4).unwrap();
        let v = sv(&[(0, 3), (1, -2), (2, 7)]);
        let coords = solver.solve(&v).unwrap();
        assert_eq!(coords, vec![c(4, 3), c(4, -2)]);
        // basis vectors solve to unit coordinates
        assert_eq!(solver.solve(&basis[0]).unwrap(), vec![c(4, 1), c(4, 0)]);
        // a vector outside span + kernel is inconsistent
        let bad = sv(&[(3, 1)]);
        assert_eq!(solver.solve(&bad).unwrap_err(), SolveError::Inconsistent);
    }

    #[test]
    fn solve_mod_kernel_nontrivial_mix() {
        // basis classes overlap the kernel coordinates
        let basis = vec![sv(&[(0, 1), (2, 5)]), sv(&[(1, 1), (2, -1)])];
        let kernel = vec![sv(&[(2, 1), (3, 1)])];
        let solver = ModKernelSolver::new(&basis, &kernel, 4).unwrap();
        // v = 2*b1 + 3*b2 + kernel vector
        let v = {
            let t = sparse_axpy(&sparse_scale(&basis[0], &c(4, 2)), &c(4, 3), &basis[1]);
            sparse_axpy(&t, &c(4, 9), &kernel[0])
        };
        assert_eq!(solver.solve(&v).unwrap(), vec![c(4, 2), c(4, 3)]);
    }

    #[test]
    fn dependent_basis_detected() {
        let basis = vec![sv(&[(0, 1), (2, 1)]), sv(&[(0, 1)])];
        // kernel contains e2, so b1 and b2 coincide modulo it
        let kernel = vec![sv(&[(2, 1)])];
        match ModKernelSolver::new(&basis, &kernel, 4) {
            Err(e) => assert_eq!(e, SolveError::DependentBasis),
            Ok(_) => panic!("dependent basis must be rejected"),
        }
    }

    #[test]
    fn hull_membership_2d() {
        let square = vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2]];
        assert!(point_in_convex_hull(&square, &[1, 1]));
        assert!(point_in_convex_hull(&square, &[0, 0]));
        assert!(point_in_convex_hull(&square, &[2, 1]));
        assert!(!point_in_convex_hull(&square, &[3, 1]));
        assert!(!point_in_convex_hull(&square, &[-1, 0]));
        // degenerate: collinear points
        let seg = vec![vec![0, 0], vec![4, 2]];
        assert!(point_in_convex_hull(&seg, &[2, 1]));
        assert!(!point_in_convex_hull(&seg, &[2, 2]));
    }

    #[test]
    fn hull_membership_3d() {
        let tet = vec![vec![0, 0, 0], vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]];
        assert!(point_in_convex_hull(&tet, &[1, 1, 1]));
        assert!(!point_in_convex_hull(&tet, &[2, 2, 2]));
    }
}
