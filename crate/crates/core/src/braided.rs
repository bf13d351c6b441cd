//! Braided vector spaces of diagonal and rack/cocycle type, evaluation of
//! braid words and sums as exact linear operators on tensor powers, and the
//! graded components of the associated Nichols algebra as images of the
//! braided symmetrizers.
//!
//! Both space kinds act monomially: a braid generator sends a basis tuple to
//! a scalar multiple of a basis tuple. Everything downstream exploits this:
//! operators are stored column-sparse and tensor powers decompose into
//! orbit blocks that are echelonized independently.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::braid::{BraidSum, BraidWord};
use crate::cyclotomic::CycNum;
use crate::linalg::{
    kernel_from_columns, sparse_axpy, Echelon, ModKernelSolver, SolveError, SparseVec,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BvsError {
    #[error("invalid braided space: {0}")]
    InvalidSpace(String),
    #[error("tensor power too large: {needed} basis tuples exceeds the cap {cap}")]
    ResourceExceeded { needed: u128, cap: u128 },
    #[error("braid letter {letter} out of range for degree {degree}")]
    LetterOutOfRange { letter: usize, degree: usize },
    #[error("projection failed: {0}")]
    Projection(#[from] SolveError),
}

/// Default cap on the number of tensor basis tuples.
pub const DEFAULT_TENSOR_CAP: u128 = 1_000_000;

/// A finite-dimensional braided vector space with evaluable braiding.
#[derive(Clone, Debug)]
pub enum BraidedSpace {
    /// c(x_i (x) x_j) = q[i][j] x_j (x) x_i
    Diagonal { order: u64, q: Vec<Vec<CycNum>> },
    /// c(x_i (x) x_j) = cocycle[i][j] x_{i|>j} (x) x_i
    Rack {
        order: u64,
        quandle: Vec<Vec<usize>>,
        cocycle: Vec<Vec<CycNum>>,
    },
}

impl BraidedSpace {
    pub fn diagonal(order: u64, q: Vec<Vec<CycNum>>) -> Result<Self, BvsError> {
        let d = q.len();
        if d == 0 {
            return Err(BvsError::InvalidSpace("dimension must be positive".into()));
        }
        for (i, row) in q.iter().enumerate() {
            if row.len() != d {
                return Err(BvsError::InvalidSpace(format!("q-matrix row {i} has wrong length")));
            }
            for (j, entry) in row.iter().enumerate() {
                if entry.order() != order {
                    return Err(BvsError::InvalidSpace(format!(
                        "q[{i}][{j}] has cyclotomic order {} but the space declares {order}",
                        entry.order()
                    )));
                }
                if entry.is_zero() {
                    return Err(BvsError::InvalidSpace(format!("q[{i}][{j}] = 0")));
                }
            }
        }
        Ok(BraidedSpace::Diagonal { order, q })
    }

    pub fn rack(
        order: u64,
        quandle: Vec<Vec<usize>>,
        cocycle: Vec<Vec<CycNum>>,
    ) -> Result<Self, BvsError> {
        let d = quandle.len();
        if d == 0 {
            return Err(BvsError::InvalidSpace("dimension must be positive".into()));
        }
        for (i, row) in quandle.iter().enumerate() {
            if row.len() != d {
                return Err(BvsError::InvalidSpace(format!("quandle row {i} has wrong length")));
            }
            let mut seen = vec![false; d];
            for &v in row {
                if v >= d || seen[v] {
                    return Err(BvsError::InvalidSpace(format!(
                        "quandle row {i} is not a permutation of 0..{d}"
                    )));
                }
                seen[v] = true;
            }
            if row[i] != i {
                return Err(BvsError::InvalidSpace(format!(
                    "quandle not idempotent: {i} |> {i} = {} != {i}",
                    row[i]
                )));
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = quandle[i][quandle[j][k]];
                    let rhs = quandle[quandle[i][j]][quandle[i][k]];
                    if lhs != rhs {
                        return Err(BvsError::InvalidSpace(format!(
                            "self-distributivity fails at triple ({i}, {j}, {k}): \
                             {i}|>({j}|>{k}) = {lhs} but ({i}|>{j})|>({i}|>{k}) = {rhs}"
                        )));
                    }
                }
            }
        }
        if cocycle.len() != d || cocycle.iter().any(|r| r.len() != d) {
            return Err(BvsError::InvalidSpace("cocycle table has wrong shape".into()));
        }
        for (i, row) in cocycle.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if entry.order() != order {
                    return Err(BvsError::InvalidSpace(format!(
                        "cocycle[{i}][{j}] has cyclotomic order {} but the space declares {order}",
                        entry.order()
                    )));
                }
                if entry.is_zero() {
                    return Err(BvsError::InvalidSpace(format!("cocycle[{i}][{j}] = 0")));
                }
            }
        }
        let space = BraidedSpace::Rack { order, quandle, cocycle };
        // the cocycle condition is exactly the braid equation on V^(x)3
        space.check_braid_equation()?;
        Ok(space)
    }

    fn check_braid_equation(&self) -> Result<(), BvsError> {
        let d = self.dim();
        let w1 = BraidWord::new(vec![1, 2, 1], 3);
        let w2 = BraidWord::new(vec![2, 1, 2], 3);
        for t in 0..d * d * d {
            let tuple = decode(t, d, 3);
            let a = self.apply_word_to_tuple(&w1, &tuple);
            let b = self.apply_word_to_tuple(&w2, &tuple);
            if a != b {
                return Err(BvsError::InvalidSpace(format!(
                    "braid equation fails on basis tuple {:?}",
                    tuple
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            BraidedSpace::Diagonal { q, .. } => q.len(),
            BraidedSpace::Rack { quandle, .. } => quandle.len(),
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            BraidedSpace::Diagonal { order, .. } | BraidedSpace::Rack { order, .. } => *order,
        }
    }

    /// Action of one braid generator on adjacent factors (a, b).
    pub fn braiding(&self, a: usize, b: usize) -> (usize, usize, CycNum) {
        match self {
            BraidedSpace::Diagonal { q, .. } => (b, a, q[a][b].clone()),
            BraidedSpace::Rack { quandle, cocycle, .. } => (quandle[a][b], a, cocycle[a][b].clone()),
        }
    }

    /// Apply a single generator c_i to a basis tuple (positions i-1, i).
    pub fn apply_generator(&self, i: usize, tuple: &mut [usize], scalar: &mut CycNum) {
        let (x, y, c) = self.braiding(tuple[i - 1], tuple[i]);
        tuple[i - 1] = x;
        tuple[i] = y;
        *scalar = scalar.mul(&c);
    }

    /// Apply a braid word (rightmost letter first) to a basis tuple.
    pub fn apply_word_to_tuple(&self, w: &BraidWord, tuple: &[usize]) -> (Vec<usize>, CycNum) {
        let mut t = tuple.to_vec();
        let mut scalar = CycNum::one(self.order());
        for &letter in w.letters.iter().rev() {
            self.apply_generator(letter, &mut t, &mut scalar);
        }
        (t, scalar)
    }
}

pub fn decode(rank: usize, dim: usize, degree: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    let mut r = rank;
    for slot in (0..degree).rev() {
        t[slot] = r % dim;
        r /= dim;
    }
    t
}

pub fn encode(tuple: &[usize], dim: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * dim + x)
}

fn checked_power(dim: usize, degree: usize, cap: u128) -> Result<usize, BvsError> {
    let mut p: u128 = 1;
    for _ in 0..degree {
        p *= dim as u128;
        if p > cap {
            return Err(BvsError::ResourceExceeded { needed: p, cap });
        }
    }
    Ok(p as usize)
}

/// An exact linear operator on the degree-n tensor power, stored column-sparse:
/// `cols[source]` lists the (target, scalar) entries of the image of the
/// source basis tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorMap {
    pub degree: usize,
    pub dim: usize,
    pub order: u64,
    pub cols: Vec<SparseVec>,
}

impl TensorMap {
    pub fn ambient_dim(&self) -> usize {
        self.cols.len()
    }

    pub fn identity(space: &BraidedSpace, degree: usize) -> Self {
        let d = space.dim();
        let total = d.pow(degree as u32);
        let cols = (0..total)
            .map(|i| vec![(i, CycNum::one(space.order()))])
            .collect();
        TensorMap { degree, dim: d, order: space.order(), cols }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
        for (i, c) in v {
            for (j, m) in &self.cols[*i] {
                let add = m.mul(c);
                acc.entry(*j)
                    .and_modify(|x| *x = x.add(&add))
                    .or_insert(add);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn add(&self, other: &TensorMap) -> TensorMap {
        assert_eq!(self.degree, other.degree);
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| crate::linalg::sparse_axpy(a, &CycNum::one(self.order), b))
            .collect();
        TensorMap { degree: self.degree, dim: self.dim, order: self.order, cols }
    }

    pub fn scale(&self, c: &CycNum) -> TensorMap {
        let cols = self
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(i, x)| (*i, x.mul(c)))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        TensorMap { degree: self.degree, dim: self.dim, order: self.order, cols }
    }

    /// Operator composition self after other: (self . other)(v) = self(other(v)).
    pub fn compose(&self, other: &TensorMap) -> TensorMap {
        assert_eq!(self.degree, other.degree);
        let cols = other.cols.iter().map(|col| self.apply(col)).collect();
        TensorMap { degree: self.degree, dim: self.dim, order: self.order, cols }
    }

    /// id_V (x) self: the same operator on strands 2..degree+1.
    pub fn prepend_identity(&self) -> TensorMap {
        let d = self.dim;
        let block = self.cols.len();
        let mut cols = Vec::with_capacity(block * d);
        for first in 0..d {
            for src in 0..block {
                cols.push(
                    self.cols[src]
                        .iter()
                        .map(|(t, c)| (first * block + t, c.clone()))
                        .collect(),
                );
            }
        }
        TensorMap { degree: self.degree + 1, dim: d, order: self.order, cols }
    }

    /// self (x) id_V: the same operator on strands 1..degree.
    pub fn append_identity(&self) -> TensorMap {
        let d = self.dim;
        let block = self.cols.len();
        let mut cols = Vec::with_capacity(block * d);
        for src in 0..block {
            for last in 0..d {
                cols.push(
                    self.cols[src]
                        .iter()
                        .map(|(t, c)| (t * d + last, c.clone()))
                        .collect(),
                );
            }
        }
        TensorMap { degree: self.degree + 1, dim: d, order: self.order, cols }
    }
}

fn validate_letters(sum_or_word_letters: &[usize], degree: usize) -> Result<(), BvsError> {
    for &letter in sum_or_word_letters {
        if letter == 0 || letter >= degree {
            return Err(BvsError::LetterOutOfRange { letter, degree });
        }
    }
    Ok(())
}

/// Evaluate a braid word as an operator on the degree-n tensor power;
/// generators compose right-to-left.
pub fn eval_word(space: &BraidedSpace, w: &BraidWord, degree: usize) -> Result<TensorMap, BvsError> {
    eval_word_capped(space, w, degree, DEFAULT_TENSOR_CAP)
}

pub fn eval_word_capped(
    space: &BraidedSpace,
    w: &BraidWord,
    degree: usize,
    cap: u128,
) -> Result<TensorMap, BvsError> {
    validate_letters(&w.letters, degree)?;
    let d = space.dim();
    let total = checked_power(d, degree, cap)?;
    let mut cols = Vec::with_capacity(total);
    for src in 0..total {
        let tuple = decode(src, d, degree);
        let (target, scalar) = space.apply_word_to_tuple(w, &tuple);
        debug_assert!(!scalar.is_zero());
        cols.push(vec![(encode(&target, d), scalar)]);
    }
    Ok(TensorMap { degree, dim: d, order: space.order(), cols })
}

/// Evaluate a braid sum: the integer-coefficient-weighted sum of its words.
pub fn eval_sum(space: &BraidedSpace, s: &BraidSum, degree: usize) -> Result<TensorMap, BvsError> {
    eval_sum_capped(space, s, degree, DEFAULT_TENSOR_CAP)
}

pub fn eval_sum_capped(
    space: &BraidedSpace,
    s: &BraidSum,
    degree: usize,
    cap: u128,
) -> Result<TensorMap, BvsError> {
    for (w, _) in s.terms() {
        validate_letters(&w.letters, degree)?;
    }
    let d = space.dim();
    let order = space.order();
    let total = checked_power(d, degree, cap)?;
    let mut cols = Vec::with_capacity(total);
    for src in 0..total {
        let tuple = decode(src, d, degree);
        let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
        for (w, coeff) in s.terms() {
            let (target, scalar) = space.apply_word_to_tuple(w, &tuple);
            let add = scalar.scale(&num_rational::BigRational::from_integer(coeff.into()));
            acc.entry(encode(&target, d))
                .and_modify(|x| *x = x.add(&add))
                .or_insert(add);
        }
        cols.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
    }
    Ok(TensorMap { degree, dim: d, order, cols })
}

/// Apply a braid sum to a single sparse vector without materializing the
/// whole operator.
pub fn apply_sum_to_vec(
    space: &BraidedSpace,
    s: &BraidSum,
    degree: usize,
    v: &SparseVec,
) -> Result<SparseVec, BvsError> {
    for (w, _) in s.terms() {
        validate_letters(&w.letters, degree)?;
    }
    let d = space.dim();
    let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
    for (src, c) in v {
        let tuple = decode(*src, d, degree);
        for (w, coeff) in s.terms() {
            let (target, scalar) = space.apply_word_to_tuple(w, &tuple);
            let add = scalar
                .scale(&num_rational::BigRational::from_integer(coeff.into()))
                .mul(c);
            acc.entry(encode(&target, d))
                .and_modify(|x| *x = x.add(&add))
                .or_insert(add);
        }
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

/// The evaluated braided symmetrizer S_n.
pub fn symmetrizer_map(space: &BraidedSpace, n: usize) -> Result<TensorMap, BvsError> {
    symmetrizer_map_capped(space, n, DEFAULT_TENSOR_CAP)
}

pub fn symmetrizer_map_capped(
    space: &BraidedSpace,
    n: usize,
    cap: u128,
) -> Result<TensorMap, BvsError> {
    eval_sum_capped(space, &crate::braid::symmetrizer_cached(n), n, cap)
}

/// Orbit blocks of the tensor basis under the underlying index action of the
/// braid generators. Every braid word maps a block into itself, so
/// symmetrizer images and kernels split along blocks.
pub fn tensor_blocks(space: &BraidedSpace, degree: usize, total: usize) -> Vec<Vec<usize>> {
    let d = space.dim();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for src in 0..total {
        let tuple = decode(src, d, degree);
        for i in 1..degree {
            let mut t = tuple.clone();
            let mut s = CycNum::one(space.order());
            space.apply_generator(i, &mut t, &mut s);
            let dst = encode(&t, d);
            let (a, b) = (find(&mut parent, src), find(&mut parent, dst));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..total {
        let root = find(&mut parent, x);
        blocks.entry(root).or_default().push(x);
    }
    blocks.into_values().collect()
}

/// A graded component of the Nichols algebra: the image of S_n in the degree-n
/// tensor power, with its reduced echelon basis.
#[derive(Clone, Debug)]
pub struct NicholsComponent {
    pub degree: usize,
    /// reduced echelon basis vectors of the column space of S_n
    pub basis: Vec<SparseVec>,
    pub rank: usize,
    pub ambient_dim: usize,
}

/// Compute the image of the braided symmetrizer in reduced echelon form,
/// together with a kernel basis (both are needed to work in the quotient
/// V^(x)n / ker S_n, which the image represents).
pub fn component_with_kernel(
    space: &BraidedSpace,
    n: usize,
    cap: u128,
) -> Result<(NicholsComponent, Vec<SparseVec>), BvsError> {
    let d = space.dim();
    let total = checked_power(d, n, cap)?;
    let order = space.order();
    if n == 0 {
        // the unit line
        return Ok((
            NicholsComponent {
                degree: 0,
                basis: vec![vec![(0, CycNum::one(order))]],
                rank: 1,
                ambient_dim: 1,
            },
            Vec::new(),
        ));
    }
    let smap = symmetrizer_map_capped(space, n, cap)?;
    let blocks = tensor_blocks(space, n, total);
    let mut basis: Vec<SparseVec> = Vec::new();
    let mut kernel: Vec<SparseVec> = Vec::new();
    for block in &blocks {
        // image: echelonize the block's columns (supports stay inside the block)
        let mut ech = Echelon::new();
        for &src in block {
            ech.insert(&smap.cols[src]);
        }
        basis.extend(ech.rows().iter().cloned());
        // kernel: local elimination, then remap indices back to global
        let local_cols: Vec<SparseVec> = block
            .iter()
            .map(|&src| {
                smap.cols[src]
                    .iter()
                    .map(|(t, c)| {
                        let local = block.binary_search(t).expect("block closure");
                        (local, c.clone())
                    })
                    .collect::<Vec<_>>()
            })
            .map(|mut v: SparseVec| {
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect();
        for kv in kernel_from_columns(&local_cols, block.len(), order) {
            let mut global: SparseVec =
                kv.into_iter().map(|(i, c)| (block[i], c)).collect();
            global.sort_by_key(|(i, _)| *i);
            kernel.push(global);
        }
    }
    basis.sort_by_key(|row| row.first().map(|(i, _)| *i).unwrap_or(usize::MAX));
    kernel.sort_by_key(|row| row.first().map(|(i, _)| *i).unwrap_or(usize::MAX));
    let rank = basis.len();
    Ok((
        NicholsComponent { degree: n, basis, rank, ambient_dim: total },
        kernel,
    ))
}

/// The degree-n component of the Nichols algebra of the space.
pub fn nichols_component(space: &BraidedSpace, n: usize) -> Result<NicholsComponent, BvsError> {
    nichols_component_capped(space, n, DEFAULT_TENSOR_CAP)
}

pub fn nichols_component_capped(
    space: &BraidedSpace,
    n: usize,
    cap: u128,
) -> Result<NicholsComponent, BvsError> {
    Ok(component_with_kernel(space, n, cap)?.0)
}

/// Graded ranks dim N^n for n = 0..=max_degree.
pub fn graded_ranks(
    space: &BraidedSpace,
    max_degree: usize,
    cap: u128,
) -> Result<Vec<usize>, BvsError> {
    (0..=max_degree)
        .map(|n| Ok(nichols_component_capped(space, n, cap)?.rank))
        .collect()
}

/// Projects tensor vectors onto component coordinates, solving
/// v = sum a_i b_i modulo ker S_n. Construction performs the eliminations
/// once; `project` is then cheap.
pub struct ComponentProjector {
    solver: ModKernelSolver,
    pub rank: usize,
}

impl ComponentProjector {
    pub fn new(
        space: &BraidedSpace,
        comp: &NicholsComponent,
        kernel: &[SparseVec],
    ) -> Result<Self, BvsError> {
        let solver = ModKernelSolver::new(&comp.basis, kernel, space.order())?;
        Ok(ComponentProjector { solver, rank: comp.rank })
    }

    pub fn project(&self, v: &SparseVec) -> Result<Vec<CycNum>, BvsError> {
        Ok(self.solver.solve(v)?)
    }

    /// Lift component coordinates back to the tensor representative
    /// sum a_i b_i given the component basis.
    pub fn lift(coords: &[CycNum], comp: &NicholsComponent, order: u64) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (a, b) in coords.iter().zip(&comp.basis) {
            if !a.is_zero() {
                acc = sparse_axpy(&acc, a, b);
            }
        }
        let _ = order;
        acc
    }
}

/// One-shot projection of a single vector onto the class coordinates of the
/// component. Callers with many vectors should build a `ComponentProjector`.
pub fn project_to_component(
    space: &BraidedSpace,
    comp: &NicholsComponent,
    kernel: &[SparseVec],
    v: &SparseVec,
) -> Result<Vec<CycNum>, BvsError> {
    ComponentProjector::new(space, comp, kernel)?.project(v)
}

/// The quandle of transpositions of S_n with the sign 2-cocycle
/// q(pi, (i j)) = 1 if pi(i) < pi(j), else -1. For n in {3, 4, 5} the Nichols
/// algebras of these spaces are the Fomin-Kirillov algebras.
pub fn transposition_quandle_space(n: usize, order: u64) -> Result<BraidedSpace, BvsError> {
    if !order.is_multiple_of(2) {
        return Err(BvsError::InvalidSpace(
            "the sign cocycle needs -1, so the cyclotomic order must be even".into(),
        ));
    }
    let mut transpositions = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            transpositions.push((i, j));
        }
    }
    let d = transpositions.len();
    let conj = |pi: (usize, usize), sigma: (usize, usize)| -> (usize, usize) {
        let apply = |x: usize| {
            if x == pi.0 {
                pi.1
            } else if x == pi.1 {
                pi.0
            } else {
                x
            }
        };
        let (a, b) = (apply(sigma.0), apply(sigma.1));
        (a.min(b), a.max(b))
    };
    let mut quandle = vec![vec![0; d]; d];
    let mut cocycle = vec![vec![CycNum::one(order); d]; d];
    for (a, &pi) in transpositions.iter().enumerate() {
        for (b, &sigma) in transpositions.iter().enumerate() {
            let image = conj(pi, sigma);
            quandle[a][b] = transpositions.iter().position(|&t| t == image).unwrap();
            let apply = |x: usize| {
                if x == pi.0 {
                    pi.1
                } else if x == pi.1 {
                    pi.0
                } else {
                    x
                }
            };
            // sigma = (i j) with i < j
            let positive = apply(sigma.0) < apply(sigma.1);
            cocycle[a][b] = if positive {
                CycNum::one(order)
            } else {
                CycNum::from_integer(order, -1)
            };
        }
    }
    BraidedSpace::rack(order, quandle, cocycle)
}

/// The affine quandle Z/m with i |> j = g j + (1 - g) i and the constant
/// cocycle -1. The dimension-1280 Nichols algebra arises at m = 5, g = 2.
pub fn affine_quandle_space(m: usize, g: usize, order: u64) -> Result<BraidedSpace, BvsError> {
    if !order.is_multiple_of(2) {
        return Err(BvsError::InvalidSpace(
            "the constant cocycle -1 needs an even cyclotomic order".into(),
        ));
    }
    let one_minus_g = (m + 1 - (g % m)) % m;
    let mut quandle = vec![vec![0; m]; m];
    for i in 0..m {
        for j in 0..m {
            quandle[i][j] = (g * j + one_minus_g * i) % m;
        }
    }
    let cocycle = vec![vec![CycNum::from_integer(order, -1); m]; m];
    BraidedSpace::rack(order, quandle, cocycle)
}

/// A pseudorandom diagonal space with labels zeta_order^e, deterministic in
/// the provided generator.
pub fn random_diagonal_space(
    dim: usize,
    order: u64,
    rng: &mut impl rand::Rng,
) -> BraidedSpace {
    let q: Vec<Vec<CycNum>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| CycNum::root_of_unity(order, rng.gen_range(0..order) as i64))
                .collect()
        })
        .collect();
    BraidedSpace::diagonal(order, q).expect("roots of unity are nonzero")
}
