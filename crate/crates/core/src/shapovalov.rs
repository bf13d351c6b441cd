//! The Shapovalov morphism of the subalgebra generated by one node, computed
//! on graded components through the shuffle elements g_{n,k}: on the degree
//! n+1 component the morphism acts as (1-lambda) sum_k (-lambda)^k g_{n,k}.
//! Includes the graded kernel (the maximal-subobject component) and the
//! degree-2 orbit classification for group-type braidings.

use thiserror::Error;

use crate::braid::gnk_def;
use crate::braided::{
    apply_sum_to_vec, component_with_kernel, encode, BraidedSpace, BvsError, ComponentProjector,
    NicholsComponent, DEFAULT_TENSOR_CAP,
};
use crate::cyclotomic::CycNum;
use crate::linalg::{kernel_from_columns, sparse_axpy, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapoError {
    #[error(transparent)]
    Bvs(#[from] BvsError),
    #[error("degree 0 rejected: the morphism is the identity scalar there")]
    DegreeZero,
    #[error("degree {degree} exceeds the configured maximum {max}")]
    DegreeExceedsMax { degree: usize, max: usize },
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("lambda and the space must live in the same cyclotomic field")]
    MixedOrders,
    #[error("lambda = 1 is outside the degree-2 classification's hypotheses")]
    LambdaOne,
    #[error("no closure: iterating the braiding on pair ({i}, {j}) did not return to its span within {cap} steps")]
    NoClosure { i: usize, j: usize, cap: usize },
}

/// The data of one node subalgebra: the braided space N_i, the double-braiding
/// scalar lambda, and the degree range to explore.
#[derive(Clone, Debug)]
pub struct ShapoConfig {
    pub space: BraidedSpace,
    pub lambda: CycNum,
    pub max_degree: usize,
    pub tensor_cap: u128,
}

impl ShapoConfig {
    pub fn new(space: BraidedSpace, lambda: CycNum, max_degree: usize) -> Result<Self, ShapoError> {
        if lambda.is_zero() {
            return Err(ShapoError::ZeroLambda);
        }
        if lambda.order() != space.order() {
            return Err(ShapoError::MixedOrders);
        }
        Ok(ShapoConfig { space, lambda, max_degree, tensor_cap: DEFAULT_TENSOR_CAP })
    }
}

/// The morphism restricted to one graded component, in component coordinates.
#[derive(Clone, Debug)]
pub struct ComponentMap {
    pub degree: usize,
    pub component: NicholsComponent,
    /// kernel of S_degree in the ambient tensor power (the quotient datum)
    pub symmetrizer_kernel: Vec<SparseVec>,
    /// column j holds the coordinates of f(b_j)
    pub matrix: Vec<Vec<CycNum>>,
}

impl ComponentMap {
    /// Nullspace of the component matrix, as vectors of component coordinates.
    pub fn kernel(&self) -> Vec<Vec<CycNum>> {
        let order = self.matrix_order();
        let rank = self.component.rank;
        let cols: Vec<SparseVec> = self
            .matrix
            .iter()
            .map(|col| {
                col.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect()
            })
            .collect();
        kernel_from_columns(&cols, rank, order)
            .into_iter()
            .map(|kv| {
                let mut dense = vec![CycNum::zero(order); rank];
                for (i, c) in kv {
                    dense[i] = c;
                }
                dense
            })
            .collect()
    }

    fn matrix_order(&self) -> u64 {
        self.matrix
            .first()
            .and_then(|c| c.first())
            .map(|c| c.order())
            .unwrap_or(1)
    }
}

/// Build the morphism on the degree-d component: lift each basis class to its
/// tensor representative, apply (1-lambda) sum_k (-lambda)^k g_{d-1,k}, and
/// project back (well-defined because each g_{n,k} preserves ker S_{n+1}).
pub fn shapo_map(cfg: &ShapoConfig, degree: usize) -> Result<ComponentMap, ShapoError> {
    if degree == 0 {
        return Err(ShapoError::DegreeZero);
    }
    if degree > cfg.max_degree {
        return Err(ShapoError::DegreeExceedsMax { degree, max: cfg.max_degree });
    }
    let order = cfg.space.order();
    let (component, symmetrizer_kernel) =
        component_with_kernel(&cfg.space, degree, cfg.tensor_cap)?;
    let projector = ComponentProjector::new(&cfg.space, &component, &symmetrizer_kernel)?;
    let n = degree - 1;
    let one_minus_lambda = CycNum::one(order).sub(&cfg.lambda);
    // weights (-lambda)^k for k = 0..=n
    let mut weights = Vec::with_capacity(n + 1);
    let minus_lambda = cfg.lambda.neg();
    let mut w = CycNum::one(order);
    for _ in 0..=n {
        weights.push(w.clone());
        w = w.mul(&minus_lambda);
    }
    let g_sums: Vec<_> = (0..=n).map(|k| gnk_def(n, k as i64)).collect();
    let mut matrix = Vec::with_capacity(component.rank);
    for b in &component.basis {
        let mut image: SparseVec = Vec::new();
        for (k, weight) in weights.iter().enumerate() {
            if weight.is_zero() {
                continue;
            }
            let gb = apply_sum_to_vec(&cfg.space, &g_sums[k], degree, b)?;
            image = sparse_axpy(&image, weight, &gb);
        }
        let scaled: SparseVec = image
            .into_iter()
            .map(|(i, c)| (i, c.mul(&one_minus_lambda)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        matrix.push(projector.project(&scaled)?);
    }
    Ok(ComponentMap { degree, component, symmetrizer_kernel, matrix })
}

/// Per-degree kernels of the morphism for degrees 1..=max_degree.
#[derive(Clone, Debug)]
pub struct GradedKernel {
    /// kernel dimension per degree, index 0 holding degree 1
    pub dims: Vec<usize>,
    /// kernel bases in component coordinates, parallel to `dims`
    pub bases: Vec<Vec<Vec<CycNum>>>,
    /// the component maps themselves, for callers needing the bases' context
    pub maps: Vec<ComponentMap>,
}

pub fn shapo_kernel(cfg: &ShapoConfig) -> Result<GradedKernel, ShapoError> {
    let mut dims = Vec::new();
    let mut bases = Vec::new();
    let mut maps = Vec::new();
    for degree in 1..=cfg.max_degree {
        let map = shapo_map(cfg, degree)?;
        let kernel = map.kernel();
        dims.push(kernel.len());
        bases.push(kernel);
        maps.push(map);
    }
    Ok(GradedKernel { dims, bases, maps })
}

/// The c_1-orbit of a basis pair: minimal m with the iterates x(x)y,
/// c_1(x(x)y), ..., c_1^m(x(x)y) independent and c_1^(m+1)(x(x)y) = q x(x)y.
/// For monomial braidings the iterates are scalar multiples of distinct basis
/// pairs, so independence is automatic and closure is a cycle return.
#[derive(Clone, Debug)]
pub struct OrbitData {
    pub seed: (usize, usize),
    pub m: usize,
    pub q: CycNum,
    /// c_1^k (x (x) y) for k = 0..=m, as degree-2 tensor vectors
    pub orbit_vectors: Vec<SparseVec>,
}

pub fn orbit_classify(space: &BraidedSpace, i: usize, j: usize) -> Result<OrbitData, ShapoError> {
    let d = space.dim();
    assert!(i < d && j < d, "basis indices in range");
    let cap = d * d;
    let mut pair = (i, j);
    let mut scalar = CycNum::one(space.order());
    let mut orbit_vectors: Vec<SparseVec> = vec![vec![(encode(&[i, j], d), CycNum::one(space.order()))]];
    for _ in 0..cap {
        let (a, b, c) = space.braiding(pair.0, pair.1);
        pair = (a, b);
        scalar = scalar.mul(&c);
        if pair == (i, j) {
            let m = orbit_vectors.len() - 1;
            return Ok(OrbitData { seed: (i, j), m, q: scalar, orbit_vectors });
        }
        orbit_vectors.push(vec![(encode(&[pair.0, pair.1], d), scalar.clone())]);
    }
    Err(ShapoError::NoClosure { i, j, cap })
}

/// All braiding orbits on basis pairs, one representative each, representatives
/// chosen as the lexicographically first unvisited pair.
pub fn classify_all_orbits(space: &BraidedSpace) -> Result<Vec<OrbitData>, ShapoError> {
    let d = space.dim();
    let mut seen = vec![false; d * d];
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if seen[encode(&[i, j], d)] {
                continue;
            }
            let orbit = orbit_classify(space, i, j)?;
            for v in &orbit.orbit_vectors {
                seen[v[0].0] = true;
            }
            out.push(orbit);
        }
    }
    Ok(out)
}

/// The degree-2 kernel lines the orbit classification predicts: per orbit,
/// a line exists iff q != (-1)^(m+1) and q lambda^(m+1) = 1, with element
/// sum_k lambda^k c_1^k(xy), or q = (-1)^(m+1) and sum_l (-1)^l lambda^l = 0,
/// with element sum_{k>=1} (sum_{l<k} (-1)^(k-1-l) lambda^l) c_1^k(xy); the
/// element is returned in component coordinates of N^2.
pub fn degree2_kernel_predicted(
    cfg: &ShapoConfig,
) -> Result<Vec<(OrbitData, Option<Vec<CycNum>>)>, ShapoError> {
    if cfg.lambda.is_one() {
        return Err(ShapoError::LambdaOne);
    }
    let order = cfg.space.order();
    let (component, kernel) = component_with_kernel(&cfg.space, 2, cfg.tensor_cap)?;
    let projector = ComponentProjector::new(&cfg.space, &component, &kernel)?;
    let orbits = classify_all_orbits(&cfg.space)?;
    let minus_one = CycNum::from_integer(order, -1);
    let mut out = Vec::new();
    for orbit in orbits {
        let m = orbit.m;
        let sign = if (m + 1) % 2 == 0 { CycNum::one(order) } else { minus_one.clone() };
        let mut element: Option<SparseVec> = None;
        if orbit.q != sign {
            // line iff q lambda^(m+1) = 1
            if orbit.q.mul(&cfg.lambda.pow(m as i64 + 1).unwrap()).is_one() {
                let mut acc: SparseVec = Vec::new();
                let mut lk = CycNum::one(order);
                for v in orbit.orbit_vectors.iter() {
                    acc = sparse_axpy(&acc, &lk, v);
                    lk = lk.mul(&cfg.lambda);
                }
                element = Some(acc);
            }
        } else {
            // line iff sum_{l=0}^m (-1)^l lambda^l = 0
            let mut alt = CycNum::zero(order);
            let mut term = CycNum::one(order);
            for _ in 0..=m {
                alt = alt.add(&term);
                term = term.mul(&minus_one).mul(&cfg.lambda);
            }
            if alt.is_zero() {
                let mut acc: SparseVec = Vec::new();
                for (k, v) in orbit.orbit_vectors.iter().enumerate().skip(1) {
                    // coefficient sum_{l=0}^{k-1} (-1)^(k-1-l) lambda^l
                    let mut coeff = CycNum::zero(order);
                    let mut lam = CycNum::one(order);
                    for l in 0..k {
                        let s = if (k - 1 - l) % 2 == 0 {
                            lam.clone()
                        } else {
                            lam.neg()
                        };
                        coeff = coeff.add(&s);
                        lam = lam.mul(&cfg.lambda);
                    }
                    acc = sparse_axpy(&acc, &coeff, v);
                }
                element = Some(acc);
            }
        }
        let coords = match element {
            Some(v) => {
                let coords = projector.project(&v)?;
                if coords.iter().all(|c| c.is_zero()) {
                    None
                } else {
                    Some(coords)
                }
            }
            None => None,
        };
        out.push((orbit, coords));
    }
    Ok(out)
}
