//! Weyl-groupoid exploration of a Dynkin diagram of diagonal type: the
//! worklist sweep producing reflection automorphisms, reflected diagrams,
//! support vertices, roots and Shapovalov factors; the Shapovalov determinant
//! over positive roots; and the irreducibility test for induced modules.

use std::collections::HashSet;

use thiserror::Error;

use crate::cyclotomic::CycNum;
use crate::dynkin::{mat_apply, mat_identity, mat_mul, DynkinDiagram, IntMat};
use crate::linalg::point_in_convex_hull;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("diagram reached by walk {walk:?} is not {node}-finite")]
    NotIFinite { node: usize, walk: Vec<usize> },
    #[error("m is infinite at node {node} of the diagram reached by walk {walk:?}")]
    InfiniteM { node: usize, walk: Vec<usize> },
    #[error("automorphism bound {bound} exceeded")]
    BoundExceeded { bound: usize },
    #[error("lattice enumeration supports rank <= 3, got {0}")]
    RankTooLarge(usize),
    #[error("m is infinite for the root {0:?}")]
    InfiniteRootM(Vec<i64>),
}

pub const DEFAULT_BOUND: usize = 100_000;

/// A polynomial factor t_gamma - c with nonzero cyclotomic constant c.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFactor {
    pub exponent: Vec<i64>,
    pub constant: CycNum,
}

impl LinearFactor {
    /// Evaluate t_gamma - c at a tuple of nonzero scalars.
    pub fn eval(&self, r: &[CycNum]) -> CycNum {
        let order = self.constant.order();
        let mut t = CycNum::one(order);
        for (j, &e) in self.exponent.iter().enumerate() {
            if e != 0 {
                t = t.mul(&r[j].pow(e).expect("nonzero evaluation point"));
            }
        }
        t.sub(&self.constant)
    }

    /// The partner factor with the same zero set on nonzero tuples:
    /// t_(-gamma) - c^(-1).
    pub fn inverse_partner(&self) -> LinearFactor {
        LinearFactor {
            exponent: self.exponent.iter().map(|x| -x).collect(),
            constant: self.constant.inv().expect("nonzero constant"),
        }
    }

    /// Normal form under inverse pairing: flips so the first nonzero exponent
    /// is positive.
    pub fn inverse_normalized(&self) -> LinearFactor {
        match self.exponent.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => self.inverse_partner(),
            _ => self.clone(),
        }
    }

    pub fn pretty(&self) -> String {
        let mono: String = {
            let parts: Vec<String> = self
                .exponent
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        format!("t{}", j + 1)
                    } else {
                        format!("t{}^{}", j + 1, e)
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        let c = self.constant.pretty();
        if let Some(stripped) = c.strip_prefix('-') {
            format!("{} + {}", mono, stripped)
        } else {
            format!("{} - {}", mono, c)
        }
    }
}

/// The full state the worklist sweep produces. The lists `s_mats`,
/// `diagrams`, `betas` and `walks` are parallel, in discovery order.
#[derive(Clone, Debug)]
pub struct GroupoidState {
    pub original: DynkinDiagram,
    pub s_mats: Vec<IntMat>,
    pub diagrams: Vec<DynkinDiagram>,
    pub betas: Vec<Vec<i64>>,
    pub walks: Vec<Vec<usize>>,
    /// roots in discovery order
    pub roots: Vec<Vec<i64>>,
    /// factors in discovery order (the order the irreducibility witness uses)
    pub factors: Vec<LinearFactor>,
}

impl GroupoidState {
    pub fn sorted_roots(&self) -> Vec<Vec<i64>> {
        let mut r = self.roots.clone();
        r.sort();
        r
    }

    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let mut r: Vec<Vec<i64>> = self
            .roots
            .iter()
            .filter(|v| v.iter().all(|&x| x >= 0))
            .cloned()
            .collect();
        r.sort();
        r
    }

    pub fn sorted_support(&self) -> Vec<Vec<i64>> {
        let mut b = self.betas.clone();
        b.sort();
        b.dedup();
        b
    }

    pub fn sorted_factors(&self) -> Vec<LinearFactor> {
        let mut f = self.factors.clone();
        f.sort_by(|a, b| {
            a.exponent
                .cmp(&b.exponent)
                .then_with(|| factor_constant_key(a).cmp(&factor_constant_key(b)))
        });
        f
    }
}

fn factor_constant_key(f: &LinearFactor) -> Vec<String> {
    f.constant.coeffs().iter().map(|c| c.to_string()).collect()
}

/// The worklist sweep: starting at the given diagram, walk every reflection,
/// recording automorphisms s, reflected diagrams, support vertices beta,
/// roots s(alpha_j), and the deduplicated Shapovalov factors.
pub fn run_algorithm(d: &DynkinDiagram, bound: usize) -> Result<GroupoidState, GroupoidError> {
    let theta = d.rank();
    let mut state = GroupoidState {
        original: d.clone(),
        s_mats: vec![mat_identity(theta)],
        diagrams: vec![d.clone()],
        betas: vec![vec![0; theta]],
        walks: vec![vec![]],
        roots: Vec::new(),
        factors: Vec::new(),
    };
    let mut seen_s: HashSet<Vec<i64>> = HashSet::new();
    seen_s.insert(flatten(&state.s_mats[0]));
    let mut seen_roots: HashSet<Vec<i64>> = HashSet::new();
    let mut seen_factors: HashSet<(Vec<i64>, CycNum)> = HashSet::new();
    let mut n = 0;
    while n < state.s_mats.len() {
        let s = state.s_mats[n].clone();
        let cur = state.diagrams[n].clone();
        let beta = state.betas[n].clone();
        let walk = state.walks[n].clone();
        for j in 1..=theta {
            if !cur.is_i_finite(j) {
                return Err(GroupoidError::NotIFinite { node: j, walk });
            }
            let m_j = cur
                .m(j)
                .ok_or_else(|| GroupoidError::InfiniteM { node: j, walk: walk.clone() })?;
            let mut unit = vec![0i64; theta];
            unit[j - 1] = 1;
            let gamma = mat_apply(&s, &unit);
            // q' = t_gamma * bichar(beta, gamma) over the ORIGINAL diagram;
            // r is its constant part, q the monic monomial t_gamma
            let r = d.bichar(&beta, &gamma);
            let r_inv = r.inv().expect("bicharacter values are nonzero");
            let dj = cur.vertex(j);
            for m in 1..=m_j as i64 {
                let c = r_inv.mul(&dj.pow(1 - m).expect("nonzero label"));
                let key = (gamma.clone(), c.clone());
                let partner_key = {
                    let neg: Vec<i64> = gamma.iter().map(|x| -x).collect();
                    (neg, c.inv().expect("nonzero constant"))
                };
                if !seen_factors.contains(&key) && !seen_factors.contains(&partner_key) {
                    seen_factors.insert(key);
                    state.factors.push(LinearFactor { exponent: gamma.clone(), constant: c });
                }
            }
            if seen_roots.insert(gamma.clone()) {
                state.roots.push(gamma.clone());
            }
            let s_j = cur
                .s_matrix(j)
                .map_err(|_| GroupoidError::NotIFinite { node: j, walk: walk.clone() })?;
            let s_next = mat_mul(&s, &s_j);
            if seen_s.insert(flatten(&s_next)) {
                if state.s_mats.len() >= bound {
                    return Err(GroupoidError::BoundExceeded { bound });
                }
                let reflected = cur
                    .reflect(j)
                    .map_err(|_| GroupoidError::NotIFinite { node: j, walk: walk.clone() })?;
                let s_next_alpha_j = mat_apply(&s_next, &unit);
                let beta_next: Vec<i64> = beta
                    .iter()
                    .zip(&s_next_alpha_j)
                    .map(|(b, x)| b - m_j as i64 * x)
                    .collect();
                let mut walk_next = walk.clone();
                walk_next.push(j);
                state.s_mats.push(s_next);
                state.diagrams.push(reflected);
                state.betas.push(beta_next);
                state.walks.push(walk_next);
            }
        }
        n += 1;
    }
    Ok(state)
}

/// All roots and positive roots of the diagram.
pub fn roots(
    d: &DynkinDiagram,
    bound: usize,
) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>), GroupoidError> {
    let state = run_algorithm(d, bound)?;
    Ok((state.sorted_roots(), state.positive_roots()))
}

/// The Shapovalov factors a single root gamma contributes:
/// (t_gamma - chi(gamma) chi(gamma,gamma)^(-m)) for m = 1..=m_gamma.
pub fn shapo_factor_for_root(
    d: &DynkinDiagram,
    gamma: &[i64],
) -> Result<Vec<LinearFactor>, GroupoidError> {
    let pair = d.indchar_pair(gamma, gamma);
    let m_gamma = pair
        .label_bound()
        .ok_or_else(|| GroupoidError::InfiniteRootM(gamma.to_vec()))?;
    let chi = d.indchar_vec(gamma);
    let pair_inv = pair.inv().expect("nonzero character value");
    let mut out = Vec::with_capacity(m_gamma as usize);
    let mut p = pair_inv.clone();
    for _ in 1..=m_gamma {
        out.push(LinearFactor { exponent: gamma.to_vec(), constant: chi.mul(&p) });
        p = p.mul(&pair_inv);
    }
    Ok(out)
}

/// The Shapovalov determinant as a multiset of linear factors: the union of
/// the per-root factors over all positive roots.
pub fn shapo_determinant(
    d: &DynkinDiagram,
    bound: usize,
) -> Result<Vec<LinearFactor>, GroupoidError> {
    let (_, positive) = roots(d, bound)?;
    let mut out = Vec::new();
    for gamma in &positive {
        out.extend(shapo_factor_for_root(d, gamma)?);
    }
    Ok(out)
}

/// Irreducibility of the induced module with double-braiding scalars r:
/// true iff every factor of P evaluates to a nonzero value; on failure the
/// first vanishing factor (in discovery order) is the witness.
pub fn is_induced_irreducible(
    d: &DynkinDiagram,
    r: &[CycNum],
    bound: usize,
) -> Result<(bool, Option<LinearFactor>), GroupoidError> {
    let state = run_algorithm(d, bound)?;
    evaluate_irreducibility(&state, r)
}

/// The same test against an already-computed state.
pub fn evaluate_irreducibility(
    state: &GroupoidState,
    r: &[CycNum],
) -> Result<(bool, Option<LinearFactor>), GroupoidError> {
    assert_eq!(r.len(), state.original.rank(), "one scalar per node");
    for f in &state.factors {
        if f.eval(r).is_zero() {
            return Ok((false, Some(f.clone())));
        }
    }
    Ok((true, None))
}

/// The support vertices B, sorted.
pub fn support_vertices(d: &DynkinDiagram, bound: usize) -> Result<Vec<Vec<i64>>, GroupoidError> {
    Ok(run_algorithm(d, bound)?.sorted_support())
}

/// All lattice points of the convex hull of the support vertices, rank <= 3.
pub fn hull_lattice_points(
    d: &DynkinDiagram,
    bound: usize,
) -> Result<Vec<Vec<i64>>, GroupoidError> {
    let theta = d.rank();
    if theta > 3 {
        return Err(GroupoidError::RankTooLarge(theta));
    }
    let vertices = support_vertices(d, bound)?;
    hull_lattice_points_of(&vertices)
}

pub fn hull_lattice_points_of(vertices: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, GroupoidError> {
    if vertices.is_empty() {
        return Ok(Vec::new());
    }
    let theta = vertices[0].len();
    if theta > 3 {
        return Err(GroupoidError::RankTooLarge(theta));
    }
    let mut lo = vec![i64::MAX; theta];
    let mut hi = vec![i64::MIN; theta];
    for v in vertices {
        for (k, &x) in v.iter().enumerate() {
            lo[k] = lo[k].min(x);
            hi[k] = hi[k].max(x);
        }
    }
    let mut out = Vec::new();
    let mut point = lo.clone();
    'scan: loop {
        if point_in_convex_hull(vertices, &point) {
            out.push(point.clone());
        }
        // advance the mixed-radix counter
        for k in (0..theta).rev() {
            if point[k] < hi[k] {
                point[k] += 1;
                for (k2, p) in point.iter_mut().enumerate().skip(k + 1) {
                    *p = lo[k2];
                }
                continue 'scan;
            }
        }
        break;
    }
    out.sort();
    Ok(out)
}

/// Cross-check of the recorded support vertices against the closed path-sum
/// formula: for every recorded walk of length <= 6, the incremental beta must
/// equal the chain-sum expression in the Cartan integers along the walk.
pub fn beta_cross_check(state: &GroupoidState) -> bool {
    for (idx, walk) in state.walks.iter().enumerate() {
        if walk.len() > 6 {
            continue;
        }
        let expected = beta_by_path_sum(&state.original, walk);
        if expected != state.betas[idx] {
            return false;
        }
    }
    true
}

/// beta for a walk (i_1..i_k) by the explicit formula: chain sums over
/// r = b_1 < ... < b_a = l of products of negated Cartan integers taken on
/// the successively reflected diagrams, weighted by the m-values.
pub fn beta_by_path_sum(original: &DynkinDiagram, walk: &[usize]) -> Vec<i64> {
    let theta = original.rank();
    let k = walk.len();
    // along-walk data: diagrams[r] = R_(i_1..i_r)(D), m[r] = m_{i_r} of diagrams[r-1]
    let mut diagrams = Vec::with_capacity(k + 1);
    diagrams.push(original.clone());
    let mut m = vec![0i64; k + 1];
    for (r, &i) in walk.iter().enumerate() {
        m[r + 1] = diagrams[r].m(i).expect("finite m along recorded walk") as i64;
        diagrams.push(diagrams[r].reflect(i).expect("recorded walk is reflectable"));
    }
    // a(r, j) = Cartan integer a_{i_r, j} of the diagram before step r
    let a = |r: usize, j: usize| -> i64 {
        diagrams[r - 1]
            .cartan(walk[r - 1], j)
            .expect("finite Cartan integers along recorded walk")
    };
    let mut beta = vec![0i64; theta];
    for r in 1..=k {
        // coefficient of alpha_{i_r}
        let mut coeff = m[r];
        for l in r + 1..=k {
            // chains r = b_1 < ... < b_a = l over the intermediate steps
            let middle: Vec<usize> = (r + 1..l).collect();
            let mut chain_total = 0i64;
            for mask in 0..(1u32 << middle.len()) {
                let mut chain = vec![r];
                for (bit, &b) in middle.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        chain.push(b);
                    }
                }
                chain.push(l);
                let mut prod = 1i64;
                for c in 0..chain.len() - 1 {
                    prod *= -a(chain[c], walk[chain[c + 1] - 1]);
                }
                chain_total += prod;
            }
            coeff += m[l] * chain_total;
        }
        beta[walk[r - 1] - 1] += coeff;
    }
    beta
}

fn flatten(m: &IntMat) -> Vec<i64> {
    m.iter().flatten().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, e: i64) -> CycNum {
        CycNum::root_of_unity(n, e)
    }

    /// the rank-2 example: D_1 = zeta_3, D_2 = -1, D_12 = -zeta_3 over Q(zeta_6)
    fn example1() -> DynkinDiagram {
        DynkinDiagram::new(6, vec![z(6, 2), z(6, 3)], vec![z(6, 5)]).unwrap()
    }

    fn rank1(order: u64, e: i64) -> DynkinDiagram {
        DynkinDiagram::new(order, vec![z(order, e)], vec![]).unwrap()
    }

    #[test]
    fn example1_full_state() {
        let state = run_algorithm(&example1(), DEFAULT_BOUND).unwrap();
        assert_eq!(state.s_mats.len(), 8);
        let mut roots = state.roots.clone();
        roots.sort();
        let mut expected_roots = vec![
            vec![1, 0],
            vec![0, 1],
            vec![-1, 0],
            vec![2, 1],
            vec![1, 1],
            vec![0, -1],
            vec![-2, -1],
            vec![-1, -1],
        ];
        expected_roots.sort();
        assert_eq!(roots, expected_roots);
        let mut b = state.betas.clone();
        b.sort();
        let mut expected_b = vec![
            vec![0, 0],
            vec![2, 0],
            vec![0, 1],
            vec![4, 1],
            vec![2, 3],
            vec![6, 3],
            vec![4, 4],
            vec![6, 4],
        ];
        expected_b.sort();
        assert_eq!(b, expected_b);
        // P = [t1-1, t1-w^2, t2-1, t1^2 t2-w^2, t1 t2+w^2, t1 t2+1]
        let expected_p: Vec<LinearFactor> = [
            (vec![1, 0], 0),
            (vec![1, 0], 4),
            (vec![0, 1], 0),
            (vec![2, 1], 4),
            (vec![1, 1], 1),
            (vec![1, 1], 3),
        ]
        .into_iter()
        .map(|(exponent, e)| LinearFactor { exponent, constant: z(6, e) })
        .collect();
        assert_eq!(state.factors.len(), 6);
        for f in &expected_p {
            assert!(state.factors.contains(f), "missing factor {}", f.pretty());
        }
    }

    #[test]
    fn example1_walk_trace() {
        // the walk bookkeeping matches the reference step-by-step run
        let state = run_algorithm(&example1(), DEFAULT_BOUND).unwrap();
        let find = |walk: &[usize]| -> usize {
            state.walks.iter().position(|w| w == walk).expect("walk recorded")
        };
        assert_eq!(state.betas[find(&[])], vec![0, 0]);
        assert_eq!(state.betas[find(&[1])], vec![2, 0]);
        assert_eq!(state.betas[find(&[2])], vec![0, 1]);
        assert_eq!(state.betas[find(&[1, 2])], vec![4, 1]);
        assert_eq!(state.betas[find(&[2, 1])], vec![2, 3]);
        assert_eq!(state.betas[find(&[1, 2, 1])], vec![6, 3]);
        assert_eq!(state.betas[find(&[2, 1, 2])], vec![4, 4]);
        assert_eq!(state.betas[find(&[1, 2, 1, 2])], vec![6, 4]);
        // s_(1212) = -id
        let idx = find(&[1, 2, 1, 2]);
        assert_eq!(state.s_mats[idx], crate::dynkin::mat_neg_identity(2));
    }

    #[test]
    fn example1_positive_roots() {
        let (_, positive) = roots(&example1(), DEFAULT_BOUND).unwrap();
        assert_eq!(positive, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn rank1_roots_and_factors() {
        let d = rank1(3, 1);
        let (all, positive) = roots(&d, DEFAULT_BOUND).unwrap();
        assert_eq!(all, vec![vec![-1], vec![1]]);
        assert_eq!(positive, vec![vec![1]]);
        // factors {t_1 - 1, t_1 - zeta_3^2}
        let factors = shapo_determinant(&d, DEFAULT_BOUND).unwrap();
        assert_eq!(factors.len(), 2);
        let constants: Vec<CycNum> = factors.iter().map(|f| f.constant.clone()).collect();
        assert!(constants.contains(&CycNum::one(3)));
        assert!(constants.contains(&z(3, 2)));
        // D_1 = 1 has infinite m
        let bad = rank1(3, 0);
        assert!(matches!(
            shapo_determinant(&bad, DEFAULT_BOUND).unwrap_err(),
            GroupoidError::InfiniteM { .. }
        ));
    }

    #[test]
    fn factor_examples_per_root() {
        let d = example1();
        // gamma = (1,1): chi_pair = zeta_3^2, m = 2, constants -zeta_3^2 and -1
        let f = shapo_factor_for_root(&d, &[1, 1]).unwrap();
        assert_eq!(f.len(), 2);
        let constants: Vec<CycNum> = f.iter().map(|x| x.constant.clone()).collect();
        assert!(constants.contains(&z(6, 1)));
        assert!(constants.contains(&z(6, 3)));
        // gamma = (1,0): {t_1 - 1, t_1 - zeta_3^2}
        let f = shapo_factor_for_root(&d, &[1, 0]).unwrap();
        let constants: Vec<CycNum> = f.iter().map(|x| x.constant.clone()).collect();
        assert!(constants.contains(&CycNum::one(6)));
        assert!(constants.contains(&z(6, 4)));
        // gamma = (0,1): {t_2 - 1}
        let f = shapo_factor_for_root(&d, &[0, 1]).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[0].constant.is_one());
    }

    #[test]
    fn determinant_matches_p_as_normalized_set() {
        let d = example1();
        let state = run_algorithm(&d, DEFAULT_BOUND).unwrap();
        let det = shapo_determinant(&d, DEFAULT_BOUND).unwrap();
        assert_eq!(det.len(), 6);
        let normalize = |fs: &[LinearFactor]| -> Vec<(Vec<i64>, CycNum)> {
            let mut v: Vec<(Vec<i64>, CycNum)> = fs
                .iter()
                .map(|f| {
                    let n = f.inverse_normalized();
                    (n.exponent, n.constant)
                })
                .collect();
            v.sort_by(|a, b| {
                a.0.cmp(&b.0)
                    .then_with(|| format!("{:?}", a.1).cmp(&format!("{:?}", b.1)))
            });
            v
        };
        assert_eq!(normalize(&state.factors), normalize(&det));
    }

    #[test]
    fn irreducibility_examples() {
        let d = example1();
        let state = run_algorithm(&d, DEFAULT_BOUND).unwrap();
        // r = (1, 1): reducible, first witness t_1 - 1
        let (ok, witness) =
            evaluate_irreducibility(&state, &[CycNum::one(6), CycNum::one(6)]).unwrap();
        assert!(!ok);
        let w = witness.unwrap();
        assert_eq!(w.exponent, vec![1, 0]);
        assert!(w.constant.is_one());
        assert_eq!(w.pretty(), "t1 - 1");
        // r = (zeta_3, zeta_3): irreducible
        let (ok, witness) = evaluate_irreducibility(&state, &[z(6, 2), z(6, 2)]).unwrap();
        assert!(ok);
        assert!(witness.is_none());
        // r = (zeta_3, zeta_3^2): irreducible (all six factors evaluate nonzero)
        let (ok, _) = evaluate_irreducibility(&state, &[z(6, 2), z(6, 4)]).unwrap();
        assert!(ok);
    }

    #[test]
    fn support_and_lattice_points_example1() {
        let d = example1();
        let b = support_vertices(&d, DEFAULT_BOUND).unwrap();
        assert_eq!(b.len(), 8);
        let points = hull_lattice_points(&d, DEFAULT_BOUND).unwrap();
        let mut expected: Vec<Vec<i64>> = vec![
            vec![0, 0],
            vec![1, 0],
            vec![2, 0],
            vec![0, 1],
            vec![1, 1],
            vec![2, 1],
            vec![3, 1],
            vec![4, 1],
            vec![1, 2],
            vec![2, 2],
            vec![3, 2],
            vec![4, 2],
            vec![5, 2],
            vec![2, 3],
            vec![3, 3],
            vec![4, 3],
            vec![5, 3],
            vec![6, 3],
            vec![4, 4],
            vec![5, 4],
            vec![6, 4],
        ];
        expected.sort();
        assert_eq!(points, expected);
        assert!(points.contains(&vec![3, 2]));
        assert!(points.contains(&vec![5, 4]));
        assert_eq!(points.len(), 21);
    }

    #[test]
    fn rank1_support() {
        let d = rank1(3, 1);
        let b = support_vertices(&d, DEFAULT_BOUND).unwrap();
        assert_eq!(b, vec![vec![0], vec![2]]);
        let points = hull_lattice_points(&d, DEFAULT_BOUND).unwrap();
        assert_eq!(points, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn beta_cross_check_example1() {
        let d = example1();
        let state = run_algorithm(&d, DEFAULT_BOUND).unwrap();
        assert!(beta_cross_check(&state));
        // spot values straight from the path-sum formula
        assert_eq!(beta_by_path_sum(&d, &[]), vec![0, 0]);
        assert_eq!(beta_by_path_sum(&d, &[1]), vec![2, 0]);
        assert_eq!(beta_by_path_sum(&d, &[2, 1]), vec![2, 3]);
    }

    #[test]
    fn root_negation_closure() {
        for d in [example1(), rank1(3, 1), rank1(4, 1)] {
            let (all, positive) = roots(&d, DEFAULT_BOUND).unwrap();
            let mut mirrored: Vec<Vec<i64>> = positive
                .iter()
                .map(|v| v.iter().map(|x| -x).collect())
                .chain(positive.iter().cloned())
                .collect();
            mirrored.sort();
            mirrored.dedup();
            assert_eq!(all, mirrored);
        }
    }

    #[test]
    fn dedup_soundness_no_inverse_pairs() {
        let state = run_algorithm(&example1(), DEFAULT_BOUND).unwrap();
        for (i, f) in state.factors.iter().enumerate() {
            let partner = f.inverse_partner();
            for (j, g) in state.factors.iter().enumerate() {
                if i != j {
                    assert_ne!(g, &partner, "inverse pair stored twice");
                }
            }
        }
    }

    #[test]
    fn state_consistency_pullback() {
        // X[n] must equal the diagram recomputed from S[n] via the pullback
        let state = run_algorithm(&example1(), DEFAULT_BOUND).unwrap();
        for (idx, s) in state.s_mats.iter().enumerate() {
            let d = &state.original;
            let theta = d.rank();
            for j in 1..=theta {
                let mut ej = vec![0i64; theta];
                ej[j - 1] = 1;
                let sj = mat_apply(s, &ej);
                assert_eq!(
                    state.diagrams[idx].vertex(j),
                    &d.indchar_pair(&sj, &sj),
                    "vertex pullback at state {idx}, node {j}"
                );
                for k in j + 1..=theta {
                    let mut ek = vec![0i64; theta];
                    ek[k - 1] = 1;
                    let sk = mat_apply(s, &ek);
                    assert_eq!(
                        state.diagrams[idx].edge(j, k),
                        &d.bichar(&sj, &sk),
                        "edge pullback at state {idx}, nodes ({j},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            run_algorithm(&example1(), 3).unwrap_err(),
            GroupoidError::BoundExceeded { bound: 3 }
        ));
    }

    #[test]
    fn lattice_points_with_negative_box() {
        // hull spanning negative coordinates: the scan must start at the
        // lower corner, not at the origin
        let tri = vec![vec![-2, -1], vec![0, 1], vec![2, -1]];
        let points = hull_lattice_points_of(&tri).unwrap();
        assert!(points.contains(&vec![-2, -1]));
        assert!(points.contains(&vec![0, 0]));
        assert!(points.contains(&vec![0, 1]));
        assert!(!points.contains(&vec![-2, 1]));
        assert_eq!(points.len(), 9);
        // degenerate input: a single vertex
        let single = hull_lattice_points_of(&[vec![3, 4]]).unwrap();
        assert_eq!(single, vec![vec![3, 4]]);
    }

    #[test]
    fn factor_eval_with_negative_exponents() {
        let f = LinearFactor { exponent: vec![-1, 2], constant: z(6, 1) };
        // at r = (zeta_6, zeta_6): zeta_6^(-1) zeta_6^2 - zeta_6 = 0
        let v = f.eval(&[z(6, 1), z(6, 1)]);
        assert!(v.is_zero());
        let g = f.inverse_normalized();
        assert_eq!(g.exponent, vec![1, -2]);
        assert_eq!(g.constant, z(6, 5));
    }
}
