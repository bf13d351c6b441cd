//! Dynkin diagrams of diagonal type: vertex/edge labels in a cyclotomic
//! field, Cartan integers, i-finiteness, reflections, (bi)characters and the
//! monomial entries of reflected extended diagrams.

use thiserror::Error;

use crate::cyclotomic::CycNum;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynkinError {
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("diagram is not {node}-finite")]
    NotIFinite { node: usize },
}

/// theta x theta integer matrices acting on Z^theta; column j holds the
/// image of the j-th unit vector.
pub type IntMat = Vec<Vec<i64>>;

pub fn mat_identity(theta: usize) -> IntMat {
    (0..theta)
        .map(|r| (0..theta).map(|c| i64::from(r == c)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = (0..n).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

pub fn mat_apply(a: &IntMat, v: &[i64]) -> Vec<i64> {
    let n = a.len();
    (0..n).map(|r| (0..n).map(|k| a[r][k] * v[k]).sum()).collect()
}

pub fn mat_neg_identity(theta: usize) -> IntMat {
    (0..theta)
        .map(|r| (0..theta).map(|c| if r == c { -1 } else { 0 }).collect())
        .collect()
}

/// A labelled complete graph on theta vertices: vertex labels D_j and edge
/// labels D_jk, all nonzero, with the diagonal D_jj = D_j^2 derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    theta: usize,
    order: u64,
    vertex: Vec<CycNum>,
    /// full symmetric table; [j][j] holds D_j^2
    edge: Vec<Vec<CycNum>>,
}

impl DynkinDiagram {
    /// Build from vertex labels and the upper-triangular edge list
    /// (row-major: (1,2), (1,3), ..., (1,theta), (2,3), ...).
    pub fn new(
        order: u64,
        vertex: Vec<CycNum>,
        upper_edges: Vec<CycNum>,
    ) -> Result<Self, DynkinError> {
        let theta = vertex.len();
        if theta == 0 {
            return Err(DynkinError::Invalid("rank must be positive".into()));
        }
        let expected = theta * (theta - 1) / 2;
        if upper_edges.len() != expected {
            return Err(DynkinError::Invalid(format!(
                "expected {expected} edge labels for rank {theta}, got {}",
                upper_edges.len()
            )));
        }
        for (j, v) in vertex.iter().enumerate() {
            if v.is_zero() {
                return Err(DynkinError::Invalid(format!("vertex label {} is zero", j + 1)));
            }
            if v.order() != order {
                return Err(DynkinError::Invalid(format!(
                    "vertex label {} has cyclotomic order {} but the diagram declares {order}",
                    j + 1,
                    v.order()
                )));
            }
        }
        let mut edge = vec![vec![CycNum::zero(order); theta]; theta];
        let mut it = upper_edges.into_iter();
        for j in 0..theta {
            edge[j][j] = vertex[j].mul(&vertex[j]);
            for k in j + 1..theta {
                let e = it.next().unwrap();
                if e.is_zero() {
                    return Err(DynkinError::Invalid(format!(
                        "edge label ({}, {}) is zero",
                        j + 1,
                        k + 1
                    )));
                }
                if e.order() != order {
                    return Err(DynkinError::Invalid(format!(
                        "edge label ({}, {}) has cyclotomic order {} but the diagram declares {order}",
                        j + 1,
                        k + 1,
                        e.order()
                    )));
                }
                edge[j][k] = e.clone();
                edge[k][j] = e;
            }
        }
        Ok(DynkinDiagram { theta, order, vertex, edge })
    }

    pub fn rank(&self) -> usize {
        self.theta
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// D_j, one-based.
    pub fn vertex(&self, j: usize) -> &CycNum {
        &self.vertex[j - 1]
    }

    /// D_jk, one-based, symmetric, with D_jj = D_j^2.
    pub fn edge(&self, j: usize, k: usize) -> &CycNum {
        &self.edge[j - 1][k - 1]
    }

    /// Upper-triangular edge labels in row-major order.
    pub fn upper_edges(&self) -> Vec<CycNum> {
        let mut out = Vec::with_capacity(self.theta * (self.theta - 1) / 2);
        for j in 0..self.theta {
            for k in j + 1..self.theta {
                out.push(self.edge[j][k].clone());
            }
        }
        out
    }

    /// m_j = min { m : (m+1)_{D_j} = 0 }, None when infinite.
    pub fn m(&self, j: usize) -> Option<u64> {
        self.vertex(j).label_bound()
    }

    /// Cartan integer a_ij = -min { m >= 0 : (m+1)_{D_i} (D_i^m D_ij - 1) = 0 },
    /// a_ii = 2; None when no such m exists.
    pub fn cartan(&self, i: usize, j: usize) -> Option<i64> {
        if i == j {
            return Some(2);
        }
        let di = self.vertex(i);
        let dij = self.edge(i, j);
        // candidate from the q-integer factor: first vanishing of (m+1)_{D_i}
        let c1 = di.label_bound();
        // candidate from the product factor: first m with D_i^m D_ij = 1;
        // for a root of unity one period suffices, otherwise a bounded scan
        let scan = match di.multiplicative_order() {
            Some(o) => o,
            None => 4 * self.order + 8,
        };
        let mut c2 = None;
        let mut power = CycNum::one(self.order);
        for m in 0..scan {
            if power.mul(dij).is_one() {
                c2 = Some(m);
                break;
            }
            power = power.mul(di);
        }
        match (c1, c2) {
            (None, None) => None,
            (Some(a), None) => Some(-(a as i64)),
            (None, Some(b)) => Some(-(b as i64)),
            (Some(a), Some(b)) => Some(-(a.min(b) as i64)),
        }
    }

    pub fn is_i_finite(&self, i: usize) -> bool {
        (1..=self.theta).all(|j| self.cartan(i, j).is_some())
    }

    /// Full Cartan matrix, when every entry is finite.
    pub fn cartan_matrix(&self) -> Option<Vec<Vec<i64>>> {
        (1..=self.theta)
            .map(|i| (1..=self.theta).map(|j| self.cartan(i, j)).collect())
            .collect()
    }

    /// The reflection s_i on Z^theta: s_i(alpha_j) = alpha_j - a_ij alpha_i.
    pub fn s_matrix(&self, i: usize) -> Result<IntMat, DynkinError> {
        let mut m = mat_identity(self.theta);
        for j in 1..=self.theta {
            let a = self.cartan(i, j).ok_or(DynkinError::NotIFinite { node: i })?;
            m[i - 1][j - 1] -= a;
        }
        Ok(m)
    }

    /// The reflected diagram R_i(D).
    pub fn reflect(&self, i: usize) -> Result<DynkinDiagram, DynkinError> {
        let mut a = vec![0i64; self.theta + 1];
        for j in 1..=self.theta {
            a[j] = self.cartan(i, j).ok_or(DynkinError::NotIFinite { node: i })?;
        }
        let di = self.vertex(i);
        let mut vertex = Vec::with_capacity(self.theta);
        for j in 1..=self.theta {
            // R_i(D)_j = D_j D_ij^(-a_ij) D_i^(a_ij^2)
            let v = self
                .vertex(j)
                .mul(&self.edge(i, j).pow(-a[j]).expect("nonzero label"))
                .mul(&di.pow(a[j] * a[j]).expect("nonzero label"));
            vertex.push(v);
        }
        let mut upper = Vec::new();
        for j in 1..=self.theta {
            for k in j + 1..=self.theta {
                // R_i(D)_jk = D_jk D_ik^(-a_ij) D_ij^(-a_ik) D_i^(2 a_ij a_ik)
                let e = self
                    .edge(j, k)
                    .mul(&self.edge(i, k).pow(-a[j]).expect("nonzero label"))
                    .mul(&self.edge(i, j).pow(-a[k]).expect("nonzero label"))
                    .mul(&di.pow(2 * a[j] * a[k]).expect("nonzero label"));
                upper.push(e);
            }
        }
        DynkinDiagram::new(self.order, vertex, upper)
    }

    /// The bicharacter on Z^theta with chi(alpha_j, alpha_k) = D_jk.
    pub fn bichar(&self, v: &[i64], w: &[i64]) -> CycNum {
        let mut out = CycNum::one(self.order);
        for j in 0..self.theta {
            if v[j] == 0 {
                continue;
            }
            for k in 0..self.theta {
                if w[k] == 0 {
                    continue;
                }
                out = out.mul(&self.edge[j][k].pow(v[j] * w[k]).expect("nonzero label"));
            }
        }
        out
    }

    /// The character with chi(alpha_j) = D_j.
    pub fn indchar_vec(&self, v: &[i64]) -> CycNum {
        let mut out = CycNum::one(self.order);
        for j in 0..self.theta {
            if v[j] != 0 {
                out = out.mul(&self.vertex[j].pow(v[j]).expect("nonzero label"));
            }
        }
        out
    }

    /// The triangular bicharacter: chi(a_j, a_j) = D_j, chi(a_j, a_k) = D_jk
    /// for j < k, and chi(a_k, a_j) = 1 for j < k.
    pub fn indchar_pair(&self, v: &[i64], w: &[i64]) -> CycNum {
        let mut out = CycNum::one(self.order);
        for j in 0..self.theta {
            if v[j] == 0 {
                continue;
            }
            if w[j] != 0 {
                out = out.mul(&self.vertex[j].pow(v[j] * w[j]).expect("nonzero label"));
            }
            for k in j + 1..self.theta {
                if w[k] != 0 {
                    out = out.mul(&self.edge[j][k].pow(v[j] * w[k]).expect("nonzero label"));
                }
            }
        }
        out
    }
}

/// A monomial t_gamma * c: the entry the reflected extended diagram carries at
/// a node, determined by the reached root and the walk's beta vector alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialEntry {
    pub exponent: Vec<i64>,
    pub constant: CycNum,
}

/// The node-to-extension entry after a reflection walk: t_{s(alpha_j)} times
/// the bicharacter value of (beta, s(alpha_j)) on the original diagram.
pub fn ext_reflect_entry(
    original: &DynkinDiagram,
    s: &IntMat,
    beta: &[i64],
    j: usize,
) -> MonomialEntry {
    let mut unit = vec![0i64; original.rank()];
    unit[j - 1] = 1;
    let gamma = mat_apply(s, &unit);
    let constant = original.bichar(beta, &gamma);
    MonomialEntry { exponent: gamma, constant }
}

/// The alternative formula for the same entry, relying on the root alone:
/// t_gamma * chi(-gamma) * chi(gamma, gamma).
pub fn ext_reflect_entry_by_root(original: &DynkinDiagram, gamma: &[i64]) -> MonomialEntry {
    let neg: Vec<i64> = gamma.iter().map(|x| -x).collect();
    let constant = original
        .indchar_vec(&neg)
        .mul(&original.indchar_pair(gamma, gamma));
    MonomialEntry { exponent: gamma.to_vec(), constant }
}
