//! Exact arithmetic in the cyclotomic fields Q(zeta_N).
//!
//! Elements are stored as an integer coefficient vector over the power basis
//! 1, zeta, ..., zeta^(phi(N)-1) with a single positive denominator, reduced
//! modulo the N-th cyclotomic polynomial Phi_N. Reducing modulo Phi_N (rather
//! than zeta^N - 1) keeps the representation a field, so the zero test is
//! exact. The shared-denominator layout keeps the hot paths in integer
//! arithmetic; root-of-unity-only workloads never leave denominator 1.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    OrderNotDivisor { from: u64, to: u64 },
    #[error("mixed cyclotomic orders {0} and {1}; embed into a common order first")]
    MixedOrders(u64, u64),
}

/// Euler phi.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

fn poly_trim(c: &mut Vec<BigInt>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    poly_trim(&mut out);
    out
}

/// Exact division of integer polynomials with monic divisor.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(!den.is_empty() && den.last().unwrap().is_one());
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        assert!(rem.iter().all(|c| c.is_zero()));
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = std::mem::replace(&mut rem[k], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().take(dd).enumerate() {
            rem[k - dd + j] -= &c * dj;
        }
        quot[k - dd] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    poly_trim(&mut quot);
    quot
}

/// Phi_n via recursive division of x^n - 1 by the Phi_d for proper divisors d.
fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    if n == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    let mut result = vec![BigInt::zero(); n as usize + 1];
    result[0] = -BigInt::one();
    result[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        result = poly_div_exact(&result, &cyclotomic_poly(d));
    }
    result
}

/// Per-order data shared by all values of the same order.
struct FieldData {
    phi: usize,
    /// x^k mod Phi_N for k = phi ..= max(2*phi-2, N-1), integer rows of length phi.
    reduction_rows: Vec<Vec<BigInt>>,
}

impl FieldData {
    fn new(order: u64) -> Self {
        let phi = euler_phi(order) as usize;
        let modulus = cyclotomic_poly(order);
        assert_eq!(modulus.len(), phi + 1);
        let max_exp = (2 * phi).saturating_sub(2).max(order as usize - 1);
        let num_rows = max_exp + 1 - phi;
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(num_rows);
        if num_rows > 0 {
            // x^phi = -(lower terms of Phi_N)
            let base: Vec<BigInt> = modulus[..phi].iter().map(|c| -c).collect();
            rows.push(base);
            while rows.len() < num_rows {
                let prev = rows.last().unwrap();
                // multiply by x: shift, then fold the overflow coefficient
                let top = prev[phi - 1].clone();
                let mut next = vec![BigInt::zero(); phi];
                next[1..phi].clone_from_slice(&prev[..phi - 1]);
                if !top.is_zero() {
                    for k in 0..phi {
                        next[k] += &top * &rows[0][k];
                    }
                }
                rows.push(next);
            }
        }
        FieldData { phi, reduction_rows: rows }
    }
}

fn field_data(order: u64) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(order).or_insert_with(|| Arc::new(FieldData::new(order))).clone()
}

/// An exact element of Q(zeta_N): (num[0] + num[1] zeta + ...) / den with
/// den > 0 and gcd(content(num), den) = 1, which makes the form canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1);
        let phi = euler_phi(order) as usize;
        CycNum { order, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn one(order: u64) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u64, n: i64) -> Self {
        let mut x = Self::zero(order);
        x.num[0] = BigInt::from(n);
        x
    }

    pub fn from_rational(order: u64, r: BigRational) -> Self {
        let mut x = Self::zero(order);
        x.num[0] = r.numer().clone();
        x.den = r.denom().clone();
        x.normalize();
        x
    }

    /// zeta_N^e, exponent taken modulo N.
    pub fn root_of_unity(order: u64, e: i64) -> Self {
        let n = order as i64;
        let e = e.rem_euclid(n) as usize;
        let data = field_data(order);
        let mut raw = vec![BigInt::zero(); e + 1];
        raw[e] = BigInt::one();
        Self::reduce_int(order, &data, raw, BigInt::one())
    }

    fn reduce_int(order: u64, data: &FieldData, mut raw: Vec<BigInt>, den: BigInt) -> Self {
        let phi = data.phi;
        let mut k = raw.len();
        while k > phi {
            k -= 1;
            let c = std::mem::replace(&mut raw[k], BigInt::zero());
            if c.is_zero() {
                continue;
            }
            let row = &data.reduction_rows[k - phi];
            for (j, rj) in row.iter().enumerate() {
                if !rj.is_zero() {
                    raw[j] += &c * rj;
                }
            }
        }
        raw.truncate(phi);
        raw.resize(phi, BigInt::zero());
        let mut out = CycNum { order, num: raw, den };
        out.normalize();
        out
    }

    /// Restore den > 0 and gcd(content, den) = 1.
    fn normalize(&mut self) {
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return;
                }
            }
        }
        self.den /= &g;
        for c in self.num.iter_mut() {
            *c /= &g;
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients over the power basis as exact rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_neg_one(&self) -> bool {
        self.den.is_one()
            && (-&self.num[0]).is_one()
            && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// True when the value lies in Q.
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_same_order(&self, other: &CycNum) {
        assert_eq!(
            self.order, other.order,
            "mixed cyclotomic orders; embed into a common order first"
        );
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        self.check_same_order(other);
        let mut out = CycNum {
            order: self.order,
            num: Vec::with_capacity(self.num.len()),
            den: BigInt::zero(),
        };
        if self.den == other.den {
            out.num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a + b)
                .collect();
            out.den = self.den.clone();
        } else {
            let g = self.den.gcd(&other.den);
            let l = &self.den / &g * &other.den;
            let f1 = &l / &self.den;
            let f2 = &l / &other.den;
            out.num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a * &f1 + b * &f2)
                .collect();
            out.den = l;
        }
        out.normalize();
        out
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        self.check_same_order(other);
        if self.is_zero() || other.is_zero() {
            return CycNum::zero(self.order);
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_rational() {
            return other.scale_int(&self.num[0], &self.den);
        }
        if other.is_rational() {
            return self.scale_int(&other.num[0], &other.den);
        }
        let phi = self.num.len();
        let mut raw = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let data = field_data(self.order);
        Self::reduce_int(self.order, &data, raw, &self.den * &other.den)
    }

    fn scale_int(&self, num: &BigInt, den: &BigInt) -> CycNum {
        if num.is_zero() {
            return CycNum::zero(self.order);
        }
        let mut out = CycNum {
            order: self.order,
            num: self.num.iter().map(|c| c * num).collect(),
            den: &self.den * den,
        };
        out.normalize();
        out
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        self.scale_int(r.numer(), r.denom())
    }

    pub fn scale_i64(&self, k: i64) -> CycNum {
        self.scale_int(&BigInt::from(k), &BigInt::one())
    }

    /// Field inverse via the extended Euclidean algorithm against Phi_N
    /// (irreducible, so every nonzero element is invertible).
    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero(self.order));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, r.recip()));
        }
        let modulus: Vec<BigRational> = cyclotomic_poly(self.order)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        // extended gcd over Q[x]: maintain (r0, s0), (r1, s1) with s*f = r mod Phi
        let mut r0 = modulus;
        let mut r1: Vec<BigRational> = self.coeffs();
        trim_q(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, rem) = divmod_q(&r0, &r1);
            let s_new = sub_q(&s0, &mul_q(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_new;
        }
        // r0 is a nonzero constant gcd
        assert_eq!(r0.len(), 1, "Phi_N must be coprime to any nonzero element");
        let c = r0[0].recip();
        let phi = self.num.len();
        let mut out = CycNum::zero(self.order);
        let mut den_lcm = BigInt::one();
        let scaled: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        for r in &scaled {
            den_lcm = den_lcm.lcm(r.denom());
        }
        let mut num = vec![BigInt::zero(); phi];
        for (i, r) in scaled.iter().enumerate() {
            num[i] = r.numer() * (&den_lcm / r.denom());
        }
        out.num = num;
        out.den = den_lcm;
        out.normalize();
        Ok(out)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, CycError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut result = CycNum::one(self.order);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Image in Q(zeta_M) under zeta_N -> zeta_M^(M/N); requires N | M.
    pub fn embed(&self, target_order: u64) -> Result<CycNum, CycError> {
        if !target_order.is_multiple_of(self.order) {
            return Err(CycError::OrderNotDivisor { from: self.order, to: target_order });
        }
        if target_order == self.order {
            return Ok(self.clone());
        }
        let step = (target_order / self.order) as i64;
        let mut result = CycNum::zero(target_order);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = CycNum::root_of_unity(target_order, k as i64 * step)
                .scale_int(c, &BigInt::one());
            result = result.add(&term);
        }
        result = result.scale_int(&BigInt::one(), &self.den);
        Ok(result)
    }

    /// Inverse of `embed` where possible: expresses the value in Q(zeta_N) for
    /// N dividing the current order, or returns None when it does not lie there.
    pub fn restrict(&self, target_order: u64) -> Option<CycNum> {
        if !self.order.is_multiple_of(target_order) {
            return None;
        }
        if self.order == target_order {
            return Some(self.clone());
        }
        let phi_small = euler_phi(target_order) as usize;
        let phi_big = self.num.len();
        let cols: Vec<Vec<BigRational>> = (0..phi_small)
            .map(|k| {
                CycNum::root_of_unity(target_order, k as i64)
                    .embed(self.order)
                    .expect("divisor order")
                    .coeffs()
            })
            .collect();
        let rhs = self.coeffs();
        // solve cols * a = rhs by Gaussian elimination
        let mut aug: Vec<Vec<BigRational>> = (0..phi_big)
            .map(|r| {
                let mut row: Vec<BigRational> =
                    (0..phi_small).map(|c| cols[c][r].clone()).collect();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..phi_small {
            let Some(r) = (pivot_row..phi_big).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(pivot_row, r);
            let p = aug[pivot_row][col].clone();
            for x in aug[pivot_row].iter_mut() {
                *x /= p.clone();
            }
            for r2 in 0..phi_big {
                if r2 != pivot_row && !aug[r2][col].is_zero() {
                    let f = aug[r2][col].clone();
                    for c2 in 0..=phi_small {
                        let s = &aug[pivot_row][c2] * &f;
                        aug[r2][c2] -= s;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        for r in pivot_row..phi_big {
            if !aug[r][phi_small].is_zero() {
                return None;
            }
        }
        let mut out = CycNum::zero(target_order);
        let mut den_lcm = BigInt::one();
        for (i, _) in pivots.iter().enumerate() {
            den_lcm = den_lcm.lcm(aug[i][phi_small].denom());
        }
        for (i, &col) in pivots.iter().enumerate() {
            let r = &aug[i][phi_small];
            out.num[col] = r.numer() * (&den_lcm / r.denom());
        }
        out.den = den_lcm;
        out.normalize();
        Some(out)
    }

    /// Order of the value in the multiplicative group, when finite. The roots
    /// of unity in Q(zeta_N) form a cyclic group of order lcm(2, N).
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let l = if self.order.is_multiple_of(2) { self.order } else { 2 * self.order };
        if !self.pow(l as i64).unwrap().is_one() {
            return None;
        }
        divisors(l)
            .into_iter()
            .find(|&d| self.pow(d as i64).unwrap().is_one())
    }

    /// min { m >= 0 : (m+1)_q = 0 }: the multiplicative order minus one for
    /// q != 1, and None for q = 1 (characteristic zero).
    pub fn label_bound(&self) -> Option<u64> {
        if self.is_one() {
            return None;
        }
        self.multiplicative_order().map(|o| o - 1)
    }

    /// Compact display: pure root powers print as "zN^e" (with sign), other
    /// values as a polynomial in zN.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let rational = |n: &BigInt, d: &BigInt| -> String {
            if d.is_one() {
                format!("{}", n)
            } else {
                format!("{}/{}", n, d)
            }
        };
        let term = |e: usize, n: &BigInt, d: &BigInt| -> String {
            if e == 0 {
                rational(n, d)
            } else {
                let v = if e == 1 {
                    format!("z{}", self.order)
                } else {
                    format!("z{}^{}", self.order, e)
                };
                if n.is_one() && d.is_one() {
                    v
                } else if (-n).is_one() && d.is_one() {
                    format!("-{}", v)
                } else {
                    format!("{}*{}", rational(n, d), v)
                }
            }
        };
        if self.is_rational() {
            return rational(&self.num[0], &self.den);
        }
        // recognize +/- zN^e including outside the power basis (e.g.
        // -z6 = z6^4), preferring plain powers over negated ones
        if self.den.is_one() {
            for e in 0..self.order {
                if *self == CycNum::root_of_unity(self.order, e as i64) {
                    return match e {
                        0 => "1".into(),
                        1 => format!("z{}", self.order),
                        _ => format!("z{}^{}", self.order, e),
                    };
                }
            }
            for e in 0..self.order {
                if *self == CycNum::root_of_unity(self.order, e as i64).neg() {
                    return match e {
                        0 => "-1".into(),
                        1 => format!("-z{}", self.order),
                        _ => format!("-z{}^{}", self.order, e),
                    };
                }
            }
        }
        let nonzero: Vec<usize> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect();
        if nonzero.len() == 1 {
            let e = nonzero[0];
            return term(e, &self.num[e], &self.den);
        }
        let mut parts = Vec::new();
        for &e in &nonzero {
            let t = term(e, &self.num[e], &self.den);
            if parts.is_empty() {
                parts.push(t);
            } else if let Some(stripped) = t.strip_prefix('-') {
                parts.push(format!("- {}", stripped));
            } else {
                parts.push(format!("+ {}", t));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({})", self.pretty())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

// rational-polynomial helpers for the gcd in `inv` and for `restrict`
fn trim_q(c: &mut Vec<BigRational>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

fn mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim_q(&mut out);
    out
}

fn sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim_q(&mut out);
    out
}

fn divmod_q(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty());
    let mut rem: Vec<BigRational> = num.to_vec();
    trim_q(&mut rem);
    let dd = den.len() - 1;
    let lead = den.last().unwrap().clone();
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = &rem[k] / &lead;
        if c.is_zero() {
            rem[k] = BigRational::zero();
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            let s = &c * dj;
            rem[k - dd + j] -= s;
        }
        quot[k - dd] = c;
    }
    trim_q(&mut rem);
    trim_q(&mut quot);
    (quot, rem)
}

/// Univariate integer polynomial in t; houses (n)_t, (n)_t^! and the
/// Gaussian binomials as honest polynomials, so that evaluation at roots of
/// unity never divides vanishing q-factorials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut c = coeffs;
        poly_trim(&mut c);
        QPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// (n)_t = 1 + t + ... + t^(n-1)
    pub fn q_int(n: u64) -> Self {
        QPoly { coeffs: vec![BigInt::one(); n as usize] }
    }

    /// (n)_t^! = (1)_t (2)_t ... (n)_t
    pub fn q_factorial(n: u64) -> Self {
        let mut p = Self::one();
        for i in 1..=n {
            p = p.mul(&Self::q_int(i));
        }
        p
    }

    /// binom(n, k)_t by the Pascal recurrence
    /// binom(n+1, k)_t = binom(n, k-1)_t + t^k binom(n, k)_t; zero outside 0 <= k <= n.
    pub fn q_binom(n: u64, k: i64) -> Self {
        if k < 0 || k as u64 > n {
            return Self::zero();
        }
        let k = k as usize;
        let n = n as usize;
        // row-by-row table of binom(m, j)_t for j <= k
        let mut row: Vec<QPoly> = vec![Self::one()];
        for m in 1..=n {
            let width = k.min(m);
            let mut next: Vec<QPoly> = Vec::with_capacity(width + 1);
            for j in 0..=width {
                let left = if j >= 1 {
                    row.get(j - 1).cloned().unwrap_or_else(Self::zero)
                } else {
                    Self::zero()
                };
                let right = row.get(j).cloned().unwrap_or_else(Self::zero).shift(j);
                next.push(left.add(&right));
            }
            row = next;
        }
        row.into_iter().nth(k).unwrap_or_else(Self::zero)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        poly_trim(&mut out);
        QPoly { coeffs: out }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        QPoly { coeffs: poly_mul(&self.coeffs, &other.coeffs) }
    }

    /// multiply by t^k
    pub fn shift(&self, k: usize) -> QPoly {
        if self.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        QPoly { coeffs: out }
    }

    pub fn eval(&self, q: &CycNum) -> CycNum {
        let mut acc = CycNum::zero(q.order());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q);
            if !c.is_zero() {
                acc = acc.add(&CycNum::from_rational(
                    q.order(),
                    BigRational::from_integer(c.clone()),
                ));
            }
        }
        acc
    }
}

/// (n)_q evaluated exactly.
pub fn q_int(n: u64, q: &CycNum) -> CycNum {
    QPoly::q_int(n).eval(q)
}

/// (n)_q^! evaluated exactly.
pub fn q_factorial(n: u64, q: &CycNum) -> CycNum {
    QPoly::q_factorial(n).eval(q)
}

/// binom(n, k)_q by polynomial expansion, never by dividing q-factorials.
pub fn q_binom(n: u64, k: i64, q: &CycNum) -> CycNum {
    QPoly::q_binom(n, k).eval(q)
}
