//! Counting loops: everywhere-locally-soluble conics over coefficient boxes,
//! the generalized squarefree family, the two-squares pair count, and the
//! norm-form census.  Data-parallel over slabs of the outer coefficient with
//! integer reductions, so results are independent of worker count.

use rayon::prelude::*;

use crate::arith::{factor, gcd3, gcd_u64, jacobi, FactorSieve};
use crate::conic::norm_representable;
use crate::error::{Error, Result};
use crate::hilbert::{hilbert, Place};

/// Parameters (b, m) of the generalized count: b = (b1,b2,b3),
/// m = (m12,m13,m23) with m12 m13 m23 squarefree, gcd(b1,b2,b3) = 1 and
/// gcd(m12,b3) = gcd(m13,b2) = gcd(m23,b1) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub b: [u64; 3],
    pub m: [u64; 3],
}

impl FamilyParams {
    pub fn new(b: [u64; 3], m: [u64; 3]) -> Result<Self> {
        if b.contains(&0) || m.contains(&0) {
            return Err(Error::Domain("family parameters must be positive".into()));
        }
        let m_prod = m[0] * m[1] * m[2];
        if !is_squarefree_u64(m_prod) {
            return Err(Error::Domain(format!("m12 m13 m23 = {m_prod} must be squarefree")));
        }
        if gcd3(b[0], b[1], b[2]) != 1 {
            return Err(Error::Domain("gcd(b1,b2,b3) must be 1".into()));
        }
        if gcd_u64(m[0], b[2]) != 1 || gcd_u64(m[1], b[1]) != 1 || gcd_u64(m[2], b[0]) != 1 {
            return Err(Error::Domain(
                "need gcd(m12,b3) = gcd(m13,b2) = gcd(m23,b1) = 1".into(),
            ));
        }
        Ok(FamilyParams { b, m })
    }
}

fn is_squarefree_u64(mut n: u64) -> bool {
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// One row of census output: bounds, the raw count, its normalization, the
/// predicted constant and their ratio.
#[derive(Clone, Debug)]
pub struct CountRecord {
    pub bounds: Vec<u64>,
    pub raw_count: u64,
    pub normalized: f64,
    pub predicted: f64,
    pub ratio: f64,
}

impl CountRecord {
    pub fn new(bounds: Vec<u64>, raw_count: u64, normalization: f64, predicted: f64) -> Self {
        let normalized = raw_count as f64 * normalization;
        let ratio = if predicted != 0.0 { normalized / predicted } else { f64::NAN };
        CountRecord { bounds, raw_count, normalized, predicted, ratio }
    }
}

/// Per-integer tables the conic census reuses for every triple.
struct CensusTables {
    /// squarefree kernel of n
    kernel: Vec<u32>,
    /// odd primes dividing n
    odd_primes: Vec<Vec<u32>>,
}

impl CensusTables {
    fn build(bound: u64, sieve: &FactorSieve) -> Result<Self> {
        if bound > sieve.limit() {
            return Err(Error::Capacity(format!(
                "census bound {bound} exceeds sieve limit {}",
                sieve.limit()
            )));
        }
        let n = (bound + 1) as usize;
        let mut kernel = vec![1u32; n];
        let mut odd_primes = vec![Vec::new(); n];
        for v in 2..n as u64 {
            let f = factor(v as i64, sieve)?;
            let mut k = 1u64;
            for &(p, e) in &f.pairs {
                if e % 2 == 1 {
                    k *= p;
                }
                if p != 2 {
                    odd_primes[v as usize].push(p as u32);
                }
            }
            kernel[v as usize] = k as u32;
        }
        Ok(CensusTables { kernel, odd_primes })
    }
}

/// Solubility of a x^2 + b y^2 = c z^2 for positive a, b, c, via Hilbert
/// symbols on the reduced model. `tables` must cover a, b, c.
fn positive_conic_soluble(a: u64, b: u64, c: u64, tables: &CensusTables) -> bool {
    let ka = tables.kernel[a as usize] as u64;
    let kb = tables.kernel[b as usize] as u64;
    let kc = tables.kernel[c as usize] as u64;
    let g = gcd3(ka, kb, kc);
    let (ka, kb, kc) = (ka / g, kb / g, kc / g);
    let m12 = gcd_u64(ka, kb);
    let m13 = gcd_u64(ka, kc);
    let m23 = gcd_u64(kb, kc);
    let ra = (ka / (m12 * m13)) * m23;
    let rb = (kb / (m12 * m23)) * m13;
    let rc = (kc / (m13 * m23)) * m12;
    // conic (ra, rb, -rc): everywhere locally soluble iff
    // (-ra*rb, ra*rc)_v = 1 at v = 2 and every odd prime of the support
    let s = -((ra * rb) as i64);
    let t = (ra * rc) as i64;
    if hilbert(s, t, Place::Finite(2)) != 1 {
        return false;
    }
    for &p in tables.odd_primes[a as usize]
        .iter()
        .chain(&tables.odd_primes[b as usize])
        .chain(&tables.odd_primes[c as usize])
    {
        if hilbert_odd_fast(s, t, p as u64) != 1 {
            return false;
        }
    }
    true
}

/// Hilbert symbol at an odd prime, open-coded for the census hot path.
#[inline]
fn hilbert_odd_fast(a: i64, b: i64, p: u64) -> i32 {
    let mut va = 0u32;
    let mut ua = a;
    while ua % p as i64 == 0 {
        ua /= p as i64;
        va += 1;
    }
    let mut vb = 0u32;
    let mut ub = b;
    while ub % p as i64 == 0 {
        ub /= p as i64;
        vb += 1;
    }
    let mut r = 1i32;
    if va & 1 == 1 && vb & 1 == 1 {
        r *= jacobi(-1, p);
    }
    if vb & 1 == 1 {
        r *= jacobi(ua, p);
    }
    if va & 1 == 1 {
        r *= jacobi(ub, p);
    }
    r
}

/// N(B): ordered signed triples t with gcd(t0,t1,t2) = 1, max|t_i| <= B and a
/// rational point on the conic.
///
/// Sign symmetry collapses the count to 6 times the positive ordered census of
/// a x^2 + b y^2 = c z^2 (a mixed-sign triple is one of six sign patterns of a
/// positive triple; grouping by the odd-sign-out coordinate and summing the
/// permuted solubilities over the symmetric box gives equal sums).
pub fn count_primitive_conics(bound: u64, sieve: &FactorSieve) -> Result<u64> {
    positive_census(bound, sieve, true)
}

/// N_0(B): the same without the primitivity condition.
pub fn count_all_conics(bound: u64, sieve: &FactorSieve) -> Result<u64> {
    positive_census(bound, sieve, false)
}

fn positive_census(bound: u64, sieve: &FactorSieve, primitive: bool) -> Result<u64> {
    if bound == 0 {
        return Ok(0);
    }
    let tables = CensusTables::build(bound, sieve)?;
    let total: u64 = (1..=bound)
        .into_par_iter()
        .map(|a| {
            let mut slab = 0u64;
            for b in a..=bound {
                let weight = if a < b { 2u64 } else { 1 };
                let gab = gcd_u64(a, b);
                for c in 1..=bound {
                    if primitive && gcd_u64(gab, c) != 1 {
                        continue;
                    }
                    if positive_conic_soluble(a, b, c, &tables) {
                        slab += weight;
                    }
                }
            }
            slab
        })
        .sum();
    Ok(6 * total)
}

/// Solubility of the generalized equation m23 n1 x1^2 + m13 n2 x2^2 = m12 n3 x3^2.
pub(crate) fn generalized_soluble(
    params: &FamilyParams,
    n: [u64; 3],
    sieve: &FactorSieve,
) -> Result<bool> {
    // coefficients are squarefree and pairwise coprime on the admissible domain
    let a = (params.m[2] * n[0]) as i64;
    let b = (params.m[1] * n[1]) as i64;
    let c = (params.m[0] * n[2]) as i64;
    let s = -a * b;
    let t = a * c;
    if hilbert(s, t, Place::Finite(2)) != 1 {
        return Ok(false);
    }
    for x in [params.m[0], params.m[1], params.m[2], n[0], n[1], n[2]] {
        for &(p, _) in &factor(x as i64, sieve)?.pairs {
            if p != 2 && hilbert(s, t, Place::Finite(p)) != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// N_{b,m}(X): squarefree triples n in the box with the coprimality conditions
/// whose equation is soluble over Q.
pub fn count_generalized(params: &FamilyParams, x: [u64; 3], sieve: &FactorSieve) -> Result<u64> {
    let bound = x.iter().copied().max().unwrap();
    if bound > sieve.limit() {
        return Err(Error::Capacity(format!(
            "box {x:?} exceeds sieve limit {}",
            sieve.limit()
        )));
    }
    if x.iter().any(|&xi| xi == 0) {
        return Ok(0);
    }
    let tables = CensusTables::build(bound, sieve)?;
    let m_prod = params.m[0] * params.m[1] * params.m[2];
    let b = params.b;
    let m_odd_primes: Vec<u64> = factor(m_prod as i64, sieve)?
        .pairs
        .iter()
        .map(|&(p, _)| p)
        .filter(|&p| p != 2)
        .collect();
    let squarefree: Vec<bool> =
        (0..=bound).map(|v| v >= 1 && tables.kernel[v as usize] as u64 == v).collect();

    let total: u64 = (1..=x[0])
        .into_par_iter()
        .map(|n1| {
            if !squarefree[n1 as usize]
                || gcd_u64(n1, m_prod) != 1
                || gcd3(n1, b[1], b[2]) != 1
            {
                return 0;
            }
            let mut slab = 0u64;
            for n2 in 1..=x[1] {
                if !squarefree[n2 as usize]
                    || gcd_u64(n2, n1) != 1
                    || gcd_u64(n2, m_prod) != 1
                    || gcd3(n2, b[0], b[2]) != 1
                {
                    continue;
                }
                let n12 = n1 * n2;
                for n3 in 1..=x[2] {
                    if !squarefree[n3 as usize]
                        || gcd_u64(n3, n12) != 1
                        || gcd_u64(n3, m_prod) != 1
                        || gcd3(n3, b[0], b[1]) != 1
                    {
                        continue;
                    }
                    // coefficients (m23 n1, m13 n2, m12 n3) are already reduced;
                    // their odd primes are those of the m's and the n's
                    let a = (params.m[2] * n1) as i64;
                    let bb = (params.m[1] * n2) as i64;
                    let c = (params.m[0] * n3) as i64;
                    let s = -a * bb;
                    let t = a * c;
                    if hilbert(s, t, Place::Finite(2)) != 1 {
                        continue;
                    }
                    let mut ok = true;
                    for &p in &m_odd_primes {
                        if hilbert_odd_fast(s, t, p) != 1 {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        'outer: for ni in [n1, n2, n3] {
                            for &p in &tables.odd_primes[ni as usize] {
                                if hilbert_odd_fast(s, t, p as u64) != 1 {
                                    ok = false;
                                    break 'outer;
                                }
                            }
                        }
                    }
                    if ok {
                        slab += 1;
                    }
                }
            }
            slab
        })
        .sum();
    Ok(total)
}

/// Coprime pairs (a, b) in [1, B]^2 for which a/b is a sum of two rational
/// squares, i.e. both a and b are free of primes p = 3 mod 4 to odd exponent.
///
/// This is the pair count of the proposition's parameterization; the rational
/// count it approximates differs by the O(1) boundary terms of choosing
/// representatives (sign symmetry contributes the factor 1/2 * 2 = 1).
pub fn count_two_squares(bound: u64, sieve: &FactorSieve) -> Result<u64> {
    if bound > sieve.limit() {
        return Err(Error::Capacity(format!(
            "bound {bound} exceeds sieve limit {}",
            sieve.limit()
        )));
    }
    // representable[n]: every p = 3 mod 4 divides n to even exponent
    let representable: Vec<u64> = (1..=bound)
        .filter(|&n| {
            factor(n as i64, sieve)
                .map(|f| f.pairs.iter().all(|&(p, e)| p % 4 != 3 || e % 2 == 0))
                .unwrap_or(false)
        })
        .collect();
    let total: u64 = representable
        .par_iter()
        .map(|&a| representable.iter().filter(|&&b| gcd_u64(a, b) == 1).count() as u64)
        .sum();
    Ok(total)
}

/// A homogeneous integer polynomial in `nvars` variables given by monomials
/// (coefficient, exponent vector).
#[derive(Clone, Debug)]
pub struct HomogeneousPoly {
    pub nvars: usize,
    pub degree: u32,
    pub terms: Vec<(i64, Vec<u32>)>,
}

impl HomogeneousPoly {
    pub fn new(nvars: usize, terms: Vec<(i64, Vec<u32>)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Domain("polynomial must have at least one term".into()));
        }
        let degree = terms[0].1.iter().sum();
        for (_, exps) in &terms {
            if exps.len() != nvars || exps.iter().sum::<u32>() != degree {
                return Err(Error::Domain("terms must be homogeneous of equal degree".into()));
            }
        }
        Ok(HomogeneousPoly { nvars, degree, terms })
    }

    /// Diagonal quadratic sum c_i x_i^2.
    pub fn diagonal_quadratic(coeffs: &[i64]) -> Result<Self> {
        let n = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let mut e = vec![0u32; n];
                e[i] = 2;
                (c, e)
            })
            .collect();
        Self::new(n, terms)
    }

    pub fn eval(&self, x: &[i64]) -> i64 {
        self.terms
            .iter()
            .map(|(c, exps)| {
                c * exps
                    .iter()
                    .zip(x)
                    .map(|(&e, &xi)| xi.pow(e))
                    .product::<i64>()
            })
            .sum()
    }
}

/// Counts primitive x up to sign with max|x_i| <= B, g(x) != 0, and g(x)
/// representable by the norm form of Q(sqrt a).
pub fn count_norm_form(
    g: &HomogeneousPoly,
    a: i64,
    bound: u64,
    sieve: &FactorSieve,
) -> Result<u64> {
    if g.degree % 2 != 0 {
        return Err(Error::Domain("norm-form census needs even degree".into()));
    }
    let n = g.nvars;
    let b = bound as i64;
    let side = (2 * b + 1) as u64;
    if side.checked_pow(n as u32).map_or(true, |t| t > 2_000_000_000) {
        return Err(Error::Capacity("norm-form box too large".into()));
    }
    // enumerate x with first nonzero coordinate positive (one per +-pair),
    // parallel over the first coordinate
    (0..=bound as i64)
        .into_par_iter()
        .map(|x0| {
            let mut count = 0u64;
            let mut x = vec![0i64; n];
            x[0] = x0;
            let mut err = None;
            enumerate_rest(g, a, b, sieve, &mut x, 1, x0 == 0, &mut count, &mut err);
            match err {
                Some(e) => Err(e),
                None => Ok(count),
            }
        })
        .try_reduce(|| 0, |x, y| Ok(x + y))
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rest(
    g: &HomogeneousPoly,
    a: i64,
    b: i64,
    sieve: &FactorSieve,
    x: &mut Vec<i64>,
    idx: usize,
    must_pick_positive: bool,
    count: &mut u64,
    err: &mut Option<Error>,
) {
    if err.is_some() {
        return;
    }
    if idx == x.len() {
        if must_pick_positive {
            return; // the zero vector
        }
        let gcd = x.iter().fold(0u64, |acc, &v| gcd_u64(acc, v.unsigned_abs()));
        if gcd != 1 {
            return;
        }
        let value = g.eval(x);
        if value == 0 {
            return;
        }
        match norm_representable(value, 1, a, sieve) {
            Ok(true) => *count += 1,
            Ok(false) => {}
            Err(e) => *err = Some(e),
        }
        return;
    }
    let lo = if must_pick_positive { 0 } else { -b };
    for v in lo..=b {
        x[idx] = v;
        let next_must = must_pick_positive && v == 0;
        enumerate_rest(g, a, b, sieve, x, idx + 1, next_must, count, err);
    }
    x[idx] = 0;
}
