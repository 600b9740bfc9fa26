//! The Selberg-Delange constants t_p, t_0, gamma(d), beta(b,m) and the
//! empirical-vs-main-term comparisons for the 1/tau averages.

use rayon::prelude::*;

use crate::arith::{factor, gcd_u64, odd_part, FactorSieve};
use crate::census::FamilyParams;
use crate::constants::densities::{ratio, rational_to_f64, ExactRational};
use crate::constants::euler::{EulerProduct, KahanSum, ProductValue};
use crate::error::{Error, Result};

/// t_p = 1 + sum_{k >= 1} 1/((k+1) p^k), in closed form p ln(p/(p-1)).
pub fn t_p(p: u64) -> f64 {
    let p = p as f64;
    p * (p / (p - 1.0)).ln()
}

/// Partial sums of the defining series, for checking the closed form.
pub fn t_p_series(p: u64, terms: u32) -> f64 {
    let mut acc = 1.0;
    let mut pk = p as f64;
    for k in 1..=terms {
        acc += 1.0 / ((k as f64 + 1.0) * pk);
        pk *= p as f64;
    }
    acc
}

/// t_0 = pi^{-1/2} prod_p t_p (1 - 1/p)^{1/2}, truncated at `prime_bound`.
pub fn t0(prime_bound: u64) -> ProductValue {
    let prod = EulerProduct {
        factor_at: |p| t_p(p) * (1.0 - 1.0 / p as f64).sqrt(),
        prime_bound,
        // t_p (1-1/p)^{1/2} = 1 - 1/(24 p^2) + O(1/p^3)
        tail_coefficient: 0.2,
    };
    let v = prod.evaluate();
    ProductValue {
        value: v.value / std::f64::consts::PI.sqrt(),
        ..v
    }
}

/// kappa = prod_{p odd} (1 - 1/p)^{3/2} (1 + 3/(2p)): the universal factor of
/// gamma(d) and beta(b,m).
pub fn kappa(prime_bound: u64) -> ProductValue {
    EulerProduct {
        factor_at: |p| {
            if p == 2 {
                1.0
            } else {
                let x = 1.0 / p as f64;
                (1.0 - x).powf(1.5) * (1.0 + 1.5 * x)
            }
        },
        prime_bound,
        // (1-x)^{3/2}(1+3x/2) = 1 - 15x^2/8 + O(x^3)
        tail_coefficient: 2.0,
    }
    .evaluate()
}

/// The multiplicative correction f(d) = gamma(d)/kappa as an exact rational:
/// prod over odd p | d1 d2 d3 of (1 - #{i : p | d_i}/(2p + 3)).
pub fn gamma_correction(d: [i64; 3], sieve: &FactorSieve) -> Result<ExactRational> {
    let mut out = ratio(1, 1);
    let mut seen = Vec::new();
    for &di in &d {
        if di == 0 || di % 2 == 0 {
            return Err(Error::Domain("gamma(d) needs odd nonzero entries".into()));
        }
        for &(p, _) in &factor(di, sieve)?.pairs {
            if p == 2 || seen.contains(&p) {
                continue;
            }
            seen.push(p);
            let count = d.iter().filter(|&&x| x.unsigned_abs() % p == 0).count() as i64;
            out *= ratio(1, 1) - ratio(count, 2 * p as i64 + 3);
        }
    }
    Ok(out)
}

/// gamma(d) = kappa * f(d).
pub fn gamma_d(d: [i64; 3], prime_bound: u64, sieve: &FactorSieve) -> Result<f64> {
    Ok(kappa(prime_bound).value * rational_to_f64(&gamma_correction(d, sieve)?))
}

/// beta(b,m) = prod_{p odd} (1-1/p)^{3/2} (1 + k_p/(2p)) where k_p counts the
/// pairs i < j with p not dividing m12 m13 m23 gcd(b_i, b_j); computed as
/// kappa times finite corrections (2p + k_p)/(2p + 3) at the exceptional odd
/// primes.
pub fn beta_bm(params: &FamilyParams, prime_bound: u64, sieve: &FactorSieve) -> Result<f64> {
    Ok(kappa(prime_bound).value * rational_to_f64(&beta_correction(params, sieve)?))
}

pub fn beta_correction(params: &FamilyParams, sieve: &FactorSieve) -> Result<ExactRational> {
    let m_prod = params.m[0] * params.m[1] * params.m[2];
    let pair_gcds = [
        gcd_u64(params.b[0], params.b[1]),
        gcd_u64(params.b[0], params.b[2]),
        gcd_u64(params.b[1], params.b[2]),
    ];
    let mut exceptional = Vec::new();
    for x in std::iter::once(m_prod).chain(pair_gcds) {
        for &(p, _) in &factor(x as i64, sieve)?.pairs {
            if p != 2 && !exceptional.contains(&p) {
                exceptional.push(p);
            }
        }
    }
    let mut out = ratio(1, 1);
    for p in exceptional {
        let k_p = pair_gcds.iter().filter(|&&g| (m_prod * g) % p != 0).count() as i64;
        out *= ratio(2 * p as i64 + k_p, 2 * p as i64 + 3);
    }
    Ok(out)
}

/// c(b,m): 2 when 2 | m12 m13 m23, else 3 + #{i < j : gcd(b_i,b_j) odd}.
pub fn c_bm(params: &FamilyParams) -> u32 {
    if (params.m[0] * params.m[1] * params.m[2]) % 2 == 0 {
        return 2;
    }
    let odd_pairs = [
        gcd_u64(params.b[0], params.b[1]),
        gcd_u64(params.b[0], params.b[2]),
        gcd_u64(params.b[1], params.b[2]),
    ]
    .iter()
    .filter(|&&g| g % 2 == 1)
    .count() as u32;
    3 + odd_pairs
}

fn euler_phi_of_small(q: u64) -> u64 {
    debug_assert!(q == 4 || q == 8);
    q / 2
}

/// Empirical sum_{n <= x, gcd(n,d) = 1, n = a mod q} 1/tau(n) next to its
/// Selberg-Delange main term t_0/(phi(q) prod_{p | 2d} t_p) * x / sqrt(log x).
pub fn selberg_delange_check(
    x: u64,
    q: u64,
    a: u64,
    d: u64,
    prime_bound: u64,
    sieve: &FactorSieve,
) -> Result<(f64, f64)> {
    if q != 4 && q != 8 {
        return Err(Error::Domain("q must be 4 or 8".into()));
    }
    if a % 2 == 0 || d % 2 == 0 {
        return Err(Error::Domain("a and d must be odd".into()));
    }
    if x > sieve.limit() {
        return Err(Error::Capacity(format!("x = {x} exceeds sieve limit")));
    }
    let empirical: f64 = (0..)
        .map(|k| a + k * q)
        .take_while(|&n| n <= x)
        .collect::<Vec<_>>()
        .par_chunks(1 << 14)
        .map(|chunk| {
            let mut acc = KahanSum::default();
            for &n in chunk {
                if gcd_u64(n, d) != 1 {
                    continue;
                }
                let t = factor(n as i64, sieve).expect("in range").tau();
                acc.add(1.0 / t as f64);
            }
            acc.value()
        })
        .collect::<Vec<_>>()
        .iter()
        .fold(KahanSum::default(), |mut acc, &v| {
            acc.add(v);
            acc
        })
        .value();

    let mut denom = euler_phi_of_small(q) as f64 * t_p(2);
    for &(p, _) in &factor(d as i64, sieve)?.pairs {
        if p != 2 {
            denom *= t_p(p);
        }
    }
    let main = t0(prime_bound).value / denom * x as f64 / (x as f64).ln().sqrt();
    Ok((empirical, main))
}

/// The triple version: empirical
/// sum mu^2(n1 n2 n3) / (tau(n1) tau(n2) tau(n3)) over the box with
/// congruence and coprimality conditions, next to
/// gamma(d)/(2 pi)^{3/2} * prod_i X_i/(phi(q_i) sqrt(log X_i)).
pub fn selberg_delange_triple_check(
    x: [u64; 3],
    q: [u64; 3],
    a: [u64; 3],
    d: [u64; 3],
    prime_bound: u64,
    sieve: &FactorSieve,
) -> Result<(f64, f64)> {
    for i in 0..3 {
        if q[i] != 4 && q[i] != 8 {
            return Err(Error::Domain("each q must be 4 or 8".into()));
        }
        if a[i] % 2 == 0 || d[i] % 2 == 0 {
            return Err(Error::Domain("each a and d must be odd".into()));
        }
        if x[i] > sieve.limit() {
            return Err(Error::Capacity("box exceeds sieve limit".into()));
        }
    }
    // per-coordinate admissible values with squarefree kernels for the joint
    // mu^2 condition
    let admissible = |i: usize| -> Vec<(u64, f64)> {
        (0..)
            .map(|k| a[i] + k * q[i])
            .take_while(|&n| n <= x[i])
            .filter(|&n| gcd_u64(n, d[i]) == 1)
            .filter_map(|n| {
                let f = factor(n as i64, sieve).ok()?;
                if !f.is_squarefree() {
                    return None;
                }
                Some((n, 1.0 / f.tau() as f64))
            })
            .collect()
    };
    let (l1, l2, l3) = (admissible(0), admissible(1), admissible(2));
    let empirical: f64 = l1
        .par_iter()
        .map(|&(n1, w1)| {
            let mut acc = KahanSum::default();
            for &(n2, w2) in &l2 {
                if gcd_u64(n1, n2) != 1 {
                    continue;
                }
                let n12 = n1 * n2;
                for &(n3, w3) in &l3 {
                    if gcd_u64(n12, n3) == 1 {
                        acc.add(w1 * w2 * w3);
                    }
                }
            }
            acc.value()
        })
        .collect::<Vec<_>>()
        .iter()
        .fold(KahanSum::default(), |mut acc, &v| {
            acc.add(v);
            acc
        })
        .value();

    let gam = gamma_d(d.map(|v| v as i64), prime_bound, sieve)?;
    let mut main = gam / (2.0 * std::f64::consts::PI).powf(1.5);
    for i in 0..3 {
        main *= x[i] as f64 / (euler_phi_of_small(q[i]) as f64 * (x[i] as f64).ln().sqrt());
    }
    Ok((empirical, main))
}

/// tau of the odd part: the divisor normalization of the generalized count.
pub fn tau_odd(n: u64, sieve: &FactorSieve) -> Result<u64> {
    factor(odd_part(n) as i64, sieve).map(|f| f.tau())
}
