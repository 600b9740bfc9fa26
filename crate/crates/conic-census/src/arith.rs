//! Smallest-prime-factor sieve, bulk factorization and the handful of
//! multiplicative functions the rest of the crate leans on.

use crate::error::{Error, Result};

/// Default memory budget for the sieve table (1 GiB of `u32` entries).
pub const DEFAULT_SIEVE_BUDGET_BYTES: u64 = 1 << 30;

/// Precomputed table of smallest prime factors for every integer up to `limit`.
///
/// Immutable after construction; shared read-only across census workers.
#[derive(Clone)]
pub struct FactorSieve {
    limit: u64,
    spf: Vec<u32>,
}

impl FactorSieve {
    /// Builds the table for all `n <= limit` in one allocation.
    ///
    /// `spf[0]` is unused and `spf[1] = 1` is a sentinel.
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_budget(limit, DEFAULT_SIEVE_BUDGET_BYTES)
    }

    pub fn with_budget(limit: u64, budget_bytes: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Domain(format!("sieve limit must be >= 2, got {limit}")));
        }
        let bytes = (limit + 1) * 4;
        if bytes > budget_bytes || limit + 1 > u32::MAX as u64 {
            return Err(Error::Capacity(format!(
                "sieve of limit {limit} needs {bytes} bytes, budget is {budget_bytes}"
            )));
        }
        let n = (limit + 1) as usize;
        let mut spf: Vec<u32> = vec![0; n];
        spf[1] = 1;
        for i in (2..n).step_by(2) {
            spf[i] = 2;
        }
        let mut p = 3usize;
        while p * p < n {
            if spf[p] == 0 {
                for m in (p * p..n).step_by(2 * p) {
                    if spf[m] == 0 {
                        spf[m] = p as u32;
                    }
                }
            }
            p += 2;
        }
        // remaining zeros are odd primes
        for i in (3..n).step_by(2) {
            if spf[i] == 0 {
                spf[i] = i as u32;
            }
        }
        Ok(FactorSieve { limit, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `n` (`1` for `n = 1`).
    #[inline]
    pub fn spf(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    #[inline]
    fn check(&self, n: i64) -> Result<u64> {
        let a = n.unsigned_abs();
        if n == 0 {
            return Err(Error::Domain("cannot factor 0".into()));
        }
        if a > self.limit {
            return Err(Error::OutOfRange { value: n, limit: self.limit });
        }
        Ok(a)
    }
}

/// Prime factorization with strictly increasing primes and exponents >= 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn tau(&self) -> u64 {
        self.pairs.iter().map(|&(_, e)| (e + 1) as u64).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    /// Radical restricted to odd primes.
    pub fn odd_radical(&self) -> u64 {
        self.pairs.iter().filter(|&&(p, _)| p != 2).map(|&(p, _)| p).product()
    }
}

/// Factors `|n|`; the sign is the caller's business. `factor(±1)` is the empty product.
pub fn factor(n: i64, sieve: &FactorSieve) -> Result<Factorization> {
    let mut m = sieve.check(n)?;
    let mut pairs = Vec::new();
    while m > 1 {
        let p = sieve.spf(m);
        let mut e = 0u32;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        pairs.push((p, e));
    }
    Ok(Factorization { pairs })
}

/// mu^2(n): 1 if squarefree, else 0.
pub fn moebius_sq(n: u64, sieve: &FactorSieve) -> Result<u8> {
    Ok(factor(n as i64, sieve)?.is_squarefree() as u8)
}

/// Divisor count tau(n).
pub fn tau(n: u64, sieve: &FactorSieve) -> Result<u64> {
    Ok(factor(n as i64, sieve)?.tau())
}

/// Exponent of the prime `p` in `n`.
pub fn v_p(n: u64, p: u64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut m = n;
    let mut v = 0;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    v
}

/// n * 2^{-v_2(n)}.
pub fn odd_part(n: u64) -> u64 {
    debug_assert!(n != 0);
    n >> n.trailing_zeros()
}

/// Jacobi symbol (a/n) for odd positive n, by the binary reciprocity loop.
///
/// Panics when `n` is even or zero; see [`checked_jacobi`] for the fallible form.
pub fn jacobi(a: i64, n: u64) -> i32 {
    checked_jacobi(a, n).expect("jacobi: modulus must be odd and positive")
}

pub fn checked_jacobi(a: i64, n: u64) -> Result<i32> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::Domain(format!("jacobi modulus must be odd positive, got {n}")));
    }
    let mut n = n;
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut t = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    gcd_u64(gcd_u64(a, b), c)
}
