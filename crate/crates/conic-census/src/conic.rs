//! Solubility of diagonal ternary conics over R, Q_p and Q, the Holzer-bounded
//! rational-point oracle, and norm-form representability.

use crate::arith::{factor, gcd3, gcd_u64, FactorSieve};
use crate::error::{Error, Result};
use crate::hilbert::{hilbert, Place};

/// The conic t0 x0^2 + t1 x1^2 + t2 x2^2 = 0 with nonzero integer coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagonalConic {
    t: [i64; 3],
}

impl DiagonalConic {
    /// Rejects any zero coefficient.
    pub fn new(t0: i64, t1: i64, t2: i64) -> Result<Self> {
        if t0 == 0 || t1 == 0 || t2 == 0 {
            return Err(Error::Domain("conic coefficients must be nonzero".into()));
        }
        Ok(DiagonalConic { t: [t0, t1, t2] })
    }

    pub fn coeffs(&self) -> [i64; 3] {
        self.t
    }
}

/// A squarefree pairwise-coprime model of a conic, together with the witness of
/// how it was reached: square parts `b_i`, the common content of the squarefree
/// kernels, and the pairwise gcds `m_ij`.
///
/// The reduced coefficients follow the fixed convention
/// `(sign0 * n1 * m23, sign1 * n2 * m13, sign2 * n3 * m12)`
/// coming from the invertible change of variables
/// `Y1 = m12 m13 x1, Y2 = m12 m23 x2, Y3 = m13 m23 x3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedConic {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    /// b_i with t_i = sign_i * b_i^2 * (squarefree kernel)
    pub square_parts: [u64; 3],
    /// gcd of the three squarefree kernels, divided out of the equation
    pub content: u64,
    /// (m12, m13, m23): pairwise gcds of the kernels after removing the content
    pub pair_gcds: [u64; 3],
    /// odd primes dividing abc, inherited from the original coefficients
    pub odd_prime_support: Vec<u64>,
}

impl ReducedConic {
    pub fn coeffs(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn abs_product(&self) -> u64 {
        self.a.unsigned_abs() * self.b.unsigned_abs() * self.c.unsigned_abs()
    }
}

/// Reduces a conic to a squarefree pairwise-coprime model with the same
/// solubility over every completion: squares are absorbed into the variables,
/// the common content is divided out of the equation, and the pairwise gcds are
/// moved across by the change of variables above.
pub fn reduce(conic: &DiagonalConic, sieve: &FactorSieve) -> Result<ReducedConic> {
    let mut sq = [1u64; 3];
    let mut kern = [1u64; 3];
    let mut support = Vec::new();
    for i in 0..3 {
        let f = factor(conic.t[i], sieve)?;
        for &(p, e) in &f.pairs {
            sq[i] *= p.pow(e / 2);
            if e % 2 == 1 {
                kern[i] *= p;
            }
            if p != 2 && !support.contains(&p) {
                support.push(p);
            }
        }
    }
    let g = gcd3(kern[0], kern[1], kern[2]);
    let k = [kern[0] / g, kern[1] / g, kern[2] / g];
    let m12 = gcd_u64(k[0], k[1]);
    let m13 = gcd_u64(k[0], k[2]);
    let m23 = gcd_u64(k[1], k[2]);
    let n1 = k[0] / (m12 * m13);
    let n2 = k[1] / (m12 * m23);
    let n3 = k[2] / (m13 * m23);
    let s = conic.t.map(i64::signum);
    support.sort_unstable();
    Ok(ReducedConic {
        a: s[0] * (n1 * m23) as i64,
        b: s[1] * (n2 * m13) as i64,
        c: s[2] * (n3 * m12) as i64,
        square_parts: sq,
        content: g,
        pair_gcds: [m12, m13, m23],
        odd_prime_support: support,
    })
}

/// Solubility over the completion at `v`.
///
/// Real place: soluble iff the three signs are not all equal. Finite place:
/// the Hilbert symbol (-t0 t1, -t0 t2)_v of the reduced model equals 1.
pub fn soluble_at(conic: &DiagonalConic, v: Place, sieve: &FactorSieve) -> Result<bool> {
    let r = reduce(conic, sieve)?;
    Ok(reduced_soluble_at(&r, v))
}

fn reduced_soluble_at(r: &ReducedConic, v: Place) -> bool {
    match v {
        Place::Real => !(r.a > 0 && r.b > 0 && r.c > 0) && !(r.a < 0 && r.b < 0 && r.c < 0),
        p => hilbert(-r.a * r.b, -r.a * r.c, p) == 1,
    }
}

/// Solubility over Q by Hasse-Minkowski: the real place plus every prime
/// dividing twice the (reduced) coefficient product decide it.
pub fn soluble_q(conic: &DiagonalConic, sieve: &FactorSieve) -> Result<bool> {
    let r = reduce(conic, sieve)?;
    Ok(reduced_soluble_q(&r))
}

pub(crate) fn reduced_soluble_q(r: &ReducedConic) -> bool {
    if !reduced_soluble_at(r, Place::Real) {
        return false;
    }
    if hilbert(-r.a * r.b, -r.a * r.c, Place::Finite(2)) != 1 {
        return false;
    }
    for &p in &r.odd_prime_support {
        if hilbert(-r.a * r.b, -r.a * r.c, Place::Finite(p)) != 1 {
            return false;
        }
    }
    true
}

/// Brute-force rational point search on a reduced conic, exhaustive over the
/// Holzer box |x| <= sqrt|bc|, |y| <= sqrt|ac|, |z| <= sqrt|ab|. By Holzer's
/// theorem a soluble reduced conic has a point in that box, so `None` certifies
/// insolubility over Q.
pub fn rational_point_oracle(r: &ReducedConic) -> Result<Option<(i64, i64, i64)>> {
    let (a, b, c) = (r.a, r.b, r.c);
    if (a > 0 && b > 0 && c > 0) || (a < 0 && b < 0 && c < 0) {
        return Ok(None);
    }
    let xb = ((b * c).unsigned_abs() as f64).sqrt() as i64 + 1;
    let yb = ((a * c).unsigned_abs() as f64).sqrt() as i64 + 1;
    let zb = ((a * b).unsigned_abs() as f64).sqrt() as i64 + 1;
    let triples = xb as u128 * yb as u128 * zb as u128;
    if triples > 2_000_000_000 {
        return Err(Error::Capacity(format!(
            "Holzer box of {triples} triples too large for |abc| = {}",
            r.abs_product()
        )));
    }
    for x in 0..=xb {
        for y in 0..=yb {
            if x == 0 && y == 0 {
                continue;
            }
            let s = -(a * x * x + b * y * y);
            if s % c != 0 {
                continue;
            }
            let q = s / c;
            if q < 0 {
                continue;
            }
            let z = (q as f64).sqrt() as i64;
            for zz in z.saturating_sub(1)..=z + 1 {
                if zz >= 0 && zz * zz == q {
                    return Ok(Some((x, y, zz)));
                }
            }
        }
    }
    Ok(None)
}

/// Q_2-solubility by the congruence criterion, an independent second route.
///
/// Domain: v2(abc) in {0,1} with squarefree odd part (the reduced model).
/// v2 = 0 case: some pair r_i + r_j = 0 mod 4.
/// v2(r_k) = 1 case: r_i + r_j + s r_k = 0 mod 8 for some s in {0,1}.
pub fn soluble_at_2_congruence(r: &ReducedConic) -> Result<bool> {
    let t = r.coeffs();
    let v2: Vec<u32> = t.iter().map(|&x| x.unsigned_abs().trailing_zeros()).collect();
    let total: u32 = v2.iter().sum();
    if total > 1 {
        return Err(Error::Domain(format!(
            "congruence criterion needs v2(abc) in {{0,1}}, got {total}"
        )));
    }
    let m4 = |x: i64| x.rem_euclid(4);
    let m8 = |x: i64| x.rem_euclid(8);
    if total == 0 {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if m4(t[i] + t[j]) == 0 {
                return Ok(true);
            }
        }
        Ok(false)
    } else {
        let k = v2.iter().position(|&v| v == 1).unwrap();
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        Ok(m8(t[i] + t[j]) == 0 || m8(t[i] + t[j] + t[k]) == 0)
    }
}

/// Whether the nonzero rational num/den is a norm from Q(sqrt(a)), i.e. the
/// Hilbert symbol (num*den, a)_v is 1 at every place. For a = -1 this is the
/// sum-of-two-squares criterion: positive, and v_p even at every p = 3 mod 4.
pub fn norm_representable(num: i64, den: i64, a: i64, sieve: &FactorSieve) -> Result<bool> {
    if num == 0 || den == 0 {
        return Err(Error::Domain("norm_representable needs a nonzero rational".into()));
    }
    // t = num/den and num*den differ by the square den^2
    let t = num
        .checked_mul(den)
        .ok_or_else(|| Error::Capacity("norm_representable: num*den overflows".into()))?;
    if hilbert(t, a, Place::Real) != 1 {
        return Ok(false);
    }
    if hilbert(t, a, Place::Finite(2)) != 1 {
        return Ok(false);
    }
    let mut primes = factor(t, sieve)?.pairs;
    primes.extend(factor(a, sieve)?.pairs);
    for (p, _) in primes {
        if p != 2 && hilbert(t, a, Place::Finite(p)) != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve() -> FactorSieve {
        FactorSieve::new(100_000).unwrap()
    }

    fn conic(t0: i64, t1: i64, t2: i64) -> DiagonalConic {
        DiagonalConic::new(t0, t1, t2).unwrap()
    }

    #[test]
    fn zero_coefficient_rejected() {
        assert!(DiagonalConic::new(1, 0, 2).is_err());
    }

    #[test]
    fn reduce_examples() {
        let s = sieve();
        let r = reduce(&conic(4, 9, -25), &s).unwrap();
        assert_eq!(r.coeffs(), [1, 1, -1]);
        assert_eq!(r.square_parts, [2, 3, 5]);

        let r = reduce(&conic(6, 10, -15), &s).unwrap();
        assert_eq!(r.pair_gcds, [2, 3, 5]);
        assert_eq!(r.coeffs(), [5, 3, -2]);

        let r = reduce(&conic(1, 1, -1), &s).unwrap();
        assert_eq!(r.coeffs(), [1, 1, -1]);
        assert_eq!(r.content, 1);

        // common content of the kernels is divided out
        let r = reduce(&conic(2, 2, -2), &s).unwrap();
        assert_eq!(r.coeffs(), [1, 1, -1]);
        assert_eq!(r.content, 2);
    }

    #[test]
    fn reduced_invariants_hold() {
        let s = sieve();
        for t0 in -40i64..=40 {
            for t1 in -40i64..=40 {
                for t2 in [-35i64, -12, -7, 1, 18, 45] {
                    if t0 == 0 || t1 == 0 {
                        continue;
                    }
                    let r = reduce(&conic(t0, t1, t2), &s).unwrap();
                    let [a, b, c] = r.coeffs().map(|x| x.unsigned_abs());
                    assert_eq!(gcd_u64(a, b), 1);
                    assert_eq!(gcd_u64(a, c), 1);
                    assert_eq!(gcd_u64(b, c), 1);
                    let f = factor((a * b * c) as i64, &s).unwrap();
                    assert!(f.is_squarefree());
                }
            }
        }
    }

    #[test]
    fn real_place_criterion() {
        let s = sieve();
        assert!(!soluble_at(&conic(1, 1, 1), Place::Real, &s).unwrap());
        assert!(!soluble_at(&conic(-2, -3, -5), Place::Real, &s).unwrap());
        assert!(soluble_at(&conic(1, 1, -1), Place::Real, &s).unwrap());
    }

    #[test]
    fn solubility_examples() {
        let s = sieve();
        assert!(!soluble_at(&conic(1, 1, -3), Place::Finite(3), &s).unwrap());
        for v in [Place::Real, Place::Finite(2), Place::Finite(3), Place::Finite(5)] {
            assert!(soluble_at(&conic(1, 1, -2), v, &s).unwrap());
        }
        assert!(soluble_q(&conic(1, 1, -2), &s).unwrap());
        assert!(!soluble_q(&conic(1, 1, -3), &s).unwrap());
        // (3,5,-7): the Holzer oracle decides
        let r = reduce(&conic(3, 5, -7), &s).unwrap();
        let oracle = rational_point_oracle(&r).unwrap();
        assert_eq!(soluble_q(&conic(3, 5, -7), &s).unwrap(), oracle.is_some());
    }

    #[test]
    fn holzer_examples() {
        let s = sieve();
        let r = reduce(&conic(1, 1, -2), &s).unwrap();
        let p = rational_point_oracle(&r).unwrap().unwrap();
        assert_eq!(p, (1, 1, 1));
        let r = reduce(&conic(1, 1, -3), &s).unwrap();
        assert!(rational_point_oracle(&r).unwrap().is_none());
        let r = reduce(&conic(2, 3, -5), &s).unwrap();
        let (x, y, z) = rational_point_oracle(&r).unwrap().unwrap();
        assert!(x.max(y).max(z) <= 3);
        assert_eq!(2 * x * x + 3 * y * y, 5 * z * z);
    }

    #[test]
    fn hasse_agreement_small() {
        // full agreement is the acceptance suite's job; here a quick slice
        let s = sieve();
        for a in 1..=12i64 {
            for b in 1..=12i64 {
                for c in 1..=12i64 {
                    let conic = conic(a, b, -c);
                    let r = reduce(&conic, &s).unwrap();
                    let point = rational_point_oracle(&r).unwrap();
                    if let Some((x, y, z)) = point {
                        assert_eq!(r.a * x * x + r.b * y * y + r.c * z * z, 0);
                    }
                    assert_eq!(soluble_q(&conic, &s).unwrap(), point.is_some(), "({a},{b},-{c})");
                }
            }
        }
    }

    #[test]
    fn congruence_route_examples() {
        let s = sieve();
        let r = reduce(&conic(1, 3, 5), &s).unwrap();
        assert!(soluble_at_2_congruence(&r).unwrap()); // 1 + 3 = 0 mod 4
        let r = reduce(&conic(1, 1, 1), &s).unwrap();
        assert!(!soluble_at_2_congruence(&r).unwrap());
        let r = reduce(&conic(2, 1, 5), &s).unwrap();
        assert!(soluble_at_2_congruence(&r).unwrap()); // 1 + 5 + 2 = 8
        let r = reduce(&conic(2, 6, 10), &s).unwrap(); // v2(abc) = 3 after reduction? kernels (2,6,10)->content 2->(1,3,5)
        assert_eq!(r.coeffs(), [1, 3, 5]);
        let bad = ReducedConic {
            a: 2,
            b: 6,
            c: 1,
            square_parts: [1; 3],
            content: 1,
            pair_gcds: [1; 3],
            odd_prime_support: vec![3],
        };
        assert!(soluble_at_2_congruence(&bad).is_err());
    }

    #[test]
    fn two_route_q2_agreement_mod16() {
        // exhaustive over the precondition domain, coefficients mod 16
        let s = sieve();
        let odd: Vec<i64> = (-15..=15).filter(|x| x % 2 != 0).collect();
        let even: Vec<i64> = odd.iter().map(|&u| 2 * u).collect();
        let mut cases = 0;
        for k in 0..4 {
            // k = 3 means all odd; otherwise slot k carries v2 = 1
            let slots: [&[i64]; 3] = match k {
                0 => [&even, &odd, &odd],
                1 => [&odd, &even, &odd],
                2 => [&odd, &odd, &even],
                _ => [&odd, &odd, &odd],
            };
            for &a in slots[0] {
                for &b in slots[1] {
                    for &c in slots[2] {
                        let conic = conic(a, b, c);
                        let r = reduce(&conic, &s).unwrap();
                        if r.coeffs().iter().map(|x| x.unsigned_abs().trailing_zeros()).sum::<u32>() > 1 {
                            continue;
                        }
                        assert_eq!(
                            soluble_at_2_congruence(&r).unwrap(),
                            reduced_soluble_at(&r, Place::Finite(2)),
                            "({a},{b},{c})"
                        );
                        cases += 1;
                    }
                }
            }
        }
        assert!(cases > 10_000);
    }

    #[test]
    fn scaling_permutation_square_invariance() {
        let s = sieve();
        let vals = [-9i64, -5, -2, -1, 1, 3, 6, 10];
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    let base = soluble_q(&conic(a, b, c), &s).unwrap();
                    for lambda in [-3i64, -1, 2, 5] {
                        assert_eq!(
                            soluble_q(&conic(lambda * a, lambda * b, lambda * c), &s).unwrap(),
                            base
                        );
                    }
                    assert_eq!(soluble_q(&conic(b, c, a), &s).unwrap(), base);
                    assert_eq!(soluble_q(&conic(c, b, a), &s).unwrap(), base);
                    assert_eq!(soluble_q(&conic(4 * a, 9 * b, 49 * c), &s).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn norm_representable_examples() {
        let s = sieve();
        assert!(norm_representable(5, 1, -1, &s).unwrap()); // 5 = 1 + 4
        assert!(!norm_representable(3, 1, -1, &s).unwrap()); // v_3 odd, 3 = 3 mod 4
        assert!(norm_representable(9, 2, -1, &s).unwrap()); // 9/2 = (3/2)^2 + (3/2)^2
        assert!(!norm_representable(-5, 1, -1, &s).unwrap()); // negative
        assert!(norm_representable(7, 1, 2, &s).unwrap()); // 7 = 3^2 - 2*1^2
        assert!(!norm_representable(2, 3, 2, &s).unwrap()); // 3 inert in Q(sqrt 2), v_3 odd
    }

    #[test]
    fn norm_representable_matches_two_square_search() {
        // against exhaustive search for x^2 + y^2 = num/den with denominators <= 50
        let s = sieve();
        let mut tested = 0;
        for num in 1..=60i64 {
            for den in 1..=20i64 {
                if gcd_u64(num as u64, den as u64) != 1 {
                    continue;
                }
                // num/den = (p/q)^2 + (r/q)^2 over common denominator q <= 50
                let mut found = false;
                'search: for q in 1..=50i64 {
                    // p^2 + r^2 = num/den * q^2 must be an integer
                    if (num * q * q) % den != 0 {
                        continue;
                    }
                    let target = num * q * q / den;
                    let mut p = 0i64;
                    while p * p <= target {
                        let rest = target - p * p;
                        let r = (rest as f64).sqrt() as i64;
                        for rr in r.saturating_sub(1)..=r + 1 {
                            if rr >= 0 && rr * rr == rest {
                                found = true;
                                break 'search;
                            }
                        }
                        p += 1;
                    }
                }
                assert_eq!(
                    norm_representable(num, den, -1, &s).unwrap(),
                    found,
                    "{num}/{den}"
                );
                tested += 1;
            }
        }
        assert!(tested > 500);
    }
}
