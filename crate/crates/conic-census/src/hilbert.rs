//! Hilbert symbols over the places of Q and the product-formula self-check.

use crate::arith::{factor, jacobi, FactorSieve};
use crate::error::Result;

/// A place of Q: the real place or a finite prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Real,
    Finite(u64),
}

/// Hilbert symbol (a,b)_v for nonzero integers: 1 iff z^2 = a x^2 + b y^2 has a
/// nontrivial solution over the completion at `v`.
///
/// The symbol only depends on square classes, so integer inputs cover every use
/// here. At odd p it reduces to valuations and Legendre symbols, at p = 2 to the
/// classical eps/omega exponent, at the real place to signs.
pub fn hilbert(a: i64, b: i64, v: Place) -> i32 {
    assert!(a != 0 && b != 0, "hilbert symbol needs nonzero arguments");
    match v {
        Place::Real => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => hilbert2(a, b),
        Place::Finite(p) => hilbert_odd(a, b, p),
    }
}

fn split(mut n: i64, p: u64) -> (u32, i64) {
    let mut v = 0;
    while n % p as i64 == 0 {
        n /= p as i64;
        v += 1;
    }
    (v, n)
}

fn hilbert_odd(a: i64, b: i64, p: u64) -> i32 {
    debug_assert!(p > 2 && p % 2 == 1);
    let (alpha, u) = split(a, p);
    let (beta, w) = split(b, p);
    let mut r = 1i32;
    // (p,p) contributes (-1/p) once per crossed pair of odd valuations
    if alpha % 2 == 1 && beta % 2 == 1 {
        r *= jacobi(-1, p);
    }
    if beta % 2 == 1 {
        r *= jacobi(u, p);
    }
    if alpha % 2 == 1 {
        r *= jacobi(w, p);
    }
    r
}

/// (a,b)_2 = (-1)^{eps(u)eps(w) + alpha*omega(w) + beta*omega(u)} with
/// a = 2^alpha u, b = 2^beta w.
fn hilbert2(a: i64, b: i64) -> i32 {
    let (alpha, u) = split(a, 2);
    let (beta, w) = split(b, 2);
    // eps and omega only see the unit mod 4 resp. mod 8
    let eps = |x: i64| (x.rem_euclid(4) - 1) / 2;
    let omega = |x: i64| {
        let r = x.rem_euclid(8);
        (r * r - 1) / 8 % 2
    };
    let e = eps(u) * eps(w) + alpha as i64 * omega(w) + beta as i64 * omega(u);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Places that can possibly carry a nontrivial symbol for the pair (a,b):
/// the real place and the primes dividing 2ab.
pub fn relevant_places(a: i64, b: i64, sieve: &FactorSieve) -> Result<Vec<Place>> {
    let mut places = vec![Place::Real, Place::Finite(2)];
    let push = |p: u64, places: &mut Vec<Place>| {
        if p != 2 && !places.contains(&Place::Finite(p)) {
            places.push(Place::Finite(p));
        }
    };
    for &(p, _) in &factor(a, sieve)?.pairs {
        push(p, &mut places);
    }
    for &(p, _) in &factor(b, sieve)?.pairs {
        push(p, &mut places);
    }
    Ok(places)
}

/// Hilbert product formula: the symbols over all places multiply to 1.
/// Only the real place and primes dividing 2ab can contribute -1, so the
/// product is finite. Returns that finite product's equality with 1.
pub fn hilbert_product_check(a: i64, b: i64, sieve: &FactorSieve) -> Result<bool> {
    let mut prod = 1i32;
    for v in relevant_places(a, b, sieve)? {
        prod *= hilbert(a, b, v);
    }
    Ok(prod == 1)
}
