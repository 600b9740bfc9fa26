//! Exact local densities: enumeration over valuation classes with closed-form
//! geometric tails, the printed closed forms, and the projective conversions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::census::HomogeneousPoly;
use crate::error::{Error, Result};
use crate::hilbert::{hilbert, Place};

/// Arbitrary-precision rational; reduced with positive denominator by
/// construction.
pub type ExactRational = BigRational;

pub fn ratio(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Measure of { t in Z_p : v_p(t) = lambda mod 2 } as an exact rational:
/// (1 - 1/p) p^{-lambda} / (1 - p^{-2}).
fn parity_class_measure(p: u64, lambda: u32) -> ExactRational {
    let p = p as i64;
    let num = ratio(1, 1) - ratio(1, p);
    let tail = ratio(1, 1) - ratio(1, p * p);
    let scale = if lambda == 0 { ratio(1, 1) } else { ratio(1, p) };
    num * scale / tail
}

fn unit_residues(p: u64, depth: u32) -> Vec<i64> {
    let pk = (p as i64).pow(depth);
    (1..pk).filter(|r| r % p as i64 != 0).collect()
}

fn check_depth(p: u64, depth: u32) -> Result<()> {
    let need = if p == 2 { 3 } else { 1 };
    if depth < need {
        return Err(Error::Domain(format!(
            "depth {depth} too small for exact unit classes at p = {p}; need >= {need}"
        )));
    }
    Ok(())
}

/// Local density of everywhere-2-by-2-soluble coefficient triples at p, by
/// enumeration: split t_i = p^{v_i} c_i into valuation-parity classes (the
/// geometric series over each class summed in closed form, so the value is
/// exact, not truncated) and enumerate units modulo p^depth.  Returns the
/// projectively converted value, which matches the closed form.
pub fn local_density_conic(p: u64, depth: u32) -> Result<ExactRational> {
    check_depth(p, depth)?;
    let units = unit_residues(p, depth);
    let total = (units.len() as i64).pow(3);
    let mut affine = ExactRational::zero();
    for lam in 0..8u32 {
        let l = [(lam & 1), (lam >> 1) & 1, (lam >> 2) & 1];
        let mut good = 0i64;
        for &c0 in &units {
            for &c1 in &units {
                for &c2 in &units {
                    let a = -(p as i64).pow(l[0] + l[1]) * c0 * c1;
                    let b = -(p as i64).pow(l[0] + l[2]) * c0 * c2;
                    if hilbert(a, b, Place::Finite(p)) == 1 {
                        good += 1;
                    }
                }
            }
        }
        let class_measure = parity_class_measure(p, l[0])
            * parity_class_measure(p, l[1])
            * parity_class_measure(p, l[2]);
        affine += class_measure * ratio(good, total);
    }
    Ok(tamagawa_convert(&affine, 2, ConversionMode::AffineFull(p)))
}

/// Closed form of the conic density: 49/48 at p = 2, and
/// (1 + 1/p + 1/p^2)(2p^2 + p + 2) / (2 (p+1)^2) at odd p.
pub fn local_density_conic_closed(p: u64) -> ExactRational {
    if p == 2 {
        return ratio(49, 48);
    }
    let p = p as i64;
    (ratio(1, 1) + ratio(1, p) + ratio(1, p * p)) * ratio(2 * p * p + p + 2, 2 * (p + 1) * (p + 1))
}

/// Enumeration route for the two-squares family at a finite prime: density of
/// pairs (t0, t1) with t0/t1 a local norm from Q_p(i).
pub fn local_density_two_squares(p: u64, depth: u32) -> Result<ExactRational> {
    check_depth(p, depth)?;
    let units = unit_residues(p, depth);
    let total = (units.len() as i64).pow(2);
    let mut affine = ExactRational::zero();
    for lam in 0..4u32 {
        let l = [(lam & 1), (lam >> 1) & 1];
        let mut good = 0i64;
        for &c0 in &units {
            for &c1 in &units {
                let t = (p as i64).pow(l[0] + l[1]) * c0 * c1;
                if hilbert(t, -1, Place::Finite(p)) == 1 {
                    good += 1;
                }
            }
        }
        let class_measure = parity_class_measure(p, l[0]) * parity_class_measure(p, l[1]);
        affine += class_measure * ratio(good, total);
    }
    Ok(tamagawa_convert(&affine, 1, ConversionMode::AffineFull(p)))
}

/// Closed form for the two-squares family: 3/4 at p = 2, 1 + 1/p at p = 1 mod 4
/// (the full density of P^1), and 1 - (p-1)/(p(p+1)) at p = 3 mod 4.
pub fn local_density_two_squares_closed(p: u64) -> ExactRational {
    if p == 2 {
        return ratio(3, 4);
    }
    let q = p as i64;
    if p % 4 == 1 {
        ratio(q + 1, q)
    } else {
        ratio(1, 1) - ratio(q - 1, q * (q + 1))
    }
}

/// Real density of the two-squares family (same-sign pairs in the unit square,
/// projectively normalized).
pub const TWO_SQUARES_REAL_DENSITY: f64 = 2.0;

/// Real density of the conic family: 6 as a plain sign count, 9 = (3/2) * 6
/// after the projective conversion.
pub const CONIC_REAL_SIGN_COUNT: f64 = 6.0;

/// Projective Tamagawa conversions for densities on P^n.
#[derive(Clone, Copy, Debug)]
pub enum ConversionMode {
    /// tau_inf = ((n+1)/2) * (Lebesgue measure of the cone in [-1,1]^{n+1})
    RealCube,
    /// tau_p = (1 + 1/p + ... + 1/p^n) * (affine measure on Z_p^{n+1})
    AffineFull(u64),
    /// tau_p = (1 - 1/p)^{-1} * (measure of the primitive part)
    AffinePrimitive(u64),
}

pub fn tamagawa_convert(density: &ExactRational, n: u32, mode: ConversionMode) -> ExactRational {
    match mode {
        ConversionMode::RealCube => density * ratio(n as i64 + 1, 2),
        ConversionMode::AffineFull(p) => {
            let mut s = ExactRational::zero();
            let mut term = ExactRational::one();
            for _ in 0..=n {
                s += term.clone();
                term /= ratio(p as i64, 1);
            }
            density * s
        }
        ConversionMode::AffinePrimitive(p) => {
            density / (ExactRational::one() - ratio(1, p as i64))
        }
    }
}

/// Volume bracket for { x in Z_p^{n+1} : (g(x), a)_p = 1 } from residue
/// enumeration modulo p^depth.  Residues where v_p(g(x)) is too large to pin
/// the square class stay undecided and widen the bracket; `uncertainty` is
/// their measure (the documented tail heuristic: it shrinks like the measure
/// of the locus g = 0 mod p^depth).
#[derive(Clone, Debug)]
pub struct HilbertVolume {
    pub lower: ExactRational,
    pub upper: ExactRational,
}

impl HilbertVolume {
    pub fn midpoint(&self) -> f64 {
        let two = ratio(2, 1);
        rational_to_f64(&((self.lower.clone() + self.upper.clone()) / two))
    }

    pub fn uncertainty(&self) -> f64 {
        rational_to_f64(&(self.upper.clone() - self.lower.clone()))
    }
}

pub fn rational_to_f64(r: &ExactRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn hilbert_condition_volume(
    g: &HomogeneousPoly,
    a: i64,
    p: u64,
    depth: u32,
) -> Result<HilbertVolume> {
    let margin = if p == 2 { 3 } else { 1 };
    if depth < margin {
        return Err(Error::Domain(format!("depth {depth} too small at p = {p}")));
    }
    let pk = (p as i64).pow(depth);
    let nv = g.nvars;
    let total = (pk as i64).checked_pow(nv as u32).ok_or_else(|| {
        Error::Capacity("residue box too large for the requested depth".into())
    })?;
    if total > 200_000_000 {
        return Err(Error::Capacity(format!(
            "residue enumeration of {total} points exceeds budget"
        )));
    }
    let mut decided_true = 0i64;
    let mut undecided = 0i64;
    let mut x = vec![0i64; nv];
    enumerate_residues(g, a, p, depth, pk, &mut x, 0, &mut decided_true, &mut undecided);
    let lower = ratio(decided_true, 1) / ratio(total, 1);
    let upper = ratio(decided_true + undecided, 1) / ratio(total, 1);
    Ok(HilbertVolume { lower, upper })
}

#[allow(clippy::too_many_arguments)]
fn enumerate_residues(
    g: &HomogeneousPoly,
    a: i64,
    p: u64,
    depth: u32,
    pk: i64,
    x: &mut Vec<i64>,
    idx: usize,
    decided_true: &mut i64,
    undecided: &mut i64,
) {
    if idx == x.len() {
        let v = g.eval(x).rem_euclid(pk);
        if v == 0 {
            *undecided += 1;
            return;
        }
        let margin = if p == 2 { 3 } else { 1 };
        let mut val = v;
        let mut vp = 0u32;
        while val % p as i64 == 0 {
            val /= p as i64;
            vp += 1;
        }
        if vp + margin > depth {
            *undecided += 1;
        } else if hilbert(v, a, Place::Finite(p)) == 1 {
            *decided_true += 1;
        }
        return;
    }
    for r in 0..pk {
        x[idx] = r;
        enumerate_residues(g, a, p, depth, pk, x, idx + 1, decided_true, undecided);
    }
    x[idx] = 0;
}
