//! Exact evaluation of the treewidth bound formulas.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of a bound evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    pub k: u64,
    pub r: u64,
}

impl BoundParams {
    pub fn new(k: u64, r: u64) -> Result<Self> {
        if k == 0 || r == 0 {
            return Err(Error::Parameter("k and r must be positive".into()));
        }
        Ok(BoundParams { k, r })
    }
}

/// `k²r²·20 − 8k²r + 2r − 1`, the bound as printed in the theorem statement.
pub fn bound_th2(k: u64, r: u64) -> Result<BigUint> {
    let p = BoundParams::new(k, r)?;
    let (k, r) = (BigUint::from(p.k), BigUint::from(p.r));
    let k2 = &k * &k;
    Ok(BigUint::from(20u32) * &k2 * &r * &r + BigUint::from(2u32) * &r - BigUint::from(8u32) * &k2 * &r - 1u32)
}

/// Same formula with `+ 2k − 1`, the constant its proof works with.
pub fn bound_th2_proof_variant(k: u64, r: u64) -> Result<BigUint> {
    let p = BoundParams::new(k, r)?;
    let (k, r) = (BigUint::from(p.k), BigUint::from(p.r));
    let k2 = &k * &k;
    Ok(BigUint::from(20u32) * &k2 * &r * &r + BigUint::from(2u32) * &k - BigUint::from(8u32) * &k2 * &r - 1u32)
}

/// Upper bound on the average degree that forces a `K_t` minor: `648·t·√(log₂ t)`.
pub fn kostochka_threshold(t: u64) -> Result<f64> {
    if t == 0 {
        return Err(Error::Parameter("t must be positive".into()));
    }
    Ok(648.0 * t as f64 * (t as f64).log2().sqrt())
}

/// `k² log₂(2k) (180·2^{r(r−2)} − 24·2^{r(r−2)/2}) + 6·2^{r(r−2)/2} − 1`.
///
/// Written as `L·(P + Q√2) + (R + S√2)` with `L = log₂(2k)` and integer
/// coefficients; `√2` appears only when `r(r−2)` is odd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Th1Bound {
    pub k: u64,
    pub r: u64,
    /// `log₂(2k)` when it is an integer (k a power of two).
    pub log_term_exact: Option<u64>,
    pub p: BigInt,
    pub q: BigInt,
    pub r_coeff: BigInt,
    pub s: BigInt,
    /// Smallest integer not below the bound.
    pub ceiling: BigUint,
}

impl Th1Bound {
    pub fn symbolic(&self) -> String {
        let log = match self.log_term_exact {
            Some(l) => l.to_string(),
            None => format!("log2({})", 2 * self.k),
        };
        if self.q.is_zero() && self.s.is_zero() {
            format!("{log}*({}) + ({})", self.p, self.r_coeff)
        } else {
            format!("{log}*({} + {}*sqrt2) + ({} + {}*sqrt2)", self.p, self.q, self.r_coeff, self.s)
        }
    }
}

pub fn bound_th1(k: u64, r: u64) -> Result<Th1Bound> {
    let p = BoundParams::new(k, r)?;
    if p.r <= 5 {
        return Err(Error::Domain(format!("the pathwidth-two bound needs r > 5, got r = {}", p.r)));
    }
    let e = p.r * (p.r - 2);
    let k2 = BigInt::from(p.k) * BigInt::from(p.k);
    let pow = |x: u64| BigInt::one() << x;
    let (pc, qc, rc, sc) = if e % 2 == 0 {
        let half = pow(e / 2);
        (
            &k2 * (BigInt::from(180) * pow(e) - BigInt::from(24) * &half),
            BigInt::zero(),
            BigInt::from(6) * &half - 1,
            BigInt::zero(),
        )
    } else {
        // 2^{e/2} = 2^{(e−1)/2}·√2
        let half = pow((e - 1) / 2);
        (
            &k2 * BigInt::from(180) * pow(e),
            -(&k2 * BigInt::from(24) * &half),
            BigInt::from(-1),
            BigInt::from(6) * &half,
        )
    };
    let log_term_exact = (p.k.is_power_of_two()).then(|| 1 + p.k.trailing_zeros() as u64);
    let ceiling = ceiling_of(p.k, &pc, &qc, &rc, &sc)?;
    Ok(Th1Bound {
        k: p.k,
        r: p.r,
        log_term_exact,
        p: pc,
        q: qc,
        r_coeff: rc,
        s: sc,
        ceiling,
    })
}

/// Interval `[lo, hi]` of numerators over `2^bits`.
#[derive(Clone, Debug)]
struct Interval {
    lo: BigInt,
    hi: BigInt,
}

/// Bounds on `log₂(x)·2^bits` from repeated squaring with outward rounding.
fn log2_interval(x: u64, bits: u32) -> Interval {
    let int_part = 63 - x.leading_zeros() as u64;
    let scale = bits + 8;
    let one = BigInt::one() << scale;
    let two = &one << 1;
    // y = x / 2^int_part in [1, 2), kept as lower/upper fixed-point bounds.
    let y = (BigInt::from(x) << scale) >> int_part;
    let (mut lo, mut hi) = (y.clone(), y);
    let mut frac = BigInt::zero();
    let mut known = 0;
    for _ in 0..bits {
        lo = (&lo * &lo) >> scale;
        hi = ((&hi * &hi) >> scale) + 1;
        let lo_bit = lo >= two;
        let hi_bit = hi >= two;
        if lo_bit != hi_bit {
            break;
        }
        frac <<= 1;
        if lo_bit {
            frac += 1;
            lo >>= 1;
            hi = (hi >> 1) + 1;
        }
        known += 1;
    }
    let width = BigInt::one() << (bits - known);
    let base = (BigInt::from(int_part) << bits) + (frac << (bits - known));
    Interval {
        lo: base.clone(),
        hi: base + width,
    }
}

fn sqrt2_interval(bits: u32) -> Interval {
    let lo = (BigInt::from(2) << (2 * bits)).sqrt();
    Interval { hi: &lo + 1, lo }
}

fn mul(a: &Interval, c: &BigInt) -> Interval {
    let (x, y) = (&a.lo * c, &a.hi * c);
    if c.is_negative() {
        Interval { lo: y, hi: x }
    } else {
        Interval { lo: x, hi: y }
    }
}

fn floor_div(x: &BigInt, shift: u32) -> BigInt {
    x >> shift
}

fn ceil_div(x: &BigInt, shift: u32) -> BigInt {
    -((-x) >> shift)
}

fn ceiling_of(k: u64, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) -> Result<BigUint> {
    for bits in [96u32, 192, 384, 768, 1536, 3072] {
        // L = 1 + log2(k), scaled by 2^bits; √2 scaled by 2^bits.
        let mut l = log2_interval(k, bits);
        l.lo += BigInt::one() << bits;
        l.hi += BigInt::one() << bits;
        let root = sqrt2_interval(bits);
        // Every term is scaled by 2^(2·bits).
        let lp = mul(&l, &(p << bits));
        let q_root = mul(&root, q);
        let lq = Interval {
            lo: [&l.lo * &q_root.lo, &l.lo * &q_root.hi, &l.hi * &q_root.lo, &l.hi * &q_root.hi]
                .into_iter()
                .min()
                .unwrap(),
            hi: [&l.lo * &q_root.lo, &l.lo * &q_root.hi, &l.hi * &q_root.lo, &l.hi * &q_root.hi]
                .into_iter()
                .max()
                .unwrap(),
        };
        let rs = mul(&root, &(s << bits));
        let constant = r << (2 * bits);
        let lo = &lp.lo + &lq.lo + &rs.lo + &constant;
        let hi = &lp.hi + &lq.hi + &rs.hi + &constant;
        let exact_integer = k.is_power_of_two() && q.is_zero() && s.is_zero();
        let (c_lo, c_hi) = (ceil_div(&lo, 2 * bits), ceil_div(&hi, 2 * bits));
        if exact_integer {
            // L is an exact integer; the interval collapses onto it.
            let l_int = BigInt::from(1 + k.trailing_zeros());
            let value = l_int * p + r;
            return value.to_biguint().ok_or_else(|| Error::Invariant("negative bound".into()));
        }
        if c_lo == c_hi && floor_div(&lo, 2 * bits) != c_lo {
            return c_lo.to_biguint().ok_or_else(|| Error::Invariant("negative bound".into()));
        }
    }
    Err(Error::Invariant("bound ceiling did not converge".into()))
}

/// Treewidth threshold of the mesh-to-linkage step: `5pq − 2q + 2p − 1`.
pub fn linkage_threshold(p: u64, q: u64) -> u64 {
    5 * p * q + 2 * p - 2 * q - 1
}

/// Order of the mesh requested by the mesh-to-linkage step: `(2p − 1)(2q + 1)`.
pub fn linkage_mesh_order(p: u64, q: u64) -> u64 {
    (2 * p - 1) * (2 * q + 1)
}

/// Treewidth below which a graph has no `q`-mesh of order `p` is impossible: `p + q − 1`.
pub fn mesh_threshold(p: u64, q: u64) -> u64 {
    p + q - 1
}

/// Treewidth threshold of the paired-linkage step: `20p²q² − 8p²q + 2q − 1`.
pub fn paired_linkage_threshold(p: u64, q: u64) -> u64 {
    20 * p * p * q * q + 2 * q - 8 * p * p * q - 1
}

/// `r₀ = 3·2^{r(r−2)/2}` as an exact `(mantissa, exponent₂, has √2 factor)` triple.
pub fn th1_r0_exponent(r: u64) -> (u64, u64, bool) {
    let e = r * (r - 2);
    (3, e / 2, e % 2 == 1)
}

pub fn to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
