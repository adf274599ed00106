//! Point-count bounds for hypersurfaces and curves, and the report that
//! sets them against a measured count.
//!
//! All arithmetic is exact on `u128` with overflow reported as an error;
//! the one square root (the genus term of the curve bound) is an integer
//! square root, so no floating point is involved anywhere.

mod classify;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use classify::classify_with;
pub use classify::{classify, Classification, ClassifyOptions, Evidence, TheoremCase, Verdict};

fn geometric_sum(q: u128, top: u32) -> Result<u128> {
    // 1 + q + ... + q^top
    let mut acc: u128 = 0;
    let mut pw: u128 = 1;
    for i in 0..=top {
        acc = acc.checked_add(pw).ok_or(Error::Overflow)?;
        if i < top {
            pw = pw.checked_mul(q).ok_or(Error::Overflow)?;
        }
    }
    Ok(acc)
}

fn pow(q: u128, e: u32) -> Result<u128> {
    q.checked_pow(e).ok_or(Error::Overflow)
}

/// `|P^N(F_q)| = q^N + ... + q + 1`.
pub fn proj_space_count(n: u32, q: u64) -> Result<u128> {
    geometric_sum(q as u128, n)
}

/// `(d-1) q^n + d q^(n-1) + q^(n-2) + ... + q + 1`, defined for `n >= 2`.
pub fn theta(n: u32, d: u64, q: u64) -> Result<u128> {
    if n < 2 {
        return Err(Error::UnsupportedDimension(n as usize));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let q = q as u128;
    let d = d as u128;
    let head = (d - 1).checked_mul(pow(q, n)?).ok_or(Error::Overflow)?;
    let mid = d.checked_mul(pow(q, n - 1)?).ok_or(Error::Overflow)?;
    let tail = geometric_sum(q, n - 2)?;
    head.checked_add(mid).and_then(|x| x.checked_add(tail)).ok_or(Error::Overflow)
}

/// `d q^n + q^(n-1) + ... + q + 1`, valid for every hypersurface of degree `d`
/// and dimension `n`.
pub fn serre_bound(n: u32, d: u64, q: u64) -> Result<u128> {
    let q = q as u128;
    let head = (d as u128).checked_mul(pow(q, n)?).ok_or(Error::Overflow)?;
    let tail = if n == 0 { 0 } else { geometric_sum(q, n - 1)? };
    head.checked_add(tail).ok_or(Error::Overflow)
}

/// `(d-1) q + 2` for plane curves without `F_q`-linear components. It is
/// attained only when `d = q = 4`; otherwise the count is at most one less.
pub fn sziklai_bound(d: u64, q: u64) -> Result<u128> {
    if d < 2 {
        return Err(Error::InvalidArgument("curve bound needs d >= 2".into()));
    }
    ((d - 1) as u128).checked_mul(q as u128).and_then(|x| x.checked_add(2)).ok_or(Error::Overflow)
}

/// Whether equality in [`sziklai_bound`] is possible at all for `(d, q)`.
pub fn sziklai_equality_possible(d: u64, q: u64) -> bool {
    d == 4 && q == 4
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Arithmetic genus `(d-1)(d-2)/2` of a plane curve of degree `d`.
pub fn arithmetic_genus(d: u64) -> u128 {
    if d < 2 {
        return 0;
    }
    ((d - 1) as u128 * (d - 2) as u128) / 2
}

/// `q + 1 + floor(2 g sqrt(q))` with `g` the arithmetic genus; exact when `q`
/// is a square.
pub fn aubry_perret_bound(d: u64, q: u64) -> Result<u128> {
    let g = arithmetic_genus(d);
    let q = q as u128;
    // floor(2 g sqrt(q)) = isqrt(4 g^2 q)
    let inner = g
        .checked_mul(g)
        .and_then(|x| x.checked_mul(4))
        .and_then(|x| x.checked_mul(q))
        .ok_or(Error::Overflow)?;
    q.checked_add(1).and_then(|x| x.checked_add(isqrt(inner))).ok_or(Error::Overflow)
}

/// Bounds for a hypersurface `X ⊂ P^N` of degree `d` next to its count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Ambient dimension `N`.
    pub ambient: u32,
    /// Dimension `n = N - 1`.
    pub n: u32,
    pub d: u64,
    pub q: u64,
    pub measured: u64,
    pub theta: Option<u128>,
    pub serre: u128,
    pub sziklai: Option<u128>,
    pub aubry_perret: Option<u128>,
    pub proj_space: u128,
    pub linear_free: bool,
    pub achieves_theta: bool,
    pub achieves_serre: bool,
    pub exceeds_any: bool,
}

impl BoundReport {
    pub fn compute(ambient: u32, d: u64, q: u64, measured: u64, linear_free: bool) -> Result<Self> {
        if ambient < 1 {
            return Err(Error::UnsupportedDimension(ambient as usize));
        }
        let n = ambient - 1;
        let theta = if n >= 2 { Some(theta(n, d, q)?) } else { None };
        let serre = serre_bound(n, d, q)?;
        let (sziklai, aubry_perret) = if ambient == 2 && d >= 2 {
            (Some(sziklai_bound(d, q)?), Some(aubry_perret_bound(d, q)?))
        } else {
            (None, None)
        };
        let proj_space = proj_space_count(ambient, q)?;
        let m = measured as u128;
        let achieves_theta = theta == Some(m);
        let exceeds_any = m > serre
            || m > proj_space
            || (linear_free && theta.is_some_and(|t| m > t))
            || (linear_free && sziklai.is_some_and(|s| m > s));
        Ok(BoundReport {
            ambient,
            n,
            d,
            q,
            measured,
            theta,
            serre,
            sziklai,
            aubry_perret,
            proj_space,
            linear_free,
            achieves_theta,
            achieves_serre: m == serre,
            exceeds_any,
        })
    }
}

/// CSV of the bound values over a grid of `(n, d, q)`.
pub fn bounds_table_csv(ns: &[u32], ds: &[u64], qs: &[u64]) -> Result<String> {
    let mut out = String::from("n,d,q,theta,serre,proj_space,theta_le_proj_space,d_le_q_plus_1\n");
    for &n in ns {
        for &q in qs {
            for &d in ds {
                let t = theta(n, d, q)?;
                let s = serre_bound(n, d, q)?;
                let ps = proj_space_count(n + 1, q)?;
                writeln!(out, "{n},{d},{q},{t},{s},{ps},{},{}", t <= ps, d <= q + 1).unwrap();
            }
        }
    }
    Ok(out)
}
