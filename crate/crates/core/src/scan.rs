//! Random sampling of hypersurfaces, looking for samples that reach the
//! bound and checking each one against the classification.
//!
//! Sample `i` is drawn from a ChaCha8 stream keyed by `(seed, i)`, so the
//! report does not depend on the number of worker threads.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::linear_components_in;
use crate::bounds::{classify_with, theta, ClassifyOptions, Verdict};
use crate::constructions::{space_filling, AntisymmetricSpec};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::poly::{Hypersurface, MultiPoly};
use crate::projgeo::zero_set;

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// canonical term order.
pub fn monomials(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(0, d, &mut vec![0; nvars], &mut out);
    }
    out
}

/// A uniformly random nonzero form of degree `d`.
pub fn random_form<R: Rng + ?Sized>(field: &Arc<Field>, nvars: usize, d: u32, rng: &mut R) -> MultiPoly {
    let mons = monomials(nvars, d);
    loop {
        let terms: Vec<(Vec<u32>, Elem)> = mons.iter().map(|m| (m.clone(), rng.gen_range(0..field.q()))).collect();
        let p = MultiPoly::from_terms(field, nvars, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_invertible<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let rows: Vec<Vec<Elem>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..field.q())).collect()).collect();
        let m = Matrix::from_rows(&rows).expect("square");
        if m.is_invertible(field) {
            return m;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Uniform nonzero coefficient vectors over all monomials.
    Dense,
    /// `x A x^q` with a random nonzero antisymmetric `A`; degree `q + 1`.
    Antisymmetric,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Family::Dense),
            "antisymmetric" => Ok(Family::Antisymmetric),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanConfig {
    pub ambient: usize,
    pub degree: u32,
    pub samples: u64,
    pub seed: u64,
    pub family: Family,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Achiever {
    pub sample: u64,
    pub polynomial: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub q: u32,
    pub config: ScanConfig,
    pub theta: Option<u128>,
    pub drawn: u64,
    /// Samples with an `F_q`-linear component, dropped before counting.
    pub with_linear_components: u64,
    /// Samples without linear components; the scan stops when this
    /// reaches `samples`.
    pub accepted: u64,
    /// `(count, samples)` over accepted samples.
    pub histogram: Vec<(u64, u64)>,
    pub max_count: u64,
    pub exceeding: u64,
    pub achievers: u64,
    /// Verdict name to number of achievers.
    pub verdicts: BTreeMap<String, u64>,
    /// Achievers that matched no case, and samples over a bound.
    pub alarms: Vec<Achiever>,
}

impl ScanReport {
    pub fn has_alarm(&self) -> bool {
        !self.alarms.is_empty()
    }

    /// `count,samples,achieves_theta` rows.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("count,samples,achieves_theta\n");
        for &(c, m) in &self.histogram {
            writeln!(out, "{c},{m},{}", self.theta == Some(c as u128)).unwrap();
        }
        out
    }
}

const BATCH: u64 = 4096;
/// Draws per requested sample before giving up on the target.
const MAX_DRAW_FACTOR: u64 = 64;

enum Outcome {
    Linear,
    Counted { count: u64, verdict: Option<Verdict>, poly: Option<String> },
}

fn verdict_name(v: &Verdict) -> String {
    match v {
        Verdict::Consistent { case } => format!("consistent:{}", serde_json::to_value(case).unwrap().as_str().unwrap()),
        Verdict::Excluded { .. } => "excluded".into(),
        Verdict::BelowBound => "below_bound".into(),
        Verdict::Unclassified { .. } => "unclassified".into(),
        Verdict::ExceedsBound => "exceeds_bound".into(),
    }
}

pub fn scan(field: &Arc<Field>, cfg: &ScanConfig, opts: ClassifyOptions) -> Result<ScanReport> {
    let n1 = cfg.ambient + 1;
    if cfg.degree < 2 {
        return Err(Error::InvalidArgument("scan needs degree at least 2".into()));
    }
    if cfg.ambient < 2 {
        return Err(Error::UnsupportedDimension(cfg.ambient));
    }
    if cfg.family == Family::Antisymmetric && cfg.degree != field.q() + 1 {
        return Err(Error::InvalidArgument("antisymmetric family has degree q+1".into()));
    }
    let q = field.q() as u64;
    let th = if cfg.ambient >= 3 { Some(theta(cfg.ambient as u32 - 1, cfg.degree as u64, q)?) } else { None };
    let draw = |i: u64| -> Result<Outcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i);
        let x = match cfg.family {
            Family::Dense => Hypersurface::new(random_form(field, n1, cfg.degree, &mut rng))?,
            Family::Antisymmetric => space_filling(&AntisymmetricSpec::random(field, n1, &mut rng), field)?,
        };
        let zs = zero_set(&x);
        let comps = linear_components_in(&x, &zs);
        if !comps.is_empty() {
            return Ok(Outcome::Linear);
        }
        let count = zs.count as u64;
        if th.is_some_and(|t| (count as u128) < t) {
            return Ok(Outcome::Counted { count, verdict: None, poly: None });
        }
        let c = classify_with(&x, &zs, comps, opts)?;
        if c.verdict == Verdict::BelowBound {
            return Ok(Outcome::Counted { count, verdict: None, poly: None });
        }
        Ok(Outcome::Counted { count, verdict: Some(c.verdict), poly: Some(x.render()) })
    };

    let mut report = ScanReport {
        q: field.q(),
        config: cfg.clone(),
        theta: th,
        drawn: 0,
        with_linear_components: 0,
        accepted: 0,
        histogram: Vec::new(),
        max_count: 0,
        exceeding: 0,
        achievers: 0,
        verdicts: BTreeMap::new(),
        alarms: Vec::new(),
    };
    let mut hist = BTreeMap::new();
    let max_draws = cfg.samples.saturating_mul(MAX_DRAW_FACTOR).max(MAX_DRAW_FACTOR);
    let mut next = 0u64;
    'outer: while report.accepted < cfg.samples && next < max_draws {
        let want = (cfg.samples - report.accepted).saturating_mul(5) / 4 + 16;
        let end = (next + want.min(BATCH)).min(max_draws);
        let batch: Vec<Result<Outcome>> = (next..end).into_par_iter().map(draw).collect();
        for (off, o) in batch.into_iter().enumerate() {
            if report.accepted == cfg.samples {
                break 'outer;
            }
            let i = next + off as u64;
            report.drawn += 1;
            match o? {
                Outcome::Linear => report.with_linear_components += 1,
                Outcome::Counted { count, verdict, poly } => {
                    report.accepted += 1;
                    *hist.entry(count).or_insert(0u64) += 1;
                    report.max_count = report.max_count.max(count);
                    if th.is_some_and(|t| count as u128 > t) {
                        report.exceeding += 1;
                    }
                    if let Some(v) = verdict {
                        if th == Some(count as u128) {
                            report.achievers += 1;
                        }
                        *report.verdicts.entry(verdict_name(&v)).or_insert(0) += 1;
                        if v.is_alarm() {
                            report.alarms.push(Achiever { sample: i, polynomial: poly.unwrap_or_default(), verdict: v });
                        }
                    }
                }
            }
        }
        next = end;
    }
    report.histogram = hist.into_iter().collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(4, 3).len(), 20);
        assert_eq!(monomials(3, 4).len(), 15);
        assert_eq!(monomials(4, 2)[0], vec![2, 0, 0, 0]);
        assert!(monomials(4, 5).iter().all(|m| m.iter().sum::<u32>() == 5));
    }

    #[test]
    fn quadric_scan_classifies_achievers() {
        let f3 = make_field(3, 1).unwrap();
        let cfg = ScanConfig { ambient: 3, degree: 2, samples: 400, seed: 1, family: Family::Dense };
        let r = scan(&f3, &cfg, ClassifyOptions { equivalence_budget: None, ..Default::default() }).unwrap();
        assert_eq!(r.accepted, 400);
        assert_eq!(r.drawn, 400 + r.with_linear_components);
        assert!(r.achievers > 0);
        assert_eq!(r.exceeding, 0);
        assert!(!r.has_alarm());
        assert_eq!(r.verdicts.get("consistent:quadric_pencil"), Some(&r.achievers));
    }

    #[test]
    fn antisymmetric_family_fills_space() {
        let f4 = make_field(2, 2).unwrap();
        let cfg = ScanConfig { ambient: 3, degree: 5, samples: 50, seed: 2, family: Family::Antisymmetric };
        let r = scan(&f4, &cfg, ClassifyOptions::default()).unwrap();
        assert_eq!(r.histogram.iter().map(|&(c, _)| c).collect::<Vec<_>>(), vec![85]);
        assert_eq!(r.verdicts.get("consistent:space_filling").copied().unwrap_or(0), r.achievers);
        assert!(!r.has_alarm());
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let f2 = make_field(2, 1).unwrap();
        let cfg = ScanConfig { ambient: 3, degree: 3, samples: 300, seed: 7, family: Family::Dense };
        let a = scan(&f2, &cfg, ClassifyOptions::default()).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| scan(&f2, &cfg, ClassifyOptions::default()).unwrap());
        assert_eq!(a, b);
    }
}
