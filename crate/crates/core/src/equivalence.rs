//! Projective equivalence over `F_q`: invariant fingerprints and a search
//! for a matrix `M` with `F∘M = c·G`.
//!
//! The search fixes a projective frame of `Y` (`N + 2` rational points in
//! general position) and tries every ordered frame of `X` as its image. A
//! linear map is determined up to scalar by a frame, so this is exhaustive
//! whenever `Y` has a rational frame. Candidate images are pruned by the
//! number of rational points of `X` on the line through each pair, which
//! must match the corresponding count on `Y`. When `Y` has no rational
//! frame the search falls back to enumerating `PGL(N+1, q)`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{linear_components_in, section_spectrum, singular_points};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{basis_with_column, Matrix};
use crate::poly::{Hypersurface, MultiPoly};
use crate::projgeo::{count_points_ext, zero_set, PointSpace, ZeroSet};

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub degree: u32,
    pub ambient: usize,
    pub count_q: u64,
    pub count_q2: Option<u64>,
    /// `N_{q^2}` was skipped because `q^2` exceeds the field cap.
    pub count_q2_skipped: bool,
    pub singular_count_t1: usize,
    pub section_spectrum: Vec<(u64, u64)>,
    pub linear_component_count: usize,
}

impl Fingerprint {
    /// Name of the first differing invariant.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<&'static str> {
        if self.degree != other.degree {
            Some("degree")
        } else if self.ambient != other.ambient {
            Some("ambient")
        } else if self.count_q != other.count_q {
            Some("count_q")
        } else if self.count_q2 != other.count_q2 {
            Some("count_q2")
        } else if self.singular_count_t1 != other.singular_count_t1 {
            Some("singular_count_t1")
        } else if self.linear_component_count != other.linear_component_count {
            Some("linear_component_count")
        } else if self.section_spectrum != other.section_spectrum {
            Some("section_spectrum")
        } else {
            None
        }
    }
}

pub fn fingerprint(x: &Hypersurface) -> Result<Fingerprint> {
    let zs = zero_set(x);
    let (count_q2, count_q2_skipped) = match count_points_ext(x, 2) {
        Ok(c) => (Some(c), false),
        Err(Error::FieldTooLarge { .. }) => (None, true),
        Err(e) => return Err(e),
    };
    Ok(Fingerprint {
        degree: x.degree(),
        ambient: x.ambient(),
        count_q: zs.count as u64,
        count_q2,
        count_q2_skipped,
        singular_count_t1: singular_points(x, 1)?.by_extension[0].points.len(),
        section_spectrum: section_spectrum(x)?,
        linear_component_count: linear_components_in(x, &zs).len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EquivalenceVerdict {
    /// `F∘M = scalar·G`, verified by substitution.
    Equivalent { witness: Matrix, scalar: Elem },
    Inequivalent { reason: String },
    Inconclusive { tested: u64 },
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, EquivalenceVerdict::Inconclusive { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of candidate maps (frame-search nodes or group
    /// elements) to examine.
    pub budget: u64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, seed: DEFAULT_SEED }
    }
}

/// The scalar `c` with `F∘M = c·G`, if any.
pub fn verify_witness(x: &Hypersurface, y: &Hypersurface, m: &Matrix) -> Option<Elem> {
    let f = x.field();
    if !m.is_invertible(f) {
        return None;
    }
    let h = x.poly().linear_change(m).ok()?;
    let (e, hc) = h.leading()?;
    let gc = y.poly().coeff(e);
    if gc == 0 {
        return None;
    }
    let c = f.div(hc, gc).ok()?;
    (h == y.poly().scale(c)).then_some(c)
}

/// Decides whether `X` and `Y` are projectively equivalent over `F_q`.
pub fn pgl_search(x: &Hypersurface, y: &Hypersurface, opts: SearchOptions) -> Result<EquivalenceVerdict> {
    if x.field() != y.field() {
        return Ok(EquivalenceVerdict::Inequivalent { reason: "field".into() });
    }
    if x.ambient() != y.ambient() {
        return Ok(EquivalenceVerdict::Inequivalent { reason: "ambient".into() });
    }
    if x.degree() != y.degree() {
        return Ok(EquivalenceVerdict::Inequivalent { reason: "degree".into() });
    }
    if let Some(name) = fingerprint(x)?.first_difference(&fingerprint(y)?) {
        return Ok(EquivalenceVerdict::Inequivalent { reason: name.into() });
    }
    let ctx = Ctx::new(x, y);
    match ctx.frame_of_y() {
        Some(frame) => Ok(ctx.frame_search(&frame, opts)),
        None => Ok(ctx.group_search(opts)),
    }
}

struct Ctx<'a> {
    x: &'a Hypersurface,
    y: &'a Hypersurface,
    field: Arc<Field>,
    n: usize,
    zx: ZeroSet,
    zy: ZeroSet,
    /// Rational points of X, as vectors.
    xp: Vec<Vec<Elem>>,
}

enum Found {
    Witness(Matrix, Elem),
    OutOfBudget,
}

impl<'a> Ctx<'a> {
    fn new(x: &'a Hypersurface, y: &'a Hypersurface) -> Self {
        let zx = zero_set(x);
        let zy = zero_set(y);
        let xp = zx.points().collect();
        Ctx { x, y, field: x.field().clone(), n: x.ambient(), zx, zy, xp }
    }

    /// Number of rational points of the zero set on the line through `a`, `b`.
    fn line_count(&self, zs: &ZeroSet, a: &[Elem], b: &[Elem]) -> usize {
        let f = &self.field;
        let mut c = usize::from(zs.contains(b));
        let mut v = vec![0; a.len()];
        for u in f.elements() {
            for i in 0..a.len() {
                v[i] = f.add(a[i], f.mul(u, b[i]));
            }
            c += usize::from(zs.contains(&v));
        }
        c
    }

    fn rank(&self, rows: &[&Vec<Elem>]) -> usize {
        let rows: Vec<Vec<Elem>> = rows.iter().map(|r| (*r).clone()).collect();
        Matrix::from_rows(&rows).map(|m| m.rank(&self.field)).unwrap_or(0)
    }

    /// `N + 2` rational points of `Y` in general position, chosen greedily in
    /// enumeration order.
    fn frame_of_y(&self) -> Option<Vec<Vec<Elem>>> {
        let pts: Vec<Vec<Elem>> = self.zy.points().collect();
        let mut basis: Vec<Vec<Elem>> = Vec::new();
        for p in &pts {
            let mut refs: Vec<&Vec<Elem>> = basis.iter().collect();
            refs.push(p);
            if self.rank(&refs) == basis.len() + 1 {
                basis.push(p.clone());
                if basis.len() == self.n + 1 {
                    break;
                }
            }
        }
        if basis.len() < self.n + 1 {
            return None;
        }
        let b = Matrix::from_cols(&basis).ok()?;
        let inv = b.inverse(&self.field).ok()?;
        let last = pts.iter().find(|p| inv.mul_vec(p, &self.field).iter().all(|&c| c != 0))?;
        basis.push(last.clone());
        Some(basis)
    }

    /// The map sending the frame `src` to the frame `dst`, if `dst` is a frame.
    fn frame_map(&self, src: &[Vec<Elem>], dst: &[&Vec<Elem>]) -> Option<Matrix> {
        let f = &self.field;
        let n1 = self.n + 1;
        let a = Matrix::from_cols(&dst[..n1].iter().map(|v| (*v).clone()).collect::<Vec<_>>()).ok()?;
        let lambda = a.solve(dst[n1], f).ok()?;
        if lambda.contains(&0) {
            return None;
        }
        let b = Matrix::from_cols(&src[..n1]).ok()?;
        let binv = b.inverse(f).ok()?;
        let mu = binv.mul_vec(&src[n1], f);
        let mut d = Matrix::zeros(n1, n1);
        for i in 0..n1 {
            d.set(i, i, f.div(lambda[i], mu[i]).ok()?);
        }
        a.mul(&d, f).ok()?.mul(&binv, f).ok()
    }

    /// Quick necessary test: `M` maps every rational point of `Y` into `X`.
    fn maps_points(&self, m: &Matrix) -> bool {
        self.zy.points().all(|p| self.zx.contains(&m.mul_vec(&p, &self.field)))
    }

    fn try_map(&self, m: &Matrix) -> Option<(Matrix, Elem)> {
        if !self.maps_points(m) {
            return None;
        }
        verify_witness(self.x, self.y, m).map(|c| (m.clone(), c))
    }

    fn frame_search(&self, frame: &[Vec<Elem>], opts: SearchOptions) -> EquivalenceVerdict {
        let k = frame.len();
        let ty: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { 0 } else { self.line_count(&self.zy, &frame[i], &frame[j]) }).collect())
            .collect();
        let nx = self.xp.len();
        let mut order: Vec<usize> = (0..nx).collect();
        let exhaustive_estimate = (nx as f64).powi(k as i32);
        if exhaustive_estimate > opts.budget as f64 {
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(opts.seed));
        }
        let per_branch = (opts.budget / nx.max(1) as u64).max(1);
        let out_of_budget = AtomicBool::new(false);
        let tested = AtomicU64::new(0);
        // Each branch is deterministic given its own budget, and
        // `find_map_first` returns the earliest branch with a witness.
        let hit = order.par_iter().find_map_first(|&first| {
            let mut dfs = Dfs {
                ctx: self,
                frame,
                ty: &ty,
                order: &order,
                budget: per_branch,
                used: 0,
                cache: HashMap::new(),
            };
            let r = dfs.extend(&mut vec![first]);
            tested.fetch_add(dfs.used, Ordering::Relaxed);
            match r {
                Some(Found::Witness(m, c)) => Some((m, c)),
                Some(Found::OutOfBudget) => {
                    out_of_budget.store(true, Ordering::Relaxed);
                    None
                }
                None => None,
            }
        });
        match hit {
            Some((m, c)) => EquivalenceVerdict::Equivalent { witness: m, scalar: c },
            None if out_of_budget.load(Ordering::Relaxed) => {
                EquivalenceVerdict::Inconclusive { tested: tested.load(Ordering::Relaxed) }
            }
            None => EquivalenceVerdict::Inequivalent { reason: "exhaustive frame search".into() },
        }
    }

    /// Enumerates `M` with `M y0 ∈ X` for a fixed rational point `y0` of `Y`
    /// (or all of `PGL` when `Y` has no rational point).
    fn group_search(&self, opts: SearchOptions) -> EquivalenceVerdict {
        let f = &self.field;
        let n1 = self.n + 1;
        let q = f.q() as u128;
        let y0 = self.zy.points().next();
        let first_choices: Vec<Vec<Elem>> = match &y0 {
            Some(_) => self.xp.clone(),
            None => PointSpace::new(f, self.n).iter().collect(),
        };
        // columns 1..N are arbitrary vectors keeping rank
        let mut size: u128 = first_choices.len() as u128;
        for i in 1..n1 {
            size = size.saturating_mul(q.pow(n1 as u32) - q.pow(i as u32));
        }
        if size > opts.budget as u128 {
            return EquivalenceVerdict::Inconclusive { tested: 0 };
        }
        let (b, _) = match &y0 {
            Some(p) => basis_with_column(p),
            None => (Matrix::identity(n1), 0),
        };
        let y0_col = y0.as_ref().map(|p| p.iter().position(|&c| c != 0).unwrap()).unwrap_or(0);
        let binv = b.inverse(f).expect("invertible completion");
        let all_vectors: Vec<Vec<Elem>> = (0..(q.pow(n1 as u32)) as usize)
            .map(|mut i| {
                (0..n1)
                    .map(|_| {
                        let d = (i % q as usize) as Elem;
                        i /= q as usize;
                        d
                    })
                    .collect()
            })
            .collect();
        let hit = first_choices.par_iter().find_map_first(|c0| {
            // columns of M' in order: position y0_col gets c0, others free
            let mut cols: Vec<Vec<Elem>> = vec![Vec::new(); n1];
            cols[y0_col] = c0.clone();
            self.fill_columns(&mut cols, 0, y0_col, &all_vectors, &binv)
        });
        match hit {
            Some((m, c)) => EquivalenceVerdict::Equivalent { witness: m, scalar: c },
            None => EquivalenceVerdict::Inequivalent { reason: "exhaustive group search".into() },
        }
    }

    fn fill_columns(
        &self,
        cols: &mut Vec<Vec<Elem>>,
        j: usize,
        skip: usize,
        vectors: &[Vec<Elem>],
        binv: &Matrix,
    ) -> Option<(Matrix, Elem)> {
        let n1 = self.n + 1;
        if j == n1 {
            let mp = Matrix::from_cols(cols).ok()?;
            if !mp.is_invertible(&self.field) {
                return None;
            }
            let m = mp.mul(binv, &self.field).ok()?;
            return self.try_map(&m);
        }
        if j == skip {
            return self.fill_columns(cols, j + 1, skip, vectors, binv);
        }
        for v in vectors {
            cols[j] = v.clone();
            let filled: Vec<&Vec<Elem>> = cols.iter().enumerate().filter(|(i, _)| *i <= j || *i == skip).map(|(_, c)| c).collect();
            if self.rank(&filled) < filled.len() {
                continue;
            }
            if let Some(r) = self.fill_columns(cols, j + 1, skip, vectors, binv) {
                return Some(r);
            }
        }
        None
    }
}

struct Dfs<'c, 'a> {
    ctx: &'c Ctx<'a>,
    frame: &'c [Vec<Elem>],
    ty: &'c [Vec<usize>],
    order: &'c [usize],
    budget: u64,
    used: u64,
    cache: HashMap<(usize, usize), usize>,
}

impl Dfs<'_, '_> {
    fn line_type(&mut self, a: usize, b: usize) -> usize {
        let key = if a < b { (a, b) } else { (b, a) };
        if let Some(&c) = self.cache.get(&key) {
            return c;
        }
        let c = self.ctx.line_count(&self.ctx.zx, &self.ctx.xp[a], &self.ctx.xp[b]);
        self.cache.insert(key, c);
        c
    }

    fn extend(&mut self, chosen: &mut Vec<usize>) -> Option<Found> {
        self.used += 1;
        if self.used > self.budget {
            return Some(Found::OutOfBudget);
        }
        let k = self.frame.len();
        let n1 = self.ctx.n + 1;
        if chosen.len() == k {
            let dst: Vec<&Vec<Elem>> = chosen.iter().map(|&i| &self.ctx.xp[i]).collect();
            let m = self.ctx.frame_map(self.frame, &dst)?;
            return self.ctx.try_map(&m).map(|(m, c)| Found::Witness(m, c));
        }
        let pos = chosen.len();
        let mut out_of_budget = false;
        for &cand in self.order {
            if chosen.contains(&cand) {
                continue;
            }
            let ok = (0..pos).all(|i| self.line_type(chosen[i], cand) == self.ty[i][pos]);
            if !ok {
                continue;
            }
            if pos < n1 {
                let mut rows: Vec<&Vec<Elem>> = chosen.iter().map(|&i| &self.ctx.xp[i]).collect();
                rows.push(&self.ctx.xp[cand]);
                if self.ctx.rank(&rows) < rows.len() {
                    continue;
                }
            }
            chosen.push(cand);
            let r = self.extend(chosen);
            chosen.pop();
            match r {
                Some(Found::Witness(m, c)) => return Some(Found::Witness(m, c)),
                Some(Found::OutOfBudget) => {
                    out_of_budget = true;
                    break;
                }
                None => {}
            }
        }
        out_of_budget.then_some(Found::OutOfBudget)
    }
}

/// `G = F∘M` for a given invertible `M`; convenience for building test pairs.
pub fn transform(x: &Hypersurface, m: &Matrix) -> Result<Hypersurface> {
    x.linear_change(m)
}

/// Whether two forms define the same hypersurface (are proportional).
pub fn proportional(a: &MultiPoly, b: &MultiPoly) -> bool {
    a.monic() == b.monic()
}
