//! Structural analysis of a hypersurface: singular points over small
//! extensions, `F_q`-linear components, cone vertices, line coverage and
//! hyperplane section spectra.
//!
//! Nonsingularity is only ever tested over `F_{q^t}` for `t <= t_max`. An
//! empty report is evidence, not a certificate of smoothness over the
//! algebraic closure.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{extension, Elem, Field};
use crate::linalg::{basis_with_column, Matrix};
use crate::poly::{Hypersurface, MultiPoly};
use crate::projgeo::{
    common_zero_set, count_points, hyperplane_parametrization, lines_through, section, zero_set,
    LinearSubspace, PointSpace, ProjectivePoint, ZeroSet,
};

/// Singular rational points over one extension `F_{q^t}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionSingularities {
    pub t: u32,
    pub order: u32,
    /// Coordinates are element codes of `F_{q^t}`.
    pub points: Vec<ProjectivePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub tested_extensions: Vec<u32>,
    pub by_extension: Vec<ExtensionSingularities>,
    pub gradient_identically_zero: bool,
    /// `G` with `G^p = F`, rendered, when the gradient vanishes identically.
    pub pth_root: Option<String>,
}

impl SingularityReport {
    /// No singular point found for any tested `t`.
    pub fn is_empty(&self) -> bool {
        self.by_extension.iter().all(|e| e.points.is_empty())
    }

    pub fn count_at(&self, t: u32) -> Option<usize> {
        self.by_extension.iter().find(|e| e.t == t).map(|e| e.points.len())
    }
}

/// Points of `P^N(F_{q^t})`, `t = 1..=t_max`, where `F` and every partial
/// derivative vanish.
pub fn singular_points(x: &Hypersurface, t_max: u32) -> Result<SingularityReport> {
    if t_max == 0 {
        return Err(Error::InvalidExtensionDegree);
    }
    let grad = x.poly().gradient();
    let gradient_zero = grad.iter().all(MultiPoly::is_zero);
    let pth_root = if gradient_zero { x.poly().pth_power_root().map(|g| g.render()) } else { None };
    let mut by_extension = Vec::new();
    for t in 1..=t_max {
        let (big, emb) = extension(x.field(), t)?;
        let f = x.poly().embed(&emb)?;
        let partials: Vec<MultiPoly> = grad.iter().map(|g| g.embed(&emb)).collect::<Result<_>>()?;
        let mut system: Vec<&MultiPoly> = vec![&f];
        system.extend(partials.iter().filter(|g| !g.is_zero()));
        let zs = common_zero_set(&system);
        let points: Vec<ProjectivePoint> = zs
            .points()
            .map(|p| {
                assert!(system.iter().all(|g| g.eval(&p) == 0), "singular point failed recheck");
                ProjectivePoint::normalize(&big, &p).expect("nonzero")
            })
            .collect();
        by_extension.push(ExtensionSingularities { t, order: big.q(), points });
    }
    Ok(SingularityReport {
        tested_extensions: (1..=t_max).collect(),
        by_extension,
        gradient_identically_zero: gradient_zero,
        pth_root,
    })
}

/// Whether every rational point of the hyperplane `h = 0` is in `zs`.
fn hyperplane_in_zero_set(field: &Arc<Field>, zs: &ZeroSet, h: &[Elem]) -> bool {
    let n = h.len() - 1;
    let param = Matrix::from_rows(&hyperplane_parametrization(field, h).expect("nonzero form"))
        .expect("rectangular");
    let sub = PointSpace::new(field, n - 1);
    let mut y = Vec::with_capacity(n);
    (0..sub.len()).all(|i| {
        sub.point_into(i, &mut y);
        zs.contains(&param.mul_vec(&y, field))
    })
}

fn linear_components_with(x: &Hypersurface, zs: &ZeroSet) -> Vec<Vec<Elem>> {
    let field = x.field();
    let n = x.ambient();
    let hyperplane_size = PointSpace::new(field, n - 1).len();
    if zs.count < hyperplane_size {
        return Vec::new();
    }
    let dual = PointSpace::new(field, n);
    (0..dual.len())
        .into_par_iter()
        .filter_map(|i| {
            let h = dual.point(i);
            if !hyperplane_in_zero_set(field, zs, &h) {
                return None;
            }
            x.poly().divides_linear(&h).ok().flatten().map(|_| h)
        })
        .collect()
}

/// Every `F_q`-linear form (canonical, in dual enumeration order) dividing `F`.
///
/// Candidates are hyperplanes whose rational points all lie on `X`; each one
/// is then decided by exact division, so the answer is exact for any `d`.
pub fn linear_components(x: &Hypersurface) -> Vec<Vec<Elem>> {
    linear_components_with(x, &zero_set(x))
}

/// Same as [`linear_components`] with a precomputed zero set.
pub fn linear_components_in(x: &Hypersurface, zs: &ZeroSet) -> Vec<Vec<Elem>> {
    linear_components_with(x, zs)
}

/// `X(F_q) = P^N(F_q)`.
pub fn is_space_filling(x: &Hypersurface) -> bool {
    count_points(x) == PointSpace::new(x.field(), x.ambient()).len() as u64
}

/// Whether `F` is unchanged by `x -> x + T v` for an indeterminate `T`.
pub fn is_vertex(x: &Hypersurface, v: &[Elem]) -> Result<bool> {
    let (m, k) = basis_with_column(v);
    let g = x.poly().linear_change(&m)?;
    let absent = g.terms().all(|(e, _)| e[k] == 0);
    Ok(absent)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    /// Maximal rational vertex subspace, as an RREF basis.
    pub vertex_basis: Vec<Vec<Elem>>,
    /// Projective dimension `k` of the vertex; `-1` when there is none.
    pub vertex_dim: isize,
    /// `N - k - 1` when a base was extracted.
    pub base_ambient: Option<usize>,
    /// The base in `P^{N-k-1}`, rendered.
    pub base: Option<String>,
    #[serde(skip)]
    pub base_hypersurface: Option<Hypersurface>,
}

impl ConeReport {
    pub fn vertex(&self, field: &Field, ambient: usize) -> LinearSubspace {
        LinearSubspace::span(field, ambient, &self.vertex_basis).expect("valid basis")
    }
}

/// Finds the maximal vertex subspace and, when it is nonempty, the base of
/// the cone on complementary coordinates.
pub fn cone_analysis(x: &Hypersurface) -> Result<ConeReport> {
    let field = x.field();
    let n = x.ambient();
    let zs = zero_set(x);
    let mut vertices = Vec::new();
    for p in zs.points() {
        if is_vertex(x, &p)? {
            vertices.push(p);
        }
    }
    let vertex = LinearSubspace::span(field, n, &vertices)?;
    // The vertex set is a linear subspace; check the closure anyway.
    for b in vertex.basis().row_vecs() {
        assert!(is_vertex(x, &b)?, "span of vertices is not a vertex");
    }
    assert_eq!(vertex.points(field).len(), vertices.len(), "vertex set not closed under span");

    if vertex.is_empty() {
        return Ok(ConeReport {
            vertex_basis: Vec::new(),
            vertex_dim: -1,
            base_ambient: None,
            base: None,
            base_hypersurface: None,
        });
    }
    let mut rref = vertex.basis().clone();
    let pivots = rref.rref(field);
    let complement: Vec<usize> = (0..=n).filter(|c| !pivots.contains(c)).collect();
    // Columns: complementary unit vectors first, then the vertex basis.
    let mut cols: Vec<Vec<Elem>> = complement
        .iter()
        .map(|&j| (0..=n).map(|i| u32::from(i == j)).collect())
        .collect();
    cols.extend(vertex.basis().row_vecs());
    let m = Matrix::from_cols(&cols)?;
    let mut g = x.poly().linear_change(&m)?;
    for i in (complement.len()..=n).rev() {
        g = g.drop_variable(i).expect("vertex variables are absent");
    }
    let base_hypersurface = Hypersurface::new(g).ok();
    Ok(ConeReport {
        vertex_basis: vertex.basis().row_vecs(),
        vertex_dim: vertex.dim(),
        base_ambient: base_hypersurface.as_ref().map(Hypersurface::ambient),
        base: base_hypersurface.as_ref().map(Hypersurface::render),
        base_hypersurface,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub covered: bool,
    /// For each covered rational point, a second point spanning a line in `X`.
    pub witnesses: Vec<(ProjectivePoint, ProjectivePoint)>,
    pub uncovered: Vec<ProjectivePoint>,
}

/// Whether every rational point of a surface in `P^3` lies on a rational
/// line contained in it.
pub fn covered_by_lines(x: &Hypersurface) -> Result<CoverageReport> {
    if x.ambient() != 3 {
        return Err(Error::AmbientNotSupported(x.ambient()));
    }
    let field = x.field();
    let zs = zero_set(x);
    let pts: Vec<Vec<Elem>> = zs.points().collect();
    let found: Vec<(Vec<Elem>, Option<Vec<Elem>>)> = pts
        .into_par_iter()
        .map(|p| {
            let lines = lines_through(&p, field, 3).expect("nonzero point");
            let w = lines.into_iter().find(|q| {
                zs.contains(q) && x.poly().restrict_to_line(&p, q).expect("independent").is_zero()
            });
            (p, w)
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut uncovered = Vec::new();
    for (p, w) in found {
        let pp = ProjectivePoint::normalize(field, &p).expect("nonzero");
        match w {
            Some(q) => witnesses.push((pp, ProjectivePoint::normalize(field, &q).expect("nonzero"))),
            None => uncovered.push(pp),
        }
    }
    Ok(CoverageReport { covered: uncovered.is_empty(), witnesses, uncovered })
}

/// The multiset `{N_q(X ∩ H)}` over all hyperplanes, as sorted
/// `(count, multiplicity)` pairs.
pub fn section_spectrum(x: &Hypersurface) -> Result<Vec<(u64, u64)>> {
    let field = x.field();
    let n = x.ambient();
    let dual = PointSpace::new(field, n);
    let counts: Vec<u64> = (0..dual.len())
        .into_par_iter()
        .map(|i| section(x, &dual.point(i)).map(|s| s.count(field, n)))
        .collect::<Result<_>>()?;
    let mut hist = BTreeMap::new();
    for c in counts {
        *hist.entry(c).or_insert(0u64) += 1;
    }
    Ok(hist.into_iter().collect())
}
