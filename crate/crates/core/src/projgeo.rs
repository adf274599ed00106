//! Projective spaces over finite fields: point enumeration, rational point
//! counting, hyperplane pencils, sections and lines.
//!
//! Points are stored in canonical form (leftmost nonzero coordinate equal to
//! one) and enumerated block by block: first all points whose leading one is
//! in position 0, then position 1, and so on; inside a block the trailing
//! coordinates run through `F_q` in lexicographic code order. The index of a
//! point in this order is computed directly by [`PointSpace::index_of`].

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{extension, Elem, Field};
use crate::linalg::Matrix;
use crate::poly::{Evaluator, Hypersurface, MultiPoly};

/// A rational point in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectivePoint(Vec<Elem>);

impl ProjectivePoint {
    /// Scales `v` so its leftmost nonzero coordinate is one; `None` for zero.
    pub fn normalize(field: &Field, v: &[Elem]) -> Option<Self> {
        normalize(field, v).map(ProjectivePoint)
    }

    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Elem> {
        self.0
    }

    pub fn leading_position(&self) -> usize {
        self.0.iter().position(|&x| x != 0).expect("points are nonzero")
    }
}

pub(crate) fn normalize(field: &Field, v: &[Elem]) -> Option<Vec<Elem>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    if lead == 1 {
        return Some(v.to_vec());
    }
    let inv = field.inv(lead).expect("nonzero");
    Some(v.iter().map(|&x| field.mul(x, inv)).collect())
}

/// The canonical points of `P^N(F_q)`, addressable by index.
#[derive(Debug, Clone)]
pub struct PointSpace {
    field: Arc<Field>,
    n: usize,
    /// offsets[k] = index of the first point with leading one at position k.
    offsets: Vec<usize>,
    q_pows: Vec<usize>,
}

impl PointSpace {
    pub fn new(field: &Arc<Field>, n: usize) -> Self {
        let q = field.q() as usize;
        let q_pows: Vec<usize> = (0..=n + 1).scan(1usize, |acc, _| {
            let v = *acc;
            *acc = acc.saturating_mul(q);
            Some(v)
        }).collect();
        let mut offsets = Vec::with_capacity(n + 2);
        let mut acc = 0usize;
        for k in 0..=n {
            offsets.push(acc);
            acc += q_pows[n - k];
        }
        offsets.push(acc);
        PointSpace { field: field.clone(), n, offsets, q_pows }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// `N` for `P^N`.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.offsets[self.n + 1]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point_into(&self, index: usize, out: &mut Vec<Elem>) {
        let k = match self.offsets.binary_search(&index) {
            Ok(k) => k,
            Err(k) => k - 1,
        };
        let q = self.field.q() as usize;
        let mut rest = index - self.offsets[k];
        out.clear();
        out.resize(self.n + 1, 0);
        out[k] = 1;
        for i in (k + 1..=self.n).rev() {
            out[i] = (rest % q) as Elem;
            rest /= q;
        }
    }

    pub fn point(&self, index: usize) -> Vec<Elem> {
        let mut v = Vec::new();
        self.point_into(index, &mut v);
        v
    }

    /// Index of a canonical point; `None` if `v` is zero or not canonical.
    pub fn index_of(&self, v: &[Elem]) -> Option<usize> {
        let k = v.iter().position(|&x| x != 0)?;
        if v[k] != 1 || v.len() != self.n + 1 {
            return None;
        }
        let q = self.field.q() as usize;
        let within = v[k + 1..].iter().fold(0usize, |acc, &x| acc * q + x as usize);
        Some(self.offsets[k] + within)
    }

    /// Index of the point spanned by any nonzero vector.
    pub fn index_of_vector(&self, v: &[Elem]) -> Option<usize> {
        let k = v.iter().position(|&x| x != 0)?;
        if v[k] == 1 {
            return self.index_of(v);
        }
        let f = &self.field;
        let inv = f.inv(v[k]).ok()?;
        let q = f.q() as usize;
        let within = v[k + 1..].iter().fold(0usize, |acc, &x| acc * q + f.mul(x, inv) as usize);
        Some(self.offsets[k] + within)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }

    /// Index range of the block with leading one at position `k`.
    pub fn block(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    #[allow(dead_code)]
    pub(crate) fn q_pow(&self, e: usize) -> usize {
        self.q_pows[e]
    }
}

/// Canonical points of `P^N(F_q)` in enumeration order.
pub fn enum_points(field: &Arc<Field>, n: usize) -> impl Iterator<Item = ProjectivePoint> {
    let space = PointSpace::new(field, n);
    (0..space.len()).map(move |i| ProjectivePoint(space.point(i)))
}

/// Rational zeros of a form, as a membership vector over [`PointSpace`] indices.
#[derive(Debug, Clone)]
pub struct ZeroSet {
    pub space: PointSpace,
    pub members: Vec<bool>,
    pub count: usize,
}

impl ZeroSet {
    pub fn contains_index(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.space.index_of_vector(v).is_some_and(|i| self.members[i])
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        self.indices().map(|i| self.space.point(i))
    }
}

const CHUNK: usize = 2048;

fn scan_chunk(space: &PointSpace, ev: &[Evaluator], range: std::ops::Range<usize>, out: &mut [bool]) {
    let f = space.field();
    let mut p = Vec::with_capacity(space.dim() + 1);
    let mut logs = Vec::with_capacity(space.dim() + 1);
    for (slot, i) in out.iter_mut().zip(range) {
        space.point_into(i, &mut p);
        logs.clear();
        logs.extend(p.iter().map(|&c| f.log(c)));
        *slot = ev.iter().all(|e| e.eval_logs(&logs) == 0);
    }
}

/// Common rational zeros of several forms in the same ring.
pub fn common_zero_set(polys: &[&MultiPoly]) -> ZeroSet {
    let first = polys.first().expect("at least one polynomial");
    let space = PointSpace::new(first.field(), first.nvars() - 1);
    let ev: Vec<Evaluator> = polys.iter().filter(|p| !p.is_zero()).map(|p| Evaluator::new(p)).collect();
    let mut members = vec![false; space.len()];
    members.par_chunks_mut(CHUNK).enumerate().for_each(|(c, out)| {
        let start = c * CHUNK;
        scan_chunk(&space, &ev, start..start + out.len(), out);
    });
    let count = members.iter().filter(|&&b| b).count();
    ZeroSet { space, members, count }
}

pub fn zero_set(x: &Hypersurface) -> ZeroSet {
    common_zero_set(&[x.poly()])
}

/// `N_q(X)`, counted in parallel over disjoint index chunks.
pub fn count_points(x: &Hypersurface) -> u64 {
    count_zeros(x.poly())
}

pub fn count_zeros(poly: &MultiPoly) -> u64 {
    let space = PointSpace::new(poly.field(), poly.nvars() - 1);
    if poly.is_zero() {
        return space.len() as u64;
    }
    let ev = Evaluator::new(poly);
    let n = space.len();
    (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let range = c * CHUNK..((c + 1) * CHUNK).min(n);
            let mut buf = vec![false; range.len()];
            scan_chunk(&space, std::slice::from_ref(&ev), range, &mut buf);
            buf.iter().filter(|&&b| b).count() as u64
        })
        .sum()
}

/// Single-threaded reference count.
pub fn count_points_serial(x: &Hypersurface) -> u64 {
    let space = PointSpace::new(x.field(), x.ambient());
    space.iter().filter(|p| x.poly().eval(p) == 0).count() as u64
}

/// `N_{q^t}(X)`: zeros over `P^N(F_{q^t})` with coefficients embedded.
pub fn count_points_ext(x: &Hypersurface, t: u32) -> Result<u64> {
    if t == 1 {
        return Ok(count_points(x));
    }
    let (_, e) = extension(x.field(), t)?;
    Ok(count_zeros(&x.poly().embed(&e)?))
}

/// A projective linear subspace, stored as a basis in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearSubspace {
    basis: Matrix,
}

impl LinearSubspace {
    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<Elem>]) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::empty(ambient));
        }
        let mut m = Matrix::from_rows(vectors)?;
        if m.cols != ambient + 1 {
            return Err(Error::DimensionMismatch { expected: ambient + 1, got: m.cols });
        }
        let r = m.rref(field).len();
        let basis = Matrix { rows: r, cols: m.cols, data: m.data[..r * m.cols].to_vec() };
        Ok(LinearSubspace { basis })
    }

    pub fn empty(ambient: usize) -> Self {
        LinearSubspace { basis: Matrix::zeros(0, ambient + 1) }
    }

    /// The subspace cut out by the given linear forms.
    pub fn from_equations(field: &Field, ambient: usize, forms: &[Vec<Elem>]) -> Result<Self> {
        if forms.is_empty() {
            return Self::span(field, ambient, &Matrix::identity(ambient + 1).row_vecs());
        }
        let ns = Matrix::from_rows(forms)?.nullspace(field);
        Self::span(field, ambient, &ns)
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols - 1
    }

    /// Projective dimension; `-1` for the empty subspace.
    pub fn dim(&self) -> isize {
        self.basis.rows as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.basis.rows == 0
    }

    pub fn contains(&self, field: &Field, v: &[Elem]) -> bool {
        let mut rows = self.basis.row_vecs();
        rows.push(v.to_vec());
        Matrix::from_rows(&rows).map(|m| m.rank(field) == self.basis.rows).unwrap_or(false)
    }

    /// Rational points of the subspace, canonical and sorted.
    pub fn points(&self, field: &Arc<Field>) -> Vec<Vec<Elem>> {
        if self.is_empty() {
            return Vec::new();
        }
        let coeff_space = PointSpace::new(field, self.basis.rows - 1);
        let t = self.basis.transpose();
        let mut pts: Vec<Vec<Elem>> = coeff_space
            .iter()
            .map(|c| normalize(field, &t.mul_vec(&c, field)).expect("independent rows"))
            .collect();
        pts.sort();
        pts
    }

    /// Linear equations (canonical, as dual points) cutting out the subspace.
    pub fn equations(&self, field: &Field) -> Vec<Vec<Elem>> {
        if self.is_empty() {
            return Matrix::identity(self.ambient() + 1).row_vecs();
        }
        self.basis.nullspace(field)
    }
}

/// All hyperplanes containing `s`, as canonical linear forms in dual
/// enumeration order.
pub fn hyperplanes_through(s: &LinearSubspace, field: &Arc<Field>, n: usize) -> Vec<Vec<Elem>> {
    let dual = PointSpace::new(field, n);
    let kernel: Vec<Vec<Elem>> = if s.is_empty() {
        Matrix::identity(n + 1).row_vecs()
    } else {
        s.basis().nullspace(field)
    };
    if kernel.is_empty() {
        return Vec::new();
    }
    let combos = PointSpace::new(field, kernel.len() - 1);
    let k = Matrix::from_rows(&kernel).expect("rectangular").transpose();
    let mut idx: Vec<usize> = combos
        .iter()
        .map(|c| dual.index_of_vector(&k.mul_vec(&c, field)).expect("independent kernel"))
        .collect();
    idx.sort_unstable();
    idx.into_iter().map(|i| dual.point(i)).collect()
}

/// Outcome of intersecting a hypersurface with a hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Section {
    /// The section as a hypersurface of `P^{N-1}`.
    Proper(Hypersurface),
    /// The hyperplane is a component: `H | F`.
    FullyContained,
}

impl Section {
    pub fn count(&self, field: &Arc<Field>, ambient: usize) -> u64 {
        match self {
            Section::Proper(h) => count_points(h),
            Section::FullyContained => PointSpace::new(field, ambient - 1).len() as u64,
        }
    }
}

/// Parametrization of the hyperplane `h = 0` by `P^{N-1}`: row `i` gives
/// `x_i` in terms of the `N` remaining coordinates. The pivot is the last
/// nonzero coefficient of `h`, so `h = x_N` restricts to `x_N = 0`.
pub fn hyperplane_parametrization(field: &Field, h: &[Elem]) -> Result<Vec<Vec<Elem>>> {
    let k = h.iter().rposition(|&c| c != 0).ok_or(Error::ZeroForm)?;
    let inv = field.inv(h[k])?;
    let n = h.len() - 1;
    Ok((0..=n)
        .map(|i| {
            let mut row = vec![0; n];
            if i == k {
                for j in 0..=n {
                    if j != k {
                        let jj = if j < k { j } else { j - 1 };
                        row[jj] = field.neg(field.mul(h[j], inv));
                    }
                }
            } else {
                row[if i < k { i } else { i - 1 }] = 1;
            }
            row
        })
        .collect())
}

/// `X ∩ H` re-expressed on `P^{N-1}`.
pub fn section(x: &Hypersurface, h: &[Elem]) -> Result<Section> {
    if h.len() != x.ambient() + 1 {
        return Err(Error::DimensionMismatch { expected: x.ambient() + 1, got: h.len() });
    }
    let param = hyperplane_parametrization(x.field(), h)?;
    let g = x.poly().substitute_linear(&param, x.ambient())?;
    if g.is_zero() {
        Ok(Section::FullyContained)
    } else {
        Ok(Section::Proper(Hypersurface::new(g)?))
    }
}

/// Restriction of `X` to a linear subspace with the given basis, as a form
/// in `basis.len()` variables.
pub fn restrict_to_subspace(poly: &MultiPoly, basis: &[Vec<Elem>]) -> Result<MultiPoly> {
    let images: Vec<Vec<Elem>> = (0..poly.nvars()).map(|i| basis.iter().map(|b| b[i]).collect()).collect();
    poly.substitute_linear(&images, basis.len())
}

/// Lines through `p`, each represented by its canonical second point: the
/// unique point of the line whose coordinate at `p`'s leading position is 0.
pub fn lines_through(p: &[Elem], field: &Arc<Field>, n: usize) -> Result<Vec<Vec<Elem>>> {
    if n < 1 {
        return Err(Error::UnsupportedDimension(n));
    }
    let k = p.iter().position(|&x| x != 0).ok_or(Error::ZeroForm)?;
    let sub = PointSpace::new(field, n - 1);
    Ok(sub
        .iter()
        .map(|mut v| {
            v.insert(k, 0);
            v
        })
        .collect())
}
