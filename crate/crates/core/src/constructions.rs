//! Constructors for the extremal families and the named examples.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::analysis::linear_components;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::poly::{Hypersurface, MultiPoly};

/// Strict upper triangle of an antisymmetric `(n+2) x (n+2)` matrix. The
/// diagonal is zero by construction, which rules out `x_i^(q+1)` terms even
/// in characteristic 2 where `A^t = -A` alone would not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntisymmetricSpec {
    size: usize,
    /// Entries `(i, j, a_ij)` with `i < j`, sorted, nonzero.
    entries: Vec<(usize, usize, Elem)>,
}

impl AntisymmetricSpec {
    /// `size = N + 1` variables.
    pub fn new(size: usize, entries: &[(usize, usize, Elem)]) -> Result<Self> {
        let mut es = Vec::new();
        for &(i, j, a) in entries {
            if i >= j || j >= size {
                return Err(Error::InvalidArgument(format!(
                    "antisymmetric entry ({i},{j}) must satisfy i < j < {size}"
                )));
            }
            if a != 0 {
                es.push((i, j, a));
            }
        }
        es.sort_unstable();
        es.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        Ok(AntisymmetricSpec { size, entries: es })
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, size: usize, rng: &mut R) -> Self {
        loop {
            let entries: Vec<(usize, usize, Elem)> = (0..size)
                .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
                .map(|(i, j)| (i, j, rng.gen_range(0..field.q())))
                .collect();
            let spec = Self::new(size, &entries).expect("indices in range");
            if !spec.entries.is_empty() {
                return spec;
            }
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[(usize, usize, Elem)] {
        &self.entries
    }

    /// `A` with `a_ji = -a_ij` and zero diagonal.
    pub fn matrix(&self, field: &Field) -> Matrix {
        let mut m = Matrix::zeros(self.size, self.size);
        for &(i, j, a) in &self.entries {
            m.set(i, j, a);
            m.set(j, i, field.neg(a));
        }
        m
    }
}

/// `x A (x^q)^t = sum_{i<j} a_ij (x_i x_j^q - x_i^q x_j)`, which vanishes at
/// every rational point.
pub fn space_filling(spec: &AntisymmetricSpec, field: &Arc<Field>) -> Result<Hypersurface> {
    let n = spec.size;
    let q = field.q();
    let terms = spec.entries.iter().flat_map(|&(i, j, a)| {
        let mut e1 = vec![0; n];
        e1[i] += 1;
        e1[j] += q;
        let mut e2 = vec![0; n];
        e2[i] += q;
        e2[j] += 1;
        [(e1, a), (e2, field.neg(a))]
    });
    let poly = MultiPoly::from_terms(field, n, terms);
    if poly.is_zero() {
        return Err(Error::ZeroForm);
    }
    Hypersurface::new(poly)
}

/// A matrix with `a_ji = a_ij^sqrt(q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianSpec {
    entries: Matrix,
}

impl HermitianSpec {
    pub fn identity(size: usize) -> Self {
        HermitianSpec { entries: Matrix::identity(size) }
    }

    pub fn new(entries: Matrix, field: &Field) -> Result<Self> {
        let r = field.sqrt_order()? as u64;
        if entries.rows != entries.cols {
            return Err(Error::DimensionMismatch { expected: entries.rows, got: entries.cols });
        }
        for i in 0..entries.rows {
            for j in 0..entries.cols {
                if entries.get(j, i) != field.pow(entries.get(i, j), r) {
                    return Err(Error::NonHermitianMatrix);
                }
            }
        }
        Ok(HermitianSpec { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.rows
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }
}

/// `sum_{i,j} a_ij x_i x_j^sqrt(q)` on `P^N`; the identity spec gives
/// `x_0^(r+1) + ... + x_N^(r+1)` with `r = sqrt(q)`.
pub fn hermitian(spec: Option<&HermitianSpec>, field: &Arc<Field>, ambient: usize) -> Result<Hypersurface> {
    let r = field.sqrt_order()?;
    let size = ambient + 1;
    let owned;
    let spec = match spec {
        Some(s) => s,
        None => {
            owned = HermitianSpec::identity(size);
            &owned
        }
    };
    if spec.size() != size {
        return Err(Error::DimensionMismatch { expected: size, got: spec.size() });
    }
    let a = spec.matrix();
    let terms = (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).map(|(i, j)| {
        let mut e = vec![0; size];
        e[i] += 1;
        e[j] += r;
        (e, a.get(i, j))
    });
    Hypersurface::new(MultiPoly::from_terms(field, size, terms))
}

/// The identity Hermitian surface form in `x_0..x_3`, read in `P^{n+1}`: a
/// cone with vertex spanned by the remaining coordinate points.
pub fn hermitian_cone(field: &Arc<Field>, n: usize) -> Result<Hypersurface> {
    field.sqrt_order()?;
    if n < 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    let surface = hermitian(None, field, 3)?;
    Hypersurface::new(surface.poly().extend_vars(n + 2 - 4))
}

/// A quadric `x_0 (a . x) + x_1 (b . x)` together with its determinant test.
#[derive(Debug, Clone)]
pub struct QuadricPencil {
    pub hypersurface: Hypersurface,
    /// The symmetric bordered matrix of second partials.
    pub bordered: Matrix,
    pub det: Elem,
    /// `det != 0`: the determinant criterion for nonsingularity.
    pub nonsingular_by_det: bool,
    /// The form has an `F_q`-linear factor.
    pub reducible: bool,
}

pub fn quadric_pencil(a: &[Elem], b: &[Elem], field: &Arc<Field>) -> Result<QuadricPencil> {
    let size = a.len();
    if b.len() != size {
        return Err(Error::DimensionMismatch { expected: size, got: b.len() });
    }
    if size < 3 {
        return Err(Error::UnsupportedDimension(size.saturating_sub(1)));
    }
    for &c in a.iter().chain(b) {
        field.check(c)?;
    }
    let x0 = MultiPoly::var(field, size, 0);
    let x1 = MultiPoly::var(field, size, 1);
    let poly = x0
        .mul(&MultiPoly::linear_form(field, a))?
        .add(&x1.mul(&MultiPoly::linear_form(field, b))?)?;
    if poly.is_zero() {
        return Err(Error::ZeroForm);
    }
    let hypersurface = Hypersurface::new(poly)?;
    let two = field.from_int(2);
    let mut m = Matrix::zeros(size, size);
    m.set(0, 0, field.mul(two, a[0]));
    m.set(1, 1, field.mul(two, b[1]));
    let off = field.add(a[1], b[0]);
    m.set(0, 1, off);
    m.set(1, 0, off);
    for i in 2..size {
        m.set(0, i, a[i]);
        m.set(i, 0, a[i]);
        m.set(1, i, b[i]);
        m.set(i, 1, b[i]);
    }
    let det = m.det(field)?;
    let reducible = !linear_components(&hypersurface).is_empty();
    Ok(QuadricPencil { hypersurface, bordered: m, det, nonsingular_by_det: det != 0, reducible })
}

/// Product of `d` pairwise non-proportional linear forms spanning at most a
/// two-dimensional space of forms (a pencil of hyperplanes).
pub fn hyperplane_pencil_union(forms: &[Vec<Elem>], field: &Arc<Field>) -> Result<Hypersurface> {
    let d = forms.len();
    if d < 2 || d as u64 > field.q() as u64 + 1 {
        return Err(Error::PencilSize(d));
    }
    let m = Matrix::from_rows(forms)?;
    if forms.iter().any(|f| f.iter().all(|&c| c == 0)) {
        return Err(Error::ZeroForm);
    }
    if m.rank(field) > 2 {
        return Err(Error::NotAPencil);
    }
    for i in 0..d {
        for j in i + 1..d {
            let pair = Matrix::from_rows(&[forms[i].clone(), forms[j].clone()])?;
            if pair.rank(field) < 2 {
                return Err(Error::RepeatedForm);
            }
        }
    }
    let nvars = forms[0].len();
    let mut poly = MultiPoly::constant(field, nvars, 1);
    for f in forms {
        poly = poly.mul(&MultiPoly::linear_form(field, f))?;
    }
    Hypersurface::new(poly)
}

/// The plane quartic over `F_4` with 14 rational points and no linear component.
pub fn gamma_curve(field: &Arc<Field>) -> Result<Hypersurface> {
    if field.p() != 2 || field.s() != 2 {
        return Err(Error::WrongField);
    }
    Hypersurface::parse(
        "x0^4 + x1^4 + x2^4 + x0^2*x1^2 + x1^2*x2^2 + x0^2*x2^2 + x0^2*x1*x2 + x0*x1^2*x2 + x0*x1*x2^2",
        field,
        3,
    )
}

/// The three nonsingular surfaces of `P^3` reaching the bound.
#[derive(Debug, Clone)]
pub struct CorollarySurfaces {
    /// `x0 x1^q - x0^q x1 + x2 x3^q - x2^q x3`.
    pub space_filling: Hypersurface,
    /// `x0^(r+1) + ... + x3^(r+1)`, absent when `q` is not a square.
    pub hermitian: Option<Hypersurface>,
    /// `x0 x1 - x2 x3`.
    pub hyperbolic: Hypersurface,
    pub notice: Option<String>,
}

pub fn space_filling_surface(field: &Arc<Field>) -> Result<Hypersurface> {
    space_filling(&AntisymmetricSpec::new(4, &[(0, 1, 1), (2, 3, 1)])?, field)
}

pub fn hyperbolic_quadric(field: &Arc<Field>) -> Result<Hypersurface> {
    Hypersurface::parse("x0*x1 - x2*x3", field, 4)
}

pub fn corollary_surfaces(field: &Arc<Field>) -> Result<CorollarySurfaces> {
    let (hermitian, notice) = match hermitian(None, field, 3) {
        Ok(h) => (Some(h), None),
        Err(Error::NotASquare(q)) => {
            (None, Some(format!("q = {q} is not a square: no Hermitian surface")))
        }
        Err(e) => return Err(e),
    };
    Ok(CorollarySurfaces {
        space_filling: space_filling_surface(field)?,
        hermitian,
        hyperbolic: hyperbolic_quadric(field)?,
        notice,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::projgeo::count_points;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn space_filling_f2_signs() {
        let f2 = make_field(2, 1).unwrap();
        let x = space_filling_surface(&f2).unwrap();
        assert_eq!(x.render(), "x0^2*x1 + x0*x1^2 + x2^2*x3 + x2*x3^2");
        assert_eq!(count_points(&x), 15);
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(count_points(&space_filling_surface(&f3).unwrap()), 40);
    }

    #[test]
    fn random_space_filling_f4() {
        let f4 = make_field(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let spec = AntisymmetricSpec::random(&f4, 4, &mut rng);
            let a = spec.matrix(&f4);
            assert_eq!(a.transpose(), a.scale(f4.neg(1), &f4));
            let x = space_filling(&spec, &f4).unwrap();
            assert_eq!(x.degree(), 5);
            assert_eq!(count_points(&x), 85);
        }
    }

    #[test]
    fn antisymmetric_spec_rejects_lower_entries() {
        assert!(AntisymmetricSpec::new(4, &[(1, 0, 1)]).is_err());
        let f2 = make_field(2, 1).unwrap();
        let zero = AntisymmetricSpec::new(4, &[]).unwrap();
        assert_eq!(space_filling(&zero, &f2).unwrap_err(), Error::ZeroForm);
    }

    #[test]
    fn hermitian_examples() {
        let f4 = make_field(2, 2).unwrap();
        let h = hermitian(None, &f4, 3).unwrap();
        assert_eq!(h.render(), "x0^3 + x1^3 + x2^3 + x3^3");
        assert_eq!(count_points(&h), 45);
        let f9 = make_field(3, 2).unwrap();
        let h9 = hermitian(None, &f9, 3).unwrap();
        assert_eq!(h9.degree(), 4);
        assert_eq!(count_points(&h9), 280);

        let mut m = Matrix::identity(4);
        m.set(0, 1, 2);
        m.set(1, 0, 2);
        assert_eq!(HermitianSpec::new(m, &f4).unwrap_err(), Error::NonHermitianMatrix);
        let mut m = Matrix::identity(4);
        m.set(0, 1, 2);
        m.set(1, 0, 3);
        let spec = HermitianSpec::new(m, &f4).unwrap();
        let h = hermitian(Some(&spec), &f4, 3).unwrap();
        assert_eq!(h.render(), "x0^3 + 3*x0^2*x1 + 2*x0*x1^2 + x1^3 + x2^3 + x3^3");
        // the 2x2 block has determinant 1 - a^3 = 0, so this is a cone over
        // the Hermitian curve: q * 9 + 1 points
        assert_eq!(count_points(&h), 37);
        let identity = hermitian(None, &f4, 3).unwrap();
        assert_eq!(identity.poly().frobenius_coeffs(1), *identity.poly());

        let f8 = make_field(2, 3).unwrap();
        assert_eq!(hermitian(None, &f8, 3).unwrap_err(), Error::NotASquare(8));
    }

    #[test]
    fn cones() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(count_points(&hermitian_cone(&f4, 3).unwrap()), 181);
        assert_eq!(count_points(&hermitian_cone(&f4, 4).unwrap()), 725);
        let f8 = make_field(2, 3).unwrap();
        assert_eq!(hermitian_cone(&f8, 3).unwrap_err(), Error::NotASquare(8));
        assert_eq!(hermitian_cone(&f4, 2).unwrap_err(), Error::UnsupportedDimension(2));
    }

    #[test]
    fn quadric_pencils() {
        let f5 = make_field(5, 1).unwrap();
        let qp = quadric_pencil(&[0, 0, 0, 1], &[0, 0, 4, 0], &f5).unwrap();
        assert_eq!(qp.hypersurface.render(), "x0*x3 + 4*x1*x2");
        assert!(qp.nonsingular_by_det && !qp.reducible);
        assert_eq!(count_points(&qp.hypersurface), 36);

        let f3 = make_field(3, 1).unwrap();
        let qp = quadric_pencil(&[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1], &f3).unwrap();
        assert_eq!(count_points(&qp.hypersurface), 49);
        assert_eq!(qp.det, 0);

        let sq = quadric_pencil(&[1, 0, 0, 0], &[0, 0, 0, 0], &f3).unwrap();
        assert!(sq.reducible);
        assert_eq!(quadric_pencil(&[0; 4], &[0; 4], &f3).unwrap_err(), Error::ZeroForm);
    }

    #[test]
    fn determinant_criterion_matches_singular_points() {
        use crate::analysis::singular_points;
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = make_field(p, s).unwrap();
            let mut tried = 0;
            while tried < 200 {
                let a: Vec<Elem> = (0..4).map(|_| rng.gen_range(0..f.q())).collect();
                let b: Vec<Elem> = (0..4).map(|_| rng.gen_range(0..f.q())).collect();
                let Ok(qp) = quadric_pencil(&a, &b, &f) else { continue };
                tried += 1;
                let minor = f.sub(f.mul(a[2], b[3]), f.mul(a[3], b[2]));
                assert_eq!(qp.det, f.mul(minor, minor));
                let nonsingular = singular_points(&qp.hypersurface, 2).unwrap().is_empty();
                assert_eq!(nonsingular, qp.nonsingular_by_det, "q={} a={a:?} b={b:?}", f.q());
            }
        }
    }

    #[test]
    fn pencils_in_p4_are_singular() {
        use crate::analysis::singular_points;
        use rand::Rng;
        let f3 = make_field(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let a: Vec<Elem> = (0..5).map(|_| rng.gen_range(0..3)).collect();
            let b: Vec<Elem> = (0..5).map(|_| rng.gen_range(0..3)).collect();
            let Ok(qp) = quadric_pencil(&a, &b, &f3) else { continue };
            assert_eq!(qp.det, 0);
            assert!(singular_points(&qp.hypersurface, 1).unwrap().count_at(1).unwrap() > 0);
        }
    }

    #[test]
    fn pencil_unions() {
        let f3 = make_field(3, 1).unwrap();
        let two = hyperplane_pencil_union(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]], &f3).unwrap();
        assert_eq!(count_points(&two), 22);
        let three =
            hyperplane_pencil_union(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 1, 0, 0]], &f3).unwrap();
        assert_eq!(count_points(&three), 31);
        assert_eq!(
            hyperplane_pencil_union(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]], &f3).unwrap_err(),
            Error::NotAPencil
        );
        assert_eq!(
            hyperplane_pencil_union(&[vec![1, 0, 0, 0], vec![2, 0, 0, 0]], &f3).unwrap_err(),
            Error::RepeatedForm
        );
    }

    #[test]
    fn gamma() {
        let f4 = make_field(2, 2).unwrap();
        let g = gamma_curve(&f4).unwrap();
        assert_eq!(g.poly().num_terms(), 9);
        assert_eq!(count_points(&g), 14);
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(gamma_curve(&f2).unwrap_err(), Error::WrongField);
    }

    #[test]
    fn corollary_counts() {
        let f4 = make_field(2, 2).unwrap();
        let c = corollary_surfaces(&f4).unwrap();
        let counts = (
            count_points(&c.space_filling),
            count_points(c.hermitian.as_ref().unwrap()),
            count_points(&c.hyperbolic),
        );
        assert_eq!(counts, (85, 45, 25));
        let f3 = make_field(3, 1).unwrap();
        let c = corollary_surfaces(&f3).unwrap();
        assert!(c.hermitian.is_none() && c.notice.is_some());
        assert_eq!((count_points(&c.space_filling), count_points(&c.hyperbolic)), (40, 16));
    }
}
