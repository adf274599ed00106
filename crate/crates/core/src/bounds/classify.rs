use serde::Serialize;

use super::BoundReport;
use crate::analysis::{cone_analysis, linear_components_in, singular_points};
use crate::constructions::{gamma_curve, hermitian};
use crate::equivalence::{fingerprint, pgl_search, EquivalenceVerdict, SearchOptions, DEFAULT_BUDGET, DEFAULT_SEED};
use crate::error::Result;
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::poly::Hypersurface;
use crate::projgeo::{restrict_to_subspace, zero_set, PointSpace, ZeroSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub t_max: u32,
    /// Budget for the equivalence search; `None` skips it.
    pub equivalence_budget: Option<u64>,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { t_max: 2, equivalence_budget: Some(DEFAULT_BUDGET), seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremCase {
    /// `d = q + 1`, `X(F_q) = P^N(F_q)`.
    SpaceFilling,
    /// `d = sqrt(q) + 1`, a cone over the nonsingular Hermitian surface.
    HermitianCone,
    /// `d = 2`, a quadric containing a codimension-2 linear subspace.
    QuadricPencil,
    /// Plane quartic over `F_4` with 14 points.
    SziklaiQuartic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Has `F_q`-linear components; the bound does not apply.
    Excluded { components: usize },
    BelowBound,
    /// Extremal and consistent with the given case.
    Consistent { case: TheoremCase },
    /// Extremal but matching no known case.
    Unclassified { reason: String },
    /// A bound is exceeded.
    ExceedsBound,
}

impl Verdict {
    /// Unclassified extremal objects and bound violations.
    pub fn is_alarm(&self) -> bool {
        matches!(self, Verdict::Unclassified { .. } | Verdict::ExceedsBound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Evidence {
    pub linear_components: Vec<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub space_filling: Option<bool>,
    /// `F` lies in the span of `x_i x_j^q - x_i^q x_j`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antisymmetric_form: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_dim: Option<isize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fingerprint_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceVerdict>,
    /// Equations of a rational codimension-2 subspace contained in `X`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codim2_subspace: Option<Vec<Vec<Elem>>>,
    /// No singular point over `F_{q^t}`, `t <= t_max`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonsingular_to_t_max: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub report: BoundReport,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub evidence: Evidence,
}

/// Counts `X`, compares with every bound and, for extremal `X`, checks which
/// case of the classification it is consistent with. Fingerprints alone
/// never establish the Hermitian case; the equivalence verdict is reported
/// separately.
pub fn classify(x: &Hypersurface, opts: ClassifyOptions) -> Result<Classification> {
    let zs = zero_set(x);
    let components = linear_components_in(x, &zs);
    classify_with(x, &zs, components, opts)
}

pub(crate) fn classify_with(
    x: &Hypersurface,
    zs: &ZeroSet,
    components: Vec<Vec<Elem>>,
    opts: ClassifyOptions,
) -> Result<Classification> {
    let field = x.field();
    let q = field.q() as u64;
    let d = x.degree() as u64;
    let n_amb = x.ambient() as u32;
    let measured = zs.count as u64;
    let report = BoundReport::compute(n_amb, d, q, measured, components.is_empty())?;
    let mut ev = Evidence { linear_components: components, ..Evidence::default() };
    let verdict = if report.exceeds_any {
        Verdict::ExceedsBound
    } else if !ev.linear_components.is_empty() {
        Verdict::Excluded { components: ev.linear_components.len() }
    } else if n_amb == 2 {
        classify_curve(x, &report, &mut ev, opts)?
    } else if !report.achieves_theta {
        Verdict::BelowBound
    } else {
        classify_extremal(x, &mut ev, opts)?
    };
    Ok(Classification { report, verdict, evidence: ev })
}

fn search_opts(opts: &ClassifyOptions) -> Option<SearchOptions> {
    opts.equivalence_budget.map(|budget| SearchOptions { budget, seed: opts.seed })
}

fn classify_curve(x: &Hypersurface, report: &BoundReport, ev: &mut Evidence, opts: ClassifyOptions) -> Result<Verdict> {
    if report.d < 2 || report.sziklai != Some(report.measured as u128) {
        return Ok(Verdict::BelowBound);
    }
    if !super::sziklai_equality_possible(report.d, report.q) {
        return Ok(Verdict::Unclassified { reason: "curve bound attained outside d = q = 4".into() });
    }
    let gamma = gamma_curve(x.field())?;
    ev.fingerprint_match = Some(fingerprint(x)?.first_difference(&fingerprint(&gamma)?).is_none());
    if let Some(so) = search_opts(&opts) {
        let v = pgl_search(&gamma, x, so)?;
        let inequivalent = matches!(v, EquivalenceVerdict::Inequivalent { .. });
        ev.equivalence = Some(v);
        if inequivalent {
            return Ok(Verdict::Unclassified { reason: "not equivalent to the extremal quartic".into() });
        }
    }
    Ok(if ev.fingerprint_match == Some(true) {
        Verdict::Consistent { case: TheoremCase::SziklaiQuartic }
    } else {
        Verdict::Unclassified { reason: "fingerprint differs from the extremal quartic".into() }
    })
}

fn classify_extremal(x: &Hypersurface, ev: &mut Evidence, opts: ClassifyOptions) -> Result<Verdict> {
    let field = x.field();
    let q = field.q();
    let d = x.degree();
    let sqrt_q = field.sqrt_order().ok();
    if d == q + 1 {
        let sf = zero_set(x).count == PointSpace::new(field, x.ambient()).len();
        ev.space_filling = Some(sf);
        let anti = is_antisymmetric_form(x);
        ev.antisymmetric_form = Some(anti);
        return Ok(if sf && anti {
            Verdict::Consistent { case: TheoremCase::SpaceFilling }
        } else {
            Verdict::Unclassified { reason: "degree q+1 extremal but not of the form x A x^q".into() }
        });
    }
    if Some(d) == sqrt_q.map(|r| r + 1) {
        return classify_hermitian(x, ev, opts);
    }
    if d == 2 {
        let s = contained_codim2_subspace(x);
        let found = s.is_some();
        ev.codim2_subspace = s;
        ev.nonsingular_to_t_max = Some(singular_points(x, opts.t_max)?.is_empty());
        return Ok(if found {
            Verdict::Consistent { case: TheoremCase::QuadricPencil }
        } else {
            Verdict::Unclassified { reason: "extremal quadric without a rational codimension-2 subspace".into() }
        });
    }
    Ok(Verdict::Unclassified { reason: format!("extremal in degree {d} outside 2, sqrt(q)+1, q+1") })
}

fn classify_hermitian(x: &Hypersurface, ev: &mut Evidence, opts: ClassifyOptions) -> Result<Verdict> {
    let field = x.field();
    let n = x.ambient();
    let cone = cone_analysis(x)?;
    ev.vertex_dim = Some(cone.vertex_dim);
    ev.base = cone.base.clone();
    let expected_vertex = n as isize - 4;
    if cone.vertex_dim != expected_vertex {
        return Ok(Verdict::Unclassified {
            reason: format!("vertex dimension {} but {expected_vertex} expected", cone.vertex_dim),
        });
    }
    let base = if n == 3 { x.clone() } else { cone.base_hypersurface.clone().expect("base in P^3") };
    let model = hermitian(None, field, 3)?;
    let matches = fingerprint(&base)?.first_difference(&fingerprint(&model)?).is_none();
    ev.fingerprint_match = Some(matches);
    if !matches {
        return Ok(Verdict::Unclassified { reason: "base is not Hermitian-like".into() });
    }
    if let Some(so) = search_opts(&opts) {
        let v = pgl_search(&model, &base, so)?;
        let inequivalent = matches!(v, EquivalenceVerdict::Inequivalent { .. });
        ev.equivalence = Some(v);
        if inequivalent {
            return Ok(Verdict::Unclassified { reason: "base not equivalent to the Hermitian surface".into() });
        }
    }
    Ok(Verdict::Consistent { case: TheoremCase::HermitianCone })
}

/// Every monomial is `x_i x_j^q` with `i != j` and the coefficients of
/// `x_i x_j^q` and `x_j x_i^q` are negatives of each other.
pub fn is_antisymmetric_form(x: &Hypersurface) -> bool {
    let f = x.field();
    let q = f.q();
    let n = x.poly().nvars();
    x.poly().terms().all(|(e, c)| {
        let ones: Vec<usize> = (0..n).filter(|&i| e[i] == 1).collect();
        let qs: Vec<usize> = (0..n).filter(|&i| e[i] == q).collect();
        let support = e.iter().filter(|&&k| k != 0).count();
        if support != 2 || ones.len() != 1 || qs.len() != 1 {
            return false;
        }
        let mut mirror = vec![0; n];
        mirror[ones[0]] = q;
        mirror[qs[0]] = 1;
        x.poly().coeff(&mirror) == f.neg(c)
    })
}

/// Enumerates the `k x n` matrices of rank `k` in reduced row echelon form.
fn for_each_rref(field: &Field, k: usize, n: usize, mut visit: impl FnMut(&Matrix) -> bool) -> bool {
    fn pivots(k: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            pivots(k, n, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    pivots(k, n, 0, &mut Vec::new(), &mut all);
    let q = field.q();
    for piv in all {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((piv[r] + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut m = Matrix::zeros(k, n);
        for (r, &c) in piv.iter().enumerate() {
            m.set(r, c, 1);
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            for (&(r, c), &v) in free.iter().zip(&digits) {
                m.set(r, c, v);
            }
            if visit(&m) {
                return true;
            }
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    false
}

/// A rational linear subspace of codimension 2 contained in `X`, given by
/// two independent linear equations in reduced echelon form.
pub fn contained_codim2_subspace(x: &Hypersurface) -> Option<Vec<Vec<Elem>>> {
    let field = x.field();
    let n1 = x.ambient() + 1;
    if n1 < 3 {
        return None;
    }
    let zs = zero_set(x);
    let mut found = None;
    for_each_rref(field, 2, n1, |eqs| {
        let basis = eqs.nullspace(field);
        let coeffs = PointSpace::new(field, basis.len() - 1);
        let t = Matrix::from_rows(&basis).expect("rectangular").transpose();
        if !coeffs.iter().all(|c| zs.contains(&t.mul_vec(&c, field))) {
            return false;
        }
        if restrict_to_subspace(x.poly(), &basis).map(|g| g.is_zero()).unwrap_or(false) {
            found = Some(eqs.row_vecs());
            true
        } else {
            false
        }
    });
    found
}
