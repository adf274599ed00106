//! Battery of exact identities checked over a grid of small fields.
//!
//! Every check is recomputed from scratch; expected values come from
//! closed forms evaluated independently of the library's bound code.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{is_space_filling, linear_components, singular_points};
use crate::bounds::{self, classify, ClassifyOptions, TheoremCase, Verdict};
use crate::constructions::{
    gamma_curve, hermitian, hermitian_cone, hyperbolic_quadric, hyperplane_pencil_union, quadric_pencil,
    space_filling_surface,
};
use crate::error::{Error, Result};
use crate::gf::{make_field, Elem, Field};
use crate::poly::MultiPoly;
use crate::projgeo::count_points;
use crate::scan::random_form;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Grid {
    Small,
    Medium,
}

impl Grid {
    pub fn fields(self) -> &'static [(u32, u32)] {
        match self {
            Grid::Small => &[(2, 1), (3, 1), (2, 2)],
            Grid::Medium => &[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)],
        }
    }
}

impl std::str::FromStr for Grid {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Grid::Small),
            "medium" => Ok(Grid::Medium),
            _ => Err(Error::InvalidArgument(format!("unknown grid {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Negative control: report every bound value one too large.
    pub theta_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub q: Option<u32>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub grid: Grid,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

type Outcome = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Ctx {
    opts: VerifyOptions,
}

impl Ctx {
    fn theta(&self, n: u32, d: u64, q: u64) -> std::result::Result<u128, String> {
        let t = lift(bounds::theta(n, d, q))?;
        Ok(if self.opts.theta_fault { t + 1 } else { t })
    }
}

/// `(d-1) q^n + d q^(n-1) + sum_{i<n-1} q^i`, term by term.
fn theta_direct(n: u32, d: u64, q: u64) -> u128 {
    let q = q as u128;
    let d = d as u128;
    let mut acc = (d - 1) * q.pow(n) + d * q.pow(n - 1);
    for i in 0..n - 1 {
        acc += q.pow(i);
    }
    acc
}

fn theta_pinned(cx: &Ctx) -> Outcome {
    for &(n, d, q, want) in &[(2, 4, 4, 65u128), (2, 3, 4, 45), (2, 4, 9, 280), (3, 3, 4, 181), (3, 2, 3, 49)] {
        let got = cx.theta(n, d, q)?;
        ensure!(got == want, "theta({n},{d},{q}) = {got}, expected {want}");
    }
    Ok(())
}

fn theta_closed_form(cx: &Ctx, q: u64) -> Outcome {
    for n in 2..=4u32 {
        for d in 1..=q + 2 {
            let got = cx.theta(n, d, q)?;
            let want = theta_direct(n, d, q);
            ensure!(got == want, "theta({n},{d},{q}) = {got}, expected {want}");
            let serre = lift(bounds::serre_bound(n, d, q))? as i128;
            let gap = q.pow(n - 1) as i128 * (d as i128 - 1 - q as i128);
            ensure!(got as i128 - serre == gap, "theta - serre at ({n},{d},{q}) is not q^(n-1)(d-1-q)");
        }
    }
    Ok(())
}

fn field_axioms(f: &Field) -> Outcome {
    let q = f.q();
    for a in 0..q {
        ensure!(f.add(a, 0) == a && f.mul(a, 1) == a, "identity fails at {a}");
        ensure!(f.add(a, f.neg(a)) == 0, "additive inverse fails at {a}");
        if a != 0 {
            let inv = lift(f.inv(a))?;
            ensure!(f.mul(a, inv) == 1, "inverse fails at {a}");
        }
        ensure!(f.frobenius(a, f.s()) == a, "x^q != x at {a}");
        for b in 0..q {
            ensure!(f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a), "commutativity fails at {a},{b}");
            for c in 0..q {
                ensure!(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)), "additive associativity fails");
                ensure!(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)), "multiplicative associativity fails");
                ensure!(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)), "distributivity fails");
            }
        }
    }
    Ok(())
}

fn euler_identity(field: &Arc<Field>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(field.q() as u64);
    for d in 1..=4u32 {
        for _ in 0..10 {
            let f = random_form(field, 4, d, &mut rng);
            let mut lhs = MultiPoly::zero(field, 4);
            for (i, g) in f.gradient().iter().enumerate() {
                lhs = lift(lhs.add(&lift(MultiPoly::var(field, 4, i).mul(g))?))?;
            }
            let rhs = f.scale(field.from_int(d as i64));
            ensure!(lhs == rhs, "Euler identity fails for {}", f.render());
        }
    }
    Ok(())
}

fn hyperbolic(cx: &Ctx, field: &Arc<Field>) -> Outcome {
    let q = field.q() as u64;
    let x = lift(hyperbolic_quadric(field))?;
    let n = count_points(&x);
    ensure!(n as u64 == (q + 1) * (q + 1), "hyperbolic quadric counts {n}");
    let th = cx.theta(2, 2, q)?;
    ensure!(n as u128 == th, "hyperbolic quadric counts {n}, theta is {th}");
    ensure!(lift(singular_points(&x, 2))?.is_empty(), "hyperbolic quadric is singular");
    Ok(())
}

fn space_filling(cx: &Ctx, field: &Arc<Field>) -> Outcome {
    let q = field.q() as u64;
    let x = lift(space_filling_surface(field))?;
    let n = count_points(&x) as u128;
    let p3 = (q * q * q + q * q + q + 1) as u128;
    ensure!(n == p3, "space-filling surface counts {n}, P^3 has {p3}");
    let th = cx.theta(2, q + 1, q)?;
    ensure!(n == th, "space-filling surface counts {n}, theta is {th}");
    ensure!(is_space_filling(&x), "space-filling test disagrees with the count");
    Ok(())
}

fn hermitian_surface(cx: &Ctx, field: &Arc<Field>) -> Outcome {
    let q = field.q() as u64;
    let r = lift(field.sqrt_order())? as u64;
    let x = lift(hermitian(None, field, 3))?;
    let n = count_points(&x) as u128;
    let th = cx.theta(2, r + 1, q)?;
    ensure!(n == th, "Hermitian surface counts {n}, theta is {th}");
    ensure!(lift(singular_points(&x, 2))?.is_empty(), "Hermitian surface is singular");
    Ok(())
}

fn cone(cx: &Ctx, field: &Arc<Field>) -> Outcome {
    let q = field.q() as u64;
    let r = lift(field.sqrt_order())? as u64;
    let base = count_points(&lift(hermitian(None, field, 3))?) as u128;
    let x = lift(hermitian_cone(field, 3))?;
    let n = count_points(&x) as u128;
    ensure!(n == q as u128 * base + 1, "cone counts {n}, formula gives {}", q as u128 * base + 1);
    let th = cx.theta(3, r + 1, q)?;
    ensure!(n == th, "cone counts {n}, theta is {th}");
    ensure!(!lift(singular_points(&x, 1))?.is_empty(), "cone has no singular point");
    Ok(())
}

fn serre_equality(field: &Arc<Field>) -> Outcome {
    let q = field.q() as u64;
    let mut forms: Vec<Vec<Elem>> = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]];
    for c in 1..field.q() {
        forms.push(vec![1, c, 0, 0]);
    }
    for d in 2..=q as usize {
        let x = lift(hyperplane_pencil_union(&forms[..d], field))?;
        let n = count_points(&x) as u128;
        let want = (d as u64 * q * q + q + 1) as u128;
        ensure!(n == want, "union of {d} planes counts {n}, expected {want}");
        ensure!(n == lift(bounds::serre_bound(2, d as u64, q))?, "serre bound disagrees at d = {d}");
    }
    Ok(())
}

fn quadric_pencil_p4(cx: &Ctx, field: &Arc<Field>) -> Outcome {
    let q = field.q() as u64;
    let qp = lift(quadric_pencil(&[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1], field))?;
    let n = count_points(&qp.hypersurface) as u128;
    let th = cx.theta(3, 2, q)?;
    ensure!(n == th, "pencil quadric in P^4 counts {n}, theta is {th}");
    ensure!(!lift(singular_points(&qp.hypersurface, 1))?.is_empty(), "pencil quadric in P^4 is nonsingular");
    Ok(())
}

fn sziklai(field: &Arc<Field>) -> Outcome {
    let x = lift(gamma_curve(field))?;
    let n = count_points(&x) as u128;
    let want = lift(bounds::sziklai_bound(4, 4))?;
    ensure!(n == want, "gamma counts {n}, expected {want}");
    ensure!(linear_components(&x).is_empty(), "gamma has a linear component");
    Ok(())
}

fn classification(field: &Arc<Field>) -> Outcome {
    let opts = ClassifyOptions { equivalence_budget: None, ..Default::default() };
    let expect = |x, case| -> Outcome {
        let c = lift(classify(&x, opts))?;
        ensure!(c.verdict == Verdict::Consistent { case }, "{} classified as {:?}", x.render(), c.verdict);
        Ok(())
    };
    expect(lift(hyperbolic_quadric(field))?, TheoremCase::QuadricPencil)?;
    expect(lift(space_filling_surface(field))?, TheoremCase::SpaceFilling)?;
    if field.sqrt_order().is_ok() {
        expect(lift(hermitian(None, field, 3))?, TheoremCase::HermitianCone)?;
    }
    Ok(())
}

pub fn verify(grid: Grid, opts: VerifyOptions) -> Result<VerifyReport> {
    let cx = Ctx { opts };
    let mut checks = Vec::new();
    let mut push = |name, q, r: Outcome| {
        checks.push(CheckResult { name, q, passed: r.is_ok(), detail: r.err() });
    };
    push("theta_values", None, theta_pinned(&cx));
    for &(p, s) in grid.fields() {
        let field = make_field(p, s)?;
        let q = field.q();
        push("field_axioms", Some(q), field_axioms(&field));
        push("theta_closed_form", Some(q), theta_closed_form(&cx, q as u64));
        push("euler_identity", Some(q), euler_identity(&field));
        push("hyperbolic_quadric", Some(q), hyperbolic(&cx, &field));
        push("space_filling", Some(q), space_filling(&cx, &field));
        push("serre_equality", Some(q), serre_equality(&field));
        push("quadric_pencil_p4", Some(q), quadric_pencil_p4(&cx, &field));
        if field.sqrt_order().is_ok() {
            push("hermitian_surface", Some(q), hermitian_surface(&cx, &field));
            push("hermitian_cone", Some(q), cone(&cx, &field));
        }
        if q == 4 {
            push("sziklai_curve", Some(q), sziklai(&field));
        }
        push("classification", Some(q), classification(&field));
    }
    Ok(VerifyReport { grid, checks })
}
