//! Acceptance battery: one line per criterion, nonzero exit on any failure.
//!
//! Expected values are recomputed here from closed forms or by direct
//! enumeration rather than read back from the library.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use fqvar::analysis::{covered_by_lines, is_space_filling, linear_components, singular_points};
use fqvar::bounds::{serre_bound, theta};
use fqvar::constructions::{
    corollary_surfaces, gamma_curve, hermitian, hermitian_cone, hyperbolic_quadric, hyperplane_pencil_union,
    quadric_pencil, space_filling, space_filling_surface, AntisymmetricSpec,
};
use fqvar::equivalence::{pgl_search, verify_witness, DEFAULT_BUDGET};
use fqvar::projgeo::{count_points, hyperplanes_through, section, LinearSubspace, PointSpace};
use fqvar::scan::{random_form, random_invertible};
use fqvar::{make_field, Elem, EquivalenceVerdict, Field, Hypersurface, MultiPoly, SearchOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (u32, fn() -> Check, Duration);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn f(p: u32, s: u32) -> Arc<Field> {
    make_field(p, s).unwrap()
}

fn pow(q: u64, e: u32) -> u128 {
    (q as u128).pow(e)
}

/// `|P^n(F_q)|` by summation.
fn pn(n: u32, q: u64) -> u128 {
    (0..=n).map(|i| pow(q, i)).sum()
}

/// `(d-1) q^n + d q^(n-1) + |P^(n-2)|`.
fn theta_oracle(n: u32, d: u64, q: u64) -> u128 {
    (d as u128 - 1) * pow(q, n) + d as u128 * pow(q, n - 1) + pn(n - 2, q)
}

/// Points of `P^N(F_q)` by brute force over all nonzero vectors, one per
/// class (first nonzero coordinate equal to 1).
fn brute_count(x: &Hypersurface) -> u64 {
    let field = x.field();
    let q = field.q() as u64;
    let n1 = x.ambient() + 1;
    let mut v = vec![0; n1];
    let mut count = 0;
    for code in 0..q.pow(n1 as u32) {
        let mut c = code;
        for slot in v.iter_mut() {
            *slot = (c % q) as Elem;
            c /= q;
        }
        if v.iter().find(|&&a| a != 0) == Some(&1) && x.poly().eval(&v) == 0 {
            count += 1;
        }
    }
    count
}

fn criterion_1() -> Check {
    for &(n, d, q, want) in &[(2, 4, 4, 65u128), (2, 3, 4, 45), (2, 4, 9, 280), (3, 3, 4, 181), (3, 2, 3, 49)] {
        let got = theta(n, d, q).map_err(|e| e.to_string())?;
        ensure!(got == want, "theta({n},{d},{q}) = {got}, expected {want}");
        ensure!(got == theta_oracle(n, d, q), "closed form disagrees at ({n},{d},{q})");
    }
    Ok("65 45 280 181 49".into())
}

fn criterion_2() -> Check {
    let f4 = f(2, 2);
    let g = gamma_curve(&f4).map_err(|e| e.to_string())?;
    let n = count_points(&g);
    ensure!(n == 14, "gamma counts {n}");
    ensure!(brute_count(&g) == 14, "brute force disagrees");
    ensure!(linear_components(&g).is_empty(), "gamma has a linear component");
    ensure!((4 - 1) * 4 + 2 == n, "(d-1)q+2 = {}", (4 - 1) * 4 + 2);
    Ok(format!("N = {n}, no linear components"))
}

fn criterion_3() -> Check {
    for (field, want) in [(f(2, 2), 45u64), (f(3, 2), 280)] {
        let q = field.q() as u64;
        let r = (q as f64).sqrt().round() as u64;
        let x = hermitian(None, &field, 3).map_err(|e| e.to_string())?;
        let n = count_points(&x);
        ensure!(n == want, "Hermitian surface over F_{q} counts {n}");
        ensure!(n as u128 == theta(2, r + 1, q).unwrap(), "theta disagrees over F_{q}");
        ensure!(n as u128 == theta_oracle(2, r + 1, q), "closed form disagrees over F_{q}");
        let s = singular_points(&x, 2).map_err(|e| e.to_string())?;
        ensure!(s.is_empty(), "Hermitian surface over F_{q} is singular");
    }
    Ok("45 over F4, 280 over F9, nonsingular to t = 2".into())
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (field, want) in [(f(2, 1), 15u64), (f(3, 1), 40), (f(2, 2), 85)] {
        let q = field.q() as u64;
        let x = space_filling_surface(&field).map_err(|e| e.to_string())?;
        let n = count_points(&x);
        ensure!(n == want && n as u128 == pn(3, q), "space-filling surface over F_{q} counts {n}");
        ensure!(n as u128 == theta(2, q + 1, q).unwrap(), "theta disagrees over F_{q}");
        for _ in 0..20 {
            let spec = AntisymmetricSpec::random(&field, 4, &mut rng);
            let y = space_filling(&spec, &field).map_err(|e| e.to_string())?;
            ensure!(is_space_filling(&y), "{} is not space-filling", y.render());
            ensure!(brute_count(&y) as u128 == pn(3, q), "{} misses points", y.render());
        }
    }
    Ok("15 40 85, 60 random specs space-filling".into())
}

fn criterion_5() -> Check {
    for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let field = f(p, s);
        let q = field.q() as u64;
        let x = hyperbolic_quadric(&field).map_err(|e| e.to_string())?;
        let n = count_points(&x) as u128;
        ensure!(n == pow(q + 1, 2) && n == theta(2, 2, q).unwrap(), "hyperbolic quadric over F_{q} counts {n}");
        ensure!(singular_points(&x, 2).unwrap().is_empty(), "hyperbolic quadric over F_{q} is singular");
    }
    let f3 = f(3, 1);
    let qp = quadric_pencil(&[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1], &f3).map_err(|e| e.to_string())?;
    let n = count_points(&qp.hypersurface);
    ensure!(n == 49 && n as u128 == theta(3, 2, 3).unwrap(), "pencil quadric in P^4 counts {n}");
    ensure!(brute_count(&qp.hypersurface) == 49, "brute force disagrees in P^4");
    let sing = singular_points(&qp.hypersurface, 1).unwrap();
    ensure!(sing.count_at(1).unwrap_or(0) > 0, "pencil quadric in P^4 is nonsingular");

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tried = 0;
    let (mut nonsing, mut sing) = (0, 0);
    while tried < 200 {
        let a: Vec<Elem> = (0..4).map(|_| rng.gen_range(0..3)).collect();
        let b: Vec<Elem> = (0..4).map(|_| rng.gen_range(0..3)).collect();
        let Ok(qp) = quadric_pencil(&a, &b, &f3) else { continue };
        tried += 1;
        let by_points = singular_points(&qp.hypersurface, 2).unwrap().is_empty();
        ensure!(by_points == qp.nonsingular_by_det, "determinant criterion fails for a = {a:?}, b = {b:?}");
        if by_points {
            nonsing += 1;
        } else {
            sing += 1;
        }
    }
    ensure!(nonsing > 0 && sing > 0, "random pencils did not exercise both outcomes");
    Ok(format!("(q+1)^2 for 7 fields, 49 in P^4, determinant criterion on 200 pencils ({nonsing} nonsingular)"))
}

fn criterion_6() -> Check {
    let f4 = f(2, 2);
    let base = count_points(&hermitian(None, &f4, 3).unwrap()) as u128;
    for (n, k, want) in [(3usize, 0u32, 181u128), (4, 1, 725)] {
        let x = hermitian_cone(&f4, n).map_err(|e| e.to_string())?;
        let got = count_points(&x) as u128;
        let formula = pow(4, k + 1) * base + pn(k, 4);
        ensure!(got == want && got == formula, "cone in P^{} counts {got}, formula gives {formula}", n + 1);
        ensure!(got == theta(n as u32, 3, 4).unwrap(), "theta disagrees in P^{}", n + 1);
    }
    let cone4 = hermitian_cone(&f4, 3).unwrap();
    ensure!(brute_count(&cone4) == 181, "brute force disagrees in P^4");
    Ok("181 = 4*45+1, 725 = 16*45+5".into())
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sampled = 0;
    for (p, s) in [(2, 1), (3, 1), (2, 2)] {
        let field = f(p, s);
        let q = field.q() as u64;
        let mut forms: Vec<Vec<Elem>> = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]];
        forms.extend((1..field.q()).map(|c| vec![1, c, 0, 0]));
        for d in 1..=q {
            let want = d as u128 * pow(q, 2) + q as u128 + 1;
            ensure!(serre_bound(2, d, q).unwrap() == want, "serre bound wrong at d = {d}, q = {q}");
            let x = if d == 1 {
                Hypersurface::new(MultiPoly::var(&field, 4, 0)).unwrap()
            } else {
                hyperplane_pencil_union(&forms[..d as usize], &field).map_err(|e| e.to_string())?
            };
            let n = count_points(&x) as u128;
            ensure!(n == want, "union of {d} planes over F_{q} counts {n}, expected {want}");
            for _ in 0..1000 {
                let y = Hypersurface::new(random_form(&field, 4, d as u32, &mut rng)).unwrap();
                let n = count_points(&y) as u128;
                ensure!(n <= want, "{} over F_{q} counts {n} > {want}", y.render());
                sampled += 1;
            }
        }
    }
    Ok(format!("equality for every d <= q, {sampled} random samples within the bound"))
}

fn fqvar(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fqvar")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn criterion_8() -> Check {
    let mut achievers = 0;
    let mut configs = 0;
    for (field, q) in [("2^1", 2u32), ("3^1", 3), ("2^2", 4)] {
        let mut runs: Vec<(u32, &str)> = (2..=q + 1).map(|d| (d, "dense")).collect();
        runs.push((q + 1, "antisymmetric"));
        for (d, family) in runs {
            let d_s = d.to_string();
            let args = ["scan", "--field", field, "--degree", &d_s, "--ambient", "3", "--samples", "10000", "--family", family, "--seed", "8"];
            let (code, stdout, stderr) = fqvar(&args);
            ensure!(code != 3, "alarm at q = {q}, d = {d}: {stderr}");
            ensure!(code == 0, "scan failed at q = {q}, d = {d} with exit {code}: {stderr}");
            let v: Value = serde_json::from_str(&stdout).map_err(|e| e.to_string())?;
            let r = &v["report"];
            ensure!(r["accepted"].as_u64() == Some(10_000), "q = {q}, d = {d}: only {} accepted samples", r["accepted"]);
            ensure!(r["exceeding"].as_u64() == Some(0), "q = {q}, d = {d}: {} samples exceed theta", r["exceeding"]);
            let th = r["theta"].as_u64().unwrap();
            ensure!(r["max_count"].as_u64().unwrap() <= th, "q = {q}, d = {d}: max count over theta");
            for (k, n) in r["verdicts"].as_object().unwrap() {
                ensure!(k.starts_with("consistent:"), "q = {q}, d = {d}: {n} achievers with verdict {k}");
            }
            achievers += r["achievers"].as_u64().unwrap();
            configs += 1;
        }
    }
    let args = ["scan", "--field", "3^1", "--degree", "2", "--samples", "2000", "--seed", "8"];
    let a = fqvar(&args);
    let b = fqvar(&[&args[..], &["--jobs", "1"]].concat());
    ensure!(a == b, "repeated scan differs");
    Ok(format!("{configs} configurations of 10^4 samples, {achievers} achievers all classified, repeat run identical"))
}

/// Every point of the line through `p` and `w` is a zero of `x`.
fn line_inside(x: &Hypersurface, p: &[Elem], w: &[Elem]) -> bool {
    let field = x.field();
    x.poly().eval(w) == 0
        && field.elements().all(|t| {
            let v: Vec<Elem> = p.iter().zip(w).map(|(&a, &b)| field.add(a, field.mul(t, b))).collect();
            x.poly().eval(&v) == 0
        })
}

fn criterion_9() -> Check {
    let mut cases: Vec<(String, Hypersurface)> = vec![("Hermitian/F4".into(), hermitian(None, &f(2, 2), 3).unwrap())];
    for (p, s) in [(2u32, 1u32), (3, 1), (2, 2), (5, 1)] {
        cases.push((format!("hyperbolic/F{}", p.pow(s)), hyperbolic_quadric(&f(p, s)).unwrap()));
    }
    for p in [2, 3] {
        cases.push((format!("space-filling/F{p}"), space_filling_surface(&f(p, 1)).unwrap()));
    }
    for (name, x) in &cases {
        let c = covered_by_lines(x).map_err(|e| e.to_string())?;
        ensure!(c.covered && c.uncovered.is_empty(), "{name} is not covered");
        ensure!(c.witnesses.len() as u64 == count_points(x), "{name}: witnesses do not cover every point");
        for (p, w) in &c.witnesses {
            ensure!(x.poly().eval(p.coords()) == 0, "{name}: witness base point off the surface");
            ensure!(p.coords() != w.coords(), "{name}: degenerate witness");
            ensure!(line_inside(x, p.coords(), w.coords()), "{name}: witness line leaves the surface");
        }
    }
    Ok(format!("{} surfaces covered, every witness line checked", cases.len()))
}

fn criterion_10() -> Check {
    for (p, s) in [(2, 1), (3, 1), (2, 2)] {
        let field = f(p, s);
        let c = corollary_surfaces(&field).map_err(|e| e.to_string())?;
        let mut all = vec![c.space_filling, c.hyperbolic];
        all.extend(c.hermitian);
        for x in &all {
            ensure!(singular_points(x, 2).unwrap().is_empty(), "{} over F_{} is singular", x.render(), field.q());
        }
    }
    let cone = hermitian_cone(&f(2, 2), 3).unwrap();
    ensure!(singular_points(&cone, 1).unwrap().count_at(1).unwrap_or(0) > 0, "Hermitian cone has no rational singular point");

    let f2 = f(2, 1);
    let mut pencils = 0;
    for code in 0u32..1024 {
        let a: Vec<Elem> = (0..5).map(|i| (code >> i) & 1).collect();
        let b: Vec<Elem> = (5..10).map(|i| (code >> i) & 1).collect();
        let Ok(qp) = quadric_pencil(&a, &b, &f2) else { continue };
        ensure!(
            singular_points(&qp.hypersurface, 1).unwrap().count_at(1).unwrap_or(0) > 0,
            "pencil a = {a:?}, b = {b:?} over F2 has no rational singular point"
        );
        pencils += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (field, size, trials) in [(f(3, 1), 5, 200), (f(2, 2), 5, 200), (f(3, 1), 6, 50), (f(2, 1), 6, 50)] {
        let mut done = 0;
        while done < trials {
            let a: Vec<Elem> = (0..size).map(|_| rng.gen_range(0..field.q())).collect();
            let b: Vec<Elem> = (0..size).map(|_| rng.gen_range(0..field.q())).collect();
            let Ok(qp) = quadric_pencil(&a, &b, &field) else { continue };
            done += 1;
            ensure!(
                singular_points(&qp.hypersurface, 1).unwrap().count_at(1).unwrap_or(0) > 0,
                "pencil a = {a:?}, b = {b:?} over F_{} has no rational singular point",
                field.q()
            );
        }
        pencils += trials;
    }
    Ok(format!("corollary surfaces nonsingular, cone and {pencils} pencils in P^4, P^5 singular"))
}

fn proportional_oracle(a: &MultiPoly, b: &MultiPoly) -> bool {
    // Ratio fixed by one term, then checked on every monomial of both.
    let field = a.field();
    let Some((e, ca)) = a.terms().next() else { return b.is_zero() };
    let cb = b.coeff(e);
    if cb == 0 {
        return false;
    }
    let r = field.div(cb, ca).unwrap();
    a.terms().all(|(e, c)| b.coeff(e) == field.mul(r, c)) && b.terms().all(|(e, c)| field.mul(r, a.coeff(e)) == c)
}

fn check_equivalent(x: &Hypersurface, y: &Hypersurface, v: &EquivalenceVerdict) -> Result<(), String> {
    match v {
        EquivalenceVerdict::Equivalent { witness, .. } => {
            ensure!(verify_witness(x, y, witness).is_some(), "witness rejected by verify_witness");
            let moved = x.poly().linear_change(witness).unwrap();
            ensure!(proportional_oracle(&moved, y.poly()), "F(Mx) is not proportional to G");
            Ok(())
        }
        other => Err(format!("expected Equivalent, got {other:?}")),
    }
}

fn criterion_11() -> Check {
    let f4 = f(2, 2);
    let opts = SearchOptions { budget: DEFAULT_BUDGET, seed: 11 };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = gamma_curve(&f4).unwrap();
    for _ in 0..20 {
        let m = random_invertible(&f4, 3, &mut rng);
        let gm = g.linear_change(&m).unwrap();
        let v = pgl_search(&g, &gm, opts).map_err(|e| e.to_string())?;
        check_equivalent(&g, &gm, &v)?;
    }

    let h = hermitian(None, &f4, 3).unwrap();
    let mut impostors: Vec<Hypersurface> = Vec::new();
    for _ in 0..100_000 {
        let y = Hypersurface::new(random_form(&f4, 4, 3, &mut rng)).unwrap();
        if count_points(&y) == 45 {
            impostors.push(y);
        }
    }
    let found = impostors.len();
    for _ in 0..5 {
        let m = random_invertible(&f4, 4, &mut rng);
        impostors.push(h.linear_change(&m).unwrap());
    }
    let (mut eq, mut ineq) = (0, 0);
    for y in &impostors {
        let v = pgl_search(&h, y, opts).map_err(|e| e.to_string())?;
        match &v {
            EquivalenceVerdict::Inconclusive { .. } => return Err(format!("inconclusive against {}", y.render())),
            EquivalenceVerdict::Equivalent { .. } => {
                check_equivalent(&h, y, &v)?;
                eq += 1;
            }
            EquivalenceVerdict::Inequivalent { .. } => ineq += 1,
        }
    }
    Ok(format!(
        "20 Gamma orbits certified; {found} count-45 cubics in 10^5 samples, {} impostors resolved ({eq} equivalent, {ineq} inequivalent)",
        impostors.len()
    ))
}

fn criterion_12() -> Check {
    for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (17, 1), (19, 1), (23, 1), (5, 2), (3, 3), (29, 1), (31, 1), (2, 5), (37, 1), (41, 1), (43, 1), (7, 2), (47, 1), (53, 1), (59, 1), (61, 1), (2, 6)] {
        let fl = f(p, s);
        let q = fl.q();
        for a in 0..q {
            ensure!(fl.add(a, fl.neg(a)) == 0, "F_{q}: additive inverse at {a}");
            ensure!(a == 0 || fl.mul(a, fl.inv(a).unwrap()) == 1, "F_{q}: inverse at {a}");
            for b in 0..q {
                ensure!(fl.add(a, b) == fl.add(b, a) && fl.mul(a, b) == fl.mul(b, a), "F_{q}: commutativity");
                for c in 0..q {
                    ensure!(fl.add(fl.add(a, b), c) == fl.add(a, fl.add(b, c)), "F_{q}: additive associativity");
                    ensure!(fl.mul(fl.mul(a, b), c) == fl.mul(a, fl.mul(b, c)), "F_{q}: associativity");
                    ensure!(fl.mul(a, fl.add(b, c)) == fl.add(fl.mul(a, b), fl.mul(a, c)), "F_{q}: distributivity");
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let fields = [f(2, 1), f(3, 1), f(2, 2), f(5, 1), f(3, 2)];
    let mut cases = 0;
    for field in &fields {
        for d in 1..=4u32 {
            for _ in 0..10 {
                let p = random_form(field, 4, d, &mut rng);

                let mut euler = MultiPoly::zero(field, 4);
                for (i, g) in p.gradient().iter().enumerate() {
                    euler = euler.add(&MultiPoly::var(field, 4, i).mul(g).unwrap()).unwrap();
                }
                ensure!(euler == p.scale(field.from_int(d as i64)), "Euler identity fails for {}", p.render());

                let text = p.render();
                let back = MultiPoly::parse(&text, field, 4).map_err(|e| e.to_string())?;
                ensure!(back == p && back.render() == text, "round trip fails for {text}");

                let x = Hypersurface::new(p).unwrap();
                let n = count_points(&x);
                ensure!(n == brute_count(&x), "count disagrees with brute force for {text}");
                let m = random_invertible(field, 4, &mut rng);
                ensure!(count_points(&x.linear_change(&m).unwrap()) == n, "count not invariant for {text}");

                let space = PointSpace::new(field, 3);
                let s = loop {
                    let a = space.point(rng.gen_range(0..space.len()));
                    let b = space.point(rng.gen_range(0..space.len()));
                    if let Ok(s) = LinearSubspace::span(field, 3, &[a, b]) {
                        if s.dim() == 1 {
                            break s;
                        }
                    }
                };
                let on_s = s.points(field).iter().filter(|v| x.poly().eval(v) == 0).count() as u64;
                let total: u64 =
                    hyperplanes_through(&s, field, 3).iter().map(|h| section(&x, h).unwrap().count(field, 3)).sum();
                ensure!(n == total - field.q() as u64 * on_s, "pencil decomposition fails for {text}");
                cases += 1;
            }
        }
    }
    Ok(format!("field axioms for 27 fields up to 64, {cases} random forms through 4 identities"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, criterion_1, Duration::from_millis(1)),
        (2, criterion_2, Duration::from_millis(10)),
        (3, criterion_3, Duration::from_secs(1)),
        (4, criterion_4, Duration::from_secs(1)),
        (5, criterion_5, Duration::from_secs(5)),
        (6, criterion_6, Duration::from_secs(30)),
        (7, criterion_7, Duration::from_secs(60)),
        (8, criterion_8, Duration::from_secs(600)),
        (9, criterion_9, Duration::from_secs(30)),
        (10, criterion_10, Duration::from_secs(10)),
        (11, criterion_11, Duration::from_secs(300)),
        (12, criterion_12, Duration::from_secs(60)),
    ];
    // Build the small fields up front so table construction is not timed.
    for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        make_field(p, s).unwrap();
    }
    let mut failed = 0;
    for (id, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {id}: PASS ({elapsed:.2?}) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id}: FAIL ({elapsed:.2?}) {why}");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
