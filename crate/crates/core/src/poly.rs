//! Sparse multivariate polynomials over a finite field.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with the largest monomial first, so two polynomials
//! are equal exactly when their term maps are equal and rendering is stable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};
use crate::linalg::Matrix;

/// Exponent vector, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    /// Canonical position: higher total degree first, then lexicographically
    /// larger exponent vectors first (so `x0` precedes `x1`).
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct MultiPoly {
    field: Arc<Field>,
    nvars: usize,
    terms: BTreeMap<Monomial, Elem>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[F_{}; {}]({})", self.field.q(), self.nvars, self.render())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// One term of the JSON polynomial form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: Elem,
    pub exp: Vec<u32>,
}

impl MultiPoly {
    pub fn zero(field: &Arc<Field>, nvars: usize) -> Self {
        MultiPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Arc<Field>, nvars: usize, c: Elem) -> Self {
        Self::from_terms(field, nvars, [(vec![0; nvars], c)])
    }

    pub fn var(field: &Arc<Field>, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(field, nvars, [(e, 1)])
    }

    /// The linear form `sum_i coeffs[i] * x_i`.
    pub fn linear_form(field: &Arc<Field>, coeffs: &[Elem]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            field,
            n,
            coeffs.iter().enumerate().map(|(i, &c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c)
            }),
        )
    }

    /// Sums coefficients of repeated exponent vectors and drops zeros.
    pub fn from_terms<I>(field: &Arc<Field>, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Elem)>,
    {
        let mut acc: HashMap<Vec<u32>, Elem> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length must equal nvars");
            let slot = acc.entry(e).or_insert(0);
            *slot = field.add(*slot, c);
        }
        let terms = acc.into_iter().filter(|&(_, c)| c != 0).map(|(e, c)| (Monomial(e), c)).collect();
        MultiPoly { field: field.clone(), nvars, terms }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Elem)> {
        self.terms.iter().map(|(m, &c)| (m.0.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Elem {
        self.terms.get(&Monomial(exps.to_vec())).copied().unwrap_or(0)
    }

    /// Largest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Common degree of all terms; `None` if zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    /// Leading term in canonical order.
    pub fn leading(&self) -> Option<(&[u32], Elem)> {
        self.terms().next()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::from_terms(&self.field, self.nvars, self.owned_terms().chain(other.owned_terms())))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, c: Elem) -> Self {
        let f = &self.field;
        Self::from_terms(f, self.nvars, self.terms().map(|(e, a)| (e.to_vec(), f.mul(a, c))))
    }

    fn owned_terms(&self) -> impl Iterator<Item = (Vec<u32>, Elem)> + '_ {
        self.terms().map(|(e, c)| (e.to_vec(), c))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut acc: HashMap<Vec<u32>, Elem> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let slot = acc.entry(e).or_insert(0);
                *slot = f.add(*slot, f.mul(ca, cb));
            }
        }
        Self::from_terms(f, self.nvars, acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(&self.field, self.nvars, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn evaluate(&self, coords: &[Elem]) -> Result<Elem> {
        if coords.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: coords.len() });
        }
        Ok(self.eval(coords))
    }

    /// Evaluation without the length check.
    pub fn eval(&self, coords: &[Elem]) -> Elem {
        let f = &self.field;
        self.terms().fold(0, |acc, (e, c)| {
            let t = e.iter().zip(coords).fold(c, |t, (&k, &x)| f.mul(t, f.pow(x, k as u64)));
            f.add(acc, t)
        })
    }

    /// Formal partial derivative; exponents are reduced mod p in the coefficient.
    pub fn partial_derivative(&self, i: usize) -> Self {
        let f = &self.field;
        Self::from_terms(
            f,
            self.nvars,
            self.terms().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
                let mut e2 = e.to_vec();
                let k = e2[i];
                e2[i] -= 1;
                (e2, f.mul(c, f.from_int(k as i64)))
            }),
        )
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.partial_derivative(i)).collect()
    }

    /// Substitutes `x_i -> sum_j images[i][j] * y_j` into a ring with
    /// `target_nvars` variables.
    pub fn substitute_linear(&self, images: &[Vec<Elem>], target_nvars: usize) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: images.len() });
        }
        if let Some(bad) = images.iter().find(|r| r.len() != target_nvars) {
            return Err(Error::DimensionMismatch { expected: target_nvars, got: bad.len() });
        }
        let f = &self.field;
        let mut max_exp = vec![0u32; self.nvars];
        for (e, _) in self.terms() {
            for (m, &k) in max_exp.iter_mut().zip(e) {
                *m = (*m).max(k);
            }
        }
        let powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .zip(&max_exp)
            .map(|(row, &m)| {
                let l = MultiPoly::linear_form(f, row);
                let mut ps = vec![MultiPoly::constant(f, target_nvars, 1)];
                for k in 1..=m as usize {
                    let next = ps[k - 1].mul_unchecked(&l);
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut acc: HashMap<Vec<u32>, Elem> = HashMap::new();
        for (e, c) in self.terms() {
            let mut t = MultiPoly::constant(f, target_nvars, c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul_unchecked(&powers[i][k as usize]);
                    if t.is_zero() {
                        break;
                    }
                }
            }
            for (e2, c2) in t.terms() {
                let slot = acc.entry(e2.to_vec()).or_insert(0);
                *slot = f.add(*slot, c2);
            }
        }
        Ok(Self::from_terms(f, target_nvars, acc))
    }

    /// `F∘M`: substitutes `x_i -> sum_j M[i][j] x_j` for invertible `M`.
    pub fn linear_change(&self, m: &Matrix) -> Result<Self> {
        if m.rows != self.nvars || m.cols != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: m.rows });
        }
        if !m.is_invertible(&self.field) {
            return Err(Error::SingularMatrix);
        }
        self.substitute_linear(&m.row_vecs(), self.nvars)
    }

    /// The binary form `F(u*p0 + v*p1)`.
    pub fn restrict_to_line(&self, p0: &[Elem], p1: &[Elem]) -> Result<BinaryForm> {
        for p in [p0, p1] {
            if p.len() != self.nvars {
                return Err(Error::DimensionMismatch { expected: self.nvars, got: p.len() });
            }
        }
        let f = &self.field;
        if Matrix::from_rows(&[p0.to_vec(), p1.to_vec()])?.rank(f) < 2 {
            return Err(Error::DependentPoints);
        }
        let d = self.homogeneous_degree().unwrap_or(0);
        let images: Vec<Vec<Elem>> = p0.iter().zip(p1).map(|(&a, &b)| vec![a, b]).collect();
        let g = self.substitute_linear(&images, 2)?;
        let mut coeffs = vec![0; d as usize + 1];
        for (e, c) in g.terms() {
            coeffs[e[1] as usize] = c;
        }
        Ok(BinaryForm { field: f.clone(), coeffs })
    }

    /// Exact division by the linear form `sum_i l[i] x_i`, or `None` when it
    /// is not a factor.
    pub fn divides_linear(&self, l: &[Elem]) -> Result<Option<MultiPoly>> {
        if l.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: l.len() });
        }
        let f = &self.field;
        let Some(k) = l.iter().position(|&c| c != 0) else {
            return Err(Error::ZeroForm);
        };
        let lk_inv = f.inv(l[k])?;
        let unit: Vec<Elem> = l.iter().map(|&c| f.mul(c, lk_inv)).collect();
        // y = M^{-1} x with y_k = unit(x), y_i = x_i otherwise; x = M y.
        let n = self.nvars;
        let forward: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                if i == k {
                    (0..n).map(|j| if j == k { 1 } else { f.neg(unit[j]) }).collect()
                } else {
                    (0..n).map(|j| u32::from(j == i)).collect()
                }
            })
            .collect();
        let g = self.substitute_linear(&forward, n)?;
        if g.terms().any(|(e, _)| e[k] == 0) {
            return Ok(None);
        }
        let shifted = MultiPoly::from_terms(
            f,
            n,
            g.terms().map(|(e, c)| {
                let mut e2 = e.to_vec();
                e2[k] -= 1;
                (e2, c)
            }),
        );
        let back: Vec<Vec<Elem>> = (0..n)
            .map(|i| if i == k { unit.clone() } else { (0..n).map(|j| u32::from(j == i)).collect() })
            .collect();
        let quotient = shifted.substitute_linear(&back, n)?.scale(lk_inv);
        let check = MultiPoly::linear_form(f, l).mul_unchecked(&quotient);
        debug_assert_eq!(&check, self);
        Ok((&check == self).then_some(quotient))
    }

    /// `G` with `G^p = F` when every exponent of `F` is divisible by `p`.
    pub fn pth_power_root(&self) -> Option<MultiPoly> {
        let f = &self.field;
        let p = f.p();
        if self.is_zero() || self.terms().any(|(e, _)| e.iter().any(|&k| k % p != 0)) {
            return None;
        }
        let g = MultiPoly::from_terms(
            f,
            self.nvars,
            self.terms().map(|(e, c)| (e.iter().map(|&k| k / p).collect(), f.frobenius(c, f.s() - 1))),
        );
        (g.pow(p) == *self).then_some(g)
    }

    /// Applies `c -> c^(p^t)` to every coefficient.
    pub fn frobenius_coeffs(&self, t: u32) -> Self {
        let f = &self.field;
        Self::from_terms(f, self.nvars, self.terms().map(|(e, c)| (e.to_vec(), f.frobenius(c, t))))
    }

    /// The same polynomial with coefficients pushed through a field embedding.
    pub fn embed(&self, e: &Embedding) -> Result<Self> {
        if **e.small() != *self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_terms(e.big(), self.nvars, self.terms().map(|(x, c)| (x.to_vec(), e.apply(c)))))
    }

    /// Drops variable `i`, which must not occur.
    pub fn drop_variable(&self, i: usize) -> Option<Self> {
        if self.terms().any(|(e, _)| e[i] != 0) {
            return None;
        }
        Some(Self::from_terms(
            &self.field,
            self.nvars - 1,
            self.terms().map(|(e, c)| {
                let mut e2 = e.to_vec();
                e2.remove(i);
                (e2, c)
            }),
        ))
    }

    /// Regards the polynomial in a ring with `extra` further variables.
    pub fn extend_vars(&self, extra: usize) -> Self {
        Self::from_terms(
            &self.field,
            self.nvars + extra,
            self.terms().map(|(e, c)| {
                let mut e2 = e.to_vec();
                e2.resize(self.nvars + extra, 0);
                (e2, c)
            }),
        )
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| {
                let mut factors = Vec::new();
                let is_const = e.iter().all(|&k| k == 0);
                if c != 1 || is_const {
                    factors.push(c.to_string());
                }
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => factors.push(format!("x{i}")),
                        _ => factors.push(format!("x{i}^{k}")),
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }

    pub fn parse(text: &str, field: &Arc<Field>, nvars: usize) -> Result<Self> {
        Parser { src: text.as_bytes(), pos: 0, field, nvars }.parse()
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms().map(|(e, c)| TermJson { coeff: c, exp: e.to_vec() }).collect()
    }

    pub fn from_json(terms: &[TermJson], field: &Arc<Field>, nvars: usize) -> Result<Self> {
        for t in terms {
            field.check(t.coeff)?;
            if t.exp.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: t.exp.len() });
            }
        }
        Ok(Self::from_terms(field, nvars, terms.iter().map(|t| (t.exp.clone(), t.coeff))))
    }

    /// Normalizes so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) if c != 1 => self.scale(self.field.inv(c).expect("nonzero")),
            _ => self.clone(),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Arc<Field>,
    nvars: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: "number too large".into() })
    }

    fn parse(mut self) -> Result<MultiPoly> {
        let f = self.field.clone();
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return Err(self.err("empty polynomial")),
            _ => false,
        };
        loop {
            let (e, c) = self.term()?;
            terms.push((e, if sign { f.neg(c) } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => sign = false,
                Some(b'-') => sign = true,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            self.pos += 1;
        }
        Ok(MultiPoly::from_terms(&f, self.nvars, terms))
    }

    fn term(&mut self) -> Result<(Vec<u32>, Elem)> {
        let f = self.field;
        let mut exps = vec![0u32; self.nvars];
        let mut coeff: Elem = 1;
        loop {
            match self.peek() {
                Some(b'x') | Some(b'X') => {
                    self.pos += 1;
                    let i = self.number()? as usize;
                    if i >= self.nvars {
                        return Err(Error::VariableIndexOutOfRange { index: i, nvars: self.nvars });
                    }
                    let k = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.number()?
                    } else {
                        1
                    };
                    exps[i] = exps[i]
                        .checked_add(u32::try_from(k).map_err(|_| self.err("exponent too large"))?)
                        .ok_or_else(|| self.err("exponent too large"))?;
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    let n = self.number()?;
                    if n >= f.q() as u64 {
                        return Err(Error::Syntax {
                            pos: start,
                            msg: format!("coefficient code {n} out of range for F_{}", f.q()),
                        });
                    }
                    coeff = f.mul(coeff, n as Elem);
                }
                _ => return Err(self.err("expected a coefficient or a variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((exps, coeff));
            }
        }
    }
}

/// Binary form `sum_j coeffs[j] * u^(d-j) * v^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    field: Arc<Field>,
    pub coeffs: Vec<Elem>,
}

impl BinaryForm {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, u: Elem, v: Elem) -> Elem {
        let f = &self.field;
        let d = self.degree() as u64;
        self.coeffs.iter().enumerate().fold(0, |acc, (j, &c)| {
            let t = f.mul(c, f.mul(f.pow(u, d - j as u64), f.pow(v, j as u64)));
            f.add(acc, t)
        })
    }

    /// Multiplicity of the root `(u0 : v0)`, i.e. the largest `m` with
    /// `(v0*u - u0*v)^m` dividing the form. `None` for the zero form.
    pub fn root_multiplicity(&self, u0: Elem, v0: Elem) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let f = &self.field;
        // Move the root to (1:0) by a change of variables, then count the
        // trailing zero coefficients of the `u^(d-j) v^j` expansion.
        let (a, b) = if u0 != 0 { (u0, v0) } else { (0, 1) };
        let images = if u0 != 0 {
            // u = a*s, v = b*s + t  (root (a:b) <-> (1:0))
            vec![vec![a, 0], vec![b, 1]]
        } else {
            // u = t, v = s
            vec![vec![0, 1], vec![1, 0]]
        };
        let d = self.degree();
        let poly = MultiPoly::from_terms(
            f,
            2,
            self.coeffs.iter().enumerate().map(|(j, &c)| (vec![(d - j) as u32, j as u32], c)),
        );
        let g = poly.substitute_linear(&images, 2).ok()?;
        let min_t = g.terms().map(|(e, _)| e[1]).min().unwrap_or(0);
        Some(min_t as usize)
    }

    /// Rational roots `(u:v)` in canonical form with their multiplicities.
    pub fn rational_roots(&self) -> Vec<((Elem, Elem), usize)> {
        let f = &self.field;
        let mut out = Vec::new();
        for b in f.elements() {
            if let Some(m) = self.root_multiplicity(1, b).filter(|&m| m > 0) {
                out.push(((1, b), m));
            }
        }
        if let Some(m) = self.root_multiplicity(0, 1).filter(|&m| m > 0) {
            out.push(((0, 1), m));
        }
        out
    }
}

/// A homogeneous form defining `X ⊂ P^N`, with `N = nvars - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypersurface {
    poly: MultiPoly,
    degree: u32,
}

impl Hypersurface {
    pub fn new(poly: MultiPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroForm);
        }
        let degree = poly.homogeneous_degree().ok_or(Error::InhomogeneousWhereRequired)?;
        if poly.nvars() < 2 {
            return Err(Error::UnsupportedDimension(poly.nvars().saturating_sub(1)));
        }
        Ok(Hypersurface { poly, degree })
    }

    pub fn parse(text: &str, field: &Arc<Field>, nvars: usize) -> Result<Self> {
        Self::new(MultiPoly::parse(text, field, nvars)?)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn field(&self) -> &Arc<Field> {
        self.poly.field()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `N` for `X ⊂ P^N`.
    pub fn ambient(&self) -> usize {
        self.poly.nvars() - 1
    }

    /// Projective dimension `n = N - 1`.
    pub fn dimension(&self) -> usize {
        self.ambient() - 1
    }

    pub fn linear_change(&self, m: &Matrix) -> Result<Self> {
        Self::new(self.poly.linear_change(m)?)
    }

    pub fn render(&self) -> String {
        self.poly.render()
    }
}

/// Point evaluator with precompiled terms.
///
/// Each term stores the discrete log of its coefficient and its nonzero
/// exponents; evaluation sums `g^(log c + sum e_i log x_i)`.
#[derive(Debug, Clone)]
pub struct Evaluator {
    field: Arc<Field>,
    nvars: usize,
    terms: Vec<(u64, Vec<(usize, u64)>)>,
}

impl Evaluator {
    pub fn new(poly: &MultiPoly) -> Self {
        let f = poly.field();
        let terms = poly
            .terms()
            .map(|(e, c)| {
                let vars = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (i, k as u64)).collect();
                (f.log(c).expect("stored coefficients are nonzero") as u64, vars)
            })
            .collect();
        Evaluator { field: f.clone(), nvars: poly.nvars(), terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Evaluates at a point given by the discrete logs of its coordinates
    /// (`None` for zero coordinates).
    #[inline]
    pub fn eval_logs(&self, logs: &[Option<u32>]) -> Elem {
        let f = &*self.field;
        let mut acc = 0;
        'term: for (cl, vars) in &self.terms {
            let mut l = *cl;
            for &(i, k) in vars {
                match logs[i] {
                    Some(x) => l += k * x as u64,
                    None => continue 'term,
                }
            }
            acc = f.add(acc, f.exp(l));
        }
        acc
    }

    #[inline]
    pub fn eval(&self, x: &[Elem], scratch: &mut Vec<Option<u32>>) -> Elem {
        scratch.clear();
        scratch.extend(x.iter().map(|&c| self.field.log(c)));
        self.eval_logs(scratch)
    }
}
