//! Finite fields `F_{p^s}` with table-backed arithmetic.
//!
//! Elements are integer codes in `[0, q)`: the base-`p` digits of the code,
//! least significant first, are the coefficients of the residue polynomial
//! modulo the field's defining polynomial. The defining polynomial is the
//! lexicographically smallest monic irreducible of degree `s` when compared
//! constant term first, so codes are stable across runs and machines.
//!
//! Multiplication, inversion and powers go through exp/log tables for a
//! fixed primitive element; addition uses a Zech logarithm table, with fast
//! paths for prime fields and characteristic two.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element code in `[0, q)`.
pub type Elem = u32;

/// Default upper bound on the field order.
pub const DEFAULT_FIELD_CAP: u32 = 1 << 16;

const NO_LOG: u32 = u32::MAX;

pub struct Field {
    p: u32,
    s: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    /// exp[i] = g^i for i in [0, 2(q-1)).
    exp: Vec<Elem>,
    /// log[x] for x != 0; log[0] = NO_LOG.
    log: Vec<u32>,
    /// zech[n] = log(1 + g^n), or NO_LOG when 1 + g^n = 0.
    zech: Vec<u32>,
    neg: Vec<Elem>,
}

/// Serialized form of a field: `{"p":2,"s":2,"modulus":[1,1,1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub s: u32,
    pub modulus: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`.
/// Coefficients are constant term first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = ((r[idx] as u64 + p as u64 - (lead as u64 * mc as u64) % p as u64) % p as u64) as u32;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let s = f.len() - 1;
    if s <= 1 {
        return s == 1;
    }
    for deg in 1..=s / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `s` over `F_p`,
/// comparing coefficient vectors constant term first.
fn smallest_irreducible(p: u32, s: u32) -> Vec<u32> {
    let s = s as usize;
    let mut coeffs = vec![0u32; s];
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // Advance as an odometer whose most significant digit is the constant term.
        let mut i = s;
        loop {
            if i == 0 {
                unreachable!("irreducible polynomials exist in every degree");
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

fn digits(code: u32, p: u32, s: u32) -> Vec<u32> {
    let mut c = code;
    (0..s)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u64, |acc, &x| acc * p as u64 + x as u64) as u32
}

/// Schoolbook arithmetic on digit vectors; only used while building tables.
struct SlowArith<'a> {
    p: u32,
    s: u32,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn add(&self, a: u32, b: u32) -> u32 {
        let da = digits(a, self.p, self.s);
        let db = digits(b, self.p, self.s);
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| ((*x as u64 + *y as u64) % self.p as u64) as u32).collect();
        undigits(&sum, self.p)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let da = digits(a, self.p, self.s);
        let db = digits(b, self.p, self.s);
        let mut prod = vec![0u32; 2 * self.s as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let mut r = poly_rem(&prod, self.modulus, self.p);
        r.resize(self.s as usize, 0);
        undigits(&r, self.p)
    }

    fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
}

impl Field {
    /// Builds `F_{p^s}` without consulting the shared cache.
    pub fn new(p: u32, s: u32, cap: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if s == 0 {
            return Err(Error::InvalidExtensionDegree);
        }
        let order = (p as u128).checked_pow(s).unwrap_or(u128::MAX);
        if order > cap as u128 {
            return Err(Error::FieldTooLarge { order, cap });
        }
        let q = order as u32;
        let modulus = smallest_irreducible(p, s);
        let slow = SlowArith { p, s, modulus: &modulus };

        let n = q - 1;
        let factors = prime_factors(n);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| slow.pow(g, (n / r) as u64) != 1))
            .expect("multiplicative group is cyclic");

        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![NO_LOG; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i as usize] = x;
            exp[(i + n) as usize] = x;
            log[x as usize] = i;
            x = slow.mul(x, generator);
        }
        let zech = (0..n)
            .map(|i| {
                let y = slow.add(1, exp[i as usize]);
                if y == 0 { NO_LOG } else { log[y as usize] }
            })
            .collect();
        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, s).iter().map(|&x| (p - x) % p).collect();
                undigits(&d, p)
            })
            .collect();

        Ok(Field { p, s, q, modulus, generator, exp, log, zech, neg })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn s(&self) -> u32 {
        self.s
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element the exp/log tables are built on.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, s: self.s, modulus: self.modulus.clone() }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    pub fn check(&self, x: Elem) -> Result<Elem> {
        if x < self.q { Ok(x) } else { Err(Error::ElementOutOfRange(x)) }
    }

    /// Discrete log with respect to [`Field::generator`]; `None` for zero.
    #[inline]
    pub fn log(&self, x: Elem) -> Option<u32> {
        match self.log[x as usize] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    /// `g^i` for any `i`.
    #[inline]
    pub fn exp(&self, i: u64) -> Elem {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.s == 1 {
            let r = a + b;
            return if r >= self.p { r - self.p } else { r };
        }
        if self.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.q - 1;
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let d = if lb >= la { lb - la } else { lb + n - la };
        match self.zech[d as usize] {
            NO_LOG => 0,
            z => self.exp[(la + z) as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % n)) % n) as usize]
    }

    /// The embedding of an integer into the prime subfield.
    pub fn from_int(&self, k: i64) -> Elem {
        k.rem_euclid(self.p as i64) as Elem
    }

    /// `x^(p^t)`.
    pub fn frobenius(&self, x: Elem, t: u32) -> Elem {
        let e = (self.p as u64).pow(t % self.s);
        self.pow(x, e)
    }

    /// `sqrt(q) = p^(s/2)`, the conjugation exponent of Hermitian forms.
    pub fn sqrt_order(&self) -> Result<u32> {
        if self.s % 2 == 1 {
            return Err(Error::NotASquare(self.q));
        }
        Ok(self.p.pow(self.s / 2))
    }

    /// Fixed points of `x -> x^sqrt(q)`, i.e. the subfield `F_sqrt(q)`.
    pub fn is_in_subfield(&self, x: Elem, sub_s: u32) -> bool {
        self.pow(x, (self.p as u64).pow(sub_s)) == x
    }
}

type FieldCache = Mutex<HashMap<(u32, u32), Arc<Field>>>;

static FIELD_CACHE: OnceLock<FieldCache> = OnceLock::new();

/// Returns the shared instance of `F_{p^s}` (order at most [`DEFAULT_FIELD_CAP`]).
pub fn make_field(p: u32, s: u32) -> Result<Arc<Field>> {
    make_field_with_cap(p, s, DEFAULT_FIELD_CAP)
}

pub fn make_field_with_cap(p: u32, s: u32, cap: u32) -> Result<Arc<Field>> {
    if !is_prime(p) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    if s == 0 {
        return Err(Error::InvalidExtensionDegree);
    }
    let order = (p as u128).checked_pow(s).unwrap_or(u128::MAX);
    if order > cap as u128 {
        return Err(Error::FieldTooLarge { order, cap });
    }
    let cache = FIELD_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().get(&(p, s)) {
        return Ok(f.clone());
    }
    // Build outside the lock; a racing builder produces an identical field.
    let field = Arc::new(Field::new(p, s, cap)?);
    Ok(cache.lock().entry((p, s)).or_insert(field).clone())
}

/// Field order written as `p^s`, parsed back by [`parse_field_spec`].
pub fn parse_field_spec(text: &str) -> Result<(u32, u32)> {
    let bad = || Error::InvalidArgument(format!("field must be written p^s, got {text:?}"));
    let (p, s) = match text.split_once('^') {
        Some((p, s)) => (p.trim(), s.trim()),
        None => (text.trim(), "1"),
    };
    Ok((p.parse().map_err(|_| bad())?, s.parse().map_err(|_| bad())?))
}

/// Injective ring homomorphism `F_{p^a} -> F_{p^b}` for `a | b`.
#[derive(Debug, Clone)]
pub struct Embedding {
    small: Arc<Field>,
    big: Arc<Field>,
    image: Vec<Elem>,
}

impl Embedding {
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x as usize]
    }

    pub fn small(&self) -> &Arc<Field> {
        &self.small
    }

    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }
}

/// Sends the class of `x` in `small` to the smallest root (by code) of
/// `small.modulus` in `big`.
pub fn embed(small: &Arc<Field>, big: &Arc<Field>) -> Result<Embedding> {
    if small.p != big.p || !big.s.is_multiple_of(small.s) {
        return Err(Error::NotASubfield { small: small.q, big: big.q });
    }
    let eval = |r: Elem| {
        small.modulus.iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, r), c))
    };
    let root = (0..big.q).find(|&r| eval(r) == 0).expect("modulus splits in the extension");
    let p = small.p;
    let image = (0..small.q)
        .map(|code| {
            let mut acc = 0;
            let mut power = 1;
            let mut c = code;
            for _ in 0..small.s {
                acc = big.add(acc, big.mul(c % p, power));
                power = big.mul(power, root);
                c /= p;
            }
            acc
        })
        .collect();
    Ok(Embedding { small: small.clone(), big: big.clone(), image })
}

/// `F_{q^t}` for the field `F_q`, together with the embedding of `F_q` into it.
pub fn extension(field: &Arc<Field>, t: u32) -> Result<(Arc<Field>, Embedding)> {
    if t == 0 {
        return Err(Error::InvalidExtensionDegree);
    }
    let big = make_field(field.p, field.s * t)?;
    let e = embed(field, &big)?;
    Ok((big, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_modulus_is_x2_x_1() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.q(), 4);
    }

    #[test]
    fn f4_modulus_matches_exhaustive_scan() {
        // monic degree-2 polynomials over F2: x^2, x^2+1, x^2+x, x^2+x+1
        let irreducible: Vec<Vec<u32>> = (0..4u32)
            .map(|c| vec![c & 1, c >> 1, 1])
            .filter(|f| (0..2u32).all(|x| (f[0] + f[1] * x + x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn prime_field_modulus_and_arith() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.sub(1, 3), 3);
    }

    #[test]
    fn non_prime_characteristic() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NonPrimeCharacteristic(4));
        assert_eq!(make_field(6, 1).unwrap_err(), Error::NonPrimeCharacteristic(6));
    }

    #[test]
    fn too_large() {
        assert!(matches!(make_field(2, 17), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(make_field_with_cap(3, 3, 16), Err(Error::FieldTooLarge { .. })));
        assert!(make_field(2, 16).is_ok());
    }

    #[test]
    fn f4_mul_alpha_squared() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        for x in 0..4 {
            assert_eq!(f.mul(x, 1), x);
        }
    }

    #[test]
    fn f5_inverse() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.inv(2).unwrap(), 3);
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn frobenius_examples() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.frobenius(2, 1), 3);
        assert_eq!(f4.frobenius(2, 1), f4.pow(2, 2));
        for t in 0..5 {
            assert_eq!(f4.frobenius(0, t), 0);
            assert_eq!(f4.frobenius(1, t), 1);
        }
        let f9 = make_field(3, 2).unwrap();
        for x in f9.elements() {
            assert_eq!(f9.frobenius(f9.frobenius(x, 1), 1), x);
            assert_eq!(f9.frobenius(x, 2), x);
        }
    }

    #[test]
    fn sqrt_orders() {
        assert_eq!(make_field(2, 2).unwrap().sqrt_order().unwrap(), 2);
        assert_eq!(make_field(3, 2).unwrap().sqrt_order().unwrap(), 3);
        assert_eq!(make_field(2, 3).unwrap().sqrt_order(), Err(Error::NotASquare(8)));
    }

    #[test]
    fn embeddings() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let f8 = make_field(2, 3).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let e = embed(&f2, &f4).unwrap();
        assert_eq!((e.apply(0), e.apply(1)), (0, 1));

        let e = embed(&f4, &f16).unwrap();
        let a = e.apply(2);
        assert_eq!(f16.add(f16.add(f16.mul(a, a), a), 1), 0);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(e.apply(f4.mul(x, y)), f16.mul(e.apply(x), e.apply(y)));
                assert_eq!(e.apply(f4.add(x, y)), f16.add(e.apply(x), e.apply(y)));
            }
        }
        assert!(matches!(embed(&f4, &f8), Err(Error::NotASubfield { .. })));
    }

    #[test]
    fn self_embedding_is_identity() {
        for (p, s) in [(2, 2), (3, 2), (2, 3), (5, 1), (7, 2)] {
            let f = make_field(p, s).unwrap();
            let e = embed(&f, &f).unwrap();
            assert!(f.elements().all(|x| e.apply(x) == x));
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (2, 5), (2, 6)] {
            let f = make_field(p, s).unwrap();
            let q = f.q();
            for a in 0..q {
                assert_eq!(f.pow(a, q as u64), a);
                if a != 0 {
                    assert_eq!(f.pow(a, q as u64 - 1), 1);
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
                    assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_add_matches_digitwise_add() {
        for (p, s) in [(3, 2), (5, 2), (3, 3), (7, 2)] {
            let f = make_field(p, s).unwrap();
            let slow = SlowArith { p, s, modulus: f.modulus() };
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), slow.add(a, b));
                    assert_eq!(f.mul(a, b), slow.mul(a, b));
                }
            }
        }
    }

    #[test]
    fn parse_spec() {
        assert_eq!(parse_field_spec("2^2").unwrap(), (2, 2));
        assert_eq!(parse_field_spec("7").unwrap(), (7, 1));
        assert!(parse_field_spec("x^2").is_err());
    }
}
