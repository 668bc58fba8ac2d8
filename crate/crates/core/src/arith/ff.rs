//! Finite fields `F_q`, `q = p^f`, with elements stored in discrete-log form.
//!
//! An element is either zero or `g^e` for the context's fixed primitive element
//! `g`. Internally every element also has a *code*: the integer
//! `c_0 + c_1 p + ... + c_{f-1} p^{f-1}` of its coefficient vector in
//! `F_p[X]/(modulus)`. The numeric order on codes is the lexicographic order on
//! coefficient lists written highest degree first, and it is the total order
//! used to pick the modulus and the generator.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::field::Field;
use crate::error::{Error, Result};

/// Default upper bound on `q`.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;
/// Fields up to this size get full exp/log tables.
pub const TABLE_BOUND: u64 = 1 << 16;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits a prime power into `(p, f)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut f = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, f))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
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

// Dense polynomials over F_p, low degree first. Only used to build contexts.
mod fp {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv_lc = inv(m[dm], p);
        while r.len() > dm {
            let k = r.len() - 1 - dm;
            let c = r[r.len() - 1] * inv_lc % p;
            for (i, &mi) in m.iter().enumerate() {
                r[k + i] = (r[k + i] + p - c * mi % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        acc
    }

    /// `h^p mod m`.
    pub fn frobenius(h: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = h.to_vec();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin's irreducibility test for a monic `m` of degree `n`.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let n = m.len() - 1;
        if n == 1 {
            return true;
        }
        let x = rem(&[0, 1], m, p);
        let mut powers = vec![x.clone()];
        let mut h = x.clone();
        for _ in 0..n {
            h = frobenius(&h, m, p);
            powers.push(h.clone());
        }
        if sub(&powers[n], &x, p).iter().any(|&c| c != 0) {
            return false;
        }
        for r in super::prime_factors(n as u64) {
            let k = n / r as usize;
            let d = sub(&powers[k], &x, p);
            let g = gcd(m, &d, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Bsgs {
    step: u64,
    baby: HashMap<u64, u64>,
    giant_factor: u64,
}

struct FfInner {
    p: u64,
    degree: u32,
    order: u64,
    modulus: Vec<u64>,
    generator: u64,
    tables: Option<Tables>,
    bsgs: OnceLock<Bsgs>,
}

/// A finite field context. Cheap to clone.
#[derive(Clone)]
pub struct FiniteField(Arc<FfInner>);

/// Representation of a finite-field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FfRepr {
    Zero,
    /// `generator^e`, `0 <= e <= q - 2`.
    Power(u64),
}

/// An element of a [`FiniteField`].
#[derive(Clone)]
pub struct FfElem {
    field: FiniteField,
    repr: FfRepr,
}

impl FiniteField {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        Self::with_bound(p, f, DEFAULT_FIELD_BOUND)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, f)
    }

    pub fn with_bound(p: u64, f: u32, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::Unsupported("extension degree must be at least 1".into()));
        }
        let order = (p as u128).checked_pow(f).unwrap_or(u128::MAX);
        if order > bound as u128 {
            return Err(Error::FieldTooLarge { order, bound });
        }
        let order = order as u64;
        let modulus = smallest_irreducible(p, f);
        let mut inner = FfInner {
            p,
            degree: f,
            order,
            modulus,
            generator: 0,
            tables: None,
            bsgs: OnceLock::new(),
        };
        inner.generator = smallest_primitive(&inner);
        if order <= TABLE_BOUND {
            let mut exp = Vec::with_capacity(order as usize - 1);
            let mut log = vec![0u32; order as usize];
            let mut c = 1u64;
            for e in 0..order - 1 {
                exp.push(c as u32);
                log[c as usize] = e as u32;
                c = code_mul(&inner, c, inner.generator);
            }
            inner.tables = Some(Tables { exp, log });
        }
        Ok(FiniteField(Arc::new(inner)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Coefficients of the defining modulus over `F_p`, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn generator(&self) -> FfElem {
        self.elem(FfRepr::Power(if self.order() == 2 { 0 } else { 1 }))
    }

    pub fn elem(&self, repr: FfRepr) -> FfElem {
        FfElem {
            field: self.clone(),
            repr,
        }
    }

    pub fn from_exponent(&self, e: i64) -> FfElem {
        let m = (self.order() - 1) as i64;
        self.elem(FfRepr::Power(e.rem_euclid(m) as u64))
    }

    /// Element with the given code (`0 <= code < q`).
    pub fn from_code(&self, code: u64) -> Result<FfElem> {
        if code >= self.order() {
            return Err(Error::Parse(format!("code {code} out of range for F_{}", self.order())));
        }
        Ok(self.elem(self.code_to_repr(code)))
    }

    pub fn code(&self, a: &FfElem) -> u64 {
        match a.repr {
            FfRepr::Zero => 0,
            FfRepr::Power(e) => self.exp_code(e),
        }
    }

    /// Discrete logarithm to the context generator.
    pub fn dlog(&self, a: &FfElem) -> Option<u64> {
        match a.repr {
            FfRepr::Zero => None,
            FfRepr::Power(e) => Some(e),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FfElem> + '_ {
        (0..self.order()).map(move |c| self.elem(self.code_to_repr(c)))
    }

    pub fn same_field(&self, other: &FiniteField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p() == other.p() && self.degree() == other.degree())
    }

    fn exp_code(&self, e: u64) -> u64 {
        match &self.0.tables {
            Some(t) => t.exp[e as usize] as u64,
            None => code_pow(&self.0, self.0.generator, e),
        }
    }

    fn code_to_repr(&self, code: u64) -> FfRepr {
        if code == 0 {
            return FfRepr::Zero;
        }
        match &self.0.tables {
            Some(t) => FfRepr::Power(t.log[code as usize] as u64),
            None => FfRepr::Power(self.bsgs_log(code)),
        }
    }

    fn bsgs_log(&self, code: u64) -> u64 {
        let inner = &self.0;
        let n = inner.order - 1;
        let bs = inner.bsgs.get_or_init(|| {
            let step = (n as f64).sqrt().ceil() as u64;
            let mut baby = HashMap::with_capacity(step as usize);
            let mut c = 1u64;
            for j in 0..step {
                baby.entry(c).or_insert(j);
                c = code_mul(inner, c, inner.generator);
            }
            // g^{-step}
            let giant_factor = code_pow(inner, inner.generator, (n - step % n) % n);
            Bsgs {
                step,
                baby,
                giant_factor,
            }
        });
        let mut gamma = code;
        for i in 0..=bs.step {
            if let Some(&j) = bs.baby.get(&gamma) {
                return (i * bs.step + j) % n;
            }
            gamma = code_mul(inner, gamma, bs.giant_factor);
        }
        unreachable!("generator is primitive, every nonzero code has a logarithm")
    }

    fn digits(&self, code: u64) -> Vec<u64> {
        digits(&self.0, code)
    }
}

fn digits(inner: &FfInner, mut code: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(inner.degree as usize);
    for _ in 0..inner.degree {
        out.push(code % inner.p);
        code /= inner.p;
    }
    out
}

fn undigits(inner: &FfInner, d: &[u64]) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * inner.p + c)
}

fn code_mul(inner: &FfInner, a: u64, b: u64) -> u64 {
    if inner.degree == 1 {
        return a * b % inner.p;
    }
    let r = fp::mul_mod(&digits(inner, a), &digits(inner, b), &inner.modulus, inner.p);
    undigits(inner, &r)
}

fn code_pow(inner: &FfInner, a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a;
    while e > 0 {
        if e & 1 == 1 {
            acc = code_mul(inner, acc, base);
        }
        base = code_mul(inner, base, base);
        e >>= 1;
    }
    acc
}

fn smallest_irreducible(p: u64, f: u32) -> Vec<u64> {
    let count = p.pow(f);
    for code in 0..count {
        let mut m = Vec::with_capacity(f as usize + 1);
        let mut c = code;
        for _ in 0..f {
            m.push(c % p);
            c /= p;
        }
        m.push(1);
        if fp::is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn smallest_primitive(inner: &FfInner) -> u64 {
    let n = inner.order - 1;
    if n == 1 {
        return 1;
    }
    let primes = prime_factors(n);
    (1..inner.order)
        .find(|&c| primes.iter().all(|&r| code_pow(inner, c, n / r) != 1))
        .expect("the multiplicative group of a finite field is cyclic")
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order())
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for FiniteField {}

impl std::hash::Hash for FiniteField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p().hash(state);
        self.degree().hash(state);
    }
}

impl FfElem {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn repr(&self) -> FfRepr {
        self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr == FfRepr::Zero
    }

    pub fn exponent(&self) -> Option<u64> {
        self.field.dlog(self)
    }

    pub fn code(&self) -> u64 {
        self.field.code(self)
    }
}

impl PartialEq for FfElem {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field.same_field(&other.field)
    }
}

impl Eq for FfElem {}

impl std::hash::Hash for FfElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.repr.hash(state);
    }
}

impl fmt::Debug for FfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, d) = (self.field.p(), self.field.degree());
        match self.repr {
            FfRepr::Zero => write!(f, "ff({p},{d}):0"),
            FfRepr::Power(e) => write!(f, "ff({p},{d}):g^{e}"),
        }
    }
}

/// Parses `ff(p,f):g^e` or `ff(p,f):0`.
pub fn parse_ff_elem(s: &str) -> Result<FfElem> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed finite-field element `{s}`"));
    let rest = s.strip_prefix("ff(").ok_or_else(bad)?;
    let (params, value) = rest.split_once("):").ok_or_else(bad)?;
    let (p, d) = params.split_once(',').ok_or_else(bad)?;
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let d: u32 = d.trim().parse().map_err(|_| bad())?;
    let field = FiniteField::new(p, d)?;
    let value = value.trim();
    if value == "0" {
        return Ok(field.zero());
    }
    let e: u64 = value.strip_prefix("g^").ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if e >= field.order() - 1 {
        return Err(bad());
    }
    Ok(field.elem(FfRepr::Power(e)))
}

impl Field for FiniteField {
    type Elem = FfElem;
    const POLY_VAR: &'static str = "t";

    fn zero(&self) -> FfElem {
        self.elem(FfRepr::Zero)
    }

    fn one(&self) -> FfElem {
        self.elem(FfRepr::Power(0))
    }

    fn is_zero(&self, a: &FfElem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        match (a.repr, b.repr) {
            (FfRepr::Zero, _) => b.clone(),
            (_, FfRepr::Zero) => a.clone(),
            _ => {
                let inner = &self.0;
                let (ca, cb) = (self.code(a), self.code(b));
                let code = if inner.degree == 1 {
                    (ca + cb) % inner.p
                } else {
                    let da = digits(inner, ca);
                    let db = digits(inner, cb);
                    let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % inner.p).collect();
                    undigits(inner, &s)
                };
                self.elem(self.code_to_repr(code))
            }
        }
    }

    fn neg(&self, a: &FfElem) -> FfElem {
        match a.repr {
            FfRepr::Zero => a.clone(),
            FfRepr::Power(e) => {
                if self.p() == 2 {
                    a.clone()
                } else {
                    // -1 = g^{(q-1)/2}
                    let n = self.order() - 1;
                    self.elem(FfRepr::Power((e + n / 2) % n))
                }
            }
        }
    }

    fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        match (a.repr, b.repr) {
            (FfRepr::Power(x), FfRepr::Power(y)) => {
                self.elem(FfRepr::Power((x + y) % (self.order() - 1)))
            }
            _ => self.zero(),
        }
    }

    fn inv(&self, a: &FfElem) -> Option<FfElem> {
        match a.repr {
            FfRepr::Zero => None,
            FfRepr::Power(e) => {
                let n = self.order() - 1;
                Some(self.elem(FfRepr::Power((n - e) % n)))
            }
        }
    }

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn from_int(&self, n: i64) -> FfElem {
        let c = n.rem_euclid(self.p() as i64) as u64;
        self.elem(self.code_to_repr(c))
    }

    fn pow(&self, a: &FfElem, e: u128) -> FfElem {
        match a.repr {
            FfRepr::Zero if e == 0 => self.one(),
            FfRepr::Zero => a.clone(),
            FfRepr::Power(x) => {
                let n = (self.order() - 1) as u128;
                self.elem(FfRepr::Power(((x as u128 * (e % n)) % n) as u64))
            }
        }
    }

    fn pth_root(&self, a: &FfElem) -> Option<FfElem> {
        // Frobenius has order f, so its inverse is x -> x^{p^{f-1}}.
        Some(self.pow(a, (self.p() as u128).pow(self.degree() - 1)))
    }

    fn owns(&self, a: &FfElem) -> bool {
        self.same_field(&a.field)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn fmt_coeff(&self, a: &FfElem) -> String {
        self.code(a).to_string()
    }
}

/// Embedding of a smaller finite field into a larger one of the same
/// characteristic, fixed by the image of the small field's `X`.
#[derive(Clone, Debug)]
pub struct FfEmbedding {
    source: FiniteField,
    target: FiniteField,
    image_of_x: FfElem,
}

impl FfEmbedding {
    pub fn new(source: &FiniteField, target: &FiniteField) -> Result<Self> {
        if source.p() != target.p() || !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::ContextMismatch);
        }
        // The smallest root (by code) of the source modulus in the target.
        let modulus: Vec<FfElem> = source.modulus().iter().map(|&c| target.from_int(c as i64)).collect();
        let image_of_x = target
            .elements()
            .find(|x| {
                let mut acc = target.zero();
                for c in modulus.iter().rev() {
                    acc = target.add(&target.mul(&acc, x), c);
                }
                acc.is_zero()
            })
            .ok_or(Error::ContextMismatch)?;
        Ok(FfEmbedding {
            source: source.clone(),
            target: target.clone(),
            image_of_x,
        })
    }

    pub fn apply(&self, a: &FfElem) -> FfElem {
        let t = &self.target;
        let digits = self.source.digits(self.source.code(a));
        let mut acc = t.zero();
        for &c in digits.iter().rev() {
            acc = t.add(&t.mul(&acc, &self.image_of_x), &t.from_int(c as i64));
        }
        acc
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }
}
