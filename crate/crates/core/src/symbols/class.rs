//! Formal integer combinations of symbols `{x_1, …, x_n}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolTerm<E> {
    pub coeff: BigInt,
    pub entries: Vec<E>,
}

/// A class in the tensor algebra of `F^×`, kept as a formal sum. Terms are
/// keyed by the serialization of their entries, which fixes the canonical
/// order; identical entry lists are merged and zero coefficients dropped.
#[derive(Clone)]
pub struct MilnorClass<F: Field> {
    field: F,
    degree: usize,
    terms: BTreeMap<String, SymbolTerm<F::Elem>>,
}

impl<F: Field> fmt::Debug for MilnorClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<F: Field> MilnorClass<F> {
    pub fn zero(field: &F, degree: usize) -> Self {
        MilnorClass {
            field: field.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The integer `k` in degree 0.
    pub fn integer(field: &F, k: impl Into<BigInt>) -> Self {
        let mut c = Self::zero(field, 0);
        c.add_term(k.into(), Vec::new());
        c
    }

    /// `{x_1, …, x_n}` with coefficient 1.
    pub fn symbol(field: &F, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.iter().any(|e| field.is_zero(e)) {
            return Err(Error::ZeroEntry);
        }
        if entries.iter().any(|e| !field.owns(e)) {
            return Err(Error::ContextMismatch);
        }
        let mut c = Self::zero(field, entries.len());
        c.add_term(BigInt::one(), entries);
        Ok(c)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = &SymbolTerm<F::Elem>> {
        self.terms.values()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero as a formal sum (no surviving terms).
    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn key(&self, entries: &[F::Elem]) -> String {
        entries
            .iter()
            .map(|e| self.field.fmt_elem(e))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Adds `coeff · {entries}`. Entries must be nonzero and of the class degree.
    pub fn add_term(&mut self, coeff: BigInt, entries: Vec<F::Elem>) {
        assert_eq!(entries.len(), self.degree, "term degree mismatch");
        if coeff.is_zero() {
            return;
        }
        let key = self.key(&entries);
        match self.terms.get_mut(&key) {
            Some(t) => {
                t.coeff += coeff;
                if t.coeff.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, SymbolTerm { coeff, entries });
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        for t in other.terms() {
            self.add_term(t.coeff.clone(), t.entries.clone());
        }
    }

    /// `self += k · other`.
    pub fn add_scaled(&mut self, k: &BigInt, other: &Self) {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        for t in other.terms() {
            self.add_term(k * &t.coeff, t.entries.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&-BigInt::one(), other);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(&self.field, self.degree);
        out.add_scaled(k, self);
        out
    }

    /// Graded product: concatenation of entry lists, bilinear in the terms.
    pub fn product(&self, other: &Self) -> Result<Self> {
        for t in other.terms() {
            if t.entries.iter().any(|e| !self.field.owns(e)) {
                return Err(Error::ContextMismatch);
            }
        }
        let mut out = Self::zero(&self.field, self.degree + other.degree);
        for a in self.terms() {
            for b in other.terms() {
                let mut e = a.entries.clone();
                e.extend(b.entries.iter().cloned());
                out.add_term(&a.coeff * &b.coeff, e);
            }
        }
        Ok(out)
    }

    /// The single term of a one-term class.
    pub fn single_term(&self) -> Result<&SymbolTerm<F::Elem>> {
        if self.terms.len() != 1 {
            return Err(Error::Unsupported(format!(
                "expected a single-term class, got {} terms",
                self.terms.len()
            )));
        }
        Ok(self.terms.values().next().unwrap())
    }

    /// Maps every entry into another field (a ring homomorphism on units).
    pub fn map_entries<G: Field>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> Result<G::Elem>,
    ) -> Result<MilnorClass<G>> {
        let mut out = MilnorClass::zero(target, self.degree);
        for t in self.terms() {
            let e = t.entries.iter().map(&f).collect::<Result<Vec<_>>>()?;
            if e.iter().any(|x| target.is_zero(x)) {
                return Err(Error::ZeroEntry);
            }
            out.add_term(t.coeff.clone(), e);
        }
        Ok(out)
    }

    /// `deg:n {e1,e2} + 3·{e3,e4} - {e5,e6}`.
    pub fn to_text(&self) -> String {
        let mut s = format!("deg:{}", self.degree);
        if self.terms.is_empty() {
            s.push_str(" 0");
            return s;
        }
        for (idx, (key, t)) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let mag = t.coeff.abs();
            let sign = match (idx, neg) {
                (0, false) => " ",
                (0, true) => " -",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            s.push_str(sign);
            if !mag.is_one() {
                s.push_str(&format!("{mag}·"));
            }
            s.push_str(&format!("{{{key}}}"));
        }
        s
    }
}

impl<F: Field> fmt::Display for MilnorClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Splits on `sep` at bracket depth zero.
pub fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses the text form produced by [`MilnorClass::to_text`]; the `deg:n`
/// header is optional. Entries are read with `parse_entry`.
pub fn parse_class<F: Field>(
    field: &F,
    s: &str,
    parse_entry: &dyn Fn(&str) -> Result<F::Elem>,
) -> Result<MilnorClass<F>> {
    let mut rest = s.trim();
    let mut degree = None;
    if let Some(r) = rest.strip_prefix("deg:") {
        let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        degree = Some(r[..end].parse::<usize>().map_err(|_| Error::Parse(format!("bad degree in `{s}`")))?);
        rest = r[end..].trim();
    }
    let mut terms: Vec<(BigInt, Vec<F::Elem>)> = Vec::new();
    let chars: Vec<(usize, char)> = rest.char_indices().collect();
    let mut i = 0;
    let mut sign = BigInt::one();
    let mut coeff: Option<BigInt> = None;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                sign = BigInt::one();
                i += 1;
            }
            '-' => {
                sign = -sign;
                i += 1;
            }
            '0' if coeff.is_none() && rest[pos..].trim() == "0" => {
                i = chars.len();
            }
            d if d.is_ascii_digit() => {
                let end = rest[pos..].find(|c: char| !c.is_ascii_digit()).map_or(rest.len(), |e| pos + e);
                coeff = Some(rest[pos..end].parse().unwrap());
                while i < chars.len() && chars[i].0 < end {
                    i += 1;
                }
                // optional multiplication sign
                while i < chars.len() && matches!(chars[i].1, '·' | '*' | ' ') {
                    i += 1;
                }
            }
            '{' => {
                let mut depth = 0;
                let mut end = None;
                for &(p, ch) in &chars[i..] {
                    match ch {
                        '{' | '(' | '[' => depth += 1,
                        '}' | ')' | ']' => {
                            depth -= 1;
                            if depth == 0 {
                                end = Some(p);
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                let end = end.ok_or_else(|| Error::Parse(format!("unbalanced braces in `{s}`")))?;
                let inner = rest[pos + 1..end].trim();
                let entries = if inner.is_empty() {
                    Vec::new()
                } else {
                    split_top_level(inner, ',')
                        .into_iter()
                        .map(|e| parse_entry(e.trim()))
                        .collect::<Result<Vec<_>>>()?
                };
                let k = coeff.take().unwrap_or_else(BigInt::one) * &sign;
                terms.push((k, entries));
                sign = BigInt::one();
                while i < chars.len() && chars[i].0 <= end {
                    i += 1;
                }
            }
            _ => return Err(Error::Parse(format!("unexpected `{c}` in class `{s}`"))),
        }
    }
    let degree = match (degree, terms.first()) {
        (Some(d), _) => d,
        (None, Some((_, e))) => e.len(),
        (None, None) => return Err(Error::Parse(format!("empty class `{s}` needs a deg: header"))),
    };
    let mut out = MilnorClass::zero(field, degree);
    for (k, e) in terms {
        if e.len() != degree {
            return Err(Error::Parse(format!("term of degree {} in a degree-{degree} class", e.len())));
        }
        if e.iter().any(|x| field.is_zero(x)) {
            return Err(Error::ZeroEntry);
        }
        out.add_term(k, e);
    }
    Ok(out)
}
