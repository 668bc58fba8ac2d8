//! Factorization over finite fields: square-free decomposition, distinct-degree
//! splitting and Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ff::{prime_factors, FfElem, FiniteField};
use super::field::Field;
use super::poly::{big_pow, Poly, PolyRing};
use crate::error::{Error, Result};

pub type FfPoly = Poly<FfElem>;
pub type FfPolyRing = PolyRing<FiniteField>;

pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed;

/// `f = unit · Π factor^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FfElem,
    pub factors: Vec<(FfPoly, usize)>,
    /// Seed of the splitting generator, recorded for reproducibility.
    pub seed: u64,
}

/// Ordering key: degree, then coefficient codes from the top down.
pub fn poly_key(f: &FfPoly) -> (usize, Vec<u64>) {
    let codes = f.coeffs().iter().rev().map(|c| c.code()).collect();
    (f.coeffs().len(), codes)
}

pub fn poly_factor(ring: &FfPolyRing, f: &FfPoly) -> Result<Factorization> {
    poly_factor_seeded(ring, f, DEFAULT_FACTOR_SEED)
}

pub fn poly_factor_seeded(ring: &FfPolyRing, f: &FfPoly, seed: u64) -> Result<Factorization> {
    let unit = f.lc().cloned().ok_or(Error::ZeroPolynomial)?;
    let monic = ring.monic(f).expect("nonzero leading coefficient");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(FfPoly, usize)> = Vec::new();
    for (part, mult) in squarefree(ring, &monic) {
        for (block, d) in distinct_degree(ring, &part) {
            for g in equal_degree(ring, &block, d, &mut rng) {
                match out.iter_mut().find(|(h, _)| *h == g) {
                    Some((_, m)) => *m += mult,
                    None => out.push((g, mult)),
                }
            }
        }
    }
    out.sort_by_key(|(g, _)| poly_key(g));
    Ok(Factorization {
        unit,
        factors: out,
        seed,
    })
}

/// Monic square-free parts with multiplicities (`f` monic).
pub fn squarefree(ring: &FfPolyRing, f: &FfPoly) -> Vec<(FfPoly, usize)> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let p = ring.field().p() as usize;
    let d = ring.derivative(f);
    if d.is_zero() {
        let root = poly_pth_root(ring, f);
        return squarefree(ring, &root)
            .into_iter()
            .map(|(g, m)| (g, m * p))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = ring.gcd(f, &d);
    let mut w = ring.exact_div(f, &c).unwrap();
    let mut i = 1;
    while !ring.is_one(&w) {
        let y = ring.gcd(&w, &c);
        let fac = ring.exact_div(&w, &y).unwrap();
        if !ring.is_one(&fac) {
            out.push((fac, i));
        }
        i += 1;
        c = ring.exact_div(&c, &y).unwrap();
        w = y;
    }
    if !ring.is_one(&c) {
        let root = poly_pth_root(ring, &c);
        out.extend(squarefree(ring, &root).into_iter().map(|(g, m)| (g, m * p)));
    }
    out
}

/// For `f` with `f' = 0`, the polynomial `g` with `g^p = f`.
fn poly_pth_root(ring: &FfPolyRing, f: &FfPoly) -> FfPoly {
    let field = ring.field();
    let p = field.p() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| field.pth_root(c).unwrap())
        .collect();
    ring.from_coeffs(coeffs)
}

/// Splits a monic square-free polynomial into products of irreducibles of a
/// common degree.
pub fn distinct_degree(ring: &FfPolyRing, f: &FfPoly) -> Vec<(FfPoly, usize)> {
    let q = ring.field().order();
    let x = ring.x();
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = ring.rem(&x, &f).unwrap();
    let mut i = 1;
    while f.degree().unwrap_or(0) >= 2 * i {
        h = ring.pow_mod_u64(&h, q, &f);
        let g = ring.gcd(&f, &ring.sub(&h, &x));
        if !ring.is_one(&g) {
            f = ring.exact_div(&f, &g).unwrap();
            h = ring.rem(&h, &f).unwrap();
            out.push((g, i));
        }
        i += 1;
    }
    if f.degree().unwrap_or(0) > 0 {
        let d = f.degree().unwrap();
        out.push((f, d));
    }
    out
}

fn random_poly(ring: &FfPolyRing, below: usize, rng: &mut ChaCha8Rng) -> FfPoly {
    let field = ring.field();
    let coeffs = (0..below)
        .map(|_| field.from_code(rng.gen_range(0..field.order())).unwrap())
        .collect();
    ring.from_coeffs(coeffs)
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
pub fn equal_degree(ring: &FfPolyRing, f: &FfPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FfPoly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let field = ring.field();
    let q = field.order();
    let odd_exp = (big_pow(q, d) - 1u32) / 2u32;
    loop {
        let a = random_poly(ring, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if field.p() == 2 {
            // Trace of a from F_{q^d} down to F_2.
            let k = field.degree() as usize * d;
            let mut acc = Poly::zero();
            let mut term = a.clone();
            for _ in 0..k {
                acc = ring.add(&acc, &term);
                term = ring.mul_mod(&term, &term, f);
            }
            acc
        } else {
            ring.sub(&ring.pow_mod(&a, &odd_exp, f), &ring.one())
        };
        let g = ring.gcd(f, &b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = ring.exact_div(f, &g).unwrap();
            let mut out = equal_degree(ring, &g, d, rng);
            out.extend(equal_degree(ring, &h, d, rng));
            return out;
        }
    }
}

/// Rabin's test.
pub fn is_irreducible(ring: &FfPolyRing, f: &FfPoly) -> bool {
    let Some(n) = f.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let q = BigUint::from(ring.field().order());
    let x = ring.x();
    let frob = |k: usize| {
        let mut h = ring.rem(&x, f).unwrap();
        for _ in 0..k {
            h = ring.pow_mod(&h, &q, f);
        }
        h
    };
    if !ring.rem(&ring.sub(&frob(n), &x), f).unwrap().is_zero() {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|r| {
        let h = ring.sub(&frob(n / r as usize), &x);
        ring.is_one(&ring.gcd(f, &h))
    })
}

/// Roots in the coefficient field, ascending by code.
pub fn roots(ring: &FfPolyRing, f: &FfPoly) -> Vec<FfElem> {
    let Ok(fac) = poly_factor(ring, f) else {
        return Vec::new();
    };
    let mut out: Vec<FfElem> = fac
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| ring.field().neg(&g.coeffs()[0]))
        .collect();
    out.sort_by_key(|r| r.code());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, f: u32) -> FfPolyRing {
        PolyRing::new(FiniteField::new(p, f).unwrap())
    }

    fn poly(r: &FfPolyRing, desc: &[i64]) -> FfPoly {
        r.from_coeffs_desc(desc.iter().map(|&c| r.field().from_int(c)).collect())
    }

    fn product(r: &FfPolyRing, fac: &Factorization) -> FfPoly {
        let mut acc = r.constant(fac.unit.clone());
        for (g, m) in &fac.factors {
            acc = r.mul(&acc, &r.pow(g, *m as u64));
        }
        acc
    }

    #[test]
    fn x2_plus_x_over_f2() {
        let r = ring(2, 1);
        let fac = poly_factor(&r, &poly(&r, &[1, 1, 0])).unwrap();
        assert_eq!(fac.factors, vec![(poly(&r, &[1, 0]), 1), (poly(&r, &[1, 1]), 1)]);
    }

    #[test]
    fn x2_plus_1_over_f3_is_irreducible() {
        let r = ring(3, 1);
        let f = poly(&r, &[1, 0, 1]);
        // No root by exhaustion.
        assert!(r.field().elements().all(|x| !r.eval(&f, &x).is_zero()));
        let fac = poly_factor(&r, &f).unwrap();
        assert_eq!(fac.factors, vec![(f.clone(), 1)]);
        assert!(is_irreducible(&r, &f));
    }

    #[test]
    fn x3_minus_x_over_f5() {
        let r = ring(5, 1);
        let fac = poly_factor(&r, &poly(&r, &[1, 0, -1, 0])).unwrap();
        let expected = vec![(poly(&r, &[1, 0]), 1), (poly(&r, &[1, 1]), 1), (poly(&r, &[1, 4]), 1)];
        assert_eq!(fac.factors, expected);
    }

    #[test]
    fn multiplicities_and_inseparable_parts() {
        // (X+1)^3 (X^2+X+2)^2 X^4 over F_3: X^3 term is a p-th power.
        let r = ring(3, 1);
        let a = r.pow(&poly(&r, &[1, 1]), 3);
        let b = r.pow(&poly(&r, &[1, 1, 2]), 2);
        let c = r.pow(&r.x(), 4);
        let f = r.scale(&r.field().from_int(2), &r.mul(&r.mul(&a, &b), &c));
        let fac = poly_factor(&r, &f).unwrap();
        assert_eq!(product(&r, &fac), f);
        assert_eq!(
            fac.factors,
            vec![(r.x(), 4), (poly(&r, &[1, 1]), 3), (poly(&r, &[1, 1, 2]), 2)]
        );
    }

    #[test]
    fn characteristic_two_extension_field() {
        let r = ring(2, 2);
        let g = r.field().generator();
        let f = r.mul(
            &r.mul(&r.linear(&g), &r.linear(&r.field().one())),
            &poly(&r, &[1, 1, 1, 1, 1, 1]),
        );
        let fac = poly_factor(&r, &f).unwrap();
        assert_eq!(product(&r, &fac), f);
        for (h, _) in &fac.factors {
            assert!(is_irreducible(&r, h));
        }
    }

    #[test]
    fn count_irreducibles_matches_necklace_formula() {
        // Number of monic irreducible quartics over F_2 is (2^4 - 2^2)/4 = 3.
        let r = ring(2, 1);
        let mut count = 0;
        for code in 0..16u64 {
            let mut c: Vec<FfElem> = (0..4).map(|i| r.field().from_int(((code >> i) & 1) as i64)).collect();
            c.push(r.field().one());
            if is_irreducible(&r, &r.from_coeffs(c)) {
                count += 1;
            }
        }
        assert_eq!(count, 3);
    }

    #[test]
    fn seed_does_not_change_the_output() {
        let r = ring(7, 1);
        let f = poly(&r, &[1, 0, 0, 0, 0, 0, -1, 0]);
        let a = poly_factor_seeded(&r, &f, 1).unwrap();
        let b = poly_factor_seeded(&r, &f, 99).unwrap();
        assert_eq!(a.factors, b.factors);
        assert_eq!(a.factors.len(), 7);
    }
}
