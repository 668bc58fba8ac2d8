use milnor_core::arith::ext::SimpleExtension;
use milnor_core::arith::factor::poly_factor;
use milnor_core::arith::ff::{FfElem, FiniteField};
use milnor_core::arith::field::Field;
use milnor_core::arith::poly::{Poly, PolyRing};
use milnor_core::arith::ratfunc::{RatFunc, RationalFunctionField};
use milnor_core::bass_tate::*;
use milnor_core::localk::k1_value;
use milnor_core::symbols::MilnorClass;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fqt(q: u64) -> Fqt {
    RationalFunctionField::new(FiniteField::of_order(q).unwrap())
}

fn random_irreducible(k: &Fqt, d: usize, rng: &mut ChaCha8Rng) -> Poly<RatFunc<FfElem>> {
    let ring = PolyRing::new(k.clone());
    loop {
        let mut c: Vec<_> = (0..d).map(|_| random_ratfunc(k, 2, rng)).collect();
        c.push(k.one());
        let p = ring.from_coeffs(c);
        if fqt_is_irreducible(k, &p).unwrap() {
            return p;
        }
    }
}

fn random_ext_elem(ext: &SimpleExtension<Fqt>, rng: &mut ChaCha8Rng) -> milnor_core::arith::ext::ExtElem<RatFunc<FfElem>> {
    let k = ext.base();
    loop {
        let c: Vec<_> = (0..ext.degree()).map(|_| random_ratfunc(k, 2, rng)).collect();
        let e = ext.reduce(&ext.poly_ring().from_coeffs(c));
        if !ext.is_zero(&e) {
            return e;
        }
    }
}

/// Tame symbol at a monic irreducible `P` straight from the definition,
/// with valuations read off a factorization.
fn oracle_residue(k: &Fqt, p: &Poly<FfElem>, a: &RatFunc<FfElem>, b: &RatFunc<FfElem>) -> Poly<FfElem> {
    let ring = k.poly_ring();
    let val = |x: &RatFunc<FfElem>| {
        let count = |f: &Poly<FfElem>| {
            poly_factor(ring, f)
                .unwrap()
                .factors
                .iter()
                .find(|(g, _)| ring.equal(g, p))
                .map_or(0i64, |(_, m)| *m as i64)
        };
        count(&x.num) - count(&x.den)
    };
    let (va, vb) = (val(a), val(b));
    let ext = SimpleExtension::new(k.base().clone(), p.clone());
    let pi = k.from_poly(p);
    let unit = |x: &RatFunc<FfElem>, v: i64| {
        let u = k.mul(x, &k.pow_signed(&pi, -v).unwrap());
        ext.mul(&ext.reduce(&u.num), &ext.inv(&ext.reduce(&u.den)).unwrap())
    };
    let (ua, ub) = (unit(a, va), unit(b, vb));
    let mut r = ext.div(&ext.pow_signed(&ub, va).unwrap(), &ext.pow_signed(&ua, vb).unwrap()).unwrap();
    if (va * vb) % 2 != 0 {
        r = ext.neg(&r);
    }
    r.0
}

#[test]
fn residues_match_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [3, 5] {
        let k = fqt(q);
        let ring = k.poly_ring().clone();
        for _ in 0..30 {
            let a = random_ratfunc(&k, 3, &mut rng);
            let b = random_ratfunc(&k, 3, &mut rng);
            let v = residue_vector(&k, &MilnorClass::symbol(&k, vec![a.clone(), b.clone()]).unwrap()).unwrap();
            let mut support: Vec<Poly<FfElem>> = Vec::new();
            for f in [&a.num, &a.den, &b.num, &b.den] {
                if f.degree().unwrap() > 0 {
                    for (g, _) in poly_factor(&ring, f).unwrap().factors {
                        if !support.iter().any(|s| ring.equal(s, &g)) {
                            support.push(g);
                        }
                    }
                }
            }
            for p in &support {
                let expect = oracle_residue(&k, p, &a, &b);
                let got = v.get(&Place::Finite(p.clone())).map_or(ring.one(), |e| e.0.clone());
                assert!(ring.equal(&got, &expect));
            }
            assert!(v.entries().all(|(pl, _)| match pl {
                Place::Finite(p) => support.iter().any(|s| ring.equal(s, p)),
                Place::Infinity => true,
            }));
            assert!(reciprocity_check(&v));
        }
    }
}

#[test]
fn section_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for q in [3, 5, 4] {
        let k = fqt(q);
        for _ in 0..20 {
            let x = random_class(&k, 2, 2, 3, &mut rng);
            let v = residue_vector(&k, &x).unwrap();
            let s = bt_section_full(&k, &v).unwrap();
            assert_eq!(residue_vector(&k, &s).unwrap(), v);
        }
    }
}

#[test]
fn k1_norm_is_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let k = fqt(3);
    for d in 1..=3 {
        for _ in 0..5 {
            let pi = random_irreducible(&k, d, &mut rng);
            let ext = SimpleExtension::new(k.clone(), pi.clone());
            let g = random_ext_elem(&ext, &mut rng);
            let n = norm(&k, &pi, &MilnorClass::symbol(&ext, vec![g.clone()]).unwrap()).unwrap();
            assert!(k.equal(&k1_value(&n).unwrap(), &ext.norm(&g)));
        }
    }
}

#[test]
fn projection_formula_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for q in [3, 5] {
        let k = fqt(q);
        for _ in 0..6 {
            let d = rng.gen_range(1..=2);
            let pi = random_irreducible(&k, d, &mut rng);
            let ext = SimpleExtension::new(k.clone(), pi.clone());
            let x = MilnorClass::symbol(&k, vec![random_ratfunc(&k, 2, &mut rng)]).unwrap();
            let y = MilnorClass::symbol(&ext, vec![random_ext_elem(&ext, &mut rng)]).unwrap();
            assert!(projection_formula_check(&k, &pi, &x, &y).unwrap());
        }
    }
}

#[test]
fn towers_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let k = fqt(3);
    let ring = PolyRing::new(k.clone());
    let mut done = 0;
    while done < 4 {
        let d1 = rng.gen_range(1..=2);
        let pi1 = random_irreducible(&k, d1, &mut rng);
        let ext1 = SimpleExtension::new(k.clone(), pi1.clone());
        let r1 = PolyRing::new(ext1.clone());
        let d2 = rng.gen_range(1..=(4 / d1));
        let mut c: Vec<_> = (0..d2).map(|_| random_ext_elem(&ext1, &mut rng)).collect();
        c.push(ext1.one());
        let pi2 = r1.from_coeffs(c);
        let h = ring.from_coeffs((0..d1 * d2).map(|_| random_ratfunc(&k, 1, &mut rng)).collect());
        match functoriality_check(&k, &pi1, &pi2, &h) {
            Ok(c) => {
                assert!(c.holds);
                done += 1;
            }
            Err(milnor_core::Error::EliminationFailed(_)) | Err(milnor_core::Error::ZeroInput) => {}
            Err(e) => panic!("{e}"),
        }
    }
}
