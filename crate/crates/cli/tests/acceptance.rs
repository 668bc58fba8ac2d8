//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use milnor_core::arith::{Field, FiniteField, LocalFieldCtx, Poly, PolyRing, RatFunc, RationalFunctionField, SimpleExtension};
use milnor_core::arith::{ExtElem, FfElem};
use milnor_core::bass_tate::{
    bt_section_full, fqt_is_irreducible, functoriality_check, linear_norm_check, projection_formula_check, random_class,
    random_ratfunc, reciprocity_check, residue_vector, Fqt,
};
use milnor_core::localk::{
    certify_divisible, divisibility_witness, hilbert, lift_mod_m, qf_oracle, reduce_mod_m, verify_certificate,
    HilbertValue,
};
use milnor_core::rational_ring::{base_change_roundtrip, delta_kernel_check, BaseChange, RationalRing, ResidueValue};
use milnor_core::symbols::{ff_kgroup, MilnorClass};
use milnor_core::Error;
use milnor_forge::gersten::gersten_check;
use milnor_forge::Report;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn random_unit_symbol(ctx: &LocalFieldCtx, degree: usize, rng: &mut ChaCha8Rng) -> Result<MilnorClass<LocalFieldCtx>, String> {
    e2s(MilnorClass::symbol(ctx, (0..degree).map(|_| ctx.random_unit(rng)).collect()))
}

// 1. ff_kgroup(q, n) = 0 for n = 2, 3 and Z/(q-1) for n = 1
fn finite_field_vanishing() -> Outcome {
    let orders = [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16];
    for q in orders {
        for n in [2, 3] {
            let g = e2s(ff_kgroup(q, n))?;
            ensure(g.invariant_factors().is_empty(), || format!("K_{n}(F_{q}) = {:?}", g.invariant_factors()))?;
        }
        let g = e2s(ff_kgroup(q, 1))?;
        let got: Vec<String> = g.invariant_factors().iter().map(|d| d.to_string()).collect();
        // Z/1 is the trivial group
        let want: Vec<String> = if q == 2 { vec![] } else { vec![(q - 1).to_string()] };
        ensure(got == want, || format!("K_1(F_{q}) = {got:?}, expected Z/{}", q - 1))?;
    }
    Ok(format!("{} orders, n = 1, 2, 3", orders.len()))
}

// 2. Hilbert table over Q_2 against the quadratic form oracle at 2^8
fn hilbert_table() -> Outcome {
    let reps = [1i64, -1, 2, -2, 5, -5, 10, -10];
    let ctx = e2s(LocalFieldCtx::padic(2, 16))?;
    let h = |a: i64, b: i64| -> Result<u8, String> {
        match e2s(hilbert(&ctx, &ctx.from_int(a), &ctx.from_int(b)))? {
            HilbertValue::Sign(s) => Ok(s),
            other => Err(format!("unexpected value {other} over Q_2")),
        }
    };
    let mut image = BTreeSet::new();
    for a in reps {
        for b in reps {
            let s = h(a, b)?;
            let solvable = e2s(qf_oracle(&ctx, &ctx.from_int(a), &ctx.from_int(b), 8))?;
            ensure((s == 0) == solvable, || format!("({a}, {b}) = {s} but oracle says solvable = {solvable}"))?;
            ensure(s == h(b, a)?, || format!("({a}, {b}) ≠ ({b}, {a})"))?;
            for c in reps {
                ensure(h(a * b, c)? == h(a, c)? ^ h(b, c)?, || format!("not bilinear at ({a}·{b}, {c})"))?;
            }
            image.insert(s);
        }
        if a != 1 {
            ensure(h(a, 1 - a)? == 0, || format!("({a}, {}) ≠ 0", 1 - a))?;
        }
    }
    ensure(image.len() == 2, || format!("image {image:?}"))?;
    Ok("64/64 oracle agreements, symmetric, bilinear, image {0, 1}".into())
}

// 3. reduce∘lift = id and lift∘reduce ≡ id up to certified m-multiples
fn mod_m_isomorphism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut certs = 0;
    for (p, m) in [(5u64, 3u64), (5, 2), (2, 7), (3, 4)] {
        let ctx = e2s(LocalFieldCtx::padic(p, 8))?;
        for i in 0..100 {
            let a = random_unit_symbol(&ctx, 1 + i % 3, &mut rng)?;
            let b = e2s(reduce_mod_m(&ctx, &a, m))?;
            let l = e2s(lift_mod_m(&ctx, &b, m))?;
            let back = e2s(reduce_mod_m(&ctx, &l, m))?;
            ensure(back.sub(&b).is_formally_zero(), || format!("reduce(lift({b})) = {back}"))?;
            let diff = a.sub(&l);
            let cert = e2s(certify_divisible(&ctx, &diff, m))?;
            let v = verify_certificate(&cert);
            ensure(v.ok && cert.divisor == m, || format!("Z_{p}, m = {m}, {a}: {:?}", v.failure))?;
            certs += 1;
        }
    }
    Ok(format!("{certs} certificates verified"))
}

// 4. divisibility witnesses for ℓ ≠ p on degree 2 and 3 unit symbols
fn divisibility_witnesses() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut runs = 0;
    for (spec, ells) in [("padic:5:8", [2u64, 3, 7]), ("padic:2:8", [3, 5, 7]), ("laurent:3:8", [2, 5, 7])] {
        let ctx = e2s(LocalFieldCtx::from_spec(spec))?;
        for ell in ells {
            for degree in [2, 3] {
                for _ in 0..50 {
                    let a = random_unit_symbol(&ctx, degree, &mut rng)?;
                    let cert = divisibility_witness(&ctx, &a, ell).map_err(|e| format!("{spec}, ℓ = {ell}, {a}: {e}"))?;
                    let v = verify_certificate(&cert);
                    ensure(v.ok, || format!("{spec}, ℓ = {ell}, {a}: {:?}", v.failure))?;
                    runs += 1;
                }
            }
        }
    }
    Ok(format!("{runs}/{runs} witnesses verified"))
}

fn random_irreducible(k: &Fqt, d: usize, rng: &mut ChaCha8Rng) -> Result<Poly<RatFunc<FfElem>>, String> {
    let ring = PolyRing::new(k.clone());
    loop {
        let mut c: Vec<_> = (0..d).map(|_| random_ratfunc(k, 2, rng)).collect();
        c.push(k.one());
        let p = ring.from_coeffs(c);
        if e2s(fqt_is_irreducible(k, &p))? {
            return Ok(p);
        }
    }
}

fn random_ext_elem(ext: &SimpleExtension<Fqt>, rng: &mut ChaCha8Rng) -> ExtElem<RatFunc<FfElem>> {
    loop {
        let c: Vec<_> = (0..ext.degree()).map(|_| random_ratfunc(ext.base(), 1, rng)).collect();
        let e = ext.reduce(&ext.poly_ring().from_coeffs(c));
        if !ext.is_zero(&e) {
            return e;
        }
    }
}

// 5. Bass–Tate sequence over F_3(t) and F_5(t)
fn bass_tate() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut proj, mut towers) = (0, 0);
    for q in [3u64, 5] {
        let k: Fqt = RationalFunctionField::new(e2s(FiniteField::of_order(q))?);
        for _ in 0..100 {
            let a = random_class(&k, 2, 2, 2, &mut rng);
            let v = e2s(residue_vector(&k, &a))?;
            ensure(reciprocity_check(&v), || format!("reciprocity fails for {a}"))?;
            let s = e2s(bt_section_full(&k, &v))?;
            let back = e2s(residue_vector(&k, &s))?;
            ensure(back == v, || format!("section of {v} has residues {back}"))?;
        }
        for i in 0..100 {
            let c = random_ratfunc(&k, 2, &mut rng);
            let xi = random_class(&k, 1 + i % 2, 2, 2, &mut rng);
            ensure(e2s(linear_norm_check(&k, &c, &xi))?, || format!("N along X - {} moves {xi}", k.fmt_elem(&c)))?;
        }
        for _ in 0..10 {
            let d = rng.gen_range(1..=4);
            let pi = random_irreducible(&k, d, &mut rng)?;
            let ext = SimpleExtension::new(k.clone(), pi.clone());
            let y = random_ext_elem(&ext, &mut rng);
            let x = e2s(MilnorClass::symbol(&k, vec![random_ratfunc(&k, 2, &mut rng)]))?;
            let y = e2s(MilnorClass::symbol(&ext, vec![y]))?;
            ensure(e2s(projection_formula_check(&k, &pi, &x, &y))?, || format!("projection formula fails for {x}, {y}"))?;
            proj += 1;
        }
        let ring = PolyRing::new(k.clone());
        let mut done = 0;
        while done < 5 {
            let d1 = rng.gen_range(1..=2);
            let pi1 = random_irreducible(&k, d1, &mut rng)?;
            let ext1 = SimpleExtension::new(k.clone(), pi1.clone());
            let d2 = rng.gen_range(1..=(4 / d1));
            let mut c: Vec<_> = (0..d2).map(|_| random_ext_elem(&ext1, &mut rng)).collect();
            c.push(ext1.one());
            let pi2 = PolyRing::new(ext1.clone()).from_coeffs(c);
            let h = ring.from_coeffs((0..d1 * d2).map(|_| random_ratfunc(&k, 1, &mut rng)).collect());
            match functoriality_check(&k, &pi1, &pi2, &h) {
                Ok(r) => {
                    ensure(r.holds, || format!("tower over F_{q}(t) disagrees: {} vs {}", k.fmt_elem(&r.through_tower), k.fmt_elem(&r.direct)))?;
                    done += 1;
                }
                // reducible π₂ or h(θ₂) = 0: not a tower instance, draw again
                Err(Error::EliminationFailed(_)) | Err(Error::ZeroInput) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
        towers += done;
    }
    Ok(format!("200 classes, 200 linear norms, {proj} projection and {towers} tower instances"))
}

// 6. Gersten exactness mod m over F_2((t)) and F_3((t))
fn gersten() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checks = 0;
    for q in [2u64, 3] {
        let ctx = e2s(LocalFieldCtx::laurent(q, 8))?;
        for n in 1..=3 {
            for m in [2u64, 3, 5].into_iter().filter(|&m| m != q) {
                let mut r = Report::new("gersten-check", &ctx.spec(), 6, "");
                gersten_check(&mut r, &ctx, n, m, 50, &mut rng).map_err(|e| e.to_string())?;
                if let Some(f) = r.failures().next() {
                    return Err(format!("F_{q}((t)), n = {n}, m = {m}: {} on {} gave {}", f.property, f.input, f.output));
                }
                checks += r.checks.len();
            }
        }
    }
    Ok(format!("{checks} checks over 12 configurations"))
}

fn random_ring_elem(r: &RationalRing, p: i64, rng: &mut ChaCha8Rng) -> Result<milnor_core::rational_ring::RationalRingElem, String> {
    let poly = |rng: &mut ChaCha8Rng| {
        let c: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-2 * p..=2 * p)).collect();
        (c.iter().any(|x| x % p != 0), c.iter().enumerate().map(|(i, a)| format!("({a})*t^{i}")).collect::<Vec<_>>().join(" + "))
    };
    let num = poly(rng).1;
    loop {
        let (in_s, den) = poly(rng);
        if in_s {
            return e2s(r.parse(&format!("({num})/({den})")));
        }
    }
}

fn univariate(v: ResidueValue) -> Result<RatFunc<FfElem>, String> {
    match v {
        ResidueValue::Univariate(x) => Ok(x),
        ResidueValue::Bivariate(_) => Err("bivariate residue for A(t)".into()),
    }
}

// 7. A(t) is local; base change and the δ-kernel
fn rational_ring() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [3i64, 5] {
        let ctx = e2s(LocalFieldCtx::padic(p as u64, 6))?;
        let r = e2s(RationalRing::new(&ctx, 1))?;
        let ps = r.polys();
        let kt: Fqt = RationalFunctionField::new(ctx.residue_field().clone());
        for _ in 0..500 {
            let (x, y) = (random_ring_elem(&r, p, &mut rng)?, random_ring_elem(&r, p, &mut rng)?);
            ensure(ps.s_member(&ps.mul(&x.num, &y.num)) == (ps.s_member(&x.num) && ps.s_member(&y.num)), || {
                format!("S not multiplicative on {x}, {y}")
            })?;
            let xy = r.mul(&x, &y);
            ensure(r.is_unit(&xy) == (r.is_unit(&x) && r.is_unit(&y)), || format!("units not local on {x}, {y}"))?;
            let (rx, ry) = (univariate(e2s(r.residue_map(&x))?)?, univariate(e2s(r.residue_map(&y))?)?);
            let sum = univariate(e2s(r.residue_map(&r.add(&x, &y)))?)?;
            let prod = univariate(e2s(r.residue_map(&xy))?)?;
            ensure(kt.equal(&sum, &kt.add(&rx, &ry)) && kt.equal(&prod, &kt.mul(&rx, &ry)), || {
                format!("residue map not a ring map on {x}, {y}")
            })?;
        }
    }

    let mut pairs = 0;
    for spec in ["padic:3:4", "padic:5:4", "laurent:2:4"] {
        let ctx = e2s(LocalFieldCtx::from_spec(spec))?;
        let ring = PolyRing::new(ctx.clone());
        let mut done = 0;
        while done < 7 && pairs < 20 {
            let d = rng.gen_range(1..=2);
            let mut c: Vec<_> = (0..d).map(|_| ctx.from_int(rng.gen_range(-9..=9))).collect();
            c.push(ctx.one());
            let pi = ring.from_coeffs(c);
            match BaseChange::new(&ctx, &pi) {
                Err(Error::ResidueReducible) => continue,
                Err(e) => return Err(e.to_string()),
                Ok(_) => {}
            }
            ensure(e2s(base_change_roundtrip(&ctx, &pi, 3, &mut rng))?, || {
                format!("{spec}: base change along {} fails", ring.fmt_var(&pi, "X"))
            })?;
            done += 1;
            pairs += 1;
        }
    }
    ensure(pairs == 20, || format!("only {pairs} base change pairs"))?;

    let (mut yes, mut no) = (0, 0);
    for spec in ["padic:3:5", "padic:5:5", "laurent:3:5"] {
        let ctx = e2s(LocalFieldCtx::from_spec(spec))?;
        let r = e2s(RationalRing::new(&ctx, 1))?;
        let kappa = ctx.residue_field();
        for i in 0..34 {
            if yes < 100 {
                let e = (0..2 + i % 2).map(|_| r.constant(&ctx.random_unit(&mut rng))).collect();
                let s = e2s(MilnorClass::symbol(&r, e))?;
                ensure(e2s(delta_kernel_check(&r, &s))?, || format!("{spec}: constant {s} not in the δ-kernel"))?;
                yes += 1;
            }
            if no < 100 {
                let mut u = ctx.random_unit(&mut rng);
                while kappa.is_one(&e2s(ctx.residue(&u))?) {
                    u = ctx.random_unit(&mut rng);
                }
                let a = ctx.from_int(rng.gen_range(0..9));
                let t = r.add(&r.var(0), &r.constant(&a));
                let s = e2s(MilnorClass::symbol(&r, vec![t, r.constant(&u)]))?;
                ensure(!e2s(delta_kernel_check(&r, &s))?, || format!("{spec}: {s} passed the δ test"))?;
                no += 1;
            }
        }
    }
    Ok(format!("1000 locality checks, {pairs} base changes, δ: {yes} constant in kernel, {no} {{t, u}} detected"))
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { name: "finite-field vanishing", limit: Some(Duration::from_secs(60)), run: finite_field_vanishing },
        Criterion { name: "Hilbert table vs oracle", limit: Some(Duration::from_secs(120)), run: hilbert_table },
        Criterion { name: "mod-m isomorphism", limit: Some(Duration::from_secs(300)), run: mod_m_isomorphism },
        Criterion { name: "divisibility witnesses", limit: None, run: divisibility_witnesses },
        Criterion { name: "Bass-Tate round trip and reciprocity", limit: Some(Duration::from_secs(300)), run: bass_tate },
        Criterion { name: "Gersten exactness", limit: None, run: gersten },
        Criterion { name: "rational-ring locality", limit: Some(Duration::from_secs(60)), run: rational_ring },
    ];
    let results: Vec<(Outcome, Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|c| {
                s.spawn(move || {
                    let start = Instant::now();
                    let out = (c.run)();
                    (out, start.elapsed())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| (Err("panicked".into()), Duration::ZERO)))
            .collect()
    });
    let mut failed = 0;
    for (i, (c, (out, took))) in criteria.iter().zip(results).enumerate() {
        let secs = took.as_secs_f64();
        let line = match out {
            Ok(_) if c.limit.is_some_and(|l| took > l) => {
                Err(format!("took {secs:.1}s, limit {}s", c.limit.unwrap().as_secs()))
            }
            other => other,
        };
        match line {
            Ok(detail) => println!("criterion {}: PASS  {} ({detail}; {secs:.1}s)", i + 1, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {} ({why}; {secs:.1}s)", i + 1, c.name)
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
