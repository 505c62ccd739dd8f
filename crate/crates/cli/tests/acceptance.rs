//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::collections::BTreeSet;
use std::time::Instant;

use cotame::corpus::{certification_corpus, lamy_przytycki, random_m_triangular, random_sl_matrix, random_special_triangular, van_den_essen, DEFAULT_SEED};
use cotame::identities::run_suite;
use cotame::text::{parse_automorphism, AutoInput};
use cotame::{nct, verify};
use cotame_core::cert::{verify_certificate, Verdict};
use cotame_core::{BasicFactor, Endo, FactoredAuto, Field, Matrix, Poly, Scalar, DEFAULT_DEGREE_CAP};
use cotame_engine::cotame::certify_normally_cotame;
use cotame_engine::error::EngineError;
use cotame_engine::slin::{slin_from_elementary, slin_from_monomial_elementary};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn q() -> Field {
    Field::rationals()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn identity_suite() -> Outcome {
    let results = run_suite(DEFAULT_SEED).map_err(|e| e.to_string())?;
    let expect = [
        ("commutator", "Q", 50),
        ("commutator", "F5", 50),
        ("commutator", "F4", 50),
        ("commutator", "F9", 50),
        ("odd-linear", "Q", 20),
        ("odd-linear", "F5", 20),
        ("char2-linear", "F4", 6),
        ("char2-linear", "F8", 42),
        ("glin", "Q", 50),
        ("glin", "F5", 50),
        ("exp-commutator", "Q", 20),
    ];
    let mut total = 0;
    for (family, field, cases) in expect {
        let r = results
            .iter()
            .find(|r| r.family == family && r.field == field)
            .ok_or_else(|| format!("missing family {family} over {field}"))?;
        ensure(r.cases == cases, || format!("{family} over {field}: {} cases, expected {cases}", r.cases))?;
        ensure(r.passed(), || format!("{r}"))?;
        total += r.cases;
    }
    Ok(format!("{} families, {total} exact equalities", expect.len()))
}

/// Tail degrees read off the expanded components, with `deg 0 = 0`.
fn tail_degrees(e: &Endo) -> Option<Vec<u32>> {
    let n = e.n();
    let mut out = Vec::with_capacity(n);
    for (i, c) in e.comps().iter().enumerate() {
        let mut d = 0;
        for (m, _) in c.terms() {
            let ex = m.exps();
            if ex[i + 1..].iter().any(|&k| k > 0) {
                return None;
            }
            if ex[i] > 0 {
                if m.degree() != 1 {
                    return None;
                }
                continue;
            }
            d = d.max(m.degree());
        }
        out.push(d);
    }
    Some(out)
}

fn vd_descent() -> Outcome {
    let f = q();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 2);
    let mut checked = 0;
    let mut skipped = 0;
    for case in 0..500 {
        let n = rng.gen_range(2..=4);
        let t = random_special_triangular(&f, n, 5, false, &mut rng);
        let b: Vec<Scalar> = (0..n).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect();
        let tau = t.to_endo();
        let vd = tail_degrees(&tau).ok_or("generated map is not triangular")?;
        if vd.iter().all(|&d| d == 0) {
            skipped += 1;
            continue;
        }
        let w = FactoredAuto::from_word(
            &f,
            n,
            vec![(BasicFactor::Triangular(t.clone()), -1), (BasicFactor::Translation(b), 1), (BasicFactor::Triangular(t), 1)],
        )
        .map_err(|e| e.to_string())?;
        let c = w.expand().map_err(|e| e.to_string())?;
        let cvd = tail_degrees(&c).ok_or_else(|| format!("case {case}: conjugate is not triangular"))?;
        ensure(cvd < vd, || format!("case {case}: {cvd:?} is not below {vd:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} strict descents, 0 violations, {skipped} diagonal-affine draws skipped"))
}

fn van_den_essen_tuple() -> Outcome {
    let f = q();
    let shown = "[Q,4] (x1, x2+x1^3, x3-x2*(x1*x3+x2*x4), x4+x1*(x1*x3+x2*x4))";
    let AutoInput::Expanded(expected) = parse_automorphism(shown, None).map_err(|e| e.to_string())? else {
        return Err("displayed tuple did not parse as a tuple".into());
    };
    let got = van_den_essen(&f).map_err(|e| e.to_string())?.expand().map_err(|e| e.to_string())?;
    ensure(got == expected, || "composite differs from the displayed tuple".into())?;
    ensure(got.jacobian_det().is_one(), || "Jacobian determinant is not 1".into())?;
    Ok("tuple matches exactly, Jacobian determinant 1".into())
}

fn corpus() -> Outcome {
    let entries = certification_corpus(DEFAULT_SEED).map_err(|e| e.to_string())?;
    ensure(entries.len() >= 25, || format!("only {} inputs", entries.len()))?;
    for prefix in ["triangular-", "word-", "lamy-przytycki-2", "lamy-przytycki-4", "van-den-essen", "exponential-"] {
        ensure(entries.iter().any(|e| e.name.starts_with(prefix)), || format!("no {prefix} input"))?;
    }
    let mut steps = 0;
    for e in &entries {
        let cert = certify_normally_cotame(&e.input).map_err(|err| format!("{}: {err}", e.name))?;
        let text = nct::serialize(&cert);
        let v = verify::verify_text(&text, Some(DEFAULT_DEGREE_CAP));
        ensure(v.verdict == Verdict::Pass, || format!("{}: {}", e.name, v.report))?;
        steps += cert.steps.len();
    }
    Ok(format!("{} inputs certified and verified ({steps} steps)", entries.len()))
}

fn monomials(n: usize, max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    for i in 1..n {
        let mut next = Vec::new();
        for m in &out {
            let used: u32 = m.iter().sum();
            for e in 1..=max_deg - used {
                let mut m2 = m.clone();
                m2[i] = e;
                next.push(m2);
            }
        }
        out.extend(next);
    }
    out
}

fn slin_coverage() -> Outcome {
    let mut cases = BTreeSet::new();
    let mut count = 0;
    for q in [4, 8, 9] {
        let f = Field::finite(q).map_err(|e| e.to_string())?;
        for n in [2, 3] {
            for a in f.units(0) {
                for m in monomials(n, 6) {
                    let cert = slin_from_monomial_elementary(&f, n, 0, &a, &m).map_err(|e| format!("F{q} n={n} {m:?}: {e}"))?;
                    let target = Endo::elementary(0, &Poly::monomial(&f, a.clone(), m.clone())).map_err(|e| e.to_string())?;
                    ensure(cert.terminal_value() == Some(&target), || format!("F{q} n={n} {m:?}: wrong terminal"))?;
                    let r = verify_certificate(&cert);
                    ensure(r.verdict == Verdict::Pass, || format!("F{q} n={n} {m:?}: {r}"))?;
                    cases.extend(cert.meta_values("case").map(str::to_string));
                    count += 1;
                }
            }
        }
    }
    for c in ["case1", "case2a", "case2b"] {
        ensure(cases.contains(c), || format!("{c} never exercised"))?;
    }
    Ok(format!("{count} fragments verified, cases 1/2a/2b all exercised"))
}

/// Single-character corruptions of `VALUE` lines.
fn mutants(text: &str, limit: usize) -> Vec<String> {
    let mut out = Vec::new();
    let lines: Vec<&str> = text.lines().collect();
    for (li, line) in lines.iter().enumerate() {
        let Some(body) = line.strip_prefix("VALUE ") else { continue };
        for (ci, ch) in body.char_indices() {
            let repl = match ch {
                '0'..='8' => char::from(ch as u8 + 1),
                '9' => '0',
                '+' => '-',
                '-' => '+',
                _ => continue,
            };
            let mut b = body.to_string();
            b.replace_range(ci..ci + 1, &repl.to_string());
            let mut ls: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
            ls[li] = format!("VALUE {b}");
            out.push(ls.join("\n") + "\n");
            if out.len() == limit {
                return out;
            }
        }
    }
    out
}

fn negative_controls() -> Outcome {
    let f = q();
    for m in [1, 3] {
        let w = lamy_przytycki(&f, m).map_err(|e| e.to_string())?;
        let r = certify_normally_cotame(&w);
        ensure(r == Err(EngineError::NotSpecial), || format!("phi_{m}: {r:?}"))?;
    }
    for p in [2, 3, 5, 7] {
        let fp = Field::prime(p).map_err(|e| e.to_string())?;
        let x2 = Poly::var(&fp, 2, 1);
        let r = slin_from_elementary(&fp, 0, &x2.pow(2));
        ensure(matches!(r, Err(EngineError::UnsupportedField(_))), || format!("F{p}: {r:?}"))?;
        let r = slin_from_monomial_elementary(&fp, 2, 0, &fp.one(), &[0, 2]);
        ensure(matches!(r, Err(EngineError::UnsupportedField(_))), || format!("F{p}: {r:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 6);
    let w5 = random_m_triangular(&f, 2, 5, 2, &mut rng).map_err(|e| e.to_string())?;
    let r = certify_normally_cotame(&w5);
    ensure(r == Err(EngineError::UnsupportedM(5)), || format!("m = 5 word: {r:?}"))?;

    let mut texts = Vec::new();
    let AutoInput::Expanded(e) = parse_automorphism("(x1, x2+x1^2)", None).map_err(|e| e.to_string())? else {
        return Err("parse".into());
    };
    let inputs = vec![
        FactoredAuto::from_factor(&f, BasicFactor::Triangular(e.as_triangular().unwrap())),
        lamy_przytycki(&f, 2).map_err(|e| e.to_string())?,
        van_den_essen(&f).map_err(|e| e.to_string())?,
    ];
    for w in &inputs {
        let cert = certify_normally_cotame(w).map_err(|e| e.to_string())?;
        let t = nct::serialize(&cert);
        ensure(verify::verify_text(&t, None).verdict == Verdict::Pass, || "unmutated certificate does not pass".into())?;
        texts.push(t);
    }
    let mut killed = 0;
    let mut total = 0;
    for t in &texts {
        for m in mutants(t, 20) {
            total += 1;
            if verify::verify_text(&m, Some(DEFAULT_DEGREE_CAP)).verdict == Verdict::Fail {
                killed += 1;
            }
        }
    }
    ensure(total >= 20, || format!("only {total} mutants"))?;
    ensure(killed == total, || format!("{killed}/{total} mutants killed"))?;
    Ok(format!("odd m NotSpecial, prime fields UnsupportedField, m = 5 UnsupportedM, {killed}/{total} mutants killed"))
}

fn random_endo(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Endo {
    let comps = (0..n)
        .map(|_| {
            let mut p = Poly::zero(f, n);
            for _ in 0..3 {
                let mut ex = vec![0u32; n];
                for _ in 0..rng.gen_range(0..=2) {
                    ex[rng.gen_range(0..n)] += 1;
                }
                p = p.add(&Poly::monomial(f, f.from_i64(rng.gen_range(-3..=3)), ex));
            }
            p
        })
        .collect();
    Endo::new(f, comps).expect("arity")
}

fn random_structured(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Result<FactoredAuto, String> {
    let mut w = FactoredAuto::identity(f, n);
    match rng.gen_range(0..3) {
        0 => w.push(BasicFactor::Triangular(random_special_triangular(f, n, 3, false, rng)), 1),
        1 => {
            let mut m = random_sl_matrix(f, n, rng);
            m.set(0, 0, f.from_i64(rng.gen_range(1..=3)));
            if f.is_zero(&m.det()) {
                m = Matrix::identity(f, n);
            }
            w.push(BasicFactor::Translation((0..n).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect()), 1);
            w.push(BasicFactor::Linear(m), 1);
        }
        _ => w = random_m_triangular(f, n, 2, 2, rng).map_err(|e| e.to_string())?,
    }
    Ok(w)
}

fn algebra_core() -> Outcome {
    let f = q();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 7);
    for k in 0..300 {
        let n = rng.gen_range(1..=3);
        let (a, b, c) = (random_endo(&f, n, &mut rng), random_endo(&f, n, &mut rng), random_endo(&f, n, &mut rng));
        let left = a.compose(&b).and_then(|ab| ab.compose(&c)).map_err(|e| e.to_string())?;
        let right = b.compose(&c).and_then(|bc| a.compose(&bc)).map_err(|e| e.to_string())?;
        ensure(left == right, || format!("associativity case {k}"))?;
    }
    for k in 0..200 {
        let n = rng.gen_range(2..=3);
        let w = random_structured(&f, n, &mut rng)?;
        let e = w.expand().map_err(|e| e.to_string())?;
        let inv = match e.inverse_structured() {
            Ok(i) => i,
            Err(_) => w.inverse().expand().map_err(|e| e.to_string())?,
        };
        ensure(e.compose(&inv).map_err(|e| e.to_string())?.is_identity(), || format!("inverse case {k}"))?;
        ensure(inv.compose(&e).map_err(|e| e.to_string())?.is_identity(), || format!("inverse case {k} (left)"))?;
    }
    for k in 0..200 {
        let n = rng.gen_range(1..=3);
        let (a, b) = (random_endo(&f, n, &mut rng), random_endo(&f, n, &mut rng));
        let lhs = a.compose(&b).map_err(|e| e.to_string())?.jacobian_det();
        let ja = a.jacobian_det().substitute(b.comps(), None).map_err(|e| e.to_string())?;
        ensure(lhs == ja.mul(&b.jacobian_det()), || format!("chain rule case {k}"))?;
    }
    Ok("300 associativity, 200 inverse, 200 chain-rule cases exact".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("identity suite", identity_suite),
        ("vector-degree descent", vd_descent),
        ("van den Essen tuple", van_den_essen_tuple),
        ("certification corpus", corpus),
        ("finite-field SLIN coverage", slin_coverage),
        ("negative controls", negative_controls),
        ("algebra core properties", algebra_core),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
