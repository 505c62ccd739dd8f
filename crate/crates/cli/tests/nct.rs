use cotame::corpus::{certification_corpus, van_den_essen, DEFAULT_SEED};
use cotame::text::parse_automorphism;
use cotame::verify::verify_text;
use cotame::{nct, CliError};
use cotame_core::cert::{verify_certificate, Certificate, Claim, Item, NodeRef, Seed, Step, Verdict};
use cotame_core::{BasicFactor, Endo, FactoredAuto, Field, Matrix, Poly};
use cotame_engine::cotame::certify_normally_cotame;
use cotame_engine::slin::slin_from_elementary;

fn q() -> Field {
    Field::rationals()
}

fn translation_x1(f: &Field, n: usize) -> FactoredAuto {
    let mut b = vec![f.zero(); n];
    b[0] = f.one();
    FactoredAuto::from_factor(f, BasicFactor::Translation(b))
}

fn dilation(f: &Field, b: i64) -> FactoredAuto {
    let b = f.from_i64(b);
    let m = Matrix::diagonal(f, &[b.clone(), f.inv(&b).unwrap()]);
    FactoredAuto::from_factor(f, BasicFactor::Linear(m))
}

fn cert(seed: FactoredAuto, items: Vec<Item>, claimed: Endo) -> Certificate {
    Certificate {
        field: q(),
        n: 2,
        claim: Claim::Cotame,
        seeds: vec![Seed { label: "theta".into(), map: seed }],
        steps: vec![Step { label: "s1".into(), items, claimed, form: None, notes: vec![] }],
        terminal: NodeRef::Step(0),
        meta: vec![],
    }
}

/// `θ⁻¹ · g⁻¹ θ g` for `θ = ε_{1,1}`; with `g = δ⁻¹` this is `ε_{1,b-1}`.
fn commutator_cert(g: FactoredAuto) -> Certificate {
    let f = q();
    let theta = translation_x1(&f, 2);
    let value = theta.expand().unwrap();
    let items = vec![
        Item { conjugator: None, base: NodeRef::Seed(0), exponent: -1 },
        Item { conjugator: Some(g), base: NodeRef::Seed(0), exponent: 1 },
    ];
    cert(theta, items, value)
}

fn round_trip(c: &Certificate) {
    let text = nct::serialize(c);
    let back = nct::parse(&text).unwrap();
    assert_eq!(&back, c);
    assert_eq!(nct::serialize(&back), text);
    assert_eq!(verify_certificate(&back), verify_certificate(c));
}

#[test]
fn single_seed_certificate_passes() {
    let f = q();
    let theta = translation_x1(&f, 2);
    let c = cert(theta.clone(), vec![Item { conjugator: None, base: NodeRef::Seed(0), exponent: 1 }], theta.expand().unwrap());
    assert_eq!(verify_certificate(&c).verdict, Verdict::Pass);
    round_trip(&c);
}

#[test]
fn dilation_commutator_certificate_passes() {
    let c = commutator_cert(dilation(&q(), 2).inverse());
    assert_eq!(verify_certificate(&c).verdict, Verdict::Pass, "{}", verify_certificate(&c));
    round_trip(&c);
}

#[test]
fn nonspecial_conjugator_fails() {
    let f = q();
    let m = Matrix::diagonal(&f, &[f.from_i64(2), f.one()]);
    let c = commutator_cert(FactoredAuto::from_factor(&f, BasicFactor::Linear(m)));
    let r = verify_certificate(&c);
    assert_eq!(r.verdict, Verdict::Fail);
    assert!(r.to_string().contains("SpecialityViolation"), "{r}");
}

#[test]
fn engine_certificates_round_trip() {
    let f4 = Field::finite(4).unwrap();
    let t = f4.generator().unwrap();
    let slin = slin_from_elementary(&f4, 1, &Poly::var(&f4, 3, 0).pow(3).scale(&t)).unwrap();
    round_trip(&slin);

    let exp = certify_normally_cotame(&van_den_essen(&q()).unwrap()).unwrap();
    assert!(exp.steps.iter().any(|s| s.form.is_some()));
    round_trip(&exp);

    let corpus = certification_corpus(DEFAULT_SEED).unwrap();
    let four = corpus.iter().find(|e| e.name.starts_with("word-6")).unwrap();
    let c = certify_normally_cotame(&four.input).unwrap();
    assert_eq!(c.meta_value("m"), Some("4"));
    round_trip(&c);
    assert_eq!(verify_text(&nct::serialize(&c), None).verdict, Verdict::Pass);
}

#[test]
fn truncations_are_parse_errors() {
    let c = certify_normally_cotame(&parse_automorphism("[Q,2] E(2; x1^2)", None).unwrap().to_factored().unwrap()).unwrap();
    let text = nct::serialize(&c);
    let lines: Vec<&str> = text.lines().collect();
    for cut in 1..lines.len() {
        let head = lines[..cut].join("\n");
        match nct::parse(&head) {
            Err(CliError::Parse(e)) => assert!(e.line >= 1 && e.col >= 1, "{e}"),
            other => panic!("cut at {cut}: unexpected {other:?}"),
        }
        assert_eq!(verify_text(&head, None).verdict, Verdict::Fail);
    }
}

#[test]
fn malformed_lines_report_their_position() {
    let c = commutator_cert(dilation(&q(), 2));
    let text: String = nct::serialize(&c)
        .lines()
        .map(|l| if l.starts_with("VALUE") { "VALUE (x1+1, x2 +)\n".to_string() } else { format!("{l}\n") })
        .collect();
    match nct::parse(&text) {
        Err(CliError::Parse(e)) => {
            let want = text.lines().position(|l| l.starts_with("VALUE")).unwrap() + 1;
            assert_eq!(e.line, want, "{e}");
        }
        other => panic!("unexpected {other:?}"),
    }
    let unknown = nct::serialize(&c).replace("ITEM -1 theta", "ITEM -1 nowhere");
    assert!(nct::parse(&unknown).is_err());
    let trailing = format!("{}TERMINAL s1\n", nct::serialize(&c));
    assert!(nct::parse(&trailing).is_err());
}
