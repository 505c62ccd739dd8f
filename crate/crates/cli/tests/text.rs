use cotame::text::{fmt_endo, fmt_factored, fmt_poly, parse_automorphism, parse_poly, AutoInput};
use cotame::{CliError, ParseError};
use cotame_core::{BasicFactor, Endo, FactoredAuto, Field, Matrix, Poly, Scalar};
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    vec![Field::rationals(), Field::prime(5).unwrap(), Field::finite(4).unwrap(), Field::finite(9).unwrap()]
}

fn scalar(f: &Field, num: i64, den: i64, digits: &[u32]) -> Scalar {
    match f.order() {
        None => f.rational(num, den.max(1)).unwrap(),
        Some(_) => {
            let p = f.characteristic();
            let k = f.extension_degree() as usize;
            let d: Vec<u32> = digits.iter().take(k).map(|v| v % p).collect();
            f.from_digits(&d).unwrap()
        }
    }
}

type TermSeed = (i64, i64, Vec<u32>, Vec<u32>);

fn term_seeds(n: usize) -> impl Strategy<Value = Vec<TermSeed>> {
    prop::collection::vec((-6i64..=6, 1i64..=4, prop::collection::vec(0u32..9, 2), prop::collection::vec(0u32..4, n)), 0..5)
}

/// Polynomial over `f` in `n` variables using only `x_1..x_k`.
fn poly(f: &Field, n: usize, k: usize, seeds: &[TermSeed]) -> Poly {
    let mut p = Poly::zero(f, n);
    for (num, den, digits, ex) in seeds {
        let mut e = vec![0u32; n];
        e[..k].copy_from_slice(&ex[..k]);
        p = p.add(&Poly::monomial(f, scalar(f, *num, *den, digits), e));
    }
    p
}

#[test]
fn example_map_parses() {
    let AutoInput::Expanded(e) = parse_automorphism("[Q,3] (x1+2, x2+x1^2, x3-x1^2+x1*x2^4)", None).unwrap() else {
        panic!("expected an expanded map");
    };
    let f = Field::rationals();
    let x = |i| Poly::var(&f, 3, i);
    let want = Endo::new(
        &f,
        vec![
            x(0).add(&Poly::constant(&f, 3, f.from_i64(2))),
            x(1).add(&x(0).pow(2)),
            x(2).sub(&x(0).pow(2)).add(&x(0).mul(&x(1).pow(4))),
        ],
    )
    .unwrap();
    assert_eq!(e, want);
    assert_eq!(e.vector_degree().unwrap().0, vec![0, 2, 5]);
}

#[test]
fn linear_map_over_f4_parses() {
    let AutoInput::Expanded(e) = parse_automorphism("[F4,2] (x1+t*x2, x2)", None).unwrap() else {
        panic!("expected an expanded map");
    };
    let f = Field::finite(4).unwrap();
    assert_eq!(e.field(), &f);
    let (m, b) = e.as_affine().unwrap();
    assert!(b.iter().all(|c| f.is_zero(c)));
    let t = f.generator().unwrap();
    let want = Matrix::from_rows(&f, vec![vec![f.one(), t], vec![f.zero(), f.one()]]).unwrap();
    assert_eq!(m, want);
}

#[test]
fn unterminated_tuple_reports_position() {
    match parse_automorphism("(x1,", None) {
        Err(CliError::Parse(ParseError { line, col, .. })) => {
            assert_eq!(line, 1);
            assert_eq!(col, 5);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn header_arity_is_checked() {
    match parse_automorphism("[Q,3] (x1, x2)", None) {
        Err(CliError::Arity { expected: 3, found: 2 }) => {}
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn garbage_is_rejected() {
    for s in ["(x1, x2 +)", "[Q,2] (x1, x2", "[F6,2] (x1, x2)", "(x1, x2/x1)", "[Q,2] E(3; x1)", "(x1, x2^)"] {
        assert!(parse_automorphism(s, None).is_err(), "{s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomials_round_trip(fi in 0usize..4, seeds in term_seeds(3)) {
        let f = fields().swap_remove(fi);
        let p = poly(&f, 3, 3, &seeds);
        let s = fmt_poly(&p);
        let back = parse_poly(&s, &f, 3).unwrap();
        prop_assert_eq!(&back, &p, "{}", s);
        prop_assert_eq!(fmt_poly(&back), s);
    }

    #[test]
    fn endomorphisms_round_trip(fi in 0usize..4, a in term_seeds(2), b in term_seeds(2)) {
        let f = fields().swap_remove(fi);
        let e = Endo::new(&f, vec![poly(&f, 2, 2, &a), poly(&f, 2, 2, &b)]).unwrap();
        let s = fmt_endo(&e);
        let AutoInput::Expanded(back) = parse_automorphism(&s, None).unwrap() else {
            panic!("expected an expanded map");
        };
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(fmt_endo(&back), s);
    }

    #[test]
    fn words_round_trip(
        fi in 0usize..4,
        entries in prop::collection::vec((-3i64..=3, 1i64..=2, prop::collection::vec(0u32..9, 2)), 2),
        tail in term_seeds(3),
        signs in any::<bool>(),
        exps in prop::collection::vec(prop::sample::select(vec![1i8, -1]), 4),
    ) {
        let f = fields().swap_remove(fi);
        let n = 3;
        let a = scalar(&f, entries[0].0, entries[0].1, &entries[0].2);
        let b = scalar(&f, entries[1].0, entries[1].1, &entries[1].2);
        let m = Matrix::from_rows(
            &f,
            vec![vec![f.one(), a.clone(), f.zero()], vec![f.zero(), f.one(), f.zero()], vec![b.clone(), f.zero(), f.one()]],
        )
        .unwrap();
        let sign = if signs { f.neg(&f.one()) } else { f.one() };
        let mut el = poly(&f, n, 2, &tail);
        if el.is_zero() {
            el = Poly::var(&f, n, 0);
        }
        let word = vec![
            (BasicFactor::Linear(m), exps[0]),
            (BasicFactor::Translation(vec![a, f.zero(), b]), exps[1]),
            (BasicFactor::Elementary { i: 2, f: el }, exps[2]),
            (BasicFactor::signed_permutation(&f, vec![1, 0, 2], vec![sign.clone(), sign, f.one()]).unwrap(), exps[3]),
        ];
        let w = FactoredAuto::from_word(&f, n, word).unwrap();
        let s = fmt_factored(&w);
        let AutoInput::Factored(back) = parse_automorphism(&s, None).unwrap() else {
            panic!("expected a factored word");
        };
        prop_assert_eq!(fmt_factored(&back), s.clone());
        prop_assert_eq!(back.expand().unwrap(), w.expand().unwrap(), "{}", s);
    }
}
