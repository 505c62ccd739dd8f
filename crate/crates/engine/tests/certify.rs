use cotame_core::cert::{verify_certificate, Verdict};
use cotame_core::{BasicFactor, FactoredAuto, Field, Matrix, Poly, Scalar};
use cotame_engine::cotame::certify_normally_cotame;
use cotame_engine::error::EngineError;
use cotame_engine::slin::slin_from_elementary;
use proptest::prelude::*;

fn field(k: usize) -> Field {
    match k {
        0 => Field::rationals(),
        1 => Field::prime(5).unwrap(),
        2 => Field::finite(4).unwrap(),
        _ => Field::finite(9).unwrap(),
    }
}

/// Nonzero polynomial in `x_1..x_k` of `n` variables.
fn tail(f: &Field, n: usize, k: usize, terms: &[(i64, Vec<u32>)]) -> Poly {
    let mut p = Poly::zero(f, n);
    for (c, ex) in terms {
        let mut e = vec![0u32; n];
        e[..k].copy_from_slice(&ex[..k]);
        p = p.add(&Poly::monomial(f, f.from_i64(*c), e));
    }
    if p.is_zero() {
        Poly::var(f, n, 0).pow(2)
    } else {
        p
    }
}

fn shear(f: &Field, n: usize, a: i64) -> Matrix {
    let mut rows = vec![vec![f.zero(); n]; n];
    for (i, r) in rows.iter_mut().enumerate() {
        r[i] = f.one();
    }
    rows[0][n - 1] = f.from_i64(a);
    Matrix::from_rows(f, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn conjugated_elementary_maps_certify(
        n in 2usize..=3,
        a in -2i64..=2,
        terms in prop::collection::vec((1i64..=3, prop::collection::vec(0u32..=3, 3)), 1..3),
    ) {
        let f = Field::rationals();
        let m = shear(&f, n, a);
        let el = tail(&f, n, n - 1, &terms);
        let w = FactoredAuto::from_word(
            &f,
            n,
            vec![(BasicFactor::Linear(m.clone()), -1), (BasicFactor::Elementary { i: n - 1, f: el }, 1), (BasicFactor::Linear(m), 1)],
        )
        .unwrap();
        let c = certify_normally_cotame(&w).unwrap();
        let r = verify_certificate(&c);
        prop_assert_eq!(r.verdict, Verdict::Pass, "{}", r);
    }

    #[test]
    fn monomial_elementary_maps_reach_slin(fk in 2usize..4, e2 in 0u32..=4, e1 in 0u32..=3, unit in 1u32..4) {
        let f = field(fk);
        let c: Scalar = f.from_digits(&[unit % f.characteristic(), unit / f.characteristic()]).unwrap();
        prop_assume!(!f.is_zero(&c));
        let mono = Poly::monomial(&f, c, vec![e1, e2, 0]);
        prop_assume!(mono.total_degree() > 0);
        let cert = slin_from_elementary(&f, 2, &mono).unwrap();
        let r = verify_certificate(&cert);
        prop_assert_eq!(r.verdict, Verdict::Pass, "{}", r);
    }
}

#[test]
fn positive_characteristic_is_rejected() {
    let f = Field::prime(5).unwrap();
    let w = FactoredAuto::from_factor(&f, BasicFactor::Elementary { i: 1, f: Poly::var(&f, 2, 0).pow(2) });
    assert_eq!(certify_normally_cotame(&w), Err(EngineError::UnsupportedCharacteristic(5)));
}

#[test]
fn determinant_two_is_rejected() {
    let f = Field::rationals();
    let m = Matrix::diagonal(&f, &[f.from_i64(2), f.one()]);
    let w = FactoredAuto::from_factor(&f, BasicFactor::Linear(m));
    assert!(matches!(certify_normally_cotame(&w), Err(EngineError::NotSpecial)));
}
