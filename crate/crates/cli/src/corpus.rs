//! Seeded generators for certification inputs over the rationals.

use cotame_core::{BasicFactor, FactoredAuto, Field, Matrix, Poly, Scalar, TriDerivation, Triangular};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub input: FactoredAuto,
}

fn small(rng: &mut ChaCha8Rng) -> i64 {
    *[-3, -2, -1, 1, 2, 3].choose(rng).expect("nonempty")
}

fn random_scale(field: &Field, rng: &mut ChaCha8Rng) -> Scalar {
    let (num, den) = *[(1, 1), (-1, 1), (2, 1), (1, 2), (-3, 1), (1, 3)].choose(rng).expect("nonempty");
    field.rational(num, den).expect("nonzero denominator")
}

/// Random polynomial in `x_1..x_k` (of `n` variables) with up to `terms` terms of degree `≤ deg`.
pub fn random_poly_below(field: &Field, n: usize, k: usize, deg: u32, terms: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut p = Poly::zero(field, n);
    if k == 0 {
        return Poly::constant(field, n, field.from_i64(rng.gen_range(-3..=3)));
    }
    for _ in 0..terms {
        let mut exps = vec![0u32; n];
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            exps[rng.gen_range(0..k)] += 1;
        }
        p = p.add(&Poly::monomial(field, field.from_i64(small(rng)), exps));
    }
    p
}

/// Special triangular map with tails of degree `≤ deg`; with `nonaffine` some tail has degree `≥ 2`.
pub fn random_special_triangular(field: &Field, n: usize, deg: u32, nonaffine: bool, rng: &mut ChaCha8Rng) -> Triangular {
    loop {
        let mut scales: Vec<Scalar> = (0..n - 1).map(|_| random_scale(field, rng)).collect();
        let prod = scales.iter().fold(field.one(), |a, s| field.mul(&a, s));
        scales.push(field.inv(&prod).expect("unit"));
        let tails: Vec<Poly> = (0..n).map(|i| random_poly_below(field, n, i, deg, 2, rng)).collect();
        if nonaffine && tails.iter().all(|t| t.total_degree() < 2) {
            continue;
        }
        return Triangular::new(field, scales, tails).expect("lower triangular by construction");
    }
}

/// Random `SL_n` matrix that is not lower triangular.
pub fn random_sl_matrix(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut upper = Matrix::identity(field, n);
    upper.set(rng.gen_range(0..n - 1), n - 1, field.from_i64(small(rng)));
    let mut lower = Matrix::identity(field, n);
    let i = rng.gen_range(1..n);
    lower.set(i, rng.gen_range(0..i), field.from_i64(small(rng)));
    upper.mul(&lower)
}

/// `α_0 τ_1 α_1 ⋯ τ_m α_m` with elementary `τ_k` on the last variable.
pub fn random_m_triangular(field: &Field, n: usize, m: usize, deg: u32, rng: &mut ChaCha8Rng) -> Result<FactoredAuto> {
    let mut w = FactoredAuto::identity(field, n);
    w.push(BasicFactor::Linear(random_sl_matrix(field, n, rng)), 1);
    for _ in 0..m {
        let mut exps = vec![0u32; n];
        exps[rng.gen_range(0..n - 1)] = rng.gen_range(2..=deg);
        let f = Poly::monomial(field, field.from_i64(small(rng)), exps);
        w.push(BasicFactor::elementary(n - 1, f)?, 1);
        w.push(BasicFactor::Linear(random_sl_matrix(field, n, rng)), 1);
    }
    Ok(w)
}

/// `σ = (x_2, x_1 + x_2 x_3, x_3)`; returns `σ^m (x_3, x_1, x_2)`.
pub fn lamy_przytycki(field: &Field, m: usize) -> Result<FactoredAuto> {
    let n = 3;
    let x = |i| Poly::var(field, n, i);
    let mut w = FactoredAuto::identity(field, n);
    for _ in 0..m {
        w.push(BasicFactor::elementary(1, x(0).mul(&x(2)))?, 1);
        w.push(BasicFactor::SignedPermutation { perm: vec![1, 0, 2], signs: vec![field.one(); 3] }, 1);
    }
    w.push(BasicFactor::SignedPermutation { perm: vec![2, 0, 1], signs: vec![field.one(); 3] }, 1);
    Ok(w)
}

/// `D = -x_2 ∂_3 + x_1 ∂_4` on four variables.
pub fn van_den_essen_derivation(field: &Field) -> Result<TriDerivation> {
    let n = 4;
    let z = Poly::zero(field, n);
    Ok(TriDerivation::new(field, vec![z.clone(), z, Poly::var(field, n, 1).neg(), Poly::var(field, n, 0)])?)
}

/// `(x_1, x_2 + x_1³, x_3, x_4) · exp((x_1x_3 + x_2x_4) D)`.
pub fn van_den_essen(field: &Field) -> Result<FactoredAuto> {
    let n = 4;
    let x = |i| Poly::var(field, n, i);
    let f = x(0).mul(&x(2)).add(&x(1).mul(&x(3)));
    let d = van_den_essen_derivation(field)?;
    FactoredAuto::from_word(
        field,
        n,
        vec![(BasicFactor::elementary(1, x(0).pow(3))?, 1), (BasicFactor::Exp { f, d }, 1)],
    )
    .map_err(Into::into)
}

/// `D = -x_1 ∂_2 + 2x_2 ∂_3` with kernel element `r(x_1)(x_1x_3 + x_2²)`.
fn nagata_pair(field: &Field, rng: &mut ChaCha8Rng) -> Result<(Poly, TriDerivation)> {
    let n = 3;
    let x = |i| Poly::var(field, n, i);
    let d = TriDerivation::new(field, vec![Poly::zero(field, n), x(0).neg(), x(1).scale(&field.from_i64(2))])?;
    let g = x(0).mul(&x(2)).add(&x(1).pow(2));
    let mut r = Poly::zero(field, n);
    while r.is_zero() {
        r = random_poly_below(field, n, 1, 1, 2, rng);
    }
    Ok((r.mul(&g), d))
}

/// The certification corpus: triangular maps, m-triangular words, the even
/// Lamy–Przytycki maps, exponential maps and special affine maps.
pub fn certification_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let q = Field::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 0..10 {
        let n = 2 + k % 3;
        let t = random_special_triangular(&q, n, 3, true, &mut rng);
        out.push(CorpusEntry { name: format!("triangular-{}", k + 1), input: FactoredAuto::from_factor(&q, BasicFactor::Triangular(t)) });
    }
    for (k, (n, m)) in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 4)].into_iter().enumerate() {
        let deg = if n == 2 { 3 } else { 2 };
        let w = random_m_triangular(&q, n, m, deg, &mut rng)?;
        out.push(CorpusEntry { name: format!("word-{}-n{n}-m{m}", k + 1), input: w });
    }
    for m in [2, 4] {
        out.push(CorpusEntry { name: format!("lamy-przytycki-{m}"), input: lamy_przytycki(&q, m)? });
    }
    out.push(CorpusEntry { name: "van-den-essen".into(), input: van_den_essen(&q)? });
    for k in 0..3 {
        let (f, d) = nagata_pair(&q, &mut rng)?;
        let mut w = FactoredAuto::identity(&q, 3);
        if k >= 1 {
            w.push(BasicFactor::Triangular(random_special_triangular(&q, 3, 2, false, &mut rng)), 1);
        }
        if k >= 2 {
            w.push(BasicFactor::Linear(random_sl_matrix(&q, 3, &mut rng)), 1);
        }
        w.push(BasicFactor::Exp { f, d }, 1);
        out.push(CorpusEntry { name: format!("exponential-{}", k + 1), input: w });
    }
    for k in 0..3 {
        let n = 2 + k;
        let mut w = FactoredAuto::identity(&q, n);
        let b: Vec<Scalar> = (0..n).map(|_| q.from_i64(rng.gen_range(-2..=2))).collect();
        w.push(BasicFactor::Translation(b), 1);
        w.push(BasicFactor::Linear(random_sl_matrix(&q, n, &mut rng)), 1);
        out.push(CorpusEntry { name: format!("affine-{}", k + 1), input: w });
    }
    Ok(out)
}
