//! Exact checks of the displayed word identities, evaluated by direct
//! expansion in the core algebra (no certificate machinery involved).

use cotame_core::{BasicFactor, Endo, FactoredAuto, Field, Matrix, Poly, Scalar, TriDerivation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::text::fmt_field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyResult {
    pub family: &'static str,
    pub field: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl FamilyResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

impl std::fmt::Display for FamilyResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<14} {:<4} {}/{}", self.family, self.field, self.cases - self.failures.len(), self.cases)?;
        for m in &self.failures {
            write!(f, "\n  {m}")?;
        }
        Ok(())
    }
}

type W = Vec<(BasicFactor, i8)>;

fn tr(field: &Field, n: usize, i: usize, c: &Scalar) -> BasicFactor {
    let mut b = vec![field.zero(); n];
    b[i] = c.clone();
    BasicFactor::Translation(b)
}

fn el(i: usize, f: Poly) -> BasicFactor {
    BasicFactor::Elementary { i, f }
}

/// `x_i ↦ b x_i`, `x_j ↦ b⁻¹ x_j`.
fn dl(field: &Field, n: usize, i: usize, j: usize, b: &Scalar) -> BasicFactor {
    let mut d = vec![field.one(); n];
    d[i] = b.clone();
    d[j] = field.inv(b).expect("unit");
    BasicFactor::Linear(Matrix::diagonal(field, &d))
}

fn expand(field: &Field, n: usize, w: W) -> Result<Endo> {
    Ok(FactoredAuto::from_word(field, n, w)?.expand()?)
}

fn check(out: &mut FamilyResult, what: impl FnOnce() -> String, lhs: Result<Endo>, rhs: Result<Endo>) {
    out.cases += 1;
    match (lhs, rhs) {
        (Ok(l), Ok(r)) if l == r => {}
        (Ok(_), Ok(_)) => out.failures.push(format!("{}: sides differ", what())),
        (Err(e), _) | (_, Err(e)) => out.failures.push(format!("{}: {e}", what())),
    }
}

fn family(family: &'static str, field: &Field) -> FamilyResult {
    FamilyResult { family, field: fmt_field(field), cases: 0, failures: Vec::new() }
}

/// `ε_{i,a}⁻¹ δ_{i,j,b} ε_{i,a} δ_{i,j,b}⁻¹ = ε_{i,ab−a}` over a grid of `cases` triples.
pub fn commutator_grid(field: &Field, cases: usize) -> Result<FamilyResult> {
    let mut out = family("commutator", field);
    let units = field.units(8);
    let mut grid = Vec::new();
    'fill: for n in 2..=3 {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for a in &units {
                    for b in &units {
                        grid.push((n, i, j, a.clone(), b.clone()));
                        if grid.len() == cases {
                            break 'fill;
                        }
                    }
                }
            }
        }
    }
    for (n, i, j, a, b) in grid {
        let lhs = expand(field, n, vec![(tr(field, n, i, &a), -1), (dl(field, n, i, j, &b), 1), (tr(field, n, i, &a), 1), (dl(field, n, i, j, &b), -1)]);
        let shift = field.sub(&field.mul(&a, &b), &a);
        let rhs = Ok(Endo::translation(field, &{
            let mut v = vec![field.zero(); n];
            v[i] = shift;
            v
        }));
        check(&mut out, || format!("n={n} i={} j={}", i + 1, j + 1), lhs, rhs);
    }
    Ok(out)
}

/// `ε_{i,−a²/4} ε_{j,−a/2} ε_{i,x_j²} ε_{j,a/2} ε_{i,x_j²}⁻¹ = ε_{i,a x_j}` (odd characteristic).
pub fn odd_translation_identity(field: &Field, cases: usize) -> Result<FamilyResult> {
    let mut out = family("odd-linear", field);
    let units = field.units(cases);
    let mut k = 0;
    'all: for n in 2..=4 {
        for (i, j) in [(0, 1), (1, 0), (0, n - 1), (n - 1, 1)] {
            if i == j {
                continue;
            }
            for a in &units {
                if k == cases {
                    break 'all;
                }
                k += 1;
                let two = field.from_i64(2);
                let four = field.from_i64(4);
                let half = field.div(a, &two)?;
                let quarter = field.div(&field.mul(a, a), &four)?;
                let xj = Poly::var(field, n, j);
                let lhs = expand(
                    field,
                    n,
                    vec![
                        (tr(field, n, i, &field.neg(&quarter)), 1),
                        (tr(field, n, j, &field.neg(&half)), 1),
                        (el(i, xj.pow(2)), 1),
                        (tr(field, n, j, &half), 1),
                        (el(i, xj.pow(2)), -1),
                    ],
                );
                let rhs = Ok(Endo::elementary(i, &xj.scale(a))?);
                check(&mut out, || format!("n={n} i={} j={}", i + 1, j + 1), lhs, rhs);
            }
        }
    }
    Ok(out)
}

/// The characteristic-2 identity with `c = b²/(a−b)`:
/// `δ⁻¹ (ε_{i,−cb³} ε_{j,−b} ε_{i,cx_j³} ε_{j,b} ε_{i,cx_j³}⁻¹ ε_{i,−bc³} ε_{j,−c} ε_{i,bx_j³} ε_{j,c} ε_{i,bx_j³}⁻¹) δ = ε_{i,a x_j}`
/// with `δ = δ_{i,j,c}`, for every pair of distinct units.
pub fn char2_identity(field: &Field) -> Result<FamilyResult> {
    let mut out = family("char2-linear", field);
    let units = field.units(0);
    let (n, i, j) = (2, 0, 1);
    let xj = Poly::var(field, n, j);
    for a in &units {
        for b in &units {
            if a == b {
                continue;
            }
            let c = field.div(&field.mul(b, b), &field.sub(a, b))?;
            let cb3 = field.mul(&c, &field.pow(b, 3));
            let bc3 = field.mul(b, &field.pow(&c, 3));
            let d = dl(field, n, i, j, &c);
            let mut w: W = vec![(d.clone(), -1)];
            for (u, v, s) in [(&c, b, &cb3), (b, &c, &bc3)] {
                w.push((tr(field, n, i, &field.neg(s)), 1));
                w.push((tr(field, n, j, &field.neg(v)), 1));
                w.push((el(i, xj.pow(3).scale(u)), 1));
                w.push((tr(field, n, j, v), 1));
                w.push((el(i, xj.pow(3).scale(u)), -1));
            }
            w.push((d, 1));
            let lhs = expand(field, n, w);
            let rhs = Ok(Endo::elementary(i, &xj.scale(a))?);
            check(&mut out, || "pair".into(), lhs, rhs);
        }
    }
    Ok(out)
}

/// `δ_{1,2}⁻¹ ε_{1,2aM}⁻¹ δ_{1,2} ε_{1,2aM} = ε_{1,aM}` with `δ_{1,2} = diag(2, 1, ..)`.
pub fn glin_identity(field: &Field, cases: usize, rng: &mut ChaCha8Rng) -> Result<FamilyResult> {
    let mut out = family("glin", field);
    let units = field.units(32);
    for _ in 0..cases {
        let n = rng.gen_range(2..=4);
        let a = units[rng.gen_range(0..units.len())].clone();
        let mut exps = vec![0u32; n];
        for e in exps.iter_mut().skip(1) {
            *e = rng.gen_range(0..=3);
        }
        let m = Poly::monomial(field, field.one(), exps);
        let two = field.from_i64(2);
        let mut d = vec![field.one(); n];
        d[0] = two.clone();
        let delta = BasicFactor::Linear(Matrix::diagonal(field, &d));
        let big = m.scale(&field.mul(&two, &a));
        let lhs = expand(field, n, vec![(delta.clone(), -1), (el(0, big.clone()), -1), (delta, 1), (el(0, big), 1)]);
        let rhs = Ok(Endo::elementary(0, &m.scale(&a))?);
        check(&mut out, || format!("n={n}"), lhs, rhs);
    }
    Ok(out)
}

fn random_univariate(field: &Field, n: usize, var: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut p = Poly::zero(field, n);
    while p.is_zero() {
        for e in 0..=2u32 {
            let c = rng.gen_range(-3..=3);
            if c != 0 {
                let mut exps = vec![0; n];
                exps[var] = e;
                p = p.add(&Poly::monomial(field, field.from_i64(c), exps));
            }
        }
    }
    p
}

/// A derivation with a known kernel element, as `(D, F)` with `D(F) = 0`.
pub fn random_kernel_pair(field: &Field, rng: &mut ChaCha8Rng) -> Result<(TriDerivation, Poly)> {
    let nagata = rng.gen_bool(0.5);
    let n = if nagata { 3 } else { 4 };
    let x = |i: usize| Poly::var(field, n, i);
    let (d, g) = if nagata {
        let d = TriDerivation::new(field, vec![Poly::zero(field, n), x(0).neg(), x(1).scale(&field.from_i64(2))])?;
        (d, x(0).mul(&x(2)).add(&x(1).pow(2)))
    } else {
        let d = TriDerivation::new(field, vec![Poly::zero(field, n), Poly::zero(field, n), x(1).neg(), x(0)])?;
        (d, x(0).mul(&x(2)).add(&x(1).mul(&x(3))))
    };
    let k = rng.gen_range(1..=2);
    let f = random_univariate(field, n, 0, rng).mul(&g.pow(k));
    Ok((d, f))
}

/// `ε_{n,1}⁻¹ exp(−FD) ε_{n,1} exp(FD) = exp((F − (F)ε_{n,1}) D)`.
pub fn exp_commutator(field: &Field, cases: usize, rng: &mut ChaCha8Rng) -> Result<FamilyResult> {
    let mut out = family("exp-commutator", field);
    for _ in 0..cases {
        let (d, f) = random_kernel_pair(field, rng)?;
        let n = d.n();
        if !d.kernel_check(&f) {
            out.cases += 1;
            out.failures.push("generated pair is not a kernel pair".into());
            continue;
        }
        let one = field.one();
        let lhs = expand(
            field,
            n,
            vec![
                (tr(field, n, n - 1, &one), -1),
                (BasicFactor::Exp { f: f.neg(), d: d.clone() }, 1),
                (tr(field, n, n - 1, &one), 1),
                (BasicFactor::Exp { f: f.clone(), d: d.clone() }, 1),
            ],
        );
        let mut shift: Vec<Poly> = (0..n).map(|i| Poly::var(field, n, i)).collect();
        shift[n - 1] = shift[n - 1].add(&Poly::one(field, n));
        let g = f.sub(&f.substitute(&shift, None)?);
        let rhs = d.exp_automorphism(&g).map_err(Into::into);
        check(&mut out, || format!("n={n}"), lhs, rhs);
    }
    Ok(out)
}

/// The full suite in a fixed order.
pub fn run_suite(seed: u64) -> Result<Vec<FamilyResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = Field::rationals();
    let f5 = Field::finite(5)?;
    let f4 = Field::finite(4)?;
    let f8 = Field::finite(8)?;
    let f9 = Field::finite(9)?;
    let mut out = Vec::new();
    for f in [&q, &f5, &f4, &f9] {
        out.push(commutator_grid(f, 50)?);
    }
    for f in [&q, &f5] {
        out.push(odd_translation_identity(f, 20)?);
    }
    for f in [&f4, &f8] {
        out.push(char2_identity(f)?);
    }
    for f in [&q, &f5] {
        out.push(glin_identity(f, 50, &mut rng)?);
    }
    out.push(exp_commutator(&q, 20, &mut rng)?);
    Ok(out)
}
