//! Reductions for `exp(F·D)` and `τ α exp(F·D)` with `D` a triangular derivation.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use cotame_core::cert::{Certificate, Claim, NodeRef};
use cotame_core::{BasicFactor, Endo, FactoredAuto, Field, Matrix, Poly, Scalar, TriDerivation, Triangular};

use crate::builder::{conj, eps, eps_const, plain, CertBuilder};
use crate::cotame::{reduce_parabolic, reduce_triangular};
use crate::error::{EngineError, Result};

/// Number of translation sizes tried before the triangular-exponential chain gives up.
pub const CHAIN_RETRIES: i64 = 3;

fn exp_factor(f: &Poly, d: &TriDerivation) -> FactoredAuto {
    FactoredAuto::from_factor(d.field(), BasicFactor::Exp { f: f.clone(), d: d.clone() })
}

fn shift_last(field: &Field, f: &Poly, c: &Scalar) -> Result<Poly> {
    let n = f.nvars();
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(field, n, i)).collect();
    images[n - 1] = images[n - 1].add(&Poly::constant(field, n, c.clone()));
    Ok(f.substitute(&images, None)?)
}

fn require_char_zero(field: &Field) -> Result<()> {
    match field.characteristic() {
        0 => Ok(()),
        p => Err(EngineError::UnsupportedCharacteristic(p)),
    }
}

/// Drives a node holding `exp(F·D)` to a nontrivial elementary terminal.
pub fn reduce_exponential(bld: &mut CertBuilder, mut node: NodeRef, f: &Poly, d: &TriDerivation) -> Result<NodeRef> {
    let field = bld.field().clone();
    require_char_zero(&field)?;
    let n = bld.n();
    let last = n - 1;
    if bld.value(node).is_identity() {
        return Err(EngineError::IdentityInput);
    }
    let mut f = f.clone();
    let one = field.one();
    // ε_{n,1}⁻¹ exp(−FD) ε_{n,1} exp(FD) = exp((F − (F)ε_{n,1}) D)
    while f.degree_in(last) > 0 {
        let before = f.degree_in(last);
        let next = f.sub(&shift_last(&field, &f, &one)?);
        let after = next.degree_in(last);
        if after + 1 != before {
            return Err(EngineError::InternalIdentityFailure(format!("x{n}-degree went from {before} to {after}")));
        }
        let g = eps_const(&field, n, last, one.clone());
        node = bld.step_with_form("exp-descent", vec![conj(g, node, -1), plain(node, 1)], exp_factor(&next, d))?;
        bld.note(node, format!("deg in x{n}: {before} -> {after}"));
        f = next;
    }
    let value = bld.value(node).clone();
    if value.is_triangular() {
        return reduce_triangular(bld, node);
    }
    let i = (0..last)
        .find(|&i| *value.comp(i) != Poly::var(&field, n, i))
        .ok_or_else(|| EngineError::InternalIdentityFailure("exponential base case has no moved coordinate".into()))?;
    let xi = Poly::var(&field, n, i);
    let q = value.comp(i).sub(&xi);
    let expected = Endo::elementary(last, &q)?;
    // ε_{n,x_i}⁻¹ exp(−FD) ε_{n,x_i} exp(FD) = ε_{n,Q}
    let e = bld.step("exp-base", vec![conj(eps(&field, last, xi), node, -1), plain(node, 1)], Some(&expected))?;
    reduce_triangular(bld, e)
}

/// Drives a node holding `τ α exp(F·D)` to a nontrivial elementary terminal.
pub fn reduce_triangular_exponential(
    bld: &mut CertBuilder,
    node: NodeRef,
    tau: &Triangular,
    alpha: &Matrix,
    f: &Poly,
    d: &TriDerivation,
) -> Result<NodeRef> {
    let field = bld.field().clone();
    require_char_zero(&field)?;
    let n = bld.n();
    let last = n - 1;
    if bld.value(node).is_identity() {
        return Err(EngineError::IdentityInput);
    }
    let mut failure = None;
    for c in 1..=CHAIN_RETRIES {
        match triangular_exponential_chain(bld, node, tau, alpha, f, d, &field.from_i64(c), last) {
            Ok(t) => return Ok(t),
            Err(EngineError::InternalIdentityFailure(m)) => failure = Some(EngineError::InternalIdentityFailure(m)),
            Err(e) => return Err(e),
        }
    }
    Err(failure.expect("at least one attempt"))
}

#[allow(clippy::too_many_arguments)]
fn triangular_exponential_chain(
    bld: &mut CertBuilder,
    node: NodeRef,
    tau: &Triangular,
    alpha: &Matrix,
    f: &Poly,
    d: &TriDerivation,
    c: &Scalar,
    last: usize,
) -> Result<NodeRef> {
    let field = bld.field().clone();
    let n = bld.n();
    let e = eps_const(&field, n, last, c.clone());
    let e_inv = eps_const(&field, n, last, field.neg(c));
    // φ_0 = ε⁻¹ φ⁻¹ ε φ
    let phi0 = bld.step("texp-commutator", vec![conj(e.clone(), node, -1), plain(node, 1)], None)?;
    // φ_1 = exp(FD) φ_0 exp(−FD) = ε⁻¹ exp(GD) γ, γ = α⁻¹ τ⁻¹ ε τ α
    let g_poly = shift_last(&field, f, &field.neg(c))?.sub(f);
    let gamma_map = FactoredAuto::from_factor(&field, BasicFactor::Linear(alpha.inverse()?))
        .then(&FactoredAuto::from_factor(&field, BasicFactor::Triangular(tau.inverse()?)))
        .then(&e)
        .then(&FactoredAuto::from_factor(&field, BasicFactor::Triangular(tau.clone())))
        .then(&FactoredAuto::from_factor(&field, BasicFactor::Linear(alpha.clone())))
        .expand_capped(bld.cap())?;
    let gamma = gamma_map
        .as_translation()
        .ok_or_else(|| EngineError::InternalIdentityFailure("conjugated translation is not a translation".into()))?;
    let form1 = e_inv.then(&exp_factor(&g_poly, d)).then(&FactoredAuto::from_factor(&field, BasicFactor::Translation(gamma)));
    let phi1 = bld.step_with_form("texp-conjugate", vec![conj(exp_factor(&f.neg(), d), phi0, 1)], form1)?;
    // φ_2 = ε φ_1 ε⁻¹ φ_1⁻¹ = exp(HD), H = G − (G)ε
    let h = g_poly.sub(&shift_last(&field, &g_poly, c)?);
    if h.is_zero() || d.scaled(&h)?.images().iter().all(Poly::is_zero) {
        if bld.value(phi1).is_identity() {
            return Err(EngineError::DegenerateChain("H = 0 and the conjugated commutator is the identity".into()));
        }
        bld.note(phi1, "H = 0; continuing from the parabolic map");
        bld.meta("degenerate-chain", "parabolic");
        let id = Matrix::identity(&field, n);
        return reduce_parabolic(bld, phi1, &id);
    }
    let phi2 = bld.step_with_form("texp-exponential", vec![conj(e_inv, phi1, 1), plain(phi1, -1)], exp_factor(&h, d))?;
    reduce_exponential(bld, phi2, &h, d)
}

/// Splits `prefix · exp(FD)` into `τ`, `α`, `F`, `D` and runs the matching reduction.
pub fn reduce_exponential_word(bld: &mut CertBuilder, node: NodeRef, input: &FactoredAuto) -> Result<NodeRef> {
    let field = bld.field().clone();
    let n = bld.n();
    let w = input.normalized()?;
    let word = w.word();
    let Some((BasicFactor::Exp { f, d }, _)) = word.last() else {
        return Err(EngineError::NotAlternating("exponential factor must come last".into()));
    };
    if word[..word.len() - 1].iter().any(|(g, _)| matches!(g, BasicFactor::Exp { .. })) {
        return Err(EngineError::NotAlternating("more than one exponential factor".into()));
    }
    let mut prefix = FactoredAuto::identity(&field, n);
    for (g, e) in &word[..word.len() - 1] {
        prefix.push(g.clone(), *e);
    }
    let p = prefix.expand_capped(bld.cap())?;
    if p.is_identity() {
        return reduce_exponential(bld, node, f, d);
    }
    let (tau, alpha) = split_triangular_linear(&field, n, &p, bld.cap())?;
    reduce_triangular_exponential(bld, node, &tau, &alpha, f, d)
}

/// `p = τ α` with `τ` triangular and `α` linear, when `p = τ'·(affine)` for a triangular `τ'`.
fn split_triangular_linear(field: &Field, n: usize, p: &Endo, cap: Option<u32>) -> Result<(Triangular, Matrix)> {
    if let Some((m, b)) = p.as_affine() {
        let t = Endo::translation(field, &b).as_triangular().expect("translation is triangular");
        return Ok((t, m));
    }
    let lin = linear_part(field, n, p)?;
    let rest = p.compose_capped(&Endo::from_linear(&lin.inverse()?), cap)?;
    match rest.as_triangular() {
        Some(t) => Ok((t, lin)),
        None => Err(EngineError::NotAlternating("prefix is not of the form triangular · linear".into())),
    }
}

/// Matrix of the degree-one terms of `p`. For `p = τ α` this is `L α` with `L`
/// lower triangular, so `p (L α)⁻¹` is again triangular.
fn linear_part(field: &Field, n: usize, p: &Endo) -> Result<Matrix> {
    let rows = p
        .comps()
        .iter()
        .map(|c| {
            (0..n)
                .map(|j| {
                    let mut e = vec![0u32; n];
                    e[j] = 1;
                    c.coeff(&e)
                })
                .collect()
        })
        .collect();
    let m = Matrix::from_rows(field, rows)?;
    if field.is_zero(&m.det()) {
        return Err(EngineError::NotAlternating("prefix has a singular linear part".into()));
    }
    Ok(m)
}

/// Standalone certificate for `exp(F·D)`.
pub fn certify_exponential(f: &Poly, d: &TriDerivation) -> Result<Certificate> {
    let field = d.field().clone();
    require_char_zero(&field)?;
    let mut bld = CertBuilder::new(&field, d.n(), Claim::Cotame);
    let seed = bld.add_seed("phi", exp_factor(f, d))?;
    bld.meta("path", "exponential");
    let t = reduce_exponential(&mut bld, seed, f, d)?;
    Ok(bld.finish(t))
}
