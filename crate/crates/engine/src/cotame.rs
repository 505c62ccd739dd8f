//! Certificates that a special m-triangular automorphism (`m ≤ 4`) has a
//! nontrivial elementary map in its normal closure.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use cotame_core::cert::{Certificate, Claim, NodeRef};
use cotame_core::{BasicFactor, Endo, FactoredAuto, Field, Matrix, Poly, Scalar, Triangular};

use crate::builder::{conj, eps, linear, plain, CertBuilder};
use crate::error::{EngineError, Result};
use crate::slin::{translation_from_any, translation_from_special_affine};

/// `α_0 τ_1 α_1 ⋯ τ_m α_m` with every `α_k ∈ SL_n` and every `τ_k` special triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MTriangularForm {
    pub alphas: Vec<Matrix>,
    pub taus: Vec<Triangular>,
}

impl MTriangularForm {
    pub fn m(&self) -> usize {
        self.taus.len()
    }

    pub fn factors(&self) -> Vec<BasicFactor> {
        let mut out = Vec::new();
        for (k, a) in self.alphas.iter().enumerate() {
            if !a.is_identity() {
                out.push(BasicFactor::Linear(a.clone()));
            }
            if let Some(t) = self.taus.get(k) {
                out.push(BasicFactor::Triangular(t.clone()));
            }
        }
        out
    }

    pub fn word(&self, field: &Field, n: usize) -> FactoredAuto {
        word(field, n, self.factors())
    }
}

/// Result of normalising an alternating word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normal {
    Affine(Endo),
    Form(MTriangularForm),
}

fn word(field: &Field, n: usize, factors: Vec<BasicFactor>) -> FactoredAuto {
    let mut w = FactoredAuto::identity(field, n);
    for f in factors {
        w.push(f, 1);
    }
    w
}

fn expand(field: &Field, n: usize, cap: Option<u32>, factors: Vec<BasicFactor>) -> Result<Endo> {
    Ok(word(field, n, factors).expand_capped(cap)?)
}

fn triangular_of(field: &Field, n: usize, cap: Option<u32>, factors: Vec<BasicFactor>, what: &str) -> Result<Triangular> {
    expand(field, n, cap, factors)?
        .as_triangular()
        .ok_or_else(|| EngineError::InternalIdentityFailure(format!("{what} is not triangular")))
}

fn lin(m: &Matrix) -> BasicFactor {
    BasicFactor::Linear(m.clone())
}

fn lin_inv(m: &Matrix) -> Result<BasicFactor> {
    Ok(BasicFactor::Linear(m.inverse()?))
}

fn tri(t: &Triangular) -> BasicFactor {
    BasicFactor::Triangular(t.clone())
}

fn tri_inv(t: &Triangular) -> Result<BasicFactor> {
    Ok(BasicFactor::Triangular(t.inverse()?))
}

fn translation(v: &[Scalar]) -> BasicFactor {
    BasicFactor::Translation(v.to_vec())
}

fn neg_vec(field: &Field, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|a| field.neg(a)).collect()
}

fn diag_first(field: &Field, n: usize, d: &Scalar) -> Matrix {
    let mut v = vec![field.one(); n];
    v[0] = d.clone();
    Matrix::diagonal(field, &v)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Affine,
    Triangular,
    Both,
}

fn kind(e: &Endo) -> Option<Kind> {
    match (e.is_affine(), e.is_triangular()) {
        (true, true) => Some(Kind::Both),
        (true, false) => Some(Kind::Affine),
        (false, true) => Some(Kind::Triangular),
        _ => None,
    }
}

/// Rewrites a word of affine, triangular and elementary factors as an
/// m-triangular form with special pieces and the smallest `m` reachable by
/// merging neighbours.
pub fn normalize_m_triangular(w: &FactoredAuto, cap: Option<u32>) -> Result<Normal> {
    let field = w.field().clone();
    let n = w.n();
    let mut segs: Vec<Endo> = Vec::new();
    for (f, e) in w.normalized()?.word() {
        debug_assert_eq!(*e, 1);
        if matches!(f, BasicFactor::Exp { .. }) {
            return Err(EngineError::NotAlternating("exponential factor in an m-triangular word".into()));
        }
        let v = f.expand(&field)?;
        if kind(&v).is_some() {
            segs.push(v);
            continue;
        }
        let (i, _) = v.as_elementary().ok_or_else(|| EngineError::NotAlternating("factor is neither affine nor triangular".into()))?;
        let last = n - 1;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, last);
        let s = BasicFactor::signed_permutation(&field, perm, vec![field.one(); n])?.expand(&field)?;
        let moved = s.compose_capped(&v, cap)?.compose_capped(&s, cap)?;
        if !moved.is_triangular() {
            return Err(EngineError::NotAlternating("elementary factor cannot be made triangular".into()));
        }
        segs.extend([s.clone(), moved, s]);
    }
    loop {
        let before = segs.len();
        let mut out: Vec<Endo> = Vec::new();
        for s in segs.into_iter().filter(|s| !s.is_identity()) {
            let k = kind(&s).ok_or_else(|| EngineError::NotAlternating("merged piece left the affine and triangular groups".into()))?;
            match out.last_mut() {
                Some(prev) => {
                    let pk = kind(prev).expect("classified");
                    if pk == k || pk == Kind::Both || k == Kind::Both {
                        *prev = prev.compose_capped(&s, cap)?;
                    } else {
                        out.push(s);
                    }
                }
                None => out.push(s),
            }
        }
        segs = out;
        if segs.len() == before || segs.is_empty() {
            break;
        }
    }
    if segs.iter().any(Endo::is_identity) {
        segs.retain(|s| !s.is_identity());
    }
    match segs.len() {
        0 => return Err(EngineError::IdentityInput),
        1 if kind(&segs[0]) != Some(Kind::Triangular) => return Ok(Normal::Affine(segs.pop().expect("one piece"))),
        _ => {}
    }

    let mut alphas: Vec<(Matrix, Vec<Scalar>)> = Vec::new();
    let mut taus: Vec<Endo> = Vec::new();
    let zero = vec![field.zero(); n];
    if kind(&segs[0]) == Some(Kind::Triangular) {
        alphas.push((Matrix::identity(&field, n), zero.clone()));
    }
    for s in &segs {
        match kind(s) {
            Some(Kind::Triangular) => taus.push(s.clone()),
            _ => alphas.push(s.affine_parts().expect("affine piece")),
        }
    }
    if alphas.len() == taus.len() {
        alphas.push((Matrix::identity(&field, n), zero));
    }
    // x ↦ Mx + b is t_b λ_M = λ_M t_{M⁻¹b}; push translations into the neighbouring τ.
    for k in 0..alphas.len() {
        let (m, b) = alphas[k].clone();
        if b.iter().all(|v| field.is_zero(v)) {
            continue;
        }
        if k > 0 {
            taus[k - 1] = taus[k - 1].compose_capped(&Endo::translation(&field, &b), cap)?;
        } else {
            let shift = m.inverse()?.apply(&b);
            taus[0] = Endo::translation(&field, &shift).compose_capped(&taus[0], cap)?;
        }
        alphas[k].1 = vec![field.zero(); n];
    }
    // Sweep determinants to the right: α = S·E and E τ = (E τ E⁻¹ F⁻¹)·F·E.
    let m = taus.len();
    let mut carry = Matrix::identity(&field, n);
    let mut out_alphas = Vec::with_capacity(m + 1);
    let mut out_taus = Vec::with_capacity(m);
    for k in 0..=m {
        let mk = carry.mul(&alphas[k].0);
        let d = mk.det();
        if k == m {
            if !field.is_one(&d) {
                return Err(EngineError::NotSpecial);
            }
            out_alphas.push(mk);
            break;
        }
        let e = diag_first(&field, n, &d);
        out_alphas.push(mk.mul(&e.inverse()?));
        let conj = Endo::from_linear(&e).compose_capped(&taus[k], cap)?.compose_capped(&Endo::from_linear(&e.inverse()?), cap)?;
        let t = conj.as_triangular().ok_or(EngineError::NotTriangular)?;
        let fmat = diag_first(&field, n, &t.jacobian());
        let special = conj.compose_capped(&Endo::from_linear(&fmat.inverse()?), cap)?;
        out_taus.push(special.as_triangular().ok_or(EngineError::NotTriangular)?);
        carry = fmat.mul(&e);
    }
    let form = MTriangularForm { alphas: out_alphas, taus: out_taus };
    if form.word(&field, n).expand_capped(cap)? != w.expand_capped(cap)? {
        return Err(EngineError::InternalIdentityFailure("normal form does not expand to the input".into()));
    }
    Ok(Normal::Form(form))
}

/// First `c·w`, `c = 1..bound`, whose translation does not commute with `φ`.
pub fn find_noncommuting(field: &Field, value: &Endo, w: &[Scalar], bound: i64) -> Result<Option<Vec<Scalar>>> {
    for c in 1..=bound {
        let cs = field.from_i64(c);
        let v: Vec<Scalar> = w.iter().map(|a| field.mul(a, &cs)).collect();
        if !value.commutes_with_translation(&v)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn last_column(m: &Matrix) -> Vec<Scalar> {
    let n = m.n();
    (0..n).map(|i| m.get(i, n - 1).clone()).collect()
}

fn axis(field: &Field, n: usize, k: usize, c: &Scalar) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[k] = c.clone();
    v
}

/// Terminal from a node holding a special affine map `≠ id`.
fn reduce_affine(bld: &mut CertBuilder, node: NodeRef) -> Result<NodeRef> {
    let t = translation_from_special_affine(bld, node)?;
    Ok(translation_from_any(bld, t)?.0)
}

/// Commutators with axis translations until the vector degree reaches the affine case.
pub fn reduce_triangular(bld: &mut CertBuilder, mut node: NodeRef) -> Result<NodeRef> {
    let field = bld.field().clone();
    let n = bld.n();
    loop {
        let value = bld.value(node).clone();
        if value.is_identity() {
            return Err(EngineError::IdentityInput);
        }
        if value.is_affine() {
            return reduce_affine(bld, node);
        }
        let vd = value.vector_degree().map_err(|_| EngineError::NotTriangular)?;
        let bound = bld.probe_bound_for(&value);
        let mut gamma = None;
        'grid: for k in 0..n {
            for c in 1..=bound {
                let cs = field.from_i64(c);
                if !value.commutes_with_axis_translation(k, &cs)? {
                    gamma = Some(axis(&field, n, k, &cs));
                    break 'grid;
                }
            }
        }
        let gamma = gamma.ok_or_else(|| EngineError::InternalIdentityFailure("triangular map commutes with every translation".into()))?;
        // γ⁻¹ τ⁻¹ γ τ
        let g = FactoredAuto::from_factor(&field, translation(&gamma));
        let next = bld.step("reduce-triangular", vec![conj(g, node, -1), plain(node, 1)], None)?;
        let nv = bld.value(next).vector_degree().map_err(|_| EngineError::InternalIdentityFailure("commutator left the triangular group".into()))?;
        if nv >= vd {
            return Err(EngineError::InternalIdentityFailure(format!("vector degree did not drop: {vd} -> {nv}")));
        }
        bld.note(next, format!("vd {vd} -> {nv}"));
        node = next;
    }
}

/// `β⁻¹ φ β` is parabolic for the value `φ` of `node`.
pub fn reduce_parabolic(bld: &mut CertBuilder, node: NodeRef, beta: &Matrix) -> Result<NodeRef> {
    let field = bld.field().clone();
    let n = bld.n();
    let last = n - 1;
    // β = β₀ λ with β₀ ∈ SL_n and λ diagonal.
    let beta0 = beta.mul(&diag_first(&field, n, &beta.det()).inverse()?);
    let p = if beta0.is_identity() { node } else { bld.step("to-parabolic", vec![conj(linear(&beta0), node, 1)], None)? };
    let value = bld.value(p).clone();
    if !value.is_parabolic() {
        return Err(EngineError::NotParabolic);
    }
    if value.is_triangular() {
        return reduce_triangular(bld, p);
    }
    let a = value.comp(last).coeff(&axis_exps(n, last));
    let i = (0..last)
        .find(|&i| *value.comp(i) != Poly::var(&field, n, i).scale(&a))
        .ok_or_else(|| EngineError::InternalIdentityFailure("parabolic map is already triangular".into()))?;
    let xi = Poly::var(&field, n, i);
    let q = value.comp(i).scale(&field.inv(&a)?).sub(&xi);
    let expected = Endo::elementary(last, &q)?;
    // ε_{n,x_i}⁻¹ P⁻¹ ε_{n,x_i} P = ε_{n, H_i/a − x_i}
    let e = bld.step("parabolic", vec![conj(eps(&field, last, xi), p, -1), plain(p, 1)], Some(&expected))?;
    reduce_triangular(bld, e)
}

fn axis_exps(n: usize, k: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[k] = 1;
    e
}

/// Replaces `α_m` by the identity through conjugation with `α_m⁻¹`.
fn drop_last_alpha(bld: &mut CertBuilder, node: NodeRef, mut form: MTriangularForm) -> Result<(NodeRef, MTriangularForm)> {
    let m = form.m();
    let am = form.alphas[m].clone();
    if am.is_identity() {
        return Ok((node, form));
    }
    let field = bld.field().clone();
    let n = bld.n();
    form.alphas[0] = am.mul(&form.alphas[0]);
    form.alphas[m] = Matrix::identity(&field, n);
    let g = linear(&am.inverse()?);
    let next = bld.step_with_form("conjugate-affine", vec![conj(g, node, 1)], form.word(&field, n))?;
    Ok((next, form))
}

fn collapse(bld: &CertBuilder, factors: Vec<BasicFactor>) -> Result<Normal> {
    normalize_m_triangular(&word(bld.field(), bld.n(), factors), bld.cap())
}

/// Drives a node whose value is `form` to a nontrivial elementary terminal.
pub fn reduce_form(bld: &mut CertBuilder, node: NodeRef, form: MTriangularForm) -> Result<NodeRef> {
    match form.m() {
        0 => reduce_affine(bld, node),
        1 | 2 => reduce_bitriangular(bld, node, form),
        3 => reduce_three(bld, node, form),
        4 => reduce_four(bld, node, form),
        m => Err(EngineError::UnsupportedM(m)),
    }
}

fn reduce_normal(bld: &mut CertBuilder, node: NodeRef, normal: Normal) -> Result<NodeRef> {
    match normal {
        Normal::Affine(_) => reduce_affine(bld, node),
        Normal::Form(f) => reduce_form(bld, node, f),
    }
}

fn reduce_bitriangular(bld: &mut CertBuilder, node: NodeRef, form: MTriangularForm) -> Result<NodeRef> {
    let field = bld.field().clone();
    let (node, form) = drop_last_alpha(bld, node, form)?;
    if form.m() == 1 && form.alphas[0].is_identity() {
        return reduce_triangular(bld, node);
    }
    let beta = form.alphas[0].clone();
    let value = bld.value(node).clone();
    match find_noncommuting(&field, &value, &last_column(&beta), bld.probe_bound_for(&value))? {
        Some(v) => {
            // γ⁻¹ φ⁻¹ γ φ is triangular for γ = α_0 ε_{n,c} α_0⁻¹
            let g = FactoredAuto::from_factor(&field, translation(&v));
            let next = bld.step("bitriangular", vec![conj(g, node, -1), plain(node, 1)], None)?;
            if !bld.value(next).is_triangular() {
                return Err(EngineError::InternalIdentityFailure("bitriangular commutator is not triangular".into()));
            }
            reduce_triangular(bld, next)
        }
        None => reduce_parabolic(bld, node, &beta),
    }
}

fn reduce_three(bld: &mut CertBuilder, node: NodeRef, form: MTriangularForm) -> Result<NodeRef> {
    let field = bld.field().clone();
    let n = bld.n();
    let cap = bld.cap();
    let (mut node, mut form) = drop_last_alpha(bld, node, form)?;
    loop {
        let [a0, a1, a2, _] = <[Matrix; 4]>::try_from(form.alphas.clone()).expect("four alphas");
        let [t1, t2, t3] = <[Triangular; 3]>::try_from(form.taus.clone()).expect("three taus");
        if t2.to_endo().is_affine() {
            let normal = collapse(bld, vec![lin(&a0), tri(&t1), lin(&a1), tri(&t2), lin(&a2), tri(&t3)])?;
            return reduce_normal(bld, node, normal);
        }
        let value = bld.value(node).clone();
        let Some(v) = find_noncommuting(&field, &value, &last_column(&a0), bld.probe_bound_for(&value))? else {
            return reduce_parabolic(bld, node, &a0);
        };
        let vd = t2.vector_degree();
        let t2_new = triangular_of(
            &field,
            n,
            cap,
            vec![tri_inv(&t2)?, lin_inv(&a1)?, tri_inv(&t1)?, lin_inv(&a0)?, translation(&v), lin(&a0), tri(&t1), lin(&a1), tri(&t2)],
            "conjugated middle piece",
        )?;
        let t1_new = triangular_of(&field, n, cap, vec![translation(&neg_vec(&field, &v)), tri_inv(&t3)?], "leading piece")?;
        let a2_inv = a2.inverse()?;
        let next_form = MTriangularForm {
            alphas: vec![Matrix::identity(&field, n), a2_inv, a2, Matrix::identity(&field, n)],
            taus: vec![t1_new, t2_new, t3],
        };
        let nv = next_form.taus[1].vector_degree();
        if nv >= vd {
            return Err(EngineError::InternalIdentityFailure(format!("middle vector degree did not drop: {vd} -> {nv}")));
        }
        let g = FactoredAuto::from_factor(&field, translation(&v));
        node = bld.step_with_form("three-triangular", vec![conj(g, node, -1), plain(node, 1)], next_form.word(&field, n))?;
        bld.note(node, format!("vd {vd} -> {nv}"));
        form = next_form;
    }
}

/// `U_1 α_1 τ_2 α_2 T_3 α_2⁻¹ τ_2⁻¹ α_1⁻¹`.
struct Symmetric {
    u1: Triangular,
    a1: Matrix,
    t2: Triangular,
    a2: Matrix,
    t3: Triangular,
}

impl Symmetric {
    fn factors(&self) -> Result<Vec<BasicFactor>> {
        Ok(vec![
            tri(&self.u1),
            lin(&self.a1),
            tri(&self.t2),
            lin(&self.a2),
            tri(&self.t3),
            lin_inv(&self.a2)?,
            tri_inv(&self.t2)?,
            lin_inv(&self.a1)?,
        ])
    }
}

fn reduce_four(bld: &mut CertBuilder, node: NodeRef, mut form: MTriangularForm) -> Result<NodeRef> {
    let field = bld.field().clone();
    let n = bld.n();
    let cap = bld.cap();
    let id = Matrix::identity(&field, n);
    // α_0⁻¹ φ α_0 = τ_1 α_1 τ_2 α_2 τ_3 α_3 τ_4 (α_4 α_0)
    let node = if form.alphas[0].is_identity() {
        node
    } else {
        let a0 = form.alphas[0].clone();
        form.alphas[4] = form.alphas[4].mul(&a0);
        form.alphas[0] = id.clone();
        bld.step_with_form("conjugate-affine", vec![conj(linear(&a0), node, 1)], form.word(&field, n))?
    };
    let [_, a1, a2, a3, a4] = <[Matrix; 5]>::try_from(form.alphas.clone()).expect("five alphas");
    let [t1, t2, t3, t4] = <[Triangular; 4]>::try_from(form.taus.clone()).expect("four taus");
    let a4_inv = a4.inverse()?;
    let value = bld.value(node).clone();
    let Some(v) = find_noncommuting(&field, &value, &last_column(&a4_inv), bld.probe_bound_for(&value))? else {
        return reduce_parabolic(bld, node, &a4_inv);
    };
    let vneg = neg_vec(&field, &v);
    // γ φ γ⁻¹ φ⁻¹ = γ τ_1 α_1 τ_2 α_2 T_3 α_2⁻¹ τ_2⁻¹ α_1⁻¹ τ_1⁻¹
    let t3_new = triangular_of(
        &field,
        n,
        cap,
        vec![tri(&t3), lin(&a3), tri(&t4), lin(&a4), translation(&vneg), lin(&a4_inv), tri_inv(&t4)?, lin_inv(&a3)?, tri_inv(&t3)?],
        "conjugated third piece",
    )?;
    let claim_form = vec![
        translation(&v),
        tri(&t1),
        lin(&a1),
        tri(&t2),
        lin(&a2),
        tri(&t3_new),
        lin_inv(&a2)?,
        tri_inv(&t2)?,
        lin_inv(&a1)?,
        tri_inv(&t1)?,
    ];
    let g_inv = FactoredAuto::from_factor(&field, translation(&vneg));
    let claimed = bld.step_with_form("four-triangular", vec![conj(g_inv, node, 1), plain(node, -1)], word(&field, n, claim_form))?;
    let u1 = triangular_of(&field, n, cap, vec![tri_inv(&t1)?, translation(&v), tri(&t1)], "first piece")?;
    let mut sym = Symmetric { u1, a1, t2, a2, t3: t3_new };
    let t1w = FactoredAuto::from_factor(&field, tri(&t1));
    let mut node = bld.step_with_form("symmetric", vec![conj(t1w, claimed, 1)], word(&field, n, sym.factors()?))?;
    loop {
        if sym.t3.to_endo().is_affine() {
            let normal = collapse(bld, sym.factors()?)?;
            return reduce_normal(bld, node, normal);
        }
        let value = bld.value(node).clone();
        let Some(v) = find_noncommuting(&field, &value, &last_column(&sym.a1), bld.probe_bound_for(&value))? else {
            return reduce_parabolic(bld, node, &sym.a1);
        };
        let vneg = neg_vec(&field, &v);
        let mu = sym.t3.inverse()?.vector_degree();
        let t3_new = triangular_of(
            &field,
            n,
            cap,
            vec![
                tri(&sym.t3),
                lin_inv(&sym.a2)?,
                tri_inv(&sym.t2)?,
                lin_inv(&sym.a1)?,
                translation(&v),
                lin(&sym.a1),
                tri(&sym.t2),
                lin(&sym.a2),
                tri_inv(&sym.t3)?,
            ],
            "conjugated third piece",
        )?;
        let nu = t3_new.inverse()?.vector_degree();
        if nu >= mu {
            return Err(EngineError::InternalIdentityFailure(format!("inverse vector degree did not drop: {mu} -> {nu}")));
        }
        // γ⁻¹ φ γ φ⁻¹ = γ⁻¹ U_1 α_1 τ_2 α_2 T_3' α_2⁻¹ τ_2⁻¹ α_1⁻¹ U_1⁻¹
        let mut f = vec![translation(&vneg)];
        let next = Symmetric { u1: sym.u1.clone(), a1: sym.a1.clone(), t2: sym.t2.clone(), a2: sym.a2.clone(), t3: t3_new };
        f.extend(next.factors()?);
        f.push(tri_inv(&sym.u1)?);
        let g = FactoredAuto::from_factor(&field, translation(&v));
        let step = bld.step_with_form("symmetric-commutator", vec![conj(g, node, 1), plain(node, -1)], word(&field, n, f))?;
        bld.note(step, format!("vd of inverse {mu} -> {nu}"));
        let u1_new = triangular_of(&field, n, cap, vec![tri_inv(&sym.u1)?, translation(&vneg), tri(&sym.u1)], "first piece")?;
        let uw = FactoredAuto::from_factor(&field, tri(&sym.u1));
        sym = Symmetric { u1: u1_new, ..next };
        node = bld.step_with_form("symmetric", vec![conj(uw, step, 1)], word(&field, n, sym.factors()?))?;
    }
}

/// Whether the word ends in an exponential factor after affine and triangular ones.
fn is_exponential_word(w: &FactoredAuto) -> bool {
    w.word().iter().any(|(f, _)| matches!(f, BasicFactor::Exp { .. }))
}

/// Certificate that the normal closure of `input` in `SA_n` contains a nontrivial elementary map.
pub fn certify_normally_cotame(input: &FactoredAuto) -> Result<Certificate> {
    certify_normally_cotame_capped(input, Some(cotame_core::DEFAULT_DEGREE_CAP))
}

pub fn certify_normally_cotame_capped(input: &FactoredAuto, cap: Option<u32>) -> Result<Certificate> {
    certify_normally_cotame_with(input, &Options { cap, probe_bound: None })
}

/// Tuning knobs for [`certify_normally_cotame_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub cap: Option<u32>,
    pub probe_bound: Option<u32>,
}

impl Default for Options {
    fn default() -> Self {
        Options { cap: Some(cotame_core::DEFAULT_DEGREE_CAP), probe_bound: None }
    }
}

pub fn certify_normally_cotame_with(input: &FactoredAuto, opts: &Options) -> Result<Certificate> {
    let cap = opts.cap;
    let field = input.field().clone();
    let n = input.n();
    let p = field.characteristic();
    if p != 0 {
        return Err(EngineError::UnsupportedCharacteristic(p));
    }
    if !input.is_special()? {
        return Err(EngineError::NotSpecial);
    }
    let mut bld = CertBuilder::new(&field, n, Claim::Cotame).with_cap(cap).with_probe_bound(opts.probe_bound);
    let seed = bld.add_seed("phi", input.clone())?;
    if bld.value(seed).is_identity() {
        return Err(EngineError::IdentityInput);
    }
    if is_exponential_word(input) {
        bld.meta("path", "exponential");
        let terminal = crate::lnd::reduce_exponential_word(&mut bld, seed, input)?;
        return Ok(bld.finish(terminal));
    }
    let normal = normalize_m_triangular(input, cap)?;
    let terminal = match normal {
        Normal::Affine(_) => {
            bld.meta("path", "affine");
            reduce_affine(&mut bld, seed)?
        }
        Normal::Form(form) => {
            let m = form.m();
            if m > 4 {
                return Err(EngineError::UnsupportedM(m));
            }
            bld.meta("path", "m-triangular");
            bld.meta("m", format!("{m}"));
            reduce_form(&mut bld, seed, form)?
        }
    };
    Ok(bld.finish(terminal))
}
