//! Membership constructions for the normal closure of special linear maps:
//! translations, linear elementary maps, and monomial elementary maps.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use cotame_core::cert::{Certificate, Claim, NodeRef};
use cotame_core::{BasicFactor, Endo, FactoredAuto, Field, Matrix, Poly, Scalar};

use crate::builder::{conj, delta, eps, eps_const, eps_value, plain, CertBuilder};
use crate::error::{EngineError, Result};

/// Bound on the number of rational units scanned when a unit must be chosen.
pub const DEFAULT_UNIT_BOUND: usize = 256;

/// `ε_{i,a}⁻¹ δ_{i,j,b} ε_{i,a} δ_{i,j,b}⁻¹ = ε_{i,ab−a}`, with `δ_{i,j,b}` as base node.
pub fn commutator_step(bld: &mut CertBuilder, delta_node: NodeRef, i: usize, a: &Scalar, b: &Scalar) -> Result<NodeRef> {
    let f = bld.field().clone();
    let n = bld.n();
    let shift = f.sub(&f.mul(a, b), a);
    let expected = eps_const(&f, n, i, shift).expand()?;
    bld.step(
        "commutator",
        vec![conj(eps_const(&f, n, i, a.clone()), delta_node, 1), plain(delta_node, -1)],
        Some(&expected),
    )
}

/// Standalone certificate for the commutator formula with seed `δ_{i,j,b}`.
pub fn commutator_identity(field: &Field, n: usize, i: usize, j: usize, a: &Scalar, b: &Scalar) -> Result<Certificate> {
    if i == j || i >= n || j >= n {
        return Err(EngineError::IndexClash);
    }
    let mut bld = CertBuilder::new(field, n, Claim::Slin);
    let d = bld.add_seed("delta", delta(field, n, i, j, b)?)?;
    let s = commutator_step(&mut bld, d, i, a, b)?;
    Ok(bld.finish(s))
}

/// From a node equal to `ε_{i,c}` derive a node equal to `ε_{j,d}`.
pub fn translation_transfer(bld: &mut CertBuilder, src: NodeRef, i: usize, c: &Scalar, j: usize, d: &Scalar) -> Result<NodeRef> {
    let f = bld.field().clone();
    let n = bld.n();
    if f.is_zero(c) {
        return Err(EngineError::ZeroScalar);
    }
    if f.is_zero(d) {
        return Err(EngineError::DegenerateTarget);
    }
    if n < 2 {
        return Err(EngineError::IndexClash);
    }
    let same_axis = if f.add(c, d) == f.zero() {
        bld.step("invert", vec![plain(src, -1)], Some(&eps_const(&f, n, i, d.clone()).expand()?))?
    } else if c == d {
        src
    } else {
        // ε_{i,c}⁻¹ (δ ε_{i,c} δ⁻¹) with δ = δ_{i,k,1+d/c}
        let k = if i == 0 { 1 } else { 0 };
        let b = f.add(&f.one(), &f.div(d, c)?);
        let dl = delta(&f, n, i, k, &b)?;
        bld.step(
            "rescale",
            vec![plain(src, -1), conj(dl.inverse(), src, 1)],
            Some(&eps_const(&f, n, i, d.clone()).expand()?),
        )?
    };
    if j == i {
        return Ok(same_axis);
    }
    // ε_{i,d}⁻¹ (ε_{j,x_i} ε_{i,d} ε_{j,x_i}⁻¹)
    let g = eps(&f, j, Poly::var(&f, n, i).neg());
    bld.step("transfer", vec![plain(same_axis, -1), conj(g, same_axis, 1)], Some(&eps_const(&f, n, j, d.clone()).expand()?))
}

/// From a node holding a nontrivial translation `γ`, derive some `ε_{i,c}`.
pub fn translation_from_any(bld: &mut CertBuilder, src: NodeRef) -> Result<(NodeRef, usize, Scalar)> {
    let f = bld.field().clone();
    let n = bld.n();
    let b = bld.value(src).as_translation().ok_or(EngineError::Algebra(cotame_core::Error::NotAffine))?;
    let nonzero: Vec<usize> = (0..n).filter(|&k| !f.is_zero(&b[k])).collect();
    let Some(&j) = nonzero.first() else {
        return Err(EngineError::IdentityInput);
    };
    if nonzero.len() == 1 {
        return Ok((src, j, b[j].clone()));
    }
    let i = if j == 0 { 1 } else { 0 };
    // γ⁻¹ (ε_{i,x_j} γ ε_{i,x_j}⁻¹)
    let g = eps(&f, i, Poly::var(&f, n, j).neg());
    let expected = eps_const(&f, n, i, b[j].clone()).expand()?;
    let node = bld.step("axis-translation", vec![plain(src, -1), conj(g, src, 1)], Some(&expected))?;
    Ok((node, i, b[j].clone()))
}

/// From a node holding a special affine map `α ≠ id`, derive a nontrivial translation.
pub fn translation_from_special_affine(bld: &mut CertBuilder, src: NodeRef) -> Result<NodeRef> {
    let f = bld.field().clone();
    let n = bld.n();
    let alpha = bld.value(src).clone();
    let (m, _) = alpha.as_affine().ok_or(EngineError::Algebra(cotame_core::Error::NotAffine))?;
    if alpha.is_identity() {
        return Err(EngineError::IdentityInput);
    }
    if !f.is_one(&m.det()) {
        return Err(EngineError::NotSpecial);
    }
    if m.is_identity() {
        return Ok(src);
    }
    let mut pick = None;
    'scan: for i in 0..n {
        for j in 0..n {
            let kron = if i == j { f.one() } else { f.zero() };
            if *m.get(i, j) != kron {
                pick = Some(j);
                break 'scan;
            }
        }
    }
    let j = pick.expect("non-identity matrix");
    let shift: Vec<Scalar> = (0..n).map(|k| f.sub(m.get(k, j), &if k == j { f.one() } else { f.zero() })).collect();
    let expected = Endo::translation(&f, &shift);
    // (ε_{j,1}⁻¹ α ε_{j,1}) α⁻¹
    bld.step("affine-to-translation", vec![conj(eps_const(&f, n, j, f.one()), src, 1), plain(src, -1)], Some(&expected))
}

fn require_not_f2(field: &Field) -> Result<()> {
    if field.order() == Some(2) {
        return Err(EngineError::UnsupportedField("F2 is outside the supported range".into()));
    }
    Ok(())
}

fn require_slin_field(field: &Field) -> Result<()> {
    if field.is_prime_field() {
        return Err(EngineError::UnsupportedField(format!("prime field F{} is outside the supported range", field.characteristic())));
    }
    Ok(())
}

/// Builds elements of the normal closure of special linear seeds, sharing a
/// single root translation and caching derived translations.
pub struct SlinBuilder {
    bld: CertBuilder,
    unit_bound: usize,
    root: Option<(NodeRef, usize, Scalar)>,
    translations: BTreeMap<(usize, Scalar), NodeRef>,
    deltas: BTreeMap<(usize, usize, Scalar), NodeRef>,
    cases: BTreeSet<&'static str>,
    max_depth: usize,
}

impl SlinBuilder {
    pub fn new(field: &Field, n: usize) -> Result<SlinBuilder> {
        if n < 2 {
            return Err(EngineError::IndexClash);
        }
        require_not_f2(field)?;
        Ok(SlinBuilder {
            bld: CertBuilder::new(field, n, Claim::Slin),
            unit_bound: DEFAULT_UNIT_BOUND,
            root: None,
            translations: BTreeMap::new(),
            deltas: BTreeMap::new(),
            cases: BTreeSet::new(),
            max_depth: 0,
        })
    }

    pub fn with_unit_bound(mut self, bound: usize) -> SlinBuilder {
        self.unit_bound = bound;
        self
    }

    pub fn builder(&mut self) -> &mut CertBuilder {
        &mut self.bld
    }

    pub fn cases(&self) -> &BTreeSet<&'static str> {
        &self.cases
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    fn field(&self) -> Field {
        self.bld.field().clone()
    }

    fn root(&mut self) -> Result<(NodeRef, usize, Scalar)> {
        if let Some(r) = &self.root {
            return Ok(r.clone());
        }
        let f = self.field();
        let n = self.bld.n();
        let mut m = Matrix::identity(&f, n);
        m.set(0, 1, f.one());
        let seed = self.bld.add_seed("shear", FactoredAuto::from_factor(&f, BasicFactor::Linear(m)))?;
        let t = translation_from_special_affine(&mut self.bld, seed)?;
        let r = translation_from_any(&mut self.bld, t)?;
        self.translations.insert((r.1, r.2.clone()), r.0);
        self.root = Some(r.clone());
        Ok(r)
    }

    /// Node equal to `ε_{j,d}`, `d ≠ 0`.
    pub fn translation(&mut self, j: usize, d: &Scalar) -> Result<NodeRef> {
        if let Some(&r) = self.translations.get(&(j, d.clone())) {
            return Ok(r);
        }
        let (src, i, c) = self.root()?;
        let node = translation_transfer(&mut self.bld, src, i, &c, j, d)?;
        self.translations.insert((j, d.clone()), node);
        Ok(node)
    }

    fn delta_seed(&mut self, i: usize, j: usize, b: &Scalar) -> Result<NodeRef> {
        if let Some(&r) = self.deltas.get(&(i, j, b.clone())) {
            return Ok(r);
        }
        let f = self.field();
        let d = delta(&f, self.bld.n(), i, j, b)?;
        let label = format!("delta{}", self.deltas.len() + 1);
        let r = self.bld.add_seed(&label, d)?;
        self.deltas.insert((i, j, b.clone()), r);
        Ok(r)
    }

    /// Node equal to `ε_{i,a x_j}` built from translations only.
    pub fn linear_elementary(&mut self, i: usize, j: usize, a: &Scalar) -> Result<NodeRef> {
        let f = self.field();
        let n = self.bld.n();
        if i == j {
            return Err(EngineError::IndexClash);
        }
        if f.is_zero(a) {
            return Err(EngineError::ZeroScalar);
        }
        let target = eps_value(i, &Poly::var(&f, n, j).scale(a))?;
        let xj = Poly::var(&f, n, j);
        if f.characteristic() != 2 {
            let two = f.from_i64(2);
            let four = f.from_i64(4);
            let half = f.div(a, &two)?;
            let t1 = self.translation(i, &f.neg(&f.div(&f.mul(a, a), &four)?))?;
            let t2 = self.translation(j, &f.neg(&half))?;
            let t3 = self.translation(j, &half)?;
            // ε_{i,−a²/4} ε_{j,−a/2} (ε_{i,x_j²} ε_{j,a/2} ε_{i,x_j²}⁻¹)
            let g = eps(&f, i, xj.pow(2).neg());
            return self.bld.step("linear-elementary", vec![plain(t1, 1), plain(t2, 1), conj(g, t3, 1)], Some(&target));
        }
        let b = f.units(self.unit_bound).into_iter().find(|u| u != a).ok_or(EngineError::NoSuchUnit)?;
        let c = f.div(&f.mul(&b, &b), &f.sub(a, &b))?;
        let cb3 = f.mul(&c, &f.pow(&b, 3));
        let bc3 = f.mul(&b, &f.pow(&c, 3));
        let dl = delta(&f, n, i, j, &c)?;
        // δ⁻¹ (ε_{i,−cb³} ε_{j,−b} (ε_{i,cx_j³} ε_{j,b} ε_{i,cx_j³}⁻¹)
        //      ε_{i,−bc³} ε_{j,−c} (ε_{i,bx_j³} ε_{j,c} ε_{i,bx_j³}⁻¹)) δ
        let mut items = Vec::new();
        for (u, v, w) in [(&c, &b, &cb3), (&b, &c, &bc3)] {
            let t_const = self.translation(i, &f.neg(w))?;
            let t_back = self.translation(j, &f.neg(v))?;
            let t_fwd = self.translation(j, v)?;
            let g = eps(&f, i, xj.pow(3).scale(&f.neg(u))).then(&dl);
            items.push(conj(dl.clone(), t_const, 1));
            items.push(conj(dl.clone(), t_back, 1));
            items.push(conj(g, t_fwd, 1));
        }
        self.bld.step("linear-elementary-char2", items, Some(&target))
    }

    /// Node equal to `ε_{1,f}` for `f ∈ K[x_2..x_n]`, or `None` when `f = 0`.
    pub fn first_axis(&mut self, f: &Poly, depth: usize) -> Result<Option<NodeRef>> {
        let terms = f.monomials();
        if terms.is_empty() {
            return Ok(None);
        }
        let mut nodes = Vec::with_capacity(terms.len());
        for (c, m) in &terms {
            nodes.push(self.monomial(c, m.exps(), depth)?);
        }
        if nodes.len() == 1 {
            return Ok(Some(nodes[0]));
        }
        let expected = eps_value(0, f)?;
        let node = self.bld.step("sum", nodes.into_iter().map(|r| plain(r, 1)).collect(), Some(&expected))?;
        Ok(Some(node))
    }

    /// Node equal to `ε_{1,aM}` where `M = x^exps` does not involve `x_1`.
    pub fn monomial(&mut self, a: &Scalar, exps: &[u32], depth: usize) -> Result<NodeRef> {
        let f = self.field();
        let n = self.bld.n();
        debug_assert_eq!(exps[0], 0);
        self.max_depth = self.max_depth.max(depth + 1);
        let m = Poly::monomial(&f, f.one(), exps.to_vec());
        let am = m.scale(a);
        let target = eps_value(0, &am)?;
        let deg: u32 = exps.iter().sum();
        if deg == 0 {
            self.cases.insert("base-translation");
            return self.translation(0, a);
        }
        let q = f.order();
        // Case 1
        let case1 = (1..n).find(|&i| match q {
            None => true,
            Some(q) => (exps[i] + 1) % (q - 1) != 0,
        });
        if let Some(i) = case1 {
            let e = (exps[i] + 1) as u64;
            let b = f
                .units(self.unit_bound)
                .into_iter()
                .find(|b| !f.is_one(&f.pow(b, e)))
                .ok_or(EngineError::NoSuchUnit)?;
            let c = f.div(a, &f.sub(&f.one(), &f.pow(&b, e)))?;
            let d = self.delta_seed(0, i, &b)?;
            // δ_{1,i,b} ε_{1,cM}⁻¹ δ_{i,1,b} ε_{1,cM}
            let g = eps(&f, 0, m.scale(&c));
            let node = self.bld.step("case1", vec![plain(d, 1), conj(g, d, -1)], Some(&target))?;
            self.bld.note(node, format!("i = {}", i + 1));
            self.cases.insert("case1");
            return Ok(node);
        }
        if deg == 1 {
            self.cases.insert("base-linear");
            let j = (1..n).find(|&j| exps[j] == 1).expect("degree one");
            return self.linear_elementary(0, j, a);
        }
        let p = f.characteristic();
        // Case 2a
        if let Some(j) = (1..n).find(|&j| (exps[j] + 1) % p != 0) {
            let big_a = f.div(a, &f.from_i64(exps[j] as i64 + 1))?;
            let xjm = m.mul(&Poly::var(&f, n, j));
            let mut shift = Endo::identity(&f, n).into_comps();
            shift[j] = shift[j].add(&Poly::one(&f, n));
            let shifted = xjm.substitute(&shift, None)?;
            let g = shifted.scale(&big_a).sub(&xjm.scale(&big_a)).sub(&am);
            let rest = self.first_axis(&g.neg(), depth + 1)?;
            let t_minus = self.translation(j, &f.neg(&f.one()))?;
            let t_plus = self.translation(j, &f.one())?;
            let mut items = Vec::new();
            if let Some(r) = rest {
                items.push(plain(r, 1));
            }
            items.push(plain(t_minus, 1));
            items.push(conj(eps(&f, 0, xjm.scale(&f.neg(&big_a))), t_plus, 1));
            let node = self.bld.step("case2a", items, Some(&target))?;
            self.cases.insert("case2a");
            return Ok(node);
        }
        // Case 2b
        let k = (1..n).find(|&k| exps[k] > 1).ok_or(EngineError::NoSuchUnit)?;
        let binom = f.from_i64(binomial_mod(exps[k] as u64 + p as u64, p as u64, p as u64) as i64);
        let elements = f.elements().ok_or(EngineError::NoSuchUnit)?;
        let b = elements
            .into_iter()
            .find(|b| f.mul(&f.pow(b, p as u64), &binom) == *a)
            .ok_or(EngineError::NoSuchUnit)?;
        let xkpm = m.mul(&Poly::var(&f, n, k).pow(p));
        let mut shift = Endo::identity(&f, n).into_comps();
        shift[k] = shift[k].add(&Poly::constant(&f, n, b.clone()));
        let fpoly = xkpm.substitute(&shift, None)?.sub(&xkpm);
        let t_minus = self.translation(k, &f.neg(&b))?;
        let t_plus = self.translation(k, &b)?;
        // ε_{k,−b} (ε_{1,x_k^p M} ε_{k,b} ε_{1,x_k^p M}⁻¹) = ε_{1,f}
        let f_node = self.bld.step(
            "case2b-shift",
            vec![plain(t_minus, 1), conj(eps(&f, 0, xkpm.neg()), t_plus, 1)],
            Some(&eps_value(0, &fpoly)?),
        )?;
        self.cases.insert("case2b");
        let residual = fpoly.sub(&am);
        match self.first_axis(&residual, depth + 1)? {
            None => Ok(f_node),
            Some(r) => self.bld.step("case2b", vec![plain(f_node, 1), plain(r, -1)], Some(&target)),
        }
    }

    /// Node equal to `ε_{k,aM}` for a monomial `M` free of `x_k`.
    pub fn monomial_on_axis(&mut self, k: usize, a: &Scalar, exps: &[u32]) -> Result<NodeRef> {
        let f = self.field();
        let n = self.bld.n();
        if exps[k] != 0 {
            return Err(EngineError::Algebra(cotame_core::Error::InvalidFactor(format!("monomial involves x{}", k + 1))));
        }
        if k == 0 {
            return self.monomial(a, exps, 0);
        }
        // conjugate by σ = (−x_k, x_2, .., x_1, ..)
        let mut moved = exps.to_vec();
        moved[k] = moved[0];
        moved[0] = 0;
        let inner = self.monomial(&f.neg(a), &moved, 0)?;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, k);
        let mut signs = vec![f.one(); n];
        signs[0] = f.neg(&f.one());
        let sigma = FactoredAuto::from_factor(&f, BasicFactor::signed_permutation(&f, perm, signs)?);
        let target = eps_value(k, &Poly::monomial(&f, a.clone(), exps.to_vec()))?;
        self.bld.step("axis-swap", vec![conj(sigma, inner, 1)], Some(&target))
    }

    pub fn finish(mut self, terminal: NodeRef) -> Certificate {
        for c in self.cases.clone() {
            self.bld.meta("case", c);
        }
        let depth = self.max_depth.to_string();
        self.bld.meta("max-depth", depth);
        self.bld.meta("path", "slin");
        self.bld.finish(terminal)
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut out = 1u64;
    while k > 0 || n > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        let mut c = 1u64;
        for t in 0..ki {
            c = c * (ni - t) / (t + 1);
        }
        out = out * (c % p) % p;
        n /= p;
        k /= p;
    }
    out
}

/// Certificate that `ε_{k,aM}` lies in the normal closure of special linear maps.
pub fn slin_from_monomial_elementary(field: &Field, n: usize, k: usize, a: &Scalar, exps: &[u32]) -> Result<Certificate> {
    slin_from_monomial_elementary_bounded(field, n, k, a, exps, DEFAULT_UNIT_BOUND)
}

/// As [`slin_from_monomial_elementary`], scanning at most `unit_bound` units when one must be chosen.
pub fn slin_from_monomial_elementary_bounded(
    field: &Field,
    n: usize,
    k: usize,
    a: &Scalar,
    exps: &[u32],
    unit_bound: usize,
) -> Result<Certificate> {
    require_slin_field(field)?;
    if field.is_zero(a) {
        return Err(EngineError::ZeroScalar);
    }
    if exps.len() != n || k >= n {
        return Err(EngineError::Algebra(cotame_core::Error::ArityMismatch { expected: n, found: exps.len() }));
    }
    let mut s = SlinBuilder::new(field, n)?.with_unit_bound(unit_bound);
    let node = s.monomial_on_axis(k, a, exps)?;
    Ok(s.finish(node))
}

/// Certificate for `ε_{i,f}`, one fragment per monomial of `f`.
pub fn slin_from_elementary(field: &Field, i: usize, f: &Poly) -> Result<Certificate> {
    slin_from_elementary_bounded(field, i, f, DEFAULT_UNIT_BOUND)
}

pub fn slin_from_elementary_bounded(field: &Field, i: usize, f: &Poly, unit_bound: usize) -> Result<Certificate> {
    require_slin_field(field)?;
    let n = f.nvars();
    if f.is_zero() {
        return Err(EngineError::IdentityInput);
    }
    if i >= n || f.depends_on(i) {
        return Err(EngineError::Algebra(cotame_core::Error::InvalidFactor(format!("polynomial involves x{}", i + 1))));
    }
    let mut s = SlinBuilder::new(field, n)?.with_unit_bound(unit_bound);
    let mut nodes = Vec::new();
    for (c, m) in f.monomials() {
        nodes.push(s.monomial_on_axis(i, &c, m.exps())?);
    }
    let node = if nodes.len() == 1 {
        nodes[0]
    } else {
        let target = eps_value(i, f)?;
        s.builder().step("product", nodes.into_iter().map(|r| plain(r, 1)).collect(), Some(&target))?
    };
    Ok(s.finish(node))
}

/// Fragment producing `ε_{i,a x_j}` from translation seeds.
pub fn linear_elementary_from_translations(field: &Field, n: usize, i: usize, j: usize, a: &Scalar) -> Result<Certificate> {
    let mut s = SlinBuilder::new(field, n)?;
    let node = s.linear_elementary(i, j, a)?;
    Ok(s.finish(node))
}

/// Whether the field is one where the monomial constructions apply.
pub fn slin_supported(field: &Field) -> bool {
    !field.is_prime_field()
}

#[cfg(test)]
mod tests {
    use super::*;
    use cotame_core::cert::{verify_certificate, Verdict};

    fn pass(c: &Certificate) {
        let r = verify_certificate(c);
        assert_eq!(r.verdict, Verdict::Pass, "{r}");
    }

    #[test]
    fn commutator_examples() {
        let q = Field::rationals();
        let c = commutator_identity(&q, 2, 0, 1, &q.from_i64(3), &q.from_i64(2)).unwrap();
        assert_eq!(c.terminal_value().unwrap(), &eps_const(&q, 2, 0, q.from_i64(3)).expand().unwrap());
        pass(&c);
        let c = commutator_identity(&q, 2, 0, 1, &q.from_i64(7), &q.one()).unwrap();
        assert!(c.terminal_value().unwrap().is_identity());
        let f4 = Field::finite(4).unwrap();
        let g = f4.generator().unwrap();
        let c = commutator_identity(&f4, 2, 0, 1, &f4.one(), &g).unwrap();
        let expected = eps_const(&f4, 2, 0, f4.add(&g, &f4.one())).expand().unwrap();
        assert_eq!(c.terminal_value().unwrap(), &expected);
    }

    #[test]
    fn transfers() {
        let q = Field::rationals();
        let mut b = CertBuilder::new(&q, 2, Claim::Cotame);
        let src = b.add_seed("t", eps_const(&q, 2, 0, q.one())).unwrap();
        let inv = translation_transfer(&mut b, src, 0, &q.one(), 0, &q.from_i64(-1)).unwrap();
        assert_eq!(b.step_count(), 1);
        assert_eq!(b.value(inv), &eps_const(&q, 2, 0, q.from_i64(-1)).expand().unwrap());
        let t = translation_transfer(&mut b, src, 0, &q.one(), 1, &q.from_i64(5)).unwrap();
        assert_eq!(b.value(t), &eps_const(&q, 2, 1, q.from_i64(5)).expand().unwrap());
        assert_eq!(translation_transfer(&mut b, src, 0, &q.one(), 0, &q.zero()), Err(EngineError::DegenerateTarget));
        pass(&b.finish(t));
    }

    #[test]
    fn translation_from_any_examples() {
        let q = Field::rationals();
        let mut b = CertBuilder::new(&q, 2, Claim::Cotame);
        let g = b.add_seed("g", FactoredAuto::from_factor(&q, BasicFactor::Translation(vec![q.one(), q.from_i64(3)]))).unwrap();
        let (node, i, c) = translation_from_any(&mut b, g).unwrap();
        assert_eq!((i, c.clone()), (1, q.one()));
        assert_eq!(b.value(node), &eps_const(&q, 2, 1, q.one()).expand().unwrap());
        let id = b.add_seed("id", FactoredAuto::identity(&q, 2)).unwrap();
        assert_eq!(translation_from_any(&mut b, id).unwrap_err(), EngineError::IdentityInput);
    }

    #[test]
    fn affine_to_translation() {
        let q = Field::rationals();
        let mut b = CertBuilder::new(&q, 2, Claim::Slin);
        let d = b.add_seed("d", delta(&q, 2, 0, 1, &q.from_i64(2)).unwrap()).unwrap();
        let t = translation_from_special_affine(&mut b, d).unwrap();
        // column 1 of diag(2, 1/2) minus e_1
        assert_eq!(b.value(t).as_translation().unwrap(), vec![q.one(), q.zero()]);
        let id = b.add_seed("id", FactoredAuto::identity(&q, 2)).unwrap();
        assert_eq!(translation_from_special_affine(&mut b, id).unwrap_err(), EngineError::IdentityInput);
    }

    #[test]
    fn linear_elementary_both_characteristics() {
        let q = Field::rationals();
        pass(&linear_elementary_from_translations(&q, 2, 0, 1, &q.from_i64(2)).unwrap());
        let f4 = Field::finite(4).unwrap();
        pass(&linear_elementary_from_translations(&f4, 2, 0, 1, &f4.one()).unwrap());
        pass(&linear_elementary_from_translations(&f4, 3, 2, 0, &f4.generator().unwrap()).unwrap());
        let f2 = Field::prime(2).unwrap();
        assert!(matches!(linear_elementary_from_translations(&f2, 2, 0, 1, &f2.one()), Err(EngineError::UnsupportedField(_))));
    }

    #[test]
    fn monomial_cases() {
        let q = Field::rationals();
        let c = slin_from_monomial_elementary(&q, 2, 0, &q.one(), &[0, 2]).unwrap();
        pass(&c);
        assert!(c.meta_values("case").any(|v| v == "case1"));
        let f4 = Field::finite(4).unwrap();
        let c = slin_from_monomial_elementary(&f4, 2, 0, &f4.one(), &[0, 2]).unwrap();
        pass(&c);
        assert!(c.meta_values("case").any(|v| v == "case2a"));
        let c = slin_from_monomial_elementary(&f4, 2, 0, &f4.generator().unwrap(), &[0, 5]).unwrap();
        pass(&c);
        assert!(c.meta_values("case").any(|v| v == "case2b"));
        let f9 = Field::finite(9).unwrap();
        let c = slin_from_monomial_elementary(&f9, 2, 1, &f9.one(), &[7, 0]).unwrap();
        pass(&c);
        assert!(c.meta_values("case").any(|v| v == "case2a"));
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(slin_from_monomial_elementary(&f5, 2, 0, &f5.one(), &[0, 1]), Err(EngineError::UnsupportedField(_))));
    }

    #[test]
    fn elementary_sum_and_finite_field() {
        let q = Field::rationals();
        let x2 = Poly::var(&q, 2, 1);
        pass(&slin_from_elementary(&q, 0, &x2.add(&x2.pow(2))).unwrap());
        let f9 = Field::finite(9).unwrap();
        pass(&slin_from_elementary(&f9, 1, &Poly::var(&f9, 2, 0).pow(3)).unwrap());
        assert_eq!(slin_from_elementary(&q, 0, &Poly::zero(&q, 2)).unwrap_err(), EngineError::IdentityInput);
    }

    #[test]
    fn lucas() {
        assert_eq!(binomial_mod(4, 2, 2), 0);
        assert_eq!(binomial_mod(5, 2, 3), 1);
        assert_eq!(binomial_mod(7, 3, 5), 0);
        assert_eq!(binomial_mod(6, 3, 5), 0);
        assert_eq!(binomial_mod(6, 2, 7), 1);
    }
}
