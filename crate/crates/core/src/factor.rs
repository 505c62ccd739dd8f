//! Factored automorphisms: words in basic factors, each with an exact inverse.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::derivation::TriDerivation;
use crate::endo::{Endo, VecDeg};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::poly::{Poly, DEFAULT_DEGREE_CAP};

/// `(x_i)τ = scales[i]·x_i + tails[i]` with `tails[i] ∈ K[x_1..x_{i-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangular {
    scales: Vec<Scalar>,
    tails: Vec<Poly>,
}

impl Triangular {
    pub fn new(field: &Field, scales: Vec<Scalar>, tails: Vec<Poly>) -> Result<Triangular> {
        let n = scales.len();
        if tails.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: tails.len() });
        }
        for (i, (a, t)) in scales.iter().zip(&tails).enumerate() {
            if field.is_zero(a) {
                return Err(Error::InvalidFactor(format!("zero scale on x{}", i + 1)));
            }
            if t.field() != field || !field.contains(a) {
                return Err(Error::FieldMismatch);
            }
            if t.nvars() != n {
                return Err(Error::ArityMismatch { expected: n, found: t.nvars() });
            }
            if !t.only_vars_below(i) {
                return Err(Error::InvalidFactor(format!("component {} is not lower triangular", i + 1)));
            }
        }
        Ok(Triangular { scales, tails })
    }

    pub(crate) fn new_unchecked(scales: Vec<Scalar>, tails: Vec<Poly>) -> Triangular {
        Triangular { scales, tails }
    }

    pub fn field(&self) -> &Field {
        self.tails[0].field()
    }

    pub fn n(&self) -> usize {
        self.scales.len()
    }

    pub fn scales(&self) -> &[Scalar] {
        &self.scales
    }

    pub fn tails(&self) -> &[Poly] {
        &self.tails
    }

    pub fn jacobian(&self) -> Scalar {
        let f = self.field();
        self.scales.iter().fold(f.one(), |acc, a| f.mul(&acc, a))
    }

    pub fn vector_degree(&self) -> VecDeg {
        VecDeg(self.tails.iter().map(Poly::total_degree).collect())
    }

    pub fn to_endo(&self) -> Endo {
        let f = self.field();
        let n = self.n();
        let comps = (0..n).map(|i| Poly::var(f, n, i).scale(&self.scales[i]).add(&self.tails[i])).collect();
        Endo::new(f, comps).expect("well-formed triangular map")
    }

    /// Back-substitution: `(x_i)τ⁻¹ = (x_i − P_i((x)τ⁻¹)) / a_i`.
    pub fn inverse(&self) -> Result<Triangular> {
        let f = self.field().clone();
        let n = self.n();
        let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(&f, n, i)).collect();
        let mut scales = Vec::with_capacity(n);
        let mut tails = Vec::with_capacity(n);
        for i in 0..n {
            let ainv = f.inv(&self.scales[i])?;
            let p = self.tails[i].substitute(&images, Some(DEFAULT_DEGREE_CAP))?;
            let tail = p.scale(&f.neg(&ainv));
            images[i] = Poly::var(&f, n, i).scale(&ainv).add(&tail);
            scales.push(ainv);
            tails.push(tail);
        }
        Ok(Triangular { scales, tails })
    }
}

/// A single generator with a closed-form expansion and inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicFactor {
    Linear(Matrix),
    Translation(Vec<Scalar>),
    Elementary { i: usize, f: Poly },
    Triangular(Triangular),
    /// `exp(F·D)` with `F ∈ ker D`.
    Exp { f: Poly, d: TriDerivation },
    /// `(x_i) ↦ signs[i]·x_{perm[i]}`.
    SignedPermutation { perm: Vec<usize>, signs: Vec<Scalar> },
}

impl BasicFactor {
    pub fn elementary(i: usize, f: Poly) -> Result<BasicFactor> {
        Endo::elementary(i, &f)?;
        Ok(BasicFactor::Elementary { i, f })
    }

    pub fn signed_permutation(field: &Field, perm: Vec<usize>, signs: Vec<Scalar>) -> Result<BasicFactor> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: signs.len() });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidFactor(format!("not a permutation of 1..{n}")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|s| field.is_zero(s)) {
            return Err(Error::InvalidFactor("zero scale in signed permutation".into()));
        }
        Ok(BasicFactor::SignedPermutation { perm, signs })
    }

    /// `x_i ↔ x_j` with `x_i ↦ -x_j` so that the Jacobian is 1 (plain swap if `i == j`).
    pub fn special_swap(field: &Field, n: usize, i: usize, j: usize) -> BasicFactor {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut signs = vec![field.one(); n];
        if i != j {
            perm.swap(i, j);
            signs[i] = field.neg(&field.one());
        }
        BasicFactor::SignedPermutation { perm, signs }
    }

    pub fn n(&self) -> usize {
        match self {
            BasicFactor::Linear(m) => m.n(),
            BasicFactor::Translation(b) => b.len(),
            BasicFactor::Elementary { f, .. } => f.nvars(),
            BasicFactor::Triangular(t) => t.n(),
            BasicFactor::Exp { f, .. } => f.nvars(),
            BasicFactor::SignedPermutation { perm, .. } => perm.len(),
        }
    }

    pub fn expand(&self, field: &Field) -> Result<Endo> {
        match self {
            BasicFactor::Linear(m) => Ok(Endo::from_linear(m)),
            BasicFactor::Translation(b) => Ok(Endo::translation(field, b)),
            BasicFactor::Elementary { i, f } => Endo::elementary(*i, f),
            BasicFactor::Triangular(t) => Ok(t.to_endo()),
            BasicFactor::Exp { f, d } => d.exp_automorphism(f),
            BasicFactor::SignedPermutation { perm, signs } => {
                let n = perm.len();
                let comps = (0..n).map(|i| Poly::var(field, n, perm[i]).scale(&signs[i])).collect();
                Endo::new(field, comps)
            }
        }
    }

    pub fn inverse(&self, field: &Field) -> Result<BasicFactor> {
        Ok(match self {
            BasicFactor::Linear(m) => BasicFactor::Linear(m.inverse()?),
            BasicFactor::Translation(b) => BasicFactor::Translation(b.iter().map(|v| field.neg(v)).collect()),
            BasicFactor::Elementary { i, f } => BasicFactor::Elementary { i: *i, f: f.neg() },
            BasicFactor::Triangular(t) => BasicFactor::Triangular(t.inverse()?),
            BasicFactor::Exp { f, d } => BasicFactor::Exp { f: f.neg(), d: d.clone() },
            BasicFactor::SignedPermutation { perm, signs } => {
                let n = perm.len();
                let mut p = vec![0; n];
                let mut s = vec![field.one(); n];
                for i in 0..n {
                    p[perm[i]] = i;
                    s[perm[i]] = field.inv(&signs[i])?;
                }
                BasicFactor::SignedPermutation { perm: p, signs: s }
            }
        })
    }

    /// Constant Jacobian determinant of the factor.
    pub fn jacobian(&self, field: &Field) -> Scalar {
        match self {
            BasicFactor::Linear(m) => m.det(),
            BasicFactor::Triangular(t) => t.jacobian(),
            BasicFactor::SignedPermutation { perm, signs } => {
                let mut det = signs.iter().fold(field.one(), |acc, s| field.mul(&acc, s));
                let mut seen = vec![false; perm.len()];
                for start in 0..perm.len() {
                    let mut len = 0;
                    let mut j = start;
                    while !seen[j] {
                        seen[j] = true;
                        j = perm[j];
                        len += 1;
                    }
                    if len > 0 && len % 2 == 0 {
                        det = field.neg(&det);
                    }
                }
                det
            }
            _ => field.one(),
        }
    }
}

/// A word `f_1^{e_1} ⋯ f_k^{e_k}` read left to right in the right-action convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredAuto {
    field: Field,
    n: usize,
    word: Vec<(BasicFactor, i8)>,
}

impl FactoredAuto {
    pub fn identity(field: &Field, n: usize) -> FactoredAuto {
        FactoredAuto { field: field.clone(), n, word: Vec::new() }
    }

    pub fn from_factor(field: &Field, f: BasicFactor) -> FactoredAuto {
        let n = f.n();
        FactoredAuto { field: field.clone(), n, word: vec![(f, 1)] }
    }

    pub fn from_word(field: &Field, n: usize, word: Vec<(BasicFactor, i8)>) -> Result<FactoredAuto> {
        for (f, e) in &word {
            if f.n() != n {
                return Err(Error::ArityMismatch { expected: n, found: f.n() });
            }
            if *e != 1 && *e != -1 {
                return Err(Error::InvalidFactor(format!("exponent {e} is not ±1")));
            }
        }
        Ok(FactoredAuto { field: field.clone(), n, word })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[(BasicFactor, i8)] {
        &self.word
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn push(&mut self, f: BasicFactor, e: i8) {
        assert_eq!(f.n(), self.n);
        self.word.push((f, e));
    }

    /// Concatenation `self · other`.
    pub fn then(&self, other: &FactoredAuto) -> FactoredAuto {
        assert_eq!(self.n, other.n);
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        FactoredAuto { field: self.field.clone(), n: self.n, word }
    }

    pub fn inverse(&self) -> FactoredAuto {
        let word = self.word.iter().rev().map(|(f, e)| (f.clone(), -e)).collect();
        FactoredAuto { field: self.field.clone(), n: self.n, word }
    }

    /// `g⁻¹ φ g`.
    pub fn conj(&self, g: &FactoredAuto) -> FactoredAuto {
        g.inverse().then(self).then(g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn comm(a: &FactoredAuto, b: &FactoredAuto) -> FactoredAuto {
        a.inverse().then(&b.inverse()).then(a).then(b)
    }

    /// Word with every `^-1` resolved into an inverse factor.
    pub fn normalized(&self) -> Result<FactoredAuto> {
        let word = self
            .word
            .iter()
            .map(|(f, e)| if *e == 1 { Ok((f.clone(), 1)) } else { f.inverse(&self.field).map(|g| (g, 1)) })
            .collect::<Result<Vec<_>>>()?;
        Ok(FactoredAuto { field: self.field.clone(), n: self.n, word })
    }

    pub fn expand(&self) -> Result<Endo> {
        self.expand_capped(Some(DEFAULT_DEGREE_CAP))
    }

    pub fn expand_capped(&self, cap: Option<u32>) -> Result<Endo> {
        let mut acc = Endo::identity(&self.field, self.n);
        for (f, e) in &self.word {
            let g = if *e == 1 { f.expand(&self.field)? } else { f.inverse(&self.field)?.expand(&self.field)? };
            acc = acc.compose_capped(&g, cap)?;
        }
        Ok(acc)
    }

    /// Jacobian determinant, a nonzero constant since every factor has one.
    pub fn jacobian(&self) -> Result<Scalar> {
        let f = &self.field;
        let mut acc = f.one();
        for (fac, e) in &self.word {
            let j = fac.jacobian(f);
            acc = if *e == 1 { f.mul(&acc, &j) } else { f.div(&acc, &j)? };
        }
        Ok(acc)
    }

    pub fn is_special(&self) -> Result<bool> {
        Ok(self.field.is_one(&self.jacobian()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(&q(), n, i)
    }

    fn sample_triangular() -> Triangular {
        let f = q();
        let n = 3;
        Triangular::new(
            &f,
            vec![f.from_i64(2), f.from_i64(-1), f.rational(1, 3).unwrap()],
            vec![
                Poly::constant(&f, n, f.from_i64(5)),
                x(n, 0).pow(3),
                x(n, 0).mul(&x(n, 1)).sub(&x(n, 1).pow(2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn triangular_inverse_round_trip() {
        let t = sample_triangular();
        let inv = t.inverse().unwrap();
        assert!(t.to_endo().compose(&inv.to_endo()).unwrap().is_identity());
        assert!(inv.to_endo().compose(&t.to_endo()).unwrap().is_identity());
        assert_eq!(t.vector_degree(), VecDeg(vec![0, 3, 2]));
    }

    #[test]
    fn rejects_upper_triangular_tail() {
        let f = q();
        let r = Triangular::new(&f, vec![f.one(), f.one()], vec![x(2, 1), Poly::zero(&f, 2)]);
        assert!(matches!(r, Err(Error::InvalidFactor(_))));
    }

    #[test]
    fn every_factor_inverts() {
        let f = q();
        let n = 3;
        let m = Matrix::from_rows(
            &f,
            vec![
                vec![f.from_i64(1), f.from_i64(2), f.zero()],
                vec![f.zero(), f.from_i64(1), f.from_i64(3)],
                vec![f.from_i64(1), f.zero(), f.from_i64(1)],
            ],
        )
        .unwrap();
        let d = TriDerivation::new(&f, vec![Poly::zero(&f, n), x(n, 0).neg(), x(n, 1).scale(&f.from_i64(2))]).unwrap();
        let kernel_elt = x(n, 0).mul(&x(n, 2)).add(&x(n, 1).pow(2));
        let factors = vec![
            BasicFactor::Linear(m),
            BasicFactor::Translation(vec![f.from_i64(1), f.from_i64(-4), f.rational(2, 7).unwrap()]),
            BasicFactor::elementary(1, x(n, 0).mul(&x(n, 2))).unwrap(),
            BasicFactor::Triangular(sample_triangular()),
            BasicFactor::Exp { f: kernel_elt, d },
            BasicFactor::signed_permutation(&f, vec![2, 0, 1], vec![f.from_i64(-1), f.from_i64(3), f.one()]).unwrap(),
        ];
        for fac in factors {
            let e = fac.expand(&f).unwrap();
            let inv = fac.inverse(&f).unwrap().expand(&f).unwrap();
            assert!(e.compose(&inv).unwrap().is_identity(), "{fac:?}");
            assert_eq!(e.jacobian_det().as_constant(), Some(fac.jacobian(&f)), "{fac:?}");
        }
    }

    #[test]
    fn words_conjugate_and_commute() {
        let f = q();
        let n = 2;
        let a = FactoredAuto::from_factor(&f, BasicFactor::elementary(1, x(n, 0).pow(2)).unwrap());
        let b = FactoredAuto::from_factor(&f, BasicFactor::Translation(vec![f.one(), f.zero()]));
        let c = a.conj(&b).expand().unwrap();
        let direct = b.expand().unwrap().inverse_structured().unwrap().compose(&a.expand().unwrap()).unwrap().compose(&b.expand().unwrap()).unwrap();
        assert_eq!(c, direct);
        let k = FactoredAuto::comm(&a, &b).expand().unwrap();
        // [ε_{2,x1²}, ε_{1,1}] = ε_{2, 2x1+1} shifted: check it is an x2-elementary map
        let (i, g) = k.as_elementary().unwrap();
        assert_eq!(i, 1);
        assert_eq!(g.total_degree(), 1);
        assert!(a.then(&a.inverse()).expand().unwrap().is_identity());
        assert!(a.normalized().unwrap().inverse().normalized().unwrap().then(&a).expand().unwrap().is_identity());
    }

    #[test]
    fn special_swap_has_unit_jacobian() {
        let f = Field::finite(9).unwrap();
        let s = BasicFactor::special_swap(&f, 3, 0, 2);
        assert!(f.is_one(&s.jacobian(&f)));
        assert!(s.expand(&f).unwrap().jacobian_det().is_one());
    }
}
