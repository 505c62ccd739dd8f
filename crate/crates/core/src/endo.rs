//! Polynomial endomorphisms of affine `n`-space written as `n`-tuples, with
//! automorphisms acting on the right: `(P)φψ = ((P)φ)ψ`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::factor::Triangular;
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::poly::{Poly, DEFAULT_DEGREE_CAP};

/// `(x_i)φ = comps[i]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Endo {
    field: Field,
    comps: Vec<Poly>,
}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Endo").field(&self.comps).finish()
    }
}

/// Vector degree of a triangular map; compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VecDeg(pub Vec<u32>);

impl VecDeg {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }
}

impl fmt::Display for VecDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Syntactic membership flags.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub identity: bool,
    pub translation: bool,
    pub linear: bool,
    pub affine: bool,
    pub diagonal_affine_df: bool,
    pub elementary: bool,
    pub triangular: bool,
    pub parabolic: bool,
    pub special: bool,
}

impl Classification {
    pub fn flags(&self) -> [(&'static str, bool); 9] {
        [
            ("identity", self.identity),
            ("translation", self.translation),
            ("linear", self.linear),
            ("affine", self.affine),
            ("diagonal_affine_Df", self.diagonal_affine_df),
            ("elementary", self.elementary),
            ("triangular", self.triangular),
            ("parabolic", self.parabolic),
            ("special", self.special),
        ]
    }
}

impl Endo {
    pub fn new(field: &Field, comps: Vec<Poly>) -> Result<Endo> {
        let n = comps.len();
        if n == 0 {
            return Err(Error::ArityMismatch { expected: 1, found: 0 });
        }
        for c in &comps {
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            if c.nvars() != n {
                return Err(Error::ArityMismatch { expected: n, found: c.nvars() });
            }
        }
        Ok(Endo { field: field.clone(), comps })
    }

    pub fn identity(field: &Field, n: usize) -> Endo {
        Endo { field: field.clone(), comps: (0..n).map(|i| Poly::var(field, n, i)).collect() }
    }

    pub fn from_linear(m: &Matrix) -> Endo {
        Endo::from_affine(m, &vec![m.field().zero(); m.n()])
    }

    /// `x ↦ A x + b`.
    pub fn from_affine(m: &Matrix, b: &[Scalar]) -> Endo {
        let f = m.field();
        let n = m.n();
        let comps = (0..n)
            .map(|i| {
                let mut p = Poly::constant(f, n, b[i].clone());
                for j in 0..n {
                    p = p.add(&Poly::var(f, n, j).scale(m.get(i, j)));
                }
                p
            })
            .collect();
        Endo { field: f.clone(), comps }
    }

    pub fn translation(field: &Field, b: &[Scalar]) -> Endo {
        Endo::from_affine(&Matrix::identity(field, b.len()), b)
    }

    /// `ε_{i,f}`: `x_i ↦ x_i + f`, other variables fixed.
    pub fn elementary(i: usize, f: &Poly) -> Result<Endo> {
        let n = f.nvars();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i + 1, n });
        }
        if f.depends_on(i) {
            return Err(Error::InvalidFactor(alloc::format!("elementary polynomial involves x{}", i + 1)));
        }
        let mut e = Endo::identity(f.field(), n);
        e.comps[i] = e.comps[i].add(f);
        Ok(e)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn into_comps(self) -> Vec<Poly> {
        self.comps
    }

    pub fn total_degree(&self) -> u32 {
        self.comps.iter().map(Poly::total_degree).max().unwrap_or(0)
    }

    /// Largest per-variable degree over all components.
    pub fn max_var_degree(&self) -> u32 {
        self.comps.iter().flat_map(|c| c.degrees().1).max().unwrap_or(0)
    }

    /// `φψ` under the right-action convention, with the default degree cap.
    pub fn compose(&self, other: &Endo) -> Result<Endo> {
        self.compose_capped(other, Some(DEFAULT_DEGREE_CAP))
    }

    pub fn compose_capped(&self, other: &Endo, cap: Option<u32>) -> Result<Endo> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::ArityMismatch { expected: self.n(), found: other.n() });
        }
        let comps = self.comps.iter().map(|c| c.substitute(&other.comps, cap)).collect::<Result<Vec<_>>>()?;
        Ok(Endo { field: self.field.clone(), comps })
    }

    /// `(P)φ`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        p.substitute(&self.comps, Some(DEFAULT_DEGREE_CAP))
    }

    pub fn is_identity(&self) -> bool {
        self.comps.iter().enumerate().all(|(i, c)| *c == Poly::var(&self.field, self.n(), i))
    }

    pub fn jacobian_matrix(&self) -> Vec<Vec<Poly>> {
        self.comps
            .iter()
            .map(|c| (0..self.n()).map(|j| c.partial_derivative(j).expect("index in range")).collect())
            .collect()
    }

    /// Determinant of `(∂(x_i)φ/∂x_j)` by division-free Laplace expansion
    /// along rows, memoised over column subsets.
    pub fn jacobian_det(&self) -> Poly {
        let jac = self.jacobian_matrix();
        let n = self.n();
        assert!(n < 32, "dimension too large for subset expansion");
        // level k: minors built from rows k..n, keyed by the set of columns still available
        let mut memo: BTreeMap<u32, Poly> = BTreeMap::new();
        memo.insert(0, Poly::one(&self.field, n));
        for k in (0..n).rev() {
            let mut next: BTreeMap<u32, Poly> = BTreeMap::new();
            let size = n - k;
            for (&mask_rest, minor) in &memo {
                if minor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if mask_rest & (1 << j) != 0 {
                        continue;
                    }
                    let entry = &jac[k][j];
                    if entry.is_zero() {
                        continue;
                    }
                    let mask = mask_rest | (1 << j);
                    // sign from position of j among the columns of `mask`
                    let pos = (mask & ((1u32 << j) - 1)).count_ones();
                    let mut term = entry.mul(minor);
                    if pos % 2 == 1 {
                        term = term.neg();
                    }
                    let slot = next.entry(mask).or_insert_with(|| Poly::zero(&self.field, n));
                    *slot = slot.add(&term);
                }
            }
            next.retain(|m, _| m.count_ones() as usize == size);
            memo = next;
        }
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        memo.remove(&full).unwrap_or_else(|| Poly::zero(&self.field, n))
    }

    pub fn is_special(&self) -> bool {
        self.jacobian_det().is_one()
    }

    /// `(A, b)` with `(x_i)φ = Σ_j a_ij x_j + b_i` when every component has degree ≤ 1.
    pub fn affine_parts(&self) -> Option<(Matrix, Vec<Scalar>)> {
        if self.comps.iter().any(|c| c.total_degree() > 1) {
            return None;
        }
        let n = self.n();
        let mut rows = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for c in &self.comps {
            let mut row = vec![self.field.zero(); n];
            for (m, v) in c.terms() {
                if let Some(j) = m.exps().iter().position(|&e| e == 1) {
                    row[j] = v.clone();
                }
            }
            rows.push(row);
            b.push(c.constant_term());
        }
        Some((Matrix::from_rows(&self.field, rows).expect("square"), b))
    }

    /// Affine parts of an invertible affine map.
    pub fn as_affine(&self) -> Option<(Matrix, Vec<Scalar>)> {
        self.affine_parts().filter(|(m, _)| !self.field.is_zero(&m.det()))
    }

    pub fn is_affine(&self) -> bool {
        self.as_affine().is_some()
    }

    /// Translation vector when `φ` is a translation.
    pub fn as_translation(&self) -> Option<Vec<Scalar>> {
        self.affine_parts().filter(|(m, _)| m.is_identity()).map(|(_, b)| b)
    }

    /// `(i, f)` when `φ = ε_{i,f}` with `f ≠ 0`.
    pub fn as_elementary(&self) -> Option<(usize, Poly)> {
        let n = self.n();
        let mut moved = None;
        for (i, c) in self.comps.iter().enumerate() {
            let x = Poly::var(&self.field, n, i);
            if *c != x {
                if moved.is_some() {
                    return None;
                }
                let f = c.sub(&x);
                if f.depends_on(i) {
                    return None;
                }
                moved = Some((i, f));
            }
        }
        moved
    }

    /// Lower-triangular decomposition `(x_i)τ = a_i x_i + P_i(x_1..x_{i-1})`.
    pub fn as_triangular(&self) -> Option<Triangular> {
        let n = self.n();
        let mut scales = Vec::with_capacity(n);
        let mut tails = Vec::with_capacity(n);
        for (i, c) in self.comps.iter().enumerate() {
            let mut a = self.field.zero();
            let mut tail = Poly::zero(&self.field, n);
            for (m, v) in c.terms() {
                let e = m.exps();
                if e[i + 1..].iter().any(|&d| d > 0) {
                    return None;
                }
                if e[i] > 0 {
                    if e[i] != 1 || m.degree() != 1 {
                        return None;
                    }
                    a = v.clone();
                } else {
                    tail.add_term(m.clone(), v.clone());
                }
            }
            if self.field.is_zero(&a) {
                return None;
            }
            scales.push(a);
            tails.push(tail);
        }
        Some(Triangular::new_unchecked(scales, tails))
    }

    pub fn is_triangular(&self) -> bool {
        self.as_triangular().is_some()
    }

    /// `vd(τ) = (deg P_1, ..., deg P_n)` with `deg(0) = 0`.
    pub fn vector_degree(&self) -> Result<VecDeg> {
        let t = self.as_triangular().ok_or(Error::NotTriangular)?;
        Ok(t.vector_degree())
    }

    /// First `n-1` components free of `x_n`, last of the form `a x_n + P(x_1..x_{n-1})`.
    pub fn is_parabolic(&self) -> bool {
        let n = self.n();
        let last = n - 1;
        if self.comps[..last].iter().any(|c| c.depends_on(last)) {
            return false;
        }
        let c = &self.comps[last];
        let mut a = self.field.zero();
        for (m, v) in c.terms() {
            if m.exps()[last] > 0 {
                if m.exps()[last] != 1 || m.degree() != 1 {
                    return false;
                }
                a = v.clone();
            }
        }
        !self.field.is_zero(&a)
    }

    pub fn classify(&self) -> Classification {
        let identity = self.is_identity();
        let affine = self.as_affine();
        let (translation, linear, df) = match &affine {
            Some((m, b)) => (m.is_identity(), b.iter().all(|v| self.field.is_zero(v)), m.is_diagonal()),
            None => (false, false, false),
        };
        Classification {
            identity,
            translation,
            linear,
            affine: affine.is_some(),
            diagonal_affine_df: df,
            elementary: identity || self.as_elementary().is_some(),
            triangular: self.is_triangular(),
            parabolic: self.is_parabolic(),
            special: self.is_special(),
        }
    }

    /// Inverse of an affine or triangular map.
    pub fn inverse_structured(&self) -> Result<Endo> {
        if let Some((m, b)) = self.as_affine() {
            let inv = m.inverse()?;
            let shift: Vec<Scalar> = inv.apply(&b).iter().map(|v| self.field.neg(v)).collect();
            return Ok(Endo::from_affine(&inv, &shift));
        }
        if let Some(t) = self.as_triangular() {
            return t.inverse().map(|t| t.to_endo());
        }
        Err(Error::NotStructured)
    }

    /// Whether `φ` commutes with the axis translation `ε_{k,c}`.
    pub fn commutes_with_axis_translation(&self, k: usize, c: &Scalar) -> Result<bool> {
        let mut shift = vec![self.field.zero(); self.n()];
        shift[k] = c.clone();
        self.commutes_with_translation(&shift)
    }

    /// Whether `φ` commutes with the translation `x ↦ x + b`.
    pub fn commutes_with_translation(&self, b: &[Scalar]) -> Result<bool> {
        let n = self.n();
        let t = Endo::translation(&self.field, b);
        for (i, comp) in self.comps.iter().enumerate() {
            // (x_i) t φ = comp_i + b_i ; (x_i) φ t = comp_i(x + b)
            let lhs = comp.substitute(t.comps(), None)?;
            let rhs = comp.add(&Poly::constant(&self.field, n, b[i].clone()));
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
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

    fn k(n: usize, v: i64) -> Poly {
        Poly::constant(&q(), n, q().from_i64(v))
    }

    fn example_map() -> Endo {
        // (x1+2, x2+x1^2, x3-x1^2+x1*x2^4)
        let n = 3;
        Endo::new(
            &q(),
            vec![
                x(n, 0).add(&k(n, 2)),
                x(n, 1).add(&x(n, 0).pow(2)),
                x(n, 2).sub(&x(n, 0).pow(2)).add(&x(n, 0).mul(&x(n, 1).pow(4))),
            ],
        )
        .unwrap()
    }

    #[test]
    fn composition_follows_right_action() {
        let n = 2;
        let phi = Endo::new(&q(), vec![x(n, 0), x(n, 1).add(&x(n, 0).pow(2))]).unwrap();
        let psi = Endo::new(&q(), vec![x(n, 0).add(&k(n, 1)), x(n, 1)]).unwrap();
        let shifted = x(n, 0).add(&k(n, 1));
        let expected = Endo::new(&q(), vec![shifted.clone(), x(n, 1).add(&shifted.pow(2))]).unwrap();
        assert_eq!(phi.compose(&psi).unwrap(), expected);
        assert_eq!(phi.compose(&Endo::identity(&q(), 2)).unwrap(), phi);
    }

    #[test]
    fn translations_add() {
        let f = q();
        let a = Endo::elementary(0, &k(2, 3)).unwrap();
        let b = Endo::elementary(0, &k(2, -5)).unwrap();
        assert_eq!(a.compose(&b).unwrap(), Endo::elementary(0, &k(2, -2)).unwrap());
        assert_eq!(a.as_translation(), Some(vec![f.from_i64(3), f.zero()]));
    }

    #[test]
    fn vector_degree_example_and_order() {
        assert_eq!(example_map().vector_degree().unwrap(), VecDeg(vec![0, 2, 5]));
        assert!(VecDeg(vec![0, 2, 5]) < VecDeg(vec![0, 3, 3]));
        let f = q();
        let df = Endo::from_affine(
            &Matrix::diagonal(&f, &[f.from_i64(2), f.from_i64(-1)]),
            &[f.from_i64(3), f.from_i64(1)],
        );
        assert!(df.vector_degree().unwrap().is_zero());
        let nontri = Endo::new(&f, vec![x(2, 1), x(2, 0)]).unwrap();
        assert_eq!(nontri.vector_degree(), Err(Error::NotTriangular));
    }

    #[test]
    fn classification_examples() {
        let f = q();
        let a = Endo::new(&f, vec![x(2, 0).scale(&f.from_i64(2)).add(&k(2, 3)), x(2, 1).sub(&k(2, 1))]).unwrap();
        let c = a.classify();
        assert!(c.affine && c.diagonal_affine_df && !c.special && !c.translation);
        assert_eq!(a.jacobian_det(), k(2, 2));

        let t = Endo::new(&f, vec![x(2, 0), x(2, 1).add(&x(2, 0).pow(2))]).unwrap();
        let c = t.classify();
        assert!(c.triangular && c.elementary && c.parabolic && c.special && !c.affine);

        let h = Endo::new(&f, vec![x(2, 0).pow(3).add(&x(2, 0)), x(2, 1).add(&x(2, 0))]).unwrap();
        assert!(!h.classify().triangular);
    }

    #[test]
    fn jacobian_of_basic_maps() {
        let f = q();
        let e = Endo::elementary(1, &x(3, 0).mul(&x(3, 2)).pow(2)).unwrap();
        assert!(e.jacobian_det().is_one());
        let d = Endo::from_linear(&Matrix::diagonal(&f, &[f.from_i64(5), f.one(), f.one()]));
        assert_eq!(d.jacobian_det(), k(3, 5));
        // 4x4 permutation with sign: det of a transposition is -1
        let p = Endo::new(&f, vec![x(4, 1), x(4, 0), x(4, 2), x(4, 3)]).unwrap();
        assert_eq!(p.jacobian_det(), k(4, -1));
    }

    #[test]
    fn structured_inverses() {
        let f = q();
        let t = Endo::new(&f, vec![x(2, 0), x(2, 1).add(&x(2, 0).pow(2))]).unwrap();
        let inv = t.inverse_structured().unwrap();
        assert_eq!(inv, Endo::new(&f, vec![x(2, 0), x(2, 1).sub(&x(2, 0).pow(2))]).unwrap());
        assert!(t.compose(&inv).unwrap().is_identity());
        let ex = example_map();
        assert!(ex.compose(&ex.inverse_structured().unwrap()).unwrap().is_identity());
        assert!(Endo::identity(&f, 3).inverse_structured().unwrap().is_identity());
        let wild = Endo::new(&f, vec![x(2, 1).pow(2).add(&x(2, 0)), x(2, 1).add(&x(2, 0).pow(2))]).unwrap();
        assert_eq!(wild.inverse_structured(), Err(Error::NotStructured));
    }

    #[test]
    fn axis_translation_commutation() {
        let f = q();
        let t = Endo::elementary(0, &x(2, 1).pow(2)).unwrap();
        assert!(!t.commutes_with_axis_translation(1, &f.one()).unwrap());
        assert!(t.commutes_with_axis_translation(0, &f.one()).unwrap());
    }
}
