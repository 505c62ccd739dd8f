//! Sparse multivariate polynomials over a [`Field`].
//!
//! Variables are indexed from 0 (`x1` in text is index 0). Terms are kept in
//! a `BTreeMap` under graded-lexicographic order, so iteration and printing
//! are deterministic.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Default total-degree cap applied by substitution and composition.
pub const DEFAULT_DEGREE_CAP: u32 = 1024;

/// Exponent vector ordered by total degree, then lexicographically (`x1` most significant).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        let degree = exps.iter().fold(0u32, |a, &e| a.checked_add(e).expect("exponent overflow"));
        Monomial { degree, exps }
    }

    pub fn one(n: usize) -> Monomial {
        Monomial { degree: 0, exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { degree: 1, exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Monomial { degree: self.degree.checked_add(other.degree)?, exps })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match c {
                Scalar::Rat(r) => write!(f, "({r})")?,
                Scalar::Fin(v) => write!(f, "[{v}]")?,
            }
            for (i, e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero(field: &Field, nvars: usize) -> Poly {
        Poly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, nvars: usize, c: Scalar) -> Poly {
        let mut p = Poly::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(field: &Field, nvars: usize) -> Poly {
        Poly::constant(field, nvars, field.one())
    }

    /// The variable `x_{i+1}`.
    pub fn var(field: &Field, nvars: usize, i: usize) -> Poly {
        assert!(i < nvars, "variable index out of range");
        let mut p = Poly::zero(field, nvars);
        p.terms.insert(Monomial::var(nvars, i), field.one());
        p
    }

    pub fn monomial(field: &Field, coeff: Scalar, exps: Vec<u32>) -> Poly {
        let n = exps.len();
        let mut p = Poly::zero(field, n);
        p.add_term(Monomial::new(exps), coeff);
        p
    }

    pub fn from_terms(field: &Field, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Poly {
        let mut p = Poly::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if self.field.is_zero(&c) {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(&Monomial::new(exps.to_vec())).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree == 0)
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| self.field.is_one(&c))
    }

    /// Total degree, with `deg(0) = 0`.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.degree)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exps[i]).max().unwrap_or(0)
    }

    /// `(total degree, per-variable degrees)`.
    pub fn degrees(&self) -> (u32, Vec<u32>) {
        (self.total_degree(), (0..self.nvars).map(|i| self.degree_in(i)).collect())
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exps[i] > 0)
    }

    /// Whether every term only involves variables with index `< k`.
    pub fn only_vars_below(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.exps[k..].iter().all(|&e| e == 0))
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let bound = self.total_degree() as u64 + other.total_degree() as u64;
        if bound > u32::MAX as u64 {
            return Err(Error::ExponentOverflow);
        }
        Ok(self.mul(other))
    }

    /// Sum. Panics on incompatible operands; see [`Poly::try_add`].
    pub fn add(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field && self.nvars == other.nvars, "incompatible polynomials");
        let (mut acc, rest) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &rest.terms {
            acc.add_term(m.clone(), c.clone());
        }
        acc
    }

    pub fn neg(&self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect();
        Poly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero(&self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), self.field.mul(v, c))).collect();
        Poly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    /// Product. Panics on incompatible operands or exponent overflow.
    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field && self.nvars == other.nvars, "incompatible polynomials");
        let mut out = Poly::zero(&self.field, self.nvars);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).expect("exponent overflow");
                out.add_term(m, self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to `x_{i+1}`.
    pub fn partial_derivative(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange { index: i + 1, n: self.nvars });
        }
        let mut out = Poly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), self.field.mul(c, &self.field.from_i64(e as i64)));
        }
        Ok(out)
    }

    /// Upper bound on the total degree of `substitute(images)`.
    pub fn substitution_degree_bound(&self, images: &[Poly]) -> u64 {
        let degs: Vec<u64> = images.iter().map(|p| p.total_degree() as u64).collect();
        self.terms
            .keys()
            .map(|m| m.exps.iter().zip(&degs).map(|(&e, &d)| e as u64 * d).sum::<u64>())
            .max()
            .unwrap_or(0)
    }

    /// Replaces `x_{j+1}` by `images[j]` and expands. The result lives in the
    /// images' ring. `cap` bounds the total degree of the result.
    pub fn substitute(&self, images: &[Poly], cap: Option<u32>) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        for img in images {
            if img.field != self.field {
                return Err(Error::FieldMismatch);
            }
            if img.nvars != target {
                return Err(Error::ArityMismatch { expected: target, found: img.nvars });
            }
        }
        let bound = self.substitution_degree_bound(images);
        let cap = cap.unwrap_or(u32::MAX);
        if bound > cap as u64 {
            return Err(Error::DegreeCapExceeded { cap, degree: bound });
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&self.field, target), p.clone()]).collect();
        let terms: Vec<(&[u32], &Scalar)> = self.terms.iter().map(|(m, c)| (m.exps.as_slice(), c)).collect();
        Ok(self.horner(&terms, 0, images, &mut powers, target))
    }

    // Groups terms by the exponent of x_j and recurses on the remaining variables.
    fn horner(
        &self,
        terms: &[(&[u32], &Scalar)],
        j: usize,
        images: &[Poly],
        powers: &mut Vec<Vec<Poly>>,
        target: usize,
    ) -> Poly {
        if j == self.nvars {
            let mut c = self.field.zero();
            for (_, v) in terms {
                c = self.field.add(&c, v);
            }
            return Poly::constant(&self.field, target, c);
        }
        let mut groups: BTreeMap<u32, Vec<(&[u32], &Scalar)>> = BTreeMap::new();
        for t in terms {
            groups.entry(t.0[j]).or_default().push(*t);
        }
        let mut out = Poly::zero(&self.field, target);
        for (e, group) in groups {
            let inner = self.horner(&group, j + 1, images, powers, target);
            if inner.is_zero() {
                continue;
            }
            if e == 0 {
                out = out.add(&inner);
                continue;
            }
            while powers[j].len() <= e as usize {
                let next = powers[j].last().unwrap().mul(&images[j]);
                powers[j].push(next);
            }
            out = out.add(&inner.mul(&powers[j][e as usize]));
        }
        out
    }

    /// Same polynomial viewed in a ring with more variables.
    pub fn extend_vars(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps.clone();
                exps.resize(nvars, 0);
                (Monomial::new(exps), c.clone())
            })
            .collect();
        Poly { field: self.field.clone(), nvars, terms }
    }

    /// Splits into single-term polynomials, highest term first.
    pub fn monomials(&self) -> Vec<(Scalar, Monomial)> {
        self.terms.iter().rev().map(|(m, c)| (c.clone(), m.clone())).collect()
    }
}
