//! Coefficient fields: the rationals, prime fields `F_p` and small extensions
//! `F_{p^s}` given by an explicit monic irreducible modulus.
//!
//! Elements of finite fields are stored packed into a `u32`: for an
//! extension field the base-`p` digits of the packed value are the
//! coefficients of `1, t, t^2, ...` in the residue class modulo the modulus.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest supported finite field order.
pub const MAX_FINITE_ORDER: u64 = 1 << 16;

/// Multiplication tables are kept for extension fields up to this order.
const TABLE_ORDER: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Prime(u32),
    /// `modulus` lists coefficients from the constant term upwards and is monic of degree `s`.
    Extension { p: u32, s: u32, modulus: Vec<u32> },
}

impl FieldDescriptor {
    /// The shipped modulus for `F_q`, when `q` is one of 4, 8, 9, 16, 25, 27.
    pub fn canonical_extension(q: u32) -> Option<FieldDescriptor> {
        let (p, s, modulus) = match q {
            4 => (2, 2, vec![1, 1, 1]),
            8 => (2, 3, vec![1, 1, 0, 1]),
            9 => (3, 2, vec![1, 0, 1]),
            16 => (2, 4, vec![1, 1, 0, 0, 1]),
            25 => (5, 2, vec![2, 4, 1]),
            27 => (3, 3, vec![1, 2, 0, 1]),
            _ => return None,
        };
        Some(FieldDescriptor::Extension { p, s, modulus })
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            FieldDescriptor::Extension { p, s, .. } => p
                .checked_pow(*s)
                .and_then(FieldDescriptor::canonical_extension)
                .map_or(false, |c| &c == self),
            _ => true,
        }
    }
}

/// A field element value. The field it belongs to is tracked by the container
/// (polynomial, matrix, or [`Elem`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Fin(u32),
}

#[derive(Debug)]
enum Kind {
    Rationals,
    Prime { p: u32 },
    Extension { p: u32, s: u32, q: u32, modulus: Vec<u32>, table: Option<Vec<u16>> },
}

#[derive(Debug)]
struct Inner {
    desc: FieldDescriptor,
    kind: Kind,
}

/// Shared handle to a coefficient field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({:?})", self.0.desc)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}
impl Eq for Field {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over F_p as coefficient vectors, constant term first.
fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm] as u64, p as u64 - 2, p as u64);
    while r.len() > dm {
        let top = r.len() - 1;
        let coef = (r[top] as u64 * lead_inv) % p as u64;
        let shift = top - dm;
        for (i, &mc) in m.iter().enumerate() {
            let sub = coef * mc as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        fp_trim(&mut r);
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Exhaustive factor search: no monic polynomial of degree `1..=s/2` divides `modulus`.
fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let s = modulus.len() - 1;
    for d in 1..=s / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                f.push((c % p as u64) as u32);
                c /= p as u64;
            }
            f.push(1);
            if fp_rem(modulus, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(desc: FieldDescriptor) -> Result<Field> {
        let kind = match &desc {
            FieldDescriptor::Rationals => Kind::Rationals,
            FieldDescriptor::Prime(p) => {
                if !is_prime(*p as u64) {
                    return Err(Error::NotPrime(*p as u64));
                }
                if *p as u64 > MAX_FINITE_ORDER {
                    return Err(Error::InvalidDescriptor("prime exceeds 2^16".into()));
                }
                Kind::Prime { p: *p }
            }
            FieldDescriptor::Extension { p, s, modulus } => {
                if !is_prime(*p as u64) {
                    return Err(Error::NotPrime(*p as u64));
                }
                if *s < 2 {
                    return Err(Error::InvalidDescriptor("extension degree must be at least 2".into()));
                }
                let q = (*p as u64).checked_pow(*s).filter(|&q| q <= MAX_FINITE_ORDER).ok_or_else(|| {
                    Error::InvalidDescriptor("field order exceeds 2^16".into())
                })? as u32;
                if modulus.len() != *s as usize + 1 || modulus[*s as usize] != 1 || modulus.iter().any(|&c| c >= *p) {
                    return Err(Error::InvalidDescriptor("modulus must be monic of degree s with coefficients in [0,p)".into()));
                }
                if !is_irreducible(*p, modulus) {
                    return Err(Error::ReducibleModulus);
                }
                Kind::Extension { p: *p, s: *s, q, modulus: modulus.clone(), table: None }
            }
        };
        let mut inner = Inner { desc, kind };
        if let Kind::Extension { q, .. } = inner.kind {
            if q <= TABLE_ORDER {
                let mut table = vec![0u16; (q * q) as usize];
                for a in 0..q {
                    for b in a..q {
                        let v = ext_mul_slow(&inner.kind, a, b) as u16;
                        table[(a * q + b) as usize] = v;
                        table[(b * q + a) as usize] = v;
                    }
                }
                if let Kind::Extension { table: t, .. } = &mut inner.kind {
                    *t = Some(table);
                }
            }
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn rationals() -> Field {
        Field::new(FieldDescriptor::Rationals).expect("rationals always valid")
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(FieldDescriptor::Prime(p))
    }

    /// `F_q` for a prime `q` or one of the orders with a shipped modulus.
    pub fn finite(q: u32) -> Result<Field> {
        if is_prime(q as u64) {
            return Field::prime(q);
        }
        match FieldDescriptor::canonical_extension(q) {
            Some(d) => Field::new(d),
            None => Err(Error::InvalidDescriptor(alloc::format!("no shipped modulus for order {q}"))),
        }
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    /// Characteristic; 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self.0.kind {
            Kind::Rationals => 0,
            Kind::Prime { p } | Kind::Extension { p, .. } => p,
        }
    }

    pub fn order(&self) -> Option<u32> {
        match self.0.kind {
            Kind::Rationals => None,
            Kind::Prime { p } => Some(p),
            Kind::Extension { q, .. } => Some(q),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Degree over the prime field (1 for `Q` and `F_p`).
    pub fn extension_degree(&self) -> u32 {
        match self.0.kind {
            Kind::Extension { s, .. } => s,
            _ => 1,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.0.kind, Kind::Prime { .. })
    }

    pub fn zero(&self) -> Scalar {
        match self.0.kind {
            Kind::Rationals => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Fin(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.0.kind {
            Kind::Rationals => Scalar::Rat(BigRational::one()),
            _ => Scalar::Fin(1),
        }
    }

    /// Image of an integer under the canonical ring map `Z -> K`.
    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.0.kind {
            Kind::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Kind::Prime { p } | Kind::Extension { p, .. } => Scalar::Fin(v.rem_euclid(p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.0.kind {
            Kind::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            Kind::Prime { p } | Kind::Extension { p, .. } => {
                let r = v % BigInt::from(p);
                let r = if r.is_negative() { r + BigInt::from(p) } else { r };
                Scalar::Fin(u32::try_from(r).expect("residue fits"))
            }
        }
    }

    pub fn rational(&self, num: i64, den: i64) -> Result<Scalar> {
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        self.div(&n, &d)
    }

    /// The class of `t` in an extension field.
    pub fn generator(&self) -> Option<Scalar> {
        match self.0.kind {
            Kind::Extension { p, .. } => Some(Scalar::Fin(p)),
            _ => None,
        }
    }

    /// Packs coefficients of `1, t, t^2, ...` (already reduced mod p, at most `s` of them).
    pub fn from_digits(&self, digits: &[u32]) -> Result<Scalar> {
        match &self.0.kind {
            Kind::Extension { p, s, .. } => {
                if digits.len() > *s as usize || digits.iter().any(|d| d >= p) {
                    return Err(Error::InvalidDescriptor("digit vector out of range".into()));
                }
                Ok(Scalar::Fin(pack(digits, *p)))
            }
            Kind::Prime { p } => match digits {
                [] => Ok(Scalar::Fin(0)),
                [d] if d < p => Ok(Scalar::Fin(*d)),
                _ => Err(Error::InvalidDescriptor("digit vector out of range".into())),
            },
            Kind::Rationals => Err(Error::InvalidDescriptor("rationals have no digit form".into())),
        }
    }

    /// Coefficients of `1, t, ..., t^{s-1}` for a finite-field element.
    pub fn digits(&self, a: &Scalar) -> Vec<u32> {
        match (&self.0.kind, a) {
            (Kind::Extension { p, s, .. }, Scalar::Fin(v)) => unpack(*v, *p, *s),
            (Kind::Prime { .. }, Scalar::Fin(v)) => vec![*v],
            _ => Vec::new(),
        }
    }

    /// Whether `a` is a valid element representation for this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (&self.0.kind, a) {
            (Kind::Rationals, Scalar::Rat(_)) => true,
            (Kind::Prime { p }, Scalar::Fin(v)) => v < p,
            (Kind::Extension { q, .. }, Scalar::Fin(v)) => v < q,
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fin(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fin(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.0.kind, a, b) {
            (Kind::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Kind::Prime { p }, Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin(((*x as u64 + *y as u64) % *p as u64) as u32),
            (Kind::Extension { p, s, .. }, Scalar::Fin(x), Scalar::Fin(y)) => {
                Scalar::Fin(digitwise(*x, *y, *p, *s, |u, v| (u + v) % p))
            }
            _ => panic!("scalar does not belong to field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (&self.0.kind, a) {
            (Kind::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Kind::Prime { p }, Scalar::Fin(x)) => Scalar::Fin((p - x) % p),
            (Kind::Extension { p, s, .. }, Scalar::Fin(x)) => Scalar::Fin(digitwise(*x, 0, *p, *s, |u, _| (p - u) % p)),
            _ => panic!("scalar does not belong to field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.0.kind, a, b) {
            (Kind::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Kind::Prime { p }, Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin((*x as u64 * *y as u64 % *p as u64) as u32),
            (kind @ Kind::Extension { q, table, .. }, Scalar::Fin(x), Scalar::Fin(y)) => match table {
                Some(t) => Scalar::Fin(t[(*x * *q + *y) as usize] as u32),
                None => Scalar::Fin(ext_mul_slow(kind, *x, *y)),
            },
            _ => panic!("scalar does not belong to field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&self.0.kind, a) {
            (Kind::Rationals, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            (Kind::Prime { p }, Scalar::Fin(x)) => Scalar::Fin(pow_mod(*x as u64, *p as u64 - 2, *p as u64) as u32),
            (Kind::Extension { q, .. }, _) => self.pow(a, *q as u64 - 2),
            _ => panic!("scalar does not belong to field"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Nonzero elements. Finite fields: all `q - 1` units ordered by packed
    /// value. Rationals: the first `bound` entries of the stream
    /// `1, -1, 2, -2, 1/2, -1/2, 3, -3, 3/2, -3/2, 1/3, ...` (by height, integers first).
    pub fn units(&self, bound: usize) -> Vec<Scalar> {
        match self.order() {
            Some(q) => (1..q).map(Scalar::Fin).collect(),
            None => {
                let mut out = Vec::new();
                let mut h: i64 = 1;
                while out.len() < bound {
                    // integers of height h, then fractions num/den with max(|num|, den) = h
                    let mut level: Vec<(i64, i64)> = vec![(h, 1)];
                    for den in 2..=h {
                        if num_integer::gcd(h, den) == 1 {
                            level.push((h, den));
                        }
                    }
                    for num in 1..h {
                        if num_integer::gcd(num, h) == 1 && h > 1 {
                            level.push((num, h));
                        }
                    }
                    for (num, den) in level {
                        for sign in [1, -1] {
                            if out.len() < bound {
                                out.push(Scalar::Rat(BigRational::new(BigInt::from(sign * num), BigInt::from(den))));
                            }
                        }
                    }
                    h += 1;
                }
                out
            }
        }
    }

    /// Every element of a finite field, zero first.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.order().map(|q| (0..q).map(Scalar::Fin).collect())
    }

    /// Wraps a value together with this field.
    pub fn elem(&self, value: Scalar) -> Elem {
        debug_assert!(self.contains(&value));
        Elem { field: self.clone(), value }
    }
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn unpack(mut v: u32, p: u32, s: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(s as usize);
    for _ in 0..s {
        out.push(v % p);
        v /= p;
    }
    out
}

fn digitwise(x: u32, y: u32, p: u32, s: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut x, mut y) = (x, y);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..s {
        out += op(x % p, y % p) * place;
        x /= p;
        y /= p;
        place *= p;
    }
    out
}

fn ext_mul_slow(kind: &Kind, x: u32, y: u32) -> u32 {
    let Kind::Extension { p, s, modulus, .. } = kind else { unreachable!() };
    let a = unpack(x, *p, *s);
    let b = unpack(y, *p, *s);
    let mut prod = vec![0u32; 2 * *s as usize];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + ai as u64 * bj as u64) % *p as u64) as u32;
        }
    }
    pack(&fp_rem(&prod, modulus, *p), *p)
}

/// A field element bundled with its field, with checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem {
    field: Field,
    value: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Neg,
}

impl Elem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    pub fn into_value(self) -> Scalar {
        self.value
    }

    /// Applies `op`; unary operations ignore `other`.
    pub fn apply(&self, op: FieldOp, other: &Elem) -> Result<Elem> {
        if matches!(op, FieldOp::Add | FieldOp::Sub | FieldOp::Mul | FieldOp::Div) && self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let v = match op {
            FieldOp::Add => f.add(&self.value, &other.value),
            FieldOp::Sub => f.sub(&self.value, &other.value),
            FieldOp::Mul => f.mul(&self.value, &other.value),
            FieldOp::Div => f.div(&self.value, &other.value)?,
            FieldOp::Inv => f.inv(&self.value)?,
            FieldOp::Neg => f.neg(&self.value),
        };
        Ok(f.elem(v))
    }

    pub fn add(&self, o: &Elem) -> Result<Elem> {
        self.apply(FieldOp::Add, o)
    }
    pub fn sub(&self, o: &Elem) -> Result<Elem> {
        self.apply(FieldOp::Sub, o)
    }
    pub fn mul(&self, o: &Elem) -> Result<Elem> {
        self.apply(FieldOp::Mul, o)
    }
    pub fn div(&self, o: &Elem) -> Result<Elem> {
        self.apply(FieldOp::Div, o)
    }
    pub fn inv(&self) -> Result<Elem> {
        self.apply(FieldOp::Inv, self)
    }
    pub fn neg(&self) -> Elem {
        self.field.elem(self.field.neg(&self.value))
    }
}
