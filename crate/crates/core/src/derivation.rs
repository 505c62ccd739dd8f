//! Triangular derivations `D = Σ Q_i ∂/∂x_i` with `Q_i ∈ K[x_1..x_{i-1}]`,
//! and the automorphisms `exp(F·D)` for `F ∈ ker D`.

use alloc::format;
use alloc::vec::Vec;

use crate::endo::Endo;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Iteration bound when waiting for `D^k(x_i)` to vanish.
pub const NILPOTENCY_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriDerivation {
    field: Field,
    images: Vec<Poly>,
}

impl TriDerivation {
    pub fn new(field: &Field, images: Vec<Poly>) -> Result<TriDerivation> {
        let n = images.len();
        for (i, q) in images.iter().enumerate() {
            if q.field() != field {
                return Err(Error::FieldMismatch);
            }
            if q.nvars() != n {
                return Err(Error::ArityMismatch { expected: n, found: q.nvars() });
            }
            if !q.only_vars_below(i) {
                return Err(Error::InvalidFactor(format!("derivation image of x{} is not triangular", i + 1)));
            }
        }
        Ok(TriDerivation { field: field.clone(), images })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `D(x_i)`.
    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// `h·D`; still triangular when `h` lies in the kernel of `D`.
    pub fn scaled(&self, h: &Poly) -> Result<TriDerivation> {
        TriDerivation::new(&self.field, self.images.iter().map(|q| q.mul(h)).collect())
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(&self.field, self.n());
        for (i, q) in self.images.iter().enumerate() {
            if q.is_zero() || !p.depends_on(i) {
                continue;
            }
            out = out.add(&q.mul(&p.partial_derivative(i).expect("index in range")));
        }
        out
    }

    pub fn kernel_check(&self, f: &Poly) -> bool {
        self.apply(f).is_zero()
    }

    /// `(x_i)exp(F·D) = Σ_k F^k D^k(x_i) / k!`, characteristic zero only.
    pub fn exp_automorphism(&self, f: &Poly) -> Result<Endo> {
        let p = self.field.characteristic();
        if p != 0 {
            return Err(Error::UnsupportedCharacteristic(p));
        }
        if f.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if f.nvars() != self.n() {
            return Err(Error::ArityMismatch { expected: self.n(), found: f.nvars() });
        }
        if !self.kernel_check(f) {
            return Err(Error::KernelViolation);
        }
        let n = self.n();
        let mut comps = Vec::with_capacity(n);
        for i in 0..n {
            let mut term = Poly::var(&self.field, n, i);
            let mut acc = term.clone();
            let mut fk = Poly::one(&self.field, n);
            let mut k = 0usize;
            loop {
                term = self.apply(&term);
                if term.is_zero() {
                    break;
                }
                k += 1;
                if k > NILPOTENCY_CAP {
                    return Err(Error::NilpotencyCapExceeded(NILPOTENCY_CAP));
                }
                fk = fk.mul(f);
                let fact = (1..=k as i64).fold(self.field.one(), |a, j| self.field.mul(&a, &self.field.from_i64(j)));
                acc = acc.add(&term.mul(&fk).scale(&self.field.inv(&fact)?));
            }
            comps.push(acc);
        }
        Endo::new(&self.field, comps)
    }
}
