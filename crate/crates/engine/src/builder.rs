//! Incremental certificate construction. Every step is expanded and compared
//! against its expected value before it is recorded.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use cotame_core::cert::{Certificate, Claim, Evaluator, Item, NodeRef, Seed, Step};
use cotame_core::{BasicFactor, Endo, FactoredAuto, Field, Matrix, Poly, Scalar, DEFAULT_DEGREE_CAP};

use crate::error::{EngineError, Result};

/// `ε_{i,f}` as a one-factor word.
pub fn eps(field: &Field, i: usize, f: Poly) -> FactoredAuto {
    FactoredAuto::from_factor(field, BasicFactor::Elementary { i, f })
}

/// The translation `ε_{i,c}`.
pub fn eps_const(field: &Field, n: usize, i: usize, c: Scalar) -> FactoredAuto {
    let mut b = vec![field.zero(); n];
    b[i] = c;
    FactoredAuto::from_factor(field, BasicFactor::Translation(b))
}

/// `δ_{i,j,b}`: `x_i ↦ b x_i`, `x_j ↦ b⁻¹ x_j`.
pub fn delta(field: &Field, n: usize, i: usize, j: usize, b: &Scalar) -> Result<FactoredAuto> {
    if i == j {
        return Err(EngineError::IndexClash);
    }
    if field.is_zero(b) {
        return Err(EngineError::ZeroScalar);
    }
    let mut d = vec![field.one(); n];
    d[i] = b.clone();
    d[j] = field.inv(b)?;
    Ok(FactoredAuto::from_factor(field, BasicFactor::Linear(Matrix::diagonal(field, &d))))
}

pub fn linear(m: &Matrix) -> FactoredAuto {
    FactoredAuto::from_factor(m.field(), BasicFactor::Linear(m.clone()))
}

/// Expanded `ε_{i,f}`.
pub fn eps_value(i: usize, f: &Poly) -> Result<Endo> {
    Ok(Endo::elementary(i, f)?)
}

pub fn plain(base: NodeRef, exponent: i8) -> Item {
    Item { conjugator: None, base, exponent }
}

/// `g⁻¹ · base^exponent · g`.
pub fn conj(g: FactoredAuto, base: NodeRef, exponent: i8) -> Item {
    Item { conjugator: if g.is_empty() { None } else { Some(g) }, base, exponent }
}

pub struct CertBuilder {
    field: Field,
    n: usize,
    claim: Claim,
    cap: Option<u32>,
    probe_bound: Option<u32>,
    seeds: Vec<Seed>,
    steps: Vec<Step>,
    seed_values: Vec<Endo>,
    inverses: BTreeMap<NodeRef, Endo>,
    meta: Vec<(String, String)>,
}

impl CertBuilder {
    pub fn new(field: &Field, n: usize, claim: Claim) -> CertBuilder {
        CertBuilder {
            field: field.clone(),
            n,
            claim,
            cap: Some(DEFAULT_DEGREE_CAP),
            probe_bound: None,
            seeds: Vec::new(),
            steps: Vec::new(),
            seed_values: Vec::new(),
            inverses: BTreeMap::new(),
            meta: Vec::new(),
        }
    }

    pub fn with_cap(mut self, cap: Option<u32>) -> CertBuilder {
        self.cap = cap;
        self
    }

    /// Fixes the number of multiples `c = 1..B` tried when probing for a noncommuting translation.
    pub fn with_probe_bound(mut self, bound: Option<u32>) -> CertBuilder {
        self.probe_bound = bound;
        self
    }

    /// `B` for probes against `value`: the override, else `deg value + 1`.
    pub fn probe_bound_for(&self, value: &Endo) -> i64 {
        match self.probe_bound {
            Some(b) => b as i64,
            None => value.total_degree() as i64 + 1,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn add_seed(&mut self, label: &str, map: FactoredAuto) -> Result<NodeRef> {
        let value = map.expand_capped(self.cap)?;
        self.seeds.push(Seed { label: label.to_string(), map });
        self.seed_values.push(value);
        Ok(NodeRef::Seed(self.seeds.len() - 1))
    }

    pub fn value(&self, r: NodeRef) -> &Endo {
        match r {
            NodeRef::Seed(i) => &self.seed_values[i],
            NodeRef::Step(i) => &self.steps[i].claimed,
        }
    }

    pub fn label(&self, r: NodeRef) -> &str {
        match r {
            NodeRef::Seed(i) => &self.seeds[i].label,
            NodeRef::Step(i) => &self.steps[i].label,
        }
    }

    fn evaluator(&mut self) -> Evaluator<'_> {
        Evaluator::new(&self.field, self.n, self.cap, &self.seeds, &self.steps, &mut self.inverses)
    }

    pub fn inverse_value(&mut self, r: NodeRef) -> Result<Endo> {
        Ok(self.evaluator().inverse(r)?)
    }

    /// Evaluates the word without recording it.
    pub fn evaluate(&mut self, items: &[Item]) -> Result<Endo> {
        for item in items {
            if let Some(g) = &item.conjugator {
                if !g.is_special()? {
                    return Err(EngineError::InternalIdentityFailure("conjugator is not special".into()));
                }
            }
        }
        Ok(self.evaluator().evaluate(items)?)
    }

    /// Records a step after checking its word against `expected` when given.
    pub fn step(&mut self, hint: &str, items: Vec<Item>, expected: Option<&Endo>) -> Result<NodeRef> {
        let value = self.evaluate(&items)?;
        if let Some(e) = expected {
            if *e != value {
                return Err(EngineError::InternalIdentityFailure(format!("step `{hint}` does not expand to its expected value")));
            }
        }
        Ok(self.push_step(hint, items, value, None))
    }

    /// Records a step whose value must equal the expansion of `form`; later
    /// references evaluate through `form`.
    pub fn step_with_form(&mut self, hint: &str, items: Vec<Item>, form: FactoredAuto) -> Result<NodeRef> {
        let value = self.evaluate(&items)?;
        let expected = form.expand_capped(self.cap)?;
        if expected != value {
            return Err(EngineError::InternalIdentityFailure(format!("step `{hint}` does not expand to its expected form")));
        }
        Ok(self.push_step(hint, items, value, Some(form)))
    }

    pub(crate) fn push_step(&mut self, hint: &str, items: Vec<Item>, value: Endo, form: Option<FactoredAuto>) -> NodeRef {
        let label = format!("s{}-{}", self.steps.len() + 1, hint);
        self.steps.push(Step { label, items, claimed: value, form, notes: Vec::new() });
        NodeRef::Step(self.steps.len() - 1)
    }

    pub fn note(&mut self, r: NodeRef, note: impl Into<String>) {
        if let NodeRef::Step(i) = r {
            self.steps[i].notes.push(note.into());
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn meta_values(&self, key: &str) -> Vec<String> {
        self.meta.iter().filter(|(k, _)| k == key).map(|(_, v)| v.clone()).collect()
    }

    pub fn finish(self, terminal: NodeRef) -> Certificate {
        Certificate {
            field: self.field,
            n: self.n,
            claim: self.claim,
            seeds: self.seeds,
            steps: self.steps,
            terminal,
            meta: self.meta,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cotame_core::cert::{verify_certificate, Verdict};

    #[test]
    fn builder_rejects_wrong_expectation() {
        let f = Field::rationals();
        let mut b = CertBuilder::new(&f, 2, Claim::Cotame);
        let s = b.add_seed("e", eps_const(&f, 2, 0, f.one())).unwrap();
        let wrong = eps_const(&f, 2, 0, f.from_i64(2)).expand().unwrap();
        assert!(matches!(b.step("x", vec![plain(s, 1)], Some(&wrong)), Err(EngineError::InternalIdentityFailure(_))));
        let ok = b.step("x", vec![plain(s, 1), plain(s, 1)], Some(&wrong)).unwrap();
        let cert = b.finish(ok);
        assert_eq!(verify_certificate(&cert).verdict, Verdict::Pass);
    }
}
