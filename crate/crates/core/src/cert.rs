//! Normal-closure certificates and their verifier.
//!
//! A certificate lists seed automorphisms and a chain of steps. Each step is
//! a product of conjugates `g⁻¹·b^{±1}·g` of earlier nodes together with the
//! expanded value it claims to equal. The verifier only composes, inverts, and
//! takes Jacobians; it never calls back into any construction code.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::endo::Endo;
use crate::error::Error;
use crate::factor::FactoredAuto;
use crate::field::Field;
use crate::poly::DEFAULT_DEGREE_CAP;

/// What the chain is meant to establish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// The normal closure of the seeds in `SA_n` contains a nontrivial elementary map.
    Cotame,
    /// The terminal lies in the normal closure of special linear seeds.
    Slin,
}

impl Claim {
    pub fn as_str(&self) -> &'static str {
        match self {
            Claim::Cotame => "COTAME",
            Claim::Slin => "SLIN",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodeRef {
    Seed(usize),
    Step(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub label: String,
    pub map: FactoredAuto,
}

/// `conjugator⁻¹ · base^exponent · conjugator`; `None` means the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub conjugator: Option<FactoredAuto>,
    pub base: NodeRef,
    pub exponent: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub label: String,
    pub items: Vec<Item>,
    pub claimed: Endo,
    /// Optional factored expression of `claimed`, used when later items refer to this step.
    pub form: Option<FactoredAuto>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub field: Field,
    pub n: usize,
    pub claim: Claim,
    pub seeds: Vec<Seed>,
    pub steps: Vec<Step>,
    pub terminal: NodeRef,
    pub meta: Vec<(String, String)>,
}

impl Certificate {
    pub fn label(&self, r: NodeRef) -> &str {
        match r {
            NodeRef::Seed(i) => &self.seeds[i].label,
            NodeRef::Step(i) => &self.steps[i].label,
        }
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// All values recorded under `key`.
    pub fn meta_values<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.meta.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn terminal_value(&self) -> Option<&Endo> {
        match self.terminal {
            NodeRef::Step(i) => self.steps.get(i).map(|s| &s.claimed),
            NodeRef::Seed(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Indeterminate,
    Fail,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Indeterminate => 2,
        }
    }

    fn worst(self, other: Verdict) -> Verdict {
        self.max(other)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Indeterminate => "INDETERMINATE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Issue {
    ValueMismatch,
    FormMismatch,
    SpecialityViolation { item: usize },
    SeedNotSpecial,
    SeedNotLinear,
    BadReference { item: usize },
    BadExponent { item: usize },
    ShapeMismatch,
    DegreeCap(Error),
    Algebra(Error),
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::ValueMismatch => f.write_str("ValueMismatch: word does not expand to the claimed value"),
            Issue::FormMismatch => f.write_str("FormMismatch: factored form does not expand to the claimed value"),
            Issue::SpecialityViolation { item } => {
                write!(f, "SpecialityViolation: conjugator of item {} has Jacobian determinant != 1", item + 1)
            }
            Issue::SeedNotSpecial => f.write_str("SpecialityViolation: seed has Jacobian determinant != 1"),
            Issue::SeedNotLinear => f.write_str("SeedNotLinear: linear seeds required for this claim"),
            Issue::BadReference { item } => write!(f, "BadReference: item {} does not point to an earlier node", item + 1),
            Issue::BadExponent { item } => write!(f, "BadExponent: item {} exponent is not ±1", item + 1),
            Issue::ShapeMismatch => f.write_str("ShapeMismatch: field or dimension differs from the certificate"),
            Issue::DegreeCap(e) | Issue::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl Issue {
    fn verdict(&self) -> Verdict {
        match self {
            Issue::DegreeCap(_) => Verdict::Indeterminate,
            _ => Verdict::Fail,
        }
    }

    fn from_error(e: Error) -> Issue {
        match e {
            Error::DegreeCapExceeded { .. } => Issue::DegreeCap(e),
            e => Issue::Algebra(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeReport {
    pub label: String,
    pub verdict: Verdict,
    pub issues: Vec<Issue>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TerminalIssue {
    NotAStep,
    NotElementary,
    Trivial,
}

impl fmt::Display for TerminalIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TerminalIssue::NotAStep => "terminal must reference a step",
            TerminalIssue::NotElementary => "terminal value is not elementary",
            TerminalIssue::Trivial => "terminal value is the identity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub seeds: Vec<NodeReport>,
    pub steps: Vec<NodeReport>,
    pub terminal: Option<TerminalIssue>,
    pub verdict: Verdict,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (kind, nodes) in [("seed", &self.seeds), ("step", &self.steps)] {
            for r in nodes {
                writeln!(f, "{kind} {}: {}", r.label, r.verdict)?;
                for i in &r.issues {
                    writeln!(f, "  {i}")?;
                }
            }
        }
        match &self.terminal {
            None => writeln!(f, "terminal: nontrivial elementary")?,
            Some(t) => writeln!(f, "terminal: {t}")?,
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

/// Evaluates item words over a fixed list of nodes.
///
/// Seeds, and steps that carry a factored form, are applied one factor at a
/// time so that intermediate products stay genuine automorphisms. Other
/// steps are applied through their expanded value.
pub struct Evaluator<'a> {
    field: &'a Field,
    n: usize,
    cap: Option<u32>,
    seeds: &'a [Seed],
    steps: &'a [Step],
    inverses: &'a mut BTreeMap<NodeRef, Endo>,
}

impl<'a> Evaluator<'a> {
    pub fn new(
        field: &'a Field,
        n: usize,
        cap: Option<u32>,
        seeds: &'a [Seed],
        steps: &'a [Step],
        inverses: &'a mut BTreeMap<NodeRef, Endo>,
    ) -> Evaluator<'a> {
        Evaluator { field, n, cap, seeds, steps, inverses }
    }

    fn word_of(&self, r: NodeRef) -> Option<&'a FactoredAuto> {
        let (seeds, steps) = (self.seeds, self.steps);
        match r {
            NodeRef::Seed(i) => Some(&seeds[i].map),
            NodeRef::Step(i) => steps[i].form.as_ref(),
        }
    }

    /// `acc · w^{±1}`, one factor at a time.
    pub fn apply_word(&self, mut acc: Endo, w: &FactoredAuto, inverse: bool) -> Result<Endo, Error> {
        let word = w.word();
        let mut apply = |f: &crate::factor::BasicFactor, e: i8| -> Result<(), Error> {
            let g = if e == 1 { f.expand(self.field)? } else { f.inverse(self.field)?.expand(self.field)? };
            acc = acc.compose_capped(&g, self.cap)?;
            Ok(())
        };
        if inverse {
            for (f, e) in word.iter().rev() {
                apply(f, -e)?;
            }
        } else {
            for (f, e) in word {
                apply(f, *e)?;
            }
        }
        Ok(acc)
    }

    /// `acc · node^e`.
    pub fn apply_node(&mut self, acc: Endo, r: NodeRef, e: i8) -> Result<Endo, Error> {
        if let Some(w) = self.word_of(r) {
            return self.apply_word(acc, w, e == -1);
        }
        let NodeRef::Step(i) = r else { unreachable!() };
        if e == 1 {
            let steps = self.steps;
            acc.compose_capped(&steps[i].claimed, self.cap)
        } else {
            let inv = self.inverse(r)?;
            acc.compose_capped(&inv, self.cap)
        }
    }

    pub fn inverse(&mut self, r: NodeRef) -> Result<Endo, Error> {
        if let Some(v) = self.inverses.get(&r) {
            return Ok(v.clone());
        }
        let id = Endo::identity(self.field, self.n);
        let inv = match self.word_of(r) {
            Some(w) => self.apply_word(id, w, true)?,
            None => {
                let steps = self.steps;
                let NodeRef::Step(i) = r else { unreachable!() };
                match steps[i].claimed.inverse_structured() {
                    Ok(v) => v,
                    // (Π g_k⁻¹ b_k^{e_k} g_k)⁻¹ = Π_rev g_k⁻¹ b_k^{-e_k} g_k
                    Err(_) => {
                        let mut acc = id;
                        for item in steps[i].items.iter().rev() {
                            acc = self.apply_item(acc, item, -item.exponent)?;
                        }
                        acc
                    }
                }
            }
        };
        self.inverses.insert(r, inv.clone());
        Ok(inv)
    }

    /// `acc · g⁻¹ · base^e · g`.
    pub fn apply_item(&mut self, acc: Endo, item: &Item, e: i8) -> Result<Endo, Error> {
        let acc = match &item.conjugator {
            Some(g) => self.apply_word(acc, g, true)?,
            None => acc,
        };
        let acc = self.apply_node(acc, item.base, e)?;
        match &item.conjugator {
            Some(g) => self.apply_word(acc, g, false),
            None => Ok(acc),
        }
    }

    pub fn evaluate(&mut self, items: &[Item]) -> Result<Endo, Error> {
        let mut acc = Endo::identity(self.field, self.n);
        for item in items {
            acc = self.apply_item(acc, item, item.exponent)?;
        }
        Ok(acc)
    }
}

fn check_step(cert: &Certificate, cap: Option<u32>, inverses: &mut BTreeMap<NodeRef, Endo>, idx: usize) -> Vec<Issue> {
    let step = &cert.steps[idx];
    let mut issues = Vec::new();
    if step.claimed.field() != &cert.field || step.claimed.n() != cert.n {
        issues.push(Issue::ShapeMismatch);
        return issues;
    }
    for (k, item) in step.items.iter().enumerate() {
        let ok_ref = match item.base {
            NodeRef::Seed(i) => i < cert.seeds.len(),
            NodeRef::Step(i) => i < idx,
        };
        if !ok_ref {
            issues.push(Issue::BadReference { item: k });
        }
        if item.exponent != 1 && item.exponent != -1 {
            issues.push(Issue::BadExponent { item: k });
        }
        if let Some(g) = &item.conjugator {
            if g.field() != &cert.field || g.n() != cert.n {
                issues.push(Issue::ShapeMismatch);
                continue;
            }
            match g.jacobian() {
                Ok(j) if cert.field.is_one(&j) => {}
                Ok(_) => issues.push(Issue::SpecialityViolation { item: k }),
                Err(e) => issues.push(Issue::from_error(e)),
            }
        }
    }
    if let Some(form) = &step.form {
        if form.field() != &cert.field || form.n() != cert.n {
            issues.push(Issue::ShapeMismatch);
        }
    }
    if !issues.is_empty() {
        return issues;
    }
    let mut ev = Evaluator::new(&cert.field, cert.n, cap, &cert.seeds, &cert.steps[..idx], inverses);
    match ev.evaluate(&step.items) {
        Ok(v) if v != step.claimed => issues.push(Issue::ValueMismatch),
        Ok(_) => {}
        Err(e) => {
            issues.push(Issue::from_error(e));
            return issues;
        }
    }
    if let Some(form) = &step.form {
        match ev.apply_word(Endo::identity(&cert.field, cert.n), form, false) {
            Ok(v) if v != step.claimed => issues.push(Issue::FormMismatch),
            Ok(_) => {}
            Err(e) => issues.push(Issue::from_error(e)),
        }
    }
    issues
}

fn summarize(label: &str, issues: Vec<Issue>) -> NodeReport {
    let verdict = issues.iter().fold(Verdict::Pass, |v, i| v.worst(i.verdict()));
    NodeReport { label: label.into(), verdict, issues }
}

pub fn verify_certificate(cert: &Certificate) -> VerificationReport {
    verify_certificate_capped(cert, Some(DEFAULT_DEGREE_CAP))
}

pub fn verify_certificate_capped(cert: &Certificate, cap: Option<u32>) -> VerificationReport {
    let mut inverses = BTreeMap::new();
    let mut seeds = Vec::new();
    for s in &cert.seeds {
        let mut issues = Vec::new();
        if s.map.field() != &cert.field || s.map.n() != cert.n {
            issues.push(Issue::ShapeMismatch);
        } else {
            match s.map.expand_capped(cap) {
                Ok(e) => {
                    if !e.jacobian_det().is_one() {
                        issues.push(Issue::SeedNotSpecial);
                    }
                    if cert.claim == Claim::Slin && !e.classify().linear {
                        issues.push(Issue::SeedNotLinear);
                    }
                }
                Err(e) => issues.push(Issue::from_error(e)),
            }
        }
        seeds.push(summarize(&s.label, issues));
    }
    let mut steps = Vec::new();
    for idx in 0..cert.steps.len() {
        let issues = check_step(cert, cap, &mut inverses, idx);
        steps.push(summarize(&cert.steps[idx].label, issues));
    }
    let terminal = match cert.terminal {
        NodeRef::Step(i) if i < cert.steps.len() => {
            let t = &cert.steps[i].claimed;
            if t.is_identity() {
                Some(TerminalIssue::Trivial)
            } else if t.as_elementary().is_none() {
                Some(TerminalIssue::NotElementary)
            } else {
                None
            }
        }
        _ => Some(TerminalIssue::NotAStep),
    };
    let mut verdict = seeds.iter().chain(&steps).fold(Verdict::Pass, |acc, r| acc.worst(r.verdict));
    if terminal.is_some() {
        verdict = Verdict::Fail;
    }
    VerificationReport { seeds, steps, terminal, verdict }
}

/// Human-readable one-line reason for a failed verdict.
pub fn first_failure(report: &VerificationReport) -> Option<String> {
    for r in report.seeds.iter().chain(&report.steps) {
        if let Some(i) = r.issues.first() {
            return Some(format!("{}: {}", r.label, i));
        }
    }
    report.terminal.as_ref().map(|t| format!("terminal: {t}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::BasicFactor;
    use crate::matrix::Matrix;
    use crate::poly::Poly;
    use alloc::vec;

    fn q() -> Field {
        Field::rationals()
    }

    fn eps(i: usize, c: i64) -> FactoredAuto {
        let f = q();
        let mut b = vec![f.zero(); 2];
        b[i] = f.from_i64(c);
        FactoredAuto::from_factor(&f, BasicFactor::Translation(b))
    }

    fn delta(b: i64) -> FactoredAuto {
        let f = q();
        let m = Matrix::diagonal(&f, &[f.from_i64(b), f.inv(&f.from_i64(b)).unwrap()]);
        FactoredAuto::from_factor(&f, BasicFactor::Linear(m))
    }

    fn single(seed: FactoredAuto, items: Vec<Item>, claimed: Endo) -> Certificate {
        Certificate {
            field: q(),
            n: 2,
            claim: Claim::Cotame,
            seeds: vec![Seed { label: "theta".into(), map: seed }],
            steps: vec![Step { label: "s1".into(), items, claimed, form: None, notes: vec![] }],
            terminal: NodeRef::Step(0),
            meta: vec![],
        }
    }

    #[test]
    fn trivial_certificate_passes() {
        let e = eps(0, 1);
        let cert = single(e.clone(), vec![Item { conjugator: None, base: NodeRef::Seed(0), exponent: 1 }], e.expand().unwrap());
        let r = verify_certificate(&cert);
        assert_eq!(r.verdict, Verdict::Pass, "{r}");
    }

    #[test]
    fn commutator_certificate_passes() {
        // seed δ = δ_{1,2,2}; ε_{1,1}⁻¹ δ ε_{1,1} δ⁻¹ = ε_{1,1}
        let d = delta(2);
        let items = vec![
            Item { conjugator: Some(eps(0, 1)), base: NodeRef::Seed(0), exponent: 1 },
            Item { conjugator: None, base: NodeRef::Seed(0), exponent: -1 },
        ];
        let cert = single(d, items, eps(0, 1).expand().unwrap());
        assert_eq!(verify_certificate(&cert).verdict, Verdict::Pass);
    }

    #[test]
    fn non_special_conjugator_fails() {
        let f = q();
        let e = eps(0, 1);
        let bad = FactoredAuto::from_factor(&f, BasicFactor::Linear(Matrix::diagonal(&f, &[f.from_i64(2), f.one()])));
        let value = bad.inverse().then(&e).then(&bad).expand().unwrap();
        let cert = single(e, vec![Item { conjugator: Some(bad), base: NodeRef::Seed(0), exponent: 1 }], value);
        let r = verify_certificate(&cert);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(matches!(r.steps[0].issues[0], Issue::SpecialityViolation { item: 0 }));
    }

    #[test]
    fn wrong_value_and_trivial_terminal_fail() {
        let e = eps(0, 1);
        let cert = single(e.clone(), vec![Item { conjugator: None, base: NodeRef::Seed(0), exponent: 1 }], eps(0, 2).expand().unwrap());
        assert_eq!(verify_certificate(&cert).steps[0].issues, vec![Issue::ValueMismatch]);
        let items = vec![
            Item { conjugator: None, base: NodeRef::Seed(0), exponent: 1 },
            Item { conjugator: None, base: NodeRef::Seed(0), exponent: -1 },
        ];
        let cert = single(e, items, Endo::identity(&q(), 2));
        let r = verify_certificate(&cert);
        assert_eq!(r.terminal, Some(TerminalIssue::Trivial));
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn forward_reference_rejected() {
        let e = eps(0, 1);
        let cert = single(e.clone(), vec![Item { conjugator: None, base: NodeRef::Step(0), exponent: 1 }], e.expand().unwrap());
        assert!(matches!(verify_certificate(&cert).steps[0].issues[0], Issue::BadReference { .. }));
    }

    #[test]
    fn inverse_of_unstructured_step_via_word() {
        let f = q();
        let n = 2;
        let x = |i| Poly::var(&f, n, i);
        let a = FactoredAuto::from_factor(&f, BasicFactor::elementary(0, x(1).pow(2)).unwrap());
        let b = FactoredAuto::from_factor(&f, BasicFactor::elementary(1, x(0).pow(2)).unwrap());
        let ab = a.then(&b);
        let v = ab.expand().unwrap();
        assert!(v.inverse_structured().is_err());
        let mut cert = single(ab, vec![Item { conjugator: None, base: NodeRef::Seed(0), exponent: 1 }], v);
        cert.steps.push(Step {
            label: "s2".into(),
            items: vec![
                Item { conjugator: None, base: NodeRef::Step(0), exponent: -1 },
                Item { conjugator: None, base: NodeRef::Seed(0), exponent: 1 },
                Item { conjugator: Some(eps(1, 3)), base: NodeRef::Seed(0), exponent: 1 },
                Item { conjugator: Some(eps(1, 3)), base: NodeRef::Step(0), exponent: -1 },
            ],
            claimed: Endo::identity(&f, n),
            form: None,
            notes: vec![],
        });
        cert.terminal = NodeRef::Step(0);
        let r = verify_certificate(&cert);
        assert_eq!(r.steps[1].verdict, Verdict::Pass, "{r}");
        // terminal is not elementary
        assert_eq!(r.terminal, Some(TerminalIssue::NotElementary));
    }

    #[test]
    fn factored_form_is_checked_and_used() {
        let f = q();
        let x = |i| Poly::var(&f, 2, i);
        let a = FactoredAuto::from_factor(&f, BasicFactor::elementary(0, x(1).pow(2)).unwrap());
        let b = FactoredAuto::from_factor(&f, BasicFactor::elementary(1, x(0).pow(2)).unwrap());
        let ab = a.then(&b);
        let v = ab.expand().unwrap();
        let mut cert = single(ab.clone(), vec![Item { conjugator: None, base: NodeRef::Seed(0), exponent: 1 }], v.clone());
        cert.steps[0].form = Some(ab.clone());
        cert.steps.push(Step {
            label: "s2".into(),
            items: vec![
                Item { conjugator: Some(eps(0, 1)), base: NodeRef::Step(0), exponent: 1 },
                Item { conjugator: None, base: NodeRef::Step(0), exponent: -1 },
            ],
            claimed: ab.conj(&eps(0, 1)).then(&ab.inverse()).expand().unwrap(),
            form: None,
            notes: vec![],
        });
        let r = verify_certificate(&cert);
        assert!(r.steps.iter().all(|s| s.verdict == Verdict::Pass), "{r}");
        cert.steps[0].form = Some(b.then(&a));
        let r = verify_certificate(&cert);
        assert_eq!(r.steps[0].issues, vec![Issue::FormMismatch]);
    }

    #[test]
    fn cap_makes_indeterminate() {
        let f = q();
        let x = |i| Poly::var(&f, 2, i);
        let a = FactoredAuto::from_factor(&f, BasicFactor::elementary(1, x(0).pow(5)).unwrap());
        let g = FactoredAuto::from_factor(&f, BasicFactor::elementary(0, x(1).pow(5)).unwrap());
        let value = a.conj(&g).expand().unwrap();
        let cert = single(a, vec![Item { conjugator: Some(g), base: NodeRef::Seed(0), exponent: 1 }], value);
        let r = verify_certificate_capped(&cert, Some(8));
        assert_eq!(r.steps[0].verdict, Verdict::Indeterminate);
        assert_eq!(verify_certificate(&cert).steps[0].verdict, Verdict::Pass);
    }
}
