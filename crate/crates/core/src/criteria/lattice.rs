//! Implication checks between bounded verdicts.
//!
//! An edge `A ⇒ B` is violated on an instance when `A` holds within bounds
//! and `B` has a counterexample. Inconclusive verdicts never violate an
//! edge. A violation points at a bug in the checkers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{PropertyClass, Status};
use crate::{Bounds, Error};

/// Class-preservation result for one suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteVerdict {
    pub status: Status,
    /// Names of the suite members.
    pub suite: Vec<String>,
}

/// Verdicts of one (compiler, program) instance, all under `bounds`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceVerdicts {
    pub label: String,
    pub bounds: Bounds,
    pub rsp: Option<Status>,
    pub rtp: Option<Status>,
    pub rhp: Option<Status>,
    pub strong_rhp: Option<Status>,
    pub classes: BTreeMap<PropertyClass, SuiteVerdict>,
}

impl InstanceVerdicts {
    pub fn new(label: impl Into<String>, bounds: Bounds) -> Self {
        InstanceVerdicts {
            label: label.into(),
            bounds,
            rsp: None,
            rtp: None,
            rhp: None,
            strong_rhp: None,
            classes: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeViolation {
    pub instance: String,
    pub stronger: String,
    pub weaker: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub instances: usize,
    pub edges_checked: usize,
    pub violations: Vec<EdgeViolation>,
}

impl LatticeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Whether class `a` contains class `b`, so that preserving all of `a`
/// implies preserving all of `b`.
fn contains(a: PropertyClass, b: PropertyClass) -> bool {
    use PropertyClass::*;
    match (a, b) {
        _ if a == b => true,
        (AllHyper, _) => true,
        (SubsetClosed, KHypersafety(_) | Safety) => true,
        (KHypersafety(k), KHypersafety(j)) => j <= k,
        (KHypersafety(_), Safety) => true,
        (TraceProps, Safety) => true,
        _ => false,
    }
}

fn edge(
    report: &mut LatticeReport,
    instance: &str,
    (sn, s): (&str, Option<Status>),
    (wn, w): (&str, Option<Status>),
) {
    let (Some(s), Some(w)) = (s, w) else {
        return;
    };
    report.edges_checked += 1;
    if s == Status::HoldsWithinBounds && w == Status::Counterexample {
        report.violations.push(EdgeViolation {
            instance: instance.to_string(),
            stronger: sn.to_string(),
            weaker: wn.to_string(),
        });
    }
}

/// Checks strong RHP ⇒ RHP ⇒ RTP ⇒ RSP (with the transitive edges) and,
/// for each pair of nested classes whose suites nest, preservation of the
/// larger suite ⇒ preservation of the smaller one.
pub fn lattice_check(instances: &[InstanceVerdicts]) -> Result<LatticeReport, Error> {
    if let Some(first) = instances.first() {
        if let Some(odd) = instances.iter().find(|i| i.bounds != first.bounds) {
            return Err(Error::BoundsMismatch(format!(
                "instance `{}` was checked under different bounds than `{}`",
                odd.label, first.label
            )));
        }
    }
    let mut report = LatticeReport {
        instances: instances.len(),
        ..LatticeReport::default()
    };
    for inst in instances {
        let chain = [
            ("strong-rhp", inst.strong_rhp),
            ("rhp", inst.rhp),
            ("rtp", inst.rtp),
            ("rsp", inst.rsp),
        ];
        for i in 0..chain.len() {
            for j in i + 1..chain.len() {
                edge(&mut report, &inst.label, chain[i], chain[j]);
            }
        }
        for (&a, va) in &inst.classes {
            for (&b, vb) in &inst.classes {
                if a == b || !contains(a, b) || !vb.suite.iter().all(|n| va.suite.contains(n)) {
                    continue;
                }
                edge(
                    &mut report,
                    &inst.label,
                    (&a.name(), Some(va.status)),
                    (&b.name(), Some(vb.status)),
                );
            }
        }
    }
    Ok(report)
}
