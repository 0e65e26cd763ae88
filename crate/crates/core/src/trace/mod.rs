//! Events, observations, trace sets, and the predicates stated over them.
//!
//! An [`Obs`] is a finite event sequence closed by a [`Marker`]: `Term` when
//! the whole program was seen to terminate, `Incomplete` when the run was cut
//! (fuel, a blocked read, the event bound, a stuck target, or detected
//! divergence). Every property in this crate is a predicate over observations
//! or over finite sets of them.

mod classify;
mod monitor;
mod property;
pub mod syntax;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Bounds;

pub use classify::{
    bad_observations, is_k_hypersafety_bounded, is_k_subset_closed_bounded,
    is_lifted_property_bounded, is_safety_bounded, is_subset_closed_bounded, Universe,
    DEFAULT_SUBSET_GUARD,
};
pub use monitor::{EventPattern, MonitorVerdict, Pattern, SafetyMonitor};
pub use property::{lift, satisfies_hyper, satisfies_property, ClassTag, Hyperproperty, Property};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    In,
    Out,
}

/// Which side of the program/context boundary executed an I/O primitive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Prog,
    Ctx,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Prog => "prog",
            Origin::Ctx => "ctx",
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Event {
    pub kind: Kind,
    pub value: u32,
    pub origin: Origin,
}

impl Event {
    pub fn input(value: u32, origin: Origin) -> Self {
        Event {
            kind: Kind::In,
            value,
            origin,
        }
    }

    pub fn output(value: u32, origin: Origin) -> Self {
        Event {
            kind: Kind::Out,
            value,
            origin,
        }
    }

    /// Every event with a value in `0..=val_cap`.
    pub fn alphabet(val_cap: u32) -> Vec<Event> {
        let mut out = Vec::new();
        for kind in [Kind::In, Kind::Out] {
            for origin in [Origin::Prog, Origin::Ctx] {
                for value in 0..=val_cap {
                    out.push(Event {
                        kind,
                        value,
                        origin,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            Kind::In => "In",
            Kind::Out => "Out",
        };
        write!(f, "{kind}({},{})", self.value, self.origin)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Marker {
    Term,
    Incomplete,
}

/// A finite observation of a run.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Obs {
    pub events: Vec<Event>,
    pub marker: Marker,
}

impl Obs {
    pub fn new(events: Vec<Event>, marker: Marker) -> Self {
        Obs { events, marker }
    }

    pub fn term(events: Vec<Event>) -> Self {
        Obs::new(events, Marker::Term)
    }

    pub fn incomplete(events: Vec<Event>) -> Self {
        Obs::new(events, Marker::Incomplete)
    }

    pub fn is_term(&self) -> bool {
        self.marker == Marker::Term
    }

    /// The `Incomplete` prefixes of this observation, shortest first. The
    /// last one carries all of `self.events`.
    pub fn prefixes(&self) -> impl Iterator<Item = Obs> + '_ {
        (0..=self.events.len()).map(|n| Obs::incomplete(self.events[..n].to_vec()))
    }
}

impl fmt::Display for Obs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        let marker = match self.marker {
            Marker::Term => "term",
            Marker::Incomplete => "incomplete",
        };
        write!(f, "] {marker}")
    }
}

/// `m ≤ t`: an incomplete observation is a prefix of every observation whose
/// events extend it; a terminated one is a prefix only of itself.
pub fn prefix_of(m: &Obs, t: &Obs) -> bool {
    match m.marker {
        Marker::Term => m == t,
        Marker::Incomplete => t.events.starts_with(&m.events),
    }
}

/// A bounded approximation of the set of traces of a whole program.
///
/// `fuel_cut` records the members that were produced by a run which ran out
/// of fuel before reaching the event bound; comparisons involving such sets
/// are inconclusive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSet {
    pub members: BTreeSet<Obs>,
    pub fuel_cut: BTreeSet<Obs>,
    pub bounds: Bounds,
}

impl TraceSet {
    pub fn new(bounds: Bounds) -> Self {
        TraceSet {
            members: BTreeSet::new(),
            fuel_cut: BTreeSet::new(),
            bounds,
        }
    }

    pub fn from_members(members: impl IntoIterator<Item = Obs>, bounds: Bounds) -> Self {
        TraceSet {
            members: members.into_iter().collect(),
            fuel_cut: BTreeSet::new(),
            bounds,
        }
    }

    pub fn insert(&mut self, obs: Obs, fuel_cut: bool) {
        if fuel_cut {
            self.fuel_cut.insert(obs.clone());
        }
        self.members.insert(obs);
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, obs: &Obs) -> bool {
        self.members.contains(obs)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Obs> {
        self.members.iter()
    }

    /// No member came from a fuel-exhausted run.
    pub fn is_conclusive(&self) -> bool {
        self.fuel_cut.is_empty()
    }

    /// Same members, ignoring bounds and fuel-cut bookkeeping.
    pub fn same_members(&self, other: &TraceSet) -> bool {
        self.members == other.members
    }
}

impl fmt::Display for TraceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, o) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({o})")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inc(events: Vec<Event>) -> Obs {
        Obs::incomplete(events)
    }

    #[test]
    fn incomplete_prefix_of_longer_term() {
        let m = inc(vec![Event::input(1, Origin::Ctx)]);
        let t = Obs::term(vec![
            Event::input(1, Origin::Ctx),
            Event::output(2, Origin::Prog),
        ]);
        assert!(prefix_of(&m, &t));
    }

    #[test]
    fn empty_prefix_of_anything() {
        let t = Obs::term(vec![Event::output(3, Origin::Prog)]);
        assert!(prefix_of(&inc(vec![]), &t));
        assert!(prefix_of(&inc(vec![]), &inc(vec![])));
    }

    #[test]
    fn term_marker_demands_equality() {
        let m = Obs::term(vec![Event::output(1, Origin::Prog)]);
        let t = Obs::term(vec![
            Event::output(1, Origin::Prog),
            Event::output(2, Origin::Prog),
        ]);
        assert!(!prefix_of(&m, &t));
        assert!(prefix_of(&m, &m));
    }

    #[test]
    fn display_matches_cli_format() {
        let o = Obs::term(vec![
            Event::input(3, Origin::Prog),
            Event::output(3, Origin::Prog),
        ]);
        assert_eq!(o.to_string(), "[In(3,prog) Out(3,prog)] term");
        assert_eq!(inc(vec![]).to_string(), "[] incomplete");
    }

    #[test]
    fn prefixes_end_with_full_events() {
        let t = Obs::term(vec![Event::output(1, Origin::Ctx)]);
        let ps: Vec<_> = t.prefixes().collect();
        assert_eq!(ps, vec![inc(vec![]), inc(vec![Event::output(1, Origin::Ctx)])]);
    }
}
