use std::collections::BTreeSet;

use super::{Event, Kind, Obs, Origin};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern<T> {
    Any,
    Exactly(T),
}

impl<T: PartialEq> Pattern<T> {
    pub fn matches(&self, x: &T) -> bool {
        match self {
            Pattern::Any => true,
            Pattern::Exactly(y) => x == y,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EventPattern {
    pub kind: Pattern<Kind>,
    pub origin: Pattern<Origin>,
    pub value: Pattern<u32>,
}

impl EventPattern {
    pub const ANY: EventPattern = EventPattern {
        kind: Pattern::Any,
        origin: Pattern::Any,
        value: Pattern::Any,
    };

    pub fn exact(e: Event) -> Self {
        EventPattern {
            kind: Pattern::Exactly(e.kind),
            origin: Pattern::Exactly(e.origin),
            value: Pattern::Exactly(e.value),
        }
    }

    pub fn matches(&self, e: &Event) -> bool {
        self.kind.matches(&e.kind) && self.origin.matches(&e.origin) && self.value.matches(&e.value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonitorVerdict {
    Good,
    Bad,
}

/// A deterministic bad-prefix automaton. Rules are tried in order; the first
/// one whose source state and pattern match fires.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SafetyMonitor {
    states: Vec<String>,
    initial: usize,
    bad: BTreeSet<usize>,
    rules: Vec<(usize, EventPattern, usize)>,
}

impl SafetyMonitor {
    /// Builds a monitor and checks that it is total over the event alphabet
    /// with values up to `val_cap` and that its bad states are absorbing.
    pub fn new(
        states: Vec<String>,
        initial: &str,
        bad: &[&str],
        rules: Vec<(&str, EventPattern, &str)>,
        val_cap: u32,
    ) -> Result<Self, Error> {
        let index = |name: &str| {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::Config(format!("monitor: unknown state `{name}`")))
        };
        let initial = index(initial)?;
        let bad = bad.iter().map(|b| index(b)).collect::<Result<BTreeSet<_>, _>>()?;
        let rules = rules
            .into_iter()
            .map(|(from, pat, to)| Ok((index(from)?, pat, index(to)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        let mon = SafetyMonitor {
            states,
            initial,
            bad,
            rules,
        };
        mon.validate(val_cap)?;
        Ok(mon)
    }

    fn validate(&self, val_cap: u32) -> Result<(), Error> {
        for q in 0..self.states.len() {
            for e in Event::alphabet(val_cap) {
                let next = self.next(q, &e)?;
                if self.bad.contains(&q) && !self.bad.contains(&next) {
                    return Err(Error::Config(format!(
                        "monitor: bad state `{}` is not absorbing on {e}",
                        self.states[q]
                    )));
                }
            }
        }
        Ok(())
    }

    fn next(&self, q: usize, e: &Event) -> Result<usize, Error> {
        self.rules
            .iter()
            .find(|(from, pat, _)| *from == q && pat.matches(e))
            .map(|(_, _, to)| *to)
            .ok_or_else(|| {
                Error::Config(format!(
                    "monitor: no transition from `{}` on {e}",
                    self.states[q]
                ))
            })
    }

    pub fn state_after(&self, events: &[Event]) -> Result<usize, Error> {
        events.iter().try_fold(self.initial, |q, e| self.next(q, e))
    }

    pub fn run(&self, m: &Obs) -> Result<MonitorVerdict, Error> {
        let q = self.state_after(&m.events)?;
        Ok(if self.bad.contains(&q) {
            MonitorVerdict::Bad
        } else {
            MonitorVerdict::Good
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> &str {
        &self.states[self.initial]
    }

    pub fn bad_states(&self) -> impl Iterator<Item = &str> {
        self.bad.iter().map(|&i| self.states[i].as_str())
    }

    pub fn rules(&self) -> impl Iterator<Item = (&str, &EventPattern, &str)> {
        self.rules
            .iter()
            .map(|(f, p, t)| (self.states[*f].as_str(), p, self.states[*t].as_str()))
    }

    /// "never `event`": one good state, one absorbing bad state.
    pub fn never(event: EventPattern, val_cap: u32) -> Self {
        SafetyMonitor::new(
            vec!["q0".into(), "qbad".into()],
            "q0",
            &["qbad"],
            vec![
                ("q0", event, "qbad"),
                ("q0", EventPattern::ANY, "q0"),
                ("qbad", EventPattern::ANY, "qbad"),
            ],
            val_cap,
        )
        .expect("never-monitor is total")
    }
}
