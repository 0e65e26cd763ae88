use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{Event, EventPattern, Kind, MonitorVerdict, Obs, Origin, SafetyMonitor, TraceSet};

type ObsPredicate = Arc<dyn Fn(&Obs) -> bool + Send + Sync>;
type SetPredicate = Arc<dyn Fn(&BTreeSet<Obs>) -> bool + Send + Sync>;

/// A trace property, optionally backed by a bad-prefix monitor.
#[derive(Clone)]
pub struct Property {
    name: String,
    predicate: ObsPredicate,
    monitor: Option<SafetyMonitor>,
}

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Property")
            .field("name", &self.name)
            .field("monitor", &self.monitor.is_some())
            .finish()
    }
}

impl Property {
    pub fn new(name: impl Into<String>, f: impl Fn(&Obs) -> bool + Send + Sync + 'static) -> Self {
        Property {
            name: name.into(),
            predicate: Arc::new(f),
            monitor: None,
        }
    }

    /// A safety property given by its monitor. An observation satisfies it
    /// iff no prefix reaches a bad state; since bad states absorb, that is the
    /// state after the whole event sequence. Events outside the monitor's
    /// alphabet count as violations.
    pub fn from_monitor(name: impl Into<String>, monitor: SafetyMonitor) -> Self {
        let m = monitor.clone();
        Property {
            name: name.into(),
            predicate: Arc::new(move |t| matches!(m.run(t), Ok(MonitorVerdict::Good))),
            monitor: Some(monitor),
        }
    }

    pub fn top() -> Self {
        Property::new("true", |_| true)
    }

    pub fn terminates() -> Self {
        Property::new("terminates", |t| t.is_term())
    }

    pub fn equals(obs: Obs) -> Self {
        Property::new(format!("equals {obs}"), move |t| *t == obs)
    }

    pub fn never(event: EventPattern, val_cap: u32) -> Self {
        Property::from_monitor("never", SafetyMonitor::never(event, val_cap))
    }

    /// No Prog-origin output of 0.
    pub fn no_prog_out_zero(val_cap: u32) -> Self {
        Property::from_monitor(
            "no-prog-out-0",
            SafetyMonitor::never(EventPattern::exact(Event::output(0, Origin::Prog)), val_cap),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn monitor(&self) -> Option<&SafetyMonitor> {
        self.monitor.as_ref()
    }

    pub fn holds(&self, t: &Obs) -> bool {
        (self.predicate)(t)
    }
}

pub fn satisfies_property(s: &TraceSet, p: &Property) -> bool {
    s.iter().all(|t| p.holds(t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassTag {
    Safety,
    Hypersafety,
    KHypersafety(usize),
    SubsetClosed,
    Lifted,
}

/// A predicate over bounded trace sets. Class tags are advisory; the
/// bounded classifiers decide class membership.
#[derive(Clone)]
pub struct Hyperproperty {
    name: String,
    predicate: SetPredicate,
    tags: BTreeSet<ClassTag>,
    lifted_from: Option<Property>,
    universe: Option<Vec<Obs>>,
}

impl fmt::Debug for Hyperproperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hyperproperty")
            .field("name", &self.name)
            .field("tags", &self.tags)
            .finish()
    }
}

impl Hyperproperty {
    pub fn new(
        name: impl Into<String>,
        tags: impl IntoIterator<Item = ClassTag>,
        f: impl Fn(&BTreeSet<Obs>) -> bool + Send + Sync + 'static,
    ) -> Self {
        Hyperproperty {
            name: name.into(),
            predicate: Arc::new(f),
            tags: tags.into_iter().collect(),
            lifted_from: None,
            universe: None,
        }
    }

    pub fn top() -> Self {
        lift(Property::top())
    }

    /// `|S| ≥ n`. Not subset-closed for `n ≥ 1`.
    pub fn min_size(n: usize) -> Self {
        Hyperproperty::new(format!("min-size {n}"), [], move |s| s.len() >= n)
    }

    /// First-input noninterference: Prog-origin outputs may depend only on
    /// the Ctx-origin inputs after the first one.
    ///
    /// Stated over prefixes so that it is a 2-hypersafety property: for all
    /// members `t1, t2` and all event prefixes `p1` of `t1`, `p2` of `t2`
    /// whose public inputs coincide, the Prog outputs of `p1` and `p2` must be
    /// prefix-compatible.
    pub fn first_input_ni() -> Self {
        Hyperproperty::new(
            "first-input-ni",
            [ClassTag::Hypersafety, ClassTag::KHypersafety(2), ClassTag::SubsetClosed],
            |s| {
                let views: Vec<Vec<(Vec<u32>, Vec<u32>)>> =
                    s.iter().map(|t| prefix_views(&t.events)).collect();
                for (i, a) in views.iter().enumerate() {
                    for b in &views[i..] {
                        for (in_a, out_a) in a {
                            for (in_b, out_b) in b {
                                if in_a == in_b && !compatible(out_a, out_b) {
                                    return false;
                                }
                            }
                        }
                    }
                }
                true
            },
        )
    }

    /// The first Prog-origin output values of the members take at most `n`
    /// distinct values. A `(n+1)`-hypersafety property.
    pub fn first_output_diversity(n: usize) -> Self {
        Hyperproperty::new(
            format!("first-output-diversity {n}"),
            [ClassTag::Hypersafety, ClassTag::KHypersafety(n + 1), ClassTag::SubsetClosed],
            move |s| {
                let firsts: BTreeSet<u32> = s
                    .iter()
                    .filter_map(|t| {
                        t.events
                            .iter()
                            .find(|e| e.kind == Kind::Out && e.origin == Origin::Prog)
                            .map(|e| e.value)
                    })
                    .collect();
                firsts.len() <= n
            },
        )
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_universe(mut self, universe: Vec<Obs>) -> Self {
        self.universe = Some(universe);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tags(&self) -> &BTreeSet<ClassTag> {
        &self.tags
    }

    pub fn lifted_from(&self) -> Option<&Property> {
        self.lifted_from.as_ref()
    }

    pub fn universe(&self) -> Option<&[Obs]> {
        self.universe.as_deref()
    }

    pub fn holds(&self, s: &BTreeSet<Obs>) -> bool {
        (self.predicate)(s)
    }
}

/// For each event prefix: (Ctx inputs after the first one, Prog outputs).
fn prefix_views(events: &[Event]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::with_capacity(events.len() + 1);
    let mut seen_first = false;
    let mut public = Vec::new();
    let mut outputs = Vec::new();
    out.push((public.clone(), outputs.clone()));
    for e in events {
        match (e.kind, e.origin) {
            (Kind::In, Origin::Ctx) => {
                if seen_first {
                    public.push(e.value);
                }
                seen_first = true;
            }
            (Kind::Out, Origin::Prog) => outputs.push(e.value),
            _ => {}
        }
        out.push((public.clone(), outputs.clone()));
    }
    out
}

fn compatible(a: &[u32], b: &[u32]) -> bool {
    a.starts_with(b) || b.starts_with(a)
}

pub fn satisfies_hyper(s: &TraceSet, h: &Hyperproperty) -> bool {
    h.holds(&s.members)
}

/// The hyperproperty of all trace sets whose members all satisfy `p`.
pub fn lift(p: Property) -> Hyperproperty {
    let mut tags = vec![ClassTag::Lifted, ClassTag::SubsetClosed];
    if p.monitor().is_some() {
        tags.extend([ClassTag::Safety, ClassTag::Hypersafety, ClassTag::KHypersafety(1)]);
    }
    let q = p.clone();
    let mut h = Hyperproperty::new(format!("lift({})", p.name()), tags, move |s| {
        s.iter().all(|t| q.holds(t))
    });
    h.lifted_from = Some(p);
    h
}
