//! Run-time plumbing shared by both evaluators: the input stream and event
//! log, cut causes, divergence detection, and trace-set exploration over all
//! input streams.

use serde::{Deserialize, Serialize};

use crate::trace::{Event, Marker, Obs, Origin, TraceSet};
use crate::Bounds;

/// Why a run ended without reaching a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cut {
    /// Step budget exhausted. The only inconclusive cause.
    Fuel,
    /// A read found the input stream exhausted.
    Blocked,
    /// An I/O action would have exceeded the event bound.
    EventBound,
    /// The target machine reached a stuck configuration.
    Stuck,
    /// A configuration repeated with no I/O in between.
    Diverged,
}

/// Outcome of one run on one input stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub obs: Obs,
    pub cut: Option<Cut>,
    pub steps: u64,
    /// How many stream values the run read.
    pub consumed: usize,
}

impl Run {
    pub fn fuel_cut(&self) -> bool {
        self.cut == Some(Cut::Fuel)
    }
}

/// Input stream and event log of a running machine.
pub(crate) struct Io<'a> {
    stream: &'a [u32],
    pos: usize,
    events: Vec<Event>,
    event_bound: usize,
}

impl<'a> Io<'a> {
    pub(crate) fn new(stream: &'a [u32], bounds: &Bounds) -> Self {
        Io {
            stream,
            pos: 0,
            events: Vec::new(),
            event_bound: bounds.event_bound,
        }
    }

    pub(crate) fn read(&mut self, origin: Origin) -> Result<u32, Cut> {
        if self.events.len() >= self.event_bound {
            return Err(Cut::EventBound);
        }
        let Some(&v) = self.stream.get(self.pos) else {
            return Err(Cut::Blocked);
        };
        self.pos += 1;
        self.events.push(Event::input(v, origin));
        Ok(v)
    }

    pub(crate) fn write(&mut self, value: u32, origin: Origin) -> Result<(), Cut> {
        if self.events.len() >= self.event_bound {
            return Err(Cut::EventBound);
        }
        self.events.push(Event::output(value, origin));
        Ok(())
    }

    pub(crate) fn finish(self, cut: Option<Cut>, steps: u64) -> Run {
        let marker = if cut.is_some() {
            Marker::Incomplete
        } else {
            Marker::Term
        };
        Run {
            obs: Obs::new(self.events, marker),
            cut,
            steps,
            consumed: self.pos,
        }
    }
}

/// Brent-style cycle detection over machine configurations. Deterministic
/// machines that revisit a configuration without performing I/O diverge.
pub(crate) struct CycleDetector<T> {
    saved: Option<T>,
    power: u64,
    lam: u64,
}

impl<T: Clone + PartialEq> CycleDetector<T> {
    pub(crate) fn new() -> Self {
        CycleDetector {
            saved: None,
            power: 1,
            lam: 0,
        }
    }

    pub(crate) fn reset(&mut self) {
        self.saved = None;
        self.power = 1;
        self.lam = 0;
    }

    /// Records the current configuration; `true` when it repeats one seen
    /// since the last reset.
    pub(crate) fn looped(&mut self, current: &T) -> bool {
        match &self.saved {
            Some(s) if s == current => return true,
            Some(_) => {}
            None => {
                self.saved = Some(current.clone());
                return false;
            }
        }
        self.lam += 1;
        if self.lam == self.power {
            self.saved = Some(current.clone());
            self.power *= 2;
            self.lam = 0;
        }
        false
    }
}

/// The trace set of a deterministic machine over every input stream of
/// length `bounds.stream_len`. Streams sharing the prefix a run actually
/// consumed are skipped: they produce the same run.
pub fn explore_streams(bounds: &Bounds, mut run: impl FnMut(&[u32]) -> Run) -> (TraceSet, Vec<Run>) {
    let mut set = TraceSet::new(*bounds);
    let mut runs = Vec::new();
    let len = bounds.stream_len;
    let mut stream = vec![0u32; len];
    loop {
        let r = run(&stream);
        set.insert(r.obs.clone(), r.fuel_cut());
        let consumed = r.consumed.min(len);
        runs.push(r);
        if consumed == 0 {
            break;
        }
        // Odometer increment at the last consumed position.
        let mut i = consumed;
        loop {
            if i == 0 {
                return (set, runs);
            }
            i -= 1;
            if stream[i] < bounds.val_cap {
                stream[i] += 1;
                for s in &mut stream[i + 1..] {
                    *s = 0;
                }
                break;
            }
        }
    }
    (set, runs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bounds() -> Bounds {
        Bounds {
            stream_len: 2,
            val_cap: 2,
            ..Bounds::default()
        }
    }

    #[test]
    fn stream_independent_runs_once() {
        let (set, runs) = explore_streams(&bounds(), |s| Io::new(s, &bounds()).finish(None, 1));
        assert_eq!(runs.len(), 1);
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn exploration_covers_consumed_prefixes() {
        // Reads one value: 3 distinct runs at val_cap 2.
        let (set, runs) = explore_streams(&bounds(), |s| {
            let mut io = Io::new(s, &bounds());
            io.read(Origin::Ctx).unwrap();
            io.finish(None, 1)
        });
        assert_eq!(runs.len(), 3);
        assert_eq!(set.len(), 3);
    }

    #[test]
    fn exploration_matches_full_enumeration() {
        let b = bounds();
        let machine = |s: &[u32]| {
            let mut io = Io::new(s, &b);
            let v = io.read(Origin::Ctx).unwrap();
            if v == 1 {
                io.read(Origin::Ctx).unwrap();
            }
            io.finish(None, 1)
        };
        let (set, _) = explore_streams(&b, machine);
        let mut full = TraceSet::new(b);
        for s in b.streams() {
            full.insert(machine(&s).obs, false);
        }
        assert_eq!(set, full);
    }

    #[test]
    fn event_bound_cuts() {
        let b = Bounds {
            event_bound: 1,
            ..bounds()
        };
        let mut io = Io::new(&[], &b);
        io.write(1, Origin::Prog).unwrap();
        assert_eq!(io.write(2, Origin::Prog), Err(Cut::EventBound));
    }

    #[test]
    fn detector_finds_period_two() {
        let mut d = CycleDetector::new();
        let seq = [5, 1, 2, 3, 2, 3, 2, 3, 2, 3];
        assert!(seq.iter().any(|x| d.looped(x)));
    }
}
