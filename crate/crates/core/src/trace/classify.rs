//! Bounded classifiers for the hyperproperty classes.
//!
//! Each classifier decides class membership by brute force over a finite
//! universe of observations. Classifiers that quantify over subsets of the
//! universe refuse universes larger than a configurable guard.

use std::collections::BTreeSet;

use super::{prefix_of, Event, Hyperproperty, Obs, Property};
use crate::Error;

/// Largest universe the subset-enumerating classifiers accept by default.
pub const DEFAULT_SUBSET_GUARD: usize = 14;

/// A finite, canonically ordered, duplicate-free set of observations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    members: Vec<Obs>,
}

impl Universe {
    pub fn new(members: impl IntoIterator<Item = Obs>) -> Self {
        let set: BTreeSet<Obs> = members.into_iter().collect();
        Universe {
            members: set.into_iter().collect(),
        }
    }

    /// Every observation with at most `max_events` events over values
    /// `0..=val_cap`, under both markers.
    pub fn all(max_events: usize, val_cap: u32) -> Self {
        let alphabet = Event::alphabet(val_cap);
        let mut layer: Vec<Vec<Event>> = vec![Vec::new()];
        let mut seqs = layer.clone();
        for _ in 0..max_events {
            layer = layer
                .iter()
                .flat_map(|s| {
                    alphabet.iter().map(move |e| {
                        let mut s = s.clone();
                        s.push(*e);
                        s
                    })
                })
                .collect();
            seqs.extend(layer.iter().cloned());
        }
        Universe::new(
            seqs.into_iter()
                .flat_map(|s| [Obs::term(s.clone()), Obs::incomplete(s)]),
        )
    }

    pub fn members(&self) -> &[Obs] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn guard(&self, limit: usize) -> Result<(), Error> {
        if self.members.len() > limit || self.members.len() > 24 {
            Err(Error::UniverseTooLarge {
                size: self.members.len(),
                limit: limit.min(24),
            })
        } else {
            Ok(())
        }
    }

    fn subset(&self, mask: u32) -> BTreeSet<Obs> {
        self.members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, t)| t.clone())
            .collect()
    }

    fn evaluate(&self, h: &Hyperproperty) -> Vec<bool> {
        (0..1u32 << self.members.len())
            .map(|mask| h.holds(&self.subset(mask)))
            .collect()
    }

    /// Distinct incomplete prefixes of members, paired with the mask of
    /// members extending each.
    fn prefix_masks(&self) -> Vec<(Obs, u32)> {
        let prefixes: BTreeSet<Obs> = self.members.iter().flat_map(|t| t.prefixes()).collect();
        prefixes
            .into_iter()
            .map(|p| {
                let mask = self
                    .members
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| prefix_of(&p, t))
                    .fold(0u32, |m, (i, _)| m | (1 << i));
                (p, mask)
            })
            .collect()
    }
}

/// A violation of `p` in `u` always has an incomplete prefix every
/// extension of which (within `u`) also violates `p`.
pub fn is_safety_bounded(p: &Property, u: &Universe) -> bool {
    u.members().iter().filter(|t| !p.holds(t)).all(|t| {
        t.prefixes().any(|m| {
            u.members()
                .iter()
                .filter(|t2| prefix_of(&m, t2))
                .all(|t2| !p.holds(t2))
        })
    })
}

/// Every subset of a member of `h` (within `u`) is a member of `h`.
pub fn is_subset_closed_bounded(h: &Hyperproperty, u: &Universe, guard: usize) -> Result<bool, Error> {
    u.guard(guard)?;
    let table = u.evaluate(h);
    let n = u.len();
    Ok((0..table.len() as u32).all(|mask| {
        !table[mask as usize] || (0..n).all(|i| mask & (1 << i) == 0 || table[(mask & !(1 << i)) as usize])
    }))
}

/// Membership is decided by the subsets of size at most `k`:
/// `h(S) ⇔ ∀S' ⊆ S, |S'| ≤ k. h(S')`.
pub fn is_k_subset_closed_bounded(
    h: &Hyperproperty,
    k: usize,
    u: &Universe,
    guard: usize,
) -> Result<bool, Error> {
    u.guard(guard)?;
    let table = u.evaluate(h);
    Ok((0..table.len() as u32).all(|mask| {
        let small_ok = small_submasks(mask, k).all(|sub| table[sub as usize]);
        table[mask as usize] == small_ok
    }))
}

/// `h` is the lifting of the trace property `t ↦ h({t})`.
pub fn is_lifted_property_bounded(h: &Hyperproperty, u: &Universe, guard: usize) -> Result<bool, Error> {
    u.guard(guard)?;
    let table = u.evaluate(h);
    let n = u.len();
    Ok((0..table.len() as u32).all(|mask| {
        let pointwise = (0..n).all(|i| mask & (1 << i) == 0 || table[1 << i]);
        table[mask as usize] == pointwise
    }))
}

/// Minimal bad observations of size at most `k`: sets of incomplete
/// prefixes such that every subset of `u` extending all of them violates
/// `h`.
pub fn bad_observations(
    h: &Hyperproperty,
    k: usize,
    u: &Universe,
    guard: usize,
) -> Result<Vec<Vec<Obs>>, Error> {
    u.guard(guard)?;
    let table = u.evaluate(h);
    let prefixes = u.prefix_masks();
    let bad = bad_observation_indices(&table, &prefixes, k);
    let minimal: Vec<&Vec<usize>> = bad
        .iter()
        .filter(|o| {
            !bad.iter()
                .any(|o2| o2.len() < o.len() && o2.iter().all(|x| o.contains(x)))
        })
        .collect();
    Ok(minimal
        .into_iter()
        .map(|o| o.iter().map(|&i| prefixes[i].0.clone()).collect())
        .collect())
}

/// `h` is violated exactly by the sets that extend some bad observation of
/// at most `k` prefixes.
pub fn is_k_hypersafety_bounded(
    h: &Hyperproperty,
    k: usize,
    u: &Universe,
    guard: usize,
) -> Result<bool, Error> {
    u.guard(guard)?;
    let table = u.evaluate(h);
    let prefixes = u.prefix_masks();
    let bad = bad_observation_indices(&table, &prefixes, k);
    let bad_masks: Vec<Vec<u32>> = bad
        .iter()
        .map(|o| o.iter().map(|&i| prefixes[i].1).collect())
        .collect();
    Ok((0..table.len() as u32).all(|mask| {
        table[mask as usize] || bad_masks.iter().any(|o| dominates(mask, o))
    }))
}

fn dominates(mask: u32, observation: &[u32]) -> bool {
    observation.iter().all(|ext| ext & mask != 0)
}

fn bad_observation_indices(table: &[bool], prefixes: &[(Obs, u32)], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for combo in combinations_up_to(prefixes.len(), k) {
        let exts: Vec<u32> = combo.iter().map(|&i| prefixes[i].1).collect();
        let is_bad = (0..table.len() as u32)
            .filter(|&mask| dominates(mask, &exts))
            .all(|mask| !table[mask as usize]);
        if is_bad {
            out.push(combo);
        }
    }
    out
}

fn combinations_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for c in &frontier {
            let start = c.last().map_or(0, |&l: &usize| l + 1);
            for i in start..n {
                let mut c2: Vec<usize> = c.clone();
                c2.push(i);
                next.push(c2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn small_submasks(mask: u32, k: usize) -> impl Iterator<Item = u32> {
    let bits: Vec<u32> = (0..32).filter(|i| mask & (1 << i) != 0).collect();
    combinations_up_to(bits.len(), k)
        .into_iter()
        .map(move |c| c.iter().fold(0u32, |m, &i| m | (1 << bits[i])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::{lift, Origin};

    fn small() -> Universe {
        let e = |v| Event::output(v, Origin::Prog);
        Universe::new([
            Obs::term(vec![]),
            Obs::incomplete(vec![]),
            Obs::term(vec![e(0)]),
            Obs::term(vec![e(1)]),
            Obs::incomplete(vec![e(1)]),
        ])
    }

    #[test]
    fn universe_all_counts() {
        // 8 events at val_cap 1: 1 + 8 + 64 sequences, two markers each.
        assert_eq!(Universe::all(2, 1).len(), 146);
    }

    #[test]
    fn never_is_safety() {
        assert!(is_safety_bounded(&Property::no_prog_out_zero(1), &Universe::all(2, 1)));
    }

    #[test]
    fn termination_is_not_safety() {
        assert!(!is_safety_bounded(&Property::terminates(), &Universe::all(2, 1)));
    }

    #[test]
    fn equals_empty_term_is_not_safety() {
        // ([], incomplete) violates it, yet its only prefix extends to
        // ([], term), which satisfies it.
        let p = Property::equals(Obs::term(vec![]));
        assert!(!is_safety_bounded(&p, &Universe::all(2, 1)));
    }

    #[test]
    fn min_size_is_not_subset_closed() {
        assert!(!is_subset_closed_bounded(&Hyperproperty::min_size(2), &small(), 14).unwrap());
    }

    #[test]
    fn lifted_is_subset_closed_and_lifted() {
        let h = lift(Property::no_prog_out_zero(1));
        assert!(is_subset_closed_bounded(&h, &small(), 14).unwrap());
        assert!(is_lifted_property_bounded(&h, &small(), 14).unwrap());
        assert!(is_k_hypersafety_bounded(&h, 1, &small(), 14).unwrap());
    }

    #[test]
    fn guard_rejects_large_universe() {
        let r = is_subset_closed_bounded(&Hyperproperty::top(), &Universe::all(1, 1), 14);
        assert!(matches!(r, Err(Error::UniverseTooLarge { .. })));
    }

    #[test]
    fn min_size_bad_observations_empty() {
        let obs = bad_observations(&Hyperproperty::min_size(2), 2, &small(), 14).unwrap();
        assert!(obs.is_empty());
        assert!(!is_k_hypersafety_bounded(&Hyperproperty::min_size(2), 2, &small(), 14).unwrap());
    }

    #[test]
    fn combinations() {
        assert_eq!(combinations_up_to(3, 2).len(), 1 + 3 + 3);
    }
}
