use serde::{Deserialize, Serialize};

use crate::Error;

/// The experiment envelope every run and every check is carried out under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    /// Maximum number of machine steps per run.
    pub fuel: u64,
    /// Length of every input stream.
    pub stream_len: usize,
    /// Largest value an event (or literal) may carry.
    pub val_cap: u32,
    /// Maximum number of events recorded in one observation.
    pub event_bound: usize,
    /// Maximum AST size of enumerated contexts.
    pub ctx_size: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            fuel: 100_000,
            stream_len: 2,
            val_cap: 3,
            event_bound: 4,
            ctx_size: 5,
        }
    }
}

impl Bounds {
    pub fn validate(&self) -> Result<(), Error> {
        if self.fuel == 0
            || self.stream_len == 0
            || self.val_cap == 0
            || self.event_bound == 0
            || self.ctx_size == 0
        {
            return Err(Error::Config(format!(
                "all bounds must be strictly positive: {self:?}"
            )));
        }
        Ok(())
    }

    pub fn with_ctx_size(self, ctx_size: usize) -> Self {
        Bounds { ctx_size, ..self }
    }

    pub fn with_fuel(self, fuel: u64) -> Self {
        Bounds { fuel, ..self }
    }

    /// Successor on the closed value domain `0..=val_cap`.
    pub fn succ(&self, n: u32) -> u32 {
        if n >= self.val_cap {
            0
        } else {
            n + 1
        }
    }

    /// Every input stream of length exactly `stream_len`, in lexicographic order.
    pub fn streams(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.stream_len {
            out = out
                .into_iter()
                .flat_map(|s| {
                    (0..=self.val_cap).map(move |v| {
                        let mut s = s.clone();
                        s.push(v);
                        s
                    })
                })
                .collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn succ_wraps_at_cap() {
        let b = Bounds::default();
        assert_eq!(b.succ(1), 2);
        assert_eq!(b.succ(3), 0);
    }

    #[test]
    fn streams_are_lexicographic() {
        let b = Bounds {
            stream_len: 2,
            val_cap: 1,
            ..Bounds::default()
        };
        assert_eq!(
            b.streams(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn zero_bound_rejected() {
        assert!(Bounds::default().with_fuel(0).validate().is_err());
        assert!(Bounds::default().validate().is_ok());
    }
}
