//! Per-run operation counters.
//!
//! The buckets follow the usual cost model of the descent algorithm:
//! matrix products and inversions, applications of the valuation,
//! elementary operations in the value group, and lookups of field elements
//! with a prescribed valuation.

use core::cell::Cell;

/// Counter state. Owned by a single run and passed by reference; never
/// shared between runs.
#[derive(Debug, Default)]
pub struct Meter {
    matrix_ops: Cell<u64>,
    valuations: Cell<u64>,
    group_ops: Cell<u64>,
    uniformizers: Cell<u64>,
}

/// A snapshot of a [`Meter`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Counts {
    /// Matrix multiplications and inversions (determinants included).
    pub matrix_ops: u64,
    /// Applications of `ν`.
    pub valuations: u64,
    /// `+`, `-` and comparisons in the value group.
    pub group_ops: u64,
    /// Elements of `F` produced for a prescribed valuation.
    pub uniformizers: u64,
}

fn bump(c: &Cell<u64>, by: u64) {
    c.set(c.get() + by);
}

impl Meter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn matrix_op(&self) {
        bump(&self.matrix_ops, 1);
    }

    pub fn valuations(&self, k: u64) {
        bump(&self.valuations, k);
    }

    pub fn group_ops(&self, k: u64) {
        bump(&self.group_ops, k);
    }

    pub fn uniformizer(&self) {
        bump(&self.uniformizers, 1);
    }

    pub fn counts(&self) -> Counts {
        Counts {
            matrix_ops: self.matrix_ops.get(),
            valuations: self.valuations.get(),
            group_ops: self.group_ops.get(),
            uniformizers: self.uniformizers.get(),
        }
    }

    pub fn reset(&self) {
        self.matrix_ops.set(0);
        self.valuations.set(0);
        self.group_ops.set(0);
        self.uniformizers.set(0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_reset() {
        let m = Meter::new();
        m.matrix_op();
        m.valuations(4);
        m.group_ops(2);
        m.uniformizer();
        assert_eq!(
            m.counts(),
            Counts {
                matrix_ops: 1,
                valuations: 4,
                group_ops: 2,
                uniformizers: 1
            }
        );
        m.reset();
        assert_eq!(m.counts(), Counts::default());
    }
}
