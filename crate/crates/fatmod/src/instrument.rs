//! Process-wide counters proving what the composite pipeline never does.
//!
//! Every probabilistic primality test and every polynomial factorization (the
//! only place an irreducibility decision is ever made) bumps a counter here.
//! The selftest and acceptance suites snapshot these counters around composite
//! runs: the whole point of the transformation is that the count does not move.

use std::sync::atomic::{AtomicU64, Ordering};

static PRIMALITY_TESTS: AtomicU64 = AtomicU64::new(0);
static IRREDUCIBILITY_TESTS: AtomicU64 = AtomicU64::new(0);

/// Total Miller–Rabin invocations since process start.
pub fn primality_tests() -> u64 {
    PRIMALITY_TESTS.load(Ordering::SeqCst)
}

/// Total polynomial factorization / irreducibility decisions since start.
pub fn irreducibility_tests() -> u64 {
    IRREDUCIBILITY_TESTS.load(Ordering::SeqCst)
}

pub(crate) fn record_primality_test() {
    PRIMALITY_TESTS.fetch_add(1, Ordering::SeqCst);
}

pub(crate) fn record_irreducibility_test() {
    IRREDUCIBILITY_TESTS.fetch_add(1, Ordering::SeqCst);
}

/// Snapshot of both counters, for bracketing a region of code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterSnapshot {
    pub primality_tests: u64,
    pub irreducibility_tests: u64,
}

impl CounterSnapshot {
    pub fn take() -> Self {
        CounterSnapshot {
            primality_tests: primality_tests(),
            irreducibility_tests: irreducibility_tests(),
        }
    }

    /// Counter increments since this snapshot was taken.
    pub fn delta(&self) -> CounterSnapshot {
        CounterSnapshot {
            primality_tests: primality_tests() - self.primality_tests,
            irreducibility_tests: irreducibility_tests() - self.irreducibility_tests,
        }
    }

    /// True when no primality or irreducibility test ran since the snapshot.
    pub fn clean(&self) -> bool {
        let d = self.delta();
        d.primality_tests == 0 && d.irreducibility_tests == 0
    }
}
