//! Process-wide enumeration caps.

use std::sync::atomic::{AtomicUsize, Ordering};

static SET_PARTITION_N: AtomicUsize = AtomicUsize::new(Limits::DEFAULT.set_partition_n);
static BRUTE_FORCE_D: AtomicUsize = AtomicUsize::new(Limits::DEFAULT.brute_force_d);
static BERNOULLI_MAX: AtomicUsize = AtomicUsize::new(Limits::DEFAULT.bernoulli_max);

/// Caps on the exponentially growing enumerations.
///
/// `set_partition_n` bounds the ground set of set-partition sweeps and is
/// shared by every operation that sums over set partitions (Wick sums,
/// elementary cumulants). `brute_force_d` bounds the degree of the
/// monodromy enumeration. `bernoulli_max` is the size of the memo table for
/// Bernoulli numbers; larger indices are still computed, just not retained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub set_partition_n: usize,
    pub brute_force_d: usize,
    pub bernoulli_max: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        set_partition_n: 12,
        brute_force_d: 5,
        bernoulli_max: 64,
    };

    pub fn current() -> Limits {
        Limits {
            set_partition_n: SET_PARTITION_N.load(Ordering::Relaxed),
            brute_force_d: BRUTE_FORCE_D.load(Ordering::Relaxed),
            bernoulli_max: BERNOULLI_MAX.load(Ordering::Relaxed),
        }
    }

    /// Makes these limits the process-wide ones.
    pub fn install(self) {
        SET_PARTITION_N.store(self.set_partition_n, Ordering::Relaxed);
        BRUTE_FORCE_D.store(self.brute_force_d, Ordering::Relaxed);
        BERNOULLI_MAX.store(self.bernoulli_max, Ordering::Relaxed);
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::DEFAULT
    }
}
