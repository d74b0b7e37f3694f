//! Cached constants: π, log 2 and e^(−π).
//!
//! Each cache is keyed by working bits. Lookups take a read lock; a miss
//! computes outside the lock, so two threads may both compute the same entry
//! and the second insert is a no-op overwrite with an identical value.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::elemfn;
use crate::mpreal::{Precision, Real};
use crate::piagm;

/// Bits computed beyond the requested working precision before rounding.
const CACHE_GUARD: u64 = 32;

struct Cache {
    map: OnceLock<RwLock<HashMap<u64, Real>>>,
}

impl Cache {
    const fn new() -> Self {
        Cache {
            map: OnceLock::new(),
        }
    }

    fn get_or(&self, prec: Precision, compute: impl FnOnce(Precision) -> Real) -> Real {
        let map = self.map.get_or_init(|| RwLock::new(HashMap::new()));
        let key = prec.working_bits();
        if let Some(v) = map.read().unwrap().get(&key) {
            return v.with_precision(prec);
        }
        let value = compute(prec.extended(CACHE_GUARD)).with_precision(prec);
        map.write().unwrap().insert(key, value.clone());
        value
    }
}

static PI: Cache = Cache::new();
static LN2: Cache = Cache::new();
static EXP_MINUS_PI: Cache = Cache::new();

/// π at the working precision of `prec`, from the Gauss–Legendre iteration.
pub fn pi(prec: Precision) -> Real {
    PI.get_or(prec, piagm::gl_pi)
}

/// log 2 at the working precision of `prec`.
pub fn ln2(prec: Precision) -> Real {
    LN2.get_or(prec, elemfn::ln2_uncached)
}

/// e^(−π) at the working precision of `prec`.
pub fn exp_minus_pi(prec: Precision) -> Real {
    EXP_MINUS_PI.get_or(prec, |p| {
        elemfn::exp(&-pi(p)).expect("exp(-pi) is in range")
    })
}
