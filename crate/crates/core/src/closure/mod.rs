//! Finite closure systems and output-sensitive enumeration of their closed sets.
//!
//! A [`ClosureSystem`] pairs a ground set with a closure operator. The
//! enumeration in [`ganter_hasse`] walks the Hasse diagram of the closed sets
//! breadth first, pushing every closed set to the queue exactly once, so its
//! cost is linear in the number of covering pairs.

mod ganter;
mod hasse;
mod set;

use std::fmt;
use std::sync::Arc;

pub use ganter::{ganter_hasse, GanterOptions, GanterStats, DEFAULT_NODE_CAP};
pub use hasse::{poset_statistics, HasseDiagram};
pub use set::{ElementSet, GroundSet};

type CloseFn = dyn Fn(&ElementSet) -> ElementSet + Send + Sync;

/// A ground set together with a closure operator on its subsets.
///
/// The operator is assumed extensive, monotone and idempotent; nothing here
/// enforces that. [`ClosureSystem::check_axioms_on`] spot-checks it.
#[derive(Clone)]
pub struct ClosureSystem {
    ground: GroundSet,
    close: Arc<CloseFn>,
}

impl fmt::Debug for ClosureSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosureSystem").field("ground", &self.ground).finish_non_exhaustive()
    }
}

impl ClosureSystem {
    pub fn new<F>(ground: GroundSet, close: F) -> Self
    where
        F: Fn(&ElementSet) -> ElementSet + Send + Sync + 'static,
    {
        Self { ground, close: Arc::new(close) }
    }

    /// `cl(A) = A` on a ground set of the given size.
    pub fn identity(size: usize) -> Result<Self, crate::Error> {
        Ok(Self::new(GroundSet::new(size)?, |a: &ElementSet| a.clone()))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.size()
    }

    pub fn close(&self, a: &ElementSet) -> ElementSet {
        debug_assert_eq!(a.width(), self.size());
        (self.close)(a)
    }

    pub fn is_closed(&self, a: &ElementSet) -> bool {
        &self.close(a) == a
    }

    /// Checks extensiveness and idempotency on every sample and monotonicity
    /// on every ordered pair of samples related by inclusion. Returns a
    /// description of the first violation.
    pub fn check_axioms_on(&self, samples: &[ElementSet]) -> Result<(), String> {
        let closed: Vec<ElementSet> = samples.iter().map(|a| self.close(a)).collect();
        for (a, ca) in samples.iter().zip(&closed) {
            if !a.is_subset(ca) {
                return Err(format!("not extensive at {a:?}"));
            }
            if &self.close(ca) != ca {
                return Err(format!("not idempotent at {a:?}"));
            }
        }
        for (a, ca) in samples.iter().zip(&closed) {
            for (b, cb) in samples.iter().zip(&closed) {
                if a.is_subset(b) && !ca.is_subset(cb) {
                    return Err(format!("not monotone at {a:?} <= {b:?}"));
                }
            }
        }
        Ok(())
    }
}

/// Restricts a closure system to a lower set of its closed sets.
///
/// The result maps `A` to `cl(A)` when `keep(cl(A))` holds and to the full
/// ground set otherwise. `keep` must be downward closed on closed sets for
/// the result to be a closure operator.
pub fn restrict_to_lower_set<P>(system: &ClosureSystem, keep: P) -> ClosureSystem
where
    P: Fn(&ElementSet) -> bool + Send + Sync + 'static,
{
    let inner = system.clone();
    let size = system.size();
    ClosureSystem::new(system.ground().clone(), move |a| {
        let c = inner.close(a);
        if keep(&c) {
            c
        } else {
            ElementSet::full(size)
        }
    })
}
