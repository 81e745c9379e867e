use std::collections::{HashMap, VecDeque};

use super::{ClosureSystem, ElementSet, HasseDiagram};
use crate::Error;

pub const DEFAULT_NODE_CAP: usize = 10_000_000;

#[derive(Clone, Copy, Debug)]
pub struct GanterOptions {
    /// Emit an arc for every candidate `cl(N ∪ {i})` without the minimality
    /// filter. Only correct when the operator satisfies the exchange axiom.
    pub skip_minimality: bool,
    pub node_cap: usize,
}

impl Default for GanterOptions {
    fn default() -> Self {
        Self { skip_minimality: false, node_cap: DEFAULT_NODE_CAP }
    }
}

impl GanterOptions {
    pub fn matroid() -> Self {
        Self { skip_minimality: true, ..Self::default() }
    }
}

/// Instrumentation counters for one enumeration run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GanterStats {
    pub enqueued: usize,
    pub closure_calls: usize,
}

/// Computes the Hasse diagram of all closed sets of `system`.
///
/// The queue is FIFO and the candidates `i ∉ N` are tried in increasing
/// index order, so the node and arc order is deterministic.
pub fn ganter_hasse(
    system: &ClosureSystem,
    opts: GanterOptions,
) -> Result<(HasseDiagram, GanterStats), Error> {
    let n = system.size();
    let mut stats = GanterStats::default();
    let mut nodes: Vec<ElementSet> = Vec::new();
    let mut lookup: HashMap<ElementSet, usize> = HashMap::new();
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let root = system.close(&ElementSet::empty(n));
    stats.closure_calls += 1;
    lookup.insert(root.clone(), 0);
    nodes.push(root);
    queue.push_back(0);
    stats.enqueued += 1;

    let mut candidates: Vec<ElementSet> = Vec::with_capacity(n);
    while let Some(current) = queue.pop_front() {
        candidates.clear();
        let base = nodes[current].clone();
        for i in 0..n {
            if base.contains(i) {
                continue;
            }
            let c = system.close(&base.with(i));
            stats.closure_calls += 1;
            if !candidates.contains(&c) {
                candidates.push(c);
            }
        }
        if !opts.skip_minimality {
            let minimal: Vec<bool> = candidates
                .iter()
                .map(|c| !candidates.iter().any(|d| d != c && d.is_subset(c)))
                .collect();
            let mut keep = minimal.into_iter();
            candidates.retain(|_| keep.next().unwrap());
        }
        for c in candidates.drain(..) {
            let target = match lookup.get(&c) {
                Some(&idx) => idx,
                None => {
                    if nodes.len() >= opts.node_cap {
                        return Err(Error::NodeCap { cap: opts.node_cap, nodes: nodes.len() });
                    }
                    let idx = nodes.len();
                    lookup.insert(c.clone(), idx);
                    nodes.push(c);
                    queue.push_back(idx);
                    stats.enqueued += 1;
                    idx
                }
            };
            arcs.push((current, target));
        }
    }

    Ok((HasseDiagram::from_parts(n, nodes, arcs, lookup), stats))
}
