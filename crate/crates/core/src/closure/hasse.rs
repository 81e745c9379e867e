use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use super::{ElementSet, GroundSet};

/// Covering-relation digraph of a family of closed sets, arcs pointing to the
/// larger set.
#[derive(Clone, Debug)]
pub struct HasseDiagram {
    width: usize,
    nodes: Vec<ElementSet>,
    arcs: Vec<(usize, usize)>,
    lookup: HashMap<ElementSet, usize>,
}

#[derive(Serialize)]
struct HasseJson<'a> {
    nodes: Vec<Vec<usize>>,
    arcs: &'a [(usize, usize)],
}

/// Order-independent form of a diagram: the node sets and the arcs as pairs
/// of sets.
pub type CanonicalDiagram = (BTreeSet<Vec<usize>>, BTreeSet<(Vec<usize>, Vec<usize>)>);

impl HasseDiagram {
    pub(crate) fn from_parts(
        width: usize,
        nodes: Vec<ElementSet>,
        arcs: Vec<(usize, usize)>,
        lookup: HashMap<ElementSet, usize>,
    ) -> Self {
        Self { width, nodes, arcs, lookup }
    }

    /// Builds a diagram from sets and arcs given by index, e.g. for oracle
    /// output. Duplicate sets are not allowed.
    pub fn from_sets(width: usize, nodes: Vec<ElementSet>, arcs: Vec<(usize, usize)>) -> Self {
        let lookup = nodes.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect::<HashMap<_, _>>();
        assert_eq!(lookup.len(), nodes.len(), "duplicate node sets");
        Self { width, nodes, arcs, lookup }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn nodes(&self) -> &[ElementSet] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &ElementSet {
        &self.nodes[i]
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn index_of(&self, set: &ElementSet) -> Option<usize> {
        self.lookup.get(set).copied()
    }

    pub fn canonical(&self) -> CanonicalDiagram {
        let nodes = self.nodes.iter().map(ElementSet::to_vec).collect();
        let arcs = self
            .arcs
            .iter()
            .map(|&(a, b)| (self.nodes[a].to_vec(), self.nodes[b].to_vec()))
            .collect();
        (nodes, arcs)
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.arcs {
            out[a].push(b);
        }
        out
    }

    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.arcs {
            out[b].push(a);
        }
        out
    }

    /// Topological order of the nodes, or `None` if the arcs contain a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let succ = self.successors();
        let mut indeg = vec![0usize; self.nodes.len()];
        for &(_, b) in &self.arcs {
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..self.nodes.len()).filter(|&i| indeg[i] == 0).rev().collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in succ[v].iter().rev() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        (order.len() == self.nodes.len()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Length of the longest arc path from a source to each node.
    pub fn heights(&self) -> Vec<usize> {
        let order = self.topological_order().expect("Hasse diagram must be acyclic");
        let succ = self.successors();
        let mut h = vec![0usize; self.nodes.len()];
        for v in order {
            for &w in &succ[v] {
                h[w] = h[w].max(h[v] + 1);
            }
        }
        h
    }

    /// Checks that every arc joins distinct sets `N ⊊ N'` with no node
    /// strictly in between. Quadratic in the node count.
    pub fn arcs_are_covers(&self) -> bool {
        self.arcs.iter().all(|&(a, b)| {
            let (lo, hi) = (&self.nodes[a], &self.nodes[b]);
            lo != hi
                && lo.is_subset(hi)
                && !self.nodes.iter().any(|m| m != lo && m != hi && lo.is_subset(m) && m.is_subset(hi))
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes = self.nodes.iter().map(ElementSet::to_vec).collect();
        serde_json::to_value(HasseJson { nodes, arcs: &self.arcs }).expect("serializable")
    }

    /// Graphviz rendering with one node per closed set, labelled by its
    /// sorted elements.
    pub fn to_dot(&self, ground: Option<&GroundSet>) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = n
                .iter()
                .map(|e| ground.map_or_else(|| e.to_string(), |g| g.label(e)))
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(out, "  n{i} [label=\"{{{label}}}\"];");
        }
        for &(a, b) in &self.arcs {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Counts the nodes of `h` per value of `rank_of`, in increasing rank order.
pub fn poset_statistics<F>(h: &HasseDiagram, rank_of: F) -> Vec<usize>
where
    F: Fn(usize, &ElementSet) -> i64,
{
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for (i, n) in h.nodes().iter().enumerate() {
        *counts.entry(rank_of(i, n)).or_default() += 1;
    }
    counts.into_values().collect()
}
