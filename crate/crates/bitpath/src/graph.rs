//! Subtraction graphs and the exact longest-path oracle.
//!
//! Vertices are non-negative integers; there is an edge from `n` to
//! `n - 2^s` for every zero bit `s` of `n` strictly below its top set bit.
//! Every edge decreases the value, so the graph is acyclic and memoized
//! dynamic programming gives exact longest paths.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::numrep::{Bracket, Nat};

/// Default cap on vertices explored per graph build / BFS query.
pub const DEFAULT_VERTEX_CAP: u64 = 5_000_000;

/// Largest value accepted by the memoized oracle.
pub const DEFAULT_ORACLE_VALUE_CAP: u64 = 1 << 20;

/// Zero-bit positions of `v` strictly below its top set bit, ascending.
fn open_bits(v: u64) -> impl Iterator<Item = u32> {
    let top = 63u32.saturating_sub(v.leading_zeros());
    (0..top).filter(move |&s| v & (1u64 << s) == 0)
}

fn is_sink(v: u64) -> bool {
    (v + 1).is_power_of_two()
}

/// Strip trailing 1-bits: minimum of the binary class.
fn class_min_u64(v: u64) -> u64 {
    let t = (!v).trailing_zeros();
    if t >= 64 {
        0
    } else {
        v >> t
    }
}

/// Reachable subtraction graph from one root, optionally quotiented so
/// every vertex is the minimum of its binary class.
#[derive(Debug, Clone)]
pub struct Digraph {
    root: Nat,
    reduced: bool,
    adj: BTreeMap<Nat, Vec<Nat>>,
}

/// Label notation for DOT output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labeling {
    Integer,
    Binary,
    Bracket,
}

impl Digraph {
    /// BFS from `n` (or from its class minimum when `reduced`), erroring
    /// once more than `vertex_cap` vertices are reached.
    pub fn build(n: &Nat, reduced: bool, vertex_cap: u64) -> Result<Digraph> {
        let root = if reduced { n.class_min() } else { n.clone() };
        let mut adj: BTreeMap<Nat, Vec<Nat>> = BTreeMap::new();
        let mut queue: VecDeque<Nat> = VecDeque::new();
        queue.push_back(root.clone());
        adj.insert(root.clone(), Vec::new());
        while let Some(v) = queue.pop_front() {
            let mut succs: BTreeSet<Nat> = BTreeSet::new();
            let top = v.bit_len().saturating_sub(1);
            for s in 0..top {
                if !v.bit(s) {
                    let mut w = v.subtract_pow2(s)?;
                    if reduced {
                        w = w.class_min();
                    }
                    succs.insert(w);
                }
            }
            let mut ordered: Vec<Nat> = succs.into_iter().collect();
            ordered.reverse(); // descending
            for w in &ordered {
                if !adj.contains_key(w) {
                    if adj.len() as u64 >= vertex_cap {
                        return Err(Error::Budget {
                            what: "graph vertices",
                            limit: vertex_cap,
                        });
                    }
                    adj.insert(w.clone(), Vec::new());
                    queue.push_back(w.clone());
                }
            }
            adj.insert(v, ordered);
        }
        Ok(Digraph { root, reduced, adj })
    }

    pub fn root(&self) -> &Nat {
        &self.root
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(Vec::len).sum()
    }

    /// Vertices in descending value order.
    pub fn vertices(&self) -> Vec<&Nat> {
        self.adj.keys().rev().collect()
    }

    pub fn successors(&self, v: &Nat) -> Option<&[Nat]> {
        self.adj.get(v).map(Vec::as_slice)
    }

    pub fn contains(&self, v: &Nat) -> bool {
        self.adj.contains_key(v)
    }

    fn label(&self, v: &Nat, labeling: Labeling) -> String {
        match labeling {
            Labeling::Integer => v.to_string(),
            Labeling::Binary => v.to_binary_string(),
            Labeling::Bracket => v.to_bracket().to_string(),
        }
    }

    /// Graphviz text: nodes then edges, both in descending vertex order.
    pub fn to_dot(&self, labeling: Labeling) -> String {
        let mut out = String::from("digraph {\n");
        for v in self.adj.keys().rev() {
            let _ = writeln!(out, "  \"{}\";", self.label(v, labeling));
        }
        for v in self.adj.keys().rev() {
            for w in &self.adj[v] {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\";",
                    self.label(v, labeling),
                    self.label(w, labeling)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Longest path length plus one witness path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestPathResult {
    pub length: u64,
    pub witness: Vec<Nat>,
}

/// Memoized longest-path evaluator. The memo is keyed on exact values and
/// may be reused across queries; results are identical either way.
#[derive(Debug)]
pub struct Oracle {
    memo: HashMap<u64, u32>,
    value_cap: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Self::new()
    }
}

impl Oracle {
    pub fn new() -> Oracle {
        Oracle::with_value_cap(DEFAULT_ORACLE_VALUE_CAP)
    }

    pub fn with_value_cap(value_cap: u64) -> Oracle {
        Oracle {
            memo: HashMap::new(),
            value_cap,
        }
    }

    fn check(&self, v: u64) -> Result<()> {
        if v >= self.value_cap {
            return Err(Error::Budget {
                what: "oracle value",
                limit: self.value_cap,
            });
        }
        Ok(())
    }

    /// Longest path length from `v`: 0 on sinks, otherwise
    /// 1 + max over successors.
    pub fn len_u64(&mut self, v: u64) -> Result<u64> {
        self.check(v)?;
        if let Some(&l) = self.memo.get(&v) {
            return Ok(l as u64);
        }
        // iterative DFS so deep graphs cannot blow the stack
        let mut stack = vec![v];
        while let Some(&cur) = stack.last() {
            if self.memo.contains_key(&cur) {
                stack.pop();
                continue;
            }
            if is_sink(cur) {
                self.memo.insert(cur, 0);
                stack.pop();
                continue;
            }
            let mut best: Option<u32> = Some(0);
            let mut missing = false;
            for s in open_bits(cur) {
                let w = cur - (1u64 << s);
                match self.memo.get(&w) {
                    Some(&l) => {
                        let cand = l + 1;
                        if best.map_or(true, |b| cand > b) {
                            best = Some(cand);
                        }
                    }
                    None => {
                        stack.push(w);
                        missing = true;
                    }
                }
            }
            if !missing {
                self.memo.insert(cur, best.unwrap_or(0));
                stack.pop();
            }
        }
        Ok(self.memo[&v] as u64)
    }

    /// Longest path length and one witness; ties between successors are
    /// broken toward the smallest subtracted power.
    pub fn longest(&mut self, n: &Nat) -> Result<LongestPathResult> {
        let v = n.to_u64().ok_or(Error::Budget {
            what: "oracle value",
            limit: self.value_cap,
        })?;
        let length = self.len_u64(v)?;
        let mut witness = vec![Nat::from(v)];
        let mut cur = v;
        let mut remaining = length;
        while remaining > 0 {
            let mut next = None;
            for s in open_bits(cur) {
                let w = cur - (1u64 << s);
                if self.len_u64(w)? == remaining - 1 {
                    next = Some(w);
                    break; // smallest s wins
                }
            }
            cur = next.expect("positive length implies a maximal successor");
            witness.push(Nat::from(cur));
            remaining -= 1;
        }
        Ok(LongestPathResult { length, witness })
    }

    /// Every maximum-length path from `n`, capped at `limit` paths.
    pub fn all_longest(&mut self, n: &Nat, limit: usize) -> Result<Vec<Vec<Nat>>> {
        let v = n.to_u64().ok_or(Error::Budget {
            what: "oracle value",
            limit: self.value_cap,
        })?;
        let total = self.len_u64(v)?;
        let mut out = Vec::new();
        let mut path = vec![v];
        self.collect_paths(v, total, &mut path, &mut out, limit)?;
        Ok(out
            .into_iter()
            .map(|p| p.into_iter().map(Nat::from).collect())
            .collect())
    }

    fn collect_paths(
        &mut self,
        v: u64,
        remaining: u64,
        path: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        limit: usize,
    ) -> Result<()> {
        if out.len() >= limit {
            return Ok(());
        }
        if remaining == 0 {
            out.push(path.clone());
            return Ok(());
        }
        for s in open_bits(v) {
            let w = v - (1u64 << s);
            if self.len_u64(w)? == remaining - 1 {
                path.push(w);
                self.collect_paths(w, remaining - 1, path, out, limit)?;
                path.pop();
            }
        }
        Ok(())
    }
}

/// True when a path exists between the two classes in the quotient graph,
/// decided by breadth-first search.
pub fn reachable_bfs(src: &Bracket, dst: &Bracket, vertex_cap: u64) -> Result<bool> {
    let s = src
        .class()
        .to_nat()?
        .to_u64()
        .ok_or(Error::Budget {
            what: "reachability source",
            limit: u64::MAX,
        })?;
    let d = dst
        .class()
        .to_nat()?
        .to_u64()
        .ok_or(Error::Budget {
            what: "reachability target",
            limit: u64::MAX,
        })?;
    if d == s {
        return Ok(true);
    }
    if d > s {
        return Ok(false);
    }
    let mut seen: std::collections::HashSet<u64> = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(s);
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        for sb in open_bits(v) {
            let w = class_min_u64(v - (1u64 << sb));
            if w == d {
                return Ok(true);
            }
            if w > d && seen.insert(w) {
                if seen.len() as u64 > vertex_cap {
                    return Err(Error::Budget {
                        what: "reachability search",
                        limit: vertex_cap,
                    });
                }
                queue.push_back(w);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn t10_structure() {
        let g = Digraph::build(&nat(10), false, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(g.vertex_count(), 6);
        let vs: Vec<u64> = g.vertices().iter().map(|v| v.to_u64().unwrap()).collect();
        assert_eq!(vs, vec![10, 9, 7, 6, 5, 3]);
        let edge = |a: u64, b: u64| {
            g.successors(&nat(a))
                .unwrap()
                .iter()
                .any(|w| *w == nat(b))
        };
        assert!(edge(10, 9) && edge(10, 6));
        assert!(edge(9, 7) && edge(9, 5));
        assert!(edge(6, 5) && edge(5, 3));
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn t10_reduced_structure() {
        let g = Digraph::build(&nat(10), true, DEFAULT_VERTEX_CAP).unwrap();
        let vs: Vec<u64> = g.vertices().iter().map(|v| v.to_u64().unwrap()).collect();
        assert_eq!(vs, vec![10, 6, 4, 2, 0]);
        let succ = |a: u64| -> Vec<u64> {
            g.successors(&nat(a))
                .unwrap()
                .iter()
                .map(|w| w.to_u64().unwrap())
                .collect()
        };
        assert_eq!(succ(10), vec![6, 4]);
        assert_eq!(succ(4), vec![2, 0]);
        assert_eq!(succ(6), vec![2]);
        assert_eq!(succ(2), vec![0]);
    }

    #[test]
    fn sink_is_single_vertex() {
        let g = Digraph::build(&nat(7), false, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn vertex_cap_errors() {
        let err = Digraph::build(&nat(0b10101010101010101), false, 10).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn oracle_small_values() {
        let mut o = Oracle::new();
        let r = o.longest(&nat(10)).unwrap();
        assert_eq!(r.length, 3);
        // witness must be a legal maximal path
        assert_eq!(r.witness.len(), 4);
        assert_eq!(r.witness[0], nat(10));
        assert_eq!(o.longest(&nat(0)).unwrap().length, 0);
        assert_eq!(o.longest(&nat(16)).unwrap().length, 5);
    }

    #[test]
    fn oracle_enumerates_both_maximal_paths_of_t10() {
        let mut o = Oracle::new();
        let paths = o.all_longest(&nat(10), 16).unwrap();
        let as_u64: Vec<Vec<u64>> = paths
            .iter()
            .map(|p| p.iter().map(|v| v.to_u64().unwrap()).collect())
            .collect();
        assert!(as_u64.contains(&vec![10, 6, 5, 3]));
        assert!(as_u64.contains(&vec![10, 9, 5, 3]));
        assert_eq!(as_u64.len(), 2);
    }

    #[test]
    fn oracle_value_cap() {
        let mut o = Oracle::new();
        assert!(matches!(
            o.longest(&nat(1 << 20)),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn bfs_examples() {
        let b = |t: &str| Bracket::parse(t).unwrap();
        assert!(reachable_bfs(&b("[3,2,0]"), &b("[1,0,1]"), DEFAULT_VERTEX_CAP).unwrap());
        assert!(reachable_bfs(&b("[1,1]"), &b("[2]"), DEFAULT_VERTEX_CAP).unwrap());
        assert!(!reachable_bfs(&b("[1,0]"), &b("[1,1]"), DEFAULT_VERTEX_CAP).unwrap());
    }

    #[test]
    fn dot_output_shapes() {
        let g = Digraph::build(&nat(10), false, DEFAULT_VERTEX_CAP).unwrap();
        let dot = g.to_dot(Labeling::Binary);
        assert!(dot.starts_with("digraph {\n"));
        assert!(dot.contains("  \"1010\";\n"));
        assert!(dot.contains("  \"1010\" -> \"1001\";\n"));
        assert!(dot.contains("  \"101\" -> \"11\";\n"));
        assert!(dot.ends_with("}\n"));

        let g0 = Digraph::build(&nat(0), false, DEFAULT_VERTEX_CAP).unwrap();
        let dot0 = g0.to_dot(Labeling::Integer);
        assert!(dot0.contains("\"0\";"));
        assert!(!dot0.contains("->"));

        let gr = Digraph::build(&nat(10), true, DEFAULT_VERTEX_CAP).unwrap();
        let dotb = gr.to_dot(Labeling::Bracket);
        for label in ["[1,1]", "[2]", "[1,0]", "[1]", "[0]"] {
            assert!(dotb.contains(&format!("\"{label}\"")), "missing {label}");
        }
    }
}
