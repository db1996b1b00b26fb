use std::collections::BTreeSet;

use super::LogicalCircuit;

/// Dependency DAG over an ordered operation list.
///
/// Node `i` is the `i`-th operation. There is an edge `(a, b)` exactly when
/// `a < b`, both act on some qubit `q`, and no operation strictly between
/// them acts on `q`. Edges therefore always point forward, so list order is
/// a topological order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpDag {
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
}

impl OpDag {
    /// Builds the DAG from the qubit support of each operation, in order.
    pub fn from_supports<I, S>(supports: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = usize>,
    {
        let mut last_on: Vec<Option<usize>> = Vec::new();
        let mut preds: Vec<Vec<usize>> = Vec::new();
        for (node, support) in supports.into_iter().enumerate() {
            let mut p = BTreeSet::new();
            for q in support {
                if q >= last_on.len() {
                    last_on.resize(q + 1, None);
                }
                if let Some(prev) = last_on[q].replace(node) {
                    p.insert(prev);
                }
            }
            preds.push(p.into_iter().collect());
        }
        let mut succs = vec![Vec::new(); preds.len()];
        for (b, ps) in preds.iter().enumerate() {
            for &a in ps {
                succs[a].push(b);
            }
        }
        OpDag { preds, succs }
    }

    pub fn len(&self) -> usize {
        self.preds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.preds.is_empty()
    }

    pub fn predecessors(&self, node: usize) -> &[usize] {
        &self.preds[node]
    }

    pub fn successors(&self, node: usize) -> &[usize] {
        &self.succs[node]
    }

    /// All edges sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> =
            self.succs.iter().enumerate().flat_map(|(a, s)| s.iter().map(move |&b| (a, b))).collect();
        edges.sort_unstable();
        edges
    }

    /// Kahn's algorithm, smallest ready node first. Returns `None` if the
    /// graph has a cycle (never the case for graphs built here).
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indegree: Vec<usize> = self.preds.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..self.len()).filter(|&n| indegree[n] == 0).collect();
        let mut order = Vec::with_capacity(self.len());
        while let Some(n) = ready.pop_first() {
            order.push(n);
            for &s in &self.succs[n] {
                indegree[s] -= 1;
                if indegree[s] == 0 {
                    ready.insert(s);
                }
            }
        }
        (order.len() == self.len()).then_some(order)
    }
}

pub fn build_dag(circuit: &LogicalCircuit) -> OpDag {
    OpDag::from_supports(circuit.gates().iter().map(|g| g.qubits.iter().copied()))
}
