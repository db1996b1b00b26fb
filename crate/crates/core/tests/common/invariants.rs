//! Independent checks of a finished schedule against its program.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use hetec_core::circuit::OpDag;
use hetec_core::pbc::{PbcCircuit, PbcOp};
use hetec_core::schedule::{EventKind, Location, Resource, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Where {
    Surface,
    Block(usize),
}

/// Every DAG edge `(a, b)`: all events of `a` end before any event of `b` starts.
pub fn dependency_safety(program: &PbcCircuit, s: &Schedule) -> Result<(), String> {
    let dag = OpDag::from_supports(program.ops.iter().map(|o| o.pauli().qubits().collect::<Vec<_>>()));
    let mut span: HashMap<usize, (u64, u64)> = HashMap::new();
    for e in &s.events {
        if let Some(op) = e.op {
            let entry = span.entry(op).or_insert((u64::MAX, 0));
            entry.0 = entry.0.min(e.start_cycle);
            entry.1 = entry.1.max(e.end_cycle());
        }
    }
    for (i, op) in program.ops.iter().enumerate() {
        if op.pauli().is_identity() {
            continue;
        }
        if !span.contains_key(&i) {
            return Err(format!("operation {i} never scheduled"));
        }
    }
    for (a, b) in dag.edges() {
        let (Some(ea), Some(eb)) = (span.get(&a), span.get(&b)) else { continue };
        if ea.1 > eb.0 {
            return Err(format!("edge {a}->{b}: {a} ends at {} but {b} starts at {}", ea.1, eb.0));
        }
    }
    Ok(())
}

/// Per tile, block and bus, event intervals are pairwise disjoint.
pub fn resource_exclusivity(s: &Schedule) -> Result<(), String> {
    let mut by_resource: BTreeMap<Resource, Vec<(u64, u64)>> = BTreeMap::new();
    for e in &s.events {
        for &r in &e.resources {
            by_resource.entry(r).or_default().push((e.start_cycle, e.end_cycle()));
        }
    }
    for (r, mut spans) in by_resource {
        spans.sort_unstable();
        for w in spans.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(format!("{r}: {:?} overlaps {:?}", w[0], w[1]));
            }
        }
    }
    Ok(())
}

pub fn weight_feasibility(s: &Schedule, tiles: usize) -> Result<(), String> {
    for e in &s.events {
        if e.kind == EventKind::SurfaceNonClifford && e.qubits.len() > tiles {
            return Err(format!("non-Clifford of weight {} on {tiles} tiles", e.qubits.len()));
        }
    }
    Ok(())
}

/// Replays moves in start order and checks where operands are when each
/// operation starts.
pub fn residency(program: &PbcCircuit, s: &Schedule) -> Result<(), String> {
    let mut at: Vec<Where> = s
        .initial_placement
        .locations
        .iter()
        .map(|l| match *l {
            Location::Surface { .. } => Where::Surface,
            Location::Gross { block, .. } => Where::Block(block),
        })
        .collect();
    for e in &s.events {
        match e.kind {
            EventKind::Fetch => at[e.qubits[0]] = Where::Surface,
            EventKind::Store => at[e.qubits[0]] = Where::Block(e.movement.as_ref().expect("move record").block),
            EventKind::SurfaceClifford | EventKind::SurfaceNonClifford | EventKind::SurfaceMeasure => {
                if let Some(q) = e.qubits.iter().find(|&&q| at[q] != Where::Surface) {
                    return Err(format!("{} at {} uses qubit {q} off the surface", e.kind, e.start_cycle));
                }
            }
            EventKind::InMemoryClifford | EventKind::GrossMeasure => {
                let first = at[e.qubits[0]];
                if !matches!(first, Where::Block(_)) || e.qubits.iter().any(|&q| at[q] != first) {
                    return Err(format!("{} at {} spans several locations", e.kind, e.start_cycle));
                }
                let op = &program.ops[e.op.expect("op event")];
                if matches!(op, PbcOp::Rotate(r) if !r.is_clifford()) {
                    return Err("non-Clifford executed in memory".into());
                }
            }
            EventKind::Automorphism => {}
        }
    }
    Ok(())
}

pub fn totals(s: &Schedule) -> Result<(), String> {
    let max_end = s.events.iter().map(|e| e.end_cycle()).max().unwrap_or(0);
    if s.total_cycles != max_end {
        return Err(format!("total {} vs last end {max_end}", s.total_cycles));
    }
    if s.events.windows(2).any(|w| w[0].start_cycle > w[1].start_cycle) {
        return Err("events not sorted by start".into());
    }
    let moves = s.events.iter().filter(|e| e.kind.is_move()).count();
    if moves != s.io_count {
        return Err(format!("io_count {} vs {moves} moves", s.io_count));
    }
    Ok(())
}

pub fn all(program: &PbcCircuit, s: &Schedule, tiles: usize) -> Result<(), String> {
    dependency_safety(program, s)?;
    resource_exclusivity(s)?;
    weight_feasibility(s, tiles)?;
    residency(program, s)?;
    totals(s)
}
