//! Mapping a Pauli-based program onto surface tiles and gross blocks.

mod greedy;

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::{CostError, ErrorCategory};
use crate::memory::{MemoryError, MonomialLabel, MoveRecord};

pub use greedy::{initial_placement, schedule};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScheduleError {
    #[error("operation {op} has weight {weight} but only {tiles} surface tiles exist")]
    WeightExceedsTiles { op: usize, weight: usize, tiles: usize },
    #[error("{qubits} qubits do not fit in {capacity} slots")]
    CapacityExceeded { qubits: usize, capacity: usize },
    #[error("operation {op} acts on qubit {qubit} outside a {width}-qubit program")]
    QubitOutOfRange { op: usize, qubit: usize, width: usize },
    #[error("scheduler made no progress with {remaining} operations left")]
    Deadlock { remaining: usize },
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error(transparent)]
    Memory(#[from] MemoryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Location {
    Surface { tile: usize },
    Gross { block: usize, label: MonomialLabel },
}

/// Where each logical qubit lives, indexed by qubit.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Placement {
    pub locations: Vec<Location>,
}

impl Placement {
    pub fn surface_count(&self) -> usize {
        self.locations.iter().filter(|l| matches!(l, Location::Surface { .. })).count()
    }

    pub fn block_residents(&self, block: usize) -> usize {
        self.locations.iter().filter(|l| matches!(l, Location::Gross { block: b, .. } if *b == block)).count()
    }

    /// No two qubits share a tile or a slot.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.locations.iter().all(|l| seen.insert(*l))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    SurfaceClifford,
    SurfaceNonClifford,
    SurfaceMeasure,
    InMemoryClifford,
    Automorphism,
    Fetch,
    Store,
    GrossMeasure,
}

impl EventKind {
    pub const ALL: [EventKind; 8] = [
        EventKind::SurfaceClifford,
        EventKind::SurfaceNonClifford,
        EventKind::SurfaceMeasure,
        EventKind::InMemoryClifford,
        EventKind::Automorphism,
        EventKind::Fetch,
        EventKind::Store,
        EventKind::GrossMeasure,
    ];

    pub fn category(self) -> ErrorCategory {
        match self {
            EventKind::SurfaceClifford | EventKind::InMemoryClifford | EventKind::SurfaceMeasure => {
                ErrorCategory::Clifford
            }
            EventKind::SurfaceNonClifford => ErrorCategory::NonClifford,
            EventKind::Automorphism | EventKind::Fetch | EventKind::Store | EventKind::GrossMeasure => {
                ErrorCategory::Io
            }
        }
    }

    pub fn is_move(self) -> bool {
        matches!(self, EventKind::Fetch | EventKind::Store)
    }

    pub fn name(self) -> &'static str {
        match self {
            EventKind::SurfaceClifford => "surface_clifford",
            EventKind::SurfaceNonClifford => "surface_non_clifford",
            EventKind::SurfaceMeasure => "surface_measure",
            EventKind::InMemoryClifford => "in_memory_clifford",
            EventKind::Automorphism => "automorphism",
            EventKind::Fetch => "fetch",
            EventKind::Store => "store",
            EventKind::GrossMeasure => "gross_measure",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Hardware an event holds for its whole duration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Resource {
    Tile(usize),
    Block(usize),
    Bus(usize),
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resource::Tile(i) => write!(f, "tile{i}"),
            Resource::Block(i) => write!(f, "block{i}"),
            Resource::Bus(i) => write!(f, "bus{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleEvent {
    pub kind: EventKind,
    /// Index of the program operation this event executes, if any.
    pub op: Option<usize>,
    pub qubits: Vec<usize>,
    pub resources: Vec<Resource>,
    pub start_cycle: u64,
    pub duration_cycles: u64,
    pub error_contribution: f64,
    pub category: ErrorCategory,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub movement: Option<MoveRecord>,
}

impl ScheduleEvent {
    pub fn new(kind: EventKind, qubits: Vec<usize>, start_cycle: u64, duration_cycles: u64, error: f64) -> Self {
        ScheduleEvent {
            kind,
            op: None,
            qubits,
            resources: Vec::new(),
            start_cycle,
            duration_cycles,
            error_contribution: error,
            category: kind.category(),
            movement: None,
        }
    }

    pub fn end_cycle(&self) -> u64 {
        self.start_cycle + self.duration_cycles
    }
}

/// Plain per-category sums of event errors.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CategoryErrors {
    pub io: f64,
    pub clifford: f64,
    pub non_clifford: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    /// Sorted by start cycle; ties keep issue order.
    pub events: Vec<ScheduleEvent>,
    pub total_cycles: u64,
    pub io_count: usize,
    pub errors: CategoryErrors,
    /// Sum over qubits of cycles spent waiting between cycle 0 and the end
    /// of the qubit's last event.
    pub idle_qubit_cycles: u64,
    pub surface_tiles: usize,
    pub blocks: usize,
    pub initial_placement: Placement,
    pub final_placement: Placement,
}

impl Schedule {
    /// Builds a schedule from events in any order.
    pub fn from_events(mut events: Vec<ScheduleEvent>) -> Schedule {
        events.sort_by_key(|e| e.start_cycle);
        let mut errors = CategoryErrors::default();
        let mut busy: BTreeMap<usize, (u64, u64)> = BTreeMap::new();
        for e in &events {
            match e.category {
                ErrorCategory::Io => errors.io += e.error_contribution,
                ErrorCategory::Clifford => errors.clifford += e.error_contribution,
                ErrorCategory::NonClifford => errors.non_clifford += e.error_contribution,
            }
            for &q in &e.qubits {
                let entry = busy.entry(q).or_default();
                entry.0 += e.duration_cycles;
                entry.1 = entry.1.max(e.end_cycle());
            }
        }
        Schedule {
            total_cycles: events.iter().map(ScheduleEvent::end_cycle).max().unwrap_or(0),
            io_count: events.iter().filter(|e| e.kind.is_move()).count(),
            errors,
            idle_qubit_cycles: busy.values().map(|&(used, last)| last.saturating_sub(used)).sum(),
            events,
            surface_tiles: 0,
            blocks: 0,
            initial_placement: Placement::default(),
            final_placement: Placement::default(),
        }
    }

    /// Hash of the event list, stable for a given build.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        for e in &self.events {
            e.kind.hash(&mut h);
            e.op.hash(&mut h);
            e.qubits.hash(&mut h);
            e.resources.hash(&mut h);
            e.start_cycle.hash(&mut h);
            e.duration_cycles.hash(&mut h);
            e.error_contribution.to_bits().hash(&mut h);
        }
        h.finish()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schedule serializes")
    }

    /// One row per event, for Gantt-style plots.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("start_cycle,duration_cycles,kind,op,qubits,resources,error,category\n");
        for e in &self.events {
            let join = |items: Vec<String>| items.join(";");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{:e},{}",
                e.start_cycle,
                e.duration_cycles,
                e.kind,
                e.op.map(|o| o.to_string()).unwrap_or_default(),
                join(e.qubits.iter().map(|q| q.to_string()).collect()),
                join(e.resources.iter().map(|r| r.to_string()).collect()),
                e.error_contribution,
                match e.category {
                    ErrorCategory::Io => "io",
                    ErrorCategory::Clifford => "clifford",
                    ErrorCategory::NonClifford => "non_clifford",
                }
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleStats {
    pub gate_distribution: BTreeMap<EventKind, usize>,
    pub event_count: usize,
    pub io_count: usize,
    pub cycles: u64,
    pub errors: CategoryErrors,
}

pub fn schedule_stats(s: &Schedule) -> ScheduleStats {
    let mut gate_distribution: BTreeMap<EventKind, usize> = EventKind::ALL.iter().map(|&k| (k, 0)).collect();
    for e in &s.events {
        *gate_distribution.entry(e.kind).or_default() += 1;
    }
    ScheduleStats {
        gate_distribution,
        event_count: s.events.len(),
        io_count: s.io_count,
        cycles: s.total_cycles,
        errors: s.errors,
    }
}
