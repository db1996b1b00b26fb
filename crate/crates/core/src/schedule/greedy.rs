use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{EventKind, Location, Placement, Resource, Schedule, ScheduleError, ScheduleEvent};
use crate::circuit::OpDag;
use crate::cost::{ArchitectureConfig, Instructions};
use crate::memory::{GrossBlock, MoveRecord};
use crate::pbc::{op_weight, PbcCircuit, PbcOp};

/// Coarse location used when scoring moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Site {
    Tile,
    Block(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Plan {
    /// Fetch `q` into the free tile `tile`.
    Fetch { q: usize, tile: usize },
    /// Swap memory-resident `q` with `v`, which sits on `tile`. `v` goes to
    /// `store_block`; with `store_first` it is stored before `q` arrives,
    /// otherwise `q` is staged in routing space and `v` takes its slot.
    Exchange { q: usize, v: usize, tile: usize, store_block: usize, store_first: bool },
}

impl Plan {
    fn site_after(&self, qubit: usize, now: Site) -> Site {
        match *self {
            Plan::Fetch { q, .. } if q == qubit => Site::Tile,
            Plan::Exchange { q, .. } if q == qubit => Site::Tile,
            Plan::Exchange { v, store_block, .. } if v == qubit => Site::Block(store_block),
            _ => now,
        }
    }
}

fn check_weights(circuit: &PbcCircuit, tiles: usize) -> Result<(), ScheduleError> {
    for (op, o) in circuit.ops.iter().enumerate() {
        if let Some(qubit) = o.pauli().qubits().find(|&q| q >= circuit.width) {
            return Err(ScheduleError::QubitOutOfRange { op, qubit, width: circuit.width });
        }
        let weight = op_weight(o);
        if weight > tiles {
            return Err(ScheduleError::WeightExceedsTiles { op, weight, tiles });
        }
    }
    Ok(())
}

/// Qubits in order of first use, unused ones last.
fn first_use_order(circuit: &PbcCircuit) -> Vec<usize> {
    let mut seen = vec![false; circuit.width];
    let mut order = Vec::with_capacity(circuit.width);
    for q in circuit.ops.iter().flat_map(|o| o.pauli().qubits()) {
        if !seen[q] {
            seen[q] = true;
            order.push(q);
        }
    }
    order.extend((0..circuit.width).filter(|&q| !seen[q]));
    order
}

struct Layout {
    tiles: Vec<Option<usize>>,
    blocks: Vec<GrossBlock>,
    placement: Placement,
}

fn layout(circuit: &PbcCircuit, arch: &ArchitectureConfig) -> Result<Layout, ScheduleError> {
    arch.validate()?;
    let n = circuit.width;
    let s = arch.surface_tiles;
    let block_count = arch.blocks_for(n);
    let capacity = s + block_count * arch.memory.capacity;
    if n > capacity {
        return Err(ScheduleError::CapacityExceeded { qubits: n, capacity });
    }
    let mut blocks =
        (0..block_count).map(|id| GrossBlock::new(id, arch.memory.clone())).collect::<Result<Vec<_>, _>>()?;
    let mut tiles = vec![None; s];
    let mut locations = vec![Location::Surface { tile: 0 }; n];
    let order = first_use_order(circuit);
    for (k, &q) in order.iter().enumerate() {
        if k < s {
            tiles[k] = Some(q);
            locations[q] = Location::Surface { tile: k };
            continue;
        }
        // round-robin over blocks, nearest free label to the probe
        let start = (k - s) % block_count;
        let block = (0..block_count)
            .map(|i| (start + i) % block_count)
            .find(|&b| !blocks[b].is_full())
            .expect("capacity checked above");
        let label = blocks[block].free_labels()[0];
        blocks[block].place(label, q)?;
        locations[q] = Location::Gross { block, label };
    }
    Ok(Layout { tiles, blocks, placement: Placement { locations } })
}

/// The earliest-used qubits go on the surface tiles; the rest are dealt
/// round-robin into gross blocks, nearest-to-probe slots first.
pub fn initial_placement(circuit: &PbcCircuit, arch: &ArchitectureConfig) -> Result<Placement, ScheduleError> {
    Ok(layout(circuit, arch)?.placement)
}

struct Machine<'a> {
    ins: &'a Instructions,
    tiles: Vec<Option<usize>>,
    tile_free: Vec<u64>,
    blocks: Vec<GrossBlock>,
    site: Vec<Site>,
    ready: Vec<u64>,
    events: Vec<ScheduleEvent>,
}

impl Machine<'_> {
    fn tile_of(&self, q: usize) -> usize {
        self.tiles.iter().position(|&t| t == Some(q)).expect("qubit is on a tile")
    }

    fn executable_with(&self, op: &PbcOp, site: impl Fn(usize) -> Site) -> bool {
        let mut sites = op.pauli().qubits().map(site);
        let Some(first) = sites.next() else { return true };
        match first {
            Site::Tile => sites.all(|s| s == Site::Tile),
            Site::Block(b) => !op.is_non_clifford() && sites.all(|s| s == Site::Block(b)),
        }
    }

    fn executable(&self, op: &PbcOp) -> bool {
        self.executable_with(op, |q| self.site[q])
    }

    fn push(&mut self, mut event: ScheduleEvent, op: Option<usize>, resources: Vec<Resource>) {
        event.op = op;
        event.resources = resources;
        self.events.push(event);
    }

    fn run(&mut self, index: usize, op: &PbcOp) -> Result<(), ScheduleError> {
        let qubits: Vec<usize> = op.pauli().qubits().collect();
        let ready = qubits.iter().map(|&q| self.ready[q]).max().unwrap_or(0);
        let end = match qubits.first().map(|&q| self.site[q]) {
            None => return Ok(()),
            Some(Site::Tile) => {
                let tiles: Vec<usize> = qubits.iter().map(|&q| self.tile_of(q)).collect();
                let start = tiles.iter().map(|&t| self.tile_free[t]).fold(ready, u64::max);
                let (kind, cost) = match op {
                    PbcOp::Measure(_) => (EventKind::SurfaceMeasure, self.ins.surface_measure),
                    PbcOp::Rotate(r) if r.is_clifford() => (EventKind::SurfaceClifford, self.ins.surface_clifford),
                    PbcOp::Rotate(_) => (EventKind::SurfaceNonClifford, self.ins.surface_non_clifford(qubits.len())),
                };
                let end = start + cost.cycles;
                for &t in &tiles {
                    self.tile_free[t] = end;
                }
                let event = ScheduleEvent::new(kind, qubits.clone(), start, cost.cycles, cost.error);
                self.push(event, Some(index), tiles.into_iter().map(Resource::Tile).collect());
                end
            }
            Some(Site::Block(b)) => {
                let gross = self.ins.gross.expect("memory-resident qubits imply gross costs");
                let resources = vec![Resource::Block(b), Resource::Bus(b)];
                let mut start = ready.max(self.blocks[b].busy_until());
                if op.is_measurement() {
                    let label = self.blocks[b].label_of(qubits[0]).expect("qubit is in this block");
                    let align = self.blocks[b].align(start, label, &gross.moves)?;
                    if align.steps > 0 {
                        let event = ScheduleEvent::new(
                            EventKind::Automorphism,
                            vec![qubits[0]],
                            start,
                            align.duration_cycles,
                            align.error_contribution,
                        );
                        self.push(event, Some(index), resources.clone());
                        start += align.duration_cycles;
                    }
                }
                let (kind, cost) = if op.is_measurement() {
                    (EventKind::GrossMeasure, gross.measure)
                } else {
                    (EventKind::InMemoryClifford, gross.in_memory_clifford)
                };
                let end = start + cost.cycles;
                self.blocks[b].occupy(start, end)?;
                self.push(
                    ScheduleEvent::new(kind, qubits.clone(), start, cost.cycles, cost.error),
                    Some(index),
                    resources,
                );
                end
            }
        };
        for &q in &qubits {
            self.ready[q] = end;
        }
        Ok(())
    }

    fn move_event(&mut self, record: MoveRecord, start: u64, tile: usize) -> u64 {
        let kind = match record.direction {
            crate::memory::Direction::Fetch => EventKind::Fetch,
            crate::memory::Direction::Store => EventKind::Store,
        };
        let b = record.block;
        let mut event =
            ScheduleEvent::new(kind, vec![record.qubit], start, record.duration_cycles, record.error_contribution);
        event.movement = Some(record);
        let end = event.end_cycle();
        self.push(event, None, vec![Resource::Tile(tile), Resource::Block(b), Resource::Bus(b)]);
        end
    }

    fn fetch(&mut self, q: usize, tile: usize, not_before: u64) -> Result<(), ScheduleError> {
        let Site::Block(b) = self.site[q] else { unreachable!("fetching a surface qubit") };
        let moves = self.ins.gross.expect("memory present").moves;
        let label = self.blocks[b].label_of(q).expect("qubit is in its block");
        let start = not_before.max(self.ready[q]).max(self.tile_free[tile]).max(self.blocks[b].busy_until());
        let record = self.blocks[b].fetch(start, label, &mut self.tiles[tile], &moves)?;
        let end = self.move_event(record, start, tile);
        self.ready[q] = end;
        self.tile_free[tile] = end;
        self.site[q] = Site::Tile;
        Ok(())
    }

    fn store(&mut self, v: usize, tile: usize, block: usize, not_before: u64) -> Result<(), ScheduleError> {
        let moves = self.ins.gross.expect("memory present").moves;
        let label = self.blocks[block].free_labels()[0];
        let start = not_before.max(self.ready[v]).max(self.tile_free[tile]).max(self.blocks[block].busy_until());
        let record = self.blocks[block].store(start, label, &mut self.tiles[tile], &moves)?;
        let end = self.move_event(record, start, tile);
        self.ready[v] = end;
        self.tile_free[tile] = end;
        self.site[v] = Site::Block(block);
        Ok(())
    }

    fn apply(&mut self, plan: Plan) -> Result<(), ScheduleError> {
        match plan {
            Plan::Fetch { q, tile } => self.fetch(q, tile, 0),
            Plan::Exchange { q, v, tile, store_block, store_first: true } => {
                self.store(v, tile, store_block, 0)?;
                self.fetch(q, tile, 0)
            }
            Plan::Exchange { q, v, tile, store_block, store_first: false } => {
                // Stage q in routing space, then put v into the slot q left.
                let Site::Block(b) = self.site[q] else { unreachable!("exchanging a surface qubit") };
                debug_assert_eq!(b, store_block);
                let moves = self.ins.gross.expect("memory present").moves;
                let label = self.blocks[b].label_of(q).expect("qubit is in its block");
                let start = self.ready[q].max(self.ready[v]).max(self.tile_free[tile]).max(self.blocks[b].busy_until());
                let mut staging = None;
                let record = self.blocks[b].fetch(start, label, &mut staging, &moves)?;
                let fetched = self.move_event(record, start, tile);
                self.tile_free[tile] = fetched;
                self.ready[q] = fetched;
                self.site[q] = Site::Tile;
                let store_start = fetched.max(self.ready[v]);
                let record = self.blocks[b].store(store_start, label, &mut self.tiles[tile], &moves)?;
                let end = self.move_event(record, store_start, tile);
                self.tiles[tile] = staging;
                self.tile_free[tile] = end;
                self.ready[v] = end;
                self.site[v] = Site::Block(b);
                Ok(())
            }
        }
    }

    /// Every single move that brings a memory operand of `op` onto the
    /// surface without evicting another operand of `op`.
    fn plans_for(&self, op: &PbcOp, out: &mut Vec<Plan>) {
        let support: BTreeSet<usize> = op.pauli().qubits().collect();
        let free_tile = self.tiles.iter().position(Option::is_none);
        for &q in &support {
            let Site::Block(qb) = self.site[q] else { continue };
            if let Some(tile) = free_tile {
                out.push(Plan::Fetch { q, tile });
                continue;
            }
            let (store_block, store_first) = if !self.blocks[qb].is_full() {
                (qb, true)
            } else if let Some(b) = self.blocks.iter().position(|b| !b.is_full()) {
                (b, true)
            } else {
                (qb, false)
            };
            for (tile, v) in self.tiles.iter().enumerate() {
                let v = v.expect("no free tile");
                if !support.contains(&v) {
                    out.push(Plan::Exchange { q, v, tile, store_block, store_first });
                }
            }
        }
    }
}

/// Greedy list scheduling over the dependency DAG.
///
/// Every frontier operation that can run where its operands already are
/// (all on tiles, or a Clifford or measurement inside one block) is issued
/// at the earliest cycle its qubits and hardware are free. When nothing can
/// run, the single fetch or fetch/store exchange that makes the most
/// frontier operations runnable is applied, ties broken by a seeded
/// shuffle. If no move helps immediately, the lowest-indexed blocked
/// operation gets one of its operands fetched, which guarantees progress.
pub fn schedule(circuit: &PbcCircuit, arch: &ArchitectureConfig, seed: u64) -> Result<Schedule, ScheduleError> {
    check_weights(circuit, arch.surface_tiles)?;
    let Layout { tiles, blocks, placement } = layout(circuit, arch)?;
    let ins = arch.instructions(!blocks.is_empty())?;
    let site = placement
        .locations
        .iter()
        .map(|l| match *l {
            Location::Surface { .. } => Site::Tile,
            Location::Gross { block, .. } => Site::Block(block),
        })
        .collect();
    let mut m = Machine {
        ins: &ins,
        tile_free: vec![0; tiles.len()],
        tiles,
        blocks,
        site,
        ready: vec![0; circuit.width],
        events: Vec::new(),
    };

    let ops = &circuit.ops;
    let dag = OpDag::from_supports(ops.iter().map(|o| o.pauli().qubits().collect::<Vec<_>>()));
    let mut waiting: Vec<usize> = (0..ops.len()).map(|i| dag.predecessors(i).len()).collect();
    let mut frontier: BTreeSet<usize> = (0..ops.len()).filter(|&i| waiting[i] == 0).collect();
    let mut remaining = ops.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idle_moves = 0usize;
    let mut plans = Vec::new();

    while remaining > 0 {
        let runnable: Vec<usize> = frontier.iter().copied().filter(|&i| m.executable(&ops[i])).collect();
        if !runnable.is_empty() {
            idle_moves = 0;
            for i in runnable {
                m.run(i, &ops[i])?;
                frontier.remove(&i);
                remaining -= 1;
                for &s in dag.successors(i) {
                    waiting[s] -= 1;
                    if waiting[s] == 0 {
                        frontier.insert(s);
                    }
                }
            }
            continue;
        }

        idle_moves += 1;
        if idle_moves > 2 * arch.surface_tiles + 2 {
            return Err(ScheduleError::Deadlock { remaining });
        }
        plans.clear();
        for &i in &frontier {
            m.plans_for(&ops[i], &mut plans);
        }
        plans.sort_unstable_by_key(|p| match *p {
            Plan::Fetch { q, tile } => (q, usize::MAX, tile),
            Plan::Exchange { q, v, tile, .. } => (q, v, tile),
        });
        plans.dedup();
        plans.shuffle(&mut rng);
        let score = |plan: &Plan| {
            frontier.iter().filter(|&&i| m.executable_with(&ops[i], |q| plan.site_after(q, m.site[q]))).count()
        };
        let mut best: Option<(usize, Plan)> = None;
        for plan in &plans {
            let s = score(plan);
            if best.is_none_or(|(b, _)| s > b) {
                best = Some((s, *plan));
            }
        }
        let plan = match best {
            Some((s, plan)) if s > 0 => plan,
            _ => {
                let focus = *frontier.iter().next().ok_or(ScheduleError::Deadlock { remaining })?;
                let mut own = Vec::new();
                m.plans_for(&ops[focus], &mut own);
                own.shuffle(&mut rng);
                *own.first().ok_or(ScheduleError::Deadlock { remaining })?
            }
        };
        m.apply(plan)?;
    }

    let final_placement = Placement {
        locations: (0..circuit.width)
            .map(|q| match m.site[q] {
                Site::Tile => Location::Surface { tile: m.tile_of(q) },
                Site::Block(b) => Location::Gross { block: b, label: m.blocks[b].label_of(q).expect("resident") },
            })
            .collect(),
    };
    let mut out = Schedule::from_events(m.events);
    out.surface_tiles = arch.surface_tiles;
    out.blocks = m.blocks.len();
    out.initial_placement = placement;
    out.final_placement = final_placement;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbc::{Angle, Axis, PauliProduct, Sign};

    fn pp(f: &[(usize, Axis)]) -> PauliProduct {
        PauliProduct::from_factors(f.iter().copied()).unwrap()
    }

    fn arch(tiles: usize) -> ArchitectureConfig {
        ArchitectureConfig { surface_tiles: tiles, ..ArchitectureConfig::default() }
    }

    #[test]
    fn single_qubit_program() {
        let c = PbcCircuit {
            width: 1,
            ops: vec![
                PbcOp::rotation(pp(&[(0, Axis::Z)]), Angle::T),
                PbcOp::measurement(pp(&[(0, Axis::Z)]), Sign::Plus),
            ],
            frame: PauliProduct::identity(),
        };
        let s = schedule(&c, &arch(1), 0).unwrap();
        assert_eq!(s.events.len(), 2);
        assert_eq!(s.total_cycles, 39);
        assert_eq!(s.io_count, 0);
        assert_eq!(s.blocks, 0);
    }

    #[test]
    fn memory_operand_is_fetched_once() {
        // qubits 0 and 1 are used first and sit on the tiles; the T on Z0 Z2
        // needs qubit 2, which starts in memory
        let c = PbcCircuit {
            width: 3,
            ops: vec![
                PbcOp::rotation(pp(&[(0, Axis::Z), (1, Axis::X)]), Angle::CLIFFORD),
                PbcOp::rotation(pp(&[(0, Axis::Z), (2, Axis::Z)]), Angle::T),
            ],
            frame: PauliProduct::identity(),
        };
        let placement = initial_placement(&c, &arch(2)).unwrap();
        assert_eq!(placement.surface_count(), 2);
        assert!(matches!(placement.locations[2], Location::Gross { block: 0, .. }));
        let s = schedule(&c, &arch(2), 7).unwrap();
        let fetches = s.events.iter().filter(|e| e.kind == EventKind::Fetch).count();
        assert_eq!(fetches, 1);
        // qubit 1 is evicted to make room
        assert_eq!(s.io_count, 2);
        let t = s.events.iter().find(|e| e.kind == EventKind::SurfaceNonClifford).unwrap();
        let fetch = s.events.iter().find(|e| e.kind == EventKind::Fetch).unwrap();
        assert!(fetch.end_cycle() <= t.start_cycle);
    }

    #[test]
    fn eighteen_qubits_on_two_tiles() {
        let mut c = PbcCircuit::new(18);
        for q in 0..18 {
            c.ops.push(PbcOp::measurement(pp(&[(q, Axis::Z)]), Sign::Plus));
        }
        let p = initial_placement(&c, &arch(2)).unwrap();
        assert_eq!(p.surface_count(), 2);
        assert_eq!(p.block_residents(0) + p.block_residents(1), 16);
        assert!(p.is_injective());
    }

    #[test]
    fn heavy_operation_rejected() {
        let c = PbcCircuit {
            width: 3,
            ops: vec![PbcOp::rotation(pp(&[(0, Axis::Z), (1, Axis::Z), (2, Axis::Z)]), Angle::T)],
            frame: PauliProduct::identity(),
        };
        assert!(matches!(
            schedule(&c, &arch(2), 0),
            Err(ScheduleError::WeightExceedsTiles { op: 0, weight: 3, tiles: 2 })
        ));
    }

    #[test]
    fn too_many_qubits_for_fixed_blocks() {
        let c = PbcCircuit::new(5);
        let a = ArchitectureConfig { gross_blocks: Some(0), ..arch(2) };
        assert_eq!(initial_placement(&c, &a), Err(ScheduleError::CapacityExceeded { qubits: 5, capacity: 2 }));
    }
}
