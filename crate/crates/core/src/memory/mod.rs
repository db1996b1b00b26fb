//! Gross-code memory blocks.
//!
//! Each block holds logical qubits at slots labelled by monomials of an
//! abelian group. Only the slot under the probe talks to the ancilla bus;
//! automorphisms (one clock cycle each) shift every label by a generator,
//! so reaching a slot costs the Cayley-graph distance from the probe.

mod group;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use group::{
    access_cost_stats, labels_by_distance, shortest_automorphism_sequence, AccessStats, Generator, GeneratorSet,
    LabelGroup, MonomialLabel, Route,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MemoryError {
    #[error("label group {}x{} is empty", .0.l, .0.m)]
    InvalidGroup(LabelGroup),
    #[error("label {label} is outside Z_{}xZ_{}", .group.l, .group.m)]
    LabelOutOfRange { label: MonomialLabel, group: LabelGroup },
    #[error("the identity cannot be an automorphism generator")]
    IdentityGenerator,
    #[error("generator set does not generate the label group on the {0:?} route")]
    DoesNotGenerate(Route),
    #[error("no automorphism word from {from} to {to}")]
    Unreachable { from: MonomialLabel, to: MonomialLabel },
    #[error("capacity {capacity} exceeds the {order} labels of the group")]
    CapacityTooLarge { capacity: usize, order: usize },
    #[error("bus of block {block} is busy until cycle {free_at}")]
    BusBusy { block: usize, free_at: u64 },
    #[error("destination tile already holds qubit {0}")]
    DestinationOccupied(usize),
    #[error("source tile is empty")]
    EmptySource,
    #[error("slot {label} of block {block} is empty")]
    EmptySlot { block: usize, label: MonomialLabel },
    #[error("slot {label} of block {block} already holds qubit {qubit}")]
    SlotOccupied { block: usize, label: MonomialLabel, qubit: usize },
    #[error("slot {label} of block {block} is reserved")]
    ReservedSlot { block: usize, label: MonomialLabel },
}

/// How automorphism steps are charged for a move.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum AccessMode {
    /// Shortest words found by BFS over the generator set.
    #[default]
    Bfs,
    /// A fixed number of steps for any access that is not already at the
    /// probe, independent of the labels involved.
    Flat { x_steps: usize, z_steps: usize },
}

fn default_capacity() -> usize {
    11
}

fn default_sync() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryConfig {
    #[serde(default)]
    pub group: LabelGroup,
    #[serde(default)]
    pub omega: GeneratorSet,
    /// Data slots per block; the remaining labels (farthest from the
    /// initial probe) are kept free.
    #[serde(default = "default_capacity")]
    pub capacity: usize,
    /// X and Z logical operators share labels, so no Z-route automorphisms
    /// are needed after the X route.
    #[serde(default = "default_sync")]
    pub sync_mode: bool,
    #[serde(default)]
    pub access: AccessMode,
}

impl Default for MemoryConfig {
    fn default() -> Self {
        MemoryConfig {
            group: LabelGroup::default(),
            omega: GeneratorSet::default(),
            capacity: default_capacity(),
            sync_mode: default_sync(),
            access: AccessMode::default(),
        }
    }
}

impl MemoryConfig {
    pub fn validate(&self) -> Result<(), MemoryError> {
        self.omega.validate(self.group)?;
        if self.capacity > self.group.order() {
            return Err(MemoryError::CapacityTooLarge { capacity: self.capacity, order: self.group.order() });
        }
        Ok(())
    }
}

/// Durations (cycles) and error rates of the primitive gross-code
/// instructions used by a move.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoveCosts {
    pub t_auto: u64,
    pub t_xx: u64,
    pub t_zmeas: u64,
    pub e_auto: f64,
    pub e_xx: f64,
    pub e_zmeas: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Fetch,
    Store,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub direction: Direction,
    pub block: usize,
    pub label: MonomialLabel,
    pub qubit: usize,
    pub x_auto_steps: usize,
    pub z_auto_steps: usize,
    /// The XX and Z outcomes leave a Pauli correction that is tracked in
    /// software rather than applied.
    pub pauli_fix: bool,
    pub duration_cycles: u64,
    pub error_contribution: f64,
}

impl MoveRecord {
    pub fn auto_steps(&self) -> usize {
        self.x_auto_steps + self.z_auto_steps
    }
}

/// Automorphisms that bring a slot under the probe without moving data out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Alignment {
    pub steps: usize,
    pub duration_cycles: u64,
    pub error_contribution: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrossBlock {
    id: usize,
    config: MemoryConfig,
    /// Indexed by `group.index(label)`.
    occupancy: Vec<Option<usize>>,
    usable: Vec<bool>,
    probe: MonomialLabel,
    busy_until: u64,
}

impl GrossBlock {
    pub fn new(id: usize, config: MemoryConfig) -> Result<Self, MemoryError> {
        config.validate()?;
        let group = config.group;
        let mut usable = vec![false; group.order()];
        for label in labels_by_distance(group, &config.omega, MonomialLabel::IDENTITY).into_iter().take(config.capacity)
        {
            usable[group.index(label)] = true;
        }
        Ok(GrossBlock {
            id,
            occupancy: vec![None; group.order()],
            usable,
            probe: MonomialLabel::IDENTITY,
            busy_until: 0,
            config,
        })
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn probe(&self) -> MonomialLabel {
        self.probe
    }

    pub fn capacity(&self) -> usize {
        self.config.capacity
    }

    pub fn busy_until(&self) -> u64 {
        self.busy_until
    }

    pub fn config(&self) -> &MemoryConfig {
        &self.config
    }

    pub fn occupied_count(&self) -> usize {
        self.occupancy.iter().flatten().count()
    }

    pub fn is_full(&self) -> bool {
        self.occupied_count() >= self.capacity()
    }

    pub fn occupant(&self, label: MonomialLabel) -> Option<usize> {
        self.occupancy.get(self.config.group.index(label)).copied().flatten()
    }

    pub fn label_of(&self, qubit: usize) -> Option<MonomialLabel> {
        self.occupancy.iter().position(|&o| o == Some(qubit)).map(|k| self.config.group.element(k))
    }

    pub fn residents(&self) -> impl Iterator<Item = (MonomialLabel, usize)> + '_ {
        self.occupancy.iter().enumerate().filter_map(|(k, o)| o.map(|q| (self.config.group.element(k), q)))
    }

    pub fn is_usable(&self, label: MonomialLabel) -> bool {
        self.config.group.contains(label) && self.usable[self.config.group.index(label)]
    }

    /// Free data slots, nearest to the probe first.
    pub fn free_labels(&self) -> Vec<MonomialLabel> {
        labels_by_distance(self.config.group, &self.config.omega, self.probe)
            .into_iter()
            .filter(|&a| self.is_usable(a) && self.occupant(a).is_none())
            .collect()
    }

    /// Places a qubit without any cost, for initial layout.
    pub fn place(&mut self, label: MonomialLabel, qubit: usize) -> Result<(), MemoryError> {
        self.check_free_slot(label)?;
        let k = self.config.group.index(label);
        self.occupancy[k] = Some(qubit);
        Ok(())
    }

    /// Marks the block and its bus busy over `[at, until)`.
    pub fn occupy(&mut self, at: u64, until: u64) -> Result<(), MemoryError> {
        self.check_idle(at)?;
        self.busy_until = self.busy_until.max(until);
        Ok(())
    }

    /// X-route and Z-route automorphism counts for moving the probe to `target`.
    pub fn plan_access(&self, target: MonomialLabel) -> Result<(usize, usize), MemoryError> {
        let group = self.config.group;
        if !group.contains(target) {
            return Err(MemoryError::LabelOutOfRange { label: target, group });
        }
        if target == self.probe {
            return Ok((0, 0));
        }
        match self.config.access {
            AccessMode::Flat { x_steps, z_steps } => Ok((x_steps, z_steps)),
            AccessMode::Bfs => {
                let omega = &self.config.omega;
                let x = shortest_automorphism_sequence(group, omega, self.probe, target, Route::X)?.len();
                if self.config.sync_mode {
                    return Ok((x, 0));
                }
                // Z labels are the inverses of the X labels, so the Z
                // differential is m_d⁻¹ and the residual Z shift m_d⁻².
                let m_d = group.div(target, self.probe);
                let z_diff = group.div(group.inv(target), group.inv(self.probe));
                let residual = group.div(z_diff, m_d);
                let z =
                    shortest_automorphism_sequence(group, omega, MonomialLabel::IDENTITY, residual, Route::Z)?.len();
                Ok((x, z))
            }
        }
    }

    /// Teleports the qubit at `target` onto the surface tile `dest`.
    pub fn fetch(
        &mut self,
        at: u64,
        target: MonomialLabel,
        dest: &mut Option<usize>,
        costs: &MoveCosts,
    ) -> Result<MoveRecord, MemoryError> {
        self.check_idle(at)?;
        if let Some(q) = *dest {
            return Err(MemoryError::DestinationOccupied(q));
        }
        let qubit = self.occupant(target).ok_or(MemoryError::EmptySlot { block: self.id, label: target })?;
        let record = self.moved(Direction::Fetch, at, target, qubit, costs)?;
        let k = self.config.group.index(target);
        self.occupancy[k] = None;
        *dest = Some(qubit);
        Ok(record)
    }

    /// Teleports the qubit on surface tile `source` into the free slot `target`.
    pub fn store(
        &mut self,
        at: u64,
        target: MonomialLabel,
        source: &mut Option<usize>,
        costs: &MoveCosts,
    ) -> Result<MoveRecord, MemoryError> {
        self.check_idle(at)?;
        let qubit = source.ok_or(MemoryError::EmptySource)?;
        self.check_free_slot(target)?;
        let record = self.moved(Direction::Store, at, target, qubit, costs)?;
        let k = self.config.group.index(target);
        self.occupancy[k] = Some(qubit);
        *source = None;
        Ok(record)
    }

    /// Brings `target` under the probe with X-route automorphisms only.
    pub fn align(&mut self, at: u64, target: MonomialLabel, costs: &MoveCosts) -> Result<Alignment, MemoryError> {
        self.check_idle(at)?;
        let (steps, _) = self.plan_access(target)?;
        let alignment = Alignment {
            steps,
            duration_cycles: steps as u64 * costs.t_auto,
            error_contribution: steps as f64 * costs.e_auto,
        };
        self.probe = target;
        self.busy_until = at + alignment.duration_cycles;
        Ok(alignment)
    }

    fn moved(
        &mut self,
        direction: Direction,
        at: u64,
        target: MonomialLabel,
        qubit: usize,
        costs: &MoveCosts,
    ) -> Result<MoveRecord, MemoryError> {
        let (x, z) = self.plan_access(target)?;
        let duration = x as u64 * costs.t_auto + costs.t_xx + z as u64 * costs.t_auto + costs.t_zmeas;
        let error = (x + z) as f64 * costs.e_auto + costs.e_xx + costs.e_zmeas;
        self.probe = target;
        self.busy_until = at + duration;
        Ok(MoveRecord {
            direction,
            block: self.id,
            label: target,
            qubit,
            x_auto_steps: x,
            z_auto_steps: z,
            pauli_fix: true,
            duration_cycles: duration,
            error_contribution: error,
        })
    }

    fn check_idle(&self, at: u64) -> Result<(), MemoryError> {
        if at < self.busy_until {
            return Err(MemoryError::BusBusy { block: self.id, free_at: self.busy_until });
        }
        Ok(())
    }

    fn check_free_slot(&self, label: MonomialLabel) -> Result<(), MemoryError> {
        let group = self.config.group;
        if !group.contains(label) {
            return Err(MemoryError::LabelOutOfRange { label, group });
        }
        if !self.is_usable(label) {
            return Err(MemoryError::ReservedSlot { block: self.id, label });
        }
        if let Some(qubit) = self.occupant(label) {
            return Err(MemoryError::SlotOccupied { block: self.id, label, qubit });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const COSTS: MoveCosts = MoveCosts { t_auto: 1, t_xx: 7, t_zmeas: 7, e_auto: 4e-7, e_xx: 2e-5, e_zmeas: 2e-5 };

    fn block(config: MemoryConfig) -> GrossBlock {
        let mut b = GrossBlock::new(0, config).unwrap();
        let labels = b.free_labels();
        for (q, label) in labels.into_iter().enumerate() {
            b.place(label, q).unwrap();
        }
        b
    }

    #[test]
    fn capacity_reserves_one_label() {
        let b = block(MemoryConfig::default());
        assert_eq!(b.occupied_count(), 11);
        assert!(b.is_full());
        assert!(b.free_labels().is_empty());
        let reserved: Vec<_> = LabelGroup::default().elements().filter(|&a| !b.is_usable(a)).collect();
        assert_eq!(reserved.len(), 1);
    }

    #[test]
    fn fetch_at_probe_costs_fourteen() {
        let mut b = block(MemoryConfig::default());
        let mut tile = None;
        let rec = b.fetch(0, MonomialLabel::IDENTITY, &mut tile, &COSTS).unwrap();
        assert_eq!((rec.x_auto_steps, rec.z_auto_steps), (0, 0));
        assert_eq!(rec.duration_cycles, 14);
        assert_eq!(tile, Some(0));
        assert_eq!(b.busy_until(), 14);
    }

    #[test]
    fn flat_access_costs_eighteen() {
        let config = MemoryConfig { access: AccessMode::Flat { x_steps: 2, z_steps: 2 }, ..MemoryConfig::default() };
        let mut b = block(config);
        let target = b.residents().find(|&(l, _)| l != b.probe()).unwrap().0;
        let mut tile = None;
        let rec = b.fetch(0, target, &mut tile, &COSTS).unwrap();
        assert_eq!(rec.duration_cycles, 18);
        assert_eq!(rec.error_contribution, 4.0 * 4e-7 + 2e-5 + 2e-5);
        assert_eq!(b.probe(), target);
    }

    #[test]
    fn sync_mode_skips_z_route() {
        let mut b = block(MemoryConfig::default());
        let far = MonomialLabel::new(3, 1);
        let (x, z) = b.plan_access(far).unwrap();
        assert!(x > 0);
        assert_eq!(z, 0);
        b.config.sync_mode = false;
        let (_, z) = b.plan_access(far).unwrap();
        // m_d = x³y, residual m_d⁻² = 1 in Z_6 x Z_2
        assert_eq!(z, 0);
        let (_, z) = b.plan_access(MonomialLabel::new(1, 0)).unwrap();
        // residual x⁻² = x⁴ is two steps of x⁵
        assert_eq!(z, 2);
    }

    #[test]
    fn move_errors() {
        let mut b = block(MemoryConfig::default());
        let mut tile = Some(99);
        assert_eq!(b.fetch(0, MonomialLabel::IDENTITY, &mut tile, &COSTS), Err(MemoryError::DestinationOccupied(99)));
        let mut tile = None;
        b.fetch(0, MonomialLabel::IDENTITY, &mut tile, &COSTS).unwrap();
        let mut other = None;
        assert!(matches!(
            b.fetch(5, MonomialLabel::new(1, 0), &mut other, &COSTS),
            Err(MemoryError::BusBusy { free_at: 14, .. })
        ));
        assert!(matches!(b.fetch(14, MonomialLabel::IDENTITY, &mut other, &COSTS), Err(MemoryError::EmptySlot { .. })));
        let mut empty = None;
        assert_eq!(b.store(14, MonomialLabel::IDENTITY, &mut empty, &COSTS), Err(MemoryError::EmptySource));
        assert!(matches!(
            b.store(14, MonomialLabel::new(1, 0), &mut tile, &COSTS),
            Err(MemoryError::SlotOccupied { .. })
        ));
    }

    #[test]
    fn store_after_fetch_restores_occupancy() {
        let mut b = block(MemoryConfig::default());
        let before: Vec<_> = b.residents().collect();
        let target = MonomialLabel::new(1, 1);
        let mut tile = None;
        let f = b.fetch(0, target, &mut tile, &COSTS).unwrap();
        let s = b.store(f.duration_cycles, target, &mut tile, &COSTS).unwrap();
        assert_eq!(s.x_auto_steps, 0);
        assert_eq!(tile, None);
        assert_eq!(b.residents().collect::<Vec<_>>(), before);
        assert_eq!(b.probe(), target);
    }

    #[test]
    fn align_moves_probe() {
        let mut b = block(MemoryConfig::default());
        let a = b.align(3, MonomialLabel::new(2, 0), &COSTS).unwrap();
        assert_eq!(a.steps, 2);
        assert_eq!(b.busy_until(), 5);
        assert_eq!(b.probe(), MonomialLabel::new(2, 0));
    }

    #[test]
    fn config_validation() {
        let config = MemoryConfig { capacity: 13, ..MemoryConfig::default() };
        assert_eq!(config.validate(), Err(MemoryError::CapacityTooLarge { capacity: 13, order: 12 }));
    }
}
