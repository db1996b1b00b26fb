use serde::{Deserialize, Serialize};

use super::CostError;

/// The shipped default table, kept in sync with [`CostTable::default`].
pub const DEFAULT_COST_TABLE_JSON: &str = include_str!("../../data/default_cost_table.json");

/// Native gross-code instructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrossOp {
    CliffordRotation,
    Automorphism,
    Measurement,
    JointXX,
}

impl GrossOp {
    pub const ALL: [GrossOp; 4] =
        [GrossOp::CliffordRotation, GrossOp::Automorphism, GrossOp::Measurement, GrossOp::JointXX];
}

/// One instruction: its duration and its error rate at each anchor `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrossRow {
    pub cycles: u64,
    pub errors: Vec<f64>,
}

/// Power law `a · (p / p0)^((d+1)/2)` for one surface-code operation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub a: f64,
    pub p0: f64,
    /// Durations in units of `d` cycles.
    pub clifford_cycles_per_d: u64,
    pub non_clifford_cycles_per_d: u64,
    pub measurement_cycles_per_d: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostTable {
    /// Physical error rates of the gross anchors, strictly decreasing.
    pub anchors: Vec<f64>,
    pub clifford_rotation: GrossRow,
    pub automorphism: GrossRow,
    pub measurement: GrossRow,
    pub joint_xx: GrossRow,
    pub surface: SurfaceModel,
}

impl Default for CostTable {
    fn default() -> Self {
        CostTable {
            anchors: vec![1e-3, 1e-4, 1e-5],
            clifford_rotation: GrossRow { cycles: 14, errors: vec![4e-5, 2e-9, 6e-14] },
            automorphism: GrossRow { cycles: 1, errors: vec![4e-7, 4e-12, 4e-17] },
            measurement: GrossRow { cycles: 7, errors: vec![2e-5, 8e-10, 3e-14] },
            joint_xx: GrossRow { cycles: 7, errors: vec![2e-5, 8e-10, 3e-14] },
            surface: SurfaceModel {
                a: 0.03,
                p0: 0.01,
                clifford_cycles_per_d: 1,
                non_clifford_cycles_per_d: 2,
                measurement_cycles_per_d: 1,
            },
        }
    }
}

impl CostTable {
    pub fn from_json(text: &str) -> Result<Self, CostError> {
        let table: CostTable = serde_json::from_str(text).map_err(|e| CostError::Parse(e.to_string()))?;
        table.validate()?;
        Ok(table)
    }

    pub fn row(&self, op: GrossOp) -> &GrossRow {
        match op {
            GrossOp::CliffordRotation => &self.clifford_rotation,
            GrossOp::Automorphism => &self.automorphism,
            GrossOp::Measurement => &self.measurement,
            GrossOp::JointXX => &self.joint_xx,
        }
    }

    /// Anchors decreasing and positive; every row has one error in (0, 1)
    /// per anchor, decreasing with `p`.
    pub fn validate(&self) -> Result<(), CostError> {
        let bad = |why: &str| Err(CostError::InvalidTable(why.to_string()));
        if self.anchors.len() < 2 {
            return bad("need at least two anchors");
        }
        if self.anchors.iter().any(|&p| !(p > 0.0 && p < 1.0)) {
            return bad("anchors must lie in (0, 1)");
        }
        if self.anchors.windows(2).any(|w| w[1] >= w[0]) {
            return bad("anchors must be strictly decreasing");
        }
        for op in GrossOp::ALL {
            let row = self.row(op);
            if row.errors.len() != self.anchors.len() {
                return bad(&format!("{op:?} needs one error per anchor"));
            }
            if row.errors.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
                return bad(&format!("{op:?} errors must lie in (0, 1)"));
            }
            if row.errors.windows(2).any(|w| w[1] >= w[0]) {
                return bad(&format!("{op:?} errors must decrease with p"));
            }
            if row.cycles == 0 {
                return bad(&format!("{op:?} needs a positive duration"));
            }
        }
        let s = &self.surface;
        if !(s.a > 0.0 && s.p0 > 0.0 && s.p0 < 1.0) {
            return bad("surface coefficients must be positive with p0 < 1");
        }
        Ok(())
    }
}

/// Error rate of a gross-code instruction at physical error rate `p`.
///
/// Exact at the anchors, log-log linear between them and extrapolated
/// along the last segment below the smallest anchor. Rates above the
/// largest anchor are rejected.
pub fn gross_op_error(table: &CostTable, op: GrossOp, p: f64) -> Result<f64, CostError> {
    let anchors = &table.anchors;
    let errors = &table.row(op).errors;
    if !(p > 0.0) || !p.is_finite() {
        return Err(CostError::InvalidP(p));
    }
    if p > anchors[0] {
        return Err(CostError::AboveTable { p, max: anchors[0] });
    }
    if let Some(k) = anchors.iter().position(|&a| a == p) {
        return Ok(errors[k]);
    }
    let last = anchors.len() - 1;
    let k = match anchors.iter().position(|&a| a < p) {
        Some(k) => k - 1,
        None => {
            log::warn!("p = {p:e} is below the smallest anchor {:e}; extrapolating", anchors[last]);
            last - 1
        }
    };
    let (x0, x1) = (anchors[k].ln(), anchors[k + 1].ln());
    let (y0, y1) = (errors[k].ln(), errors[k + 1].ln());
    let t = (p.ln() - x0) / (x1 - x0);
    Ok((y0 + t * (y1 - y0)).exp())
}

fn check_surface(p: f64, d: usize) -> Result<(), CostError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(CostError::InvalidP(p));
    }
    if d == 0 {
        return Err(CostError::InvalidDistance(d));
    }
    Ok(())
}

pub fn surface_clifford_error(table: &CostTable, p: f64, d: usize) -> Result<f64, CostError> {
    check_surface(p, d)?;
    let s = &table.surface;
    Ok(s.a * (p / s.p0).powf((d as f64 + 1.0) / 2.0))
}

/// `w` times the Clifford error, doubled when `doubled` is set.
pub fn surface_nonclifford_error(
    table: &CostTable,
    p: f64,
    d: usize,
    w: usize,
    doubled: bool,
) -> Result<f64, CostError> {
    if w == 0 {
        return Err(CostError::ZeroWeight);
    }
    let base = w as f64 * surface_clifford_error(table, p, d)?;
    Ok(if doubled { 2.0 * base } else { base })
}
