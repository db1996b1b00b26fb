#![no_main]

use hetec_core::cost::{gross_op_error, surface_clifford_error, CostTable, GrossOp};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(table) = CostTable::from_json(text) else { return };
    for op in GrossOp::ALL {
        for p in [1e-6, 3e-5, 1e-4, 1e-3] {
            if let Ok(e) = gross_op_error(&table, op, p) {
                assert!(e.is_finite() && e >= 0.0);
            }
        }
    }
    let _ = surface_clifford_error(&table, 1e-3, 13);
});
