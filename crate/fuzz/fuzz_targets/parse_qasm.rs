#![no_main]

use hetec_core::circuit::{build_dag, parse_qasm, print_qasm};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(circuit) = parse_qasm(text) else { return };
    // anything accepted must survive a print/parse round trip
    let again = parse_qasm(&print_qasm(&circuit)).expect("printed circuit parses");
    assert_eq!(again.gates(), circuit.gates());
    assert!(build_dag(&circuit).topological_order().is_some());
});
