#![no_main]

use hetec_core::pbc::{parse_pbc, print_pbc, prune, MaxWeight};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(program) = parse_pbc(text) else { return };
    let again = parse_pbc(&print_pbc(&program)).expect("printed program parses");
    assert_eq!(again, program);
    if program.width <= 64 && program.ops.len() <= 256 {
        let pruned = prune(&program, MaxWeight::Limited(2));
        assert_eq!(pruned.width, program.width);
    }
});
