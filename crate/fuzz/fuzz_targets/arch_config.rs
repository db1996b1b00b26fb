#![no_main]

use hetec_core::ArchitectureConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(arch) = serde_json::from_slice::<ArchitectureConfig>(data) else { return };
    if arch.validate().is_err() {
        return;
    }
    let _ = arch.instructions(true);
    let _ = arch.instructions(false);
    let text = serde_json::to_string(&arch).expect("config serializes");
    let back: ArchitectureConfig = serde_json::from_str(&text).expect("serialized config parses");
    assert!(back.validate().is_ok());
});
