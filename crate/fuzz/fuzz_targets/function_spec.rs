#![no_main]

use bloch_gleason::text::FunctionSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(FunctionSpec::Builtin(f)) = text.parse::<FunctionSpec>() {
        for x in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            let y = f.eval(x).expect("built-ins are defined on [-1, 1]");
            assert!(y.is_finite());
        }
    }
});
