#![no_main]

use bloch_gleason::text::{parse_state, Representation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let repr = match selector % 3 {
        0 => None,
        1 => Some(Representation::Matrix),
        _ => Some(Representation::Bloch),
    };
    let dim = match selector >> 2 {
        0 => None,
        d => Some(usize::from(d % 10)),
    };
    let _ = parse_state(text, repr, dim);
});
