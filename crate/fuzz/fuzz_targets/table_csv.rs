#![no_main]

use bloch_gleason::text::parse_table_csv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_table_csv(text) {
        let f = bloch_gleason::OutcomeFunction::Tabulated(t);
        assert_eq!(f.eval(1.0), Ok(1.0));
        assert!(f.eval(0.3).is_ok_and(f64::is_finite));
    }
});
