#![no_main]

use libfuzzer_sys::fuzz_target;
use terracini_cli::decode_report;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = decode_report(text) {
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(decode_report(&json).unwrap(), report);
    }
});
