#![no_main]

use libfuzzer_sys::fuzz_target;
use terracini_cli::parse_range;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_range::<u32>(text) {
        // printing and re-parsing gives the same bounds
        let again = parse_range::<u32>(&format!("{}..{}", r.start(), r.end())).unwrap();
        assert_eq!(again, r);
    }
    let _ = parse_range::<usize>(text);
});
