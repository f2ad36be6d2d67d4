#![no_main]

use libfuzzer_sys::fuzz_target;
use terracini_core::ArithmeticDomain;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(dom) = text.parse::<ArithmeticDomain>() {
        assert!(dom.validate().is_ok());
        assert_eq!(dom.to_string().parse::<ArithmeticDomain>().unwrap(), dom);
    }
});
