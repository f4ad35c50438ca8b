#![no_main]

use libfuzzer_sys::fuzz_target;
use specrad::rewiring::RewireSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = text.parse::<RewireSpec>() {
        assert_eq!(s.to_string().parse::<RewireSpec>().unwrap(), s);
    }
});
