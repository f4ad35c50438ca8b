#![no_main]

use libfuzzer_sys::fuzz_target;
use specrad::graph::{g6_decode, g6_encode};

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = g6_decode(data) {
        assert_eq!(g6_decode(g6_encode(&g).as_bytes()).unwrap(), g);
    }
});
