#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // parsing must never panic; running the grid is out of scope here
    let _ = ehcert::experiments::parse_config(text);
});
