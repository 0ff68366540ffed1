#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cert) = ehcert::io::parse_certificate(text) {
        let out = ehcert::io::write_certificate(&cert);
        let cert2 = ehcert::io::parse_certificate(&out).expect("canonical output must reparse");
        assert_eq!(out, ehcert::io::write_certificate(&cert2));
        // verification must never panic, whatever the certificate claims
        let host = ehcert::graph::Graph::empty(16);
        let _ = ehcert::certificate::verify_certificate(&cert, &host);
    }
});
