#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = ehcert::io::read_graph(text) {
        // canonical re-emission must reparse to the same graph
        let out = ehcert::io::write_graph(&g);
        let g2 = ehcert::io::read_graph(&out).expect("canonical output must reparse");
        assert_eq!(g, g2);
        // and canonical output is a fixed point
        assert_eq!(ehcert::io::write_graph(&g2), out);
    }
});
