#![no_main]

use libfuzzer_sys::fuzz_target;
use polyperm::IntPoly;

fuzz_target!(|data: &[u8]| {
    let Ok(line) = std::str::from_utf8(data) else { return };
    let Ok(poly) = IntPoly::parse_line(line) else { return };
    // anything that parses must round-trip through the canonical rendering
    let rendered = poly.to_line();
    let again = IntPoly::parse_line(&rendered).expect("canonical form must parse");
    assert_eq!(poly, again);
});
