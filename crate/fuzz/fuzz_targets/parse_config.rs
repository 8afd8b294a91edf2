#![no_main]

use libfuzzer_sys::fuzz_target;
use polyperm_harness::config::Params;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(params) = Params::from_str(text) else { return };
    // drive every typed getter: errors are fine, panics and runaway
    // allocations are findings
    let _ = params.get_u64("trials", 1);
    let _ = params.get_usize("n", 1);
    let _ = params.get_f64("rough_a", 0.25);
    let _ = params.get_usize_list("k", &[1]);
    let _ = params.get_primes("primes", &[2, 3]);
    let _ = params.get_model("model", polyperm::CoefficientModel::PlusMinusOne);
    let _ = params.get_seed();
});
