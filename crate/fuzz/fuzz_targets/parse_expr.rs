#![no_main]

use hpm_audit::{parse_expr, TruncatedSeries};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(e) = parse_expr(data) {
        let y = TruncatedSeries::identity(6).mul(&TruncatedSeries::identity(6));
        let _ = e.eval_series(&y, 6);
        let _ = e.eval_f64(0.5, 0.25);
        let _ = e.degree_bound(2);
    }
});
