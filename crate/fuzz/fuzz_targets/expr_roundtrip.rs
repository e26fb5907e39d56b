#![no_main]

use hpm_audit::{format_expr, parse_expr};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(e) = parse_expr(data) else { return };
    let printed = format_expr(&e);
    let back =
        parse_expr(&printed).unwrap_or_else(|err| panic!("{printed:?} does not parse: {err}"));
    assert_eq!(back, e, "{printed:?}");
});
