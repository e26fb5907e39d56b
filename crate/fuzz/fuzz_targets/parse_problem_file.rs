#![no_main]

use hpm_audit::parse_problem_file;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_problem_file(text) {
        // what we print we must be able to read back
        let again = parse_problem_file(&p.to_file_string()).expect("printed problem parses");
        assert_eq!(again, p);
    }
});
