#![no_main]

use alhazen::literal::{format_complex, parse_complex};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(z) = parse_complex(text) {
        assert!(z.re.is_finite() && z.im.is_finite());
        let again = parse_complex(&format_complex(z)).expect("formatted value parses");
        assert_eq!(again, z);
    }
});
