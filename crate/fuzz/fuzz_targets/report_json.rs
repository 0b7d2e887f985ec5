#![no_main]

use alhazen_cli::report::{
    ClassifyReport, ConicReport, LevelSetReport, MetricReport, ReflectReport, SelftestReport,
    SharpnessReport,
};
use libfuzzer_sys::fuzz_target;
use serde::{de::DeserializeOwned, Serialize};

// Anything that decodes must survive a re-encode and decode unchanged.
fn check<T: DeserializeOwned + Serialize + PartialEq + std::fmt::Debug>(data: &[u8]) {
    if let Ok(report) = serde_json::from_slice::<T>(data) {
        let text = serde_json::to_string(&report).expect("encodes");
        let again: T = serde_json::from_str(&text).expect("decodes");
        assert_eq!(again, report);
    }
}

fuzz_target!(|data: &[u8]| {
    check::<ReflectReport>(data);
    check::<MetricReport>(data);
    check::<LevelSetReport>(data);
    check::<ClassifyReport>(data);
    check::<ConicReport>(data);
    check::<SelftestReport>(data);
    check::<SharpnessReport>(data);
});
