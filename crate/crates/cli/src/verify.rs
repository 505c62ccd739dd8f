//! Certificate checking from file contents.

use cotame_core::cert::{verify_certificate_capped, Verdict};

use crate::nct;

/// Outcome of checking one certificate file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileVerdict {
    pub verdict: Verdict,
    pub report: String,
}

/// Parses and verifies; unreadable certificates are a failure.
pub fn verify_text(src: &str, cap: Option<u32>) -> FileVerdict {
    match nct::parse(src) {
        Ok(cert) => {
            let r = verify_certificate_capped(&cert, cap);
            FileVerdict { verdict: r.verdict, report: r.to_string() }
        }
        Err(e) => FileVerdict { verdict: Verdict::Fail, report: format!("{e}\nverdict: FAIL") },
    }
}

pub fn verify_file(path: &std::path::Path, cap: Option<u32>) -> FileVerdict {
    match std::fs::read_to_string(path) {
        Ok(s) => verify_text(&s, cap),
        Err(e) => FileVerdict { verdict: Verdict::Fail, report: format!("IoError: {}: {e}\nverdict: FAIL", path.display()) },
    }
}
