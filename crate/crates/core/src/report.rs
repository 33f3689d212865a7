//! Check records shared by the verification suites.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Capped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: CheckStatus,
    pub details: String,
}

impl Check {
    pub fn new(id: impl Into<String>, ok: bool, details: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            details: details.into(),
        }
    }

    pub fn capped(id: impl Into<String>, details: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            status: CheckStatus::Capped,
            details: details.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Overall status of a list: capped wins over fail only when nothing failed.
pub fn summarize(checks: &[Check]) -> CheckStatus {
    if checks.iter().any(|c| c.status == CheckStatus::Fail) {
        CheckStatus::Fail
    } else if checks.iter().any(|c| c.status == CheckStatus::Capped) {
        CheckStatus::Capped
    } else {
        CheckStatus::Pass
    }
}
