//! The acceptance suite as a library: every criterion returns a structured
//! pass/fail result so the CLI `selftest` command and the integration tests
//! run exactly the same checks.

use crate::config::RunConfig;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn run_all(cfg: &RunConfig) -> Vec<CriterionResult> {
    // filled in by criteria modules; see below
    all_criteria()
        .into_iter()
        .map(|(id, name, f)| match f(cfg) {
            Ok(detail) => CriterionResult {
                id,
                name,
                passed: true,
                detail,
            },
            Err(detail) => CriterionResult {
                id,
                name,
                passed: false,
                detail,
            },
        })
        .collect()
}

type Criterion = fn(&RunConfig) -> Result<String, String>;

fn all_criteria() -> Vec<(usize, &'static str, Criterion)> {
    vec![]
}
