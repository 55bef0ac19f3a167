//! Assertion plumbing for the `verify` subcommands: each check records an
//! expected/actual pair, output is sorted by key, and the exit code
//! distinguishes failures from checks that were unverifiable at scale.

use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unverified,
}

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub key: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub target: String,
    pub assertions: Vec<Assertion>,
    pub passed: usize,
    pub failed: usize,
    pub unverified: usize,
}

/// A pending named computation producing one or more assertions; it runs
/// under the time budget and is replaced by a single unverified marker if
/// the budget is already exhausted.
pub struct Check {
    pub key: String,
    pub run: Box<dyn FnOnce() -> Vec<Assertion>>,
}

impl Check {
    pub fn new(key: &str, run: impl FnOnce(&str) -> Vec<Assertion> + 'static) -> Check {
        let owned = key.to_string();
        Check {
            key: key.to_string(),
            run: Box::new(move || run(&owned)),
        }
    }
}

pub fn equality_assertion<T: PartialEq + std::fmt::Display>(
    key: &str,
    expected: T,
    actual: T,
) -> Assertion {
    Assertion {
        key: key.to_string(),
        status: if expected == actual {
            Status::Pass
        } else {
            Status::Fail
        },
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

pub fn bool_assertion(key: &str, actual: bool) -> Assertion {
    equality_assertion(key, true, actual)
}

pub fn unverified(key: &str, reason: &str) -> Assertion {
    Assertion {
        key: key.to_string(),
        expected: "verified".to_string(),
        actual: format!("unverified: {reason}"),
        status: Status::Unverified,
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Run the checks in seed-shuffled order (results are order-independent),
/// marking everything after the deadline as unverified; the report is
/// sorted by key regardless of execution order.
pub fn run_checks(
    target: &str,
    checks: Vec<Check>,
    seed: u64,
    timeout_secs: Option<u64>,
) -> Report {
    let mut order: Vec<usize> = (0..checks.len()).collect();
    let mut state = seed;
    for i in (1..order.len()).rev() {
        let j = (splitmix64(&mut state) % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
    let started = Instant::now();
    let mut slots: Vec<Vec<Assertion>> = std::iter::repeat_with(Vec::new)
        .take(checks.len())
        .collect();
    let mut checks: Vec<Option<Check>> = checks.into_iter().map(Some).collect();
    for idx in order {
        let check = checks[idx].take().unwrap();
        let out_of_time = timeout_secs.is_some_and(|t| started.elapsed().as_secs() >= t);
        slots[idx] = if out_of_time {
            vec![unverified(&check.key, "time budget exhausted")]
        } else {
            (check.run)()
        };
    }
    let mut assertions: Vec<Assertion> = slots.into_iter().flatten().collect();
    assertions.sort_by(|a, b| a.key.cmp(&b.key));
    let passed = assertions
        .iter()
        .filter(|a| a.status == Status::Pass)
        .count();
    let failed = assertions
        .iter()
        .filter(|a| a.status == Status::Fail)
        .count();
    let unverified = assertions
        .iter()
        .filter(|a| a.status == Status::Unverified)
        .count();
    Report {
        schema_version: 1,
        target: target.to_string(),
        assertions,
        passed,
        failed,
        unverified,
    }
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            1
        } else if self.unverified > 0 {
            3
        } else {
            0
        }
    }

    #[cfg(test)]
    fn from_assertions(assertions: Vec<Assertion>) -> Report {
        let passed = assertions
            .iter()
            .filter(|a| a.status == Status::Pass)
            .count();
        let failed = assertions
            .iter()
            .filter(|a| a.status == Status::Fail)
            .count();
        let unverified = assertions
            .iter()
            .filter(|a| a.status == Status::Unverified)
            .count();
        Report {
            schema_version: 1,
            target: "test".into(),
            assertions,
            passed,
            failed,
            unverified,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let width = self
            .assertions
            .iter()
            .map(|a| a.key.len())
            .max()
            .unwrap_or(0);
        for a in &self.assertions {
            let tag = match a.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Unverified => "UNVERIFIED",
            };
            out.push_str(&format!(
                "{:width$}  expected {} actual {}  {}\n",
                a.key,
                a.expected,
                a.actual,
                tag,
                width = width
            ));
        }
        out.push_str(&format!(
            "verify {}: {} passed, {} failed, {} unverified\n",
            self.target, self.passed, self.failed, self.unverified
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_distinguish_failure_from_unverified() {
        let pass = equality_assertion("a", 1, 1);
        let fail = equality_assertion("b", 1, 2);
        let open = unverified("c", "too big");
        assert_eq!(Report::from_assertions(vec![pass.clone()]).exit_code(), 0);
        assert_eq!(
            Report::from_assertions(vec![pass.clone(), fail.clone()]).exit_code(),
            1
        );
        assert_eq!(
            Report::from_assertions(vec![pass.clone(), open.clone()]).exit_code(),
            3
        );
        // failure dominates unverified
        assert_eq!(Report::from_assertions(vec![fail, open]).exit_code(), 1);
    }

    #[test]
    fn checks_run_in_any_order_with_sorted_output() {
        for seed in [0u64, 1, 99] {
            let checks = vec![
                Check::new("z-last", |k| vec![bool_assertion(k, true)]),
                Check::new("a-first", |k| vec![bool_assertion(k, true)]),
            ];
            let report = run_checks("t", checks, seed, None);
            let keys: Vec<&str> = report.assertions.iter().map(|a| a.key.as_str()).collect();
            assert_eq!(keys, vec!["a-first", "z-last"]);
        }
    }

    #[test]
    fn zero_timeout_marks_everything_unverified() {
        let checks = vec![Check::new("x", |k| vec![bool_assertion(k, true)])];
        let report = run_checks("t", checks, 0, Some(0));
        assert_eq!(report.unverified, 1);
        assert_eq!(report.exit_code(), 3);
    }
}
