//! Named pass/fail checks with failure witnesses.

use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// First failing frame index tuple (1-based) with both sides of the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Observations that are reported but never decide success.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, witness: None, informational: false }
    }

    pub fn fail(name: impl Into<String>, witness: Option<Witness>) -> Self {
        Check { name: name.into(), status: Status::Fail, witness, informational: false }
    }

    pub fn not_applicable(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::NotApplicable, witness: None, informational: false }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, None)
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Compares `lhs(t) == rhs(t)` for every index tuple and records the first mismatch.
    pub fn identity<I, F>(name: impl Into<String>, tuples: I, mut sides: F) -> Self
    where
        I: IntoIterator<Item = Vec<usize>>,
        F: FnMut(&[usize]) -> (Rational, Rational),
    {
        for t in tuples {
            let (lhs, rhs) = sides(&t);
            if lhs != rhs {
                let witness = Witness {
                    indices: t.iter().map(|i| i + 1).collect(),
                    lhs: format_rational(&lhs),
                    rhs: format_rational(&rhs),
                };
                return Check::fail(name, Some(witness));
            }
        }
        Check::pass(name)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    /// True when no gating check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.informational || c.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// All `arity`-tuples over `0..dim`, last index fastest.
pub fn tuples(dim: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.checked_pow(arity as u32).unwrap_or(0);
    (0..total).map(move |mut flat| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = flat % dim;
            flat /= dim;
        }
        t
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn tuples_enumerate_in_order() {
        let all: Vec<_> = tuples(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 3).count(), 27);
    }

    #[test]
    fn identity_records_one_based_witness() {
        let c = Check::identity("x", tuples(3, 1), |t| (int(t[0] as i64), int(0)));
        assert_eq!(c.status, Status::Fail);
        let w = c.witness.unwrap();
        assert_eq!(w.indices, vec![2]);
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("1", "0"));
    }

    #[test]
    fn informational_failures_do_not_gate() {
        let mut r = ValidationReport::new();
        r.push(Check::fail("observed", None).informational());
        r.push(Check::not_applicable("skipped"));
        assert!(r.passed());
        r.push(Check::fail("real", None));
        assert!(!r.passed());
    }
}
