use std::fmt;

/// One failed instance of a checked family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Instance index (`n`, `j`, ... depending on the family).
    pub index: u64,
    pub observed: String,
    pub expected: String,
}

/// Outcome of sweeping one identity or congruence family over a range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub family: String,
    pub params: Vec<(&'static str, u64)>,
    /// Number of instances evaluated.
    pub checked: usize,
    /// Arguments the family evaluated, sorted and deduplicated.
    pub covered: Vec<u64>,
    pub violations: Vec<Violation>,
}

impl CongruenceReport {
    pub fn new(family: impl Into<String>, params: Vec<(&'static str, u64)>) -> Self {
        CongruenceReport {
            family: family.into(),
            params,
            checked: 0,
            covered: Vec::new(),
            violations: Vec::new(),
        }
    }

    /// Records one instance at argument `arg`; adds a violation when `ok` is false.
    pub(crate) fn record(
        &mut self,
        index: u64,
        arg: u64,
        ok: bool,
        observed: impl FnOnce() -> String,
        expected: impl FnOnce() -> String,
    ) {
        self.checked += 1;
        self.covered.push(arg);
        if !ok {
            self.violations.push(Violation {
                index,
                observed: observed(),
                expected: expected(),
            });
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.covered.sort_unstable();
        self.covered.dedup();
        self.violations.sort_by_key(|v| v.index);
        self
    }

    /// Folds another report's instances and violations into this one.
    pub fn absorb(&mut self, other: CongruenceReport) {
        self.checked += other.checked;
        self.covered.extend(other.covered);
        self.violations.extend(other.violations);
        self.covered.sort_unstable();
        self.covered.dedup();
        self.violations.sort_by_key(|v| v.index);
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `PASS family checked=k`, or `FAIL ...` followed by one line per violation.
impl fmt::Display for CongruenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} checked={}", self.family, self.checked)?;
        if !self.passed() {
            write!(f, " violations={}", self.violations.len())?;
            for (name, value) in &self.params {
                write!(f, " {name}={value}")?;
            }
            for v in &self.violations {
                write!(
                    f,
                    "\n  at {}: observed {}, expected {}",
                    v.index, v.observed, v.expected
                )?;
            }
        }
        Ok(())
    }
}
