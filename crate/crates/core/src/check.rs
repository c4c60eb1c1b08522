use serde::Serialize;

/// Outcome of one family of exhaustive checks; keeps the first few failures.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Check {
    pub fn new(name: &'static str) -> Self {
        Check { name, cases: 0, failures: Vec::new() }
    }

    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Folds another check with the same name into this one.
    pub fn absorb(&mut self, other: Check) {
        self.cases += other.cases;
        for f in other.failures {
            if self.failures.len() < 20 {
                self.failures.push(f);
            }
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}
