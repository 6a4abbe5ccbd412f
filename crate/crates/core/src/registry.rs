//! Name-indexed problem registry.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::catalog;
use crate::error::{OpmError, Result};
use crate::problem::Problem;

/// Problems every build of the catalog must provide.
pub const MANDATORY: [&str; 33] = [
    "rosenbr", "arwhead", "beale", "booth", "box3", "brownden", "broyden3d", "cliff", "cosine",
    "cube", "dixmaana", "dixmaane", "dixmaani", "dixmaanl", "dqrtic", "edensch", "engval1",
    "extrosnb", "freuroth", "genhumps", "helix", "jensmp", "kowosb", "lminsurf", "morebv",
    "nondia", "nondquar", "powellsg", "tridia", "vardim", "woods", "zangwil2", "zangwil3",
];

/// Read-only after construction; lookups and evaluations may run
/// concurrently.
#[derive(Default, Clone)]
pub struct Registry {
    problems: BTreeMap<String, Arc<dyn Problem>>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, problem: Arc<dyn Problem>) -> Result<()> {
        let name = problem.name().to_string();
        if self.problems.contains_key(&name) {
            return Err(OpmError::DuplicateName(name));
        }
        self.problems.insert(name, problem);
        Ok(())
    }

    pub fn lookup(&self, name: &str) -> Result<&dyn Problem> {
        self.problems
            .get(name)
            .map(|p| p.as_ref())
            .ok_or_else(|| OpmError::UnknownProblem(name.to_string()))
    }

    pub fn get_arc(&self, name: &str) -> Result<Arc<dyn Problem>> {
        self.problems
            .get(name)
            .cloned()
            .ok_or_else(|| OpmError::UnknownProblem(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.problems.contains_key(name)
    }

    /// Problems in name order.
    pub fn iter(&self) -> impl Iterator<Item = &dyn Problem> {
        self.problems.values().map(|p| p.as_ref())
    }

    pub fn names(&self) -> Vec<&str> {
        self.problems.keys().map(String::as_str).collect()
    }

    pub fn len(&self) -> usize {
        self.problems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Builds the registry of every built-in problem.
pub fn register_all() -> Registry {
    let mut r = Registry::new();
    for p in catalog::builtin() {
        r.register(Arc::from(p)).expect("built-in names are unique");
    }
    r
}

/// Process-wide registry, built on first use.
pub fn global() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(register_all)
}

pub fn lookup(name: &str) -> Result<&'static dyn Problem> {
    global().lookup(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mandatory_problems_are_registered() {
        let r = register_all();
        for name in MANDATORY {
            assert!(r.contains(name), "{name} missing");
        }
        assert_eq!(r.lookup("rosenbr").unwrap().meta().default_n, 2);
    }

    #[test]
    fn unknown_and_duplicate_names_are_rejected() {
        let mut r = register_all();
        assert_eq!(
            r.lookup("nosuch").err(),
            Some(OpmError::UnknownProblem("nosuch".into()))
        );
        let again = r.get_arc("booth").unwrap();
        assert_eq!(
            r.register(again),
            Err(OpmError::DuplicateName("booth".into()))
        );
    }

    #[test]
    fn iteration_is_sorted() {
        let names = global().names();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}
