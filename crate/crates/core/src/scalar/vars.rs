//! Global, append-only variable registry.
//!
//! Variable ids are assigned in registration order and never reused, so the
//! id order doubles as the monomial order. The symbols used by the catalog
//! are registered up front in a fixed order; this keeps printed output stable
//! no matter which thread touches a variable first.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// Symbols registered at start-up, in this order.
pub const STANDARD_VARIABLES: &[&str] = &[
    "q", "s", "t", "a", "b", "c", "d", "x", "y", "z", "p", "r", "k", "eps", "delta", "u", "v",
    "u1", "u2", "u3",
];

#[derive(Default)]
struct Registry {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

impl Registry {
    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = u32::try_from(self.names.len()).expect("variable registry overflow");
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), id);
        id
    }
}

fn registry() -> &'static RwLock<Registry> {
    static REGISTRY: OnceLock<RwLock<Registry>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut reg = Registry::default();
        for name in STANDARD_VARIABLES {
            reg.intern(name);
        }
        RwLock::new(reg)
    })
}

/// A registered symbol. Ordering follows registration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Returns the variable with this name, registering it if needed.
    pub fn new(name: &str) -> Var {
        if let Some(v) = Var::lookup(name) {
            return v;
        }
        let mut reg = registry().write().expect("variable registry poisoned");
        Var(reg.intern(name))
    }

    pub fn lookup(name: &str) -> Option<Var> {
        let reg = registry().read().expect("variable registry poisoned");
        reg.ids.get(name).copied().map(Var)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn name(self) -> String {
        let reg = registry().read().expect("variable registry poisoned");
        reg.names[self.0 as usize].clone()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Var({})", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_order_is_fixed() {
        let q = Var::new("q");
        let s = Var::new("s");
        let u3 = Var::new("u3");
        assert!(q < s && s < u3);
        assert_eq!(q.id(), 0);
        assert_eq!(Var::new("q"), q);
        assert_eq!(q.name(), "q");
    }

    #[test]
    fn new_names_append() {
        let fresh = Var::new("registry_test_fresh");
        assert!(fresh.id() as usize >= STANDARD_VARIABLES.len());
        assert_eq!(Var::lookup("registry_test_fresh"), Some(fresh));
    }
}
