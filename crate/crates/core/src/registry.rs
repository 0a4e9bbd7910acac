//! Name-keyed registries of interchangeable algorithm implementations.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An algorithm that can be looked up by name.
pub trait Strategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
}

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    default: &'static str,
    entries: BTreeMap<&'static str, Arc<T>>,
}

impl<T: ?Sized + Strategy> Registry<T> {
    pub fn new(kind: &'static str, default: &'static str) -> Self {
        Registry {
            kind,
            default,
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, entry: Arc<T>) {
        self.entries.insert(entry.name(), entry);
    }

    pub fn with(mut self, entry: Arc<T>) -> Self {
        self.register(entry);
        self
    }

    pub fn get(&self, name: &str) -> Result<Arc<T>> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn default_entry(&self) -> Arc<T> {
        self.entries
            .get(self.default)
            .cloned()
            .expect("default strategy is registered")
    }

    pub fn default_name(&self) -> &'static str {
        self.default
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<T>> {
        self.entries.values()
    }
}
