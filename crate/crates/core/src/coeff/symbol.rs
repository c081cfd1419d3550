use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// An interned symbol name.
///
/// Symbols compare by interning order, which fixes the global variable order
/// used by the canonical form of rational functions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u32);

#[derive(Default)]
struct Interner {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Symbol(id);
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.ids.get(name) {
            return Symbol(id);
        }
        let id = table.names.len() as u32;
        let name: Arc<str> = Arc::from(name);
        table.names.push(name.clone());
        table.ids.insert(name, id);
        Symbol(id)
    }

    pub fn name(&self) -> Arc<str> {
        interner().read().unwrap().names[self.0 as usize].clone()
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbol({})", self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolKind {
    Independent,
    Spacing,
    Constant,
}

/// The symbols declared by one session, with their kinds.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    kinds: HashMap<Symbol, SymbolKind>,
    order: Vec<Symbol>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares `name` with `kind`. Redeclaring with the same kind is a no-op.
    pub fn declare(&mut self, name: &str, kind: SymbolKind) -> Result<Symbol> {
        let sym = Symbol::new(name);
        match self.kinds.get(&sym) {
            Some(&k) if k == kind => Ok(sym),
            Some(&k) => Err(Error::SymbolKind {
                name: name.to_string(),
                declared: k,
                requested: kind,
            }),
            None => {
                self.kinds.insert(sym, kind);
                self.order.push(sym);
                Ok(sym)
            }
        }
    }

    pub fn kind(&self, sym: Symbol) -> Option<SymbolKind> {
        self.kinds.get(&sym).copied()
    }

    pub fn lookup(&self, name: &str) -> Option<(Symbol, SymbolKind)> {
        let sym = Symbol::new(name);
        self.kinds.get(&sym).map(|&k| (sym, k))
    }

    pub fn symbols(&self) -> impl Iterator<Item = (Symbol, SymbolKind)> + '_ {
        self.order.iter().map(move |s| (*s, self.kinds[s]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = Symbol::new("alpha_sym");
        let b = Symbol::new("alpha_sym");
        assert_eq!(a, b);
        assert_eq!(&*a.name(), "alpha_sym");
    }

    #[test]
    fn kind_is_immutable() {
        let mut table = SymbolTable::new();
        table.declare("xq", SymbolKind::Independent).unwrap();
        assert!(table.declare("xq", SymbolKind::Independent).is_ok());
        assert!(matches!(
            table.declare("xq", SymbolKind::Constant),
            Err(Error::SymbolKind { .. })
        ));
    }
}
