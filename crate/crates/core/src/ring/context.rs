use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered, immutable list of variable names.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Context {
    names: Vec<String>,
}

/// Names produced by [`Context::fresh_names`] that are not caller-chosen
/// start with this prefix.
pub const FRESH_PREFIX: &str = "_t";

impl Context {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Context>> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Syntax {
                    pos: 0,
                    msg: format!("`{n}` is not an identifier"),
                });
            }
            if names[..i].contains(n) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(Context { names }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Picks names for new variables: each hint is used verbatim when free,
    /// otherwise `_t<hint><counter>` with the smallest counter that avoids
    /// every existing and previously chosen name.
    pub fn fresh_names<S: AsRef<str>>(&self, hints: &[S]) -> Vec<String> {
        let mut taken: Vec<String> = self.names.clone();
        let mut out = Vec::with_capacity(hints.len());
        for h in hints {
            let h = h.as_ref();
            let name = if is_identifier(h) && !taken.iter().any(|t| t == h) {
                h.to_string()
            } else {
                let mut k = 1usize;
                loop {
                    let cand = format!("{FRESH_PREFIX}{h}{k}");
                    if !taken.contains(&cand) {
                        break cand;
                    }
                    k += 1;
                }
            };
            taken.push(name.clone());
            out.push(name);
        }
        out
    }

    /// New context with the given (already fresh) names appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<Context>> {
        let mut all = self.names.clone();
        all.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Context::new(&all)
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
