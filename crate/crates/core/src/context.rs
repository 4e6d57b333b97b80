//! Indeterminate naming and the parameter/variable role split.

use std::fmt;
use std::sync::Arc;

/// Ordered indeterminate names for one computation: parameters first, then
/// variables. `role_split` is the index of the first variable.
///
/// Every polynomial holds an `Arc<Context>`; mixed-context arithmetic is a
/// caller bug and panics.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Context {
    names: Vec<String>,
    role_split: usize,
}

pub type Ctx = Arc<Context>;

impl Context {
    pub fn new(params: &[&str], vars: &[&str]) -> Result<Ctx, ContextError> {
        let names: Vec<String> = params
            .iter()
            .chain(vars.iter())
            .map(|s| s.to_string())
            .collect();
        Self::from_names(names, params.len())
    }

    pub fn from_names(names: Vec<String>, role_split: usize) -> Result<Ctx, ContextError> {
        if role_split > names.len() {
            return Err(ContextError::BadSplit {
                split: role_split,
                len: names.len(),
            });
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(ContextError::BadName(n.clone()));
            }
            if !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(ContextError::BadName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(ContextError::DuplicateName(n.clone()));
            }
        }
        Ok(Arc::new(Context { names, role_split }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn role_split(&self) -> usize {
        self.role_split
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_parameter(&self, idx: usize) -> bool {
        idx < self.role_split
    }

    pub fn is_variable(&self, idx: usize) -> bool {
        idx >= self.role_split && idx < self.names.len()
    }

    pub fn parameter_indices(&self) -> impl Iterator<Item = usize> {
        0..self.role_split
    }

    pub fn variable_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.role_split..self.names.len()
    }

    /// Context with extra indeterminates appended after the variables
    /// (auxiliary variables for the cancellation-matrix construction).
    pub fn extended(&self, extra: &[String]) -> Result<Ctx, ContextError> {
        let mut names = self.names.clone();
        names.extend_from_slice(extra);
        Self::from_names(names, self.role_split)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "params [{}], vars [{}]",
            self.names[..self.role_split].join(", "),
            self.names[self.role_split..].join(", ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContextError {
    BadSplit { split: usize, len: usize },
    BadName(String),
    DuplicateName(String),
}

impl fmt::Display for ContextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextError::BadSplit { split, len } => {
                write!(f, "role split {split} exceeds indeterminate count {len}")
            }
            ContextError::BadName(n) => write!(f, "invalid indeterminate name {n:?}"),
            ContextError::DuplicateName(n) => write!(f, "duplicate indeterminate name {n:?}"),
        }
    }
}

impl std::error::Error for ContextError {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roles_and_lookup() {
        let ctx = Context::new(&["a", "b"], &["x1", "x2", "x3"]).unwrap();
        assert_eq!(ctx.len(), 5);
        assert_eq!(ctx.role_split(), 2);
        assert!(ctx.is_parameter(0) && ctx.is_parameter(1));
        assert!(ctx.is_variable(2) && ctx.is_variable(4));
        assert_eq!(ctx.index_of("x2"), Some(3));
        assert_eq!(ctx.index_of("q"), None);
    }

    #[test]
    fn rejects_bad_names() {
        assert!(Context::new(&["a", "a"], &[]).is_err());
        assert!(Context::new(&["2x"], &[]).is_err());
        assert!(Context::new(&[""], &[]).is_err());
        assert!(Context::new(&["a-b"], &[]).is_err());
        assert!(Context::new(&["a_1"], &["Z9"]).is_ok());
    }

    #[test]
    fn extension_appends_names() {
        let ctx = Context::new(&["a"], &["x", "y"]).unwrap();
        let ext = ctx.extended(&["x_aux".to_string(), "y_aux".to_string()]).unwrap();
        assert_eq!(ext.len(), 5);
        assert_eq!(ext.role_split(), 1);
        assert_eq!(ext.index_of("y_aux"), Some(4));
        assert!(ctx.extended(&["x".to_string()]).is_err());
    }
}
