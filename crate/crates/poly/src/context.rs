use std::fmt;
use std::sync::Arc;

use crate::{PolyError, Result};

/// An ordered list of variable names. Earlier variables are larger in the
/// graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
}

pub type Context = Arc<VarContext>;

impl VarContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Context {
        Arc::new(VarContext {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    /// `x1, ..., xn`.
    pub fn indexed(prefix: &str, n: usize) -> Context {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// The same names followed by `extra`.
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> Context {
        let mut names = self.names.clone();
        names.extend(extra.into_iter().map(Into::into));
        Arc::new(VarContext { names })
    }
}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarContext{:?}", self.names)
    }
}
