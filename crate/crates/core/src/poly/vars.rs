use std::fmt;
use std::sync::Arc;

use super::{PolyError, Result};

/// An ordered variable context. Earlier variables are larger in the
/// lexicographic monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

/// Rank used by [`Vars::default_order`]; names not listed keep their
/// declaration order after these.
const PREFERRED: [&str; 5] = ["u", "v", "eta", "η", "t"];

impl Vars {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Vars(names.into()))
    }

    /// The empty context: polynomials in it are rational constants.
    pub fn empty() -> Self {
        Vars(Arc::from(Vec::new()))
    }

    /// Builds a context in the canonical order `u > v > eta > t > others`,
    /// where the remaining names keep their first-seen order. Duplicates are
    /// dropped.
    pub fn default_order<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut seen: Vec<String> = Vec::new();
        for n in names {
            let n = n.into();
            if !seen.contains(&n) {
                seen.push(n);
            }
        }
        let rank = |n: &String| PREFERRED.iter().position(|p| p == n).unwrap_or(PREFERRED.len());
        // stable sort keeps declaration order among the unranked names
        seen.sort_by_key(rank);
        Vars(seen.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| PolyError::MissingVariable(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// This context followed by the names of `other` not already present.
    pub fn union(&self, other: &Vars) -> Vars {
        let mut names: Vec<String> = self.0.to_vec();
        for n in other.names() {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        Vars(names.into())
    }

    /// A copy with `name` inserted at `position` (clamped to the end).
    pub fn with_var_at(&self, name: &str, position: usize) -> Result<Vars> {
        if self.contains(name) {
            return Err(PolyError::DuplicateVariable(name.to_string()));
        }
        let mut names = self.0.to_vec();
        names.insert(position.min(names.len()), name.to_string());
        Ok(Vars(names.into()))
    }

    pub fn with_var(&self, name: &str) -> Result<Vars> {
        self.with_var_at(name, self.len())
    }

    /// Sub-context of the given names, in this context's order.
    pub fn restrict(&self, keep: &[&str]) -> Vars {
        Vars(
            self.0
                .iter()
                .filter(|n| keep.contains(&n.as_str()))
                .cloned()
                .collect::<Vec<_>>()
                .into(),
        )
    }

    pub(crate) fn ensure_same(&self, other: &Vars) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(", "))
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vars[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_order_ranks_fiber_before_base() {
        let v = Vars::default_order(["a", "t", "eta", "b", "u", "v"]);
        assert_eq!(v.names(), ["u", "v", "eta", "t", "a", "b"]);
    }

    #[test]
    fn duplicate_rejected() {
        assert_eq!(
            Vars::new(["u", "u"]).unwrap_err(),
            PolyError::DuplicateVariable("u".into())
        );
    }

    #[test]
    fn union_keeps_left_order() {
        let a = Vars::new(["u", "t"]).unwrap();
        let b = Vars::new(["v", "t"]).unwrap();
        assert_eq!(a.union(&b).names(), ["u", "t", "v"]);
    }
}
