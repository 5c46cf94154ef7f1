//! Finite bicategories and crossed modules of groupoids, with comma
//! constructions, nerves and homotopy pullbacks that are checked by
//! exhaustive enumeration.
//!
//! Every structure here is finite and explicit: cells are small integer ids
//! carrying canonical string labels, and every axiom is decided by walking
//! all of its instances. The heavy loops go through [`exec`], which fans out
//! over rayon when the `parallel` feature is on.

pub mod algebra;
pub mod bicat;
pub mod comma;
pub mod error;
pub mod exec;
pub mod instances;
pub mod monoidal;
pub mod nerve;
pub mod report;
pub mod xmod;

pub use error::{Error, Result};
pub use report::{Status, ValidationReport, Violation, ViolationKind};

/// Default ceiling on enumerated candidates per dimension.
pub const DEFAULT_MAX_CELLS: usize = 200_000;

/// Limits applied to exhaustive enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_cells: DEFAULT_MAX_CELLS }
    }
}

impl Limits {
    pub fn new(max_cells: usize) -> Self {
        Limits { max_cells }
    }

    pub(crate) fn check(&self, what: &str, count: usize) -> Result<()> {
        if count > self.max_cells {
            Err(Error::ResourceLimit { what: what.to_string(), limit: self.max_cells })
        } else {
            Ok(())
        }
    }
}

/// Formats a canonical tuple label such as `(a,f,b)`.
pub fn tuple_label(parts: &[&str]) -> String {
    let mut s = String::with_capacity(parts.iter().map(|p| p.len() + 1).sum::<usize>() + 2);
    s.push('(');
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(p);
    }
    s.push(')');
    s
}
