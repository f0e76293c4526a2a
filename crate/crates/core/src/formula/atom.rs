use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A propositional atom.
///
/// Plain atoms carry a base name. The translation layer adds two more
/// shapes: an atom indexed by a world (`p@w`) and a frame selector
/// (`r@F:w`), which names the pointed frame `F` rooted at `w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Atom {
    Base(Arc<str>),
    Indexed { base: Arc<str>, world: Arc<str> },
    Selector { frame: Arc<str>, world: Arc<str> },
}

/// A finite set of atoms.
pub type Signature = BTreeSet<Atom>;

pub(crate) fn valid_base(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Atom {
    /// A plain atom. Panics if `name` is not of the form `[a-z][a-zA-Z0-9_]*`.
    pub fn base(name: &str) -> Atom {
        Atom::try_base(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_base(name: &str) -> Result<Atom> {
        if valid_base(name) && name != "true" && name != "false" {
            Ok(Atom::Base(name.into()))
        } else {
            Err(Error::InvalidAtom(name.to_string()))
        }
    }

    /// The atom `base@world`.
    pub fn indexed(base: &str, world: &str) -> Result<Atom> {
        if !valid_base(base) {
            return Err(Error::InvalidAtom(base.to_string()));
        }
        if !valid_id(world) {
            return Err(Error::InvalidId(world.to_string()));
        }
        Ok(Atom::Indexed {
            base: base.into(),
            world: world.into(),
        })
    }

    /// The selector `r@frame:world`.
    pub fn selector(frame: &str, world: &str) -> Result<Atom> {
        for id in [frame, world] {
            if !valid_id(id) {
                return Err(Error::InvalidId(id.to_string()));
            }
        }
        Ok(Atom::Selector {
            frame: frame.into(),
            world: world.into(),
        })
    }

    /// Base name for plain and indexed atoms.
    pub fn base_name(&self) -> Option<&str> {
        match self {
            Atom::Base(b) | Atom::Indexed { base: b, .. } => Some(b),
            Atom::Selector { .. } => None,
        }
    }

    pub fn world(&self) -> Option<&str> {
        match self {
            Atom::Base(_) => None,
            Atom::Indexed { world, .. } | Atom::Selector { world, .. } => Some(world),
        }
    }

    pub fn is_base(&self) -> bool {
        matches!(self, Atom::Base(_))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Base(b) => write!(f, "{b}"),
            Atom::Indexed { base, world } => write!(f, "{base}@{world}"),
            Atom::Selector { frame, world } => write!(f, "r@{frame}:{world}"),
        }
    }
}

/// Parses a comma separated list of atoms such as `p,q,r`.
pub fn parse_signature(text: &str) -> Result<Signature> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Atom::try_base)
        .collect()
}

/// Builds a signature of plain atoms from names.
pub fn signature<'a>(names: impl IntoIterator<Item = &'a str>) -> Signature {
    names.into_iter().map(Atom::base).collect()
}
