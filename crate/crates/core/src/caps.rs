//! Size guards shared by the counting, Morse and spectral code.

use std::str::FromStr;

use crate::error::{Error, Result};

/// Name of the environment variable that may override [`Caps::default`].
pub const CAPS_ENV: &str = "GRIDMORSE_CAPS";

/// Limits applied before running an exponential computation.
///
/// The textual form is a comma separated `key=value` list, e.g.
/// `brute=20,cells=100000`. Keys: `brute`, `frontier`, `nodes`, `cells`,
/// `matrix`. Unlisted keys keep their defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest vertex count accepted by exhaustive enumeration.
    pub brute_vertices: usize,
    /// Largest frontier accepted by the frontier dynamic program.
    pub frontier_width: usize,
    /// Node-count guard for matching-tree growth.
    pub max_nodes: usize,
    /// Largest independence complex the acyclicity checker will materialize.
    pub max_cells: usize,
    /// Largest transfer-matrix dimension.
    pub matrix_size: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            brute_vertices: 26,
            frontier_width: 24,
            max_nodes: 1_000_000,
            max_cells: 500_000,
            matrix_size: 4096,
        }
    }
}

impl Caps {
    /// Defaults, overridden by `GRIDMORSE_CAPS` when it is set.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAPS_ENV) {
            Ok(s) => s.parse(),
            Err(std::env::VarError::NotPresent) => Ok(Caps::default()),
            Err(e) => Err(Error::InvalidCaps(e.to_string())),
        }
    }
}

impl FromStr for Caps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidCaps(format!("expected key=value, got {item:?}")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidCaps(format!("bad number in {item:?}")))?;
            match key.trim() {
                "brute" => caps.brute_vertices = value,
                "frontier" => caps.frontier_width = value,
                "nodes" => caps.max_nodes = value,
                "cells" => caps.max_cells = value,
                "matrix" => caps.matrix_size = value,
                other => return Err(Error::InvalidCaps(format!("unknown key {other:?}"))),
            }
        }
        Ok(caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_overrides() {
        let c: Caps = "brute=10, cells=7".parse().unwrap();
        assert_eq!(c.brute_vertices, 10);
        assert_eq!(c.max_cells, 7);
        assert_eq!(c.frontier_width, 24);
        assert_eq!("".parse::<Caps>().unwrap(), Caps::default());
        assert!("brute".parse::<Caps>().is_err());
        assert!("depth=3".parse::<Caps>().is_err());
    }
}
