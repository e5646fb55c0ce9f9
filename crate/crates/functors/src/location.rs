//! Points of the germ where readouts are taken: the singular origin or a
//! generic point of one of the branches.

use std::fmt;

use perv_core::PervError;

/// A stratum of the germ. Branch indices are 0-based in code; all parsing
/// and printing uses 1-based indices, matching the file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Origin,
    Branch(usize),
}

impl Location {
    /// Parse `"origin"` or `"branch:i"` (1-based) against a branch count.
    pub fn parse(s: &str, branches: usize) -> Result<Self, PervError> {
        if s == "origin" {
            return Ok(Location::Origin);
        }
        if let Some(i) = s.strip_prefix("branch:") {
            let i: usize = i
                .parse()
                .map_err(|_| PervError::Input(format!("bad branch index in location {s:?}")))?;
            if i == 0 || i > branches {
                return Err(PervError::Input(format!(
                    "branch index {i} out of range 1..={branches}"
                )));
            }
            return Ok(Location::Branch(i - 1));
        }
        Err(PervError::Input(format!(
            "bad location {s:?}: expected \"origin\" or \"branch:i\""
        )))
    }

    /// Every location of an object with the given branch count, origin first.
    pub fn all(branches: usize) -> Vec<Location> {
        let mut locs = vec![Location::Origin];
        locs.extend((0..branches).map(Location::Branch));
        locs
    }

    pub fn check_bounds(&self, branches: usize) -> Result<(), PervError> {
        match self {
            Location::Origin => Ok(()),
            Location::Branch(i) if *i < branches => Ok(()),
            Location::Branch(i) => Err(PervError::Input(format!(
                "branch index {} out of range 1..={branches}",
                i + 1
            ))),
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Origin => write!(f, "origin"),
            Location::Branch(i) => write!(f, "branch {}", i + 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing_is_one_based_and_bounded() {
        assert_eq!(Location::parse("origin", 2).unwrap(), Location::Origin);
        assert_eq!(Location::parse("branch:1", 2).unwrap(), Location::Branch(0));
        assert_eq!(Location::parse("branch:2", 2).unwrap(), Location::Branch(1));
        assert!(Location::parse("branch:0", 2).is_err());
        assert!(Location::parse("branch:3", 2).is_err());
        assert!(Location::parse("everywhere", 2).is_err());
    }
}
