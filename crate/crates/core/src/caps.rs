//! Desk-scale limits on brute-force routines.
//!
//! Every routine that may blow up (element enumeration, backtracking, full
//! materialisation of an action space) checks one of these caps and fails
//! with [`Error::CapExceeded`] instead of running away.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group whose elements are filtered to compute a centralizer.
    pub centralizer_elements: u64,
    /// Largest group for element-table algorithms (derived subgroup, index-2
    /// subgroups, subgroup enumeration).
    pub small_group: u64,
    /// Largest action space that may be fully materialised.
    pub space_materialize: u64,
    /// Largest point count for the design automorphism backtrack.
    pub automorphism_points: u64,
    /// Largest action space accepted by the suborbit oracle.
    pub oracle_space: u64,
    /// Largest block orbit built by orbit-design constructions.
    pub orbit_design: u64,
    /// Largest generating-set size tried by subgroup enumeration.
    pub subgroup_generators: u64,
    /// Largest number of 3-subsets counted by coverage verification.
    pub coverage_triples: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            centralizer_elements: 10_000_000,
            small_group: 100_000,
            space_materialize: 10_000_000,
            automorphism_points: 16,
            oracle_space: 1_000_000,
            orbit_design: 1_000_000,
            subgroup_generators: 3,
            coverage_triples: 100_000_000,
        }
    }
}

impl Caps {
    /// Applies `name=value` overrides separated by commas or whitespace.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
        {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidCaps(format!("`{item}` is not name=value")))?;
            let value: u64 = value
                .trim()
                .replace('_', "")
                .parse()
                .map_err(|_| Error::InvalidCaps(format!("`{value}` is not an integer")))?;
            let slot = match name.trim() {
                "centralizer_elements" => &mut self.centralizer_elements,
                "small_group" => &mut self.small_group,
                "space_materialize" => &mut self.space_materialize,
                "automorphism_points" => &mut self.automorphism_points,
                "oracle_space" => &mut self.oracle_space,
                "orbit_design" => &mut self.orbit_design,
                "subgroup_generators" => &mut self.subgroup_generators,
                "coverage_triples" => &mut self.coverage_triples,
                other => return Err(Error::InvalidCaps(format!("unknown cap `{other}`"))),
            };
            *slot = value;
        }
        Ok(self)
    }

    pub(crate) fn check(&self, what: &str, cap_name: &'static str, value: u64, cap: u64) -> Result<()> {
        if value > cap {
            return Err(Error::CapExceeded {
                what: what.to_string(),
                cap_name,
                value: value.to_string(),
                cap,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let caps = Caps::default()
            .with_overrides("small_group=500, automorphism_points=12")
            .unwrap();
        assert_eq!(caps.small_group, 500);
        assert_eq!(caps.automorphism_points, 12);
        assert_eq!(caps.oracle_space, Caps::default().oracle_space);
    }

    #[test]
    fn overrides_reject_garbage() {
        assert!(Caps::default().with_overrides("nope=3").is_err());
        assert!(Caps::default().with_overrides("small_group").is_err());
        assert!(Caps::default().with_overrides("small_group=x").is_err());
    }
}
