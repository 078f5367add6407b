//! Permutation-group engine.

mod action;
mod blocks;
mod chain;
mod group;
mod normal;
mod setstab;
pub(crate) mod wreath;

#[cfg(test)]
pub(crate) mod testing;

pub use action::{coset_action, Action, ActionKind};
pub use blocks::{all_block_systems, block_systems, is_primitive, minimal_block_system};
pub use group::{group_order, orbits, PermGroup};
pub use normal::{
    conjugacy_classes_brute, core, derived_series, derived_subgroup, intersection, is_abelian,
    is_solvable, minimal_normal_subgroups, minimal_normal_subgroups_sampled, normal_closure,
    normal_subgroups, perfect_core, pointwise_stabilizer, quotient_has_center, socle,
    ConjugacyClass, Socle,
};
pub use setstab::{point_stabilizer, set_orbit_and_stabilizer, set_stabilizer};
pub use wreath::{
    conjugacy_classes, wreath_product, ClassSource, ClassSummary, CycleClass, WreathClass,
    WreathDescriptor, WreathKind,
};
#[cfg(test)]
pub(crate) use wreath::{partitions, permutation_of_type};

use crate::error::{Error, Result};
use crate::perm::{parse_cycles_at, Permutation};

pub(crate) fn serialize_perm<S: serde::Serializer>(p: &Permutation, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_cycle_string())
}

/// Parses the group text format: a `degree N` header, then one generator
/// per line in 1-indexed cycle notation. Blank lines and `#` comments are
/// ignored.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let (degree, gens) = parse_generator_lines(text)?;
    PermGroup::new(degree, gens)
}

pub(crate) fn parse_generator_lines(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let rest = line.strip_prefix("degree").ok_or_else(|| {
                    Error::parse(line_no, 1, "expected header `degree N`")
                })?;
                let n: usize = rest.trim().parse().map_err(|_| {
                    Error::parse(line_no, 8, format!("bad degree {:?}", rest.trim()))
                })?;
                if n == 0 {
                    return Err(Error::parse(line_no, 8, "degree must be positive"));
                }
                degree = Some(n);
            }
            Some(n) => {
                let offset = raw.find(line).unwrap_or(0);
                let perm = parse_cycles_at(n, line, line_no).map_err(|e| match e {
                    Error::Parse {
                        line,
                        column,
                        message,
                    } => Error::parse(line, column + offset, message),
                    other => other,
                })?;
                gens.push(perm);
            }
        }
    }
    let degree = degree.ok_or_else(|| Error::parse(1, 1, "missing `degree N` header"))?;
    Ok((degree, gens))
}

/// Prints a group in the text format accepted by [`parse_group`].
pub fn format_group(group: &PermGroup) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        out.push_str(&g.to_cycle_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_file_round_trip() {
        let text = "# dihedral\ndegree 4\n\n(1 2 3 4)\n(1 3) # reflection\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g.order(), 8);
        let again = parse_group(&format_group(&g)).unwrap();
        assert_eq!(again.generators(), g.generators());
    }

    #[test]
    fn group_file_errors_carry_positions() {
        let err = parse_group("degree 4\n(1 2 5)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_group("(1 2)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
