//! Nonabelian composition factors and nonsolvable quotients.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::permcore::{
    block_systems, is_abelian, is_solvable, minimal_normal_subgroups,
    minimal_normal_subgroups_sampled, perfect_core, pointwise_stabilizer, socle, Action,
    PermGroup,
};

/// A nonabelian simple group, named when its order identifies it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SimpleFactor {
    pub order: u128,
    pub name: String,
}

fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

fn prime_powers(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for q in 2..=limit {
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        let mut r = q;
        while r % p == 0 {
            r /= p;
        }
        if r == 1 {
            out.push(q);
        }
    }
    out
}

/// Names of the simple groups of the given order that this table knows.
pub fn simple_group_names(order: u128) -> Vec<String> {
    let mut names = BTreeSet::new();
    for n in 5..=34 {
        if factorial(n).map(|f| f / 2) == Some(order) {
            names.insert(format!("A{n}"));
        }
    }
    for q in prime_powers(1024) {
        if q < 7 || q == 9 {
            continue; // A5 and A6
        }
        let q = q as u128;
        let d = if q % 2 == 1 { 2 } else { 1 };
        if q * (q * q - 1) / d == order {
            names.insert(format!("PSL(2,{q})"));
        }
    }
    const SPORADIC_AND_SMALL: [(u128, &str); 16] = [
        (5616, "PSL(3,3)"),
        (6048, "PSU(3,3)"),
        (7920, "M11"),
        (20160, "PSL(3,4)"),
        (25920, "PSU(4,2)"),
        (29120, "Sz(8)"),
        (62400, "PSU(3,4)"),
        (95040, "M12"),
        (126000, "PSU(3,5)"),
        (175560, "J1"),
        (372000, "PSL(3,5)"),
        (443520, "M22"),
        (604800, "J2"),
        (1451520, "PSp(6,2)"),
        (9999360, "PSL(5,2)"),
        (10200960, "M23"),
    ];
    for (o, name) in SPORADIC_AND_SMALL {
        if o == order {
            names.insert(name.to_string());
        }
    }
    names.into_iter().collect()
}

fn identify(order: u128) -> SimpleFactor {
    let names = simple_group_names(order);
    let name = if names.is_empty() {
        format!("simple of order {order}")
    } else {
        names.join("|")
    };
    SimpleFactor { order, name }
}

fn integer_root(x: u128, t: u32) -> Option<u128> {
    let guess = (x as f64).powf(1.0 / t as f64).round() as u128;
    (guess.saturating_sub(1)..=guess + 1).find(|r| r.checked_pow(t) == Some(x))
}

/// Splits a nonabelian characteristically simple group `L^t` into its
/// simple factor and `t`.
fn split_power(n: &PermGroup, caps: &Caps) -> Result<(SimpleFactor, usize)> {
    let order = n.try_order()?;
    if order <= caps.element_enumeration {
        let t = minimal_normal_subgroups(n, caps)?.len();
        let l = integer_root(order, t as u32)
            .ok_or_else(|| Error::inconsistent("minimal normal subgroup is not a power"))?;
        return Ok((identify(l), t));
    }
    // Largest t whose root is a known simple order.
    for t in (1..=order.ilog2()).rev() {
        if let Some(l) = integer_root(order, t) {
            if l > 1 && !simple_group_names(l).is_empty() {
                return Ok((identify(l), t as usize));
            }
        }
    }
    Ok((identify(order), 1))
}

/// Multiset of nonabelian composition factors, sorted.
///
/// Intransitive groups split into an orbit image and its kernel,
/// imprimitive ones into block image and block kernel, and primitive
/// groups into a minimal normal subgroup and the quotient by it.
pub fn nonabelian_composition_factors(g: &PermGroup, caps: &Caps) -> Result<Vec<SimpleFactor>> {
    let mut out = Vec::new();
    collect(g, caps, &mut out)?;
    out.sort();
    Ok(out)
}

fn collect(g: &PermGroup, caps: &Caps, out: &mut Vec<SimpleFactor>) -> Result<()> {
    if g.is_trivial() || is_solvable(g) {
        return Ok(());
    }
    let orbits: Vec<Vec<usize>> = g.orbits().into_iter().filter(|o| o.len() > 1).collect();
    if orbits.len() > 1 || orbits[0].len() < g.degree() {
        let o = &orbits[0];
        collect(&g.restrict_to(o)?, caps, out)?;
        if orbits.len() > 1 {
            collect(&pointwise_stabilizer(g, o), caps, out)?;
        }
        return Ok(());
    }
    if let Some(system) = block_systems(g)?.pop() {
        let act = Action::on_blocks(g, &system)?;
        collect(&act.image_group(), caps, out)?;
        collect(&act.kernel(), caps, out)?;
        return Ok(());
    }
    let n = g.degree();
    let order = g.try_order()?;
    if n >= 5 && factorial(n).is_some_and(|f| order == f || order == f / 2) {
        out.push(SimpleFactor {
            order: factorial(n).unwrap() / 2,
            name: format!("A{n}"),
        });
        return Ok(());
    }
    let minimal = if order <= caps.small_group {
        socle(g, caps)?.minimal_normal
    } else {
        minimal_normal_subgroups_sampled(g, 48)
    };
    let n_sub = minimal
        .into_iter()
        .next()
        .ok_or_else(|| Error::inconsistent("nontrivial group without a minimal normal subgroup"))?;
    if !is_abelian(&n_sub) {
        let (l, t) = split_power(&n_sub, caps)?;
        out.extend(std::iter::repeat_n(l, t));
    }
    if n_sub.try_order()? < order {
        let quotient = Action::on_cosets(g, &n_sub, caps)?.image_group();
        collect(&quotient, caps, out)?;
    }
    Ok(())
}

/// Whether every quotient by a nontrivial normal subgroup is solvable.
///
/// `G/N` is solvable iff `N` contains the perfect core, and every
/// nontrivial normal subgroup contains a minimal one, so it suffices to
/// test minimal normal subgroups. Above the small-group cap they are
/// sampled: a failing sample decides `false`, but `true` cannot be
/// certified and a resource error is returned instead.
pub fn no_nonsolvable_proper_quotient(g: &PermGroup, caps: &Caps) -> Result<bool> {
    if g.is_trivial() {
        return Ok(true);
    }
    let core = perfect_core(g);
    let order = g.try_order()?;
    let (minimal, exhaustive) = if order <= caps.small_group {
        let s = socle(g, caps)?;
        (s.minimal_normal, s.exhaustive)
    } else {
        (minimal_normal_subgroups_sampled(g, 48), false)
    };
    if minimal.iter().any(|n| !core.is_subgroup_of(n)) {
        return Ok(false);
    }
    if exhaustive {
        Ok(true)
    } else {
        Err(Error::resource(
            format!("certifying solvable quotients of a group of order {order}"),
            caps.element_enumeration,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::{wreath_product, WreathKind};

    fn caps() -> Caps {
        Caps::default()
    }

    fn names(fs: &[SimpleFactor]) -> Vec<&str> {
        fs.iter().map(|f| f.name.as_str()).collect()
    }

    #[test]
    fn identification_table() {
        assert_eq!(simple_group_names(60), vec!["A5"]);
        assert_eq!(simple_group_names(168), vec!["PSL(2,7)"]);
        assert_eq!(simple_group_names(20160), vec!["A8", "PSL(3,4)"]);
        assert!(simple_group_names(120).is_empty());
    }

    #[test]
    fn composition_factor_examples() {
        assert!(nonabelian_composition_factors(&PermGroup::symmetric(4), &caps()).unwrap().is_empty());
        let a5 = PermGroup::alternating(5);
        assert_eq!(names(&nonabelian_composition_factors(&a5, &caps()).unwrap()), vec!["A5"]);
        let s5 = PermGroup::symmetric(5);
        let c2 = PermGroup::symmetric(2);
        let w = wreath_product(&s5, &c2, WreathKind::Imprimitive, &caps()).unwrap();
        assert_eq!(names(&nonabelian_composition_factors(&w, &caps()).unwrap()), vec!["A5", "A5"]);
        let s3 = PermGroup::symmetric(3);
        let w3 = wreath_product(&s5, &s3, WreathKind::Imprimitive, &caps()).unwrap();
        assert_eq!(nonabelian_composition_factors(&w3, &caps()).unwrap().len(), 3);
        let w55 = wreath_product(&s5, &s5, WreathKind::Imprimitive, &caps()).unwrap();
        assert_eq!(nonabelian_composition_factors(&w55, &caps()).unwrap().len(), 6);
    }

    #[test]
    fn primitive_non_natural_groups() {
        // PSL(2,7) on 7 points and S5 on 2-sets
        let psl = PermGroup::from_cycles(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)", "(1 2)(3 6)"]).unwrap();
        assert_eq!(psl.order(), 168);
        assert_eq!(names(&nonabelian_composition_factors(&psl, &caps()).unwrap()), vec!["PSL(2,7)"]);
        let pairs = Action::two_set(&PermGroup::symmetric(5)).image_group();
        assert_eq!(names(&nonabelian_composition_factors(&pairs, &caps()).unwrap()), vec!["A5"]);
        let prod = Action::product(
            &wreath_product(&PermGroup::symmetric(5), &PermGroup::symmetric(2), WreathKind::Imprimitive, &caps()).unwrap(),
            5,
            2,
            &caps(),
        )
        .unwrap()
        .image_group();
        assert_eq!(names(&nonabelian_composition_factors(&prod, &caps()).unwrap()), vec!["A5", "A5"]);
    }

    #[test]
    fn nonsolvable_quotients() {
        let caps = caps();
        assert!(no_nonsolvable_proper_quotient(&PermGroup::symmetric(5), &caps).unwrap());
        let a5 = PermGroup::alternating(5);
        let g1: Vec<_> = a5.generators().iter().map(|g| g.shifted(0, 10)).collect();
        let g2: Vec<_> = a5.generators().iter().map(|g| g.shifted(5, 10)).collect();
        let a5a5 = PermGroup::new(10, [g1, g2].concat()).unwrap();
        assert!(!no_nonsolvable_proper_quotient(&a5a5, &caps).unwrap());
        let s5 = PermGroup::symmetric(5);
        let w = wreath_product(&s5, &s5, WreathKind::Imprimitive, &caps).unwrap();
        assert!(!no_nonsolvable_proper_quotient(&w, &caps).unwrap());
    }
}
