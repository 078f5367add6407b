//! Maximal intransitive subgroups as maximal set stabilizers.

use std::collections::HashMap;

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::permcore::{set_stabilizer, Action, PermGroup};

/// One conjugacy class of maximal intransitive subgroups, represented by
/// the stabilizer of `set`.
#[derive(Debug, Clone, Serialize)]
pub struct IntransitiveClass {
    #[serde(skip)]
    pub subgroup: PermGroup,
    /// The stabilized set, 0-indexed.
    pub set: Vec<usize>,
    pub order: u128,
    pub index: u128,
    pub orbit_lengths: Vec<usize>,
    /// Set when conjugacy to an earlier class could not be ruled out
    /// within the conjugacy cap.
    pub possibly_duplicate: bool,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn mask_image(mask: u64, images: &[usize]) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let p = m.trailing_zeros() as usize;
        out |= 1 << images[p];
        m &= m - 1;
    }
    out
}

fn mask_points(mask: u64) -> Vec<usize> {
    (0..64).filter(|&p| mask >> p & 1 == 1).collect()
}

/// Next mask with the same number of bits (Gosper).
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

struct Sweep {
    /// Subgroup orbit id of every visited subset.
    orbit_of: HashMap<u64, usize>,
    /// Set stabilizer per orbit id, shared by a set and its complement.
    stabilizers: Vec<(u64, PermGroup)>,
    stab_of_orbit: Vec<usize>,
}

impl Sweep {
    fn run(a: &PermGroup, caps: &Caps) -> Result<Sweep> {
        let n = a.degree();
        let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        let gens: Vec<Vec<usize>> = a.generators().iter().map(|g| g.images().to_vec()).collect();
        let mut sweep = Sweep {
            orbit_of: HashMap::new(),
            stabilizers: Vec::new(),
            stab_of_orbit: Vec::new(),
        };
        for k in 1..=n / 2 {
            let mut mask: u64 = (1 << k) - 1;
            while mask & !full == 0 {
                if !sweep.orbit_of.contains_key(&mask) {
                    let id = sweep.stab_of_orbit.len();
                    let mut orbit = vec![mask];
                    sweep.orbit_of.insert(mask, id);
                    let mut i = 0;
                    while i < orbit.len() {
                        for g in &gens {
                            let next = mask_image(orbit[i], g);
                            if let std::collections::hash_map::Entry::Vacant(e) = sweep.orbit_of.entry(next) {
                                e.insert(id);
                                orbit.push(next);
                            }
                        }
                        i += 1;
                    }
                    let complement = full & !mask;
                    let shared = if 2 * k == n {
                        sweep.orbit_of.get(&complement).filter(|&&c| c != id).copied()
                    } else {
                        None
                    };
                    let stab = match shared {
                        Some(c) => sweep.stab_of_orbit[c],
                        None => {
                            let s = set_stabilizer(a, &mask_points(mask), caps)?;
                            sweep.stabilizers.push((mask, s));
                            sweep.stabilizers.len() - 1
                        }
                    };
                    sweep.stab_of_orbit.push(stab);
                }
                mask = next_combination(mask);
            }
        }
        Ok(sweep)
    }

    /// Order of the stabilizer of an arbitrary proper nonempty subset.
    fn stabilizer_order(&self, mask: u64, full: u64) -> u128 {
        let key = if 2 * mask.count_ones() > full.count_ones() { full & !mask } else { mask };
        self.stabilizers[self.stab_of_orbit[self.orbit_of[&key]]].1.order()
    }
}

/// Whether some union of `d`-orbits other than `set` and its complement
/// has a strictly larger stabilizer.
fn is_maximal(d: &PermGroup, set: u64, full: u64, sweep: &Sweep) -> bool {
    let orbits: Vec<u64> = d
        .orbits()
        .into_iter()
        .map(|o| o.iter().fold(0u64, |m, &p| m | 1 << p))
        .collect();
    let order = d.order();
    let larger = |u: u64| u != 0 && u != full && u != set && u != full & !set && sweep.stabilizer_order(u, full) > order;
    let r = orbits.len();
    if r < 63 && (1u64 << r) <= sweep.orbit_of.len() as u64 {
        !(1u64..(1 << r) - 1).any(|sel| {
            let u = (0..r).filter(|&i| sel >> i & 1 == 1).fold(0, |m, i| m | orbits[i]);
            larger(u)
        })
    } else {
        !sweep.orbit_of.keys().any(|&u| {
            orbits.iter().all(|&o| u & o == 0 || u & o == o) && larger(u)
        })
    }
}

fn conjugate_within(a: &PermGroup, d1: &PermGroup, d2: &PermGroup, caps: &Caps) -> Result<Option<bool>> {
    if d1.order() != d2.order() {
        return Ok(Some(false));
    }
    let lengths = |g: &PermGroup| {
        let mut v: Vec<usize> = g.orbits().iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    };
    if lengths(d1) != lengths(d2) {
        return Ok(Some(false));
    }
    let index = a.order() / d1.order();
    if index > caps.conjugacy_index as u128 {
        return Ok(None);
    }
    let act = Action::on_cosets(a, d1, caps)?;
    let reps = act.coset_representatives().expect("coset action");
    Ok(Some(reps.iter().any(|x| d1.conjugate_by(x).same_group(d2))))
}

/// Maximal intransitive subgroups of a transitive group, up to conjugacy.
///
/// A maximal intransitive subgroup stabilizes one of its orbits, so it is a
/// set stabilizer; sweeping representatives of the orbits on `k`-subsets
/// for `k ≤ n/2` therefore finds every class. Classes are ordered by
/// subset size, then by the least subset of the orbit.
pub fn maximal_intransitive(a: &PermGroup, caps: &Caps) -> Result<Vec<IntransitiveClass>> {
    let n = a.degree();
    if !a.is_transitive() {
        return Err(Error::precondition("group is not transitive"));
    }
    if n > caps.subset_sweep_degree.min(64) {
        return Err(Error::resource(
            format!("subset sweep at degree {n}"),
            caps.subset_sweep_degree as u128,
        ));
    }
    let total: u64 = (1..=n as u64 / 2).map(|k| binomial(n as u64, k)).fold(0, u64::saturating_add);
    if total > caps.subset_sweep_total {
        return Err(Error::resource(
            format!("sweep over {total} point subsets"),
            caps.subset_sweep_total as u128,
        ));
    }
    if n == 1 {
        return Ok(Vec::new());
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let sweep = Sweep::run(a, caps)?;
    let mut out: Vec<IntransitiveClass> = Vec::new();
    for (set, d) in &sweep.stabilizers {
        if !is_maximal(d, *set, full, &sweep) {
            continue;
        }
        let mut possibly_duplicate = false;
        let mut duplicate = false;
        for earlier in &out {
            match conjugate_within(a, &earlier.subgroup, d, caps)? {
                Some(true) => {
                    duplicate = true;
                    break;
                }
                Some(false) => {}
                None => possibly_duplicate = true,
            }
        }
        if duplicate {
            continue;
        }
        let mut orbit_lengths: Vec<usize> = d.orbits().iter().map(Vec::len).collect();
        orbit_lengths.sort_unstable_by(|x, y| y.cmp(x));
        out.push(IntransitiveClass {
            subgroup: d.clone(),
            set: mask_points(*set),
            order: d.order(),
            index: a.order() / d.order(),
            orbit_lengths,
            possibly_duplicate,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(g: &PermGroup) -> Vec<u128> {
        let mut v: Vec<u128> = maximal_intransitive(g, &Caps::default())
            .unwrap()
            .iter()
            .map(|c| c.order)
            .collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn examples() {
        let d4 = PermGroup::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap();
        let classes = maximal_intransitive(&d4, &Caps::default()).unwrap();
        assert_eq!(classes.len(), 2);
        let sr = PermGroup::from_cycles(4, &["(1 2)(3 4)"]).unwrap();
        let sr2 = PermGroup::from_cycles(4, &["(1 3)", "(2 4)"]).unwrap();
        assert!(classes[0].subgroup.same_group(&sr));
        assert!(classes[1].subgroup.same_group(&sr2));
        assert_eq!(orders(&PermGroup::symmetric(5)), vec![12, 24]);
        let s2 = maximal_intransitive(&PermGroup::symmetric(2), &Caps::default()).unwrap();
        assert_eq!(s2.len(), 1);
        assert!(s2[0].subgroup.is_trivial());
    }

    #[test]
    fn half_sets_and_complements() {
        // stabilizers of 1-, 2- and 3-sets
        assert_eq!(orders(&PermGroup::symmetric(6)), vec![36, 48, 120]);
        assert_eq!(orders(&PermGroup::alternating(6)), vec![18, 24, 60]);
        // C4: every stabilizer is trivial or of order 2.
        assert_eq!(orders(&PermGroup::cyclic(4)), vec![2]);
    }

    #[test]
    fn caps_and_preconditions() {
        let tight = Caps {
            subset_sweep_degree: 5,
            ..Caps::default()
        };
        assert!(maximal_intransitive(&PermGroup::symmetric(6), &tight).unwrap_err().is_resource());
        let intransitive = PermGroup::from_cycles(4, &["(1 2)"]).unwrap();
        assert!(matches!(
            maximal_intransitive(&intransitive, &Caps::default()),
            Err(Error::Precondition(_))
        ));
    }
}
