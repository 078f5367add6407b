//! Normal structure: closures, derived series, cores, minimal normal
//! subgroups and the socle.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::action::Action;
use super::group::PermGroup;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Smallest normal subgroup of `group` containing `elements`. The elements
/// are assumed to lie in `group`.
pub(crate) fn normal_closure_of(group: &PermGroup, elements: &[Permutation]) -> PermGroup {
    let mut closure = PermGroup::generated_by(group.degree(), elements);
    let mut i = 0;
    while i < closure.generators().len() {
        let n = closure.generators()[i].clone();
        for x in group.generators() {
            let c = n.conjugate_by(x);
            if !closure.contains(&c) {
                closure = closure.join(&[c]);
            }
        }
        i += 1;
    }
    closure
}

/// Normal closure of `sub` in `group`.
pub fn normal_closure(group: &PermGroup, sub: &PermGroup) -> Result<PermGroup> {
    if !sub.is_subgroup_of(group) {
        return Err(Error::contract("subgroup is not contained in the group"));
    }
    Ok(normal_closure_of(group, sub.generators()))
}

/// Commutator subgroup: normal closure of the generator commutators.
pub fn derived_subgroup(group: &PermGroup) -> PermGroup {
    let gens = group.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure_of(group, &comms)
}

/// Derived series down to its stable term.
pub fn derived_series(group: &PermGroup) -> Vec<PermGroup> {
    let mut series = vec![group.clone()];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let next = derived_subgroup(last);
        if next.order() == last.order() {
            break;
        }
        series.push(next);
    }
    series
}

/// Last term of the derived series (trivial iff the group is solvable).
pub fn perfect_core(group: &PermGroup) -> PermGroup {
    derived_series(group).pop().unwrap()
}

pub fn is_solvable(group: &PermGroup) -> bool {
    perfect_core(group).is_trivial()
}

pub fn is_abelian(group: &PermGroup) -> bool {
    let gens = group.generators();
    gens.iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
}

/// Intersection of all conjugates of `sub`: the kernel of the action on
/// its cosets.
pub fn core(group: &PermGroup, sub: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    Ok(Action::on_cosets(group, sub, caps)?.kernel())
}

/// Pointwise stabilizer of `points`.
pub fn pointwise_stabilizer(group: &PermGroup, points: &[usize]) -> PermGroup {
    let mut current = group.clone();
    for &p in points {
        current = super::setstab::point_stabilizer(&current, p);
    }
    current
}

/// Elements of `a` lying in `b`, by enumerating the smaller group.
pub fn intersection(a: &PermGroup, b: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if small.is_subgroup_of(large) {
        return Ok(small.clone());
    }
    let elements = small.elements(caps.element_enumeration)?;
    let inside: Vec<Permutation> = elements.into_iter().filter(|x| large.contains(x)).collect();
    Ok(PermGroup::generated_by(a.degree(), &inside))
}

/// One conjugacy class of a group enumerated element by element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    #[serde(serialize_with = "crate::permcore::serialize_perm")]
    pub representative: Permutation,
    pub element_order: u64,
    pub size: u128,
}

/// Conjugacy classes by orbit enumeration on the element set. The
/// representative of each class is its least element; classes are listed
/// by representative.
pub fn conjugacy_classes_brute(group: &PermGroup, caps: &Caps) -> Result<Vec<ConjugacyClass>> {
    let mut elements = group.elements(caps.element_enumeration)?;
    elements.sort();
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut seen = vec![false; elements.len()];
    let mut classes = Vec::new();
    for start in 0..elements.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = vec![start];
        let mut i = 0;
        while i < queue.len() {
            let x = &elements[queue[i]];
            for g in group.generators() {
                let j = index[&x.conjugate_by(g)];
                if !seen[j] {
                    seen[j] = true;
                    queue.push(j);
                }
            }
            i += 1;
        }
        let rep = elements[start].clone();
        classes.push(ConjugacyClass {
            element_order: rep.order(),
            representative: rep,
            size: queue.len() as u128,
        });
    }
    Ok(classes)
}

/// Minimal normal subgroups together with their product.
#[derive(Debug, Clone)]
pub struct Socle {
    pub minimal_normal: Vec<PermGroup>,
    pub socle: PermGroup,
    /// Whether the search covered every conjugacy class.
    pub exhaustive: bool,
}

fn push_distinct(list: &mut Vec<PermGroup>, g: PermGroup) -> bool {
    if list.iter().any(|h| h.same_group(&g)) {
        false
    } else {
        list.push(g);
        true
    }
}

/// Candidate normal closures of single elements, one per class when the
/// group is small enough to enumerate, otherwise one per sampled element.
fn element_closures(group: &PermGroup, caps: &Caps) -> Result<(Vec<PermGroup>, bool)> {
    let order = group.try_order()?;
    if order > caps.small_group {
        return Err(Error::resource(
            format!("normal structure of a group of order {order}"),
            caps.small_group,
        ));
    }
    let mut closures = Vec::new();
    if order <= caps.element_enumeration {
        for class in conjugacy_classes_brute(group, caps)? {
            if class.representative.is_identity() {
                continue;
            }
            push_distinct(
                &mut closures,
                normal_closure_of(group, &[class.representative]),
            );
        }
        return Ok((closures, true));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..SAMPLE_ROUNDS {
        let x = group.random_element(&mut rng);
        if !x.is_identity() {
            let n = descend_to_minimal(group, normal_closure_of(group, &[x]), &mut rng);
            push_distinct(&mut closures, n);
        }
    }
    Ok((closures, false))
}

const SAMPLE_ROUNDS: usize = 48;

/// Shrinks a normal subgroup towards a minimal one by taking normal
/// closures of sampled elements and their prime-order powers.
fn descend_to_minimal(group: &PermGroup, mut n: PermGroup, rng: &mut ChaCha8Rng) -> PermGroup {
    'outer: loop {
        for _ in 0..SAMPLE_ROUNDS {
            let y = n.random_element(rng);
            if y.is_identity() {
                continue;
            }
            let ord = y.order();
            let p = smallest_prime_factor(ord);
            let y = y.pow(ord / p);
            let m = normal_closure_of(group, &[y]);
            if m.order() < n.order() {
                n = m;
                continue 'outer;
            }
        }
        return n;
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..).find(|p| n % p == 0 || p * p > n).map_or(n, |p| if n % p == 0 { p } else { n })
}

/// Minimal normal subgroups and the socle.
///
/// Every minimal normal subgroup is the normal closure of any of its
/// nontrivial elements, so the minimal members among the closures of class
/// representatives are exactly the minimal normal subgroups.
pub fn socle(group: &PermGroup, caps: &Caps) -> Result<Socle> {
    if group.is_trivial() {
        return Ok(Socle {
            minimal_normal: Vec::new(),
            socle: group.clone(),
            exhaustive: true,
        });
    }
    let (candidates, exhaustive) = element_closures(group, caps)?;
    let mut minimal: Vec<PermGroup> = candidates
        .iter()
        .filter(|n| {
            !candidates
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect();
    minimal.sort_by_key(|n| n.order());
    let gens: Vec<Permutation> = minimal
        .iter()
        .flat_map(|n| n.generators().iter().cloned())
        .collect();
    let socle = PermGroup::generated_by(group.degree(), &gens);
    Ok(Socle {
        minimal_normal: minimal,
        socle,
        exhaustive,
    })
}

pub fn minimal_normal_subgroups(group: &PermGroup, caps: &Caps) -> Result<Vec<PermGroup>> {
    Ok(socle(group, caps)?.minimal_normal)
}

/// Minimal normal subgroups found by descending from normal closures of
/// sampled elements. Usable at any order; the result may miss minimal
/// normal subgroups, so callers report it as non-exhaustive.
pub fn minimal_normal_subgroups_sampled(group: &PermGroup, rounds: usize) -> Vec<PermGroup> {
    if group.is_trivial() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut found: Vec<PermGroup> = Vec::new();
    let seeds: Vec<Permutation> = group
        .generators()
        .iter()
        .cloned()
        .chain((0..rounds).map(|_| group.random_element(&mut rng)))
        .collect();
    for x in seeds {
        if x.is_identity() {
            continue;
        }
        let n = descend_to_minimal(group, normal_closure_of(group, &[x]), &mut rng);
        push_distinct(&mut found, n);
    }
    let minimal: Vec<PermGroup> = found
        .iter()
        .filter(|n| !found.iter().any(|m| m.order() < n.order() && m.is_subgroup_of(n)))
        .cloned()
        .collect();
    let mut minimal = minimal;
    minimal.sort_by_key(|n| n.order());
    minimal
}

/// Every normal subgroup of a small group, as joins of normal closures of
/// class representatives. Sorted by order; the trivial group comes first.
pub fn normal_subgroups(group: &PermGroup, caps: &Caps) -> Result<Vec<PermGroup>> {
    let order = group.try_order()?;
    if order > caps.element_enumeration {
        return Err(Error::resource(
            format!("normal subgroup enumeration for order {order}"),
            caps.element_enumeration,
        ));
    }
    let (closures, _) = element_closures(group, caps)?;
    let mut all = vec![PermGroup::trivial(group.degree())];
    let mut i = 0;
    while i < all.len() {
        for c in &closures {
            if c.is_subgroup_of(&all[i]) {
                continue;
            }
            let joined = all[i].join(c.generators());
            push_distinct(&mut all, joined);
        }
        i += 1;
    }
    all.sort_by_key(|n| n.order());
    Ok(all)
}

/// Whether some nontrivial element centralizes the group modulo the normal
/// subgroup `n`, i.e. whether `group / n` has a nontrivial center.
pub fn quotient_has_center(
    group: &PermGroup,
    n: &PermGroup,
    caps: &Caps,
) -> Result<bool> {
    for x in group.elements(caps.element_enumeration)? {
        if n.contains(&x) {
            continue;
        }
        if group
            .generators()
            .iter()
            .all(|g| n.contains(&x.commutator(g)))
        {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::testing::{closure, conjugate_closure};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn solvability_examples() {
        let d4 = PermGroup::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap();
        assert!(is_solvable(&d4));
        let a5 = PermGroup::from_cycles(5, &["(1 2 3 4 5)", "(1 2 3)"]).unwrap();
        assert!(!is_solvable(&a5));
        assert!(is_solvable(&PermGroup::symmetric(4)));
    }

    #[test]
    fn normal_closure_examples() {
        let s4 = PermGroup::symmetric(4);
        let t = PermGroup::from_cycles(4, &["(1 2)"]).unwrap();
        assert_eq!(normal_closure(&s4, &t).unwrap().order(), 24);
        let v = PermGroup::from_cycles(4, &["(1 2)(3 4)"]).unwrap();
        let ncl = normal_closure(&s4, &v).unwrap();
        let oracle = conjugate_closure(&s4, &v.generators()[0]);
        assert_eq!(ncl.order(), 4);
        assert_eq!(oracle.len(), 4);
        let a5 = PermGroup::alternating(5);
        let c3 = PermGroup::from_cycles(5, &["(1 2 3)"]).unwrap();
        assert_eq!(normal_closure(&a5, &c3).unwrap().order(), 60);
        let outside = PermGroup::from_cycles(5, &["(1 2)"]).unwrap();
        assert!(matches!(normal_closure(&a5, &outside), Err(Error::Contract(_))));
    }

    #[test]
    fn core_examples() {
        let d4 = PermGroup::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap();
        let s = PermGroup::from_cycles(4, &["(1 3)"]).unwrap();
        assert!(core(&d4, &s, &caps()).unwrap().is_trivial());
        let s4 = PermGroup::symmetric(4);
        let a4 = PermGroup::alternating(4);
        assert!(core(&s4, &a4, &caps()).unwrap().same_group(&a4));
        let s5 = PermGroup::symmetric(5);
        let stab = PermGroup::from_cycles(5, &["(2 3 4 5)", "(2 3)"]).unwrap();
        assert!(core(&s5, &stab, &caps()).unwrap().is_trivial());
    }

    #[test]
    fn socle_examples() {
        let s4 = socle(&PermGroup::symmetric(4), &caps()).unwrap();
        assert_eq!(s4.minimal_normal.len(), 1);
        assert_eq!(s4.socle.order(), 4);
        let a5 = socle(&PermGroup::alternating(5), &caps()).unwrap();
        assert_eq!(a5.socle.order(), 60);
        let s5 = socle(&PermGroup::symmetric(5), &caps()).unwrap();
        assert_eq!(s5.minimal_normal.len(), 1);
        assert!(s5.socle.same_group(&PermGroup::alternating(5)));
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let all = normal_subgroups(&PermGroup::symmetric(4), &caps()).unwrap();
        let orders: Vec<u128> = all.iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        // brute-force cross-check: each is a union of classes of the right size
        for n in &all {
            assert_eq!(closure(n).len() as u128, n.order());
        }
    }

    #[test]
    fn classes_of_s5() {
        let classes = conjugacy_classes_brute(&PermGroup::symmetric(5), &caps()).unwrap();
        assert_eq!(classes.len(), 7);
        assert_eq!(classes.iter().map(|c| c.size).sum::<u128>(), 120);
        assert_eq!(
            conjugacy_classes_brute(&PermGroup::trivial(3), &caps()).unwrap().len(),
            1
        );
    }

    #[test]
    fn socle_cap_is_reported() {
        let tight = Caps {
            small_group: 100,
            ..Caps::default()
        };
        assert!(socle(&PermGroup::symmetric(5), &tight).unwrap_err().is_resource());
    }
}
