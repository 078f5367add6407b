//! Stabilizers of points and point sets by orbit enumeration and
//! Schreier generators.

use std::collections::HashMap;
use std::hash::Hash;

use super::group::PermGroup;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Orbit of `start` under `act`, with a transversal, and the stabilizer
/// generated by the Schreier generators that are not already present.
fn orbit_stabilizer<T, F>(
    group: &PermGroup,
    start: T,
    act: F,
    cap: usize,
) -> Result<(Vec<T>, PermGroup)>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &Permutation) -> T,
{
    let mut index: HashMap<T, usize> = HashMap::from([(start.clone(), 0)]);
    let mut orbit = vec![start];
    let mut reps = vec![group.identity()];
    let mut i = 0;
    while i < orbit.len() {
        for g in group.generators() {
            let next = act(&orbit[i], g);
            if !index.contains_key(&next) {
                if orbit.len() >= cap {
                    return Err(Error::resource("orbit of a point subset", cap as u128));
                }
                index.insert(next.clone(), orbit.len());
                reps.push(reps[i].then(g));
                orbit.push(next);
            }
        }
        i += 1;
    }
    let target = group.order() / orbit.len() as u128;
    let mut stab = PermGroup::trivial(group.degree());
    'fill: for (i, item) in orbit.iter().enumerate() {
        for g in group.generators() {
            let j = index[&act(item, g)];
            let schreier = reps[i].then(g).then(&reps[j].inverse());
            if !stab.contains(&schreier) {
                stab = stab.join(&[schreier]);
                if stab.order() == target {
                    break 'fill;
                }
            }
        }
    }
    Ok((orbit, stab))
}

pub fn point_stabilizer(group: &PermGroup, point: usize) -> PermGroup {
    orbit_stabilizer(group, point, |p, g| g.apply(*p), usize::MAX)
        .expect("point orbits are bounded by the degree")
        .1
}

fn sorted_image(set: &[usize], g: &Permutation) -> Vec<usize> {
    let mut v: Vec<usize> = set.iter().map(|&p| g.apply(p)).collect();
    v.sort_unstable();
    v
}

/// Setwise stabilizer of `set`.
pub fn set_stabilizer(group: &PermGroup, set: &[usize], caps: &Caps) -> Result<PermGroup> {
    Ok(set_orbit_and_stabilizer(group, set, caps)?.1)
}

/// Orbit of a point set (each member sorted) and its setwise stabilizer.
pub fn set_orbit_and_stabilizer(
    group: &PermGroup,
    set: &[usize],
    caps: &Caps,
) -> Result<(Vec<Vec<usize>>, PermGroup)> {
    let mut start = set.to_vec();
    start.sort_unstable();
    start.dedup();
    if start.len() != set.len() {
        return Err(Error::input("point set has repeated points"));
    }
    if let Some(&p) = start.iter().find(|&&p| p >= group.degree()) {
        return Err(Error::input(format!("point {} outside the degree", p + 1)));
    }
    if start.is_empty() || start.len() == group.degree() {
        return Ok((vec![start], group.clone()));
    }
    orbit_stabilizer(group, start, |s, g| sorted_image(s, g), caps.subset_orbit)
}
