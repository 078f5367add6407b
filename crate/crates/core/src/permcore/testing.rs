//! Brute-force oracles for unit tests. Nothing here uses stabilizer chains.

use std::collections::HashSet;

use super::group::PermGroup;
use crate::perm::Permutation;

/// All elements reachable from the generators by multiplication.
pub fn closure(group: &PermGroup) -> HashSet<Permutation> {
    let mut seen = HashSet::from([group.identity()]);
    let mut queue = vec![group.identity()];
    while let Some(x) = queue.pop() {
        for g in group.generators() {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

/// Subgroup generated by all conjugates of `x`, as an element set.
pub fn conjugate_closure(group: &PermGroup, x: &Permutation) -> HashSet<Permutation> {
    let elements = closure(group);
    let conjugates: Vec<Permutation> = elements.iter().map(|g| x.conjugate_by(g)).collect();
    let sub = PermGroup::new(group.degree(), conjugates).unwrap();
    closure(&sub)
}

pub struct Partitions {
    pub all: Vec<Vec<Vec<usize>>>,
    pub minimal: Vec<Vec<Vec<usize>>>,
}

/// Every nontrivial partition of the points preserved by the group, and the
/// minimal ones among them, by enumerating all set partitions.
pub fn invariant_partitions(group: &PermGroup) -> Partitions {
    let n = group.degree();
    let mut all = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(
        i: usize,
        max: usize,
        labels: &mut Vec<usize>,
        group: &PermGroup,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let n = labels.len();
        if i == n {
            if max == 1 || max == n {
                return;
            }
            let ok = group.generators().iter().all(|g| {
                (0..n).all(|a| {
                    (0..n).all(|b| (labels[a] == labels[b]) == (labels[g.apply(a)] == labels[g.apply(b)]))
                })
            });
            if ok {
                let mut cells = vec![Vec::new(); max];
                for (p, &l) in labels.iter().enumerate() {
                    cells[l].push(p);
                }
                out.push(cells);
            }
            return;
        }
        for l in 0..=max {
            labels[i] = l;
            rec(i + 1, max.max(l + 1), labels, group, out);
        }
    }
    if n > 0 {
        labels[0] = 0;
        rec(1, 1, &mut labels, group, &mut all);
    }
    // keep systems with equal block sizes only: the group is transitive
    all.sort_by(|a, b| a[0].len().cmp(&b[0].len()).then_with(|| a.cmp(b)));
    let minimal = all
        .iter()
        .filter(|s| {
            !all.iter().any(|t| {
                t[0].len() < s[0].len() && t.iter().all(|tb| s.iter().any(|sb| tb.iter().all(|p| sb.contains(p))))
            })
        })
        .cloned()
        .collect();
    Partitions { all, minimal }
}
