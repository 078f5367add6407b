//! Block systems of transitive groups.

use super::group::PermGroup;
use crate::error::{Error, Result};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Finest block system in which `a` and `b` share a block.
pub fn minimal_block_system(group: &PermGroup, a: usize, b: usize) -> Vec<Vec<usize>> {
    let n = group.degree();
    let mut uf = UnionFind::new(n);
    let mut pending = Vec::new();
    if uf.union(a, b) {
        pending.push((a, b));
    }
    while let Some((x, y)) = pending.pop() {
        for g in group.generators() {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if uf.union(gx, gy) {
                pending.push((gx, gy));
            }
        }
    }
    partition_from(&mut uf, n)
}

fn partition_from(uf: &mut UnionFind, n: usize) -> Vec<Vec<usize>> {
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut cell_of_root = vec![usize::MAX; n];
    for p in 0..n {
        let r = uf.find(p);
        if cell_of_root[r] == usize::MAX {
            cell_of_root[r] = cells.len();
            cells.push(Vec::new());
        }
        cells[cell_of_root[r]].push(p);
    }
    cells
}

/// All minimal nontrivial block systems; empty iff the group is primitive.
///
/// Each system is a list of sorted blocks ordered by least point; systems
/// are ordered by block size, then lexicographically.
pub fn block_systems(group: &PermGroup) -> Result<Vec<Vec<Vec<usize>>>> {
    if !group.is_transitive() {
        return Err(Error::contract("block systems need a transitive group"));
    }
    let n = group.degree();
    let mut systems: Vec<Vec<Vec<usize>>> = Vec::new();
    for b in 1..n {
        let system = minimal_block_system(group, 0, b);
        if system.len() > 1 && !systems.contains(&system) {
            systems.push(system);
        }
    }
    let block_of_zero = |s: &Vec<Vec<usize>>| s[0].clone();
    let minimal: Vec<Vec<Vec<usize>>> = systems
        .iter()
        .filter(|s| {
            let mine = block_of_zero(s);
            !systems.iter().any(|t| {
                let other = block_of_zero(t);
                other.len() < mine.len() && other.iter().all(|p| mine.contains(p))
            })
        })
        .cloned()
        .collect();
    let mut minimal = minimal;
    minimal.sort_by(|a, b| a[0].len().cmp(&b[0].len()).then_with(|| a.cmp(b)));
    Ok(minimal)
}

/// Every nontrivial block system, minimal or not, in the same order.
pub fn all_block_systems(group: &PermGroup) -> Result<Vec<Vec<Vec<usize>>>> {
    if !group.is_transitive() {
        return Err(Error::contract("block systems need a transitive group"));
    }
    let n = group.degree();
    let mut systems: Vec<Vec<Vec<usize>>> = Vec::new();
    // every block containing 0 is the join of the minimal blocks of pairs
    // inside it; close the pair systems under joins
    for b in 1..n {
        let s = minimal_block_system(group, 0, b);
        if s.len() > 1 && !systems.contains(&s) {
            systems.push(s);
        }
    }
    let mut i = 0;
    while i < systems.len() {
        for j in 0..systems.len() {
            let joined = join_systems(group, &systems[i], &systems[j]);
            if joined.len() > 1 && !systems.contains(&joined) {
                systems.push(joined);
            }
        }
        i += 1;
    }
    systems.sort_by(|a, b| a[0].len().cmp(&b[0].len()).then_with(|| a.cmp(b)));
    Ok(systems)
}

fn join_systems(group: &PermGroup, a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = group.degree();
    let mut uf = UnionFind::new(n);
    let mut pending = Vec::new();
    for block in a.iter().chain(b) {
        for w in block.windows(2) {
            if uf.union(w[0], w[1]) {
                pending.push((w[0], w[1]));
            }
        }
    }
    while let Some((x, y)) = pending.pop() {
        for g in group.generators() {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if uf.union(gx, gy) {
                pending.push((gx, gy));
            }
        }
    }
    partition_from(&mut uf, n)
}

pub fn is_primitive(group: &PermGroup) -> Result<bool> {
    Ok(block_systems(group)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::testing::invariant_partitions;

    #[test]
    fn dihedral_blocks_match_brute_force() {
        let d4 = PermGroup::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap();
        let systems = block_systems(&d4).unwrap();
        assert_eq!(systems, vec![vec![vec![0, 2], vec![1, 3]]]);
        let brute = invariant_partitions(&d4);
        assert_eq!(brute.minimal, systems);
    }

    #[test]
    fn primitive_and_imprimitive() {
        assert!(block_systems(&PermGroup::symmetric(5)).unwrap().is_empty());
        let wr = PermGroup::from_cycles(4, &["(1 2)", "(1 3)(2 4)"]).unwrap();
        assert!(block_systems(&wr)
            .unwrap()
            .contains(&vec![vec![0, 1], vec![2, 3]]));
        let intransitive = PermGroup::from_cycles(4, &["(1 2)"]).unwrap();
        assert!(matches!(block_systems(&intransitive), Err(Error::Contract(_))));
    }

    #[test]
    fn all_systems_of_cyclic_8() {
        let c8 = PermGroup::cyclic(8);
        let all = all_block_systems(&c8).unwrap();
        let sizes: Vec<usize> = all.iter().map(|s| s[0].len()).collect();
        assert_eq!(sizes, vec![2, 4]);
        assert_eq!(invariant_partitions(&c8).all, all);
    }
}
