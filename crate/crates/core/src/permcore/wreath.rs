//! Wreath products and the combinatorial conjugacy classes of
//! `S_k wr S_m`.

use serde::Serialize;

use super::action::Action;
use super::group::PermGroup;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WreathKind {
    Imprimitive,
    Product,
}

/// `u wr v` with `u` of degree `k` and `v` of degree `m`.
///
/// The imprimitive action lives on `k·m` points with blocks
/// `{jk, .., jk + k - 1}`; the product action on `k^m` tuples is the image
/// of that group under [`Action::product`].
pub fn wreath_product(u: &PermGroup, v: &PermGroup, kind: WreathKind, caps: &Caps) -> Result<PermGroup> {
    let (k, m) = (u.degree(), v.degree());
    if k == 0 || m == 0 {
        return Err(Error::input("wreath factors need positive degree"));
    }
    let imprimitive = imprimitive_wreath(u, v);
    match kind {
        WreathKind::Imprimitive => Ok(imprimitive),
        WreathKind::Product => Ok(Action::product(&imprimitive, k, m, caps)?.image_group()),
    }
}

fn imprimitive_wreath(u: &PermGroup, v: &PermGroup) -> PermGroup {
    let (k, m) = (u.degree(), v.degree());
    let n = k * m;
    let mut gens = Vec::new();
    for j in 0..m {
        for g in u.generators() {
            gens.push(g.shifted(j * k, n));
        }
    }
    for h in v.generators() {
        let images = (0..n).map(|p| h.apply(p / k) * k + p % k).collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    PermGroup::new(n, gens).unwrap()
}

/// Descriptor of the full wreath product `S_k wr S_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WreathDescriptor {
    pub k: usize,
    pub m: usize,
}

/// One top cycle of length `length` whose cycle product has cycle type
/// `base_type` in `S_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CycleClass {
    pub length: usize,
    pub base_type: Vec<usize>,
}

/// A conjugacy class of `S_k wr S_m`: the multiset of (top cycle length,
/// cycle-product class), listed in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WreathClass {
    pub parts: Vec<CycleClass>,
    pub element_order: u64,
    pub top_order: u64,
    pub size: u128,
}

impl WreathClass {
    pub fn top_cycle_type(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.length).collect()
    }
}

pub(crate) fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            current.push(part);
            rec(rest - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn lcm_of(parts: &[usize]) -> u64 {
    parts
        .iter()
        .fold(1u64, |acc, &p| num_integer::lcm(acc, p as u64))
}

/// Centralizer order in `S_k` of an element of the given cycle type.
pub(crate) fn centralizer_order(cycle_type: &[usize]) -> u128 {
    let mut out = 1u128;
    let mut i = 0;
    while i < cycle_type.len() {
        let len = cycle_type[i];
        let mut mult = 0;
        while i < cycle_type.len() && cycle_type[i] == len {
            mult += 1;
            i += 1;
        }
        out *= (len as u128).pow(mult as u32) * factorial(mult);
    }
    out
}

impl WreathDescriptor {
    pub fn new(k: usize, m: usize) -> Result<Self> {
        if k == 0 || m == 0 {
            return Err(Error::input("wreath factors need positive degree"));
        }
        Ok(WreathDescriptor { k, m })
    }

    pub fn order(&self) -> Result<u128> {
        let base = factorial(self.k);
        (0..self.m)
            .try_fold(factorial(self.m), |acc, _| acc.checked_mul(base))
            .ok_or_else(|| Error::resource("wreath order exceeds u128", u128::MAX))
    }

    /// The group in its imprimitive action.
    pub fn group(&self) -> PermGroup {
        imprimitive_wreath(&PermGroup::symmetric(self.k), &PermGroup::symmetric(self.m))
    }

    /// Conjugacy classes, enumerated as multisets of (top cycle length,
    /// cycle-product class) with total length `m`.
    pub fn classes(&self) -> Result<Vec<WreathClass>> {
        let order = self.order()?;
        let base_types = partitions(self.k);
        let mut atoms = Vec::new();
        for length in (1..=self.m).rev() {
            for t in &base_types {
                atoms.push(CycleClass {
                    length,
                    base_type: t.clone(),
                });
            }
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.collect(&atoms, 0, self.m, &mut current, order, &mut out);
        Ok(out)
    }

    /// The classes whose elements have order `order` and whose image in
    /// the top group has order `top_order`. Only cycle classes compatible
    /// with both orders are combined, so this stays small where the full
    /// class list does not.
    pub fn classes_with_orders(&self, order: u64, top_order: u64) -> Result<Vec<WreathClass>> {
        let total = self.order()?;
        let mut atoms = Vec::new();
        for length in (1..=self.m).rev() {
            if top_order % length as u64 != 0 {
                continue;
            }
            for t in partitions(self.k) {
                if order % (length as u64 * lcm_of(&t)) == 0 {
                    atoms.push(CycleClass { length, base_type: t });
                }
            }
        }
        let mut out = Vec::new();
        self.collect(&atoms, 0, self.m, &mut Vec::new(), total, &mut out);
        out.retain(|c| c.element_order == order && c.top_order == top_order);
        Ok(out)
    }

    fn collect(
        &self,
        atoms: &[CycleClass],
        from: usize,
        rest: usize,
        current: &mut Vec<CycleClass>,
        order: u128,
        out: &mut Vec<WreathClass>,
    ) {
        if rest == 0 {
            out.push(self.class_of(current, order));
            return;
        }
        for i in from..atoms.len() {
            if atoms[i].length <= rest {
                current.push(atoms[i].clone());
                self.collect(atoms, i, rest - atoms[i].length, current, order, out);
                current.pop();
            }
        }
    }

    fn class_of(&self, parts: &[CycleClass], order: u128) -> WreathClass {
        let mut centralizer = 1u128;
        let mut i = 0;
        while i < parts.len() {
            let mut mult = 0u32;
            let atom = &parts[i];
            while i < parts.len() && parts[i] == *atom {
                mult += 1;
                i += 1;
            }
            let per = atom.length as u128 * centralizer_order(&atom.base_type);
            centralizer *= per.pow(mult) * factorial(mult as usize);
        }
        let element_order = parts.iter().fold(1u64, |acc, p| {
            num_integer::lcm(acc, p.length as u64 * lcm_of(&p.base_type))
        });
        let top_order = parts
            .iter()
            .fold(1u64, |acc, p| num_integer::lcm(acc, p.length as u64));
        WreathClass {
            parts: parts.to_vec(),
            element_order,
            top_order,
            size: order / centralizer,
        }
    }

    /// A representative in the imprimitive action: each top cycle runs
    /// through consecutive blocks and carries its cycle product on its
    /// last block.
    pub fn representative(&self, class: &WreathClass) -> Permutation {
        let (k, m) = (self.k, self.m);
        let mut images: Vec<usize> = (0..k * m).collect();
        let mut block = 0;
        for part in &class.parts {
            let blocks: Vec<usize> = (block..block + part.length).collect();
            block += part.length;
            let base = permutation_of_type(k, &part.base_type);
            for (idx, &j) in blocks.iter().enumerate() {
                let next = blocks[(idx + 1) % blocks.len()];
                let last = idx + 1 == blocks.len();
                for x in 0..k {
                    let y = if last { base.apply(x) } else { x };
                    images[j * k + x] = next * k + y;
                }
            }
        }
        Permutation::from_images_unchecked(images)
    }
}

/// The permutation of `0..k` whose cycles are consecutive runs of the
/// given lengths.
pub(crate) fn permutation_of_type(k: usize, cycle_type: &[usize]) -> Permutation {
    let mut cycles = Vec::new();
    let mut start = 0;
    for &len in cycle_type {
        cycles.push((start..start + len).collect::<Vec<_>>());
        start += len;
    }
    Permutation::from_cycles(k, &cycles).expect("cycle type partitions k")
}

/// Conjugacy class data: either enumerated from the elements of a small
/// group or combinatorially for `S_k wr S_m`.
#[derive(Debug, Clone)]
pub enum ClassSource<'a> {
    Group(&'a PermGroup),
    Wreath(WreathDescriptor),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    #[serde(serialize_with = "crate::permcore::serialize_perm")]
    pub representative: Permutation,
    pub element_order: u64,
    pub size: u128,
}

/// Representatives, element orders and class sizes.
pub fn conjugacy_classes(source: ClassSource<'_>, caps: &Caps) -> Result<Vec<ClassSummary>> {
    match source {
        ClassSource::Group(g) => Ok(super::normal::conjugacy_classes_brute(g, caps)?
            .into_iter()
            .map(|c| ClassSummary {
                representative: c.representative,
                element_order: c.element_order,
                size: c.size,
            })
            .collect()),
        ClassSource::Wreath(d) => Ok(d
            .classes()?
            .into_iter()
            .map(|c| ClassSummary {
                representative: d.representative(&c),
                element_order: c.element_order,
                size: c.size,
            })
            .collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::blocks::block_systems;
    use crate::permcore::normal::conjugacy_classes_brute;
    use std::collections::HashMap;

    #[test]
    fn small_wreath_products() {
        let caps = Caps::default();
        let s2 = PermGroup::symmetric(2);
        let w = wreath_product(&s2, &s2, WreathKind::Imprimitive, &caps).unwrap();
        assert_eq!(w.degree(), 4);
        assert_eq!(w.order(), 8);
        assert!(block_systems(&w).unwrap().contains(&vec![vec![0, 1], vec![2, 3]]));

        let s5 = PermGroup::symmetric(5);
        let w = wreath_product(&s5, &s5, WreathKind::Imprimitive, &caps).unwrap();
        assert_eq!(w.degree(), 25);
        assert_eq!(w.order(), 120u128.pow(5) * 120);

        let v = PermGroup::dihedral(5);
        let w = wreath_product(&PermGroup::trivial(1), &v, WreathKind::Imprimitive, &caps).unwrap();
        assert!(w.same_group(&v));
    }

    #[test]
    fn product_action_order() {
        let caps = Caps::default();
        let s3 = PermGroup::symmetric(3);
        let s2 = PermGroup::symmetric(2);
        let w = wreath_product(&s3, &s2, WreathKind::Product, &caps).unwrap();
        assert_eq!(w.degree(), 9);
        assert_eq!(w.order(), 72);
        let tight = Caps {
            product_degree: 8,
            ..caps
        };
        assert!(wreath_product(&s3, &s2, WreathKind::Product, &tight)
            .unwrap_err()
            .is_resource());
    }

    fn check_against_brute_force(k: usize, m: usize) {
        let caps = Caps::default();
        let d = WreathDescriptor::new(k, m).unwrap();
        let group = d.group();
        let brute = conjugacy_classes_brute(&group, &caps).unwrap();
        let classes = d.classes().unwrap();
        assert_eq!(classes.len(), brute.len());
        assert_eq!(classes.iter().map(|c| c.size).sum::<u128>(), group.order());
        // each combinatorial representative sits in a distinct brute-force
        // class of the same size and order
        let elements = group.elements(caps.element_enumeration).unwrap();
        let mut class_of: HashMap<Permutation, usize> = HashMap::new();
        for (ci, c) in brute.iter().enumerate() {
            let mut queue = vec![c.representative.clone()];
            class_of.insert(c.representative.clone(), ci);
            while let Some(x) = queue.pop() {
                for g in group.generators() {
                    let y = x.conjugate_by(g);
                    if !class_of.contains_key(&y) {
                        class_of.insert(y.clone(), ci);
                        queue.push(y);
                    }
                }
            }
        }
        assert_eq!(class_of.len(), elements.len());
        let mut hit = vec![false; brute.len()];
        for c in &classes {
            let rep = d.representative(c);
            assert!(group.contains(&rep));
            let ci = class_of[&rep];
            assert!(!hit[ci], "two descriptors in one class");
            hit[ci] = true;
            assert_eq!(brute[ci].size, c.size);
            assert_eq!(brute[ci].element_order, c.element_order);
        }
    }

    #[test]
    fn wreath_classes_match_brute_force() {
        check_against_brute_force(2, 2);
        check_against_brute_force(3, 2);
        check_against_brute_force(2, 3);
    }

    #[test]
    fn s2_wr_s2_has_five_classes() {
        let d = WreathDescriptor::new(2, 2).unwrap();
        assert_eq!(d.classes().unwrap().len(), 5);
        let caps = Caps::default();
        let s5 = PermGroup::symmetric(5);
        assert_eq!(conjugacy_classes(ClassSource::Group(&s5), &caps).unwrap().len(), 7);
        let trivial = PermGroup::trivial(2);
        assert_eq!(conjugacy_classes(ClassSource::Group(&trivial), &caps).unwrap().len(), 1);
    }
}
