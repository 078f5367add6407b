use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use rand::Rng;

use super::chain::StabChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A finitely generated permutation group with a lazily built stabilizer
/// chain.
///
/// Subgroups are ordinary `PermGroup` values on the same degree; operations
/// taking a parent and a subgroup check containment themselves.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::input(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            degree,
            gens,
            chain: OnceLock::new(),
        })
    }

    /// Parses generators given in 1-indexed cycle notation.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let perms = gens
            .iter()
            .map(|s| Permutation::parse_cycles(degree, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, perms)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            gens: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        Self::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        Self::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()]
        } else {
            Vec::new()
        };
        Self::new(n, gens).unwrap()
    }

    /// Symmetries of an `n`-gon on its vertices, order `2n`.
    pub fn dihedral(n: usize) -> Self {
        let rotation = Permutation::from_cycles(n, &[(0..n).collect()]).unwrap();
        let reflection =
            Permutation::from_images_unchecked((0..n).map(|i| (n - i) % n).collect());
        Self::new(n, vec![rotation, reflection]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.gens))
    }

    /// Exact group order; errors only if it does not fit in `u128`.
    pub fn try_order(&self) -> Result<u128> {
        self.chain()
            .order()
            .ok_or_else(|| Error::resource("group order exceeds u128", u128::MAX))
    }

    /// Exact group order. Panics if the order overflows `u128`, which
    /// needs a group larger than `S_34`.
    pub fn order(&self) -> u128 {
        self.try_order().expect("group order overflows u128")
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain().strong_generators()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// Equality as sets of permutations.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        parent
            .generators()
            .iter()
            .all(|x| self.gens.iter().all(|g| self.contains(&g.conjugate_by(x))))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// All elements, refusing groups larger than `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        let order = self.try_order()?;
        if order > cap {
            return Err(Error::resource(
                format!("enumerating {order} group elements"),
                cap,
            ));
        }
        let mut out = Vec::with_capacity(order as usize);
        self.chain().for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    /// Orbit partition; each orbit sorted, orbits ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let orbit = self.orbit_of(start);
            for &p in &orbit {
                seen[p] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        let mut seen = HashSet::from([point]);
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for g in &self.gens {
                let q = g.apply(p);
                if seen.insert(q) {
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit_of(0).len() == self.degree
    }

    /// Subgroup generated by `self` together with `extra`.
    pub fn join(&self, extra: &[Permutation]) -> PermGroup {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens).unwrap()
    }

    /// Subgroup generated by the given elements, with generators pruned
    /// to those not already generated by their predecessors.
    pub fn generated_by(degree: usize, elements: &[Permutation]) -> PermGroup {
        let mut group = PermGroup::trivial(degree);
        for e in elements {
            if !group.contains(e) {
                group = group.join(std::slice::from_ref(e));
            }
        }
        group
    }

    /// Conjugate subgroup `x^-1 self x`.
    pub fn conjugate_by(&self, x: &Permutation) -> PermGroup {
        PermGroup::new(
            self.degree,
            self.gens.iter().map(|g| g.conjugate_by(x)).collect(),
        )
        .unwrap()
    }

    /// Lexicographically smallest generating set found greedily among the
    /// elements of a small group: the canonical printed form of subgroups.
    pub fn canonical_generators(&self, cap: u128) -> Result<Vec<Permutation>> {
        let mut elements = self.elements(cap)?;
        elements.sort();
        let mut gens = Vec::new();
        let mut current = PermGroup::trivial(self.degree);
        let target = self.order();
        for e in elements {
            if current.order() == target {
                break;
            }
            if !current.contains(&e) {
                gens.push(e.clone());
                current = current.join(&[e]);
            }
        }
        Ok(gens)
    }

    /// Restriction to an invariant point set, relabelled `0..set.len()` in
    /// the order given.
    pub fn restrict_to(&self, set: &[usize]) -> Result<PermGroup> {
        let index: HashMap<usize, usize> = set.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut gens = Vec::new();
        for g in &self.gens {
            let mut images = Vec::with_capacity(set.len());
            for &p in set {
                let q = g.apply(p);
                match index.get(&q) {
                    Some(&i) => images.push(i),
                    None => return Err(Error::contract("point set is not invariant")),
                }
            }
            gens.push(Permutation::from_images_unchecked(images));
        }
        PermGroup::new(set.len(), gens)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, gens [", self.degree)?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// Order of a group given by generators. Empty generator lists give the
/// trivial group.
pub fn group_order(group: &PermGroup) -> Result<u128> {
    group.try_order()
}

/// Orbit partition of the natural action.
pub fn orbits(group: &PermGroup) -> Vec<Vec<usize>> {
    group.orbits()
}
