//! Riemann–Hurwitz genus from ramification data and from explicit branch
//! tuples.
//!
//! For a transitive tuple `σ_1, …, σ_s` of degree `n` with product one, the
//! genus `g` of the cover is determined by `Σ ind σ_i = 2(n + g − 1)`, where
//! `ind σ = n − #cycles(σ)`.

pub mod dsl;
mod table1;

use std::collections::HashMap;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permcore::{Action, PermGroup};

pub use table1::{table1_admissible_ells, table1_row_template, table1_verify, Table1Report, TABLE1_ROWS};

/// A partition, parts in descending order.
pub type Partition = Vec<usize>;

/// Symbolic origin of a ramification type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyTag {
    pub row: usize,
    pub ell: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
}

/// One partition of `degree` per branch point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationType {
    degree: usize,
    entries: Vec<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tag: Option<FamilyTag>,
}

impl RamificationType {
    pub fn new(degree: usize, entries: Vec<Partition>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::input("degree must be positive"));
        }
        let mut entries = entries;
        for (i, p) in entries.iter_mut().enumerate() {
            if p.contains(&0) {
                return Err(Error::input(format!("branch entry {i} has a zero part")));
            }
            let sum: usize = p.iter().sum();
            if sum != degree {
                return Err(Error::input(format!(
                    "branch entry {i} sums to {sum}, expected {degree}"
                )));
            }
            p.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(RamificationType {
            degree,
            entries,
            tag: None,
        })
    }

    /// Parses ramification text (see [`dsl`]); the degree is taken from the
    /// first entry.
    pub fn parse(text: &str) -> Result<Self> {
        let spec = dsl::parse(text)?;
        let entries = spec
            .partitions
            .iter()
            .map(|t| dsl::instantiate(t, &spec.params))
            .collect::<Result<Vec<_>>>()?;
        let degree = entries[0].iter().sum();
        Self::new(degree, entries)
    }

    pub fn with_tag(mut self, tag: FamilyTag) -> Self {
        self.tag = Some(tag);
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &[Partition] {
        &self.entries
    }

    pub fn tag(&self) -> Option<&FamilyTag> {
        self.tag.as_ref()
    }

    pub fn index_sum(&self) -> usize {
        self.entries.iter().map(|p| partition_index(p)).sum()
    }
}

/// `n − #cycles`, counting fixed points.
pub fn perm_index(sigma: &Permutation) -> usize {
    sigma.degree() - sigma.cycle_count()
}

/// Index of a permutation with the given cycle type.
pub fn partition_index(p: &[usize]) -> usize {
    p.iter().map(|e| e - 1).sum()
}

/// Solves `index_sum = 2(n + g − 1)` for `g`.
pub fn genus_from_index_sum(degree: usize, index_sum: usize) -> Result<usize> {
    if index_sum % 2 == 1 {
        return Err(Error::inconsistent(format!(
            "index sum {index_sum} is odd; no cover of degree {degree}"
        )));
    }
    let g = (index_sum / 2) as i64 - degree as i64 + 1;
    if g < 0 {
        return Err(Error::inconsistent(format!(
            "index sum {index_sum} is below 2({degree} - 1); no connected cover"
        )));
    }
    Ok(g as usize)
}

pub fn ramification_genus(r: &RamificationType) -> Result<usize> {
    genus_from_index_sum(r.degree, r.index_sum())
}

/// Branch cycles: a transitive tuple with product one.
#[derive(Debug, Clone)]
pub struct BranchTuple {
    degree: usize,
    perms: Vec<Permutation>,
    infinity: Option<usize>,
}

impl BranchTuple {
    pub fn new(degree: usize, perms: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::input("degree must be positive"));
        }
        if let Some(p) = perms.iter().find(|p| p.degree() != degree) {
            return Err(Error::input(format!(
                "tuple entry has degree {}, expected {degree}",
                p.degree()
            )));
        }
        let product = perms
            .iter()
            .fold(Permutation::identity(degree), |acc, p| acc.then(p));
        if !product.is_identity() {
            return Err(Error::contract(format!(
                "tuple product is {} rather than the identity",
                product.to_cycle_string()
            )));
        }
        let t = BranchTuple {
            degree,
            perms,
            infinity: None,
        };
        if !t.group().is_transitive() {
            return Err(Error::contract("tuple generates an intransitive group"));
        }
        Ok(t)
    }

    /// Parses one permutation per line in cycle notation. The first line may
    /// be a `degree N` header; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let (degree, perms) = crate::permcore::parse_generator_lines(text)?;
        Self::new(degree, perms)
    }

    /// Marks entry `i` as the fiber over ∞.
    pub fn with_infinity(mut self, i: usize) -> Result<Self> {
        if i >= self.perms.len() {
            return Err(Error::input(format!(
                "infinity index {i} out of range for a tuple of length {}",
                self.perms.len()
            )));
        }
        self.infinity = Some(i);
        Ok(self)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn infinity(&self) -> Option<usize> {
        self.infinity
    }

    pub fn group(&self) -> PermGroup {
        PermGroup::generated_by(self.degree, &self.perms)
    }

    pub fn ramification(&self) -> RamificationType {
        RamificationType::new(self.degree, self.perms.iter().map(|p| p.cycle_type()).collect())
            .expect("cycle types partition the degree")
    }

    pub fn conjugate_by(&self, x: &Permutation) -> BranchTuple {
        BranchTuple {
            degree: self.degree,
            perms: self.perms.iter().map(|p| p.conjugate_by(x)).collect(),
            infinity: self.infinity,
        }
    }

    /// Searches `group` for a product-one tuple of the given cycle types
    /// generating the whole group. `Ok(None)` means the budget ran out; it
    /// does not mean no such tuple exists.
    pub fn search(
        group: &PermGroup,
        types: &[Partition],
        budget: usize,
        seed: u64,
        caps: &Caps,
    ) -> Result<Option<BranchTuple>> {
        let n = group.degree();
        if types.is_empty() {
            return Ok(None);
        }
        let mut types: Vec<Partition> = types.to_vec();
        for t in &mut types {
            t.sort_unstable_by(|a, b| b.cmp(a));
            if t.iter().sum::<usize>() != n {
                return Err(Error::input(format!("cycle type {t:?} does not partition {n}")));
            }
        }
        let target = group.try_order()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pools: Option<HashMap<Partition, Vec<Permutation>>> =
            if target <= caps.element_enumeration {
                let mut pools: HashMap<Partition, Vec<Permutation>> = HashMap::new();
                for g in group.elements(caps.element_enumeration)? {
                    let ty = g.cycle_type();
                    if types.contains(&ty) {
                        pools.entry(ty).or_default().push(g);
                    }
                }
                if types.iter().any(|t| !pools.contains_key(t)) {
                    return Ok(None);
                }
                Some(pools)
            } else {
                None
            };
        let (last, init) = types.split_last().unwrap();
        for _ in 0..budget {
            let mut perms = Vec::with_capacity(types.len());
            for t in init {
                let pick = match &pools {
                    Some(p) => p[t].choose(&mut rng).unwrap().clone(),
                    None => match sample_of_type(group, t, &mut rng, 256) {
                        Some(x) => x,
                        None => break,
                    },
                };
                perms.push(pick);
            }
            if perms.len() != init.len() {
                continue;
            }
            let prod = perms
                .iter()
                .fold(Permutation::identity(n), |acc, p| acc.then(p));
            let closing = prod.inverse();
            if &closing.cycle_type() != last {
                continue;
            }
            perms.push(closing);
            let generated = PermGroup::generated_by(n, &perms);
            if generated.try_order()? == target && generated.is_transitive() {
                return Ok(Some(BranchTuple::new(n, perms)?));
            }
        }
        Ok(None)
    }
}

fn sample_of_type(
    group: &PermGroup,
    ty: &[usize],
    rng: &mut ChaCha8Rng,
    tries: usize,
) -> Option<Permutation> {
    (0..tries)
        .map(|_| group.random_element(rng))
        .find(|g| g.cycle_type() == ty)
}

pub fn tuple_genus(t: &BranchTuple) -> Result<usize> {
    let sum = t.perms.iter().map(perm_index).sum();
    genus_from_index_sum(t.degree, sum)
}

/// Cycle type on unordered pairs induced by a permutation of the given type.
pub fn two_set_cycle_type(c: &[usize]) -> Partition {
    let mut out = Vec::new();
    for (i, &a) in c.iter().enumerate() {
        // pairs inside one cycle
        if a % 2 == 1 {
            out.extend(std::iter::repeat_n(a, (a - 1) / 2));
        } else {
            out.extend(std::iter::repeat_n(a, (a - 2) / 2));
            out.push(a / 2);
        }
        // pairs across two cycles
        for &b in &c[i + 1..] {
            out.extend(std::iter::repeat_n(a.lcm(&b), a.gcd(&b)));
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// The ramification type induced on 2-sets.
pub fn two_set_ramification(r: &RamificationType) -> Result<RamificationType> {
    let n = r.degree();
    if n < 2 {
        return Err(Error::input("the 2-set action needs degree at least 2"));
    }
    let entries = r.entries().iter().map(|p| two_set_cycle_type(p)).collect();
    RamificationType::new(n * (n - 1) / 2, entries)
}

/// Genus zero and at most two points over ∞.
pub fn siegel_test(infinity_partition: &[usize], genus: usize) -> bool {
    genus == 0 && infinity_partition.len() <= 2
}

/// Genus of the tuple pushed through an action of the group it generates.
pub fn action_genus(t: &BranchTuple, act: &Action) -> Result<usize> {
    let images = t
        .perms
        .iter()
        .map(|p| act.image(p))
        .collect::<Result<Vec<_>>>()?;
    let degree = act.degree();
    let image_group = PermGroup::generated_by(degree, &images);
    if !image_group.is_transitive() {
        return Err(Error::contract("image of the tuple is intransitive"));
    }
    let sum = images.iter().map(perm_index).sum();
    genus_from_index_sum(degree, sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::partitions;
    use std::collections::HashSet;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn perm_index_examples() {
        assert_eq!(perm_index(&p(5, "(1 2 3 4 5)")), 4);
        assert_eq!(perm_index(&Permutation::identity(7)), 0);
        assert_eq!(perm_index(&Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap()), 2);
    }

    #[test]
    fn tuple_genus_examples() {
        let t = BranchTuple::new(2, vec![p(2, "(1 2)"); 4]).unwrap();
        assert_eq!(tuple_genus(&t).unwrap(), 1);
        let t = BranchTuple::new(1, vec![]).unwrap();
        assert_eq!(tuple_genus(&t).unwrap(), 0);
        let s5 = PermGroup::symmetric(5);
        let t = BranchTuple::search(&s5, &[vec![5], vec![4, 1], vec![2, 1, 1, 1]], 2000, 1, &Caps::default())
            .unwrap()
            .expect("polynomial triple exists");
        assert_eq!(tuple_genus(&t).unwrap(), 0);
        assert_eq!(ramification_genus(&t.ramification()).unwrap(), 0);
    }

    #[test]
    fn tuple_invariants_are_checked() {
        assert!(matches!(
            BranchTuple::new(3, vec![p(3, "(1 2)")]),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            BranchTuple::new(4, vec![p(4, "(1 2)"), p(4, "(1 2)")]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn ramification_genus_examples() {
        let r = RamificationType::parse("[l],[a,l-a],[1^{l-2},2] where l=21,a=1").unwrap();
        assert_eq!(ramification_genus(&r).unwrap(), 0);
        let r = RamificationType::new(6, vec![vec![6], vec![6]]).unwrap();
        assert_eq!(ramification_genus(&r).unwrap(), 0);
        let r = RamificationType::new(4, vec![vec![2, 2]; 4]).unwrap();
        assert_eq!(ramification_genus(&r).unwrap(), 1);
        let r = RamificationType::new(3, vec![vec![2, 1]]).unwrap();
        assert!(matches!(ramification_genus(&r), Err(Error::Inconsistent(_))));
        let r = RamificationType::new(3, vec![vec![2, 1], vec![2, 1]]).unwrap();
        assert!(matches!(ramification_genus(&r), Err(Error::Inconsistent(_))));
    }

    fn brute_two_set(sigma: &Permutation) -> Partition {
        let n = sigma.degree();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if seen.contains(&(i, j)) {
                    continue;
                }
                let mut len = 0;
                let (mut a, mut b) = (i, j);
                loop {
                    seen.insert((a.min(b), a.max(b)));
                    len += 1;
                    a = sigma.apply(a);
                    b = sigma.apply(b);
                    if (a.min(b), a.max(b)) == (i, j) {
                        break;
                    }
                }
                out.push(len);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    #[test]
    fn two_set_matches_brute_force() {
        for n in 2..=12 {
            for ty in partitions(n) {
                let sigma = crate::permcore::permutation_of_type(n, &ty);
                let fast = two_set_cycle_type(&ty);
                assert_eq!(fast.iter().sum::<usize>(), n * (n - 1) / 2);
                assert_eq!(fast, brute_two_set(&sigma), "type {ty:?}");
            }
        }
        assert_eq!(two_set_cycle_type(&[5]), vec![5, 5]);
        assert_eq!(two_set_cycle_type(&[2, 1, 1, 1]), vec![2, 2, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn siegel_examples() {
        assert!(siegel_test(&[21], 0));
        assert!(siegel_test(&[20, 1], 0));
        assert!(!siegel_test(&[3, 2, 1], 0));
        assert!(!siegel_test(&[21], 1));
    }

    #[test]
    fn action_genus_two_sets() {
        let s5 = PermGroup::symmetric(5);
        let t = BranchTuple::search(&s5, &[vec![5], vec![4, 1], vec![2, 1, 1, 1]], 2000, 7, &Caps::default())
            .unwrap()
            .unwrap();
        let act = Action::two_set(&t.group());
        let images: Vec<usize> = t.perms().iter().map(|x| perm_index(&act.image(x).unwrap())).collect();
        assert_eq!(images.iter().sum::<usize>(), 18);
        assert_eq!(action_genus(&t, &act).unwrap(), 0);
        let trivial = Action::on_cosets(&t.group(), &t.group(), &Caps::default()).unwrap();
        assert_eq!(action_genus(&t, &trivial).unwrap(), 0);
    }

    #[test]
    fn action_genus_dihedral_cosets() {
        let d4 = PermGroup::dihedral(4);
        let t = BranchTuple::search(&d4, &[vec![4], vec![2, 2], vec![2, 1, 1]], 500, 3, &Caps::default())
            .unwrap()
            .unwrap();
        // ⟨sr⟩: a reflection without fixed points
        let sr = p(4, "(1 2)(3 4)");
        assert!(d4.contains(&sr));
        let sub = PermGroup::new(4, vec![sr]).unwrap();
        let act = Action::on_cosets(&d4, &sub, &Caps::default()).unwrap();
        assert_eq!(act.degree(), 4);
        assert_eq!(action_genus(&t, &act).unwrap(), 0);
    }
}
