//! Deterministic Schreier–Sims.
//!
//! The chain is built over a *base domain*, a range of points eligible as
//! base points. For an ordinary group the domain is every point. When the
//! permutations carry a second block of points encoding an action (the
//! images of the group elements under a homomorphism), restricting the
//! domain to that block turns the chain into a chain for the image, and
//! sifting residues that act trivially on the block are kernel elements.

use std::collections::HashSet;
use std::ops::Range;

use rand::Rng;

use crate::perm::Permutation;

const ABSENT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base_point: usize,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    /// `position[p]` indexes `reps`/`inv_reps` for orbit points.
    position: Vec<u32>,
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
    checked: HashSet<(u32, u32)>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut position = vec![ABSENT; degree];
        position[base_point] = 0;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            position,
            reps: vec![Permutation::identity(degree)],
            inv_reps: vec![Permutation::identity(degree)],
            checked: HashSet::new(),
        }
    }

    /// Transversal element mapping the base point to `p`.
    pub fn rep(&self, p: usize) -> Option<&Permutation> {
        match self.position[p] {
            ABSENT => None,
            i => Some(&self.reps[i as usize]),
        }
    }

    pub fn inv_rep(&self, p: usize) -> Option<&Permutation> {
        match self.position[p] {
            ABSENT => None,
            i => Some(&self.inv_reps[i as usize]),
        }
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    fn add_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        self.extend_orbit();
    }

    fn extend_orbit(&mut self) {
        let mut idx = 0;
        while idx < self.orbit.len() {
            let p = self.orbit[idx];
            for s in 0..self.gens.len() {
                let q = self.gens[s].apply(p);
                if self.position[q] == ABSENT {
                    let rep = self.reps[idx].then(&self.gens[s]);
                    self.position[q] = self.orbit.len() as u32;
                    self.orbit.push(q);
                    self.inv_reps.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            idx += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    domain: Range<usize>,
    pub levels: Vec<Level>,
    /// Nontrivial elements acting trivially on the base domain.
    pub kernel: Vec<Permutation>,
}

impl StabChain {
    pub fn build(degree: usize, gens: &[Permutation]) -> Self {
        Self::build_over(degree, gens, 0..degree)
    }

    pub fn build_over(degree: usize, gens: &[Permutation], domain: Range<usize>) -> Self {
        let mut chain = StabChain {
            degree,
            domain,
            levels: Vec::new(),
            kernel: Vec::new(),
        };
        for g in gens {
            let (y, j) = chain.sift_from(g.clone(), 0);
            chain.absorb(y, j, 0);
        }
        chain.complete();
        chain
    }

    fn first_moved_in_domain(&self, g: &Permutation) -> Option<usize> {
        self.domain.clone().find(|&p| g.apply(p) != p)
    }

    /// Adds a sifting residue `y` that stopped at level `j`. Returns the
    /// level the algorithm must resume at, or `None` when `y` was a kernel
    /// element or the identity.
    fn absorb(&mut self, y: Permutation, j: usize, from: usize) -> Option<usize> {
        if j == self.levels.len() {
            match self.first_moved_in_domain(&y) {
                Some(b) => self.levels.push(Level::new(self.degree, b)),
                None => {
                    if !y.is_identity() {
                        self.kernel.push(y);
                    }
                    return None;
                }
            }
        }
        for l in from..=j {
            self.levels[l].add_gen(y.clone());
        }
        Some(j)
    }

    /// Strips `g` through levels `start..`. Returns the residue and the
    /// level at which stripping stopped (`levels.len()` if it went through).
    pub fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let image = g.apply(level.base_point);
            match level.inv_rep(image) {
                Some(inv) => g = g.then(inv),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            match self.next_failing_generator(level) {
                Some((y, j)) => {
                    if let Some(resume) = self.absorb(y, j, level + 1) {
                        i = resume as isize;
                    }
                }
                None => i -= 1,
            }
        }
    }

    fn next_failing_generator(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let mut a = 0;
        while a < self.levels[i].orbit.len() {
            for s in 0..self.levels[i].gens.len() {
                if !self.levels[i].checked.insert((a as u32, s as u32)) {
                    continue;
                }
                let lvl = &self.levels[i];
                let beta = lvl.orbit[a];
                let x = &lvl.gens[s];
                let gamma = x.apply(beta);
                let h = lvl.reps[a].then(x).then(lvl.inv_rep(gamma).expect("orbit closed"));
                let (y, j) = self.sift_from(h, i + 1);
                if j < self.levels.len() || self.first_moved_in_domain(&y).is_some() {
                    return Some((y, j));
                }
                if !y.is_identity() {
                    self.kernel.push(y);
                }
            }
            a += 1;
        }
        None
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Order of the group acting on the base domain. `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (y, j) = self.sift_from(g.clone(), 0);
        j == self.levels.len() && y.is_identity()
    }

    /// Strong generators, deduplicated, in level order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Uniformly random element, as a product of random coset
    /// representatives.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let rep = &level.reps()[rng.gen_range(0..level.reps().len())];
            g = g.then(rep);
        }
        g
    }

    /// Calls `f` on every element of the group.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn rec(
            levels: &[Level],
            depth: usize,
            acc: &Permutation,
            f: &mut dyn FnMut(&Permutation),
        ) {
            if depth == 0 {
                f(acc);
                return;
            }
            let level = &levels[depth - 1];
            for rep in level.reps() {
                rec(levels, depth - 1, &acc.then(rep), f);
            }
        }
        let id = Permutation::identity(self.degree);
        rec(&self.levels, self.levels.len(), &id, &mut f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn symmetric_and_dihedral_orders() {
        let s4 = StabChain::build(4, &[p(4, "(1 2 3 4)"), p(4, "(1 2)")]);
        assert_eq!(s4.order(), Some(24));
        let d4 = StabChain::build(4, &[p(4, "(1 2 3 4)"), p(4, "(1 3)")]);
        assert_eq!(d4.order(), Some(8));
        assert!(d4.contains(&p(4, "(2 4)")));
        assert!(!d4.contains(&p(4, "(1 2)")));
    }

    #[test]
    fn restricted_domain_collects_kernel() {
        // S_3 on {0,1,2} paired with its sign on {3,4}.
        let g1 = p(5, "(1 2 3)");
        let g2 = p(5, "(1 2)(4 5)");
        let chain = StabChain::build_over(5, &[g1, g2], 3..5);
        assert_eq!(chain.order(), Some(2));
        assert!(!chain.kernel.is_empty());
        assert!(chain.kernel.iter().all(|k| k.apply(3) == 3 && k.apply(4) == 4));
    }

    #[test]
    fn element_enumeration_counts() {
        let a5 = StabChain::build(5, &[p(5, "(1 2 3 4 5)"), p(5, "(1 2 3)")]);
        let mut seen = HashSet::new();
        a5.for_each_element(|g| {
            seen.insert(g.clone());
        });
        assert_eq!(seen.len(), 60);
    }
}
