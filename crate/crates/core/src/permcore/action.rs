//! Group actions given by images of generators, and their kernels.

use std::collections::HashMap;

use serde::Serialize;

use super::chain::StabChain;
use super::group::PermGroup;
use super::normal::normal_closure_of;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionKind {
    Natural,
    Coset,
    TwoSet,
    Block,
    Product,
}

#[derive(Debug, Clone)]
enum Evaluator {
    Natural,
    Coset(CosetTable),
    TwoSet { n: usize },
    Block { block_of: Vec<usize> },
    Product { k: usize, m: usize },
}

/// A permutation action of a group, with images of its generators.
#[derive(Debug, Clone)]
pub struct Action {
    source: PermGroup,
    kind: ActionKind,
    degree: usize,
    images: Vec<Permutation>,
    eval: Evaluator,
}

impl Action {
    pub fn natural(source: &PermGroup) -> Action {
        Action {
            source: source.clone(),
            kind: ActionKind::Natural,
            degree: source.degree(),
            images: source.generators().to_vec(),
            eval: Evaluator::Natural,
        }
    }

    /// Action on unordered pairs `{i, j}`, `i < j`, listed lexicographically.
    pub fn two_set(source: &PermGroup) -> Action {
        let n = source.degree();
        let eval = Evaluator::TwoSet { n };
        let images = source
            .generators()
            .iter()
            .map(|g| two_set_image(n, g))
            .collect();
        Action {
            source: source.clone(),
            kind: ActionKind::TwoSet,
            degree: n * n.saturating_sub(1) / 2,
            images,
            eval,
        }
    }

    /// Action on the blocks of an invariant partition.
    pub fn on_blocks(source: &PermGroup, blocks: &[Vec<usize>]) -> Result<Action> {
        let n = source.degree();
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &p in block {
                if p >= n || block_of[p] != usize::MAX {
                    return Err(Error::input("blocks do not partition the points"));
                }
                block_of[p] = b;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::input("blocks do not cover every point"));
        }
        let eval = Evaluator::Block { block_of };
        let images = source
            .generators()
            .iter()
            .map(|g| eval_image(&eval, blocks.len(), g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Action {
            source: source.clone(),
            kind: ActionKind::Block,
            degree: blocks.len(),
            images,
            eval,
        })
    }

    /// Action on the right cosets `s·x` of `sub`.
    pub fn on_cosets(source: &PermGroup, sub: &PermGroup, caps: &Caps) -> Result<Action> {
        if !sub.is_subgroup_of(source) {
            return Err(Error::contract("subgroup is not contained in the group"));
        }
        let index = source.order() / sub.order();
        if index > caps.coset_index as u128 {
            return Err(Error::resource(
                format!("coset table of index {index}"),
                caps.coset_index as u128,
            ));
        }
        let table = CosetTable::enumerate(source, sub, index as usize)?;
        let images = source
            .generators()
            .iter()
            .map(|g| table.image(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Action {
            source: source.clone(),
            kind: ActionKind::Coset,
            degree: table.reps.len(),
            images,
            eval: Evaluator::Coset(table),
        })
    }

    /// Product action of a subgroup of `S_k wr S_m`, given in its
    /// imprimitive action on `k·m` points with blocks `{jk, .., jk+k-1}`,
    /// on the `k^m` tuples. Tuple `(x_0, .., x_{m-1})` is point
    /// `Σ x_j k^j`.
    pub fn product(source: &PermGroup, k: usize, m: usize, caps: &Caps) -> Result<Action> {
        if source.degree() != k * m {
            return Err(Error::contract("source degree is not k·m"));
        }
        let degree = checked_pow(k, m)
            .filter(|&d| d <= caps.product_degree)
            .ok_or_else(|| {
                Error::resource(
                    format!("product action of degree {k}^{m}"),
                    caps.product_degree as u128,
                )
            })?;
        let eval = Evaluator::Product { k, m };
        let images = source
            .generators()
            .iter()
            .map(|g| eval_image(&eval, degree, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Action {
            source: source.clone(),
            kind: ActionKind::Product,
            degree,
            images,
            eval,
        })
    }

    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    /// Images of the source generators, in generator order.
    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    /// Image of an arbitrary element of the source group.
    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        if !self.source.contains(g) {
            return Err(Error::contract(format!("{g} is not in the acting group")));
        }
        eval_image(&self.eval, self.degree, g)
    }

    pub fn image_group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.images.clone()).unwrap()
    }

    pub fn is_transitive(&self) -> bool {
        self.image_group().is_transitive()
    }

    /// Kernel of the action, as a subgroup of the source.
    pub fn kernel(&self) -> PermGroup {
        kernel_of_images(&self.source, &self.images)
    }

    /// Full preimage of a subgroup of the image group.
    pub fn preimage(&self, sub: &PermGroup) -> Result<PermGroup> {
        if sub.degree() != self.degree {
            return Err(Error::contract("subgroup degree differs from the action degree"));
        }
        let n = self.source.degree();
        let m = self.degree;
        let combined: Vec<Permutation> = self
            .source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, h)| combine(g, h))
            .collect();
        let chain = StabChain::build_over(n + m, &combined, n..n + m);
        let mut gens: Vec<Permutation> = chain
            .kernel
            .iter()
            .map(|k| k.restrict(0, n).expect("combined permutation"))
            .collect();
        for h in sub.generators() {
            let lifted = combine(&Permutation::identity(n), h);
            let (residue, _) = chain.sift_from(lifted, 0);
            if residue.restrict(n, m).is_none_or(|r| !r.is_identity()) {
                return Err(Error::contract(format!("{h} is not in the image group")));
            }
            // residue = lifted · u with u a product of transversal inverses,
            // so u^-1 = residue^-1 · lifted maps onto h.
            gens.push(residue.inverse().restrict(0, n).expect("combined permutation"));
        }
        let normal = normal_closure_of(&self.source, &gens[..chain.kernel.len()]);
        Ok(normal.join(&gens[chain.kernel.len()..]))
    }

    /// Coset representatives, for coset actions.
    pub fn coset_representatives(&self) -> Option<&[Permutation]> {
        match &self.eval {
            Evaluator::Coset(t) => Some(&t.reps),
            _ => None,
        }
    }
}

fn checked_pow(k: usize, m: usize) -> Option<usize> {
    (0..m).try_fold(1usize, |acc, _| acc.checked_mul(k))
}

fn two_set_index(n: usize, i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    // pairs (0,1),(0,2),..,(0,n-1),(1,2),..
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

fn two_set_image(n: usize, g: &Permutation) -> Permutation {
    let mut images = vec![0; n * n.saturating_sub(1) / 2];
    for i in 0..n {
        for j in i + 1..n {
            images[two_set_index(n, i, j)] = two_set_index(n, g.apply(i), g.apply(j));
        }
    }
    Permutation::from_images_unchecked(images)
}

fn eval_image(eval: &Evaluator, degree: usize, g: &Permutation) -> Result<Permutation> {
    match eval {
        Evaluator::Natural => Ok(g.clone()),
        Evaluator::TwoSet { n } => Ok(two_set_image(*n, g)),
        Evaluator::Block { block_of } => {
            let mut images = vec![usize::MAX; degree];
            for (p, &b) in block_of.iter().enumerate() {
                let target = block_of[g.apply(p)];
                if images[b] == usize::MAX {
                    images[b] = target;
                } else if images[b] != target {
                    return Err(Error::contract("partition is not invariant under the group"));
                }
            }
            Permutation::from_images(images)
                .map_err(|_| Error::contract("partition is not invariant under the group"))
        }
        Evaluator::Coset(table) => table.image(g),
        Evaluator::Product { k, m } => product_image(*k, *m, g),
    }
}

/// Splits an element of `S_k wr S_m` (imprimitive form) into its base
/// coordinates and top permutation: block `j` goes to block `top[j]` via
/// `base[j]`.
pub(crate) fn wreath_coordinates(
    k: usize,
    m: usize,
    g: &Permutation,
) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
    let mut top = vec![0; m];
    let mut base = vec![vec![0; k]; m];
    for j in 0..m {
        let target = g.apply(j * k) / k;
        top[j] = target;
        for x in 0..k {
            let y = g.apply(j * k + x);
            if y / k != target {
                return Err(Error::contract("element does not preserve the block system"));
            }
            base[j][x] = y % k;
        }
    }
    Ok((base, top))
}

fn product_image(k: usize, m: usize, g: &Permutation) -> Result<Permutation> {
    let (base, top) = wreath_coordinates(k, m, g)?;
    let degree = checked_pow(k, m).expect("checked at construction");
    let mut powers = vec![1usize; m];
    for j in 1..m {
        powers[j] = powers[j - 1] * k;
    }
    let mut images = vec![0; degree];
    for (point, image) in images.iter_mut().enumerate() {
        let mut rest = point;
        let mut out = 0;
        for j in 0..m {
            let x = rest % k;
            rest /= k;
            out += base[j][x] * powers[top[j]];
        }
        *image = out;
    }
    Ok(Permutation::from_images_unchecked(images))
}

/// Kernel of the homomorphism sending the generators of `source` to
/// `images`. The images are assumed to define a homomorphism.
fn combine(g: &Permutation, h: &Permutation) -> Permutation {
    let n = g.degree();
    let mut v = g.images().to_vec();
    v.extend(h.images().iter().map(|&x| x + n));
    Permutation::from_images_unchecked(v)
}

pub(crate) fn kernel_of_images(source: &PermGroup, images: &[Permutation]) -> PermGroup {
    let n = source.degree();
    let m = images.first().map_or(0, Permutation::degree);
    let combined: Vec<Permutation> = source
        .generators()
        .iter()
        .zip(images)
        .map(|(g, h)| combine(g, h))
        .collect();
    let chain = StabChain::build_over(n + m, &combined, n..n + m);
    let residues: Vec<Permutation> = chain
        .kernel
        .iter()
        .map(|k| k.restrict(0, n).expect("combined permutation"))
        .filter(|k| !k.is_identity())
        .collect();
    normal_closure_of(source, &residues)
}

/// Right cosets `s·x` of a subgroup, keyed by a canonical representative.
#[derive(Debug, Clone)]
pub(crate) struct CosetTable {
    sub: PermGroup,
    reps: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl CosetTable {
    fn enumerate(group: &PermGroup, sub: &PermGroup, expected: usize) -> Result<Self> {
        let mut table = CosetTable {
            sub: sub.clone(),
            reps: Vec::with_capacity(expected),
            index: HashMap::with_capacity(expected),
        };
        let id = table.canonical(&group.identity());
        table.index.insert(id.clone(), 0);
        table.reps.push(id);
        let mut i = 0;
        while i < table.reps.len() {
            for g in group.generators() {
                let next = table.canonical(&table.reps[i].then(g));
                if !table.index.contains_key(&next) {
                    table.index.insert(next.clone(), table.reps.len());
                    table.reps.push(next);
                }
            }
            i += 1;
        }
        if table.reps.len() != expected {
            return Err(Error::contract(format!(
                "coset enumeration found {} cosets, expected {expected}",
                table.reps.len()
            )));
        }
        Ok(table)
    }

    /// Canonical element of the coset `sub·g`: the one whose images of the
    /// subgroup's base points are lexicographically least.
    fn canonical(&self, g: &Permutation) -> Permutation {
        let chain = self.sub.chain();
        let mut g = g.clone();
        for level in &chain.levels {
            let best = level
                .orbit
                .iter()
                .copied()
                .min_by_key(|&d| g.apply(d))
                .expect("orbit nonempty");
            g = level.rep(best).expect("orbit point").then(&g);
        }
        g
    }

    fn lookup(&self, g: &Permutation) -> Result<usize> {
        self.index
            .get(&self.canonical(g))
            .copied()
            .ok_or_else(|| Error::contract("element outside the acting group"))
    }

    fn image(&self, g: &Permutation) -> Result<Permutation> {
        let images = self
            .reps
            .iter()
            .map(|r| self.lookup(&r.then(g)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Permutation::from_images_unchecked(images))
    }
}

/// Transitive action on the cosets of `sub`.
pub fn coset_action(group: &PermGroup, sub: &PermGroup, caps: &Caps) -> Result<Action> {
    Action::on_cosets(group, sub, caps)
}
