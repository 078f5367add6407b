//! Direct decompositions: subdirect powers of a simple group, normal
//! subgroups of direct products, socles of block kernels, and the descent
//! refinement of a point/block chain.

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permcore::{
    conjugacy_classes_brute, core, derived_subgroup, intersection, is_abelian, is_primitive,
    minimal_normal_subgroups, normal_closure, normal_subgroups, point_stabilizer,
    pointwise_stabilizer, quotient_has_center, socle, Action, PermGroup,
};

fn commute(a: &Permutation, b: &Permutation) -> bool {
    a.then(b) == b.then(a)
}

/// Whether `l` is nonabelian simple, as far as can be checked: perfect and
/// nonabelian always, and without proper nontrivial normal subgroups when
/// small enough to enumerate them.
fn check_simple(l: &PermGroup, caps: &Caps) -> Result<()> {
    if l.is_trivial() || is_abelian(l) {
        return Err(Error::precondition("factor group is abelian"));
    }
    if derived_subgroup(l).order() != l.order() {
        return Err(Error::precondition("factor group is not perfect"));
    }
    if l.try_order()? <= caps.element_enumeration && normal_subgroups(l, caps)?.len() != 2 {
        return Err(Error::precondition("factor group has a proper normal subgroup"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdirectDecomposition {
    /// Partition of the factor indices into diagonal blocks.
    pub blocks: Vec<Vec<usize>>,
    pub component_orders: Vec<u128>,
}

/// Decomposes a subgroup `k` of `L^I` that projects onto every factor.
/// Factor `i` acts on the point set `supports[i]`; `l` is the simple group.
pub fn subdirect_decompose(
    k: &PermGroup,
    l: &PermGroup,
    supports: &[Vec<usize>],
    caps: &Caps,
) -> Result<SubdirectDecomposition> {
    check_simple(l, caps)?;
    let l_order = l.try_order()?;
    let mut seen = vec![false; k.degree()];
    for s in supports {
        for &p in s {
            if p >= k.degree() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::input("supports overlap or exceed the degree"));
            }
        }
    }
    let mut kernels = Vec::new();
    for (i, s) in supports.iter().enumerate() {
        let proj = k.restrict_to(s)?;
        if proj.try_order()? != l_order {
            return Err(Error::precondition(format!(
                "projection {i} has order {}, not {l_order}",
                proj.order()
            )));
        }
        kernels.push(pointwise_stabilizer(k, s));
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..supports.len() {
        match blocks
            .iter_mut()
            .find(|b| kernels[b[0]].same_group(&kernels[i]))
        {
            Some(b) => b.push(i),
            None => blocks.push(vec![i]),
        }
    }
    let mut component_orders = Vec::new();
    for b in &blocks {
        let outside: Vec<usize> = (0..supports.len())
            .filter(|i| !b.contains(i))
            .flat_map(|i| supports[i].iter().copied())
            .collect();
        component_orders.push(pointwise_stabilizer(k, &outside).try_order()?);
    }
    let product = component_orders
        .iter()
        .try_fold(1u128, |acc, &o| acc.checked_mul(o));
    if component_orders.iter().any(|&o| o != l_order) || product != Some(k.try_order()?) {
        return Err(Error::inconsistent(format!(
            "components {component_orders:?} do not multiply to |k| = {}",
            k.order()
        )));
    }
    Ok(SubdirectDecomposition {
        blocks,
        component_orders,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitEntry {
    pub order: u128,
    pub order_in_a: u128,
    pub order_in_b: u128,
    pub splits: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoursatReport {
    /// Every quotient of `a` has trivial center.
    pub centerless_quotients: bool,
    pub normal_subgroups: Vec<SplitEntry>,
    pub failures: usize,
}

/// `a × b` acting on disjoint point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (na, nb) = (a.degree(), b.degree());
    let gens = a
        .generators()
        .iter()
        .map(|g| g.shifted(0, na + nb))
        .chain(b.generators().iter().map(|g| g.shifted(na, na + nb)))
        .collect();
    PermGroup::new(na + nb, gens).unwrap()
}

/// Checks `N = (N ∩ a) × (N ∩ b)` for every normal subgroup of `a × b`.
pub fn goursat_split_check(a: &PermGroup, b: &PermGroup, caps: &Caps) -> Result<GoursatReport> {
    let g = direct_product(a, b);
    let normals = normal_subgroups(&g, caps)?;
    let a_points: Vec<usize> = (0..a.degree()).collect();
    let b_points: Vec<usize> = (a.degree()..g.degree()).collect();
    let mut entries = Vec::new();
    for n in &normals {
        let in_a = pointwise_stabilizer(n, &b_points).try_order()?;
        let in_b = pointwise_stabilizer(n, &a_points).try_order()?;
        let order = n.try_order()?;
        entries.push(SplitEntry {
            order,
            order_in_a: in_a,
            order_in_b: in_b,
            splits: in_a * in_b == order,
        });
    }
    let mut centerless = true;
    for m in normal_subgroups(a, caps)? {
        if quotient_has_center(a, &m, caps)? {
            centerless = false;
            break;
        }
    }
    let failures = entries.iter().filter(|e| !e.splits).count();
    Ok(GoursatReport {
        centerless_quotients: centerless,
        normal_subgroups: entries,
        failures,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelSocle {
    pub kernel_order: u128,
    #[serde(skip)]
    pub socle: PermGroup,
    pub socle_order: u128,
    /// Diagonal components as sets of `(copy of L in soc U, block)`.
    pub partition: Vec<Vec<(usize, usize)>>,
    /// Whether the socle is a minimal normal subgroup; `None` when the
    /// group is too large to check.
    pub minimal_normal: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum BlockKernelSocle {
    KernelTrivial,
    Socle(KernelSocle),
}

/// Element of `g` mapping block 0 to each block, by breadth-first search.
fn block_transversal(g: &PermGroup, block_of: &[usize], blocks: &[Vec<usize>]) -> Vec<Permutation> {
    let mut reps: Vec<Option<Permutation>> = vec![None; blocks.len()];
    reps[0] = Some(g.identity());
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let b = queue[i];
        for x in g.generators() {
            let c = block_of[x.apply(blocks[b][0])];
            if reps[c].is_none() {
                reps[c] = Some(reps[b].as_ref().unwrap().then(x));
                queue.push(c);
            }
        }
        i += 1;
    }
    reps.into_iter().map(|r| r.expect("transitive on blocks")).collect()
}

/// Socle of the block kernel of an imprimitive group whose block action
/// restricted to a block is primitive with a unique, nonabelian minimal
/// normal subgroup.
pub fn block_kernel_socle(
    g: &PermGroup,
    blocks: &[Vec<usize>],
    caps: &Caps,
) -> Result<BlockKernelSocle> {
    let n = g.degree();
    if !g.is_transitive() {
        return Err(Error::precondition("group is not transitive"));
    }
    let size = blocks.first().map_or(0, Vec::len);
    if blocks.len() < 2 || size < 2 || blocks.iter().any(|b| b.len() != size) {
        return Err(Error::precondition("block system is trivial or uneven"));
    }
    let mut block_of = vec![usize::MAX; n];
    for (j, b) in blocks.iter().enumerate() {
        for &p in b {
            block_of[p] = j;
        }
    }
    for x in g.generators() {
        for b in blocks {
            let target = block_of[x.apply(b[0])];
            if b.iter().any(|&p| block_of[x.apply(p)] != target) {
                return Err(Error::precondition("partition is not invariant"));
            }
        }
    }
    let act = Action::on_blocks(g, blocks)?;
    let kernel = act.kernel();
    if kernel.is_trivial() {
        return Ok(BlockKernelSocle::KernelTrivial);
    }
    let stab0 = act.preimage(&point_stabilizer(&act.image_group(), 0))?;
    let u = stab0.restrict_to(&blocks[0])?;
    if !is_primitive(&u)? {
        return Err(Error::precondition("block action is not primitive"));
    }
    if u.try_order()? > caps.small_group {
        return Err(Error::precondition("block action too large to verify its type"));
    }
    let soc_u = socle(&u, caps)?;
    if !soc_u.exhaustive || soc_u.minimal_normal.len() != 1 || is_abelian(&soc_u.socle) {
        return Err(Error::precondition(
            "block action does not have a unique nonabelian minimal normal subgroup",
        ));
    }
    let copies = minimal_normal_subgroups(&soc_u.socle, caps)?;
    let embed = |p: &Permutation| {
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &pt) in blocks[0].iter().enumerate() {
            images[pt] = blocks[0][p.apply(i)];
        }
        Permutation::from_images(images).expect("block permutation")
    };
    let transversal = block_transversal(g, &block_of, blocks);
    // factor (i, j): copy i of L moved to block j
    let mut factors: Vec<((usize, usize), Vec<Permutation>)> = Vec::new();
    for (i, c) in copies.iter().enumerate() {
        let base: Vec<Permutation> = c.generators().iter().map(embed).collect();
        for (j, t) in transversal.iter().enumerate() {
            factors.push(((i, j), base.iter().map(|x| x.conjugate_by(t)).collect()));
        }
    }
    let soc_power = PermGroup::new(
        n,
        factors.iter().flat_map(|(_, gens)| gens.iter().cloned()).collect(),
    )?;
    let soc_k = intersection(&kernel, &soc_power, caps)?;
    let components = if soc_k.try_order()? <= caps.element_enumeration {
        minimal_normal_subgroups(&soc_k, caps)?
    } else {
        return Err(Error::resource(
            format!("socle of order {}", soc_k.order()),
            caps.element_enumeration,
        ));
    };
    let l_order = copies[0].try_order()?;
    let mut partition: Vec<Vec<(usize, usize)>> = components
        .iter()
        .map(|d| {
            let mut o: Vec<(usize, usize)> = factors
                .iter()
                .filter(|(_, gens)| {
                    d.generators()
                        .iter()
                        .any(|x| gens.iter().any(|y| !commute(x, y)))
                })
                .map(|(ij, _)| *ij)
                .collect();
            o.sort_unstable_by_key(|&(i, j)| (j, i));
            o
        })
        .collect();
    partition.sort();
    let product = components
        .iter()
        .try_fold(1u128, |acc, d| acc.checked_mul(d.order()));
    if components.iter().any(|d| d.order() != l_order) || product != Some(soc_k.order()) {
        return Err(Error::inconsistent("socle of the kernel is not a power of L"));
    }
    if !soc_k.is_normal_in(g) {
        return Err(Error::inconsistent("socle of the kernel is not normal"));
    }
    let minimal_normal = if g.try_order()? <= caps.element_enumeration {
        let minimal = minimal_normal_subgroups(g, caps)?;
        let ok = minimal.iter().any(|m| m.same_group(&soc_k));
        if !ok {
            return Err(Error::inconsistent("socle of the kernel is not minimal normal"));
        }
        Some(true)
    } else {
        None
    };
    Ok(BlockKernelSocle::Socle(KernelSocle {
        kernel_order: kernel.order(),
        socle_order: soc_k.order(),
        socle: soc_k,
        partition,
        minimal_normal,
    }))
}

#[derive(Debug, Clone)]
pub struct DescentWitness {
    pub g1n: PermGroup,
    pub g0n: PermGroup,
}

/// For `g1 ≤ g0 ≤ g` with `K = core(g0) ≠ 1` and a minimal normal `n` with
/// `n ∩ K = 1`, returns `g1·n` and `g0·n` when they give a chain
/// refinement: `g1·n ≠ g0·n`, `g0 ⊄ g1·n` and `g1·n ⊄ g0`. `None` when the
/// refinement fails.
pub fn descent_refinement(
    g: &PermGroup,
    g0: &PermGroup,
    g1: &PermGroup,
    n: &PermGroup,
    caps: &Caps,
) -> Result<Option<DescentWitness>> {
    if !g1.is_subgroup_of(g0) || !g0.is_subgroup_of(g) || !n.is_subgroup_of(g) {
        return Err(Error::precondition("subgroups are not nested inside g"));
    }
    let k = core(g, g0, caps)?;
    if k.is_trivial() {
        return Err(Error::precondition("core of g0 is trivial"));
    }
    if n.is_trivial() || !n.is_normal_in(g) {
        return Err(Error::precondition("n is not a nontrivial normal subgroup"));
    }
    for class in conjugacy_classes_brute(n, caps)? {
        if class.representative.is_identity() {
            continue;
        }
        let sub = PermGroup::new(g.degree(), vec![class.representative])?;
        if normal_closure(g, &sub)?.order() != n.order() {
            return Err(Error::precondition("n is not minimal normal"));
        }
    }
    if !intersection(n, &k, caps)?.is_trivial() {
        return Err(Error::precondition("n meets the core of g0"));
    }
    let g1n = g1.join(n.generators());
    let g0n = g0.join(n.generators());
    let ok = !g1n.same_group(&g0n) && !g0.is_subgroup_of(&g1n) && !g1n.is_subgroup_of(g0);
    Ok(ok.then_some(DescentWitness { g1n, g0n }))
}
