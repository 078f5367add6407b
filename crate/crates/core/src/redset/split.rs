//! Splitting an imprimitive group off a minimal normal subgroup that
//! meets the block kernel trivially.

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permcore::{minimal_normal_subgroups_sampled, socle, Action, PermGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitTag {
    /// The block kernel is trivial, so every minimal normal subgroup
    /// qualifies.
    KernelTrivial,
    Split,
    NoSplitting,
}

/// `a` embeds into `a/N × a/K` for a minimal normal `N` with `N ∩ K = 1`.
#[derive(Debug, Clone, Serialize)]
pub struct Splitting {
    pub n_order: u128,
    pub quotient_by_n: u128,
    pub quotient_by_k: u128,
    /// Order of the image of `a` in `a/N × a/K`, equal to `|a|`.
    pub embedding_order: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectFactorReport {
    pub tag: SplitTag,
    pub group_order: u128,
    pub kernel_order: u128,
    pub splittings: Vec<Splitting>,
    /// Whether all minimal normal subgroups were examined.
    pub exhaustive: bool,
}

fn combine(g: &Permutation, h: &Permutation) -> Permutation {
    let n = g.degree();
    let images = g
        .images()
        .iter()
        .copied()
        .chain(h.images().iter().map(|&x| x + n))
        .collect();
    Permutation::from_images_unchecked(images)
}

/// For each minimal normal subgroup `N` of `a` meeting the kernel `K` of
/// the action on `blocks` trivially, verifies that `a → a/N × a/K` is
/// injective by computing the order of its image.
pub fn direct_factor_test(a: &PermGroup, blocks: &[Vec<usize>], caps: &Caps) -> Result<DirectFactorReport> {
    let block_act = Action::on_blocks(a, blocks)?;
    let kernel = block_act.kernel();
    let order = a.try_order()?;
    let (minimal, exhaustive) = if order <= caps.small_group {
        let s = socle(a, caps)?;
        (s.minimal_normal, s.exhaustive)
    } else {
        (minimal_normal_subgroups_sampled(a, 48), false)
    };
    let mut splittings = Vec::new();
    for n in &minimal {
        if !Action::on_blocks(n, blocks)?.kernel().is_trivial() {
            continue;
        }
        let quotient = Action::on_cosets(a, n, caps)?;
        let images: Vec<Permutation> = quotient
            .generator_images()
            .iter()
            .zip(block_act.generator_images())
            .map(|(x, y)| combine(x, y))
            .collect();
        let embedded = PermGroup::new(quotient.degree() + block_act.degree(), images)?;
        let embedding_order = embedded.try_order()?;
        if embedding_order != order {
            return Err(Error::inconsistent(format!(
                "N ∩ K = 1 but the embedding image has order {embedding_order}, not {order}"
            )));
        }
        splittings.push(Splitting {
            n_order: n.order(),
            quotient_by_n: order / n.order(),
            quotient_by_k: order / kernel.order(),
            embedding_order,
        });
    }
    let tag = if kernel.is_trivial() {
        SplitTag::KernelTrivial
    } else if splittings.is_empty() {
        SplitTag::NoSplitting
    } else {
        SplitTag::Split
    };
    Ok(DirectFactorReport {
        tag,
        group_order: order,
        kernel_order: kernel.order(),
        splittings,
        exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::{wreath_product, WreathKind};

    fn rows(k: usize, m: usize) -> Vec<Vec<usize>> {
        (0..m).map(|j| (j * k..(j + 1) * k).collect()).collect()
    }

    /// `S5 × S5` on the 5×5 grid, point `5i + j`.
    fn grid() -> PermGroup {
        let s5 = PermGroup::symmetric(5);
        let mut gens = Vec::new();
        for g in s5.generators() {
            gens.push(Permutation::from_images((0..25).map(|p| 5 * g.apply(p / 5) + p % 5).collect()).unwrap());
            gens.push(Permutation::from_images((0..25).map(|p| p / 5 * 5 + g.apply(p % 5)).collect()).unwrap());
        }
        PermGroup::new(25, gens).unwrap()
    }

    #[test]
    fn grid_splits() {
        let report = direct_factor_test(&grid(), &rows(5, 5), &Caps::default()).unwrap();
        assert_eq!(report.tag, SplitTag::Split);
        assert_eq!(report.kernel_order, 120);
        assert_eq!(report.splittings.len(), 1);
        let s = &report.splittings[0];
        assert_eq!((s.n_order, s.quotient_by_n, s.quotient_by_k, s.embedding_order), (60, 240, 120, 14400));
        assert!(report.exhaustive);
    }

    #[test]
    fn wreath_does_not_split() {
        let s5 = PermGroup::symmetric(5);
        let w = wreath_product(&s5, &s5, WreathKind::Imprimitive, &Caps::default()).unwrap();
        let report = direct_factor_test(&w, &rows(5, 5), &Caps::default()).unwrap();
        assert_eq!(report.tag, SplitTag::NoSplitting);
        assert_eq!(report.kernel_order, 120u128.pow(5));
        assert!(!report.exhaustive);
    }

    #[test]
    fn trivial_kernel() {
        // singleton blocks
        let c2 = PermGroup::from_cycles(2, &["(1 2)"]).unwrap();
        let report = direct_factor_test(&c2, &[vec![0], vec![1]], &Caps::default()).unwrap();
        assert_eq!(report.tag, SplitTag::KernelTrivial);
        assert_eq!(report.splittings.len(), 1);
    }
}
