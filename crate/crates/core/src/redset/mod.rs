//! Candidate covers whose value sets make up the reducible values of a
//! cover, and the computer checks around them.

mod intransitive;
mod split;
mod wreath_scan;

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::genus::{action_genus, siegel_test, BranchTuple};
use crate::permcore::{core, is_solvable, Action, PermGroup};

pub use intransitive::{maximal_intransitive, IntransitiveClass};
pub use split::{direct_factor_test, DirectFactorReport, SplitTag, Splitting};
pub use wreath_scan::{
    wreath_scan, wreath_scan_brute, FlaggedTriple, ScannedClass, WreathScanReport, SCAN_ORDERS,
};

/// Arithmetic monodromy `a`, geometric monodromy `g ⊴ a`, and branch
/// cycles generating `g`.
#[derive(Debug, Clone)]
pub struct MonodromyPair {
    arithmetic: PermGroup,
    geometric: PermGroup,
    tuple: BranchTuple,
    quotient_solvable: bool,
}

impl MonodromyPair {
    pub fn new(arithmetic: PermGroup, geometric: PermGroup, tuple: BranchTuple, caps: &Caps) -> Result<Self> {
        let n = arithmetic.degree();
        if geometric.degree() != n || tuple.degree() != n {
            return Err(Error::contract("group and tuple degrees differ"));
        }
        if !geometric.is_subgroup_of(&arithmetic) || !geometric.is_normal_in(&arithmetic) {
            return Err(Error::contract("geometric monodromy is not normal in the arithmetic one"));
        }
        if !tuple.group().same_group(&geometric) {
            return Err(Error::contract("branch tuple does not generate the geometric monodromy"));
        }
        let quotient_solvable = if geometric.order() == arithmetic.order() {
            true
        } else {
            is_solvable(&Action::on_cosets(&arithmetic, &geometric, caps)?.image_group())
        };
        Ok(MonodromyPair {
            arithmetic,
            geometric,
            tuple,
            quotient_solvable,
        })
    }

    /// `a = g`, the geometric case.
    pub fn geometric_only(tuple: BranchTuple, caps: &Caps) -> Result<Self> {
        let g = tuple.group();
        Self::new(g.clone(), g, tuple, caps)
    }

    pub fn arithmetic(&self) -> &PermGroup {
        &self.arithmetic
    }

    pub fn geometric(&self) -> &PermGroup {
        &self.geometric
    }

    pub fn tuple(&self) -> &BranchTuple {
        &self.tuple
    }

    pub fn quotient_solvable(&self) -> bool {
        self.quotient_solvable
    }
}

/// A maximal intransitive `D` with `DG = A` and a cover `X_D` of genus at
/// most one.
#[derive(Debug, Clone, Serialize)]
pub struct RedCandidate {
    #[serde(skip)]
    pub subgroup: PermGroup,
    pub index: u128,
    pub genus: usize,
    /// `None` when no fiber over ∞ was designated.
    pub siegel: Option<bool>,
    pub dg_eq_a: bool,
    pub maximal_intransitive: bool,
    /// `|D ∩ G|`, which equals `|D|·|G|/|A|` when `DG = A`.
    pub d_cap_g_order: u128,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RedSetReport {
    pub degree: usize,
    pub candidates: Vec<RedCandidate>,
    /// Classes dropped because `DG ≠ A`.
    pub rejected_dg: usize,
    /// Classes dropped because `X_D` has genus at least two.
    pub rejected_genus: Vec<usize>,
    pub notes: Vec<String>,
}

fn printed_generators(d: &PermGroup, caps: &Caps) -> Vec<String> {
    let gens = d
        .canonical_generators(caps.element_enumeration)
        .unwrap_or_else(|_| d.generators().to_vec());
    gens.iter().map(|g| g.to_cycle_string()).collect()
}

/// The covers `X_D → P^1` through which reducible values arise, up to a
/// finite set: `D` runs over maximal intransitive subgroups of `A` with
/// `DG = A` and `X_D` of genus at most one.
///
/// The point stabilizer class is left out, since its cover is the
/// original one.
pub fn red_candidates(m: &MonodromyPair, caps: &Caps) -> Result<RedSetReport> {
    let a = &m.arithmetic;
    let n = a.degree();
    let point_order = a.order() / n as u128;
    let quotient = Action::on_cosets(a, &m.geometric, caps)?;
    let full_quotient = quotient.image_group().order();
    let mut report = RedSetReport {
        degree: n,
        candidates: Vec::new(),
        rejected_dg: 0,
        rejected_genus: Vec::new(),
        notes: vec!["values over the branch locus and its finite exceptional set are not tracked".into()],
    };
    for class in maximal_intransitive(a, caps)? {
        let d = &class.subgroup;
        if class.set.len() == 1 && class.order == point_order {
            report.notes.push("point stabilizer class omitted: its cover is the input cover".into());
            continue;
        }
        let images: Vec<_> = d
            .generators()
            .iter()
            .map(|x| quotient.image(x))
            .collect::<Result<_>>()?;
        let dg_eq_a = PermGroup::generated_by(quotient.degree(), &images).order() == full_quotient;
        if !dg_eq_a {
            report.rejected_dg += 1;
            continue;
        }
        let act = Action::on_cosets(a, d, caps)?;
        let genus = action_genus(&m.tuple, &act)?;
        if genus > 1 {
            report.rejected_genus.push(genus);
            continue;
        }
        let siegel = match m.tuple.infinity() {
            Some(i) => {
                let fiber = act.image(&m.tuple.perms()[i])?.cycle_type();
                Some(siegel_test(&fiber, genus))
            }
            None => None,
        };
        if class.possibly_duplicate {
            report
                .notes
                .push(format!("class of index {} may repeat an earlier class", class.index));
        }
        report.candidates.push(RedCandidate {
            index: class.index,
            genus,
            siegel,
            dg_eq_a,
            maximal_intransitive: true,
            d_cap_g_order: class.order * m.geometric.order() / a.order(),
            generators: printed_generators(d, caps),
            subgroup: d.clone(),
        });
    }
    Ok(report)
}

/// Whether the covers of `a/d1` and `a/d2` have the same Galois closure,
/// i.e. whether the two subgroups have the same core.
pub fn galois_closure_match(a: &PermGroup, d1: &PermGroup, d2: &PermGroup, caps: &Caps) -> Result<bool> {
    Ok(core(a, d1, caps)?.same_group(&core(a, d2, caps)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn chebyshev_t4() -> BranchTuple {
        let perms = vec![p(4, "(1 2 3 4)"), p(4, "(1 4)(2 3)"), p(4, "(1 3)")];
        BranchTuple::new(4, perms).unwrap().with_infinity(0).unwrap()
    }

    #[test]
    fn t4_fixture() {
        let caps = Caps::default();
        let t = chebyshev_t4();
        let types: Vec<_> = t.perms().iter().map(|x| x.cycle_type()).collect();
        assert_eq!(types, vec![vec![4], vec![2, 2], vec![2, 1, 1]]);
        let m = MonodromyPair::geometric_only(t, &caps).unwrap();
        let report = red_candidates(&m, &caps).unwrap();
        let mut summary: Vec<(u128, usize, Option<bool>)> =
            report.candidates.iter().map(|c| (c.index, c.genus, c.siegel)).collect();
        summary.sort();
        assert_eq!(summary, vec![(2, 0, Some(true)), (4, 0, Some(true))]);
        assert!(report.candidates.iter().all(|c| c.dg_eq_a));
    }

    #[test]
    fn s5_polynomial_tuple() {
        let caps = Caps::default();
        let perms = vec![p(5, "(1 2 3 4 5)"), p(5, "(2 5 4 3)"), p(5, "(1 5)")];
        let t = BranchTuple::new(5, perms).unwrap().with_infinity(0).unwrap();
        let m = MonodromyPair::geometric_only(t, &caps).unwrap();
        let report = red_candidates(&m, &caps).unwrap();
        // only the 2-set stabilizer remains; 2-set genus of ([5],[4,1],[2,1^3])
        assert_eq!(report.candidates.len(), 1);
        assert_eq!(report.candidates[0].index, 10);
        assert_eq!(report.candidates[0].genus, 0);
        assert!(report.notes.iter().any(|n| n.contains("point stabilizer")));
    }

    #[test]
    fn high_genus_gives_no_candidates() {
        let caps = Caps::default();
        let s5 = PermGroup::symmetric(5);
        let four = vec![4, 1];
        let t = BranchTuple::search(&s5, &[four.clone(), four.clone(), four.clone(), four], 20_000, 7, &caps)
            .unwrap()
            .expect("tuple of four 4-cycles generating S5");
        let m = MonodromyPair::geometric_only(t, &caps).unwrap();
        let report = red_candidates(&m, &caps).unwrap();
        assert!(report.candidates.is_empty());
        assert_eq!(report.rejected_genus, vec![5]);
    }

    #[test]
    fn dg_filter_in_the_arithmetic_case() {
        // A = D4 with G the regular Klein four-group
        let caps = Caps::default();
        let d4 = PermGroup::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap();
        let v4 = PermGroup::from_cycles(4, &["(1 3)(2 4)", "(1 2)(3 4)"]).unwrap();
        let perms = vec![p(4, "(1 3)(2 4)"), p(4, "(1 2)(3 4)"), p(4, "(1 4)(2 3)")];
        let t = BranchTuple::new(4, perms).unwrap();
        let m = MonodromyPair::new(d4, v4, t, &caps).unwrap();
        assert!(m.quotient_solvable());
        let report = red_candidates(&m, &caps).unwrap();
        // ⟨(1 2)(3 4)⟩ lies inside G
        assert_eq!(report.rejected_dg, 1);
        assert_eq!(report.candidates.len(), 1);
        let c = &report.candidates[0];
        assert_eq!((c.index, c.genus, c.d_cap_g_order, c.siegel), (2, 0, 2, None));
    }

    #[test]
    fn pair_contracts() {
        let caps = Caps::default();
        let d4 = PermGroup::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap();
        let not_normal = PermGroup::from_cycles(4, &["(1 3)"]).unwrap();
        let t = chebyshev_t4();
        assert!(matches!(
            MonodromyPair::new(d4.clone(), not_normal, t.clone(), &caps),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            MonodromyPair::new(d4, PermGroup::cyclic(4), t, &caps),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn galois_closures() {
        let caps = Caps::default();
        let d4 = PermGroup::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap();
        let a = PermGroup::from_cycles(4, &["(1 3)"]).unwrap();
        let b = PermGroup::from_cycles(4, &["(2 4)"]).unwrap();
        assert!(galois_closure_match(&d4, &a, &b, &caps).unwrap());
        assert!(galois_closure_match(&d4, &a, &a, &caps).unwrap());
        let s4 = PermGroup::symmetric(4);
        let a4 = PermGroup::alternating(4);
        let stab = crate::permcore::point_stabilizer(&s4, 0);
        assert!(!galois_closure_match(&s4, &a4, &stab, &caps).unwrap());
    }
}
