//! Subgroup chains and the two transitivity criteria built on them.
//!
//! Both criteria take a chain `H_0 < … < H_r = G` (with `G` acting on the
//! cosets of `H_0`) and a chain `U_0 < … < U_s = G`, check the step
//! hypotheses, and only then certify that `U_0` is transitive on `G/H_0`.
//! Every certificate is cross-checked against a direct orbit computation.

use std::sync::OnceLock;

use serde::Serialize;

use super::factors::no_nonsolvable_proper_quotient;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::{parse_cycles_at, Permutation};
use crate::permcore::{is_abelian, is_primitive, is_solvable, socle, Action, PermGroup};

/// Classification of one chain step: `H_i` acting on the cosets of
/// `H_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepClass {
    pub step: usize,
    pub degree: usize,
    /// The image is primitive, i.e. `H_{i-1}` is maximal in `H_i`.
    pub primitive: bool,
    pub solvable: bool,
}

/// `H_0 < H_1 < … < H_r = G`.
#[derive(Debug, Clone)]
pub struct ChainSpec {
    group: PermGroup,
    subgroups: Vec<PermGroup>,
    classes: OnceLock<Vec<StepClass>>,
}

impl ChainSpec {
    /// Builds the chain from ascending subgroups; `group` is appended as the
    /// top unless the last subgroup already equals it.
    pub fn new(group: PermGroup, mut subgroups: Vec<PermGroup>) -> Result<Self> {
        if subgroups.last().is_none_or(|h| !h.same_group(&group)) {
            subgroups.push(group.clone());
        }
        for (i, h) in subgroups.iter().enumerate() {
            if h.degree() != group.degree() {
                return Err(Error::input(format!("chain member {i} has the wrong degree")));
            }
        }
        for i in 1..subgroups.len() {
            let (lo, hi) = (&subgroups[i - 1], &subgroups[i]);
            if !lo.is_subgroup_of(hi) {
                return Err(Error::input(format!(
                    "chain member {} is not contained in member {i}",
                    i - 1
                )));
            }
            if lo.try_order()? == hi.try_order()? {
                return Err(Error::input(format!(
                    "chain members {} and {i} are equal",
                    i - 1
                )));
            }
        }
        Ok(ChainSpec {
            group,
            subgroups,
            classes: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// `H_0, …, H_r`.
    pub fn members(&self) -> &[PermGroup] {
        &self.subgroups
    }

    pub fn bottom(&self) -> &PermGroup {
        &self.subgroups[0]
    }

    /// Number of steps `r`.
    pub fn steps(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Action of `H_i` on the cosets of `H_{i-1}`, for `1 ≤ i ≤ r`.
    pub fn step_action(&self, i: usize, caps: &Caps) -> Result<Action> {
        if i == 0 || i > self.steps() {
            return Err(Error::input(format!("no chain step {i}")));
        }
        Action::on_cosets(&self.subgroups[i], &self.subgroups[i - 1], caps)
    }

    /// Step classifications, computed once.
    pub fn classify(&self, caps: &Caps) -> Result<&[StepClass]> {
        if let Some(c) = self.classes.get() {
            return Ok(c);
        }
        let mut out = Vec::new();
        for i in 1..=self.steps() {
            let image = self.step_action(i, caps)?.image_group();
            out.push(StepClass {
                step: i,
                degree: image.degree(),
                primitive: is_primitive(&image)?,
                solvable: is_solvable(&image),
            });
        }
        Ok(self.classes.get_or_init(|| out))
    }

    /// Index of the first step whose bottom is not maximal, if any.
    pub fn first_non_maximal_step(&self, caps: &Caps) -> Result<Option<usize>> {
        Ok(self.classify(caps)?.iter().find(|c| !c.primitive).map(|c| c.step))
    }

    /// Parses a group file followed by `subgroup: (cycles); (cycles)` lines
    /// in ascending order. `subgroup:` with nothing (or `()`) after it is the
    /// trivial group.
    pub fn parse(text: &str) -> Result<Self> {
        let mut group_text = String::new();
        let mut sub_lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let trimmed = raw.trim_start();
            if let Some(rest) = trimmed.strip_prefix("subgroup:") {
                let col = raw.len() - rest.len();
                sub_lines.push((idx + 1, col, rest.split('#').next().unwrap().to_string()));
                group_text.push('\n');
            } else {
                group_text.push_str(raw);
                group_text.push('\n');
            }
        }
        let group = crate::permcore::parse_group(&group_text)?;
        let n = group.degree();
        let mut subgroups = Vec::new();
        for (line, col, rest) in sub_lines {
            let mut gens = Vec::new();
            let mut offset = col;
            for piece in rest.split(';') {
                let lead = piece.len() - piece.trim_start().len();
                let body = piece.trim();
                if !body.is_empty() {
                    let p = parse_cycles_at(n, body, line).map_err(|e| match e {
                        Error::Parse { line, column, message } => {
                            Error::parse(line, column + offset + lead, message)
                        }
                        other => other,
                    })?;
                    gens.push(p);
                }
                offset += piece.len() + 1;
            }
            let h = PermGroup::new(n, gens)?;
            if !h.is_subgroup_of(&group) {
                return Err(Error::parse(line, 1, "subgroup is not contained in the group"));
            }
            subgroups.push(h);
        }
        ChainSpec::new(group, subgroups)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// Hypotheses verified; `U_0` is transitive on `G/H_0`.
    TransitiveCertified,
    /// A hypothesis failed; nothing is concluded.
    HypothesisViolated { step: String, reason: String },
    /// A hypothesis could not be decided within the caps.
    Unverified { step: String, reason: String },
    /// Run without the kernel-distinctness hypothesis and the conclusion
    /// failed.
    RefutedBeyondLemma,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub verdict: Verdict,
    /// `U_0` is transitive on `G/H_0`, computed directly from orbits.
    pub direct_transitive: bool,
    pub coset_degree: usize,
    /// Result obtained without checking kernel distinctness.
    pub beyond_lemma: bool,
}

fn same_top(h: &ChainSpec, u: &ChainSpec) -> Result<()> {
    if !h.group().same_group(u.group()) {
        return Err(Error::input("the two chains end in different groups"));
    }
    Ok(())
}

fn direct_check(h: &ChainSpec, u: &ChainSpec, caps: &Caps) -> Result<(bool, usize)> {
    let act = Action::on_cosets(h.group(), h.bottom(), caps)?;
    let images = u
        .bottom()
        .generators()
        .iter()
        .map(|x| act.image(x))
        .collect::<Result<Vec<Permutation>>>()?;
    let image = PermGroup::generated_by(act.degree(), &images);
    Ok((image.is_transitive(), act.degree()))
}

fn conclude(
    verdict: Verdict,
    h: &ChainSpec,
    u: &ChainSpec,
    beyond_lemma: bool,
    caps: &Caps,
) -> Result<TransitivityReport> {
    let (direct_transitive, coset_degree) = direct_check(h, u, caps)?;
    let verdict = match verdict {
        Verdict::TransitiveCertified if !direct_transitive => {
            if beyond_lemma {
                Verdict::RefutedBeyondLemma
            } else {
                return Err(Error::inconsistent(
                    "certified transitivity disagrees with the direct orbit computation",
                ));
            }
        }
        v => v,
    };
    Ok(TransitivityReport {
        verdict,
        direct_transitive,
        coset_degree,
        beyond_lemma,
    })
}

fn violated(step: String, reason: impl Into<String>) -> Verdict {
    Verdict::HypothesisViolated {
        step,
        reason: reason.into(),
    }
}

/// Shared H-chain and U-chain step checks. Returns the first failure.
fn check_steps(
    h: &ChainSpec,
    u: &ChainSpec,
    caps: &Caps,
    h_check: &dyn Fn(usize, &StepClass, &PermGroup) -> Result<Option<Verdict>>,
    u_check: &dyn Fn(usize, &StepClass, &PermGroup) -> Result<Option<Verdict>>,
) -> Result<Option<Verdict>> {
    if h.steps() == 0 {
        return Ok(Some(violated("H".into(), "the H-chain has no steps")));
    }
    for (chain, name, check) in [(h, "H", h_check), (u, "U", u_check)] {
        let classes = chain.classify(caps)?;
        for c in classes {
            let label = format!("{name} step {}", c.step);
            if !c.primitive {
                return Ok(Some(violated(label, "step is not maximal")));
            }
            let image = chain.step_action(c.step, caps)?.image_group();
            if let Some(v) = check(c.step, c, &image)? {
                return Ok(Some(v));
            }
        }
    }
    Ok(None)
}

/// Transitivity when every H-step acts nonsolvably and every U-step acts
/// solvably.
pub fn transitive_by_solvable_quotient(
    h: &ChainSpec,
    u: &ChainSpec,
    caps: &Caps,
) -> Result<TransitivityReport> {
    same_top(h, u)?;
    if u.steps() == 0 {
        return conclude(Verdict::TransitiveCertified, h, u, false, caps);
    }
    let failure = check_steps(
        h,
        u,
        caps,
        &|i, c, _| {
            Ok(c.solvable
                .then(|| violated(format!("H step {i}"), "action is solvable")))
        },
        &|i, c, _| {
            Ok((!c.solvable).then(|| violated(format!("U step {i}"), "action is nonsolvable")))
        },
    )?;
    conclude(
        failure.unwrap_or(Verdict::TransitiveCertified),
        h,
        u,
        false,
        caps,
    )
}

/// Whether a primitive group is affine (has an abelian socle). `None` when
/// this cannot be decided within the caps.
pub fn is_affine_primitive(image: &PermGroup, caps: &Caps) -> Result<Option<bool>> {
    if is_solvable(image) {
        return Ok(Some(true));
    }
    let n = image.degree();
    let p = (2..=n).find(|d| n % d == 0).unwrap_or(1);
    let mut r = n;
    while p > 1 && r % p == 0 {
        r /= p;
    }
    // An abelian socle is regular, so the degree must be a prime power;
    // nonsolvable groups of prime degree are almost simple.
    if r != 1 || p == n {
        return Ok(Some(false));
    }
    if image.try_order()? > caps.element_enumeration {
        return Ok(None);
    }
    let s = socle(image, caps)?;
    Ok(Some(s.minimal_normal.iter().any(is_abelian)))
}

/// Transitivity when H-steps are nonsolvable without nonsolvable proper
/// quotients, U-steps are affine, and the cores of `H_0, …, H_{r-1}` are
/// pairwise distinct. With `require_distinct_kernels = false` the last
/// hypothesis is skipped and the report is marked `beyond_lemma`.
pub fn transitive_by_affine_chain(
    h: &ChainSpec,
    u: &ChainSpec,
    require_distinct_kernels: bool,
    caps: &Caps,
) -> Result<TransitivityReport> {
    same_top(h, u)?;
    let beyond = !require_distinct_kernels;
    if u.steps() == 0 {
        return conclude(Verdict::TransitiveCertified, h, u, false, caps);
    }
    let failure = check_steps(
        h,
        u,
        caps,
        &|i, c, image| {
            if c.solvable {
                return Ok(Some(violated(format!("H step {i}"), "action is solvable")));
            }
            match no_nonsolvable_proper_quotient(image, caps) {
                Ok(true) => Ok(None),
                Ok(false) => Ok(Some(violated(
                    format!("H step {i}"),
                    "action has a nontrivial nonsolvable quotient",
                ))),
                Err(e) if e.is_resource() => Ok(Some(Verdict::Unverified {
                    step: format!("H step {i}"),
                    reason: e.to_string(),
                })),
                Err(e) => Err(e),
            }
        },
        &|i, _, image| {
            Ok(match is_affine_primitive(image, caps)? {
                Some(true) => None,
                Some(false) => Some(violated(format!("U step {i}"), "action is not affine")),
                None => Some(Verdict::Unverified {
                    step: format!("U step {i}"),
                    reason: "socle type undecided within caps".into(),
                }),
            })
        },
    )?;
    if let Some(v) = failure {
        return conclude(v, h, u, beyond, caps);
    }
    if require_distinct_kernels {
        let mut cores: Vec<PermGroup> = Vec::new();
        for (i, hi) in h.members()[..h.steps()].iter().enumerate() {
            let core = Action::on_cosets(h.group(), hi, caps)?.kernel();
            if let Some(j) = cores.iter().position(|c| c.same_group(&core)) {
                let v = violated(
                    "kernels".into(),
                    format!("cores of H_{j} and H_{i} coincide"),
                );
                return conclude(v, h, u, beyond, caps);
            }
            cores.push(core);
        }
    }
    conclude(Verdict::TransitiveCertified, h, u, beyond, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::{point_stabilizer, wreath_product, WreathKind};

    fn caps() -> Caps {
        Caps::default()
    }

    /// `S_k wr S_m` with point < block < G, plus the group itself.
    fn wreath_chain(k: usize, m: usize) -> (PermGroup, ChainSpec) {
        let g = wreath_product(
            &PermGroup::symmetric(k),
            &PermGroup::symmetric(m),
            WreathKind::Imprimitive,
            &caps(),
        )
        .unwrap();
        let blocks: Vec<Vec<usize>> = (0..m).map(|j| (j * k..(j + 1) * k).collect()).collect();
        let block_act = Action::on_blocks(&g, &blocks).unwrap();
        let block_stab = block_act
            .preimage(&point_stabilizer(&block_act.image_group(), 0))
            .unwrap();
        let point = point_stabilizer(&g, 0);
        let chain = ChainSpec::new(g.clone(), vec![point, block_stab]).unwrap();
        (g, chain)
    }

    /// Kernel of `G → top S_m → C_2`.
    fn top_sign_kernel(g: &PermGroup, k: usize, m: usize) -> PermGroup {
        let blocks: Vec<Vec<usize>> = (0..m).map(|j| (j * k..(j + 1) * k).collect()).collect();
        let top = Action::on_blocks(g, &blocks).unwrap();
        top.preimage(&PermGroup::alternating(m)).unwrap()
    }

    #[test]
    fn solvable_quotient_wreath_example() {
        let (g, h) = wreath_chain(5, 5);
        let u_group = top_sign_kernel(&g, 5, 5);
        assert_eq!(u_group.order() * 2, g.order());
        let u = ChainSpec::new(g, vec![u_group]).unwrap();
        let r = transitive_by_solvable_quotient(&h, &u, &caps()).unwrap();
        assert_eq!(r.verdict, Verdict::TransitiveCertified);
        assert!(r.direct_transitive);
        assert_eq!(r.coset_degree, 25);
    }

    #[test]
    fn solvable_quotient_natural_example() {
        let s5 = PermGroup::symmetric(5);
        let h = ChainSpec::new(s5.clone(), vec![point_stabilizer(&s5, 0)]).unwrap();
        let u = ChainSpec::new(s5, vec![PermGroup::alternating(5)]).unwrap();
        let r = transitive_by_solvable_quotient(&h, &u, &caps()).unwrap();
        assert_eq!(r.verdict, Verdict::TransitiveCertified);
    }

    #[test]
    fn solvable_top_step_is_rejected() {
        let (g, h) = wreath_chain(5, 2);
        let u = ChainSpec::new(g.clone(), vec![top_sign_kernel(&g, 5, 2)]).unwrap();
        let r = transitive_by_solvable_quotient(&h, &u, &caps()).unwrap();
        assert!(matches!(r.verdict, Verdict::HypothesisViolated { ref step, .. } if step == "H step 2"));
    }

    #[test]
    fn affine_chain_examples() {
        let (g, h) = wreath_chain(5, 5);
        let u = ChainSpec::new(g.clone(), vec![top_sign_kernel(&g, 5, 5)]).unwrap();
        let r = transitive_by_affine_chain(&h, &u, true, &caps()).unwrap();
        assert_eq!(r.verdict, Verdict::TransitiveCertified);
        assert!(r.direct_transitive);
        let trivial = ChainSpec::new(g.clone(), vec![]).unwrap();
        let r = transitive_by_affine_chain(&h, &trivial, true, &caps()).unwrap();
        assert_eq!(r.verdict, Verdict::TransitiveCertified);
    }

    #[test]
    fn kernel_distinctness_is_checked() {
        let s6 = PermGroup::symmetric(6);
        let s5 = point_stabilizer(&s6, 5);
        let s4 = point_stabilizer(&s5, 4);
        let h = ChainSpec::new(s6.clone(), vec![s4, s5]).unwrap();
        let u = ChainSpec::new(s6, vec![PermGroup::alternating(6)]).unwrap();
        let r = transitive_by_affine_chain(&h, &u, true, &caps()).unwrap();
        assert!(matches!(r.verdict, Verdict::HypothesisViolated { ref step, .. } if step == "kernels"));
        let r = transitive_by_affine_chain(&h, &u, false, &caps()).unwrap();
        assert_eq!(r.verdict, Verdict::TransitiveCertified);
        assert!(r.beyond_lemma && r.direct_transitive);
    }

    #[test]
    fn chain_validation_and_parsing() {
        let s4 = PermGroup::symmetric(4);
        assert!(ChainSpec::new(s4.clone(), vec![PermGroup::alternating(4), PermGroup::alternating(4)]).is_err());
        let text = "degree 4\n(1 2 3 4)\n(1 2)\nsubgroup: (1 2 3); (1 2)\n";
        let c = ChainSpec::parse(text).unwrap();
        assert_eq!(c.steps(), 1);
        assert_eq!(c.bottom().order(), 6);
        let err = ChainSpec::parse("degree 4\n(1 2 3 4)\nsubgroup: (1 2); (1 5)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 21, .. }), "{err:?}");
        let c = ChainSpec::parse("degree 3\n(1 2 3)\nsubgroup:\n").unwrap();
        assert!(c.bottom().is_trivial());
    }
}
