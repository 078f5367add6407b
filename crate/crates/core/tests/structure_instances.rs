use redf::permcore::{point_stabilizer, wreath_product, Action, WreathKind};
use redf::structure::{
    goursat_split_check, transitive_by_affine_chain, transitive_by_solvable_quotient, ChainSpec,
    TransitivityReport, Verdict,
};
use redf::{Caps, PermGroup};

/// `U_0` transitive on `G/H_0`, straight from the orbit of the coset `H_0`.
fn direct(g: &PermGroup, h0: &PermGroup, u0: &PermGroup, caps: &Caps) -> bool {
    let act = Action::on_cosets(g, h0, caps).unwrap();
    let images: Vec<_> = u0.generators().iter().map(|x| act.image(x).unwrap()).collect();
    PermGroup::generated_by(act.degree(), &images).orbit_of(0).len() == act.degree()
}

struct Instance {
    name: String,
    h: ChainSpec,
    u: ChainSpec,
}

/// Point stabilizer chains `Stab(0..j) < … < Stab(0) < G`.
fn point_chain(g: &PermGroup, depth: usize) -> ChainSpec {
    let mut members = Vec::new();
    let mut cur = g.clone();
    for p in 0..depth {
        cur = point_stabilizer(&cur, p);
        members.push(cur.clone());
    }
    members.reverse();
    ChainSpec::new(g.clone(), members).unwrap()
}

fn instances() -> Vec<Instance> {
    let caps = Caps::default();
    let mut out = Vec::new();
    for n in 5..=8 {
        let s = PermGroup::symmetric(n);
        let a = PermGroup::alternating(n);
        for depth in 1..=2 {
            // A_n < S_n is a solvable (affine) step
            out.push(Instance {
                name: format!("S{n} depth {depth} vs A{n}"),
                h: point_chain(&s, depth),
                u: ChainSpec::new(s.clone(), vec![a.clone()]).unwrap(),
            });
            // a point stabilizer as U: nonsolvable step, lemma inconclusive
            out.push(Instance {
                name: format!("S{n} depth {depth} vs point stabilizer"),
                h: point_chain(&s, depth),
                u: point_chain(&s, 1),
            });
            out.push(Instance {
                name: format!("A{n} depth {depth} vs trivial chain"),
                h: point_chain(&a, depth),
                u: ChainSpec::new(a.clone(), vec![]).unwrap(),
            });
        }
    }
    // transitive S5 inside S6 (via PGL(2,5)) against the natural chain
    let s6 = PermGroup::symmetric(6);
    let pgl = PermGroup::from_cycles(6, &["(1 2 3 4 5)", "(2 3 5 4)", "(1 6)(2 5)(3 4)"]).unwrap();
    out.push(Instance {
        name: "S6 vs transitive S5".into(),
        h: point_chain(&s6, 1),
        u: ChainSpec::new(s6.clone(), vec![pgl]).unwrap(),
    });
    // S5 wr S2: point < block stabilizer < G against the top-sign kernel
    let w = wreath_product(&PermGroup::symmetric(5), &PermGroup::symmetric(2), WreathKind::Imprimitive, &caps).unwrap();
    let blocks: Vec<Vec<usize>> = vec![(0..5).collect(), (5..10).collect()];
    let top = Action::on_blocks(&w, &blocks).unwrap();
    let block_stab = top.preimage(&point_stabilizer(&top.image_group(), 0)).unwrap();
    let sign_kernel = top.preimage(&PermGroup::trivial(2)).unwrap();
    out.push(Instance {
        name: "S5 wr S2 vs base group".into(),
        h: ChainSpec::new(w.clone(), vec![point_stabilizer(&w, 0), block_stab]).unwrap(),
        u: ChainSpec::new(w, vec![sign_kernel]).unwrap(),
    });
    out
}

fn check(report: &TransitivityReport, expected_direct: bool, name: &str) -> bool {
    assert_eq!(report.direct_transitive, expected_direct, "{name}");
    match &report.verdict {
        Verdict::TransitiveCertified => {
            assert!(report.direct_transitive, "{name}: certified but not transitive");
            true
        }
        Verdict::RefutedBeyondLemma => {
            assert!(report.beyond_lemma && !report.direct_transitive, "{name}");
            false
        }
        _ => false,
    }
}

#[test]
fn transitivity_verdicts_agree_with_orbits() {
    let caps = Caps::default();
    let all = instances();
    assert!(all.len() >= 20);
    let (mut certified, mut disagreements) = (0, 0);
    for inst in &all {
        let expected = direct(inst.h.group(), inst.h.bottom(), inst.u.bottom(), &caps);
        for report in [
            transitive_by_solvable_quotient(&inst.h, &inst.u, &caps),
            transitive_by_affine_chain(&inst.h, &inst.u, true, &caps),
            transitive_by_affine_chain(&inst.h, &inst.u, false, &caps),
        ] {
            match report {
                Ok(r) => certified += check(&r, expected, &inst.name) as usize,
                Err(e) => {
                    disagreements += 1;
                    eprintln!("{}: {e}", inst.name);
                }
            }
        }
    }
    assert_eq!(disagreements, 0);
    assert!(certified >= 20, "only {certified} certified verdicts");
}

#[test]
fn goursat_examples() {
    let caps = Caps::default();
    let a5 = PermGroup::alternating(5);
    let c2 = PermGroup::cyclic(2);
    assert_eq!(goursat_split_check(&a5, &c2, &caps).unwrap().failures, 0);
    assert_eq!(goursat_split_check(&a5, &a5, &caps).unwrap().failures, 0);
    let r = goursat_split_check(&c2, &c2, &caps).unwrap();
    assert!(!r.centerless_quotients);
    assert!(r.failures > 0);
}
