use std::collections::HashSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use redf::genus::two_set_cycle_type;
use redf::{PermGroup, Permutation};

fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

fn random_perm(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// Random sparse permutation: a product of a few random transpositions or
/// short cycles, so that proper subgroups show up often.
fn sparse_perm(n: usize, rng: &mut impl Rng) -> Permutation {
    let len = rng.gen_range(2..=4);
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    Permutation::from_cycles(n, &[points[..len].to_vec()]).unwrap()
}

#[test]
fn random_subgroups_of_s8_match_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut orders = HashSet::new();
    for _ in 0..50 {
        let count = rng.gen_range(1..=3);
        let gens: Vec<Permutation> = (0..count)
            .map(|_| if rng.gen_bool(0.7) { sparse_perm(8, &mut rng) } else { random_perm(8, &mut rng) })
            .collect();
        let g = PermGroup::new(8, gens.clone()).unwrap();
        let elements = closure(8, &gens);
        assert_eq!(g.order(), elements.len() as u128, "generators {gens:?}");
        orders.insert(g.order());
        for _ in 0..20 {
            let x = random_perm(8, &mut rng);
            assert_eq!(g.contains(&x), elements.contains(&x));
        }
        for x in elements.iter().take(20) {
            assert!(g.contains(x));
        }
        let mut orbit_points: Vec<Vec<usize>> = g.orbits();
        orbit_points.iter_mut().for_each(|o| o.sort_unstable());
        for o in &orbit_points {
            let reached: HashSet<usize> = elements.iter().map(|x| x.apply(o[0])).collect();
            assert_eq!(reached, o.iter().copied().collect());
        }
    }
    assert!(orders.len() > 5, "degenerate sample: {orders:?}");
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn perm_of_type(c: &[usize]) -> Permutation {
    let n = c.iter().sum();
    let mut start = 0;
    let cycles: Vec<Vec<usize>> = c
        .iter()
        .map(|&len| {
            let cyc = (start..start + len).collect();
            start += len;
            cyc
        })
        .collect();
    Permutation::from_cycles(n, &cycles).unwrap()
}

fn pair_orbit_type(p: &Permutation) -> Vec<usize> {
    let n = p.degree();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &start in &pairs {
        if seen.contains(&start) {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
        while seen.insert(cur) {
            len += 1;
            let (a, b) = (p.apply(cur.0), p.apply(cur.1));
            cur = (a.min(b), a.max(b));
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

#[test]
fn two_set_cycle_types_match_pair_orbits() {
    let mut checked = 0;
    for n in 2..=12 {
        for c in partitions(n, n) {
            let mut expected = pair_orbit_type(&perm_of_type(&c));
            let mut got = two_set_cycle_type(&c);
            expected.sort_unstable();
            got.sort_unstable();
            assert_eq!(got, expected, "cycle type {c:?}");
            checked += 1;
        }
    }
    // p(2) + … + p(12)
    assert_eq!(checked, 2 + 3 + 5 + 7 + 11 + 15 + 22 + 30 + 42 + 56 + 77);
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #[test]
    fn cycle_notation_round_trips(p in (1usize..=12).prop_flat_map(perm_strategy)) {
        let text = p.to_cycle_string();
        let back = Permutation::parse_cycles(p.degree(), &text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn group_axioms(a in perm_strategy(9), b in perm_strategy(9), c in perm_strategy(9)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.pow(a.order()), Permutation::identity(9));
        prop_assert_eq!(a.conjugate_by(&b).cycle_type(), a.cycle_type());
    }
}
