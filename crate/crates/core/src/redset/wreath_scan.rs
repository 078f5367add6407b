//! Index-sum scan over classes of `S_k wr S_5` in product action.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permcore::{WreathClass, WreathDescriptor};

/// Element orders of the three branch cycles; each class must also have a
/// top projection of the same order.
pub const SCAN_ORDERS: [u64; 3] = [2, 4, 5];
const TOP_DEGREE: usize = 5;

/// A class of one of the three element orders, with its product-action
/// index.
#[derive(Debug, Clone, Serialize)]
pub struct ScannedClass {
    pub element_order: u64,
    pub parts: Vec<(usize, Vec<usize>)>,
    pub size: u128,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlaggedTriple {
    /// Positions in the per-order class lists.
    pub classes: [usize; 3],
    pub index_sum: usize,
    pub genus: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct WreathScanReport {
    pub k: usize,
    pub degree: usize,
    pub classes: [Vec<ScannedClass>; 3],
    pub triples: u64,
    pub max_index_sum: usize,
    pub flagged: Vec<FlaggedTriple>,
}

/// Number of cycles of the product-action image of `g`, an element of
/// `S_k wr S_m` in imprimitive action: tuple `(x_j)` maps to the tuple
/// with entry `y` at block `j'` whenever `g` sends `jk + x_j` to `j'k + y`.
pub(crate) fn product_index(g: &Permutation, k: usize, m: usize) -> usize {
    let degree = k.pow(m as u32);
    let mut powers = vec![1usize; m];
    for j in 1..m {
        powers[j] = powers[j - 1] * k;
    }
    let image = |t: usize| {
        let mut out = 0;
        let mut rest = t;
        for j in 0..m {
            let x = rest % k;
            rest /= k;
            let y = g.apply(j * k + x);
            out += (y % k) * powers[y / k];
        }
        out
    };
    let mut seen = vec![false; degree];
    let mut cycles = 0;
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = image(p);
        }
    }
    degree - cycles
}

fn genus_of_sum(degree: usize, sum: usize) -> Option<usize> {
    (sum % 2 == 0 && sum + 2 >= 2 * degree).then(|| (sum + 2 - 2 * degree) / 2)
}

fn scanned(d: &WreathDescriptor, class: &WreathClass) -> ScannedClass {
    ScannedClass {
        element_order: class.element_order,
        parts: class
            .parts
            .iter()
            .map(|p| (p.length, p.base_type.clone()))
            .collect(),
        size: class.size,
        index: product_index(&d.representative(class), d.k, d.m),
    }
}

/// Flags the class triples of orders 2, 4, 5 in `S_k wr S_5` whose
/// product-action indices sum to `2k^5 - 2` or `2k^5`, i.e. whose
/// Riemann–Hurwitz genus would be 0 or 1.
///
/// Class indices are computed in parallel on `threads` threads (0 means
/// the rayon default); the output order does not depend on it.
pub fn wreath_scan(k: usize, threads: usize, caps: &Caps) -> Result<WreathScanReport> {
    if k == 0 {
        return Err(Error::input("k must be positive"));
    }
    let degree = k
        .checked_pow(TOP_DEGREE as u32)
        .filter(|&d| d <= caps.product_degree)
        .ok_or_else(|| {
            Error::resource(format!("product action of degree {k}^5"), caps.product_degree as u128)
        })?;
    let d = WreathDescriptor::new(k, TOP_DEGREE)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::input(format!("thread pool: {e}")))?;
    let mut lists = Vec::new();
    for order in SCAN_ORDERS {
        let classes = d.classes_with_orders(order, order)?;
        let scanned: Vec<ScannedClass> =
            pool.install(|| classes.par_iter().map(|c| scanned(&d, c)).collect());
        lists.push(scanned);
    }
    let [c2, c4, c5]: [Vec<ScannedClass>; 3] = lists.try_into().expect("three orders");
    let mut flagged = Vec::new();
    let mut max_index_sum = 0;
    for (i, a) in c2.iter().enumerate() {
        for (j, b) in c4.iter().enumerate() {
            for (l, c) in c5.iter().enumerate() {
                let sum = a.index + b.index + c.index;
                max_index_sum = max_index_sum.max(sum);
                if sum == 2 * degree - 2 || sum == 2 * degree {
                    flagged.push(FlaggedTriple {
                        classes: [i, j, l],
                        index_sum: sum,
                        genus: genus_of_sum(degree, sum).expect("sum in the genus window"),
                    });
                }
            }
        }
    }
    Ok(WreathScanReport {
        k,
        degree,
        triples: (c2.len() * c4.len() * c5.len()) as u64,
        classes: [c2, c4, c5],
        max_index_sum,
        flagged,
    })
}

impl WreathScanReport {
    /// Per scanned order, the number of group elements with each
    /// product-action index.
    pub fn index_distribution(&self) -> [BTreeMap<usize, u128>; 3] {
        self.classes.clone().map(|list| {
            let mut out = BTreeMap::new();
            for c in list {
                *out.entry(c.index).or_insert(0) += c.size;
            }
            out
        })
    }

    /// Flagged triples as index triples, sorted.
    pub fn flagged_indices(&self) -> Vec<[usize; 3]> {
        let mut v: Vec<[usize; 3]> = self
            .flagged
            .iter()
            .map(|f| {
                let [a, b, c] = f.classes;
                [self.classes[0][a].index, self.classes[1][b].index, self.classes[2][c].index]
            })
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Brute-force counterpart of [`WreathScanReport::index_distribution`]
/// and [`WreathScanReport::flagged_indices`]: every element of
/// `S_k wr S_5` is visited.
pub fn wreath_scan_brute(k: usize, caps: &Caps) -> Result<([BTreeMap<usize, u128>; 3], Vec<[usize; 3]>)> {
    let d = WreathDescriptor::new(k, TOP_DEGREE)?;
    let order = d.order()?;
    if order > caps.element_enumeration {
        return Err(Error::resource(
            format!("enumerating {order} wreath elements"),
            caps.element_enumeration,
        ));
    }
    let degree = k.pow(TOP_DEGREE as u32);
    let group = d.group();
    let mut dist: [BTreeMap<usize, u128>; 3] = Default::default();
    group.chain().for_each_element(|g| {
        let Some(slot) = SCAN_ORDERS.iter().position(|&o| o == g.order()) else {
            return;
        };
        let top = Permutation::from_images_unchecked(
            (0..TOP_DEGREE).map(|j| g.apply(j * k) / k).collect(),
        );
        if top.order() != SCAN_ORDERS[slot] {
            return;
        }
        *dist[slot].entry(product_index(g, k, TOP_DEGREE)).or_insert(0) += 1;
    });
    let mut flagged = Vec::new();
    for &a in dist[0].keys() {
        for &b in dist[1].keys() {
            for &c in dist[2].keys() {
                let s = a + b + c;
                if s == 2 * degree - 2 || s == 2 * degree {
                    flagged.push([a, b, c]);
                }
            }
        }
    }
    Ok((dist, flagged))
}
