//! The nine ramification families of degree-ℓ polynomials with alternating
//! or symmetric monodromy whose 2-set stabilizer has genus 0.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use super::{dsl, ramification_genus, two_set_ramification, FamilyTag, RamificationType};
use crate::error::{Error, Result};

/// Row templates; `l` is the degree, `a` the free part in row 1. The `[l]`
/// entry comes first and is the fiber over ∞.
pub const TABLE1_ROWS: [&str; 9] = [
    "[l],[a,l-a],[1^{l-2},2]",
    "[l],[1^3,2^{(l-3)/2}],[1,2^{(l-1)/2}],[1^{l-2},2]",
    "[l],[1^2,2^{(l-2)/2}],[1^2,2^{(l-2)/2}],[1^{l-2},2]",
    "[l],[1^3,2^{(l-3)/2}],[2^{(l-3)/2},3]",
    "[l],[1^2,2^{(l-2)/2}],[1,2^{(l-4)/2},3]",
    "[l],[1,2^{(l-1)/2}],[1^2,2^{(l-5)/2},3]",
    "[l],[1^3,2^{(l-3)/2}],[1,2^{(l-5)/2},4]",
    "[l],[1^2,2^{(l-2)/2}],[1^2,2^{(l-6)/2},4]",
    "[l],[1,2^{(l-1)/2}],[1^3,2^{(l-7)/2},4]",
];

pub fn table1_row_template(row: usize) -> Result<&'static str> {
    row.checked_sub(1)
        .and_then(|i| TABLE1_ROWS.get(i))
        .copied()
        .ok_or_else(|| Error::input(format!("row must be in 1..=9, got {row}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub row: usize,
    pub ell: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    pub ramification: Vec<Vec<usize>>,
    pub natural_genus: usize,
    pub two_set_genus: usize,
    pub admissible: bool,
}

/// Checks the conditions under which a row instance is defined. Errors name
/// the failed condition.
fn check_conditions(row: usize, ell: i64, a: Option<i64>) -> Result<()> {
    if ell < 2 {
        return Err(Error::input(format!("condition ℓ ≥ 2 fails for ℓ={ell}")));
    }
    match (row, a) {
        (1, None) => Err(Error::input("row 1 needs the parameter a")),
        (1, Some(a)) => {
            if !(1..ell).contains(&a) {
                Err(Error::input(format!("condition 1 ≤ a ≤ ℓ-1 fails for a={a}, ℓ={ell}")))
            } else if a % 2 == 0 {
                Err(Error::input(format!("condition a odd fails for a={a}")))
            } else if a.gcd(&ell) != 1 {
                Err(Error::input(format!(
                    "condition gcd(a, ℓ) = 1 fails: gcd({a}, {ell}) = {}",
                    a.gcd(&ell)
                )))
            } else {
                Ok(())
            }
        }
        (_, Some(_)) => Err(Error::input(format!("row {row} takes no parameter a"))),
        (_, None) => Ok(()),
    }
}

/// Instantiates a row and computes the genus in the natural action and in
/// the action on 2-sets.
pub fn table1_verify(row: usize, ell: i64, a: Option<i64>) -> Result<Table1Report> {
    let template = table1_row_template(row)?;
    check_conditions(row, ell, a)?;
    let spec = dsl::parse(template)?;
    let mut env = BTreeMap::from([("l".to_string(), ell)]);
    if let Some(a) = a {
        env.insert("a".to_string(), a);
    }
    let entries = spec
        .partitions
        .iter()
        .map(|t| {
            dsl::instantiate(t, &env).map_err(|e| match e {
                Error::Input(m) => Error::input(format!(
                    "row {row} is not defined for ℓ={ell}: {m}"
                )),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let r = RamificationType::new(ell as usize, entries)?.with_tag(FamilyTag { row, ell, a });
    let natural_genus = ramification_genus(&r)?;
    let two_set_genus = ramification_genus(&two_set_ramification(&r)?)?;
    Ok(Table1Report {
        row,
        ell,
        a,
        ramification: r.entries().to_vec(),
        natural_genus,
        two_set_genus,
        admissible: natural_genus == 0 && two_set_genus == 0,
    })
}

/// Every `(ℓ, a)` in `lo < ℓ ≤ hi` for which the row is defined.
pub fn table1_admissible_ells(row: usize, lo: i64, hi: i64) -> Result<Vec<(i64, Option<i64>)>> {
    table1_row_template(row)?;
    let mut out = Vec::new();
    for ell in (lo + 1).max(2)..=hi {
        if row == 1 {
            for a in (1..ell).step_by(2) {
                if a.gcd(&ell) == 1 {
                    out.push((ell, Some(a)));
                }
            }
        } else if table1_verify(row, ell, None).is_ok() {
            out.push((ell, None));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_one_examples() {
        let r = table1_verify(1, 21, Some(1)).unwrap();
        assert_eq!((r.natural_genus, r.two_set_genus), (0, 0));
        assert!(r.admissible);
        let err = table1_verify(1, 21, Some(3)).unwrap_err();
        assert!(err.to_string().contains("gcd"), "{err}");
        assert!(table1_verify(1, 22, Some(2)).unwrap_err().to_string().contains("odd"));
    }

    #[test]
    fn row_three_even_degree() {
        let r = table1_verify(3, 22, None).unwrap();
        assert!(r.admissible);
        assert!(table1_verify(3, 21, None).is_err());
        assert!(table1_verify(2, 22, None).is_err());
    }

    #[test]
    fn whole_table_has_genus_zero() {
        for row in 1..=9 {
            let instances = table1_admissible_ells(row, 20, 60).unwrap();
            assert!(!instances.is_empty());
            for (ell, a) in instances {
                let r = table1_verify(row, ell, a).unwrap();
                assert!(r.admissible, "row {row} ℓ={ell} a={a:?}: {r:?}");
            }
        }
    }

    #[test]
    fn bad_rows_rejected() {
        assert!(table1_verify(0, 21, None).is_err());
        assert!(table1_verify(10, 21, None).is_err());
        assert!(table1_verify(2, 21, Some(1)).is_err());
    }
}
