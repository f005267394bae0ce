//! Labelled function tables on finite abelian groups.
//!
//! A [`ZdbFunction`] is a total map from group elements to dense labels
//! `0..l`. Its preimage classes partition the group; when every nonzero
//! shift of the table agrees with the original in the same number of
//! places, the partition is a partitioned difference family and the
//! function is zero-difference balanced (see [`crate::verify`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupSpec;

/// Construction metadata carried by a function table. Verification never
/// trusts it; it exists so artifacts are self-describing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Coset labelling of a product of fields, block size `e`.
    Product { q: Vec<u64>, e: u64 },
    /// Leaders of 2-cyclotomic cosets modulo 2^m - 1.
    Coset { m: u64 },
    /// Leaders of paired classes B and -B modulo 2^m - 1.
    PairCoset { m: u64 },
    /// Anything supplied from outside.
    External,
}

/// The parameters of a verified table: group order `n`, image size
/// `ell_bar`, the common agreement count `lambda`, and the sorted multiset
/// `tau` of preimage-class sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZdbParams {
    pub n: u64,
    pub ell_bar: u64,
    pub lambda: u64,
    pub tau: Vec<u64>,
}

impl ZdbParams {
    /// The double-counting constraint every balanced table satisfies:
    /// sum tau_i (tau_i - 1) = lambda (n - 1).
    pub fn counting_identity_holds(&self) -> bool {
        let lhs: u64 = self.tau.iter().map(|&t| t * (t - 1)).sum();
        lhs == self.lambda * (self.n - 1)
    }
}

/// A total function table from a group to dense labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZdbFunction {
    group: GroupSpec,
    labels: Vec<u32>,
    family: Family,
}

impl ZdbFunction {
    /// Wrap an external table. Labels may be arbitrary values; they are
    /// densified to `0..l` by first occurrence, which leaves every balance
    /// property unchanged.
    pub fn from_labels(group: GroupSpec, labels: &[u64]) -> Result<Self> {
        if labels.len() as u64 != group.order() {
            return Err(Error::Malformed(format!(
                "label table has {} entries for a group of order {}",
                labels.len(),
                group.order()
            )));
        }
        Ok(ZdbFunction {
            group,
            labels: densify(labels),
            family: Family::External,
        })
    }

    /// Constructions emit already-dense labels in their canonical order.
    pub(crate) fn from_dense_labels(group: GroupSpec, labels: Vec<u32>, family: Family) -> Self {
        debug_assert_eq!(labels.len() as u64, group.order());
        debug_assert!(is_dense(&labels));
        ZdbFunction {
            group,
            labels,
            family,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Image size: labels are dense, so this is max + 1.
    pub fn label_count(&self) -> u64 {
        self.labels.iter().copied().max().map_or(0, |m| m as u64 + 1)
    }

    /// Class sizes indexed by label.
    pub fn histogram(&self) -> Vec<u64> {
        let mut h = vec![0u64; self.label_count() as usize];
        for &l in &self.labels {
            h[l as usize] += 1;
        }
        h
    }

    /// Preimage classes indexed by label, elements ascending.
    pub fn preimages(&self) -> Vec<Vec<u64>> {
        let mut classes = vec![Vec::new(); self.label_count() as usize];
        for (x, &l) in self.labels.iter().enumerate() {
            classes[l as usize].push(x as u64);
        }
        classes
    }

    /// Compose the table with a permutation of its labels. The balance
    /// parameters of the result equal those of the input.
    pub fn relabel(&self, permutation: &[u32]) -> Result<Self> {
        let l = self.label_count();
        let mut seen = vec![false; l as usize];
        if permutation.len() as u64 != l
            || !permutation.iter().all(|&p| {
                if (p as u64) < l && !seen[p as usize] {
                    seen[p as usize] = true;
                    true
                } else {
                    false
                }
            })
        {
            return Err(Error::NotABijection(l));
        }
        let labels = self.labels.iter().map(|&x| permutation[x as usize]).collect();
        Ok(ZdbFunction {
            group: self.group.clone(),
            labels,
            family: self.family.clone(),
        })
    }
}

/// Bring raw label values into dense form. Already-dense tables are kept
/// verbatim (so canonical and relabelled tables survive a round trip);
/// anything else is relabelled to `0..l` by first occurrence, which leaves
/// every balance property unchanged.
pub(crate) fn densify(raw: &[u64]) -> Vec<u32> {
    let max = raw.iter().copied().max().unwrap_or(0);
    if max < raw.len() as u64 {
        let mut seen = vec![false; max as usize + 1];
        for &v in raw {
            seen[v as usize] = true;
        }
        if seen.iter().all(|&s| s) {
            return raw.iter().map(|&v| v as u32).collect();
        }
    }
    let mut dense = Vec::with_capacity(raw.len());
    let mut map: std::collections::HashMap<u64, u32> = std::collections::HashMap::new();
    for &value in raw {
        let next = map.len() as u32;
        dense.push(*map.entry(value).or_insert(next));
    }
    dense
}

fn is_dense(labels: &[u32]) -> bool {
    let Some(&max) = labels.iter().max() else {
        return true;
    };
    let mut seen = vec![false; max as usize + 1];
    for &l in labels {
        seen[l as usize] = true;
    }
    seen.iter().all(|&s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: u64, labels: &[u64]) -> ZdbFunction {
        ZdbFunction::from_labels(GroupSpec::cyclic(n).unwrap(), labels).unwrap()
    }

    #[test]
    fn densification_by_first_occurrence() {
        let f = table(3, &[5, 9, 5]);
        assert_eq!(f.labels(), &[0, 1, 0]);
        assert_eq!(f.label_count(), 2);
        assert_eq!(f.histogram(), vec![2, 1]);
    }

    #[test]
    fn dense_labels_are_kept_verbatim() {
        // Already dense, even if not in first-occurrence order.
        let f = table(4, &[1, 0, 2, 1]);
        assert_eq!(f.labels(), &[1, 0, 2, 1]);
    }

    #[test]
    fn length_mismatch_is_malformed() {
        let g = GroupSpec::cyclic(4).unwrap();
        assert!(matches!(
            ZdbFunction::from_labels(g, &[0, 1]),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn relabel_checks_bijection() {
        let f = table(4, &[0, 1, 1, 2]);
        let swapped = f.relabel(&[0, 2, 1]).unwrap();
        assert_eq!(swapped.labels(), &[0, 2, 2, 1]);
        assert_eq!(f.relabel(&[0, 0, 1]), Err(Error::NotABijection(3)));
        assert_eq!(f.relabel(&[0, 1]), Err(Error::NotABijection(3)));
        assert_eq!(f.relabel(&[0, 1, 3]), Err(Error::NotABijection(3)));
        let same = f.relabel(&[0, 1, 2]).unwrap();
        assert_eq!(same.labels(), f.labels());
    }

    #[test]
    fn preimages_partition_the_group() {
        let f = table(7, &[0, 1, 1, 2, 1, 2, 2]);
        let classes = f.preimages();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes[0], vec![0]);
        assert_eq!(classes[1], vec![1, 2, 4]);
        assert_eq!(classes[2], vec![3, 5, 6]);
    }

    #[test]
    fn counting_identity() {
        let p = ZdbParams {
            n: 7,
            ell_bar: 3,
            lambda: 2,
            tau: vec![1, 3, 3],
        };
        assert!(p.counting_identity_holds());
        let bad = ZdbParams { lambda: 3, ..p };
        assert!(!bad.counting_identity_holds());
    }
}
