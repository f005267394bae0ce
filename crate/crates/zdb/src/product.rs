//! Coset labellings of products of finite fields.
//!
//! Take distinct prime powers q_1, ..., q_k and an exponent e > 1 dividing
//! every q_i - 1, and write q_i - 1 = e * f_i. Inside each support class
//! A_I (the elements nonzero exactly on the coordinates of I) the vector
//! (g_i^{f_i})_{i in I} generates, under coordinatewise multiplication, a
//! cyclic subgroup D_I of order e, and the cosets alpha * D_I slice A_I
//! into disjoint blocks of size e. Labelling the zero vector and each coset
//! with its own symbol produces a zero-difference balanced function on the
//! additive group with parameters (n, (n + e - 1)/e, e - 1) and preimage
//! sizes {1, e, ..., e}.
//!
//! The labelling is canonical: label 0 for the zero vector, then one label
//! per coset, iterating supports in ascending bitmask order and cosets by
//! ascending minimum element, so identical inputs yield byte-identical
//! tables.

use crate::error::{Error, Result};
use crate::function::{Family, ZdbFunction};
use crate::group::{GroupSpec, Support};

/// Validated shape of a product-family instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductFamilyParams {
    pub q: Vec<u64>,
    pub e: u64,
    /// Cofactors f_i = (q_i - 1) / e.
    pub f: Vec<u64>,
    pub n: u64,
}

impl ProductFamilyParams {
    /// Predicted image size (n - 1)/e + 1.
    pub fn image_size(&self) -> u64 {
        (self.n - 1) / self.e + 1
    }

    /// Predicted agreement count e - 1.
    pub fn lambda(&self) -> u64 {
        self.e - 1
    }
}

/// Check the arithmetic preconditions and derive n and the cofactors.
pub fn family_params(q_list: &[u64], e: u64) -> Result<ProductFamilyParams> {
    if q_list.is_empty() {
        return Err(Error::GroupTooSmall(1));
    }
    let mut f = Vec::with_capacity(q_list.len());
    let mut n: u64 = 1;
    for (i, &q) in q_list.iter().enumerate() {
        crate::algebra::factor_prime_power(q)?;
        if q_list[..i].contains(&q) {
            return Err(Error::DuplicateFieldOrder(q));
        }
        if e <= 1 || (q - 1) % e != 0 {
            return Err(Error::BadExponent { e, q });
        }
        f.push((q - 1) / e);
        n *= q;
    }
    Ok(ProductFamilyParams {
        q: q_list.to_vec(),
        e,
        f,
        n,
    })
}

/// Construct the labelled table. Field orders sharing a prime are rejected;
/// see [`construct_with_policy`].
pub fn construct(q_list: &[u64], e: u64) -> Result<ZdbFunction> {
    construct_with_policy(q_list, e, false)
}

/// Construct with an explicit repeated-prime policy. Instances whose orders
/// share a prime (e.g. `[3, 9]`) fall outside the parameter formulas'
/// stated constraints; they are built the same way and left to the
/// exhaustive verifier.
pub fn construct_with_policy(
    q_list: &[u64],
    e: u64,
    allow_repeated_primes: bool,
) -> Result<ZdbFunction> {
    let params = family_params(q_list, e)?;
    let group = GroupSpec::product_with_policy(q_list, allow_repeated_primes)?;
    let n = group.order() as usize;
    let k = q_list.len();

    let mut labels = vec![0u32; n];
    let mut next = 1u32;
    for bits in 1u32..1 << k {
        for coset in coset_decompose(&group, Support::from_bits(bits), e)? {
            for &x in &coset {
                labels[x as usize] = next;
            }
            next += 1;
        }
    }
    debug_assert_eq!(u64::from(next), params.image_size());

    Ok(ZdbFunction::from_dense_labels(
        group,
        labels,
        Family::Product {
            q: q_list.to_vec(),
            e,
        },
    ))
}

/// Split one support class into the cosets of its order-e subgroup.
///
/// Cosets are returned in ascending order of their minimum element, each
/// sorted ascending, pairwise disjoint, of size e, and jointly covering the
/// class. Found by a greedy sweep: walking the class in index order, every
/// element not yet covered starts the next coset.
pub fn coset_decompose(group: &GroupSpec, support: Support, e: u64) -> Result<Vec<Vec<u64>>> {
    let fields = group.field_specs().ok_or(Error::CyclicGroupHasNoSupport)?;
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let coords: Vec<usize> = support.coords().collect();
    for &c in &coords {
        let q = fields[c].order();
        if e <= 1 || (q - 1) % e != 0 {
            return Err(Error::BadExponent { e, q });
        }
    }

    // Powers of the subgroup generator, one digit vector per exponent.
    let subgroup: Vec<Vec<u64>> = (0..e)
        .map(|t| {
            coords
                .iter()
                .map(|&c| {
                    let field = &fields[c];
                    let f = (field.order() - 1) / e;
                    field.pow(field.generator(), f * t)
                })
                .collect()
        })
        .collect();
    // The generator has order exactly e in the class: all e powers distinct.
    debug_assert!((1..subgroup.len()).all(|i| !subgroup[..i].contains(&subgroup[i])));

    let class = group.enumerate_support_class(support)?;
    let mut covered = vec![false; group.order() as usize];
    let mut cosets = Vec::with_capacity(class.len() / e as usize);
    for &alpha in &class {
        if covered[alpha as usize] {
            continue;
        }
        let alpha_digits = group.decode(alpha);
        let mut coset: Vec<u64> = subgroup
            .iter()
            .map(|d| {
                let mut full = vec![0u64; fields.len()];
                for (pos, &c) in coords.iter().enumerate() {
                    full[c] = fields[c].mul(alpha_digits[c], d[pos]);
                }
                group.encode(&full)
            })
            .collect();
        coset.sort_unstable();
        debug_assert_eq!(coset[0], alpha, "greedy sweep starts at the coset minimum");
        for &x in &coset {
            debug_assert!(!covered[x as usize]);
            covered[x as usize] = true;
        }
        cosets.push(coset);
    }
    Ok(cosets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_pdf, verify_zdb};

    #[test]
    fn cubic_cosets_of_gf7() {
        let g = GroupSpec::product(&[7]).unwrap();
        let cosets = coset_decompose(&g, Support::from_coords([0]), 3).unwrap();
        assert_eq!(cosets, vec![vec![1, 2, 4], vec![3, 5, 6]]);

        let whole = coset_decompose(&g, Support::from_coords([0]), 6).unwrap();
        assert_eq!(whole, vec![vec![1, 2, 3, 4, 5, 6]]);
    }

    #[test]
    fn mixed_support_decomposition() {
        let g = GroupSpec::product(&[4, 7]).unwrap();
        let cosets = coset_decompose(&g, Support::from_coords([0, 1]), 3).unwrap();
        assert_eq!(cosets.len(), 6);
        let mut all: Vec<u64> = cosets.iter().flatten().copied().collect();
        assert!(cosets.iter().all(|c| c.len() == 3));
        all.sort_unstable();
        assert_eq!(
            all,
            g.enumerate_support_class(Support::from_coords([0, 1]))
                .unwrap()
        );
    }

    #[test]
    fn single_field_table_matches_cubic_residues() {
        let f = construct(&[7], 3).unwrap();
        assert_eq!(f.labels(), &[0, 1, 1, 2, 1, 2, 2]);
        let p = verify_zdb(&f).unwrap();
        assert_eq!((p.n, p.ell_bar, p.lambda), (7, 3, 2));
        assert_eq!(p.tau, vec![1, 3, 3]);
        assert!(verify_pdf(&f, &p));
    }

    #[test]
    fn two_block_degenerate_case() {
        // Whole unit group as a single coset: partition {0}, GF(4)*.
        let f = construct(&[4], 3).unwrap();
        let p = verify_zdb(&f).unwrap();
        assert_eq!((p.n, p.ell_bar, p.lambda), (4, 2, 2));
        assert_eq!(p.tau, vec![1, 3]);
    }

    #[test]
    fn two_field_instance_verifies() {
        let f = construct(&[4, 7], 3).unwrap();
        let p = verify_zdb(&f).unwrap();
        assert_eq!((p.n, p.ell_bar, p.lambda), (28, 10, 2));
        assert_eq!(p.tau[0], 1);
        assert!(p.tau[1..].iter().all(|&t| t == 3));
        assert!(verify_pdf(&f, &p));
    }

    #[test]
    fn exponent_and_order_preconditions() {
        assert_eq!(construct(&[7], 4), Err(Error::BadExponent { e: 4, q: 7 }));
        assert_eq!(construct(&[7], 1), Err(Error::BadExponent { e: 1, q: 7 }));
        // 3 divides 13 - 1 but not 9 - 1; the first offender is reported.
        assert_eq!(
            construct(&[9, 13], 3),
            Err(Error::BadExponent { e: 3, q: 9 })
        );
        assert_eq!(construct(&[7, 7], 3), Err(Error::DuplicateFieldOrder(7)));
        assert_eq!(construct(&[12], 2), Err(Error::NotPrimePower(12)));
        assert!(matches!(
            construct(&[3, 9], 2),
            Err(Error::RepeatedPrime { .. })
        ));
    }

    #[test]
    fn repeated_prime_override_still_verifies() {
        let f = construct_with_policy(&[3, 9], 2, true).unwrap();
        let p = verify_zdb(&f).unwrap();
        assert_eq!((p.n, p.ell_bar, p.lambda), (27, 14, 1));
        assert!(verify_pdf(&f, &p));
    }

    #[test]
    fn construction_is_deterministic() {
        let a = construct(&[9, 13], 4).unwrap();
        let b = construct(&[9, 13], 4).unwrap();
        assert_eq!(a.labels(), b.labels());
    }

    #[test]
    fn subgroup_order_is_exactly_e_per_support() {
        let g = GroupSpec::product(&[9, 13]).unwrap();
        for bits in 1u32..4 {
            for e in [2u64, 4] {
                let cosets = coset_decompose(&g, Support::from_bits(bits), e).unwrap();
                let class = g
                    .enumerate_support_class(Support::from_bits(bits))
                    .unwrap();
                assert!(cosets.iter().all(|c| c.len() == e as usize));
                assert_eq!(cosets.len(), class.len() / e as usize);
            }
        }
    }

    #[test]
    fn predicted_parameters() {
        let p = family_params(&[49, 169], 24).unwrap();
        assert_eq!(p.n, 8281);
        assert_eq!(p.image_size(), 346);
        assert_eq!(p.lambda(), 23);
        assert_eq!(p.f, vec![2, 7]);
    }
}
