//! 2-cyclotomic cosets modulo 2^m - 1 and the two leader labellings.
//!
//! The 2-cyclotomic coset of x modulo n = 2^m - 1 is its orbit
//! {x, 2x, 4x, ...} under doubling; the cosets partition Z_n, and for prime
//! m every nonzero coset has exactly m elements. Labelling each x by its
//! coset leader (the least element of its orbit) gives a zero-difference
//! balanced function with parameters (2^m - 1, (2^m + m - 2)/m, m - 1).
//!
//! For odd prime m, a coset B and its negation -B = {n - i : i in B} are
//! disjoint, so the paired classes B u (-B) also partition Z_n; labelling
//! by paired-class leader gives parameters
//! (2^m - 1, (2^(m-1) + m - 1)/m, 2m - 1).

use crate::algebra::is_prime;
use crate::error::{Error, Result};
use crate::function::{Family, ZdbFunction};
use crate::group::GroupSpec;

/// The partition of Z_{2^m - 1} into 2-cyclotomic cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    m: u32,
    n: u64,
    leaders: Vec<u64>,
    leader_of: Vec<u64>,
}

impl CosetTable {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Sorted coset leaders.
    pub fn leaders(&self) -> &[u64] {
        &self.leaders
    }

    /// Leader of the coset containing x.
    pub fn leader_of(&self, x: u64) -> u64 {
        self.leader_of[x as usize]
    }
}

/// Partition Z_{2^m - 1} into 2-cyclotomic cosets, m prime (m = 2 allowed).
pub fn build_coset_table(m: u32) -> Result<CosetTable> {
    if !is_prime(m as u64) {
        return Err(Error::NotPrime(m as u64));
    }
    assert!(m < 64, "n = 2^m - 1 must fit in u64");
    let n = (1u64 << m) - 1;
    let mut leader_of = vec![u64::MAX; n as usize];
    let mut leaders = Vec::new();
    for x in 0..n {
        if leader_of[x as usize] != u64::MAX {
            continue;
        }
        // Ascending sweep: the first unvisited member of an orbit is its
        // least element.
        leaders.push(x);
        let mut y = x;
        let mut size = 0;
        loop {
            leader_of[y as usize] = x;
            size += 1;
            y = y * 2 % n;
            if y == x {
                break;
            }
        }
        debug_assert!(size == if x == 0 { 1 } else { m as u64 });
    }
    debug_assert_eq!(leaders.len() as u64, 1 + ((1u64 << m) - 2) / m as u64);
    Ok(CosetTable {
        m,
        n,
        leaders,
        leader_of,
    })
}

/// The partition of Z_{2^m - 1} into paired classes B u (-B), m an odd
/// prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedCosetTable {
    m: u32,
    n: u64,
    leaders: Vec<u64>,
    leader_of: Vec<u64>,
}

impl PairedCosetTable {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn leaders(&self) -> &[u64] {
        &self.leaders
    }

    pub fn leader_of(&self, x: u64) -> u64 {
        self.leader_of[x as usize]
    }
}

/// Build the paired-class partition. Negation commutes with doubling, so
/// -B is itself a coset and the paired leader of x is the smaller of the
/// leaders of x and -x.
pub fn build_paired_coset_table(m: u32) -> Result<PairedCosetTable> {
    if m == 2 {
        return Err(Error::EvenPrimeNotAllowed);
    }
    let base = build_coset_table(m)?;
    let n = base.n();
    let leader_of: Vec<u64> = (0..n)
        .map(|x| base.leader_of(x).min(base.leader_of((n - x) % n)))
        .collect();
    let mut leaders: Vec<u64> = leader_of.to_vec();
    leaders.sort_unstable();
    leaders.dedup();

    // Disjointness of B and -B for nonzero B: every nonzero class has 2m
    // elements, and the class count matches (2^(m-1) + m - 1)/m.
    debug_assert!({
        let mut sizes = std::collections::HashMap::new();
        for &l in &leader_of {
            *sizes.entry(l).or_insert(0u64) += 1;
        }
        sizes.iter().all(|(&l, &s)| s == if l == 0 { 1 } else { 2 * m as u64 })
    });
    debug_assert_eq!(
        leaders.len() as u64,
        1 + ((1u64 << (m - 1)) - 1) / m as u64
    );

    Ok(PairedCosetTable {
        m,
        n,
        leaders,
        leader_of,
    })
}

/// The coset-leader labelling of Z_{2^m - 1}, labels densified by
/// ascending leader.
pub fn coset_zdb(m: u32) -> Result<ZdbFunction> {
    let table = build_coset_table(m)?;
    Ok(leader_labels(
        table.n(),
        table.leaders(),
        &table.leader_of,
        Family::Coset { m: m as u64 },
    ))
}

/// The paired-class labelling of Z_{2^m - 1}, m an odd prime.
pub fn pair_coset_zdb(m: u32) -> Result<ZdbFunction> {
    let table = build_paired_coset_table(m)?;
    Ok(leader_labels(
        table.n(),
        table.leaders(),
        &table.leader_of,
        Family::PairCoset { m: m as u64 },
    ))
}

fn leader_labels(n: u64, leaders: &[u64], leader_of: &[u64], family: Family) -> ZdbFunction {
    let rank: std::collections::HashMap<u64, u32> = leaders
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i as u32))
        .collect();
    let labels = leader_of.iter().map(|l| rank[l]).collect();
    let group = GroupSpec::cyclic(n).expect("n = 2^m - 1 >= 3");
    ZdbFunction::from_dense_labels(group, labels, family)
}
