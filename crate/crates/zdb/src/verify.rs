//! The two exhaustive balance oracles.
//!
//! [`verify_zdb`] works on the shift side: for every nonzero `a` it counts
//! `c(a) = |{x : f(x + a) = f(x)}|` and demands that all counts agree. Its
//! cost is O(n^2) group additions.
//!
//! [`verify_pdf`] works on the partition side: for every nonzero difference
//! `d` it counts the ordered within-class pairs `(u, v)` with `u - v = d`
//! and demands that every `d` is covered exactly `lambda` times. The two
//! computations are two views of the same pairing and must always agree;
//! they are kept independent of each other so that either can serve as an
//! oracle for the other.
//!
//! Neither oracle reads the family metadata of the table it checks. The
//! per-shift counts are independent of one another, so the outer loop of
//! `verify_zdb` parallelizes trivially; a single thread is fast enough at
//! the group orders handled here, and the verdict (including the witness
//! pair on rejection) does not depend on evaluation order.

use std::fmt;

use crate::function::{ZdbFunction, ZdbParams};

/// Witness that a table is not balanced: two shifts with different
/// agreement counts. `verify_zdb` returns the lexicographically first such
/// pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotZdb {
    pub shift_a: u64,
    pub count_a: u64,
    pub shift_b: u64,
    pub count_b: u64,
}

impl fmt::Display for NotZdb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "not zero-difference balanced: c({}) = {} but c({}) = {}",
            self.shift_a, self.count_a, self.shift_b, self.count_b
        )
    }
}

/// Exhaustively check the zero-difference balance of a table.
///
/// Returns the parameters on success, or the first witness pair of shifts
/// with different agreement counts. A constant table is balanced with
/// `lambda = n`, and a table of singletons with `lambda = 0`.
pub fn verify_zdb(f: &ZdbFunction) -> Result<ZdbParams, NotZdb> {
    let g = f.group();
    let n = g.order();

    let mut reference = None;
    for a in 1..n {
        let count = agreement_count(f, a);
        match reference {
            None => reference = Some(count),
            Some(c1) if c1 != count => {
                return Err(NotZdb {
                    shift_a: 1,
                    count_a: c1,
                    shift_b: a,
                    count_b: count,
                })
            }
            Some(_) => {}
        }
    }

    let mut tau = f.histogram();
    tau.sort_unstable();
    Ok(ZdbParams {
        n,
        ell_bar: tau.len() as u64,
        lambda: reference.expect("groups have order at least 2"),
        tau,
    })
}

/// `c(a) = |{x : f(x + a) = f(x)}|` for one shift.
pub(crate) fn agreement_count(f: &ZdbFunction, a: u64) -> u64 {
    let g = f.group();
    let labels = f.labels();
    if g.is_cyclic() {
        // x + a wraps exactly once; compare the two runs directly.
        let a = a as usize;
        let head = labels[a..]
            .iter()
            .zip(labels.iter())
            .filter(|(x, y)| x == y)
            .count();
        let tail = labels[..a]
            .iter()
            .zip(labels[labels.len() - a..].iter())
            .filter(|(x, y)| x == y)
            .count();
        (head + tail) as u64
    } else {
        (0..g.order())
            .filter(|&x| labels[g.add(x, a) as usize] == labels[x as usize])
            .count() as u64
    }
}

/// Independent partition-side oracle: recount, for each nonzero difference,
/// the ordered within-class pairs, and compare against `params.lambda`.
pub fn verify_pdf(f: &ZdbFunction, params: &ZdbParams) -> bool {
    let g = f.group();
    let n = g.order() as usize;
    let mut coverage = vec![0u64; n];
    for class in f.preimages() {
        for &u in &class {
            for &v in &class {
                if u != v {
                    coverage[g.sub(u, v) as usize] += 1;
                }
            }
        }
    }
    coverage[1..].iter().all(|&c| c == params.lambda)
}
