//! Finite abelian groups with a dense element indexing.
//!
//! Two kinds are supported: the cyclic group Z_n, and the additive group of
//! a product of finite fields GF(q_1) x ... x GF(q_k). Product elements are
//! indexed in mixed radix with the first coordinate least significant, so
//! element 0 is always the group identity and every element is a plain
//! integer in `[0, n)`.
//!
//! Addition and negation on product groups go through small per-coordinate
//! lookup tables built at construction time; the exhaustive verifiers
//! perform on the order of n^2 additions, so these stay cheap.

use crate::algebra::{factor_prime_power, FieldSpec};
use crate::error::{Error, Result};

/// Per-coordinate digit tables are only precomputed for field orders up to
/// this bound; larger coordinates fall back to direct field arithmetic.
const TABLE_LIMIT: u64 = 1024;

/// The set of nonzero coordinates of a product-group element, as a bitmask
/// over coordinate positions `0..k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Support(u32);

impl Support {
    pub const EMPTY: Support = Support(0);

    pub fn from_bits(bits: u32) -> Self {
        Support(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn from_coords<I: IntoIterator<Item = usize>>(coords: I) -> Self {
        let mut bits = 0;
        for c in coords {
            bits |= 1 << c;
        }
        Support(bits)
    }

    pub fn contains(self, coord: usize) -> bool {
        self.0 >> coord & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Coordinate positions in ascending order.
    pub fn coords(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |c| bits >> c & 1 == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Inner {
    Cyclic {
        n: u64,
    },
    Product {
        fields: Vec<FieldSpec>,
        n: u64,
        /// Mixed-radix weight of each coordinate; weight of coordinate 0 is 1.
        weights: Vec<u64>,
        /// digits[i][x] is the i-th coordinate of element x.
        digits: Vec<Vec<u16>>,
        /// Flattened q_i^2 addition tables (None above `TABLE_LIMIT`).
        add_tab: Vec<Option<Vec<u16>>>,
        neg_tab: Vec<Vec<u16>>,
    },
}

/// A finite abelian group: Z_n or GF(q_1) x ... x GF(q_k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    inner: Inner,
}

impl GroupSpec {
    /// The cyclic group Z_n, n >= 2.
    pub fn cyclic(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::GroupTooSmall(n));
        }
        Ok(GroupSpec {
            inner: Inner::Cyclic { n },
        })
    }

    /// The additive group of GF(q_1) x ... x GF(q_k).
    ///
    /// The orders must be pairwise distinct prime powers with pairwise
    /// distinct characteristics; see
    /// [`GroupSpec::product_allow_repeated_primes`] to lift the second
    /// restriction.
    pub fn product(q_list: &[u64]) -> Result<Self> {
        Self::product_with_policy(q_list, false)
    }

    /// Like [`GroupSpec::product`], but allows two field orders to share a
    /// prime (e.g. `[3, 9]`). Constructions on such groups are not covered
    /// by the parameter formulas and rely on the exhaustive verifier.
    pub fn product_allow_repeated_primes(q_list: &[u64]) -> Result<Self> {
        Self::product_with_policy(q_list, true)
    }

    pub fn product_with_policy(q_list: &[u64], allow_repeated_primes: bool) -> Result<Self> {
        if q_list.is_empty() {
            return Err(Error::GroupTooSmall(1));
        }
        let mut seen: Vec<(u64, u64)> = Vec::new(); // (q, p)
        for &q in q_list {
            let (p, _) = factor_prime_power(q)?;
            for &(q0, p0) in &seen {
                if q0 == q {
                    return Err(Error::DuplicateFieldOrder(q));
                }
                if p0 == p && !allow_repeated_primes {
                    return Err(Error::RepeatedPrime { p, q1: q0, q2: q });
                }
            }
            seen.push((q, p));
        }
        let fields: Vec<FieldSpec> = q_list
            .iter()
            .map(|&q| FieldSpec::new(q))
            .collect::<Result<_>>()?;

        let mut weights = Vec::with_capacity(fields.len());
        let mut n: u64 = 1;
        for f in &fields {
            weights.push(n);
            n *= f.order();
        }

        let digits = fields
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let q = f.order();
                (0..n).map(|x| (x / weights[i] % q) as u16).collect()
            })
            .collect();
        let add_tab = fields
            .iter()
            .map(|f| {
                let q = f.order();
                if q > TABLE_LIMIT {
                    return None;
                }
                let mut tab = Vec::with_capacity((q * q) as usize);
                for a in 0..q {
                    for b in 0..q {
                        tab.push(f.add(a, b) as u16);
                    }
                }
                Some(tab)
            })
            .collect();
        let neg_tab = fields
            .iter()
            .map(|f| (0..f.order()).map(|a| f.neg(a) as u16).collect())
            .collect();

        Ok(GroupSpec {
            inner: Inner::Product {
                fields,
                n,
                weights,
                digits,
                add_tab,
                neg_tab,
            },
        })
    }

    pub fn order(&self) -> u64 {
        match &self.inner {
            Inner::Cyclic { n } => *n,
            Inner::Product { n, .. } => *n,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self.inner, Inner::Cyclic { .. })
    }

    /// Component fields of a product group, None for Z_n.
    pub fn field_specs(&self) -> Option<&[FieldSpec]> {
        match &self.inner {
            Inner::Cyclic { .. } => None,
            Inner::Product { fields, .. } => Some(fields),
        }
    }

    /// Number of coordinates (1 for Z_n).
    pub fn coordinate_count(&self) -> usize {
        match &self.inner {
            Inner::Cyclic { .. } => 1,
            Inner::Product { fields, .. } => fields.len(),
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.inner {
            Inner::Cyclic { n } => {
                let s = a + b;
                if s >= *n {
                    s - n
                } else {
                    s
                }
            }
            Inner::Product {
                fields,
                weights,
                digits,
                add_tab,
                ..
            } => {
                let mut idx = 0;
                for i in 0..fields.len() {
                    let da = digits[i][a as usize] as u64;
                    let db = digits[i][b as usize] as u64;
                    let sum = match &add_tab[i] {
                        Some(tab) => tab[(da * fields[i].order() + db) as usize] as u64,
                        None => fields[i].add(da, db),
                    };
                    idx += sum * weights[i];
                }
                idx
            }
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        match &self.inner {
            Inner::Cyclic { n } => (n - a) % n,
            Inner::Product {
                weights,
                digits,
                neg_tab,
                ..
            } => {
                let mut idx = 0;
                for i in 0..weights.len() {
                    let da = digits[i][a as usize] as usize;
                    idx += neg_tab[i][da] as u64 * weights[i];
                }
                idx
            }
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// Coordinates of an element (a single residue for Z_n).
    pub fn decode(&self, a: u64) -> Vec<u64> {
        match &self.inner {
            Inner::Cyclic { .. } => vec![a],
            Inner::Product { digits, .. } => digits
                .iter()
                .map(|col| col[a as usize] as u64)
                .collect(),
        }
    }

    /// Element index of a coordinate vector.
    pub fn encode(&self, coords: &[u64]) -> u64 {
        match &self.inner {
            Inner::Cyclic { .. } => coords[0],
            Inner::Product { weights, .. } => coords
                .iter()
                .zip(weights.iter())
                .map(|(&c, &w)| c * w)
                .sum(),
        }
    }

    /// The set of nonzero coordinates of `a`. Product groups only.
    pub fn support_of(&self, a: u64) -> Result<Support> {
        match &self.inner {
            Inner::Cyclic { .. } => Err(Error::CyclicGroupHasNoSupport),
            Inner::Product { digits, .. } => {
                let mut bits = 0;
                for (i, col) in digits.iter().enumerate() {
                    if col[a as usize] != 0 {
                        bits |= 1 << i;
                    }
                }
                Ok(Support::from_bits(bits))
            }
        }
    }

    /// All elements whose support is exactly `support`, in ascending index
    /// order. The class has size prod_{i in support} (q_i - 1).
    pub fn enumerate_support_class(&self, support: Support) -> Result<Vec<u64>> {
        let fields = match &self.inner {
            Inner::Cyclic { .. } => return Err(Error::CyclicGroupHasNoSupport),
            Inner::Product { fields, .. } => fields,
        };
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        let k = fields.len();
        assert!(
            support.bits() < 1 << k,
            "support refers to coordinates beyond the group's {k}"
        );
        let coords: Vec<usize> = support.coords().collect();
        let mut size = 1;
        for &c in &coords {
            size *= (fields[c].order() - 1) as usize;
        }
        let mut out = Vec::with_capacity(size);
        // Mixed-radix odometer over the support coordinates, values 1..q_i;
        // carrying on the least significant coordinate yields ascending
        // element indices.
        let mut vals: Vec<u64> = coords.iter().map(|_| 1).collect();
        loop {
            let mut full = vec![0u64; k];
            for (pos, &c) in coords.iter().enumerate() {
                full[c] = vals[pos];
            }
            out.push(self.encode(&full));
            let mut pos = 0;
            loop {
                if pos == coords.len() {
                    debug_assert_eq!(out.len(), size);
                    return Ok(out);
                }
                vals[pos] += 1;
                if vals[pos] < fields[coords[pos]].order() {
                    break;
                }
                vals[pos] = 1;
                pos += 1;
            }
        }
    }

    /// Re-index a product of prime fields to Z_n residues by the Chinese
    /// remainder correspondence: `map[index] = r` with `r = x_i (mod q_i)`.
    ///
    /// Fails with [`Error::NonCyclicGroup`] if any field has extension
    /// degree above 1 (the additive group is not cyclic there). For Z_n the
    /// map is the identity.
    pub fn cyclic_reindex(&self) -> Result<Vec<u64>> {
        match &self.inner {
            Inner::Cyclic { n } => Ok((0..*n).collect()),
            Inner::Product { fields, n, .. } => {
                if fields.iter().any(|f| f.degree() > 1) {
                    return Err(Error::NonCyclicGroup);
                }
                // Pairwise distinct primes, so the moduli are coprime.
                let mut basis = Vec::with_capacity(fields.len());
                for f in fields {
                    let q = f.order();
                    let rest = n / q;
                    let inv = crate::algebra::inverse_mod(rest % q, q)
                        .expect("moduli are pairwise coprime");
                    basis.push(rest * inv % n);
                }
                Ok((0..*n)
                    .map(|x| {
                        let coords = self.decode(x);
                        coords
                            .iter()
                            .zip(basis.iter())
                            .fold(0u64, |acc, (&c, &b)| (acc + c * b % n) % n)
                    })
                    .collect())
            }
        }
    }
}
