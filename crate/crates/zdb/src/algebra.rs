//! Exact integer and finite-field arithmetic.
//!
//! Everything here is deterministic and exact: primality and prime-power
//! recognition by trial division, modular inverses by extended Euclid, and
//! concrete models of GF(p^m) with a fixed irreducible modulus and a fixed
//! multiplicative generator. The fields involved are small, so the code
//! favours reproducibility over asymptotics: the modulus is the
//! lexicographically smallest monic irreducible polynomial (compared from
//! the constant term upward as a base-p integer) and the generator is the
//! smallest element value of full multiplicative order. Repeated calls with
//! the same order always produce the identical field model.

use crate::error::{Error, Result};

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Decompose `q = p^m` with `p` prime, by trial division.
///
/// Fails with [`Error::NotPrimePower`] when `q < 2` or `q` has two distinct
/// prime factors.
pub fn factor_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 0;
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        // q itself is prime.
        return Ok((q, 1));
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, m))
}

/// Inverse of `a` modulo `n` in `[1, n)`, by extended Euclid.
pub fn inverse_mod(a: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::NotInvertible { a, n });
    }
    let a0 = a % n;
    if gcd(a0, n) != 1 {
        return Err(Error::NotInvertible { a, n });
    }
    let (mut r0, mut r1) = (n as i128, a0 as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    debug_assert_eq!(r0, 1);
    Ok(t0.rem_euclid(n as i128) as u64)
}

/// All divisors of `n`, sorted ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// A concrete model of GF(p^m).
///
/// Elements are encoded as integers in `[0, q)`: the coefficient vector
/// `(c_0, ..., c_{m-1})` of a residue polynomial becomes `sum c_j * p^j`.
/// Value 0 is the additive identity and value 1 the multiplicative one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus of degree m, little-endian coefficients (length m + 1).
    /// For m = 1 this is the placeholder `x`.
    modulus: Vec<u64>,
    generator: u64,
}

impl FieldSpec {
    /// Build the canonical field of order `q`.
    pub fn new(q: u64) -> Result<Self> {
        let (p, m) = factor_prime_power(q)?;
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, m)
        };
        let mut spec = FieldSpec {
            p,
            m,
            q,
            modulus,
            generator: 1,
        };
        spec.generator = spec.find_generator();
        Ok(spec)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The designated generator of the multiplicative group.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    fn decode(&self, v: u64) -> Vec<u64> {
        let mut digits = vec![0; self.m as usize];
        let mut v = v;
        for d in digits.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        let mut v = 0;
        for &d in digits.iter().rev() {
            v = v * self.p + d;
        }
        v
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if self.m == 1 {
            return (a + b) % self.p;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = da
            .iter()
            .zip(db.iter())
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(a < self.q);
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        if self.p == 2 {
            return a;
        }
        let digits: Vec<u64> = self.decode(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.encode(&digits)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if self.m == 1 {
            return (a * b) % self.p;
        }
        let (da, db) = (self.decode(a), self.decode(b));
        let m = self.m as usize;
        // Convolve, then reduce by the monic modulus from the top down.
        let mut buf = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                buf[i + j] = (buf[i + j] + x * y) % self.p;
            }
        }
        for i in (m..2 * m - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..m {
                let sub = (c * self.modulus[j]) % self.p;
                buf[i - m + j] = (buf[i - m + j] + self.p - sub) % self.p;
            }
        }
        self.encode(&buf[..m])
    }

    /// `a^t` by square-and-multiply.
    pub fn pow(&self, a: u64, t: u64) -> u64 {
        let mut base = a;
        let mut t = t;
        let mut acc = 1;
        while t > 0 {
            if t & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            t >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Exact multiplicative order, found by testing the divisors of q - 1.
    pub fn element_order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        for d in divisors(self.q - 1) {
            if self.pow(a, d) == 1 {
                return Ok(d);
            }
        }
        unreachable!("a^(q-1) = 1 for every nonzero a")
    }

    fn find_generator(&self) -> u64 {
        let target = self.q - 1;
        for v in 1..self.q {
            if self.element_order(v).expect("nonzero") == target {
                return v;
            }
        }
        unreachable!("every finite field has a generator")
    }
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`
/// over GF(p), comparing coefficient vectors from the constant term upward
/// as base-p integers.
fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
    let count = p.pow(m);
    for t in 0..count {
        let mut coeffs = Vec::with_capacity(m as usize + 1);
        let mut v = t;
        for _ in 0..m {
            coeffs.push(v % p);
            v /= p;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

/// Irreducibility by trial division: no monic factor of degree 1..=m/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by x
    }
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for t in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = t;
            for _ in 0..d {
                g.push(v % p);
                v /= p;
            }
            g.push(1);
            if poly_rem_is_zero(f, &g, p) {
                return false;
            }
        }
    }
    true
}

/// Whether the monic divisor `g` divides `f` over GF(p).
fn poly_rem_is_zero(f: &[u64], g: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    while rem.len() > dg {
        let lead = *rem.last().expect("nonempty");
        let shift = rem.len() - 1 - dg;
        if lead != 0 {
            for (j, &gj) in g.iter().enumerate() {
                let sub = (lead * gj) % p;
                rem[shift + j] = (rem[shift + j] + p - sub) % p;
            }
        }
        rem.pop();
        while rem.len() > dg && *rem.last().expect("nonempty") == 0 {
            rem.pop();
        }
    }
    rem.iter().all(|&c| c == 0)
}
