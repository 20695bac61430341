//! Arithmetic in `R = Z_n[x]/(x^2)`.
//!
//! Every element is `a*x + b` with `a, b` residues mod `n`; since `x^2 = 0`,
//! `(a1 x + b1)(a2 x + b2) = (a1 b2 + a2 b1) x + b1 b2`. Elements are indexed
//! densely as `a*n + b`, which is also the bit position used by [`ElementSet`].

use std::fmt;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted for full enumeration unless overridden.
pub const DEFAULT_MAX_N: u64 = 256;

/// An element `a*x + b` of `Z_n[x]/(x^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PolyElement {
    /// Coefficient of `x`.
    pub a: u64,
    /// Constant term.
    pub b: u64,
}

impl PolyElement {
    pub const ZERO: PolyElement = PolyElement { a: 0, b: 0 };
    pub const ONE: PolyElement = PolyElement { a: 0, b: 1 };

    pub const fn new(a: u64, b: u64) -> Self {
        Self { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl fmt::Display for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, b) => write!(f, "{b}"),
            (1, 0) => write!(f, "x"),
            (a, 0) => write!(f, "{a}x"),
            (1, b) => write!(f, "x+{b}"),
            (a, b) => write!(f, "{a}x+{b}"),
        }
    }
}

/// The modulus `n` together with its factorization and the enumeration cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingContext {
    n: u64,
    factorization: Vec<(u64, u32)>,
    max_n: u64,
}

impl RingContext {
    /// Context for `n` with the default enumeration cap.
    pub fn new(n: u64) -> Result<Self> {
        Self::with_cap(n, DEFAULT_MAX_N)
    }

    /// Context for `n` with an explicit cap on enumeration-heavy operations.
    ///
    /// Arithmetic works for any `n >= 2`; the cap is only enforced by
    /// [`RingContext::ensure_enumerable`].
    pub fn with_cap(n: u64, max_n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        // Products of two residues must fit in u64.
        if n > u32::MAX as u64 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Self {
            n,
            factorization: factorize(n),
            max_n,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factorization
    }

    /// The moduli `p_i^{k_i}` of the CRT components, in prime order.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factorization.iter().map(|&(p, k)| p.pow(k)).collect()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factorization.len() == 1
    }

    /// `n^2`, the number of ring elements.
    pub fn element_count(&self) -> usize {
        (self.n * self.n) as usize
    }

    /// Euler's totient of `n`.
    pub fn totient(&self) -> u64 {
        self.factorization
            .iter()
            .fold(self.n, |acc, &(p, _)| acc / p * (p - 1))
    }

    /// Number of units of `R`: `n * phi(n)`.
    pub fn unit_count(&self) -> usize {
        (self.n * self.totient()) as usize
    }

    /// Number of nonzero non-units, i.e. the order of the cozero-divisor graph.
    pub fn vertex_count(&self) -> usize {
        self.element_count() - self.unit_count() - 1
    }

    pub fn ensure_enumerable(&self) -> Result<()> {
        if self.n > self.max_n {
            Err(Error::CapExceeded {
                n: self.n,
                max_n: self.max_n,
            })
        } else {
            Ok(())
        }
    }

    pub fn element(&self, a: u64, b: u64) -> Result<PolyElement> {
        let e = PolyElement::new(a, b);
        self.validate(e)?;
        Ok(e)
    }

    pub fn validate(&self, e: PolyElement) -> Result<()> {
        if e.a < self.n && e.b < self.n {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                a: e.a,
                b: e.b,
                n: self.n,
            })
        }
    }

    #[inline]
    pub fn index_of(&self, e: PolyElement) -> usize {
        (e.a * self.n + e.b) as usize
    }

    #[inline]
    pub fn element_at(&self, index: usize) -> PolyElement {
        let i = index as u64;
        PolyElement::new(i / self.n, i % self.n)
    }

    /// All `n^2` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = PolyElement> + '_ {
        (0..self.element_count()).map(move |i| self.element_at(i))
    }

    /// Nonzero non-units in index order: the vertex set of the cozero-divisor graph.
    pub fn non_units(&self) -> impl Iterator<Item = PolyElement> + '_ {
        self.elements()
            .filter(move |e| !e.is_zero() && !self.is_unit(*e))
    }

    /// Units in index order.
    pub fn units(&self) -> impl Iterator<Item = PolyElement> + '_ {
        self.elements().filter(move |e| self.is_unit(*e))
    }

    #[inline]
    pub fn mul(&self, x: PolyElement, y: PolyElement) -> PolyElement {
        let n = self.n;
        PolyElement {
            a: (x.a * y.b % n + y.a * x.b % n) % n,
            b: x.b * y.b % n,
        }
    }

    #[inline]
    pub fn add(&self, x: PolyElement, y: PolyElement) -> PolyElement {
        PolyElement {
            a: (x.a + y.a) % self.n,
            b: (x.b + y.b) % self.n,
        }
    }

    /// `a*x + b` is a unit exactly when `b` is a unit mod `n`.
    #[inline]
    pub fn is_unit(&self, e: PolyElement) -> bool {
        e.b.gcd(&self.n) == 1
    }

    /// `R*e`, materialized by multiplying `e` with every ring element.
    pub fn principal_ideal(&self, e: PolyElement) -> ElementSet {
        let mut set = ElementSet::empty(self);
        for r in self.elements() {
            set.insert(self, self.mul(r, e));
        }
        set
    }

    /// Whether `y` lies in the principal ideal `R*x`.
    ///
    /// Solves `(c x + d)(a1 x + b1) = a2 x + b2`, i.e. `d b1 = b2` and
    /// `d a1 + c b1 = a2` mod `n`, without enumerating the ideal. With
    /// `g = gcd(b1, n)` and `m = n/g`, the first congruence needs `g | b2`
    /// and then `d = d0 + t m`; the second holds for some `c` iff
    /// `a2 - d a1 = 0 mod g`, a linear congruence in `t` modulo `g`.
    pub fn in_ideal(&self, y: PolyElement, x: PolyElement) -> bool {
        let n = self.n as i64;
        let (a1, b1) = (x.a as i64, x.b as i64);
        let (a2, b2) = (y.a as i64, y.b as i64);

        let g = b1.gcd(&n);
        if b2 % g != 0 {
            return false;
        }
        let m = n / g;
        let d0 = if m == 1 {
            0
        } else {
            let inv = mod_inverse((b1 / g).rem_euclid(m), m);
            ((b2 / g) % m) * inv % m
        };
        // t * (m * a1) = a2 - d0 * a1  (mod g)
        let coeff = (m % g) * (a1 % g) % g;
        let rhs = (a2 - d0 * a1 % g).rem_euclid(g);
        rhs % coeff.gcd(&g) == 0
    }

    /// CRT images of `e`, one per prime-power factor of `n`.
    pub fn crt_split(&self, e: PolyElement) -> Vec<PolyElement> {
        self.prime_powers()
            .into_iter()
            .map(|q| PolyElement::new(e.a % q, e.b % q))
            .collect()
    }

    /// Contexts of the local factors `Z_{p^k}[x]/(x^2)`, aligned with [`RingContext::crt_split`].
    pub fn local_contexts(&self) -> Vec<RingContext> {
        self.prime_powers()
            .into_iter()
            .map(|q| RingContext {
                n: q,
                factorization: factorize(q),
                max_n: self.max_n.max(q),
            })
            .collect()
    }
}

/// A subset of the ring stored as a bitset over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    n: u64,
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(ctx: &RingContext) -> Self {
        Self {
            n: ctx.n,
            bits: FixedBitSet::with_capacity(ctx.element_count()),
        }
    }

    pub fn insert(&mut self, ctx: &RingContext, e: PolyElement) {
        self.bits.insert(ctx.index_of(e));
    }

    pub fn contains(&self, e: PolyElement) -> bool {
        e.a < self.n && e.b < self.n && self.bits.contains((e.a * self.n + e.b) as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn iter(&self) -> impl Iterator<Item = PolyElement> + '_ {
        let n = self.n;
        self.bits
            .ones()
            .map(move |i| PolyElement::new(i as u64 / n, i as u64 % n))
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Inverse of `a` modulo `m`; `a` must be coprime to `m`.
fn mod_inverse(a: i64, m: i64) -> i64 {
    let eg = a.extended_gcd(&m);
    debug_assert_eq!(eg.gcd, 1);
    eg.x.rem_euclid(m)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(a: u64, b: u64) -> PolyElement {
        PolyElement::new(a, b)
    }

    #[test]
    fn mul_examples() {
        let r10 = RingContext::new(10).unwrap();
        assert_eq!(r10.mul(el(1, 2), el(3, 5)), el(1, 0));
        let r4 = RingContext::new(4).unwrap();
        assert_eq!(r4.mul(el(2, 2), el(2, 2)), el(0, 0));
        for n in 2..=12 {
            let ctx = RingContext::new(n).unwrap();
            for e in ctx.elements() {
                assert_eq!(ctx.mul(e, PolyElement::ONE), e);
            }
        }
    }

    #[test]
    fn unit_examples() {
        let r10 = RingContext::new(10).unwrap();
        assert!(r10.is_unit(el(3, 7)));
        assert!(!r10.is_unit(el(2, 5)));
        assert!(RingContext::new(2).unwrap().is_unit(el(1, 1)));
    }

    #[test]
    fn principal_ideal_examples() {
        let r3 = RingContext::new(3).unwrap();
        let i = r3.principal_ideal(el(1, 0));
        assert_eq!(
            i.iter().collect::<Vec<_>>(),
            vec![el(0, 0), el(1, 0), el(2, 0)]
        );

        let r10 = RingContext::new(10).unwrap();
        let two = r10.principal_ideal(el(0, 2));
        assert_eq!(two.len(), 25);
        assert!(two.iter().all(|e| e.a % 2 == 0 && e.b % 2 == 0));
        assert_eq!(r10.principal_ideal(PolyElement::ZERO).len(), 1);
    }

    #[test]
    fn in_ideal_examples() {
        let r10 = RingContext::new(10).unwrap();
        assert!(!r10.in_ideal(el(0, 5), el(0, 2)));
        assert!(r10.in_ideal(el(5, 0), el(1, 2)));
        for x in r10.elements() {
            assert!(r10.in_ideal(PolyElement::ZERO, x));
        }
    }

    #[test]
    fn crt_split_examples() {
        let r10 = RingContext::new(10).unwrap();
        assert_eq!(r10.crt_split(el(7, 6)), vec![el(1, 0), el(2, 1)]);
        let r30 = RingContext::new(30).unwrap();
        assert_eq!(r30.crt_split(el(0, 15)), vec![el(0, 1), el(0, 0), el(0, 0)]);
        let r27 = RingContext::new(27).unwrap();
        assert_eq!(r27.crt_split(el(13, 9)), vec![el(13, 9)]);
    }

    #[test]
    fn factorization_and_counts() {
        let ctx = RingContext::new(360).unwrap();
        assert_eq!(ctx.factorization(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(ctx.prime_powers(), vec![8, 9, 5]);
        assert_eq!(ctx.totient(), 96);
        assert_eq!(RingContext::new(10).unwrap().vertex_count(), 59);
        assert_eq!(RingContext::new(30).unwrap().vertex_count(), 659);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(RingContext::new(1), Err(Error::InvalidModulus(1)));
        let ctx = RingContext::with_cap(300, 256).unwrap();
        assert!(matches!(
            ctx.ensure_enumerable(),
            Err(Error::CapExceeded { .. })
        ));
        assert!(ctx.element(300, 0).is_err());
    }
}
