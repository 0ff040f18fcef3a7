//! Exact modular arithmetic over arbitrary-precision integers.
//!
//! Every congruence this crate verifies reduces rationals and long integer
//! products modulo odd prime powers and small multiples of them, so this
//! layer is strictly exact: no floats, no wraparound, every inverse from an
//! extended gcd with an explicit error when none exists. Residues are kept
//! canonical in `[0, m)` so that rendered reports are bit-stable.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Prime factorization of a positive integer: ascending primes, exponents >= 1.
///
/// The empty list represents 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(BigInt, u32)>,
}

impl Factorization {
    /// The (prime, exponent) pairs in ascending prime order.
    pub fn pairs(&self) -> &[(BigInt, u32)] {
        &self.pairs
    }

    /// Multiplies the factorization back into the integer it represents.
    pub fn value(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (p, e) in &self.pairs {
            acc *= p.pow(*e);
        }
        acc
    }

    /// Number of distinct prime factors.
    pub fn distinct_primes(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_prime(&self) -> bool {
        self.pairs.len() == 1 && self.pairs[0].1 == 1
    }

    pub fn is_prime_power(&self) -> bool {
        self.pairs.len() == 1
    }

    /// Scales every exponent, i.e. maps the factorization of n to that of n^k.
    pub fn pow(&self, k: u32) -> Factorization {
        assert!(k >= 1, "zero power would collapse the factorization");
        Factorization {
            pairs: self.pairs.iter().map(|(p, e)| (p.clone(), e * k)).collect(),
        }
    }

    /// Union of two factorizations with disjoint prime support.
    fn merge_coprime(&self, other: &Factorization) -> Factorization {
        let mut pairs = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.pairs.len() && j < other.pairs.len() {
            if self.pairs[i].0 < other.pairs[j].0 {
                pairs.push(self.pairs[i].clone());
                i += 1;
            } else {
                pairs.push(other.pairs[j].clone());
                j += 1;
            }
        }
        pairs.extend_from_slice(&self.pairs[i..]);
        pairs.extend_from_slice(&other.pairs[j..]);
        Factorization { pairs }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Deterministic trial-division factorization of a positive integer.
///
/// Grid moduli stay far below 10^7, so trial division is exact and fast; a
/// u64 fast path covers everything the grids produce, with a big-integer
/// fallback for larger library callers.
pub fn factorize(n: &BigInt) -> Factorization {
    assert!(n.is_positive(), "factorize requires a positive integer, got {n}");
    if let Some(small) = n.to_u64() {
        return factorize_u64(small);
    }
    let mut remaining = n.clone();
    let mut pairs = Vec::new();
    let mut d = BigInt::from(2u32);
    while &d * &d <= remaining {
        if remaining.is_multiple_of(&d) {
            let mut e = 0u32;
            while remaining.is_multiple_of(&d) {
                remaining /= &d;
                e += 1;
            }
            pairs.push((d.clone(), e));
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if remaining > BigInt::one() {
        pairs.push((remaining, 1));
    }
    Factorization { pairs }
}

fn factorize_u64(mut n: u64) -> Factorization {
    let mut pairs = Vec::new();
    let mut push = |p: u64, e: u32| pairs.push((BigInt::from(p), e));
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0u32;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            push(d, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        push(n, 1);
    }
    Factorization { pairs }
}

/// A modulus (>= 2) with its factorization cached for CRT and totient work.
///
/// Cheap to clone and share across threads.
#[derive(Clone)]
pub struct Modulus(Arc<ModulusInner>);

struct ModulusInner {
    value: BigInt,
    factors: Factorization,
}

impl Modulus {
    pub fn new(value: BigInt) -> Modulus {
        assert!(
            value >= BigInt::from(2u32),
            "modulus must be at least 2, got {value}"
        );
        let factors = factorize(&value);
        Modulus(Arc::new(ModulusInner { value, factors }))
    }

    pub fn from_u64(value: u64) -> Modulus {
        Modulus::new(BigInt::from(value))
    }

    /// Builds a modulus from a known factorization, skipping re-factorization.
    pub fn from_factorization(factors: Factorization) -> Modulus {
        let value = factors.value();
        assert!(
            value >= BigInt::from(2u32),
            "modulus must be at least 2, got {value}"
        );
        Modulus(Arc::new(ModulusInner { value, factors }))
    }

    pub fn value(&self) -> &BigInt {
        &self.0.value
    }

    pub fn factors(&self) -> &Factorization {
        &self.0.factors
    }

    /// Canonicalizes an integer into this modulus.
    pub fn residue(&self, value: BigInt) -> Residue {
        Residue {
            value: value.mod_floor(self.value()),
            modulus: self.clone(),
        }
    }

    pub fn zero(&self) -> Residue {
        self.residue(BigInt::zero())
    }

    pub fn one(&self) -> Residue {
        self.residue(BigInt::one())
    }
}

impl PartialEq for Modulus {
    fn eq(&self, other: &Self) -> bool {
        self.value() == other.value()
    }
}

impl Eq for Modulus {}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Modulus({})", self.value())
    }
}

/// A canonical residue: `0 <= value < modulus`.
#[derive(Clone, PartialEq, Eq)]
pub struct Residue {
    value: BigInt,
    modulus: Modulus,
}

impl Residue {
    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// The canonical representative as an owned integer.
    pub fn lift(&self) -> BigInt {
        self.value.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn inv(&self) -> Result<Residue> {
        mod_inv(&self.value, &self.modulus)
    }

    pub fn pow_signed(&self, e: &BigInt) -> Result<Residue> {
        mod_pow_signed(&self.value, e, &self.modulus)
    }

    /// Reduces this residue into a divisor of its modulus.
    pub fn reduce_into(&self, m: &Modulus) -> Residue {
        debug_assert!(
            self.modulus.value().is_multiple_of(m.value()),
            "reduce_into target must divide the source modulus"
        );
        m.residue(self.value.clone())
    }

    fn combine(&self, other: &Residue, f: impl FnOnce(&BigInt, &BigInt) -> BigInt) -> Residue {
        assert!(
            self.modulus == other.modulus,
            "mixed moduli {} and {}",
            self.modulus,
            other.modulus
        );
        self.modulus.residue(f(&self.value, &other.value))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Residue({} mod {})", self.value, self.modulus)
    }
}

impl std::ops::Add for &Residue {
    type Output = Residue;
    fn add(self, rhs: &Residue) -> Residue {
        self.combine(rhs, |a, b| a + b)
    }
}

impl std::ops::Sub for &Residue {
    type Output = Residue;
    fn sub(self, rhs: &Residue) -> Residue {
        self.combine(rhs, |a, b| a - b)
    }
}

impl std::ops::Mul for &Residue {
    type Output = Residue;
    fn mul(self, rhs: &Residue) -> Residue {
        self.combine(rhs, |a, b| a * b)
    }
}

impl std::ops::Neg for &Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        self.modulus.residue(-&self.value)
    }
}

/// Modular inverse by extended gcd.
pub fn mod_inv(a: &BigInt, m: &Modulus) -> Result<Residue> {
    let reduced = a.mod_floor(m.value());
    let ext = reduced.extended_gcd(m.value());
    if ext.gcd.is_one() {
        Ok(m.residue(ext.x))
    } else {
        Err(Error::NotInvertible { gcd: ext.gcd })
    }
}

/// `a^e mod m`, with negative exponents routed through the inverse of `a`.
pub fn mod_pow_signed(a: &BigInt, e: &BigInt, m: &Modulus) -> Result<Residue> {
    let base = a.mod_floor(m.value());
    if e.is_negative() {
        let inv = mod_inv(&base, m)?;
        Ok(m.residue(inv.value().modpow(&(-e), m.value())))
    } else {
        Ok(m.residue(base.modpow(e, m.value())))
    }
}

/// Reduces an exact rational modulo `m` via the inverse of its denominator.
pub fn rational_mod(q: &BigRational, m: &Modulus) -> Result<Residue> {
    let inv_denom = mod_inv(q.denom(), m)?;
    Ok(m.residue(q.numer() * inv_denom.value()))
}

/// Chinese-remainder reconstruction over pairwise-coprime moduli.
///
/// The combined modulus reuses the parts' cached factorizations.
pub fn crt_combine(parts: &[Residue]) -> Result<Residue> {
    let (first, rest) = parts
        .split_first()
        .expect("crt_combine requires at least one residue");
    let mut acc = first.clone();
    for part in rest {
        acc = crt_pair(&acc, part)?;
    }
    Ok(acc)
}

fn crt_pair(a: &Residue, b: &Residue) -> Result<Residue> {
    let (m1, m2) = (a.modulus(), b.modulus());
    let gcd = m1.value().gcd(m2.value());
    if !gcd.is_one() {
        return Err(Error::NonCoprimeModuli { gcd });
    }
    // x = a + m1 * ((b - a) / m1 mod m2) satisfies both congruences.
    let inv_m1 = mod_inv(m1.value(), m2)?;
    let diff = m2.residue(b.value() - a.value());
    let step = (&diff * &inv_m1).lift();
    let combined = Modulus::from_factorization(m1.factors().merge_coprime(m2.factors()));
    Ok(combined.residue(a.value() + m1.value() * step))
}

/// Truncated binomial expansion of `u^t` for a unit `u ≡ 1 (mod n)` and a
/// rational exponent `t`, carried to the quadratic term:
/// `1 + t·a + t(t-1)/2 · a²` where `a = u - 1`.
///
/// Every use site works modulo n³ (or n³/3) with `n | a`, so `a³ ≡ 0` and the
/// truncation is exact; for integer `t` this equals the ordinary power.
pub fn unit_power_formal(u: &Residue, t: &BigRational, n: &BigInt) -> Result<Residue> {
    let a = u.value() - BigInt::one();
    if !a.mod_floor(n).is_zero() {
        return Err(Error::BadHypothesis(format!(
            "unit_power_formal needs u ≡ 1 (mod {n}), got u = {}",
            u.value()
        )));
    }
    let m = u.modulus();
    let linear = rational_mod(t, m)?;
    let half_t_tm1 = t * (t - BigRational::one()) / BigRational::from_integer(2.into());
    let quadratic = rational_mod(&half_t_tm1, m)?;
    Ok(m.residue(BigInt::one() + linear.value() * &a + quadratic.value() * (&a * &a)))
}
