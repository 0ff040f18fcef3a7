//! Classical and specialized multiplicative functions.
//!
//! Besides the textbook trio (divisors, Mobius, Euler phi) this module houses
//! the pieces the congruence layer is really about: the two-valued unit
//! `J_e(n)` (+1 when `n ≡ 1 (mod e)`, -1 when `n ≡ -1 (mod e)`, undefined
//! otherwise), the generalized totient
//! `φ_f^(k)(n) = Σ_{d|n} (n/d)^k f(d) μ(d)`, its integer specialization
//! `combined_totient`, the floor totient `φ_e(n) = Σ_{d|n} μ(n/d)·⌊d/e⌋`, and
//! Euler quotients `q_r(n) = (r^φ(n) - 1)/n` at a chosen modular precision.
//!
//! Arguments live at grid scale (`u64`); values that can grow (powers,
//! quotients) are returned as big integers, rationals, or residues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::modular::{factorize, mod_pow_signed, Modulus, Residue};
use crate::{Error, Result};

/// Weight function of a generalized totient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// Constant 1; exponent k then gives the Jordan totient J_k.
    One,
    /// The two-valued unit J_e for e in {2, 3, 4, 6}.
    Jacobi(u32),
}

impl Weight {
    fn apply(&self, d: u64) -> Result<i64> {
        match self {
            Weight::One => Ok(1),
            Weight::Jacobi(e) => jacobi_unit(*e, d).map(i64::from),
        }
    }
}

/// Parameters of `φ_f^(k)`: a weight `f` and an integer exponent `k`,
/// possibly negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TotientSpec {
    pub weight: Weight,
    pub exponent: i64,
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors requires a positive integer");
    let mut out = vec![1u64];
    for (p, e) in factorize(&BigInt::from(n)).pairs() {
        let p = u64::try_from(p.clone()).expect("factor of a u64 fits in u64");
        let base = out.clone();
        let mut power = 1u64;
        for _ in 0..*e {
            power *= p;
            out.extend(base.iter().map(|d| d * power));
        }
    }
    out.sort_unstable();
    out
}

/// Mobius function: 0 on non-squarefree arguments, else (-1)^(#prime factors).
pub fn moebius(n: u64) -> i8 {
    assert!(n >= 1, "moebius requires a positive integer");
    let f = factorize(&BigInt::from(n));
    if f.pairs().iter().any(|(_, e)| *e > 1) {
        0
    } else if f.distinct_primes() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler's totient, from the factorization.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires a positive integer");
    let mut phi = 1u64;
    for (p, e) in factorize(&BigInt::from(n)).pairs() {
        let p = u64::try_from(p.clone()).expect("factor of a u64 fits in u64");
        phi *= p.pow(e - 1) * (p - 1);
    }
    phi
}

/// The unit `J_e(n)`: +1 if `n ≡ 1 (mod e)`, -1 if `n ≡ -1 (mod e)`.
///
/// The +1 branch is checked first, so for e = 2 every odd n gives +1 even
/// though 1 ≡ -1 (mod 2). Any other residue class is an error: the symbol is
/// simply not defined there.
pub fn jacobi_unit(e: u32, n: u64) -> Result<i8> {
    assert!(
        matches!(e, 2 | 3 | 4 | 6),
        "J_e is only defined for e in {{2, 3, 4, 6}}, got {e}"
    );
    let r = n % u64::from(e);
    if r == 1 {
        Ok(1)
    } else if r == u64::from(e) - 1 {
        Ok(-1)
    } else {
        Err(Error::UndefinedSymbol { e, n: BigInt::from(n) })
    }
}

fn rational_power(base: u64, k: i64) -> BigRational {
    let mag = BigInt::from(base).pow(u32::try_from(k.unsigned_abs()).expect("exponent fits u32"));
    if k >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// `φ_f^(k)(n) = Σ_{d|n} (n/d)^k f(d) μ(d)` as an exact rational.
///
/// Equivalently `n^k · Π_{p|n} (1 - f(p) p^(-k))`; the divisor-sum form is
/// evaluated here and the product form is kept as a tested identity.
pub fn generalized_totient(spec: &TotientSpec, n: u64) -> Result<BigRational> {
    assert!(n >= 1, "generalized_totient requires a positive integer");
    let mut acc = BigRational::zero();
    for d in divisors(n) {
        let mu = moebius(d);
        if mu == 0 {
            continue;
        }
        let weight = spec.weight.apply(d)?;
        let term = rational_power(n / d, spec.exponent)
            * BigRational::from_integer(BigInt::from(i64::from(mu) * weight));
        acc += term;
    }
    Ok(acc)
}

/// `Π_{p|n} (1 - J_e(p)·p^E)`, the integer form of the generalized totient
/// that the sum-of-inverse-squares congruence is stated with.
///
/// Equals `n^E · φ_{J_e}^(-E)(n)` exactly.
pub fn combined_totient(e: u32, n: u64, exponent: u32) -> Result<BigInt> {
    assert!(n >= 1, "combined_totient requires a positive integer");
    let mut acc = BigInt::one();
    for (p, _) in factorize(&BigInt::from(n)).pairs() {
        let p_small = u64::try_from(p.clone()).expect("factor of a u64 fits in u64");
        let unit = jacobi_unit(e, p_small)?;
        acc *= BigInt::one() - BigInt::from(unit) * p.pow(exponent);
    }
    Ok(acc)
}

/// [`combined_totient`] at the exponent `φ(n) - 2` used by the main
/// congruences.
pub fn combined_totient_default(e: u32, n: u64) -> Result<BigInt> {
    if n == 1 {
        return Ok(BigInt::one());
    }
    let phi = euler_phi(n);
    if phi < 2 {
        return Err(Error::BadHypothesis(format!(
            "combined_totient needs φ(n) ≥ 2, but φ({n}) = {phi}"
        )));
    }
    combined_totient(e, n, u32::try_from(phi - 2).expect("totient exponent fits u32"))
}

/// Floor totient `φ_e(n) = Σ_{d|n} μ(n/d)·⌊d/e⌋`, which counts the units
/// `1 ≤ r ≤ ⌊n/e⌋` coprime to `n`.
pub fn floor_totient(e: u32, n: u64) -> u64 {
    assert!(e >= 2, "floor_totient requires e ≥ 2");
    assert!(n >= 1, "floor_totient requires a positive integer");
    let mut acc: i128 = 0;
    for d in divisors(n) {
        let mu = moebius(n / d);
        if mu != 0 {
            acc += i128::from(mu) * i128::from(d / u64::from(e));
        }
    }
    u64::try_from(acc).expect("floor totient is non-negative")
}

/// Euler quotient `q_r(n) = (r^φ(n) - 1)/n`, reduced mod `n^precision_power`.
///
/// The power `r^φ(n)` is taken mod `n^(precision_power + 1)`, which pins the
/// quotient down exactly mod `n^precision_power`.
pub fn euler_quotient(r: i64, n: u64, precision_power: u32) -> Result<Residue> {
    assert!(precision_power >= 1, "precision_power must be at least 1");
    if n <= 1 {
        return Err(Error::BadHypothesis(format!(
            "Euler quotients need n > 1, got n = {n}"
        )));
    }
    let n_big = BigInt::from(n);
    if !BigInt::from(r).gcd(&n_big).is_one() {
        return Err(Error::NotCoprime {
            value: BigInt::from(r),
            modulus: n_big,
        });
    }
    let factors = factorize(&n_big);
    let wide = Modulus::from_factorization(factors.pow(precision_power + 1));
    let phi = BigInt::from(euler_phi(n));
    let power = mod_pow_signed(&BigInt::from(r), &phi, &wide)?;
    let (quotient, rem) = (power.value() - BigInt::one()).div_rem(&n_big);
    debug_assert!(rem.is_zero(), "r^φ(n) - 1 is divisible by n");
    let narrow = Modulus::from_factorization(factors.pow(precision_power));
    Ok(narrow.residue(quotient))
}
