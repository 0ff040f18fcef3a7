//! Direct verifications of the auxiliary identities: prime-power sums of
//! even powers against Bernoulli values, the Bernoulli-polynomial shift
//! identity behind the floor-weighted sums, and Legendre-formula valuations
//! used to handle the prime 3 in the two-prime binomial congruence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::bernoulli::{bernoulli_number, bernoulli_poly};
use crate::modular::{factorize, rational_mod, Modulus};
use crate::{Error, Result};

use super::{CheckResult, ClaimId, ClaimParams, CongruenceClaim};

/// p-adic valuation of n! by Legendre's formula: Σ_{i ≥ 1} ⌊n/pⁱ⌋.
pub fn ord_factorial(n: u64, p: u64) -> u64 {
    assert!(p >= 2, "ord_factorial needs p ≥ 2");
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// 3-adic valuation of the central-type binomial C(kq-1, (q-1)/2), computed
/// through factorial valuations. Positive whenever carries occur in the
/// base-3 addition of (q-1)/2 and (2k-1)(q-1)/2 + (k-1).
pub fn central_binomial_three_valuation(q: u64, k: u32) -> u64 {
    assert!(q % 2 == 1 && q > 1 && k >= 1, "expects odd q > 1 and k ≥ 1");
    let top = u64::from(k) * q - 1;
    let half = (q - 1) / 2;
    ord_factorial(top, 3) - ord_factorial(half, 3) - ord_factorial(top - half, 3)
}

/// Checks the power-sum congruence at a prime power: for p ≥ 5, l ≥ 1,
/// t ≥ 2, k ≥ 2,
///
/// Σ_{r=1}^{⌊pˡ/t⌋} (pˡ - tr)^(2k)
///   ≡ (t^(2k)/(2k+1))·{(2k+1)/t · pˡ·B_(2k) - B_(2k+1)(s/t)}  (mod p^(3l-1)),
///
/// where s is the least positive residue of pˡ mod t (taken as t when the
/// remainder vanishes). The right side is assembled as one exact rational
/// and reduced once, so invertibility is decided by its reduced denominator.
pub fn lemma1_check(p: u64, l: u32, t: u32, k: u32) -> Result<CheckResult> {
    if p < 5 || !factorize(&BigInt::from(p)).is_prime() {
        return Err(Error::BadHypothesis(format!("p must be a prime ≥ 5, got {p}")));
    }
    if l < 1 {
        return Err(Error::BadHypothesis("l must be at least 1".into()));
    }
    if t < 2 {
        return Err(Error::BadHypothesis(format!("t must be at least 2, got {t}")));
    }
    if k < 2 {
        return Err(Error::BadHypothesis(format!("k must be at least 2, got {k}")));
    }
    let pl = p
        .checked_pow(l)
        .ok_or_else(|| Error::BadHypothesis(format!("p^l = {p}^{l} exceeds the supported range")))?;
    let modulus = Modulus::from_factorization(factorize(&BigInt::from(p)).pow(3 * l - 1));

    let two_k = BigInt::from(2 * k);
    let mut lhs = modulus.zero();
    for r in 1..=(pl / u64::from(t)) {
        let base = modulus.residue(BigInt::from(pl - u64::from(t) * r));
        lhs = &lhs + &base.pow_signed(&two_k)?;
    }

    let s = match pl % u64::from(t) {
        0 => u64::from(t),
        rem => rem,
    };
    let index = usize::try_from(2 * k).expect("index fits usize");
    let scale = BigRational::new(BigInt::from(t).pow(2 * k), BigInt::from(2 * k + 1));
    let inner = BigRational::new(BigInt::from(2 * k + 1) * BigInt::from(pl), BigInt::from(t))
        * bernoulli_number(index)
        - bernoulli_poly(
            index + 1,
            &BigRational::new(BigInt::from(s), BigInt::from(t)),
        );
    let rhs = rational_mod(&(scale * inner), &modulus)?;

    let mut params = ClaimParams::bare(pl);
    params.k = Some(k);
    params.e = Some(t);
    Ok(CheckResult::from_sides(
        CongruenceClaim::new(ClaimId::Lem1, params),
        lhs,
        rhs,
    ))
}

/// Checks the Bernoulli shift identity mod q for gcd(m, q) = 1:
///
/// (1/k)·(m^k·B_k((x+a)/m) - B_k(x))
///   ≡ Σ_{j=0}^{q-1} (⌊(a+jm)/q⌋ + (1-m)/2)·(x+a+jm)^(k-1)  (mod q).
///
/// Both sides are exact rationals; reduction fails with `NotInvertible`
/// when a denominator (for instance from a rational x) meets q.
pub fn lemma3_check(a: u32, k: u32, m: u32, q: u64, x: &BigRational) -> Result<CheckResult> {
    if k < 1 || m < 1 {
        return Err(Error::BadHypothesis(format!(
            "k and m must be at least 1, got k = {k}, m = {m}"
        )));
    }
    if q < 2 {
        return Err(Error::BadHypothesis(format!("q must be at least 2, got {q}")));
    }
    let gcd = u64::from(m).gcd(&q);
    if gcd != 1 {
        return Err(Error::BadHypothesis(format!(
            "gcd(m, q) must be 1, got gcd({m}, {q}) = {gcd}"
        )));
    }
    let modulus = Modulus::from_u64(q);
    let index = usize::try_from(k).expect("index fits usize");

    let m_rat = BigRational::from_integer(BigInt::from(m));
    let shifted_arg = (x + BigRational::from_integer(BigInt::from(a))) / &m_rat;
    let m_power = BigRational::from_integer(BigInt::from(m).pow(k));
    let closed = (m_power * bernoulli_poly(index, &shifted_arg) - bernoulli_poly(index, x))
        / BigRational::from_integer(BigInt::from(k));

    let weight_shift = BigRational::new(BigInt::from(1 - i64::from(m)), BigInt::from(2));
    let mut sum = BigRational::zero();
    for j in 0..q {
        let offset = u64::from(a) + j * u64::from(m);
        let weight =
            BigRational::from_integer(BigInt::from(offset / q)) + &weight_shift;
        let base = x + BigRational::from_integer(BigInt::from(offset));
        sum += weight * base.pow(i32::try_from(k - 1).expect("exponent fits i32"));
    }

    let lhs = rational_mod(&closed, &modulus)?;
    let rhs = rational_mod(&sum, &modulus)?;

    let mut params = ClaimParams::bare(q);
    params.k = Some(k);
    params.e = Some(m);
    params.a = Some(a);
    params.x = Some(x.clone());
    Ok(CheckResult::from_sides(
        CongruenceClaim::new(ClaimId::Lem3, params),
        lhs,
        rhs,
    ))
}
