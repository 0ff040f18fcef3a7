//! Restricted inverse-power sums and their closed-form predictors.
//!
//! The left-hand sides here are literal sums over units: `Σ 1/r²` and
//! `Σ 1/r` for `1 ≤ r ≤ ⌊n/e⌋` with `gcd(r, n) = 1`, the shifted variant
//! `Σ 1/(n - er)`, and the full-range `Σ_{i<n} 1/i²`. Each is evaluated by
//! per-term modular inversion, deliberately independent of the rational
//! machinery used by the predictors, so the two sides of every congruence
//! come from genuinely different routes.
//!
//! The predictors are the matching closed forms: a totient-weighted
//! Bernoulli value for the squared sums, and Euler-quotient expressions
//! (`q_r(n) = (r^φ(n) - 1)/n`) with an `n · (cofactor mod n)` second-order
//! term for the plain and shifted sums mod n².

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::bernoulli::{bernoulli_factor_mod, euler_number};
use crate::modular::{factorize, mod_inv, rational_mod, Modulus, Residue};
use crate::multiplicative::{combined_totient_default, euler_phi, euler_quotient, jacobi_unit};
use crate::{Error, Result};

/// One restricted harmonic sum: `Σ 1/r^power` (or `Σ 1/(n - er)` when
/// `shifted`) over `1 ≤ r ≤ ⌊n/e⌋` with `gcd(r, n) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumSpec {
    pub n: u64,
    pub e: u32,
    pub power: u32,
    pub shifted: bool,
}

impl SumSpec {
    /// Evaluates the sum at its statement's modulus (n for the squared sum,
    /// n² otherwise).
    pub fn evaluate(&self) -> Result<Residue> {
        match (self.power, self.shifted) {
            (2, false) => sum_inv_sq(self.n, self.e),
            (1, false) => sum_inv(self.n, self.e),
            (1, true) => sum_inv_shifted(self.n, self.e),
            (power, shifted) => Err(Error::BadHypothesis(format!(
                "no statement covers power = {power} with shifted = {shifted}"
            ))),
        }
    }
}

fn require(condition: bool, message: impl FnOnce() -> String) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::BadHypothesis(message()))
    }
}

fn require_coprime_six(n: u64) -> Result<()> {
    require(n > 1, || format!("n must exceed 1, got {n}"))?;
    require(n.gcd(&6) == 1, || format!("gcd(n, 6) must be 1, got gcd({n}, 6) = {}", n.gcd(&6)))
}

/// Hypothesis for the mod-n² statements: e = 2 needs odd n, e ∈ {3, 4} need
/// gcd(n, 6) = 1, e = 6 needs gcd(n, 30) = 1.
fn require_linear_hypothesis(n: u64, e: u32) -> Result<()> {
    require(n > 1, || format!("n must exceed 1, got {n}"))?;
    match e {
        2 => require(n % 2 == 1, || format!("n must be odd, got {n}")),
        3 | 4 => require(n.gcd(&6) == 1, || {
            format!("gcd(n, 6) must be 1, got gcd({n}, 6) = {}", n.gcd(&6))
        }),
        6 => require(n.gcd(&30) == 1, || {
            format!("gcd(n, 30) must be 1, got gcd({n}, 30) = {}", n.gcd(&30))
        }),
        _ => panic!("e must lie in {{2, 3, 4, 6}}, got {e}"),
    }
}

fn restricted_sum(n: u64, e: u32, power: u32, shifted: bool, modulus: &Modulus) -> Result<Residue> {
    let mut acc = modulus.zero();
    for r in 1..=(n / u64::from(e)) {
        if r.gcd(&n) != 1 {
            continue;
        }
        let base = if shifted {
            BigInt::from(n) - BigInt::from(u64::from(e) * r)
        } else {
            BigInt::from(r)
        };
        let inv = mod_inv(&base, modulus)?;
        let term = if power == 2 { &inv * &inv } else { inv };
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `Σ r^(-2) mod n` over `r ≤ ⌊n/e⌋` coprime to n.
pub fn sum_inv_sq(n: u64, e: u32) -> Result<Residue> {
    require_coprime_six(n)?;
    restricted_sum(n, e, 2, false, &Modulus::from_u64(n))
}

/// `Σ r^(-1) mod n²` over `r ≤ ⌊n/e⌋` coprime to n.
pub fn sum_inv(n: u64, e: u32) -> Result<Residue> {
    require_linear_hypothesis(n, e)?;
    restricted_sum(n, e, 1, false, &Modulus::from_u64(n * n))
}

/// `Σ (n - er)^(-1) mod n²` over `r ≤ ⌊n/e⌋` coprime to n.
pub fn sum_inv_shifted(n: u64, e: u32) -> Result<Residue> {
    assert!(matches!(e, 3 | 4 | 6), "shifted sums are stated for e in {{3, 4, 6}}");
    require_linear_hypothesis(n, e)?;
    restricted_sum(n, e, 1, true, &Modulus::from_u64(n * n))
}

/// `Σ_{i<n, gcd(i,n)=1} i^(-2)`, reduced modulo the case-appropriate
/// modulus: n/2 when n is a power of two, n/3 when 3 | n, n otherwise.
/// The returned residue carries the modulus that was used.
pub fn full_range_inv_sq(n: u64) -> Result<Residue> {
    require(n > 1, || format!("n must exceed 1, got {n}"))?;
    let factors = factorize(&BigInt::from(n));
    let case_modulus = if factors.pairs().len() == 1 && factors.pairs()[0].0 == BigInt::from(2) {
        n / 2
    } else if n % 3 == 0 {
        n / 3
    } else {
        n
    };
    require(case_modulus >= 2, || {
        format!("the case modulus for n = {n} is {case_modulus}; no residue to carry")
    })?;
    let modulus = Modulus::from_u64(case_modulus);
    let mut acc = modulus.zero();
    for i in 1..n {
        if i.gcd(&n) != 1 {
            continue;
        }
        let inv = mod_inv(&BigInt::from(i), &modulus)?;
        acc = &acc + &(&inv * &inv);
    }
    Ok(acc)
}

/// The signed totient-Bernoulli product `J_e(n) · Π_{p|n}(1 - J_e(p)·p^(φ(n)-2)) · β_e(n) mod n`.
fn totient_bernoulli_product(n: u64, e: u32) -> Result<Residue> {
    let modulus = Modulus::from_u64(n);
    let sign = BigInt::from(jacobi_unit(e, n)?);
    let combined = combined_totient_default(e, n)?;
    let beta = bernoulli_factor_mod(n, e)?;
    Ok(modulus.residue(sign * combined * beta.value()))
}

/// Predictor for [`sum_inv_sq`]: `-J_e(n) · combined_totient · β_e(n) mod n`.
pub fn predict_sum_inv_sq(n: u64, e: u32) -> Result<Residue> {
    require_coprime_six(n)?;
    Ok(-&totient_bernoulli_product(n, e)?)
}

/// Multiplies a mod-n cofactor by n inside the mod-n² ambient. Any lift of
/// the cofactor gives the same product mod n².
fn times_n(cofactor: &Residue, n: u64, ambient: &Modulus) -> Residue {
    ambient.residue(BigInt::from(n) * cofactor.value())
}

fn fraction(num: i64, den: i64, modulus: &Modulus) -> Result<Residue> {
    rational_mod(&BigRational::new(num.into(), den.into()), modulus)
}

/// Predictor for [`sum_inv`] mod n², one closed form per e:
///
/// * e = 2: `-2·q_2 + n·q_2²`
/// * e = 3: `-(3/2)·q_3 + n·(3/4)·q_3² + n·(1/3)·a_3(n)`
/// * e = 4: `-3·q_2 + n·(3/2)·q_2² + n·(-1)^((n+1)/2)·combined_totient·E_(φ(n)-2)`
/// * e = 6: `-2·q_2 - (3/2)·q_3 + n·(q_2² + (3/4)·q_3²) + n·(1/6)·a_6(n)`
///
/// where `a_e(n) = J_e(n)·combined_totient·β_e(n)` and every `n·(...)`
/// cofactor is reduced mod n before lifting.
pub fn predict_sum_inv(n: u64, e: u32) -> Result<Residue> {
    require_linear_hypothesis(n, e)?;
    let ambient = Modulus::from_u64(n * n);
    let small = Modulus::from_u64(n);
    match e {
        2 => {
            let q2 = euler_quotient(2, n, 2)?;
            let q2_small = q2.reduce_into(&small);
            let linear = ambient.residue(BigInt::from(-2) * q2.value());
            Ok(&linear + &times_n(&(&q2_small * &q2_small), n, &ambient))
        }
        3 => {
            let q3 = euler_quotient(3, n, 2)?;
            let q3_small = q3.reduce_into(&small);
            let linear = &fraction(-3, 2, &ambient)? * &q3;
            let square = &fraction(3, 4, &small)? * &(&q3_small * &q3_small);
            let totient = &fraction(1, 3, &small)? * &totient_bernoulli_product(n, 3)?;
            Ok(&(&linear + &times_n(&square, n, &ambient)) + &times_n(&totient, n, &ambient))
        }
        4 => {
            let q2 = euler_quotient(2, n, 2)?;
            let q2_small = q2.reduce_into(&small);
            let linear = ambient.residue(BigInt::from(-3) * q2.value());
            let square = &fraction(3, 2, &small)? * &(&q2_small * &q2_small);
            let phi = euler_phi(n);
            let sign = if (n + 1) / 2 % 2 == 0 { 1 } else { -1 };
            let euler_term = small.residue(
                BigInt::from(sign)
                    * combined_totient_default(4, n)?
                    * euler_number(usize::try_from(phi - 2).expect("index fits usize")),
            );
            Ok(&(&linear + &times_n(&square, n, &ambient)) + &times_n(&euler_term, n, &ambient))
        }
        6 => {
            let q2 = euler_quotient(2, n, 2)?;
            let q3 = euler_quotient(3, n, 2)?;
            let q2_small = q2.reduce_into(&small);
            let q3_small = q3.reduce_into(&small);
            let linear = &ambient.residue(BigInt::from(-2) * q2.value())
                + &(&fraction(-3, 2, &ambient)? * &q3);
            let square = &(&q2_small * &q2_small)
                + &(&fraction(3, 4, &small)? * &(&q3_small * &q3_small));
            let totient = &fraction(1, 6, &small)? * &totient_bernoulli_product(n, 6)?;
            Ok(&(&linear + &times_n(&square, n, &ambient)) + &times_n(&totient, n, &ambient))
        }
        _ => unreachable!("hypothesis check restricts e"),
    }
}

/// Predictor for [`sum_inv_shifted`] mod n²:
///
/// * e = 3: `(1/2)·q_3 - n·(1/4)·q_3²`
/// * e = 4: `(3/4)·q_2 - n·(3/8)·q_2²`
/// * e = 6: `(1/3)·q_2 + (1/4)·q_3 - n·((1/6)·q_2² + (1/8)·q_3²)`
pub fn predict_shifted(n: u64, e: u32) -> Result<Residue> {
    assert!(matches!(e, 3 | 4 | 6), "shifted sums are stated for e in {{3, 4, 6}}");
    require_linear_hypothesis(n, e)?;
    let ambient = Modulus::from_u64(n * n);
    let small = Modulus::from_u64(n);
    match e {
        3 => {
            let q3 = euler_quotient(3, n, 2)?;
            let q3_small = q3.reduce_into(&small);
            let linear = &fraction(1, 2, &ambient)? * &q3;
            let square = &fraction(1, 4, &small)? * &(&q3_small * &q3_small);
            Ok(&linear - &times_n(&square, n, &ambient))
        }
        4 => {
            let q2 = euler_quotient(2, n, 2)?;
            let q2_small = q2.reduce_into(&small);
            let linear = &fraction(3, 4, &ambient)? * &q2;
            let square = &fraction(3, 8, &small)? * &(&q2_small * &q2_small);
            Ok(&linear - &times_n(&square, n, &ambient))
        }
        6 => {
            let q2 = euler_quotient(2, n, 2)?;
            let q3 = euler_quotient(3, n, 2)?;
            let q2_small = q2.reduce_into(&small);
            let q3_small = q3.reduce_into(&small);
            let linear = &(&fraction(1, 3, &ambient)? * &q2) + &(&fraction(1, 4, &ambient)? * &q3);
            let square = &(&fraction(1, 6, &small)? * &(&q2_small * &q2_small))
                + &(&fraction(1, 8, &small)? * &(&q3_small * &q3_small));
            Ok(&linear - &times_n(&square, n, &ambient))
        }
        _ => unreachable!("asserted above"),
    }
}

/// Checks the reflection identity
/// `sum_inv(n, e) ≡ -e·sum_inv_shifted(n, e) - n·e^(-1)·lift(sum_inv_sq(n, e)) (mod n²)`
/// with two different lifts of the mod-n residue (the choice must not
/// matter, since the factor n kills the ambiguity mod n²).
pub fn reflection_check(n: u64, e: u32) -> Result<bool> {
    let ambient = Modulus::from_u64(n * n);
    let linear = sum_inv(n, e)?;
    let shifted = sum_inv_shifted(n, e)?;
    let squares = sum_inv_sq(n, e)?;
    let inv_e = mod_inv(&BigInt::from(e), &ambient)?;
    for lift in [squares.lift(), squares.lift() + BigInt::from(n)] {
        let rhs = ambient.residue(
            BigInt::from(-i64::from(e)) * shifted.value() - BigInt::from(n) * inv_e.value() * lift,
        );
        if rhs != linear {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that scaling the range by a factor m coprime to e·p only scales
/// the p-restricted sum by `J_e(m)`:
/// `Σ_{r ≤ ⌊m·p^l/e⌋, p∤r} r^(-2) ≡ J_e(m) · Σ_{r ≤ ⌊p^l/e⌋, p∤r} r^(-2) (mod p^l)`.
pub fn shift_multiplicativity_check(p: u64, l: u32, e: u32, m: u64) -> Result<bool> {
    assert!(m.gcd(&(u64::from(e) * p)) == 1, "m must be coprime to e·p");
    let modulus = Modulus::from_u64(p.pow(l));
    let p_restricted = |limit: u64| -> Result<Residue> {
        let mut acc = modulus.zero();
        for r in 1..=limit {
            if r % p == 0 {
                continue;
            }
            let inv = mod_inv(&BigInt::from(r), &modulus)?;
            acc = &acc + &(&inv * &inv);
        }
        Ok(acc)
    };
    let wide = p_restricted(m * p.pow(l) / u64::from(e))?;
    let narrow = p_restricted(p.pow(l) / u64::from(e))?;
    let scaled = modulus.residue(BigInt::from(jacobi_unit(e, m)?) * narrow.value());
    Ok(wide == scaled)
}
