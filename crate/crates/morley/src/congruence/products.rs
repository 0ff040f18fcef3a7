//! Product-side evaluators: restricted unit products mod n³, integer and
//! generalized binomial coefficients, and the signed Mobius products of
//! binomials they invert to.
//!
//! The unit products are the left-hand sides of the cubic congruences:
//! `T_n = Π (kn - r)/r` over `r ≤ ⌊n/e⌋` coprime to n, and the central
//! variant `S_n` whose factors pair r with n - r. Both are evaluated with
//! per-factor modular inverses, which always exist because every factor is
//! a unit mod the case modulus. The Mobius products are exact rationals and
//! deliberately avoid modular inversion: their binomials need not be units
//! (a central binomial can be divisible by 3), so identity checks against
//! the unit route cross-multiply instead of dividing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::modular::{mod_inv, mod_pow_signed, rational_mod, Modulus, Residue};
use crate::multiplicative::{divisors, euler_phi, moebius};
use crate::{Error, Result};

/// Integer binomial coefficient `C(top, r)` by the falling factorial;
/// zero when `r > top`.
pub fn binomial(top: &BigInt, r: u64) -> BigInt {
    assert!(!top.is_negative(), "binomial expects a non-negative top, got {top}");
    let mut acc = BigInt::one();
    for i in 1..=r {
        acc = acc * (top - BigInt::from(r - i)) / BigInt::from(i);
    }
    acc
}

/// Generalized binomial coefficient `binom(x, m) = x(x-1)⋯(x-m+1)/m!` for
/// rational x.
pub fn gen_binom(x: &BigRational, m: u64) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..m {
        acc *= (x - BigRational::from_integer(i.into()))
            / BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// The ambient modulus of the central-product congruences: n³, except n³/3
/// when 3 divides n.
pub fn s_case_modulus(n: u64) -> Modulus {
    let cubed = BigInt::from(n).pow(3);
    if n % 3 == 0 {
        Modulus::new(cubed / 3)
    } else {
        Modulus::new(cubed)
    }
}

/// The ambient modulus of `t_product`: the n³/3 reduction only applies to
/// the half-range product (e = 2); other ranges are stated with 3 ∤ n and
/// keep the full cube.
pub fn t_case_modulus(n: u64, e: u32) -> Modulus {
    if e == 2 {
        s_case_modulus(n)
    } else {
        Modulus::new(BigInt::from(n).pow(3))
    }
}

fn require_odd(n: u64) -> Result<()> {
    if n > 1 && n % 2 == 1 {
        Ok(())
    } else {
        Err(Error::BadHypothesis(format!("n must be odd and exceed 1, got {n}")))
    }
}

/// `T_n(e, k) = Π_{r ≤ ⌊n/e⌋, gcd(r,n)=1} (kn - r)·r^(-1)` mod the case
/// modulus; the empty range gives 1.
pub fn t_product(n: u64, e: u32, k: u32) -> Result<Residue> {
    require_odd(n)?;
    assert!(k >= 1, "t_product needs k ≥ 1");
    assert!(e >= 2, "t_product needs e ≥ 2");
    let modulus = t_case_modulus(n, e);
    let kn = BigInt::from(u64::from(k) * n);
    let mut acc = modulus.one();
    for r in 1..=(n / u64::from(e)) {
        if r.gcd(&n) != 1 {
            continue;
        }
        let inv = mod_inv(&BigInt::from(r), &modulus)?;
        acc = modulus.residue(acc.value() * (&kn - BigInt::from(r)) * inv.value());
    }
    Ok(acc)
}

/// `S_n(k) = Π_{r ≤ (n-1)/2, gcd(r,n)=1} (kn-r)·((k-1)n+r) / (r·(kn-2r))`
/// mod the case modulus.
pub fn s_product(n: u64, k: u32) -> Result<Residue> {
    require_odd(n)?;
    assert!(k >= 1, "s_product needs k ≥ 1");
    let modulus = s_case_modulus(n);
    let kn = BigInt::from(u64::from(k) * n);
    let mut acc = modulus.one();
    for r in 1..=((n - 1) / 2) {
        if r.gcd(&n) != 1 {
            continue;
        }
        let numerator = (&kn - BigInt::from(r)) * (&kn - BigInt::from(n - r));
        let denominator = BigInt::from(r) * (&kn - BigInt::from(2 * r));
        let inv = mod_inv(&denominator, &modulus)?;
        acc = modulus.residue(acc.value() * numerator * inv.value());
    }
    Ok(acc)
}

/// The Mobius inversion of `T_n` as an exact rational:
/// `Π_{d|n} C(kd-1, ⌊d/e⌋)^μ(n/d)`.
pub fn moebius_binom_product(n: u64, e: u32, k: u32) -> BigRational {
    assert!(n > 1 && n % 2 == 1, "the Mobius product is stated for odd n > 1");
    let mut acc = BigRational::one();
    for d in divisors(n) {
        let mu = moebius(n / d);
        if mu == 0 {
            continue;
        }
        let b = BigRational::from_integer(binomial(
            &BigInt::from(u64::from(k) * d - 1),
            d / u64::from(e),
        ));
        if mu == 1 {
            acc *= b;
        } else {
            acc /= b;
        }
    }
    acc
}

/// The Mobius product of generalized central binomials from the S_n
/// inversion: `Π_{d|n} binom((kd-1)/2, (d-1)/2)^μ(n/d)`, exact.
pub fn moebius_gen_binom_half(n: u64, k: u32) -> BigRational {
    assert!(n > 1 && n % 2 == 1, "the Mobius product is stated for odd n > 1");
    let mut acc = BigRational::one();
    for d in divisors(n) {
        let mu = moebius(n / d);
        if mu == 0 {
            continue;
        }
        let x = BigRational::new(BigInt::from(u64::from(k) * d - 1), BigInt::from(2));
        let g = gen_binom(&x, (d - 1) / 2);
        if mu == 1 {
            acc *= g;
        } else {
            acc /= g;
        }
    }
    acc
}

/// Checks that the unit product and the exact Mobius product agree mod the
/// case modulus.
///
/// The comparison always cross-multiplies (`numerator ≡ T_n · denominator`):
/// the rational's reduced denominator is usually invertible, but that is not
/// guaranteed by the construction, so when it is invertible the direct
/// reduction is asserted as well, and when it is not the cross-multiplied
/// form still decides the identity.
pub fn moebius_identity_check(n: u64, e: u32, k: u32) -> Result<bool> {
    let unit_route = t_product(n, e, k)?;
    let rational = moebius_binom_product(n, e, k);
    let modulus = unit_route.modulus();
    let cross = modulus.residue(rational.numer().clone())
        == modulus.residue(unit_route.value() * rational.denom());
    let direct = match rational_mod(&rational, modulus) {
        Ok(reduced) => reduced == unit_route,
        Err(Error::NotInvertible { .. }) => true,
        Err(other) => return Err(other),
    };
    Ok(cross && direct)
}

/// Checks `S_n(k) ≡ 2^(φ(n)/2) · Π binom((kd-1)/2, (d-1)/2)^μ(n/d)` mod the
/// case modulus.
///
/// The reduced denominator of the rational product is a power of 2 for prime
/// n; for composite n odd prime factors can survive, but they stay coprime
/// to n, so the reduction is always defined.
pub fn s_product_identity_check(n: u64, k: u32) -> Result<bool> {
    let unit_route = s_product(n, k)?;
    let modulus = unit_route.modulus();
    let rational = moebius_gen_binom_half(n, k);
    let reduced = rational_mod(&rational, modulus)?;
    let scale = mod_pow_signed(&BigInt::from(2), &BigInt::from(euler_phi(n) / 2), modulus)?;
    Ok(unit_route == &scale * &reduced)
}

/// Checks the three partial central products against their closed forms
/// mod n³ (stated for odd n with 3 ∤ n), over `r ≤ (n-1)/2` coprime to n:
///
/// * `Π (kn-r)/r       ≡ (-1)^(φ/2) · 4^(kφ)`
/// * `Π ((k-1)n+r)/r   ≡ 4^(-(k-1)φ)`
/// * `Π (kn-2r)/r      ≡ (-1)^(φ/2) · 2^(φ/2) · 2^(kφ)`
pub fn s_product_partials_check(n: u64, k: u32) -> Result<bool> {
    require_odd(n)?;
    if n % 3 == 0 {
        return Err(Error::BadHypothesis(format!(
            "the partial products are stated for 3 ∤ n, got {n}"
        )));
    }
    let modulus = Modulus::new(BigInt::from(n).pow(3));
    let kn = BigInt::from(u64::from(k) * n);
    let phi = euler_phi(n);
    let mut partials = [modulus.one(), modulus.one(), modulus.one()];
    for r in 1..=((n - 1) / 2) {
        if r.gcd(&n) != 1 {
            continue;
        }
        let inv = mod_inv(&BigInt::from(r), &modulus)?;
        let factors = [
            &kn - BigInt::from(r),
            &kn - BigInt::from(n - r),
            &kn - BigInt::from(2 * r),
        ];
        for (acc, factor) in partials.iter_mut().zip(factors) {
            *acc = modulus.residue(acc.value() * factor * inv.value());
        }
    }
    let sign = BigInt::from(if (phi / 2) % 2 == 0 { 1 } else { -1 });
    let power = |base: i64, exp: BigInt| mod_pow_signed(&BigInt::from(base), &exp, &modulus);
    let expected = [
        modulus.residue(&sign * power(4, BigInt::from(u64::from(k) * phi))?.value()),
        power(4, -BigInt::from(u64::from(k - 1) * phi))?,
        modulus.residue(&sign * power(2, BigInt::from(phi / 2 + u64::from(k) * phi))?.value()),
    ];
    Ok(partials == expected)
}
