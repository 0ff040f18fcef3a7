//! Exact Bernoulli numbers, Bernoulli polynomials, Euler numbers, and the
//! per-prime-power Bernoulli factor used by the harmonic congruences.
//!
//! Conventions: `B_1 = -1/2` (the polynomial convention, so `B_v(0) = B_v`
//! and `B_v(1/2) = 0` for odd v), Euler numbers from `1/cosh`, i.e.
//! `E_0 = 1, E_2 = -1, E_4 = 5, ...` with zeros at odd indices.
//!
//! Both number sequences are cached: tables grow on demand under a lock and
//! are published as immutable snapshots, so concurrent grid workers share
//! one computation and always read consistent values.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::modular::{crt_combine, factorize, mod_inv, rational_mod, Modulus, Residue};
use crate::{Error, Result};

static BERNOULLI_TABLE: Mutex<Option<Arc<Vec<BigRational>>>> = Mutex::new(None);
static EULER_TABLE: Mutex<Option<Arc<Vec<BigInt>>>> = Mutex::new(None);

/// Snapshot of `B_0 .. B_(min_len-1)` (at least), extending the shared table
/// if needed via the defining recurrence `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
fn bernoulli_table(min_len: usize) -> Arc<Vec<BigRational>> {
    let mut guard = BERNOULLI_TABLE.lock().expect("bernoulli cache poisoned");
    if let Some(table) = guard.as_ref() {
        if table.len() >= min_len {
            return table.clone();
        }
    }
    let mut table = guard.as_ref().map_or_else(Vec::new, |t| (**t).clone());
    if table.is_empty() {
        table.push(BigRational::one());
    }
    while table.len() < min_len {
        let m = table.len();
        let mut sum = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                sum += BigRational::from_integer(binom.clone()) * b;
            }
            binom = binom * BigInt::from((m + 1 - j) as u64) / BigInt::from((j + 1) as u64);
        }
        table.push(-sum / BigRational::from_integer(BigInt::from((m + 1) as u64)));
    }
    let snapshot = Arc::new(table);
    *guard = Some(snapshot.clone());
    snapshot
}

/// Snapshot of `E_0 .. E_(min_len-1)` (at least); odd indices are zero and
/// even ones satisfy `Σ_{j=0}^{m} C(2m, 2j) E_{2j} = 0`.
fn euler_table(min_len: usize) -> Arc<Vec<BigInt>> {
    let mut guard = EULER_TABLE.lock().expect("euler cache poisoned");
    if let Some(table) = guard.as_ref() {
        if table.len() >= min_len {
            return table.clone();
        }
    }
    let mut table = guard.as_ref().map_or_else(Vec::new, |t| (**t).clone());
    if table.is_empty() {
        table.push(BigInt::one());
    }
    while table.len() < min_len {
        let idx = table.len();
        if idx % 2 == 1 {
            table.push(BigInt::zero());
            continue;
        }
        let two_m = idx as u64;
        let mut sum = BigInt::zero();
        let mut binom = BigInt::one();
        for j in 0..idx / 2 {
            sum += &binom * &table[2 * j];
            // C(2m, 2j) -> C(2m, 2j + 2)
            let a = two_m - 2 * j as u64;
            let b = 2 * j as u64;
            binom = binom * BigInt::from(a) * BigInt::from(a - 1)
                / (BigInt::from(b + 1) * BigInt::from(b + 2));
        }
        table.push(-sum);
    }
    let snapshot = Arc::new(table);
    *guard = Some(snapshot.clone());
    snapshot
}

/// The v-th Bernoulli number, `B_1 = -1/2` convention.
pub fn bernoulli_number(v: usize) -> BigRational {
    bernoulli_table(v + 1)[v].clone()
}

/// The m-th Euler number (`1/cosh` generating function); zero at odd m.
pub fn euler_number(m: usize) -> BigInt {
    euler_table(m + 1)[m].clone()
}

/// Bernoulli polynomial `B_v(x) = Σ_{j=0}^{v} C(v, j) B_j x^(v-j)`, exact.
pub fn bernoulli_poly(v: usize, x: &BigRational) -> BigRational {
    let table = bernoulli_table(v + 1);
    let mut powers = Vec::with_capacity(v + 1);
    powers.push(BigRational::one());
    for _ in 0..v {
        powers.push(powers.last().expect("nonempty") * x);
    }
    let mut acc = BigRational::zero();
    let mut binom = BigInt::one();
    for j in 0..=v {
        if !table[j].is_zero() {
            acc += BigRational::from_integer(binom.clone()) * &table[j] * &powers[v - j];
        }
        if j < v {
            binom = binom * BigInt::from((v - j) as u64) / BigInt::from((j + 1) as u64);
        }
    }
    acc
}

/// Checks the Raabe multiplication identity
/// `B_v(m·x) = m^(v-1) Σ_{k=0}^{m-1} B_v(x + k/m)` exactly.
pub fn raabe_check(v: usize, m: u32, x: &BigRational) -> bool {
    assert!(m >= 1, "raabe_check requires m ≥ 1");
    let left = bernoulli_poly(v, &(BigRational::from_integer(m.into()) * x));
    let mut sum = BigRational::zero();
    for k in 0..m {
        let shifted = x + BigRational::new(k.into(), m.into());
        sum += bernoulli_poly(v, &shifted);
    }
    let scale = if v >= 1 {
        BigRational::from_integer(BigInt::from(m).pow(v as u32 - 1))
    } else {
        BigRational::new(BigInt::one(), m.into())
    };
    left == scale * sum
}

/// Von Staudt-Clausen check for an even index: returns the denominator of
/// `B_twok` and whether `B_twok + Σ_{(p-1) | twok} 1/p` is an integer.
pub fn vsc_check(twok: usize) -> (BigInt, bool) {
    assert!(twok >= 2 && twok % 2 == 0, "vsc_check requires an even index ≥ 2");
    let b = bernoulli_number(twok);
    let mut sum = b.clone();
    for p in 2..=(twok as u64 + 1) {
        if factorize(&BigInt::from(p)).is_prime() && twok as u64 % (p - 1) == 0 {
            sum += BigRational::new(BigInt::one(), p.into());
        }
    }
    (b.denom().clone(), sum.is_integer())
}

/// The Bernoulli factor `β_e(n) mod n`: per prime power `p^l ‖ n` the value
/// `e · Σ_{j=0, p∤(1+je)}^{p^l - 1} (⌊(1+je)/p^l⌋ + (1-e)/2) · (1+je)^(-2)
/// mod p^l`, assembled by CRT. Congruent to
/// `B_{φ(p^l)-1}(1/e) / (φ(p^l)-1)` modulo each `p^l`.
///
/// The j-sum is used instead of the global rational `B_{φ(n)-1}(1/e)/(φ(n)-1)`
/// because for composite n that rational's denominator can share factors
/// with n; the per-prime-power sum is always well defined.
pub fn bernoulli_factor_mod(n: u64, e: u32) -> Result<Residue> {
    assert!(
        matches!(e, 2 | 3 | 4 | 6),
        "bernoulli factor is defined for e in {{2, 3, 4, 6}}, got {e}"
    );
    let g = n.gcd(&6);
    if g != 1 {
        return Err(Error::BadHypothesis(format!(
            "bernoulli_factor_mod needs gcd(n, 6) = 1, but gcd({n}, 6) = {g}"
        )));
    }
    if n == 1 {
        return Err(Error::BadHypothesis(
            "bernoulli_factor_mod needs n > 1 to carry a residue".into(),
        ));
    }
    let mut parts = Vec::new();
    for (p, l) in factorize(&BigInt::from(n)).pairs() {
        let p = u64::try_from(p.clone()).expect("factor of a u64 fits in u64");
        let pl = p.pow(*l);
        let modulus = Modulus::from_u64(pl);
        let weight = rational_mod(
            &BigRational::new(BigInt::from(1i64 - i64::from(e)), BigInt::from(2)),
            &modulus,
        )?;
        let mut sum = modulus.zero();
        for j in 0..pl {
            let v = 1 + j * u64::from(e);
            if v % p == 0 {
                continue;
            }
            let inv = mod_inv(&BigInt::from(v), &modulus)?;
            let floor_term = modulus.residue(BigInt::from(v / pl));
            let term = &(&floor_term + &weight) * &(&inv * &inv);
            sum = &sum + &term;
        }
        parts.push(modulus.residue(BigInt::from(e) * sum.value()));
    }
    crt_combine(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplicative::euler_phi;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bernoulli_number_examples() {
        let expected: [(usize, BigRational); 8] = [
            (0, rat(1, 1)),
            (1, rat(-1, 2)),
            (2, rat(1, 6)),
            (4, rat(-1, 30)),
            (5, rat(0, 1)),
            (6, rat(1, 42)),
            (10, rat(5, 66)),
            (12, rat(-691, 2730)),
        ];
        for (v, want) in expected {
            assert_eq!(bernoulli_number(v), want, "B_{v}");
        }
    }

    #[test]
    fn bernoulli_cache_invariants_to_400() {
        let table = bernoulli_table(401);
        assert_eq!(table[1], rat(-1, 2));
        for m in 1..=400usize {
            let mut sum = BigRational::zero();
            let mut binom = BigInt::one();
            for j in 0..=m {
                sum += BigRational::from_integer(binom.clone()) * &table[j];
                binom = binom * BigInt::from((m + 1 - j) as u64) / BigInt::from((j + 1) as u64);
            }
            assert!(sum.is_zero(), "Σ C({}+1, j) B_j = 0", m);
            if m % 2 == 1 && m > 1 {
                assert!(table[m].is_zero(), "odd B_{m} vanishes");
            }
        }
    }

    #[test]
    fn euler_number_examples_and_invariants() {
        let known: [(usize, i64); 9] = [
            (0, 1),
            (1, 0),
            (2, -1),
            (4, 5),
            (6, -61),
            (8, 1385),
            (10, -50521),
            (12, 2702765),
            (14, -199360981),
        ];
        for (m, want) in known {
            assert_eq!(euler_number(m), BigInt::from(want), "E_{m}");
        }
        let table = euler_table(401);
        for m in 1..=200usize {
            let mut sum = BigInt::zero();
            let mut binom = BigInt::one();
            for j in 0..=m {
                sum += &binom * &table[2 * j];
                let a = (2 * m - 2 * j) as u64;
                let b = (2 * j) as u64;
                if j < m {
                    binom = binom * BigInt::from(a) * BigInt::from(a - 1)
                        / (BigInt::from(b + 1) * BigInt::from(b + 2));
                }
            }
            assert!(sum.is_zero(), "Σ C(2m, 2j) E_2j = 0 at m = {m}");
            assert!(table[2 * m - 1].is_zero(), "odd E vanish");
        }
    }

    #[test]
    fn bernoulli_poly_examples() {
        assert!(bernoulli_poly(3, &rat(1, 2)).is_zero());
        assert_eq!(bernoulli_poly(3, &rat(1, 4)), rat(3, 64));
        for v in 0..=12usize {
            assert_eq!(bernoulli_poly(v, &BigRational::zero()), bernoulli_number(v));
        }
        assert_eq!(bernoulli_poly(5, &rat(1, 6)), rat(-85, 3888));
        assert_eq!(bernoulli_poly(3, &rat(1, 3)), rat(1, 27));
    }

    #[test]
    fn odd_index_half_and_quarter_values() {
        for v in (3..=49usize).step_by(2) {
            assert!(bernoulli_poly(v, &rat(1, 2)).is_zero(), "B_{v}(1/2)");
            let quarter = bernoulli_poly(v, &rat(1, 4));
            let expected = BigRational::new(
                -BigInt::from(v as u64) * euler_number(v - 1),
                BigInt::from(4).pow(v as u32),
            );
            assert_eq!(quarter, expected, "B_{v}(1/4) = -v·E_(v-1)/4^v");
        }
    }

    #[test]
    fn raabe_identity_on_the_documented_grid() {
        let args = [rat(0, 1), rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 6)];
        for v in 0..=20usize {
            for m in 1..=6u32 {
                for x in &args {
                    assert!(raabe_check(v, m, x), "Raabe at v = {v}, m = {m}, x = {x}");
                }
            }
        }
    }

    #[test]
    fn vsc_examples() {
        assert_eq!(vsc_check(2), (BigInt::from(6), true));
        assert_eq!(vsc_check(4), (BigInt::from(30), true));
        assert_eq!(vsc_check(6), (BigInt::from(42), true));
        for twok in (2..=60usize).step_by(2) {
            assert!(vsc_check(twok).1, "von Staudt-Clausen at 2k = {twok}");
        }
    }

    #[test]
    fn bernoulli_factor_examples() {
        let cases = [(5u64, 2u32, 0i64), (5, 4, 4), (7, 3, 4), (7, 6, 6)];
        for (n, e, want) in cases {
            let got = bernoulli_factor_mod(n, e).unwrap();
            assert_eq!(got.value(), &BigInt::from(want), "β_{e}({n})");
            assert_eq!(got.modulus().value(), &BigInt::from(n));
        }
        assert!(matches!(
            bernoulli_factor_mod(9, 2),
            Err(Error::BadHypothesis(_))
        ));
        assert!(matches!(
            bernoulli_factor_mod(1, 2),
            Err(Error::BadHypothesis(_))
        ));
    }

    #[test]
    fn bernoulli_factor_matches_the_rational_route_at_primes() {
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            let modulus = Modulus::from_u64(p);
            for e in [2u32, 3, 4, 6] {
                let direct = bernoulli_factor_mod(p, e).unwrap();
                let rational = bernoulli_poly(p as usize - 2, &rat(1, i64::from(e)))
                    / BigRational::from_integer((p - 2).into());
                let reduced = rational_mod(&rational, &modulus).unwrap();
                assert_eq!(direct, reduced, "p = {p}, e = {e}");
            }
        }
    }

    #[test]
    fn bernoulli_factor_is_crt_consistent() {
        for n in [25u64, 35, 55, 77, 91, 125, 175, 245, 275] {
            if n.gcd(&6) != 1 {
                continue;
            }
            for e in [2u32, 3, 4, 6] {
                let whole = bernoulli_factor_mod(n, e).unwrap();
                for (p, l) in factorize(&BigInt::from(n)).pairs() {
                    let pl = u64::try_from(p.clone()).unwrap().pow(*l);
                    let local = bernoulli_factor_mod(pl, e).unwrap();
                    assert_eq!(
                        whole.reduce_into(local.modulus()),
                        local,
                        "n = {n}, e = {e}, prime power {pl}"
                    );
                }
            }
        }
    }

    #[test]
    fn bernoulli_factor_prime_power_matches_local_polynomial() {
        // At p^l the defining value is B_(φ(p^l)-1)(1/e) / (φ(p^l)-1) mod p^l.
        for pl in [25u64, 49, 121] {
            let modulus = Modulus::from_u64(pl);
            for e in [2u32, 3, 4, 6] {
                let phi = euler_phi(pl) as usize;
                let rational = bernoulli_poly(phi - 1, &rat(1, i64::from(e)))
                    / BigRational::from_integer(BigInt::from((phi - 1) as u64));
                match rational_mod(&rational, &modulus) {
                    Ok(reduced) => {
                        assert_eq!(bernoulli_factor_mod(pl, e).unwrap(), reduced, "p^l = {pl}, e = {e}");
                    }
                    Err(Error::NotInvertible { .. }) => {
                        // The rational route can fail at prime powers; the j-sum must not.
                        bernoulli_factor_mod(pl, e).unwrap();
                    }
                    Err(other) => panic!("unexpected error {other}"),
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reflection_identity(v in 0usize..=50, num in -20i64..=20, den in 1i64..=12) {
            let x = rat(num, den);
            let reflected = bernoulli_poly(v, &(BigRational::one() - &x));
            let sign = if v % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            prop_assert_eq!(reflected, sign * bernoulli_poly(v, &x));
        }
    }
}
