//! Built-in inventory of hand-verified example values.
//!
//! Every entry freezes one concrete value (a residue, rational, integer, or
//! check verdict) that was derived independently before implementation. The
//! CLI's `selftest` subcommand replays the whole table and demands
//! bit-exact agreement, giving a fast end-to-end smoke check of all layers
//! without sweeping any grids.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::bernoulli::{
    bernoulli_factor_mod, bernoulli_number, bernoulli_poly, euler_number, vsc_check,
};
use crate::congruence::{
    a_e_mod, binomial, central_binomial_three_valuation, gen_binom, lemma1_check, lemma3_check,
    moebius_binom_product, ord_factorial, rhs_theorem2, rhs_theorem3, rhs_theorem4, s_product,
    t_product, verify_claim, CheckResult, ClaimId, ClaimParams, CongruenceClaim, Variant,
};
use crate::harmonic::{full_range_inv_sq, sum_inv, sum_inv_shifted, sum_inv_sq};
use crate::modular::{
    crt_combine, factorize, mod_inv, mod_pow_signed, rational_mod, unit_power_formal, Modulus,
};
use crate::multiplicative::{
    combined_totient_default, euler_phi, euler_quotient, floor_totient, generalized_totient,
    jacobi_unit, moebius, TotientSpec, Weight,
};

/// One frozen example: a computation and the value it must reproduce.
pub struct Example {
    pub group: &'static str,
    pub name: &'static str,
    pub expected: &'static str,
    run: fn() -> String,
}

impl Example {
    pub fn observed(&self) -> String {
        (self.run)()
    }
}

/// A selftest entry whose observed value differs from the frozen one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub group: &'static str,
    pub name: &'static str,
    pub expected: &'static str,
    pub observed: String,
}

fn display<T: std::fmt::Display>(value: crate::Result<T>) -> String {
    match value {
        Ok(v) => v.to_string(),
        Err(err) => format!("error: {err}"),
    }
}

fn fmt_check(result: &CheckResult) -> String {
    let verdict = if result.pass { "pass" } else { "fail" };
    format!("{verdict} {} {} (mod {})", result.lhs, result.rhs, result.modulus)
}

fn check_claim(id: ClaimId, n: u64, k: Option<u32>, e: Option<u32>) -> String {
    let mut params = ClaimParams::bare(n);
    params.k = k;
    params.e = e;
    match verify_claim(&CongruenceClaim::new(id, params)) {
        Ok(result) => fmt_check(&result),
        Err(err) => format!("error: {err}"),
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The full frozen-example table.
pub fn inventory() -> Vec<Example> {
    fn example(
        group: &'static str,
        name: &'static str,
        expected: &'static str,
        run: fn() -> String,
    ) -> Example {
        Example { group, name, expected, run }
    }

    vec![
        example("modular", "factorize 3375", "3^3 * 5^3", || {
            factorize(&BigInt::from(3375)).to_string()
        }),
        example("modular", "factorize 360", "2^3 * 3^2 * 5", || {
            factorize(&BigInt::from(360)).to_string()
        }),
        example("modular", "inverse of 4 mod 5", "4 (mod 5)", || {
            display(mod_inv(&BigInt::from(4), &Modulus::from_u64(5)))
        }),
        example("modular", "inverse of 3 mod 125", "42 (mod 125)", || {
            display(mod_inv(&BigInt::from(3), &Modulus::from_u64(125)))
        }),
        example("modular", "4^4 mod 125", "6 (mod 125)", || {
            display(mod_pow_signed(&BigInt::from(4), &BigInt::from(4), &Modulus::from_u64(125)))
        }),
        example("modular", "2^-8 mod 125", "21 (mod 125)", || {
            display(mod_pow_signed(&BigInt::from(2), &BigInt::from(-8), &Modulus::from_u64(125)))
        }),
        example("modular", "1/64 mod 5", "4 (mod 5)", || {
            display(rational_mod(&rat(1, 64), &Modulus::from_u64(5)))
        }),
        example("modular", "-123/2 mod 25", "1 (mod 25)", || {
            display(rational_mod(&rat(-123, 2), &Modulus::from_u64(25)))
        }),
        example("modular", "crt of 2 mod 3 and 3 mod 5", "8 (mod 15)", || {
            display(crt_combine(&[
                Modulus::from_u64(3).residue(BigInt::from(2)),
                Modulus::from_u64(5).residue(BigInt::from(3)),
            ]))
        }),
        example("modular", "(81)^(3/2) as a unit mod 125", "21 (mod 125)", || {
            let u = Modulus::from_u64(125).residue(BigInt::from(81));
            display(unit_power_formal(&u, &rat(3, 2), &BigInt::from(5)))
        }),
        example("modular", "(64)^2 as a unit mod 343", "323 (mod 343)", || {
            let u = Modulus::from_u64(343).residue(BigInt::from(64));
            display(unit_power_formal(&u, &rat(2, 1), &BigInt::from(7)))
        }),
        example("multiplicative", "quotient of 2 at 7, two digits", "9 (mod 49)", || {
            display(euler_quotient(2, 7, 2))
        }),
        example("multiplicative", "quotient of 3 at 5, two digits", "16 (mod 25)", || {
            display(euler_quotient(3, 5, 2))
        }),
        example("multiplicative", "quotient of 2 at 3", "1 (mod 3)", || {
            display(euler_quotient(2, 3, 1))
        }),
        example("multiplicative", "J_3(5)", "-1", || display(jacobi_unit(3, 5))),
        example("multiplicative", "J_4(13)", "1", || display(jacobi_unit(4, 13))),
        example("multiplicative", "J_6(35)", "-1", || display(jacobi_unit(6, 35))),
        example("multiplicative", "moebius(30)", "-1", || moebius(30).to_string()),
        example("multiplicative", "moebius(12)", "0", || moebius(12).to_string()),
        example("multiplicative", "phi(360)", "96", || euler_phi(360).to_string()),
        example("multiplicative", "floor totient, e=2, n=7", "3", || {
            floor_totient(2, 7).to_string()
        }),
        example("multiplicative", "floor totient, e=3, n=25", "7", || {
            floor_totient(3, 25).to_string()
        }),
        example("multiplicative", "combined totient, e=4, n=5", "-24", || {
            display(combined_totient_default(4, 5))
        }),
        example("multiplicative", "Jordan totient, k=2, n=6", "24", || {
            let spec = TotientSpec { weight: Weight::One, exponent: 2 };
            display(generalized_totient(&spec, 6))
        }),
        example("bernoulli", "B_1", "-1/2", || bernoulli_number(1).to_string()),
        example("bernoulli", "B_12", "-691/2730", || bernoulli_number(12).to_string()),
        example("bernoulli", "E_6", "-61", || euler_number(6).to_string()),
        example("bernoulli", "E_14", "-199360981", || euler_number(14).to_string()),
        example("bernoulli", "B_3(1/4)", "3/64", || {
            bernoulli_poly(3, &rat(1, 4)).to_string()
        }),
        example("bernoulli", "B_5(1/6)", "-85/3888", || {
            bernoulli_poly(5, &rat(1, 6)).to_string()
        }),
        example("bernoulli", "von Staudt-Clausen at 6", "42 true", || {
            let (denom, integral) = vsc_check(6);
            format!("{denom} {integral}")
        }),
        example("bernoulli", "beta_4(5)", "4 (mod 5)", || display(bernoulli_factor_mod(5, 4))),
        example("bernoulli", "beta_3(7)", "4 (mod 7)", || display(bernoulli_factor_mod(7, 3))),
        example("bernoulli", "beta_6(7)", "6 (mod 7)", || display(bernoulli_factor_mod(7, 6))),
        example("bernoulli", "beta_2(5)", "0 (mod 5)", || display(bernoulli_factor_mod(5, 2))),
        example("harmonic", "half-range inverse squares at 5", "0 (mod 5)", || {
            display(sum_inv_sq(5, 2))
        }),
        example("harmonic", "third-range inverse squares at 7", "3 (mod 7)", || {
            display(sum_inv_sq(7, 3))
        }),
        example("harmonic", "quarter-range inverse squares at 5", "1 (mod 5)", || {
            display(sum_inv_sq(5, 4))
        }),
        example("harmonic", "half-range inverses at 5", "14 (mod 25)", || {
            display(sum_inv(5, 2))
        }),
        example("harmonic", "half-range inverses at 7", "10 (mod 49)", || {
            display(sum_inv(7, 2))
        }),
        example("harmonic", "sixth-range inverses at 7", "1 (mod 49)", || {
            display(sum_inv(7, 6))
        }),
        example("harmonic", "shifted third-range inverses at 5", "13 (mod 25)", || {
            display(sum_inv_shifted(5, 3))
        }),
        example("harmonic", "shifted quarter-range inverses at 7", "33 (mod 49)", || {
            display(sum_inv_shifted(7, 4))
        }),
        example("harmonic", "full-range inverse squares at 8", "0 (mod 4)", || {
            display(full_range_inv_sq(8))
        }),
        example("harmonic", "full-range inverse squares at 9", "0 (mod 3)", || {
            display(full_range_inv_sq(9))
        }),
        example("products", "half-range product at 5", "6 (mod 125)", || {
            display(t_product(5, 2, 1))
        }),
        example("products", "half-range product at 15", "286 (mod 1125)", || {
            display(t_product(15, 2, 1))
        }),
        example("products", "third-range product at 5", "4 (mod 125)", || {
            display(t_product(5, 3, 1))
        }),
        example("products", "central product at 5, k=1", "4 (mod 125)", || {
            display(s_product(5, 1))
        }),
        example("products", "central product at 5, k=3", "84 (mod 125)", || {
            display(s_product(5, 3))
        }),
        example("products", "Mobius binomial product at 15", "286", || {
            moebius_binom_product(15, 2, 1).to_string()
        }),
        example("products", "binom(5/2, 2)", "15/8", || gen_binom(&rat(5, 2), 2).to_string()),
        example("products", "binom(14, 7)", "3432", || {
            binomial(&BigInt::from(14), 7).to_string()
        }),
        example("closed-forms", "a_3(5)", "4 (mod 5)", || display(a_e_mod(5, 3))),
        example("closed-forms", "a_6(7)", "6 (mod 7)", || display(a_e_mod(7, 6))),
        example("closed-forms", "half-range closed form at 5", "6 (mod 125)", || {
            display(rhs_theorem2(5, 1))
        }),
        example("closed-forms", "half-range closed form at 15", "286 (mod 1125)", || {
            display(rhs_theorem2(15, 1))
        }),
        example("closed-forms", "half-range closed form at 5, k=2", "36 (mod 125)", || {
            display(rhs_theorem2(5, 2))
        }),
        example("closed-forms", "third-range formal power at 5", "4 (mod 125)", || {
            display(rhs_theorem3(5, 3, 1, Variant::Corrected))
        }),
        example("closed-forms", "third-range half-sum shape at 5", "54 (mod 125)", || {
            display(rhs_theorem3(5, 3, 1, Variant::Statement))
        }),
        example("closed-forms", "sixth-range half-sum shape at 7", "251 (mod 343)", || {
            display(rhs_theorem3(7, 6, 1, Variant::Statement))
        }),
        example("closed-forms", "quarter-range closed form at 5", "4 (mod 125)", || {
            display(rhs_theorem3(5, 4, 1, Variant::Statement))
        }),
        example("closed-forms", "central closed form at 5, k=3", "21 (mod 125)", || {
            display(rhs_theorem4(5, 3))
        }),
        example("closed-forms", "central closed form at 7, k=2", "134 (mod 343)", || {
            display(rhs_theorem4(7, 2))
        }),
        example("lemmas", "ord_2(10!)", "8", || ord_factorial(10, 2).to_string()),
        example("lemmas", "ord_5(25!)", "6", || ord_factorial(25, 5).to_string()),
        example("lemmas", "power sum at (5,1,2,2)", "pass 7 7 (mod 25)", || {
            display(lemma1_check(5, 1, 2, 2).map(|r| fmt_check(&r)))
        }),
        example("lemmas", "power sum at (5,1,2,4)", "pass 12 12 (mod 25)", || {
            display(lemma1_check(5, 1, 2, 4).map(|r| fmt_check(&r)))
        }),
        example("lemmas", "power sum at (5,1,4,2)", "pass 1 1 (mod 25)", || {
            display(lemma1_check(5, 1, 4, 2).map(|r| fmt_check(&r)))
        }),
        example("lemmas", "shift identity at (1,2,3,5,0)", "pass 3 3 (mod 5)", || {
            display(lemma3_check(1, 2, 3, 5, &BigRational::zero()).map(|r| fmt_check(&r)))
        }),
        example("lemmas", "shift identity at (1,4,2,5,0)", "pass 2 2 (mod 5)", || {
            display(lemma3_check(1, 4, 2, 5, &BigRational::zero()).map(|r| fmt_check(&r)))
        }),
        example("lemmas", "3-adic valuation of binom(4,2)", "1", || {
            central_binomial_three_valuation(5, 1).to_string()
        }),
        example("claims", "prime central binomial at 5", "pass 6 6 (mod 125)", || {
            check_claim(ClaimId::Morley, 5, None, None)
        }),
        example("claims", "prime central binomial at 5, k=2", "pass 36 36 (mod 125)", || {
            check_claim(ClaimId::Cor4, 5, Some(2), None)
        }),
        example("claims", "two-prime central binomial at 15", "pass 57 57 (mod 3375)", || {
            check_claim(ClaimId::Cor5, 15, Some(1), None)
        }),
        example("claims", "half-range product claim at 15", "pass 286 286 (mod 1125)", || {
            check_claim(ClaimId::Th2, 15, Some(1), None)
        }),
        example("claims", "third-range product claim at 5", "pass 4 4 (mod 125)", || {
            check_claim(ClaimId::Th3_1, 5, Some(1), None)
        }),
        example("claims", "central product claim at 7, k=2", "pass 134 134 (mod 343)", || {
            check_claim(ClaimId::Th4, 7, Some(2), None)
        }),
        example("claims", "full-range vanishing at 9", "pass 0 0 (mod 3)", || {
            check_claim(ClaimId::Lem2, 9, None, None)
        }),
        example("claims", "inverse-square sum claim at 5, e=2", "pass 0 0 (mod 5)", || {
            check_claim(ClaimId::Th1, 5, None, Some(2))
        }),
    ]
}

/// The distinct group names, in inventory order.
pub fn groups() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = Vec::new();
    for ex in inventory() {
        if !names.contains(&ex.group) {
            names.push(ex.group);
        }
    }
    names
}

/// Replays the inventory (optionally one group) and collects mismatches.
pub fn run_examples(only: Option<&str>) -> (usize, Vec<Mismatch>) {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for ex in inventory() {
        if only.is_some_and(|group| group != ex.group) {
            continue;
        }
        checked += 1;
        let observed = ex.observed();
        if observed != ex.expected {
            mismatches.push(Mismatch {
                group: ex.group,
                name: ex.name,
                expected: ex.expected,
                observed,
            });
        }
    }
    (checked, mismatches)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_frozen_example_reproduces() {
        let (checked, mismatches) = run_examples(None);
        assert_eq!(checked, inventory().len());
        assert!(mismatches.is_empty(), "divergent examples: {mismatches:#?}");
    }

    #[test]
    fn groups_cover_all_layers() {
        let groups = groups();
        for expected in [
            "modular",
            "multiplicative",
            "bernoulli",
            "harmonic",
            "products",
            "closed-forms",
            "lemmas",
            "claims",
        ] {
            assert!(groups.contains(&expected), "missing group {expected}");
        }
    }

    #[test]
    fn group_filter_restricts_the_run() {
        let (checked, mismatches) = run_examples(Some("bernoulli"));
        assert!(mismatches.is_empty());
        assert!(checked >= 8);
        assert!(checked < inventory().len());
    }

    #[test]
    fn names_are_unique_within_groups() {
        let inventory = inventory();
        for (i, a) in inventory.iter().enumerate() {
            for b in &inventory[i + 1..] {
                assert!(
                    a.group != b.group || a.name != b.name,
                    "duplicate example {}/{}",
                    a.group,
                    a.name
                );
            }
        }
    }
}
