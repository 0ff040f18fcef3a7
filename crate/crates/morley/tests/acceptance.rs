//! Full-grid acceptance sweep.
//!
//! Each test pins one release gate: a complete parameter grid for a
//! published congruence, spot values frozen from hand calculation, the
//! counterexample behaviour of the search path, and byte-level determinism
//! of the reports. Every comparison is exact; a single failing cell fails
//! its gate. The whole file is budgeted to finish well under a minute.

use std::process::Command;

use morley::congruence::{
    self, rhs_theorem3, rhs_theorem4, verify_claim, CheckResult, ClaimId, ClaimParams,
    CongruenceClaim, Variant,
};
use morley::grid::{self, VerifyRequest};
use morley::modular::{factorize, rational_mod, unit_power_formal, Modulus};
use morley::multiplicative::{
    combined_totient, euler_phi, generalized_totient, TotientSpec, Weight,
};
use morley::{bernoulli, harmonic};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn is_prime(n: u64) -> bool {
    factorize(&BigInt::from(n)).is_prime()
}

fn sweep(
    id: ClaimId,
    n_range: (u64, u64),
    k_range: Option<(u32, u32)>,
    variant: Option<Variant>,
) -> grid::Report {
    let mut request = VerifyRequest::new(id, n_range);
    request.k_range = k_range;
    request.variant = variant;
    request.jobs = 4;
    grid::run(&request)
}

/// Panics listing every failing cell, so a red gate names its witnesses.
fn assert_clean(report: &grid::Report, expected_passes: usize, label: &str) {
    let failures: Vec<String> = report
        .results()
        .filter(|r| !r.pass)
        .map(|r| format!("n={} {} != {} (mod {})", r.claim.params.n, r.lhs, r.rhs, r.modulus))
        .collect();
    assert!(failures.is_empty(), "{label}: failing cells {failures:?}");
    let summary = report.summary();
    assert_eq!(summary.failed, 0, "{label}: faulted cells counted as failures");
    assert_eq!(summary.passed, expected_passes, "{label}: grid coverage shrank");
}

fn cell<'a>(report: &'a grid::Report, n: u64, k: Option<u32>) -> &'a CheckResult {
    report
        .results()
        .find(|r| r.claim.params.n == n && r.claim.params.k == k)
        .unwrap_or_else(|| panic!("no checked cell at n = {n}, k = {k:?}"))
}

fn spot(result: &CheckResult, value: i64, modulus: i64) {
    assert!(result.pass, "spot cell unexpectedly fails");
    assert_eq!(result.lhs, big(value), "spot lhs");
    assert_eq!(result.rhs, big(value), "spot rhs");
    assert_eq!(result.modulus, big(modulus), "spot modulus");
}

fn run_binary(args: &[&str]) -> (String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_morley"))
        .args(args)
        .output()
        .expect("binary launches");
    let code = output.status.code().expect("binary exits normally");
    (String::from_utf8(output.stdout).expect("utf-8 stdout"), code)
}

fn admissible(lo: u64, hi: u64, coprime_to: u64) -> Vec<u64> {
    (lo..=hi).filter(|n| n.gcd(&coprime_to) == 1).collect()
}

#[test]
fn criterion_01_signed_central_binomial_at_primes() {
    let primes: Vec<u64> = (5..=97).filter(|&n| is_prime(n)).collect();

    let base = sweep(ClaimId::Morley, (2, 97), None, None);
    assert_clean(&base, primes.len(), "prime case, k = 1");
    let checked: Vec<u64> = base.results().map(|r| r.claim.params.n).collect();
    assert_eq!(checked, primes, "exactly the primes from 5 up are checked");

    let composite = sweep(ClaimId::Cor4, (2, 97), Some((1, 4)), None);
    assert_clean(&composite, primes.len() * 4, "composite top, k up to 4");
    spot(cell(&composite, 5, Some(1)), 6, 125);
    spot(cell(&composite, 5, Some(2)), 36, 125);
}

#[test]
fn criterion_02_half_range_product_closed_form_and_moebius_identity() {
    let report = sweep(ClaimId::Th2, (3, 301), Some((1, 4)), None);
    let odd = (3..=301u64).filter(|n| n % 2 == 1).count();
    assert_clean(&report, odd * 4, "half-range unit product, e = 2");
    spot(cell(&report, 15, Some(1)), 286, 1125);

    // The same product rebuilt from binomial coefficients by Möbius
    // inversion, compared as exact rationals by cross-multiplication.
    for n in (3..=105u64).step_by(2) {
        for e in [2u32, 3, 4, 6] {
            for k in 1..=3u32 {
                let ok = congruence::moebius_identity_check(n, e, k)
                    .expect("odd n satisfies the product hypotheses");
                assert!(ok, "Möbius identity at n = {n}, e = {e}, k = {k}");
            }
        }
    }
}

#[test]
fn criterion_03_quadratic_inverse_sums_mod_n() {
    let six = admissible(5, 295, 6);

    let full = sweep(ClaimId::Th1, (5, 295), None, None);
    assert_clean(&full, six.len() * 4, "inverse-square sums over e in {2,3,4,6}");

    let vanishing = sweep(ClaimId::Cor1, (5, 295), None, None);
    assert_clean(&vanishing, six.len(), "half-range inverse squares vanish");
    for r in vanishing.results() {
        assert!(r.lhs.is_zero(), "n = {} sums to {}", r.claim.params.n, r.lhs);
    }

    let euler_form = sweep(ClaimId::Cor2, (5, 295), None, None);
    assert_clean(&euler_form, six.len(), "quarter-range form via Euler numbers");

    assert_eq!(harmonic::sum_inv_sq(5, 4).unwrap().lift(), big(1));
    assert_eq!(harmonic::sum_inv_sq(7, 3).unwrap().lift(), big(3));
}

#[test]
fn criterion_04_linear_inverse_sums_mod_n_squared() {
    let six = admissible(5, 295, 6).len();
    let thirty = admissible(5, 295, 30).len();
    let odd = (3..=295u64).filter(|n| n % 2 == 1).count();

    for (id, expected) in [
        (ClaimId::Cor3_1, six),
        (ClaimId::Cor3_2, six),
        (ClaimId::Cor3_3, thirty),
        (ClaimId::Lem4, odd),
        (ClaimId::Lem5_1, six),
        (ClaimId::Lem5_2, six),
        (ClaimId::Lem5_3, thirty),
    ] {
        let report = sweep(id, (3, 295), None, None);
        assert_clean(&report, expected, &format!("{id} predictor"));
    }

    assert_eq!(harmonic::sum_inv(5, 2).unwrap().lift(), big(14));
    assert_eq!(harmonic::sum_inv_shifted(7, 4).unwrap().lift(), big(33));
    let sixth = harmonic::sum_inv(7, 6).unwrap();
    assert_eq!(sixth.lift(), big(1));
    assert_eq!(sixth, harmonic::predict_sum_inv(7, 6).unwrap());
}

#[test]
fn criterion_05_fractional_range_closed_forms_and_first_counterexamples() {
    let six = admissible(5, 295, 6);
    let thirty = admissible(5, 295, 30);

    // (a) For e = 4 the closed form passes as stated, and all three
    // right-hand-side variants agree cell by cell.
    let stated = sweep(ClaimId::Th3_2, (5, 295), Some((1, 4)), Some(Variant::Statement));
    assert_clean(&stated, six.len() * 4, "quarter-range product, stated form");
    spot(cell(&stated, 5, Some(1)), 4, 125);
    for &n in &six {
        for k in 1..=4 {
            let reference = rhs_theorem3(n, 4, k, Variant::Statement).unwrap();
            for variant in [Variant::ProofExpansion, Variant::Corrected] {
                assert_eq!(
                    rhs_theorem3(n, 4, k, variant).unwrap(),
                    reference,
                    "e = 4 variants split at n = {n}, k = {k}, {variant}"
                );
            }
        }
    }

    // (b) For e in {3, 6} the derivation-backed variants pass everywhere.
    for (id, grid_points) in [(ClaimId::Th3_1, &six), (ClaimId::Th3_3, &thirty)] {
        for variant in [Variant::ProofExpansion, Variant::Corrected] {
            let report = sweep(id, (5, 295), Some((1, 4)), Some(variant));
            assert_clean(&report, grid_points.len() * 4, &format!("{id} {variant}"));
        }
    }
    let third = verify_claim(&CongruenceClaim::new(ClaimId::Th3_1, {
        let mut p = ClaimParams::bare(5);
        p.k = Some(1);
        p.variant = Some(Variant::Corrected);
        p
    }))
    .unwrap();
    spot(&third, 4, 125);
    let sixth = verify_claim(&CongruenceClaim::new(ClaimId::Th3_3, {
        let mut p = ClaimParams::bare(7);
        p.k = Some(1);
        p.variant = Some(Variant::ProofExpansion);
        p
    }))
    .unwrap();
    spot(&sixth, 6, 343);

    // (c) As printed, e in {3, 6} fail, and the search surfaces the first
    // counterexamples exactly: (n = 5, k = 1) and (n = 7, k = 1).
    let expectations = [
        (ClaimId::Th3_1, "FAIL th3_1 n=5 k=1 variant=statement | 4 != 54 (mod 125)"),
        (ClaimId::Th3_3, "FAIL th3_3 n=7 k=1 variant=statement | 6 != 251 (mod 343)"),
    ];
    for (id, expected_line) in expectations {
        let claim = id.to_string();
        let (stdout, code) = run_binary(&[
            "search",
            "--claim",
            &claim,
            "--variant",
            "statement",
            "--n",
            "5..295",
            "--k",
            "1..4",
            "--stop-on-first",
        ]);
        assert_eq!(code, 1, "{claim}: search must exit nonzero on a counterexample");
        assert_eq!(stdout.lines().next(), Some(expected_line), "{claim}: first witness");

        // Without --stop-on-first the same cell must still lead the list.
        let (full, code) =
            run_binary(&["search", "--claim", &claim, "--variant", "statement", "--n", "5..65", "--k", "1..4"]);
        assert_eq!(code, 1);
        assert_eq!(full.lines().next(), Some(expected_line), "{claim}: leading witness");
    }
}

#[test]
fn criterion_06_central_product_and_half_binomial_moebius_route() {
    let report = sweep(ClaimId::Th4, (3, 301), Some((1, 4)), None);
    let odd = (3..=301u64).filter(|n| n % 2 == 1).count();
    assert_clean(&report, odd * 4, "central unit product");
    spot(cell(&report, 5, Some(3)), 21, 125);
    spot(cell(&report, 7, Some(2)), 134, 343);

    // Independent route: the Möbius product of generalized half-integer
    // binomials reduces to the same power of two.
    for n in (3..=301u64).step_by(2) {
        let modulus = congruence::s_case_modulus(n);
        for k in 1..=4u32 {
            let product = congruence::moebius_gen_binom_half(n, k);
            let reduced = rational_mod(&product, &modulus)
                .unwrap_or_else(|err| panic!("n = {n}, k = {k}: {err}"));
            assert_eq!(
                reduced,
                rhs_theorem4(n, k).unwrap(),
                "Möbius route splits from the closed form at n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn criterion_07_two_prime_product_formula() {
    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23];
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            for k in 1..=3u32 {
                let mut params = ClaimParams::bare(p * q);
                params.k = Some(k);
                let result = verify_claim(&CongruenceClaim::new(ClaimId::Cor5, params))
                    .expect("distinct odd primes satisfy the hypotheses");
                assert!(
                    result.pass,
                    "p = {p}, q = {q}, k = {k}: {} != {} (mod {})",
                    result.lhs, result.rhs, result.modulus
                );
            }
        }
    }

    let mut params = ClaimParams::bare(15);
    params.k = Some(1);
    let witness = verify_claim(&CongruenceClaim::new(ClaimId::Cor5, params)).unwrap();
    spot(&witness, 57, 3375);
}

#[test]
fn criterion_08_power_sum_and_bernoulli_shift_lemmas() {
    let mut verdicts = 0usize;
    for p in [5u64, 7, 11, 13] {
        for l in [1u32, 2] {
            for t in [2u32, 3, 4, 6] {
                for k in [2u32, 3, 4, 5] {
                    match congruence::lemma1_check(p, l, t, k) {
                        Ok(result) => {
                            assert!(
                                result.pass,
                                "p = {p}, l = {l}, t = {t}, k = {k}: {} != {}",
                                result.lhs, result.rhs
                            );
                            verdicts += 1;
                        }
                        Err(err) => {
                            assert!(
                                err.is_hypothesis_filter(),
                                "p = {p}, l = {l}, t = {t}, k = {k} faulted: {err}"
                            );
                        }
                    }
                }
            }
        }
    }
    // Every cell of this grid happens to have invertible denominators.
    assert_eq!(verdicts, 4 * 2 * 4 * 4, "no cell should be skipped here");
    let witness = congruence::lemma1_check(5, 1, 2, 2).unwrap();
    spot(&witness, 7, 25);

    for a in [0u32, 1, 2] {
        for k in 1..=6u32 {
            for m in [1u32, 2, 3, 4, 6] {
                for q in [5u64, 7, 25, 49] {
                    for x in [rat(0, 1), rat(1, 2)] {
                        let result = congruence::lemma3_check(a, k, m, q, &x)
                            .expect("scales coprime to q stay within hypotheses");
                        assert!(result.pass, "a = {a}, k = {k}, m = {m}, q = {q}, x = {x}");
                    }
                }
            }
        }
    }
    let witness = congruence::lemma3_check(1, 2, 3, 5, &BigRational::zero()).unwrap();
    spot(&witness, 3, 5);
}

#[test]
fn criterion_09_full_range_inverse_square_sum_vanishes() {
    let report = sweep(ClaimId::Lem2, (3, 1000), None, None);
    // n = 3 is the lone excluded point: its case modulus degenerates to 1.
    assert_clean(&report, 997, "full-range inverse squares");
    assert_eq!(report.summary().skipped, 1);
    for r in report.results() {
        assert!(r.lhs.is_zero(), "n = {} left residue {}", r.claim.params.n, r.lhs);
    }
}

#[test]
fn criterion_10_internal_consistency() {
    // Bernoulli factor at primes against the exact-rational route.
    for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let modulus = Modulus::from_u64(p);
        for e in [2u32, 3, 4, 6] {
            let direct = bernoulli::bernoulli_factor_mod(p, e).unwrap();
            let rational = bernoulli::bernoulli_poly(p as usize - 2, &rat(1, i64::from(e)))
                / BigRational::from_integer(big(p as i64 - 2));
            assert_eq!(direct, rational_mod(&rational, &modulus).unwrap(), "p = {p}, e = {e}");
        }
    }

    // Signed totient product against the rational generalized totient.
    for n in (3..=301u64).step_by(2) {
        let phi = euler_phi(n);
        let exponent = u32::try_from(phi - 2).unwrap();
        for e in [2u32, 3, 4, 6] {
            if e != 2 && n % 3 == 0 {
                continue;
            }
            let product = combined_totient(e, n, exponent).unwrap();
            let spec = TotientSpec { weight: Weight::Jacobi(e), exponent: -i64::from(exponent) };
            let rational_form = BigRational::from_integer(big(n as i64).pow(exponent))
                * generalized_totient(&spec, n).unwrap();
            assert_eq!(BigRational::from_integer(product), rational_form, "n = {n}, e = {e}");
        }
    }

    // Raabe's multiplication theorem and the von Staudt-Clausen integer.
    for v in 0..=20usize {
        for m in [1u32, 2, 3, 4, 6] {
            for x in [rat(0, 1), rat(1, 2), rat(1, 3), rat(-2, 7)] {
                assert!(bernoulli::raabe_check(v, m, &x), "v = {v}, m = {m}, x = {x}");
            }
        }
    }
    for twok in (2..=60usize).step_by(2) {
        let (_, integral) = bernoulli::vsc_check(twok);
        assert!(integral, "denominator split fails at index {twok}");
    }

    // Formal half powers: exponent additivity and agreement with integer powers.
    for n in [5u64, 7, 11, 13, 25] {
        let shell = big(n as i64);
        let modulus = Modulus::from_u64(n * n * n);
        for a in [1u64, 2, n - 1] {
            let unit = modulus.residue(BigInt::one() + big(a as i64) * &shell);
            for s in [rat(1, 2), rat(3, 2), rat(2, 1)] {
                for t in [rat(1, 2), rat(5, 2), rat(3, 1)] {
                    let split = &unit_power_formal(&unit, &s, &shell).unwrap()
                        * &unit_power_formal(&unit, &t, &shell).unwrap();
                    let joined = unit_power_formal(&unit, &(s.clone() + t), &shell).unwrap();
                    assert_eq!(split, joined, "n = {n}, a = {a}, s = {s}");
                }
            }
            for k in 0..=4i64 {
                assert_eq!(
                    unit_power_formal(&unit, &rat(k, 1), &shell).unwrap(),
                    unit.pow_signed(&big(k)).unwrap(),
                    "integer exponent {k} at n = {n}, a = {a}"
                );
            }
        }
    }

    // Shift multiplicativity at prime powers and the reflection symmetry.
    for p in [5u64, 7, 11, 13] {
        for l in [1u32, 2] {
            for e in [2u32, 3, 4, 6] {
                for m in [2u64, 3, 5, 7, 11] {
                    if m.gcd(&(u64::from(e) * p)) != 1 {
                        continue;
                    }
                    let ok = harmonic::shift_multiplicativity_check(p, l, e, m).unwrap();
                    assert!(ok, "p = {p}, l = {l}, e = {e}, m = {m}");
                }
            }
        }
    }
    for n in 5..=99u64 {
        for e in [3u32, 4, 6] {
            match harmonic::reflection_check(n, e) {
                Ok(ok) => assert!(ok, "n = {n}, e = {e}"),
                Err(err) => {
                    assert!(err.is_hypothesis_filter(), "n = {n}, e = {e} faulted: {err}")
                }
            }
        }
    }
}

#[test]
fn criterion_11_parallel_and_sequential_reports_are_byte_identical() {
    let dir = std::env::temp_dir();
    for format in ["text", "json", "csv"] {
        let mut outputs = Vec::new();
        for jobs in ["1", "8"] {
            let path = dir.join(format!("morley-determinism-{}-{format}-{jobs}", std::process::id()));
            let path_str = path.to_str().expect("temp path is utf-8");
            let (_, code) = run_binary(&[
                "verify", "--claim", "th2", "--n", "3..301", "--k", "1..4", "--jobs", jobs,
                "--format", format, "--output", path_str,
            ]);
            assert_eq!(code, 0, "the sweep itself passes");
            outputs.push(std::fs::read(&path).expect("report written"));
            std::fs::remove_file(&path).ok();
        }
        assert!(!outputs[0].is_empty(), "{format} report has content");
        assert_eq!(outputs[0], outputs[1], "{format} reports differ between --jobs 1 and 8");
    }
}
