//! Grid expansion and evaluation: sweep one claim over a parameter
//! rectangle and collect per-cell outcomes in canonical order.
//!
//! A sweep enumerates the full rectangle (every n in range, every k, every
//! e the claim knows about) and lets the evaluator decide cell by cell:
//! hypothesis-violating cells become counted skips carrying the violation
//! message, so a sweep over `3..301` stays total without drowning real
//! counterexamples in out-of-range noise.
//!
//! Outcomes are kept in expansion order (n, then k, then e ascending), and
//! the parallel evaluator maps over an indexed iterator, so reports are
//! byte-identical for any job count.

use std::path::PathBuf;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::congruence::{
    verify_claim, CheckResult, ClaimId, ClaimParams, CongruenceClaim, Variant,
};
use crate::report::ReportFormat;

/// One claim swept over a parameter rectangle, plus emission settings.
#[derive(Debug, Clone)]
pub struct VerifyRequest {
    pub claim: ClaimId,
    /// Inclusive bounds for the leading parameter n.
    pub n_range: (u64, u64),
    /// Inclusive k bounds; claims without a k dimension ignore this.
    pub k_range: Option<(u32, u32)>,
    /// Subset of the claim's e sweep; `None` means the full sweep.
    pub e_values: Option<Vec<u32>>,
    pub variant: Option<Variant>,
    pub jobs: usize,
    pub format: ReportFormat,
    pub output: Option<PathBuf>,
}

impl VerifyRequest {
    pub fn new(claim: ClaimId, n_range: (u64, u64)) -> VerifyRequest {
        VerifyRequest {
            claim,
            n_range,
            k_range: None,
            e_values: None,
            variant: None,
            jobs: 1,
            format: ReportFormat::Text,
            output: None,
        }
    }
}

/// The fate of one grid cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// Both sides were evaluated and compared.
    Checked(CheckResult),
    /// The cell lies outside the claim's hypotheses (or a reduction was
    /// not invertible); the reason is the error message.
    Skipped { claim: CongruenceClaim, reason: String },
    /// An internal fault: counted as a failure, never hidden in the skips.
    Faulted { claim: CongruenceClaim, message: String },
}

impl Outcome {
    pub fn claim(&self) -> &CongruenceClaim {
        match self {
            Outcome::Checked(result) => &result.claim,
            Outcome::Skipped { claim, .. } | Outcome::Faulted { claim, .. } => claim,
        }
    }
}

/// Aggregate counts over a report; failed includes faulted cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Ordered outcomes of one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn results(&self) -> impl Iterator<Item = &CheckResult> {
        self.outcomes.iter().filter_map(|o| match o {
            Outcome::Checked(result) => Some(result),
            _ => None,
        })
    }

    pub fn skips(&self) -> impl Iterator<Item = (&CongruenceClaim, &str)> {
        self.outcomes.iter().filter_map(|o| match o {
            Outcome::Skipped { claim, reason } => Some((claim, reason.as_str())),
            _ => None,
        })
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| match o {
            Outcome::Checked(result) => !result.pass,
            Outcome::Skipped { .. } => false,
            Outcome::Faulted { .. } => true,
        })
    }

    pub fn summary(&self) -> Summary {
        let mut summary = Summary { total: self.outcomes.len(), passed: 0, failed: 0, skipped: 0 };
        for outcome in &self.outcomes {
            match outcome {
                Outcome::Checked(result) if result.pass => summary.passed += 1,
                Outcome::Checked(_) | Outcome::Faulted { .. } => summary.failed += 1,
                Outcome::Skipped { .. } => summary.skipped += 1,
            }
        }
        summary
    }

    pub fn all_pass(&self) -> bool {
        self.summary().failed == 0
    }
}

/// Enumerates the request's rectangle in canonical order: n ascending,
/// then k, then e. Claims with a variant dimension get the requested (or
/// default) variant resolved into every cell.
pub fn expand(request: &VerifyRequest) -> Vec<CongruenceClaim> {
    let ks: Vec<Option<u32>> = if request.claim.uses_k() {
        let (lo, hi) = request.k_range.unwrap_or((1, 1));
        (lo..=hi).map(Some).collect()
    } else {
        vec![None]
    };
    let es: Vec<Option<u32>> = match request.claim.e_sweep() {
        Some(sweep) => {
            let chosen: Vec<u32> = match &request.e_values {
                Some(list) => sweep.iter().copied().filter(|e| list.contains(e)).collect(),
                None => sweep.to_vec(),
            };
            chosen.into_iter().map(Some).collect()
        }
        None => vec![None],
    };
    let variant = if request.claim.uses_variant() {
        Some(request.variant.unwrap_or_default())
    } else {
        None
    };

    let mut claims = Vec::new();
    for n in request.n_range.0..=request.n_range.1 {
        for k in &ks {
            for e in &es {
                let mut params = ClaimParams::bare(n);
                params.k = *k;
                params.e = *e;
                params.variant = variant;
                claims.push(CongruenceClaim::new(request.claim, params));
            }
        }
    }
    claims
}

/// Evaluates a single cell, converting hypothesis-class errors to skips.
pub fn evaluate_cell(claim: &CongruenceClaim) -> Outcome {
    match verify_claim(claim) {
        Ok(result) => Outcome::Checked(result),
        Err(err) if err.is_hypothesis_filter() => Outcome::Skipped {
            claim: claim.clone(),
            reason: err.to_string(),
        },
        Err(err) => Outcome::Faulted {
            claim: claim.clone(),
            message: err.to_string(),
        },
    }
}

#[cfg(feature = "parallel")]
pub fn evaluate_all(claims: &[CongruenceClaim], jobs: usize) -> Vec<Outcome> {
    if jobs <= 1 {
        return claims.iter().map(evaluate_cell).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        // An indexed parallel map collects in input order, so the report
        // does not depend on scheduling.
        Ok(pool) => pool.install(|| claims.par_iter().map(evaluate_cell).collect()),
        Err(_) => claims.iter().map(evaluate_cell).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn evaluate_all(claims: &[CongruenceClaim], _jobs: usize) -> Vec<Outcome> {
    claims.iter().map(evaluate_cell).collect()
}

/// Expands and evaluates a request.
pub fn run(request: &VerifyRequest) -> Report {
    let claims = expand(request);
    Report { outcomes: evaluate_all(&claims, request.jobs) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_is_canonical_and_total() {
        let mut request = VerifyRequest::new(ClaimId::Th2, (3, 6));
        request.k_range = Some((1, 2));
        let cells = expand(&request);
        let flat: Vec<(u64, Option<u32>)> =
            cells.iter().map(|c| (c.params.n, c.params.k)).collect();
        assert_eq!(
            flat,
            vec![
                (3, Some(1)),
                (3, Some(2)),
                (4, Some(1)),
                (4, Some(2)),
                (5, Some(1)),
                (5, Some(2)),
                (6, Some(1)),
                (6, Some(2)),
            ],
            "full rectangle including out-of-hypothesis cells"
        );
    }

    #[test]
    fn expansion_sweeps_e_and_respects_subsets() {
        let mut request = VerifyRequest::new(ClaimId::Th1, (5, 5));
        let es: Vec<Option<u32>> = expand(&request).iter().map(|c| c.params.e).collect();
        assert_eq!(es, vec![Some(2), Some(3), Some(4), Some(6)]);

        request.e_values = Some(vec![6, 3]);
        let es: Vec<Option<u32>> = expand(&request).iter().map(|c| c.params.e).collect();
        assert_eq!(es, vec![Some(3), Some(6)], "subset keeps sweep order");
    }

    #[test]
    fn variant_is_resolved_for_variant_claims_only() {
        let request = VerifyRequest::new(ClaimId::Th3_1, (5, 5));
        assert_eq!(
            expand(&request)[0].params.variant,
            Some(Variant::ProofExpansion),
            "default variant is resolved into the cell"
        );
        let request = VerifyRequest::new(ClaimId::Th2, (5, 5));
        assert_eq!(expand(&request)[0].params.variant, None);
    }

    #[test]
    fn evaluation_skips_hypothesis_cells_and_counts() {
        let mut request = VerifyRequest::new(ClaimId::Th2, (3, 16));
        request.k_range = Some((1, 1));
        let report = run(&request);
        let summary = report.summary();
        assert_eq!(summary.total, 14);
        assert_eq!(summary.passed, 7, "odd 3..15");
        assert_eq!(summary.skipped, 7, "even n filtered by hypothesis");
        assert_eq!(summary.failed, 0);
        assert!(report.all_pass());
        for (claim, reason) in report.skips() {
            assert_eq!(claim.params.n % 2, 0);
            assert!(reason.contains("odd"), "reason names the violated condition");
        }
    }

    #[test]
    fn prime_claims_skip_composites() {
        let request = VerifyRequest::new(ClaimId::Morley, (2, 30));
        let report = run(&request);
        let passing: Vec<u64> = report
            .results()
            .filter(|r| r.pass)
            .map(|r| r.claim.params.n)
            .collect();
        assert_eq!(passing, vec![5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(report.summary().failed, 0);
    }

    #[test]
    fn job_count_does_not_change_outcomes() {
        let mut request = VerifyRequest::new(ClaimId::Th1, (5, 49));
        request.jobs = 1;
        let sequential = run(&request);
        request.jobs = 8;
        let parallel = run(&request);
        assert_eq!(sequential, parallel);
    }

    #[test]
    fn statement_variant_failure_is_a_checked_fail() {
        let mut request = VerifyRequest::new(ClaimId::Th3_1, (5, 5));
        request.variant = Some(Variant::Statement);
        let report = run(&request);
        let summary = report.summary();
        assert_eq!(summary.failed, 1);
        let fail = report.failures().next().unwrap();
        match fail {
            Outcome::Checked(result) => {
                assert_eq!(result.lhs, 4.into());
                assert_eq!(result.rhs, 54.into());
            }
            other => panic!("expected a checked failure, got {other:?}"),
        }
    }
}
