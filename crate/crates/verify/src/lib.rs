//! Checks for machine output sequences: completeness (every word of the
//! length exactly once), structural properties of the order (Hamming
//! distance, flip-position skew, push-pop adjacency), delay accounting,
//! and configuration coverage.

use std::collections::HashSet;

use machine_core::{run_with, trace_visits, Code, MachineSpec, RunError, RunReport};

/// Outcome of a completeness check over one run.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    /// What was checked (a machine name or table path).
    pub subject: String,
    /// Word length of the run.
    pub length: usize,
    /// Whether the checked property held.
    pub passed: bool,
    /// Words produced (within the checked prefix, for prefix checks).
    pub output_count: u64,
    /// Outputs that had already been produced before.
    pub duplicate_count: u64,
    /// Words of the length never produced.
    pub missing_count: u64,
    /// Largest number of steps between consecutive outputs (also
    /// counting the stretches before the first and, on halting runs,
    /// after the last output).
    pub max_delay: u64,
    /// Largest Hamming distance between consecutive outputs.
    pub max_hamming: Option<usize>,
    /// Largest distance between consecutive flipped positions; only
    /// defined when every consecutive pair differs in exactly one bit.
    pub max_skew: Option<usize>,
    /// Description of the first defect found, if any.
    pub first_counterexample: Option<String>,
    /// Whether the machine reached its halting state.
    pub halted: bool,
    /// Whether the step budget ran out first.
    pub budget_exhausted: bool,
}

/// Streaming per-output bookkeeping shared by the completeness checks.
struct Stream {
    limit: Option<u64>, // only examine this many leading outputs
    seen: Vec<u64>,
    count: u64,
    distinct: u64,
    duplicates: u64,
    first_counterexample: Option<String>,
    prev: Option<Vec<u8>>,
    prev_flip: Option<usize>,
    max_hamming: Option<usize>,
    max_skew: Option<usize>,
    unit_distance: bool,
}

impl Stream {
    fn new(len: usize, limit: Option<u64>) -> Self {
        assert!(len <= 30, "completeness checks support lengths up to 30");
        Stream {
            limit,
            seen: vec![0u64; ((1usize << len) + 63) / 64],
            count: 0,
            distinct: 0,
            duplicates: 0,
            first_counterexample: None,
            prev: None,
            prev_flip: None,
            max_hamming: None,
            max_skew: None,
            unit_distance: true,
        }
    }

    fn take(&mut self, bits: &[u8]) {
        if let Some(limit) = self.limit {
            if self.count >= limit {
                return;
            }
        }
        self.count += 1;
        let index = bits.iter().fold(0usize, |acc, b| acc << 1 | *b as usize);
        let (block, mask) = (index / 64, 1u64 << (index % 64));
        if self.seen[block] & mask != 0 {
            self.duplicates += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(format!(
                    "output {} repeats word {}",
                    self.count,
                    machine_core::bits_to_string(bits)
                ));
            }
        } else {
            self.seen[block] |= mask;
            self.distinct += 1;
        }
        if let Some(prev) = &self.prev {
            let hamming = prev.iter().zip(bits).filter(|(a, b)| a != b).count();
            self.max_hamming = Some(self.max_hamming.unwrap_or(0).max(hamming));
            if hamming == 1 {
                let flip = prev.iter().zip(bits).position(|(a, b)| a != b).unwrap() + 1;
                if let Some(pf) = self.prev_flip {
                    let skew = flip.abs_diff(pf);
                    self.max_skew = Some(self.max_skew.unwrap_or(0).max(skew));
                }
                self.prev_flip = Some(flip);
            } else {
                self.unit_distance = false;
            }
        }
        self.prev = Some(bits.to_vec());
    }

    fn into_report(
        mut self,
        subject: &str,
        len: usize,
        run: RunReport,
        passed: bool,
        failure: Option<String>,
    ) -> VerificationReport {
        if self.first_counterexample.is_none() {
            self.first_counterexample = failure;
        }
        VerificationReport {
            subject: subject.to_string(),
            length: len,
            passed,
            output_count: self.count,
            duplicate_count: self.duplicates,
            missing_count: (1u64 << len) - self.distinct,
            max_delay: run.max_delay,
            max_hamming: self.max_hamming,
            max_skew: if self.unit_distance { self.max_skew } else { None },
            first_counterexample: self.first_counterexample,
            halted: run.halted,
            budget_exhausted: run.budget_exhausted,
        }
    }
}

/// Checks that a run halts after producing every word of the length
/// exactly once.
pub fn check_hamiltonian(
    spec: &MachineSpec,
    subject: &str,
    len: usize,
    budget: u64,
) -> Result<VerificationReport, RunError> {
    let mut stream = Stream::new(len, None);
    let run = run_with(spec, len, budget, |bits| stream.take(bits))?;
    let passed = run.halted
        && stream.duplicates == 0
        && stream.distinct == 1u64 << len;
    let failure = if !run.halted {
        Some(if run.budget_exhausted {
            "step budget exhausted before halting".to_string()
        } else {
            "run ended without halting".to_string()
        })
    } else if stream.distinct < 1u64 << len {
        Some(format!("{} words never produced", (1u64 << len) - stream.distinct))
    } else {
        None
    };
    Ok(stream.into_report(subject, len, run, passed, failure))
}

/// Checks that the first `2^len` outputs of a run are exactly the words
/// of the length, in some order. The run need not halt; it only needs
/// enough budget to produce that many outputs.
pub fn check_prefix_hamiltonian(
    spec: &MachineSpec,
    subject: &str,
    len: usize,
    budget: u64,
) -> Result<VerificationReport, RunError> {
    let want = 1u64 << len;
    let mut stream = Stream::new(len, Some(want));
    let run = run_with(spec, len, budget, |bits| stream.take(bits))?;
    let passed = stream.count == want && stream.duplicates == 0;
    let failure = if stream.count < want {
        Some(format!("only {} outputs within the step budget", stream.count))
    } else {
        None
    };
    Ok(stream.into_report(subject, len, run, passed, failure))
}

/// Output-delay accounting of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelayProfile {
    /// Steps before the first output.
    pub before_first: u64,
    /// Largest gap between consecutive outputs.
    pub max_gap: u64,
    /// Steps after the last output.
    pub after_last: u64,
    /// Whether the gap histogram tiles the whole run: the stretches
    /// before the first output, between consecutive outputs, and after
    /// the last one must sum to the step count exactly.
    pub identity_holds: bool,
}

/// Summarizes a run's delay histogram and cross-checks it against the
/// run length.
pub fn delay_profile(report: &RunReport) -> DelayProfile {
    let gap_steps: u64 = report.delay_histogram.iter().map(|(g, c)| g * c).sum();
    let gap_count: u64 = report.delay_histogram.values().sum();
    let identity_holds = if report.output_count == 0 {
        report.before_first == report.steps && report.after_last == 0 && gap_count == 0
    } else {
        report.before_first + gap_steps + report.after_last == report.steps
            && gap_count == report.output_count - 1
    };
    DelayProfile {
        before_first: report.before_first,
        max_gap: report.delay_histogram.keys().next_back().copied().unwrap_or(0),
        after_last: report.after_last,
        identity_holds,
    }
}

/// Smallest and largest Hamming distance between consecutive words,
/// or `None` for codes with fewer than two words.
pub fn hamming_profile(code: &Code) -> Option<(usize, usize)> {
    let dists = code.words.windows(2).map(|p| {
        p[0].chars().zip(p[1].chars()).filter(|(a, b)| a != b).count()
    });
    dists.fold(None, |acc, d| match acc {
        None => Some((d, d)),
        Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
    })
}

/// Smallest and largest distance between consecutive flip positions.
/// Fails unless every consecutive pair differs in exactly one bit and
/// there are at least two transitions.
pub fn skew_profile(code: &Code) -> Result<(usize, usize), String> {
    let mut flips = Vec::with_capacity(code.words.len().saturating_sub(1));
    for (i, pair) in code.words.windows(2).enumerate() {
        let diff: Vec<usize> = pair[0]
            .chars()
            .zip(pair[1].chars())
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(p, _)| p + 1)
            .collect();
        match diff.as_slice() {
            [p] => flips.push(*p),
            _ => {
                return Err(format!(
                    "skew is undefined: words {} and {} differ in {} positions",
                    i,
                    i + 1,
                    diff.len()
                ))
            }
        }
    }
    if flips.len() < 2 {
        return Err("skew needs at least three words".to_string());
    }
    let skews = flips.windows(2).map(|p| p[0].abs_diff(p[1]));
    Ok(skews.fold((usize::MAX, 0), |(lo, hi), s| (lo.min(s), hi.max(s))))
}

/// Checks that each word arises from its predecessor by popping one
/// cell at either end and pushing one cell at either end. Returns the
/// first adjacent pair that cannot, as `(index, left word, right word)`
/// — or `None` if the whole code is push-pop connected.
pub fn pushpop_profile(code: &Code) -> Option<(usize, String, String)> {
    for (i, pair) in code.words.windows(2).enumerate() {
        let (u, v) = (pair[0].as_str(), pair[1].as_str());
        let n = u.len();
        let ok = v[1..] == u[..n - 1] // pop right, push left
            || v[..n - 1] == u[1..] // pop left, push right
            || v[..n - 1] == u[..n - 1] // pop right, push right
            || v[1..] == u[1..]; // pop left, push left
        if !ok {
            return Some((i, u.to_string(), v.to_string()));
        }
    }
    None
}

/// How two codes relate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeComparison {
    Equal,
    /// Index of the first position where the codes disagree (including
    /// one code simply being shorter).
    FirstDivergence(usize),
}

pub fn compare_codes(a: &Code, b: &Code) -> CodeComparison {
    if a.width != b.width {
        return CodeComparison::FirstDivergence(0);
    }
    for (i, (x, y)) in a.words.iter().zip(&b.words).enumerate() {
        if x != y {
            return CodeComparison::FirstDivergence(i);
        }
    }
    if a.words.len() != b.words.len() {
        return CodeComparison::FirstDivergence(a.words.len().min(b.words.len()));
    }
    CodeComparison::Equal
}

/// Which words of the run's length the machine's configurations touch,
/// regardless of output states. For stack machines, configurations of
/// other lengths are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    /// Configurations visited whose word has the target length.
    pub visited_count: u64,
    /// Distinct words of the target length among them.
    pub distinct_visited: u64,
    /// Words of the target length never visited.
    pub missing_count: u64,
}

pub fn coverage_report(
    spec: &MachineSpec,
    len: usize,
    budget: u64,
) -> Result<CoverageReport, RunError> {
    assert!(len <= 30, "coverage checks support lengths up to 30");
    let visits = trace_visits(spec, len, budget, |_, word| word.len() == len)?;
    let distinct: HashSet<&str> = visits.iter().map(|(_, c)| c.word.as_str()).collect();
    Ok(CoverageReport {
        visited_count: visits.len() as u64,
        distinct_visited: distinct.len() as u64,
        missing_count: (1u64 << len) - distinct.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use builtin_machines::{builtin, toy_queue, toy_stack};
    use machine_core::{default_budget, run};
    use reference_codes::{code_b, rbgc, sliding_code, universal_word};

    #[test]
    fn t1_is_a_unit_distance_enumeration() {
        let report = check_hamiltonian(builtin("T1").unwrap(), "T1", 6, 100_000).unwrap();
        assert!(report.passed, "{:?}", report.first_counterexample);
        assert_eq!(report.output_count, 64);
        assert_eq!(report.max_hamming, Some(1));
        assert!(report.max_skew.unwrap() <= 3, "skew {:?}", report.max_skew);
    }

    #[test]
    fn t0_changes_up_to_three_bits() {
        let report = check_hamiltonian(builtin("T0").unwrap(), "T0", 6, 100_000).unwrap();
        assert!(report.passed);
        assert_eq!(report.max_hamming, Some(3));
        assert_eq!(report.max_skew, None, "not a unit-distance code");
    }

    #[test]
    fn d0_passes_as_prefix_but_not_as_full_enumeration() {
        let spec = builtin("D0").unwrap();
        let prefix = check_prefix_hamiltonian(spec, "D0", 5, default_budget(5)).unwrap();
        assert!(prefix.passed, "{:?}", prefix.first_counterexample);
        assert_eq!(prefix.output_count, 32);
        assert_eq!(prefix.missing_count, 0);

        let full = check_hamiltonian(spec, "D0", 5, default_budget(5)).unwrap();
        assert!(!full.passed);
        assert!(!full.halted);
        assert!(full.duplicate_count > 0);
    }

    #[test]
    fn delay_identity_holds_for_halting_and_budget_runs() {
        let halting = run(builtin("T1").unwrap(), 6, 100_000).unwrap();
        assert!(delay_profile(&halting).identity_holds);
        let endless = run(builtin("D0").unwrap(), 6, 5000).unwrap();
        assert!(endless.budget_exhausted);
        assert!(delay_profile(&endless).identity_holds);
    }

    #[test]
    fn hamming_and_skew_profiles_of_reference_codes() {
        assert_eq!(hamming_profile(&rbgc(5)), Some((1, 1)));
        assert_eq!(skew_profile(&rbgc(3)).unwrap(), (1, 2));
        assert!(skew_profile(&rbgc(8)).unwrap().1 >= 7);
        let t1 = run(builtin("T1").unwrap(), 8, default_budget(8)).unwrap();
        assert!(skew_profile(&t1.outputs).unwrap().1 <= 3);
        assert!(skew_profile(&code_b(1)).is_err(), "too short");
    }

    #[test]
    fn pushpop_accepts_window_codes_and_rejects_gray_codes() {
        let windows = sliding_code(&universal_word(4), 4);
        assert_eq!(pushpop_profile(&windows), None);
        // A one-bit flip in the middle of a word is not an end operation.
        let gray = rbgc(3);
        let (index, u, v) = pushpop_profile(&gray).unwrap();
        assert_eq!((index, u.as_str(), v.as_str()), (5, "111", "101"));
    }

    #[test]
    fn code_comparison_reports_first_divergence() {
        assert_eq!(compare_codes(&rbgc(4), &rbgc(4)), CodeComparison::Equal);
        let (a, b) = (rbgc(3), code_b(3));
        assert_eq!(compare_codes(&a, &b), CodeComparison::FirstDivergence(1));
        let mut short = rbgc(3);
        short.words.truncate(4);
        assert_eq!(compare_codes(&rbgc(3), &short), CodeComparison::FirstDivergence(4));
    }

    #[test]
    fn coverage_exposes_the_toy_machines() {
        let queue = coverage_report(toy_queue(), 6, 10_000).unwrap();
        assert_eq!(queue.distinct_visited, 12);
        assert_eq!(queue.missing_count, 52);
        let stack = coverage_report(toy_stack(), 5, 1_000_000).unwrap();
        assert_eq!(stack.distinct_visited, 2);
        assert_eq!(stack.missing_count, 30);
    }
}
