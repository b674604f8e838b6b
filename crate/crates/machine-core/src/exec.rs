//! Forward execution: configurations, stepping, full runs, and visit
//! tracing.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::code::{bits_to_string, string_to_bits, Code};
use crate::error::RunError;
use crate::spec::{
    DequeRule, DequeToken, EndCell, MachineKind, MachineSpec, Outputs, PatCell, QueueRule,
    ReplToken, Rules, StackAction, StackRule, StackTop, StartHead, StateId, TapePattern, TapeRule,
};

/// A machine configuration: state, word, and (tape machines only) head
/// position. Head cells are numbered 0 (left marker) to ℓ+1 (right
/// marker); the word occupies cells 1..=ℓ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Config {
    pub state: StateId,
    pub word: String,
    pub head: Option<usize>,
}

/// Result of a single step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StepResult {
    /// A rule fired; here is the successor and the 0-based rule index.
    Next { config: Config, rule_index: usize },
    /// The configuration is in the halting state.
    Halted,
    /// No rule matches (a table gap, not an error of this API).
    NoRuleApplies,
}

/// Everything a finished (or budget-stopped) run reports.
///
/// Delay bookkeeping counts rule applications: `before_first` up to the
/// first output, one histogram entry per gap between consecutive
/// outputs, and `after_last` from the final output to the stop.
/// `max_delay` is the maximum of before-first, all gaps, and (only for
/// halting runs) after-last.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RunReport {
    pub length: usize,
    /// Emitted words in order (empty when streaming via `run_with`).
    pub outputs: Code,
    pub output_count: u64,
    pub steps: u64,
    pub max_delay: u64,
    pub before_first: u64,
    /// gap size → number of occurrences, for gaps between consecutive outputs.
    pub delay_histogram: BTreeMap<u64, u64>,
    pub after_last: u64,
    pub halted: bool,
    pub budget_exhausted: bool,
}

/// The step budget used by the command-line tools: 64·2^ℓ.
pub fn default_budget(len: usize) -> u64 {
    if len >= 57 {
        u64::MAX
    } else {
        64u64 << len
    }
}

/// The starting configuration for word length `len`: the all-zero word
/// in the initial state, head on cell 1 (or cell ℓ for machines that
/// start at the right end).
pub fn initial_config(spec: &MachineSpec, len: usize) -> Result<Config, RunError> {
    if len < spec.min_length {
        return Err(RunError::LengthUnsupported { min: spec.min_length, requested: len });
    }
    Ok(Config {
        state: spec.initial.clone(),
        word: "0".repeat(len),
        head: match (spec.kind, spec.start_head) {
            (MachineKind::Tape, StartHead::Left) => Some(1),
            (MachineKind::Tape, StartHead::Right) => Some(len),
            _ => None,
        },
    })
}

/// Runs the machine on the all-zero word of length `len`, collecting
/// the emitted words. Stops at the halting state or after `budget` rule
/// applications, whichever comes first.
///
/// Stack machines may emit words whose length differs from `len`; they
/// are collected as-is.
pub fn run(spec: &MachineSpec, len: usize, budget: u64) -> Result<RunReport, RunError> {
    let mut words: Vec<String> = Vec::new();
    let mut report = run_stream(spec, len, budget, &mut |bits| words.push(bits_to_string(bits)))?;
    report.outputs = Code { width: len, words };
    Ok(report)
}

/// Like [`run`], but hands each emitted word to `sink` instead of
/// collecting (the report's `outputs` stays empty). Use this for long
/// runs where materializing the whole sequence is wasteful.
pub fn run_with(
    spec: &MachineSpec,
    len: usize,
    budget: u64,
    mut sink: impl FnMut(&[u8]),
) -> Result<RunReport, RunError> {
    run_stream(spec, len, budget, &mut sink)
}

/// Runs the machine and collects every configuration (including the
/// initial and final ones) for which `pred(state, word)` is true,
/// paired with its step index. Stops at the halting state or after
/// `budget` applications.
pub fn trace_visits(
    spec: &MachineSpec,
    len: usize,
    budget: u64,
    mut pred: impl FnMut(&str, &str) -> bool,
) -> Result<Vec<(u64, Config)>, RunError> {
    let plan = Plan::new(spec);
    let mut cur = plan.initial_cursor(len)?;
    let mut hits = Vec::new();
    let mut steps: u64 = 0;
    loop {
        let word = bits_word(&mut cur.word);
        if pred(plan.names[cur.state], &word) {
            hits.push((steps, plan.materialize(&cur, word)));
        }
        if Some(cur.state) == plan.halting || steps >= budget {
            return Ok(hits);
        }
        match plan.try_step(&mut cur, steps)? {
            Some(_) => steps += 1,
            None => {
                return Err(RunError::NoRuleApplies {
                    at_step: steps,
                    state: plan.names[cur.state].to_string(),
                    word: bits_word(&mut cur.word),
                })
            }
        }
    }
}

/// Applies the first matching rule to `config` and returns the
/// successor. Convenience API for inspecting single steps; whole runs
/// should use [`run`].
pub fn step(spec: &MachineSpec, config: &Config) -> Result<StepResult, RunError> {
    let plan = Plan::new(spec);
    let mut cur = plan.cursor_from_config(config)?;
    if Some(cur.state) == plan.halting {
        return Ok(StepResult::Halted);
    }
    match plan.try_step(&mut cur, 0)? {
        Some(rule_index) => {
            let word = bits_word(&mut cur.word);
            Ok(StepResult::Next { config: plan.materialize(&cur, word), rule_index })
        }
        None => Ok(StepResult::NoRuleApplies),
    }
}

fn run_stream(
    spec: &MachineSpec,
    len: usize,
    budget: u64,
    sink: &mut dyn FnMut(&[u8]),
) -> Result<RunReport, RunError> {
    let plan = Plan::new(spec);
    let mut cur = plan.initial_cursor(len)?;

    let mut steps: u64 = 0;
    let mut output_count: u64 = 0;
    let mut last_output: Option<u64> = None;
    let mut before_first: u64 = 0;
    let mut delay_histogram: BTreeMap<u64, u64> = BTreeMap::new();
    let halted;
    let budget_exhausted;

    loop {
        if plan.output[cur.state] {
            sink(cur.word.make_contiguous());
            match last_output {
                None => before_first = steps,
                Some(prev) => *delay_histogram.entry(steps - prev).or_insert(0) += 1,
            }
            last_output = Some(steps);
            output_count += 1;
        }
        if Some(cur.state) == plan.halting {
            halted = true;
            budget_exhausted = false;
            break;
        }
        if steps >= budget {
            halted = false;
            budget_exhausted = true;
            break;
        }
        match plan.try_step(&mut cur, steps)? {
            Some(_) => steps += 1,
            None => {
                return Err(RunError::NoRuleApplies {
                    at_step: steps,
                    state: plan.names[cur.state].to_string(),
                    word: bits_word(&mut cur.word),
                })
            }
        }
    }

    let after_last = match last_output {
        Some(prev) => steps - prev,
        None => {
            before_first = steps;
            0
        }
    };
    let mut max_delay = before_first.max(delay_histogram.keys().next_back().copied().unwrap_or(0));
    if halted {
        max_delay = max_delay.max(after_last);
    }
    Ok(RunReport {
        length: len,
        outputs: Code::new(len),
        output_count,
        steps,
        max_delay,
        before_first,
        delay_histogram,
        after_last,
        halted,
        budget_exhausted,
    })
}

fn bits_word(word: &mut VecDeque<u8>) -> String {
    bits_to_string(word.make_contiguous())
}

/// Resolved state table and per-state rule index, built once per run.
pub(crate) struct Plan<'a> {
    pub spec: &'a MachineSpec,
    pub names: Vec<&'a str>,
    pub initial: usize,
    pub halting: Option<usize>,
    pub output: Vec<bool>,
    /// (from, to) of each rule, as state indices.
    pub rule_ends: Vec<(usize, usize)>,
    /// Rule indices grouped by from-state, in table order.
    pub by_state: Vec<Vec<usize>>,
}

/// A running machine: state index, word cells, head cell (tape only).
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Cursor {
    pub state: usize,
    pub word: VecDeque<u8>,
    pub head: usize,
}

impl<'a> Plan<'a> {
    pub fn new(spec: &'a MachineSpec) -> Self {
        let names = spec.states();
        let index: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let initial = index[spec.initial.as_str()];
        let halting = spec.halting.as_ref().map(|h| index[h.as_str()]);
        let output = match &spec.outputs {
            Outputs::All => vec![true; names.len()],
            Outputs::States(_) => names.iter().map(|s| spec.is_output(s)).collect(),
        };
        let mut rule_ends = Vec::with_capacity(spec.rules.len());
        let mut by_state = vec![Vec::new(); names.len()];
        for i in 0..spec.rules.len() {
            let (f, t) = spec.rules.endpoints(i);
            let (fi, ti) = (index[f.as_str()], index[t.as_str()]);
            rule_ends.push((fi, ti));
            by_state[fi].push(i);
        }
        Plan { spec, names, initial, halting, output, rule_ends, by_state }
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| *s == name)
    }

    pub fn initial_cursor(&self, len: usize) -> Result<Cursor, RunError> {
        if len < self.spec.min_length {
            return Err(RunError::LengthUnsupported { min: self.spec.min_length, requested: len });
        }
        Ok(Cursor {
            state: self.initial,
            word: std::iter::repeat(0u8).take(len).collect(),
            head: match (self.spec.kind, self.spec.start_head) {
                (MachineKind::Tape, StartHead::Right) => len,
                _ => 1,
            },
        })
    }

    pub fn cursor_from_config(&self, config: &Config) -> Result<Cursor, RunError> {
        let state = self
            .state_index(config.state.as_str())
            .ok_or_else(|| RunError::BadConfig { msg: format!("unknown state {}", config.state) })?;
        let bits = string_to_bits(&config.word)
            .map_err(|e| RunError::BadConfig { msg: e })?;
        if self.spec.kind != MachineKind::Stack && bits.len() < self.spec.min_length {
            return Err(RunError::BadConfig {
                msg: format!(
                    "word length {} is below the machine's minimum length {}",
                    bits.len(),
                    self.spec.min_length
                ),
            });
        }
        let head = match self.spec.kind {
            MachineKind::Tape => {
                let h = config.head.ok_or_else(|| RunError::BadConfig {
                    msg: "tape configurations need a head position".into(),
                })?;
                if h > bits.len() + 1 {
                    return Err(RunError::BadConfig {
                        msg: format!("head {h} is beyond the right marker"),
                    });
                }
                h
            }
            _ => 1,
        };
        Ok(Cursor { state, word: bits.into(), head })
    }

    pub fn materialize(&self, cur: &Cursor, word: String) -> Config {
        Config {
            state: StateId::new(self.names[cur.state]),
            word,
            head: (self.spec.kind == MachineKind::Tape).then_some(cur.head),
        }
    }

    /// Applies the first matching rule. `Ok(Some(i))` if rule `i` fired,
    /// `Ok(None)` if nothing matches.
    pub fn try_step(&self, cur: &mut Cursor, at_step: u64) -> Result<Option<usize>, RunError> {
        match &self.spec.rules {
            Rules::Tape(rules) => {
                for &ri in &self.by_state[cur.state] {
                    let r = &rules[ri];
                    if tape_matches(&r.pattern, &cur.word, cur.head) {
                        tape_apply(r, &mut cur.word, cur.head);
                        let nh = cur.head as isize + r.movement.delta();
                        if nh < 0 || nh > cur.word.len() as isize + 1 {
                            return Err(RunError::HeadOutOfBounds {
                                at_step,
                                state: self.names[cur.state].to_string(),
                            });
                        }
                        cur.head = nh as usize;
                        cur.state = self.rule_ends[ri].1;
                        return Ok(Some(ri));
                    }
                }
                Ok(None)
            }
            Rules::Deque(rules) => {
                for &ri in &self.by_state[cur.state] {
                    let r = &rules[ri];
                    if deque_matches(r, &cur.word) {
                        deque_apply(r, &mut cur.word);
                        cur.state = self.rule_ends[ri].1;
                        return Ok(Some(ri));
                    }
                }
                Ok(None)
            }
            Rules::Queue(rules) => {
                for &ri in &self.by_state[cur.state] {
                    let r = &rules[ri];
                    if queue_matches(r, &cur.word) {
                        queue_apply(r, &mut cur.word);
                        cur.state = self.rule_ends[ri].1;
                        return Ok(Some(ri));
                    }
                }
                Ok(None)
            }
            Rules::Stack(rules) => {
                for &ri in &self.by_state[cur.state] {
                    let r = &rules[ri];
                    if stack_matches(r, &cur.word) {
                        stack_apply(r, &mut cur.word);
                        cur.state = self.rule_ends[ri].1;
                        return Ok(Some(ri));
                    }
                }
                Ok(None)
            }
        }
    }
}

pub(crate) fn tape_matches(p: &TapePattern, word: &VecDeque<u8>, head: usize) -> bool {
    let len = word.len() as isize;
    let start = head as isize - p.head_index as isize;
    if start < 0 || start + p.cells.len() as isize > len + 2 {
        return false;
    }
    for (i, cell) in p.cells.iter().enumerate() {
        let pos = start + i as isize;
        let ok = match cell {
            PatCell::LeftMark => pos == 0,
            PatCell::RightMark => pos == len + 1,
            PatCell::Bit(b) => pos >= 1 && pos <= len && word[pos as usize - 1] == *b,
            PatCell::Any => pos >= 1 && pos <= len,
        };
        if !ok {
            return false;
        }
    }
    true
}

pub(crate) fn tape_apply(r: &TapeRule, word: &mut VecDeque<u8>, head: usize) {
    let start = head as isize - r.pattern.head_index as isize;
    for (i, t) in r.replacement.iter().enumerate() {
        let pos = start + i as isize;
        if pos >= 1 && pos <= word.len() as isize {
            let cell = &mut word[pos as usize - 1];
            match t {
                ReplToken::Keep => {}
                ReplToken::Write(b) => *cell = *b,
                ReplToken::Flip => *cell ^= 1,
            }
        }
    }
}

fn end_matches(cells: &[EndCell], word: &VecDeque<u8>, from_right: bool) -> bool {
    let n = word.len();
    cells.iter().enumerate().all(|(i, c)| {
        let v = if from_right { word[n - cells.len() + i] } else { word[i] };
        match c {
            EndCell::Bit(b) => v == *b,
            EndCell::Any => true,
        }
    })
}

pub(crate) fn deque_matches(r: &DequeRule, word: &VecDeque<u8>) -> bool {
    word.len() >= r.left_pattern.len() + r.right_pattern.len()
        && end_matches(&r.left_pattern, word, false)
        && end_matches(&r.right_pattern, word, true)
}

pub(crate) fn deque_apply(r: &DequeRule, word: &mut VecDeque<u8>) {
    let n = word.len();
    let fetch = |t: &DequeToken| match *t {
        DequeToken::Write(b) => b,
        DequeToken::CopyLeft(k) => word[k - 1],
        DequeToken::FlipLeft(k) => word[k - 1] ^ 1,
        DequeToken::CopyRight(k) => word[n - k],
        DequeToken::FlipRight(k) => word[n - k] ^ 1,
    };
    let left: Vec<u8> = r.left_replacement.iter().map(&fetch).collect();
    let right: Vec<u8> = r.right_replacement.iter().map(&fetch).collect();
    for _ in 0..r.left_pattern.len() {
        word.pop_front();
    }
    for _ in 0..r.right_pattern.len() {
        word.pop_back();
    }
    for &b in left.iter().rev() {
        word.push_front(b);
    }
    for &b in &right {
        word.push_back(b);
    }
}

pub(crate) fn queue_matches(r: &QueueRule, word: &VecDeque<u8>) -> bool {
    word.len() >= r.right_pattern.len() && end_matches(&r.right_pattern, word, true)
}

pub(crate) fn queue_apply(r: &QueueRule, word: &mut VecDeque<u8>) {
    for _ in 0..r.push_left.len() {
        word.pop_back();
    }
    for &b in r.push_left.iter().rev() {
        word.push_front(b);
    }
}

pub(crate) fn stack_matches(r: &StackRule, word: &VecDeque<u8>) -> bool {
    match r.top {
        StackTop::Bit(b) => word.back() == Some(&b),
        StackTop::Empty => word.is_empty(),
    }
}

pub(crate) fn stack_apply(r: &StackRule, word: &mut VecDeque<u8>) {
    match r.action {
        StackAction::Pop => {
            word.pop_back();
        }
        StackAction::Push(b) => word.push_back(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_machine_table;

    /// Walks right writing 1s, halting at the right marker.
    const FILLER: &str = "\
kind: tape
radius: 2
min-length: 1
initial: go
halting: done
outputs: go done

rule go | [0]. -> go | 1= | R
rule go | [0]< -> done | 1= | S
rule go | [1]< -> done | == | S
";

    #[test]
    fn runs_a_tiny_tape_machine() {
        let m = parse_machine_table(FILLER).unwrap();
        let rep = run(&m, 3, 100).unwrap();
        assert!(rep.halted);
        assert!(!rep.budget_exhausted);
        assert_eq!(rep.steps, 3);
        assert_eq!(rep.outputs.words, vec!["000", "100", "110", "111"]);
        assert_eq!(rep.output_count, 4);
        assert_eq!(rep.max_delay, 1);
    }

    #[test]
    fn budget_stops_without_halting() {
        let m = parse_machine_table(FILLER).unwrap();
        let rep = run(&m, 3, 2).unwrap();
        assert!(!rep.halted);
        assert!(rep.budget_exhausted);
        assert_eq!(rep.outputs.words, vec!["000", "100", "110"]);
    }

    #[test]
    fn step_reports_successor_and_halting() {
        let m = parse_machine_table(FILLER).unwrap();
        let c0 = initial_config(&m, 2).unwrap();
        assert_eq!(c0.word, "00");
        assert_eq!(c0.head, Some(1));
        match step(&m, &c0).unwrap() {
            StepResult::Next { config, rule_index } => {
                assert_eq!(rule_index, 0);
                assert_eq!(config.word, "10");
                assert_eq!(config.head, Some(2));
            }
            other => panic!("unexpected {other:?}"),
        }
        let halted = Config { state: StateId::new("done"), word: "11".into(), head: Some(2) };
        assert_eq!(step(&m, &halted).unwrap(), StepResult::Halted);
    }

    #[test]
    fn dead_ends_are_reported_with_the_configuration() {
        let gap = "\
kind: tape
radius: 1
min-length: 1
initial: go
outputs: ALL

rule go | [0] -> go | 1 | S
";
        let m = parse_machine_table(gap).unwrap();
        match run(&m, 1, 10) {
            Err(RunError::NoRuleApplies { at_step, state, word }) => {
                assert_eq!(at_step, 1);
                assert_eq!(state, "go");
                assert_eq!(word, "1");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn length_below_minimum_is_rejected() {
        let m = parse_machine_table(FILLER).unwrap();
        assert!(matches!(
            run(&m, 0, 10),
            Err(RunError::LengthUnsupported { min: 1, requested: 0 })
        ));
    }

    #[test]
    fn trace_visits_sees_every_configuration() {
        let m = parse_machine_table(FILLER).unwrap();
        let all = trace_visits(&m, 2, 100, |_, _| true).unwrap();
        assert_eq!(all.len(), 3); // 00 → 10 → 11(done)
        assert_eq!(all[0].1.word, "00");
        assert_eq!(all[2].1.state.as_str(), "done");
        let ones = trace_visits(&m, 2, 100, |_, w| w == "10").unwrap();
        assert_eq!(ones.len(), 1);
        assert_eq!(ones[0].0, 1);
    }

    #[test]
    fn default_budget_is_sixty_four_times_word_count() {
        assert_eq!(default_budget(3), 512);
        assert_eq!(default_budget(57), u64::MAX);
    }

    #[test]
    fn deque_semantics_rotate_and_copy() {
        let t = "\
kind: deque
radius: 2
min-length: 3
initial: a
outputs: ALL

rule a | 0 .. . -> b | - .. 1$R1
rule b | .. .. - -> a | $L2$L1 .. -
";
        let m = parse_machine_table(t).unwrap();
        // 000: pop a 0 at each end, append 1 and a copy of the old right cell
        let c0 = initial_config(&m, 3).unwrap();
        let s1 = match step(&m, &c0).unwrap() {
            StepResult::Next { config, .. } => config,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(s1.word, "010");
        // rule b swaps the two leftmost cells
        let s2 = match step(&m, &s1).unwrap() {
            StepResult::Next { config, .. } => config,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(s2.word, "100");
    }

    #[test]
    fn queue_semantics_push_exactly_what_they_pop() {
        let t = "\
kind: queue
radius: 2
min-length: 2
initial: a
outputs: ALL

rule a | .0 -> a | 11
rule a | .1 -> a | 0
";
        let m = parse_machine_table(t).unwrap();
        let c0 = initial_config(&m, 4).unwrap();
        let next = |c: &Config| match step(&m, c).unwrap() {
            StepResult::Next { config, .. } => config,
            other => panic!("unexpected {other:?}"),
        };
        let s1 = next(&c0);
        assert_eq!(s1.word, "1100"); // 0000 ends in "00": pop both, push 11
        let s2 = next(&s1);
        assert_eq!(s2.word, "1111"); // 1100 ends in "00" again
        let s3 = next(&s2);
        assert_eq!(s3.word, "0111"); // ends in 1: pop one, push one 0
    }

    #[test]
    fn stack_semantics_vary_length_and_allow_empty_pop() {
        let t = "\
kind: stack
radius: 1
min-length: 1
initial: a
outputs: ALL

rule a | 0 -> a | pop
rule a | @ -> b | pop
rule b | @ -> b | push1
";
        let m = parse_machine_table(t).unwrap();
        let rep = run(&m, 2, 4).unwrap();
        assert_eq!(rep.outputs.words, vec!["00", "0", "", "", "1"]);
    }
}
