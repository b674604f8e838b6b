//! Reverse execution.
//!
//! A machine can be run backwards when its step relation is injective:
//! no two configurations map to the same successor. [`analyze_injectivity`]
//! checks this statically and conservatively — a rule that overwrites a
//! wildcard cell loses information, and two rules into the same state
//! whose rewritten windows could coincide make the predecessor
//! ambiguous. Machines that pass are inverted exactly: each backward
//! step reconstructs the predecessor window and then *forward-verifies*
//! it (re-applying the table with normal first-match priority must
//! reproduce the current configuration), so a reconstruction can never
//! be silently wrong.

use std::collections::BTreeMap;

use crate::code::{bits_to_string, Code};
use crate::error::RunError;
use crate::exec::{Config, Cursor, Plan, RunReport};
use crate::spec::{
    DequeRule, DequeToken, EndCell, MachineKind, MachineSpec, PatCell, QueueRule, ReplToken,
    Rules, StackAction, StackRule, StackTop, StartHead, TapeRule,
};

/// Static injectivity findings: rules that discard matched content, and
/// rule pairs that could produce the same configuration. Both lists use
/// 0-based rule indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Analysis {
    pub lossy: Vec<usize>,
    pub ambiguous: Vec<(usize, usize)>,
}

impl Analysis {
    pub fn is_injective(&self) -> bool {
        self.lossy.is_empty() && self.ambiguous.is_empty()
    }

    /// Short human-readable summary, for errors and lint output.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for i in &self.lossy {
            parts.push(format!("rule {} discards matched cells", i + 1));
        }
        for (i, j) in &self.ambiguous {
            parts.push(format!("rules {} and {} can produce the same configuration", i + 1, j + 1));
        }
        parts.join("; ")
    }
}

/// A precompiled backward stepper for an injective machine. Build one
/// with [`Reverser::new`] (which runs the injectivity analysis once),
/// then walk configurations backwards step by step; [`reverse_run`] is
/// the whole-run convenience wrapper.
pub struct Reverser<'a> {
    plan: Plan<'a>,
    /// Rule indices grouped by target state, in table order.
    by_to: Vec<Vec<usize>>,
}

impl<'a> Reverser<'a> {
    /// Errors with `ReverseUnsupported` if the table is not injective.
    pub fn new(spec: &'a MachineSpec) -> Result<Self, RunError> {
        let analysis = analyze_injectivity(spec);
        if !analysis.is_injective() {
            return Err(RunError::ReverseUnsupported { reason: analysis.describe() });
        }
        let plan = Plan::new(spec);
        let mut by_to: Vec<Vec<usize>> = vec![Vec::new(); plan.names.len()];
        for (i, (_, t)) in plan.rule_ends.iter().enumerate() {
            by_to[*t].push(i);
        }
        Ok(Reverser { plan, by_to })
    }

    /// The unique predecessor of `config`, or `None` when no inverse
    /// rule applies (in particular at the initial configuration, which
    /// nothing precedes).
    pub fn step_back(&self, config: &Config) -> Result<Option<Config>, RunError> {
        let mut cur = self.plan.cursor_from_config(config)?;
        if step_back(&self.plan, &self.by_to, &mut cur)? {
            let word = bits_to_string(cur.word.make_contiguous());
            Ok(Some(self.plan.materialize(&cur, word)))
        } else {
            Ok(None)
        }
    }
}

/// Runs the machine backwards from `from`, emitting words at output
/// states (including `from` itself if its state emits), until the
/// initial configuration is reached or the budget runs out. Reversing a
/// forward run from its final configuration yields the forward output
/// sequence in reverse order.
///
/// Errors with `ReverseUnsupported` if the table is not injective.
pub fn reverse_run(spec: &MachineSpec, from: &Config, budget: u64) -> Result<RunReport, RunError> {
    let rev = Reverser::new(spec)?;
    let (plan, by_to) = (&rev.plan, &rev.by_to);
    let mut cur = plan.cursor_from_config(from)?;
    let len = cur.word.len();
    let start_head = match spec.start_head {
        StartHead::Left => 1,
        StartHead::Right => len,
    };

    let mut words: Vec<String> = Vec::new();
    let mut steps: u64 = 0;
    let mut output_count: u64 = 0;
    let mut last_output: Option<u64> = None;
    let mut before_first: u64 = 0;
    let mut delay_histogram: BTreeMap<u64, u64> = BTreeMap::new();
    let reached_initial;
    let budget_exhausted;

    loop {
        if plan.output[cur.state] {
            words.push(bits_to_string(cur.word.make_contiguous()));
            match last_output {
                None => before_first = steps,
                Some(prev) => *delay_histogram.entry(steps - prev).or_insert(0) += 1,
            }
            last_output = Some(steps);
            output_count += 1;
        }
        let at_start = cur.state == plan.initial
            && cur.word.iter().all(|b| *b == 0)
            && (spec.kind != MachineKind::Tape || cur.head == start_head);
        if at_start {
            reached_initial = true;
            budget_exhausted = false;
            break;
        }
        if steps >= budget {
            reached_initial = false;
            budget_exhausted = true;
            break;
        }
        match step_back(plan, by_to, &mut cur)? {
            true => steps += 1,
            false => {
                return Err(RunError::NoInverseApplies {
                    at_step: steps,
                    state: plan.names[cur.state].to_string(),
                    word: bits_to_string(cur.word.make_contiguous()),
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
    if reached_initial {
        max_delay = max_delay.max(after_last);
    }
    Ok(RunReport {
        length: len,
        outputs: Code { width: len, words },
        output_count,
        steps,
        max_delay,
        before_first,
        delay_histogram,
        after_last,
        halted: reached_initial,
        budget_exhausted,
    })
}

/// Tries each rule that targets the current state, reconstructing and
/// forward-verifying a predecessor. Returns whether one was found.
fn step_back(plan: &Plan, by_to: &[Vec<usize>], cur: &mut Cursor) -> Result<bool, RunError> {
    for &ri in &by_to[cur.state] {
        let candidate = match &plan.spec.rules {
            Rules::Tape(rules) => invert_tape(&rules[ri], plan.rule_ends[ri].0, cur),
            Rules::Deque(rules) => invert_deque(&rules[ri], plan.rule_ends[ri].0, cur),
            Rules::Queue(rules) => invert_queue(&rules[ri], plan.rule_ends[ri].0, cur),
            Rules::Stack(rules) => invert_stack(&rules[ri], plan.rule_ends[ri].0, cur),
        };
        if let Some(pre) = candidate {
            // A real predecessor must step forward (with first-match
            // priority) to exactly the current configuration.
            let mut check = pre.clone();
            if plan.try_step(&mut check, 0).ok().flatten().is_some() && check == *cur {
                *cur = pre;
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn invert_tape(r: &TapeRule, from: usize, cur: &Cursor) -> Option<Cursor> {
    let len = cur.word.len() as isize;
    let p = cur.head as isize - r.movement.delta();
    if p < 0 || p > len + 1 {
        return None;
    }
    let ws = p - r.pattern.head_index as isize;
    if ws < 0 || ws + r.pattern.cells.len() as isize > len + 2 {
        return None;
    }
    let mut word = cur.word.clone();
    for (i, (cell, repl)) in r.pattern.cells.iter().zip(&r.replacement).enumerate() {
        let pos = ws + i as isize;
        if pos >= 1 && pos <= len {
            let slot = &mut word[pos as usize - 1];
            match (cell, repl) {
                (PatCell::Bit(b), _) => *slot = *b,
                (PatCell::Any, ReplToken::Keep) => {}
                (PatCell::Any, ReplToken::Flip) => *slot ^= 1,
                (PatCell::Any, ReplToken::Write(_)) => return None, // information lost
                (PatCell::LeftMark | PatCell::RightMark, _) => return None, // marker can't sit on a bit cell
            }
        }
    }
    Some(Cursor { state: from, word, head: p as usize })
}

fn invert_deque(r: &DequeRule, from: usize, cur: &Cursor) -> Option<Cursor> {
    let n = cur.word.len();
    let b = r.right_pattern.len();
    let (c, d) = (r.left_replacement.len(), r.right_replacement.len());
    if n < c + d {
        return None;
    }
    // Value of the post-word cell written by a replacement token.
    let left_post = |j: usize| cur.word[j];
    let right_post = |j: usize| cur.word[n - d + j];

    // Reconstruct a matched window cell: literal cells are known, and a
    // wildcard must have been copied (possibly flipped) somewhere.
    let recover = |outer_k: usize, cell: &EndCell, left_side: bool| -> Option<u8> {
        if let EndCell::Bit(bit) = cell {
            return Some(*bit);
        }
        let find = |toks: &[DequeToken], post: &dyn Fn(usize) -> u8| -> Option<u8> {
            for (j, t) in toks.iter().enumerate() {
                let v = match (left_side, t) {
                    (true, DequeToken::CopyLeft(k)) if *k == outer_k => post(j),
                    (true, DequeToken::FlipLeft(k)) if *k == outer_k => post(j) ^ 1,
                    (false, DequeToken::CopyRight(k)) if *k == outer_k => post(j),
                    (false, DequeToken::FlipRight(k)) if *k == outer_k => post(j) ^ 1,
                    _ => continue,
                };
                return Some(v);
            }
            None
        };
        find(&r.left_replacement, &left_post).or_else(|| find(&r.right_replacement, &right_post))
    };

    let mut word: std::collections::VecDeque<u8> = std::collections::VecDeque::with_capacity(n);
    for (i, cell) in r.left_pattern.iter().enumerate() {
        word.push_back(recover(i + 1, cell, true)?);
    }
    for i in c..n - d {
        word.push_back(cur.word[i]);
    }
    for (i, cell) in r.right_pattern.iter().enumerate() {
        // outer reference for right cells counts from the rightmost
        word.push_back(recover(b - i, cell, false)?);
    }
    Some(Cursor { state: from, word, head: cur.head })
}

fn invert_queue(r: &QueueRule, from: usize, cur: &Cursor) -> Option<Cursor> {
    let n = cur.word.len();
    let m = r.push_left.len();
    let rho = r.right_pattern.len();
    if n < m {
        return None;
    }
    let mut word: std::collections::VecDeque<u8> = cur.word.iter().skip(m).copied().collect();
    for cell in &r.right_pattern[rho - m..] {
        match cell {
            EndCell::Bit(b) => word.push_back(*b),
            EndCell::Any => return None, // popped cell of unknown value
        }
    }
    Some(Cursor { state: from, word, head: cur.head })
}

fn invert_stack(r: &StackRule, from: usize, cur: &Cursor) -> Option<Cursor> {
    let mut word = cur.word.clone();
    match r.action {
        StackAction::Push(b) => {
            if word.back() != Some(&b) {
                return None;
            }
            word.pop_back();
        }
        StackAction::Pop => match r.top {
            StackTop::Bit(b) => word.push_back(b),
            StackTop::Empty => {
                if !word.is_empty() {
                    return None;
                }
            }
        },
    }
    Some(Cursor { state: from, word, head: cur.head })
}

/// Conservative static injectivity check. Sound for rejection: a machine
/// reported injective really is; a flagged machine might still be
/// injective on its reachable configurations, but reverse execution
/// refuses it.
pub(crate) fn analyze_injectivity(spec: &MachineSpec) -> Analysis {
    let mut analysis = Analysis::default();
    let n = spec.rules.len();
    for i in 0..n {
        if rule_is_lossy(spec, i) {
            analysis.lossy.push(i);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (_, ti) = spec.rules.endpoints(i);
            let (_, tj) = spec.rules.endpoints(j);
            if ti != tj || rules_identical(spec, i, j) {
                // different successors never collide; identical duplicate
                // rules reconstruct the same predecessor, which is
                // reported as a conflict by the lint, not as ambiguity
                continue;
            }
            if posts_may_coincide(spec, i, j) {
                analysis.ambiguous.push((i, j));
            }
        }
    }
    analysis
}

fn rule_is_lossy(spec: &MachineSpec, i: usize) -> bool {
    match &spec.rules {
        Rules::Tape(rules) => {
            let r = &rules[i];
            r.pattern
                .cells
                .iter()
                .zip(&r.replacement)
                .any(|(c, t)| matches!(c, PatCell::Any) && matches!(t, ReplToken::Write(_)))
        }
        Rules::Deque(rules) => {
            let r = &rules[i];
            let referenced = |left_side: bool, k: usize| {
                r.left_replacement.iter().chain(&r.right_replacement).any(|t| match (left_side, t) {
                    (true, DequeToken::CopyLeft(kk) | DequeToken::FlipLeft(kk)) => *kk == k,
                    (false, DequeToken::CopyRight(kk) | DequeToken::FlipRight(kk)) => *kk == k,
                    _ => false,
                })
            };
            let left_lost = r
                .left_pattern
                .iter()
                .enumerate()
                .any(|(i, c)| matches!(c, EndCell::Any) && !referenced(true, i + 1));
            let right_lost = r.right_pattern.iter().enumerate().any(|(i, c)| {
                matches!(c, EndCell::Any) && !referenced(false, r.right_pattern.len() - i)
            });
            left_lost || right_lost
        }
        Rules::Queue(rules) => {
            let r = &rules[i];
            let rho = r.right_pattern.len();
            r.right_pattern[rho - r.push_left.len()..]
                .iter()
                .any(|c| matches!(c, EndCell::Any))
        }
        Rules::Stack(_) => false,
    }
}

fn rules_identical(spec: &MachineSpec, i: usize, j: usize) -> bool {
    match &spec.rules {
        Rules::Tape(r) => r[i] == r[j],
        Rules::Deque(r) => r[i] == r[j],
        Rules::Queue(r) => r[i] == r[j],
        Rules::Stack(r) => r[i] == r[j],
    }
}

/// Could rules `i` and `j` (already known to share a target state)
/// rewrite two configurations into the same one?
fn posts_may_coincide(spec: &MachineSpec, i: usize, j: usize) -> bool {
    match &spec.rules {
        Rules::Tape(rules) => tape_posts_compatible(&rules[i], &rules[j], spec.min_length),
        Rules::Deque(rules) => deque_posts_compatible(&rules[i], &rules[j]),
        Rules::Queue(rules) => queue_posts_compatible(&rules[i], &rules[j]),
        Rules::Stack(rules) => stack_posts_compatible(&rules[i], &rules[j]),
    }
}

/// What a tape rule guarantees about the window *after* it fires,
/// positioned relative to the new head.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
enum TPost {
    Bit(u8),
    Free, // some bit, value unknown
    LMark,
    RMark,
}

fn tape_post(r: &TapeRule) -> (isize, Vec<TPost>) {
    let offset = -(r.pattern.head_index as isize) - r.movement.delta();
    let cells = r
        .pattern
        .cells
        .iter()
        .zip(&r.replacement)
        .map(|(c, t)| match (c, t) {
            (PatCell::LeftMark, _) => TPost::LMark,
            (PatCell::RightMark, _) => TPost::RMark,
            (_, ReplToken::Write(b)) => TPost::Bit(*b),
            (PatCell::Bit(b), ReplToken::Keep) => TPost::Bit(*b),
            (PatCell::Bit(b), ReplToken::Flip) => TPost::Bit(*b ^ 1),
            (PatCell::Any, _) => TPost::Free,
        })
        .collect();
    (offset, cells)
}

fn tape_posts_compatible(a: &TapeRule, b: &TapeRule, min_length: usize) -> bool {
    let (oa, ca) = tape_post(a);
    let (ob, cb) = tape_post(b);

    // Cell-by-cell comparison wherever the two windows overlap.
    for (ia, pa) in ca.iter().enumerate() {
        let rel = oa + ia as isize;
        let ib = rel - ob;
        if ib < 0 || ib as usize >= cb.len() {
            continue;
        }
        let pb = &cb[ib as usize];
        let ok = match (pa, pb) {
            (TPost::Bit(x), TPost::Bit(y)) => x == y,
            (TPost::Bit(_) | TPost::Free, TPost::Free) => true,
            (TPost::Free, TPost::Bit(_)) => true,
            (TPost::LMark, TPost::LMark) => true,
            (TPost::RMark, TPost::RMark) => true,
            _ => false, // marker vs bit cell
        };
        if !ok {
            return false;
        }
    }

    // Marker positions pin the head (and together, the word length).
    let mark_rel = |o: isize, c: &[TPost], m: TPost| {
        c.iter().enumerate().find(|(_, p)| **p == m).map(|(i, _)| o + i as isize)
    };
    let la = mark_rel(oa, &ca, TPost::LMark);
    let lb = mark_rel(ob, &cb, TPost::LMark);
    let ra = mark_rel(oa, &ca, TPost::RMark);
    let rb = mark_rel(ob, &cb, TPost::RMark);
    if let (Some(x), Some(y)) = (la, lb) {
        if x != y {
            return false;
        }
    }
    if let (Some(x), Some(y)) = (ra, rb) {
        if x != y {
            return false;
        }
    }
    let l = la.or(lb);
    let r = ra.or(rb);
    if let (Some(x), Some(y)) = (l, r) {
        // both markers in view: the word between them would have length
        // y − x − 1, impossible below the machine's minimum
        if y - x - 1 < min_length as isize {
            return false;
        }
    }
    true
}

/// Deque post constraints: known prefix cells and suffix cells of the
/// successor word.
fn deque_post(r: &DequeRule) -> (Vec<Option<u8>>, Vec<Option<u8>>) {
    let cell_value = |t: &DequeToken| -> Option<u8> {
        match t {
            DequeToken::Write(b) => Some(*b),
            DequeToken::CopyLeft(k) => match r.left_pattern[*k - 1] {
                EndCell::Bit(b) => Some(b),
                EndCell::Any => None,
            },
            DequeToken::FlipLeft(k) => match r.left_pattern[*k - 1] {
                EndCell::Bit(b) => Some(b ^ 1),
                EndCell::Any => None,
            },
            DequeToken::CopyRight(k) => match r.right_pattern[r.right_pattern.len() - *k] {
                EndCell::Bit(b) => Some(b),
                EndCell::Any => None,
            },
            DequeToken::FlipRight(k) => match r.right_pattern[r.right_pattern.len() - *k] {
                EndCell::Bit(b) => Some(b ^ 1),
                EndCell::Any => None,
            },
        }
    };
    (
        r.left_replacement.iter().map(cell_value).collect(),
        r.right_replacement.iter().map(cell_value).collect(),
    )
}

fn prefix_compatible(a: &[Option<u8>], b: &[Option<u8>]) -> bool {
    a.iter().zip(b).all(|(x, y)| match (x, y) {
        (Some(p), Some(q)) => p == q,
        _ => true,
    })
}

fn suffix_compatible(a: &[Option<u8>], b: &[Option<u8>]) -> bool {
    a.iter().rev().zip(b.iter().rev()).all(|(x, y)| match (x, y) {
        (Some(p), Some(q)) => p == q,
        _ => true,
    })
}

fn deque_posts_compatible(a: &DequeRule, b: &DequeRule) -> bool {
    let (la, ra) = deque_post(a);
    let (lb, rb) = deque_post(b);
    prefix_compatible(&la, &lb) && suffix_compatible(&ra, &rb)
}

fn queue_posts_compatible(a: &QueueRule, b: &QueueRule) -> bool {
    let post = |r: &QueueRule| {
        let rho = r.right_pattern.len();
        let prefix: Vec<Option<u8>> = r.push_left.iter().map(|b| Some(*b)).collect();
        let suffix: Vec<Option<u8>> = r.right_pattern[..rho - r.push_left.len()]
            .iter()
            .map(|c| match c {
                EndCell::Bit(b) => Some(*b),
                EndCell::Any => None,
            })
            .collect();
        (prefix, suffix)
    };
    let (pa, sa) = post(a);
    let (pb, sb) = post(b);
    prefix_compatible(&pa, &pb) && suffix_compatible(&sa, &sb)
}

/// Stack post constraints: resulting length range and the last (and
/// next-to-last) cell where known.
struct StackPost {
    exact_len: Option<usize>, // Some(0) / Some(1) for pops of empties and pushes onto empty
    min_len: usize,
    last: Option<u8>,
    second: Option<u8>,
}

fn stack_post(r: &StackRule) -> StackPost {
    match (r.top, r.action) {
        (StackTop::Empty, StackAction::Push(b)) => {
            StackPost { exact_len: Some(1), min_len: 1, last: Some(b), second: None }
        }
        (StackTop::Bit(t), StackAction::Push(b)) => {
            StackPost { exact_len: None, min_len: 2, last: Some(b), second: Some(t) }
        }
        (StackTop::Empty, StackAction::Pop) => {
            StackPost { exact_len: Some(0), min_len: 0, last: None, second: None }
        }
        (StackTop::Bit(_), StackAction::Pop) => {
            StackPost { exact_len: None, min_len: 0, last: None, second: None }
        }
    }
}

fn stack_posts_compatible(a: &StackRule, b: &StackRule) -> bool {
    let (pa, pb) = (stack_post(a), stack_post(b));
    let len_ok = match (pa.exact_len, pb.exact_len) {
        (Some(x), Some(y)) => x == y,
        (Some(x), None) => x >= pb.min_len,
        (None, Some(y)) => y >= pa.min_len,
        (None, None) => true,
    };
    let cell_ok = |x: Option<u8>, y: Option<u8>| match (x, y) {
        (Some(p), Some(q)) => p == q,
        _ => true,
    };
    len_ok && cell_ok(pa.last, pb.last) && cell_ok(pa.second, pb.second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::{initial_config, run, step, StepResult};
    use crate::parse::parse_machine_table;

    /// Injective tape machine: left-to-right binary increment sweep.
    const SWEEP: &str = "\
kind: tape
radius: 2
min-length: 1
initial: go
halting: done
outputs: go done

rule go | [0]. -> go | 1= | R
rule go | [1]. -> go | 0= | R
rule go | [0]< -> done | 1= | S
rule go | [1]< -> done | 0= | S
";

    #[test]
    fn analysis_accepts_injective_and_rejects_lossy_tables() {
        let m = parse_machine_table(SWEEP).unwrap();
        assert!(analyze_injectivity(&m).is_injective());

        let lossy = "\
kind: tape
radius: 1
min-length: 1
initial: go
outputs: ALL

rule go | [.] -> go | 1 | R
";
        let m = parse_machine_table(lossy).unwrap();
        let a = analyze_injectivity(&m);
        assert_eq!(a.lossy, vec![0]);
    }

    #[test]
    fn analysis_flags_colliding_rule_pairs() {
        // Both rules write a 1 under the head and move right into the
        // same state: predecessors 0 and 1 collide.
        let t = "\
kind: tape
radius: 1
min-length: 1
initial: go
outputs: ALL

rule go | [0] -> go | 1 | R
rule go | [1] -> go | 1 | R
";
        let m = parse_machine_table(t).unwrap();
        let a = analyze_injectivity(&m);
        assert_eq!(a.ambiguous, vec![(0, 1)]);
    }

    #[test]
    fn reverse_retraces_a_forward_run() {
        let m = parse_machine_table(SWEEP).unwrap();
        let forward = run(&m, 4, 1000).unwrap();
        assert!(forward.halted);
        // Find the halting configuration by stepping to the end.
        let mut c = initial_config(&m, 4).unwrap();
        loop {
            match step(&m, &c).unwrap() {
                StepResult::Next { config, .. } => c = config,
                StepResult::Halted => break,
                StepResult::NoRuleApplies => panic!("dead end"),
            }
        }
        let backward = reverse_run(&m, &c, 1000).unwrap();
        assert!(backward.halted, "should reach the initial configuration");
        let mut expect = forward.outputs.words.clone();
        expect.reverse();
        assert_eq!(backward.outputs.words, expect);
    }

    #[test]
    fn stepwise_reverser_undoes_single_steps() {
        let m = parse_machine_table(SWEEP).unwrap();
        let rev = Reverser::new(&m).unwrap();
        let c0 = initial_config(&m, 3).unwrap();
        let c1 = match step(&m, &c0).unwrap() {
            StepResult::Next { config, .. } => config,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(rev.step_back(&c1).unwrap(), Some(c0.clone()));
        // Nothing precedes the initial configuration.
        assert_eq!(rev.step_back(&c0).unwrap(), None);
    }

    #[test]
    fn reverse_refuses_noninjective_tables() {
        let lossy = "\
kind: tape
radius: 1
min-length: 1
initial: go
outputs: ALL

rule go | [.] -> go | 1 | R
";
        let m = parse_machine_table(lossy).unwrap();
        let from = Config { state: "go".into(), word: "11".into(), head: Some(2) };
        match reverse_run(&m, &from, 10) {
            Err(RunError::ReverseUnsupported { reason }) => {
                assert!(reason.contains("rule 1"), "{reason}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reverse_inverts_deque_copies() {
        // Injective deque machine: rotate one cell right to left, flipped.
        let t = "\
kind: deque
radius: 1
min-length: 2
initial: a
outputs: ALL

rule a | - .. . -> a | ~R1 .. -
";
        let m = parse_machine_table(t).unwrap();
        assert!(analyze_injectivity(&m).is_injective());
        let c0 = initial_config(&m, 3).unwrap();
        let mut c = c0.clone();
        let mut seen = vec![c.word.clone()];
        for _ in 0..4 {
            match step(&m, &c).unwrap() {
                StepResult::Next { config, .. } => {
                    c = config;
                    seen.push(c.word.clone());
                }
                other => panic!("unexpected {other:?}"),
            }
        }
        let back = reverse_run(&m, &c, 100).unwrap();
        assert!(back.halted);
        seen.reverse();
        assert_eq!(back.outputs.words, seen);
    }
}
