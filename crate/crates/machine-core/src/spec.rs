//! Machine table data model, table invariants, and the canonical text form.
//!
//! A machine rewrites a binary word in place. Four kinds exist, differing
//! in where a rule may look and write:
//!
//! * **tape** — a read/write head walks over the word, which sits between
//!   an immovable left marker `>` (cell 0) and right marker `<` (cell
//!   ℓ+1). A rule matches a window of cells around the head, rewrites the
//!   window, and moves the head one cell or stays.
//! * **deque** — rules match short windows at *both* ends of the word and
//!   replace them (the total number of cells is preserved), so the word
//!   behaves like a double-ended queue.
//! * **queue** — rules read a fixed-width window at the right end and
//!   push the same number of cells onto the left end.
//! * **stack** — rules read the rightmost cell (or see the empty word)
//!   and push or pop a single cell, so the word length may vary.
//!
//! Rules are tried in table order; the first matching rule fires
//! (determinism by priority). A run starts in the `initial` state on the
//! all-zero word and stops in the `halting` state, if one is declared.
//! Configurations whose state is in `outputs` contribute their word to
//! the machine's output sequence.

use std::fmt;

use crate::error::TableError;

/// Interned state name. Any token over `[A-Za-z0-9_:-]` except `ALL`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StateId(pub String);

impl StateId {
    pub fn new(name: impl Into<String>) -> Self {
        StateId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for StateId {
    fn from(s: &str) -> Self {
        StateId(s.to_string())
    }
}

/// The four rewriting disciplines.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum MachineKind {
    Tape,
    Deque,
    Queue,
    Stack,
}

impl fmt::Display for MachineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MachineKind::Tape => "tape",
            MachineKind::Deque => "deque",
            MachineKind::Queue => "queue",
            MachineKind::Stack => "stack",
        })
    }
}

/// Which end of the tape the head starts on (tape machines only).
/// `Left` puts the head on cell 1, `Right` on cell ℓ.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Default)]
pub enum StartHead {
    #[default]
    Left,
    Right,
}

/// Head movement after a tape rule fires.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Move {
    Left,
    Stay,
    Right,
}

impl Move {
    /// Signed cell delta.
    pub fn delta(self) -> isize {
        match self {
            Move::Left => -1,
            Move::Stay => 0,
            Move::Right => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Move::Left => 'L',
            Move::Stay => 'S',
            Move::Right => 'R',
        }
    }
}

/// One cell of a tape pattern. `Any` matches either bit but never a
/// marker; the markers match only themselves (cell 0 / cell ℓ+1).
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum PatCell {
    Bit(u8),
    Any,
    LeftMark,
    RightMark,
}

/// One cell of a tape replacement, aligned with the pattern cell at the
/// same index. Marker cells must use `Keep`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ReplToken {
    Write(u8),
    Keep,
    Flip,
}

/// A window of cells with one distinguished head position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TapePattern {
    pub cells: Vec<PatCell>,
    /// Index within `cells` that must sit under the head.
    pub head_index: usize,
}

/// `rule FROM | PATTERN -> TO | REPLACEMENT | MOVE`
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TapeRule {
    pub from: StateId,
    pub pattern: TapePattern,
    pub to: StateId,
    pub replacement: Vec<ReplToken>,
    pub movement: Move,
}

/// One cell of a deque or queue end window.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum EndCell {
    Bit(u8),
    Any,
}

/// One cell written by a deque rule. Copy/flip references are 1-based
/// from the *outer* end of the matched window on the named side, so
/// `CopyLeft(1)` is the leftmost matched cell and `CopyRight(1)` the
/// rightmost.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum DequeToken {
    Write(u8),
    CopyLeft(usize),
    CopyRight(usize),
    FlipLeft(usize),
    FlipRight(usize),
}

/// `rule FROM | LPAT .. RPAT -> TO | LREPL .. RREPL`
///
/// Matches `left_pattern` against the leftmost cells and `right_pattern`
/// against the rightmost cells, removes both windows, then writes
/// `left_replacement` as the new leftmost cells (in the order given) and
/// `right_replacement` as the new rightmost cells. Total cell count is
/// preserved.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DequeRule {
    pub from: StateId,
    pub left_pattern: Vec<EndCell>,
    pub right_pattern: Vec<EndCell>,
    pub to: StateId,
    pub left_replacement: Vec<DequeToken>,
    pub right_replacement: Vec<DequeToken>,
}

/// `rule FROM | RPAT -> TO | PUSH`
///
/// Reads a window of exactly `radius` cells at the right end, pops as
/// many cells from the right as `push_left` has, and pushes `push_left`
/// onto the left end.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QueueRule {
    pub from: StateId,
    pub right_pattern: Vec<EndCell>,
    pub to: StateId,
    pub push_left: Vec<u8>,
}

/// What a stack rule sees at the right end of the word.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum StackTop {
    Bit(u8),
    /// The word is empty (written `@`).
    Empty,
}

/// What a stack rule does. `Pop` on the empty word is a no-op.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum StackAction {
    Pop,
    Push(u8),
}

/// `rule FROM | TOP -> TO | pop|push0|push1`
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StackRule {
    pub from: StateId,
    pub top: StackTop,
    pub to: StateId,
    pub action: StackAction,
}

/// The rule list, tagged by machine kind.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Rules {
    Tape(Vec<TapeRule>),
    Deque(Vec<DequeRule>),
    Queue(Vec<QueueRule>),
    Stack(Vec<StackRule>),
}

impl Rules {
    pub fn len(&self) -> usize {
        match self {
            Rules::Tape(r) => r.len(),
            Rules::Deque(r) => r.len(),
            Rules::Queue(r) => r.len(),
            Rules::Stack(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(from, to)` of the rule at `i`.
    pub fn endpoints(&self, i: usize) -> (&StateId, &StateId) {
        match self {
            Rules::Tape(r) => (&r[i].from, &r[i].to),
            Rules::Deque(r) => (&r[i].from, &r[i].to),
            Rules::Queue(r) => (&r[i].from, &r[i].to),
            Rules::Stack(r) => (&r[i].from, &r[i].to),
        }
    }
}

/// The set of states whose configurations are emitted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Outputs {
    /// Every state emits (written `ALL`).
    All,
    /// Only the listed states emit.
    States(Vec<StateId>),
}

/// A complete machine table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MachineSpec {
    pub kind: MachineKind,
    /// Maximum window size a rule may use (exact window size for queues).
    pub radius: usize,
    /// Smallest word length the table supports.
    pub min_length: usize,
    /// Tape machines only: which end the head starts on.
    pub start_head: StartHead,
    pub initial: StateId,
    pub halting: Option<StateId>,
    pub outputs: Outputs,
    pub rules: Rules,
}

impl MachineSpec {
    /// All state names, in a stable order: header states first, then
    /// rule endpoints in table order, each listed once.
    pub fn states(&self) -> Vec<&str> {
        fn add<'a>(out: &mut Vec<&'a str>, s: &'a str) {
            if !out.contains(&s) {
                out.push(s);
            }
        }
        let mut out: Vec<&str> = Vec::new();
        add(&mut out, self.initial.as_str());
        if let Some(h) = &self.halting {
            add(&mut out, h.as_str());
        }
        if let Outputs::States(list) = &self.outputs {
            for s in list {
                add(&mut out, s.as_str());
            }
        }
        for i in 0..self.rules.len() {
            let (f, t) = self.rules.endpoints(i);
            add(&mut out, f.as_str());
            add(&mut out, t.as_str());
        }
        out
    }

    /// Whether configurations in state `s` are emitted.
    pub fn is_output(&self, s: &str) -> bool {
        match &self.outputs {
            Outputs::All => true,
            Outputs::States(list) => list.iter().any(|t| t.as_str() == s),
        }
    }

    /// Checks every table invariant, returning the first violation.
    pub fn check(&self) -> Result<(), TableError> {
        let err = |msg: String| Err(TableError::invalid(msg));
        if self.radius == 0 {
            return err("radius must be at least 1".into());
        }
        if self.min_length == 0 {
            return err("min-length must be at least 1".into());
        }
        if self.rules.is_empty() {
            return err("table declares no rules".into());
        }
        if self.start_head == StartHead::Right && self.kind != MachineKind::Tape {
            return err("start-head applies to tape machines only".into());
        }

        let check_state = |s: &StateId| -> Result<(), TableError> {
            if s.0.is_empty()
                || s.0 == "ALL"
                || !s.0.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b':' || b == b'-')
            {
                return Err(TableError::invalid(format!("bad state name {:?}", s.0)));
            }
            Ok(())
        };
        check_state(&self.initial)?;
        if let Some(h) = &self.halting {
            check_state(h)?;
        }
        if let Outputs::States(list) = &self.outputs {
            for (i, s) in list.iter().enumerate() {
                check_state(s)?;
                if list[..i].iter().any(|t| t == s) {
                    return err(format!("duplicate output state {s}"));
                }
            }
        }
        for i in 0..self.rules.len() {
            let (f, t) = self.rules.endpoints(i);
            check_state(f)?;
            check_state(t)?;
        }

        match (&self.kind, &self.rules) {
            (MachineKind::Tape, Rules::Tape(rules)) => {
                for (i, r) in rules.iter().enumerate() {
                    let n = r.pattern.cells.len();
                    let what = |msg: String| TableError::invalid(format!("rule {}: {}", i + 1, msg));
                    if n == 0 {
                        return Err(what("empty pattern".into()));
                    }
                    if n > self.radius {
                        return Err(what(format!("window of {n} cells exceeds radius {}", self.radius)));
                    }
                    if r.pattern.head_index >= n {
                        return Err(what("head index outside the window".into()));
                    }
                    if r.replacement.len() != n {
                        return Err(what("replacement length differs from pattern length".into()));
                    }
                    if n > self.min_length + 2 {
                        return Err(what(format!(
                            "window of {n} cells cannot fit a word of min-length {}",
                            self.min_length
                        )));
                    }
                    for (c, t) in r.pattern.cells.iter().zip(&r.replacement) {
                        let marker = matches!(c, PatCell::LeftMark | PatCell::RightMark);
                        if marker && *t != ReplToken::Keep {
                            return Err(what("marker cells must keep their content".into()));
                        }
                    }
                }
            }
            (MachineKind::Deque, Rules::Deque(rules)) => {
                for (i, r) in rules.iter().enumerate() {
                    let what = |msg: String| TableError::invalid(format!("rule {}: {}", i + 1, msg));
                    let (a, b) = (r.left_pattern.len(), r.right_pattern.len());
                    if a + b == 0 {
                        return Err(what("both end windows are empty".into()));
                    }
                    if a > self.radius || b > self.radius {
                        return Err(what(format!("end window exceeds radius {}", self.radius)));
                    }
                    if a + b > self.min_length {
                        return Err(what(format!(
                            "combined windows of {} cells exceed min-length {}",
                            a + b,
                            self.min_length
                        )));
                    }
                    if r.left_replacement.len() + r.right_replacement.len() != a + b {
                        return Err(what("replacements must restore the removed cell count".into()));
                    }
                    for t in r.left_replacement.iter().chain(&r.right_replacement) {
                        let ok = match t {
                            DequeToken::Write(_) => true,
                            DequeToken::CopyLeft(k) | DequeToken::FlipLeft(k) => (1..=a).contains(k),
                            DequeToken::CopyRight(k) | DequeToken::FlipRight(k) => (1..=b).contains(k),
                        };
                        if !ok {
                            return Err(what("copy reference outside the matched window".into()));
                        }
                        // the table syntax writes references as a single digit
                        let single_digit = match t {
                            DequeToken::Write(_) => true,
                            DequeToken::CopyLeft(k)
                            | DequeToken::FlipLeft(k)
                            | DequeToken::CopyRight(k)
                            | DequeToken::FlipRight(k) => *k <= 9,
                        };
                        if !single_digit {
                            return Err(what("copy references above cell 9 are not supported".into()));
                        }
                    }
                }
            }
            (MachineKind::Queue, Rules::Queue(rules)) => {
                if self.radius > self.min_length {
                    return err(format!(
                        "radius {} exceeds min-length {}",
                        self.radius, self.min_length
                    ));
                }
                for (i, r) in rules.iter().enumerate() {
                    let what = |msg: String| TableError::invalid(format!("rule {}: {}", i + 1, msg));
                    if r.right_pattern.len() != self.radius {
                        return Err(what(format!("queue window must be exactly {} cells", self.radius)));
                    }
                    if r.push_left.len() > self.radius {
                        return Err(what("push longer than the window".into()));
                    }
                    if r.push_left.iter().any(|b| *b > 1) {
                        return Err(what("push cells must be bits".into()));
                    }
                }
            }
            (MachineKind::Stack, Rules::Stack(_)) => {
                if self.radius != 1 {
                    return err("stack machines use radius 1".into());
                }
            }
            _ => return err("rule list does not match the declared kind".into()),
        }

        let appears = |s: &StateId| {
            (0..self.rules.len()).any(|i| {
                let (f, t) = self.rules.endpoints(i);
                f == s || t == s
            })
        };
        if !appears(&self.initial) {
            return err(format!("initial state {} appears in no rule", self.initial));
        }
        if let Some(h) = &self.halting {
            if !appears(h) {
                return err(format!("halting state {h} appears in no rule"));
            }
            for i in 0..self.rules.len() {
                if self.rules.endpoints(i).0 == h {
                    return err(format!("rule {} fires from the halting state {h}", i + 1));
                }
            }
        }
        if let Outputs::States(list) = &self.outputs {
            for s in list {
                if !appears(s) {
                    return err(format!("output state {s} appears in no rule"));
                }
            }
        }
        Ok(())
    }
}

/// Renders a table in canonical text form. `parse_machine_table` accepts
/// exactly this form (plus comments and extra whitespace), and parsing a
/// serialized table reproduces the same `MachineSpec`.
pub fn serialize_machine_table(m: &MachineSpec) -> String {
    let mut s = String::new();
    s.push_str(&format!("kind: {}\n", m.kind));
    s.push_str(&format!("radius: {}\n", m.radius));
    s.push_str(&format!("min-length: {}\n", m.min_length));
    if m.start_head == StartHead::Right {
        s.push_str("start-head: right\n");
    }
    s.push_str(&format!("initial: {}\n", m.initial));
    if let Some(h) = &m.halting {
        s.push_str(&format!("halting: {h}\n"));
    }
    match &m.outputs {
        Outputs::All => s.push_str("outputs: ALL\n"),
        Outputs::States(list) => {
            let names: Vec<&str> = list.iter().map(|t| t.as_str()).collect();
            s.push_str(&format!("outputs: {}\n", names.join(" ")));
        }
    }
    s.push('\n');
    match &m.rules {
        Rules::Tape(rules) => {
            for r in rules {
                s.push_str(&format!(
                    "rule {} | {} -> {} | {} | {}\n",
                    r.from,
                    tape_pattern_text(&r.pattern),
                    r.to,
                    tape_replacement_text(&r.replacement),
                    r.movement.letter()
                ));
            }
        }
        Rules::Deque(rules) => {
            for r in rules {
                s.push_str(&format!(
                    "rule {} | {} .. {} -> {} | {} .. {}\n",
                    r.from,
                    end_pattern_text(&r.left_pattern),
                    end_pattern_text(&r.right_pattern),
                    r.to,
                    deque_replacement_text(&r.left_replacement),
                    deque_replacement_text(&r.right_replacement)
                ));
            }
        }
        Rules::Queue(rules) => {
            for r in rules {
                let push = if r.push_left.is_empty() {
                    "-".to_string()
                } else {
                    r.push_left.iter().map(|b| char::from(b'0' + *b)).collect()
                };
                s.push_str(&format!(
                    "rule {} | {} -> {} | {}\n",
                    r.from,
                    end_pattern_text(&r.right_pattern),
                    r.to,
                    push
                ));
            }
        }
        Rules::Stack(rules) => {
            for r in rules {
                let top = match r.top {
                    StackTop::Bit(b) => char::from(b'0' + b).to_string(),
                    StackTop::Empty => "@".to_string(),
                };
                let action = match r.action {
                    StackAction::Pop => "pop".to_string(),
                    StackAction::Push(b) => format!("push{b}"),
                };
                s.push_str(&format!("rule {} | {} -> {} | {}\n", r.from, top, r.to, action));
            }
        }
    }
    s
}

fn tape_pattern_text(p: &TapePattern) -> String {
    let mut s = String::new();
    for (i, c) in p.cells.iter().enumerate() {
        let ch = match c {
            PatCell::Bit(b) => char::from(b'0' + *b),
            PatCell::Any => '.',
            PatCell::LeftMark => '>',
            PatCell::RightMark => '<',
        };
        if i == p.head_index {
            s.push('[');
            s.push(ch);
            s.push(']');
        } else {
            s.push(ch);
        }
    }
    s
}

fn tape_replacement_text(repl: &[ReplToken]) -> String {
    repl.iter()
        .map(|t| match t {
            ReplToken::Write(b) => char::from(b'0' + *b),
            ReplToken::Keep => '=',
            ReplToken::Flip => '~',
        })
        .collect()
}

fn end_pattern_text(cells: &[EndCell]) -> String {
    if cells.is_empty() {
        return "-".to_string();
    }
    cells
        .iter()
        .map(|c| match c {
            EndCell::Bit(b) => char::from(b'0' + *b),
            EndCell::Any => '.',
        })
        .collect()
}

fn deque_replacement_text(repl: &[DequeToken]) -> String {
    if repl.is_empty() {
        return "-".to_string();
    }
    let mut s = String::new();
    for t in repl {
        match t {
            DequeToken::Write(b) => s.push(char::from(b'0' + *b)),
            DequeToken::CopyLeft(k) => s.push_str(&format!("$L{k}")),
            DequeToken::CopyRight(k) => s.push_str(&format!("$R{k}")),
            DequeToken::FlipLeft(k) => s.push_str(&format!("~L{k}")),
            DequeToken::FlipRight(k) => s.push_str(&format!("~R{k}")),
        }
    }
    s
}
