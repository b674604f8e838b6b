//! The bundled machines. Six of them enumerate every binary word of a
//! chosen length exactly once with constant delay:
//!
//! * `T0`, `T1`, `T2` — tape machines. `T0` keeps its head on the
//!   rightmost set bit and walks a binary tree; `T1` grows words from
//!   the right end and `T2` from the left end, producing mirror-image
//!   Gray codes (`code_b` and `code_a` in the reference constructions).
//! * `D0` — a deque machine that cycles forever; only its first `2^l`
//!   outputs are distinct.
//! * `D1` — a deque machine that fixes `D0`'s duplicates by performing
//!   the traversal twice, counting junction visits (1st..4th) to split
//!   the output between the two passes, then halting.
//! * `D2` — a deque machine that fixes the duplicates in a single pass
//!   with a lookahead, tracking node height modulo 4.
//!
//! Two deliberately defective machines, [`toy_stack`] and [`toy_queue`],
//! exist for exercising failure reporting: neither covers all words.
//!
//! Each machine is also bundled as a table file under `machines/`; a
//! test keeps those files byte-identical to the constructions here.

use std::sync::OnceLock;

use machine_core::{
    DequeRule, DequeToken, EndCell, MachineKind, MachineSpec, Move, Outputs, PatCell, QueueRule,
    ReplToken, Rules, StackAction, StackRule, StackTop, StartHead, StateId, TapePattern, TapeRule,
};

/// Names accepted by [`builtin`], in presentation order.
pub fn builtin_names() -> &'static [&'static str] {
    &["T0", "T1", "T2", "D0", "D1", "D2"]
}

/// Looks up a bundled enumerator by name (case-insensitive).
pub fn builtin(name: &str) -> Result<&'static MachineSpec, String> {
    static T0: OnceLock<MachineSpec> = OnceLock::new();
    static T1: OnceLock<MachineSpec> = OnceLock::new();
    static T2: OnceLock<MachineSpec> = OnceLock::new();
    static D0: OnceLock<MachineSpec> = OnceLock::new();
    static D1: OnceLock<MachineSpec> = OnceLock::new();
    static D2: OnceLock<MachineSpec> = OnceLock::new();
    match name.to_ascii_uppercase().as_str() {
        "T0" => Ok(T0.get_or_init(|| checked(t0()))),
        "T1" => Ok(T1.get_or_init(|| checked(t1()))),
        "T2" => Ok(T2.get_or_init(|| checked(t2()))),
        "D0" => Ok(D0.get_or_init(|| checked(d0()))),
        "D1" => Ok(D1.get_or_init(|| checked(d1()))),
        "D2" => Ok(D2.get_or_init(|| checked(d2()))),
        _ => Err(format!(
            "unknown builtin machine {name}; available: {}",
            builtin_names().join(", ")
        )),
    }
}

/// A stack machine that gets stuck shuffling short words: started on
/// `0^l` for `l >= 2` it visits no length-`l` word beyond `0^l` and
/// `0^(l-1) 1`, and never halts.
pub fn toy_stack() -> &'static MachineSpec {
    static SPEC: OnceLock<MachineSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        checked(MachineSpec {
            kind: MachineKind::Stack,
            radius: 1,
            min_length: 1,
            start_head: StartHead::Left,
            initial: StateId::from("scan"),
            halting: None,
            outputs: Outputs::All,
            rules: Rules::Stack(vec![
                stack("scan", '1', "scan", "pop"),
                stack("scan", '0', "half", "pop"),
                stack("scan", '@', "refill", "push0"),
                stack("half", '0', "scan", "push1"),
                stack("half", '1', "scan", "push1"),
                stack("half", '@', "scan", "push1"),
                stack("refill", '0', "scan", "push0"),
            ]),
        })
    })
}

/// A queue machine that just rotates the word with flips: at length `l`
/// it cycles through `2*l` words and misses all others.
pub fn toy_queue() -> &'static MachineSpec {
    static SPEC: OnceLock<MachineSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        checked(MachineSpec {
            kind: MachineKind::Queue,
            radius: 1,
            min_length: 1,
            start_head: StartHead::Left,
            initial: StateId::from("flip"),
            halting: None,
            outputs: Outputs::All,
            rules: Rules::Queue(vec![queue("flip", "0", "flip", "1"), queue("flip", "1", "flip", "0")]),
        })
    })
}

fn checked(spec: MachineSpec) -> MachineSpec {
    spec.check().expect("bundled table is well-formed");
    spec
}

// ---- rule construction helpers -------------------------------------

/// Parses a window written like the table syntax, e.g. `>1[1]0`, where
/// the bracketed cell is under the head.
fn window(s: &str) -> TapePattern {
    let mut cells = Vec::new();
    let mut head_index = None;
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c == '[' {
            let inner = chars.next().expect("cell inside brackets");
            assert_eq!(chars.next(), Some(']'), "unclosed head cell in {s}");
            head_index = Some(cells.len());
            cells.push(pat_cell(inner));
        } else {
            cells.push(pat_cell(c));
        }
    }
    TapePattern { cells, head_index: head_index.expect("head cell") }
}

fn pat_cell(c: char) -> PatCell {
    match c {
        '0' => PatCell::Bit(0),
        '1' => PatCell::Bit(1),
        '.' => PatCell::Any,
        '>' => PatCell::LeftMark,
        '<' => PatCell::RightMark,
        other => panic!("bad pattern cell {other}"),
    }
}

fn tape(from: &str, pat: &str, to: &str, repl: &str, movement: char) -> TapeRule {
    TapeRule {
        from: StateId::from(from),
        pattern: window(pat),
        to: StateId::from(to),
        replacement: repl
            .chars()
            .map(|c| match c {
                '0' => ReplToken::Write(0),
                '1' => ReplToken::Write(1),
                '=' => ReplToken::Keep,
                '~' => ReplToken::Flip,
                other => panic!("bad replacement token {other}"),
            })
            .collect(),
        movement: match movement {
            'L' => Move::Left,
            'S' => Move::Stay,
            'R' => Move::Right,
            other => panic!("bad movement {other}"),
        },
    }
}

fn end_cells(s: &str) -> Vec<EndCell> {
    s.chars()
        .map(|c| match c {
            '0' => EndCell::Bit(0),
            '1' => EndCell::Bit(1),
            '.' => EndCell::Any,
            other => panic!("bad end cell {other}"),
        })
        .collect()
}

/// All bundled deque rules write literal bits only.
fn writes(s: &str) -> Vec<DequeToken> {
    s.chars()
        .map(|c| match c {
            '0' => DequeToken::Write(0),
            '1' => DequeToken::Write(1),
            other => panic!("bad write token {other}"),
        })
        .collect()
}

fn deque(from: &str, lpat: &str, rpat: &str, to: &str, lrepl: &str, rrepl: &str) -> DequeRule {
    DequeRule {
        from: StateId::from(from),
        left_pattern: end_cells(lpat),
        right_pattern: end_cells(rpat),
        to: StateId::from(to),
        left_replacement: writes(lrepl),
        right_replacement: writes(rrepl),
    }
}

fn queue(from: &str, rpat: &str, to: &str, push: &str) -> QueueRule {
    QueueRule {
        from: StateId::from(from),
        right_pattern: end_cells(rpat),
        to: StateId::from(to),
        push_left: push
            .chars()
            .map(|c| match c {
                '0' => 0,
                '1' => 1,
                other => panic!("bad push bit {other}"),
            })
            .collect(),
    }
}

fn stack(from: &str, top: char, to: &str, action: &str) -> StackRule {
    StackRule {
        from: StateId::from(from),
        top: match top {
            '0' => StackTop::Bit(0),
            '1' => StackTop::Bit(1),
            '@' => StackTop::Empty,
            other => panic!("bad stack top {other}"),
        },
        to: StateId::from(to),
        action: match action {
            "pop" => StackAction::Pop,
            "push0" => StackAction::Push(0),
            "push1" => StackAction::Push(1),
            other => panic!("bad stack action {other}"),
        },
    }
}

fn states(names: &[String]) -> Vec<StateId> {
    names.iter().map(|n| StateId::from(n.as_str())).collect()
}

// ---- the machines ----------------------------------------------------

const PARITY: [&str; 2] = ["even", "odd"];

/// Parity as written on the tape: even is 0, odd is 1.
fn parity_bit(p: usize) -> char {
    if p % 2 == 0 {
        '0'
    } else {
        '1'
    }
}

/// Tape machine keeping its head on the rightmost set bit. Words are
/// nodes of a binary tree (`w 1 0^k` at depth `|w|`); descending sets
/// bits left to right, ascending clears them, and a word is emitted on
/// the way down at even depth and on the way up at odd depth.
fn t0() -> MachineSpec {
    let down = |p: usize| format!("down:{}", PARITY[p % 2]);
    let up = |p: usize| format!("up:{}", PARITY[p % 2]);
    let mut rules = Vec::new();
    for y in ["0", "<"] {
        rules.push(tape("qi", &format!(">[0]{y}"), &down(0), "=1=", 'S'));
    }
    // descend to the left child: move the head 1 one cell right
    for p in 0..2 {
        for x in [".", ">"] {
            rules.push(tape(&down(p), &format!("{x}[1]0"), &down(p + 1), "=01", 'R'));
        }
    }
    // leaf: turn around
    for p in 0..2 {
        for x in [".", ">"] {
            rules.push(tape(&down(p), &format!("{x}[1]<"), &up(p), "===", 'S'));
        }
    }
    // left child on the way up: hop to the right sibling, descend again
    for p in 0..2 {
        for y in ["0", "<"] {
            rules.push(tape(&up(p), &format!("0[1]{y}"), &down(p), "1==", 'S'));
        }
    }
    // right child on the way up: clear it, keep ascending
    for p in 0..2 {
        for y in ["0", "<"] {
            rules.push(tape(&up(p), &format!("1[1]{y}"), &up(p + 1), "=0=", 'L'));
        }
    }
    // back at the root with even parity: done
    for y in ["0", "<"] {
        rules.push(tape(&up(0), &format!(">[1]{y}"), "qf", "===", 'S'));
    }
    MachineSpec {
        kind: MachineKind::Tape,
        radius: 3,
        min_length: 2,
        start_head: StartHead::Left,
        initial: StateId::from("qi"),
        halting: Some(StateId::from("qf")),
        outputs: Outputs::States(states(&[
            "qi".into(),
            down(0),
            up(1),
        ])),
        rules: Rules::Tape(rules),
    }
}

/// Tape machine enumerating the prepend-style Gray code (`code_b`).
/// Every state is an output state, so each rewrite produces a word.
fn t1() -> MachineSpec {
    let mut rules = vec![tape("qi", ">[0]0", "down", "==1", 'R')];
    for z in [".", ">"] {
        rules.push(tape("down", &format!("{z}.[1]0"), "down", "===1", 'R'));
    }
    for z in [".", ">"] {
        rules.push(tape("down", &format!("{z}.[1]<"), "up", "=~==", 'S'));
    }
    for y in ["0", "<"] {
        rules.push(tape("up", &format!(".0[1]{y}"), "down", "~===", 'S'));
    }
    for y in ["0", "<"] {
        rules.push(tape("up", &format!(".1[1]{y}"), "up", "==0=", 'L'));
    }
    rules.push(tape("up", ">1[1]", "qf", "==0", 'L'));
    MachineSpec {
        kind: MachineKind::Tape,
        radius: 4,
        min_length: 2,
        start_head: StartHead::Left,
        initial: StateId::from("qi"),
        halting: Some(StateId::from("qf")),
        outputs: Outputs::All,
        rules: Rules::Tape(rules),
    }
}

/// Tape machine enumerating the append-style Gray code (`code_a`),
/// the mirror image of `T1`: it starts with its head on the right end.
fn t2() -> MachineSpec {
    let mut rules = vec![tape("qi", "0[0]<", "down", "=1=", 'S')];
    rules.push(tape("down", "0[1]<", "down", "1==", 'L'));
    for z in [".", "<"] {
        rules.push(tape("down", &format!("0[1].{z}"), "down", "1===", 'L'));
    }
    for z in [".", "<"] {
        rules.push(tape("down", &format!(">[1].{z}"), "up", "==~=", 'S'));
    }
    for y in ["0", ">"] {
        rules.push(tape("up", &format!("{y}[1]0."), "down", "===~", 'S'));
    }
    for y in ["0", ">"] {
        rules.push(tape("up", &format!("{y}[1]1."), "up", "=0==", 'R'));
    }
    rules.push(tape("up", "[1]0<", "qf", "0==", 'R'));
    MachineSpec {
        kind: MachineKind::Tape,
        radius: 4,
        min_length: 2,
        start_head: StartHead::Right,
        initial: StateId::from("qi"),
        halting: Some(StateId::from("qf")),
        outputs: Outputs::States(states(&["qi".into(), "down".into(), "up".into()])),
        rules: Rules::Tape(rules),
    }
}

/// Deque machine walking the same tree as `T0`, but by rotating the
/// word through the deque instead of moving a head. It never halts:
/// after the first `2^l` outputs (all distinct) the traversal repeats
/// with parities swapped.
fn d0() -> MachineSpec {
    let down = |p: usize| format!("down:{}", PARITY[p % 2]);
    let up = |p: usize| format!("up:{}", PARITY[p % 2]);
    let mut rules = vec![deque("qi", "", "0", &down(0), "", "1")];
    for p in 0..2 {
        rules.push(deque(&down(p), "0", "", &down(p + 1), "", "0"));
    }
    for p in 0..2 {
        rules.push(deque(&down(p), "1", "", &up(p), "1", ""));
    }
    for p in 0..2 {
        rules.push(deque(&up(p), "", "0", &down(p), "", "1"));
    }
    for p in 0..2 {
        rules.push(deque(&up(p), "", "1", &up(p + 1), "0", ""));
    }
    MachineSpec {
        kind: MachineKind::Deque,
        radius: 1,
        min_length: 3,
        start_head: StartHead::Left,
        initial: StateId::from("qi"),
        halting: None,
        outputs: Outputs::States(states(&["qi".into(), down(0), up(1)])),
        rules: Rules::Deque(rules),
    }
}

const ORDINAL: [&str; 4] = ["1st", "2nd", "3rd", "4th"];

/// Deque machine performing `D0`'s traversal twice and halting. The
/// third state component counts visits to the two junction words
/// (`10...` and `11...` at the left end), which splits the two passes
/// so that together they emit every word exactly once.
fn d1() -> MachineSpec {
    let down = |p: usize, s: usize| format!("down:{}:{}", PARITY[p % 2], ORDINAL[s]);
    let up = |p: usize, s: usize| format!("up:{}:{}", PARITY[p % 2], ORDINAL[s]);
    let mut rules = vec![deque("qi", "0", "0", &up(0, 0), "1", "0")];
    // descend: rotate a 0 to the right end, recording the new parity
    for p in 0..2 {
        for s in 0..4 {
            rules.push(deque(
                &down(p, s),
                "0",
                &parity_bit(p).to_string(),
                &down(p + 1, s),
                "",
                &format!("0{}", parity_bit(p + 1)),
            ));
        }
    }
    // junction words: advance or hold the visit counter, turn upward
    for p in 0..2 {
        for (s, on10, on11) in [(0, Some(0), Some(1)), (1, Some(2), Some(1)), (2, Some(2), Some(3)), (3, None, Some(3))]
        {
            let pb = parity_bit(p).to_string();
            let to10 = match on10 {
                Some(s2) => up(p, s2),
                None => "qf".to_string(),
            };
            rules.push(deque(&down(p, s), "10", &pb, &to10, "10", &pb));
            let to11 = up(p, on11.unwrap());
            rules.push(deque(&down(p, s), "11", &pb, &to11, "11", &pb));
        }
    }
    // ascend from a right child: clear it into the left end, parity up
    for p in 0..2 {
        for s in 0..4 {
            rules.push(deque(
                &up(p, s),
                "",
                &format!("1{}", parity_bit(p)),
                &up(p + 1, s),
                "0",
                &parity_bit(p + 1).to_string(),
            ));
        }
    }
    // ascend from a left child: step to the right sibling, descend
    for p in 0..2 {
        for s in 0..4 {
            rules.push(deque(
                &up(p, s),
                "",
                &format!("0{}", parity_bit(p)),
                &down(p, s),
                "",
                &format!("1{}", parity_bit(p)),
            ));
        }
    }
    MachineSpec {
        kind: MachineKind::Deque,
        radius: 2,
        min_length: 3,
        start_head: StartHead::Left,
        initial: StateId::from("qi"),
        halting: Some(StateId::from("qf")),
        outputs: Outputs::States(states(
            &std::iter::once("qi".to_string())
                .chain((0..4).map(|s| down(0, s)))
                .chain((0..4).map(|s| up(1, s)))
                .collect::<Vec<_>>(),
        )),
        rules: Rules::Deque(rules),
    }
}

/// Deque machine covering all words in a single tree pass. Descents
/// into a right child take a lookahead detour, so each node is seen
/// four times; the second state component tracks height modulo 4 and a
/// word is emitted when the state's height label matches. The `last`
/// counter value marks the final descent, reached through the three
/// `special` states that also emit the all-zero word.
fn d2() -> MachineSpec {
    const STAGE2: [&str; 2] = ["1st", "2nd"];
    const STAGE3: [&str; 3] = ["1st", "2nd", "last"];
    let dn0 = |h: usize, s: &str| format!("down0:{}:{}", h % 4, s);
    let up1 = |h: usize, s: &str| format!("up1:{}:{}", h % 4, s);
    let dn2 = |h: usize, s: &str| format!("down2:{}:{}", h % 4, s);
    let up3 = |h: usize, s: &str| format!("up3:{}:{}", h % 4, s);
    let special = |h: usize| format!("special:{h}");

    let mut rules = vec![deque("qi", "0", "", &up3(0, "1st"), "1", "")];
    // first junction visits: bump the counter without rewriting
    for h in 0..4 {
        rules.push(deque(&dn0(h, "1st"), "11", "", &up1(h, "2nd"), "11", ""));
    }
    for h in 0..4 {
        rules.push(deque(&dn0(h, "2nd"), "10", "", &up1(h, "last"), "10", ""));
    }
    // the final descent ends at the halting state
    for h in 0..4 {
        rules.push(deque(&dn2(h, "last"), "1", "", "qf", "0", ""));
    }
    // revisiting the root during the lookahead: emit the all-zero word
    // (in the special state) and repair the height offset
    for h in 0..3 {
        rules.push(deque(&up1(h, "last"), "", "1", &special(h), "", "0"));
    }
    for h in 0..3 {
        rules.push(deque(&special(h), "", "0", &dn2(h + 3, "last"), "", "1"));
    }
    rules.push(deque(&up1(3, "last"), "", "1", &dn2(2, "last"), "", "1"));
    // generic tree moves, height-tracked
    for h in 0..4 {
        for s in STAGE2 {
            rules.push(deque(&dn0(h, s), "0", "", &dn0(h + 1, s), "", "0"));
        }
    }
    for h in 0..4 {
        for s in STAGE3 {
            rules.push(deque(&dn2(h, s), "0", "", &dn2(h + 1, s), "", "0"));
        }
    }
    for h in 0..4 {
        for s in STAGE2 {
            rules.push(deque(&dn0(h, s), "1", "", &up1(h, s), "1", ""));
        }
    }
    for h in 0..4 {
        for s in STAGE2 {
            rules.push(deque(&dn2(h, s), "1", "", &up3(h, s), "1", ""));
        }
    }
    for h in 0..4 {
        for s in STAGE3 {
            rules.push(deque(&up1(h, s), "", "0", &up1(h + 3, s), "0", ""));
        }
    }
    for h in 0..4 {
        for s in STAGE2 {
            rules.push(deque(&up1(h, s), "", "1", &dn2(h, s), "", "1"));
        }
    }
    for h in 0..4 {
        for s in STAGE2 {
            rules.push(deque(&up3(h, s), "", "1", &up3(h + 3, s), "0", ""));
        }
    }
    for h in 0..4 {
        for s in STAGE2 {
            rules.push(deque(&up3(h, s), "", "0", &dn0(h, s), "", "1"));
        }
    }

    let mut outputs: Vec<String> = Vec::new();
    for s in STAGE2 {
        outputs.push(dn0(0, s));
    }
    for s in STAGE3 {
        outputs.push(up1(1, s));
    }
    for s in STAGE3 {
        outputs.push(dn2(2, s));
    }
    for s in STAGE2 {
        outputs.push(up3(3, s));
    }
    for h in 0..3 {
        outputs.push(special(h));
    }
    MachineSpec {
        kind: MachineKind::Deque,
        radius: 2,
        min_length: 3,
        start_head: StartHead::Left,
        initial: StateId::from("qi"),
        halting: Some(StateId::from("qf")),
        outputs: Outputs::States(states(&outputs)),
        rules: Rules::Deque(rules),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use machine_core::{default_budget, run, serialize_machine_table, trace_visits};
    use reference_codes::{code_a, code_b};
    use std::collections::HashSet;

    fn words(name: &str, len: usize) -> Vec<String> {
        let report = run(builtin(name).unwrap(), len, default_budget(len)).unwrap();
        report.outputs.words
    }

    fn v(w: &[&str]) -> Vec<String> {
        w.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn every_builtin_passes_the_table_checks() {
        for name in builtin_names() {
            builtin(name).unwrap();
        }
        toy_stack();
        toy_queue();
        builtin("t1").unwrap();
        assert!(builtin("T9").is_err());
    }

    #[test]
    fn t0_small_goldens() {
        assert_eq!(words("T0", 2), v(&["00", "10", "01", "11"]));
        let report = run(builtin("T0").unwrap(), 4, 10_000).unwrap();
        assert!(report.halted);
        assert_eq!(report.output_count, 16);
        let distinct: HashSet<&String> = report.outputs.words.iter().collect();
        assert_eq!(distinct.len(), 16);
    }

    #[test]
    fn t1_matches_the_prepend_code() {
        assert_eq!(
            words("T1", 3),
            v(&["000", "010", "011", "001", "101", "111", "110", "100"])
        );
        for len in 2..=10 {
            assert_eq!(words("T1", len), code_b(len).words, "length {len}");
        }
    }

    #[test]
    fn t2_matches_the_append_code() {
        assert_eq!(words("T2", 2), v(&["00", "01", "11", "10"]));
        for len in 2..=10 {
            assert_eq!(words("T2", len), code_a(len).words, "length {len}");
        }
    }

    #[test]
    fn d0_first_pass_is_complete_then_it_repeats() {
        let report = run(builtin("D0").unwrap(), 3, 64).unwrap();
        assert!(!report.halted, "D0 never halts");
        assert_eq!(
            report.outputs.words[..8],
            v(&["000", "001", "100", "101", "010", "110", "111", "011"])
        );
        for len in 3..=8 {
            let budget = default_budget(len);
            let report = run(builtin("D0").unwrap(), len, budget).unwrap();
            let first: Vec<&String> = report.outputs.words.iter().take(1 << len).collect();
            let distinct: HashSet<&&String> = first.iter().collect();
            assert_eq!(distinct.len(), 1 << len, "length {len}");
        }
    }

    #[test]
    fn d1_golden_run() {
        let report = run(builtin("D1").unwrap(), 3, 10_000).unwrap();
        assert!(report.halted);
        assert_eq!(
            report.outputs.words,
            v(&["000", "110", "011", "010", "101", "111", "001", "100"])
        );
    }

    #[test]
    fn d2_golden_run() {
        let report = run(builtin("D2").unwrap(), 3, 10_000).unwrap();
        assert!(report.halted);
        assert_eq!(
            report.outputs.words,
            v(&["101", "010", "110", "111", "011", "001", "000", "100"])
        );
        assert_eq!(report.before_first, 2);
        assert_eq!(report.steps, 31);
    }

    #[test]
    fn halting_builtins_cover_all_words() {
        for name in ["T0", "T1", "T2", "D1", "D2"] {
            for len in 3..=8 {
                let report = run(builtin(name).unwrap(), len, default_budget(len)).unwrap();
                assert!(report.halted, "{name} at length {len}");
                let distinct: HashSet<&String> = report.outputs.words.iter().collect();
                assert_eq!(distinct.len(), 1 << len, "{name} at length {len}");
                assert_eq!(report.output_count, 1 << len, "{name} at length {len}");
            }
        }
    }

    #[test]
    fn toy_queue_cycles_through_rotations() {
        let visits = trace_visits(toy_queue(), 6, 1000, |_, _| true).unwrap();
        let distinct: HashSet<&str> = visits.iter().map(|(_, c)| c.word.as_str()).collect();
        assert_eq!(distinct.len(), 12, "rotation with flips has period 2*l");
    }

    #[test]
    fn toy_stack_abandons_long_words() {
        let visits = trace_visits(toy_stack(), 5, 100_000, |_, w| w.len() == 5).unwrap();
        let distinct: HashSet<&str> = visits.iter().map(|(_, c)| c.word.as_str()).collect();
        assert_eq!(distinct, HashSet::from(["00000", "00001"]));
    }

    /// The files under `machines/` are the canonical serializations.
    #[test]
    fn bundled_tables_are_canonical() {
        for (name, spec) in all_bundled() {
            let path = format!("{}/machines/{}.mt", env!("CARGO_MANIFEST_DIR"), name);
            let text = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("missing table file {path}: {e}"));
            assert_eq!(text, serialize_machine_table(spec), "{name} table file is stale");
            let parsed = machine_core::parse_machine_table(&text).unwrap();
            assert_eq!(&parsed, spec, "{name} does not round-trip");
        }
    }

    fn all_bundled() -> Vec<(&'static str, &'static MachineSpec)> {
        let mut out: Vec<(&'static str, &'static MachineSpec)> =
            builtin_names().iter().map(|n| (*n, builtin(n).unwrap())).collect();
        out.push(("toy-stack", toy_stack()));
        out.push(("toy-queue", toy_queue()));
        out
    }

    /// Rewrites the bundled table files. Run manually after editing a
    /// machine: `cargo test -p builtin-machines regenerate -- --ignored`
    #[test]
    #[ignore]
    fn regenerate_bundled_tables() {
        for (name, spec) in all_bundled() {
            let path = format!("{}/machines/{}.mt", env!("CARGO_MANIFEST_DIR"), name);
            std::fs::write(&path, serialize_machine_table(spec)).unwrap();
        }
    }
}
