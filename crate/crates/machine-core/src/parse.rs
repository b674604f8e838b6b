//! Text-format parser for machine tables.
//!
//! The format is line-oriented. `#` starts a comment; blank lines are
//! ignored. Header lines (`key: value`) come first, then one `rule` line
//! per rule. See `serialize_machine_table` for the canonical rendering
//! of each rule shape.

use crate::error::TableError;
use crate::spec::{
    DequeRule, DequeToken, EndCell, MachineKind, MachineSpec, Move, Outputs, PatCell, ReplToken,
    Rules, StackAction, StackRule, StackTop, StartHead, StateId, TapePattern, TapeRule, QueueRule,
};

/// Parses a machine table, reporting the first problem with its line.
pub fn parse_machine_table(text: &str) -> Result<MachineSpec, TableError> {
    let mut kind: Option<MachineKind> = None;
    let mut radius: Option<usize> = None;
    let mut min_length: Option<usize> = None;
    let mut start_head: Option<StartHead> = None;
    let mut initial: Option<StateId> = None;
    let mut halting: Option<StateId> = None;
    let mut outputs: Option<Outputs> = None;

    let mut tape_rules: Vec<TapeRule> = Vec::new();
    let mut deque_rules: Vec<DequeRule> = Vec::new();
    let mut queue_rules: Vec<QueueRule> = Vec::new();
    let mut stack_rules: Vec<StackRule> = Vec::new();
    let mut saw_rule = false;

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }

        if let Some(rest) = line.strip_prefix("rule ") {
            saw_rule = true;
            let k = kind.ok_or_else(|| TableError::syntax(ln, "kind must be declared before rules"))?;
            match k {
                MachineKind::Tape => tape_rules.push(parse_tape_rule(rest, ln)?),
                MachineKind::Deque => deque_rules.push(parse_deque_rule(rest, ln)?),
                MachineKind::Queue => queue_rules.push(parse_queue_rule(rest, ln)?),
                MachineKind::Stack => stack_rules.push(parse_stack_rule(rest, ln)?),
            }
            continue;
        }

        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| TableError::syntax(ln, "expected `key: value` or a rule line"))?;
        let (key, value) = (key.trim(), value.trim());
        if saw_rule {
            return Err(TableError::syntax(ln, "headers must precede all rules"));
        }
        if value.is_empty() {
            return Err(TableError::syntax(ln, format!("missing value for `{key}`")));
        }
        match key {
            "kind" => {
                set_once(&mut kind, ln, "kind", match value {
                    "tape" => MachineKind::Tape,
                    "deque" => MachineKind::Deque,
                    "queue" => MachineKind::Queue,
                    "stack" => MachineKind::Stack,
                    _ => return Err(TableError::syntax(ln, format!("unknown kind {value:?}"))),
                })?;
            }
            "radius" => set_once(&mut radius, ln, "radius", parse_number(value, ln)?)?,
            "min-length" => set_once(&mut min_length, ln, "min-length", parse_number(value, ln)?)?,
            "start-head" => {
                set_once(&mut start_head, ln, "start-head", match value {
                    "left" => StartHead::Left,
                    "right" => StartHead::Right,
                    _ => return Err(TableError::syntax(ln, "start-head must be `left` or `right`")),
                })?;
            }
            "initial" => set_once(&mut initial, ln, "initial", parse_state(value, ln)?)?,
            "halting" => set_once(&mut halting, ln, "halting", parse_state(value, ln)?)?,
            "outputs" => {
                let val = if value == "ALL" {
                    Outputs::All
                } else {
                    let mut list = Vec::new();
                    for tok in value.split_whitespace() {
                        list.push(parse_state(tok, ln)?);
                    }
                    Outputs::States(list)
                };
                set_once(&mut outputs, ln, "outputs", val)?;
            }
            _ => return Err(TableError::syntax(ln, format!("unknown header `{key}`"))),
        }
    }

    let kind = kind.ok_or_else(|| TableError::invalid("missing `kind` header"))?;
    let rules = match kind {
        MachineKind::Tape => Rules::Tape(tape_rules),
        MachineKind::Deque => Rules::Deque(deque_rules),
        MachineKind::Queue => Rules::Queue(queue_rules),
        MachineKind::Stack => Rules::Stack(stack_rules),
    };
    let spec = MachineSpec {
        kind,
        radius: radius.ok_or_else(|| TableError::invalid("missing `radius` header"))?,
        min_length: min_length.ok_or_else(|| TableError::invalid("missing `min-length` header"))?,
        start_head: start_head.unwrap_or_default(),
        initial: initial.ok_or_else(|| TableError::invalid("missing `initial` header"))?,
        halting,
        outputs: outputs.ok_or_else(|| TableError::invalid("missing `outputs` header"))?,
        rules,
    };
    spec.check()?;
    Ok(spec)
}

fn set_once<T>(slot: &mut Option<T>, ln: usize, key: &str, value: T) -> Result<(), TableError> {
    if slot.is_some() {
        return Err(TableError::syntax(ln, format!("duplicate `{key}` header")));
    }
    *slot = Some(value);
    Ok(())
}

fn parse_number(s: &str, ln: usize) -> Result<usize, TableError> {
    s.parse()
        .map_err(|_| TableError::syntax(ln, format!("expected a number, found {s:?}")))
}

fn parse_state(s: &str, ln: usize) -> Result<StateId, TableError> {
    let ok = !s.is_empty()
        && s != "ALL"
        && s.bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b':' || b == b'-');
    if !ok {
        return Err(TableError::syntax(ln, format!("bad state name {s:?}")));
    }
    Ok(StateId::new(s))
}

/// Splits `FROM | MIDDLE -> TO | tail...` into its pieces, where the
/// number of `|`-separated segments after FROM is `tail_segments + 1`.
fn split_rule<'a>(
    rest: &'a str,
    ln: usize,
    tail_segments: usize,
) -> Result<(StateId, &'a str, StateId, Vec<&'a str>), TableError> {
    let segs: Vec<&str> = rest.split('|').map(str::trim).collect();
    if segs.len() != tail_segments + 2 {
        return Err(TableError::syntax(
            ln,
            format!("expected {} `|`-separated fields", tail_segments + 2),
        ));
    }
    let from = parse_state(segs[0], ln)?;
    let (pat, to) = segs[1]
        .split_once("->")
        .ok_or_else(|| TableError::syntax(ln, "expected `->` between pattern and target state"))?;
    let to = parse_state(to.trim(), ln)?;
    Ok((from, pat.trim(), to, segs[2..].to_vec()))
}

fn parse_tape_rule(rest: &str, ln: usize) -> Result<TapeRule, TableError> {
    let (from, pat, to, tail) = split_rule(rest, ln, 2)?;
    let pattern = parse_tape_pattern(pat, ln)?;
    let replacement = parse_tape_replacement(tail[0], ln)?;
    let movement = match tail[1] {
        "L" => Move::Left,
        "S" => Move::Stay,
        "R" => Move::Right,
        other => return Err(TableError::syntax(ln, format!("bad move {other:?} (use L, S or R)"))),
    };
    Ok(TapeRule { from, pattern, to, replacement, movement })
}

fn parse_tape_pattern(s: &str, ln: usize) -> Result<TapePattern, TableError> {
    let mut cells = Vec::new();
    let mut head_index: Option<usize> = None;
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c == '[' {
            let cell = chars
                .next()
                .ok_or_else(|| TableError::syntax(ln, "unterminated `[`"))?;
            if chars.next() != Some(']') {
                return Err(TableError::syntax(ln, "head cell must be a single `[x]`"));
            }
            if head_index.is_some() {
                return Err(TableError::syntax(ln, "more than one head cell in pattern"));
            }
            head_index = Some(cells.len());
            cells.push(parse_pat_cell(cell, ln)?);
        } else {
            cells.push(parse_pat_cell(c, ln)?);
        }
    }
    let head_index =
        head_index.ok_or_else(|| TableError::syntax(ln, "pattern needs a bracketed head cell"))?;
    Ok(TapePattern { cells, head_index })
}

fn parse_pat_cell(c: char, ln: usize) -> Result<PatCell, TableError> {
    Ok(match c {
        '0' => PatCell::Bit(0),
        '1' => PatCell::Bit(1),
        '.' => PatCell::Any,
        '>' => PatCell::LeftMark,
        '<' => PatCell::RightMark,
        _ => return Err(TableError::syntax(ln, format!("bad pattern cell {c:?}"))),
    })
}

fn parse_tape_replacement(s: &str, ln: usize) -> Result<Vec<ReplToken>, TableError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(ReplToken::Write(0)),
            '1' => Ok(ReplToken::Write(1)),
            '=' => Ok(ReplToken::Keep),
            '~' => Ok(ReplToken::Flip),
            _ => Err(TableError::syntax(ln, format!("bad replacement token {c:?}"))),
        })
        .collect()
}

/// Splits an end-pair field like `LPAT .. RPAT` into its two sides.
fn split_ends<'a>(s: &'a str, ln: usize) -> Result<(&'a str, &'a str), TableError> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    if toks.len() != 3 || toks[1] != ".." {
        return Err(TableError::syntax(ln, "expected `LEFT .. RIGHT` (use `-` for an empty side)"));
    }
    Ok((toks[0], toks[2]))
}

fn parse_end_pattern(s: &str, ln: usize) -> Result<Vec<EndCell>, TableError> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.chars()
        .map(|c| match c {
            '0' => Ok(EndCell::Bit(0)),
            '1' => Ok(EndCell::Bit(1)),
            '.' => Ok(EndCell::Any),
            _ => Err(TableError::syntax(ln, format!("bad end-window cell {c:?}"))),
        })
        .collect()
}

fn parse_deque_replacement(s: &str, ln: usize) -> Result<Vec<DequeToken>, TableError> {
    if s == "-" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'0' => {
                out.push(DequeToken::Write(0));
                i += 1;
            }
            b'1' => {
                out.push(DequeToken::Write(1));
                i += 1;
            }
            c @ (b'$' | b'~') => {
                // a reference is exactly one digit 1-9, so `$L11` reads
                // unambiguously as cell 1 followed by a literal 1
                let side = *bytes
                    .get(i + 1)
                    .ok_or_else(|| TableError::syntax(ln, "truncated copy reference"))?;
                let k = match bytes.get(i + 2) {
                    Some(d @ b'1'..=b'9') => (d - b'0') as usize,
                    _ => {
                        return Err(TableError::syntax(
                            ln,
                            "copy reference needs a cell number 1-9",
                        ))
                    }
                };
                let tok = match (c, side) {
                    (b'$', b'L') => DequeToken::CopyLeft(k),
                    (b'$', b'R') => DequeToken::CopyRight(k),
                    (b'~', b'L') => DequeToken::FlipLeft(k),
                    (b'~', b'R') => DequeToken::FlipRight(k),
                    _ => return Err(TableError::syntax(ln, "copy reference side must be L or R")),
                };
                out.push(tok);
                i += 3;
            }
            other => {
                return Err(TableError::syntax(
                    ln,
                    format!("bad replacement token {:?}", char::from(other)),
                ))
            }
        }
    }
    Ok(out)
}

fn parse_deque_rule(rest: &str, ln: usize) -> Result<DequeRule, TableError> {
    let (from, pat, to, tail) = split_rule(rest, ln, 1)?;
    let (lp, rp) = split_ends(pat, ln)?;
    let (lr, rr) = split_ends(tail[0], ln)?;
    Ok(DequeRule {
        from,
        left_pattern: parse_end_pattern(lp, ln)?,
        right_pattern: parse_end_pattern(rp, ln)?,
        to,
        left_replacement: parse_deque_replacement(lr, ln)?,
        right_replacement: parse_deque_replacement(rr, ln)?,
    })
}

fn parse_queue_rule(rest: &str, ln: usize) -> Result<QueueRule, TableError> {
    let (from, pat, to, tail) = split_rule(rest, ln, 1)?;
    let push_left = if tail[0] == "-" {
        Vec::new()
    } else {
        tail[0]
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                _ => Err(TableError::syntax(ln, format!("bad push cell {c:?}"))),
            })
            .collect::<Result<_, _>>()?
    };
    Ok(QueueRule { from, right_pattern: parse_end_pattern(pat, ln)?, to, push_left })
}

fn parse_stack_rule(rest: &str, ln: usize) -> Result<StackRule, TableError> {
    let (from, pat, to, tail) = split_rule(rest, ln, 1)?;
    let top = match pat {
        "0" => StackTop::Bit(0),
        "1" => StackTop::Bit(1),
        "@" => StackTop::Empty,
        other => return Err(TableError::syntax(ln, format!("bad stack top {other:?}"))),
    };
    let action = match tail[0] {
        "pop" => StackAction::Pop,
        "push0" => StackAction::Push(0),
        "push1" => StackAction::Push(1),
        other => return Err(TableError::syntax(ln, format!("bad stack action {other:?}"))),
    };
    Ok(StackRule { from, top, to, action })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::serialize_machine_table;

    const SMALL_TAPE: &str = "\
# walk right flipping everything, then stop
kind: tape
radius: 3
min-length: 1
initial: go
halting: done
outputs: go

rule go | [.]. -> go | ~= | R
rule go | [.]< -> done | ~= | S
";

    #[test]
    fn parses_and_reserializes_a_tape_table() {
        let m = parse_machine_table(SMALL_TAPE).unwrap();
        assert_eq!(m.kind, MachineKind::Tape);
        assert_eq!(m.rules.len(), 2);
        let text = serialize_machine_table(&m);
        let again = parse_machine_table(&text).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn reports_line_numbers() {
        let bad = "kind: tape\nradius: 2\nmin-length: 1\ninitial: a\noutputs: ALL\nrule a | [x] -> a | = | S\n";
        match parse_machine_table(bad) {
            Err(TableError::Syntax { line, .. }) => assert_eq!(line, 6),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_tables_without_rules() {
        let bad = "kind: tape\nradius: 2\nmin-length: 1\ninitial: a\noutputs: ALL\n";
        match parse_machine_table(bad) {
            Err(TableError::Invalid { msg }) => assert!(msg.contains("no rules"), "{msg}"),
            other => panic!("expected an invalid-table error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_rules_from_the_halting_state() {
        let bad = "kind: tape\nradius: 2\nmin-length: 1\ninitial: a\nhalting: h\noutputs: ALL\n\
                   rule a | [.] -> h | = | S\nrule h | [.] -> a | = | S\n";
        match parse_machine_table(bad) {
            Err(TableError::Invalid { msg }) => assert!(msg.contains("halting"), "{msg}"),
            other => panic!("expected an invalid-table error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicate_headers_and_unknown_keys() {
        let dup = "kind: tape\nkind: tape\n";
        assert!(matches!(parse_machine_table(dup), Err(TableError::Syntax { line: 2, .. })));
        let unk = "kind: tape\nflavour: sweet\n";
        assert!(matches!(parse_machine_table(unk), Err(TableError::Syntax { line: 2, .. })));
    }

    #[test]
    fn parses_deque_rules_with_copies() {
        let t = "\
kind: deque
radius: 2
min-length: 2
initial: a
outputs: ALL

rule a | 01 .. - -> a | - .. $L2~L1
rule a | . .. . -> b | $R1 .. $L1
";
        let m = parse_machine_table(t).unwrap();
        let text = serialize_machine_table(&m);
        assert_eq!(m, parse_machine_table(&text).unwrap());
        if let Rules::Deque(rules) = &m.rules {
            assert_eq!(
                rules[0].right_replacement,
                vec![DequeToken::CopyLeft(2), DequeToken::FlipLeft(1)]
            );
        } else {
            panic!("expected deque rules");
        }
    }

    #[test]
    fn rejects_copy_references_outside_the_window() {
        let t = "\
kind: deque
radius: 2
min-length: 2
initial: a
outputs: ALL

rule a | 0 .. - -> a | $L2 .. -
";
        match parse_machine_table(t) {
            Err(TableError::Invalid { msg }) => assert!(msg.contains("copy reference"), "{msg}"),
            other => panic!("expected an invalid-table error, got {other:?}"),
        }
    }

    #[test]
    fn parses_queue_and_stack_rules() {
        let q = "kind: queue\nradius: 2\nmin-length: 2\ninitial: a\noutputs: ALL\n\
                 rule a | 0. -> a | 1\nrule a | 1. -> a | -\n";
        let m = parse_machine_table(q).unwrap();
        assert_eq!(m, parse_machine_table(&serialize_machine_table(&m)).unwrap());

        let s = "kind: stack\nradius: 1\nmin-length: 1\ninitial: a\noutputs: ALL\n\
                 rule a | 0 -> a | push1\nrule a | 1 -> a | pop\nrule a | @ -> a | push0\n";
        let m = parse_machine_table(s).unwrap();
        assert_eq!(m, parse_machine_table(&serialize_machine_table(&m)).unwrap());
    }
}
