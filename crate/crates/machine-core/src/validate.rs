//! Static table checks beyond well-formedness: dead rules, duplicate
//! patterns, unreachable states, and injectivity defects.

use crate::reverse::analyze_injectivity;
use crate::spec::{DequeRule, EndCell, MachineSpec, PatCell, QueueRule, Rules, TapeRule};

/// What kind of defect a finding reports.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum FindingKind {
    /// An earlier rule matches everything a later rule matches, so the
    /// later rule never fires.
    Shadowing,
    /// Two rules from the same state have identical patterns.
    Conflict,
    /// A state no chain of rules can reach from the initial state.
    Unreachable,
    /// The step relation is (or may be) not injective, so the machine
    /// cannot be run in reverse. Informational: forward runs are fine.
    NonInjective,
}

impl FindingKind {
    pub fn label(self) -> &'static str {
        match self {
            FindingKind::Shadowing => "shadowing",
            FindingKind::Conflict => "conflict",
            FindingKind::Unreachable => "unreachable",
            FindingKind::NonInjective => "non-injective",
        }
    }
}

/// One lint finding. Rule numbers in messages are 1-based table order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Finding {
    pub kind: FindingKind,
    pub message: String,
}

/// Lints a well-formed machine. Returns an empty list for a clean table.
pub fn validate_machine(spec: &MachineSpec) -> Vec<Finding> {
    let mut findings = Vec::new();

    // Dead and duplicate rules, per from-state.
    let n = spec.rules.len();
    for i in 0..n {
        for j in i + 1..n {
            if spec.rules.endpoints(i).0 != spec.rules.endpoints(j).0 {
                continue;
            }
            if patterns_identical(spec, i, j) {
                findings.push(Finding {
                    kind: FindingKind::Conflict,
                    message: format!(
                        "rules {} and {} have identical patterns; rule {} never fires",
                        i + 1,
                        j + 1,
                        j + 1
                    ),
                });
            } else if subsumes(spec, i, j) {
                findings.push(Finding {
                    kind: FindingKind::Shadowing,
                    message: format!(
                        "rule {} never fires: rule {} already matches every window it matches",
                        j + 1,
                        i + 1
                    ),
                });
            }
        }
    }

    // States the rule graph cannot reach from the initial state.
    let names = spec.states();
    let index = |s: &str| names.iter().position(|n| *n == s).unwrap();
    let mut reached = vec![false; names.len()];
    reached[index(spec.initial.as_str())] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            let (f, t) = spec.rules.endpoints(i);
            let (fi, ti) = (index(f.as_str()), index(t.as_str()));
            if reached[fi] && !reached[ti] {
                reached[ti] = true;
                changed = true;
            }
        }
    }
    for (i, name) in names.iter().enumerate() {
        if !reached[i] {
            findings.push(Finding {
                kind: FindingKind::Unreachable,
                message: format!("state {name} is unreachable from {}", spec.initial),
            });
        }
    }

    // Injectivity defects (informational; forward execution unaffected).
    let analysis = analyze_injectivity(spec);
    for i in &analysis.lossy {
        findings.push(Finding {
            kind: FindingKind::NonInjective,
            message: format!("rule {} discards matched cells", i + 1),
        });
    }
    for (i, j) in &analysis.ambiguous {
        findings.push(Finding {
            kind: FindingKind::NonInjective,
            message: format!("rules {} and {} can produce the same configuration", i + 1, j + 1),
        });
    }

    findings
}

fn patterns_identical(spec: &MachineSpec, i: usize, j: usize) -> bool {
    match &spec.rules {
        Rules::Tape(r) => r[i].pattern == r[j].pattern,
        Rules::Deque(r) => {
            r[i].left_pattern == r[j].left_pattern && r[i].right_pattern == r[j].right_pattern
        }
        Rules::Queue(r) => r[i].right_pattern == r[j].right_pattern,
        Rules::Stack(r) => r[i].top == r[j].top,
    }
}

/// Does every window rule `i` matches include every window rule `j`
/// matches? (Both rules share a from-state; patterns are not identical.)
fn subsumes(spec: &MachineSpec, i: usize, j: usize) -> bool {
    match &spec.rules {
        Rules::Tape(r) => tape_subsumes(&r[i], &r[j]),
        Rules::Deque(r) => deque_subsumes(&r[i], &r[j]),
        Rules::Queue(r) => queue_subsumes(&r[i], &r[j]),
        // stack patterns are single cells: only identity subsumes,
        // which the conflict check already reported
        Rules::Stack(_) => false,
    }
}

/// `Any` matches either bit but not a marker, so it is implied by a bit
/// or another `Any`, never by a marker.
fn tape_cell_implied(general: PatCell, specific: PatCell) -> bool {
    match (general, specific) {
        (PatCell::Any, PatCell::Bit(_) | PatCell::Any) => true,
        (a, b) => a == b,
    }
}

fn tape_subsumes(a: &TapeRule, b: &TapeRule) -> bool {
    // Align both windows on the head cell. Rule a subsumes b only if its
    // window, head-relative, sits inside b's, with every cell implied.
    let (sa, sb) = (-(a.pattern.head_index as isize), -(b.pattern.head_index as isize));
    if sa < sb || sa + a.pattern.cells.len() as isize > sb + b.pattern.cells.len() as isize {
        return false;
    }
    a.pattern.cells.iter().enumerate().all(|(k, ca)| {
        let cb = b.pattern.cells[(sa - sb) as usize + k];
        tape_cell_implied(*ca, cb)
    })
}

fn end_cell_implied(general: EndCell, specific: EndCell) -> bool {
    matches!(general, EndCell::Any) || general == specific
}

fn deque_subsumes(a: &DequeRule, b: &DequeRule) -> bool {
    if a.left_pattern.len() > b.left_pattern.len()
        || a.right_pattern.len() > b.right_pattern.len()
    {
        return false;
    }
    let left_ok = a
        .left_pattern
        .iter()
        .zip(&b.left_pattern)
        .all(|(ca, cb)| end_cell_implied(*ca, *cb));
    let right_ok = a
        .right_pattern
        .iter()
        .rev()
        .zip(b.right_pattern.iter().rev())
        .all(|(ca, cb)| end_cell_implied(*ca, *cb));
    left_ok && right_ok
}

fn queue_subsumes(a: &QueueRule, b: &QueueRule) -> bool {
    a.right_pattern
        .iter()
        .zip(&b.right_pattern)
        .all(|(ca, cb)| end_cell_implied(*ca, *cb))
}
