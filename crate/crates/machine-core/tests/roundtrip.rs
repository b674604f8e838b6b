//! Serializing any well-formed machine and parsing it back must yield
//! the same machine.

use machine_core::{
    parse_machine_table, serialize_machine_table, DequeRule, DequeToken, EndCell, MachineKind,
    MachineSpec, Move, Outputs, PatCell, QueueRule, ReplToken, Rules, StackAction, StackRule,
    StackTop, StartHead, StateId, TapePattern, TapeRule,
};
use proptest::prelude::*;

fn state_name() -> impl Strategy<Value = StateId> {
    prop::sample::select(vec!["a", "b", "go:1", "x_y", "up-2"]).prop_map(StateId::from)
}

fn bit() -> impl Strategy<Value = u8> {
    prop::bool::ANY.prop_map(u8::from)
}

fn tape_rule(radius: usize) -> impl Strategy<Value = TapeRule> {
    (1..=radius).prop_flat_map(|n| {
        let cells = prop::collection::vec(
            prop_oneof![
                3 => bit().prop_map(PatCell::Bit),
                2 => Just(PatCell::Any),
                1 => Just(PatCell::LeftMark),
                1 => Just(PatCell::RightMark),
            ],
            n,
        );
        let repl = prop::collection::vec(
            prop_oneof![
                bit().prop_map(ReplToken::Write),
                Just(ReplToken::Keep),
                Just(ReplToken::Flip),
            ],
            n,
        );
        let movement = prop_oneof![Just(Move::Left), Just(Move::Stay), Just(Move::Right)];
        (state_name(), cells, 0..n, state_name(), repl, movement).prop_map(
            |(from, cells, head_index, to, mut replacement, movement)| {
                // marker cells are never rewritten
                for (c, r) in cells.iter().zip(replacement.iter_mut()) {
                    if matches!(c, PatCell::LeftMark | PatCell::RightMark) {
                        *r = ReplToken::Keep;
                    }
                }
                TapeRule { from, pattern: TapePattern { cells, head_index }, to, replacement, movement }
            },
        )
    })
}

fn end_cells(max: usize) -> impl Strategy<Value = Vec<EndCell>> {
    prop::collection::vec(
        prop_oneof![bit().prop_map(EndCell::Bit), Just(EndCell::Any)],
        0..=max,
    )
}

fn deque_rule(radius: usize) -> impl Strategy<Value = DequeRule> {
    (end_cells(radius), end_cells(radius))
        .prop_filter("window must be nonempty", |(l, r)| l.len() + r.len() > 0)
        .prop_flat_map(|(l, r)| {
            let (a, b) = (l.len(), r.len());
            let mut choices: Vec<BoxedStrategy<DequeToken>> =
                vec![bit().prop_map(DequeToken::Write).boxed()];
            if a > 0 {
                choices.push((1..=a).prop_map(DequeToken::CopyLeft).boxed());
                choices.push((1..=a).prop_map(DequeToken::FlipLeft).boxed());
            }
            if b > 0 {
                choices.push((1..=b).prop_map(DequeToken::CopyRight).boxed());
                choices.push((1..=b).prop_map(DequeToken::FlipRight).boxed());
            }
            let token = proptest::strategy::Union::new(choices);
            let toks = prop::collection::vec(token, a + b);
            (Just(l), Just(r), state_name(), state_name(), toks, 0..=a + b).prop_map(
                |(left_pattern, right_pattern, from, to, toks, split)| DequeRule {
                    from,
                    left_pattern,
                    right_pattern,
                    to,
                    left_replacement: toks[..split].to_vec(),
                    right_replacement: toks[split..].to_vec(),
                },
            )
        })
}

fn queue_rule(radius: usize) -> impl Strategy<Value = QueueRule> {
    let cells = prop::collection::vec(
        prop_oneof![bit().prop_map(EndCell::Bit), Just(EndCell::Any)],
        radius,
    );
    (state_name(), cells, state_name(), prop::collection::vec(bit(), 0..=radius)).prop_map(
        |(from, right_pattern, to, push_left)| QueueRule { from, right_pattern, to, push_left },
    )
}

fn stack_rule() -> impl Strategy<Value = StackRule> {
    let top = prop_oneof![bit().prop_map(StackTop::Bit), Just(StackTop::Empty)];
    let action = prop_oneof![Just(StackAction::Pop), bit().prop_map(StackAction::Push)];
    (state_name(), top, state_name(), action)
        .prop_map(|(from, top, to, action)| StackRule { from, top, to, action })
}

fn machine() -> impl Strategy<Value = MachineSpec> {
    let tape = (1usize..=3, any::<bool>()).prop_flat_map(|(radius, right)| {
        prop::collection::vec(tape_rule(radius), 1..6).prop_map(move |rules| MachineSpec {
            kind: MachineKind::Tape,
            radius,
            min_length: 1,
            start_head: if right { StartHead::Right } else { StartHead::Left },
            initial: rules[0].from.clone(),
            halting: None,
            outputs: Outputs::All,
            rules: Rules::Tape(rules),
        })
    });
    let deque = (1usize..=3).prop_flat_map(|radius| {
        prop::collection::vec(deque_rule(radius), 1..6).prop_map(move |rules| MachineSpec {
            kind: MachineKind::Deque,
            radius,
            min_length: rules
                .iter()
                .map(|r| r.left_pattern.len() + r.right_pattern.len())
                .max()
                .unwrap(),
            start_head: StartHead::Left,
            initial: rules[0].from.clone(),
            halting: None,
            outputs: Outputs::All,
            rules: Rules::Deque(rules),
        })
    });
    let queue = (1usize..=3).prop_flat_map(|radius| {
        prop::collection::vec(queue_rule(radius), 1..6).prop_map(move |rules| MachineSpec {
            kind: MachineKind::Queue,
            radius,
            min_length: radius,
            start_head: StartHead::Left,
            initial: rules[0].from.clone(),
            halting: None,
            outputs: Outputs::All,
            rules: Rules::Queue(rules),
        })
    });
    let stack = prop::collection::vec(stack_rule(), 1..6).prop_map(|rules| MachineSpec {
        kind: MachineKind::Stack,
        radius: 1,
        min_length: 1,
        start_head: StartHead::Left,
        initial: rules[0].from.clone(),
        halting: None,
        outputs: Outputs::All,
        rules: Rules::Stack(rules),
    });
    let any_machine = prop_oneof![tape, deque, queue, stack];
    // Sometimes restrict outputs to the initial state, which is always
    // mentioned by a rule.
    (any_machine, any::<bool>()).prop_map(|(mut m, restrict)| {
        if restrict {
            m.outputs = Outputs::States(vec![m.initial.clone()]);
        }
        m
    })
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(m in machine()) {
        prop_assume!(m.check().is_ok());
        let text = serialize_machine_table(&m);
        let parsed = parse_machine_table(&text).unwrap_or_else(|e| {
            panic!("serialized table failed to parse: {e}\n{text}")
        });
        prop_assert_eq!(parsed, m);
    }
}
