//! End-rewriting word machines: a table format with a parser and
//! serializer, forward and reverse execution with output-delay
//! accounting, and static table checks.
//!
//! A machine rewrites a fixed-length binary word (tape, deque and queue
//! kinds) or a varying stack, one rule per step, choosing the first rule
//! in table order that matches the current state and window. States can
//! be marked as *output* states; the words visited in those states form
//! the machine's output sequence. The interesting machines here emit
//! every binary word of the given length exactly once, with a bounded
//! number of steps between consecutive outputs and no auxiliary storage
//! beyond the word itself.
//!
//! See [`parse_machine_table`] for the table syntax and [`run`] for
//! execution.

mod code;
mod error;
mod exec;
mod parse;
mod reverse;
mod spec;
mod validate;

pub use code::{bits_to_string, is_binary, string_to_bits, Code};
pub use error::{RunError, TableError};
pub use exec::{
    default_budget, initial_config, run, run_with, step, trace_visits, Config, RunReport,
    StepResult,
};
pub use parse::parse_machine_table;
pub use reverse::{reverse_run, Reverser};
pub use spec::{
    serialize_machine_table, DequeRule, DequeToken, EndCell, MachineKind, MachineSpec, Move,
    Outputs, PatCell, QueueRule, ReplToken, Rules, StackAction, StackRule, StackTop, StartHead,
    StateId, TapePattern, TapeRule,
};
pub use validate::{validate_machine, Finding, FindingKind};
