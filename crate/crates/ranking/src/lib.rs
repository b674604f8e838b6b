//! Rank and unrank for the prepend-order code, and reversible counters.
//!
//! The rank of a word is its 0-based position in the sequence the T1
//! machine produces for that word length; [`unrank_t1`] is the inverse.
//! Both work by relating a word to its path in the underlying code
//! tree: strip the trailing `1 0^k`, then *correct* the remaining bits
//! against a running zero-parity so that a 0 always means "the subtree
//! visited first". Ranks are arbitrary-precision, so any word length
//! works.
//!
//! A [`Counter`] wraps a live machine configuration as an integer
//! register: increment runs the machine forward to its next output
//! visit, decrement applies inverse rules back to the previous one.
//! Each operation costs at most the machine's delay bound, independent
//! of the word length or the counter's value.

use machine_core::{
    initial_config, step, string_to_bits, Config, MachineKind, MachineSpec, Reverser, StepResult,
};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Safety cap on rule applications per counter operation. The bundled
/// machines all have single-digit delay bounds; hitting this cap means
/// the table is not constant-delay and the handle is unusable.
const OP_CAP: u32 = 1024;

/// The 0-based position of `word` in the T1 enumeration of its length.
///
/// Needs a binary word of length at least 2. The first and last words
/// (`0^ℓ` and `1 0^(ℓ-1)`) are handled directly; every other word is
/// decomposed as `u 1 0^k` and scored by the corrected-word formula.
pub fn rank_t1(word: &str) -> Result<BigUint, String> {
    let bits = string_to_bits(word)?;
    let len = bits.len();
    if len < 2 {
        return Err(format!("rank needs a word of length at least 2, got {len}"));
    }
    if bits.iter().all(|&b| b == 0) {
        return Ok(BigUint::zero());
    }
    if bits[0] == 1 && bits[1..].iter().all(|&b| b == 0) {
        return Ok((BigUint::one() << len) - 1u32);
    }
    // w = u 1 0^k with u = a_1 … a_m; neither special case applies, so
    // the final 1 is not the leading cell and 1 ≤ m ≤ ℓ−1.
    let m = bits.iter().rposition(|&b| b == 1).unwrap();
    let mut rank = BigUint::from(m);
    let mut zeros_even = true; // parity of zeros among a_1 … a_{i−1}
    for i in 1..=m {
        let a = bits[i - 1];
        // b_i = a_i, complemented when an odd number of zeros precede:
        // a 0-bit then means "first-visited child" regardless of parity.
        let b = if zeros_even { a } else { a ^ 1 };
        if b == 1 {
            rank += if i < m {
                (BigUint::one() << (len - i)) - 2u32
            } else {
                (BigUint::one() << (len + 1 - m)) - 3u32
            };
        }
        if a == 0 {
            zeros_even = !zeros_even;
        }
    }
    Ok(rank)
}

/// The word at 0-based position `rank` in the T1 enumeration for length
/// `len`; inverse of [`rank_t1`]. Errors when `rank ≥ 2^len` or
/// `len < 2`.
pub fn unrank_t1(rank: &BigUint, len: usize) -> Result<String, String> {
    if len < 2 {
        return Err(format!("unrank needs a word length of at least 2, got {len}"));
    }
    let last = (BigUint::one() << len) - 1u32;
    if *rank > last {
        return Err(format!("rank {rank} is out of range for length {len}"));
    }
    if rank.is_zero() {
        return Ok("0".repeat(len));
    }
    if *rank == last {
        return Ok(format!("1{}", "0".repeat(len - 1)));
    }

    // Descend the code tree: at each level the first-visited subtree
    // holds 2^(level−1) − 1 inner positions, so compare against that
    // block size, emitting one corrected bit per level.
    let mut n = rank.clone();
    let mut level = len;
    let mut corrected: Vec<u8> = Vec::new();
    loop {
        if n.is_one() {
            corrected.push(0);
            break;
        }
        if n == (BigUint::one() << level) - 2u32 {
            corrected.push(1);
            break;
        }
        let block = (BigUint::one() << (level - 1)) - 1u32;
        if n <= block {
            corrected.push(0);
            n -= 1u32;
        } else {
            corrected.push(1);
            n -= block;
        }
        level -= 1;
    }

    // Undo the parity correction, then restore the trailing 1 0^k.
    let mut zeros_even = true;
    let mut bits: Vec<u8> = Vec::with_capacity(len);
    for &b in &corrected {
        let a = if zeros_even { b } else { b ^ 1 };
        bits.push(a);
        if a == 0 {
            zeros_even = !zeros_even;
        }
    }
    bits.push(1);
    bits.resize(len, 0);
    Ok(bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect())
}

/// A machine configuration used as an integer register.
///
/// The handle always rests on an output-state configuration; its value
/// is the word emitted there. Increment advances to the next output
/// visit and decrement rewinds to the previous one, so a T1 counter at
/// value v holds the word of rank v.
pub struct Counter {
    spec: &'static MachineSpec,
    /// Backward stepper; `None` for deque machines, which only support
    /// increment (their reversal assumes the counted value stays
    /// positive, which a register interface cannot guarantee).
    reverser: Option<Reverser<'static>>,
    start: Config,
    config: Config,
    value: String,
}

impl Counter {
    /// Builds a counter on one of the bundled machines (`T0`, `T1`,
    /// `T2`, or a deque machine for increment-only use) at word length
    /// `len`. Errors if the machine's table is not injective, since
    /// decrement needs every configuration to have a unique
    /// predecessor.
    pub fn new(name: &str, len: usize) -> Result<Counter, String> {
        let spec = builtin_machines::builtin(name)?;
        let reverser = match spec.kind {
            MachineKind::Deque => None,
            _ => Some(Reverser::new(spec).map_err(|e| e.to_string())?),
        };
        let start = initial_config(spec, len).map_err(|e| e.to_string())?;
        let mut counter = Counter {
            spec,
            reverser,
            start: start.clone(),
            config: start,
            value: String::new(),
        };
        if counter.spec.is_output(counter.config.state.as_str()) {
            counter.value = counter.config.word.clone();
        } else {
            // Roll forward to the first output visit so the handle
            // starts on a well-defined value.
            counter.advance()?;
        }
        Ok(counter)
    }

    /// The current word (the counter's value).
    pub fn value(&self) -> &str {
        &self.value
    }

    /// The configuration the handle rests on.
    pub fn config(&self) -> &Config {
        &self.config
    }

    /// Advances to the next output visit and returns its word. Errors
    /// with "overflow" when the machine halts first.
    pub fn increment(&mut self) -> Result<String, String> {
        self.advance()?;
        Ok(self.value.clone())
    }

    /// Rewinds to the previous output visit and returns its word.
    /// Errors with "underflow" at the first one, and rejects deque
    /// machines, whose decrement would only be sound while the count
    /// stays positive.
    pub fn decrement(&mut self) -> Result<String, String> {
        let reverser = self.reverser.as_ref().ok_or_else(|| {
            "decrement is not supported on deque machines: their reversal is only \
             sound while the counter stays positive"
                .to_string()
        })?;
        if self.config == self.start {
            return Err("underflow".to_string());
        }
        let mut cur = self.config.clone();
        for _ in 0..OP_CAP {
            match reverser.step_back(&cur).map_err(|e| e.to_string())? {
                Some(pre) => {
                    cur = pre;
                    if self.spec.is_output(cur.state.as_str()) {
                        self.value = cur.word.clone();
                        self.config = cur;
                        return Ok(self.value.clone());
                    }
                }
                // Nothing precedes the initial configuration; if it is
                // not itself an output state, the handle's first value
                // was already the earliest output visit.
                None if cur == self.start => return Err("underflow".to_string()),
                None => {
                    return Err(format!(
                        "no inverse rule applies in state {} on {}",
                        cur.state, cur.word
                    ))
                }
            }
        }
        Err(format!("no output state within {OP_CAP} inverse steps"))
    }

    fn advance(&mut self) -> Result<(), String> {
        let mut cur = self.config.clone();
        for _ in 0..OP_CAP {
            match step(self.spec, &cur).map_err(|e| e.to_string())? {
                StepResult::Halted => return Err("overflow".to_string()),
                StepResult::NoRuleApplies => {
                    return Err(format!(
                        "no rule applies in state {} on {}",
                        cur.state, cur.word
                    ))
                }
                StepResult::Next { config, .. } => {
                    cur = config;
                    if self.spec.is_output(cur.state.as_str()) {
                        self.value = cur.word.clone();
                        self.config = cur;
                        return Ok(());
                    }
                }
            }
        }
        Err(format!("no output state within {OP_CAP} steps"))
    }
}
