//! Reference constructions of binary word orders, independent of any
//! machine: the reflected Gray code, two mirror-image recursive Gray
//! codes (the orders produced by the bundled tape machines), and
//! universal cyclic words whose sliding windows enumerate all words of
//! a given length.
//!
//! Everything here is built directly from the defining recurrences, so
//! these sequences serve as ground truth when checking machine runs.

use machine_core::Code;

/// The binary reflected Gray code on `len` bits: entry `i` is
/// `i ^ (i >> 1)`, written most significant bit first. Consecutive
/// entries (and the last and first) differ in exactly one bit.
///
/// # Panics
/// Panics if `len` is 0 or too large to enumerate (`len >= 48`).
pub fn rbgc(len: usize) -> Code {
    assert!(len >= 1 && len < 48, "unsupported length {len}");
    let mut code = Code::new(len);
    for i in 0u64..1 << len {
        let g = i ^ (i >> 1);
        let word: String = (0..len).rev().map(|b| if g >> b & 1 == 1 { '1' } else { '0' }).collect();
        code.words.push(word);
    }
    code
}

/// Reverses the order of words in a code.
fn reversed(mut words: Vec<String>) -> Vec<String> {
    words.reverse();
    words
}

/// Reverses each word in place (mirror image).
fn mirrored(words: Vec<String>) -> Vec<String> {
    words.into_iter().map(|w| w.chars().rev().collect()).collect()
}

/// A cyclic Gray code defined by appending a bit on the right:
///
/// ```text
/// A(1)   = [0, 1]
/// A(l+1) = [0^(l+1)]
///        ++ [w1 for w in A(l)]
///        ++ [w0 for w in reverse(A(l) minus its first word)]
/// ```
///
/// # Panics
/// Panics if `len` is 0 or `len >= 48`.
pub fn code_a(len: usize) -> Code {
    assert!(len >= 1 && len < 48, "unsupported length {len}");
    let mut words = vec!["0".to_string(), "1".to_string()];
    for l in 1..len {
        let mut next = Vec::with_capacity(words.len() * 2);
        next.push("0".repeat(l + 1));
        next.extend(words.iter().map(|w| format!("{w}1")));
        next.extend(reversed(words[1..].to_vec()).into_iter().map(|w| format!("{w}0")));
        words = next;
    }
    Code { width: len, words }
}

/// A cyclic Gray code defined by prepending a bit on the left:
///
/// ```text
/// B(1)   = [0, 1]
/// B(l+1) = [0^(l+1)]
///        ++ [0w for w in reverse(B(l) minus its first word)]
///        ++ [1w for w in B(l) minus its first word]
///        ++ [1 0^l]
/// ```
///
/// # Panics
/// Panics if `len` is 0 or `len >= 48`.
pub fn code_b(len: usize) -> Code {
    assert!(len >= 1 && len < 48, "unsupported length {len}");
    let mut words = vec!["0".to_string(), "1".to_string()];
    for l in 1..len {
        let tail = words[1..].to_vec();
        let mut next = Vec::with_capacity(words.len() * 2);
        next.push("0".repeat(l + 1));
        next.extend(reversed(tail.clone()).into_iter().map(|w| format!("0{w}")));
        next.extend(tail.into_iter().map(|w| format!("1{w}")));
        next.push(format!("1{}", "0".repeat(l)));
        words = next;
    }
    Code { width: len, words }
}

/// The order-reversal/mirror identity connecting the two codes:
/// `B = [0^l] ++ mirror(reverse(A minus its first word))`.
pub fn b_from_a(a: &Code) -> Code {
    let mut words = vec!["0".repeat(a.width)];
    words.extend(mirrored(reversed(a.words[1..].to_vec())));
    Code { width: a.width, words }
}

/// A universal word for length `order`: reading its `2^order + order - 1`
/// bits through a sliding window of width `order` yields every binary
/// word of that length exactly once.
///
/// Built as a lexicographically least de Bruijn sequence (concatenating
/// the Lyndon words whose lengths divide `order`) followed by the
/// sequence's own first `order - 1` bits.
///
/// # Panics
/// Panics if `order` is 0 or `order >= 32`.
pub fn universal_word(order: usize) -> String {
    assert!(order >= 1 && order < 32, "unsupported order {order}");
    let mut seq: Vec<u8> = Vec::with_capacity(1 << order);
    let mut a = vec![0u8; order + 1];
    db(1, 1, order, &mut a, &mut seq);
    seq.extend_from_slice(&seq[..order - 1].to_vec());
    seq.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
}

/// Standard recursive construction of the least de Bruijn sequence.
fn db(t: usize, p: usize, order: usize, a: &mut Vec<u8>, seq: &mut Vec<u8>) {
    if t > order {
        if order % p == 0 {
            seq.extend_from_slice(&a[1..=p].to_vec());
        }
    } else {
        a[t] = a[t - p];
        db(t + 1, p, order, a, seq);
        for j in a[t - p] + 1..=1 {
            a[t] = j;
            db(t + 1, t, order, a, seq);
        }
    }
}

/// All windows of width `len` read left to right across `word`:
/// `|word| - len + 1` entries.
///
/// # Panics
/// Panics if `word` is shorter than `len` or `len` is 0.
pub fn sliding_code(word: &str, len: usize) -> Code {
    assert!(len >= 1 && word.len() >= len, "window does not fit");
    let mut code = Code::new(len);
    for i in 0..=word.len() - len {
        code.words.push(word[i..i + len].to_string());
    }
    code
}
