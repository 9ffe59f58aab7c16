//! Distinct 3DM no-instances by padding a fixed one.

use crate::error::{Error, Result};

use super::instances::ThreeDm;

/// q = 2, three triples, no matching: w_2 forces (2,1,2), which leaves no
/// triple for w_1 with y_1.
pub fn base_no_instance() -> ThreeDm {
    ThreeDm::new(2, [[1, 1, 1], [2, 1, 2], [1, 2, 2]]).expect("fixed instance is valid")
}

/// Block for `bits` on L + 1 fresh elements per axis: the diagonal plus a
/// shifted diagonal triple for each set bit. Empty for the empty string.
pub fn padding_block(bits: &[bool]) -> Vec<[usize; 3]> {
    if bits.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<[usize; 3]> = (1..=bits.len() + 1).map(|i| [i, i, i]).collect();
    out.extend(bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| [i + 1, i + 2, i + 2]));
    out
}

/// Disjoint union of the base instance with the block for `bits`.
pub fn padded_instance(bits: &[bool]) -> ThreeDm {
    let base = base_no_instance();
    let block = padding_block(bits);
    let q_b = if bits.is_empty() { 0 } else { bits.len() + 1 };
    let shift = base.q;
    let triples = base.triples.iter().copied().chain(block.into_iter().map(|t| t.map(|c| c + shift)));
    ThreeDm::new(base.q + q_b, triples).expect("padding keeps the instance valid")
}

/// The first `count` bitstrings in shortlex order: "", "0", "1", "00", ...
pub fn shortlex(count: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::with_capacity(count);
    let mut len = 0u32;
    while out.len() < count {
        for k in 0..1u64 << len {
            if out.len() == count {
                break;
            }
            out.push((0..len).rev().map(|b| k >> b & 1 == 1).collect());
        }
        len += 1;
    }
    out
}

/// Hex digits to bits, four per digit, high bit first.
pub fn parse_hex_bits(s: &str) -> Result<Vec<bool>> {
    s.trim()
        .chars()
        .map(|c| c.to_digit(16).ok_or_else(|| Error::Parse(format!("{c:?} is not a hex digit"))))
        .try_fold(Vec::new(), |mut acc, d| {
            let d = d?;
            acc.extend((0..4).rev().map(|b| d >> b & 1 == 1));
            Ok(acc)
        })
}

pub fn generate_no_instances(bitstrings: &[Vec<bool>]) -> Vec<ThreeDm> {
    bitstrings.iter().map(|b| padded_instance(b)).collect()
}
