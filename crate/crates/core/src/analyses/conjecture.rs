//! Checks on the unbordered factors of the Thue-Morse sequence.

use super::{regex_values, unbordered_characteristic};
use crate::error::Result;
use crate::numeration::decode_lsd;
use crate::regseq::{LinRep, Recurrence};
use crate::semiring::Rat;
use crate::seqgen::Dfao;

/// Binary lengths (msd first) at which Thue-Morse has no unbordered factor.
pub const CONJECTURED_BORDERLESS_REGEX: &str = "1(01*0)*10*1";

/// Relations satisfied by the number of unbordered factors of each length
/// in Thue-Morse.
pub const CONJECTURED_RELATIONS: [&str; 9] = [
    "f(4n+1) = f(2n+1)",
    "f(8n+2) = f(2n+1) - 8f(4n) + f(4n+3) + 4f(8n)",
    "f(8n+3) = 2f(2n) - f(2n+1) + 5f(4n) + f(4n+2) - 3f(8n)",
    "f(8n+4) = -4f(4n) + 2f(4n+2) + 2f(8n)",
    "f(8n+6) = 2f(2n) - f(2n+1) + f(4n) + f(4n+2) + f(4n+3) - f(8n)",
    "f(16n) = -2f(4n) + 3f(8n)",
    "f(16n+7) = -2f(2n) + f(2n+1) - 5f(4n) + f(4n+2) + 3f(8n)",
    "f(16n+8) = -8f(4n) + 4f(4n+2) + 4f(8n)",
    "f(16n+15) = -8f(4n) + 2f(4n+3) + 4f(8n) + f(8n+7)",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureVerdict {
    pub equivalent: bool,
    /// Least length on which the two sides disagree.
    pub counterexample: Option<u64>,
}

/// Compares the lengths with no unbordered factor of `x` against the
/// lengths matched by `pattern` (msd first, in the base of `x`).
pub fn borderless_lengths_conjecture(x: &Dfao, pattern: &str) -> Result<ConjectureVerdict> {
    let claimed = regex_values(pattern, x.base())?;
    let actual = unbordered_characteristic(x)?.level_set(0);
    let diff = actual.product(&claimed, crate::automata::BoolOp::Xor)?.canonical_only();
    let counterexample = match diff.shortest_accepted() {
        Some(w) => {
            // shortest canonical word may not be the least value; scan values of that length
            let len = w.len() as u32;
            let k = x.base() as u64;
            let least = match len {
                0 => Some(0),
                1..=20 if k.pow(len) <= 1 << 20 => {
                    (k.pow(len - 1)..k.pow(len)).find(|&n| diff.accepts_values(&[n]).unwrap_or(false))
                }
                _ => None,
            };
            Some(match least {
                Some(n) => n,
                None => decode_lsd(&w)?,
            })
        }
        None => None,
    };
    Ok(ConjectureVerdict { equivalent: counterexample.is_none(), counterexample })
}

/// Verifies each relation of `relations` against the series `f`.
pub fn check_relations(f: &LinRep<Rat>, relations: &[&str]) -> Result<Vec<(Recurrence, bool)>> {
    relations
        .iter()
        .map(|r| {
            let rec = Recurrence::parse(r, f.base())?;
            let ok = rec.verify(f)?;
            Ok((rec, ok))
        })
        .collect()
}
