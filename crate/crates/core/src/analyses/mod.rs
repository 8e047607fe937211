//! Ready-made predicates for the usual combinatorial questions about an
//! automatic sequence, and the counting sequences built from them.
//!
//! Every measure is compiled from a first-order predicate over the
//! sequence bound as `x` (and `y` for two-sequence kinds), then counted
//! with [`count_parameter`] or, for "longest"/window-type quantities,
//! [`count_measure`].

mod conjecture;
mod properties;
mod regex;

use std::fmt;
use std::str::FromStr;

pub use conjecture::{
    borderless_lengths_conjecture, check_relations, ConjectureVerdict, CONJECTURED_BORDERLESS_REGEX,
    CONJECTURED_RELATIONS,
};
pub use properties::{
    factor_set_compare, has_arbitrarily_large_unbordered, has_unbounded_exponent, indicator,
    linear_complexity_check, permutation_order, recurrence_flags, unbordered_characteristic,
    Distinguishing, FactorComparison, IndicatorKind, LinearVerdict, RecurrenceFlags, TowerBound,
};
pub use regex::regex_values;

use crate::error::{Error, Result};
use crate::logic::Env;
use crate::regseq::{count_measure, count_parameter, Counting};
use crate::seqgen::Dfao;

/// Where a positional object sits relative to the position `n`.
///
/// `Center` for squares means the two halves meet at `n` (the first half
/// ends at `n - 1`); for palindromes it covers odd lengths centered on
/// the letter at `n` and even lengths whose halves meet at `n`. `End`
/// means the object's last letter is at `n`, so it fits in `x[0..n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Anchor {
    Begin,
    Center,
    End,
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Anchor::Begin => "begin",
            Anchor::Center => "center",
            Anchor::End => "end",
        })
    }
}

impl FromStr for Anchor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Anchor> {
        match s {
            "begin" => Ok(Anchor::Begin),
            "center" => Ok(Anchor::Center),
            "end" => Ok(Anchor::End),
            _ => Err(Error::Invalid(format!("unknown anchor `{s}` (begin, center, end)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    SubwordComplexity,
    PalindromeComplexity,
    UnborderedCount,
    SquareCountAt(Anchor),
    LongestSquareAt(Anchor),
    PalindromeCountAt(Anchor),
    LongestPalindromeAt(Anchor),
    /// Longest factor at `n` whose exponent (length over period) is at
    /// least `num/den`.
    LongestFractionalPowerAt { anchor: Anchor, num: u64, den: u64 },
    RecurrentFactorCount,
    FactorsInXNotY,
    FactorsInBoth,
    RecurrenceR,
    AppearanceA,
    SeparatorS,
    RepetitivityI,
    PermutationComplexity,
}

const NAMES: &[&str] = &[
    "subword-complexity",
    "palindrome-complexity",
    "unbordered-count",
    "square-count-at",
    "longest-square-at",
    "palindrome-count-at",
    "longest-palindrome-at",
    "longest-fractional-power-at",
    "recurrent-factor-count",
    "factors-in-x-not-y",
    "factors-in-both",
    "recurrence-R",
    "appearance-A",
    "separator-S",
    "repetitivity-I",
    "permutation-complexity",
];

impl MeasureKind {
    /// Kebab-case names accepted by [`FromStr`].
    pub fn names() -> &'static [&'static str] {
        NAMES
    }

    pub fn name(&self) -> &'static str {
        use MeasureKind::*;
        NAMES[match self {
            SubwordComplexity => 0,
            PalindromeComplexity => 1,
            UnborderedCount => 2,
            SquareCountAt(_) => 3,
            LongestSquareAt(_) => 4,
            PalindromeCountAt(_) => 5,
            LongestPalindromeAt(_) => 6,
            LongestFractionalPowerAt { .. } => 7,
            RecurrentFactorCount => 8,
            FactorsInXNotY => 9,
            FactorsInBoth => 10,
            RecurrenceR => 11,
            AppearanceA => 12,
            SeparatorS => 13,
            RepetitivityI => 14,
            PermutationComplexity => 15,
        }]
    }

    pub fn anchor(&self) -> Option<Anchor> {
        use MeasureKind::*;
        match *self {
            SquareCountAt(a) | LongestSquareAt(a) | PalindromeCountAt(a) | LongestPalindromeAt(a) => Some(a),
            LongestFractionalPowerAt { anchor, .. } => Some(anchor),
            _ => None,
        }
    }

    pub fn needs_second_sequence(&self) -> bool {
        matches!(self, MeasureKind::FactorsInXNotY | MeasureKind::FactorsInBoth)
    }

    /// Two-track predicate over `(n, witness)` and whether it describes a
    /// measure (`witness < m(n)`) rather than a set of witnesses to count.
    pub fn predicate(&self) -> Result<(String, bool)> {
        use MeasureKind::*;
        let first = first_occurrence("i", "n");
        Ok(match *self {
            SubwordComplexity => (first, false),
            PalindromeComplexity => (format!("(A m < n: x[i+m] = x[i+n-1-m]) & {first}"), false),
            UnborderedCount => (format!("{} & {first}", unbordered("i", "n")), false),
            SquareCountAt(a) => (square("n", "i", a), false),
            LongestSquareAt(a) => (format!("E l (2*l > i & {})", square("n", "l", a)), true),
            PalindromeCountAt(a) => (palindrome("n", "i", a), false),
            LongestPalindromeAt(a) => (format!("E l (l > i & {})", palindrome("n", "l", a)), true),
            LongestFractionalPowerAt { anchor, num, den } => {
                if den == 0 || num == 0 {
                    return Err(Error::Invalid("exponent must be a positive fraction".into()));
                }
                let start = match anchor {
                    Anchor::Begin => "n".to_string(),
                    Anchor::End => "n+1-l".to_string(),
                    Anchor::Center => return Err(Error::Invalid("fractional powers take begin or end".into())),
                };
                let fits = if anchor == Anchor::End { "l <= n+1 & " } else { "" };
                (
                    format!(
                        "E l E d (l > i & {fits}d >= 1 & {den}*l >= {num}*d & \
                         (A m (m + d < l) => x[{start}+m] = x[{start}+d+m]))"
                    ),
                    true,
                )
            }
            RecurrentFactorCount => (format!("{first} & (A j E k (k > j) & A m < n: x[k+m] = x[i+m])"), false),
            FactorsInXNotY => (format!("{first} & (A j E m < n: x[i+m] != y[j+m])"), false),
            FactorsInBoth => (format!("{first} & (E j A m < n: x[i+m] = y[j+m])"), false),
            RecurrenceR => (
                "E p E j A l ((l >= p & l + n <= p + i) => E m < n: x[l+m] != x[j+m])".to_string(),
                true,
            ),
            AppearanceA => ("E j A l (l + n <= i) => E m < n: x[l+m] != x[j+m]".to_string(), true),
            SeparatorS => ("A s (s <= i) => E j (j < n) & A m < s: x[n+m] = x[j+m]".to_string(), true),
            RepetitivityI => (
                "A p A j ((p < j & (A m < n: x[p+m] = x[j+m])) => j > p + i)".to_string(),
                true,
            ),
            PermutationComplexity => (
                "A j < i: E a < n: E b < n: ~(lt(i+a, i+b) <=> lt(j+a, j+b))".to_string(),
                false,
            ),
        })
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        if let Some(a) = self.anchor() {
            write!(f, ":{a}")?;
        }
        if let MeasureKind::LongestFractionalPowerAt { num, den, .. } = self {
            write!(f, ":{num}/{den}")?;
        }
        Ok(())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    /// `name[:anchor][:p/q]`; the anchor defaults to `begin`, and the
    /// exponent is required for `longest-fractional-power-at`.
    fn from_str(s: &str) -> Result<MeasureKind> {
        use MeasureKind::*;
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        let anchored = matches!(
            name,
            "square-count-at" | "longest-square-at" | "palindrome-count-at" | "longest-palindrome-at"
        );
        let fractional = name == "longest-fractional-power-at";
        let max_parts = usize::from(anchored || fractional) + usize::from(fractional);
        if rest.len() > max_parts {
            return Err(Error::Invalid(format!("measure `{name}` takes no parameter `{}`", rest.join(":"))));
        }
        let mut anchor = Anchor::Begin;
        let mut exponent = None;
        for p in &rest {
            if p.contains('/') {
                exponent = Some(*p);
            } else {
                anchor = p.parse()?;
            }
        }
        let kind = match name {
            "subword-complexity" => SubwordComplexity,
            "palindrome-complexity" => PalindromeComplexity,
            "unbordered-count" => UnborderedCount,
            "square-count-at" => SquareCountAt(anchor),
            "longest-square-at" => LongestSquareAt(anchor),
            "palindrome-count-at" => PalindromeCountAt(anchor),
            "longest-palindrome-at" => LongestPalindromeAt(anchor),
            "longest-fractional-power-at" => {
                let e = exponent.ok_or_else(|| Error::Invalid("longest-fractional-power-at needs an exponent p/q".into()))?;
                let (p, q) = e.split_once('/').expect("checked");
                let num = p.parse().map_err(|_| Error::Invalid(format!("bad exponent `{e}`")))?;
                let den = q.parse().map_err(|_| Error::Invalid(format!("bad exponent `{e}`")))?;
                if anchor == Anchor::Center {
                    return Err(Error::Invalid("fractional powers take begin or end".into()));
                }
                LongestFractionalPowerAt { anchor, num, den }
            }
            "recurrent-factor-count" => RecurrentFactorCount,
            "factors-in-x-not-y" => FactorsInXNotY,
            "factors-in-both" => FactorsInBoth,
            "recurrence-R" => RecurrenceR,
            "appearance-A" => AppearanceA,
            "separator-S" => SeparatorS,
            "repetitivity-I" => RepetitivityI,
            "permutation-complexity" => PermutationComplexity,
            _ => return Err(Error::Invalid(format!("unknown measure `{name}`"))),
        };
        if exponent.is_some() && !fractional {
            return Err(Error::Invalid(format!("measure `{name}` takes no exponent")));
        }
        Ok(kind)
    }
}

/// `x[i..i+n-1]` does not occur at any earlier position.
fn first_occurrence(i: &str, n: &str) -> String {
    format!("(A j < {i}: E m < {n}: x[{i}+m] != x[j+m])")
}

/// `x[i..i+n-1]` has no border.
fn unbordered(i: &str, n: &str) -> String {
    format!("(A l (l >= 1 & l < {n}) => E m < l: x[{i}+m] != x[{i}+{n}-l+m])")
}

/// A square with half-length `h` anchored at `p`.
fn square(p: &str, h: &str, anchor: Anchor) -> String {
    match anchor {
        Anchor::Begin => format!("({h} >= 1 & (A m < {h}: x[{p}+m] = x[{p}+{h}+m]))"),
        Anchor::Center => format!("({h} >= 1 & {h} <= {p} & (A m < {h}: x[{p}-{h}+m] = x[{p}+m]))"),
        Anchor::End => format!(
            "({h} >= 1 & 2*{h} <= {p}+1 & (A m < {h}: x[{p}+1-2*{h}+m] = x[{p}+1-{h}+m]))"
        ),
    }
}

/// A nonempty palindrome of length `len` anchored at `p`.
fn palindrome(p: &str, len: &str, anchor: Anchor) -> String {
    match anchor {
        Anchor::Begin => format!("({len} >= 1 & (A m < {len}: x[{p}+m] = x[{p}+{len}-1-m]))"),
        Anchor::Center => format!(
            "((E r ({len} = 2*r+1 & r <= {p} & (A m <= r: x[{p}-m] = x[{p}+m]))) | \
             (E r ({len} = 2*r & r >= 1 & r <= {p} & (A m < r: x[{p}-1-m] = x[{p}+m]))))"
        ),
        Anchor::End => format!(
            "({len} >= 1 & {len} <= {p}+1 & (A m < {len}: x[{p}+1-{len}+m] = x[{p}-m]))"
        ),
    }
}

/// Shift order: the suffix at `i` is lexicographically below the one at `j`.
pub(crate) const SHIFT_LESS: &str = "E t (A l < t: x[i+l] = x[j+l]) & x[i+t] < x[j+t]";

/// Counting sequence of `kind` in an environment where `x` (and `y` for
/// two-sequence kinds) are bound.
pub fn measure_in(env: &Env, kind: &MeasureKind) -> Result<Counting> {
    if kind.needs_second_sequence() {
        env.sequence("y").map_err(|_| Error::Invalid(format!("measure `{}` needs a second sequence y", kind.name())))?;
    }
    let (src, is_measure) = kind.predicate()?;
    let mut env = env.clone();
    if *kind == MeasureKind::PermutationComplexity {
        let lt = env.relation(SHIFT_LESS, &["i", "j"])?;
        env.bind_relation("lt", &lt)?;
    }
    let p = env.relation(&src, &["n", "i"])?;
    if is_measure {
        count_measure(&p)
    } else {
        count_parameter(&p)
    }
}

/// Counting sequence of `kind` for `x`, with `y` as the second sequence of
/// two-sequence kinds.
pub fn measure(x: &Dfao, kind: &MeasureKind, y: Option<&Dfao>) -> Result<Counting> {
    let mut env = Env::for_sequence(x);
    match (y, kind.needs_second_sequence()) {
        (Some(y), _) => env.bind_sequence("y", y)?,
        (None, true) => return Err(Error::Invalid(format!("measure `{}` needs a second sequence y", kind.name()))),
        (None, false) => {}
    }
    measure_in(&env, kind)
}

#[cfg(test)]
mod tests;
