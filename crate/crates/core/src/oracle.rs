//! Brute-force reference values computed from a finite prefix.
//!
//! Everything here works on plain slices with direct scans, independent of
//! the automata machinery, so the two can check each other. Answers are
//! only given for `n` up to the certified bound of the prefix.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use crate::analyses::{Anchor, MeasureKind};
use crate::error::{Error, Result};

/// Default ratio of prefix length to the largest certified `n`.
pub const SAFETY_FACTOR: usize = 100;

/// A prefix of `x` (and of `y` for two-sequence kinds) with the largest
/// `n` for which answers are trusted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixContext {
    word: Vec<u32>,
    other: Option<Vec<u32>>,
    certified: u64,
}

impl PrefixContext {
    pub fn new(word: Vec<u32>) -> PrefixContext {
        let certified = (word.len() / SAFETY_FACTOR) as u64;
        PrefixContext { word, other: None, certified }
    }

    pub fn with_other(mut self, other: Vec<u32>) -> PrefixContext {
        self.other = Some(other);
        self
    }

    /// Overrides the certified bound; it never exceeds the prefix length.
    pub fn with_certified(mut self, n: u64) -> PrefixContext {
        self.certified = n.min(self.word.len() as u64);
        self
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn certified(&self) -> u64 {
        self.certified
    }
}

fn windows(w: &[u32], n: usize) -> impl Iterator<Item = &[u32]> {
    (0..=w.len().saturating_sub(n)).map(move |i| &w[i..i + n])
}

fn factor_set(w: &[u32], n: usize) -> HashSet<&[u32]> {
    windows(w, n).collect()
}

fn is_palindrome(f: &[u32]) -> bool {
    (0..f.len() / 2).all(|m| f[m] == f[f.len() - 1 - m])
}

fn has_border(f: &[u32]) -> bool {
    (1..f.len()).any(|l| f[..l] == f[f.len() - l..])
}

fn has_period(f: &[u32], d: usize) -> bool {
    (d..f.len()).all(|m| f[m] == f[m - d])
}

/// Reference value of `kind` at `n`.
///
/// Positional kinds are only answered for the `end` anchor, where every
/// candidate lies inside `x[0..=n]`; for other anchors a prefix cannot rule
/// out longer objects.
pub fn brute(kind: &MeasureKind, ctx: &PrefixContext, n: u64) -> Result<u64> {
    if n > ctx.certified {
        return Err(Error::NotCertified { n, certified: ctx.certified });
    }
    let w = &ctx.word[..];
    let len = n as usize;
    use MeasureKind::*;
    if let Some(anchor) = kind.anchor() {
        if anchor != Anchor::End {
            return Err(Error::Invalid(format!("{kind} is not decidable from a prefix; use the end anchor")));
        }
    }
    let value = match *kind {
        SubwordComplexity => factor_set(w, len).len(),
        PalindromeComplexity => factor_set(w, len).into_iter().filter(|f| is_palindrome(f)).count(),
        UnborderedCount => factor_set(w, len).into_iter().filter(|f| !has_border(f)).count(),
        SquareCountAt(_) => (1..=(len + 1) / 2).filter(|&l| w[len + 1 - 2 * l..=len - l] == w[len + 1 - l..=len]).count(),
        LongestSquareAt(_) => (1..=(len + 1) / 2)
            .filter(|&l| w[len + 1 - 2 * l..=len - l] == w[len + 1 - l..=len])
            .map(|l| 2 * l)
            .max()
            .unwrap_or(0),
        PalindromeCountAt(_) => (1..=len + 1).filter(|&l| is_palindrome(&w[len + 1 - l..=len])).count(),
        LongestPalindromeAt(_) => (1..=len + 1).filter(|&l| is_palindrome(&w[len + 1 - l..=len])).max().unwrap_or(0),
        LongestFractionalPowerAt { num, den, .. } => (1..=len + 1)
            .filter(|&l| {
                let f = &w[len + 1 - l..=len];
                (1..=l).any(|d| den * l as u64 >= num * d as u64 && has_period(f, d))
            })
            .max()
            .unwrap_or(0),
        RecurrentFactorCount => {
            // bounded stand-in for "occurs infinitely often": occurs in the last half
            let late = factor_set(&w[w.len() / 2..], len);
            factor_set(w, len).into_iter().filter(|f| late.contains(f)).count()
        }
        FactorsInXNotY | FactorsInBoth => {
            let y = ctx.other.as_ref().ok_or_else(|| Error::Invalid(format!("{kind} needs a second prefix")))?;
            let fy = factor_set(y, len);
            let fx = factor_set(w, len);
            let shared = fx.iter().filter(|f| fy.contains(*f)).count();
            if *kind == FactorsInBoth {
                shared
            } else {
                fx.len() - shared
            }
        }
        RecurrenceR => recurrence_window(w, len),
        AppearanceA => {
            let mut first: HashMap<&[u32], usize> = HashMap::new();
            for (i, f) in windows(w, len).enumerate() {
                first.entry(f).or_insert(i);
            }
            first.values().map(|&i| i + len).max().unwrap_or(0)
        }
        SeparatorS => (0..w.len() - len)
            .find(|&l| !(0..len).any(|j| w[j..j + l] == w[len..len + l]))
            .ok_or_else(|| Error::NotCertified { n, certified: ctx.certified })?,
        RepetitivityI => {
            let mut last: HashMap<&[u32], usize> = HashMap::new();
            let mut best = usize::MAX;
            for (i, f) in windows(w, len).enumerate() {
                if let Some(p) = last.insert(f, i) {
                    best = best.min(i - p);
                }
            }
            if best == usize::MAX {
                return Err(Error::NotCertified { n, certified: ctx.certified });
            }
            best
        }
        PermutationComplexity => permutation_patterns(w, len).ok_or_else(|| Error::NotCertified { n, certified: ctx.certified })?,
    };
    Ok(value as u64)
}

/// Smallest `t` such that every window of length `t` contains every
/// length-`n` factor; windows running off the prefix are skipped.
fn recurrence_window(w: &[u32], n: usize) -> usize {
    let all = factor_set(w, n);
    if n == 0 {
        return 0;
    }
    let mut worst = 0;
    for start in 0..w.len() {
        let mut seen: HashSet<&[u32]> = HashSet::new();
        let mut end = start + n;
        while end <= w.len() {
            seen.insert(&w[end - n..end]);
            if seen.len() == all.len() {
                worst = worst.max(end - start);
                break;
            }
            end += 1;
        }
        if end > w.len() {
            break;
        }
    }
    worst
}

/// Compares the suffixes at `i` and `j` as far as the prefix allows.
fn compare_suffixes(w: &[u32], i: usize, j: usize) -> Option<Ordering> {
    if i == j {
        return Some(Ordering::Equal);
    }
    let (a, b) = (&w[i..], &w[j..]);
    a.iter().zip(b).map(|(x, y)| x.cmp(y)).find(|o| o.is_ne())
}

/// Number of distinct orderings of `n` consecutive suffixes, or `None`
/// when some comparison is not settled inside the prefix.
fn permutation_patterns(w: &[u32], n: usize) -> Option<usize> {
    let mut patterns: HashSet<Vec<usize>> = HashSet::new();
    let limit = w.len() / 2;
    for i in 0..limit.saturating_sub(n) {
        let mut order: Vec<usize> = (0..n).collect();
        let mut undecided = false;
        order.sort_by(|&a, &b| {
            compare_suffixes(w, i + a, i + b).unwrap_or_else(|| {
                undecided = true;
                Ordering::Equal
            })
        });
        if undecided {
            return None;
        }
        patterns.insert(order);
    }
    Some(patterns.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tm(len: usize) -> Vec<u32> {
        (0..len).map(|i: usize| i.count_ones() % 2).collect()
    }

    #[test]
    fn table_values() {
        let ctx = PrefixContext::new(tm(10_000));
        let f: Vec<u64> = (1..=16).map(|n| brute(&MeasureKind::UnborderedCount, &ctx, n).unwrap()).collect();
        assert_eq!(f, vec![2, 2, 4, 2, 4, 6, 0, 4, 4, 4, 4, 12, 0, 4, 4, 8]);
        assert_eq!(brute(&MeasureKind::SubwordComplexity, &ctx, 0).unwrap(), 1);
        assert_eq!(brute(&MeasureKind::SubwordComplexity, &ctx, 1).unwrap(), 2);
        assert_eq!(brute(&MeasureKind::SubwordComplexity, &ctx, 2).unwrap(), 4);
        assert_eq!(brute(&MeasureKind::SubwordComplexity, &ctx, 3).unwrap(), 6);
    }

    #[test]
    fn refuses_beyond_certification() {
        let ctx = PrefixContext::new(tm(1000));
        assert_eq!(ctx.certified(), 10);
        assert_eq!(
            brute(&MeasureKind::SubwordComplexity, &ctx, 11),
            Err(Error::NotCertified { n: 11, certified: 10 })
        );
        assert!(brute(&MeasureKind::SquareCountAt(Anchor::Begin), &ctx, 1).is_err());
        assert!(brute(&MeasureKind::FactorsInBoth, &ctx, 1).is_err());
    }

    #[test]
    fn window_functions_on_a_periodic_word() {
        // (001)^ω: every window of length n + 2 holds all three factors
        let w: Vec<u32> = (0..3000).map(|i| u32::from(i % 3 == 2)).collect();
        let ctx = PrefixContext::new(w);
        for n in 1..10 {
            assert_eq!(brute(&MeasureKind::SubwordComplexity, &ctx, n).unwrap(), if n == 1 { 2 } else { 3 });
            assert_eq!(brute(&MeasureKind::RecurrenceR, &ctx, n).unwrap(), n + 2);
            assert_eq!(brute(&MeasureKind::AppearanceA, &ctx, n).unwrap(), n + 2);
            assert_eq!(brute(&MeasureKind::RepetitivityI, &ctx, n).unwrap(), if n == 1 { 1 } else { 3 });
        }
        assert_eq!(brute(&MeasureKind::SeparatorS, &ctx, 0).unwrap(), 0);
        // x[3..] = 001001... occurs at 0 forever
        assert!(brute(&MeasureKind::SeparatorS, &ctx, 3).is_err());
    }

    #[test]
    fn subword_complexity_grows_with_the_prefix() {
        for n in 0..8 {
            let counts: Vec<u64> = [200, 400, 800, 1600]
                .iter()
                .map(|&len| brute(&MeasureKind::SubwordComplexity, &PrefixContext::new(tm(len)).with_certified(8), n).unwrap())
                .collect();
            assert!(counts.windows(2).all(|p| p[0] <= p[1]), "n = {n}: {counts:?}");
        }
    }

    #[test]
    fn end_anchored_kinds() {
        let ctx = PrefixContext::new(tm(1000));
        // x = 0110100110...; x[1..=2] = 11 and x[2..=5] = 1010
        assert_eq!(brute(&MeasureKind::SquareCountAt(Anchor::End), &ctx, 2).unwrap(), 1);
        assert_eq!(brute(&MeasureKind::LongestSquareAt(Anchor::End), &ctx, 5).unwrap(), 4);
        assert_eq!(brute(&MeasureKind::LongestPalindromeAt(Anchor::End), &ctx, 3).unwrap(), 4);
        let frac = MeasureKind::LongestFractionalPowerAt { anchor: Anchor::End, num: 3, den: 2 };
        // x[0..=4] = 01101 has period 3
        assert_eq!(brute(&frac, &ctx, 4).unwrap(), 5);
    }
}
