use std::collections::HashSet;

use super::*;
use crate::semiring::NatInf;
use crate::seqgen::{periodic, powers_characteristic, thue_morse};

const PREFIX: usize = 1 << 12;

fn tm_word(len: usize) -> Vec<u32> {
    let mut w = vec![0u32];
    while w.len() < len {
        w = w.iter().flat_map(|&c| [c, 1 - c]).collect();
    }
    w.truncate(len);
    w
}

fn fin(c: &Counting, n: u64) -> u64 {
    match c.evaluate(n) {
        NatInf::Fin(v) => v.try_into().expect("small"),
        NatInf::Inf => panic!("infinite value at {n}"),
    }
}

/// An infinite engine value must come with long witnesses in the scan.
fn agrees(c: &Counting, n: u64, scan: u64, longest: usize) -> bool {
    match c.evaluate(n) {
        NatInf::Fin(v) => v == scan.into(),
        NatInf::Inf => longest > 100,
    }
}

fn factors(w: &[u32], n: usize) -> HashSet<&[u32]> {
    w.windows(n.max(1)).map(|f| &f[..n]).collect()
}

fn is_pal(f: &[u32]) -> bool {
    f.iter().eq(f.iter().rev())
}

fn bordered(f: &[u32]) -> bool {
    (1..f.len()).any(|l| f[..l] == f[f.len() - l..])
}

#[test]
fn factor_counts_match_scans() {
    let w = tm_word(PREFIX);
    let tm = thue_morse();
    let sub = measure(&tm, &MeasureKind::SubwordComplexity, None).unwrap();
    let pal = measure(&tm, &MeasureKind::PalindromeComplexity, None).unwrap();
    let unb = measure(&tm, &MeasureKind::UnborderedCount, None).unwrap();
    for n in 0..40 {
        let fs = factors(&w, n);
        assert_eq!(fin(&sub, n as u64), fs.len() as u64, "subword n={n}");
        assert_eq!(fin(&pal, n as u64), fs.iter().filter(|f| is_pal(f)).count() as u64, "pal n={n}");
        assert_eq!(fin(&unb, n as u64), fs.iter().filter(|f| !bordered(f)).count() as u64, "unb n={n}");
    }
}

#[test]
fn unbordered_count_table() {
    let unb = measure(&thue_morse(), &MeasureKind::UnborderedCount, None).unwrap();
    let got: Vec<u64> = (0..=16).map(|n| fin(&unb, n)).collect();
    assert_eq!(got, vec![1, 2, 2, 4, 2, 4, 6, 0, 4, 4, 4, 4, 12, 0, 4, 4, 8]);
}

#[test]
fn borderless_conjecture_and_relations() {
    let tm = thue_morse();
    let v = borderless_lengths_conjecture(&tm, CONJECTURED_BORDERLESS_REGEX).unwrap();
    assert!(v.equivalent);
    assert_eq!(v.counterexample, None);
    let wrong = borderless_lengths_conjecture(&tm, "1(01*0)*1").unwrap();
    assert!(!wrong.equivalent);
    let n = wrong.counterexample.unwrap();
    let w = tm_word(PREFIX);
    let has_unb = factors(&w, n as usize).iter().any(|f| !bordered(f));
    let s = format!("{n:b}");
    let msd_match = regex_values("1(01*0)*1", 2).unwrap().accepts_values(&[n]).unwrap();
    assert_ne!(!has_unb, msd_match, "n = {n} ({s}) is a genuine disagreement");

    let f = measure(&tm, &MeasureKind::UnborderedCount, None).unwrap().finite_series().unwrap().to_rat();
    for (rec, ok) in check_relations(&f, &CONJECTURED_RELATIONS).unwrap() {
        assert!(ok, "{rec}");
    }
    let bad = check_relations(&f, &["f(4n+1) = f(2n)"]).unwrap();
    assert!(!bad[0].1);
}

#[test]
fn regex_values_match_msd_strings() {
    let d = regex_values("1(01*0)*10*1", 2).unwrap();
    let re = |s: &str| {
        // direct backtracking check of 1(01*0)*10*1 on msd strings
        fn block(s: &[u8]) -> bool {
            // (01*0)* followed by 10*1
            if s.first() == Some(&b'1') {
                let rest = &s[1..];
                let z = rest.iter().take_while(|&&c| c == b'0').count();
                if rest.len() == z + 1 && rest[z] == b'1' {
                    return true;
                }
            }
            if s.first() == Some(&b'0') {
                let ones = s[1..].iter().take_while(|&&c| c == b'1').count();
                if s.len() > 1 + ones && s[1 + ones] == b'0' {
                    return block(&s[2 + ones..]);
                }
            }
            false
        }
        s.starts_with('1') && block(&s.as_bytes()[1..])
    };
    for n in 0..4096u64 {
        assert_eq!(d.accepts_values(&[n]).unwrap(), re(&format!("{n:b}")), "n = {n}");
    }
    let powers = regex_values("10*", 2).unwrap();
    for n in 0..200u64 {
        assert_eq!(powers.accepts_values(&[n]).unwrap(), n.is_power_of_two());
    }
    assert!(regex_values("1(0", 2).is_err());
    assert!(regex_values("12", 2).is_err());
}

fn squares_at(w: &[u32], n: usize, anchor: Anchor) -> Vec<usize> {
    let mut out = Vec::new();
    for l in 1..w.len() / 2 {
        let start = match anchor {
            Anchor::Begin => n as i64,
            Anchor::Center => n as i64 - l as i64,
            Anchor::End => n as i64 + 1 - 2 * l as i64,
        };
        if start < 0 || start as usize + 2 * l > w.len() {
            continue;
        }
        let s = start as usize;
        if w[s..s + l] == w[s + l..s + 2 * l] {
            out.push(l);
        }
    }
    out
}

fn palindromes_at(w: &[u32], n: usize, anchor: Anchor) -> Vec<usize> {
    let mut out = Vec::new();
    for len in 1..w.len() / 2 {
        let starts: Vec<i64> = match anchor {
            Anchor::Begin => vec![n as i64],
            Anchor::End => vec![n as i64 + 1 - len as i64],
            Anchor::Center => {
                if len % 2 == 1 {
                    vec![n as i64 - (len as i64 - 1) / 2]
                } else {
                    vec![n as i64 - len as i64 / 2]
                }
            }
        };
        for s in starts {
            if s >= 0 && (s as usize) + len <= w.len() && is_pal(&w[s as usize..s as usize + len]) {
                out.push(len);
            }
        }
    }
    out
}

#[test]
fn positional_squares_and_palindromes() {
    let w = tm_word(PREFIX);
    let tm = thue_morse();
    for anchor in [Anchor::Begin, Anchor::Center, Anchor::End] {
        let sq = measure(&tm, &MeasureKind::SquareCountAt(anchor), None).unwrap();
        let lsq = measure(&tm, &MeasureKind::LongestSquareAt(anchor), None).unwrap();
        let pc = measure(&tm, &MeasureKind::PalindromeCountAt(anchor), None).unwrap();
        let lp = measure(&tm, &MeasureKind::LongestPalindromeAt(anchor), None).unwrap();
        let ind = indicator(&tm, IndicatorKind::Square, anchor).unwrap();
        for n in 0..64 {
            let s = squares_at(&w, n, anchor);
            assert_eq!(fin(&sq, n as u64), s.len() as u64, "{anchor} squares n={n}");
            assert_eq!(fin(&lsq, n as u64), s.iter().max().map_or(0, |l| 2 * l) as u64, "{anchor} n={n}");
            assert_eq!(ind.evaluate(n as u64), u32::from(!s.is_empty()));
            let p = palindromes_at(&w, n, anchor);
            let longest = p.iter().max().copied().unwrap_or(0);
            assert!(agrees(&pc, n as u64, p.len() as u64, longest), "{anchor} palindromes n={n}");
            assert!(agrees(&lp, n as u64, longest as u64, longest), "{anchor} n={n}");
        }
    }
}

#[test]
fn fractional_powers() {
    let w = tm_word(PREFIX);
    let tm = thue_morse();
    for (num, den) in [(2, 1), (3, 2), (5, 3)] {
        for anchor in [Anchor::Begin, Anchor::End] {
            let kind = MeasureKind::LongestFractionalPowerAt { anchor, num, den };
            let c = measure(&tm, &kind, None).unwrap();
            for n in 0..48usize {
                // for each period, the longest run with that period from the anchor
                let mut best = 0;
                for d in 1..1500usize {
                    let at = |m: usize| match anchor {
                        Anchor::Begin => w.get(n + m).copied(),
                        _ => n.checked_sub(m).map(|p| w[p]),
                    };
                    let mut len = 0;
                    while let (Some(a), Some(b)) = (at(len), at(len + d)) {
                        if a != b {
                            break;
                        }
                        len += 1;
                    }
                    let available = if anchor == Anchor::Begin { w.len() - n } else { n + 1 };
                    let run = (len + d).min(available);
                    if den * run as u64 >= num * d as u64 && run >= d {
                        best = best.max(run);
                    }
                }
                assert!(agrees(&c, n as u64, best as u64, best), "{kind} n={n}");
            }
        }
    }
}

#[test]
fn window_functions() {
    let w = tm_word(PREFIX);
    let tm = thue_morse();
    let r = measure(&tm, &MeasureKind::RecurrenceR, None).unwrap();
    let a = measure(&tm, &MeasureKind::AppearanceA, None).unwrap();
    let s = measure(&tm, &MeasureKind::SeparatorS, None).unwrap();
    let i = measure(&tm, &MeasureKind::RepetitivityI, None).unwrap();
    for n in 0..16usize {
        let all = factors(&w, n);
        // R: least t such that every window of length t in the prefix contains all factors
        let mut rn = 0;
        for start in 0..PREFIX / 4 {
            let mut seen = HashSet::new();
            let mut t = n;
            while seen.len() < all.len() {
                seen.insert(&w[start + t - n..start + t]);
                t += 1;
            }
            let t = if n == 0 { 0 } else { t - 1 };
            rn = rn.max(t);
        }
        assert_eq!(fin(&r, n as u64), rn as u64, "R({n})");
        let an = all.iter().map(|f| w.windows(n.max(1)).position(|g| &g[..n] == *f).unwrap() + n).max().unwrap();
        assert_eq!(fin(&a, n as u64), an as u64, "A({n})");
        let sn = if n == 0 {
            0
        } else {
            (0..).find(|&l| !(0..n).any(|j| w[j..j + l] == w[n..n + l])).unwrap()
        };
        assert_eq!(fin(&s, n as u64), sn as u64, "S({n})");
        let mut gap = usize::MAX;
        for p in 0..PREFIX / 2 {
            if let Some(d) = (1..PREFIX / 2).find(|&d| w[p..p + n] == w[p + d..p + d + n]) {
                gap = gap.min(d);
            }
        }
        assert_eq!(fin(&i, n as u64), gap as u64, "I({n})");
    }
}

#[test]
fn permutation_complexity_matches_suffix_orders() {
    let w = tm_word(PREFIX);
    let tm = thue_morse();
    let c = measure(&tm, &MeasureKind::PermutationComplexity, None).unwrap();
    let order = permutation_order(&tm).unwrap();
    let less = |i: usize, j: usize| w[i..i + 256] < w[j..j + 256];
    for i in 0..20u64 {
        for j in 0..20u64 {
            assert_eq!(order.accepts_values(&[i, j]).unwrap(), i != j && less(i as usize, j as usize));
        }
    }
    for n in 0..12usize {
        let mut perms = HashSet::new();
        for i in 0..PREFIX / 4 {
            let p: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| less(i + a, i + b)).collect()).collect();
            perms.insert(p);
        }
        assert_eq!(fin(&c, n as u64), perms.len() as u64, "n = {n}");
    }
}

#[test]
fn two_sequence_measures() {
    let w = tm_word(PREFIX);
    let tm = thue_morse();
    let p = periodic(2, &[0, 0, 1, 1, 0, 1]).unwrap();
    let pw = p.prefix(PREFIX);
    let only = measure(&tm, &MeasureKind::FactorsInXNotY, Some(&p)).unwrap();
    let both = measure(&tm, &MeasureKind::FactorsInBoth, Some(&p)).unwrap();
    for n in 0..20usize {
        let fx = factors(&w, n);
        let fy = factors(&pw, n);
        assert_eq!(fin(&only, n as u64), fx.difference(&fy).count() as u64, "n = {n}");
        assert_eq!(fin(&both, n as u64), fx.intersection(&fy).count() as u64, "n = {n}");
    }
    assert!(measure(&tm, &MeasureKind::FactorsInBoth, None).is_err());
}

#[test]
fn recurrent_factors() {
    let x = powers_characteristic(2).unwrap();
    let c = measure(&x, &MeasureKind::RecurrentFactorCount, None).unwrap();
    // 0^n and the factors with a single 1 recur
    for n in 0..10 {
        assert_eq!(fin(&c, n), n + 1);
    }
    let tm = measure(&thue_morse(), &MeasureKind::RecurrentFactorCount, None).unwrap();
    let sub = measure(&thue_morse(), &MeasureKind::SubwordComplexity, None).unwrap();
    for n in 0..20 {
        assert_eq!(fin(&tm, n), fin(&sub, n));
    }
}

#[test]
fn indicators_match_scans() {
    let w = tm_word(PREFIX);
    let tm = thue_morse();
    let ob = indicator(&tm, IndicatorKind::Overlap, Anchor::Begin).unwrap();
    let oe = indicator(&tm, IndicatorKind::Overlap, Anchor::End).unwrap();
    assert!(indicator(&tm, IndicatorKind::Overlap, Anchor::Center).is_err());
    for i in 0..64 {
        assert_eq!(ob.evaluate(i), 0);
        assert_eq!(oe.evaluate(i), 0);
    }
    let x = powers_characteristic(2).unwrap();
    let xw = x.prefix(PREFIX);
    let ob = indicator(&x, IndicatorKind::Overlap, Anchor::Begin).unwrap();
    let oe = indicator(&x, IndicatorKind::Overlap, Anchor::End).unwrap();
    let overlap = |f: &[u32]| f.len() >= 3 && f.len() % 2 == 1 && (f.len() / 2..f.len()).all(|m| f[m] == f[m - f.len() / 2]);
    for i in 0..64usize {
        let begin = (3..200).any(|len| overlap(&xw[i..i + len]));
        let end = (3..=i + 1).any(|len| overlap(&xw[i + 1 - len..=i]));
        assert_eq!(ob.evaluate(i as u64), u32::from(begin), "i = {i}");
        assert_eq!(oe.evaluate(i as u64), u32::from(end), "i = {i}");
    }
    let pal = indicator(&tm, IndicatorKind::Palindrome, Anchor::Center).unwrap();
    let unb = indicator(&tm, IndicatorKind::Unbordered, Anchor::End).unwrap();
    for i in 0..64 {
        assert_eq!(pal.evaluate(i), 1);
        assert_eq!(unb.evaluate(i), 1);
    }
    let _ = w;
}

#[test]
fn structural_properties() {
    let tm = thue_morse();
    assert!(!has_unbounded_exponent(&tm).unwrap());
    assert!(has_unbounded_exponent(&periodic(2, &[0, 1]).unwrap()).unwrap());
    assert!(has_unbounded_exponent(&powers_characteristic(2).unwrap()).unwrap());
    assert!(has_arbitrarily_large_unbordered(&tm).unwrap());
    assert!(!has_arbitrarily_large_unbordered(&periodic(2, &[0, 1]).unwrap()).unwrap());

    let f = recurrence_flags(&tm).unwrap();
    assert_eq!(f, RecurrenceFlags { recurrent: true, uniformly_recurrent: true, ultimately_periodic: false });
    let f = recurrence_flags(&powers_characteristic(2).unwrap()).unwrap();
    assert_eq!(f, RecurrenceFlags { recurrent: false, uniformly_recurrent: false, ultimately_periodic: false });
    let f = recurrence_flags(&periodic(2, &[0, 0, 1]).unwrap()).unwrap();
    assert_eq!(f, RecurrenceFlags { recurrent: true, uniformly_recurrent: true, ultimately_periodic: true });
}

#[test]
fn unbordered_characteristic_matches_scan() {
    let w = tm_word(PREFIX);
    let c = unbordered_characteristic(&thue_morse()).unwrap();
    for n in 0..48usize {
        let any = factors(&w, n).iter().any(|f| !bordered(f));
        assert_eq!(c.evaluate(n as u64), u32::from(any), "n = {n}");
    }
}

#[test]
fn factor_sets() {
    let tm = thue_morse();
    let comp = tm.map_outputs(|v| 1 - v);
    let r = factor_set_compare(&tm, &comp).unwrap();
    assert!(r.equal());
    assert!(r.distinguishing.is_none());
    assert_eq!(r.bound.to_string(), "2^2^2^(2*2^2)");

    let p = periodic(2, &[0, 1, 1]).unwrap();
    let r = factor_set_compare(&tm, &p).unwrap();
    assert!(!r.x_in_y && !r.y_in_x);
    let d = r.distinguishing.unwrap();
    let w = tm_word(PREFIX);
    let pw = p.prefix(PREFIX);
    let (from, other) = if d.in_x { (&w, &pw) } else { (&pw, &w) };
    let n = d.length as usize;
    assert_eq!(&from[d.position as usize..d.position as usize + n], &d.factor[..]);
    assert!(!factors(other, n).contains(&d.factor[..]));
    // nothing shorter distinguishes
    for m in 0..n {
        assert_eq!(factors(&w, m), factors(&pw, m), "m = {m}");
    }
}

#[test]
fn linear_bounds() {
    let tm = thue_morse();
    let sub = measure(&tm, &MeasureKind::SubwordComplexity, None).unwrap();
    match linear_complexity_check(&sub).unwrap() {
        LinearVerdict::Bounded { slope, intercept } => {
            for n in 0..200u64 {
                assert!(num_bigint::BigUint::from(fin(&sub, n)) <= &slope * n + &intercept);
            }
        }
        LinearVerdict::Unbounded => panic!("finite count"),
    }
    let rep = crate::regseq::representation_count(&[0, 1], 2).unwrap();
    assert!(linear_complexity_check(&rep).is_err());
    let env = crate::logic::Env::new(2).unwrap();
    let p = env.relation("i = i & n = n", &["n", "i"]).unwrap();
    let c = crate::regseq::count_parameter(&p).unwrap();
    assert_eq!(linear_complexity_check(&c).unwrap(), LinearVerdict::Unbounded);
}

#[test]
fn kind_names_round_trip() {
    for name in MeasureKind::names() {
        let text = if *name == "longest-fractional-power-at" { format!("{name}:end:5/2") } else { name.to_string() };
        let k: MeasureKind = text.parse().unwrap();
        assert_eq!(k.name(), *name);
        let again: MeasureKind = k.to_string().parse().unwrap();
        assert_eq!(again, k);
    }
    assert_eq!("square-count-at:center".parse::<MeasureKind>().unwrap(), MeasureKind::SquareCountAt(Anchor::Center));
    assert!("longest-fractional-power-at".parse::<MeasureKind>().is_err());
    assert!("longest-fractional-power-at:center:2/1".parse::<MeasureKind>().is_err());
    assert!("subword-complexity:begin".parse::<MeasureKind>().is_err());
    assert!("nonsense".parse::<MeasureKind>().is_err());
}
