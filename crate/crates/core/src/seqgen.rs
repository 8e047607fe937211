//! Automatic sequences as deterministic automata with output.

use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use crate::automata::{Alphabet, Dfa};
use crate::error::{Error, Result};
use crate::numeration::{check_base, DigitWord};
use crate::text::{content_lines, parse_err, parse_num, Header};

/// A k-automatic sequence: feed the lsd-first digits of `n`, read the output
/// of the state reached.
///
/// Outputs are naturals, ordered numerically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    base: u32,
    delta: Vec<u32>,
    initial: u32,
    outputs: Vec<u32>,
}

impl Dfao {
    /// Validates totality, ranges and padding stability.
    pub fn new(base: u32, delta: Vec<u32>, initial: u32, outputs: Vec<u32>) -> Result<Self> {
        check_base(base)?;
        let n = outputs.len();
        if n == 0 {
            return Err(Error::Invalid("a DFAO needs at least one state".into()));
        }
        if delta.len() != n * base as usize {
            let missing = delta.len().min(n * base as usize);
            return Err(Error::NotTotal { state: missing / base as usize, digit: (missing % base as usize) as u32 });
        }
        if let Some(&q) = delta.iter().find(|&&q| q as usize >= n) {
            return Err(Error::Invalid(format!("transition target {q} out of range")));
        }
        if initial as usize >= n {
            return Err(Error::Invalid(format!("initial state {initial} out of range")));
        }
        let dfao = Dfao { base, delta, initial, outputs };
        dfao.check_padding()?;
        Ok(dfao)
    }

    /// Reading a zero digit must never change the output of a reachable
    /// state, so every representation of `n` gives the same value.
    fn check_padding(&self) -> Result<()> {
        for q in self.reachable() {
            if self.output(self.step(q, 0)) != self.output(q) {
                return Err(Error::PaddingInstability(q as usize));
            }
        }
        Ok(())
    }

    fn reachable(&self) -> Vec<u32> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial as usize] = true;
        let mut i = 0;
        while i < order.len() {
            for d in 0..self.base {
                let r = self.step(order[i], d);
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    order.push(r);
                }
            }
            i += 1;
        }
        order
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn num_states(&self) -> usize {
        self.outputs.len()
    }

    pub fn initial(&self) -> u32 {
        self.initial
    }

    #[inline]
    pub fn step(&self, q: u32, digit: u32) -> u32 {
        self.delta[q as usize * self.base as usize + digit as usize]
    }

    pub fn output(&self, q: u32) -> u32 {
        self.outputs[q as usize]
    }

    /// Distinct output values, ascending.
    pub fn output_alphabet(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.reachable().iter().map(|&q| self.output(q)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// State reached on the canonical representation of `n`.
    pub fn state_of(&self, n: u64) -> u32 {
        let mut q = self.initial;
        let mut m = n;
        let k = self.base as u64;
        while m > 0 {
            q = self.step(q, (m % k) as u32);
            m /= k;
        }
        q
    }

    pub fn evaluate(&self, n: u64) -> u32 {
        self.output(self.state_of(n))
    }

    /// Value on an arbitrary, possibly padded, representation.
    pub fn evaluate_word(&self, w: &DigitWord) -> Result<u32> {
        if w.base() != self.base {
            return Err(Error::BaseMismatch(self.base, w.base()));
        }
        if w.arity() != 1 {
            return Err(Error::Arity { expected: 1, found: w.arity() });
        }
        Ok(self.output(w.digits().iter().fold(self.initial, |q, &d| self.step(q, d))))
    }

    /// `x[0..length]`.
    pub fn prefix(&self, length: usize) -> Vec<u32> {
        (0..length as u64).map(|n| self.evaluate(n)).collect()
    }

    /// Same automaton with outputs relabelled.
    pub fn map_outputs(&self, f: impl Fn(u32) -> u32) -> Dfao {
        let outputs = self.outputs.iter().map(|&o| f(o)).collect();
        Dfao { outputs, ..self.clone() }
    }

    /// Arity-1 automaton accepting the representations of `n` with `x[n] == value`.
    pub fn level_set(&self, value: u32) -> Dfa {
        let alphabet = Alphabet::new(self.base, 1).expect("base checked");
        let finals = self.outputs.iter().map(|&o| o == value).collect();
        Dfa::from_parts(alphabet, self.delta.clone(), self.initial, finals)
    }

    /// 0/1 sequence of a padding-closed arity-1 automaton.
    pub fn from_dfa(dfa: &Dfa) -> Result<Dfao> {
        if dfa.arity() != 1 {
            return Err(Error::Arity { expected: 1, found: dfa.arity() });
        }
        let delta = (0..dfa.num_states() as u32).flat_map(|q| dfa.row(q).to_vec()).collect();
        let outputs = (0..dfa.num_states() as u32).map(|q| dfa.is_final(q) as u32).collect();
        Dfao::new(dfa.base(), delta, dfa.initial(), outputs)
    }

    /// Minimal equivalent automaton, states in BFS order.
    pub fn minimize(&self) -> Dfao {
        let order = self.reachable();
        let mut id = vec![u32::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            id[q as usize] = i as u32;
        }
        let k = self.base as usize;
        let n = order.len();
        let succ = |i: usize, d: usize| id[self.step(order[i], d as u32) as usize] as usize;
        let mut class: Vec<u32> = {
            let mut ids: FxHashMap<u32, u32> = FxHashMap::default();
            order
                .iter()
                .map(|&q| {
                    let fresh = ids.len() as u32;
                    *ids.entry(self.output(q)).or_insert(fresh)
                })
                .collect()
        };
        let mut count = class.iter().max().map_or(0, |&c| c as usize + 1);
        loop {
            let mut ids: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
            let next: Vec<u32> = (0..n)
                .map(|i| {
                    let mut sig = Vec::with_capacity(k + 1);
                    sig.push(class[i]);
                    sig.extend((0..k).map(|d| class[succ(i, d)]));
                    let fresh = ids.len() as u32;
                    *ids.entry(sig).or_insert(fresh)
                })
                .collect();
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // renumber classes in BFS order from the initial class
        let mut rep = vec![usize::MAX; count];
        for i in (0..n).rev() {
            rep[class[i] as usize] = i;
        }
        let mut new_id = vec![u32::MAX; count];
        let mut queue = vec![class[0]];
        new_id[class[0] as usize] = 0;
        let mut h = 0;
        while h < queue.len() {
            let c = queue[h];
            for d in 0..k {
                let t = class[succ(rep[c as usize], d)];
                if new_id[t as usize] == u32::MAX {
                    new_id[t as usize] = queue.len() as u32;
                    queue.push(t);
                }
            }
            h += 1;
        }
        let mut delta = Vec::with_capacity(queue.len() * k);
        let mut outputs = Vec::with_capacity(queue.len());
        for &c in &queue {
            let r = rep[c as usize];
            outputs.push(self.output(order[r]));
            delta.extend((0..k).map(|d| new_id[class[succ(r, d)] as usize]));
        }
        Dfao { base: self.base, delta, initial: 0, outputs }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "dfao base={} states={} initial={} order=lsd\n",
            self.base,
            self.num_states(),
            self.initial
        );
        for (q, o) in self.outputs.iter().enumerate() {
            let _ = writeln!(out, "state {q} output {o}");
        }
        for q in 0..self.num_states() as u32 {
            for d in 0..self.base {
                let _ = writeln!(out, "{q} {d} {}", self.step(q, d));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Dfao> {
        let mut lines = content_lines(text);
        let (hl, first) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let (_, h) = Header::parse(hl, first, &["dfao"])?;
        let base: u32 = h.get("base")?;
        check_base(base)?;
        let states: usize = h.get("states")?;
        let initial: u32 = h.get("initial")?;
        if h.raw("order")? != "lsd" {
            return Err(parse_err(hl, "only order=lsd is supported"));
        }
        let k = base as usize;
        let mut outputs: Vec<Option<u32>> = vec![None; states];
        let mut delta: Vec<Option<u32>> = vec![None; states * k];
        for (line, s) in lines {
            let parts: Vec<&str> = s.split_whitespace().collect();
            let state = |p: &str| -> Result<usize> {
                let q: usize = parse_num(line, p, "state")?;
                if q >= states {
                    return Err(parse_err(line, format!("state {q} out of range")));
                }
                Ok(q)
            };
            match parts.as_slice() {
                ["state", q, "output", o] => {
                    let q = state(q)?;
                    if outputs[q].replace(parse_num(line, o, "output")?).is_some() {
                        return Err(parse_err(line, "duplicate output"));
                    }
                }
                [from, d, to] => {
                    let from = state(from)?;
                    let d: usize = parse_num(line, d, "digit")?;
                    if d >= k {
                        return Err(parse_err(line, format!("digit {d} out of range for base {base}")));
                    }
                    let to = state(to)? as u32;
                    if delta[from * k + d].replace(to).is_some() {
                        return Err(parse_err(line, "duplicate transition"));
                    }
                }
                _ => return Err(parse_err(line, "expected `state <q> output <o>` or `<from> <digit> <to>`")),
            }
        }
        let outputs = outputs
            .into_iter()
            .enumerate()
            .map(|(q, o)| o.ok_or_else(|| parse_err(hl, format!("state {q} has no output"))))
            .collect::<Result<Vec<u32>>>()?;
        let delta = delta
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or(Error::NotTotal { state: i / k, digit: (i % k) as u32 }))
            .collect::<Result<Vec<u32>>>()?;
        Dfao::new(base, delta, initial, outputs)
    }
}

/// The Thue–Morse sequence: parity of the binary digit sum.
pub fn thue_morse() -> Dfao {
    Dfao::new(2, vec![0, 1, 1, 0], 0, vec![0, 1]).expect("valid")
}

/// The constant sequence `c c c ...`.
pub fn constant(base: u32, c: u32) -> Result<Dfao> {
    Dfao::new(base, vec![0; base as usize], 0, vec![c])
}

/// The purely periodic sequence repeating `pattern`.
pub fn periodic(base: u32, pattern: &[u32]) -> Result<Dfao> {
    check_base(base)?;
    let p = pattern.len() as u64;
    if p == 0 {
        return Err(Error::Invalid("empty period".into()));
    }
    // state: (n mod p, k^len mod p)
    let mut ids: FxHashMap<(u64, u64), u32> = FxHashMap::default();
    let mut keys = vec![(0u64, 1 % p)];
    ids.insert(keys[0], 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let (r, w) = keys[i];
        for d in 0..base as u64 {
            let key = ((r + d * w) % p, (w * base as u64) % p);
            let fresh = keys.len() as u32;
            let id = *ids.entry(key).or_insert_with(|| {
                keys.push(key);
                fresh
            });
            delta.push(id);
        }
        i += 1;
    }
    let outputs = keys.iter().map(|&(r, _)| pattern[r as usize]).collect();
    Ok(Dfao::new(base, delta, 0, outputs)?.minimize())
}

/// Characteristic sequence of the powers `base^j`, `j >= 0`.
pub fn powers_characteristic(base: u32) -> Result<Dfao> {
    check_base(base)?;
    // 0: only zeros read, 1: exactly one digit 1 so far, 2: anything else
    let k = base as usize;
    let mut delta = vec![2u32; 3 * k];
    delta[0] = 0;
    delta[1] = 1;
    delta[k] = 1;
    Dfao::new(base, delta, 0, vec![0, 1, 0])
}

/// Characteristic sequence of the single index 0.
pub fn zero_characteristic(base: u32) -> Result<Dfao> {
    check_base(base)?;
    let k = base as usize;
    let mut delta = vec![1u32; 2 * k];
    delta[0] = 0;
    Dfao::new(base, delta, 0, vec![1, 0])
}

/// Looks up the built-in sequences by name.
pub fn builtin(name: &str) -> Option<Dfao> {
    match name {
        "tm" | "thue-morse" => Some(thue_morse()),
        "zero" => constant(2, 0).ok(),
        "period2" => periodic(2, &[0, 1]).ok(),
        "powers2" => powers_characteristic(2).ok(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeration::encode_lsd;

    fn tm_morphism(len: usize) -> Vec<u32> {
        let mut w = vec![0u32];
        while w.len() < len {
            w = w.iter().flat_map(|&c| [c, 1 - c]).collect();
        }
        w.truncate(len);
        w
    }

    #[test]
    fn thue_morse_values() {
        let tm = thue_morse();
        assert_eq!(tm.prefix(12), vec![0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1]);
        assert_eq!(tm.evaluate(0), 0);
        assert_eq!(tm.evaluate(27), 0);
        assert_eq!(tm.evaluate(1), 1);
        assert_eq!(tm.evaluate(2), 1);
        assert_eq!(tm.evaluate(1024), 1);
        assert_eq!(tm.prefix(0), Vec::<u32>::new());
        let p = tm.prefix(70);
        let window: String = p[39..70].iter().map(|d| d.to_string()).collect();
        assert_eq!(window, "0011010010110100110010110100101");
        assert_eq!(tm.prefix(10_000), tm_morphism(10_000));
    }

    #[test]
    fn padding_invariance() {
        let tm = thue_morse();
        for n in 0..1000 {
            let w = encode_lsd(n, 2).unwrap();
            for pads in 0..=3 {
                assert_eq!(tm.evaluate_word(&w.padded(pads)).unwrap(), tm.evaluate(n));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let tm = thue_morse();
        let text = tm.to_text();
        let back = Dfao::from_text(&text).unwrap();
        assert_eq!(back, tm);
        assert_eq!(back.to_text(), text);
        for n in 0..1000 {
            assert_eq!(back.evaluate(n), tm.evaluate(n));
        }
    }

    #[test]
    fn load_errors() {
        let missing = "dfao base=2 states=1 initial=0 order=lsd\nstate 0 output 0\n0 0 0\n";
        assert_eq!(Dfao::from_text(missing), Err(Error::NotTotal { state: 0, digit: 1 }));
        // output of δ(q0, 0) differs from output of q0
        let unstable =
            "dfao base=2 states=2 initial=0 order=lsd\nstate 0 output 0\nstate 1 output 1\n0 0 1\n0 1 1\n1 0 1\n1 1 1\n";
        assert_eq!(Dfao::from_text(unstable), Err(Error::PaddingInstability(0)));
        let bad = "dfao base=2 states=1 initial=0 order=lsd\nstate 0 output 0\n0 0\n";
        assert!(matches!(Dfao::from_text(bad), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn builtins() {
        assert_eq!(periodic(2, &[0, 1]).unwrap().prefix(8), vec![0, 1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(periodic(3, &[5, 6, 7, 8]).unwrap().prefix(9), vec![5, 6, 7, 8, 5, 6, 7, 8, 5]);
        let pw = powers_characteristic(2).unwrap();
        let expect: Vec<u32> = (0..40u64).map(|n| (n > 0 && n.is_power_of_two()) as u32).collect();
        assert_eq!(pw.prefix(40), expect);
        let z = zero_characteristic(2).unwrap();
        assert_eq!(z.prefix(4), vec![1, 0, 0, 0]);
        assert_eq!(thue_morse().minimize(), thue_morse());
        let flip = thue_morse().map_outputs(|o| 1 - o);
        assert_eq!(flip.evaluate(0), 1);
    }
}
