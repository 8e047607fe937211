//! Helpers shared by the line-oriented text formats.

use std::collections::HashMap;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// `kind key=value key=value ...`
pub(crate) struct Header<'a> {
    line: usize,
    fields: HashMap<&'a str, &'a str>,
}

impl<'a> Header<'a> {
    pub(crate) fn parse(line: usize, text: &'a str, kinds: &[&str]) -> Result<(&'a str, Self)> {
        let mut parts = text.split_whitespace();
        let kind = parts.next().ok_or_else(|| parse_err(line, "missing header"))?;
        if !kinds.contains(&kind) {
            return Err(parse_err(line, format!("expected header `{}`, found `{kind}`", kinds.join("|"))));
        }
        let mut fields = HashMap::new();
        for p in parts {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected key=value, found `{p}`")))?;
            if fields.insert(k, v).is_some() {
                return Err(parse_err(line, format!("duplicate key `{k}`")));
            }
        }
        Ok((kind, Header { line, fields }))
    }

    pub(crate) fn raw(&self, key: &str) -> Result<&'a str> {
        self.fields
            .get(key)
            .copied()
            .ok_or_else(|| parse_err(self.line, format!("missing `{key}=`")))
    }

    pub(crate) fn get<T: FromStr>(&self, key: &str) -> Result<T> {
        let raw = self.raw(key)?;
        raw.parse()
            .map_err(|_| parse_err(self.line, format!("bad value `{raw}` for `{key}`")))
    }
}

pub(crate) fn parse_num<T: FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| parse_err(line, format!("bad {what} `{s}`")))
}

/// Comma-separated list, possibly empty.
pub(crate) fn parse_list<T: FromStr>(line: usize, s: &str, what: &str) -> Result<Vec<T>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|p| parse_num(line, p, what)).collect()
}

pub(crate) fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
