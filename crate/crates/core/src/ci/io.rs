//! Text formats for relations.
//!
//! ```text
//! 4
//! 0f00a1
//! ```
//!
//! is the hex form: the ground-set size, then the bitset in index order, byte
//! `b` holding statements `8b..8b+7` with the lowest index in the least
//! significant bit. The list form has one `(i j | k1 k2 ...)` per line.

use super::{statement_count, Relation, Statement};
use crate::error::{Error, Result};
use crate::graph::{VertexSet, MAX_VERTICES};

impl Relation {
    pub fn to_bytes(&self) -> Vec<u8> {
        let len = statement_count(self.n).div_ceil(8);
        (0..len)
            .map(|b| (self.words()[b / 8] >> (8 * (b % 8))) as u8)
            .collect()
    }

    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_hex_file(&self) -> String {
        format!("{}\n{}\n", self.n, self.to_hex())
    }

    /// One statement per line.
    pub fn to_list(&self) -> String {
        self.iter().map(|s| format!("{s}\n")).collect()
    }

    pub fn to_list_file(&self) -> String {
        format!("{}\n{}", self.n, self.to_list())
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Relation> {
        let mut r = Relation::empty(n)?;
        let total = statement_count(n);
        let hex = hex.trim();
        if hex.len() != 2 * total.div_ceil(8) {
            return Err(Error::arg(format!(
                "hex dump for n = {n} needs {} digits, got {}",
                2 * total.div_ceil(8),
                hex.len()
            )));
        }
        for (b, chunk) in hex.as_bytes().chunks(2).enumerate() {
            let text = std::str::from_utf8(chunk).map_err(|_| Error::arg("non-ASCII hex"))?;
            let byte = u8::from_str_radix(text, 16)
                .map_err(|_| Error::arg(format!("bad hex byte `{text}`")))?;
            for bit in 0..8 {
                if byte >> bit & 1 == 1 {
                    let idx = 8 * b + bit;
                    if idx >= total {
                        return Err(Error::arg("hex dump sets bits past the last statement"));
                    }
                    r.set_index(idx);
                }
            }
        }
        Ok(r)
    }
}

/// Parse `(i j | k1 k2 ...)`, 1-based. Whitespace is free-form.
pub fn parse_statement(text: &str) -> Result<Statement> {
    let bad = |why: &str| Error::arg(format!("bad statement `{text}`: {why}"));
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| bad("expected parentheses"))?;
    let (pair, cond) = inner.split_once('|').ok_or_else(|| bad("missing `|`"))?;
    let num = |t: &str| -> Result<usize> {
        let v: usize = t.parse().map_err(|_| bad("not an integer"))?;
        if v == 0 || v > MAX_VERTICES {
            return Err(bad("vertex out of range"));
        }
        Ok(v - 1)
    };
    let ij: Vec<usize> = pair.split_whitespace().map(num).collect::<Result<_>>()?;
    if ij.len() != 2 {
        return Err(bad("expected exactly two vertices before `|`"));
    }
    let k: Vec<usize> = cond.split_whitespace().map(num).collect::<Result<_>>()?;
    let kset = VertexSet::from_iter(k.iter().copied());
    if kset.len() != k.len() {
        return Err(bad("repeated conditioning vertex"));
    }
    Statement::new(ij[0], ij[1], kset).map_err(|e| bad(&e.to_string()))
}

/// Parse a relation file in either hex or list form. The first non-blank
/// line holds `n`; `#` starts a comment line.
pub fn parse_relation(text: &str) -> Result<Relation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty relation file"))?;
    let n_text = first.strip_prefix("n ").unwrap_or(first).trim();
    let n: usize = n_text
        .parse()
        .map_err(|_| Error::parse(ln, 1, format!("expected ground-set size, got `{first}`")))?;
    if !(1..=MAX_VERTICES).contains(&n) {
        return Err(Error::parse(ln, 1, format!("ground-set size must lie in 1..={MAX_VERTICES}")));
    }
    let rest: Vec<(usize, &str)> = lines.collect();
    let is_hex = rest.len() == 1 && rest[0].1.chars().all(|c| c.is_ascii_hexdigit());
    if is_hex {
        let (ln, hex) = rest[0];
        return Relation::from_hex(n, hex).map_err(|e| Error::parse(ln, 1, e.to_string()));
    }
    let mut r = Relation::empty(n)?;
    for (ln, line) in rest {
        let s = parse_statement(line).map_err(|e| Error::parse(ln, 1, e.to_string()))?;
        r.insert(s).map_err(|e| Error::parse(ln, 1, e.to_string()))?;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::super::test_util::{rel, st};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn statement_text() {
        assert_eq!(st("(1 3 | 2 4)").to_string(), "(1 3 | 2 4)");
        assert_eq!(st("( 3 1 |)").to_string(), "(1 3 |)");
        assert!(parse_statement("(1 1 |)").is_err());
        assert!(parse_statement("(1 2 | 2)").is_err());
        assert!(parse_statement("1 2 | 3").is_err());
    }

    #[test]
    fn hex_layout() {
        let r = rel(3, &["(1 2 |)", "(2 3 | 1)"]);
        // indices 0 and 5
        assert_eq!(r.to_hex(), "21");
        assert_eq!(parse_relation(&r.to_hex_file()).unwrap(), r);
        assert!(Relation::from_hex(3, "ff").is_err());
    }

    #[test]
    fn list_file() {
        let r = rel(4, &["(1 2 |)", "(3 4 |)", "(1 3 | 2 4)"]);
        assert_eq!(parse_relation(&r.to_list_file()).unwrap(), r);
        assert_eq!(parse_relation("3\n").unwrap(), Relation::empty(3).unwrap());
        let err = parse_relation("4\n(1 2 |)\n(1 5 |)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    proptest! {
        #[test]
        fn hex_round_trip(n in 2usize..7, seed in proptest::collection::vec(any::<u64>(), 8)) {
            let total = statement_count(n);
            let mut r = Relation::empty(n).unwrap();
            for idx in 0..total {
                if seed[idx % 8] >> (idx / 8 % 64) & 1 == 1 { r.set_index(idx); }
            }
            prop_assert_eq!(Relation::from_hex(n, &r.to_hex()).unwrap(), r);
        }
    }
}
