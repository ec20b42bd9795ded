//! Matrix text format: `n` on the first line, then `n` rows of `n`
//! whitespace-separated numbers. Numbers are integers, decimals (with an
//! optional exponent) or fractions `p/q`, and are read exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{RationalSymMatrix, SymMatrix};
use crate::error::{Error, Result};

/// Reads a number token exactly.
pub(crate) fn parse_number(tok: &str) -> Option<BigRational> {
    if let Some((p, q)) = tok.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mant, exp) = match tok.find(['e', 'E']) {
        Some(pos) => (&tok[..pos], tok[pos + 1..].parse::<i32>().ok()?),
        None => (tok, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let exp = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let pow = num_traits::pow(ten, exp.unsigned_abs() as usize);
    let mut v = if exp >= 0 {
        BigRational::from_integer(digits * pow)
    } else {
        BigRational::new(digits, pow)
    };
    if neg {
        v = -v;
    }
    Some(v)
}

pub fn parse_rational_matrix(text: &str) -> Result<RationalSymMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (ln, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty matrix file"))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| Error::parse(ln, 1, format!("expected matrix size, got `{}`", first.trim())))?;
    let mut rows = Vec::with_capacity(n);
    for (ln, line) in lines {
        if rows.len() == n {
            return Err(Error::parse(ln, 1, "more rows than the declared size"));
        }
        let mut row = Vec::with_capacity(n);
        for (col, tok) in tokens(line) {
            let v = parse_number(tok)
                .ok_or_else(|| Error::parse(ln, col, format!("bad number `{tok}`")))?;
            row.push(v);
        }
        if row.len() != n {
            return Err(Error::parse(ln, 1, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::parse(ln, 1, format!("expected {n} rows, found {}", rows.len())));
    }
    RationalSymMatrix::from_rows(&rows)
}

pub fn parse_matrix(text: &str) -> Result<SymMatrix> {
    let m = parse_rational_matrix(text)?;
    Ok(m.to_f64())
}

/// Whitespace-separated tokens with 1-based column positions.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..pos]));
                start = None;
            }
            (false, None) => start = Some(pos),
            _ => {}
        }
    }
    out.into_iter()
}
