//! Plain-text arrangement format.
//!
//! ```text
//! pca 1
//! curves 2
//! darts 8
//! rotation: 1 2 3 0 5 6 7 4
//! reverse: ...
//! curve: 0 0 0 0 1 1 1 1
//! outer: 0
//! ```
//! Optional `touch: 1` and `transversal: k` lines follow `outer`.
//! Lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn numbers(line: usize, s: &str) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| perr(line, format!("not a number: {t:?}"))))
        .collect()
}

pub fn to_pca(a: &Arrangement) -> String {
    let mut s = String::new();
    let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let _ = writeln!(s, "pca 1");
    let _ = writeln!(s, "curves {}", a.curve_count());
    let _ = writeln!(s, "darts {}", a.dart_count());
    let _ = writeln!(s, "rotation: {}", join(a.rotation_table()));
    let _ = writeln!(s, "reverse: {}", join(a.reverse_table()));
    let _ = writeln!(s, "curve: {}", join(a.curve_table()));
    let _ = writeln!(s, "outer: {}", a.outer().0);
    if a.touch_allowed() {
        let _ = writeln!(s, "touch: 1");
    }
    if let Some(t) = a.transversal() {
        let _ = writeln!(s, "transversal: {}", t.0);
    }
    s
}

/// Parses one record. Line numbers in errors are 1-based and absolute.
pub fn from_pca(text: &str) -> Result<Arrangement> {
    parse_record(text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect())
}

/// Parses a stream of records separated by blank lines.
pub fn from_pca_many(text: &str) -> Result<Vec<Arrangement>> {
    let mut out = Vec::new();
    let mut cur: Vec<(usize, &str)> = Vec::new();
    for (i, l) in text.lines().enumerate() {
        if l.trim().is_empty() {
            if cur.iter().any(|(_, l)| !l.trim_start().starts_with('#')) {
                out.push(parse_record(std::mem::take(&mut cur))?);
            }
            cur.clear();
        } else {
            cur.push((i + 1, l));
        }
    }
    if cur.iter().any(|(_, l)| !l.trim_start().starts_with('#')) {
        out.push(parse_record(cur)?);
    }
    Ok(out)
}

fn parse_record(lines: Vec<(usize, &str)>) -> Result<Arrangement> {
    let body: Vec<(usize, &str)> = lines
        .into_iter()
        .map(|(n, l)| (n, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let last = body.last().map(|x| x.0).unwrap_or(1);
    let mut it = body.into_iter().peekable();
    let mut expect = |key: &str| -> Result<(usize, String)> {
        match it.next() {
            None => Err(perr(last + 1, format!("unexpected end of input, expected {key:?}"))),
            Some((n, l)) => {
                let rest = l
                    .strip_prefix(key)
                    .ok_or_else(|| perr(n, format!("expected {key:?}, found {l:?}")))?;
                Ok((n, rest.trim().to_string()))
            }
        }
    };
    let (n0, v) = expect("pca")?;
    if v != "1" {
        return Err(perr(n0, format!("unsupported format version {v:?}")));
    }
    let (n1, v) = expect("curves")?;
    let curves: usize = v.parse().map_err(|_| perr(n1, "bad curve count"))?;
    let (n2, v) = expect("darts")?;
    let darts: usize = v.parse().map_err(|_| perr(n2, "bad dart count"))?;
    let mut table = |key: &str| -> Result<Vec<u32>> {
        let (n, v) = expect(key)?;
        let t = numbers(n, &v)?;
        if t.len() != darts {
            return Err(perr(n, format!("{key} has {} entries, expected {darts}", t.len())));
        }
        if let Some(bad) = t.iter().find(|&&x| x as usize >= darts && key != "curve:") {
            return Err(perr(n, format!("{key} entry {bad} out of range")));
        }
        Ok(t)
    };
    let rotation = table("rotation:")?;
    let reverse = table("reverse:")?;
    let curve = table("curve:")?;
    let (nc, _) = (n2, ());
    if curve.iter().any(|&c| c as usize >= curves) || (curves > 0 && !curve.contains(&(curves as u32 - 1))) {
        return Err(perr(nc, format!("curve table does not match curve count {curves}")));
    }
    let (no, v) = expect("outer:")?;
    let outer: u32 = v.parse().map_err(|_| perr(no, "bad outer dart"))?;
    if outer as usize >= darts {
        return Err(perr(no, "outer dart out of range"));
    }
    let mut touch = false;
    let mut transversal = None;
    for (n, l) in it {
        if let Some(v) = l.strip_prefix("touch:") {
            touch = match v.trim() {
                "0" => false,
                "1" => true,
                _ => return Err(perr(n, "touch must be 0 or 1")),
            };
        } else if let Some(v) = l.strip_prefix("transversal:") {
            transversal = Some(v.trim().parse::<u32>().map_err(|_| perr(n, "bad transversal id"))?);
        } else {
            return Err(perr(n, format!("unexpected line {l:?}")));
        }
    }
    Arrangement::from_parts(rotation, reverse, curve, outer, touch, transversal)
        .map_err(|e| perr(last, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    #[test]
    fn round_trip() {
        for a in [constructions::two_circles(), constructions::venn3(), constructions::grunbaum(5).unwrap()] {
            let s = to_pca(&a);
            let b = from_pca(&s).unwrap();
            assert_eq!(a, b);
            assert_eq!(to_pca(&b), s);
        }
    }

    #[test]
    fn truncated_reports_line() {
        let s = to_pca(&constructions::venn3());
        let cut: String = s.lines().take(4).collect::<Vec<_>>().join("\n");
        match from_pca(&cut) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_many() {
        let s = format!("# first\n{}\n{}", to_pca(&constructions::two_circles()), to_pca(&constructions::venn3()));
        let v = from_pca_many(&s).unwrap();
        assert_eq!(v.len(), 2);
    }
}
