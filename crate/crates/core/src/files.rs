//! Plain-text file formats, all UTF-8 with LF line endings.
//!
//! `.mtr` — `matroid v1`, an `elements:` line, a `rank:` line, then either
//! `bases:` followed by one basis per line or `ranktable:` followed by 2^n
//! whitespace-separated entries (bit i of the index is element i). The
//! writer always emits a rank table.
//!
//! `.prt` — `partition v1`, then one `name: labels...` line per part, in
//! order. `.path` — `fourpath v1`, then `L:`, `Q1:`…`Qn:`, `R:` lines.
//! `.pmt` — `polymatroid v1`, a `parts:` line, an `f:` line with 2^p
//! values, and a `counts:` line.

use crate::error::{Error, Result};
use crate::flexipath::FourPath;
use crate::matroid::{Matroid, PartitionedMatroid};
use crate::subset::Subset;
use std::path::Path;

fn bad(line: usize, reason: impl Into<String>) -> Error {
    Error::ParseError { line, reason: reason.into() }
}

/// Lines paired with their 1-based numbers, trailing blanks dropped.
fn lines(text: &str) -> Vec<(usize, &str)> {
    let mut out: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .collect();
    while matches!(out.last(), Some((_, l)) if l.is_empty()) {
        out.pop();
    }
    out
}

fn expect_header(lines: &[(usize, &str)], want: &str) -> Result<()> {
    match lines.first() {
        Some(&(_, l)) if l == want => Ok(()),
        Some(&(n, l)) => Err(bad(n, format!("expected `{want}`, found `{l}`"))),
        None => Err(bad(1, format!("empty file, expected `{want}`"))),
    }
}

/// Splits `key: a b c` into the tail tokens, insisting on the key.
fn keyed<'a>(line: &'a str, key: &str, n: usize) -> Result<Vec<&'a str>> {
    match line.strip_prefix(key).and_then(|r| r.strip_prefix(':')) {
        Some(rest) => Ok(rest.split_whitespace().collect()),
        None => Err(bad(n, format!("expected a `{key}:` line, found `{line}`"))),
    }
}

pub fn matroid_to_string(m: &Matroid) -> String {
    let mut s = String::from("matroid v1\n");
    s.push_str(&format!("elements: {}\n", m.labels().join(" ")));
    s.push_str(&format!("rank: {}\n", m.rank()));
    s.push_str("ranktable:\n");
    for chunk in (0..1u32 << m.n()).collect::<Vec<_>>().chunks(64) {
        let row: Vec<String> =
            chunk.iter().map(|&x| m.r(Subset(x)).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_matroid_str(text: &str) -> Result<Matroid> {
    let ls = lines(text);
    expect_header(&ls, "matroid v1")?;
    if ls.len() < 4 {
        return Err(bad(ls.len(), "matroid file needs elements, rank and a body"));
    }
    let labels: Vec<String> = keyed(ls[1].1, "elements", ls[1].0)?
        .into_iter()
        .map(String::from)
        .collect();
    let n = labels.len();
    let rank_tokens = keyed(ls[2].1, "rank", ls[2].0)?;
    let declared: u8 = match rank_tokens.as_slice() {
        [one] => one
            .parse()
            .map_err(|_| bad(ls[2].0, format!("bad rank `{one}`")))?,
        _ => return Err(bad(ls[2].0, "rank line needs exactly one value")),
    };
    let (body_line, body) = ls[3];
    let m = if body == "ranktable:" {
        let mut table = Vec::with_capacity(1 << n);
        for &(ln, l) in &ls[4..] {
            for tok in l.split_whitespace() {
                table.push(
                    tok.parse::<u8>()
                        .map_err(|_| bad(ln, format!("bad rank entry `{tok}`")))?,
                );
            }
        }
        if table.len() != 1 << n {
            return Err(bad(
                ls.last().map_or(body_line, |&(ln, _)| ln),
                format!("rank table has {} entries, expected {}", table.len(), 1usize << n),
            ));
        }
        Matroid::from_rank_table(n, labels, table)?
    } else if body == "bases:" {
        // Resolve labels through a throwaway free matroid so bases can be
        // parsed before the real matroid exists.
        let free: Vec<u8> = (0..1u32 << n).map(|x| x.count_ones() as u8).collect();
        let scratch = Matroid::from_rank_table(n, labels.clone(), free).map_err(|e| match e {
            Error::LabelClash(msg) | Error::BadParameters(msg) => bad(ls[1].0, msg),
            other => other,
        })?;
        let mut bases = Vec::new();
        for &(ln, l) in &ls[4..] {
            if l.is_empty() {
                continue;
            }
            let b = scratch
                .subset_of_labels(l.split_whitespace())
                .map_err(|e| bad(ln, e.to_string()))?;
            bases.push(b);
        }
        Matroid::from_bases(n, labels, &bases)?
    } else {
        return Err(bad(body_line, "expected `ranktable:` or `bases:`"));
    };
    if m.rank() != declared {
        return Err(bad(
            ls[2].0,
            format!("declared rank {declared} but the body gives rank {}", m.rank()),
        ));
    }
    Ok(m)
}

pub fn partition_to_string(p: &PartitionedMatroid) -> String {
    let mut s = String::from("partition v1\n");
    for (name, set) in p.parts() {
        let labels: Vec<&str> =
            set.iter().map(|i| p.matroid().labels()[i].as_str()).collect();
        s.push_str(name);
        s.push(':');
        for l in labels {
            s.push(' ');
            s.push_str(l);
        }
        s.push('\n');
    }
    s
}

pub fn parse_partition_str(m: &Matroid, text: &str) -> Result<PartitionedMatroid> {
    let ls = lines(text);
    expect_header(&ls, "partition v1")?;
    let mut parts = Vec::new();
    for &(ln, l) in &ls[1..] {
        if l.is_empty() {
            continue;
        }
        let (name, rest) = l
            .split_once(':')
            .ok_or_else(|| bad(ln, "expected `name: labels...`"))?;
        let set = m
            .subset_of_labels(rest.split_whitespace())
            .map_err(|e| match e {
                Error::UnknownLabel(_) => e,
                other => bad(ln, other.to_string()),
            })?;
        parts.push((name.trim().to_string(), set));
    }
    PartitionedMatroid::new(m.clone(), parts)
}

/// Steps are renamed positionally on output: whatever the in-memory part
/// names are, the file always reads `L`, `Q1`…`Qn`, `R`.
pub fn path_to_string(fp: &FourPath) -> String {
    let pm = fp.pm();
    let m = pm.matroid();
    let row = |set: Subset| -> String {
        set.iter()
            .map(|i| m.labels()[i].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = String::from("fourpath v1\n");
    s.push_str(&format!("L: {}\n", row(fp.left())));
    for i in 1..=fp.n_steps() {
        s.push_str(&format!("Q{i}: {}\n", row(fp.step(i))));
    }
    s.push_str(&format!("R: {}\n", row(fp.right())));
    s
}

/// Parses a `.path` file against a matroid. The result is unverified; run
/// `is_four_flexipath` before using it.
pub fn parse_path_str(m: &Matroid, text: &str) -> Result<FourPath> {
    let ls = lines(text);
    expect_header(&ls, "fourpath v1")?;
    if ls.len() < 3 {
        return Err(bad(ls.len(), "a path file needs at least L and R lines"));
    }
    let mut parts = Vec::new();
    for (k, &(ln, l)) in ls[1..].iter().enumerate() {
        let (name, rest) = l
            .split_once(':')
            .ok_or_else(|| bad(ln, "expected `name: labels...`"))?;
        let name = name.trim();
        let want = if k == 0 {
            "L".to_string()
        } else if k == ls.len() - 2 {
            "R".to_string()
        } else {
            format!("Q{k}")
        };
        if name != want {
            return Err(bad(ln, format!("expected part `{want}`, found `{name}`")));
        }
        let set = m.subset_of_labels(rest.split_whitespace())?;
        parts.push((name.to_string(), set));
    }
    FourPath::new(PartitionedMatroid::new(m.clone(), parts)?)
}

/// Parses a `.pmt` polymatroid file into part names, the value table, and
/// the element counts.
pub fn parse_polymatroid_str(text: &str) -> Result<(Vec<String>, Vec<u8>, Vec<usize>)> {
    let ls = lines(text);
    expect_header(&ls, "polymatroid v1")?;
    if ls.len() != 4 {
        return Err(bad(
            ls.len(),
            "polymatroid file is exactly parts, f and counts lines",
        ));
    }
    let names: Vec<String> = keyed(ls[1].1, "parts", ls[1].0)?
        .into_iter()
        .map(String::from)
        .collect();
    let f = keyed(ls[2].1, "f", ls[2].0)?
        .into_iter()
        .map(|t| t.parse::<u8>().map_err(|_| bad(ls[2].0, format!("bad value `{t}`"))))
        .collect::<Result<Vec<u8>>>()?;
    if f.len() != 1 << names.len() {
        return Err(bad(
            ls[2].0,
            format!("f has {} values, expected {}", f.len(), 1usize << names.len()),
        ));
    }
    let counts = keyed(ls[3].1, "counts", ls[3].0)?
        .into_iter()
        .map(|t| t.parse::<usize>().map_err(|_| bad(ls[3].0, format!("bad count `{t}`"))))
        .collect::<Result<Vec<usize>>>()?;
    if counts.len() != names.len() {
        return Err(bad(
            ls[3].0,
            format!("{} counts for {} parts", counts.len(), names.len()),
        ));
    }
    Ok((names, f, counts))
}

pub fn parse_matroid_file(path: impl AsRef<Path>) -> Result<Matroid> {
    parse_matroid_str(&std::fs::read_to_string(path)?)
}

pub fn parse_partition_file(m: &Matroid, path: impl AsRef<Path>) -> Result<PartitionedMatroid> {
    parse_partition_str(m, &std::fs::read_to_string(path)?)
}

pub fn parse_path_file(m: &Matroid, path: impl AsRef<Path>) -> Result<FourPath> {
    parse_path_str(m, &std::fs::read_to_string(path)?)
}
