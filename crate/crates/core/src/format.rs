//! Plain-text input formats.
//!
//! Blank lines and lines starting with `#` are ignored. A table block is a
//! header line followed by `n` rows of `n` whitespace-separated indices.
//!
//! ```text
//! group 2          semigroup 2      rees 2 2             clifford 2
//! 0 1              0 0              group cyclic 37 8    0 1
//! 1 0              0 1              1 2                  1 1
//!                                   4 8                  node 0
//!                                                        group 1
//!                                                        0
//!                                                        node 1
//!                                                        group 1
//!                                                        0
//!                                                        hom 0 1
//!                                                        0
//! ```
//!
//! A Rees file names its group either as `group cyclic <p> <k>` (the group
//! `Z_{p^k}` for a prime `p`, entries given as residues) or as
//! `group inline` followed by a `group <n>` block.

use crate::clifford::{CliffordSystem, RawClifford};
use crate::constructor::is_prime;
use crate::groups::{FiniteGroup, SymbolicCyclicGroup};
use crate::rees::{ReesSpec, SymbolicCyclicReesSpec};
use crate::semigroup::FiniteSemigroup;
use crate::{Error, Result};
use num_bigint::BigUint;
use std::fmt::Write as _;

/// A file for `analyze`: either kind of Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableFile {
    Group(FiniteGroup),
    Semigroup(FiniteSemigroup),
}

impl TableFile {
    pub fn semigroup(&self) -> FiniteSemigroup {
        match self {
            TableFile::Group(g) => FiniteSemigroup::from_group(g),
            TableFile::Semigroup(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReesFile {
    Concrete(ReesSpec),
    Cyclic(SymbolicCyclicReesSpec),
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines {
            inner: it.peekable(),
            last: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.inner.next() {
            Some((no, line)) => {
                self.last = no;
                Ok((no, line.split_whitespace().collect()))
            }
            None => Err(Error::parse(self.last + 1, format!("unexpected end of file, expected {what}"))),
        }
    }

    fn peek_keyword(&mut self) -> Option<&'a str> {
        self.inner.peek().and_then(|(_, l)| l.split_whitespace().next())
    }

    fn finish(&mut self) -> Result<()> {
        match self.inner.next() {
            Some((no, _)) => Err(Error::parse(no, "trailing content")),
            None => Ok(()),
        }
    }
}

fn number<T: std::str::FromStr>(no: usize, token: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| Error::parse(no, format!("expected a number, found {token:?}")))
}

fn header(lines: &mut Lines, keyword: &str, arity: usize) -> Result<(usize, Vec<String>)> {
    let (no, tokens) = lines.next(keyword)?;
    if tokens.first() != Some(&keyword) || tokens.len() != arity + 1 {
        return Err(Error::parse(no, format!("expected `{keyword}` with {arity} argument(s)")));
    }
    Ok((no, tokens[1..].iter().map(|s| s.to_string()).collect()))
}

fn row(lines: &mut Lines, len: usize, what: &str) -> Result<Vec<usize>> {
    let (no, tokens) = lines.next(what)?;
    if tokens.len() != len {
        return Err(Error::parse(no, format!("{what}: expected {len} entries, found {}", tokens.len())));
    }
    tokens.iter().map(|t| number(no, t)).collect()
}

fn table(lines: &mut Lines, n: usize) -> Result<Vec<Vec<usize>>> {
    (0..n).map(|_| row(lines, n, "table row")).collect()
}

fn group_block(lines: &mut Lines) -> Result<FiniteGroup> {
    let (no, args) = header(lines, "group", 1)?;
    let n: usize = number(no, &args[0])?;
    FiniteGroup::from_table(&table(lines, n)?)
}

pub fn parse_table_file(text: &str) -> Result<TableFile> {
    let mut lines = Lines::new(text);
    let out = match lines.peek_keyword() {
        Some("group") => TableFile::Group(group_block(&mut lines)?),
        Some("semigroup") => {
            let (no, args) = header(&mut lines, "semigroup", 1)?;
            let n: usize = number(no, &args[0])?;
            TableFile::Semigroup(FiniteSemigroup::from_table(&table(&mut lines, n)?)?)
        }
        _ => return Err(Error::parse(lines.last + 1, "expected `group <n>` or `semigroup <n>`")),
    };
    lines.finish()?;
    Ok(out)
}

pub fn parse_rees_file(text: &str) -> Result<ReesFile> {
    let mut lines = Lines::new(text);
    let (no, args) = header(&mut lines, "rees", 2)?;
    let a: usize = number(no, &args[0])?;
    let b: usize = number(no, &args[1])?;
    let (no, tokens) = lines.next("group line")?;
    let out = match tokens.as_slice() {
        ["group", "inline"] => {
            let group = group_block(&mut lines)?;
            let rows = (0..b).map(|_| row(&mut lines, a, "matrix row")).collect::<Result<Vec<_>>>()?;
            ReesFile::Concrete(ReesSpec::new(group, a, b, rows)?)
        }
        ["group", "cyclic", p, k] => {
            let p: BigUint = number(no, p)?;
            let k: BigUint = number(no, k)?;
            if !is_prime(&p) {
                return Err(Error::Validation(format!("cyclic group base {p} is not prime")));
            }
            let group = SymbolicCyclicGroup::new(p, k)?;
            let mut rows = Vec::with_capacity(b);
            for _ in 0..b {
                let (no, tokens) = lines.next("matrix row")?;
                if tokens.len() != a {
                    return Err(Error::parse(no, format!("matrix row: expected {a} entries")));
                }
                rows.push(tokens.iter().map(|t| number(no, t)).collect::<Result<Vec<BigUint>>>()?);
            }
            ReesFile::Cyclic(SymbolicCyclicReesSpec::new(group, a, b, rows)?)
        }
        _ => return Err(Error::parse(no, "expected `group inline` or `group cyclic <p> <k>`")),
    };
    lines.finish()?;
    Ok(out)
}

pub fn parse_clifford_file(text: &str) -> Result<CliffordSystem> {
    let mut lines = Lines::new(text);
    let (no, args) = header(&mut lines, "clifford", 1)?;
    let n: usize = number(no, &args[0])?;
    let meet = table(&mut lines, n)?;
    let mut groups: Vec<Option<FiniteGroup>> = vec![None; n];
    let mut homs = Vec::new();
    while let Some(keyword) = lines.peek_keyword() {
        match keyword {
            "node" => {
                let (no, args) = header(&mut lines, "node", 1)?;
                let alpha: usize = number(no, &args[0])?;
                if alpha >= n {
                    return Err(Error::parse(no, format!("node {alpha} out of range")));
                }
                let group = group_block(&mut lines)?;
                if groups[alpha].replace(group).is_some() {
                    return Err(Error::parse(no, format!("node {alpha} given twice")));
                }
            }
            "hom" => {
                let (no, args) = header(&mut lines, "hom", 2)?;
                let alpha: usize = number(no, &args[0])?;
                let beta: usize = number(no, &args[1])?;
                let (no, tokens) = lines.next("hom map")?;
                let map = tokens.iter().map(|t| number(no, t)).collect::<Result<Vec<usize>>>()?;
                homs.push((alpha, beta, map));
            }
            other => {
                let no = lines.next("")?.0;
                return Err(Error::parse(no, format!("unexpected {other:?}")));
            }
        }
    }
    let groups = groups
        .into_iter()
        .enumerate()
        .map(|(alpha, g)| g.ok_or_else(|| Error::Validation(format!("node {alpha} has no group"))))
        .collect::<Result<Vec<_>>>()?;
    CliffordSystem::validate(RawClifford { meet, groups, homs })
}

fn write_rows(out: &mut String, rows: &[Vec<usize>]) {
    for r in rows {
        let line: Vec<String> = r.iter().map(usize::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
}

pub fn write_group(group: &FiniteGroup) -> String {
    let mut out = format!("group {}\n", group.order());
    write_rows(&mut out, &group.table_rows());
    out
}

pub fn write_semigroup(s: &FiniteSemigroup) -> String {
    let mut out = format!("semigroup {}\n", s.order());
    write_rows(&mut out, &s.table_rows());
    out
}

pub fn write_rees(spec: &ReesSpec) -> String {
    let mut out = format!("rees {} {}\ngroup inline\n", spec.a(), spec.b());
    out.push_str(&write_group(spec.group()));
    write_rows(&mut out, &spec.rows());
    out
}

pub fn write_clifford(sys: &CliffordSystem) -> String {
    let mut out = format!("clifford {}\n", sys.size());
    write_rows(&mut out, &sys.meet_rows());
    for alpha in 0..sys.size() {
        writeln!(out, "node {alpha}").unwrap();
        out.push_str(&write_group(sys.group(alpha)));
    }
    for (alpha, beta, map) in sys.proper_homs() {
        writeln!(out, "hom {alpha} {beta}").unwrap();
        write_rows(&mut out, &[map]);
    }
    out
}
