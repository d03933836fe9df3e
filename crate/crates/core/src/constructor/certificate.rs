use super::ConstructionCertificate;
use crate::groups::PadicInt;
use crate::{Error, ExactRational, Result};
use num_bigint::{BigInt, BigUint, Sign};
use std::fmt::Write as _;

const HEADER: &str = "dsc-certificate v1";
const KEYS: [&str; 10] = ["alpha", "a", "b", "c", "d", "k", "r", "p", "chi", "entries"];

pub fn write_certificate(cert: &ConstructionCertificate) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "alpha = {}", cert.alpha).unwrap();
    writeln!(out, "a = {}", cert.a).unwrap();
    writeln!(out, "b = {}", cert.b).unwrap();
    writeln!(out, "c = {}", cert.c).unwrap();
    writeln!(out, "d = {}", cert.d).unwrap();
    writeln!(out, "k = {}", cert.k).unwrap();
    writeln!(out, "r = {}", cert.r).unwrap();
    writeln!(out, "p = {}", cert.p).unwrap();
    writeln!(out, "chi = {}", cert.chi).unwrap();
    let mut values = Vec::with_capacity(cert.entries.len());
    for e in &cert.entries {
        let v = e
            .to_bigint(&cert.p)
            .ok_or_else(|| Error::Domain("entry too large to write in decimal".into()))?;
        values.push(v.to_string());
    }
    writeln!(out, "entries = {}", values.join(",")).unwrap();
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::parse(line, format!("{key}: cannot parse {v:?}")))
}

pub fn read_certificate(text: &str) -> Result<ConstructionCertificate> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, l)) if l.trim() == HEADER => {}
        _ => return Err(Error::parse(1, format!("expected header {HEADER:?}"))),
    }
    let mut values: [Option<(usize, String)>; 10] = Default::default();
    for (no, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(no, "expected `key = value`"))?;
        let key = key.trim();
        let slot = KEYS
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| Error::parse(no, format!("unknown key {key:?}")))?;
        if values[slot].replace((no, value.trim().to_string())).is_some() {
            return Err(Error::parse(no, format!("duplicate key {key:?}")));
        }
    }
    let last = text.lines().count();
    let get = |slot: usize| {
        values[slot]
            .clone()
            .ok_or_else(|| Error::parse(last, format!("missing key {:?}", KEYS[slot])))
    };
    let rational = |slot: usize| -> Result<ExactRational> {
        let (no, v) = get(slot)?;
        parse_num(no, KEYS[slot], &v)
    };
    let big = |slot: usize| -> Result<BigUint> {
        let (no, v) = get(slot)?;
        parse_num(no, KEYS[slot], &v)
    };
    let small = |slot: usize| -> Result<usize> {
        let (no, v) = get(slot)?;
        parse_num(no, KEYS[slot], &v)
    };
    let p = big(7)?;
    if p < BigUint::from(2u32) {
        let (no, _) = get(7)?;
        return Err(Error::parse(no, "p must be at least 2"));
    }
    let (no, raw) = get(9)?;
    let entries = if raw.is_empty() {
        Vec::new()
    } else {
        raw.split(',')
            .map(|v| {
                let n: BigUint = parse_num(no, "entries", v.trim())?;
                Ok(PadicInt::from_int(&BigInt::from_biguint(Sign::Plus, n), &p))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(ConstructionCertificate {
        alpha: rational(0)?,
        a: small(1)?,
        b: small(2)?,
        c: big(3)?,
        d: big(4)?,
        k: big(5)?,
        r: big(6)?,
        p,
        entries,
        chi: rational(8)?,
    })
}
