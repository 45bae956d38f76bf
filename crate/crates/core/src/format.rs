//! Line-oriented text format for flag codes.
//!
//! ```text
//! FLC 1
//! q <p> <m> <c0> ... <cm>
//! n <n>
//! type <t1,...,tr>
//! flags <N>
//! flag <idx>
//! <t_r rows of n space-separated integers>
//! ```
//!
//! Each block stores generator rows whose prefixes span the flag's
//! subspaces. Lines starting with `#` are comments; `# provenance <p>`
//! records how the code was built. Blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::flags::{Flag, FlagCode, FlagType, Provenance};
use crate::gf::PrimePowerField;
use crate::linalg::MatrixFq;

pub const FORMAT_TAG: &str = "FLC";
pub const FORMAT_VERSION: u32 = 1;

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn serialize(code: &FlagCode) -> String {
    let f = code.field();
    let mut out = String::new();
    let _ = writeln!(out, "{FORMAT_TAG} {FORMAT_VERSION}");
    let _ = writeln!(out, "q {} {} {}", f.p(), f.m(), join(f.modulus(), " "));
    let _ = writeln!(out, "n {}", code.ambient());
    let _ = writeln!(out, "type {}", code.flag_type());
    let _ = writeln!(out, "flags {}", code.len());
    let _ = writeln!(out, "# provenance {}", code.provenance());
    for (i, flag) in code.flags().iter().enumerate() {
        let _ = writeln!(out, "flag {i}");
        for r in 0..flag.generator().rows() {
            let _ = writeln!(out, "{}", join(flag.generator().row(r), " "));
        }
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
    provenance: Option<(usize, &'a str)>,
}

impl<'a> Lines<'a> {
    /// Next content line with its 1-based number.
    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            self.last = i + 1;
            let line = raw.trim();
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(p) = comment.trim().strip_prefix("provenance") {
                    self.provenance = Some((i + 1, p.trim()));
                }
                continue;
            }
            if !line.is_empty() {
                return Ok((i + 1, line));
            }
        }
        Err(Error::Parse { line: self.last + 1, msg: format!("unexpected end of input, expected {what}") })
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, Vec<&'a str>)> {
        let (no, line) = self.next(key)?;
        let mut words = line.split_whitespace();
        if words.next() != Some(key) {
            return Err(Error::Parse { line: no, msg: format!("expected `{key}` line") });
        }
        Ok((no, words.collect()))
    }
}

fn number<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse { line, msg: format!("invalid number {s:?}") })
}

fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        e @ Error::Parse { .. } => e,
        e => Error::Parse { line, msg: e.to_string() },
    }
}

pub fn parse(text: &str) -> Result<FlagCode> {
    let mut lines = Lines { inner: text.lines().enumerate(), last: 0, provenance: None };

    let (no, header) = lines.keyword(FORMAT_TAG)?;
    match header.as_slice() {
        [v] if number::<u32>(no, v)? == FORMAT_VERSION => {}
        _ => {
            return Err(Error::Parse {
                line: no,
                msg: format!("unsupported header, expected `{FORMAT_TAG} {FORMAT_VERSION}`"),
            })
        }
    }

    let (no, words) = lines.keyword("q")?;
    if words.len() < 3 {
        return Err(Error::Parse { line: no, msg: "expected `q <p> <m> <c0> ... <cm>`".into() });
    }
    let p: u64 = number(no, words[0])?;
    let m: u32 = number(no, words[1])?;
    let modulus = words[2..].iter().map(|w| number::<u32>(no, w)).collect::<Result<Vec<_>>>()?;
    if modulus.len() != m as usize + 1 {
        return Err(Error::Parse { line: no, msg: format!("{} modulus coefficients for degree {m}", modulus.len()) });
    }
    let field = PrimePowerField::new(p, m, Some(&modulus)).map_err(at(no))?;

    let (no, words) = lines.keyword("n")?;
    let [n] = words.as_slice() else {
        return Err(Error::Parse { line: no, msg: "expected `n <n>`".into() });
    };
    let n: usize = number(no, n)?;

    let (no, words) = lines.keyword("type")?;
    let [dims] = words.as_slice() else {
        return Err(Error::Parse { line: no, msg: "expected `type <t1,...,tr>`".into() });
    };
    let ty = FlagType::parse(dims, n).map_err(at(no))?;

    let (no, words) = lines.keyword("flags")?;
    let [count] = words.as_slice() else {
        return Err(Error::Parse { line: no, msg: "expected `flags <N>`".into() });
    };
    let count: usize = number(no, count)?;

    let q = field.q();
    let mut flags = Vec::with_capacity(count.min(1 << 16));
    for expected in 0..count {
        let (block, words) = lines.keyword("flag")?;
        match words.as_slice() {
            [idx] if number::<usize>(block, idx)? == expected => {}
            _ => return Err(Error::Parse { line: block, msg: format!("expected `flag {expected}`") }),
        }
        let mut data = Vec::with_capacity(ty.last() * n);
        for _ in 0..ty.last() {
            let (no, line) = lines.next("a generator row")?;
            let row = line.split_whitespace().map(|w| number::<u32>(no, w)).collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(Error::Parse { line: no, msg: format!("row has {} entries, expected {n}", row.len()) });
            }
            if let Some(&v) = row.iter().find(|&&v| v >= q) {
                return Err(Error::Parse { line: no, msg: format!("element {v} out of range for q = {q}") });
            }
            data.extend(row);
        }
        let g = MatrixFq::from_flat(&field, ty.last(), n, data).map_err(at(block))?;
        flags.push(Flag::from_generator(&g, ty.clone()).map_err(at(block))?);
    }
    if let Ok((no, _)) = lines.next("end of input") {
        return Err(Error::Parse { line: no, msg: "trailing content after the last flag".into() });
    }

    let provenance = match lines.provenance {
        Some((no, p)) => p.parse::<Provenance>().map_err(at(no))?,
        None => Provenance::Adhoc,
    };
    FlagCode::new(flags, provenance).map_err(at(lines.last))
}

/// Parses and checks that the code lives over `field`.
pub fn parse_over(text: &str, field: &PrimePowerField) -> Result<FlagCode> {
    let code = parse(text)?;
    if code.field() != field {
        return Err(Error::FieldMismatch);
    }
    Ok(code)
}
