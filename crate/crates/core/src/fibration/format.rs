//! Text format for fibrations and parametrized curves.
//!
//! A fibration file reads
//!
//! ```text
//! field 13
//! twists 0 0 1 1
//! 1 1 0 0  12 0 1 0
//! ...
//! ```
//!
//! The first line names the field `p` or `p m`, the second gives the twists
//! `a1 a2 a3` and the line degree `l`, and the next six lines hold the entries
//! `(0,0) (0,1) (0,2) (1,1) (1,2) (2,2)` as lists of terms `coef i j k`
//! meaning `coef * x0^i x1^j x2^k`. Over `F_{p^m}` with `m > 1` a coefficient
//! is written `c0,c1,...` in the power basis of the generator. An empty entry
//! line, or the single token `0`, is the zero form. Text after `#` is a
//! comment; lines holding only a comment are skipped.
//!
//! A curve file has a line `curve d` followed by three lines of terms
//! `coef i j` meaning `coef * s^i t^j` with `i + j = d`.

use super::{ConicFibration, ParamCurve, Poly3, UPPER};
use crate::exactfield::{Gf, GfField, Ring, UniPoly};
use crate::{Error, Result};

struct Line<'a> {
    number: usize,
    text: &'a str,
    is_comment: bool,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(k, raw)| {
            let cut = raw.find('#');
            let body = &raw[..cut.unwrap_or(raw.len())];
            Line {
                number: k + 1,
                text: body,
                is_comment: cut.is_some() && body.trim().is_empty(),
            }
        })
        .collect()
}

fn tokens<'a>(line: &Line<'a>) -> Vec<(usize, &'a str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, ch) in line.text.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(k),
            (true, Some(s)) => {
                out.push((s, &line.text[s..k]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line.text[s..]));
    }
    out.into_iter()
        .map(|(byte, t)| (line.text[..byte].chars().count() + 1, t))
        .collect()
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_int<T: std::str::FromStr>(line: usize, column: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| err(line, column, format!("expected {what}, found '{tok}'")))
}

fn parse_coef(field: &'static GfField, line: usize, column: usize, tok: &str) -> Result<Gf> {
    let parts: Vec<&str> = tok.split(',').collect();
    if parts.len() > field.degree() {
        return Err(err(
            line,
            column,
            format!("coefficient '{tok}' has more than {} coordinates", field.degree()),
        ));
    }
    let mut acc = field.zero();
    let mut power = field.one();
    for part in parts {
        let v: i64 = parse_int(line, column, part, "an integer coefficient")?;
        acc = acc + power * field.from_i64(v);
        power = power * field.generator();
    }
    Ok(acc)
}

fn write_coef(c: &Gf) -> String {
    let coeffs = c.coeffs();
    coeffs
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses the terms of one entry line.
fn parse_terms<const N: usize>(
    field: &'static GfField,
    line: &Line<'_>,
) -> Result<Vec<([u32; N], Gf)>> {
    let toks = tokens(line);
    if toks.is_empty() || (toks.len() == 1 && toks[0].1 == "0") {
        return Ok(Vec::new());
    }
    if !toks.len().is_multiple_of(N + 1) {
        let (col, _) = toks[toks.len() - toks.len() % (N + 1)];
        return Err(err(
            line.number,
            col,
            format!("incomplete term: each term is a coefficient and {N} exponents"),
        ));
    }
    toks.chunks(N + 1)
        .map(|chunk| {
            let c = parse_coef(field, line.number, chunk[0].0, chunk[0].1)?;
            let mut e = [0u32; N];
            for (slot, &(col, tok)) in e.iter_mut().zip(&chunk[1..]) {
                *slot = parse_int(line.number, col, tok, "a nonnegative exponent")?;
            }
            Ok((e, c))
        })
        .collect()
}

fn expect_keyword<'a>(line: &'a Line<'a>, keyword: &str) -> Result<Vec<(usize, &'a str)>> {
    let toks = tokens(line);
    match toks.first() {
        Some((_, k)) if *k == keyword => Ok(toks[1..].to_vec()),
        Some((col, k)) => Err(err(line.number, *col, format!("expected '{keyword}', found '{k}'"))),
        None => Err(err(line.number, 1, format!("expected '{keyword}'"))),
    }
}

fn parse_field(line: &Line<'_>) -> Result<&'static GfField> {
    let args = expect_keyword(line, "field")?;
    if args.is_empty() || args.len() > 2 {
        return Err(err(line.number, 1, "expected 'field p' or 'field p m'"));
    }
    let p: u64 = parse_int(line.number, args[0].0, args[0].1, "a prime")?;
    let m: usize = match args.get(1) {
        Some(&(col, tok)) => parse_int(line.number, col, tok, "an extension degree")?,
        None => 1,
    };
    GfField::canonical(p, m).map_err(|e| err(line.number, args[0].0, e.to_string()))
}

/// Parses a fibration file.
pub fn parse_fibration(text: &str) -> Result<ConicFibration> {
    let all = lines(text);
    let mut rest = all.iter();
    let mut header = rest.by_ref().filter(|l| !l.text.trim().is_empty());
    let eof = |what: &str| err(all.len() + 1, 1, format!("unexpected end of input, expected {what}"));
    let field_line = header.next().ok_or_else(|| eof("'field'"))?;
    let field = parse_field(field_line)?;
    let twist_line = header.next().ok_or_else(|| eof("'twists'"))?;
    let args = expect_keyword(twist_line, "twists")?;
    if args.len() != 4 {
        return Err(err(twist_line.number, 1, "expected 'twists a1 a2 a3 l'"));
    }
    let mut nums = [0i64; 4];
    for (slot, &(col, tok)) in nums.iter_mut().zip(&args) {
        *slot = parse_int(twist_line.number, col, tok, "an integer")?;
    }
    let mut entry_lines = rest.by_ref().filter(|l| !l.is_comment);
    let mut upper = Vec::with_capacity(6);
    for (i, j) in UPPER {
        let line = entry_lines
            .next()
            .ok_or_else(|| eof(&format!("entry ({i},{j})")))?;
        let terms = parse_terms::<3>(field, line)?;
        upper.push(Poly3::from_terms(terms, field.zero()));
    }
    for line in entry_lines {
        if let Some(&(col, tok)) = tokens(line).first() {
            return Err(err(line.number, col, format!("unexpected trailing input '{tok}'")));
        }
    }
    let upper: [Poly3<Gf>; 6] = upper.try_into().expect("six entries");
    ConicFibration::new(field, [nums[0], nums[1], nums[2]], nums[3], upper)
}

/// Canonical text of a fibration.
pub fn serialize_fibration(fib: &ConicFibration) -> String {
    let field = fib.field();
    let mut out = if field.degree() == 1 {
        format!("field {}\n", field.p())
    } else {
        format!("field {} {}\n", field.p(), field.degree())
    };
    let [a1, a2, a3] = fib.twists();
    out += &format!("twists {a1} {a2} {a3} {}\n", fib.line_degree());
    for (i, j) in UPPER {
        let form = fib.entry(i, j);
        let mut terms: Vec<_> = form.terms().collect();
        terms.sort_by(|a, b| b.0.cmp(a.0));
        let line = if terms.is_empty() {
            "0".to_string()
        } else {
            terms
                .iter()
                .map(|(e, c)| format!("{} {} {} {}", write_coef(c), e[0], e[1], e[2]))
                .collect::<Vec<_>>()
                .join("  ")
        };
        out += &line;
        out.push('\n');
    }
    out
}

/// Parses a curve file with coefficients in `field`.
pub fn parse_curve(text: &str, field: &'static GfField) -> Result<ParamCurve> {
    let all = lines(text);
    let mut iter = all.iter();
    let head = iter
        .by_ref()
        .find(|l| !l.text.trim().is_empty())
        .ok_or_else(|| err(1, 1, "expected 'curve d'"))?;
    let args = expect_keyword(head, "curve")?;
    if args.len() != 1 {
        return Err(err(head.number, 1, "expected 'curve d'"));
    }
    let d: usize = parse_int(head.number, args[0].0, args[0].1, "a degree")?;
    if !(1..=2).contains(&d) {
        return Err(Error::InvalidCurve(format!("degree {d} is not 1 or 2")));
    }
    let mut comps = Vec::with_capacity(3);
    let mut rows = iter.by_ref().filter(|l| !l.is_comment);
    for k in 0..3 {
        let line = rows
            .next()
            .ok_or_else(|| err(all.len() + 1, 1, format!("expected component {k}")))?;
        let mut coeffs = vec![field.zero(); d + 1];
        for ([i, j], c) in parse_terms::<2>(field, line)? {
            if (i + j) as usize != d {
                return Err(err(
                    line.number,
                    1,
                    format!("term s^{i} t^{j} is not of degree {d}"),
                ));
            }
            coeffs[i as usize] = coeffs[i as usize] + c;
        }
        comps.push(UniPoly::new(coeffs, field.zero()));
    }
    for line in rows {
        if let Some(&(col, tok)) = tokens(line).first() {
            return Err(err(line.number, col, format!("unexpected trailing input '{tok}'")));
        }
    }
    let rho: [UniPoly<Gf>; 3] = comps.try_into().expect("three components");
    ParamCurve::new(d, rho)
}

/// Canonical text of a curve.
pub fn serialize_curve(curve: &ParamCurve) -> String {
    let d = curve.degree();
    let mut out = format!("curve {d}\n");
    for r in curve.rho() {
        let terms: Vec<String> = (0..=d)
            .rev()
            .filter(|&i| !r.coeff(i).is_zero())
            .map(|i| format!("{} {} {}", write_coef(&r.coeff(i)), i, d - i))
            .collect();
        out += &if terms.is_empty() { "0".to_string() } else { terms.join("  ") };
        out.push('\n');
    }
    out
}
