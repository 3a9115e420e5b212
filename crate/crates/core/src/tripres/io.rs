//! Line-oriented presentation files.
//!
//! ```text
//! # comment
//! q=2
//! N=7
//! a=1
//! b=0
//! 0 1 3
//! 0 2 6
//! 0 4 5
//! 1 2 4
//! 1 5 6
//! 2 3 5
//! 3 4 6
//! ```
//!
//! Triples are rotation-class representatives; the full set is recovered by
//! rotating. An optional `block=d0 d1 ...` header gives the difference set
//! whose translates are the lines, when it is not the trace-zero set of the
//! Singer plane for q.

use std::fmt::Write as _;

use super::{Correspondence, TrianglePresentation, Triple};
use crate::error::{Error, Result};
use crate::plane::SingerPlane;

/// Renders `p`; `plane_block` is the default block, omitted from the output
/// when it matches.
pub fn write_presentation(
    p: &TrianglePresentation,
    plane_block: &[u32],
    comments: &[String],
) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    let corr = p.correspondence();
    writeln!(out, "q={}", p.q()).unwrap();
    writeln!(out, "N={}", p.n()).unwrap();
    writeln!(out, "a={}", corr.multiplier()).unwrap();
    writeln!(out, "b={}", corr.shift()).unwrap();
    if corr.block() != plane_block {
        let items: Vec<String> = corr.block().iter().map(|d| d.to_string()).collect();
        writeln!(out, "block={}", items.join(" ")).unwrap();
    }
    for t in p.rotation_representatives() {
        writeln!(out, "{} {} {}", t[0], t[1], t[2]).unwrap();
    }
    out
}

pub fn parse_presentation(text: &str) -> Result<TrianglePresentation> {
    let mut q: Option<u32> = None;
    let mut n: Option<u32> = None;
    let mut a: Option<u32> = None;
    let mut b: Option<u32> = None;
    let mut block: Option<Vec<u32>> = None;
    let mut reps: Vec<(usize, Triple)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let column = raw.find(line).unwrap_or(0) + 1;
        if let Some((key, value)) = line.split_once('=') {
            let key = key.trim();
            let value = value.trim();
            let number = || -> Result<u32> {
                value.parse::<u32>().map_err(|_| {
                    Error::parse(line_no, column, format!("bad value for {key}: {value:?}"))
                })
            };
            let slot = match key {
                "q" => &mut q,
                "N" => &mut n,
                "a" => &mut a,
                "b" => &mut b,
                "block" => {
                    let items = value
                        .split_whitespace()
                        .map(|s| s.parse::<u32>())
                        .collect::<Result<Vec<u32>, _>>()
                        .map_err(|_| Error::parse(line_no, column, "bad block entry"))?;
                    if block.replace(items).is_some() {
                        return Err(Error::parse(line_no, column, "duplicate header block"));
                    }
                    continue;
                }
                other => {
                    return Err(Error::parse(
                        line_no,
                        column,
                        format!("unknown header {other:?}"),
                    ))
                }
            };
            if slot.replace(number()?).is_some() {
                return Err(Error::parse(
                    line_no,
                    column,
                    format!("duplicate header {key}"),
                ));
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                line_no,
                column,
                format!("expected three point indices, found {}", fields.len()),
            ));
        }
        let mut t = [0u32; 3];
        for (slot, f) in t.iter_mut().zip(&fields) {
            *slot = f
                .parse()
                .map_err(|_| Error::parse(line_no, column, format!("bad point index {f:?}")))?;
        }
        reps.push((line_no, t));
    }

    let missing = |k: &str| Error::parse(0, 0, format!("missing header {k}"));
    let q = q.ok_or_else(|| missing("q"))?;
    let plane_n = q as u64 * q as u64 + q as u64 + 1;
    let n = n.ok_or_else(|| missing("N"))?;
    if n as u64 != plane_n {
        return Err(Error::parse(0, 0, format!("N={n} but q²+q+1 = {plane_n}")));
    }
    let a = a.ok_or_else(|| missing("a"))?;
    let b = b.ok_or_else(|| missing("b"))?;
    if a >= n || b >= n {
        return Err(Error::parse(0, 0, "a and b must be reduced mod N"));
    }
    let block = match block {
        Some(bl) => bl,
        None => SingerPlane::build(q as u64)?.block().to_vec(),
    };
    if let Some(&d) = block.iter().find(|&&d| d >= n) {
        return Err(Error::parse(0, 0, format!("block entry {d} out of range")));
    }
    for (line_no, t) in &reps {
        if t.iter().any(|&x| x >= n) {
            return Err(Error::parse(
                *line_no,
                1,
                format!("point index out of range 0..{n}"),
            ));
        }
    }
    let triples = reps
        .iter()
        .flat_map(|(_, t)| [*t, [t[1], t[2], t[0]], [t[2], t[0], t[1]]]);
    Ok(TrianglePresentation::new(
        q,
        Correspondence::new(n, a, b, &block),
        triples,
    ))
}
