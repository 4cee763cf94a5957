//! Text formats.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with `u < v`, 0-based.
//! Layout: a header line `n r`, then `n` lines `x y`. Floats are written in
//! shortest round-trip form, so reading back gives the identical value.

use std::io::{BufRead, Write};

use netprop_core::exact::{HittingTimeTable, SurvivalCurve};
use netprop_core::graph::{GeometricLayout, Graph};

use crate::error::{Error, Result};

pub fn write_edge_list(g: &Graph, mut out: impl Write) -> Result<()> {
    writeln!(out, "{} {}", g.node_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

fn parse_pair<A: std::str::FromStr, B: std::str::FromStr>(line: &str, lineno: usize) -> Result<(A, B)> {
    let mut it = line.split_ascii_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return Err(Error::format(lineno, format!("expected two fields, got {line:?}")));
    };
    let a = a.parse().map_err(|_| Error::format(lineno, format!("bad number {a:?}")))?;
    let b = b.parse().map_err(|_| Error::format(lineno, format!("bad number {b:?}")))?;
    Ok((a, b))
}

/// Read an edge list, rejecting anything that breaks the format or the
/// graph invariants.
pub fn read_edge_list(input: impl BufRead) -> Result<Graph> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| Error::format(1, "missing header"))??;
    let (n, m): (usize, usize) = parse_pair(&header, 1)?;
    let mut edges = Vec::with_capacity(m);
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line?;
        if edges.len() == m {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::format(lineno, format!("more than the declared {m} edges")));
        }
        let (u, v): (usize, usize) = parse_pair(&line, lineno)?;
        if u >= v {
            return Err(Error::format(lineno, format!("edge ({u}, {v}) must have u < v")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::format(edges.len() + 2, format!("expected {m} edges, found {}", edges.len())));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn write_layout(layout: &GeometricLayout, mut out: impl Write) -> Result<()> {
    writeln!(out, "{} {}", layout.points.len(), layout.radius)?;
    for (x, y) in &layout.points {
        writeln!(out, "{x:?} {y:?}")?;
    }
    Ok(())
}

pub fn read_layout(input: impl BufRead) -> Result<GeometricLayout> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| Error::format(1, "missing header"))??;
    let (n, r): (usize, f64) = parse_pair(&header, 1)?;
    let mut points = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let line = line?;
        if points.len() == n && line.trim().is_empty() {
            continue;
        }
        if points.len() == n {
            return Err(Error::format(i + 2, format!("more than the declared {n} points")));
        }
        points.push(parse_pair::<f64, f64>(&line, i + 2)?);
    }
    if points.len() != n {
        return Err(Error::format(points.len() + 2, format!("expected {n} points, found {}", points.len())));
    }
    Ok(GeometricLayout::new(points, r)?)
}

/// `t k` lines: step and cumulative infected count.
pub fn write_trace(trace: &[(u64, usize)], mut out: impl Write) -> Result<()> {
    for (t, k) in trace {
        writeln!(out, "{t} {k}")?;
    }
    Ok(())
}

pub fn write_hitting_table(table: &HittingTimeTable, mut out: impl Write) -> Result<()> {
    writeln!(out, "state_mask,expected_steps")?;
    for (mask, value) in table.iter() {
        writeln!(out, "{mask},{value:?}")?;
    }
    Ok(())
}

pub fn write_survival(curve: &SurvivalCurve, mut out: impl Write) -> Result<()> {
    writeln!(out, "t,tail")?;
    for (t, value) in curve.tail.iter().enumerate() {
        writeln!(out, "{t},{value:?}")?;
    }
    Ok(())
}
