//! Cycle expressions used on the command line.
//!
//! ```text
//! expr    := ['-'] [factor '*'] atom
//! atom    := <name declared in the file> | z_min | E | zk | estar:<id> | inline
//! inline  := <id>=<q> (',' <id>=<q>)*        q an integer or p/q
//! ```
//!
//! Names declared in the graph file shadow the built-ins.

use num_bigint::BigInt;
use num_rational::BigRational;
use plumb_core::search::laufer_minimal_cycle;
use plumb_core::{Cycle, IntersectionData, RatCycle};
use thiserror::Error;

use crate::format::GraphFile;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("unknown cycle or vertex name `{0}`")]
    UnknownName(String),
    #[error("invalid number `{0}`")]
    BadNumber(String),
    #[error("vertex `{0}` appears twice")]
    Repeated(String),
    #[error("cycle `{0}` is not integral")]
    NotIntegral(String),
    #[error("empty cycle expression")]
    Empty,
}

pub fn parse_rational(s: &str) -> Result<BigRational, ExprError> {
    let bad = || ExprError::BadNumber(s.to_owned());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Evaluates a cycle expression to a rational cycle.
pub fn eval(expr: &str, file: &GraphFile, lat: &IntersectionData) -> Result<RatCycle, ExprError> {
    let s = expr.trim();
    if s.is_empty() {
        return Err(ExprError::Empty);
    }
    if let Some(rest) = s.strip_prefix('-') {
        return Ok(-&eval(rest, file, lat)?);
    }
    if let Some((factor, atom)) = s.split_once('*') {
        let k = parse_rational(factor.trim())?;
        return Ok(eval_atom(atom.trim(), file, lat)?.scaled(&k));
    }
    eval_atom(s, file, lat)
}

/// Evaluates an expression that must be integral.
pub fn eval_integral(expr: &str, file: &GraphFile, lat: &IntersectionData) -> Result<Cycle, ExprError> {
    eval(expr, file, lat)?.to_cycle().ok_or_else(|| ExprError::NotIntegral(expr.to_owned()))
}

fn eval_atom(atom: &str, file: &GraphFile, lat: &IntersectionData) -> Result<RatCycle, ExprError> {
    let g = &file.graph;
    if let Some(c) = file.cycle(atom) {
        return Ok(c.to_rational());
    }
    if let Some(v) = atom.strip_prefix("estar:") {
        let i = g.index_of(v).ok_or_else(|| ExprError::UnknownName(v.to_owned()))?;
        return Ok(lat.dual(i).clone());
    }
    match atom {
        "z_min" => return Ok(laufer_minimal_cycle(lat).result.to_rational()),
        "E" => return Ok(Cycle::reduced(g.vertex_count()).to_rational()),
        "zk" => return Ok(lat.canonical_cycle().clone()),
        _ => {}
    }
    if !atom.contains('=') {
        return Err(ExprError::UnknownName(atom.to_owned()));
    }
    let mut coeffs = vec![BigRational::from_integer(0.into()); g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    for entry in atom.split(',') {
        let (id, value) = entry.split_once('=').ok_or_else(|| ExprError::UnknownName(entry.to_owned()))?;
        let v = g.index_of(id.trim()).ok_or_else(|| ExprError::UnknownName(id.trim().to_owned()))?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(ExprError::Repeated(id.trim().to_owned()));
        }
        coeffs[v] = parse_rational(value.trim())?;
    }
    Ok(RatCycle::new(coeffs))
}
