//! Parsing for command line inputs: rational lists, Toda states, box-ball
//! rows, divisors, and Abel-Jacobi basepoints.

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use troplab_core::{BbsState, ConservedVector, GraphPoint, Rational, TodaState};

pub fn parse_rationals(values: &[String]) -> Result<Vec<Rational>> {
    values
        .iter()
        .map(|v| {
            v.parse::<Rational>()
                .map_err(|e| anyhow!("bad rational {v:?}: {e}"))
        })
        .collect()
}

/// Conserved vector from command line words, outermost entry first.
pub fn conserved_from_args(values: &[String]) -> Result<ConservedVector> {
    Ok(ConservedVector::new(parse_rationals(values)?)?)
}

/// The on-disk Toda state makes `g` explicit; on the command line it is
/// redundant, so accept it as optional and cross-check when present.
#[derive(Deserialize)]
struct TodaInput {
    #[serde(default)]
    g: Option<usize>,
    #[serde(rename = "Q")]
    q: Vec<Rational>,
    #[serde(rename = "W")]
    w: Vec<Rational>,
}

pub fn parse_toda(json: &str) -> Result<TodaState> {
    let raw: TodaInput = serde_json::from_str(json)
        .context("a Toda state is JSON like {\"Q\":[0,3],\"W\":[2,3]} (optional \"g\")")?;
    if let Some(g) = raw.g {
        if raw.q.len() != g + 1 {
            bail!("state declares g = {g} but Q has {} entries", raw.q.len());
        }
    }
    Ok(TodaState::new(raw.q, raw.w)?)
}

pub fn parse_bbs(row: &str) -> Result<BbsState> {
    Ok(row.trim().parse::<BbsState>()?)
}

#[derive(Deserialize)]
struct PointInput {
    #[serde(rename = "X")]
    x: Rational,
    #[serde(rename = "Y")]
    y: Rational,
}

/// Divisor input: a JSON list of plane points `{"X":..,"Y":..}`.
pub fn parse_divisor_coords(json: &str) -> Result<Vec<(Rational, Rational)>> {
    let pts: Vec<PointInput> = serde_json::from_str(json)
        .context("a divisor is a JSON list of points like [{\"X\":1,\"Y\":2},{\"X\":2,\"Y\":3}]")?;
    Ok(pts.into_iter().map(|p| (p.x, p.y)).collect())
}

/// Basepoint syntax `EDGE@OFFSET`, an offset along an edge from its tail.
pub fn parse_basepoint(s: &str) -> Result<GraphPoint> {
    let (edge, offset) = s
        .split_once('@')
        .ok_or_else(|| anyhow!("basepoint syntax is EDGE@OFFSET, e.g. 0@0 or 3@1/2"))?;
    let edge: usize = edge
        .trim()
        .parse()
        .context("basepoint edge id must be a nonnegative integer")?;
    let offset: Rational = offset
        .trim()
        .parse()
        .map_err(|e| anyhow!("bad basepoint offset: {e}"))?;
    Ok(GraphPoint { edge, offset })
}
