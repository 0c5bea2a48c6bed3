//! Toroidal rectangular diagrams.
//!
//! A diagram lives on slot coordinates: `width` angular slots (cyclic, the
//! braid direction) and `height` height slots (linearized by a fixed cut at
//! the point at infinity; vertical arcs never cross the cut). Horizontal
//! arcs lie on the unit cylinder and are always traversed and swept in the
//! +θ direction from `theta_from` to `theta_to` (possibly wrapping); the
//! oriented cycle implies the traversal of every horizontal arc individually.
//! Vertical arcs live in angular half-planes at ρ ≥ 1, so in the projection
//! they always pass in front of horizontal arcs; a crossing's sign is the
//! right-hand rule applied to the over (vertical) and under (horizontal)
//! directions, which makes downward verticals positive crossings.

mod compile;
mod moves;
mod render;

pub use compile::{braid_to_grid, lower_upward_count, CompileOptions};
pub use moves::{DestabSite, Junction, JunctionEnd, StabEffect, StabKind};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::poly::LaurentPoly;

/// Vertical arc at angular slot `theta`, traversed from `z_from` to `z_to`,
/// occupying the linear height interval between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertArc {
    pub theta: usize,
    pub z_from: usize,
    pub z_to: usize,
}

impl VertArc {
    pub fn is_up(&self) -> bool {
        self.z_to > self.z_from
    }

    pub fn lo(&self) -> usize {
        self.z_from.min(self.z_to)
    }

    pub fn hi(&self) -> usize {
        self.z_from.max(self.z_to)
    }
}

/// Horizontal arc at height slot `z`, swept in +θ from `theta_from` to
/// `theta_to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorizArc {
    pub z: usize,
    pub theta_from: usize,
    pub theta_to: usize,
}

impl HorizArc {
    /// Number of gaps the sweep crosses (1 ..= width-1).
    pub fn sweep(&self, width: usize) -> usize {
        (self.theta_to + width - self.theta_from) % width
    }

    /// Does the sweep cross the gap between slot `g` and slot `g+1`?
    pub fn covers_gap(&self, g: usize, width: usize) -> bool {
        let offset = (g + width - self.theta_from) % width;
        offset < self.sweep(width)
    }

    /// Does the sweep pass strictly through slot `theta` (not an endpoint)?
    pub fn covers_slot(&self, theta: usize, width: usize) -> bool {
        let offset = (theta + width - self.theta_from) % width;
        offset >= 1 && offset < self.sweep(width)
    }
}

/// Meridian rectangle on the torus, given by a closed gap interval in θ and
/// a closed slot interval in z. The meridian disc is crossed by the strands
/// that enter through the wall at `theta_gap_lo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMeridian {
    pub theta_gap_lo: usize,
    #[serde(default)]
    pub theta_gap_hi: Option<usize>,
    pub z_lo: usize,
    pub z_hi: usize,
}

/// A meridian spec: either explicit slot coordinates, or a station index
/// resolved through the diagram's cable chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeridianSpec {
    Raw(RawMeridian),
    Station { index: usize },
}

/// Provenance chart attached to diagrams produced by cable superimposition:
/// one meridian station per block of the underlying presentation, plus the
/// diagram slots that realize the λ-leaf verticals and the free disc-boundary
/// horizontals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CableChart {
    pub stations: Vec<RawMeridian>,
    pub leaf_slots: Vec<usize>,
    pub free_arc_heights: Vec<usize>,
}

/// A toroidal rectangular diagram.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RectDiagram {
    pub width: usize,
    pub height: usize,
    pub verticals: Vec<VertArc>,
    pub horizontals: Vec<HorizArc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<CableChart>,
}

/// One violated diagram invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: String,
    pub detail: String,
}

#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid diagram: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("bad corner id")]
    BadCorner,
    #[error("meridian collides with an arc slot: {0}")]
    MeridianCollision(String),
    #[error("bad meridian spec: {0}")]
    BadMeridian(String),
    #[error("flype precondition failed on the {leg} leg: {reason}")]
    FlypeLeg { leg: &'static str, reason: String },
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Classical invariants of the braided form of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalInvariants {
    pub n: i64,
    pub ell: i64,
    pub sl: i64,
    pub tb: i64,
    pub r: i64,
    pub up_count: i64,
}

impl RectDiagram {
    pub fn new(
        width: usize,
        height: usize,
        verticals: Vec<VertArc>,
        horizontals: Vec<HorizArc>,
    ) -> Self {
        RectDiagram { width, height, verticals, horizontals, chart: None }
    }

    /// Minimal valid diagram of the unknot on a 2×2 grid.
    pub fn minimal_unknot() -> Self {
        RectDiagram::new(
            2,
            2,
            vec![
                VertArc { theta: 0, z_from: 0, z_to: 1 },
                VertArc { theta: 1, z_from: 1, z_to: 0 },
            ],
            vec![
                HorizArc { z: 1, theta_from: 0, theta_to: 1 },
                HorizArc { z: 0, theta_from: 1, theta_to: 0 },
            ],
        )
    }

    /// Check every diagram invariant; an empty report means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        fn push(out: &mut Vec<Violation>, condition: &str, detail: String) {
            out.push(Violation { condition: condition.to_string(), detail });
        }
        if self.verticals.len() != self.width {
            push(
                &mut out,
                "slot-count",
                format!("{} verticals for width {}", self.verticals.len(), self.width),
            );
        }
        if self.horizontals.len() != self.height {
            push(
                &mut out,
                "height-count",
                format!("{} horizontals for height {}", self.horizontals.len(), self.height),
            );
        }
        if self.width != self.height {
            push(&mut out, "square", format!("width {} != height {}", self.width, self.height));
        }
        let mut theta_seen = vec![false; self.width];
        for v in &self.verticals {
            if v.theta >= self.width || v.z_from >= self.height || v.z_to >= self.height {
                push(&mut out, "range", format!("vertical out of range: {v:?}"));
                return out;
            }
            if v.z_from == v.z_to {
                push(&mut out, "degenerate-vertical", format!("vertical at theta {} has zero span", v.theta));
            }
            if theta_seen[v.theta] {
                push(&mut out, "duplicate theta_slot", format!("two verticals at theta {}", v.theta));
            }
            theta_seen[v.theta] = true;
        }
        let mut z_seen = vec![false; self.height];
        for h in &self.horizontals {
            if h.z >= self.height || h.theta_from >= self.width || h.theta_to >= self.width {
                push(&mut out, "range", format!("horizontal out of range: {h:?}"));
                return out;
            }
            if h.theta_from == h.theta_to {
                push(&mut out, "degenerate-horizontal", format!("horizontal at z {} has zero sweep", h.z));
            }
            if z_seen[h.z] {
                push(&mut out, "duplicate z_slot", format!("two horizontals at z {}", h.z));
            }
            z_seen[h.z] = true;
        }
        if !out.is_empty() {
            return out;
        }
        // endpoint matching: the horizontal at height z runs from the unique
        // vertical ending at z to the unique vertical starting at z
        let mut ends_at = vec![None; self.height];
        let mut starts_at = vec![None; self.height];
        for v in &self.verticals {
            if ends_at[v.z_to].replace(v.theta).is_some() {
                push(&mut out, "duplicate z_to", format!("two verticals end at height {}", v.z_to));
            }
            if starts_at[v.z_from].replace(v.theta).is_some() {
                push(&mut out, "duplicate z_from", format!("two verticals start at height {}", v.z_from));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for h in &self.horizontals {
            match (ends_at[h.z], starts_at[h.z]) {
                (Some(from), Some(to)) => {
                    if h.theta_from != from || h.theta_to != to {
                        push(
                &mut out,
                            "endpoint-mismatch",
                            format!(
                                "horizontal at z {} runs {}->{} but verticals give {}->{}",
                                h.z, h.theta_from, h.theta_to, from, to
                            ),
                        );
                    }
                }
                _ => push(&mut out, "unattached", format!("no vertical endpoints at height {}", h.z)),
            }
        }
        if !out.is_empty() {
            return out;
        }
        // single closed cycle over all verticals
        let vert_at_theta = self.vertical_index_by_theta();
        let mut visited = vec![false; self.verticals.len()];
        let mut at = 0usize;
        let mut count = 0usize;
        loop {
            if visited[at] {
                break;
            }
            visited[at] = true;
            count += 1;
            let z = self.verticals[at].z_to;
            let to_theta = starts_at[z].expect("checked above");
            at = vert_at_theta[to_theta].expect("checked above");
        }
        if count != self.verticals.len() {
            push(
                &mut out,
                "multi-component",
                format!("cycle closes after {count} of {} verticals", self.verticals.len()),
            );
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn vertical_index_by_theta(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.width];
        for (i, v) in self.verticals.iter().enumerate() {
            out[v.theta] = Some(i);
        }
        out
    }

    /// Number of strands (horizontal arcs) covering the gap between slot `g`
    /// and `g+1`. Constant over `g` for valid diagrams.
    pub fn coverage_at_gap(&self, g: usize) -> usize {
        self.horizontals.iter().filter(|h| h.covers_gap(g, self.width)).count()
    }

    /// The closed braid obtained by tilting every vertical arc in +θ and
    /// reading crossings against intervening horizontal strands in θ-order.
    pub fn braid_of(&self) -> Result<BraidWord, GridError> {
        let report = self.validate();
        if !report.is_empty() {
            return Err(GridError::Invalid(report));
        }
        let n = self.coverage_at_gap(self.width - 1);
        let mut letters = Vec::new();
        for theta in 0..self.width {
            let v = self.verticals[self.vertical_index_by_theta()[theta].unwrap()];
            // strands passing strictly through this slot
            let mut passers: Vec<usize> = self
                .horizontals
                .iter()
                .filter(|h| h.covers_slot(theta, self.width))
                .map(|h| h.z)
                .collect();
            passers.sort_unstable();
            let below_from = passers.iter().filter(|&&z| z < v.z_from).count();
            let below_to = passers.iter().filter(|&&z| z < v.z_to).count();
            let p_from = below_from + 1; // 1-based position among passers + mover
            let p_to = below_to + 1;
            if p_to < p_from {
                // downward crossing over each passed strand: positive letters
                for p in (p_to..p_from).rev() {
                    letters.push(p as i32);
                }
            } else {
                // upward: negative letters
                for p in p_from..p_to {
                    letters.push(-(p as i32));
                }
            }
        }
        Ok(BraidWord { n: n.max(1), letters })
    }

    /// Count of upward-oriented vertical arcs.
    pub fn up_count(&self) -> usize {
        self.verticals.iter().filter(|v| v.is_up()).count()
    }

    /// Classical invariants of the braided form, with the defining identities
    /// re-asserted.
    pub fn classical_invariants(&self) -> Result<ClassicalInvariants, GridError> {
        let w = self.braid_of()?;
        let n = w.n as i64;
        let ell = w.exponent_sum();
        let up = self.up_count() as i64;
        let inv = ClassicalInvariants {
            n,
            ell,
            sl: ell - n,
            tb: ell - up,
            r: n - up,
            up_count: up,
        };
        debug_assert_eq!(inv.tb - inv.r, inv.sl);
        debug_assert_eq!(inv.sl, inv.ell - inv.n);
        debug_assert_eq!(inv.tb, inv.ell - inv.up_count);
        debug_assert_eq!(inv.r, inv.n - inv.up_count);
        Ok(inv)
    }

    pub fn alexander(&self) -> Result<LaurentPoly, GridError> {
        Ok(self.braid_of()?.alexander_polynomial()?)
    }

    /// Absolute geometric linking count of a meridian: the number of strands
    /// entering the meridian disc through the rectangle's leading wall.
    pub fn meridian_linking(&self, m: &MeridianSpec) -> Result<usize, GridError> {
        let raw = match m {
            MeridianSpec::Raw(raw) => *raw,
            MeridianSpec::Station { index } => {
                let chart = self.chart.as_ref().ok_or_else(|| {
                    GridError::BadMeridian("station meridian on a chartless diagram".into())
                })?;
                *chart.stations.get(*index).ok_or_else(|| {
                    GridError::BadMeridian(format!("no station {index} in chart"))
                })?
            }
        };
        if raw.z_lo > raw.z_hi || raw.z_hi >= self.height || raw.theta_gap_lo >= self.width {
            return Err(GridError::BadMeridian(format!("{raw:?} out of range")));
        }
        let g_lo = raw.theta_gap_lo;
        let g_hi = raw.theta_gap_hi.unwrap_or(g_lo);
        if g_hi >= self.width {
            return Err(GridError::BadMeridian(format!("{raw:?} out of range")));
        }
        // interior slots of the rectangle: strictly between the two gap walls
        let span = (g_hi + self.width - g_lo) % self.width;
        for off in 1..=span {
            let slot = (g_lo + off) % self.width;
            if let Some(vi) = self.vertical_index_by_theta()[slot] {
                let v = self.verticals[vi];
                let inside = raw.z_lo <= v.lo() && v.hi() <= raw.z_hi;
                let outside = v.lo() > raw.z_hi || v.hi() < raw.z_lo;
                if !inside && !outside {
                    return Err(GridError::MeridianCollision(format!(
                        "vertical at slot {slot} crosses the meridian wall"
                    )));
                }
            }
        }
        Ok(self
            .horizontals
            .iter()
            .filter(|h| h.z >= raw.z_lo && h.z <= raw.z_hi && h.covers_gap(g_lo, self.width))
            .count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_unknot_is_valid_and_braids_to_empty_word() {
        let d = RectDiagram::minimal_unknot();
        assert!(d.validate().is_empty());
        let w = d.braid_of().unwrap();
        assert_eq!(w.n, 1);
        assert!(w.letters.is_empty());
        let inv = d.classical_invariants().unwrap();
        assert_eq!((inv.sl, inv.tb - inv.r), (-1, -1));
        assert_eq!(d.alexander().unwrap(), LaurentPoly::one());
    }

    #[test]
    fn duplicate_slot_is_reported() {
        let mut d = RectDiagram::minimal_unknot();
        d.verticals[1].theta = 0;
        let report = d.validate();
        assert!(report.iter().any(|v| v.condition == "duplicate theta_slot"));
    }

    #[test]
    fn unknot_meridian_links_once() {
        let d = RectDiagram::minimal_unknot();
        // fence around the gap 0->1 at the height of the top horizontal
        let m = MeridianSpec::Raw(RawMeridian {
            theta_gap_lo: 0,
            theta_gap_hi: None,
            z_lo: 1,
            z_hi: 1,
        });
        assert_eq!(d.meridian_linking(&m).unwrap(), 1);
        // the full-height window catches both strands... the same strand twice
        let m2 = MeridianSpec::Raw(RawMeridian {
            theta_gap_lo: 0,
            theta_gap_hi: None,
            z_lo: 0,
            z_hi: 1,
        });
        assert_eq!(d.meridian_linking(&m2).unwrap(), 1);
    }
}
