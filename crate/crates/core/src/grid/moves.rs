//! Grid moves: elementary stabilizations (four kinds with fixed effects on
//! (tb, r, sl)), their inverse destabilizations, commutations, and the
//! negative elementary flype.

use serde::{Deserialize, Serialize};

use super::{GridError, HorizArc, RectDiagram, VertArc};

/// Which end of a vertical arc a junction sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JunctionEnd {
    /// The corner at `z_from`, shared with the incoming horizontal arc.
    Start,
    /// The corner at `z_to`, shared with the outgoing horizontal arc.
    End,
}

/// An arc junction: the corner where the vertical arc at `theta` meets one of
/// its two horizontal neighbors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Junction {
    pub theta: usize,
    pub end: JunctionEnd,
}

/// The four elementary stabilization kinds. Each grows width and height by
/// one and preserves the knot type; the reported effect on (tb, r, sl) is
/// fixed per kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabKind {
    /// Local bulge with a new upward vertical: (Δtb, Δr, Δsl) = (−1, −1, 0).
    LegendrianNeg,
    /// Local bulge with a new downward vertical: (0, 0, 0).
    GridIsotopy,
    /// Wrap around the axis through the cut with one new negative crossing:
    /// (−1, +1, −2). Requires an upward vertical at the junction.
    TransverseNeg,
    /// Wrap with one new positive crossing (positive Markov stabilization):
    /// (0, 0, 0) on (tb, r, sl) while the braid index grows. Requires a
    /// downward vertical at the junction.
    TransversePos,
}

impl StabKind {
    pub fn effect(&self) -> (i64, i64, i64) {
        match self {
            StabKind::LegendrianNeg => (-1, -1, 0),
            StabKind::GridIsotopy => (0, 0, 0),
            StabKind::TransverseNeg => (-1, 1, -2),
            StabKind::TransversePos => (0, 0, 0),
        }
    }
}

/// Report accompanying a stabilization result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabEffect {
    pub kind: StabKind,
    pub d_tb: i64,
    pub d_r: i64,
    pub d_sl: i64,
    /// Where the inverse destabilization lives in the result.
    pub inverse: DestabSite,
}

/// A destabilizable configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DestabSite {
    /// Contract a height-span-1 vertical at `theta` together with a sweep-1
    /// neighbor horizontal (the classic 2×2 pattern).
    Local { theta: usize },
    /// Remove the wrap strand riding the global bottom height.
    BottomWrap,
    /// Remove the wrap strand riding the global top height.
    TopWrap,
}

impl RectDiagram {
    fn vert_pos(&self, theta: usize) -> Option<usize> {
        self.verticals.iter().position(|v| v.theta == theta)
    }

    fn horiz_pos(&self, z: usize) -> Option<usize> {
        self.horizontals.iter().position(|h| h.z == z)
    }

    /// Insert a new angular slot at index `at`; existing slots >= at shift up.
    pub(crate) fn insert_slot(&mut self, at: usize) {
        for v in &mut self.verticals {
            if v.theta >= at {
                v.theta += 1;
            }
        }
        for h in &mut self.horizontals {
            if h.theta_from >= at {
                h.theta_from += 1;
            }
            if h.theta_to >= at {
                h.theta_to += 1;
            }
        }
        if let Some(chart) = &mut self.chart {
            for m in &mut chart.stations {
                if m.theta_gap_lo >= at {
                    m.theta_gap_lo += 1;
                }
                if let Some(hi) = &mut m.theta_gap_hi {
                    if *hi >= at {
                        *hi += 1;
                    }
                }
            }
            for s in &mut chart.leaf_slots {
                if *s >= at {
                    *s += 1;
                }
            }
        }
        self.width += 1;
    }

    /// Insert a new height slot at index `at`; existing heights >= at shift up.
    pub(crate) fn insert_height(&mut self, at: usize) {
        for v in &mut self.verticals {
            if v.z_from >= at {
                v.z_from += 1;
            }
            if v.z_to >= at {
                v.z_to += 1;
            }
        }
        for h in &mut self.horizontals {
            if h.z >= at {
                h.z += 1;
            }
        }
        if let Some(chart) = &mut self.chart {
            for m in &mut chart.stations {
                if m.z_lo >= at {
                    m.z_lo += 1;
                }
                if m.z_hi >= at {
                    m.z_hi += 1;
                }
            }
            for z in &mut chart.free_arc_heights {
                if *z >= at {
                    *z += 1;
                }
            }
        }
        self.height += 1;
    }

    /// Remove an (unused) angular slot.
    pub(crate) fn remove_slot(&mut self, at: usize) {
        for v in &mut self.verticals {
            debug_assert_ne!(v.theta, at);
            if v.theta > at {
                v.theta -= 1;
            }
        }
        for h in &mut self.horizontals {
            debug_assert_ne!(h.theta_from, at);
            debug_assert_ne!(h.theta_to, at);
            if h.theta_from > at {
                h.theta_from -= 1;
            }
            if h.theta_to > at {
                h.theta_to -= 1;
            }
        }
        if let Some(chart) = &mut self.chart {
            for m in &mut chart.stations {
                if m.theta_gap_lo > at {
                    m.theta_gap_lo -= 1;
                }
                if let Some(hi) = &mut m.theta_gap_hi {
                    if *hi > at {
                        *hi -= 1;
                    }
                }
            }
            for s in &mut chart.leaf_slots {
                if *s > at {
                    *s -= 1;
                }
            }
        }
        self.width -= 1;
    }

    /// Remove an (unused) height slot.
    pub(crate) fn remove_height(&mut self, at: usize) {
        for v in &mut self.verticals {
            debug_assert_ne!(v.z_from, at);
            debug_assert_ne!(v.z_to, at);
            if v.z_from > at {
                v.z_from -= 1;
            }
            if v.z_to > at {
                v.z_to -= 1;
            }
        }
        for h in &mut self.horizontals {
            debug_assert_ne!(h.z, at);
            if h.z > at {
                h.z -= 1;
            }
        }
        if let Some(chart) = &mut self.chart {
            for m in &mut chart.stations {
                if m.z_lo > at {
                    m.z_lo -= 1;
                }
                if m.z_hi > at {
                    m.z_hi -= 1;
                }
            }
            for z in &mut chart.free_arc_heights {
                if *z > at {
                    *z -= 1;
                }
            }
        }
        self.height -= 1;
    }

    /// Elementary stabilization at a junction. Width and height each grow by
    /// one; the knot type is preserved; the returned report carries the
    /// kind-determined effect on (tb, r, sl) and the inverse site.
    pub fn grid_stabilize(
        &self,
        junction: Junction,
        kind: StabKind,
    ) -> Result<(RectDiagram, StabEffect), GridError> {
        let mut d = self.clone();
        let vi = d.vert_pos(junction.theta).ok_or(GridError::BadCorner)?;
        let v = d.verticals[vi];
        let theta = junction.theta;
        let z = match junction.end {
            JunctionEnd::Start => v.z_from,
            JunctionEnd::End => v.z_to,
        };
        let hi = d.horiz_pos(z).ok_or(GridError::BadCorner)?;
        // the junction's horizontal neighbor must actually attach here
        match junction.end {
            JunctionEnd::Start if d.horizontals[hi].theta_to != theta => {
                return Err(GridError::BadCorner)
            }
            JunctionEnd::End if d.horizontals[hi].theta_from != theta => {
                return Err(GridError::BadCorner)
            }
            _ => {}
        }
        match (kind, junction.end) {
            (StabKind::LegendrianNeg, JunctionEnd::Start) => {
                d.insert_slot(theta); // new slot θ, v now at θ+1
                d.insert_height(z + 1); // new height z+1
                d.horizontals[hi].theta_to = theta;
                d.verticals[vi].z_from = z + 1;
                d.verticals.push(VertArc { theta, z_from: z, z_to: z + 1 });
                d.horizontals.push(HorizArc { z: z + 1, theta_from: theta, theta_to: theta + 1 });
            }
            (StabKind::LegendrianNeg, JunctionEnd::End) => {
                d.insert_slot(theta + 1);
                d.insert_height(z); // old z becomes z+1
                d.verticals[vi].z_to = z; // v now ends one lower, at the new height
                d.horizontals[hi].theta_from = theta + 1;
                d.verticals.push(VertArc { theta: theta + 1, z_from: z, z_to: z + 1 });
                d.horizontals.push(HorizArc { z, theta_from: theta, theta_to: theta + 1 });
            }
            (StabKind::GridIsotopy, JunctionEnd::Start) => {
                d.insert_slot(theta);
                d.insert_height(z); // old z becomes z+1
                d.horizontals[hi].theta_to = theta;
                d.verticals[vi].z_from = z;
                d.verticals.push(VertArc { theta, z_from: z + 1, z_to: z });
                d.horizontals.push(HorizArc { z, theta_from: theta, theta_to: theta + 1 });
            }
            (StabKind::GridIsotopy, JunctionEnd::End) => {
                d.insert_slot(theta + 1);
                d.insert_height(z + 1);
                d.verticals[vi].z_to = z + 1;
                d.horizontals[hi].theta_from = theta + 1;
                d.verticals.push(VertArc { theta: theta + 1, z_from: z + 1, z_to: z });
                d.horizontals.push(HorizArc { z: z + 1, theta_from: theta, theta_to: theta + 1 });
            }
            (StabKind::TransverseNeg, JunctionEnd::Start) => {
                if !v.is_up() {
                    return Err(GridError::BadCorner);
                }
                // wrap under the whole diagram through the cut
                d.insert_slot(theta + 1); // slot a
                d.insert_height(0); // new global bottom; all heights shift up
                let a = theta + 1;
                d.horizontals[hi].theta_to = a;
                d.verticals[vi].z_from = 0;
                d.verticals.push(VertArc { theta: a, z_from: z + 1, z_to: 0 });
                d.horizontals.push(HorizArc { z: 0, theta_from: a, theta_to: theta });
            }
            (StabKind::TransverseNeg, JunctionEnd::End) => {
                if !v.is_up() {
                    return Err(GridError::BadCorner);
                }
                // wrap over the whole diagram through the cut
                d.insert_slot(theta); // slot b = θ, v now at θ+1
                let top = d.height;
                d.insert_height(top);
                d.verticals[vi].z_to = top;
                d.horizontals[hi].theta_from = theta;
                d.verticals.push(VertArc { theta, z_from: top, z_to: z });
                d.horizontals.push(HorizArc { z: top, theta_from: theta + 1, theta_to: theta });
            }
            (StabKind::TransversePos, JunctionEnd::Start) => {
                if v.is_up() {
                    return Err(GridError::BadCorner);
                }
                d.insert_slot(theta + 1); // slot a
                let top = d.height;
                d.insert_height(top);
                let a = theta + 1;
                d.horizontals[hi].theta_to = a;
                d.verticals[vi].z_from = top;
                d.verticals.push(VertArc { theta: a, z_from: z, z_to: top });
                d.horizontals.push(HorizArc { z: top, theta_from: a, theta_to: theta });
            }
            (StabKind::TransversePos, JunctionEnd::End) => {
                if v.is_up() {
                    return Err(GridError::BadCorner);
                }
                d.insert_slot(theta); // slot b = θ, v now at θ+1
                d.insert_height(0);
                d.verticals[vi].z_to = 0;
                d.horizontals[hi].theta_from = theta;
                d.verticals.push(VertArc { theta, z_from: 0, z_to: z + 1 });
                d.horizontals.push(HorizArc { z: 0, theta_from: theta + 1, theta_to: theta });
            }
        }
        debug_assert!(d.validate().is_empty(), "stabilization broke the diagram: {:?}", d.validate());
        let (d_tb, d_r, d_sl) = kind.effect();
        let inverse = match kind {
            StabKind::LegendrianNeg | StabKind::GridIsotopy => DestabSite::Local {
                theta: match junction.end {
                    JunctionEnd::Start => theta,
                    JunctionEnd::End => theta + 1,
                },
            },
            StabKind::TransverseNeg => match junction.end {
                JunctionEnd::Start => DestabSite::BottomWrap,
                JunctionEnd::End => DestabSite::TopWrap,
            },
            StabKind::TransversePos => match junction.end {
                JunctionEnd::Start => DestabSite::TopWrap,
                JunctionEnd::End => DestabSite::BottomWrap,
            },
        };
        Ok((d, StabEffect { kind, d_tb, d_r, d_sl, inverse }))
    }

    /// Inverse of a stabilization. Returns `None` when the site does not hold
    /// a destabilizable configuration. Width and height each shrink by one and
    /// the knot type is preserved on success.
    pub fn grid_destabilize(&self, site: DestabSite) -> Option<RectDiagram> {
        match site {
            DestabSite::Local { theta } => self.destab_local(theta),
            DestabSite::BottomWrap => self.destab_wrap(true),
            DestabSite::TopWrap => self.destab_wrap(false),
        }
    }

    fn destab_local(&self, theta: usize) -> Option<RectDiagram> {
        let vi = self.vert_pos(theta)?;
        let v = self.verticals[vi];
        if v.hi() - v.lo() != 1 {
            return None;
        }
        let h_out_i = self.horiz_pos(v.z_to)?;
        let h_in_i = self.horiz_pos(v.z_from)?;
        let w = self.width;
        // case (a): outgoing horizontal sweeps a single gap
        if self.horizontals[h_out_i].sweep(w) == 1 {
            let beta = self.horizontals[h_out_i].theta_to;
            let a_i = h_in_i;
            if self.horizontals[a_i].theta_from == beta {
                return None; // too small to contract
            }
            let w_i = self.vert_pos(beta)?;
            if self.verticals[w_i].z_from != v.z_to {
                return None;
            }
            let mut d = self.clone();
            d.horizontals[a_i].theta_to = beta;
            d.verticals[w_i].z_from = v.z_from;
            let dead_z = v.z_to;
            d.verticals.remove(vi);
            let h_out_pos = d.horizontals.iter().position(|h| h.z == dead_z).unwrap();
            d.horizontals.remove(h_out_pos);
            d.remove_slot(theta);
            d.remove_height(dead_z);
            debug_assert!(d.validate().is_empty());
            return Some(d);
        }
        // case (b): incoming horizontal sweeps a single gap
        if self.horizontals[h_in_i].sweep(w) == 1 {
            let alpha = self.horizontals[h_in_i].theta_from;
            let b_i = h_out_i;
            if self.horizontals[b_i].theta_to == alpha {
                return None;
            }
            let u_i = self.vert_pos(alpha)?;
            if self.verticals[u_i].z_to != v.z_from {
                return None;
            }
            let mut d = self.clone();
            d.horizontals[b_i].theta_from = alpha;
            d.verticals[u_i].z_to = v.z_to;
            let dead_z = v.z_from;
            d.verticals.remove(vi);
            let h_in_pos = d.horizontals.iter().position(|h| h.z == dead_z).unwrap();
            d.horizontals.remove(h_in_pos);
            d.remove_slot(theta);
            d.remove_height(dead_z);
            debug_assert!(d.validate().is_empty());
            return Some(d);
        }
        None
    }

    fn destab_wrap(&self, bottom: bool) -> Option<RectDiagram> {
        let w = self.width;
        let wrap_z = if bottom { 0 } else { self.height - 1 };
        let h0_i = self.horiz_pos(wrap_z)?;
        let h0 = self.horizontals[h0_i];
        if h0.sweep(w) != w - 1 {
            return None;
        }
        let a = h0.theta_from;
        let b = h0.theta_to;
        if a != (b + 1) % w {
            return None;
        }
        let va_i = self.vert_pos(a)?;
        let vb_i = self.vert_pos(b)?;
        let va = self.verticals[va_i];
        let vb = self.verticals[vb_i];
        // the strand must ride the wrap: into it at slot a, out of it at slot b
        if bottom {
            if va.z_to != 0 || vb.z_from != 0 {
                return None;
            }
        } else if va.z_to != wrap_z || vb.z_from != wrap_z {
            return None;
        }
        let mut d = self.clone();
        if (bottom && vb.z_to > va.z_from) || (!bottom && vb.z_to > va.z_from) {
            if bottom {
                // survivor is the climbing-out vertical, re-rooted to where the
                // diving strand came from
                let h_in_i = self.horiz_pos(va.z_from)?;
                let h_in = self.horizontals[h_in_i];
                if h_in.theta_to != a || h_in.theta_from == b {
                    return None;
                }
                d.horizontals[h_in_i].theta_to = b;
                d.verticals[vb_i].z_from = va.z_from;
                d.verticals.remove(va_i);
                let dead_slot = a;
                let h0_pos = d.horizontals.iter().position(|h| h.z == wrap_z).unwrap();
                d.horizontals.remove(h0_pos);
                d.remove_slot(dead_slot);
                d.remove_height(wrap_z);
            } else {
                // survivor is the climbing-in vertical, extended to where the
                // diving strand lands
                let h_out_i = self.horiz_pos(vb.z_to)?;
                let h_out = self.horizontals[h_out_i];
                if h_out.theta_from != b || h_out.theta_to == a {
                    return None;
                }
                d.horizontals[h_out_i].theta_from = a;
                d.verticals[va_i].z_to = vb.z_to;
                d.verticals.remove(vb_i);
                let dead_slot = b;
                let h1_pos = d.horizontals.iter().position(|h| h.z == wrap_z).unwrap();
                d.horizontals.remove(h1_pos);
                d.remove_slot(dead_slot);
                d.remove_height(wrap_z);
            }
        } else {
            // mirror sub-pattern: the downward strand survives
            if bottom {
                // survivor dives in at a and continues where the out-vertical ended
                let h_out_i = self.horiz_pos(vb.z_to)?;
                let h_out = self.horizontals[h_out_i];
                if h_out.theta_from != b || h_out.theta_to == a {
                    return None;
                }
                d.horizontals[h_out_i].theta_from = a;
                d.verticals[va_i].z_to = vb.z_to;
                d.verticals.remove(vb_i);
                let dead_slot = b;
                let h0_pos = d.horizontals.iter().position(|h| h.z == wrap_z).unwrap();
                d.horizontals.remove(h0_pos);
                d.remove_slot(dead_slot);
                d.remove_height(wrap_z);
            } else {
                let h_in_i = self.horiz_pos(va.z_from)?;
                let h_in = self.horizontals[h_in_i];
                if h_in.theta_to != a || h_in.theta_from == b {
                    return None;
                }
                d.horizontals[h_in_i].theta_to = b;
                d.verticals[vb_i].z_from = va.z_from;
                d.verticals.remove(va_i);
                let dead_slot = a;
                let h1_pos = d.horizontals.iter().position(|h| h.z == wrap_z).unwrap();
                d.horizontals.remove(h1_pos);
                d.remove_slot(dead_slot);
                d.remove_height(wrap_z);
            }
        }
        if !d.validate().is_empty() {
            return None;
        }
        Some(d)
    }

    /// Commute adjacent height rows `z` and `z+1` when their swept angular
    /// intervals (endpoints included) are disjoint. Type-preserving.
    pub fn commute_rows(&mut self, z: usize) -> bool {
        let (i, j) = match (self.horiz_pos(z), self.horiz_pos(z + 1)) {
            (Some(i), Some(j)) => (i, j),
            _ => return false,
        };
        let (a, b) = (self.horizontals[i], self.horizontals[j]);
        if !sweeps_disjoint(&a, &b, self.width) {
            return false;
        }
        self.horizontals[i].z = z + 1;
        self.horizontals[j].z = z;
        for v in &mut self.verticals {
            for zz in [&mut v.z_from, &mut v.z_to] {
                if *zz == z {
                    *zz = z + 1;
                } else if *zz == z + 1 {
                    *zz = z;
                }
            }
        }
        true
    }

    /// Commute adjacent columns `theta` and `theta+1` when their height spans
    /// (endpoints included) are disjoint. Type-preserving.
    pub fn commute_columns(&mut self, theta: usize) -> bool {
        let t2 = (theta + 1) % self.width;
        let (i, j) = match (self.vert_pos(theta), self.vert_pos(t2)) {
            (Some(i), Some(j)) => (i, j),
            _ => return false,
        };
        let (a, b) = (self.verticals[i], self.verticals[j]);
        if a.lo() <= b.hi() && b.lo() <= a.hi() {
            return false; // height extents overlap or touch
        }
        self.verticals[i].theta = t2;
        self.verticals[j].theta = theta;
        for h in &mut self.horizontals {
            for tt in [&mut h.theta_from, &mut h.theta_to] {
                if *tt == theta {
                    *tt = t2;
                } else if *tt == t2 {
                    *tt = theta;
                }
            }
        }
        true
    }

    /// The negative elementary flype: a negative-transverse stabilization of
    /// `vert` (a wrap over the top) followed by a negative destabilization of
    /// the wrap pattern named by `path` (a strand riding the global bottom).
    /// Self-linking, the Alexander polynomial, tb and r are all preserved;
    /// width and height are unchanged net.
    pub fn negative_flype(
        &self,
        vert: usize,
        path: &[ArcRef],
    ) -> Result<RectDiagram, GridError> {
        // the path must span more than a full turn and name the bottom wrap
        let mut span = 0usize;
        let mut names_wrap = false;
        for arc in path {
            match arc {
                ArcRef::Horizontal(z) => {
                    let hi = self
                        .horiz_pos(*z)
                        .ok_or_else(|| GridError::FlypeLeg {
                            leg: "destabilization",
                            reason: format!("no horizontal at z {z}"),
                        })?;
                    span += self.horizontals[hi].sweep(self.width);
                    if *z == 0 {
                        names_wrap = true;
                    }
                }
                ArcRef::Vertical(t) => {
                    self.vert_pos(*t).ok_or_else(|| GridError::FlypeLeg {
                        leg: "destabilization",
                        reason: format!("no vertical at theta {t}"),
                    })?;
                }
            }
        }
        if span <= self.width {
            return Err(GridError::FlypeLeg {
                leg: "destabilization",
                reason: format!("path spans {span} slots, needs more than {}", self.width),
            });
        }
        if !names_wrap {
            return Err(GridError::FlypeLeg {
                leg: "destabilization",
                reason: "path does not ride the global bottom".into(),
            });
        }
        let vi = self.vert_pos(vert).ok_or(GridError::FlypeLeg {
            leg: "stabilization",
            reason: format!("no vertical at theta {vert}"),
        })?;
        if !self.verticals[vi].is_up() {
            return Err(GridError::FlypeLeg {
                leg: "stabilization",
                reason: format!("vertical at theta {vert} is not upward"),
            });
        }
        let (stabbed, _) = self
            .grid_stabilize(Junction { theta: vert, end: JunctionEnd::End }, StabKind::TransverseNeg)
            .map_err(|e| GridError::FlypeLeg { leg: "stabilization", reason: e.to_string() })?;
        stabbed
            .grid_destabilize(DestabSite::BottomWrap)
            .ok_or_else(|| GridError::FlypeLeg {
                leg: "destabilization",
                reason: "bottom wrap pattern is not destabilizable after stabilizing".into(),
            })
    }
}

/// Reference to an arc of a diagram, by its slot coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcRef {
    Vertical(usize),
    Horizontal(usize),
}

fn sweeps_disjoint(a: &HorizArc, b: &HorizArc, width: usize) -> bool {
    let a_slots: Vec<usize> = (0..=a.sweep(width)).map(|o| (a.theta_from + o) % width).collect();
    let b_slots: Vec<usize> = (0..=b.sweep(width)).map(|o| (b.theta_from + o) % width).collect();
    !a_slots.iter().any(|s| b_slots.contains(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RectDiagram;

    fn trefoil_grid() -> RectDiagram {
        crate::grid::braid_to_grid(&crate::braid::BraidWord::of(2, [1, 1, 1]), Default::default())
            .diagram
    }

    #[test]
    fn stabilizations_report_their_effects_and_invert() {
        let d = trefoil_grid();
        let before = d.classical_invariants().unwrap();
        let alex = d.alexander().unwrap();
        for kind in [
            StabKind::LegendrianNeg,
            StabKind::GridIsotopy,
            StabKind::TransverseNeg,
            StabKind::TransversePos,
        ] {
            for end in [JunctionEnd::Start, JunctionEnd::End] {
                for theta in 0..d.width {
                    let junction = Junction { theta, end };
                    let Ok((s, effect)) = d.grid_stabilize(junction, kind) else {
                        continue;
                    };
                    assert_eq!(s.width, d.width + 1);
                    assert_eq!(s.height, d.height + 1);
                    let after = s.classical_invariants().unwrap();
                    assert_eq!(after.tb - before.tb, effect.d_tb, "{kind:?} {junction:?}");
                    assert_eq!(after.r - before.r, effect.d_r, "{kind:?} {junction:?}");
                    assert_eq!(after.sl - before.sl, effect.d_sl, "{kind:?} {junction:?}");
                    assert_eq!(s.alexander().unwrap(), alex, "{kind:?} {junction:?}");
                    // destabilize at the reported inverse site round-trips
                    let back = s.grid_destabilize(effect.inverse).expect("inverse site");
                    let b = back.classical_invariants().unwrap();
                    assert_eq!((b.n, b.ell, b.up_count), (before.n, before.ell, before.up_count));
                    assert_eq!(back.alexander().unwrap(), alex);
                }
            }
        }
    }

    #[test]
    fn non_destabilizable_site_is_rejected() {
        let d = trefoil_grid();
        assert!(d.grid_destabilize(DestabSite::BottomWrap).is_none());
        assert!(d.grid_destabilize(DestabSite::TopWrap).is_none());
    }
}
