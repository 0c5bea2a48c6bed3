//! Steps configurations: a block presentation together with the cyclically
//! ordered axis discs and the staircase attachments, plus the meridian
//! sequence walking the configuration one disc gap at a time.

use serde::{Deserialize, Serialize};

use crate::block::{BlockPresentation, ConditionReport, Status};
use crate::grid::MeridianSpec;

/// A steps configuration: the presentation plus the cyclic order in which the
/// axis meets the discs. Block i attaches to disc i along its left height
/// side and to disc i+1 along its right height side; disc i sits on the axis
/// at height slot `z_left` of block i.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepsConfiguration {
    pub presentation: BlockPresentation,
    /// Disc labels in axis order: `disc_order[p]` is the disc whose axis
    /// point sits at height slot p.
    pub disc_order: Vec<usize>,
    /// `attachments[i]` lists the two discs block i attaches to.
    pub attachments: Vec<(usize, usize)>,
}

impl StepsConfiguration {
    /// Assemble the canonical steps structure over a presentation: disc i at
    /// the height of block i's left side, attachments (i, i+1).
    pub fn over(presentation: BlockPresentation) -> Self {
        let l = presentation.blocks.len();
        let mut disc_order = vec![usize::MAX; presentation.height];
        for (i, b) in presentation.blocks.iter().enumerate() {
            disc_order[b.z_left] = i;
        }
        let disc_order = disc_order.into_iter().filter(|&d| d != usize::MAX).collect();
        let attachments = (0..l).map(|i| (i, (i + 1) % l)).collect();
        StepsConfiguration { presentation, disc_order, attachments }
    }

    pub fn len(&self) -> usize {
        self.presentation.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.presentation.blocks.is_empty()
    }

    /// Number of points where the configuration meets the braid axis: one per
    /// height slot carrying structure (every slot, for constructor outputs).
    pub fn axis_point_count(&self) -> usize {
        self.presentation.height
    }

    /// Per-condition validation of the steps structure: the numbered
    /// conditions follow the configuration description — (i) disc
    /// arrangement, (ii)/(iii) attachment consistency, (iv)/(v) structural,
    /// (vi) single-cycle connectivity, (vii) offset consistency with a
    /// warning for the degenerate zero offset.
    pub fn validate(&self) -> Vec<ConditionReport> {
        let mut out: Vec<ConditionReport> = Vec::new();
        let mut rep = |condition: &str, status: Status, detail: String| {
            out.push(ConditionReport { condition: condition.into(), status, detail });
        };
        let l = self.presentation.blocks.len();
        // underlying presentation must hold first
        let pres = self.presentation.validate();
        let pres_ok = pres.iter().all(|r| r.status != Status::Fail);
        rep(
            "(presentation)",
            if pres_ok { Status::Pass } else { Status::Fail },
            if pres_ok { "underlying block presentation valid".into() } else { format!("{pres:?}") },
        );
        if !pres_ok {
            return out;
        }
        // (i): every disc appears exactly once in the axis order, and
        // consecutive triples are consistently oriented along the axis
        let mut seen = vec![0usize; l];
        for &d in &self.disc_order {
            if d < l {
                seen[d] += 1;
            } else {
                rep("(i)", Status::Fail, format!("unknown disc label {d}"));
            }
        }
        if seen.iter().any(|&c| c != 1) {
            rep("(i)", Status::Fail, "axis order is not a permutation of the discs".into());
        } else {
            // positions of discs along the axis
            let mut pos = vec![0usize; l];
            for (p, &d) in self.disc_order.iter().enumerate() {
                pos[d] = p;
            }
            let orient = |a: usize, b: usize, c: usize| -> bool {
                // true when b lies in the forward cyclic interval (a, c)
                crate::block::cyclic_between(pos[a], pos[b], pos[c], self.disc_order.len())
                    || (pos[a] == pos[c] && false)
            };
            let mut consistent = true;
            let mut sign: Option<bool> = None;
            for i in 0..l {
                let s = orient(i, (i + 1) % l, (i + 2) % l);
                if let Some(prev) = sign {
                    if prev != s {
                        consistent = false;
                    }
                }
                sign = Some(s);
            }
            if consistent {
                rep("(i)", Status::Pass, "disc triples consistently ordered along the axis".into());
            } else {
                rep("(i)", Status::Fail, "disc triples change orientation along the axis".into());
            }
            // the axis order must match the height slots of the left sides
            let mut matches = true;
            for (i, b) in self.presentation.blocks.iter().enumerate() {
                let expect = self
                    .disc_order
                    .iter()
                    .position(|&d| d == i)
                    .map(|p| self.height_of_axis_position(p));
                if expect != Some(b.z_left) {
                    matches = false;
                }
            }
            if matches {
                rep("(i)", Status::Pass, "disc axis positions match the attachment heights".into());
            } else {
                rep("(i)", Status::Fail, "disc axis positions disagree with block heights".into());
            }
        }
        // (ii)/(iii): block i attaches to disc i and disc i+1
        let mut attach_ok = true;
        for (i, &(a, b)) in self.attachments.iter().enumerate() {
            if a != i {
                rep("(ii)", Status::Fail, format!("block {i} left side attached to disc {a}"));
                attach_ok = false;
            }
            if b != (i + 1) % l {
                rep("(iii)", Status::Fail, format!("block {i} right side attached to disc {b}"));
                attach_ok = false;
            }
        }
        if attach_ok {
            rep("(ii)", Status::Pass, "left sides attach to their own discs".into());
            rep("(iii)", Status::Pass, "right sides attach to the successor discs".into());
        }
        rep("(iv)", Status::ByConstruction, "angular sides lie in disc fibers".into());
        rep("(v)", Status::ByConstruction, "rectangles carry the product foliation".into());
        // (vi): the attachment graph is a single cycle through all blocks
        let mut visited = vec![false; l];
        let mut at = 0usize;
        let mut count = 0usize;
        while !visited[at] {
            visited[at] = true;
            count += 1;
            at = self.attachments[at].1;
        }
        if count == l {
            rep("(vi)", Status::Pass, "blocks chain into a single cycle".into());
        } else {
            rep("(vi)", Status::Fail, format!("chain closes after {count} of {l} blocks"));
        }
        // (vii): the presentation's offset; zero is admitted with a warning
        if self.presentation.k == 0 {
            rep("(vii)", Status::Warning, "offset k = 0 (degenerate leaves)".into());
        } else {
            rep("(vii)", Status::Pass, format!("offset k = {}", self.presentation.k));
        }
        out
    }

    fn height_of_axis_position(&self, p: usize) -> usize {
        // disc axis positions are exactly the left-side heights in axis order
        let mut heights: Vec<usize> =
            self.presentation.blocks.iter().map(|b| b.z_left).collect();
        heights.sort_unstable();
        heights[p]
    }

    pub fn is_valid(&self) -> bool {
        self.validate().iter().all(|r| r.status != Status::Fail)
    }

    /// One meridian per disc gap, in steps order, resolved against the chart
    /// of a superimposed diagram. Consecutive specs differ by the
    /// combinatorial exchange-move step of the meridian walk.
    pub fn meridian_sequence(&self) -> Vec<MeridianSpec> {
        (0..self.len()).map(|index| MeridianSpec::Station { index }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::{Block, BlockPresentation};

    fn small_config() -> StepsConfiguration {
        // uniform descending staircase on 5 blocks, k = 0
        let blocks = (0..5)
            .map(|i| Block {
                theta_bot: (2 * i) % 5,
                theta_top: (2 * i + 2) % 5,
                z_left: (5 - i) % 5,
                z_right: (4 - i) % 5,
            })
            .collect();
        StepsConfiguration::over(BlockPresentation { k: 0, width: 5, height: 5, blocks })
    }

    #[test]
    fn canonical_config_validates_with_k0_warning() {
        let s = small_config();
        let report = s.validate();
        assert!(report.iter().all(|r| r.status != Status::Fail), "{report:?}");
        assert!(report.iter().any(|r| r.condition == "(vii)" && r.status == Status::Warning));
    }

    #[test]
    fn broken_attachment_fails_condition_iii() {
        let mut s = small_config();
        s.attachments[1] = (1, 3); // block 1 attached to disc 3 instead of 2
        let report = s.validate();
        assert!(report.iter().any(|r| r.condition == "(iii)" && r.status == Status::Fail));
    }

    #[test]
    fn meridian_sequence_has_one_spec_per_block() {
        let s = small_config();
        assert_eq!(s.meridian_sequence().len(), 5);
    }
}
