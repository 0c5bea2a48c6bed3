//! Compile a closed braid word into a toroidal rectangular diagram, and
//! lower a diagram's upward-arc count by type-preserving moves.
//!
//! The compiler is time-expanded: one angular slot per jump. A positive
//! letter σ_i is a downward jump of the strand at position i+1 to just below
//! position i; a negative letter is the mirror upward jump. With run packing,
//! a maximal block of consecutive letters that one monotone jump can realize
//! (descending indices positive, e.g. σ4σ3σ2, or ascending indices negative,
//! e.g. σ2⁻¹σ3⁻¹σ4⁻¹) compiles to a single vertical arc. Closure jumps are
//! inserted at the end, ordered so they cross nothing.

use std::collections::HashMap;

use crate::braid::BraidWord;

use super::{HorizArc, RectDiagram, VertArc};

#[derive(Clone, Copy, Debug, Default)]
pub struct CompileOptions {
    /// Pack maximal letter runs into single vertical arcs.
    pub pack_runs: bool,
}

/// Compiler output: the diagram plus, for every input letter, the slot of the
/// vertical arc realizing it (shared within a packed run).
pub struct CompiledGrid {
    pub diagram: RectDiagram,
    pub letter_slots: Vec<usize>,
}

struct Builder {
    /// height keys bottom-to-top; a key is an allocation id
    order: Vec<u64>,
    next_key: u64,
    /// strand states sorted by height during the word phase:
    /// (height key, slot where the current horizontal begins)
    at: Vec<(u64, usize)>,
    verticals: Vec<(usize, u64, u64)>,
    horizontals: Vec<(u64, usize, usize)>,
    next_slot: usize,
}

const OPEN: usize = usize::MAX;

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            order: (0..n as u64).collect(),
            next_key: n as u64,
            at: (0..n as u64).map(|k| (k, OPEN)).collect(),
            verticals: Vec::new(),
            horizontals: Vec::new(),
            next_slot: 0,
        }
    }

    fn ranks(&self) -> HashMap<u64, usize> {
        self.order.iter().enumerate().map(|(i, &k)| (k, i)).collect()
    }

    /// Insert a fresh height key directly above or below `anchor`.
    fn fresh_height(&mut self, anchor: u64, above: bool) -> u64 {
        let key = self.next_key;
        self.next_key += 1;
        let pos = self.order.iter().position(|&k| k == anchor).unwrap() + usize::from(above);
        self.order.insert(pos, key);
        key
    }

    /// Jump the strand at position `pos` to the fresh height `target`,
    /// emitting one vertical and closing the strand's horizontal, then
    /// restore the position ordering.
    fn jump(&mut self, pos: usize, target: u64) -> usize {
        let slot = self.next_slot;
        self.next_slot += 1;
        let (old, since) = self.at[pos];
        self.verticals.push((slot, old, target));
        self.horizontals.push((old, since, slot));
        self.at[pos] = (target, slot);
        let ranks = self.ranks();
        self.at.sort_by_key(|&(k, _)| ranks[&k]);
        slot
    }

    fn finish(mut self, init: &[u64]) -> RectDiagram {
        let n = init.len();
        // At this point `at` is sorted by height: entry p is the strand at
        // final position p, which must land on init[p]. Jump them in an order
        // where each jump crosses no currently occupied height.
        let mut done = vec![false; n];
        for _ in 0..n {
            let ranks = self.ranks();
            let mut progressed = false;
            for p in 0..n {
                if done[p] {
                    continue;
                }
                let (cur, since) = self.at[p];
                let target_rank = ranks[&init[p]];
                let (lo, hi) = {
                    let a = ranks[&cur];
                    (a.min(target_rank), a.max(target_rank))
                };
                let blocked = (0..n).any(|q| {
                    q != p && {
                        let r = ranks[&self.at[q].0];
                        (r > lo && r < hi) || r == target_rank
                    }
                });
                if blocked {
                    continue;
                }
                let slot = self.next_slot;
                self.next_slot += 1;
                self.verticals.push((slot, cur, init[p]));
                self.horizontals.push((cur, since, slot));
                self.at[p] = (init[p], slot);
                done[p] = true;
                progressed = true;
                break;
            }
            assert!(progressed, "closure jumps wedged; no crossing-free order found");
        }
        // the final horizontal of each strand wraps around to the slot where
        // the initial occupant of that height first jumped
        let mut first_jump: HashMap<u64, usize> = HashMap::new();
        for &(slot, from, _) in &self.verticals {
            first_jump.entry(from).or_insert(slot);
        }
        for &(key, since) in &self.at {
            let to = *first_jump.get(&key).expect("every strand moves");
            self.horizontals.push((key, since, to));
        }
        let height_of = self.ranks();
        let width = self.next_slot;
        let verticals = self
            .verticals
            .iter()
            .map(|&(slot, from, to)| VertArc {
                theta: slot,
                z_from: height_of[&from],
                z_to: height_of[&to],
            })
            .collect();
        let horizontals = self
            .horizontals
            .iter()
            .filter(|&&(_, since, _)| since != OPEN)
            .map(|&(key, since, to)| HorizArc { z: height_of[&key], theta_from: since, theta_to: to })
            .collect();
        RectDiagram::new(width, self.order.len(), verticals, horizontals)
    }
}

/// Compile a braid word whose closure is a knot into a valid diagram whose
/// braided form reads back the same closure.
pub fn braid_to_grid(w: &BraidWord, opts: CompileOptions) -> CompiledGrid {
    assert!(w.is_knot(), "braid_to_grid requires a knot closure");
    if w.n == 1 {
        return CompiledGrid { diagram: RectDiagram::minimal_unknot(), letter_slots: Vec::new() };
    }
    let mut b = Builder::new(w.n);
    let init: Vec<u64> = (0..w.n as u64).collect();
    let mut letter_slots = Vec::with_capacity(w.letters.len());
    let mut i = 0usize;
    while i < w.letters.len() {
        let g = w.letters[i];
        let mut run = 1usize;
        if opts.pack_runs {
            while i + run < w.letters.len() {
                let h = w.letters[i + run];
                let same_sign = (g > 0) == (h > 0);
                let step_ok = if g > 0 {
                    h.unsigned_abs() + run as u32 == g.unsigned_abs()
                } else {
                    h.unsigned_abs() == g.unsigned_abs() + run as u32
                };
                if same_sign && step_ok {
                    run += 1;
                } else {
                    break;
                }
            }
        }
        let idx = g.unsigned_abs() as usize; // 1-based generator index
        let slot = if g > 0 {
            // mover at 0-based position idx drops just below position idx-run
            let anchor = b.at[idx - run].0;
            let t = b.fresh_height(anchor, false);
            b.jump(idx, t)
        } else {
            // mover at 0-based position idx-1 climbs just above position idx-1+run
            let anchor = b.at[idx - 1 + run].0;
            let t = b.fresh_height(anchor, true);
            b.jump(idx - 1, t)
        };
        for _ in 0..run {
            letter_slots.push(slot);
        }
        i += run;
    }
    let diagram = b.finish(&init);
    debug_assert!(diagram.validate().is_empty(), "{:?}", diagram.validate());
    CompiledGrid { diagram, letter_slots }
}

/// Best-effort reduction of the number of upward vertical arcs by
/// type-preserving moves: commutations to expose 2×2 patterns, then local
/// destabilizations of crossing-free upward arcs. Stops at `target` or when
/// no further progress is possible. Returns the number of arcs removed.
pub fn lower_upward_count(d: &mut RectDiagram, target: usize) -> usize {
    let mut removed = 0;
    'outer: loop {
        if d.up_count() <= target {
            return removed;
        }
        let candidates: Vec<usize> = d
            .verticals
            .iter()
            .filter(|v| v.is_up() && crossings_of(d, v) == 0)
            .map(|v| v.theta)
            .collect();
        for theta in candidates {
            if let Some(next) = try_eliminate_up(d, theta) {
                *d = next;
                removed += 1;
                continue 'outer;
            }
        }
        return removed;
    }
}

fn crossings_of(d: &RectDiagram, v: &VertArc) -> usize {
    d.horizontals
        .iter()
        .filter(|h| h.z > v.lo() && h.z < v.hi() && h.covers_slot(v.theta, d.width))
        .count()
}

/// Try to remove one crossing-free upward vertical by shrinking its span and
/// a neighbor sweep via commutations, then destabilizing locally.
fn try_eliminate_up(d: &RectDiagram, theta: usize) -> Option<RectDiagram> {
    let mut work = d.clone();
    for _ in 0..2 * work.height {
        let v = *work.verticals.iter().find(|v| v.theta == theta)?;
        if v.hi() - v.lo() <= 1 {
            break;
        }
        // pull either endpoint inward, or shuffle an interior strand outward
        if work.commute_rows(v.hi() - 1) || work.commute_rows(v.lo()) {
            continue;
        }
        let mut moved = false;
        for z in (v.lo() + 1..v.hi() - 1).rev() {
            if work.commute_rows(z) {
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    let v = *work.verticals.iter().find(|v| v.theta == theta)?;
    if v.hi() - v.lo() != 1 {
        return None;
    }
    for _ in 0..2 * work.width {
        if let Some(done) = work.grid_destabilize(super::DestabSite::Local { theta }) {
            return Some(done);
        }
        let out_h = *work.horizontals.iter().find(|h| h.z == v.z_to)?;
        let in_h = *work.horizontals.iter().find(|h| h.z == v.z_from)?;
        let mut moved = false;
        if out_h.sweep(work.width) > 1 {
            let prev = (out_h.theta_to + work.width - 1) % work.width;
            moved = work.commute_columns(prev);
        }
        if !moved && in_h.sweep(work.width) > 1 {
            moved = work.commute_columns(in_h.theta_from);
        }
        if !moved {
            return None;
        }
    }
    work.grid_destabilize(super::DestabSite::Local { theta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::grid::{Junction, JunctionEnd, StabKind};

    fn roundtrip(w: &BraidWord, opts: CompileOptions) {
        let compiled = braid_to_grid(w, opts);
        let d = &compiled.diagram;
        assert!(d.validate().is_empty(), "{:?}", d.validate());
        let back = d.braid_of().unwrap();
        assert_eq!(back.n, w.n, "strand count");
        assert_eq!(back.exponent_sum(), w.exponent_sum(), "exponent sum");
        assert_eq!(back.alexander_polynomial().unwrap(), w.alexander_polynomial().unwrap());
    }

    #[test]
    fn compile_round_trips_basic_words() {
        for (n, letters) in [
            (2usize, vec![1, 1, 1]),
            (3, vec![1, 2, 1, 2]),
            (3, vec![1, -2, 1, -2]),
            (4, vec![1, 2, 3, 1, -2, 3]),
            (2, vec![1]),
        ] {
            let w = BraidWord::of(n, letters);
            if !w.is_knot() {
                continue;
            }
            roundtrip(&w, CompileOptions { pack_runs: false });
            roundtrip(&w, CompileOptions { pack_runs: true });
        }
    }

    #[test]
    fn packed_runs_share_a_vertical() {
        let w = BraidWord::of(4, [3, 2, 1]);
        let compiled = braid_to_grid(&w, CompileOptions { pack_runs: true });
        assert_eq!(compiled.letter_slots[0], compiled.letter_slots[1]);
        assert_eq!(compiled.letter_slots[1], compiled.letter_slots[2]);
        roundtrip(&w, CompileOptions { pack_runs: true });

        let w = BraidWord::of(4, [-1, -2, -3]);
        let compiled = braid_to_grid(&w, CompileOptions { pack_runs: true });
        assert_eq!(compiled.letter_slots[0], compiled.letter_slots[2]);
        roundtrip(&w, CompileOptions { pack_runs: true });
    }

    #[test]
    fn trefoil_compile_is_the_tb_one_form() {
        let w = BraidWord::of(2, [1, 1, 1]);
        let d = braid_to_grid(&w, Default::default()).diagram;
        let inv = d.classical_invariants().unwrap();
        assert_eq!((inv.n, inv.ell, inv.sl), (2, 3, 1));
        assert_eq!((inv.tb, inv.r), (1, 0));
    }

    #[test]
    fn lowering_removes_spare_upward_arcs() {
        let base = braid_to_grid(&BraidWord::of(2, [1, 1, 1]), Default::default()).diagram;
        let up0 = base.up_count();
        let (stabbed, _) = base
            .grid_stabilize(Junction { theta: 0, end: JunctionEnd::Start }, StabKind::LegendrianNeg)
            .unwrap();
        let (stabbed, _) = stabbed
            .grid_stabilize(Junction { theta: 2, end: JunctionEnd::End }, StabKind::LegendrianNeg)
            .unwrap();
        let mut d = stabbed;
        assert_eq!(d.up_count(), up0 + 2);
        let alex = d.alexander().unwrap();
        let removed = lower_upward_count(&mut d, up0);
        assert_eq!(removed, 2);
        assert_eq!(d.up_count(), up0);
        assert_eq!(d.alexander().unwrap(), alex);
    }
}
