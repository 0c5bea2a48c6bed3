//! Closed braid words, their numeric invariants, and the elementary moves:
//! Markov (de)stabilization, the exchange move, and budgeted braid isotopy.
//!
//! The knot-type oracle is the Alexander polynomial computed from the reduced
//! Burau representation, normalized so that polynomial equality is a plain
//! comparison.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::LaurentPoly;

/// A closed braid: a cyclic word in the Artin generators of the braid group
/// on `n` strands. A letter `g` with `1 <= |g| <= n-1` denotes the generator
/// of index `|g|`, with the sign giving the crossing sign. Letters are stored
/// non-cyclically; rotation is applied on demand.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BraidWord {
    pub n: usize,
    pub letters: Vec<i32>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("letter {letter} is not a valid generator on {n} strands")]
    BadLetter { letter: i32, n: usize },
    #[error("strand count must be at least 1")]
    NoStrands,
    #[error("closure is not a knot: permutation has {components} cycles")]
    NotAKnot { components: usize },
}

impl BraidWord {
    pub fn new(n: usize, letters: impl Into<Vec<i32>>) -> Result<Self, BraidError> {
        let w = BraidWord { n, letters: letters.into() };
        w.check()?;
        Ok(w)
    }

    /// Panicking constructor for literals in tests and fixtures.
    pub fn of(n: usize, letters: impl Into<Vec<i32>>) -> Self {
        Self::new(n, letters).expect("invalid braid word literal")
    }

    pub fn check(&self) -> Result<(), BraidError> {
        if self.n == 0 {
            return Err(BraidError::NoStrands);
        }
        for &g in &self.letters {
            if g == 0 || (g.unsigned_abs() as usize) >= self.n {
                return Err(BraidError::BadLetter { letter: g, n: self.n });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Algebraic length: the exponent sum of the word.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&g| g.signum() as i64).sum()
    }

    /// Self-linking (Bennequin) number of the transverse closure:
    /// exponent sum less the braid index.
    pub fn self_linking(&self) -> i64 {
        self.exponent_sum() - self.n as i64
    }

    /// Permutation of the closure read left to right: strand starting at
    /// position `i` (0-based) ends one pass at `perm[i]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.n).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        // perm currently maps final-position -> start; invert for start -> end.
        let mut out = vec![0; self.n];
        for (end, &start) in perm.iter().enumerate() {
            out[start] = end;
        }
        out
    }

    /// Number of components of the closure.
    pub fn component_count(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.n];
        let mut cycles = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = perm[at];
            }
        }
        cycles
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotated(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        BraidWord { n: self.n, letters }
    }

    /// Cyclic free reduction: repeatedly cancel adjacent inverse pairs,
    /// including around the wrap, so the result is rotation-stable.
    pub fn cyclic_free_reduce(&self) -> Vec<i32> {
        let mut v = self.letters.clone();
        loop {
            let mut reduced = Vec::with_capacity(v.len());
            for &g in &v {
                if let Some(&last) = reduced.last() {
                    if last == -g {
                        reduced.pop();
                        continue;
                    }
                }
                reduced.push(g);
            }
            // wrap-around cancellation
            let mut changed = reduced.len() != v.len();
            while reduced.len() >= 2 && *reduced.first().unwrap() == -*reduced.last().unwrap() {
                reduced.remove(0);
                reduced.pop();
                changed = true;
            }
            v = reduced;
            if !changed {
                return v;
            }
        }
    }

    /// Canonical form: least cyclic rotation (lexicographic) of the cyclically
    /// freely reduced letter list. Two closed braid words are considered equal
    /// when their canonical forms and strand counts match.
    pub fn canonical(&self) -> BraidWord {
        let reduced = self.cyclic_free_reduce();
        if reduced.is_empty() {
            return BraidWord { n: self.n, letters: reduced };
        }
        let len = reduced.len();
        let mut best: Option<Vec<i32>> = None;
        for k in 0..len {
            let mut cand = reduced[k..].to_vec();
            cand.extend_from_slice(&reduced[..k]);
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
        BraidWord { n: self.n, letters: best.unwrap() }
    }

    /// Markov stabilization: add a strand and the letter ±(n) at the end.
    pub fn stabilize(&self, sign: i8) -> BraidWord {
        let mut letters = self.letters.clone();
        let g = self.n as i32;
        letters.push(if sign >= 0 { g } else { -g });
        BraidWord { n: self.n + 1, letters }
    }

    /// Markov destabilization: if some cyclic rotation has the form
    /// `u · σ_{n-1}^{±1}` with `u` free of index n-1, return `u` on n-1
    /// strands together with the removed sign.
    pub fn destabilize(&self) -> Option<(BraidWord, i8)> {
        if self.n < 2 {
            return None;
        }
        let top = (self.n - 1) as i32;
        let occurrences: Vec<usize> = self
            .letters
            .iter()
            .enumerate()
            .filter(|(_, &g)| g.abs() == top)
            .map(|(i, _)| i)
            .collect();
        if occurrences.len() != 1 {
            return None;
        }
        let at = occurrences[0];
        let sign = if self.letters[at] > 0 { 1 } else { -1 };
        let mut letters = Vec::with_capacity(self.letters.len() - 1);
        letters.extend_from_slice(&self.letters[at + 1..]);
        letters.extend_from_slice(&self.letters[..at]);
        Some((BraidWord { n: self.n - 1, letters }, sign))
    }

    /// Exchange move at the two positions of σ_{n-1}^{±1}. The positions must
    /// hold letters of index n-1 with opposite signs, and the two cyclic
    /// intervals between them must be free of index n-1. On success the signs
    /// of the two letters are swapped in place.
    pub fn exchange_move(&self, split: (usize, usize)) -> Option<BraidWord> {
        if self.n < 2 {
            return None;
        }
        let top = (self.n - 1) as i32;
        let (a, b) = split;
        let len = self.letters.len();
        if a >= len || b >= len || a == b {
            return None;
        }
        let (ga, gb) = (self.letters[a], self.letters[b]);
        if ga.abs() != top || gb.abs() != top || ga != -gb {
            return None;
        }
        // both cyclic intervals strictly between a and b must avoid index n-1
        let mut i = (a + 1) % len;
        while i != b {
            if self.letters[i].abs() == top {
                return None;
            }
            i = (i + 1) % len;
        }
        let mut i = (b + 1) % len;
        while i != a {
            if self.letters[i].abs() == top {
                return None;
            }
            i = (i + 1) % len;
        }
        let mut letters = self.letters.clone();
        letters[a] = -ga;
        letters[b] = -gb;
        Some(BraidWord { n: self.n, letters })
    }

    /// All successful exchange moves, as (split, result) pairs.
    pub fn exchange_moves(&self) -> Vec<((usize, usize), BraidWord)> {
        let mut out = Vec::new();
        if self.n < 2 {
            return out;
        }
        let top = (self.n - 1) as i32;
        let pos: Vec<usize> = self
            .letters
            .iter()
            .enumerate()
            .filter(|(_, &g)| g.abs() == top)
            .map(|(i, _)| i)
            .collect();
        for (ia, &a) in pos.iter().enumerate() {
            for &b in &pos[ia + 1..] {
                if let Some(w) = self.exchange_move((a, b)) {
                    out.push(((a, b), w));
                }
            }
        }
        out
    }

    /// Single-step braid isotopy rewrites: free reduction of an adjacent
    /// inverse pair, far commutation, and the braid relation (both readings),
    /// applied at every position of the cyclic word. Cyclic rotations are not
    /// listed here; they are free (applied separately).
    pub fn isotopy_rewrites(&self) -> Vec<BraidWord> {
        let mut out = Vec::new();
        let len = self.letters.len();
        if len == 0 {
            return out;
        }
        let get = |i: usize| self.letters[i % len];
        for i in 0..len {
            let a = get(i);
            let b = get(i + 1);
            // free reduction
            if len >= 2 && a == -b {
                let mut letters = Vec::with_capacity(len - 2);
                for j in 0..len {
                    if j != i && j != (i + 1) % len {
                        letters.push(get(j));
                    }
                }
                out.push(BraidWord { n: self.n, letters });
            }
            // far commutation
            if (a.abs() - b.abs()).abs() >= 2 {
                let mut letters = self.letters.clone();
                letters[i % len] = b;
                letters[(i + 1) % len] = a;
                out.push(BraidWord { n: self.n, letters });
            }
            // braid relation σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1},
            // in the positive and fully inverted readings
            if len >= 3 {
                let c = get(i + 2);
                let same_sign = a.signum() == b.signum() && b.signum() == c.signum();
                if same_sign && a == c && (a.abs() - b.abs()).abs() == 1 {
                    let mut letters = self.letters.clone();
                    letters[i % len] = b;
                    letters[(i + 1) % len] = a;
                    letters[(i + 2) % len] = b;
                    out.push(BraidWord { n: self.n, letters });
                }
            }
        }
        out
    }

    /// Budgeted braid-isotopy closure: the set of words reachable from `self`
    /// by at most `budget` rewrites, closed under cyclic rotation (rotations
    /// are free and do not consume budget). The listed rewrites never grow the
    /// word, so the closure is finite. This is deliberately incomplete: it is
    /// a bounded search aid, not a solution to the braid word problem.
    pub fn isotopy_closure(&self, budget: usize) -> Vec<BraidWord> {
        let mut seen: HashSet<(usize, Vec<i32>)> = HashSet::new();
        let mut out = Vec::new();
        let mut frontier = VecDeque::new();

        // expand a word into all its rotations, recording new ones
        let absorb = |w: &BraidWord,
                          depth: usize,
                          seen: &mut HashSet<(usize, Vec<i32>)>,
                          out: &mut Vec<BraidWord>,
                          frontier: &mut VecDeque<(BraidWord, usize)>| {
            let steps = if w.letters.is_empty() { 1 } else { w.letters.len() };
            for k in 0..steps {
                let r = w.rotated(k);
                let key = (r.n, r.letters.clone());
                if seen.insert(key) {
                    out.push(r.clone());
                    frontier.push_back((r, depth));
                }
            }
        };
        absorb(self, 0, &mut seen, &mut out, &mut frontier);
        while let Some((w, depth)) = frontier.pop_front() {
            if depth >= budget {
                continue;
            }
            for next in w.isotopy_rewrites() {
                if next.letters.len() > self.letters.len() + budget {
                    continue;
                }
                absorb(&next, depth + 1, &mut seen, &mut out, &mut frontier);
            }
        }
        out
    }

    /// Alexander polynomial of the closure via the reduced Burau matrix:
    /// Δ(t) = det(Burau(w) − I) / (1 + t + ... + t^{n-1}), normalized.
    /// Errors when the closure is a link with more than one component.
    pub fn alexander_polynomial(&self) -> Result<LaurentPoly, BraidError> {
        self.check()?;
        let components = self.component_count();
        if components != 1 {
            return Err(BraidError::NotAKnot { components });
        }
        if self.n == 1 {
            return Ok(LaurentPoly::one());
        }
        let m = self.n - 1;
        let mut mat = identity(m);
        for &g in &self.letters {
            apply_burau_letter(&mut mat, g, self.n);
        }
        for (i, row) in mat.iter_mut().enumerate() {
            row[i] = &row[i] - &LaurentPoly::one();
        }
        let det = determinant(&mat);
        let quot = det
            .div_exact(&LaurentPoly::geometric(self.n))
            .expect("Burau determinant must be divisible by 1 + t + ... + t^(n-1)");
        Ok(quot.normalized())
    }
}

fn identity(m: usize) -> Vec<Vec<LaurentPoly>> {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
                .collect()
        })
        .collect()
}

/// Right-multiply `mat` by the reduced Burau matrix of the letter `g` in B_n.
///
/// Column images of σ_i (1-based generator index i, basis e_1..e_{n-1}):
///   e_{i-1} -> e_{i-1} + t e_i,  e_i -> -t e_i,  e_{i+1} -> e_i + e_{i+1}
/// and of σ_i^{-1}:
///   e_{i-1} -> e_{i-1} + e_i,  e_i -> -t^{-1} e_i,  e_{i+1} -> t^{-1} e_i + e_{i+1}
fn apply_burau_letter(mat: &mut [Vec<LaurentPoly>], g: i32, n: usize) {
    let m = n - 1;
    let i = g.unsigned_abs() as usize; // generator index, 1-based
    let c = i - 1; // 0-based column of e_i
    let t = LaurentPoly::t();
    let tinv = LaurentPoly::monomial(-1, 1);
    for row in mat.iter_mut() {
        let old = row[c].clone();
        if g > 0 {
            // new e_{i-1} column gains t * old? No: columns transform, and
            // multiplication on the right replaces column c and mixes the
            // neighbors: col(e_{i-1}) += t * ? — spelled out per image:
            //   col'(e_{i-1}) = col(e_{i-1}) + t col(e_i)   [if i >= 2]
            //   col'(e_i)     = -t col(e_i)
            //   col'(e_{i+1}) = col(e_i) + col(e_{i+1})     [if i <= n-2]
            if c >= 1 {
                let add = &t * &old;
                row[c - 1] = &row[c - 1] + &add;
            }
            if c + 1 < m {
                row[c + 1] = &row[c + 1] + &old;
            }
            row[c] = &(&t * &old) * &LaurentPoly::monomial(0, -1);
        } else {
            if c >= 1 {
                row[c - 1] = &row[c - 1] + &old;
            }
            if c + 1 < m {
                let add = &tinv * &old;
                row[c + 1] = &row[c + 1] + &add;
            }
            row[c] = &(&tinv * &old) * &LaurentPoly::monomial(0, -1);
        }
    }
}

/// Determinant by expansion over column subsets (Laplace along rows with
/// memoization). Exact and fast enough for desk-scale matrices.
fn determinant(mat: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let m = mat.len();
    if m == 0 {
        return LaurentPoly::one();
    }
    // dp over bitmask of available columns, processing rows from the top
    let full: u32 = (1 << m) - 1;
    let mut dp: std::collections::HashMap<u32, LaurentPoly> = std::collections::HashMap::new();
    dp.insert(full, LaurentPoly::one());
    for row in 0..m {
        let mut next: std::collections::HashMap<u32, LaurentPoly> = std::collections::HashMap::new();
        for (mask, acc) in dp {
            if acc.is_zero() {
                continue;
            }
            let mut sign_toggle = 0usize;
            for col in 0..m {
                let bit = 1u32 << col;
                if mask & bit == 0 {
                    continue;
                }
                let entry = &mat[row][col];
                if !entry.is_zero() {
                    let mut term = &acc * entry;
                    if sign_toggle % 2 == 1 {
                        term = -&term;
                    }
                    let slot = next.entry(mask & !bit).or_insert_with(LaurentPoly::zero);
                    *slot = &*slot + &term;
                }
                sign_toggle += 1;
            }
        }
        dp = next;
    }
    dp.remove(&0).unwrap_or_else(LaurentPoly::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil_poly() -> LaurentPoly {
        LaurentPoly::from_coeffs([(0, 1), (1, -1), (2, 1)])
    }

    /// Independent oracle: Alexander polynomial of the trefoil from a Seifert
    /// matrix of its standard diagram, Δ(t) = det(V - t V^T) for
    /// V = [[-1, 1], [0, -1]].
    fn trefoil_from_seifert() -> LaurentPoly {
        let v = [[-1i64, 1], [0, -1]];
        let t = LaurentPoly::t();
        let entry = |i: usize, j: usize| {
            let a = LaurentPoly::monomial(0, v[i][j]);
            let b = &t * &LaurentPoly::monomial(0, v[j][i]);
            &a - &b
        };
        let det = &(&entry(0, 0) * &entry(1, 1)) - &(&entry(0, 1) * &entry(1, 0));
        det.normalized()
    }

    #[test]
    fn exponent_sum_and_self_linking() {
        let w = BraidWord::of(2, [1, 1, 1]);
        assert_eq!(w.exponent_sum(), 3);
        assert_eq!(w.self_linking(), 1);
        let empty = BraidWord::of(1, []);
        assert_eq!(empty.exponent_sum(), 0);
        assert_eq!(empty.self_linking(), -1);
    }

    #[test]
    fn stabilize_then_destabilize_round_trips() {
        let w = BraidWord::of(2, [1, 1, 1]);
        let s = w.stabilize(1);
        assert_eq!(s.n, 3);
        assert_eq!(s.letters, vec![1, 1, 1, 2]);
        assert_eq!(s.self_linking(), w.self_linking());
        let minus = w.stabilize(-1);
        assert_eq!(minus.self_linking(), w.self_linking() - 2);

        let (back, sign) = s.destabilize().unwrap();
        assert_eq!(sign, 1);
        assert_eq!(back.canonical().letters, w.canonical().letters);

        // σ1^3 in B2 has three occurrences of the top generator: no destab.
        assert!(w.destabilize().is_none());

        let neg = BraidWord::of(3, [-2, 1, 1, 1]);
        let (back, sign) = neg.destabilize().unwrap();
        assert_eq!(sign, -1);
        assert_eq!(back.letters, vec![1, 1, 1]);
    }

    #[test]
    fn exchange_move_definition() {
        let w = BraidWord::of(3, [2, 1, -2, 1]);
        let got = w.exchange_move((0, 2)).unwrap();
        assert_eq!(got.letters, vec![-2, 1, 2, 1]);
        assert_eq!(got.exponent_sum(), w.exponent_sum());
        assert_eq!(got.n, w.n);
        // no valid split on σ1^3
        assert!(BraidWord::of(2, [1, 1, 1]).exchange_moves().is_empty());
    }

    #[test]
    fn isotopy_closure_contains_expected_words() {
        let w = BraidWord::of(2, [1, -1]);
        let closure = w.isotopy_closure(1);
        assert!(closure.iter().any(|v| v.letters.is_empty()));

        let w = BraidWord::of(4, [1, 3]);
        let closure = w.isotopy_closure(1);
        assert!(closure.iter().any(|v| v.letters == vec![3, 1]));

        // closure always contains all cyclic rotations
        let w = BraidWord::of(3, [1, 2, 1]);
        let closure = w.isotopy_closure(0);
        for k in 0..3 {
            let r = w.rotated(k);
            assert!(closure.iter().any(|v| v.letters == r.letters));
        }
    }

    #[test]
    fn canonical_form_is_rotation_invariant() {
        let w = BraidWord::of(3, [1, 2, -1]);
        for k in 0..3 {
            assert_eq!(w.rotated(k).canonical().letters, w.canonical().letters);
        }
        // cyclic free reduction reaches across the wrap
        let w = BraidWord::of(3, [1, 2, -1]);
        assert_eq!(w.canonical().letters, vec![2]);
    }

    #[test]
    fn permutation_and_components() {
        assert!(BraidWord::of(2, [1, 1, 1]).is_knot());
        assert!(!BraidWord::of(2, [1, 1]).is_knot()); // Hopf link
        assert!(BraidWord::of(1, []).is_knot());
        assert_eq!(BraidWord::of(3, []).component_count(), 3);
    }

    #[test]
    fn burau_satisfies_braid_relations() {
        // σ1 σ2 σ1 = σ2 σ1 σ2 in B3, checked symbolically
        let mut a = identity(2);
        for g in [1, 2, 1] {
            apply_burau_letter(&mut a, g, 3);
        }
        let mut b = identity(2);
        for g in [2, 1, 2] {
            apply_burau_letter(&mut b, g, 3);
        }
        assert_eq!(a, b);
        // σ1 σ1^{-1} = 1
        let mut c = identity(2);
        for g in [1, -1] {
            apply_burau_letter(&mut c, g, 3);
        }
        assert_eq!(c, identity(2));
        // far commutation in B4
        let mut d = identity(3);
        for g in [1, 3] {
            apply_burau_letter(&mut d, g, 4);
        }
        let mut e = identity(3);
        for g in [3, 1] {
            apply_burau_letter(&mut e, g, 4);
        }
        assert_eq!(d, e);
    }

    #[test]
    fn alexander_of_standard_words() {
        // trefoil as σ1^3 in B2, against the independent Seifert-matrix oracle
        let tref = BraidWord::of(2, [1, 1, 1]).alexander_polynomial().unwrap();
        assert_eq!(tref, trefoil_from_seifert());
        assert_eq!(tref, trefoil_poly());
        // the same knot as the (3,2)-torus braid in B3
        let tref2 = BraidWord::of(3, [1, 2, 1, 2]).alexander_polynomial().unwrap();
        assert_eq!(tref2, trefoil_poly());
        // unknot
        assert_eq!(
            BraidWord::of(1, []).alexander_polynomial().unwrap(),
            LaurentPoly::one()
        );
        // figure-eight as σ1 σ2^{-1} σ1 σ2^{-1}
        let fig8 = BraidWord::of(3, [1, -2, 1, -2]).alexander_polynomial().unwrap();
        assert_eq!(fig8, LaurentPoly::from_coeffs([(0, 1), (1, -3), (2, 1)]));
        // mirror invariance of the normalized polynomial for the trefoil pair
        let left = BraidWord::of(2, [-1, -1, -1]).alexander_polynomial().unwrap();
        assert_eq!(left, tref);
        // link input is rejected
        assert_eq!(
            BraidWord::of(2, [1, 1]).alexander_polynomial().unwrap_err(),
            BraidError::NotAKnot { components: 2 }
        );
    }

    #[test]
    fn alexander_is_markov_invariant_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 200 {
            let n = rng.gen_range(2..5usize);
            let len = rng.gen_range(0..8usize);
            let letters: Vec<i32> = (0..len)
                .map(|_| {
                    let idx = rng.gen_range(1..n as i32);
                    if rng.gen_bool(0.5) {
                        idx
                    } else {
                        -idx
                    }
                })
                .collect();
            let w = BraidWord::of(n, letters);
            if !w.is_knot() {
                continue;
            }
            tested += 1;
            let base = w.alexander_polynomial().unwrap();
            for sign in [1i8, -1] {
                let s = w.stabilize(sign);
                assert_eq!(s.alexander_polynomial().unwrap(), base);
            }
            for (_, ex) in w.exchange_moves() {
                assert_eq!(ex.alexander_polynomial().unwrap(), base);
                assert_eq!(ex.exponent_sum(), w.exponent_sum());
                assert_eq!(ex.permutation(), w.permutation());
            }
        }
    }
}
