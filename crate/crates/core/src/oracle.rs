//! Brute-force ground truth.
//!
//! Everything here works on raw finite point maps and shares nothing with the
//! window-plus-tails representation except [`Element::apply`], so a bug in
//! the canonical representation cannot hide in the oracle.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::element::{Element, PlusPart, ValidationReport, Z2};
use crate::error::{Error, Result, Violation};
use crate::point::{Point, Window};

/// A finite partial injective map whose domain lies in a square window.
/// Images may fall outside the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<[u32; 4]>", try_from = "Vec<[u32; 4]>")]
pub struct WindowedPartialMap {
    window: Window,
    entries: BTreeMap<Point, Point>,
}

impl WindowedPartialMap {
    /// Rejects entries outside the window and non-injective entry sets.
    pub fn new(window: Window, entries: BTreeMap<Point, Point>) -> std::result::Result<Self, Violation> {
        if let Some(x) = entries.keys().find(|&&x| !window.contains(x)) {
            return Err(Violation::Malformed(format!("{x} outside window {}", window.bound())));
        }
        let mut seen = BTreeMap::new();
        for (&x, &y) in &entries {
            if let Some(prev) = seen.insert(y, x) {
                return Err(Violation::InjectivityCollision(prev, x));
            }
        }
        Ok(WindowedPartialMap { window, entries })
    }

    /// Skips the injectivity check, so that [`bf_check`] can be exercised on bad input.
    pub fn from_raw(window: Window, entries: BTreeMap<Point, Point>) -> Self {
        WindowedPartialMap { window, entries }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn entries(&self) -> &BTreeMap<Point, Point> {
        &self.entries
    }

    pub fn get(&self, x: Point) -> Option<Point> {
        self.entries.get(&x).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl From<WindowedPartialMap> for Vec<[u32; 4]> {
    fn from(m: WindowedPartialMap) -> Self {
        m.entries.iter().map(|(x, y)| [x.i, x.j, y.i, y.j]).collect()
    }
}

impl TryFrom<Vec<[u32; 4]>> for WindowedPartialMap {
    type Error = Error;

    fn try_from(v: Vec<[u32; 4]>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for [i, j, u, v] in v {
            entries.insert(Point::try_new(i, j)?, Point::try_new(u, v)?);
        }
        let bound = entries.keys().map(|x: &Point| x.extent()).max().unwrap_or(1);
        Ok(WindowedPartialMap::new(Window::new(bound)?, entries)?)
    }
}

/// Pointwise evaluation of `a` on `[1, bound]^2`.
pub fn truncate(a: &Element, bound: u32) -> WindowedPartialMap {
    let window = Window::new(bound).expect("truncation window must be non-empty");
    let entries = window.points().filter_map(|x| a.apply(x).map(|y| (x, y))).collect();
    WindowedPartialMap { window, entries }
}

/// Exhaustive injectivity and monotonicity check over all comparable pairs.
pub fn bf_check(m: &WindowedPartialMap) -> ValidationReport {
    let w = m.window;
    let mut seen = BTreeMap::new();
    for (&x, &y) in &m.entries {
        if let Some(prev) = seen.insert(y, x) {
            return ValidationReport::fail(Violation::InjectivityCollision(prev, x));
        }
    }
    let b = w.bound() as usize;
    let mut dense = vec![None; b * b];
    for (&x, &y) in &m.entries {
        dense[(x.i as usize - 1) * b + x.j as usize - 1] = Some(y);
    }
    for (k, py) in dense.iter().enumerate() {
        let Some(py) = py else { continue };
        let (pi, pj) = (k / b, k % b);
        for qi in pi..b {
            for qj in pj..b {
                if let Some(qy) = dense[qi * b + qj] {
                    if !py.leq(qy) {
                        let p = Point { i: pi as u32 + 1, j: pj as u32 + 1 };
                        let q = Point { i: qi as u32 + 1, j: qj as u32 + 1 };
                        return ValidationReport::fail(Violation::MonotonicityViolation(p, q));
                    }
                }
            }
        }
    }
    ValidationReport::ok()
}

/// Pointwise composition, `m1` first. Points whose intermediate image is not
/// in the domain of `m2` (including those leaving its window) are absent.
pub fn bf_compose(m1: &WindowedPartialMap, m2: &WindowedPartialMap) -> WindowedPartialMap {
    let entries = m1.entries.iter().filter_map(|(&x, y)| m2.get(*y).map(|z| (x, z))).collect();
    WindowedPartialMap { window: m1.window, entries }
}

/// Tail data shared by the enumerator and the random generator.
struct Frame {
    window: Window,
    rows: Vec<u32>,
    cols: Vec<u32>,
    tail_image: Vec<bool>,
}

impl Frame {
    fn new(bound: u32, rows: Vec<u32>, cols: Vec<u32>) -> Self {
        let window = Window::new(bound).unwrap();
        let mut tail_image = vec![false; window.len()];
        for k in 1..=bound {
            for t in (bound + 1).saturating_sub(rows[k as usize - 1]).max(1)..=bound {
                tail_image[window.index(Point { i: t, j: k })] = true;
            }
            for t in (bound + 1).saturating_sub(cols[k as usize - 1]).max(1)..=bound {
                tail_image[window.index(Point { i: k, j: t })] = true;
            }
        }
        Frame { window, rows, cols, tail_image }
    }

    /// Coordinatewise upper bound on the image of `p`: the meet of the images
    /// of the points above it that are already assigned or lie on a tail.
    fn upper_bound(&self, p: Point, assigned: &[Option<Point>]) -> Point {
        let b = self.window.bound();
        let mut u = Point { i: b + 1 - self.rows[p.j as usize - 1], j: p.j }
            .meet(Point { i: p.i, j: b + 1 - self.cols[p.i as usize - 1] });
        for qi in p.i..=b {
            for qj in p.j..=b {
                if let Some(y) = assigned[self.window.index(Point { i: qi, j: qj })] {
                    u = u.meet(y);
                }
            }
        }
        u
    }

    fn candidates(&self, p: Point, assigned: &[Option<Point>], taken: &[bool]) -> Vec<Point> {
        let u = self.upper_bound(p, assigned);
        let mut out = Vec::new();
        for i in 1..=u.i {
            for j in 1..=u.j {
                let y = Point { i, j };
                let k = self.window.index(y);
                if !taken[k] && !self.tail_image[k] {
                    out.push(y);
                }
            }
        }
        out
    }

    fn into_plus(self, assigned: Vec<Option<Point>>) -> PlusPart {
        PlusPart::from_table(self.window, assigned, self.rows, self.cols)
    }
}

/// All non-increasing vectors of length `len` with entries at most `max`.
fn non_increasing_vectors(len: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in (0..=cap).rev() {
            cur.push(v);
            go(len, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, max, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Every element whose normalized window is at most `max_window` and whose
/// shifts are at most `max_shift`, in both orientations, each exactly once
/// (normalized).
pub fn enumerate_elements(max_window: u32, max_shift: u32) -> Vec<Element> {
    let bound = max_window.max(1);
    let cap = max_shift.min(bound);
    let order: Vec<Point> = {
        let mut v: Vec<Point> = Window::new(bound).unwrap().points().collect();
        v.reverse();
        v
    };
    let mut plus_parts = Vec::new();
    let vectors = non_increasing_vectors(bound as usize, cap);
    for rows in &vectors {
        for cols in &vectors {
            let frame = Frame::new(bound, rows.clone(), cols.clone());
            let mut assigned = vec![None; frame.window.len()];
            let mut taken = vec![false; frame.window.len()];
            fill_all(&frame, &order, 0, &mut assigned, &mut taken, &mut plus_parts);
        }
    }
    let mut out = Vec::with_capacity(plus_parts.len() * 2);
    for g in [Z2::Zero, Z2::One] {
        out.extend(plus_parts.iter().map(|p: &PlusPart| Element::from_valid(p.normalize(), g)));
    }
    out
}

fn fill_all(
    frame: &Frame,
    order: &[Point],
    k: usize,
    assigned: &mut Vec<Option<Point>>,
    taken: &mut Vec<bool>,
    out: &mut Vec<PlusPart>,
) {
    if k == order.len() {
        let plus = PlusPart::from_table(frame.window, assigned.clone(), frame.rows.clone(), frame.cols.clone());
        if plus.validate().is_valid() {
            out.push(plus);
        }
        return;
    }
    let p = order[k];
    let idx = frame.window.index(p);
    fill_all(frame, order, k + 1, assigned, taken, out);
    for y in frame.candidates(p, assigned, taken) {
        let yk = frame.window.index(y);
        assigned[idx] = Some(y);
        taken[yk] = true;
        fill_all(frame, order, k + 1, assigned, taken, out);
        taken[yk] = false;
    }
    assigned[idx] = None;
}

/// Size limits for [`random_element`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomParams {
    pub max_window: u32,
    pub max_shift: u32,
    /// Upper bound on the number of domain holes (which is at least the sum
    /// of all shifts).
    pub hole_budget: u32,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { max_window: 8, max_shift: 4, hole_budget: 6 }
    }
}

const MAX_ATTEMPTS: u32 = 1000;

/// A seeded random element of either orientation.
pub fn random_element(seed: u64, params: RandomParams) -> Result<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = if rng.gen_bool(0.5) { Z2::One } else { Z2::Zero };
    Ok(Element::from_valid(random_plus_with(&mut rng, params)?, g))
}

/// A seeded random orientation-preserving element.
pub fn random_plus(seed: u64, params: RandomParams) -> Result<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Element::from_valid(random_plus_with(&mut rng, params)?, Z2::Zero))
}

/// Draws a plus part from `rng`; the result is valid and normalized.
pub fn random_plus_with<R: Rng>(rng: &mut R, params: RandomParams) -> Result<PlusPart> {
    for _ in 0..MAX_ATTEMPTS {
        if let Some(p) = attempt(rng, params) {
            return Ok(p.normalize());
        }
    }
    Err(Error::GenerationExhausted { attempts: MAX_ATTEMPTS })
}

/// Random shift vectors built from exponent increments: adding a generator
/// of index `k` raises `P_1..P_k` by one and costs `k` holes.
fn random_shifts<R: Rng>(rng: &mut R, bound: u32, max_shift: u32, budget: &mut u32) -> Vec<u32> {
    let mut shifts = vec![0u32; bound as usize];
    let steps = rng.gen_range(0..=max_shift);
    for _ in 0..steps {
        let k = rng.gen_range(1..=bound);
        if k > *budget || shifts[0] >= max_shift.min(bound) {
            continue;
        }
        *budget -= k;
        for s in &mut shifts[..k as usize] {
            *s += 1;
        }
    }
    shifts
}

fn attempt<R: Rng>(rng: &mut R, params: RandomParams) -> Option<PlusPart> {
    let bound = rng.gen_range(1..=params.max_window.max(1));
    let mut budget = params.hole_budget;
    let (rows, cols) = if rng.gen_bool(0.5) {
        let r = random_shifts(rng, bound, params.max_shift, &mut budget);
        (r, random_shifts(rng, bound, params.max_shift, &mut budget))
    } else {
        let c = random_shifts(rng, bound, params.max_shift, &mut budget);
        (random_shifts(rng, bound, params.max_shift, &mut budget), c)
    };
    let frame = Frame::new(bound, rows, cols);
    let mut assigned = vec![None; frame.window.len()];
    let mut taken = vec![false; frame.window.len()];
    let mut holes = 0u32;
    let hole_rate = rng.gen_range(0.0..0.15);
    let mut order: Vec<Point> = frame.window.points().collect();
    order.reverse();
    for p in order {
        let cands = frame.candidates(p, &assigned, &taken);
        if cands.is_empty() || (holes < params.hole_budget && rng.gen_bool(hole_rate)) {
            holes += 1;
            if holes > params.hole_budget {
                return None;
            }
            continue;
        }
        let y = if rng.gen_bool(0.85) {
            let maximal: Vec<Point> =
                cands.iter().copied().filter(|c| !cands.iter().any(|d| d != c && c.leq(*d))).collect();
            *maximal.choose(rng).unwrap()
        } else {
            *cands.choose(rng).unwrap()
        };
        assigned[frame.window.index(p)] = Some(y);
        taken[frame.window.index(y)] = true;
    }
    let plus = frame.into_plus(assigned);
    plus.validate().is_valid().then_some(plus)
}

/// Random finite hole set inside `[1, bound]^2`.
pub fn random_holes<R: Rng>(rng: &mut R, bound: u32, max_count: u32) -> BTreeSet<Point> {
    let n = rng.gen_range(0..=max_count);
    (0..n).map(|_| Point { i: rng.gen_range(1..=bound), j: rng.gen_range(1..=bound) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(i: u32, j: u32) -> Point {
        Point::new(i, j)
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(truncate(&Element::identity(), 3).len(), 9);
        let g1 = truncate(&Element::gamma(1).unwrap(), 2);
        assert_eq!(g1.entries(), &BTreeMap::from([(p(2, 1), p(1, 1)), (p(1, 2), p(1, 2)), (p(2, 2), p(2, 2))]));
        let w = truncate(&Element::swap(), 2);
        assert_eq!(
            w.entries(),
            &BTreeMap::from([(p(1, 1), p(1, 1)), (p(1, 2), p(2, 1)), (p(2, 1), p(1, 2)), (p(2, 2), p(2, 2))])
        );
    }

    #[test]
    fn bf_check_examples() {
        let w = Window::new(2).unwrap();
        let bad = WindowedPartialMap::new(w, BTreeMap::from([(p(1, 1), p(2, 2)), (p(2, 2), p(1, 1))])).unwrap();
        assert_eq!(bf_check(&bad).violation(), Some(&Violation::MonotonicityViolation(p(1, 1), p(2, 2))));
        let entries = BTreeMap::from([(p(1, 1), p(1, 2)), (p(2, 1), p(1, 2))]);
        assert!(matches!(WindowedPartialMap::new(w, entries.clone()), Err(Violation::InjectivityCollision(_, _))));
        let raw = WindowedPartialMap::from_raw(w, entries);
        assert!(matches!(bf_check(&raw).violation(), Some(Violation::InjectivityCollision(_, _))));
        assert!(bf_check(&truncate(&Element::gamma(3).unwrap(), 9)).is_valid());
    }

    #[test]
    fn bf_compose_examples() {
        let g = truncate(&Element::gamma(1).unwrap(), 10);
        assert_eq!(bf_compose(&g, &g).get(p(3, 1)), Some(p(1, 1)));
        assert_eq!(bf_compose(&g, &truncate(&Element::identity(), 10)), g);
        let w = Window::new(2).unwrap();
        let out = WindowedPartialMap::new(w, BTreeMap::from([(p(1, 1), p(3, 3)), (p(2, 2), p(2, 2))])).unwrap();
        let c = bf_compose(&out, &truncate(&Element::identity(), 2));
        assert_eq!(c.entries(), &BTreeMap::from([(p(2, 2), p(2, 2))]));
    }

    #[test]
    fn enumeration_of_the_smallest_window() {
        let all = enumerate_elements(1, 0);
        assert_eq!(all.len(), 4);
        let set: HashSet<_> = all.iter().cloned().collect();
        assert!(set.contains(&Element::identity()));
        assert!(set.contains(&Element::swap()));
        assert!(set.contains(&Element::partial_identity([p(1, 1)])));
        let mut with_shift = enumerate_elements(1, 1);
        with_shift.retain(|e| e.g() == Z2::Zero);
        assert!(with_shift.contains(&Element::gamma(1).unwrap()));
        assert!(with_shift.contains(&Element::upsilon(1).unwrap()));
    }

    #[test]
    fn enumeration_is_valid_and_duplicate_free() {
        let all = enumerate_elements(2, 1);
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert_eq!(all.len(), ENUMERATED_2_1);
        for e in &all {
            assert!(e.plus().validate().is_valid());
            assert!(e.is_normalized());
            assert!(e.bound() <= 2 && e.plus().max_shift() <= 1);
        }
    }

    /// Regression constant for `enumerate_elements(2, 1)`.
    const ENUMERATED_2_1: usize = 228;

    /// Every assignment of {hole} or a window point to each window point, for
    /// every shift pair, filtered by the truncation check alone.
    #[test]
    fn enumeration_matches_unpruned_search() {
        let bound = 2u32;
        let w = Window::new(bound).unwrap();
        let pts: Vec<Point> = w.points().collect();
        let mut expected = HashSet::new();
        for rows in non_increasing_vectors(2, 1) {
            for cols in non_increasing_vectors(2, 1) {
                let choices = pts.len() as u32 + 1;
                for code in 0..choices.pow(pts.len() as u32) {
                    let mut c = code;
                    let mut entries = Vec::new();
                    for &x in &pts {
                        let pick = c % choices;
                        c /= choices;
                        if pick > 0 {
                            entries.push((x, pts[pick as usize - 1]));
                        }
                    }
                    let plus = PlusPart::from_parts(bound, entries, rows.clone(), cols.clone()).unwrap();
                    let candidate = Element::from_valid(plus, Z2::Zero);
                    if bf_check(&truncate(&candidate, 8)).is_valid() {
                        expected.insert(candidate.normalize());
                    }
                }
            }
        }
        let got: HashSet<_> = enumerate_elements(2, 1).into_iter().filter(|e| e.g() == Z2::Zero).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn random_elements_are_deterministic_and_valid() {
        let params = RandomParams::default();
        assert_eq!(random_element(7, params).unwrap(), random_element(7, params).unwrap());
        let mut orientations = HashSet::new();
        for seed in 0..1000 {
            let e = random_element(seed, params).unwrap();
            assert!(e.plus().validate().is_valid());
            assert!(e.bound() <= params.max_window);
            assert!(e.plus().max_shift() <= params.max_shift);
            assert!(e.domain_complement().len() as u32 <= params.hole_budget);
            orientations.insert(e.g());
        }
        assert_eq!(orientations.len(), 2);
    }

    #[test]
    fn windowed_map_json() {
        let m = truncate(&Element::gamma(1).unwrap(), 2);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[1,2,1,2],[2,1,1,1],[2,2,2,2]]");
        assert_eq!(serde_json::from_str::<WindowedPartialMap>(&s).unwrap(), m);
    }
}
