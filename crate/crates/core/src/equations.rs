//! All solutions of `a x = b` and `x a = b`, and inverse membership.
//!
//! Both equations reduce to orientation-preserving ones. A solution's tail
//! shifts are forced to be `P^b - P^a`, its values are forced on a cofinite
//! set, and the remaining freedom is a finite injective assignment from a
//! finite set of free points into a finite set of unused targets (or holes).

use std::collections::{HashMap, HashSet};

use crate::element::{Element, PlusPart, Z2};
use crate::error::{Error, Result};
use crate::point::{Point, Window};

/// The explicit window used for solutions of an equation between `a` and `b`.
///
/// Beyond `max(B_a, B_b) + maxshift(a)` every point is a tail point of both
/// factors, so the solution follows its own tails there; the extra
/// `maxshift(b) + 1` keeps the forced region strictly inside the window.
pub fn analytic_bound(a: &PlusPart, b: &PlusPart) -> u32 {
    a.bound().max(b.bound()) + a.max_shift() + b.max_shift() + 1
}

fn solution_shifts(a: &PlusPart, b: &PlusPart, bound: u32) -> Option<(Vec<u32>, Vec<u32>)> {
    let diff = |sa: &dyn Fn(u32) -> u32, sb: &dyn Fn(u32) -> u32| -> Option<Vec<u32>> {
        let v: Vec<u32> = (1..=bound).map(|k| sb(k).checked_sub(sa(k))).collect::<Option<_>>()?;
        v.windows(2).all(|w| w[0] >= w[1]).then_some(v)
    };
    let rows = diff(&|k| a.row_shift(k), &|k| b.row_shift(k))?;
    let cols = diff(&|k| a.col_shift(k), &|k| b.col_shift(k))?;
    Some((rows, cols))
}

/// Inverse of `a` on `[1, bound]^2` (every range point there has a preimage
/// within `bound + maxshift`).
fn inverse_on(a: &PlusPart, bound: u32) -> HashMap<Point, Point> {
    let reach = Window::new(bound + a.max_shift()).unwrap();
    reach.points().filter_map(|x| a.apply(x).filter(|y| y.i <= bound && y.j <= bound).map(|y| (y, x))).collect()
}

/// A partially determined solution: forced table plus free points and targets.
struct Problem {
    window: Window,
    table: Vec<Option<Point>>,
    rows: Vec<u32>,
    cols: Vec<u32>,
    free: Vec<Point>,
    targets: Vec<Point>,
}

impl Problem {
    /// Whether assigning `y` to `f` keeps the table monotone on the window.
    fn compatible(&self, f: Point, y: Point) -> bool {
        self.window.points().all(|q| match self.table[self.window.index(q)] {
            Some(z) if q != f => (!f.leq(q) || y.leq(z)) && (!q.leq(f) || z.leq(y)),
            _ => true,
        })
    }

    fn search(&mut self, k: usize, used: &mut Vec<bool>, out: &mut Vec<PlusPart>) {
        if k == self.free.len() {
            let plus = PlusPart::from_table(self.window, self.table.clone(), self.rows.clone(), self.cols.clone());
            if plus.validate().is_valid() {
                out.push(plus.normalize());
            }
            return;
        }
        let f = self.free[k];
        self.search(k + 1, used, out);
        let idx = self.window.index(f);
        for t in 0..self.targets.len() {
            let y = self.targets[t];
            if used[t] || !self.compatible(f, y) {
                continue;
            }
            used[t] = true;
            self.table[idx] = Some(y);
            self.search(k + 1, used, out);
            self.table[idx] = None;
            used[t] = false;
        }
    }

    fn solve(mut self) -> Vec<PlusPart> {
        let mut used = vec![false; self.targets.len()];
        let mut out = Vec::new();
        self.search(0, &mut used, &mut out);
        out
    }
}

fn working_bound(a: &PlusPart, b: &PlusPart, search_margin: Option<u32>) -> Result<u32> {
    let required = analytic_bound(a, b);
    match search_margin {
        Some(margin) if margin < required => Err(Error::MarginTooSmall { margin, required }),
        Some(margin) => Ok(margin),
        None => Ok(required),
    }
}

/// All `x` with `a x = b` for orientation-preserving `a`, `b`.
fn solve_plus_right(a: &PlusPart, b: &PlusPart, bound: u32) -> Vec<PlusPart> {
    // dom(a x) is contained in dom a
    if a.domain_complement().iter().any(|&h| b.apply(h).is_some()) {
        return Vec::new();
    }
    let Some((rows, cols)) = solution_shifts(a, b, bound) else { return Vec::new() };
    let window = Window::new(bound).unwrap();
    let inv = inverse_on(a, bound);
    let mut table = vec![None; window.len()];
    let mut free = Vec::new();
    for y in window.points() {
        match inv.get(&y) {
            // x must send y = z a to z b, and drop it when z is outside dom b
            Some(&z) => table[window.index(y)] = b.apply(z),
            None => free.push(y),
        }
    }
    // forced images are exactly ran b
    let targets = b.range_complement().into_iter().collect();
    Problem { window, table, rows, cols, free, targets }.solve()
}

/// All `x` with `x a = b` for orientation-preserving `a`, `b`.
fn solve_plus_left(a: &PlusPart, b: &PlusPart, bound: u32) -> Vec<PlusPart> {
    let Some((rows, cols)) = solution_shifts(a, b, bound) else { return Vec::new() };
    let window = Window::new(bound).unwrap();
    // b(y) <= y for orientation-preserving maps, so all needed values of
    // a^{-1} lie in the window
    let inv = inverse_on(a, bound);
    let mut table = vec![None; window.len()];
    let mut free = Vec::new();
    for y in window.points() {
        match b.apply(y) {
            Some(z) => match inv.get(&z) {
                Some(&x) => table[window.index(y)] = Some(x),
                None => return Vec::new(),
            },
            None => free.push(y),
        }
    }
    // a free point is either a hole or sent outside dom a
    let targets = a.domain_complement().into_iter().collect();
    Problem { window, table, rows, cols, free, targets }.solve()
}

fn dedupe(xs: Vec<Element>) -> Vec<Element> {
    let mut seen = HashSet::new();
    let mut out: Vec<Element> = xs.into_iter().filter(|x| seen.insert(x.clone())).collect();
    out.sort_by_cached_key(|x| x.to_json());
    out
}

fn conj_if(p: &PlusPart, g: Z2) -> PlusPart {
    if g.is_one() {
        p.conjugate()
    } else {
        p.clone()
    }
}

fn checked(solutions: Vec<Element>, ok: impl Fn(&Element) -> bool) -> Result<Vec<Element>> {
    if let Some(bad) = solutions.iter().find(|x| !ok(x)) {
        return Err(Error::Internal(format!("solver produced a non-solution {bad}")));
    }
    Ok(dedupe(solutions))
}

/// Every `x` with `a x = b`, sorted by JSON form.
///
/// `search_margin` overrides the explicit solution window; it must be at
/// least [`analytic_bound`].
pub fn solve_right(a: &Element, b: &Element, search_margin: Option<u32>) -> Result<Vec<Element>> {
    // (p_a, g_a)(p_x, g_x) = (p_a * h^{g_a}(p_x), g_a + g_x)
    let g = b.g() + a.g();
    let bound = working_bound(a.plus(), b.plus(), search_margin)?;
    let sols = solve_plus_right(a.plus(), b.plus(), bound)
        .into_iter()
        .map(|x| Element::from_valid(conj_if(&x, a.g()).normalize(), g))
        .collect();
    checked(sols, |x| a.compose(x) == *b)
}

/// Every `x` with `x a = b`, sorted by JSON form.
pub fn solve_left(a: &Element, b: &Element, search_margin: Option<u32>) -> Result<Vec<Element>> {
    // (p_x, g_x)(p_a, g_a) = (p_x * h^{g_x}(p_a), g_x + g_a)
    let g = b.g() + a.g();
    let a_twisted = conj_if(a.plus(), g);
    let bound = working_bound(&a_twisted, b.plus(), search_margin)?;
    let sols = solve_plus_left(&a_twisted, b.plus(), bound).into_iter().map(|x| Element::from_valid(x, g)).collect();
    checked(sols, |x| x.compose(a) == *b)
}

/// The set-theoretic inverse, when it is again a member.
///
/// Nonzero tail shifts would invert to right or up shifts, which no member
/// has, so only shift-free elements can be invertible.
pub fn try_inverse(a: &Element) -> Option<Element> {
    let plus = a.plus();
    if plus.max_shift() != 0 {
        return None;
    }
    let entries: Vec<(Point, Point)> = plus.explicit_entries().map(|(x, y)| (y, x)).collect();
    let zeros = vec![0; plus.bound() as usize];
    let inv = PlusPart::from_parts(plus.bound(), entries, zeros.clone(), zeros).ok()?;
    if !inv.validate().is_valid() {
        return None;
    }
    // (p w^g)^{-1} = w^g p^{-1} = h^g(p^{-1}) w^g
    Some(Element::from_valid(conj_if(&inv, a.g()).normalize(), a.g()))
}

/// The solution of `x a = b` with the smallest domain (every free point is
/// a hole), if any solution exists. Restricting a solution to the forced
/// points keeps it valid, so this exists exactly when a solution does.
pub fn solve_left_minimal(a: &Element, b: &Element) -> Option<Element> {
    let g = b.g() + a.g();
    let a_twisted = conj_if(a.plus(), g);
    let (a, b) = (&a_twisted, b.plus());
    let bound = analytic_bound(a, b);
    let (rows, cols) = solution_shifts(a, b, bound)?;
    let window = Window::new(bound).unwrap();
    let inv = inverse_on(a, bound);
    let mut table = vec![None; window.len()];
    for y in window.points() {
        if let Some(z) = b.apply(y) {
            table[window.index(y)] = Some(*inv.get(&z)?);
        }
    }
    let plus = PlusPart::from_table(window, table, rows, cols);
    plus.validate().is_valid().then(|| Element::from_valid(plus.normalize(), g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32, j: u32) -> Point {
        Point::new(i, j)
    }

    fn gamma(n: u32) -> Element {
        Element::gamma(n).unwrap()
    }

    fn upsilon(n: u32) -> Element {
        Element::upsilon(n).unwrap()
    }

    #[test]
    fn right_equations() {
        let id = Element::identity();
        assert_eq!(solve_right(&id, &gamma(1), None).unwrap(), vec![gamma(1)]);
        assert_eq!(solve_right(&gamma(1), &gamma(1), None).unwrap(), vec![id.clone()]);
        assert!(solve_right(&gamma(1), &upsilon(1), None).unwrap().is_empty());
        let w = Element::swap();
        assert_eq!(solve_right(&w, &id, None).unwrap(), vec![w.clone()]);
    }

    #[test]
    fn left_equations() {
        let id = Element::identity();
        assert_eq!(solve_left(&id, &gamma(2), None).unwrap(), vec![gamma(2)]);
        assert!(solve_left(&gamma(1), &upsilon(1), None).unwrap().is_empty());
        assert_eq!(solve_left_minimal(&gamma(1), &upsilon(1)), None);
        let r = gamma(1).restrict(&[p(9, 9)]);
        assert_eq!(solve_left_minimal(&gamma(1), &r), Some(Element::partial_identity([p(1, 1), p(9, 9)])));
        // x * gamma_1 = gamma_1 also admits x removing a point that gamma_1 drops anyway
        let sols = solve_left(&gamma(1), &gamma(1), None).unwrap();
        assert!(sols.contains(&id));
        for x in &sols {
            assert_eq!(x.compose(&gamma(1)), gamma(1));
        }
    }

    #[test]
    fn free_points_give_several_solutions() {
        // holes of a partial identity can be filled arbitrarily in x a = a
        let e = Element::partial_identity([p(1, 1)]);
        let sols = solve_left(&e, &e, None).unwrap();
        assert_eq!(sols.len(), 2);
        assert!(sols.contains(&e) && sols.contains(&Element::identity()));
        let sols = solve_right(&e, &e, None).unwrap();
        assert_eq!(sols.len(), 2);
    }

    #[test]
    fn margin_override() {
        let a = gamma(2);
        let required = analytic_bound(a.plus(), a.plus());
        assert!(matches!(
            solve_right(&a, &a, Some(required - 1)),
            Err(Error::MarginTooSmall { margin, required: r }) if margin == required - 1 && r == required
        ));
        assert_eq!(solve_right(&a, &a, Some(required + 3)).unwrap(), solve_right(&a, &a, None).unwrap());
    }

    #[test]
    fn inverses() {
        assert_eq!(try_inverse(&Element::identity()), Some(Element::identity()));
        assert_eq!(try_inverse(&Element::swap()), Some(Element::swap()));
        assert_eq!(try_inverse(&gamma(1)), None);
        // (1,2) -> (1,1), (2,2) -> (2,2), holes (1,1), (2,1): the inverse sends
        // (1,1) -> (1,2) but fixes (3,1), and (1,2) is not below (3,1)
        let plus = PlusPart::new(2, [(p(1, 2), p(1, 1)), (p(2, 2), p(2, 2))], vec![0, 0], vec![0, 0]).unwrap();
        let a = Element::new(plus, Z2::Zero).unwrap();
        assert_eq!(try_inverse(&a), None);
        let e = Element::partial_identity([p(2, 3)]);
        assert_eq!(try_inverse(&e), Some(e.clone()));
        let twisted = e.compose(&Element::swap());
        let inv = try_inverse(&twisted).unwrap();
        assert_eq!(twisted.compose(&inv), Element::partial_identity([p(2, 3)]));
    }
}
