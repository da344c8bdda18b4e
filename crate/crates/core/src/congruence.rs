//! The congruence `sigma` (agreement on a cofinite set), its witnesses, the
//! partial-shift normal form `alpha_f`, and generator words.
//!
//! Rows are `H^j = {(i, j)}` (second coordinate fixed) and columns are
//! `V^i = {(i, j)}` (first coordinate fixed).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::element::{Element, Idempotent, PlusPart};
use crate::error::{Error, Result};
use crate::point::{Point, Window};
use crate::quotient::{generator_product, generator_product_reversed, FreeWord};

/// Eventual shifts of an orientation-preserving element: `row[j-1]` is the
/// left shift of row `j` far out, `col[i-1]` the down shift of column `i`.
/// Trailing zeros are trimmed, so equal profiles compare equal.
///
/// Serializes as its generator word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "FreeWord", from = "FreeWord")]
pub struct ShiftProfile {
    pub row: Vec<u32>,
    pub col: Vec<u32>,
}

fn trimmed(v: &[u32]) -> Vec<u32> {
    let end = v.iter().rposition(|&s| s != 0).map_or(0, |k| k + 1);
    v[..end].to_vec()
}

fn differences(v: &[u32]) -> impl Iterator<Item = (u32, u32)> + '_ {
    (0..v.len()).map(move |k| (k as u32 + 1, v[k] - v.get(k + 1).copied().unwrap_or(0)))
}

fn cumulative(exps: &std::collections::BTreeMap<u32, u32>) -> Vec<u32> {
    let len = exps.keys().next_back().copied().unwrap_or(0) as usize;
    let mut v = vec![0; len];
    for (&k, &e) in exps {
        for s in &mut v[..k as usize] {
            *s += e;
        }
    }
    v
}

impl ShiftProfile {
    pub fn of(plus: &PlusPart) -> ShiftProfile {
        ShiftProfile { row: trimmed(plus.row_shifts()), col: trimmed(plus.col_shifts()) }
    }

    /// Exponent of `a_k` is `P_k - P_{k+1}`, of `b_l` is `Q_l - Q_{l+1}`.
    pub fn to_word(&self) -> FreeWord {
        FreeWord::from_exponents(differences(&self.row), differences(&self.col)).expect("profile indices start at 1")
    }
}

impl From<ShiftProfile> for FreeWord {
    fn from(p: ShiftProfile) -> FreeWord {
        p.to_word()
    }
}

impl From<FreeWord> for ShiftProfile {
    fn from(w: FreeWord) -> ShiftProfile {
        ShiftProfile { row: cumulative(w.a_exponents()), col: cumulative(w.b_exponents()) }
    }
}

pub fn shift_profile(a: &Element) -> Result<ShiftProfile> {
    Ok(ShiftProfile::of(a.require_plus()?))
}

/// Whether `a` and `b` agree on a cofinite set: same orientation and same
/// shift profile of the plus parts.
pub fn sigma_equiv(a: &Element, b: &Element) -> bool {
    a.g() == b.g() && ShiftProfile::of(a.plus()) == ShiftProfile::of(b.plus())
}

/// An idempotent `e` with `a e = b e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaWitness {
    pub epsilon: Idempotent,
}

/// Window points where `a` and `b` are not both defined with equal values.
/// Outside the common window two sigma-equivalent elements agree.
fn disagreement(a: &Element, b: &Element) -> Vec<Point> {
    let w = Window::new(a.bound().max(b.bound())).unwrap();
    w.points()
        .filter(|&x| match (a.apply(x), b.apply(x)) {
            (Some(y), Some(z)) => y != z,
            _ => true,
        })
        .collect()
}

/// Constructs and checks a witness when `a sigma b`.
///
/// The idempotent removes the images of every disagreement point, so both
/// products become undefined exactly there and coincide elsewhere.
pub fn sigma_witness(a: &Element, b: &Element) -> Result<Option<SigmaWitness>> {
    if !sigma_equiv(a, b) {
        return Ok(None);
    }
    let d = disagreement(a, b);
    let holes = d.iter().filter_map(|&x| a.apply(x)).chain(d.iter().filter_map(|&x| b.apply(x)));
    let epsilon = Idempotent::partial_identity(holes);
    if a.compose(&epsilon) != b.compose(&epsilon) {
        return Err(Error::Internal("sigma witness does not equalize the pair".into()));
    }
    Ok(Some(SigmaWitness { epsilon }))
}

/// Witnesses for the five equivalent descriptions of `a sigma b`:
///
/// * (i) `a e = b e` and (ii) `a s = b u` with `s = u = right`;
/// * (iii) `a s = u b` with `s = right`, `u = mixed`;
/// * (iv) `i a = i b` and (v) `s a = u b` with `i = s = u = left`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaForms {
    pub right: Idempotent,
    pub mixed: Idempotent,
    pub left: Idempotent,
}

impl SigmaForms {
    /// Re-checks all five equations.
    pub fn verify(&self, a: &Element, b: &Element) -> bool {
        let (e, m, l) = (&*self.right, &*self.mixed, &*self.left);
        let ae = a.compose(e);
        ae == b.compose(e) && ae == m.compose(b) && l.compose(a) == l.compose(b)
    }
}

pub fn sigma_forms(a: &Element, b: &Element) -> Result<Option<SigmaForms>> {
    let Some(SigmaWitness { epsilon: right }) = sigma_witness(a, b)? else {
        return Ok(None);
    };
    // identity on dom(b e): then mixed * b = b e = a e
    let mixed = Idempotent::partial_identity(b.compose(&right).domain_complement());
    // identity on the agreement set
    let left = Idempotent::partial_identity(disagreement(a, b));
    let forms = SigmaForms { right, mixed, left };
    if !forms.verify(a, b) {
        return Err(Error::Internal("equivalent sigma forms disagree".into()));
    }
    Ok(Some(forms))
}

/// Thresholds of an orientation-preserving element.
///
/// `h[i-1]` is the least `h` from which row `i < n_alpha` lies in the domain
/// and in the range, maps into itself, and is shifted by exactly one per step;
/// `v` is the column analogue. `h_bar`, `v_bar` are their maxima (0 when
/// `n_alpha = 1`). `h_hat` is the least `h` such that every domain point of
/// `alpha_f` in a row `j >= h` keeps its first coordinate; `v_hat` likewise
/// for columns and the second coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub n_alpha: u32,
    pub h: Vec<u32>,
    pub v: Vec<u32>,
    pub h_bar: u32,
    pub v_bar: u32,
    pub h_hat: u32,
    pub v_hat: u32,
}

/// Least `h` such that row `row` is regular from `h` on; see [`Thresholds`].
fn row_threshold(plus: &PlusPart, row: u32) -> u32 {
    let b = plus.bound();
    let missing = plus.range_complement();
    let regular = |p: u32| {
        let x = Point { i: p, j: row };
        let Some(y) = plus.apply(x) else { return false };
        y.j == row
            && !missing.contains(&x)
            && plus.apply(Point { i: p + 1, j: row }) == Some(Point { i: y.i + 1, j: row })
    };
    (1..=b).rev().find(|&p| !regular(p)).map_or(1, |p| p + 1)
}

fn per_row(plus: &PlusPart, n: u32) -> Vec<u32> {
    (1..n).map(|i| row_threshold(plus, i)).collect()
}

/// The finite set removed to form `alpha_f`.
fn cut(n: u32, h_bar: u32, v_bar: u32) -> BTreeSet<Point> {
    let mut holes = BTreeSet::new();
    for i in 1..=h_bar {
        for j in 1..=n {
            holes.insert(Point { i, j });
        }
    }
    for i in 1..=n {
        for j in 1..=v_bar {
            holes.insert(Point { i, j });
        }
    }
    holes
}

/// The first consecutive pair in a row `j < n` or column `i < n`, inside
/// `[1, bound]^2`, on which `a` is not a unit shift.
pub fn partial_shift_defect(a: &Element, n: u32, bound: u32) -> Option<(Point, Point)> {
    let unit = |x: Point, x2: Point, same_row: bool| match (a.apply(x), a.apply(x2)) {
        (Some(y), Some(y2)) => {
            let ok = if same_row { y2.i == y.i + 1 && y2.j == y.j } else { y2.j == y.j + 1 && y2.i == y.i };
            (!ok).then_some((x, x2))
        }
        _ => None,
    };
    for k in 1..n {
        for t in 1..bound {
            if let Some(d) = unit(Point { i: t, j: k }, Point { i: t + 1, j: k }, true) {
                return Some(d);
            }
            if let Some(d) = unit(Point { i: k, j: t }, Point { i: k, j: t + 1 }, false) {
                return Some(d);
            }
        }
    }
    None
}

/// Least `h <= n` such that every domain point in rows `j >= h` keeps its first coordinate.
fn hat(plus: &PlusPart, n: u32) -> Option<u32> {
    let b = plus.bound();
    (1..=n.max(1)).find(|&h| {
        (h..=b).all(|j| plus.row_shift(j) == 0) && plus.explicit_entries().all(|(x, y)| x.j < h || y.i == x.i)
    })
}

fn compute(a: &Element) -> Result<(Thresholds, Element)> {
    let plus = a.require_plus()?;
    let n = a.n_alpha()?;
    let h = per_row(plus, n);
    let v = per_row(&plus.conjugate(), n);
    let h_bar = h.iter().copied().max().unwrap_or(0);
    let v_bar = v.iter().copied().max().unwrap_or(0);
    let f = a.restrict(&cut(n, h_bar, v_bar));

    if !sigma_equiv(a, &f) {
        return Err(Error::Internal("alpha_f left the sigma class".into()));
    }
    let reach = f.bound() + f.plus().max_shift() + 2;
    if let Some((x, y)) = partial_shift_defect(&f, n, reach) {
        return Err(Error::Internal(format!("alpha_f is not a partial shift at {x}, {y}")));
    }
    let h_hat = hat(f.plus(), n).ok_or_else(|| Error::Internal("no row threshold below n_alpha".into()))?;
    let v_hat =
        hat(&f.plus().conjugate(), n).ok_or_else(|| Error::Internal("no column threshold below n_alpha".into()))?;
    Ok((Thresholds { n_alpha: n, h, v, h_bar, v_bar, h_hat, v_hat }, f))
}

pub fn thresholds(a: &Element) -> Result<Thresholds> {
    Ok(compute(a)?.0)
}

/// The restriction of `a` that acts as a unit shift on every row and column
/// below `n_alpha`. Both postconditions are checked.
pub fn alpha_f(a: &Element) -> Result<Element> {
    Ok(compute(a)?.1)
}

/// The word `prod a_k^{P_k - P_{k+1}} prod b_l^{Q_l - Q_{l+1}}`, whose generator
/// product is sigma-equivalent to `a`.
pub fn generator_word(a: &Element) -> Result<FreeWord> {
    Ok(ShiftProfile::of(a.require_plus()?).to_word())
}

/// The identity on `N^2` minus `[1, m]^2` with
/// `m = n_alpha + h_bar + v_bar + (sum of exponents of word)`, raised to the
/// window of `a` so that domain holes above `(n_alpha, n_alpha)` are covered;
/// checks that it equalizes `a` and the generator product of `word` in both
/// factor orders.
pub fn hat_epsilon(a: &Element, word: &FreeWord) -> Result<Idempotent> {
    let t = thresholds(a)?;
    let exps: u32 = word.a_exponents().values().chain(word.b_exponents().values()).sum();
    let m = (t.n_alpha + t.h_bar + t.v_bar + exps).max(a.normalize().bound());
    let eps = Idempotent::partial_identity(Window::new(m).unwrap().points());
    let lhs = eps.compose(a);
    if lhs != eps.compose(&generator_product(word)) || lhs != eps.compose(&generator_product_reversed(word)) {
        return Err(Error::Internal(format!("hat epsilon with m = {m} does not equalize")));
    }
    Ok(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Z2;

    fn p(i: u32, j: u32) -> Point {
        Point::new(i, j)
    }

    fn gamma(n: u32) -> Element {
        Element::gamma(n).unwrap()
    }

    fn upsilon(n: u32) -> Element {
        Element::upsilon(n).unwrap()
    }

    /// Row 1 skips a point right after the naive threshold: holes at
    /// `(1..=3, 1)`, `(4,1) -> (1,1)`, `(5,1) -> (2,1)`, then `(k,1) -> (k-2,1)`.
    fn skipping_row() -> Element {
        let mut explicit = vec![(p(4, 1), p(1, 1)), (p(5, 1), p(2, 1))];
        for i in 1..=5 {
            for j in 2..=5 {
                explicit.push((p(i, j), p(i, j)));
            }
        }
        let plus = PlusPart::new(5, explicit, vec![2, 0, 0, 0, 0], vec![0; 5]).unwrap();
        Element::new(plus, Z2::Zero).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let g2 = gamma(2);
        assert!(sigma_equiv(&g2, &g2.restrict(&[p(7, 7)])));
        assert!(!sigma_equiv(&gamma(1), &upsilon(1)));
        let w = Element::swap();
        assert!(!sigma_equiv(&gamma(1), &w.compose(&gamma(1)).compose(&w)));
    }

    #[test]
    fn witnesses() {
        let g2 = gamma(2);
        let r = g2.restrict(&[p(7, 7), p(2, 1)]);
        let wit = sigma_witness(&g2, &r).unwrap().unwrap();
        assert_eq!(g2.compose(&wit.epsilon), r.compose(&wit.epsilon));
        assert!(sigma_witness(&gamma(1), &gamma(2)).unwrap().is_none());
        let same = sigma_witness(&g2, &g2).unwrap().unwrap();
        assert_eq!(*same.epsilon, Element::identity());

        let forms = sigma_forms(&g2, &r).unwrap().unwrap();
        assert!(forms.verify(&g2, &r));
    }

    #[test]
    fn profiles() {
        assert_eq!(shift_profile(&gamma(2)).unwrap(), ShiftProfile { row: vec![1, 1], col: vec![] });
        assert_eq!(shift_profile(&gamma(2).pow(2)).unwrap(), ShiftProfile { row: vec![2, 2], col: vec![] });
        assert_eq!(
            shift_profile(&gamma(1).compose(&upsilon(3))).unwrap(),
            ShiftProfile { row: vec![1], col: vec![1, 1, 1] }
        );
        assert!(shift_profile(&Element::swap()).is_err());
        let prof = shift_profile(&gamma(1).compose(&gamma(3))).unwrap();
        assert_eq!(ShiftProfile::from(prof.to_word()), prof);
        assert_eq!(serde_json::to_string(&prof).unwrap(), r#"{"a":[[1,1],[3,1]],"b":[]}"#);
    }

    #[test]
    fn generator_words() {
        assert_eq!(generator_word(&gamma(2)).unwrap(), FreeWord::a(2).unwrap());
        assert!(generator_word(&Element::identity()).unwrap().is_unit());
        let w = generator_word(&gamma(1).compose(&gamma(2))).unwrap();
        assert_eq!(w, FreeWord::from_exponents([(1, 1), (2, 1)], []).unwrap());
        assert!(sigma_equiv(&generator_product(&w), &gamma(1).compose(&gamma(2))));
        assert_eq!(generator_product(&w), gamma(1).compose(&gamma(2)));
    }

    #[test]
    fn alpha_f_examples() {
        assert_eq!(alpha_f(&Element::identity()).unwrap(), Element::identity());
        let g3 = gamma(3);
        let f = alpha_f(&g3).unwrap();
        assert!(f.natural_leq(&g3));
        for j in 1..3 {
            for i in 6..20 {
                assert_eq!(f.apply(p(i, j)), Some(p(i - 1, j)));
            }
        }
        assert!(alpha_f(&Element::swap()).is_err());
        let t = thresholds(&g3).unwrap();
        assert_eq!(t.n_alpha, 4);
        assert!(t.h_hat <= t.n_alpha && t.v_hat <= t.n_alpha);
    }

    #[test]
    fn thresholds_require_unit_steps() {
        let a = skipping_row();
        let t = thresholds(&a).unwrap();
        assert_eq!(t.n_alpha, 2);
        assert_eq!(t.h, vec![6]);
        assert_eq!(t.h_bar, 6);
        // Domain, image row and range membership alone already hold from 4 on,
        // but cutting there leaves the jump (5,1) -> (2,1), (6,1) -> (4,1).
        let naive = a.restrict(&cut(2, 4, t.v_bar));
        assert_eq!(partial_shift_defect(&naive, 2, 24), Some((p(5, 1), p(6, 1))));
        let f = alpha_f(&a).unwrap();
        assert_eq!(partial_shift_defect(&f, 2, 24), None);
    }

    #[test]
    fn hat_epsilon_equalizes() {
        let g1 = gamma(1);
        let w = generator_word(&g1).unwrap();
        let e = hat_epsilon(&g1, &w).unwrap();
        assert_eq!(e.compose(&g1), e.compose(&generator_product(&w)));
        assert!(hat_epsilon(&Element::identity(), &FreeWord::unit()).is_ok());
        let a = gamma(2).compose(&upsilon(1)).restrict(&[p(3, 2)]);
        assert!(hat_epsilon(&a, &generator_word(&a).unwrap()).is_ok());
        assert!(hat_epsilon(&a, &FreeWord::unit()).is_err());
    }

    #[test]
    fn hat_epsilon_covers_holes_in_the_fixed_quadrant() {
        // n_alpha = 1 and every threshold vanishes, yet (1,3) is a hole
        let a = Element::partial_identity([p(1, 3)]);
        assert_eq!(a.n_alpha().unwrap(), 1);
        let e = hat_epsilon(&a, &FreeWord::unit()).unwrap();
        assert!(e.holes().contains(&p(1, 3)));
    }
}
