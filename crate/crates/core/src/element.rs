//! Finite canonical representation of monotone injective partial selfmaps of
//! `N x N` with cofinite domain and image.
//!
//! An orientation-preserving map ([`PlusPart`]) is stored as
//!
//! * an explicit partial map on the window `[1,B] x [1,B]` (absent points are
//!   domain holes),
//! * row shifts `P_1 >= ... >= P_B >= 0`: `(i, j) -> (i - P_j, j)` for `i > B, j <= B`,
//! * column shifts `Q_1 >= ... >= Q_B >= 0`: `(i, j) -> (i, j - Q_i)` for `i <= B, j > B`,
//! * the identity on `i > B, j > B`.
//!
//! A general [`Element`] pairs a plus part with a bit `g`, denoting the plus
//! part followed by the coordinate swap when `g = 1`. Maps act on the right:
//! `x(ab) = (xa)b`, so `a.compose(&b)` applies `a` first.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Deref};

use serde::{Deserialize, Serialize};

use crate::error::{Axis, Error, Result, Violation};
use crate::point::{Point, Window};

/// The cyclic group of order two, written additively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Z2 {
    #[default]
    Zero,
    One,
}

impl Z2 {
    pub fn from_u8(v: u8) -> Option<Z2> {
        match v {
            0 => Some(Z2::Zero),
            1 => Some(Z2::One),
            _ => None,
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Z2::Zero => 0,
            Z2::One => 1,
        }
    }

    pub fn is_one(self) -> bool {
        self == Z2::One
    }
}

impl Add for Z2 {
    type Output = Z2;

    fn add(self, rhs: Z2) -> Z2 {
        if self == rhs {
            Z2::Zero
        } else {
            Z2::One
        }
    }
}

impl fmt::Display for Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Outcome of checking a candidate representation: the first violation found, if any.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    violation: Option<Violation>,
}

impl ValidationReport {
    pub fn ok() -> Self {
        ValidationReport { violation: None }
    }

    pub fn fail(v: Violation) -> Self {
        ValidationReport { violation: Some(v) }
    }

    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }

    pub fn violation(&self) -> Option<&Violation> {
        self.violation.as_ref()
    }

    pub fn into_result(self) -> std::result::Result<(), Violation> {
        match self.violation {
            None => Ok(()),
            Some(v) => Err(v),
        }
    }
}

/// An orientation-preserving element in window-plus-tails form.
///
/// Instances built with [`PlusPart::from_parts`] are only structurally
/// well-formed; [`PlusPart::validate`] decides membership. All evaluation
/// methods assume a representation that passed validation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlusPart {
    window: Window,
    explicit: Vec<Option<Point>>,
    row_shifts: Vec<u32>,
    col_shifts: Vec<u32>,
}

impl PlusPart {
    /// Builds a representation without checking monotonicity or injectivity.
    pub fn from_parts(
        bound: u32,
        explicit: impl IntoIterator<Item = (Point, Point)>,
        row_shifts: Vec<u32>,
        col_shifts: Vec<u32>,
    ) -> Result<PlusPart> {
        let window = Window::new(bound)?;
        if row_shifts.len() != bound as usize || col_shifts.len() != bound as usize {
            return Err(Violation::Malformed(format!(
                "shift vectors must have length {bound}, got {} and {}",
                row_shifts.len(),
                col_shifts.len()
            ))
            .into());
        }
        let mut table = vec![None; window.len()];
        for (x, y) in explicit {
            if !window.contains(x) {
                return Err(Violation::Malformed(format!("explicit point {x} outside window {bound}")).into());
            }
            let slot = &mut table[window.index(x)];
            if slot.is_some() {
                return Err(Violation::Malformed(format!("explicit point {x} listed twice")).into());
            }
            *slot = Some(y);
        }
        Ok(PlusPart { window, explicit: table, row_shifts, col_shifts })
    }

    /// Like [`PlusPart::from_parts`] but rejects anything that fails validation.
    pub fn new(
        bound: u32,
        explicit: impl IntoIterator<Item = (Point, Point)>,
        row_shifts: Vec<u32>,
        col_shifts: Vec<u32>,
    ) -> Result<PlusPart> {
        let p = PlusPart::from_parts(bound, explicit, row_shifts, col_shifts)?;
        p.validate().into_result()?;
        Ok(p)
    }

    pub(crate) fn from_table(
        window: Window,
        explicit: Vec<Option<Point>>,
        row_shifts: Vec<u32>,
        col_shifts: Vec<u32>,
    ) -> Self {
        debug_assert_eq!(explicit.len(), window.len());
        PlusPart { window, explicit, row_shifts, col_shifts }
    }

    pub fn identity() -> PlusPart {
        let window = Window::new(1).unwrap();
        PlusPart { window, explicit: vec![Some(Point::new(1, 1))], row_shifts: vec![0], col_shifts: vec![0] }
    }

    pub fn bound(&self) -> u32 {
        self.window.bound()
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn row_shifts(&self) -> &[u32] {
        &self.row_shifts
    }

    pub fn col_shifts(&self) -> &[u32] {
        &self.col_shifts
    }

    /// `P_j`, zero beyond the window.
    pub fn row_shift(&self, j: u32) -> u32 {
        if j <= self.bound() {
            self.row_shifts[j as usize - 1]
        } else {
            0
        }
    }

    /// `Q_i`, zero beyond the window.
    pub fn col_shift(&self, i: u32) -> u32 {
        if i <= self.bound() {
            self.col_shifts[i as usize - 1]
        } else {
            0
        }
    }

    pub fn max_shift(&self) -> u32 {
        self.row_shifts.iter().chain(&self.col_shifts).copied().max().unwrap_or(0)
    }

    /// The explicit entry at a window point (`None` is a hole).
    pub fn explicit_at(&self, x: Point) -> Option<Point> {
        self.explicit[self.window.index(x)]
    }

    /// Defined explicit pairs in lexicographic order of the source.
    pub fn explicit_entries(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.explicit.iter().enumerate().filter_map(move |(k, y)| y.map(|y| (self.window.point_at(k), y)))
    }

    /// Evaluates the map at `x`; `None` when `x` is a domain hole.
    pub fn apply(&self, x: Point) -> Option<Point> {
        let b = self.bound();
        match (x.i <= b, x.j <= b) {
            (true, true) => self.explicit[self.window.index(x)],
            (false, true) => Some(Point { i: x.i - self.row_shifts[x.j as usize - 1], j: x.j }),
            (true, false) => Some(Point { i: x.i, j: x.j - self.col_shifts[x.i as usize - 1] }),
            (false, false) => Some(x),
        }
    }

    /// The point outside the explicit window whose tail image is `y`, if any.
    fn tail_preimage(&self, y: Point) -> Option<Point> {
        let b = self.bound();
        if y.j <= b && y.i + self.row_shift(y.j) > b {
            return Some(Point { i: y.i + self.row_shift(y.j), j: y.j });
        }
        if y.i <= b && y.j + self.col_shift(y.i) > b {
            return Some(Point { i: y.i, j: y.j + self.col_shift(y.i) });
        }
        if y.i > b && y.j > b {
            return Some(y);
        }
        None
    }

    /// Decides membership: the represented map must be injective and
    /// monotone on all of `N x N`.
    ///
    /// Beyond the structural tail conditions, all comparable pairs are checked
    /// inside the extended window `[1, B + max_shift + 1]^2`. Pairs with a point
    /// further out reduce to the structural conditions: a far row-tail point
    /// `(i, j)` dominates `(B + max_shift + 1, j)`, whose image lies below
    /// `(i - P_j, j)`, and likewise for columns and the identity quadrant.
    pub fn validate(&self) -> ValidationReport {
        let b = self.bound();
        for (axis, shifts) in [(Axis::Row, &self.row_shifts), (Axis::Col, &self.col_shifts)] {
            if let Some(k) = (1..shifts.len()).find(|&k| shifts[k] > shifts[k - 1]) {
                return ValidationReport::fail(Violation::ShiftVectorNotMonotone { axis, index: k as u32 + 1 });
            }
        }
        for (axis, shifts) in [(Axis::Row, &self.row_shifts), (Axis::Col, &self.col_shifts)] {
            if let Some(k) = shifts.iter().position(|&s| s > b) {
                return ValidationReport::fail(Violation::TailUnderflow { axis, index: k as u32 + 1 });
            }
        }
        // Every point outside the window is hit by a tail, so explicit images
        // must stay inside it and avoid the tail images.
        for (x, y) in self.explicit_entries() {
            if let Some(t) = self.tail_preimage(y) {
                return ValidationReport::fail(Violation::InjectivityCollision(x, t));
            }
        }
        let ext = Window::new(b + self.max_shift() + 1).unwrap();
        let images: Vec<Option<Point>> = ext.points().map(|x| self.apply(x)).collect();
        let mut seen: HashMap<Point, Point> = HashMap::with_capacity(images.len());
        for (k, y) in images.iter().enumerate() {
            if let Some(y) = y {
                let x = ext.point_at(k);
                if let Some(prev) = seen.insert(*y, x) {
                    return ValidationReport::fail(Violation::InjectivityCollision(prev, x));
                }
            }
        }
        let e = ext.bound();
        for p in ext.points() {
            let Some(pi) = images[ext.index(p)] else { continue };
            for qi in p.i..=e {
                for qj in p.j..=e {
                    let q = Point { i: qi, j: qj };
                    if let Some(qy) = images[ext.index(q)] {
                        if !pi.leq(qy) {
                            return ValidationReport::fail(Violation::MonotonicityViolation(p, q));
                        }
                    }
                }
            }
        }
        ValidationReport::ok()
    }

    /// The same map represented on a larger window.
    pub fn expand(&self, bound: u32) -> PlusPart {
        if bound <= self.bound() {
            return self.clone();
        }
        let window = Window::new(bound).unwrap();
        let explicit = window.points().map(|x| self.apply(x)).collect();
        let pad = |v: &[u32]| {
            let mut v = v.to_vec();
            v.resize(bound as usize, 0);
            v
        };
        PlusPart { window, explicit, row_shifts: pad(&self.row_shifts), col_shifts: pad(&self.col_shifts) }
    }

    /// Whether the outermost ring of the window already follows the tail rules
    /// of the next smaller window.
    fn can_shrink(&self) -> bool {
        let b = self.bound();
        if b == 1 || self.row_shifts[b as usize - 1] != 0 || self.col_shifts[b as usize - 1] != 0 {
            return false;
        }
        if self.explicit_at(Point { i: b, j: b }) != Some(Point { i: b, j: b }) {
            return false;
        }
        (1..b).all(|k| {
            self.explicit_at(Point { i: b, j: k }) == Some(Point { i: b - self.row_shifts[k as usize - 1], j: k })
                && self.explicit_at(Point { i: k, j: b })
                    == Some(Point { i: k, j: b - self.col_shifts[k as usize - 1] })
        })
    }

    fn shrink_to(&self, bound: u32) -> PlusPart {
        let window = Window::new(bound).unwrap();
        let explicit = window.points().map(|x| self.explicit_at(x)).collect();
        PlusPart {
            window,
            explicit,
            row_shifts: self.row_shifts[..bound as usize].to_vec(),
            col_shifts: self.col_shifts[..bound as usize].to_vec(),
        }
    }

    /// The unique representation with the smallest window.
    pub fn normalize(&self) -> PlusPart {
        let mut b = self.bound();
        let mut cur = std::borrow::Cow::Borrowed(self);
        while cur.can_shrink() {
            b -= 1;
            cur = std::borrow::Cow::Owned(cur.shrink_to(b));
        }
        cur.into_owned()
    }

    pub fn is_normalized(&self) -> bool {
        !self.can_shrink()
    }

    /// Conjugation by the swap: `x -> ((x)swap)self)swap`. Exchanges row and column data.
    pub fn conjugate(&self) -> PlusPart {
        let w = self.window;
        let explicit = w.points().map(|x| self.explicit_at(x.swap()).map(Point::swap)).collect();
        PlusPart { window: w, explicit, row_shifts: self.col_shifts.clone(), col_shifts: self.row_shifts.clone() }
    }

    /// Exact composition, `self` applied first.
    ///
    /// With `B'' = max(B1, B2) + maxshift(self) + 1` every tail point of `self`
    /// beyond `B''` lands beyond `max(B1, B2)`, i.e. in a tail or the identity
    /// quadrant of `other` on the same row or column. Tail shifts therefore add.
    pub fn compose(&self, other: &PlusPart) -> PlusPart {
        let bound = self.bound().max(other.bound()) + self.max_shift() + 1;
        let window = Window::new(bound).unwrap();
        let explicit = window.points().map(|x| self.apply(x).and_then(|y| other.apply(y))).collect();
        let row_shifts = (1..=bound).map(|j| self.row_shift(j) + other.row_shift(j)).collect();
        let col_shifts = (1..=bound).map(|i| self.col_shift(i) + other.col_shift(i)).collect();
        PlusPart { window, explicit, row_shifts, col_shifts }.normalize()
    }

    /// Points of the window outside the domain.
    pub fn domain_complement(&self) -> BTreeSet<Point> {
        self.window.points().filter(|&x| self.explicit_at(x).is_none()).collect()
    }

    /// Points outside the range; all of them lie inside the window.
    pub fn range_complement(&self) -> BTreeSet<Point> {
        let w = self.window;
        let b = self.bound();
        let mut hit = vec![false; w.len()];
        for (_, y) in self.explicit_entries() {
            if w.contains(y) {
                hit[w.index(y)] = true;
            }
        }
        for k in 1..=b {
            for t in (b + 1 - self.row_shift(k))..=b {
                hit[w.index(Point { i: t, j: k })] = true;
            }
            for t in (b + 1 - self.col_shift(k))..=b {
                hit[w.index(Point { i: k, j: t })] = true;
            }
        }
        w.points().filter(|&y| !hit[w.index(y)]).collect()
    }
}

/// An element: a plus part followed by the swap when `g = 1`.
#[derive(Clone, Debug)]
pub struct Element {
    plus: PlusPart,
    g: Z2,
}

impl Element {
    /// Validates `plus` and pairs it with the orientation bit.
    pub fn new(plus: PlusPart, g: Z2) -> Result<Element> {
        plus.validate().into_result()?;
        Ok(Element { plus, g })
    }

    pub(crate) fn from_valid(plus: PlusPart, g: Z2) -> Element {
        Element { plus, g }
    }

    /// The identity `I`.
    pub fn identity() -> Element {
        Element { plus: PlusPart::identity(), g: Z2::Zero }
    }

    /// The coordinate swap `(i, j) -> (j, i)`.
    pub fn swap() -> Element {
        Element { plus: PlusPart::identity(), g: Z2::One }
    }

    /// `gamma_n`: shifts the rows `1..=n` left by one, undefined at `(1, j)` for `j <= n`.
    pub fn gamma(n: u32) -> Result<Element> {
        if n == 0 {
            return Err(Error::InvalidGeneratorIndex);
        }
        let window = Window::new(n).unwrap();
        let explicit = window.points().map(|x| (x.i > 1).then(|| Point { i: x.i - 1, j: x.j })).collect();
        let plus = PlusPart::from_table(window, explicit, vec![1; n as usize], vec![0; n as usize]);
        Ok(Element { plus, g: Z2::Zero })
    }

    /// `upsilon_n`: shifts the columns `1..=n` down by one, undefined at `(i, 1)` for `i <= n`.
    pub fn upsilon(n: u32) -> Result<Element> {
        Ok(Element::gamma(n)?.automorphism_h())
    }

    /// The identity restricted to `N x N` minus `holes`.
    pub fn partial_identity<I: IntoIterator<Item = Point>>(holes: I) -> Element {
        Idempotent::partial_identity(holes).into_element()
    }

    pub fn plus(&self) -> &PlusPart {
        &self.plus
    }

    pub fn g(&self) -> Z2 {
        self.g
    }

    pub fn bound(&self) -> u32 {
        self.plus.bound()
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.g == Z2::Zero
    }

    pub(crate) fn require_plus(&self) -> Result<&PlusPart> {
        if self.g.is_one() {
            return Err(Error::RequiresOrientationPreserving);
        }
        Ok(&self.plus)
    }

    pub fn apply(&self, x: Point) -> Option<Point> {
        let y = self.plus.apply(x)?;
        Some(if self.g.is_one() { y.swap() } else { y })
    }

    /// Product in the monoid: `self` first, then `other`.
    ///
    /// `(p1, g1)(p2, g2) = (p1 * h^g1(p2), g1 + g2)` where `h` is conjugation by the swap.
    pub fn compose(&self, other: &Element) -> Element {
        let plus =
            if self.g.is_one() { self.plus.compose(&other.plus.conjugate()) } else { self.plus.compose(&other.plus) };
        Element { plus, g: self.g + other.g }
    }

    /// `self` composed with itself `k` times; `k = 0` gives the identity.
    pub fn pow(&self, mut k: u32) -> Element {
        let mut acc = Element::identity();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// Semantic equality: same orientation and the same map, independent of window size.
    pub fn equals(&self, other: &Element) -> bool {
        if self.g != other.g {
            return false;
        }
        let b = self.bound().max(other.bound());
        self.plus.expand(b) == other.plus.expand(b)
    }

    pub fn normalize(&self) -> Element {
        Element { plus: self.plus.normalize(), g: self.g }
    }

    pub fn is_normalized(&self) -> bool {
        self.plus.is_normalized()
    }

    /// The same element on a larger window.
    pub fn expand(&self, bound: u32) -> Element {
        Element { plus: self.plus.expand(bound), g: self.g }
    }

    /// The stored orientation bit, cross-checked by evaluating a far point of row 1.
    pub fn orientation(&self) -> Result<Z2> {
        let probe = Point { i: self.bound() + 2, j: 1 };
        let y = self.apply(probe).ok_or_else(|| Error::Consistency(format!("{probe} is not in the domain")))?;
        let observed = if y.j == 1 && y.i > 1 {
            Z2::Zero
        } else if y.i == 1 && y.j > 1 {
            Z2::One
        } else {
            return Err(Error::Consistency(format!("row 1 point {probe} maps to {y}")));
        };
        if observed != self.g {
            return Err(Error::Consistency(format!("bit {} but row 1 maps to {y}", self.g)));
        }
        Ok(self.g)
    }

    /// Splits `self = plus * swap^g` into its orientation-preserving part and `g`.
    pub fn decompose(&self) -> (Element, Z2) {
        (Element { plus: self.plus.clone(), g: Z2::Zero }, self.g)
    }

    /// `swap * self * swap`.
    pub fn automorphism_h(&self) -> Element {
        Element { plus: self.plus.conjugate(), g: self.g }
    }

    /// Smallest `n` such that every domain point in `up(n, n)` is fixed.
    pub fn n_alpha(&self) -> Result<u32> {
        let plus = self.require_plus()?;
        let b = plus.bound();
        let fixed_from = |n: u32| {
            (n..=b).all(|k| plus.row_shift(k) == 0 && plus.col_shift(k) == 0)
                && (n..=b).all(|i| {
                    (n..=b).all(|j| {
                        let x = Point { i, j };
                        plus.explicit_at(x).is_none_or(|y| y == x)
                    })
                })
        };
        Ok((1..=b + 1).find(|&n| fixed_from(n)).expect("identity quadrant starts at B + 1"))
    }

    pub fn domain_complement(&self) -> BTreeSet<Point> {
        self.plus.domain_complement()
    }

    pub fn range_complement(&self) -> BTreeSet<Point> {
        let rc = self.plus.range_complement();
        if self.g.is_one() {
            rc.into_iter().map(Point::swap).collect()
        } else {
            rc
        }
    }

    /// `self` with `holes` removed from the domain.
    pub fn restrict<'a, I: IntoIterator<Item = &'a Point>>(&self, holes: I) -> Element {
        let holes: Vec<Point> = holes.into_iter().copied().collect();
        let bound = holes.iter().map(|h| h.extent()).fold(self.bound(), u32::max);
        let mut plus = self.plus.expand(bound);
        for h in holes {
            let idx = plus.window.index(h);
            plus.explicit[idx] = None;
        }
        Element { plus: plus.normalize(), g: self.g }
    }

    /// The natural partial order: `self` is a restriction of `other`.
    pub fn natural_leq(&self, other: &Element) -> bool {
        if self.g != other.g {
            return false;
        }
        let b = self.bound().max(other.bound());
        let (a, c) = (self.plus.expand(b), other.plus.expand(b));
        a.row_shifts == c.row_shifts
            && a.col_shifts == c.col_shifts
            && a.explicit.iter().zip(&c.explicit).all(|(x, y)| x.is_none() || x == y)
    }

    /// When `self <= other`, the idempotent `e` (identity on the range of
    /// `self`) with `other * e = self`.
    pub fn natural_leq_witness(&self, other: &Element) -> Option<Idempotent> {
        if !self.natural_leq(other) {
            return None;
        }
        Some(Idempotent::partial_identity(self.range_complement()))
    }

    /// When `self <= other`, the idempotent `i` (identity on the domain of
    /// `self`) with `i * other = self`.
    pub fn natural_leq_left_witness(&self, other: &Element) -> Option<Idempotent> {
        if !self.natural_leq(other) {
            return None;
        }
        Some(Idempotent::partial_identity(self.domain_complement()))
    }

    pub fn is_idempotent(&self) -> bool {
        self.g == Z2::Zero && self.plus.max_shift() == 0 && self.plus.explicit_entries().all(|(x, y)| x == y)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("element records always serialize")
    }

    pub fn from_json(s: &str) -> Result<Element> {
        let rec: ElementRecord = serde_json::from_str(s)?;
        Element::try_from(rec)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Element) -> bool {
        self.equals(other)
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.g.hash(state);
        if self.plus.is_normalized() {
            self.plus.hash(state);
        } else {
            self.plus.normalize().hash(state);
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// An idempotent: the identity map on a cofinite subset of `N x N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Idempotent(Element);

impl Idempotent {
    pub fn partial_identity<I: IntoIterator<Item = Point>>(holes: I) -> Idempotent {
        let holes: BTreeSet<Point> = holes.into_iter().collect();
        let bound = holes.iter().map(|h| h.extent()).max().unwrap_or(1);
        let window = Window::new(bound).unwrap();
        let explicit = window.points().map(|x| (!holes.contains(&x)).then_some(x)).collect();
        let zeros = vec![0; bound as usize];
        let plus = PlusPart::from_table(window, explicit, zeros.clone(), zeros).normalize();
        Idempotent(Element { plus, g: Z2::Zero })
    }

    pub fn from_element(e: Element) -> Option<Idempotent> {
        e.is_idempotent().then_some(Idempotent(e))
    }

    /// The complement of the domain.
    pub fn holes(&self) -> BTreeSet<Point> {
        self.0.domain_complement()
    }

    pub fn as_element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }
}

impl Deref for Idempotent {
    type Target = Element;

    fn deref(&self) -> &Element {
        &self.0
    }
}

/// JSON form: `{"window":B,"explicit":[[i,j,u,v],...],"row_shifts":[...],"col_shifts":[...],"orientation":0|1}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementRecord {
    pub window: u32,
    pub explicit: Vec<[u32; 4]>,
    pub row_shifts: Vec<u32>,
    pub col_shifts: Vec<u32>,
    pub orientation: u8,
}

impl From<&Element> for ElementRecord {
    fn from(e: &Element) -> Self {
        ElementRecord {
            window: e.bound(),
            explicit: e.plus.explicit_entries().map(|(x, y)| [x.i, x.j, y.i, y.j]).collect(),
            row_shifts: e.plus.row_shifts.clone(),
            col_shifts: e.plus.col_shifts.clone(),
            orientation: e.g.as_u8(),
        }
    }
}

impl TryFrom<ElementRecord> for Element {
    type Error = Error;

    fn try_from(rec: ElementRecord) -> Result<Element> {
        let g = Z2::from_u8(rec.orientation)
            .ok_or_else(|| Violation::Malformed(format!("orientation must be 0 or 1, got {}", rec.orientation)))?;
        let explicit = rec
            .explicit
            .iter()
            .map(|&[i, j, u, v]| Ok((Point::try_new(i, j)?, Point::try_new(u, v)?)))
            .collect::<Result<Vec<_>>>()?;
        let plus = PlusPart::from_parts(rec.window, explicit, rec.row_shifts, rec.col_shifts)?;
        Element::new(plus, g)
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRecord::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = ElementRecord::deserialize(deserializer)?;
        Element::try_from(rec).map_err(serde::de::Error::custom)
    }
}
