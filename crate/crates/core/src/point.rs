//! Points of `N x N` under the product order, and square windows `[1,B] x [1,B]`.
//!
//! Coordinates are 1-based. The derived `Ord` on [`Point`] is lexicographic and
//! exists only so points can key ordered containers; the product order is
//! [`leq`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `(i, j)` with `i, j >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct Point {
    pub i: u32,
    pub j: u32,
}

impl Point {
    /// Panics on a zero coordinate; use [`Point::try_new`] for untrusted input.
    pub fn new(i: u32, j: u32) -> Self {
        assert!(i >= 1 && j >= 1, "point coordinates are 1-based, got ({i},{j})");
        Point { i, j }
    }

    pub fn try_new(i: u32, j: u32) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::InvalidPoint { i, j });
        }
        Ok(Point { i, j })
    }

    /// The coordinate swap `(i, j) -> (j, i)`.
    pub fn swap(self) -> Self {
        Point { i: self.j, j: self.i }
    }

    /// Componentwise minimum (the meet in the product order).
    pub fn meet(self, other: Point) -> Point {
        Point { i: self.i.min(other.i), j: self.j.min(other.j) }
    }

    pub fn leq(self, other: Point) -> bool {
        leq(self, other)
    }

    /// Largest coordinate; the smallest window bound containing this point.
    pub fn extent(self) -> u32 {
        self.i.max(self.j)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl TryFrom<(u32, u32)> for Point {
    type Error = Error;

    fn try_from((i, j): (u32, u32)) -> Result<Self> {
        Point::try_new(i, j)
    }
}

impl From<Point> for (u32, u32) {
    fn from(p: Point) -> Self {
        (p.i, p.j)
    }
}

/// The product order: `p <= q` iff `p.i <= q.i` and `p.j <= q.j`.
pub fn leq(p: Point, q: Point) -> bool {
    p.i <= q.i && p.j <= q.j
}

/// The square `[1, bound] x [1, bound]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    bound: u32,
}

impl Window {
    pub fn new(bound: u32) -> Result<Self> {
        if bound == 0 {
            return Err(Error::EmptyWindow);
        }
        Ok(Window { bound })
    }

    pub fn bound(self) -> u32 {
        self.bound
    }

    pub fn contains(self, p: Point) -> bool {
        p.i <= self.bound && p.j <= self.bound
    }

    /// Number of points in the window.
    pub fn len(self) -> usize {
        (self.bound as usize) * (self.bound as usize)
    }

    pub fn is_empty(self) -> bool {
        false
    }

    /// Row-major index of a point inside the window.
    pub(crate) fn index(self, p: Point) -> usize {
        debug_assert!(self.contains(p));
        (p.i as usize - 1) * self.bound as usize + (p.j as usize - 1)
    }

    pub(crate) fn point_at(self, idx: usize) -> Point {
        let b = self.bound as usize;
        Point { i: (idx / b) as u32 + 1, j: (idx % b) as u32 + 1 }
    }

    /// All points in lexicographic order.
    pub fn points(self) -> impl Iterator<Item = Point> {
        let b = self.bound;
        (1..=b).flat_map(move |i| (1..=b).map(move |j| Point { i, j }))
    }
}

/// The part of the row `H^n = {(j, n) : j in N}` inside the window, by increasing `j`.
pub fn row_points(n: u32, w: Window) -> Result<Vec<Point>> {
    if n == 0 || n > w.bound {
        return Err(Error::OutOfWindow { index: n, bound: w.bound });
    }
    Ok((1..=w.bound).map(|j| Point { i: j, j: n }).collect())
}

/// The part of the column `V^n = {(n, j) : j in N}` inside the window, by increasing `j`.
pub fn col_points(n: u32, w: Window) -> Result<Vec<Point>> {
    if n == 0 || n > w.bound {
        return Err(Error::OutOfWindow { index: n, bound: w.bound });
    }
    Ok((1..=w.bound).map(|j| Point { i: n, j }).collect())
}
