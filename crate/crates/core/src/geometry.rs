//! Exact rational predicates for convex polygons in the plane.
//!
//! Everything runs on exact rationals — no epsilons — which is what the
//! cylinder-geometry statements need: SB(k) ⊂ SB(k+1) is decided by
//! orientation signs, and witnesses of strict containment are exact
//! rational points.

use crate::rational::Rational;
use num_traits::Zero;

/// A point of the plane with exact rational coordinates.
pub type Point2 = (Rational, Rational);

/// Sign of the cross product (b - a) × (c - a): +1 for a left turn,
/// -1 for a right turn, 0 for collinear.
pub fn orient(a: &Point2, b: &Point2, c: &Point2) -> i32 {
    let v = (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0);
    if v.is_zero() {
        0
    } else if v > Rational::zero() {
        1
    } else {
        -1
    }
}

/// Convex hull in counter-clockwise order (Andrew's monotone chain).
/// Collinear points on the boundary are dropped; duplicates are fine.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Is `p` inside or on the boundary of the CCW convex polygon `hull`?
pub fn in_convex_hull(hull: &[Point2], p: &Point2) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == *p,
        2 => {
            // degenerate segment
            orient(&hull[0], &hull[1], p) == 0
                && p.0 >= hull[0].0.clone().min(hull[1].0.clone())
                && p.0 <= hull[0].0.clone().max(hull[1].0.clone())
                && p.1 >= hull[0].1.clone().min(hull[1].1.clone())
                && p.1 <= hull[0].1.clone().max(hull[1].1.clone())
        }
        n => (0..n).all(|i| orient(&hull[i], &hull[(i + 1) % n], p) >= 0),
    }
}

/// Is `p` strictly inside the CCW convex polygon?
pub fn strictly_in_convex_hull(hull: &[Point2], p: &Point2) -> bool {
    hull.len() >= 3 && (0..hull.len()).all(|i| orient(&hull[i], &hull[(i + 1) % hull.len()], p) == 1)
}

/// Convexity check: every vertex of `inner` lies in `outer` (hulls of
/// both are taken first, so any vertex list is accepted).
pub fn hull_contains_hull(outer: &[Point2], inner: &[Point2]) -> bool {
    let oh = convex_hull(outer);
    let ih = convex_hull(inner);
    ih.iter().all(|p| in_convex_hull(&oh, p))
}

pub fn rational_point2(x: (i64, i64), y: (i64, i64)) -> Point2 {
    (
        Rational::new(x.0.into(), x.1.into()),
        Rational::new(y.0.into(), y.1.into()),
    )
}
