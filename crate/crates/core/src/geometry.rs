//! Exact convex polygons in the `(d1, d2)` plane.
//!
//! A [`Region2D`] is built from a list of half-planes by enumerating all
//! pairwise line intersections, keeping the feasible ones and taking their
//! convex hull. Half-planes that touch fewer than two vertices are dropped.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// Serialized as a `["num/den", "num/den"]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "(String, String)", try_from = "(String, String)")]
pub struct GdofPoint {
    pub d1: Rational,
    pub d2: Rational,
}

impl From<GdofPoint> for (String, String) {
    fn from(p: GdofPoint) -> Self {
        (format_rational(&p.d1), format_rational(&p.d2))
    }
}

impl TryFrom<(String, String)> for GdofPoint {
    type Error = Error;
    fn try_from((a, b): (String, String)) -> Result<Self> {
        Ok(GdofPoint::new(parse_rational(&a)?, parse_rational(&b)?))
    }
}

impl GdofPoint {
    pub fn new(d1: Rational, d2: Rational) -> Self {
        Self { d1, d2 }
    }

    pub fn origin() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn sum(&self) -> Rational {
        self.d1 + self.d2
    }
}

impl fmt::Display for GdofPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

/// `a1 d1 + a2 d2 <= b`, scaled so the first nonzero coefficient is `+-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawHalfPlane")]
pub struct HalfPlane {
    #[serde(with = "crate::io::rational_str")]
    a1: Rational,
    #[serde(with = "crate::io::rational_str")]
    a2: Rational,
    #[serde(with = "crate::io::rational_str")]
    b: Rational,
}

#[derive(Deserialize)]
struct RawHalfPlane {
    #[serde(with = "crate::io::rational_str")]
    a1: Rational,
    #[serde(with = "crate::io::rational_str")]
    a2: Rational,
    #[serde(with = "crate::io::rational_str")]
    b: Rational,
}

impl TryFrom<RawHalfPlane> for HalfPlane {
    type Error = Error;
    fn try_from(r: RawHalfPlane) -> Result<Self> {
        HalfPlane::new(r.a1, r.a2, r.b)
    }
}

impl HalfPlane {
    pub fn new(a1: Rational, a2: Rational, b: Rational) -> Result<Self> {
        let lead = if !a1.is_zero() {
            a1
        } else if !a2.is_zero() {
            a2
        } else {
            return Err(Error::ZeroNormal);
        };
        let s = lead.abs();
        Ok(Self {
            a1: a1 / s,
            a2: a2 / s,
            b: b / s,
        })
    }

    /// `d1 <= b`
    pub fn d1_le(b: Rational) -> Self {
        Self::new(Rational::one(), Rational::zero(), b).unwrap()
    }

    /// `d2 <= b`
    pub fn d2_le(b: Rational) -> Self {
        Self::new(Rational::zero(), Rational::one(), b).unwrap()
    }

    /// `d1 >= 0`
    pub fn d1_nonneg() -> Self {
        Self::new(-Rational::one(), Rational::zero(), Rational::zero()).unwrap()
    }

    /// `d2 >= 0`
    pub fn d2_nonneg() -> Self {
        Self::new(Rational::zero(), -Rational::one(), Rational::zero()).unwrap()
    }

    pub fn a1(&self) -> Rational {
        self.a1
    }
    pub fn a2(&self) -> Rational {
        self.a2
    }
    pub fn b(&self) -> Rational {
        self.b
    }

    pub fn eval(&self, p: &GdofPoint) -> Rational {
        self.a1 * p.d1 + self.a2 * p.d2
    }

    pub fn contains(&self, p: &GdofPoint) -> bool {
        self.eval(p) <= self.b
    }

    pub fn is_tight(&self, p: &GdofPoint) -> bool {
        self.eval(p) == self.b
    }

    fn normal(&self) -> (Rational, Rational) {
        (self.a1, self.a2)
    }

    fn line_intersection(&self, o: &HalfPlane) -> Option<GdofPoint> {
        let det = self.a1 * o.a2 - self.a2 * o.a1;
        if det.is_zero() {
            return None;
        }
        Some(GdofPoint::new(
            (self.b * o.a2 - self.a2 * o.b) / det,
            (self.a1 * o.b - self.b * o.a1) / det,
        ))
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*d1 + {}*d2 <= {}", self.a1, self.a2, self.b)
    }
}

/// A bounded, non-empty convex polygon (possibly a segment or a point).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Region2D {
    halfplanes: Vec<HalfPlane>,
    vertices: Vec<GdofPoint>,
}

impl Region2D {
    pub fn intersect(halfplanes: &[HalfPlane]) -> Result<Self> {
        let mut tightest: BTreeMap<(Rational, Rational), Rational> = BTreeMap::new();
        for h in halfplanes {
            tightest
                .entry(h.normal())
                .and_modify(|b| {
                    if h.b < *b {
                        *b = h.b
                    }
                })
                .or_insert(h.b);
        }
        let hps: Vec<HalfPlane> = tightest
            .into_iter()
            .map(|((a1, a2), b)| HalfPlane { a1, a2, b })
            .collect();

        let mut candidates = Vec::new();
        for (i, h) in hps.iter().enumerate() {
            for g in &hps[i + 1..] {
                if let Some(p) = h.line_intersection(g) {
                    if hps.iter().all(|k| k.contains(&p)) {
                        candidates.push(p);
                    }
                }
            }
        }
        let vertices = hull(candidates);

        if has_recession_direction(&hps) {
            if vertices.is_empty() && !lineal_feasible(&hps) {
                return Err(Error::EmptyRegion);
            }
            return Err(Error::UnboundedRegion);
        }
        if vertices.is_empty() {
            return Err(Error::EmptyRegion);
        }

        let min_touch = if vertices.len() >= 3 { 2 } else { 1 };
        let halfplanes = hps
            .into_iter()
            .filter(|h| vertices.iter().filter(|v| h.is_tight(v)).count() >= min_touch)
            .collect();
        Ok(Self {
            halfplanes,
            vertices,
        })
    }

    /// Convex hull of a non-empty point set.
    pub fn hull_of(points: &[GdofPoint]) -> Result<Self> {
        let v = hull(points.to_vec());
        let hps: Vec<HalfPlane> = match v.len() {
            0 => return Err(Error::EmptyRegion),
            1 => {
                let p = v[0];
                vec![
                    HalfPlane::d1_le(p.d1),
                    HalfPlane::d2_le(p.d2),
                    HalfPlane::new(-Rational::one(), Rational::zero(), -p.d1)?,
                    HalfPlane::new(Rational::zero(), -Rational::one(), -p.d2)?,
                ]
            }
            2 => {
                let (p, q) = (v[0], v[1]);
                let (dx, dy) = (q.d1 - p.d1, q.d2 - p.d2);
                vec![
                    HalfPlane::new(dy, -dx, dy * p.d1 - dx * p.d2)?,
                    HalfPlane::new(-dy, dx, -(dy * p.d1 - dx * p.d2))?,
                    HalfPlane::new(dx, dy, dx * q.d1 + dy * q.d2)?,
                    HalfPlane::new(-dx, -dy, -(dx * p.d1 + dy * p.d2))?,
                ]
            }
            n => (0..n)
                .map(|i| {
                    let (p, q) = (v[i], v[(i + 1) % n]);
                    let (dx, dy) = (q.d1 - p.d1, q.d2 - p.d2);
                    HalfPlane::new(dy, -dx, dy * p.d1 - dx * p.d2)
                })
                .collect::<Result<_>>()?,
        };
        Self::intersect(&hps)
    }

    /// Irredundant half-planes, sorted.
    pub fn halfplanes(&self) -> &[HalfPlane] {
        &self.halfplanes
    }

    /// Extreme points, counter-clockwise from the lexicographically smallest.
    pub fn vertices(&self) -> &[GdofPoint] {
        &self.vertices
    }

    pub fn contains(&self, p: &GdofPoint) -> bool {
        self.halfplanes.iter().all(|h| h.contains(p))
    }

    pub fn equals(&self, other: &Region2D) -> bool {
        self.vertices == other.vertices
    }

    pub fn subset(&self, other: &Region2D) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }

    pub fn strict_subset(&self, other: &Region2D) -> bool {
        self.subset(other) && !self.equals(other)
    }

    /// Whether `h` (after normalization) is one of the irredundant
    /// half-planes.
    pub fn has_facet(&self, h: &HalfPlane) -> bool {
        self.halfplanes.contains(h)
    }

    /// Maximum of `w1 d1 + w2 d2` and an attaining vertex. Ties go to the
    /// vertex with the largest `d2`, then the largest `d1`.
    pub fn maximize(&self, w1: Rational, w2: Rational) -> (Rational, GdofPoint) {
        let key = |p: &GdofPoint| (p.d2, p.d1);
        let mut best: Option<(Rational, GdofPoint)> = None;
        for v in &self.vertices {
            let val = w1 * v.d1 + w2 * v.d2;
            best = match best {
                Some((bv, bp)) if bv > val || (bv == val && key(&bp) > key(v)) => Some((bv, bp)),
                _ => Some((val, *v)),
            };
        }
        best.expect("region has at least one vertex")
    }
}

fn cross(o: &GdofPoint, a: &GdofPoint, b: &GdofPoint) -> Rational {
    (a.d1 - o.d1) * (b.d2 - o.d2) - (a.d2 - o.d2) * (b.d1 - o.d1)
}

/// Andrew's monotone chain; drops collinear points and returns CCW order
/// starting at the lexicographic minimum.
fn hull(mut pts: Vec<GdofPoint>) -> Vec<GdofPoint> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<GdofPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Rational::zero() {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<GdofPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Rational::zero() {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Some nonzero `d` with `a_j . d <= 0` for all `j`.
fn has_recession_direction(hps: &[HalfPlane]) -> bool {
    if hps.is_empty() {
        return true;
    }
    hps.iter().any(|h| {
        [(-h.a2, h.a1), (h.a2, -h.a1)]
            .iter()
            .any(|&(x, y)| hps.iter().all(|k| k.a1 * x + k.a2 * y <= Rational::zero()))
    })
}

/// Feasibility of a vertex-free system. Only parallel normals allow that;
/// they reduce to an interval along the common normal.
fn lineal_feasible(hps: &[HalfPlane]) -> bool {
    let Some(first) = hps.first() else {
        return true;
    };
    let (n1, n2) = first.normal();
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for h in hps {
        if h.a1 * n2 - h.a2 * n1 != Rational::zero() {
            // Non-parallel normals always yield a vertex when feasible.
            return false;
        }
        let scale = if !n1.is_zero() { h.a1 / n1 } else { h.a2 / n2 };
        let bound = h.b / scale;
        if scale.is_positive() {
            hi = Some(hi.map_or(bound, |x: Rational| x.min(bound)));
        } else {
            lo = Some(lo.map_or(bound, |x: Rational| x.max(bound)));
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => l.cmp(&h) != Ordering::Greater,
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio, to_f64};
    use proptest::prelude::*;

    fn pt(a: Rational, b: Rational) -> GdofPoint {
        GdofPoint::new(a, b)
    }

    fn ipt(a: i64, b: i64) -> GdofPoint {
        pt(int(a), int(b))
    }

    fn boxed(x: i64, y: i64) -> Vec<HalfPlane> {
        vec![
            HalfPlane::d1_nonneg(),
            HalfPlane::d2_nonneg(),
            HalfPlane::d1_le(int(x)),
            HalfPlane::d2_le(int(y)),
        ]
    }

    #[test]
    fn square() {
        let r = Region2D::intersect(&boxed(2, 2)).unwrap();
        assert_eq!(r.vertices(), &[ipt(0, 0), ipt(2, 0), ipt(2, 2), ipt(0, 2)]);
        assert!(r.contains(&ipt(2, 2)));
        assert!(!r.contains(&pt(int(2), ratio(201, 100))));
        assert_eq!(r.maximize(int(1), int(1)), (int(4), ipt(2, 2)));
    }

    #[test]
    fn clipped_corner() {
        let mut h = boxed(2, 2);
        h.push(HalfPlane::new(int(1), int(1), int(3)).unwrap());
        let r = Region2D::intersect(&h).unwrap();
        assert_eq!(
            r.vertices(),
            &[ipt(0, 0), ipt(2, 0), ipt(2, 1), ipt(1, 2), ipt(0, 2)]
        );
        assert_eq!(r.halfplanes().len(), 5);
        // Ties on the sum: larger d2 wins.
        assert_eq!(r.maximize(int(1), int(1)), (int(3), ipt(1, 2)));
        assert_eq!(r.maximize(int(0), int(0)), (int(0), ipt(1, 2)));
    }

    #[test]
    fn redundant_and_duplicate_planes_dropped() {
        let mut h = boxed(2, 2);
        h.push(HalfPlane::new(int(1), int(1), int(4)).unwrap());
        h.push(HalfPlane::new(int(1), int(1), int(10)).unwrap());
        h.push(HalfPlane::new(int(2), int(0), int(6)).unwrap());
        h.push(HalfPlane::new(int(3), int(0), int(6)).unwrap());
        let r = Region2D::intersect(&h).unwrap();
        assert_eq!(r.halfplanes().len(), 4);
        assert_eq!(r, Region2D::intersect(&boxed(2, 2)).unwrap());
    }

    #[test]
    fn normalization_makes_scaled_planes_equal() {
        let a = HalfPlane::new(int(2), int(4), int(6)).unwrap();
        let b = HalfPlane::new(ratio(1, 2), int(1), ratio(3, 2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.a1(), int(1));
        let c = HalfPlane::new(int(0), int(-3), int(-6)).unwrap();
        assert_eq!((c.a2(), c.b()), (int(-1), int(-2)));
        assert_eq!(HalfPlane::new(int(0), int(0), int(1)), Err(Error::ZeroNormal));
    }

    #[test]
    fn unbounded_and_empty() {
        let open = vec![HalfPlane::d1_nonneg(), HalfPlane::d2_nonneg(), HalfPlane::d1_le(int(1))];
        assert_eq!(Region2D::intersect(&open), Err(Error::UnboundedRegion));
        let mut empty = boxed(2, 2);
        empty.push(HalfPlane::new(int(1), int(1), int(-1)).unwrap());
        assert_eq!(Region2D::intersect(&empty), Err(Error::EmptyRegion));
        let strip_clash = vec![HalfPlane::d1_le(int(-1)), HalfPlane::d1_nonneg()];
        assert_eq!(Region2D::intersect(&strip_clash), Err(Error::EmptyRegion));
    }

    #[test]
    fn segment_and_point_regions() {
        let mut h = boxed(2, 2);
        h.push(HalfPlane::new(int(1), int(1), int(3)).unwrap());
        h.push(HalfPlane::new(int(-1), int(-1), int(-3)).unwrap());
        let seg = Region2D::intersect(&h).unwrap();
        assert_eq!(seg.vertices(), &[ipt(1, 2), ipt(2, 1)]);
        assert_eq!(Region2D::intersect(seg.halfplanes()).unwrap(), seg);
        let dot = Region2D::hull_of(&[ipt(1, 1), ipt(1, 1)]).unwrap();
        assert_eq!(dot.vertices(), &[ipt(1, 1)]);
        assert!(dot.subset(&seg.clone()) == seg.contains(&ipt(1, 1)));
    }

    #[test]
    fn hull_drops_interior_and_collinear() {
        let pts = [ipt(0, 0), ipt(1, 0), ipt(2, 0), ipt(1, 1), ipt(2, 2), ipt(0, 2), ipt(2, 1)];
        let r = Region2D::hull_of(&pts).unwrap();
        assert_eq!(r.vertices(), &[ipt(0, 0), ipt(2, 0), ipt(2, 2), ipt(0, 2)]);
        assert_eq!(r, Region2D::intersect(&boxed(2, 2)).unwrap());
    }

    #[test]
    fn subset_and_equals() {
        let small = Region2D::intersect(&boxed(1, 1)).unwrap();
        let big = Region2D::intersect(&boxed(2, 2)).unwrap();
        assert!(small.subset(&big));
        assert!(small.strict_subset(&big));
        assert!(!big.subset(&small));
        assert!(big.equals(&big.clone()));
    }

    fn random_region() -> impl Strategy<Value = Region2D> {
        proptest::collection::vec((-6i64..=6, -6i64..=6, 0i64..=24), 0..6).prop_filter_map(
            "needs a non-empty region",
            |extra| {
                let mut h = boxed(4, 4);
                for (a1, a2, b) in extra {
                    if a1 != 0 || a2 != 0 {
                        h.push(HalfPlane::new(int(a1), int(a2), ratio(b, 2)).unwrap());
                    }
                }
                Region2D::intersect(&h).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn round_trip(r in random_region()) {
            prop_assert_eq!(Region2D::intersect(r.halfplanes()).unwrap(), r.clone());
            let h = Region2D::hull_of(r.vertices()).unwrap();
            prop_assert_eq!(h.vertices(), r.vertices());
        }

        #[test]
        fn vertices_tight_on_two_planes(r in random_region()) {
            prop_assume!(r.vertices().len() >= 3);
            prop_assert!(r.vertices().len() <= r.halfplanes().len());
            for v in r.vertices() {
                prop_assert!(r.contains(v));
                prop_assert!(r.halfplanes().iter().filter(|h| h.is_tight(v)).count() >= 2);
            }
        }

        #[test]
        fn strictly_convex_ccw(r in random_region()) {
            let v = r.vertices();
            prop_assume!(v.len() >= 3);
            prop_assert_eq!(v[0], *v.iter().min().unwrap());
            for i in 0..v.len() {
                let c = cross(&v[i], &v[(i + 1) % v.len()], &v[(i + 2) % v.len()]);
                prop_assert!(c > Rational::zero());
            }
        }

        #[test]
        fn maximize_is_vertex_max(r in random_region(), w1 in -5i64..=5, w2 in -5i64..=5) {
            let (val, at) = r.maximize(int(w1), int(w2));
            let scan = r.vertices().iter().map(|v| int(w1) * v.d1 + int(w2) * v.d2).max().unwrap();
            prop_assert_eq!(val, scan);
            prop_assert!(r.vertices().contains(&at));
        }

        #[test]
        fn exact_membership_agrees_with_float(r in random_region(), seed in 0u64..1000) {
            // Float oracle: point-in-convex-polygon via edge cross products.
            let v: Vec<(f64, f64)> = r.vertices().iter().map(|p| (to_f64(&p.d1), to_f64(&p.d2))).collect();
            prop_assume!(v.len() >= 3);
            let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            for _ in 0..1000 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let x = ((state >> 33) % 1000) as i64;
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let y = ((state >> 33) % 1000) as i64;
                let p = pt(ratio(x * 5 - 200, 1000), ratio(y * 5 - 200, 1000));
                let (px, py) = (to_f64(&p.d1), to_f64(&p.d2));
                let side = (0..v.len()).map(|i| {
                    let (a, b) = (v[i], v[(i + 1) % v.len()]);
                    (b.0 - a.0) * (py - a.1) - (b.1 - a.1) * (px - a.0)
                }).fold(f64::INFINITY, f64::min);
                if side.abs() > 1e-9 {
                    prop_assert_eq!(r.contains(&p), side > 0.0);
                }
            }
        }

        #[test]
        fn subset_consistent_with_contains(a in random_region(), b in random_region()) {
            prop_assert_eq!(a.subset(&b), a.vertices().iter().all(|v| b.contains(v)));
            prop_assert!(a.subset(&a));
            if a.subset(&b) && b.subset(&a) {
                prop_assert!(a.equals(&b));
            }
        }
    }
}
