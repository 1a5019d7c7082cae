//! Tolerance-based planar primitives: similitudes, simple polygons,
//! congruence and similarity matching, and polygon overlap areas.
//!
//! Everything is plain `f64` with explicit tolerance bands; there is no
//! exact arithmetic here. Comparisons are relative wherever a natural scale
//! exists (edge lengths, polygon areas) and absolute otherwise.

use alloc::vec::Vec;
use core::fmt;

use crate::math;

/// Comparison tolerances, in length units of the data being compared.
///
/// `eps_len` bounds length-like comparisons (point coincidence, boundary
/// bands); `eps_area` bounds area-like comparisons. The defaults are tuned
/// for unit-scale polygons such as the built-in catalog.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps_len: f64,
    pub eps_area: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_len: 1e-9,
            eps_area: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    /// The similitude has ratio 1 and therefore no unique fixed point.
    RatioOne,
    /// Input polygon is not simple (or otherwise degenerate).
    DegenerateInput,
    /// The 2x2 linear part is not a scaled orthogonal matrix.
    NotASimilitude,
    /// Fewer than three distinct vertices, non-finite coordinates, or zero area.
    BadPolygon,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::RatioOne => write!(f, "similitude has ratio 1 (no unique fixed point)"),
            GeometryError::DegenerateInput => write!(f, "polygon is not simple"),
            GeometryError::NotASimilitude => {
                write!(f, "linear part is not a scaled orthogonal matrix")
            }
            GeometryError::BadPolygon => write!(f, "not a valid polygon"),
        }
    }
}

impl core::error::Error for GeometryError {}

/// A point of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        math::hypot(self.x - other.x, self.y - other.y)
    }
}

/// Result of a point-in-polygon query with an `eps_len` boundary band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Orientation class of a similitude: `Direct` preserves handedness,
/// `Indirect` is a stretch reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Direct,
    Indirect,
}

/// A plane similitude `x -> r U x + t` with `U` orthogonal.
///
/// The linear part is stored row-major as `[a, b, c, d]`, mapping
/// `(x, y) -> (a x + b y, c x + d y)`. The scaling ratio and orientation
/// are cached at construction: composing two similitudes multiplies the
/// cached ratios exactly rather than re-deriving them from the matrix.
/// After 32 chained compositions the linear part is re-projected onto the
/// scaled-orthogonal subspace to stop drift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similitude {
    linear: [f64; 4],
    translation: Point,
    ratio: f64,
    orientation: Orientation,
    depth: u32,
}

/// Compositions allowed before the linear part is re-orthonormalized.
const RENORM_DEPTH: u32 = 32;

impl Similitude {
    /// Validates that `linear` is (within `tol`) a positive multiple of an
    /// orthogonal matrix and caches ratio and orientation.
    pub fn new(linear: [f64; 4], translation: Point, tol: &Tolerance) -> Result<Self, GeometryError> {
        let [a, b, c, d] = linear;
        if !(a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite())
            || !translation.is_finite()
        {
            return Err(GeometryError::NotASimilitude);
        }
        let det = a * d - b * c;
        let ratio = math::sqrt(math::abs(det));
        if ratio <= 0.0 || !ratio.is_finite() {
            return Err(GeometryError::NotASimilitude);
        }
        // Row norms must both equal the ratio and the rows must be orthogonal.
        let r0 = math::hypot(a, b);
        let r1 = math::hypot(c, d);
        let dot = a * c + b * d;
        let eps = tol.eps_len * (1.0 + ratio);
        if math::abs(r0 - ratio) > eps || math::abs(r1 - ratio) > eps || math::abs(dot) > eps * ratio
        {
            return Err(GeometryError::NotASimilitude);
        }
        let orientation = if det > 0.0 {
            Orientation::Direct
        } else {
            Orientation::Indirect
        };
        Ok(Similitude {
            linear,
            translation,
            ratio,
            orientation,
            depth: 0,
        })
    }

    pub fn identity() -> Self {
        Similitude {
            linear: [1.0, 0.0, 0.0, 1.0],
            translation: Point::new(0.0, 0.0),
            ratio: 1.0,
            orientation: Orientation::Direct,
            depth: 0,
        }
    }

    /// Direct similitude `z -> u z + v` written with the complex number
    /// `u = ux + i uy` acting on `z = x + i y`.
    pub fn direct(u: (f64, f64), v: Point) -> Self {
        let (ux, uy) = u;
        Similitude {
            linear: [ux, -uy, uy, ux],
            translation: v,
            ratio: math::hypot(ux, uy),
            orientation: Orientation::Direct,
            depth: 0,
        }
    }

    /// Indirect similitude `z -> u conj(z) + v`.
    pub fn indirect(u: (f64, f64), v: Point) -> Self {
        let (ux, uy) = u;
        Similitude {
            linear: [ux, uy, uy, -ux],
            translation: v,
            ratio: math::hypot(ux, uy),
            orientation: Orientation::Indirect,
            depth: 0,
        }
    }

    /// Uniform scaling about the origin.
    pub fn scaling(r: f64) -> Self {
        Similitude {
            linear: [r, 0.0, 0.0, r],
            translation: Point::new(0.0, 0.0),
            ratio: r,
            orientation: Orientation::Direct,
            depth: 0,
        }
    }

    /// Rotation by `angle` and scaling by `r` about the fixed point `c`.
    pub fn rotation_scale_about(c: Point, angle: f64, r: f64) -> Self {
        let u = (r * math::cos(angle), r * math::sin(angle));
        // t = c - (rU) c
        let tx = c.x - (u.0 * c.x - u.1 * c.y);
        let ty = c.y - (u.1 * c.x + u.0 * c.y);
        Similitude::direct(u, Point::new(tx, ty))
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn is_direct(&self) -> bool {
        self.orientation == Orientation::Direct
    }

    /// Row-major linear part `[a, b, c, d]`.
    pub fn linear(&self) -> [f64; 4] {
        self.linear
    }

    pub fn translation(&self) -> Point {
        self.translation
    }

    pub fn apply(&self, p: Point) -> Point {
        let [a, b, c, d] = self.linear;
        Point::new(
            a * p.x + b * p.y + self.translation.x,
            c * p.x + d * p.y + self.translation.y,
        )
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Similitude) -> Similitude {
        let [a1, b1, c1, d1] = self.linear;
        let [a2, b2, c2, d2] = other.linear;
        let linear = [
            a1 * a2 + b1 * c2,
            a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2,
            c1 * b2 + d1 * d2,
        ];
        let t = self.apply(other.translation);
        let orientation = if self.orientation == other.orientation {
            Orientation::Direct
        } else {
            Orientation::Indirect
        };
        let mut out = Similitude {
            linear,
            translation: t,
            ratio: self.ratio * other.ratio,
            orientation,
            depth: self.depth + other.depth + 1,
        };
        if out.depth >= RENORM_DEPTH {
            out.renormalize();
        }
        out
    }

    pub fn invert(&self) -> Similitude {
        let [a, b, c, d] = self.linear;
        let det = a * d - b * c;
        let inv = [d / det, -b / det, -c / det, a / det];
        let tx = -(inv[0] * self.translation.x + inv[1] * self.translation.y);
        let ty = -(inv[2] * self.translation.x + inv[3] * self.translation.y);
        Similitude {
            linear: inv,
            translation: Point::new(tx, ty),
            ratio: 1.0 / self.ratio,
            orientation: self.orientation,
            depth: self.depth,
        }
    }

    /// Projects the linear part back onto `ratio * U` with `U` exactly
    /// orthogonal, using the cached ratio and orientation.
    fn renormalize(&mut self) {
        let [a, b, c, d] = self.linear;
        match self.orientation {
            Orientation::Direct => {
                let p = 0.5 * (a + d);
                let q = 0.5 * (c - b);
                let n = math::hypot(p, q);
                let (p, q) = (p / n, q / n);
                let r = self.ratio;
                self.linear = [r * p, -r * q, r * q, r * p];
            }
            Orientation::Indirect => {
                let p = 0.5 * (a - d);
                let q = 0.5 * (b + c);
                let n = math::hypot(p, q);
                let (p, q) = (p / n, q / n);
                let r = self.ratio;
                self.linear = [r * p, r * q, r * q, -r * p];
            }
        }
        self.depth = 0;
    }

    /// The unique fixed point of a similitude with ratio != 1.
    pub fn fixed_point(&self, tol: &Tolerance) -> Result<Point, GeometryError> {
        if math::abs(self.ratio - 1.0) <= tol.eps_len {
            return Err(GeometryError::RatioOne);
        }
        // Solve (I - M) x = t.
        let [a, b, c, d] = self.linear;
        let (m00, m01, m10, m11) = (1.0 - a, -b, -c, 1.0 - d);
        let det = m00 * m11 - m01 * m10;
        let x = (m11 * self.translation.x - m01 * self.translation.y) / det;
        let y = (m00 * self.translation.y - m10 * self.translation.x) / det;
        Ok(Point::new(x, y))
    }

    /// Applies the map to a polygon, restoring counterclockwise orientation
    /// when the map is indirect.
    pub fn transform_polygon(&self, poly: &Polygon) -> Polygon {
        let mut pts: Vec<Point> = poly.vertices().iter().map(|&p| self.apply(p)).collect();
        if self.orientation == Orientation::Indirect {
            pts.reverse();
        }
        Polygon::new_unchecked(pts)
    }

    /// Quantized identity key: the six map parameters rounded to `quantum`.
    /// Used to compare placements across patch levels.
    pub fn quantized_key(&self, quantum: f64) -> [i64; 6] {
        let [a, b, c, d] = self.linear;
        let q = |v: f64| math::round(v / quantum) as i64;
        [
            q(a),
            q(b),
            q(c),
            q(d),
            q(self.translation.x),
            q(self.translation.y),
        ]
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point,
    pub max: Point,
}

impl Aabb {
    pub fn of_points(pts: &[Point]) -> Aabb {
        let mut min = Point::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in pts {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        Aabb { min, max }
    }

    pub fn intersects(&self, other: &Aabb) -> bool {
        self.min.x <= other.max.x
            && other.min.x <= self.max.x
            && self.min.y <= other.max.y
            && other.min.y <= self.max.y
    }

    /// Does the box meet the (closed) disk?
    pub fn meets_disk(&self, disk: &Disk) -> bool {
        let cx = disk.center.x.clamp(self.min.x, self.max.x);
        let cy = disk.center.y.clamp(self.min.y, self.max.y);
        math::hypot(cx - disk.center.x, cy - disk.center.y) <= disk.radius
    }
}

/// A closed disk, used as the window for plane-filling tilings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub const fn new(center: Point, radius: f64) -> Self {
        Disk { center, radius }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.center.dist(&p) <= self.radius
    }
}

/// A simple polygon with counterclockwise vertex order and positive area.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Validates finiteness, vertex count, simplicity and positive area.
    /// Clockwise input is reversed rather than rejected.
    pub fn new(vertices: Vec<Point>, tol: &Tolerance) -> Result<Self, GeometryError> {
        if vertices.len() < 3 || vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeometryError::BadPolygon);
        }
        let mut vertices = vertices;
        if shoelace(&vertices) < 0.0 {
            vertices.reverse();
        }
        let poly = Polygon { vertices };
        if !poly.is_simple(tol) {
            return Err(GeometryError::DegenerateInput);
        }
        if poly.area() <= tol.eps_area {
            return Err(GeometryError::BadPolygon);
        }
        Ok(poly)
    }

    /// Wraps vertices that are already known to form a valid ccw polygon
    /// (e.g. similitude images of a validated polygon).
    pub fn new_unchecked(vertices: Vec<Point>) -> Self {
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Shoelace area; positive for the ccw invariant.
    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].dist(&self.vertices[(i + 1) % n]))
            .sum()
    }

    pub fn centroid(&self) -> Point {
        let n = self.vertices.len();
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a = 0.0;
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let w = p.x * q.y - q.x * p.y;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
            a += w;
        }
        Point::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    pub fn bounds(&self) -> Aabb {
        Aabb::of_points(&self.vertices)
    }

    /// No two edges cross except at shared endpoints.
    pub fn is_simple(&self, tol: &Tolerance) -> bool {
        let n = self.vertices.len();
        let eps = tol.eps_len;
        for i in 0..n {
            let (a1, a2) = (self.vertices[i], self.vertices[(i + 1) % n]);
            if a1.dist(&a2) <= eps {
                return false; // zero-length edge
            }
            for j in (i + 1)..n {
                // Skip adjacent edges (they share an endpoint by construction).
                if j == i || (j + 1) % n == i || (i + 1) % n == j {
                    continue;
                }
                let (b1, b2) = (self.vertices[j], self.vertices[(j + 1) % n]);
                if segments_cross(a1, a2, b1, b2, eps) {
                    return false;
                }
            }
        }
        true
    }

    /// Point classification with a boundary band of width `eps_len`.
    pub fn contains(&self, p: Point, tol: &Tolerance) -> Location {
        let n = self.vertices.len();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            if dist_point_segment(p, a, b) <= tol.eps_len {
                return Location::Boundary;
            }
        }
        // Crossing number along the +x ray. Boundary hits were handled above,
        // so the strict/non-strict choice at vertices cannot flip the answer
        // by more than the tolerance band.
        let mut inside = false;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            if (a.y > p.y) != (b.y > p.y) {
                let t = (p.y - a.y) / (b.y - a.y);
                let x = a.x + t * (b.x - a.x);
                if x > p.x {
                    inside = !inside;
                }
            }
        }
        if inside {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    /// Ear-clipping triangulation. Handles non-convex (but simple) input;
    /// degenerate (collinear) corners are clipped as zero-area ears.
    pub fn triangulate(&self) -> Vec<[Point; 3]> {
        let mut idx: Vec<usize> = (0..self.vertices.len()).collect();
        let v = &self.vertices;
        let mut tris = Vec::with_capacity(v.len().saturating_sub(2));
        let scale = self.bounds().max.dist(&self.bounds().min).max(1e-300);
        let eps_cross = 1e-12 * scale * scale;
        let eps_dist = 1e-9 * scale;
        while idx.len() > 3 {
            let m = idx.len();
            let mut clipped = false;
            // First pass: strictly convex ears; second pass relaxes to
            // near-degenerate corners so collinear vertices cannot stall us.
            for relax in [false, true] {
                for k in 0..m {
                    let ia = idx[(k + m - 1) % m];
                    let ib = idx[k];
                    let ic = idx[(k + 1) % m];
                    let cross = cross2(v[ia], v[ib], v[ic]);
                    let convex = if relax {
                        cross > -eps_cross
                    } else {
                        cross > eps_cross
                    };
                    if !convex {
                        continue;
                    }
                    let mut ear = true;
                    for &other in &idx {
                        if other == ia || other == ib || other == ic {
                            continue;
                        }
                        // A remaining vertex inside the candidate, or lying
                        // on its base diagonal, pinches the remainder into a
                        // non-simple polygon.
                        if point_in_triangle_strict(v[other], v[ia], v[ib], v[ic], eps_cross)
                            || dist_point_segment(v[other], v[ia], v[ic]) <= eps_dist
                        {
                            ear = false;
                            break;
                        }
                    }
                    if ear {
                        tris.push([v[ia], v[ib], v[ic]]);
                        idx.remove(k);
                        clipped = true;
                        break;
                    }
                }
                if clipped {
                    break;
                }
            }
            if !clipped {
                // Give up gracefully: emit a fan. Only reachable for inputs
                // that violate the simplicity invariant.
                break;
            }
        }
        if idx.len() == 3 {
            tris.push([v[idx[0]], v[idx[1]], v[idx[2]]]);
        } else if idx.len() > 3 {
            for k in 1..idx.len() - 1 {
                tris.push([v[idx[0]], v[idx[k]], v[idx[k + 1]]]);
            }
        }
        tris
    }
}

fn shoelace(pts: &[Point]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        let p = pts[i];
        let q = pts[(i + 1) % n];
        s += p.x * q.y - q.x * p.y;
    }
    0.5 * s
}

fn cross2(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    let vx = b.x - a.x;
    let vy = b.y - a.y;
    let len2 = vx * vx + vy * vy;
    if len2 == 0.0 {
        return p.dist(&a);
    }
    let t = ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2;
    let t = t.clamp(0.0, 1.0);
    math::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy))
}

/// Proper crossing test for two segments that do not share endpoints,
/// with an `eps` slack so touching boundaries do not count as crossings.
fn segments_cross(a1: Point, a2: Point, b1: Point, b2: Point, eps: f64) -> bool {
    let d1 = cross2(b1, b2, a1);
    let d2 = cross2(b1, b2, a2);
    let d3 = cross2(a1, a2, b1);
    let d4 = cross2(a1, a2, b2);
    let la = a1.dist(&a2);
    let lb = b1.dist(&b2);
    let slack_a = eps * lb;
    let slack_b = eps * la;
    (d1 > slack_a && d2 < -slack_a || d1 < -slack_a && d2 > slack_a)
        && (d3 > slack_b && d4 < -slack_b || d3 < -slack_b && d4 > slack_b)
}

fn point_in_triangle_strict(p: Point, a: Point, b: Point, c: Point, eps: f64) -> bool {
    let d1 = cross2(a, b, p);
    let d2 = cross2(b, c, p);
    let d3 = cross2(c, a, p);
    (d1 > eps && d2 > eps && d3 > eps) || (d1 < -eps && d2 < -eps && d3 < -eps)
}

/// Sutherland-Hodgman clip of a convex subject against a convex ccw clipper.
fn clip_convex(subject: &[Point], clip: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = subject.to_vec();
    let n = clip.len();
    for i in 0..n {
        if out.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % n];
        let input = core::mem::take(&mut out);
        let m = input.len();
        for j in 0..m {
            let cur = input[j];
            let nxt = input[(j + 1) % m];
            let dc = cross2(a, b, cur);
            let dn = cross2(a, b, nxt);
            if dc >= 0.0 {
                out.push(cur);
            }
            if (dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0) {
                let t = dc / (dc - dn);
                out.push(Point::new(
                    cur.x + t * (nxt.x - cur.x),
                    cur.y + t * (nxt.y - cur.y),
                ));
            }
        }
    }
    out
}

/// Area of `p ∩ q` for simple (possibly non-convex) polygons.
///
/// Both polygons are ear-clipped into triangles and every triangle pair is
/// clipped convex-against-convex; the pieces' areas add up because the
/// triangulations partition each polygon.
pub fn intersection_area(p: &Polygon, q: &Polygon, tol: &Tolerance) -> Result<f64, GeometryError> {
    if !p.is_simple(tol) || !q.is_simple(tol) {
        return Err(GeometryError::DegenerateInput);
    }
    if !p.bounds().intersects(&q.bounds()) {
        return Ok(0.0);
    }
    let tp = p.triangulate();
    let tq = q.triangulate();
    let mut total = 0.0;
    for a in &tp {
        let ba = Aabb::of_points(a);
        let a_ccw = ccw_triangle(*a);
        for b in &tq {
            if !ba.intersects(&Aabb::of_points(b)) {
                continue;
            }
            let piece = clip_convex(&a_ccw, &ccw_triangle(*b));
            if piece.len() >= 3 {
                total += math::abs(shoelace(&piece));
            }
        }
    }
    Ok(total)
}

fn ccw_triangle(t: [Point; 3]) -> Vec<Point> {
    if cross2(t[0], t[1], t[2]) < 0.0 {
        alloc::vec![t[0], t[2], t[1]]
    } else {
        alloc::vec![t[0], t[1], t[2]]
    }
}

/// Edge-length / interior-angle signature used for congruence classing.
///
/// The signature is the lexicographically smallest cyclic sequence of
/// `(edge length, turn angle)` pairs over both traversal orientations,
/// quantized to `1000 * eps_len` so prototile classes hash identically in
/// the presence of float noise. Classes in the catalog differ by factors of
/// at least ~1.19, far above the quantum.
pub fn congruence_key(p: &Polygon, tol: &Tolerance) -> Vec<(i64, i64)> {
    shape_key(p, tol, false)
}

/// Like [`congruence_key`] but scale-invariant (lengths normalized by the
/// perimeter), so it buckets similarity classes.
pub fn similarity_key(p: &Polygon, tol: &Tolerance) -> Vec<(i64, i64)> {
    shape_key(p, tol, true)
}

fn shape_key(p: &Polygon, tol: &Tolerance, normalize: bool) -> Vec<(i64, i64)> {
    let quantum = tol.eps_len * 1e3;
    let scale = if normalize { p.perimeter() } else { 1.0 };
    let verts = p.vertices();
    let n = verts.len();
    let seq_for = |reversed: bool| -> Vec<(i64, i64)> {
        let at = |i: usize| -> Point {
            if reversed {
                verts[(2 * n - i) % n]
            } else {
                verts[i % n]
            }
        };
        // Negating the turns of the reversed traversal makes it the ccw
        // signature of the mirror image, so reflected copies share a key.
        let sign = if reversed { -1.0 } else { 1.0 };
        (0..n)
            .map(|i| {
                let a = at(i);
                let b = at(i + 1);
                let c = at(i + 2);
                let len = a.dist(&b) / scale;
                let turn = math::atan2(
                    cross2(a, b, c),
                    (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y),
                );
                (
                    math::round(len / quantum) as i64,
                    math::round(sign * turn / 1e-6) as i64,
                )
            })
            .collect()
    };
    let mut best: Option<Vec<(i64, i64)>> = None;
    for reversed in [false, true] {
        let seq = seq_for(reversed);
        for shift in 0..n {
            let rotated: Vec<(i64, i64)> = (0..n).map(|i| seq[(i + shift) % n]).collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap_or_default()
}

/// If `p` and `q` are congruent (reflections allowed), returns a ratio-1
/// similitude carrying `p` onto `q`; otherwise `None`.
pub fn congruent(p: &Polygon, q: &Polygon, tol: &Tolerance) -> Option<Similitude> {
    matching_similitude(p, q, tol, true).into_iter().next()
}

/// All ratio-1 similitudes carrying `p` onto `q` (one per matching vertex
/// correspondence); more than one only for symmetric polygons.
pub fn congruences(p: &Polygon, q: &Polygon, tol: &Tolerance) -> Vec<Similitude> {
    matching_similitude(p, q, tol, true)
}

/// Like [`congruent`] with the ratio left free.
pub fn similar(p: &Polygon, q: &Polygon, tol: &Tolerance) -> Option<Similitude> {
    matching_similitude(p, q, tol, false).into_iter().next()
}

fn matching_similitude(
    p: &Polygon,
    q: &Polygon,
    tol: &Tolerance,
    require_unit_ratio: bool,
) -> Vec<Similitude> {
    let n = p.len();
    let mut out = Vec::new();
    if n != q.len() {
        return out;
    }
    let pv = p.vertices();
    let qv = q.vertices();
    let scale = q.perimeter() / p.perimeter();
    if require_unit_ratio && math::abs(scale - 1.0) > 1e3 * tol.eps_len {
        return out;
    }
    let char_len = p.perimeter() / n as f64;
    let eps = 1e3 * tol.eps_len * (1.0 + char_len) * (1.0 + scale);
    // A reversed traversal of q corresponds to an indirect (reflecting) map.
    for reversed in [false, true] {
        'shift: for shift in 0..n {
            let q_at = |i: usize| -> Point {
                if reversed {
                    qv[(2 * n + shift - i) % n]
                } else {
                    qv[(i + shift) % n]
                }
            };
            // Candidate from the first edge, then verify every vertex.
            let (p0, p1) = (pv[0], pv[1]);
            let (q0, q1) = (q_at(0), q_at(1));
            let dp = (p1.x - p0.x, p1.y - p0.y);
            let dq = (q1.x - q0.x, q1.y - q0.y);
            let dp2 = dp.0 * dp.0 + dp.1 * dp.1;
            if dp2 == 0.0 {
                continue;
            }
            // u = dq / dp (direct) or dq / conj(dp) (indirect), complex division.
            let u = if reversed {
                (
                    (dq.0 * dp.0 - dq.1 * dp.1) / dp2,
                    (dq.1 * dp.0 + dq.0 * dp.1) / dp2,
                )
            } else {
                (
                    (dq.0 * dp.0 + dq.1 * dp.1) / dp2,
                    (dq.1 * dp.0 - dq.0 * dp.1) / dp2,
                )
            };
            let r = math::hypot(u.0, u.1);
            if require_unit_ratio && math::abs(r - 1.0) > 1e3 * tol.eps_len {
                continue;
            }
            let base = if reversed {
                Similitude::indirect(u, Point::new(0.0, 0.0))
            } else {
                Similitude::direct(u, Point::new(0.0, 0.0))
            };
            let im = base.apply(p0);
            let cand = if reversed {
                Similitude::indirect(u, Point::new(q0.x - im.x, q0.y - im.y))
            } else {
                Similitude::direct(u, Point::new(q0.x - im.x, q0.y - im.y))
            };
            for i in 0..n {
                if cand.apply(pv[i]).dist(&q_at(i)) > eps {
                    continue 'shift;
                }
            }
            out.push(cand);
        }
    }
    out
}
