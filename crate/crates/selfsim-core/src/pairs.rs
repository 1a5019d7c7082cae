//! Generating pairs: validation, the scale equation, exponent inference,
//! reducibility, and the built-in catalog.
//!
//! A generating pair is a polygon `p` and similitudes `f_1..f_N` (N >= 2)
//! with `p` the pairwise interior-disjoint union of the images `f_n(p)` and
//! every scaling ratio an integer power `s^{a_n}` of a common base
//! `s in (0,1)` with `gcd(a_1..a_N) = 1`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{
    self, GeometryError, Location, Point, Polygon, Similitude, Tolerance,
};
use crate::math;

/// Largest exponent tried when inferring `a_n` from raw ratios. Large enough
/// for every catalog entry, small enough that `NoCommonBase` is decisive.
pub const EXPONENT_MAX: u32 = 24;

/// Fit tolerance for `|r_n - s^{a_n}|` during exponent inference.
pub const EXPONENT_FIT_TOL: f64 = 1e-8;

/// Relative tolerance on the subdivision area identity in [`validate_pair`].
pub const AREA_DEFECT_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum PairError {
    /// No base `s` and integer exponents reproduce the given ratios: the
    /// polygon may be an irreptile but is not a generating pair.
    NoCommonBase,
    /// A map ratio is outside `(0, 1)`.
    RatioOutOfRange(f64),
    /// Exponent inference failed during validation.
    ExponentFailure,
    /// The subdivision geometry checks failed; the report says how.
    SubdivisionFailure(ValidationReport),
    /// Not a catalog name.
    UnknownName(String),
    /// Catalog parameters violate the family constraints.
    BadParams(&'static str),
    Geometry(GeometryError),
}

impl fmt::Display for PairError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairError::NoCommonBase => {
                write!(f, "ratios admit no common base s with integer exponents")
            }
            PairError::RatioOutOfRange(r) => write!(f, "map ratio {r} outside (0,1)"),
            PairError::ExponentFailure => write!(f, "exponent inference failed"),
            PairError::SubdivisionFailure(rep) => write!(
                f,
                "subdivision checks failed (area defect {:.3e}, max overlap {:.3e}, containment {})",
                rep.area_defect, rep.max_overlap_area, rep.containment_ok
            ),
            PairError::UnknownName(n) => write!(f, "unknown catalog entry '{n}'"),
            PairError::BadParams(m) => write!(f, "bad catalog parameters: {m}"),
            PairError::Geometry(e) => write!(f, "geometry error: {e}"),
        }
    }
}

impl core::error::Error for PairError {}

impl From<GeometryError> for PairError {
    fn from(e: GeometryError) -> Self {
        PairError::Geometry(e)
    }
}

/// Outcome of the geometric checks run by [`validate_pair`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub passed: bool,
    /// `|sum area(f_n(p)) - area(p)| / area(p)`.
    pub area_defect: f64,
    /// Largest pairwise overlap area between the images, absolute.
    pub max_overlap_area: f64,
    /// Every vertex of every image inside or on the boundary of `p`.
    pub containment_ok: bool,
    /// `max_n |r_n - s^{a_n}|` against the canonical scale.
    pub exponent_fit_error: f64,
}

/// A validated generating pair. Construct through [`validate_pair`] or
/// [`catalog`]; the invariants are checked there, never assumed.
#[derive(Debug, Clone)]
pub struct GeneratingPair {
    polygon: Polygon,
    maps: Vec<Similitude>,
    exponents: Vec<u32>,
    scale: f64,
    name: String,
}

impl GeneratingPair {
    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn maps(&self) -> &[Similitude] {
        &self.maps
    }

    pub fn map(&self, symbol: u8) -> &Similitude {
        &self.maps[(symbol - 1) as usize]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, symbol: u8) -> u32 {
        self.exponents[(symbol - 1) as usize]
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// The order `M = max a_n`: number of congruence classes in any tiling
    /// generated by this pair.
    pub fn order(&self) -> u32 {
        *self.exponents.iter().max().expect("N >= 2")
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Image of the base polygon under map `n` (0-based).
    pub fn tile_image(&self, n: usize) -> Polygon {
        self.maps[n].transform_polygon(&self.polygon)
    }
}

/// The unique root `s` in `(0,1)` of `sum_n x^{2 a_n} = 1`, by bisection to
/// absolute error 1e-14. The left side is strictly increasing in `x`, so the
/// root exists and is unique for any `N >= 2` positive exponents.
pub fn solve_scale(exponents: &[u32]) -> f64 {
    debug_assert!(exponents.len() >= 2 && exponents.iter().all(|&a| a >= 1));
    let value = |x: f64| -> f64 {
        exponents.iter().map(|&a| math::powi(x, 2 * a)).sum::<f64>() - 1.0
    };
    let mut lo = 0.0;
    let mut hi = 1.0;
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if value(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Recovers `(a_1..a_N, s)` with `r_n = s^{a_n}` from raw ratios.
///
/// Tries every candidate exponent for the smallest ratio, derives `s`, and
/// fits the remaining ratios by rounding `log r / log s`; the first candidate
/// that fits all ratios within [`EXPONENT_FIT_TOL`] wins. Exponents are then
/// normalized to `gcd = 1`, replacing `s` by `s^g`.
pub fn infer_exponents(ratios: &[f64]) -> Result<(Vec<u32>, f64), PairError> {
    for &r in ratios {
        if !(r > 0.0 && r < 1.0) || !r.is_finite() {
            return Err(PairError::RatioOutOfRange(r));
        }
    }
    let r_min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    for a_min in 1..=EXPONENT_MAX {
        // s = r_min^(1/a_min)
        let s = libm::pow(r_min, 1.0 / a_min as f64);
        let ln_s = math::ln(s);
        let mut exponents = Vec::with_capacity(ratios.len());
        let mut ok = true;
        for &r in ratios {
            let a = math::round(math::ln(r) / ln_s);
            if !(1.0..=EXPONENT_MAX as f64).contains(&a) {
                ok = false;
                break;
            }
            let a = a as u32;
            if math::abs(r - math::powi(s, a)) >= EXPONENT_FIT_TOL {
                ok = false;
                break;
            }
            exponents.push(a);
        }
        if !ok {
            continue;
        }
        let g = exponents.iter().fold(0u32, |acc, &a| math::gcd(acc, a));
        let (exponents, s) = if g > 1 {
            (
                exponents.iter().map(|&a| a / g).collect(),
                math::powi(s, g),
            )
        } else {
            (exponents, s)
        };
        return Ok((exponents, s));
    }
    Err(PairError::NoCommonBase)
}

/// Validates `(polygon, maps)` as a generating pair.
///
/// Infers exponents from the map ratios, snaps the scale to the canonical
/// root of the scale equation, and checks the subdivision geometry: image
/// areas sum to `area(p)`, images are pairwise interior-disjoint, and every
/// image vertex lies inside or on the boundary of `p`.
pub fn validate_pair(
    polygon: Polygon,
    maps: Vec<Similitude>,
    tol: &Tolerance,
) -> Result<(GeneratingPair, ValidationReport), PairError> {
    if maps.len() < 2 {
        return Err(PairError::BadParams("need at least two maps"));
    }
    let ratios: Vec<f64> = maps.iter().map(|m| m.ratio()).collect();
    let (exponents, _) = infer_exponents(&ratios).map_err(|e| match e {
        PairError::RatioOutOfRange(r) => PairError::RatioOutOfRange(r),
        _ => PairError::ExponentFailure,
    })?;
    let scale = solve_scale(&exponents);
    let exponent_fit_error = ratios
        .iter()
        .zip(&exponents)
        .map(|(&r, &a)| math::abs(r - math::powi(scale, a)))
        .fold(0.0, f64::max);

    let images: Vec<Polygon> = (0..maps.len())
        .map(|n| maps[n].transform_polygon(&polygon))
        .collect();
    let host_area = polygon.area();
    let sum_area: f64 = images.iter().map(|im| im.area()).sum();
    let area_defect = math::abs(sum_area - host_area) / host_area;

    let mut max_overlap_area: f64 = 0.0;
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            let overlap = geometry::intersection_area(&images[i], &images[j], tol)?;
            max_overlap_area = max_overlap_area.max(overlap);
        }
    }

    let containment_ok = images.iter().all(|im| {
        im.vertices()
            .iter()
            .all(|&v| polygon.contains(v, tol) != Location::Outside)
    });

    let passed = exponent_fit_error < EXPONENT_FIT_TOL
        && area_defect < AREA_DEFECT_REL_TOL
        && max_overlap_area < tol.eps_area * host_area.max(1.0)
        && containment_ok;
    let report = ValidationReport {
        passed,
        area_defect,
        max_overlap_area,
        containment_ok,
        exponent_fit_error,
    };
    if !passed {
        return Err(PairError::SubdivisionFailure(report));
    }
    let pair = GeneratingPair {
        polygon,
        maps,
        exponents,
        scale,
        name: String::new(),
    };
    Ok((pair, report))
}

/// Searches subsets `S` of the tile indices, `2 <= |S| < N`, whose tiles
/// union to a polygon similar to `p`. Returns the first witness subset (by
/// size, then lexicographic order) with the similarity carrying `p` onto the
/// union, or `None` for an irreducible pair.
///
/// A singleton `f_i(p)` is always similar to `p`, so proper subsets below
/// size 2 are excluded to make the notion non-vacuous.
pub fn check_reducible(
    pair: &GeneratingPair,
    tol: &Tolerance,
) -> Option<(Vec<usize>, Similitude)> {
    let n = pair.len();
    let images: Vec<Polygon> = (0..n).map(|i| pair.tile_image(i)).collect();
    for size in 2..n {
        for subset in k_subsets(n, size) {
            if let Some(union) = glue_union(&images, &subset, tol) {
                if let Some(m) = geometry::similar(pair.polygon(), &union, tol) {
                    return Some((subset, m));
                }
            }
        }
    }
    None
}

/// All k-element subsets of `0..n` in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        out.push(subset.clone());
        // advance to the next combination
        let mut i = k;
        while i > 0 {
            i -= 1;
            if subset[i] != i + n - k {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

/// Glues edge-adjacent tiles into a single simple polygon: snaps vertices
/// within `eps_len`, splits edges at vertices of other tiles, cancels
/// opposite directed edges, and chains what is left into one loop. `None`
/// when the union is not a clean simple polygon (disconnected, holes, or
/// interior overlap).
fn glue_union(images: &[Polygon], subset: &[usize], tol: &Tolerance) -> Option<Polygon> {
    let eps = tol.eps_len * 1e3;

    // 1. snap all vertices to canonical points
    let mut points: Vec<Point> = Vec::new();
    let mut snap = |p: Point| -> usize {
        for (i, q) in points.iter().enumerate() {
            if p.dist(q) <= eps {
                return i;
            }
        }
        points.push(p);
        points.len() - 1
    };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &t in subset {
        let vs = images[t].vertices();
        let n = vs.len();
        let ids: Vec<usize> = vs.iter().map(|&v| snap(v)).collect();
        for i in 0..n {
            edges.push((ids[i], ids[(i + 1) % n]));
        }
    }

    // 2. split edges at points lying on them
    let mut sub_edges: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in &edges {
        let pa = points[a];
        let pb = points[b];
        let len = pa.dist(&pb);
        let mut on_edge: Vec<(f64, usize)> = Vec::new();
        for (i, q) in points.iter().enumerate() {
            if i == a || i == b {
                continue;
            }
            let t = ((q.x - pa.x) * (pb.x - pa.x) + (q.y - pa.y) * (pb.y - pa.y)) / (len * len);
            if t <= 0.0 || t >= 1.0 {
                continue;
            }
            let proj = Point::new(pa.x + t * (pb.x - pa.x), pa.y + t * (pb.y - pa.y));
            if proj.dist(q) <= eps {
                on_edge.push((t, i));
            }
        }
        on_edge.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite params"));
        let mut prev = a;
        for &(_, i) in &on_edge {
            sub_edges.push((prev, i));
            prev = i;
        }
        sub_edges.push((prev, b));
    }

    // 3. cancel opposite directed sub-edges; duplicate same-direction edges
    //    indicate overlap, which disqualifies the subset.
    let mut boundary: Vec<(usize, usize)> = Vec::new();
    let mut used = alloc::vec![false; sub_edges.len()];
    for i in 0..sub_edges.len() {
        if used[i] {
            continue;
        }
        let (a, b) = sub_edges[i];
        let mut cancelled = false;
        for j in (i + 1)..sub_edges.len() {
            if used[j] {
                continue;
            }
            if sub_edges[j] == (b, a) {
                used[i] = true;
                used[j] = true;
                cancelled = true;
                break;
            }
            if sub_edges[j] == (a, b) {
                return None; // two tiles traverse the same edge: overlap
            }
        }
        if !cancelled {
            boundary.push((a, b));
        }
    }
    if boundary.len() < 3 {
        return None;
    }

    // 4. chain into a single loop
    let mut next: alloc::collections::BTreeMap<usize, usize> = alloc::collections::BTreeMap::new();
    for &(a, b) in &boundary {
        if next.insert(a, b).is_some() {
            return None; // branching boundary: not a simple polygon
        }
    }
    let start = boundary[0].0;
    let mut loop_ids = Vec::with_capacity(boundary.len());
    let mut cur = start;
    loop {
        loop_ids.push(cur);
        cur = *next.get(&cur)?;
        if cur == start {
            break;
        }
        if loop_ids.len() > boundary.len() {
            return None;
        }
    }
    if loop_ids.len() != boundary.len() {
        return None; // more than one loop: disconnected or holed union
    }

    // 5. drop collinear joints and build the polygon
    let raw: Vec<Point> = loop_ids.iter().map(|&i| points[i]).collect();
    let n = raw.len();
    let mut verts: Vec<Point> = Vec::with_capacity(n);
    for i in 0..n {
        let a = raw[(i + n - 1) % n];
        let b = raw[i];
        let c = raw[(i + 1) % n];
        let cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
        if math::abs(cross) > eps * (a.dist(&b) + b.dist(&c)) {
            verts.push(b);
        }
    }
    Polygon::new(verts, tol).ok()
}

/// Parsed catalog entry name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogName {
    GoldenBee,
    RightTriangle(u32, u32),
    Trapezoid(u32, u32),
    SporadicA,
    SporadicB,
    SporadicC,
    SporadicD,
    Square4,
    RectReducible,
}

impl CatalogName {
    /// Accepts `golden-bee`, `right-triangle:3,1`, `trapezoid(3,1)`, etc.
    pub fn parse(spec: &str) -> Result<Self, PairError> {
        let spec = spec.trim();
        let (name, params) = match spec.find([':', '(']) {
            Some(i) => {
                let (n, rest) = spec.split_at(i);
                let rest = rest
                    .trim_start_matches([':', '('])
                    .trim_end_matches(')');
                let parsed: Result<Vec<u32>, _> =
                    rest.split(',').map(|t| t.trim().parse::<u32>()).collect();
                match parsed {
                    Ok(v) => (n, v),
                    Err(_) => return Err(PairError::BadParams("parameters must be integers")),
                }
            }
            None => (spec, Vec::new()),
        };
        let two = |p: &[u32]| -> Result<(u32, u32), PairError> {
            if p.len() == 2 {
                Ok((p[0], p[1]))
            } else {
                Err(PairError::BadParams("expected two parameters a,b"))
            }
        };
        match name {
            "golden-bee" => Ok(CatalogName::GoldenBee),
            "right-triangle" => two(&params).map(|(a, b)| CatalogName::RightTriangle(a, b)),
            "trapezoid" => two(&params).map(|(a, b)| CatalogName::Trapezoid(a, b)),
            "sporadic-A" | "sporadic-a" => Ok(CatalogName::SporadicA),
            "sporadic-B" | "sporadic-b" => Ok(CatalogName::SporadicB),
            "sporadic-C" | "sporadic-c" => Ok(CatalogName::SporadicC),
            "sporadic-D" | "sporadic-d" => Ok(CatalogName::SporadicD),
            "square-4" => Ok(CatalogName::Square4),
            "rect-reducible" => Ok(CatalogName::RectReducible),
            other => Err(PairError::UnknownName(other.to_string())),
        }
    }

    /// Polygon coordinates were reconstructed from the stated scaling ratios
    /// and constants rather than printed sources; certified by the validator
    /// but possibly differing from the original figures.
    pub fn reconstructed(&self) -> bool {
        matches!(
            self,
            CatalogName::SporadicA | CatalogName::SporadicC | CatalogName::SporadicD
        )
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::GoldenBee => write!(f, "golden-bee"),
            CatalogName::RightTriangle(a, b) => write!(f, "right-triangle:{a},{b}"),
            CatalogName::Trapezoid(a, b) => write!(f, "trapezoid:{a},{b}"),
            CatalogName::SporadicA => write!(f, "sporadic-A"),
            CatalogName::SporadicB => write!(f, "sporadic-B"),
            CatalogName::SporadicC => write!(f, "sporadic-C"),
            CatalogName::SporadicD => write!(f, "sporadic-D"),
            CatalogName::Square4 => write!(f, "square-4"),
            CatalogName::RectReducible => write!(f, "rect-reducible"),
        }
    }
}

/// Builds a catalog entry. Every entry is passed through [`validate_pair`]
/// before it is returned, so a successful call certifies the pair.
pub fn catalog(name: &CatalogName, tol: &Tolerance) -> Result<GeneratingPair, PairError> {
    let (polygon, maps) = match name {
        CatalogName::GoldenBee | CatalogName::SporadicB => golden_bee(tol)?,
        CatalogName::RightTriangle(a, b) => right_triangle(*a, *b, tol)?,
        CatalogName::Trapezoid(a, b) => trapezoid(*a, *b, tol)?,
        CatalogName::SporadicA => sporadic_a(tol)?,
        CatalogName::SporadicC => sporadic_c(tol)?,
        CatalogName::SporadicD => sporadic_d(tol)?,
        CatalogName::Square4 => square_4(tol)?,
        CatalogName::RectReducible => rect_reducible(tol)?,
    };
    let (pair, _) = validate_pair(polygon, maps, tol)?;
    Ok(pair.with_name(&name.to_string()))
}

type Construction = Result<(Polygon, Vec<Similitude>), PairError>;

/// The golden bee: the rectilinear hexagon cut into one 90-degree-rotated
/// copy at ratio s and one reflected copy at ratio s^2, s = 1/sqrt(tau).
/// The vertex list solves the closure constraints for those two maps; the
/// notch sits at height s^2.
fn golden_bee(tol: &Tolerance) -> Construction {
    let s = 1.0 / math::sqrt(math::GOLDEN_RATIO);
    let (s2, s3) = (s * s, s * s * s);
    let polygon = Polygon::new(
        alloc::vec![
            Point::new(0.0, 0.0),
            Point::new(s, 0.0),
            Point::new(s, s2),
            Point::new(s3, s2),
            Point::new(s3, 1.0),
            Point::new(0.0, 1.0),
        ],
        tol,
    )?;
    let f1 = Similitude::new([0.0, -s, s, 0.0], Point::new(s, 0.0), tol)?;
    let f2 = Similitude::new([s2, 0.0, 0.0, -s2], Point::new(0.0, 1.0), tol)?;
    Ok((polygon, alloc::vec![f1, f2]))
}

/// Right triangle p(a,b): hypotenuse 1 on the x-axis, legs s^a and s^b where
/// s^2 is the positive root of x^a + x^b = 1. The altitude from the right
/// angle splits it into mirror-similar copies at ratios s^a and s^b.
fn right_triangle(a: u32, b: u32, tol: &Tolerance) -> Construction {
    if !(a > b && b >= 1) {
        return Err(PairError::BadParams("right-triangle needs a > b >= 1"));
    }
    let s = math::sqrt(positive_root_sum_two(a, b));
    // Apex c = (s^{2b}, s^{a+b}); as a complex number the two maps are
    // z -> (1-c) conj(z) + c and z -> c conj(z).
    let cx = math::powi(s, 2 * b);
    let cy = math::powi(s, a + b);
    let polygon = Polygon::new(
        alloc::vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(cx, cy)],
        tol,
    )?;
    let f1 = Similitude::indirect((1.0 - cx, -cy), Point::new(cx, cy));
    let f2 = Similitude::indirect((cx, cy), Point::new(0.0, 0.0));
    Ok((polygon, alloc::vec![f1, f2]))
}

/// Trapezoid q(a,b): right trapezoid with height 1, bottom w and top 1/w,
/// where w = s^{(b-a)/2} and s is the positive root of x^a + x^b = 1.
/// Splits into a direct copy at s^b (bottom right), a direct copy at s^a
/// (top right), and two 90-degree-rotated copies at s^{(a+b)/2} forming the
/// left column.
fn trapezoid(a: u32, b: u32, tol: &Tolerance) -> Construction {
    if !(a > b && b >= 1) {
        return Err(PairError::BadParams("trapezoid needs a > b >= 1"));
    }
    if (a - b) % 2 != 0 {
        return Err(PairError::BadParams("trapezoid needs a, b of the same parity"));
    }
    let s = positive_root_sum_two(a, b);
    let m = (a + b) / 2;
    let (sa, sb, sm) = (math::powi(s, a), math::powi(s, b), math::powi(s, m));
    let w = sm / sa; // s^{(b-a)/2}
    let polygon = Polygon::new(
        alloc::vec![
            Point::new(0.0, 0.0),
            Point::new(w, 0.0),
            Point::new(1.0 / w, 1.0),
            Point::new(0.0, 1.0),
        ],
        tol,
    )?;
    let f1 = Similitude::direct((sa, 0.0), Point::new(sm, sb));
    let f2 = Similitude::direct((0.0, sm), Point::new(sm, 0.0));
    let f3 = Similitude::direct((0.0, -sm), Point::new(0.0, 1.0));
    let f4 = Similitude::direct((sb, 0.0), Point::new(sm, 0.0));
    Ok((polygon, alloc::vec![f1, f2, f3, f4]))
}

/// Reconstructed sporadic A (ratios s, s^3, s^4 with s = 1/sqrt(tau)):
/// a golden-bee-like hexagon with its notch at height s^4, cut into a
/// diagonal reflection at ratio s, a 90-degree rotation at s^3, and a point
/// reflection at s^4.
fn sporadic_a(tol: &Tolerance) -> Construction {
    let s = 1.0 / math::sqrt(math::GOLDEN_RATIO);
    let s3 = math::powi(s, 3);
    let s4 = math::powi(s, 4);
    let polygon = Polygon::new(
        alloc::vec![
            Point::new(0.0, 0.0),
            Point::new(s, 0.0),
            Point::new(s, s4),
            Point::new(s3, s4),
            Point::new(s3, 1.0),
            Point::new(0.0, 1.0),
        ],
        tol,
    )?;
    let f1 = Similitude::new([0.0, s, s, 0.0], Point::new(0.0, 0.0), tol)?;
    let f2 = Similitude::new([0.0, s3, -s3, 0.0], Point::new(0.0, 1.0), tol)?;
    let f3 = Similitude::new([-s4, 0.0, 0.0, -s4], Point::new(s3, 2.0 * s4), tol)?;
    Ok((polygon, alloc::vec![f1, f2, f3]))
}

/// Reconstructed sporadic C (ratios 1/sqrt2, 1/2, 1/2): the L-shaped
/// hexagon filling a 1 x sqrt2 box minus its top-right quarter, cut into a
/// 90-degree rotation at 1/sqrt2, a translate at 1/2, and a point
/// reflection at 1/2.
fn sporadic_c(tol: &Tolerance) -> Construction {
    let r = math::sqrt(2.0);
    let h = r / 2.0;
    let polygon = Polygon::new(
        alloc::vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, h),
            Point::new(0.5, h),
            Point::new(0.5, r),
            Point::new(0.0, r),
        ],
        tol,
    )?;
    let s = 1.0 / r;
    let f1 = Similitude::direct((0.0, s), Point::new(1.0, 0.0));
    let f2 = Similitude::direct((0.5, 0.0), Point::new(0.0, r / 4.0));
    let f3 = Similitude::direct((-0.5, 0.0), Point::new(0.5, r));
    Ok((polygon, alloc::vec![f1, f2, f3]))
}

/// Reconstructed sporadic D (ratios sqrt3/3 twice and 1/3 three times):
/// the 1 x sqrt3 rectangle cut into two 90-degree-rotated slabs at 1/sqrt3
/// and a top strip of three translates at 1/3.
fn sporadic_d(tol: &Tolerance) -> Construction {
    let r3 = math::sqrt(3.0);
    let s = 1.0 / r3;
    let polygon = Polygon::new(
        alloc::vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, r3),
            Point::new(0.0, r3),
        ],
        tol,
    )?;
    let g1 = Similitude::new([0.0, -s, s, 0.0], Point::new(1.0, 0.0), tol)?;
    let g2 = Similitude::new([0.0, -s, s, 0.0], Point::new(1.0, s), tol)?;
    let third = 1.0 / 3.0;
    let top = 2.0 * s;
    let g3 = Similitude::direct((third, 0.0), Point::new(0.0, top));
    let g4 = Similitude::direct((third, 0.0), Point::new(third, top));
    let g5 = Similitude::direct((third, 0.0), Point::new(2.0 * third, top));
    Ok((polygon, alloc::vec![g1, g2, g3, g4, g5]))
}

/// Unit square quadrisection: four half-scale translates.
fn square_4(tol: &Tolerance) -> Construction {
    let polygon = Polygon::new(
        alloc::vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ],
        tol,
    )?;
    let maps = alloc::vec![
        Similitude::direct((0.5, 0.0), Point::new(0.0, 0.0)),
        Similitude::direct((0.5, 0.0), Point::new(0.5, 0.0)),
        Similitude::direct((0.5, 0.0), Point::new(0.0, 0.5)),
        Similitude::direct((0.5, 0.0), Point::new(0.5, 0.5)),
    ];
    Ok((polygon, maps))
}

/// The reducible demonstration pair: the 1 x sqrt3 rectangle tiled by three
/// rotated slabs, with the first slab replaced by its own three sub-slabs.
/// `check_reducible` recovers exactly that replacement as its witness.
fn rect_reducible(tol: &Tolerance) -> Construction {
    let r3 = math::sqrt(3.0);
    let s = 1.0 / r3;
    let polygon = Polygon::new(
        alloc::vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, r3),
            Point::new(0.0, r3),
        ],
        tol,
    )?;
    let slab = |i: u32| -> Result<Similitude, PairError> {
        Ok(Similitude::new(
            [0.0, -s, s, 0.0],
            Point::new(1.0, i as f64 * s),
            tol,
        )?)
    };
    let (g1, g2, g3) = (slab(0)?, slab(1)?, slab(2)?);
    let maps = alloc::vec![
        g1.compose(&g1),
        g1.compose(&g2),
        g1.compose(&g3),
        g2,
        g3,
    ];
    Ok((polygon, maps))
}

/// Unique positive root of `x^a + x^b = 1`, by bisection (strictly
/// increasing left side, root in (0,1)).
fn positive_root_sum_two(a: u32, b: u32) -> f64 {
    let mut lo = 0.0;
    let mut hi = 1.0;
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if math::powi(mid, a) + math::powi(mid, b) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Everything the catalog knows how to build, with parameter documentation
/// for listings.
pub fn catalog_listing() -> Vec<(CatalogName, &'static str)> {
    alloc::vec![
        (
            CatalogName::GoldenBee,
            "hexagon cut into two similar copies; scaling ratios s, s^2 with s = 1/sqrt(tau)",
        ),
        (
            CatalogName::RightTriangle(2, 1),
            "family p(a,b), a > b >= 1: right triangle split by its altitude; s^2 solves x^a + x^b = 1",
        ),
        (
            CatalogName::Trapezoid(3, 1),
            "family q(a,b), a > b >= 1 of the same parity: right trapezoid with sides w, 1/w where w = s^{(b-a)/2}",
        ),
        (
            CatalogName::SporadicA,
            "hexagon with ratios 1/sqrt(tau), 1/(tau sqrt(tau)), 1/tau^2 (w = sqrt(tau))",
        ),
        (CatalogName::SporadicB, "the golden bee again, as listed among the sporadic pairs"),
        (CatalogName::SporadicC, "L-hexagon with ratios sqrt2/2, 1/2, 1/2"),
        (
            CatalogName::SporadicD,
            "1 x sqrt3 rectangle with ratios sqrt3/3 (twice) and 1/3 (three times); w = sqrt3",
        ),
        (CatalogName::Square4, "unit square quadrisection (rep-tile)"),
        (
            CatalogName::RectReducible,
            "reducible demonstration: rep-3 rectangle with one slab expanded into its three sub-slabs",
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    const INV_SQRT_TAU: f64 = 0.7861513777574233; // 1/sqrt(golden ratio)

    #[test]
    fn solve_scale_golden_bee() {
        let s = solve_scale(&[1, 2]);
        assert!((s - INV_SQRT_TAU).abs() < 1e-12);
    }

    #[test]
    fn solve_scale_symmetric() {
        let s = solve_scale(&[1, 1]);
        assert!((s - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn solve_scale_trapezoid_exponents() {
        // s^6 + 2 s^4 + s^2 = 1 factors as (s^3 + s)^2 = 1, so s^3 + s = 1.
        let s = solve_scale(&[3, 2, 2, 1]);
        assert!((s - 0.6823278038) < 1e-9);
        assert!((s * s * s + s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infer_exponents_recovers_bee() {
        let s = INV_SQRT_TAU;
        let (a, scale) = infer_exponents(&[s, s * s]).unwrap();
        assert_eq!(a, vec![1, 2]);
        assert!((scale - s).abs() < 1e-12);
    }

    #[test]
    fn infer_exponents_rejects_log3_log2() {
        // Equilateral-triangle subdivision ratios: a common base would make
        // log3/log2 rational.
        let err = infer_exponents(&[1.0 / 3.0, 2.0 / 3.0]).unwrap_err();
        assert_eq!(err, PairError::NoCommonBase);
    }

    #[test]
    fn infer_exponents_quadrisection() {
        let (a, scale) = infer_exponents(&[0.5, 0.5, 0.5, 0.5]).unwrap();
        assert_eq!(a, vec![1, 1, 1, 1]);
        assert!((scale - 0.5).abs() < 1e-12);
    }

    #[test]
    fn infer_exponents_gcd_normalizes() {
        // Ratios s^2, s^4 must come back as exponents (1,2) with base s^2.
        let s = INV_SQRT_TAU;
        let (a, scale) = infer_exponents(&[s * s, s.powi(4)]).unwrap();
        assert_eq!(a, vec![1, 2]);
        assert!((scale - s * s).abs() < 1e-12);
    }

    #[test]
    fn infer_exponents_roundtrip_large() {
        // (build ratios from known (s, a)) for every a pair with max <= 24.
        for amax in 2..=24u32 {
            let exps = [amax, 1];
            let s = solve_scale(&exps);
            let ratios: Vec<f64> = exps.iter().map(|&a| s.powi(a as i32)).collect();
            let (a, scale) = infer_exponents(&ratios).unwrap();
            assert_eq!(a, exps.to_vec(), "amax={amax}");
            assert!((scale - s).abs() < 1e-10, "amax={amax}");
        }
    }

    #[test]
    fn validate_golden_bee() {
        let pair = catalog(&CatalogName::GoldenBee, &tol()).unwrap();
        assert_eq!(pair.exponents(), &[1, 2]);
        assert!((pair.scale() - INV_SQRT_TAU).abs() < 1e-12);
        assert_eq!(pair.order(), 2);
        // Area additivity: host area equals the two sub-tile areas.
        let total: f64 = (0..2).map(|i| pair.tile_image(i).area()).sum();
        assert!((total - pair.polygon().area()).abs() < 1e-12);
    }

    #[test]
    fn validate_square_quadrisection() {
        let pair = catalog(&CatalogName::Square4, &tol()).unwrap();
        assert_eq!(pair.exponents(), &[1, 1, 1, 1]);
        assert!((pair.scale() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn equilateral_six_piece_is_not_a_generating_pair() {
        // Equilateral triangle subdivided into six similar triangles with
        // ratios 1/3 and 2/3 (one 2/3 corner copy plus five 1/3 copies).
        let h = math::sqrt(3.0) / 2.0;
        let poly = Polygon::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(0.5, h),
            ],
            &tol(),
        )
        .unwrap();
        let rot = |angle: f64, r: f64, t: Point| {
            Similitude::direct((r * libm::cos(angle), r * libm::sin(angle)), t)
        };
        let third = 1.0 / 3.0;
        let maps = vec![
            rot(0.0, 2.0 * third, Point::new(0.0, 0.0)),
            rot(0.0, third, Point::new(2.0 * third, 0.0)),
            rot(core::f64::consts::PI, third, Point::new(1.0, 2.0 * third * h)),
            rot(0.0, third, Point::new(third + third / 2.0, 2.0 * third * h * 1.0)),
            rot(0.0, third, Point::new(0.5 - third / 2.0, 2.0 * h * third)),
            rot(core::f64::consts::PI, third, Point::new(0.5 + third / 2.0, 2.0 * h * third)),
        ];
        let err = validate_pair(poly, maps, &tol()).unwrap_err();
        assert_eq!(err, PairError::ExponentFailure);
    }

    #[test]
    fn validate_rejects_overlap() {
        // Two half-scale copies of the unit square placed on top of each
        // other: exponents fit (1,1,...) needs ratios summing right, so use
        // four maps with two coincident.
        let sq = Polygon::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
            &tol(),
        )
        .unwrap();
        let half = |t: Point| Similitude::direct((0.5, 0.0), t);
        let maps = vec![
            half(Point::new(0.0, 0.0)),
            half(Point::new(0.0, 0.0)),
            half(Point::new(0.0, 0.5)),
            half(Point::new(0.5, 0.5)),
        ];
        match validate_pair(sq, maps, &tol()) {
            Err(PairError::SubdivisionFailure(rep)) => {
                assert!(!rep.passed);
                assert!(rep.max_overlap_area > 0.2);
            }
            other => panic!("expected SubdivisionFailure, got {other:?}"),
        }
    }

    #[test]
    fn whole_catalog_validates() {
        let names = [
            CatalogName::GoldenBee,
            CatalogName::RightTriangle(2, 1),
            CatalogName::RightTriangle(3, 1),
            CatalogName::RightTriangle(5, 2),
            CatalogName::Trapezoid(3, 1),
            CatalogName::Trapezoid(5, 1),
            CatalogName::Trapezoid(5, 3),
            CatalogName::SporadicA,
            CatalogName::SporadicB,
            CatalogName::SporadicC,
            CatalogName::SporadicD,
            CatalogName::Square4,
            CatalogName::RectReducible,
        ];
        for name in names {
            let pair = catalog(&name, &tol()).unwrap_or_else(|e| panic!("{name}: {e}"));
            // Area form of the scale equation.
            let sum: f64 = pair
                .exponents()
                .iter()
                .map(|&a| pair.scale().powi(2 * a as i32))
                .sum();
            assert!((sum - 1.0).abs() < 1e-10, "{name}");
        }
    }

    #[test]
    fn catalog_param_checks() {
        assert!(matches!(
            catalog(&CatalogName::RightTriangle(1, 1), &tol()),
            Err(PairError::BadParams(_))
        ));
        assert!(matches!(
            catalog(&CatalogName::Trapezoid(4, 1), &tol()),
            Err(PairError::BadParams(_))
        ));
        assert!(matches!(
            CatalogName::parse("no-such-pair"),
            Err(PairError::UnknownName(_))
        ));
    }

    #[test]
    fn catalog_expected_constants() {
        let t = catalog(&CatalogName::RightTriangle(2, 1), &tol()).unwrap();
        // s^2 = 1/tau, legs s^2 and s.
        assert!((t.scale() * t.scale() - 1.0 / math::GOLDEN_RATIO).abs() < 1e-12);
        assert_eq!(t.exponents(), &[2, 1]);

        let q = catalog(&CatalogName::Trapezoid(3, 1), &tol()).unwrap();
        assert_eq!(q.exponents(), &[3, 2, 2, 1]);

        let c = catalog(&CatalogName::SporadicC, &tol()).unwrap();
        let mut ratios: Vec<f64> = c.maps().iter().map(|m| m.ratio()).collect();
        ratios.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((ratios[0] - math::sqrt(2.0) / 2.0).abs() < 1e-12);
        assert!((ratios[1] - 0.5).abs() < 1e-12);
        assert!((ratios[2] - 0.5).abs() < 1e-12);

        let d = catalog(&CatalogName::SporadicD, &tol()).unwrap();
        assert_eq!(d.exponents(), &[1, 1, 2, 2, 2]);

        let a = catalog(&CatalogName::SporadicA, &tol()).unwrap();
        assert_eq!(a.exponents(), &[1, 3, 4]);
    }

    #[test]
    fn reducibility_witness_on_expanded_rect() {
        let pair = catalog(&CatalogName::RectReducible, &tol()).unwrap();
        let (subset, motion) = check_reducible(&pair, &tol()).expect("reducible by construction");
        assert_eq!(subset, vec![0, 1, 2], "witness is the three replacement tiles");
        assert!((motion.ratio() - 1.0 / math::sqrt(3.0)).abs() < 1e-9);
    }

    #[test]
    fn golden_bee_is_irreducible() {
        // N = 2: the subset range 2 <= |S| < 2 is empty.
        let pair = catalog(&CatalogName::GoldenBee, &tol()).unwrap();
        assert!(check_reducible(&pair, &tol()).is_none());
    }

    #[test]
    fn trapezoid_is_irreducible() {
        let pair = catalog(&CatalogName::Trapezoid(3, 1), &tol()).unwrap();
        assert!(check_reducible(&pair, &tol()).is_none());
    }

    #[test]
    fn expanding_any_pair_makes_it_reducible() {
        // Replace map f_0 of the square quadrisection by its compositions
        // with every map; the four replacements union back to f_0's tile.
        let pair = catalog(&CatalogName::Square4, &tol()).unwrap();
        let mut maps: Vec<Similitude> = Vec::new();
        for n in 0..4 {
            maps.push(pair.maps()[0].compose(&pair.maps()[n]));
        }
        maps.extend_from_slice(&pair.maps()[1..]);
        let (expanded, _) = validate_pair(pair.polygon().clone(), maps, &tol()).unwrap();
        let (subset, _) = check_reducible(&expanded, &tol()).expect("expanded pair is reducible");
        assert_eq!(subset, vec![0, 1, 2, 3]);
    }

    #[test]
    fn catalog_name_parsing() {
        assert_eq!(CatalogName::parse("golden-bee").unwrap(), CatalogName::GoldenBee);
        assert_eq!(
            CatalogName::parse("right-triangle:2,1").unwrap(),
            CatalogName::RightTriangle(2, 1)
        );
        assert_eq!(
            CatalogName::parse("trapezoid(3,1)").unwrap(),
            CatalogName::Trapezoid(3, 1)
        );
        assert!(CatalogName::parse("sporadic-A").unwrap().reconstructed());
        assert!(!CatalogName::parse("sporadic-B").unwrap().reconstructed());
    }
}
