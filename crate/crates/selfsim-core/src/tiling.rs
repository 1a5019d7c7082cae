//! Patches, window tilings, and the verification suite: nesting,
//! self-similarity, congruence motions, plane-filling certificates, and the
//! quasiperiodicity probe.
//!
//! A tile is `t(θ,k,σ) = (f_{-(θ|k)} ∘ f_σ)(p)`; the patch `T(θ,k)` collects
//! the tiles whose address σ lies on the frontier at weight `e(θ|k)`. The
//! patches are nested in `k`, and their union over all `k` is the tiling
//! `T(θ)` of (almost always) the whole plane.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::addresses::{
    self, Address, AddressError, ThetaStream,
};
use crate::geometry::{
    self, Disk, Location, Point, Polygon, Similitude, Tolerance,
};
use crate::math;
use crate::pairs::GeneratingPair;

#[derive(Debug, Clone, PartialEq)]
pub enum TilingError {
    /// σ does not satisfy `e(σ) >= e(θ|k) > e⁻(σ)`.
    AddressNotOnFrontier { address: Address, weight: u32 },
    /// The refining patch does not cover the blown-up tiles yet.
    DepthTooShallow,
    /// `e(θ|K) != e(ψ|L)`: the candidate motion would not be Euclidean.
    WeightMismatch { left: u32, right: u32 },
    /// The streams do not share a tail after the given cut, so the motion
    /// does not map patch onto patch.
    TailMismatch,
    /// The window disk is not covered by any blow-up within the depth cap.
    WindowNotCovered,
    /// More tiles than the configured cap.
    TileCapExceeded { cap: usize },
    /// An address-level failure (frontier cap, exhausted stream, parse).
    Address(AddressError),
}

impl fmt::Display for TilingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TilingError::AddressNotOnFrontier { address, weight } => {
                write!(f, "address {address} is not on the frontier at weight {weight}")
            }
            TilingError::DepthTooShallow => {
                write!(f, "patch depth too shallow to refine the blown-up tiles")
            }
            TilingError::WeightMismatch { left, right } => {
                write!(f, "prefix weights differ ({left} vs {right}): not a Euclidean motion")
            }
            TilingError::TailMismatch => write!(f, "streams do not share a tail"),
            TilingError::WindowNotCovered => write!(f, "window not covered by any blow-up"),
            TilingError::TileCapExceeded { cap } => {
                write!(f, "tile count exceeds the cap of {cap}")
            }
            TilingError::Address(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for TilingError {}

impl From<AddressError> for TilingError {
    fn from(e: AddressError) -> Self {
        TilingError::Address(e)
    }
}

/// Resource limits for patch and window generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TilingCaps {
    /// Largest blow-up level `k` tried.
    pub max_depth: usize,
    /// Largest number of tiles materialized per patch or window.
    pub max_tiles: usize,
}

impl Default for TilingCaps {
    fn default() -> Self {
        TilingCaps { max_depth: 20, max_tiles: 1_000_000 }
    }
}

/// A placed tile of `T(θ)`.
#[derive(Debug, Clone)]
pub struct Tile {
    /// `f_{-(θ|k)} ∘ f_σ`; its ratio is `s^class`.
    pub placement: Similitude,
    /// The placement applied to the base polygon.
    pub shape: Polygon,
    pub address: Address,
    /// Blow-up level `k` the tile was constructed at.
    pub level: usize,
    /// Congruence class `e(σ) - e(θ|k)` in `0..M`.
    pub class: u32,
}

/// The patch `T(θ,k)`: one tile per frontier address at weight `e(θ|k)`.
#[derive(Debug, Clone)]
pub struct Patch {
    pub tiles: Vec<Tile>,
    pub theta: ThetaStream,
    pub level: usize,
    /// `e(θ|k)`.
    pub weight: u32,
}

/// Tiles meeting a disk window, of the smallest blow-up level that covers
/// the window (or the deepest level tried when `covered` is false).
#[derive(Debug, Clone)]
pub struct WindowTiling {
    pub window: Disk,
    pub tiles: Vec<Tile>,
    pub covered: bool,
    /// Blow-up level the tiles come from.
    pub level: usize,
    /// The pair's order M, for class-indexed counting.
    pub order: u32,
}

/// One representative polygon per congruence class, largest first.
#[derive(Debug, Clone)]
pub struct PrototileSet {
    pub representatives: Vec<Polygon>,
}

impl PrototileSet {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }
}

/// Builds the single tile `t(θ,k,σ)`, enforcing that σ lies on the frontier
/// at weight `e(θ|k)`.
pub fn make_tile(
    pair: &GeneratingPair,
    theta: &ThetaStream,
    k: usize,
    sigma: &Address,
    tol: &Tolerance,
) -> Result<Tile, TilingError> {
    let prefix = addresses::stream_prefix(theta, k)?;
    let target: u32 = prefix.symbols().iter().map(|&s| pair.exponent(s)).sum();
    let (e, e_minus) = addresses::weight(sigma, pair);
    if !(e >= target && target > e_minus) {
        return Err(TilingError::AddressNotOnFrontier { address: sigma.clone(), weight: target });
    }
    let placement = addresses::inverse_prefix(theta, k, pair)?.compose(&addresses::map_of(sigma, pair));
    let shape = placement.transform_polygon(pair.polygon());
    let _ = tol;
    Ok(Tile {
        placement,
        shape,
        address: sigma.clone(),
        level: k,
        class: e - target,
    })
}

/// The patch `T(θ,k)`, tiles in lexicographic address order.
pub fn patch(
    pair: &GeneratingPair,
    theta: &ThetaStream,
    k: usize,
    caps: &TilingCaps,
) -> Result<Patch, TilingError> {
    let prefix = addresses::stream_prefix(theta, k)?;
    let target: u32 = prefix.symbols().iter().map(|&s| pair.exponent(s)).sum();
    let base = addresses::inverse_prefix(theta, k, pair)?;
    let mut tiles = Vec::new();
    collect_tiles(pair, &base, target, k, None, caps.max_tiles, &mut Vec::new(), 0, &mut tiles)?;
    Ok(Patch { tiles, theta: theta.clone(), level: k, weight: target })
}

/// Depth-first tile collection in lexicographic address order, carrying the
/// partial composition `base ∘ f_{σ-prefix}`. With a window filter, subtrees
/// whose placed region misses the window are pruned: the placed region of an
/// extension is contained in the placed region of its prefix.
#[allow(clippy::too_many_arguments)]
fn collect_tiles(
    pair: &GeneratingPair,
    placed: &Similitude,
    target: u32,
    level: usize,
    window: Option<&Disk>,
    cap: usize,
    prefix: &mut Vec<u8>,
    e: u32,
    out: &mut Vec<Tile>,
) -> Result<(), TilingError> {
    for symbol in 1..=pair.len() as u8 {
        let next = placed.compose(pair.map(symbol));
        let e_next = e + pair.exponent(symbol);
        if let Some(disk) = window {
            let bbox = geometry::Aabb::of_points(
                &pair
                    .polygon()
                    .vertices()
                    .iter()
                    .map(|&v| next.apply(v))
                    .collect::<Vec<Point>>(),
            );
            if !bbox.meets_disk(disk) {
                continue;
            }
        }
        prefix.push(symbol);
        if e_next >= target {
            if out.len() >= cap {
                return Err(TilingError::TileCapExceeded { cap });
            }
            let shape = next.transform_polygon(pair.polygon());
            out.push(Tile {
                placement: next,
                shape,
                address: Address::new(prefix.clone()),
                level,
                class: e_next - target,
            });
        } else {
            collect_tiles(pair, &next, target, level, window, cap, prefix, e_next, out)?;
        }
        prefix.pop();
    }
    Ok(())
}

/// Quantum for placement and shape identity keys: coarse enough to absorb
/// float drift across levels, far finer than any tile feature.
fn identity_quantum(tol: &Tolerance) -> f64 {
    tol.eps_len * 1e3
}

/// True when every tile of `T(θ,k)` reappears, same placement, in
/// `T(θ,k+1)`.
pub fn check_nested(
    pair: &GeneratingPair,
    theta: &ThetaStream,
    k: usize,
    caps: &TilingCaps,
    tol: &Tolerance,
) -> Result<bool, TilingError> {
    let shallow = patch(pair, theta, k, caps)?;
    let deep = patch(pair, theta, k + 1, caps)?;
    Ok(tiles_nested_in(&shallow.tiles, &deep.tiles, tol))
}

/// Placement-key subset test between explicit tile lists.
pub fn tiles_nested_in(sub: &[Tile], sup: &[Tile], tol: &Tolerance) -> bool {
    let q = identity_quantum(tol);
    let keys: BTreeSet<[i64; 6]> = sup.iter().map(|t| t.placement.quantized_key(q)).collect();
    sub.iter().all(|t| keys.contains(&t.placement.quantized_key(q)))
}

/// Smallest `k <= max_k` whose blow-up `f_{-(θ|k)}(p)` covers the window
/// disk, with the tiles whose bounding box meets the window. When no level
/// covers (the tiling may fill only a wedge), returns the `max_k` tiles with
/// `covered = false` instead of failing.
///
/// Coverage is tested by sampling 256 points of the disk boundary and
/// requiring each to lie inside or on the blown-up polygon.
pub fn generate_window(
    pair: &GeneratingPair,
    theta: &ThetaStream,
    window: Disk,
    max_k: usize,
    caps: &TilingCaps,
    tol: &Tolerance,
) -> Result<WindowTiling, TilingError> {
    let mut chosen = None;
    for k in 1..=max_k.min(caps.max_depth) {
        let blown = addresses::inverse_prefix(theta, k, pair)?.transform_polygon(pair.polygon());
        if disk_covered_by(&window, &blown, tol) {
            chosen = Some((k, true));
            break;
        }
    }
    let (k, covered) = chosen.unwrap_or((max_k.min(caps.max_depth), false));
    let prefix = addresses::stream_prefix(theta, k)?;
    let target: u32 = prefix.symbols().iter().map(|&s| pair.exponent(s)).sum();
    let base = addresses::inverse_prefix(theta, k, pair)?;
    let mut tiles = Vec::new();
    collect_tiles(
        pair,
        &base,
        target,
        k,
        Some(&window),
        caps.max_tiles,
        &mut Vec::new(),
        0,
        &mut tiles,
    )?;
    Ok(WindowTiling { window, tiles, covered, level: k, order: pair.order() })
}

/// 256 boundary samples inside-or-boundary of the polygon.
fn disk_covered_by(disk: &Disk, poly: &Polygon, tol: &Tolerance) -> bool {
    const SAMPLES: usize = 256;
    for i in 0..SAMPLES {
        let angle = core::f64::consts::TAU * i as f64 / SAMPLES as f64;
        let p = Point::new(
            disk.center.x + disk.radius * math::cos(angle),
            disk.center.y + disk.radius * math::sin(angle),
        );
        if poly.contains(p, tol) == Location::Outside {
            return false;
        }
    }
    true
}

/// Congruence-classes the tile shapes. Class count never exceeds the order
/// `M = max a_n` and reaches it on deep enough patches.
pub fn prototiles(tiles: &[Tile], tol: &Tolerance) -> PrototileSet {
    let mut classes: BTreeMap<Vec<(i64, i64)>, usize> = BTreeMap::new();
    for (i, t) in tiles.iter().enumerate() {
        classes.entry(geometry::congruence_key(&t.shape, tol)).or_insert(i);
    }
    let mut representatives: Vec<Polygon> =
        classes.values().map(|&i| tiles[i].shape.clone()).collect();
    representatives.sort_by(|a, b| {
        b.area().partial_cmp(&a.area()).expect("finite areas")
    });
    PrototileSet { representatives }
}

/// Verifies that `φ = f_{-α}` is a self-similarity of `T(ᾱ)` at the given
/// depth: every blown-up tile of the depth patch must be exactly the union
/// of the tiles of the `depth + |α|` patch it contains.
pub fn check_self_similar(
    pair: &GeneratingPair,
    alpha: &Address,
    depth: usize,
    caps: &TilingCaps,
    tol: &Tolerance,
) -> Result<bool, TilingError> {
    debug_assert!(!alpha.is_empty());
    let theta = ThetaStream::periodic(alpha.symbols().to_vec(), pair.len() as u8)
        .map_err(TilingError::Address)?;
    let phi = blowup_map(pair, alpha);
    verify_self_similarity(pair, &phi, &theta, depth, depth + alpha.len(), caps, tol)
}

/// The candidate self-similarity `φ = f_{-α} = f_{α1}⁻¹ ∘ f_{α2}⁻¹ ∘ ...`.
pub fn blowup_map(pair: &GeneratingPair, alpha: &Address) -> Similitude {
    let mut acc = Similitude::identity();
    for &s in alpha.symbols() {
        acc = acc.compose(&pair.map(s).invert());
    }
    acc
}

/// Operational self-similarity check of an arbitrary expanding map against
/// the patches of an arbitrary stream; used directly as the negative
/// control (mismatched θ must fail).
pub fn verify_self_similarity(
    pair: &GeneratingPair,
    phi: &Similitude,
    theta: &ThetaStream,
    depth: usize,
    refine_depth: usize,
    caps: &TilingCaps,
    tol: &Tolerance,
) -> Result<bool, TilingError> {
    let coarse = patch(pair, theta, depth, caps)?;
    let fine = patch(pair, theta, refine_depth, caps)?;
    let support = addresses::inverse_prefix(theta, refine_depth, pair)?
        .transform_polygon(pair.polygon());
    let rel_area_tol = 1e-8;
    for tile in &coarse.tiles {
        let blown = phi.transform_polygon(&tile.shape);
        // The refining patch must reach far enough to subdivide this tile.
        if blown
            .vertices()
            .iter()
            .any(|&v| support.contains(v, tol) == Location::Outside)
        {
            return Err(TilingError::DepthTooShallow);
        }
        let blown_bounds = blown.bounds();
        let mut covered = 0.0;
        for cand in &fine.tiles {
            if !cand.shape.bounds().intersects(&blown_bounds) {
                continue;
            }
            if blown.contains(cand.shape.centroid(), tol) == Location::Outside {
                continue;
            }
            // A candidate must lie entirely inside the blown-up tile;
            // a straddler disproves the subdivision property.
            if cand
                .shape
                .vertices()
                .iter()
                .any(|&v| blown.contains(v, tol) == Location::Outside)
            {
                return Ok(false);
            }
            covered += cand.shape.area();
        }
        if math::abs(covered - blown.area()) > rel_area_tol * blown.area() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Euclidean motion carrying `T(θ)` onto `T(ψ)` when the streams share
/// a tail with matched weights `e(θ|K) = e(ψ|L)`:
/// `g = (f_{ψ1}⁻¹ ∘ ... ∘ f_{ψL}⁻¹) ∘ (f_{θK} ∘ ... ∘ f_{θ1})`.
///
/// The motion is verified tile-to-tile: `g` must map the depth-`k` patch of
/// θ into the depth-`L + k - K` patch of ψ.
pub fn congruence_motion(
    pair: &GeneratingPair,
    theta: &ThetaStream,
    k_cut: usize,
    psi: &ThetaStream,
    l_cut: usize,
    verify_depth: usize,
    caps: &TilingCaps,
    tol: &Tolerance,
) -> Result<Similitude, TilingError> {
    let theta_prefix = addresses::stream_prefix(theta, k_cut)?;
    let psi_prefix = addresses::stream_prefix(psi, l_cut)?;
    let e_theta: u32 = theta_prefix.symbols().iter().map(|&s| pair.exponent(s)).sum();
    let e_psi: u32 = psi_prefix.symbols().iter().map(|&s| pair.exponent(s)).sum();
    if e_theta != e_psi {
        return Err(TilingError::WeightMismatch { left: e_theta, right: e_psi });
    }
    let mut forward = Similitude::identity();
    for &s in theta_prefix.symbols().iter().rev() {
        forward = forward.compose(pair.map(s));
    }
    let g = addresses::inverse_prefix(psi, l_cut, pair)?.compose(&forward);

    let depth = verify_depth.max(k_cut + 1);
    let from = patch(pair, theta, depth, caps)?;
    let to = patch(pair, psi, l_cut + depth - k_cut, caps)?;
    let q = identity_quantum(tol);
    let keys: BTreeSet<[i64; 6]> = to.tiles.iter().map(|t| t.placement.quantized_key(q)).collect();
    for tile in &from.tiles {
        let moved = g.compose(&tile.placement);
        if !keys.contains(&moved.quantized_key(q)) {
            return Err(TilingError::TailMismatch);
        }
    }
    Ok(g)
}

/// Plane-filling certificate for `θ = β ᾱ`.
///
/// The supports of the patches are `f_{-β}((f_{-α})^j(p))`, and `f_{-α}` is
/// the inverse of `f_{reverse(α)}`, so the blow-ups exhaust the plane
/// exactly when the unique fixed point of `f_{reverse(α)}` lies strictly
/// inside `p` (for a one-symbol α this is the fixed point of `f_α` itself).
/// The finite prefix β only moves the picture by `f_{-β}`.
pub fn fills_plane_certificate(
    pair: &GeneratingPair,
    beta: &Address,
    alpha: &Address,
    tol: &Tolerance,
) -> Result<bool, TilingError> {
    debug_assert!(!alpha.is_empty());
    let _ = beta; // the certificate is independent of the finite prefix
    let mut anchor = Similitude::identity();
    for &s in alpha.symbols().iter().rev() {
        anchor = anchor.compose(pair.map(s));
    }
    let fp = anchor
        .fixed_point(tol)
        .expect("ratio s^{e(alpha)} < 1, never 1");
    Ok(pair.polygon().contains(fp, tol) == Location::Inside)
}

/// Outcome of the frontier-partition check at one level.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionReport {
    pub level: u32,
    pub tile_count: usize,
    /// `|sum area(f_σ(p)) - area(p)| / area(p)` over the frontier.
    pub area_defect_rel: f64,
    /// Largest pairwise overlap area between frontier tiles, absolute.
    pub max_overlap: f64,
    /// `|sum s^{2 e(σ)} - 1|`: the area identity in exponent form.
    pub weight_sum_defect: f64,
}

/// Checks that the frontier tiles `{f_σ(p) : σ ∈ S_n}` partition `p`:
/// their areas must sum to `area(p)` and all pairwise overlaps must vanish.
/// Overlaps are measured by direct pairwise clipping; a bounding-box grid
/// only skips pairs whose boxes cannot meet.
pub fn verify_partition(
    pair: &GeneratingPair,
    n: u32,
    cap: usize,
    tol: &Tolerance,
) -> Result<PartitionReport, TilingError> {
    let front = addresses::frontier(pair, n, cap)?;
    let scale = pair.scale();
    let mut shapes: Vec<Polygon> = Vec::with_capacity(front.addresses.len());
    let mut weight_sum = 0.0;
    for sigma in &front.addresses {
        shapes.push(addresses::map_of(sigma, pair).transform_polygon(pair.polygon()));
        let (e, _) = addresses::weight(sigma, pair);
        weight_sum += math::powi(scale, 2 * e);
    }
    let host_area = pair.polygon().area();
    let total: f64 = shapes.iter().map(|s| s.area()).sum();
    let area_defect_rel = math::abs(total - host_area) / host_area;

    // Grid hash with cells the size of the largest tile: only same-cell or
    // neighbor-cell pairs can have meeting boxes.
    let boxes: Vec<geometry::Aabb> = shapes.iter().map(|s| s.bounds()).collect();
    let cell = boxes
        .iter()
        .map(|b| (b.max.x - b.min.x).max(b.max.y - b.min.y))
        .fold(0.0, f64::max)
        .max(1e-12);
    let mut grid: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, b) in boxes.iter().enumerate() {
        let c = (
            math::round(0.5 * (b.min.x + b.max.x) / cell) as i64,
            math::round(0.5 * (b.min.y + b.max.y) / cell) as i64,
        );
        grid.entry(c).or_default().push(i);
    }
    let mut max_overlap: f64 = 0.0;
    for (&(cx, cy), members) in &grid {
        for dx in 0..=1i64 {
            for dy in -1..=1i64 {
                if dx == 0 && dy < 0 {
                    continue; // each unordered cell pair once
                }
                let Some(others) = grid.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                for (ai, &i) in members.iter().enumerate() {
                    let start = if dx == 0 && dy == 0 { ai + 1 } else { 0 };
                    for &j in &others[start..] {
                        if !boxes[i].intersects(&boxes[j]) {
                            continue;
                        }
                        let overlap =
                            geometry::intersection_area(&shapes[i], &shapes[j], tol)
                                .expect("frontier tiles are simple");
                        max_overlap = max_overlap.max(overlap);
                    }
                }
            }
        }
    }
    Ok(PartitionReport {
        level: n,
        tile_count: shapes.len(),
        area_defect_rel,
        max_overlap,
        weight_sum_defect: math::abs(weight_sum - 1.0),
    })
}

/// A covered window of the given radius somewhere in the tiling's support.
///
/// Tries disk centers at the centroids of the successive blow-ups
/// `f_{-(θ|j)}(p)`: for plane-filling streams the base centroid already
/// works, and for wedge tilings the deeper centroids move into the wedge
/// until a disk of the requested radius fits.
pub fn covered_window(
    pair: &GeneratingPair,
    theta: &ThetaStream,
    radius: f64,
    caps: &TilingCaps,
    tol: &Tolerance,
) -> Result<WindowTiling, TilingError> {
    for j in 0..=caps.max_depth {
        let center = addresses::inverse_prefix(theta, j, pair)?
            .transform_polygon(pair.polygon())
            .centroid();
        let win = generate_window(pair, theta, Disk::new(center, radius), caps.max_depth, caps, tol)?;
        if win.covered {
            return Ok(win);
        }
    }
    Err(TilingError::WindowNotCovered)
}

/// Canonical point-set key of a polygon: sorted quantized vertices.
fn shape_key(poly: &Polygon, quantum: f64) -> Vec<(i64, i64)> {
    let mut key: Vec<(i64, i64)> = poly
        .vertices()
        .iter()
        .map(|p| {
            (
                math::round(p.x / quantum) as i64,
                math::round(p.y / quantum) as i64,
            )
        })
        .collect();
    key.sort_unstable();
    key
}

/// Finds all ratio-1 motions (reflections included) placing congruent
/// copies of the patch `T(θ,k)` inside the window tiling around the base
/// polygon's centroid. The patch itself always counts, so the result has at
/// least one entry; for quasiperiodic tilings and large enough windows it
/// has at least two.
///
/// Candidate motions are anchored on the rarest congruence class of the
/// patch to keep the search small, and every candidate is verified
/// tile-by-tile against the window's shape set.
pub fn quasiperiodicity_probe(
    pair: &GeneratingPair,
    theta: &ThetaStream,
    patch_level: usize,
    search_radius: f64,
    caps: &TilingCaps,
    tol: &Tolerance,
) -> Result<Vec<Similitude>, TilingError> {
    let win = covered_window(pair, theta, search_radius, caps, tol)?;
    let motif = patch(pair, theta, patch_level, caps)?;
    let q = identity_quantum(tol);

    // Shape universe: window tiles plus the motif's own tiles (the motif is
    // part of the tiling even when the window filter trims its outskirts).
    let mut universe: BTreeSet<Vec<(i64, i64)>> = BTreeSet::new();
    for t in win.tiles.iter().chain(motif.tiles.iter()) {
        universe.insert(shape_key(&t.shape, q));
    }

    // Anchor on the rarest congruence class in the motif.
    let mut class_counts: BTreeMap<Vec<(i64, i64)>, usize> = BTreeMap::new();
    for t in &motif.tiles {
        *class_counts.entry(geometry::congruence_key(&t.shape, tol)).or_insert(0) += 1;
    }
    let rare_class = class_counts
        .iter()
        .min_by_key(|(_, &count)| count)
        .map(|(k, _)| k.clone())
        .expect("motif is nonempty");
    let anchor = motif
        .tiles
        .iter()
        .find(|t| geometry::congruence_key(&t.shape, tol) == rare_class)
        .expect("class came from the motif");

    let mut found: BTreeMap<[i64; 6], Similitude> = BTreeMap::new();
    for target in win.tiles.iter().chain(motif.tiles.iter()) {
        if geometry::congruence_key(&target.shape, tol) != rare_class {
            continue;
        }
        for motion in geometry::congruences(&anchor.shape, &target.shape, tol) {
            let key = motion.quantized_key(q);
            if found.contains_key(&key) {
                continue;
            }
            let ok = motif.tiles.iter().all(|t| {
                let moved = motion.transform_polygon(&t.shape);
                universe.contains(&shape_key(&moved, q))
            });
            if ok {
                found.insert(key, motion);
            }
        }
    }
    Ok(found.into_values().collect())
}
