//! Coordinate-geometry oracle for the analytic tile areas.
//!
//! Each packing phase has a representative tile holding exactly four discs'
//! area that tessellates the plane by translation at every angle. The tiles
//! are built here as explicit polygons with vertices anchored on disc
//! centres, so their shoelace areas verify the closed-form branch areas
//! independently:
//!
//! * square family: a square of side `4*R0` whose top and bottom edges fold
//!   at their middle as alternate columns rise (four rhombic pieces);
//! * 30-hexagonal family: a parallelogram with constant side length `4*R`
//!   and varying angle `2*alpha` (four rhombic pieces);
//! * 60-hexagonal family: a two-row span whose row boundaries deform
//!   differently (four equilateral triangles and two parallelograms of
//!   angle `2*(pi/3 - alpha)`).
//!
//! The oracle works in dimensional coordinates (`R0 = 1` by default) and
//! divides by `4*R0^2` only when comparing against the nondimensional model.

pub mod polygon;

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};
use core::fmt;

use crate::packing::{PackingError, PackingKind, PackingScenario, PackingState};
pub use polygon::{polygon_area, Vec2};
use polygon::{
    convex_intersection_area, interior_angle, point_in_polygon, point_segment_distance,
    signed_area, triangulate,
};

/// Tolerance for matching a disc centre to a tile vertex or edge.
const CENTRE_MATCH_TOL: f64 = 1e-9;

/// Errors from tile construction and verification.
#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    /// Polygon with fewer than three vertices or zero area.
    DegeneratePolygon,
    /// Tile specification violates an invariant or the family's angle range.
    InvalidTile(&'static str),
    /// Propagated failure from the analytic model.
    Model(PackingError),
    /// Tile area does not match the area of its lattice cell (gap or
    /// self-overlap in the tiling).
    TileAreaMismatch { tile: f64, cell: f64 },
    /// Sum of the convex pieces disagrees with the outer polygon.
    SubtileAreaMismatch { pieces: f64, tile: f64 },
    /// Two tile copies overlap; indices are positions in the copy grid.
    CopyOverlap { first: usize, second: usize, area: f64 },
    /// Two disc centres in the tessellation sit closer than one diameter.
    DiscTooClose { distance: f64 },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::DegeneratePolygon => write!(f, "degenerate polygon"),
            GeometryError::InvalidTile(msg) => write!(f, "invalid tile: {msg}"),
            GeometryError::Model(e) => write!(f, "model error: {e}"),
            GeometryError::TileAreaMismatch { tile, cell } => {
                write!(f, "tile area {tile} does not match lattice cell area {cell}")
            }
            GeometryError::SubtileAreaMismatch { pieces, tile } => {
                write!(f, "subtile pieces sum to {pieces}, tile area is {tile}")
            }
            GeometryError::CopyOverlap { first, second, area } => {
                write!(f, "tile copies {first} and {second} overlap by area {area}")
            }
            GeometryError::DiscTooClose { distance } => {
                write!(f, "disc centres at distance {distance} below one diameter")
            }
        }
    }
}

impl core::error::Error for GeometryError {}

impl From<PackingError> for GeometryError {
    fn from(e: PackingError) -> Self {
        GeometryError::Model(e)
    }
}

/// Which representative tile to build, at which angle and radius.
///
/// `centre_spacing_h` is the horizontal distance between in-row disc
/// centres; it stays constant within a transition family and ties the
/// contact condition together: `centre_spacing_h = 2*radius*cos(alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TileSpec {
    pub kind: PackingKind,
    pub alpha: f64,
    pub radius: f64,
    pub r0: f64,
    pub centre_spacing_h: f64,
}

impl TileSpec {
    pub fn new(kind: PackingKind, alpha: f64, radius: f64, r0: f64) -> Result<Self, GeometryError> {
        let spec = TileSpec {
            kind,
            alpha,
            radius,
            r0,
            centre_spacing_h: 2.0 * radius * alpha.cos(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Tile for the packing state the model reaches at swelling factor `xi`.
    pub fn from_model(
        scenario: &PackingScenario,
        xi: f64,
        r0: f64,
    ) -> Result<Self, GeometryError> {
        let state = PackingState::evaluate(scenario, xi)?;
        let kind = if state.alpha >= FRAC_PI_6 {
            PackingKind::Hex30
        } else if scenario.is_square_initial() && state.n == 0 {
            PackingKind::Square
        } else {
            PackingKind::Hex60
        };
        TileSpec::new(kind, state.alpha, xi * r0, r0)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if !(self.radius.is_finite() && self.radius > 0.0 && self.r0.is_finite() && self.r0 > 0.0) {
            return Err(GeometryError::InvalidTile("radius must be finite and positive"));
        }
        if !self.alpha.is_finite() {
            return Err(GeometryError::InvalidTile("angle must be finite"));
        }
        let slack = 1e-9;
        let in_range = match self.kind {
            PackingKind::Square | PackingKind::Hex60 => {
                self.alpha >= -slack && self.alpha <= FRAC_PI_6 + slack
            }
            PackingKind::Hex30 => {
                self.alpha >= FRAC_PI_6 - slack && self.alpha <= FRAC_PI_3 + slack
            }
        };
        if !in_range {
            return Err(GeometryError::InvalidTile("angle outside the tile family's range"));
        }
        let expected = 2.0 * self.radius * self.alpha.cos();
        if (self.centre_spacing_h - expected).abs() > 1e-12 * expected.abs().max(self.radius) {
            return Err(GeometryError::InvalidTile(
                "centre spacing violates the contact condition 2*R*cos(alpha)",
            ));
        }
        Ok(())
    }
}

/// Explicit tile geometry: outer polygon, convex pieces, disc centres, and
/// the two translation vectors that tessellate the plane with it.
#[derive(Debug, Clone, PartialEq)]
pub struct TileGeometry {
    pub vertices: Vec<Vec2>,
    pub subtiles: Vec<Vec<Vec2>>,
    pub disc_centres: Vec<Vec2>,
    pub disc_count_inside: f64,
    pub radius: f64,
    pub lattice: [Vec2; 2],
}

/// Builds the representative tile for a specification.
pub fn build_tile(spec: &TileSpec) -> Result<TileGeometry, GeometryError> {
    spec.validate()?;
    let r = spec.radius;
    let d = spec.centre_spacing_h;
    let s = 2.0 * r * spec.alpha.sin();
    let (vertices, subtiles, lattice, centres) = match spec.kind {
        PackingKind::Square => square_tile(r, d, s),
        PackingKind::Hex30 => hex30_tile(d, s),
        PackingKind::Hex60 => hex60_tile(r, d, s, spec.alpha),
    };
    let disc_centres = keep_touching(centres, &vertices, r);
    let disc_count_inside = count_disc_fractions(&disc_centres, &vertices, r);
    Ok(TileGeometry {
        vertices,
        subtiles,
        disc_centres,
        disc_count_inside,
        radius: r,
        lattice,
    })
}

type TileParts = (Vec<Vec2>, Vec<Vec<Vec2>>, [Vec2; 2], Vec<Vec2>);

/// Square-family tile: columns of vertically stacked discs (spacing `2R`),
/// alternate columns risen by `s`; the top and bottom edges follow the
/// rising contact, folding the square at its middle.
fn square_tile(r: f64, d: f64, s: f64) -> TileParts {
    let v = |x, y| Vec2::new(x, y);
    let vertices = alloc::vec![
        v(0.0, 0.0),
        v(d, s),
        v(2.0 * d, 0.0),
        v(2.0 * d, 4.0 * r),
        v(d, 4.0 * r + s),
        v(0.0, 4.0 * r),
    ];
    let subtiles = alloc::vec![
        alloc::vec![v(0.0, 0.0), v(d, s), v(d, s + 2.0 * r), v(0.0, 2.0 * r)],
        alloc::vec![v(0.0, 2.0 * r), v(d, s + 2.0 * r), v(d, s + 4.0 * r), v(0.0, 4.0 * r)],
        alloc::vec![v(d, s), v(2.0 * d, 0.0), v(2.0 * d, 2.0 * r), v(d, s + 2.0 * r)],
        alloc::vec![v(d, s + 2.0 * r), v(2.0 * d, 2.0 * r), v(2.0 * d, 4.0 * r), v(d, s + 4.0 * r)],
    ];
    let lattice = [v(2.0 * d, 0.0), v(0.0, 4.0 * r)];
    let mut centres = Vec::new();
    for i in -1..=2 {
        for j in -1..=3 {
            let (fi, fj) = (i as f64, j as f64);
            centres.push(v(2.0 * d * fi, 2.0 * r * fj));
            centres.push(v(d + 2.0 * d * fi, s + 2.0 * r * fj));
        }
    }
    (vertices, subtiles, lattice, centres)
}

/// 30-hexagonal family tile: a parallelogram spanned by twice the two
/// contact vectors, sides `4R`, angle `2*alpha`.
fn hex30_tile(d: f64, s: f64) -> TileParts {
    let v = |x, y| Vec2::new(x, y);
    let u1 = v(d, s);
    let u2 = v(d, -s);
    let vertices = alloc::vec![v(0.0, 0.0), u2 * 2.0, (u1 + u2) * 2.0, u1 * 2.0];
    let rhomb = |o: Vec2| alloc::vec![o, o + u2, o + u1 + u2, o + u1];
    let subtiles = alloc::vec![rhomb(v(0.0, 0.0)), rhomb(u1), rhomb(u2), rhomb(u1 + u2)];
    let lattice = [u1 * 2.0, u2 * 2.0];
    let mut centres = Vec::new();
    for i in -1..=3 {
        for j in -3..=3 {
            centres.push(u1 * (i as f64) + u2 * (j as f64));
        }
    }
    (vertices, subtiles, lattice, centres)
}

/// 60-hexagonal family tile: two rows of the post-reorganisation packing.
/// Within each row alternate discs rise by `s`; each risen disc carries an
/// equilateral contact triangle to the row above, and the remainder of each
/// row strip is a parallelogram of angle `2*(pi/3 - alpha)`.
fn hex60_tile(r: f64, d: f64, s: f64, alpha: f64) -> TileParts {
    let v = |x, y| Vec2::new(x, y);
    let sqrt3 = 3.0_f64.sqrt();
    // Row-to-row offset and rise, set by the contact triangles.
    let w = d / 2.0 - sqrt3 * r * alpha.sin();
    let rise = r * alpha.sin() + sqrt3 * r * alpha.cos();
    let row = v(w, rise);
    let a0 = v(0.0, 0.0);
    let b0 = v(d, s);
    let a0r = v(2.0 * d, 0.0);
    let vertices = alloc::vec![
        a0,
        b0,
        a0r,
        a0r + row,
        a0r + row * 2.0,
        b0 + row * 2.0,
        a0 + row * 2.0,
        a0 + row,
    ];
    let strip = |o: Vec2| {
        [
            alloc::vec![a0 + o, b0 + o, a0 + row + o],
            alloc::vec![b0 + o, b0 + row + o, a0 + row + o],
            alloc::vec![b0 + o, a0r + o, a0r + row + o, b0 + row + o],
        ]
    };
    let mut subtiles = Vec::with_capacity(6);
    subtiles.extend(strip(v(0.0, 0.0)));
    subtiles.extend(strip(row));
    let lattice = [v(2.0 * d, 0.0), row * 2.0];
    let mut centres = Vec::new();
    for k in -2..=4 {
        for i in -2..=3 {
            let base = row * (k as f64) + v(2.0 * d * (i as f64), 0.0);
            centres.push(base);
            centres.push(base + v(d, s));
        }
    }
    (vertices, subtiles, lattice, centres)
}

/// Keeps the centres whose discs enter the tile polygon (tangent-only discs
/// contribute no area and are dropped).
fn keep_touching(centres: Vec<Vec2>, vertices: &[Vec2], r: f64) -> Vec<Vec2> {
    let tol = CENTRE_MATCH_TOL * r;
    centres
        .into_iter()
        .filter(|&c| {
            if point_in_polygon(c, vertices) {
                return true;
            }
            let n = vertices.len();
            (0..n).any(|i| point_segment_distance(c, vertices[i], vertices[(i + 1) % n]) <= r - tol)
        })
        .collect()
}

/// Fraction of each disc inside the tile, by exact centre counting: interior
/// centres count 1, centres on an edge count 1/2, centres on a vertex count
/// the interior angle over `2*pi`. The tiles anchor boundary centres so that
/// translated copies complete each boundary disc exactly once.
fn count_disc_fractions(centres: &[Vec2], vertices: &[Vec2], r: f64) -> f64 {
    let tol = CENTRE_MATCH_TOL * r;
    let n = vertices.len();
    let ccw: Vec<Vec2> = if signed_area(vertices) < 0.0 {
        vertices.iter().rev().copied().collect()
    } else {
        vertices.to_vec()
    };
    let mut total = 0.0;
    for &c in centres {
        let mut fraction = None;
        for i in 0..n {
            if c.distance(ccw[i]) <= tol {
                fraction = Some(interior_angle(&ccw, i) / (2.0 * PI));
                break;
            }
        }
        if fraction.is_none() {
            for i in 0..n {
                if point_segment_distance(c, ccw[i], ccw[(i + 1) % n]) <= tol {
                    fraction = Some(0.5);
                    break;
                }
            }
        }
        total += fraction.unwrap_or_else(|| if point_in_polygon(c, &ccw) { 1.0 } else { 0.0 });
    }
    total
}

/// Outcome of one formula-versus-oracle area comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCheck {
    pub formula_area: f64,
    pub oracle_area: f64,
    pub rel_error: f64,
}

/// Builds the tile for the state the model reaches at `xi` and compares its
/// shoelace area (nondimensionalised by `4*R0^2`) against the closed-form
/// branch area.
pub fn oracle_check(xi: f64, scenario: &PackingScenario) -> Result<OracleCheck, GeometryError> {
    let r0 = 1.0;
    let state = PackingState::evaluate(scenario, xi)?;
    let spec = TileSpec::from_model(scenario, xi, r0)?;
    let tile = build_tile(&spec)?;
    let oracle_area = polygon_area(&tile.vertices)? / (4.0 * r0 * r0);
    let formula_area = state.a_body_tilde;
    let rel_error = (oracle_area - formula_area).abs() / formula_area;
    Ok(OracleCheck { formula_area, oracle_area, rel_error })
}

/// Verifies that `copies x copies` translated copies of the tile tessellate:
/// the tile area equals its lattice-cell area (so no gaps are possible once
/// overlaps are excluded), the convex pieces partition the tile, no two
/// copies overlap, and all disc centres stay at least one diameter apart.
pub fn tessellation_check(tile: &TileGeometry, copies: usize) -> Result<(), GeometryError> {
    if copies < 2 {
        return Err(GeometryError::InvalidTile("tessellation needs at least 2x2 copies"));
    }
    let tile_area = polygon_area(&tile.vertices)?;
    let cell = tile.lattice[0].cross(tile.lattice[1]).abs();
    if (tile_area - cell).abs() > 1e-9 * cell {
        return Err(GeometryError::TileAreaMismatch { tile: tile_area, cell });
    }
    let pieces: f64 = tile
        .subtiles
        .iter()
        .map(|p| signed_area(p).abs())
        .sum();
    if (pieces - tile_area).abs() > 1e-9 * tile_area {
        return Err(GeometryError::SubtileAreaMismatch { pieces, tile: tile_area });
    }

    let triangles = triangulate(&tile.vertices)?;
    let offsets: Vec<Vec2> = (0..copies * copies)
        .map(|idx| {
            let i = (idx / copies) as f64;
            let j = (idx % copies) as f64;
            tile.lattice[0] * i + tile.lattice[1] * j
        })
        .collect();

    // Pairwise overlap bookkeeping on the triangulated outer polygon.
    let reach = tile
        .vertices
        .iter()
        .map(|p| p.norm())
        .fold(0.0_f64, f64::max);
    for a in 0..offsets.len() {
        for b in (a + 1)..offsets.len() {
            if offsets[a].distance(offsets[b]) > 2.0 * reach {
                continue;
            }
            let mut overlap = 0.0;
            for ta in &triangles {
                let ta_shifted: Vec<Vec2> = ta.iter().map(|&p| p + offsets[a]).collect();
                for tb in &triangles {
                    let tb_shifted: Vec<Vec2> = tb.iter().map(|&p| p + offsets[b]).collect();
                    overlap += convex_intersection_area(&ta_shifted, &tb_shifted);
                }
            }
            if overlap > 1e-9 * tile_area {
                return Err(GeometryError::CopyOverlap { first: a, second: b, area: overlap });
            }
        }
    }

    // Disc separation across the whole patch.
    let mut centres: Vec<Vec2> = Vec::new();
    let dedupe_tol = CENTRE_MATCH_TOL * tile.radius;
    for offset in &offsets {
        for &c in &tile.disc_centres {
            let p = c + *offset;
            if !centres.iter().any(|q| q.distance(p) <= dedupe_tol) {
                centres.push(p);
            }
        }
    }
    let min_gap = 2.0 * tile.radius - 1e-12;
    for i in 0..centres.len() {
        for j in (i + 1)..centres.len() {
            let dist = centres[i].distance(centres[j]);
            if dist < min_gap {
                return Err(GeometryError::DiscTooClose { distance: dist });
            }
        }
    }
    Ok(())
}
