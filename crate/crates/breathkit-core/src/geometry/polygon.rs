//! Planar polygon primitives used by the tile oracle.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use super::GeometryError;

/// A point or vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, t: f64) -> Vec2 {
        Vec2::new(self.x * t, self.y * t)
    }
}

/// Signed shoelace area; positive for counter-clockwise vertex order.
pub fn signed_area(vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    let mut twice = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        twice += a.cross(b);
    }
    twice / 2.0
}

/// Absolute polygon area by the shoelace formula.
///
/// Fewer than three vertices or an exactly zero area is a degenerate
/// polygon.
pub fn polygon_area(vertices: &[Vec2]) -> Result<f64, GeometryError> {
    if vertices.len() < 3 {
        return Err(GeometryError::DegeneratePolygon);
    }
    let area = signed_area(vertices).abs();
    if area == 0.0 {
        return Err(GeometryError::DegeneratePolygon);
    }
    Ok(area)
}

/// Crossing-number point-in-polygon test (simple polygons, convex or not).
/// Points on the boundary may land on either side.
pub fn point_in_polygon(p: Vec2, vertices: &[Vec2]) -> bool {
    let n = vertices.len();
    let mut inside = false;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

/// Distance from a point to a segment.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Interior angle at vertex `i` of a counter-clockwise simple polygon,
/// in `[0, 2*pi)` (reflex vertices give angles above pi).
pub fn interior_angle(vertices: &[Vec2], i: usize) -> f64 {
    let n = vertices.len();
    let prev = vertices[(i + n - 1) % n];
    let cur = vertices[i];
    let next = vertices[(i + 1) % n];
    let to_next = next - cur;
    let to_prev = prev - cur;
    let mut angle = to_prev.y.atan2(to_prev.x) - to_next.y.atan2(to_next.x);
    if angle < 0.0 {
        angle += 2.0 * core::f64::consts::PI;
    }
    angle
}

/// Clips a polygon against a convex counter-clockwise polygon
/// (Sutherland-Hodgman). With a convex subject the result is the exact
/// intersection.
pub fn clip_convex(subject: &[Vec2], clip: &[Vec2]) -> Vec<Vec2> {
    let mut output: Vec<Vec2> = subject.to_vec();
    let n = clip.len();
    for i in 0..n {
        if output.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % n];
        let edge = b - a;
        let input = core::mem::take(&mut output);
        let m = input.len();
        for j in 0..m {
            let p = input[j];
            let q = input[(j + 1) % m];
            let dp = edge.cross(p - a);
            let dq = edge.cross(q - a);
            if dp >= 0.0 {
                output.push(p);
            }
            if (dp >= 0.0) != (dq >= 0.0) {
                let t = dp / (dp - dq);
                output.push(p + (q - p) * t);
            }
        }
    }
    output
}

/// Intersection area of two convex counter-clockwise polygons.
pub fn convex_intersection_area(a: &[Vec2], b: &[Vec2]) -> f64 {
    let clipped = clip_convex(a, b);
    if clipped.len() < 3 {
        0.0
    } else {
        signed_area(&clipped).abs()
    }
}

fn point_in_triangle_strict(p: Vec2, a: Vec2, b: Vec2, c: Vec2, eps: f64) -> bool {
    let d1 = (b - a).cross(p - a);
    let d2 = (c - b).cross(p - b);
    let d3 = (a - c).cross(p - c);
    d1 > eps && d2 > eps && d3 > eps
}

/// Ear-clipping triangulation of a simple polygon (any orientation).
/// Collinear vertices are dropped; triangles come out counter-clockwise.
pub fn triangulate(vertices: &[Vec2]) -> Result<Vec<[Vec2; 3]>, GeometryError> {
    if vertices.len() < 3 {
        return Err(GeometryError::DegeneratePolygon);
    }
    let mut verts: Vec<Vec2> = vertices.to_vec();
    if signed_area(&verts) < 0.0 {
        verts.reverse();
    }
    let scale = verts
        .iter()
        .map(|v| v.x.abs().max(v.y.abs()))
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    let eps = 1e-12 * scale * scale;
    let mut triangles = Vec::with_capacity(verts.len().saturating_sub(2));
    while verts.len() > 3 {
        let n = verts.len();
        let mut clipped = false;
        for i in 0..n {
            let prev = verts[(i + n - 1) % n];
            let cur = verts[i];
            let next = verts[(i + 1) % n];
            let turn = (cur - prev).cross(next - cur);
            if turn.abs() <= eps {
                // Straight or degenerate corner contributes no area.
                verts.remove(i);
                clipped = true;
                break;
            }
            if turn < 0.0 {
                continue;
            }
            let mut is_ear = true;
            for (j, &v) in verts.iter().enumerate() {
                if j == i || j == (i + n - 1) % n || j == (i + 1) % n {
                    continue;
                }
                if point_in_triangle_strict(v, prev, cur, next, eps) {
                    is_ear = false;
                    break;
                }
            }
            if is_ear {
                triangles.push([prev, cur, next]);
                verts.remove(i);
                clipped = true;
                break;
            }
        }
        if !clipped {
            return Err(GeometryError::DegeneratePolygon);
        }
    }
    if verts.len() == 3 {
        let turn = (verts[1] - verts[0]).cross(verts[2] - verts[1]);
        if turn.abs() > eps {
            triangles.push([verts[0], verts[1], verts[2]]);
        }
    }
    if triangles.is_empty() {
        return Err(GeometryError::DegeneratePolygon);
    }
    Ok(triangles)
}
