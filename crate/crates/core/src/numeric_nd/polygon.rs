//! `K° = {x : ⟨x, y⟩ ≤ 1 for all y ∈ K}` for finite `K`.

use super::{cross, dot, Point2};

const EPS: f64 = 1e-12;

/// Convex region containing the origin, as both representations:
/// `normals` gives the irredundant constraints `⟨n, x⟩ ≤ 1`; `vertices`
/// (counterclockwise) and `rays` generate it as `conv(vertices) + cone(rays)`.
/// A region with lines (a strip, the plane) lists both directions of each line
/// among the rays and may have no vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon2D {
    pub normals: Vec<Point2>,
    pub vertices: Vec<Point2>,
    pub rays: Vec<Point2>,
}

impl Polygon2D {
    pub fn whole_plane() -> Self {
        Self {
            normals: Vec::new(),
            vertices: vec![[0.0, 0.0]],
            rays: vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]],
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, p: Point2, eps: f64) -> bool {
        self.normals.iter().all(|n| dot(*n, p) <= 1.0 + eps)
    }

    /// `max_i ⟨n_i, p⟩` (the gauge of `p`); `p` is inside iff this is `≤ 1`.
    pub fn gauge(&self, p: Point2) -> f64 {
        self.normals
            .iter()
            .map(|n| dot(*n, p))
            .fold(0.0, f64::max)
    }
}

/// Convex hull (counterclockwise, collinear points dropped).
fn hull(mut pts: Vec<Point2>) -> Vec<Point2> {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= EPS {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= EPS {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn angle(p: Point2) -> f64 {
    p[1].atan2(p[0])
}

/// Polar of a finite point set.
pub fn polar_set_2d(points: &[Point2]) -> Polygon2D {
    let pts: Vec<Point2> = points
        .iter()
        .copied()
        .filter(|p| p[0].hypot(p[1]) > EPS)
        .collect();
    if pts.is_empty() {
        return Polygon2D::whole_plane();
    }

    // Irredundant constraints are the vertices of conv({0} ∪ points) other
    // than the origin.
    let mut with_origin = pts;
    with_origin.push([0.0, 0.0]);
    let mut normals: Vec<Point2> = hull(with_origin)
        .into_iter()
        .filter(|p| p[0].hypot(p[1]) > EPS)
        .collect();
    normals.sort_by(|a, b| angle(*a).total_cmp(&angle(*b)));

    // Recession cone {d : ⟨d, y⟩ ≤ 0 for all y}.
    let rays = recession_rays(&normals);

    // Vertices: intersections of angularly consecutive constraints whose
    // normals turn by less than π.
    let mut vertices = Vec::new();
    let n = normals.len();
    if n >= 2 {
        for i in 0..n {
            let a = normals[i];
            let b = normals[(i + 1) % n];
            let det = a[0] * b[1] - a[1] * b[0];
            if det > EPS {
                vertices.push([(b[1] - a[1]) / det, (a[0] - b[0]) / det]);
            }
        }
    }
    if vertices.is_empty() {
        // No corner (single constraint or lines): anchor at the boundary
        // points closest to the origin.
        vertices = normals
            .iter()
            .map(|nn| {
                let r2 = dot(*nn, *nn);
                [nn[0] / r2, nn[1] / r2]
            })
            .collect();
    }
    Polygon2D {
        normals,
        vertices,
        rays,
    }
}

/// Generators of `{d : ⟨d, n⟩ ≤ 0 for every normal n}`.
fn recession_rays(normals: &[Point2]) -> Vec<Point2> {
    // Candidate extreme directions: perpendiculars of each normal.
    let feasible = |d: Point2| normals.iter().all(|n| dot(*n, d) <= EPS);
    let mut cands: Vec<Point2> = Vec::new();
    for n in normals {
        let len = n[0].hypot(n[1]);
        for d in [[-n[1] / len, n[0] / len], [n[1] / len, -n[0] / len]] {
            if feasible(d) {
                cands.push(d);
            }
        }
    }
    // A half-plane cone also needs its interior direction.
    if normals
        .iter()
        .all(|n| n[0] * normals[0][1] - n[1] * normals[0][0] == 0.0 && dot(*n, normals[0]) > 0.0)
    {
        let n = normals[0];
        let len = n[0].hypot(n[1]);
        cands.push([-n[0] / len, -n[1] / len]);
    }
    let mut out: Vec<Point2> = Vec::new();
    for c in cands {
        if !out
            .iter()
            .any(|o| (o[0] - c[0]).abs() < 1e-9 && (o[1] - c[1]).abs() < 1e-9)
        {
            out.push(c);
        }
    }
    out
}

fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = dot(ab, ab);
    let t = if len2 == 0.0 { 0.0 } else { (dot(ap, ab) / len2).clamp(0.0, 1.0) };
    let c = [a[0] + t * ab[0] - p[0], a[1] + t * ab[1] - p[1]];
    c[0].hypot(c[1])
}

fn distance_to_polygon(p: Point2, poly: &[Point2]) -> f64 {
    let n = poly.len();
    let inside = n >= 3 && (0..n).all(|i| cross(poly[i], poly[(i + 1) % n], p) >= -EPS);
    if inside {
        return 0.0;
    }
    (0..n)
        .map(|i| point_segment_distance(p, poly[i], poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

/// Hausdorff distance between two bounded convex polygons given by their
/// counterclockwise vertices (attained at a vertex for convex sets).
pub fn hausdorff_distance(a: &[Point2], b: &[Point2]) -> f64 {
    let one_way = |x: &[Point2], y: &[Point2]| {
        x.iter()
            .map(|p| distance_to_polygon(*p, y))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_gives_vertical_strip() {
        let p = polar_set_2d(&[[1.0, 0.0], [-1.0, 0.0]]);
        assert!(!p.is_bounded());
        assert_eq!(p.normals.len(), 2);
        assert!(p.contains([1.0, 100.0], 0.0));
        assert!(p.contains([-1.0, -100.0], 0.0));
        assert!(!p.contains([1.01, 0.0], 0.0));
        assert_eq!(p.rays.len(), 2);
        assert!(p.rays.iter().all(|r| r[0].abs() < 1e-15 && (r[1].abs() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn origin_only_gives_whole_plane() {
        let p = polar_set_2d(&[[0.0, 0.0]]);
        assert!(p.normals.is_empty());
        assert!(p.contains([1e9, -1e9], 0.0));
        assert_eq!(polar_set_2d(&[]), Polygon2D::whole_plane());
    }

    #[test]
    fn square_and_diamond_are_dual() {
        let square = [[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]];
        let p = polar_set_2d(&square);
        assert!(p.is_bounded());
        let diamond = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        assert!(hausdorff_distance(&p.vertices, &diamond) < 1e-12);
        let back = polar_set_2d(&p.vertices);
        assert!(hausdorff_distance(&back.vertices, &square) < 1e-12);
    }

    #[test]
    fn double_polar_recovers_polygon() {
        let hexagon: Vec<Point2> = (0..6)
            .map(|k| {
                let t = std::f64::consts::PI * k as f64 / 3.0 + 0.2;
                [1.5 * t.cos() + 0.1, 0.7 * t.sin() - 0.05]
            })
            .collect();
        let once = polar_set_2d(&hexagon);
        let twice = polar_set_2d(&once.vertices);
        assert!(hausdorff_distance(&twice.vertices, &hexagon) < 1e-9);
    }

    #[test]
    fn circle_samples_approach_the_disk() {
        for &n in &[64usize, 256] {
            let pts: Vec<Point2> = (0..n)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                    [t.cos(), t.sin()]
                })
                .collect();
            let p = polar_set_2d(&pts);
            let h = std::f64::consts::PI / n as f64;
            // Polar vertices sit at radius 1/cos(h), so the error is O(h²).
            let err = p
                .vertices
                .iter()
                .map(|v| (v[0].hypot(v[1]) - 1.0).abs())
                .fold(0.0, f64::max);
            assert!(err <= h * h, "n={n} err={err}");
        }
    }

    #[test]
    fn one_sided_points_give_unbounded_polar() {
        // Points in the upper half-plane: polar contains the whole lower cone.
        let p = polar_set_2d(&[[1.0, 1.0], [-1.0, 1.0]]);
        assert!(!p.is_bounded());
        assert!(p.contains([0.0, -1e6], 0.0));
        assert_eq!(p.vertices, vec![[0.0, 1.0]]);
    }
}
