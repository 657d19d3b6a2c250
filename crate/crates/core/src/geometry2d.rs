//! Parametrized 2D contours, their discretizations (equidistant smooth;
//! Gauss-Legendre panels with dyadic corner refinement), MFS source
//! placement and proxy circles.
//!
//! All contours are closed curves parametrized counterclockwise over
//! t in [0, 2pi); the inward normal (into the scatterer) is the left normal
//! of the travel direction.

use crate::{dist, Error, Point, Result};
use std::f64::consts::{PI, TAU};

/// Shape parameters for the C-shaped cavity: two concentric arcs joined by
/// semicircular caps. The cap radius is (outer - inner) / 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CShapeParams {
    pub outer_radius: f64,
    pub inner_radius: f64,
    pub opening_half_angle: f64,
}

impl Default for CShapeParams {
    fn default() -> Self {
        CShapeParams {
            outer_radius: 1.0,
            inner_radius: 0.6,
            opening_half_angle: PI / 6.0,
        }
    }
}

impl CShapeParams {
    fn cap_radius(&self) -> f64 {
        0.5 * (self.outer_radius - self.inner_radius)
    }

    fn cap_center_radius(&self) -> f64 {
        0.5 * (self.outer_radius + self.inner_radius)
    }
}

/// Rod: a thin rectangle with semicircular caps (a stadium).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RodParams {
    pub segment_length: f64,
    pub cap_radius: f64,
}

impl Default for RodParams {
    fn default() -> Self {
        RodParams { segment_length: 1.6, cap_radius: 0.2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContourKind {
    Circle { radius: f64 },
    Ellipse { a: f64, b: f64 },
    /// (f(t) cos t, f(t) sin t) with f(t) = 81/101 - (20/101) cos(5t).
    Starfish,
    /// ((2/pi^2)t^2 - (4/pi)t + 1, (2/pi^3)t^3 - (6/pi^2)t^2 + (4/pi)t),
    /// corner at t = 0.
    Teardrop,
    CShape(CShapeParams),
    Rod(RodParams),
}

/// A closed 2D contour with placement (center, rotation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contour2D {
    pub kind: ContourKind,
    pub center: [f64; 2],
    pub rotation: f64,
}

impl Contour2D {
    pub fn new(kind: ContourKind, center: [f64; 2], rotation: f64) -> Self {
        Contour2D { kind, center, rotation }
    }

    /// Parameters at which the curve has a geometric singularity (corner or
    /// curvature jump needing dyadic refinement).
    pub fn corner_params(&self) -> Vec<f64> {
        match self.kind {
            ContourKind::Teardrop => vec![0.0],
            ContourKind::CShape(_) | ContourKind::Rod(_) => {
                let spans = self.segment_spans();
                let mut t = 0.0;
                let mut out = vec![0.0];
                for &s in &spans[..3] {
                    t += s;
                    out.push(t);
                }
                out
            }
            _ => Vec::new(),
        }
    }

    /// Parameter spans of the four segments of a piecewise contour, scaled
    /// to sum to 2pi, proportional to arclength.
    fn segment_spans(&self) -> [f64; 4] {
        let lens = match self.kind {
            ContourKind::CShape(p) => {
                let arc = TAU - 2.0 * p.opening_half_angle;
                [p.outer_radius * arc, PI * p.cap_radius(), p.inner_radius * arc, PI * p.cap_radius()]
            }
            ContourKind::Rod(p) => {
                [p.segment_length, PI * p.cap_radius, p.segment_length, PI * p.cap_radius]
            }
            _ => return [TAU, 0.0, 0.0, 0.0],
        };
        let total: f64 = lens.iter().sum();
        [
            lens[0] / total * TAU,
            lens[1] / total * TAU,
            lens[2] / total * TAU,
            lens[3] / total * TAU,
        ]
    }

    /// Body-frame position and parameter derivative at t.
    fn point_deriv_local(&self, t: f64) -> ([f64; 2], [f64; 2]) {
        match self.kind {
            ContourKind::Circle { radius } => {
                let (s, c) = t.sin_cos();
                ([radius * c, radius * s], [-radius * s, radius * c])
            }
            ContourKind::Ellipse { a, b } => {
                let (s, c) = t.sin_cos();
                ([a * c, b * s], [-a * s, b * c])
            }
            ContourKind::Starfish => {
                let f = 81.0 / 101.0 - 20.0 / 101.0 * (5.0 * t).cos();
                let fp = 100.0 / 101.0 * (5.0 * t).sin();
                let (s, c) = t.sin_cos();
                ([f * c, f * s], [fp * c - f * s, fp * s + f * c])
            }
            ContourKind::Teardrop => {
                let x = 2.0 / (PI * PI) * t * t - 4.0 / PI * t + 1.0;
                let y = 2.0 / (PI * PI * PI) * t * t * t - 6.0 / (PI * PI) * t * t + 4.0 / PI * t;
                let dx = 4.0 / (PI * PI) * t - 4.0 / PI;
                let dy = 6.0 / (PI * PI * PI) * t * t - 12.0 / (PI * PI) * t + 4.0 / PI;
                ([x, y], [dx, dy])
            }
            ContourKind::CShape(p) => self.cshape_point_deriv(t, p),
            ContourKind::Rod(p) => self.rod_point_deriv(t, p),
        }
    }

    fn segment_local(&self, t: f64) -> (usize, f64, f64) {
        let spans = self.segment_spans();
        let mut start = 0.0;
        for (i, &s) in spans.iter().enumerate() {
            if t < start + s || i == 3 {
                return (i, (t - start) / s, s);
            }
            start += s;
        }
        unreachable!()
    }

    fn cshape_point_deriv(&self, t: f64, p: CShapeParams) -> ([f64; 2], [f64; 2]) {
        let (seg, u, span) = self.segment_local(t);
        let phi = p.opening_half_angle;
        let arc = TAU - 2.0 * phi;
        let rc = p.cap_radius();
        let cr = p.cap_center_radius();
        match seg {
            0 => {
                // outer arc, theta from phi up to 2pi - phi
                let theta = phi + u * arc;
                let (s, c) = theta.sin_cos();
                let scale = arc / span;
                (
                    [p.outer_radius * c, p.outer_radius * s],
                    [-p.outer_radius * s * scale, p.outer_radius * c * scale],
                )
            }
            2 => {
                // inner arc, theta from 2pi - phi back down to phi
                let theta = (TAU - phi) - u * arc;
                let (s, c) = theta.sin_cos();
                let scale = arc / span;
                (
                    [p.inner_radius * c, p.inner_radius * s],
                    [p.inner_radius * s * scale, -p.inner_radius * c * scale],
                )
            }
            seg => {
                // caps: seg 1 at theta = 2pi - phi (alpha 0..pi, bulge +e_theta),
                // seg 3 at theta = phi (alpha pi..2pi, bulge -e_theta)
                let theta_e = if seg == 1 { TAU - phi } else { phi };
                let alpha = if seg == 1 { u * PI } else { PI + u * PI };
                let (st, ct) = theta_e.sin_cos();
                let er = [ct, st];
                let et = [-st, ct];
                let (sa, ca) = alpha.sin_cos();
                let pos = [
                    cr * er[0] + rc * (ca * er[0] + sa * et[0]),
                    cr * er[1] + rc * (ca * er[1] + sa * et[1]),
                ];
                let scale = PI / span;
                let dv = [
                    rc * (-sa * er[0] + ca * et[0]) * scale,
                    rc * (-sa * er[1] + ca * et[1]) * scale,
                ];
                (pos, dv)
            }
        }
    }

    fn rod_point_deriv(&self, t: f64, p: RodParams) -> ([f64; 2], [f64; 2]) {
        let (seg, u, span) = self.segment_local(t);
        let a = 0.5 * p.segment_length;
        let rc = p.cap_radius;
        match seg {
            0 => {
                // bottom edge, left to right
                let scale = p.segment_length / span;
                ([-a + u * p.segment_length, -rc], [scale, 0.0])
            }
            2 => {
                // top edge, right to left
                let scale = p.segment_length / span;
                ([a - u * p.segment_length, rc], [-scale, 0.0])
            }
            seg => {
                let (cx, beta) = if seg == 1 {
                    (a, -0.5 * PI + u * PI)
                } else {
                    (-a, 0.5 * PI + u * PI)
                };
                let (sb, cb) = beta.sin_cos();
                let scale = PI / span;
                ([cx + rc * cb, rc * sb], [-rc * sb * scale, rc * cb * scale])
            }
        }
    }

    /// Global position and parameter derivative at t.
    pub fn point_deriv(&self, t: f64) -> (Point, [f64; 2]) {
        let (p, d) = self.point_deriv_local(t);
        let (s, c) = self.rotation.sin_cos();
        let pos = [
            self.center[0] + c * p[0] - s * p[1],
            self.center[1] + s * p[0] + c * p[1],
            0.0,
        ];
        let dv = [c * d[0] - s * d[1], s * d[0] + c * d[1]];
        (pos, dv)
    }

    /// Global position at t.
    pub fn point(&self, t: f64) -> Point {
        self.point_deriv(t).0
    }

    /// A deep interior point, safe as a manufactured-monopole location
    /// (strictly inside the MFS source curve for the bundled distances).
    pub fn deep_anchor(&self) -> Point {
        let local = match self.kind {
            ContourKind::CShape(p) => [-p.cap_center_radius(), 0.0],
            _ => [0.0, 0.0],
        };
        let (s, c) = self.rotation.sin_cos();
        [
            self.center[0] + c * local[0] - s * local[1],
            self.center[1] + s * local[0] + c * local[1],
            0.0,
        ]
    }

    /// Polygonal approximation with `n` vertices, uniform in parameter.
    pub fn polygon(&self, n: usize) -> Vec<[f64; 2]> {
        (0..n)
            .map(|i| {
                let p = self.point(TAU * i as f64 / n as f64);
                [p[0], p[1]]
            })
            .collect()
    }
}

/// Position and inward unit normal at parameter t.
///
/// Errors when t is outside [0, 2pi) or lands exactly on a corner parameter,
/// where the normal is undefined.
pub fn eval_contour(c: &Contour2D, t: f64) -> Result<(Point, Point)> {
    if !(0.0..TAU).contains(&t) {
        return Err(Error::InvalidArgument(format!("contour parameter {t} outside [0, 2pi)")));
    }
    if c.corner_params().iter().any(|&tc| t == tc) {
        return Err(Error::Geometry(format!("normal undefined at corner parameter t = {t}")));
    }
    let (pos, dv) = c.point_deriv(t);
    let norm = (dv[0] * dv[0] + dv[1] * dv[1]).sqrt();
    if norm == 0.0 {
        return Err(Error::Geometry(format!("degenerate tangent at t = {t}")));
    }
    // CCW curve: interior lies to the left of the travel direction.
    Ok((pos, [-dv[1] / norm, dv[0] / norm, 0.0]))
}

/// Boundary discretization shared by the 2D and 3D builders.
#[derive(Debug, Clone)]
pub struct Discretization {
    /// Collocation points x_i.
    pub colloc: Vec<Point>,
    /// Parameter values of the collocation points ((t, 0) in 2D, (u, v) in 3D).
    pub colloc_params: Vec<[f64; 2]>,
    /// Panel index of each collocation point (all zero for smooth grids).
    pub panel_of: Vec<usize>,
    /// Quadrature weight slot (parameter measure).
    pub weights: Vec<f64>,
    /// MFS sources y_j, strictly inside the body.
    pub mfs_sources: Vec<Point>,
    /// Inward unit normals at the source parameter locations.
    pub inward_normals: Vec<Point>,
    /// Per-source MFS distance.
    pub d_local: Vec<f64>,
    /// Parameters of geometric singularities.
    pub corner_params: Vec<f64>,
}

impl Discretization {
    pub fn n_colloc(&self) -> usize {
        self.colloc.len()
    }

    pub fn n_sources(&self) -> usize {
        self.mfs_sources.len()
    }
}

/// Ray-crossing (even-odd) point-in-polygon test.
pub fn point_in_polygon(poly: &[[f64; 2]], p: [f64; 2]) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let [x1, y1] = poly[i];
        let [x2, y2] = poly[(i + 1) % n];
        if (y1 > p[1]) != (y2 > p[1]) && p[0] < x1 + (p[1] - y1) * (x2 - x1) / (y2 - y1) {
            inside = !inside;
        }
    }
    inside
}

const INTERIOR_POLY_POINTS: usize = 4096;

fn check_sources(c: &Contour2D, sources: &[Point]) -> Result<()> {
    let poly = c.polygon(INTERIOR_POLY_POINTS);
    for (j, y) in sources.iter().enumerate() {
        if !point_in_polygon(&poly, [y[0], y[1]]) {
            return Err(Error::Geometry(format!(
                "MFS source {j} at ({:.6}, {:.6}) escapes the scatterer",
                y[0], y[1]
            )));
        }
    }
    for i in 0..sources.len() {
        for j in i + 1..sources.len() {
            if dist(sources[i], sources[j]) < 1e-12 {
                return Err(Error::Geometry(format!("MFS sources {i} and {j} collide")));
            }
        }
    }
    Ok(())
}

/// Equidistant-in-parameter discretization of a smooth contour:
/// m = N collocation points, n = N/2 MFS sources at distance d inward.
pub fn discretize_smooth(c: &Contour2D, n: usize, d: f64) -> Result<Discretization> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!("N must be even and >= 4, got {n}")));
    }
    if !(d > 0.0) {
        return Err(Error::InvalidArgument(format!("MFS distance must be positive, got {d}")));
    }
    if matches!(c.kind, ContourKind::Teardrop) {
        return Err(Error::Geometry(
            "smooth discretization is not defined on a contour with corners; use panels".into(),
        ));
    }

    let step = TAU / n as f64;
    let mut colloc = Vec::with_capacity(n);
    let mut params = Vec::with_capacity(n);
    for i in 0..n {
        let t = step * i as f64;
        colloc.push(c.point(t));
        params.push([t, 0.0]);
    }

    let n_src = n / 2;
    let mut sources = Vec::with_capacity(n_src);
    let mut normals = Vec::with_capacity(n_src);
    for j in 0..n_src {
        let t = TAU * j as f64 / n_src as f64;
        let (pos, nin) = eval_contour(c, t)?;
        sources.push([pos[0] + d * nin[0], pos[1] + d * nin[1], 0.0]);
        normals.push(nin);
    }
    check_sources(c, &sources)?;

    Ok(Discretization {
        colloc,
        colloc_params: params,
        panel_of: vec![0; n],
        weights: vec![step; n],
        mfs_sources: sources,
        inward_normals: normals,
        d_local: vec![d; n_src],
        corner_params: Vec::new(),
    })
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        // recompute the derivative at the converged node for the weight
        let mut p0 = 1.0;
        let mut p1 = x;
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Base panel allocation for the C-shape from m_seg:
/// total 4 m_seg, split ~2/5 outer, ~3/10 inner, ~3/20 per cap.
fn cshape_panel_counts(m_seg: usize) -> Result<[usize; 4]> {
    let total = 4 * m_seg;
    let outer = (0.4 * total as f64).round() as usize;
    let cap = (0.15 * total as f64).round() as usize;
    if cap == 0 || outer + 2 * cap + 1 > total {
        return Err(Error::InvalidArgument(format!("too few C-shape panels (m_seg = {m_seg})")));
    }
    let inner = total - outer - 2 * cap;
    Ok([outer, cap, inner, cap])
}

/// Base panel allocation for the rod from the total count:
/// ~4/11 per straight segment, ~3/22 per cap.
fn rod_panel_counts(total: usize) -> Result<[usize; 4]> {
    let mut straight = (4.0 / 11.0 * total as f64).round() as usize;
    if (total as i64 - 2 * straight as i64) % 2 != 0 {
        straight += 1;
    }
    if 2 * straight + 2 > total {
        return Err(Error::InvalidArgument(format!("too few rod panels (total = {total})")));
    }
    let cap = (total - 2 * straight) / 2;
    Ok([straight, cap, straight, cap])
}

/// Dyadic split of panel [a, b] toward the singular end, n_refine times.
/// The two smallest subpanels have width (b - a) 2^-n_refine.
fn dyadic_split(a: f64, b: f64, n_refine: usize, toward_start: bool) -> Vec<(f64, f64)> {
    if n_refine == 0 {
        return vec![(a, b)];
    }
    let w = b - a;
    let mut bounds = Vec::with_capacity(n_refine + 2);
    bounds.push(0.0);
    for i in 0..=n_refine {
        bounds.push(2f64.powi(-(n_refine as i32) + i as i32));
    }
    let mut out: Vec<(f64, f64)> = bounds
        .windows(2)
        .map(|p| {
            if toward_start {
                (a + w * p[0], a + w * p[1])
            } else {
                (b - w * p[1], b - w * p[0])
            }
        })
        .collect();
    if !toward_start {
        out.reverse();
    }
    out
}

/// Gauss-Legendre panel discretization with dyadic refinement toward
/// geometric singularities.
///
/// `m_panels` is the base panel knob: the per-segment count (m_seg) for the
/// C-shape, the total base panel count for the teardrop and rod. Collocation
/// uses `p_panel` nodes per panel, MFS sources `p_panel / 2` nodes per panel
/// displaced inward by `min(d, half the panel arclength)`.
pub fn discretize_panels(
    c: &Contour2D,
    m_panels: usize,
    p_panel: usize,
    n_refine: usize,
    d: f64,
) -> Result<Discretization> {
    if m_panels < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 base panels, got {m_panels}")));
    }
    if p_panel < 2 || p_panel % 2 != 0 {
        return Err(Error::InvalidArgument(format!("p_panel must be even and >= 2, got {p_panel}")));
    }
    if !(d > 0.0) {
        return Err(Error::InvalidArgument(format!("MFS distance must be positive, got {d}")));
    }

    // Base panels: uniform within each segment of the canonical parametrization.
    let mut base: Vec<(f64, f64)> = Vec::new();
    match c.kind {
        ContourKind::CShape(_) | ContourKind::Rod(_) => {
            let counts = match c.kind {
                ContourKind::CShape(_) => cshape_panel_counts(m_panels)?,
                _ => rod_panel_counts(m_panels)?,
            };
            let spans = c.segment_spans();
            let mut start = 0.0;
            for (seg, &cnt) in counts.iter().enumerate() {
                for i in 0..cnt {
                    base.push((
                        start + spans[seg] * i as f64 / cnt as f64,
                        start + spans[seg] * (i + 1) as f64 / cnt as f64,
                    ));
                }
                start += spans[seg];
            }
        }
        _ => {
            for i in 0..m_panels {
                base.push((TAU * i as f64 / m_panels as f64, TAU * (i + 1) as f64 / m_panels as f64));
            }
        }
    }

    // Refine every panel with an edge on a singular parameter.
    let corners = c.corner_params();
    let touches = |x: f64, tc: f64| -> bool {
        (x - tc).abs() < 1e-12 || (x - tc - TAU).abs() < 1e-12 || (x - tc + TAU).abs() < 1e-12
    };
    let mut panels: Vec<(f64, f64)> = Vec::new();
    for &(a, b) in &base {
        let at_start = corners.iter().any(|&tc| touches(a, tc));
        let at_end = corners.iter().any(|&tc| touches(b, tc));
        if at_start && at_end {
            return Err(Error::Geometry(
                "panel touches singular parameters at both ends; increase base panel count".into(),
            ));
        }
        if at_start {
            panels.extend(dyadic_split(a, b, n_refine, true));
        } else if at_end {
            panels.extend(dyadic_split(a, b, n_refine, false));
        } else {
            panels.push((a, b));
        }
    }
    for &(a, b) in &panels {
        if b - a < 1e-14 {
            return Err(Error::Geometry(format!(
                "refined panel collapsed below parameter length 1e-14 (width {:e})",
                b - a
            )));
        }
    }

    let (gl_x, gl_w) = gauss_legendre(p_panel);
    let (gs_x, _) = gauss_legendre(p_panel / 2);

    let mut colloc = Vec::new();
    let mut params = Vec::new();
    let mut panel_of = Vec::new();
    let mut weights = Vec::new();
    let mut sources = Vec::new();
    let mut normals = Vec::new();
    let mut d_local = Vec::new();

    for (pi, &(a, b)) in panels.iter().enumerate() {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        // arclength of the panel from its own quadrature nodes
        let mut arclen = 0.0;
        for (x, w) in gl_x.iter().zip(gl_w.iter()) {
            let t = mid + half * x;
            let (_, dv) = c.point_deriv(t);
            arclen += w * half * (dv[0] * dv[0] + dv[1] * dv[1]).sqrt();
        }
        for (x, w) in gl_x.iter().zip(gl_w.iter()) {
            let t = mid + half * x;
            colloc.push(c.point(t));
            params.push([t, 0.0]);
            panel_of.push(pi);
            weights.push(w * half);
        }
        let dl = d.min(0.5 * arclen);
        for x in gs_x.iter() {
            let t = mid + half * x;
            let (pos, nin) = eval_contour(c, t)?;
            sources.push([pos[0] + dl * nin[0], pos[1] + dl * nin[1], 0.0]);
            normals.push(nin);
            d_local.push(dl);
        }
    }
    check_sources(c, &sources)?;

    Ok(Discretization {
        colloc,
        colloc_params: params,
        panel_of,
        weights,
        mfs_sources: sources,
        inward_normals: normals,
        d_local,
        corner_params: corners,
    })
}

/// Proxy surface: points on a circle (2D) or sphere (3D) enclosing one
/// scatterer; the scattering matrix is valid for interactions with bodies
/// outside it.
#[derive(Debug, Clone)]
pub struct ProxySurface {
    pub points: Vec<Point>,
    pub center: Point,
    pub radius: f64,
}

impl ProxySurface {
    pub fn contains(&self, p: Point) -> bool {
        dist(p, self.center) < self.radius
    }
}

/// Default proxy point count: one more than the collocation count.
pub fn default_proxy_count(disc: &Discretization) -> usize {
    disc.n_colloc() + 1
}

/// Proxy circle centered at the collocation centroid with radius
/// `radius_factor` times the circumscribed radius.
pub fn build_proxy_circle(
    disc: &Discretization,
    radius_factor: f64,
    p_count: usize,
) -> Result<ProxySurface> {
    if !(radius_factor > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "proxy radius factor must exceed 1, got {radius_factor}"
        )));
    }
    if p_count < 8 {
        return Err(Error::InvalidArgument(format!("need at least 8 proxy points, got {p_count}")));
    }
    let m = disc.n_colloc() as f64;
    let mut center = [0.0, 0.0, 0.0];
    for p in &disc.colloc {
        center[0] += p[0] / m;
        center[1] += p[1] / m;
    }
    let rmax = disc
        .colloc
        .iter()
        .map(|p| dist(*p, center))
        .fold(0.0f64, f64::max);
    let radius = radius_factor * rmax;
    let points = (0..p_count)
        .map(|j| {
            let a = TAU * j as f64 / p_count as f64;
            [center[0] + radius * a.cos(), center[1] + radius * a.sin(), 0.0]
        })
        .collect();
    Ok(ProxySurface { points, center, radius })
}
