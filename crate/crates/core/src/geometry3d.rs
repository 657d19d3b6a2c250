//! Parametrized smooth 3D surfaces (ellipsoid, torus), tensor-grid
//! discretizations, and proxy spheres.

use crate::geometry2d::{Discretization, ProxySurface};
use crate::{dist, Error, Point, Result};
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceKind {
    /// Semi-axes (a, b, c): (a sin v cos u, b sin v sin u, c cos v).
    Ellipsoid { a: f64, b: f64, c: f64 },
    /// ((R + r cos v) cos u, (R + r cos v) sin u, r sin v), R > r.
    Torus { major: f64, minor: f64 },
}

/// A smooth closed surface with placement (center, rotation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Surface3D {
    pub kind: SurfaceKind,
    pub center: Point,
    pub rotation: [[f64; 3]; 3],
}

pub const IDENTITY_ROTATION: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

impl Surface3D {
    pub fn new(kind: SurfaceKind, center: Point, rotation: [[f64; 3]; 3]) -> Result<Self> {
        match kind {
            SurfaceKind::Ellipsoid { a, b, c } => {
                if !(a > 0.0 && b > 0.0 && c > 0.0) {
                    return Err(Error::InvalidArgument("ellipsoid semi-axes must be positive".into()));
                }
            }
            SurfaceKind::Torus { major, minor } => {
                if !(minor > 0.0 && major > minor) {
                    return Err(Error::InvalidArgument(format!(
                        "torus requires major > minor > 0, got ({major}, {minor})"
                    )));
                }
            }
        }
        // rotation must be orthogonal
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| rotation[k][i] * rotation[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if (dot - want).abs() > 1e-12 {
                    return Err(Error::InvalidArgument("rotation matrix is not orthogonal".into()));
                }
            }
        }
        Ok(Surface3D { kind, center, rotation })
    }

    fn rotate(&self, p: [f64; 3]) -> [f64; 3] {
        let r = &self.rotation;
        [
            r[0][0] * p[0] + r[0][1] * p[1] + r[0][2] * p[2],
            r[1][0] * p[0] + r[1][1] * p[1] + r[1][2] * p[2],
            r[2][0] * p[0] + r[2][1] * p[1] + r[2][2] * p[2],
        ]
    }

    fn unrotate(&self, p: [f64; 3]) -> [f64; 3] {
        let r = &self.rotation;
        [
            r[0][0] * p[0] + r[1][0] * p[1] + r[2][0] * p[2],
            r[0][1] * p[0] + r[1][1] * p[1] + r[2][1] * p[2],
            r[0][2] * p[0] + r[1][2] * p[1] + r[2][2] * p[2],
        ]
    }

    /// Body-frame position and outward unit normal at (u, v).
    fn point_normal_local(&self, u: f64, v: f64) -> ([f64; 3], [f64; 3]) {
        match self.kind {
            SurfaceKind::Ellipsoid { a, b, c } => {
                let (su, cu) = u.sin_cos();
                let (sv, cv) = v.sin_cos();
                let p = [a * sv * cu, b * sv * su, c * cv];
                let mut n = [p[0] / (a * a), p[1] / (b * b), p[2] / (c * c)];
                let nn = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
                n = [n[0] / nn, n[1] / nn, n[2] / nn];
                (p, n)
            }
            SurfaceKind::Torus { major, minor } => {
                let (su, cu) = u.sin_cos();
                let (sv, cv) = v.sin_cos();
                let rho = major + minor * cv;
                let p = [rho * cu, rho * su, minor * sv];
                let n = [cv * cu, cv * su, sv];
                (p, n)
            }
        }
    }

    /// Global position and outward unit normal at (u, v).
    pub fn point_normal(&self, u: f64, v: f64) -> (Point, Point) {
        let (p, n) = self.point_normal_local(u, v);
        let p = self.rotate(p);
        let n = self.rotate(n);
        (
            [p[0] + self.center[0], p[1] + self.center[1], p[2] + self.center[2]],
            n,
        )
    }

    /// v-grid for the collocation/source tensor grids: the ellipsoid grid is
    /// offset half a step to keep away from the poles.
    fn v_param(&self, j: usize, n_v: usize) -> f64 {
        match self.kind {
            SurfaceKind::Ellipsoid { .. } => PI * (j as f64 + 0.5) / n_v as f64,
            SurfaceKind::Torus { .. } => TAU * j as f64 / n_v as f64,
        }
    }

    /// True if the (global) point is strictly inside the enclosed volume.
    pub fn is_inside(&self, p: Point) -> bool {
        let q = self.unrotate([
            p[0] - self.center[0],
            p[1] - self.center[1],
            p[2] - self.center[2],
        ]);
        match self.kind {
            SurfaceKind::Ellipsoid { a, b, c } => {
                (q[0] / a).powi(2) + (q[1] / b).powi(2) + (q[2] / c).powi(2) < 1.0
            }
            SurfaceKind::Torus { major, minor } => {
                let rho = (q[0] * q[0] + q[1] * q[1]).sqrt();
                (rho - major).powi(2) + q[2] * q[2] < minor * minor
            }
        }
    }

    /// Deep interior point for manufactured monopoles.
    pub fn deep_anchor(&self) -> Point {
        let local = match self.kind {
            SurfaceKind::Ellipsoid { .. } => [0.0, 0.0, 0.0],
            SurfaceKind::Torus { major, .. } => [major, 0.0, 0.0],
        };
        let p = self.rotate(local);
        [p[0] + self.center[0], p[1] + self.center[1], p[2] + self.center[2]]
    }
}

/// Tensor-grid discretization: m = N_u N_v collocation points, n = m/4 MFS
/// sources on the coarser grid, displaced inward by d.
pub fn discretize_surface(s: &Surface3D, n_u: usize, n_v: usize, d: f64) -> Result<Discretization> {
    if n_u < 4 || n_v < 4 || n_u % 2 != 0 || n_v % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "N_u and N_v must be even and >= 4, got ({n_u}, {n_v})"
        )));
    }
    if !(d > 0.0) {
        return Err(Error::InvalidArgument(format!("MFS distance must be positive, got {d}")));
    }
    if let SurfaceKind::Torus { minor, .. } = s.kind {
        if d >= minor {
            return Err(Error::Geometry(format!(
                "MFS distance {d} crosses the torus centerline (minor radius {minor})"
            )));
        }
    }

    let mut colloc = Vec::with_capacity(n_u * n_v);
    let mut params = Vec::with_capacity(n_u * n_v);
    let du = TAU / n_u as f64;
    let dv = match s.kind {
        SurfaceKind::Ellipsoid { .. } => PI / n_v as f64,
        SurfaceKind::Torus { .. } => TAU / n_v as f64,
    };
    for i in 0..n_u {
        let u = du * i as f64;
        for j in 0..n_v {
            let v = s.v_param(j, n_v);
            let (p, _) = s.point_normal(u, v);
            colloc.push(p);
            params.push([u, v]);
        }
    }

    let (mu, mv) = (n_u / 2, n_v / 2);
    let mut sources = Vec::with_capacity(mu * mv);
    let mut normals = Vec::with_capacity(mu * mv);
    for i in 0..mu {
        let u = TAU * i as f64 / mu as f64;
        for j in 0..mv {
            let v = s.v_param(j, mv);
            let (p, n_out) = s.point_normal(u, v);
            let y = [p[0] - d * n_out[0], p[1] - d * n_out[1], p[2] - d * n_out[2]];
            if !s.is_inside(y) {
                return Err(Error::Geometry(format!(
                    "MFS source at ({:.4}, {:.4}, {:.4}) exits the enclosed volume",
                    y[0], y[1], y[2]
                )));
            }
            sources.push(y);
            normals.push([-n_out[0], -n_out[1], -n_out[2]]);
        }
    }
    for i in 0..sources.len() {
        for j in i + 1..sources.len() {
            if dist(sources[i], sources[j]) < 1e-12 {
                return Err(Error::Geometry(format!("MFS sources {i} and {j} collide")));
            }
        }
    }

    let m = n_u * n_v;
    Ok(Discretization {
        colloc,
        colloc_params: params,
        panel_of: vec![0; m],
        weights: vec![du * dv; m],
        mfs_sources: sources,
        inward_normals: normals,
        d_local: vec![d; mu * mv],
        corner_params: Vec::new(),
    })
}

/// Quasi-uniform points on the unit sphere via the Fibonacci spiral.
pub fn fibonacci_sphere(p_count: usize) -> Vec<[f64; 3]> {
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    (0..p_count)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / p_count as f64;
            let rho = (1.0 - z * z).sqrt();
            let th = golden_angle * i as f64;
            [rho * th.cos(), rho * th.sin(), z]
        })
        .collect()
}

/// Proxy sphere centered at the collocation centroid with Fibonacci-spiral
/// points; radius = radius_factor x circumscribed radius.
pub fn build_proxy_sphere(
    disc: &Discretization,
    radius_factor: f64,
    p_count: usize,
) -> Result<ProxySurface> {
    if !(radius_factor > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "proxy radius factor must exceed 1, got {radius_factor}"
        )));
    }
    if p_count < 32 {
        return Err(Error::InvalidArgument(format!(
            "need at least 32 proxy points on a sphere, got {p_count}"
        )));
    }
    let m = disc.n_colloc() as f64;
    let mut center = [0.0, 0.0, 0.0];
    for p in &disc.colloc {
        for k in 0..3 {
            center[k] += p[k] / m;
        }
    }
    let rmax = disc.colloc.iter().map(|p| dist(*p, center)).fold(0.0f64, f64::max);
    let radius = radius_factor * rmax;
    let points = fibonacci_sphere(p_count)
        .into_iter()
        .map(|q| {
            [
                center[0] + radius * q[0],
                center[1] + radius * q[1],
                center[2] + radius * q[2],
            ]
        })
        .collect();
    Ok(ProxySurface { points, center, radius })
}
