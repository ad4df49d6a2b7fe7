//! Planar cross sections of the wire and their discretizations.
//!
//! A [`CrossSection`] is one of four analytic families (disc, ellipse,
//! rectangle, polygon), optionally rotated about the origin. The boundary is
//! parameterized counterclockwise by `t in [0, 1)`; smooth families use the
//! angular parameter, polygons are arclength-proportional.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub type Point2 = [f64; 2];

/// Default number of boundary samples used for area and perimeter.
pub const DEFAULT_RESOLUTION: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Disc {
        radius: f64,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
    /// Half-widths `a` (along y) and `b` (along z).
    Rectangle {
        a: f64,
        b: f64,
    },
    /// Counterclockwise simple polygon.
    Polygon {
        vertices: Vec<Point2>,
    },
}

impl Shape {
    pub fn family(&self) -> &'static str {
        match self {
            Shape::Disc { .. } => "disc",
            Shape::Ellipse { .. } => "ellipse",
            Shape::Rectangle { .. } => "rectangle",
            Shape::Polygon { .. } => "polygon",
        }
    }

    fn is_smooth(&self) -> bool {
        matches!(self, Shape::Disc { .. } | Shape::Ellipse { .. })
    }

    fn semi_axes(&self) -> (f64, f64) {
        match *self {
            Shape::Disc { radius } => (radius, radius),
            Shape::Ellipse { a, b } => (a, b),
            _ => unreachable!("semi axes of a polygonal shape"),
        }
    }

    fn polygon_vertices(&self) -> Vec<Point2> {
        match self {
            Shape::Rectangle { a, b } => vec![[*a, -*b], [*a, *b], [-*a, *b], [-*a, -*b]],
            Shape::Polygon { vertices } => vertices.clone(),
            _ => unreachable!("vertices of a smooth shape"),
        }
    }
}

/// A boundary quadrature node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryNode {
    pub point: Point2,
    /// Outward unit normal `(n2, n3)`.
    pub normal: Point2,
    /// Arclength weight.
    pub weight: f64,
}

/// A bounded planar cross section `omega`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSection {
    shape: Shape,
    rotation: f64,
    resolution: usize,
    /// Rotated polygon vertices (empty for smooth families).
    vertices: Vec<Point2>,
    area: f64,
    perimeter: f64,
    diameter: f64,
}

fn rotate(p: Point2, angle: f64) -> Point2 {
    if angle == 0.0 {
        return p;
    }
    let (s, c) = angle.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

fn positive(param: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::geometry(param, format!("must be positive and finite, got {v}")))
    }
}

fn segments_cross(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let orient = |a: Point2, b: Point2, c: Point2| (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let on_segment = |a: Point2, b: Point2, c: Point2| {
        c[0] >= a[0].min(b[0]) && c[0] <= a[0].max(b[0]) && c[1] >= a[1].min(b[1]) && c[1] <= a[1].max(b[1])
    };
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

fn shoelace(v: &[Point2]) -> f64 {
    let n = v.len();
    0.5 * (0..n)
        .map(|i| {
            let (p, q) = (v[i], v[(i + 1) % n]);
            p[0] * q[1] - q[0] * p[1]
        })
        .sum::<f64>()
}

fn validate_polygon(vertices: &[Point2]) -> Result<()> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::geometry("vertices", "a polygon needs at least three vertices"));
    }
    if vertices.iter().flatten().any(|c| !c.is_finite()) {
        return Err(Error::geometry("vertices", "coordinates must be finite"));
    }
    for i in 0..n {
        let (p, q) = (vertices[i], vertices[(i + 1) % n]);
        if (q[0] - p[0]).hypot(q[1] - p[1]) == 0.0 {
            return Err(Error::geometry("vertices", format!("edge {i} has zero length")));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            // adjacent edges share a vertex
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            if segments_cross(vertices[i], vertices[(i + 1) % n], vertices[j], vertices[(j + 1) % n]) {
                return Err(Error::geometry(
                    "vertices",
                    format!("polygon is self-intersecting (edges {i} and {j})"),
                ));
            }
        }
    }
    let area = shoelace(vertices);
    if area <= 0.0 {
        return Err(Error::geometry(
            "vertices",
            if area == 0.0 {
                "polygon has zero area".to_string()
            } else {
                "polygon must be counterclockwise".to_string()
            },
        ));
    }
    Ok(())
}

impl CrossSection {
    pub fn new(shape: Shape) -> Result<Self> {
        Self::with_options(shape, 0.0, DEFAULT_RESOLUTION)
    }

    pub fn disc(radius: f64) -> Result<Self> {
        Self::new(Shape::Disc { radius })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        Self::new(Shape::Ellipse { a, b })
    }

    /// Rectangle `[-a, a] x [-b, b]` (half-widths).
    pub fn rectangle(a: f64, b: f64) -> Result<Self> {
        Self::new(Shape::Rectangle { a, b })
    }

    pub fn polygon(vertices: Vec<Point2>) -> Result<Self> {
        Self::new(Shape::Polygon { vertices })
    }

    /// Builds a cross section, rotated counterclockwise by `rotation` about the
    /// origin, whose area and perimeter are computed from `resolution`
    /// boundary samples.
    pub fn with_options(shape: Shape, rotation: f64, resolution: usize) -> Result<Self> {
        match &shape {
            Shape::Disc { radius } => positive("r", *radius)?,
            Shape::Ellipse { a, b } | Shape::Rectangle { a, b } => {
                positive("a", *a)?;
                positive("b", *b)?;
            }
            Shape::Polygon { vertices } => validate_polygon(vertices)?,
        }
        if !rotation.is_finite() {
            return Err(Error::geometry("rotation", "must be finite"));
        }
        if resolution < 8 {
            return Err(Error::geometry("resolution", "needs at least 8 boundary samples"));
        }
        let vertices = if shape.is_smooth() {
            Vec::new()
        } else {
            shape
                .polygon_vertices()
                .into_iter()
                .map(|p| rotate(p, rotation))
                .collect()
        };
        let mut cs = CrossSection {
            shape,
            rotation,
            resolution,
            vertices,
            area: 0.0,
            perimeter: 0.0,
            diameter: 0.0,
        };
        cs.area = cs.green_area(resolution);
        cs.perimeter = cs.boundary_quadrature(resolution).iter().map(|n| n.weight).sum();
        cs.diameter = match cs.shape {
            Shape::Disc { radius } => 2.0 * radius,
            Shape::Ellipse { a, b } => 2.0 * a.max(b),
            _ => {
                let v = &cs.vertices;
                let mut d: f64 = 0.0;
                for i in 0..v.len() {
                    for j in (i + 1)..v.len() {
                        d = d.max((v[i][0] - v[j][0]).hypot(v[i][1] - v[j][1]));
                    }
                }
                d
            }
        };
        Ok(cs)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// `|omega|` from the Green/shoelace formula.
    pub fn area(&self) -> f64 {
        self.area
    }

    /// Closed-form area, when the family has one.
    pub fn analytic_area(&self) -> Option<f64> {
        match self.shape {
            Shape::Disc { radius } => Some(PI * radius * radius),
            Shape::Ellipse { a, b } => Some(PI * a * b),
            Shape::Rectangle { a, b } => Some(4.0 * a * b),
            Shape::Polygon { .. } => None,
        }
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Same family rotated by an additional `angle`.
    pub fn rotated(&self, angle: f64) -> Result<Self> {
        Self::with_options(self.shape.clone(), self.rotation + angle, self.resolution)
    }

    /// Same shape scaled by `factor` about the origin.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        positive("scale", factor)?;
        let shape = match &self.shape {
            Shape::Disc { radius } => Shape::Disc {
                radius: radius * factor,
            },
            Shape::Ellipse { a, b } => Shape::Ellipse {
                a: a * factor,
                b: b * factor,
            },
            Shape::Rectangle { a, b } => Shape::Rectangle {
                a: a * factor,
                b: b * factor,
            },
            Shape::Polygon { vertices } => Shape::Polygon {
                vertices: vertices.iter().map(|p| [p[0] * factor, p[1] * factor]).collect(),
            },
        };
        Self::with_options(shape, self.rotation, self.resolution)
    }

    pub fn with_resolution(&self, resolution: usize) -> Result<Self> {
        Self::with_options(self.shape.clone(), self.rotation, resolution)
    }

    /// Boundary point `gamma(t)`.
    pub fn point(&self, t: f64) -> Point2 {
        let t = t.rem_euclid(1.0);
        if self.shape.is_smooth() {
            let (a, b) = self.shape.semi_axes();
            let (s, c) = (2.0 * PI * t).sin_cos();
            rotate([a * c, b * s], self.rotation)
        } else {
            let (edge, frac) = self.locate_on_polygon(t);
            let v = &self.vertices;
            let (p, q) = (v[edge], v[(edge + 1) % v.len()]);
            [p[0] + frac * (q[0] - p[0]), p[1] + frac * (q[1] - p[1])]
        }
    }

    /// Derivative `gamma'(t)`.
    pub fn tangent(&self, t: f64) -> Point2 {
        let t = t.rem_euclid(1.0);
        if self.shape.is_smooth() {
            let (a, b) = self.shape.semi_axes();
            let (s, c) = (2.0 * PI * t).sin_cos();
            rotate([-2.0 * PI * a * s, 2.0 * PI * b * c], self.rotation)
        } else {
            let (edge, _) = self.locate_on_polygon(t);
            let v = &self.vertices;
            let (p, q) = (v[edge], v[(edge + 1) % v.len()]);
            let len = (q[0] - p[0]).hypot(q[1] - p[1]);
            let scale = self.perimeter_exact() / len;
            [(q[0] - p[0]) * scale, (q[1] - p[1]) * scale]
        }
    }

    /// Outward unit normal at `gamma(t)`.
    pub fn normal(&self, t: f64) -> Point2 {
        let d = self.tangent(t);
        let len = d[0].hypot(d[1]);
        [d[1] / len, -d[0] / len]
    }

    fn perimeter_exact(&self) -> f64 {
        let v = &self.vertices;
        (0..v.len())
            .map(|i| {
                let (p, q) = (v[i], v[(i + 1) % v.len()]);
                (q[0] - p[0]).hypot(q[1] - p[1])
            })
            .sum()
    }

    fn locate_on_polygon(&self, t: f64) -> (usize, f64) {
        let v = &self.vertices;
        let total = self.perimeter_exact();
        let mut s = t * total;
        for i in 0..v.len() {
            let (p, q) = (v[i], v[(i + 1) % v.len()]);
            let len = (q[0] - p[0]).hypot(q[1] - p[1]);
            if s < len || i == v.len() - 1 {
                return (i, (s / len).min(1.0));
            }
            s -= len;
        }
        unreachable!()
    }

    fn green_area(&self, n: usize) -> f64 {
        if self.shape.is_smooth() {
            // periodic trapezoid on 1/2 (x y' - y x')
            (0..n)
                .map(|i| {
                    let t = (i as f64 + 0.5) / n as f64;
                    let p = self.point(t);
                    let d = self.tangent(t);
                    0.5 * (p[0] * d[1] - p[1] * d[0])
                })
                .sum::<f64>()
                / n as f64
        } else {
            shoelace(&self.vertices)
        }
    }

    /// Boundary quadrature with `n_points` nodes.
    ///
    /// Smooth families use the periodic midpoint rule in `t`. Polygons put
    /// `round(n * len / perimeter)` midpoint nodes on each edge, so no node
    /// sits on a corner and the weights sum exactly to the perimeter.
    pub fn boundary_quadrature(&self, n_points: usize) -> Vec<BoundaryNode> {
        let n = n_points.max(8);
        if self.shape.is_smooth() {
            (0..n)
                .map(|i| {
                    let t = (i as f64 + 0.5) / n as f64;
                    let d = self.tangent(t);
                    let speed = d[0].hypot(d[1]);
                    BoundaryNode {
                        point: self.point(t),
                        normal: [d[1] / speed, -d[0] / speed],
                        weight: speed / n as f64,
                    }
                })
                .collect()
        } else {
            let v = &self.vertices;
            let total = self.perimeter_exact();
            let mut nodes = Vec::with_capacity(n + v.len());
            for i in 0..v.len() {
                let (p, q) = (v[i], v[(i + 1) % v.len()]);
                let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
                let len = dx.hypot(dy);
                let count = ((n as f64 * len / total).round() as usize).max(1);
                let w = len / count as f64;
                let normal = [dy / len, -dx / len];
                for k in 0..count {
                    let f = (k as f64 + 0.5) / count as f64;
                    nodes.push(BoundaryNode {
                        point: [p[0] + f * dx, p[1] + f * dy],
                        normal,
                        weight: w,
                    });
                }
            }
            nodes
        }
    }

    /// Strict interior test.
    pub fn contains(&self, p: Point2) -> bool {
        match self.shape {
            Shape::Disc { radius } => p[0].hypot(p[1]) < radius,
            Shape::Ellipse { a, b } => {
                let q = rotate(p, -self.rotation);
                (q[0] / a).powi(2) + (q[1] / b).powi(2) < 1.0
            }
            Shape::Rectangle { a, b } if self.rotation == 0.0 => p[0].abs() < a && p[1].abs() < b,
            _ => {
                // crossing number
                let v = &self.vertices;
                let mut inside = false;
                let mut j = v.len() - 1;
                for i in 0..v.len() {
                    let (vi, vj) = (v[i], v[j]);
                    if (vi[1] > p[1]) != (vj[1] > p[1]) {
                        let x = vj[0] + (p[1] - vj[1]) * (vi[0] - vj[0]) / (vi[1] - vj[1]);
                        if p[0] < x {
                            inside = !inside;
                        }
                    }
                    j = i;
                }
                inside
            }
        }
    }

    /// Axis-aligned bounding box `([ymin, zmin], [ymax, zmax])`.
    pub fn bounding_box(&self) -> (Point2, Point2) {
        if self.shape.is_smooth() {
            let (a, b) = self.shape.semi_axes();
            let (s, c) = self.rotation.sin_cos();
            let hy = (a * a * c * c + b * b * s * s).sqrt();
            let hz = (a * a * s * s + b * b * c * c).sqrt();
            ([-hy, -hz], [hy, hz])
        } else {
            let mut lo = [f64::INFINITY; 2];
            let mut hi = [f64::NEG_INFINITY; 2];
            for p in &self.vertices {
                for k in 0..2 {
                    lo[k] = lo[k].min(p[k]);
                    hi[k] = hi[k].max(p[k]);
                }
            }
            (lo, hi)
        }
    }

    /// Square-cell interior grid with cell side `h` covering the bounding box.
    pub fn interior_grid(&self, h: f64) -> InteriorGrid {
        let (lo, hi) = self.bounding_box();
        let ny = ((hi[0] - lo[0]) / h).ceil().max(1.0) as usize;
        let nz = ((hi[1] - lo[1]) / h).ceil().max(1.0) as usize;
        let origin = [
            0.5 * (lo[0] + hi[0]) - 0.5 * ny as f64 * h,
            0.5 * (lo[1] + hi[1]) - 0.5 * nz as f64 * h,
        ];
        InteriorGrid::build(self, origin, [h, h], ny, nz)
    }

    /// Interior grid with `ny x nz` cells exactly covering the bounding box.
    pub fn interior_grid_cells(&self, ny: usize, nz: usize) -> InteriorGrid {
        let (lo, hi) = self.bounding_box();
        let h = [(hi[0] - lo[0]) / ny as f64, (hi[1] - lo[1]) / nz as f64];
        InteriorGrid::build(self, lo, h, ny, nz)
    }

    /// Plain-text `key = value` block.
    pub fn to_key_value(&self) -> String {
        let mut out = format!("shape = {}\n", self.shape.family());
        match &self.shape {
            Shape::Disc { radius } => out += &format!("r = {radius}\n"),
            Shape::Ellipse { a, b } | Shape::Rectangle { a, b } => out += &format!("a = {a}\nb = {b}\n"),
            Shape::Polygon { vertices } => {
                let v: Vec<String> = vertices.iter().map(|p| format!("{},{}", p[0], p[1])).collect();
                out += &format!("vertices = {}\n", v.join(";"));
            }
        }
        out += &format!("rotation = {}\nresolution = {}\n", self.rotation, self.resolution);
        out
    }

    /// Parses a block written by [`CrossSection::to_key_value`].
    pub fn from_key_value(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`, got `{line}`", lineno + 1)))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Self::from_map(&map)
    }

    /// Builds a cross section from geometry keys (`shape`, `r`, `a`, `b`,
    /// `vertices`, `rotation`, `resolution`). Keys not relevant to the chosen
    /// family are rejected.
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let shape_name = map
            .get("shape")
            .ok_or_else(|| Error::Config("missing required parameter `shape`".into()))?;
        let num = |key: &str| -> Result<f64> {
            let raw = map
                .get(key)
                .ok_or_else(|| Error::geometry(key, format!("required for shape `{shape_name}`")))?;
            raw.parse::<f64>()
                .map_err(|_| Error::geometry(key, format!("malformed number `{raw}`")))
        };
        let (shape, allowed): (Shape, &[&str]) = match shape_name.as_str() {
            "disc" => (Shape::Disc { radius: num("r")? }, &["r"]),
            "ellipse" => (
                Shape::Ellipse {
                    a: num("a")?,
                    b: num("b")?,
                },
                &["a", "b"],
            ),
            "rectangle" => (
                Shape::Rectangle {
                    a: num("a")?,
                    b: num("b")?,
                },
                &["a", "b"],
            ),
            "polygon" => {
                let raw = map
                    .get("vertices")
                    .ok_or_else(|| Error::geometry("vertices", "required for shape `polygon`"))?;
                let mut vertices = Vec::new();
                for pair in raw.split(';').filter(|s| !s.trim().is_empty()) {
                    let (x, y) = pair
                        .split_once(',')
                        .ok_or_else(|| Error::geometry("vertices", format!("malformed vertex `{pair}`")))?;
                    let parse = |s: &str| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::geometry("vertices", format!("malformed number `{s}`")))
                    };
                    vertices.push([parse(x)?, parse(y)?]);
                }
                (Shape::Polygon { vertices }, &["vertices"])
            }
            other => {
                return Err(Error::geometry(
                    "shape",
                    format!("unknown family `{other}` (expected disc, ellipse, rectangle or polygon)"),
                ))
            }
        };
        for key in map.keys() {
            let generic = ["shape", "rotation", "resolution"];
            if !generic.contains(&key.as_str()) && !allowed.contains(&key.as_str()) {
                return Err(Error::Config(format!("unknown key `{key}` for shape `{shape_name}`")));
            }
        }
        let rotation = match map.get("rotation") {
            Some(raw) => raw
                .parse::<f64>()
                .map_err(|_| Error::geometry("rotation", format!("malformed number `{raw}`")))?,
            None => 0.0,
        };
        let resolution = match map.get("resolution") {
            Some(raw) => raw
                .parse::<usize>()
                .map_err(|_| Error::geometry("resolution", format!("malformed integer `{raw}`")))?,
            None => DEFAULT_RESOLUTION,
        };
        Self::with_options(shape, rotation, resolution)
    }
}

/// Cell-centered lattice over the bounding box with an inside mask.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorGrid {
    /// Lower-left corner of the lattice.
    pub origin: Point2,
    /// Cell sides `(hy, hz)`.
    pub h: [f64; 2],
    pub ny: usize,
    pub nz: usize,
    /// `mask[j * nz + k]` is true when the center of cell `(j, k)` lies in omega.
    pub mask: Vec<bool>,
}

impl InteriorGrid {
    fn build(cs: &CrossSection, origin: Point2, h: [f64; 2], ny: usize, nz: usize) -> Self {
        let mut mask = Vec::with_capacity(ny * nz);
        for j in 0..ny {
            for k in 0..nz {
                let c = [origin[0] + (j as f64 + 0.5) * h[0], origin[1] + (k as f64 + 0.5) * h[1]];
                mask.push(cs.contains(c));
            }
        }
        InteriorGrid {
            origin,
            h,
            ny,
            nz,
            mask,
        }
    }

    pub fn cell_area(&self) -> f64 {
        self.h[0] * self.h[1]
    }

    pub fn center(&self, j: usize, k: usize) -> Point2 {
        [
            self.origin[0] + (j as f64 + 0.5) * self.h[0],
            self.origin[1] + (k as f64 + 0.5) * self.h[1],
        ]
    }

    pub fn inside(&self, j: usize, k: usize) -> bool {
        self.mask[j * self.nz + k]
    }

    pub fn inside_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Area of the masked cells.
    pub fn area(&self) -> f64 {
        self.inside_count() as f64 * self.cell_area()
    }
}

/// The wire `[x0, x1] x (scale * omega)` truncated for numerics.
#[derive(Debug, Clone, PartialEq)]
pub struct WireDomain {
    pub cross_section: CrossSection,
    pub scale: f64,
    pub x_window: (f64, f64),
    pub axial_cells: usize,
    /// Cells across the bounding box of the scaled cross section.
    pub transverse_cells: (usize, usize),
}

impl WireDomain {
    pub fn new(
        cross_section: CrossSection,
        scale: f64,
        x_window: (f64, f64),
        axial_cells: usize,
        transverse_cells: (usize, usize),
    ) -> Result<Self> {
        positive("scale", scale)?;
        if !(x_window.0 < x_window.1) || !x_window.0.is_finite() || !x_window.1.is_finite() {
            return Err(Error::geometry(
                "x_window",
                format!("need x0 < x1, got [{}, {}]", x_window.0, x_window.1),
            ));
        }
        if axial_cells < 2 {
            return Err(Error::geometry("nx", "need at least two axial cells"));
        }
        if transverse_cells.0 == 0 || transverse_cells.1 == 0 {
            return Err(Error::geometry("ny/nz", "transverse cell counts must be positive"));
        }
        Ok(WireDomain {
            cross_section,
            scale,
            x_window,
            axial_cells,
            transverse_cells,
        })
    }

    /// The physical cross section `scale * omega`.
    pub fn scaled_section(&self) -> CrossSection {
        self.cross_section
            .scaled(self.scale)
            .expect("scale validated at construction")
    }

    pub fn diameter(&self) -> f64 {
        self.scale * self.cross_section.diameter()
    }

    pub fn hx(&self) -> f64 {
        (self.x_window.1 - self.x_window.0) / self.axial_cells as f64
    }
}
