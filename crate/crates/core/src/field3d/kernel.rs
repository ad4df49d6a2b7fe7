//! Coulomb interaction of uniformly charged axis-aligned rectangles.
//!
//! `face_pair_integral` returns `∫_A ∫_B dA dA' / |r - r'|` for two cell faces
//! of a lattice with spacings `h`. Close pairs use the closed-form fourth
//! antiderivatives of `1/R` (Newell's `f` and `g`); distant pairs use tensor
//! Gauss-Legendre rules on both faces.

use std::f64::consts::PI;

use crate::quadrature::gauss_legendre;

/// Antiderivative with `∂²/∂y² ∂²/∂z² f = 1/R`.
pub fn newell_f(x: f64, y: f64, z: f64) -> f64 {
    let (x2, y2, z2) = (x * x, y * y, z * z);
    let r = (x2 + y2 + z2).sqrt();
    if r == 0.0 {
        return 0.0;
    }
    let mut s = (2.0 * x2 - y2 - z2) * r / 6.0;
    let c = 0.5 * y * (z2 - x2);
    if c != 0.0 {
        s += c * (y / (x2 + z2).sqrt()).asinh();
    }
    let c = 0.5 * z * (y2 - x2);
    if c != 0.0 {
        s += c * (z / (x2 + y2).sqrt()).asinh();
    }
    let c = x * y * z;
    if c != 0.0 {
        s -= c * (y * z / (x * r)).atan();
    }
    s
}

/// Antiderivative with `∂/∂x ∂/∂y ∂²/∂z² g = 1/R`.
pub fn newell_g(x: f64, y: f64, z: f64) -> f64 {
    let (x2, y2, z2) = (x * x, y * y, z * z);
    let r = (x2 + y2 + z2).sqrt();
    if r == 0.0 {
        return 0.0;
    }
    let mut s = -x * y * r / 3.0;
    let c = x * y * z;
    if c != 0.0 {
        s += c * (z / (x2 + y2).sqrt()).asinh();
    }
    let c = y * (3.0 * z2 - y2) / 6.0;
    if c != 0.0 {
        s += c * (x / (y2 + z2).sqrt()).asinh();
    }
    let c = x * (3.0 * z2 - x2) / 6.0;
    if c != 0.0 {
        s += c * (y / (x2 + z2).sqrt()).asinh();
    }
    let c = z * z2 / 6.0;
    if c != 0.0 {
        s -= c * (x * y / (z * r)).atan();
    }
    let c = 0.5 * z * y2;
    if c != 0.0 {
        s -= c * (x * z / (y * r)).atan();
    }
    let c = 0.5 * z * x2;
    if c != 0.0 {
        s -= c * (y * z / (x * r)).atan();
    }
    s
}

const SECOND_DIFF: [(f64, f64); 3] = [(-1.0, 1.0), (0.0, -2.0), (1.0, 1.0)];

/// The two axes other than `k`, in increasing order.
pub(crate) fn in_plane(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn exact(ka: usize, kb: usize, d: [f64; 3], h: [f64; 3]) -> f64 {
    if ka == kb {
        let (u, v) = in_plane(ka);
        let mut s = 0.0;
        for (p, cp) in SECOND_DIFF {
            for (q, cq) in SECOND_DIFF {
                s += cp * cq * newell_f(d[ka], d[u] + p * h[u], d[v] + q * h[v]);
            }
        }
        s
    } else {
        let g = 3 - ka - kb;
        let mut s = 0.0;
        for sx in [-1.0, 1.0] {
            for sy in [-1.0, 1.0] {
                for (q, cq) in SECOND_DIFF {
                    s += sx * sy * cq * newell_g(d[ka] + 0.5 * sx * h[ka], d[kb] + 0.5 * sy * h[kb], d[g] + q * h[g]);
                }
            }
        }
        s
    }
}

/// Tensor rule with `n x n` points on each face.
fn gauss(ka: usize, kb: usize, d: [f64; 3], h: [f64; 3], n: usize) -> f64 {
    let (x, w) = gauss_legendre(n);
    let face_points = |k: usize, center: [f64; 3]| {
        let (u, v) = in_plane(k);
        let mut pts = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut p = center;
                p[u] += 0.5 * h[u] * x[i];
                p[v] += 0.5 * h[v] * x[j];
                pts.push((p, 0.25 * w[i] * w[j]));
            }
        }
        pts
    };
    let a = face_points(ka, [0.0; 3]);
    let b = face_points(kb, d);
    let mut s = 0.0;
    for (pa, wa) in &a {
        for (pb, wb) in &b {
            let r = ((pb[0] - pa[0]).powi(2) + (pb[1] - pa[1]).powi(2) + (pb[2] - pa[2]).powi(2)).sqrt();
            s += wa * wb / r;
        }
    }
    let area = |k: usize| {
        let (u, v) = in_plane(k);
        h[u] * h[v]
    };
    s * area(ka) * area(kb)
}

/// `∬ 1/|r - r'|` between a face of kind `ka` centred at the origin and a
/// face of kind `kb` centred at `d` (kind = index of the normal axis).
pub fn face_pair_integral(ka: usize, kb: usize, d: [f64; 3], h: [f64; 3]) -> f64 {
    let dist = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    let extent = {
        let (u, v) = in_plane(ka);
        let (p, q) = in_plane(kb);
        h[u].max(h[v]).max(h[p]).max(h[q])
    };
    if dist < 4.0 * extent {
        exact(ka, kb, d, h)
    } else if dist < 16.0 * extent {
        gauss(ka, kb, d, h, 4)
    } else {
        gauss(ka, kb, d, h, 2)
    }
}

/// Interaction weights `W = (1/4pi) ∬ 1/r` for every ordered pair of face
/// kinds and every lattice offset of an `n = [nx, ny, nz]` cell grid.
///
/// A face of kind `k` with lattice index `p` sits at `p_k h_k` along its
/// normal and at `(p_j + 1/2) h_j` along the other axes. Offsets range over
/// `-n_j ..= n_j`, so the table index of a pair is linear in the two faces'
/// packed indices (see [`KernelTables::pack`]).
#[derive(Debug, Clone)]
pub struct KernelTables {
    pub n: [usize; 3],
    pub h: [f64; 3],
    /// `tables[ka * 3 + kb]`.
    tables: Vec<Vec<f64>>,
    strides: [usize; 2],
    center: usize,
}

impl KernelTables {
    pub fn build(n: [usize; 3], h: [f64; 3]) -> Self {
        use rayon::prelude::*;
        let dims = [2 * n[0] + 1, 2 * n[1] + 1, 2 * n[2] + 1];
        let size = dims[0] * dims[1] * dims[2];
        let tables: Vec<Vec<f64>> = (0..9)
            .map(|pair| {
                let (ka, kb) = (pair / 3, pair % 3);
                (0..size)
                    .into_par_iter()
                    .map(|idx| {
                        let di = (idx / (dims[1] * dims[2])) as f64 - n[0] as f64;
                        let dj = ((idx / dims[2]) % dims[1]) as f64 - n[1] as f64;
                        let dk = (idx % dims[2]) as f64 - n[2] as f64;
                        let mut d = [di * h[0], dj * h[1], dk * h[2]];
                        for axis in 0..3 {
                            let shift_a = if axis == ka { 0.0 } else { 0.5 };
                            let shift_b = if axis == kb { 0.0 } else { 0.5 };
                            d[axis] += (shift_b - shift_a) * h[axis];
                        }
                        face_pair_integral(ka, kb, d, h) / (4.0 * PI)
                    })
                    .collect()
            })
            .collect();
        let strides = [dims[1] * dims[2], dims[2]];
        let center = n[0] * strides[0] + n[1] * strides[1] + n[2];
        KernelTables {
            n,
            h,
            tables,
            strides,
            center,
        }
    }

    /// Packed face index; `table(ka, kb)[center + pack(b) - pack(a)]` is the
    /// weight between faces `a` and `b`.
    pub fn pack(&self, p: [usize; 3]) -> usize {
        p[0] * self.strides[0] + p[1] * self.strides[1] + p[2]
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn table(&self, ka: usize, kb: usize) -> &[f64] {
        &self.tables[ka * 3 + kb]
    }

    /// Number of stored weights.
    pub fn len(&self) -> usize {
        self.tables.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
