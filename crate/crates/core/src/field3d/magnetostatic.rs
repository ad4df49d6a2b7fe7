//! Magnetostatic energy of cellwise-constant fields.
//!
//! A cellwise-constant `m` has no volume charge; its charge sits on cell
//! faces with density `σ = m_lo,k - m_hi,k` (the jump of the normal
//! component, cells outside the wire counting as zero). The energy
//! `∫ |∇u|^2 = Σ_f Σ_g σ_f σ_g W_fg` is exact for the discrete field up to
//! the accuracy of the face-pair weights. Faces at the two window ends are
//! left out: they carry the jump to the tails, whose charge the semi-infinite
//! continuation cancels.

use rayon::prelude::*;

use super::kernel::KernelTables;
use super::{exchange_energy, EnergyReport, Field3D, Grid3};
use crate::error::{Error, Result};
use crate::quadrature::CompensatedSum;
use crate::Vec3;

#[derive(Debug, Clone, Copy)]
struct Face {
    kind: u8,
    packed: usize,
    lo: Option<u32>,
    hi: Option<u32>,
}

/// Charge-carrying faces of a grid plus their interaction tables.
#[derive(Debug, Clone)]
pub struct Magnetostatics {
    tables: KernelTables,
    faces: Vec<Face>,
    /// `cell_faces[c][k] = (face below, face above)` along axis `k`.
    cell_faces: Vec<[(Option<u32>, Option<u32>); 3]>,
}

impl Magnetostatics {
    pub fn new(grid: &Grid3, max_charges: usize) -> Result<Self> {
        let [nx, ny, nz] = grid.n;
        let cell =
            |i: usize, j: usize, k: usize| -> Option<u32> { grid.inside(j, k).then(|| grid.index(i, j, k) as u32) };
        // count first so that oversized grids fail before any table is built
        let mut count = 0;
        for j in 0..ny {
            for k in 0..nz {
                if grid.inside(j, k) {
                    count += nx - 1;
                }
            }
        }
        for jj in 0..=ny {
            for k in 0..nz {
                let lo = jj > 0 && grid.inside(jj - 1, k);
                let hi = jj < ny && grid.inside(jj, k);
                if lo || hi {
                    count += nx;
                }
            }
        }
        for j in 0..ny {
            for kk in 0..=nz {
                let lo = kk > 0 && grid.inside(j, kk - 1);
                let hi = kk < nz && grid.inside(j, kk);
                if lo || hi {
                    count += nx;
                }
            }
        }
        if count > max_charges {
            return Err(Error::Capacity {
                charges: count,
                capacity: max_charges,
            });
        }
        let tables = KernelTables::build(grid.n, grid.h);
        let mut faces = Vec::with_capacity(count);
        let mut cell_faces = vec![[(None, None); 3]; grid.len()];
        let mut push = |kind: usize, p: [usize; 3], lo: Option<u32>, hi: Option<u32>, faces: &mut Vec<Face>| {
            let id = faces.len() as u32;
            faces.push(Face {
                kind: kind as u8,
                packed: tables.pack(p),
                lo,
                hi,
            });
            if let Some(c) = lo {
                cell_faces[c as usize][kind].1 = Some(id);
            }
            if let Some(c) = hi {
                cell_faces[c as usize][kind].0 = Some(id);
            }
        };
        for i in 1..nx {
            for j in 0..ny {
                for k in 0..nz {
                    if grid.inside(j, k) {
                        push(0, [i, j, k], cell(i - 1, j, k), cell(i, j, k), &mut faces);
                    }
                }
            }
        }
        for i in 0..nx {
            for jj in 0..=ny {
                for k in 0..nz {
                    let lo = if jj > 0 { cell(i, jj - 1, k) } else { None };
                    let hi = if jj < ny { cell(i, jj, k) } else { None };
                    if lo.is_some() || hi.is_some() {
                        push(1, [i, jj, k], lo, hi, &mut faces);
                    }
                }
            }
        }
        for i in 0..nx {
            for j in 0..ny {
                for kk in 0..=nz {
                    let lo = if kk > 0 { cell(i, j, kk - 1) } else { None };
                    let hi = if kk < nz { cell(i, j, kk) } else { None };
                    if lo.is_some() || hi.is_some() {
                        push(2, [i, j, kk], lo, hi, &mut faces);
                    }
                }
            }
        }
        debug_assert_eq!(faces.len(), count);
        Ok(Magnetostatics {
            tables,
            faces,
            cell_faces,
        })
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Face charges `σ_f`.
    pub fn charges(&self, values: &[Vec3]) -> Vec<f64> {
        self.faces
            .iter()
            .map(|f| {
                let k = f.kind as usize;
                let lo = f.lo.map_or(0.0, |c| values[c as usize][k]);
                let hi = f.hi.map_or(0.0, |c| values[c as usize][k]);
                lo - hi
            })
            .collect()
    }

    fn sources(&self, sigma: &[f64]) -> [Vec<(usize, f64)>; 3] {
        let mut out: [Vec<(usize, f64)>; 3] = Default::default();
        for (f, &s) in self.faces.iter().zip(sigma) {
            if s != 0.0 {
                out[f.kind as usize].push((f.packed, s));
            }
        }
        out
    }

    fn potential_at(&self, target: &Face, sources: &[Vec<(usize, f64)>; 3]) -> f64 {
        let ka = target.kind as usize;
        let base = self.tables.center() - target.packed;
        let mut phi = 0.0;
        for (kb, list) in sources.iter().enumerate() {
            let table = self.tables.table(ka, kb);
            for &(packed, s) in list {
                phi += table[base + packed] * s;
            }
        }
        phi
    }

    /// Potentials `φ_f = Σ_g W_fg σ_g` at every face. Each target is summed
    /// sequentially, so the result does not depend on the thread count.
    pub fn potentials(&self, sigma: &[f64]) -> Vec<f64> {
        let sources = self.sources(sigma);
        self.faces.par_iter().map(|f| self.potential_at(f, &sources)).collect()
    }

    fn energy_from(&self, sigma: &[f64]) -> f64 {
        let sources = self.sources(sigma);
        let targets: Vec<usize> = (0..self.faces.len()).filter(|&i| sigma[i] != 0.0).collect();
        let phi: Vec<f64> = targets
            .par_iter()
            .map(|&i| self.potential_at(&self.faces[i], &sources))
            .collect();
        targets
            .iter()
            .zip(&phi)
            .map(|(&i, p)| sigma[i] * p)
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn energy(&self, values: &[Vec3]) -> Result<f64> {
        Ok(self.energy_from(&self.charges(values)))
    }

    /// Energy and its gradient `dE/dm_{c,k} = 2 (φ_above - φ_below)`.
    pub fn energy_and_gradient(&self, values: &[Vec3]) -> (f64, Vec<Vec3>) {
        let sigma = self.charges(values);
        let phi = self.potentials(&sigma);
        let energy = sigma
            .iter()
            .zip(&phi)
            .map(|(s, p)| s * p)
            .collect::<CompensatedSum>()
            .value();
        let grad = self
            .cell_faces
            .iter()
            .map(|cf| {
                let mut g = [0.0; 3];
                for k in 0..3 {
                    let above = cf[k].1.map_or(0.0, |f| phi[f as usize]);
                    let below = cf[k].0.map_or(0.0, |f| phi[f as usize]);
                    g[k] = 2.0 * (above - below);
                }
                g
            })
            .collect();
        (energy, grad)
    }

    pub fn report(&self, f: &Field3D) -> Result<EnergyReport> {
        let sigma = self.charges(f.values());
        let charges = sigma.iter().filter(|&&s| s != 0.0).count();
        let magnetostatic = self.energy_from(&sigma).max(0.0);
        let exchange = exchange_energy(f);
        Ok(EnergyReport {
            exchange,
            magnetostatic,
            total: exchange + magnetostatic,
            n: f.grid.n,
            h: f.grid.h,
            charges,
            method: "direct-sum",
        })
    }
}
