//! Closed oriented surfaces as simplicial chains, flat bundles over them from
//! a choice of side-pairing matrices, and a discrete `SL₂(ℝ)` holonomy for
//! genus `g ≥ 2` whose surface relation holds exactly over `ℚ`.
//!
//! The surface is the `4g`-gon with sides `4i ↔ 4i+2` and `4i+1 ↔ 4i+3`
//! glued reversed (the word `Π a_i b_i a_i⁻¹ b_i⁻¹`). Each side is cut into
//! three edges and the polygon is triangulated through a ring of interior
//! vertices around a central vertex, which keeps the complex simplicial.

use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix, RationalVector};
use crate::random;
use crate::simplicial::{FlatBundleComplex, Simplex, Transition};

/// Which copy of its vertex class a polygon point is: the class
/// representative is carried to it by the stated deck transformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Copy {
    Representative,
    /// The `k`-th polygon corner.
    Corner(usize),
    /// Image of the representative under the pairing of side `k`.
    Paired(usize),
}

#[derive(Clone, Debug)]
pub struct SurfaceTriangulation {
    pub genus: usize,
    pub vertex_count: usize,
    pub triangles: Vec<[usize; 3]>,
    copies: Vec<[Copy; 3]>,
}

fn partner(k: usize) -> usize {
    if k % 4 < 2 {
        k + 2
    } else {
        k - 2
    }
}

fn is_generator_side(k: usize) -> bool {
    k % 4 < 2
}

impl SurfaceTriangulation {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidBundle("genus must be at least 1".into()));
        }
        let sides = 4 * genus;
        let m = 3 * sides;
        let centre = 0;
        let ring = |j: usize| 1 + j % m;
        let corner = 1 + m;
        let mut next = corner + 1;
        let mut side_points = BTreeMap::new();
        for k in (0..sides).filter(|&k| is_generator_side(k)) {
            for j in 1..=2 {
                side_points.insert((k, j), next);
                next += 1;
            }
        }
        let boundary = |b: usize| -> (usize, Copy) {
            let b = b % m;
            let (k, j) = (b / 3, b % 3);
            if j == 0 {
                (corner, Copy::Corner(k))
            } else if is_generator_side(k) {
                (side_points[&(k, j)], Copy::Representative)
            } else {
                let k0 = partner(k);
                (side_points[&(k0, 3 - j)], Copy::Paired(k0))
            }
        };

        let rep = Copy::Representative;
        let mut triangles = Vec::with_capacity(3 * m);
        let mut copies = Vec::with_capacity(3 * m);
        for j in 0..m {
            let (b0, c0) = boundary(j);
            let (b1, c1) = boundary(j + 1);
            for (t, c) in [
                ([b0, b1, ring(j)], [c0, c1, rep]),
                ([b1, ring(j + 1), ring(j)], [c1, rep, rep]),
                ([centre, ring(j), ring(j + 1)], [rep, rep, rep]),
            ] {
                triangles.push(t);
                copies.push(c);
            }
        }
        Ok(Self {
            genus,
            vertex_count: next,
            triangles,
            copies,
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut edges = std::collections::BTreeSet::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        self.vertex_count as i64 - edges.len() as i64 + self.triangles.len() as i64
    }

    /// The flat bundle whose side pairings act by `gens = [a_0, b_0, a_1, …]`,
    /// with `g_xy = γ_x⁻¹ γ_y` for the deck transformations `γ` carrying
    /// class representatives to the copies in each triangle. Fails unless
    /// the generators satisfy the surface relation exactly.
    pub fn bundle(&self, gens: &[RationalMatrix], section: Vec<RationalVector>) -> Result<FlatBundleComplex> {
        if gens.len() != 2 * self.genus {
            return Err(Error::Arity {
                expected: 2 * self.genus,
                found: gens.len(),
            });
        }
        let n = gens[0].rows();
        let sides = 4 * self.genus;
        let inv = gens.iter().map(RationalMatrix::inverse).collect::<Result<Vec<_>>>()?;
        let pairing = |k: usize| -> &RationalMatrix {
            let h = k / 4;
            match k % 4 {
                0 => &gens[2 * h],
                1 => &gens[2 * h + 1],
                2 => &inv[2 * h],
                _ => &inv[2 * h + 1],
            }
        };

        // Corner k is γ_k(corner 0); the pairing of side k sends corner k to
        // corner partner(k)+1 and corner k+1 to corner partner(k).
        let mut corner: Vec<Option<RationalMatrix>> = vec![None; sides];
        corner[0] = Some(RationalMatrix::identity(n));
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            let gc = corner[c].clone().expect("queued corners are placed");
            for k in 0..sides {
                for (from, to) in [(k, (partner(k) + 1) % sides), ((k + 1) % sides, partner(k))] {
                    if from == c && corner[to].is_none() {
                        corner[to] = Some(pairing(k).mul(&gc));
                        queue.push_back(to);
                    }
                }
            }
        }
        let corner: Vec<RationalMatrix> = corner
            .into_iter()
            .map(|c| c.ok_or_else(|| Error::Internal("polygon corners are not all identified".into())))
            .collect::<Result<_>>()?;

        let deck = |c: Copy| -> RationalMatrix {
            match c {
                Copy::Representative => RationalMatrix::identity(n),
                Copy::Corner(k) => corner[k].clone(),
                Copy::Paired(k) => pairing(k).clone(),
            }
        };

        let mut transitions: BTreeMap<(usize, usize), RationalMatrix> = BTreeMap::new();
        for (t, c) in self.triangles.iter().zip(&self.copies) {
            let g: Vec<RationalMatrix> = c.iter().map(|&c| deck(c)).collect();
            let ginv = g.iter().map(RationalMatrix::inverse).collect::<Result<Vec<_>>>()?;
            for a in 0..3 {
                for b in 0..3 {
                    let (x, y) = (t[a], t[b]);
                    if x >= y {
                        continue;
                    }
                    let gxy = ginv[a].mul(&g[b]);
                    match transitions.get(&(x, y)) {
                        Some(old) if *old != gxy => {
                            return Err(Error::InvalidBundle(format!(
                                "side pairings violate the surface relation (edge {x}-{y})"
                            )));
                        }
                        Some(_) => {}
                        None => {
                            transitions.insert((x, y), gxy);
                        }
                    }
                }
            }
        }

        Ok(FlatBundleComplex {
            n,
            vertex_count: self.vertex_count,
            simplices: self
                .triangles
                .iter()
                .map(|t| Simplex { v: t.to_vec(), c: 1 })
                .collect(),
            transitions: transitions
                .into_iter()
                .map(|((i, j), g)| Transition { i, j, g })
                .collect(),
            section,
        })
    }

    /// The product bundle of rank `n`.
    pub fn trivial_bundle(&self, n: usize, section: Vec<RationalVector>) -> Result<FlatBundleComplex> {
        self.bundle(&vec![RationalMatrix::identity(n); 2 * self.genus], section)
    }
}

/// A section with independent random entries at every vertex.
pub fn random_section<R: Rng>(rng: &mut R, vertices: usize, n: usize, m: i64) -> Vec<RationalVector> {
    (0..vertices).map(|_| random::nonzero_vector(rng, n, m)).collect()
}

/// Random positive re-trivializations, one per vertex.
pub fn random_gauge<R: Rng>(rng: &mut R, vertices: usize, n: usize, m: i64) -> Vec<RationalMatrix> {
    (0..vertices).map(|_| random::gl_plus(rng, n, m)).collect()
}

pub type Mat2 = [[f64; 2]; 2];

fn cmul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn rotation(phi: f64) -> [[Complex64; 2]; 2] {
    let z = Complex64::from_polar(1.0, phi / 2.0);
    [[z, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), z.conj()]]
}

/// Side pairings `a_i, b_i` of the regular hyperbolic `4g`-gon with all
/// interior angles `2π / 4g`, centred at the origin of the disk with
/// vertices at angles `2πk / 4g`, conjugated into `SL₂(ℝ)`.
pub fn fuchsian_generators(genus: usize) -> Vec<Mat2> {
    let sides = 4 * genus;
    let half = PI / sides as f64;
    // distance from the centre to a side: right triangle with angles `half`
    let d = (1.0 / half.tan()).acosh();
    let shift = [
        [Complex64::new(d.cosh(), 0.0), Complex64::new(d.sinh(), 0.0)],
        [Complex64::new(d.sinh(), 0.0), Complex64::new(d.cosh(), 0.0)],
    ];
    let mid = |k: usize| (2 * k + 1) as f64 * half;
    // disk → upper half-plane
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let cayley = [[one, -i], [one, i]];
    let cayley_inv = [[i / (2.0 * i), i / (2.0 * i)], [-one / (2.0 * i), one / (2.0 * i)]];

    let mut out = Vec::with_capacity(2 * genus);
    for k in (0..sides).filter(|&k| is_generator_side(k)) {
        let disk = cmul(&rotation(mid(partner(k))), &cmul(&shift, &rotation(PI - mid(k))));
        let real = cmul(&cayley_inv, &cmul(&disk, &cayley));
        out.push([[real[0][0].re, real[0][1].re], [real[1][0].re, real[1][1].re]]);
    }
    out
}

const DYADIC_BITS: u32 = 16;

fn dyadic(x: f64) -> Rational {
    let scale = f64::from(1u32 << DYADIC_BITS);
    Rational::new(BigInt::from((x * scale).round() as i64), BigInt::from(1u64 << DYADIC_BITS))
}

fn rationalize(m: &Mat2) -> RationalMatrix {
    RationalMatrix::new(2, 2, m.iter().flatten().map(|&x| dyadic(x)).collect())
}

fn inv2(m: &Mat2) -> Mat2 {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]]
}

/// `b a⁻¹ b⁻¹ a`: the corner-to-corner holonomy across one handle.
pub fn handle_commutator(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    Ok(b.mul(&a.inverse()?).mul(&b.inverse()?).mul(a))
}

/// Dyadic approximations of the given `SL₂(ℝ)` generators, with the last
/// handle re-solved so that `K_{g-1} ⋯ K_0 = 1` holds exactly, where
/// `K_i = b_i a_i⁻¹ b_i⁻¹ a_i`. The repaired generators lie in `GL₂⁺(ℚ)`.
pub fn exact_surface_representation(gens: &[Mat2]) -> Result<Vec<RationalMatrix>> {
    if gens.len() < 4 || gens.len() % 2 == 1 {
        return Err(Error::Arity {
            expected: 4,
            found: gens.len(),
        });
    }
    let g = gens.len() / 2;
    let mut out: Vec<RationalMatrix> = gens[..2 * g - 2].iter().map(rationalize).collect();
    let mut prefix = RationalMatrix::identity(2);
    for h in 0..g - 1 {
        prefix = handle_commutator(&out[2 * h], &out[2 * h + 1])?.mul(&prefix);
    }
    let target = prefix.inverse()?;

    // Y = a⁻¹ with tr(target · Y) = tr(Y), so that target·Y is conjugate to Y.
    let mut y = rationalize(&inv2(&gens[2 * g - 2]));
    let d = {
        let mut d = target.clone();
        for k in 0..2 {
            let v = d.get(k, k) - Rational::from_integer(1.into());
            d.set(k, k, v);
        }
        d
    };
    let (pi, pj) = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .max_by(|&(a, b), &(c, e)| {
            crate::exact::rational_to_f64(d.get(a, b))
                .abs()
                .total_cmp(&crate::exact::rational_to_f64(d.get(c, e)).abs())
        })
        .expect("nonempty");
    // tr(D Y) = Σ D_ij Y_ji; solve for Y_{pj,pi}
    let mut rest = Rational::from_integer(0.into());
    for i in 0..2 {
        for j in 0..2 {
            if (i, j) != (pi, pj) {
                rest += d.get(i, j) * y.get(j, i);
            }
        }
    }
    y.set(pj, pi, -rest / d.get(pi, pj));
    let z = target.mul(&y);

    // X with X·Y = Z·X: a two-dimensional centraliser-like solution space.
    let mut lin = RationalMatrix::new(4, 4, vec![Rational::from_integer(0.into()); 16]);
    for p in 0..2 {
        for q in 0..2 {
            let col = 2 * p + q;
            for j in 0..2 {
                let row = 2 * p + j;
                let v = lin.get(row, col) + y.get(q, j);
                lin.set(row, col, v);
            }
            for i in 0..2 {
                let row = 2 * i + q;
                let v = lin.get(row, col) - z.get(i, p);
                lin.set(row, col, v);
            }
        }
    }
    let kernel = lin.nullspace();
    if kernel.len() != 2 {
        return Err(Error::Internal(format!(
            "solution space for the last handle has dimension {}",
            kernel.len()
        )));
    }
    let want: Vec<f64> = gens[2 * g - 1].iter().flatten().copied().collect();
    let basis: Vec<Vec<f64>> = kernel.iter().map(RationalVector::to_f64).collect();
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
    let (g11, g12, g22) = (dot(&basis[0], &basis[0]), dot(&basis[0], &basis[1]), dot(&basis[1], &basis[1]));
    let (r1, r2) = (dot(&basis[0], &want), dot(&basis[1], &want));
    let det = g11 * g22 - g12 * g12;
    let alpha = dyadic((r1 * g22 - r2 * g12) / det);
    let beta = dyadic((r2 * g11 - r1 * g12) / det);
    let xv = kernel[0].scale(&alpha).add(&kernel[1].scale(&beta));
    let x = RationalMatrix::new(2, 2, xv.coords().to_vec());

    let y_inv = y.inverse()?;
    for (name, m) in [("a", &y_inv), ("b", &x)] {
        if m.det_sign()? != crate::exact::Sign::Positive {
            return Err(Error::Internal(format!("repaired {name}_{} has det ≤ 0", g - 1)));
        }
    }
    out.push(y_inv);
    out.push(x);

    let mut total = RationalMatrix::identity(2);
    for h in 0..g {
        total = handle_commutator(&out[2 * h], &out[2 * h + 1])?.mul(&total);
    }
    if total != RationalMatrix::identity(2) {
        return Err(Error::Internal("repaired surface relation does not hold".into()));
    }
    Ok(out)
}
