//! Numerical clutching construction over spheres and the topological
//! side tables.
//!
//! A map f from the equator of S^p into GL_n(C) is extended over the
//! overlap band by meridian projection and assembled into the projector
//! field
//!
//! ```text
//! Q = [ β₊²·I        β₊β₋·f̃  ]
//!     [ β₊β₋·f̃⁻¹    β₋²·I   ]
//! ```
//!
//! whose image is a rank-n projective module over the functions on S^p.
//! The module verifies idempotency and trace pointwise, integrates the
//! first Chern number over S² as an independent check of the classification
//! by winding, and carries the loop-space chain, the stable homotopy of
//! GL(C), and the tangent-field count ρ(t) as queryable data.
//!
//! Determinism: grid nodes are processed in parallel but every reduction
//! (residual maxima, the Chern integral) runs in a fixed index order, so
//! results are bit-identical for any worker count.

use crate::abelian::FGAbelianGroup;
use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;

/// Partition-of-unity profile on the last coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionKind {
    /// α₊ = clamp(x + 1/2, 0, 1), piecewise linear.
    Linear,
    /// Smooth cosine ramp with the same support.
    CosineRamp,
}

/// (β₊, β₋) at a point with last coordinate `x_last`:
/// α-profile clamped to [0, 1], then normalized so β₊² + β₋² = 1.
pub fn partition_of_unity(x_last: f64, kind: PartitionKind) -> Result<(f64, f64)> {
    if !(-1.0..=1.0).contains(&x_last) {
        return Err(Error::input(format!(
            "x_last = {x_last} outside [-1, 1]"
        )));
    }
    let t = (x_last + 0.5).clamp(0.0, 1.0);
    let alpha_plus = match kind {
        PartitionKind::Linear => t,
        PartitionKind::CosineRamp => 0.5 * (1.0 - (std::f64::consts::PI * t).cos()),
    };
    let alpha_minus = 1.0 - alpha_plus;
    let norm = (alpha_plus * alpha_plus + alpha_minus * alpha_minus).sqrt();
    Ok((alpha_plus / norm, alpha_minus / norm))
}

/// Sampled grid on S^p (p = 1 or 2).
///
/// For p = 2 the grid is latitude–longitude: `resolution` cell-centered
/// polar angles θᵢ = (i + ½)π/R (poles excluded from derivative stencils;
/// both polar caps are covered) × `resolution` periodic azimuths.
/// For p = 1 it is `resolution` periodic angles on the circle.
#[derive(Clone, Debug)]
pub struct SphereGrid {
    p: u8,
    resolution: usize,
}

impl SphereGrid {
    pub fn new(p: u8, resolution: usize) -> Result<Self> {
        if p != 1 && p != 2 {
            return Err(Error::input(format!("sphere dimension p = {p} unsupported (1 or 2)")));
        }
        if resolution < 8 {
            return Err(Error::input(format!("resolution {resolution} too small (min 8)")));
        }
        Ok(SphereGrid { p, resolution })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Node coordinates in R^{p+1}; row-major θ-outer for p = 2.
    pub fn nodes(&self) -> Vec<Vec<f64>> {
        let r = self.resolution;
        match self.p {
            1 => (0..r)
                .map(|j| {
                    let t = 2.0 * std::f64::consts::PI * j as f64 / r as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect(),
            2 => {
                let mut out = Vec::with_capacity(r * r);
                for i in 0..r {
                    let theta = (i as f64 + 0.5) * std::f64::consts::PI / r as f64;
                    for j in 0..r {
                        let phi = 2.0 * std::f64::consts::PI * j as f64 / r as f64;
                        out.push(vec![
                            theta.sin() * phi.cos(),
                            theta.sin() * phi.sin(),
                            theta.cos(),
                        ]);
                    }
                }
                out
            }
            _ => unreachable!(),
        }
    }
}

/// Small dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    pub n: usize,
    pub entries: Vec<Complex64>,
}

impl CMatrix {
    pub fn zero(n: usize) -> Self {
        CMatrix { n, entries: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x -= y;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        let mut out = self.clone();
        for x in out.entries.iter_mut() {
            *x *= s;
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    /// max |entry|
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn determinant(&self) -> Complex64 {
        // Gaussian elimination with partial pivoting
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for c in 0..n {
            let (p, mx) = (c..n)
                .map(|i| (i, a[i * n + c].norm()))
                .fold((c, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if mx <= 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if p != c {
                for j in 0..n {
                    a.swap(c * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[c * n + c];
            det *= pivot;
            for i in (c + 1)..n {
                let f = a[i * n + c] / pivot;
                for j in c..n {
                    let t = f * a[c * n + j];
                    a[i * n + j] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<CMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n);
        for c in 0..n {
            let (p, mx) = (c..n)
                .map(|i| (i, a[(i, c)].norm()))
                .fold((c, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if mx <= 1e-300 {
                return None;
            }
            if p != c {
                for j in 0..n {
                    let t = a[(c, j)];
                    a[(c, j)] = a[(p, j)];
                    a[(p, j)] = t;
                    let t = inv[(c, j)];
                    inv[(c, j)] = inv[(p, j)];
                    inv[(p, j)] = t;
                }
            }
            let pv = a[(c, c)];
            for j in 0..n {
                a[(c, j)] /= pv;
                inv[(c, j)] /= pv;
            }
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a[(i, c)];
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let t = f * a[(c, j)];
                    a[(i, j)] -= t;
                    let t = f * inv[(c, j)];
                    inv[(i, j)] -= t;
                }
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.n + j]
    }
}

/// Clutching data: an invertible-matrix-valued map on the equator S^{p−1}.
#[derive(Clone, Debug)]
pub enum ClutchingInput {
    /// z ↦ z^k as a 1×1 matrix (p = 2).
    Power { k: i64 },
    /// z ↦ diag(z^{k₁}, …, z^{kₙ}) (p = 2).
    BlockPowers { ks: Vec<i64> },
    /// Sampled equator values: for p = 2 a table over equally spaced
    /// angles; for p = 1 the two values at the equator points x₁ = ±1,
    /// in the order [f(+1), f(−1)].
    Samples { n: usize, values: Vec<CMatrix> },
}

impl ClutchingInput {
    pub fn matrix_size(&self) -> usize {
        match self {
            ClutchingInput::Power { .. } => 1,
            ClutchingInput::BlockPowers { ks } => ks.len(),
            ClutchingInput::Samples { n, .. } => *n,
        }
    }

    /// Value at equator angle `phi` (p = 2) — sample tables interpolate by
    /// nearest angle.
    pub fn at_angle(&self, phi: f64) -> CMatrix {
        match self {
            ClutchingInput::Power { k } => {
                let mut m = CMatrix::zero(1);
                m[(0, 0)] = Complex64::from_polar(1.0, *k as f64 * phi);
                m
            }
            ClutchingInput::BlockPowers { ks } => {
                let mut m = CMatrix::zero(ks.len());
                for (i, k) in ks.iter().enumerate() {
                    m[(i, i)] = Complex64::from_polar(1.0, *k as f64 * phi);
                }
                m
            }
            ClutchingInput::Samples { values, .. } => {
                let count = values.len();
                let idx = ((phi / (2.0 * std::f64::consts::PI) * count as f64).round()
                    as usize)
                    % count;
                values[idx].clone()
            }
        }
    }

    /// Check all samples are invertible (|det| above threshold).
    pub fn validate(&self) -> Result<()> {
        if let ClutchingInput::Samples { n, values } = self {
            if values.is_empty() {
                return Err(Error::input("sample table is empty"));
            }
            for (i, v) in values.iter().enumerate() {
                if v.n != *n {
                    return Err(Error::input(format!(
                        "sample {i} has size {} but n = {n}",
                        v.n
                    )));
                }
                if v.determinant().norm() <= 1e-9 {
                    return Err(Error::input(format!(
                        "sample {i} is numerically singular"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// f̃: meridian extension to the overlap band −1/2 < x_last < 1/2 — the
/// node is projected along its meridian to the equator and f is evaluated
/// there.
pub fn meridian_extend(f: &ClutchingInput, node: &[f64]) -> Result<CMatrix> {
    let x_last = *node.last().ok_or_else(|| Error::input("empty node"))?;
    if !(x_last > -0.5 && x_last < 0.5) {
        return Err(Error::input(format!(
            "node with x_last = {x_last} is outside the open overlap band"
        )));
    }
    let horiz: f64 = node[..node.len() - 1].iter().map(|x| x * x).sum::<f64>().sqrt();
    if horiz < 1e-9 {
        return Err(Error::Internal(
            "node too close to the axis for meridian projection".into(),
        ));
    }
    match node.len() {
        3 => {
            let phi = node[1].atan2(node[0]).rem_euclid(2.0 * std::f64::consts::PI);
            Ok(f.at_angle(phi))
        }
        2 => {
            // p = 1: the equator S⁰ is the pair x₁ = ±1
            let values = match f {
                ClutchingInput::Samples { values, .. } if values.len() == 2 => values,
                _ => {
                    return Err(Error::input(
                        "p = 1 clutching data must be two equator samples",
                    ))
                }
            };
            Ok(if node[0] > 0.0 { values[0].clone() } else { values[1].clone() })
        }
        d => Err(Error::input(format!("nodes of dimension {d} unsupported"))),
    }
}

/// The assembled projector field with its verified residuals.
pub struct ClutchingField {
    pub grid: SphereGrid,
    pub n: usize,
    /// Per-node 2n×2n matrices, grid row-major.
    pub q: Vec<CMatrix>,
    pub idempotency_residual: f64,
    pub trace_deviation: f64,
    pub partition: PartitionKind,
}

/// Assemble Q over the grid and verify idempotency and trace pointwise.
pub fn build_clutching(
    f: &ClutchingInput,
    grid: &SphereGrid,
    tol: f64,
) -> Result<ClutchingField> {
    build_clutching_with(f, grid, tol, PartitionKind::Linear)
}

pub fn build_clutching_with(
    f: &ClutchingInput,
    grid: &SphereGrid,
    tol: f64,
    partition: PartitionKind,
) -> Result<ClutchingField> {
    if tol <= 0.0 {
        return Err(Error::input("tolerance must be positive"));
    }
    f.validate()?;
    let n = f.matrix_size();
    let nodes = grid.nodes();
    let q: Vec<CMatrix> = nodes
        .par_iter()
        .map(|node| assemble_node(f, node, n, partition))
        .collect::<Result<Vec<_>>>()?;

    // residuals in fixed index order
    let mut worst_idem = 0.0f64;
    let mut worst_idx = 0usize;
    let mut worst_trace = 0.0f64;
    for (idx, m) in q.iter().enumerate() {
        let r = m.mul(m).sub(m).max_abs();
        if r > worst_idem {
            worst_idem = r;
            worst_idx = idx;
        }
        let t = (m.trace() - Complex64::new(n as f64, 0.0)).norm();
        if t > worst_trace {
            worst_trace = t;
        }
    }
    if worst_idem >= tol || worst_trace >= tol {
        return Err(Error::Verification(format!(
            "projector field fails tolerance {tol:e}: idempotency residual {worst_idem:e} \
             at node {worst_idx}, trace deviation {worst_trace:e}"
        )));
    }
    Ok(ClutchingField {
        grid: grid.clone(),
        n,
        q,
        idempotency_residual: worst_idem,
        trace_deviation: worst_trace,
        partition,
    })
}

fn assemble_node(
    f: &ClutchingInput,
    node: &[f64],
    n: usize,
    partition: PartitionKind,
) -> Result<CMatrix> {
    let x_last = *node.last().expect("node has coordinates");
    let (bp, bm) = partition_of_unity(x_last, partition)?;
    let prod = bp * bm;
    let mut q = CMatrix::zero(2 * n);
    for i in 0..n {
        q[(i, i)] = Complex64::new(bp * bp, 0.0);
        q[(n + i, n + i)] = Complex64::new(bm * bm, 0.0);
    }
    // outside the open band the off-diagonal products vanish identically
    if prod != 0.0 && x_last > -0.5 && x_last < 0.5 {
        let ft = meridian_extend(f, node)?;
        let ft_inv = ft
            .inverse()
            .ok_or_else(|| Error::Verification("clutching value not invertible".into()))?;
        for i in 0..n {
            for j in 0..n {
                q[(i, n + j)] = prod * ft[(i, j)];
                q[(n + i, j)] = prod * ft_inv[(i, j)];
            }
        }
    }
    Ok(q)
}

/// First Chern number of the image bundle over S²:
/// (1/2πi) ∫ tr(Q [∂_θQ, ∂_φQ]) dθ dφ with 4th-order central differences
/// (clamped near the poles, where Q is constant) and a fixed-order
/// trapezoid sum. Returns the raw value and its nearest integer.
pub fn chern_number(field: &ClutchingField) -> Result<(f64, i64)> {
    if field.grid.p() != 2 {
        return Err(Error::input("Chern integration needs p = 2"));
    }
    let r = field.grid.resolution();
    let dth = std::f64::consts::PI / r as f64;
    let dph = 2.0 * std::f64::consts::PI / r as f64;
    let q = &field.q;
    let at = |i: usize, j: usize| &q[i * r + j];

    // per-row contributions in parallel, then a fixed-order sum
    // (m2 - 8·m1 + 8·p1 - p2) / (12h)
    let stencil4 = |m2: &CMatrix, m1: &CMatrix, p1: &CMatrix, p2: &CMatrix, h: f64| {
        let mut out = m2.clone();
        for (idx, v) in out.entries.iter_mut().enumerate() {
            *v += -8.0 * m1.entries[idx] + 8.0 * p1.entries[idx] - p2.entries[idx];
            *v /= 12.0 * h;
        }
        out
    };
    let rows: Vec<Complex64> = (0..r)
        .into_par_iter()
        .map(|i| {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..r {
                let dqu = if i >= 2 && i + 2 < r {
                    stencil4(at(i - 2, j), at(i - 1, j), at(i + 1, j), at(i + 2, j), dth)
                } else {
                    // clamped 2nd-order stencil; rows this close to a pole
                    // sit in a constant cap for every supported resolution
                    let ip = (i + 1).min(r - 1);
                    let im = i.saturating_sub(1);
                    let denom = (ip - im) as f64 * dth;
                    at(ip, j).sub(at(im, j)).scale(Complex64::new(1.0 / denom, 0.0))
                };
                let jm2 = (j + r - 2) % r;
                let jm1 = (j + r - 1) % r;
                let jp1 = (j + 1) % r;
                let jp2 = (j + 2) % r;
                let dqv = stencil4(at(i, jm2), at(i, jm1), at(i, jp1), at(i, jp2), dph);
                let comm = dqu.mul(&dqv).sub(&dqv.mul(&dqu));
                acc += at(i, j).mul(&comm).trace();
            }
            acc * Complex64::new(dth * dph, 0.0)
        })
        .collect();
    let total: Complex64 = rows.iter().sum();
    let value = (total / Complex64::new(0.0, 2.0 * std::f64::consts::PI)).re;
    let rounded = value.round() as i64;
    if (value - rounded as f64).abs() >= 0.05 {
        return Err(Error::Verification(format!(
            "Chern integral {value} is {:.4} away from the nearest integer (limit 0.05)",
            (value - rounded as f64).abs()
        )));
    }
    Ok((value, rounded))
}

/// Winding number of a sampled loop of nonzero complex numbers, by
/// argument accumulation. Adjacent phase jumps must stay below π.
pub fn winding_number(samples: &[Complex64]) -> Result<i64> {
    if samples.len() < 3 {
        return Err(Error::input("need at least 3 samples for a winding number"));
    }
    let mut total = 0.0f64;
    for (idx, pair) in samples
        .iter()
        .zip(samples.iter().cycle().skip(1))
        .take(samples.len())
        .enumerate()
    {
        let (a, b) = pair;
        if a.norm() == 0.0 || b.norm() == 0.0 {
            return Err(Error::input(format!("sample {idx} is zero")));
        }
        let jump = (b / a).arg();
        if jump.abs() >= std::f64::consts::PI - 1e-12 {
            return Err(Error::Resolution(format!(
                "phase jump {jump:.4} at sample {idx} reaches π; refine the sampling"
            )));
        }
        total += jump;
    }
    let turns = total / (2.0 * std::f64::consts::PI);
    let rounded = turns.round();
    if (turns - rounded).abs() > 1e-6 {
        return Err(Error::Internal(format!(
            "winding total {turns} is not integral"
        )));
    }
    Ok(rounded as i64)
}

/// p = 1 triviality check: the closed determinant loop of the two constant
/// transition matrices, joined by geodesics in C* (log-modulus and
/// shortest-arc interpolation). Its winding is the artifact's triviality
/// invariant for bundles over the circle; it vanishes for every clutching
/// datum, matching the vanishing of the reduced K-group of complex
/// functions on S¹.
pub fn s1_transition_winding(f: &ClutchingInput) -> Result<i64> {
    let values = match f {
        ClutchingInput::Samples { values, .. } if values.len() == 2 => values,
        _ => {
            return Err(Error::input(
                "p = 1 transition data must be two equator samples",
            ))
        }
    };
    let d0 = values[0].determinant();
    let d1 = values[1].determinant();
    if d0.norm() <= 1e-12 || d1.norm() <= 1e-12 {
        return Err(Error::input("transition determinant vanishes"));
    }
    let steps = 64;
    let geodesic = |a: Complex64, b: Complex64| -> Vec<Complex64> {
        let (ra, ta) = a.to_polar();
        let (rb, tb) = b.to_polar();
        let mut dt = tb - ta;
        while dt > std::f64::consts::PI {
            dt -= 2.0 * std::f64::consts::PI;
        }
        while dt < -std::f64::consts::PI {
            dt += 2.0 * std::f64::consts::PI;
        }
        (0..steps)
            .map(|s| {
                let t = s as f64 / steps as f64;
                Complex64::from_polar(ra.powf(1.0 - t) * rb.powf(t), ta + t * dt)
            })
            .collect()
    };
    // there and back along the same path: closed by construction
    let forward = geodesic(d0, d1);
    let mut loop_samples = forward.clone();
    loop_samples.extend(forward.into_iter().rev());
    winding_number(&loop_samples)
}

/// Stable homotopy of GL(C): Z in odd degrees, 0 in even degrees, the
/// 2-periodic extension of π₀ = 0 and π₁ = Z.
pub fn pi_gl_c(p: u64) -> FGAbelianGroup {
    if p % 2 == 1 {
        FGAbelianGroup::free(1)
    } else {
        FGAbelianGroup::trivial()
    }
}

/// The eight spaces of the period-8 loop chain.
pub const LOOP_CHAIN: [&str; 8] = [
    "Z×BGL(R)",
    "GL(R)",
    "GL(R)/GL(C)",
    "GL(C)/GL(H)",
    "Z×BGL(H)",
    "GL(H)",
    "GL(H)/GL(C)",
    "GL(C)/GL(R)",
];

/// Homotopy type of the loop space of one of the eight chain spaces.
pub fn loop_chain_step(space: &str) -> Result<&'static str> {
    let norm = space.trim().replace('x', "×");
    let idx = LOOP_CHAIN
        .iter()
        .position(|s| *s == norm)
        .ok_or_else(|| Error::input(format!("unknown space '{space}'")))?;
    Ok(LOOP_CHAIN[(idx + 1) % 8])
}

/// Decomposition t = odd · 2^β with β = γ + 4δ, 0 ≤ γ ≤ 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VectorFieldParams {
    pub t: u64,
    pub odd_part: u64,
    pub beta: u32,
    pub gamma: u32,
    pub delta: u32,
}

impl VectorFieldParams {
    pub fn decompose(t: u64) -> Result<Self> {
        if t == 0 {
            return Err(Error::input("t must be >= 1"));
        }
        let beta = t.trailing_zeros();
        let odd_part = t >> beta;
        let gamma = beta % 4;
        let delta = beta / 4;
        let params = VectorFieldParams { t, odd_part, beta, gamma, delta };
        debug_assert_eq!(params.odd_part << params.beta, t);
        Ok(params)
    }
}

/// Maximum number of linearly independent tangent fields on S^{t−1}:
/// 0 for odd t; otherwise 2^γ + 8δ − 1 from t = odd·2^{γ+4δ}.
pub fn rho(t: u64) -> Result<u64> {
    let params = VectorFieldParams::decompose(t)?;
    if params.beta == 0 {
        return Ok(0);
    }
    Ok((1u64 << params.gamma) + 8 * params.delta as u64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_endpoints_and_equator() {
        let (bp, bm) = partition_of_unity(1.0, PartitionKind::Linear).unwrap();
        assert_eq!((bp, bm), (1.0, 0.0));
        let (bp, bm) = partition_of_unity(-1.0, PartitionKind::Linear).unwrap();
        assert_eq!((bp, bm), (0.0, 1.0));
        let (bp, bm) = partition_of_unity(0.0, PartitionKind::Linear).unwrap();
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert!((bp - inv_sqrt2).abs() < 1e-12);
        assert!((bm - inv_sqrt2).abs() < 1e-12);
        assert!(partition_of_unity(1.5, PartitionKind::Linear).is_err());
    }

    #[test]
    fn partition_is_normalized_everywhere() {
        for kind in [PartitionKind::Linear, PartitionKind::CosineRamp] {
            for i in 0..=1000 {
                let x = -1.0 + 2.0 * i as f64 / 1000.0;
                let (bp, bm) = partition_of_unity(x, kind).unwrap();
                assert!((bp * bp + bm * bm - 1.0).abs() < 1e-12, "x={x} {kind:?}");
                // support conditions
                if x <= -0.5 {
                    assert_eq!(bp, 0.0);
                }
                if x >= 0.5 {
                    assert_eq!(bm, 0.0);
                }
            }
        }
    }

    #[test]
    fn grid_nodes_on_sphere() {
        for p in [1u8, 2u8] {
            let g = SphereGrid::new(p, 16).unwrap();
            for node in g.nodes() {
                let norm2: f64 = node.iter().map(|x| x * x).sum();
                assert!((norm2 - 1.0).abs() < 1e-12);
            }
        }
        // covers both polar neighborhoods
        let g = SphereGrid::new(2, 16).unwrap();
        let nodes = g.nodes();
        assert!(nodes.iter().any(|n| n[2] > 0.99));
        assert!(nodes.iter().any(|n| n[2] < -0.99));
        assert!(SphereGrid::new(3, 16).is_err());
        assert!(SphereGrid::new(2, 4).is_err());
    }

    #[test]
    fn meridian_extension_examples() {
        let f = ClutchingInput::Power { k: 2 };
        // on the equator the projection is the identity
        let equator = [0.6, 0.8, 0.0];
        let phi = 0.8f64.atan2(0.6);
        let direct = f.at_angle(phi);
        let extended = meridian_extend(&f, &equator).unwrap();
        assert!((direct[(0, 0)] - extended[(0, 0)]).norm() < 1e-12);
        // along the meridian of the same equator point: same value
        let x3: f64 = 0.4;
        let scale = (1.0 - x3 * x3).sqrt();
        let lifted = [0.6 * scale, 0.8 * scale, x3];
        let extended2 = meridian_extend(&f, &lifted).unwrap();
        assert!((direct[(0, 0)] - extended2[(0, 0)]).norm() < 1e-12);
        // constant input extends to the constant
        let c = ClutchingInput::Samples { n: 1, values: vec![CMatrix::identity(1); 8] };
        let e = meridian_extend(&c, &lifted).unwrap();
        assert_eq!(e, CMatrix::identity(1));
        // outside the band
        assert!(meridian_extend(&f, &[0.0, 0.6, 0.8]).is_err());
    }

    #[test]
    fn build_constant_clutching() {
        let grid = SphereGrid::new(2, 32).unwrap();
        let f = ClutchingInput::Power { k: 0 };
        let field = build_clutching(&f, &grid, 1e-9).unwrap();
        assert!(field.idempotency_residual < 1e-12);
        assert!(field.trace_deviation < 1e-12);
        let (raw, int) = chern_number(&field).unwrap();
        assert_eq!(int, 0);
        assert!(raw.abs() < 1e-9);
    }

    #[test]
    fn hermitian_for_unitary_clutching() {
        let grid = SphereGrid::new(2, 16).unwrap();
        for k in [-2i64, 1, 3] {
            let field = build_clutching(&ClutchingInput::Power { k }, &grid, 1e-9).unwrap();
            for q in &field.q {
                assert!(q.sub(&q.adjoint()).max_abs() < 1e-12, "k={k}");
            }
        }
    }

    #[test]
    fn block_powers_trace() {
        let grid = SphereGrid::new(2, 16).unwrap();
        let f = ClutchingInput::BlockPowers { ks: vec![1, 2] };
        let field = build_clutching(&f, &grid, 1e-10).unwrap();
        assert!(field.trace_deviation < 1e-10);
        assert_eq!(field.n, 2);
    }

    #[test]
    fn winding_examples() {
        let loop_k = |k: i64, m: usize| -> Vec<Complex64> {
            (0..m)
                .map(|j| {
                    Complex64::from_polar(
                        1.0,
                        k as f64 * 2.0 * std::f64::consts::PI * j as f64 / m as f64,
                    )
                })
                .collect()
        };
        assert_eq!(winding_number(&loop_k(3, 256)).unwrap(), 3);
        assert_eq!(winding_number(&loop_k(0, 16)).unwrap(), 0);
        assert_eq!(winding_number(&loop_k(-1, 64)).unwrap(), -1);
        // conjugated loop = inverse winding
        let conj: Vec<Complex64> = loop_k(1, 64).iter().map(|z| z.conj()).collect();
        assert_eq!(winding_number(&conj).unwrap(), -1);
        // multiplicativity
        let prod: Vec<Complex64> = loop_k(2, 128)
            .iter()
            .zip(loop_k(3, 128).iter())
            .map(|(a, b)| a * b)
            .collect();
        assert_eq!(winding_number(&prod).unwrap(), 5);
        // resolution guard: z^k needs more than 2k samples
        assert!(matches!(
            winding_number(&loop_k(3, 6)),
            Err(Error::Resolution(_))
        ));
        // zero sample rejected
        let mut bad = loop_k(1, 16);
        bad[3] = Complex64::new(0.0, 0.0);
        assert!(winding_number(&bad).is_err());
    }

    #[test]
    fn s1_check_always_trivial() {
        for (a, b) in [(1.0, 1.0), (2.0, -3.0), (-1.5, 0.25)] {
            let mut m0 = CMatrix::identity(2);
            m0[(0, 0)] = Complex64::new(a, 0.5);
            let mut m1 = CMatrix::identity(2);
            m1[(1, 1)] = Complex64::new(b, -0.25);
            let f = ClutchingInput::Samples { n: 2, values: vec![m0, m1] };
            assert_eq!(s1_transition_winding(&f).unwrap(), 0);
        }
    }

    #[test]
    fn p1_field_builds() {
        let grid = SphereGrid::new(1, 32).unwrap();
        let mut m = CMatrix::identity(1);
        m[(0, 0)] = Complex64::new(0.0, 2.0);
        let f = ClutchingInput::Samples { n: 1, values: vec![m, CMatrix::identity(1)] };
        let field = build_clutching(&f, &grid, 1e-9).unwrap();
        assert!(field.idempotency_residual < 1e-12);
        assert_eq!(s1_transition_winding(&f).unwrap(), 0);
    }

    #[test]
    fn pi_gl_c_alternates() {
        assert!(pi_gl_c(0).is_trivial());
        assert_eq!(pi_gl_c(1), FGAbelianGroup::free(1));
        assert_eq!(pi_gl_c(7), FGAbelianGroup::free(1));
        for p in 0..32 {
            assert_eq!(pi_gl_c(p), pi_gl_c(p + 2));
        }
    }

    #[test]
    fn loop_chain_cycles_in_eight() {
        assert_eq!(loop_chain_step("Z×BGL(R)").unwrap(), "GL(R)");
        assert_eq!(loop_chain_step("GL(C)/GL(H)").unwrap(), "Z×BGL(H)");
        assert_eq!(loop_chain_step("ZxBGL(R)").unwrap(), "GL(R)");
        for start in LOOP_CHAIN {
            let mut s: &str = start;
            for _ in 0..8 {
                s = loop_chain_step(s).unwrap();
            }
            assert_eq!(s, start);
        }
        assert!(loop_chain_step("GL(Q)").is_err());
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(7).unwrap(), 0);
        assert_eq!(rho(16).unwrap(), 8);
        assert_eq!(rho(2).unwrap(), 1);
        assert_eq!(rho(4).unwrap(), 3);
        assert_eq!(rho(8).unwrap(), 7);
        for t in (1..=99u64).step_by(2) {
            assert_eq!(rho(t).unwrap(), 0);
        }
        for t in (2..=256u64).step_by(2) {
            assert!(rho(t).unwrap() >= 1, "rho({t})");
            // determined by the odd part being dropped: rho(t) = rho(2^v2(t))
            let v2 = t.trailing_zeros();
            assert_eq!(rho(t).unwrap(), rho(1u64 << v2).unwrap());
        }
        assert!(rho(0).is_err());
    }

    #[test]
    fn vector_field_params_reconstruct() {
        for t in 1..=256u64 {
            let p = VectorFieldParams::decompose(t).unwrap();
            assert_eq!(p.odd_part << p.beta, t);
            assert!(p.gamma <= 3);
            assert_eq!(p.gamma + 4 * p.delta, p.beta);
            assert_eq!(p.odd_part % 2, 1);
        }
    }
}
