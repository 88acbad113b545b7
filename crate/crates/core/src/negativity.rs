//! Logarithmic negativity of the TLS-field split of the thermal JC state.
//!
//! The thermal state is diagonal in the dressed basis, and its partial
//! transpose over the TLS decomposes into 1x1 and 2x2 blocks that couple
//! photon numbers n and n+2. The trace norm is therefore a closed sum over
//! 2x2 eigenvalue pairs, evaluated here from three coefficient families
//! built out of the dressed populations and mixing angles. A dense
//! numeric route through the bare product basis serves as an oracle.
//!
//! At resonance the sign of each block discriminant is governed by a
//! condition function F_n(g/T); blocks below a crossover index contribute
//! their plain trace while the ones above contribute a root term, which is
//! what makes the entanglement nonmonotonic in g/T.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::eigensystem::{eigen_level, Branch, JCParams};
use crate::error::JcError;

/// Thermal probability below which an excitation subspace is dropped.
pub const DEFAULT_TRUNCATION_THRESHOLD: f64 = 1e-20;

/// Populations of the truncated thermal state on the flat level ordering,
/// normalized by the partition sum over the kept 2 n_max + 1 levels.
pub fn thermal_populations(
    params: &JCParams,
    t: f64,
    n_max: usize,
) -> Result<Vec<f64>, JcError> {
    params.validate()?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(JcError::InvalidParams(format!(
            "thermal state needs a positive finite temperature, got {t}"
        )));
    }
    if n_max < 1 {
        return Err(JcError::InvalidParams(
            "thermal populations need n_max >= 1".into(),
        ));
    }
    let mut energies = Vec::with_capacity(2 * n_max + 1);
    energies.push(eigen_level(params, 0, Branch::Ground)?.energy);
    for n in 1..=n_max {
        energies.push(eigen_level(params, n, Branch::Minus)?.energy);
        energies.push(eigen_level(params, n, Branch::Plus)?.energy);
    }
    let e_min = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let shifted: Vec<f64> = energies.iter().map(|e| (-(e - e_min) / t).exp()).collect();
    let z: f64 = shifted.iter().sum();
    Ok(shifted.into_iter().map(|s| s / z).collect())
}

/// Coefficient families of the partially transposed thermal state.
///
/// With p the dressed populations and theta_n the mixing angles,
///
///   A_0 = p(ground)
///   A_n = sin^2(theta_n/2) p(n,+) + cos^2(theta_n/2) p(n,-)
///   B_n = sin(theta_n/2) cos(theta_n/2) (p(n,+) - p(n,-))
///   C_n = cos^2(theta_n/2) p(n,+) + sin^2(theta_n/2) p(n,-)
///
/// for n up to the truncation. The partial transpose mixes photon numbers
/// two apart, so block n reads A_n, B_{n+1}, and C_{n+2}; the entries past
/// the truncation are stored as explicit zeros so every kept block is
/// well defined and the zero-coupling limit resums to a unit trace norm.
#[derive(Debug, Clone)]
pub struct ThermalBlockCoefficients {
    n_max: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
    populations: Vec<f64>,
}

impl ThermalBlockCoefficients {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// The thermal populations the coefficients were built from, on the
    /// flat level ordering.
    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    /// A_n for n up to n_max. Panics outside that range.
    pub fn a(&self, n: usize) -> f64 {
        assert!(n <= self.n_max, "A_{n} is outside the truncation");
        self.a[n]
    }

    /// B_n for 1 <= n <= n_max + 1, the last entry being the zero pad.
    /// Panics outside that range.
    pub fn b(&self, n: usize) -> f64 {
        assert!(
            (1..=self.n_max + 1).contains(&n),
            "B_{n} is outside the truncation"
        );
        self.b[n]
    }

    /// C_n for 1 <= n <= n_max + 2, the last two entries being the zero
    /// pad. Panics outside that range.
    pub fn c(&self, n: usize) -> f64 {
        assert!(
            (1..=self.n_max + 2).contains(&n),
            "C_{n} is outside the truncation"
        );
        self.c[n]
    }
}

/// Builds the block coefficients of the thermal state truncated at
/// `n_max` (at least 2, so the boundary blocks exist).
pub fn thermal_block_coefficients(
    params: &JCParams,
    t: f64,
    n_max: usize,
) -> Result<ThermalBlockCoefficients, JcError> {
    if n_max < 2 {
        return Err(JcError::InvalidParams(
            "block coefficients need n_max >= 2".into(),
        ));
    }
    let populations = thermal_populations(params, t, n_max)?;
    let mut a = vec![0.0; n_max + 1];
    let mut b = vec![0.0; n_max + 2];
    let mut c = vec![0.0; n_max + 3];
    a[0] = populations[0];
    for n in 1..=n_max {
        let level = eigen_level(params, n, Branch::Plus)?;
        let (ch, sh) = (level.cos_half, level.sin_half);
        let p_plus = populations[2 * n];
        let p_minus = populations[2 * n - 1];
        a[n] = sh * sh * p_plus + ch * ch * p_minus;
        b[n] = sh * ch * (p_plus - p_minus);
        c[n] = ch * ch * p_plus + sh * sh * p_minus;
    }
    Ok(ThermalBlockCoefficients {
        n_max,
        a,
        b,
        c,
        populations,
    })
}

/// Square of the 2x2 partial-transpose block that couples photon numbers
/// n and n+2, valid for n up to the truncation.
pub fn block_matrix(
    coeffs: &ThermalBlockCoefficients,
    n: usize,
) -> Result<[[f64; 2]; 2], JcError> {
    if n > coeffs.n_max {
        return Err(JcError::BlockOutOfRange {
            n,
            n_max: coeffs.n_max,
        });
    }
    let a = coeffs.a(n);
    let b = coeffs.b(n + 1);
    let c = coeffs.c(n + 2);
    Ok([
        [a * a + b * b, b * (a + c)],
        [b * (a + c), b * b + c * c],
    ])
}

/// Sum of the absolute eigenvalues of block n: A_n + C_{n+2} while the
/// block determinant A_n C_{n+2} - B_{n+1}^2 is nonnegative, and the root
/// of the squared discriminant once an eigenvalue turns negative.
pub fn sqrt_eig_sum(coeffs: &ThermalBlockCoefficients, n: usize) -> Result<f64, JcError> {
    if n > coeffs.n_max {
        return Err(JcError::BlockOutOfRange {
            n,
            n_max: coeffs.n_max,
        });
    }
    let a = coeffs.a(n);
    let b = coeffs.b(n + 1);
    let c = coeffs.c(n + 2);
    if a * c - b * b >= 0.0 {
        Ok(a + c)
    } else {
        Ok(((a - c) * (a - c) + 4.0 * b * b).sqrt())
    }
}

/// Resonant block-sign condition: block n of the thermal partial transpose
/// at g/T = g_r has a negative eigenvalue exactly when F_n < 0, with
///
///   F_n = cosh(u) cosh(w) - sinh^2(v),
///   u = sqrt(n) g_r,  v = sqrt(n+1) g_r,  w = sqrt(n+2) g_r.
///
/// Evaluated in a product form that survives the cancellation between the
/// two exponentially large terms. Meaningful for g_r > 0.
pub fn f_condition(n: usize, g_r: f64) -> f64 {
    let u = (n as f64).sqrt() * g_r;
    let v = ((n + 1) as f64).sqrt() * g_r;
    let w = ((n + 2) as f64).sqrt() * g_r;
    let m = 0.5 * (u + w);
    0.5 + 0.5 * (w - u).cosh() - (m + v).sinh() * (v - m).sinh()
}

/// Largest block index n with F_n >= 0 at resonance, or `None` when even
/// the first block is negative (g_r above roughly 1.4195). Panics for
/// g_r <= 0, where no block ever turns negative.
pub fn crossover_index(g_r: f64) -> Option<usize> {
    assert!(g_r > 0.0, "crossover scan needs g_r > 0");
    if f_condition(0, g_r) < 0.0 {
        return None;
    }
    let mut n = 0;
    while f_condition(n + 1, g_r) >= 0.0 {
        n += 1;
    }
    Some(n)
}

/// Smallest truncation that keeps every thermal probability at or above
/// `threshold`: the partition sum is converged without truncation, and the
/// cut is placed after the last subspace whose upper-branch probability
/// still reaches the threshold, with a floor of 2.
pub fn truncation_index(params: &JCParams, t: f64, threshold: f64) -> Result<usize, JcError> {
    params.validate()?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(JcError::InvalidParams(format!(
            "truncation needs a positive finite temperature, got {t}"
        )));
    }
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(JcError::InvalidParams(format!(
            "truncation threshold must lie in (0, 1), got {threshold}"
        )));
    }
    let ground = eigen_level(params, 0, Branch::Ground)?.energy;
    let tail_cut = t * 1e30f64.ln();
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    let mut e_min = ground;
    let mut n = 1usize;
    loop {
        let minus = eigen_level(params, n, Branch::Minus)?.energy;
        let plus = eigen_level(params, n, Branch::Plus)?.energy;
        e_min = e_min.min(minus);
        pairs.push((minus, plus));
        if minus - e_min > tail_cut && plus - e_min > tail_cut {
            break;
        }
        n += 1;
        if n > 10_000_000 {
            return Err(JcError::InvalidParams(
                "partition sum did not converge within 1e7 subspaces".into(),
            ));
        }
    }
    let mut z = (-(ground - e_min) / t).exp();
    for (minus, plus) in &pairs {
        z += (-(minus - e_min) / t).exp() + (-(plus - e_min) / t).exp();
    }
    let mut n_max = 2usize;
    for (i, (_, plus)) in pairs.iter().enumerate() {
        if (-(plus - e_min) / t).exp() / z >= threshold {
            n_max = n_max.max(i + 1);
        }
    }
    Ok(n_max)
}

/// How a negativity value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegativityMethod {
    /// Closed 2x2 block decomposition of the partial transpose.
    AnalyticBlocks,
    /// Dense diagonalization in the bare product basis.
    NumericOracle,
}

/// Trace norm and logarithmic negativity of the thermal state, with the
/// truncation used and, at resonance, the block crossover index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityResult {
    pub trace_norm: f64,
    pub log_negativity: f64,
    pub n0: Option<usize>,
    pub n_max: usize,
    pub method: NegativityMethod,
}

fn resonant_crossover(params: &JCParams, t: f64) -> Option<usize> {
    if params.detuning() == 0.0 && params.g > 0.0 {
        crossover_index(params.g / t)
    } else {
        None
    }
}

/// Logarithmic negativity N = log2 ||rho^PT||_1 of the thermal state via
/// the block decomposition, truncating where thermal probabilities fall
/// below the default threshold.
pub fn log_negativity_analytic(params: &JCParams, t: f64) -> Result<NegativityResult, JcError> {
    let n_max = truncation_index(params, t, DEFAULT_TRUNCATION_THRESHOLD)?;
    let coeffs = thermal_block_coefficients(params, t, n_max)?;
    let mut trace_norm = coeffs.c(1);
    for n in 0..=n_max {
        trace_norm += sqrt_eig_sum(&coeffs, n)?;
    }
    debug_assert!(trace_norm >= 1.0 - 1e-12);
    Ok(NegativityResult {
        trace_norm,
        log_negativity: trace_norm.log2(),
        n0: resonant_crossover(params, t),
        n_max,
        method: NegativityMethod::AnalyticBlocks,
    })
}

/// Dense oracle for the logarithmic negativity: builds the Hamiltonian in
/// the bare product basis with `fock_dim` photon levels, forms the thermal
/// state by full diagonalization, transposes the TLS, and sums absolute
/// eigenvalues.
///
/// `fock_dim` must cover the thermal truncation (n_max + 1 levels at
/// least), and the top photon level must stay unpopulated beyond 1e-12 or
/// the result would be biased by the hard wall.
pub fn log_negativity_numeric(
    params: &JCParams,
    t: f64,
    fock_dim: usize,
) -> Result<NegativityResult, JcError> {
    let n_max = truncation_index(params, t, DEFAULT_TRUNCATION_THRESHOLD)?;
    if fock_dim < n_max + 1 {
        return Err(JcError::InvalidParams(format!(
            "Fock dimension {fock_dim} cannot hold the thermal state, need at least {}",
            n_max + 1
        )));
    }
    let dim = 2 * fock_dim;
    let mut h = DMatrix::zeros(dim, dim);
    for n in 0..fock_dim {
        h[(n, n)] = -params.omega0 / 2.0 + params.omega_c * n as f64;
        h[(fock_dim + n, fock_dim + n)] = params.omega0 / 2.0 + params.omega_c * n as f64;
    }
    for n in 0..fock_dim - 1 {
        // g (sigma_+ a + a' sigma_-) couples |e,n> with |g,n+1>
        let v = params.g * ((n + 1) as f64).sqrt();
        h[(fock_dim + n, n + 1)] = v;
        h[(n + 1, fock_dim + n)] = v;
    }
    let eig = SymmetricEigen::new(h);
    let e_min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|e| (-(e - e_min) / t).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let mut scaled = eig.eigenvectors.clone();
    for (j, w) in weights.iter().enumerate() {
        scaled.column_mut(j).scale_mut(w / z);
    }
    let rho = &scaled * &eig.eigenvectors.transpose();

    let leak = rho[(fock_dim - 1, fock_dim - 1)] + rho[(dim - 1, dim - 1)];
    if leak > 1e-12 {
        return Err(JcError::BoundaryLeak {
            dim: fock_dim,
            leak,
        });
    }

    // transpose the TLS index only: the two off-diagonal blocks swap
    // places unchanged
    let mut pt = rho.clone();
    for i in 0..fock_dim {
        for j in 0..fock_dim {
            pt[(i, fock_dim + j)] = rho[(fock_dim + i, j)];
            pt[(fock_dim + i, j)] = rho[(i, fock_dim + j)];
        }
    }
    let trace_norm = symmetric_abs_eigenvalue_sum(pt)?;
    Ok(NegativityResult {
        trace_norm,
        log_negativity: trace_norm.log2(),
        n0: resonant_crossover(params, t),
        n_max,
        method: NegativityMethod::NumericOracle,
    })
}

/// Sum of absolute eigenvalues of a symmetric matrix. The QR route is
/// fast but returns NaN on matrices whose entries span hundreds of orders
/// of magnitude (a cold thermal state in an oversized Fock space), so
/// those fall back to Jacobi rotations, which stay finite on any input.
fn symmetric_abs_eigenvalue_sum(m: DMatrix<f64>) -> Result<f64, JcError> {
    let eig = SymmetricEigen::new(m.clone());
    if eig.eigenvalues.iter().all(|l| l.is_finite()) {
        return Ok(eig.eigenvalues.iter().map(|l| l.abs()).sum());
    }
    let values = jacobi_eigenvalues(m)?;
    Ok(values.iter().map(|l| l.abs()).sum())
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, rotating
/// away one upper-triangle entry at a time. Late sweeps zero entries too
/// small to ever move the diagonal, which is what keeps the iteration
/// finite where shifted QR divides by underflowed quantities.
fn jacobi_eigenvalues(mut a: DMatrix<f64>) -> Result<Vec<f64>, JcError> {
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];
    for sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].abs();
            }
        }
        if off == 0.0 {
            return Ok(d);
        }
        // Skip negligible rotations early on, then insist on all of them.
        let thresh = if sweep < 3 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n {
            for q in p + 1..n {
                let g = 100.0 * a[(p, q)].abs();
                if sweep >= 4 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    a[(p, q)] = 0.0;
                } else if a[(p, q)].abs() > thresh {
                    let h = d[q] - d[p];
                    let t = if h.abs() + g == h.abs() {
                        // The rotation angle rounds to a[(p, q)] / h; the
                        // quadratic formula would overflow theta^2.
                        a[(p, q)] / h
                    } else {
                        let theta = 0.5 * h / a[(p, q)];
                        let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                        if theta < 0.0 {
                            -t
                        } else {
                            t
                        }
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let tau = s / (1.0 + c);
                    let shift = t * a[(p, q)];
                    z[p] -= shift;
                    z[q] += shift;
                    d[p] -= shift;
                    d[q] += shift;
                    a[(p, q)] = 0.0;
                    let mut rotate = |i: usize, j: usize, k: usize, l: usize| {
                        let u = a[(i, j)];
                        let v = a[(k, l)];
                        a[(i, j)] = u - s * (v + u * tau);
                        a[(k, l)] = v + s * (u - v * tau);
                    };
                    for j in 0..p {
                        rotate(j, p, j, q);
                    }
                    for j in p + 1..q {
                        rotate(p, j, j, q);
                    }
                    for j in q + 1..n {
                        rotate(p, j, q, j);
                    }
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }
    Err(JcError::SolveFailed(
        "Jacobi eigenvalue iteration did not converge in 100 sweeps".into(),
    ))
}

/// Reads flat populations 1-based; anything past the slice is the
/// truncated tail and reads as zero.
fn padded(p: &[f64], k: usize) -> f64 {
    if (1..=p.len()).contains(&k) {
        p[k - 1]
    } else {
        0.0
    }
}

/// Resonant trace-norm resummation for the regime where every block
/// carries a negative eigenvalue (g/T beyond the first-block root of the
/// condition function). Cross-check for the block route.
pub fn resonant_trace_norm_all_negative(p: &[f64]) -> f64 {
    let mut total = 0.5 * (padded(p, 3) + padded(p, 2));
    let d0 = 2.0 * padded(p, 1) - (padded(p, 5) + padded(p, 4));
    let s0 = padded(p, 3) - padded(p, 2);
    total += 0.5 * (d0 * d0 + 4.0 * s0 * s0).sqrt();
    let mut n = 1;
    while 2 * n <= p.len() {
        let d = (padded(p, 2 * n + 1) + padded(p, 2 * n))
            - (padded(p, 2 * n + 5) + padded(p, 2 * n + 4));
        let s = padded(p, 2 * n + 3) - padded(p, 2 * n + 2);
        total += 0.5 * (d * d + 4.0 * s * s).sqrt();
        n += 1;
    }
    total
}

/// Resonant trace-norm resummation split at the crossover index: blocks up
/// to n0 resum into plain populations plus a boundary term, blocks above
/// contribute root terms. Cross-check for the block route when
/// 0 < g/T < the first-block root.
pub fn resonant_trace_norm_split(p: &[f64], n0: usize) -> f64 {
    let mut total = 0.0;
    for k in 1..=(2 * n0 + 1) {
        total += padded(p, k);
    }
    total += 0.5
        * (padded(p, 2 * n0 + 5)
            + padded(p, 2 * n0 + 4)
            + padded(p, 2 * n0 + 3)
            + padded(p, 2 * n0 + 2));
    let mut n = n0 + 1;
    while 2 * n <= p.len() {
        let d = (padded(p, 2 * n + 1) + padded(p, 2 * n))
            - (padded(p, 2 * n + 5) + padded(p, 2 * n + 4));
        let s = padded(p, 2 * n + 3) - padded(p, 2 * n + 2);
        total += 0.5 * (d * d + 4.0 * s * s).sqrt();
        n += 1;
    }
    total
}

/// Resonant trace norm of a state truncated at `n_max` when the crossover
/// lies beyond the cut, so only the boundary block contributes a root
/// term. The cross term under the root enters unscaled here, where the
/// block route carries a factor 4; for converged tails the two agree to
/// below 1e-15, which is what this form is kept to cross-check.
pub fn resonant_trace_norm_truncated(p: &[f64], n_max: usize) -> f64 {
    assert!(n_max >= 2, "truncated form needs n_max >= 2");
    let mut doubled = 0.0;
    for k in 1..=(2 * n_max + 1) {
        doubled += 2.0 * padded(p, k);
    }
    let pp = padded(p, 2 * n_max - 1) + padded(p, 2 * n_max - 2);
    let pd = padded(p, 2 * n_max + 1) - padded(p, 2 * n_max);
    0.5 * (doubled - pp + (pp * pp + pd * pd).sqrt())
}
