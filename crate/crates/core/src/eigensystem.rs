//! Exact eigensystem of the Jaynes-Cummings Hamiltonian
//!
//!   H = (omega0/2) sigma_z + omega_c a'a + g (a'sigma- + sigma+ a)
//!
//! in excitation-number subspaces. The total excitation N = a'a + sigma+sigma-
//! commutes with H, so apart from the ground state |g,0> the spectrum splits
//! into 2x2 blocks spanned by |e,n-1> and |g,n>.

use serde::{Deserialize, Serialize};

use crate::error::JcError;

/// Hamiltonian parameters, all in units of the TLS splitting omega0
/// (so omega0 = 1 by convention; the detuning omega0 - omega_c is always
/// derived, never stored).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JCParams {
    /// TLS transition frequency.
    pub omega0: f64,
    /// Field mode frequency.
    pub omega_c: f64,
    /// TLS-field coupling strength.
    pub g: f64,
}

impl JCParams {
    pub fn new(omega0: f64, omega_c: f64, g: f64) -> Result<Self, JcError> {
        let p = JCParams { omega0, omega_c, g };
        p.validate()?;
        Ok(p)
    }

    /// Resonant parameters omega0 = omega_c = 1 with coupling `g`.
    pub fn resonant(g: f64) -> Result<Self, JcError> {
        JCParams::new(1.0, 1.0, g)
    }

    pub fn validate(&self) -> Result<(), JcError> {
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return Err(JcError::InvalidParams(format!(
                "omega0 must be positive and finite, got {}",
                self.omega0
            )));
        }
        if !(self.omega_c > 0.0 && self.omega_c.is_finite()) {
            return Err(JcError::InvalidParams(format!(
                "omega_c must be positive and finite, got {}",
                self.omega_c
            )));
        }
        if !(self.g >= 0.0 && self.g.is_finite()) {
            return Err(JcError::InvalidParams(format!(
                "g must be nonnegative and finite, got {}",
                self.g
            )));
        }
        Ok(())
    }

    /// Detuning delta = omega0 - omega_c.
    pub fn detuning(&self) -> f64 {
        self.omega0 - self.omega_c
    }
}

/// Which eigenstate of an excitation subspace a level is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// The decoupled ground state |g,0> (only valid for n = 0).
    Ground,
    /// Lower dressed state of a doublet.
    Minus,
    /// Upper dressed state of a doublet.
    Plus,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::Ground => "ground",
            Branch::Minus => "minus",
            Branch::Plus => "plus",
        }
    }
}

/// One eigenstate of the JC Hamiltonian.
///
/// For n >= 1 the doublet states are superpositions of the bare states
/// |e,n-1> and |g,n> with mixing angle theta_n:
///
///   |n,+> =  cos(theta_n/2) |e,n-1> + sin(theta_n/2) |g,n>
///   |n,-> = -sin(theta_n/2) |e,n-1> + cos(theta_n/2) |g,n>
///
/// where tan(theta_n) = 2 g sqrt(n) / delta with theta_n in (0, pi),
/// exactly pi/2 on resonance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedLevel {
    /// Excitation number of the subspace.
    pub n: usize,
    pub branch: Branch,
    /// Eigenenergy in units of omega0.
    pub energy: f64,
    /// cos(theta_n/2); unused for the ground level.
    pub cos_half: f64,
    /// sin(theta_n/2); unused for the ground level.
    pub sin_half: f64,
}

impl DressedLevel {
    /// Coefficient of the bare state |e,n-1> in this eigenstate
    /// (zero for the ground level, which has no |e> content).
    pub fn amp_e(&self) -> f64 {
        match self.branch {
            Branch::Ground => 0.0,
            Branch::Plus => self.cos_half,
            Branch::Minus => -self.sin_half,
        }
    }

    /// Coefficient of the bare state |g,n> in this eigenstate.
    pub fn amp_g(&self) -> f64 {
        match self.branch {
            Branch::Ground => 1.0,
            Branch::Plus => self.sin_half,
            Branch::Minus => self.cos_half,
        }
    }
}

/// Flat 1-based level index: k = 1 is the ground state, k = 2n the lower
/// and k = 2n+1 the upper member of doublet n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LevelIndex {
    pub k: usize,
}

impl LevelIndex {
    pub fn new(k: usize) -> Result<Self, JcError> {
        if k == 0 {
            return Err(JcError::InvalidLevel("flat index starts at 1".into()));
        }
        Ok(LevelIndex { k })
    }

    /// Flat index of a labeled level.
    pub fn from_label(n: usize, branch: Branch) -> Result<Self, JcError> {
        match branch {
            Branch::Ground if n == 0 => Ok(LevelIndex { k: 1 }),
            Branch::Minus if n >= 1 => Ok(LevelIndex { k: 2 * n }),
            Branch::Plus if n >= 1 => Ok(LevelIndex { k: 2 * n + 1 }),
            _ => Err(JcError::InvalidLevel(format!(
                "no level with n = {n} and branch {}",
                branch.label()
            ))),
        }
    }

    /// (excitation number, branch) of this flat index.
    pub fn label(&self) -> (usize, Branch) {
        match self.k {
            1 => (0, Branch::Ground),
            k if k % 2 == 0 => (k / 2, Branch::Minus),
            k => (k / 2, Branch::Plus),
        }
    }

    /// Zero-based position in population vectors and rate matrices.
    pub fn pos(&self) -> usize {
        self.k - 1
    }
}

/// Generalized Rabi splitting Omega_n = sqrt(delta^2 + 4 g^2 n) of doublet
/// n >= 1; the vacuum subspace has no doublet, so n = 0 is rejected.
pub fn rabi_frequency(params: &JCParams, n: usize) -> Result<f64, JcError> {
    params.validate()?;
    if n == 0 {
        return Err(JcError::InvalidLevel(
            "no Rabi doublet in the vacuum subspace (n = 0)".into(),
        ));
    }
    let delta = params.detuning();
    Ok((delta * delta + 4.0 * params.g * params.g * n as f64).sqrt())
}

/// Construct a single dressed level.
///
/// Valid requests are (n = 0, ground) and (n >= 1, plus/minus). Doublet
/// energies are omega_c (n - 1/2) +- Omega_n / 2 and the ground energy is
/// -omega0/2.
pub fn eigen_level(params: &JCParams, n: usize, branch: Branch) -> Result<DressedLevel, JcError> {
    params.validate()?;
    match branch {
        Branch::Ground => {
            if n != 0 {
                return Err(JcError::InvalidLevel(format!(
                    "ground branch only exists at n = 0, got n = {n}"
                )));
            }
            Ok(DressedLevel {
                n: 0,
                branch,
                energy: -params.omega0 / 2.0,
                cos_half: 0.0,
                sin_half: 1.0,
            })
        }
        Branch::Minus | Branch::Plus => {
            if n == 0 {
                return Err(JcError::InvalidLevel(
                    "doublet branches need n >= 1".into(),
                ));
            }
            let omega_n = rabi_frequency(params, n)?;
            let delta = params.detuning();
            // atan2 keeps theta in (0, pi) for g > 0 and gives exactly
            // pi/2 on resonance, avoiding the tan inversion singularity.
            let theta = f64::atan2(2.0 * params.g * (n as f64).sqrt(), delta);
            let half = theta / 2.0;
            let center = params.omega_c * (n as f64 - 0.5);
            let energy = match branch {
                Branch::Plus => center + omega_n / 2.0,
                Branch::Minus => center - omega_n / 2.0,
                Branch::Ground => unreachable!(),
            };
            Ok(DressedLevel {
                n,
                branch,
                energy,
                cos_half: half.cos(),
                sin_half: half.sin(),
            })
        }
    }
}

/// All 2 n_d + 1 levels of subspaces 0..=n_d in flat order.
///
/// The flat order follows the label rule (ground, then minus/plus per
/// doublet), which coincides with increasing energy for weak coupling.
///
/// # Panics
///
/// For g < omega_c / 2 the energies are expected to be nondecreasing in
/// the flat index; a violation (possible close to that bound at higher
/// excitation) panics rather than silently re-sorting. For g >= omega_c/2
/// label order is kept without the check.
pub fn enumerate_levels(
    params: &JCParams,
    n_d: usize,
) -> Result<Vec<(LevelIndex, DressedLevel)>, JcError> {
    params.validate()?;
    if n_d < 1 {
        return Err(JcError::InvalidParams(
            "truncation n_d must be at least 1".into(),
        ));
    }
    let mut levels = Vec::with_capacity(2 * n_d + 1);
    levels.push((LevelIndex { k: 1 }, eigen_level(params, 0, Branch::Ground)?));
    for n in 1..=n_d {
        levels.push((LevelIndex { k: 2 * n }, eigen_level(params, n, Branch::Minus)?));
        levels.push((LevelIndex { k: 2 * n + 1 }, eigen_level(params, n, Branch::Plus)?));
    }
    if params.g < params.omega_c / 2.0 {
        for w in levels.windows(2) {
            assert!(
                w[1].1.energy >= w[0].1.energy - 1e-12,
                "flat level order is not monotone in energy: E_{} = {} > E_{} = {} \
                 (g = {} is below omega_c/2, where label order should match energy order)",
                w[0].0.k,
                w[0].1.energy,
                w[1].0.k,
                w[1].1.energy,
                params.g,
            );
        }
    }
    Ok(levels)
}
