//! Quantum Monty Hall with three qutrit registers.
//!
//! Registers are ordered `|o⟩|b⟩|a⟩`: the door Monty opened, Bob's choice and
//! the prize door Alice placed. Basis index is `9o + 3b + a`. The game runs
//! `Ô (Î ⊗ B̂ ⊗ Â)` on the initial state and then mixes switching and staying
//! with weights `cos²γ` and `sin²γ`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{
    complete_to_unitary, random_special_unitary, tensor, CMatrix, DensityMatrix, PureState, C64,
    ONE, STRUCTURE_TOL, ZERO,
};

pub const DOORS: usize = 3;
pub const DIM: usize = DOORS * DOORS * DOORS;

pub fn basis_index(opened: usize, bob: usize, alice: usize) -> usize {
    9 * opened + 3 * bob + alice
}

fn third_door(x: usize, y: usize) -> usize {
    debug_assert!(x != y);
    3 - x - y
}

/// A 3×3 unitary acting on one qutrit register.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<[f64; 2]>>", into = "Vec<Vec<[f64; 2]>>")]
pub struct MontyOperator(CMatrix);

impl MontyOperator {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.rows() != DOORS || m.cols() != DOORS {
            return Err(Error::DimensionMismatch {
                expected: "3x3".into(),
                got: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        let deviation = m.unitarity_deviation();
        if deviation > STRUCTURE_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(CMatrix::identity(DOORS))
    }

    /// `|i⟩ → |i+1 mod 3⟩`; every diagonal entry is zero.
    pub fn cyclic() -> Self {
        Self(CMatrix::from_fn(DOORS, DOORS, |r, c| {
            if r == (c + 1) % DOORS {
                ONE
            } else {
                ZERO
            }
        }))
    }

    /// Haar-random element of SU(3).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self(random_special_unitary(DOORS, rng))
    }

    /// `identity`/`id`, `cyclic` or `fair`.
    pub fn named(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "identity" | "id" | "i" => Ok(Self::identity()),
            "cyclic" | "shift" => Ok(Self::cyclic()),
            "fair" | "h" => Ok(fair_strategy()),
            other => Err(Error::Parse(format!(
                "unknown Monty operator `{other}` (expected identity, cyclic or fair)"
            ))),
        }
    }

    /// Parses `[[[re, im], ...], ...]`.
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("Monty operator: {e}")))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn entry(&self, r: usize, c: usize) -> C64 {
        self.0[(r, c)]
    }

    /// `Σ_i |a_ii|²`.
    pub fn diagonal_weight(&self) -> f64 {
        (0..DOORS).map(|i| self.entry(i, i).norm_sqr()).sum()
    }

    /// `Σ_{i≠j} |a_ij|²`.
    pub fn off_diagonal_weight(&self) -> f64 {
        let total: f64 = (0..DOORS)
            .flat_map(|r| (0..DOORS).map(move |c| (r, c)))
            .map(|(r, c)| self.entry(r, c).norm_sqr())
            .sum();
        total - self.diagonal_weight()
    }
}

impl TryFrom<Vec<Vec<[f64; 2]>>> for MontyOperator {
    type Error = Error;

    fn try_from(rows: Vec<Vec<[f64; 2]>>) -> Result<Self> {
        if rows.len() != DOORS || rows.iter().any(|r| r.len() != DOORS) {
            return Err(Error::DimensionMismatch {
                expected: "3x3".into(),
                got: format!("{} rows", rows.len()),
            });
        }
        let entries: Vec<C64> = rows
            .iter()
            .flatten()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        Self::new(CMatrix::from_rows(DOORS, DOORS, &entries)?)
    }
}

impl From<MontyOperator> for Vec<Vec<[f64; 2]>> {
    fn from(op: MontyOperator) -> Self {
        (0..DOORS)
            .map(|r| {
                (0..DOORS)
                    .map(|c| {
                        let z = op.entry(r, c);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitialState {
    /// `|0⟩ ⊗ (1/√3) Σ_n |n n⟩`.
    #[default]
    #[serde(rename = "entangled")]
    Entangled,
    /// `|0⟩⟨0| ⊗ (1/3) Σ_n |n n⟩⟨n n|`.
    #[serde(rename = "cc")]
    ClassicalCorrelated,
    /// `|0⟩⟨0| ⊗ I/3 ⊗ I/3`: the ordinary game with independent choices.
    #[serde(rename = "uncorrelated")]
    Uncorrelated,
}

impl FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "entangled" | "qc" => Ok(Self::Entangled),
            "cc" | "classical" | "classical-correlated" => Ok(Self::ClassicalCorrelated),
            "uncorrelated" | "none" => Ok(Self::Uncorrelated),
            other => Err(Error::Parse(format!(
                "unknown initial state `{other}` (expected entangled, cc or uncorrelated)"
            ))),
        }
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Entangled => "entangled",
            Self::ClassicalCorrelated => "cc",
            Self::Uncorrelated => "uncorrelated",
        })
    }
}

/// How the switch / stay mixture is applied after the door opens.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SwitchMix {
    /// Channel with Kraus operators `{cos γ Ŝ, sin γ N̂}`.
    #[default]
    Channel,
    /// The single operator `Ŝ cos γ + N̂ sin γ`, unnormalized.
    Coherent,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MontyConfig {
    pub initial: InitialState,
    pub alice: MontyOperator,
    pub bob: MontyOperator,
    pub gamma: f64,
    #[serde(default)]
    pub mix: SwitchMix,
}

fn check_gamma(gamma: f64) -> Result<f64> {
    if !gamma.is_finite() || !(-1e-12..=FRAC_PI_2 + 1e-12).contains(&gamma) {
        return Err(Error::GammaOutOfRange(gamma));
    }
    Ok(gamma.clamp(0.0, FRAC_PI_2))
}

impl MontyConfig {
    pub fn new(
        initial: InitialState,
        alice: MontyOperator,
        bob: MontyOperator,
        gamma: f64,
    ) -> Result<Self> {
        Ok(Self {
            initial,
            alice,
            bob,
            gamma: check_gamma(gamma)?,
            mix: SwitchMix::Channel,
        })
    }

    pub fn with_mix(mut self, mix: SwitchMix) -> Self {
        self.mix = mix;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchWeight {
    pub opened: usize,
    pub bob: usize,
    pub alice: usize,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MontyResult {
    #[serde(rename = "bob_win")]
    pub bob_win_probability: f64,
    /// Final basis populations above 1e−15.
    pub branch_weights: Vec<BranchWeight>,
    pub total_weight: f64,
}

/// Monty opens a door that is neither the prize nor Bob's pick, choosing
/// evenly when both remain.
pub fn open_operator() -> CMatrix {
    let mut partial = CMatrix::zeros(DIM, DIM).inner().clone();
    for b in 0..DOORS {
        for a in 0..DOORS {
            let col = basis_index(0, b, a);
            if b != a {
                partial[(basis_index(third_door(a, b), b, a), col)] = ONE;
            } else {
                for m in (0..DOORS).filter(|&m| m != a) {
                    partial[(basis_index(m, b, a), col)] = C64::new(FRAC_1_SQRT_2, 0.0);
                }
            }
        }
    }
    complete_to_unitary(&CMatrix::from_fn(DIM, DIM, |r, c| partial[(r, c)]))
        .expect("reachable columns are orthonormal")
}

/// Bob moves to the door that is neither open nor his current pick; identity
/// when the open door coincides with his pick.
pub fn switch_operator() -> CMatrix {
    CMatrix::from_fn(DIM, DIM, |r, c| {
        let (o, b, a) = (c / 9, (c / 3) % 3, c % 3);
        let target = if o == b {
            c
        } else {
            basis_index(o, third_door(o, b), a)
        };
        if r == target {
            ONE
        } else {
            ZERO
        }
    })
}

pub fn no_switch_operator() -> CMatrix {
    CMatrix::identity(DIM)
}

pub fn initial_density(initial: InitialState) -> DensityMatrix {
    match initial {
        InitialState::Entangled => {
            let amp = C64::new(1.0 / 3f64.sqrt(), 0.0);
            let mut v = vec![ZERO; DIM];
            for n in 0..DOORS {
                v[basis_index(0, n, n)] = amp;
            }
            PureState::new(v).expect("normalized").to_density()
        }
        InitialState::ClassicalCorrelated => {
            let mut pops = vec![0.0; DIM];
            for n in 0..DOORS {
                pops[basis_index(0, n, n)] = 1.0 / 3.0;
            }
            DensityMatrix::diagonal(&pops).expect("valid populations")
        }
        InitialState::Uncorrelated => {
            let mut pops = vec![0.0; DIM];
            for b in 0..DOORS {
                for a in 0..DOORS {
                    pops[basis_index(0, b, a)] = 1.0 / 9.0;
                }
            }
            DensityMatrix::diagonal(&pops).expect("valid populations")
        }
    }
}

fn conjugate(u: &CMatrix, rho: &CMatrix) -> CMatrix {
    u * &(rho * &u.adjoint())
}

/// Runs the full game on the density matrix and reads Bob's win probability
/// (his register equal to the prize register).
pub fn play_monty(cfg: &MontyConfig) -> Result<MontyResult> {
    let gamma = check_gamma(cfg.gamma)?;
    let local = tensor(
        &CMatrix::identity(DOORS),
        &tensor(cfg.bob.matrix(), cfg.alice.matrix()),
    );
    let rho = initial_density(cfg.initial);
    let rho = conjugate(&local, rho.matrix());
    let rho = conjugate(&open_operator(), &rho);
    let (c, s) = (gamma.cos(), gamma.sin());
    let switch = switch_operator();
    let rho = match cfg.mix {
        SwitchMix::Channel => conjugate(&switch, &rho)
            .scale(C64::new(c * c, 0.0))
            .add(&rho.scale(C64::new(s * s, 0.0)))?,
        SwitchMix::Coherent => {
            let mix = switch
                .scale(C64::new(c, 0.0))
                .add(&no_switch_operator().scale(C64::new(s, 0.0)))?;
            conjugate(&mix, &rho)
        }
    };

    let mut branch_weights = Vec::new();
    let mut win = 0.0;
    let mut total = 0.0;
    for idx in 0..DIM {
        let p = rho[(idx, idx)].re;
        total += p;
        let (o, b, a) = (idx / 9, (idx / 3) % 3, idx % 3);
        if b == a {
            win += p;
        }
        if p > 1e-15 {
            branch_weights.push(BranchWeight {
                opened: o,
                bob: b,
                alice: a,
                probability: p,
            });
        }
    }
    let win = match cfg.mix {
        SwitchMix::Channel => {
            if win < -STRUCTURE_TOL {
                return Err(Error::NegativeProbability(win));
            }
            win.clamp(0.0, 1.0)
        }
        SwitchMix::Coherent => win,
    };
    Ok(MontyResult {
        bob_win_probability: win,
        branch_weights,
        total_weight: total,
    })
}

/// Bob's win probability in closed form for an entangled start and a
/// classical (identity) Bob:
/// `(1/3) sin²γ Σ_i |a_ii|² + (1/3) cos²γ Σ_{i≠j} |a_ij|²`.
pub fn bob_payoff_closed_form(alice: &MontyOperator, gamma: f64) -> Result<f64> {
    let gamma = check_gamma(gamma)?;
    let (s2, c2) = (gamma.sin().powi(2), gamma.cos().powi(2));
    Ok((s2 * alice.diagonal_weight() + c2 * alice.off_diagonal_weight()) / 3.0)
}

/// A strategy for Alice that pins Bob's win probability at ½ for every γ.
///
/// Circulant `F diag(1, e^{it}, e^{-it}) F†` with `cos t = (3/√2 − 1)/2`, so
/// every diagonal entry equals `1/√2` and the determinant is one.
pub fn fair_strategy() -> MontyOperator {
    let t = ((3.0 * FRAC_1_SQRT_2 - 1.0) / 2.0).acos();
    let omega = |k: usize| C64::from_polar(1.0, 2.0 * PI * k as f64 / 3.0);
    let f = CMatrix::from_fn(DOORS, DOORS, |r, c| omega(r * c) / 3f64.sqrt());
    let lambda = CMatrix::diagonal(&[ONE, C64::from_polar(1.0, t), C64::from_polar(1.0, -t)]);
    let u = &(&f * &lambda) * &f.adjoint();
    MontyOperator::new(u).expect("circulant of unit eigenvalues is unitary")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn run(initial: InitialState, alice: MontyOperator, gamma: f64) -> f64 {
        let cfg = MontyConfig::new(initial, alice, MontyOperator::identity(), gamma).unwrap();
        play_monty(&cfg).unwrap().bob_win_probability
    }

    #[test]
    fn operators_are_unitary() {
        assert!(open_operator().is_unitary(STRUCTURE_TOL));
        assert!(switch_operator().is_unitary(STRUCTURE_TOL));
        assert!(fair_strategy().matrix().is_unitary(STRUCTURE_TOL));
        assert!(MontyOperator::cyclic().matrix().is_unitary(STRUCTURE_TOL));
    }

    #[test]
    fn open_operator_examples() {
        let o = open_operator();
        // |0,1,2⟩: door 0 is the only one left to open
        let col = o.column(basis_index(0, 1, 2));
        assert!((col[basis_index(0, 1, 2)] - ONE).norm() < 1e-12);
        // |0,2,2⟩ → (|0,2,2⟩ + |1,2,2⟩)/√2
        let col = o.column(basis_index(0, 2, 2));
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        assert!((col[basis_index(0, 2, 2)] - h).norm() < 1e-12);
        assert!((col[basis_index(1, 2, 2)] - h).norm() < 1e-12);
        let rest: f64 = col.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0;
        assert!(rest.abs() < 1e-12);
    }

    #[test]
    fn switch_is_an_involution_off_the_diagonal() {
        let s = switch_operator();
        let col = s.column(basis_index(2, 1, 0));
        assert!((col[basis_index(2, 0, 0)] - ONE).norm() < 1e-12);
        let s2 = &s * &s;
        for idx in 0..DIM {
            let (o, b) = (idx / 9, (idx / 3) % 3);
            if o != b {
                assert!((s2.column(idx)[idx] - ONE).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn identity_strategies_follow_sin_squared() {
        for k in 0..=10 {
            let gamma = FRAC_PI_2 * k as f64 / 10.0;
            let win = run(InitialState::Entangled, MontyOperator::identity(), gamma);
            assert!((win - gamma.sin().powi(2)).abs() < 1e-12);
        }
        assert!(
            (run(
                InitialState::Entangled,
                MontyOperator::identity(),
                FRAC_PI_2
            ) - 1.0)
                .abs()
                < 1e-12
        );
        assert!(run(InitialState::Entangled, MontyOperator::identity(), 0.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        assert!(
            (bob_payoff_closed_form(&MontyOperator::identity(), FRAC_PI_2).unwrap() - 1.0).abs()
                < 1e-12
        );
        assert!(
            (bob_payoff_closed_form(&MontyOperator::cyclic(), 0.0).unwrap() - 1.0).abs() < 1e-12
        );
        let fair = fair_strategy();
        for i in 0..DOORS {
            assert!((fair.entry(i, i).norm_sqr() - 0.5).abs() < 1e-12);
        }
        assert!((fair.matrix().determinant() - ONE).norm() < 1e-12);
        for gamma in [0.0, 0.4, FRAC_PI_2] {
            assert!((bob_payoff_closed_form(&fair, gamma).unwrap() - 0.5).abs() < 1e-12);
        }
        assert_eq!(
            bob_payoff_closed_form(&fair, 2.0).unwrap_err(),
            Error::GammaOutOfRange(2.0)
        );
    }

    #[test]
    fn uncorrelated_baseline() {
        let id = MontyOperator::identity();
        assert!((run(InitialState::Uncorrelated, id.clone(), 0.0) - 2.0 / 3.0).abs() < 1e-12);
        assert!((run(InitialState::Uncorrelated, id, FRAC_PI_2) - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_simulation_for_random_alice() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let a = MontyOperator::random(&mut rng);
            for k in 0..=10 {
                let gamma = FRAC_PI_2 * k as f64 / 10.0;
                let expected = bob_payoff_closed_form(&a, gamma).unwrap();
                let ent = run(InitialState::Entangled, a.clone(), gamma);
                let cc = run(InitialState::ClassicalCorrelated, a.clone(), gamma);
                assert!((ent - expected).abs() < 1e-10);
                assert!((cc - ent).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn coherent_mix_differs_for_entangled_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = MontyOperator::random(&mut rng);
        let gamma = FRAC_PI_2 / 2.0;
        let cfg = MontyConfig::new(
            InitialState::Entangled,
            a.clone(),
            MontyOperator::identity(),
            gamma,
        )
        .unwrap()
        .with_mix(SwitchMix::Coherent);
        let coherent = play_monty(&cfg).unwrap();
        let expected = bob_payoff_closed_form(&a, gamma).unwrap();
        assert!((coherent.bob_win_probability - expected).abs() > 1e-6);
        let channel = play_monty(&cfg.with_mix(SwitchMix::Channel)).unwrap();
        assert!((channel.total_weight - 1.0).abs() < 1e-12);
    }

    #[test]
    fn operator_json_round_trip_and_rejection() {
        let fair = fair_strategy();
        let json = serde_json::to_string(&fair).unwrap();
        let back = MontyOperator::from_json(&json).unwrap();
        assert!(back.matrix().max_abs_diff(fair.matrix()) < 1e-15);
        let bad = "[[[1,0],[1,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]";
        assert!(matches!(
            MontyOperator::from_json(bad).unwrap_err(),
            Error::Parse(_)
        ));
        assert!(MontyOperator::named("fair").is_ok());
        assert!(MontyOperator::named("hadamard").is_err());
    }

    #[test]
    fn config_rejects_gamma_out_of_range() {
        let id = MontyOperator::identity();
        assert!(MontyConfig::new(InitialState::Entangled, id.clone(), id.clone(), -0.1).is_err());
        assert!(MontyConfig::new(InitialState::Entangled, id.clone(), id, 1.6).is_err());
    }
}
