//! The quantized 2×2 game protocol.
//!
//! A referee entangles `|f⟩|g⟩` with `Ĵ`, each player applies a local
//! two-parameter operator `U(θ, φ)`, the referee undoes `Ĵ` and measures in
//! the computational basis. Outcome `n = 2j + l` carries Alice's bit `j` and
//! Bob's bit `l`. Besides the simulation path there are closed forms for the
//! `|00⟩` input under quantum and classical correlation.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{
    basis_probability, dephase, evolve, tensor, CMatrix, DensityMatrix, PureState, C64, I, ONE,
    STRUCTURE_TOL, ZERO,
};

/// Slack allowed on the angle bounds before an input counts as out of range.
const ANGLE_SLACK: f64 = 1e-12;

/// One player's point `(θ, φ)` with `θ ∈ [0, π]`, `φ ∈ [0, π/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyParams {
    pub theta: f64,
    pub phi: f64,
}

impl StrategyParams {
    /// `σ₀`, the first classical strategy.
    pub const IDENTITY: Self = Self {
        theta: 0.0,
        phi: 0.0,
    };
    /// `iσ_y`, the bit flip; the second classical strategy.
    pub const I_SIGMA_Y: Self = Self {
        theta: PI,
        phi: 0.0,
    };
    /// `iσ_z`.
    pub const I_SIGMA_Z: Self = Self {
        theta: 0.0,
        phi: FRAC_PI_2,
    };

    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        let theta = check_angle("theta", theta, PI)?;
        let phi = check_angle("phi", phi, FRAC_PI_2)?;
        Ok(Self { theta, phi })
    }

    /// Clamps both angles into range. Used by the refinement steps.
    pub fn clamped(theta: f64, phi: f64) -> Self {
        Self {
            theta: theta.clamp(0.0, PI),
            phi: phi.clamp(0.0, FRAC_PI_2),
        }
    }

    /// Canonical named profiles: `id`, `isy`, `isz` (plus a few spellings).
    pub fn named(name: &str) -> Option<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "id" | "identity" | "s0" | "sigma0" => Some(Self::IDENTITY),
            "isy" | "isigmay" | "flip" => Some(Self::I_SIGMA_Y),
            "isz" | "isigmaz" => Some(Self::I_SIGMA_Z),
            _ => None,
        }
    }

    /// Name of the matching canonical profile, if any.
    pub fn alias(&self) -> Option<&'static str> {
        let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
        if close(self.theta, PI) {
            // U(π, φ) = iσ_y for every φ
            Some("isy")
        } else if close(self.theta, 0.0) && close(self.phi, 0.0) {
            Some("id")
        } else if close(self.theta, 0.0) && close(self.phi, FRAC_PI_2) {
            Some("isz")
        } else {
            None
        }
    }
}

fn check_angle(name: &str, value: f64, max: f64) -> Result<f64> {
    if !value.is_finite() || value < -ANGLE_SLACK || value > max + ANGLE_SLACK {
        return Err(Error::StrategyOutOfRange(format!(
            "{name} = {value} not in [0, {max:.6}]"
        )));
    }
    Ok(value.clamp(0.0, max))
}

/// Parses an angle in radians; also accepts `pi`, `pi/N` and `K*pi/N`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let t = s.trim().to_ascii_lowercase();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let bad = || Error::Parse(format!("cannot parse angle `{s}`"));
    let (numerator, denominator) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().map_err(|_| bad())?),
        None => (t.as_str(), 1.0),
    };
    let factor = match numerator {
        "pi" => 1.0,
        _ => numerator
            .strip_suffix("pi")
            .map(|k| k.trim_end_matches('*').trim())
            .and_then(|k| k.parse::<f64>().ok())
            .ok_or_else(bad)?,
    };
    Ok(factor * PI / denominator)
}

impl FromStr for StrategyParams {
    type Err = Error;

    /// `id` / `isy` / `isz`, or `theta:phi`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(named) = Self::named(s) {
            return Ok(named);
        }
        let (t, p) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected alias or theta:phi, got `{s}`")))?;
        Self::new(parse_angle(t)?, parse_angle(p)?)
    }
}

impl fmt::Display for StrategyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alias() {
            Some(a) => write!(f, "{a}"),
            None => write!(f, "(θ={:.6}, φ={:.6})", self.theta, self.phi),
        }
    }
}

/// Referee's product input `|f⟩|g⟩`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InputBits {
    pub f: bool,
    pub g: bool,
}

impl InputBits {
    pub const ZERO_ZERO: Self = Self { f: false, g: false };
    pub const ONE_ONE: Self = Self { f: true, g: true };

    pub fn new(f: u8, g: u8) -> Result<Self> {
        if f > 1 || g > 1 {
            return Err(Error::Parse(format!(
                "input bits must be 0 or 1, got {f}{g}"
            )));
        }
        Ok(Self {
            f: f == 1,
            g: g == 1,
        })
    }

    /// Basis index `2f + g`.
    pub fn index(self) -> usize {
        2 * usize::from(self.f) + usize::from(self.g)
    }

    pub fn all() -> [Self; 4] {
        [
            Self { f: false, g: false },
            Self { f: false, g: true },
            Self { f: true, g: false },
            Self { f: true, g: true },
        ]
    }
}

impl FromStr for InputBits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "00" => Ok(Self::new(0, 0)?),
            "01" => Ok(Self::new(0, 1)?),
            "10" => Ok(Self::new(1, 0)?),
            "11" => Ok(Self::new(1, 1)?),
            other => Err(Error::Parse(format!(
                "input bits must be 00|01|10|11, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for InputBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", u8::from(self.f), u8::from(self.g))
    }
}

/// What the referee hands to the players.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationKind {
    /// Maximally entangled `Ĵ|fg⟩`.
    Quantum,
    /// The entangled state with all computational-basis coherences removed.
    Classical,
    /// Plain product input `|fg⟩`.
    None,
}

impl CorrelationKind {
    pub fn short_name(self) -> &'static str {
        match self {
            Self::Quantum => "qc",
            Self::Classical => "cc",
            Self::None => "none",
        }
    }
}

impl FromStr for CorrelationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "qc" | "quantum" => Ok(Self::Quantum),
            "cc" | "classical" => Ok(Self::Classical),
            "none" | "product" => Ok(Self::None),
            other => Err(Error::Parse(format!(
                "correlation must be qc|cc|none, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for CorrelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// Probabilities of the four referee outcomes, indexed by `n = 2j + l`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    pub p00: f64,
    pub p01: f64,
    pub p10: f64,
    pub p11: f64,
}

impl OutcomeDistribution {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        let sum: f64 = p.iter().sum();
        if p.iter()
            .any(|x| !x.is_finite() || *x < -STRUCTURE_TOL || *x > 1.0 + STRUCTURE_TOL)
            || (sum - 1.0).abs() > STRUCTURE_TOL
        {
            return Err(Error::InvalidDistribution(format!("{p:?} (sum {sum})")));
        }
        let c = |x: f64| x.clamp(0.0, 1.0);
        Ok(Self {
            p00: c(p[0]),
            p01: c(p[1]),
            p10: c(p[2]),
            p11: c(p[3]),
        })
    }

    /// Deterministic outcome `n`.
    pub fn point(n: usize) -> Self {
        let mut p = [0.0; 4];
        p[n] = 1.0;
        Self::from_array_unchecked(p)
    }

    pub(crate) fn from_array_unchecked(p: [f64; 4]) -> Self {
        Self {
            p00: p[0],
            p01: p[1],
            p10: p[2],
            p11: p[3],
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.p00, self.p01, self.p10, self.p11]
    }

    pub fn total(&self) -> f64 {
        self.as_array().iter().sum()
    }

    /// Swaps the roles of the two players (P01 ↔ P10).
    pub fn swapped(&self) -> Self {
        Self {
            p01: self.p10,
            p10: self.p01,
            ..*self
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `U(θ, φ) = [[e^{iφ} cos θ/2, sin θ/2], [−sin θ/2, e^{−iφ} cos θ/2]]`.
///
/// The lower-left sign makes the family special unitary.
pub fn strategy_unitary(s: StrategyParams) -> CMatrix {
    let (sh, ch) = (s.theta / 2.0).sin_cos();
    let phase = C64::from_polar(1.0, s.phi);
    CMatrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) => phase * ch,
        (0, 1) => C64::new(sh, 0.0),
        (1, 0) => C64::new(-sh, 0.0),
        _ => phase.conj() * ch,
    })
}

/// `Ĵ|f⟩|g⟩ = (|fg⟩ + i(−1)^{f+g}|f̄ḡ⟩)/√2`.
pub fn entangler(bits: InputBits) -> PureState {
    let mut amps = vec![ZERO; 4];
    let n = bits.index();
    let sign = if bits.f ^ bits.g { -1.0 } else { 1.0 };
    amps[n] = C64::new(FRAC_1_SQRT_2, 0.0);
    amps[3 - n] = I * sign * FRAC_1_SQRT_2;
    PureState::new(amps).expect("entangled pair is normalized")
}

/// The 4×4 operator `Ĵ`, assembled column by column from [`entangler`].
pub fn entangler_matrix() -> CMatrix {
    let cols: Vec<PureState> = InputBits::all().into_iter().map(entangler).collect();
    CMatrix::from_fn(4, 4, |r, c| cols[c].amplitudes()[r])
}

/// Initial shared state for the given correlation kind.
pub fn prepare_input(kind: CorrelationKind, bits: InputBits) -> DensityMatrix {
    match kind {
        CorrelationKind::Quantum => entangler(bits).to_density(),
        CorrelationKind::Classical => dephase(&entangler(bits).to_density(), 1.0)
            .expect("full-strength dephasing is in range"),
        CorrelationKind::None => PureState::basis(4, bits.index())
            .expect("index < 4")
            .to_density(),
    }
}

/// Runs the protocol on `rho_in` by direct density-matrix simulation.
pub fn play(
    rho_in: &DensityMatrix,
    alice: StrategyParams,
    bob: StrategyParams,
) -> Result<OutcomeDistribution> {
    if rho_in.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: "4x4 density matrix".into(),
            got: format!("{0}x{0}", rho_in.dim()),
        });
    }
    let local = tensor(&strategy_unitary(alice), &strategy_unitary(bob));
    let measure_frame = entangler_matrix().adjoint() * &local;
    let out = evolve(rho_in, &measure_frame)?;
    let mut p = [0.0; 4];
    for (n, slot) in p.iter_mut().enumerate() {
        *slot = basis_probability(&out, n)?;
    }
    OutcomeDistribution::new(p)
}

/// Trigonometric values of one strategy, precomputed for the closed forms.
#[derive(Clone, Copy, Debug)]
pub(crate) struct StrategyTrig {
    cos_half: f64,
    sin_half: f64,
    cos_theta: f64,
    sin_theta: f64,
    cos_phi: f64,
    sin_phi: f64,
}

impl From<StrategyParams> for StrategyTrig {
    fn from(s: StrategyParams) -> Self {
        let (sin_half, cos_half) = (s.theta / 2.0).sin_cos();
        let (sin_theta, cos_theta) = s.theta.sin_cos();
        let (sin_phi, cos_phi) = s.phi.sin_cos();
        Self {
            cos_half,
            sin_half,
            cos_theta,
            sin_theta,
            cos_phi,
            sin_phi,
        }
    }
}

pub(crate) fn closed_form_qc_trig(a: &StrategyTrig, b: &StrategyTrig) -> [f64; 4] {
    let cos_sum = a.cos_phi * b.cos_phi - a.sin_phi * b.sin_phi;
    let sin_sum = a.sin_phi * b.cos_phi + a.cos_phi * b.sin_phi;
    let x = a.sin_half * b.cos_half;
    let y = a.cos_half * b.sin_half;
    let cc = a.cos_half * b.cos_half;
    let sq = |v: f64| v * v;
    [
        sq(cc * cos_sum),
        sq(x * b.sin_phi - y * a.cos_phi),
        sq(x * b.cos_phi - y * a.sin_phi),
        sq(a.sin_half * b.sin_half + cc * sin_sum),
    ]
}

pub(crate) fn closed_form_cc_trig(a: &StrategyTrig, b: &StrategyTrig) -> [f64; 4] {
    let c = a.cos_theta * b.cos_theta;
    let s = a.sin_theta * b.sin_theta;
    let sin_sum = a.sin_phi * b.cos_phi + a.cos_phi * b.sin_phi;
    let sin_diff = a.sin_phi * b.cos_phi - a.cos_phi * b.sin_phi;
    [
        0.25 * (1.0 + c - s * sin_sum),
        0.25 * (1.0 - c + s * sin_diff),
        0.25 * (1.0 - c - s * sin_diff),
        0.25 * (1.0 + c + s * sin_sum),
    ]
}

/// Closed-form outcome probabilities for the entangled `|00⟩` input.
pub fn closed_form_qc(alice: StrategyParams, bob: StrategyParams) -> OutcomeDistribution {
    OutcomeDistribution::from_array_unchecked(closed_form_qc_trig(&alice.into(), &bob.into()))
}

/// Closed-form outcome probabilities for the dephased `|00⟩` input
/// `½(|00⟩⟨00| + |11⟩⟨11|)`.
pub fn closed_form_cc(alice: StrategyParams, bob: StrategyParams) -> OutcomeDistribution {
    OutcomeDistribution::from_array_unchecked(closed_form_cc_trig(&alice.into(), &bob.into()))
}

/// Whether a closed form covers this input.
pub fn has_closed_form(kind: CorrelationKind, bits: InputBits) -> bool {
    bits == InputBits::ZERO_ZERO && kind != CorrelationKind::None
}

/// `σ₀`, `iσ_y` and `iσ_z` as matrices, for comparisons in tests and reports.
pub fn named_operator(name: &str) -> Option<CMatrix> {
    match name {
        "id" => Some(CMatrix::identity(2)),
        "isy" => Some(CMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => ONE,
            (1, 0) => -ONE,
            _ => ZERO,
        })),
        "isz" => Some(CMatrix::diagonal(&[I, -I])),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{ORACLE_TOL, STRUCTURE_TOL};
    use proptest::prelude::*;

    fn sp(theta: f64, phi: f64) -> StrategyParams {
        StrategyParams::new(theta, phi).unwrap()
    }

    #[test]
    fn strategy_unitary_named_points() {
        let id = strategy_unitary(sp(0.0, 0.0));
        assert!(id.max_abs_diff(&CMatrix::identity(2)) < 1e-15);
        let flip = strategy_unitary(sp(PI, 0.0));
        assert!(flip.max_abs_diff(&named_operator("isy").unwrap()) < 1e-15);
        let isz = strategy_unitary(sp(0.0, FRAC_PI_2));
        assert!(isz.max_abs_diff(&named_operator("isz").unwrap()) < 1e-15);
    }

    #[test]
    fn strategy_out_of_range() {
        assert!(StrategyParams::new(3.2, 0.0).is_err());
        assert!(StrategyParams::new(0.0, 1.6).is_err());
        assert!(StrategyParams::new(-0.01, 0.0).is_err());
        assert!(StrategyParams::new(f64::NAN, 0.0).is_err());
        assert!(StrategyParams::new(PI, FRAC_PI_2).is_ok());
    }

    #[test]
    fn angle_parsing() {
        assert_eq!(parse_angle("1.5").unwrap(), 1.5);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/2").unwrap(), FRAC_PI_2);
        assert!((parse_angle("3*pi/4").unwrap() - 0.75 * PI).abs() < 1e-15);
        assert!(parse_angle("tau").is_err());
        assert_eq!(
            "isz".parse::<StrategyParams>().unwrap(),
            StrategyParams::I_SIGMA_Z
        );
        assert_eq!(
            "pi:0".parse::<StrategyParams>().unwrap(),
            StrategyParams::I_SIGMA_Y
        );
    }

    #[test]
    fn entangler_states() {
        let s = FRAC_1_SQRT_2;
        let e00 = entangler(InputBits::ZERO_ZERO);
        assert_eq!(
            e00.amplitudes(),
            &[C64::new(s, 0.0), ZERO, ZERO, C64::new(0.0, s)]
        );
        let e11 = entangler(InputBits::ONE_ONE);
        assert_eq!(
            e11.amplitudes(),
            &[C64::new(0.0, s), ZERO, ZERO, C64::new(s, 0.0)]
        );
        assert!(entangler_matrix().is_unitary(STRUCTURE_TOL));
    }

    #[test]
    fn prepared_inputs() {
        let cc = prepare_input(CorrelationKind::Classical, InputBits::ZERO_ZERO);
        let expected = DensityMatrix::diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(cc.matrix().max_abs_diff(expected.matrix()) < 1e-15);

        let none = prepare_input(CorrelationKind::None, "01".parse().unwrap());
        assert_eq!(none.populations(), vec![0.0, 1.0, 0.0, 0.0]);

        for bits in InputBits::all() {
            let q = prepare_input(CorrelationKind::Quantum, bits);
            let c = prepare_input(CorrelationKind::Classical, bits);
            assert_eq!(dephase(&q, 1.0).unwrap(), c);
        }
    }

    #[test]
    fn play_examples() {
        let qc = prepare_input(CorrelationKind::Quantum, InputBits::ZERO_ZERO);
        let d = play(&qc, StrategyParams::I_SIGMA_Z, StrategyParams::I_SIGMA_Z).unwrap();
        assert!((d.p00 - 1.0).abs() < 1e-12);
        let d = play(&qc, StrategyParams::IDENTITY, StrategyParams::IDENTITY).unwrap();
        assert!((d.p00 - 1.0).abs() < 1e-12);

        let cc = prepare_input(CorrelationKind::Classical, InputBits::ZERO_ZERO);
        let d = play(&cc, StrategyParams::IDENTITY, StrategyParams::IDENTITY).unwrap();
        assert!((d.p00 - 0.5).abs() < 1e-12 && (d.p11 - 0.5).abs() < 1e-12);
        assert!(d.p01.abs() < 1e-12 && d.p10.abs() < 1e-12);
    }

    #[test]
    fn play_rejects_wrong_dimension() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(play(&rho, StrategyParams::IDENTITY, StrategyParams::IDENTITY).is_err());
    }

    #[test]
    fn closed_form_qc_examples() {
        let flip = StrategyParams::I_SIGMA_Y;
        let id = StrategyParams::IDENTITY;
        assert!((closed_form_qc(flip, flip).p11 - 1.0).abs() < 1e-15);
        assert!((closed_form_qc(flip, id).p10 - 1.0).abs() < 1e-15);
        let quarter = sp(0.0, PI / 4.0);
        let d = closed_form_qc(quarter, quarter);
        assert!(d.p00.abs() < 1e-15);
        assert!((d.p11 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_cc_examples() {
        for phi in [0.0, 0.3, FRAC_PI_2] {
            let d = closed_form_cc(sp(0.0, phi), sp(0.0, phi));
            assert!(
                d.max_abs_diff(&OutcomeDistribution::new([0.5, 0.0, 0.0, 0.5]).unwrap()) < 1e-15
            );
        }
        let d = closed_form_cc(sp(FRAC_PI_2, 0.0), sp(FRAC_PI_2, 0.0));
        assert!(d.max_abs_diff(&OutcomeDistribution::new([0.25; 4]).unwrap()) < 1e-15);
        let d = closed_form_cc(sp(0.0, 1.1), StrategyParams::I_SIGMA_Y);
        assert!(d.max_abs_diff(&OutcomeDistribution::new([0.0, 0.5, 0.5, 0.0]).unwrap()) < 1e-15);
    }

    #[test]
    fn classical_embedding() {
        // θ = 0 plays the first classical strategy, θ = π the second
        let corners = [
            (StrategyParams::IDENTITY, 0usize),
            (StrategyParams::I_SIGMA_Y, 1),
        ];
        let qc = prepare_input(CorrelationKind::Quantum, InputBits::ZERO_ZERO);
        for (a, j) in corners {
            for (b, l) in corners {
                let d = play(&qc, a, b).unwrap();
                let expected = OutcomeDistribution::point(2 * j + l);
                assert!(d.max_abs_diff(&expected) < 1e-12, "{a} {b}: {d:?}");
                assert!(closed_form_qc(a, b).max_abs_diff(&expected) < 1e-15);
            }
        }
    }

    #[test]
    fn cc_distribution_ignores_phase_at_the_poles() {
        let bob = sp(1.0, 0.4);
        for theta in [0.0, PI] {
            let reference = closed_form_cc(sp(theta, 0.0), bob);
            for k in 0..=32 {
                let phi = FRAC_PI_2 * k as f64 / 32.0;
                let d = closed_form_cc(sp(theta, phi), bob);
                assert!(d.max_abs_diff(&reference) < 1e-15);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn unitary_with_unit_determinant(theta in 0.0..=PI, phi in 0.0..=FRAC_PI_2) {
            let u = strategy_unitary(sp(theta, phi));
            prop_assert!(u.is_unitary(STRUCTURE_TOL));
            prop_assert!((u.determinant() - ONE).norm() <= STRUCTURE_TOL);
        }

        #[test]
        fn closed_forms_match_simulation(
            ta in 0.0..=PI, pa in 0.0..=FRAC_PI_2, tb in 0.0..=PI, pb in 0.0..=FRAC_PI_2,
        ) {
            let (a, b) = (sp(ta, pa), sp(tb, pb));
            let qc = prepare_input(CorrelationKind::Quantum, InputBits::ZERO_ZERO);
            let cc = prepare_input(CorrelationKind::Classical, InputBits::ZERO_ZERO);
            let sim_q = play(&qc, a, b).unwrap();
            let sim_c = play(&cc, a, b).unwrap();
            prop_assert!(closed_form_qc(a, b).max_abs_diff(&sim_q) <= ORACLE_TOL);
            prop_assert!(closed_form_cc(a, b).max_abs_diff(&sim_c) <= ORACLE_TOL);
            prop_assert!((closed_form_qc(a, b).total() - 1.0).abs() <= STRUCTURE_TOL);
            prop_assert!((closed_form_cc(a, b).total() - 1.0).abs() <= STRUCTURE_TOL);
        }
    }
}
