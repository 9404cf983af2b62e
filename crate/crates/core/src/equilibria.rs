//! Nash equilibria over the continuous two-parameter strategy space.
//!
//! Best responses are found by exhaustive evaluation on a [`StrategyGrid`]
//! followed by derivative-free coordinate descent. A grid profile is an ε-NE
//! when neither player's refined best response beats their current payoff by
//! more than ε. Qualifying profiles are grouped into connected components and
//! labelled point / curve / region.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{expected_payoffs, expected_payoffs_array, GameSpec, PayoffPair};
use crate::error::{Error, Result};
use crate::ewl::{
    closed_form_cc_trig, closed_form_qc_trig, has_closed_form, play, prepare_input,
    CorrelationKind, InputBits, OutcomeDistribution, StrategyParams, StrategyTrig,
};
use crate::qcore::DensityMatrix;

/// Smallest coordinate-descent step.
pub const REFINE_MIN_STEP: f64 = 1e-6;
/// Default ε for confirming claimed equilibria.
pub const DEFAULT_EPSILON: f64 = 1e-3;
/// Coarser ε for showing that no equilibrium exists.
pub const NONEXISTENCE_EPSILON: f64 = 0.05;

/// Uniform grid over `θ ∈ [0, π]` × `φ ∈ [0, π/2]`, endpoints included.
/// Points are numbered θ-major: `index = i_theta * phi_count + i_phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyGrid {
    pub theta_count: usize,
    pub phi_count: usize,
}

impl Default for StrategyGrid {
    fn default() -> Self {
        Self {
            theta_count: 65,
            phi_count: 33,
        }
    }
}

impl StrategyGrid {
    pub fn new(theta_count: usize, phi_count: usize) -> Result<Self> {
        if theta_count < 2 || phi_count < 2 {
            return Err(Error::InvalidGrid(format!(
                "{theta_count}x{phi_count}: both counts must be at least 2"
            )));
        }
        Ok(Self {
            theta_count,
            phi_count,
        })
    }

    pub fn len(&self) -> usize {
        self.theta_count * self.phi_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn theta_step(&self) -> f64 {
        PI / (self.theta_count - 1) as f64
    }

    pub fn phi_step(&self) -> f64 {
        FRAC_PI_2 / (self.phi_count - 1) as f64
    }

    pub fn coords(&self, index: usize) -> (usize, usize) {
        (index / self.phi_count, index % self.phi_count)
    }

    pub fn index(&self, i_theta: usize, i_phi: usize) -> usize {
        i_theta * self.phi_count + i_phi
    }

    pub fn point(&self, index: usize) -> StrategyParams {
        let (it, ip) = self.coords(index);
        // pin the endpoints exactly
        let theta = if it + 1 == self.theta_count {
            PI
        } else {
            it as f64 * self.theta_step()
        };
        let phi = if ip + 1 == self.phi_count {
            FRAC_PI_2
        } else {
            ip as f64 * self.phi_step()
        };
        StrategyParams { theta, phi }
    }

    pub fn points(&self) -> Vec<StrategyParams> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    /// Grid index of `s` if it lies on the grid.
    pub fn locate(&self, s: StrategyParams) -> Option<usize> {
        let it = (s.theta / self.theta_step()).round();
        let ip = (s.phi / self.phi_step()).round();
        let idx = self.index(it as usize, ip as usize);
        let p = self.point(idx);
        ((p.theta - s.theta).abs() < 1e-12 && (p.phi - s.phi).abs() < 1e-12).then_some(idx)
    }

    /// Same span with every gap halved.
    pub fn doubled(&self) -> Self {
        Self {
            theta_count: 2 * self.theta_count - 1,
            phi_count: 2 * self.phi_count - 1,
        }
    }

    /// Neighbours of a point under 4-adjacency in the (θ, φ) plane.
    fn neighbours4(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let (it, ip) = self.coords(index);
        let moves: [(isize, isize); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];
        moves.into_iter().filter_map(move |(dt, dp)| {
            let t = it as isize + dt;
            let p = ip as isize + dp;
            (t >= 0 && p >= 0 && (t as usize) < self.theta_count && (p as usize) < self.phi_count)
                .then(|| self.index(t as usize, p as usize))
        })
    }
}

impl FromStr for StrategyGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (t, p) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| Error::InvalidGrid(format!("expected TxP, got `{s}`")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidGrid(format!("bad count `{v}`")))
        };
        Self::new(parse(t)?, parse(p)?)
    }
}

impl fmt::Display for StrategyGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.theta_count, self.phi_count)
    }
}

/// A strategy pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub alice: StrategyParams,
    pub bob: StrategyParams,
}

impl Profile {
    pub fn new(alice: StrategyParams, bob: StrategyParams) -> Self {
        Self { alice, bob }
    }

    pub fn swapped(&self) -> Self {
        Self {
            alice: self.bob,
            bob: self.alice,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.alice, self.bob)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Alice,
    Bob,
}

/// How outcome distributions are computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Closed forms where they apply (`|00⟩` with QC or CC), simulation otherwise.
    #[default]
    Auto,
    /// Always the density-matrix simulation.
    Simulation,
}

/// A game played under one correlation kind and input, ready to evaluate.
#[derive(Clone, Debug)]
pub struct GameSetup {
    game: GameSpec,
    kind: CorrelationKind,
    bits: InputBits,
    route: Route,
    rho_in: DensityMatrix,
}

impl GameSetup {
    pub fn new(game: GameSpec, kind: CorrelationKind) -> Self {
        Self {
            rho_in: prepare_input(kind, InputBits::ZERO_ZERO),
            game,
            kind,
            bits: InputBits::ZERO_ZERO,
            route: Route::Auto,
        }
    }

    pub fn with_bits(mut self, bits: InputBits) -> Self {
        self.bits = bits;
        self.rho_in = prepare_input(self.kind, bits);
        self
    }

    pub fn with_route(mut self, route: Route) -> Self {
        self.route = route;
        self
    }

    pub fn game(&self) -> &GameSpec {
        &self.game
    }

    pub fn kind(&self) -> CorrelationKind {
        self.kind
    }

    pub fn bits(&self) -> InputBits {
        self.bits
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn uses_closed_form(&self) -> bool {
        self.route == Route::Auto && has_closed_form(self.kind, self.bits)
    }

    pub fn distribution(&self, alice: StrategyParams, bob: StrategyParams) -> OutcomeDistribution {
        if self.uses_closed_form() {
            OutcomeDistribution::from_array_unchecked(self.closed_form(&alice.into(), &bob.into()))
        } else {
            play(&self.rho_in, alice, bob).expect("4x4 input and in-range strategies")
        }
    }

    pub fn payoffs(&self, alice: StrategyParams, bob: StrategyParams) -> PayoffPair {
        expected_payoffs(&self.game, &self.distribution(alice, bob))
    }

    pub fn profile_payoffs(&self, p: &Profile) -> PayoffPair {
        self.payoffs(p.alice, p.bob)
    }

    pub fn payoff_of(&self, player: Player, alice: StrategyParams, bob: StrategyParams) -> f64 {
        let p = self.payoffs(alice, bob);
        match player {
            Player::Alice => p.alice,
            Player::Bob => p.bob,
        }
    }

    fn closed_form(&self, a: &StrategyTrig, b: &StrategyTrig) -> [f64; 4] {
        match self.kind {
            CorrelationKind::Quantum => closed_form_qc_trig(a, b),
            _ => closed_form_cc_trig(a, b),
        }
    }
}

/// Evaluates payoffs on grid points, reusing precomputed trigonometry when the
/// closed forms apply.
struct GridEvaluator<'a> {
    setup: &'a GameSetup,
    points: Vec<StrategyParams>,
    trig: Option<Vec<StrategyTrig>>,
}

impl<'a> GridEvaluator<'a> {
    fn new(setup: &'a GameSetup, grid: &StrategyGrid) -> Self {
        let points = grid.points();
        let trig = setup
            .uses_closed_form()
            .then(|| points.iter().map(|&p| StrategyTrig::from(p)).collect());
        Self {
            setup,
            points,
            trig,
        }
    }

    fn payoffs(&self, i: usize, j: usize) -> PayoffPair {
        match &self.trig {
            Some(t) => {
                expected_payoffs_array(&self.setup.game, &self.setup.closed_form(&t[i], &t[j]))
            }
            None => self.setup.payoffs(self.points[i], self.points[j]),
        }
    }
}

/// A best response and the payoff it earns.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestResponse {
    pub strategy: StrategyParams,
    pub value: f64,
}

/// Coordinate ascent from `start`, halving the steps from the grid spacing
/// down to [`REFINE_MIN_STEP`]. Moves are tried in the fixed order
/// θ+, θ−, φ+, φ−; only strict improvements are accepted.
fn refine(
    objective: impl Fn(StrategyParams) -> f64,
    start: StrategyParams,
    start_value: f64,
    grid: &StrategyGrid,
) -> BestResponse {
    let mut best = start;
    let mut value = start_value;
    let mut h_theta = grid.theta_step();
    let mut h_phi = grid.phi_step();
    loop {
        let mut sweeps = 0;
        loop {
            let mut improved = false;
            let moves = [(h_theta, 0.0), (-h_theta, 0.0), (0.0, h_phi), (0.0, -h_phi)];
            for (dt, dp) in moves {
                let cand = StrategyParams::clamped(best.theta + dt, best.phi + dp);
                if cand == best {
                    continue;
                }
                let v = objective(cand);
                if v > value {
                    best = cand;
                    value = v;
                    improved = true;
                }
            }
            sweeps += 1;
            if !improved || sweeps >= 10_000 {
                break;
            }
        }
        if h_theta.max(h_phi) <= REFINE_MIN_STEP {
            break;
        }
        h_theta = (h_theta / 2.0).max(REFINE_MIN_STEP);
        h_phi = (h_phi / 2.0).max(REFINE_MIN_STEP);
    }
    BestResponse {
        strategy: best,
        value,
    }
}

fn respond(
    setup: &GameSetup,
    player: Player,
    opponent: StrategyParams,
    start: StrategyParams,
    start_value: f64,
    grid: &StrategyGrid,
) -> BestResponse {
    match player {
        Player::Alice => refine(
            |s| setup.payoffs(s, opponent).alice,
            start,
            start_value,
            grid,
        ),
        Player::Bob => refine(|s| setup.payoffs(opponent, s).bob, start, start_value, grid),
    }
}

/// Best response of `player` to a fixed opponent strategy.
///
/// Grid maximum first (ties go to the smallest θ, then the smallest φ), then
/// coordinate-descent refinement.
pub fn best_response(
    setup: &GameSetup,
    opponent: StrategyParams,
    player: Player,
    grid: &StrategyGrid,
) -> BestResponse {
    let mut start = grid.point(0);
    let mut start_value = f64::NEG_INFINITY;
    for s in grid.points() {
        let v = match player {
            Player::Alice => setup.payoffs(s, opponent).alice,
            Player::Bob => setup.payoffs(opponent, s).bob,
        };
        if v > start_value {
            start = s;
            start_value = v;
        }
    }
    respond(setup, player, opponent, start, start_value, grid)
}

/// Refined best-response values against every grid strategy of the opponent.
struct ResponseTable {
    /// `alice[j]`: Alice's best response to Bob's grid point `j`.
    alice: Vec<BestResponse>,
    /// `bob[i]`: Bob's best response to Alice's grid point `i`.
    bob: Vec<BestResponse>,
}

#[derive(Clone, Copy)]
struct Argmax {
    value: f64,
    index: usize,
}

impl Argmax {
    const NONE: Self = Self {
        value: f64::NEG_INFINITY,
        index: usize::MAX,
    };

    /// Larger value wins; equal values go to the smaller index. Associative
    /// and commutative, so the parallel reduction is order independent.
    fn merge(self, other: Self) -> Self {
        if other.value > self.value || (other.value == self.value && other.index < self.index) {
            other
        } else {
            self
        }
    }
}

fn response_table(eval: &GridEvaluator, setup: &GameSetup, grid: &StrategyGrid) -> ResponseTable {
    let n = eval.points.len();
    let (alice_cols, bob_rows) = (0..n)
        .into_par_iter()
        .fold(
            || (vec![Argmax::NONE; n], Vec::new()),
            |(mut cols, mut rows), i| {
                let mut row_best = Argmax::NONE;
                for (j, col) in cols.iter_mut().enumerate() {
                    let p = eval.payoffs(i, j);
                    *col = col.merge(Argmax {
                        value: p.alice,
                        index: i,
                    });
                    row_best = row_best.merge(Argmax {
                        value: p.bob,
                        index: j,
                    });
                }
                rows.push((i, row_best));
                (cols, rows)
            },
        )
        .reduce(
            || (vec![Argmax::NONE; n], Vec::new()),
            |(mut ca, mut ra), (cb, rb)| {
                for (x, y) in ca.iter_mut().zip(cb) {
                    *x = x.merge(y);
                }
                ra.extend(rb);
                (ca, ra)
            },
        );
    let mut bob_rows = bob_rows;
    bob_rows.sort_by_key(|(i, _)| *i);

    let pts = &eval.points;
    let alice = alice_cols
        .par_iter()
        .enumerate()
        .map(|(j, best)| {
            respond(
                setup,
                Player::Alice,
                pts[j],
                pts[best.index],
                best.value,
                grid,
            )
        })
        .collect();
    let bob = bob_rows
        .par_iter()
        .map(|(i, best)| {
            respond(
                setup,
                Player::Bob,
                pts[*i],
                pts[best.index],
                best.value,
                grid,
            )
        })
        .collect();
    ResponseTable { alice, bob }
}

/// One exhaustively evaluated grid profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandscapeRow {
    pub profile: Profile,
    pub payoffs: PayoffPair,
}

/// Payoffs at every grid profile, Alice's index major.
pub fn landscape(setup: &GameSetup, grid: &StrategyGrid) -> Vec<LandscapeRow> {
    let eval = GridEvaluator::new(setup, grid);
    let n = grid.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let eval = &eval;
            (0..n).map(move |j| LandscapeRow {
                profile: Profile::new(eval.points[i], eval.points[j]),
                payoffs: eval.payoffs(i, j),
            })
        })
        .collect()
}

/// Formats with 12 significant digits, trailing zeros trimmed.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            x.to_string()
        };
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-5..12).contains(&magnitude) {
        let decimals = (11 - magnitude).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

pub const LANDSCAPE_HEADER: [&str; 6] = ["thetaA", "phiA", "thetaB", "phiB", "payoffA", "payoffB"];

/// Writes landscape rows as CSV with the standard header.
pub fn write_landscape_csv<W: Write>(rows: &[LandscapeRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(LANDSCAPE_HEADER).map_err(io)?;
    for r in rows {
        let p = &r.profile;
        w.write_record(
            [
                p.alice.theta,
                p.alice.phi,
                p.bob.theta,
                p.bob.phi,
                r.payoffs.alice,
                r.payoffs.bob,
            ]
            .map(format_sig12),
        )
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Point,
    Curve,
    Region,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Point => "point",
            Self::Curve => "curve",
            Self::Region => "region",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PayoffRange {
    pub min: PayoffPair,
    pub max: PayoffPair,
}

/// A connected set of ε-NE grid profiles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NEComponent {
    /// Grid index pairs `(alice, bob)`, sorted.
    #[serde(skip)]
    pub members: Vec<(usize, usize)>,
    pub member_count: usize,
    /// Members lying on the half-resolution sub-lattice.
    pub coarse_member_count: usize,
    pub representative: Profile,
    pub representative_payoffs: PayoffPair,
    pub payoff_range: PayoffRange,
    pub geometry: Geometry,
    /// `log2(member_count / coarse_member_count)`, the growth exponent behind
    /// the geometry label.
    pub growth_exponent: f64,
    pub max_unilateral_gain: f64,
    /// Contains a profile where both players sit on a classical corner θ ∈ {0, π}.
    pub focal: bool,
}

impl NEComponent {
    pub fn member_profiles(&self, grid: &StrategyGrid) -> Vec<Profile> {
        self.members
            .iter()
            .map(|&(i, j)| Profile::new(grid.point(i), grid.point(j)))
            .collect()
    }

    pub fn contains(&self, grid: &StrategyGrid, p: &Profile) -> bool {
        match (grid.locate(p.alice), grid.locate(p.bob)) {
            (Some(i), Some(j)) => self.members.binary_search(&(i, j)).is_ok(),
            _ => false,
        }
    }
}

/// Result of an ε-NE scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeScan {
    pub game: String,
    pub correlation: CorrelationKind,
    pub bits: InputBits,
    pub grid: StrategyGrid,
    /// Resolution used for the growth exponent in geometry labels.
    pub coarse_grid: StrategyGrid,
    pub epsilon: f64,
    pub components: Vec<NEComponent>,
}

impl NeScan {
    pub fn points(&self) -> impl Iterator<Item = &NEComponent> {
        self.components
            .iter()
            .filter(|c| c.geometry == Geometry::Point)
    }

    /// Component containing the given grid profile.
    pub fn component_containing(&self, p: &Profile) -> Option<&NEComponent> {
        self.components.iter().find(|c| c.contains(&self.grid, p))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scan serializes")
    }
}

struct Flagged {
    alice: usize,
    bob: usize,
    gain: f64,
    payoffs: PayoffPair,
}

/// Scans every grid profile for ε-Nash equilibria.
pub fn epsilon_ne_scan(setup: &GameSetup, grid: &StrategyGrid, epsilon: f64) -> Result<NeScan> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let eval = GridEvaluator::new(setup, grid);
    let table = response_table(&eval, setup, grid);
    let n = grid.len();

    let flagged: Vec<Flagged> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let (eval, table) = (&eval, &table);
            (0..n).filter_map(move |j| {
                let payoffs = eval.payoffs(i, j);
                let gain_a = (table.alice[j].value - payoffs.alice).max(0.0);
                let gain_b = (table.bob[i].value - payoffs.bob).max(0.0);
                let gain = gain_a.max(gain_b);
                (gain <= epsilon).then_some(Flagged {
                    alice: i,
                    bob: j,
                    gain,
                    payoffs,
                })
            })
        })
        .collect();

    let lookup: HashMap<(usize, usize), usize> = flagged
        .iter()
        .enumerate()
        .map(|(k, f)| ((f.alice, f.bob), k))
        .collect();
    let mut seen = vec![false; flagged.len()];
    let mut components = Vec::new();
    for start in 0..flagged.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut members = Vec::new();
        while let Some(k) = queue.pop_front() {
            members.push(k);
            let f = &flagged[k];
            let alice_moves = std::iter::once(f.alice).chain(grid.neighbours4(f.alice));
            for a in alice_moves {
                for b in std::iter::once(f.bob).chain(grid.neighbours4(f.bob)) {
                    if let Some(&m) = lookup.get(&(a, b)) {
                        if !seen[m] {
                            seen[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        members.sort_unstable();
        components.push(build_component(setup, grid, &flagged, &members));
    }

    Ok(NeScan {
        game: setup.game.name.clone(),
        correlation: setup.kind,
        bits: setup.bits,
        grid: *grid,
        coarse_grid: StrategyGrid {
            theta_count: grid.theta_count.div_ceil(2),
            phi_count: grid.phi_count.div_ceil(2),
        },
        epsilon,
        components,
    })
}

fn build_component(
    setup: &GameSetup,
    grid: &StrategyGrid,
    flagged: &[Flagged],
    members: &[usize],
) -> NEComponent {
    let rep = members
        .iter()
        .copied()
        .reduce(|best, k| {
            if flagged[k].gain < flagged[best].gain {
                k
            } else {
                best
            }
        })
        .expect("component is non-empty");
    let mut min = PayoffPair::new(f64::INFINITY, f64::INFINITY);
    let mut max = PayoffPair::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut max_gain: f64 = 0.0;
    let mut focal = false;
    let corner = |idx: usize| {
        let (it, _) = grid.coords(idx);
        it == 0 || it + 1 == grid.theta_count
    };
    for &k in members {
        let f = &flagged[k];
        min.alice = min.alice.min(f.payoffs.alice);
        min.bob = min.bob.min(f.payoffs.bob);
        max.alice = max.alice.max(f.payoffs.alice);
        max.bob = max.bob.max(f.payoffs.bob);
        max_gain = max_gain.max(f.gain);
        focal |= corner(f.alice) && corner(f.bob);
    }
    let cells: Vec<(usize, usize)> = members
        .iter()
        .map(|&k| (flagged[k].alice, flagged[k].bob))
        .collect();
    let (geometry, coarse, growth) = classify(grid, &cells);
    let representative = Profile::new(grid.point(flagged[rep].alice), grid.point(flagged[rep].bob));
    NEComponent {
        member_count: cells.len(),
        members: cells,
        coarse_member_count: coarse,
        representative,
        representative_payoffs: setup.profile_payoffs(&representative),
        payoff_range: PayoffRange { min, max },
        geometry,
        growth_exponent: growth,
        max_unilateral_gain: max_gain,
        focal,
    }
}

/// Point if the members fit in one lattice cell. Otherwise compare the member
/// count with the count on the even-index sub-lattice (the grid at half
/// resolution): a one-parameter family roughly doubles, anything fuller grows
/// faster.
fn classify(grid: &StrategyGrid, cells: &[(usize, usize)]) -> (Geometry, usize, f64) {
    let coords: Vec<[usize; 4]> = cells
        .iter()
        .map(|&(i, j)| {
            let (ta, pa) = grid.coords(i);
            let (tb, pb) = grid.coords(j);
            [ta, pa, tb, pb]
        })
        .collect();
    let coarse = coords
        .iter()
        .filter(|c| c.iter().all(|x| x % 2 == 0))
        .count();
    let growth = (cells.len() as f64 / coarse.max(1) as f64).log2();
    let single_cell = (0..4).all(|d| {
        let lo = coords.iter().map(|c| c[d]).min().unwrap_or(0);
        let hi = coords.iter().map(|c| c[d]).max().unwrap_or(0);
        hi - lo <= 1
    });
    let geometry = if single_cell {
        Geometry::Point
    } else if growth < 1.5 {
        Geometry::Curve
    } else {
        Geometry::Region
    };
    (geometry, coarse, growth)
}

/// Direct check of one profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub profile: Profile,
    pub payoffs: PayoffPair,
    pub alice_best: BestResponse,
    pub bob_best: BestResponse,
    pub alice_gain: f64,
    pub bob_gain: f64,
    pub max_unilateral_gain: f64,
    pub epsilon: f64,
    pub is_ne: bool,
}

/// Computes both players' refined best responses against `profile`.
pub fn verify_candidate(
    setup: &GameSetup,
    profile: &Profile,
    epsilon: f64,
    grid: &StrategyGrid,
) -> Result<Verification> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let payoffs = setup.profile_payoffs(profile);
    let alice_best = best_response(setup, profile.bob, Player::Alice, grid);
    let bob_best = best_response(setup, profile.alice, Player::Bob, grid);
    let alice_gain = (alice_best.value - payoffs.alice).max(0.0);
    let bob_gain = (bob_best.value - payoffs.bob).max(0.0);
    let max_unilateral_gain = alice_gain.max(bob_gain);
    Ok(Verification {
        profile: *profile,
        payoffs,
        alice_best,
        bob_best,
        alice_gain,
        bob_gain,
        max_unilateral_gain,
        epsilon,
        is_ne: max_unilateral_gain <= epsilon,
    })
}

/// Security levels of a zero-sum game, in Alice's payoff.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimaxReport {
    /// `max_A min_B $_A`.
    pub maximin: f64,
    /// `min_B max_A $_A`.
    pub minimax: f64,
    pub gap: f64,
    pub maximin_strategy: StrategyParams,
    pub minimax_strategy: StrategyParams,
}

fn require_zero_sum(g: &GameSpec) -> Result<()> {
    if g.flags.zero_sum || g.is_zero_sum_table() {
        Ok(())
    } else {
        Err(Error::NotZeroSum(g.name.clone()))
    }
}

/// Maximin and minimax over the grid, with the inner optimization refined.
pub fn minimax(setup: &GameSetup, grid: &StrategyGrid) -> Result<MinimaxReport> {
    require_zero_sum(&setup.game)?;
    let eval = GridEvaluator::new(setup, grid);
    let table = response_table(&eval, setup, grid);
    let pts = &eval.points;
    // Bob maximizing his payoff is Alice's worst case.
    let (maximin_idx, maximin) = table
        .bob
        .iter()
        .enumerate()
        .map(|(i, r)| (i, -r.value))
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, x| if x.1 > acc.1 { x } else { acc },
        );
    let (minimax_idx, minimax) = table
        .alice
        .iter()
        .enumerate()
        .map(|(j, r)| (j, r.value))
        .fold(
            (0, f64::INFINITY),
            |acc, x| if x.1 < acc.1 { x } else { acc },
        );
    Ok(MinimaxReport {
        maximin,
        minimax,
        gap: minimax - maximin,
        maximin_strategy: pts[maximin_idx],
        minimax_strategy: pts[minimax_idx],
    })
}

/// Maximin and minimax over explicit finite strategy sets, no refinement.
pub fn minimax_over(
    setup: &GameSetup,
    alice: &[StrategyParams],
    bob: &[StrategyParams],
) -> Result<MinimaxReport> {
    require_zero_sum(&setup.game)?;
    if alice.is_empty() || bob.is_empty() {
        return Err(Error::InvalidGrid("empty strategy set".into()));
    }
    let pay = |a: StrategyParams, b: StrategyParams| setup.payoffs(a, b).alice;
    let mut maximin = (f64::NEG_INFINITY, alice[0]);
    for &a in alice {
        let worst = bob.iter().map(|&b| pay(a, b)).fold(f64::INFINITY, f64::min);
        if worst > maximin.0 {
            maximin = (worst, a);
        }
    }
    let mut minimax = (f64::INFINITY, bob[0]);
    for &b in bob {
        let best = alice
            .iter()
            .map(|&a| pay(a, b))
            .fold(f64::NEG_INFINITY, f64::max);
        if best < minimax.0 {
            minimax = (best, b);
        }
    }
    Ok(MinimaxReport {
        maximin: maximin.0,
        minimax: minimax.0,
        gap: minimax.0 - maximin.0,
        maximin_strategy: maximin.1,
        minimax_strategy: minimax.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn setup(name: &str, kind: CorrelationKind) -> GameSetup {
        GameSetup::new(builtin(name).unwrap(), kind)
    }

    fn sp(theta: f64, phi: f64) -> StrategyParams {
        StrategyParams::new(theta, phi).unwrap()
    }

    #[test]
    fn grid_basics() {
        let g: StrategyGrid = "65x33".parse().unwrap();
        assert_eq!(g, StrategyGrid::default());
        assert_eq!(g.len(), 2145);
        assert_eq!(g.point(0), sp(0.0, 0.0));
        assert_eq!(g.point(g.len() - 1), sp(PI, FRAC_PI_2));
        assert_eq!(g.locate(StrategyParams::I_SIGMA_Z), Some(32));
        assert_eq!(g.locate(sp(0.1, 0.0)), None);
        assert!("1x5".parse::<StrategyGrid>().is_err());
        assert!("65-33".parse::<StrategyGrid>().is_err());
        assert_eq!(g.doubled(), StrategyGrid::new(129, 65).unwrap());
        let corner: Vec<usize> = g.neighbours4(0).collect();
        assert_eq!(corner, vec![33, 1]);
    }

    #[test]
    fn landscape_rows_and_values() {
        let grid = StrategyGrid::new(3, 3).unwrap();
        let rows = landscape(&setup("PD", CorrelationKind::Quantum), &grid);
        assert_eq!(rows.len(), 81);
        let isz = StrategyParams::I_SIGMA_Z;
        let row = rows
            .iter()
            .find(|r| r.profile == Profile::new(isz, isz))
            .unwrap();
        assert!(row.payoffs.max_abs_diff(&PayoffPair::new(3.0, 3.0)) < 1e-12);

        // classical corners reproduce the payoff table
        let pd = builtin("PD").unwrap();
        let corners = [StrategyParams::IDENTITY, StrategyParams::I_SIGMA_Y];
        for (j, a) in corners.iter().enumerate() {
            for (l, b) in corners.iter().enumerate() {
                let row = rows
                    .iter()
                    .find(|r| r.profile == Profile::new(*a, *b))
                    .unwrap();
                assert!(row.payoffs.max_abs_diff(&pd.payoffs[2 * j + l]) < 1e-12);
            }
        }

        for kind in [
            CorrelationKind::Quantum,
            CorrelationKind::Classical,
            CorrelationKind::None,
        ] {
            for r in landscape(&setup("MP", kind), &grid) {
                assert!(r.payoffs.sum().abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(PI), "3.14159265359");
        assert_eq!(format_sig12(-2.5), "-2.5");
        assert_eq!(format_sig12(3.0), "3");
        assert_eq!(format_sig12(1.2345e-9), "1.23450000000e-9");
        assert!((format_sig12(FRAC_PI_2).parse::<f64>().unwrap() - FRAC_PI_2).abs() < 1e-11);
    }

    #[test]
    fn best_response_examples() {
        let grid = StrategyGrid::default();
        let pd = setup("PD", CorrelationKind::Quantum);
        let br = best_response(&pd, StrategyParams::I_SIGMA_Z, Player::Bob, &grid);
        assert!((br.value - 3.0).abs() < 1e-9);
        assert_eq!(br.strategy, StrategyParams::I_SIGMA_Z);

        let mp = setup("MP", CorrelationKind::Classical);
        for phi in [0.0, 0.7, FRAC_PI_2] {
            let br = best_response(&mp, sp(FRAC_PI_2, phi), Player::Bob, &grid);
            assert!(br.value.abs() < 1e-9);
        }
    }

    #[test]
    fn refinement_improves_on_the_grid() {
        // Off-grid optimum: Alice's best reply in SD under CC to a Bob strategy
        // whose optimum falls between grid points.
        let grid = StrategyGrid::new(5, 3).unwrap();
        let s = setup("SD", CorrelationKind::Quantum);
        let opponent = sp(0.37, 0.91);
        let coarse = grid
            .points()
            .into_iter()
            .map(|p| s.payoffs(p, opponent).alice)
            .fold(f64::NEG_INFINITY, f64::max);
        let br = best_response(&s, opponent, Player::Alice, &grid);
        assert!(br.value >= coarse);
        let fine = StrategyGrid::new(401, 201).unwrap();
        let dense = fine
            .points()
            .into_iter()
            .map(|p| s.payoffs(p, opponent).alice)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(br.value >= dense - 1e-6, "{} vs {}", br.value, dense);
    }

    #[test]
    fn verify_known_profiles() {
        let grid = StrategyGrid::default();
        let isz = StrategyParams::I_SIGMA_Z;
        let sd = setup("SD", CorrelationKind::Quantum).with_route(Route::Simulation);
        let v = verify_candidate(&sd, &Profile::new(isz, isz), 1e-3, &grid).unwrap();
        assert!(v.is_ne);
        assert!(v.payoffs.max_abs_diff(&PayoffPair::new(3.0, 2.0)) < 1e-9);

        let pd = setup("PD", CorrelationKind::Classical);
        let p = Profile::new(sp(0.0, 0.9), StrategyParams::I_SIGMA_Y);
        let v = verify_candidate(&pd, &p, 1e-3, &grid).unwrap();
        assert!(v.is_ne);
        assert!(v.payoffs.max_abs_diff(&PayoffPair::new(2.5, 2.5)) < 1e-9);

        // mutual defection is no equilibrium once quantum moves are allowed
        let dd = Profile::new(StrategyParams::I_SIGMA_Y, StrategyParams::I_SIGMA_Y);
        let v = verify_candidate(&setup("PD", CorrelationKind::Quantum), &dd, 1e-3, &grid).unwrap();
        assert!(!v.is_ne);

        assert!(verify_candidate(&pd, &p, 0.0, &grid).is_err());
    }

    #[test]
    fn scan_rejects_bad_epsilon() {
        let s = setup("PD", CorrelationKind::Quantum);
        let grid = StrategyGrid::new(3, 3).unwrap();
        assert_eq!(
            epsilon_ne_scan(&s, &grid, 0.0).unwrap_err(),
            Error::InvalidEpsilon(0.0)
        );
        assert!(epsilon_ne_scan(&s, &grid, f64::NAN).is_err());
    }

    #[test]
    fn geometry_labels() {
        let grid = StrategyGrid::new(9, 9).unwrap();
        let pt = vec![
            (grid.index(2, 2), grid.index(3, 3)),
            (grid.index(2, 3), grid.index(3, 3)),
        ];
        assert_eq!(classify(&grid, &pt).0, Geometry::Point);
        let line: Vec<(usize, usize)> = (0..9)
            .map(|t| (grid.index(t, 0), grid.index(0, 0)))
            .collect();
        assert_eq!(classify(&grid, &line).0, Geometry::Curve);
        let plane: Vec<(usize, usize)> = (0..9)
            .flat_map(|t| (0..9).map(move |p| (t, p)))
            .map(|(t, p)| (grid.index(t, p), grid.index(0, 0)))
            .collect();
        assert_eq!(classify(&grid, &plane).0, Geometry::Region);
    }

    #[test]
    fn minimax_checks() {
        let grid = StrategyGrid::new(17, 9).unwrap();
        let mp_cc = setup("MP", CorrelationKind::Classical);
        let r = minimax(&mp_cc, &grid).unwrap();
        assert!(r.maximin.abs() < 1e-6 && r.minimax.abs() < 1e-6 && r.gap <= 1e-6);
        assert!(r.gap >= -1e-9);

        let mp_none = setup("MP", CorrelationKind::None);
        let corners = [StrategyParams::IDENTITY, StrategyParams::I_SIGMA_Y];
        let r = minimax_over(&mp_none, &corners, &corners).unwrap();
        assert!((r.maximin + 1.0).abs() < 1e-12 && (r.minimax - 1.0).abs() < 1e-12);

        assert_eq!(
            minimax(&setup("PD", CorrelationKind::Quantum), &grid).unwrap_err(),
            Error::NotZeroSum("PD".into())
        );
    }
}
