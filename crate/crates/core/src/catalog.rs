//! The six strategic games, their constraint checks, payoff evaluation and
//! classical (pure and mixed) equilibrium analysis.
//!
//! Payoff tables are indexed by the referee outcome `n = 2j + l`, where `j` is
//! Alice's strategy index and `l` is Bob's. For the symmetric dilemmas the
//! assignment of α, β, γ, δ to outcomes follows Alice's payoff functional
//! `α·P10 + β·P00 + γ·P11 + δ·P01` (PD), with γ↔δ swapped for CG and α↔β
//! swapped for SH.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ewl::OutcomeDistribution;

const TIE_TOL: f64 = 1e-12;

/// Expected payoffs of both players.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PayoffPair {
    pub alice: f64,
    pub bob: f64,
}

impl PayoffPair {
    pub fn new(alice: f64, bob: f64) -> Self {
        Self { alice, bob }
    }

    pub fn sum(&self) -> f64 {
        self.alice + self.bob
    }

    pub fn max_abs_diff(&self, other: &PayoffPair) -> f64 {
        (self.alice - other.alice)
            .abs()
            .max((self.bob - other.bob).abs())
    }
}

impl fmt::Display for PayoffPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_num(self.alice), fmt_num(self.bob))
    }
}

fn fmt_num(x: f64) -> String {
    let r = (x * 1e9).round() / 1e9;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r}")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameFlags {
    pub symmetric: bool,
    pub zero_sum: bool,
    pub discoordination: bool,
}

/// One cell of the classical payoff table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub alice: usize,
    pub bob: usize,
}

impl Cell {
    pub fn from_outcome(n: usize) -> Self {
        Self {
            alice: n / 2,
            bob: n % 2,
        }
    }

    pub fn outcome(self) -> usize {
        2 * self.alice + self.bob
    }

    pub fn all() -> [Cell; 4] {
        [0, 1, 2, 3].map(Cell::from_outcome)
    }
}

/// The symmetric dilemma families parameterized by α > β > γ > δ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DilemmaFamily {
    PrisonersDilemma,
    Chicken,
    StagHunt,
}

impl DilemmaFamily {
    /// Alice's payoff on outcomes 00, 01, 10, 11.
    fn alice_table(self, alpha: f64, beta: f64, gamma: f64, delta: f64) -> [f64; 4] {
        match self {
            Self::PrisonersDilemma => [beta, delta, alpha, gamma],
            Self::Chicken => [beta, gamma, alpha, delta],
            Self::StagHunt => [alpha, delta, beta, gamma],
        }
    }

    /// Inverse of [`Self::alice_table`]: recovers (α, β, γ, δ).
    fn parameters(self, a: [f64; 4]) -> [f64; 4] {
        match self {
            Self::PrisonersDilemma => [a[2], a[0], a[3], a[1]],
            Self::Chicken => [a[2], a[0], a[1], a[3]],
            Self::StagHunt => [a[0], a[2], a[3], a[1]],
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "pd" => Some(Self::PrisonersDilemma),
            "cg" => Some(Self::Chicken),
            "sh" => Some(Self::StagHunt),
            _ => None,
        }
    }
}

/// A 2×2 strategic game.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GameSpecJson", into = "GameSpecJson")]
pub struct GameSpec {
    pub name: String,
    /// `labels[player][strategy]`, player 0 = Alice.
    pub labels: [[String; 2]; 2],
    /// Payoff pairs indexed by outcome `n = 2j + l`.
    pub payoffs: [PayoffPair; 4],
    pub flags: GameFlags,
}

impl GameSpec {
    /// Builds a game and checks the declared flags against the table.
    pub fn new(
        name: impl Into<String>,
        labels: [[&str; 2]; 2],
        alice: [f64; 4],
        bob: [f64; 4],
        flags: GameFlags,
    ) -> Result<Self> {
        let g = Self {
            name: name.into(),
            labels: labels.map(|p| p.map(String::from)),
            payoffs: [0, 1, 2, 3].map(|n| PayoffPair::new(alice[n], bob[n])),
            flags,
        };
        g.check_flags()?;
        Ok(g)
    }

    pub fn symmetric_dilemma(
        family: DilemmaFamily,
        alpha: f64,
        beta: f64,
        gamma: f64,
        delta: f64,
    ) -> Self {
        let a = family.alice_table(alpha, beta, gamma, delta);
        // b_{jl} = a_{lj}
        let b = [a[0], a[2], a[1], a[3]];
        let (name, labels) = match family {
            DilemmaFamily::PrisonersDilemma => ("PD", [["C", "D"], ["C", "D"]]),
            DilemmaFamily::Chicken => ("CG", [["S", "C"], ["S", "C"]]),
            DilemmaFamily::StagHunt => ("SH", [["S", "R"], ["S", "R"]]),
        };
        let flags = GameFlags {
            symmetric: true,
            ..GameFlags::default()
        };
        Self::new(name, labels, a, b, flags).expect("symmetric by construction")
    }

    pub fn prisoners_dilemma(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        Self::symmetric_dilemma(DilemmaFamily::PrisonersDilemma, alpha, beta, gamma, delta)
    }

    pub fn chicken(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        Self::symmetric_dilemma(DilemmaFamily::Chicken, alpha, beta, gamma, delta)
    }

    pub fn stag_hunt(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        Self::symmetric_dilemma(DilemmaFamily::StagHunt, alpha, beta, gamma, delta)
    }

    /// Battle of the Sexes: Alice gets α at (O,O), β at (F,F); Bob the reverse.
    pub fn battle_of_sexes(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self::new(
            "BoS",
            [["O", "F"], ["O", "F"]],
            [alpha, gamma, gamma, beta],
            [beta, gamma, gamma, alpha],
            GameFlags::default(),
        )
        .expect("valid flags")
    }

    pub fn matching_pennies() -> Self {
        let a = [-1.0, 1.0, 1.0, -1.0];
        Self::new(
            "MP",
            [["H", "T"], ["H", "T"]],
            a,
            a.map(|x: f64| -x),
            GameFlags {
                zero_sum: true,
                discoordination: true,
                ..GameFlags::default()
            },
        )
        .expect("valid flags")
    }

    /// Samaritan's Dilemma: Alice aids (A) or not (N), Bob works (W) or loafs (L).
    pub fn samaritans_dilemma() -> Self {
        Self::new(
            "SD",
            [["A", "N"], ["W", "L"]],
            [3.0, -1.0, -1.0, 0.0],
            [2.0, 3.0, 1.0, 0.0],
            GameFlags {
                discoordination: true,
                ..GameFlags::default()
            },
        )
        .expect("valid flags")
    }

    pub fn alice(&self, cell: Cell) -> f64 {
        self.payoffs[cell.outcome()].alice
    }

    pub fn bob(&self, cell: Cell) -> f64 {
        self.payoffs[cell.outcome()].bob
    }

    pub fn alice_table(&self) -> [f64; 4] {
        self.payoffs.map(|p| p.alice)
    }

    pub fn bob_table(&self) -> [f64; 4] {
        self.payoffs.map(|p| p.bob)
    }

    /// `(A,B)`-style label of a cell.
    pub fn cell_label(&self, cell: Cell) -> String {
        format!(
            "({},{})",
            self.labels[0][cell.alice], self.labels[1][cell.bob]
        )
    }

    pub fn is_zero_sum_table(&self) -> bool {
        self.payoffs.iter().all(|p| p.sum().abs() <= TIE_TOL)
    }

    pub fn is_symmetric_table(&self) -> bool {
        Cell::all().iter().all(|&c| {
            let t = Cell {
                alice: c.bob,
                bob: c.alice,
            };
            (self.alice(c) - self.bob(t)).abs() <= TIE_TOL
        })
    }

    fn check_flags(&self) -> Result<()> {
        if self
            .payoffs
            .iter()
            .any(|p| !p.alice.is_finite() || !p.bob.is_finite())
        {
            return Err(Error::InvalidGame(format!(
                "{}: non-finite payoff",
                self.name
            )));
        }
        if self.flags.zero_sum && !self.is_zero_sum_table() {
            return Err(Error::InvalidGame(format!(
                "{}: flagged zero-sum but payoffs do not cancel",
                self.name
            )));
        }
        if self.flags.symmetric && !self.is_symmetric_table() {
            return Err(Error::InvalidGame(format!(
                "{}: flagged symmetric but a_jl != b_lj",
                self.name
            )));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidGame(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("game serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct GameSpecJson {
    name: String,
    labels: [[String; 2]; 2],
    payoffs: BTreeMap<String, [f64; 2]>,
    #[serde(default)]
    flags: GameFlags,
}

impl TryFrom<GameSpecJson> for GameSpec {
    type Error = Error;

    fn try_from(raw: GameSpecJson) -> Result<Self> {
        let mut payoffs = [PayoffPair::default(); 4];
        for (n, key) in ["00", "01", "10", "11"].iter().enumerate() {
            let [a, b] = raw
                .payoffs
                .get(*key)
                .ok_or_else(|| Error::InvalidGame(format!("missing payoff for outcome {key}")))?;
            payoffs[n] = PayoffPair::new(*a, *b);
        }
        if let Some(extra) = raw
            .payoffs
            .keys()
            .find(|k| !["00", "01", "10", "11"].contains(&k.as_str()))
        {
            return Err(Error::InvalidGame(format!("unknown outcome key {extra}")));
        }
        let g = GameSpec {
            name: raw.name,
            labels: raw.labels,
            payoffs,
            flags: raw.flags,
        };
        g.check_flags()?;
        Ok(g)
    }
}

impl From<GameSpec> for GameSpecJson {
    fn from(g: GameSpec) -> Self {
        let payoffs = ["00", "01", "10", "11"]
            .iter()
            .zip(g.payoffs)
            .map(|(k, p)| (k.to_string(), [p.alice, p.bob]))
            .collect();
        Self {
            name: g.name,
            labels: g.labels,
            payoffs,
            flags: g.flags,
        }
    }
}

pub const BUILTIN_NAMES: [&str; 6] = ["PD", "CG", "SH", "BoS", "MP", "SD"];

/// Default instance of a named game (case-insensitive).
pub fn builtin(name: &str) -> Result<GameSpec> {
    match name.trim().to_ascii_lowercase().as_str() {
        "pd" => Ok(GameSpec::prisoners_dilemma(5.0, 3.0, 1.0, 0.0)),
        "cg" => Ok(GameSpec::chicken(4.0, 3.0, 2.0, 1.0)),
        "sh" => Ok(GameSpec::stag_hunt(6.0, 4.0, 1.0, 0.0)),
        "bos" => Ok(GameSpec::battle_of_sexes(2.0, 1.0, 0.0)),
        "mp" => Ok(GameSpec::matching_pennies()),
        "sd" => Ok(GameSpec::samaritans_dilemma()),
        _ => Err(Error::UnknownGame(name.to_string())),
    }
}

pub fn builtins() -> Vec<GameSpec> {
    BUILTIN_NAMES
        .iter()
        .map(|n| builtin(n).expect("builtin exists"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub game: String,
    pub checks: Vec<ConstraintCheck>,
}

impl ConstraintReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&ConstraintCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Evaluates the payoff constraints that apply to `g`.
///
/// For PD/CG/SH the parameters (α, β, γ, δ) are read back from Alice's table.
/// BoS gets its own ordering check, MP the zero-sum check; SD has none.
pub fn validate(g: &GameSpec) -> ConstraintReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(ConstraintCheck {
            name: name.to_string(),
            passed,
            detail,
        })
    };

    if let Some(family) = DilemmaFamily::from_name(&g.name) {
        let [a, b, c, d] = family.parameters(g.alice_table());
        push(
            "ordering α>β>γ>δ",
            a > b && b > c && c > d,
            format!("α={a}, β={b}, γ={c}, δ={d}"),
        );
        push(
            "2β>α+δ",
            2.0 * b > a + d,
            format!("{} vs {}", 2.0 * b, a + d),
        );
        let (lhs, rhs) = (a + d, b + c);
        match family {
            DilemmaFamily::Chicken => push(
                "α+δ=β+γ",
                (lhs - rhs).abs() <= TIE_TOL,
                format!("{lhs} vs {rhs}"),
            ),
            _ => push("α+δ>β+γ", lhs > rhs, format!("{lhs} vs {rhs}")),
        }
        push(
            "symmetric table",
            g.is_symmetric_table(),
            "a_jl = b_lj".into(),
        );
    } else if g.name.eq_ignore_ascii_case("bos") {
        // Alice's (O,O) payoff is α, her (F,F) payoff β, mismatches γ
        let a = g.alice_table();
        let (alpha, beta, gamma) = (a[0], a[3], a[1]);
        push(
            "ordering α>β>γ",
            alpha > beta && beta > gamma && (a[2] - gamma).abs() <= TIE_TOL,
            format!("α={alpha}, β={beta}, γ={gamma}"),
        );
        push(
            "Bob mirrors Alice",
            g.bob_table() == [beta, gamma, gamma, alpha],
            "b = (β, γ, γ, α)".into(),
        );
    }
    if g.flags.zero_sum || g.name.eq_ignore_ascii_case("mp") {
        push("zero-sum", g.is_zero_sum_table(), "a_n + b_n = 0".into());
    }

    ConstraintReport {
        game: g.name.clone(),
        checks,
    }
}

/// `Σ_n a_n P_n`, `Σ_n b_n P_n`.
pub fn expected_payoffs(g: &GameSpec, d: &OutcomeDistribution) -> PayoffPair {
    expected_payoffs_array(g, &d.as_array())
}

pub(crate) fn expected_payoffs_array(g: &GameSpec, p: &[f64; 4]) -> PayoffPair {
    let mut out = PayoffPair::default();
    for (pay, prob) in g.payoffs.iter().zip(p) {
        out.alice += pay.alice * prob;
        out.bob += pay.bob * prob;
    }
    out
}

/// Cells that are mutual best responses; ties count as best responses.
pub fn pure_nash(g: &GameSpec) -> Vec<Cell> {
    Cell::all()
        .into_iter()
        .filter(|&c| {
            let alice_dev = Cell {
                alice: 1 - c.alice,
                ..c
            };
            let bob_dev = Cell {
                bob: 1 - c.bob,
                ..c
            };
            g.alice(c) + TIE_TOL >= g.alice(alice_dev) && g.bob(c) + TIE_TOL >= g.bob(bob_dev)
        })
        .collect()
}

/// Interior mixed equilibrium of the classical game.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixedEquilibrium {
    /// Probability that Alice plays her first strategy.
    pub p_alice: f64,
    /// Probability that Bob plays his first strategy.
    pub q_bob: f64,
    pub payoffs: PayoffPair,
}

impl MixedEquilibrium {
    pub fn distribution(&self) -> OutcomeDistribution {
        mixed_distribution(self.p_alice, self.q_bob)
    }
}

pub fn mixed_distribution(p: f64, q: f64) -> OutcomeDistribution {
    OutcomeDistribution::from_array_unchecked([
        p * q,
        p * (1.0 - q),
        (1.0 - p) * q,
        (1.0 - p) * (1.0 - q),
    ])
}

/// Solves both indifference conditions. `None` when a denominator vanishes or
/// a solution falls outside the open unit interval.
pub fn mixed_nash_2x2(g: &GameSpec) -> Option<MixedEquilibrium> {
    let a = g.alice_table();
    let b = g.bob_table();
    // Alice indifferent between her rows fixes Bob's mix q, and vice versa.
    let q_den = a[0] - a[1] - a[2] + a[3];
    let p_den = b[0] - b[2] - b[1] + b[3];
    if q_den.abs() <= TIE_TOL || p_den.abs() <= TIE_TOL {
        return None;
    }
    let q = (a[3] - a[1]) / q_den;
    let p = (b[3] - b[2]) / p_den;
    let interior = |x: f64| x > TIE_TOL && x < 1.0 - TIE_TOL;
    if !interior(p) || !interior(q) {
        return None;
    }
    let payoffs = expected_payoffs(g, &mixed_distribution(p, q));
    Some(MixedEquilibrium {
        p_alice: p,
        q_bob: q,
        payoffs,
    })
}

/// Cells not Pareto-dominated by another cell.
pub fn pareto_front(g: &GameSpec) -> Vec<Cell> {
    let cells = Cell::all();
    cells
        .into_iter()
        .filter(|&c| {
            !cells.iter().any(|&o| {
                let (ca, cb) = (g.alice(c), g.bob(c));
                let (oa, ob) = (g.alice(o), g.bob(o));
                oa >= ca && ob >= cb && (oa > ca || ob > cb)
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalAnalysis {
    pub pure_ne: Vec<Cell>,
    pub mixed_ne: Option<MixedEquilibrium>,
    pub pareto_optimal: Vec<Cell>,
}

pub fn classical_analysis(g: &GameSpec) -> ClassicalAnalysis {
    ClassicalAnalysis {
        pure_ne: pure_nash(g),
        mixed_ne: mixed_nash_2x2(g),
        pareto_optimal: pareto_front(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(g: &GameSpec, list: &[Cell]) -> Vec<String> {
        list.iter().map(|&c| g.cell_label(c)).collect()
    }

    #[test]
    fn builtin_payoff_tables() {
        let sd = builtin("SD").unwrap();
        assert_eq!(sd.alice_table(), [3.0, -1.0, -1.0, 0.0]);
        assert_eq!(sd.bob_table(), [2.0, 3.0, 1.0, 0.0]);

        let mp = builtin("mp").unwrap();
        assert!(mp.flags.zero_sum);
        assert_eq!(mp.alice_table(), [-1.0, 1.0, 1.0, -1.0]);

        let pd = builtin("PD").unwrap();
        assert_eq!(pd.alice_table(), [3.0, 0.0, 5.0, 1.0]);
        assert_eq!(pd.bob_table(), [3.0, 5.0, 0.0, 1.0]);

        assert_eq!(builtin("xx"), Err(Error::UnknownGame("xx".into())));
    }

    #[test]
    fn default_instances_satisfy_their_constraints() {
        for g in builtins() {
            let report = validate(&g);
            assert!(report.all_passed(), "{report:?}");
        }
        let pd = validate(&builtin("PD").unwrap());
        assert!(pd.check("α+δ>β+γ").unwrap().passed);
        let cg = validate(&builtin("CG").unwrap());
        assert!(cg.check("α+δ=β+γ").unwrap().passed);
        assert!(validate(&builtin("SD").unwrap()).checks.is_empty());
    }

    #[test]
    fn tampered_pd_fails_ordering() {
        let tampered = GameSpec::prisoners_dilemma(5.0, 6.0, 1.0, 0.0);
        let report = validate(&tampered);
        assert!(!report.check("ordering α>β>γ>δ").unwrap().passed);
        assert!(!report.all_passed());
    }

    #[test]
    fn payoff_expectations() {
        let pd = builtin("PD").unwrap();
        let p = expected_payoffs(&pd, &OutcomeDistribution::point(0));
        assert_eq!(p, PayoffPair::new(3.0, 3.0));

        let sd = builtin("SD").unwrap();
        let uniform = OutcomeDistribution::new([0.25; 4]).unwrap();
        let p = expected_payoffs(&sd, &uniform);
        assert!(p.max_abs_diff(&PayoffPair::new(0.25, 1.5)) < 1e-15);

        let mp = builtin("MP").unwrap();
        let d = OutcomeDistribution::new([0.1, 0.2, 0.3, 0.4]).unwrap();
        assert!(expected_payoffs(&mp, &d).sum().abs() < 1e-15);
    }

    #[test]
    fn symmetric_games_swap_payoffs_with_players() {
        let d = OutcomeDistribution::new([0.1, 0.2, 0.3, 0.4]).unwrap();
        for name in ["PD", "CG", "SH"] {
            let g = builtin(name).unwrap();
            let p = expected_payoffs(&g, &d);
            let q = expected_payoffs(&g, &d.swapped());
            assert!((p.alice - q.bob).abs() < 1e-15 && (p.bob - q.alice).abs() < 1e-15);
        }
    }

    #[test]
    fn pure_equilibria() {
        let pd = builtin("PD").unwrap();
        let ne = pure_nash(&pd);
        assert_eq!(cells(&pd, &ne), vec!["(D,D)"]);
        assert_eq!(pd.payoffs[ne[0].outcome()], PayoffPair::new(1.0, 1.0));

        let cg = builtin("CG").unwrap();
        let ne = pure_nash(&cg);
        assert_eq!(cells(&cg, &ne), vec!["(S,C)", "(C,S)"]);
        let pays: Vec<PayoffPair> = ne.iter().map(|c| cg.payoffs[c.outcome()]).collect();
        assert!(pays.contains(&PayoffPair::new(4.0, 2.0)));
        assert!(pays.contains(&PayoffPair::new(2.0, 4.0)));

        assert!(pure_nash(&builtin("MP").unwrap()).is_empty());
        assert!(pure_nash(&builtin("SD").unwrap()).is_empty());

        let sh = builtin("SH").unwrap();
        assert_eq!(cells(&sh, &pure_nash(&sh)), vec!["(S,S)", "(R,R)"]);
        let bos = builtin("BoS").unwrap();
        assert_eq!(cells(&bos, &pure_nash(&bos)), vec!["(O,O)", "(F,F)"]);
    }

    #[test]
    fn pure_equilibria_agree_with_brute_force_deviation_check() {
        for g in builtins() {
            let ne = pure_nash(&g);
            for c in Cell::all() {
                let no_gain = (0..2).all(|j| {
                    g.alice(c)
                        >= g.alice(Cell {
                            alice: j,
                            bob: c.bob,
                        })
                }) && (0..2).all(|l| {
                    g.bob(c)
                        >= g.bob(Cell {
                            alice: c.alice,
                            bob: l,
                        })
                });
                assert_eq!(ne.contains(&c), no_gain, "{} {:?}", g.name, c);
            }
        }
    }

    #[test]
    fn mixed_equilibria() {
        let bos = builtin("BoS").unwrap();
        let m = mixed_nash_2x2(&bos).unwrap();
        // (α−γ)/(α+β−2γ) and (β−γ)/(α+β−2γ)
        assert!((m.p_alice - 2.0 / 3.0).abs() < 1e-12);
        assert!((m.q_bob - 1.0 / 3.0).abs() < 1e-12);
        // (αβ − γ²)/(α+β−2γ)
        assert!((m.payoffs.alice - 2.0 / 3.0).abs() < 1e-12);
        assert!((m.payoffs.bob - 2.0 / 3.0).abs() < 1e-12);

        let sd = builtin("SD").unwrap();
        let m = mixed_nash_2x2(&sd).unwrap();
        assert!((m.p_alice - 0.5).abs() < 1e-12 && (m.q_bob - 0.2).abs() < 1e-12);
        assert!(m.payoffs.max_abs_diff(&PayoffPair::new(-0.2, 1.5)) < 1e-12);

        let mp = builtin("MP").unwrap();
        let m = mixed_nash_2x2(&mp).unwrap();
        assert!((m.p_alice - 0.5).abs() < 1e-12 && (m.q_bob - 0.5).abs() < 1e-12);
        assert!(m.payoffs.max_abs_diff(&PayoffPair::default()) < 1e-12);

        // dominant strategies leave no interior solution
        assert!(mixed_nash_2x2(&builtin("PD").unwrap()).is_none());
    }

    #[test]
    fn mixed_equilibria_are_mutual_best_responses_on_a_grid() {
        for g in builtins() {
            let Some(m) = mixed_nash_2x2(&g) else {
                continue;
            };
            let a = g.alice_table();
            let b = g.bob_table();
            let row0 = m.q_bob * a[0] + (1.0 - m.q_bob) * a[1];
            let row1 = m.q_bob * a[2] + (1.0 - m.q_bob) * a[3];
            let col0 = m.p_alice * b[0] + (1.0 - m.p_alice) * b[2];
            let col1 = m.p_alice * b[1] + (1.0 - m.p_alice) * b[3];
            assert!((row0 - row1).abs() < 1e-9 && (col0 - col1).abs() < 1e-9);
            for k in 0..=1000 {
                let x = k as f64 / 1000.0;
                let alice = expected_payoffs(&g, &mixed_distribution(x, m.q_bob)).alice;
                let bob = expected_payoffs(&g, &mixed_distribution(m.p_alice, x)).bob;
                assert!(alice <= m.payoffs.alice + 1e-9, "{}", g.name);
                assert!(bob <= m.payoffs.bob + 1e-9, "{}", g.name);
            }
        }
    }

    #[test]
    fn pareto_sets() {
        let pd = builtin("PD").unwrap();
        let front = cells(&pd, &pareto_front(&pd));
        assert!(front.contains(&"(C,C)".to_string()));
        assert!(!front.contains(&"(D,D)".to_string()));
        assert_eq!(pareto_front(&builtin("MP").unwrap()).len(), 4);
    }

    #[test]
    fn json_schema_round_trip_and_validation() {
        let sd = builtin("SD").unwrap();
        let json = sd.to_json();
        assert!(json.contains("\"00\": ["));
        assert_eq!(GameSpec::from_json(&json).unwrap(), sd);

        let bad = r#"{"name":"X","labels":[["a","b"],["c","d"]],
            "payoffs":{"00":[1,1],"01":[0,0],"10":[0,0],"11":[1,2]},
            "flags":{"symmetric":false,"zero_sum":true,"discoordination":false}}"#;
        assert!(GameSpec::from_json(bad).is_err());
        let missing = r#"{"name":"X","labels":[["a","b"],["c","d"]],
            "payoffs":{"00":[1,1],"01":[0,0],"10":[0,0]}}"#;
        assert!(GameSpec::from_json(missing).is_err());
    }
}
