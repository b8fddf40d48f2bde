//! The divisor `D = Σ dᵢ (Cᵢ + C̄ᵢ)` inducing the double cover of the plane,
//! and its half `Dʰ = Σ d′ᵢ Cᵢ + d″ᵢ C̄ᵢ`.
//!
//! Both are recomputed from a configuration's blow-up history. On the
//! `n = 3` base every `dᵢ` is one and `Dʰ` is the chain `C1 + … + Ck`, whose
//! class is `H1 + H2 − e1 − e2 − e3`. A node blow-up gives the new component
//! the sum of the multiplicities of the two components through the node.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycle::{CycleConfig, CycleType, Side};
use crate::lattice::{CurveClass, LatticeBasis, LatticeError};

/// Errors from multiplicity bookkeeping and the structural checks on `D`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisorError {
    #[error("multiplicity overflowed u64")]
    Overflow,
    #[error("invalid multiplicity sequence: {0}")]
    InvalidSequence(String),
    #[error("divisor constraint violated: {0}")]
    Constraint(String),
    #[error("index {alpha} is not admissible for type {ty} (allowed: {allowed})")]
    AlphaOutOfRange {
        alpha: usize,
        ty: CycleType,
        allowed: String,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A validated multiplicity sequence `(d₁, …, dₖ)` with `d₁ = 1` and every entry positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct DSequence(Vec<u64>);

impl DSequence {
    pub fn new(d: Vec<u64>) -> Result<Self, DivisorError> {
        if d.is_empty() {
            return Err(DivisorError::InvalidSequence("sequence is empty".into()));
        }
        if let Some(pos) = d.iter().position(|&x| x == 0) {
            return Err(DivisorError::InvalidSequence(format!(
                "entry {} is not positive",
                pos + 1
            )));
        }
        if d[0] != 1 {
            return Err(DivisorError::InvalidSequence(format!(
                "the line component must have multiplicity 1, got {}",
                d[0]
            )));
        }
        Ok(Self(d))
    }

    /// Parses a comma separated list such as `1,3,2`.
    pub fn parse(text: &str) -> Result<Self, DivisorError> {
        let d = text
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<i128>()
                    .map_err(|_| DivisorError::InvalidSequence(format!("'{t}' is not an integer")))
                    .and_then(|v| {
                        u64::try_from(v)
                            .map_err(|_| DivisorError::InvalidSequence(format!("entry {v} is not positive")))
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(d)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// `dᵢ` for one-based `i`, read cyclically so that `d_{k+1} = d₁`.
    pub fn get(&self, i: usize) -> u64 {
        self.0[(i - 1) % self.0.len()]
    }

    /// `d₂`; equal to `d₁` when the cycle has a single component per side.
    pub fn d2(&self) -> u64 {
        self.get(2)
    }

    /// `dₖ`; equal to `d₁` when `k = 1`.
    pub fn dk(&self) -> u64 {
        self.get(self.k())
    }

    /// The maximum multiplicity `d`.
    pub fn d_max(&self) -> u64 {
        self.0.iter().copied().max().expect("sequence is non-empty")
    }

    /// `(d₁, d_k, d_{k−1}, …, d₂)`: the same divisor read the other way round.
    pub fn reversed(&self) -> DSequence {
        DSequence(self.0[..1].iter().chain(self.0[1..].iter().rev()).copied().collect())
    }
}

impl TryFrom<Vec<u64>> for DSequence {
    type Error = DivisorError;
    fn try_from(d: Vec<u64>) -> Result<Self, DivisorError> {
        Self::new(d)
    }
}

impl From<DSequence> for Vec<u64> {
    fn from(d: DSequence) -> Vec<u64> {
        d.0
    }
}

impl fmt::Display for DSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Multiplicities of `D` and of its half `Dʰ` on a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DDivisor {
    d: DSequence,
    dprime: Vec<u64>,
    ddprime: Vec<u64>,
}

impl DDivisor {
    /// Replays the configuration's history.
    pub fn from_config(cfg: &CycleConfig) -> Result<Self, DivisorError> {
        let k0 = cfg.cycle_type().nu() + 1;
        let mut d = vec![1u64; k0];
        let mut half: Vec<u64> = std::iter::repeat_n(1, k0).chain(std::iter::repeat_n(0, k0)).collect();
        for &node in cfg.history() {
            let k = d.len();
            let len = 2 * k;
            let p = node - 1;
            let add = |a: u64, b: u64| a.checked_add(b).ok_or(DivisorError::Overflow);
            let new_d = add(d[p], d[(p + 1) % k])?;
            d.insert(node, new_d);
            let new_plain = add(half[p], half[(p + 1) % len])?;
            let new_bar = add(half[(p + k) % len], half[(p + k + 1) % len])?;
            let (plain, bar) = half.split_at(k);
            let mut next = Vec::with_capacity(len + 2);
            next.extend_from_slice(&plain[..node]);
            next.push(new_plain);
            next.extend_from_slice(&plain[node..]);
            next.extend_from_slice(&bar[..node]);
            next.push(new_bar);
            next.extend_from_slice(&bar[node..]);
            half = next;
        }
        let k = d.len();
        let ddprime = half.split_off(k);
        Ok(Self {
            d: DSequence::new(d)?,
            dprime: half,
            ddprime,
        })
    }

    pub fn sequence(&self) -> &DSequence {
        &self.d
    }

    pub fn d(&self) -> &[u64] {
        self.d.as_slice()
    }

    pub fn d_max(&self) -> u64 {
        self.d.d_max()
    }

    /// Coefficients `d′ᵢ` of `Cᵢ` in `Dʰ`.
    pub fn dprime(&self) -> &[u64] {
        &self.dprime
    }

    /// Coefficients `d″ᵢ` of `C̄ᵢ` in `Dʰ`.
    pub fn ddprime(&self) -> &[u64] {
        &self.ddprime
    }

    pub fn k(&self) -> usize {
        self.d.k()
    }

    /// The class of `D` in the lattice of `cfg`.
    pub fn class(&self, cfg: &CycleConfig) -> CurveClass {
        combine(cfg, self.d(), self.d())
    }

    /// The class of `Dʰ` in the lattice of `cfg`.
    pub fn half_class(&self, cfg: &CycleConfig) -> CurveClass {
        combine(cfg, &self.dprime, &self.ddprime)
    }

    /// Checks every structural constraint on `D` and `Dʰ`, returning the first failure.
    pub fn check(&self, cfg: &CycleConfig) -> Result<(), DivisorError> {
        let fail = |msg: String| Err(DivisorError::Constraint(msg));
        let k = self.k();
        if k != cfg.k() {
            return fail(format!(
                "divisor has {k} multiplicities, cycle has {} components per side",
                cfg.k()
            ));
        }
        for i in 0..k {
            if self.dprime[i] + self.ddprime[i] != self.d()[i] {
                return fail(format!("d′{0} + d″{0} ≠ d{0}", i + 1));
            }
        }
        let dc = self.class(cfg);
        for side in [Side::Plain, Side::Bar] {
            for i in 1..=k {
                let x = dc.dot(cfg.component(side, i));
                let expected = i64::from(i == 1);
                if x != expected {
                    let bar = if side == Side::Bar { "̄" } else { "" };
                    return fail(format!("D·C{bar}{i} = {x}, expected {expected}"));
                }
            }
        }
        if dc.dot(&dc) != 2 {
            return fail(format!("D² = {}, expected 2", dc.dot(&dc)));
        }
        self.check_half_constraints(cfg.cycle_type())
    }

    /// The equalities on `d′₁, d″₁, d′ₖ, d″₂` and the sign coherence of the
    /// differences of `d′` and `d″` at interior nodes.
    pub fn check_half_constraints(&self, ty: CycleType) -> Result<(), DivisorError> {
        let fail = |msg: String| Err(DivisorError::Constraint(msg));
        let (dp, dpp) = (&self.dprime, &self.ddprime);
        let k = self.k();
        if dp[0] != 1 || dpp[0] != 0 {
            return fail(format!("(d′1, d″1) = ({}, {}), expected (1, 0)", dp[0], dpp[0]));
        }
        if k >= 2 {
            let (dpk, dpp2) = (dp[k - 1], dpp[1]);
            match ty {
                CycleType::A0 => {
                    if dpk != 1 || dpp2 != 1 {
                        return fail(format!("type A0 needs d′k = d″2 = 1, got ({dpk}, {dpp2})"));
                    }
                    if dp[1] == 0 || dpp[k - 1] == 0 {
                        return fail("type A0 needs d′2 > 0 and d″k > 0".into());
                    }
                }
                CycleType::A1 | CycleType::A2 => {
                    if !matches!((dpk, dpp2), (1, 0) | (0, 1)) {
                        return fail(format!(
                            "type {ty} needs (d′k, d″2) ∈ {{(1,0), (0,1)}}, got ({dpk}, {dpp2})"
                        ));
                    }
                }
                CycleType::A3 => {}
            }
        }
        for i in 2..k {
            let a = dp[i] as i128 - dp[i - 1] as i128;
            let b = dpp[i] as i128 - dpp[i - 1] as i128;
            if a * b < 0 {
                return fail(format!(
                    "d′ and d″ change in opposite directions between positions {i} and {}",
                    i + 1
                ));
            }
        }
        Ok(())
    }

    /// The admissible range of `α` for a type: `1..=3−ν`.
    pub fn alpha_range(ty: CycleType) -> std::ops::RangeInclusive<usize> {
        1..=(3 - ty.nu())
    }

    /// `(Dʰ_α, D̄ʰ_α)` with `Dʰ_α = Dʰ + e_α − ē_α`.
    pub fn half_class_alpha(&self, cfg: &CycleConfig, alpha: usize) -> Result<(CurveClass, CurveClass), DivisorError> {
        let ty = cfg.cycle_type();
        let range = Self::alpha_range(ty);
        if !range.contains(&alpha) {
            let allowed = if range.is_empty() {
                "none".to_string()
            } else {
                format!("{}..={}", range.start(), range.end())
            };
            return Err(DivisorError::AlphaOutOfRange { alpha, ty, allowed });
        }
        let basis = cfg.basis();
        let h = &(&self.half_class(cfg) + &basis.e(alpha)?) - &basis.ebar(alpha)?;
        let hbar = h.conjugate();
        Ok((h, hbar))
    }
}

/// Free function form of [`DDivisor::from_config`], returning only `d`.
pub fn compute_d(cfg: &CycleConfig) -> Result<DSequence, DivisorError> {
    Ok(DDivisor::from_config(cfg)?.d)
}

/// Free function form of [`DDivisor::from_config`].
pub fn compute_half(cfg: &CycleConfig) -> Result<DDivisor, DivisorError> {
    DDivisor::from_config(cfg)
}

/// Free function form of [`DDivisor::half_class_alpha`].
pub fn half_class_alpha(
    dd: &DDivisor,
    cfg: &CycleConfig,
    alpha: usize,
) -> Result<(CurveClass, CurveClass), DivisorError> {
    dd.half_class_alpha(cfg, alpha)
}

/// The class `H1 + H2 − e1 − e2 − e3` on the lattice of `basis`.
pub fn base_half_class(basis: LatticeBasis) -> CurveClass {
    let mut coeffs = vec![BigInt::from(0); basis.rank()];
    coeffs[0] = 1.into();
    coeffs[1] = 1.into();
    for c in &mut coeffs[2..5] {
        *c = (-1).into();
    }
    basis.class_from(coeffs).expect("rank matches basis")
}

/// `(x)₊ = max(x, 0)` on a signed difference of multiplicities.
pub fn plus(x: i128) -> u64 {
    u64::try_from(x.max(0)).expect("positive part of a difference of u64 fits in u64")
}

fn combine(cfg: &CycleConfig, plain: &[u64], bar: &[u64]) -> CurveClass {
    let k = cfg.k();
    let mut acc = cfg.basis().zero();
    for i in 1..=k {
        acc = &acc + &cfg.component(Side::Plain, i).scale(&BigInt::from(plain[i - 1]));
        acc = &acc + &cfg.component(Side::Bar, i).scale(&BigInt::from(bar[i - 1]));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(ty: CycleType, hist: &[usize]) -> (CycleConfig, DDivisor) {
        let cfg = CycleConfig::from_history(ty, hist).unwrap();
        let dd = DDivisor::from_config(&cfg).unwrap();
        (cfg, dd)
    }

    #[test]
    fn small_cases() {
        let (_, a0) = dd(CycleType::A0, &[]);
        assert_eq!(a0.d(), &[1]);
        assert_eq!((a0.dprime(), a0.ddprime()), (&[1][..], &[0][..]));
        let (_, a0) = dd(CycleType::A0, &[1]);
        assert_eq!(a0.d(), &[1, 2]);
        assert_eq!((a0.dprime(), a0.ddprime()), (&[1, 1][..], &[0, 1][..]));
        let (_, a0) = dd(CycleType::A0, &[1, 1]);
        assert_eq!(a0.d(), &[1, 3, 2]);
    }

    #[test]
    fn structural_checks_pass_on_small_histories() {
        for ty in CycleType::ALL {
            for hist in [&[][..], &[1], &[1, 2], &[2, 1, 1]] {
                if let Ok(cfg) = CycleConfig::from_history(ty, hist) {
                    DDivisor::from_config(&cfg).unwrap().check(&cfg).unwrap();
                }
            }
        }
    }

    #[test]
    fn half_alpha_examples() {
        let (cfg, d) = dd(CycleType::A0, &[]);
        let (h, hbar) = d.half_class_alpha(&cfg, 1).unwrap();
        assert_eq!(h.to_string(), "H1+H2-e2-e3-ē1");
        assert_eq!(&h + &hbar, d.class(&cfg));
        let (cfg3, d3) = dd(CycleType::A3, &[]);
        assert!(matches!(
            d3.half_class_alpha(&cfg3, 1),
            Err(DivisorError::AlphaOutOfRange { .. })
        ));
        assert!(d.half_class_alpha(&cfg, 4).is_err());
    }

    #[test]
    fn sequence_validation() {
        assert!(DSequence::parse("1,3,2").is_ok());
        assert!(DSequence::parse("(1, 3, 2)").is_ok());
        assert!(DSequence::parse("1,0,2").is_err());
        assert!(DSequence::parse("2,1").is_err());
        assert!(DSequence::parse("1,-1").is_err());
        assert!(DSequence::parse("").is_err());
        let d = DSequence::parse("1,3,8,5,2").unwrap();
        assert_eq!(d.reversed().as_slice(), &[1, 2, 5, 8, 3]);
        assert_eq!(d.d_max(), 8);
    }

    #[test]
    fn plus_is_max_with_zero() {
        assert_eq!(plus(-3), 0);
        assert_eq!(plus(4), 4);
    }
}
