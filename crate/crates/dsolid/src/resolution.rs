//! Small resolutions over the reducible fibers, stable base curves, the
//! invariants `e`, `μ⁽ⁱ⁾`, `m`, and the dimension formulas.
//!
//! Everything here depends on a configuration only through its
//! multiplicity sequence `d`, so the functions take a [`DSequence`].
//!
//! The fiber over the `i`-th node carries a doubled cycle `C⁽ⁱ⁾`: the
//! components `C⁽ⁱ⁾ⱼ`, `C̄⁽ⁱ⁾ⱼ` plus one exceptional curve `Δ⁽ⁱ⁾` inserted at
//! the node `Cᵢ ∩ Cᵢ₊₁` (and `Δ̄⁽ⁱ⁾` at its conjugate). The small resolution
//! decides which of the two adjacent surfaces `Eᵢ`, `Eᵢ₊₁` receives `Δ⁽ⁱ⁾`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycle::Side;
use crate::divisor::{plus, DSequence};
use crate::exec::Exec;

/// Errors from the dimension formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("twist l = {0} must be non-negative")]
    NegativeTwist(i64),
    #[error("m = {0} must be at least 1")]
    NonPositiveM(u64),
    #[error("choice has {got} interior entries, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Which of the two surfaces adjacent to a node receives the exceptional curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Blow {
    /// `Eᵢ` (for the first fiber: the ridge surface `E1`).
    Lower,
    /// `Eᵢ₊₁` (for the last fiber: the ridge surface `Ē1`).
    Upper,
}

/// Per-fiber small-resolution choices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResolutionChoice {
    /// The first fiber's resolution blows up the ridge surfaces.
    pub ridge_first: bool,
    /// The last fiber's resolution blows up the ridge surfaces.
    pub ridge_last: bool,
    /// Choices for fibers `2..k−1`.
    pub interior: Vec<Blow>,
}

impl ResolutionChoice {
    /// Both ridge flags set and every interior fiber blowing `Eᵢ`.
    pub fn canonical(k: usize) -> Self {
        Self::with_ridges(k, true, true)
    }

    pub fn with_ridges(k: usize, ridge_first: bool, ridge_last: bool) -> Self {
        Self {
            ridge_first,
            ridge_last,
            interior: vec![Blow::Lower; k.saturating_sub(2)],
        }
    }

    /// The four ridge-flag combinations with lower interior choices.
    pub fn ridge_combinations(k: usize) -> Vec<Self> {
        [(true, true), (true, false), (false, true), (false, false)]
            .into_iter()
            .map(|(a, b)| Self::with_ridges(k, a, b))
            .collect()
    }

    /// Every choice for a cycle with `k` components per side: `4·2^(k−2)` of them.
    pub fn all(k: usize) -> Vec<Self> {
        let m = k.saturating_sub(2);
        let mut out = Vec::with_capacity(4 << m);
        for (a, b) in [(true, true), (true, false), (false, true), (false, false)] {
            for mask in 0u64..(1u64 << m) {
                let interior = (0..m)
                    .map(|j| if mask >> j & 1 == 1 { Blow::Upper } else { Blow::Lower })
                    .collect();
                out.push(Self {
                    ridge_first: a,
                    ridge_last: b,
                    interior,
                });
            }
        }
        out
    }

    pub fn check_len(&self, k: usize) -> Result<(), ResolutionError> {
        let expected = k.saturating_sub(2);
        if self.interior.len() == expected {
            Ok(())
        } else {
            Err(ResolutionError::WrongLength {
                got: self.interior.len(),
                expected,
            })
        }
    }

    /// The choice at fiber `i`, expressed uniformly as lower/upper.
    pub fn blow_at(&self, i: usize, k: usize) -> Blow {
        if i == 1 {
            if self.ridge_first {
                Blow::Lower
            } else {
                Blow::Upper
            }
        } else if i == k {
            if self.ridge_last {
                Blow::Upper
            } else {
                Blow::Lower
            }
        } else {
            self.interior[i - 2]
        }
    }

    /// Short label such as `R1+Rk+` for reports.
    pub fn label(&self) -> String {
        let f = |b: bool| if b { '+' } else { '-' };
        let interior: String = self
            .interior
            .iter()
            .map(|b| match b {
                Blow::Lower => 'L',
                Blow::Upper => 'U',
            })
            .collect();
        if interior.is_empty() {
            format!("R1{}Rk{}", f(self.ridge_first), f(self.ridge_last))
        } else {
            format!("R1{}Rk{}/{interior}", f(self.ridge_first), f(self.ridge_last))
        }
    }
}

/// A component of a doubled fiber cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    /// `C⁽ⁱ⁾ⱼ` or `C̄⁽ⁱ⁾ⱼ`.
    Component { side: Side, index: usize },
    /// `Δ⁽ⁱ⁾` or `Δ̄⁽ⁱ⁾`.
    Exceptional { side: Side },
}

impl Slot {
    fn plain(index: usize) -> Self {
        Slot::Component {
            side: Side::Plain,
            index,
        }
    }

    fn conjugate(self) -> Self {
        match self {
            Slot::Component { side, index } => Slot::Component {
                side: side.flip(),
                index,
            },
            Slot::Exceptional { side } => Slot::Exceptional { side: side.flip() },
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Component {
                side: Side::Plain,
                index,
            } => write!(f, "C{index}"),
            Slot::Component { side: Side::Bar, index } => write!(f, "C̄{index}"),
            Slot::Exceptional { side: Side::Plain } => write!(f, "Δ"),
            Slot::Exceptional { side: Side::Bar } => write!(f, "Δ̄"),
        }
    }
}

/// A chain of stable base curves in one fiber cycle, listed from its fixed end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCurveChain {
    pub fiber: usize,
    pub side: Side,
    pub slots: Vec<Slot>,
    pub multiplicity: u64,
}

impl BaseCurveChain {
    fn pair(fiber: usize, slots: Vec<Slot>, multiplicity: u64) -> [BaseCurveChain; 2] {
        let bar = slots.iter().map(|s| s.conjugate()).collect();
        [
            BaseCurveChain {
                fiber,
                side: Side::Plain,
                slots,
                multiplicity,
            },
            BaseCurveChain {
                fiber,
                side: Side::Bar,
                slots: bar,
                multiplicity,
            },
        ]
    }
}

impl fmt::Display for BaseCurveChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.slots.iter().map(ToString::to_string).collect();
        write!(f, "{}·({})@{}", self.multiplicity, names.join("+"), self.fiber)
    }
}

/// The surface containing a slot: `E_j` (plain side) or `Ē_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Surface {
    side: Side,
    index: usize,
}

/// The doubled cycle over fiber `i` in cyclic order, each slot tagged with its surface.
fn fiber_cycle(k: usize, i: usize, blow: Blow) -> Vec<(Slot, Surface)> {
    let delta_surface = |side: Side| -> Surface {
        match blow {
            Blow::Lower => Surface { side, index: i },
            Blow::Upper if i == k => Surface {
                side: side.flip(),
                index: 1,
            },
            Blow::Upper => Surface { side, index: i + 1 },
        }
    };
    let mut out = Vec::with_capacity(2 * k + 2);
    for side in [Side::Plain, Side::Bar] {
        for j in 1..=k {
            out.push((Slot::Component { side, index: j }, Surface { side, index: j }));
            if j == i {
                out.push((Slot::Exceptional { side }, delta_surface(side)));
            }
        }
    }
    out
}

/// `e = d₂ + Σ_{1<j<k} (d_{j+1} − d_j)₊`, plus `(d₂ − 2)₊` when the first
/// fiber blows the ridge surfaces and `(dₖ − 2)₊` when the last one does.
pub fn compute_e(d: &DSequence, rc: &ResolutionChoice) -> u64 {
    let k = d.k();
    if k == 1 {
        return 1;
    }
    let mut e = d.d2();
    for j in 2..k {
        e += plus(d.get(j + 1) as i128 - d.get(j) as i128);
    }
    if rc.ridge_first {
        e += plus(d.d2() as i128 - 2);
    }
    if rc.ridge_last {
        e += plus(d.dk() as i128 - 2);
    }
    e
}

/// Stable base curves of `𝒟` on the doubled fiber cycles.
pub fn stable_base_curves(d: &DSequence, rc: &ResolutionChoice) -> Vec<BaseCurveChain> {
    let k = d.k();
    let mut out = Vec::new();
    if k == 1 {
        return out;
    }
    let delta = Slot::Exceptional { side: Side::Plain };
    let descending = |from: usize, to: usize| (to..=from).rev().map(Slot::plain);
    let d2 = d.d2() as i128;
    let dk = d.dk() as i128;

    if rc.ridge_first {
        if d2 > 2 {
            let slots = std::iter::once(Slot::plain(1))
                .chain((2..=k).rev().map(|j| Slot::Component {
                    side: Side::Bar,
                    index: j,
                }))
                .collect();
            out.extend(BaseCurveChain::pair(1, slots, plus(d2 - 2)));
        }
    } else if d2 > 1 {
        out.extend(BaseCurveChain::pair(1, vec![delta], plus(d2 - 1)));
    }

    for i in 2..k {
        let delta_i = d.get(i + 1) as i128 - d.get(i) as i128;
        if delta_i == 0 {
            continue;
        }
        let slots: Vec<Slot> = match (rc.blow_at(i, k), delta_i > 0) {
            (Blow::Lower, true) => descending(i, 2).collect(),
            (Blow::Lower, false) => std::iter::once(delta).chain((i + 1..=k).map(Slot::plain)).collect(),
            (Blow::Upper, true) => std::iter::once(delta).chain(descending(i, 2)).collect(),
            (Blow::Upper, false) => (i + 1..=k).map(Slot::plain).collect(),
        };
        out.extend(BaseCurveChain::pair(i, slots, delta_i.unsigned_abs() as u64));
    }

    if rc.ridge_last {
        if dk > 2 {
            let slots = (1..=k).map(Slot::plain).collect();
            out.extend(BaseCurveChain::pair(k, slots, plus(dk - 2)));
        }
    } else if dk > 1 {
        out.extend(BaseCurveChain::pair(k, vec![delta], plus(dk - 1)));
    }
    out
}

/// Recovers `e` from the base curves by counting their multiplicities at the
/// section `Ξ1 = E1 ∩ E2`: `e = −𝒟·Ξ1 + Γ_E·Ξ1`, where `𝒟·Ξ1` is `−d₂` when
/// the first fiber blows the ridge surfaces and `−1` otherwise.
pub fn e_from_base_curves(d: &DSequence, rc: &ResolutionChoice, chains: &[BaseCurveChain]) -> u64 {
    let k = d.k();
    if k == 1 {
        return 1;
    }
    let mut e = if rc.ridge_first { d.d2() } else { 1 };
    for chain in chains {
        let cycle = fiber_cycle(k, chain.fiber, rc.blow_at(chain.fiber, k));
        let len = cycle.len();
        let touches = (0..len).any(|p| {
            let (a, sa) = cycle[p];
            let (b, sb) = cycle[(p + 1) % len];
            let in_e = |s: Surface, j| s.side == Side::Plain && s.index == j;
            let meets_xi = (in_e(sa, 1) && in_e(sb, 2)) || (in_e(sa, 2) && in_e(sb, 1));
            meets_xi && (chain.slots.contains(&a) || chain.slots.contains(&b))
        });
        if touches {
            e += chain.multiplicity;
        }
    }
    e
}

/// `(μ⁽¹⁾, μ⁽ᵏ⁾)`: zero when the fiber blows the ridge surfaces, otherwise
/// `(d₂ − 2)₊` and `(dₖ − 2)₊`.
pub fn compute_mu_boundary(d: &DSequence, rc: &ResolutionChoice) -> (u64, u64) {
    if d.k() == 1 {
        return (0, 0);
    }
    let first = if rc.ridge_first { 0 } else { plus(d.d2() as i128 - 2) };
    let last = if rc.ridge_last { 0 } else { plus(d.dk() as i128 - 2) };
    (first, last)
}

/// A cyclic-base-curve multiplicity, either determined or bounded below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum MuValue {
    Exact(u64),
    LowerBound(u64),
}

impl MuValue {
    pub fn value(self) -> u64 {
        match self {
            MuValue::Exact(v) | MuValue::LowerBound(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, MuValue::Exact(_))
    }
}

impl fmt::Display for MuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuValue::Exact(v) => write!(f, "{v}"),
            MuValue::LowerBound(v) => write!(f, "≥{v}"),
        }
    }
}

/// Why an interior value came out the way it did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuReason {
    /// `dᵢ = dᵢ₊₁`: the fiber carries no stable base curve.
    NoBaseCurve,
    /// The chain end next to a line component carries fixed multiplicity at
    /// most one, which cannot force the degree-one line component.
    LineComponentFree,
    /// The chain is a single component with fixed multiplicity `γ ≤ d`, so
    /// blowing it up drops the adjacent line component to degree `1 − γ`.
    SingleComponentSubtraction,
    /// Neither certificate applies.
    Uncertified,
}

/// The interior value at one fiber together with its certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorMu {
    pub fiber: usize,
    pub value: MuValue,
    pub reason: MuReason,
}

/// `μ⁽ⁱ⁾` for an interior fiber `2 ≤ i ≤ k−1`.
///
/// With `γ = |dᵢ₊₁ − dᵢ|`, the stable chain at fiber `i` ends next to a line
/// component at the component `C2` (when `dᵢ₊₁ > dᵢ`) or `Cₖ` (otherwise), whose
/// surface appears in `D` with multiplicity `r = d₂` or `dₖ`. The fixed
/// multiplicity that can reach the line component is at most `min(γ, r)`:
///
/// * `γ = 0`: no base curve, `μ = 0`.
/// * `min(γ, r) ≤ 1`: the degree-one line component is never forced, `μ = 0`.
/// * the chain can be taken to be that single end component (`i = 2` or
///   `i = k−1`, depending on the sign) and `γ ≤ r`: blowing it up with
///   multiplicity `γ` leaves the line component with degree `1 − γ`, which
///   forces a chain of multiplicity `γ − 1` through it, so `μ = γ − 1`.
/// * otherwise only `μ ≥ 0` is certified.
///
/// The value does not depend on the resolution at fiber `i`, and both chain
/// shapes are considered.
pub fn compute_mu_interior(d: &DSequence, i: usize) -> InteriorMu {
    let k = d.k();
    assert!(1 < i && i < k, "fiber {i} is not interior for k = {k}");
    let delta = d.get(i + 1) as i128 - d.get(i) as i128;
    let (value, reason) = if delta == 0 {
        (MuValue::Exact(0), MuReason::NoBaseCurve)
    } else {
        let gamma = delta.unsigned_abs() as u64;
        let (r, single) = if delta > 0 {
            (d.d2(), i == 2)
        } else {
            (d.dk(), i == k - 1)
        };
        if gamma.min(r) <= 1 {
            (MuValue::Exact(0), MuReason::LineComponentFree)
        } else if single && gamma <= r {
            (MuValue::Exact(gamma - 1), MuReason::SingleComponentSubtraction)
        } else {
            (MuValue::LowerBound(0), MuReason::Uncertified)
        }
    };
    InteriorMu {
        fiber: i,
        value,
        reason,
    }
}

/// `e`, boundary `μ` and their sum for one resolution choice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceBreakdown {
    pub choice: String,
    pub ridge_first: bool,
    pub ridge_last: bool,
    pub e: u64,
    pub mu_first: u64,
    pub mu_last: u64,
    pub total: u64,
}

impl ChoiceBreakdown {
    pub fn evaluate(d: &DSequence, rc: &ResolutionChoice) -> Self {
        let e = compute_e(d, rc);
        let (mu_first, mu_last) = compute_mu_boundary(d, rc);
        Self {
            choice: rc.label(),
            ridge_first: rc.ridge_first,
            ridge_last: rc.ridge_last,
            e,
            mu_first,
            mu_last,
            total: e + mu_first + mu_last,
        }
    }
}

/// The invariant `m = e + Σ μ⁽ⁱ⁾` for the canonical resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MInvariant {
    pub e: u64,
    /// `μ⁽¹⁾ … μ⁽ᵏ⁾`.
    pub mu: Vec<MuValue>,
    pub interior: Vec<InteriorMu>,
    pub m: MuValue,
    pub by_choice: Vec<ChoiceBreakdown>,
}

impl MInvariant {
    pub fn is_exact(&self) -> bool {
        self.m.is_exact()
    }
}

/// Evaluates `e`, every `μ⁽ⁱ⁾` and `m` with the canonical resolution.
pub fn compute_m(d: &DSequence) -> MInvariant {
    let k = d.k();
    let rc = ResolutionChoice::canonical(k);
    let e = compute_e(d, &rc);
    let (first, last) = compute_mu_boundary(d, &rc);
    let interior: Vec<InteriorMu> = (2..k).map(|i| compute_mu_interior(d, i)).collect();
    let mut mu = vec![MuValue::Exact(first)];
    mu.extend(interior.iter().map(|x| x.value));
    if k > 1 {
        mu.push(MuValue::Exact(last));
    }
    let total = e + mu.iter().map(|v| v.value()).sum::<u64>();
    let m = if mu.iter().all(|v| v.is_exact()) {
        MuValue::Exact(total)
    } else {
        MuValue::LowerBound(total)
    };
    let by_choice = ResolutionChoice::ridge_combinations(k)
        .iter()
        .map(|rc| ChoiceBreakdown::evaluate(d, rc))
        .collect();
    MInvariant {
        e,
        mu,
        interior,
        m,
        by_choice,
    }
}

/// `e` for every resolution choice of every sequence, as one flat sweep.
///
/// The grid is `sequences × ResolutionChoice::all(k)`; entry `j` of the
/// result lists the values for `seqs[j]` in the order of `all(k)`.
pub fn sweep_e(seqs: &[DSequence], exec: Exec) -> Vec<Vec<u64>> {
    let jobs: Vec<(usize, ResolutionChoice)> = seqs
        .iter()
        .enumerate()
        .flat_map(|(j, d)| ResolutionChoice::all(d.k()).into_iter().map(move |rc| (j, rc)))
        .collect();
    let values = exec.map(&jobs, |(j, rc)| compute_e(&seqs[*j], rc));
    let mut out: Vec<Vec<u64>> = seqs.iter().map(|_| Vec::new()).collect();
    for ((j, _), v) in jobs.iter().zip(values) {
        out[*j].push(v);
    }
    out
}

/// Sections of the pencil twist: `l + 1` below `m`, then `3l − 2m + 3`.
pub fn h0_formula(m: u64, l: i64) -> Result<u64, ResolutionError> {
    if m == 0 {
        return Err(ResolutionError::NonPositiveM(m));
    }
    let l = u64::try_from(l).map_err(|_| ResolutionError::NegativeTwist(l))?;
    Ok(if l < m { l + 1 } else { 3 * l - 2 * m + 3 })
}

/// `χ(lF) = ⅓(4−n)l³ + (4−n)l² + ⅓(11−2n)l + 1`, which is always an integer.
pub fn riemann_roch(n: i64, l: i64) -> Result<BigInt, ResolutionError> {
    let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let l_r = q(l, 1);
    let value = q(4 - n, 3) * &l_r * &l_r * &l_r + q(4 - n, 1) * &l_r * &l_r + q(11 - 2 * n, 3) * &l_r + q(1, 1);
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(ResolutionError::Invariant(format!(
            "χ at (n, l) = ({n}, {l}) is {value}, not an integer"
        )))
    }
}

/// Convenience for reports: `riemann_roch` as `i64` when it fits.
pub fn riemann_roch_i64(n: i64, l: i64) -> Result<i64, ResolutionError> {
    let v = riemann_roch(n, l)?;
    v.to_i64()
        .ok_or_else(|| ResolutionError::Invariant(format!("χ at ({n}, {l}) overflows i64")))
}

/// Whether `χ` vanishes; used by the dimension tables.
pub fn riemann_roch_is_zero(n: i64, l: i64) -> Result<bool, ResolutionError> {
    Ok(riemann_roch(n, l)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> DSequence {
        DSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn e_for_small_examples() {
        let d = seq(&[1, 3, 2]);
        assert_eq!(compute_e(&d, &ResolutionChoice::with_ridges(3, true, false)), 4);
        assert_eq!(compute_e(&d, &ResolutionChoice::with_ridges(3, false, false)), 3);
        let fib = seq(&[1, 3, 8, 13, 5, 2]);
        assert_eq!(compute_e(&fib, &ResolutionChoice::with_ridges(6, true, false)), 14);
    }

    #[test]
    fn chain_shapes() {
        let d = seq(&[1, 3, 2]);
        let chains = stable_base_curves(&d, &ResolutionChoice::with_ridges(3, true, true));
        let at2: Vec<_> = chains.iter().filter(|c| c.fiber == 2).collect();
        assert_eq!(at2.len(), 2);
        assert_eq!(
            at2[0].slots,
            vec![Slot::Exceptional { side: Side::Plain }, Slot::plain(3)]
        );
        assert_eq!(at2[0].multiplicity, 1);

        let d = seq(&[1, 2]);
        let chains = stable_base_curves(&d, &ResolutionChoice::with_ridges(2, false, false));
        assert!(chains.iter().all(|c| c.multiplicity == 1 && c.slots.len() == 1));
        assert!(chains.iter().all(|c| matches!(c.slots[0], Slot::Exceptional { .. })));
        assert_eq!(chains.len(), 4);
    }

    #[test]
    fn accounting_reproduces_e() {
        for v in [
            &[1, 2][..],
            &[1, 3, 2],
            &[1, 3, 8, 13, 5, 2],
            &[1, 2, 3, 1, 1, 1],
            &[1, 4, 7, 3, 2],
            &[1, 1, 5, 4, 3, 2],
        ] {
            let d = seq(v);
            for rc in ResolutionChoice::all(d.k()) {
                let chains = stable_base_curves(&d, &rc);
                assert_eq!(
                    e_from_base_curves(&d, &rc, &chains),
                    compute_e(&d, &rc),
                    "{d} {}",
                    rc.label()
                );
            }
        }
    }

    #[test]
    fn boundary_mu() {
        let d = seq(&[1, 3, 2]);
        assert_eq!(
            compute_mu_boundary(&d, &ResolutionChoice::with_ridges(3, false, true)),
            (1, 0)
        );
        assert_eq!(
            compute_mu_boundary(&d, &ResolutionChoice::with_ridges(3, true, false)),
            (0, 0)
        );
        let d = seq(&[1, 2, 2]);
        assert_eq!(
            compute_mu_boundary(&d, &ResolutionChoice::with_ridges(3, false, false)),
            (0, 0)
        );
    }

    #[test]
    fn interior_mu_cases() {
        let flat = seq(&[1, 2, 2, 1]);
        assert_eq!(compute_mu_interior(&flat, 2).value, MuValue::Exact(0));
        let rho8 = seq(&[1, 5, 9, 4, 3, 2]);
        let at2 = compute_mu_interior(&rho8, 2);
        assert_eq!(at2.value, MuValue::Exact(3));
        assert_eq!(at2.reason, MuReason::SingleComponentSubtraction);
        assert_eq!(compute_mu_interior(&rho8, 3).value, MuValue::LowerBound(0));
        let inv = seq(&[1, 2, 3, 4, 5, 6, 1, 1, 1]);
        for i in 2..9 {
            assert_eq!(compute_mu_interior(&inv, i).value, MuValue::Exact(0), "fiber {i}");
        }
    }

    #[test]
    fn m_breakdown() {
        let m = compute_m(&seq(&[1, 2, 3, 4, 1, 1, 1]));
        assert_eq!(m.e, 4);
        assert_eq!(m.m, MuValue::Exact(4));
        assert_eq!(m.mu.len(), 7);
        assert_eq!(m.by_choice.len(), 4);
    }

    #[test]
    fn dimension_formulas() {
        assert_eq!(h0_formula(5, 0).unwrap(), 1);
        assert_eq!(h0_formula(2, 3).unwrap(), 8);
        assert_eq!(h0_formula(7, 7).unwrap(), 10);
        assert!(h0_formula(2, -1).is_err());
        assert!(h0_formula(0, 1).is_err());
        assert_eq!(riemann_roch(4, 1).unwrap(), BigInt::from(2));
        assert_eq!(riemann_roch(3, 1).unwrap(), BigInt::from(4));
        assert_eq!(riemann_roch(9, 0).unwrap(), BigInt::from(1));
    }

    #[test]
    fn choice_enumeration_size() {
        assert_eq!(ResolutionChoice::all(2).len(), 4);
        assert_eq!(ResolutionChoice::all(5).len(), 32);
        assert!(ResolutionChoice::all(5).iter().all(|rc| rc.check_len(5).is_ok()));
    }
}
