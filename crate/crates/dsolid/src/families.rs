//! Named families of configurations with known invariants.
//!
//! The greedy "largest adjacent pair" sequence has `e` growing like the
//! Fibonacci numbers. The linear families have `e = m = d = n − 2`, and one
//! type A₀ family carries a nonzero interior cyclic base curve at fiber 2.

use serde::{Deserialize, Serialize};

use crate::cycle::{enumerate_configs, CycleConfig, CycleError, CycleType};
use crate::divisor::{DDivisor, DSequence};
use crate::exec::Exec;
use crate::resolution::{compute_e, ResolutionChoice};

/// Printed `(n, d-sequence, e)` rows of the greedy table for `n = 4..10`.
pub const GREEDY_TABLE: [(usize, &[u64], u64); 7] = [
    (4, &[1, 2], 2),
    (5, &[1, 3, 2], 4),
    (6, &[1, 3, 5, 2], 6),
    (7, &[1, 3, 8, 5, 2], 9),
    (8, &[1, 3, 8, 13, 5, 2], 14),
    (9, &[1, 3, 8, 21, 13, 5, 2], 22),
    (10, &[1, 3, 8, 21, 34, 13, 5, 2], 35),
];

/// The printed `e` at `n = 11`, whose sequence is not printed.
pub const GREEDY_PRINTED_E_11: u64 = 57;

/// One row of the greedy sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyRow {
    pub n: usize,
    pub d_sequence: DSequence,
    pub d: u64,
    /// `e` with the first fiber blowing up the ridge surfaces.
    pub e: u64,
    pub history: Vec<usize>,
    pub printed_d_sequence: Option<Vec<u64>>,
    pub printed_e: Option<u64>,
    /// Set when a printed value exists and differs from the computed one.
    pub discrepancy: bool,
}

/// The node `i` maximising `dᵢ + dᵢ₊₁` (cyclically, `d_{k+1} = d₁`), lowest index on ties.
pub fn greedy_node(d: &DSequence) -> usize {
    let k = d.k();
    let mut best = (0u64, 1usize);
    for i in 1..=k {
        let s = d.get(i) + d.get(i + 1);
        if s > best.0 {
            best = (s, i);
        }
    }
    best.1
}

/// Runs the greedy blow-up strategy from the `n = 4` type A₀ surface up to `n_max`.
pub fn greedy_fibonacci(n_max: usize) -> Result<Vec<GreedyRow>, CycleError> {
    let mut cfg = CycleConfig::base(CycleType::A0).blow_up_node(1)?;
    let mut rows = Vec::new();
    for n in 4..=n_max {
        if n > 4 {
            let node = greedy_node(DDivisor::from_config(&cfg)?.sequence());
            cfg = cfg.blow_up_node(node)?;
        }
        let dd = DDivisor::from_config(&cfg)?;
        let seq = dd.sequence().clone();
        let rc = ResolutionChoice::with_ridges(seq.k(), true, true);
        let e = compute_e(&seq, &rc);
        let printed = GREEDY_TABLE.iter().find(|(m, _, _)| *m == n);
        let printed_d_sequence = printed.map(|(_, d, _)| d.to_vec());
        let printed_e = printed.map(|(_, _, e)| *e).or((n == 11).then_some(GREEDY_PRINTED_E_11));
        let discrepancy =
            printed_d_sequence.as_deref().is_some_and(|p| p != seq.as_slice()) || printed_e.is_some_and(|p| p != e);
        rows.push(GreedyRow {
            n,
            d: seq.d_max(),
            d_sequence: seq,
            e,
            history: cfg.history().to_vec(),
            printed_d_sequence,
            printed_e,
            discrepancy,
        });
    }
    Ok(rows)
}

/// The linear family with `dᵢ = i` for `i ≤ n − 2` followed by `ν` ones
/// (types A₁, A₂, A₃ only).
pub fn linear_family(ty: CycleType, n: usize) -> Option<DSequence> {
    if ty == CycleType::A0 || n < 4 {
        return None;
    }
    let mut d: Vec<u64> = (1..=(n as u64 - 2)).collect();
    d.extend(std::iter::repeat_n(1, ty.nu()));
    DSequence::new(d).ok()
}

/// Blow-up history of the type A₀ family with a nonzero interior `μ⁽²⁾`, `n ≥ 7`.
///
/// Starting from the base surface, the node between the line component and
/// its (−1)-neighbour is blown up `n − 4` times, then the node between the
/// (−1)-curve and the adjacent (−2)-curve.
pub fn interior_family_history(n: usize) -> Option<Vec<usize>> {
    (n >= 7).then(|| {
        let mut h = vec![1; n - 4];
        h.push(2);
        h
    })
}

pub fn interior_family_config(n: usize) -> Option<Result<CycleConfig, CycleError>> {
    interior_family_history(n).map(|h| CycleConfig::from_history(CycleType::A0, &h))
}

/// The expected multiplicities `(1, n−3, 2n−7, n−4, n−5, …, 2)`.
pub fn interior_family_sequence(n: usize) -> Option<DSequence> {
    if n < 7 {
        return None;
    }
    let n = n as u64;
    let mut d = vec![1, n - 3, 2 * n - 7];
    d.extend((2..=n - 4).rev());
    DSequence::new(d).ok()
}

/// The expected self-intersections `(−(n−2), −2, −1, −3, −2, …, −2)`.
pub fn interior_family_self_intersections(n: usize) -> Option<Vec<i64>> {
    (n >= 7).then(|| {
        let mut s = vec![-(n as i64 - 2), -2, -1, -3];
        s.extend(std::iter::repeat_n(-2, n - 6));
        s
    })
}

/// Finds an enumerated configuration whose multiplicities are `d` in either
/// orientation.
pub fn realize(
    ty: CycleType,
    n: usize,
    d: &DSequence,
    bound: usize,
    exec: Exec,
) -> Result<Option<CycleConfig>, CycleError> {
    let configs = enumerate_configs(n, ty, bound, exec)?;
    let reversed = d.reversed();
    for cfg in configs {
        let got = DDivisor::from_config(&cfg)?;
        if got.sequence() == d || got.sequence() == &reversed {
            return Ok(Some(cfg));
        }
    }
    Ok(None)
}

/// Largest `e` over every configuration of every type with `n` pairs and every ridge choice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxE {
    pub n: usize,
    pub e: u64,
    pub cycle_type: CycleType,
    pub d_sequence: DSequence,
}

pub fn exhaustive_max_e(n: usize, bound: usize, exec: Exec) -> Result<MaxE, CycleError> {
    let mut best: Option<MaxE> = None;
    for ty in CycleType::ALL {
        let configs = enumerate_configs(n, ty, bound, exec)?;
        let values = exec.try_map(&configs, |cfg| -> Result<(u64, DSequence), CycleError> {
            let seq = DDivisor::from_config(cfg)?.sequence().clone();
            let e = ResolutionChoice::ridge_combinations(seq.k())
                .iter()
                .map(|rc| compute_e(&seq, rc))
                .max()
                .unwrap_or(0);
            Ok((e, seq))
        })?;
        for (e, seq) in values {
            if best.as_ref().is_none_or(|b| e > b.e) {
                best = Some(MaxE {
                    n,
                    e,
                    cycle_type: ty,
                    d_sequence: seq,
                });
            }
        }
    }
    best.ok_or(CycleError::BelowBase { n })
}
