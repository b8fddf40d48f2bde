//! Real anti-canonical cycles and the node blow-up calculus.
//!
//! A cycle is stored as the list `C1..Ck, C̄1..C̄k` of its `2k` components in
//! cyclic order, so position `p` meets positions `p ± 1 (mod 2k)`. The line
//! component is always `C1`. Blowing up the node `Cᵢ ∩ Cᵢ₊₁` (with `Cₖ₊₁ = C̄1`)
//! together with its conjugate adds one exceptional pair to the lattice and
//! inserts the new components right after `Cᵢ` and `C̄ᵢ`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divisor::{self, DDivisor};
use crate::exec::Exec;
use crate::lattice::{CurveClass, LatticeBasis, LatticeError};

/// Default ceiling on `n` for enumeration.
pub const DEFAULT_BOUND: usize = 8;

/// Schema version written into serialized configurations.
pub const CONFIG_SCHEMA_VERSION: u32 = 1;

/// Errors from building, validating or enumerating cycle configurations.
#[derive(Debug, Error)]
pub enum CycleError {
    #[error("node {node} is outside 1..={k}")]
    NodeOutOfRange { node: usize, k: usize },
    #[error("no cycle type has n = {n} and k = {k}")]
    TypeOutOfTable { n: usize, k: usize },
    #[error("n = {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("n = {n} is below the smallest configuration (n = 3)")]
    BelowBase { n: usize },
    #[error("configuration has no blow-up history to undo")]
    EmptyHistory,
    #[error("cycle invariant violated: {0}")]
    Invariant(String),
    #[error("serialized configuration disagrees with its history: {0}")]
    HistoryMismatch(String),
    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Divisor(#[from] divisor::DivisorError),
    #[error("malformed configuration JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// The four local types of the branch quartic at the ridge points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CycleType {
    A0,
    A1,
    A2,
    A3,
}

impl CycleType {
    pub const ALL: [CycleType; 4] = [CycleType::A0, CycleType::A1, CycleType::A2, CycleType::A3];

    /// The index `ν` in `A_ν`.
    pub fn nu(self) -> usize {
        self as usize
    }

    pub fn from_nu(nu: usize) -> Option<Self> {
        Self::ALL.get(nu).copied()
    }

    /// Half the number of cycle components: `n − 2 + ν`.
    pub fn k_for(self, n: usize) -> usize {
        n + self.nu() - 2
    }

    /// Reads the type off `(n, k)`.
    pub fn from_n_k(n: usize, k: usize) -> Result<Self, CycleError> {
        (k + 2)
            .checked_sub(n)
            .and_then(Self::from_nu)
            .ok_or(CycleError::TypeOutOfTable { n, k })
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.nu())
    }
}

impl FromStr for CycleType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim().trim_start_matches(['A', 'a']);
        t.parse::<usize>()
            .ok()
            .and_then(Self::from_nu)
            .ok_or_else(|| format!("unknown type '{s}', expected one of A0, A1, A2, A3"))
    }
}

/// Which half of the cycle a component sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// `C1..Ck`
    Plain,
    /// `C̄1..C̄k`
    Bar,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Plain => Side::Bar,
            Side::Bar => Side::Plain,
        }
    }
}

/// A real anti-canonical cycle on an `n`-pair blow-up of the quadric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleConfig {
    ty: CycleType,
    basis: LatticeBasis,
    components: Vec<CurveClass>,
    history: Vec<usize>,
}

impl CycleConfig {
    /// The unique configuration with `n = 3` of the given type.
    pub fn base(ty: CycleType) -> Self {
        let b = LatticeBasis::new(3);
        let h = &b.h1() + &b.h2();
        let e = |i| b.e(i).expect("index within n = 3");
        let eb = |i| b.ebar(i).expect("index within n = 3");
        let half = &(&(&h - &e(1)) - &e(2)) - &e(3);
        let plain: Vec<CurveClass> = match ty {
            CycleType::A0 => vec![half],
            CycleType::A1 => vec![eb(3), &half - &eb(3)],
            CycleType::A2 => vec![eb(3), &eb(2) - &eb(3), &half - &eb(2)],
            CycleType::A3 => vec![eb(3), &eb(2) - &eb(3), &eb(1) - &eb(2), &half - &eb(1)],
        };
        let bar: Vec<CurveClass> = plain.iter().map(CurveClass::conjugate).collect();
        Self {
            ty,
            basis: b,
            components: plain.into_iter().chain(bar).collect(),
            history: Vec::new(),
        }
    }

    /// Replays a blow-up history from the base configuration of `ty`.
    pub fn from_history(ty: CycleType, nodes: &[usize]) -> Result<Self, CycleError> {
        nodes
            .iter()
            .try_fold(Self::base(ty), |cfg, &node| cfg.blow_up_node(node))
    }

    pub fn cycle_type(&self) -> CycleType {
        self.ty
    }

    pub fn basis(&self) -> LatticeBasis {
        self.basis
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn k(&self) -> usize {
        self.components.len() / 2
    }

    /// All `2k` components in cyclic order `C1..Ck, C̄1..C̄k`.
    pub fn components(&self) -> &[CurveClass] {
        &self.components
    }

    /// Component `Cᵢ` or `C̄ᵢ`, one-based.
    pub fn component(&self, side: Side, i: usize) -> &CurveClass {
        let offset = match side {
            Side::Plain => 0,
            Side::Bar => self.k(),
        };
        &self.components[offset + i - 1]
    }

    /// Node indices blown up, in order, starting from the `n = 3` base.
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    /// Self-intersections of `C1..Ck` (the conjugate side repeats them).
    pub fn self_intersections(&self) -> Vec<i64> {
        self.components[..self.k()]
            .iter()
            .map(|c| c.square().to_i64().expect("self-intersection fits in i64"))
            .collect()
    }

    /// Blows up the node `Cᵢ ∩ Cᵢ₊₁` and its conjugate.
    pub fn blow_up_node(&self, node: usize) -> Result<Self, CycleError> {
        let k = self.k();
        if node == 0 || node > k {
            return Err(CycleError::NodeOutOfRange { node, k });
        }
        let n = self.n() + 1;
        let basis = LatticeBasis::new(n);
        let e_new = basis.e(n)?;
        let eb_new = basis.ebar(n)?;
        let mut comps: Vec<CurveClass> = self.components.iter().map(|c| c.extend_to(n)).collect();
        let len = 2 * k;
        let p = node - 1;
        for pos in [p, (p + 1) % len] {
            comps[pos] = &comps[pos] - &e_new;
        }
        for pos in [(p + k) % len, (p + k + 1) % len] {
            comps[pos] = &comps[pos] - &eb_new;
        }
        let (plain, bar) = comps.split_at(k);
        let mut out = Vec::with_capacity(len + 2);
        out.extend_from_slice(&plain[..node]);
        out.push(e_new);
        out.extend_from_slice(&plain[node..]);
        out.extend_from_slice(&bar[..node]);
        out.push(eb_new);
        out.extend_from_slice(&bar[node..]);
        let mut history = self.history.clone();
        history.push(node);
        Ok(Self {
            ty: self.ty,
            basis,
            components: out,
            history,
        })
    }

    /// Undoes the last blow-up: contracts the newest exceptional pair.
    pub fn blow_down_last(&self) -> Result<Self, CycleError> {
        let (&node, rest) = self.history.split_last().ok_or(CycleError::EmptyHistory)?;
        let n = self.n();
        let k = self.k();
        let e_last = self.basis.e(n)?;
        let eb_last = self.basis.ebar(n)?;
        let mut comps = Vec::with_capacity(2 * k - 2);
        for (pos, c) in self.components.iter().enumerate() {
            if pos == node || pos == k + node {
                continue;
            }
            let restored = &(c - &e_last.scale(c.e_coeff(n))) - &eb_last.scale(c.ebar_coeff(n));
            comps.push(restored.restrict_to(n - 1)?);
        }
        Ok(Self {
            ty: self.ty,
            basis: LatticeBasis::new(n - 1),
            components: comps,
            history: rest.to_vec(),
        })
    }

    /// The type implied by `(n, k)`.
    pub fn type_of(&self) -> Result<CycleType, CycleError> {
        CycleType::from_n_k(self.n(), self.k())
    }

    /// Checks adjacency, conjugation, the anti-canonical sum and the type.
    pub fn validate(&self) -> Result<(), CycleError> {
        let k = self.k();
        let len = 2 * k;
        let inv = |msg: String| Err(CycleError::Invariant(msg));
        for p in 0..len {
            for q in p..len {
                let x = self.components[p].dot(&self.components[q]);
                if p == q {
                    continue;
                }
                let gap = (q - p).min(len - (q - p));
                let expected = match (k, gap) {
                    (1, _) => 2,
                    (_, 1) => 1,
                    _ => 0,
                };
                if x != expected {
                    return inv(format!("components {p} and {q} meet in {x}, expected {expected}"));
                }
            }
        }
        for i in 0..k {
            if self.components[i].conjugate() != self.components[i + k] {
                return inv(format!("C̄{} is not the conjugate of C{}", i + 1, i + 1));
            }
        }
        let sum = self.components.iter().fold(self.basis.zero(), |acc, c| &acc + c);
        if sum != self.basis.anticanonical() {
            return inv(format!("components sum to {sum}, not the anti-canonical class"));
        }
        let sq: i64 = self.components.iter().map(|c| c.dot(c)).sum();
        let expected = 8 - 2 * self.n() as i64 - 4 * k as i64;
        if sq != expected {
            return inv(format!("sum of self-intersections is {sq}, expected {expected}"));
        }
        let t = self.type_of()?;
        if t != self.ty {
            return inv(format!(
                "(n, k) = ({}, {k}) gives {t}, history root is {}",
                self.n(),
                self.ty
            ));
        }
        Ok(())
    }

    /// Divisor multiplicities recomputed from the history.
    pub fn divisor(&self) -> Result<DDivisor, CycleError> {
        Ok(DDivisor::from_config(self)?)
    }

    /// The paired `(self-intersection, d)` sequence of `C1..Ck`.
    pub fn row(&self) -> Result<Row, CycleError> {
        let dd = self.divisor()?;
        Ok(Row {
            self_int: self.self_intersections(),
            d: dd.d().to_vec(),
        })
    }

    /// Serializes to the versioned JSON schema.
    pub fn to_json(&self) -> Result<String, CycleError> {
        let dd = self.divisor()?;
        let components = self
            .components
            .iter()
            .map(|c| {
                c.to_i64_vec()
                    .ok_or_else(|| CycleError::Invariant("component coefficient overflows i64".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let doc = ConfigDoc {
            version: CONFIG_SCHEMA_VERSION,
            n: self.n(),
            cycle_type: self.ty,
            k: self.k(),
            components,
            self_intersections: self.self_intersections(),
            history: HistoryDoc {
                root: self.ty,
                nodes: self.history.clone(),
            },
            d: Some(dd.d().to_vec()),
            dprime: Some(dd.dprime().to_vec()),
            ddprime: Some(dd.ddprime().to_vec()),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    /// Parses the JSON schema, replays the history and checks that the stored
    /// classes agree with it. Derived divisor fields are ignored.
    pub fn from_json(text: &str) -> Result<Self, CycleError> {
        let doc: ConfigDoc = serde_json::from_str(text)?;
        if doc.version != CONFIG_SCHEMA_VERSION {
            return Err(CycleError::SchemaVersion(doc.version));
        }
        let cfg = Self::from_history(doc.history.root, &doc.history.nodes)?;
        let mismatch = |what: String| Err(CycleError::HistoryMismatch(what));
        if doc.cycle_type != cfg.ty {
            return mismatch(format!("type {} vs history root {}", doc.cycle_type, cfg.ty));
        }
        if doc.n != cfg.n() || doc.k != cfg.k() {
            return mismatch(format!(
                "(n, k) = ({}, {}) vs replayed ({}, {})",
                doc.n,
                doc.k,
                cfg.n(),
                cfg.k()
            ));
        }
        let stored = doc
            .components
            .iter()
            .map(|v| cfg.basis.class_from(v.iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        if stored != cfg.components {
            return mismatch("component classes differ from the replayed history".into());
        }
        if doc.self_intersections != cfg.self_intersections() {
            return mismatch("self-intersections differ from the component classes".into());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct HistoryDoc {
    root: CycleType,
    nodes: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ConfigDoc {
    version: u32,
    n: usize,
    #[serde(rename = "type")]
    cycle_type: CycleType,
    k: usize,
    components: Vec<Vec<i64>>,
    self_intersections: Vec<i64>,
    history: HistoryDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dprime: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ddprime: Option<Vec<u64>>,
}

/// Free function form of [`CycleConfig::base`].
pub fn base_config(ty: CycleType) -> CycleConfig {
    CycleConfig::base(ty)
}

/// Free function form of [`CycleConfig::blow_up_node`].
pub fn blow_up_node(cfg: &CycleConfig, node: usize) -> Result<CycleConfig, CycleError> {
    cfg.blow_up_node(node)
}

/// Free function form of [`CycleConfig::type_of`].
pub fn type_of(cfg: &CycleConfig) -> Result<CycleType, CycleError> {
    cfg.type_of()
}

/// A table row: self-intersections and multiplicities of `C1..Ck`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Row {
    pub self_int: Vec<i64>,
    pub d: Vec<u64>,
}

impl Row {
    pub fn new(self_int: Vec<i64>, d: Vec<u64>) -> Self {
        assert_eq!(self_int.len(), d.len(), "row columns must have equal length");
        Self { self_int, d }
    }

    /// Largest multiplicity.
    pub fn d_max(&self) -> u64 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// The same row read in the opposite direction around the cycle,
    /// keeping `C1` in front.
    pub fn reversed(&self) -> Row {
        fn rev<T: Clone>(v: &[T]) -> Vec<T> {
            v.iter().take(1).chain(v[1..].iter().rev()).cloned().collect()
        }
        Row {
            self_int: rev(&self.self_int),
            d: rev(&self.d),
        }
    }

    /// Canonical representative: the lexicographically smaller orientation of
    /// the paired sequence `((s₁, d₁), …, (sₖ, dₖ))`.
    pub fn canonical(&self) -> CanonicalKey {
        let pairs = |r: &Row| -> Vec<(i64, u64)> { r.self_int.iter().copied().zip(r.d.iter().copied()).collect() };
        let fwd = pairs(self);
        let rev = pairs(&self.reversed());
        CanonicalKey(fwd.min(rev))
    }

    /// Renders as `−3¹,−1²`, the superscript being the multiplicity.
    pub fn render_superscript(&self) -> String {
        self.self_int
            .iter()
            .zip(&self.d)
            .map(|(s, d)| format!("{}{}", signed(*s), superscript(*d)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Dedup key for configurations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Vec<(i64, u64)>);

fn signed(x: i64) -> String {
    if x < 0 {
        format!("\u{2212}{}", -x)
    } else {
        x.to_string()
    }
}

fn superscript(x: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    x.to_string().bytes().map(|b| DIGITS[(b - b'0') as usize]).collect()
}

/// All configurations of type `ty` with exactly `n` pairs, one per canonical
/// key, in breadth-first discovery order.
pub fn enumerate_configs(n: usize, ty: CycleType, bound: usize, exec: Exec) -> Result<Vec<CycleConfig>, CycleError> {
    Ok(enumerate_levels(n, ty, bound, exec)?.pop().unwrap_or_default())
}

/// Configurations for every `n` from 3 through `n_max`; entry `j` holds `n = 3 + j`.
///
/// Each level is the closure of the previous one under every node blow-up,
/// keeping the first configuration reached for each canonical key. Parents
/// are scanned in order and nodes in increasing order, so the output is
/// deterministic under both execution strategies.
pub fn enumerate_levels(
    n_max: usize,
    ty: CycleType,
    bound: usize,
    exec: Exec,
) -> Result<Vec<Vec<CycleConfig>>, CycleError> {
    if n_max < 3 {
        return Err(CycleError::BelowBase { n: n_max });
    }
    if n_max > bound {
        return Err(CycleError::BoundExceeded { n: n_max, bound });
    }
    let mut levels = vec![vec![CycleConfig::base(ty)]];
    for _ in 4..=n_max {
        let parents = levels.last().expect("at least the base level");
        let jobs: Vec<(usize, usize)> = parents
            .iter()
            .enumerate()
            .flat_map(|(j, cfg)| (1..=cfg.k()).map(move |node| (j, node)))
            .collect();
        let children = exec.try_map(&jobs, |&(j, node)| -> Result<_, CycleError> {
            let child = parents[j].blow_up_node(node)?;
            let key = child.row()?.canonical();
            Ok((key, child))
        })?;
        let mut seen = HashSet::new();
        let next: Vec<CycleConfig> = children
            .into_iter()
            .filter_map(|(key, child)| seen.insert(key).then_some(child))
            .collect();
        levels.push(next);
    }
    Ok(levels)
}
