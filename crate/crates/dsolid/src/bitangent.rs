//! (−1)-curves on the `n = 3` surface and the bitangents of its branch quartic.
//!
//! The anticanonical map of the `n = 3` surface is a double cover of the
//! plane branched along a quartic. A bitangent pulls back to two (−1)-curves
//! `c`, `c′` with `c + c′ = −K` and `c·c′ = 2`. On the blown-up surfaces of
//! types A₁ and A₂, the (−2)-components of the anticanonical cycle are
//! contracted by the double cover. A (−1)-curve `c` whose class meets such a
//! component `R` would have a partner with `c′·R = −c·R < 0` (since `K·R = 0`),
//! so the partner could not be an irreducible curve other than `R`. The
//! catalog therefore keeps exactly the classes orthogonal to every
//! (−2)-component.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycle::{CycleConfig, CycleType};
use crate::divisor::{DDivisor, DivisorError};
use crate::lattice::{CurveClass, LatticeBasis, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitangentError {
    #[error("class {0} has no partner in the catalog")]
    Unpaired(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
}

/// The curve family a (−1)-class belongs to, by its bidegree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveFamily {
    /// An exceptional curve `e_i` or `ē_i`.
    Exceptional,
    /// A ruling through one blown-up point, bidegree (1,0) or (0,1).
    Ruling,
    /// A (1,1)-curve through three points.
    Conic,
    /// A (1,2)- or (2,1)-curve through five points.
    Cubic,
    /// A (2,2)-curve with a node at one point, through the other five.
    Nodal,
}

impl CurveFamily {
    fn of(c: &CurveClass) -> Self {
        let a = c.h1_coeff().clone();
        let b = c.h2_coeff().clone();
        let zero = BigInt::from(0);
        let one = BigInt::from(1);
        let two = BigInt::from(2);
        if a == zero && b == zero {
            CurveFamily::Exceptional
        } else if a.clone() + b.clone() == one {
            CurveFamily::Ruling
        } else if a == one && b == one {
            CurveFamily::Conic
        } else if a == two && b == two {
            CurveFamily::Nodal
        } else {
            CurveFamily::Cubic
        }
    }
}

impl fmt::Display for CurveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveFamily::Exceptional => "exceptional",
            CurveFamily::Ruling => "ruling (1,0)/(0,1)",
            CurveFamily::Conic => "conic (1,1)",
            CurveFamily::Cubic => "curve (1,2)/(2,1)",
            CurveFamily::Nodal => "nodal (2,2)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(serialize_with = "as_string", deserialize_with = "class_from_string")]
    pub class: CurveClass,
    pub family: CurveFamily,
}

fn as_string<S: serde::Serializer>(c: &CurveClass, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

fn class_from_string<'de, D: serde::Deserializer<'de>>(d: D) -> Result<CurveClass, D::Error> {
    let text = <String as Deserialize>::deserialize(d)?;
    parse_class(&text).ok_or_else(|| serde::de::Error::custom(format!("cannot parse class {text:?}")))
}

/// Parses the display form of an `n = 3` class, e.g. `2H1+H2-e1-ē3`.
pub fn parse_class(text: &str) -> Option<CurveClass> {
    let basis = LatticeBasis::new(3);
    let mut coeffs = vec![0i64; basis.rank()];
    let text = text.replace('−', "-");
    if text == "0" {
        return basis.class_from(coeffs).ok();
    }
    let mut rest = text.as_str();
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'-' => {
                rest = &rest[1..];
                -1
            }
            b'+' => {
                rest = &rest[1..];
                1
            }
            _ => 1,
        };
        let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
        let scale: i64 = if digits == 0 { 1 } else { rest[..digits].parse().ok()? };
        rest = &rest[digits..];
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (name, tail) = rest.split_at(end);
        rest = tail;
        let pos = match name {
            "H1" => 0,
            "H2" => 1,
            _ => {
                let (bar, idx) = if let Some(i) = name.strip_prefix("ē") {
                    (true, i)
                } else {
                    (false, name.strip_prefix('e')?)
                };
                let i: usize = idx.parse().ok()?;
                if i == 0 || i > 3 {
                    return None;
                }
                if bar {
                    4 + i
                } else {
                    1 + i
                }
            }
        };
        coeffs[pos] += sign * scale;
    }
    basis.class_from(coeffs).ok()
}

/// Every (−1)-class on the `n = 3` surface of a type that can carry a bitangent component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub cycle_type: CycleType,
    pub entries: Vec<CatalogEntry>,
    pub note: Option<String>,
}

/// All classes with `c² = −1` and `c·(−K) = 1` on the `n = 3` lattice, in a fixed order.
pub fn minus_one_classes() -> Vec<CurveClass> {
    let basis = LatticeBasis::new(3);
    let minus_k = basis.anticanonical();
    let mut out = Vec::new();
    for i in 1..=3 {
        out.push(basis.e(i).expect("index in range"));
    }
    for i in 1..=3 {
        out.push(basis.ebar(i).expect("index in range"));
    }
    for a in 0..=2i64 {
        for b in 0..=2i64 {
            if a == 0 && b == 0 {
                continue;
            }
            for mask in 0..3usize.pow(6) {
                let mut coeffs = vec![a, b];
                let mut x = mask;
                for _ in 0..6 {
                    coeffs.push(-((x % 3) as i64));
                    x /= 3;
                }
                let c = basis.class_from(coeffs).expect("rank 8");
                if c.square() == BigInt::from(-1) && c.dot(&minus_k) == 1 {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Catalog of (−1)-classes available to bitangents on the surface of type `ty`.
pub fn enumerate_minus_one(ty: CycleType) -> Catalog {
    if ty == CycleType::A3 {
        return Catalog {
            cycle_type: ty,
            entries: Vec::new(),
            note: Some("type A3 has no bitangent: the quartic has tacnodes at both ridge points".into()),
        };
    }
    let cfg = CycleConfig::base(ty);
    let contracted: Vec<&CurveClass> = cfg
        .components()
        .iter()
        .filter(|c| c.square() == BigInt::from(-2))
        .collect();
    let entries = minus_one_classes()
        .into_iter()
        .filter(|c| contracted.iter().all(|r| c.dot(r) == 0))
        .map(|class| CatalogEntry {
            family: CurveFamily::of(&class),
            class,
        })
        .collect();
    Catalog {
        cycle_type: ty,
        entries,
        note: None,
    }
}

/// One bitangent: an unordered pair of (−1)-classes summing to `−K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bitangent {
    pub first: CatalogEntry,
    pub second: CatalogEntry,
    /// Conjugation exchanges the two classes.
    pub real: bool,
    /// The pair of line components of the cycle, whose sum is `D`.
    pub ridge: bool,
    /// The index `α` with `{Dʰ_α, D̄ʰ_α}` equal to this pair, for real non-ridge pairs.
    pub alpha: Option<usize>,
}

/// Pairs every class with its partner `−K − c`.
pub fn pair_bitangents(catalog: &Catalog) -> Result<Vec<Bitangent>, BitangentError> {
    if catalog.entries.is_empty() {
        return Ok(Vec::new());
    }
    let ty = catalog.cycle_type;
    let cfg = CycleConfig::base(ty);
    let basis = cfg.basis();
    let minus_k = basis.anticanonical();
    let line = cfg.component(crate::cycle::Side::Plain, 1).clone();
    let line_bar = line.conjugate();
    let dd = DDivisor::from_config(&cfg)?;
    let halves = DDivisor::alpha_range(ty)
        .map(|alpha| Ok((alpha, dd.half_class_alpha(&cfg, alpha)?)))
        .collect::<Result<Vec<_>, BitangentError>>()?;

    let mut used = vec![false; catalog.entries.len()];
    let mut out = Vec::new();
    for (i, entry) in catalog.entries.iter().enumerate() {
        if used[i] {
            continue;
        }
        let partner = &minus_k - &entry.class;
        let j = catalog
            .entries
            .iter()
            .position(|e| e.class == partner)
            .filter(|&j| j != i && !used[j])
            .ok_or_else(|| BitangentError::Unpaired(entry.class.to_string()))?;
        if entry.class.dot(&partner) != 2 {
            return Err(BitangentError::Unpaired(entry.class.to_string()));
        }
        used[i] = true;
        used[j] = true;
        let first = entry.clone();
        let second = catalog.entries[j].clone();
        let real = first.class.conjugate() == second.class;
        let same =
            |x: &CurveClass, y: &CurveClass, a: &CurveClass, b: &CurveClass| (x == a && y == b) || (x == b && y == a);
        let ridge = same(&first.class, &second.class, &line, &line_bar);
        let alpha = if real && !ridge {
            halves
                .iter()
                .find(|(_, (h, hb))| same(&first.class, &second.class, h, hb))
                .map(|(a, _)| *a)
        } else {
            None
        };
        out.push(Bitangent {
            first,
            second,
            real,
            ridge,
            alpha,
        });
    }
    Ok(out)
}

/// Real pairs other than the ridge pair.
pub fn real_bitangents(pairs: &[Bitangent]) -> Vec<Bitangent> {
    pairs.iter().filter(|p| p.real && !p.ridge).cloned().collect()
}

/// Catalog, pairs and real pairs for one type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitangentReport {
    pub cycle_type: CycleType,
    pub catalog: Catalog,
    pub pairs: Vec<Bitangent>,
    pub real: Vec<Bitangent>,
}

pub fn bitangent_report(ty: CycleType) -> Result<BitangentReport, BitangentError> {
    let catalog = enumerate_minus_one(ty);
    let pairs = pair_bitangents(&catalog)?;
    let real = real_bitangents(&pairs);
    Ok(BitangentReport {
        cycle_type: ty,
        catalog,
        pairs,
        real,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        let sizes: Vec<usize> = CycleType::ALL
            .iter()
            .map(|&t| enumerate_minus_one(t).entries.len())
            .collect();
        assert_eq!(sizes, vec![56, 16, 2, 0]);
    }

    #[test]
    fn family_breakdown_for_a0() {
        let cat = enumerate_minus_one(CycleType::A0);
        let count = |f| cat.entries.iter().filter(|e| e.family == f).count();
        assert_eq!(count(CurveFamily::Exceptional), 6);
        assert_eq!(count(CurveFamily::Ruling), 12);
        assert_eq!(count(CurveFamily::Conic), 20);
        assert_eq!(count(CurveFamily::Cubic), 12);
        assert_eq!(count(CurveFamily::Nodal), 6);
    }

    #[test]
    fn pairs_and_real_pairs() {
        for (ty, pairs, real) in [
            (CycleType::A0, 28, 3),
            (CycleType::A1, 8, 2),
            (CycleType::A2, 1, 1),
            (CycleType::A3, 0, 0),
        ] {
            let r = bitangent_report(ty).unwrap();
            assert_eq!(r.pairs.len(), pairs, "{ty}");
            assert_eq!(r.real.len(), real, "{ty}");
            assert!(r.real.iter().all(|p| p.alpha.is_some()), "{ty}");
        }
        let a0 = bitangent_report(CycleType::A0).unwrap();
        assert_eq!(a0.pairs.iter().filter(|p| p.ridge).count(), 1);
    }

    #[test]
    fn exceptional_partner_is_nodal() {
        let r = bitangent_report(CycleType::A0).unwrap();
        for p in &r.pairs {
            if p.first.family == CurveFamily::Exceptional || p.second.family == CurveFamily::Exceptional {
                let fams = [p.first.family, p.second.family];
                assert!(fams.contains(&CurveFamily::Nodal));
            }
        }
    }

    #[test]
    fn class_text_round_trip() {
        for c in minus_one_classes() {
            assert_eq!(parse_class(&c.to_string()), Some(c));
        }
    }
}
