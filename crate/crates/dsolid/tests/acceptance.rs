//! Acceptance suite: one line per criterion, `PASS` or `FAIL`.
//!
//! Runs without the libtest harness, so `cargo test` always shows the report
//! and a non-zero exit marks a criterion with an unexpected status. Criteria listed in [`KNOWN_FAILURES`] are reported faithfully and
//! are asserted to keep failing, so a change in their status is noticed.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use dsolid::bitangent::bitangent_report;
use dsolid::cycle::{enumerate_levels, CanonicalKey, CycleConfig, CycleType, Row, Side};
use dsolid::divisor::DDivisor;
use dsolid::exec::Exec;
use dsolid::families::{interior_family_sequence, linear_family, realize};
use dsolid::poly::{rat, Poly};
use dsolid::quartic::{analyze_quartic, classify_local, LocalForm, SingularityType};
use dsolid::report::{component_table, divisor_table, greedy_table, render_sequence};
use dsolid::resolution::{
    compute_e, compute_m, compute_mu_boundary, compute_mu_interior, e_from_base_curves, h0_formula, riemann_roch,
    stable_base_curves, MuValue, ResolutionChoice,
};

/// Enumeration bound used throughout.
const N_MAX: usize = 8;
/// Seeds per `(ν, m)` for the quartic check.
const QUARTIC_SEEDS: u64 = 10;
/// Generic planes sampled per seed.
const QUARTIC_PLANES: usize = 5;
/// Minimum number of non-degenerate seeds out of [`QUARTIC_SEEDS`].
const QUARTIC_MIN_GOOD: usize = 8;
/// Largest `m` in the `h⁰` check.
const H0_M_MAX: u64 = 50;
/// Range of `n` and `|l|` in the Riemann–Roch check.
const RR_RANGE: i64 = 20;

/// Criteria that cannot be met; see the README.
const KNOWN_FAILURES: &[&str] = &["3b"];

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(id: &'static str, pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        id,
        pass,
        detail: detail.into(),
    }
}

fn all_configs() -> BTreeMap<CycleType, Vec<Vec<CycleConfig>>> {
    CycleType::ALL
        .iter()
        .map(|&ty| (ty, enumerate_levels(N_MAX, ty, N_MAX, Exec::default()).unwrap()))
        .collect()
}

/// Every configuration with `3 ≤ n ≤ N_MAX`, with its `n`.
fn flat(configs: &BTreeMap<CycleType, Vec<Vec<CycleConfig>>>) -> Vec<(usize, &CycleConfig)> {
    configs
        .values()
        .flat_map(|levels| {
            levels
                .iter()
                .enumerate()
                .flat_map(|(j, l)| l.iter().map(move |c| (3 + j, c)))
        })
        .collect()
}

fn markdown_rows(n: usize) -> Vec<(CycleType, String, u64)> {
    divisor_table(n, N_MAX, Exec::default())
        .unwrap()
        .rows
        .iter()
        .map(|r| (r.cycle_type, render_sequence(&r.row(), n == 3, true), r.d))
        .collect()
}

fn criterion_1() -> Outcome {
    let printed = [
        (CycleType::A0, "**−1**;**−1**"),
        (CycleType::A1, "**−1**,−2;**−1**,−2"),
        (CycleType::A2, "**−1**,−2,−2;**−1**,−2,−2"),
        (CycleType::A3, "**−1**,−2,−2,−2;**−1**,−2,−2,−2"),
    ];
    let expected: Vec<_> = printed.iter().map(|(t, s)| (*t, s.to_string(), 1)).collect();
    let got = markdown_rows(3);
    outcome("1", got == expected, format!("{} rows, all d = 1", got.len()))
}

fn criterion_2() -> Outcome {
    let printed = [
        (CycleType::A0, "**−3**¹,−1²;**−3**¹,−1²"),
        (CycleType::A1, "**−2**¹,−1²,−3¹;**−2**¹,−1²,−3¹"),
        (CycleType::A2, "**−2**¹,−1²,−3¹,−2¹;**−2**¹,−1²,−3¹,−2¹"),
        (CycleType::A2, "**−1**¹,−3¹,−1²,−3¹;**−1**¹,−3¹,−1²,−3¹"),
        (CycleType::A3, "**−2**¹,−1²,−3¹,−2¹,−2¹;**−2**¹,−1²,−3¹,−2¹,−2¹"),
        (CycleType::A3, "**−1**¹,−3¹,−1²,−3¹,−2¹;**−1**¹,−3¹,−1²,−3¹,−2¹"),
    ];
    let expected: BTreeSet<_> = printed.iter().map(|(t, s)| (*t, s.to_string(), 2)).collect();
    let got = markdown_rows(4);
    let got_set: BTreeSet<_> = got.iter().cloned().collect();
    outcome(
        "2",
        got.len() == 6 && got_set == expected,
        format!("{} rows (1+1+2+2 printed), all d = 2", got.len()),
    )
}

/// The printed n = 5 table, in order, as `(type, half sequence, d)`.
const PRINTED_N5: [(CycleType, &str, u64); 22] = [
    (CycleType::A0, "-4^1,-1^3,-2^2", 3),
    (CycleType::A1, "-3^1,-1^3,-2^2,-3^1", 3),
    (CycleType::A1, "-2^1,-2^2,-1^3,-4^1", 3),
    (CycleType::A1, "-3^1,-1^2,-4^1,-1^2", 2),
    (CycleType::A2, "-3^1,-1^3,-2^2,-3^1,-2^1", 3),
    (CycleType::A2, "-2^1,-2^2,-1^3,-4^1,-2^1", 3),
    (CycleType::A2, "-2^1,-1^2,-4^1,-1^2,-3^1", 2),
    (CycleType::A2, "-3^1,-1^2,-3^1,-3^1,-1^2", 2),
    (CycleType::A2, "-2^1,-1^2,-4^1,-1^2,-3^1", 2),
    (CycleType::A2, "-1^1,-4^1,-1^3,-2^2,-3^1", 3),
    (CycleType::A2, "-1^1,-3^1,-2^2,-1^3,-4^1", 3),
    (CycleType::A2, "-2^1,-3^1,-1^2,-4^1,-1^2", 2),
    (CycleType::A3, "-3^1,-1^3,-2^2,-3^1,-2^1,-2^1", 3),
    (CycleType::A3, "-2^1,-2^2,-1^3,-4^1,-2^1,-2^1", 3),
    (CycleType::A3, "-2^1,-1^2,-4^1,-1^2,-3^1,-2^1", 2),
    (CycleType::A3, "-2^1,-1^2,-3^1,-3^1,-1^2,-3^1", 2),
    (CycleType::A3, "-3^1,-1^2,-3^1,-2^1,-3^1,-1^2", 2),
    (CycleType::A3, "-2^1,-1^2,-4^1,-1^2,-3^1,-2^1", 2),
    (CycleType::A3, "-1^1,-4^1,-1^3,-2^2,-3^1,-2^1", 3),
    (CycleType::A3, "-1^1,-3^1,-2^2,-1^3,-4^1,-2^1", 3),
    (CycleType::A3, "-1^1,-3^1,-1^2,-4^1,-1^2,-3^1", 2),
    (CycleType::A3, "-2^1,-3^1,-1^2,-3^1,-3^1,-1^2", 2),
];

fn parse_half(text: &str) -> Row {
    let (s, d): (Vec<i64>, Vec<u64>) = text
        .split(',')
        .map(|p| {
            let (a, b) = p.split_once('^').unwrap();
            (a.parse::<i64>().unwrap(), b.parse::<u64>().unwrap())
        })
        .unzip();
    Row::new(s, d)
}

type Keyed = BTreeSet<(CycleType, CanonicalKey, u64)>;

fn printed_n5_keys() -> Keyed {
    PRINTED_N5
        .iter()
        .map(|(t, s, d)| (*t, parse_half(s).canonical(), *d))
        .collect()
}

fn criterion_3a() -> Outcome {
    let table = divisor_table(5, N_MAX, Exec::default()).unwrap();
    let emitted: Keyed = table
        .rows
        .iter()
        .map(|r| (r.cycle_type, r.row().canonical(), r.d))
        .collect();
    let printed = printed_n5_keys();
    let d_consistent = PRINTED_N5.iter().all(|(_, s, d)| parse_half(s).d_max() == *d);
    outcome(
        "3a",
        emitted == printed && emitted.len() == table.rows.len() && d_consistent,
        format!(
            "{} emitted rows; canonical classes of the printed rows: {}; sets equal: {}",
            table.rows.len(),
            printed.len(),
            emitted == printed
        ),
    )
}

fn criterion_3b() -> Outcome {
    let table = divisor_table(5, N_MAX, Exec::default()).unwrap();
    let mut per_type = BTreeMap::new();
    for r in &table.rows {
        *per_type.entry(r.cycle_type).or_insert(0usize) += 1;
    }
    let counts: Vec<usize> = CycleType::ALL
        .iter()
        .map(|t| per_type.get(t).copied().unwrap_or(0))
        .collect();
    let exact: BTreeSet<_> = PRINTED_N5.iter().map(|(t, s, _)| (*t, *s)).collect();
    let exact_duplicates = PRINTED_N5.len() - exact.len();
    let mirrors = exact.len() - printed_n5_keys().len();
    outcome(
        "3b",
        counts == [1, 3, 8, 10],
        format!(
            "raw row count {:?} vs printed [1, 3, 8, 10]; the printed list has {} exact repeats and {} reversal mirrors",
            counts, exact_duplicates, mirrors
        ),
    )
}

fn criterion_4(configs: &BTreeMap<CycleType, Vec<Vec<CycleConfig>>>) -> Outcome {
    let direct = flat(configs)
        .iter()
        .filter(|(n, cfg)| {
            let two_k = 2 * cfg.k();
            let expected = match cfg.cycle_type() {
                CycleType::A0 => 2 * (n - 2),
                CycleType::A1 => 2 * (n - 1),
                CycleType::A2 => 2 * n,
                CycleType::A3 => 2 * (n + 1),
            };
            two_k != expected || cfg.type_of().ok() != Some(cfg.cycle_type())
        })
        .count();
    let table = component_table(N_MAX, N_MAX, Exec::default()).unwrap();
    let reported: usize = table.rows.iter().map(|r| r.violations).sum();
    let total: usize = table.rows.iter().map(|r| r.configurations).sum();
    outcome(
        "4",
        direct == 0 && reported == 0,
        format!("{total} configurations, {direct} violations"),
    )
}

fn criterion_5() -> Outcome {
    let expected_e = [2, 4, 6, 9, 14, 22, 35];
    let table = greedy_table(11, None, N_MAX, Exec::default()).unwrap();
    let head = &table.rows[..7];
    let e_ok = head.iter().map(|r| r.e).eq(expected_e);
    let d_ok = head
        .iter()
        .all(|r| r.printed_d_sequence.as_deref() == Some(r.d_sequence.as_slice()) && !r.discrepancy);
    let last = &table.rows[7];
    let flagged = last.n == 11 && last.printed_e == Some(57) && last.discrepancy;
    outcome(
        "5",
        e_ok && d_ok && flagged,
        format!(
            "n = 4..10 reproduced: {}; n = 11 computed e = {} for {}, flagged against printed 57: {}",
            e_ok && d_ok,
            last.e,
            last.d_sequence,
            flagged
        ),
    )
}

fn criterion_6(configs: &BTreeMap<CycleType, Vec<Vec<CycleConfig>>>) -> Outcome {
    let mut cases = 0usize;
    let mut violations = 0usize;
    for (n, cfg) in flat(configs) {
        let d = DDivisor::from_config(cfg).unwrap();
        let seq = d.sequence();
        for rc in ResolutionChoice::all(seq.k()) {
            cases += 1;
            let e = compute_e(seq, &rc);
            if e < (n as u64 - 2) || e < seq.d_max() {
                violations += 1;
            }
        }
    }
    outcome("6", violations == 0, format!("{cases} cases, {violations} violations"))
}

/// `(e, μ⁽¹⁾, μ⁽ᵏ⁾)` for one resolution choice.
type Split = (u64, u64, u64);

fn criterion_7(configs: &BTreeMap<CycleType, Vec<Vec<CycleConfig>>>) -> Outcome {
    let mut configurations = 0usize;
    let mut bad = 0usize;
    let mut oracle_mismatch = 0usize;
    for (_, cfg) in flat(configs) {
        configurations += 1;
        let seq = DDivisor::from_config(cfg).unwrap().sequence().clone();
        let mut totals = BTreeSet::new();
        let mut per_ridge: BTreeMap<(bool, bool), BTreeSet<Split>> = BTreeMap::new();
        for rc in ResolutionChoice::all(seq.k()) {
            let e = compute_e(&seq, &rc);
            let (mu1, muk) = compute_mu_boundary(&seq, &rc);
            if e_from_base_curves(&seq, &rc, &stable_base_curves(&seq, &rc)) != e {
                oracle_mismatch += 1;
            }
            totals.insert(e + mu1 + muk);
            per_ridge
                .entry((rc.ridge_first, rc.ridge_last))
                .or_default()
                .insert((e, mu1, muk));
        }
        if totals.len() != 1 || per_ridge.values().any(|s| s.len() != 1) {
            bad += 1;
        }
    }
    outcome(
        "7",
        bad == 0 && oracle_mismatch == 0,
        format!(
            "{configurations} configurations, {bad} non-invariant, {oracle_mismatch} base-curve accounting mismatches"
        ),
    )
}

fn criterion_8(configs: &BTreeMap<CycleType, Vec<Vec<CycleConfig>>>) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let n4: Vec<_> = flat(configs).into_iter().filter(|(n, _)| *n == 4).collect();
    let n4_bad = n4
        .iter()
        .filter(|(_, cfg)| compute_m(DDivisor::from_config(cfg).unwrap().sequence()).m != MuValue::Exact(2))
        .count();
    ok &= n4_bad == 0;
    notes.push(format!("n = 4: {}/{} with m = 2 exact", n4.len() - n4_bad, n4.len()));

    let mut linear = 0;
    for ty in [CycleType::A1, CycleType::A2, CycleType::A3] {
        for n in 5..=N_MAX {
            let d = linear_family(ty, n).unwrap();
            let realized = realize(ty, n, &d, N_MAX, Exec::default()).unwrap().is_some();
            let exact = compute_m(&d).m == MuValue::Exact(n as u64 - 2);
            ok &= realized && exact;
            linear += usize::from(realized && exact);
        }
    }
    notes.push(format!("linear families: {linear}/12 realized with m = n-2 exact"));

    for n in [7usize, 8] {
        let d = interior_family_sequence(n).unwrap();
        let realized = realize(CycleType::A0, n, &d, N_MAX, Exec::default()).unwrap().is_some();
        let mu2 = compute_mu_interior(&d, 2).value;
        ok &= realized && mu2 == MuValue::Exact(n as u64 - 5);
        notes.push(format!("interior family n = {n}: mu(2) = {mu2}"));
    }
    outcome("8", ok, notes.join("; "))
}

fn criterion_9() -> Outcome {
    let expected = [
        (CycleType::A0, 56, 28, 3),
        (CycleType::A1, 16, 8, 2),
        (CycleType::A2, 2, 1, 1),
        (CycleType::A3, 0, 0, 0),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (ty, classes, pairs, real) in expected {
        let report = bitangent_report(ty).unwrap();
        let counts = (report.catalog.entries.len(), report.pairs.len(), report.real.len());
        ok &= counts == (classes, pairs, real);

        let cfg = CycleConfig::base(ty);
        let minus_k = cfg.basis().anticanonical();
        let structural = report
            .pairs
            .iter()
            .all(|p| p.first.class.square() == BigInt::from(-1) && &p.first.class + &p.second.class == minus_k);
        let matched = if report.real.is_empty() {
            true
        } else {
            let dd = DDivisor::from_config(&cfg).unwrap();
            let halves: Vec<_> = DDivisor::alpha_range(ty)
                .map(|a| dd.half_class_alpha(&cfg, a).unwrap())
                .collect();
            report.real.iter().all(|p| {
                halves.iter().any(|(h, hb)| {
                    (h == &p.first.class && hb == &p.second.class) || (h == &p.second.class && hb == &p.first.class)
                })
            })
        };
        ok &= structural && matched;
        notes.push(format!("{ty}: {}/{}/{}", counts.0, counts.1, counts.2));
    }
    outcome("9", ok, notes.join(", "))
}

fn criterion_10(configs: &BTreeMap<CycleType, Vec<Vec<CycleConfig>>>) -> Outcome {
    let mut count = 0usize;
    let mut failures = 0usize;
    for (_, cfg) in flat(configs) {
        count += 1;
        let dd = DDivisor::from_config(cfg).unwrap();
        let k = cfg.k();
        let mut class = cfg.basis().zero();
        for i in 1..=k {
            let m = BigInt::from(dd.d()[i - 1]);
            class = &class + &cfg.component(Side::Plain, i).scale(&m);
            class = &class + &cfg.component(Side::Bar, i).scale(&m);
        }
        let line_ok = class.dot(cfg.component(Side::Plain, 1)) == 1 && class.dot(cfg.component(Side::Bar, 1)) == 1;
        let rest_ok = (2..=k)
            .all(|i| class.dot(cfg.component(Side::Plain, i)) == 0 && class.dot(cfg.component(Side::Bar, i)) == 0);
        let square_ok = class.square() == BigInt::from(2);
        let library_ok = dd.check(cfg).is_ok() && dd.check_half_constraints(cfg.cycle_type()).is_ok();
        if !(line_ok && rest_ok && square_ok && library_ok) {
            failures += 1;
        }
    }
    outcome(
        "10",
        failures == 0,
        format!("{count} configurations, {failures} failures"),
    )
}

fn criterion_11() -> Outcome {
    let integral = (0..=RR_RANGE).all(|n| (-RR_RANGE..=RR_RANGE).all(|l| riemann_roch(n, l).is_ok()));
    let at_41 = riemann_roch(4, 1).ok() == Some(BigInt::from(2));
    let n4 = (0..=RR_RANGE).all(|l| riemann_roch(4, l).ok() == Some(BigInt::from(l + 1)));
    outcome(
        "11",
        integral && at_41 && n4,
        format!("integral on the grid: {integral}; chi(4,1) = 2: {at_41}; chi(4,l) = l+1: {n4}"),
    )
}

fn criterion_12() -> Outcome {
    let bad: Vec<u64> = (1..=H0_M_MAX)
        .filter(|&m| h0_formula(m, m as i64).ok() != Some(m + 3))
        .collect();
    outcome("12", bad.is_empty(), format!("m = 1..{H0_M_MAX}, failures {bad:?}"))
}

fn criterion_13() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for ty in CycleType::ALL {
        let expected = SingularityType::expected_for(ty);
        for m in 1..=3usize {
            let mut good = 0usize;
            let mut degenerate = Vec::new();
            for seed in 1..=QUARTIC_SEEDS {
                let report = analyze_quartic(ty, m, seed, QUARTIC_PLANES).unwrap();
                if report.degenerate {
                    degenerate.push(seed);
                    continue;
                }
                good += 1;
                let planes_ok = report.planes.len() == QUARTIC_PLANES
                    && report
                        .planes
                        .iter()
                        .all(|p| p.at_q == expected && p.at_qbar == expected);
                ok &= planes_ok && report.squares_pass();
            }
            ok &= good >= QUARTIC_MIN_GOOD;
            if !degenerate.is_empty() {
                notes.push(format!("{ty} m={m} degenerate seeds {degenerate:?}"));
            }
        }
    }
    let detail = if notes.is_empty() {
        "all seeds non-degenerate".to_string()
    } else {
        notes.join("; ")
    };
    outcome("13", ok, detail)
}

fn criterion_14() -> Outcome {
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let mut ok = true;
    for k in 1..=3u32 {
        let f = &x.pow(2) - &y.pow(k + 1);
        ok &= classify_local(&f) == LocalForm::A(k);
    }
    ok &= classify_local(&(&x * &y)) == LocalForm::A(1);
    ok &= classify_local(&(&x + &Poly::constant(2, rat(0)))) == LocalForm::Smooth;
    outcome("14", ok, "x^2 - y^(k+1) for k = 1, 2, 3 and xy")
}

fn main() {
    let configs = all_configs();
    let outcomes = vec![
        criterion_1(),
        criterion_2(),
        criterion_3a(),
        criterion_3b(),
        criterion_4(&configs),
        criterion_5(),
        criterion_6(&configs),
        criterion_7(&configs),
        criterion_8(&configs),
        criterion_9(),
        criterion_10(&configs),
        criterion_11(),
        criterion_12(),
        criterion_13(),
        criterion_14(),
    ];
    for o in &outcomes {
        let known = if KNOWN_FAILURES.contains(&o.id) { " (known)" } else { "" };
        println!(
            "criterion {:<3} {}{}: {}",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            known,
            o.detail
        );
    }
    let unexpected: Vec<_> = outcomes
        .iter()
        .filter(|o| o.pass == KNOWN_FAILURES.contains(&o.id))
        .map(|o| o.id)
        .collect();
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected status: {unexpected:?}");
        std::process::exit(1);
    }
}
