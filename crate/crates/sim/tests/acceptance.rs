//! Acceptance suite at desk scale: 2 km torus, default densities, 200 drops of
//! 50 slots. Each criterion prints one PASS/FAIL line to stderr (uncaptured).

use std::io::Write as _;
use std::sync::OnceLock;

use dude_core::association::{associate_dl, AssociationMap};
use dude_core::channel::{build_link_state, sample_fading, sample_shadowing_db, slot_fading};
use dude_core::config::{NetworkConfig, UlPolicy};
use dude_core::metrics::{percentile, ScenarioReport};
use dude_core::network::{sample_deployment, Deployment, Point, Tier};
use dude_core::rng::{drop_seed, stream, SplitMix64, Stream};
use dude_core::uplink::{simulate_case, transmit_power_dbm, uplink_rate_bps, uplink_sinr, Case, PowerProfile, UplinkSlotState};
use dude_sim::output::ReportDocument;
use dude_sim::preset::{compare_policies, gain_rows, preset, ScenarioPreset, SmallCellProfile};
use dude_sim::runner::{run_cases, run_scenario};
use rand::Rng;

fn desk() -> NetworkConfig {
    NetworkConfig::default()
}

fn verdict(id: &str, ok: bool, detail: String) {
    let line = format!("[{}] {id}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "{id} failed: {detail}");
}

/// Picocell network: coupled bias 0, coupled bias 6, decoupled on shared randomness.
fn pico() -> &'static ScenarioReport {
    static R: OnceLock<ScenarioReport> = OnceLock::new();
    R.get_or_init(|| compare_policies(&desk(), &preset("fig1-cases").unwrap(), 8).unwrap().report)
}

/// Femtocell network with coupled baselines at 0, 6 and 8 dB.
fn femto() -> &'static ScenarioReport {
    static R: OnceLock<ScenarioReport> = OnceLock::new();
    R.get_or_init(|| {
        let p = ScenarioPreset {
            name: "femto-all",
            profile: SmallCellProfile::Femtocell,
            baselines: vec![Case::coupled(0.0), Case::coupled(6.0), Case::coupled(8.0)],
            test: Case::decoupled(),
        };
        compare_policies(&desk(), &p, 8).unwrap().report
    })
}

const C0: usize = 0;
const C6: usize = 1;
const DUDE: usize = 2;

#[test]
fn c01_pico_bias0_rate_gains() {
    let g = pico().compare(C0, DUDE).unwrap();
    let ok = g.rate_gain_p50 > 0.0
        && (40.0..=200.0).contains(&g.rate_gain_p50)
        && (50.0..=250.0).contains(&g.rate_gain_p05);
    verdict(
        "C1 DUDe vs coupled pico, bias 0",
        ok,
        format!(
            "p50 gain {:.1}% in [40,200], p05 gain {:.1}% in [50,250]",
            g.rate_gain_p50, g.rate_gain_p05
        ),
    );
}

#[test]
fn c02_bias6_gains_below_bias0() {
    let g0 = pico().compare(C0, DUDE).unwrap();
    let g6 = pico().compare(C6, DUDE).unwrap();
    let ok = g6.rate_gain_p05 < g0.rate_gain_p05 && g6.rate_gain_p50 < g0.rate_gain_p50;
    verdict(
        "C2 pico bias 6 gains < bias 0 gains",
        ok,
        format!(
            "p05 {:.1}% < {:.1}%, p50 {:.1}% < {:.1}%",
            g6.rate_gain_p05, g0.rate_gain_p05, g6.rate_gain_p50, g0.rate_gain_p50
        ),
    );
}

#[test]
fn c03_femto_gains_exceed_pico() {
    let mut ok = true;
    let mut detail = String::new();
    for (pico_idx, femto_idx, bias) in [(C0, 0, 0), (C6, 1, 6)] {
        let p = pico().compare(pico_idx, DUDE).unwrap();
        let f = femto().compare(femto_idx, 3).unwrap();
        ok &= f.rate_gain_p05 > p.rate_gain_p05 && f.rate_gain_p50 > p.rate_gain_p50;
        detail += &format!(
            "bias {bias}: femto p05/p50 {:.1}%/{:.1}% vs pico {:.1}%/{:.1}%; ",
            f.rate_gain_p05, f.rate_gain_p50, p.rate_gain_p05, p.rate_gain_p50
        );
    }
    let f8 = femto().compare(2, 3).unwrap();
    detail += &format!("femto bias 8: {:.1}%/{:.1}%", f8.rate_gain_p05, f8.rate_gain_p50);
    verdict("C3 femtocell gains > picocell gains", ok, detail);
}

#[test]
fn c04_tx_power_reduction() {
    let g = pico().compare(C6, DUDE).unwrap();
    let ok = g.tx_power_reduction_p50_db >= 1.0 && g.tx_power_reduction_p95_db >= g.tx_power_reduction_p50_db;
    let loss_shift = percentile(&pico().policies[C6].ul_serving_loss_db, 0.5).unwrap()
        - percentile(&pico().policies[DUDE].ul_serving_loss_db, 0.5).unwrap();
    verdict(
        "C4 UL tx power, DUDe vs coupled bias 6",
        ok,
        format!(
            "median reduction {:.2} dB >= 1 dB, p95 reduction {:.2} dB >= median; median serving-loss shift {:.2} dB",
            g.tx_power_reduction_p50_db, g.tx_power_reduction_p95_db, loss_shift
        ),
    );
}

#[test]
fn c05_sinr_std_reduction() {
    let g = pico().compare(C6, DUDE).unwrap();
    let d = percentile(&pico().policies[DUDE].ul_sinr_std_db, 0.5).unwrap();
    let b = percentile(&pico().policies[C6].ul_sinr_std_db, 0.5).unwrap();
    verdict(
        "C5 SINR-std median, DUDe <= coupled bias 6",
        d <= b,
        format!(
            "{d:.3} dB <= {b:.3} dB (median reduction {:.3} dB, mean reduction {:.3} dB)",
            g.sinr_std_reduction_p50_db, g.sinr_std_reduction_mean_db
        ),
    );
}

#[test]
fn c06_small_cell_ul_load_ordering() {
    let r = pico();
    let load = |i| r.mean_ues_per_cell(i, Tier::Small, dude_core::association::Direction::Ul);
    let (d, b6, b0) = (load(DUDE), load(C6), load(C0));
    verdict(
        "C6 mean UL UEs per small cell",
        d >= b6 && b6 >= b0,
        format!("DUDe {d:.2} >= coupled-6dB {b6:.2} >= coupled-0dB {b0:.2}"),
    );
}

#[test]
fn c07_per_ue_dominance() {
    let r = pico();
    let dude = &r.policies[DUDE];
    let mut violations = 0usize;
    for coupled in [&r.policies[C0], &r.policies[C6]] {
        assert_eq!(coupled.ul_serving_loss_db.len(), dude.ul_serving_loss_db.len());
        for i in 0..dude.ul_serving_loss_db.len() {
            violations += usize::from(dude.ul_serving_loss_db[i] > coupled.ul_serving_loss_db[i]);
            violations += usize::from(dude.ul_tx_power_dbm[i] > coupled.ul_tx_power_dbm[i]);
        }
    }
    verdict(
        "C7 per-UE dominance (loss and tx power)",
        violations == 0,
        format!("{violations} violations over {} UE-drops x 2 baselines", dude.ul_serving_loss_db.len()),
    );
}

// --- independent recomputation for C8 -------------------------------------

fn oracle_distance(a: Point, b: Point, side: f64) -> f64 {
    let mut dx = (a.x - b.x).abs();
    let mut dy = (a.y - b.y).abs();
    if dx > side / 2.0 {
        dx = side - dx;
    }
    if dy > side / 2.0 {
        dy = side - dy;
    }
    (dx * dx + dy * dy).sqrt()
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-9 * a.abs().max(b.abs())
}

#[test]
fn c08_oracle_equivalence() {
    let mut rng = SplitMix64::new(0x0dde);
    let mut mismatches = Vec::new();
    for instance in 0..1000 {
        let config = NetworkConfig {
            window_side: 1000.0,
            small_bias_db: rng.random_range(0.0..10.0),
            small_power_dbm: if rng.random::<bool>() { 30.0 } else { 20.0 },
            pc_p0_dbm: rng.random_range(-95.0..-60.0),
            pc_alpha: rng.random_range(0.0..=1.0),
            ..NetworkConfig::default()
        };
        let bs: Vec<(Point, Tier)> = (0..3)
            .map(|_| {
                let tier = if rng.random::<bool>() { Tier::Macro } else { Tier::Small };
                (Point::new(rng.random_range(0.0..1000.0), rng.random_range(0.0..1000.0)), tier)
            })
            .collect();
        let ues: Vec<Point> = (0..5)
            .map(|_| Point::new(rng.random_range(0.0..1000.0), rng.random_range(0.0..1000.0)))
            .collect();
        let dep = Deployment::from_positions(&config, bs.clone(), ues.clone());
        let ls = build_link_state(&dep, &config, &mut SplitMix64::new(instance));

        // direct formulas
        let power = |t: Tier| if t == Tier::Macro { 46.0 } else { config.small_power_dbm };
        let bias = |t: Tier| if t == Tier::Macro { 0.0 } else { config.small_bias_db };
        let loss: Vec<Vec<f64>> = (0..5)
            .map(|u| {
                (0..3)
                    .map(|b| {
                        let d = oracle_distance(ues[u], bs[b].0, 1000.0).max(1.0);
                        40.75 + 35.0 * d.log10() - ls.shadowing_db(u, b)
                    })
                    .collect()
            })
            .collect();
        let first_max = |v: &[f64]| {
            let m = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            v.iter().position(|&x| x == m).unwrap()
        };
        let dl: Vec<usize> = (0..5)
            .map(|u| first_max(&(0..3).map(|b| power(bs[b].1) + bias(bs[b].1) - loss[u][b]).collect::<Vec<_>>()))
            .collect();
        let ul: Vec<usize> = (0..5)
            .map(|u| first_max(&(0..3).map(|b| -loss[u][b]).collect::<Vec<_>>()))
            .collect();
        let tx: Vec<f64> = (0..5)
            .map(|u| (config.pc_p0_dbm + config.pc_alpha * loss[u][ul[u]]).min(20.0))
            .collect();

        // implementation
        for (u, row) in loss.iter().enumerate() {
            for (b, &want) in row.iter().enumerate() {
                if !close(ls.coupling_loss_db(u, b), want) {
                    mismatches.push(format!("#{instance} loss {u},{b}"));
                }
            }
        }
        let map = AssociationMap::build(UlPolicy::Decoupled, &dep, &ls);
        if map.dl_cell != dl || map.ul_cell != ul {
            mismatches.push(format!("#{instance} association"));
        }
        let case = simulate_case(&config, &dep, &ls, Case { ul_policy: UlPolicy::Decoupled, small_bias_db: config.small_bias_db }, instance)
            .unwrap();
        if case.association.ul_cell != ul {
            mismatches.push(format!("#{instance} engine association"));
        }
        for u in 0..5 {
            if !close(case.ue[u].tx_power_dbm, tx[u]) || !close(transmit_power_dbm(loss[u][ul[u]], &config), tx[u]) {
                mismatches.push(format!("#{instance} tx power {u}"));
            }
        }

        // one slot: random reference-block holders and fading
        let active: Vec<Option<usize>> = (0..3)
            .map(|b| {
                let members: Vec<usize> = (0..5).filter(|&u| ul[u] == b).collect();
                if members.is_empty() {
                    None
                } else {
                    Some(members[rng.random_range(0..members.len())])
                }
            })
            .collect();
        let fading: Vec<f64> = (0..15).map(|_| sample_fading(&mut rng)).collect();
        let profile = PowerProfile::from_dbm(tx.clone());
        let slot = UplinkSlotState::with_fading(active.clone(), &profile, fading.clone());
        let noise_mw = 10f64.powf((-174.0 + 10.0 * (20e6f64 / 100.0).log10() + 5.0) / 10.0);
        let rx = |k: usize, b: usize| 10f64.powf((tx[k] - loss[k][b]) / 10.0) * fading[k * 3 + b];
        let mut oracle_sinr = [0.0; 5];
        for u in 0..5 {
            let b = ul[u];
            let interference: f64 = (0..3).filter(|&c| c != b).filter_map(|c| active[c]).map(|k| rx(k, b)).sum();
            oracle_sinr[u] = rx(u, b) / (noise_mw + interference);
            if !close(uplink_sinr(u, b, &slot, &ls, &config), oracle_sinr[u]) {
                mismatches.push(format!("#{instance} sinr {u}"));
            }
        }
        for u in 0..5 {
            let load = ul.iter().filter(|&&b| b == ul[u]).count();
            let series = [oracle_sinr[u], oracle_sinr[(u + 1) % 5]];
            let want = 20e6 / load as f64 * (series.iter().map(|s| (1.0 + s).log2()).sum::<f64>() / 2.0);
            if !close(uplink_rate_bps(u, &series, load, &config).unwrap(), want) {
                mismatches.push(format!("#{instance} rate {u}"));
            }
        }
    }
    verdict(
        "C8 oracle equivalence on 1000 random 3-BS/5-UE instances",
        mismatches.is_empty(),
        format!("{} mismatches at 1e-9 relative {:?}", mismatches.len(), mismatches.iter().take(5).collect::<Vec<_>>()),
    );
}

#[test]
fn c09_determinism_across_worker_counts() {
    let config = desk();
    let doc = |workers| {
        let report = run_scenario(&config, workers).unwrap();
        ReportDocument::new(&config, None, &report, gain_rows(&report).unwrap()).unwrap().to_json()
    };
    let one = doc(1);
    let eight = doc(8);
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.json"), &one).unwrap();
    std::fs::write(dir.path().join("b.json"), &eight).unwrap();
    let same = std::fs::read(dir.path().join("a.json")).unwrap() == std::fs::read(dir.path().join("b.json")).unwrap();
    verdict(
        "C9 byte-identical report.json at 1 and 8 workers",
        same,
        format!("{} bytes each", one.len()),
    );
}

#[test]
fn c10_distribution_checks() {
    let config = desk();
    let mut rng = stream(10, Stream::Shadowing, 0);
    let n = 1_000_000;
    let draws: Vec<f64> = (0..n).map(|_| sample_shadowing_db(&mut rng, config.shadowing_std_db)).collect();
    let mean = draws.iter().sum::<f64>() / n as f64;
    let std = (draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64).sqrt();
    let fading_mean = (0..n).map(|i| slot_fading(10, i as u64, i % 97, i % 13)).sum::<f64>() / n as f64;

    let drops = 1000u64;
    let (mut macros, mut smalls) = (0usize, 0usize);
    for d in 0..drops {
        let dep = sample_deployment(&config, drop_seed(config.master_seed, d)).unwrap();
        macros += dep.tier_count(Tier::Macro);
        smalls += dep.tier_count(Tier::Small);
    }
    let macro_mean = macros as f64 / drops as f64;
    let small_mean = smalls as f64 / drops as f64;
    let want_macro = config.macro_density * config.area_km2();
    let want_small = config.small_density * config.area_km2();

    let ok = (std - 8.0).abs() <= 0.1
        && (fading_mean - 1.0).abs() <= 0.01
        && (macro_mean - want_macro).abs() <= 0.05 * want_macro
        && (small_mean - want_small).abs() <= 0.05 * want_small;
    verdict(
        "C10 distribution checks",
        ok,
        format!(
            "shadowing std {std:.4} dB, fading mean {fading_mean:.4}, macro {macro_mean:.2}/{want_macro}, small {small_mean:.2}/{want_small}"
        ),
    );
}

#[test]
fn c11_constant_bias_shift_invariance() {
    let config = desk();
    let mut changed = 0usize;
    let mut checked = 0usize;
    for d in 0..20 {
        let seed = drop_seed(config.master_seed, d);
        let dep = sample_deployment(&config, seed).unwrap();
        let ls = build_link_state(&dep, &config, &mut stream(seed, Stream::Shadowing, 0));
        for small_bias in [0.0, 6.0, 8.0] {
            let base = dep.with_small_bias(small_bias);
            for shift in [-5.0, 2.5, 17.0] {
                let mut shifted = base.clone();
                for bs in &mut shifted.bs_list {
                    bs.bias_db += shift;
                }
                for policy in [UlPolicy::Coupled, UlPolicy::Decoupled] {
                    checked += 1;
                    changed += usize::from(AssociationMap::build(policy, &base, &ls) != AssociationMap::build(policy, &shifted, &ls));
                }
                assert_eq!(associate_dl(&base, &ls), associate_dl(&shifted, &ls));
            }
        }
    }
    verdict(
        "C11 constant bias shift leaves associations unchanged",
        changed == 0,
        format!("{changed} of {checked} association maps changed"),
    );
}

#[test]
fn c00_named_presets_match_shared_run() {
    // The pico presets evaluated separately reproduce the combined run.
    let config = NetworkConfig { num_drops: 20, ..desk() };
    let combined = compare_policies(&config, &preset("fig1-cases").unwrap(), 4).unwrap();
    let alone = compare_policies(&config, &preset("pico-bias6").unwrap(), 4).unwrap();
    assert_eq!(alone.gains[0], combined.gains[1]);
    let three = run_cases(&preset("fig1-cases").unwrap().apply(&config), &preset("fig1-cases").unwrap().cases(), 1).unwrap();
    assert_eq!(three, combined.report);
}
