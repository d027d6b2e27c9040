use dude_core::config::NetworkConfig;
use dude_core::metrics::empirical_cdf;
use dude_sim::config_io::{load_config, parse_config, save_config};
use dude_sim::output::{gain_csv_rows, read_cdf_csv, read_gains_csv, read_report, write_outputs, ReportDocument};
use dude_sim::preset::{compare_policies, preset};

fn small() -> NetworkConfig {
    NetworkConfig {
        window_side: 800.0,
        num_drops: 4,
        slots_per_drop: 6,
        master_seed: 77,
        ..NetworkConfig::default()
    }
}

#[test]
fn report_and_csvs_round_trip_exactly() {
    let cmp = compare_policies(&small(), &preset("pico-bias6").unwrap(), 2).unwrap();
    let doc = ReportDocument::new(&cmp.config, Some("pico-bias6"), &cmp.report, cmp.gains.clone()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let written = write_outputs(dir.path(), &doc, &cmp.report, "pico-bias6").unwrap();
    assert_eq!(written.len(), 1 + 2 * 4 + 1);

    assert_eq!(read_report(&dir.path().join("report.json")).unwrap(), doc);

    for policy in &cmp.report.policies {
        for (metric, samples) in [
            ("ul_tx_power_dbm", &policy.ul_tx_power_dbm),
            ("ul_sinr_std_db", &policy.ul_sinr_std_db),
            ("ul_rate_bps", &policy.ul_rate_bps),
        ] {
            let back = read_cdf_csv(&dir.path().join(format!("cdf_{metric}_{}.csv", policy.label))).unwrap();
            assert_eq!(back, empirical_cdf(samples).unwrap(), "{metric}");
        }
    }

    let rows = read_gains_csv(&dir.path().join("gains.csv")).unwrap();
    assert_eq!(rows, gain_csv_rows("pico-bias6", &doc.gains));
    assert_eq!(rows[0].gain_percent, doc.gains[0].rate_gain_p05);
    assert_eq!(rows[1].gain_percent, doc.gains[0].rate_gain_p50);
}

#[test]
fn config_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let config = NetworkConfig {
        pc_alpha: 0.1 + 0.2,
        max_spectral_efficiency: Some(4.8),
        ..small()
    };
    save_config(&path, &config).unwrap();
    assert_eq!(load_config(&path).unwrap(), config);
}

#[test]
fn partial_config_keeps_defaults() {
    let c = parse_config(r#"{"small_bias_db": 6.0, "sinr_sampling": "scheduled_only", "ul_policy": "coupled"}"#).unwrap();
    assert_eq!(c.small_bias_db, 6.0);
    assert_eq!(c.window_side, NetworkConfig::default().window_side);
    assert_eq!(c.sinr_sampling, dude_core::config::SinrSampling::ScheduledOnly);
    assert_eq!(c.ul_policy, dude_core::config::UlPolicy::Coupled);
}
