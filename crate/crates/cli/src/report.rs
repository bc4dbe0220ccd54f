//! CSV and JSON output.
//!
//! Floats in CSV files carry 9 significant digits: plain decimal for
//! exponents in [-5, 9), scientific otherwise, trailing zeros trimmed.

use mmimo_core::campaign::{Anova, CampaignResult, Kpi, KpiSummary, SweepResult};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io;
use std::path::Path;

pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    let sci = format!("{x:.8e}");
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        trim(format!("{:.*}", (8 - exp) as usize, x))
    } else {
        format!("{}e{exp}", trim(mant.to_string()))
    }
}

fn trim(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

pub const METRICS_HEADER: &str = "drop_index,se_cell,ee,mean_latency_ms,pci,success_pct,pilot_overhead";

pub fn metrics_csv(res: &CampaignResult) -> String {
    let mut out = String::from(METRICS_HEADER);
    out.push('\n');
    for d in &res.drops {
        write!(out, "{}", d.drop_index).unwrap();
        for k in Kpi::ALL {
            write!(out, ",{}", num(k.of(d))).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Per-drop latency spread and device-level success (box-plot input).
pub fn latency_csv(res: &CampaignResult) -> String {
    let mut out = String::from("drop_index,latency_p50_ms,latency_iqr_ms,device_success_pct,packets\n");
    for d in &res.drops {
        writeln!(
            out,
            "{},{},{},{},{}",
            d.drop_index,
            num(d.latency_p50_ms),
            num(d.latency_iqr_ms),
            num(d.device_success_pct),
            d.packets
        )
        .unwrap();
    }
    out
}

fn kpi_json(s: &KpiSummary) -> Value {
    json!({ "kpi": s.kpi.name(), "mean": s.mean, "ci95": s.ci95, "min": s.min, "max": s.max })
}

pub fn scenario_json(res: &CampaignResult, seed: u64) -> Value {
    let corr = mmimo_core::campaign::kpi_correlation(&res.drops).ok();
    let mean = |f: fn(&mmimo_core::campaign::DropMetrics) -> f64| {
        res.drops.iter().map(f).sum::<f64>() / res.drops.len() as f64
    };
    json!({
        "scenario": res.scenario,
        "drops": res.drops.len(),
        "master_seed": seed,
        "kpis": res.summary.iter().map(kpi_json).collect::<Vec<_>>(),
        "secondary": {
            "device_success_pct": mean(|d| d.device_success_pct),
            "latency_p50_ms": mean(|d| d.latency_p50_ms),
            "latency_iqr_ms": mean(|d| d.latency_iqr_ms),
        },
        "kpi_correlation": {
            "kpis": Kpi::ALL.iter().map(|k| k.name()).collect::<Vec<_>>(),
            "matrix": corr,
        },
    })
}

/// Wide table: one row per KPI, a mean and a CI column per scenario.
pub fn compare_csv(results: &[CampaignResult]) -> String {
    let mut out = String::from("kpi");
    for r in results {
        write!(out, ",{0}_mean,{0}_ci95", r.scenario).unwrap();
    }
    out.push('\n');
    for k in Kpi::ALL {
        out.push_str(k.name());
        for r in results {
            let s = r.kpi(k);
            write!(out, ",{},{}", num(s.mean), num(s.ci95)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn anova_json(results: &[CampaignResult], anova: &[(Kpi, Result<Anova, String>)]) -> Value {
    json!({
        "scenarios": results.iter().map(|r| r.scenario.as_str()).collect::<Vec<_>>(),
        "kpis": anova.iter().map(|(k, a)| match a {
            Ok(a) => json!({ "kpi": k.name(), "f": a.f, "p": a.p, "df_between": a.df_between, "df_within": a.df_within }),
            Err(reason) => json!({ "kpi": k.name(), "f": null, "p": null, "note": reason }),
        }).collect::<Vec<_>>(),
    })
}

pub fn sweep_csv(res: &SweepResult) -> String {
    let mut out = String::from("n_devices");
    for k in Kpi::ALL {
        write!(out, ",{}", k.name()).unwrap();
    }
    out.push('\n');
    for p in &res.points {
        write!(out, "{}", p.n_devices).unwrap();
        for k in Kpi::ALL {
            let s = p.summary.iter().find(|s| s.kpi == k).expect("every KPI summarized");
            write!(out, ",{}", num(s.mean)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn sweep_json(res: &SweepResult, preset: &str, drops: usize, seed: u64) -> Value {
    json!({
        "preset": preset,
        "drops": drops,
        "master_seed": seed,
        "breaking_point_threshold_pct": mmimo_core::campaign::BREAKING_POINT_PCT,
        "breaking_point": res.breaking_point,
        "points": res.points.iter().map(|p| json!({
            "n_devices": p.n_devices,
            "kpis": p.summary.iter().map(kpi_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn write(dir: &Path, name: &str, text: &str) -> io::Result<String> {
    std::fs::write(dir.join(name), text)?;
    Ok(name.to_string())
}

pub fn write_json(dir: &Path, name: &str, value: &Value) -> io::Result<String> {
    let mut text = serde_json::to_string_pretty(value).expect("json serializes");
    text.push('\n');
    write(dir, name, &text)
}

#[cfg(test)]
mod tests {
    use super::num;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(num(0.0), "0");
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-2.5), "-2.5");
        assert_eq!(num(0.3), "0.3");
        assert_eq!(num(1.0 / 3.0), "0.333333333");
        assert_eq!(num(123456789.4), "123456789");
        assert_eq!(num(1234567894.0), "1.23456789e9");
        assert_eq!(num(3286363.8726), "3286363.87");
        assert_eq!(num(1.5e-7), "1.5e-7");
        assert_eq!(num(0.000123456789123), "0.000123456789");
        assert_eq!(num(99.99999999999), "100");
        assert_eq!(num(f64::NAN), "nan");
    }

    #[test]
    fn round_trip_within_precision() {
        for &x in &[std::f64::consts::PI, 6.02214076e23, -1.602176634e-19, 42.0, 0.125] {
            let back: f64 = num(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 5e-9, "{x}");
        }
    }
}
