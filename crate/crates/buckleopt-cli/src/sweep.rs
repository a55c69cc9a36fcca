//! Convergence sweep: regular n-gons inscribed in a fixed disk, eigenvalues
//! reported per member together with the Hausdorff distance to the limit.
//!
//! Convention: the limit disk carries the prescribed perimeter (its radius
//! is p/2π) and the n-gon members are inscribed in it with vertices at
//! angles 2πj/n, so members of a doubling family nest and every member's
//! eigenvalue dominates the disk's. The members themselves are therefore
//! not individually perimeter-rescaled; the disk is the saturated domain.

use std::path::Path;

use serde::{Deserialize, Serialize};

use buckleopt::geometry::{hausdorff_distance, DomainSpec};
use buckleopt::shapeopt::buckling_of_domain;

use crate::{fmt_f64, read_json, write_text, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Family name; "inscribed_ngon" is the only supported family.
    #[serde(default = "default_family")]
    pub family: String,
    pub n_list: Vec<usize>,
    /// Perimeter of the limit disk.
    pub perimeter: f64,
    #[serde(default = "default_eigen_count")]
    pub eigen_count: usize,
    /// Grid spacing = disk diameter / grid_divisor, shared by all members.
    #[serde(default = "default_grid_divisor")]
    pub grid_divisor: usize,
    #[serde(default = "default_true")]
    pub extrapolate: bool,
    /// Output CSV path.
    pub out: String,
    #[serde(default)]
    pub seed: u64,
}

fn default_family() -> String {
    "inscribed_ngon".to_string()
}

fn default_eigen_count() -> usize {
    1
}

fn default_grid_divisor() -> usize {
    96
}

fn default_true() -> bool {
    true
}

pub fn cmd_sweep(config_file: &Path, out_override: Option<&Path>) -> i32 {
    let config: SweepConfig = match read_json(config_file) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if config.family != "inscribed_ngon" {
        eprintln!("error: unsupported sweep family {}", config.family);
        return EXIT_USAGE;
    }
    if config.n_list.is_empty()
        || config.n_list.iter().any(|&n| n < 3)
        || !(config.perimeter > 0.0)
        || config.eigen_count < 1
        || config.grid_divisor < 16
    {
        eprintln!("error: sweep config out of range");
        return EXIT_USAGE;
    }
    let radius = config.perimeter / (2.0 * std::f64::consts::PI);
    let disk = DomainSpec::disk([0.0, 0.0], radius);
    let h = 2.0 * radius / config.grid_divisor as f64;

    let disk_record =
        match buckling_of_domain(&disk, h, config.eigen_count, config.extrapolate) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_NUMERICAL;
            }
        };

    let mut csv = String::new();
    csv.push_str("member,n,d_hausdorff");
    for i in 1..=config.eigen_count {
        csv.push_str(&format!(",lambda{i}"));
    }
    for i in 1..=config.eigen_count {
        csv.push_str(&format!(",disk_lambda{i}"));
    }
    csv.push('\n');

    for &n in &config.n_list {
        let ngon = DomainSpec::polygon(
            (0..n)
                .map(|j| {
                    let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                    [radius * theta.cos(), radius * theta.sin()]
                })
                .collect(),
        );
        let record = match buckling_of_domain(&ngon, h, config.eigen_count, config.extrapolate)
        {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: member n={n}: {e}");
                return EXIT_NUMERICAL;
            }
        };
        let d_h = match hausdorff_distance(&ngon, &disk) {
            Ok(d) => d,
            Err(e) => {
                eprintln!("error: member n={n}: {e}");
                return EXIT_USAGE;
            }
        };
        csv.push_str(&format!("ngon-{n},{n},{}", fmt_f64(d_h)));
        for lambda in &record.lambda {
            csv.push(',');
            csv.push_str(&fmt_f64(*lambda));
        }
        for lambda in &disk_record.lambda {
            csv.push(',');
            csv.push_str(&fmt_f64(*lambda));
        }
        csv.push('\n');
    }

    let out_path = out_override
        .map(|p| p.to_path_buf())
        .unwrap_or_else(|| Path::new(&config.out).to_path_buf());
    if let Err(e) = write_text(&out_path, &csv) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    println!("wrote {} rows to {}", config.n_list.len(), out_path.display());
    EXIT_OK
}
