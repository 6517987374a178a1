//! Monte Carlo experiments on `G(K_{r,r}, p)`.
//!
//! Each sample is classified by the two-component criterion, with the
//! failing clause attributed in the order disconnected, cycle, long
//! bridge. Sample `j` of grid point `i` is drawn from the seed
//! `derive(seed, [i, j])`, so output does not depend on scheduling.

use serde::{Deserialize, Serialize};

use crate::bigraph::{sample_gnp, BiGraph, CriterionOutcome};
use crate::error::{Error, Result};
use crate::fs::{fs_component_count_with, CountOptions};
use crate::{par, seed};

/// `2r(1 - p)^r`: the mean number of isolated vertices.
pub fn expected_isolated(r: usize, p: f64) -> f64 {
    2.0 * r as f64 * (1.0 - p).powi(r as i32)
}

/// `(ln r + c) / r`, clamped to `[0, 1]`.
pub fn offset_probability(r: usize, c: f64) -> f64 {
    (((r as f64).ln() + c) / r as f64).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub r: usize,
    pub p_grid: Vec<f64>,
    /// The offsets `c` that produced `p_grid`, when built from offsets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offsets: Option<Vec<f64>>,
    pub samples_per_point: u64,
    pub seed: u64,
}

impl SweepConfig {
    pub fn from_offsets(r: usize, offsets: &[f64], samples_per_point: u64, seed: u64) -> Self {
        SweepConfig {
            r,
            p_grid: offsets.iter().map(|&c| offset_probability(r, c)).collect(),
            offsets: Some(offsets.to_vec()),
            samples_per_point,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.r < 5 {
            return Err(Error::CriterionNeedsR5(self.r));
        }
        if self.samples_per_point == 0 {
            return Err(Error::Config("samples_per_point must be at least 1".into()));
        }
        if let Some(&p) = self.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::BadProbability(p));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub n: u64,
    pub frac_two: f64,
    pub frac_disc: f64,
    pub frac_cycle: f64,
    pub frac_bridge: f64,
    pub mean_x1: f64,
    pub expected_x1: f64,
    /// Standard error of `frac_two`.
    pub se_two: f64,
    pub se_disc: f64,
    /// Standard error of `mean_x1`.
    pub se_x1: f64,
}

#[derive(Default)]
struct Tally {
    n: u64,
    outcomes: [u64; 4],
    x1_sum: f64,
    x1_sq: f64,
}

fn outcome_slot(o: CriterionOutcome) -> usize {
    match o {
        CriterionOutcome::TwoComponents => 0,
        CriterionOutcome::Disconnected => 1,
        CriterionOutcome::Cycle => 2,
        CriterionOutcome::LongBridge => 3,
    }
}

fn isolated_count(g: &BiGraph) -> u64 {
    (0..g.n()).filter(|&v| g.degree(v) == 0).count() as u64
}

fn frac_se(k: u64, n: u64) -> (f64, f64) {
    let f = k as f64 / n as f64;
    (f, (f * (1.0 - f) / n as f64).sqrt())
}

impl Tally {
    fn row(&self, r: usize, p: f64) -> SweepRow {
        let n = self.n;
        let (frac_two, se_two) = frac_se(self.outcomes[0], n);
        let (frac_disc, se_disc) = frac_se(self.outcomes[1], n);
        let mean = self.x1_sum / n as f64;
        let var = if n > 1 {
            ((self.x1_sq - n as f64 * mean * mean) / (n - 1) as f64).max(0.0)
        } else {
            0.0
        };
        SweepRow {
            p,
            n,
            frac_two,
            frac_disc,
            frac_cycle: self.outcomes[2] as f64 / n as f64,
            frac_bridge: self.outcomes[3] as f64 / n as f64,
            mean_x1: mean,
            expected_x1: expected_isolated(r, p),
            se_two,
            se_disc,
            se_x1: (var / n as f64).sqrt(),
        }
    }
}

/// One row per grid point. `workers` only changes speed.
pub fn sweep(cfg: &SweepConfig, workers: Option<usize>) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let r = cfg.r;
    let mut rows = Vec::with_capacity(cfg.p_grid.len());
    for (i, &p) in cfg.p_grid.iter().enumerate() {
        let idx: Vec<u64> = (0..cfg.samples_per_point).collect();
        let results = par::map_ordered(&idx, workers, |&j| -> Result<(CriterionOutcome, u64)> {
            let g = sample_gnp(r, p, seed::derive(cfg.seed, &[i as u64, j]))?;
            Ok((g.criterion_outcome(), isolated_count(&g)))
        });
        let mut t = Tally::default();
        for res in results {
            let (o, x1) = res?;
            t.n += 1;
            t.outcomes[outcome_slot(o)] += 1;
            t.x1_sum += x1 as f64;
            t.x1_sq += (x1 * x1) as f64;
        }
        rows.push(t.row(r, p));
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Disagreement {
    pub p: f64,
    pub sample: u64,
    pub x: BiGraph,
    pub criterion: bool,
    pub component_count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub r: usize,
    pub seed: u64,
    pub p_list: Vec<f64>,
    pub samples_per_p: u64,
    pub compared: u64,
    pub agreements: u64,
    pub disagreements: Vec<Disagreement>,
}

/// Compares the criterion with exact component counts of
/// `FS(X, K_{5,5})` on `n` samples per probability.
pub fn cross_validate(p_list: &[f64], n: u64, seed: u64, workers: Option<usize>) -> Result<CrossValidation> {
    const R: usize = 5;
    let k = BiGraph::complete(R)?;
    let mut compared = 0;
    let mut disagreements = Vec::new();
    for (i, &p) in p_list.iter().enumerate() {
        for j in 0..n {
            let x = sample_gnp(R, p, seed::derive(seed, &[i as u64, j]))?;
            let criterion = x.zhu_two_components()?;
            let count = fs_component_count_with(&x, &k, &CountOptions { workers, ..Default::default() })?
                .component_count;
            compared += 1;
            if criterion != (count == 2) {
                disagreements.push(Disagreement {
                    p,
                    sample: j,
                    x,
                    criterion,
                    component_count: count,
                });
            }
        }
    }
    Ok(CrossValidation {
        r: R,
        seed,
        p_list: p_list.to_vec(),
        samples_per_p: n,
        compared,
        agreements: compared - disagreements.len() as u64,
        disagreements,
    })
}

/// The fixed CSV columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub p: f64,
    pub n: u64,
    pub frac_two: f64,
    pub frac_disc: f64,
    pub frac_cycle: f64,
    pub frac_bridge: f64,
    #[serde(rename = "mean_X1")]
    pub mean_x1: f64,
    #[serde(rename = "expected_X1")]
    pub expected_x1: f64,
    pub se_two: f64,
}

impl From<&SweepRow> for CsvRow {
    fn from(s: &SweepRow) -> Self {
        CsvRow {
            p: s.p,
            n: s.n,
            frac_two: s.frac_two,
            frac_disc: s.frac_disc,
            frac_cycle: s.frac_cycle,
            frac_bridge: s.frac_bridge,
            mean_x1: s.mean_x1,
            expected_x1: s.expected_x1,
            se_two: s.se_two,
        }
    }
}

pub const CSV_HEADER: &str = "p,n,frac_two,frac_disc,frac_cycle,frac_bridge,mean_X1,expected_X1,se_two";

/// Header plus one line per row; floats use the shortest decimal that
/// parses back to the same value.
pub fn emit_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for r in rows {
        w.serialize(CsvRow::from(r)).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
    format!("{CSV_HEADER}\n{body}")
}

/// Lines starting with `#` are skipped.
pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = rd
        .headers()
        .map_err(|e| Error::parse("csv", 1, e.to_string()))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != CSV_HEADER {
        return Err(Error::parse("csv", 1, format!("unexpected header `{header}`")));
    }
    rd.deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| Error::parse("csv", i + 2, e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expectation_values() {
        assert_eq!(expected_isolated(7, 0.0), 14.0);
        assert_eq!(expected_isolated(7, 1.0), 0.0);
        assert!((expected_isolated(4, 0.25) - 2.53125).abs() < 1e-12);
    }

    #[test]
    fn extreme_probabilities() {
        let cfg = SweepConfig {
            r: 64,
            p_grid: vec![0.0, 1.0],
            offsets: None,
            samples_per_point: 20,
            seed: 1,
        };
        let rows = sweep(&cfg, Some(1)).unwrap();
        assert_eq!((rows[0].frac_two, rows[0].frac_disc, rows[0].mean_x1), (0.0, 1.0, 128.0));
        assert_eq!((rows[1].frac_two, rows[1].mean_x1), (1.0, 0.0));
    }

    #[test]
    fn small_r_rejected() {
        let cfg = SweepConfig::from_offsets(4, &[0.0], 10, 0);
        assert_eq!(sweep(&cfg, None), Err(Error::CriterionNeedsR5(4)));
    }

    #[test]
    fn csv_shapes() {
        assert_eq!(emit_csv(&[]), format!("{CSV_HEADER}\n"));
        let cfg = SweepConfig { r: 64, p_grid: vec![0.0], offsets: None, samples_per_point: 3, seed: 0 };
        let rows = sweep(&cfg, None).unwrap();
        let text = emit_csv(&rows);
        assert_eq!(text.lines().count(), 2);
        assert!(text.lines().nth(1).unwrap().starts_with("0.0,3,0.0,1.0,"));
        assert_eq!(parse_csv(&text).unwrap(), vec![CsvRow::from(&rows[0])]);
        assert!(parse_csv("a,b\n1,2\n").is_err());
        assert_eq!(parse_csv(&format!("# seed 0\n{text}")).unwrap().len(), 1);
    }

    #[test]
    fn cross_validation_extremes() {
        let cv = cross_validate(&[1.0], 1, 0, None).unwrap();
        assert_eq!((cv.compared, cv.agreements), (1, 1));
    }
}
