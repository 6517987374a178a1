use rand::Rng;

use super::BiGraph;
use crate::error::{Error, Result};
use crate::seed;

/// A random edge-subgraph of `K_{r,r}` with independent edge
/// probability `p`. Identical `(r, p, seed)` give identical graphs.
pub fn sample_gnp(r: usize, p: f64, seed: u64) -> Result<BiGraph> {
    sample_gnp_with(r, p, &mut seed::rng(seed, &[]))
}

/// Same as [`sample_gnp`] but drawing from a caller-supplied generator.
///
/// Host edges are visited in the order `(a, b)` row-major and skipped
/// with geometric gaps, so the cost is proportional to the number of
/// edges drawn rather than `r^2`.
pub fn sample_gnp_with<R: Rng + ?Sized>(r: usize, p: f64, rng: &mut R) -> Result<BiGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadProbability(p));
    }
    if p == 1.0 {
        return BiGraph::complete(r);
    }
    let mut g = BiGraph::new(r)?;
    if p == 0.0 {
        return Ok(g);
    }
    let total = (r * r) as u64;
    let log_q = (1.0 - p).ln();
    let mut idx: u64 = 0;
    loop {
        // u in (0, 1]
        let u: f64 = 1.0 - rng.gen::<f64>();
        let skip = (u.ln() / log_q).floor();
        if !skip.is_finite() || skip >= (total - idx) as f64 {
            break;
        }
        idx += skip as u64;
        let (a, b) = ((idx / r as u64) as usize, (idx % r as u64) as usize);
        g.add_edge(a, r + b)?;
        idx += 1;
        if idx >= total {
            break;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        assert_eq!(sample_gnp(6, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(sample_gnp(6, 1.0, 1).unwrap(), BiGraph::complete(6).unwrap());
        assert!(matches!(sample_gnp(3, 1.5, 0), Err(Error::BadProbability(_))));
        assert!(sample_gnp(3, -0.1, 0).is_err());
        assert!(sample_gnp(3, f64::NAN, 0).is_err());
    }

    #[test]
    fn reproducible() {
        assert_eq!(sample_gnp(40, 0.2, 99).unwrap(), sample_gnp(40, 0.2, 99).unwrap());
        assert_ne!(sample_gnp(40, 0.2, 99).unwrap(), sample_gnp(40, 0.2, 100).unwrap());
    }

    #[test]
    fn mean_edge_count_matches_binomial() {
        // r = 100, p = 0.3: each sample is Binomial(10_000, 0.3), mean 3000,
        // variance 2100. The mean of 10_000 samples has standard error
        // sqrt(2100 / 10_000).
        let (r, p, n) = (100usize, 0.3f64, 10_000u64);
        let total: u64 = (0..n)
            .map(|i| sample_gnp(r, p, seed::derive(2024, &[i])).unwrap().edge_count() as u64)
            .sum();
        let mean = total as f64 / n as f64;
        let se = (r as f64 * r as f64 * p * (1.0 - p) / n as f64).sqrt();
        assert!((mean - 3000.0).abs() <= 3.0 * se, "mean {mean}, se {se}");
    }

    #[test]
    fn single_edge_frequency() {
        // edge (0, r) appears with probability p
        let (r, p, n) = (5usize, 0.37f64, 20_000u64);
        let hits = (0..n)
            .filter(|&i| sample_gnp(r, p, seed::derive(5, &[i])).unwrap().has_edge(0, r))
            .count() as f64;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!((hits / n as f64 - p).abs() <= 4.0 * se);
    }
}
