//! Summary statistics over repetitions.

use serde::Serialize;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Statistics of the uncensored samples; censored runs are only counted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub runs: usize,
    pub censored: usize,
    pub mean: f64,
    pub median: f64,
    pub std_dev: f64,
    /// Half width of the normal-approximation 95% interval; infinite with
    /// fewer than two samples.
    pub ci_half_width: f64,
}

impl Summary {
    /// `samples` holds `None` for censored runs.
    pub fn from_samples(samples: &[Option<f64>]) -> Summary {
        let mut values: Vec<f64> = samples.iter().flatten().copied().collect();
        let censored = samples.len() - values.len();
        let count = values.len();
        if count == 0 {
            return Summary {
                runs: samples.len(),
                censored,
                mean: f64::NAN,
                median: f64::NAN,
                std_dev: f64::NAN,
                ci_half_width: f64::INFINITY,
            };
        }
        let mean = values.iter().sum::<f64>() / count as f64;
        values.sort_by(f64::total_cmp);
        let median = if count % 2 == 1 {
            values[count / 2]
        } else {
            (values[count / 2 - 1] + values[count / 2]) / 2.0
        };
        let (std_dev, ci_half_width) = if count < 2 {
            (f64::NAN, f64::INFINITY)
        } else {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64;
            (var.sqrt(), Z_95 * var.sqrt() / (count as f64).sqrt())
        };
        Summary { runs: samples.len(), censored, mean, median, std_dev, ci_half_width }
    }

    /// `mean + CI` sits at or below `bound` and nothing was censored.
    pub fn below(&self, bound: f64) -> bool {
        self.censored == 0 && self.mean + self.ci_half_width <= bound
    }
}
