use std::fmt::Write as _;

use serde::Serialize;

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub source: String,
    pub methods: Vec<String>,
    pub delta0: f64,
    pub max_iters: usize,
    pub seed: u64,
    pub train_per_class: usize,
    pub pca_dim: Option<usize>,
    pub dprc_dim: Option<usize>,
    pub epsilon_mode: String,
    /// Regularizer actually used by DPRC.
    pub epsilon: Option<f64>,
    /// Feature dimension after preprocessing.
    pub q: usize,
    pub classes: usize,
    pub train_size: usize,
    pub test_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodReport {
    pub method: String,
    pub accuracy: f64,
    pub correct: usize,
    pub total: usize,
    /// `confusion[true][predicted]`
    pub confusion: Vec<Vec<usize>>,
    /// Mean projection iterations per (query, class) pair; PRC-based methods only.
    pub mean_iterations: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

impl MethodReport {
    pub fn from_predictions(
        method: &str,
        truth: &[usize],
        predicted: &[usize],
        classes: usize,
        mean_iterations: Option<f64>,
        wall_time_secs: f64,
    ) -> Self {
        let mut confusion = vec![vec![0; classes]; classes];
        for (&t, &p) in truth.iter().zip(predicted) {
            confusion[t][p] += 1;
        }
        let correct = truth.iter().zip(predicted).filter(|(t, p)| t == p).count();
        let total = truth.len();
        MethodReport {
            method: method.to_string(),
            accuracy: if total == 0 {
                0.0
            } else {
                correct as f64 / total as f64
            },
            correct,
            total,
            confusion,
            mean_iterations,
            wall_time_secs: Some(wall_time_secs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub config: ConfigEcho,
    pub labels: Vec<String>,
    pub methods: Vec<MethodReport>,
}

impl RunReport {
    pub fn method(&self, name: &str) -> Option<&MethodReport> {
        self.methods.iter().find(|m| m.method == name)
    }

    /// JSON report. Wall times are dropped unless `with_timings`, so the default output
    /// depends only on the inputs.
    pub fn to_json(&self, with_timings: bool) -> String {
        let mut report = self.clone();
        if !with_timings {
            report
                .methods
                .iter_mut()
                .for_each(|m| m.wall_time_secs = None);
        }
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(
            s,
            "source={} q={} classes={} train={} test={} seed={} delta0={} max_iters={}",
            c.source, c.q, c.classes, c.train_size, c.test_size, c.seed, c.delta0, c.max_iters
        );
        let _ = writeln!(
            s,
            "{:<6} {:>9} {:>10} {:>10} {:>10}",
            "method", "accuracy", "correct", "mean_iter", "time_ms"
        );
        for m in &self.methods {
            let iters = m
                .mean_iterations
                .map_or_else(|| "-".to_string(), |v| format!("{v:.2}"));
            let ms = m
                .wall_time_secs
                .map_or_else(|| "-".to_string(), |v| format!("{:.1}", v * 1e3));
            let _ = writeln!(
                s,
                "{:<6} {:>9.4} {:>10} {:>10} {:>10}",
                m.method,
                m.accuracy,
                format!("{}/{}", m.correct, m.total),
                iters,
                ms
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn confusion_rows_sum_to_class_counts() {
        let truth = [0, 0, 1, 1, 1, 2];
        let pred = [0, 1, 1, 1, 2, 2];
        let r = MethodReport::from_predictions("x", &truth, &pred, 3, None, 0.0);
        assert_eq!(r.correct, 4);
        assert_eq!(r.total, 6);
        assert_eq!(r.accuracy, 4.0 / 6.0);
        let sums: Vec<usize> = r.confusion.iter().map(|row| row.iter().sum()).collect();
        assert_eq!(sums, vec![2, 3, 1]);
        assert_eq!(r.confusion[1][2], 1);
    }
}
