use std::path::Path;
use std::time::Instant;

use prc_core::classifiers::{
    dprc_fit, lrc_classify, nn_classify, prc_classify_dataset, DprcClassifier,
};
use prc_core::data::{
    gen_synthetic_subspace, load_csv_dataset, save_model, split_dataset, SynthSpec,
};
use prc_core::linalg::pca_fit;
use prc_core::{Dataset, PrcConfig, Prediction, Vector};
use rayon::prelude::*;

use crate::cli::{BenchArgs, Method};
use crate::error::CliError;
use crate::report::{ConfigEcho, MethodReport, RunReport};

/// Loads a CSV file or generates synthetic data. A synthetic spec without an explicit seed
/// uses `seed`.
pub fn load_source(
    data: Option<&Path>,
    synth: Option<&str>,
    seed: u64,
) -> Result<(Dataset, String), CliError> {
    match (data, synth) {
        (Some(path), None) => Ok((load_csv_dataset(path)?, format!("csv:{}", path.display()))),
        (None, Some(spec)) => {
            let mut parsed: SynthSpec = spec.parse()?;
            let has_seed = spec
                .split(',')
                .any(|kv| kv.split_once('=').is_some_and(|(k, _)| k.trim() == "seed"));
            if !has_seed {
                parsed.seed = seed;
            }
            let data = gen_synthetic_subspace(&parsed)?;
            Ok((data, format!("synth:{parsed}")))
        }
        _ => Err(CliError::Usage(
            "exactly one of --data or --synth is required".into(),
        )),
    }
}

/// Centers and projects both halves onto principal axes fitted on the training half.
fn reduce_with_pca(
    train: &Dataset,
    test: &Dataset,
    dim: usize,
) -> Result<(Dataset, Dataset), CliError> {
    let pca = pca_fit(&train.stacked(), dim)?;
    let map = |x: &[f64]| -> prc_core::Result<Vector> { pca.transform(x) };
    Ok((train.map_samples(map)?, test.map_samples(map)?))
}

fn mean_iterations(predictions: &[Prediction]) -> Option<f64> {
    let runs: Vec<usize> = predictions
        .iter()
        .flat_map(|p| p.per_class_results.iter().map(|r| r.iterations_used))
        .collect();
    if runs.is_empty() {
        None
    } else {
        Some(runs.iter().sum::<usize>() as f64 / runs.len() as f64)
    }
}

pub fn run_bench(args: &BenchArgs) -> Result<RunReport, CliError> {
    let config = PrcConfig::new(args.iteration.delta0, args.iteration.max_iters)?;
    if args.methods.is_empty() {
        return Err(CliError::Usage(
            "--methods must name at least one method".into(),
        ));
    }
    if args.model_out.is_some() && !args.methods.contains(&Method::Dprc) {
        return Err(CliError::Usage(
            "--model-out requires the dprc method".into(),
        ));
    }
    let (data, source) = load_source(args.data.as_deref(), args.synth.as_deref(), args.seed)?;
    let (mut train, mut test) = split_dataset(&data, args.train_per_class, args.seed)?;
    if let Some(dim) = args.pca_dim {
        (train, test) = reduce_with_pca(&train, &test, dim)?;
    }

    let q = train.dim();
    let m = train.num_classes();
    let queries = test.samples();
    let truth: Vec<usize> = queries.iter().map(|(c, _)| *c).collect();
    let dprc_dim = args.methods.contains(&Method::Dprc).then(|| {
        args.dprc_dim
            .unwrap_or_else(|| q.min(m.saturating_sub(1)).max(1))
    });

    let mut methods = Vec::new();
    let mut epsilon = None;
    for &method in &args.methods {
        let start = Instant::now();
        let (predicted, iters) = match method {
            Method::Prc => {
                let preds = queries
                    .par_iter()
                    .map(|(_, x)| prc_classify_dataset(x, &train, &config))
                    .collect::<prc_core::Result<Vec<_>>>()?;
                (
                    preds.iter().map(|p| p.label).collect(),
                    mean_iterations(&preds),
                )
            }
            Method::Dprc => {
                let d = dprc_dim.expect("dprc requested");
                let model = dprc_fit(&train, d, args.epsilon.0, &config)?;
                epsilon = Some(model.epsilon);
                if let Some(path) = &args.model_out {
                    save_model(&model, path)?;
                }
                let classifier = DprcClassifier::new(model, &train, config)?;
                let preds = queries
                    .par_iter()
                    .map(|(_, x)| classifier.classify(x))
                    .collect::<prc_core::Result<Vec<_>>>()?;
                (
                    preds.iter().map(|p| p.label).collect(),
                    mean_iterations(&preds),
                )
            }
            Method::Lrc => {
                let labels = queries
                    .par_iter()
                    .map(|(_, x)| lrc_classify(x, &train).map(|(label, _)| label))
                    .collect::<prc_core::Result<Vec<_>>>()?;
                (labels, None)
            }
            Method::Nn => {
                let labels = queries
                    .par_iter()
                    .map(|(_, x)| nn_classify(x, &train))
                    .collect::<prc_core::Result<Vec<_>>>()?;
                (labels, None)
            }
        };
        let elapsed = start.elapsed().as_secs_f64();
        methods.push(MethodReport::from_predictions(
            method.name(),
            &truth,
            &predicted,
            m,
            iters,
            elapsed,
        ));
    }

    Ok(RunReport {
        config: ConfigEcho {
            source,
            methods: args.methods.iter().map(|m| m.name().to_string()).collect(),
            delta0: config.delta0,
            max_iters: config.max_iters,
            seed: args.seed,
            train_per_class: args.train_per_class,
            pca_dim: args.pca_dim,
            dprc_dim,
            epsilon_mode: args.epsilon.to_string(),
            epsilon,
            q,
            classes: m,
            train_size: train.len(),
            test_size: test.len(),
        },
        labels: train.labels().to_vec(),
        methods,
    })
}
