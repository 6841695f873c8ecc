use std::fmt::Write as _;

use prc_core::engine::relative_gap;
use prc_core::rng::SeededRng;
use prc_core::{run_projection, Matrix, PrcConfig, ProjectionResult};

use crate::bench::load_source;
use crate::cli::{QueryArg, TraceArgs};
use crate::error::CliError;

const STREAM_TRAIN: u64 = 0;
const STREAM_QUERY: u64 = 1;

/// Resolves the class model and query described by `args`.
pub fn trace_inputs(args: &TraceArgs) -> Result<(Matrix, Vec<f64>), CliError> {
    let (model, q) = if let Some(shape) = args.random {
        if args.class != "0" {
            return Err(CliError::Usage(
                "--random generates a single class `0`".into(),
            ));
        }
        let mut rng = SeededRng::new(args.seed, STREAM_TRAIN);
        let cols: Vec<Vec<f64>> = (0..shape.n).map(|_| rng.gaussian_vec(shape.q)).collect();
        (Matrix::from_columns(&cols)?, shape.q)
    } else {
        let (data, _) = load_source(args.data.as_deref(), args.synth.as_deref(), args.seed)?;
        let class = data
            .label_id(&args.class)
            .or_else(|| {
                args.class
                    .parse::<usize>()
                    .ok()
                    .filter(|&c| c < data.num_classes())
            })
            .ok_or_else(|| CliError::Usage(format!("unknown class `{}`", args.class)))?;
        (data.class(class).clone(), data.dim())
    };

    match args.query {
        QueryArg::Random => Ok((
            model,
            SeededRng::new(args.seed, STREAM_QUERY).gaussian_vec(q),
        )),
        QueryArg::Train(i) | QueryArg::HeldOut(i) => {
            if i >= model.cols() {
                return Err(CliError::Usage(format!(
                    "query index {i} out of range for a class of {} samples",
                    model.cols()
                )));
            }
            let query = model.column(i).into_inner();
            if matches!(args.query, QueryArg::Train(_)) {
                return Ok((model, query));
            }
            if model.cols() < 2 {
                return Err(CliError::Usage(
                    "cannot hold out the only sample of a class".into(),
                ));
            }
            let rest: Vec<_> = (0..model.cols())
                .filter(|&j| j != i)
                .map(|j| model.column(j))
                .collect();
            Ok((Matrix::from_columns(&rest)?, query))
        }
    }
}

/// `iteration,distance,delta` rows; `delta` is the relative gap to the previous distance
/// (the first anchor's distance for row 1).
pub fn trace_csv(result: &ProjectionResult) -> String {
    let mut s = String::from("iteration,distance,delta\n");
    let mut prev = result.initial_distance;
    for (k, &d) in result.trace.iter().enumerate() {
        let _ = writeln!(s, "{},{},{}", k + 1, d, relative_gap(prev, d));
        prev = d;
    }
    s
}

pub fn run_trace(args: &TraceArgs) -> Result<(ProjectionResult, String), CliError> {
    let config = PrcConfig::new(args.iteration.delta0, args.iteration.max_iters)?;
    let (model, query) = trace_inputs(args)?;
    let result = run_projection(&query, &model, &config)?;
    let csv = trace_csv(&result);
    Ok((result, csv))
}
