use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use redwords::export::{flatten, to_dot};
use redwords::hecke::{count_hecke_capped, euler_characteristic_capped};
use redwords::oracle::enumerate_reduced_words;
use redwords::sampling::{to_scientific, uniform_permutation, StreamSource};
use redwords::tableaux::skew_set_valued_count_capped;
use redwords::transition::{leaf_shapes, TreeOptions};
use redwords::*;

use crate::args::{Alg, Cli, Command, SamplingArgs, Target, TreeFormat};
use crate::CliError;

/// A finished result in both renderings.
pub struct Report {
    pub text: String,
    pub json: Value,
}

impl Report {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Report {
            text: text.into(),
            json,
        }
    }
}

fn permutation(cli: &Cli, text: &str) -> Result<Permutation> {
    if cli.code {
        Permutation::parse_code(text)
    } else {
        Permutation::parse_one_line(text)
    }
}

fn integer(value: impl ToString) -> Value {
    Value::String(value.to_string())
}

pub fn run(cli: &Cli) -> std::result::Result<Report, CliError> {
    let report = match &cli.command {
        Command::CountRed {
            perm,
            oracle,
            tree_out,
            node_cap,
        } => {
            let w = permutation(cli, perm)?;
            match (oracle, tree_out) {
                (true, _) => {
                    let count = enumerate_reduced_words(&w)?;
                    Report::new(
                        count.to_string(),
                        json!({ "permutation": w.to_string(), "count": integer(&count), "method": "oracle" }),
                    )
                }
                (false, Some(format)) => tree_report(&w, *format, *node_cap)?,
                (false, None) => count_red_report(&w, *node_cap)?,
            }
        }
        Command::Eg { perm, node_cap } => {
            let w = permutation(cli, perm)?;
            let eg = eg_statistic(&w, *node_cap)?;
            let q = min_branch_depth(&w, *node_cap)?;
            Report::new(
                format!("EG {eg}\nQ {q}"),
                json!({ "permutation": w.to_string(), "eg": integer(eg), "min_branch_depth": integer(q) }),
            )
        }
        Command::CountHecke { perm, len, memo_cap } => {
            let w = permutation(cli, perm)?;
            let count = count_hecke_capped(&w, *len, *memo_cap)?;
            Report::new(
                count.to_string(),
                json!({ "permutation": w.to_string(), "length": integer(len), "count": integer(&count) }),
            )
        }
        Command::FShape { partition } => {
            let lambda = Partition::parse(partition)?;
            let count = hook_count(&lambda);
            Report::new(
                count.to_string(),
                json!({ "shape": lambda.to_string(), "count": integer(&count) }),
            )
        }
        Command::FSkew { shape } => {
            let shape = SkewShape::parse(shape)?;
            let count = skew_det_count(&shape);
            Report::new(
                count.to_string(),
                json!({ "shape": shape.to_string(), "count": integer(&count) }),
            )
        }
        Command::FSetvalued { partition, len } => {
            let lambda = Partition::parse(partition)?;
            let count = set_valued_count(&lambda, *len);
            Report::new(
                count.to_string(),
                json!({ "shape": lambda.to_string(), "length": integer(len), "count": integer(&count) }),
            )
        }
        Command::FSkewSetvalued { shape, len, memo_cap } => {
            let shape = SkewShape::parse(shape)?;
            let count = skew_set_valued_count_capped(&shape, *len, *memo_cap)?;
            Report::new(
                count.to_string(),
                json!({ "shape": shape.to_string(), "length": integer(len), "count": integer(&count) }),
            )
        }
        Command::Estimate {
            target,
            perm,
            len,
            sampling,
        } => {
            let w = permutation(cli, perm)?;
            let (alg, len) = match (target, sampling.alg.unwrap_or(Alg::Y), len) {
                (Target::Red, Alg::Y, None) => (Alg::Y, None),
                (Target::Red, Alg::Y, Some(_)) => {
                    return Err(CliError::Usage("--len does not apply to `estimate red --alg y`".into()))
                }
                (Target::Red, _, Some(n)) if *n != w.length() => {
                    return Err(CliError::Usage(format!(
                        "`estimate red` counts words of length {}, not {n}",
                        w.length()
                    )))
                }
                // Z and H at N = l(w) estimate the number of reduced words
                (Target::Red, alg, _) => (alg, Some(w.length())),
                (Target::Hecke, _, None) => {
                    return Err(CliError::Usage("`estimate hecke` needs --len".into()))
                }
                (Target::Hecke, Alg::Y, Some(_)) if sampling.alg.is_some() => {
                    return Err(CliError::Usage("--alg y estimates reduced words only; use z or h".into()))
                }
                (Target::Hecke, Alg::Y, Some(n)) => (Alg::Z, Some(*n)),
                (Target::Hecke, alg, Some(n)) => (alg, Some(*n)),
            };
            let est = run_estimate(alg, &w, len, sampling)?;
            let target_name = match target {
                Target::Red => "red",
                Target::Hecke => "hecke",
            };
            let mut json = estimate_json(&est);
            json["target"] = json!(target_name);
            Report::new(estimate_text(&est, cli.digits, 1), json)
        }
        Command::EulerBn {
            g,
            r,
            d,
            alpha,
            beta,
            estimate,
            sampling,
            memo_cap,
        } => {
            let alpha = parse_sequence(alpha)?;
            let beta = parse_sequence(beta)?;
            let params = BrillNoetherParams::new(*g, *r, *d, alpha, beta)?;
            let shape = brill_noether_shape(&params)?;
            let sign: i8 = if (*g as i64 - shape.size() as i64) % 2 == 0 { 1 } else { -1 };
            if *estimate {
                let alg = match sampling.alg {
                    None => Alg::Z,
                    Some(Alg::Y) => {
                        return Err(CliError::Usage("--alg y does not apply to Euler characteristics; use z or h".into()))
                    }
                    Some(alg) => alg,
                };
                let w = skew_to_permutation(&shape);
                let est = run_estimate(alg, &w, Some(*g), sampling)?;
                let mut json = estimate_json(&est);
                json["shape"] = json!(shape.to_string());
                json["sign"] = json!(sign);
                let text = format!("chi ~ {}\nshape {shape}", estimate_text(&est, cli.digits, sign));
                Report::new(text, json)
            } else {
                let chi = euler_characteristic_capped(&params, *memo_cap)?;
                Report::new(
                    format!("chi = {}\nshape {}", chi.value(), chi.shape),
                    json!({
                        "shape": chi.shape.to_string(),
                        "sign": chi.sign,
                        "magnitude": integer(&chi.magnitude),
                        "chi": integer(chi.value()),
                    }),
                )
            }
        }
        Command::EgDistribution {
            n,
            exhaustive,
            samples,
            seed,
            node_cap,
        } => eg_distribution(*n, *exhaustive, *samples, *seed, *node_cap)?,
        Command::Diagram { perm } => {
            let w = permutation(cli, perm)?;
            let diagram = Diagram::new(&w);
            let analysis = diagram.analyze()?;
            let cells = |cells: &[Cell]| cells.iter().map(ToString::to_string).collect::<Vec<_>>();
            let mut text = diagram.render();
            text.push_str(&format!("essential {}\n", cells(&analysis.essential).join(" ")));
            text.push_str(&format!("dominant {}\n", cells(&analysis.dominant).join(" ")));
            match analysis.accessible {
                Some(cell) => {
                    text.push_str(&format!("accessible {cell}\n"));
                    text.push_str(&format!("pivots {}", cells(&analysis.pivots).join(" ")));
                }
                None => text.push_str("vexillary: no accessible box"),
            }
            Report::new(
                text,
                json!({
                    "permutation": w.to_string(),
                    "boxes": integer(diagram.len()),
                    "essential": analysis.essential,
                    "dominant": analysis.dominant,
                    "accessible": analysis.accessible,
                    "pivots": analysis.pivots,
                }),
            )
        }
    };
    Ok(report)
}

fn parse_sequence(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::Malformed(format!("{s:?} is not a nonnegative integer")))
        })
        .collect()
}

fn count_red_report(w: &Permutation, node_cap: u64) -> Result<Report> {
    let shapes: BTreeMap<Partition, u64> = leaf_shapes(w, TreeOptions::with_cap(node_cap))?
        .into_iter()
        .collect();
    let mut total = BigUint::default();
    let mut leaves = Vec::new();
    for (shape, mult) in &shapes {
        let f = hook_count(shape);
        total += &f * *mult;
        leaves.push(json!({ "shape": shape.parts(), "multiplicity": integer(mult), "f": integer(&f) }));
    }
    Ok(Report::new(
        total.to_string(),
        json!({ "permutation": w.to_string(), "count": integer(&total), "method": "transition", "leaves": leaves }),
    ))
}

fn tree_report(w: &Permutation, format: TreeFormat, node_cap: u64) -> Result<Report> {
    let tree = build_tree(w, node_cap)?;
    Ok(match format {
        TreeFormat::Dot => {
            let dot = to_dot(&tree);
            let json = json!({ "permutation": w.to_string(), "dot": dot });
            Report::new(dot.trim_end(), json)
        }
        TreeFormat::Json => {
            let json = json!({ "permutation": w.to_string(), "nodes": flatten(&tree) });
            Report::new(serde_json::to_string_pretty(&json).expect("tree serializes"), json)
        }
    })
}

fn run_estimate(
    alg: Alg,
    w: &Permutation,
    len: Option<usize>,
    sampling: &SamplingArgs,
) -> std::result::Result<Estimate, CliError> {
    let cfg = SamplerConfig::new(sampling.samples, sampling.trials, sampling.seed);
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(estimate(alg.into(), w, len, &cfg)?)
}

fn estimate_json(est: &Estimate) -> Value {
    json!({
        "permutation": est.target.to_string(),
        "algorithm": est.algorithm.to_string(),
        "length": est.length.map(integer),
        "samples": integer(est.config.sample_size),
        "trials": integer(est.config.trials),
        "seed": integer(est.config.master_seed),
        "mean": est.mean.to_string(),
        "sem": est.sem.to_string(),
        "trial_means": est.trial_means.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn estimate_text(est: &Estimate, digits: u32, sign: i8) -> String {
    let mean = if sign < 0 { -est.mean.clone() } else { est.mean.clone() };
    format!(
        "{} +/- {} ({} trials of {} samples, {})",
        to_scientific(&mean, digits as usize),
        to_scientific(&est.sem, 2),
        est.config.trials,
        est.config.sample_size,
        est.algorithm,
    )
}

fn eg_distribution(
    n: usize,
    exhaustive: bool,
    samples: Option<u64>,
    seed: Option<u64>,
    node_cap: u64,
) -> Result<Report> {
    let perms: Vec<Permutation> = if exhaustive {
        redwords::perm::all_permutations(n)
    } else {
        let mut src = StreamSource::for_trial(seed.unwrap_or(0), 0);
        (0..samples.unwrap_or(0)).map(|_| uniform_permutation(n, &mut src)).collect()
    };
    let values: Vec<u64> = perms
        .par_iter()
        .map(|w| eg_statistic(w, node_cap))
        .collect::<Result<_>>()?;
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    for &v in &values {
        *histogram.entry(v).or_insert(0) += 1;
    }
    let mut sorted = values.clone();
    sorted.sort_unstable();
    let median = sorted.get(sorted.len().saturating_sub(1) / 2).copied().unwrap_or(0);
    let mut text = format!("n {n}, {} permutations, median EG {median}\n", values.len());
    for (eg, count) in &histogram {
        text.push_str(&format!("{eg}\t{count}\n"));
    }
    let json_hist: serde_json::Map<String, Value> =
        histogram.iter().map(|(k, v)| (k.to_string(), integer(v))).collect();
    Ok(Report::new(
        text.trim_end().to_string(),
        json!({
            "n": integer(n),
            "mode": if exhaustive { "exhaustive" } else { "sampled" },
            "permutations": integer(values.len()),
            "median": integer(median),
            "histogram": json_hist,
        }),
    ))
}
