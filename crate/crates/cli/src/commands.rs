use serde_json::json;

use boxshare::benford::{benford_report, digit_histogram};
use boxshare::distribution::{multiplicity, rho_table};
use boxshare::fitting::fit_alpha;
use boxshare::inequality::{lorenz_gini, quantile_shares, rank_cumulative_shares};
use boxshare::io::{
    builtin_poll_table, ingest_numbers, parse_histogram_csv, parse_poll_csv, poll_report,
    share_csv, to_json, InputFormat, Source,
};
use boxshare::oracle::{
    deviation_report, enumerate_configurations, exact_marginal, exact_marginal_counts,
};
use boxshare::sampler::occupancy_histogram;
use boxshare::{BoxEnsemble, Result};

use crate::args::{Command, Ensemble, Format, Out};
use crate::render::{format_real, Cell, Table};

pub fn run(command: Command) -> Result<String> {
    match command {
        Command::Dist { boxes, alpha, out } => dist(boxes, alpha, out.out),
        Command::Enumerate { ensemble, cap, out } => enumerate(&ensemble, cap, out.out),
        Command::Marginal { ensemble, out } => marginal(&ensemble, out.out),
        Command::Deviation { ensemble, out } => deviation(&ensemble, out.out),
        Command::Sample {
            ensemble,
            trials,
            seed,
            workers,
            out,
        } => sample(&ensemble, trials, seed, workers, out.out),
        Command::Benford {
            input,
            format,
            column,
            out,
        } => benford(&input, format, column.as_deref(), out),
        Command::Wealth {
            groups,
            rank_cumulative,
            boxes,
            out,
        } => wealth(groups, rank_cumulative.then_some(boxes), out.out),
        Command::Fit { input, boxes, out } => fit(&input, boxes, out.out),
        Command::Poll { input, voters, out } => poll(input.as_deref(), voters, out.out),
    }
}

fn ensemble(e: &Ensemble) -> Result<BoxEnsemble> {
    BoxEnsemble::new(e.boxes, e.particles)
}

/// Aligned `label  value` lines.
fn summary(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn dist(boxes: u64, alpha: f64, out: Out) -> Result<String> {
    let table = rho_table(boxes, alpha)?;
    match out {
        Out::Json => to_json(&table),
        Out::Csv => Ok(share_csv(&table)),
        Out::Table => {
            let mut t = Table::new(["n", "probability"]);
            for (n, p) in (1u64..).zip(table.probabilities()) {
                t.row(vec![n.into(), (*p).into()]);
            }
            Ok(t.to_text())
        }
    }
}

fn enumerate(e: &Ensemble, cap: u64, out: Out) -> Result<String> {
    let ens = ensemble(e)?;
    let configs: Vec<Vec<u64>> = enumerate_configurations(&ens, cap)?
        .map(|c| c.occupancies().to_vec())
        .collect();
    if out == Out::Json {
        return to_json(&json!({
            "n_boxes": e.boxes,
            "n_particles": e.particles,
            "count": configs.len(),
            "configurations": configs,
        }));
    }
    let mut t = Table::new((1..=e.boxes).map(|b| format!("box{b}")));
    for c in &configs {
        t.row(c.iter().map(|&k| k.into()).collect());
    }
    Ok(match out {
        Out::Csv => t.to_csv(),
        _ => format!(
            "{}\n{}",
            t.to_text(),
            summary(&[("configurations", configs.len().to_string())])
        ),
    })
}

fn marginal(e: &Ensemble, out: Out) -> Result<String> {
    let ens = ensemble(e)?;
    let dist = exact_marginal(&ens)?;
    let counts = exact_marginal_counts(&ens)?;
    let total = multiplicity(&ens)?;
    if out == Out::Json {
        return to_json(&json!({
            "n_boxes": dist.n_boxes,
            "n_particles": dist.n_particles,
            "multiplicity": total.to_string(),
            "mean": dist.mean(),
            "configurations": counts.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "probability": dist.prob,
        }));
    }
    let mut t = Table::new(["k", "configurations", "probability"]);
    for ((k, c), p) in (0u64..).zip(&counts).zip(&dist.prob) {
        t.row(vec![k.into(), Cell::Digits(c.to_string()), (*p).into()]);
    }
    Ok(match out {
        Out::Csv => t.to_csv(),
        _ => format!(
            "{}\n{}",
            t.to_text(),
            summary(&[
                ("multiplicity", total.to_string()),
                ("mean", format_real(dist.mean())),
            ])
        ),
    })
}

fn deviation(e: &Ensemble, out: Out) -> Result<String> {
    let report = deviation_report(&ensemble(e)?)?;
    if out == Out::Json {
        return to_json(&report);
    }
    let mut t = Table::new(["n", "exact_conditional", "eq2_renormalized"]);
    for row in &report.rows {
        t.row(vec![
            row.n.into(),
            row.exact_conditional.into(),
            row.eq2_renormalized.into(),
        ]);
    }
    Ok(match out {
        Out::Csv => {
            let mut s = t.to_csv();
            if report.exact_tail > 0.0 {
                s.push_str(&format!(
                    "exact_tail,{}\n",
                    boxshare::io::emit::sig17(report.exact_tail)
                ));
            }
            s.push_str(&format!(
                "total_variation,{}\n",
                boxshare::io::emit::sig17(report.total_variation)
            ));
            s
        }
        _ => {
            let mut pairs = Vec::new();
            if report.exact_tail > 0.0 {
                pairs.push(("exact tail (n > N)", format_real(report.exact_tail)));
            }
            pairs.push(("total variation", format_real(report.total_variation)));
            format!("{}\n{}", t.to_text(), summary(&pairs))
        }
    })
}

fn sample(e: &Ensemble, trials: u64, seed: u64, workers: usize, out: Out) -> Result<String> {
    let hist = occupancy_histogram(&ensemble(e)?, trials, seed, workers)?;
    if out == Out::Json {
        let bins: Vec<_> = hist
            .bins()
            .iter()
            .map(|(k, c)| json!({"k": k, "count": c}))
            .collect();
        return to_json(&json!({
            "n_boxes": e.boxes,
            "n_particles": e.particles,
            "trials": trials,
            "seed": seed,
            "mean": hist.mean(),
            "histogram": bins,
        }));
    }
    let mut t = Table::new(["k", "count"]);
    for (&k, &c) in hist.bins() {
        t.row(vec![k.into(), c.into()]);
    }
    Ok(match out {
        Out::Csv => t.to_csv(),
        _ => format!(
            "{}\n{}",
            t.to_text(),
            summary(&[
                ("trials", trials.to_string()),
                ("seed", seed.to_string()),
                ("mean", format_real(hist.mean())),
            ])
        ),
    })
}

fn benford(input: &str, format: Format, column: Option<&str>, out: Out) -> Result<String> {
    let format = match format {
        Format::Plain => InputFormat::Plain,
        Format::Csv => InputFormat::Csv,
        Format::Json => InputFormat::Json,
    };
    let tokens = ingest_numbers(&Source::from_arg(input), format, column)?;
    let report = benford_report(&digit_histogram(&tokens))?;
    if out == Out::Json {
        return to_json(&report);
    }
    let mut t = Table::new(["digit", "count", "observed", "expected"]);
    for d in 1..=9u8 {
        let i = usize::from(d - 1);
        t.row(vec![
            u64::from(d).into(),
            report.stats.count(d).into(),
            report.observed[i].into(),
            report.expected[i].into(),
        ]);
    }
    Ok(match out {
        Out::Csv => t.to_csv(),
        _ => format!(
            "{}\n{}",
            t.to_text(),
            summary(&[
                ("digits", report.stats.total().to_string()),
                ("skipped", report.stats.skipped().to_string()),
                (
                    "chi-square",
                    format!(
                        "{} (dof {})",
                        format_real(report.fit.chi_square),
                        report.fit.dof
                    ),
                ),
                ("p-value", format_real(report.fit.p_value)),
                ("G statistic", format_real(report.fit.g_statistic)),
                ("MAD", format_real(report.fit.mad)),
                ("conformity", report.conformity.to_string()),
            ])
        ),
    })
}

fn wealth(groups: u64, rank_boxes: Option<u64>, out: Out) -> Result<String> {
    let shares = match rank_boxes {
        Some(boxes) => rank_cumulative_shares(groups, boxes)?,
        None => quantile_shares(groups)?,
    };
    let report = lorenz_gini(&shares)?;
    match out {
        Out::Json => to_json(&json!({
            "method": if rank_boxes.is_some() { "rank-cumulative" } else { "rebinned" },
            "ranked_boxes": rank_boxes,
            "report": report,
        })),
        Out::Csv => {
            let mut t = Table::new(["population", "wealth"]);
            for &(x, y) in &report.lorenz {
                t.row(vec![x.into(), y.into()]);
            }
            Ok(t.to_csv())
        }
        Out::Table => {
            let mut t = Table::new(["group", "share", "cumulative"]);
            let mut cumulative = 0.0;
            for (g, s) in (1u64..).zip(&report.shares) {
                cumulative += s;
                t.row(vec![g.into(), (*s).into(), cumulative.into()]);
            }
            Ok(format!(
                "{}\n{}",
                t.to_text(),
                summary(&[
                    ("top share", format_real(report.shares[0])),
                    ("gini", format_real(report.gini)),
                ])
            ))
        }
    }
}

fn fit(input: &str, boxes: u64, out: Out) -> Result<String> {
    let text = Source::from_arg(input).read_to_string()?;
    let counts = parse_histogram_csv(&text, boxes)?;
    let observations: f64 = counts.iter().sum();
    let fit = fit_alpha(&counts, boxes)?;
    match out {
        Out::Json => to_json(&json!({
            "n_boxes": boxes,
            "observations": observations,
            "fit": fit,
        })),
        Out::Csv => {
            let mut t = Table::new([
                "alpha_hat",
                "std_error",
                "log_likelihood",
                "iterations",
                "observations",
            ]);
            t.row(vec![
                fit.alpha_hat.into(),
                fit.std_error.into(),
                fit.log_likelihood.into(),
                u64::from(fit.iterations).into(),
                observations.into(),
            ]);
            Ok(t.to_csv())
        }
        Out::Table => Ok(summary(&[
            ("alpha", format_real(fit.alpha_hat)),
            ("std error", format_real(fit.std_error)),
            ("log-likelihood", format_real(fit.log_likelihood)),
            ("iterations", fit.iterations.to_string()),
            ("observations", format_real(observations)),
        ])),
    }
}

fn poll(input: Option<&str>, voters: f64, out: Out) -> Result<String> {
    let table = match input {
        Some(path) => parse_poll_csv(&Source::from_arg(path).read_to_string()?)?,
        None => builtin_poll_table(),
    };
    let report = poll_report(&table, voters)?;
    if out == Out::Json {
        return to_json(&report);
    }
    let mut headers = vec!["poll".to_owned()];
    headers.extend(report.choice_labels.iter().map(|c| format!("{c}%")));
    headers.extend(["residue", "chi_square", "p_value", "mad"].map(String::from));
    let mut t = Table::new(headers);
    for row in report.polls.iter().chain([&report.average]) {
        let mut cells: Vec<Cell> = vec![row.label.clone().into()];
        cells.extend(row.percentages.iter().map(|&p| Cell::from(p)));
        cells.extend([
            row.rounding_residue.into(),
            row.fit.chi_square.into(),
            row.fit.p_value.into(),
            row.fit.mad.into(),
        ]);
        t.row(cells);
    }
    Ok(match out {
        Out::Csv => t.to_csv(),
        _ => {
            let ints = |v: &[f64]| {
                v.iter()
                    .map(|x| format!("{x}%"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let mut pairs = vec![
                ("average, rounded", ints(&report.average_rounded_percent)),
                (
                    "share law, rounded",
                    ints(&report.reference_rounded_percent),
                ),
            ];
            if let Some(printed) = &report.printed_theoretical {
                pairs.push(("printed theoretical", ints(printed)));
            }
            format!("{}\n{}", t.to_text(), summary(&pairs))
        }
    })
}
