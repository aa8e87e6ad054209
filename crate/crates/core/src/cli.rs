//! Command-line front end. Every subcommand that consumes randomness takes an
//! explicit `--seed`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dataset::{
    self, describe, drop_inconsistent, iqr_clean, pearson, split_train_test, Attribute, Dataset,
    Header,
};
use crate::evaluation::{compare_report, compute_metrics, error_analysis, fit_mlr, format_p, histogram};
use crate::inference::{optimize_offsets, predict_batch, predict_inputs};
use crate::rules::{learn_rules, load_model, model_to_string, render_rule_table, render_rules};
use crate::synth::{generate, GeneratorConfig};

#[derive(Debug, Parser)]
#[command(name = "heatfuzz", version, about = "Fuzzy rule-based heat index prediction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate labelled synthetic readings.
    Synth(SynthArgs),
    /// Drop inconsistent rows and IQR outliers.
    Clean(CleanArgs),
    /// Descriptive statistics and correlations.
    Stats(StatsArgs),
    /// Learn a rule base from the training split.
    Train(TrainArgs),
    /// Print the rule propositions of a model.
    Rules(RulesArgs),
    /// Predict heat index for (rh, t) rows.
    Predict(PredictArgs),
    /// Score a model on the held-out split.
    Evaluate(EvalArgs),
    /// Score a model against a linear baseline on the held-out split.
    Compare(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    noise_std: f64,
    #[arg(long, default_value_t = 68.0)]
    rh_min: f64,
    #[arg(long, default_value_t = 84.0)]
    rh_max: f64,
    #[arg(long, default_value_t = 23.0)]
    t_min: f64,
    #[arg(long, default_value_t = 26.0)]
    t_max: f64,
    /// Time-correlated random walk instead of independent draws.
    #[arg(long)]
    walk: bool,
    /// Round rh and t to integers.
    #[arg(long)]
    quantize: bool,
}

#[derive(Debug, Args)]
struct CleanArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1.5)]
    iqr_k: f64,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct SplitArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    seed: u64,
    /// Training fraction.
    #[arg(long, default_value_t = 0.7)]
    split: f64,
    #[arg(long, default_value_t = 1.5)]
    iqr_k: f64,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[command(flatten)]
    data: SplitArgs,
    #[arg(long)]
    out: PathBuf,
    /// Tune the consequent centers on the training split.
    #[arg(long)]
    optimize: bool,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
}

#[derive(Debug, Args)]
struct RulesArgs {
    #[arg(long)]
    model: PathBuf,
    /// Also print the rule table.
    #[arg(long)]
    table: bool,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    input: PathBuf,
    /// Write predictions here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    model: PathBuf,
    #[command(flatten)]
    data: SplitArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Residual histogram bins.
    #[arg(long, default_value_t = 10)]
    bins: usize,
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit status. Diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", format!("{e:#}").replace('\n', " "));
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> anyhow::Result<()> {
    match command {
        Command::Synth(a) => synth(a, out),
        Command::Clean(a) => clean(a, out),
        Command::Stats(a) => stats(a, out),
        Command::Train(a) => train(a, out),
        Command::Rules(a) => rules(a, out),
        Command::Predict(a) => predict(a, out),
        Command::Evaluate(a) => evaluate(a, out),
        Command::Compare(a) => compare(a, out),
    }
}

fn synth(a: SynthArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let cfg = GeneratorConfig {
        n: a.n,
        seed: a.seed,
        rh_range: (a.rh_min, a.rh_max),
        t_range: (a.t_min, a.t_max),
        noise_std: a.noise_std,
        walk: a.walk,
        quantize: a.quantize,
    };
    let d = generate(&cfg)?;
    dataset::save_csv(&d, &a.out)?;
    writeln!(out, "wrote {} samples to {}", d.len(), a.out.display())?;
    Ok(())
}

struct Cleaned {
    data: Dataset,
    inconsistent: usize,
    outliers: usize,
}

fn load_clean(input: &Path, iqr_k: f64) -> anyhow::Result<Cleaned> {
    let raw = dataset::parse_csv(input, Header::Auto)?;
    let (consistent, inconsistent) = drop_inconsistent(&raw);
    let (data, outliers) = iqr_clean(&consistent, iqr_k)
        .with_context(|| format!("cleaning {}", input.display()))?;
    Ok(Cleaned {
        data,
        inconsistent,
        outliers,
    })
}

fn load_split(a: &SplitArgs) -> anyhow::Result<(Cleaned, Dataset, Dataset)> {
    let cleaned = load_clean(&a.input, a.iqr_k)?;
    let (train, test) = split_train_test(&cleaned.data, a.split, a.seed)?;
    Ok((cleaned, train, test))
}

fn clean(a: CleanArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let c = load_clean(&a.input, a.iqr_k)?;
    dataset::save_csv(&c.data, &a.out)?;
    writeln!(
        out,
        "kept {} rows; removed {} inconsistent and {} outlier rows",
        c.data.len(),
        c.inconsistent,
        c.outliers
    )?;
    Ok(())
}

fn stats(a: StatsArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let raw = dataset::parse_csv(&a.input, Header::Auto)?;
    let (d, _) = drop_inconsistent(&raw);
    let s = describe(&d)?;
    let cols: Vec<Vec<f64>> = Attribute::ALL.iter().map(|&at| d.column(at)).collect();
    let mut corr = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            corr[i][j] = if i == j { 1.0 } else { pearson(&cols[i], &cols[j])? };
        }
    }
    let mut text = String::new();
    match a.format {
        Format::Text => {
            writeln!(text, "n = {}", d.len())?;
            writeln!(text, "{:<20}{:>14}{:>14}{:>14}", "", "R. Humidity", "Temperature", "Heat Index")?;
            type Getter = fn(&dataset::AttributeStats) -> f64;
            let rows: [(&str, Getter); 4] = [
                ("Mean", |x| x.mean),
                ("Standard deviation", |x| x.std),
                ("Min", |x| x.min),
                ("Max", |x| x.max),
            ];
            for (name, get) in rows {
                writeln!(
                    text,
                    "{:<20}{:>14.2}{:>14.2}{:>14.2}",
                    name,
                    get(&s.rh),
                    get(&s.t),
                    get(&s.hi)
                )?;
            }
            writeln!(text)?;
            writeln!(text, "Pearson correlation")?;
            writeln!(text, "{:<20}{:>14}{:>14}{:>14}", "", "R. Humidity", "Temperature", "Heat Index")?;
            for (i, at) in Attribute::ALL.iter().enumerate() {
                writeln!(
                    text,
                    "{:<20}{:>14.2}{:>14.2}{:>14.2}",
                    at.label(),
                    corr[i][0],
                    corr[i][1],
                    corr[i][2]
                )?;
            }
        }
        Format::Csv => {
            writeln!(text, "attribute,mean,std,min,max,r_rh,r_t,r_hi")?;
            for (i, &at) in Attribute::ALL.iter().enumerate() {
                let st = s.get(at);
                writeln!(
                    text,
                    "{},{},{},{},{},{},{},{}",
                    ["rh", "t", "hi"][i],
                    st.mean,
                    st.std,
                    st.min,
                    st.max,
                    corr[i][0],
                    corr[i][1],
                    corr[i][2]
                )?;
            }
        }
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn train(a: TrainArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let (cleaned, train, test) = load_split(&a.data)?;
    let mut rb = learn_rules(&train).context("learning rules")?;
    if a.optimize {
        rb = optimize_offsets(&rb, &train, a.step)?;
    }
    let text = model_to_string(&rb)?;
    fs::write(&a.out, text).with_context(|| format!("writing {}", a.out.display()))?;
    let o = rb.centers().offsets();
    writeln!(
        out,
        "cleaned {} rows ({} inconsistent, {} outliers removed); train {} / test {}",
        cleaned.data.len(),
        cleaned.inconsistent,
        cleaned.outliers,
        train.len(),
        test.len()
    )?;
    writeln!(
        out,
        "learned {} rules; offsets low {:+.2} mid {:+.2} high {:+.2}; wrote {}",
        rb.len(),
        o[0],
        o[1],
        o[2],
        a.out.display()
    )?;
    Ok(())
}

fn rules(a: RulesArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let rb = load_model(&a.model)?;
    if a.table {
        write!(out, "{}", render_rule_table(&rb)?)?;
        writeln!(out)?;
    }
    write!(out, "{}", render_rules(&rb)?)?;
    Ok(())
}

/// Reads `rh,t` pairs, or the rh and t columns of a dataset file.
fn read_inputs(path: &Path) -> anyhow::Result<Vec<(f64, f64)>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let first = rdr.records().next().transpose()?;
    let width = first.as_ref().map_or(0, |r| r.len());
    if width != 2 {
        let d = dataset::read_csv(text.as_bytes(), Header::Auto, path.display().to_string())?;
        return Ok(d.samples.iter().map(|s| (s.rh, s.t)).collect());
    }
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut inputs = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let parsed: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(v) => inputs.push((v[0], v[1])),
            Err(_) if i == 0 => continue,
            Err(_) => bail!("{}: row {}: non-numeric field", path.display(), i + 1),
        }
    }
    Ok(inputs)
}

fn predict(a: PredictArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let rb = load_model(&a.model)?;
    let inputs = read_inputs(&a.input)?;
    let preds = predict_inputs(&inputs, &rb)?;
    let mut text = String::from("rh,t,hi,fallback\n");
    for ((rh, t), (hi, fb)) in inputs.iter().zip(preds.values.iter().zip(&preds.fallback)) {
        writeln!(text, "{rh},{t},{hi},{}", u8::from(*fb))?;
    }
    match &a.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            writeln!(
                out,
                "wrote {} predictions ({} fallback) to {}",
                inputs.len(),
                preds.fallback_count(),
                path.display()
            )?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn evaluate(a: EvalArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let rb = load_model(&a.model)?;
    let (_, _, test) = load_split(&a.data)?;
    let y: Vec<f64> = test.column(Attribute::Hi);
    let preds = predict_batch(&test, &rb)?;
    let m = compute_metrics(&y, &preds.values)?;
    let e = error_analysis(&y, &preds.values)?;
    let hist = histogram(&e.residuals, a.bins);
    let f = &m.f_test;

    let mut text = String::new();
    match a.format {
        Format::Text => {
            writeln!(text, "test observations  {}", test.len())?;
            writeln!(text, "fallback used      {}", preds.fallback_count())?;
            writeln!(text, "R2                 {:.3}", m.r2)?;
            writeln!(text, "RMSE               {:.3}", m.rmse)?;
            writeln!(text, "MAE                {:.3}", m.mae)?;
            writeln!(
                text,
                "F-statistic        {:.3} (df {}, {}), p = {}{}",
                f.f_stat,
                f.df1,
                f.df2,
                format_p(f.p_value),
                if f.significant() { ", significant at 0.05" } else { "" }
            )?;
            writeln!(text, "overprediction     {:.3}", e.overprediction_fraction)?;
            writeln!(
                text,
                "abs error range    [{:.3}, {:.3}]",
                e.min_abs_error, e.max_abs_error
            )?;
            writeln!(text, "residual histogram")?;
            for b in &hist {
                writeln!(text, "  [{:+.3}, {:+.3}]  {}", b.lo, b.hi, b.count)?;
            }
        }
        Format::Csv => {
            writeln!(text, "quantity,value")?;
            for (k, v) in [
                ("n", test.len() as f64),
                ("fallback", preds.fallback_count() as f64),
                ("r2", m.r2),
                ("rmse", m.rmse),
                ("mae", m.mae),
                ("f_stat", f.f_stat),
                ("df1", f.df1 as f64),
                ("df2", f.df2 as f64),
                ("p_value", f.p_value),
                ("overprediction", e.overprediction_fraction),
                ("min_abs_error", e.min_abs_error),
                ("max_abs_error", e.max_abs_error),
            ] {
                writeln!(text, "{k},{v}")?;
            }
            for (i, b) in hist.iter().enumerate() {
                writeln!(text, "bin{i}:[{};{}],{}", b.lo, b.hi, b.count)?;
            }
        }
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn compare(a: EvalArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let rb = load_model(&a.model)?;
    let (_, train, test) = load_split(&a.data)?;
    let mlr = fit_mlr(&train).context("fitting linear baseline")?;
    let report = compare_report(&test, &rb, &mlr)?;
    let text = match a.format {
        Format::Text => report.to_text(),
        Format::Csv => report.to_csv(),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("heatfuzz").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn unknown_subcommand_fails() {
        let (code, _, err) = run_capture(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("unrecognized subcommand"));
    }

    #[test]
    fn train_requires_input() {
        let (code, _, err) = run_capture(&["train", "--seed", "1", "--out", "m.fz"]);
        assert_eq!(code, 2);
        assert!(err.contains("--input"), "{err}");
        assert!(err.contains("Usage"), "{err}");
    }

    #[test]
    fn missing_file_is_one_line_diagnostic() {
        let (code, _, err) = run_capture(&["stats", "--input", "/nonexistent/x.csv"]);
        assert_eq!(code, 1);
        assert_eq!(err.lines().count(), 1);
        assert!(err.contains("/nonexistent/x.csv"));
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("evaluate"));
    }

    #[test]
    fn predict_reads_pairs() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("in.csv");
        fs::write(&p, "rh,t\n70,24\n80,25.5\n").unwrap();
        assert_eq!(read_inputs(&p).unwrap(), vec![(70.0, 24.0), (80.0, 25.5)]);
        fs::write(&p, "0,70,24,25\n50,80,25.5,26\n").unwrap();
        assert_eq!(read_inputs(&p).unwrap(), vec![(70.0, 24.0), (80.0, 25.5)]);
        fs::write(&p, "70,24\nx,25\n").unwrap();
        assert!(read_inputs(&p).is_err());
    }
}
