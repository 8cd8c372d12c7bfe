//! The `cip` command line: `plan`, `tile`, `encode`, `compress`, `analyze`
//! and `report`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use cip_core::encoder::{embed_text, Encoder, EncoderConfig, TokenMatrix};
use cip_core::plan::{plan_baseline, BaselineOptions, Dims, PyramidPlan, Strategy};
use cip_core::raster::RasterImage;
use cip_core::ratio::AspectRatio;
use cip_core::sawtooth::AnalyzerStrategy;
use cip_core::scm::{
    assemble_llm_input, compress, compress_by_weights, fastv_baseline_score, score, ScoreOptions,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::json::{self, CompressDoc, PlanDoc, ReportDoc, ReportMeta};
use crate::par::{self, SceneBatch};
use crate::{cipt, imageio, CliError, ExitStatus};

#[derive(Debug, Parser)]
#[command(
    name = "cip",
    version,
    about = "Complementary image pyramid planning, tiling, token compression and cut analysis"
)]
pub struct Cli {
    /// Worker threads (output does not depend on this).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the crop plan for an image or a size.
    Plan(PlanArgs),
    /// Cut an image into PNG tiles and write its plan.
    Tile(TileArgs),
    /// Encode every pyramid level (and optionally a prompt) to CIPT files.
    Encode(EncodeArgs),
    /// Prune detailed tokens by cross-scale attention.
    Compress(CompressArgs),
    /// Measure crop-boundary cut rates on synthetic scenes.
    Analyze(AnalyzeArgs),
    /// Render a saved report as a table, CSV or JSON.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PlanOpts {
    /// Maximum total tile count.
    #[arg(long, env = "CIP_BUDGET", default_value_t = cip_core::plan::DEFAULT_BUDGET)]
    pub budget: u32,
    /// Tile edge in pixels.
    #[arg(long, env = "CIP_TILE_SIDE", default_value_t = cip_core::plan::DEFAULT_TILE_SIDE)]
    pub tile_side: u32,
    /// Cropping strategy.
    #[arg(long, default_value = "cip", value_parser = parse_strategy)]
    pub strategy: Strategy,
    /// Grid of the `fixed` strategy, RxC.
    #[arg(long, default_value = "3x3", value_parser = parse_grid)]
    pub fixed_grid: AspectRatio,
    /// Fraction of a tile shared by `overlapping` neighbours.
    #[arg(long, default_value_t = 0.5)]
    pub overlap_frac: f64,
}

impl PlanOpts {
    fn baseline(&self) -> BaselineOptions {
        BaselineOptions {
            fixed_grid: self.fixed_grid,
            overlap_frac: self.overlap_frac,
            ..Default::default()
        }
    }

    fn plan(&self, input: Dims) -> Result<PyramidPlan, CliError> {
        Ok(plan_baseline(
            self.strategy,
            input,
            self.budget,
            self.tile_side,
            &self.baseline(),
        )?)
    }
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    /// Image whose size is planned.
    #[arg(long, conflicts_with = "dims")]
    pub image: Option<PathBuf>,
    /// Input size, WxH.
    #[arg(long, value_parser = parse_dims)]
    pub dims: Option<Dims>,
    #[command(flatten)]
    pub opts: PlanOpts,
    /// Write the plan here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TileArgs {
    /// Source image (PNG or JPEG).
    #[arg(long)]
    pub image: PathBuf,
    #[command(flatten)]
    pub opts: PlanOpts,
    /// Directory receiving `{level}_{row}_{col}.png` and `plan.json`.
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct EncoderOpts {
    /// Pixel block edge of one patch.
    #[arg(long, default_value_t = 14)]
    pub patch: u32,
    /// Patches merged per token along each axis.
    #[arg(long, default_value_t = 2)]
    pub downsample: u32,
    /// Token channel dimension.
    #[arg(long, default_value_t = 64)]
    pub channels: usize,
    /// Projection and text-embedding seed.
    #[arg(long, env = "CIP_SEED", default_value_t = 0)]
    pub seed: u64,
}

impl EncoderOpts {
    fn config(&self) -> EncoderConfig {
        EncoderConfig {
            patch: self.patch,
            downsample: self.downsample,
            channels: self.channels,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    /// Source image (PNG or JPEG).
    #[arg(long)]
    pub image: PathBuf,
    /// Prompt embedded to `text.cipt`.
    #[arg(long)]
    pub prompt: Option<String>,
    #[command(flatten)]
    pub opts: PlanOpts,
    #[command(flatten)]
    pub encoder: EncoderOpts,
    /// Directory receiving one `{level}.cipt` per level.
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scorer {
    /// Cross-scale attention from adaptive, global and text tokens.
    Scm,
    /// Self-attention over the whole sequence.
    Fastv,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["image", "detailed"]))]
pub struct CompressArgs {
    /// Source image, encoded with the CIP plan.
    #[arg(long, requires = "prompt")]
    pub image: Option<PathBuf>,
    /// Prompt paired with `--image`.
    #[arg(long, requires = "image")]
    pub prompt: Option<String>,
    /// Detailed tokens (CIPT).
    #[arg(long, requires_all = ["adaptive", "global", "text"])]
    pub detailed: Option<PathBuf>,
    /// Adaptive tokens (CIPT).
    #[arg(long, requires = "detailed")]
    pub adaptive: Option<PathBuf>,
    /// Global tokens (CIPT).
    #[arg(long, requires = "detailed")]
    pub global: Option<PathBuf>,
    /// Text tokens (CIPT).
    #[arg(long, requires = "detailed")]
    pub text: Option<PathBuf>,
    /// Fraction of detailed tokens to drop, in [0, 1).
    #[arg(long, default_value_t = 0.5)]
    pub drop_ratio: f64,
    /// Score without positional encoding.
    #[arg(long)]
    pub no_pe: bool,
    /// Token scorer.
    #[arg(long, value_enum, default_value_t = Scorer::Scm)]
    pub scorer: Scorer,
    /// Layer at which the `fastv` scorer reads attention.
    #[arg(long, default_value_t = 2)]
    pub fastv_layer: usize,
    #[arg(long, env = "CIP_BUDGET", default_value_t = cip_core::plan::DEFAULT_BUDGET)]
    pub budget: u32,
    #[arg(long, env = "CIP_TILE_SIDE", default_value_t = cip_core::plan::DEFAULT_TILE_SIDE)]
    pub tile_side: u32,
    #[command(flatten)]
    pub encoder: EncoderOpts,
    /// Directory receiving `compressed.cipt` and `compressed.json`.
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Scene canvas, WxH.
    #[arg(long, default_value = "4032x3024", value_parser = parse_dims)]
    pub canvas: Dims,
    /// Number of seeded scenes.
    #[arg(long, default_value_t = 100)]
    pub scenes: usize,
    /// Objects per scene.
    #[arg(long, default_value_t = 100)]
    pub objects: usize,
    /// Smallest object edge in canvas pixels.
    #[arg(long, default_value_t = 8)]
    pub min_size: u32,
    /// Largest object edge in canvas pixels.
    #[arg(long, default_value_t = 256)]
    pub max_size: u32,
    /// Comma-separated strategies: planner names, `global_only`, `grid_RxC`.
    #[arg(long, value_delimiter = ',', default_value = "cip,dynamic,fixed,overlapping,multiscale_fixed", value_parser = parse_analyzer_strategy)]
    pub strategies: Vec<AnalyzerStrategy>,
    /// Seed of the first scene.
    #[arg(long, env = "CIP_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub opts: PlanOpts,
    /// Also write `curve.dat` with cut rates at each of these budgets.
    #[arg(long, value_delimiter = ',')]
    pub curve_budgets: Vec<u32>,
    /// Directory receiving `report.json` and `report.csv`.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// A `report.json` written by `analyze`.
    #[arg(long)]
    pub input: PathBuf,
    /// Output format (`--json` implies `json`).
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    pub format: ReportFormat,
}

fn parse_dims(s: &str) -> Result<Dims, String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or("expected WxH")?;
    let w: u32 = w.parse().map_err(|_| format!("bad width `{w}`"))?;
    let h: u32 = h.parse().map_err(|_| format!("bad height `{h}`"))?;
    if w == 0 || h == 0 {
        return Err("dimensions must be positive".into());
    }
    Ok(Dims::new(w, h))
}

fn parse_grid(s: &str) -> Result<AspectRatio, String> {
    let (r, c) = s.split_once(['x', 'X']).ok_or("expected RxC")?;
    let r = r.parse().map_err(|_| format!("bad rows `{r}`"))?;
    let c = c.parse().map_err(|_| format!("bad cols `{c}`"))?;
    AspectRatio::new(r, c).map_err(|e| e.to_string())
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Strategy::ALL.iter().map(Strategy::as_str).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_analyzer_strategy(s: &str) -> Result<AnalyzerStrategy, String> {
    s.parse().map_err(|e: cip_core::Error| e.to_string())
}

/// Output of one subcommand: bytes for stdout.
type Stdout = Vec<u8>;

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn create_dir(path: &Path) -> Result<(), CliError> {
    fs::create_dir_all(path).map_err(|e| CliError::io(path, e))
}

fn json_line<T: Serialize>(value: &T) -> Result<Stdout, CliError> {
    Ok(json::to_pretty(value)?.into_bytes())
}

fn cmd_plan(args: &PlanArgs, as_json: bool) -> Result<Stdout, CliError> {
    let input = match (&args.image, args.dims) {
        (Some(path), _) => imageio::load_rgb(path)?.dims(),
        (None, Some(d)) => d,
        (None, None) => {
            // a bad budget is reported before the missing input
            args.opts.plan(Dims::new(1, 1))?;
            return Err(CliError::Usage(
                "one of --image or --dims is required".into(),
            ));
        }
    };
    let plan = args.opts.plan(input)?;
    let text = json::to_pretty(&PlanDoc::from(&plan))?;
    match &args.out {
        Some(out) => {
            write_file(out, text.as_bytes())?;
            if as_json {
                Ok(text.into_bytes())
            } else {
                Ok(summary(&plan).into_bytes())
            }
        }
        None => Ok(text.into_bytes()),
    }
}

fn summary(plan: &PyramidPlan) -> String {
    let mut s = format!(
        "{} plan for {}x{}: {} tile(s) of {} px, budget {}\n",
        plan.strategy.as_str(),
        plan.input.w,
        plan.input.h,
        plan.total_tiles(),
        plan.tile_side,
        plan.budget
    );
    for l in &plan.levels {
        s.push_str(&format!(
            "  {:<9} grid {}  resized {}x{}  {} tile(s)\n",
            l.name.as_str(),
            l.grid,
            l.resized.w,
            l.resized.h,
            l.tiles.len()
        ));
    }
    s
}

#[derive(Serialize)]
struct TileOutput {
    plan: &'static str,
    tiles: Vec<String>,
}

fn cmd_tile(args: &TileArgs, as_json: bool) -> Result<Stdout, CliError> {
    let img = imageio::load_rgb(&args.image)?;
    let plan = args.opts.plan(img.dims())?;
    let sets = par::crop_tiles(&img, &plan)?;
    create_dir(&args.out_dir)?;
    let jobs: Vec<(String, &RasterImage)> = sets
        .iter()
        .flat_map(|set| {
            set.tiles.iter().map(move |t| {
                (
                    format!("{}_{}_{}.png", set.level.as_str(), t.row, t.col),
                    &t.image,
                )
            })
        })
        .collect();
    jobs.par_iter()
        .try_for_each(|(name, image)| imageio::save_png(&args.out_dir.join(name), image))?;
    write_file(
        &args.out_dir.join("plan.json"),
        json::to_pretty(&PlanDoc::from(&plan))?.as_bytes(),
    )?;
    let names: Vec<String> = jobs.into_iter().map(|(n, _)| n).collect();
    if as_json {
        return json_line(&TileOutput {
            plan: "plan.json",
            tiles: names,
        });
    }
    let mut out = summary(&plan);
    out.push_str(&format!("wrote {} tile(s) and plan.json\n", names.len()));
    Ok(out.into_bytes())
}

#[derive(Serialize)]
struct TensorEntry {
    file: String,
    tag: String,
    tokens: usize,
    channels: usize,
}

/// Encodes every level of `plan`, in level order.
fn encode_levels(
    img: &RasterImage,
    plan: &PyramidPlan,
    cfg: EncoderConfig,
) -> Result<Vec<TokenMatrix>, CliError> {
    let encoder = Encoder::new(cfg)?;
    par::crop_tiles(img, plan)?
        .iter()
        .map(|set| par::encode_tiles(&encoder, set))
        .collect()
}

fn tag_name(m: &TokenMatrix) -> &'static str {
    use cip_core::encoder::LevelTag;
    match m.tag() {
        LevelTag::Detailed => "detailed",
        LevelTag::Adaptive => "adaptive",
        LevelTag::Global => "global",
        LevelTag::Text => "text",
    }
}

fn cmd_encode(args: &EncodeArgs, as_json: bool) -> Result<Stdout, CliError> {
    let cfg = args.encoder.config();
    cfg.tokens_per_tile(args.opts.tile_side)?;
    let img = imageio::load_rgb(&args.image)?;
    let plan = args.opts.plan(img.dims())?;
    let mut mats = encode_levels(&img, &plan, cfg)?;
    if let Some(prompt) = &args.prompt {
        mats.push(embed_text(prompt.as_bytes(), cfg.channels, cfg.seed)?);
    }
    create_dir(&args.out_dir)?;
    let mut entries = Vec::new();
    for (i, m) in mats.iter().enumerate() {
        // single-grid baselines may reuse a level name
        let base = tag_name(m);
        let file = if mats[..i].iter().any(|p| tag_name(p) == base) {
            format!("{base}_{i}.cipt")
        } else {
            format!("{base}.cipt")
        };
        cipt::write(&args.out_dir.join(&file), m)?;
        entries.push(TensorEntry {
            file,
            tag: base.to_owned(),
            tokens: m.len(),
            channels: m.channels(),
        });
    }
    if as_json {
        return json_line(&entries);
    }
    let mut out = String::new();
    for e in &entries {
        out.push_str(&format!(
            "{:<14} {:>6} tokens x {} channels\n",
            e.file, e.tokens, e.channels
        ));
    }
    Ok(out.into_bytes())
}

#[derive(Serialize)]
struct CompressOutput<'a> {
    #[serde(flatten)]
    sidecar: &'a CompressDoc,
    scorer: &'static str,
    llm_input: Vec<SegmentOut>,
    llm_input_len: usize,
}

#[derive(Serialize)]
struct SegmentOut {
    tag: &'static str,
    tokens: usize,
}

fn load_inputs(args: &CompressArgs) -> Result<[TokenMatrix; 4], CliError> {
    let cfg = args.encoder.config();
    if let (Some(image), Some(prompt)) = (&args.image, &args.prompt) {
        cfg.tokens_per_tile(args.tile_side)?;
        let img = imageio::load_rgb(image)?;
        let plan = plan_baseline(
            Strategy::Cip,
            img.dims(),
            args.budget,
            args.tile_side,
            &BaselineOptions::default(),
        )?;
        let mut mats = encode_levels(&img, &plan, cfg)?.into_iter();
        let (d, a, g) = match (mats.next(), mats.next(), mats.next()) {
            (Some(d), Some(a), Some(g)) => (d, a, g),
            _ => return Err(CliError::Internal("pyramid without three levels".into())),
        };
        return Ok([
            d,
            a,
            g,
            embed_text(prompt.as_bytes(), cfg.channels, cfg.seed)?,
        ]);
    }
    let path = |p: &Option<PathBuf>, flag: &str| {
        p.clone()
            .ok_or_else(|| CliError::Usage(format!("--{flag} is required with --detailed")))
    };
    Ok([
        cipt::read(&path(&args.detailed, "detailed")?)?,
        cipt::read(&path(&args.adaptive, "adaptive")?)?,
        cipt::read(&path(&args.global, "global")?)?,
        cipt::read(&path(&args.text, "text")?)?,
    ])
}

fn cmd_compress(args: &CompressArgs, as_json: bool) -> Result<Stdout, CliError> {
    if !(0.0..1.0).contains(&args.drop_ratio) {
        return Err(CliError::Usage("--drop-ratio must be in [0, 1)".into()));
    }
    let [vd, va, vg, tt] = load_inputs(args)?;
    let result = match args.scorer {
        Scorer::Scm => {
            let opts = ScoreOptions {
                disable_pe: args.no_pe,
                projection: None,
            };
            compress(&vd, &score(&vd, &va, &vg, &tt, opts)?, args.drop_ratio)?
        }
        Scorer::Fastv => {
            let w = fastv_baseline_score(&[&vd, &va, &vg, &tt], args.fastv_layer, args.no_pe)?;
            compress_by_weights(&vd, &w[..vd.len()], args.drop_ratio)?
        }
    };
    let llm = assemble_llm_input(&result, &va, &vg, &tt)?;
    let sidecar = CompressDoc::from(&result);
    create_dir(&args.out_dir)?;
    cipt::write(&args.out_dir.join("compressed.cipt"), &result.tokens)?;
    write_file(
        &args.out_dir.join("compressed.json"),
        json::to_pretty(&sidecar)?.as_bytes(),
    )?;
    let names = [&result.tokens, &va, &vg, &tt].map(tag_name);
    let segments: Vec<SegmentOut> = llm
        .segments
        .iter()
        .zip(names)
        .map(|(&(_, n), tag)| SegmentOut { tag, tokens: n })
        .collect();
    let scorer = match args.scorer {
        Scorer::Scm => "scm",
        Scorer::Fastv => "fastv",
    };
    if as_json {
        return json_line(&CompressOutput {
            sidecar: &sidecar,
            scorer,
            llm_input: segments,
            llm_input_len: llm.len(),
        });
    }
    let parts: Vec<String> = segments
        .iter()
        .map(|s| format!("{} {}", s.tag, s.tokens))
        .collect();
    Ok(format!(
        "kept {} of {} detailed tokens (drop ratio {}, {scorer})\nllm input {} tokens: {}\n",
        sidecar.k,
        sidecar.l1,
        sidecar.drop_ratio,
        llm.len(),
        parts.join(", ")
    )
    .into_bytes())
}

fn cmd_analyze(args: &AnalyzeArgs, as_json: bool) -> Result<Stdout, CliError> {
    if args.min_size == 0 || args.min_size > args.max_size {
        return Err(CliError::Usage("need 1 <= --min-size <= --max-size".into()));
    }
    let batch = SceneBatch {
        canvas: args.canvas,
        scenes: args.scenes,
        objects: args.objects,
        size_range: (args.min_size, args.max_size),
        seed: args.seed,
    };
    let meta = |budget| ReportMeta {
        objects_per_scene: args.objects,
        seed: args.seed,
        budget,
        tile_side: args.opts.tile_side,
    };
    let opts = args.opts.baseline();
    let report = par::analyze_batch(
        batch,
        &args.strategies,
        args.opts.budget,
        args.opts.tile_side,
        &opts,
    )?;
    let doc = ReportDoc::new(&report, meta(args.opts.budget));
    if let Some(dir) = &args.out_dir {
        create_dir(dir)?;
        write_file(&dir.join("report.json"), json::to_pretty(&doc)?.as_bytes())?;
        write_file(&dir.join("report.csv"), doc.to_csv().as_bytes())?;
        if !args.curve_budgets.is_empty() {
            let mut rows = Vec::new();
            for &b in &args.curve_budgets {
                let per = args
                    .strategies
                    .iter()
                    .map(|s| {
                        match par::analyze_batch(batch, &[*s], b, args.opts.tile_side, &opts) {
                            Ok(r) => Ok(Some(ReportDoc::new(&r, meta(b)).strategies.remove(0))),
                            Err(CliError::Core(cip_core::Error::BudgetTooSmall { .. })) => Ok(None),
                            Err(e) => Err(e),
                        }
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                rows.push((b, per));
            }
            write_file(
                &dir.join("curve.dat"),
                json::curve_dat(&args.strategies, &rows).as_bytes(),
            )?;
        }
    } else if !args.curve_budgets.is_empty() {
        return Err(CliError::Usage("--curve-budgets needs --out-dir".into()));
    }
    if as_json {
        json_line(&doc)
    } else {
        Ok(doc.to_table().into_bytes())
    }
}

fn cmd_report(args: &ReportArgs, as_json: bool) -> Result<Stdout, CliError> {
    let bytes = fs::read(&args.input).map_err(|e| CliError::io(&args.input, e))?;
    let doc: ReportDoc = serde_json::from_slice(&bytes).map_err(|e| CliError::Format {
        what: "report",
        reason: e.to_string(),
    })?;
    let format = if as_json {
        ReportFormat::Json
    } else {
        args.format
    };
    Ok(match format {
        ReportFormat::Table => doc.to_table().into_bytes(),
        ReportFormat::Csv => doc.to_csv().into_bytes(),
        ReportFormat::Json => json_line(&doc)?,
    })
}

/// Runs a parsed command and returns what belongs on stdout.
pub fn execute(cli: &Cli) -> Result<Stdout, CliError> {
    let run = || match &cli.command {
        Command::Plan(a) => cmd_plan(a, cli.json),
        Command::Tile(a) => cmd_tile(a, cli.json),
        Command::Encode(a) => cmd_encode(a, cli.json),
        Command::Compress(a) => cmd_compress(a, cli.json),
        Command::Analyze(a) => cmd_analyze(a, cli.json),
        Command::Report(a) => cmd_report(a, cli.json),
    };
    match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build()
            .map_err(|e| CliError::Internal(e.to_string()))?
            .install(run),
        None => run(),
    }
}

/// Parses `args`, runs the command, and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::InvalidArgs
            } else {
                ExitStatus::Ok
            };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(&out).and_then(|_| stdout.flush()) {
                Ok(()) => ExitStatus::Ok,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitStatus::Ok,
                Err(e) => {
                    eprintln!("error: stdout: {e}");
                    ExitStatus::Io
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_status()
        }
    }
}
