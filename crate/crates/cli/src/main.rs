use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use exsplash::census::{run_census, CensusConfig};
use exsplash::models::{
    all_cover_sets, fit_cover, model_equivalences, negation, sherk_size_census, Cover,
};
use exsplash::pg1::ParamSet;
use exsplash::plane::subplane_from_quadrangle;
use exsplash::projection::{projection_census, summarize};
use exsplash::splash::{canonical_line, singer_group, splash, theta_image};
use exsplash::sublines::{bundle_check, classify_families, dual_bundle_check, special_conics, sublines_in_splash};
use exsplash::verify::{field_check, verify_all};
use exsplash::{FieldCtx, ProjLine, ProjPoint, Subplane};

const DEFAULT_SEED: u64 = 24301;

#[derive(Parser, Debug)]
#[command(name = "exsplash", version, about = "Exterior splashes of order-q subplanes in PG(2, q^3)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Order of the base field.
    #[arg(long, global = true, default_value_t = 2)]
    q: u32,
    /// Cubic x^3 - t2 x^2 - t1 x - t0 defining GF(q^3), as `t0,t1,t2`.
    #[arg(long, global = true)]
    poly: Option<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build GF(q^3) and check its norm and trace maps.
    Field,
    /// The splash of a subplane on a line (default: PG(2, q) and the canonical line).
    Splash {
        /// Four points `(..);(..);(..);(..)` spanning the subplane.
        #[arg(long)]
        quadrangle: Option<String>,
        /// The target line `[..]`.
        #[arg(long)]
        line: Option<String>,
    },
    /// Cover, Sherk surface and linear set descriptions of the canonical splash.
    Models,
    /// The two subline families of the canonical splash (q >= 3).
    Sublines,
    /// Project PG(2, q) from every point onto the canonical line.
    Project,
    /// Subplane counts per splash and their intersections.
    Census {
        /// Sampled sublines for the two-subplanes check.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Every check for one field.
    VerifyAll,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Errors before any check ran; these exit with 2.
enum Failure {
    Config(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Config(e)
    }
}

struct Output {
    body: String,
    passed: bool,
}

fn parse_poly(s: &str) -> anyhow::Result<(u32, u32, u32)> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad polynomial `{s}`"))?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => bail!("polynomial needs three coefficients, got `{s}`"),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn params_text(f: &FieldCtx, s: &ParamSet) -> Vec<String> {
    s.iter().map(|p| p.to_text(f)).collect()
}

fn points_text(f: &FieldCtx, pts: &[ProjPoint]) -> Vec<String> {
    pts.iter().map(|p| p.to_text(f)).collect()
}

fn unsupported(cmd: &str, fmt: Format) -> Failure {
    Failure::Config(anyhow!("{fmt:?} output is not available for `{cmd}`"))
}

#[derive(Serialize)]
struct FieldOut {
    q: u32,
    poly: (u32, u32, u32),
    size: usize,
    tau: String,
    norm_fiber_size: usize,
    passed: bool,
    detail: String,
}

fn cmd_field(f: &FieldCtx, fmt: Format) -> Result<Output, Failure> {
    let spec = f.spec();
    let (passed, detail) = field_check(f);
    let out = FieldOut {
        q: spec.q,
        poly: (spec.t0, spec.t1, spec.t2),
        size: f.size(),
        tau: f.format(f.tau()),
        norm_fiber_size: f.norm_exponent(),
        passed,
        detail,
    };
    let body = match fmt {
        Format::Json => json(&out),
        Format::Text => format!(
            "GF({}^3) via x^3 - {}x^2 - {}x - {}\n{}: {}\n",
            out.q,
            out.poly.2,
            out.poly.1,
            out.poly.0,
            if passed { "PASS" } else { "FAIL" },
            out.detail
        ),
        Format::Csv => return Err(unsupported("field", fmt)),
    };
    Ok(Output { body, passed })
}

#[derive(Serialize)]
struct SplashOut {
    line: String,
    kind: &'static str,
    points: Vec<String>,
    carriers: Option<[String; 2]>,
    third_conjugate: Option<String>,
    centre: Option<String>,
    parameters: Option<Vec<String>>,
    singer_order: Option<usize>,
}

fn cmd_splash(f: &FieldCtx, quad: Option<&str>, line: Option<&str>, fmt: Format) -> Result<Output, Failure> {
    let pi = match quad {
        None => Subplane::canonical(f),
        Some(s) => {
            let pts: Vec<ProjPoint> = s
                .split(';')
                .map(|p| ProjPoint::parse(f, p))
                .collect::<Result<_, _>>()
                .map_err(|e| anyhow!("bad quadrangle: {e}"))?;
            let quad: [ProjPoint; 4] =
                pts.try_into().map_err(|_| anyhow!("a quadrangle needs four points"))?;
            subplane_from_quadrangle(f, &quad).map_err(|e| anyhow!("bad quadrangle: {e}"))?
        }
    };
    let l = match line {
        None => canonical_line(f),
        Some(s) => ProjLine::parse(f, s).map_err(|e| anyhow!("bad line: {e}"))?,
    };
    let s = splash(f, &pi, &l).map_err(|e| anyhow!("{e}"))?;
    let out = SplashOut {
        line: l.to_text(f),
        kind: if s.is_exterior() { "exterior" } else { "tangent" },
        points: points_text(f, &s.points),
        carriers: s.carriers().map(|c| c.map(|p| p.to_text(f))),
        third_conjugate: s.third_conjugate().map(|p| p.to_text(f)),
        centre: s.centre().map(|p| p.to_text(f)),
        parameters: theta_image(f, &s).ok().map(|t| params_text(f, &t)),
        singer_order: singer_group(f, &pi, &l).ok().and_then(|g| g.check(f, &pi).order),
    };
    let body = match fmt {
        Format::Json => json(&out),
        Format::Text => {
            let mut t = format!("{} splash on {}: {} points\n", out.kind, out.line, out.points.len());
            for p in &out.points {
                t += &format!("  {p}\n");
            }
            if let Some([a, b]) = &out.carriers {
                t += &format!("carriers {a} {b}\n");
            }
            t
        }
        Format::Csv => {
            let mut t = String::from("point\n");
            for p in &out.points {
                t += &format!("\"{p}\"\n");
            }
            t
        }
    };
    Ok(Output { body, passed: true })
}

#[derive(Serialize)]
struct ModelsOut {
    splash_parameters: Vec<String>,
    cover_equal: bool,
    sherk_equal: bool,
    linear_set_scattered: bool,
    linear_set_negated_equal: bool,
    linear_set_equivalent: bool,
    fitted_cover: Cover,
    /// Only computed for q <= 3.
    sherk_stratum_equals_covers: Option<bool>,
    cover_sets: Option<usize>,
}

fn cmd_models(f: &FieldCtx, fmt: Format) -> Result<Output, Failure> {
    let m = model_equivalences(f).map_err(|e| anyhow!("{e}"))?;
    let (stratum, covers) = if f.q() <= 3 {
        let covers = all_cover_sets(f);
        let ok = sherk_size_census(f).sets_by_size.get(&f.norm_exponent()) == Some(&covers);
        (Some(ok), Some(covers.len()))
    } else {
        (None, None)
    };
    let s = splash(f, &Subplane::canonical(f), &canonical_line(f)).map_err(|e| anyhow!("{e}"))?;
    let out = ModelsOut {
        splash_parameters: params_text(f, &m.splash_image),
        cover_equal: m.cover == m.splash_image,
        sherk_equal: m.sherk == m.splash_image,
        linear_set_scattered: m.linear_set.scattered,
        linear_set_negated_equal: negation(f).apply_set(f, &m.linear_set.points) == m.splash_image,
        linear_set_equivalent: m.linear_to_splash.is_some(),
        fitted_cover: fit_cover(f, &s).map_err(|e| anyhow!("{e}"))?,
        sherk_stratum_equals_covers: stratum,
        cover_sets: covers,
    };
    let passed = out.cover_equal
        && out.sherk_equal
        && out.linear_set_scattered
        && out.linear_set_negated_equal
        && stratum != Some(false);
    let body = match fmt {
        Format::Json => json(&out),
        Format::Text => format!(
            "cover {}, sherk {}, linear set {}, stratum {:?}\n",
            out.cover_equal, out.sherk_equal, out.linear_set_negated_equal, out.sherk_stratum_equals_covers
        ),
        Format::Csv => return Err(unsupported("models", fmt)),
    };
    Ok(Output { body, passed })
}

#[derive(Serialize)]
struct SublinesOut {
    sublines_in_splash: usize,
    pencil: Vec<Vec<String>>,
    dual_conic: Vec<Vec<String>>,
    disjoint: bool,
    union_is_all: bool,
    special_conic_intersections: Vec<usize>,
    special_dual_conic_intersections: Vec<usize>,
}

fn cmd_sublines(f: &FieldCtx, fmt: Format) -> Result<Output, Failure> {
    if f.q() < 3 {
        return Err(Failure::Config(anyhow!("the two subline families need q >= 3")));
    }
    let pi = Subplane::canonical(f);
    let l = canonical_line(f);
    let s = splash(f, &pi, &l).map_err(|e| anyhow!("{e}"))?;
    let all: std::collections::BTreeSet<_> = sublines_in_splash(f, &s).into_iter().collect();
    let fam = classify_families(f, &pi, &l).map_err(|e| anyhow!("{e}"))?;
    let (x, y) = (fam.pencil_set(), fam.dual_conic_set());
    let conics = special_conics(f, &pi, &l).map_err(|e| anyhow!("{e}"))?;
    let out = SublinesOut {
        sublines_in_splash: all.len(),
        pencil: x.iter().map(|b| points_text(f, &b.points)).collect(),
        dual_conic: y.iter().map(|b| points_text(f, &b.points)).collect(),
        disjoint: x.is_disjoint(&y),
        union_is_all: x.union(&y).cloned().collect::<std::collections::BTreeSet<_>>() == all,
        special_conic_intersections: bundle_check(&pi, &conics).pairwise_intersections.into_iter().collect(),
        special_dual_conic_intersections: dual_bundle_check(&pi, &fam.special_dual_conics)
            .pairwise_intersections
            .into_iter()
            .collect(),
    };
    let n = f.norm_exponent();
    let passed = out.sublines_in_splash == 2 * n
        && x.len() == n
        && y.len() == n
        && out.disjoint
        && out.union_is_all
        && out.special_conic_intersections == [1]
        && out.special_dual_conic_intersections == [1];
    let body = match fmt {
        Format::Json => json(&out),
        Format::Text => format!(
            "{} sublines: {} pencil, {} dual-conic, disjoint {}, union {}\n",
            out.sublines_in_splash,
            x.len(),
            y.len(),
            out.disjoint,
            out.union_is_all
        ),
        Format::Csv => {
            let mut t = String::from("family,points\n");
            for (name, fam) in [("pencil", &out.pencil), ("dual_conic", &out.dual_conic)] {
                for b in fam {
                    t += &format!("{name},\"{}\"\n", b.join(" "));
                }
            }
            t
        }
    };
    Ok(Output { body, passed })
}

fn cmd_project(f: &FieldCtx, fmt: Format) -> Result<Output, Failure> {
    let pi = Subplane::canonical(f);
    let census = projection_census(f, &pi, &canonical_line(f)).map_err(|e| anyhow!("{e}"))?;
    let summary = summarize(f, &census);
    let n = f.norm_exponent();
    let passed = summary.tangent_groups == summary.tangent_groups_expected
        && summary.tangent_single_source
        && summary.tangent_orbit_sizes.iter().all(|&k| k == n)
        && summary.exterior_orbit_sizes.iter().all(|&k| k == 1 || k == n)
        && summary.carrier_stratum_counts_ok;
    let body = match fmt {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                summary: &'a exsplash::projection::ProjectionSummary,
                candidates: usize,
                groups: &'a [exsplash::projection::ImageGroup],
            }
            json(&Out { summary: &summary, candidates: census.candidates, groups: &census.groups })
        }
        Format::Csv => {
            let mut t = String::from("kind,size,projection_points,orbit_size,carrier_match\n");
            for g in &census.groups {
                t += &format!("{:?},{},{},{},{}\n", g.kind, g.size, g.projection_points, g.orbit_size, g.carrier_match);
            }
            t
        }
        Format::Text => format!(
            "{} candidates, {} images; tangent {} (expected {}), exterior orbit sizes {:?}, carrier stratum {:?}; conjectured description holds: {}\n",
            census.candidates,
            census.groups.len(),
            summary.tangent_groups,
            summary.tangent_groups_expected,
            summary.exterior_orbit_sizes,
            summary.carrier_stratum_counts,
            summary.conjecture_holds
        ),
    };
    Ok(Output { body, passed })
}

fn census_config(seed: u64, samples: Option<usize>, q: u32) -> CensusConfig {
    let default_samples = if q == 2 { 100 } else { 20 };
    CensusConfig {
        seed,
        subline_samples: samples.unwrap_or(default_samples),
        ..CensusConfig::default()
    }
}

fn cmd_census(f: &FieldCtx, seed: u64, samples: Option<usize>, fmt: Format) -> Result<Output, Failure> {
    let cfg = census_config(seed, samples, f.q());
    let r = run_census(f, &Subplane::canonical(f), &canonical_line(f), &cfg)
        .map_err(|e| anyhow!("{e}"))?;
    let passed = r.counts_ok() && r.intersections_bounded() && r.subline_extensions.always_two();
    let body = match fmt {
        Format::Json => json(&r),
        Format::Csv => {
            let mut t = String::from("subplanes_per_splash,splashes\n");
            for (k, v) in &r.per_splash_counts {
                t += &format!("{k},{v}\n");
            }
            t
        }
        Format::Text => format!(
            "{} exterior subplanes, {} splashes, per splash {:?}; subline extensions {:?}; intersections {:?}\n",
            r.exterior_subplanes, r.splashes, r.per_splash_counts, r.subline_extensions.counts, r.intersections.sizes
        ),
    };
    Ok(Output { body, passed })
}

fn cmd_verify(f: &FieldCtx, seed: u64, fmt: Format) -> Result<Output, Failure> {
    let r = verify_all(f, &census_config(seed, None, f.q())).map_err(|e| anyhow!("{e}"))?;
    let passed = r.all_passed();
    let body = match fmt {
        Format::Json => json(&r),
        Format::Text => {
            let mut t = String::new();
            for c in &r.checks {
                t += &format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            for x in &r.findings {
                t += &format!("NOTE {}: {}\n", x.name, x.detail);
            }
            t
        }
        Format::Csv => {
            let mut t = String::from("check,passed,detail\n");
            for c in &r.checks {
                t += &format!("{},{},\"{}\"\n", c.name, c.passed, c.detail.replace('"', "'"));
            }
            t
        }
    };
    Ok(Output { body, passed })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| anyhow!("cannot set up {j} workers: {e}"))?;
    }
    let poly = cli.poly.as_deref().map(parse_poly).transpose()?;
    let f = FieldCtx::new(cli.q, poly).map_err(|e| anyhow!("{e:?}: {e}"))?;
    match &cli.command {
        Command::Field => cmd_field(&f, cli.format),
        Command::Splash { quadrangle, line } => {
            cmd_splash(&f, quadrangle.as_deref(), line.as_deref(), cli.format)
        }
        Command::Models => cmd_models(&f, cli.format),
        Command::Sublines => cmd_sublines(&f, cli.format),
        Command::Project => cmd_project(&f, cli.format),
        Command::Census { samples } => cmd_census(&f, cli.seed, *samples, cli.format),
        Command::VerifyAll => cmd_verify(&f, cli.seed, cli.format),
    }
}

fn emit(cli: &Cli, body: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.body) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: a check failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
