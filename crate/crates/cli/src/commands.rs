//! `analyze`, `tile`, `verify` and `figure`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Duration;

use crate::problem::{builtin, Problem};
use crate::render::{layer_of, render_svg, write_csv, Extent, Layer};
use crate::CliError;
use ratile_core::dynamics::{DigitSet, SrsParam};
use ratile_core::exactnum::{
    to_field_vector, EmbeddingData, ExpandingReport, Irreducibility, LaurentElem, PolynomialSpec,
};
use ratile_core::lattice::{lambda0_generators, lambda_basis, LatticeHNF, SpanClosure};
use ratile_core::tiles::{
    approximate_f, approximate_g, approximate_srs_tile, slice_decomposition, Origin, SliceWindow, TileBounds,
    TileCloud, TileContext, TileKind,
};
use ratile_core::verify::{
    check_certificate, estimate_multiplicity, find_exclusive_point, volume_balance, CertificateCheck, CertificateError,
    MultiplicityReport, SearchBudget, TilingCertificate, VolumeBalance, Window,
};

#[derive(Debug, Serialize)]
pub struct LatticeEntry {
    pub m: i32,
    pub lattice: LatticeHNF,
    pub covolume: String,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub spec: PolynomialSpec,
    pub expanding: ExpandingReport,
    pub irreducibility: Irreducibility,
    pub digits: DigitSet,
    pub lattices: Vec<LatticeEntry>,
    pub zcap: LatticeHNF,
    pub primitivity: SpanClosure,
    /// `[Λ_{α,m} : 𝔷 ∩ Λ_{α,m}]`, the covering multiplicity of `Λ_{α,m}`-translates.
    pub zcap_index: Option<u64>,
    pub multiplicity_hint: String,
    pub embedding: EmbeddingData,
    pub bounds: TileBounds,
    pub modulus_convention: &'static str,
}

pub fn analyze(problem: &Problem) -> Result<AnalyzeReport, CliError> {
    let ctx = problem.context()?;
    let m = ctx.digits.m;
    let mut lattices = Vec::new();
    for j in m - 2..=m {
        let l = lambda_basis(&ctx.spec, j).map_err(|e| CliError::Internal(e.to_string()))?;
        lattices.push(LatticeEntry { m: j, covolume: l.covolume().to_string(), lattice: l });
    }
    let index = (ctx.zcap.covolume() / ctx.lambda.covolume()).to_integer().to_u64();
    let multiplicity_hint = if ctx.span.is_primitive() {
        "primitive digit set: {𝒢(x) : x ∈ Λ_(α,m)} is expected to tile".to_string()
    } else {
        format!(
            "primitivity not certified: 𝔷 ∩ Λ_(α,m) has index {} in Λ_(α,m), so Λ_(α,m)-translates cover that many times",
            index.map_or("?".to_string(), |i| i.to_string())
        )
    };
    Ok(AnalyzeReport {
        expanding: ctx.spec.expanding.clone(),
        irreducibility: ctx.spec.irreducibility,
        spec: ctx.spec.clone(),
        digits: ctx.digits.clone(),
        lattices,
        zcap: ctx.zcap.clone(),
        primitivity: ctx.span.clone(),
        zcap_index: index,
        multiplicity_hint,
        embedding: ctx.emb.clone(),
        bounds: ctx.bounds.clone(),
        modulus_convention: "standard complex absolute value at complex places",
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CloudKind {
    F,
    G,
    Srs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
}

/// Builds one cloud per translate.
pub fn tile_clouds(
    problem: &Problem,
    ctx: &TileContext,
    kind: CloudKind,
    translates: &[String],
    depth: usize,
) -> Result<Vec<TileCloud>, CliError> {
    problem.check_depth(depth)?;
    let mut out = Vec::with_capacity(translates.len());
    for (i, t) in translates.iter().enumerate() {
        let field = format!("translate[{i}]");
        let cloud = match kind {
            CloudKind::F | CloudKind::G => {
                let x: LaurentElem = t.parse().map_err(|e| CliError::invalid(&field, e))?;
                if kind == CloudKind::F {
                    approximate_f(ctx, &x, depth, problem.address_limit())?
                } else {
                    approximate_g(ctx, &to_field_vector(&x, &ctx.spec), depth, &problem.tree_options())?
                }
            }
            CloudKind::Srs => {
                let z = parse_int_vector(t, ctx.spec.degree).map_err(|m| CliError::invalid(&field, m))?;
                approximate_srs_tile(&SrsParam::from_spec(&ctx.spec), &z, depth, problem.tree_options().node_limit)?
            }
        };
        out.push(cloud);
    }
    Ok(out)
}

fn parse_int_vector(s: &str, n: usize) -> Result<Vec<BigInt>, String> {
    let v: Vec<BigInt> = s
        .split(',')
        .map(|p| p.trim().parse::<BigInt>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated integers, got {}", v.len()));
    }
    Ok(v)
}

/// Renders clouds in the requested format.
pub fn render_clouds(clouds: &[TileCloud], dim: usize, format: Format, title: &str) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&mut buf, clouds, dim)?;
            Ok(buf)
        }
        Format::Svg => {
            let layers: Vec<Layer> = clouds.iter().map(layer_of).collect();
            Ok(render_svg(title, &layers).into_bytes())
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub status: &'static str,
    pub certificate: Option<TilingCertificate>,
    pub certificate_check: Option<CertificateCheck>,
    pub reason: Option<String>,
    pub multiplicity: MultiplicityReport,
    pub volume_balance: VolumeBalance,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub budget: Duration,
    pub samples: usize,
    pub seed: u64,
    pub depth: usize,
    pub volume_depth: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget: Duration::from_secs(60), samples: 10_000, seed: 0, depth: 12, volume_depth: 40 }
    }
}

/// Certificate, multiplicity and volume balance. Exit code 0 iff certified.
pub fn verify(problem: &Problem, opts: &VerifyOptions) -> Result<(VerifyReport, i32), CliError> {
    let ctx = problem.context()?;
    let budget = SearchBudget { time_limit: opts.budget, ..SearchBudget::default() };
    let (certificate, certificate_check, reason) = match find_exclusive_point(&ctx, &budget) {
        Ok(cert) => {
            let check = check_certificate(&ctx, &cert);
            if !check.accepted {
                return Err(CliError::Internal(format!("certificate rejected: {:?}", check.failures)));
            }
            (Some(cert), Some(check), None)
        }
        Err(CertificateError::Tile(e)) => return Err(e.into()),
        Err(e) => (None, None, Some(e.to_string())),
    };
    let multiplicity = estimate_multiplicity(&ctx, opts.samples, opts.depth, opts.seed)?;
    let volume = volume_balance(&ctx, opts.volume_depth, &Window::around_tile(&ctx), opts.samples, opts.seed)?;
    let certified = certificate.is_some();
    Ok((
        VerifyReport {
            status: if certified { "certified" } else { "inconclusive" },
            certificate,
            certificate_check,
            reason,
            multiplicity,
            volume_balance: volume,
            seed: opts.seed,
        },
        if certified { 0 } else { 3 },
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct FigureEntry {
    pub name: String,
    pub file: String,
    pub layers: usize,
    pub nonempty_layers: usize,
    pub points: usize,
    pub extent: Option<Extent>,
    /// Every point lies in its translate's bounding ball of `π_∞(F)`.
    pub within_bounds: bool,
}

/// Figure names produced for an example.
pub fn figure_names(example: &str) -> Option<&'static [&'static str]> {
    match example {
        "ex1" => Some(&["fig1"]),
        "ex2" => Some(&["fig2_tower", "fig2_tiles", "fig3"]),
        "ex3" => Some(&["fig4_f", "fig4_g"]),
        _ => None,
    }
}

/// Whether every point of `cloud` lies in `Φ_∞(x) + B(center, radius)` (slices: `B` itself).
pub fn cloud_within_bounds(ctx: &TileContext, cloud: &TileCloud) -> bool {
    let base = match (&cloud.origin, cloud.kind) {
        (_, TileKind::Slice) => vec![0.0; ctx.spec.degree],
        (Origin::Field { vector, .. }, _) => ctx.emb.flatten(&ctx.emb.place_values(vector)),
        (Origin::Srs { .. }, _) => return true,
    };
    let r = ctx.bounds.radius * (1.0 + 1e-9) + 1e-9;
    cloud.points.iter().all(|p| {
        p.arch.iter().zip(&base).zip(&ctx.bounds.center).map(|((a, b), c)| (a - b - c).powi(2)).sum::<f64>().sqrt() <= r
    })
}

fn int(c: i64) -> LaurentElem {
    LaurentElem::from_int(c)
}

/// Writes the SVGs of one worked example into `dir` and returns their manifest entries.
pub fn figure(example: &str, dir: &Path, depth: Option<usize>) -> Result<Vec<FigureEntry>, CliError> {
    let names =
        figure_names(example).ok_or_else(|| CliError::invalid("example", format!("unknown example {example:?}")))?;
    let problem = builtin(example).expect("listed example").validate()?;
    let ctx = problem.context()?;
    std::fs::create_dir_all(dir).map_err(|e| CliError::invalid("out", e))?;
    let opts = problem.tree_options();
    let mut entries = Vec::new();
    for &name in names {
        let (clouds, layers): (Vec<TileCloud>, Vec<Layer>) = match name {
            "fig1" => {
                // x = j/2 = j(α − 1) for j = −5, …, 10.
                let a_minus_1: LaurentElem = "a - 1".parse().expect("literal");
                let clouds = (-5..=10)
                    .map(|j| {
                        approximate_f(
                            &ctx,
                            &a_minus_1.scale(&BigInt::from(j)),
                            depth.unwrap_or(8),
                            problem.address_limit(),
                        )
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let layers = clouds.iter().map(layer_of).collect();
                (clouds, layers)
            }
            "fig2_tower" => {
                let window = SliceWindow {
                    basis: lambda0_generators(&ctx.spec),
                    radius: 3,
                    surrogate_lo: 0.0,
                    surrogate_hi: 1.0,
                };
                let clouds = slice_decomposition(&ctx, depth.unwrap_or(14), &window, &opts)?;
                let lift = 4.0 * ctx.bounds.radius;
                let layers = clouds
                    .iter()
                    .map(|c| Layer {
                        label: c.translate_label(),
                        points: c.points.iter().map(|p| (p.arch[0], 0.3 * p.arch[1] + lift * p.surrogate)).collect(),
                    })
                    .collect();
                (clouds, layers)
            }
            "fig2_tiles" => {
                let w = lambda0_generators(&ctx.spec);
                let mut clouds = Vec::new();
                for x0 in -3..=3i64 {
                    for x1 in -3..=3i64 {
                        let x = &w[0].scale(&BigInt::from(x0)) + &w[1].scale(&BigInt::from(x1));
                        clouds.push(approximate_g(&ctx, &to_field_vector(&x, &ctx.spec), depth.unwrap_or(16), &opts)?);
                    }
                }
                let layers = clouds.iter().map(layer_of).collect();
                (clouds, layers)
            }
            "fig3" => {
                let clouds = (0..=9u32)
                    .map(|k| {
                        let x = if k == 0 { int(0) } else { int(1i64 << k) };
                        approximate_g(&ctx, &to_field_vector(&x, &ctx.spec), depth.unwrap_or(18), &opts)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let layers = clouds.iter().map(layer_of).collect();
                (clouds, layers)
            }
            "fig4_f" => {
                let clouds = (-6..=3)
                    .map(|x| approximate_f(&ctx, &int(x), depth.unwrap_or(6), problem.address_limit()))
                    .collect::<Result<Vec<_>, _>>()?;
                let layers = clouds.iter().map(layer_of).collect();
                (clouds, layers)
            }
            "fig4_g" => {
                let clouds = (-6..=3)
                    .map(|x| approximate_g(&ctx, &to_field_vector(&int(x), &ctx.spec), depth.unwrap_or(20), &opts))
                    .collect::<Result<Vec<_>, _>>()?;
                let layers = clouds
                    .iter()
                    .zip(-6..=3)
                    .map(|(c, x)| Layer {
                        label: c.translate_label(),
                        points: c.points.iter().map(|p| (p.arch[0], x as f64)).collect(),
                    })
                    .collect();
                (clouds, layers)
            }
            _ => unreachable!("figure list"),
        };
        let file = format!("{name}.svg");
        let svg = render_svg(name, &layers);
        std::fs::write(dir.join(&file), svg).map_err(|e| CliError::invalid("out", e))?;
        entries.push(FigureEntry {
            name: name.to_string(),
            file,
            layers: layers.len(),
            nonempty_layers: layers.iter().filter(|l| !l.points.is_empty()).count(),
            points: layers.iter().map(|l| l.points.len()).sum(),
            extent: Extent::of(&layers),
            within_bounds: clouds.iter().all(|c| cloud_within_bounds(&ctx, c)),
        });
    }
    Ok(entries)
}

/// Writes figures for `example` (or all three for `all`) plus `figures.json`.
pub fn figures(example: &str, dir: &Path, depth: Option<usize>) -> Result<Vec<FigureEntry>, CliError> {
    let list: Vec<&str> = if example == "all" { vec!["ex1", "ex2", "ex3"] } else { vec![example] };
    let mut all = Vec::new();
    for ex in list {
        all.extend(figure(ex, dir, depth)?);
    }
    let manifest = serde_json::to_string_pretty(&all).map_err(|e| CliError::Internal(e.to_string()))?;
    std::fs::write(dir.join("figures.json"), manifest + "\n").map_err(|e| CliError::invalid("out", e))?;
    Ok(all)
}

/// Output path or stdout.
pub fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<(), CliError> {
    use std::io::Write;
    match out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::invalid("out", e)),
        None => std::io::stdout().write_all(bytes).map_err(|e| CliError::Internal(format!("stdout: {e}"))),
    }
}
