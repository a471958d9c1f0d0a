//! Implementations of the CLI subcommands.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use hopspec_core::hopping::{
    finite_spectrum as core_finite_spectrum, periodic_spectrum_points, PointCloud, SignSeq,
    SpectrumPoint,
};
use hopspec_core::render::{
    escape_radius, export_counts_grayscale, export_image, raster_filled_julia,
    raster_filled_julia_counts, raster_iterated_preimage_sampled, raster_preimage_disk_sampled,
    raster_union_sampled, ExportFormat, RasterImage, Sampling, Window,
};
use hopspec_core::symmetries::{closure_t, count_report, enumerate_s, SymmetrySet};
use hopspec_core::theorems::{
    even_sign_seqs_up_to, lift_period, phi_grid, prepare_period, random_pairs,
    verify_block_structure, verify_composition_identity, verify_laurent_form,
    verify_power_structure, verify_spectral_inclusion, verify_symbol_scalar, all_sign_seqs,
    VerificationReport,
};
use hopspec_core::{IntPoly, C64, DEFAULT_HALF_WIDTH};

use crate::config::{ConfigFile, JobConfig};
use crate::usage_error;

fn parse_seq(label: &str, text: &str) -> Result<SignSeq> {
    SignSeq::parse(text).map_err(|e| usage_error(format!("{label}: {e}")))
}

fn parse_poly(text: &str) -> Result<IntPoly> {
    IntPoly::parse_coeff_list(text).map_err(|e| usage_error(format!("--poly: {e}")))
}

fn file_tag(k: &SignSeq) -> String {
    k.to_string().replace(',', "_")
}

fn csv_quote(field: &str) -> String {
    format!("\"{}\"", field.replace('"', "\"\""))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn print_aligned(headers: &[&str], rows: &[Vec<String>]) {
    let cols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for c in 0..cols {
            widths[c] = widths[c].max(row[c].len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut out = String::new();
        for c in 0..cols {
            out.push_str(&format!("{:<width$}", cells[c], width = widths[c]));
            if c + 1 < cols {
                out.push_str("  ");
            }
        }
        println!("{}", out.trim_end());
    };
    line(headers.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
}

fn enumeration(config: &ConfigFile, max_degree: Option<usize>, default: usize) -> Result<(usize, SymmetrySet)> {
    let max_degree = match max_degree {
        Some(d) => d,
        None => config.parse("max_degree")?.unwrap_or(default),
    };
    if max_degree < 2 {
        return Err(usage_error(format!(
            "--max-degree must be at least 2, got {max_degree}"
        )));
    }
    let s = enumerate_s(max_degree)?;
    Ok((max_degree, s))
}

/// `table`: the symmetry table with one row per distinct polynomial and its
/// first (lexicographically least) generating period.
pub fn table(out: &Path, config: &ConfigFile, max_degree: Option<usize>) -> Result<()> {
    let (max_degree, s) = enumeration(config, max_degree, 7)?;
    let mut rows = Vec::new();
    let mut csv = String::from("degree,k,coeffs\n");
    for slice in s.slices() {
        for (i, p) in slice.distinct.iter().enumerate() {
            let rep = slice
                .entries
                .iter()
                .find(|e| &e.poly == p)
                .expect("distinct polynomials come from entries");
            rows.push(vec![
                format!("{}.{}", slice.degree, i + 1),
                format!("({})", rep.k),
                p.to_string(),
            ]);
            csv.push_str(&format!(
                "{},{},{}\n",
                slice.degree,
                csv_quote(&rep.k.to_string()),
                csv_quote(&p.coeff_list())
            ));
        }
    }
    print_aligned(&["No.", "k", "p_k"], &rows);

    let path = out.join("table.csv");
    write_text(&path, &csv)?;
    let mut job = JobConfig::new("table");
    job.set("max_degree", max_degree);
    job.write_sidecar(&path)?;
    println!("wrote {}", path.display());
    Ok(())
}

/// `enumerate`: full entry dump (every generating period, including distinct
/// periods sharing a polynomial) plus the per-degree count report.
pub fn enumerate(out: &Path, config: &ConfigFile, max_degree: Option<usize>) -> Result<()> {
    let (max_degree, s) = enumeration(config, max_degree, 7)?;
    let mut csv = String::from("degree,k,coeffs\n");
    for e in s.entries() {
        csv.push_str(&format!(
            "{},{},{}\n",
            e.k.len(),
            csv_quote(&e.k.to_string()),
            csv_quote(&e.poly.coeff_list())
        ));
    }
    let path = out.join("symmetries.csv");
    write_text(&path, &csv)?;
    let mut job = JobConfig::new("enumerate");
    job.set("max_degree", max_degree);
    job.write_sidecar(&path)?;

    let rows: Vec<Vec<String>> = count_report(&s)
        .iter()
        .map(|r| {
            vec![
                r.degree.to_string(),
                r.entry_count.to_string(),
                r.distinct_count.to_string(),
                r.conjectured.to_string(),
            ]
        })
        .collect();
    print_aligned(&["degree", "periods", "polynomials", "conjectured"], &rows);
    println!("wrote {}", path.display());
    Ok(())
}

/// `closure`: compositions of symmetry polynomials within a degree budget.
pub fn closure(
    out: &Path,
    config: &ConfigFile,
    max_degree: Option<usize>,
    max_total_degree: Option<usize>,
    max_chain: Option<usize>,
) -> Result<()> {
    let (max_degree, s) = enumeration(config, max_degree, 5)?;
    let max_total_degree = match max_total_degree {
        Some(d) => d,
        None => config.parse("max_total_degree")?.unwrap_or(16),
    };
    let max_chain = match max_chain {
        Some(c) => c,
        None => config.parse("max_chain")?.unwrap_or(3),
    };
    let entries = closure_t(&s, max_total_degree, max_chain);

    let mut rows = Vec::new();
    let mut csv = String::from("degree,coeffs,chain\n");
    for e in &entries {
        let chain_pretty = e
            .chain
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" o ");
        let chain_coeffs = e
            .chain
            .iter()
            .map(|p| p.coeff_list())
            .collect::<Vec<_>>()
            .join(";");
        rows.push(vec![
            e.poly.degree().unwrap_or(0).to_string(),
            e.poly.to_string(),
            chain_pretty,
        ]);
        csv.push_str(&format!(
            "{},{},{}\n",
            e.poly.degree().unwrap_or(0),
            csv_quote(&e.poly.coeff_list()),
            csv_quote(&chain_coeffs)
        ));
    }
    print_aligned(&["degree", "q", "chain"], &rows);
    let path = out.join("closure.csv");
    write_text(&path, &csv)?;
    let mut job = JobConfig::new("closure");
    job.set("max_degree", max_degree);
    job.set("max_total_degree", max_total_degree);
    job.set("max_chain", max_chain);
    job.write_sidecar(&path)?;
    println!("{} polynomials, wrote {}", entries.len(), path.display());
    Ok(())
}

fn required_k(config: &ConfigFile, k: Option<&str>) -> Result<SignSeq> {
    match k {
        Some(text) => parse_seq("--k", text),
        None => match config.get("k") {
            Some(text) => parse_seq("config key `k`", text),
            None => Err(usage_error("--k is required (e.g. --k \"1,-1,1\")")),
        },
    }
}

/// `spectrum`: point cloud of the periodic spectrum as preimage samples.
pub fn spectrum(
    out: &Path,
    config: &ConfigFile,
    k: Option<&str>,
    samples: Option<usize>,
    tol: Option<f64>,
) -> Result<()> {
    let k = required_k(config, k)?;
    let samples = match samples {
        Some(s) => s,
        None => config.parse("samples")?.unwrap_or(201),
    };
    if samples < 2 {
        return Err(usage_error("--samples must be at least 2"));
    }
    let tol = match tol {
        Some(t) => t,
        None => config.parse("tol")?.unwrap_or(1e-9),
    };
    let cloud = periodic_spectrum_points(&k, samples, tol)?;
    let path = out.join(format!("spectrum_{}.csv", file_tag(&k)));
    let mut buf = Vec::new();
    cloud.write_csv(&mut buf)?;
    std::fs::write(&path, buf).with_context(|| format!("cannot write {}", path.display()))?;
    let mut job = JobConfig::new("spectrum");
    job.set("k", &k);
    job.set("samples", samples);
    job.set("tol", tol);
    job.write_sidecar(&path)?;
    println!(
        "wrote {} points for k=({k}) to {}",
        cloud.len(),
        path.display()
    );
    Ok(())
}

/// `finite-spectrum`: eigenvalues of the finite hopping matrix.
pub fn finite_spectrum(
    out: &Path,
    config: &ConfigFile,
    k: Option<&str>,
    tol: Option<f64>,
) -> Result<()> {
    let k = required_k(config, k)?;
    let tol = match tol {
        Some(t) => t,
        None => config.parse("tol")?.unwrap_or(1e-9),
    };
    let eigs = core_finite_spectrum(&k, tol)?;
    let cloud = PointCloud {
        points: eigs
            .iter()
            .enumerate()
            .map(|(i, &z)| SpectrumPoint {
                z,
                t_index: 0,
                root_index: i,
            })
            .collect(),
    };
    let path = out.join(format!("finite_spectrum_{}.csv", file_tag(&k)));
    let mut buf = Vec::new();
    cloud.write_csv(&mut buf)?;
    std::fs::write(&path, buf).with_context(|| format!("cannot write {}", path.display()))?;
    let mut job = JobConfig::new("finite-spectrum");
    job.set("k", &k);
    job.set("tol", tol);
    job.write_sidecar(&path)?;
    println!(
        "wrote {} eigenvalues for k=({k}) to {}",
        cloud.len(),
        path.display()
    );
    Ok(())
}

pub struct VerifyArgs {
    pub suite: String,
    pub k: Option<String>,
    pub b: Option<String>,
    pub max_m: Option<usize>,
    pub phis: Option<usize>,
    pub tol: Option<f64>,
    pub half_width: Option<i64>,
    pub pairs: Option<usize>,
    pub seed: Option<u64>,
}

impl VerifyArgs {
    fn k_seq(&self) -> Result<Option<SignSeq>> {
        self.k.as_deref().map(|s| parse_seq("--k", s)).transpose()
    }

    fn b_seq(&self) -> Result<Option<SignSeq>> {
        self.b.as_deref().map(|s| parse_seq("--b", s)).transpose()
    }

    /// Explicit pair, or the deterministic random sweep.
    fn pair_sweep(&self, default_count: usize) -> Result<Vec<(SignSeq, SignSeq)>> {
        match (self.b_seq()?, self.k_seq()?) {
            (Some(b), Some(k)) => Ok(vec![(b, k)]),
            (None, None) => {
                let s = enumerate_s(5)?;
                Ok(random_pairs(
                    &s,
                    self.pairs.unwrap_or(default_count),
                    4,
                    5,
                    self.seed.unwrap_or(42),
                ))
            }
            _ => Err(usage_error(
                "pair-based suites need both --b and --k (or neither, for the random sweep)",
            )),
        }
    }

    fn exhaustive_periods(&self) -> Result<Vec<SignSeq>> {
        if let Some(k) = self.k_seq()? {
            return Ok(vec![k]);
        }
        let max_m = self.max_m.unwrap_or(6);
        if max_m < 1 {
            return Err(usage_error("--max-m must be at least 1"));
        }
        Ok((1..=max_m).flat_map(all_sign_seqs).collect())
    }
}

/// `verify`: run the named suite(s); returns false when any check fails.
pub fn verify(args: VerifyArgs) -> Result<bool> {
    let known = ["prop1", "laurent", "thm1", "claim2", "thm2", "cor2", "all"];
    if !known.contains(&args.suite.as_str()) {
        return Err(usage_error(format!(
            "unknown suite `{}`; expected one of {}",
            args.suite,
            known.join("|")
        )));
    }
    let mut reports: Vec<VerificationReport> = Vec::new();
    let run_all = args.suite == "all";

    if run_all || args.suite == "prop1" {
        let phis = phi_grid(args.phis.unwrap_or(16));
        let tol = args.tol.unwrap_or(1e-9);
        for k in args.exhaustive_periods()? {
            reports.push(verify_symbol_scalar(&k, &phis, tol));
        }
    }
    if run_all || args.suite == "laurent" {
        for k in args.exhaustive_periods()? {
            let m = k.len() as i64;
            let n = args.half_width.unwrap_or_else(|| (m * (m + 1)).max(60));
            reports.push(verify_laurent_form(&k, n)?);
        }
    }
    if run_all || args.suite == "thm1" {
        for (b, k) in args.pair_sweep(25)? {
            let n = args.half_width.unwrap_or(6 * k.len() as i64);
            reports.push(verify_block_structure(&b, &k, n)?);
        }
    }
    if run_all || args.suite == "claim2" {
        for (b, k) in args.pair_sweep(25)? {
            let n = args.half_width.unwrap_or(6 * k.len() as i64);
            let lift = lift_period(&prepare_period(&b, &k), &k)?;
            reports.push(verify_power_structure(&lift, n)?);
        }
    }
    if run_all || args.suite == "thm2" {
        match (args.b_seq()?, args.k_seq()?) {
            (Some(b), Some(k)) => reports.push(verify_composition_identity(&b, &k)?),
            (None, None) => {
                let s = enumerate_s(8)?;
                for b in even_sign_seqs_up_to(4) {
                    for e in s.entries().filter(|e| e.k.len() <= 5) {
                        reports.push(verify_composition_identity(&b, &e.k)?);
                    }
                }
                for (b, k) in random_pairs(
                    &s,
                    args.pairs.unwrap_or(20),
                    6,
                    8,
                    args.seed.unwrap_or(42),
                ) {
                    reports.push(verify_composition_identity(&b, &k)?);
                }
            }
            _ => {
                return Err(usage_error(
                    "thm2 needs both --b and --k (or neither, for the sweep)",
                ))
            }
        }
    }
    if run_all || args.suite == "cor2" {
        let phis = phi_grid(args.phis.unwrap_or(8));
        let tol = args.tol.unwrap_or(1e-7);
        for (b, k) in args.pair_sweep(10)? {
            reports.push(verify_spectral_inclusion(&b, &k, &phis, tol)?);
        }
    }

    let mut all_passed = true;
    for r in &reports {
        println!("{r}");
        all_passed &= r.passed;
    }
    println!(
        "{}: {} checks, {} failed",
        args.suite,
        reports.len(),
        reports.iter().filter(|r| !r.passed).count()
    );
    Ok(all_passed)
}

pub struct RenderArgs {
    pub kind: Option<String>,
    pub k: Option<String>,
    pub poly: Option<String>,
    pub degree_cap: Option<usize>,
    pub min_degree: Option<usize>,
    pub n_max: Option<usize>,
    pub max_iter: Option<usize>,
    pub center_re: Option<f64>,
    pub center_im: Option<f64>,
    pub half_width: Option<f64>,
    pub half_height: Option<f64>,
    pub resolution: Option<u32>,
    pub supersample: bool,
    pub symmetry_closure: bool,
    pub no_circle: bool,
    pub counts: bool,
    pub format: Option<String>,
    pub name: Option<String>,
}

impl RenderArgs {
    fn pick<T: std::str::FromStr>(
        &self,
        flag: Option<T>,
        config: &ConfigFile,
        key: &str,
    ) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => config.parse::<T>(key),
        }
    }
}

/// Single polynomial source: `--k` (its symmetry polynomial) or `--poly`.
fn source_poly(
    args: &RenderArgs,
    config: &ConfigFile,
    job: &mut JobConfig,
) -> Result<Option<IntPoly>> {
    let k_text = args.k.clone().or_else(|| config.get("k").map(String::from));
    let poly_text = args
        .poly
        .clone()
        .or_else(|| config.get("poly").map(String::from));
    match (k_text, poly_text) {
        (Some(_), Some(_)) => Err(usage_error("--k and --poly are mutually exclusive")),
        (Some(ktext), None) => {
            let k = parse_seq("--k", &ktext)?;
            job.set("k", &k);
            let p = hopspec_core::hopping::hopping_poly(&k);
            job.set("poly", p.coeff_list());
            Ok(Some(p))
        }
        (None, Some(ptext)) => {
            let p = parse_poly(&ptext)?;
            job.set("poly", p.coeff_list());
            Ok(Some(p))
        }
        (None, None) => Ok(None),
    }
}

/// `render`: rasterize a spectral subset and export it with a config sidecar.
pub fn render(out: &Path, config: &ConfigFile, args: RenderArgs) -> Result<()> {
    let kind = match args.kind.clone().or_else(|| config.get("kind").map(String::from)) {
        Some(k) => k,
        None => {
            return Err(usage_error(
                "--kind is required: preimage | union | iterated | julia",
            ))
        }
    };

    let mut job = JobConfig::new("render");
    job.set("kind", &kind);

    // window
    let center = C64::new(
        args.pick(args.center_re, config, "center_re")?.unwrap_or(0.0),
        args.pick(args.center_im, config, "center_im")?.unwrap_or(0.0),
    );
    let half_width = args
        .pick(args.half_width, config, "half_width")?
        .unwrap_or(DEFAULT_HALF_WIDTH);
    let half_height = args
        .pick(args.half_height, config, "half_height")?
        .unwrap_or(half_width);
    let resolution = args.pick(args.resolution, config, "resolution")?.unwrap_or(2048);
    let window = Window::new(center, half_width, half_height, resolution, resolution)?;

    let supersample =
        args.supersample || config.parse::<bool>("supersample")?.unwrap_or(false);
    let sampling = if supersample {
        Sampling::Grid2x2
    } else {
        Sampling::Center
    };
    let symmetry_closure =
        args.symmetry_closure || config.parse::<bool>("symmetry_closure")?.unwrap_or(false);
    let circle = if args.no_circle {
        false
    } else {
        config.parse::<bool>("circle")?.unwrap_or(true)
    };
    let format = match args
        .pick(args.format.clone(), config, "format")?
        .unwrap_or_else(|| "ppm".to_string())
        .as_str()
    {
        "ppm" => ExportFormat::Ppm,
        "png" => ExportFormat::Png,
        other => return Err(usage_error(format!("unknown format `{other}`"))),
    };

    let single = source_poly(&args, config, &mut job)?;
    let family = |job: &mut JobConfig| -> Result<Vec<IntPoly>> {
        let cap = args.pick(args.degree_cap, config, "degree_cap")?.unwrap_or(7);
        let min = args.pick(args.min_degree, config, "min_degree")?.unwrap_or(2);
        if cap < min || min < 2 {
            return Err(usage_error("need 2 <= --min-degree <= --degree-cap"));
        }
        job.set("min_degree", min);
        job.set("degree_cap", cap);
        let s = enumerate_s(cap)?;
        Ok(s.distinct_in_range(min, cap).into_iter().cloned().collect())
    };

    let raster: RasterImage;
    let mut counts_max = None;
    match kind.as_str() {
        "preimage" => {
            let p = single.ok_or_else(|| usage_error("preimage needs --k or --poly"))?;
            raster = raster_preimage_disk_sampled(&p, &window, sampling)?;
        }
        "union" => {
            if single.is_some() {
                return Err(usage_error(
                    "union renders the symmetry family; use --degree-cap, not --k/--poly",
                ));
            }
            let polys = family(&mut job)?;
            job.set("symmetry_closure", symmetry_closure);
            raster = raster_union_sampled(&polys, &window, symmetry_closure, sampling)?;
        }
        "iterated" => {
            let n_max = args.pick(args.n_max, config, "n_max")?.unwrap_or(9);
            job.set("n_max", n_max);
            match single {
                Some(p) => {
                    raster = raster_iterated_preimage_sampled(&p, n_max, &window, sampling)?;
                }
                None => {
                    let polys = family(&mut job)?;
                    let mut acc: Option<RasterImage> = None;
                    for p in &polys {
                        let img = raster_iterated_preimage_sampled(p, n_max, &window, sampling)?;
                        match &mut acc {
                            Some(a) => a.merge_members(&img),
                            None => acc = Some(img),
                        }
                    }
                    raster = acc.ok_or_else(|| usage_error("empty polynomial family"))?;
                }
            }
        }
        "julia" => {
            let p = single.ok_or_else(|| usage_error("julia needs --k or --poly"))?;
            let max_iter = args.pick(args.max_iter, config, "max_iter")?.unwrap_or(100);
            job.set("max_iter", max_iter);
            job.set("escape_radius", escape_radius(&p)?);
            if args.counts {
                raster = raster_filled_julia_counts(&p, max_iter, &window)?;
                counts_max = Some(max_iter as u32);
            } else {
                raster = raster_filled_julia(&p, max_iter, &window)?;
            }
        }
        other => {
            return Err(usage_error(format!(
                "unknown render kind `{other}`; expected preimage | union | iterated | julia"
            )))
        }
    }

    job.set("center_re", center.re);
    job.set("center_im", center.im);
    job.set("half_width", half_width);
    job.set("half_height", half_height);
    job.set("resolution", resolution);
    job.set("supersample", supersample);
    job.set("circle", circle);
    job.set("format", format.extension());

    let name = args
        .name
        .clone()
        .or_else(|| config.get("name").map(String::from))
        .unwrap_or_else(|| kind.clone());
    let path: PathBuf = out.join(format!("{name}.{}", format.extension()));
    match counts_max {
        Some(max) => export_counts_grayscale(&raster, max, &path, format)?,
        None => export_image(&raster, &path, format, circle.then_some(&window))?,
    }
    job.write_sidecar(&path)?;
    println!("wrote {}", path.display());
    Ok(())
}
