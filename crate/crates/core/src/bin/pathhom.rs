use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use pathhom::algebra::{
    algebra_from_json, bimodule_from_json, builtin_algebra, builtin_bimodule, validate_algebra, validate_bimodule, Algebra, Bimodule,
};
use pathhom::complex::ComplexLimits;
use pathhom::digraph::{parse_digraph, parse_mapping, Digraph};
use pathhom::oracles::{hochschild_complex, polygon_cube_complex, DEFAULT_MAX_BAR_DIM};
use pathhom::pipeline::{compare_polygon, induced_maps, path_homology, Caps};
use pathhom::poset::{enumerate_path_poset, PosetConfig};
use pathhom::report;
use pathhom::ring::{Integers, PrimeField, Rationals, Ring, RingKind};
use pathhom::{Error, Result};

#[derive(Parser)]
#[command(name = "pathhom", version, about = "Homology of directed graphs with algebra and bimodule coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the path poset of a digraph.
    Poset {
        graph: PathBuf,
        #[arg(long, default_value_t = 20)]
        max_edges: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Homology of a digraph with coefficients in F_{A,M}.
    Homology {
        graph: PathBuf,
        #[command(flatten)]
        coeffs: Coeffs,
        #[command(flatten)]
        caps: CapArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Compare path-poset, Hochschild and chromatic homology on the n-gon.
    ComparePolygon {
        n: usize,
        #[command(flatten)]
        coeffs: Coeffs,
        #[command(flatten)]
        caps: CapArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Maps in homology induced by an inclusion of digraphs.
    Induced {
        source: PathBuf,
        target: PathBuf,
        mapping: PathBuf,
        #[command(flatten)]
        coeffs: Coeffs,
        #[command(flatten)]
        caps: CapArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Run a reference computation on its own.
    Oracles {
        #[command(subcommand)]
        oracle: Oracle,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// HH_i(A; M) for i up to --degree.
    Hochschild {
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[command(flatten)]
        coeffs: Coeffs,
        #[command(flatten)]
        caps: CapArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Modified chromatic homology of the n-gon.
    Chromatic {
        n: usize,
        #[command(flatten)]
        coeffs: Coeffs,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Clone)]
struct Coeffs {
    /// Z, Q or Fp:<p>.
    #[arg(long, default_value = "Q")]
    ring: String,
    /// Built-in name (ground, dual, trunc3, ut2) or a JSON definition file.
    #[arg(long, default_value = "ground")]
    algebra: String,
    /// Built-in name (regular, augmentation) or a JSON definition file.
    #[arg(long, default_value = "regular")]
    bimodule: String,
}

#[derive(Args, Clone, Copy)]
struct CapArgs {
    #[arg(long, default_value_t = 20)]
    max_edges: usize,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_MAX_BAR_DIM)]
    max_bar_dim: usize,
}

#[derive(Args, Clone)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON output (the default).
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Human-readable table instead of JSON.
    #[arg(long)]
    table: bool,
    /// Leave the timing field out of reports.
    #[arg(long)]
    no_timing: bool,
}

struct Rendered {
    json: Value,
    table: String,
    failed: bool,
}

impl CapArgs {
    fn check(&self) -> Result<()> {
        if self.max_edges == 0 || self.max_bar_dim == 0 || self.max_degree == Some(0) {
            return Err(Error::Validation("caps must be positive".into()));
        }
        Ok(())
    }

    fn caps(&self) -> Caps {
        Caps {
            poset: PosetConfig { max_edges: self.max_edges },
            complex: ComplexLimits { max_degree: self.max_degree, ..ComplexLimits::default() },
            max_bar_dim: self.max_bar_dim,
        }
    }

    fn json(&self) -> Value {
        json!({ "max_edges": self.max_edges, "max_degree": self.max_degree, "max_bar_dim": self.max_bar_dim })
    }
}

fn read_graph(path: &Path) -> Result<Digraph> {
    parse_digraph(&fs::read_to_string(path)?)
}

fn read_json(path: &Path) -> Result<Value> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn load_algebra<R: Ring>(ring: &R, name: &str) -> Result<Algebra<R>> {
    let path = Path::new(name);
    let a = if path.is_file() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(name);
        algebra_from_json(ring, stem, &read_json(path)?)?
    } else {
        builtin_algebra(ring, name)?
    };
    let violations = validate_algebra(&a);
    if !violations.is_empty() {
        return Err(Error::Violations(violations));
    }
    Ok(a)
}

fn load_bimodule<R: Ring>(a: &Algebra<R>, name: &str) -> Result<Bimodule<R>> {
    let path = Path::new(name);
    let m = if path.is_file() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(name);
        bimodule_from_json(a, stem, &read_json(path)?)?
    } else {
        builtin_bimodule(a, name)?
    };
    let violations = validate_bimodule(a, &m);
    if !violations.is_empty() {
        return Err(Error::Violations(violations));
    }
    Ok(m)
}

fn provenance(inputs: Value, caps: Value) -> Value {
    json!({ "inputs": inputs, "caps": caps, "version": report::VERSION })
}

fn coeff_inputs(c: &Coeffs) -> Value {
    json!({ "ring": c.ring, "algebra": c.algebra, "bimodule": c.bimodule })
}

fn with_input(mut v: Value, key: &str, value: Value) -> Value {
    v[key] = value;
    v
}

fn timed<T>(no_timing: bool, f: impl FnOnce() -> Result<T>) -> Result<(T, Option<f64>)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, (!no_timing).then(|| start.elapsed().as_secs_f64())))
}

fn run_poset(graph: &Path, max_edges: usize) -> Result<Rendered> {
    if max_edges == 0 {
        return Err(Error::Validation("caps must be positive".into()));
    }
    let g = read_graph(graph)?;
    let p = enumerate_path_poset(&g, PosetConfig { max_edges })?;
    let dump = p.dump();
    let table = format!(
        "elements: {}\ncovers: {}\nrank histogram: {:?}\n",
        dump.elements,
        dump.covers.len(),
        dump.rank_histogram
    );
    Ok(Rendered { json: serde_json::to_value(&dump)?, table, failed: false })
}

fn run_with_ring<R: Ring>(ring: R, command: &Command) -> Result<Rendered> {
    match command {
        Command::Poset { .. } => unreachable!("handled without a ring"),
        Command::Homology { graph, coeffs, caps, output } => {
            caps.check()?;
            let g = read_graph(graph)?;
            let a = load_algebra(&ring, &coeffs.algebra)?;
            let m = load_bimodule(&a, &coeffs.bimodule)?;
            let (res, timing) = timed(output.no_timing, || path_homology(&g, &a, &m, &caps.caps()))?;
            let inputs = with_input(coeff_inputs(coeffs), "graph", json!(graph.display().to_string()));
            Ok(Rendered {
                json: report::homology_report("path_poset", &res.homology, &res.dims, provenance(inputs, caps.json()), timing),
                table: report::homology_table("H_*(graph)", &res.homology),
                failed: false,
            })
        }
        Command::ComparePolygon { n, coeffs, caps, output } => {
            caps.check()?;
            let a = load_algebra(&ring, &coeffs.algebra)?;
            let m = load_bimodule(&a, &coeffs.bimodule)?;
            let (cmp, timing) = timed(output.no_timing, || compare_polygon(*n, &a, &m, &caps.caps()))?;
            let rows: Vec<Value> = cmp.rows.iter().map(serde_json::to_value).collect::<std::result::Result<_, _>>()?;
            let table = report::comparison_table(&rows, cmp.pass);
            let mut out = json!({
                "n": n,
                "ring": ring.kind().to_string(),
                "rows": rows,
                "verdict": if cmp.pass { "PASS" } else { "FAIL" },
            });
            if let Some(t) = timing {
                out["timing"] = json!({ "seconds": t });
            }
            out["provenance"] = provenance(with_input(coeff_inputs(coeffs), "n", json!(n)), caps.json());
            Ok(Rendered { json: out, table, failed: !cmp.pass })
        }
        Command::Induced { source, target, mapping, coeffs, caps, output } => {
            caps.check()?;
            let src = read_graph(source)?;
            let tgt = read_graph(target)?;
            let inc = parse_mapping(&fs::read_to_string(mapping)?, &src, &tgt)?;
            let a = load_algebra(&ring, &coeffs.algebra)?;
            let m = load_bimodule(&a, &coeffs.bimodule)?;
            let (maps, timing) = timed(output.no_timing, || induced_maps(&inc, &a, &m, caps.caps().poset))?;
            let inputs = json!({
                "ring": coeffs.ring,
                "algebra": coeffs.algebra,
                "bimodule": coeffs.bimodule,
                "source": source.display().to_string(),
                "target": target.display().to_string(),
                "mapping": mapping.display().to_string(),
            });
            let mut out = json!({ "ring": ring.kind().to_string(), "maps": report::induced_json(&ring, &maps) });
            if let Some(t) = timing {
                out["timing"] = json!({ "seconds": t });
            }
            out["provenance"] = provenance(inputs, caps.json());
            Ok(Rendered { json: out, table: report::induced_table(&ring, &maps), failed: false })
        }
        Command::Oracles { oracle: Oracle::Hochschild { degree, coeffs, caps, output } } => {
            caps.check()?;
            let a = load_algebra(&ring, &coeffs.algebra)?;
            let m = load_bimodule(&a, &coeffs.bimodule)?;
            let ((h, dims), timing) = timed(output.no_timing, || {
                let c = hochschild_complex(&a, &m, degree + 1, caps.max_bar_dim)?;
                Ok((c.homology_through(*degree)?, c.dims()[..=*degree].to_vec()))
            })?;
            let inputs = with_input(coeff_inputs(coeffs), "degree", json!(degree));
            Ok(Rendered {
                json: report::homology_report("hochschild", &h, &dims, provenance(inputs, caps.json()), timing),
                table: report::homology_table("HH_*", &h),
                failed: false,
            })
        }
        Command::Oracles { oracle: Oracle::Chromatic { n, coeffs, output } } => {
            let a = load_algebra(&ring, &coeffs.algebra)?;
            let m = load_bimodule(&a, &coeffs.bimodule)?;
            let ((h, dims), timing) = timed(output.no_timing, || {
                let c = polygon_cube_complex(*n, &a, &m)?;
                Ok((c.homology()?, c.dims().to_vec()))
            })?;
            let inputs = with_input(coeff_inputs(coeffs), "n", json!(n));
            Ok(Rendered {
                json: report::homology_report("chromatic_hat", &h, &dims, provenance(inputs, json!({})), timing),
                table: report::homology_table("chromatic hat", &h),
                failed: false,
            })
        }
    }
}

fn coeffs_of(command: &Command) -> Option<&Coeffs> {
    match command {
        Command::Poset { .. } => None,
        Command::Homology { coeffs, .. }
        | Command::ComparePolygon { coeffs, .. }
        | Command::Induced { coeffs, .. }
        | Command::Oracles { oracle: Oracle::Hochschild { coeffs, .. } }
        | Command::Oracles { oracle: Oracle::Chromatic { coeffs, .. } } => Some(coeffs),
    }
}

fn output_of(command: &Command) -> &Output {
    match command {
        Command::Poset { output, .. }
        | Command::Homology { output, .. }
        | Command::ComparePolygon { output, .. }
        | Command::Induced { output, .. }
        | Command::Oracles { oracle: Oracle::Hochschild { output, .. } }
        | Command::Oracles { oracle: Oracle::Chromatic { output, .. } } => output,
    }
}

fn run(command: &Command) -> Result<Rendered> {
    if let Command::Poset { graph, max_edges, .. } = command {
        return run_poset(graph, *max_edges);
    }
    let kind: RingKind = coeffs_of(command).map_or("Q", |c| c.ring.as_str()).parse()?;
    match kind {
        RingKind::Integers => run_with_ring(Integers, command),
        RingKind::Rationals => run_with_ring(Rationals, command),
        RingKind::PrimeField(p) => run_with_ring(PrimeField::new(p)?, command),
    }
}

fn emit(rendered: &Rendered, output: &Output) -> Result<()> {
    let text = if output.table {
        rendered.table.clone()
    } else {
        let mut s = serde_json::to_string_pretty(&rendered.json)?;
        s.push('\n');
        s
    };
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = output_of(&cli.command);
    let result = run(&cli.command).and_then(|r| emit(&r, output).map(|()| r.failed));
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("error: comparison failed");
            ExitCode::from(1)
        }
        Err(e) => {
            match &e {
                Error::Violations(list) => {
                    eprintln!("error: validation failed");
                    for v in list {
                        eprintln!("  {v}");
                    }
                }
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
