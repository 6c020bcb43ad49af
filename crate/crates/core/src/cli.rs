//! The `flexi` command line: connectivity queries, classification, clonal
//! cores, gallery emission, and the seeded verification suites.
//!
//! Exit codes: 0 success/pass, 1 verification failure (a failed suite or a
//! path outside the taxonomy), 2 input error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::clonal::clonal_core;
use crate::connectivity::{kappa, lambda, local_conn, LawConfig};
use crate::error::{Error, Result};
use crate::files;
use crate::flexipath::{classify, reduce_to_4c, FlexiMode};
use crate::gallery;
use crate::matroid::{Matroid, MAX_ELEMENTS};
use crate::subset::Subset;
use crate::verify::{run as run_suites, Suite, VerifyConfig};

#[derive(Parser)]
#[command(name = "flexi", version, about = "Matroid connectivity, clonal cores and flexipath classification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank of a labelled subset in a matroid file.
    Rank {
        file: PathBuf,
        /// Comma-separated element labels.
        #[arg(long)]
        set: String,
    },
    /// Connectivity values: λ(X), ⊓(X,Y), ⊓*(X,Y) or κ(X,Y).
    Conn {
        file: PathBuf,
        /// Comma-separated labels of X.
        #[arg(long)]
        x: String,
        /// Comma-separated labels of Y; without it, λ(X) is printed.
        #[arg(long)]
        y: Option<String>,
        /// Work in the dual.
        #[arg(long)]
        dual: bool,
        /// Print κ(X,Y) = min λ(Z) over X ⊆ Z ⊆ E−Y instead of ⊓.
        #[arg(long)]
        kappa: bool,
    },
    /// Verify a path file as a (4,c)-flexipath, reduce it, and classify.
    Classify {
        file: PathBuf,
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Extract the clonal core of a partitioned matroid.
    Core {
        file: PathBuf,
        part: PathBuf,
        /// Directory for core.mtr, core.prt and provenance.txt.
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a catalog entry; optionally emit its files.
    Gallery {
        name: String,
        /// Directory for <name>.mtr and <name>.path.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run the seeded verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Ground-set cap for random instances (≤ 12 unless FLEXI_MAX_N).
        #[arg(long = "max-n", default_value_t = 8)]
        max_n: usize,
        #[arg(long)]
        json: bool,
        /// Exhaustive/sampled switch-over point for the law checks.
        #[arg(long = "law-threshold")]
        law_threshold: Option<usize>,
        /// Sample count per identity above the threshold.
        #[arg(long = "law-samples")]
        law_samples: Option<u64>,
    },
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::OutsideTaxonomy(_) => 1,
                _ => 2,
            }
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Rank { file, set } => {
            let m = files::parse_matroid_file(&file)?;
            let x = parse_set(&m, &set)?;
            println!("{}", m.r(x));
            Ok(0)
        }
        Cmd::Conn { file, x, y, dual, kappa: want_kappa } => {
            let m = files::parse_matroid_file(&file)?;
            let xs = parse_set(&m, &x)?;
            let value = match y {
                None => {
                    if want_kappa {
                        return Err(Error::BadParameters("--kappa needs --y".into()));
                    }
                    // λ is self-dual, so --dual changes nothing here.
                    lambda(&m, xs)
                }
                Some(y) => {
                    let ys = parse_set(&m, &y)?;
                    if want_kappa {
                        let host = if dual { m.dual() } else { m.clone() };
                        kappa(&host, xs, ys)?
                    } else {
                        local_conn(&m, xs, ys, dual)?
                    }
                }
            };
            println!("{value}");
            Ok(0)
        }
        Cmd::Classify { file, path, json } => {
            let m = files::parse_matroid_file(&file)?;
            let mut fp = files::parse_path_file(&m, &path)?;
            if !fp.is_four_flexipath(FlexiMode::Subset) {
                let why = fp
                    .check_path()
                    .err()
                    .or_else(|| fp.check_flexi(FlexiMode::Subset).err())
                    .unwrap_or_else(|| "unknown".into());
                eprintln!("not a (4,c)-flexipath: {why}");
                return Ok(2);
            }
            let (red, _) = reduce_to_4c(&fp)?;
            let class = classify(&red)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&class).expect("serializable"));
            } else {
                println!("{class}");
            }
            Ok(0)
        }
        Cmd::Core { file, part, out } => {
            let m = files::parse_matroid_file(&file)?;
            let p = files::parse_partition_file(&m, &part)?;
            let res = clonal_core(&p)?;
            std::fs::create_dir_all(&out)?;
            std::fs::write(out.join("core.mtr"), files::matroid_to_string(res.core.matroid()))?;
            std::fs::write(out.join("core.prt"), files::partition_to_string(&res.core))?;
            let mut prov = String::new();
            for (name, original, lam) in &res.provenance {
                let labels: Vec<&str> = original
                    .iter()
                    .map(|i| m.labels()[i].as_str())
                    .collect();
                prov.push_str(&format!("{name} lambda={lam} from={}\n", labels.join(",")));
            }
            std::fs::write(out.join("provenance.txt"), prov)?;
            println!(
                "core: n={} rank={} parts={} -> {}",
                res.core.matroid().n(),
                res.core.matroid().rank(),
                res.core.n_parts(),
                out.display()
            );
            Ok(0)
        }
        Cmd::Gallery { name, emit } => {
            let entry = gallery::gallery(&name)?;
            println!("{}: {}", entry.name, entry.expected);
            println!("recipe: {}", entry.recipe);
            println!("locus: {}", entry.locus);
            if let Some(dir) = emit {
                std::fs::create_dir_all(&dir)?;
                write_entry(&dir, &entry)?;
                println!("emitted: {}.mtr {}.path", entry.name, entry.name);
            }
            Ok(0)
        }
        Cmd::Verify { suite, seed, trials, max_n, json, law_threshold, law_samples } => {
            let cap = env_max_n();
            if max_n > cap {
                return Err(Error::BadParameters(format!(
                    "--max-n {max_n} exceeds the cap {cap} (raise FLEXI_MAX_N up to {MAX_ELEMENTS})"
                )));
            }
            let cfg = VerifyConfig {
                suite: suite.parse::<Suite>()?,
                seed,
                trials,
                max_n,
                json,
                laws: LawConfig {
                    exhaustive_max_n: law_threshold.unwrap_or_else(|| LawConfig::default().exhaustive_max_n),
                    samples: law_samples.unwrap_or_else(|| LawConfig::default().samples),
                    seed,
                },
            };
            let report = run_suites(&cfg);
            if json {
                print!("{}", report.render_json());
            } else {
                print!("{}", report.render_text());
            }
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

fn env_max_n() -> usize {
    std::env::var("FLEXI_MAX_N")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|v| v.min(MAX_ELEMENTS))
        .unwrap_or(12)
}

fn parse_set(m: &Matroid, spec: &str) -> Result<Subset> {
    m.subset_of_labels(spec.split(',').map(str::trim).filter(|t| !t.is_empty()))
}

fn write_entry(dir: &Path, entry: &gallery::GalleryEntry) -> Result<()> {
    std::fs::write(
        dir.join(format!("{}.mtr", entry.name)),
        files::matroid_to_string(entry.path.matroid()),
    )?;
    std::fs::write(
        dir.join(format!("{}.path", entry.name)),
        files::path_to_string(&entry.path),
    )?;
    Ok(())
}
