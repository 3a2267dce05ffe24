//! Command-line front end: validation, subdivision, the reflectors,
//! colimits, complex conversions, homology, property checks, hom counting,
//! and geometry export over the text formats of the `simplicial` crate.
//!
//! Every failure prints a single machine-parsable record
//! `error kind=<kind> message="..."` to stderr and exits with status 1;
//! usage errors exit with status 2.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use simplicial::colimit::{self, Span};
use simplicial::export;
use simplicial::format;
use simplicial::hom::Budget;
use simplicial::homology;
use simplicial::osc;
use simplicial::reflectors;
use simplicial::sset::FiniteSimplicialSet;
use simplicial::subdivision;

const BUDGET_ENV: &str = "SIMPSET_BUDGET";

struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        Failure {
            kind,
            message: message.to_string(),
        }
    }
}

macro_rules! from_error {
    ($ty:ty, $kind:literal) => {
        impl From<$ty> for Failure {
            fn from(e: $ty) -> Self {
                Failure::new($kind, e)
            }
        }
    };
}

from_error!(std::io::Error, "io");
from_error!(format::FormatError, "format");
from_error!(simplicial::sset::SsetError, "structure");
from_error!(simplicial::sset::MapError, "map");
from_error!(simplicial::hom::HomError, "budget");
from_error!(simplicial::osc::OscError, "osc");
from_error!(homology::HomologyError, "homology");
from_error!(subdivision::SubdivisionError, "subdivision");
from_error!(export::ExportError, "export");

impl From<reflectors::ReflectorError> for Failure {
    fn from(e: reflectors::ReflectorError) -> Self {
        match &e {
            reflectors::ReflectorError::UnsupportedSingularity(_) => {
                Failure::new("unsupported-singularity", e)
            }
            reflectors::ReflectorError::NotNonsingular => Failure::new("precondition", e),
            _ => Failure::new("reflector", e),
        }
    }
}

impl From<colimit::ColimitError> for Failure {
    fn from(e: colimit::ColimitError) -> Self {
        match &e {
            colimit::ColimitError::NoInjectiveLeg | colimit::ColimitError::MismatchedApex => {
                Failure::new("precondition", e)
            }
            _ => Failure::new("colimit", e),
        }
    }
}

#[derive(Parser)]
#[command(name = "simplicial", version, about = "finite simplicial sets, complexes and their reflectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PushoutCategory {
    Sset,
    Ns,
    Un,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeqCategory {
    Sset,
    Un,
    Osc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HomCategory {
    Sset,
    Osc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Off,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    B,
    C,
    Loops,
    Rlp,
    FullInclusion,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural invariants of a document
    Validate { file: String },
    /// Iterated barycentric subdivision
    Subdivide {
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write one provenance row per generator of the final subdivision
        #[arg(long)]
        provenance_out: Option<PathBuf>,
        file: String,
    },
    /// Reflect onto the distinct-vertex subcategory
    Desingularize {
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        map_out: Option<PathBuf>,
        file: String,
    },
    /// Reflect onto the unique-simplex subcategory
    Localize {
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        map_out: Option<PathBuf>,
        file: String,
    },
    /// Desingularize, then localize
    Normalize {
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        map_out: Option<PathBuf>,
        file: String,
    },
    /// Ordered simplicial complex associated to a unique-simplex object
    ToOsc {
        #[arg(short, long)]
        out: Option<PathBuf>,
        file: String,
    },
    /// Simplicial realization of an ordered simplicial complex
    ToSset {
        #[arg(short, long)]
        out: Option<PathBuf>,
        file: String,
    },
    /// Pushout of a span given by two map documents sharing their apex
    Pushout {
        #[arg(long, value_enum)]
        cat: PushoutCategory,
        #[arg(short, long)]
        out: Option<PathBuf>,
        left: PathBuf,
        right: PathBuf,
    },
    /// Coequalizer of a parallel pair of map documents
    Coequalize {
        #[arg(long, value_enum)]
        cat: CoeqCategory,
        #[arg(short, long)]
        out: Option<PathBuf>,
        f: PathBuf,
        g: PathBuf,
    },
    /// Product of two ordered simplicial complexes
    Product {
        #[arg(long, value_enum)]
        cat: HomCategory,
        #[arg(short, long)]
        out: Option<PathBuf>,
        a: String,
        b: String,
    },
    /// Integer homology profile
    Homology {
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        file: String,
    },
    /// Boolean property reports
    Check {
        #[arg(long, value_enum)]
        property: Property,
        /// For rlp: highest family index, defaults to dimension + 1
        #[arg(long)]
        family_max: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        file: String,
    },
    /// Number of maps between two documents
    HomCount {
        #[arg(long, value_enum, default_value = "sset")]
        cat: HomCategory,
        #[arg(long)]
        budget: Option<u64>,
        a: String,
        b: String,
    },
    /// Geometry export
    Export {
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(short, long)]
        out: Option<PathBuf>,
        file: String,
    },
}

fn read_input(file: &str) -> Result<String, Failure> {
    if file == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(file)?)
    }
}

fn load_sset(file: &str) -> Result<FiniteSimplicialSet, Failure> {
    Ok(format::read_sset(&read_input(file)?)?)
}

fn load_osc(file: &str) -> Result<osc::OscComplex, Failure> {
    Ok(format::read_osc(&read_input(file)?)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn budget_from(explicit: Option<u64>) -> Budget {
    let limit = explicit
        .or_else(|| std::env::var(BUDGET_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(simplicial::hom::DEFAULT_BUDGET);
    Budget::new(limit)
}

fn path_or_dash(p: &Option<PathBuf>) -> String {
    p.as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "-".into())
}

fn write_reflected(
    input_name: &str,
    result: (FiniteSimplicialSet, simplicial::sset::SimplicialMap),
    out: Option<PathBuf>,
    map_out: Option<PathBuf>,
) -> Result<ExitCode, Failure> {
    let (object, projection) = result;
    emit(&out, &format::write_sset(&object)?)?;
    if let Some(map_path) = map_out {
        let text = format::write_smap(&projection, input_name, &path_or_dash(&out))?;
        std::fs::write(map_path, text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Validate { file } => {
            let text = read_input(&file)?;
            let trimmed = text.trim_start();
            if trimmed.starts_with("osc") {
                // assemble performs the validation
                match format::read_osc(&text) {
                    Ok(_) => {
                        println!("ok");
                        Ok(ExitCode::SUCCESS)
                    }
                    Err(format::FormatError::Osc(osc::OscError::Invalid(report))) => {
                        print!("{report}");
                        Ok(ExitCode::FAILURE)
                    }
                    Err(e) => Err(e.into()),
                }
            } else {
                match format::read_sset(&text) {
                    Ok(_) => {
                        println!("ok");
                        Ok(ExitCode::SUCCESS)
                    }
                    Err(format::FormatError::InvalidDocument(report)) => {
                        print!("{report}");
                        Ok(ExitCode::FAILURE)
                    }
                    Err(e) => Err(e.into()),
                }
            }
        }
        Command::Subdivide {
            times,
            out,
            provenance_out,
            file,
        } => {
            let space = load_sset(&file)?;
            if let Some(prov_path) = &provenance_out {
                let mut cur = space.clone();
                for _ in 0..times.saturating_sub(1) {
                    cur = subdivision::sd(&cur)?.space;
                }
                let last = subdivision::sd(&cur)?;
                let mut rows = String::new();
                for (name, fg) in &last.provenance {
                    use std::fmt::Write;
                    let flags: Vec<String> = fg
                        .flag
                        .iter()
                        .map(|m| {
                            (0..64)
                                .filter(|i| m & (1 << i) != 0)
                                .map(|i| i.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        })
                        .collect();
                    writeln!(rows, "{name}\t{}\t{}", fg.base, flags.join("|")).expect("string");
                }
                std::fs::write(prov_path, rows)?;
                emit(&out, &format::write_sset(&last.space)?)?;
            } else {
                let result = subdivision::sd_iter(&space, times)?;
                emit(&out, &format::write_sset(&result)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Desingularize { out, map_out, file } => {
            let space = load_sset(&file)?;
            write_reflected(&file, reflectors::desingularize(&space)?, out, map_out)
        }
        Command::Localize { out, map_out, file } => {
            let space = load_sset(&file)?;
            write_reflected(&file, reflectors::localize(&space)?, out, map_out)
        }
        Command::Normalize { out, map_out, file } => {
            let space = load_sset(&file)?;
            write_reflected(&file, reflectors::normalize_to_un(&space)?, out, map_out)
        }
        Command::ToOsc { out, file } => {
            let space = load_sset(&file)?;
            let complex = osc::f_functor(&space)?;
            emit(&out, &format::write_osc(&complex)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ToSset { out, file } => {
            let complex = load_osc(&file)?;
            emit(&out, &format::write_sset(&osc::u_functor(&complex))?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Pushout { cat, out, left, right } => {
            let left = format::load_smap_from_path(&left)?;
            let right = format::load_smap_from_path(&right)?;
            let span = Span::new(left, right)?;
            let object = match cat {
                PushoutCategory::Sset => colimit::pushout_sset(&span)?.object,
                PushoutCategory::Ns => colimit::pushout_ns(&span)?.object,
                PushoutCategory::Un => colimit::pushout_un(&span)?.object,
            };
            emit(&out, &format::write_sset(&object)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Coequalize { cat, out, f, g } => match cat {
            CoeqCategory::Osc => {
                let f = format::load_oscmap_from_path(&f)?;
                let g = format::load_oscmap_from_path(&g)?;
                let (object, _) = osc::coequalizer_osc(&f, &g)?;
                emit(&out, &format::write_osc(&object)?)?;
                Ok(ExitCode::SUCCESS)
            }
            CoeqCategory::Sset | CoeqCategory::Un => {
                let f = format::load_smap_from_path(&f)?;
                let g = format::load_smap_from_path(&g)?;
                let object = if cat == CoeqCategory::Sset {
                    colimit::coequalizer_sset(&f, &g)?.0
                } else {
                    colimit::coequalizer_un(&f, &g)?.0
                };
                emit(&out, &format::write_sset(&object)?)?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Product { cat: _, out, a, b } => {
            let a = load_osc(&a)?;
            let b = load_osc(&b)?;
            let (product, _, _) = osc::product_osc(&a, &b)?;
            emit(&out, &format::write_osc(&product)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology { max_dim, file } => {
            let space = load_sset(&file)?;
            let profile = homology::homology(&space, max_dim)?;
            print!("{profile}");
            println!("euler {}", homology::euler_characteristic(&space));
            for (n, group) in profile.groups.iter().enumerate() {
                let torsion: Vec<String> = group.torsion.iter().map(|t| t.to_string()).collect();
                if torsion.is_empty() {
                    println!("homology {n} {}", group.betti);
                } else {
                    println!("homology {n} {} {}", group.betti, torsion.join(","));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            property,
            family_max,
            budget,
            file,
        } => match property {
            Property::B => {
                let space = load_sset(&file)?;
                let holds = space.property_b();
                println!("B {holds}");
                Ok(if holds { ExitCode::SUCCESS } else { ExitCode::FAILURE })
            }
            Property::C => {
                let space = load_sset(&file)?;
                let holds = space
                    .property_c()
                    .map_err(|e| Failure::new("precondition", e))?;
                println!("C {holds}");
                Ok(if holds { ExitCode::SUCCESS } else { ExitCode::FAILURE })
            }
            Property::Loops => {
                let space = load_sset(&file)?;
                let loops = space.n_loops();
                if loops.is_empty() {
                    println!("none found");
                    Ok(ExitCode::SUCCESS)
                } else {
                    for l in &loops {
                        let names: Vec<String> = l.iter().map(|e| e.to_string()).collect();
                        println!("loop {}", names.join(" "));
                    }
                    Ok(ExitCode::FAILURE)
                }
            }
            Property::Rlp => {
                let space = load_sset(&file)?;
                let max = family_max.unwrap_or(space.dim() + 1);
                let mut all = true;
                for i in 0..=max {
                    let mut b = budget_from(budget);
                    let ok = reflectors::rlp_check(&space, &reflectors::family_f(i), &mut b)?;
                    println!("rlp {i} {ok}");
                    all &= ok;
                }
                Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
            }
            Property::FullInclusion => {
                let map = format::load_smap_from_path(Path::new(&file))?;
                let full = colimit::is_full_simplicial_inclusion(&map);
                println!("full-inclusion {full}");
                Ok(if full { ExitCode::SUCCESS } else { ExitCode::FAILURE })
            }
        },
        Command::HomCount { cat, budget, a, b } => {
            let mut bdg = budget_from(budget);
            let count = match cat {
                HomCategory::Sset => {
                    simplicial::hom::hom_count(&load_sset(&a)?, &load_sset(&b)?, &mut bdg)?
                }
                HomCategory::Osc => {
                    osc::hom_enumerate_osc(&load_osc(&a)?, &load_osc(&b)?, &mut bdg)?.len()
                }
            };
            println!("{count}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { format: fmt, out, file } => {
            let space = load_sset(&file)?;
            let text = match fmt {
                ExportFormat::Off => export::write_off(&space)?,
                ExportFormat::Dot => export::write_dot(&space),
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!(
                "error kind={} message=\"{}\"",
                failure.kind,
                failure.message.replace('\n', " ").replace('"', "'")
            );
            ExitCode::FAILURE
        }
    }
}
