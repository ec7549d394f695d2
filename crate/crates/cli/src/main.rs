use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use charpair::casestudy::{self, CaseStudy};
use charpair::cohomology::CohomologyRing;
use charpair::document::{canonical_json, PairDocument, WitnessDocument};
use charpair::equivalence::{are_equivalent, enumerate_pairs, verify_witness, Mode};
use charpair::random::random_twist;
use charpair::{shapes, CharacteristicPair, OrbitComplex, SquareKind};
use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Exit codes: 0 success, 1 negative result, 2 usage error, 3 invalid input.
const NEGATIVE: u8 = 1;
const INVALID_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "charpair", version, about = "Characteristic pairs of torus manifolds")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a pair file; exits 1 if the characteristic matrix is singular.
    Validate { file: PathBuf },
    /// f- and h-vectors, Betti numbers, Euler characteristic and facet census.
    Invariants { file: PathBuf },
    /// Decide whether two pairs are equivalent and print a witness.
    Equiv {
        file1: PathBuf,
        file2: PathBuf,
        /// Require the torus automorphism to be the identity.
        #[arg(long)]
        strict: bool,
    },
    /// List one pair per equivalence class over the complex in the file.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        bound: i64,
    },
    /// Reproduce a classification result.
    Casestudy {
        #[arg(value_parser = CaseStudy::NAMES)]
        name: String,
        /// k for s2xkcp2.
        #[arg(long)]
        k: Option<usize>,
        /// Largest family parameter for figure1.
        #[arg(long)]
        max_a: Option<i64>,
    },
    /// Check witness round trips on random twists of a pair.
    Laws {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Print a built-in pair or complex as a document.
    Example {
        #[arg(value_enum)]
        name: Example,
        /// Family parameter (a, p, n or k).
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        param: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Simplex,
    SquareA,
    SquareB,
    Lens,
    Prism,
    PolygonSum,
    #[value(name = "s2xkcp2")]
    S2xKcp2,
    Tetrahedron,
    Square,
    Cube,
    BigonPrism,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INVALID_INPUT)
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_document(path: &Path) -> Result<PairDocument> {
    PairDocument::from_json(&read_input(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_pair(path: &Path) -> Result<CharacteristicPair> {
    read_document(path)?
        .to_pair()
        .with_context(|| format!("loading {}", path.display()))
}

fn emit(format: Format, text: impl FnOnce() -> String, value: Value) {
    match format {
        Format::Text => print!("{}", text()),
        Format::Json => print!("{}", canonical_json(&value)),
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let format = cli.format;
    match &cli.command {
        Command::Validate { file } => {
            let pair = read_document(file)?.to_pair_unchecked()?;
            let report = pair.validate();
            let valid = report.is_valid();
            emit(
                format,
                || {
                    if valid {
                        "valid\n".into()
                    } else {
                        format!("invalid\n{}\n", report.to_string().trim_end())
                    }
                },
                json!({
                    "valid": valid,
                    "non_primitive": report.non_primitive,
                    "singular_vertices": report.singular_vertices,
                }),
            );
            Ok(if valid { 0 } else { NEGATIVE })
        }
        Command::Invariants { file } => {
            let pair = read_pair(file)?;
            let value = invariants(&pair);
            emit(format, || invariants_text(&value), value.clone());
            Ok(0)
        }
        Command::Equiv { file1, file2, strict } => {
            let (p1, p2) = (read_pair(file1)?, read_pair(file2)?);
            let mode = if *strict { Mode::Strict } else { Mode::Weak };
            match are_equivalent(&p1, &p2, mode)? {
                Some(w) => {
                    let doc = WitnessDocument::from_witness(&w);
                    emit(
                        format,
                        || format!("equivalent\n{}", doc.to_canonical_json()),
                        serde_json::to_value(&doc).expect("witness serializes"),
                    );
                    Ok(0)
                }
                None => {
                    emit(format, || "inequivalent\n".into(), json!({"equivalent": false}));
                    Ok(NEGATIVE)
                }
            }
        }
        Command::Enumerate { file, bound } => {
            let complex = read_document(file)?.to_complex()?;
            let reps = enumerate_pairs(&complex, *bound)?;
            let docs: Vec<PairDocument> = reps
                .iter()
                .map(|p| PairDocument::from_pair(p).canonicalized())
                .collect();
            emit(
                format,
                || {
                    let mut out = format!("{} classes (bound {bound})\n", reps.len());
                    for d in &docs {
                        out.push_str(&d.to_canonical_json());
                    }
                    out
                },
                json!({"bound": bound, "classes": reps.len(), "pairs": docs}),
            );
            Ok(0)
        }
        Command::Casestudy { name, k, max_a } => {
            let report = casestudy::run(CaseStudy::parse(name, *k, *max_a)?)?;
            let holds = report.holds();
            emit(
                format,
                || report.to_string(),
                json!({"case": report.case, "holds": holds, "claims": report.claims}),
            );
            Ok(if holds { 0 } else { NEGATIVE })
        }
        Command::Laws { file, seed, trials } => {
            let pair = read_pair(file)?;
            let failures = laws(&pair, *seed, *trials)?;
            emit(
                format,
                || {
                    let mut out = format!("{trials} trials (seed {seed}), {} failures\n", failures.len());
                    for f in &failures {
                        out.push_str(&format!("  {f}\n"));
                    }
                    out
                },
                json!({"seed": seed, "trials": trials, "failures": failures}),
            );
            Ok(if failures.is_empty() { 0 } else { NEGATIVE })
        }
        Command::Example { name, param } => {
            let doc = example(*name, *param)?;
            print!("{}", doc.to_canonical_json());
            Ok(0)
        }
    }
}

fn invariants(pair: &CharacteristicPair) -> Value {
    let c = pair.complex();
    let mut value = json!({
        "rank": pair.rank(),
        "facet_count": pair.facet_count(),
        "f_vector": c.f_vector(),
        "h_vector": c.h_vector().ok(),
    });
    let fields = value.as_object_mut().expect("object");
    match CohomologyRing::new(pair) {
        Ok(ring) => {
            fields.insert("betti".into(), json!(ring.betti()));
            fields.insert("euler_characteristic".into(), json!(ring.euler_char()));
            fields.insert("torsion".into(), json!(ring.has_torsion()));
            fields.insert(
                "generated_in_degree_two".into(),
                json!(ring.generated_in_degree_two().ok()),
            );
            // A census is meaningful for k + 4 facets, k >= 2.
            if pair.rank() == 3 && pair.facet_count() >= 6 {
                let k = pair.facet_count() - 4;
                let census = match ring.facet_type_census(k) {
                    Ok(census) => json!({
                        "k": k,
                        "d4": census.counts.d4,
                        "dk2": census.counts.dk2,
                        "dk3": census.counts.dk3,
                        "facets": census.facets.iter().map(|r| json!({
                            "facet": r.facet,
                            "vertices": r.vertex_count,
                            "kernel_rank": r.kernel_rank,
                        })).collect::<Vec<_>>(),
                    }),
                    Err(e) => json!({"k": k, "error": e.to_string()}),
                };
                fields.insert("facet_census".into(), census);
            }
        }
        Err(e) => {
            fields.insert("cohomology".into(), json!(e.to_string()));
        }
    }
    value
}

fn invariants_text(value: &Value) -> String {
    let obj = value.as_object().expect("object");
    let mut keys: Vec<&String> = obj.keys().collect();
    keys.sort();
    keys.iter().map(|k| format!("{k}: {}\n", obj[k.as_str()])).collect()
}

/// Twists the pair at random and checks that witnesses are found, verify,
/// invert and compose.
fn laws(pair: &CharacteristicPair, seed: u64, trials: usize) -> Result<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut previous: Option<(CharacteristicPair, charpair::EquivalenceWitness)> = None;
    for t in 0..trials {
        let twisted = random_twist(pair, &mut rng)?;
        let Some(w) = are_equivalent(pair, &twisted, Mode::Weak)? else {
            failures.push(format!("trial {t}: no witness for a twisted copy"));
            continue;
        };
        let inverse = w.inverse()?;
        if !verify_witness(&twisted, pair, &inverse) {
            failures.push(format!("trial {t}: inverse witness rejected"));
        }
        if let Some((prev, prev_w)) = &previous {
            // prev -> pair -> twisted
            let composed = prev_w.inverse()?.compose(&w)?;
            if !verify_witness(prev, &twisted, &composed) {
                failures.push(format!("trial {t}: composed witness rejected"));
            }
        }
        previous = Some((twisted, w));
    }
    Ok(failures)
}

fn example(name: Example, param: i64) -> Result<PairDocument> {
    let count = |what: &str| usize::try_from(param).with_context(|| format!("{what} must be nonnegative"));
    let complex = |c: OrbitComplex| PairDocument::from_complex(&c);
    let pair = |p: CharacteristicPair| PairDocument::from_pair(&p);
    Ok(match name {
        Example::Simplex => pair(CharacteristicPair::simplex(count("n")?.max(1))),
        Example::SquareA => pair(CharacteristicPair::square(SquareKind::A(param))),
        Example::SquareB => pair(CharacteristicPair::square(SquareKind::B)),
        Example::Lens => pair(CharacteristicPair::lens_family(param)),
        Example::Prism => pair(CharacteristicPair::prism_family(param)),
        Example::PolygonSum => pair(CharacteristicPair::polygon_sum(count("k")?.max(1))),
        Example::S2xKcp2 => pair(CharacteristicPair::polygon_sum(count("k")?.max(1)).product_with_s2()?),
        Example::Tetrahedron => complex(shapes::tetrahedron()),
        Example::Square => complex(shapes::square()),
        Example::Cube => complex(shapes::cube()),
        Example::BigonPrism => complex(shapes::bigon_prism()),
    })
}
