//! `ortho`: batch front end for ortho-core.
//!
//! Exit codes: 0 every requested check passed, 1 a validation or check failed,
//! 2 usage error, 3 budget exceeded, 4 malformed input, 5 undeclared name.

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ortho_core::catalog::{CatalogSpec, QuantifierSelector};
use ortho_core::completions::{
    embedding_g, embedding_h, goldblatt_frame, goldblatt_monadic_frame, maclaren_frame,
    maclaren_monadic_frame, verify_canonical, verify_macneille,
};
use ortho_core::dot::{frame_dot, lattice_dot};
use ortho_core::duality::{
    goldblatt_space, validate_monadic_orthospace, validate_orthospace, verify_adjunction, Families,
    OrthoSpace,
};
use ortho_core::format::{parse_document, render_frame, render_lattice, Document};
use ortho_core::report::{Report, ValidationReport};
use ortho_core::suite::run_result_suite;
use ortho_core::{Budget, Error};

const EXIT_FAILED: u8 = 1;
const EXIT_BUDGET: u8 = 3;
const EXIT_SYNTAX: u8 = 4;
const EXIT_UNDECLARED: u8 = 5;

#[derive(Parser)]
#[command(
    name = "ortho",
    version,
    about = "Finite ortholattices, orthoframes and orthospaces"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate every lattice and frame in a file (`-` for stdin).
    Validate { file: String },
    /// Generate a catalog lattice in text format, e.g. `gen mo 2 --quantifier collapse`.
    Gen {
        family: String,
        params: Vec<String>,
        /// identity, collapse or sub:<k>
        #[arg(long)]
        quantifier: Option<QuantifierSelector>,
    },
    /// Build the MacLaren or Goldblatt frame of the lattice in a file.
    Frame {
        file: String,
        #[command(flatten)]
        kind: FrameKind,
        /// Include the relation R built from the lattice's quantifier.
        #[arg(long)]
        monadic: bool,
    },
    /// Build and verify a completion of the lattice in a file.
    Complete {
        file: String,
        #[command(flatten)]
        kind: CompletionChoice,
    },
    /// Run the adjunction check or the suite of numbered results.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Render the first lattice or frame in a file as Graphviz DOT.
    Render {
        file: String,
        #[arg(long, required = true)]
        dot: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FrameKind {
    #[arg(long)]
    maclaren: bool,
    #[arg(long)]
    goldblatt: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CompletionChoice {
    #[arg(long)]
    macneille: bool,
    #[arg(long)]
    canonical: bool,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Verify F ⊣ C on a lattice and a space; a lattice file in the space
    /// position stands for its Goldblatt space.
    Adjunction {
        lattice: String,
        space: String,
        /// Branch budget for hom-set enumeration (default from ORTHO_BUDGET, else 4096).
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Run the pinned suite of numbered results.
    Paper {
        /// Record wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
}

/// What a subcommand prints and how it exits.
struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

impl Outcome {
    fn report(report: &Report) -> Self {
        Outcome {
            text: report.render_text(),
            json: serde_json::to_value(report).expect("report serializes"),
            code: if report.passed() { 0 } else { EXIT_FAILED },
        }
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::Structural(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn load(path: &str) -> Result<Document, Error> {
    parse_document(&read_input(path)?)
}

fn first_lattice(doc: Document, path: &str) -> Result<ortho_core::lattice::OrthoLattice, Error> {
    doc.lattices
        .into_iter()
        .next()
        .ok_or_else(|| Error::Structural(format!("{path} contains no lattice")))
}

fn validate(path: &str, budget: &Budget) -> Result<Outcome, Error> {
    let doc = load(path)?;
    let mut report = Report::new(format!("validate {path}"));
    for l in &doc.lattices {
        let kind = if l.is_monadic() {
            "monadic ortholattice"
        } else {
            "ortholattice"
        };
        report.pass(l.name(), format!("{kind}, {} elements", l.len()));
    }
    for f in &doc.frames {
        let frame = &f.frame;
        let kind = if frame.is_monadic() {
            "monadic orthoframe"
        } else {
            "orthoframe"
        };
        match &f.order {
            None => report.pass(frame.name(), format!("{kind}, {} points", frame.len())),
            Some(order) => {
                let v = if frame.is_monadic() {
                    validate_monadic_orthospace(frame, Some(order), budget.closed_sets)?
                } else {
                    validate_orthospace(frame, Some(order), budget.closed_sets)?
                };
                report.from_validation(frame.name(), &v);
            }
        }
    }
    for m in &doc.maps {
        report.pass(
            &m.name,
            format!("map {} → {}, {} pairs", m.source, m.target, m.sends.len()),
        );
    }
    if report.checks.is_empty() {
        return Err(Error::Structural(format!("{path} contains no blocks")));
    }
    Ok(Outcome::report(&report))
}

fn gen(family: &str, params: &[String], q: Option<QuantifierSelector>) -> Result<Outcome, Error> {
    let mut spec = CatalogSpec::from_parts(family, params)?;
    if let Some(q) = q {
        spec = spec.with_quantifier(q);
    }
    let l = spec.generate()?;
    let text = render_lattice(&l);
    Ok(Outcome {
        json: json!({
            "spec": spec.to_string(),
            "name": l.name(),
            "elements": l.len(),
            "monadic": l.is_monadic(),
            "text": text,
        }),
        text,
        code: 0,
    })
}

fn frame(path: &str, kind: &FrameKind, monadic: bool) -> Result<Outcome, Error> {
    let l = first_lattice(load(path)?, path)?;
    let f = match (kind.maclaren, monadic) {
        (true, false) => maclaren_frame(&l)?,
        (true, true) => maclaren_monadic_frame(&l)?,
        (false, false) => goldblatt_frame(&l)?,
        (false, true) => goldblatt_monadic_frame(&l)?,
    };
    let text = render_frame(&f, None);
    Ok(Outcome {
        json: json!({
            "name": f.name(),
            "points": f.len(),
            "perp_pairs": f.perp().pairs().filter(|&(x, y)| x < y).count(),
            "relation_pairs": f.relation().map(|r| r.pair_count()),
            "text": text,
        }),
        text,
        code: 0,
    })
}

fn complete(path: &str, kind: &CompletionChoice, budget: &Budget) -> Result<Outcome, Error> {
    let l = first_lattice(load(path)?, path)?;
    let (name, w, v): (&str, _, ValidationReport) = if kind.macneille {
        let w = embedding_g(&l, budget.closed_sets)?;
        let v = verify_macneille(&w);
        ("macneille-completion", w, v)
    } else {
        let w = embedding_h(&l, budget.closed_sets)?;
        let v = verify_canonical(&w, budget);
        ("canonical-completion", w, v)
    };
    let mut report = Report::new(format!("{name} of {}", l.name()));
    report.from_validation(name, &v);
    if let Some(c) = report.checks.last_mut() {
        c.detail = Some(format!(
            "{} points, {} closed sets, embedding {}",
            w.frame.len(),
            w.target.len(),
            if w.target.len() == l.len() {
                "onto"
            } else {
                "not onto"
            }
        ));
    }
    let images: Vec<String> = l
        .elements()
        .map(|a| format!("{} ↦ {}", l.label(a), w.image_label(a)))
        .collect();
    report.notes.push(format!("images: {}", images.join(", ")));
    report.notes.extend(v.notes.iter().cloned());
    Ok(Outcome::report(&report))
}

fn load_space(path: &str, budget: &Budget) -> Result<OrthoSpace, Error> {
    let doc = load(path)?;
    if let Some(f) = doc.frames.into_iter().next() {
        return OrthoSpace::new(f.frame, f.order, budget.closed_sets);
    }
    let l = first_lattice(
        Document {
            frames: Vec::new(),
            ..doc
        },
        path,
    )?;
    Ok(goldblatt_space(&l, budget.closed_sets)?.space)
}

fn check_adjunction(lattice: &str, space: &str, budget: &Budget) -> Result<Outcome, Error> {
    let l = first_lattice(load(lattice)?, lattice)?;
    let gs = goldblatt_space(&l, budget.closed_sets)?;
    let x = load_space(space, budget)?;
    let families = Families {
        spaces: vec![x.clone()],
        lattices: vec![gs.clone()],
    };
    let cert = verify_adjunction(&gs, &x, &families, budget)?;
    let mut report = Report::new(format!("adjunction on {} and {}", cert.lattice, cert.space));
    report.from_validation("adjunction", &cert.report);
    if let Some(c) = report.checks.last_mut() {
        c.detail = Some(format!(
            "|Hom(L, C(X))| = {}, |Hom(X, F(L))| = {}, naturality triples {} + {}",
            cert.lattice_homs.len(),
            cert.space_morphisms.len(),
            cert.naturality_space_triples,
            cert.naturality_lattice_triples
        ));
    }
    report.notes.extend(cert.report.notes.iter().cloned());
    let over_budget = cert.report.has_violation("budget");
    let mut outcome = Outcome::report(&report);
    outcome.json = json!({ "report": outcome.json, "certificate": cert });
    if over_budget {
        outcome.code = EXIT_BUDGET;
    }
    Ok(outcome)
}

fn check_paper(timing: bool, budget: &Budget) -> Result<Outcome, Error> {
    let start = Instant::now();
    let mut report = run_result_suite(budget)?;
    if timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(Outcome::report(&report))
}

fn render(path: &str) -> Result<Outcome, Error> {
    let doc = load(path)?;
    let dot = match (doc.lattices.first(), doc.frames.first()) {
        (Some(l), _) => lattice_dot(l),
        (None, Some(f)) => frame_dot(&f.frame),
        (None, None) => {
            return Err(Error::Structural(format!(
                "{path} contains no lattice or frame"
            )))
        }
    };
    Ok(Outcome {
        json: json!({ "dot": dot }),
        text: dot,
        code: 0,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let budget = Budget::from_env();
    match &cli.command {
        Command::Validate { file } => validate(file, &budget),
        Command::Gen {
            family,
            params,
            quantifier,
        } => gen(family, params, quantifier.clone()),
        Command::Frame {
            file,
            kind,
            monadic,
        } => frame(file, kind, *monadic),
        Command::Complete { file, kind } => complete(file, kind, &budget),
        Command::Check {
            what:
                CheckCommand::Adjunction {
                    lattice,
                    space,
                    budget: n,
                },
        } => {
            let b = match n {
                Some(n) => budget.with_hom_candidates(*n),
                None => budget,
            };
            check_adjunction(lattice, space, &b)
        }
        Command::Check {
            what: CheckCommand::Paper { timing },
        } => check_paper(*timing, &budget),
        Command::Render { file, .. } => render(file),
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let (kind, code) = match e {
        Error::Invalid(_) | Error::Degenerate(_) | Error::Inconsistency(_) => {
            ("invalid", EXIT_FAILED)
        }
        Error::Budget { .. } => ("budget", EXIT_BUDGET),
        Error::Syntax { .. } | Error::Structural(_) => ("syntax", EXIT_SYNTAX),
        Error::Undeclared { .. } => ("undeclared", EXIT_UNDECLARED),
    };
    let mut json = json!({ "error": kind, "message": e.to_string() });
    match e {
        Error::Syntax { line, column, .. } => {
            json["line"] = json!(line);
            json["column"] = json!(column);
        }
        Error::Undeclared { line, name, .. } => {
            json["line"] = json!(line);
            json["name"] = json!(name);
        }
        Error::Invalid(report) => json["report"] = json!(report),
        _ => {}
    }
    Outcome {
        text: format!("error: {e}\n"),
        json,
        code,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, failed) = match run(&cli) {
        Ok(o) => (o, false),
        Err(e) => (error_outcome(&e), true),
    };
    let body = if cli.json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&outcome.json).expect("json serializes")
        )
    } else {
        outcome.text
    };
    if failed && !cli.json {
        eprint!("{body}");
    } else {
        print!("{body}");
    }
    ExitCode::from(outcome.code)
}
