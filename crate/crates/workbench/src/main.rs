use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use hofib_core::algebra::FiniteGraph;
use hofib_core::bicat::{Direction, Obj};
use hofib_core::comma::{comma, fibre};
use hofib_core::monoidal::{monoidal_fibre, regularity_check, MonoidalFunctor};
use hofib_core::nerve::{geometric_nerve_with_limits, graph_adjunction, grothendieck_nerve_with_limits, validate_simplicial, NerveVariant};
use hofib_core::xmod::{beta, XmodMorphism, endo_groupoid, homotopy_pullback_xmod, mv_check, pi, xmod_nerve_with_limits};
use hofib_core::{instances, Error, Limits, Result, DEFAULT_MAX_CELLS};
use hofib_workbench::corpus::{generate_corpus, CorpusSpec, Fault};
use hofib_workbench::schema::{self, Document};
use hofib_workbench::suites::{run_suite, Options, Suite};
use hofib_workbench::{Check, Report};

#[derive(Parser)]
#[command(name = "hofib", version, about = "Check finite bicategories, crossed modules and their homotopy fibres")]
struct Cli {
    /// Print the report as report.v1 JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Ceiling on the cells enumerated in any one dimension.
    #[arg(long, global = true, env = "HOFIB_MAX_CELLS", default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and check its axioms.
    Validate { file: PathBuf },
    /// Build the comma bicategory of a lax and an oplax functor.
    Comma {
        #[arg(long)]
        lax: PathBuf,
        #[arg(long)]
        oplax: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Homotopy fibre of a lax functor over an object of its target.
    Fibre {
        #[arg(long)]
        lax: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Geometric nerve of a bicategory, truncated at `dim`.
    Nerve {
        file: PathBuf,
        #[arg(long, default_value = "normal-lax")]
        variant: String,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Grothendieck nerve of a bicategory, truncated at `dim`.
    Gnerve {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Adjunction between graphs and bicategories on the linear graph of length `dim`.
    Adjunction {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Crossed module tools.
    Xmod {
        #[command(subcommand)]
        verb: XmodVerb,
    },
    /// Monoidal category tools.
    Monoidal {
        #[command(subcommand)]
        verb: MonoidalVerb,
    },
    /// Run a check suite on the seeded corpus.
    Run {
        /// axioms, comma, nerve, appendix, xmod, mv, monoidal or all
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
        /// Plant a known fault in the corpus (`pentagon`).
        #[arg(long)]
        inject: Option<String>,
        /// Print the corpus instead of running.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum XmodVerb {
    Validate { file: PathBuf },
    /// Write the associated 2-groupoid as a bicategory.
    Beta {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Orders of π₀, π₁ and π₂ at every object.
    Pi { file: PathBuf },
    /// Cocycle nerve, truncated at `dim`.
    Nerve {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Endomorphism groupoid at an object.
    Endo {
        file: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Homotopy pullback of a built-in cospan.
    Pullback {
        #[arg(long)]
        cospan: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Mayer–Vietoris sequence of a built-in cospan at every basepoint.
    Mv {
        #[arg(long)]
        cospan: String,
    },
}

#[derive(Subcommand)]
enum MonoidalVerb {
    Validate { file: PathBuf },
    Regularity { file: PathBuf },
    /// Homotopy fibre of the identity against itself, as a bicategory.
    Fibre {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// Set once a document has gone to stdout; the report then goes to stderr.
static DOC_ON_STDOUT: AtomicBool = AtomicBool::new(false);

/// Writes `doc` to `out`, or to stdout when no path is given and the
/// report is not wanted as JSON there.
fn emit(doc: &Document, out: Option<&Path>, json: bool) -> Result<()> {
    match out {
        Some(p) => schema::save(p, doc),
        None if !json => {
            print!("{}", doc.render());
            DOC_ON_STDOUT.store(true, Ordering::SeqCst);
            Ok(())
        }
        None => Ok(()),
    }
}

fn single(command: &str, checks: Vec<Check>) -> Report {
    Report { suite: command.into(), seed: None, max_cells: 0, checks }
}

fn check(command: &str, name: &str, anchor: &str, subject: &str) -> Check {
    Check::new(command, name, anchor, subject)
}

fn obj_named(b: &hofib_core::bicat::FiniteBicategory, label: &str) -> Result<Obj> {
    b.find_obj(label).ok_or_else(|| Error::Invalid(format!("no object `{label}` in {}", b.name())))
}

fn cospan(name: &str) -> Result<(String, XmodMorphism, XmodMorphism)> {
    instances::xmod_cospans()
        .into_iter()
        .find(|c| c.0 == name)
        .ok_or_else(|| Error::Invalid(format!("unknown cospan `{name}`")))
}

/// Runs a command; `Ok(None)` means the command printed a document and has
/// nothing further to report.
fn execute(cli: &Cli) -> Result<Option<Report>> {
    let limits = Limits::new(cli.max_cells);
    let json = cli.json;
    match &cli.command {
        Command::Validate { file } => {
            let doc = schema::load(file)?;
            let c = check("validate", doc.schema(), "document parses and satisfies its axioms", &file.display().to_string());
            let c = match &doc {
                Document::Groupoid(g) => c.with_report(&g.category().validate()),
                Document::Bicategory(b) => c.with_report(&b.validate()),
                Document::Xmod(x) => c.with_report(&x.validate()),
                Document::Monoidal(m) => c.with_report(&m.validate()),
                Document::Sset(s) => c.with_report(&validate_simplicial(s)),
                Document::Lax(f) => c.with_report(&f.validate()),
                Document::Report(_) => c,
            };
            Ok(Some(single("validate", vec![c])))
        }
        Command::Comma { lax, oplax, out } => {
            let (f, g) = (schema::load_lax(lax)?, schema::load_lax(oplax)?);
            let cm = comma(&f, &g)?;
            let c = check("comma", "comma-axioms", "the comma of a lax and an oplax functor is a bicategory", cm.bicat.name()).with_report(&cm.bicat.validate());
            emit(&Document::Bicategory(cm.bicat.clone()), out.as_deref(), json)?;
            Ok(Some(single("comma", vec![c])))
        }
        Command::Fibre { lax, object, out } => {
            let f = schema::load_lax(lax)?;
            let b = obj_named(&f.target, object)?;
            let cm = fibre(&f, b)?;
            let c = check("fibre", "comma-axioms", "the homotopy fibre is a bicategory", cm.bicat.name()).with_report(&cm.bicat.validate());
            emit(&Document::Bicategory(cm.bicat.clone()), out.as_deref(), json)?;
            Ok(Some(single("fibre", vec![c])))
        }
        Command::Nerve { file, variant, dim, out } => {
            let b = schema::load_bicategory(file)?;
            let v: NerveVariant = variant.parse()?;
            let g = geometric_nerve_with_limits(&b, v, *dim, limits)?;
            let counts: Vec<String> = g.sset.counts().iter().map(usize::to_string).collect();
            let c = check("nerve", "simplicial-identities", "the geometric nerve satisfies the simplicial identities", &format!("{} {}", b.name(), v.as_str()))
                .with_report(&validate_simplicial(&g.sset))
                .detail(format!("simplices per dimension {}", counts.join("/")));
            if let Some(p) = out {
                emit(&Document::Sset(g.sset), Some(p), json)?;
            }
            Ok(Some(single("nerve", vec![c])))
        }
        Command::Gnerve { file, dim } => {
            let b = schema::load_bicategory(file)?;
            let g = grothendieck_nerve_with_limits(&b, *dim, limits)?;
            let n: Vec<String> = g.objects.iter().map(|x| x.len().to_string()).collect();
            let c = check("gnerve", "grothendieck-nerve", "Ner B is a normal pseudo-simplicial category", b.name())
                .with_report(&g.validate())
                .detail(format!("objects per dimension {}", n.join("/")));
            Ok(Some(single("gnerve", vec![c])))
        }
        Command::Adjunction { file, dim } => {
            let b = schema::load_bicategory(file)?;
            let r = graph_adjunction(&FiniteGraph::linear(*dim), &b)?;
            let c = check("adjunction", "graph-adjunction", "RJ = 1, νJ = 1 and Rν = 1 on a linear graph", b.name())
                .with_report(&r.report)
                .detail(format!("{} graph maps, {} lax functors, {} icons", r.graph_maps, r.lax_functors, r.icons));
            Ok(Some(single("adjunction", vec![c])))
        }
        Command::Xmod { verb } => xmod(verb, limits, json),
        Command::Monoidal { verb } => monoidal(verb, json),
        Command::Run { suite, seed, jobs, inject, list } => {
            let s = Suite::parse(suite).ok_or_else(|| Error::Invalid(format!("unknown suite `{suite}`")))?;
            let mut corpus = generate_corpus(&CorpusSpec::new(*seed))?;
            if let Some(f) = inject {
                let fault = Fault::parse(f).ok_or_else(|| Error::Invalid(format!("unknown fault `{f}`")))?;
                corpus.inject(fault)?;
            }
            if *list {
                print!("{}", corpus.summary());
                return Ok(None);
            }
            let opts = Options { max_cells: cli.max_cells, jobs: *jobs };
            Ok(Some(run_suite(s, &corpus, &opts)?))
        }
    }
}

fn xmod(verb: &XmodVerb, limits: Limits, json: bool) -> Result<Option<Report>> {
    let c = |name: &str, anchor: &str, subject: &str| check("xmod", name, anchor, subject);
    match verb {
        XmodVerb::Validate { file } => {
            let x = schema::load_xmod(file)?;
            Ok(Some(single("xmod", vec![c("crossed-module-axioms", "crossed module axioms", &x.name).with_report(&x.validate())])))
        }
        XmodVerb::Beta { file, out } => {
            let x = schema::load_xmod(file)?;
            let k = beta(&x)?;
            let b = k.bicategory().clone();
            let r = c("beta", "β of a crossed module is a 2-groupoid", b.name()).with_violations(b.name(), hofib_core::xmod::two_groupoid_violations(&b));
            emit(&Document::Bicategory(b), out.as_deref(), json)?;
            Ok(Some(single("xmod", vec![r])))
        }
        XmodVerb::Pi { file } => {
            let x = schema::load_xmod(file)?;
            let p = pi(&x)?;
            let base = x.base();
            let rows: Vec<String> = (0..base.object_count())
                .map(|a| {
                    let (p0, p1, p2) = p.orders(a);
                    format!("{}: π₀ {p0}, π₁ {p1}, π₂ {p2}", base.object_label(a))
                })
                .collect();
            Ok(Some(single("xmod", vec![c("homotopy-groups", "orders of the homotopy groups", &x.name).detail(rows.join("; "))])))
        }
        XmodVerb::Nerve { file, dim, out } => {
            let x = schema::load_xmod(file)?;
            let n = xmod_nerve_with_limits(&x, *dim, limits)?;
            let counts: Vec<String> = n.sset.counts().iter().map(usize::to_string).collect();
            let r = c("xmod-nerve", "the cocycle nerve satisfies the simplicial identities", &x.name)
                .with_report(&validate_simplicial(&n.sset))
                .detail(format!("simplices per dimension {}", counts.join("/")));
            if let Some(p) = out {
                emit(&Document::Sset(n.sset), Some(p), json)?;
            }
            Ok(Some(single("xmod", vec![r])))
        }
        XmodVerb::Endo { file, object } => {
            let x = schema::load_xmod(file)?;
            let a = x.base().find_object(object).ok_or_else(|| Error::Invalid(format!("no object `{object}` in {}", x.name)))?;
            let e = endo_groupoid(&x, a)?;
            let r = c("loop-groupoid", "π₀ of the endomorphism groupoid is π₁ and its automorphism group is π₂", &x.name)
                .expect(e.pi0_matches_pi1, || "π₀ ≠ π₁".into())
                .expect(e.aut_matches_pi2, || "Aut ≠ π₂".into())
                .detail(format!("{} objects, {} morphisms", e.groupoid.object_count(), e.groupoid.morphism_count()));
            Ok(Some(single("xmod", vec![r])))
        }
        XmodVerb::Pullback { cospan: name, out } => {
            let (_, f, f2) = cospan(name)?;
            let h = homotopy_pullback_xmod(&f, &f2)?;
            let r = c("homotopy-pullback", "the homotopy pullback is a crossed module", name).with_report(&h.xmod.validate());
            emit(&Document::Xmod(h.xmod.clone()), out.as_deref(), json)?;
            Ok(Some(single("xmod", vec![r])))
        }
        XmodVerb::Mv { cospan: name } => {
            let (_, f, f2) = cospan(name)?;
            let mut checks = Vec::new();
            for a in 0..f.source.base().object_count() {
                for a2 in 0..f2.source.base().object_count() {
                    if f.ob(a) != f2.ob(a2) {
                        continue;
                    }
                    let r = mv_check(&f, &f2, a, a2)?;
                    let mut k = c("mayer-vietoris", "the six-term sequence is exact", &format!("{name} at ({a},{a2})"));
                    let mut detail = Vec::new();
                    for j in &r.joints {
                        k = k.expect(j.exact, || format!("not exact at {}: image {} vs kernel {}", j.at, j.image, j.kernel));
                        detail.push(format!("{} {}/{}", j.at, j.image, j.kernel));
                    }
                    checks.push(k.detail(detail.join(", ")));
                }
            }
            Ok(Some(single("xmod", checks)))
        }
    }
}

fn monoidal(verb: &MonoidalVerb, json: bool) -> Result<Option<Report>> {
    let c = |name: &str, anchor: &str, subject: &str| check("monoidal", name, anchor, subject);
    match verb {
        MonoidalVerb::Validate { file } => {
            let m = schema::load_monoidal(file)?;
            Ok(Some(single("monoidal", vec![c("monoidal-axioms", "monoidal category coherence", &m.name).with_report(&m.validate())])))
        }
        MonoidalVerb::Regularity { file } => {
            let m = schema::load_monoidal(file)?;
            let r = regularity_check(&m);
            let mut k = c("regularity", "regularity and categorical group test", &m.name).detail(format!("regular {}, categorical group {}", r.regular, r.categorical_group));
            if let Some(w) = r.witnesses.first() {
                k.detail.push_str(&format!("; witness {w}"));
            }
            Ok(Some(single("monoidal", vec![k])))
        }
        MonoidalVerb::Fibre { file, out } => {
            let m = schema::load_monoidal(file)?;
            let id = MonoidalFunctor::identity(m.clone());
            let fib = monoidal_fibre(&id, &id)?;
            let cm = comma(&id.sigma(Direction::Lax)?, &id.sigma(Direction::Oplax)?)?;
            let k = c("fibre-equals-comma", "the homotopy fibre equals the comma of the deloopings", &m.name).expect(*fib.bicat == *cm.bicat, || "cell tables differ".into());
            emit(&Document::Bicategory(Arc::clone(&fib.bicat)), out.as_deref(), json)?;
            Ok(Some(single("monoidal", vec![k])))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            if cli.json {
                print!("{}", Document::Report(report.clone()).render());
            } else if DOC_ON_STDOUT.load(Ordering::SeqCst) {
                eprint!("{}", report.human());
            } else {
                print!("{}", report.human());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("hofib: {e}");
            ExitCode::from(2)
        }
    }
}
