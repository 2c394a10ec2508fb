use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fibrantkit::core::fibrant::{check_cfo_axioms, check_cisinski_axioms, cocycle_category, functional_correspondences, homotopy_hom};
use fibrantkit::core::homotopy::{homology, nerve};
use fibrantkit::core::Limits;
use fibrantkit::generate::{self, Weq};
use fibrantkit::{load_fixture, run_suite, save_fixture, Fixture, HarnessError, SuiteConfig};

#[derive(Parser)]
#[command(name = "fibrantkit", version, about = "Finite categories of fibrant objects, checked exactly")]
struct Cli {
    /// Largest category any construction may build.
    #[arg(long, global = true, env = "FIBRANTKIT_MORPHISM_CAP", default_value_t = 20_000)]
    morphism_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a fixture and report its axiom checks.
    Validate { fixture: PathBuf },
    /// Simplex counts of the truncated nerve.
    Nerve {
        fixture: PathBuf,
        #[arg(long, env = "FIBRANTKIT_DIM", default_value_t = 3)]
        dim: usize,
    },
    /// Integral homology of the nerve in degrees below the truncation.
    Homology {
        fixture: PathBuf,
        #[arg(long, env = "FIBRANTKIT_DIM", default_value_t = 3)]
        dim: usize,
    },
    /// Cocycles, V-cocycles and functional correspondences from X to Y.
    Cocycles { fixture: PathBuf, x: String, y: String },
    /// The homotopy-category hom-set from X to Y.
    Hom { fixture: PathBuf, x: String, y: String },
    /// Run every check and print a report.
    Suite {
        fixture: PathBuf,
        #[arg(long, env = "FIBRANTKIT_DIM", default_value_t = 3)]
        dim: usize,
        #[arg(long, env = "FIBRANTKIT_KMAX", default_value_t = 1)]
        kmax: usize,
        #[arg(long, env = "FIBRANTKIT_LMAX", default_value_t = 1)]
        lmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        report: Format,
        #[arg(long, env = "FIBRANTKIT_THREADS")]
        threads: Option<usize>,
        /// Record wall time per check (reports are then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Write a generated fixture.
    Generate {
        kind: Kind,
        /// `n` for semilattice and lattice_isos; `k B` for bounded_groupoids.
        params: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    Semilattice,
    LatticeIsos,
    BoundedGroupoids,
    M3,
    TopRemoved,
    BrokenTwoOutOfThree,
    CorruptedProduct,
    BrokenV,
    NoTerminal,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                HarnessError::Core(_) | HarnessError::Closure(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    let limits = Limits::with_morphism_cap(cli.morphism_cap);
    match cli.command {
        Command::Validate { fixture } => {
            let f = load_fixture(&fixture)?;
            let c = f.category();
            println!("{}: {} objects, {} morphisms", f.name, c.object_count(), c.morphism_count());
            let cfo = check_cfo_axioms(&f.structure);
            let cisinski = check_cisinski_axioms(&f.structure.to_cisinski());
            for (system, report) in [("cfo", &cfo), ("cisinski", &cisinski)] {
                for o in &report.outcomes {
                    match &o.witness {
                        None => println!("{system}.{:<9} pass", o.axiom),
                        Some(w) => println!("{system}.{:<9} fail  {w}", o.axiom),
                    }
                }
            }
            Ok(exit(cfo.all_passed() && cisinski.all_passed()))
        }
        Command::Nerve { fixture, dim } => {
            let f = load_fixture(&fixture)?;
            let n = nerve(f.category(), dim, &limits)?;
            for level in 0..=dim {
                println!("{level}: {} simplices, {} nondegenerate", n.sset.size(level), n.sset.nondegenerate(level).count());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology { fixture, dim } => {
            let f = load_fixture(&fixture)?;
            let h = homology(&nerve(f.category(), dim, &limits)?.sset);
            for (n, g) in h.groups.iter().enumerate() {
                println!("H{n} = {g}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cocycles { fixture, x, y } => {
            let f = load_fixture(&fixture)?;
            let (xo, yo) = (f.object(&x)?, f.object(&y)?);
            let s = &f.structure;
            let all = cocycle_category(s, s.rel().weq_flags(), xo, yo, &limits)?;
            let v = cocycle_category(s, &s.trivial_fibrations(), xo, yo, &limits)?;
            let fc = functional_correspondences(s, xo, yo, &limits)?;
            println!("Cocyc({x},{y}): {} objects, {} morphisms", all.category.object_count(), all.category.morphism_count());
            println!("Cocyc_V({x},{y}): {} objects", v.category.object_count());
            println!("FCorr({x},{y}): {} objects", fc.category.object_count());
            print_cocycles(&f, all.cocycles());
            Ok(ExitCode::SUCCESS)
        }
        Command::Hom { fixture, x, y } => {
            let f = load_fixture(&fixture)?;
            let h = homotopy_hom(&f.structure, f.object(&x)?, f.object(&y)?, &limits)?;
            println!("[{x},{y}]: {} classes", h.len());
            print_cocycles(&f, h.representatives.iter().copied());
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite { fixture, dim, kmax, lmax, report, threads, timings } => {
            let f = load_fixture(&fixture)?;
            let config = SuiteConfig { dim, kmax, lmax, limits, threads, timings, ..SuiteConfig::default() };
            let r = run_suite(&f, &config);
            match report {
                Format::Json => print!("{}", r.to_json()),
                Format::Text => print!("{}", r.to_text()),
            }
            let clean = r.failures().next().is_none();
            Ok(exit(clean))
        }
        Command::Generate { kind, params, seed, output } => {
            let f = generated(kind, &params, seed, &limits)?;
            save_fixture(&f, &output)?;
            println!("wrote {} ({} objects, {} morphisms)", output.display(), f.category().object_count(), f.category().morphism_count());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_cocycles(f: &Fixture, cocycles: impl Iterator<Item = fibrantkit::core::fibrant::Cocycle>) {
    let c = f.category();
    for z in cocycles {
        println!("  {} <-{}- {} -{}-> {}", c.obj_name(z.domain(c)), c.mor_name(z.v), c.obj_name(z.apex), c.mor_name(z.f), c.obj_name(z.codomain(c)));
    }
}

fn generated(kind: Kind, params: &[usize], seed: Option<u64>, limits: &Limits) -> Result<Fixture, HarnessError> {
    let want = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(HarnessError::Parameters(format!("expected {n} parameters, got {}", params.len())))
        }
    };
    match kind {
        Kind::Semilattice => want(1).and_then(|_| generate::semilattice(params[0], seed)),
        Kind::LatticeIsos => want(1).and_then(|_| generate::lattice_isos(params[0], seed)),
        Kind::BoundedGroupoids => want(2).and_then(|_| generate::bounded_groupoids(params[0], params[1], limits)),
        Kind::TopRemoved => {
            want(1)?;
            let family = generate::meet_closed_family(params[0], seed)?;
            generate::top_removed(&family, Weq::All, "top_removed")?
                .ok_or_else(|| HarnessError::Parameters("removing the top leaves a single maximal element".into()))
        }
        Kind::M3 => want(0).map(|_| generate::semilattice_m3()),
        Kind::BrokenTwoOutOfThree => want(0).map(|_| generate::broken_two_out_of_three()),
        Kind::CorruptedProduct => want(0).map(|_| generate::corrupted_product()),
        Kind::BrokenV => want(0).map(|_| generate::broken_v()),
        Kind::NoTerminal => want(0).map(|_| generate::no_terminal()),
    }
}
