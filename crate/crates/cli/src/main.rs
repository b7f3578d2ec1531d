//! `xconn`: constructions, verification suites and table exports for the
//! cone and cross-connection semigroups of finite transformation semigroups.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 when the request
//! cannot be parsed or violates a precondition.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use xconn::cones::{build_tp, build_tpi, ConeP, ConePi};
use xconn::cross_connection::{
    build_s_gamma, enumerate_cross_connections, verify_chi, verify_cross_connection, verify_s_gamma_iso,
    PermCrossConnection,
};
use xconn::foundation::{GroundSet, Permutation, SetPartition};
use xconn::ideals::exclude_minimal_partitions;
use xconn::normal_dual::{functor_p, verify_dual_isomorphisms, HFunctorP};
use xconn::partition_category::{normal_factorize_pi, BlockMapMorphism};
use xconn::powerset::{normal_factorize_p, SetFunction};
use xconn::report::VerificationReport;
use xconn::semigroup::{sing_table, verify_anti_iso, verify_iso, CayleyTable};
use xconn::suite::{run_row, run_suite, SuiteRow};
use xconn::Error;

#[derive(Parser)]
#[command(
    name = "xconn",
    version,
    about = "Cones, normal duals and cross-connections of Sing(X)"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Size {
    /// Size of the ground set X = {1..n}.
    #[arg(short = 'n')]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Export {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Category {
    #[value(name = "P")]
    P,
    #[value(name = "Pi")]
    Pi,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConeTable {
    #[value(name = "TP")]
    Tp,
    #[value(name = "TPi")]
    Tpi,
}

#[derive(Subcommand)]
enum Verb {
    /// List or export the semigroup Sing(X).
    Sing {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        export: Option<Export>,
    },
    /// Normal factorization of one morphism.
    Factorize {
        #[arg(long = "cat")]
        cat: Category,
        #[command(flatten)]
        size: Size,
        /// `f: {1,2,3}->{1,2} [1,1,2]` or `eta: 12|3 -> 13|2 [1,0]` (0-based block indices).
        #[arg(long)]
        morphism: String,
    },
    /// Build a cone semigroup and check it against Sing(X).
    Cones {
        #[arg(long)]
        build: ConeTable,
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        export: Option<Export>,
    },
    /// The normal duals of both categories.
    Dual {
        /// Verify the duality functors instead of listing dual objects.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        size: Size,
    },
    /// Cross-connections induced by permutations.
    Crossconn {
        #[command(subcommand)]
        action: CrossAction,
    },
    /// Total ideals and their right reductive subsemigroups.
    Ideal {
        #[command(subcommand)]
        action: IdealAction,
    },
    /// Run the verification suite.
    Verify {
        /// `all`, or a single row label.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CrossAction {
    /// Build the cross-connection semigroup for one permutation.
    Build {
        /// Permutation as an image list, e.g. `2,3,1`.
        #[arg(long)]
        theta: String,
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        export: Option<Export>,
    },
    /// Search for every cross-connection.
    Enumerate {
        #[command(flatten)]
        size: Size,
    },
    /// Verify cross-connection structure.
    Verify {
        /// Every permutation of X.
        #[arg(long, conflicts_with = "theta", required_unless_present = "theta")]
        all: bool,
        #[arg(long)]
        theta: Option<String>,
        #[command(flatten)]
        size: Size,
    },
}

#[derive(Subcommand)]
enum IdealAction {
    /// Exclude minimal partitions and build the resulting subsemigroup.
    Build {
        #[command(flatten)]
        size: Size,
        /// Minimal partition to exclude; repeatable.
        #[arg(long)]
        exclude: Vec<String>,
    },
}

enum Failure {
    Request(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Request(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Request(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn ground(size: &Size) -> Result<GroundSet, Error> {
    GroundSet::new(size.n)
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn print_report(report: &VerificationReport) -> Outcome {
    println!("{report}");
    verdict(report.passed())
}

fn export<T: std::fmt::Display>(table: &CayleyTable<T>, format: Export) -> Result<(), Error> {
    match format {
        Export::Json => println!("{}", table.to_json()),
        Export::Csv => print!("{}", table.to_csv()?),
    }
    Ok(())
}

fn run(verb: Verb) -> Outcome {
    match verb {
        Verb::Sing { size, export: fmt } => {
            let table = sing_table(ground(&size)?)?;
            match fmt {
                Some(f) => export(&table, f)?,
                None => {
                    println!("Sing({}): {} elements", size.n, table.order());
                    table.roster().iter().for_each(|a| println!("{a}"));
                }
            }
            Ok(())
        }
        Verb::Factorize { cat, size, morphism } => factorize(cat, ground(&size)?, &morphism),
        Verb::Cones {
            build,
            size,
            export: fmt,
        } => cones(build, ground(&size)?, fmt),
        Verb::Dual { verify, size } => {
            let g = ground(&size)?;
            if verify {
                return print_report(&verify_dual_isomorphisms(g)?);
            }
            for p in g.partitions() {
                let h = HFunctorP::new(p);
                println!("{h} <-> {}", functor_p(&h));
            }
            Ok(())
        }
        Verb::Crossconn { action } => crossconn(action),
        Verb::Ideal {
            action: IdealAction::Build { size, exclude },
        } => {
            let g = ground(&size)?;
            let excluded = exclude
                .iter()
                .map(|s| SetPartition::parse_in(g, s))
                .collect::<Result<Vec<_>, _>>()?;
            let res = exclude_minimal_partitions(g, &excluded)?;
            let summary = res.summary();
            println!("{}", serde_json::to_string(&summary).expect("plain struct"));
            verdict(summary.regular && summary.right_reductive)
        }
        Verb::Verify { suite, size, json } => {
            let g = ground(&size)?;
            let rows: Vec<SuiteRow> = if suite == "all" {
                run_suite(g)?
            } else {
                vec![run_row(&suite, g)?]
            };
            let ok = rows.iter().all(SuiteRow::passed);
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).expect("plain struct"));
            } else {
                println!("verification suite, n = {}", size.n);
                rows.iter().for_each(|r| println!("{r}"));
                println!("{}", if ok { "ALL PASS" } else { "FAILURES" });
            }
            verdict(ok)
        }
    }
}

fn factorize(cat: Category, g: GroundSet, literal: &str) -> Outcome {
    match cat {
        Category::P => {
            let f = SetFunction::parse(g, literal)?;
            let nf = normal_factorize_p(&f);
            println!("q = {}", nf.q);
            println!("u = {}", nf.u);
            println!("j = {}", nf.j);
            let ok = nf.recompose() == f;
            println!("recomposes: {ok}");
            verdict(ok)
        }
        Category::Pi => {
            let m = BlockMapMorphism::parse(literal)?;
            if m.dom().ground() != g {
                return Err(Error::GroundMismatch(m.dom().ground().size(), g.size()).into());
            }
            let nf = normal_factorize_pi(&m);
            println!("sigma = {}", nf.sigma);
            println!("gamma = {}", nf.gamma);
            println!("zeta* = {}", nf.zeta_star);
            println!("u* = {}", nf.u_star);
            println!("nu* = {}", nf.nu_star);
            let ok = nf.recompose() == m;
            println!("recomposes: {ok}");
            verdict(ok)
        }
    }
}

fn cones(build: ConeTable, g: GroundSet, fmt: Option<Export>) -> Outcome {
    let sing = sing_table(g)?;
    let (name, order, assoc, ok) = match build {
        ConeTable::Tp => {
            let t = build_tp(g)?;
            if let Some(f) = fmt {
                export(&t, f)?;
            }
            let ok = verify_iso(&sing, &t, |a| ConeP::new(*a).expect("singular"))?;
            ("TP", t.order(), t.check_associative()?, ok)
        }
        ConeTable::Tpi => {
            let t = build_tpi(g)?;
            if let Some(f) = fmt {
                export(&t, f)?;
            }
            let ok = verify_anti_iso(&sing, &t, |a| ConePi::new(*a).expect("singular"))?;
            ("TPi", t.order(), t.check_associative()?, ok)
        }
    };
    if fmt.is_none() {
        let relation = if matches!(build, ConeTable::Tp) {
            "isomorphic"
        } else {
            "anti-isomorphic"
        };
        println!("{name}({}): {order} cones", g.size());
        println!("associative: {assoc}");
        println!("{relation} to Sing({}): {ok}", g.size());
    }
    verdict(assoc && ok)
}

fn crossconn(action: CrossAction) -> Outcome {
    match action {
        CrossAction::Build {
            theta,
            size,
            export: fmt,
        } => {
            let g = ground(&size)?;
            let cxn = connection(g, &theta)?;
            let s = build_s_gamma(&cxn)?;
            match fmt {
                Some(f) => {
                    export(&s.table, f)?;
                    Ok(())
                }
                None => {
                    println!("S-Gamma for theta={}: {} linked pairs", s.theta, s.table.order());
                    print_report(&verify_s_gamma_iso(&cxn)?)
                }
            }
        }
        CrossAction::Enumerate { size } => {
            let found = enumerate_cross_connections(ground(&size)?)?;
            println!("{} cross-connections", found.len());
            found.iter().for_each(|th| println!("{th}"));
            Ok(())
        }
        CrossAction::Verify { all, theta, size } => {
            let g = ground(&size)?;
            let thetas: Vec<Permutation> = if all {
                g.permutations()
            } else {
                vec![connection(g, theta.as_deref().unwrap_or_default())?.theta()]
            };
            let mut ok = true;
            for th in thetas {
                let cxn = PermCrossConnection::new(th);
                let mut report = verify_cross_connection(&cxn)?;
                report.absorb(verify_chi(&cxn)?);
                println!("{report}");
                ok &= report.passed();
            }
            verdict(ok)
        }
    }
}

fn connection(g: GroundSet, theta: &str) -> Result<PermCrossConnection, Error> {
    let th = Permutation::parse(theta)?;
    if th.ground() != g {
        return Err(Error::GroundMismatch(th.ground().size(), g.size()));
    }
    Ok(PermCrossConnection::new(th))
}
