use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use detinv::closure::{closure_report, ElemSet, FiniteRingTable, DEFAULT_BUDGET};
use detinv::consequences::sweep;
use detinv::expansion::{det_leibniz, invert_via_adjugate, ocdet_fwd, ocdet_left, ocdet_recursive};
use detinv::format::{parse_gens, MatrixFile};
use detinv::proof::{trace_2x2, verify_theorem, Side, DEFAULT_CAP};
use detinv::rings::{AnyRing, Localization};
use detinv::{Error, Ring};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(
    name = "detinv",
    version,
    about = "Exact checks of determinant invertibility over commutative subrings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Replay the argument symbolically for an n×n matrix.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        /// Largest n to attempt.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the 2×2 worked example step by step.
    Trace2x2 {
        #[arg(long)]
        json: bool,
    },
    /// Invert a matrix over a commutative ring as fractions adj(A)/det(A).
    Invert {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
        /// nonzero | powersof:<b> | units | unitsof:<ring-spec>
        #[arg(long)]
        denoms: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate an ordered column expansion.
    Ocdet {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, default_value_t = Variant::Fwd)]
        variant: Variant,
        #[arg(long)]
        json: bool,
    },
    /// Compare RT⁻¹, the division closure and the bounded rational closure in a finite ring.
    Closure {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = 2)]
        max_matrix: usize,
        /// Maximum number of candidate matrices to enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long)]
        json: bool,
    },
    /// Random checks over dual numbers mod m inside 2×2 matrices mod m.
    Consequences {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Right,
    Left,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Variant {
    Fwd,
    Left,
    Recursive,
}

const EXIT_PARSE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_NOT_INVERTIBLE: u8 = 3;
const EXIT_VERIFY: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => EXIT_BUDGET,
        Error::NotInvertibleOverLocalization => EXIT_NOT_INVERTIBLE,
        _ => EXIT_PARSE,
    }
}

fn read(path: &str) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn emit<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable report")
    );
}

/// Runs a command. `Ok(false)` means some identity came out false.
fn run(cmd: Command) -> Result<bool, Error> {
    match cmd {
        Command::Verify {
            n,
            side,
            max_n,
            json,
        } => {
            let sides: &[Side] = match side {
                SideArg::Right => &[Side::Right],
                SideArg::Left => &[Side::Left],
                SideArg::Both => &[Side::Right, Side::Left],
            };
            let reports = sides
                .iter()
                .map(|&s| verify_theorem(n, s, max_n))
                .collect::<Result<Vec<_>, _>>()?;
            if json {
                emit(&reports);
            } else {
                reports.iter().for_each(|r| println!("{r}"));
            }
            Ok(reports.iter().all(|r| r.equal))
        }
        Command::Trace2x2 { json } => {
            let trace = trace_2x2();
            if json {
                emit(&trace);
            } else {
                print!("{trace}");
            }
            Ok(trace.all_hold())
        }
        Command::Invert {
            ring,
            matrix,
            denoms,
            json,
        } => {
            let ring = AnyRing::parse(&ring)?;
            let a = MatrixFile::parse(&read(&matrix)?)?.over(&ring)?;
            let denoms = denoms.unwrap_or_else(|| {
                if matches!(ring, AnyRing::Int(_)) {
                    "nonzero"
                } else {
                    "units"
                }
                .into()
            });
            let loc = Localization::new(ring.clone(), ring.parse_denoms(&denoms)?);
            let inv = invert_via_adjugate(&loc, &a)?;
            let det = if a.n() == 0 {
                ring.one()
            } else {
                det_leibniz(&ring, &a)?
            };
            let rows: Vec<Vec<[Value; 2]>> = inv
                .rows()
                .map(|row| {
                    row.iter()
                        .map(|f| [ring.elem_to_json(f.num()), ring.elem_to_json(f.den())])
                        .collect()
                })
                .collect();
            if json {
                emit(&InvertOut {
                    ring: ring.descriptor(),
                    denoms,
                    det: ring.elem_to_json(&det),
                    inverse: rows,
                });
            } else {
                println!("det = {}", ring.render(&det));
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|[p, q]| format!("{p}/{q}")).collect();
                    println!("{}", cells.join("  "));
                }
            }
            Ok(true)
        }
        Command::Ocdet {
            ring,
            matrix,
            variant,
            json,
        } => {
            let ring = AnyRing::parse(&ring)?;
            let b = MatrixFile::parse(&read(&matrix)?)?.over(&ring)?;
            let value = match variant {
                Variant::Fwd => ocdet_fwd(&ring, &b),
                Variant::Left => ocdet_left(&ring, &b),
                Variant::Recursive => ocdet_recursive(&ring, &b),
            };
            if json {
                emit(&OcdetOut {
                    ring: ring.descriptor(),
                    variant,
                    value: ring.elem_to_json(&value),
                    is_one: ring.is_one(&value),
                });
            } else {
                println!("{}", ring.render(&value));
            }
            Ok(true)
        }
        Command::Closure {
            ring,
            gens,
            max_matrix,
            budget,
            json,
        } => {
            let ring = AnyRing::parse(&ring)?;
            let gens = parse_gens(&ring, &read(&gens)?)?;
            let table = FiniteRingTable::build(ring.clone())?;
            let gen_ix: ElemSet = gens
                .iter()
                .map(|g| table.index_of(g).expect("validated element"))
                .collect();
            let report = closure_report(&gen_ix, &table, max_matrix, budget)?;
            if json {
                emit(&report);
            } else {
                let show = |set: &[u32]| {
                    let items: Vec<String> =
                        set.iter().map(|&i| ring.render(table.element(i))).collect();
                    format!("{{{}}}", items.join(", "))
                };
                println!("ring   {}", report.ring);
                println!("R      {}", show(&report.r));
                println!("T      {}", show(&report.t));
                println!("RT^-1  {}", show(&report.rt_inv));
                println!("D      {}", show(&report.d));
                println!("Rat_{}  {}", report.rat.n, show(&report.rat.set));
                println!("regime {}", report.regime);
                let checks = serde_json::to_value(&report.checks).expect("plain struct");
                for (k, v) in checks.as_object().expect("struct") {
                    println!("  {k}: {v}");
                }
            }
            Ok(report.consistent())
        }
        Command::Consequences {
            modulus,
            n,
            samples,
            seed,
            json,
        } => {
            if n == 0 {
                return Err(Error::Parse("--n must be at least 1".into()));
            }
            let report = sweep(&[(n, modulus)], samples, seed)?;
            if json {
                emit(&report);
            } else {
                println!(
                    "n={n} m={modulus} seed={seed}: {} samples, {} invertible over S, {} violations",
                    report.samples, report.invertible, report.violations
                );
                for f in &report.failures {
                    println!(
                        "  sample {}: {:?} violates {}",
                        f.sample,
                        f.matrix,
                        f.violated.join("; ")
                    );
                }
            }
            Ok(report.passed())
        }
    }
}

#[derive(Serialize)]
struct InvertOut {
    ring: String,
    denoms: String,
    det: Value,
    /// Entries as `[numerator, denominator]`.
    inverse: Vec<Vec<[Value; 2]>>,
}

#[derive(Serialize)]
struct OcdetOut {
    ring: String,
    variant: Variant,
    value: Value,
    is_one: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(cli.command);
    match &result {
        Ok(true) => {}
        Ok(false) => eprintln!("verification failed"),
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(status(&result))
}

fn status(result: &Result<bool, Error>) -> u8 {
    match result {
        Ok(true) => 0,
        Ok(false) => EXIT_VERIFY,
        Err(e) => exit_code(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_table() {
        assert_eq!(status(&Ok(true)), 0);
        assert_eq!(status(&Ok(false)), 4);
        assert_eq!(status(&Err(Error::Parse("x".into()))), 1);
        assert_eq!(status(&Err(Error::RingSpec("x".into()))), 1);
        assert_eq!(
            status(&Err(Error::BudgetExceeded {
                required: 2,
                budget: 1
            })),
            2
        );
        assert_eq!(
            status(&Err(Error::CapExceeded {
                n: 5,
                cap: 4,
                raw_terms: 375_000
            })),
            2
        );
        assert_eq!(status(&Err(Error::NotInvertibleOverLocalization)), 3);
    }
}
