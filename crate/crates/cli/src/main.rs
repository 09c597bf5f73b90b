use clap::{Args, Parser, Subcommand, ValueEnum};
use hardpart::genfun::{self, build_tm, build_tpm, g_series, rational_fit, row_mask, stripped_charpoly};
use hardpart::morse::{check_acyclic, evaluate_tree, tree_generators, validate_tree, TreeFamily};
use hardpart::transfer::{
    build_transfer_hex, build_transfer_square_capped, build_transfer_square_torus, char_poly, cyclotomic_test, HexVariant,
};
use hardpart::{alternating_sum, Family};
use hardpart_cli::acceptance;
use hardpart_cli::compute::{homology_cell, z_cell, Budgets, CellStatus};
use hardpart_cli::ranges::{parse_range, parse_rows};
use hardpart_cli::render::{h_cell_text, json_lines, tsv_grid};
use hardpart_cli::reproduce::{reproduce_h, reproduce_z};
use hardpart_cli::tables::{h_table, z_table};
use hardpart_cli::verify::{self, Suite};
use rayon::prelude::*;
use serde::Serialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hardpart", version, about = "Hard particles on grid graphs at activity -1")]
struct Cli {
    #[command(flatten)]
    budgets: BudgetArgs,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Tsv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest graph (occupiable vertices) checked by plain enumeration.
    #[arg(long, global = true, default_value_t = 26)]
    budget_brute: usize,
    /// Largest complex that gets materialized, in faces.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    budget_faces: u64,
    /// Largest transfer matrix dimension.
    #[arg(long, global = true, default_value_t = 5000)]
    budget_transfer: usize,
    /// Longest generating-function series.
    #[arg(long, global = true, default_value_t = 40)]
    budget_series: usize,
}

impl BudgetArgs {
    fn budgets(&self) -> Result<Budgets, String> {
        if self.budget_brute == 0 || self.budget_faces == 0 || self.budget_transfer == 0 || self.budget_series == 0 {
            return Err("budgets must be positive".into());
        }
        Ok(Budgets { brute_vertices: self.budget_brute, faces: self.budget_faces, transfer_dim: self.budget_transfer, series: self.budget_series })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    SquareCyl,
    SquareTorus,
    HexCyl,
    HexTorus,
    /// Gaussian matrix on all boundary subsets of the parallelogram strip.
    Tm,
    /// Its restriction to independent boundary subsets.
    Tpm,
}

#[derive(Subcommand)]
enum Command {
    /// Alternating sums Z over a grid of parameters.
    Partition {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// Reduced homology of the independence complex.
    Homology {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// Characteristic polynomial of a transfer matrix with its cyclotomic factors.
    Charpoly {
        #[arg(long, value_enum)]
        family: MatrixKind,
        #[arg(long)]
        m: String,
    },
    /// Generated matching trees: validity, acyclicity, critical cells.
    Morse {
        #[arg(long)]
        family: TreeFamily,
        #[arg(long)]
        m: String,
    },
    /// Series of G_{A,B}(t) on the strip with `m` rows, and its rational form.
    Genfun {
        #[arg(long)]
        m: usize,
        /// Rows of A, comma separated; `-` for the empty set.
        #[arg(long, default_value = "-")]
        a: String,
        /// Rows of B, comma separated; `-` for the empty set.
        #[arg(long, default_value = "-")]
        b: String,
        /// Highest power of t; defaults to the series budget.
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long, default_value_t = 14)]
        max_num: usize,
        #[arg(long, default_value_t = 18)]
        max_den: usize,
    },
    /// Run a named sweep, or `acceptance` for every acceptance criterion.
    Verify { suite: String },
    /// Recompute a reference table and compare it cell by cell.
    Reproduce { table: u8 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit<T: Serialize>(format: Format, items: &[T], tsv: impl FnOnce() -> String) {
    match format {
        Format::Json => print!("{}", json_lines(items)),
        Format::Tsv => print!("{}", tsv()),
    }
}

/// Ok(false) when a check failed.
fn run(cli: Cli) -> Result<bool, String> {
    let b = cli.budgets.budgets()?;
    let f = cli.format;
    match cli.command {
        Command::Partition { family, m, n } => {
            let (ms, ns) = (parse_range(&m)?, parse_range(&n)?);
            let jobs: Vec<(usize, usize)> = ns.iter().flat_map(|&n| ms.iter().map(move |&m| (m, n))).collect();
            let cells: Vec<_> = jobs.par_iter().map(|&(m, n)| z_cell(family, m, n, &b)).collect();
            emit(f, &cells, || {
                tsv_grid(&ms, &ns, |m, n| {
                    cells.iter().find(|c| c.m == m && c.n == n).map(|c| match (&c.status, c.z) {
                        (CellStatus::Ok, Some(z)) => z.to_string(),
                        (CellStatus::OutOfBudget, _) => "oob".into(),
                        _ => "err".into(),
                    })
                })
            });
            for c in cells.iter().filter(|c| c.status != CellStatus::Ok) {
                eprintln!("m={} n={}: {:?}", c.m, c.n, c.status);
            }
            Ok(cells.iter().all(|c| c.status == CellStatus::Ok))
        }
        Command::Homology { family, m, n } => {
            let (ms, ns) = (parse_range(&m)?, parse_range(&n)?);
            let jobs: Vec<(usize, usize)> = ns.iter().flat_map(|&n| ms.iter().map(move |&m| (m, n))).collect();
            let cells: Vec<_> = jobs.par_iter().map(|&(m, n)| homology_cell(family, m, n, &b)).collect();
            emit(f, &cells, || tsv_grid(&ms, &ns, |m, n| cells.iter().find(|c| c.m == m && c.n == n).map(h_cell_text)));
            for c in cells.iter().filter(|c| !matches!(c.status, CellStatus::Ok | CellStatus::OutOfBudget)) {
                eprintln!("m={} n={}: {:?}", c.m, c.n, c.status);
            }
            Ok(cells.iter().all(|c| matches!(c.status, CellStatus::Ok | CellStatus::OutOfBudget)))
        }
        Command::Charpoly { family, m } => {
            let reports = parse_range(&m)?.into_iter().map(|m| charpoly(family, m, &b)).collect::<Result<Vec<_>, _>>()?;
            emit(f, &reports, || {
                reports.iter().map(|r| format!("{}\t{}\t{}\t{}\n", r.m, r.dim, r.stripped.join(" "), r.cyclotomic.as_deref().unwrap_or("-"))).collect()
            });
            Ok(true)
        }
        Command::Morse { family, m } => {
            let reports: Vec<MorseRow> = parse_range(&m)?.par_iter().map(|&m| morse_row(family, m, b.faces)).collect();
            emit(f, &reports, || {
                let mut s = String::from("m\tcritical\tpredicted\tstatus\n");
                for r in &reports {
                    s.push_str(&format!("{}\t{:?}\t{:?}\t{}\n", r.m, r.critical, r.predicted, r.status));
                }
                s
            });
            Ok(reports.iter().all(|r| r.status == "ok"))
        }
        Command::Genfun { m, a, b: bb, terms, max_num, max_den } => {
            let terms = terms.unwrap_or(b.series);
            if terms > b.series {
                return Err(format!("{terms} terms exceed the series budget of {}", b.series));
            }
            let (am, bm) = (row_mask(&parse_rows(&a)?, m).map_err(|e| e.to_string())?, row_mask(&parse_rows(&bb)?, m).map_err(|e| e.to_string())?);
            let series = g_series(m, am, bm, terms).map_err(|e| e.to_string())?;
            let fit = match rational_fit(&series, max_num, max_den) {
                Ok(fit) => fit,
                Err(e @ genfun::GenfunError::Underdetermined { .. }) => {
                    eprintln!("no rational fit: {e}");
                    None
                }
                Err(e) => return Err(e.to_string()),
            };
            let out = GenfunReport {
                m,
                a: genfun::mask_rows(am),
                b: genfun::mask_rows(bm),
                series: series.iter().map(ToString::to_string).collect(),
                rational: fit.as_ref().map(|r| r.to_string()),
                factored: fit.as_ref().and_then(|r| r.factored()),
            };
            emit(f, std::slice::from_ref(&out), || {
                format!("series\t{}\nrational\t{}\nfactored\t{}\n", out.series.join(" "), out.rational.as_deref().unwrap_or("-"), out.factored.as_deref().unwrap_or("-"))
            });
            Ok(true)
        }
        Command::Verify { suite } => {
            if suite == "acceptance" {
                let outcomes = acceptance::all();
                emit(f, &outcomes, || outcomes.iter().map(|o| o.line() + "\n").collect());
                return Ok(outcomes.iter().all(|o| o.pass));
            }
            let suite: Suite = suite.parse()?;
            let r = verify::run(suite, &b);
            emit(f, std::slice::from_ref(&r), || {
                let mut s = format!("{} {}: {} checks\n", suite.name(), if r.passed() { "PASS" } else { "FAIL" }, r.checked);
                for x in &r.notes {
                    s.push_str(&format!("  note: {x}\n"));
                }
                for x in &r.failures {
                    s.push_str(&format!("  fail: {x}\n"));
                }
                s
            });
            Ok(r.passed())
        }
        Command::Reproduce { table } => {
            if let Some(t) = z_table(table) {
                let r = reproduce_z(&t, &b, 12);
                emit(f, &r.cells, || r.tsv.clone());
                for (m, n, e, g) in &r.mismatches {
                    eprintln!("m={m} n={n}: expected {e}, got {g:?}");
                }
                Ok(r.passed())
            } else if let Some(t) = h_table(table) {
                let r = reproduce_h(&t, &b, |_, _| true);
                emit(f, &r.cells, || r.tsv.clone());
                for (m, n, e, g) in &r.mismatches {
                    eprintln!("m={m} n={n}: expected {e}, got {g}");
                }
                if r.out_of_budget > 0 {
                    eprintln!("{} cells out of budget", r.out_of_budget);
                }
                Ok(r.passed())
            } else {
                Err(format!("no reference table {table}; available: 1, 2, 3, 5, 6, 7, 8, 9"))
            }
        }
    }
}

#[derive(Serialize)]
struct CharpolyReport {
    m: usize,
    dim: usize,
    /// Ascending coefficients of det(tI - T).
    coeffs: Vec<String>,
    /// Ascending coefficients of det(I - tT).
    stripped: Vec<String>,
    cyclotomic: Option<String>,
}

fn charpoly(kind: MatrixKind, m: usize, b: &Budgets) -> Result<CharpolyReport, String> {
    let e = |x: &dyn std::fmt::Display| x.to_string();
    let gauss = |t: hardpart::Matrix<hardpart::GaussInt>| {
        let stripped = stripped_charpoly(&t);
        let cyc = hardpart::genfun::RationalFunction::from_gauss(&hardpart::Poly::one(), &stripped)
            .factored()
            .map(|s| s.trim_start_matches("(1) / [").trim_end_matches(']').to_string());
        CharpolyReport {
            m,
            dim: t.rows(),
            coeffs: t.charpoly().coeffs().iter().map(ToString::to_string).collect(),
            stripped: stripped.coeffs().iter().map(ToString::to_string).collect(),
            cyclotomic: cyc,
        }
    };
    let t = match kind {
        MatrixKind::Tm => return build_tm(m).map(gauss).map_err(|x| e(&x)),
        MatrixKind::Tpm => return build_tpm(m).map(gauss).map_err(|x| e(&x)),
        MatrixKind::SquareCyl => build_transfer_square_capped(m, b.transfer_dim),
        MatrixKind::SquareTorus => build_transfer_square_torus(m, b.transfer_dim),
        MatrixKind::HexCyl => build_transfer_hex(m, HexVariant::Cyl, b.transfer_dim),
        MatrixKind::HexTorus => build_transfer_hex(m, HexVariant::Torus, b.transfer_dim),
    }
    .map_err(|x| e(&x))?;
    let p = char_poly(&t);
    let deg = p.degree().unwrap_or(0);
    let rep = cyclotomic_test(&p, 2 * deg * deg + 2);
    let stripped = p.strip_t().reversed();
    let cyclotomic = rep.is_cyclotomic.then(|| rep.factors.iter().map(|&(d, k)| if k == 1 { format!("Phi_{d}") } else { format!("Phi_{d}^{k}") }).collect::<Vec<_>>().join(" "));
    Ok(CharpolyReport {
        m,
        dim: t.dim(),
        coeffs: p.coeffs().iter().map(ToString::to_string).collect(),
        stripped: stripped.coeffs().iter().map(ToString::to_string).collect(),
        cyclotomic,
    })
}

#[derive(Serialize)]
struct MorseRow {
    m: usize,
    critical: std::collections::BTreeMap<isize, u64>,
    predicted: (u64, isize),
    status: String,
}

fn morse_row(family: TreeFamily, m: usize, faces: u64) -> MorseRow {
    let predicted = family.predicted_critical(m);
    let mut row = MorseRow { m, critical: Default::default(), predicted, status: "ok".into() };
    let res = (|| -> Result<(), String> {
        let gen = tree_generators(family, m).map_err(|e| e.to_string())?;
        validate_tree(&gen.graph, &gen.tree).map_err(|e| e.to_string())?;
        let ev = evaluate_tree(&gen.graph, &gen.tree, faces).map_err(|e| e.to_string())?;
        check_acyclic(&ev.complex, &ev.matching).map_err(|e| e.to_string())?;
        row.critical = ev.critical_by_dim();
        let euler: i128 = row.critical.iter().map(|(&p, &u)| if p.rem_euclid(2) == 0 { u as i128 } else { -(u as i128) }).sum();
        let z = alternating_sum(&gen.graph).map_err(|e| e.to_string())?;
        if euler != -z {
            return Err(format!("Euler identity fails: {euler} vs Z = {z}"));
        }
        if row.critical.len() != 1 || row.critical.get(&predicted.1) != Some(&predicted.0) {
            return Err("critical cells differ from the prediction".into());
        }
        Ok(())
    })();
    if let Err(e) = res {
        row.status = e;
    }
    row
}

#[derive(Serialize)]
struct GenfunReport {
    m: usize,
    a: Vec<usize>,
    b: Vec<usize>,
    series: Vec<String>,
    rational: Option<String>,
    factored: Option<String>,
}
