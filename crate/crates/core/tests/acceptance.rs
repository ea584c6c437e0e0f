//! Acceptance suite: one pass/fail line per criterion, exit status 1 if any fails.

use std::process::ExitCode;

use fock_trace::cli;
use fock_trace::error::Result;
use fock_trace::fock::FlavorWindow;
use fock_trace::num::{int, to_i64};
use fock_trace::report::{CheckMode, ComparisonReport};
use fock_trace::series::{Monomial, VarId};
use fock_trace::symfunc::{bosonic_hilbert_series, g_series_identity_check};
use fock_trace::trace::{
    bo_check, casimir_check, duality_checks, gamma_commutation_factor, gamma_factor_assertions, gamma_strip_check,
    howe_character_check, main_formula_reports, main_vacuum_term_check, operator_suite_check, ze_check, MainParams,
};
use fock_trace::vertex::{cy_product_report, cy_trace_checks, mcmahon_check, mcmahon_series};

struct Outcome {
    pass: bool,
    detail: String,
    reports: Vec<ComparisonReport>,
}

impl Outcome {
    fn asserted(reports: Vec<ComparisonReport>) -> Outcome {
        let failed: Vec<String> = reports
            .iter()
            .filter(|r| !r.agree)
            .map(|r| format!("{} vs {} differs at {:?}", r.lhs, r.rhs, r.first_diff.as_ref().map(|d| &d.monomial)))
            .collect();
        let checked: usize = reports.iter().map(|r| r.checked).sum();
        let detail = if failed.is_empty() { format!("{checked} coefficients/facts agree") } else { failed.join("; ") };
        Outcome { pass: failed.is_empty(), detail, reports }
    }

    fn fingerprint(&self) -> String {
        let mut out = format!("{} {}\n", self.pass, self.detail);
        for r in &self.reports {
            out.push_str(&r.to_json());
            out.push_str(&r.to_csv());
        }
        out
    }
}

fn ze() -> Result<Outcome> {
    Ok(Outcome::asserted(vec![ze_check(8, 8, 3)?]))
}

fn bo() -> Result<Outcome> {
    Ok(Outcome::asserted(vec![bo_check(3, 6)?]))
}

/// Plane partitions of `n`, filling an `n × n` grid cell by cell.
fn plane_partitions_by_cells(n: usize) -> u64 {
    fn fill(grid: &mut Vec<Vec<usize>>, cell: usize, budget: usize) -> u64 {
        let size = grid.len();
        if cell == size * size {
            return u64::from(budget == 0);
        }
        let (i, j) = (cell / size, cell % size);
        let above = if i == 0 { budget } else { grid[i - 1][j] };
        let left = if j == 0 { budget } else { grid[i][j - 1] };
        let mut total = 0;
        for v in 0..=above.min(left).min(budget) {
            grid[i][j] = v;
            total += fill(grid, cell + 1, budget - v);
        }
        grid[i][j] = 0;
        total
    }
    if n == 0 {
        return 1;
    }
    fill(&mut vec![vec![0; n]; n], 0, n)
}

fn mcmahon() -> Result<Outcome> {
    let printed = [1i64, 1, 3, 6, 13, 24, 48, 86, 160];
    let series = mcmahon_series(8)?;
    let coefficients: Vec<i64> =
        (0..=8).map(|n| to_i64(&series.coefficient(&Monomial::power(VarId::q(), int(n)))).unwrap_or(-1)).collect();
    let enumerated: Vec<i64> = (0..=8).map(|n| plane_partitions_by_cells(n) as i64).collect();
    let listed = ComparisonReport::from_checks(
        "vertex coefficients q^0..q^8",
        "1,1,3,6,13,24,48,86,160 and cell enumeration",
        vec![
            ("equal the listed counts".into(), coefficients == printed),
            ("equal the cell enumeration".into(), coefficients == enumerated),
        ],
    );
    Ok(Outcome::asserted(vec![mcmahon_check(8)?, listed]))
}

fn howe() -> Result<Outcome> {
    let degree = int(4);
    let mut reports = Vec::new();
    for window in [FlavorWindow::level(1), FlavorWindow::level(2), FlavorWindow::new(-1, 1)] {
        reports.push(howe_character_check(window, &degree)?);
        reports.push(duality_checks(window, &degree, 3)?);
    }
    Ok(Outcome::asserted(reports))
}

fn operators() -> Result<Outcome> {
    Ok(Outcome::asserted(vec![operator_suite_check(6, 4)?]))
}

fn casimir() -> Result<Outcome> {
    Ok(Outcome::asserted(vec![casimir_check(8, 5)]))
}

fn gamma() -> Result<Outcome> {
    let factor = gamma_commutation_factor(6)?;
    let mut outcome = Outcome::asserted(vec![gamma_strip_check(5)?, gamma_factor_assertions(&factor)]);
    let printed = if factor.printed.agree { "agrees" } else { "disagrees" };
    outcome.detail = format!(
        "{}; ratio equals {} and the printed factor 1 - x*y {printed}",
        outcome.detail, factor.identified
    );
    outcome.reports.push(factor.printed);
    Ok(outcome)
}

/// Monomials of weight `n` in variables of weights `1..=k`.
fn monomial_count(k: u32, n: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    (0..=n / k).map(|e| monomial_count(k - 1, n - e * k)).sum()
}

fn bosonic() -> Result<Outcome> {
    let mut checks = Vec::new();
    for k in 0..=4 {
        let h = bosonic_hilbert_series(k, 6);
        let ok = (0..=6u32).all(|n| {
            h.coefficient(&Monomial::power(VarId::q(), int(n as i64))) == int(monomial_count(k, n) as i64)
        });
        checks.push((format!("H_(B_{k}) to q^6 counts monomials"), ok));
    }
    let oracle = ComparisonReport::from_checks("bosonic Hilbert series", "monomial counts", checks);
    Ok(Outcome::asserted(vec![oracle, g_series_identity_check(4, 6)?]))
}

fn cy() -> Result<Outcome> {
    let product = cy_product_report(3, 6)?;
    let mut outcome = Outcome::asserted(vec![cy_trace_checks(5, 2)?]);
    let complete = product.checked > 0 && product.mode() == CheckMode::ReportOnly;
    let verdict = if product.agree { "agrees" } else { "disagrees" };
    outcome.pass &= complete;
    outcome.detail = format!("{}; product display {verdict} over {} coefficients (reported)", outcome.detail, product.checked);
    outcome.reports.push(product);
    Ok(outcome)
}

fn main_formula() -> Result<Outcome> {
    let mut reports = Vec::new();
    let mut complete = true;
    let mut agreeing = Vec::new();
    for energy in 1..=4 {
        for jmax in 1..=2 {
            let params = MainParams { energy, jmax, ab_degree: 2 };
            reports.push(main_vacuum_term_check(params)?);
            let readings = main_formula_reports(params)?;
            complete &= readings.len() == 16 && readings.iter().all(|r| r.params.contains_key("reading"));
            if energy == 4 && jmax == 2 {
                agreeing = readings.iter().filter(|r| r.agree).filter_map(|r| r.params.get("reading").cloned()).collect();
            }
            reports.extend(readings);
        }
    }
    let vacuum_ok = reports.iter().filter(|r| r.mode() == CheckMode::Asserted).all(|r| r.agree);
    let detail = format!(
        "lambda = empty term {}; 16 readings per cutoff {}; agreeing at energy 4, jmax 2: [{}]",
        if vacuum_ok { "matches" } else { "DIFFERS" },
        if complete { "reported" } else { "MISSING" },
        agreeing.join(" | ")
    );
    Ok(Outcome { pass: vacuum_ok && complete, detail, reports })
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

const CRITERIA: [Criterion; 10] = [
    ("Ze trace identity", ze),
    ("Bloch-Okounkov character", bo),
    ("McMahon three-way agreement", mcmahon),
    ("Howe duality at truncation", howe),
    ("operator calculus", operators),
    ("Casimir consistency", casimir),
    ("Gamma calculus", gamma),
    ("bosonic series identities", bosonic),
    ("elliptic partition function", cy),
    ("main formula harness", main_formula),
];

fn evaluate(f: fn() -> Result<Outcome>) -> Outcome {
    f().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}"), reports: Vec::new() })
}

fn cli_bytes() -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(["fock-trace", "verify", "all", "--q-order", "4", "--tau-order", "2"], &mut out, &mut err);
    (code, out)
}

fn main() -> ExitCode {
    let mut all_pass = true;
    let mut first_run = Vec::new();
    for (i, (name, f)) in CRITERIA.iter().enumerate() {
        let outcome = evaluate(*f);
        println!("[{}] {:>2}. {name}: {}", if outcome.pass { "PASS" } else { "FAIL" }, i + 1, outcome.detail);
        all_pass &= outcome.pass;
        first_run.push(outcome.fingerprint());
    }

    let second_run: Vec<String> = CRITERIA.iter().map(|(_, f)| evaluate(*f).fingerprint()).collect();
    let mismatched: Vec<usize> = (0..CRITERIA.len()).filter(|&i| first_run[i] != second_run[i]).map(|i| i + 1).collect();
    let (cli_a, cli_b) = (cli_bytes(), cli_bytes());
    let deterministic = mismatched.is_empty() && cli_a == cli_b && !cli_a.1.is_empty();
    let bytes: usize = first_run.iter().map(String::len).sum::<usize>() + cli_a.1.len();
    let detail = if deterministic {
        format!("two runs of every suite and of the CLI are byte-identical ({bytes} bytes)")
    } else {
        format!("criteria {mismatched:?} or the CLI output changed between runs")
    };
    println!("[{}] 11. determinism: {detail}", if deterministic { "PASS" } else { "FAIL" });
    all_pass &= deterministic;

    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
