use std::time::Instant;

use mheight::analysis::{closed_form_negacyclic, closed_form_negacyclic_dual};
use mheight::codes::{make_axis_replicated, make_dodecahedral, make_icosahedral, make_negacyclic};
use mheight::heights::{full_profile, height_at, ExtendedReal, HeightProfile, Method};
use mheight::{RealCode64, Tolerance64};

use crate::args::{CrosscheckArgs, MSelect, ProfileArgs, TableSet, VerifyArgs};
use crate::report::{CertificateEntry, CodeSummary, CrossCheck, Discrepancy, Height, HeightEntry, MethodHeights, RunReport, TableCell};
use crate::select::{select, Family};
use crate::CliError;

const TABLE_TOL: f64 = 1e-8;

fn runtime<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Failed(e.to_string())
}

fn profile_entries(p: &HeightProfile<f64>) -> Vec<HeightEntry> {
    p.heights
        .iter()
        .zip(&p.methods)
        .enumerate()
        .map(|(m, (h, method))| HeightEntry { m, height: Height(*h), method: method.map(|x| x.as_str().to_string()) })
        .collect()
}

pub fn profile(args: &ProfileArgs, tol: &Tolerance64) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let code = select(&args.code.code, args.code.seed, tol.rank)?.code;
    let mut report = RunReport::new("profile", tol);
    report.code = Some(CodeSummary::of(&code));
    report.method = Some(args.method.as_str().to_string());
    match args.m {
        MSelect::All => {
            let p = full_profile(&code, args.method, tol).map_err(runtime)?;
            report.heights = profile_entries(&p);
            report.min_distance = Some(p.min_distance);
            if args.certificates {
                report.certificates = Some(p.certificates.iter().flatten().map(CertificateEntry::of).collect());
            }
        }
        MSelect::One(0) => {
            report.heights = vec![HeightEntry { m: 0, height: Height(ExtendedReal::Finite(1.0)), method: None }];
            if args.certificates {
                report.certificates = Some(Vec::new());
            }
        }
        MSelect::One(m) => {
            if m >= code.n() {
                return Err(CliError::Usage(format!("--m {m} must be below n = {}", code.n())));
            }
            let h = height_at(&code, m, args.method, tol).map_err(runtime)?;
            report.heights = vec![HeightEntry { m, height: Height(h.value), method: Some(h.method.as_str().to_string()) }];
            if args.certificates {
                report.certificates = Some(h.certificate.iter().map(CertificateEntry::of).collect());
            }
        }
    }
    report.wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// `|a − b| / max(1, |b|)`, infinite when exactly one side is.
fn relative_gap(a: ExtendedReal<f64>, b: ExtendedReal<f64>) -> f64 {
    match (a, b) {
        (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => (a - b).abs() / b.abs().max(1.0),
        (ExtendedReal::Infinite, ExtendedReal::Infinite) => 0.0,
        _ => f64::INFINITY,
    }
}

fn cell(table: &str, code: &str, m: usize, expected: ExtendedReal<f64>, computed: ExtendedReal<f64>) -> TableCell {
    TableCell {
        table: table.into(),
        code: code.into(),
        m,
        expected: Height(expected),
        computed: Height(computed),
        passed: relative_gap(computed, expected) <= TABLE_TOL,
    }
}

fn closed_form_cells(family: Family, p: &HeightProfile<f64>, name: &str) -> Vec<TableCell> {
    let fin = ExtendedReal::Finite;
    match family {
        Family::Negacyclic(n) => (1..=2)
            .map(|m| cell("closed-form", name, m, fin(closed_form_negacyclic(n, m).expect("n > 2")), p.heights[m]))
            .collect(),
        Family::NegacyclicDual(n) => (1..=n - 2)
            .map(|m| cell("closed-form", name, m, fin(closed_form_negacyclic_dual(n, m).expect("n > 2")), p.heights[m]))
            .collect(),
        Family::Other => Vec::new(),
    }
}

pub const CROSSCHECK_METHODS: [Method; 5] = [Method::Lp, Method::LpDual, Method::Comb, Method::CombPc, Method::CombDual];

pub fn crosscheck(args: &CrosscheckArgs, tol: &Tolerance64) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let selected = select(&args.code.code, args.code.seed, tol.rank)?;
    let code = &selected.code;
    let profiles = CROSSCHECK_METHODS
        .iter()
        .map(|&m| full_profile(code, m, tol).map(|p| (m, p)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(runtime)?;
    let reference = &profiles[0].1;
    let d = reference.min_distance;
    let mut worst: Option<Discrepancy> = None;
    let mut worst_gap = -1.0;
    for (method, p) in &profiles[1..] {
        let mut gaps: Vec<(usize, f64)> = (1..d).map(|m| (m, relative_gap(p.heights[m], reference.heights[m]))).collect();
        if p.min_distance != d {
            gaps.push((p.min_distance.min(d), f64::INFINITY));
        }
        for (m, gap) in gaps {
            if gap > worst_gap {
                worst_gap = gap;
                worst = Some(Discrepancy {
                    m,
                    method: method.as_str().into(),
                    relative: Height(ExtendedReal::from_f64(gap)),
                });
            }
        }
    }
    let mut report = RunReport::new("crosscheck", tol);
    report.code = Some(CodeSummary::of(code));
    report.method = Some(Method::Lp.as_str().into());
    report.heights = profile_entries(reference);
    report.min_distance = Some(d);
    let cells = closed_form_cells(selected.family, reference, code.name());
    report.passed = worst_gap <= args.agree && cells.iter().all(|c| c.passed);
    if !cells.is_empty() {
        report.cells = Some(cells);
    }
    report.crosscheck = Some(CrossCheck {
        reference: Method::Lp.as_str().into(),
        tolerance: args.agree,
        methods: profiles
            .iter()
            .map(|(m, p)| MethodHeights {
                method: m.as_str().into(),
                heights: p.heights.iter().map(|h| Height(*h)).collect(),
                min_distance: p.min_distance,
            })
            .collect(),
        max_discrepancy: worst,
    });
    report.wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

fn reference_cells(method: Method, tol: &Tolerance64) -> Result<Vec<TableCell>, CliError> {
    let s5 = 5f64.sqrt();
    let inf = f64::INFINITY;
    let tables: [(&str, RealCode64, Vec<f64>); 3] = [
        ("ico", make_icosahedral(), vec![1.0, s5, s5, 2.0 + s5, inf, inf]),
        ("dod", make_dodecahedral(), vec![1.0, 2.0 + s5, 4.0 + s5, 9.0 + 4.0 * s5, inf, inf, inf, inf, inf, inf]),
        (
            "dod-dual",
            make_dodecahedral().dual().map_err(runtime)?,
            vec![1.0, 3.0 / s5, (1.0 + s5) / 2.0, 4.0 - s5, 3.0, 2.0 + s5, 2.0 + s5, 5.0 + 2.0 * s5, inf, inf],
        ),
    ];
    let mut cells = Vec::new();
    for (table, code, want) in tables {
        let p = full_profile(&code, method, tol).map_err(runtime)?;
        for (m, w) in want.into_iter().enumerate().skip(1) {
            cells.push(cell(table, code.name(), m, ExtendedReal::from_f64(w), p.heights[m]));
        }
    }
    Ok(cells)
}

fn negacyclic_cells(range: (usize, usize), method: Method, tol: &Tolerance64) -> Result<Vec<TableCell>, CliError> {
    let mut cells = Vec::new();
    for n in range.0..=range.1 {
        let code = make_negacyclic(n).map_err(|e| CliError::Usage(e.to_string()))?;
        let dual = code.dual().map_err(runtime)?;
        let p = full_profile(&code, method, tol).map_err(runtime)?;
        let q = full_profile(&dual, method, tol).map_err(runtime)?;
        cells.extend(closed_form_cells(Family::Negacyclic(n), &p, code.name()));
        cells.extend(closed_form_cells(Family::NegacyclicDual(n), &q, dual.name()));
        let shifted = p.heights[1].finite().map_or(ExtendedReal::Infinite, |h| ExtendedReal::Finite(h + 1.0));
        cells.push(cell("cross", dual.name(), n - 2, shifted, q.heights[n - 2]));
    }
    Ok(cells)
}

fn axis_cells(range: (usize, usize), method: Method, tol: &Tolerance64) -> Result<Vec<TableCell>, CliError> {
    let mut cells = Vec::new();
    for n in range.0..=range.1 {
        let code = make_axis_replicated(n).map_err(|e| CliError::Usage(e.to_string()))?;
        let h = height_at(&code, 1, method, tol).map_err(runtime)?;
        let want = (n.div_ceil(2) - 1) as f64;
        cells.push(cell("axis", code.name(), 1, ExtendedReal::Finite(want), h.value));
    }
    Ok(cells)
}

pub fn verify_tables(args: &VerifyArgs, tol: &Tolerance64) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut cells = Vec::new();
    let wants = |t: TableSet| args.tables == t || args.tables == TableSet::All;
    if wants(TableSet::Reference) {
        cells.extend(reference_cells(args.method, tol)?);
    }
    if wants(TableSet::Neg) {
        cells.extend(negacyclic_cells(args.n_range.unwrap_or((3, 12)), args.method, tol)?);
    }
    if wants(TableSet::Axis) {
        cells.extend(axis_cells(args.n_range.unwrap_or((4, 10)), args.method, tol)?);
    }
    let mut report = RunReport::new("verify-tables", tol);
    report.method = Some(args.method.as_str().into());
    report.passed = cells.iter().all(|c| c.passed);
    report.cells = Some(cells);
    report.wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
