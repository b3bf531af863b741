use anyhow::{bail, Context, Result};
use isospectral::aee::{
    action_series, closed_form_hermitian, closed_form_pt, relative_deviation, solve_quantization, BranchContour, PotentialSpec,
    DEFAULT_POINTS,
};
use isospectral::equivalence::{
    classify, coefficient_identity_check, hermitian_partner, isospectrality_check, pt_transition_scan, susy_check, Regime,
    TransitionOptions, TRACKED,
};
use isospectral::spectra::{scan_spectrum, RkOptions, ScanOptions};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{full, sci, sig8, write_output, Check, Report};
use crate::{
    Command, ContourArgs, EquivArgs, FamilyArgs, FigureArgs, Output, Physics, SpectrumArgs, SusyArgs, TableArgs,
};

/// Runs one subcommand and reports whether every check passed.
pub fn run(command: Command) -> Result<bool> {
    let (name, config, output, report) = match command {
        Command::Coeffs(a) => {
            let r = coeffs(&a.family, a.kmax, &a.contour, a.golden_tol, &a.physics)?;
            ("coeffs", config(&a)?, a.output, r)
        }
        Command::Spectrum(a) => {
            let r = spectrum(&a)?;
            ("spectrum", config(&a)?, a.output, r)
        }
        Command::Table1(a) => {
            let r = table(&a, 6.0)?;
            ("table1", config(&a)?, a.output, r)
        }
        Command::Table2(a) => {
            let r = table(&a, -0.5)?;
            ("table2", config(&a)?, a.output, r)
        }
        Command::Figure1(a) => {
            let r = figure(&a)?;
            ("figure1", config(&a)?, a.output, r)
        }
        Command::EquivCheck(a) => {
            let r = equiv(&a)?;
            ("equiv-check", config(&a)?, a.output, r)
        }
        Command::SusyCheck(a) => {
            let r = susy(&a)?;
            ("susy-check", config(&a)?, a.output, r)
        }
    };
    let config = json!({ "command": name, "args": config });
    emit(&report, &output, &config)?;
    Ok(report.passed())
}

fn config<T: Serialize>(args: &T) -> Result<Value> {
    Ok(serde_json::to_value(args)?)
}

fn emit(report: &Report, output: &Output, config: &Value) -> Result<()> {
    let text = report.render(output.format, config)?;
    write_output(&text, output.out.as_deref())
}

fn scan_options(rk_tol: f64) -> Result<ScanOptions> {
    Ok(ScanOptions {
        rk: rk_options(rk_tol)?,
        ..ScanOptions::default()
    })
}

fn rk_options(rk_tol: f64) -> Result<RkOptions> {
    if !(rk_tol > 0.0 && rk_tol < 1e-3) {
        bail!("--rk-tol must lie in (0, 1e-3), got {rk_tol}");
    }
    Ok(RkOptions {
        rtol: rk_tol,
        ..RkOptions::default()
    })
}

enum Family {
    BigH { a: f64 },
    SmallH { b: Complex64 },
}

fn family(f: &FamilyArgs, p: &Physics) -> Result<(Family, PotentialSpec)> {
    Ok(match (f.a, f.b) {
        (_, Some(b)) => (Family::SmallH { b }, PotentialSpec::hermitian_quartic(4.0 * p.g, b, p.hbar)?),
        (a, None) => {
            let a = a.unwrap_or(6.0);
            (Family::BigH { a }, PotentialSpec::pt_quartic(p.g, a, p.hbar)?)
        }
    })
}

fn branch_contour(c: &ContourArgs, spec: &PotentialSpec) -> BranchContour {
    let default = BranchContour::default_for(spec.sigma());
    match c.contour_center {
        Some((re, im)) => BranchContour::new(
            Complex64::new(re, im),
            c.contour_axes.unwrap_or(default.semi_axes),
            0.0,
            DEFAULT_POINTS,
        ),
        None => default,
    }
}

fn c64(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn coeffs(f: &FamilyArgs, kmax: usize, contour: &ContourArgs, golden_tol: f64, p: &Physics) -> Result<Report> {
    let (fam, spec) = family(f, p)?;
    let series = action_series(&spec, kmax, &branch_contour(contour, &spec)).context("computing the action series")?;
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut worst: f64 = 0.0;
    for (k, &bk) in series.coeffs.iter().enumerate() {
        let closed = match fam {
            Family::BigH { a } => closed_form_pt(p.g, a, p.hbar, k).map(Complex64::from),
            Family::SmallH { b } => closed_form_hermitian(4.0 * p.g, b, p.hbar, k),
        };
        let dev = closed.map(|c| relative_deviation(bk, c));
        if let Some(d) = dev {
            worst = worst.max(d);
        }
        let opt = |v: Option<f64>| v.map(full).unwrap_or_default();
        rows.push(vec![
            k.to_string(),
            full(bk.re),
            full(bk.im),
            opt(closed.map(|c| c.re)),
            opt(closed.map(|c| c.im)),
            opt(dev),
        ]);
        results.push(json!({ "k": k, "b": c64(bk), "closed_form": closed.map(c64), "rel_dev": dev }));
    }
    Ok(Report {
        header: cols(&["k", "b_k_re", "b_k_im", "closed_form_re", "closed_form_im", "rel_dev"]),
        rows,
        notes: Vec::new(),
        results: Value::Array(results),
        checks: vec![Check::below("closed_form_max_rel_dev", worst, golden_tol)],
        checks_are_rows: false,
    })
}

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Whether the spectrum of `spec` is known to be entirely real.
fn expected_real(fam: &Family, hbar: f64) -> bool {
    match fam {
        Family::BigH { a } => classify(*a, hbar) != Regime::Broken,
        Family::SmallH { b } => b.im == 0.0,
    }
}

fn imag_dev(e: Complex64) -> f64 {
    e.im.abs() / e.norm().max(1.0)
}

fn spectrum(args: &SpectrumArgs) -> Result<Report> {
    let (fam, spec) = family(&args.family, &args.physics)?;
    let seeds = (!args.seeds.is_empty()).then_some(args.seeds.as_slice());
    let mut scan = scan_spectrum(&spec, None, args.nmax, seeds, &scan_options(args.physics.rk_tol)?)?;
    if matches!(fam, Family::BigH { a } if classify(a, args.physics.hbar) == Regime::Broken) && seeds.is_none() {
        scan.warnings.push("PT symmetry is broken here; complex levels are only found from --seed values".to_string());
    }
    let levels: Vec<_> = scan.levels.iter().take(args.nmax + 1).collect();
    let rows = levels
        .iter()
        .enumerate()
        .map(|(n, l)| vec![n.to_string(), full(l.energy.re), full(l.energy.im), sci(l.residual)])
        .collect();
    let results = levels
        .iter()
        .enumerate()
        .map(|(n, l)| json!({ "n": n, "energy": c64(l.energy), "residual": l.residual }))
        .collect();
    let mut checks = vec![Check::flag("levels_found", scan.is_complete(args.nmax))];
    if expected_real(&fam, args.physics.hbar) {
        let worst = levels.iter().map(|l| imag_dev(l.energy)).fold(0.0, f64::max);
        checks.push(Check::below("max_imag_part", worst, args.real_tol));
    }
    Ok(Report {
        header: cols(&["n", "E_re", "E_im", "residual"]),
        rows,
        notes: scan.warnings.iter().map(|w| format!("warning: {w}")).collect(),
        results: json!({ "levels": Value::Array(results), "warnings": scan.warnings }),
        checks,
        checks_are_rows: false,
    })
}

fn table(args: &TableArgs, default_a: f64) -> Result<Report> {
    let a = args.a.unwrap_or(default_a);
    let p = &args.physics;
    let pair = hermitian_partner(p.g, a, p.hbar)?;
    let opts = scan_options(p.rk_tol)?;
    let (big_h, h) = std::thread::scope(|s| {
        let big = s.spawn(|| scan_spectrum(&pair.big_h_spec, None, args.nmax, None, &opts));
        let small = scan_spectrum(&pair.h_spec, None, args.nmax, None, &opts);
        (big.join().expect("scan thread panicked"), small)
    });
    let (big_h, h) = (big_h?, h?);
    let complete = big_h.is_complete(args.nmax) && h.is_complete(args.nmax);
    let series = action_series(&pair.big_h_spec, args.kmax, &branch_contour(&args.contour, &pair.big_h_spec))?;

    let n_rows = big_h.levels.len().min(h.levels.len()).min(args.nmax + 1);
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut iso: f64 = 0.0;
    let mut imag: f64 = 0.0;
    for n in 0..n_rows {
        let (eh, es) = (big_h.levels[n].energy, h.levels[n].energy);
        let ej = solve_quantization(&series, n).with_context(|| format!("E_J for n = {n}"))?;
        iso = iso.max((eh - es).norm() / es.norm().max(1.0));
        imag = imag.max(imag_dev(eh)).max(imag_dev(es));
        rows.push(vec![n.to_string(), sig8(eh.re), sig8(eh.im), sig8(es.re), sig8(es.im), sig8(ej)]);
        results.push(json!({ "n": n, "E_H": c64(eh), "E_h": c64(es), "E_J": ej }));
    }
    let mut checks = vec![
        Check::flag("levels_found", complete),
        Check::below("isospectral_max_rel_dev", iso, args.iso_tol),
    ];
    if pair.regime != Regime::Broken {
        checks.push(Check::below("max_imag_part", imag, args.real_tol));
    }
    let mut warnings = big_h.warnings.clone();
    warnings.extend(h.warnings.iter().cloned());
    Ok(Report {
        header: cols(&["n", "E_H_re", "E_H_im", "E_h_re", "E_h_im", "E_J"]),
        rows,
        notes: warnings.iter().map(|w| format!("warning: {w}")).collect(),
        results: json!({ "a": a, "b": c64(pair.b), "rows": Value::Array(results), "warnings": warnings }),
        checks,
        checks_are_rows: false,
    })
}

fn figure(args: &FigureArgs) -> Result<Report> {
    let p = &args.physics;
    let opts = TransitionOptions {
        scan: scan_options(p.rk_tol)?,
        h_side_samples: args.h_side_samples,
        ..TransitionOptions::default()
    };
    let r = pt_transition_scan(p.g, p.hbar, (args.a_min, args.a_max), args.steps, &opts)?;
    let mut header = vec!["a".to_string()];
    for n in 0..TRACKED {
        header.push(format!("E{n}_re"));
        header.push(format!("E{n}_im"));
    }
    let rows = r
        .a_values
        .iter()
        .zip(&r.eigenvalues)
        .map(|(a, es)| {
            let mut row = vec![full(*a)];
            for e in es {
                row.push(full(e.re));
                row.push(full(e.im));
            }
            row
        })
        .collect();
    let opt = |v: Option<f64>| v.map(full).unwrap_or_else(|| "none".to_string());
    let mut notes = vec![format!(
        "coalescence_a={},resolution={},zero_crossing_a={}",
        opt(r.coalescence_a),
        full(r.resolution),
        opt(r.zero_crossing_a)
    )];
    notes.extend(r.flags.iter().map(|f| format!("warning: {f}")));
    let mut checks = vec![
        Check::flag("coalescence_found", r.coalescence_a.is_some()),
        Check {
            name: "levels_real_in_window".to_string(),
            value: r.max_imag_in_window,
            tolerance: 1e-7,
            pass: r.all_real_in_window,
        },
    ];
    if let Some(d) = r.conjugate_pair_dev {
        checks.push(Check::below("conjugate_pairing_dev", d, args.real_tol));
    }
    if let Some(d) = r.h_side_max_dev {
        checks.push(Check::below("h_side_max_rel_dev", d, args.iso_tol));
    }
    Ok(Report {
        header,
        rows,
        notes,
        results: serde_json::to_value(&r)?,
        checks,
        checks_are_rows: false,
    })
}

fn equiv(args: &EquivArgs) -> Result<Report> {
    let p = &args.physics;
    let identity = coefficient_identity_check(p.g, args.a, p.hbar, args.kmax)?;
    let pair = hermitian_partner(p.g, args.a, p.hbar)?;
    let iso = isospectrality_check(&pair, args.nmax, &scan_options(p.rk_tol)?)?;
    let checks = vec![
        Check::below("identity_max_rel_dev", identity.max_rel_dev, args.identity_tol),
        Check::flag("isospectral_levels_found", iso.rows.len() > args.nmax),
        Check::below("isospectral_max_rel_dev", iso.max_rel_dev, args.iso_tol),
    ];
    Ok(check_table(json!({ "identity": identity, "isospectrality": iso }), checks))
}

fn susy(args: &SusyArgs) -> Result<Report> {
    let r = susy_check(args.samples, &rk_options(args.rk_tol)?)?;
    let w_dev = (r.w_at_2i - Complex64::new(0.0, 4.5)).norm() / 4.5;
    let checks = vec![
        Check::below("zero_mode_residual", r.zero_mode_residual, args.susy_tol),
        Check::below("superpotential_dev", r.superpotential_dev, args.susy_tol),
        Check::below("partner_potential_dev", r.partner_potential_dev, args.susy_tol),
        Check::below("w_at_2i_rel_dev", w_dev, args.susy_tol),
        Check::below("ground_energy_h1", r.ground_energies[0].norm(), args.zero_tol),
        Check::below("ground_energy_h2", r.ground_energies[1].norm(), args.zero_tol),
    ];
    Ok(check_table(serde_json::to_value(&r)?, checks))
}

/// Report whose CSV form is the list of checks itself.
fn check_table(results: Value, checks: Vec<Check>) -> Report {
    let rows = checks
        .iter()
        .map(|c| vec![c.name.clone(), full(c.value), sci(c.tolerance), c.pass.to_string()])
        .collect();
    Report {
        header: cols(&["check", "value", "tolerance", "pass"]),
        rows,
        notes: Vec::new(),
        results,
        checks,
        checks_are_rows: true,
    }
}
