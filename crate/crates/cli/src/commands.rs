use std::fs;
use std::path::Path;

use photonchip::analysis::{
    fit_dip as fit_curve, fit_visibility, sweep_eta, synth_dip as synth_curve, uniform_grid, Distribution,
    FitOptions, FitReport, Interpretation, Metric, SweepMode, SweepSpec, Variation,
};
use photonchip::circuit::{cnot_netlist, parse_netlist, CnotEtas, Convention, LogicalEncoding, Netlist};
use photonchip::format::{fixed_sig, FILE_DIGITS};
use photonchip::interference::{dip_fwhm_from_filter, dip_model, v_ideal, width_from_fwhm, DipCurve, DipParams};
use photonchip::metrics::{logical_fidelity, truth_table as logical_table, Permutation, TruthTable, BASIS};
use photonchip::Error;

use crate::svg::{Plot, Series};
use crate::CircuitArgs;

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_SIMULATION: u8 = 3;
pub const EXIT_NOT_CONVERGED: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PostSelectionFailed { .. } => EXIT_SIMULATION,
            _ => EXIT_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

type CliResult = Result<(), CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> CliResult {
    fs::write(path, contents).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load_circuit(args: &CircuitArgs, convention: Convention) -> Result<(Netlist<f64>, LogicalEncoding), CliError> {
    let (netlist, default_encoding) = if let Some(path) = &args.source.circuit {
        let text = read(path)?;
        let netlist = parse_netlist::<f64>(&text)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        let enc = (netlist.n_modes() == 6).then(LogicalEncoding::cnot);
        (netlist, enc)
    } else {
        let values = args.etas.as_deref().ok_or_else(|| CliError::input("--cnot needs --etas"))?;
        let values: [f64; 5] = values
            .try_into()
            .map_err(|_| CliError::input("--etas takes exactly five values"))?;
        let etas = CnotEtas::from_values(values)?;
        let (netlist, enc) = cnot_netlist(&etas, convention);
        (netlist, Some(enc))
    };
    let encoding = match &args.encoding {
        Some(modes) => parse_encoding(modes)?,
        None => default_encoding.ok_or_else(|| {
            CliError::input(format!(
                "circuit has {} modes; pass --encoding c0,c1,t0,t1[,ancillas]",
                netlist.n_modes()
            ))
        })?,
    };
    encoding.validate(netlist.n_modes())?;
    Ok((netlist, encoding))
}

fn parse_encoding(modes: &[usize]) -> Result<LogicalEncoding, CliError> {
    if modes.len() < 4 || modes.contains(&0) {
        return Err(CliError::input("--encoding takes at least four 1-based modes c0,c1,t0,t1"));
    }
    let m: Vec<usize> = modes.iter().map(|k| k - 1).collect();
    Ok(LogicalEncoding {
        control: (m[0], m[1]),
        target: (m[2], m[3]),
        ancillas: m[4..].to_vec(),
    })
}

pub fn truth_table(args: &CircuitArgs, out: Option<&Path>, convention: Convention) -> CliResult {
    let (netlist, encoding) = load_circuit(args, convention)?;
    let table = logical_table(&netlist, &encoding, convention)?;
    if let Some(path) = out {
        let mut buf = Vec::new();
        table.write_json(&mut buf)?;
        write(path, &String::from_utf8_lossy(&buf))?;
    }
    println!("{}", format_table(&table));
    println!("F(CNOT) = {:.6}", logical_fidelity(&table, Permutation::CNOT));
    for (label, s) in BASIS.iter().zip(table.success) {
        println!("success |{label}> = {s:.6}");
    }
    Ok(())
}

fn format_table(table: &TruthTable<f64>) -> String {
    let mut s = format!("{:>8}", "in\\out");
    for b in BASIS {
        s.push_str(&format!("{b:>10}"));
    }
    for (b, row) in BASIS.iter().zip(&table.rows) {
        s.push_str(&format!("\n{b:>8}"));
        for p in row {
            s.push_str(&format!("{p:>10.6}"));
        }
    }
    s
}

pub struct HomArgs<'a> {
    pub eta: f64,
    pub scan: bool,
    pub points: usize,
    pub out: Option<&'a Path>,
    pub filter_nm: Option<f64>,
    pub center_nm: f64,
    pub measured_fwhm_um: Option<f64>,
}

pub fn hom(args: HomArgs<'_>) -> CliResult {
    let v = v_ideal(args.eta)?;
    println!("V_ideal({}) = {v:.6}", args.eta);

    if let Some(filter) = args.filter_nm {
        let fwhm = dip_fwhm_from_filter(args.center_nm, filter)?;
        println!("filter-limited dip FWHM = {fwhm:.6} um");
        if let Some(measured) = args.measured_fwhm_um {
            println!("measured FWHM = {measured:.6} um, ratio measured/model = {:.6}", measured / fwhm);
        }
    }

    if args.scan {
        if args.points < 2 {
            return Err(CliError::input("--points must be at least 2"));
        }
        let curve = uniform_grid(0.0, 1.0, args.points)
            .into_iter()
            .map(|e| Ok((e, v_ideal(e)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        match args.out {
            Some(path) if has_extension(path, "svg") => {
                let plot = Plot {
                    title: "Ideal two-photon visibility".into(),
                    x_label: "reflectivity".into(),
                    y_label: "V".into(),
                    series: vec![Series::Line { points: curve, color: "black" }],
                };
                write(path, &plot.render())?;
            }
            Some(path) => {
                let mut csv = String::from("eta,v_ideal\n");
                for (e, v) in &curve {
                    csv.push_str(&format!("{},{}\n", fixed_sig(*e, FILE_DIGITS), fixed_sig(*v, FILE_DIGITS)));
                }
                write(path, &csv)?;
            }
            None => {
                for (e, v) in &curve {
                    println!("{e:.6} {v:.6}");
                }
            }
        }
    }
    Ok(())
}

fn has_extension(path: &Path, ext: &str) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case(ext))
}

pub fn fit_dip(data: &Path, eta: Option<f64>, accidentals: f64, out: &Path, plot: Option<&Path>, max_iterations: usize) -> CliResult {
    let curve = DipCurve::read_csv(read(data)?.as_bytes())?;
    if let Some(e) = eta {
        v_ideal(e)?;
    }
    if !(accidentals >= 0.0) {
        return Err(CliError::input("--accidentals must be non-negative"));
    }
    let min_counts = curve.points().iter().map(|p| p.counts).fold(f64::INFINITY, f64::min);
    if accidentals > min_counts {
        return Err(CliError::input(format!(
            "accidental rate {accidentals} exceeds the minimum recorded counts {min_counts}"
        )));
    }

    let fit = fit_curve(&curve, None, &FitOptions { max_iterations, ..FitOptions::default() })?;
    let mut report = FitReport::new(&fit, curve.len());
    let visibility = if fit.converged && !fit.degenerate {
        Some(fit_visibility(&fit, accidentals, eta)?)
    } else {
        None
    };
    report.visibility = visibility.clone();
    write(out, &report.to_json()?)?;

    if let Some(path) = plot {
        let (lo, hi) = (curve.points()[0].delay, curve.points()[curve.len() - 1].delay);
        let model = uniform_grid(lo, hi, 400).into_iter().map(|x| (x, dip_model(x, &fit.params))).collect();
        let mut series = vec![
            Series::Scatter {
                points: curve.points().iter().map(|p| (p.delay, p.counts, p.error)).collect(),
                color: "black",
            },
            Series::Line { points: model, color: "red" },
        ];
        if accidentals > 0.0 {
            series.push(Series::HLine { y: accidentals, color: "blue" });
        }
        let plot = Plot {
            title: "Two-photon dip".into(),
            x_label: "delay (um)".into(),
            y_label: "coincidences".into(),
            series,
        };
        write(path, &plot.render())?;
    }

    println!("V_fit = {:.6} +- {:.6}", fit.params.v, fit.uncertainties.v);
    println!("FWHM = {:.6} +- {:.6} um", fit.fwhm(), fit.fwhm_uncertainty());
    if let Some(rec) = &visibility {
        println!("V_corrected = {:.6} +- {:.6}", rec.v_corrected, rec.v_corrected_err);
        if let (Some(vr), Some(vi)) = (rec.v_rel, rec.v_ideal) {
            println!("V_ideal = {vi:.6}");
            match rec.v_rel_err {
                Some(err) => println!("v_rel = {vr:.6} +- {err:.6}"),
                None => println!("v_rel = {vr:.6}"),
            }
        }
    } else if fit.degenerate {
        println!("fit is degenerate; visibility not reported");
    }
    if !fit.converged {
        return Err(CliError {
            code: EXIT_NOT_CONVERGED,
            message: format!("fit did not converge after {} iterations", fit.iterations),
        });
    }
    Ok(())
}

pub struct SweepArgs<'a> {
    pub circuit: &'a CircuitArgs,
    pub vary: &'a [String],
    pub mode: &'a str,
    pub similarity: bool,
    pub reference: Option<&'a Path>,
    pub identity_target: bool,
    pub relative: bool,
    pub gaussian: bool,
    pub out: Option<&'a Path>,
    pub convention: Convention,
    pub seed: u64,
}

fn parse_mode(s: &str) -> Result<SweepMode, CliError> {
    let bad = || CliError::input(format!("--mode `{s}`: expected grid:N or mc:N"));
    let (kind, n) = s.split_once(':').ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    match kind.trim() {
        "grid" => Ok(SweepMode::Grid { points: n }),
        "mc" => Ok(SweepMode::MonteCarlo { samples: n }),
        _ => Err(bad()),
    }
}

fn parse_vary(items: &[String], netlist: &Netlist<f64>, gaussian: bool) -> Result<Vec<Variation>, CliError> {
    let available = netlist.coupler_labels();
    items
        .iter()
        .map(|item| {
            let (label, w) = item
                .split_once('=')
                .ok_or_else(|| CliError::input(format!("--vary `{item}`: expected label=half_width")))?;
            let label = label.trim();
            if !available.iter().any(|l| l == label) {
                return Err(CliError::input(format!(
                    "unknown coupler label `{label}`; available: {}",
                    available.join(", ")
                )));
            }
            let half_width: f64 = w
                .trim()
                .parse()
                .map_err(|_| CliError::input(format!("--vary `{item}`: bad half-width")))?;
            Ok(Variation {
                label: label.to_string(),
                half_width,
                distribution: if gaussian { Distribution::Gaussian } else { Distribution::Uniform },
            })
        })
        .collect()
}

pub fn sweep(args: SweepArgs<'_>) -> CliResult {
    let (netlist, encoding) = load_circuit(args.circuit, args.convention)?;
    let vary = parse_vary(args.vary, &netlist, args.gaussian)?;
    let mode = parse_mode(args.mode)?;
    let metric = if args.similarity {
        let reference = match args.reference {
            Some(path) => TruthTable::read_json(read(path)?.as_bytes())?,
            None => logical_table(&netlist, &encoding, args.convention)?,
        };
        Metric::Similarity(reference)
    } else {
        Metric::Fidelity(if args.identity_target { Permutation::IDENTITY } else { Permutation::CNOT })
    };
    let spec = SweepSpec {
        vary,
        mode,
        metric,
        interpretation: if args.relative { Interpretation::Relative } else { Interpretation::Absolute },
        convention: args.convention,
        seed: args.seed,
    };
    let report = sweep_eta(&netlist, &encoding, &spec)?;
    if let Some(path) = args.out {
        write(path, &report.to_json()?)?;
    }

    let at = report
        .worst
        .assignment
        .iter()
        .map(|a| format!("{}={:.6}", a.label, a.eta))
        .collect::<Vec<_>>()
        .join(", ");
    println!("{} samples ({} excluded), nominal {} = {:.6}", report.samples, report.excluded, report.metric_name, report.nominal);
    println!("worst {} = {:.6} at {at}", report.metric_name, report.worst.value);
    println!("best {} = {:.6}", report.metric_name, report.best.value);
    if let Some(corner) = report.worst_at_corner {
        println!("worst at grid corner: {}", if corner { "yes" } else { "no" });
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn synth_dip(a: f64, b: f64, v: f64, x0: f64, fwhm: f64, grid: (f64, f64, usize), out: &Path, seed: u64) -> CliResult {
    if !(fwhm > 0.0) {
        return Err(CliError::input("--fwhm must be positive"));
    }
    let params = DipParams { a, b, v, x0, w: width_from_fwhm(fwhm) };
    let (start, end, n) = grid;
    let curve = synth_curve(&params, &uniform_grid(start, end, n), seed)?;
    let mut buf = Vec::new();
    curve.write_csv(&mut buf)?;
    write(out, &String::from_utf8_lossy(&buf))?;
    println!("wrote {} points to {}", curve.len(), out.display());
    Ok(())
}
