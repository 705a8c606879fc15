mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use num_complex::Complex;
use vortex_cd::observables::{linear_grid, scan_profile, ObservableKind, ProfileRequest};
use vortex_cd::paraxial::{formula, numeric_limit, table};
use vortex_cd::polarization::{stokes_profile, PolarizationState};
use vortex_cd::{verify, TransitionSpec};

use config::{
    format, Cli, Command, Common, ConfigFile, Format, Grid, ParaxialArgs, ParaxialConfig, ScanArgs,
    ScanConfig, StokesArgs, StokesConfig, VerifyArgs,
};
use output::{header, num, ParaxialPoint, ParaxialRun, StokesBlock, StokesRun};

const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_VERIFY: u8 = 4;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = init_threads() {
        eprintln!("vd: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("vd: {e:#}");
            if e.chain().any(|c| c.downcast_ref::<vortex_cd::Error>().is_some()) {
                ExitCode::from(EXIT_DOMAIN)
            } else {
                ExitCode::from(EXIT_USAGE)
            }
        }
    }
}

fn init_threads() -> anyhow::Result<()> {
    let Ok(v) = std::env::var("VD_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("VD_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Flux(a) => scan("flux", ObservableKind::Flux, &a),
        Command::Cd(a) => scan("cd", ObservableKind::Cd, &a),
        Command::RateAsym(a) => scan("rate-asym", ObservableKind::ALambda, &a),
        Command::SigmaRatio(a) => scan("sigma-ratio", ObservableKind::SigmaRatio, &a),
        Command::Stokes(a) => stokes(&a),
        Command::Paraxial(a) => paraxial(&a),
        Command::Verify(a) => verify_all(&a),
    }
}

fn emit(common: &Common, text: &str) -> anyhow::Result<()> {
    match &common.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn grid_echo(g: &Grid) -> Vec<(&'static str, String)> {
    vec![
        ("mbar", g.mbar.to_string()),
        ("theta_k", num(g.theta_k)),
        ("wavelength", num(g.wavelength)),
        ("b_min", num(g.b_min)),
        ("b_max", num(g.b_max)),
        ("n_points", g.n.to_string()),
        ("units", "b in wavelengths".into()),
    ]
}

fn scan(name: &str, kind: ObservableKind, a: &ScanArgs) -> anyhow::Result<ExitCode> {
    let cfg = ConfigFile::load(a.common.config.as_deref())?;
    let fmt = format(&a.common, &cfg)?;
    let sc = ScanConfig::resolve(a, &cfg)?;
    let g = &sc.grid;
    let req = ProfileRequest {
        kind,
        mbar: g.mbar,
        helicity: kind.single_beam().then_some(sc.helicity),
        transition: if kind.needs_transition() { Some(TransitionSpec::new(sc.l_f)?) } else { None },
        theta_k: g.theta_k,
        wavelength: g.wavelength,
    };
    let grid = linear_grid(g.b_min, g.b_max, g.n)?;
    let profile = scan_profile(&req, &grid)?;
    let text = match fmt {
        Format::Json => output::json(&profile)?,
        Format::Csv => {
            let mut echo = grid_echo(g);
            if let Some(tr) = req.transition {
                echo.insert(1, ("l_f", tr.l_f().to_string()));
            }
            if let Some(h) = req.helicity {
                echo.insert(1, ("helicity", h.sign().to_string()));
            }
            output::profile_csv(&header(name, &echo), &profile)
        }
    };
    emit(&a.common, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn stokes(a: &StokesArgs) -> anyhow::Result<ExitCode> {
    let cfg = ConfigFile::load(a.common.config.as_deref())?;
    let fmt = format(&a.common, &cfg)?;
    let sc = StokesConfig::resolve(a, &cfg)?;
    let g = &sc.grid;
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let mut state = PolarizationState::new(
        g.mbar,
        g.theta_k,
        Complex::new(c, 0.0),
        Complex::new(c, 0.0),
        TransitionSpec::new(sc.l_f_medium)?,
    )?;
    state.wavelength = g.wavelength;
    state.beams()?;
    let grid = linear_grid(g.b_min, g.b_max, g.n)?;
    let blocks = sc
        .z
        .iter()
        .map(|&z| {
            Ok(StokesBlock {
                z,
                points: stokes_profile(&state.at_depth(z)?, &grid)?,
            })
        })
        .collect::<vortex_cd::Result<Vec<_>>>()?;
    let run = StokesRun {
        mbar: g.mbar,
        theta_k: g.theta_k,
        wavelength: g.wavelength,
        l_f_medium: sc.l_f_medium,
        c_plus: c,
        c_minus: c,
        blocks,
    };
    let text = match fmt {
        Format::Json => output::json(&run)?,
        Format::Csv => {
            let mut echo = grid_echo(g);
            echo.insert(1, ("l_f_medium", sc.l_f_medium.to_string()));
            echo.push(("c_plus", num(c)));
            echo.push(("c_minus", num(c)));
            echo.push(("phi", "0".into()));
            echo.push(("z units", "plane-wave attenuation lengths 1/mu_pw".into()));
            echo.push((
                "S3 sign",
                "pure Lambda=+1 paraxial mode gives S3/S0 = +1".into(),
            ));
            output::stokes_csv(&header("stokes", &echo), &run)
        }
    };
    emit(&a.common, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn paraxial(a: &ParaxialArgs) -> anyhow::Result<ExitCode> {
    let cfg = ConfigFile::load(a.common.config.as_deref())?;
    if a.export_table {
        emit(&a.common, &output::json(&table())?)?;
        return Ok(ExitCode::SUCCESS);
    }
    let fmt = format(&a.common, &cfg)?;
    let pc = ParaxialConfig::resolve(a, &cfg)?;
    let f = formula(pc.kind, pc.mbar, pc.l_f)?;
    let xs = linear_grid(pc.x_min, pc.x_max, pc.n)?;
    let points = xs
        .iter()
        .map(|&x| {
            Ok(ParaxialPoint {
                x,
                value: f.eval(x),
                numeric: if a.numeric { Some(numeric_limit(pc.kind, pc.mbar, pc.l_f, x)?) } else { None },
            })
        })
        .collect::<vortex_cd::Result<Vec<_>>>()?;
    let run = ParaxialRun { formula: f, points };
    let text = match fmt {
        Format::Json => output::json(&run)?,
        Format::Csv => {
            let echo = [
                ("kind", pc.kind.label().to_string()),
                ("mbar", pc.mbar.to_string()),
                ("l_f", pc.l_f.to_string()),
                ("numerator", format!("{:?}", run.formula.numerator)),
                ("denominator", format!("{:?}", run.formula.denominator)),
                ("units", "x = k b, coefficients ascending in x".into()),
            ];
            output::paraxial_csv(&header("paraxial", &echo), &run)
        }
    };
    emit(&a.common, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn verify_all(a: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let cfg = ConfigFile::load(a.common.config.as_deref())?;
    let outcomes = verify::run_all();
    let text = match format(&a.common, &cfg)? {
        Format::Json => output::json(&outcomes)?,
        Format::Csv => output::verify_table(&outcomes),
    };
    emit(&a.common, &text)?;
    Ok(if outcomes.iter().all(|o| o.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    })
}
