//! Subcommands of the `qftqr` binary. Data goes to `out`, diagnostics to
//! `err`; every command returns whether its verdict passed.

pub mod report;
pub mod vecfile;

use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand};
use qftqr::fourier::dft_matrix;
use qftqr::stepmatrices::{decompose_step, factored_transform, hadamard_tensor, phase_product};
use qftqr::{
    build_m, build_n, build_p, circuit_to_unitary, dft_direct, emit_circuit_text,
    fft_approx_classical, fft_classical, gate_counts, min_m_for_error, parse_circuit_text,
    phase_error_bound, prepare_state, run_circuit, synth_aqft, synth_qft, ApproximationParam,
    Circuit, Complex, ComplexVector, Tolerance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use report::RunReport;
use vecfile::{format_vector, read_vector_file};

/// Largest `n` accepted by `verify` and `compare-approx`.
pub const MAX_VERIFY_QUBITS: usize = 8;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "qftqr",
    version,
    about = "QFT synthesis from the radix-2 FFT, with verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the exact (or approximate, with --m) QFT circuit.
    Synth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        /// Output file; the circuit goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classical FFT of a vector file (phase-truncated with --m).
    Fft {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Run a circuit file on the state given by a vector file.
    Simulate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        circuit: PathBuf,
        /// Scale the input to unit norm instead of rejecting it.
        #[arg(long)]
        normalize: bool,
    },
    /// Check the step-matrix factorization and both QFT routes against the DFT.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Tabulate approximate-QFT phase error against the bound for m = 1..n.
    CompareApprox {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Dump P, M, N and alpha for one FFT stage.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match cli.command {
        Command::Synth { n, m, out: path } => cmd_synth(n, m, path.as_deref(), out, err),
        Command::Fft { input, m } => cmd_fft(&input, m, out),
        Command::Simulate {
            input,
            circuit,
            normalize,
        } => cmd_simulate(&input, &circuit, normalize, out),
        Command::Verify { n, tolerance, seed } => cmd_verify(n, tolerance, seed, out),
        Command::CompareApprox { n, tolerance } => cmd_compare_approx(n, tolerance, out),
        Command::Decompose { n, s, tolerance } => cmd_decompose(n, s, tolerance, out),
    }
}

fn tolerance(eps: f64) -> Result<Tolerance> {
    Tolerance::new(eps).context("invalid --tolerance")
}

pub fn cmd_synth(
    n: usize,
    m: Option<usize>,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<bool> {
    let circuit = match m {
        Some(m) if m != n => synth_aqft(n, ApproximationParam::new(m, n)?)?,
        Some(_) | None => synth_qft(n)?,
    };
    let text = emit_circuit_text(&circuit);
    let mut report = RunReport::new("synth");
    report.param("n", n);
    report.param("m", m.unwrap_or(n));
    report.note("counts", gate_counts(&circuit));
    match path {
        Some(p) => {
            std::fs::write(p, &text)
                .with_context(|| format!("cannot write circuit to {}", p.display()))?;
            write!(out, "{report}")?;
        }
        None => {
            out.write_all(text.as_bytes())?;
            write!(err, "{report}")?;
        }
    }
    Ok(true)
}

pub fn cmd_fft(input: &Path, m: Option<usize>, out: &mut dyn Write) -> Result<bool> {
    let x = read_vector_file(input)?;
    let n = x.len().trailing_zeros() as usize;
    let y = match m {
        Some(m) => {
            // n = 0 has no valid parameter; the transform is the identity there
            let param = ApproximationParam::new(m, n.max(1))?;
            fft_approx_classical(&x, param)?
        }
        None => fft_classical(&x)?,
    };
    out.write_all(format_vector(&y).as_bytes())?;
    Ok(true)
}

pub fn cmd_simulate(
    input: &Path,
    circuit_path: &Path,
    normalize: bool,
    out: &mut dyn Write,
) -> Result<bool> {
    let x = read_vector_file(input)?;
    let text = std::fs::read_to_string(circuit_path)
        .with_context(|| format!("cannot read circuit file {}", circuit_path.display()))?;
    let circuit = parse_circuit_text(&text)
        .with_context(|| format!("malformed circuit file {}", circuit_path.display()))?;
    let width = circuit.num_qubits();
    ensure!(
        width < usize::BITS as usize && x.len() == 1usize << width,
        "vector length {} does not match circuit width {width} (expected {})",
        x.len(),
        1u128 << width.min(127)
    );
    let state = prepare_state(&x, normalize)?;
    let result = run_circuit(state, &circuit)?;
    out.write_all(format_vector(&result.into_vector()).as_bytes())?;
    Ok(true)
}

fn check_verify_qubits(n: usize) -> Result<()> {
    if !(1..=MAX_VERIFY_QUBITS).contains(&n) {
        bail!("--n must be in 1..={MAX_VERIFY_QUBITS}, got {n}");
    }
    Ok(())
}

fn random_unit_vector(rng: &mut impl Rng, len: usize) -> ComplexVector {
    let data: Vec<Complex> = (0..len)
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    ComplexVector::new(data.into_iter().map(|z| z / norm).collect()).expect("finite random vector")
}

/// Runs every structural check for `n` qubits and collects the residuals.
pub fn verify_report(n: usize, tol: f64, seed: u64) -> Result<RunReport> {
    check_verify_qubits(n)?;
    let tol = tolerance(tol)?.eps();
    let start = Instant::now();
    let mut report = RunReport::new("verify");
    report.param("n", n);
    report.param("tolerance", qftqr::numerics::format_real(tol));
    report.param("seed", seed);

    let (mut unitary, mut factor, mut tensor, mut phases, mut qr) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for s in 0..n {
        let p = build_p(n, s)?;
        let m = build_m(n, s)?;
        let nn = build_n(n, s)?;
        unitary = unitary.max(p.unitarity_error());
        factor = factor.max(m.matmul(&nn)?.max_entry_distance(&p)?);
        tensor = tensor.max(m.max_entry_distance(&hadamard_tensor(n, s)?)?);
        phases = phases.max(phase_product(n, s)?.max_entry_distance(&nn)?);
        qr = match decompose_step(n, s) {
            Ok(d) => qr
                .max(d.closed_form_residual)
                .max(d.factorization_residual)
                .max(d.orthogonality_residual),
            Err(_) => f64::INFINITY,
        };
    }
    report.metric("p_unitary", unitary, tol);
    report.metric("p_equals_mn", factor, tol);
    report.metric("m_tensor_form", tensor, tol);
    report.metric("n_equals_r_product", phases, tol);
    report.metric("qr_step_residual", qr, tol);

    let dft = dft_matrix(n as u32)?;
    let factored = factored_transform(n)?;
    let circuit = synth_qft(n)?;
    let gates = circuit_to_unitary(&circuit)?;
    report.metric("factored_vs_dft", factored.max_entry_distance(&dft)?, tol);
    report.metric("circuit_vs_dft", gates.max_entry_distance(&dft)?, tol);
    report.metric(
        "circuit_vs_factored",
        gates.max_entry_distance(&factored)?,
        tol,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = random_unit_vector(&mut rng, 1 << n);
    let reference = dft_direct(&x)?;
    let simulated = run_circuit(prepare_state(&x, false)?, &circuit)?.into_vector();
    report.metric("simulator_vs_dft", simulated.max_distance(&reference)?, tol);
    report.metric(
        "fft_vs_dft",
        fft_classical(&x)?.max_distance(&reference)?,
        tol,
    );

    report.note("counts", gate_counts(&circuit));
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

pub fn cmd_verify(n: usize, tol: f64, seed: u64, out: &mut dyn Write) -> Result<bool> {
    let report = verify_report(n, tol, seed)?;
    write!(out, "{report}")?;
    Ok(report.passed())
}

/// One row of the approximation table.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxRow {
    pub m: usize,
    pub controlled_phases: usize,
    pub max_phase_deviation: f64,
    pub max_modulus_error: f64,
    pub bound: f64,
}

impl ApproxRow {
    pub fn within_bound(&self) -> bool {
        self.max_phase_deviation <= self.bound
    }
}

/// Measures each approximate circuit against the exact DFT matrix.
pub fn approx_rows(n: usize) -> Result<Vec<ApproxRow>> {
    check_verify_qubits(n)?;
    let exact = dft_matrix(n as u32)?;
    let modulus = 1.0 / ((1usize << n) as f64).sqrt();
    (1..=n)
        .map(|m| {
            let param = ApproximationParam::new(m, n)?;
            let circuit: Circuit = synth_aqft(n, param)?;
            let u = circuit_to_unitary(&circuit)?;
            let (mut dev, mut modulus_err) = (0.0f64, 0.0f64);
            for (a, b) in u.entries().iter().zip(exact.entries()) {
                dev = dev.max((a * b.conj()).arg().abs());
                modulus_err = modulus_err.max((a.norm() - modulus).abs());
            }
            Ok(ApproxRow {
                m,
                controlled_phases: gate_counts(&circuit).controlled_phases,
                max_phase_deviation: dev,
                max_modulus_error: modulus_err,
                bound: phase_error_bound(n, param)?,
            })
        })
        .collect()
}

pub const EPS_SWEEP: [f64; 7] = [PI, 1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-6];

pub fn cmd_compare_approx(n: usize, tol: f64, out: &mut dyn Write) -> Result<bool> {
    let tol = tolerance(tol)?.eps();
    let rows = approx_rows(n)?;
    writeln!(out, "# n={n}")?;
    writeln!(
        out,
        "m controlled_phases max_phase_deviation bound within_bound"
    )?;
    for r in &rows {
        writeln!(
            out,
            "{} {} {:.6e} {:.6e} {}",
            r.m,
            r.controlled_phases,
            r.max_phase_deviation,
            r.bound,
            r.within_bound()
        )?;
    }
    // deviation should not grow with m; slack covers ties at rounding level
    let monotone = rows
        .windows(2)
        .all(|w| w[1].max_phase_deviation <= w[0].max_phase_deviation + 1e-12);
    let modulus = rows.iter().map(|r| r.max_modulus_error).fold(0.0, f64::max);
    let exact_dev = rows.last().map_or(0.0, |r| r.max_phase_deviation);
    writeln!(out, "# min_m_for_error")?;
    writeln!(out, "eps_max min_m bound_at_min_m meets_eps")?;
    for eps in EPS_SWEEP {
        let m = min_m_for_error(eps, n)?;
        let bound = phase_error_bound(n, ApproximationParam::new(m, n)?)?;
        // m is clamped to n, so tiny eps may not be reachable
        writeln!(out, "{eps:e} {m} {bound:.6e} {}", bound <= eps)?;
    }
    let all_within = rows.iter().all(ApproxRow::within_bound);
    writeln!(out, "modulus_error: {modulus:e}")?;
    writeln!(out, "exact_row_deviation: {exact_dev:e}")?;
    writeln!(out, "deviation_non_increasing: {monotone}")?;
    let pass = all_within && monotone && modulus <= tol && exact_dev <= tol;
    writeln!(out, "verdict: {}", if pass { "pass" } else { "fail" })?;
    Ok(pass)
}

pub fn cmd_decompose(n: usize, s: usize, tol: f64, out: &mut dyn Write) -> Result<bool> {
    let tol = tolerance(tol)?.eps();
    let d = decompose_step(n, s)?;
    out.write_all(d.dump().as_bytes())?;
    Ok(d.factorization_residual <= tol && d.closed_form_residual <= tol)
}
