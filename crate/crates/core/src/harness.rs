//! Seeded Monte Carlo trial runner and the report types behind the
//! command-line interface.
//!
//! Reproducibility contract: a run is determined entirely by its
//! configuration. Each trial derives its own random stream from the base
//! seed and the trial index, so results are bit-identical across repeated
//! runs and across any number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::bell::{
    hardy_local_maximum, hardy_sum_quantum, hardy_sum_spin_model, SetupPair, SpinModelEstimate,
};
use crate::classical::{
    exhaustive_search_three_party, exhaustive_search_two_party, run_classical_three_party,
    run_classical_two_party, ThreePartyEncoding,
};
use crate::detectors::{
    canonical_three_party_encoding, eta_min_three_party, eta_min_two_party, feasibility_grid,
    mu_threshold_three_party, mu_threshold_two_party, run_three_party_with_detectors,
    run_two_party_with_detectors, DetectorModel, TwoPartyFallback,
};
use crate::error::{Error, Result};
use crate::protocols::{
    run_classical_spin_two_party, three_party_quantum_exact_success, two_party_quantum_success,
};
use crate::tasks::{check_ring_param, enumerate_three_party, sample_three_party, sample_two_party};

/// The protocols the simulator can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    /// Singlet measurements on the ring task.
    Quantum2,
    /// Optimal classical strategy (half-circle colouring plus best response).
    Classical2,
    /// Classical-spin hidden-variable model on the ring task.
    Spin2,
    /// GHZ protocol for the three-party sum task.
    Quantum3,
    /// Optimal classical encoding for the three-party sum task.
    Classical3,
}

impl Protocol {
    pub const ALL: [Protocol; 5] = [
        Protocol::Quantum2,
        Protocol::Classical2,
        Protocol::Spin2,
        Protocol::Quantum3,
        Protocol::Classical3,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Protocol::Quantum2 => "quantum2",
            Protocol::Classical2 => "classical2",
            Protocol::Spin2 => "spin2",
            Protocol::Quantum3 => "quantum3",
            Protocol::Classical3 => "classical3",
        }
    }

    pub fn parties(&self) -> u8 {
        match self {
            Protocol::Quantum2 | Protocol::Classical2 | Protocol::Spin2 => 2,
            Protocol::Quantum3 | Protocol::Classical3 => 3,
        }
    }

    /// Whether the detector model affects this protocol. Classical runs
    /// need no detectors; their configured model is echoed but unused.
    pub fn uses_detectors(&self) -> bool {
        matches!(self, Protocol::Quantum2 | Protocol::Quantum3)
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Protocol::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| {
                Error::arg(format!(
                    "unknown protocol `{s}` (expected one of quantum2, classical2, spin2, quantum3, classical3)"
                ))
            })
    }
}

/// Everything that determines a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub protocol: Protocol,
    /// Ring parameter for two-party protocols; must be absent for
    /// three-party ones. Defaults to 4 when omitted.
    pub n: Option<u32>,
    pub detector: DetectorModel,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl RunConfig {
    /// A single-threaded run with perfect detectors and the default ring.
    pub fn new(protocol: Protocol, trials: u64, seed: u64) -> Self {
        RunConfig {
            protocol,
            n: None,
            detector: DetectorModel::perfect(),
            trials,
            seed,
            workers: 1,
        }
    }
}

/// The outcome of a Monte Carlo run, ready for display or serialization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialSummary {
    pub protocol: String,
    pub parties: u8,
    pub n: Option<u32>,
    pub detector: DetectorModel,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl fmt::Display for TrialSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "protocol:  {}", self.protocol)?;
        if let Some(n) = self.n {
            write!(f, " (n={n})")?;
        }
        writeln!(f)?;
        writeln!(
            f,
            "detector:  eta={:.9}, mu={:.9}",
            self.detector.eta(),
            self.detector.mu()
        )?;
        writeln!(f, "trials:    {} (seed {})", self.trials, self.seed)?;
        writeln!(f, "successes: {}", self.successes)?;
        write!(
            f,
            "estimate:  {:.9} (std error {:.9})",
            self.estimate, self.stderr
        )
    }
}

enum TrialRunner {
    Quantum2 {
        n: u32,
        model: DetectorModel,
    },
    Classical2 {
        n: u32,
        fallback: TwoPartyFallback,
    },
    Spin2 {
        n: u32,
    },
    Quantum3 {
        model: DetectorModel,
    },
    Classical3 {
        encoding: &'static ThreePartyEncoding,
    },
}

impl TrialRunner {
    fn build(config: &RunConfig) -> Result<TrialRunner> {
        let runner = match config.protocol {
            Protocol::Quantum2 => TrialRunner::Quantum2 {
                n: config.n.unwrap_or(4),
                model: config.detector,
            },
            Protocol::Classical2 => TrialRunner::Classical2 {
                n: config.n.unwrap_or(4),
                fallback: TwoPartyFallback::optimal(config.n.unwrap_or(4))?,
            },
            Protocol::Spin2 => TrialRunner::Spin2 {
                n: config.n.unwrap_or(4),
            },
            Protocol::Quantum3 => TrialRunner::Quantum3 {
                model: config.detector,
            },
            Protocol::Classical3 => TrialRunner::Classical3 {
                encoding: canonical_three_party_encoding(),
            },
        };
        Ok(runner)
    }

    fn run(&self, rng: &mut ChaCha8Rng) -> Result<bool> {
        let success = match self {
            TrialRunner::Quantum2 { n, model } => {
                let instance = sample_two_party(*n, rng)?;
                run_two_party_with_detectors(&instance, *model, rng)
            }
            TrialRunner::Classical2 { n, fallback } => {
                let instance = sample_two_party(*n, rng)?;
                run_classical_two_party(&instance, fallback.colouring(), fallback.rule())?.1
            }
            TrialRunner::Spin2 { n } => {
                let instance = sample_two_party(*n, rng)?;
                run_classical_spin_two_party(&instance, rng).1
            }
            TrialRunner::Quantum3 { model } => {
                let instance = sample_three_party(rng);
                run_three_party_with_detectors(&instance, *model, rng)
            }
            TrialRunner::Classical3 { encoding } => {
                let instance = sample_three_party(rng);
                run_classical_three_party(&instance, encoding).1
            }
        };
        Ok(success)
    }
}

/// Runs the configured protocol for the configured number of trials, each
/// on an independent instance drawn uniformly from the task's promise set.
pub fn run_trials(config: &RunConfig) -> Result<TrialSummary> {
    if config.trials == 0 {
        return Err(Error::arg("at least one trial is required"));
    }
    if config.workers == 0 {
        return Err(Error::arg("at least one worker is required"));
    }
    match config.protocol.parties() {
        2 => check_ring_param(config.n.unwrap_or(4))?,
        _ if config.n.is_some() => {
            return Err(Error::arg(format!(
                "the ring parameter does not apply to {}",
                config.protocol
            )));
        }
        _ => {}
    }
    let runner = TrialRunner::build(config)?;
    let base = ChaCha8Rng::seed_from_u64(config.seed);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::arg(format!("failed to build worker pool: {e}")))?;
    let successes = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = base.clone();
                rng.set_stream(trial);
                // Configuration errors are caught before the loop; per-trial
                // runs on a validated configuration cannot fail.
                u64::from(runner.run(&mut rng).expect("validated configuration"))
            })
            .sum::<u64>()
    });
    let estimate = successes as f64 / config.trials as f64;
    let stderr = (estimate * (1.0 - estimate) / config.trials as f64).sqrt();
    Ok(TrialSummary {
        protocol: config.protocol.id().to_string(),
        parties: config.protocol.parties(),
        n: (config.protocol.parties() == 2).then(|| config.n.unwrap_or(4)),
        detector: config.detector,
        trials: config.trials,
        successes,
        estimate,
        stderr,
        seed: config.seed,
    })
}

/// The closed-form landmark values of both tasks, one struct so callers can
/// print or serialize them together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub two_party_classical_optimum: f64,
    pub two_party_quantum_rate: f64,
    pub two_party_eta_min: f64,
    pub two_party_mu_threshold_at_unit_eta: f64,
    pub hardy_quantum_sum: f64,
    pub hardy_local_bound: f64,
    pub three_party_classical_optimum: f64,
    pub three_party_quantum_rate: f64,
    pub three_party_mu_threshold_at_unit_eta: f64,
    pub three_party_eta_min: f64,
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = [
            (
                "two-party classical optimum (n=4)",
                self.two_party_classical_optimum,
            ),
            ("two-party quantum rate (n=4)", self.two_party_quantum_rate),
            ("two-party minimum efficiency", self.two_party_eta_min),
            (
                "two-party visibility threshold at eta=1",
                self.two_party_mu_threshold_at_unit_eta,
            ),
            ("bell quantum sum", self.hardy_quantum_sum),
            ("bell local bound", self.hardy_local_bound),
            (
                "three-party classical optimum",
                self.three_party_classical_optimum,
            ),
            ("three-party quantum rate", self.three_party_quantum_rate),
            (
                "three-party visibility threshold at eta=1",
                self.three_party_mu_threshold_at_unit_eta,
            ),
            ("three-party minimum efficiency", self.three_party_eta_min),
        ];
        for (i, (label, value)) in rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{label:<42} {value:.9}")?;
        }
        Ok(())
    }
}

/// Computes every landmark value from the library rather than from literal
/// constants, so the report doubles as an end-to-end consistency check.
pub fn analyze() -> AnalysisReport {
    let (two_party_optimum, _) =
        exhaustive_search_two_party(4).expect("n=4 is within search capacity");
    let (three_party_optimum, _) = exhaustive_search_three_party();
    let three_party_rate = enumerate_three_party()
        .iter()
        .map(three_party_quantum_exact_success)
        .fold(f64::INFINITY, f64::min);
    AnalysisReport {
        two_party_classical_optimum: two_party_optimum.as_f64(),
        two_party_quantum_rate: two_party_quantum_success(4).expect("4 is a valid ring"),
        two_party_eta_min: eta_min_two_party(4).expect("4 is a valid ring"),
        two_party_mu_threshold_at_unit_eta: mu_threshold_two_party(1.0)
            .expect("eta=1 is valid")
            .expect("perfect detectors admit a quantum advantage"),
        hardy_quantum_sum: hardy_sum_quantum(&SetupPair::canonical()),
        hardy_local_bound: f64::from(hardy_local_maximum()),
        three_party_classical_optimum: three_party_optimum.as_f64(),
        three_party_quantum_rate: three_party_rate,
        three_party_mu_threshold_at_unit_eta: mu_threshold_three_party(1.0)
            .expect("eta=1 is valid")
            .expect("perfect detectors admit a quantum advantage"),
        three_party_eta_min: eta_min_three_party(),
    }
}

/// The result of an exhaustive classical strategy search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub parties: u8,
    pub n: Option<u32>,
    /// The optimum success probability as a reduced fraction.
    pub optimum: String,
    pub witness: SearchWitness,
}

/// The first strategy (in scan order) attaining the optimum.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SearchWitness {
    TwoParty { colouring: String },
    ThreeParty { encoding: ThreePartyEncoding },
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parties: {}", self.parties)?;
        if let Some(n) = self.n {
            write!(f, " (n={n})")?;
        }
        writeln!(f)?;
        writeln!(f, "classical optimum: {}", self.optimum)?;
        match &self.witness {
            SearchWitness::TwoParty { colouring } => {
                write!(f, "witness colouring: {colouring}")
            }
            SearchWitness::ThreeParty { encoding } => {
                write!(f, "witness encoding:\n{encoding}")
            }
        }
    }
}

/// Runs the exhaustive search for the requested task. Two-party searches
/// take a ring parameter (default 4); three-party searches take none.
pub fn search_command(parties: u8, n: Option<u32>) -> Result<SearchReport> {
    match parties {
        2 => {
            let ring = n.unwrap_or(4);
            let (optimum, colouring) = exhaustive_search_two_party(ring)?;
            Ok(SearchReport {
                parties: 2,
                n: Some(ring),
                optimum: optimum.to_string(),
                witness: SearchWitness::TwoParty {
                    colouring: colouring.to_string(),
                },
            })
        }
        3 => {
            if n.is_some() {
                return Err(Error::arg(
                    "the ring parameter does not apply to the three-party task",
                ));
            }
            let (optimum, encoding) = exhaustive_search_three_party();
            Ok(SearchReport {
                parties: 3,
                n: None,
                optimum: optimum.to_string(),
                witness: SearchWitness::ThreeParty { encoding },
            })
        }
        other => Err(Error::arg(format!("parties must be 2 or 3, got {other}"))),
    }
}

/// The Bell-sum evaluated three ways: exact quantum value, exhaustive local
/// maximum, and a seeded Monte Carlo run of the classical-spin model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellReport {
    pub quantum_sum: f64,
    pub local_maximum: u32,
    pub spin_model: SpinModelEstimate,
    pub seed: u64,
}

impl fmt::Display for BellReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "quantum sum:   {:.9}", self.quantum_sum)?;
        writeln!(f, "local maximum: {}", self.local_maximum)?;
        write!(
            f,
            "spin model:    {:.9} (std error {:.9}, {} trials, seed {})",
            self.spin_model.estimate, self.spin_model.std_error, self.spin_model.trials, self.seed
        )
    }
}

/// Evaluates the Bell sum at the canonical settings.
pub fn bell_command(trials: u64, seed: u64) -> Result<BellReport> {
    let setup = SetupPair::canonical();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spin_model = hardy_sum_spin_model(&setup, trials, &mut rng)?;
    Ok(BellReport {
        quantum_sum: hardy_sum_quantum(&setup),
        local_maximum: hardy_local_maximum(),
        spin_model,
        seed,
    })
}

/// Where a feasibility-region export landed and how many rows it wrote.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionReport {
    pub out: PathBuf,
    pub points: usize,
    pub boundary_out: PathBuf,
    pub boundary_points: usize,
}

impl fmt::Display for RegionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "wrote {} grid points to {}",
            self.points,
            self.out.display()
        )?;
        write!(
            f,
            "wrote {} boundary points to {}",
            self.boundary_points,
            self.boundary_out.display()
        )
    }
}

/// Writes the feasibility grid as CSV along with a companion
/// `<stem>_boundary` CSV holding the analytic visibility threshold at each
/// efficiency for which beating the classical optimum is possible at all.
/// Both tasks use their canonical parameters (ring parameter 4 for the
/// two-party task), matching the analytic boundary curves.
pub fn region_command(parties: u8, resolution: u32, out: &Path) -> Result<RegionReport> {
    let grid = feasibility_grid(parties, resolution, None)?;
    let mut csv = String::from("eta,mu,expected_success,beats_classical\n");
    for point in &grid {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt_sig9(point.eta),
            fmt_sig9(point.mu),
            fmt_sig9(point.expected_success),
            point.beats_classical
        ));
    }
    write_file(out, csv.as_bytes())?;

    let threshold = |eta: f64| -> Result<Option<f64>> {
        match parties {
            2 => mu_threshold_two_party(eta),
            _ => mu_threshold_three_party(eta),
        }
    };
    let mut boundary = String::from("eta,mu_threshold\n");
    let mut boundary_points = 0;
    for i in 0..resolution {
        let eta = f64::from(i) / f64::from(resolution - 1);
        if eta <= 0.0 {
            continue;
        }
        if let Some(mu) = threshold(eta)? {
            boundary.push_str(&format!("{},{}\n", fmt_sig9(eta), fmt_sig9(mu)));
            boundary_points += 1;
        }
    }
    let boundary_out = boundary_path(out);
    write_file(&boundary_out, boundary.as_bytes())?;

    Ok(RegionReport {
        out: out.to_path_buf(),
        points: grid.len(),
        boundary_out,
        boundary_points,
    })
}

/// Inserts `_boundary` before the extension: `region.csv` becomes
/// `region_boundary.csv`.
fn boundary_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("region");
    let name = match out.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_boundary.{ext}"),
        None => format!("{stem}_boundary"),
    };
    out.with_file_name(name)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut file = std::fs::File::create(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    file.write_all(bytes).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

/// Formats a float with nine significant digits, enough to reconstruct the
/// value to well below every tolerance used in the reports.
pub fn fmt_sig9(value: f64) -> String {
    if value == 0.0 {
        return String::from("0.00000000");
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).clamp(0, 17) as usize;
    format!("{value:.decimals$}")
}
