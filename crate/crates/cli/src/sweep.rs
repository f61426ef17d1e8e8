//! Grid sweeps: enumerate instances in canonical ascending order, shard the
//! grid across workers, merge shards back in order, and summarize. Output is
//! byte-identical for any worker count because items are enumerated once and
//! every record is computed from its item alone.

use crate::records::{self, Caps, TheoremId};
use crate::report::{ReportFormat, ReportRecord};
use anyhow::{bail, ensure, Context, Result};
use binomlab::{is_prime_trial, nat};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Hard ceiling on grid cells (and on any single range span) per sweep.
pub const CELL_CAP: usize = 2_000_000;
pub const MAX_WORKERS: u64 = 256;

#[derive(clap::Args, Debug, Default)]
pub struct SweepArgs {
    /// Theorem id: thm21, lucas_corollary, bailey_np_rp, bailey_digits,
    /// apostol, mestrovic, or power_explorer.
    #[arg(long)]
    pub theorem: Option<String>,
    /// Flat key = value file with the same keys as these flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub p_min: Option<u64>,
    #[arg(long)]
    pub p_max: Option<u64>,
    #[arg(long)]
    pub n_min: Option<u64>,
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long)]
    pub m_min: Option<u64>,
    #[arg(long)]
    pub m_max: Option<u64>,
    #[arg(long)]
    pub r_min: Option<u64>,
    #[arg(long)]
    pub r_max: Option<u64>,
    #[arg(long)]
    pub high_n_min: Option<u64>,
    #[arg(long)]
    pub high_n_max: Option<u64>,
    #[arg(long)]
    pub high_r_min: Option<u64>,
    #[arg(long)]
    pub high_r_max: Option<u64>,
    #[arg(long)]
    pub alpha_min: Option<u32>,
    #[arg(long)]
    pub alpha_max: Option<u32>,
    #[arg(long)]
    pub d_min: Option<u64>,
    #[arg(long)]
    pub d_max: Option<u64>,
    #[arg(long)]
    pub q_min: Option<u64>,
    #[arg(long)]
    pub q_max: Option<u64>,
    #[arg(long)]
    pub k_min: Option<u32>,
    #[arg(long)]
    pub k_max: Option<u32>,
    /// Search bound per cell: mestrovic default 50, power_explorer default 8.
    #[arg(long)]
    pub bound: Option<u64>,
    /// Keep only prime p cells. thm21 sweeps composite p otherwise (those
    /// cells are expected to fail); theorems that require a prime p filter
    /// regardless.
    #[arg(long)]
    pub primes_only: bool,
    /// Workers sharding the grid; the report is identical for any count.
    #[arg(long)]
    pub workers: Option<u64>,
}

const KNOWN_KEYS: &[&str] = &[
    "theorem", "p-min", "p-max", "n-min", "n-max", "m-min", "m-max", "r-min", "r-max",
    "high-n-min", "high-n-max", "high-r-min", "high-r-max", "alpha-min", "alpha-max",
    "d-min", "d-max", "q-min", "q-max", "k-min", "k-max", "bound", "primes-only",
    "workers", "format", "output",
];

#[derive(Default)]
struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let mut values = BTreeMap::new();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("{}:{}: expected key = value", path.display(), index + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            ensure!(
                KNOWN_KEYS.contains(&key),
                "{}:{}: unknown key {key:?}",
                path.display(),
                index + 1
            );
            ensure!(
                values.insert(key.to_string(), value.to_string()).is_none(),
                "{}:{}: duplicate key {key:?}",
                path.display(),
                index + 1
            );
        }
        Ok(Self { values })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn get_parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::error::Error + Send + Sync + 'static,
    {
        self.get(key)
            .map(|v| {
                v.parse::<T>()
                    .with_context(|| format!("config key {key}: cannot parse {v:?}"))
            })
            .transpose()
    }
}

/// One grid cell; `run_item` turns it into exactly one record.
#[derive(Clone, Debug)]
pub enum WorkItem {
    Thm21 { p: u64, n: u64 },
    LucasCorollary { p: u64, n: u64, m: u64 },
    BaileyNpRp { p: u64, n: u64, r: u64 },
    BaileyDigits { p: u64, high_n: u64, high_r: u64, low_n: u64, low_r: u64 },
    Apostol { p: u64, alpha: u32, n: u64 },
    Mestrovic { d: u64, q: u64, bound: u64 },
    PowerExplorer { p: u64, k: u32, bound: u64 },
}

#[derive(Debug)]
pub struct SweepPlan {
    pub items: Vec<WorkItem>,
    pub workers: u64,
    /// Format/output the config file asked for; flags still win in main.
    pub config_format: Option<ReportFormat>,
    pub config_output: Option<PathBuf>,
}

/// An inclusive range assembled from flags, config file, and defaults.
fn resolve_range(
    flag: (Option<u64>, Option<u64>),
    config: &ConfigFile,
    key: &str,
    default_lo: Option<u64>,
    default_hi: Option<u64>,
    theorem: &str,
) -> Result<(u64, u64)> {
    let lo = match flag.0 {
        Some(v) => Some(v),
        None => config.get_parsed::<u64>(&format!("{key}-min"))?,
    };
    let hi = match flag.1 {
        Some(v) => Some(v),
        None => config.get_parsed::<u64>(&format!("{key}-max"))?,
    };
    let lo = lo
        .or(default_lo)
        .with_context(|| format!("sweep {theorem} requires --{key}-min"))?;
    let hi = hi
        .or(default_hi)
        .with_context(|| format!("sweep {theorem} requires --{key}-max"))?;
    ensure!(lo <= hi, "--{key}-min {lo} exceeds --{key}-max {hi}");
    ensure!(
        hi - lo < CELL_CAP as u64,
        "--{key} range spans more than {CELL_CAP} values; shrink it"
    );
    Ok((lo, hi))
}

fn push_capped(items: &mut Vec<WorkItem>, item: WorkItem) -> Result<()> {
    ensure!(
        items.len() < CELL_CAP,
        "sweep grid exceeds {CELL_CAP} cells; shrink the ranges"
    );
    items.push(item);
    Ok(())
}

pub fn plan(args: &SweepArgs, caps: &Caps) -> Result<SweepPlan> {
    let config = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let theorem_raw = match &args.theorem {
        Some(t) => t.clone(),
        None => config
            .get("theorem")
            .map(str::to_string)
            .context("sweep needs --theorem or a theorem = line in the config file")?,
    };
    let theorem = TheoremId::parse(&theorem_raw)?;
    let name = theorem.name();

    let bound_flag = match args.bound {
        Some(v) => Some(v),
        None => config.get_parsed::<u64>("bound")?,
    };
    let primes_only = args.primes_only
        || config.get_parsed::<bool>("primes-only")?.unwrap_or(false);
    let workers = match args.workers {
        Some(v) => v,
        None => config.get_parsed::<u64>("workers")?.unwrap_or(1),
    };
    ensure!(
        (1..=MAX_WORKERS).contains(&workers),
        "workers must be in [1, {MAX_WORKERS}]"
    );

    let alpha_range = |default: Option<(u32, u32)>| -> Result<(u32, u32)> {
        let lo = match args.alpha_min {
            Some(v) => Some(v),
            None => config.get_parsed::<u32>("alpha-min")?,
        };
        let hi = match args.alpha_max {
            Some(v) => Some(v),
            None => config.get_parsed::<u32>("alpha-max")?,
        };
        let lo = lo.or(default.map(|d| d.0)).context("sweep apostol requires --alpha-min")?;
        let hi = hi.or(default.map(|d| d.1)).context("sweep apostol requires --alpha-max")?;
        ensure!(lo <= hi, "--alpha-min {lo} exceeds --alpha-max {hi}");
        Ok((lo, hi))
    };
    let k_range = || -> Result<(u32, u32)> {
        let lo = match args.k_min {
            Some(v) => Some(v),
            None => config.get_parsed::<u32>("k-min")?,
        };
        let hi = match args.k_max {
            Some(v) => Some(v),
            None => config.get_parsed::<u32>("k-max")?,
        };
        let (lo, hi) = (lo.unwrap_or(1), hi.unwrap_or(1));
        ensure!(lo <= hi, "--k-min {lo} exceeds --k-max {hi}");
        Ok((lo, hi))
    };

    let mut items = Vec::new();
    match theorem {
        TheoremId::Thm21 => {
            let (p_lo, p_hi) =
                resolve_range((args.p_min, args.p_max), &config, "p", None, None, name)?;
            let (n_lo, n_hi) =
                resolve_range((args.n_min, args.n_max), &config, "n", Some(0), None, name)?;
            ensure!(p_lo >= 2, "p > 1 required");
            ensure!(p_hi <= caps.max_p, "--p-max {p_hi} exceeds --max-p {}", caps.max_p);
            for p in p_lo..=p_hi {
                if primes_only && !is_prime_trial(&nat(p)) {
                    continue;
                }
                for n in n_lo..=n_hi {
                    push_capped(&mut items, WorkItem::Thm21 { p, n })?;
                }
            }
        }
        TheoremId::LucasCorollary => {
            let (p_lo, p_hi) =
                resolve_range((args.p_min, args.p_max), &config, "p", None, None, name)?;
            let (n_lo, n_hi) =
                resolve_range((args.n_min, args.n_max), &config, "n", Some(0), None, name)?;
            let (m_lo, m_hi) = resolve_range(
                (args.m_min, args.m_max),
                &config,
                "m",
                Some(0),
                Some(n_hi),
                name,
            )?;
            ensure!(p_lo >= 2, "p > 1 required");
            ensure!(p_hi <= caps.max_p, "--p-max {p_hi} exceeds --max-p {}", caps.max_p);
            for p in (p_lo..=p_hi).filter(|p| is_prime_trial(&nat(*p))) {
                for n in n_lo..=n_hi {
                    // The checker takes m <= n only.
                    for m in m_lo..=m_hi.min(n) {
                        push_capped(&mut items, WorkItem::LucasCorollary { p, n, m })?;
                    }
                }
            }
        }
        TheoremId::BaileyNpRp => {
            let (p_lo, p_hi) =
                resolve_range((args.p_min, args.p_max), &config, "p", None, None, name)?;
            let (n_lo, n_hi) =
                resolve_range((args.n_min, args.n_max), &config, "n", Some(0), None, name)?;
            let (r_lo, r_hi) = resolve_range(
                (args.r_min, args.r_max),
                &config,
                "r",
                Some(0),
                Some(n_hi),
                name,
            )?;
            ensure!(p_lo >= 5, "{name} requires a prime p >= 5; raise --p-min");
            ensure!(p_hi <= caps.max_p, "--p-max {p_hi} exceeds --max-p {}", caps.max_p);
            for p in (p_lo..=p_hi).filter(|p| is_prime_trial(&nat(*p))) {
                for n in n_lo..=n_hi {
                    for r in r_lo..=r_hi {
                        push_capped(&mut items, WorkItem::BaileyNpRp { p, n, r })?;
                    }
                }
            }
        }
        TheoremId::BaileyDigits => {
            let (p_lo, p_hi) =
                resolve_range((args.p_min, args.p_max), &config, "p", None, None, name)?;
            let (hn_lo, hn_hi) = resolve_range(
                (args.high_n_min, args.high_n_max),
                &config,
                "high-n",
                Some(0),
                None,
                name,
            )?;
            let (hr_lo, hr_hi) = resolve_range(
                (args.high_r_min, args.high_r_max),
                &config,
                "high-r",
                Some(0),
                None,
                name,
            )?;
            ensure!(p_lo >= 5, "{name} requires a prime p >= 5; raise --p-min");
            ensure!(p_hi <= caps.max_p, "--p-max {p_hi} exceeds --max-p {}", caps.max_p);
            // Low digits default to the full [0, p-1] block per prime and are
            // clamped below p when flags narrow them.
            let ln_lo = match args.n_min {
                Some(v) => v,
                None => config.get_parsed::<u64>("n-min")?.unwrap_or(0),
            };
            let ln_hi = match args.n_max {
                Some(v) => Some(v),
                None => config.get_parsed::<u64>("n-max")?,
            };
            let lr_lo = match args.r_min {
                Some(v) => v,
                None => config.get_parsed::<u64>("r-min")?.unwrap_or(0),
            };
            let lr_hi = match args.r_max {
                Some(v) => Some(v),
                None => config.get_parsed::<u64>("r-max")?,
            };
            for p in (p_lo..=p_hi).filter(|p| is_prime_trial(&nat(*p))) {
                for high_n in hn_lo..=hn_hi {
                    for high_r in hr_lo..=hr_hi {
                        for low_n in ln_lo..=ln_hi.unwrap_or(p - 1).min(p - 1) {
                            for low_r in lr_lo..=lr_hi.unwrap_or(p - 1).min(p - 1) {
                                push_capped(
                                    &mut items,
                                    WorkItem::BaileyDigits { p, high_n, high_r, low_n, low_r },
                                )?;
                            }
                        }
                    }
                }
            }
        }
        TheoremId::Apostol => {
            let (p_lo, p_hi) =
                resolve_range((args.p_min, args.p_max), &config, "p", None, None, name)?;
            let (n_lo, n_hi) =
                resolve_range((args.n_min, args.n_max), &config, "n", Some(0), None, name)?;
            let (a_lo, a_hi) = alpha_range(Some((1, 1)))?;
            ensure!(p_lo >= 2, "p > 1 required");
            ensure!(a_lo >= 1, "apostol requires alpha >= 1; raise --alpha-min");
            ensure!(p_hi <= caps.max_p, "--p-max {p_hi} exceeds --max-p {}", caps.max_p);
            for p in (p_lo..=p_hi).filter(|p| is_prime_trial(&nat(*p))) {
                for alpha in a_lo..=a_hi {
                    for n in n_lo..=n_hi {
                        push_capped(&mut items, WorkItem::Apostol { p, alpha, n })?;
                    }
                }
            }
        }
        TheoremId::Mestrovic => {
            let (d_lo, d_hi) =
                resolve_range((args.d_min, args.d_max), &config, "d", None, None, name)?;
            let (q_lo, q_hi) =
                resolve_range((args.q_min, args.q_max), &config, "q", None, None, name)?;
            ensure!(d_lo >= 2 && q_lo >= 2, "{name} requires d >= 2 and q >= 2");
            ensure!(q_hi <= caps.max_p, "--q-max {q_hi} exceeds --max-p {}", caps.max_p);
            let bound = bound_flag.unwrap_or(50);
            for d in d_lo..=d_hi {
                for q in q_lo..=q_hi {
                    push_capped(&mut items, WorkItem::Mestrovic { d, q, bound })?;
                }
            }
        }
        TheoremId::PowerExplorer => {
            let (p_lo, p_hi) =
                resolve_range((args.p_min, args.p_max), &config, "p", None, None, name)?;
            let (k_lo, k_hi) = k_range()?;
            ensure!(p_lo >= 2, "p > 1 required");
            ensure!(p_hi <= caps.max_p, "--p-max {p_hi} exceeds --max-p {}", caps.max_p);
            let bound = bound_flag.unwrap_or(8);
            for p in (p_lo..=p_hi).filter(|p| is_prime_trial(&nat(*p))) {
                for k in k_lo..=k_hi {
                    push_capped(&mut items, WorkItem::PowerExplorer { p, k, bound })?;
                }
            }
        }
    }

    let config_format = config.get("format").map(ReportFormat::parse_name).transpose()?;
    let config_output = config.get("output").map(PathBuf::from);
    Ok(SweepPlan { items, workers, config_format, config_output })
}

pub fn run_item(item: &WorkItem, caps: &Caps) -> Result<ReportRecord> {
    match *item {
        WorkItem::Thm21 { p, n } => records::record_thm21(&nat(n), &nat(p), caps),
        WorkItem::LucasCorollary { p, n, m } => {
            records::record_lucas_corollary(&nat(n), &nat(m), &nat(p), caps)
        }
        WorkItem::BaileyNpRp { p, n, r } => {
            records::record_bailey_np_rp(&nat(n), &nat(r), &nat(p), caps)
        }
        WorkItem::BaileyDigits { p, high_n, high_r, low_n, low_r } => records::record_bailey_digits(
            &nat(high_n),
            &nat(high_r),
            &nat(low_n),
            &nat(low_r),
            &nat(p),
            caps,
        ),
        WorkItem::Apostol { p, alpha, n } => records::record_apostol(&nat(n), &nat(p), alpha, caps),
        WorkItem::Mestrovic { d, q, bound } => {
            records::record_mestrovic(&nat(d), &nat(q), bound, caps)
        }
        WorkItem::PowerExplorer { p, k, bound } => {
            records::record_power_explorer(&nat(p), k, bound, caps)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Summary {
    pub checked: u64,
    pub held: u64,
    pub failed: u64,
    pub unexpected: u64,
}

impl Summary {
    pub fn line(&self) -> String {
        format!(
            "checked={} held={} failed={} unexpected={}",
            self.checked, self.held, self.failed, self.unexpected
        )
    }
}

pub struct SweepOutcome {
    pub records: Vec<ReportRecord>,
    pub summary: Summary,
    pub exit: u8,
}

/// A failed record is unexpected unless the failure is the theorem's own
/// content: composite moduli must fail thm21, and a falsifier exists to
/// produce counterexamples.
fn failure_is_unexpected(item: &WorkItem) -> bool {
    match item {
        WorkItem::Thm21 { p, .. } => is_prime_trial(&nat(*p)),
        WorkItem::Mestrovic { .. } => false,
        _ => true,
    }
}

pub fn execute(plan: &SweepPlan, caps: &Caps) -> Result<SweepOutcome> {
    let records = run_items(&plan.items, plan.workers, caps)?;
    let mut summary = Summary { checked: 0, held: 0, failed: 0, unexpected: 0 };
    for (item, record) in plan.items.iter().zip(&records) {
        summary.checked += 1;
        match record.holds {
            Some(true) => summary.held += 1,
            Some(false) => {
                summary.failed += 1;
                if failure_is_unexpected(item) {
                    summary.unexpected += 1;
                }
            }
            None => {}
        }
    }
    let exit = if summary.unexpected > 0 { 3 } else { 0 };
    Ok(SweepOutcome { records, summary, exit })
}

fn run_items(items: &[WorkItem], workers: u64, caps: &Caps) -> Result<Vec<ReportRecord>> {
    if items.is_empty() {
        return Ok(Vec::new());
    }
    let worker_count = usize::try_from(workers).unwrap_or(1).clamp(1, items.len());
    let chunk_len = items.len().div_ceil(worker_count);
    let shards: Vec<Result<Vec<ReportRecord>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk_len)
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|item| run_item(item, caps))
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|handle| handle.join().expect("sweep worker panicked"))
            .collect()
    });
    let mut merged = Vec::with_capacity(items.len());
    for shard in shards {
        merged.extend(shard?);
    }
    Ok(merged)
}
