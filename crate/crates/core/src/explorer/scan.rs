//! Scans of the conjectured description of `𝒯 ∩ G_{>0}` for a torus `𝒯` in the
//! positive part: (a) every totally positive element of `𝒯` lies in
//! `S T^1_{>0} S^{-1}`, and (b) `S T^p_{>0} S^{-1}` lies in `G_{>0}` for some
//! `p >= 1`.

use num_traits::One;
use rand_core::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampling::{frame_rng, grid_diagonal, lower_from_params, positive_lower, Range};
use crate::error::{Error, Result};
use crate::exact_linalg::{format_rational, int, parse_rational, rat, Rational};
use crate::flags::FlagPairClass;
use crate::pinning::{is_in_g_pos, is_in_t_p_pos, min_chi, TorusElement};
use crate::tori::{iota, torus_element, TorusFrame};

/// Parameters shared by scans and the property suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub n: usize,
    pub seed: u64,
    /// Total number of sampled diagonals (scans) or sampled cases per
    /// property (suite).
    pub samples: usize,
    /// Range of `t_1, ..., t_{n-1}`; `t_n = 1`.
    pub grid: Range,
    /// Range of the unipotent parameters.
    pub param_range: Range,
    /// Resolution of the minimal-`p` bracket.
    pub p_tol: Rational,
    /// Diagonals sampled for each frame.
    pub diagonals_per_frame: usize,
}

impl ScanConfig {
    pub fn new(n: usize, seed: u64, samples: usize) -> Result<Self> {
        let cfg = ScanConfig {
            n,
            seed,
            samples,
            grid: Range::new(rat(1, 16), int(4096))?,
            param_range: Range::new(rat(1, 4), int(4))?,
            p_tol: rat(1, 64),
            diagonals_per_frame: 100,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Precondition("n must be at least 2".into()));
        }
        if self.samples == 0 || self.diagonals_per_frame == 0 {
            return Err(Error::Precondition("sample counts must be at least 1".into()));
        }
        if self.p_tol <= Rational::from_integer(0.into()) {
            return Err(Error::Precondition("p tolerance must be positive".into()));
        }
        Ok(())
    }

    pub fn frames(&self) -> usize {
        self.samples.div_ceil(self.diagonals_per_frame)
    }

    fn diagonals_in_frame(&self, k: usize) -> usize {
        self.diagonals_per_frame
            .min(self.samples - k * self.diagonals_per_frame)
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            n: self.n,
            seed: self.seed,
            samples: self.samples,
            grid: format!("{}:{}", format_rational(&self.grid.lo), format_rational(&self.grid.hi)),
            param_range: format!(
                "{}:{}",
                format_rational(&self.param_range.lo),
                format_rational(&self.param_range.hi)
            ),
            p_tol: format_rational(&self.p_tol),
            diagonals_per_frame: self.diagonals_per_frame,
        }
    }
}

/// Parses `LO:HI`.
pub fn parse_range(text: &str) -> Result<Range> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected LO:HI, got {text:?}")))?;
    Range::new(parse_rational(lo)?, parse_rational(hi)?)
}

/// The configuration as written into reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub grid: String,
    pub param_range: String,
    pub p_tol: String,
    pub diagonals_per_frame: usize,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_all(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

/// Part (a) outcome for one frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameVerdict {
    pub frame: usize,
    pub u_params: Vec<String>,
    pub v_params: Vec<String>,
    pub samples: usize,
    /// Sampled diagonals whose torus element is totally positive.
    pub members: usize,
    /// Every member has all `chi_i > 1`.
    pub all_members_in_cone: bool,
    /// Smallest `min_i chi_i` over members.
    pub min_chi_member: Option<String>,
}

/// A member of `𝒯 ∩ G_{>0}` outside `S T^1_{>0} S^{-1}`, with everything
/// needed to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    pub seed: u64,
    pub frame: usize,
    pub sample: usize,
    pub u_params: Vec<String>,
    pub v_params: Vec<String>,
    pub diagonal: Vec<String>,
    pub min_chi: String,
}

/// Part (b) bracket for one frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PBracket {
    pub frame: usize,
    pub u_params: Vec<String>,
    pub v_params: Vec<String>,
    pub lower: String,
    pub upper: String,
    pub samples: usize,
    pub members: usize,
    /// Non-member in `T^lower` with the largest `min chi`.
    pub failing_witness: Option<Vec<String>>,
    /// Member in `T^upper` with the smallest `min chi`.
    pub passing_witness: Option<Vec<String>>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub frames: usize,
    pub samples: usize,
    pub members: usize,
    pub counterexamples: usize,
    /// Frames where no sampled diagonal gave a totally positive element.
    pub frames_without_members: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub part: String,
    pub config: ConfigEcho,
    /// `theorem` for `n <= 3`, `evidence` beyond.
    pub status: String,
    pub part_a: Vec<FrameVerdict>,
    pub part_b: Vec<PBracket>,
    pub counterexamples: Vec<Counterexample>,
    pub summary: ScanSummary,
}

struct SampledFrame {
    frame: TorusFrame,
    u_params: Vec<Rational>,
    v_params: Vec<Rational>,
}

fn sample_frame(cfg: &ScanConfig, rng: &mut impl RngCore) -> Result<SampledFrame> {
    let (u, u_params) = positive_lower(rng, cfg.n, &cfg.param_range);
    let (v, v_params) = positive_lower(rng, cfg.n, &cfg.param_range);
    let frame = iota(&FlagPairClass::from_unipotents(&u, &v)?)?;
    Ok(SampledFrame {
        frame,
        u_params,
        v_params,
    })
}

fn status(n: usize) -> String {
    if n <= 3 { "theorem" } else { "evidence" }.to_string()
}

/// Part (a): for sampled frames and diagonals, every totally positive
/// `S d S^{-1}` must have `chi_i(d) > 1` for all `i`.
pub fn scan_conjecture_a(cfg: &ScanConfig) -> Result<ConjectureReport> {
    cfg.validate()?;
    let per_frame: Vec<(FrameVerdict, Vec<Counterexample>)> = (0..cfg.frames())
        .into_par_iter()
        .map(|k| {
            let mut rng = frame_rng(cfg.seed, k as u64);
            let sf = sample_frame(cfg, &mut rng)?;
            let count = cfg.diagonals_in_frame(k);
            let one = Rational::one();
            let mut members = 0;
            let mut min_member: Option<Rational> = None;
            let mut found = Vec::new();
            for j in 0..count {
                let d = grid_diagonal(&mut rng, cfg.n, &cfg.grid);
                if !is_in_g_pos(&torus_element(&sf.frame, &d)?).verdict {
                    continue;
                }
                members += 1;
                let mu = min_chi(&d).expect("n >= 2");
                if !is_in_t_p_pos(&d, &one) {
                    found.push(Counterexample {
                        n: cfg.n,
                        seed: cfg.seed,
                        frame: k,
                        sample: j,
                        u_params: strings(&sf.u_params),
                        v_params: strings(&sf.v_params),
                        diagonal: strings(d.diag()),
                        min_chi: format_rational(&mu),
                    });
                }
                if min_member.as_ref().is_none_or(|m| &mu < m) {
                    min_member = Some(mu);
                }
            }
            Ok((
                FrameVerdict {
                    frame: k,
                    u_params: strings(&sf.u_params),
                    v_params: strings(&sf.v_params),
                    samples: count,
                    members,
                    all_members_in_cone: found.is_empty(),
                    min_chi_member: min_member.as_ref().map(format_rational),
                },
                found,
            ))
        })
        .collect::<Result<_>>()?;

    let mut part_a = Vec::with_capacity(per_frame.len());
    let mut counterexamples = Vec::new();
    for (verdict, found) in per_frame {
        part_a.push(verdict);
        counterexamples.extend(found);
    }
    let summary = ScanSummary {
        frames: part_a.len(),
        samples: cfg.samples,
        members: part_a.iter().map(|f| f.members).sum(),
        counterexamples: counterexamples.len(),
        frames_without_members: part_a.iter().filter(|f| f.members == 0).count(),
    };
    Ok(ConjectureReport {
        part: "a".into(),
        config: cfg.echo(),
        status: status(cfg.n),
        part_a,
        part_b: Vec::new(),
        counterexamples,
        summary,
    })
}

/// Rebuilds a counterexample and confirms that it is a genuine violation.
pub fn replay_counterexample(c: &Counterexample) -> Result<bool> {
    let u = lower_from_params(c.n, &parse_all(&c.u_params)?)?;
    let v = lower_from_params(c.n, &parse_all(&c.v_params)?)?;
    let frame = iota(&FlagPairClass::from_unipotents(&u, &v)?)?;
    let d = TorusElement::new(parse_all(&c.diagonal)?)?;
    Ok(is_in_g_pos(&torus_element(&frame, &d)?).verdict && !is_in_t_p_pos(&d, &Rational::one()))
}

/// Result of the minimal-`p` search on one frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSearch {
    pub lower: Rational,
    pub upper: Rational,
    pub samples: usize,
    pub members: usize,
    pub failing_witness: Option<TorusElement>,
    pub passing_witness: Option<TorusElement>,
    pub warnings: Vec<String>,
}

/// Bisection for the smallest `p >= 1` such that no sampled diagonal in
/// `T^p_{>0}` fails total positivity. The diagonals are drawn from stream
/// `stream` of the configured seed.
pub fn search_minimal_p(cfg: &ScanConfig, frame: &TorusFrame, stream: u64) -> Result<PSearch> {
    let mut rng = frame_rng(cfg.seed, stream);
    search_with_rng(cfg, frame, &mut rng, cfg.diagonals_per_frame)
}

fn search_with_rng(cfg: &ScanConfig, frame: &TorusFrame, rng: &mut impl RngCore, count: usize) -> Result<PSearch> {
    cfg.validate()?;
    let one = Rational::one();
    let g = &cfg.grid;
    // no chi_i of a grid diagonal exceeds this
    let top = [&g.hi / &g.lo, g.hi.clone(), one.clone()]
        .into_iter()
        .max()
        .expect("nonempty");

    // (min chi, member?) for every sampled diagonal
    let mut verdicts = Vec::with_capacity(count);
    for _ in 0..count {
        let d = grid_diagonal(rng, cfg.n, g);
        let member = is_in_g_pos(&torus_element(frame, &d)?).verdict;
        verdicts.push((min_chi(&d).expect("n >= 2"), member, d));
    }
    let members = verdicts.iter().filter(|v| v.1).count();
    let fails_above = |p: &Rational| verdicts.iter().any(|(mu, member, _)| !member && mu > p);

    let mut warnings = Vec::new();
    let (lower, upper) = if g.is_point() {
        warnings.push("degenerate_grid".to_string());
        (one.clone(), top.clone())
    } else if fails_above(&top) {
        warnings.push("no_upper_bound".to_string());
        (top.clone(), top.clone())
    } else if !fails_above(&one) {
        (one.clone(), one.clone())
    } else {
        let (mut lo, mut hi) = (one.clone(), top.clone());
        let two = int(2);
        while &hi - &lo > cfg.p_tol {
            let mid = (&lo + &hi) / &two;
            if fails_above(&mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    };
    if members == 0 {
        warnings.push("no_members_sampled".to_string());
    }

    let failing_witness = verdicts
        .iter()
        .filter(|(mu, member, _)| !member && mu > &lower)
        .max_by(|a, b| a.0.cmp(&b.0))
        .map(|v| v.2.clone());
    let passing_witness = verdicts
        .iter()
        .filter(|(mu, member, _)| *member && mu > &upper)
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|v| v.2.clone());
    Ok(PSearch {
        lower,
        upper,
        samples: count,
        members,
        failing_witness,
        passing_witness,
        warnings,
    })
}

/// Part (b): a minimal-`p` bracket for every sampled frame.
pub fn scan_conjecture_b(cfg: &ScanConfig) -> Result<ConjectureReport> {
    cfg.validate()?;
    let part_b: Vec<PBracket> = (0..cfg.frames())
        .into_par_iter()
        .map(|k| {
            let mut rng = frame_rng(cfg.seed, k as u64);
            let sf = sample_frame(cfg, &mut rng)?;
            let r = search_with_rng(cfg, &sf.frame, &mut rng, cfg.diagonals_in_frame(k))?;
            Ok(PBracket {
                frame: k,
                u_params: strings(&sf.u_params),
                v_params: strings(&sf.v_params),
                lower: format_rational(&r.lower),
                upper: format_rational(&r.upper),
                samples: r.samples,
                members: r.members,
                failing_witness: r.failing_witness.map(|d| strings(d.diag())),
                passing_witness: r.passing_witness.map(|d| strings(d.diag())),
                warnings: r.warnings,
            })
        })
        .collect::<Result<_>>()?;
    let summary = ScanSummary {
        frames: part_b.len(),
        samples: cfg.samples,
        members: part_b.iter().map(|b| b.members).sum(),
        counterexamples: 0,
        frames_without_members: part_b.iter().filter(|b| b.members == 0).count(),
    };
    Ok(ConjectureReport {
        part: "b".into(),
        config: cfg.echo(),
        status: status(cfg.n),
        part_a: Vec::new(),
        part_b,
        counterexamples: Vec::new(),
        summary,
    })
}
