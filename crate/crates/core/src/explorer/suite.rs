//! Sampled property checks across all modules. Each check runs on
//! `samples` cases; case `i` draws from stream `i` of the configured seed, so
//! results do not depend on thread scheduling.

use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampling::{frame_rng, gl3_params, grid_diagonal, log_uniform, positive_lower, uniform_below, Range};
use super::scan::{ConfigEcho, ScanConfig};
use crate::error::{Error, Result};
use crate::exact_linalg::{int, rat, Rational, SquareMatrix};
use crate::flags::{are_opposed, borel_from_lower, flag_equal, is_in_b_pos, tilde_map, BorelPoint, FlagPairClass};
use crate::gl_small::{
    gl2_membership, gl2_torus_matrix, gl3_conditions, gl3_conditions_reconciled, gl3_g_entries, GL2Params,
};
use crate::pimap::{
    eigen_split, pi, pi_prime, verify_unique_borel, verify_unique_borel_neg, verify_unique_borel_neg_within,
    verify_unique_borel_within,
};
use crate::pinning::{
    g_pos_from_factors, is_in_g_pos, is_in_g_pos_solid, is_in_u_neg, is_in_u_pos, refactor_positive,
    unipotent_from_word, y_gen, ChevalleyWord, ReducedWord, Sign, TorusElement,
};
use crate::tori::{certificate, intersect_with, same_torus, torus_element, TorusFrame};

/// Deliberate defects for checking that the suite notices them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mutation {
    #[default]
    None,
    /// Adds 1 to the top-right entry of every tilde-map result.
    CorruptTilde,
}

impl Mutation {
    fn name(self) -> Option<String> {
        match self {
            Mutation::None => None,
            Mutation::CorruptTilde => Some("corrupt_tilde".into()),
        }
    }

    fn tilde(self, u: &SquareMatrix) -> Result<SquareMatrix> {
        let mut t = tilde_map(u)?;
        if self == Mutation::CorruptTilde {
            let n = t.n();
            let v = t.get(0, n - 1) + Rational::one();
            t.set(0, n - 1, v);
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub module: String,
    pub property: String,
    pub samples: usize,
    pub failures: usize,
    /// Reported but not counted against the suite.
    pub informational: bool,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: ConfigEcho,
    pub mutation: Option<String>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    /// Modules with at least one failing (non-informational) check.
    pub fn failing_modules(&self) -> Vec<String> {
        let mut m: Vec<String> = self
            .checks
            .iter()
            .filter(|c| c.failures > 0 && !c.informational)
            .map(|c| c.module.clone())
            .collect();
        m.dedup();
        m
    }
}

type Outcome = std::result::Result<(), String>;

fn fail(msg: impl Into<String>) -> Outcome {
    Err(msg.into())
}

fn ensure(cond: bool, msg: &str) -> Outcome {
    if cond {
        Ok(())
    } else {
        fail(msg)
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn run(
    module: &str,
    property: &str,
    cfg: &ScanConfig,
    salt: u64,
    check: impl Fn(&mut ChaCha8Rng) -> Outcome + Sync,
) -> CheckResult {
    let outcomes: Vec<Outcome> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            // a distinct stream per (property, case)
            let mut rng = frame_rng(cfg.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15), i as u64);
            check(&mut rng)
        })
        .collect();
    let failures = outcomes.iter().filter(|o| o.is_err()).count();
    let first_failure = outcomes
        .iter()
        .enumerate()
        .find_map(|(i, o)| o.as_ref().err().map(|m| format!("case {i}: {m}")));
    CheckResult {
        module: module.into(),
        property: property.into(),
        samples: cfg.samples,
        failures,
        informational: false,
        first_failure,
    }
}

fn pick<'a, T>(rng: &mut impl RngCore, items: &'a [T]) -> &'a T {
    &items[uniform_below(rng, items.len() as u64) as usize]
}

fn g_pos_sample(rng: &mut impl RngCore, n: usize, range: &Range) -> Result<SquareMatrix> {
    let word = ReducedWord::standard(n);
    let up = ChevalleyWord::new(
        word.clone(),
        (0..word.len()).map(|_| range.sample(rng)).collect(),
        Sign::Upper,
    )?;
    let lo = ChevalleyWord::new(
        word.clone(),
        (0..word.len()).map(|_| range.sample(rng)).collect(),
        Sign::Lower,
    )?;
    let t = TorusElement::new((0..n).map(|_| range.sample(rng)).collect())?;
    g_pos_from_factors(&up, &t, &lo)
}

fn pair_sample(rng: &mut impl RngCore, cfg: &ScanConfig) -> Result<FlagPairClass> {
    let (u, _) = positive_lower(rng, cfg.n, &cfg.param_range);
    let (v, _) = positive_lower(rng, cfg.n, &cfg.param_range);
    FlagPairClass::from_unipotents(&u, &v)
}

fn frame_of(pair: &FlagPairClass, mutation: Mutation) -> Result<TorusFrame> {
    intersect_with(pair.first(), pair.second(), |z| mutation.tilde(z))
}

/// Diagonal with strictly decreasing entries and `chi_i` in `[4, 256]`.
fn descending_diagonal(rng: &mut impl RngCore, n: usize) -> TorusElement {
    let range = (int(4), int(256));
    let mut d = vec![Rational::one()];
    for _ in 1..n {
        let next = &d[0] * log_uniform(rng, &range.0, &range.1);
        d.insert(0, next);
    }
    TorusElement::new(d).expect("positive")
}

/// Runs every sampled property for `cfg.n`.
pub fn run_property_suite(cfg: &ScanConfig, mutation: Mutation) -> Result<SuiteReport> {
    cfg.validate()?;
    let n = cfg.n;
    let range = &cfg.param_range;
    let mut checks = Vec::new();

    // pinning
    let words = if n <= 5 {
        ReducedWord::all(n)
    } else {
        vec![ReducedWord::standard(n), ReducedWord::standard(n).reversed()]
    };
    checks.push(run("pinning", "reduced_word_independence", cfg, 1, |rng| {
        let (w1, w2) = (pick(rng, &words), pick(rng, &words));
        let params = (0..w1.len()).map(|_| range.sample(rng)).collect();
        let u = unipotent_from_word(&ChevalleyWord::new(w1.clone(), params, Sign::Lower).map_err(err)?);
        ensure(
            is_in_u_pos(&u, Sign::Lower).map_err(err)?.verdict,
            "product not in U-_{>0}",
        )?;
        let c = refactor_positive(&u, Sign::Lower, w2).map_err(err)?;
        ensure(unipotent_from_word(&c) == u, "refactorization does not recompose")
    }));
    checks.push(run("pinning", "semigroup", cfg, 2, |rng| {
        let g1 = g_pos_sample(rng, n, range).map_err(err)?;
        let g2 = g_pos_sample(rng, n, range).map_err(err)?;
        ensure(is_in_g_pos(&g1).verdict, "factor product not totally positive")?;
        ensure(
            is_in_g_pos(&(&g1 * &g2)).verdict,
            "product of two members is not a member",
        )
    }));
    checks.push(run("pinning", "transpose_symmetry", cfg, 3, |rng| {
        let (u, _) = positive_lower(rng, n, range);
        let i = 1 + uniform_below(rng, (n - 1) as u64) as usize;
        let shifted = &u * &y_gen(n, i, &-range.sample(rng)).map_err(err)?;
        for m in [u, shifted] {
            let lower = is_in_u_pos(&m, Sign::Lower).map_err(err)?.verdict;
            let upper = is_in_u_pos(&m.transpose(), Sign::Upper).map_err(err)?.verdict;
            ensure(lower == upper, "lower and transposed upper verdicts differ")?;
        }
        Ok(())
    }));
    checks.push(run("pinning", "inversion_law", cfg, 4, |rng| {
        let word = ReducedWord::standard(n);
        let params: Vec<Rational> = (0..word.len()).map(|_| range.sample(rng)).collect();
        let u = unipotent_from_word(&ChevalleyWord::new(word.clone(), params.clone(), Sign::Lower).map_err(err)?);
        let inv = u.inverse().map_err(err)?;
        // reversed word, negated parameters
        let mut direct = SquareMatrix::identity(n);
        for (&i, a) in word.letters().iter().zip(&params).rev() {
            direct = &direct * &y_gen(n, i, &-a.clone()).map_err(err)?;
        }
        ensure(direct == inv, "inverse is not the reversed negated product")?;
        ensure(
            is_in_u_neg(&inv, Sign::Lower).map_err(err)?.verdict,
            "inverse fails the negative test",
        )?;
        ensure(
            !is_in_u_pos(&inv, Sign::Lower).map_err(err)?.verdict,
            "inverse passes the positive test",
        )
    }));
    checks.push(run("pinning", "solid_minors_agree", cfg, 5, |rng| {
        let g = g_pos_sample(rng, n, range).map_err(err)?;
        let (i, j) = (
            uniform_below(rng, n as u64) as usize,
            uniform_below(rng, n as u64) as usize,
        );
        let mut h = g.clone();
        let k = uniform_below(rng, 9) as i64;
        h.set(i, j, g.get(i, j) * rat(8 - k, 4));
        for m in [g, h] {
            ensure(
                is_in_g_pos(&m).verdict == is_in_g_pos_solid(&m).verdict,
                "solid and exhaustive scans differ",
            )?;
        }
        Ok(())
    }));

    // flags
    checks.push(run("flags", "tilde_flag_equality", cfg, 6, |rng| {
        let (u, _) = positive_lower(rng, n, range);
        let z = u.inverse().map_err(err)?;
        let t = mutation.tilde(&z).map_err(err)?;
        ensure(t.is_upper_unitriangular(), "tilde is not upper unitriangular")?;
        let lhs = BorelPoint::standard(n).transform(&z).map_err(err)?;
        let rhs = BorelPoint::anti_standard(n).transform(&t).map_err(err)?;
        ensure(flag_equal(&lhs, &rhs), "u B+ u^-1 != ũ B- ũ^-1")
    }));
    checks.push(run("flags", "canonical_representative_roundtrip", cfg, 7, |rng| {
        let (u, _) = positive_lower(rng, n, range);
        let i = 1 + uniform_below(rng, (n - 1) as u64) as usize;
        let off = &u * &y_gen(n, i, &-(int(8) * range.sample(rng))).map_err(err)?;
        for m in [u, off] {
            let b = borel_from_lower(&m).map_err(err)?;
            ensure(
                is_in_b_pos(&b) == is_in_u_pos(&m, Sign::Lower).map_err(err)?.verdict,
                "flag and unipotent verdicts differ",
            )?;
            let upper = SquareMatrix::from_fn(n, |r, c| {
                if r < c {
                    int(r as i64 - c as i64)
                } else if r == c {
                    int(r as i64 + 2)
                } else {
                    Rational::zero()
                }
            });
            let rescaled = BorelPoint::new(&m * &upper).map_err(err)?;
            ensure(
                rescaled.canonical_lower() == Some(&m),
                "canonical representative not recovered",
            )?;
        }
        Ok(())
    }));
    checks.push(run("flags", "positive_pairs_are_opposed", cfg, 8, |rng| {
        let pair = pair_sample(rng, cfg).map_err(err)?;
        ensure(are_opposed(pair.first(), pair.second()), "pair is not opposed")
    }));

    // tori
    checks.push(run("tori", "conjugation_certificate", cfg, 9, |rng| {
        let pair = pair_sample(rng, cfg).map_err(err)?;
        let f = frame_of(&pair, mutation).map_err(err)?;
        ensure(certificate(&f, pair.first(), pair.second()), "certificate fails")
    }));
    checks.push(injectivity_check(cfg, mutation));
    checks.push(run("tori", "membership_scaling", cfg, 11, |rng| {
        let pair = pair_sample(rng, cfg).map_err(err)?;
        let f = frame_of(&pair, mutation).map_err(err)?;
        let d = grid_diagonal(rng, n, &cfg.grid);
        let lambda = range.sample(rng);
        let a = is_in_g_pos(&torus_element(&f, &d).map_err(err)?).verdict;
        let again = is_in_g_pos(&torus_element(&f, &d).map_err(err)?).verdict;
        let scaled = is_in_g_pos(&torus_element(&f, &d.scale(&lambda).map_err(err)?).map_err(err)?).verdict;
        ensure(a == again && a == scaled, "membership changes under rescaling")
    }));

    // pimap
    checks.push(run("pimap", "spectral_positivity", cfg, 12, |rng| {
        let g = g_pos_sample(rng, n, range).map_err(err)?;
        let e = eigen_split(&g).map_err(err)?;
        ensure(
            e.values.iter().all(|v| v > &Rational::zero()),
            "non-positive eigenvalue",
        )?;
        ensure(
            e.values.windows(2).all(|w| w[0] > w[1]),
            "eigenvalues not strictly decreasing",
        )
    }));
    checks.push(run("pimap", "eigenflag_positivity", cfg, 13, |rng| {
        let g = g_pos_sample(rng, n, range).map_err(err)?;
        let exact = eigen_split(&g).map_err(err)?.exact;
        let pair = pi_prime(&g).map_err(err)?;
        let (b, b1) = (pair.first(), pair.second());
        let ok = if exact {
            verify_unique_borel(&g, b) && verify_unique_borel_neg(&g, b1)
        } else {
            verify_unique_borel_within(&g, b, 1e-9) && verify_unique_borel_neg_within(&g, b1, 1e-9)
        };
        ensure(ok, "eigenflags fail the unique-Borel check")
    }));
    checks.push(run("pimap", "pi_roundtrip", cfg, 14, |rng| {
        let pair = pair_sample(rng, cfg).map_err(err)?;
        let f = frame_of(&pair, mutation).map_err(err)?;
        let d = descending_diagonal(rng, n);
        let g = torus_element(&f, &d).map_err(err)?;
        if !is_in_g_pos(&g).verdict {
            return Ok(());
        }
        ensure(same_torus(&pi(&g).map_err(err)?, &f), "pi does not recover the frame")
    }));
    checks.push(run("pimap", "centralizer_in_positive_part", cfg, 15, |rng| {
        let g = g_pos_sample(rng, n, range).map_err(err)?;
        let pair = pi_prime(&g).map_err(err)?;
        let f = frame_of(&pair, mutation).map_err(err)?;
        ensure(f.provenance().is_some(), "frame lacks provenance")?;
        ensure(same_torus(&pi(&g).map_err(err)?, &f), "pi(g) differs from iota(pi'(g))")
    }));

    // closed forms
    if n == 2 {
        checks.push(run("gl_small", "gl2_criterion", cfg, 16, |rng| {
            let p = GL2Params::new(range.sample(rng), range.sample(rng)).map_err(err)?;
            let d = grid_diagonal(rng, 2, &cfg.grid);
            let (t, s) = (&d.diag()[0], &d.diag()[1]);
            let m = gl2_torus_matrix(&p, t, s).map_err(err)?;
            let f = frame_of(&p.pair(), mutation).map_err(err)?;
            ensure(
                m == torus_element(&f, &d).map_err(err)?,
                "closed form differs from the frame",
            )?;
            ensure(
                gl2_membership(t, s).map_err(err)? == is_in_g_pos(&m).verdict,
                "criterion disagrees",
            )
        }));
    }
    if n == 3 {
        checks.extend(gl3_checks(cfg, mutation));
    }

    let passed = checks.iter().all(|c| c.informational || c.failures == 0);
    Ok(SuiteReport {
        config: cfg.echo(),
        mutation: mutation.name(),
        checks,
        passed,
    })
}

const PAIRWISE_LIMIT: usize = 64;

fn injectivity_check(cfg: &ScanConfig, mutation: Mutation) -> CheckResult {
    let frames: Vec<std::result::Result<(FlagPairClass, TorusFrame), String>> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = frame_rng(cfg.seed ^ 10u64.wrapping_mul(0x9E37_79B9_7F4A_7C15), i as u64);
            let pair = pair_sample(&mut rng, cfg).map_err(err)?;
            let f = frame_of(&pair, mutation).map_err(err)?;
            Ok((pair, f))
        })
        .collect();
    let mut failures = 0;
    let mut first_failure = None;
    let mut record = |msg: String| {
        failures += 1;
        first_failure.get_or_insert(msg);
    };
    for (i, x) in frames.iter().enumerate() {
        match x {
            Err(e) => record(format!("case {i}: {e}")),
            Ok((pair, f)) => {
                match frame_of(pair, mutation) {
                    Ok(again) if same_torus(f, &again) => {}
                    _ => record(format!("case {i}: same pair gives different tori")),
                }
                // pairwise comparison is quadratic, so only a prefix is compared
                for (j, y) in frames.iter().enumerate().take(PAIRWISE_LIMIT).skip(i + 1) {
                    if let Ok((other, g)) = y {
                        let same_pair = pair.u() == other.u() && pair.v() == other.v();
                        if same_torus(f, g) != same_pair {
                            record(format!("cases {i},{j}: torus equality does not match pair equality"));
                        }
                    }
                }
            }
        }
    }
    CheckResult {
        module: "tori".into(),
        property: "iota_injective".into(),
        samples: cfg.samples,
        failures,
        informational: false,
        first_failure,
    }
}

fn gl3_sample(rng: &mut ChaCha8Rng, cfg: &ScanConfig) -> (crate::gl_small::GL3Params, TorusElement) {
    let p = gl3_params(rng, &cfg.param_range);
    let d = grid_diagonal(rng, 3, &cfg.grid);
    (p, d)
}

fn gl3_checks(cfg: &ScanConfig, mutation: Mutation) -> Vec<CheckResult> {
    let ordered = |d: &TorusElement| {
        let v = d.diag();
        v[0] > v[1] && v[1] > v[2]
    };
    let mut out = Vec::new();
    out.push(run("gl_small", "gl3_oracle_agreement", cfg, 17, |rng| {
        let (p, d) = gl3_sample(rng, cfg);
        let f = frame_of(&p.pair(), mutation).map_err(err)?;
        let v = d.diag();
        let closed = gl3_g_entries(&p, &v[0], &v[1], &v[2]).map_err(err)?;
        ensure(
            closed == torus_element(&f, &d).map_err(err)?,
            "closed form differs from the frame",
        )
    }));
    out.push(run("gl_small", "gl3_equivalence_reconciled", cfg, 18, |rng| {
        let (p, d) = gl3_sample(rng, cfg);
        let v = d.diag();
        let member = is_in_g_pos(&gl3_g_entries(&p, &v[0], &v[1], &v[2]).map_err(err)?).verdict;
        let predicted = ordered(&d) && {
            let (a, b) = gl3_conditions_reconciled(&p, &v[0], &v[1], &v[2]).map_err(err)?;
            a && b
        };
        ensure(member == predicted, "membership and reconciled conditions disagree")
    }));
    let mut stated = run("gl_small", "gl3_equivalence_stated", cfg, 18, |rng| {
        let (p, d) = gl3_sample(rng, cfg);
        let v = d.diag();
        let member = is_in_g_pos(&gl3_g_entries(&p, &v[0], &v[1], &v[2]).map_err(err)?).verdict;
        let predicted = ordered(&d) && {
            let (a, b) = gl3_conditions(&p, &v[0], &v[1], &v[2]).map_err(err)?;
            a && b
        };
        ensure(member == predicted, "membership and stated conditions disagree")
    });
    stated.informational = true;
    out.push(stated);
    out.push(run("gl_small", "gl3_members_are_ordered", cfg, 19, |rng| {
        let (p, d) = gl3_sample(rng, cfg);
        let v = d.diag();
        let member = is_in_g_pos(&gl3_g_entries(&p, &v[0], &v[1], &v[2]).map_err(err)?).verdict;
        ensure(!member || ordered(&d), "member without t > s > r")
    }));
    out.push(run("gl_small", "gl3_redundant_entries_positive", cfg, 20, |rng| {
        let (p, d) = gl3_sample(rng, cfg);
        if !ordered(&d) {
            return Ok(());
        }
        let v = d.diag();
        let (a, b) = gl3_conditions_reconciled(&p, &v[0], &v[1], &v[2]).map_err(err)?;
        if !(a && b) {
            return Ok(());
        }
        let g = gl3_g_entries(&p, &v[0], &v[1], &v[2]).map_err(err)?;
        let ginv = g.inverse().map_err(err)?;
        let zero = Rational::zero();
        let entries = [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)];
        ensure(
            entries.iter().all(|&(i, j)| g.get(i, j) > &zero),
            "an entry of g is not positive",
        )?;
        ensure(
            ginv.get(0, 0) > &zero && ginv.get(2, 2) > &zero,
            "a diagonal corner of g^-1 is not positive",
        )
    }));
    out
}
