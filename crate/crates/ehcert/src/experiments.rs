//! Batch experiment harness: seeded parameter grids, verification before
//! tallying, and a deterministic CSV summary. Wall-clock timings go to the
//! progress sink, never into the CSV, so identical seeds give identical
//! bytes.

use crate::certificate::{verify_certificate, Certificate};
use crate::error::{Error, Result};
use crate::dichotomies;
use crate::generate;
use crate::graph::Graph;
use crate::io::write_certificate;
use crate::limits::SearchLimits;
use crate::numeric::{parse_rat, Rat};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Gnp,
    Bipartite,
    Cliques,
    Cograph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operation {
    StableOrDensePair,
    CliqueCountOrSparse,
    SparseOrDense,
    StableOrBipartite,
    Ramsey,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub operation: Operation,
    pub generator: GeneratorKind,
    pub ns: Vec<usize>,
    pub ps: Vec<f64>,
    pub eps: Vec<Rat>,
    pub pattern: String,
    pub t: usize,
    pub seeds: Vec<u64>,
    pub out: Option<String>,
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut operation = None;
    let mut generator = GeneratorKind::Gnp;
    let mut ns = Vec::new();
    let mut ps = Vec::new();
    let mut eps = Vec::new();
    let mut pattern = "p3".to_string();
    let mut t = 3usize;
    let mut seeds = Vec::new();
    let mut out = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let key = toks.next().unwrap();
        let bad = |msg: String| Error::Parse { line: lineno, msg };
        match key {
            "experiment" => {
                operation = Some(match toks.next() {
                    Some("stable-dense") => Operation::StableOrDensePair,
                    Some("clique-count") => Operation::CliqueCountOrSparse,
                    Some("sparse-dense") => Operation::SparseOrDense,
                    Some("bipartite") => Operation::StableOrBipartite,
                    Some("ramsey") => Operation::Ramsey,
                    other => return Err(bad(format!("unknown operation {other:?}"))),
                });
            }
            "generator" => {
                generator = match toks.next() {
                    Some("gnp") => GeneratorKind::Gnp,
                    Some("bipartite") => GeneratorKind::Bipartite,
                    Some("cliques") => GeneratorKind::Cliques,
                    Some("cograph") => GeneratorKind::Cograph,
                    other => return Err(bad(format!("unknown generator {other:?}"))),
                };
            }
            "n" => {
                for tok in toks {
                    ns.push(tok.parse().map_err(|_| bad(format!("bad n '{tok}'")))?);
                }
            }
            "p" => {
                for tok in toks {
                    ps.push(tok.parse().map_err(|_| bad(format!("bad p '{tok}'")))?);
                }
            }
            "eps" => {
                for tok in toks {
                    eps.push(parse_rat(tok).ok_or_else(|| bad(format!("bad eps '{tok}'")))?);
                }
            }
            "h" => pattern = toks.next().ok_or_else(|| bad("missing pattern".into()))?.to_string(),
            "t" => t = parse_usize(toks.next(), lineno)?,
            "seeds" => {
                for tok in toks {
                    seeds.push(tok.parse().map_err(|_| bad(format!("bad seed '{tok}'")))?);
                }
            }
            "out" => out = toks.next().map(|s| s.to_string()),
            other => return Err(bad(format!("unknown key '{other}'"))),
        }
    }
    let operation = operation.ok_or_else(|| Error::Parse {
        line: 1,
        msg: "missing 'experiment <op>' line".into(),
    })?;
    if ns.is_empty() || seeds.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "grid must list at least one n and explicit seeds".into(),
        });
    }
    if ps.is_empty() {
        ps.push(0.5);
    }
    if eps.is_empty() {
        eps.push(crate::numeric::rat(1, 10));
    }
    Ok(ExperimentConfig {
        operation,
        generator,
        ns,
        ps,
        eps,
        pattern,
        t,
        seeds,
        out,
    })
}

fn parse_usize(tok: Option<&str>, line: usize) -> Result<usize> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse { line, msg: "bad integer".into() })
}

pub fn pattern_by_name(name: &str) -> Result<Graph> {
    Ok(match name {
        "p3" => generate::path(3),
        "p4" => generate::path(4),
        "p5" => generate::path(5),
        "k3" => Graph::complete(3),
        "k4" => Graph::complete(4),
        "c4" => generate::cycle(4),
        "c5" => generate::cycle(5),
        other => {
            return Err(Error::Precondition(format!(
                "unknown pattern '{other}' (try p3, p4, p5, k3, k4, c4, c5)"
            )))
        }
    })
}

fn generate_case(cfg: &ExperimentConfig, n: usize, p: f64, seed: u64) -> Result<Graph> {
    Ok(match cfg.generator {
        GeneratorKind::Gnp => generate::gnp(n, p, seed)?,
        GeneratorKind::Bipartite => generate::random_bipartite(n, p, seed),
        GeneratorKind::Cliques => {
            // cliques of a seeded size profile summing to about n
            let mut sizes = Vec::new();
            let mut left = n;
            let mut x = seed;
            while left > 0 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let s = 2 + (x >> 33) as usize % 8;
                let s = s.min(left);
                sizes.push(s);
                left -= s;
            }
            generate::disjoint_cliques(&sizes)
        }
        GeneratorKind::Cograph => generate::random_cograph(n, seed),
    })
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub n: usize,
    pub p: f64,
    pub eps: Rat,
    pub seed: u64,
    pub branch: String,
    pub slack: String,
}

#[derive(Clone, Debug)]
pub struct Summary {
    pub rows: Vec<CaseResult>,
    pub csv: String,
}

/// Runs the full grid. Every produced certificate is verified before it is
/// tallied; a verification failure aborts with the offending certificate
/// serialized into the error.
pub fn run_experiments(cfg: &ExperimentConfig, limits: &SearchLimits) -> Result<Summary> {
    let h = pattern_by_name(&cfg.pattern)?;
    let mut rows = Vec::new();
    for &n in &cfg.ns {
        for &p in &cfg.ps {
            for eps in &cfg.eps {
                for &seed in &cfg.seeds {
                    let g = generate_case(cfg, n, p, seed)?;
                    let outcome: std::result::Result<Certificate, Error> = match cfg.operation {
                        Operation::StableOrDensePair => {
                            dichotomies::stable_or_dense_pair(&g, &h, eps, cfg.t, limits)
                        }
                        Operation::CliqueCountOrSparse => {
                            dichotomies::clique_count_or_sparse_set(&g, h.n(), eps, limits)
                        }
                        Operation::SparseOrDense => {
                            dichotomies::sparse_or_dense_pair(&g, &h, eps, limits)
                        }
                        Operation::StableOrBipartite => {
                            dichotomies::stable_or_complete_bipartite(&g, &h, eps, limits)
                        }
                        Operation::Ramsey => {
                            match crate::exact::ramsey_extract(&g, cfg.t, cfg.t) {
                                Ok(crate::exact::RamseyOutcome::Stable(s)) => {
                                    Ok(Certificate::StableSet(crate::certificate::StableSetCert {
                                        vertices: s,
                                        min_size: crate::numeric::Bound::exact(
                                            crate::numeric::rat_int(cfg.t as u64),
                                        ),
                                    }))
                                }
                                Ok(crate::exact::RamseyOutcome::Clique(c)) => {
                                    Ok(Certificate::Clique(crate::certificate::CliqueCert {
                                        vertices: c,
                                        min_size: crate::numeric::Bound::exact(
                                            crate::numeric::rat_int(cfg.t as u64),
                                        ),
                                    }))
                                }
                                Err(e) => Err(e),
                            }
                        }
                    };
                    let (branch, slack) = match outcome {
                        Ok(cert) => {
                            let rep = verify_certificate(&cert, &g);
                            if !rep.pass() {
                                return Err(Error::Verification(format!(
                                    "case n={n} p={p} eps={eps} seed={seed} failed: {}\noffending certificate:\n{}",
                                    rep.violations.join("; "),
                                    write_certificate(&cert)
                                )));
                            }
                            (cert.kind().to_string(), slack_of(&cert))
                        }
                        Err(Error::Precondition(msg)) => {
                            (format!("precondition:{}", first_word(&msg)), String::new())
                        }
                        Err(Error::FoundCopy(_)) => ("found-copy".to_string(), String::new()),
                        Err(e) => return Err(e),
                    };
                    rows.push(CaseResult {
                        n,
                        p,
                        eps: eps.clone(),
                        seed,
                        branch,
                        slack,
                    });
                }
            }
        }
    }
    let mut csv = String::from("op,generator,h,n,p,eps,seed,branch,slack\n");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{:?},{:?},{},{},{},{},{},{},{}",
            cfg.operation,
            cfg.generator,
            cfg.pattern,
            r.n,
            r.p,
            crate::numeric::format_rat(&r.eps),
            r.seed,
            r.branch,
            r.slack
        );
    }
    Ok(Summary { rows, csv })
}

fn first_word(msg: &str) -> String {
    msg.split([':', ' ']).next().unwrap_or("err").to_string()
}

/// Bound slack: achieved size relative to the claimed bound, as a rational
/// string, for size-style certificates.
fn slack_of(cert: &Certificate) -> String {
    use crate::numeric::rat_int;
    let pair = |len: usize, bound: &crate::numeric::Bound| -> String {
        let achieved = rat_int(len as u64);
        format!("{}vs{}", achieved, bound)
    };
    match cert {
        Certificate::StableSet(c) => pair(c.vertices.len(), &c.min_size),
        Certificate::Clique(c) => pair(c.vertices.len(), &c.min_size),
        Certificate::SparseSet(c) => pair(c.vertices.len(), &c.min_size),
        Certificate::DensePair(c) => pair(c.w1.len().min(c.w2.len()), &c.min_size),
        Certificate::CliqueCountBound(c) => format!("count={}", c.count),
        Certificate::CompleteBipartite(c) => pair(c.small.len(), &c.min_small),
        _ => String::new(),
    }
}
