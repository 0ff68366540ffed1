//! Plain-text formats: the edge-list graph format and the certificate
//! serialization. Both parsers report positions and reject malformed input;
//! writers emit canonical bytes so round-trips are stable.
//!
//! Graph format: first line `n m`, then `m` lines `u v` with `0 <= u < v < n`,
//! sorted lexicographically in canonical files.
//!
//! Certificate format: a `certificate v1 <kind>` header, one field per line,
//! and a closing `end`. Rationals are `p/q` or plain integers; bounds are
//! `scale base num den` quadruples meaning `scale * base^(num/den)`.

use crate::certificate::*;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::handset::{Finger, HandsetCert, PalmLink};
use crate::numeric::{format_rat, parse_rat, Bound, Rat};
use crate::pattern::CopyMap;
use std::fmt::Write as _;

pub fn write_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Hosts use quadratic bitset adjacency, so parsers refuse vertex counts
/// that would allocate far beyond desk scale.
pub const MAX_PARSED_VERTICES: usize = 20_000;

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
    let mut parts = header.split_whitespace();
    let n: usize = parse_field(parts.next(), 1, "vertex count")?;
    let m: usize = parse_field(parts.next(), 1, "edge count")?;
    if parts.next().is_some() {
        return Err(Error::Parse { line: 1, msg: "trailing tokens after 'n m'".into() });
    }
    if n > MAX_PARSED_VERTICES {
        return Err(Error::Parse {
            line: 1,
            msg: format!("vertex count {n} above the parser ceiling {MAX_PARSED_VERTICES}"),
        });
    }
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    let mut count = 0usize;
    for (idx, raw) in lines {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let u: usize = parse_field(parts.next(), lineno, "edge endpoint")?;
        let v: usize = parse_field(parts.next(), lineno, "edge endpoint")?;
        if parts.next().is_some() {
            return Err(Error::Parse { line: lineno, msg: "trailing tokens after 'u v'".into() });
        }
        if u == v {
            return Err(Error::Parse { line: lineno, msg: format!("loop at vertex {u}") });
        }
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("edge ({u},{v}) out of range for n={n}"),
            });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("duplicate edge ({u},{v})"),
            });
        }
        edges.push((u, v));
        count += 1;
    }
    if count != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("header declared {m} edges, found {count}"),
        });
    }
    Graph::from_edges(n, &edges)
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Parse { line, msg: format!("missing {what}") })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what}: '{tok}'"),
    })
}

fn write_bound(out: &mut String, name: &str, b: &Bound) {
    let _ = writeln!(
        out,
        "bound {name} {} {} {} {}",
        format_rat(&b.scale),
        format_rat(&b.base),
        b.num,
        b.den
    );
}

fn write_set(out: &mut String, name: &str, vs: &[usize]) {
    let _ = write!(out, "set {name}");
    for v in vs {
        let _ = write!(out, " {v}");
    }
    let _ = writeln!(out);
}

fn write_copy(out: &mut String, copy: &CopyMap) {
    let edges = copy.pattern.edges();
    let _ = writeln!(out, "pattern {} {}", copy.pattern.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "pedge {u} {v}");
    }
    for (p, h) in copy.map.iter().enumerate() {
        let _ = writeln!(out, "map {p} {h}");
    }
}

pub fn write_certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "certificate v1 {}", cert.kind());
    match cert {
        Certificate::StableSet(c) => {
            write_set(&mut out, "vertices", &c.vertices);
            write_bound(&mut out, "min-size", &c.min_size);
        }
        Certificate::Clique(c) => {
            write_set(&mut out, "vertices", &c.vertices);
            write_bound(&mut out, "min-size", &c.min_size);
        }
        Certificate::SparseSet(c) => {
            write_set(&mut out, "vertices", &c.vertices);
            write_bound(&mut out, "min-size", &c.min_size);
            let _ = writeln!(out, "rat edge-coeff {}", format_rat(&c.edge_coeff));
            if let Some(pv) = &c.per_vertex_coeff {
                let _ = writeln!(out, "rat per-vertex-coeff {}", format_rat(pv));
            }
        }
        Certificate::DensePair(c) => {
            write_set(&mut out, "w1", &c.w1);
            write_set(&mut out, "w2", &c.w2);
            write_bound(&mut out, "min-size", &c.min_size);
            let _ = writeln!(out, "rat eps {}", format_rat(&c.eps));
            let _ = writeln!(out, "flag per-vertex-nonadj {}", c.per_vertex_nonadj as u8);
            let _ = writeln!(out, "flag total-nonedges {}", c.total_nonedges as u8);
        }
        Certificate::CliqueCountBound(c) => {
            let _ = writeln!(out, "int h {}", c.h);
            let _ = writeln!(out, "int count {}", c.count);
            write_bound(&mut out, "min-count", &c.min_count);
        }
        Certificate::CompleteBipartite(c) => {
            write_set(&mut out, "big", &c.big);
            write_set(&mut out, "small", &c.small);
            write_bound(&mut out, "min-big", &c.min_big);
            write_bound(&mut out, "min-small", &c.min_small);
        }
        Certificate::AnticompleteBlockade(c) => {
            let _ = writeln!(out, "int min-length {}", c.min_length);
            write_bound(&mut out, "min-width", &c.min_width);
            for block in &c.blocks {
                write_set(&mut out, "block", block);
            }
        }
        Certificate::RainbowCopy(c) => {
            write_copy(&mut out, &c.copy);
            for block in &c.blocks {
                write_set(&mut out, "block", block);
            }
        }
        Certificate::InducedCopy(c) => {
            let _ = writeln!(out, "flag complemented {}", c.complemented as u8);
            write_copy(&mut out, &c.copy);
        }
        Certificate::Handset(c) => {
            let _ = writeln!(out, "int s {}", c.s);
            let _ = writeln!(out, "int t {}", c.t);
            let _ = writeln!(out, "int min-length {}", c.min_length);
            write_bound(&mut out, "min-width", &c.min_width);
            if let Some(sp) = &c.sparsity_coeff {
                write_bound(&mut out, "sparsity", sp);
            }
            let _ = writeln!(out, "flag equicardinal {}", c.equicardinal as u8);
            for &p in &c.palms {
                let _ = writeln!(out, "palm {p}");
            }
            for block in &c.blocks {
                write_set(&mut out, "block", block);
            }
            for (p, per_block) in c.fingers.iter().enumerate() {
                for (j, fs) in per_block.iter().enumerate() {
                    for f in fs {
                        let _ = writeln!(out, "finger {p} {j} {} {}", f.b, f.c);
                    }
                }
            }
            for link in &c.links {
                for &(x, y) in &link.inner {
                    let _ = writeln!(out, "link {} {} {x} {y}", link.pi, link.pj);
                }
            }
        }
    }
    out.push_str("end\n");
    out
}

/// Line-oriented accumulator for the certificate parser.
#[derive(Default)]
struct Fields {
    sets: Vec<(String, Vec<usize>)>,
    bounds: Vec<(String, Bound)>,
    rats: Vec<(String, Rat)>,
    ints: Vec<(String, u128)>,
    flags: Vec<(String, bool)>,
    blocks: Vec<Vec<usize>>,
    palms: Vec<usize>,
    pattern: Option<(usize, usize)>,
    pedges: Vec<(usize, usize)>,
    map_entries: Vec<(usize, usize)>,
    fingers: Vec<(usize, usize, usize, usize)>,
    links: Vec<(usize, usize, usize, usize)>,
}

impl Fields {
    fn set(&self, name: &str) -> Option<&Vec<usize>> {
        self.sets.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
    fn bound(&self, name: &str) -> Option<&Bound> {
        self.bounds.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
    fn rat(&self, name: &str) -> Option<&Rat> {
        self.rats.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
    fn int(&self, name: &str) -> Option<u128> {
        self.ints.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
    fn flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
    let mut hp = header.split_whitespace();
    if hp.next() != Some("certificate") || hp.next() != Some("v1") {
        return Err(Error::Parse { line: 1, msg: "expected 'certificate v1 <kind>'".into() });
    }
    let kind = hp
        .next()
        .ok_or_else(|| Error::Parse { line: 1, msg: "missing certificate kind".into() })?
        .to_string();
    if hp.next().is_some() {
        return Err(Error::Parse { line: 1, msg: "trailing tokens in header".into() });
    }
    let mut f = Fields::default();
    let mut closed = false;
    for (idx, raw) in lines {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if closed {
            return Err(Error::Parse { line: lineno, msg: "content after 'end'".into() });
        }
        if line == "end" {
            closed = true;
            continue;
        }
        let mut toks = line.split_whitespace();
        let tag = toks.next().unwrap();
        match tag {
            "set" => {
                let name: String = parse_field(toks.next(), lineno, "set name")?;
                let mut vs = Vec::new();
                for tok in toks.by_ref() {
                    vs.push(tok.parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("bad vertex '{tok}'"),
                    })?);
                }
                if name == "block" {
                    f.blocks.push(vs);
                } else {
                    f.sets.push((name, vs));
                }
            }
            "bound" => {
                let name: String = parse_field(toks.next(), lineno, "bound name")?;
                let scale = parse_rat_field(toks.next(), lineno)?;
                let base = parse_rat_field(toks.next(), lineno)?;
                let num: i64 = parse_field(toks.next(), lineno, "bound num")?;
                let den: u32 = parse_field(toks.next(), lineno, "bound den")?;
                if den == 0 {
                    return Err(Error::Parse { line: lineno, msg: "bound den must be >= 1".into() });
                }
                if !num::Signed::is_positive(&base) {
                    return Err(Error::Parse { line: lineno, msg: "bound base must be positive".into() });
                }
                f.bounds.push((name, Bound { scale, base, num, den }));
            }
            "rat" => {
                let name: String = parse_field(toks.next(), lineno, "rational name")?;
                let v = parse_rat_field(toks.next(), lineno)?;
                f.rats.push((name, v));
            }
            "int" => {
                let name: String = parse_field(toks.next(), lineno, "int name")?;
                let v: u128 = parse_field(toks.next(), lineno, "int value")?;
                f.ints.push((name, v));
            }
            "flag" => {
                let name: String = parse_field(toks.next(), lineno, "flag name")?;
                let v: u8 = parse_field(toks.next(), lineno, "flag value")?;
                f.flags.push((name, v != 0));
            }
            "palm" => {
                let v: usize = parse_field(toks.next(), lineno, "palm vertex")?;
                f.palms.push(v);
            }
            "pattern" => {
                let n: usize = parse_field(toks.next(), lineno, "pattern size")?;
                let m: usize = parse_field(toks.next(), lineno, "pattern edges")?;
                f.pattern = Some((n, m));
            }
            "pedge" => {
                let u: usize = parse_field(toks.next(), lineno, "pattern edge")?;
                let v: usize = parse_field(toks.next(), lineno, "pattern edge")?;
                f.pedges.push((u, v));
            }
            "map" => {
                let p: usize = parse_field(toks.next(), lineno, "map entry")?;
                let h: usize = parse_field(toks.next(), lineno, "map entry")?;
                f.map_entries.push((p, h));
            }
            "finger" => {
                let p: usize = parse_field(toks.next(), lineno, "finger palm")?;
                let j: usize = parse_field(toks.next(), lineno, "finger block")?;
                let b: usize = parse_field(toks.next(), lineno, "finger b")?;
                let c: usize = parse_field(toks.next(), lineno, "finger c")?;
                f.fingers.push((p, j, b, c));
            }
            "link" => {
                let pi: usize = parse_field(toks.next(), lineno, "link palm")?;
                let pj: usize = parse_field(toks.next(), lineno, "link palm")?;
                let x: usize = parse_field(toks.next(), lineno, "link interior")?;
                let y: usize = parse_field(toks.next(), lineno, "link interior")?;
                f.links.push((pi, pj, x, y));
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown field '{other}'"),
                })
            }
        }
        if toks.next().is_some() {
            return Err(Error::Parse { line: lineno, msg: "trailing tokens".into() });
        }
    }
    if !closed {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: "missing 'end'".into(),
        });
    }
    assemble(&kind, f)
}

fn parse_rat_field(tok: Option<&str>, line: usize) -> Result<Rat> {
    let tok = tok.ok_or_else(|| Error::Parse { line, msg: "missing rational".into() })?;
    parse_rat(tok).ok_or_else(|| Error::Parse { line, msg: format!("bad rational '{tok}'") })
}

fn build_copy(f: &Fields) -> Result<CopyMap> {
    let (n, m) = f
        .pattern
        .ok_or_else(|| Error::Parse { line: 0, msg: "missing pattern header".into() })?;
    if n > MAX_PARSED_VERTICES {
        return Err(Error::Parse {
            line: 0,
            msg: format!("pattern size {n} above the parser ceiling {MAX_PARSED_VERTICES}"),
        });
    }
    if f.pedges.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("pattern declared {m} edges, found {}", f.pedges.len()),
        });
    }
    let pattern = Graph::from_edges(n, &f.pedges)
        .map_err(|e| Error::Parse { line: 0, msg: format!("bad pattern: {e}") })?;
    let mut map = vec![usize::MAX; n];
    for &(p, h) in &f.map_entries {
        if p >= n || map[p] != usize::MAX {
            return Err(Error::Parse {
                line: 0,
                msg: format!("bad or repeated map entry for pattern vertex {p}"),
            });
        }
        map[p] = h;
    }
    if map.contains(&usize::MAX) {
        return Err(Error::Parse { line: 0, msg: "incomplete copy map".into() });
    }
    Ok(CopyMap { pattern, map })
}

fn need_set(f: &Fields, name: &str) -> Result<Vec<usize>> {
    f.set(name)
        .cloned()
        .ok_or_else(|| Error::Parse { line: 0, msg: format!("missing set '{name}'") })
}

fn need_bound(f: &Fields, name: &str) -> Result<Bound> {
    f.bound(name)
        .cloned()
        .ok_or_else(|| Error::Parse { line: 0, msg: format!("missing bound '{name}'") })
}

fn need_rat(f: &Fields, name: &str) -> Result<Rat> {
    f.rat(name)
        .cloned()
        .ok_or_else(|| Error::Parse { line: 0, msg: format!("missing rational '{name}'") })
}

fn assemble(kind: &str, f: Fields) -> Result<Certificate> {
    match kind {
        "stable-set" => Ok(Certificate::StableSet(StableSetCert {
            vertices: need_set(&f, "vertices")?,
            min_size: need_bound(&f, "min-size")?,
        })),
        "clique" => Ok(Certificate::Clique(CliqueCert {
            vertices: need_set(&f, "vertices")?,
            min_size: need_bound(&f, "min-size")?,
        })),
        "sparse-set" => Ok(Certificate::SparseSet(SparseSetCert {
            vertices: need_set(&f, "vertices")?,
            min_size: need_bound(&f, "min-size")?,
            edge_coeff: need_rat(&f, "edge-coeff")?,
            per_vertex_coeff: f.rat("per-vertex-coeff").cloned(),
        })),
        "dense-pair" => Ok(Certificate::DensePair(DensePairCert {
            w1: need_set(&f, "w1")?,
            w2: need_set(&f, "w2")?,
            min_size: need_bound(&f, "min-size")?,
            eps: need_rat(&f, "eps")?,
            per_vertex_nonadj: f.flag("per-vertex-nonadj").unwrap_or(false),
            total_nonedges: f.flag("total-nonedges").unwrap_or(false),
        })),
        "clique-count" => Ok(Certificate::CliqueCountBound(CliqueCountCert {
            h: f.int("h").ok_or_else(|| Error::Parse { line: 0, msg: "missing h".into() })?
                as usize,
            count: f
                .int("count")
                .ok_or_else(|| Error::Parse { line: 0, msg: "missing count".into() })?,
            min_count: need_bound(&f, "min-count")?,
        })),
        "complete-bipartite" => Ok(Certificate::CompleteBipartite(CompleteBipartiteCert {
            big: need_set(&f, "big")?,
            small: need_set(&f, "small")?,
            min_big: need_bound(&f, "min-big")?,
            min_small: need_bound(&f, "min-small")?,
        })),
        "anticomplete-blockade" => {
            let min_length = f
                .int("min-length")
                .ok_or_else(|| Error::Parse { line: 0, msg: "missing min-length".into() })?
                as usize;
            let min_width = need_bound(&f, "min-width")?;
            Ok(Certificate::AnticompleteBlockade(AnticompleteBlockadeCert {
                blocks: f.blocks,
                min_length,
                min_width,
            }))
        }
        "rainbow-copy" => Ok(Certificate::RainbowCopy(RainbowCopyCert {
            copy: build_copy(&f)?,
            blocks: f.blocks,
        })),
        "induced-copy" => Ok(Certificate::InducedCopy(InducedCopyCert {
            copy: build_copy(&f)?,
            complemented: f.flag("complemented").unwrap_or(false),
        })),
        "handset" => {
            let s = f.int("s").ok_or_else(|| Error::Parse { line: 0, msg: "missing s".into() })?
                as usize;
            let t = f.int("t").ok_or_else(|| Error::Parse { line: 0, msg: "missing t".into() })?
                as usize;
            let palms = f.palms.clone();
            let blocks = f.blocks.clone();
            let mut fingers = vec![vec![Vec::new(); blocks.len()]; palms.len()];
            for &(p, j, b, c) in &f.fingers {
                if p >= palms.len() || j >= blocks.len() {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("finger references palm {p} block {j} out of range"),
                    });
                }
                fingers[p][j].push(Finger { b, c });
            }
            let mut link_map: std::collections::BTreeMap<(usize, usize), Vec<(usize, usize)>> =
                Default::default();
            for &(pi, pj, x, y) in &f.links {
                link_map.entry((pi, pj)).or_default().push((x, y));
            }
            let links = link_map
                .into_iter()
                .map(|((pi, pj), inner)| PalmLink { pi, pj, inner })
                .collect();
            Ok(Certificate::Handset(HandsetCert {
                blocks,
                palms,
                fingers,
                links,
                s,
                t,
                min_length: f.int("min-length").unwrap_or(0) as usize,
                min_width: need_bound(&f, "min-width")?,
                sparsity_coeff: f.bound("sparsity").cloned(),
                equicardinal: f.flag("equicardinal").unwrap_or(false),
            }))
        }
        other => Err(Error::Parse {
            line: 1,
            msg: format!("unknown certificate kind '{other}'"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::numeric::{rat, rat_int};

    #[test]
    fn graph_roundtrip_is_byte_identical() {
        let g = generate::gnp(12, 0.4, 3).unwrap();
        let text = write_graph(&g);
        let g2 = read_graph(&text).unwrap();
        assert_eq!(g, g2);
        assert_eq!(write_graph(&g2), text);
    }

    #[test]
    fn p3_from_text() {
        let g = read_graph("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g, generate::path(3));
    }

    #[test]
    fn malformed_inputs_carry_line_numbers() {
        match read_graph("3 2\n0 1\n0 1\n") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("duplicate"));
            }
            other => panic!("expected duplicate-edge error, got {other:?}"),
        }
        match read_graph("2 1\n0 0\n") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("loop"));
            }
            other => panic!("expected loop error, got {other:?}"),
        }
        assert!(read_graph("").is_err());
        assert!(read_graph("2 5\n0 1\n").is_err());
        assert!(read_graph("x y\n").is_err());
    }

    #[test]
    fn certificate_roundtrips() {
        let certs = vec![
            Certificate::StableSet(StableSetCert {
                vertices: vec![0, 2, 4],
                min_size: Bound::of(rat_int(10), rat(1, 3), 5, 2),
            }),
            Certificate::DensePair(DensePairCert {
                w1: vec![0, 1],
                w2: vec![2, 3],
                min_size: Bound::exact(rat(3, 2)),
                eps: rat(1, 5),
                per_vertex_nonadj: true,
                total_nonedges: false,
            }),
            Certificate::CliqueCountBound(CliqueCountCert {
                h: 3,
                count: 60,
                min_count: Bound::exact(rat_int(60)),
            }),
            Certificate::AnticompleteBlockade(AnticompleteBlockadeCert {
                blocks: vec![vec![0, 1], vec![2], vec![]],
                min_length: 3,
                min_width: Bound::exact(rat_int(0)),
            }),
            Certificate::InducedCopy(InducedCopyCert {
                copy: CopyMap {
                    pattern: generate::path(3),
                    map: vec![4, 5, 6],
                },
                complemented: true,
            }),
        ];
        for cert in certs {
            let text = write_certificate(&cert);
            let parsed = parse_certificate(&text).unwrap();
            let text2 = write_certificate(&parsed);
            assert_eq!(text, text2, "round-trip for {}", cert.kind());
        }
    }

    #[test]
    fn certificate_parser_rejects_junk() {
        assert!(parse_certificate("").is_err());
        assert!(parse_certificate("certificate v2 clique\nend\n").is_err());
        assert!(parse_certificate("certificate v1 nonsense\nend\n").is_err());
        assert!(parse_certificate("certificate v1 clique\nset vertices 0 1\n").is_err());
        assert!(
            parse_certificate("certificate v1 clique\nset vertices 0 1\nbound min-size 1 1 0 0\nend\n")
                .is_err()
        );
    }
}
