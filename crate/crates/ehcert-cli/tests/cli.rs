//! End-to-end checks of the command line surface: exit codes, file formats,
//! and the generate/certify/verify round trip.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ehcert"))
}

fn write_temp(dir: &std::path::Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ehcert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn generate_cycle_emits_edge_list() {
    let out = bin().args(["generate", "cycle", "5"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("5 5\n"));
}

#[test]
fn certify_k50_roundtrips_through_verify() {
    let dir = tempdir();
    let graph = bin().args(["generate", "complete", "50"]).output().unwrap();
    let graph_path = write_temp(&dir, "k50.txt", &String::from_utf8(graph.stdout).unwrap());
    let forest_path = write_temp(&dir, "forest.txt", "2 1\n0 1\n");
    let trace_path = dir.join("trace.json");
    let out = bin()
        .args([
            "certify",
            graph_path.to_str().unwrap(),
            "--forest",
            forest_path.to_str().unwrap(),
            "-s",
            "1",
            "-t",
            "2",
            "--seed",
            "7",
            "--trace",
            trace_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let cert_text = String::from_utf8(out.stdout).unwrap();
    assert!(cert_text.starts_with("certificate v1 clique"));
    let cert_path = write_temp(&dir, "cert.txt", &cert_text);
    let verify = bin()
        .args([
            "verify",
            cert_path.to_str().unwrap(),
            graph_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(verify.status.success());
    let trace = std::fs::read_to_string(&trace_path).unwrap();
    assert!(trace.contains("\"seed\": 7"));
}

#[test]
fn verify_rejects_tampered_certificate() {
    let dir = tempdir();
    let graph_path = write_temp(&dir, "c5.txt", "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    // claims {0,1} is a stable set, but 0-1 is an edge of C5
    let cert_path = write_temp(
        &dir,
        "bad.txt",
        "certificate v1 stable-set\nset vertices 0 1\nbound min-size 2 1 0 1\nend\n",
    );
    let out = bin()
        .args([
            "verify",
            cert_path.to_str().unwrap(),
            graph_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("violation"));
}

#[test]
fn malformed_graph_reports_line() {
    let dir = tempdir();
    let graph_path = write_temp(&dir, "dup.txt", "3 2\n0 1\n0 1\n");
    let cert_path = write_temp(
        &dir,
        "c.txt",
        "certificate v1 stable-set\nset vertices 0\nbound min-size 1 1 0 1\nend\n",
    );
    let out = bin()
        .args([
            "verify",
            cert_path.to_str().unwrap(),
            graph_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn inconclusive_runs_exit_with_code_2() {
    let dir = tempdir();
    // sparse path beside a big clique, with overrides that make the budget
    // fail and the descent land without dense structure
    let path15 = bin().args(["generate", "path", "15"]).output().unwrap();
    let mut text = String::from_utf8(path15.stdout).unwrap();
    // append a K20 on fresh vertices by rewriting the header and edges
    let mut edges: Vec<(usize, usize)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split_whitespace();
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    for u in 15..35usize {
        for v in (u + 1)..35 {
            edges.push((u, v));
        }
    }
    text = format!("35 {}
", edges.len());
    for (u, v) in edges {
        text.push_str(&format!("{u} {v}
"));
    }
    let graph_path = write_temp(&dir, "mix.txt", &text);
    let forest_path = write_temp(&dir, "forest2.txt", "2 1
0 1
");
    let out = bin()
        .args([
            "certify",
            graph_path.to_str().unwrap(),
            "--forest",
            forest_path.to_str().unwrap(),
            "-s",
            "1",
            "-t",
            "2",
            "--override",
            "c=2",
            "--override",
            "eta=1/4",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn traces_are_identical_across_processes() {
    let dir = tempdir();
    let gnp = bin()
        .args(["generate", "gnp", "36", "0.5", "--seed", "4"])
        .output()
        .unwrap();
    let graph_path = write_temp(&dir, "gnp36.txt", &String::from_utf8(gnp.stdout).unwrap());
    let forest_path = write_temp(&dir, "forest3.txt", "2 1
0 1
");
    let run = |trace_name: &str| {
        let trace_path = dir.join(trace_name);
        let out = bin()
            .args([
                "certify",
                graph_path.to_str().unwrap(),
                "--forest",
                forest_path.to_str().unwrap(),
                "-s",
                "1",
                "-t",
                "2",
                "--seed",
                "11",
                "--trace",
                trace_path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.code() == Some(0) || out.status.code() == Some(2));
        std::fs::read_to_string(trace_path).unwrap()
    };
    let a = run("t1.json");
    let b = run("t2.json");
    assert_eq!(a, b, "trace must replay bit-for-bit across processes");
}

#[test]
fn experiments_emit_deterministic_csv() {
    let dir = tempdir();
    let cfg_path = write_temp(
        &dir,
        "exp.txt",
        "experiment clique-count\ngenerator gnp\nn 30\np 0.3\neps 1/10\nh k3\nseeds 1 2\n",
    );
    let run = || {
        let out = bin()
            .args(["experiments", cfg_path.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a, b);
    assert!(a.lines().count() >= 3);
}
