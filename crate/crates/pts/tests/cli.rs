use std::fs;
use std::path::Path;

use pts::cli::run;
use tempfile::tempdir;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn pts(args: &[&str]) -> Out {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pts").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Out { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn ok(args: &[&str]) -> String {
    let o = pts(args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
    o.stdout
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn computed_diagram_has_zero_distance_to_itself() {
    let dir = tempdir().unwrap();
    let cloud = dir.path().join("c.csv");
    let pd = dir.path().join("pd.csv");
    ok(&["gen", "--class", "circle", "-n", "30", "--noise", "0.05", "--seed", "3", "-o", s(&cloud)]);
    ok(&["compute-pd", s(&cloud), "--max-dim", "1", "--max-eps", "3", "-o", s(&pd)]);
    let text = fs::read_to_string(&pd).unwrap();
    assert!(text.starts_with("birth,death,dim,essential\n"));
    assert!(text.lines().any(|l| l.ends_with(",1,0")), "expected an H1 point:\n{text}");
    for m in ["w1", "w2", "bottleneck", "wp:3"] {
        let v: f64 = ok(&["dist", s(&pd), s(&pd), "--metric", m]).trim().parse().unwrap();
        assert_eq!(v, 0.0, "{m}");
    }
}

#[test]
fn stdout_is_used_without_an_output_path() {
    let dir = tempdir().unwrap();
    let cloud = dir.path().join("c.csv");
    fs::write(&cloud, "0,0\n1,0\n").unwrap();
    let text = ok(&["compute-pd", s(&cloud), "--max-dim", "0"]);
    assert_eq!(text, "birth,death,dim,essential\n0,1,0,0\n0,3,0,1\n");
}

#[test]
fn embedding_is_reproducible_and_seed_sensitive() {
    let dir = tempdir().unwrap();
    let pd = dir.path().join("pd.csv");
    fs::write(&pd, "birth,death,dim,essential\n0.1,0.5,1,0\n0.2,0.9,1,0\n0.3,0.4,1,0\n").unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"sigma":0.05,"grid_k":20,"perturb_m":8,"perturb_r":0.02,"subspace_p":3,"seed":0,"margin":0.05}"#).unwrap();
    let (a, b, c) = (dir.path().join("a.pts"), dir.path().join("b.pts"), dir.path().join("c.pts"));
    ok(&["embed", s(&pd), "-o", s(&a), "--config", s(&cfg), "--seed", "5"]);
    ok(&["--threads", "2", "embed", s(&pd), "-o", s(&b), "--config", s(&cfg), "--seed", "5"]);
    ok(&["embed", s(&pd), "-o", s(&c), "--config", s(&cfg), "--seed", "6"]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
    assert_eq!(fs::read(&a).unwrap().len(), 16 + 400 * 3 * 8);
    let d: f64 = ok(&["dist", s(&a), s(&c), "--metric", "ngeo"]).trim().parse().unwrap();
    assert!((0.0..=1.0).contains(&d));
    let self_d: f64 = ok(&["dist", s(&a), s(&a), "--metric", "geo"]).trim().parse().unwrap();
    assert!(self_d <= 1e-9);
    let kp: f64 = ok(&["dist", s(&a), s(&a), "--metric", "kp"]).trim().parse().unwrap();
    assert!((kp - 3.0).abs() <= 1e-9);
}

#[test]
fn failures_exit_nonzero_with_json_on_stderr() {
    let o = pts(&["dist", "/nonexistent/a.csv", "/nonexistent/b.csv", "--metric", "w1"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(o.stderr.trim()).unwrap();
    assert_eq!(v["error"], "io");

    let o = pts(&["dist", "a", "b", "--metric", "nope"]);
    assert_eq!(o.code, 2);
    let v: serde_json::Value = serde_json::from_str(o.stderr.trim()).unwrap();
    assert_eq!(v["error"], "usage");

    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"sigma":0,"grid_k":20,"perturb_m":8,"perturb_r":0.02,"subspace_p":3,"seed":0,"margin":0.05}"#).unwrap();
    let cloud = dir.path().join("c.csv");
    fs::write(&cloud, "0,0\n").unwrap();
    let o = pts(&["compute-pd", s(&cloud), "--config", s(&bad)]);
    assert_eq!(o.code, 1);
    let v: serde_json::Value = serde_json::from_str(o.stderr.trim()).unwrap();
    assert_eq!(v["error"], "validation");
}

#[test]
fn help_and_version_succeed() {
    assert!(ok(&["--help"]).contains("compute-pd"));
    assert!(!ok(&["--version"]).is_empty());
}

#[test]
fn scalar_graph_and_series_inputs() {
    let dir = tempdir().unwrap();
    let edges = dir.path().join("e.csv");
    let values = dir.path().join("v.txt");
    fs::write(&edges, "0,1\n1,2\n").unwrap();
    fs::write(&values, "1\n3\n2\n").unwrap();
    let sub = ok(&["compute-pd", s(&edges), "--kind", "graph", "--values", s(&values)]);
    assert_eq!(sub, "birth,death,dim,essential\n1,3,0,1\n2,3,0,0\n");
    let sup = ok(&["compute-pd", s(&edges), "--kind", "graph", "--values", s(&values), "--direction", "superlevel"]);
    // the maximum is born first and every other vertex joins it on arrival
    assert_eq!(sup.lines().count(), 2, "{sup}");
    assert!(sup.lines().nth(1).unwrap().starts_with("3,") && sup.ends_with(",0,1\n"), "{sup}");

    let series = dir.path().join("s.txt");
    ok(&["gen", "--series", "sine", "--length", "200", "--period", "50", "-o", s(&series)]);
    let pd = ok(&["compute-pd", s(&series), "--kind", "series", "--embed-dim", "2", "--lag", "12"]);
    assert!(pd.lines().any(|l| l.ends_with(",1,0")));
}

#[test]
fn corpus_generation_writes_a_manifest() {
    let dir = tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        ok(&["gen", "--corpus", "--classes", "circle,blob", "--levels", "0.1,0.2", "--trials", "2", "-n", "20", "--seed", "4", "-o", s(d)]);
    }
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(a.join("manifest.json")).unwrap()).unwrap();
    let entries = manifest["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 8);
    for e in entries {
        let f = e["file"].as_str().unwrap();
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap());
    }
    assert!(a.join("blob_l01_t001.csv").exists());
}

#[test]
fn knn_and_gram_on_a_small_corpus() {
    let dir = tempdir().unwrap();
    let root = dir.path();
    let (train, test, emb) = (root.join("train"), root.join("test"), root.join("emb"));
    let mut labels = String::from("file,label\n");
    for (i, class) in ["circle", "blob"].iter().enumerate() {
        for t in 0..2 {
            let cloud = root.join(format!("{class}{t}.xyz"));
            ok(&["gen", "--class", class, "-n", "30", "--noise", "0.02", "--seed", &t.to_string(), "-o", s(&cloud)]);
            let pd = train.join(format!("{class}{t}.csv"));
            ok(&["compute-pd", s(&cloud), "--max-dim", "1", "-o", s(&pd)]);
            labels.push_str(&format!("{class}{t}.csv,{i}\n"));
            labels.push_str(&format!("{class}{t}.pts,{i}\n"));
        }
        let cloud = root.join(format!("{class}q.xyz"));
        ok(&["gen", "--class", class, "-n", "30", "--noise", "0.02", "--seed", "9", "-o", s(&cloud)]);
        ok(&["compute-pd", s(&cloud), "--max-dim", "1", "-o", s(&test.join(format!("{i}_{class}.csv")))]);
    }
    let lp = root.join("labels.csv");
    fs::write(&lp, labels).unwrap();
    let pred = ok(&["knn", "--train", s(&train), "--labels", s(&lp), "--test", s(&test), "--metric", "w1", "--dim", "1"]);
    assert_eq!(pred, "file,label\n0_circle.csv,0\n1_blob.csv,1\n");
    let o = pts(&["knn", "--train", s(&train), "--labels", s(&lp), "--test", s(&test), "--metric", "w1"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("--dim"), "{}", o.stderr);

    let cfg = root.join("cfg.json");
    fs::write(&cfg, r#"{"sigma":0.05,"grid_k":16,"perturb_m":6,"perturb_r":0.02,"subspace_p":2,"seed":0,"margin":0.05}"#).unwrap();
    ok(&["embed", s(&train), "-o", s(&emb), "--dim", "1", "--config", s(&cfg)]);
    assert!(emb.join("scaling.json").exists());
    let gp = root.join("gram.csv");
    let o = pts(&["gram", s(&emb), "--kernel", "kp", "-o", s(&gp), "--labels", s(&lp)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stderr.is_empty());
    let (names, g) = pts::io::read_gram(&gp).unwrap();
    assert_eq!(names.len(), 4);
    for i in 0..4 {
        assert!((g[(i, i)] - 2.0).abs() <= 1e-9);
    }
    assert!(root.join("gram.labels.csv").exists());
    let o = pts(&["gram", s(&emb), "--kernel", "w1", "-o", s(&gp)]);
    assert_eq!(o.code, 1);
}

#[test]
fn both_binaries_share_the_front_end() {
    let dir = tempdir().unwrap();
    let pd = dir.path().join("pd.csv");
    fs::write(&pd, "birth,death,dim,essential\n0,1,0,0\n").unwrap();
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "birth,death,dim,essential\n").unwrap();
    for exe in [env!("CARGO_BIN_EXE_pts"), env!("CARGO_BIN_EXE_pd")] {
        let o = std::process::Command::new(exe).args(["dist", s(&pd), s(&empty), "--metric", "bottleneck"]).output().unwrap();
        assert!(o.status.success());
        assert_eq!(String::from_utf8(o.stdout).unwrap(), "0.5\n");
        let o = std::process::Command::new(exe).args(["dist", s(&pd)]).output().unwrap();
        assert_eq!(o.status.code(), Some(2));
        assert!(String::from_utf8(o.stderr).unwrap().starts_with("{\"error\":\"usage\""));
    }
}
