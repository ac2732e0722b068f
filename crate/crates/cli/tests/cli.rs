use std::path::Path;
use std::process::{Command, Output};

use cmrees::g4::G4Fixture;

fn cmrees(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmrees"))
        .args(args)
        .env_remove("CMREES_MAX_GROUP_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

/// The `degree` column and the number of value columns of a chartab TSV.
fn table_shape(tsv: &str) -> (Vec<String>, usize) {
    let mut lines = tsv.lines().skip_while(|l| !l.starts_with("character\t"));
    let header = lines.next().unwrap();
    let degrees = lines.map(|l| l.split('\t').nth(1).unwrap().to_string()).collect();
    (degrees, header.split('\t').count() - 3)
}

#[test]
fn chartab_g4() {
    let o = cmrees(&["chartab", "--group", "G4"]);
    assert!(o.status.success());
    let (degrees, classes) = table_shape(&stdout(&o));
    assert_eq!(degrees, ["1", "1", "1", "2", "2", "2", "3"]);
    assert_eq!(classes, 7);
    assert!(stdout(&o).contains("# invariant_degrees\t4,6\n"));
}

#[test]
fn chartab_cyclic() {
    let o = cmrees(&["chartab", "--group", "Cyc2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let fake: Vec<&str> = v["characters"].as_array().unwrap().iter().map(|c| c["fake_degree"].as_str().unwrap()).collect();
    assert_eq!(fake, ["1", "q"]);

    let o = cmrees(&["chartab", "--group", "Cyc1"]);
    let (degrees, classes) = table_shape(&stdout(&o));
    assert_eq!((degrees.len(), classes), (1, 1));
}

#[test]
fn verify_theorem_a_g4() {
    let o = cmrees(&["verify", "--group", "G4", "--suite", "theorem-a", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let dims: Vec<u64> = v["theorem_a"]["degree_dims_image"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 3, 7, 7, 7, 7, 7, 7, 7]);
    assert_eq!(v["theorem_a"]["equal"], true);
}

#[test]
fn verify_theorem_b_and_identities() {
    let o = cmrees(&["verify", "--group", "G4", "--suite", "theorem-b"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    // theorem-b alone defaults to G4.
    let o = cmrees(&["verify", "--suite", "theorem-b"]);
    assert_eq!(o.status.code(), Some(0));
    let o = cmrees(&["verify", "--group", "Cyc5", "--suite", "identities"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("parabolic-span\t2\t0\ttrue"));
}

#[test]
fn verify_all_suites_from_group_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "s3.toml",
        "name = \"S3\"\nconductor = 1\ndim = 2\ngenerators = [\n    [[\"-1\", \"1\"], [\"0\", \"1\"]],\n    [[\"1\", \"0\"], [\"1\", \"-1\"]],\n]\n",
    );
    let o = cmrees(&["verify", "--group-file", &file]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for suite in ["chartab", "identities", "theorem-a"] {
        assert!(text.contains(&format!("## suite\t{suite}\n")), "{text}");
    }
    assert!(!text.contains("theorem-b"));
}

#[test]
fn conjecture_tables() {
    let dir = tempfile::tempdir().unwrap();
    let singletons = write(dir.path(), "s.toml", "blocks = [[\"1\"], [\"eps\"], [\"eps2\"], [\"eps3\"], [\"eps4\"], [\"eps5\"]]\n");
    let o = cmrees(&["conjecture", "--group", "Cyc6", "--families", &singletons]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("degree\tgr_dim\tfiltered_dim\n0\t1\t1\n1\t5\t6\n"), "{}", stdout(&o));

    let fam = write(dir.path(), "c4.toml", "group = \"Cyc4\"\nblocks = [[\"1\"], [\"eps\", \"eps2\"], [\"eps3\"]]\n");
    let o = cmrees(&["conjecture", "--families", &fam, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let gr: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["gr_dim"].as_u64().unwrap()).collect();
    assert_eq!(gr, [1, 2]);
    assert_eq!(v["rank_one_structure"], true);

    let one = write(dir.path(), "one.toml", "blocks = [[\"1\", \"eps\", \"eps2\", \"chi\", \"chi_eps\", \"chi_eps2\", \"theta\"]]\n");
    let o = cmrees(&["conjecture", "--group", "G4", "--families", &one]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("0\t1\t1\n1\t0\t1\n2\t0\t1\n"), "{}", stdout(&o));
}

#[test]
fn deterministic_reports() {
    let dir = tempfile::tempdir().unwrap();
    let fam = write(dir.path(), "c4.toml", "blocks = [[\"1\"], [\"eps\", \"eps2\"], [\"eps3\"]]\n");
    let runs: [&[&str]; 5] = [
        &["chartab", "--group", "G(2,1,2)"],
        &["verify", "--group", "G4", "--format", "json"],
        &["verify", "--group", "S3", "--suite", "identities", "--suite", "theorem-a"],
        &["conjecture", "--group", "Cyc4", "--families", &fam, "--format", "json"],
        &["groups"],
    ];
    for args in runs {
        let a = cmrees(args);
        let b = cmrees(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_file_matches_stdout_and_formats_agree() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = cmrees(&["verify", "--group", "Cyc3", "--suite", "theorem-a", "--format", "json", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();

    let tsv = stdout(&cmrees(&["verify", "--group", "Cyc3", "--suite", "theorem-a"]));
    let rows: Vec<(u64, u64)> = tsv
        .lines()
        .skip_while(|l| *l != "degree\timage\trees")
        .skip(1)
        .take_while(|l| !l.starts_with('#'))
        .map(|l| {
            let f: Vec<u64> = l.split('\t').map(|x| x.parse().unwrap()).collect();
            (f[1], f[2])
        })
        .collect();
    let image = json["theorem_a"]["degree_dims_image"].as_array().unwrap();
    let rees = json["theorem_a"]["degree_dims_rees"].as_array().unwrap();
    assert_eq!(rows.len(), image.len());
    for (i, (a, b)) in rows.iter().enumerate() {
        assert_eq!(Some(*a), image[i].as_u64());
        assert_eq!(Some(*b), rees[i].as_u64());
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_family = write(dir.path(), "f.toml", "blocks = [[\"1\"], [\"eps\"]]\n");
    let cases: [&[&str]; 7] = [
        &["chartab"],
        &["chartab", "--group", "G99"],
        &["chartab", "--group", "G4", "--group-file", "x.toml"],
        &["verify", "--group", "G4", "--suite", "bogus"],
        &["verify", "--group", "Cyc3", "--suite", "theorem-b"],
        &["conjecture", "--group", "Cyc3", "--families", &bad_family],
        &["chartab", "--group-file", "/nonexistent/group.toml"],
    ];
    for args in cases {
        assert_eq!(cmrees(args).status.code(), Some(2), "{args:?}");
    }

    let o = Command::new(env!("CARGO_BIN_EXE_cmrees"))
        .args(["chartab", "--group", "G4"])
        .env("CMREES_MAX_GROUP_ORDER", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_cmrees"))
        .args(["chartab", "--group", "G4"])
        .env("CMREES_MAX_GROUP_ORDER", "24")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn failing_check_exits_1_with_witness() {
    let mut f = G4Fixture::bundled().unwrap();
    f.weights.get_mut("heart").unwrap().insert("q3+".into(), 10);
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "g4.toml", &f.render());
    let o = cmrees(&["verify", "--suite", "theorem-b", "--fixture", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("FAIL: theorem-b: "));
    assert!(stdout(&o).contains("# passed\tfalse"));

    // A stale checksum is a configuration error.
    let stale = f.render().replace("q3+\" = 10", "q3+\" = 12");
    let path = write(dir.path(), "stale.toml", &stale);
    assert_eq!(cmrees(&["verify", "--suite", "theorem-b", "--fixture", &path]).status.code(), Some(2));
}
