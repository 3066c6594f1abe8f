use std::fs;
use std::process::{Command, Output};

fn ghost(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghost"))
        .args(args)
        .output()
        .expect("spawn ghost")
}

/// Runs a whitespace-separated command line.
fn run(line: &str) -> Output {
    ghost(&line.split_whitespace().collect::<Vec<_>>())
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dims_json() {
    let o = run("dims --p 5 --N 1 --k 24");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    // weight 24 level 1: two forms, two cusp forms
    assert_eq!(v["d_k"], 2);
    assert_eq!(v["mu0"], 1);
    assert_eq!(v["d_kp"].as_i64().unwrap(), 2 * 2 + v["d_k_new"].as_i64().unwrap());
}

#[test]
fn odd_weight_is_a_usage_error() {
    let o = run("dims --p 5 --N 1 --k 3");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn coeffs_lines() {
    let o = run("coeffs --p 2 --N 1 --comp 0 --from 1 --to 4");
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 4);
    for (j, v) in lines.iter().enumerate() {
        let i = j as i64 + 1;
        assert_eq!(v["i"], i);
        assert_eq!(v["lambda"], i * (i + 1) / 2);
    }
    assert_eq!(lines[0]["zeros"][0]["loc"], "k=14");
}

#[test]
fn slopes_formats() {
    let base = "slopes --p 2 --N 1 --weight k=62 --count 4 --certify";
    let o = run(base);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "6 6 14 14");

    let v: serde_json::Value = serde_json::from_str(stdout(&run(&format!("{base} --json"))).trim()).unwrap();
    assert_eq!(v["slopes"], serde_json::json!(["6", "6", "14", "14"]));

    let csv = stdout(&run(&format!("{base} --csv")));
    assert!(csv.starts_with("i,slope,certified\n1,6,true\n"), "{csv}");
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(run("slopes --p 4 --N 1 --weight k=2 --count 1").status.code(), Some(2));
    assert_eq!(run("slopes --p 2 --N 1 --weight x=2 --count 1").status.code(), Some(2));
    assert_eq!(run("verify --suite nope").status.code(), Some(2));
    assert_eq!(run("frobnicate").status.code(), Some(2));
    // p divides N
    assert_eq!(run("coeffs --p 3 --N 3 --to 2").status.code(), Some(2));
}

#[test]
fn halo_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.csv");
    let o = run(&format!(
        "halo --p 3 --N 1 --center k=0 --vmin 1/3 --vmax 3 --steps 6 --count 3 --out {}",
        path.display()
    ));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("integral radius 3"));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("v,s_1,s_2,s_3"));
    assert_eq!(lines.next(), Some("1/3,2/3,4/3,2"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn wadic_level_one() {
    let o = run("wadic --p 2 --N 1 --count 5");
    assert_eq!(stdout(&o).trim(), "1 2 3 4 5");
}

#[test]
fn verify_and_exit_codes() {
    let o = run("verify --suite bk2 --max 10");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .lines()
        .all(|l| l.starts_with("PASS") || l.starts_with("note")));
}

#[test]
fn compare_fixture_match_and_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    fs::write(&good, r#"{"p":2,"N":1,"k":62,"slopes":["6","6","14","14"]}"#).unwrap();
    let o = ghost(&["compare", "--fixture", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"p":2,"N":1,"k":62,"slopes":["6","7"]}"#).unwrap();
    assert_eq!(
        ghost(&["compare", "--fixture", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\n\"p\": 2,\n oops").unwrap();
    let o = ghost(&["compare", "--fixture", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn modified_variant_uses_bundled_data() {
    let o = run("coeffs --p 2 --N 3 --from 1 --to 2 --variant mod2");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run("coeffs --p 2 --N 5 --to 2 --variant mod2");
    assert_eq!(o.status.code(), Some(2));
}
