use std::process::{Command, Output};

fn bidend(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bidend")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn pairing_example() {
    let o = bidend(&["pair", "*[*]", "*[*]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn left_half_product_of_permutations() {
    let o = bidend(&["fqsym", "preml", "12", "123"]);
    assert_eq!(stdout(&o), "1*13452 + 1*31452 + 1*34152 + 1*34512\n");
}

#[test]
fn golden_replay_passes() {
    let o = bidend(&["golden", "run"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("PASS\n"));
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/golden");
    assert_eq!(bidend(&["golden", "run", "--dir", dir]).status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(bidend(&["hck", "cop", "a[b,"]).status.code(), Some(2));
    assert_eq!(bidend(&["fqsym", "cop", "1x"]).status.code(), Some(2));
    assert_eq!(bidend(&["nope"]).status.code(), Some(2));
    let fail = ["laws", "--suite", "bidendriform", "--algebra", "hck-prime", "--decorations", "d", "--maxdeg", "3"];
    let o = bidend(&fail);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness E8 at (d, d)"));
    let pass = ["laws", "--suite", "dendriform", "--algebra", "fqsym", "--maxdeg", "4", "--samples", "20"];
    assert_eq!(bidend(&pass).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["laws", "--suite", "bidendriform", "--algebra", "fqsym", "--seed", "3", "--samples", "50", "--json"];
    let (a, b) = (bidend(&args), bidend(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).expect("json report");
    assert_eq!(v["suite"], "bidendriform");
    assert_eq!(v["options"]["seed"], 3);
}

#[test]
fn iso_check_json() {
    let o = bidend(&["iso", "check", "--max", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json report");
    assert_eq!(v["degrees"][3]["rank"], 24);
    assert_eq!(v["ok"], true);
}

#[test]
fn tables() {
    let o = bidend(&["pair", "table", "--weight", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json table");
    assert_eq!(v["forests"].as_array().map(Vec::len), Some(5));
    let o = bidend(&["halfprod", "table", "--max", "3", "--format", "tsv"]);
    let text = stdout(&o);
    assert!(text.starts_with("left\tright\tprec\tsucc\n"));
    assert!(text.contains("*\t*\t1**[*]\t1*(* *) + -1**[*]\n"), "{text}");
    assert_eq!(stdout(&bidend(&["halfprod", "preml", "a", "b c"])), "1*a[b,c]\n");
    assert_eq!(stdout(&bidend(&["prim", "dims", "--algebra", "hck", "--max", "4"])), "1,0,0,0\n");
    let basis = stdout(&bidend(&["prim", "basis", "--algebra", "fqsym", "--degree", "3"]));
    assert_eq!(basis.lines().count(), 1);
}
