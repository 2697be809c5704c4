use std::path::Path;
use std::process::{Command, Output};

use lt_core::chebotarev::CountReport;

fn lt(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lt"))
        .args(args)
        .env("LT_CACHE_DIR", cache)
        .output()
        .expect("spawn lt")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

#[test]
fn ap_rows_match_good_odd_primes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ap.csv");
    let o = lt(
        dir.path(),
        &[
            "ap",
            "--curve",
            "1,1",
            "--x",
            "1000",
            "--out",
            out.to_str().unwrap(),
        ],
    );
    assert!(o.status.success());
    // disc = -16 * 31
    let expected = (3..=1000).filter(|&p| is_prime(p) && p != 31).count();
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), expected + 1);
    assert!(text.starts_with("p,a,ordinary,D,d\n"));

    let again = dir.path().join("again.csv");
    let o = lt(
        dir.path(),
        &[
            "ap",
            "--curve",
            "1,1",
            "--x",
            "1e3",
            "--shards",
            "3",
            "--out",
            again.to_str().unwrap(),
        ],
    );
    assert!(o.status.success());
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn tiny_x_writes_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("empty.csv");
    let o = lt(
        dir.path(),
        &["ap", "--x", "2", "--out", out.to_str().unwrap()],
    );
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "p,a,ordinary,D,d\n");
}

#[test]
fn unwritable_output_fails() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let bad = blocker.join("sub").join("ap.csv");
    let o = lt(
        dir.path(),
        &["ap", "--x", "100", "--out", bad.to_str().unwrap()],
    );
    assert!(!o.status.success());
}

#[test]
fn missing_cache_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = lt(
        dir.path(),
        &["count", "--kind", "PEa", "--a", "0", "--x", "1e4"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--compute"));
}

#[test]
fn count_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = lt(
        dir.path(),
        &[
            "count",
            "--kind",
            "PEa",
            "--a",
            "0",
            "--x",
            "1e4",
            "--compute",
        ],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r: CountReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.x, 10_000);
    assert!(r.is_finite());
    assert!(dir.path().join("ap_1_1_10000.csv").exists());

    // the cached 1e4 table covers smaller x
    let o = lt(
        dir.path(),
        &["count", "--kind", "PEk", "--d", "-4", "--x", "5000"],
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["non_principal"], 0);
    assert!(v["principality_checked"].as_u64().unwrap() > 0);

    let o = lt(
        dir.path(),
        &["count", "--kind", "sweep", "--xs", "1e2,1e3,1e4"],
    );
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert_eq!(text.lines().next(), Some("x,observed,expected"));

    let o = lt(dir.path(), &["count", "--kind", "DE", "--x", "1e4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["partition_residual"], 0);

    let o = lt(
        dir.path(),
        &[
            "count", "--kind", "piC", "--ell", "7", "--pred", "c:-1", "--x", "1e4",
        ],
    );
    let r: CountReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.fraction > 0.0 && r.fraction < 1.0);

    let o = lt(
        dir.path(),
        &["count", "--kind", "piC", "--pred", "nonsense", "--x", "1e4"],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_filters_and_fault_injection() {
    let dir = tempfile::tempdir().unwrap();
    let o = lt(dir.path(), &["verify", "--suite", "borel", "--ell", "13"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("PASS borel"));

    let o = lt(
        dir.path(),
        &[
            "verify",
            "--suite",
            "borel",
            "--ell",
            "5",
            "--inject-fault",
            "borel",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL borel"));

    let o = lt(dir.path(), &["verify", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rayclass_and_groups() {
    let dir = tempfile::tempdir().unwrap();
    let o = lt(
        dir.path(),
        &["rayclass", "--d", "-15", "--m", "7", "--oracle"],
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 48);
    assert_eq!(v["enumerated"], 48);

    let table = dir.path().join("gl2_3.txt");
    let o = lt(
        dir.path(),
        &[
            "groups",
            "--ell",
            "3",
            "--table-out",
            table.to_str().unwrap(),
        ],
    );
    assert!(o.status.success());
    let g = lt_core::classfn::FiniteGroupTable::parse(&std::fs::read_to_string(table).unwrap())
        .unwrap();
    assert_eq!(g.order(), 48);
}

#[test]
fn help_states_sign_convention() {
    let dir = tempfile::tempdir().unwrap();
    let o = lt(dir.path(), &["--help"]);
    assert!(stdout(&o).contains("a_p = p + 1 - #E(F_p)"));
}
