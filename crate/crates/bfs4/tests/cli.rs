//! Binary-level contract: subcommands, exit codes, and byte-deterministic
//! reports.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bfs4"))
}

fn tmpdir(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("bfs4-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn gen_ci(dir: &Path) -> std::path::PathBuf {
    let file = dir.join("ci.json");
    let st = bin()
        .args(["gen", "ci", "--out"])
        .arg(&file)
        .status()
        .unwrap();
    assert!(st.success());
    file
}

#[test]
fn gen_verify_bfs_roundtrip_exit_codes() {
    let dir = tmpdir("roundtrip");
    let file = gen_ci(&dir);

    let st = bin().arg("verify-dga").arg(&file).output().unwrap();
    assert_eq!(st.status.code(), Some(0), "verify-dga: {st:?}");

    let out1 = dir.join("run1");
    let st = bin()
        .arg("bfs")
        .arg(&file)
        .args(["--r", "x4", "--out"])
        .arg(&out1)
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0), "bfs: {st:?}");
    let stdout = String::from_utf8_lossy(&st.stdout);
    assert!(stdout.contains("PASS leibniz"));
    assert!(stdout.contains("summary: PASS"));

    // Deterministic byte-for-byte reports.
    let out2 = dir.join("run2");
    let st = bin()
        .arg("bfs")
        .arg(&file)
        .args(["--r", "x4", "--out"])
        .arg(&out2)
        .status()
        .unwrap();
    assert!(st.success());
    for name in ["report.json", "report.txt"] {
        let a = std::fs::read(out1.join(name)).unwrap();
        let b = std::fs::read(out2.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }

    // report subcommand re-renders from the machine document.
    let st = bin().arg("report").arg(&out1).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&st.stdout).contains("summary: PASS"));
}

#[test]
fn corruption_exits_one_with_witness() {
    let dir = tmpdir("corrupt");
    let file = gen_ci(&dir);
    for target in ["f2", "prod11", "gamma2"] {
        let st = bin()
            .arg("bfs")
            .arg(&file)
            .args(["--corrupt", target])
            .output()
            .unwrap();
        assert_eq!(st.status.code(), Some(1), "corrupt {target}: {st:?}");
        let stdout = String::from_utf8_lossy(&st.stdout);
        assert!(stdout.contains("FAIL"), "corrupt {target}: no FAIL line");
        assert!(stdout.contains('['), "corrupt {target}: no witness");
    }
}

#[test]
fn calibration_off_documents_typos() {
    let dir = tmpdir("caloff");
    let file = gen_ci(&dir);
    let st = bin()
        .arg("bfs")
        .arg(&file)
        .args(["--calibration", "off"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&st.stdout);
    assert!(stdout.contains("f1"), "f1 ordering not named:\n{stdout}");
    assert!(stdout.contains("alpha_4"), "alpha_4 not named:\n{stdout}");
}

#[test]
fn usage_errors_exit_two() {
    let st = bin()
        .arg("bfs")
        .arg("/nonexistent/instance.json")
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));

    let dir = tmpdir("badjson");
    let file = dir.join("bad.json");
    std::fs::write(&file, "{ \"format\": 1 }").unwrap();
    let st = bin().arg("bfs").arg(&file).output().unwrap();
    assert_eq!(st.status.code(), Some(2));

    // Malformed polynomial inside an otherwise valid instance.
    let good = gen_ci(&dir);
    let mut text = std::fs::read_to_string(&good).unwrap();
    text = text.replace("\"r\": \"x4\"", "\"r\": \"x1 +* x2\"");
    let bad_poly = dir.join("badpoly.json");
    std::fs::write(&bad_poly, text).unwrap();
    let st = bin().arg("bfs").arg(&bad_poly).output().unwrap();
    assert_eq!(st.status.code(), Some(2), "{st:?}");
    assert!(String::from_utf8_lossy(&st.stderr).contains("column"));
}

#[test]
fn perturbed_and_tensor_families_run_green() {
    let dir = tmpdir("families");
    let file = gen_ci(&dir);
    let pert = dir.join("p7.json");
    let st = bin()
        .args(["gen", "perturbed", "--seed", "7", "--base"])
        .arg(&file)
        .arg("--out")
        .arg(&pert)
        .status()
        .unwrap();
    assert!(st.success());
    let st = bin().arg("verify-dga").arg(&pert).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let st = bin().arg("bfs").arg(&pert).status().unwrap();
    assert_eq!(st.code(), Some(0));

    let tensor = dir.join("tensor.json");
    let st = bin()
        .args(["gen", "tensor", "--out"])
        .arg(&tensor)
        .status()
        .unwrap();
    assert!(st.success());
    let st = bin().arg("bfs").arg(&tensor).status().unwrap();
    assert_eq!(st.code(), Some(0));
}

#[test]
fn shipped_golden_instances_parse_and_run() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances");
    for name in ["ci.json", "tensor.json", "gorenstein5.json"] {
        let file = root.join(name);
        let spec = bfs4::instance::parse_instance(&file).expect("shipped instance parses");
        bfs4::instance::load_instance(&spec).expect("shipped instance validates");
        let st = bin().arg("verify-dga").arg(&file).status().unwrap();
        assert_eq!(st.code(), Some(0), "{name}");
    }
}

#[test]
fn prime_field_instance_runs_green() {
    let dir = tmpdir("primefield");
    let file = dir.join("ci_p.json");
    let st = bin()
        .args(["gen", "ci", "--char", "32003", "--out"])
        .arg(&file)
        .status()
        .unwrap();
    assert!(st.success());
    let st = bin().arg("bfs").arg(&file).status().unwrap();
    assert_eq!(st.code(), Some(0));
}
