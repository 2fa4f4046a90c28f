#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn vosa(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_vosa"))
        .args(args)
        .output()
        .expect("vosa binary runs");
    Run {
        code: out.status.code().expect("vosa exits normally"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares the JSON output of `args` with the stored file byte for byte.
/// With `VOSA_BLESS=1` the file is rewritten instead.
pub fn check_golden(name: &str, args: &[&str]) -> Result<(), String> {
    golden(name, args, true)
}

/// Like [`check_golden`], but never rewrites the file.
pub fn compare_golden(name: &str, args: &[&str]) -> Result<(), String> {
    golden(name, args, false)
}

fn golden(name: &str, args: &[&str], bless: bool) -> Result<(), String> {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let run = vosa(&full);
    if run.code != 0 {
        return Err(format!(
            "vosa {} exited with {}: {}",
            full.join(" "),
            run.code,
            run.stderr
        ));
    }
    let path = golden_path(name);
    if bless && std::env::var_os("VOSA_BLESS").is_some() {
        std::fs::write(&path, &run.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == run.stdout {
        Ok(())
    } else {
        Err(format!(
            "output of vosa {} differs from {}",
            full.join(" "),
            path.display()
        ))
    }
}

pub const C2_OSP12: (&str, &[&str]) = (
    "c2_osp12n_n1_k1_N6.json",
    &[
        "c2", "--family", "osp12n", "--n", "1", "--k", "1", "--N", "6",
    ],
);
pub const C2_SL12: (&str, &[&str]) = (
    "c2_sl1n_n2_k1_N6.json",
    &["c2", "--family", "sl1n", "--n", "2", "--k", "1", "--N", "6"],
);
