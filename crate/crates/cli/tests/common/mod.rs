#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use csmoute_core::{Draws, StreamRng};

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_csmoute"));
    c.env_remove("RESAMPLE_BENCH_THREADS");
    c
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn keel(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/keel").join(format!("{name}.dat"))
}

pub fn reference_summary() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/reference_summary.csv")
}

/// Two-feature CSV with `n_maj` rows of class `neg` around the origin and
/// `n_min` rows of class `pos` shifted by `shift`.
pub fn synthetic_csv(path: &Path, n_maj: usize, n_min: usize, shift: f64, seed: u64) {
    let mut g = StreamRng::derive(seed, &["fixture"]);
    let mut text = String::from("x1,x2,class\n");
    // interleave classes so input order mixes them
    let total = n_maj + n_min;
    let mut left = (n_maj, n_min);
    for i in 0..total {
        let minority = left.1 > 0 && (left.0 == 0 || i % 3 == 1);
        let (dx, label) = if minority {
            left.1 -= 1;
            (shift, "pos")
        } else {
            left.0 -= 1;
            (0.0, "neg")
        };
        let a = g.unit() * 2.0 - 1.0 + dx;
        let b = g.unit() * 2.0 - 1.0 + dx;
        text.push_str(&format!("{a},{b},{label}\n"));
    }
    std::fs::write(path, text).unwrap();
}

pub fn class_counts(csv_text: &str) -> (usize, usize) {
    let mut pos = 0;
    let mut neg = 0;
    for line in csv_text.lines().skip(1) {
        match line.rsplit(',').next() {
            Some("pos") => pos += 1,
            Some("neg") => neg += 1,
            other => panic!("unexpected class {other:?}"),
        }
    }
    (pos, neg)
}
