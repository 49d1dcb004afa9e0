//! The golden case table and helpers for running the binary.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "info_fibonacci", args: &["info", "fibonacci.graph"], exit: 0 },
    Case { name: "info_tail", args: &["info", "tail.graph"], exit: 0 },
    Case { name: "info_cycle2", args: &["info", "cycle2.graph"], exit: 0 },
    Case { name: "eval_ck2", args: &["eval", "rose2.graph", "-e", "v - e e* - f f*"], exit: 0 },
    Case {
        name: "eval_normalize_degree",
        args: &["eval", "rose2.graph", "-e", "3 v - 2 e e* + f* e (e f*)", "--normalize", "--degree"],
        exit: 0,
    },
    Case { name: "eval_fp3", args: &["eval", "fibonacci.graph", "-e", "4 a a* + b b*", "--field", "fp:3"], exit: 0 },
    Case { name: "eval_syntax_error", args: &["eval", "rose2.graph", "-e", "e +"], exit: 2 },
    Case { name: "eval_unknown_generator", args: &["eval", "rose2.graph", "-e", "e q"], exit: 2 },
    Case { name: "bf_rose2", args: &["bf", "rose2.graph"], exit: 0 },
    Case { name: "bf_rose3_ungraded", args: &["bf", "rose3.graph", "--ungraded"], exit: 0 },
    Case { name: "bf_triloop_dual", args: &["bf", "triloop.graph", "--dual"], exit: 0 },
    Case { name: "bf_tail_ungraded", args: &["bf", "tail.graph", "--ungraded"], exit: 1 },
    Case { name: "iso_r2_j2", args: &["iso", "rose2.graph", "j2.graph"], exit: 0 },
    Case {
        name: "iso_r2_r3",
        args: &["iso", "rose2.graph", "rose3.graph", "--entry-max", "2", "--lag-max", "2"],
        exit: 3,
    },
    Case { name: "verify_iso_good", args: &["verify-iso", "rose2.graph", "j2.graph", "r2_j2.cert"], exit: 0 },
    Case { name: "verify_iso_bad", args: &["verify-iso", "rose2.graph", "j2.graph", "r2_j2_bad.cert"], exit: 1 },
    Case { name: "check_hom_swap", args: &["check-hom", "rose2.graph", "rose2.graph", "swap.hom"], exit: 0 },
    Case { name: "check_hom_r2_j2", args: &["check-hom", "rose2.graph", "j2.graph", "rose2_to_j2.hom"], exit: 0 },
    Case { name: "check_hom_j2_r2", args: &["check-hom", "j2.graph", "rose2.graph", "j2_to_rose2.hom"], exit: 0 },
    Case { name: "check_hom_bad", args: &["check-hom", "rose2.graph", "rose2.graph", "bad.hom"], exit: 1 },
    Case {
        name: "deform_scale",
        args: &["deform", "rose2.graph", "rose2.graph", "identity_rose2.hom", "scale.z"],
        exit: 0,
    },
    Case { name: "deform_mix", args: &["deform", "rose2.graph", "rose2.graph", "identity_rose2.hom", "mix.z"], exit: 0 },
    Case { name: "deform_corner_fail", args: &["deform", "rose2.graph", "rose2.graph", "swap.hom", "scale.z"], exit: 1 },
    Case { name: "full_cert_rose2", args: &["full-cert", "rose2.graph", "--edge", "f"], exit: 0 },
    Case { name: "full_cert_fibonacci", args: &["full-cert", "fibonacci.graph", "--edge", "b"], exit: 0 },
    Case { name: "full_cert_cycle2", args: &["full-cert", "cycle2.graph", "--edge", "c1"], exit: 1 },
    Case { name: "k0_fibonacci", args: &["k0", "fibonacci.graph", "-e", "b b*"], exit: 0 },
    Case { name: "k0_not_idempotent", args: &["k0", "rose2.graph", "-e", "2 e e*"], exit: 1 },
    Case { name: "k1_rose2", args: &["k1", "rose2.graph", "-e", "v + e f* + e e*"], exit: 0 },
    Case { name: "k1_f2", args: &["k1", "rose2.graph", "-e", "v + e f*", "--field", "fp:2"], exit: 0 },
    Case { name: "k1_not_degree_zero", args: &["k1", "rose2.graph", "-e", "e"], exit: 1 },
    Case {
        name: "homotopy_chain",
        args: &["check-homotopy", "rose2.graph", "rose2.graph", "unipotent.htpy", "unipotent_end.htpy"],
        exit: 0,
    },
    Case {
        name: "homotopy_broken_chain",
        args: &["check-homotopy", "rose2.graph", "rose2.graph", "unipotent.htpy", "const_swap.htpy"],
        exit: 1,
    },
    Case { name: "bad_field", args: &["k1", "rose2.graph", "-e", "v", "--field", "fp:4"], exit: 2 },
    Case { name: "missing_file", args: &["info", "nope.graph"], exit: 2 },
];

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpa"))
        .args(args)
        .current_dir(data_dir())
        .env_remove("NO_COLOR")
        .output()
        .expect("spawn lpa")
}

/// Stdout, then stderr lines prefixed with `! ` (only the first stderr line,
/// so clap's usage hints do not freeze into the goldens).
pub fn transcript(out: &Output) -> String {
    let mut s = String::from_utf8(out.stdout.clone()).expect("utf-8 stdout");
    if let Some(line) = String::from_utf8_lossy(&out.stderr).lines().next() {
        s.push_str(&format!("! {line}\n"));
    }
    s
}
