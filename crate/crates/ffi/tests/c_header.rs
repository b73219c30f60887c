use std::path::{Path, PathBuf};
use std::process::Command;

fn cc() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

fn staticlib() -> Option<PathBuf> {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libwiltonlab_ffi.a");
    lib.exists().then_some(lib)
}

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include <string.h>
#include "wiltonlab.h"

int main(void) {
    WlComplex u = {2.0, 0.0}, v = {3.0, 0.0};
    WlReport *rep = NULL;
    if (wl_wilton_classic(u, v, 4000, &rep) != WL_STATUS_OK) return 1;
    double r = wl_report_residual(rep);
    char *json = NULL;
    if (wl_report_json(rep, &json) != WL_STATUS_OK) return 2;
    if (strstr(json, "\"residual\"") == NULL) return 3;
    wl_string_free(json);
    wl_report_free(rep);

    WlInstance *inst = NULL;
    if (wl_instance_new("nope", &inst) != WL_STATUS_DOMAIN) return 4;
    if (wl_last_error_message() == NULL) return 5;
    printf("%s %.3e\n", wl_version(), r);
    return r <= 1e-4 ? 0 : 6;
}
"#;

fn include_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

#[test]
fn header_compiles_as_c() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler; skipped");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("t.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let st = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(include_dir())
        .arg(&src)
        .status()
        .unwrap();
    assert!(st.success());
}

#[test]
fn c_program_links_and_runs() {
    let (Some(cc), Some(lib)) = (cc(), staticlib()) else {
        eprintln!("no C compiler or static library; skipped");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("t.c");
    let exe = dir.path().join("t");
    std::fs::write(&src, PROGRAM).unwrap();
    let st = Command::new(&cc)
        .arg("-I")
        .arg(include_dir())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{:?}", out);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with(env!("CARGO_PKG_VERSION")));
}
