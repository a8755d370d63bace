//! Compiles and runs a small C program against the generated header and the
//! static library. Skipped when no C compiler is on the path.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "itder.h"

int main(void) {
    ItderHd *hd = NULL;
    if (itder_construct(4, "[\"s\"]", &hd) != ITDER_STATUS_OK) return 10;
    char *xi = NULL;
    if (itder_hd_xi(hd, 3, &xi) != ITDER_STATUS_OK) return 11;
    if (strcmp(xi, "1") != 0) return 12;
    itder_string_free(xi);
    if (itder_verify(hd, "iteration,rho", 0, NULL) != ITDER_STATUS_OK) return 13;
    char *pt = NULL;
    if (itder_point_op(2, "sub", "(1,w)", "(1,w+1)", 0, &pt) != ITDER_STATUS_OK) return 14;
    printf("%s\n", pt);
    itder_string_free(pt);
    itder_hd_free(hd);
    ItderHd *bad = NULL;
    if (itder_hd_from_json("{}", &bad) != ITDER_STATUS_INVALID_INPUT) return 15;
    if (strlen(itder_last_error()) == 0) return 16;
    return 0;
}
"#;

fn compiler() -> Option<String> {
    ["cc", "clang", "gcc"]
        .into_iter()
        .find(|c| {
            Command::new(c)
                .arg("--version")
                .output()
                .is_ok_and(|o| o.status.success())
        })
        .map(String::from)
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    // target/<profile>/deps/<test binary>
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libitder_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn header_compiles_and_links() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include").join("itder.h");
    assert!(header.exists(), "header missing: {}", header.display());
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let Some(lib) = static_lib() else {
        eprintln!("static library not built; skipping");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let bin = dir.path().join("main");
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C build failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "C program exited with {:?}",
        out.status.code()
    );
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        r#"{"x":"w+1","z":"w+1"}"#
    );
}
