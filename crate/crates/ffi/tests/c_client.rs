//! Builds a small C program against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

const CLIENT: &str = r#"
#include <stdio.h>
#include <string.h>
#include "hjlab.h"

int main(void) {
    HjSpec *spec = NULL;
    if (hj_spec_new("hj:1", 2, 2, &spec) != HJ_STATUS_OK) return 10;
    HjResult *result = NULL;
    if (hj_compute(spec, 4, 0.0, 1, &result) != HJ_STATUS_OK) return 11;
    size_t value = 0;
    if (hj_result_value(result, &value) != HJ_STATUS_OK || value != 2) return 12;
    HjCertificate *cert = NULL;
    if (hj_result_lower_certificate(result, &cert) != HJ_STATUS_OK) return 13;
    if (hj_certificate_verify(cert, false) != HJ_STATUS_OK) return 14;
    char *name = hj_spec_to_string(spec);
    printf("%s=%zu\n", name, value);
    hj_string_free(name);
    hj_certificate_free(cert);
    hj_result_free(result);
    hj_spec_free(spec);

    HjSpec *bad = NULL;
    if (hj_spec_new("zz:1", 2, 2, &bad) != HJ_STATUS_INVALID_ARGUMENT) return 15;
    if (hj_last_error_message() == NULL || strstr(hj_last_error_message(), "zz") == NULL) return 16;
    int32_t order = 0;
    if (hj_tower_compare("shelah24", "gowers:2,3", 0, &order) != HJ_STATUS_OK || order != 1) return 17;
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.join("libhjlab_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let exe = dir.path().join("client");
    std::fs::write(&src, CLIENT).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "client exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "hj(1;2,2)=2");
}
