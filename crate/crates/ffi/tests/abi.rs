use std::ffi::{c_char, CStr};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use radchar_ffi::*;

unsafe fn take_string(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    radchar_string_free(s);
    out
}

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(radchar_last_error())
            .to_string_lossy()
            .into_owned()
    }
}

#[test]
fn census_rows_and_counts() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(
            radchar_census_new(RadcharType::C, 2, 1, RadcharVariant::Corrected, &mut c),
            RadcharStatus::Ok
        );
        assert_eq!(radchar_census_len(c), 2);
        assert_eq!(radchar_census_sum_of_squares_holds(c), 1);
        let mut got = vec![];
        for i in 0..2 {
            let (mut r, mut e) = (0, 0);
            assert_eq!(radchar_census_row(c, i, &mut r, &mut e), RadcharStatus::Ok);
            let mut p = ptr::null_mut();
            assert_eq!(radchar_census_count(c, i, &mut p), RadcharStatus::Ok);
            let mut s = ptr::null_mut();
            assert_eq!(radchar_poly_eval(p, 3, &mut s), RadcharStatus::Ok);
            got.push((r, e, take_string(s)));
            radchar_poly_free(p);
        }
        assert_eq!(got, vec![(0, 0, "9".to_string()), (1, 1, "2".to_string())]);

        let (mut r, mut e) = (0, 0);
        assert_eq!(
            radchar_census_row(c, 5, &mut r, &mut e),
            RadcharStatus::InvalidArgument
        );
        assert!(last_error().contains("out of range"));

        let mut json = ptr::null_mut();
        assert_eq!(radchar_census_json(c, &mut json), RadcharStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["rows"][1]["count"], serde_json::json!(["-1", "1"]));
        radchar_census_free(c);
    }
}

#[test]
fn unitary_degree_is_q_squared() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(
            radchar_census_new(RadcharType::U, 2, 1, RadcharVariant::Corrected, &mut c),
            RadcharStatus::Ok
        );
        let mut p = ptr::null_mut();
        assert_eq!(radchar_census_degree(c, 1, &mut p), RadcharStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(radchar_poly_to_string(p, &mut s), RadcharStatus::Ok);
        assert_eq!(take_string(s), "q^2");
        assert_eq!(radchar_poly_degree(p), 2);
        radchar_poly_free(p);
        radchar_census_free(c);

        assert_eq!(
            radchar_census_new(RadcharType::U, 2, 1, RadcharVariant::Printed, &mut c),
            RadcharStatus::Ok
        );
        assert_eq!(radchar_census_sum_of_squares_holds(c), 0);
        radchar_census_free(c);
    }
}

#[test]
fn errors_and_nulls() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(
            radchar_census_new(RadcharType::U, 3, 3, RadcharVariant::Corrected, &mut c),
            RadcharStatus::InvalidArgument
        );
        assert!(c.is_null());
        assert!(last_error().contains("invalid parameters"));
        assert_eq!(
            radchar_census_new(
                RadcharType::C,
                3,
                1,
                RadcharVariant::Corrected,
                ptr::null_mut()
            ),
            RadcharStatus::NullPointer
        );
        assert_eq!(radchar_census_len(ptr::null()), 0);
        assert_eq!(radchar_census_sum_of_squares_holds(ptr::null()), -1);
        assert_eq!(radchar_poly_degree(ptr::null()), -1);
        radchar_census_free(ptr::null_mut());
        radchar_poly_free(ptr::null_mut());
        radchar_string_free(ptr::null_mut());

        let mut p = ptr::null_mut();
        assert_eq!(
            radchar_rank_census(
                RadcharClass::SkewSymmetric,
                2,
                1,
                RadcharVariant::Corrected,
                &mut p
            ),
            RadcharStatus::InvalidArgument
        );
        assert_eq!(last_error(), "skew-symmetric rank must be even");
    }
}

#[test]
fn rank_census_values() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            radchar_rank_census(
                RadcharClass::Symmetric,
                2,
                2,
                RadcharVariant::Corrected,
                &mut p
            ),
            RadcharStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(radchar_poly_coeffs_json(p, &mut s), RadcharStatus::Ok);
        assert_eq!(take_string(s), r#"["0","0","-1","1"]"#);
        radchar_poly_free(p);
    }
}

#[test]
fn brute_force_entry_points() {
    unsafe {
        let mut n = 0u64;
        assert_eq!(
            radchar_class_count(RadcharType::C, 2, 1, 3, 0, &mut n),
            RadcharStatus::Ok
        );
        assert_eq!(n, 11);
        assert_eq!(
            radchar_class_count(RadcharType::D, 4, 2, 3, 100, &mut n),
            RadcharStatus::BudgetExceeded
        );
        assert!(last_error().contains("budget 100"));
        assert_eq!(
            radchar_class_count(RadcharType::C, 2, 1, 4, 0, &mut n),
            RadcharStatus::InvalidArgument
        );

        let mut s = ptr::null_mut();
        assert_eq!(
            radchar_orbit_census_json(RadcharType::U, 2, 1, 3, 0, &mut s),
            RadcharStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v["rows"][1]["characters"], 2);
        assert_eq!(v["rows"][1]["degree"], 9);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(radchar_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(manifest_dir().join("include/radchar.h")).unwrap();
    let src = std::fs::read_to_string(manifest_dir().join("src/lib.rs")).unwrap();
    let exported: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 15);
    for f in exported {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct RadcharCensus RadcharCensus;"));
}

/// Compiles a small C program against the header and static library.
#[test]
fn c_program_links_and_runs() {
    let cc = match Command::new("cc").arg("--version").output() {
        Ok(o) if o.status.success() => "cc",
        _ => {
            eprintln!("no C compiler; skipping");
            return;
        }
    };
    // target/<profile>/deps/abi-xxxx -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libradchar_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("radchar_smoke");
    let status = Command::new(cc)
        .arg(manifest_dir().join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(
        String::from_utf8_lossy(&run.stdout),
        "0 9\n1 2\n1 skew-symmetric rank must be even\n"
    );
}
