use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use gdep_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = gdep_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    gdep_string_free(s);
    out
}

const FIG2: &str = "x0,x1,y0,y1\n0,0,0,0\n1,0,1,0\n0,0,0,0\n0,0,0,0\n";

unsafe fn team(csv: &str) -> *mut GdepTeam {
    let mut t = ptr::null_mut();
    assert_eq!(gdep_team_from_csv(c(csv).as_ptr(), &mut t), GdepStatus::Ok);
    t
}

unsafe fn atoms(text: &str) -> *mut GdepAtomSet {
    let mut s = ptr::null_mut();
    assert_eq!(gdep_atomset_parse(c(text).as_ptr(), &mut s), GdepStatus::Ok);
    s
}

#[test]
fn check_through_handles() {
    unsafe {
        let t = team(FIG2);
        assert_eq!(gdep_team_rows(t), 4);
        let mut holds = false;
        assert_eq!(gdep_check(t, c("gdep(x0 ; y0)").as_ptr(), &mut holds), GdepStatus::Ok);
        assert!(holds);
        assert_eq!(gdep_check(t, c("gdep(x0 x1 ; y1)").as_ptr(), &mut holds), GdepStatus::Ok);
        assert!(!holds);
        assert_eq!(gdep_check(t, c("dep(y0 ; x0)").as_ptr(), &mut holds), GdepStatus::Ok);
        assert!(holds);
        assert_eq!(gdep_check(t, c("gdep(w ; y0)").as_ptr(), &mut holds), GdepStatus::Domain);
        assert!(last_error().contains('w'));
        assert_eq!(gdep_check(t, c("gdep(x0").as_ptr(), &mut holds), GdepStatus::Syntax);
        gdep_team_free(t);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(gdep_team_from_csv(ptr::null(), &mut t), GdepStatus::NullPointer);
        assert_eq!(gdep_team_from_csv(c("a,b\n1\n").as_ptr(), &mut t), GdepStatus::Format);
        assert!(t.is_null());
        let bad = [0xffu8, 0];
        assert_eq!(gdep_team_from_csv(bad.as_ptr().cast(), &mut t), GdepStatus::InvalidUtf8);
        let mut holds = false;
        assert_eq!(gdep_check(ptr::null(), c("gdep(a ; b)").as_ptr(), &mut holds), GdepStatus::NullPointer);
        let s = atoms("gdep(a ; b)\n");
        let mut out = ptr::null_mut();
        let wide = (0..13).map(|i| format!("v{i}")).collect::<Vec<_>>().join(",");
        assert_eq!(gdep_armstrong(s, c("a").as_ptr(), &mut out), GdepStatus::Contract);
        let empty = atoms("");
        assert_eq!(gdep_armstrong(empty, c(&wide).as_ptr(), &mut out), GdepStatus::Size);
        assert!(out.is_null());
        gdep_atomset_free(s);
        gdep_atomset_free(empty);
        // success clears the message
        let t = team(FIG2);
        assert!(gdep_last_error_message().is_null());
        gdep_team_free(t);
        gdep_team_free(ptr::null_mut());
        gdep_string_free(ptr::null_mut());
    }
}

#[test]
fn entailment_with_witnesses() {
    unsafe {
        let s = atoms("# chain\ngdep(a ; b)\ngdep(b ; c)\n");
        let (mut derivable, mut witness) = (false, ptr::null_mut());
        assert_eq!(gdep_entails(s, c("gdep(a ; c)").as_ptr(), &mut derivable, &mut witness), GdepStatus::Ok);
        assert!(derivable);
        let text = take(witness);
        assert!(text.starts_with("R2: gdep(a ; c)"), "{text}");

        let mut witness = ptr::null_mut();
        assert_eq!(gdep_entails(s, c("gdep(c ; a)").as_ptr(), &mut derivable, &mut witness), GdepStatus::Ok);
        assert!(!derivable);
        let csv = take(witness);
        let t = team(&csv);
        let mut holds = true;
        assert_eq!(gdep_check(t, c("gdep(c ; a)").as_ptr(), &mut holds), GdepStatus::Ok);
        assert!(!holds);
        gdep_team_free(t);

        // the witness pointer is optional
        assert_eq!(gdep_entails(s, c("gdep(a ; c)").as_ptr(), &mut derivable, ptr::null_mut()), GdepStatus::Ok);
        assert_eq!(gdep_entails(s, c("gdep(a").as_ptr(), &mut derivable, ptr::null_mut()), GdepStatus::Syntax);
        gdep_atomset_free(s);
    }
}

#[test]
fn armstrong_relation() {
    unsafe {
        let s = atoms("gdep(a ; b)\n");
        let mut csv = ptr::null_mut();
        assert_eq!(gdep_armstrong(s, ptr::null(), &mut csv), GdepStatus::Ok);
        let t = team(&take(csv));
        let mut holds = false;
        assert_eq!(gdep_check(t, c("gdep(a ; b)").as_ptr(), &mut holds), GdepStatus::Ok);
        assert!(holds);
        assert_eq!(gdep_check(t, c("gdep(b ; a)").as_ptr(), &mut holds), GdepStatus::Ok);
        assert!(!holds);
        gdep_team_free(t);
        gdep_atomset_free(s);
    }
}

#[test]
fn translation() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(gdep_translate(c("dep(x ; y0 y1)").as_ptr(), GdepDirection::ToGdep, &mut out), GdepStatus::Ok);
        assert_eq!(take(out), "gdep(y0 ; x)\ngdep(y1 ; x)\n");
        assert_eq!(
            gdep_translate(c("E z. (gdep(x ; z) & P(z))").as_ptr(), GdepDirection::ToFdep, &mut out),
            GdepStatus::Ok
        );
        assert_eq!(take(out), "E z. (dep(z ; x) & P(z))\n");
    }
}

#[test]
fn evaluation() {
    unsafe {
        let structure = c("universe: 0 1\nrelation R/2: (0,1) (1,0)\n");
        let mut holds = false;
        assert_eq!(gdep_eval(structure.as_ptr(), c("A x. E y. R(x, y)").as_ptr(), ptr::null(), &mut holds), GdepStatus::Ok);
        assert!(holds);
        let t = team("x,y\n0,1\n1,0\n");
        assert_eq!(gdep_eval(structure.as_ptr(), c("R(x, y) & gdep(x ; )").as_ptr(), t, &mut holds), GdepStatus::Ok);
        assert!(!holds);
        assert_eq!(gdep_eval(structure.as_ptr(), c("Q(x)").as_ptr(), t, &mut holds), GdepStatus::Domain);
        gdep_team_free(t);
        // twelve distinct rows exceed the default split bound of ten
        let rows: String = (0..12).map(|i| format!("{},{},{i}\n", i % 2, (i / 2) % 2)).collect();
        let wide = team(&format!("x,y,k\n{rows}"));
        let big = c(&format!("universe: 0 1 {}\nrelation R/2: (0,1)\n", (2..12).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")));
        assert_eq!(gdep_eval(big.as_ptr(), c("R(x, y) | R(y, x)").as_ptr(), wide, &mut holds), GdepStatus::Size);
        assert!(last_error().contains('∨'));
        gdep_team_free(wide);
    }
}

/// The generated header is valid C when a compiler is available.
#[test]
fn header_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/gdep.h");
    let contents = std::fs::read_to_string(header).unwrap();
    for name in ["gdep_team_from_csv", "gdep_entails", "gdep_last_error_message", "GDEP_STATUS_SIZE"] {
        assert!(contents.contains(name), "{name} missing from header");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(status.success());
}
