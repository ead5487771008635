//! C interface to `gdep`.
//!
//! Every function returns a [`GdepStatus`]; results come back through out
//! pointers. On failure, [`gdep_last_error_message`] describes the error for
//! the calling thread. Strings handed out by this library are owned by the
//! caller and released with [`gdep_string_free`]; teams and atom sets are
//! opaque handles with their own free functions. Panics never cross the
//! boundary.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gdep::logic::sentence_team;
use gdep::{
    build_armstrong, entails, eval, parse_atom, parse_formula, translate_text, ArmstrongSpec, Atom, AtomSet,
    Direction, Error, EvalContext, Structure, Team, VarSet, Witness,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GdepStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed CSV, atom-set or structure text.
    Format = 3,
    /// Malformed atom or formula.
    Syntax = 4,
    /// A variable, relation or value that does not fit the data.
    Domain = 5,
    /// A size guard tripped.
    Size = 6,
    Contract = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GdepDirection {
    ToGdep = 0,
    ToFdep = 1,
}

/// Opaque team handle.
pub struct GdepTeam(Team);

/// Opaque atom-set handle.
pub struct GdepAtomSet(AtomSet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(GdepStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Format { .. } => GdepStatus::Format,
            Error::Syntax { .. } => GdepStatus::Syntax,
            Error::MissingVariable(_) | Error::InvalidVariable(_) | Error::Vocabulary(_) => GdepStatus::Domain,
            Error::Size { .. } => GdepStatus::Size,
            Error::Contract(_) => GdepStatus::Contract,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(GdepStatus::NullPointer, format!("`{what}` is null"))
}

/// Runs `body`, recording any failure or panic for the calling thread.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> GdepStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GdepStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            GdepStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(GdepStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Parses a CSV team (header row, unquoted cells).
///
/// # Safety
/// `csv` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gdep_team_from_csv(csv: *const c_char, out: *mut *mut GdepTeam) -> GdepStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let team = Team::from_csv_str(text(csv, "csv")?)?;
        put(out, Box::into_raw(Box::new(GdepTeam(team))), "out")
    })
}

/// # Safety
/// `team` must come from [`gdep_team_from_csv`] and not be freed yet, or be null.
#[no_mangle]
pub unsafe extern "C" fn gdep_team_free(team: *mut GdepTeam) {
    if !team.is_null() {
        drop(Box::from_raw(team));
    }
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `team` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gdep_team_rows(team: *const GdepTeam) -> usize {
    team.as_ref().map_or(0, |t| t.0.len())
}

/// Checks a `gdep(..)` or `dep(..)` atom against a team.
///
/// # Safety
/// `team` must be a live handle, `atom` NUL-terminated, `holds` writable.
#[no_mangle]
pub unsafe extern "C" fn gdep_check(team: *const GdepTeam, atom: *const c_char, holds: *mut bool) -> GdepStatus {
    guard(|| {
        let team = &handle(team, "team")?.0;
        let verdict = match parse_atom(text(atom, "atom")?)? {
            Atom::G(a) => team.satisfies_gdep(&a)?,
            Atom::F(a) => team.satisfies_fdep(&a)?,
        };
        put(holds, verdict, "holds")
    })
}

/// Parses an atom-set file: one `gdep(..)` per line, `#` comments.
///
/// # Safety
/// `source` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gdep_atomset_parse(source: *const c_char, out: *mut *mut GdepAtomSet) -> GdepStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let set = AtomSet::parse(text(source, "source")?)?;
        put(out, Box::into_raw(Box::new(GdepAtomSet(set))), "out")
    })
}

/// # Safety
/// `set` must come from [`gdep_atomset_parse`] and not be freed yet, or be null.
#[no_mangle]
pub unsafe extern "C" fn gdep_atomset_free(set: *mut GdepAtomSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Decides whether `sigma` entails `goal`. When `witness` is not null it
/// receives the derivation text, or the counter-model as CSV.
///
/// # Safety
/// `sigma` must be a live handle, `goal` NUL-terminated, `derivable`
/// writable, and `witness` writable or null.
#[no_mangle]
pub unsafe extern "C" fn gdep_entails(
    sigma: *const GdepAtomSet,
    goal: *const c_char,
    derivable: *mut bool,
    witness: *mut *mut c_char,
) -> GdepStatus {
    guard(|| {
        let sigma = &handle(sigma, "sigma")?.0;
        let goal = gdep::GAtom::parse(text(goal, "goal")?)?;
        if derivable.is_null() {
            return Err(null("derivable"));
        }
        let result = entails(sigma, &goal);
        if !witness.is_null() {
            let body = match &result.witness {
                Witness::Derivation(d) => d.to_string(),
                Witness::CounterModel(m) => m.team.to_csv_string(),
            };
            witness.write(owned_string(body));
        }
        put(derivable, result.verdict(), "derivable")
    })
}

/// Builds an Armstrong relation as CSV. `vars` lists the universe separated
/// by commas or spaces; null means the variables of `sigma`.
///
/// # Safety
/// `sigma` must be a live handle, `vars` NUL-terminated or null, `csv` writable.
#[no_mangle]
pub unsafe extern "C" fn gdep_armstrong(
    sigma: *const GdepAtomSet,
    vars: *const c_char,
    csv: *mut *mut c_char,
) -> GdepStatus {
    guard(|| {
        let sigma = &handle(sigma, "sigma")?.0;
        let universe = if vars.is_null() {
            sigma.variables()
        } else {
            let list = text(vars, "vars")?;
            VarSet::from_names(list.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()))?
        };
        if csv.is_null() {
            return Err(null("csv"));
        }
        let team = build_armstrong(&ArmstrongSpec::new(sigma.clone(), universe))?;
        put(csv, owned_string(team.to_csv_string()), "csv")
    })
}

/// Rewrites an atom or formula; atoms yield one replacement per line.
///
/// # Safety
/// `input` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gdep_translate(
    input: *const c_char,
    direction: GdepDirection,
    out: *mut *mut c_char,
) -> GdepStatus {
    guard(|| {
        let direction = match direction {
            GdepDirection::ToGdep => Direction::ToGDep,
            GdepDirection::ToFdep => Direction::ToFDep,
        };
        let lines = translate_text(text(input, "input")?, direction)?;
        let joined: String = lines.iter().map(|l| format!("{l}\n")).collect();
        put(out, owned_string(joined), "out")
    })
}

/// Evaluates a formula in a structure (structure-file text) on `team`, or
/// as a sentence when `team` is null. Uses the default search bounds.
///
/// # Safety
/// `structure` and `formula` must be NUL-terminated, `team` a live handle
/// or null, `holds` writable.
#[no_mangle]
pub unsafe extern "C" fn gdep_eval(
    structure: *const c_char,
    formula: *const c_char,
    team: *const GdepTeam,
    holds: *mut bool,
) -> GdepStatus {
    guard(|| {
        let structure = Structure::parse(text(structure, "structure")?)?;
        let phi = parse_formula(text(formula, "formula")?)?;
        let team = match team.as_ref() {
            Some(t) => t.0.clone(),
            None => sentence_team(),
        };
        let verdict = eval(&EvalContext::new(&structure, team), &phi)?;
        put(holds, verdict, "holds")
    })
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn gdep_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be a string returned by this library and not freed yet, or null.
#[no_mangle]
pub unsafe extern "C" fn gdep_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
