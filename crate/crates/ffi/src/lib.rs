//! C ABI for `genlimit`.
//!
//! Objects cross the boundary as opaque heap handles released by their
//! `*_free` function. Every fallible call returns a `GlStatus`; on failure
//! `gl_last_error` describes the problem for the calling thread. Strings
//! returned through `char **` out-parameters belong to the caller and are
//! released with `gl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use genlimit::cli::{format_word, parse_word, split_words};
use genlimit::tm::{history_length, joint_intersection};
use genlimit::{analyze, canonical_generate, text, Automaton, BigUint, Error, Family, Oracle, TuringMachine, Verdict};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlStatus {
    Ok = 0,
    Domain = 1,
    Parse = 2,
    ResourceCap = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

pub struct GlAutomaton(Automaton);
pub struct GlFamily(Family);
pub struct GlMachine(TuringMachine);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Status(GlStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GlStatus::Ok,
        Ok(Err(Failure::Status(status, message))) => {
            set_error(message);
            status
        }
        Ok(Err(Failure::Lib(e))) => {
            let status = match e.exit_code() {
                2 => GlStatus::Parse,
                3 => GlStatus::ResourceCap,
                _ => GlStatus::Domain,
            };
            set_error(e.to_string());
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            GlStatus::Panic
        }
    }
}

unsafe fn text_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Status(GlStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(GlStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::Status(GlStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure::Status(GlStatus::NullPointer, format!("{what} is null")))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nuls removed").into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn gl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a single `automaton … end` block.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_automaton_parse(text: *const c_char, out: *mut *mut GlAutomaton) -> GlStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let (_, a) = text::parse_automaton(text_arg(text, "text")?)?;
        *out = Box::into_raw(Box::new(GlAutomaton(a)));
        Ok(())
    })
}

/// # Safety
/// `a` must be null or a handle from `gl_automaton_parse`, freed once.
#[no_mangle]
pub unsafe extern "C" fn gl_automaton_free(a: *mut GlAutomaton) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Membership of a word in command-line syntax (`@` for the empty word).
///
/// # Safety
/// Pointers must be valid; `word` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn gl_automaton_member(a: *const GlAutomaton, word: *const c_char, out: *mut bool) -> GlStatus {
    guard(|| {
        let a = &handle(a, "automaton")?.0;
        let out = out_arg(out, "out")?;
        *out = a.member(&parse_word(text_arg(word, "word")?, a.alphabet()))?;
        Ok(())
    })
}

/// Exact number of accepted words in decimal, or `inf`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gl_automaton_cardinality(a: *const GlAutomaton, out: *mut *mut c_char) -> GlStatus {
    guard(|| {
        let a = &handle(a, "automaton")?.0;
        *out_arg(out, "out")? = c_string(a.cardinality().to_string());
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gl_automaton_is_finite(a: *const GlAutomaton, out: *mut bool) -> GlStatus {
    guard(|| {
        let a = &handle(a, "automaton")?.0;
        *out_arg(out, "out")? = a.is_finite();
        Ok(())
    })
}

/// Parses a family file (one or more automaton blocks, all infinite).
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_family_parse(text: *const c_char, out: *mut *mut GlFamily) -> GlStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let f = text::parse_family(text_arg(text, "text")?)?;
        *out = Box::into_raw(Box::new(GlFamily(f)));
        Ok(())
    })
}

/// Builds the block-structured witness family for block length `n` and
/// `k` members.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_family_witness(n: usize, k: usize, padded: bool, out: *mut *mut GlFamily) -> GlStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let f = genlimit::witness::build(genlimit::WitnessParams { n, k, padded })?;
        *out = Box::into_raw(Box::new(GlFamily(f)));
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a family handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn gl_family_free(f: *mut GlFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of members, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn gl_family_len(f: *const GlFamily) -> usize {
    f.as_ref().map_or(0, |f| f.0.len())
}

/// The least `m` for which the family is `m`-generatable, in decimal.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gl_family_minimal_m(f: *const GlFamily, out: *mut *mut c_char) -> GlStatus {
    guard(|| {
        let f = &handle(f, "family")?.0;
        *out_arg(out, "out")? = c_string(analyze(f)?.minimal_m.to_string());
        Ok(())
    })
}

/// The subfamily table ending in `minimal_m <decimal>`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gl_family_report(f: *const GlFamily, out: *mut *mut c_char) -> GlStatus {
    guard(|| {
        let f = &handle(f, "family")?.0;
        *out_arg(out, "out")? = c_string(analyze(f)?.render(f));
        Ok(())
    })
}

/// The family in file format.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gl_family_write(f: *const GlFamily, out: *mut *mut c_char) -> GlStatus {
    guard(|| {
        let f = &handle(f, "family")?.0;
        *out_arg(out, "out")? = c_string(text::write_family(f));
        Ok(())
    })
}

/// Canonical generator output for comma-separated examples: the generated
/// words up to `max_len`, one per line, then `status infinite|finite`.
///
/// # Safety
/// Pointers must be valid; `examples` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn gl_family_generate(
    f: *const GlFamily,
    examples: *const c_char,
    max_len: usize,
    out: *mut *mut c_char,
) -> GlStatus {
    guard(|| {
        let f = &handle(f, "family")?.0;
        let out = out_arg(out, "out")?;
        let words: Vec<_> = split_words(text_arg(examples, "examples")?)
            .iter()
            .map(|w| parse_word(w, f.alphabet()))
            .collect();
        let g = canonical_generate(f, &words)?;
        let mut s = String::new();
        for w in g.automaton.enumerate(max_len, None) {
            s.push_str(&format_word(&w, f.alphabet()));
            s.push('\n');
        }
        s.push_str(&format!("status {}\n", g.status));
        *out = c_string(s);
        Ok(())
    })
}

/// Parses a `tm … end` block.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_machine_parse(text: *const c_char, out: *mut *mut GlMachine) -> GlStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let (_, m) = text::parse_tm(text_arg(text, "text")?)?;
        *out = Box::into_raw(Box::new(GlMachine(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a machine handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn gl_machine_free(m: *mut GlMachine) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of words of length at most `max_len` in the intersection of the
/// two history-checking PDAs.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gl_machine_history_count(m: *const GlMachine, max_len: usize, out: *mut usize) -> GlStatus {
    guard(|| {
        let m = &handle(m, "machine")?.0;
        let out = out_arg(out, "out")?;
        let (p1, p2) = genlimit::encode(m);
        *out = joint_intersection(&p1, &p2, max_len, 5_000_000)?.len();
        Ok(())
    })
}

/// Length of the machine's history words, or 0 if it does not halt within
/// `max_configs` configurations.
///
/// # Safety
/// `m` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn gl_machine_history_length(m: *const GlMachine, max_configs: usize) -> usize {
    m.as_ref().and_then(|m| history_length(&m.0, max_configs)).unwrap_or(0)
}

/// Decides halting from a generatability bound. `oracle` is a decimal
/// bound, `auto` to derive one by running the machine, or null for none.
/// `configs` receives the halting configuration count, or -1 when the
/// machine does not halt; `proof_case` receives 1, 2 or 3.
///
/// # Safety
/// Pointers must be valid; `oracle` null or nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn gl_machine_decide_halting(
    m: *const GlMachine,
    oracle: *const c_char,
    configs: *mut i64,
    proof_case: *mut i32,
) -> GlStatus {
    guard(|| {
        let m = &handle(m, "machine")?.0;
        let configs = out_arg(configs, "configs")?;
        let proof_case = out_arg(proof_case, "proof_case")?;
        let oracle = if oracle.is_null() {
            Oracle::None
        } else {
            match text_arg(oracle, "oracle")? {
                "auto" => Oracle::Auto(100_000),
                v => Oracle::Value(v.parse::<BigUint>().map_err(|_| {
                    Failure::Status(GlStatus::Domain, format!("oracle `{v}` is not a natural number"))
                })?),
            }
        };
        let d = genlimit::decide_halting(m, &oracle, 1_000_000)?;
        *configs = match d.verdict {
            Verdict::Halts(t) => t as i64,
            Verdict::DoesNotHalt => -1,
        };
        *proof_case = i32::from(d.case);
        Ok(())
    })
}
