//! C ABI over `isospec`.
//!
//! Every fallible function returns an [`IsospecStatus`] and writes its result
//! through an out-pointer. On failure the out-pointer is left untouched and
//! [`isospec_last_error_message`] / [`isospec_last_error_name`] describe the
//! error for the calling thread.
//!
//! Strings returned through `char **` are owned by the caller and must be
//! released with [`isospec_string_free`]. Handles are released with their
//! matching `_free` function.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use isospec::brauer::ClassJson;
use isospec::commensurability::{choose_t, enumerate_family, PlaceUniverse};
use isospec::cyclic_symbols::{hilbert_symbol, quaternion_class};
use isospec::gassmann::{are_conjugate, is_gassmann, GroupSpec, SubgroupSpec};
use isospec::spectra::{char_poly, AdjacencyMatrix};
use isospec::{arith, decide_ring_relation, BrauerClass, PermGroup, Place};
use libc::c_char;
use num_rational::Rational64;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsospecStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    /// A library error; its name (e.g. `SumNonZero`) is available from
    /// `isospec_last_error_name`.
    DomainError = 4,
    Panic = 5,
}

/// Opaque handle to a validated Brauer class.
pub struct IsospecClass(BrauerClass);

/// Opaque handle to a closed permutation group.
pub struct IsospecGroup(PermGroup);

struct LastError {
    name: CString,
    message: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

struct Failure {
    status: IsospecStatus,
    name: String,
    message: String,
}

impl Failure {
    fn new(status: IsospecStatus, name: &str, message: impl Into<String>) -> Self {
        Failure { status, name: name.into(), message: message.into() }
    }

    fn null(what: &str) -> Self {
        Failure::new(IsospecStatus::NullPointer, "NullPointer", format!("{what} is null"))
    }

    fn json(e: serde_json::Error) -> Self {
        Failure::new(IsospecStatus::InvalidJson, "InvalidJson", e.to_string())
    }
}

impl<E: Into<isospec::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e = e.into();
        Failure::new(IsospecStatus::DomainError, e.name(), e.to_string())
    }
}

fn to_cstring(s: String) -> CString {
    CString::new(s).unwrap_or_else(|e| {
        let mut bytes = e.into_vec();
        bytes.retain(|&b| b != 0);
        CString::new(bytes).expect("interior nuls removed")
    })
}

fn set_last_error(f: &Failure) {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(LastError { name: to_cstring(f.name.clone()), message: to_cstring(f.message.clone()) });
    });
}

/// Runs `body`, converting failures and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> IsospecStatus {
    let failure = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            return IsospecStatus::Ok;
        }
        Ok(Err(f)) => f,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            Failure::new(IsospecStatus::Panic, "Panic", message)
        }
    };
    set_last_error(&failure);
    failure.status
}

/// # Safety
/// `p` is null or a valid nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure::new(IsospecStatus::InvalidUtf8, "InvalidUtf8", format!("{what}: {e}")))
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, value: &impl serde::Serialize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("output pointer"));
    }
    let text = serde_json::to_string(value).map_err(Failure::json)?;
    write_out(out, to_cstring(text).into_raw())
}

unsafe fn class_ref<'a>(p: *const IsospecClass, what: &str) -> Result<&'a BrauerClass, Failure> {
    p.as_ref().map(|c| &c.0).ok_or_else(|| Failure::null(what))
}

fn rational(num: i64, den: i64) -> Result<Rational64, Failure> {
    if den == 0 {
        return Err(Failure::new(IsospecStatus::DomainError, "ZeroDenominator", "denominator is zero"));
    }
    Ok(Rational64::new(num, den))
}

/// Message of the calling thread's most recent error, or null if the last
/// call succeeded. Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn isospec_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |e| e.message.as_ptr()))
}

/// Name of the most recent error (e.g. `SumNonZero`), or null.
#[no_mangle]
pub extern "C" fn isospec_last_error_name() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |e| e.name.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn isospec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates `{"invariants": {"p:2": "1/3", ...}}`.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_class_from_json(json: *const c_char, out: *mut *mut IsospecClass) -> IsospecStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let class = serde_json::from_str::<ClassJson>(text).map_err(Failure::json)?.into_class()?;
        write_out(out, Box::into_raw(Box::new(IsospecClass(class))))
    })
}

/// # Safety
/// `handle` is live; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_class_to_json(handle: *const IsospecClass, out: *mut *mut c_char) -> IsospecStatus {
    guard(|| write_json(out, class_ref(handle, "handle")?))
}

/// # Safety
/// `handle` is live; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_class_exponent(handle: *const IsospecClass, out: *mut u64) -> IsospecStatus {
    guard(|| write_out(out, class_ref(handle, "handle")?.exponent()))
}

/// # Safety
/// `handle` is live; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_class_opposite(handle: *const IsospecClass, out: *mut *mut IsospecClass) -> IsospecStatus {
    guard(|| {
        let opposite = class_ref(handle, "handle")?.opposite();
        write_out(out, Box::into_raw(Box::new(IsospecClass(opposite))))
    })
}

/// Whether two handles hold the same class.
///
/// # Safety
/// Both handles are live; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_class_equal(a: *const IsospecClass, b: *const IsospecClass, out: *mut bool) -> IsospecStatus {
    guard(|| write_out(out, class_ref(a, "a")? == class_ref(b, "b")?))
}

/// # Safety
/// `handle` is null or not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isospec_class_free(handle: *mut IsospecClass) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Class of the quaternion algebra `(a_num/a_den, b_num/b_den)` over ℚ.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_quaternion_class(
    a_num: i64,
    a_den: i64,
    b_num: i64,
    b_den: i64,
    out: *mut *mut IsospecClass,
) -> IsospecStatus {
    guard(|| {
        let class = quaternion_class(rational(a_num, a_den)?, rational(b_num, b_den)?)?;
        write_out(out, Box::into_raw(Box::new(IsospecClass(class))))
    })
}

/// Hilbert symbol `(a, b)` at `place` (`"p:7"`, `"real"`); writes `1` or `-1`.
///
/// # Safety
/// `place` is a nul-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_hilbert_symbol(
    a_num: i64,
    a_den: i64,
    b_num: i64,
    b_den: i64,
    place: *const c_char,
    out: *mut i8,
) -> IsospecStatus {
    guard(|| {
        let place = Place::from_label(read_str(place, "place")?)?;
        write_out(out, hilbert_symbol(rational(a_num, a_den)?, rational(b_num, b_den)?, &place)?)
    })
}

/// Certificate JSON for `m` classes of degree `d` over ℚ on the smallest
/// admissible number of primes.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_family_json(d: u64, m: u64, out: *mut *mut c_char) -> IsospecStatus {
    guard(|| {
        let primes = arith::first_primes(choose_t(m, d)?);
        let u = PlaceUniverse::rationals(&primes)?;
        let places: Vec<Place> = primes.iter().map(|&p| Place::prime(p)).collect();
        write_json(out, &enumerate_family(&u, d, m, &places)?)
    })
}

/// Ring relation of two classes over ℚ (trivial automorphism group).
///
/// # Safety
/// Both handles are live; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_classify_json(a: *const IsospecClass, b: *const IsospecClass, out: *mut *mut c_char) -> IsospecStatus {
    guard(|| {
        let (a, b) = (class_ref(a, "a")?, class_ref(b, "b")?);
        let mut primes: Vec<u64> = a.entries().chain(b.entries()).filter_map(|(p, _)| p.rational_prime()).collect();
        primes.sort_unstable();
        primes.dedup();
        let u = PlaceUniverse::rationals(&primes)?;
        write_json(out, &decide_ring_relation(&u, a, b)?)
    })
}

/// Closes `{"degree": n, "generators": [...]}` into a group.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_group_from_json(json: *const c_char, out: *mut *mut IsospecGroup) -> IsospecStatus {
    guard(|| {
        let spec: GroupSpec = serde_json::from_str(read_str(json, "json")?).map_err(Failure::json)?;
        write_out(out, Box::into_raw(Box::new(IsospecGroup(spec.close()?))))
    })
}

/// # Safety
/// `group` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_group_order(group: *const IsospecGroup, out: *mut u64) -> IsospecStatus {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| Failure::null("group"))?;
        write_out(out, g.0.order() as u64)
    })
}

/// # Safety
/// `group` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isospec_group_free(group: *mut IsospecGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Per-class Gassmann report for two subgroups given as JSON.
///
/// # Safety
/// `group` is a live handle; `h1`, `h2` are nul-terminated; `out` is valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_gassmann_json(
    group: *const IsospecGroup,
    h1: *const c_char,
    h2: *const c_char,
    out: *mut *mut c_char,
) -> IsospecStatus {
    guard(|| {
        let g = &group.as_ref().ok_or_else(|| Failure::null("group"))?.0;
        let parse = |p, what| -> Result<_, Failure> {
            let spec: SubgroupSpec = serde_json::from_str(read_str(p, what)?).map_err(Failure::json)?;
            Ok(spec.resolve(g)?)
        };
        let (s1, s2) = (parse(h1, "h1")?, parse(h2, "h2")?);
        let report = is_gassmann(g, &s1, &s2);
        let value = serde_json::json!({
            "is_gassmann": report.is_gassmann,
            "conjugate": are_conjugate(g, &s1, &s2),
            "classes": report.classes,
        });
        write_json(out, &value)
    })
}

/// Characteristic polynomial of a symmetric nonnegative integer matrix
/// given as a JSON list of rows.
///
/// # Safety
/// `matrix` is nul-terminated; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn isospec_char_poly_json(matrix: *const c_char, out: *mut *mut c_char) -> IsospecStatus {
    guard(|| {
        let a: AdjacencyMatrix = match serde_json::from_str(read_str(matrix, "matrix")?) {
            Ok(a) => a,
            Err(e) if e.is_data() => {
                let rows: Vec<Vec<u64>> = serde_json::from_str(read_str(matrix, "matrix")?).map_err(Failure::json)?;
                AdjacencyMatrix::new(rows)?
            }
            Err(e) => return Err(Failure::json(e)),
        };
        write_json(out, &char_poly(&a))
    })
}
