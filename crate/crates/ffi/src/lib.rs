//! C ABI for `stratavol`.
//!
//! Every fallible function returns an [`SvStatus`]; on failure a message is
//! available from [`sv_last_error_message`] on the same thread. Results are
//! returned through out-pointers as opaque handles or heap strings, each
//! with a matching `*_free` function. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use stratavol::arith::{fraction_string, frak_z, rat};
use stratavol::coverings::{cov_d, CoverProfile};
use stratavol::cumulants::{
    c_const, c_simple, elementary_cumulant, volume_with, CumulantKey, StratumSpec, VolumeOptions,
    VolumeResult,
};
use stratavol::npoint::{verify_one_point, EvaluatedPoint};
use stratavol::shifted::f_top_expansion;
use stratavol::{Error, PiScalar};

/// Status codes. The first four agree with the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SvStatus {
    Ok = 0,
    Verification = 1,
    Domain = 2,
    Resource = 3,
    NullPointer = 4,
    Parse = 5,
    Internal = 6,
}

/// An exact rational multiple of a power of pi.
pub struct SvPiScalar(PiScalar);

/// The volume of a stratum together with its genus, dimension and the
/// leading constant it was derived from.
pub struct SvVolume(VolumeResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SvStatus {
    match err {
        Error::Verification(_) => SvStatus::Verification,
        Error::Domain(_) => SvStatus::Domain,
        Error::Resource(_) => SvStatus::Resource,
        Error::Parse(_) => SvStatus::Parse,
        _ => SvStatus::Internal,
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (SvStatus, String)> + UnwindSafe) -> SvStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(f) {
        Ok(Ok(())) => SvStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error (panic)".into());
            SvStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (SvStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(name: &str) -> (SvStatus, String) {
    (SvStatus::NullPointer, format!("{name} is null"))
}

/// # Safety
/// `ptr` must be null (only when `len == 0`) or point to `len` readable
/// `u32` values.
unsafe fn slice<'a>(ptr: *const u32, len: usize) -> Result<&'a [u32], (SvStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null_err("array pointer"));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (SvStatus, String)> {
    if out.is_null() {
        return Err(null_err("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn sv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message describing the last failure on this thread, or null. The
/// pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn sv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn scalar_out(out: *mut *mut SvPiScalar, v: PiScalar) -> Result<(), (SvStatus, String)> {
    unsafe { write_out(out, Box::into_raw(Box::new(SvPiScalar(v)))) }
}

/// Elementary cumulant `<<m_1, ..., m_n>>` for positive entries.
///
/// # Safety
/// `parts` must point to `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sv_cumulant(
    parts: *const u32,
    len: usize,
    out: *mut *mut SvPiScalar,
) -> SvStatus {
    guard(|| {
        let parts = slice(parts, len)?.to_vec();
        let key = CumulantKey::new(parts).map_err(lib_err)?;
        scalar_out(out, elementary_cumulant(&key).map_err(lib_err)?)
    })
}

/// Leading constant `c(m)` of connected covering counts; entries `>= 2`.
///
/// # Safety
/// `profile` must point to `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sv_c_const(
    profile: *const u32,
    len: usize,
    out: *mut *mut SvPiScalar,
) -> SvStatus {
    guard(|| {
        let m = slice(profile, len)?.to_vec();
        let profile = CoverProfile::new(m).map_err(lib_err)?;
        scalar_out(out, c_const(&profile).map_err(lib_err)?)
    })
}

/// `c(2, ..., 2)` with `n` entries, from the closed form.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sv_c_simple(n: u32, out: *mut *mut SvPiScalar) -> SvStatus {
    guard(|| scalar_out(out, c_simple(n).map_err(lib_err)?))
}

/// `(2 - 2^{2-k}) zeta(k)` for even `k >= 2`, `1` at `k = 0`, else `0`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sv_frak_z(k: i64, out: *mut *mut SvPiScalar) -> SvStatus {
    guard(|| scalar_out(out, frak_z(k)))
}

/// # Safety
/// `s` must be a live handle from this library.
unsafe fn scalar_ref<'a>(s: *const SvPiScalar) -> Option<&'a PiScalar> {
    s.as_ref().map(|s| &s.0)
}

/// Numerator of the rational coefficient as a decimal string (free with
/// [`sv_string_free`]); null if `s` is null.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sv_pi_scalar_numerator(s: *const SvPiScalar) -> *mut c_char {
    scalar_ref(s).map_or(ptr::null_mut(), |v| {
        into_c_string(v.coeff().numer().to_string())
    })
}

/// Denominator of the rational coefficient, always positive.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sv_pi_scalar_denominator(s: *const SvPiScalar) -> *mut c_char {
    scalar_ref(s).map_or(ptr::null_mut(), |v| {
        into_c_string(v.coeff().denom().to_string())
    })
}

/// Power of pi; zero for the zero scalar or a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sv_pi_scalar_pi_pow(s: *const SvPiScalar) -> u32 {
    scalar_ref(s).map_or(0, PiScalar::pi_pow)
}

/// Human-readable form such as `"8/297675 pi^6"`.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sv_pi_scalar_to_string(s: *const SvPiScalar) -> *mut c_char {
    scalar_ref(s).map_or(ptr::null_mut(), |v| into_c_string(v.to_string()))
}

/// # Safety
/// `s` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sv_pi_scalar_free(s: *mut SvPiScalar) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Volume of the stratum with zero orders `mu` (each `>= 1`, even total).
/// With `cross_check`, strata with only simple zeros are also computed by
/// the general route and compared.
///
/// # Safety
/// `mu` must point to `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sv_volume_compute(
    mu: *const u32,
    len: usize,
    cross_check: bool,
    out: *mut *mut SvVolume,
) -> SvStatus {
    guard(|| {
        let mu = slice(mu, len)?.to_vec();
        let spec = StratumSpec::new(mu).map_err(lib_err)?;
        let v = volume_with(&spec, VolumeOptions { cross_check }).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(SvVolume(v))))
    })
}

/// # Safety
/// `v` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sv_volume_genus(v: *const SvVolume) -> u32 {
    v.as_ref().map_or(0, |v| v.0.genus)
}

/// # Safety
/// `v` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sv_volume_dim(v: *const SvVolume) -> u32 {
    v.as_ref().map_or(0, |v| v.0.dim)
}

/// Copies the volume into a new scalar handle.
///
/// # Safety
/// `v` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sv_volume_value(
    v: *const SvVolume,
    out: *mut *mut SvPiScalar,
) -> SvStatus {
    guard(|| {
        let v = v.as_ref().ok_or_else(|| null_err("volume handle"))?;
        scalar_out(out, v.0.volume.clone())
    })
}

/// JSON object with keys `mu`, `genus`, `dim`, `c`, `volume`, `route`.
///
/// # Safety
/// `v` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sv_volume_to_json(v: *const SvVolume) -> *mut c_char {
    v.as_ref().map_or(ptr::null_mut(), |v| {
        into_c_string(serde_json::to_string(&v.0).expect("volume serializes"))
    })
}

/// # Safety
/// `v` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sv_volume_free(v: *mut SvVolume) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Weighted count of degree-`d` covers with the given profile, as a
/// fraction string `"p"` or `"p/q"`.
///
/// # Safety
/// `profile` must point to `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sv_cov_d(
    profile: *const u32,
    len: usize,
    d: u32,
    out: *mut *mut c_char,
) -> SvStatus {
    guard(|| {
        let m = slice(profile, len)?.to_vec();
        let profile = CoverProfile::new(m).map_err(lib_err)?;
        write_out(out, into_c_string(fraction_string(&cov_d(&profile, d))))
    })
}

/// Top-weight expansion of `f_k`, e.g. `"1/4 p[4] - 1 p[2,1]"` for `k = 4`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sv_fk_expand(k: u32, out: *mut *mut c_char) -> SvStatus {
    guard(|| {
        if k == 0 {
            return Err((SvStatus::Domain, "k must be positive".into()));
        }
        write_out(out, into_c_string(f_top_expansion(k).to_string()))
    })
}

/// Checks the one-point theta identity at `s = num / den` through `q^order`
/// and stores whether it holds.
///
/// # Safety
/// `holds` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sv_npoint_check(
    num: i64,
    den: i64,
    order: u32,
    holds: *mut bool,
) -> SvStatus {
    guard(|| {
        if den == 0 {
            return Err((SvStatus::Domain, "denominator is zero".into()));
        }
        let point = EvaluatedPoint::new(rat(num, den)).map_err(lib_err)?;
        let report = verify_one_point(&point, order as usize).map_err(lib_err)?;
        write_out(holds, report.holds())
    })
}

/// Reads a nul-terminated string; used by bindings that pass partitions as
/// text such as `"3,1"`.
///
/// # Safety
/// `s` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (SvStatus, String)> {
    if s.is_null() {
        return Err(null_err("string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (SvStatus::Parse, "string is not UTF-8".into()))
}

/// Volume of the stratum given as comma-separated zero orders, e.g. `"3,1"`.
///
/// # Safety
/// `mu` must be a valid nul-terminated string; `out` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn sv_volume_parse(mu: *const c_char, out: *mut *mut SvVolume) -> SvStatus {
    guard(|| {
        let text = read_str(mu)?;
        let parts = text
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| (SvStatus::Parse, format!("cannot parse {text:?}")))?;
        let spec = StratumSpec::new(parts).map_err(lib_err)?;
        let v = volume_with(&spec, VolumeOptions::default()).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(SvVolume(v))))
    })
}
