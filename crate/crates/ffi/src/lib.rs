//! C interface to `ncop`: opaque handles, status codes and a per-thread
//! error message.

use ncop::brick::LatticePolytope;
use ncop::free::MonomialOrder;
use ncop::groebner::{complete, GroebnerBasis, Presentation};
use ncop::intersection::{correlator_trr, CorrelatorIndex};
use ncop::zoo::{presentation_of, ZooName};
use ncop::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcopStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownName = 3,
    ParseError = 4,
    OutOfRange = 5,
    ResourceGuard = 6,
    CertificateFailed = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// A presentation together with the monomial order used to complete it.
pub struct NcopPresentation {
    presentation: Presentation,
    order: MonomialOrder,
}

pub struct NcopBasis(GroebnerBasis);

pub struct NcopPolytope(LatticePolytope);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> NcopStatus {
    match e {
        Error::Invalid(_) => NcopStatus::InvalidArgument,
        Error::OutOfRange { .. } => NcopStatus::OutOfRange,
        Error::ArityCap { .. } | Error::Resource(_) => NcopStatus::ResourceGuard,
        Error::Parse { .. } => NcopStatus::ParseError,
        Error::UnknownName(_) => NcopStatus::UnknownName,
        Error::Certificate(_) => NcopStatus::CertificateFailed,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (NcopStatus, String)>) -> NcopStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            NcopStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            NcopStatus::Panic
        }
    }
}

fn lib(e: Error) -> (NcopStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (NcopStatus, String) {
    (NcopStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (NcopStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (NcopStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (NcopStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (NcopStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

/// Copies the calling thread's last error message into `buf` as a
/// NUL-terminated string and returns its length without the terminator.
/// Passing a null `buf` or too small a `len` only reports the length.
///
/// # Safety
/// `buf` must be null or valid for `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ncop_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_bytes();
        if !buf.is_null() && len > bytes.len() {
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
            *buf.add(bytes.len()) = 0;
        }
        bytes.len()
    })
}

/// A named operad (`ncHyperCom`, `ncGrav`, `2ncGerst`, ...) with generators up to arity `cap`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncop_presentation_named(name: *const c_char, cap: usize, out: *mut *mut NcopPresentation) -> NcopStatus {
    guard(|| {
        let name: ZooName = read_str(name, "name")?.parse().map_err(lib)?;
        let op = presentation_of(&name, cap).map_err(lib)?;
        let h = Box::new(NcopPresentation { presentation: op.presentation, order: op.preferred_order });
        write_out(out, Box::into_raw(h))
    })
}

/// A presentation in the line format `name N`, `gen NAME ARITY DEGREE`,
/// `rel ELEMENT`; it is completed under the path-lexicographic order.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncop_presentation_parse(text: *const c_char, out: *mut *mut NcopPresentation) -> NcopStatus {
    guard(|| {
        let p = Presentation::from_text(read_str(text, "text")?).map_err(lib)?;
        let order = MonomialOrder::path_lex(&p.alphabet);
        write_out(out, Box::into_raw(Box::new(NcopPresentation { presentation: p, order })))
    })
}

/// # Safety
/// `p` must be null or a handle from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn ncop_presentation_free(p: *mut NcopPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of relations of the given arity.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncop_presentation_relation_count(p: *const NcopPresentation, arity: usize, out: *mut usize) -> NcopStatus {
    guard(|| {
        let p = handle(p, "presentation")?;
        write_out(out, p.presentation.relations_in_arity(arity).len())
    })
}

/// Completes to a Gröbner basis through arity `cap`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncop_groebner_complete(p: *const NcopPresentation, cap: usize, out: *mut *mut NcopBasis) -> NcopStatus {
    guard(|| {
        let p = handle(p, "presentation")?;
        let g = complete(&p.presentation, &p.order, cap).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(NcopBasis(g))))
    })
}

/// # Safety
/// `b` must be null or a handle from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn ncop_basis_free(b: *mut NcopBasis) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Rules added by completion beyond the span of the input relations.
///
/// # Safety
/// `b` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncop_basis_additions(b: *const NcopBasis, out: *mut usize) -> NcopStatus {
    guard(|| write_out(out, handle(b, "basis")?.0.additions))
}

/// Dimension of the arity-n component in the given degree.
///
/// # Safety
/// `b` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncop_basis_dimension(b: *const NcopBasis, n: usize, degree: i64, out: *mut usize) -> NcopStatus {
    guard(|| {
        let t = handle(b, "basis")?.0.hilbert(n).map_err(lib)?;
        write_out(out, t.get(&degree).copied().unwrap_or(0))
    })
}

/// Total dimension of the arity-n component.
///
/// # Safety
/// `b` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncop_basis_total(b: *const NcopBasis, n: usize, out: *mut usize) -> NcopStatus {
    guard(|| {
        let t = handle(b, "basis")?.0.hilbert(n).map_err(lib)?;
        write_out(out, t.values().sum())
    })
}

/// The Loday polytope L_n in Z^{n-1}.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncop_polytope_loday(n: usize, out: *mut *mut NcopPolytope) -> NcopStatus {
    guard(|| {
        let p = ncop::brick::loday_polytope(n).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(NcopPolytope(p))))
    })
}

/// # Safety
/// `p` must be null or a handle from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn ncop_polytope_free(p: *mut NcopPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of vertices and the ambient dimension.
///
/// # Safety
/// `p` must be a live handle; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ncop_polytope_shape(p: *const NcopPolytope, vertices: *mut usize, ambient: *mut usize) -> NcopStatus {
    guard(|| {
        let p = handle(p, "polytope")?;
        write_out(vertices, p.0.vertices.len())?;
        write_out(ambient, p.0.ambient)
    })
}

/// Copies the coordinates of vertex `i` into `buf`, which holds `len` entries.
///
/// # Safety
/// `p` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn ncop_polytope_vertex(p: *const NcopPolytope, i: usize, buf: *mut i64, len: usize) -> NcopStatus {
    guard(|| {
        let p = handle(p, "polytope")?;
        let v = p.0.vertices.get(i).ok_or_else(|| lib(Error::OutOfRange { index: i, len: p.0.vertices.len() }))?;
        if buf.is_null() {
            return Err(null("buffer"));
        }
        if len < v.len() {
            return Err((NcopStatus::BufferTooSmall, format!("vertex needs {} entries", v.len())));
        }
        std::ptr::copy_nonoverlapping(v.as_ptr(), buf, v.len());
        Ok(())
    })
}

/// The genus-zero correlator with root exponent `d0` and input exponents `ds[0..n]`.
///
/// # Safety
/// `ds` must be valid for `n` reads and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncop_correlator(d0: u32, ds: *const u32, n: usize, out: *mut i64) -> NcopStatus {
    guard(|| {
        if ds.is_null() {
            return Err(null("exponents"));
        }
        let idx = CorrelatorIndex::new(d0, std::slice::from_raw_parts(ds, n).to_vec()).map_err(lib)?;
        let v = correlator_trr(&idx);
        write_out(out, i64::try_from(v).map_err(|_| (NcopStatus::ResourceGuard, "value exceeds 64 bits".to_string()))?)
    })
}

/// Runs acceptance criterion `id` (1..=9); `pass` receives the verdict and a
/// failure also returns `CertificateFailed` with the witness as the error message.
///
/// # Safety
/// `pass` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncop_certify(id: usize, seed: u64, pass: *mut bool) -> NcopStatus {
    guard(|| {
        let c = ncop::acceptance::run(id, seed).map_err(lib)?;
        write_out(pass, c.pass)?;
        if c.pass {
            Ok(())
        } else {
            Err((NcopStatus::CertificateFailed, c.detail))
        }
    })
}
