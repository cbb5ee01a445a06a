//! C interface to the `takiff` library.
//!
//! A [`TakiffContext`] owns a root system and its caches; create one with
//! [`takiff_context_new`] and release it with [`takiff_context_free`]. Every
//! fallible call returns a [`TakiffStatus`]; on failure a description is
//! available from [`takiff_last_error`] on the same thread. Strings handed
//! out by the library must be released with [`takiff_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use takiff::klbgg::{kl_polynomial, KlCache};
use takiff::rootdata::{parse_weight, CartanType, RootVector, Weight};
use takiff::takiffmult::{levi_json, series_json, Engine};
use takiff::weyl::{minimal_levi_reduction, parse_word, WeylElement};
use takiff::Error;

/// Result codes of the C interface.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TakiffStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An argument could not be parsed or has the wrong shape.
    InvalidInput = 3,
    /// The computation itself failed.
    ComputationFailed = 4,
    /// Reading or writing the KL cache file failed.
    CacheError = 5,
    /// The library panicked; the context should be discarded.
    Panic = 6,
}

/// Opaque handle: a root system plus partition and KL caches.
pub struct TakiffContext {
    engine: Engine,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(TakiffStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_)
            | Error::UnknownFamily(_)
            | Error::RankOutOfBounds(_)
            | Error::Dimension(_)
            | Error::InvalidWord(_)
            | Error::NotARoot(_) => TakiffStatus::InvalidInput,
            Error::Cache(_) => TakiffStatus::CacheError,
            _ => TakiffStatus::ComputationFailed,
        };
        Failure(status, e.to_string())
    }
}

/// Runs `body`, translating errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> TakiffStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            TakiffStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            TakiffStatus::Panic
        }
    }
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(
            TakiffStatus::NullArgument,
            format!("`{name}` is null"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(TakiffStatus::InvalidUtf8, format!("`{name}` is not UTF-8")))
}

/// # Safety
/// `p` must be null or point to a live context.
unsafe fn context<'a>(p: *const TakiffContext) -> Result<&'a TakiffContext, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(TakiffStatus::NullArgument, "`ctx` is null".into()))
}

fn out_ptr<T>(p: *mut T) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(
            TakiffStatus::NullArgument,
            "output pointer is null".into(),
        ))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("library output has no NUL bytes")
        .into_raw()
}

impl TakiffContext {
    unsafe fn weight(&self, p: *const c_char, name: &str) -> Result<Weight, Failure> {
        let rs = self.engine.root_system();
        let text = read_str(p, name)?;
        parse_weight(text, rs.rank(), rs.torus_rank())
            .map_err(|e| Failure(TakiffStatus::InvalidInput, format!("{name}: {e}")))
    }

    unsafe fn element(&self, p: *const c_char, name: &str) -> Result<WeylElement, Failure> {
        let rs = self.engine.root_system();
        let word = parse_word(read_str(p, name)?, rs.rank())?;
        Ok(WeylElement::from_word(rs.cartan_matrix(), &word)?)
    }
}

/// Creates a context for a Cartan type such as `"A2"` or `"B2xA1+T1"`.
/// `cache_path` may be null for an in-memory KL cache.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn takiff_context_new(
    cartan_type: *const c_char,
    cache_path: *const c_char,
    out: *mut *mut TakiffContext,
) -> TakiffStatus {
    guard(|| {
        out_ptr(out)?;
        *out = ptr::null_mut();
        let ty: CartanType = read_str(cartan_type, "cartan_type")?.parse()?;
        let kl = if cache_path.is_null() {
            KlCache::new()
        } else {
            KlCache::open(read_str(cache_path, "cache_path")?)?
        };
        let ctx = Box::new(TakiffContext {
            engine: Engine::new(&ty, Arc::new(kl)),
        });
        *out = Box::into_raw(ctx);
        Ok(())
    })
}

/// Releases a context. Null is ignored.
///
/// # Safety
/// `ctx` must be null or come from [`takiff_context_new`], and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn takiff_context_free(ctx: *mut TakiffContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Rank of the semisimple part of the context's root system.
///
/// # Safety
/// `ctx` must be a live context; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn takiff_rank(ctx: *const TakiffContext, out: *mut usize) -> TakiffStatus {
    guard(|| {
        out_ptr(out)?;
        *out = context(ctx)?.engine.root_system().rank();
        Ok(())
    })
}

/// Kostant's partition function at `chi`, given as comma-separated
/// simple-root coordinates (e.g. `"-1,-1"`).
///
/// # Safety
/// `ctx` must be a live context, `chi` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn takiff_partition(
    ctx: *const TakiffContext,
    chi: *const c_char,
    out: *mut u64,
) -> TakiffStatus {
    guard(|| {
        out_ptr(out)?;
        let ctx = context(ctx)?;
        let text = read_str(chi, "chi")?;
        let rank = ctx.engine.root_system().rank();
        let coords = text
            .split(',')
            .enumerate()
            .map(|(k, t)| {
                t.trim().parse::<i64>().map_err(|_| {
                    Failure(
                        TakiffStatus::InvalidInput,
                        format!("chi: invalid integer `{}` at position {}", t.trim(), k + 1),
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != rank {
            return Err(Failure(
                TakiffStatus::InvalidInput,
                format!("chi: expected {rank} coordinates"),
            ));
        }
        *out = ctx.engine.ambient_partitions().p(&RootVector(coords));
        Ok(())
    })
}

/// The multiplicity `[M(lambda, mu) : L(lambda2, mu2)]`. Weights are
/// comma-separated rationals, central coordinates after a `;`.
///
/// # Safety
/// `ctx` must be a live context, strings NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn takiff_mult(
    ctx: *const TakiffContext,
    lambda: *const c_char,
    mu: *const c_char,
    lambda2: *const c_char,
    mu2: *const c_char,
    out: *mut u64,
) -> TakiffStatus {
    guard(|| {
        out_ptr(out)?;
        let ctx = context(ctx)?;
        let report = ctx.engine.mult(
            &ctx.weight(lambda, "lambda")?,
            &ctx.weight(mu, "mu")?,
            &ctx.weight(lambda2, "lambda2")?,
            &ctx.weight(mu2, "mu2")?,
        )?;
        *out = report.value;
        Ok(())
    })
}

/// As [`takiff_mult`], returning the full report as JSON.
///
/// # Safety
/// As [`takiff_mult`]; free the result with [`takiff_string_free`].
#[no_mangle]
pub unsafe extern "C" fn takiff_mult_report_json(
    ctx: *const TakiffContext,
    lambda: *const c_char,
    mu: *const c_char,
    lambda2: *const c_char,
    mu2: *const c_char,
    out: *mut *mut c_char,
) -> TakiffStatus {
    guard(|| {
        out_ptr(out)?;
        *out = ptr::null_mut();
        let ctx = context(ctx)?;
        let report = ctx.engine.mult(
            &ctx.weight(lambda, "lambda")?,
            &ctx.weight(mu, "mu")?,
            &ctx.weight(lambda2, "lambda2")?,
            &ctx.weight(mu2, "mu2")?,
        )?;
        *out = into_c_string(report.to_json(ctx.engine.root_system()).to_string());
        Ok(())
    })
}

/// Nonzero multiplicities in `M(lambda, mu)` down to `height`, as JSON.
///
/// # Safety
/// `ctx` must be a live context, strings NUL-terminated, `out` writable;
/// free the result with [`takiff_string_free`].
#[no_mangle]
pub unsafe extern "C" fn takiff_series_json(
    ctx: *const TakiffContext,
    lambda: *const c_char,
    mu: *const c_char,
    height: u32,
    out: *mut *mut c_char,
) -> TakiffStatus {
    guard(|| {
        out_ptr(out)?;
        *out = ptr::null_mut();
        let ctx = context(ctx)?;
        let lambda = ctx.weight(lambda, "lambda")?;
        let mu = ctx.weight(mu, "mu")?;
        let entries = ctx.engine.series(&lambda, &mu, height)?;
        *out = into_c_string(series_json(&lambda, &mu, height, &entries).to_string());
        Ok(())
    })
}

/// The minimal Weyl element making the centraliser of `mu` standard, with
/// `w(mu)` and the Levi, as JSON.
///
/// # Safety
/// `ctx` must be a live context, `mu` NUL-terminated, `out` writable; free
/// the result with [`takiff_string_free`].
#[no_mangle]
pub unsafe extern "C" fn takiff_reduce_json(
    ctx: *const TakiffContext,
    mu: *const c_char,
    out: *mut *mut c_char,
) -> TakiffStatus {
    guard(|| {
        out_ptr(out)?;
        *out = ptr::null_mut();
        let ctx = context(ctx)?;
        let rs = ctx.engine.root_system();
        let red = minimal_levi_reduction(&ctx.weight(mu, "mu")?, rs);
        let doc = serde_json::json!({
            "w": red.w.to_string(),
            "mu_prime": red.mu_prime,
            "levi": levi_json(&red.levi, rs),
        });
        *out = into_c_string(doc.to_string());
        Ok(())
    })
}

/// The Kazhdan–Lusztig polynomial `P_{x,w}` rendered as text, e.g. `"1 + q"`.
/// Words use 1-based letters (`"2132"`, `"e"`).
///
/// # Safety
/// `ctx` must be a live context, words NUL-terminated, `out` writable; free
/// the result with [`takiff_string_free`].
#[no_mangle]
pub unsafe extern "C" fn takiff_kl_polynomial(
    ctx: *const TakiffContext,
    x: *const c_char,
    w: *const c_char,
    out: *mut *mut c_char,
) -> TakiffStatus {
    guard(|| {
        out_ptr(out)?;
        *out = ptr::null_mut();
        let ctx = context(ctx)?;
        let x = ctx.element(x, "x")?;
        let w = ctx.element(w, "w")?;
        let p = kl_polynomial(
            ctx.engine.root_system().cartan_matrix(),
            &x,
            &w,
            ctx.engine.kl(),
        )?;
        *out = into_c_string(p.to_string());
        Ok(())
    })
}

/// Appends newly computed KL records to the context's cache file, if any.
///
/// # Safety
/// `ctx` must be a live context.
#[no_mangle]
pub unsafe extern "C" fn takiff_flush_cache(ctx: *const TakiffContext) -> TakiffStatus {
    guard(|| {
        context(ctx)?.engine.kl().flush()?;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn takiff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Description of the last failure on this thread, or null. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn takiff_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
