//! C ABI over the usem engine.
//!
//! Every call returns a [`UsemStatus`]. On failure a message is available
//! from [`usem_last_error`] on the same thread until the next call. Strings
//! handed out through `out` parameters are owned by the caller and released
//! with [`usem_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use usem_core::model::Timestamp;
use usem_core::query::QueryError;
use usem_core::rdf::Iri;
use usem_core::service::{Config, Engine, IngestBatch, ServiceError};

/// Opaque engine handle.
pub struct UsemEngine {
    engine: Engine,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UsemStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The configuration was missing, unreadable or invalid.
    Config = 3,
    /// Malformed input data, or a modeling error.
    Data = 4,
    /// Query text failed to parse or evaluate.
    Query = 5,
    /// The query used a keyword outside the supported subset.
    UnsupportedQuery = 6,
    /// No evidence or claims exist for the requested user.
    UnknownUser = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', "\\0")).expect("interior NULs escaped");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &ServiceError) -> UsemStatus {
    match e {
        ServiceError::Config(_) | ServiceError::Io { .. } => UsemStatus::Config,
        ServiceError::Query(QueryError::Unsupported { .. }) => UsemStatus::UnsupportedQuery,
        ServiceError::Query(_) => UsemStatus::Query,
        ServiceError::UnknownUser(_) => UsemStatus::UnknownUser,
        ServiceError::Data(_) | ServiceError::Modeling(_) => UsemStatus::Data,
    }
}

struct Failure(UsemStatus, String);

impl From<ServiceError> for Failure {
    fn from(e: ServiceError) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Clears the last error, runs `f` and converts failures and panics into a
/// status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> UsemStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => UsemStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            UsemStatus::Internal
        }
    }
}

unsafe fn arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(UsemStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(UsemStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn engine<'a>(p: *const UsemEngine) -> Result<&'a Engine, Failure> {
    p.as_ref()
        .map(|h| &h.engine)
        .ok_or_else(|| Failure(UsemStatus::NullArgument, "engine is null".into()))
}

unsafe fn put(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(UsemStatus::NullArgument, "out is null".into()));
    }
    let c = CString::new(s).map_err(|e| Failure(UsemStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn check_out<T>(out: *mut *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(UsemStatus::NullArgument, "out is null".into()));
    }
    *out = ptr::null_mut();
    Ok(())
}

/// Loads a TOML configuration and everything it references.
#[no_mangle]
pub unsafe extern "C" fn usem_engine_open(config_path: *const c_char, out: *mut *mut UsemEngine) -> UsemStatus {
    guard(|| {
        check_out(out)?;
        let path = arg(config_path, "config_path")?;
        let config = Config::load(path)?;
        let engine = Engine::from_config(&config)?;
        *out = Box::into_raw(Box::new(UsemEngine { engine }));
        Ok(())
    })
}

/// Releases an engine. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn usem_engine_free(engine: *mut UsemEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Ingests a JSON batch `{"twitter": [...], "citeulike": [...],
/// "linkedin": [...], "turtle": ["..."]}`; any key may be omitted. The
/// ingest report is written to `report_json`.
#[no_mangle]
pub unsafe extern "C" fn usem_ingest_json(
    engine: *const UsemEngine,
    batch_json: *const c_char,
    report_json: *mut *mut c_char,
) -> UsemStatus {
    guard(|| {
        check_out(report_json)?;
        let e = self::engine(engine)?;
        let batch: IngestBatch = serde_json::from_str(arg(batch_json, "batch_json")?)
            .map_err(|err| Failure(UsemStatus::Data, format!("invalid ingest payload: {err}")))?;
        let report = e.ingest(&batch)?;
        put(report_json, serde_json::to_string(&report).expect("report serializes"))
    })
}

/// Ingests one Turtle document of observations, persons or resource
/// descriptions.
#[no_mangle]
pub unsafe extern "C" fn usem_ingest_turtle(
    engine: *const UsemEngine,
    turtle: *const c_char,
    report_json: *mut *mut c_char,
) -> UsemStatus {
    guard(|| {
        check_out(report_json)?;
        let e = self::engine(engine)?;
        let batch = IngestBatch {
            turtle: vec![arg(turtle, "turtle")?.to_owned()],
            ..IngestBatch::default()
        };
        let report = e.ingest(&batch)?;
        put(report_json, serde_json::to_string(&report).expect("report serializes"))
    })
}

/// Writes the Turtle profile of `user`. `as_of` is `YYYY-MM-DD HH:MM:SS`
/// UTC, or null for the latest evidence time.
#[no_mangle]
pub unsafe extern "C" fn usem_profile(
    engine: *const UsemEngine,
    user: *const c_char,
    as_of: *const c_char,
    turtle: *mut *mut c_char,
) -> UsemStatus {
    guard(|| {
        check_out(turtle)?;
        let e = self::engine(engine)?;
        let user = Iri::new(arg(user, "user")?).map_err(|err| Failure(UsemStatus::Data, format!("user: {err}")))?;
        let as_of = if as_of.is_null() {
            None
        } else {
            Some(Timestamp::parse(arg(as_of, "as_of")?).map_err(|err| Failure(UsemStatus::Data, format!("as_of: {err}")))?)
        };
        put(turtle, e.profile_turtle(&user, as_of)?)
    })
}

/// Runs a SELECT query and writes the results as TSV.
#[no_mangle]
pub unsafe extern "C" fn usem_query(engine: *const UsemEngine, sparql: *const c_char, tsv: *mut *mut c_char) -> UsemStatus {
    guard(|| {
        check_out(tsv)?;
        let e = self::engine(engine)?;
        put(tsv, e.query_tsv(arg(sparql, "sparql")?)?)
    })
}

/// Writes the store to its configured snapshot file. `saved` receives 0
/// when no store path is configured.
#[no_mangle]
pub unsafe extern "C" fn usem_engine_save(engine: *const UsemEngine, saved: *mut i32) -> UsemStatus {
    guard(|| {
        let e = self::engine(engine)?;
        let done = e.save()?;
        if !saved.is_null() {
            *saved = i32::from(done);
        }
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn usem_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn usem_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn usem_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
