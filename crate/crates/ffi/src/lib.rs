//! C ABI over flagcluster. Seeds are opaque handles; every fallible call
//! returns an [`FcStatus`] and leaves a message for [`fc_last_error`].
//! Strings handed out by the library are released with [`fc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use flagcluster::classify;
use flagcluster::cli::document::{self, SeedDocument, SeedRequest};
use flagcluster::cli::service::{self, ClassifyRequest};
use flagcluster::error::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    WordRejected = 4,
    NotMutable = 5,
    InexactDivision = 6,
    CapExceeded = 7,
    OutOfRange = 8,
    Panic = 9,
}

/// Opaque seed handle.
pub struct FcSeed {
    doc: SeedDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> FcStatus {
    match e {
        Error::WordRejected { .. } | Error::NotLongestWord(_) => FcStatus::WordRejected,
        Error::NotMutable(_) => FcStatus::NotMutable,
        Error::InexactDivision(_) => FcStatus::InexactDivision,
        Error::CapExceeded(_) => FcStatus::CapExceeded,
        Error::VertexOutOfRange { .. } => FcStatus::OutOfRange,
        _ => FcStatus::InvalidInput,
    }
}

struct Fail(FcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> FcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            FcStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            FcStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(FcStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(FcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail(FcStatus::NullArgument, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn out_string(s: String, out: *mut *mut c_char) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(FcStatus::NullArgument, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail(FcStatus::InvalidInput, "string contains NUL".into()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn out_seed(doc: SeedDocument, out: *mut *mut FcSeed) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(FcStatus::NullArgument, "output pointer is null".into()));
    }
    unsafe { *out = Box::into_raw(Box::new(FcSeed { doc })) };
    Ok(())
}

unsafe fn seed_ref<'a>(s: *const FcSeed) -> Result<&'a FcSeed, Fail> {
    s.as_ref().ok_or_else(|| Fail(FcStatus::NullArgument, "seed is null".into()))
}

/// Message of the last failed call on this thread, empty after a success.
/// Valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn fc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn fc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Initial seed for diagram `type_name` (e.g. "A5") and the vertex set
/// `j[0..j_len]`. `extend` appends the degree rows (type A only);
/// `extended` admits types B, C, F, G.
///
/// # Safety
/// `type_name` must be a NUL-terminated string, `j` must point to `j_len`
/// values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_seed_new(
    type_name: *const c_char,
    j: *const u32,
    j_len: usize,
    extend: bool,
    extended: bool,
    out: *mut *mut FcSeed,
) -> FcStatus {
    guard(|| {
        let t = str_arg(type_name, "type")?;
        let j = slice_arg(j, j_len, "J")?.iter().map(|&x| x as usize).collect();
        let req = SeedRequest { diagram: Some(t.into()), j: Some(j), extend, extended, ..Default::default() };
        out_seed(document::build_seed(&req)?, out)
    })
}

/// Like [`fc_seed_new`] with an explicit reduced word.
///
/// # Safety
/// As for [`fc_seed_new`]; `word` must point to `word_len` values.
#[no_mangle]
pub unsafe extern "C" fn fc_seed_new_with_word(
    type_name: *const c_char,
    j: *const u32,
    j_len: usize,
    word: *const u32,
    word_len: usize,
    out: *mut *mut FcSeed,
) -> FcStatus {
    guard(|| {
        let t = str_arg(type_name, "type")?;
        let j = slice_arg(j, j_len, "J")?.iter().map(|&x| x as usize).collect();
        let w = slice_arg(word, word_len, "word")?.iter().map(|&x| x as usize).collect();
        let req = SeedRequest { diagram: Some(t.into()), j: Some(j), word: Some(w), ..Default::default() };
        out_seed(document::build_seed(&req)?, out)
    })
}

/// One of the named presets, e.g. "A5-J13" or "D5-isotropic".
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_seed_from_preset(name: *const c_char, out: *mut *mut FcSeed) -> FcStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        out_seed(document::preset_document(&document::resolve_preset(name, None)?)?, out)
    })
}

/// Parses a seed document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_seed_from_json(json: *const c_char, out: *mut *mut FcSeed) -> FcStatus {
    guard(|| out_seed(SeedDocument::from_json(str_arg(json, "json")?)?, out))
}

/// Serializes a seed document; free the result with [`fc_string_free`].
///
/// # Safety
/// `seed` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_seed_to_json(seed: *const FcSeed, out: *mut *mut c_char) -> FcStatus {
    guard(|| out_string(seed_ref(seed)?.doc.to_json(), out))
}

/// Mutates in place at a column label. When `new_var` is not null it
/// receives the rendering of the new cluster variable.
///
/// # Safety
/// `seed` must be a live handle, `label` a NUL-terminated string, and
/// `new_var` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fc_seed_mutate(seed: *mut FcSeed, label: *const c_char, new_var: *mut *mut c_char) -> FcStatus {
    guard(|| {
        let label = str_arg(label, "label")?;
        let s = seed.as_mut().ok_or_else(|| Fail(FcStatus::NullArgument, "seed is null".into()))?;
        let (doc, text) = s.doc.mutate(label)?;
        if !new_var.is_null() {
            out_string(text, new_var)?;
        }
        s.doc = doc;
        Ok(())
    })
}

/// Number of rows (cluster plus frozen variables); 0 for a null handle.
///
/// # Safety
/// `seed` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fc_seed_nrows(seed: *const FcSeed) -> usize {
    seed.as_ref().map_or(0, |s| s.doc.matrix.nrows())
}

/// Number of mutable columns; 0 for a null handle.
///
/// # Safety
/// `seed` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fc_seed_ncols(seed: *const FcSeed) -> usize {
    seed.as_ref().map_or(0, |s| s.doc.matrix.ncols())
}

/// Entry `b_{row,col}` of the exchange matrix.
///
/// # Safety
/// `seed` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_seed_entry(seed: *const FcSeed, row: usize, col: usize, out: *mut i64) -> FcStatus {
    guard(|| {
        let m = &seed_ref(seed)?.doc.matrix;
        if row >= m.nrows() || col >= m.ncols() {
            return Err(Fail(FcStatus::OutOfRange, format!("entry ({row}, {col}) is outside the matrix")));
        }
        if out.is_null() {
            return Err(Fail(FcStatus::NullArgument, "output pointer is null".into()));
        }
        *out = m.get(row, col);
        Ok(())
    })
}

/// Label of a row; free with [`fc_string_free`].
///
/// # Safety
/// `seed` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_seed_row_label(seed: *const FcSeed, row: usize, out: *mut *mut c_char) -> FcStatus {
    guard(|| {
        let m = &seed_ref(seed)?.doc.matrix;
        let l = m
            .row_labels()
            .get(row)
            .ok_or_else(|| Fail(FcStatus::OutOfRange, format!("row {row} is outside the matrix")))?;
        out_string(l.clone(), out)
    })
}

/// The cluster or frozen variable of a row as a Laurent polynomial in the
/// initial variables; free with [`fc_string_free`].
///
/// # Safety
/// `seed` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_seed_variable(seed: *const FcSeed, row: usize, out: *mut *mut c_char) -> FcStatus {
    guard(|| {
        let v = seed_ref(seed)?
            .doc
            .vars
            .get(row)
            .ok_or_else(|| Fail(FcStatus::OutOfRange, format!("row {row} is outside the matrix")))?;
        out_string(v.text.clone(), out)
    })
}

fn classify_to_json(req: &ClassifyRequest, cap: u64) -> Result<String, Fail> {
    let cap = if cap == 0 { classify::cap_from_env() } else { cap as usize };
    let (_, v) = service::classify_request(req, cap)?;
    Ok(service::verdict_json(&v).to_string())
}

/// Cluster type of the flag variety for `type_name` and `j`, as a JSON
/// verdict. `cap` bounds the search; 0 means the default.
///
/// # Safety
/// `type_name` must be a NUL-terminated string, `j` must point to `j_len`
/// values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_classify_flag(
    type_name: *const c_char,
    j: *const u32,
    j_len: usize,
    extended: bool,
    cap: u64,
    out: *mut *mut c_char,
) -> FcStatus {
    guard(|| {
        let t = str_arg(type_name, "type")?;
        let j = slice_arg(j, j_len, "J")?.iter().map(|&x| x as usize).collect();
        let req = ClassifyRequest { diagram: Some(t.into()), j: Some(j), extended, ..Default::default() };
        out_string(classify_to_json(&req, cap)?, out)
    })
}

/// Cluster type of a skew-symmetric `n x n` principal part given row-major.
///
/// # Safety
/// `entries` must point to `n * n` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_classify_principal(entries: *const i64, n: usize, cap: u64, out: *mut *mut c_char) -> FcStatus {
    guard(|| {
        let len = n.checked_mul(n).ok_or_else(|| Fail(FcStatus::InvalidInput, "n is too large".into()))?;
        let flat = slice_arg(entries, len, "entries")?;
        let p: Vec<Vec<i64>> = flat.chunks(n.max(1)).map(|r| r.to_vec()).collect();
        let req = ClassifyRequest { principal: Some(if n == 0 { Vec::new() } else { p }), ..Default::default() };
        out_string(classify_to_json(&req, cap)?, out)
    })
}

/// Releases a seed handle. Null is ignored.
///
/// # Safety
/// `seed` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fc_seed_free(seed: *mut FcSeed) {
    if !seed.is_null() {
        drop(Box::from_raw(seed));
    }
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

