//! Directory of solutions: `tau-L{L}.json` for every size, `full-L{L}.json`
//! for sizes whose full solution is small enough to reload.

use std::cell::RefCell;
use std::fs::{self, File};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use qkz_core::qkz::{homogenize, reduce_to_odd, solve, FullSolution, TauSolution};

use crate::json::{write_full, write_tau, Form, SolutionFile};
use crate::AppError;

pub const CACHE_ENV: &str = "QKZ_CACHE_DIR";

/// Full solutions with more stored terms than this are not written to the
/// cache. The full L = 8 solution has about 4.7e7 terms, which as JSON is
/// larger than the solve is slow; it is recomputed instead.
pub const FULL_CACHE_MAX_TERMS: usize = 2_000_000;

#[derive(Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
    /// Last even solution computed in this process, so that an odd size and
    /// its even parent are solved once even without a cache directory.
    last_even: RefCell<Option<Arc<FullSolution>>>,
}

impl Cache {
    /// `None` disables caching.
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache {
            dir,
            last_even: RefCell::new(None),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path(&self, form: Form, l: usize) -> Option<PathBuf> {
        let stem = match form {
            Form::Full => "full",
            Form::Tau => "tau",
        };
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{stem}-L{l}.json")))
    }

    /// `Ok(None)` when caching is off or the file does not exist; a file that
    /// fails its checksum or does not parse is an error.
    fn load(&self, form: Form, l: usize) -> Result<Option<SolutionFile>, AppError> {
        let Some(path) = self.path(form, l) else {
            return Ok(None);
        };
        let f = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(AppError::io(path, e)),
        };
        let file = SolutionFile::read(f)?;
        if file.size != l {
            return Err(AppError::Usage(format!(
                "{} holds size {}, not {l}",
                path.display(),
                file.size
            )));
        }
        Ok(Some(file))
    }

    pub fn load_full(&self, l: usize) -> Result<Option<FullSolution>, AppError> {
        Ok(self.load(Form::Full, l)?.map(|f| f.to_full()).transpose()?)
    }

    pub fn load_tau(&self, l: usize) -> Result<Option<TauSolution>, AppError> {
        Ok(self.load(Form::Tau, l)?.map(|f| f.to_tau()).transpose()?)
    }

    fn store(
        &self,
        form: Form,
        l: usize,
        write: impl FnOnce(File) -> Result<(), crate::FormatError>,
    ) -> Result<(), AppError> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(form, l)) else {
            return Ok(());
        };
        fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
        let tmp = path.with_extension("json.tmp");
        write(File::create(&tmp).map_err(|e| AppError::io(&tmp, e))?)?;
        fs::rename(&tmp, &path).map_err(|e| AppError::io(&path, e))
    }

    /// Returns whether the solution was written.
    pub fn store_full(&self, s: &FullSolution) -> Result<bool, AppError> {
        let terms: usize = s.components.iter().map(|c| c.flat_len()).sum();
        if self.dir.is_none() || terms > FULL_CACHE_MAX_TERMS {
            return Ok(false);
        }
        self.store(Form::Full, s.size, |f| write_full(s, f))?;
        Ok(true)
    }

    pub fn store_tau(&self, t: &TauSolution) -> Result<(), AppError> {
        self.store(Form::Tau, t.size, |f| write_tau(t, f))
    }

    /// Cached full solution of size `l` if present and intact, otherwise
    /// computed (odd sizes from the next even size) and stored. `note`
    /// receives progress and warnings.
    pub fn full_solution(
        &self,
        l: usize,
        note: &mut dyn FnMut(&str),
    ) -> Result<Arc<FullSolution>, AppError> {
        match self.load_full(l) {
            Ok(Some(s)) => {
                note(&format!("L = {l}: full solution loaded from cache"));
                return Ok(Arc::new(s));
            }
            Ok(None) => {}
            Err(e) => note(&format!("L = {l}: ignoring cached full solution ({e})")),
        }
        if let Some(s) = self.last_even.borrow().as_ref().filter(|s| s.size == l) {
            return Ok(Arc::clone(s));
        }
        let s = if l % 2 == 1 {
            Arc::new(reduce_to_odd(&*self.full_solution(l + 1, note)?)?)
        } else {
            note(&format!("L = {l}: solving"));
            let s = Arc::new(solve(l)?);
            *self.last_even.borrow_mut() = Some(Arc::clone(&s));
            s
        };
        if !self.store_full(&s)? && self.dir.is_some() {
            note(&format!("L = {l}: full solution too large to cache"));
        }
        Ok(s)
    }

    /// Cached homogeneous solution, otherwise derived from the full one.
    pub fn tau_solution(
        &self,
        l: usize,
        note: &mut dyn FnMut(&str),
    ) -> Result<TauSolution, AppError> {
        match self.load_tau(l) {
            Ok(Some(t)) => {
                note(&format!("L = {l}: homogeneous solution loaded from cache"));
                return Ok(t);
            }
            Ok(None) => {}
            Err(e) => note(&format!(
                "L = {l}: ignoring cached homogeneous solution ({e})"
            )),
        }
        let t = homogenize(&*self.full_solution(l, note)?)?;
        self.store_tau(&t)?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disabled_cache_computes() {
        let c = Cache::default();
        assert!(c.path(Form::Full, 4).is_none());
        let s = c.full_solution(3, &mut |_| {}).unwrap();
        assert_eq!(s.size, 3);
        assert_eq!(s.patterns.len(), 2);
        assert_eq!(c.tau_solution(3, &mut |_| {}).unwrap().components.len(), 2);
    }

    #[test]
    fn stores_and_reloads() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(Some(dir.path().to_path_buf()));
        let mut log = Vec::new();
        let t = c.tau_solution(3, &mut |m| log.push(m.to_string())).unwrap();
        for name in ["full-L4.json", "full-L3.json", "tau-L3.json"] {
            assert!(dir.path().join(name).exists(), "{name}");
        }
        assert_eq!(log, ["L = 4: solving"]);
        assert_eq!(c.load_tau(3).unwrap(), Some(t));

        let fresh = Cache::new(Some(dir.path().to_path_buf()));
        log.clear();
        let s = fresh
            .full_solution(3, &mut |m| log.push(m.to_string()))
            .unwrap();
        assert_eq!(log, ["L = 3: full solution loaded from cache"]);
        assert_eq!(*s, reduce_to_odd(&solve(4).unwrap()).unwrap());
    }

    #[test]
    fn corrupt_file_is_replaced() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(Some(dir.path().to_path_buf()));
        let s = c.full_solution(2, &mut |_| {}).unwrap();
        let path = c.path(Form::Full, 2).unwrap();
        let mut v: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        v["components"][0]["beta"] = 5.into();
        fs::write(&path, v.to_string()).unwrap();
        assert!(c.load_full(2).is_err());

        let fresh = Cache::new(Some(dir.path().to_path_buf()));
        let mut log = Vec::new();
        assert_eq!(
            fresh
                .full_solution(2, &mut |m| log.push(m.to_string()))
                .unwrap(),
            s
        );
        assert!(log[0].contains("ignoring cached full solution"));
        assert_eq!(c.load_full(2).unwrap().as_ref(), Some(&*s));
    }
}
