use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::cache;
use crate::combinat::DEFAULT_N_CAP;
use crate::error::{Error, Result};
use crate::hessenberg::HessFunction;
use crate::par::Exec;
use crate::solver::{a_matrix, solve_with, AMatrix, HessTable, MultTable};

/// Shared solving context: enumeration cap, execution mode, and the
/// h-independent A matrices (in memory, optionally backed by a disk cache).
#[derive(Debug)]
pub struct Engine {
    cap: usize,
    exec: Exec,
    cache_dir: Option<PathBuf>,
    recompute: bool,
    matrices: Mutex<HashMap<usize, Arc<AMatrix>>>,
    solved: Mutex<HashMap<HessFunction, Arc<MultTable>>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(DEFAULT_N_CAP, Exec::default())
    }
}

impl Engine {
    pub fn new(cap: usize, exec: Exec) -> Self {
        Engine {
            cap,
            exec,
            cache_dir: None,
            recompute: false,
            matrices: Mutex::new(HashMap::new()),
            solved: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    /// Ignore cached matrices and overwrite them with fresh ones.
    pub fn recompute(mut self, yes: bool) -> Self {
        self.recompute = yes;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    /// Rejects `n` above the enumeration cap before any work starts.
    pub fn check_n(&self, n: usize) -> Result<()> {
        if n > self.cap {
            return Err(Error::OverCap { n, cap: self.cap });
        }
        Ok(())
    }

    pub fn a_matrix(&self, n: usize) -> Result<Arc<AMatrix>> {
        if let Some(a) = self.matrices.lock().unwrap().get(&n) {
            return Ok(a.clone());
        }
        let a = Arc::new(self.load_or_build(n)?);
        self.matrices.lock().unwrap().insert(n, a.clone());
        Ok(a)
    }

    fn load_or_build(&self, n: usize) -> Result<AMatrix> {
        match &self.cache_dir {
            Some(dir) if n > 0 => {
                if !self.recompute {
                    if let Some(a) = cache::load(dir, n)? {
                        return Ok(a);
                    }
                }
                let a = a_matrix(n, self.cap, self.exec)?;
                cache::write(dir, &a)?;
                Ok(a)
            }
            _ => a_matrix(n, self.cap, self.exec),
        }
    }

    pub fn hess_table(&self, h: &HessFunction) -> Result<HessTable> {
        HessTable::build(h, self.cap, self.exec)
    }

    /// Memoized by `h`.
    pub fn solve(&self, h: &HessFunction) -> Result<Arc<MultTable>> {
        if let Some(t) = self.solved.lock().unwrap().get(h) {
            return Ok(t.clone());
        }
        let a = self.a_matrix(h.n())?;
        let table = Arc::new(solve_with(h, &a, &self.hess_table(h)?)?);
        self.solved.lock().unwrap().insert(h.clone(), table.clone());
        Ok(table)
    }
}
