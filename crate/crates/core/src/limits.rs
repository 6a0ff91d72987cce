use crate::error::{Error, Result};

/// Guard rails for the double-exponential enumerations.
///
/// Every enumeration entry point checks its input against one of these bounds
/// and fails with [`Error::SizeLimit`] instead of running away.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits {
    /// Largest carrier for which `Adj(P)` is enumerated.
    pub adjunctions: usize,
    /// Largest carrier accepted by the `λ` fast path.
    pub lambda: usize,
    /// Upper bound on `|S| · log2 |P|` when enumerating `Pos(S, P)`.
    pub map_bits: f64,
    /// Largest poset handed to the isomorphism search.
    pub isomorphism: usize,
    /// Largest size for isomorph-free poset generation.
    pub generation: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            adjunctions: 12,
            lambda: 10,
            map_bits: 26.0,
            isomorphism: 32,
            generation: 7,
        }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits {
            adjunctions: usize::MAX,
            lambda: usize::MAX,
            map_bits: f64::INFINITY,
            isomorphism: usize::MAX,
            generation: 9,
        }
    }

    pub fn check(what: &'static str, size: usize, limit: usize) -> Result<()> {
        if size > limit {
            Err(Error::SizeLimit { what, size, limit })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_maps(&self, domain: usize, codomain: usize) -> Result<()> {
        if codomain <= 1 || domain == 0 {
            return Ok(());
        }
        let bits = domain as f64 * (codomain as f64).log2();
        if bits > self.map_bits {
            Err(Error::SizeLimit {
                what: "Pos(S, P) search space (bits)",
                size: bits.ceil() as usize,
                limit: self.map_bits as usize,
            })
        } else {
            Ok(())
        }
    }
}
