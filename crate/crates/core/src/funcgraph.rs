//! Functions `{0, .., n-1} -> {0, .., n-1}` stored as image tables.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::polymat::IntMatrix;

/// Default largest `n` that [`enumerate_functions`] will accept.
pub const DEFAULT_ENUM_CAP: usize = 6;

/// Environment variable that overrides [`DEFAULT_ENUM_CAP`].
pub const ENUM_CAP_VAR: &str = "LINREP_ENUM_CAP";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteFunction {
    images: Vec<usize>,
}

impl FiniteFunction {
    /// Checks that every image lies in `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if let Some((index, &image)) = images.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::DomainClosure { index, image, n });
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> Result<usize> {
        self.images.get(i).copied().ok_or(Error::IndexOutOfRange {
            index: i,
            n: self.n(),
        })
    }

    /// Adjacency matrix: entry `(i, j)` is 1 when `f(i) = j`, else 0.
    pub fn func_matrix(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.n());
        for (i, &j) in self.images.iter().enumerate() {
            a.set(i, j, BigInt::one());
        }
        a
    }
}

/// Parses a comma- or whitespace-separated list of images, e.g. `"0,1,1"`.
/// Empty input is the function on the empty set.
pub fn parse_function(text: &str) -> Result<FiniteFunction> {
    let images = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|tok| !tok.is_empty())
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("invalid image {tok:?}: expected a non-negative integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteFunction::new(images)
}

impl FromStr for FiniteFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_function(s)
    }
}

/// Comma-separated images without spaces.
impl fmt::Display for FiniteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Reads the enumeration cap from `LINREP_ENUM_CAP`, falling back to the default.
pub fn enum_cap_from_env() -> usize {
    std::env::var(ENUM_CAP_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

/// All `n^n` functions on `n` elements in lexicographic order of image tables.
pub fn enumerate_functions(n: usize, cap: usize) -> Result<Functions> {
    if n > cap {
        let count = BigInt::from(n).pow(n as u32);
        return Err(Error::EnumerationCap {
            n,
            cap,
            count: count.to_string(),
        });
    }
    Ok(Functions {
        n,
        next: Some(vec![0; n]),
    })
}

/// Iterator returned by [`enumerate_functions`].
#[derive(Clone, Debug)]
pub struct Functions {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for Functions {
    type Item = FiniteFunction;

    fn next(&mut self) -> Option<FiniteFunction> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // odometer increment, last position fastest
        let mut pos = self.n;
        while pos > 0 {
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.n {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(FiniteFunction { images: current })
    }
}
