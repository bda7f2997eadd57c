//! Closed-form extremal values for 1-planar graphs and related bounds.
//!
//! Everything is computed through `n = 3k + s`, so no fractional
//! arithmetic appears even where tabulated forms divide by 3.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("clique size {0} not supported here")]
    InvalidSize(usize),
    #[error("n = {n} is below the valid range (needs n >= {min})")]
    OutOfRange { n: usize, min: usize },
}

/// `n = 3k + s` with `s` in `{0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NDecomposition {
    pub k: usize,
    pub s: usize,
}

pub fn decompose_n(n: usize) -> NDecomposition {
    NDecomposition { k: n / 3, s: n % 3 }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// Maximum number of edges.
pub fn f2(n: usize) -> u64 {
    match n {
        0..=6 => binomial(n, 2),
        7 | 9 => 4 * n as u64 - 9,
        _ => 4 * n as u64 - 8,
    }
}

/// Maximum number of triangles.
pub fn f3(n: usize) -> u64 {
    if n <= 6 {
        return binomial(n, 3);
    }
    if n == 8 {
        return 32;
    }
    let NDecomposition { k, s } = decompose_n(n);
    (19 * k + 5 * s - 18) as u64
}

/// Maximum number of `K_t` for `t` in 4..=6.
pub fn ft(n: usize, t: usize) -> Result<u64, FormulaError> {
    if !(4..=6).contains(&t) {
        return Err(FormulaError::InvalidSize(t));
    }
    if n <= 6 {
        return Ok(binomial(n, t));
    }
    let NDecomposition { k, s } = decompose_n(n);
    Ok((k as u64 - 1) * binomial(6, t) + binomial(s + 3, t))
}

/// Maximum number of cliques of all sizes, the empty clique included.
pub fn f_total(n: usize) -> u64 {
    if n <= 6 {
        return 1 << n;
    }
    let NDecomposition { k, s } = decompose_n(n);
    56 * (k as u64 - 1) + (1 << (s + 3))
}

/// Extremal value for clique size `t` in 0..=6 (`t = 2` edges, `t = 3`
/// triangles, ...); sizes 0 and 1 are trivial.
pub fn f_size(n: usize, t: usize) -> Result<u64, FormulaError> {
    match t {
        0 => Ok(1),
        1 => Ok(n as u64),
        2 => Ok(f2(n)),
        3 => Ok(f3(n)),
        4..=6 => ft(n, t),
        _ => Err(FormulaError::InvalidSize(t)),
    }
}

/// Maximum number of triangles in a planar graph.
pub fn planar_max_triangles(n: usize) -> Result<u64, FormulaError> {
    if n < 3 {
        return Err(FormulaError::OutOfRange { n, min: 3 });
    }
    Ok(3 * n as u64 - 8)
}

/// Maximum number of `K_4` in a planar graph.
pub fn planar_max_k4(n: usize) -> Result<u64, FormulaError> {
    if n < 4 {
        return Err(FormulaError::OutOfRange { n, min: 4 });
    }
    Ok(n as u64 - 3)
}

/// Bound for a 3-connected `K_6`-free graph with a rich 1-drawing having
/// `c` crossings.
pub fn k6free_bound(n: usize, c: usize, t: usize) -> Result<u64, FormulaError> {
    if n < 3 {
        return Err(FormulaError::OutOfRange { n, min: 3 });
    }
    let (n, c) = (n as u64, c as u64);
    match t {
        3 => Ok(3 * c + 3 * n - 8),
        4 => Ok(3 * c + n - 3),
        5 => Ok(c),
        _ => Err(FormulaError::InvalidSize(t)),
    }
}

/// Selector for [`k6free_maximal_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueTarget {
    Size(usize),
    Total,
}

/// Bound for a 3-connected edge-maximal `K_6`-free 1-planar graph.
pub fn k6free_maximal_bound(n: usize, target: CliqueTarget) -> Result<u64, FormulaError> {
    if n < 5 {
        return Err(FormulaError::OutOfRange { n, min: 5 });
    }
    let n = n as u64;
    match target {
        CliqueTarget::Size(3) => Ok(6 * n - 14),
        CliqueTarget::Size(4) => Ok(4 * n - 9),
        CliqueTarget::Size(5) => Ok(n - 2),
        CliqueTarget::Size(t) => Err(FormulaError::InvalidSize(t)),
        CliqueTarget::Total => Ok(16 * n - 32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!(decompose_n(8), NDecomposition { k: 2, s: 2 });
        assert_eq!(decompose_n(9), NDecomposition { k: 3, s: 0 });
        assert_eq!(decompose_n(7), NDecomposition { k: 2, s: 1 });
        assert_eq!((f2(7), f2(9), f2(6)), (19, 27, 15));
        assert_eq!((f3(8), f3(20), f3(6)), (32, 106, 20));
        assert_eq!((ft(12, 5).unwrap(), ft(7, 4).unwrap(), ft(6, 6).unwrap()), (18, 16, 1));
        assert!(ft(7, 3).is_err());
        assert_eq!((f_total(11), f_total(7), f_total(3)), (144, 72, 8));
        assert_eq!(planar_max_triangles(5).unwrap(), 7);
        assert_eq!(planar_max_triangles(3).unwrap(), 1);
        assert_eq!(planar_max_k4(4).unwrap(), 1);
        assert!(planar_max_triangles(2).is_err());
        assert!(planar_max_k4(3).is_err());
        assert_eq!(k6free_bound(8, 6, 3).unwrap(), 34);
        assert_eq!(k6free_maximal_bound(9, CliqueTarget::Size(3)).unwrap(), 40);
        assert_eq!(k6free_maximal_bound(9, CliqueTarget::Total).unwrap(), 112);
        assert!(k6free_maximal_bound(4, CliqueTarget::Total).is_err());
    }
}
