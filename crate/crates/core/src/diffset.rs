//! Cyclic `(N, M, 1)` difference sets by ordered backtracking.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest modulus the backtracking search accepts.
pub const MAX_MODULUS: usize = 200;

/// Sorted residues mod `N` whose pairwise differences hit every nonzero
/// residue exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSet {
    modulus: usize,
    elements: Vec<usize>,
}

impl DifferenceSet {
    /// Validates and wraps a candidate set (sorted on input).
    pub fn new(modulus: usize, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        if elements.iter().any(|&e| e >= modulus) || !difference_property_holds(modulus, &elements)
        {
            return Err(Error::InvalidParameter("not a (N, M, 1) difference set"));
        }
        Ok(Self { modulus, elements })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn lambda(&self) -> usize {
        1
    }
}

/// Every nonzero residue appears exactly once among `d_i - d_j`, `i != j`.
pub fn difference_property_holds(modulus: usize, elements: &[usize]) -> bool {
    if modulus == 0 {
        return false;
    }
    let mut hits = vec![0usize; modulus];
    for (i, &a) in elements.iter().enumerate() {
        for (j, &b) in elements.iter().enumerate() {
            if i != j {
                hits[(a + modulus - b) % modulus] += 1;
            }
        }
    }
    hits[0] == 0 && hits[1..].iter().all(|&h| h == 1)
}

/// Lexicographically smallest sorted `size`-subset of `Z_modulus` containing 0
/// with the `lambda = 1` difference property.
pub fn find_difference_set(modulus: usize, size: usize) -> Result<DifferenceSet> {
    if modulus > MAX_MODULUS {
        return Err(Error::OutOfRange(
            "difference set modulus above the search budget",
        ));
    }
    if size < 2 || size * (size - 1) != modulus.wrapping_sub(1) {
        return Err(Error::NoSuchSet { modulus, size });
    }
    let mut search = Search {
        modulus,
        size,
        chosen: vec![0],
        used: vec![false; modulus],
    };
    if search.extend(1) {
        Ok(DifferenceSet {
            modulus,
            elements: search.chosen,
        })
    } else {
        Err(Error::NoSuchSet { modulus, size })
    }
}

struct Search {
    modulus: usize,
    size: usize,
    chosen: Vec<usize>,
    used: Vec<bool>,
}

impl Search {
    fn extend(&mut self, start: usize) -> bool {
        if self.chosen.len() == self.size {
            return true;
        }
        let remaining = self.size - self.chosen.len();
        for candidate in start..self.modulus {
            if self.modulus - candidate < remaining {
                break;
            }
            let Some(diffs) = self.new_differences(candidate) else {
                continue;
            };
            for &d in &diffs {
                self.used[d] = true;
            }
            self.chosen.push(candidate);
            if self.extend(candidate + 1) {
                return true;
            }
            self.chosen.pop();
            for &d in &diffs {
                self.used[d] = false;
            }
        }
        false
    }

    /// The differences `candidate` adds, or `None` if any repeats.
    fn new_differences(&self, candidate: usize) -> Option<Vec<usize>> {
        let n = self.modulus;
        let mut diffs = Vec::with_capacity(2 * self.chosen.len());
        for &e in &self.chosen {
            let up = (candidate + n - e) % n;
            let down = n - up;
            if up == down
                || self.used[up]
                || self.used[down]
                || diffs.contains(&up)
                || diffs.contains(&down)
            {
                return None;
            }
            diffs.push(up);
            diffs.push(down);
        }
        Some(diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive oracle: first sorted subset containing 0 in lexicographic order.
    fn brute_force(modulus: usize, size: usize) -> Option<Vec<usize>> {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            if subset[0] == 0 && difference_property_holds(modulus, &subset) {
                return Some(subset);
            }
            let mut i = size;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if subset[i] < modulus - size + i {
                    break;
                }
            }
            subset[i] += 1;
            for j in (i + 1)..size {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }

    #[test]
    fn known_small_sets() {
        assert_eq!(find_difference_set(7, 3).unwrap().elements(), &[0, 1, 3]);
        assert_eq!(
            find_difference_set(13, 4).unwrap().elements(),
            &[0, 1, 3, 9]
        );
        assert_eq!(brute_force(7, 3).unwrap(), vec![0, 1, 3]);
        assert_eq!(brute_force(13, 4).unwrap(), vec![0, 1, 3, 9]);
    }

    #[test]
    fn search_matches_exhaustive_oracle() {
        for (n, m) in [(7, 3), (13, 4), (21, 5), (31, 6)] {
            let found = find_difference_set(n, m).unwrap();
            assert_eq!(
                Some(found.elements().to_vec()),
                brute_force(n, m),
                "({n}, {m})"
            );
        }
    }

    #[test]
    fn desk_scale_parameters_validate() {
        for (n, m) in [(7, 3), (13, 4), (21, 5), (31, 6), (57, 8)] {
            let ds = find_difference_set(n, m).unwrap();
            assert!(difference_property_holds(n, ds.elements()));
            assert_eq!(ds.elements()[0], 0);
            assert_eq!(ds.lambda(), 1);
        }
    }

    #[test]
    fn infeasible_parameters() {
        assert_eq!(
            find_difference_set(7, 4),
            Err(Error::NoSuchSet {
                modulus: 7,
                size: 4
            })
        );
        // 43 = 7*6 + 1 passes the counting test but no planar set of order 6 exists.
        assert_eq!(
            find_difference_set(43, 7),
            Err(Error::NoSuchSet {
                modulus: 43,
                size: 7
            })
        );
        assert!(matches!(
            find_difference_set(241, 16),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn new_validates() {
        assert!(DifferenceSet::new(7, vec![3, 1, 0]).is_ok());
        assert!(DifferenceSet::new(7, vec![0, 1, 2]).is_err());
    }
}
