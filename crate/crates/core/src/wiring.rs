//! Great-pseudocircle arrangements from wiring diagrams.
//!
//! A simple wiring diagram of `n` pseudolines is a sequence of adjacent
//! transpositions in which every pair of lines swaps exactly once. Gluing the
//! diagram with its antipodal copy along the boundary yields an arrangement of
//! `n` great-pseudocircles: each circle meets its crossings in diagram order
//! twice, and the antipodal copy of a crossing has the opposite orientation.

use crate::arrangement::Arrangement;
use crate::map::MapError;
use crate::seq::{Crossing, Sequences};

/// Builds the great-pseudocircle arrangement of a wiring diagram. Swap
/// positions are 1-based: `k` exchanges the lines at positions `k` and `k+1`.
pub fn from_wiring(n: usize, transpositions: &[usize]) -> Result<Arrangement, MapError> {
    if n < 2 {
        return Err(MapError::NotSimpleWiring(format!("need at least 2 lines, got {n}")));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = vec![0usize; n * n];
    let mut first_copy = Vec::with_capacity(transpositions.len());
    for &k in transpositions {
        if k == 0 || k >= n {
            return Err(MapError::NotSimpleWiring(format!("position {k} out of range 1..{}", n - 1)));
        }
        let (upper, lower) = (perm[k - 1], perm[k]);
        swaps[upper * n + lower] += 1;
        swaps[lower * n + upper] += 1;
        first_copy.push((upper, lower));
        perm.swap(k - 1, k);
    }
    for i in 0..n {
        for j in i + 1..n {
            let s = swaps[i * n + j];
            if s != 1 {
                return Err(MapError::NotSimpleWiring(format!("lines {i} and {j} swap {s} times")));
            }
        }
    }
    let t = first_copy.len();
    let mut crossings = Vec::with_capacity(2 * t);
    // The upper line heads down-right and the lower line up-right, so the
    // lower line points to the upper line's left. The antipodal copy flips it.
    for &(upper, lower) in &first_copy {
        crossings.push(Crossing::oriented(upper, lower, true));
    }
    for &(upper, lower) in &first_copy {
        crossings.push(Crossing::oriented(upper, lower, false));
    }
    let mut circles = vec![Vec::new(); n];
    for copy in 0..2 {
        for (x, &(upper, lower)) in first_copy.iter().enumerate() {
            circles[upper].push(copy * t + x);
            circles[lower].push(copy * t + x);
        }
    }
    Sequences { circles, crossings }.to_arrangement()
}

/// One representative (the lexicographically least word, 1-based positions)
/// of every commutation class of simple wiring diagrams on `n` lines.
pub fn wiring_words(n: usize) -> Vec<Vec<usize>> {
    let total = n * n.saturating_sub(1) / 2;
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut word = Vec::with_capacity(total);
    words_rec(&mut perm, &mut word, total, &mut out);
    out
}

fn words_rec(perm: &mut [usize], word: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
    if word.len() == total {
        out.push(word.iter().map(|p| p + 1).collect());
        return;
    }
    for p in 0..perm.len().saturating_sub(1) {
        if perm[p] > perm[p + 1] {
            continue;
        }
        // A letter that commutes with the whole suffix back to a larger letter
        // could move in front of it; such words are not least in their class.
        let mut least = true;
        for &w in word.iter().rev() {
            if w.abs_diff(p) < 2 {
                break;
            }
            if w > p {
                least = false;
                break;
            }
        }
        if !least {
            continue;
        }
        perm.swap(p, p + 1);
        word.push(p);
        words_rec(perm, word, total, out);
        word.pop();
        perm.swap(p, p + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutation_class_counts() {
        // Rhombic tilings of the 2n-gon: 1, 1, 2, 8, 62, 908.
        let counts: Vec<usize> = (1..=6).map(|n| wiring_words(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 8, 62, 908]);
    }

    #[test]
    fn krupp_from_three_lines() {
        let arr = from_wiring(3, &[1, 2, 1]).unwrap();
        assert_eq!(arr.n(), 3);
        assert!(arr.is_great());
        assert_eq!(arr.flags().cells(3), 8);
    }

    #[test]
    fn rejects_double_swap() {
        let err = from_wiring(3, &[1, 1, 2, 1]).unwrap_err();
        assert!(matches!(err, MapError::NotSimpleWiring(_)));
    }

    #[test]
    fn rejects_missing_swap() {
        assert!(matches!(from_wiring(3, &[1, 2]), Err(MapError::NotSimpleWiring(_))));
    }
}
