use num_bigint::BigInt;

use super::walk::Walk;
use crate::error::{Error, Result};

pub const DEFAULT_WALK_CAP: usize = 6;

/// Depth-first stream of all canonical even closed walks of `2s` steps, in lexicographic order.
///
/// A branch is cut as soon as the number of pairs with odd multiplicity exceeds
/// the number of steps left, or the walk would use more than `s + 1` letters.
pub struct EvenWalks {
    s: usize,
    dim: usize,
    letters: Vec<u32>,
    /// Highest letter used by each prefix.
    top: Vec<u32>,
    /// Next candidate letter to try at each depth.
    next: Vec<u32>,
    counts: Vec<u8>,
    odd: usize,
    done: bool,
}

impl EvenWalks {
    pub fn new(s: usize) -> Result<Self> {
        EvenWalks::with_cap(s, DEFAULT_WALK_CAP)
    }

    pub fn with_cap(s: usize, cap: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidParameter("walks need s >= 1".into()));
        }
        if s > cap {
            return Err(Error::Guardrail {
                what: format!("enumerating even walks with s = {s} exceeds the cap {cap}"),
                estimate: format!("about {} search nodes", search_estimate(s)),
            });
        }
        let dim = s + 2;
        let next = vec![1; 2 * s + 1];
        Ok(EvenWalks {
            s,
            dim,
            letters: vec![1],
            top: vec![1],
            next,
            counts: vec![0; dim * dim],
            odd: 0,
            done: false,
        })
    }

    fn toggle(&mut self, a: u32, b: u32) {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let c = &mut self.counts[a as usize * self.dim + b as usize];
        *c ^= 1;
        if *c == 1 {
            self.odd += 1;
        } else {
            self.odd -= 1;
        }
    }

    fn pop(&mut self) {
        let b = self.letters.pop().unwrap();
        self.top.pop();
        let a = *self.letters.last().unwrap();
        self.toggle(a, b);
    }
}

/// `t_s (s+1)^s`: a loose upper estimate of the search size.
fn search_estimate(s: usize) -> BigInt {
    crate::catalan::catalan(s) * BigInt::from(s + 1).pow(s as u32)
}

impl Iterator for EvenWalks {
    type Item = Walk;

    fn next(&mut self) -> Option<Walk> {
        let total = 2 * self.s;
        while !self.done {
            let depth = self.letters.len() - 1;
            if depth == total {
                let out = Walk::from_letters_unchecked(self.letters.clone());
                self.pop();
                return Some(out);
            }
            let cur = *self.letters.last().unwrap();
            let top = *self.top.last().unwrap();
            let limit = (top + 1).min(self.s as u32 + 1);
            let mut advanced = false;
            while self.next[depth] <= limit {
                let cand = self.next[depth];
                self.next[depth] += 1;
                if cand == cur || (depth + 1 == total && cand != 1) {
                    continue;
                }
                self.toggle(cur, cand);
                if self.odd <= total - depth - 1 {
                    self.letters.push(cand);
                    self.top.push(top.max(cand));
                    if depth + 1 < total {
                        self.next[depth + 1] = 1;
                    }
                    advanced = true;
                    break;
                }
                self.toggle(cur, cand);
            }
            if !advanced {
                if depth == 0 {
                    self.done = true;
                } else {
                    self.pop();
                }
            }
        }
        None
    }
}

/// Collects all even walks of half-length `s` under the default cap.
pub fn enumerate_even_walks(s: usize) -> Result<Vec<Walk>> {
    Ok(EvenWalks::new(s)?.collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::graph::label_steps;

    #[test]
    fn small_counts() {
        let one: Vec<String> = enumerate_even_walks(1).unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(one, vec!["1,2,1"]);
        let two: Vec<String> = enumerate_even_walks(2).unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(two, vec!["1,2,1,2,1", "1,2,1,3,1", "1,2,3,2,1"]);
        assert_eq!(enumerate_even_walks(3).unwrap().len(), 16);
    }

    #[test]
    fn every_walk_is_even_and_canonical() {
        let walks = enumerate_even_walks(4).unwrap();
        for w in &walks {
            assert!(Walk::new(w.letters().to_vec()).is_ok());
            assert!(label_steps(w).is_even);
        }
        assert!(walks.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn guardrail() {
        let err = EvenWalks::new(7).err().unwrap();
        assert_eq!(err.exit_code(), 3);
        assert!(EvenWalks::with_cap(7, 7).is_ok());
        assert!(EvenWalks::new(0).is_err());
    }
}
