use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// A closed path `i_0, i_1, ..., i_{2s-1}` over `{1..n}`; the closing step back to `i_0` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Trajectory {
    steps: Vec<u32>,
    n: u32,
}

impl Trajectory {
    /// Builds a trajectory from its `2s` open labels.
    pub fn new(steps: Vec<u32>, n: u32) -> Result<Self> {
        if steps.is_empty() || steps.len() % 2 != 0 {
            return Err(Error::MalformedInput(format!(
                "trajectory needs an even, nonzero number of steps, got {}",
                steps.len()
            )));
        }
        if let Some(&bad) = steps.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::MalformedInput(format!(
                "label {bad} outside [1..{n}]"
            )));
        }
        Ok(Trajectory { steps, n })
    }

    /// Builds a trajectory from the closed form `i_0, ..., i_{2s}` with `i_{2s} = i_0`.
    pub fn from_closed(labels: &[u32], n: u32) -> Result<Self> {
        match labels {
            [first, .., last] if first == last => Trajectory::new(labels[..labels.len() - 1].to_vec(), n),
            _ => Err(Error::MalformedInput(
                "closed trajectory must end where it starts".into(),
            )),
        }
    }

    /// Parses a comma-separated list. An odd-length list whose last label equals
    /// the first is read in closed form, an even-length list in open form.
    /// `n` defaults to the largest label.
    pub fn parse(text: &str, n: Option<u32>) -> Result<Self> {
        let labels = parse_list(text)?;
        let n = n.unwrap_or_else(|| labels.iter().copied().max().unwrap_or(0));
        if labels.len() % 2 == 1 {
            Trajectory::from_closed(&labels, n)
        } else {
            Trajectory::new(labels, n)
        }
    }

    pub fn steps(&self) -> &[u32] {
        &self.steps
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Half-length `s`.
    pub fn half_len(&self) -> usize {
        self.steps.len() / 2
    }

    /// Labels `i_0, ..., i_{2s}` including the closing return.
    pub fn closed_labels(&self) -> impl Iterator<Item = u32> + '_ {
        self.steps.iter().copied().chain(std::iter::once(self.steps[0]))
    }
}

impl fmt::Display for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, self.closed_labels())
    }
}

/// A canonical walk: letters relabelled in order of first appearance, starting and ending at the root `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    letters: Vec<u32>,
}

impl Walk {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.len() < 3 || letters.len() % 2 == 0 {
            return Err(Error::MalformedInput(format!(
                "a walk of 2s steps has 2s+1 letters (s >= 1), got {}",
                letters.len()
            )));
        }
        if letters[0] != 1 || *letters.last().unwrap() != 1 {
            return Err(Error::MalformedInput("walk must start and end at letter 1".into()));
        }
        let mut next_fresh = 1;
        for &x in &letters {
            if x > next_fresh || x == 0 {
                return Err(Error::MalformedInput(format!(
                    "letter {x} appears before letter {next_fresh}"
                )));
            }
            if x == next_fresh {
                next_fresh += 1;
            }
        }
        Ok(Walk { letters })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Walk::new(parse_list(text)?)
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u32>) -> Self {
        Walk { letters }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// Half-length `s` (the walk has `2s` steps).
    pub fn half_len(&self) -> usize {
        (self.letters.len() - 1) / 2
    }

    pub fn len_steps(&self) -> usize {
        self.letters.len() - 1
    }

    /// Letter seen at time `t`.
    pub fn at(&self, t: usize) -> u32 {
        self.letters[t]
    }

    /// Step `t` (1-based) as `(from, to)`.
    pub fn step(&self, t: usize) -> (u32, u32) {
        (self.letters[t - 1], self.letters[t])
    }

    /// Number of distinct letters `|V_g|`.
    pub fn vertex_count(&self) -> usize {
        self.letters.iter().copied().max().unwrap_or(0) as usize
    }

    /// True when some step stays on the same letter. Such walks only come from
    /// trajectories with a diagonal factor, whose weight vanishes.
    pub fn has_loops(&self) -> bool {
        self.letters.windows(2).any(|w| w[0] == w[1])
    }

    /// The walk read as a trajectory over `{1..|V_g|}`.
    pub fn as_trajectory(&self) -> Trajectory {
        Trajectory {
            steps: self.letters[..self.letters.len() - 1].to_vec(),
            n: self.vertex_count() as u32,
        }
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, self.letters.iter().copied())
    }
}

impl FromStr for Walk {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Walk::parse(s)
    }
}

/// Relabels a trajectory by first appearance.
pub fn walk_from_trajectory(traj: &Trajectory) -> Walk {
    let mut seen: Vec<u32> = Vec::new();
    let letters = traj
        .closed_labels()
        .map(|label| match seen.iter().position(|&x| x == label) {
            Some(i) => i as u32 + 1,
            None => {
                seen.push(label);
                seen.len() as u32
            }
        })
        .collect();
    Walk::from_letters_unchecked(letters)
}

/// `n (n-1) ... (n - |V_g| + 1)`: the number of trajectories sharing this walk.
pub fn class_size(walk: &Walk, n: u64) -> BigInt {
    falling_factorial(n, walk.vertex_count() as u64)
}

pub(crate) fn falling_factorial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i))
}

pub(crate) fn parse_list(text: &str) -> Result<Vec<u32>> {
    text.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| Error::MalformedInput(format!("not a positive integer: {tok:?}")))
        })
        .collect()
}

fn write_list(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = u32>) -> fmt::Result {
    for (i, x) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}
