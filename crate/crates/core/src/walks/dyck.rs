use std::fmt;

use crate::error::{Error, Result};

/// A sequence of `+1`/`-1` steps whose prefix sums stay nonnegative and end at zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    steps: Vec<i8>,
}

impl DyckPath {
    pub fn new(steps: Vec<i8>) -> Result<Self> {
        let mut h: i64 = 0;
        for (i, &x) in steps.iter().enumerate() {
            if x != 1 && x != -1 {
                return Err(Error::MalformedInput(format!("dyck step {x} is not +1/-1")));
            }
            h += i64::from(x);
            if h < 0 {
                return Err(Error::MalformedInput(format!(
                    "dyck path drops below zero at step {}",
                    i + 1
                )));
            }
        }
        if h != 0 {
            return Err(Error::MalformedInput(format!("dyck path ends at height {h}")));
        }
        Ok(DyckPath { steps })
    }

    /// Builds from up/down flags (`true` = up).
    pub fn from_ups(ups: impl IntoIterator<Item = bool>) -> Result<Self> {
        DyckPath::new(ups.into_iter().map(|u| if u { 1 } else { -1 }).collect())
    }

    pub fn steps(&self) -> &[i8] {
        &self.steps
    }

    pub fn half_len(&self) -> usize {
        self.steps.len() / 2
    }

    /// Heights at times `0..=2s`.
    pub fn heights(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut h = 0i64;
        out.push(0);
        for &x in &self.steps {
            h += i64::from(x);
            out.push(h as usize);
        }
        out
    }

    /// Maximal height `θ*`.
    pub fn height(&self) -> usize {
        self.heights().into_iter().max().unwrap_or(0)
    }

    /// All Dyck paths of `2s` steps in lexicographic order with `+1` first.
    pub fn all(s: usize) -> Vec<DyckPath> {
        fn rec(s: usize, cur: &mut Vec<i8>, h: usize, ups: usize, out: &mut Vec<DyckPath>) {
            if cur.len() == 2 * s {
                out.push(DyckPath { steps: cur.clone() });
                return;
            }
            if ups < s {
                cur.push(1);
                rec(s, cur, h + 1, ups + 1, out);
                cur.pop();
            }
            if h > 0 {
                cur.push(-1);
                rec(s, cur, h - 1, ups, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(s, &mut Vec::with_capacity(2 * s), 0, 0, &mut out);
        out
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.steps {
            f.write_str(if x > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Rooted ordered tree. Vertex `0` is the root and vertices are numbered in depth-first preorder.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneTree {
    children: Vec<Vec<usize>>,
}

impl PlaneTree {
    /// Accepts child lists in any numbering and renumbers them in preorder.
    pub fn from_children(children: Vec<Vec<usize>>) -> Result<Self> {
        let n = children.len();
        if n == 0 {
            return Err(Error::MalformedInput("a tree needs a root".into()));
        }
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            if v >= n || seen[v] {
                return Err(Error::MalformedInput(format!("vertex {v} repeated or out of range")));
            }
            seen[v] = true;
            order.push(v);
            stack.extend(children[v].iter().rev());
        }
        if order.len() != n {
            return Err(Error::MalformedInput("child lists do not form one tree".into()));
        }
        let mut rank = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let mut renumbered = vec![Vec::new(); n];
        for &v in &order {
            renumbered[rank[v]] = children[v].iter().map(|&c| rank[c]).collect();
        }
        Ok(PlaneTree { children: renumbered })
    }

    pub fn children(&self) -> &[Vec<usize>] {
        &self.children
    }

    pub fn edge_count(&self) -> usize {
        self.children.len() - 1
    }

    pub fn root_degree(&self) -> usize {
        self.children[0].len()
    }

    pub fn height(&self) -> usize {
        fn depth(t: &PlaneTree, v: usize) -> usize {
            t.children[v].iter().map(|&c| 1 + depth(t, c)).max().unwrap_or(0)
        }
        depth(self, 0)
    }
}

/// Depth-first run: an up step creates the next child of the current vertex.
pub fn tree_from_dyck(dyck: &DyckPath) -> PlaneTree {
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut path = vec![0usize];
    for &x in dyck.steps() {
        let cur = *path.last().unwrap();
        if x > 0 {
            let v = children.len();
            children.push(Vec::new());
            children[cur].push(v);
            path.push(v);
        } else {
            path.pop();
        }
    }
    PlaneTree { children }
}

pub fn dyck_from_tree(tree: &PlaneTree) -> DyckPath {
    fn visit(t: &PlaneTree, v: usize, out: &mut Vec<i8>) {
        for &c in &t.children[v] {
            out.push(1);
            visit(t, c, out);
            out.push(-1);
        }
    }
    let mut steps = Vec::with_capacity(2 * tree.edge_count());
    visit(tree, 0, &mut steps);
    DyckPath { steps }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DyckPath {
        DyckPath::from_ups(s.chars().map(|c| c == '+')).unwrap()
    }

    #[test]
    fn single_edge() {
        let t = tree_from_dyck(&d("+-"));
        assert_eq!(t.edge_count(), 1);
        assert_eq!(t.height(), 1);
        assert_eq!(dyck_from_tree(&t), d("+-"));
    }

    #[test]
    fn two_edge_trees() {
        let path = tree_from_dyck(&d("++--"));
        assert_eq!(path.children(), &[vec![1], vec![2], vec![]]);
        assert_eq!(path.height(), 2);
        let cherry = tree_from_dyck(&d("+-+-"));
        assert_eq!(cherry.children(), &[vec![1, 2], vec![], vec![]]);
        assert_eq!(cherry.height(), 1);
        assert_eq!(DyckPath::all(2), vec![d("++--"), d("+-+-")]);
    }

    #[test]
    fn rejects_bad_paths() {
        assert!(DyckPath::new(vec![-1, 1]).is_err());
        assert!(DyckPath::new(vec![1, 1, -1]).is_err());
        assert!(DyckPath::new(vec![1, 0]).is_err());
    }

    #[test]
    fn renumbering_preserves_shape() {
        // root -> {2, 1}, 2 -> {3}; in preorder that is root -> {1, 3}, 1 -> {2}
        let t = PlaneTree::from_children(vec![vec![2, 1], vec![], vec![3], vec![]]).unwrap();
        assert_eq!(dyck_from_tree(&t), d("++--+-"));
        assert!(PlaneTree::from_children(vec![vec![1], vec![0]]).is_err());
    }

    #[test]
    fn round_trip_s8() {
        let all = DyckPath::all(8);
        assert_eq!(all.len(), 1430);
        for p in &all {
            let t = tree_from_dyck(p);
            assert_eq!(t.height(), p.height());
            assert_eq!(&dyck_from_tree(&t), p);
        }
    }
}
