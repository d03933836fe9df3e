use super::BinaryRelation;
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;

/// Largest `n` accepted by [`bell`] and [`enumerate_partitions`].
pub const BELL_CAP: usize = 64;

/// A set partition of `{0..ground_size-1}`.
///
/// Blocks are kept sorted internally and ordered by their least element, so
/// two partitions are equal exactly when they describe the same equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    ground_size: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(ground_size: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; ground_size];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::Validation("partition has an empty block".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x >= ground_size {
                    return Err(Error::Validation(format!(
                        "element {x} outside ground set of size {ground_size}"
                    )));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Validation(format!("element {x} in two blocks")));
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::Validation(format!("element {x} not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { ground_size, blocks })
    }

    pub fn discrete(n: usize) -> Self {
        Partition {
            ground_size: n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn single_block(n: usize) -> Self {
        Partition {
            ground_size: n,
            blocks: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    /// Reads a partition off its restricted growth string.
    fn from_labels(labels: &[usize]) -> Self {
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (x, &l) in labels.iter().enumerate() {
            blocks[l].push(x);
        }
        Partition {
            ground_size: labels.len(),
            blocks,
        }
    }

    pub fn from_equivalence(rel: &BinaryRelation) -> Result<Self> {
        if !rel.is_equivalence() {
            return Err(Error::Contract(
                "relation is not an equivalence relation".into(),
            ));
        }
        let n = rel.size();
        let mut assigned = vec![false; n];
        let mut blocks = Vec::new();
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let block: Vec<usize> = (i..n).filter(|&j| rel.contains(i, j)).collect();
            for &j in &block {
                assigned[j] = true;
            }
            blocks.push(block);
        }
        Ok(Partition {
            ground_size: n,
            blocks,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.ground_size
    }

    pub fn is_single_block(&self) -> bool {
        self.blocks.len() <= 1
    }

    pub fn to_relation(&self) -> BinaryRelation {
        let mut rel = BinaryRelation::empty(self.ground_size);
        for block in &self.blocks {
            for &i in block {
                for &j in block {
                    rel.insert(i, j);
                }
            }
        }
        rel
    }
}

/// Bell number `B(n)` by the Bell triangle; `B(0) = 1`.
pub fn bell(n: usize) -> Result<BigUint> {
    if n > BELL_CAP {
        return Err(Error::cap("Bell number argument", n, BELL_CAP));
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    // row r of the triangle starts with B(r) and ends with B(r+1)
    let mut row = vec![BigUint::one()];
    for _ in 1..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    Ok(row.pop().unwrap())
}

/// Number of reflexive relations on an `n`-set, `2^(n^2 - n)`.
pub fn reflexive_count(n: usize) -> BigUint {
    BigUint::one() << (n * n - n)
}

/// Enumerates the set partitions of `{0..n-1}` via restricted growth strings.
pub fn enumerate_partitions(n: usize) -> Result<Partitions> {
    if n > BELL_CAP {
        return Err(Error::cap("partition ground set", n, BELL_CAP));
    }
    Ok(Partitions {
        labels: vec![0; n],
        maxima: vec![0; n],
        done: false,
    })
}

pub struct Partitions {
    labels: Vec<usize>,
    // maxima[i] = max(labels[0..i])
    maxima: Vec<usize>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let current = Partition::from_labels(&self.labels);
        let n = self.labels.len();
        // advance to the next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.labels[i] <= self.maxima[i] {
                self.labels[i] += 1;
                for j in i + 1..n {
                    self.maxima[j] = self.maxima[j - 1].max(self.labels[j - 1]);
                    self.labels[j] = 0;
                }
                break;
            }
        }
        Some(current)
    }
}
