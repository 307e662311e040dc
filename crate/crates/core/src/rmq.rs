//! Static range-minimum queries with O(1) lookups.
//!
//! The default build is the block-decomposition scheme with per-block-shape
//! lookup tables keyed by Cartesian-tree type: linear preprocessing and
//! constant-time queries. A plain sparse table (O(m log m) space) is kept as
//! a fallback build. Ties always resolve to the leftmost position.
//!
//! Auxiliary memory is O(m) words for the default build; `memory_words`
//! stays below `8*m + 128` for every array (asserted in tests).

use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RmqKind {
    /// Block decomposition with Cartesian-tree shape tables; O(m) space.
    FischerHeun,
    /// Doubling table over all positions; O(m log m) space.
    SparseTable,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RmqError {
    Empty,
    OutOfRange { i: usize, j: usize, len: usize },
}

impl fmt::Display for RmqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RmqError::Empty => write!(f, "range-minimum query on an empty index"),
            RmqError::OutOfRange { i, j, len } => {
                write!(f, "range ({i},{j}) out of bounds for length {len}")
            }
        }
    }
}

impl std::error::Error for RmqError {}

#[derive(Clone, Debug)]
enum Tables {
    Empty,
    FischerHeun {
        block: usize,
        /// Leftmost minimum position of each block (global index).
        block_min: Vec<u32>,
        /// Doubling table over block minima, level-major.
        sparse: Vec<u32>,
        levels: usize,
        /// Shape id per block.
        block_type: Vec<u32>,
        /// Per-shape in-block argmin table, `block * block` entries each.
        shapes: Vec<u8>,
    },
    Sparse {
        sparse: Vec<u32>,
        levels: usize,
    },
}

/// Immutable range-minimum index over a weight sequence. `query(i, j)`
/// returns the position of the minimum in `values[i..=j]`, leftmost on ties.
#[derive(Clone, Debug)]
pub struct RmqIndex {
    values: Vec<f64>,
    tables: Tables,
}

#[inline]
fn pick_leftmost_min(values: &[f64], a: usize, b: usize) -> usize {
    // a, b are candidate positions with a < b.
    if values[b] < values[a] {
        b
    } else {
        a
    }
}

fn build_sparse_over(values: &[f64], positions: &[u32]) -> (Vec<u32>, usize) {
    let n = positions.len();
    let levels = if n == 0 {
        0
    } else {
        n.ilog2() as usize + 1
    };
    let mut table = vec![0u32; n * levels];
    if n > 0 {
        table[..n].copy_from_slice(positions);
        for level in 1..levels {
            let half = 1usize << (level - 1);
            for i in 0..=(n - (1 << level)) {
                let a = table[(level - 1) * n + i] as usize;
                let b = table[(level - 1) * n + i + half] as usize;
                table[level * n + i] = pick_leftmost_min(values, a.min(b), a.max(b)) as u32;
            }
        }
    }
    (table, levels)
}

/// Leftmost argmin over a doubling table, for a nonempty block range
/// [i, j] (indices into `positions` space, stored values are global).
#[inline]
fn sparse_query(values: &[f64], table: &[u32], n: usize, i: usize, j: usize) -> usize {
    let k = (j - i + 1).ilog2() as usize;
    let a = table[k * n + i] as usize;
    let b = table[k * n + j + 1 - (1 << k)] as usize;
    if values[b] < values[a] {
        b
    } else if values[a] < values[b] {
        a
    } else {
        a.min(b)
    }
}

/// Cartesian-tree signature of a block: the push/pop sequence of the stack
/// construction, popping while the top is strictly greater. Blocks with the
/// same signature share the leftmost-argmin table for all subranges.
fn block_signature(values: &[f64]) -> u64 {
    let mut sig: u64 = 0;
    let mut bit = 0;
    let mut stack: Vec<f64> = Vec::with_capacity(values.len());
    for &v in values {
        while let Some(&top) = stack.last() {
            if top > v {
                stack.pop();
                bit += 1; // pop emits 0
            } else {
                break;
            }
        }
        stack.push(v);
        sig |= 1 << bit;
        bit += 1;
    }
    // Length marker disambiguates short trailing blocks.
    sig | (1 << bit)
}

fn build_shape_table(values: &[f64], block: usize) -> Vec<u8> {
    let len = values.len();
    let mut table = vec![0u8; block * block];
    for i in 0..len {
        let mut arg = i;
        for j in i..len {
            if values[j] < values[arg] {
                arg = j;
            }
            table[i * block + j] = arg as u8;
        }
    }
    table
}

impl RmqIndex {
    /// Builds the default (linear-space) index.
    pub fn build(values: Vec<f64>) -> RmqIndex {
        Self::build_with(values, RmqKind::FischerHeun)
    }

    pub fn build_with(values: Vec<f64>, kind: RmqKind) -> RmqIndex {
        let n = values.len();
        if n == 0 {
            return RmqIndex {
                values,
                tables: Tables::Empty,
            };
        }
        let tables = match kind {
            RmqKind::SparseTable => {
                let positions: Vec<u32> = (0..n as u32).collect();
                let (sparse, levels) = build_sparse_over(&values, &positions);
                Tables::Sparse { sparse, levels }
            }
            RmqKind::FischerHeun => {
                let block = (n.ilog2() as usize).div_ceil(4).max(1);
                let nb = n.div_ceil(block);
                let mut block_min = Vec::with_capacity(nb);
                let mut block_type = Vec::with_capacity(nb);
                let mut shapes: Vec<u8> = Vec::new();
                let mut shape_ids: HashMap<u64, u32> = HashMap::new();
                for b in 0..nb {
                    let lo = b * block;
                    let hi = ((b + 1) * block).min(n);
                    let slice = &values[lo..hi];
                    let mut arg = lo;
                    for p in lo..hi {
                        if values[p] < values[arg] {
                            arg = p;
                        }
                    }
                    block_min.push(arg as u32);
                    let sig = block_signature(slice);
                    let next_id = (shapes.len() / (block * block)) as u32;
                    let id = *shape_ids.entry(sig).or_insert_with(|| {
                        shapes.extend(build_shape_table(slice, block));
                        next_id
                    });
                    block_type.push(id);
                }
                let (sparse, levels) = build_sparse_over(&values, &block_min);
                Tables::FischerHeun {
                    block,
                    block_min,
                    sparse,
                    levels,
                    block_type,
                    shapes,
                }
            }
        };
        RmqIndex { values, tables }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Position of the minimum weight in `values[i..=j]`, leftmost on ties.
    pub fn query(&self, i: usize, j: usize) -> Result<usize, RmqError> {
        let n = self.values.len();
        if n == 0 {
            return Err(RmqError::Empty);
        }
        if i > j || j >= n {
            return Err(RmqError::OutOfRange { i, j, len: n });
        }
        Ok(self.query_unchecked(i, j))
    }

    #[inline]
    fn in_block(&self, shapes: &[u8], block_type: &[u32], block: usize, b: usize, i: usize, j: usize) -> usize {
        // i, j are offsets within block b.
        let base = block_type[b] as usize * block * block;
        b * block + shapes[base + i * block + j] as usize
    }

    fn query_unchecked(&self, i: usize, j: usize) -> usize {
        match &self.tables {
            Tables::Empty => unreachable!("empty index rejected earlier"),
            Tables::Sparse { sparse, .. } => {
                sparse_query(&self.values, sparse, self.values.len(), i, j)
            }
            Tables::FischerHeun {
                block,
                block_min,
                sparse,
                block_type,
                shapes,
                ..
            } => {
                let block = *block;
                let (bi, bj) = (i / block, j / block);
                if bi == bj {
                    return self.in_block(shapes, block_type, block, bi, i % block, j % block);
                }
                let last_of_bi = ((bi + 1) * block).min(self.values.len()) - 1;
                let mut arg =
                    self.in_block(shapes, block_type, block, bi, i % block, last_of_bi % block);
                if bj > bi + 1 {
                    let mid = sparse_query(&self.values, sparse, block_min.len(), bi + 1, bj - 1);
                    if self.values[mid] < self.values[arg] {
                        arg = mid;
                    }
                }
                let pre = self.in_block(shapes, block_type, block, bj, 0, j % block);
                if self.values[pre] < self.values[arg] {
                    arg = pre;
                }
                arg
            }
        }
    }

    /// Total stored elements (values plus auxiliary tables), for the space
    /// accounting in benchmarks.
    pub fn memory_words(&self) -> usize {
        let aux = match &self.tables {
            Tables::Empty => 0,
            Tables::Sparse { sparse, levels: _ } => sparse.len(),
            Tables::FischerHeun {
                block_min,
                sparse,
                block_type,
                shapes,
                ..
            } => block_min.len() + sparse.len() + block_type.len() + shapes.len(),
        };
        self.values.len() + aux
    }
}
