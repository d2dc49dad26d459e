use alloc::vec::Vec;

use super::{validate_cusp, CycleWord};
use crate::error::{Error, Result};

/// The cycle read as `(a_1, 2^{b_1}, a_2, 2^{b_2}, ..., a_l, 2^{b_l})` with
/// every `a_k >= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunDecomposition {
    /// `(a_k, b_k)` pairs.
    pub runs: Vec<(i64, usize)>,
    /// Index in the original word where the first run starts.
    pub offset: usize,
}

impl RunDecomposition {
    pub fn reassemble(&self) -> CycleWord {
        let mut out = Vec::new();
        for &(a, b) in &self.runs {
            out.push(a);
            out.extend(core::iter::repeat_n(2, b));
        }
        CycleWord::new(out)
    }

    /// Original indices of the anchor entries `a_k`.
    pub(crate) fn anchor_indices(&self, n: usize) -> Vec<usize> {
        let mut idx = Vec::with_capacity(self.runs.len());
        let mut pos = self.offset;
        for &(_, b) in &self.runs {
            idx.push(pos % n);
            pos += 1 + b;
        }
        idx
    }
}

/// Splits the cycle into runs, starting at its first entry `>= 3`. Entries
/// other than the anchors are assumed to be `2`; callers validate first.
pub fn run_decompose(c: &CycleWord) -> Result<RunDecomposition> {
    let offset = c
        .entries()
        .iter()
        .position(|&e| e >= 3)
        .ok_or(Error::NoAnchor)?;
    let n = c.len();
    let mut runs: Vec<(i64, usize)> = Vec::new();
    for i in 0..n {
        let e = c.at(offset + i);
        if e >= 3 {
            runs.push((e, 0));
        } else {
            runs.last_mut().expect("first entry is an anchor").1 += 1;
        }
    }
    Ok(RunDecomposition { runs, offset })
}

/// Where each piece of a cycle `E` lands in its dual `D` (general branch only).
///
/// The anchor `a_k` of `E` becomes a block of `a_k - 3` twos in `D`; the block
/// of `b_k` twos following `a_k` becomes the single entry `b_k + 3`.
#[derive(Clone, Debug)]
pub(crate) struct DualCorrespondence {
    /// for each run k: E index of the anchor, D range (start, len) of its block
    pub anchor_blocks: Vec<(usize, usize, usize)>,
    /// for each run k: E index of the first two after the anchor, gap length,
    /// D index of the entry `b_k + 3`
    pub gap_entries: Vec<(usize, usize, usize)>,
}

pub(crate) fn general_dual(c: &CycleWord) -> Result<(CycleWord, DualCorrespondence)> {
    let rd = run_decompose(c)?;
    let n = c.len();
    let l = rd.runs.len();
    let anchors = rd.anchor_indices(n);
    let mut out = Vec::new();
    let mut anchor_blocks = alloc::vec![(0, 0, 0); l];
    let mut gap_entries = Vec::with_capacity(l);
    for k in 0..l {
        let (_, b) = rd.runs[k];
        gap_entries.push(((anchors[k] + 1) % n, b, out.len()));
        out.push(b as i64 + 3);
        let next = (k + 1) % l;
        let a_next = rd.runs[next].0;
        let len = (a_next - 3) as usize;
        anchor_blocks[next] = (anchors[next], out.len(), len);
        out.extend(core::iter::repeat_n(2, len));
    }
    Ok((
        CycleWord::new(out),
        DualCorrespondence {
            anchor_blocks,
            gap_entries,
        },
    ))
}

/// Returns `Some(e)` when the cycle is `(3, 2^e)` up to rotation with `e >= 1`.
fn three_then_twos(c: &CycleWord) -> Option<usize> {
    let threes = c.entries().iter().filter(|&&e| e == 3).count();
    let twos = c.entries().iter().filter(|&&e| e == 2).count();
    (c.len() >= 2 && threes == 1 && twos == c.len() - 1).then_some(twos)
}

/// The dual cusp cycle.
pub fn dual(c: &CycleWord) -> Result<CycleWord> {
    validate_cusp(c).into_result()?;
    if c.len() == 1 {
        let e = c.entries()[0];
        return Ok(if e == 1 {
            CycleWord::from([1])
        } else {
            let mut v = alloc::vec![3];
            v.extend(core::iter::repeat_n(2, (e - 1) as usize));
            CycleWord::new(v)
        });
    }
    if let Some(e) = three_then_twos(c) {
        return Ok(CycleWord::from([e as i64 + 1]));
    }
    Ok(general_dual(c)?.0)
}
