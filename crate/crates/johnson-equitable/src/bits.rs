//! Fixed-length bitset with lexicographic ordering on bit positions.
//!
//! Bit `p` is stored in word `p / 64` at bit `63 - (p % 64)`, so comparing
//! the word vectors compares the bitstrings position by position. This is
//! the representation used for partition membership strings and canonical
//! forms.

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, p: usize) -> bool {
        debug_assert!(p < self.len);
        self.words[p >> 6] >> (63 - (p & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, p: usize, value: bool) {
        debug_assert!(p < self.len);
        let mask = 1u64 << (63 - (p & 63));
        if value {
            self.words[p >> 6] |= mask;
        } else {
            self.words[p >> 6] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Flip every bit (within `len`).
    pub fn complement(&self) -> Bitset {
        let mut out = Bitset {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        let tail = self.len & 63;
        if tail != 0 {
            let keep = !0u64 << (64 - tail);
            if let Some(last) = out.words.last_mut() {
                *last &= keep;
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |p| self.get(p))
    }
}

impl std::fmt::Debug for Bitset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in self.iter() {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromIterator<bool> for Bitset {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        let values: Vec<bool> = iter.into_iter().collect();
        let mut bits = Bitset::new(values.len());
        for (p, v) in values.into_iter().enumerate() {
            bits.set(p, v);
        }
        bits
    }
}
