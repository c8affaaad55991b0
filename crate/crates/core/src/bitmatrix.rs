/// Dense square boolean matrix, one bit per cell, rows packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    dim: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(dim: usize) -> Self {
        let words = dim.div_ceil(64);
        Self {
            dim,
            words,
            bits: vec![0; dim * words],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::new(dim);
        for i in 0..dim {
            for j in 0..dim {
                if f(i, j) {
                    m.set(i, j);
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] &= !(1 << (j % 64));
    }

    /// Sets a cell and reports whether it was previously clear.
    #[inline]
    pub fn insert(&mut self, i: usize, j: usize) -> bool {
        let w = &mut self.bits[i * self.words + j / 64];
        let mask = 1 << (j % 64);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// `row(dst) |= row(src)`; returns whether any bit changed.
    pub fn or_row_into(&mut self, src: usize, dst: usize) -> bool {
        let mut changed = false;
        for w in 0..self.words {
            let v = self.bits[src * self.words + w];
            let d = &mut self.bits[dst * self.words + w];
            if v & !*d != 0 {
                *d |= v;
                changed = true;
            }
        }
        changed
    }

    /// `row(dst) |= other.row(src)`.
    pub fn or_row_from(&mut self, other: &BitMatrix, src: usize, dst: usize) -> bool {
        let mut changed = false;
        for w in 0..self.words {
            let v = other.bits[src * other.words + w];
            let d = &mut self.bits[dst * self.words + w];
            if v & !*d != 0 {
                *d |= v;
                changed = true;
            }
        }
        changed
    }

    /// Column indices set in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.dim);
        for i in 0..self.dim {
            for j in self.row_ones(i).collect::<Vec<_>>() {
                t.set(j, i);
            }
        }
        t
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True when every set bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BitMatrix) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn and_assign(&mut self, other: &BitMatrix) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    pub fn and_not_assign(&mut self, other: &BitMatrix) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= !b;
        }
    }

    pub fn or_assign(&mut self, other: &BitMatrix) -> bool {
        let mut changed = false;
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            if b & !*a != 0 {
                *a |= b;
                changed = true;
            }
        }
        changed
    }

    /// First cell `(i, j)` (row-major) set in both matrices.
    pub fn first_common(&self, other: &BitMatrix) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for w in 0..self.words {
                let both = self.bits[i * self.words + w] & other.bits[i * other.words + w];
                if both != 0 {
                    return Some((i, w * 64 + both.trailing_zeros() as usize));
                }
            }
        }
        None
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.dim {
            let row: String = (0..self.dim)
                .map(|j| if self.get(i, j) { '1' } else { '.' })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}
