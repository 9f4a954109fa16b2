//! Small helpers for `u32`/`u64` bit sets.

/// Iterator over the positions of set bits, lowest first.
pub(crate) struct Ones(u64);

impl Iterator for Ones {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

#[inline]
pub(crate) fn ones(mask: u64) -> Ones {
    Ones(mask)
}

/// Inserts a zero bit at position `pos`, shifting higher bits up.
#[inline]
pub(crate) fn insert_bit(mask: u32, pos: usize) -> u32 {
    let low = mask & ((1u32 << pos) - 1);
    let high = mask >> pos;
    low | (high << (pos + 1))
}

/// Removes bit `pos`, shifting higher bits down.
#[inline]
pub(crate) fn remove_bit(mask: u32, pos: usize) -> u32 {
    let low = mask & ((1u32 << pos) - 1);
    let high = mask >> (pos + 1);
    low | (high << pos)
}
