//! Shared oracles for the integration tests, computed from first principles
//! with none of the library's own shortcuts.
#![allow(dead_code)]

/// Bit-packed Pascal triangle mod 2: bit `b` of `rows[a]` is C(a, b) mod 2.
///
/// Row a+1 is `row ^ (row << 1)`, the Pascal recurrence over GF(2), applied
/// across the word boundary with an explicit carry.
pub fn pascal_rows(max_a: usize) -> Vec<Vec<u64>> {
    let words = max_a / 64 + 1;
    let mut rows = Vec::with_capacity(max_a + 1);
    let mut row = vec![0u64; words];
    row[0] = 1;
    rows.push(row.clone());
    for _ in 1..=max_a {
        let mut carry = 0u64;
        for w in row.iter_mut() {
            let shifted = (*w << 1) | carry;
            carry = *w >> 63;
            *w ^= shifted;
        }
        rows.push(row.clone());
    }
    rows
}

/// C(a, b) mod 2 read out of [`pascal_rows`].
pub fn pascal_odd(rows: &[Vec<u64>], a: usize, b: usize) -> bool {
    b <= a && rows[a][b / 64] >> (b % 64) & 1 == 1
}
