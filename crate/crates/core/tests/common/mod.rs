//! Independent small-instance oracles built from plain integers.
#![allow(dead_code)]

use std::collections::BTreeMap;

use floquet_clifford::gf2::BitMatrix;
use floquet_clifford::symplectic::SymplecticMatrix;

/// A `d x d` matrix over GF(2), `d <= 8`, stored as rows with bit `j` for column `j`.
pub type Rows = Vec<u8>;

fn parity(x: u32) -> u8 {
    (x.count_ones() & 1) as u8
}

/// `<u, v>` with coordinates ordered `q1, p1, q2, p2, ...`.
pub fn form(u: u8, v: u8) -> u8 {
    let swapped = ((v & 0x55) << 1) | ((v & 0xAA) >> 1);
    parity(u32::from(u & swapped))
}

pub fn apply(m: &Rows, v: u8) -> u8 {
    m.iter()
        .enumerate()
        .fold(0, |acc, (i, &r)| acc | parity(u32::from(r & v)) << i)
}

pub fn mul(a: &Rows, b: &Rows) -> Rows {
    let d = b.len();
    a.iter()
        .map(|&r| (0..d).filter(|&k| r >> k & 1 == 1).fold(0u8, |acc, k| acc ^ b[k]))
        .collect()
}

pub fn column(m: &Rows, j: usize) -> u8 {
    m.iter().enumerate().fold(0, |acc, (i, &r)| acc | (r >> j & 1) << i)
}

/// Every `d x d` matrix with `S^T J S = J`, by filtering all `2^{d^2}` candidates.
pub fn brute_force_group(d: usize) -> Vec<Rows> {
    assert!(d == 2 || d == 4);
    let mut out = Vec::new();
    for bits in 0u32..(1 << (d * d)) {
        let m: Rows = (0..d).map(|i| ((bits >> (d * i)) & ((1 << d) - 1)) as u8).collect();
        let cols: Vec<u8> = (0..d).map(|j| column(&m, j)).collect();
        let ok = (0..d).all(|i| (0..d).all(|j| form(cols[i], cols[j]) == form(1 << i, 1 << j)));
        if ok {
            out.push(m);
        }
    }
    out
}

pub fn to_rows(s: &SymplecticMatrix) -> Rows {
    let m = s.matrix();
    (0..m.rows())
        .map(|i| (0..m.cols()).fold(0u8, |acc, j| acc | u8::from(m.get(i, j)) << j))
        .collect()
}

pub fn to_symplectic(m: &Rows) -> SymplecticMatrix {
    let d = m.len();
    SymplecticMatrix::new(BitMatrix::from_fn(d, d, |i, j| m[i] >> j & 1 == 1)).expect("symplectic")
}

/// Half-size blocks `(A, B, C, D)` of a `4 x 4` matrix, each as two 2-bit rows.
pub fn blocks4(m: &Rows) -> [[u8; 2]; 4] {
    let a = [m[0] & 3, m[1] & 3];
    let b = [m[0] >> 2 & 3, m[1] >> 2 & 3];
    let c = [m[2] & 3, m[3] & 3];
    let d = [m[2] >> 2 & 3, m[3] >> 2 & 3];
    [a, b, c, d]
}

pub fn mul2(a: [u8; 2], b: [u8; 2]) -> [u8; 2] {
    let row = |r: u8| (0..2).filter(|&k| r >> k & 1 == 1).fold(0u8, |acc, k| acc ^ b[k]);
    [row(a[0]), row(a[1])]
}

pub fn is_zero2(a: [u8; 2]) -> bool {
    a == [0, 0]
}

/// Right wall for `N = 1` gates: `C1 (D0 A1)^k C0 = 0` for `k = 0..4`.
pub fn oracle_right_wall(s0: &Rows, s1: &Rows) -> bool {
    let [_, _, c0, d0] = blocks4(s0);
    let [a1, _, c1, _] = blocks4(s1);
    let cycle = mul2(d0, a1);
    let mut x = c0;
    for _ in 0..4 {
        if !is_zero2(mul2(c1, x)) {
            return false;
        }
        x = mul2(cycle, x);
    }
    true
}

/// Exact law of `S(t) u0` on the `L = 2`, `N = 1` ring over all ordered gate pairs.
///
/// Site 0 holds bits 0-1 and site 1 bits 2-3. The even gate acts on `(site 0, site 1)`;
/// the odd gate acts on `(site 1, site 0)`, so its input is the vector with the two
/// sites exchanged.
pub fn l2_distribution(group: &[Rows], u0: u8, t2: u32) -> BTreeMap<u8, u64> {
    let swap = |v: u8| (v >> 2) | ((v & 3) << 2);
    let mut out = BTreeMap::new();
    for g0 in group {
        for g1 in group {
            let mut v = u0;
            for step in 0..t2 {
                v = if step % 2 == 0 { apply(g0, v) } else { swap(apply(g1, swap(v))) };
            }
            *out.entry(v).or_insert(0u64) += 1;
        }
    }
    out
}

/// Number of `k`-dimensional subspaces of `Z_2^n` found by collecting spans of all
/// `k`-tuples of vectors.
pub fn brute_force_subspaces(n: usize, k: usize) -> usize {
    use std::collections::BTreeSet;
    fn span(vs: &[u32]) -> BTreeSet<u32> {
        let mut s = BTreeSet::from([0u32]);
        for &v in vs {
            let add: Vec<u32> = s.iter().map(|&x| x ^ v).collect();
            s.extend(add);
        }
        s
    }
    let mut found = BTreeSet::new();
    let total = 1u32 << n;
    let mut idx = vec![0u32; k];
    loop {
        let s = span(&idx);
        if s.len() == 1 << k {
            found.insert(s.into_iter().collect::<Vec<_>>());
        }
        let mut i = 0;
        loop {
            if i == k {
                return found.len().max(usize::from(k == 0));
            }
            idx[i] += 1;
            if idx[i] < total {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
