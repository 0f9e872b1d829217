//! Exact Smith normal form over the integers and finitely generated
//! abelian group decompositions derived from it.
//!
//! All arithmetic is in `i128` with smallest-pivot selection, which keeps
//! entry growth tame for the small matrices this crate produces. Pivoting
//! and sweep order are fully deterministic.

use serde::{Deserialize, Serialize};

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i128>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        IntMat { rows: r, cols: c, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].checked_add(a.checked_mul(other[(k, j)]).expect("overflow")).expect("overflow");
                }
            }
        }
        out
    }

    pub fn col(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    // row a += c * row b
    fn add_row(&mut self, a: usize, b: usize, c: i128) {
        for j in 0..self.cols {
            let v = self[(b, j)].checked_mul(c).expect("overflow");
            self[(a, j)] = self[(a, j)].checked_add(v).expect("overflow");
        }
    }

    fn add_col(&mut self, a: usize, b: usize, c: i128) {
        for i in 0..self.rows {
            let v = self[(i, b)].checked_mul(c).expect("overflow");
            self[(i, a)] = self[(i, a)].checked_add(v).expect("overflow");
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            self[(a, j)] = -self[(a, j)];
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            self[(i, a)] = -self[(i, a)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of a Smith normal form computation: `u * a * v = d` with
/// `u`, `v` unimodular and `d` diagonal with divisibility d1 | d2 | ...
/// `u_inv` is the exact inverse of `u`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    pub d: IntMat,
}

impl Smith {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<i128> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d[(i, i)]).filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Compute the Smith normal form of `a`.
pub fn smith_normal_form(a: &IntMat) -> Smith {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut u_inv = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let n = a.rows.min(a.cols);

    for k in 0..n {
        loop {
            // smallest nonzero |entry| in the trailing block, row-major tie-break
            let mut pivot: Option<(usize, usize, i128)> = None;
            for i in k..d.rows {
                for j in k..d.cols {
                    let x = d[(i, j)].abs();
                    if x != 0 && pivot.map_or(true, |(_, _, p)| x < p) {
                        pivot = Some((i, j, x));
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else {
                return Smith { u, u_inv, v, d };
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            u_inv.swap_cols(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            if d[(k, k)] < 0 {
                d.negate_row(k);
                u.negate_row(k);
                u_inv.negate_col(k);
            }
            let p = d[(k, k)];

            let mut clean = true;
            for i in (k + 1)..d.rows {
                let q = d[(i, k)].div_euclid(p);
                if q != 0 {
                    d.add_row(i, k, -q);
                    u.add_row(i, k, -q);
                    u_inv.add_col(k, i, q);
                }
                if d[(i, k)] != 0 {
                    clean = false;
                }
            }
            for j in (k + 1)..d.cols {
                let q = d[(k, j)].div_euclid(p);
                if q != 0 {
                    d.add_col(j, k, -q);
                    v.add_col(j, k, -q);
                }
                if d[(k, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let mut bad: Option<usize> = None;
            'scan: for i in (k + 1)..d.rows {
                for j in (k + 1)..d.cols {
                    if d[(i, j)] % p != 0 {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    d.add_row(k, i, 1);
                    u.add_row(k, i, 1);
                    u_inv.add_col(i, k, -1);
                }
                None => break,
            }
        }
    }
    Smith { u, u_inv, v, d }
}

/// A finitely generated abelian group as free rank plus invariant factors
/// `d1 | d2 | ...` with every `d > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroupDecomp {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroupDecomp {
    pub fn trivial() -> Self {
        AbelianGroupDecomp { free_rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupDecomp { free_rank: rank, torsion: vec![] }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianGroupDecomp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of the column lattice: `Z^rows / im(a)`.
pub fn cokernel(a: &IntMat) -> AbelianGroupDecomp {
    let s = smith_normal_form(a);
    let factors = s.invariant_factors();
    let free_rank = a.rows - factors.len();
    let torsion: Vec<u64> = factors.iter().filter(|&&x| x > 1).map(|&x| x as u64).collect();
    AbelianGroupDecomp { free_rank, torsion }
}

/// Rank over the integers.
pub fn rank(a: &IntMat) -> usize {
    smith_normal_form(a).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smith_small() {
        let a = IntMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors(), vec![2, 2, 156]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    }

    #[test]
    fn smith_torus_pairing_doubled() {
        // pairing of a doubled curve on the torus: torsion Z/2 in the cokernel
        let a = IntMat::from_rows(&[vec![0, 2], vec![-2, 0]]);
        let coker = cokernel(&a);
        assert_eq!(coker, AbelianGroupDecomp { free_rank: 0, torsion: vec![2, 2] });
    }

    #[test]
    fn cokernel_free() {
        // classes of three parallel (1,0) curves on the torus
        let a = IntMat::from_rows(&[vec![1, 1, 1], vec![0, 0, 0]]);
        let coker = cokernel(&a);
        assert_eq!(coker, AbelianGroupDecomp::free(1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(AbelianGroupDecomp::trivial().to_string(), "0");
        assert_eq!(AbelianGroupDecomp::free(1).to_string(), "Z");
        let g = AbelianGroupDecomp { free_rank: 2, torsion: vec![2, 4] };
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/4");
    }

    proptest! {
        #[test]
        fn smith_properties(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
            // deterministic pseudo-random small matrix
            let mut state = seed | 1;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) as i64 % 7 - 3) as i128
            };
            let a = IntMat { rows, cols, data: (0..rows*cols).map(|_| next()).collect() };
            let s = smith_normal_form(&a);
            // u a v = d, u u_inv = I
            prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
            prop_assert_eq!(s.u.mul(&s.u_inv), IntMat::identity(rows));
            // diagonal, nonnegative, divisibility chain
            for i in 0..rows {
                for j in 0..cols {
                    if i != j {
                        prop_assert_eq!(s.d[(i, j)], 0);
                    }
                }
            }
            let f = s.invariant_factors();
            for w in f.windows(2) {
                prop_assert!(w[0] > 0 && w[1] % w[0] == 0);
            }
        }
    }
}
