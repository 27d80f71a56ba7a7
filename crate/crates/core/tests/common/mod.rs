#![allow(dead_code)]

use bim::{FieldElement, FieldSpec, Matrix};

pub fn field(s: &str) -> FieldSpec {
    s.parse().unwrap()
}

/// Determinant by the Leibniz permutation expansion. Shares nothing with the
/// elimination kernel; only usable for small sizes.
pub fn leibniz_det(m: &Matrix) -> FieldElement {
    assert!(m.is_square());
    let n = m.rows();
    let f = *m.field();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = f.zero();
    permute(&mut perm, 0, &mut |p| {
        let mut term = f.one();
        for (i, &j) in p.iter().enumerate() {
            term = f.mul(term, m.get(i, j));
        }
        if parity(p) {
            term = f.neg(term);
        }
        total = f.add(total, term);
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// True for odd permutations.
fn parity(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Every `n x n` matrix over `f`, in code order.
pub fn all_matrices(n: usize, f: FieldSpec) -> impl Iterator<Item = Matrix> {
    let q = u64::from(f.order());
    let total = q.pow((n * n) as u32);
    (0..total).map(move |mut idx| {
        let mut codes = vec![0u32; n * n];
        for c in codes.iter_mut().rev() {
            *c = (idx % q) as u32;
            idx /= q;
        }
        Matrix::from_codes(n, n, f, &codes).unwrap()
    })
}

/// Brute-force `|GL(n, q)|` for a prime `q`, counting nonzero determinants.
pub fn count_invertible_by_enumeration(n: usize, f: FieldSpec) -> u64 {
    all_matrices(n, f).filter(|m| !leibniz_det(m).is_zero()).count() as u64
}
