//! Frozen H-representations of string cones and extended string cones.
//!
//! Rank ≤ 2 tables were computed from an exact path-crystal enumeration and
//! are re-audited against that oracle in the test suite (slice-by-slice set
//! equality of lattice points and string vectors). For A_n, n ≥ 3, only the
//! staircase word (1, 2,1, 3,2,1, …) is tabulated: per-block descending
//! chains plus the triangular pairing caps.

use rootsys::{RootSystem, TypeLabel};

/// (string-cone rows in ℝ^m, extended rows in ℝ^m × ℝ^rank), or None when the
/// word has no shipped table.
pub(crate) fn inequality_tables(
    rs: &RootSystem,
    letters: &[usize],
) -> Option<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    match (&rs.type_label, letters) {
        (TypeLabel::A(1), [1]) => Some((vec![vec![1]], vec![vec![-1, 1], vec![1, 0]])),
        (TypeLabel::A(2), [1, 2, 1]) => Some((
            vec![vec![0, 0, 1], vec![0, 1, -1], vec![1, 0, 0]],
            vec![
                vec![-1, 1, -2, 1, 0],
                vec![0, -1, 1, 0, 1],
                vec![0, 0, -1, 1, 0],
                vec![0, 0, 1, 0, 0],
                vec![0, 1, -1, 0, 0],
                vec![1, 0, 0, 0, 0],
            ],
        )),
        (TypeLabel::A(2), [2, 1, 2]) => Some((
            vec![vec![0, 0, 1], vec![0, 1, -1], vec![1, 0, 0]],
            vec![
                vec![-1, 1, -2, 0, 1],
                vec![0, -1, 1, 1, 0],
                vec![0, 0, -1, 0, 1],
                vec![0, 0, 1, 0, 0],
                vec![0, 1, -1, 0, 0],
                vec![1, 0, 0, 0, 0],
            ],
        )),
        (TypeLabel::B2, [1, 2, 1, 2]) => Some((
            vec![
                vec![0, 0, 0, 1],
                vec![0, 0, 1, -1],
                vec![0, 1, -1, 0],
                vec![1, 0, 0, 0],
            ],
            vec![
                vec![-1, 1, -2, 1, 1, 0],
                vec![0, -1, 2, -2, 0, 1],
                vec![0, 0, -1, 1, 1, 0],
                vec![0, 0, 0, -1, 0, 1],
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 1, -1, 0, 0],
                vec![0, 1, -1, 0, 0, 0],
                vec![1, 0, 0, 0, 0, 0],
            ],
        )),
        (TypeLabel::B2, [2, 1, 2, 1]) => Some((
            vec![
                vec![0, 0, 0, 1],
                vec![0, 0, 1, -2],
                vec![0, 2, -1, 0],
                vec![1, 0, 0, 0],
            ],
            vec![
                vec![-1, 2, -2, 2, 0, 1],
                vec![0, -1, 1, -2, 1, 0],
                vec![0, 0, -1, 2, 0, 1],
                vec![0, 0, 0, -1, 1, 0],
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 1, -2, 0, 0],
                vec![0, 2, -1, 0, 0, 0],
                vec![1, 0, 0, 0, 0, 0],
            ],
        )),
        (TypeLabel::C2, [1, 2, 1, 2]) => Some((
            vec![
                vec![0, 0, 0, 1],
                vec![0, 0, 1, -2],
                vec![0, 2, -1, 0],
                vec![1, 0, 0, 0],
            ],
            vec![
                vec![-1, 2, -2, 2, 1, 0],
                vec![0, -1, 1, -2, 0, 1],
                vec![0, 0, -1, 2, 1, 0],
                vec![0, 0, 0, -1, 0, 1],
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 1, -2, 0, 0],
                vec![0, 2, -1, 0, 0, 0],
                vec![1, 0, 0, 0, 0, 0],
            ],
        )),
        (TypeLabel::C2, [2, 1, 2, 1]) => Some((
            vec![
                vec![0, 0, 0, 1],
                vec![0, 0, 1, -1],
                vec![0, 1, -1, 0],
                vec![1, 0, 0, 0],
            ],
            vec![
                vec![-1, 1, -2, 1, 0, 1],
                vec![0, -1, 2, -2, 1, 0],
                vec![0, 0, -1, 1, 0, 1],
                vec![0, 0, 0, -1, 1, 0],
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 1, -1, 0, 0],
                vec![0, 1, -1, 0, 0, 0],
                vec![1, 0, 0, 0, 0, 0],
            ],
        )),
        (TypeLabel::G2, [1, 2, 1, 2, 1, 2]) => Some((
            vec![
                vec![0, 0, 0, 0, 0, 1],
                vec![0, 0, 0, 0, 1, -3],
                vec![0, 0, 0, 1, -1, 1],
                vec![0, 0, 1, -2, 1, -2],
                vec![0, 0, 2, -3, 0, 0],
                vec![0, 1, 0, -1, 1, -2],
                vec![0, 2, -1, 1, 0, -1],
                vec![0, 3, -1, 0, 0, 0],
                vec![1, 0, 0, 0, 0, 0],
            ],
            vec![
                vec![-1, 3, -2, 3, -2, 3, 1, 0],
                vec![0, -1, 1, -2, 1, -2, 0, 1],
                vec![0, 0, -1, 3, -2, 3, 1, 0],
                vec![0, 0, 0, -1, 1, -2, 0, 1],
                vec![0, 0, 0, 0, -1, 3, 1, 0],
                vec![0, 0, 0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 1, -3, 0, 0],
                vec![0, 0, 0, 1, -1, 1, 0, 0],
                vec![0, 0, 1, -2, 1, -2, 0, 0],
                vec![0, 0, 2, -3, 0, 0, 0, 0],
                vec![0, 1, -1, 2, -2, 4, 1, 0],
                vec![0, 1, 0, -1, 1, -2, 0, 0],
                vec![0, 2, -1, 1, 0, -1, 0, 0],
                vec![0, 3, -1, 0, 0, 0, 0, 0],
                vec![1, 0, 0, 0, 0, 0, 0, 0],
            ],
        )),
        (TypeLabel::G2, [2, 1, 2, 1, 2, 1]) => Some((
            vec![
                vec![0, 0, 0, 0, 0, 1],
                vec![0, 0, 0, 0, 1, -1],
                vec![0, 0, 0, 1, -2, 0],
                vec![0, 0, 2, -1, 0, 0],
                vec![0, 1, -1, 0, 0, 0],
                vec![1, 0, 0, 0, 0, 0],
            ],
            vec![
                vec![-1, 1, -2, 1, -2, 1, 0, 1],
                vec![0, -1, 3, -2, 3, -2, 1, 0],
                vec![0, 0, -1, 1, -2, 1, 0, 1],
                vec![0, 0, 0, -1, 3, -2, 1, 0],
                vec![0, 0, 0, 0, -1, 1, 0, 1],
                vec![0, 0, 0, 0, 0, -1, 1, 0],
                vec![0, 0, 0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 1, -1, 0, 0],
                vec![0, 0, 0, 1, -2, 0, 0, 0],
                vec![0, 0, 1, -1, 1, -1, 1, 0],
                vec![0, 0, 2, -1, 0, 0, 0, 0],
                vec![0, 1, -1, 0, 0, 0, 0, 0],
                vec![1, 0, 0, 0, 0, 0, 0, 0],
            ],
        )),
        (TypeLabel::A(n), _) if *n >= 3 => staircase_tables(rs, letters, *n),
        _ => None,
    }
}

/// Staircase word of A_n: per-block descending chains, with caps
/// x_t ≤ ⟨λ, α_{i_t}∨⟩ − Σ_{j>t} ⟨α_{i_j}, α_{i_t}∨⟩ x_j.
fn staircase_tables(
    rs: &RootSystem,
    letters: &[usize],
    n: usize,
) -> Option<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let mut staircase = Vec::new();
    for k in 1..=n {
        for i in (1..=k).rev() {
            staircase.push(i);
        }
    }
    if letters != staircase {
        return None;
    }
    let m = letters.len();
    let mut cone_rows = Vec::new();
    let mut offset = 0;
    for k in 1..=n {
        for j in 0..k {
            let mut row = vec![0i64; m];
            row[offset + j] = 1;
            if j + 1 < k {
                row[offset + j + 1] = -1;
            }
            cone_rows.push(row);
        }
        offset += k;
    }
    let mut ext_rows: Vec<Vec<i64>> = cone_rows
        .iter()
        .map(|r| {
            let mut e = r.clone();
            e.extend(std::iter::repeat(0).take(n));
            e
        })
        .collect();
    for t in 0..m {
        let mut row = vec![0i64; m + n];
        row[t] = -1;
        let it = letters[t] - 1;
        for j in t + 1..m {
            let ij = letters[j] - 1;
            row[j] = -i64::try_from(&rs.cartan[it][ij]).unwrap();
        }
        row[m + it] = 1;
        ext_rows.push(row);
    }
    Some((cone_rows, ext_rows))
}
