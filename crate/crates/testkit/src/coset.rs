//! Exhaustive coset minimization for frames on the 15-qubit qRM code.
//!
//! Enumerates all 2^15 products of `P` with the group generated by the ten
//! measured Z-plaquettes, the four X-cells and logical X, one element at a
//! time in Gray-code order, with no memoization.

/// Code tables as 1-based qubit labels, transcribed independently.
pub struct QrmTables;

impl QrmTables {
    /// The ten measured Z-plaquettes.
    pub const MEASURED_Z: [[usize; 4]; 10] = [
        [1, 2, 6, 7],
        [2, 3, 4, 7],
        [4, 5, 6, 7],
        [3, 4, 10, 11],
        [4, 5, 11, 12],
        [5, 6, 12, 13],
        [8, 12, 13, 15],
        [8, 9, 13, 14],
        [9, 10, 11, 14],
        [11, 12, 13, 14],
    ];

    pub const X_CELLS: [[usize; 8]; 4] = [
        [1, 2, 6, 7, 8, 9, 13, 14],
        [4, 5, 6, 7, 11, 12, 13, 14],
        [2, 3, 4, 7, 9, 10, 11, 14],
        [8, 9, 10, 11, 12, 13, 14, 15],
    ];

    pub const LOGICAL_X: [usize; 7] = [1, 2, 3, 4, 5, 6, 7];
}

fn mul_char(a: char, b: char) -> char {
    match (a, b) {
        ('I', x) | (x, 'I') => x,
        (x, y) if x == y => 'I',
        ('X', 'Z') | ('Z', 'X') => 'Y',
        ('X', 'Y') | ('Y', 'X') => 'Z',
        _ => 'X',
    }
}

fn multiply_into(a: &mut [char], b: &[char]) {
    for (x, &y) in a.iter_mut().zip(b) {
        *x = mul_char(*x, y);
    }
}

fn operator(kind: char, labels: &[usize]) -> Vec<char> {
    let mut v = vec!['I'; 15];
    for &l in labels {
        v[l - 1] = kind;
    }
    v
}

/// Integer masks with qubit 1 in the lowest bit, for tie-breaking only.
fn masks(p: &[char]) -> (u64, u64) {
    let mut x = 0u64;
    let mut z = 0u64;
    for (q, &ch) in p.iter().enumerate() {
        if ch == 'X' || ch == 'Y' {
            x |= 1 << q;
        }
        if ch == 'Z' || ch == 'Y' {
            z |= 1 << q;
        }
    }
    (x, z)
}

/// Minimum-weight coset member of a 15-character Pauli string, ties broken by
/// the smallest `(x_mask, z_mask)`.
pub fn coset_minimizer_oracle(p: &str) -> String {
    let p: Vec<char> = p.chars().collect();
    assert_eq!(p.len(), 15, "qRM frames have 15 qubits");
    let mut gens: Vec<Vec<char>> = QrmTables::MEASURED_Z.iter().map(|s| operator('Z', s)).collect();
    gens.extend(QrmTables::X_CELLS.iter().map(|s| operator('X', s)));
    gens.push(operator('X', &QrmTables::LOGICAL_X));
    let mut best: Option<(usize, (u64, u64), Vec<char>)> = None;
    // Gray-code order: each step multiplies in exactly one generator.
    let mut e = p;
    for step in 0u32..1 << gens.len() {
        if step > 0 {
            multiply_into(&mut e, &gens[step.trailing_zeros() as usize]);
        }
        let w = e.iter().filter(|&&ch| ch != 'I').count();
        if best.as_ref().is_some_and(|(bw, _, _)| w > *bw) {
            continue;
        }
        let key = (w, masks(&e));
        if best.as_ref().is_none_or(|(bw, bm, _)| key < (*bw, *bm)) {
            best = Some((key.0, key.1, e.clone()));
        }
    }
    best.expect("nonempty coset").2.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_reduces_to_identity() {
        let c: String = operator('X', &QrmTables::X_CELLS[1]).into_iter().collect();
        assert_eq!(coset_minimizer_oracle(&c), "I".repeat(15));
    }

    #[test]
    fn y1_stays_weight_one() {
        let mut y = "I".repeat(15);
        y.replace_range(0..1, "Y");
        let r = coset_minimizer_oracle(&y);
        assert_eq!(r.chars().filter(|&c| c != 'I').count(), 1);
    }
}
