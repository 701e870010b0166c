//! Exhaustive enumeration of vectors over GF(q), used by the brute-force
//! searches and by the oracles in the test suites.

use crate::gf::Elem;

/// Number of vectors in GF(q)^len, saturating at `u64::MAX`.
pub fn space_size(q: u32, len: usize) -> u64 {
    (q as u64).checked_pow(len as u32).unwrap_or(u64::MAX)
}

/// Visits every vector of GF(q)^len in lexicographic order (last
/// coordinate varies fastest), starting with the zero vector.
pub fn for_each_vector(q: u32, len: usize, mut f: impl FnMut(&[Elem])) {
    let mut v = vec![0; len];
    loop {
        f(&v);
        if !increment(&mut v, q, 0) {
            return;
        }
    }
}

/// Visits one representative of every line through the origin: the
/// nonzero vectors whose first nonzero coordinate is 1, restricted to
/// leading positions below `lead_limit`. Hamming weight is constant on
/// each line, so minimum-weight searches only need these.
pub fn for_each_normalized(q: u32, len: usize, lead_limit: usize, mut f: impl FnMut(&[Elem])) {
    let mut v = vec![0; len];
    for lead in 0..lead_limit.min(len) {
        v.iter_mut().for_each(|x| *x = 0);
        v[lead] = 1;
        loop {
            f(&v);
            if !increment(&mut v, q, lead + 1) {
                break;
            }
        }
    }
}

/// Odometer increment over positions `from..`; false once it wraps to zero.
fn increment(v: &mut [Elem], q: u32, from: usize) -> bool {
    for i in (from..v.len()).rev() {
        v[i] += 1;
        if v[i] < q {
            return true;
        }
        v[i] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let mut all = 0;
        for_each_vector(3, 4, |_| all += 1);
        assert_eq!(all, 81);
        let mut lines = 0;
        for_each_normalized(3, 4, 4, |_| lines += 1);
        assert_eq!(lines, (81 - 1) / 2);
        let mut prefixed = 0;
        for_each_normalized(5, 3, 1, |v| {
            assert_eq!(v[0], 1);
            prefixed += 1
        });
        assert_eq!(prefixed, 25);
    }

    #[test]
    fn lexicographic_order() {
        let mut seen = Vec::new();
        for_each_vector(2, 2, |v| seen.push(v.to_vec()));
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
