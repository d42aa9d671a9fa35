//! Revolving-door enumeration of fixed-size subsets.
//!
//! Consecutive subsets differ by removing one element and adding another, so
//! a running XOR of selected rows is updated with two row additions per step.

/// Iterates over all `size`-subsets of `0..n` in revolving-door order.
///
/// [`RevolvingDoor::current`] holds the subset being visited (in increasing
/// order); [`RevolvingDoor::advance`] moves to the next one and reports the
/// swapped pair `(removed, added)`.
#[derive(Debug, Clone)]
pub struct RevolvingDoor {
    size: usize,
    // c[1..=size] are the elements, c[size + 1] = n is a sentinel.
    c: Vec<usize>,
    done: bool,
}

impl RevolvingDoor {
    pub fn new(n: usize, size: usize) -> Self {
        assert!(size <= n, "subset size {size} exceeds universe {n}");
        let mut c = vec![0; size + 2];
        for (j, slot) in c.iter_mut().enumerate().take(size + 1).skip(1) {
            *slot = j - 1;
        }
        c[size + 1] = n;
        Self {
            size,
            c,
            done: false,
        }
    }

    pub fn current(&self) -> &[usize] {
        &self.c[1..=self.size]
    }

    /// Step to the next subset. Returns `None` once every subset was visited.
    pub fn advance(&mut self) -> Option<(usize, usize)> {
        if self.done || self.size == 0 {
            self.done = true;
            return None;
        }
        let t = self.size;
        let c = &mut self.c;
        let mut j;
        let mut try_decrease;
        if t % 2 == 1 {
            if c[1] + 1 < c[2] {
                let out = c[1];
                c[1] += 1;
                return Some((out, c[1]));
            }
            j = 2;
            try_decrease = true;
        } else {
            if c[1] > 0 {
                let out = c[1];
                c[1] -= 1;
                return Some((out, c[1]));
            }
            j = 2;
            try_decrease = false;
        }
        loop {
            if j > t {
                self.done = true;
                return None;
            }
            if try_decrease {
                // c[j] == c[j-1] + 1 here
                if c[j] >= j {
                    let out = c[j];
                    c[j] = c[j - 1];
                    c[j - 1] = j - 2;
                    return Some((out, j - 2));
                }
                j += 1;
                try_decrease = false;
            } else {
                // c[j-1] == j - 2 here
                if c[j] + 1 < c[j + 1] {
                    let out = c[j - 1];
                    c[j - 1] = c[j];
                    c[j] += 1;
                    return Some((out, c[j]));
                }
                j += 1;
                try_decrease = true;
            }
        }
    }
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn walk(n: usize, t: usize) -> Vec<Vec<usize>> {
        let mut rd = RevolvingDoor::new(n, t);
        let mut seen = vec![rd.current().to_vec()];
        while let Some((out, inn)) = rd.advance() {
            let prev: BTreeSet<usize> = seen.last().unwrap().iter().copied().collect();
            let next: BTreeSet<usize> = rd.current().iter().copied().collect();
            assert!(prev.contains(&out) && !prev.contains(&inn));
            let expected: BTreeSet<usize> = prev
                .iter()
                .copied()
                .filter(|&e| e != out)
                .chain(std::iter::once(inn))
                .collect();
            assert_eq!(next, expected, "n={n} t={t}");
            assert!(rd.current().windows(2).all(|w| w[0] < w[1]));
            assert!(rd.current().iter().all(|&e| e < n));
            seen.push(rd.current().to_vec());
        }
        seen
    }

    #[test]
    fn visits_every_subset_once() {
        for n in 0..=11 {
            for t in 0..=n {
                let seen = walk(n, t);
                assert_eq!(seen.len() as u64, binomial(n, t), "n={n} t={t}");
                let distinct: BTreeSet<Vec<usize>> = seen.into_iter().collect();
                assert_eq!(distinct.len() as u64, binomial(n, t));
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(36, 7), 8_347_680);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}
