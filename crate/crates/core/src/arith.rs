use num_integer::Integer;

/// Positive divisors of `n` in increasing order. `divisors(0)` is empty.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            small.push(k);
            if k != n / k {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

/// gcd of a nonempty sequence; `None` for an empty one.
pub fn gcd_all(values: impl IntoIterator<Item = usize>) -> Option<usize> {
    values.into_iter().reduce(gcd)
}

/// Whether `index` divides `2·genus − 2` (every positive integer divides 0).
pub fn is_admissible(genus: usize, index: usize) -> bool {
    if index == 0 {
        return false;
    }
    let canonical_degree = 2 * genus as i64 - 2;
    canonical_degree % index as i64 == 0
}
