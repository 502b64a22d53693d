use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::One;

use crate::{Error, Result};

// Monotonically growing factorial table. Readers share the lock; a writer
// extends the table at most once per missing entry.
static FACTORIALS: RwLock<Vec<BigInt>> = RwLock::new(Vec::new());

/// `n!` for `n >= 0`, memoized.
pub fn factorial(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Domain(format!("factorial of negative integer {n}")));
    }
    Ok(factorial_big(n as usize))
}

/// Infallible `n!` used on hot paths where `n` is already validated.
pub fn factorial_big(n: usize) -> BigInt {
    {
        let table = FACTORIALS.read().unwrap();
        if let Some(v) = table.get(n) {
            return v.clone();
        }
    }
    let mut table = FACTORIALS.write().unwrap();
    if table.is_empty() {
        table.push(BigInt::one());
    }
    while table.len() <= n {
        let next = table.last().unwrap() * BigInt::from(table.len());
        table.push(next);
    }
    table[n].clone()
}

/// `n!!` for `n >= -1`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::Domain(format!("double factorial of {n}")));
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    Ok(acc)
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::from(0);
    }
    let (n, k) = (n as usize, k as usize);
    factorial_big(n) / (factorial_big(k) * factorial_big(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_base_cases_and_oracle() {
        assert_eq!(factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(factorial(1).unwrap(), BigInt::from(1));
        // iterative product oracle
        let mut expect = BigInt::one();
        for k in 1..=10 {
            expect *= BigInt::from(k);
        }
        assert_eq!(factorial(10).unwrap(), expect);
        assert_eq!(expect, BigInt::from(3628800_u64));
        assert!(factorial(-1).is_err());
    }

    #[test]
    fn factorial_recurrence_sweep() {
        for n in 0..=500usize {
            assert_eq!(
                factorial_big(n) * BigInt::from(n + 1),
                factorial_big(n + 1),
                "recurrence fails at n = {n}"
            );
        }
    }

    #[test]
    fn double_factorial_conventions() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(7).unwrap(), BigInt::from(105)); // 7*5*3*1
        assert_eq!(double_factorial(8).unwrap(), BigInt::from(384));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn concurrent_reads_agree() {
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| factorial_big(200)))
            .collect();
        let first = factorial_big(200);
        for h in handles {
            assert_eq!(h.join().unwrap(), first);
        }
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::from(0));
        assert_eq!(binomial(5, 6), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }
}
