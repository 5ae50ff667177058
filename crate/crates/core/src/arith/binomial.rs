use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rows `0..=max_n` of Pascal's triangle with exact entries.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `binom(n, k)`, zero when `k > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.rows[n][k].clone()
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_rows() {
        let t = BinomialTable::new(10);
        assert_eq!(t.get(4, 2), BigInt::from(6));
        assert_eq!(t.get(10, 3), BigInt::from(120));
        assert_eq!(t.get(3, 5), BigInt::zero());
        let sum: BigInt = t.row(10).iter().sum();
        assert_eq!(sum, BigInt::from(1024));
    }
}
