use std::collections::BTreeMap;

use super::{image_basis, kernel_basis, LinAlgError, MatrixQ, Rational, Subspace};

/// Jordan block counts of a matrix at one rational eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanCensus {
    pub eigenvalue: Rational,
    /// `d_k = dim(ker N ∩ Im N^k)` for `k = 0, 1, ...`, ending with the first zero.
    pub filtration_dims: Vec<usize>,
    /// Block size to number of blocks; sizes with no blocks are omitted.
    pub blocks_of_size: BTreeMap<usize, usize>,
    pub nu2: usize,
}

impl JordanCensus {
    /// Dimension of the generalized eigenspace.
    pub fn algebraic_multiplicity(&self) -> usize {
        self.blocks_of_size.iter().map(|(k, c)| k * c).sum()
    }

    pub fn geometric_multiplicity(&self) -> usize {
        self.filtration_dims.first().copied().unwrap_or(0)
    }

    /// Block sizes in non-decreasing order, one entry per block.
    pub fn chain_sizes(&self) -> Vec<usize> {
        self.blocks_of_size.iter().flat_map(|(&k, &c)| std::iter::repeat_n(k, c)).collect()
    }
}

/// Census of Jordan blocks of `m` at `lambda` through the filtration
/// `ker N ∩ Im N^k` with `N = m - lambda I`.
pub fn jordan_census(m: &MatrixQ, lambda: &Rational) -> Result<JordanCensus, LinAlgError> {
    let n = m.shift(lambda)?;
    let kernel = kernel_basis(&n);
    let mut dims = Vec::new();
    let mut power = MatrixQ::identity(n.rows());
    loop {
        let image: Subspace = image_basis(&power);
        let d = kernel.intersect(&image)?.dim();
        dims.push(d);
        if d == 0 || dims.len() > n.rows() + 1 {
            break;
        }
        power = &power * &n;
    }
    let mut blocks = BTreeMap::new();
    for k in 1..dims.len() {
        let count = dims[k - 1] - dims[k];
        if count > 0 {
            blocks.insert(k, count);
        }
    }
    Ok(JordanCensus {
        eigenvalue: lambda.clone(),
        nu2: dims.get(1).copied().unwrap_or(0),
        filtration_dims: dims,
        blocks_of_size: blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: exact-size block counts from ranks of powers of N.
    fn rank_oracle(m: &MatrixQ, lambda: &Rational) -> BTreeMap<usize, usize> {
        let n = m.shift(lambda).unwrap();
        let dim = n.rows();
        let r: Vec<i64> = (0..=dim + 1).map(|k| n.pow(k as u32).unwrap().rank() as i64).collect();
        (1..=dim)
            .filter_map(|k| {
                let c = r[k - 1] - 2 * r[k] + r[k + 1];
                (c > 0).then_some((k, c as usize))
            })
            .collect()
    }

    fn jordan_block_matrix(lambda: i64, sizes: &[usize]) -> MatrixQ {
        let dim: usize = sizes.iter().sum();
        let mut m = MatrixQ::scalar(dim, &rat(lambda));
        let mut off = 0;
        for &s in sizes {
            for i in 0..s.saturating_sub(1) {
                m.set(off + i, off + i + 1, rat(1));
            }
            off += s;
        }
        m
    }

    #[test]
    fn printed_matrix_has_two_blocks_of_size_two() {
        let m = MatrixQ::from_i64(&[
            [-1, -1, -1, -1, 1],
            [0, 0, 0, 0, -1],
            [1, 1, 1, 1, 1],
            [0, 0, 0, 0, -1],
            [0, 0, 0, 0, 0],
        ]);
        let c = jordan_census(&m, &rat(0)).unwrap();
        assert_eq!(c.blocks_of_size, BTreeMap::from([(1, 1), (2, 2)]));
        assert_eq!(c.nu2, 2);
        assert_eq!(c.filtration_dims, vec![3, 2, 0]);
        let f = &m + &MatrixQ::identity(5);
        assert_eq!(jordan_census(&f, &rat(1)).unwrap(), JordanCensus { eigenvalue: rat(1), ..c });
    }

    #[test]
    fn identity_is_all_size_one() {
        let c = jordan_census(&MatrixQ::identity(4), &rat(1)).unwrap();
        assert_eq!(c.blocks_of_size, BTreeMap::from([(1, 4)]));
        assert_eq!(c.nu2, 0);
        assert_eq!(c.chain_sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn absent_eigenvalue_is_empty() {
        let c = jordan_census(&MatrixQ::identity(3), &rat(2)).unwrap();
        assert!(c.blocks_of_size.is_empty());
        assert_eq!(c.filtration_dims, vec![0]);
    }

    #[test]
    fn non_square_is_rejected() {
        assert!(matches!(jordan_census(&MatrixQ::zeros(2, 3), &rat(0)), Err(LinAlgError::NotSquare { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn census_matches_rank_oracle_random(
            (n, entries, lambda) in (2usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(-2i64..=2, n * n), -1i64..=1))
        ) {
            let rows: Vec<Vec<i64>> = entries.chunks(n).map(<[i64]>::to_vec).collect();
            let m = MatrixQ::from_i64(&rows);
            let c = jordan_census(&m, &rat(lambda)).unwrap();
            prop_assert_eq!(&c.blocks_of_size, &rank_oracle(&m, &rat(lambda)));
            prop_assert!(c.filtration_dims.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(c.algebraic_multiplicity() <= n);
        }

        #[test]
        fn census_recovers_conjugated_jordan_form(
            sizes in prop::collection::vec(1usize..=3, 1..=3),
            lambda in -2i64..=2,
            p_entries in prop::collection::vec(-2i64..=2, 81),
        ) {
            let j = jordan_block_matrix(lambda, &sizes);
            let dim = j.rows();
            let rows: Vec<Vec<i64>> = p_entries[..dim * dim].chunks(dim).map(<[i64]>::to_vec).collect();
            let p = &MatrixQ::from_i64(&rows) + &MatrixQ::identity(dim);
            prop_assume!(p.determinant().unwrap() != rat(0));
            let m = j.conjugate_by(&p).unwrap();
            let c = jordan_census(&m, &rat(lambda)).unwrap();
            let mut expected = BTreeMap::new();
            for s in sizes {
                *expected.entry(s).or_insert(0) += 1;
            }
            prop_assert_eq!(c.blocks_of_size, expected);
        }
    }
}
