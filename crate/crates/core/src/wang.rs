//! Betti numbers of the mapping torus `Y_f`, of `X = S^1 x Y_f`, and the
//! primitive Betti numbers `p_i^±` of `X` for the product symplectic form
//! and its deformations by a class `η`.

use num_traits::Zero;
use thiserror::Error;

use crate::exactla::{jordan_census, rat, JordanCensus, LinAlgError, MatrixQ, Rational};
use crate::surfaces::{HomologyAction, SurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WangError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("monodromy is {found}x{found}, surface has H1 rank {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("monodromy is not invertible")]
    NotInvertible,
    #[error("eta has {found} coefficients, ker(f*-1) has dimension {expected}")]
    EtaLength { expected: usize, found: usize },
}

/// `X = S^1 x Y_f` for a monodromy acting by `fstar` on H^1 of the fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberedFourManifold {
    pub surface: SurfaceModel,
    pub fstar: MatrixQ,
}

impl FiberedFourManifold {
    pub fn new(surface: SurfaceModel, fstar: MatrixQ) -> Result<Self, WangError> {
        fstar.require_square()?;
        if fstar.rows() != surface.h1_rank() {
            return Err(WangError::SizeMismatch { expected: surface.h1_rank(), found: fstar.rows() });
        }
        if fstar.determinant()?.is_zero() {
            return Err(WangError::NotInvertible);
        }
        Ok(FiberedFourManifold { surface, fstar })
    }

    pub fn from_action(surface: SurfaceModel, action: &HomologyAction) -> Result<Self, WangError> {
        Self::new(surface, action.on_h1_dual.clone())
    }
}

/// Coefficients of `[dπ ∧ η]` on the Jordan-adapted basis of ker(f*-1),
/// listed in census order (chains sorted by size, size-1 chains first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaClass {
    pub lambdas: Vec<Rational>,
}

impl EtaClass {
    pub fn new(lambdas: Vec<Rational>) -> Self {
        EtaClass { lambdas }
    }

    pub fn from_i64(lambdas: &[i64]) -> Self {
        EtaClass::new(lambdas.iter().map(|&x| rat(x)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiReport {
    /// `b_0..b_4` of X.
    pub b: [usize; 5],
    /// `b_0..b_3` of Y_f.
    pub b_y: [usize; 4],
    pub p_plus: [i64; 3],
    pub p_minus: [i64; 3],
    pub nu2: usize,
    pub chi_p: i64,
    /// Jordan chain lengths at eigenvalue 1, in census order.
    pub jordan_sizes: Vec<usize>,
}

struct WangDims {
    ker: usize,
    coker: usize,
}

fn wang_dims(fstar: &MatrixQ) -> Result<WangDims, WangError> {
    let n = fstar.shift(&rat(1))?;
    let r = n.rank();
    Ok(WangDims { ker: n.cols() - r, coker: n.rows() - r })
}

/// `(b_0, b_1, b_2, b_3)` of the mapping torus.
pub fn mapping_torus_betti(fstar: &MatrixQ) -> Result<[usize; 4], WangError> {
    let d = wang_dims(fstar)?;
    Ok([1, d.ker + 1, d.coker, 0])
}

/// `(b_0, ..., b_4)` of `S^1 x Y_f`.
pub fn product_betti(fstar: &MatrixQ) -> Result<[usize; 5], WangError> {
    let d = wang_dims(fstar)?;
    Ok([1, 2 + d.ker, 1 + d.coker + d.ker, d.coker, 0])
}

fn census(fstar: &MatrixQ) -> Result<JordanCensus, WangError> {
    Ok(jordan_census(fstar, &rat(1))?)
}

/// Full report for `(X, ω_η)`, or for the product form when `eta` is `None`.
pub fn primitive_betti(m: &FiberedFourManifold, eta: Option<&EtaClass>) -> Result<BettiReport, WangError> {
    let b = product_betti(&m.fstar)?;
    let b_y = mapping_torus_betti(&m.fstar)?;
    let c = census(&m.fstar)?;
    let sizes = c.chain_sizes();
    let k = sizes.len();
    let s = sizes.iter().filter(|&&n| n == 1).count();
    debug_assert_eq!(k - s, c.nu2);
    let b2 = b[2] as i64;
    let long = (k - s) as i64;
    let (p2p, p2m) = match eta {
        None => (b2 + 1 + c.nu2 as i64, b2 + c.nu2 as i64),
        Some(eta) => {
            if eta.lambdas.len() != k {
                return Err(WangError::EtaLength { expected: k, found: eta.lambdas.len() });
            }
            if eta.lambdas[s..].iter().any(|l| !l.is_zero()) {
                (b2 - 1 + 1 + long, b2 + long - 1)
            } else {
                (b2 - 1 + 2 + long, b2 + long)
            }
        }
    };
    let p_plus = [1, b[1] as i64, p2p];
    let p_minus = [0, b[3] as i64, p2m];
    Ok(BettiReport {
        b,
        b_y,
        p_plus,
        p_minus,
        nu2: c.nu2,
        chi_p: 2 * p_plus[0] - p_plus[1] + p_minus[1],
        jordan_sizes: sizes,
    })
}

/// True iff the monodromy acts trivially on cohomology, so `X` cannot be told
/// apart from the trivial product by these invariants.
pub fn torelli_product_check(m: &FiberedFourManifold) -> bool {
    m.fstar.is_identity()
}

/// The report of the trivial product with the same fiber.
pub fn trivial_product_report(surface: &SurfaceModel) -> BettiReport {
    let m = FiberedFourManifold::new(surface.clone(), MatrixQ::identity(surface.h1_rank()))
        .expect("identity is a valid monodromy");
    primitive_betti(&m, None).expect("identity report")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn printed_fstar() -> MatrixQ {
        &MatrixQ::from_i64(&[
            [-1, -1, -1, -1, 1],
            [0, 0, 0, 0, -1],
            [1, 1, 1, 1, 1],
            [0, 0, 0, 0, -1],
            [0, 0, 0, 0, 0],
        ]) + &MatrixQ::identity(5)
    }

    fn torus_x() -> FiberedFourManifold {
        FiberedFourManifold::new(SurfaceModel::torus4(), printed_fstar()).unwrap()
    }

    #[test]
    fn mapping_torus_examples() {
        assert_eq!(mapping_torus_betti(&MatrixQ::identity(5)).unwrap(), [1, 6, 5, 0]);
        assert_eq!(mapping_torus_betti(&printed_fstar()).unwrap(), [1, 4, 3, 0]);
        assert_eq!(mapping_torus_betti(&MatrixQ::identity(3)).unwrap(), [1, 4, 3, 0]);
        assert!(mapping_torus_betti(&MatrixQ::zeros(2, 3)).is_err());
    }

    #[test]
    fn product_examples() {
        assert_eq!(product_betti(&printed_fstar()).unwrap(), [1, 5, 7, 3, 0]);
        assert_eq!(product_betti(&MatrixQ::identity(5)).unwrap(), [1, 7, 11, 5, 0]);
        assert_eq!(product_betti(&MatrixQ::identity(3)).unwrap(), [1, 5, 7, 3, 0]);
    }

    #[test]
    fn torus_primitive_numbers() {
        let r = primitive_betti(&torus_x(), None).unwrap();
        assert_eq!(r.p_plus, [1, 5, 10]);
        assert_eq!(r.p_minus, [0, 3, 9]);
        assert_eq!(r.nu2, 2);
        assert_eq!(r.chi_p, 0);
        assert_eq!(r.jordan_sizes, vec![1, 2, 2]);
        let deformed = primitive_betti(&torus_x(), Some(&EtaClass::from_i64(&[0, 1, 0]))).unwrap();
        assert_eq!((deformed.p_plus[2], deformed.p_minus[2]), (9, 8));
        let flat = primitive_betti(&torus_x(), Some(&EtaClass::from_i64(&[5, 0, 0]))).unwrap();
        assert_eq!(flat, r);
    }

    #[test]
    fn sphere_primitive_numbers() {
        let m = FiberedFourManifold::new(SurfaceModel::sphere4(), MatrixQ::identity(3)).unwrap();
        let r = primitive_betti(&m, None).unwrap();
        assert_eq!(r.p_plus[2], 8);
        assert_eq!(r.b, [1, 5, 7, 3, 0]);
        assert_eq!(r.chi_p, 0);
    }

    #[test]
    fn eta_length_is_checked() {
        let e = primitive_betti(&torus_x(), Some(&EtaClass::from_i64(&[1, 0]))).unwrap_err();
        assert_eq!(e, WangError::EtaLength { expected: 3, found: 2 });
    }

    #[test]
    fn manifold_validation() {
        let t = SurfaceModel::torus4();
        assert!(matches!(
            FiberedFourManifold::new(t.clone(), MatrixQ::identity(3)),
            Err(WangError::SizeMismatch { .. })
        ));
        assert_eq!(FiberedFourManifold::new(t, MatrixQ::zeros(5, 5)), Err(WangError::NotInvertible));
    }

    #[test]
    fn torelli_products() {
        let t = SurfaceModel::torus4();
        let id = FiberedFourManifold::new(t.clone(), MatrixQ::identity(5)).unwrap();
        assert!(torelli_product_check(&id));
        assert_eq!(primitive_betti(&id, None).unwrap(), trivial_product_report(&t));
        assert!(!torelli_product_check(&torus_x()));
        let p = MatrixQ::from_i64(&[[1, 2, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 3], [0, 0, 0, 1, 0], [1, 0, 0, 0, 1]]);
        let conj = MatrixQ::identity(5).conjugate_by(&p).unwrap();
        assert!(torelli_product_check(&FiberedFourManifold::new(t, conj).unwrap()));
    }
}
