use crate::exactla::{rat, MatrixQ};

use super::word::{expand_relations, Generator, Letter, MCGWord};
use super::{
    braid_sigma_matrix, dehn_twist_matrix_signed, push_rho_matrix_signed, push_tau_matrix_signed,
    SurfaceError, SurfaceKind, SurfaceModel,
};

/// Toroidal monodromy `f`.
pub const TOROIDAL_WORD_F: &str = "t3^-1 t2^-1 t1^-1 r1^-1 r2^-1 t1^-1 r2 t4^-1 r4^-1 t3^-1";
/// Second toroidal monodromy `f'`, on the same fibered face as `f`.
pub const TOROIDAL_WORD_F_PRIME: &str = "r2^-1 t1 r2^-1 t1^-1 t4^-1 r3^-2 t2^-1 r4^-1 r1^-1";
/// Spherical braid monodromy `g`.
pub const SPHERICAL_WORD_G: &str = "s1^-1 s2 s1^-1 s2 s1^-1 s2";

/// How the cohomology action is read off from the homology action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DualConvention {
    /// `f^* = f_*^T`
    Transpose,
    /// `f^* = (f_*^-1)^T`
    InverseTranspose,
    /// `f^* = F^-1 f_* F` with `F` the quarter-turn frame `a_j -> b_{j-1}`,
    /// `b0 -> -a0` on the torus (identity on the sphere).
    QuarterTurn,
}

impl DualConvention {
    pub const ALL: [DualConvention; 3] =
        [DualConvention::Transpose, DualConvention::InverseTranspose, DualConvention::QuarterTurn];

    pub fn name(self) -> &'static str {
        match self {
            DualConvention::Transpose => "transpose",
            DualConvention::InverseTranspose => "inverse-transpose",
            DualConvention::QuarterTurn => "quarter-turn",
        }
    }

    pub fn apply(self, on_h1: &MatrixQ, s: &SurfaceModel) -> MatrixQ {
        match self {
            DualConvention::Transpose => on_h1.transpose(),
            DualConvention::InverseTranspose => {
                on_h1.inverse().expect("mapping classes act invertibly").transpose()
            }
            DualConvention::QuarterTurn => {
                let f = quarter_turn_frame(s);
                &(&f.inverse().expect("frame is unimodular") * on_h1) * &f
            }
        }
    }
}

/// Columns are the images `a_j -> b_{j-1}` (indices mod 4) and `b0 -> -a0`.
/// This is a symplectic change of basis exchanging meridians and longitudes.
pub fn quarter_turn_frame(s: &SurfaceModel) -> MatrixQ {
    match s.kind() {
        SurfaceKind::Sphere4 => MatrixQ::identity(s.h1_rank()),
        SurfaceKind::Torus4 => {
            let mut cols: Vec<Vec<_>> =
                (0..4).map(|j| super::CurveClass::b(j + 3).to_rational()).collect();
            cols.push(vec![rat(-1), rat(0), rat(0), rat(0), rat(0)]);
            MatrixQ::from_columns(5, &cols).expect("five columns of length five")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Convention {
    /// Twist sign in `x -> x + sigma <x, c> c`.
    pub sigma: i64,
    pub dual: DualConvention,
}

pub const TWIST_SIGN: i64 = 1;

/// The convention under which the toroidal word `f` reproduces its known
/// cohomology action; see [`calibrate`].
pub const CALIBRATED: Convention = Convention { sigma: TWIST_SIGN, dual: DualConvention::QuarterTurn };

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyAction {
    /// `f_*` on H1, column-vector convention.
    pub on_h1: MatrixQ,
    /// `f^*` on H^1.
    pub on_h1_dual: MatrixQ,
}

impl HomologyAction {
    /// `f^* - 1`
    pub fn dual_minus_identity(&self) -> MatrixQ {
        &self.on_h1_dual - &MatrixQ::identity(self.on_h1_dual.rows())
    }
}

fn generator_matrix(g: Generator, s: &SurfaceModel, sigma: i64) -> Result<MatrixQ, SurfaceError> {
    let idx = |i: u8| usize::from(i);
    match g {
        Generator::Rho(i) => push_rho_matrix_signed(idx(i), s, sigma),
        Generator::Tau(i) => push_tau_matrix_signed(idx(i), s, sigma),
        Generator::Sigma(i) => braid_sigma_matrix(idx(i), s),
        Generator::Twist(c) => {
            if s.kind() != SurfaceKind::Torus4 {
                return Err(SurfaceError::WrongSurface { operation: "twist", surface: s.kind() });
            }
            dehn_twist_matrix_signed(&c.class(), s, sigma)
        }
        Generator::RelA(..) | Generator::RelC(..) => {
            let w = expand_relations(&MCGWord::new(s.clone(), vec![Letter::new(g, 1)]));
            product(&w.letters, s, sigma)
        }
    }
}

fn product(letters: &[Letter], s: &SurfaceModel, sigma: i64) -> Result<MatrixQ, SurfaceError> {
    let mut acc = MatrixQ::identity(s.h1_rank());
    for letter in letters {
        let m = generator_matrix(letter.generator, s, sigma)?
            .powi(letter.exponent)
            .expect("generator matrices are unimodular");
        acc = &acc * &m;
    }
    Ok(acc)
}

/// Homology action of a word, letters composed right to left
/// (the matrix of `l1 l2 ... ln` is `M1 M2 ... Mn`).
pub fn evaluate_word_with(w: &MCGWord, convention: Convention) -> Result<HomologyAction, SurfaceError> {
    let on_h1 = product(&w.letters, &w.surface, convention.sigma)?;
    let on_h1_dual = convention.dual.apply(&on_h1, &w.surface);
    Ok(HomologyAction { on_h1, on_h1_dual })
}

pub fn evaluate_word(w: &MCGWord) -> Result<HomologyAction, SurfaceError> {
    evaluate_word_with(w, CALIBRATED)
}

/// True iff the word acts trivially on homology.
pub fn is_torelli(w: &MCGWord) -> Result<bool, SurfaceError> {
    Ok(evaluate_word(w)?.on_h1.is_identity())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CalibrationMatch {
    pub convention: Convention,
    /// True when the match needed letters composed left to right.
    pub reversed: bool,
}

/// Every (sign, dual convention, reading order) under which `w` evaluates to
/// a cohomology action with `f^* - 1 == target`.
pub fn calibrate(w: &MCGWord, target: &MatrixQ) -> Result<Vec<CalibrationMatch>, SurfaceError> {
    let mut found = Vec::new();
    for sigma in [1, -1] {
        for dual in DualConvention::ALL {
            for reversed in [false, true] {
                let convention = Convention { sigma, dual };
                let mut word = w.clone();
                if reversed {
                    word.letters.reverse();
                }
                let action = evaluate_word_with(&word, convention)?;
                if action.dual_minus_identity() == *target {
                    found.push(CalibrationMatch { convention, reversed });
                }
            }
        }
    }
    Ok(found)
}
