//! Fibrations of the graph link `K^(2n)` indexed by integer pairs `(m1, m2)`:
//! validity, the gcd weights on edges and vertices, the restricted
//! characteristic polynomial `Δ'(t)` and the resulting `p_2^±` offsets.

mod poly;

pub use poly::{divisors, factorize, totient, IntPoly};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Upper bound on the degree of any intermediate product during expansion.
pub const DEFAULT_DEGREE_LIMIT: u64 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphLinkError {
    #[error("n must be at least 1")]
    BadN,
    #[error("(m1, m2) = (0, 0) is not a fibration class")]
    ZeroClass,
    #[error("not a fibration: 3^i m1 + 3^(2n-i+1) m2 = 0 at i = {index}")]
    InvalidFibration { index: u32 },
    #[error("integer overflow")]
    Overflow,
    #[error("negative multiplicity {multiplicity} of cyclotomic factor Phi_{index}")]
    NotPolynomial { index: u64, multiplicity: i64 },
    #[error("nonzero remainder dividing by t^{divisor_exponent} - 1")]
    NonzeroRemainder { divisor_exponent: u64 },
    #[error("expansion degree {degree} exceeds limit {limit}")]
    DegreeLimit { degree: u64, limit: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphLinkSpec {
    pub n: u32,
    pub m1: i64,
    pub m2: i64,
}

fn pow3(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(3), k as usize)
}

fn to_u64(x: BigInt) -> Result<u64, GraphLinkError> {
    u64::try_from(x).map_err(|_| GraphLinkError::Overflow)
}

impl GraphLinkSpec {
    /// Validated spec; rejects `n = 0`, `(0, 0)` and non-fibration classes.
    pub fn new(n: u32, m1: i64, m2: i64) -> Result<Self, GraphLinkError> {
        if n == 0 {
            return Err(GraphLinkError::BadN);
        }
        if m1 == 0 && m2 == 0 {
            return Err(GraphLinkError::ZeroClass);
        }
        if let Some(index) = failing_index(n, m1, m2) {
            return Err(GraphLinkError::InvalidFibration { index });
        }
        Ok(GraphLinkSpec { n, m1, m2 })
    }

    /// `gcd(|m1|, |m2|)`
    pub fn d(&self) -> u64 {
        self.m1.unsigned_abs().gcd(&self.m2.unsigned_abs())
    }
}

/// First `i` in `1..=2n` with `3^i m1 + 3^(2n-i+1) m2 = 0`.
pub fn failing_index(n: u32, m1: i64, m2: i64) -> Option<u32> {
    (1..=2 * n).find(|&i| (pow3(i) * m1 + pow3(2 * n - i + 1) * m2).is_zero())
}

pub fn is_fibration(n: u32, m1: i64, m2: i64) -> bool {
    n >= 1 && (m1, m2) != (0, 0) && failing_index(n, m1, m2).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdData {
    /// `d_{E_1} .. d_{E_{2n-1}}`
    pub d_e: Vec<u64>,
    /// `d_{V_1} .. d_{V_{2n}}`
    pub d_v: Vec<u64>,
}

pub fn gcd_data(spec: &GraphLinkSpec) -> Result<GcdData, GraphLinkError> {
    let n = spec.n;
    let (m1, m2) = (BigInt::from(spec.m1).abs(), BigInt::from(spec.m2).abs());
    let d_e = (1..2 * n)
        .map(|i| to_u64((pow3(i) * &m1).gcd(&(pow3(2 * n - i) * &m2))))
        .collect::<Result<Vec<_>, _>>()?;
    let last = d_e.len() - 1;
    let mut d_v = Vec::with_capacity(2 * n as usize);
    d_v.push(spec.m1.unsigned_abs().gcd(&d_e[0]));
    for i in 1..d_e.len() {
        d_v.push(d_e[i - 1].gcd(&d_e[i]));
    }
    d_v.push(spec.m2.unsigned_abs().gcd(&d_e[last]));
    Ok(GcdData { d_e, d_v })
}

/// `∏ (t^e - 1)^{m_e}` over a finite signed multiset of exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycloProduct {
    factors: BTreeMap<u64, i64>,
}

impl CycloProduct {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_factor(&mut self, e: u64, multiplicity: i64) {
        let m = self.factors.entry(e).or_insert(0);
        *m += multiplicity;
        if *m == 0 {
            self.factors.remove(&e);
        }
    }

    /// Exponent to net multiplicity, zero entries omitted.
    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    /// Multiplicity of each cyclotomic `Φ_j`: the sum of `m_e` over `e` divisible by `j`.
    pub fn cyclotomic_multiplicities(&self) -> BTreeMap<u64, i64> {
        let mut out = BTreeMap::new();
        for (&e, &m) in &self.factors {
            for j in divisors(e) {
                *out.entry(j).or_insert(0) += m;
            }
        }
        out.retain(|_, m| *m != 0);
        out
    }

    pub fn is_polynomial(&self) -> bool {
        self.cyclotomic_multiplicities().values().all(|&m| m >= 0)
    }

    fn check_polynomial(&self) -> Result<(), GraphLinkError> {
        match self.cyclotomic_multiplicities().into_iter().find(|&(_, m)| m < 0) {
            Some((index, multiplicity)) => Err(GraphLinkError::NotPolynomial { index, multiplicity }),
            None => Ok(()),
        }
    }

    /// `Σ e m_e`
    pub fn degree(&self) -> Result<u64, GraphLinkError> {
        self.check_polynomial()?;
        let total = self.factors.iter().try_fold(0i128, |acc, (&e, &m)| {
            acc.checked_add(i128::from(e).checked_mul(i128::from(m))?)
        });
        total.and_then(|t| u64::try_from(t).ok()).ok_or(GraphLinkError::Overflow)
    }

    /// Exact expansion: multiply out the numerator, then divide with zero
    /// remainder required.
    pub fn expand_with_limit(&self, limit: u64) -> Result<IntPoly, GraphLinkError> {
        self.check_polynomial()?;
        let numerator: u64 = self
            .factors
            .iter()
            .filter(|(_, &m)| m > 0)
            .try_fold(0u64, |acc, (&e, &m)| acc.checked_add(e.checked_mul(m as u64)?))
            .ok_or(GraphLinkError::Overflow)?;
        if numerator > limit {
            return Err(GraphLinkError::DegreeLimit { degree: numerator, limit });
        }
        let mut p = IntPoly::one();
        for (&e, &m) in self.factors.iter().filter(|(_, &m)| m > 0) {
            for _ in 0..m {
                p = p.mul_binomial(e as usize)?;
            }
        }
        for (&e, &m) in self.factors.iter().filter(|(_, &m)| m < 0) {
            for _ in 0..-m {
                p = p.div_binomial(e as usize)?;
            }
        }
        Ok(p)
    }

    pub fn expand(&self) -> Result<IntPoly, GraphLinkError> {
        self.expand_with_limit(DEFAULT_DEGREE_LIMIT)
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |sign: i64| -> Vec<String> {
            self.factors
                .iter()
                .filter(|(_, &m)| m.signum() == sign)
                .map(|(e, m)| {
                    let base = if *e == 1 { "(t - 1)".to_string() } else { format!("(t^{e} - 1)") };
                    match m.abs() {
                        1 => base,
                        k => format!("{base}^{k}"),
                    }
                })
                .collect()
        };
        let (num, den) = (render(1), render(-1));
        let num = if num.is_empty() { "1".to_string() } else { num.join("") };
        if den.is_empty() {
            f.write_str(&num)
        } else {
            write!(f, "{num} / {}", den.join(""))
        }
    }
}

/// `Δ'(t) = (t^d - 1) ∏ (t^{d_E} - 1) / ∏ (t^{d_V} - 1)`
pub fn delta_prime(spec: &GraphLinkSpec) -> Result<CycloProduct, GraphLinkError> {
    let g = gcd_data(spec)?;
    let mut c = CycloProduct::new();
    c.add_factor(spec.d(), 1);
    for &e in &g.d_e {
        c.add_factor(e, 1);
    }
    for &v in &g.d_v {
        c.add_factor(v, -1);
    }
    c.check_polynomial()?;
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanSize2Data {
    pub degree: u64,
    /// Cyclotomic index `j` to multiplicity of `Φ_j` in `Δ'`.
    pub root_multiplicities: BTreeMap<u64, u64>,
}

pub fn jordan_size2_data(spec: &GraphLinkSpec) -> Result<JordanSize2Data, GraphLinkError> {
    let c = delta_prime(spec)?;
    Ok(JordanSize2Data {
        degree: c.degree()?,
        root_multiplicities: c.cyclotomic_multiplicities().into_iter().map(|(j, m)| (j, m as u64)).collect(),
    })
}

/// Classification of coprime classes on `K^(4)` by the power of 3 they carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremCase {
    K0,
    K1,
    K2,
    K3OrMore,
}

impl TheoremCase {
    pub fn from_k(k: u32) -> Self {
        match k {
            0 => TheoremCase::K0,
            1 => TheoremCase::K1,
            2 => TheoremCase::K2,
            _ => TheoremCase::K3OrMore,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TheoremCase::K0 => "k=0",
            TheoremCase::K1 => "k=1",
            TheoremCase::K2 => "k=2",
            TheoremCase::K3OrMore => "k>=3",
        }
    }

    /// `p_2^+ - b_2` claimed for the case.
    pub fn expected_plus_offset(self) -> i64 {
        match self {
            TheoremCase::K0 => 9,
            TheoremCase::K1 => 7,
            TheoremCase::K2 => 19,
            TheoremCase::K3OrMore => 1,
        }
    }
}

impl fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn three_adic_valuation(mut m: u64) -> u32 {
    let mut k = 0;
    while m != 0 && m.is_multiple_of(3) {
        m /= 3;
        k += 1;
    }
    k
}

/// The case label, defined only for `n = 2` and coprime `(m1, m2)`.
pub fn theorem_case(spec: &GraphLinkSpec) -> Option<TheoremCase> {
    if spec.n != 2 || spec.d() != 1 {
        return None;
    }
    // coprime, so at most one of the two carries a factor of 3
    let k = three_adic_valuation(spec.m1.unsigned_abs()) + three_adic_valuation(spec.m2.unsigned_abs());
    Some(TheoremCase::from_k(k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P2Offsets {
    /// `p_2^+ - b_2 = 1 + deg Δ'`
    pub plus: i64,
    /// `p_2^- - b_2 = deg Δ'`
    pub minus: i64,
    pub case: Option<TheoremCase>,
}

pub fn p2_offsets(spec: &GraphLinkSpec) -> Result<P2Offsets, GraphLinkError> {
    let deg = i64::try_from(delta_prime(spec)?.degree()?).map_err(|_| GraphLinkError::Overflow)?;
    Ok(P2Offsets { plus: 1 + deg, minus: deg, case: theorem_case(spec) })
}
