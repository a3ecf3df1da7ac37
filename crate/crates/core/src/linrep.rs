//! Construction and verification of linear representations.
//!
//! For `f` on `{0, .., n-1}` with adjacency matrix `A`, let
//! `M(x) = adj(xI - A)`, `m(x) = det(xI - A)` and `v = (1, .., n)`. Row `i`
//! of `M(x) v` is a polynomial `p_i`. Because `(xI - A) M = m I`, every
//! integer `x` gives `p_{f(i)}(x) = x p_i(x) - m(x) (i + 1)`, so reducing
//! mod `m(x)` turns `f` into multiplication by `x`. Choosing `x` large
//! enough makes `0 < p_0(x) < .. < p_{n-1}(x) < m(x)`, which makes the
//! embedding injective.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::funcgraph::FiniteFunction;
use crate::poly::IntPoly;
use crate::polymat::{adjugate, char_matrix, determinant, row_combine, PolyMatrix};

/// How the evaluation point (or the whole representation) was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `x` is the coefficient-bound threshold.
    BoundDerived,
    /// Smallest `x >= 2` whose evaluated chain is strictly increasing below `m`.
    Tight,
    /// `x` was given by the caller.
    Explicit,
    /// `(m, a, j)` came from outside the construction, e.g. the search oracle.
    UserSupplied,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::BoundDerived => "bound-derived",
            Mode::Tight => "tight",
            Mode::Explicit => "explicit",
            Mode::UserSupplied => "user-supplied",
        }
    }

    /// Whether `j[i] = p_i(x)` for the stored `x`, so the exact identity applies.
    pub fn is_constructed(self) -> bool {
        !matches!(self, Mode::UserSupplied)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Requested choice of evaluation point for [`construct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XChoice {
    BoundDerived,
    Tight,
    Explicit(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowPolynomials {
    /// `p[i] = sum_k adj[i][k] * (k + 1)`.
    pub p: Vec<IntPoly>,
    pub char_poly: IntPoly,
    pub adjugate: PolyMatrix,
}

impl RowPolynomials {
    pub fn n(&self) -> usize {
        self.p.len()
    }

    /// Evaluates the chain at `x`, returning `(m, j)`.
    pub fn evaluate(&self, x: &BigInt) -> (BigInt, Vec<BigInt>) {
        let m = self.char_poly.eval_at(x);
        let j = self.p.iter().map(|p| p.eval_at(x)).collect();
        (m, j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRepresentation {
    pub n: usize,
    /// Evaluation point; `None` for user-supplied and degenerate representations.
    pub x: Option<BigInt>,
    pub m: BigInt,
    pub a: BigInt,
    pub j: Vec<BigInt>,
    pub mode: Mode,
}

impl LinearRepresentation {
    pub fn user_supplied(m: BigInt, a: BigInt, j: Vec<BigInt>) -> Self {
        Self {
            n: j.len(),
            x: None,
            m,
            a,
            j,
            mode: Mode::UserSupplied,
        }
    }

    /// The representation of the empty function: `m = 1`, `a = 0`, no values.
    pub fn degenerate(mode: Mode) -> Self {
        Self {
            n: 0,
            x: None,
            m: BigInt::one(),
            a: BigInt::zero(),
            j: Vec::new(),
            mode,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.n == 0
    }
}

/// Per-index verification record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexRecord {
    pub i: usize,
    pub image: usize,
    pub j_i: BigInt,
    pub j_image: BigInt,
    /// `a * j[i] mod m`.
    pub a_j_mod_m: BigInt,
    pub congruent: bool,
    /// `x * j[i] - m * (i + 1) - j[f(i)]`, when `x` is known.
    pub residual: Option<BigInt>,
}

/// First check that failed, in the order they are evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    OutOfRange { index: usize },
    NotInjective { first: usize, second: usize },
    NotOrdered { violation: String },
    Congruence { index: usize },
    Identity { index: usize },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::OutOfRange { index } => write!(f, "j[{index}] is outside [0, m)"),
            Failure::NotInjective { first, second } => {
                write!(f, "injectivity fails: j[{first}] = j[{second}]")
            }
            Failure::NotOrdered { violation } => write!(f, "ordering fails: {violation}"),
            Failure::Congruence { index } => {
                write!(f, "congruence fails at i = {index}: j[f(i)] != a * j[i] (mod m)")
            }
            Failure::Identity { index } => {
                write!(f, "exact identity fails at i = {index}: j[f(i)] != x * j[i] - m * (i + 1)")
            }
        }
    }
}

impl Failure {
    pub fn index(&self) -> Option<usize> {
        match self {
            Failure::OutOfRange { index }
            | Failure::Congruence { index }
            | Failure::Identity { index } => Some(*index),
            Failure::NotInjective { second, .. } => Some(*second),
            Failure::NotOrdered { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub records: Vec<IndexRecord>,
    pub in_range: bool,
    pub injective: bool,
    /// `0 < j[0] < .. < j[n-1] < m`.
    pub ordered: bool,
    pub congruent: bool,
    /// `None` when the exact identity is not checked (user-supplied mode).
    pub identity: Option<bool>,
    /// Ordering is required only for constructed representations.
    pub ordering_required: bool,
    pub failure: Option<Failure>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Computes `p_0, .., p_{n-1}` and the characteristic polynomial of `f`.
pub fn row_polynomials(f: &FiniteFunction) -> Result<RowPolynomials> {
    let n = f.n();
    if n == 0 {
        return Err(Error::Degenerate("row polynomials need n >= 1".into()));
    }
    let cm = char_matrix(&f.func_matrix());
    let char_poly = determinant(&cm);
    let adj = adjugate(&cm);
    let weights: Vec<BigInt> = (1..=n).map(BigInt::from).collect();
    let p = row_combine(&adj, &weights)?;

    if char_poly.degree() != n || !char_poly.is_monic() {
        return Err(Error::Invariant(format!(
            "characteristic polynomial {char_poly} is not monic of degree {n}"
        )));
    }
    for (i, pi) in p.iter().enumerate() {
        if pi.degree() != n - 1 || pi.leading_coeff() != BigInt::from(i + 1) {
            return Err(Error::Invariant(format!(
                "row polynomial p_{i} = {pi} should have degree {} and leading coefficient {}",
                n - 1,
                i + 1
            )));
        }
    }
    Ok(RowPolynomials {
        p,
        char_poly,
        adjugate: adj,
    })
}

/// Polynomials that must be positive at `x` for the chain to hold:
/// `p_0`, each `p_{i+1} - p_i`, `m - p_{n-1}`, and `m - x` when `n >= 2`.
fn chain_targets(rp: &RowPolynomials) -> Vec<(String, IntPoly)> {
    let n = rp.n();
    let mut targets = vec![("p_0".to_string(), rp.p[0].clone())];
    for i in 0..n - 1 {
        targets.push((format!("p_{} - p_{i}", i + 1), &rp.p[i + 1] - &rp.p[i]));
    }
    targets.push((format!("m - p_{}", n - 1), &rp.char_poly - &rp.p[n - 1]));
    // for n = 1, m - x = -A[0][0] is never positive; a = x mod m covers it
    if n >= 2 {
        targets.push(("m - x".to_string(), &rp.char_poly - &IntPoly::x()));
    }
    targets
}

/// Smallest `x*` (at least 2) from the coefficient bounds of the chain
/// targets. Every integer `x >= x*` satisfies the strict chain, and `x < m`
/// for `n >= 2`.
pub fn threshold(rp: &RowPolynomials) -> Result<BigInt> {
    if rp.n() == 0 {
        return Err(Error::Degenerate("threshold needs n >= 1".into()));
    }
    let mut best = BigInt::from(2);
    for (name, target) in chain_targets(rp) {
        if !target.leading_coeff().is_positive() {
            return Err(Error::Invariant(format!(
                "{name} = {target} has non-positive leading coefficient"
            )));
        }
        best = best.max(target.coeff_bound());
    }
    Ok(best)
}

/// First violated inequality of `0 < j[0] < .. < j[n-1] < m`, if any.
pub fn chain_violation(j: &[BigInt], m: &BigInt) -> Option<String> {
    let first = j.first()?;
    if !first.is_positive() {
        return Some(format!("0 < y_0 fails (y_0 = {first})"));
    }
    for (i, w) in j.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Some(format!(
                "y_{i} < y_{} fails ({} >= {})",
                i + 1,
                w[0],
                w[1]
            ));
        }
    }
    let last = &j[j.len() - 1];
    if last >= m {
        return Some(format!("y_{} < m fails ({last} >= {m})", j.len() - 1));
    }
    None
}

fn at_point(rp: &RowPolynomials, x: BigInt, mode: Mode) -> LinearRepresentation {
    let (m, j) = rp.evaluate(&x);
    let a = x.mod_floor(&m);
    LinearRepresentation {
        n: rp.n(),
        x: Some(x),
        m,
        a,
        j,
        mode,
    }
}

/// Builds a linear representation of `f` at the requested evaluation point.
pub fn construct(f: &FiniteFunction, choice: &XChoice) -> Result<LinearRepresentation> {
    let mode = match choice {
        XChoice::BoundDerived => Mode::BoundDerived,
        XChoice::Tight => Mode::Tight,
        XChoice::Explicit(_) => Mode::Explicit,
    };
    if let XChoice::Explicit(x) = choice {
        if *x < BigInt::one() {
            return Err(Error::InvalidArgument(format!("x must be at least 1, got {x}")));
        }
    }
    if f.n() == 0 {
        return Ok(LinearRepresentation::degenerate(mode));
    }
    let rp = row_polynomials(f)?;
    construct_from(&rp, choice)
}

/// As [`construct`], reusing precomputed row polynomials.
pub fn construct_from(rp: &RowPolynomials, choice: &XChoice) -> Result<LinearRepresentation> {
    let rep = match choice {
        XChoice::BoundDerived => at_point(rp, threshold(rp)?, Mode::BoundDerived),
        XChoice::Tight => {
            let bound = threshold(rp)?;
            let mut x = BigInt::from(2);
            loop {
                let (m, j) = rp.evaluate(&x);
                if chain_violation(&j, &m).is_none() {
                    break at_point(rp, x, Mode::Tight);
                }
                if x >= bound {
                    return Err(Error::Invariant(format!(
                        "chain fails at the threshold x = {bound}"
                    )));
                }
                x += 1;
            }
        }
        XChoice::Explicit(x) => {
            if *x < BigInt::one() {
                return Err(Error::InvalidArgument(format!("x must be at least 1, got {x}")));
            }
            let (m, j) = rp.evaluate(x);
            if let Some(violation) = chain_violation(&j, &m) {
                return Err(Error::ChainViolation {
                    x: x.to_string(),
                    violation,
                });
            }
            at_point(rp, x.clone(), Mode::Explicit)
        }
    };
    if let Some(violation) = chain_violation(&rep.j, &rep.m) {
        return Err(Error::Invariant(format!("constructed chain is broken: {violation}")));
    }
    Ok(rep)
}

/// Checks a representation against `f`.
///
/// Always checked: every `j[i]` lies in `[0, m)`, `j` is injective, and
/// `j[f(i)] = a j[i] (mod m)`. For constructed representations, also the
/// strict chain `0 < j[0] < .. < j[n-1] < m` and the exact identity
/// `j[f(i)] = x j[i] - m (i + 1)`.
pub fn verify(f: &FiniteFunction, rep: &LinearRepresentation) -> Result<Certificate> {
    let n = f.n();
    if rep.n != n || rep.j.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: rep.j.len(),
        });
    }
    if !rep.m.is_positive() {
        return Err(Error::InvalidArgument(format!("modulus must be positive, got {}", rep.m)));
    }
    let m = &rep.m;
    let a = &rep.a;
    let x = if rep.mode.is_constructed() { rep.x.as_ref() } else { None };

    let mut failure = None;

    let out_of_range = rep.j.iter().position(|v| v.is_negative() || v >= m);
    let in_range = out_of_range.is_none();
    if let Some(index) = out_of_range {
        failure.get_or_insert(Failure::OutOfRange { index });
    }

    let mut duplicate = None;
    'outer: for second in 0..n {
        for first in 0..second {
            if rep.j[first].mod_floor(m) == rep.j[second].mod_floor(m) {
                duplicate = Some((first, second));
                break 'outer;
            }
        }
    }
    let injective = duplicate.is_none();
    if let Some((first, second)) = duplicate {
        failure.get_or_insert(Failure::NotInjective { first, second });
    }

    let ordering_required = rep.mode.is_constructed();
    let violation = chain_violation(&rep.j, m);
    let ordered = violation.is_none();
    if ordering_required {
        if let Some(violation) = violation {
            failure.get_or_insert(Failure::NotOrdered { violation });
        }
    }

    let mut records = Vec::with_capacity(n);
    let mut congruent = true;
    let mut identity = x.map(|_| true);
    let mut identity_failure = None;
    for (i, &image) in f.images().iter().enumerate() {
        let j_i = rep.j[i].clone();
        let j_image = rep.j[image].clone();
        let a_j_mod_m = (a * &j_i).mod_floor(m);
        let ok = a_j_mod_m == j_image.mod_floor(m);
        if !ok && congruent {
            congruent = false;
            failure.get_or_insert(Failure::Congruence { index: i });
        }
        let residual = x.map(|x| x * &j_i - m * BigInt::from(i + 1) - &j_image);
        if let Some(r) = &residual {
            if !r.is_zero() && identity == Some(true) {
                identity = Some(false);
                identity_failure = Some(Failure::Identity { index: i });
            }
        }
        records.push(IndexRecord {
            i,
            image,
            j_i,
            j_image,
            a_j_mod_m,
            congruent: ok,
            residual,
        });
    }
    if let Some(fail) = identity_failure {
        failure.get_or_insert(fail);
    }

    Ok(Certificate {
        records,
        in_range,
        injective,
        ordered,
        congruent,
        identity,
        ordering_required,
        failure,
    })
}
