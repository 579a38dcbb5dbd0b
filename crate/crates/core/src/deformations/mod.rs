//! Deformations `μ₀ + μ₁t + … + μₙtⁿ` of an associative multiplication over
//! `𝐤[t]/(t^{n+1})`.

mod gauge;

pub use gauge::{
    gauge_apply, gauge_equivalent, gauge_exp, gauge_log, FormalAutomorphism, GaugeElement,
    GaugeSearch,
};

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hochschild::{
    circ_i, cohomology, gerstenhaber_bracket, hochschild_differential, solve_coboundary,
    AlgebraStructure, Cochain, CohomologyReport,
};
use crate::rational::Rational;

/// A truncated deformation. The terms are not checked for (D_k) on
/// construction; call [`TruncatedDeformation::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDeformation {
    base: AlgebraStructure,
    mu0: Cochain,
    terms: Vec<Cochain>,
}

/// First failure of (D_k): the order and the basis triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeformationFailure {
    pub order: usize,
    pub triple: [usize; 3],
}

impl TruncatedDeformation {
    /// `terms[k-1]` is `μ_k`; each must be an arity-2 cochain on the base.
    pub fn new(base: AlgebraStructure, terms: Vec<Cochain>) -> Result<Self> {
        for t in &terms {
            if t.dim() != base.dim() {
                return Err(Error::DimMismatch {
                    expected: base.dim(),
                    found: t.dim(),
                });
            }
            if t.arity() != 2 {
                return Err(Error::ArityMismatch {
                    expected: 2,
                    found: t.arity(),
                });
            }
        }
        let mu0 = base.multiplication();
        Ok(TruncatedDeformation { base, mu0, terms })
    }

    /// All `μ_k = 0`.
    pub fn trivial(base: AlgebraStructure, order: usize) -> Self {
        let d = base.dim();
        Self::new(base, vec![Cochain::zero(2, d); order]).expect("zero terms have the right shape")
    }

    pub fn base(&self) -> &AlgebraStructure {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    /// `μ_k` for `0 ≤ k ≤ order`.
    pub fn mu(&self, k: usize) -> &Cochain {
        if k == 0 {
            &self.mu0
        } else {
            &self.terms[k - 1]
        }
    }

    /// The same deformation modulo `t^{k+1}`.
    pub fn truncate(&self, k: usize) -> Self {
        let mut d = self.clone();
        d.terms.truncate(k);
        d
    }

    pub fn push_term(&mut self, mu: Cochain) -> Result<()> {
        if mu.dim() != self.base.dim() {
            return Err(Error::DimMismatch {
                expected: self.base.dim(),
                found: mu.dim(),
            });
        }
        if mu.arity() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: mu.arity(),
            });
        }
        self.terms.push(mu);
        Ok(())
    }

    /// `Σ_{i+j=k} μ_i(μ_j(a,b),c) − μ_i(a,μ_j(b,c))` evaluated directly on
    /// basis triples; zero iff (D_k) holds.
    pub fn equation_residual(&self, k: usize) -> Result<Cochain> {
        if k > self.order() {
            return Err(Error::BadOrder {
                requested: k,
                available: self.order(),
            });
        }
        let d = self.base.dim();
        let mut out = Cochain::zero(3, d);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut acc = vec![Rational::zero(); d];
                    for i in 0..=k {
                        let (mi, mj) = (self.mu(i), self.mu(k - i));
                        let left = mi.evaluate(&[mj.value(&[a, b]).to_vec(), unit(d, c)])?;
                        let right = mi.evaluate(&[unit(d, a), mj.value(&[b, c]).to_vec()])?;
                        for ((s, l), r) in acc.iter_mut().zip(left).zip(right) {
                            *s += &(&l - &r);
                        }
                    }
                    for (r, x) in acc.into_iter().enumerate() {
                        out.set(&[a, b, c], r, x);
                    }
                }
            }
        }
        Ok(out)
    }

    /// First order and basis triple where (D_k) fails.
    pub fn validate(&self) -> Result<Option<DeformationFailure>> {
        self.base.require_associative()?;
        for k in 1..=self.order() {
            let res = self.equation_residual(k)?;
            if let Some(failure) = first_nonzero_triple(&res) {
                return Ok(Some(DeformationFailure {
                    order: k,
                    triple: failure,
                }));
            }
        }
        Ok(None)
    }

    pub fn is_valid(&self) -> bool {
        matches!(self.validate(), Ok(None))
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        match self.validate()? {
            Some(DeformationFailure { order, triple }) => {
                Err(Error::InvalidDeformation { order, triple })
            }
            None => Ok(()),
        }
    }
}

fn unit(d: usize, k: usize) -> Vec<Rational> {
    crate::hochschild::unit(d, k)
}

fn first_nonzero_triple(c: &Cochain) -> Option<[usize; 3]> {
    let d = c.dim();
    let idx = c.coefficients().iter().position(|x| !x.is_zero())?;
    let t = idx / d;
    Some([t / (d * d), (t / d) % d, t % d])
}

/// `δμ_k + ½ Σ_{i+j=k} [μ_i, μ_j]`, computed with the differential and the
/// Gerstenhaber bracket. For `k = 0` this is `½[μ₀, μ₀]`.
pub fn maurer_cartan_residual(d: &TruncatedDeformation, k: usize) -> Result<Cochain> {
    if k > d.order() {
        return Err(Error::BadOrder {
            requested: k,
            available: d.order(),
        });
    }
    let dim = d.base.dim();
    let half = Rational::new(1, 2);
    let mut out = if k == 0 {
        Cochain::zero(3, dim)
    } else {
        hochschild_differential(&d.base, d.mu(k))?
    };
    for i in 1..k {
        out.add_scaled(&gerstenhaber_bracket(d.mu(i), d.mu(k - i))?, &half);
    }
    if k == 0 {
        out.add_scaled(&gerstenhaber_bracket(d.mu(0), d.mu(0))?, &half);
    }
    Ok(out)
}

/// `𝔒ₙ` together with its class in `H³` and, when that class vanishes,
/// the canonical `μ_{n+1}` with `δμ_{n+1} = 𝔒ₙ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionClass {
    pub cochain: Cochain,
    pub is_cocycle: bool,
    pub class_coords: Vec<Rational>,
    pub vanishes_in_cohomology: bool,
    pub extension_term: Option<Cochain>,
}

/// `𝔒ₙ(a,b,c) = Σ_{i+j=n+1; i,j>0} μ_i(a,μ_j(b,c)) − μ_i(μ_j(a,b),c)`.
pub fn obstruction_cochain(d: &TruncatedDeformation) -> Cochain {
    let n = d.order();
    let mut out = Cochain::zero(3, d.base.dim());
    for i in 1..=n {
        let j = n + 1 - i;
        if j == 0 || j > n {
            continue;
        }
        let (mi, mj) = (d.mu(i), d.mu(j));
        out.add_scaled(&circ_i(mi, mj, 2).expect("arity 2"), &Rational::one());
        out.add_scaled(&circ_i(mi, mj, 1).expect("arity 2"), &-Rational::one());
    }
    out
}

pub fn obstruction(d: &TruncatedDeformation) -> Result<ObstructionClass> {
    d.require_valid()?;
    obstruction_in(d, &cohomology(&d.base, 3)?)
}

/// [`obstruction`] against a precomputed `H³` of the base.
pub fn obstruction_with(
    d: &TruncatedDeformation,
    h3: &CohomologyReport,
) -> Result<ObstructionClass> {
    if h3.degree != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: h3.degree,
        });
    }
    d.require_valid()?;
    obstruction_in(d, h3)
}

fn obstruction_in(d: &TruncatedDeformation, h3: &CohomologyReport) -> Result<ObstructionClass> {
    let cochain = obstruction_cochain(d);
    let is_cocycle = hochschild_differential(&d.base, &cochain)?.is_zero();
    if !is_cocycle {
        return Ok(ObstructionClass {
            cochain,
            is_cocycle,
            class_coords: Vec::new(),
            vanishes_in_cohomology: false,
            extension_term: None,
        });
    }
    let class_coords = h3.class_coordinates(&cochain)?;
    let vanishes = class_coords.iter().all(Rational::is_zero);
    let extension_term = if vanishes {
        solve_coboundary(&d.base, &cochain)?
    } else {
        None
    };
    debug_assert_eq!(vanishes, extension_term.is_some());
    Ok(ObstructionClass {
        cochain,
        is_cocycle,
        class_coords,
        vanishes_in_cohomology: vanishes,
        extension_term,
    })
}

/// The order-`n+1` deformation with the canonical new term, or `None` when
/// the obstruction class is nonzero.
pub fn extend(d: &TruncatedDeformation) -> Result<Option<TruncatedDeformation>> {
    Ok(append(d, obstruction(d)?))
}

/// [`extend`] against a precomputed `H³` of the base.
pub fn extend_with(
    d: &TruncatedDeformation,
    h3: &CohomologyReport,
) -> Result<Option<TruncatedDeformation>> {
    Ok(append(d, obstruction_with(d, h3)?))
}

fn append(d: &TruncatedDeformation, obs: ObstructionClass) -> Option<TruncatedDeformation> {
    obs.extension_term.map(|mu| {
        let mut e = d.clone();
        e.terms.push(mu);
        e
    })
}

/// Coordinates of `[μ₁]` in `H²(A, A)`.
pub fn classify_infinitesimal(a: &AlgebraStructure, mu1: &Cochain) -> Result<Vec<Rational>> {
    if mu1.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: mu1.arity(),
        });
    }
    cohomology(a, 2)?.class_coordinates(mu1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub betti2: usize,
    pub betti3: usize,
    /// `H² = 0`: every deformation is trivial.
    pub infinitesimally_rigid: bool,
    /// `H³ = 0`: every obstruction vanishes.
    pub unobstructed: bool,
    /// A 2-cocycle that is not a coboundary, when one exists.
    pub witness: Option<Cochain>,
}

pub fn rigidity_report(a: &AlgebraStructure) -> Result<RigidityReport> {
    let h2 = cohomology(a, 2)?;
    let h3 = cohomology(a, 3)?;
    Ok(RigidityReport {
        betti2: h2.betti,
        betti3: h3.betti,
        infinitesimally_rigid: h2.betti == 0,
        unobstructed: h3.betti == 0,
        witness: h2.representatives.first().cloned(),
    })
}

/// `{a,b} = μ₁(a,b) − μ₁(b,a)` and the checks making it a Poisson bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonCheckReport {
    pub bracket: Cochain,
    pub antisymmetry_ok: bool,
    pub antisymmetry_witness: Option<[usize; 2]>,
    pub jacobi_ok: bool,
    pub jacobi_witness: Option<[usize; 3]>,
    pub leibniz_ok: bool,
    pub leibniz_witness: Option<[usize; 3]>,
}

impl PoissonCheckReport {
    pub fn all_ok(&self) -> bool {
        self.antisymmetry_ok && self.jacobi_ok && self.leibniz_ok
    }
}

pub fn poisson_limit(d: &TruncatedDeformation) -> Result<PoissonCheckReport> {
    if let Some(pair) = d.base.commutativity_witness() {
        return Err(Error::BaseNotCommutative { pair });
    }
    if d.order() < 2 {
        return Err(Error::OrderTooLow {
            required: 2,
            found: d.order(),
        });
    }
    let a = &d.base;
    let dim = a.dim();
    let mu1 = d.mu(1);
    let bracket = Cochain::from_fn(2, dim, |x, j| {
        mu1.get(&[x[0], x[1]], j) - mu1.get(&[x[1], x[0]], j)
    });
    let br = |u: &[Rational], v: &[Rational]| {
        bracket.evaluate(&[u.to_vec(), v.to_vec()]).expect("shape")
    };

    let antisymmetry_witness =
        (0..dim)
            .flat_map(|x| (0..dim).map(move |y| [x, y]))
            .find(|&[x, y]| {
                bracket
                    .value(&[x, y])
                    .iter()
                    .zip(bracket.value(&[y, x]))
                    .any(|(p, q)| p != &-q)
            });

    let triples =
        || (0..dim).flat_map(move |x| (0..dim).flat_map(move |y| (0..dim).map(move |z| [x, y, z])));
    let jacobi_witness = triples().find(|&[x, y, z]| {
        let (ex, ey, ez) = (unit(dim, x), unit(dim, y), unit(dim, z));
        let s1 = br(&ex, &br(&ey, &ez));
        let s2 = br(&ey, &br(&ez, &ex));
        let s3 = br(&ez, &br(&ex, &ey));
        s1.iter()
            .zip(&s2)
            .zip(&s3)
            .any(|((p, q), r)| !(&(p + q) + r).is_zero())
    });
    let leibniz_witness = triples().find(|&[x, y, z]| {
        let (ex, ey, ez) = (unit(dim, x), unit(dim, y), unit(dim, z));
        let lhs = br(&ex, &a.multiply(&ey, &ez));
        let r1 = a.multiply(&br(&ex, &ey), &ez);
        let r2 = a.multiply(&ey, &br(&ex, &ez));
        lhs.iter()
            .zip(r1.iter().zip(&r2))
            .any(|(l, (p, q))| l != &(p + q))
    });
    Ok(PoissonCheckReport {
        bracket,
        antisymmetry_ok: antisymmetry_witness.is_none(),
        antisymmetry_witness,
        jacobi_ok: jacobi_witness.is_none(),
        jacobi_witness,
        leibniz_ok: leibniz_witness.is_none(),
        leibniz_witness,
    })
}

#[cfg(test)]
mod tests;
