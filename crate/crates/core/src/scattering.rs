//! Discrete Dyson series for the `g·π²⊗σ` interaction.
//!
//! Time advances in unit steps with `S(k+1) = (I + iH(k)) S(k)` and
//! `S(0) = I`. The same operator is also built from the ordered expansion
//! over decreasing index tuples, and split into powers of `g`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{max_abs, CMatrix, FockSpace};
use crate::lattice::{ball3, LatticeVec4};
use crate::momentum::hyperboloid;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `∇X(n) = X(n+1) − X(n)`.
pub fn difference_op(xs: &[CMatrix]) -> Result<Vec<CMatrix>> {
    if xs.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "difference needs at least two operators, got {}",
            xs.len()
        )));
    }
    Ok(xs.windows(2).map(|w| &w[1] - &w[0]).collect())
}

/// `[I + A(n−1)] ⋯ [I + A(0)] X(0)`.
pub fn product_formula(a: &[CMatrix], x0: &CMatrix, n: usize) -> Result<CMatrix> {
    if n > a.len() {
        return Err(Error::InvalidArgument(format!(
            "need {n} operators, got {}",
            a.len()
        )));
    }
    let mut x = x0.clone();
    for ak in &a[..n] {
        x = &x + ak * &x;
    }
    Ok(x)
}

/// `X(0) + Σ_{j₁>…>j_r} A(j₁)⋯A(j_r) X(0)`, summed over all index subsets.
pub fn expansion_formula(a: &[CMatrix], x0: &CMatrix, n: usize) -> Result<CMatrix> {
    if n > a.len() {
        return Err(Error::InvalidArgument(format!(
            "need {n} operators, got {}",
            a.len()
        )));
    }
    if n >= 31 {
        return Err(Error::InvalidArgument("expansion limited to n < 31".into()));
    }
    let terms: Vec<CMatrix> = (0u32..(1 << n))
        .into_par_iter()
        .map(|mask| {
            let mut t = x0.clone();
            for (j, aj) in a.iter().enumerate().take(n) {
                if mask & (1 << j) != 0 {
                    t = aj * t;
                }
            }
            t
        })
        .collect();
    Ok(terms
        .into_iter()
        .fold(CMatrix::zeros(x0.nrows(), x0.ncols()), |acc, t| acc + t))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InteractionConfig {
    pub g: f64,
    /// Mass squared of the `π` field.
    pub pi_mass_sq: i64,
    /// Mass squared of the `σ` field.
    pub sigma_mass_sq: i64,
    pub energy_cap: i64,
    pub pi_max_n: usize,
    pub sigma_max_n: usize,
    /// Slice `t` of the window is `{(t; x̲) : Q(x̲) ≤ min(t², W²)}`.
    pub window: i64,
    pub horizon: usize,
}

impl Default for InteractionConfig {
    fn default() -> Self {
        Self {
            g: 0.1,
            pi_mass_sq: 1,
            sigma_mass_sq: 1,
            energy_cap: 1,
            pi_max_n: 2,
            sigma_max_n: 1,
            window: 0,
            horizon: 3,
        }
    }
}

impl InteractionConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.g.is_finite() {
            return Err(Error::Config("coupling must be finite".into()));
        }
        if self.pi_max_n < 2 {
            return Err(Error::Config(
                "two-particle states need pi_max_n >= 2".into(),
            ));
        }
        if self.sigma_max_n < 1 {
            return Err(Error::Config("sigma_max_n must be >= 1".into()));
        }
        if self.window < 0 || self.energy_cap < 0 || self.pi_mass_sq < 0 || self.sigma_mass_sq < 0 {
            return Err(Error::Config(
                "window, energy cap and masses must be >= 0".into(),
            ));
        }
        Ok(())
    }

    pub fn window_slice(&self, t: i64) -> Vec<LatticeVec4> {
        ball3((t * t).min(self.window * self.window))
            .into_iter()
            .map(|x| LatticeVec4::new(t, x))
            .collect()
    }
}

/// The two Fock spaces and field operators of a configuration.
#[derive(Debug, Clone)]
pub struct Model {
    pub config: InteractionConfig,
    pub pi_space: FockSpace,
    pub sigma_space: FockSpace,
}

impl Model {
    pub fn new(config: InteractionConfig) -> Result<Self> {
        config.validate()?;
        let hp = hyperboloid(config.pi_mass_sq, config.energy_cap)?;
        let hs = hyperboloid(config.sigma_mass_sq, config.energy_cap)?;
        if hp.is_empty() || hs.is_empty() {
            return Err(Error::Config(
                "a mass shell is empty under the energy cap".into(),
            ));
        }
        Ok(Self {
            pi_space: FockSpace::new(hp, config.pi_max_n),
            sigma_space: FockSpace::new(hs, config.sigma_max_n),
            config,
        })
    }

    pub fn dim(&self) -> usize {
        self.pi_space.dim() * self.sigma_space.dim()
    }

    /// `φ(x) + φ(x)*` in the orthonormal basis of `space`.
    pub fn field(space: &FockSpace, x: LatticeVec4) -> CMatrix {
        let a = space.orthonormal(&space.phi(x));
        &a + a.adjoint()
    }

    /// `Σ_x π²(x) ⊗ σ(x)` over the window slice; `H(t)` is `g` times this.
    pub fn unit_hamiltonian(&self, t: i64) -> CMatrix {
        let pts = self.config.window_slice(t);
        pts.par_iter()
            .map(|&x| {
                let pi = Self::field(&self.pi_space, x);
                let sigma = Self::field(&self.sigma_space, x);
                (&pi * &pi).kronecker(&sigma)
            })
            .reduce(|| CMatrix::zeros(self.dim(), self.dim()), |a, b| a + b)
    }

    pub fn hamiltonian(&self, t: i64) -> CMatrix {
        self.unit_hamiltonian(t) * Complex64::new(self.config.g, 0.0)
    }

    /// Index of `|{p, q}⟩ ⊗ |0⟩`.
    pub fn two_pi_index(&self, p: LatticeVec4, q: LatticeVec4) -> Result<usize> {
        let h = &self.pi_space.hyperboloid;
        let ip = h
            .index_of(p)
            .ok_or_else(|| Error::InvalidArgument(format!("{p} is off the pi shell")))?;
        let iq = h
            .index_of(q)
            .ok_or_else(|| Error::InvalidArgument(format!("{q} is off the pi shell")))?;
        let ms = if ip <= iq { [ip, iq] } else { [iq, ip] };
        let k = self
            .pi_space
            .global_index(&ms)
            .expect("two-particle sector present");
        Ok(k * self.sigma_space.dim())
    }
}

#[derive(Debug, Clone)]
pub struct ScatteringSeries {
    /// `S(0) … S(n)`.
    pub steps: Vec<CMatrix>,
    /// `S(n) = Σ_j g^j · orders[j]`.
    pub orders: Vec<CMatrix>,
    pub hamiltonians: Vec<CMatrix>,
    pub expansion_residual: f64,
    pub order_sum_residual: f64,
}

impl ScatteringSeries {
    pub fn final_operator(&self) -> &CMatrix {
        self.steps.last().unwrap()
    }

    pub fn unitarity_defect(&self) -> f64 {
        let s = self.final_operator();
        max_abs(&(s.adjoint() * s - CMatrix::identity(s.nrows(), s.ncols())))
    }
}

/// Builds `S` by the recursion and the expansion, and checks they agree within `1e-9`.
pub fn scattering_operator(model: &Model) -> Result<ScatteringSeries> {
    let n = model.config.horizon;
    let dim = model.dim();
    let g = Complex64::new(model.config.g, 0.0);
    let units: Vec<CMatrix> = (0..n as i64).map(|t| model.unit_hamiltonian(t)).collect();
    let hams: Vec<CMatrix> = units.iter().map(|h| h * g).collect();
    let id = CMatrix::identity(dim, dim);

    let mut steps = vec![id.clone()];
    for h in &hams {
        let s = steps.last().unwrap();
        steps.push(s + (h * s) * I);
    }

    let mut orders = vec![id.clone()];
    for h in &units {
        let ih = h * I;
        let mut next = orders.clone();
        next.push(CMatrix::zeros(dim, dim));
        for j in 1..next.len() {
            next[j] += &ih * &orders[j - 1];
        }
        orders = next;
    }

    let ia: Vec<CMatrix> = hams.iter().map(|h| h * I).collect();
    let expanded = expansion_formula(&ia, &id, n)?;
    let expansion_residual = max_abs(&(&expanded - steps.last().unwrap()));
    if expansion_residual > 1e-9 {
        return Err(Error::Check(format!(
            "recursion and expansion differ by {expansion_residual:e}"
        )));
    }
    let summed = orders
        .iter()
        .enumerate()
        .fold(CMatrix::zeros(dim, dim), |acc, (j, o)| {
            acc + o * g.powi(j as i32)
        });
    let order_sum_residual = max_abs(&(summed - steps.last().unwrap()));

    Ok(ScatteringSeries {
        steps,
        orders,
        hamiltonians: hams,
        expansion_residual,
        order_sum_residual,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Amplitude {
    pub value: [f64; 2],
    pub probability: f64,
    /// Contribution of `g^j` for `j = 0..=n`.
    pub per_order: Vec<[f64; 2]>,
}

/// `⟨p′q′| S(n) |pq⟩` with the `σ` field in its vacuum.
pub fn amplitude(
    model: &Model,
    series: &ScatteringSeries,
    incoming: (LatticeVec4, LatticeVec4),
    outgoing: (LatticeVec4, LatticeVec4),
) -> Result<Amplitude> {
    let i = model.two_pi_index(incoming.0, incoming.1)?;
    let o = model.two_pi_index(outgoing.0, outgoing.1)?;
    let v = series.final_operator()[(o, i)];
    let g = Complex64::new(model.config.g, 0.0);
    Ok(Amplitude {
        value: [v.re, v.im],
        probability: v.norm_sqr(),
        per_order: series
            .orders
            .iter()
            .enumerate()
            .map(|(j, m)| {
                let c = m[(o, i)] * g.powi(j as i32);
                [c.re, c.im]
            })
            .collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ParityReport {
    pub max_order: usize,
    pub odd_orders_max: f64,
    pub odd_orders_vanish: bool,
    pub order2: [f64; 2],
    /// First order above zero with a contribution above tolerance.
    pub leading_nonzero_order: Option<usize>,
}

/// Odd orders of a two-`π` amplitude vanish because each `K(x)` changes the `σ` number by one.
pub fn order_parity_check(amp: &Amplitude, max_order: usize, tol: f64) -> ParityReport {
    let upto = max_order.min(amp.per_order.len().saturating_sub(1));
    let norm = |c: [f64; 2]| c[0].hypot(c[1]);
    let odd = (1..=upto)
        .filter(|j| j % 2 == 1)
        .map(|j| norm(amp.per_order[j]))
        .fold(0.0, f64::max);
    ParityReport {
        max_order: upto,
        odd_orders_max: odd,
        odd_orders_vanish: odd < tol,
        order2: amp.per_order.get(2).copied().unwrap_or([0.0, 0.0]),
        leading_nonzero_order: (1..=upto).find(|&j| norm(amp.per_order[j]) >= tol),
    }
}

pub fn hermiticity_residual(h: &CMatrix) -> f64 {
    max_abs(&(h - h.adjoint()))
}
