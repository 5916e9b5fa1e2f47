//! Symmetric Laurent polynomials on the torus `T^d`.
//!
//! A [`Symbol`] stores `φ∘s(z) = Σ_m α_m z^m` with one coefficient per
//! `Σ_d`-orbit: the value at an [`OrbitRep`] is the common coefficient of
//! every rearrangement of it. Zero coefficients are never stored, so two
//! symbols are equal exactly when their maps are equal.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{orbit_permutations, OrbitRep, MAX_D};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    d: usize,
    coeffs: BTreeMap<OrbitRep, Scalar>,
}

impl Symbol {
    pub fn zero(d: usize) -> Symbol {
        Symbol {
            d,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant function `1`.
    pub fn unit(d: usize) -> Symbol {
        Symbol::monomial(OrbitRep::zero(d), Scalar::from_integer(1))
    }

    /// `c · s_m` where `s_m` is the symmetrization of `z^m`.
    pub fn monomial(m: OrbitRep, c: Scalar) -> Symbol {
        let mut s = Symbol::zero(m.d());
        if !c.is_zero() {
            s.coeffs.insert(m, c);
        }
        s
    }

    /// Builds a symbol from `(rep, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(d: usize, terms: I) -> Result<Symbol>
    where
        I: IntoIterator<Item = (OrbitRep, Scalar)>,
    {
        let mut s = Symbol::zero(d);
        for (m, c) in terms {
            if m.d() != d {
                return Err(Error::Dimension(format!("orbit {m} in dimension {d}")));
            }
            s.add_term(m, &c);
        }
        Ok(s)
    }

    fn add_term(&mut self, m: OrbitRep, c: &Scalar) {
        let slot = self.coeffs.entry(m.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OrbitRep, &Scalar)> {
        self.coeffs.iter()
    }

    /// Coefficient `α_m` of the lattice point `m` (any order of entries).
    pub fn coeff_at(&self, m: &[i64]) -> Option<&Scalar> {
        self.coeffs.get(&OrbitRep::of(m))
    }

    pub fn coeff(&self, m: &OrbitRep) -> Option<&Scalar> {
        self.coeffs.get(m)
    }

    /// Largest orbit height in the support; `0` for the zero symbol.
    pub fn height(&self) -> i64 {
        self.coeffs.keys().map(OrbitRep::height).max().unwrap_or(0)
    }

    /// Smallest last entry over the support (how far below zero it reaches).
    pub fn min_entry(&self) -> i64 {
        self.coeffs
            .keys()
            .map(|m| *m.entries().last().unwrap())
            .min()
            .unwrap_or(0)
    }

    pub fn max_entry(&self) -> i64 {
        self.coeffs.keys().map(|m| m.entries()[0]).max().unwrap_or(0)
    }

    /// All lattice points of the support with their coefficients.
    pub fn lattice_points(&self) -> Vec<(Vec<i64>, Scalar)> {
        let mut out = Vec::new();
        for (m, c) in &self.coeffs {
            for x in orbit_permutations(m) {
                out.push((x, c.clone()));
            }
        }
        out
    }

    /// No negative Fourier coefficients: every support orbit ends in `≥ 0`.
    pub fn is_analytic(&self) -> bool {
        self.coeffs.keys().all(OrbitRep::is_analytic)
    }

    pub fn scale(&self, a: &Scalar) -> Symbol {
        if a.is_zero() {
            return Symbol::zero(self.d);
        }
        Symbol {
            d: self.d,
            coeffs: self.coeffs.iter().map(|(m, c)| (m.clone(), a * c)).collect(),
        }
    }
}

/// The elementary symmetric function `s_i` in `d` variables.
pub fn elementary(d: usize, i: usize) -> Result<Symbol> {
    if !(1..=MAX_D).contains(&d) {
        return Err(Error::Dimension(format!("d = {d}")));
    }
    if !(1..=d).contains(&i) {
        return Err(Error::Domain(format!("elementary index {i} outside 1..={d}")));
    }
    let mut m = vec![0; d];
    for x in m.iter_mut().take(i) {
        *x = 1;
    }
    Ok(Symbol::monomial(OrbitRep::new(m)?, Scalar::from_integer(1)))
}

/// Standard test family in dimension `d`: the unit, every `s_i` and its
/// conjugate, all pairwise products of those `2d` coordinates, and
/// `s_1 + s̄_1`. Duplicates are dropped; the order is fixed.
pub fn battery(d: usize) -> Result<Vec<Symbol>> {
    battery_of_degree(d, 2)
}

/// Like [`battery`], with products of up to `max_degree` coordinates.
pub fn battery_of_degree(d: usize, max_degree: usize) -> Result<Vec<Symbol>> {
    let mut gens = Vec::with_capacity(2 * d);
    for i in 1..=d {
        let s = elementary(d, i)?;
        gens.push(conjugate(&s));
        gens.push(s);
    }
    let mut out = vec![Symbol::unit(d)];
    // products over index multisets a_1 ≤ … ≤ a_k, grouped by degree
    let mut layer: Vec<(usize, Symbol)> = gens.iter().cloned().enumerate().collect();
    for degree in 1..=max_degree {
        out.extend(layer.iter().map(|(_, s)| s.clone()));
        if degree == max_degree {
            break;
        }
        let mut next = Vec::new();
        for (last, s) in &layer {
            for (b, g) in gens.iter().enumerate().skip(*last) {
                next.push((b, multiply(s, g)?));
            }
        }
        layer = next;
    }
    let s1 = elementary(d, 1)?;
    out.push(combine(&Scalar::one(), &s1, &Scalar::one(), &conjugate(&s1))?);
    let mut seen = Vec::new();
    out.retain(|s| {
        if seen.contains(s) {
            false
        } else {
            seen.push(s.clone());
            true
        }
    });
    Ok(out)
}

/// Pointwise complex conjugate on the torus: `α_m ↦ conj(α_{−m})`.
pub fn conjugate(phi: &Symbol) -> Symbol {
    Symbol {
        d: phi.d,
        coeffs: phi
            .coeffs
            .iter()
            .map(|(m, c)| (m.negated(), c.conj()))
            .collect(),
    }
}

/// Exact product of two symbols.
pub fn multiply(phi: &Symbol, psi: &Symbol) -> Result<Symbol> {
    same_d(phi, psi)?;
    let d = phi.d;
    let mut out: BTreeMap<OrbitRep, Scalar> = BTreeMap::new();
    let right: Vec<(Vec<Vec<i64>>, &Scalar)> = psi
        .coeffs
        .iter()
        .map(|(m, c)| (orbit_permutations(m), c))
        .collect();
    let mut sum = vec![0i64; d];
    for (m1, a) in &phi.coeffs {
        for x in orbit_permutations(m1) {
            for (ys, b) in &right {
                let ab = a * *b;
                for y in ys {
                    for k in 0..d {
                        sum[k] = x[k] + y[k];
                    }
                    // the product is symmetric, so reading its coefficient at
                    // the weakly decreasing lattice point of each orbit suffices
                    if sum.windows(2).all(|w| w[0] >= w[1]) {
                        *out
                            .entry(OrbitRep::of(&sum))
                            .or_insert_with(Scalar::zero) += &ab;
                    }
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(Symbol { d, coeffs: out })
}

/// `a·φ + b·ψ`.
pub fn combine(a: &Scalar, phi: &Symbol, b: &Scalar, psi: &Symbol) -> Result<Symbol> {
    same_d(phi, psi)?;
    let mut out: BTreeMap<OrbitRep, Scalar> = BTreeMap::new();
    for (m, c) in &phi.coeffs {
        *out.entry(m.clone()).or_insert_with(Scalar::zero) += a * c;
    }
    for (m, c) in &psi.coeffs {
        *out.entry(m.clone()).or_insert_with(Scalar::zero) += b * c;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(Symbol {
        d: phi.d,
        coeffs: out,
    })
}

fn same_d(a: &Symbol, b: &Symbol) -> Result<()> {
    if a.d != b.d {
        return Err(Error::Dimension(format!(
            "symbols of dimension {} and {}",
            a.d, b.d
        )));
    }
    Ok(())
}

const TORUS_TOL: f64 = 1e-12;

/// Floating-point value of `φ∘s` at a point of the torus.
pub fn evaluate(phi: &Symbol, z: &[Complex64]) -> Result<Complex64> {
    if z.len() != phi.d {
        return Err(Error::Dimension(format!(
            "point of length {} for a symbol in dimension {}",
            z.len(),
            phi.d
        )));
    }
    if let Some(w) = z.iter().find(|w| (w.norm() - 1.0).abs() > TORUS_TOL) {
        return Err(Error::Domain(format!("{w} is not on the unit circle")));
    }
    Ok(eval_on_torus(phi, z))
}

fn eval_on_torus(phi: &Symbol, z: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::zero();
    for (m, c) in &phi.coeffs {
        let c = c.to_complex64();
        for x in orbit_permutations(m) {
            let mut t = c;
            for (zk, &e) in z.iter().zip(&x) {
                // z^{-1} = conj(z) on the circle
                t *= if e >= 0 { zk.powi(e as i32) } else { zk.conj().powi((-e) as i32) };
            }
            acc += t;
        }
    }
    acc
}

/// Lower bound for `‖φ‖_∞`: the maximum of `|φ|` over every uniform grid of
/// `k^d` torus points with `2 ≤ k ≤ grid_size`. Taking all grid sizes up to
/// `grid_size` makes the bound nondecreasing in `grid_size`.
pub fn sup_norm_sampled(phi: &Symbol, grid_size: usize) -> Result<f64> {
    if grid_size < 2 {
        return Err(Error::Domain(format!("grid size {grid_size} < 2")));
    }
    if phi.is_zero() {
        return Ok(0.0);
    }
    let points = phi.lattice_points();
    let d = phi.d;
    let mut best = 0.0f64;
    let mut idx = vec![0usize; d];
    for k in 2..=grid_size {
        let step = TAU / k as f64;
        idx.iter_mut().for_each(|i| *i = 0);
        loop {
            let mut acc = Complex64::zero();
            for (x, c) in &points {
                let phase: f64 = x.iter().zip(&idx).map(|(&e, &j)| e as f64 * j as f64).sum::<f64>()
                    * step;
                acc += c.to_complex64() * Complex64::cis(phase);
            }
            best = best.max(acc.norm());
            // odometer over the k^d grid
            let mut pos = 0;
            while pos < d {
                idx[pos] += 1;
                if idx[pos] < k {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == d {
                break;
            }
        }
    }
    Ok(best)
}

#[derive(Serialize, Deserialize)]
struct SymbolWire {
    d: usize,
    terms: Vec<TermWire>,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    m: Vec<i64>,
    re: String,
    #[serde(default = "zero_string")]
    im: String,
}

fn zero_string() -> String {
    "0".into()
}

impl Symbol {
    /// Parses `{"d": 2, "terms": [{"m": [1,0], "re": "1", "im": "0"}, …]}`.
    pub fn from_json(s: &str) -> Result<Symbol> {
        let w: SymbolWire =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("symbol JSON: {e}")))?;
        if !(1..=MAX_D).contains(&w.d) {
            return Err(Error::Parse(format!("symbol dimension {}", w.d)));
        }
        let mut out = Symbol::zero(w.d);
        for t in w.terms {
            if t.m.len() != w.d {
                return Err(Error::Parse(format!(
                    "term {:?} has length {} in dimension {}",
                    t.m,
                    t.m.len(),
                    w.d
                )));
            }
            let m = OrbitRep::new(t.m.clone())
                .map_err(|_| Error::Parse(format!("term {:?} is not weakly decreasing", t.m)))?;
            if out.coeffs.contains_key(&m) {
                return Err(Error::Parse(format!("duplicate term {m}")));
            }
            let c = Scalar::parse_parts(&t.re, &t.im)?;
            if !c.is_zero() {
                out.coeffs.insert(m, c);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let w = SymbolWire {
            d: self.d,
            terms: self
                .coeffs
                .iter()
                .map(|(m, c)| TermWire {
                    m: m.entries().to_vec(),
                    re: c.re_string(),
                    im: c.im_string(),
                })
                .collect(),
        };
        serde_json::to_string(&w).expect("symbol serialization")
    }
}
