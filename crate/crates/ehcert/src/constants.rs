//! The constants calculator: every named constant of the proofs, with its
//! defining formula, computed in exact rational arithmetic, plus override
//! slots for desk-scale runs.
//!
//! Derivation order (each step may be preempted by an override):
//!   eta   <- min(2^-99, (16 s t^2)^-6, (8s)^-24, 2^-96t), then halved until
//!            the finger-selection inequality
//!            eta*s*(t+2*eta^-1/64) + (2st(t+2*eta^-1/64)+t)*eta^1/6 < 1/2
//!            holds (checked with exact integer-root upper bounds);
//!   d     <- minimal integer  > 2h^2 with (y^2/16)^(h^2) >= y^d for all
//!            y <= eta;
//!   rho   <- max(h^2, 1), paired with the default zeta = eta so that
//!            zeta >= eta^rho;
//!   delta <- 1/(64(d+rho)t);
//!   alpha <- 1/128, beta <- 2d+rho+1, gamma <- 1/12;
//!   alpha' <- alpha/(5 log2 d1)  (d1 = the rainbow-step constant, default 8),
//!   beta'  <- alpha+beta,  delta' <- alpha'/(2 beta');
//!   c     <- min(delta, delta', 1/(4(rho+1))).

use crate::error::{Error, Result};
use crate::numeric::{ceil_inv_root, log2_exact, pow_i, rat, rat_int, Rat};
use num::{BigInt, One, Signed};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Formula,
    Override,
}

#[derive(Clone, Debug)]
pub struct ConstEntry {
    pub value: Rat,
    pub provenance: Provenance,
}

/// Structural parameters of the excluded Swiss Army graph.
#[derive(Clone, Copy, Debug)]
pub struct HParams {
    pub s: usize,
    pub t: usize,
    pub forest_n: usize,
}

impl HParams {
    /// |F^s_t|.
    pub fn pattern_size(&self) -> usize {
        crate::swiss::swiss_vertex_count(self.forest_n, self.s, self.t)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ConstantSheet {
    entries: BTreeMap<String, ConstEntry>,
}

impl ConstantSheet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&ConstEntry> {
        self.entries.get(name)
    }

    pub fn value(&self, name: &str) -> Option<&Rat> {
        self.entries.get(name).map(|e| &e.value)
    }

    pub fn override_value(&self, name: &str) -> Option<&Rat> {
        match self.entries.get(name) {
            Some(e) if e.provenance == Provenance::Override => Some(&e.value),
            _ => None,
        }
    }

    pub fn set_override(&mut self, name: &str, value: Rat) {
        self.entries.insert(
            name.to_string(),
            ConstEntry {
                value,
                provenance: Provenance::Override,
            },
        );
    }

    fn set_formula(&mut self, name: &str, value: Rat) {
        // overrides win over formulas
        if self.override_value(name).is_none() {
            self.entries.insert(
                name.to_string(),
                ConstEntry {
                    value,
                    provenance: Provenance::Formula,
                },
            );
        }
    }

    pub fn require(&self, name: &str) -> Result<&Rat> {
        self.value(name)
            .ok_or_else(|| Error::Precondition(format!("constant sheet is missing '{name}'")))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, &ConstEntry)> {
        self.entries.iter()
    }

    /// Integer value of a slot, for slots holding counts.
    pub fn usize_value(&self, name: &str) -> Option<usize> {
        use num::ToPrimitive;
        let v = self.value(name)?;
        if v.denom().is_one() {
            v.numer().to_usize()
        } else {
            None
        }
    }
}

/// Largest integer `r >= 1` with `r^root <= x`, for `x >= 1`.
fn floor_root(x: &Rat, root: u32) -> BigInt {
    let mut lo = BigInt::one();
    let mut hi = BigInt::from(2u8);
    while &Rat::from_integer(hi.clone()).pow(root as i32) <= x {
        hi *= 2;
    }
    // invariant: lo^root <= x < hi^root
    while &lo + 1u8 < hi {
        let mid: BigInt = (&lo + &hi) / 2u8;
        if &Rat::from_integer(mid.clone()).pow(root as i32) <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// The finger-selection inequality from the handset construction, checked
/// with exact upper bounds: `eta^-1/64` is replaced by its integer ceiling
/// and `eta^1/6` by `1/floor((1/eta)^(1/6))`.
fn eta_condition_holds(eta: &Rat, s: usize, t: usize) -> bool {
    let a = rat_int(ceil_inv_root(eta, 64) as u64);
    let inv = eta.recip();
    let r = floor_root(&inv, 6);
    if r.is_one() {
        return false;
    }
    let b = Rat::new(BigInt::one(), r);
    let s_r = rat_int(s as u64);
    let t_r = rat_int(t as u64);
    let reach = &t_r + rat_int(2) * &a;
    let lhs = eta * &s_r * &reach + (rat_int(2) * &s_r * &t_r * &reach + &t_r) * &b;
    lhs < rat(1, 2)
}

/// Computes every derived constant by their defining formulas; entries already
/// present in `overrides` keep their overridden values and are recorded as
/// such.
pub fn constants_sheet(params: &HParams, overrides: &BTreeMap<String, Rat>) -> Result<ConstantSheet> {
    if params.s < 1 || params.t < 1 {
        return Err(Error::Precondition("constants_sheet: need s, t >= 1".into()));
    }
    let mut sheet = ConstantSheet::empty();
    for (k, v) in overrides {
        sheet.set_override(k, v.clone());
    }
    let s = params.s as u64;
    let t = params.t as u64;
    sheet.set_formula("s", rat_int(s));
    sheet.set_formula("t", rat_int(t));
    sheet.set_formula("forest_n", rat_int(params.forest_n as u64));
    sheet.set_formula("h", rat_int(params.pattern_size() as u64));
    let h = sheet
        .usize_value("h")
        .ok_or_else(|| Error::Precondition("h must be a positive integer".into()))?;
    let h2 = (h * h) as i64;

    // eta
    let eta = if let Some(v) = sheet.override_value("eta") {
        v.clone()
    } else {
        let half = rat(1, 2);
        let mut eta = pow_i(&half, 99)
            .min(pow_i(&rat_int(16 * s * t * t), -6))
            .min(pow_i(&rat_int(8 * s), -24))
            .min(pow_i(&half, 96 * t as i64));
        while !eta_condition_holds(&eta, params.s, params.t) {
            eta /= rat_int(2);
        }
        eta
    };
    sheet.set_formula("eta", eta.clone());

    // d: minimal integer > 2h^2 with eta^(d - 2h^2) <= 16^(-h^2)
    let d = if let Some(v) = sheet.override_value("d") {
        v.clone()
    } else {
        let cap = pow_i(&rat(1, 16), h2);
        let mut e: i64 = 1;
        while pow_i(&eta, e) > cap {
            e += 1;
            if e > 1 << 20 {
                return Err(Error::Precondition(
                    "constants_sheet: no d found; eta too close to 1".into(),
                ));
            }
        }
        rat_int((2 * h2 + e) as u64)
    };
    sheet.set_formula("d", d.clone());

    // rho and zeta
    let rho = if let Some(v) = sheet.override_value("rho") {
        v.clone()
    } else {
        rat_int((h2 as u64).max(1))
    };
    sheet.set_formula("rho", rho.clone());
    sheet.set_formula("zeta", eta.clone());

    // delta = 1/(64(d+rho)t)
    let delta = (rat_int(64) * (&d + &rho) * rat_int(t)).recip();
    sheet.set_formula("delta", delta.clone());

    // alpha, beta, gamma
    let alpha = rat(1, 128);
    sheet.set_formula("alpha", alpha.clone());
    let beta = rat_int(2) * &d + &rho + Rat::one();
    sheet.set_formula("beta", beta.clone());
    sheet.set_formula("gamma", rat(1, 12));

    // d1: the rainbow-step constant (existential in its source); default 8
    let d1 = if let Some(v) = sheet.override_value("d1") {
        v.clone()
    } else {
        rat_int(8)
    };
    sheet.set_formula("d1", d1.clone());

    // alpha' = alpha / (5 log2 d1); exact when d1 is a power of two
    let alpha_p = if let Some(v) = sheet.override_value("alpha_prime") {
        v.clone()
    } else {
        use num::ToPrimitive;
        let log = if d1.denom().is_one() {
            match d1.numer().to_u64().and_then(log2_exact) {
                Some(l) => rat_int(l as u64),
                None => {
                    return Err(Error::Precondition(
                        "constants_sheet: d1 must be a power of two for an exact alpha'; override alpha_prime otherwise".into(),
                    ))
                }
            }
        } else {
            return Err(Error::Precondition(
                "constants_sheet: d1 must be an integer".into(),
            ));
        };
        if !log.is_positive() {
            return Err(Error::Precondition("constants_sheet: d1 must be >= 2".into()));
        }
        &alpha / (rat_int(5) * log)
    };
    sheet.set_formula("alpha_prime", alpha_p.clone());
    let beta_p = &alpha + &beta;
    sheet.set_formula("beta_prime", beta_p.clone());

    // delta': any positive value strictly below alpha'/beta'
    let delta_p = if let Some(v) = sheet.override_value("delta_prime") {
        v.clone()
    } else {
        &alpha_p / (rat_int(2) * &beta_p)
    };
    sheet.set_formula("delta_prime", delta_p.clone());

    // c <= delta, c <= delta', 4(rho+1)c <= 1
    let c = if let Some(v) = sheet.override_value("c") {
        v.clone()
    } else {
        delta
            .clone()
            .min(delta_p)
            .min((rat_int(4) * (&rho + Rat::one())).recip())
    };
    sheet.set_formula("c", c);

    Ok(sheet)
}

/// Runtime-dependent targets: formulas of the current sparsity level `y`,
/// each preempted by its override slot.
impl ConstantSheet {
    /// Inner dichotomy tolerance for the sparse-dense loop: `y^2/8`.
    pub fn sd_eps(&self, y: &Rat) -> Rat {
        self.override_value("eps")
            .cloned()
            .unwrap_or_else(|| y * y / rat_int(8))
    }

    /// Dense-pair sequence length target `ceil(y^-1/4)`.
    pub fn sd_length_target(&self, y: &Rat) -> usize {
        self.usize_value_override("k")
            .unwrap_or_else(|| ceil_inv_root(y, 4))
    }

    /// Half-block size coefficient: `(y^2/16)^(h^2)` of |G|; the full trim
    /// size is twice this. Override slot: `pair_coeff`.
    pub fn sd_pair_coeff(&self, y: &Rat, h: usize) -> Rat {
        self.override_value("pair_coeff").cloned().unwrap_or_else(|| {
            let h2 = (h * h) as i64;
            pow_i(&(y * y / rat_int(16)), h2)
        })
    }

    /// Sparse-subset size threshold coefficient `y^(h^2)` of |G|.
    /// Override slot: `sparse_coeff`.
    pub fn sd_sparse_coeff(&self, y: &Rat, h: usize) -> Rat {
        self.override_value("sparse_coeff")
            .cloned()
            .unwrap_or_else(|| pow_i(y, (h * h) as i64))
    }

    /// Number of blocks the handset construction keeps: `ceil(y^-1/16)`.
    pub fn hs_block_target(&self, y: &Rat) -> usize {
        self.usize_value_override("k_hands")
            .unwrap_or_else(|| ceil_inv_root(y, 16))
    }

    /// Blockade length target `n = ceil(y^-1/64)`.
    pub fn hs_length_target(&self, y: &Rat) -> usize {
        self.usize_value_override("n")
            .unwrap_or_else(|| ceil_inv_root(y, 64))
    }

    /// Stable-set target for the auxiliary graph:
    /// `m = ceil((y^2/16)^(-c h^2) * y^(-c rho) * 2^c)`. The exponents are
    /// tiny multiples of `c`, so this is evaluated in floating point and
    /// ceiled; an override pins it exactly.
    pub fn hs_stable_target(&self, y: &Rat, h: usize) -> Result<usize> {
        use num::ToPrimitive;
        if let Some(m) = self.usize_value_override("m") {
            return Ok(m);
        }
        let c = self.require("c")?.to_f64().unwrap_or(0.0);
        let rho = self.require("rho")?.to_f64().unwrap_or(1.0);
        let yf = y.to_f64().unwrap_or(0.5);
        let h2 = (h * h) as f64;
        let base = (yf * yf / 16.0).powf(-c * h2);
        let v = base * yf.powf(-c * rho) * 2f64.powf(c);
        Ok(v.ceil() as usize)
    }

    fn usize_value_override(&self, name: &str) -> Option<usize> {
        use num::ToPrimitive;
        let v = self.override_value(name)?;
        if v.denom().is_one() {
            v.numer().to_usize()
        } else {
            None
        }
    }
}
