//! Control-parameter adaptation: fixed, JADE and SHADE.

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Spread of the Cauchy (F) and normal (CR) sampling distributions.
pub const SAMPLING_SCALE: f64 = 0.1;
/// Cauchy redraws allowed before falling back to [`F_FALLBACK`].
pub const MAX_F_RESAMPLES: usize = 100;
pub const F_FALLBACK: f64 = 0.1;

/// Per-trial control parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialParams {
    pub f: f64,
    pub cr: f64,
    /// SHADE memory slot the sample was drawn around.
    pub memory_slot: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AdapterState {
    Fixed {
        f: f64,
        cr: f64,
    },
    Jade {
        mu_f: f64,
        mu_cr: f64,
        /// Learning rate.
        c: f64,
    },
    Shade {
        m_f: Vec<f64>,
        m_cr: Vec<f64>,
        /// Next memory slot to overwrite.
        k: usize,
    },
}

impl AdapterState {
    pub fn fixed(f: f64, cr: f64) -> Result<Self> {
        if !(f > 0.0 && f <= 1.0) {
            return Err(Error::config("parameter", format!("F must lie in (0, 1], got {f}")));
        }
        if !(0.0..=1.0).contains(&cr) {
            return Err(Error::config("parameter", format!("CR must lie in [0, 1], got {cr}")));
        }
        Ok(AdapterState::Fixed { f, cr })
    }

    /// JADE with both means starting at 0.5.
    pub fn jade(c: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::config("parameter", format!("JADE learning rate must lie in (0, 1], got {c}")));
        }
        Ok(AdapterState::Jade {
            mu_f: 0.5,
            mu_cr: 0.5,
            c,
        })
    }

    /// SHADE with `h` memory slots, all initialized to 0.5.
    pub fn shade(h: usize) -> Result<Self> {
        if h == 0 {
            return Err(Error::config("parameter", "SHADE memory size must be positive"));
        }
        Ok(AdapterState::Shade {
            m_f: vec![0.5; h],
            m_cr: vec![0.5; h],
            k: 0,
        })
    }

    pub fn sample<R: RandomSource + ?Sized>(&self, rng: &mut R) -> TrialParams {
        match self {
            AdapterState::Fixed { f, cr } => TrialParams {
                f: *f,
                cr: *cr,
                memory_slot: None,
            },
            AdapterState::Jade { mu_f, mu_cr, .. } => TrialParams {
                f: sample_f(*mu_f, rng),
                cr: sample_cr(*mu_cr, rng),
                memory_slot: None,
            },
            AdapterState::Shade { m_f, m_cr, .. } => {
                let r = rng.index(m_f.len());
                TrialParams {
                    f: sample_f(m_f[r], rng),
                    cr: sample_cr(m_cr[r], rng),
                    memory_slot: Some(r),
                }
            }
        }
    }

    /// Folds one generation's successful parameters into the state.
    ///
    /// `s_f`, `s_cr` and `delta_f` are parallel slices over the strictly
    /// improving trials. An empty success set leaves the state unchanged.
    pub fn update(&mut self, s_f: &[f64], s_cr: &[f64], delta_f: &[f64]) {
        debug_assert!(s_f.len() == s_cr.len() && s_f.len() == delta_f.len());
        if s_f.is_empty() {
            return;
        }
        match self {
            AdapterState::Fixed { .. } => {}
            AdapterState::Jade { mu_f, mu_cr, c } => {
                let lehmer = s_f.iter().map(|f| f * f).sum::<f64>() / s_f.iter().sum::<f64>();
                let mean_cr = s_cr.iter().sum::<f64>() / s_cr.len() as f64;
                *mu_f = ((1.0 - *c) * *mu_f + *c * lehmer).clamp(0.0, 1.0);
                *mu_cr = ((1.0 - *c) * *mu_cr + *c * mean_cr).clamp(0.0, 1.0);
            }
            AdapterState::Shade { m_f, m_cr, k } => {
                let total: f64 = delta_f.iter().sum();
                if !(total > 0.0) {
                    return;
                }
                let (mut num, mut den, mut cr) = (0.0, 0.0, 0.0);
                for ((&f, &c), &d) in s_f.iter().zip(s_cr).zip(delta_f) {
                    let w = d / total;
                    num += w * f * f;
                    den += w * f;
                    cr += w * c;
                }
                m_f[*k] = (num / den).clamp(0.0, 1.0);
                m_cr[*k] = cr.clamp(0.0, 1.0);
                *k = (*k + 1) % m_f.len();
            }
        }
    }

    /// Current (mean F, mean CR): the fixed values, the JADE means, or the
    /// averages of the SHADE memories.
    pub fn means(&self) -> (f64, f64) {
        match self {
            AdapterState::Fixed { f, cr } => (*f, *cr),
            AdapterState::Jade { mu_f, mu_cr, .. } => (*mu_f, *mu_cr),
            AdapterState::Shade { m_f, m_cr, .. } => {
                let h = m_f.len() as f64;
                (m_f.iter().sum::<f64>() / h, m_cr.iter().sum::<f64>() / h)
            }
        }
    }
}

/// Cauchy draw around `mu`, redrawn while non-positive and truncated at 1.
fn sample_f<R: RandomSource + ?Sized>(mu: f64, rng: &mut R) -> f64 {
    for _ in 0..MAX_F_RESAMPLES {
        let f = rng.cauchy(mu, SAMPLING_SCALE);
        if f > 0.0 {
            return f.min(1.0);
        }
    }
    F_FALLBACK
}

fn sample_cr<R: RandomSource + ?Sized>(mu: f64, rng: &mut R) -> f64 {
    rng.normal(mu, SAMPLING_SCALE).clamp(0.0, 1.0)
}
