//! Discrete information-theoretic primitives.
//!
//! All quantities are in nats. Probabilities below [`ZERO_PROB`] are treated as
//! zero inside logarithms, so `0 · ln 0 = 0`.
//!
//! [`channel_capacity`] is a Blahut–Arimoto solver. For deterministic channels
//! its value is `ln(distinct outputs)`, which makes it an independent check on
//! the counting route used by [`crate::empowerment`].

use std::str::FromStr;

use crate::error::{Error, Result};

/// Tolerance on the total mass of a distribution.
pub const SUM_TOLERANCE: f64 = 1e-9;
/// Probabilities below this are treated as zero inside logarithms.
pub const ZERO_PROB: f64 = 1e-15;
/// Default Blahut–Arimoto stopping gap, in nats.
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// A probability vector over a finite alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        validate_mass(&probs, "distribution")?;
        Ok(Distribution { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDistribution("empty alphabet".into()));
        }
        Ok(Distribution {
            probs: vec![1.0 / n as f64; n],
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Number of outcomes with non-negligible mass.
    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|&&p| p > ZERO_PROB).count()
    }
}

fn validate_mass(values: &[f64], what: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidDistribution(format!("{what} is empty")));
    }
    if let Some(bad) = values.iter().find(|p| !p.is_finite() || **p < 0.0) {
        return Err(Error::InvalidDistribution(format!(
            "{what} has invalid entry {bad}"
        )));
    }
    let total: f64 = values.iter().sum();
    if (total - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::InvalidDistribution(format!(
            "{what} sums to {total}, expected 1"
        )));
    }
    Ok(())
}

#[inline]
fn plogp(p: f64) -> f64 {
    if p > ZERO_PROB {
        p * p.ln()
    } else {
        0.0
    }
}

/// Shannon entropy `H(X) = -Σ p ln p`.
pub fn entropy(p: &Distribution) -> f64 {
    -p.probs.iter().copied().map(plogp).sum::<f64>()
}

/// Convenience wrapper validating a raw probability slice first.
pub fn entropy_of(probs: &[f64]) -> Result<f64> {
    Ok(entropy(&Distribution::new(probs.to_vec())?))
}

fn validate_joint(joint: &[Vec<f64>]) -> Result<(usize, usize)> {
    let rows = joint.len();
    let cols = joint.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidDistribution("joint matrix is empty".into()));
    }
    if joint.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidDistribution("joint matrix is ragged".into()));
    }
    let flat: Vec<f64> = joint.iter().flatten().copied().collect();
    validate_mass(&flat, "joint distribution")?;
    Ok((rows, cols))
}

fn column_marginal(joint: &[Vec<f64>], cols: usize) -> Vec<f64> {
    let mut py = vec![0.0; cols];
    for row in joint {
        for (acc, v) in py.iter_mut().zip(row) {
            *acc += v;
        }
    }
    py
}

/// `H(X|Y)` for a joint matrix with rows indexed by `x` and columns by `y`.
pub fn conditional_entropy(joint: &[Vec<f64>]) -> Result<f64> {
    let (_, cols) = validate_joint(joint)?;
    let py = column_marginal(joint, cols);
    let mut h = 0.0;
    for row in joint {
        for (y, &pxy) in row.iter().enumerate() {
            if pxy > ZERO_PROB && py[y] > ZERO_PROB {
                h -= pxy * (pxy / py[y]).ln();
            }
        }
    }
    Ok(h.max(0.0))
}

/// `I(X;Y) = H(X) - H(X|Y)`.
pub fn mutual_information(joint: &[Vec<f64>]) -> Result<f64> {
    validate_joint(joint)?;
    let px: Vec<f64> = joint.iter().map(|r| r.iter().sum()).collect();
    let hx = -px.iter().copied().map(plogp).sum::<f64>();
    Ok((hx - conditional_entropy(joint)?).max(0.0))
}

/// Row-stochastic matrix `p(y|x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    rows: Vec<Vec<f64>>,
    outputs: usize,
}

impl Channel {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let outputs = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || outputs == 0 {
            return Err(Error::InvalidChannel(
                "channel needs |X| ≥ 1 and |Y| ≥ 1".into(),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != outputs {
                return Err(Error::InvalidChannel(format!(
                    "row {i} has {} columns, expected {outputs}",
                    row.len()
                )));
            }
            validate_mass(row, &format!("row {i}"))
                .map_err(|e| Error::InvalidChannel(e.to_string()))?;
        }
        Ok(Channel { rows, outputs })
    }

    /// Deterministic channel where input `i` always yields output `targets[i]`.
    pub fn deterministic(targets: &[usize], outputs: usize) -> Result<Self> {
        let rows = targets
            .iter()
            .map(|&t| {
                if t >= outputs {
                    return Err(Error::InvalidChannel(format!(
                        "target {t} out of range for {outputs} outputs"
                    )));
                }
                let mut row = vec![0.0; outputs];
                row[t] = 1.0;
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Channel::new(rows)
    }

    pub fn inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

/// Whitespace-separated text: first line `|X| |Y|`, then `|X|` rows of `|Y|` reals.
impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse {
                line: hline + 1,
                msg: format!("bad header: {e}"),
            })?;
        let [nx, ny] = dims[..] else {
            return Err(Error::Parse {
                line: hline + 1,
                msg: "header must be \"|X| |Y|\"".into(),
            });
        };
        let mut rows = Vec::with_capacity(nx);
        for (idx, line) in lines {
            let row: Vec<f64> = line
                .split_whitespace()
                .map(str::parse::<f64>)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse {
                    line: idx + 1,
                    msg: e.to_string(),
                })?;
            if row.len() != ny {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected {ny} values, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != nx {
            return Err(Error::Parse {
                line: s.lines().count(),
                msg: format!("expected {nx} rows, found {}", rows.len()),
            });
        }
        Channel::new(rows)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityResult {
    pub capacity_nats: f64,
    pub achieving_input: Distribution,
    pub iterations: usize,
    pub converged: bool,
    /// Final gap between the upper and lower capacity bounds.
    pub bound_gap: f64,
}

/// Blahut–Arimoto capacity from a uniform start.
///
/// Stops once `max_x D(p(y|x) || q) - I(p)` drops below `tol`. If `max_iter` is
/// exhausted the last lower bound is returned with `converged = false`.
pub fn channel_capacity(ch: &Channel, tol: f64, max_iter: usize) -> Result<CapacityResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidChannel(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let nx = ch.inputs();
    let ny = ch.outputs();
    let mut input = vec![1.0 / nx as f64; nx];
    let mut output = vec![0.0; ny];
    let mut divergence = vec![0.0; nx];
    let mut iterations = 0;

    let (lower, gap) = loop {
        output.iter_mut().for_each(|q| *q = 0.0);
        for (px, row) in input.iter().zip(&ch.rows) {
            for (q, w) in output.iter_mut().zip(row) {
                *q += px * w;
            }
        }
        for (d, row) in divergence.iter_mut().zip(&ch.rows) {
            *d = row
                .iter()
                .zip(&output)
                .filter(|(w, q)| **w > ZERO_PROB && **q > ZERO_PROB)
                .map(|(w, q)| w * (w / q).ln())
                .sum();
        }
        let lower = input
            .iter()
            .zip(&divergence)
            .map(|(p, d)| p * d)
            .sum::<f64>();
        let upper = divergence.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let gap = upper - lower;
        if gap < tol || iterations >= max_iter {
            break (lower, gap);
        }
        iterations += 1;

        // p(x) <- p(x) exp(D_x) / Z, shifted by the max for stability
        let mut z = 0.0;
        for (p, d) in input.iter_mut().zip(&divergence) {
            *p *= (d - upper).exp();
            z += *p;
        }
        input.iter_mut().for_each(|p| *p /= z);
    };

    Ok(CapacityResult {
        capacity_nats: lower.max(0.0),
        achieving_input: Distribution { probs: input },
        iterations,
        converged: gap < tol,
        bound_gap: gap,
    })
}

/// Nats to bits, for display.
pub fn nats_to_bits(nats: f64) -> f64 {
    nats / std::f64::consts::LN_2
}
