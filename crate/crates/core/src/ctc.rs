//! Connectionist Temporal Classification: log-domain forward–backward loss,
//! its gradient with respect to logits, greedy best-path decoding, and an
//! exhaustive-alignment oracle for cross-checking the recursion.
//!
//! Convention: the blank symbol is always the last class index `K - 1`.

use crate::{Alphabet, Error, Result};
use ndarray::{Array2, ArrayView2};

/// Maximum T accepted by the exhaustive oracle (K^T paths).
pub const BRUTE_FORCE_MAX_T: usize = 8;

/// log(exp(a) + exp(b)) without leaving the log domain.
#[inline]
fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

fn log_softmax_rows(logits: &ArrayView2<f64>) -> Array2<f64> {
    let mut out = logits.to_owned();
    for mut row in out.rows_mut() {
        let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let log_sum = row.iter().map(|&v| (v - max).exp()).sum::<f64>().ln() + max;
        row.mapv_inplace(|v| v - log_sum);
    }
    out
}

/// The blank-extended label lattice with both DP tables.
///
/// `alpha[s, t]` is the log-probability of emitting frames `0..=t` and being
/// at extended position `s`; `beta[s, t]` covers frames `t..T` ending the
/// sequence properly. Both include the emission at `t`, so the two
/// likelihood computations must agree.
#[derive(Debug, Clone)]
pub struct CtcLattice {
    pub extended_labels: Vec<usize>,
    pub alpha: Array2<f64>,
    pub beta: Array2<f64>,
    pub log_likelihood: f64,
}

impl CtcLattice {
    /// Likelihood recomputed from the beta side; agreement with
    /// `log_likelihood` within 1e-9 is an invariant.
    pub fn log_likelihood_beta(&self) -> f64 {
        let mut ll = self.beta[(0, 0)];
        if self.extended_labels.len() > 1 {
            ll = log_add(ll, self.beta[(1, 0)]);
        }
        ll
    }
}

/// Result of a CTC loss evaluation.
///
/// Infeasible targets (T too short for the label sequence) are flagged
/// rather than raised: the loss is +infinity and the gradient all zeros, so
/// a training loop can skip the sample.
#[derive(Debug, Clone)]
pub struct CtcOutput {
    pub nll: f64,
    pub grad: Array2<f64>,
    pub feasible: bool,
}

fn extended_labels(target: &[usize], blank: usize) -> Vec<usize> {
    let mut ext = Vec::with_capacity(2 * target.len() + 1);
    ext.push(blank);
    for &l in target {
        ext.push(l);
        ext.push(blank);
    }
    ext
}

/// Minimum number of frames needed to emit `target`: one per label plus a
/// separating blank between equal neighbours.
pub fn min_frames(target: &[usize]) -> usize {
    let repeats = target.windows(2).filter(|w| w[0] == w[1]).count();
    target.len() + repeats
}

fn check_inputs(logits: &ArrayView2<f64>, target: &[usize]) -> Result<(usize, usize)> {
    let (t_len, k) = logits.dim();
    if t_len == 0 {
        return Err(Error::InvalidInput("ctc: T must be >= 1".into()));
    }
    if k < 2 {
        return Err(Error::InvalidInput("ctc: need at least 2 classes".into()));
    }
    if let Some(&bad) = target.iter().find(|&&l| l >= k - 1) {
        return Err(Error::InvalidInput(format!(
            "ctc: label {bad} out of range (blank is {})",
            k - 1
        )));
    }
    Ok((t_len, k))
}

/// Build the full lattice for a feasible instance.
pub fn ctc_lattice(logits: &ArrayView2<f64>, target: &[usize]) -> Result<CtcLattice> {
    let (t_len, k) = check_inputs(logits, target)?;
    if min_frames(target) > t_len {
        return Err(Error::InvalidInput(format!(
            "ctc: target needs {} frames, got {t_len}",
            min_frames(target)
        )));
    }
    let logp = log_softmax_rows(logits);
    let blank = k - 1;
    let ext = extended_labels(target, blank);
    let s_len = ext.len();
    let neg = f64::NEG_INFINITY;

    // transition s-2 -> s is allowed when s is a real label differing from
    // the label two slots back
    let skip_ok: Vec<bool> = (0..s_len)
        .map(|s| s >= 2 && ext[s] != blank && ext[s] != ext[s - 2])
        .collect();
    // reachability window: enough steps must remain to finish the lattice
    let s_lo = |t: usize| s_len.saturating_sub(2 * (t_len - t));
    let s_hi = |t: usize| (2 * t + 1).min(s_len - 1);

    let mut alpha = Array2::from_elem((s_len, t_len), neg);
    alpha[(0, 0)] = logp[(0, ext[0])];
    if s_len > 1 {
        alpha[(1, 0)] = logp[(0, ext[1])];
    }
    for t in 1..t_len {
        for s in s_lo(t)..=s_hi(t) {
            let mut acc = alpha[(s, t - 1)];
            if s >= 1 {
                acc = log_add(acc, alpha[(s - 1, t - 1)]);
            }
            if skip_ok[s] {
                acc = log_add(acc, alpha[(s - 2, t - 1)]);
            }
            alpha[(s, t)] = acc + logp[(t, ext[s])];
        }
    }
    let mut log_likelihood = alpha[(s_len - 1, t_len - 1)];
    if s_len > 1 {
        log_likelihood = log_add(log_likelihood, alpha[(s_len - 2, t_len - 1)]);
    }

    let mut beta = Array2::from_elem((s_len, t_len), neg);
    beta[(s_len - 1, t_len - 1)] = logp[(t_len - 1, ext[s_len - 1])];
    if s_len > 1 {
        beta[(s_len - 2, t_len - 1)] = logp[(t_len - 1, ext[s_len - 2])];
    }
    for t in (0..t_len - 1).rev() {
        for s in s_lo(t)..=s_hi(t) {
            let mut acc = beta[(s, t + 1)];
            if s + 1 < s_len {
                acc = log_add(acc, beta[(s + 1, t + 1)]);
            }
            if s + 2 < s_len && skip_ok[s + 2] {
                acc = log_add(acc, beta[(s + 2, t + 1)]);
            }
            beta[(s, t)] = acc + logp[(t, ext[s])];
        }
    }

    Ok(CtcLattice {
        extended_labels: ext,
        alpha,
        beta,
        log_likelihood,
    })
}

/// Negative log likelihood of `target` under per-frame softmax(logits), with
/// the exact gradient with respect to the logits.
pub fn ctc_loss(logits: &ArrayView2<f64>, target: &[usize]) -> Result<CtcOutput> {
    let (t_len, k) = check_inputs(logits, target)?;
    if min_frames(target) > t_len {
        return Ok(CtcOutput {
            nll: f64::INFINITY,
            grad: Array2::zeros((t_len, k)),
            feasible: false,
        });
    }
    let lattice = ctc_lattice(logits, target)?;
    let logp = log_softmax_rows(logits);
    let ll = lattice.log_likelihood;
    if !ll.is_finite() {
        return Err(Error::Numeric(format!("ctc likelihood not finite: {ll}")));
    }

    // grad wrt logits: softmax minus the per-class lattice posterior
    let s_len = lattice.extended_labels.len();
    let mut grad = logp.mapv(f64::exp);
    let mut class_post = vec![f64::NEG_INFINITY; k];
    for t in 0..t_len {
        class_post.iter_mut().for_each(|v| *v = f64::NEG_INFINITY);
        for s in 0..s_len {
            let a = lattice.alpha[(s, t)];
            if a == f64::NEG_INFINITY {
                continue;
            }
            let b = lattice.beta[(s, t)];
            if b == f64::NEG_INFINITY {
                continue;
            }
            let lab = lattice.extended_labels[s];
            // alpha and beta both include the emission at t; divide one out
            let through = a + b - logp[(t, lab)];
            class_post[lab] = log_add(class_post[lab], through);
        }
        for c in 0..k {
            grad[(t, c)] -= (class_post[c] - ll).exp();
        }
    }

    Ok(CtcOutput {
        nll: -ll,
        grad,
        feasible: true,
    })
}

/// Collapse a frame-label path: merge consecutive repeats, then drop blanks.
fn collapse(path: &[usize], blank: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut prev = usize::MAX;
    for &l in path {
        if l != prev && l != blank {
            out.push(l);
        }
        prev = l;
    }
    out
}

/// Exhaustive-alignment oracle: sum the probability of every frame-label
/// path whose collapse equals `target`. `frame_probs` rows must already be
/// probability distributions.
pub fn ctc_brute_force(frame_probs: &ArrayView2<f64>, target: &[usize]) -> Result<f64> {
    let (t_len, k) = frame_probs.dim();
    if t_len > BRUTE_FORCE_MAX_T {
        return Err(Error::InvalidInput(format!(
            "brute force limited to T <= {BRUTE_FORCE_MAX_T}, got {t_len}"
        )));
    }
    let blank = k - 1;
    let mut path = vec![0usize; t_len];
    let mut total = 0.0;
    loop {
        let prob: f64 = path
            .iter()
            .enumerate()
            .map(|(t, &l)| frame_probs[(t, l)])
            .product();
        if collapse(&path, blank) == target {
            total += prob;
        }
        // odometer increment over K^T paths
        let mut pos = 0;
        loop {
            if pos == t_len {
                return Ok(total);
            }
            path[pos] += 1;
            if path[pos] < k {
                break;
            }
            path[pos] = 0;
            pos += 1;
        }
    }
}

/// Per-frame argmax indices (ties resolved toward the lowest class), with
/// repeats collapsed and blanks removed.
pub fn greedy_decode_labels(logits: &ArrayView2<f64>) -> Vec<usize> {
    let (t_len, k) = logits.dim();
    let blank = k - 1;
    let mut path = Vec::with_capacity(t_len);
    for row in logits.rows() {
        let mut best = 0;
        for c in 1..k {
            if row[c] > row[best] {
                best = c;
            }
        }
        path.push(best);
    }
    collapse(&path, blank)
}

/// Greedy best-path decode straight to a string over the given alphabet.
pub fn greedy_decode(logits: &ArrayView2<f64>, alphabet: &Alphabet) -> Result<String> {
    alphabet.decode(&greedy_decode_labels(logits))
}
