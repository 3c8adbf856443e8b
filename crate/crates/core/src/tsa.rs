//! Nonlinear time-series analysis: average mutual information and delay
//! selection, delay embedding, correlation-integral scaling, the
//! Rosenstein maximal-Lyapunov estimator, and periodograms.

use crate::{fft, Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
// no_std builds take f64 math from the Float trait; under `cargo test`
// std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

/// Uniformly sampled real signal.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    samples: Vec<f64>,
    dt: f64,
    label: String,
}

impl TimeSeries {
    pub fn new(samples: Vec<f64>, dt: f64, label: &str) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Domain("time series needs >= 2 samples".into()));
        }
        if dt <= 0.0 {
            return Err(Error::Domain("time step must be positive".into()));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("time series contains non-finite samples".into()));
        }
        Ok(TimeSeries {
            samples,
            dt,
            label: label.into(),
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Delay-embedding parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingConfig {
    /// Delay in samples.
    pub delay: usize,
    /// Embedding dimension.
    pub dim: usize,
    /// Temporal exclusion window for neighbor searches.
    pub theiler: usize,
}

fn ami_from_bin_indices(idx: &[usize], t_max: usize, bins: usize) -> Vec<f64> {
    let n = idx.len();
    let mut out = Vec::with_capacity(t_max);
    let mut joint = vec![0.0f64; bins * bins];
    for t in 1..=t_max {
        let pairs = n - t;
        joint.iter_mut().for_each(|c| *c = 0.0);
        let mut px = vec![0.0f64; bins];
        let mut py = vec![0.0f64; bins];
        for i in 0..pairs {
            let (a, b) = (idx[i], idx[i + t]);
            joint[a * bins + b] += 1.0;
            px[a] += 1.0;
            py[b] += 1.0;
        }
        let norm = 1.0 / pairs as f64;
        let mut info = 0.0;
        for a in 0..bins {
            for b in 0..bins {
                let pab = joint[a * bins + b] * norm;
                if pab > 0.0 {
                    info += pab * (pab / (px[a] * norm * py[b] * norm)).log2();
                }
            }
        }
        out.push(info.max(0.0));
    }
    out
}

fn check_ami_args(n: usize, t_max: usize, bins: usize) -> Result<()> {
    if t_max == 0 || t_max >= n / 2 {
        return Err(Error::Domain(format!(
            "t_max must lie in 1..{} (length {})",
            n / 2,
            n
        )));
    }
    if bins < 2 {
        return Err(Error::Domain("need at least 2 histogram bins".into()));
    }
    Ok(())
}

/// Average mutual information `I(T)` (bits) for `T = 1..=t_max`, from
/// equal-width histograms with `bins` cells per axis.
pub fn average_mutual_information(
    series: &TimeSeries,
    t_max: usize,
    bins: usize,
) -> Result<Vec<f64>> {
    let n = series.len();
    check_ami_args(n, t_max, bins)?;
    let s = series.samples();
    let lo = s.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi <= lo {
        // constant series: the joint factorizes, I = 0
        return Ok(vec![0.0; t_max]);
    }
    let width = (hi - lo) / bins as f64;
    let idx: Vec<usize> = s
        .iter()
        .map(|&v| (((v - lo) / width) as usize).min(bins - 1))
        .collect();
    Ok(ami_from_bin_indices(&idx, t_max, bins))
}

/// Average mutual information with rank-space (equal-occupancy) bins.
///
/// Invariant under strictly monotone rescaling of the signal, and much
/// smoother than equal-width binning for noiseless deterministic series;
/// the delay-selection pipeline uses it.
pub fn average_mutual_information_ranked(
    series: &TimeSeries,
    t_max: usize,
    bins: usize,
) -> Result<Vec<f64>> {
    let n = series.len();
    check_ami_args(n, t_max, bins)?;
    let s = series.samples();
    let lo = s.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi <= lo {
        return Ok(vec![0.0; t_max]);
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by(|&a, &b| {
        s[a as usize]
            .partial_cmp(&s[b as usize])
            .expect("sample is NaN")
    });
    let mut idx = vec![0usize; n];
    for (rank, &i) in order.iter().enumerate() {
        idx[i as usize] = rank * bins / n;
    }
    Ok(ami_from_bin_indices(&idx, t_max, bins))
}

/// Embedding delay from the first minimum of the rank-binned AMI.
pub fn delay_from_series(series: &TimeSeries, t_max: usize) -> Result<DelaySelection> {
    let ami = average_mutual_information_ranked(series, t_max, 64)?;
    Ok(select_delay(&ami))
}

/// Delay selected from an AMI curve (`ami[i]` is `I(i+1)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DelaySelection {
    /// Delay in samples.
    pub delay: usize,
    /// Set when no interior minimum exists and the argmin was used.
    pub fallback: bool,
}

/// First interior minimum of the AMI curve; falls back to the argmin
/// (flagged) when the curve has no interior minimum.
pub fn select_delay(ami: &[f64]) -> DelaySelection {
    assert!(ami.len() >= 3, "need at least 3 AMI values");
    for i in 1..ami.len() - 1 {
        if ami[i - 1] > ami[i] && ami[i] < ami[i + 1] {
            return DelaySelection {
                delay: i + 1,
                fallback: false,
            };
        }
    }
    let argmin = ami
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).expect("AMI is NaN"))
        .map(|(i, _)| i + 1)
        .unwrap();
    DelaySelection {
        delay: argmin,
        fallback: true,
    }
}

/// Time-delay vectors `v_k[j] = s[k + j tau]`, `k = 0..n - (d-1) tau`.
pub fn embed(series: &TimeSeries, cfg: &EmbeddingConfig) -> Result<Vec<Vec<f64>>> {
    let n = series.len();
    let span = (cfg.dim - 1) * cfg.delay;
    if cfg.dim == 0 || cfg.delay == 0 || span >= n {
        return Err(Error::Domain(format!(
            "embedding (d={}, tau={}) does not fit a series of length {n}",
            cfg.dim, cfg.delay
        )));
    }
    let s = series.samples();
    Ok((0..n - span)
        .map(|k| (0..cfg.dim).map(|j| s[k + j * cfg.delay]).collect())
        .collect())
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Longest contiguous window (>= `min_len` points) whose local slopes stay
/// within 15% of their window median; returns the index range.
fn longest_linear_window(xs: &[f64], ys: &[f64], min_len: usize) -> Option<(usize, usize)> {
    let n = xs.len();
    if n < min_len {
        return None;
    }
    let mut best: Option<(usize, usize)> = None;
    for lo in 0..=n - min_len {
        for hi in (lo + min_len - 1..n).rev() {
            if let Some((blo, bhi)) = best {
                if hi - lo <= bhi - blo {
                    break;
                }
            }
            let mut slopes: Vec<f64> = (lo..hi)
                .map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]))
                .collect();
            slopes.sort_by(|a, b| a.partial_cmp(b).expect("slope is NaN"));
            let median = slopes[slopes.len() / 2];
            let ok = slopes
                .iter()
                .all(|s| (s - median).abs() <= 0.15 * median.abs());
            if ok {
                best = Some((lo, hi));
                break;
            }
        }
    }
    best
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Correlation-integral scaling exponent over a log-spaced radius grid.
#[derive(Debug, Clone)]
pub struct CorrelationScaling {
    /// Scaling exponent `zeta` (the correlation dimension estimate).
    pub zeta: f64,
    /// Radii bracketing the fitted linear region.
    pub fit_range: (f64, f64),
    /// `(ln r, ln C(r))` samples with `C > 0`.
    pub curve: Vec<(f64, f64)>,
}

/// Correlation integral `C(r)` over the cloud, excluding pairs closer than
/// `theiler` in time, and the exponent of its scaling region.
pub fn correlation_exponent(
    cloud: &[Vec<f64>],
    r_grid: &[f64],
    theiler: usize,
) -> Result<CorrelationScaling> {
    if cloud.len() < 500 {
        return Err(Error::Domain(format!(
            "correlation integral needs >= 500 points, got {}",
            cloud.len()
        )));
    }
    if r_grid.len() < 5 {
        return Err(Error::Domain("need >= 5 radii".into()));
    }
    // limit the pair count: a subsampled reference set against the full
    // cloud keeps the estimate unbiased and the cost linear in the cloud
    let n = cloud.len();
    let max_refs = 2000usize.min(n);
    let stride = n.div_ceil(max_refs);
    let r2: Vec<f64> = r_grid.iter().map(|r| r * r).collect();
    let mut counts = vec![0u64; r_grid.len()];
    let mut total_pairs = 0u64;
    for i in (0..n).step_by(stride) {
        for j in 0..n {
            if j.abs_diff(i) <= theiler {
                continue;
            }
            total_pairs += 1;
            let d2 = dist2(&cloud[i], &cloud[j]);
            // count into the smallest radius containing the pair
            let pos = r2.partition_point(|&rr| rr < d2);
            if pos < counts.len() {
                counts[pos] += 1;
            }
        }
    }
    if total_pairs == 0 {
        return Err(Error::DegenerateData("no valid pairs outside the Theiler window".into()));
    }
    // cumulative counts -> C(r)
    let mut acc = 0u64;
    let mut curve = Vec::new();
    for (k, &c) in counts.iter().enumerate() {
        acc += c;
        if acc > 0 {
            curve.push((r_grid[k].ln(), (acc as f64 / total_pairs as f64).ln()));
        }
    }
    // drop the saturated plateau (C = 1) beyond the first full bin
    while curve.len() > 2 && curve[curve.len() - 2].1 == 0.0 {
        curve.pop();
    }
    let xs: Vec<f64> = curve.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = curve.iter().map(|p| p.1).collect();
    let (lo, hi) = longest_linear_window(&xs, &ys, 5).ok_or_else(|| {
        Error::InsufficientScaling(format!(
            "no linear window of >= 5 radii in ln C(ln r) over {} usable radii",
            curve.len()
        ))
    })?;
    let zeta = least_squares_slope(&xs[lo..=hi], &ys[lo..=hi]);
    Ok(CorrelationScaling {
        zeta,
        fit_range: (xs[lo].exp(), xs[hi].exp()),
        curve,
    })
}

/// Log-spaced radius grid between `r_lo` and `r_hi`.
pub fn log_radius_grid(r_lo: f64, r_hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (r_lo.ln(), r_hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Radius grid spanning the cloud: from a small fraction of its extent up
/// to its diameter.
pub fn default_radius_grid(cloud: &[Vec<f64>]) -> Vec<f64> {
    let dim = cloud[0].len();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for p in cloud {
        for (j, &v) in p.iter().enumerate() {
            lo[j] = lo[j].min(v);
            hi[j] = hi[j].max(v);
        }
    }
    let diameter: f64 = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| (b - a) * (b - a))
        .sum::<f64>()
        .sqrt()
        .max(1e-12);
    log_radius_grid(diameter * 1e-3, diameter * 1.05, 40)
}

/// Result of the embedding-dimension scan.
#[derive(Debug, Clone)]
pub struct EmbeddingDimension {
    pub dim: usize,
    /// `zeta(d)` for `d = 1..` up to the last dimension probed.
    pub zeta_profile: Vec<f64>,
}

/// Smallest `d` with `|zeta(d+1) - zeta(d)| < 0.1 zeta(d)`, scanning the
/// correlation exponent of the delay-embedded series.
pub fn embedding_dimension(
    series: &TimeSeries,
    delay: usize,
    d_max: usize,
) -> Result<EmbeddingDimension> {
    if d_max < 2 {
        return Err(Error::Domain("d_max must be >= 2".into()));
    }
    let mut profile = Vec::new();
    for d in 1..=d_max {
        let cfg = EmbeddingConfig {
            delay,
            dim: d,
            theiler: delay,
        };
        let cloud = embed(series, &cfg)?;
        let grid = default_radius_grid(&cloud);
        let scaling = correlation_exponent(&cloud, &grid, delay)?;
        profile.push(scaling.zeta);
        if d >= 2 {
            let prev = profile[d - 2];
            if (profile[d - 1] - prev).abs() < 0.1 * prev.abs() {
                return Ok(EmbeddingDimension {
                    dim: d - 1,
                    zeta_profile: profile,
                });
            }
        }
    }
    Err(Error::NoConvergence(format!(
        "correlation exponent did not saturate up to d = {d_max}: {profile:?}"
    )))
}

// ---------------------------------------------------------------------
// exact nearest-neighbor search on a k-d tree

struct KdTree<'a> {
    cloud: &'a [Vec<f64>],
    // implicit balanced tree over index permutation
    order: Vec<u32>,
    dim: usize,
}

impl<'a> KdTree<'a> {
    fn build(cloud: &'a [Vec<f64>]) -> Self {
        let mut order: Vec<u32> = (0..cloud.len() as u32).collect();
        let dim = cloud[0].len();
        let len = order.len();
        let mut tree = KdTree { cloud, order: Vec::new(), dim };
        Self::partition(cloud, &mut order[..], 0, dim);
        tree.order = order;
        let _ = len;
        tree
    }

    fn partition(cloud: &[Vec<f64>], idx: &mut [u32], depth: usize, dim: usize) {
        if idx.len() <= 1 {
            return;
        }
        let axis = depth % dim;
        let mid = idx.len() / 2;
        idx.select_nth_unstable_by(mid, |&a, &b| {
            cloud[a as usize][axis]
                .partial_cmp(&cloud[b as usize][axis])
                .expect("coordinate is NaN")
        });
        let (lo, rest) = idx.split_at_mut(mid);
        let (_, hi) = rest.split_first_mut().unwrap();
        Self::partition(cloud, lo, depth + 1, dim);
        Self::partition(cloud, hi, depth + 1, dim);
    }

    /// Nearest neighbor of `query` (by index into the cloud) among points
    /// whose index differs from `exclude_center` by more than `theiler`.
    fn nearest_excluding(&self, query: usize, theiler: usize) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        self.search(
            &self.order,
            0,
            &self.cloud[query],
            query,
            theiler,
            &mut best,
        );
        best
    }

    fn search(
        &self,
        idx: &[u32],
        depth: usize,
        query: &[f64],
        center: usize,
        theiler: usize,
        best: &mut Option<(usize, f64)>,
    ) {
        if idx.is_empty() {
            return;
        }
        let mid = idx.len() / 2;
        let node = idx[mid] as usize;
        if node.abs_diff(center) > theiler {
            let d2 = dist2(query, &self.cloud[node]);
            if best.map(|(_, b)| d2 < b).unwrap_or(true) {
                *best = Some((node, d2));
            }
        }
        let axis = depth % self.dim;
        let delta = query[axis] - self.cloud[node][axis];
        let (near, far) = if delta <= 0.0 {
            (&idx[..mid], &idx[mid + 1..])
        } else {
            (&idx[mid + 1..], &idx[..mid])
        };
        self.search(near, depth + 1, query, center, theiler, best);
        if best.map(|(_, b)| delta * delta < b).unwrap_or(true) {
            self.search(far, depth + 1, query, center, theiler, best);
        }
    }
}

/// Rosenstein divergence curve and maximal Lyapunov exponent.
#[derive(Debug, Clone)]
pub struct LyapunovEstimate {
    /// Slope of the linear region divided by the sample step.
    pub lambda_max: f64,
    /// `<ln d_j(k)>` for `k = 0..=k_max`.
    pub curve: Vec<f64>,
    /// Index range of the fitted region.
    pub fit_range: (usize, usize),
}

/// Maximal Lyapunov exponent by the Rosenstein nearest-neighbor
/// divergence method.
pub fn lyapunov_rosenstein(
    series: &TimeSeries,
    cfg: &EmbeddingConfig,
    k_max: usize,
) -> Result<LyapunovEstimate> {
    let cloud = embed(series, cfg)?;
    if cloud.len() < 1000 {
        return Err(Error::Domain(format!(
            "Rosenstein estimator needs >= 1000 embedded points, got {}",
            cloud.len()
        )));
    }
    if cloud.len() <= k_max + 1 {
        return Err(Error::Domain("k_max exceeds the usable trajectory".into()));
    }
    let usable = cloud.len() - k_max;
    let tree = KdTree::build(&cloud[..usable]);
    // pair each point with its nearest neighbor outside the Theiler window
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(usable);
    for j in 0..usable {
        if let Some((nb, _)) = tree.nearest_excluding(j, cfg.theiler) {
            pairs.push((j, nb));
        }
    }
    if pairs.is_empty() {
        return Err(Error::DegenerateData(
            "no neighbor pairs outside the Theiler window".into(),
        ));
    }
    let mut curve = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut acc = 0.0;
        let mut count = 0usize;
        for &(j, nb) in &pairs {
            let d2 = dist2(&cloud[j + k], &cloud[nb + k]);
            if d2 > 0.0 {
                acc += 0.5 * d2.ln();
                count += 1;
            }
        }
        if count == 0 {
            return Err(Error::DegenerateData(format!(
                "all neighbor distances vanish at step {k}"
            )));
        }
        curve.push(acc / count as f64);
    }
    let xs: Vec<f64> = (0..=k_max).map(|k| k as f64).collect();
    let (lo, hi) = match longest_linear_window(&xs, &curve, 5) {
        Some(win) => win,
        // flat or noisy curves (regular motion) have no strict linear
        // region; fit the first half instead
        None => (0, k_max / 2),
    };
    let slope = least_squares_slope(&xs[lo..=hi], &curve[lo..=hi]);
    Ok(LyapunovEstimate {
        lambda_max: slope / series.dt(),
        curve,
        fit_range: (lo, hi),
    })
}

/// One-sided periodogram after mean removal and Hann windowing:
/// frequencies `k / (n dt)` and powers `|FFT|^2 / n`.
pub fn power_spectrum(series: &TimeSeries) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = series.len();
    if n < 16 {
        return Err(Error::Domain("power spectrum needs >= 16 samples".into()));
    }
    let s = series.samples();
    let mean = s.iter().sum::<f64>() / n as f64;
    let windowed: Vec<f64> = s
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let w = 0.5
                * (1.0
                    - (2.0 * core::f64::consts::PI * i as f64 / (n as f64 - 1.0)).cos());
            (v - mean) * w
        })
        .collect();
    let spectrum = fft::fft_real_padded(&windowed);
    let padded = spectrum.len();
    let half = padded / 2;
    let freqs: Vec<f64> = (0..half)
        .map(|k| k as f64 / (padded as f64 * series.dt()))
        .collect();
    let power: Vec<f64> = spectrum[..half]
        .iter()
        .map(|v| v.norm_sqr() / padded as f64)
        .collect();
    Ok((freqs, power))
}
