//! Matrix filters, filter banks, perfect reconstruction, sum rules and
//! matching filters.

use crate::error::{Result, WaveletError};
use crate::linalg::{Mat, Tolerances, Vect};
use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

type CMat = DMatrix<Complex<f64>>;
type CRow = DMatrix<Complex<f64>>;

/// Finitely supported sequence of real `rows x cols` matrices indexed over an
/// integer window `[lo, lo + taps.len())`.
///
/// The window is kept minimal: leading and trailing all-zero taps are trimmed
/// on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFilter {
    rows: usize,
    cols: usize,
    lo: i32,
    taps: Vec<Mat>,
}

impl MatrixFilter {
    pub fn new(lo: i32, taps: Vec<Mat>) -> Result<Self> {
        if taps.is_empty() {
            return Err(WaveletError::InvalidInput("filter needs at least one tap".into()));
        }
        let rows = taps[0].nrows();
        let cols = taps[0].ncols();
        for t in &taps {
            if t.nrows() != rows || t.ncols() != cols {
                return Err(WaveletError::Dimension("filter taps differ in shape".into()));
            }
            crate::linalg::check_finite(t)?;
        }
        let mut f = MatrixFilter { rows, cols, lo, taps };
        f.trim();
        Ok(f)
    }

    /// Scalar filter from a coefficient slice.
    pub fn scalar(lo: i32, coeffs: &[f64]) -> Result<Self> {
        MatrixFilter::new(
            lo,
            coeffs.iter().map(|&c| Mat::from_element(1, 1, c)).collect(),
        )
    }

    fn trim(&mut self) {
        let is_zero = |m: &Mat| m.amax() == 0.0;
        while self.taps.len() > 1 && is_zero(self.taps.last().unwrap()) {
            self.taps.pop();
        }
        while self.taps.len() > 1 && is_zero(&self.taps[0]) {
            self.taps.remove(0);
            self.lo += 1;
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Support window `[lo, hi]` (inclusive).
    pub fn support(&self) -> (i32, i32) {
        (self.lo, self.lo + self.taps.len() as i32 - 1)
    }

    /// Tap at index `k`, zero outside the window.
    pub fn tap(&self, k: i32) -> Mat {
        let idx = k - self.lo;
        if idx < 0 || idx as usize >= self.taps.len() {
            Mat::zeros(self.rows, self.cols)
        } else {
            self.taps[idx as usize].clone()
        }
    }

    pub fn taps(&self) -> impl Iterator<Item = (i32, &Mat)> {
        self.taps.iter().enumerate().map(|(i, m)| (self.lo + i as i32, m))
    }

    pub fn max_abs(&self) -> f64 {
        self.taps.iter().map(|m| m.amax()).fold(0.0, f64::max)
    }

    /// Reverses the filter: `flip(k) = tap(-k)`.
    pub fn flipped(&self) -> MatrixFilter {
        let (_, hi) = self.support();
        let taps = self.taps.iter().rev().cloned().collect();
        MatrixFilter {
            rows: self.rows,
            cols: self.cols,
            lo: -hi,
            taps,
        }
    }

    /// Symbol value `sum_k tap(k) e^{-i k xi}`.
    pub fn symbol(&self, xi: f64) -> CMat {
        let mut acc = CMat::zeros(self.rows, self.cols);
        for (k, m) in self.taps() {
            let phase = Complex::from_polar(1.0, -(k as f64) * xi);
            for i in 0..self.rows {
                for j in 0..self.cols {
                    acc[(i, j)] += phase * m[(i, j)];
                }
            }
        }
        acc
    }

    /// Exact j-th derivative of the symbol at `xi = 0` or `xi = pi`
    /// (`at_pi = true`), computed from coefficient moments.
    pub fn symbol_derivative(&self, j: u32, at_pi: bool) -> CMat {
        let mut acc = CMat::zeros(self.rows, self.cols);
        for (k, m) in self.taps() {
            // (-ik)^j e^{-ik xi}
            let base = Complex::new(0.0, -(k as f64)).powu(j);
            let sign = if at_pi && k.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
            let w = base * sign;
            for r in 0..self.rows {
                for c in 0..self.cols {
                    acc[(r, c)] += w * m[(r, c)];
                }
            }
        }
        acc
    }

    /// Symbol at zero, `sum_k tap(k)`, as a real matrix.
    pub fn sum(&self) -> Mat {
        let mut acc = Mat::zeros(self.rows, self.cols);
        for (_, m) in self.taps() {
            acc += m;
        }
        acc
    }
}

/// A biorthogonal wavelet filter bank together with the normalization of the
/// underlying refinable functions at frequency zero.
#[derive(Debug, Clone)]
pub struct FilterBank {
    pub name: String,
    pub multiplicity: usize,
    pub lowpass: MatrixFilter,
    pub highpass: MatrixFilter,
    pub dual_lowpass: MatrixFilter,
    pub dual_highpass: MatrixFilter,
    /// Integer support of the primal scaling function (may be strictly
    /// inside the lowpass support for multiwavelets).
    pub scaling_support: (i32, i32),
    /// Integer support of the primal wavelet.
    pub wavelet_support: (i32, i32),
    /// Value of the scaling symbol eigenvector: normalization of `phi` at 0.
    pub scaling_at_zero: Vect,
    /// Same for the dual scaling function.
    pub dual_scaling_at_zero: Vect,
}

impl FilterBank {
    /// Builds a bank, filling scaling/wavelet supports from the filter
    /// supports when not supplied.
    pub fn new(
        name: impl Into<String>,
        lowpass: MatrixFilter,
        highpass: MatrixFilter,
        dual_lowpass: MatrixFilter,
        dual_highpass: MatrixFilter,
        scaling_support: Option<(i32, i32)>,
        wavelet_support: Option<(i32, i32)>,
        scaling_at_zero: Vect,
        dual_scaling_at_zero: Vect,
    ) -> Result<Self> {
        let r = lowpass.rows();
        for (label, f) in [
            ("lowpass", &lowpass),
            ("highpass", &highpass),
            ("dual lowpass", &dual_lowpass),
            ("dual highpass", &dual_highpass),
        ] {
            if f.rows() != r || f.cols() != r {
                return Err(WaveletError::Dimension(format!(
                    "{label} filter must be square of size {r}"
                )));
            }
        }
        if scaling_at_zero.len() != r || dual_scaling_at_zero.len() != r {
            return Err(WaveletError::Dimension(
                "scaling normalization vectors must match the multiplicity".into(),
            ));
        }
        let pairing = scaling_at_zero.dot(&dual_scaling_at_zero);
        if (pairing - 1.0).abs() > 1e-6 {
            return Err(WaveletError::InvalidInput(format!(
                "normalization pairing must be 1, got {pairing}"
            )));
        }
        let scaling_support = scaling_support.unwrap_or(lowpass.support());
        let wavelet_support = wavelet_support.unwrap_or_else(|| {
            let (lb, hb) = highpass.support();
            let (lp, hp) = scaling_support;
            (div_floor(lb + lp, 2), div_ceil(hb + hp, 2))
        });
        Ok(FilterBank {
            name: name.into(),
            multiplicity: r,
            lowpass,
            highpass,
            dual_lowpass,
            dual_highpass,
            scaling_support,
            wavelet_support,
            scaling_at_zero,
            dual_scaling_at_zero,
        })
    }

    /// Integer support of the dual scaling function (defaults to the dual
    /// lowpass support).
    pub fn dual_scaling_support(&self) -> (i32, i32) {
        self.dual_lowpass.support()
    }

    pub fn dual_wavelet_support(&self) -> (i32, i32) {
        let (lb, hb) = self.dual_highpass.support();
        let (lp, hp) = self.dual_scaling_support();
        (div_floor(lb + lp, 2), div_ceil(hb + hp, 2))
    }

    pub fn is_orthogonal(&self, tol: &Tolerances) -> bool {
        let d = |a: &MatrixFilter, b: &MatrixFilter| -> f64 {
            let (la, ha) = a.support();
            let (lb, hb) = b.support();
            let lo = la.min(lb);
            let hi = ha.max(hb);
            (lo..=hi)
                .map(|k| (a.tap(k) - b.tap(k)).amax())
                .fold(0.0, f64::max)
        };
        d(&self.lowpass, &self.dual_lowpass) < tol.residual_tol
            && d(&self.highpass, &self.dual_highpass) < tol.residual_tol
    }

    /// The flipped bank generating the reflected functions.
    pub fn flipped(&self) -> FilterBank {
        let (lp, hp) = self.scaling_support;
        let (lw, hw) = self.wavelet_support;
        FilterBank {
            name: format!("{}-flipped", self.name),
            multiplicity: self.multiplicity,
            lowpass: self.lowpass.flipped(),
            highpass: self.highpass.flipped(),
            dual_lowpass: self.dual_lowpass.flipped(),
            dual_highpass: self.dual_highpass.flipped(),
            scaling_support: (-hp, -lp),
            wavelet_support: (-hw, -lw),
            scaling_at_zero: self.scaling_at_zero.clone(),
            dual_scaling_at_zero: self.dual_scaling_at_zero.clone(),
        }
    }
}

pub(crate) fn div_floor(a: i32, b: i32) -> i32 {
    (a as f64 / b as f64).floor() as i32
}

pub(crate) fn div_ceil(a: i32, b: i32) -> i32 {
    (a as f64 / b as f64).ceil() as i32
}

/// Outcome of the modulation-matrix perfect-reconstruction check.
#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionReport {
    pub max_residual: f64,
    pub pass: bool,
}

/// Evaluates the 2r x 2r modulation identity on `grid` equispaced points of
/// `[0, 2*pi)` and reports the worst deviation from the identity matrix.
pub fn verify_perfect_reconstruction(
    bank: &FilterBank,
    grid: usize,
    tol: &Tolerances,
) -> Result<ReconstructionReport> {
    if grid < 16 {
        return Err(WaveletError::Precondition("grid must be at least 16".into()));
    }
    let r = bank.multiplicity;
    let mut max_residual: f64 = 0.0;
    for g in 0..grid {
        let xi = 2.0 * std::f64::consts::PI * (g as f64) / (grid as f64);
        let a0 = bank.lowpass.symbol(xi);
        let a1 = bank.lowpass.symbol(xi + std::f64::consts::PI);
        let b0 = bank.highpass.symbol(xi);
        let b1 = bank.highpass.symbol(xi + std::f64::consts::PI);
        let ta0 = bank.dual_lowpass.symbol(xi);
        let ta1 = bank.dual_lowpass.symbol(xi + std::f64::consts::PI);
        let tb0 = bank.dual_highpass.symbol(xi);
        let tb1 = bank.dual_highpass.symbol(xi + std::f64::consts::PI);

        let mut left = CMat::zeros(2 * r, 2 * r);
        left.view_mut((0, 0), (r, r)).copy_from(&ta0);
        left.view_mut((0, r), (r, r)).copy_from(&ta1);
        left.view_mut((r, 0), (r, r)).copy_from(&tb0);
        left.view_mut((r, r), (r, r)).copy_from(&tb1);

        let mut right = CMat::zeros(2 * r, 2 * r);
        right.view_mut((0, 0), (r, r)).copy_from(&a0.adjoint());
        right.view_mut((0, r), (r, r)).copy_from(&b0.adjoint());
        right.view_mut((r, 0), (r, r)).copy_from(&a1.adjoint());
        right.view_mut((r, r), (r, r)).copy_from(&b1.adjoint());

        let prod = &left * &right;
        for i in 0..2 * r {
            for j in 0..2 * r {
                let expect = if i == j { 1.0 } else { 0.0 };
                let dev = (prod[(i, j)] - Complex::new(expect, 0.0)).norm();
                max_residual = max_residual.max(dev);
            }
        }
    }
    Ok(ReconstructionReport {
        max_residual,
        pass: max_residual < tol.residual_tol,
    })
}

/// Derivative jet of a moment matching filter at frequency zero.
#[derive(Debug, Clone)]
pub struct MatchingFilterJet {
    /// Sum-rule order; the jet stores derivatives `0..order`.
    pub order: usize,
    /// `v^(j)(0)` as complex row vectors (1 x r).
    pub derivs: Vec<CRow>,
}

impl MatchingFilterJet {
    /// Real part of the order-zero value; imaginary parts are checked small.
    pub fn value_at_zero(&self) -> Vect {
        let v = &self.derivs[0];
        DVector::from_iterator(v.ncols(), v.iter().map(|z| z.re))
    }
}

fn left_eigenvector_for_one(m: &Mat, tol: &Tolerances) -> Result<Vect> {
    // Left eigenvector of m for eigenvalue 1 = kernel vector of (m^T - I).
    let n = m.nrows();
    let shifted = m.transpose() - Mat::identity(n, n);
    let svd = shifted.clone().svd(true, true);
    let sv = &svd.singular_values;
    let min_idx = (0..sv.len()).min_by(|&i, &j| sv[i].total_cmp(&sv[j])).unwrap();
    if sv[min_idx] > tol.eig_tol.max(1e-8) * (1.0 + m.amax()) {
        return Err(WaveletError::Inconsistency(
            "symbol at zero has no eigenvalue 1".into(),
        ));
    }
    let vt = svd
        .v_t
        .ok_or_else(|| WaveletError::Inconsistency("svd missing v_t".into()))?;
    Ok(vt.row(min_idx).transpose())
}

fn dual_jet_recursion(
    filter: &MatrixFilter,
    seed: CRow,
    max_order: usize,
    tol: &Tolerances,
) -> Result<(Vec<CRow>, Option<usize>)> {
    // Builds dual-jet derivatives for j = 1.. up to max_order-1; returns the
    // jet and the order at which a recursion pole was hit, if any.
    let r = filter.rows();
    let a0 = filter.symbol(0.0);
    let mut derivs = vec![seed];
    for j in 1..max_order {
        let mut rhs = CRow::zeros(1, r);
        for k in 0..j {
            let da = filter.symbol_derivative((j - k) as u32, false).adjoint();
            rhs += &derivs[k] * da * Complex::new(binomial(j, k), 0.0);
        }
        // (2^j I - conj(a(0))^T) must be inverted.
        let lhs: CMat =
            CMat::identity(r, r) * Complex::new(2f64.powi(j as i32), 0.0) - a0.adjoint();
        let sv = lhs.clone().singular_values();
        let min_sv = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_sv < tol.eig_tol.max(1e-9) * (1.0 + 2f64.powi(j as i32)) {
            return Ok((derivs, Some(j)));
        }
        let lu = lhs.transpose().full_piv_lu();
        let sol = lu
            .solve(&rhs.transpose())
            .ok_or_else(|| WaveletError::Inconsistency("jet solve failed".into()))?;
        derivs.push(sol.transpose());
    }
    Ok((derivs, None))
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut num = 1.0;
    for i in 0..k {
        num *= (n - i) as f64 / (i + 1) as f64;
    }
    num
}

/// Determines the sum-rule order of a lowpass filter and the derivative jet
/// of its matching filter at zero.
///
/// At each order the derivative is obtained from the stacked linear system
/// combining the zero- and pi-frequency conditions; this stays well posed
/// when `2^-j` happens to be an eigenvalue of the symbol at zero, as long as
/// the pi-condition pins the remaining direction.
pub fn sum_rule_order(
    lowpass: &MatrixFilter,
    scaling_at_zero: &Vect,
    max_order: usize,
    tol: &Tolerances,
) -> Result<(usize, MatchingFilterJet)> {
    let r = lowpass.rows();
    let a0_real = lowpass.sum();
    let v0 = left_eigenvector_for_one(&a0_real, tol)?;
    let pairing = v0.dot(scaling_at_zero);
    if pairing.abs() < 1e-12 {
        return Err(WaveletError::Inconsistency(
            "matching filter seed is orthogonal to the scaling normalization".into(),
        ));
    }
    let seed = CRow::from_iterator(1, r, v0.iter().map(|&x| Complex::new(x / pairing, 0.0)));
    let threshold = tol.residual_tol * lowpass.max_abs().max(1.0);

    // Order 0: the pi-condition with the fixed seed.
    let a_pi = lowpass.symbol_derivative(0, true);
    let dev0 = (&seed * &a_pi).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if dev0 > threshold {
        return Ok((
            0,
            MatchingFilterJet {
                order: 0,
                derivs: vec![seed],
            },
        ));
    }

    let mut derivs = vec![seed];
    let mut order = 1usize;
    while order < max_order {
        let j = order;
        // Known part of both conditions (k < j terms).
        let mut rhs_zero = CRow::zeros(1, r);
        let mut rhs_pi = CRow::zeros(1, r);
        for k in 0..j {
            let scale = Complex::new(binomial(j, k) * 2f64.powi(k as i32), 0.0);
            rhs_zero += &derivs[k] * lowpass.symbol_derivative((j - k) as u32, false) * scale;
            rhs_pi += &derivs[k] * lowpass.symbol_derivative((j - k) as u32, true) * scale;
        }
        // Unknown v^(j) enters as v^(j) (2^j a(0) - I) = -rhs_zero and
        // v^(j) 2^j a(pi) = -rhs_pi.
        let pow = Complex::new(2f64.powi(j as i32), 0.0);
        let m_zero = lowpass.symbol(0.0) * pow - CMat::identity(r, r);
        let m_pi = lowpass.symbol_derivative(0, true) * pow;
        let mut stacked = CMat::zeros(r, 2 * r);
        stacked.view_mut((0, 0), (r, r)).copy_from(&m_zero);
        stacked.view_mut((0, r), (r, r)).copy_from(&m_pi);
        let mut rhs = CMat::zeros(1, 2 * r);
        rhs.view_mut((0, 0), (1, r)).copy_from(&(-&rhs_zero));
        rhs.view_mut((0, r), (1, r)).copy_from(&(-&rhs_pi));

        // Row-vector least squares: stacked^T x^T = rhs^T.
        let svd = stacked.transpose().svd(true, true);
        let sol = svd
            .solve(&rhs.transpose(), tol.rank_tol)
            .map_err(|e| WaveletError::Inconsistency(format!("jet solve failed: {e}")))?;
        let residual = (stacked.transpose() * &sol - rhs.transpose())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if residual > threshold {
            // The conditions cannot be satisfied at this order.
            break;
        }
        let rank = svd
            .singular_values
            .iter()
            .filter(|&&s| s > tol.rank_tol * (1.0 + 2f64.powi(j as i32)))
            .count();
        if rank < r {
            // Solvable but ambiguous: the jet is not determined.
            return Err(WaveletError::RecursionPole { order: j });
        }
        derivs.push(sol.transpose());
        order += 1;
    }
    let jet = MatchingFilterJet {
        order,
        derivs,
    };
    Ok((order, jet))
}

/// Jet of the dual matching filter, determined by the primal lowpass mask.
pub fn dual_matching_jet(
    lowpass: &MatrixFilter,
    dual_scaling_at_zero: &Vect,
    order: usize,
    tol: &Tolerances,
) -> Result<MatchingFilterJet> {
    let r = lowpass.rows();
    // Seed: left eigenvector of conj(a(0))^T for eigenvalue 1, i.e. a right
    // eigenvector of a(0) transposed into a row.
    let a0 = lowpass.sum();
    let v0 = left_eigenvector_for_one(&a0.transpose(), tol)?;
    let pairing = v0.dot(dual_scaling_at_zero);
    if pairing.abs() < 1e-12 {
        return Err(WaveletError::Inconsistency(
            "dual matching filter seed failed to normalize".into(),
        ));
    }
    let seed = CRow::from_iterator(1, r, v0.iter().map(|&x| Complex::new(x / pairing, 0.0)));
    let (derivs, pole_at) = dual_jet_recursion(lowpass, seed, order.max(1), tol)?;
    if derivs.len() < order {
        return Err(WaveletError::RecursionPole {
            order: pole_at.unwrap_or(derivs.len()),
        });
    }
    Ok(MatchingFilterJet {
        order,
        derivs: derivs.into_iter().take(order.max(1)).collect(),
    })
}

/// Smallest admissible interior-shift indices for a bank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SupportIndices {
    pub scaling_start: i32,
    pub wavelet_start: i32,
    pub dual_scaling_start: i32,
    pub dual_wavelet_start: i32,
}

/// Computes the smallest interior-start indices from the support windows.
///
/// With `strengthened` set, the dual indices satisfy the stricter bounds used
/// by the direct dual construction.
pub fn filter_support_arithmetic(bank: &FilterBank, strengthened: bool) -> SupportIndices {
    let (l_phi, _) = bank.scaling_support;
    let (l_a, _) = bank.lowpass.support();
    let (l_psi, _) = bank.wavelet_support;
    let (l_b, _) = bank.highpass.support();
    let n_phi = (-l_phi).max(-l_a);
    let n_psi = (-l_psi).max(div_ceil(n_phi - l_b, 2));

    let (l_tphi, _) = bank.dual_scaling_support();
    let (l_ta, _) = bank.dual_lowpass.support();
    let (l_tpsi, _) = bank.dual_wavelet_support();
    let (l_tb, _) = bank.dual_highpass.support();
    let n_tphi = if strengthened {
        (-l_tphi).max(1 - l_ta).max(n_phi)
    } else {
        (-l_tphi).max(-l_ta).max(n_phi)
    };
    let n_tpsi = if strengthened {
        (-l_tpsi).max(div_ceil(n_tphi - l_tb + 1, 2)).max(n_psi)
    } else {
        (-l_tpsi).max(div_ceil(n_tphi - l_tb, 2)).max(n_psi)
    };
    SupportIndices {
        scaling_start: n_phi,
        wavelet_start: n_psi,
        dual_scaling_start: n_tphi,
        dual_wavelet_start: n_tpsi,
    }
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct FilterJson {
    pub support: [i32; 2],
    /// One row-major `r x r` array per tap.
    pub coeffs: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FilterBankJson {
    pub name: String,
    pub r: usize,
    pub phi_support: [i32; 2],
    pub psi_support: [i32; 2],
    pub a: FilterJson,
    pub b: FilterJson,
    pub atilde: FilterJson,
    pub btilde: FilterJson,
    pub phi_hat0: Vec<f64>,
    pub tphi_hat0: Vec<f64>,
}

fn filter_from_json(j: &FilterJson, r: usize) -> Result<MatrixFilter> {
    let [lo, hi] = j.support;
    if hi < lo {
        return Err(WaveletError::InvalidInput("filter support is empty".into()));
    }
    let len = (hi - lo + 1) as usize;
    if len > 4096 {
        return Err(WaveletError::InvalidInput("filter support too large".into()));
    }
    if j.coeffs.len() != len {
        return Err(WaveletError::InvalidInput(format!(
            "expected {len} taps, found {}",
            j.coeffs.len()
        )));
    }
    let mut taps = Vec::with_capacity(len);
    for flat in &j.coeffs {
        if flat.len() != r * r {
            return Err(WaveletError::InvalidInput(format!(
                "tap must have {} entries (row-major {r}x{r})",
                r * r
            )));
        }
        if !flat.iter().all(|x| x.is_finite()) {
            return Err(WaveletError::InvalidInput("non-finite filter entry".into()));
        }
        taps.push(Mat::from_row_slice(r, r, flat));
    }
    MatrixFilter::new(lo, taps)
}

fn filter_to_json(f: &MatrixFilter) -> FilterJson {
    let (lo, hi) = f.support();
    FilterJson {
        support: [lo, hi],
        coeffs: (lo..=hi)
            .map(|k| f.tap(k).transpose().as_slice().to_vec())
            .collect(),
    }
}

impl FilterBank {
    pub fn from_json(j: &FilterBankJson) -> Result<FilterBank> {
        if j.r == 0 || j.r > 64 {
            return Err(WaveletError::InvalidInput("multiplicity out of range".into()));
        }
        if j.phi_hat0.len() != j.r || j.tphi_hat0.len() != j.r {
            return Err(WaveletError::InvalidInput(
                "phi_hat0/tphi_hat0 must have length r".into(),
            ));
        }
        if !j.phi_hat0.iter().chain(j.tphi_hat0.iter()).all(|x| x.is_finite()) {
            return Err(WaveletError::InvalidInput("non-finite normalization".into()));
        }
        if j.phi_support[1] < j.phi_support[0] || j.psi_support[1] < j.psi_support[0] {
            return Err(WaveletError::InvalidInput("empty function support".into()));
        }
        FilterBank::new(
            j.name.clone(),
            filter_from_json(&j.a, j.r)?,
            filter_from_json(&j.b, j.r)?,
            filter_from_json(&j.atilde, j.r)?,
            filter_from_json(&j.btilde, j.r)?,
            Some((j.phi_support[0], j.phi_support[1])),
            Some((j.psi_support[0], j.psi_support[1])),
            Vect::from_vec(j.phi_hat0.clone()),
            Vect::from_vec(j.tphi_hat0.clone()),
        )
    }

    pub fn to_json(&self) -> FilterBankJson {
        FilterBankJson {
            name: self.name.clone(),
            r: self.multiplicity,
            phi_support: [self.scaling_support.0, self.scaling_support.1],
            psi_support: [self.wavelet_support.0, self.wavelet_support.1],
            a: filter_to_json(&self.lowpass),
            b: filter_to_json(&self.highpass),
            atilde: filter_to_json(&self.dual_lowpass),
            btilde: filter_to_json(&self.dual_highpass),
            phi_hat0: self.scaling_at_zero.as_slice().to_vec(),
            tphi_hat0: self.dual_scaling_at_zero.as_slice().to_vec(),
        }
    }

    /// Parses a bank from JSON text (the CLI file format).
    pub fn from_json_str(text: &str) -> Result<FilterBank> {
        let parsed: FilterBankJson = serde_json::from_str(text)?;
        FilterBank::from_json(&parsed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn haar_reconstruction_passes() {
        let bank = fixtures::fixture("haar").unwrap().bank;
        let rep = verify_perfect_reconstruction(&bank, 64, &tols()).unwrap();
        assert!(rep.pass, "residual {}", rep.max_residual);
    }

    #[test]
    fn ghm_reconstruction_passes_tightly() {
        let bank = fixtures::fixture("ghm").unwrap().bank;
        let rep = verify_perfect_reconstruction(&bank, 64, &tols()).unwrap();
        assert!(rep.max_residual < 1e-12, "residual {}", rep.max_residual);
    }

    #[test]
    fn perturbed_bank_fails() {
        let mut bank = fixtures::fixture("ghm").unwrap().bank;
        let (lo, _) = bank.lowpass.support();
        let mut taps: Vec<Mat> = bank.lowpass.taps().map(|(_, m)| m.clone()).collect();
        taps[1][(0, 0)] += 1e-3;
        bank.lowpass = MatrixFilter::new(lo, taps).unwrap();
        let rep = verify_perfect_reconstruction(&bank, 64, &tols()).unwrap();
        assert!(!rep.pass);
        assert!(rep.max_residual > 1e-4);
    }

    #[test]
    fn ghm_sum_rules_and_jet() {
        let bank = fixtures::fixture("ghm").unwrap().bank;
        let (m, jet) =
            sum_rule_order(&bank.lowpass, &bank.scaling_at_zero, 8, &tols()).unwrap();
        assert_eq!(m, 2);
        let v0 = &jet.derivs[0];
        let expect0 = [6f64.sqrt() / 3.0, 3f64.sqrt() / 3.0];
        for (i, e) in expect0.iter().enumerate() {
            assert!((v0[(0, i)].re - e).abs() < 1e-10, "v0[{i}] = {}", v0[(0, i)]);
            assert!(v0[(0, i)].im.abs() < 1e-10);
        }
        let v1 = &jet.derivs[1];
        let expect1 = [-6f64.sqrt() / 6.0, 0.0];
        for (i, e) in expect1.iter().enumerate() {
            assert!((v1[(0, i)].im - e).abs() < 1e-10, "v1[{i}] = {}", v1[(0, i)]);
            assert!(v1[(0, i)].re.abs() < 1e-10);
        }
    }

    #[test]
    fn hermite_cubic_sum_rules() {
        let bank = fixtures::fixture("hermite-cubic").unwrap().bank;
        let (m, jet) =
            sum_rule_order(&bank.lowpass, &bank.scaling_at_zero, 8, &tols()).unwrap();
        assert_eq!(m, 4);
        assert!((jet.derivs[0][(0, 0)].re - 1.0).abs() < 1e-10);
        assert!(jet.derivs[0][(0, 1)].norm() < 1e-10);
        assert!((jet.derivs[1][(0, 1)].im - 1.0).abs() < 1e-10);
        assert!(jet.derivs[1][(0, 0)].norm() < 1e-10);
    }

    #[test]
    fn bspline_sum_rules() {
        let a = MatrixFilter::scalar(-1, &[0.25, 0.5, 0.25]).unwrap();
        let (m, _) = sum_rule_order(&a, &Vect::from_vec(vec![1.0]), 8, &tols()).unwrap();
        assert_eq!(m, 2);
    }

    #[test]
    fn hermite_cubic_dual_jet() {
        let bank = fixtures::fixture("hermite-cubic").unwrap().bank;
        let jet =
            dual_matching_jet(&bank.lowpass, &bank.dual_scaling_at_zero, 4, &tols()).unwrap();
        let expect: [(f64, f64, bool); 4] = [
            (1.0, 0.0, false),
            (0.0, 1.0 / 15.0, true),
            (-2.0 / 15.0, 0.0, false),
            (0.0, -2.0 / 105.0, true),
        ];
        for (j, (e0, e1, imag)) in expect.iter().enumerate() {
            let row = &jet.derivs[j];
            let (got0, got1) = if *imag {
                (row[(0, 0)].im, row[(0, 1)].im)
            } else {
                (row[(0, 0)].re, row[(0, 1)].re)
            };
            assert!((got0 - e0).abs() < 1e-10, "deriv {j}: {got0} vs {e0}");
            assert!((got1 - e1).abs() < 1e-10, "deriv {j}: {got1} vs {e1}");
        }
    }

    #[test]
    fn dual_jet_matches_primal_for_orthogonal_banks() {
        let bank = fixtures::fixture("haar").unwrap().bank;
        let (_, primal) =
            sum_rule_order(&bank.lowpass, &bank.scaling_at_zero, 4, &tols()).unwrap();
        let dual = dual_matching_jet(&bank.lowpass, &bank.dual_scaling_at_zero, 1, &tols())
            .unwrap();
        assert!((primal.derivs[0][(0, 0)] - dual.derivs[0][(0, 0)]).norm() < 1e-12);
    }

    #[test]
    fn cdf53_dual_jet_cross_check() {
        let bank = fixtures::fixture("cdf53").unwrap().bank;
        // Dual jet of order 2 driven by the primal mask; order-zero value 1.
        let jet =
            dual_matching_jet(&bank.lowpass, &bank.dual_scaling_at_zero, 2, &tols()).unwrap();
        assert!((jet.derivs[0][(0, 0)].re - 1.0).abs() < 1e-12);
        let (m_dual, _) =
            sum_rule_order(&bank.dual_lowpass, &bank.dual_scaling_at_zero, 8, &tols()).unwrap();
        assert_eq!(m_dual, 2);
    }

    #[test]
    fn support_indices_examples() {
        let ghm = fixtures::fixture("ghm").unwrap().bank;
        let idx = filter_support_arithmetic(&ghm, false);
        assert_eq!(idx.scaling_start, 1);
        assert_eq!(idx.wavelet_start, 1);

        let cdf = fixtures::fixture("cdf53").unwrap().bank;
        let idx = filter_support_arithmetic(&cdf, false);
        assert_eq!(idx.scaling_start, 1);
        assert_eq!(idx.wavelet_start, 1);

        let hc = fixtures::fixture("hermite-cubic").unwrap().bank;
        let idx = filter_support_arithmetic(&hc, false);
        assert_eq!(idx.scaling_start, 1);
        assert_eq!(idx.wavelet_start, 2);
    }

    #[test]
    fn json_round_trip() {
        let bank = fixtures::fixture("cdf53").unwrap().bank;
        let text = serde_json::to_string(&bank.to_json()).unwrap();
        let back = FilterBank::from_json_str(&text).unwrap();
        let rep = verify_perfect_reconstruction(&back, 32, &tols()).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn flipped_bank_reconstructs() {
        let bank = fixtures::fixture("ghm").unwrap().bank.flipped();
        let rep = verify_perfect_reconstruction(&bank, 32, &tols()).unwrap();
        assert!(rep.pass);
    }
}
