//! Built-in filter banks and their reference metadata, used as regression
//! targets by the verification suite and exposed through the CLI.

use crate::error::{Result, WaveletError};
use crate::filterbank::{FilterBank, MatrixFilter};
use crate::linalg::{Mat, Vect};

/// Reference data recorded for each built-in bank.
#[derive(Debug, Clone)]
pub struct FixtureMeta {
    /// Sum-rule orders of the primal and dual lowpass filters.
    pub sr_primal: usize,
    pub sr_dual: usize,
    pub orthogonal: bool,
    /// All components have integer symmetry centers.
    pub symmetric: bool,
    /// Construction approach exercised by the verification suite.
    pub default_approach: &'static str,
    /// Vanishing moments of the left boundary wavelet for that approach.
    pub vmo_boundary_wavelet: usize,
    /// Scaling-count formula on [0,1]: `#Phi_j = coef * 2^j + offset`.
    pub scaling_count: (i64, i64),
    /// Expected spectral radius of the dual boundary block, when stated.
    pub dual_rho: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ExampleFixture {
    pub bank: FilterBank,
    pub meta: FixtureMeta,
}

pub const FIXTURE_NAMES: [&str; 7] = [
    "haar",
    "ghm",
    "dgh3",
    "hermite-quadratic",
    "hermite-cubic",
    "cdf53",
    "interpolatory",
];

/// Returns a built-in fixture by name.
pub fn fixture(name: &str) -> Result<ExampleFixture> {
    match name {
        "haar" => haar(),
        "ghm" => ghm(),
        "dgh3" => dgh3(),
        "hermite-quadratic" => hermite_quadratic(),
        "hermite-cubic" => hermite_cubic(),
        "cdf53" => cdf53(),
        "interpolatory" => interpolatory(),
        other => Err(WaveletError::UnknownFixture(other.into())),
    }
}

fn m2(entries: [f64; 4]) -> Mat {
    Mat::from_row_slice(2, 2, &entries)
}

fn m3(entries: [f64; 9]) -> Mat {
    Mat::from_row_slice(3, 3, &entries)
}

fn haar() -> Result<ExampleFixture> {
    let a = MatrixFilter::scalar(0, &[0.5, 0.5])?;
    let b = MatrixFilter::scalar(0, &[0.5, -0.5])?;
    let bank = FilterBank::new(
        "haar",
        a.clone(),
        b.clone(),
        a,
        b,
        Some((0, 1)),
        Some((0, 1)),
        Vect::from_vec(vec![1.0]),
        Vect::from_vec(vec![1.0]),
    )?;
    Ok(ExampleFixture {
        bank,
        meta: FixtureMeta {
            sr_primal: 1,
            sr_dual: 1,
            orthogonal: true,
            symmetric: false,
            default_approach: "orthogonal",
            vmo_boundary_wavelet: 1,
            scaling_count: (1, 0),
            dual_rho: None,
        },
    })
}

fn ghm() -> Result<ExampleFixture> {
    let s2 = 2f64.sqrt();
    let a = MatrixFilter::new(
        -1,
        vec![
            m2([3.0 / 10.0, 2.0 * s2 / 5.0, -s2 / 40.0, -3.0 / 20.0]),
            m2([3.0 / 10.0, 0.0, 9.0 * s2 / 40.0, 0.5]),
            m2([0.0, 0.0, 9.0 * s2 / 40.0, -3.0 / 20.0]),
            m2([0.0, 0.0, -s2 / 40.0, 0.0]),
        ],
    )?;
    let b = MatrixFilter::new(
        -1,
        vec![
            m2([-s2 / 40.0, -3.0 / 20.0, 1.0 / 20.0, 3.0 * s2 / 20.0]),
            m2([9.0 * s2 / 40.0, -0.5, -9.0 / 20.0, 0.0]),
            m2([9.0 * s2 / 40.0, -3.0 / 20.0, 9.0 / 20.0, -3.0 * s2 / 20.0]),
            m2([-s2 / 40.0, 0.0, -1.0 / 20.0, 0.0]),
        ],
    )?;
    let phi0 = Vect::from_vec(vec![6f64.sqrt() / 3.0, 3f64.sqrt() / 3.0]);
    let bank = FilterBank::new(
        "ghm",
        a.clone(),
        b.clone(),
        a,
        b,
        Some((-1, 1)),
        Some((-1, 1)),
        phi0.clone(),
        phi0,
    )?;
    Ok(ExampleFixture {
        bank,
        meta: FixtureMeta {
            sr_primal: 2,
            sr_dual: 2,
            orthogonal: true,
            symmetric: true,
            default_approach: "orthogonal",
            vmo_boundary_wavelet: 2,
            scaling_count: (2, 1),
            dual_rho: Some(0.5),
        },
    })
}

fn dgh3() -> Result<ExampleFixture> {
    let s2 = 2f64.sqrt();
    let s5 = 5f64.sqrt();
    let s7 = 7f64.sqrt();
    let s11 = 11f64.sqrt();
    let s14 = 14f64.sqrt();
    let s22 = 22f64.sqrt();
    let s70 = 70f64.sqrt();
    let s77 = 77f64.sqrt();
    let s154 = 154f64.sqrt();

    let a = MatrixFilter::new(
        -2,
        vec![
            m3([
                0.0,
                -s2 * s154 * (3.0 + 2.0 * s5) / 7392.0,
                s2 * s14 * (2.0 + 5.0 * s5) / 2464.0,
                0.0,
                0.0,
                0.0,
                0.0,
                0.0,
                0.0,
            ]),
            m3([
                -3.0 / 44.0 - s5 / 22.0,
                s2 * s154 * (67.0 + 30.0 * s5) / 7392.0,
                s2 * s14 * (-10.0 + s5) / 224.0,
                0.0,
                0.0,
                0.0,
                0.0,
                0.0,
                0.0,
            ]),
            m3([
                0.5,
                s2 * s154 * (67.0 - 30.0 * s5) / 7392.0,
                s2 * s14 * (10.0 + s5) / 224.0,
                0.0,
                3.0 / 8.0,
                s2 * s22 * (-4.0 + s5) / 176.0,
                0.0,
                s2 * s22 * (32.0 + 7.0 * s5) / 528.0,
                -5.0 / 88.0 + s5 / 22.0,
            ]),
            m3([
                -3.0 / 44.0 + s5 / 22.0,
                s2 * s154 * (-3.0 + 2.0 * s5) / 7392.0,
                s2 * s14 * (-2.0 + 5.0 * s5) / 2464.0,
                s2 * s154 / 44.0,
                3.0 / 8.0,
                s2 * s22 * (4.0 + s5) / 176.0,
                -s2 * s70 / 44.0,
                s2 * s22 * (-32.0 + 7.0 * s5) / 528.0,
                -5.0 / 88.0 - s5 / 22.0,
            ]),
        ],
    )?;
    let b = MatrixFilter::new(
        -2,
        vec![
            m3([
                0.0,
                0.0,
                0.0,
                0.0,
                s2 * s154 * (3.0 + 2.0 * s5) / 7392.0,
                -s2 * s14 * (2.0 + 5.0 * s5) / 2464.0,
                0.0,
                -s2 * s7 * (1.0 + s5) / 672.0,
                s2 * s77 * (-1.0 + 3.0 * s5) / 2464.0,
            ]),
            m3([
                0.0,
                0.0,
                0.0,
                3.0 / 44.0 + s5 / 22.0,
                -s2 * s154 * (67.0 + 30.0 * s5) / 7392.0,
                s2 * (10.0 - s5) * s14 / 224.0,
                -s2 * s11 * (1.0 + s5) / 88.0,
                s2 * s7 * (29.0 + 13.0 * s5) / 672.0,
                s2 * s77 * (-75.0 + 17.0 * s5) / 2464.0,
            ]),
            m3([
                0.0,
                s2 * s77 * (-2.0 + s5) / 528.0,
                s2 * s7 * (13.0 - 6.0 * s5) / 176.0,
                0.5,
                s2 * s154 * (-67.0 + 30.0 * s5) / 7392.0,
                -s2 * s14 * (10.0 + s5) / 224.0,
                0.0,
                s2 * s7 * (-29.0 + 13.0 * s5) / 672.0,
                -s2 * s77 * (75.0 + 17.0 * s5) / 2464.0,
            ]),
            m3([
                13.0 * s2 / 44.0,
                -s2 * s77 * (s5 + 2.0) / 528.0,
                -s2 * s7 * (13.0 + 6.0 * s5) / 176.0,
                3.0 / 44.0 - s5 / 22.0,
                s2 * s154 * (3.0 - 2.0 * s5) / 7392.0,
                s2 * (2.0 - 5.0 * s5) * s14 / 2464.0,
                s2 * s11 * (1.0 - s5) / 88.0,
                s2 * s7 * (1.0 - s5) / 672.0,
                -s2 * s77 * (3.0 * s5 + 1.0) / 2464.0,
            ]),
        ],
    )?;
    let phi0 = Vect::from_vec(vec![
        (7f64 / 33.0).sqrt(),
        3f64.sqrt() / 2.0,
        (5f64 / 132.0).sqrt(),
    ]);
    let bank = FilterBank::new(
        "dgh3",
        a.clone(),
        b.clone(),
        a,
        b,
        Some((-1, 1)),
        Some((-1, 1)),
        phi0.clone(),
        phi0,
    )?;
    Ok(ExampleFixture {
        bank,
        meta: FixtureMeta {
            sr_primal: 2,
            sr_dual: 2,
            orthogonal: true,
            symmetric: false,
            default_approach: "orthogonal",
            vmo_boundary_wavelet: 2,
            scaling_count: (3, 1),
            dual_rho: None,
        },
    })
}

fn hermite_quadratic() -> Result<ExampleFixture> {
    let a = MatrixFilter::new(
        -1,
        vec![
            m2([0.25, 0.5, -1.0 / 16.0, -0.125]),
            m2([0.5, 0.0, 0.0, 0.25]),
            m2([0.25, -0.5, 1.0 / 16.0, -0.125]),
        ],
    )?;
    let b = MatrixFilter::new(
        -1,
        vec![
            m2([-0.25, -0.5, 37.0 / 1456.0, 37.0 / 728.0]),
            m2([0.5, 0.0, 0.0, 0.25]),
            m2([-0.25, 0.5, -37.0 / 1456.0, 37.0 / 728.0]),
        ],
    )?;
    let at = MatrixFilter::new(
        -1,
        vec![
            m2([0.25, 0.125, -91.0 / 64.0, -91.0 / 128.0]),
            m2([0.5, 0.0, 0.0, 37.0 / 64.0]),
            m2([0.25, -0.125, 91.0 / 64.0, -91.0 / 128.0]),
        ],
    )?;
    let bt = MatrixFilter::new(
        -1,
        vec![
            m2([-0.25, -0.125, 91.0 / 64.0, 91.0 / 128.0]),
            m2([0.5, 0.0, 0.0, 91.0 / 64.0]),
            m2([-0.25, 0.125, -91.0 / 64.0, 91.0 / 128.0]),
        ],
    )?;
    let e1 = Vect::from_vec(vec![1.0, 0.0]);
    let bank = FilterBank::new(
        "hermite-quadratic",
        a,
        b,
        at,
        bt,
        Some((-1, 1)),
        Some((-1, 1)),
        e1.clone(),
        e1,
    )?;
    Ok(ExampleFixture {
        bank,
        meta: FixtureMeta {
            sr_primal: 3,
            sr_dual: 1,
            orthogonal: false,
            symmetric: true,
            default_approach: "direct",
            vmo_boundary_wavelet: 1,
            scaling_count: (2, 2),
            dual_rho: Some(0.5),
        },
    })
}

fn hermite_cubic() -> Result<ExampleFixture> {
    let a = MatrixFilter::new(
        -1,
        vec![
            m2([0.25, 0.375, -1.0 / 16.0, -1.0 / 16.0]),
            m2([0.5, 0.0, 0.0, 0.25]),
            m2([0.25, -0.375, 1.0 / 16.0, -1.0 / 16.0]),
        ],
    )?;
    let b = MatrixFilter::new(
        -2,
        vec![
            m2([0.0, 0.0, 2.0 / 97.0, 24.0 / 679.0]),
            m2([-0.5, -3.75, 77.0 / 1164.0, 2921.0 / 2716.0]),
            m2([1.0, 0.0, 0.0, 1.0]),
            m2([-0.5, 3.75, -77.0 / 1164.0, 2921.0 / 2716.0]),
            m2([0.0, 0.0, -2.0 / 97.0, 24.0 / 679.0]),
        ],
    )?;
    let at = MatrixFilter::new(
        -4,
        vec![
            m2([-13.0 / 2432.0, -91.0 / 29184.0, 3.0 / 152.0, 7.0 / 608.0]),
            m2([39.0 / 2432.0, 13.0 / 3648.0, -9.0 / 152.0, -1.0 / 76.0]),
            m2([
                -1.0 / 12.0,
                -1699.0 / 43776.0,
                679.0 / 1216.0,
                4225.0 / 14592.0,
            ]),
            m2([
                569.0 / 2432.0,
                647.0 / 10944.0,
                -1965.0 / 1216.0,
                -37.0 / 96.0,
            ]),
            m2([2471.0 / 3648.0, 0.0, 0.0, 7291.0 / 7296.0]),
            m2([
                569.0 / 2432.0,
                -647.0 / 10944.0,
                1965.0 / 1216.0,
                -37.0 / 96.0,
            ]),
            m2([
                -1.0 / 12.0,
                1699.0 / 43776.0,
                -679.0 / 1216.0,
                4225.0 / 14592.0,
            ]),
            m2([39.0 / 2432.0, -13.0 / 3648.0, 9.0 / 152.0, -1.0 / 76.0]),
            m2([-13.0 / 2432.0, 91.0 / 29184.0, -3.0 / 152.0, 7.0 / 608.0]),
        ],
    )?;
    let bt = MatrixFilter::new(
        -4,
        vec![
            m2([-1.0 / 4864.0, -7.0 / 58368.0, 0.0, 0.0]),
            m2([3.0 / 4864.0, 1.0 / 7296.0, 0.0, 0.0]),
            m2([
                1.0 / 24.0,
                2161.0 / 87552.0,
                -679.0 / 4864.0,
                -4753.0 / 58368.0,
            ]),
            m2([
                -611.0 / 4864.0,
                -605.0 / 21888.0,
                2037.0 / 4864.0,
                679.0 / 7296.0,
            ]),
            m2([1219.0 / 7296.0, 0.0, 0.0, 7469.0 / 29184.0]),
            m2([
                -611.0 / 4864.0,
                605.0 / 21888.0,
                -2037.0 / 4864.0,
                679.0 / 7296.0,
            ]),
            m2([
                1.0 / 24.0,
                -2161.0 / 87552.0,
                679.0 / 4864.0,
                -4753.0 / 58368.0,
            ]),
            m2([3.0 / 4864.0, -1.0 / 7296.0, 0.0, 0.0]),
            m2([-1.0 / 4864.0, 7.0 / 58368.0, 0.0, 0.0]),
        ],
    )?;
    let e1 = Vect::from_vec(vec![1.0, 0.0]);
    let bank = FilterBank::new(
        "hermite-cubic",
        a,
        b,
        at,
        bt,
        Some((-1, 1)),
        Some((-2, 2)),
        e1.clone(),
        e1,
    )?;
    Ok(ExampleFixture {
        bank,
        meta: FixtureMeta {
            sr_primal: 4,
            sr_dual: 4,
            orthogonal: false,
            symmetric: true,
            default_approach: "direct",
            vmo_boundary_wavelet: 4,
            scaling_count: (2, 2),
            dual_rho: Some(0.5),
        },
    })
}

fn cdf53() -> Result<ExampleFixture> {
    let a = MatrixFilter::scalar(-1, &[0.25, 0.5, 0.25])?;
    let b = MatrixFilter::scalar(-1, &[-0.125, -0.25, 0.75, -0.25, -0.125])?;
    let at = MatrixFilter::scalar(-2, &[-0.125, 0.25, 0.75, 0.25, -0.125])?;
    let bt = MatrixFilter::scalar(0, &[-0.25, 0.5, -0.25])?;
    let one = Vect::from_vec(vec![1.0]);
    let bank = FilterBank::new(
        "cdf53",
        a,
        b,
        at,
        bt,
        Some((-1, 1)),
        Some((-1, 2)),
        one.clone(),
        one,
    )?;
    Ok(ExampleFixture {
        bank,
        meta: FixtureMeta {
            sr_primal: 2,
            sr_dual: 2,
            orthogonal: false,
            symmetric: true,
            default_approach: "direct",
            vmo_boundary_wavelet: 2,
            scaling_count: (1, 1),
            dual_rho: Some(0.5),
        },
    })
}

fn interpolatory() -> Result<ExampleFixture> {
    let a = MatrixFilter::scalar(
        -3,
        &[
            -1.0 / 32.0,
            0.0,
            9.0 / 32.0,
            0.5,
            9.0 / 32.0,
            0.0,
            -1.0 / 32.0,
        ],
    )?;
    let b = MatrixFilter::scalar(
        -3,
        &[
            1.0 / 64.0,
            0.0,
            -0.125,
            -0.25,
            23.0 / 32.0,
            -0.25,
            -0.125,
            0.0,
            1.0 / 64.0,
        ],
    )?;
    let at = MatrixFilter::scalar(
        -4,
        &[
            1.0 / 64.0,
            0.0,
            -0.125,
            0.25,
            23.0 / 32.0,
            0.25,
            -0.125,
            0.0,
            1.0 / 64.0,
        ],
    )?;
    let bt = MatrixFilter::scalar(
        -2,
        &[1.0 / 32.0, 0.0, -9.0 / 32.0, 0.5, -9.0 / 32.0, 0.0, 1.0 / 32.0],
    )?;
    let one = Vect::from_vec(vec![1.0]);
    let bank = FilterBank::new(
        "interpolatory",
        a,
        b,
        at,
        bt,
        Some((-3, 3)),
        Some((-3, 4)),
        one.clone(),
        one,
    )?;
    Ok(ExampleFixture {
        bank,
        meta: FixtureMeta {
            sr_primal: 4,
            sr_dual: 2,
            orthogonal: false,
            symmetric: true,
            default_approach: "direct",
            vmo_boundary_wavelet: 2,
            scaling_count: (1, 3),
            dual_rho: Some(0.5),
        },
    })
}

/// Mask of the hat function supported on [0, 2], used by internal oracles.
pub fn hat_mask() -> MatrixFilter {
    MatrixFilter::scalar(0, &[0.25, 0.5, 0.25]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filterbank::verify_perfect_reconstruction;
    use crate::linalg::Tolerances;

    #[test]
    fn all_fixtures_reconstruct() {
        let tol = Tolerances::default();
        for name in FIXTURE_NAMES {
            let fx = fixture(name).unwrap();
            let rep = verify_perfect_reconstruction(&fx.bank, 64, &tol).unwrap();
            assert!(
                rep.max_residual < 1e-12,
                "{name}: residual {}",
                rep.max_residual
            );
        }
    }

    #[test]
    fn ghm_coefficients_spot_check() {
        let fx = fixture("ghm").unwrap();
        let tap = fx.bank.lowpass.tap(-1);
        assert!((tap[(0, 0)] - 0.3).abs() < 1e-15);
        assert!((tap[(0, 1)] - 2.0 * 2f64.sqrt() / 5.0).abs() < 1e-15);
    }

    #[test]
    fn cdf53_coefficients_spot_check() {
        let fx = fixture("cdf53").unwrap();
        assert_eq!(fx.bank.lowpass.support(), (-1, 1));
        assert!((fx.bank.lowpass.tap(0)[(0, 0)] - 0.5).abs() < 1e-15);
        assert!((fx.bank.dual_highpass.tap(0)[(0, 0)] + 0.25).abs() < 1e-15);
    }

    #[test]
    fn unknown_fixture_is_rejected() {
        assert!(fixture("nope").is_err());
    }

    #[test]
    fn declared_sum_rules_match_computed() {
        let tol = Tolerances::default();
        for name in FIXTURE_NAMES {
            let fx = fixture(name).unwrap();
            let (sr_a, _) = crate::filterbank::sum_rule_order(
                &fx.bank.lowpass,
                &fx.bank.scaling_at_zero,
                8,
                &tol,
            )
            .unwrap();
            let (sr_at, _) = crate::filterbank::sum_rule_order(
                &fx.bank.dual_lowpass,
                &fx.bank.dual_scaling_at_zero,
                8,
                &tol,
            )
            .unwrap();
            assert_eq!(sr_a, fx.meta.sr_primal, "{name} primal sum rules");
            assert_eq!(sr_at, fx.meta.sr_dual, "{name} dual sum rules");
        }
    }
}
