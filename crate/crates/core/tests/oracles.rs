//! Independent numerical and exact oracles for the kernel, the cusp values,
//! the Laurent solutions and the eta quotients.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use periodforge::eisenstein::{coefficient_power, cusp_value, eisenstein_G, series_coefficient, Cusp, ShiftPoint, Which};
use periodforge::elliptic_kernel::{wp, wp_prime, wzeta, Lattice};
use periodforge::identity_suite::{a2_discriminant_fourier, eta_quotients, quotient_fourier, sample_frames};
use periodforge::inversion::{cusp_table, invert, x_of_z, y_of_z};
use periodforge::laurent_engine::{recurrence_determinant, solve_formal, GradedPoly};
use periodforge::{CurveType, FramedPeriods, C64};

mod common;
use common::TrigLimit;

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

// ---------------------------------------------------------------- lattice sums

/// Square partial sum of `f` over the lattice points with |m|, |n| <= r,
/// extrapolated in r assuming a 1/r^2 tail.
fn lattice_sum(w: &FramedPeriods, f: impl Fn(C64) -> C64) -> C64 {
    let partial = |r: i64| -> C64 {
        let mut s = C64::zero();
        for m in -r..=r {
            for n in -r..=r {
                s += f(w.omega0 * m as f64 + w.omega1 * n as f64);
            }
        }
        s
    };
    let (a, b) = (partial(200), partial(400));
    (b * 4.0 - a) / 3.0
}

fn wp_by_sum(z: C64, w: &FramedPeriods) -> C64 {
    lattice_sum(w, |o| {
        if o == C64::zero() {
            (z * z).inv()
        } else {
            ((z - o) * (z - o)).inv() - (o * o).inv()
        }
    })
}

fn wp_prime_by_sum(z: C64, w: &FramedPeriods) -> C64 {
    lattice_sum(w, |o| ((z - o).powi(3)).inv() * -2.0)
}

fn frames() -> Vec<FramedPeriods> {
    vec![
        FramedPeriods::from_tau(C64::new(0.0, 1.0)),
        FramedPeriods::new(C64::new(0.8, 0.3), C64::new(0.8, 0.3) * C64::new(0.21, 1.13)),
        FramedPeriods::new(C64::new(1.1, -0.2), C64::new(1.1, -0.2) * C64::new(-0.37, 0.81)),
    ]
}

#[test]
fn wp_matches_lattice_sum() {
    for w in frames() {
        for (u, v) in [(0.23, 0.11), (0.41, 0.37)] {
            let z = w.omega0 * u + w.omega1 * v;
            let got = wp(z, &w).unwrap();
            let want = wp_by_sum(z, &w);
            assert!(rel(got, want) < 1e-8, "wp at {z}: {got} vs {want}");
            let got = wp_prime(z, &w).unwrap();
            let want = wp_prime_by_sum(z, &w);
            assert!(rel(got, want) < 1e-8, "wp' at {z}: {got} vs {want}");
        }
    }
}

#[test]
fn shifted_eisenstein_matches_lattice_sum() {
    for w in frames() {
        for (m, num, den) in [(3u32, 1i64, 3i64), (4, 1, 2), (4, 1, 3), (5, 2, 3)] {
            let a = ShiftPoint::along_omega0(num, den);
            let p = a.point(&w);
            let got = eisenstein_G(m, a, &w).unwrap();
            let want = lattice_sum(&w, |o| (o + p).powi(-(m as i32)));
            assert!(rel(got, want) < 1e-8, "G_{m}({num}/{den}): {got} vs {want}");
        }
    }
}

// ---------------------------------------------------------- degenerate limits

#[test]
fn cusp_rows_match_trig_limits() {
    for t in CurveType::ALL {
        for (cusp, omega0) in [(Cusp::E, C64::new(1.0, 0.0)), (Cusp::S, TrigLimit::TAU)] {
            let rows = cusp_table(t, cusp, 10.0).unwrap();
            let oracle = TrigLimit { omega0 }.rows(t);
            assert_eq!(rows.len(), oracle.len());
            for (r, o) in rows.iter().zip(&oracle) {
                assert!((r.value - o).norm() < 1e-6, "{t} {cusp:?} {}: {} vs trig {}", r.label, r.value, o);
                assert!((r.expected - o).norm() < 1e-6, "{t} {cusp:?} {}: closed form {} vs trig {}", r.label, r.expected, o);
            }
        }
    }
}

#[test]
fn g2_gl_at_e_is_negative() {
    let rows = cusp_table(CurveType::G2, Cusp::E, 10.0).unwrap();
    let gl = rows.iter().find(|r| r.label == "g_l").unwrap();
    assert!((gl.value - C64::new(-2.0 * PI.powi(3) / (3.0 * 3f64.sqrt()), 0.0)).norm() < 1e-6);
}

#[test]
fn series_coefficients_at_cusp_e() {
    // A2: A_n = (2n+1)/4 G_{2n+2}(0), so A_1 -> 3/4 * 2 zeta(4).
    let e = series_coefficient(CurveType::A2, Which::A, 1).unwrap();
    let v = cusp_value(&e, Cusp::E, 10.0).unwrap();
    assert!((v - C64::new(0.75 * PI.powi(4) / 45.0, 0.0)).norm() < 1e-9);
}

// ------------------------------------------------------- Laurent expansions

type Poly = BTreeMap<(u32, u32), BigRational>;

fn pmul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for ((i, j), c) in a {
        for ((k, l), d) in b {
            *out.entry((i + k, j + l)).or_insert_with(BigRational::zero) += c * d;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficients c_k of wp = z^-2 + sum_k c_k z^(2k-2) from the classical
/// recursion, with g2 = 16 g_s and g3 = 64 g_l.
fn wp_laurent(kmax: i64) -> Vec<Poly> {
    let mut c: Vec<Poly> = vec![Poly::new(); (kmax + 1) as usize];
    c[2].insert((1, 0), r(16, 20));
    c[3].insert((0, 1), r(64, 28));
    for k in 4..=kmax {
        let mut acc = Poly::new();
        for m in 2..=(k - 2) {
            for (key, v) in pmul(&c[m as usize], &c[(k - m) as usize]) {
                *acc.entry(key).or_insert_with(BigRational::zero) += v;
            }
        }
        let f = r(3, (2 * k + 1) * (k - 3));
        c[k as usize] = acc.into_iter().map(|(key, v)| (key, v * &f)).filter(|(_, v)| !v.is_zero()).collect();
    }
    c
}

fn as_poly(p: &GradedPoly) -> Poly {
    p.terms().map(|(k, v)| (*k, v.clone())).collect()
}

#[test]
fn a2_solution_is_quarter_wp() {
    let sol = solve_formal(CurveType::A2, 1, 20).unwrap();
    let c = wp_laurent(11);
    assert_eq!(as_poly(&sol.x_coeff(-2)), Poly::from([((0, 0), r(1, 4))]));
    for k in 2..=11i64 {
        let want: Poly = c[k as usize].iter().map(|(key, v)| (*key, v * r(1, 4))).collect();
        assert_eq!(as_poly(&sol.x_coeff(2 * k as i32 - 2)), want, "z^{}", 2 * k - 2);
    }
    // y = x'/2 for the A2 normalisation
    for (p, v) in &sol.x {
        let want: Poly = as_poly(v).into_iter().map(|(key, c)| (key, c * r(*p as i64, 2))).filter(|(_, c)| !c.is_zero()).collect();
        assert_eq!(as_poly(&sol.y_coeff(p - 1)), want, "y at z^{}", p - 1);
    }
}

#[test]
fn truncated_series_match_closed_forms() {
    let frames = sample_frames(6, 11);
    for t in CurveType::ALL {
        let sol = solve_formal(t, 1, 16).unwrap();
        for w in &frames {
            let g = invert(t, w).unwrap().g;
            let z = w.omega0 * C64::new(0.021, 0.013);
            let (xs, ys) = sol.eval(z, g.g_s, g.g_l);
            let (x, y) = (x_of_z(t, z, w).unwrap(), y_of_z(t, z, w).unwrap());
            assert!(rel(xs, x) < 1e-8, "{t} x: {xs} vs {x}");
            assert!(rel(ys, y) < 1e-8, "{t} y: {ys} vs {y}");
        }
    }
}

#[test]
fn coefficient_evaluators_match_exact_polynomials() {
    let frames = sample_frames(5, 3);
    for t in CurveType::ALL {
        let sol = solve_formal(t, 1, 16).unwrap();
        let start = if t == CurveType::A2 { 1 } else { 0 };
        for w in &frames {
            let g = invert(t, w).unwrap().g;
            for n in start..6 {
                for which in [Which::A, Which::B] {
                    let p = coefficient_power(t, which, n);
                    let exact = match which {
                        Which::A => sol.x_coeff(p),
                        Which::B => sol.y_coeff(p),
                    };
                    let want = exact.eval(g.g_s, g.g_l);
                    let got = series_coefficient(t, which, n).unwrap().eval(w).unwrap();
                    let scale = w.omega0.norm().powi(-(p + 2));
                    assert!((got - want).norm() < 1e-8 * (scale + want.norm()), "{t} {which:?}_{n}: {got} vs {want}");
                }
            }
        }
    }
}

#[test]
fn step_determinants_follow_recurrence() {
    for t in CurveType::ALL {
        let sol = solve_formal(t, 1, 16).unwrap();
        let mut ratio: Option<BigRational> = None;
        let start = if t == CurveType::A2 { 1 } else { 0 };
        for n in start..7i64 {
            let p = coefficient_power(t, Which::A, n as i32);
            let Some(d) = sol.step_determinants.get(&p) else { continue };
            let want = recurrence_determinant(t, n);
            if want == 0 {
                assert!(d.is_zero(), "{t} n={n}: solver determinant {d} should vanish");
                continue;
            }
            let q = d / BigRational::from_integer(BigInt::from(want));
            match &ratio {
                None => ratio = Some(q),
                Some(r0) => assert_eq!(&q, r0, "{t} n={n}"),
            }
        }
        assert!(ratio.is_some(), "{t}: no determinants recorded");
    }
}

// -------------------------------------------------------------- q-expansions

/// Integer coefficients of q^shift prod (1 - q^n)^e1 (1 - q^(N n))^e2, up to q^nmax.
fn eta_expansion(level: usize, e: (i32, i32), nmax: usize) -> Vec<i64> {
    let mut s = vec![0i64; nmax + 1];
    s[0] = 1;
    let mut mul_factor = |step: usize, power: i32| {
        // multiply by (1 - q^step)^power, one factor at a time
        for _ in 0..power.unsigned_abs() {
            if power > 0 {
                for i in (step..=nmax).rev() {
                    s[i] -= s[i - step];
                }
            } else {
                for i in step..=nmax {
                    s[i] += s[i - step];
                }
            }
        }
    };
    for n in 1..=nmax {
        mul_factor(n, e.0);
        if level * n <= nmax {
            mul_factor(level * n, e.1);
        }
    }
    s
}

#[test]
fn quotient_coefficients_match_eta_products() {
    for e in eta_quotients() {
        let shift = ((e.eta_exponents.0 + e.ty.level() as i32 * e.eta_exponents.1) / 24) as usize;
        assert_eq!(shift as i32, e.q_order, "{}", e.id);
        let exact = eta_expansion(e.ty.level() as usize, e.eta_exponents, 8);
        let got = quotient_fourier(&e, 8).unwrap();
        for n in 0..=8usize {
            let want = if n >= shift { exact[n - shift] as f64 } else { 0.0 };
            assert!((got[n] - want).norm() < 1e-6, "{} q^{n}: {} vs {want}", e.id, got[n]);
        }
    }
}

#[test]
fn a2_discriminant_is_ramanujan_delta() {
    let tau_coeffs = eta_expansion(1, (24, 0), 5);
    assert_eq!(&tau_coeffs[..4], &[1, -24, 252, -1472]);
    let got = a2_discriminant_fourier(5).unwrap();
    assert!(got[0].norm() < 1e-6);
    for n in 1..=5 {
        assert!((got[n] - tau_coeffs[n - 1] as f64).norm() < 1e-6, "q^{n}: {}", got[n]);
    }
}

#[test]
fn zeta_is_odd_and_quasi_periodic() {
    let w = frames()[1];
    let lat = Lattice::new(&w).unwrap();
    let z = w.omega0 * 0.17 + w.omega1 * 0.29;
    assert!(rel(wzeta(-z, &w).unwrap(), -wzeta(z, &w).unwrap()) < 1e-10);
    let (e0, e1) = lat.quasi_periods();
    let d0 = wzeta(z + w.omega0, &w).unwrap() - wzeta(z, &w).unwrap();
    let d1 = wzeta(z + w.omega1, &w).unwrap() - wzeta(z, &w).unwrap();
    assert!(rel(d0, e0) < 1e-9 && rel(d1, e1) < 1e-9);
    // Legendre relation: eta0 omega1 - eta1 omega0 = 2 pi i
    assert!(rel(e0 * w.omega1 - e1 * w.omega0, C64::new(0.0, 2.0 * PI)) < 1e-9);
}
