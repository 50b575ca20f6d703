// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

use ndarray::Array1;

use super::*;
use crate::filter::{default_omega_max, default_table, design_filter};
use crate::fit::fit_decay_rate;
use crate::hamiltonians::{
    build_cluster, build_tfim, jordan_wigner, pauli_matrix, periodized_h, periodized_tfim_modes, Boundary, Pauli,
    PauliString, SpinHamiltonian,
};
use crate::linalg::{dagger, eigh, linear_fit, C64};

fn boundary_couplings(n: usize) -> Vec<PauliString> {
    vec![
        PauliString::single(0, Pauli::X),
        PauliString::single(0, Pauli::Y),
        PauliString::single(n - 1, Pauli::X),
        PauliString::single(n - 1, Pauli::Y),
    ]
}

fn exact_filter(ham: &SpinHamiltonian, delta: f64) -> FilterSource {
    FilterSource::Exact(design_filter(delta, default_omega_max(ham.norm_bound())).unwrap())
}

fn ground_vector(ham: &SpinHamiltonian) -> (f64, Array1<C64>) {
    let (vals, vecs) = eigh(&ham.dense_matrix().unwrap()).unwrap();
    (vals[0], vecs.column(0).to_owned())
}

fn expectation(ham_n: usize, label: &str, psi: &Array1<C64>) -> f64 {
    let m = pauli_matrix(&PauliString::parse(label).unwrap(), ham_n).unwrap();
    psi.mapv(|z| z.conj()).dot(&m.dot(psi)).re
}

#[test]
fn vacuum_energy_matches_dense_ground() {
    let ham = build_tfim(6, 1.0, 1.5, Boundary::Open).unwrap();
    let h = jordan_wigner(&ham).unwrap();
    let vac = vacuum_covariance(&h).unwrap();
    let (e0, _) = ground_vector(&ham);
    let ev = energy(&h, &vac.gamma).unwrap();
    assert!((ev - e0).abs() < 1e-10, "{ev} {e0} {}", h.ground_energy().unwrap());
    assert!((h.ground_energy().unwrap() - e0).abs() < 1e-10);
    vac.validate().unwrap();
    assert!((vac.physicality().unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn product_state_energy_and_particle_number() {
    let ham = build_tfim(4, 0.7, 1.3, Boundary::Open).unwrap();
    let h = jordan_wigner(&ham).unwrap();
    // All sites in |1⟩: ⟨Z⟩ = −1, ⟨XX⟩ = 0.
    let g = CovarianceState::all_down(4);
    let e = energy(&h, &g.gamma).unwrap();
    assert!((e - 4.0 * 1.3).abs() < 1e-12, "{e}");
    let qp = h.quasiparticles().unwrap();
    let mixed = CovarianceState::maximally_mixed(4);
    assert!((particle_number(&qp, &mixed.gamma) - 2.0).abs() < 1e-12);
    let vac = vacuum_from_quasiparticles(&qp).unwrap();
    assert!(particle_number(&qp, &vac.gamma).abs() < 1e-12);
}

#[test]
fn product_state_correlations_match_pauli_expectations() {
    let excited = [true, false, true];
    let g = CovarianceState::product_state(&excited);
    for (j, &e) in excited.iter().enumerate() {
        let z = if e { -1.0 } else { 1.0 };
        assert_eq!(g.gamma[[j, j + 3]], -z / 2.0);
    }
}

#[test]
fn exact_filter_steady_state_is_the_vacuum() {
    let ham = build_tfim(6, 1.0, 1.5, Boundary::Open).unwrap();
    let h = jordan_wigner(&ham).unwrap();
    let jumps = jumps_for_couplings(&h, &boundary_couplings(6), &exact_filter(&ham, 0.5)).unwrap();
    let gen = build_generator(&h, &jumps).unwrap();
    let (ss, res) = steady_state(&gen).unwrap();
    assert!(res < 1e-10, "{res}");
    let vac = vacuum_covariance(&h).unwrap();
    let diff = (&ss.gamma - &vac.gamma).mapv(f64::abs).fold(0.0f64, |a, &b| a.max(b));
    assert!(diff < 1e-8, "{diff}");
}

#[test]
fn rk4_and_exact_propagation_agree() {
    let ham = build_tfim(5, 1.0, 1.5, Boundary::Open).unwrap();
    let h = jordan_wigner(&ham).unwrap();
    let jumps = jumps_for_couplings(&h, &boundary_couplings(5), &exact_filter(&ham, 0.5)).unwrap();
    let gen = build_generator(&h, &jumps).unwrap();
    let g0 = CovarianceState::all_down(5);
    let a = evolve_covariance(&gen, &g0, 10.0, 0.002, Integrator::Rk4, 500).unwrap();
    let b = evolve_covariance(&gen, &g0, 10.0, 0.002, Integrator::Exact, 500).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert!((x.time - y.time).abs() < 1e-12);
        let d = (&x.gamma - &y.gamma).mapv(f64::abs).fold(0.0f64, |p, &q| p.max(q));
        assert!(d < 1e-8, "t = {}: {d}", x.time);
        let asym = (&x.gamma + &x.gamma.t()).mapv(f64::abs).fold(0.0f64, |p, &q| p.max(q));
        assert!(asym <= 1e-9);
        assert!(x.physicality().unwrap() <= 1.0 + 1e-6);
    }
}

#[test]
fn rapidity_gap_matches_energy_tail() {
    let n = 8;
    let ham = build_tfim(n, 1.0, 1.5, Boundary::Open).unwrap();
    let h = jordan_wigner(&ham).unwrap();
    let jumps = jumps_for_couplings(&h, &boundary_couplings(n), &exact_filter(&ham, 0.5)).unwrap();
    let gen = build_generator(&h, &jumps).unwrap();
    let gap = rapidity_gap(&gen).unwrap();
    let t_end = 12.0 / gap;
    let dt = t_end / 4000.0;
    let traj = evolve_covariance(&gen, &CovarianceState::all_down(n), t_end, dt, Integrator::Exact, 10).unwrap();
    let t: Vec<f64> = traj.iter().map(|s| s.time).collect();
    let e: Vec<f64> = traj.iter().map(|s| energy(&h, &s.gamma).unwrap()).collect();
    let fit = fit_decay_rate(&t, &e, h.ground_energy().unwrap()).unwrap();
    assert!(((fit.rate - gap) / gap).abs() < 0.1, "fit {} gap {gap}", fit.rate);
}

#[test]
fn effective_gap_ignores_the_slow_cluster() {
    let ham = build_tfim(6, 1.0, 1.5, Boundary::Open).unwrap();
    let h = jordan_wigner(&ham).unwrap();
    let jumps = jumps_for_couplings(&h, &boundary_couplings(6), &exact_filter(&ham, 0.5)).unwrap();
    let gen = build_generator(&h, &jumps).unwrap();
    let g = rapidity_gap(&gen).unwrap();
    assert_eq!(effective_rapidity_gap(&gen, 1e-8).unwrap(), g);
    assert!(effective_rapidity_gap(&gen, 1e6).is_err());
}

#[test]
fn sop_matches_dense_string_expectation() {
    let n = 7;
    let ham = build_cluster(n, 1.0, 0.5).unwrap();
    let h = jordan_wigner(&ham).unwrap();
    let vac = vacuum_covariance(&h).unwrap();
    let (_, psi) = ground_vector(&ham);
    for &(a, b) in &[(0usize, 2usize), (0, 4), (1, 5), (0, 6), (2, 6)] {
        let m = (b - a) / 2;
        let mut label = format!("X{a}");
        for s in (a + 1..b).step_by(2) {
            label.push_str(&format!(" Z{s}"));
        }
        label.push_str(&format!(" X{b}"));
        let want = sop_sign(m) * expectation(n, &label, &psi);
        let got = sop(&vac.gamma, a, b).unwrap();
        assert!((got - want).abs() < 1e-9, "({a},{b}): {got} vs {want}");
    }
}

#[test]
fn sop_span_is_checked() {
    let g = CovarianceState::maximally_mixed(5).gamma;
    assert!(sop(&g, 0, 3).is_err());
    assert!(sop(&g, 2, 2).is_err());
    assert!(sop(&g, 2, 6).is_err());
    assert_eq!(sop_indices(5, 0, 4).unwrap(), vec![2, 4, 5, 7]);
    assert_eq!(sop_sign(1), 1.0);
    assert_eq!(sop_sign(2), -1.0);
    assert_eq!(sop_sign(3), -1.0);
    assert_eq!(sop_sign(4), 1.0);
}

#[test]
fn jump_conjugate_relation() {
    // With the exact filter, a Hermitian coupling produces a jump that only lowers energy,
    // so its creation components vanish.
    let ham = build_tfim(5, 1.0, 1.5, Boundary::Open).unwrap();
    let h = jordan_wigner(&ham).unwrap();
    let jumps = jumps_for_couplings(&h, &boundary_couplings(5), &exact_filter(&ham, 0.5)).unwrap();
    let s = nonhermitian_summary(&h, &jumps).unwrap();
    assert!(s.creation_residue < 1e-12);
}

#[test]
fn nonhermitian_gap_bounds_x_spectrum() {
    let ham = build_tfim(6, 1.0, 1.5, Boundary::Open).unwrap();
    let h = jordan_wigner(&ham).unwrap();
    let jumps = jumps_for_couplings(&h, &boundary_couplings(6), &exact_filter(&ham, 0.5)).unwrap();
    let gen = build_generator(&h, &jumps).unwrap();
    let s = nonhermitian_summary(&h, &jumps).unwrap();
    // The drift X restricted to annihilation modes is the non-Hermitian Hamiltonian up to a factor.
    let g = rapidity_gap(&gen).unwrap();
    assert!((2.0 * s.gap - g).abs() < 1e-8 * g.max(1.0), "{} vs {g}", s.gap);
    assert!(s.diagonalizable);
}

#[test]
fn periodized_summaries_agree() {
    let n = 10;
    let xi = 2.0 / 3.0;
    let h = periodized_h(n, xi).unwrap();
    let filter = FilterSource::Exact(design_filter(0.3, 8.0).unwrap());
    let couplings = [PauliString::single(0, Pauli::X), PauliString::single(0, Pauli::Y)];
    let jumps = jumps_for_couplings(&h, &couplings, &filter).unwrap();
    let a = nonhermitian_summary(&h, &jumps).unwrap();
    let b = nonhermitian_summary_modes(&periodized_tfim_modes(n, xi).unwrap()).unwrap();
    let sorted = |v: &Array1<C64>| {
        let mut x: Vec<C64> = v.to_vec();
        x.sort_by(|p, q| p.im.total_cmp(&q.im).then(p.re.total_cmp(&q.re)));
        x
    };
    for (p, q) in sorted(&a.eigvals).iter().zip(sorted(&b.eigvals).iter()) {
        assert!((p - q).norm() < 1e-9, "{p} vs {q}");
    }
    assert!((a.gap - b.gap).abs() < 1e-10);
}

#[test]
fn mixing_bound_closed_form() {
    let s = NonHermitianSummary {
        h_nh: crate::linalg::CMat::zeros((1, 1)),
        eigvals: Array1::zeros(1),
        gap: 0.1,
        kappa_v: 2.0,
        diagonalizable: true,
        creation_residue: 0.0,
    };
    let tau = mixing_bound(&s, 100, 0.01).unwrap();
    assert!((tau - 2000f64.ln() / 0.1).abs() < 1e-9, "{tau}");
    let bad = NonHermitianSummary { kappa_v: 1e7, ..s.clone() };
    assert!(mixing_bound(&bad, 100, 0.01).is_err());
    let closed = NonHermitianSummary { gap: 0.0, ..s };
    assert!(mixing_bound(&closed, 100, 0.01).is_err());
}

#[test]
fn perturbative_determinants_and_scaling() {
    let xi = 2.0 / 3.0;
    let mut ns = Vec::new();
    let mut gaps = Vec::new();
    for n in [16usize, 32, 64, 128] {
        let p = perturbative_gap_tfim(n, xi).unwrap();
        for &(k, det, formula) in &p.determinants {
            assert!((det - formula).abs() < 1e-12, "N={n} k={k}: {det} vs {formula}");
        }
        assert!((p.k0_rate - 1.0 / n as f64).abs() < 1e-12);
        let exact = nonhermitian_summary_modes(&periodized_tfim_modes(n, xi).unwrap()).unwrap().gap;
        let ratio = p.gap / exact;
        assert!((0.5..=2.0).contains(&ratio), "N={n}: {ratio}");
        ns.push((n as f64).ln());
        gaps.push(p.gap.ln());
    }
    let (slope, _, _) = linear_fit(&ns, &gaps);
    assert!((slope + 3.0).abs() < 0.2, "{slope}");
}

#[test]
fn quadrature_filter_close_to_exact() {
    let ham = build_tfim(5, 1.0, 1.5, Boundary::Open).unwrap();
    let h = jordan_wigner(&ham).unwrap();
    let spec = design_filter(0.5, default_omega_max(ham.norm_bound())).unwrap();
    let table = default_table(&spec).unwrap();
    let eps = table.eps_quad;
    let a = filtered_matrix(&h, &FilterSource::Exact(spec)).unwrap();
    let b = filtered_matrix(&h, &FilterSource::Quadrature(table)).unwrap();
    let d = (&a - &b).mapv(|z| z.norm()).fold(0.0f64, |p, &q| p.max(q));
    assert!(d <= 2.0 * eps * (2 * 5) as f64, "{d} vs eps {eps}");
    // f̂(−2h) is Hermitian for a real filter.
    let herm = (&a - &dagger(&a)).mapv(|z| z.norm()).fold(0.0f64, |p, &q| p.max(q));
    assert!(herm < 1e-12);
}
