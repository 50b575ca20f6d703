// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

use ndarray::Array1;

use super::*;
use crate::filter::{default_omega_max, default_table, design_filter, FilterSource};
use crate::hamiltonians::{
    build_annni, build_tfim, build_uniform_field, pauli_matrix, Boundary, CouplingPreset, Pauli, PauliString,
    SpinHamiltonian,
};
use crate::linalg::{dagger, eigh, identity, max_abs, op_norm, trace, CMat, C64};

fn exact(ham: &SpinHamiltonian, delta: f64) -> FilterSource {
    FilterSource::Exact(design_filter(delta, default_omega_max(ham.norm_bound())).unwrap())
}

fn h0(n: usize) -> SpinHamiltonian {
    build_uniform_field(n, Pauli::Z, -1.0).unwrap()
}

fn wide_filter() -> FilterSource {
    FilterSource::Exact(design_filter(0.5, 8.0).unwrap())
}

#[test]
fn h0_jump_is_a_local_lowering_operator() {
    let ham = h0(3);
    let sys = DenseLindbladSystem::new(&ham, &[PauliString::single(1, Pauli::X)], &wide_filter(), true).unwrap();
    let k = sys.jumps[0].to_dense();
    // |0⟩⟨1| on site 1 is (X + iY)/2.
    let x = pauli_matrix(&PauliString::single(1, Pauli::X), 3).unwrap();
    let y = pauli_matrix(&PauliString::single(1, Pauli::Y), 3).unwrap();
    let want = (&x + &y.mapv(|z| z * C64::new(0.0, 1.0))).mapv(|z| z * 0.5);
    assert!(max_abs(&(&k - &want)) < 1e-12);
    assert!(sys.jumps[0].is_sparse());
}

#[test]
fn exact_jumps_annihilate_the_ground_state_and_lower_energy() {
    let ham = build_tfim(4, 1.0, 1.5, Boundary::Open).unwrap();
    let ops = CouplingPreset::Bulk.operators(4).unwrap();
    let sys = DenseLindbladSystem::new(&ham, &ops, &exact(&ham, 0.5), true).unwrap();
    let psi0 = sys.ground_state();
    for k in &sys.jumps {
        let kd = k.to_dense();
        assert!(kd.dot(&psi0).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-10);
        let ke = dagger(&sys.eigvecs).dot(&kd).dot(&sys.eigvecs);
        for i in 0..sys.dim() {
            for j in 0..sys.dim() {
                if sys.eigvals[i] >= sys.eigvals[j] {
                    assert!(ke[[i, j]].norm() < 1e-12);
                }
            }
        }
    }
    let rho0 = DensityMatrix::pure(&psi0).unwrap();
    assert!(max_abs(&sys.rhs(&rho0.rho)) < 1e-10);
}

/// `Σ_j p_j f(s_j) e^{iHs_j} A e^{−iHs_j}` computed term by term.
fn quadrature_by_conjugation(h: &CMat, a: &CMat, table: &crate::filter::FilterTable) -> CMat {
    let (l, u) = eigh(h).unwrap();
    let mut out = CMat::zeros(a.raw_dim());
    for ((&s, &p), &f) in table.nodes.iter().zip(&table.weights).zip(&table.values) {
        let ph = l.mapv(|x| C64::from_polar(1.0, x * s));
        let e = &u * &ph;
        let eh = e.dot(&dagger(&u));
        out = out + eh.dot(a).dot(&dagger(&eh)).mapv(|z| z * f * p);
    }
    out
}

#[test]
fn quadrature_jumps_track_exact_ones() {
    let ham = build_tfim(3, 1.0, 1.5, Boundary::Open).unwrap();
    let spec = design_filter(0.5, default_omega_max(ham.norm_bound())).unwrap();
    let table = default_table(&spec).unwrap();
    let eps = table.eps_quad;
    let hm = ham.dense_matrix().unwrap();
    let (l, u) = eigh(&hm).unwrap();
    for c in CouplingPreset::Bulk.operators(3).unwrap() {
        let a = pauli_matrix(&c, 3).unwrap();
        let kq = build_jump_quadrature(&l, &u, &a, &table);
        let ke = build_jump_exact(&l, &u, &a, &spec);
        assert!(op_norm(&(&kq - &ke)).unwrap() <= 10.0 * eps);
        let direct = quadrature_by_conjugation(&hm, &a, &table);
        assert!(max_abs(&(&direct - &kq)) < 1e-9, "{}", max_abs(&(&direct - &kq)));
        let res = kq.dot(&u.column(0)).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(res <= 10.0 * eps);
    }
    let empty = crate::filter::FilterTable {
        nodes: vec![],
        weights: vec![],
        values: vec![],
        truncation: 0.0,
        eps_quad: 0.0,
    };
    let a = pauli_matrix(&PauliString::single(0, Pauli::X), 3).unwrap();
    assert_eq!(max_abs(&build_jump_quadrature(&l, &u, &a, &empty)), 0.0);
}

#[test]
fn rhs_preserves_trace_and_hermiticity() {
    let ham = build_tfim(3, 1.0, 1.2, Boundary::Open).unwrap();
    let sys = DenseLindbladSystem::new(&ham, &CouplingPreset::Bulk.operators(3).unwrap(), &exact(&ham, 0.5), true)
        .unwrap();
    for seed in 0..5 {
        let rho = DensityMatrix::random_mixed(3, seed);
        let out = lindblad_rhs(&sys, &rho.rho).unwrap();
        assert!(trace(&out).norm() < 1e-12);
        assert!(max_abs(&(&out - &dagger(&out))) < 1e-12);
    }
}

#[test]
fn adjoint_is_the_dual_generator() {
    let ham = build_tfim(3, 0.8, 1.1, Boundary::Open).unwrap();
    let sys = DenseLindbladSystem::new(&ham, &CouplingPreset::Bulk.operators(3).unwrap(), &exact(&ham, 0.5), true)
        .unwrap();
    let rho = DensityMatrix::random_mixed(3, 9).rho;
    let o = DensityMatrix::random_mixed(3, 10).rho;
    let lhs = trace(&o.dot(&sys.rhs(&rho)));
    let rhs = trace(&sys.adjoint_rhs(&o).dot(&rho));
    assert!((lhs - rhs).norm() < 1e-12);
}

#[test]
fn unitary_evolution_conserves_purity() {
    let ham = build_tfim(3, 1.0, 1.0, Boundary::Open).unwrap();
    let sys = DenseLindbladSystem::new(&ham, &[], &exact(&ham, 0.5), true).unwrap();
    let rho0 = DensityMatrix::random_pure(3, 4);
    let opts = EvolveOptions { stride: 50, ..Default::default() };
    let traj = evolve_density(&sys, &rho0, 5.0, 0.002, &opts).unwrap();
    for p in &traj.purity {
        assert!((p - 1.0).abs() < 1e-8);
    }
}

#[test]
fn step_size_is_enforced() {
    let ham = build_tfim(3, 1.0, 1.0, Boundary::Open).unwrap();
    let sys = DenseLindbladSystem::new(&ham, &CouplingPreset::Bulk.operators(3).unwrap(), &exact(&ham, 0.5), true)
        .unwrap();
    let r = evolve_density(&sys, &DensityMatrix::all_up(3), 1.0, 0.5, &EvolveOptions::default());
    assert!(matches!(r, Err(crate::Error::StepSize(_))));
}

#[test]
fn ground_start_has_zero_mixing_times() {
    let ham = build_tfim(3, 1.0, 1.5, Boundary::Open).unwrap();
    let sys = DenseLindbladSystem::new(&ham, &CouplingPreset::Bulk.operators(3).unwrap(), &exact(&ham, 0.5), true)
        .unwrap();
    let rho0 = DensityMatrix::pure(&sys.ground_state()).unwrap();
    let dt = 0.05 / sys.rate_bound().unwrap();
    let traj = evolve_density(&sys, &rho0, 1.0, dt, &EvolveOptions { stride: 10, ..Default::default() }).unwrap();
    let rep = mixing_times(&traj, 0.1, "ground");
    assert_eq!(rep.tau_trace, Some(0.0));
    assert_eq!(rep.tau_fidelity, Some(0.0));
    assert_eq!(rep.tau_energy, Some(0.0));
}

#[test]
fn bulk_h0_fidelity_converges() {
    let n = 3;
    let ham = h0(n);
    let sys = DenseLindbladSystem::new(&ham, &CouplingPreset::Bulk.operators(n).unwrap(), &wide_filter(), true).unwrap();
    let dt = 0.1 / sys.rate_bound().unwrap();
    let traj = evolve_density(&sys, &DensityMatrix::maximally_mixed(n), 8.0, dt, &EvolveOptions { stride: 20, ..Default::default() })
        .unwrap();
    // Each site relaxes independently: ⟨0|ρ_j|0⟩ = 1 − e^{−2t}/2.
    for (t, f) in traj.times.iter().zip(&traj.fidelity) {
        let want = (1.0 - 0.5 * (-2.0 * t).exp()).powi(n as i32);
        assert!((f * f - want).abs() < 1e-6, "t={t}: {} vs {want}", f * f);
    }
    assert!(traj.trace_drift_rate < 1e-8);
}

#[test]
fn fuchs_van_de_graaf_and_trivial_distances() {
    for seed in 0..40u64 {
        let a = if seed % 2 == 0 { DensityMatrix::random_mixed(2, seed) } else { DensityMatrix::random_pure(2, seed) };
        let b = if seed % 3 == 0 { DensityMatrix::random_pure(2, seed + 100) } else { DensityMatrix::random_mixed(2, seed + 100) };
        let d = trace_distance(&a.rho, &b.rho).unwrap();
        let f = fidelity(&a.rho, &b.rho).unwrap();
        assert!(1.0 - f <= d + 1e-10);
        assert!(d <= (1.0 - f * f).max(0.0).sqrt() + 1e-10);
    }
    let r = DensityMatrix::random_mixed(2, 7);
    assert!(trace_distance(&r.rho, &r.rho).unwrap() < 1e-12);
    assert!((fidelity(&r.rho, &r.rho).unwrap() - 1.0).abs() < 1e-8);
    let up = DensityMatrix::all_up(2);
    let down = DensityMatrix::all_down(2);
    assert!((trace_distance(&up.rho, &down.rho).unwrap() - 1.0).abs() < 1e-12);
    assert!(fidelity(&up.rho, &down.rho).unwrap() < 1e-12);
}

#[test]
fn liouvillian_matches_rhs_and_has_a_kernel() {
    let ham = build_tfim(2, 1.0, 1.3, Boundary::Open).unwrap();
    let sys = DenseLindbladSystem::new(&ham, &CouplingPreset::Bulk.operators(2).unwrap(), &exact(&ham, 0.5), true)
        .unwrap();
    let l = liouvillian_matrix(&sys).unwrap();
    let rho = DensityMatrix::random_mixed(2, 3).rho;
    let via_l = unvectorize(&l.dot(&vectorize(&rho)), 4);
    assert!(max_abs(&(via_l - sys.rhs(&rho))) < 1e-12);
    let spec = liouvillian_spectrum(&sys).unwrap();
    assert!(spec[0].norm() < 1e-9);
    assert!(spec.iter().all(|z| z.re < 1e-9));
    assert!(liouvillian_gap(&spec, 1e-9).unwrap() > 0.0);
    let unitary = DenseLindbladSystem::new(&ham, &[], &exact(&ham, 0.5), true).unwrap();
    assert!(liouvillian_spectrum(&unitary).unwrap().iter().all(|z| z.re.abs() < 1e-10));
    let big = DenseLindbladSystem::new(&h0(6), &[], &wide_filter(), true).unwrap();
    assert!(liouvillian_matrix(&big).is_err());
}

#[test]
fn oscillator_norm_examples() {
    let n = 3;
    assert!(oscillator_norm(&identity(8), n).unwrap() < 1e-12);
    let z0 = pauli_matrix(&PauliString::single(0, Pauli::Z), n).unwrap();
    let x0 = pauli_matrix(&PauliString::single(0, Pauli::X), n).unwrap();
    assert!((oscillator_norm(&z0, n).unwrap() - 1.0).abs() < 1e-12);
    assert!((oscillator_norm(&x0, n).unwrap() - 1.0).abs() < 1e-12);
    let zz = pauli_matrix(&PauliString::parse("Z0 Z2").unwrap(), n).unwrap();
    assert!((oscillator_norm(&zz, n).unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn heisenberg_rates_without_perturbation() {
    let ham = h0(2);
    let ops = CouplingPreset::SiteX.operators(2).unwrap();
    let sys = DenseLindbladSystem::new(&ham, &ops, &wide_filter(), false).unwrap();
    let dt = 0.05 / sys.rate_bound().unwrap();
    let z = pauli_matrix(&PauliString::single(0, Pauli::Z), 2).unwrap();
    let x = pauli_matrix(&PauliString::single(0, Pauli::X), 2).unwrap();
    let rz = heisenberg_decay_check(&sys, &z, 10.0, dt, 20).unwrap();
    let rx = heisenberg_decay_check(&sys, &x, 20.0, dt, 20).unwrap();
    assert!((rz.fit.rate - 1.0).abs() < 1e-6, "{}", rz.fit.rate);
    assert!((rx.fit.rate - 0.5).abs() < 1e-6, "{}", rx.fit.rate);
    for (c, t) in rz.centered_norms.iter().zip(&rz.norms) {
        assert!(c <= &(t + 1e-12));
    }
}

#[test]
fn translation_sectors_block_diagonalize_annni() {
    let basis = SymmetryBasis::translation(5).unwrap();
    assert_eq!(basis.total_dim(), 32);
    let v: Vec<CMat> = basis.sectors.iter().map(|s| s.v.clone()).collect();
    for (a, va) in v.iter().enumerate() {
        for (b, vb) in v.iter().enumerate() {
            let g = dagger(va).dot(vb);
            let want = if a == b { identity(va.ncols()) } else { CMat::zeros(g.raw_dim()) };
            assert!(max_abs(&(g - want)) < 1e-12);
        }
    }
}

fn annni_observables(l: usize) -> Vec<(String, CMat)> {
    let mut m1 = CMat::zeros((1 << l, 1 << l));
    let mut m2 = CMat::zeros((1 << l, 1 << l));
    for i in 0..l {
        let a = PauliString::from_pairs(&[(i, Pauli::Z), ((i + 1) % l, Pauli::Z)], 1.0).unwrap();
        let b = PauliString::from_pairs(&[(i, Pauli::Z), ((i + 2) % l, Pauli::Z)], 1.0).unwrap();
        m1 = m1 + pauli_matrix(&a, l).unwrap();
        m2 = m2 + pauli_matrix(&b, l).unwrap();
    }
    let s = 1.0 / (4.0 * l as f64);
    vec![("m1".into(), m1.mapv(|z| z * s)), ("m2".into(), m2.mapv(|z| z * s))]
}

#[test]
fn sector_engine_matches_full_dense_engine() {
    let l = 5;
    let ham = build_annni(l, 2.0, 0.6, 0.2, Boundary::Periodic).unwrap();
    let filter = FilterSource::Exact(design_filter(0.2, 2.0 * ham.norm_bound()).unwrap());
    let full = DenseLindbladSystem::new(&ham, &CouplingPreset::Annni.operators(l).unwrap(), &filter, true).unwrap();
    let parity = pauli_matrix(&PauliString::parse("X0 X1 X2 X3 X4").unwrap(), l).unwrap();
    let basis = SymmetryBasis::translation(l).unwrap().split_by(&parity).unwrap();
    let base = [PauliString::single(0, Pauli::X), PauliString::single(0, Pauli::Z)];
    let red = SectorLindblad::new(&ham, &base, &basis, &filter, true).unwrap();
    let mut sum_k2 = 0.0;
    for k in &full.jumps {
        sum_k2 += k.norm().unwrap().powi(2);
    }
    assert!((red.jump_norm_sq - sum_k2).abs() < 1e-9);
    let obs = annni_observables(l);
    let dt = 0.1 / full.rate_bound().unwrap();
    let rho0 = DensityMatrix::all_down(l);
    let opts = EvolveOptions { stride: 40, observables: obs.clone(), ..Default::default() };
    let a = evolve_density(&full, &rho0, 3.0, dt, &opts).unwrap();
    let blocks: Vec<(String, Vec<CMat>)> = obs.iter().map(|(n, o)| (n.clone(), red.observable(o))).collect();
    let b = red.evolve(&red.project(&rho0.rho), 3.0, dt, 40, &blocks).unwrap();
    assert_eq!(a.times.len(), b.times.len());
    assert_eq!(a.manifold_dim, red.manifold_dim());
    for i in 0..a.times.len() {
        assert!((a.energy[i] - b.energy[i]).abs() < 1e-7, "energy at {}", a.times[i]);
        assert!((a.fidelity[i].powi(2) - b.overlap[i]).abs() < 1e-7);
        for name in ["m1", "m2"] {
            assert!((a.observables[name][i] - b.observables[name][i]).abs() < 1e-7);
        }
    }
}

#[test]
fn sector_projection_round_trip_for_symmetric_states() {
    let l = 4;
    let ham = build_annni(l, 2.0, 0.6, 0.2, Boundary::Periodic).unwrap();
    let filter = FilterSource::Exact(design_filter(0.2, 2.0 * ham.norm_bound()).unwrap());
    let red = SectorLindblad::new(&ham, &[PauliString::single(0, Pauli::X)], &SymmetryBasis::translation(l).unwrap(), &filter, true)
        .unwrap();
    let rho = DensityMatrix::all_down(l).rho;
    assert!(max_abs(&(red.to_full(&red.project(&rho)) - &rho)) < 1e-12);
    let psi: Array1<C64> = red.sectors[0].basis.column(0).to_owned();
    assert!((psi.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-12);
}
