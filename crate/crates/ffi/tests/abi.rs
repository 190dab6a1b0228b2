use std::ffi::{CStr, CString};
use std::ptr;

use nshd_ffi::*;

const TG: &str = r#"
schema_version = 1
[solver]
n = 2
resolution = 32
alpha = 1.0
t_end = 1.0
[initial]
kind = "taylor_green"
"#;

fn new_sim(toml: &str) -> (NshdStatus, *mut NshdSimulation) {
    let text = CString::new(toml).unwrap();
    let mut sim = ptr::null_mut();
    let status = unsafe { nshd_simulation_new_from_toml(text.as_ptr(), &mut sim) };
    (status, sim)
}

fn last_error() -> String {
    let p = nshd_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn taylor_green_decays_through_the_abi() {
    let (status, sim) = new_sim(TG);
    assert_eq!(status, NshdStatus::Ok);
    unsafe {
        assert_eq!(nshd_simulation_dimension(sim), 2);
        assert_eq!(nshd_simulation_mode_count(sim), 32 * 32);
        let e0 = nshd_simulation_energy(sim);
        assert!((e0 - std::f64::consts::PI.powi(2)).abs() < 1e-12);
        assert_eq!(nshd_simulation_advance(sim, 1.0), NshdStatus::Ok);
        assert_eq!(nshd_simulation_time(sim), 1.0);
        let e = nshd_simulation_energy(sim);
        assert!((e / e0 - (-4.0f64).exp()).abs() < 1e-12);

        let mut d = NshdDiagnostics::default();
        assert_eq!(nshd_simulation_diagnostics(sim, &mut d), NshdStatus::Ok);
        assert_eq!(d.energy, e);
        assert_eq!(d.step, nshd_simulation_step_count(sim));
        assert!(d.dt > 0.0 && !d.diverged && !d.resolution_loss);

        // û_0 at k = (1, 1) is -i/4 for amplitude 1; decayed by e^{-2}.
        let mut buf = vec![0.0; 2 * 32 * 32];
        assert_eq!(nshd_simulation_coefficients(sim, 0, buf.as_mut_ptr(), buf.len()), NshdStatus::Ok);
        let idx = 32 + 1;
        assert!((buf[2 * idx + 1] - (-0.25 * (-2.0f64).exp())).abs() < 1e-14, "{}", buf[2 * idx + 1]);

        let mut grid = vec![0.0; 32 * 32];
        assert_eq!(nshd_simulation_velocity(sim, 1, grid.as_mut_ptr(), grid.len()), NshdStatus::Ok);
        let peak = grid.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!((peak - (-2.0f64).exp()).abs() < 1e-12);
        nshd_simulation_free(sim);
    }
}

#[test]
fn single_steps_follow_the_policy() {
    let (_, sim) = new_sim(&TG.replace("t_end = 1.0", "t_end = 1.0\nfixed_dt = 0.01"));
    unsafe {
        for _ in 0..3 {
            assert_eq!(nshd_simulation_step(sim), NshdStatus::Ok);
        }
        assert!((nshd_simulation_time(sim) - 0.03).abs() < 1e-15);
        assert_eq!(nshd_simulation_step_fixed(sim, 0.005, 2), NshdStatus::Ok);
        assert_eq!(nshd_simulation_step_count(sim), 5);
        assert_eq!(nshd_simulation_step_fixed(sim, -1.0, 1), NshdStatus::InvalidArgument);
        assert_eq!(nshd_simulation_advance(sim, 0.0), NshdStatus::InvalidArgument);
        nshd_simulation_free(sim);
    }
}

#[test]
fn bad_inputs_map_to_codes() {
    let (status, sim) = new_sim(&TG.replace("resolution = 32", "resolution = 33"));
    assert_eq!(status, NshdStatus::InvalidConfig);
    assert!(sim.is_null());
    assert!(last_error().contains("solver.resolution"));

    let (status, _) = new_sim("schema_version = 1\n[solver\n");
    assert_eq!(status, NshdStatus::ConfigParse);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { nshd_simulation_new_from_toml(ptr::null(), &mut out) }, NshdStatus::NullPointer);
    unsafe {
        assert_eq!(nshd_simulation_step(ptr::null_mut()), NshdStatus::NullPointer);
        assert!(nshd_simulation_time(ptr::null()).is_nan());
        nshd_simulation_free(ptr::null_mut());
    }

    let (_, sim) = new_sim(TG);
    let mut small = [0.0; 4];
    unsafe {
        assert_eq!(nshd_simulation_coefficients(sim, 0, small.as_mut_ptr(), 4), NshdStatus::InvalidArgument);
        assert_eq!(nshd_simulation_coefficients(sim, 2, small.as_mut_ptr(), 4), NshdStatus::InvalidArgument);
        let bad = CString::new("/proc/nope/final.chk").unwrap();
        assert_eq!(nshd_simulation_write_checkpoint(sim, bad.as_ptr()), NshdStatus::Io);
        nshd_simulation_free(sim);
    }
}

#[test]
fn divergence_is_sticky() {
    // A huge amplitude on a coarse grid with a large fixed step blows up.
    let cfg = r#"
schema_version = 1
[solver]
n = 2
resolution = 16
alpha = 1.0
inviscid = true
t_end = 10.0
fixed_dt = 0.5
[initial]
kind = "random_band"
amplitude = 1000.0
seed = 1
band = [1, 5]
"#;
    let (status, sim) = new_sim(cfg);
    assert_eq!(status, NshdStatus::Ok);
    unsafe {
        assert_eq!(nshd_simulation_advance(sim, 10.0), NshdStatus::Diverged);
        assert!(last_error().contains("diverged"));
        assert_eq!(nshd_simulation_step(sim), NshdStatus::Diverged);
        nshd_simulation_free(sim);
    }
}

#[test]
fn checkpoint_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.chk");
    let (_, sim) = new_sim(TG);
    unsafe {
        assert_eq!(nshd_simulation_advance(sim, 0.25), NshdStatus::Ok);
        let p = CString::new(path.to_str().unwrap()).unwrap();
        assert_eq!(nshd_simulation_write_checkpoint(sim, p.as_ptr()), NshdStatus::Ok);
        let (field, header) = nshd::spectral::checkpoint::load(&path).unwrap();
        assert_eq!(field.time, 0.25);
        assert_eq!(header.alpha, 1.0);
        assert_eq!(nshd::diagnostics::energy(&field), nshd_simulation_energy(sim));
        nshd_simulation_free(sim);
    }
}

#[test]
fn exponents() {
    let (mut num, mut den) = (0i64, 0i64);
    unsafe {
        assert_eq!(nshd_lions_exponent(3, &mut num, &mut den), NshdStatus::Ok);
        assert_eq!((num, den), (5, 4));
        let mut class = NshdClassification::Critical;
        assert_eq!(nshd_solvability_margin(3, 1, 1, &mut num, &mut den, &mut class), NshdStatus::Ok);
        assert_eq!((num, den, class), (-1, 2, NshdClassification::Supercritical));
        assert_eq!(nshd_solvability_margin(2, 2, 2, &mut num, &mut den, &mut class), NshdStatus::Ok);
        assert_eq!((num, den, class), (0, 1, NshdClassification::Critical));
        assert_eq!(nshd_solvability_margin(2, 1, 0, &mut num, &mut den, &mut class), NshdStatus::InvalidArgument);
        assert_eq!(nshd_lions_exponent(1, &mut num, &mut den), NshdStatus::InvalidArgument);
    }
    let v = unsafe { CStr::from_ptr(nshd_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
