mod common;

use std::f64::consts::PI;

use common::{random_spectrum, C64};
use proptest::prelude::*;
use zakharov::diagnostics::{energy, error_triple, mass};
use zakharov::initial_data::{random_rough_fields, RoughDataSpec, UniformStream};
use zakharov::spectral::{inverse_dft, Grid, Spectrum, WaveVector};
use zakharov::state::{WaveData, ZState};

#[test]
fn mass_of_constant_field() {
    let grid = Grid::new(1, 8).unwrap();
    let mut one = Spectrum::zeros(grid);
    one.set(&WaveVector::new(&[0]), C64::new(1.0, 0.0));
    assert!((mass(&one) - 2.0 * PI).abs() < 1e-14);
}

#[test]
fn three_dimensional_error_exponents() {
    let grid = Grid::new(3, 4).unwrap();
    let k = WaveVector::new(&[1, 0, 0]);
    let minus = WaveVector::new(&[-1, 0, 0]);
    let delta = 0.2;
    let zero = ZState::zeros(grid);

    let mut e = Spectrum::zeros(grid);
    e.set(&k, C64::new(delta, 0.0));
    let err = error_triple(&ZState::new(e, Spectrum::zeros(grid)).unwrap(), &zero, 0.5).unwrap();
    assert!((err.e_e - 2f64.sqrt() * delta).abs() < 1e-15);

    let mut z = Spectrum::zeros(grid);
    z.set(&k, C64::new(delta, 0.0));
    z.set(&minus, C64::new(delta, 0.0));
    let data = WaveData::new(z.clone(), Spectrum::zeros(grid)).unwrap();
    let err = error_triple(&ZState::from_data(Spectrum::zeros(grid), &data).unwrap(), &zero, 0.5).unwrap();
    assert!((err.e_z - 2f64.powf(0.25) * 2f64.sqrt() * delta).abs() < 1e-15);
    assert_eq!(err.e_zt, 0.0);

    let data = WaveData::new(Spectrum::zeros(grid), z).unwrap();
    let err = error_triple(&ZState::from_data(Spectrum::zeros(grid), &data).unwrap(), &zero, 0.5).unwrap();
    assert!((err.e_zt - 2f64.powf(-0.25) * 2f64.sqrt() * delta).abs() < 1e-15);
    assert!(err.e_z < 1e-16);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mass_matches_quadrature(dim in 1usize..=3, h in 1usize..=4, seed in any::<u64>()) {
        let grid = Grid::new(dim, 2 * h).unwrap();
        let e = random_spectrum(grid, &mut UniformStream::new(seed));
        let cell = (2.0 * PI / grid.n() as f64).powi(dim as i32);
        let quad: f64 = inverse_dft(&e).values().iter().map(|v| v.norm_sqr()).sum::<f64>() * cell;
        prop_assert!((mass(&e) - quad).abs() <= 1e-12 * quad);
    }

    #[test]
    fn energy_is_gauge_invariant(dim in 1usize..=2, seed in any::<u64>(), phi in -3.2f64..3.2) {
        let grid = Grid::new(dim, 8).unwrap();
        let (e, data) = random_rough_fields(&RoughDataSpec::new(grid, 0.75, seed).unwrap()).unwrap();
        let a = energy(&e, &data).unwrap();
        let b = energy(&e.scale(C64::from_polar(1.0, phi)), &data).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn error_triple_triangle_inequality(seed in any::<u64>()) {
        let grid = Grid::new(2, 6).unwrap();
        let mut stream = UniformStream::new(seed);
        let mut state = || ZState::new(random_spectrum(grid, &mut stream), random_spectrum(grid, &mut stream)).unwrap();
        let (a, b, c) = (state(), state(), state());
        let ab = error_triple(&a, &b, 0.0).unwrap();
        let bc = error_triple(&b, &c, 0.0).unwrap();
        let ac = error_triple(&a, &c, 0.0).unwrap();
        prop_assert!(ac.e_e <= ab.e_e + bc.e_e + 1e-12);
        prop_assert!(ac.e_z <= ab.e_z + bc.e_z + 1e-12);
        prop_assert!(ac.e_zt <= ab.e_zt + bc.e_zt + 1e-12);
    }
}
