use proptest::prelude::*;
use zakharov::initial_data::{random_rough_fields, RoughDataSpec};
use zakharov::spectral::{sobolev_norm, Grid, Spectrum};

fn draw(grid: Grid, s2: f64, seed: u64) -> (Spectrum, Spectrum, Spectrum) {
    let (e, data) = random_rough_fields(&RoughDataSpec::new(grid, s2, seed).unwrap()).unwrap();
    let (z0, z1) = data.into_parts();
    (e, z0, z1)
}

#[test]
fn same_seed_is_bitwise_identical_and_seeds_differ() {
    let grid = Grid::new(2, 16).unwrap();
    let a = draw(grid, 0.5, 9);
    let b = draw(grid, 0.5, 9);
    let bits = |s: &Spectrum| s.coeffs().iter().flat_map(|c| [c.re.to_bits(), c.im.to_bits()]).collect::<Vec<_>>();
    assert_eq!(bits(&a.0), bits(&b.0));
    assert_eq!(bits(&a.1), bits(&b.1));
    assert_eq!(bits(&a.2), bits(&b.2));
    let c = draw(grid, 0.5, 10);
    assert!(sobolev_norm(&(&a.0 - &c.0), 1.0) > 0.1);
    assert!(sobolev_norm(&(&a.1 - &c.1), 0.5) > 0.1);
}

#[test]
fn regularity_is_sharp() {
    let s2 = 0.5;
    let mean_norm = |n: usize, s: f64| {
        let grid = Grid::new(1, n).unwrap();
        (0..10).map(|seed| sobolev_norm(&draw(grid, s2, seed).1, s)).sum::<f64>() / 10.0
    };
    let above = mean_norm(256, s2 + 1.0) / mean_norm(64, s2 + 1.0);
    let below = mean_norm(256, s2 - 0.5) / mean_norm(64, s2 - 0.5);
    assert!(above > 1.5, "{above}");
    assert!(below < 1.1, "{below}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normalized_real_and_mean_free(dim in 1usize..=3, h in 1usize..=4, ds in 0.05f64..2.0, seed in any::<u64>()) {
        let grid = Grid::new(dim, 2 * h).unwrap();
        let s2 = (dim as f64 / 2.0 - 1.0).max(0.0) + ds;
        let (e, z0, z1) = draw(grid, s2, seed);
        prop_assert!((sobolev_norm(&e, s2 + 0.5) - 1.0).abs() < 1e-12);
        prop_assert!((sobolev_norm(&z0, s2) - 1.0).abs() < 1e-12);
        prop_assert!((sobolev_norm(&z1, s2 - 1.0) - 1.0).abs() < 1e-12);
        prop_assert!(z0.is_real_valued(1e-12) && z1.is_real_valued(1e-12));
        prop_assert_eq!(z1.zero_mode().norm(), 0.0);
    }
}
