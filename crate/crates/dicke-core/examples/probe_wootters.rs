// temporary probe: measure worst-case deviation of the eigen route vs the
// shortcut along analytic trajectories
use dicke_core::dynamics::{evolve_analytic, DecayParams};
use dicke_core::entanglement_dynamics::concurrence_at;
use dicke_core::sampling;
use rand::SeedableRng;

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(51);
    let mut worst = (0.0f64, 0.0f64);
    for &g in &[0.25, 0.5, 0.75, 0.9] {
        let p = DecayParams::new(1.0, g).unwrap();
        for _ in 0..50 {
            let rho0 = sampling::random_single_excitation(&mut rng);
            for k in 0..=80 {
                let t = 10.0 * k as f64 / 80.0;
                let direct = concurrence_at(&rho0, &p, t).unwrap();
                let via = evolve_analytic(&rho0, &p, t).unwrap().concurrence().unwrap();
                let dev = (direct - via).abs();
                if dev > worst.0 { worst = (dev, t); }
            }
        }
    }
    println!("worst trajectory deviation: {:.3e} at t={}", worst.0, worst.1);
}
