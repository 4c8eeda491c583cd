use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::vec3::Vec3;

use super::{Mode, ModeObservables};

/// Smallest admissible per-axis grid for a mode: four samples per period.
pub fn min_grid(n: [i64; 3]) -> usize {
    let m = n.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0).max(1);
    4 * m as usize
}

/// Volume integrals of the single-mode energy, momentum and intrinsic
/// angular momentum densities, by the trapezoidal rule on a periodic
/// `grid³` lattice over the box `[0, L)³` at `t = 0`.
pub fn mode_observables<T: Real>(
    mode: &Mode<T>,
    box_len: T,
    grid: usize,
    k: &PhysicalConstants<T>,
) -> Result<ModeObservables<T>> {
    let floor = min_grid(mode.n);
    if grid < floor {
        return Err(Error::Resolution { got: grid, min: floor });
    }
    let h = box_len / T::from_int(grid as i64);
    let volume = box_len * box_len * box_len;
    let half = T::lit(0.5);
    let c2 = k.c * k.c;

    // Each x-slab is summed in a fixed order; slabs are then combined by a
    // fixed-topology pairwise tree.
    let slabs: Vec<Partial<T>> = (0..grid)
        .map(|i| {
            let mut acc = Partial::default();
            let x = T::from_int(i as i64) * h;
            for j in 0..grid {
                let y = T::from_int(j as i64) * h;
                for l in 0..grid {
                    let z = T::from_int(l as i64) * h;
                    let s = mode.field(&Vec3::new(x, y, z), T::zero(), volume, k.hbar);
                    acc.energy = acc.energy + half * (s.e.dot(&s.e) + c2 * s.b.dot(&s.b));
                    acc.momentum += s.e.cross(&s.b);
                    acc.spin += s.e.cross(&s.a);
                }
            }
            acc
        })
        .collect();
    let total = pairwise(&slabs);
    let cell = h * h * h;
    Ok(ModeObservables {
        energy: total.energy * cell,
        momentum: total.momentum * cell,
        angular_momentum: total.spin * cell,
    })
}

#[derive(Clone, Copy, Default)]
struct Partial<T> {
    energy: T,
    momentum: Vec3<T>,
    spin: Vec3<T>,
}

fn pairwise<T: Real>(parts: &[Partial<T>]) -> Partial<T> {
    match parts.len() {
        0 => Partial::default(),
        1 => parts[0],
        n => {
            let (l, r) = parts.split_at(n / 2);
            let (a, b) = (pairwise(l), pairwise(r));
            Partial {
                energy: a.energy + b.energy,
                momentum: a.momentum + b.momentum,
                spin: a.spin + b.spin,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_modes::Polarization;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn axis_mode_spin() {
        let k = PhysicalConstants::<f64>::natural();
        for (gamma, sign) in [(Polarization::Plus, 1.0), (Polarization::Minus, -1.0)] {
            let mode = Mode::new([0, 0, 1], gamma, 0.4, 1.9, 1.0, 1.0).unwrap();
            let obs = mode_observables(&mode, 1.0, 8, &k).unwrap();
            assert!(rel(obs.angular_momentum[2], sign * 0.5) < 1e-9);
            assert!(obs.angular_momentum[0].abs() < 1e-12);
            assert!(obs.angular_momentum[1].abs() < 1e-12);
            assert!(rel(obs.energy, mode.omega / 2.0) < 1e-9);
            assert!(rel(obs.momentum[2], mode.omega / 2.0) < 1e-9);
        }
    }

    #[test]
    fn resolution_floor() {
        let k = PhysicalConstants::<f64>::natural();
        let mode = Mode::new([0, 3, -1], Polarization::Plus, 0.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(min_grid(mode.n), 12);
        assert_eq!(
            mode_observables(&mode, 1.0, 11, &k),
            Err(Error::Resolution { got: 11, min: 12 })
        );
        assert!(mode_observables(&mode, 1.0, 12, &k).is_ok());
    }

    #[test]
    fn phase_choice_drops_out() {
        let k = PhysicalConstants::<f64>::natural();
        let a = Mode::new([1, 2, -1], Polarization::Minus, 0.1, 0.2, 1.0, 1.0).unwrap();
        let b = Mode::new([1, 2, -1], Polarization::Minus, 5.3, 3.7, 1.0, 1.0).unwrap();
        let oa = mode_observables(&a, 1.0, 8, &k).unwrap();
        let ob = mode_observables(&b, 1.0, 8, &k).unwrap();
        assert!((oa.energy - ob.energy).abs() < 1e-12);
        assert!((oa.momentum - ob.momentum).max_abs() < 1e-12);
        assert!((oa.angular_momentum - ob.angular_momentum).max_abs() < 1e-12);
    }

    #[test]
    fn works_in_single_precision() {
        let k = PhysicalConstants::<f32>::natural();
        let mode = Mode::new([0, 1, 0], Polarization::Plus, 0.3f32, 0.8, 1.0, 1.0).unwrap();
        let obs = mode_observables(&mode, 1.0, 4, &k).unwrap();
        assert!((obs.angular_momentum[1] - 0.5).abs() < 1e-5);
    }
}
