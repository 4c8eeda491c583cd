use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::vec3::Vec3;

/// Right-handed orthonormal frame with `e3` along the propagation direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triad<T> {
    pub e1: Vec3<T>,
    pub e2: Vec3<T>,
    pub e3: Vec3<T>,
}

/// Deterministic triad for wave-vector index `n`.
///
/// `h` is the coordinate axis along which `k̂` has the smallest absolute
/// component (ties go to x, then y, then z); `e1` is `h` with its `k̂`
/// component removed, normalized, and `e2 = e3 × e1`.
pub fn build_triad<T: Real>(n: [i64; 3]) -> Result<Triad<T>> {
    if n == [0, 0, 0] {
        return Err(Error::InvalidInput("zero wave vector".into()));
    }
    let e3 = Vec3::<T>::from_ints(n).normalize();
    let mut axis = 0;
    for i in 1..3 {
        if n[i].abs() < n[axis].abs() {
            axis = i;
        }
    }
    let h = Vec3::axis(axis);
    let e1 = (h - e3 * h.dot(&e3)).normalize();
    let e2 = e3.cross(&e1);
    Ok(Triad { e1, e2, e3 })
}
