use super::vec3::Point3;
use super::GeomError;
use crate::rng::SplitMix64;

/// Uniform samples inside a solid hemisphere of the given radius: flat face
/// on the local y = 0 plane, dome along +y. Rejection sampling from the
/// enclosing cube keeps the density exactly uniform; the point order is the
/// acceptance order of the seeded stream, so equal seeds give bit-identical
/// sets on every platform.
pub fn sample_hemisphere(count: usize, radius: f64, seed: u64) -> Result<Vec<Point3>, GeomError> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(GeomError::InvalidRadius(radius));
    }
    if count == 0 {
        return Err(GeomError::InvalidCount(count));
    }
    let mut rng = SplitMix64::new(seed);
    let mut pts = Vec::with_capacity(count);
    while pts.len() < count {
        let x = rng.uniform(-radius, radius);
        let y = rng.uniform(0.0, radius);
        let z = rng.uniform(-radius, radius);
        if x * x + y * y + z * z <= radius * radius {
            pts.push(Point3::new(x, y, z));
        }
    }
    Ok(pts)
}
