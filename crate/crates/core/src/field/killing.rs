use crate::geometry::Point2;

/// `sin(x)/x`, continuous at 0.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0 + x.powi(4) / 120.0
    } else {
        x.sin() / x
    }
}

/// Solution of `x' = −a·y + b`, `y' = a·x + c` with `(x, y)(0) = 0`:
/// `(1/a)(b sin at + c cos at − c, c sin at − b cos at + b)`, with the `a → 0`
/// limit `(bt, ct)` taken analytically.
pub fn killing_integral_curve(a: f64, b: f64, c: f64, t: f64) -> Point2 {
    let u = 0.5 * a * t;
    // sin(at)/a and (1 − cos at)/a without division by a
    let s1 = t * sinc(a * t);
    let c1 = t * u.sin() * sinc(u);
    Point2::new(b * s1 - c * c1, c * s1 + b * c1)
}
