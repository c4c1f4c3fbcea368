//! Real polynomials in ascending coefficient order, `p(s) = Σ c_j s^j`.

#[inline]
pub fn horner(c: &[f64], s: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &x| acc * s + x)
}

pub fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(j, &x)| j as f64 * x).collect()
}

fn trim(c: &[f64]) -> &[f64] {
    let mut n = c.len();
    while n > 0 && c[n - 1] == 0.0 {
        n -= 1;
    }
    &c[..n]
}

/// All real roots of `p`, sorted. The result depends only on the coefficients,
/// never on a search window, so slices of one polynomial share critical points.
pub fn real_roots(c: &[f64]) -> Vec<f64> {
    let c = trim(c);
    match c.len() {
        0 | 1 => Vec::new(),
        2 => vec![-c[0] / c[1]],
        3 => quadratic_roots(c[0], c[1], c[2]),
        _ => isolate_roots(c),
    }
}

fn quadratic_roots(c: f64, b: f64, a: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    if disc == 0.0 {
        return vec![-b / (2.0 * a)];
    }
    // b = 0 gives signum 1, so q ≠ 0 whenever disc > 0
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (mut r1, mut r2) = (q / a, c / q);
    if r1 > r2 {
        std::mem::swap(&mut r1, &mut r2);
    }
    vec![r1, r2]
}

/// Roots of a polynomial of degree ≥ 3: bisection between consecutive
/// critical points inside the Cauchy bound.
fn isolate_roots(c: &[f64]) -> Vec<f64> {
    let lead = *c.last().unwrap();
    let bound = 1.0 + c[..c.len() - 1].iter().fold(0.0_f64, |m, x| m.max((x / lead).abs()));
    let mut marks = vec![-bound];
    marks.extend(real_roots(&derivative(c)).into_iter().filter(|x| x.abs() < bound));
    marks.push(bound);
    let mut roots = Vec::new();
    for w in marks.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (fa, fb) = (horner(c, a), horner(c, b));
        if fa == 0.0 {
            if roots.last() != Some(&a) {
                roots.push(a);
            }
            continue;
        }
        if fa.signum() == fb.signum() {
            continue;
        }
        let sa = fa.signum();
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = horner(c, m);
            if fm == 0.0 {
                a = m;
                b = m;
                break;
            }
            if fm.signum() == sa {
                a = m;
            } else {
                b = m;
            }
        }
        roots.push(0.5 * (a + b));
    }
    if let Some(&b) = marks.last() {
        if horner(c, b) == 0.0 {
            roots.push(b);
        }
    }
    roots
}

/// `max |p(s)|` over `[s0, s1]`, using the endpoints and the given critical points.
pub fn sup_abs_with(c: &[f64], crit: &[f64], s0: f64, s1: f64) -> f64 {
    let mut m = horner(c, s0).abs().max(horner(c, s1).abs());
    for &x in crit {
        if x > s0 && x < s1 {
            m = m.max(horner(c, x).abs());
        }
    }
    m
}

pub fn sup_abs(c: &[f64], s0: f64, s1: f64) -> f64 {
    sup_abs_with(c, &real_roots(&derivative(c)), s0, s1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_matches_expansion() {
        assert_eq!(horner(&[1.0, 2.0, 3.0], 2.0), 1.0 + 4.0 + 12.0);
        assert_eq!(horner(&[], 2.0), 0.0);
    }

    #[test]
    fn quadratic_and_cubic_roots() {
        let r = real_roots(&[-2.0, 0.0, 1.0]);
        assert!((r[0] + 2f64.sqrt()).abs() < 1e-15 && (r[1] - 2f64.sqrt()).abs() < 1e-15);
        // (s-1)(s-2)(s-3)
        let r = real_roots(&[-6.0, 11.0, -6.0, 1.0]);
        assert_eq!(r.len(), 3);
        for (x, e) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - e).abs() < 1e-12, "{x} vs {e}");
        }
        assert!(real_roots(&[1.0, 0.0, 1.0]).is_empty());
    }

    #[test]
    fn sup_finds_interior_extremum() {
        // s(1-s) on [0,1] peaks at 1/4
        assert_eq!(sup_abs(&[0.0, 1.0, -1.0], 0.0, 1.0), 0.25);
        // cubic s^3 - s on [-1,1]: extremum 2/(3√3) at ±1/√3
        let m = sup_abs(&[0.0, -1.0, 0.0, 1.0], -1.0, 1.0);
        assert!((m - 2.0 / (3.0 * 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn quartic_roots_by_isolation() {
        // (s^2-1)(s^2-4)
        let r = real_roots(&[4.0, 0.0, -5.0, 0.0, 1.0]);
        assert_eq!(r.len(), 4);
        for (x, e) in r.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((x - e).abs() < 1e-12);
        }
    }
}
