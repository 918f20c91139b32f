//! Simultaneous root iteration with one compensated Newton pass.

use num_complex::Complex64;

const MAX_ITER: usize = 2000;

/// Roots with their worst relative Newton correction in the final pass.
pub(crate) struct Roots {
    pub roots: Vec<Complex64>,
    pub last_correction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum RootFailure {
    Residual(f64),
    Vieta(f64),
}

/// Roots of `Σ c[k] z^k`; `c` has a nonzero last and first entry.
pub(crate) fn find_roots(c: &[Complex64]) -> Result<Roots, RootFailure> {
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Roots { roots: Vec::new(), last_correction: 0.0 });
    }
    if n == 1 {
        let r = -c[0] / c[1];
        return Ok(Roots { roots: vec![r], last_correction: 0.0 });
    }
    let mut z = initial_guesses(c);
    let deriv: Vec<Complex64> = (1..=n).map(|k| c[k] * k as f64).collect();
    for _ in 0..MAX_ITER {
        let mut done = true;
        for i in 0..n {
            let p = horner(c, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / horner(&deriv, z[i]);
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    sum += (z[i] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() > 4.0 * f64::EPSILON * z[i].norm().max(1.0) {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    let mut last_correction = 0.0f64;
    for zi in z.iter_mut() {
        let p = horner_dd(c, *zi);
        let dp = horner(&deriv, *zi);
        let delta = p / dp;
        if delta.is_finite() && delta.norm() < 1e-6 * zi.norm().max(1.0) {
            *zi -= delta;
            last_correction = last_correction.max(delta.norm() / zi.norm().max(1.0));
        }
    }
    for zi in &z {
        let scale: f64 = c.iter().rev().fold(0.0, |acc, ck| acc * zi.norm() + ck.norm());
        let r = horner_dd(c, *zi).norm();
        if r > 1e-9 * scale {
            return Err(RootFailure::Residual(r / scale));
        }
    }
    vieta_check(c, &z)?;
    Ok(Roots { roots: z, last_correction })
}

fn vieta_check(c: &[Complex64], z: &[Complex64]) -> Result<(), RootFailure> {
    let n = z.len();
    let sum: Complex64 = z.iter().sum();
    let want = -c[n - 1] / c[n];
    let scale = 1.0 + z.iter().map(|r| r.norm()).sum::<f64>();
    let d1 = (sum - want).norm() / scale;
    let prod: Complex64 = z.iter().product();
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let want = c[0] / c[n] * sign;
    let d2 = (prod - want).norm() / want.norm();
    let worst = d1.max(d2);
    if worst > 1e-6 || !worst.is_finite() {
        return Err(RootFailure::Vieta(worst));
    }
    Ok(())
}

/// Points on the circle whose radius is the geometric mean of the root moduli.
fn initial_guesses(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let r = (c[0].norm() / c[n].norm()).powf(1.0 / n as f64);
    (0..n)
        .map(|k| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect()
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &ck| acc * z + ck)
}

#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    fn new(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (hi, lo) = two_sum(s, e + self.lo + o.lo);
        Dd { hi, lo }
    }

    fn mul_f(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

/// Horner's rule in double-double; `z` is taken as exact.
fn horner_dd(c: &[Complex64], z: Complex64) -> Complex64 {
    let (mut re, mut im) = (Dd::new(0.0), Dd::new(0.0));
    for ck in c.iter().rev() {
        let nre = re.mul_f(z.re).add(im.mul_f(z.im).neg()).add(Dd::new(ck.re));
        let nim = re.mul_f(z.im).add(im.mul_f(z.re)).add(Dd::new(ck.im));
        re = nre;
        im = nim;
    }
    Complex64::new(re.hi + re.lo, im.hi + im.lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(c: &[f64]) -> Vec<Complex64> {
        c.iter().map(|&v| Complex64::new(v, 0.0)).collect()
    }

    #[test]
    fn quadratic_roots() {
        let r = find_roots(&real(&[1.0, -4.0, 1.0])).unwrap();
        let mut m: Vec<f64> = r.roots.iter().map(|z| z.norm()).collect();
        m.sort_by(f64::total_cmp);
        assert!((m[1] - (2.0 + 3f64.sqrt())).abs() < 1e-14);
        assert!((m[0] - (2.0 - 3f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn roots_of_unity() {
        let mut c = real(&[-1.0; 1]);
        c.extend(real(&[0.0; 6]));
        c.push(Complex64::new(1.0, 0.0));
        let r = find_roots(&c).unwrap();
        for z in r.roots {
            assert!((z.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn wilkinson_like() {
        // (z-1)(z-2)...(z-10)
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for k in 1..=10 {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= ci * k as f64;
            }
            c = next;
        }
        let r = find_roots(&c).unwrap();
        let mut re: Vec<f64> = r.roots.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        for (k, v) in re.iter().enumerate() {
            assert!((v - (k + 1) as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn double_root_converges() {
        let r = find_roots(&real(&[1.0, -2.0, 1.0])).unwrap();
        for z in r.roots {
            assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-7);
        }
    }

    #[test]
    fn compensated_horner_beats_naive() {
        // (z - 1)^4 near z = 1 cancels catastrophically in plain doubles.
        let c = real(&[1.0, -4.0, 6.0, -4.0, 1.0]);
        let z = Complex64::new(1.0 + 1e-4, 0.0);
        let exact = 1e-16;
        let dd = horner_dd(&c, z).re;
        assert!((dd - exact).abs() < 1e-20 + 1e-3 * exact);
    }
}
