#![allow(dead_code)]

use polarkit::pl::q;
use polarkit::selfpolar::curve_f;
use polarkit::{PLFunction, Rational, Scalar, Tail};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    q(rng.random_range(1..=max_num), rng.random_range(1..=max_den))
}

/// Random canonical function with `0..=max_bps` breakpoints after the origin,
/// rational coordinates, and a random tail (never constant).
pub fn random_pl<R: Rng>(rng: &mut R, max_bps: usize) -> PLFunction<Rational> {
    let m = rng.random_range(0..=max_bps);
    let mut slope = if rng.random_bool(0.3) {
        q(0, 1)
    } else {
        rand_rational(rng, 6, 6)
    };
    let mut pts = vec![(q(0, 1), q(0, 1))];
    for _ in 0..m {
        let (x, v) = pts.last().cloned().unwrap();
        let w = rand_rational(rng, 12, 6);
        pts.push((x + w.clone(), v + slope.clone() * w));
        slope += rand_rational(rng, 8, 6);
    }
    let tail = if rng.random_bool(0.5) || slope == q(0, 1) {
        Tail::Infinite
    } else {
        Tail::Slope(slope)
    };
    PLFunction::new(pts, tail).unwrap()
}

/// Rational `t > 1` gives the Pythagorean contact point
/// `q = (t² + 1)/(2t)` with `F(q) = (t² − 1)/(2t)` rational.
pub fn random_pythagorean_q<R: Rng>(rng: &mut R) -> Rational {
    let den = rng.random_range(1..=5);
    let num = rng.random_range(den + 1..=6 * den);
    let t = q(num, den);
    (t.clone() * t.clone() + q(1, 1)) / (t * q(2, 1))
}

/// Random member of `T_q`: convex on `[0, q]` from the origin to `(q, F(q))`
/// with slopes in `[0, F'(q)]`, continued convexly with slopes `≥ F'(q)`.
pub fn random_tq_member<S: Scalar, R: Rng>(rng: &mut R, qq: &S) -> PLFunction<S> {
    let head = random_tq_head(rng, qq);
    let tail = random_tq_continuation(rng, qq);
    join_head_tail(head, tail)
}

/// Breakpoints on `[0, q]`, ending with `(q, F(q))`.
pub fn random_tq_head<S: Scalar, R: Rng>(rng: &mut R, qq: &S) -> Vec<(S, S)> {
    let c = curve_f(qq).unwrap();
    let fq = c.value.clone();
    let fp = c.slope.finite().cloned().unwrap();
    let k = rng.random_range(1..=5);
    let frac = |rng: &mut R| S::ratio(rng.random_range(1..=97), 100);

    // Sorted slopes in (0, F') and positive widths summing to q.
    let mut slopes: Vec<S> = (0..k).map(|_| fp.clone() * frac(rng)).collect();
    slopes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    slopes.dedup();
    let weights: Vec<S> = slopes.iter().map(|_| S::ratio(rng.random_range(1..=10), 1)).collect();
    let wsum = weights.iter().cloned().fold(S::zero(), |a, b| a + b);
    let widths: Vec<S> = weights.iter().map(|w| w.clone() * qq.clone() / wsum.clone()).collect();

    // Shift/shrink slopes toward the chord slope so the rise is exactly F(q).
    let target = fq.clone() / qq.clone();
    let mean = slopes
        .iter()
        .zip(&widths)
        .map(|(s, w)| s.clone() * w.clone())
        .fold(S::zero(), |a, b| a + b)
        / qq.clone();
    let lo = slopes.first().cloned().unwrap();
    let hi = slopes.last().cloned().unwrap();
    let mut lambda = S::one();
    if mean > lo {
        lambda = lambda.min_of(target.clone() / (mean.clone() - lo));
    }
    if hi > mean {
        lambda = lambda.min_of((fp.clone() - target.clone()) / (hi - mean.clone()));
    }
    lambda = lambda * frac(rng);
    let mut pts = vec![(S::zero(), S::zero())];
    let mut x = S::zero();
    let mut v = S::zero();
    for (s, w) in slopes.iter().zip(&widths).take(slopes.len() - 1) {
        let s = target.clone() + lambda.clone() * (s.clone() - mean.clone());
        x = x + w.clone();
        v = v + s * w.clone();
        pts.push((x.clone(), v.clone()));
    }
    pts.push((qq.clone(), fq));
    pts
}

/// Breakpoints strictly beyond `q` plus a tail; slopes start at `≥ F'(q)`.
pub fn random_tq_continuation<S: Scalar, R: Rng>(rng: &mut R, qq: &S) -> (Vec<(S, S)>, Tail<S>) {
    let c = curve_f(qq).unwrap();
    let mut slope = c.slope.finite().cloned().unwrap();
    if rng.random_bool(0.6) {
        slope = slope + S::ratio(rng.random_range(1..=20), 10);
    }
    let mut x = qq.clone();
    let mut v = c.value;
    let mut pts = Vec::new();
    for _ in 0..rng.random_range(0..=4) {
        let w = S::ratio(rng.random_range(1..=20), 8);
        x = x + w.clone();
        v = v + slope.clone() * w;
        pts.push((x.clone(), v.clone()));
        slope = slope + S::ratio(rng.random_range(1..=20), 10);
    }
    let tail = if rng.random_bool(0.5) {
        Tail::Infinite
    } else {
        Tail::Slope(slope)
    };
    (pts, tail)
}

pub fn join_head_tail<S: Scalar>(head: Vec<(S, S)>, tail: (Vec<(S, S)>, Tail<S>)) -> PLFunction<S> {
    let mut pts = head;
    pts.extend(tail.0);
    PLFunction::new(pts, tail.1).unwrap()
}
