//! One-dimensional quadrature for complex integrands with sharp, known
//! features.
//!
//! Two independent rules live here:
//!
//! * [`adaptive`]: globally adaptive 21-point Gauss–Kronrod bisection,
//!   seeded with caller-supplied breakpoints. This is the production path.
//! * [`graded_gauss_legendre`]: a non-adaptive composite Gauss–Legendre rule
//!   on a mesh graded geometrically away from each feature. It shares no
//!   nodes, weights or refinement logic with the adaptive rule and is used to
//!   cross-check it.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_452_232,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    /// Absolute error estimate on `value` (bounds both components).
    pub error: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // Ties broken on position so the refinement order is reproducible.
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut abs_value = fc.norm() * WGK[10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += (f1 + f2) * WGK[j];
        abs_value += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = kronrod * half;
    Panel {
        a,
        b,
        value,
        error: ((kronrod - gauss) * half).norm(),
        abs_value: abs_value * half.abs(),
    }
}

/// Integrates `f` over `[points[0], points[last]]`, starting from one panel
/// per consecutive pair of `points`, and bisects the panel with the largest
/// error until the total error is below `rel_tol·|I|` (or the round-off
/// floor). `points` must be strictly increasing.
pub fn adaptive<F>(f: F, points: &[f64], rel_tol: f64, max_subdivisions: usize) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    if points.len() < 2 || points.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid(
            "breakpoints",
            "need at least two strictly increasing points",
        ));
    }
    let mut heap: BinaryHeap<Panel> = points.windows(2).map(|w| kronrod21(&f, w[0], w[1])).collect();
    let mut evaluations = 21 * heap.len();
    let mut subdivisions = heap.len();

    loop {
        let (value, error, abs_value) = heap.iter().fold((Complex64::new(0.0, 0.0), 0.0, 0.0), |(v, e, s), p| {
            (v + p.value, e + p.error, s + p.abs_value)
        });
        let target = (rel_tol * value.norm()).max(50.0 * f64::EPSILON * abs_value);
        if error <= target {
            return Ok(Estimate {
                value,
                error,
                subdivisions,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let unsplittable = !(worst.a < mid && mid < worst.b);
        if subdivisions >= max_subdivisions || unsplittable {
            heap.push(worst);
            return Err(Error::Convergence {
                achieved: error,
                requested: target,
                subdivisions,
                delta: None,
            });
        }
        heap.push(kronrod21(&f, worst.a, mid));
        heap.push(kronrod21(&f, mid, worst.b));
        evaluations += 42;
        subdivisions += 1;
    }
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: &F, a: f64, b: f64) -> Complex64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| f(c + h * x) * *w)
            .sum::<Complex64>()
            * h
    }
}

// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Mesh for [`graded_gauss_legendre`]: `lo`, `hi`, every feature inside, and
/// points `x0 ± w·ratioᵏ` around each feature `x0` (`w = finest`).
pub fn graded_mesh(lo: f64, hi: f64, features: &[f64], finest: f64, ratio: f64) -> Vec<f64> {
    assert!(finest > 0.0 && ratio > 1.0 && lo < hi);
    let mut pts = vec![lo, hi];
    for &x0 in features {
        if x0 > lo && x0 < hi {
            pts.push(x0);
        }
        let mut step = finest;
        while step < hi - lo {
            for x in [x0 - step, x0 + step] {
                if x > lo && x < hi {
                    pts.push(x);
                }
            }
            step *= ratio;
        }
    }
    pts.sort_by(f64::total_cmp);
    let mut mesh: Vec<f64> = Vec::with_capacity(pts.len());
    for x in pts {
        match mesh.last() {
            Some(&last) if x - last < 0.25 * finest => {}
            _ => mesh.push(x),
        }
    }
    if *mesh.last().unwrap() != hi {
        *mesh.last_mut().unwrap() = hi;
    }
    mesh
}

/// Fixed composite Gauss–Legendre integration over a mesh from [`graded_mesh`].
pub fn graded_gauss_legendre<F>(f: F, mesh: &[f64], rule: &GaussLegendre) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    mesh.windows(2).map(|w| rule.integrate(&f, w[0], w[1])).sum()
}
