//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

const PREC: usize = 384;
const RM: RoundingMode = RoundingMode::ToEven;

/// Extended-precision scalar with just the operations the oracles need.
pub struct Hp {
    cc: Consts,
}

impl Hp {
    pub fn new() -> Self {
        Self {
            cc: Consts::new().expect("constant cache"),
        }
    }

    pub fn num(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, PREC)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, PREC, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, PREC, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, PREC, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, PREC, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(PREC, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(PREC, RM, &mut self.cc)
    }

    pub fn acos(&mut self, a: &BigFloat) -> BigFloat {
        a.acos(PREC, RM, &mut self.cc)
    }

    pub fn value(&mut self, a: &BigFloat) -> f64 {
        if a.is_zero() {
            return 0.0;
        }
        let s = a.format(Radix::Dec, RM, &mut self.cc).expect("decimal formatting");
        s.parse().unwrap_or_else(|_| panic!("unparseable decimal `{s}`"))
    }

    /// `-x ln x`, zero at zero.
    fn eta(&mut self, x: &BigFloat) -> BigFloat {
        if x.is_zero() {
            return self.num(0.0);
        }
        let l = self.ln(x);
        self.mul(x, &l).neg()
    }

    pub fn entropy(&mut self, p: &[BigFloat]) -> BigFloat {
        let mut h = self.num(0.0);
        for x in p {
            let t = self.eta(x);
            h = self.add(&h, &t);
        }
        h
    }

    /// `H(m) - H(p)/2 - H(q)/2` with `m = (p + q)/2`.
    pub fn jsd(&mut self, p: &[BigFloat], q: &[BigFloat]) -> BigFloat {
        let half = self.num(0.5);
        let m: Vec<BigFloat> = p
            .iter()
            .zip(q)
            .map(|(a, b)| self.mul(&self.add(a, b), &half))
            .collect();
        let hm = self.entropy(&m);
        let hp = self.entropy(p);
        let hq = self.entropy(q);
        let avg = self.mul(&self.add(&hp, &hq), &half);
        self.sub(&hm, &avg)
    }

    pub fn coefficient(&mut self, p: &[BigFloat], q: &[BigFloat]) -> BigFloat {
        let mut b = self.num(0.0);
        for (x, y) in p.iter().zip(q) {
            let t = self.sqrt(&self.mul(x, y));
            b = self.add(&b, &t);
        }
        b
    }

    pub fn kl(&mut self, p: &[BigFloat], q: &[BigFloat]) -> BigFloat {
        let mut s = self.num(0.0);
        for (x, y) in p.iter().zip(q) {
            if x.is_zero() {
                continue;
            }
            let l = self.ln(&self.div(x, y));
            s = self.add(&s, &self.mul(x, &l));
        }
        s
    }

    fn binary(&self, p: &BigFloat) -> [BigFloat; 2] {
        [p.clone(), self.sub(&self.num(1.0), p)]
    }

    /// jsd((p, 1-p), (p+dp, 1-p-dp)).
    pub fn binary_jsd(&mut self, p: f64, dp: &BigFloat) -> BigFloat {
        let a = self.binary(&self.num(p));
        let b = self.binary(&self.add(&self.num(p), dp));
        self.jsd(&a, &b)
    }

    /// ½ arccos(B)² for the same pair.
    pub fn binary_half_wootters_sq(&mut self, p: f64, dp: &BigFloat) -> BigFloat {
        let a = self.binary(&self.num(p));
        let b = self.binary(&self.add(&self.num(p), dp));
        let bc = self.coefficient(&a, &b);
        let w = self.acos(&bc);
        self.mul(&self.mul(&w, &w), &self.num(0.5))
    }

    /// `[c2, c3, c4]` of `f(dp) = Σ c_k dp^k` from central differences with step `h`.
    pub fn taylor_coefficients(&mut self, f: impl Fn(&mut Self, &BigFloat) -> BigFloat, h: f64) -> [f64; 3] {
        let hs: Vec<BigFloat> = [-2.0, -1.0, 0.0, 1.0, 2.0].iter().map(|k| self.num(k * h)).collect();
        let v: Vec<BigFloat> = hs.iter().map(|x| f(self, x)).collect();
        let hb = self.num(h);
        let h2 = self.mul(&hb, &hb);
        let h3 = self.mul(&h2, &hb);
        let h4 = self.mul(&h3, &hb);
        let two = self.num(2.0);
        let four = self.num(4.0);
        let six = self.num(6.0);
        // f'' ≈ (f(h) - 2f(0) + f(-h)) / h²
        let d2 = self.div(&self.add(&self.sub(&v[3], &self.mul(&two, &v[2])), &v[1]), &h2);
        // f''' ≈ (f(2h) - 2f(h) + 2f(-h) - f(-2h)) / (2h³)
        let n3 = self.sub(&self.add(&self.sub(&v[4], &self.mul(&two, &v[3])), &self.mul(&two, &v[1])), &v[0]);
        let d3 = self.div(&n3, &self.mul(&two, &h3));
        // f'''' ≈ (f(2h) - 4f(h) + 6f(0) - 4f(-h) + f(-2h)) / h⁴
        let n4 = self.add(
            &self.sub(&self.add(&self.sub(&v[4], &self.mul(&four, &v[3])), &self.mul(&six, &v[2])), &self.mul(&four, &v[1])),
            &v[0],
        );
        let d4 = self.div(&n4, &h4);
        [
            self.value(&d2) / 2.0,
            self.value(&d3) / 6.0,
            self.value(&d4) / 24.0,
        ]
    }

    pub fn vec(&self, xs: &[f64]) -> Vec<BigFloat> {
        xs.iter().map(|&x| self.num(x)).collect()
    }
}

pub fn rel_err(got: f64, want: f64, floor: f64) -> f64 {
    (got - want).abs() / want.abs().max(floor)
}

/// Exact success probability of maximum-likelihood discrimination (ties to
/// the first hypothesis) between two binary distributions from `l` samples,
/// with a fair prior. Sums the binomial distribution of the first-outcome count.
pub fn binary_ml_success(a: f64, b: f64, l: u64) -> f64 {
    let ln_choose = |k: u64| -> f64 {
        (1..=k).map(|i| ((l - k + i) as f64).ln() - (i as f64).ln()).sum()
    };
    let log_pmf = |p: f64, k: u64| ln_choose(k) + k as f64 * p.ln() + (l - k) as f64 * (1.0 - p).ln();
    let mut success = 0.0;
    for k in 0..=l {
        let la = log_pmf(a, k);
        let lb = log_pmf(b, k);
        // the likelier hypothesis is guessed; its probability counts half through the prior
        success += 0.5 * if la >= lb { la.exp() } else { lb.exp() };
    }
    success
}
