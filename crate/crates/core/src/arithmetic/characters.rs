//! Kronecker symbol and Dirichlet characters as explicit value tables.

use super::factorize;
use crate::numerics::NeumaierSum;
use crate::C64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const TAB2: [i32; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

/// Kronecker symbol (a/b).
pub fn kronecker(a: i64, b: i64) -> i32 {
    let (mut a, mut b) = (a as i128, b as i128);
    if b == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let mut v = 0;
    while b % 2 == 0 {
        v += 1;
        b /= 2;
    }
    let mut k = if v % 2 == 0 { 1 } else { TAB2[(a & 7) as usize] };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    loop {
        if a == 0 {
            return if b == 1 { k } else { 0 };
        }
        let mut v = 0;
        while a % 2 == 0 {
            v += 1;
            a /= 2;
        }
        if v % 2 == 1 {
            k *= TAB2[(b & 7) as usize];
        }
        if a & b & 2 != 0 {
            k = -k;
        }
        let r = a.abs();
        a = b.rem_euclid(r);
        b = r;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// e^{2πi num/den}, exact at the eight points where that is representable.
pub fn root_of_unity(num: i64, den: i64) -> C64 {
    let r = num.rem_euclid(den);
    if (8 * r) % den == 0 {
        let eighth = 8 * r / den;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        return match eighth {
            0 => C64::new(1.0, 0.0),
            2 => C64::new(0.0, 1.0),
            4 => C64::new(-1.0, 0.0),
            6 => C64::new(0.0, -1.0),
            1 => C64::new(h, h),
            3 => C64::new(-h, h),
            5 => C64::new(-h, -h),
            _ => C64::new(h, -h),
        };
    }
    let (s, c) = (2.0 * PI * r as f64 / den as f64).sin_cos();
    C64::new(c, s)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletCharacter {
    pub modulus: u64,
    /// χ(0), χ(1), …, χ(q−1)
    pub values: Vec<C64>,
    pub parity: Parity,
    pub primitive: bool,
    pub conductor: u64,
    /// Human-readable label, e.g. "kronecker(-4)" or "5:[1]".
    pub label: String,
}

impl DirichletCharacter {
    fn from_values(modulus: u64, values: Vec<C64>, label: String) -> Self {
        let minus_one = values[(modulus - 1) as usize];
        let parity = if minus_one.re > 0.0 { Parity::Even } else { Parity::Odd };
        let conductor = conductor_of(modulus, &values);
        DirichletCharacter { modulus, values, parity, primitive: conductor == modulus, conductor, label }
    }

    /// The real character n ↦ (d/n) modulo |d|.
    pub fn from_kronecker(d: i64) -> Self {
        let q = d.unsigned_abs();
        let values = (0..q).map(|n| C64::new(kronecker(d, n as i64) as f64, 0.0)).collect();
        Self::from_values(q, values, format!("kronecker({d})"))
    }

    pub fn eval(&self, n: i64) -> C64 {
        self.values[n.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn eval_u(&self, n: u64) -> C64 {
        self.values[(n % self.modulus) as usize]
    }

    pub fn conj(&self) -> Self {
        let label = if self.is_real() { self.label.clone() } else { format!("conj({})", self.label) };
        DirichletCharacter { values: self.values.iter().map(|v| v.conj()).collect(), label, ..self.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().all(|v| *v == C64::new(0.0, 0.0) || *v == C64::new(1.0, 0.0))
    }
}

fn conductor_of(q: u64, values: &[C64]) -> u64 {
    for f in 1..=q {
        if !q.is_multiple_of(f) {
            continue;
        }
        let trivial = (1..q).all(|a| a.gcd(&q) != 1 || a % f != 1 % f || (values[a as usize] - 1.0).norm() < 1e-12);
        if trivial {
            return f;
        }
    }
    q
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let primes: Vec<u64> = factorize(phi).into_iter().map(|(r, _)| r).collect();
    (2..p).find(|&g| primes.iter().all(|&r| pow_mod(g, phi / r, p) != 1)).expect("primitive root exists")
}

/// One cyclic factor of (Z/qZ)^*: discrete logs modulo `order` of every
/// residue modulo q (None when not coprime).
struct Component {
    order: u64,
    log: Vec<Option<u64>>,
}

fn components(q: u64) -> Vec<Component> {
    let mut out = Vec::new();
    for (p, e) in factorize(q) {
        let pe = p.pow(e);
        if p == 2 && e >= 3 {
            // (Z/2^e)^* = ⟨−1⟩ × ⟨5⟩
            let order5 = pe / 4;
            let mut log5 = vec![None; pe as usize];
            let mut x = 1u64;
            for t in 0..order5 {
                log5[x as usize] = Some(t);
                x = x * 5 % pe;
            }
            let sign =
                (0..q).map(|a| if a % 2 == 0 { None } else { Some(if a % pe % 4 == 1 { 0 } else { 1 }) }).collect();
            let five = (0..q)
                .map(|a| {
                    if a % 2 == 0 {
                        return None;
                    }
                    let r = a % pe;
                    let r = if r % 4 == 1 { r } else { pe - r };
                    log5[r as usize]
                })
                .collect();
            out.push(Component { order: 2, log: sign });
            out.push(Component { order: order5, log: five });
        } else {
            let order = pe / p * (p - 1);
            let mut g = primitive_root(p);
            if e >= 2 && pow_mod(g, p - 1, p * p) == 1 {
                g += p;
            }
            let mut logs = vec![None; pe as usize];
            let mut x = 1u64;
            for t in 0..order {
                logs[x as usize] = Some(t);
                x = x * g % pe;
            }
            out.push(Component { order, log: (0..q).map(|a| logs[(a % pe) as usize]).collect() });
        }
    }
    out
}

/// All φ(q) characters modulo q, principal first, in lexicographic order of
/// their exponent vectors.
pub fn character_group(q: u64) -> Vec<DirichletCharacter> {
    assert!(q > 1, "character_group needs q > 1");
    let comps = components(q);
    let lcm = comps.iter().fold(1u64, |l, c| l.lcm(&c.order));
    let mut exps = vec![0u64; comps.len()];
    let mut out = Vec::new();
    loop {
        let values = (0..q)
            .map(|a| {
                if a.gcd(&q) != 1 {
                    return C64::new(0.0, 0.0);
                }
                let mut num = 0u64;
                for (c, j) in comps.iter().zip(&exps) {
                    let l = c.log[a as usize].expect("unit has a log");
                    num = (num + j * l % c.order * (lcm / c.order)) % lcm;
                }
                root_of_unity(num as i64, lcm as i64)
            })
            .collect();
        out.push(DirichletCharacter::from_values(q, values, format!("{q}:{exps:?}")));
        // odometer increment
        let mut i = comps.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < comps[i].order {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// τ(χ) = Σ_{n=1}^{q} χ(n) e^{2πin/q}.
pub fn gauss_sum(chi: &DirichletCharacter) -> C64 {
    let q = chi.modulus as i64;
    let mut acc = NeumaierSum::new();
    for n in 1..=q {
        let c = chi.eval(n);
        if c != C64::new(0.0, 0.0) {
            acc.add(c * root_of_unity(n, q));
        }
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legendre_euler(a: i64, p: i64) -> i32 {
        let r = pow_mod(a.rem_euclid(p) as u64, ((p - 1) / 2) as u64, p as u64);
        match r {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-3, 7), 1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-8, 3), 1);
    }

    #[test]
    fn kronecker_is_legendre_at_odd_primes() {
        for p in [3i64, 5, 7, 11, 13, 101] {
            for a in -60..60 {
                assert_eq!(kronecker(a, p), legendre_euler(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn group_sizes_and_examples() {
        let g4 = character_group(4);
        assert_eq!(g4.len(), 2);
        let chi = &g4[1];
        assert_eq!(chi.parity, Parity::Odd);
        assert!(chi.primitive && chi.is_real());
        assert_eq!(chi.values, DirichletCharacter::from_kronecker(-4).values);

        let g3 = character_group(3);
        assert_eq!(g3[1].eval(2), C64::new(-1.0, 0.0));

        let g5 = character_group(5);
        assert_eq!(g5.len(), 4);
        let real_nonprincipal: Vec<_> = g5.iter().filter(|c| c.is_real() && !c.is_principal()).collect();
        assert_eq!(real_nonprincipal.len(), 1);
        assert_eq!(real_nonprincipal[0].parity, Parity::Even);
        assert_eq!(real_nonprincipal[0].values, DirichletCharacter::from_kronecker(5).values);

        for q in [8u64, 12, 16, 45, 100] {
            let phi = (1..q).filter(|a| a.gcd(&q) == 1).count();
            assert_eq!(character_group(q).len(), phi);
        }
    }

    #[test]
    fn gauss_sums() {
        let g = gauss_sum(&DirichletCharacter::from_kronecker(-4));
        assert!((g - C64::new(0.0, 2.0)).norm() < 1e-15);
        let g = gauss_sum(&DirichletCharacter::from_kronecker(5));
        assert!((g - C64::new(5f64.sqrt(), 0.0)).norm() < 1e-14);
    }
}
