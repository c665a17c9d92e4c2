//! Dense polynomials over `F_p`, constant term first.

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> usize {
    trim(a.to_vec()).len() - 1
}

/// Remainder of `a` modulo the monic polynomial `b`.
pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = trim(b.to_vec());
    assert_eq!(*b.last().unwrap(), 1, "divisor must be monic");
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|c| c % p).collect();
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - db;
            for (i, bc) in b.iter().take(db).enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * bc % p) % p;
            }
        }
    }
    if r.is_empty() {
        r.push(0);
    }
    trim(r)
}

/// The monic polynomial of degree `d` whose lower coefficients are the
/// base-`p` digits of `index`.
pub fn monic_from_index(index: u64, d: usize, p: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(d + 1);
    let mut rest = index;
    for _ in 0..d {
        out.push(rest % p);
        rest /= p;
    }
    out.push(1);
    out
}

/// Irreducibility over `F_p` by trial division with every monic polynomial
/// of degree at most `deg/2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.iter().map(|c| c % p).collect());
    let d = f.len() - 1;
    if d == 0 || *f.last().unwrap() != 1 {
        return false;
    }
    for k in 1..=d / 2 {
        for idx in 0..p.pow(k as u32) {
            let g = monic_from_index(idx, k, p);
            let r = rem(&f, &g, p);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `d` in index order.
pub fn first_irreducible(d: usize, p: u64) -> Vec<u64> {
    (0..p.pow(d as u32))
        .map(|idx| monic_from_index(idx, d, p))
        .find(|g| is_irreducible(g, p))
        .expect("irreducible polynomials exist in every degree")
}

/// `F_{p^f} = F_p[t]/(g)` with elements encoded as base-`p` digit indices,
/// the same encoding as residue representatives of an extension.
#[derive(Debug, Clone)]
pub struct ResidueField {
    p: u64,
    modulus: Vec<u64>,
}

impl ResidueField {
    /// `modulus` must be monic and irreducible over `F_p`.
    pub fn new(p: u64, modulus: Vec<u64>) -> Self {
        Self { p, modulus }
    }

    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn unpack(&self, mut x: u64) -> Vec<u64> {
        (0..self.degree())
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (a, b) = (self.unpack(a), self.unpack(b));
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.pack(&rem(&prod, &self.modulus, self.p))
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics_mod_three() {
        // t^2 + 1: -1 is a non-residue mod 3
        assert!(is_irreducible(&[1, 0, 1], 3));
        // t^2 - 1 = (t - 1)(t + 1)
        assert!(!is_irreducible(&[2, 0, 1], 3));
        assert_eq!(first_irreducible(2, 3), vec![1, 0, 1]);
    }

    #[test]
    fn counts_match_necklace_formula() {
        // number of monic irreducibles of degree 3 over F_5 is (125 - 5)/3 = 40
        let count = (0..125).filter(|&i| is_irreducible(&monic_from_index(i, 3, 5), 5)).count();
        assert_eq!(count, 40);
        // degree 4 over F_3: (81 - 9)/4 = 18
        let count = (0..81).filter(|&i| is_irreducible(&monic_from_index(i, 4, 3), 3)).count();
        assert_eq!(count, 18);
    }

    #[test]
    fn residue_field_of_order_nine() {
        // F_9 = F_3[t]/(t^2 + 1); t has order 4 and t + 1 generates
        let f = ResidueField::new(3, vec![1, 0, 1]);
        let t = 3;
        assert_eq!(f.pow(t, 2), 2);
        assert_eq!(f.pow(t, 4), 1);
        let order = (1..=8).find(|&k| f.pow(4, k) == 1).unwrap();
        assert_eq!(order, 8);
        let prime = ResidueField::new(7, vec![0, 1]);
        assert_eq!(prime.mul(3, 5), 1);
    }

    #[test]
    fn remainder() {
        // (t^3 + 2) mod (t + 1) over F_5 is (-1)^3 + 2 = 1
        assert_eq!(rem(&[2, 0, 0, 1], &[1, 1], 5), vec![1]);
    }
}
