//! Arithmetic in GF(2^a) for a ≤ 16.

use ftg_core::{Error, Result};

/// Primitive polynomials, indexed by degree.
const POLYS: [u32; 17] = [
    0, 0b11, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
];

pub const MAX_DEGREE: u32 = 16;

/// Carry-less product of two polynomials over GF(2).
fn clmul(x: u32, y: u32) -> u64 {
    let mut acc = 0u64;
    for i in 0..32 {
        if y >> i & 1 == 1 {
            acc ^= (x as u64) << i;
        }
    }
    acc
}

fn poly_mod(mut x: u64, p: u32) -> u32 {
    let deg = 31 - p.leading_zeros();
    for i in (deg..64).rev() {
        if x >> i & 1 == 1 {
            x ^= (p as u64) << (i - deg);
        }
    }
    x as u32
}

/// True if `p` (degree `a`) has no factor of degree between 1 and a/2.
fn irreducible(p: u32, a: u32) -> bool {
    if p >> a != 1 {
        return false;
    }
    (2u32..1 << (a / 2 + 1)).all(|q| poly_mod(p as u64, q) != 0)
}

#[derive(Clone, Debug)]
pub struct Gf {
    a: u32,
    poly: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Gf {
    /// Field with 2^a elements from the built-in polynomial table.
    pub fn new(a: u32) -> Result<Self> {
        if a == 0 || a > MAX_DEGREE {
            return Err(Error::invalid(format!("field degree {a} outside 1..={MAX_DEGREE}")));
        }
        Self::with_poly(a, POLYS[a as usize])
    }

    /// Smallest field with more than `colors` elements.
    pub fn for_colors(colors: u32) -> Result<Self> {
        let a = (1..=MAX_DEGREE)
            .find(|&a| (1u64 << a) > colors as u64)
            .ok_or_else(|| Error::TooLarge(format!("{colors} colours need a field beyond GF(2^{MAX_DEGREE})")))?;
        Self::new(a.max(1))
    }

    pub fn with_poly(a: u32, poly: u32) -> Result<Self> {
        if a == 0 || a > MAX_DEGREE || !irreducible(poly, a) {
            return Err(Error::invalid(format!("{poly:#x} is not an irreducible polynomial of degree {a}")));
        }
        let size = 1usize << a;
        let order = size - 1;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; size];
        for gen in 1..size as u32 {
            let mut x = 1u32;
            let mut seen = vec![false; size];
            let mut ok = true;
            for i in 0..order {
                if seen[x as usize] {
                    ok = false;
                    break;
                }
                seen[x as usize] = true;
                exp[i] = x;
                log[x as usize] = i as u32;
                x = poly_mod(clmul(x, gen), poly);
            }
            if ok {
                break;
            }
        }
        for i in order..exp.len() {
            exp[i] = exp[i - order];
        }
        Ok(Gf { a, poly, exp, log })
    }

    pub fn degree(&self) -> u32 {
        self.a
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    pub fn size(&self) -> u32 {
        1 << self.a
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        x ^ y
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        self.exp[(self.log[x as usize] + self.log[y as usize]) as usize]
    }

    /// Reference multiplication by polynomial reduction.
    pub fn mul_slow(&self, x: u32, y: u32) -> u32 {
        poly_mod(clmul(x, y), self.poly)
    }

    pub fn inv(&self, x: u32) -> Result<u32> {
        if x == 0 {
            return Err(Error::invalid("zero has no multiplicative inverse"));
        }
        let order = self.size() - 1;
        Ok(self.exp[((order - self.log[x as usize]) % order) as usize])
    }

    pub fn contains(&self, x: u32) -> bool {
        x < self.size()
    }
}
