//! Tabulated finite rings.
//!
//! Every ring here has at most `2^16` elements, each identified by an index.
//! Structured constructions use a canonical index encoding: mixed radix for
//! `Z_q^n` and `Z_k[X]/(X^l - X^kp)` (digit `i` is coordinate / coefficient
//! `i`), and plain bit masks for the Boolean ring `P(X)` and the exotic ring.
//! Multiplication is computed from the structure on demand; small rings also
//! carry precomputed tables.

mod axioms;
mod descriptor;
pub mod nilpotent;

pub use axioms::{
    additive_exponent, check_ring_axioms, is_left_s_unital, is_right_s_unital, AxiomFailure, AxiomReport, Coverage,
};
pub use descriptor::RingDescriptor;

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a ring element.
pub type Elem = u32;

/// Largest number of elements a tabulated ring may have.
pub const MAX_RING_SIZE: usize = 1 << 16;

/// Rings at or below this size get precomputed addition and multiplication tables.
pub const TABLE_LIMIT: usize = 1024;

/// Counts of the exotic ring's two kinds of `G`-coordinates.
///
/// The first `a` coordinates carry the coordinate functionals `f_i`; the
/// following `b` coordinates span the common kernel of all those functionals.
/// Two more coordinates hold `e` and the unit, so the ring has
/// `2^(a+b+2)` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ExoticRingSpec {
    pub a: u32,
    pub b: u32,
}

#[derive(Debug, Clone)]
enum Structure {
    ZqPower { q: u32, n: u32 },
    Boolean,
    PolyQuotient { k: u32, l: u32, kp: u32 },
    Exotic { a: u32, b: u32 },
    Zero,
    Tables(Arc<Tables>),
}

#[derive(Debug)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

/// Additive group `Z_modulus^dim` with mixed-radix element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Radix {
    pub modulus: u32,
    pub dim: u32,
}

impl Radix {
    fn digits(self, mut x: u32, out: &mut [u32]) {
        for d in out.iter_mut().take(self.dim as usize) {
            *d = x % self.modulus;
            x /= self.modulus;
        }
    }

    fn encode(self, digits: &[u32]) -> u32 {
        digits[..self.dim as usize].iter().rev().fold(0, |acc, &d| acc * self.modulus + d)
    }
}

/// A fully enumerated finite ring.
#[derive(Debug, Clone)]
pub struct TabulatedRing {
    label: String,
    size: usize,
    radix: Option<Radix>,
    structure: Structure,
    one: Option<Elem>,
    add_table: Option<Arc<[u16]>>,
    mul_table: Option<Arc<[u16]>>,
}

fn checked_size(base: u32, exp: u32) -> Result<usize> {
    let size = (base as u128).checked_pow(exp).unwrap_or(u128::MAX);
    if size > MAX_RING_SIZE as u128 {
        return Err(Error::RingTooLarge { size, limit: MAX_RING_SIZE });
    }
    Ok(size as usize)
}

impl TabulatedRing {
    fn finish(label: String, size: usize, radix: Option<Radix>, structure: Structure, one: Option<Elem>) -> Self {
        let mut ring = TabulatedRing { label, size, radix, structure, one, add_table: None, mul_table: None };
        if size <= TABLE_LIMIT {
            let n = size as u32;
            let mut add = Vec::with_capacity(size * size);
            let mut mul = Vec::with_capacity(size * size);
            for x in 0..n {
                for y in 0..n {
                    add.push(ring.add_structural(x, y) as u16);
                    mul.push(ring.mul_structural(x, y) as u16);
                }
            }
            ring.add_table = Some(add.into());
            ring.mul_table = Some(mul.into());
        }
        ring
    }

    /// The product ring `Z_q^n` with componentwise operations.
    pub fn zq_power(q: u32, n: u32) -> Result<Self> {
        if q < 2 || n == 0 {
            return Err(Error::InvalidParameter(format!("Z_q^n needs q >= 2 and n >= 1, got q={q}, n={n}")));
        }
        let size = checked_size(q, n)?;
        let radix = Radix { modulus: q, dim: n };
        let one = radix.encode(&vec![1; n as usize]);
        Ok(Self::finish(format!("Z_{q}^{n}"), size, Some(radix), Structure::ZqPower { q, n }, Some(one)))
    }

    /// The Boolean ring of subsets of `{0..x_size-1}`: symmetric difference and intersection.
    pub fn boolean(x_size: u32) -> Result<Self> {
        if x_size == 0 {
            return Err(Error::InvalidParameter("P(X) needs a nonempty ground set".into()));
        }
        let size = checked_size(2, x_size)?;
        let radix = Radix { modulus: 2, dim: x_size };
        let one = (size - 1) as Elem;
        Ok(Self::finish(format!("P({{0..{}}})", x_size - 1), size, Some(radix), Structure::Boolean, Some(one)))
    }

    /// `Z_k[X]/(X^l - X^kp)`; elements are coefficient vectors of degree below `l`.
    pub fn poly_quotient(k: u32, l: u32, kp: u32) -> Result<Self> {
        if k < 2 || l == 0 || kp >= l {
            return Err(Error::InvalidParameter(format!(
                "Z_k[X]/(X^l - X^kp) needs k >= 2, l >= 1, 0 <= kp < l; got k={k}, l={l}, kp={kp}"
            )));
        }
        let size = checked_size(k, l)?;
        let radix = Radix { modulus: k, dim: l };
        Ok(Self::finish(
            poly_quotient_label(k.into(), l.into(), kp.into()),
            size,
            Some(radix),
            Structure::PolyQuotient { k, l, kp },
            Some(1),
        ))
    }

    /// The commutative, unital, characteristic-2 ring `G + {0,e} + {0,1}`.
    ///
    /// Bits `0..a` are the functional coordinates, bits `a..a+b` the extra
    /// (annihilating) coordinates, bit `a+b` is `e` and bit `a+b+1` the unit.
    /// For `G`-elements `r, s` the product is `(sum_{i<a} r_i s_i) * e`.
    pub fn exotic(spec: ExoticRingSpec) -> Result<Self> {
        let ExoticRingSpec { a, b } = spec;
        if a == 0 || b == 0 {
            return Err(Error::InvalidParameter(format!("exotic ring needs a >= 1 and b >= 1, got a={a}, b={b}")));
        }
        let dim = a.checked_add(b).and_then(|s| s.checked_add(2)).unwrap_or(u32::MAX);
        let size = checked_size(2, dim)?;
        let radix = Radix { modulus: 2, dim };
        let one = 1 << (a + b + 1);
        Ok(Self::finish(format!("Exotic(a={a}, b={b})"), size, Some(radix), Structure::Exotic { a, b }, Some(one)))
    }

    /// `Z_modulus^dim` with identically zero multiplication.
    pub fn zero_ring(modulus: u32, dim: u32) -> Result<Self> {
        if modulus < 2 || dim == 0 {
            return Err(Error::InvalidParameter("zero ring needs modulus >= 2 and dim >= 1".into()));
        }
        let size = checked_size(modulus, dim)?;
        let radix = Radix { modulus, dim };
        Ok(Self::finish(format!("Zero(Z_{modulus}^{dim})"), size, Some(radix), Structure::Zero, None))
    }

    /// A ring given by full addition and multiplication tables (row-major, `size * size`).
    ///
    /// The tables are taken as given; run [`check_ring_axioms`] to validate them.
    pub fn from_tables(
        label: impl Into<String>,
        size: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        one: Option<Elem>,
    ) -> Result<Self> {
        if size == 0 || size > MAX_RING_SIZE || add.len() != size * size || mul.len() != size * size {
            return Err(Error::InvalidParameter(format!("tables do not describe a ring of size {size}")));
        }
        let zero_row = &add[..size];
        if zero_row.iter().enumerate().any(|(i, &v)| v as usize != i) {
            return Err(Error::InvalidParameter("element 0 must be the additive identity".into()));
        }
        let mut neg = vec![u16::MAX; size];
        for x in 0..size {
            if let Some(y) = (0..size).find(|&y| add[x * size + y] == 0) {
                neg[x] = y as u16;
            } else {
                return Err(Error::InvalidParameter(format!("element {x} has no additive inverse")));
            }
        }
        let tables = Arc::new(Tables { add, mul, neg });
        let add_table: Arc<[u16]> = tables.add.clone().into();
        let mul_table: Arc<[u16]> = tables.mul.clone().into();
        Ok(TabulatedRing {
            label: label.into(),
            size,
            radix: None,
            structure: Structure::Tables(tables),
            one,
            add_table: Some(add_table),
            mul_table: Some(mul_table),
        })
    }

    /// Full tables of this ring, suitable for [`TabulatedRing::from_tables`].
    pub fn to_tables(&self) -> (Vec<u16>, Vec<u16>) {
        let n = self.size as u32;
        let mut add = Vec::with_capacity(self.size * self.size);
        let mut mul = Vec::with_capacity(self.size * self.size);
        for x in 0..n {
            for y in 0..n {
                add.push(self.add(x, y) as u16);
                mul.push(self.mul(x, y) as u16);
            }
        }
        (add, mul)
    }

    /// The subring carried by `elements`, re-indexed in increasing order.
    ///
    /// Returns the new ring and the map from new indices to old ones.
    pub fn subring(&self, elements: &[Elem], label: impl Into<String>) -> Result<(Self, Vec<Elem>)> {
        let mut old: Vec<Elem> = elements.to_vec();
        old.sort_unstable();
        old.dedup();
        if old.first() != Some(&0) {
            return Err(Error::NotSubring);
        }
        let mut index = vec![u32::MAX; self.size];
        for (i, &x) in old.iter().enumerate() {
            index[x as usize] = i as u32;
        }
        let n = old.len();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for &x in &old {
            for &y in &old {
                let s = index[self.add(x, y) as usize];
                let p = index[self.mul(x, y) as usize];
                if s == u32::MAX || p == u32::MAX {
                    return Err(Error::NotSubring);
                }
                add.push(s as u16);
                mul.push(p as u16);
            }
        }
        let one = self.one.and_then(|o| (index[o as usize] != u32::MAX).then(|| index[o as usize]));
        let ring = Self::from_tables(label, n, add, mul, one)?;
        Ok((ring, old))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Option<Elem> {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size as Elem
    }

    /// `Z_modulus^dim` description of the additive group, for structured rings.
    pub fn radix(&self) -> Option<Radix> {
        self.radix
    }

    /// True when addition is bitwise XOR of indices (all structured characteristic-2 rings).
    pub fn is_xor(&self) -> bool {
        matches!(self.radix, Some(Radix { modulus: 2, .. }))
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if let Some(t) = &self.add_table {
            return t[x as usize * self.size + y as usize] as Elem;
        }
        self.add_structural(x, y)
    }

    fn add_structural(&self, x: Elem, y: Elem) -> Elem {
        match (&self.structure, self.radix) {
            (Structure::Tables(t), _) => t.add[x as usize * self.size + y as usize] as Elem,
            (_, Some(Radix { modulus: 2, .. })) => x ^ y,
            (_, Some(r)) => {
                let (mut a, mut b, mut out, mut place) = (x, y, 0, 1);
                for _ in 0..r.dim {
                    out += ((a % r.modulus + b % r.modulus) % r.modulus) * place;
                    a /= r.modulus;
                    b /= r.modulus;
                    place *= r.modulus;
                }
                out
            }
            (_, None) => unreachable!("structured rings always carry a radix"),
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        match (&self.structure, self.radix) {
            (Structure::Tables(t), _) => t.neg[x as usize] as Elem,
            (_, Some(Radix { modulus: 2, .. })) => x,
            (_, Some(r)) => {
                let (mut a, mut out, mut place) = (x, 0, 1);
                for _ in 0..r.dim {
                    out += ((r.modulus - a % r.modulus) % r.modulus) * place;
                    a /= r.modulus;
                    place *= r.modulus;
                }
                out
            }
            (_, None) => unreachable!(),
        }
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if let Some(t) = &self.mul_table {
            return t[x as usize * self.size + y as usize] as Elem;
        }
        self.mul_structural(x, y)
    }

    fn mul_structural(&self, x: Elem, y: Elem) -> Elem {
        match &self.structure {
            Structure::Tables(t) => t.mul[x as usize * self.size + y as usize] as Elem,
            Structure::Boolean => x & y,
            Structure::Zero => 0,
            Structure::ZqPower { q, n } => {
                let (mut a, mut b, mut out, mut place) = (x, y, 0, 1);
                for _ in 0..*n {
                    out += ((a % q) * (b % q) % q) * place;
                    a /= q;
                    b /= q;
                    place *= q;
                }
                out
            }
            Structure::PolyQuotient { k, l, kp } => {
                let radix = self.radix.expect("structured");
                let (l, kp, k) = (*l as usize, *kp as usize, *k as u64);
                let mut da = [0u32; 16];
                let mut db = [0u32; 16];
                radix.digits(x, &mut da);
                radix.digits(y, &mut db);
                let mut acc = [0u64; 16];
                let period = l - kp;
                for i in 0..l {
                    if da[i] == 0 {
                        continue;
                    }
                    for j in 0..l {
                        if db[j] == 0 {
                            continue;
                        }
                        let mut e = i + j;
                        if e >= l {
                            e = kp + (e - kp) % period;
                        }
                        acc[e] = (acc[e] + da[i] as u64 * db[j] as u64) % k;
                    }
                }
                let mut out = [0u32; 16];
                for (o, a) in out.iter_mut().zip(acc) {
                    *o = a as u32;
                }
                radix.encode(&out)
            }
            Structure::Exotic { a, b } => {
                let g_mask = (1u32 << (a + b)) - 1;
                let f_mask = (1u32 << a) - 1;
                let e_bit = 1u32 << (a + b);
                let one_bit = 1u32 << (a + b + 1);
                let (gx, gy) = (x & g_mask, y & g_mask);
                let (ox, oy) = (x & one_bit != 0, y & one_bit != 0);
                let mut out = 0;
                if ox {
                    out ^= y;
                }
                if oy {
                    out ^= x;
                }
                if ox && oy {
                    out ^= one_bit;
                }
                if (gx & gy & f_mask).count_ones() % 2 == 1 {
                    out ^= e_bit;
                }
                out
            }
        }
    }

    /// `k * x` (k-fold sum of `x`).
    pub fn times(&self, x: Elem, k: u64) -> Elem {
        if let Some(r) = self.radix {
            let m = r.modulus as u64;
            let k = k % m;
            let mut d = [0u32; 16];
            r.digits(x, &mut d);
            for v in d.iter_mut().take(r.dim as usize) {
                *v = ((*v as u64 * k) % m) as u32;
            }
            return r.encode(&d);
        }
        let (mut acc, mut base, mut k) = (0, x, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Additive order of `x`.
    pub fn additive_order(&self, x: Elem) -> u64 {
        let mut acc = x;
        let mut n = 1;
        while acc != 0 {
            acc = self.add(acc, x);
            n += 1;
        }
        n
    }

    /// A generating set of the additive group.
    ///
    /// Structured rings return their coordinate unit vectors; table rings a
    /// greedily chosen set.
    pub fn additive_basis(&self) -> Vec<Elem> {
        if let Some(r) = self.radix {
            return (0..r.dim).map(|i| r.modulus.pow(i)).collect();
        }
        let mut basis = Vec::new();
        let mut span = vec![false; self.size];
        let mut members = vec![0u32];
        span[0] = true;
        for x in self.elements() {
            if span[x as usize] {
                continue;
            }
            basis.push(x);
            let mut frontier = members.clone();
            while let Some(y) = frontier.pop() {
                let z = self.add(y, x);
                if !span[z as usize] {
                    span[z as usize] = true;
                    members.push(z);
                    frontier.push(z);
                }
            }
        }
        basis
    }

    /// Human-readable form of an element in the ring's structural terms.
    pub fn decode(&self, x: Elem) -> String {
        let radix = match self.radix {
            Some(r) => r,
            None => return format!("#{x}"),
        };
        let mut d = [0u32; 16];
        radix.digits(x, &mut d);
        let d = &d[..radix.dim as usize];
        match &self.structure {
            Structure::Boolean => {
                let items: Vec<String> = (0..d.len()).filter(|&i| d[i] == 1).map(|i| i.to_string()).collect();
                format!("{{{}}}", items.join(","))
            }
            Structure::PolyQuotient { .. } => {
                let mut s = String::new();
                for (i, &c) in d.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    if !s.is_empty() {
                        s.push_str(" + ");
                    }
                    match (i, c) {
                        (0, c) => write!(s, "{c}").unwrap(),
                        (1, 1) => s.push('X'),
                        (1, c) => write!(s, "{c}X").unwrap(),
                        (i, 1) => write!(s, "X^{i}").unwrap(),
                        (i, c) => write!(s, "{c}X^{i}").unwrap(),
                    }
                }
                if s.is_empty() {
                    s.push('0');
                }
                s
            }
            Structure::Exotic { a, b } => {
                let mut parts = Vec::new();
                for i in 0..*a as usize {
                    if d[i] == 1 {
                        parts.push(format!("r{i}"));
                    }
                }
                for j in 0..*b as usize {
                    if d[*a as usize + j] == 1 {
                        parts.push(format!("t{j}"));
                    }
                }
                if d[(a + b) as usize] == 1 {
                    parts.push("e".into());
                }
                if d[(a + b + 1) as usize] == 1 {
                    parts.push("1".into());
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ")
                }
            }
            _ => {
                let items: Vec<String> = d.iter().map(|c| c.to_string()).collect();
                format!("({})", items.join(","))
            }
        }
    }

    /// Element with the given coordinates (structured rings only).
    pub fn encode(&self, digits: &[u32]) -> Result<Elem> {
        let r = self.radix.ok_or_else(|| Error::InvalidParameter("table rings have no coordinates".into()))?;
        if digits.len() != r.dim as usize || digits.iter().any(|&d| d >= r.modulus) {
            return Err(Error::InvalidParameter(format!(
                "coordinates {digits:?} do not fit Z_{}^{}",
                r.modulus, r.dim
            )));
        }
        Ok(r.encode(digits))
    }

    /// Coordinates of an element (structured rings only).
    pub fn coordinates(&self, x: Elem) -> Option<Vec<u32>> {
        let r = self.radix?;
        let mut d = [0u32; 16];
        r.digits(x, &mut d);
        Some(d[..r.dim as usize].to_vec())
    }

    /// The exotic ring's parameters, if this is one.
    pub fn exotic_spec(&self) -> Option<ExoticRingSpec> {
        match self.structure {
            Structure::Exotic { a, b } => Some(ExoticRingSpec { a, b }),
            _ => None,
        }
    }

    /// A copy of this ring where the product `x * y` is replaced by `value`.
    pub fn with_product_overridden(&self, x: Elem, y: Elem, value: Elem) -> Result<Self> {
        let (add, mut mul) = self.to_tables();
        mul[x as usize * self.size + y as usize] = value as u16;
        Self::from_tables(format!("{} [x{x}*x{y} := x{value}]", self.label), self.size, add, mul, self.one)
    }
}

/// Display name of `Z_k[X]/(X^l - X^kp)` with `X^0` and `X^1` written as `1` and `X`.
pub fn poly_quotient_label(k: u64, l: u64, kp: u64) -> String {
    let mono = |e: u64| match e {
        0 => "1".to_string(),
        1 => "X".to_string(),
        e => format!("X^{e}"),
    };
    format!("Z_{k}[X]/({} - {})", mono(l), mono(kp))
}
