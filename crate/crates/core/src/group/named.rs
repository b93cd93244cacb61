//! Constructors for the standard families, and a small textual syntax for
//! naming them (`cyclic:6`, `quaternion:3`, `symmetric:3 * cyclic:5`, ...).

use super::FiniteGroup;
use crate::{Error, Result};

pub fn trivial() -> FiniteGroup {
    cyclic(1)
}

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs n >= 1");
    let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
    FiniteGroup::from_trusted_table(n, table).with_name(format!("Z{n}"))
}

/// Dihedral group of order `2n`; element `j*n + i` is `r^i s^j`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::UnsupportedParameter("dihedral needs n >= 1".into()));
    }
    let idx = |i: usize, j: usize| j * n + i;
    let mut table = Vec::with_capacity(4 * n * n);
    for a in 0..2 * n {
        let (i, j) = (a % n, a / n);
        for b in 0..2 * n {
            let (k, l) = (b % n, b / n);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            table.push(idx(rot, (j + l) % 2));
        }
    }
    Ok(FiniteGroup::from_trusted_table(2 * n, table).with_name(format!("D{n}")))
}

/// Generalized quaternion group of order `2^n`:
/// `<x, y | x^(2^(n-1)) = 1, y^2 = x^(2^(n-2)), y^-1 x y = x^-1>`.
/// Element `j*m + i` is `x^i y^j` with `m = 2^(n-1)`.
pub fn generalized_quaternion(n: u32) -> Result<FiniteGroup> {
    if !(3..=9).contains(&n) {
        return Err(Error::UnsupportedParameter(format!(
            "quaternion group needs 3 <= n <= 9, got {n}"
        )));
    }
    let m = 1usize << (n - 1);
    let half = m / 2;
    let order = 2 * m;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (i, j) = (a % m, a / m);
        for b in 0..order {
            let (k, l) = (b % m, b / m);
            let prod = if j == 0 {
                l * m + (i + k) % m
            } else if l == 0 {
                m + (i + m - k) % m
            } else {
                (i + m - k + half) % m
            };
            table.push(prod);
        }
    }
    Ok(FiniteGroup::from_trusted_table(order, table).with_name(format!("Q{order}")))
}

pub fn symmetric(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(Error::UnsupportedParameter("symmetric needs k >= 1".into()));
    }
    let mut gens = Vec::new();
    if k >= 2 {
        let mut t: Vec<usize> = (0..k).collect();
        t.swap(0, 1);
        gens.push(t);
    }
    if k >= 3 {
        gens.push((0..k).map(|i| (i + 1) % k).collect());
    }
    Ok(FiniteGroup::from_permutation_generators(k, &gens)?.with_name(format!("S{k}")))
}

pub fn alternating(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(Error::UnsupportedParameter("alternating needs k >= 1".into()));
    }
    let gens: Vec<Vec<usize>> = (2..k)
        .map(|i| {
            let mut p: Vec<usize> = (0..k).collect();
            p[0] = 1;
            p[1] = i;
            p[i] = 0;
            p
        })
        .collect();
    Ok(FiniteGroup::from_permutation_generators(k, &gens)?.with_name(format!("A{k}")))
}

/// Row-major product: element `a * |h| + b` is the pair `(a, b)`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m, n) = (g.order(), h.order());
    let order = m * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b) = (x / n, x % n);
        for y in 0..order {
            let (c, d) = (y / n, y % n);
            table.push(g.mul(a, c) * n + h.mul(b, d));
        }
    }
    FiniteGroup::from_trusted_table(order, table).with_name(format!("{}x{}", g.label(), h.label()))
}

/// Product of cyclic groups `Z/n1 x Z/n2 x ...`.
pub fn abelian(factors: &[usize]) -> Result<FiniteGroup> {
    if factors.contains(&0) {
        return Err(Error::UnsupportedParameter("cyclic factor 0".into()));
    }
    let mut g = trivial();
    for (i, &f) in factors.iter().enumerate() {
        g = if i == 0 { cyclic(f) } else { direct_product(&g, &cyclic(f)) };
    }
    let name = factors.iter().map(|f| format!("Z{f}")).collect::<Vec<_>>().join("x");
    Ok(if factors.is_empty() { g } else { g.with_name(name) })
}

pub fn is_prime_number(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Prime factorization as `(p, e)` pairs sorted by `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Multiplicative order of `k` modulo `m`, or `None` when `gcd(k, m) != 1`.
pub fn multiplicative_order(k: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    let k = k % m;
    let mut x = k;
    for ord in 1..=m {
        if x == 1 {
            return Some(ord);
        }
        x = x * k % m;
    }
    None
}

/// `Z/p^a ⋊ Z/q^b` where the generator `y` of the second factor acts on the
/// generator `x` of the first by `y x y^-1 = x^k`. Element `j*p^a + i` is
/// `x^i y^j`.
pub fn metacyclic(p: u64, a: u32, q: u64, b: u32, k: u64) -> Result<FiniteGroup> {
    if !is_prime_number(p) || !is_prime_number(q) || p == q || a == 0 || b == 0 {
        return Err(Error::UnsupportedParameter(format!(
            "metacyclic needs distinct primes p, q and a, b >= 1 (got {p},{a},{q},{b})"
        )));
    }
    let pa = p.checked_pow(a).filter(|&v| v <= 1 << 20);
    let qb = q.checked_pow(b).filter(|&v| v <= 1 << 20);
    let (Some(pa), Some(qb)) = (pa, qb) else {
        return Err(Error::UnsupportedParameter("metacyclic parameters too large".into()));
    };
    let actual = multiplicative_order(k, pa).unwrap_or(0);
    if actual != qb {
        return Err(Error::InvalidActionOrder {
            k,
            modulus: pa,
            expected: qb,
            actual,
        });
    }
    let (pa, qb) = (pa as usize, qb as usize);
    let order = pa * qb;
    if order > crate::Limits::default().group_order {
        return Err(Error::OrderCapExceeded {
            order,
            cap: crate::Limits::default().group_order,
        });
    }
    // k^j mod p^a for j < q^b
    let mut kpow = vec![1usize; qb];
    for j in 1..qb {
        kpow[j] = kpow[j - 1] * (k as usize % pa) % pa;
    }
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = (x % pa, x / pa);
        for y in 0..order {
            let (i2, j2) = (y % pa, y / pa);
            let e = (i + kpow[j] * i2) % pa;
            table.push(((j + j2) % qb) * pa + e);
        }
    }
    Ok(FiniteGroup::from_trusted_table(order, table).with_name(format!("M({p}^{a}:{q}^{b},{k})")))
}

fn parse_args(args: &str) -> Result<Vec<u64>> {
    args.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InputParse(format!("bad integer {t:?}")))
        })
        .collect()
}

/// Parses a named-group expression. Factors separated by `*` are combined by
/// direct product.
///
/// Recognized forms: `trivial`, `cyclic:n`, `dihedral:n`, `quaternion:n`
/// (order `2^n`), `symmetric:k`, `alternating:k`, `abelian:n1,n2,...`,
/// `metacyclic:p,a,q,b,k`.
pub fn parse_named(spec: &str) -> Result<FiniteGroup> {
    let factors: Vec<&str> = spec.split('*').map(str::trim).collect();
    let mut groups = Vec::new();
    for f in &factors {
        groups.push(parse_single(f)?);
    }
    let mut iter = groups.into_iter();
    let first = iter.next().ok_or_else(|| Error::InputParse("empty group spec".into()))?;
    let g = iter.fold(first, |acc, h| direct_product(&acc, &h));
    Ok(g)
}

fn parse_single(spec: &str) -> Result<FiniteGroup> {
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums = if args.is_empty() { Vec::new() } else { parse_args(args)? };
    let one = |nums: &[u64]| -> Result<u64> {
        match nums {
            [n] => Ok(*n),
            _ => Err(Error::InputParse(format!("{kind} takes one integer argument"))),
        }
    };
    let cap = crate::Limits::default().group_order as u64;
    let bounded = |n: u64, ord: u64| -> Result<usize> {
        if ord > cap {
            Err(Error::OrderCapExceeded {
                order: ord as usize,
                cap: cap as usize,
            })
        } else {
            Ok(n as usize)
        }
    };
    match kind {
        "trivial" => Ok(trivial()),
        "cyclic" | "Z" => {
            let n = one(&nums)?;
            if n == 0 {
                return Err(Error::UnsupportedParameter("cyclic:0".into()));
            }
            Ok(cyclic(bounded(n, n)?))
        }
        "dihedral" | "D" => {
            let n = one(&nums)?;
            dihedral(bounded(n, 2 * n)?)
        }
        "quaternion" | "Q" => generalized_quaternion(one(&nums)? as u32),
        "symmetric" | "S" => {
            let k = one(&nums)?;
            if k > 6 {
                return Err(Error::OrderCapExceeded {
                    order: (1..=k as usize).product(),
                    cap: cap as usize,
                });
            }
            symmetric(k as usize)
        }
        "alternating" | "A" => {
            let k = one(&nums)?;
            if k > 6 {
                return Err(Error::OrderCapExceeded {
                    order: (1..=k as usize).product::<usize>() / 2,
                    cap: cap as usize,
                });
            }
            alternating(k as usize)
        }
        "abelian" => {
            let ord = nums.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n)).unwrap_or(u64::MAX);
            bounded(ord, ord)?;
            abelian(&nums.iter().map(|&n| n as usize).collect::<Vec<_>>())
        }
        "metacyclic" => match nums[..] {
            [p, a, q, b, k] => metacyclic(p, a as u32, q, b as u32, k),
            _ => Err(Error::InputParse("metacyclic takes p,a,q,b,k".into())),
        },
        _ => Err(Error::InputParse(format!("unknown group family {kind:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_satisfy_axioms() {
        for g in [
            cyclic(1),
            cyclic(7),
            dihedral(5).unwrap(),
            generalized_quaternion(3).unwrap(),
            generalized_quaternion(4).unwrap(),
            symmetric(4).unwrap(),
            alternating(4).unwrap(),
            abelian(&[2, 4]).unwrap(),
            metacyclic(7, 1, 3, 1, 2).unwrap(),
            metacyclic(5, 1, 2, 2, 2).unwrap(),
            direct_product(&symmetric(3).unwrap(), &cyclic(2)),
        ] {
            g.validate().unwrap();
        }
    }

    #[test]
    fn quaternion_has_unique_involution() {
        for n in 3..=5 {
            let q = generalized_quaternion(n).unwrap();
            assert_eq!(q.order(), 1 << n);
            let involutions: Vec<usize> = q.elements().filter(|&a| q.element_order(a) == 2).collect();
            let m = 1usize << (n - 1);
            assert_eq!(involutions, vec![m / 2]);
            // y^-1 x y = x^-1 with x = 1, y = m
            let y = m;
            assert_eq!(q.mul(q.mul(q.inv(y), 1), y), q.inv(1));
            assert_eq!(q.mul(y, y), m / 2);
        }
        assert!(matches!(generalized_quaternion(2), Err(Error::UnsupportedParameter(_))));
    }

    #[test]
    fn metacyclic_order_21() {
        assert_eq!(multiplicative_order(2, 7), Some(3));
        let g = metacyclic(7, 1, 3, 1, 2).unwrap();
        assert_eq!(g.order(), 21);
        assert!(!g.is_abelian());
        // y x y^-1 = x^2 with x = 1, y = 7
        assert_eq!(g.conjugate(7, 1), 2);
        assert!(matches!(
            metacyclic(7, 1, 3, 1, 3),
            Err(Error::InvalidActionOrder { actual: 6, .. })
        ));
    }

    #[test]
    fn small_named_groups() {
        assert_eq!(cyclic(1).order(), 1);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(symmetric(1).unwrap().order(), 1);
        assert_eq!(symmetric(2).unwrap().order(), 2);
        assert_eq!(alternating(5).unwrap().order(), 60);
        let g = direct_product(&cyclic(2), &cyclic(3));
        assert_eq!(g.mul(1, 3), 4);
    }

    #[test]
    fn parses_expressions() {
        assert_eq!(parse_named("quaternion:3").unwrap().order(), 8);
        assert_eq!(parse_named("symmetric:3 * cyclic:5").unwrap().order(), 30);
        assert_eq!(parse_named("abelian:2,2,3").unwrap().order(), 12);
        assert_eq!(parse_named("metacyclic:7,1,3,1,2").unwrap().order(), 21);
        assert_eq!(parse_named("trivial").unwrap().order(), 1);
        assert!(parse_named("klein").is_err());
        assert!(matches!(parse_named("cyclic:1000"), Err(Error::OrderCapExceeded { .. })));
    }
}
