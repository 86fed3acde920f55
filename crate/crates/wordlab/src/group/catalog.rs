//! The group catalog: named constructions used throughout the sweeps.
//!
//! All catalog groups are built on the polycyclic engine from explicit
//! presentations, documented here so every result is reproducible:
//!
//! * `cyclic(n)` — one generator of order n.
//! * `q8` — generators a, b, c of relative order 2 with a^2 = b^2 = [a,b] = c.
//! * `d4` — as q8 but with a^2 = 1 (dihedral of order 8).
//! * `heisenberg(p)` — g1, g2, g3 of order p, [g1,g2] = g3 central.
//! * `extraspecial(p,n,+/-)` — order p^(2n+1) as a central product of n
//!   two-generator blocks sharing the central z. For odd p the `+` type has
//!   all p-th powers trivial (exponent p) and the `-` type sets x1^p = z
//!   (exponent p^2). For p = 2 the `+` type uses n dihedral blocks
//!   (x^2 = 1, y^2 = z) and the `-` type makes the first block quaternion
//!   (x^2 = y^2 = z).
//! * `modular16` — a of order 8 via a^4 = c, b of order 2, [a,b] = c.
//! * `free_class2_exp_p(d,p)` — generators x1..xd of order p plus one
//!   central z_ij of order p per pair i < j, with [xi,xj] = z_ij; order
//!   p^(d + d(d-1)/2).

use std::collections::BTreeMap;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::pc::PcGroup;
use crate::group::FiniteGroup;

const MAX_CATALOG_ORDER: u128 = 1_000_000;

/// One parsed parameter of a catalog name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    Int(u64),
    Sign(bool), // true = '+'
}

/// Builds a catalog group from its textual name, e.g. `heisenberg(3)` or
/// `extraspecial(2,1,-)`.
pub fn catalog(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    let (name, params) = parse_spec(spec)?;
    let int = |i: usize| -> Result<u64> {
        match params.get(i) {
            Some(Param::Int(v)) => Ok(*v),
            _ => Err(Error::Catalog(format!(
                "`{spec}`: expected integer parameter {}",
                i + 1
            ))),
        }
    };
    let expect_params = |n: usize| -> Result<()> {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::Catalog(format!(
                "`{spec}`: expected {n} parameter(s), got {}",
                params.len()
            )))
        }
    };
    let group = match name.as_str() {
        "cyclic" => {
            expect_params(1)?;
            let n = int(0)?;
            if n == 0 {
                return Err(Error::Catalog("cyclic(0) is not a group".into()));
            }
            check_order(n as u128, spec)?;
            pc(spec, vec![n], BTreeMap::new(), BTreeMap::new())?
        }
        "q8" => {
            expect_params(0)?;
            let mut pow = BTreeMap::new();
            pow.insert(0, vec![0, 0, 1]);
            pow.insert(1, vec![0, 0, 1]);
            let mut com = BTreeMap::new();
            com.insert((0, 1), vec![0, 0, 1]);
            pc(spec, vec![2, 2, 2], pow, com)?
        }
        "d4" => {
            expect_params(0)?;
            let mut pow = BTreeMap::new();
            pow.insert(1, vec![0, 0, 1]);
            let mut com = BTreeMap::new();
            com.insert((0, 1), vec![0, 0, 1]);
            pc(spec, vec![2, 2, 2], pow, com)?
        }
        "heisenberg" => {
            expect_params(1)?;
            let p = prime(int(0)?, spec)?;
            check_order((p as u128).pow(3), spec)?;
            let mut com = BTreeMap::new();
            com.insert((0, 1), vec![0, 0, 1]);
            pc(spec, vec![p, p, p], BTreeMap::new(), com)?
        }
        "extraspecial" => {
            expect_params(3)?;
            let p = prime(int(0)?, spec)?;
            let n = int(1)? as usize;
            if n == 0 {
                return Err(Error::Catalog(format!("`{spec}`: n must be >= 1")));
            }
            let plus = match params[2] {
                Param::Sign(s) => s,
                _ => {
                    return Err(Error::Catalog(format!(
                        "`{spec}`: third parameter must be + or -"
                    )))
                }
            };
            check_order((p as u128).pow(2 * n as u32 + 1), spec)?;
            let gens = 2 * n + 1;
            let z = gens - 1;
            let orders = vec![p; gens];
            let mut com = BTreeMap::new();
            let mut pow = BTreeMap::new();
            let zvec = |_: ()| {
                let mut v = vec![0u64; gens];
                v[z] = 1;
                v
            };
            for i in 0..n {
                com.insert((2 * i, 2 * i + 1), zvec(()));
            }
            if p == 2 {
                // Dihedral blocks y^2 = z; the minus type upgrades the first
                // block to quaternion with x^2 = z as well.
                for i in 0..n {
                    pow.insert(2 * i + 1, zvec(()));
                }
                if !plus {
                    pow.insert(0, zvec(()));
                }
            } else if !plus {
                pow.insert(0, zvec(()));
            }
            pc(spec, orders, pow, com)?
        }
        "modular16" => {
            expect_params(0)?;
            let mut pow = BTreeMap::new();
            pow.insert(0, vec![0, 0, 1]);
            let mut com = BTreeMap::new();
            com.insert((0, 1), vec![0, 0, 1]);
            pc(spec, vec![4, 2, 2], pow, com)?
        }
        "free_class2_exp_p" => {
            expect_params(2)?;
            let d = int(0)? as usize;
            let p = prime(int(1)?, spec)?;
            if d < 1 {
                return Err(Error::Catalog(format!("`{spec}`: d must be >= 1")));
            }
            let pairs = d * (d - 1) / 2;
            check_order((p as u128).pow((d + pairs) as u32), spec)?;
            let gens = d + pairs;
            let orders = vec![p; gens];
            let mut com = BTreeMap::new();
            let mut next = d;
            for i in 0..d {
                for _j in (i + 1)..d {
                    let mut v = vec![0u64; gens];
                    v[next] = 1;
                    com.insert((i, _j), v);
                    next += 1;
                }
            }
            pc(spec, orders, BTreeMap::new(), com)?
        }
        other => {
            return Err(Error::Catalog(format!("unknown catalog name `{other}`")));
        }
    };
    Ok(group)
}

fn pc(
    name: &str,
    orders: Vec<u64>,
    powers: BTreeMap<usize, Vec<u64>>,
    commutators: BTreeMap<(usize, usize), Vec<u64>>,
) -> Result<FiniteGroup> {
    Ok(FiniteGroup::from_pc(PcGroup::new(
        name,
        orders,
        &powers,
        &commutators,
    )?))
}

fn prime(p: u64, spec: &str) -> Result<u64> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::Catalog(format!("`{spec}`: {p} is not prime")))
    }
}

fn check_order(order: u128, spec: &str) -> Result<()> {
    if order > MAX_CATALOG_ORDER {
        Err(Error::Catalog(format!(
            "`{spec}`: order {order} exceeds the {MAX_CATALOG_ORDER} cap"
        )))
    } else {
        Ok(())
    }
}

fn parse_spec(spec: &str) -> Result<(String, Vec<Param>)> {
    let bad = |msg: &str| Error::Catalog(format!("`{spec}`: {msg}"));
    if let Some(open) = spec.find('(') {
        if !spec.ends_with(')') {
            return Err(bad("missing closing parenthesis"));
        }
        let name = spec[..open].trim().to_string();
        let inner = &spec[open + 1..spec.len() - 1];
        let mut params = Vec::new();
        for tok in inner.split(',') {
            let tok = tok.trim();
            match tok {
                "+" => params.push(Param::Sign(true)),
                "-" => params.push(Param::Sign(false)),
                _ => params.push(Param::Int(
                    tok.parse::<u64>()
                        .map_err(|_| bad(&format!("bad parameter `{tok}`")))?,
                )),
            }
        }
        Ok((name, params))
    } else {
        Ok((spec.to_string(), Vec::new()))
    }
}

/// Catalog name families, for `catalog list`.
pub fn families() -> Vec<(&'static str, &'static str)> {
    vec![
        ("cyclic(n)", "cyclic group of order n"),
        ("q8", "quaternion group of order 8"),
        ("d4", "dihedral group of order 8"),
        ("heisenberg(p)", "Heisenberg group of order p^3"),
        (
            "extraspecial(p,n,+|-)",
            "extraspecial group of order p^(2n+1), +/- type",
        ),
        ("modular16", "modular group of order 16"),
        (
            "free_class2_exp_p(d,p)",
            "free d-generator class-2 group with generator exponent p, order p^(d+d(d-1)/2)",
        ),
    ]
}

/// The curated class-<=2 sweep list with orders at most 64. The oracle
/// equivalence sweep (brute force vs central quotient) runs over exactly
/// this list.
pub fn class2_small() -> Vec<&'static str> {
    vec![
        "cyclic(2)",
        "cyclic(3)",
        "cyclic(4)",
        "cyclic(6)",
        "cyclic(8)",
        "cyclic(12)",
        "q8",
        "d4",
        "heisenberg(2)",
        "heisenberg(3)",
        "modular16",
        "extraspecial(2,1,+)",
        "extraspecial(2,1,-)",
        "extraspecial(2,2,+)",
        "extraspecial(2,2,-)",
        "extraspecial(3,1,+)",
        "extraspecial(3,1,-)",
        "free_class2_exp_p(2,2)",
        "free_class2_exp_p(2,3)",
        "free_class2_exp_p(3,2)",
    ]
}

/// Odd-p class-2 entries of orders 27, 125 and 3^6, used by the
/// odd-prime bound sweep.
pub fn odd_p_class2() -> Vec<&'static str> {
    vec![
        "heisenberg(3)",
        "extraspecial(3,1,+)",
        "extraspecial(3,1,-)",
        "free_class2_exp_p(2,3)",
        "heisenberg(5)",
        "extraspecial(5,1,+)",
        "extraspecial(5,1,-)",
        "free_class2_exp_p(3,3)",
    ]
}

/// Everything class <= 2 the sweeps touch: the small list plus the larger
/// odd-p groups.
pub fn class2_all() -> Vec<&'static str> {
    let mut all = class2_small();
    for name in odd_p_class2() {
        if !all.contains(&name) {
            all.push(name);
        }
    }
    all
}
