//! Parameter tuples for `upsilon verify`.

use upsilon_core::knots::KnotExpr;
use upsilon_core::upsilon::{Identity, IdentityParams};

#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub pmax: u64,
    pub qmax: u64,
    pub cmax: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn coprime(a: u64, b: u64) -> bool {
    gcd(a, b) == 1
}

pub fn torus_cores(cmax: u64) -> Vec<KnotExpr> {
    let mut out = Vec::new();
    for a in 2..=cmax {
        for b in (a + 1)..=cmax {
            if coprime(a, b) {
                out.push(KnotExpr::torus(a, b));
            }
        }
    }
    out
}

pub fn pretzel_cores(cmax: u64) -> Vec<KnotExpr> {
    (1..=cmax).map(|n| KnotExpr::Pretzel { n }).collect()
}

pub fn all_cores(cmax: u64) -> Vec<KnotExpr> {
    let mut out = vec![KnotExpr::Unknot];
    out.extend(torus_cores(cmax));
    out.extend(pretzel_cores(cmax));
    out
}

/// Coprime `(p, q)` with `2 <= p <= pmax` and `q` in `range(p)`.
fn cable_pairs(pmax: u64, range: impl Fn(u64) -> (u64, u64)) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for p in 2..=pmax {
        let (lo, hi) = range(p);
        for q in lo.max(1)..=hi {
            if coprime(p, q) {
                out.push((p, q));
            }
        }
    }
    out
}

fn windowed_pairs(g: u64, pmax: u64) -> Vec<(u64, u64)> {
    if g == 0 {
        return Vec::new();
    }
    // (2g-1)p < q < 2gp
    cable_pairs(pmax, |p| ((2 * g - 1) * p + 1, 2 * g * p - 1))
}

fn towers(core: &KnotExpr, pmax: u64) -> Vec<KnotExpr> {
    let mut out = Vec::new();
    let g = core.genus();
    for (p1, q1) in cable_pairs(pmax, |p| (2 * g * p, 2 * g * p + 6)) {
        let first = KnotExpr::cable(core.clone(), p1, q1);
        let g1 = first.genus();
        out.push(first.clone());
        for (p2, q2) in cable_pairs(pmax, |p| (2 * g1 * p, 2 * g1 * p + 6)) {
            out.push(KnotExpr::cable(first.clone(), p2, q2));
        }
    }
    out
}

/// Every `(identity, params)` tuple checked by one `verify` run, in output order.
pub fn tuples(id: Identity, cores: &[KnotExpr], b: Bounds) -> Vec<IdentityParams> {
    let mut out = Vec::new();
    match id {
        Identity::TorusIntegral | Identity::TorusDecomposition => {
            for (p, q) in cable_pairs(b.pmax, |p| (p + 1, b.qmax)) {
                out.push(IdentityParams::pair(p, q));
            }
        }
        Identity::AdditiveCable => {
            for core in cores {
                let g = core.genus();
                for (p, q) in cable_pairs(b.pmax, |p| (2 * g * p, b.qmax)) {
                    out.push(IdentityParams::cable(core.clone(), p, q));
                }
            }
        }
        Identity::MiddleStretch | Identity::WindowedCable | Identity::Sandwich => {
            for core in cores {
                for (p, q) in windowed_pairs(core.genus(), b.pmax) {
                    out.push(IdentityParams::cable(core.clone(), p, q));
                }
            }
        }
        Identity::Reflections => {
            for core in cores.iter().filter(|k| k.genus() > 0) {
                out.push(IdentityParams::knot(core.clone()));
                for (p, q) in windowed_pairs(core.genus(), b.pmax) {
                    out.push(IdentityParams::cable(core.clone(), p, q));
                }
            }
        }
        Identity::IteratedIntegral => {
            for core in cores {
                out.extend(towers(core, b.pmax).into_iter().map(IdentityParams::knot));
            }
        }
        Identity::CableSemigroup => {
            for core in cores {
                let g = core.genus();
                let lo = (2 * g).saturating_sub(1);
                for (p, q) in cable_pairs(b.pmax, |p| (lo * p, 2 * g * p + 10)) {
                    out.push(IdentityParams::cable(core.clone(), p, q));
                }
            }
        }
        Identity::Structure => {
            for core in cores {
                out.push(IdentityParams::knot(core.clone()));
                let g = core.genus();
                let lo = (2 * g).saturating_sub(1);
                for (p, q) in cable_pairs(b.pmax, |p| (lo * p + 1, 2 * g * p + 4)) {
                    out.push(IdentityParams::knot(KnotExpr::cable(core.clone(), p, q)));
                }
            }
        }
    }
    out
}
