//! Truncated-bitmask model of the finite/cofinite algebra and the law checks
//! run against it.

use ckl_core::cofinite::{Kind, Position, SAlgebra, SElem};
use rand::Rng;

pub const WIDTH: Position = 128;

/// An element truncated to positions `0..WIDTH`, with the value every later
/// position takes. Exact for supports well below the width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trunc {
    low: u128,
    tail: bool,
}

impl Trunc {
    pub fn of(x: &SElem) -> Trunc {
        let mut low = 0u128;
        for &p in x.support() {
            assert!(p < WIDTH);
            low |= 1 << p;
        }
        match x.kind() {
            Kind::Finite => Trunc { low, tail: false },
            Kind::Cofinite => Trunc { low: !low, tail: true },
        }
    }

    pub fn leq(self, o: Trunc) -> bool {
        self.low & !o.low == 0 && (!self.tail || o.tail)
    }

    pub fn meet(self, o: Trunc) -> Trunc {
        Trunc {
            low: self.low & o.low,
            tail: self.tail && o.tail,
        }
    }

    pub fn join(self, o: Trunc) -> Trunc {
        Trunc {
            low: self.low | o.low,
            tail: self.tail || o.tail,
        }
    }

    pub fn not(self) -> Trunc {
        Trunc {
            low: !self.low,
            tail: !self.tail,
        }
    }

    pub fn one() -> Trunc {
        Trunc { low: !0, tail: true }
    }

    pub fn zero() -> Trunc {
        Trunc { low: 0, tail: false }
    }

    pub fn k(self) -> Position {
        (0..WIDTH)
            .step_by(2)
            .filter(|&p| self.low >> p & 1 == 0)
            .last()
            .map_or(0, |p| p + 2)
    }

    pub fn clear_evens(self, keep: impl Fn(Position) -> bool) -> Trunc {
        let mut low = self.low;
        for p in (0..WIDTH).step_by(2) {
            if !keep(p) {
                low &= !(1 << p);
            }
        }
        Trunc { low, ..self }
    }

    pub fn box_k(self, n_agents: u32, agent: u32) -> Trunc {
        if !self.tail {
            return Trunc::zero();
        }
        if self == Trunc::one() {
            return self;
        }
        let k = self.k();
        if Position::from(agent % n_agents) == k % Position::from(n_agents) {
            self.clear_evens(|p| p > k)
        } else {
            self.clear_evens(|p| p >= k)
        }
    }

    pub fn e(self, n_agents: u32) -> Trunc {
        (1..=n_agents).fold(Trunc::one(), |acc, i| acc.meet(self.box_k(n_agents, i)))
    }

    pub fn c(self) -> Trunc {
        if self == Trunc::one() {
            self
        } else {
            Trunc::zero()
        }
    }
}

/// Every element whose support lies in `0..bits`.
pub fn family(bits: u32) -> Vec<SElem> {
    let supp = |m: u32| (0..bits).filter(move |&i| m >> i & 1 == 1).map(Position::from);
    (0..1u32 << bits)
        .flat_map(|m| [SElem::finite(supp(m)), SElem::cofinite(supp(m))])
        .collect()
}

pub fn random_elem<R: Rng>(rng: &mut R, bits: u32) -> SElem {
    let m: u32 = rng.gen_range(0..1 << bits);
    let supp = (0..bits).filter(|&i| m >> i & 1 == 1).map(Position::from);
    if rng.gen() {
        SElem::finite(supp)
    } else {
        SElem::cofinite(supp)
    }
}

pub fn check_unary(alg: &SAlgebra, x: &SElem) {
    let n = alg.n_agents();
    let tx = Trunc::of(x);
    assert_eq!(Trunc::of(&x.complement()), tx.not());
    for agent in 1..=n {
        let kx = alg.box_k(agent, x);
        assert_eq!(Trunc::of(&kx), tx.box_k(n, agent), "K{agent} {x}, N={n}");
        assert!(kx.leq(x), "K{agent} {x} <= {x}");
    }
    let e = alg.e_of(x);
    assert_eq!(Trunc::of(&e), tx.e(n));
    assert_eq!(e, SAlgebra::e_closed_form(x));
    let c = SAlgebra::box_c(x);
    assert_eq!(Trunc::of(&c), tx.c());
    assert!(c.leq(x));
    assert!(c.leq(&alg.e_of(&c)));
    let induction = SAlgebra::box_c(&x.implies(&alg.e_of(x)));
    assert!(induction.leq(&x.implies(&c)), "induction fails at {x}");
}

pub fn check_binary(alg: &SAlgebra, x: &SElem, y: &SElem) {
    let (tx, ty) = (Trunc::of(x), Trunc::of(y));
    assert_eq!(x.leq(y), tx.leq(ty), "{x} <= {y}");
    assert_eq!(Trunc::of(&x.meet(y)), tx.meet(ty));
    assert_eq!(Trunc::of(&x.join(y)), tx.join(ty));
    assert_eq!(Trunc::of(&x.implies(y)), tx.not().join(ty));
    for agent in 1..=alg.n_agents() {
        let meet = alg.box_k(agent, &x.meet(y));
        assert_eq!(meet, alg.box_k(agent, x).meet(&alg.box_k(agent, y)));
        if x.leq(y) {
            assert!(alg.box_k(agent, x).leq(&alg.box_k(agent, y)));
        }
    }
    let c = SAlgebra::box_c(&x.meet(y));
    assert_eq!(c, SAlgebra::box_c(x).meet(&SAlgebra::box_c(y)));
}
