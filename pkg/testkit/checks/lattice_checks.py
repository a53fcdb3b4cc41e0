import itertools
from typing import List, Optional

import numpy as np

from engine.lattice import (GLOBALIZATION, IDENTITY, ChainLattice, GoedelLattice, LukasiewiczLattice,
                            ProductLattice, ResiduatedLattice)

from .base_check import BaseCheck

CHAIN_SIZES = (1, 2, 5, 12)
# 200 instances (the pytest default) give 10^4 random triples per float lattice.
TRIPLES_PER_INSTANCE = 50
HEDGES = (IDENTITY, GLOBALIZATION)


def _where(lattice: ResiduatedLattice, *degrees) -> str:
    names = "abc"
    values = " ".join(f"{names[i]}={lattice.format_degree(d)}" for i, d in enumerate(degrees))
    return f"{lattice.name} {values}"


def law_violations(lattice: ResiduatedLattice, a, b, c) -> List[str]:
    """Adjointness and the monoid laws for one triple; conclusions allow float rounding."""
    where = _where(lattice, a, b, c)
    problems = []
    if lattice.leq(lattice.tnorm(a, b), c) and not lattice.approx_leq(a, lattice.residuum(b, c)):
        problems.append(f"a*b <= c but a > b->c ({where})")
    if lattice.leq(a, lattice.residuum(b, c)) and not lattice.approx_leq(lattice.tnorm(a, b), c):
        problems.append(f"a <= b->c but a*b > c ({where})")
    if not lattice.approx_eq(lattice.tnorm(a, b), lattice.tnorm(b, a)):
        problems.append(f"tnorm not commutative ({where})")
    if not lattice.approx_eq(lattice.tnorm(lattice.tnorm(a, b), c), lattice.tnorm(a, lattice.tnorm(b, c))):
        problems.append(f"tnorm not associative ({where})")
    if not lattice.approx_eq(lattice.tnorm(a, lattice.top), a):
        problems.append(f"top is not the tnorm unit ({where})")
    return problems


def order_violations(lattice: ResiduatedLattice, a, b, c) -> List[str]:
    """Lattice laws of meet and join; these are exact on every carrier."""
    where = _where(lattice, a, b, c)
    meet, join = lattice.meet, lattice.join
    problems = []
    if meet(a, a) != a or join(a, a) != a:
        problems.append(f"meet or join not idempotent ({where})")
    if meet(a, b) != meet(b, a) or join(a, b) != join(b, a):
        problems.append(f"meet or join not commutative ({where})")
    if meet(meet(a, b), c) != meet(a, meet(b, c)) or join(join(a, b), c) != join(a, join(b, c)):
        problems.append(f"meet or join not associative ({where})")
    if meet(a, join(a, b)) != a or join(a, meet(a, b)) != a:
        problems.append(f"absorption fails ({where})")
    return problems


def residuum_violations(lattice: ResiduatedLattice, a, b, c) -> List[str]:
    """Modus ponens, monotonicity of the residuum, exportation and the biresiduum."""
    where = _where(lattice, a, b, c)
    res = lattice.residuum
    problems = []
    if not lattice.approx_leq(lattice.tnorm(a, res(a, b)), b):
        problems.append(f"a*(a->b) > b ({where})")
    if lattice.leq(a, b) and not lattice.approx_leq(res(b, c), res(a, c)):
        problems.append(f"residuum not antitone in its first argument ({where})")
    if lattice.leq(b, c) and not lattice.approx_leq(res(a, b), res(a, c)):
        problems.append(f"residuum not monotone in its second argument ({where})")
    if not lattice.approx_eq(res(a, res(b, c)), res(lattice.tnorm(a, b), c)):
        problems.append(f"a->(b->c) differs from (a*b)->c ({where})")
    if lattice.biresiduum(a, a) != lattice.top:
        problems.append(f"a<->a is not top ({where})")
    # approx_eq is exact on chains.
    if lattice.biresiduum(a, b) == lattice.top and not lattice.approx_eq(a, b):
        problems.append(f"a<->b is top for distinct a and b ({where})")
    return problems


def hedge_violations(lattice: ResiduatedLattice, a, b) -> List[str]:
    """Hedge axioms for the identity and globalization hedges on one pair."""
    where = _where(lattice, a, b)
    problems = []
    for hedge in HEDGES:
        def h(x, hedge=hedge):
            return hedge.apply(lattice, x)

        name = hedge.kind.value
        if h(lattice.top) != lattice.top:
            problems.append(f"{name}: top is not fixed ({where})")
        if not lattice.leq(h(a), a):
            problems.append(f"{name}: a* > a ({where})")
        if lattice.leq(a, b) and not lattice.leq(h(a), h(b)):
            problems.append(f"{name}: not monotone ({where})")
        if not lattice.approx_leq(lattice.tnorm(h(a), h(b)), h(lattice.tnorm(a, b))):
            problems.append(f"{name}: a* * b* > (a*b)* ({where})")
        if h(h(a)) != h(a):
            problems.append(f"{name}: not idempotent ({where})")
    return problems


def all_violations(lattice: ResiduatedLattice, a, b, c) -> List[str]:
    return [*law_violations(lattice, a, b, c), *order_violations(lattice, a, b, c),
            *residuum_violations(lattice, a, b, c), *hedge_violations(lattice, a, b)]


class LatticeLawsCheck(BaseCheck):
    def get_name(self) -> str:
        return "lattice_laws"

    def get_description(self) -> str:
        return ("Adjointness, the monoid and lattice laws, residuum laws and hedge axioms: "
                "exhaustive on chains of size 1, 2, 5 and 12, random triples on the "
                "unit-interval lattices")

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        rng = np.random.default_rng(seed)
        problems: List[str] = []
        if seed.spawn_key[-1] == 0:
            for size in CHAIN_SIZES:
                chain = ChainLattice(size)
                for a, b, c in itertools.product(chain.elements(), repeat=3):
                    problems.extend(all_violations(chain, a, b, c))
        for lattice in (LukasiewiczLattice(), GoedelLattice(), ProductLattice()):
            a, b, c = (lattice.sample(rng, TRIPLES_PER_INSTANCE) for _ in range(3))
            for triple in zip(a, b, c):
                problems.extend(all_violations(lattice, *triple))
        return "\n".join(problems[:5]) if problems else None
