from typing import List, Optional, Tuple

import numpy as np

from engine.lattice import Degree
from engine.rdt import (ClosureMode, CombineKind, a_shift, cartesian, combine, join_sim, project,
                        select_attr, select_closure, select_sim)
from engine.similarity import RANK_BASED, TUPLE_BASED, subsethood, table_similarity
from testkit.generators import GenSpec, InstanceGenerator

from .base_check import BaseCheck, dump_table

RANK_SPEC = GenSpec(chain_size=20, values_per_domain=3, max_rows=5)
TUPLE_SPEC = GenSpec(chain_size=20, values_per_domain=3, max_rows=5, transitive=True)

# (label, guaranteed lower bound, measured degree)
Inequality = Tuple[str, Degree, Degree]


def _first_failure(lattice, inequalities: List[Inequality]) -> Optional[str]:
    fmt = lattice.format_degree
    for label, bound, actual in inequalities:
        if not lattice.leq(bound, actual):
            return f"{label}: bound {fmt(bound)} > actual {fmt(actual)}"
    return None


def _instance(spec: GenSpec, seed: np.random.SeedSequence):
    generator = InstanceGenerator(spec, seed)
    catalog = generator.catalog()
    d1, d2, t = catalog['r'], catalog['s'], catalog['t']
    return generator, d1, d2, t, generator.variant(d1), generator.variant(d2), generator.variant(t)


class RankPreservationCheck(BaseCheck):
    def get_name(self) -> str:
        return "rank_preservation"

    def get_description(self) -> str:
        return ("Union, meet, multiplication, shifts, residuum, cartesian product, projection, "
                "selections, joins and closure selection preserve rank-based subsethood and "
                "similarity with the stated combining connectives")

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        generator, d1, d2, t, e1, e2, u = _instance(RANK_SPEC, seed)
        lattice = d1.lattice
        meet, tnorm = lattice.meet, lattice.tnorm

        def s(a, b):
            return subsethood(a, b, RANK_BASED)

        def e(a, b):
            return table_similarity(a, b, RANK_BASED)

        s1, s2, st = s(d1, e1), s(d2, e2), s(t, u)
        sim1, sim2, simt = e(d1, e1), e(d2, e2), e(t, u)
        a = generator.degree()
        value = generator.literal(d1.scheme, 'A')

        inequalities: List[Inequality] = [
            ("S union", meet(s1, s2), s(combine(CombineKind.UNION, d1, d2), combine(CombineKind.UNION, e1, e2))),
            ("S meet", meet(s1, s2), s(combine(CombineKind.MEET, d1, d2), combine(CombineKind.MEET, e1, e2))),
            ("S otimes", tnorm(s1, s2), s(combine(CombineKind.OTIMES, d1, d2), combine(CombineKind.OTIMES, e1, e2))),
            ("S shift", s1, s(a_shift(a, d1), a_shift(a, e1))),
            ("E union", meet(sim1, sim2), e(combine(CombineKind.UNION, d1, d2), combine(CombineKind.UNION, e1, e2))),
            ("E meet", meet(sim1, sim2), e(combine(CombineKind.MEET, d1, d2), combine(CombineKind.MEET, e1, e2))),
            ("E otimes", tnorm(sim1, sim2), e(combine(CombineKind.OTIMES, d1, d2), combine(CombineKind.OTIMES, e1, e2))),
            ("E shift", sim1, e(a_shift(a, d1), a_shift(a, e1))),
            ("E residuum", tnorm(sim1, sim2),
             e(combine(CombineKind.RESIDUUM_CW, d1, d2), combine(CombineKind.RESIDUUM_CW, e1, e2))),
            ("S cross", tnorm(s1, st), s(cartesian(d1, t), cartesian(e1, u))),
            ("S project", s1, s(project(['A'], d1), project(['A'], e1))),
            ("S select", s1, s(select_sim(d1, 'A', value), select_sim(e1, 'A', value))),
            ("S select attributes", tnorm(s1, st),
             s(select_attr(cartesian(d1, t), 'A', 'C'), select_attr(cartesian(e1, u), 'A', 'C'))),
            ("E join", tnorm(sim1, simt), e(join_sim(d1, t, 'A', 'C'), join_sim(e1, u, 'A', 'C'))),
            ("S closure selection", s1,
             s(select_closure(d1, 'A', value, ClosureMode.FULL), select_closure(e1, 'A', value, ClosureMode.FULL))),
        ]
        failure = _first_failure(lattice, inequalities)
        if failure:
            return "\n".join([failure, f"a = {lattice.format_degree(a)}, value = {value}",
                              dump_table("D1", d1), dump_table("D1'", e1), dump_table("D2", d2),
                              dump_table("D2'", e2), dump_table("T", t), dump_table("T'", u)])
        return None


class TuplePreservationCheck(BaseCheck):
    def get_name(self) -> str:
        return "tuple_preservation"

    def get_description(self) -> str:
        return ("With transitive similarities, union, cartesian product, projection and closure "
                "selection (full enumeration) preserve tuple-based subsethood, which dominates "
                "rank-based subsethood")

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        generator, d1, d2, t, e1, e2, u = _instance(TUPLE_SPEC, seed)
        lattice = d1.lattice

        def s(a, b):
            return subsethood(a, b, TUPLE_BASED)

        s1, s2, st = s(d1, e1), s(d2, e2), s(t, u)
        value = generator.literal(d1.scheme, 'A')
        inequalities: List[Inequality] = [
            ("S rank <= S tuple", subsethood(d1, e1, RANK_BASED), s1),
            ("S~ union", lattice.meet(s1, s2),
             s(combine(CombineKind.UNION, d1, d2), combine(CombineKind.UNION, e1, e2))),
            ("S~ cross", lattice.tnorm(s1, st), s(cartesian(d1, t), cartesian(e1, u))),
            ("S~ project", s1, s(project(['A'], d1), project(['A'], e1))),
            ("S~ closure selection", s1,
             s(select_closure(d1, 'A', value, ClosureMode.FULL), select_closure(e1, 'A', value, ClosureMode.FULL))),
        ]
        failure = _first_failure(lattice, inequalities)
        if failure:
            return "\n".join([failure, f"value = {value}", dump_table("D1", d1), dump_table("D1'", e1),
                              dump_table("D2", d2), dump_table("D2'", e2)])
        return None
