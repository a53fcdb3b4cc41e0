from typing import Optional

import numpy as np

from engine.lattice import GLOBALIZATION, IDENTITY
from engine.rdt import ClosureMode
from engine.similarity import ComparisonConfig, ComparisonMode, Enumeration, subsethood
from query.evaluator import evaluate
from testkit.generators import GenSpec, InstanceGenerator, transitivize
from testkit.oracle import MeasureKind, oracle_eval, oracle_measure, tables_agree

from .base_check import BaseCheck, dump_catalog, dump_table

SPEC = GenSpec(chain_size=20, values_per_domain=3, max_rows=5)

MEASURES = (
    (MeasureKind.S, ComparisonMode.RANK_BASED, IDENTITY),
    (MeasureKind.S_TUPLE, ComparisonMode.TUPLE_BASED, IDENTITY),
    (MeasureKind.S_HEDGED, ComparisonMode.HEDGED, IDENTITY),
    (MeasureKind.S_HEDGED, ComparisonMode.HEDGED, GLOBALIZATION),
)


class OperationOracleCheck(BaseCheck):
    def get_name(self) -> str:
        return "operation_oracle"

    def get_description(self) -> str:
        return "Engine evaluation of random plans equals the full-enumeration oracle on chain(20)"

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        generator = InstanceGenerator(SPEC, seed)
        catalog = generator.catalog()
        plan = generator.plan(catalog, depth=3, zero_default_projections=True)
        engine = evaluate(plan, catalog, ClosureMode.FULL)
        oracle = oracle_eval(plan, catalog)
        if tables_agree(engine, oracle):
            return None
        return (f"query: {plan.to_text()}\n{dump_catalog(catalog)}\n"
                f"{dump_table('engine', engine)}\n{dump_table('oracle', oracle)}")


class MeasureOracleCheck(BaseCheck):
    def get_name(self) -> str:
        return "measure_oracle"

    def get_description(self) -> str:
        return ("Rank-based, tuple-based and hedged subsethood (both enumerations) and the derived "
                "similarities equal their definitions evaluated over the full universe")

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        generator = InstanceGenerator(SPEC, seed)
        scheme = generator.scheme(['A', 'B'])
        d1, d2 = generator.rdt(scheme), generator.rdt(scheme)
        lattice = d1.lattice
        for kind, mode, hedge in MEASURES:
            expected = oracle_measure(kind, d1, d2, hedge)
            for enumeration in Enumeration:
                cfg = ComparisonConfig(mode, hedge, enumeration)
                actual = subsethood(d1, d2, cfg)
                if actual != expected:
                    return (f"{kind.value} {cfg.describe()}/{enumeration.value}: engine "
                            f"{lattice.format_degree(actual)} != oracle {lattice.format_degree(expected)}\n"
                            f"{dump_table('D1', d1)}\n{dump_table('D2', d2)}")
        return None


class TransitivizeCheck(BaseCheck):
    def get_name(self) -> str:
        return "transitivize"

    def get_description(self) -> str:
        return ("Transitive closure of a similarity table is pointwise larger, symmetric and "
                "transitive, and leaves transitive tables unchanged")

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        generator = InstanceGenerator(GenSpec(chain_size=20, values_per_domain=4), seed)
        lattice = generator.lattice
        values = ['a', 'b', 'c', 'd']
        pairs = [(u, v, generator.degree()) for i, u in enumerate(values) for v in values[i + 1:]]
        closed = transitivize(pairs, lattice)
        degree = {}
        for u, v, d in closed:
            degree[(u, v)] = degree[(v, u)] = d
        for v in values:
            degree[(v, v)] = lattice.top

        def sim(u, v):
            return degree.get((u, v), lattice.bot)

        for u, v, d in pairs:
            if sim(u, v) < d:
                return f"closure lowered {u}~{v} from {d} to {sim(u, v)}"
        for a in values:
            for b in values:
                for c in values:
                    if lattice.tnorm(sim(a, b), sim(b, c)) > sim(a, c):
                        return f"closure not transitive at {a}, {b}, {c}: {closed}"
        if transitivize(closed, lattice) != closed:
            return f"closure is not a fixpoint: {closed}"
        return None
