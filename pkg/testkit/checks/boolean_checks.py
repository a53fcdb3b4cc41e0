from typing import Optional

import numpy as np

from engine.schema import SimilarityKind
from engine.similarity import RANK_BASED, TUPLE_BASED, table_similarity, subsethood
from query.evaluator import evaluate
from testkit.generators import GenSpec, InstanceGenerator
from testkit.naive import as_relation, naive_eval, naive_subset

from .base_check import BaseCheck, dump_catalog

SPEC = GenSpec(chain_size=1, values_per_domain=3, max_rows=5)


class BooleanDegenerationCheck(BaseCheck):
    def get_name(self) -> str:
        return "boolean_degeneration"

    def get_description(self) -> str:
        return ("On the two-element chain with identity similarities every operation and measure "
                "agrees with classical relational algebra")

    def instance_count(self, iterations: int) -> int:
        return min(iterations, 200)

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        generator = InstanceGenerator(SPEC, seed)
        catalog = generator.catalog(similarity_kind=SimilarityKind.IDENTITY)
        plan = generator.plan(catalog, depth=3, zero_default_projections=True)
        result = evaluate(plan, catalog)
        expected = naive_eval(plan, catalog)
        if as_relation(result) != expected:
            return f"query: {plan.to_text()}\n{dump_catalog(catalog)}"

        lattice = SPEC.lattice()
        r, s = catalog['r'], catalog['s']
        crisp = naive_subset(as_relation(r), as_relation(s))
        for cfg in (RANK_BASED, TUPLE_BASED):
            if (subsethood(r, s, cfg) == lattice.top) != crisp:
                return f"{cfg.describe()} subsethood disagrees with inclusion\n{dump_catalog(catalog)}"
            equal = as_relation(r) == as_relation(s)
            if (table_similarity(r, s, cfg) == lattice.top) != equal:
                return f"{cfg.describe()} similarity disagrees with equality\n{dump_catalog(catalog)}"
        return None
