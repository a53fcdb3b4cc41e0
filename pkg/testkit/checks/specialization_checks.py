from typing import Optional

import numpy as np

from engine.lattice import GLOBALIZATION, IDENTITY
from engine.similarity import (HEDGED_GLOBALIZATION, HEDGED_IDENTITY, RANK_BASED, TUPLE_BASED,
                               ComparisonConfig, ComparisonMode, subsethood, table_similarity)
from testkit.generators import GenSpec, InstanceGenerator

from .base_check import BaseCheck, dump_table

SPEC = GenSpec(chain_size=20, values_per_domain=3, max_rows=5)
TRANSITIVE_SPEC = GenSpec(chain_size=20, values_per_domain=3, max_rows=5, transitive=True)


class HedgeSpecializationCheck(BaseCheck):
    def get_name(self) -> str:
        return "hedge_specialization"

    def get_description(self) -> str:
        return ("Hedged subsethood with the identity hedge equals tuple-based subsethood; with "
                "globalization and separating similarities it equals rank-based subsethood")

    def instance_count(self, iterations: int) -> int:
        return min(iterations, 500)

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        generator = InstanceGenerator(SPEC, seed)
        scheme = generator.scheme(['A', 'B'], separating=True)
        d1, d2 = generator.rdt(scheme), generator.rdt(scheme)
        lattice = d1.lattice
        fmt = lattice.format_degree
        pairs = [
            ("identity hedge vs tuple-based", HEDGED_IDENTITY, TUPLE_BASED),
            ("globalization vs rank-based", HEDGED_GLOBALIZATION, RANK_BASED),
        ]
        for label, hedged, reference in pairs:
            left, right = subsethood(d1, d2, hedged), subsethood(d1, d2, reference)
            if left != right:
                return f"{label}: {fmt(left)} != {fmt(right)}\n{dump_table('D1', d1)}\n{dump_table('D2', d2)}"
        return None


class QuasiorderCheck(BaseCheck):
    def get_name(self) -> str:
        return "quasiorder"

    def get_description(self) -> str:
        return ("For transitive similarities, hedged subsethood is reflexive and transitive and the "
                "induced similarity is reflexive, symmetric and transitive (identity and globalization)")

    def instance_count(self, iterations: int) -> int:
        return min(iterations, 500)

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        generator = InstanceGenerator(TRANSITIVE_SPEC, seed)
        scheme = generator.scheme(['A', 'B'])
        d1, d2, d3 = generator.rdt(scheme), generator.rdt(scheme), generator.rdt(scheme)
        lattice = d1.lattice
        fmt = lattice.format_degree
        dump = "\n".join([dump_table("D1", d1), dump_table("D2", d2), dump_table("D3", d3)])
        for hedge in (IDENTITY, GLOBALIZATION):
            cfg = ComparisonConfig(ComparisonMode.HEDGED, hedge)
            s12, s23, s13 = subsethood(d1, d2, cfg), subsethood(d2, d3, cfg), subsethood(d1, d3, cfg)
            e12, e23, e13 = (table_similarity(d1, d2, cfg), table_similarity(d2, d3, cfg),
                             table_similarity(d1, d3, cfg))
            name = cfg.describe()
            if subsethood(d1, d1, cfg) != lattice.top:
                return f"{name}: S(D1, D1) = {fmt(subsethood(d1, d1, cfg))}\n{dump}"
            if lattice.tnorm(s12, s23) > s13:
                return f"{name}: S12 * S23 = {fmt(lattice.tnorm(s12, s23))} > S13 = {fmt(s13)}\n{dump}"
            if e12 != table_similarity(d2, d1, cfg):
                return f"{name}: E not symmetric\n{dump}"
            if lattice.tnorm(e12, e23) > e13:
                return f"{name}: E12 * E23 = {fmt(lattice.tnorm(e12, e23))} > E13 = {fmt(e13)}\n{dump}"
        return None
