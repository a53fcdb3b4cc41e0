from typing import Optional

import numpy as np

from engine.errors import RankDBError
from engine.rdt import ClosureMode
from query.bounds import propagate_bound, verify_bound
from query.evaluator import derive_scheme, evaluate
from query.nodes import (Cross, Join, Meet, OTimes, Project, QueryExpr, Residuum, SelectAttr,
                         SelectClosure, SelectVal, Shift, TableRef, Union)
from query.parser import parse
from testkit.generators import GenSpec, InstanceGenerator

from .base_check import BaseCheck, dump_catalog

SPEC = GenSpec(chain_size=20, values_per_domain=3, max_rows=4)
TRANSITIVE_SPEC = GenSpec(chain_size=20, values_per_domain=3, max_rows=4, transitive=True)

FIXED_CORPUS = (
    "project [LOCATION] houses",
    "join (houses, customers) on PRICE ~ BUDGET",
    "project [AGENT,NAME] (join (houses, customers) on PRICE ~ BUDGET)",
    "union (houses, houses)",
    "shift 0.7 houses",
    "select houses where LOCATION ~ 'Vestal'",
    "selectc houses where PRICE ~ 200000",
    "select cross (houses, customers) where PRICE ~ BUDGET",
    "residuum (meet (r, s), otimes (r, s))",
    "select houses where AGENT ~ 'O\\'Brien'",
)

WHITESPACE = (" ", "  ", "\n", "\t ", " \n  ")


class ParserRoundTripCheck(BaseCheck):
    def get_name(self) -> str:
        return "parser_round_trip"

    def get_description(self) -> str:
        return "Printing a parsed query and parsing it again yields an equal tree, whatever the whitespace"

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        generator = InstanceGenerator(SPEC, seed)
        index = seed.spawn_key[-1]
        if index < len(FIXED_CORPUS):
            text = FIXED_CORPUS[index]
        else:
            text = generator.plan(generator.catalog(), depth=5).to_text()
        # Re-space every token boundary that already had a space.
        pieces = text.split(" ")
        spaced = pieces[0] + "".join(
            WHITESPACE[int(generator.rng.integers(0, len(WHITESPACE)))] + piece for piece in pieces[1:])
        tree = parse(spaced)
        printed = tree.to_text()
        if parse(printed) != tree:
            return f"round trip changed the tree:\n  input:   {spaced!r}\n  printed: {printed!r}"
        return None


class SchemeDerivationCheck(BaseCheck):
    def get_name(self) -> str:
        return "scheme_derivation"

    def get_description(self) -> str:
        return ("Whenever static scheme derivation succeeds, evaluation succeeds with the derived "
                "scheme and off-support rank, and vice versa")

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        generator = InstanceGenerator(SPEC, seed)
        catalog = generator.catalog()
        plan = random_tree(generator, catalog, 4)
        try:
            derived = derive_scheme(plan, catalog)
        except RankDBError as exc:
            derived, derivation_error = None, exc
        try:
            result = evaluate(plan, catalog)
        except RankDBError as exc:
            if derived is not None:
                return f"derivation succeeded but evaluation failed: {exc}\nquery: {plan.to_text()}"
            return None
        if derived is None:
            return f"evaluation succeeded but derivation failed: {derivation_error}\nquery: {plan.to_text()}"
        if derived.scheme != result.scheme or derived.default_rank != result.default_rank:
            return f"derived shape differs from the evaluated table\nquery: {plan.to_text()}"
        return None


def random_tree(generator: InstanceGenerator, catalog, depth: int) -> QueryExpr:
    """Random query tree that is not necessarily well-schemed."""
    rng = generator.rng
    names = sorted(catalog)
    attributes = ['A', 'B', 'C', 'Z']
    if depth <= 1 or rng.random() < 0.2:
        return TableRef(names[int(rng.integers(0, len(names)))] if rng.random() < 0.95 else 'missing')

    def sub():
        return random_tree(generator, catalog, depth - 1)

    def attribute():
        return attributes[int(rng.integers(0, len(attributes)))]

    choice = int(rng.integers(0, 12))
    if choice < 5:
        node_type = (Union, Meet, OTimes, Residuum, Cross)[choice]
        return node_type(sub(), sub())
    if choice == 5:
        return Shift(generator.shift_degree(), sub())
    if choice == 6:
        return Project((attribute(),), sub())
    if choice in (7, 8):
        node_type = SelectVal if choice == 7 else SelectClosure
        literal = ('a', 'b', 'q')[int(rng.integers(0, 3))]
        return node_type(sub(), attribute(), literal)
    if choice == 9:
        return SelectAttr(sub(), attribute(), attribute())
    return Join(sub(), sub(), attribute(), attribute())


class BoundSoundnessCheck(BaseCheck):
    def get_name(self) -> str:
        return "bound_soundness"

    def get_description(self) -> str:
        return ("For random plans of depth up to 5 over random catalog pairs on chain(20), the "
                "similarity of the two results is at least the propagated bound")

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        generator = InstanceGenerator(TRANSITIVE_SPEC, seed)
        catalog = generator.catalog()
        alternative = generator.alternative_catalog(catalog)
        plan = generator.plan(catalog, depth=5)
        report = verify_bound(plan, catalog, alternative, closure_mode=ClosureMode.AUTO)
        if report.holds:
            return None
        lattice = report.bound.lattice
        return (f"query: {plan.to_text()}\nbound {lattice.format_degree(report.bound.value)} > "
                f"actual {lattice.format_degree(report.actual)} ({report.measure})\n"
                f"{dump_catalog(catalog)}\nalternative:\n{dump_catalog(alternative)}")


class BoundMonotonicityCheck(BaseCheck):
    def get_name(self) -> str:
        return "bound_monotonicity"

    def get_description(self) -> str:
        return "Raising any assumption never lowers the propagated bound, and the bound is the trace root"

    def check_instance(self, seed: np.random.SeedSequence) -> Optional[str]:
        generator = InstanceGenerator(SPEC, seed)
        catalog = generator.catalog()
        lattice = generator.lattice
        plan = generator.plan(catalog, depth=5)
        assumptions = {name: generator.degree() for name in catalog}
        base = propagate_bound(plan, assumptions, lattice)
        if base.trace[-1].output != base.value:
            return f"bound {base.value} differs from the trace root\nquery: {plan.to_text()}"
        for name in catalog:
            raised = dict(assumptions)
            raised[name] = lattice.join(assumptions[name], generator.degree())
            bound = propagate_bound(plan, raised, lattice)
            if bound.value < base.value:
                return (f"raising {name} lowered the bound from {lattice.format_degree(base.value)} "
                        f"to {lattice.format_degree(bound.value)}\nquery: {plan.to_text()}")
        return None
