# Random instance generators, brute-force oracles and property checks
from .generators import (GenSpec, GenerationError, InstanceGenerator, gen_catalog, gen_domain,
                         gen_plan, gen_rdt, spawn_seeds, transitivize, transitivize_domain)
from .oracle import MeasureKind, oracle_eval, oracle_measure, tables_agree
from .naive import naive_eval, as_relation

__all__ = [
    'GenSpec', 'GenerationError', 'InstanceGenerator', 'gen_catalog', 'gen_domain', 'gen_plan',
    'gen_rdt', 'spawn_seeds', 'transitivize', 'transitivize_domain',
    'MeasureKind', 'oracle_eval', 'oracle_measure', 'tables_agree',
    'naive_eval', 'as_relation',
]
