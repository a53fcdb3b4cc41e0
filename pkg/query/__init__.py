# Query language: expression tree, parser, evaluator and sensitivity bounds
from .nodes import (QueryExpr, TableRef, Union, Meet, OTimes, Residuum, Cross, Join, Shift, Project,
                    SelectVal, SelectAttr, SelectClosure)
from .parser import QueryParser, parse, to_text
from .evaluator import QueryEvaluator, DerivedScheme, evaluate, derive_scheme
from .bounds import SensitivityBound, BoundReport, TraceStep, propagate_bound, verify_bound

__all__ = [
    'QueryExpr', 'TableRef', 'Union', 'Meet', 'OTimes', 'Residuum', 'Cross', 'Join', 'Shift',
    'Project', 'SelectVal', 'SelectAttr', 'SelectClosure',
    'QueryParser', 'parse', 'to_text',
    'QueryEvaluator', 'DerivedScheme', 'evaluate', 'derive_scheme',
    'SensitivityBound', 'BoundReport', 'TraceStep', 'propagate_bound', 'verify_bound',
]
