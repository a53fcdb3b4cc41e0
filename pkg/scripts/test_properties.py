"""
Runs every registered property check under pytest.

RANKDB_TEST_ITERATIONS sets the instances per check (default 200) and
RANKDB_SEED the root seed; a failure prints the seed and instance to replay.
"""
import os

import pytest

from testkit.checks import CheckManager

ITERATIONS = int(os.environ.get('RANKDB_TEST_ITERATIONS', 200))
SEED = int(os.environ.get('RANKDB_SEED', 0))

MANAGER = CheckManager()


@pytest.mark.parametrize('name', list(MANAGER.get_all_checks()))
def test_property(name):
    result = MANAGER.execute_check(name, ITERATIONS, SEED)
    assert 'error' not in result, result.get('error')
    details = "\n\n".join(f"instance {v['instance']} (seed {v['seed']}):\n{v['detail']}"
                          for v in result['violations'][:3])
    assert result['passed'], details
