"""
Tests for the residuated lattices and hedges.
"""
import itertools

import numpy as np
import pytest

from engine.errors import LatticeError
from engine.lattice import (GLOBALIZATION, IDENTITY, ChainLattice, GoedelLattice, Hedge,
                            LatticeKind, LukasiewiczLattice, ProductLattice, hedge_apply, make_lattice,
                            residuum, tnorm)
from testkit.checks.lattice_checks import TRIPLES_PER_INSTANCE, all_violations, hedge_violations

FLOAT_LATTICES = [LukasiewiczLattice(), GoedelLattice(), ProductLattice()]


class TestConnectives:
    def test_lukasiewicz(self):
        lattice = LukasiewiczLattice()
        assert lattice.tnorm(0.7, 0.5) == pytest.approx(0.2)
        assert lattice.tnorm(0.3, 0.5) == 0.0
        assert lattice.residuum(0.7, 0.5) == pytest.approx(0.8)
        assert lattice.residuum(0.5, 0.7) == 1.0

    def test_goedel(self):
        lattice = GoedelLattice()
        assert lattice.tnorm(0.7, 0.5) == 0.5
        assert lattice.residuum(0.7, 0.5) == 0.5
        assert lattice.residuum(0.5, 0.7) == 1.0

    def test_product(self):
        lattice = ProductLattice()
        assert lattice.tnorm(0.8, 0.5) == pytest.approx(0.4)
        assert lattice.residuum(0.8, 0.4) == pytest.approx(0.5)
        assert lattice.residuum(0.0, 0.0) == 1.0

    def test_chain(self):
        chain = ChainLattice(10)
        assert chain.tnorm(7, 5) == 2
        assert chain.residuum(7, 5) == 8
        assert chain.biresiduum(7, 5) == 8
        assert chain.elements() == list(range(11))

    def test_biresiduum(self):
        lattice = LukasiewiczLattice()
        assert lattice.biresiduum(0.9, 0.6) == pytest.approx(0.7)
        assert lattice.biresiduum(0.6, 0.6) == 1.0

    def test_meet_and_join_over_iterables(self):
        chain = ChainLattice(4)
        assert chain.meet_all([]) == chain.top
        assert chain.join_all([]) == chain.bot
        assert chain.meet_all([3, 1, 4]) == 1
        assert chain.join_all([3, 1, 2]) == 3
        assert chain.tnorm_all([4, 3, 3]) == 2

    def test_checked_helpers_reject_foreign_degrees(self):
        chain = ChainLattice(5)
        with pytest.raises(LatticeError):
            tnorm(chain, 0.5, 1)
        with pytest.raises(LatticeError):
            residuum(LukasiewiczLattice(), 1.5, 0.2)


class TestLaws:
    @pytest.mark.parametrize('size', [1, 2, 5, 12])
    def test_exhaustive_on_chains(self, size):
        chain = ChainLattice(size)
        for a, b, c in itertools.product(chain.elements(), repeat=3):
            assert all_violations(chain, a, b, c) == []

    @pytest.mark.parametrize('lattice', FLOAT_LATTICES, ids=lambda lattice: lattice.name)
    def test_random_float_triples(self, lattice):
        rng = np.random.default_rng(42)
        a, b, c = (lattice.sample(rng, 2000) for _ in range(3))
        for triple in zip(a, b, c):
            assert all_violations(lattice, *triple) == []

    def test_absorption_and_idempotence(self):
        lattice = GoedelLattice()
        assert lattice.meet(0.3, lattice.join(0.3, 0.8)) == 0.3
        assert lattice.join(0.3, lattice.meet(0.3, 0.8)) == 0.3
        assert lattice.meet(0.4, 0.4) == lattice.join(0.4, 0.4) == 0.4

    def test_modus_ponens(self):
        chain = ChainLattice(10)
        assert chain.tnorm(7, chain.residuum(7, 5)) == 5
        assert chain.tnorm(3, chain.residuum(3, 5)) == 3

    def test_residuum_monotonicity(self):
        chain = ChainLattice(10)
        assert chain.residuum(8, 4) <= chain.residuum(6, 4)
        assert chain.residuum(8, 3) <= chain.residuum(8, 5)

    def test_exportation(self):
        chain = ChainLattice(10)
        for a, b, c in [(7, 8, 4), (9, 9, 2), (3, 10, 0)]:
            assert chain.residuum(a, chain.residuum(b, c)) == chain.residuum(chain.tnorm(a, b), c)
        lattice = ProductLattice()
        assert lattice.residuum(0.8, lattice.residuum(0.5, 0.2)) == pytest.approx(
            lattice.residuum(lattice.tnorm(0.8, 0.5), 0.2), abs=1e-9)

    @pytest.mark.parametrize('size', [1, 5, 12])
    def test_biresiduum_is_top_only_on_the_diagonal(self, size):
        chain = ChainLattice(size)
        for a, b in itertools.product(chain.elements(), repeat=2):
            assert (chain.biresiduum(a, b) == chain.top) == (a == b)

    def test_violations_are_reported(self):
        class BrokenLattice(LukasiewiczLattice):
            def residuum(self, a, b):
                return b

        problems = all_violations(BrokenLattice(), 0.5, 0.5, 0.2)
        assert any("a<->a is not top" in p for p in problems)

    def test_random_triples_per_float_lattice(self):
        assert TRIPLES_PER_INSTANCE * 200 >= 10 ** 4


class TestDegreeText:
    def test_float_parse_and_format(self):
        lattice = LukasiewiczLattice()
        assert lattice.parse_degree("0.93") == 0.93
        assert lattice.parse_degree(" 1 ") == 1.0
        assert lattice.format_degree(0.5) == "0.50"
        assert lattice.format_degree(0.125) == "0.125"
        assert lattice.format_degree(1 - 0.91 + 0.89) == "0.98"

    @pytest.mark.parametrize('text', ["1.2", "-0.1", "abc", "nan"])
    def test_float_parse_rejects(self, text):
        with pytest.raises(LatticeError):
            LukasiewiczLattice().parse_degree(text)

    def test_chain_parse(self):
        chain = ChainLattice(10)
        assert chain.parse_degree("0.3") == 3
        assert chain.parse_degree("1/10") == 1
        assert chain.parse_degree("1") == 10
        with pytest.raises(LatticeError):
            chain.parse_degree("0.35")
        with pytest.raises(LatticeError):
            chain.parse_degree("1/0")

    def test_chain_format(self):
        assert ChainLattice(10).format_degree(3) == "0.3"
        assert ChainLattice(20).format_degree(7) == "0.35"
        assert ChainLattice(3).format_degree(1) == "1/3"
        assert ChainLattice(1).format_degree(1) == "1"


class TestConstruction:
    def test_make_lattice(self):
        assert isinstance(make_lattice('lukasiewicz'), LukasiewiczLattice)
        assert isinstance(make_lattice(LatticeKind.GOEDEL), GoedelLattice)
        assert make_lattice('chain', 4) == ChainLattice(4)
        assert make_lattice('chain', 4) != ChainLattice(5)

    @pytest.mark.parametrize('args', [('chain',), ('chain', 0), ('fuzzy',)])
    def test_make_lattice_rejects(self, args):
        with pytest.raises(LatticeError):
            make_lattice(*args)

    def test_carrier_membership(self):
        chain = ChainLattice(4)
        assert chain.contains(4)
        assert not chain.contains(5)
        assert not chain.contains(True)
        assert not chain.contains(0.5)
        with pytest.raises(LatticeError):
            LukasiewiczLattice().check(1.5)


class TestHedges:
    def test_identity(self):
        assert IDENTITY.apply(LukasiewiczLattice(), 0.4) == 0.4

    def test_globalization(self):
        lattice = LukasiewiczLattice()
        assert GLOBALIZATION.apply(lattice, 1.0) == 1.0
        assert GLOBALIZATION.apply(lattice, 0.99) == 0.0
        chain = ChainLattice(5)
        assert GLOBALIZATION.apply(chain, 5) == 5
        assert GLOBALIZATION.apply(chain, 4) == 0

    def test_hedge_apply_checks_the_carrier(self):
        chain = ChainLattice(5)
        assert hedge_apply(GLOBALIZATION, chain, 5) == 5
        assert hedge_apply(IDENTITY, chain, 3) == 3
        with pytest.raises(LatticeError):
            hedge_apply(IDENTITY, chain, 0.5)

    def test_named(self):
        assert Hedge.named('Globalization') == GLOBALIZATION
        with pytest.raises(LatticeError):
            Hedge.named('very')

    @pytest.mark.parametrize('size', [1, 2, 5, 12])
    def test_axioms_exhaustive_on_chains(self, size):
        chain = ChainLattice(size)
        for a, b in itertools.product(chain.elements(), repeat=2):
            assert hedge_violations(chain, a, b) == []

    @pytest.mark.parametrize('lattice', FLOAT_LATTICES, ids=lambda lattice: lattice.name)
    def test_axioms_on_float_pairs(self, lattice):
        rng = np.random.default_rng(7)
        pairs = list(zip(lattice.sample(rng, 500), lattice.sample(rng, 500)))
        pairs += [(1.0, 1.0), (1.0, 0.5), (0.0, 1.0)]
        for a, b in pairs:
            assert hedge_violations(lattice, a, b) == []

    def test_globalization_axioms_by_hand(self):
        lattice = ProductLattice()
        star = lambda a: GLOBALIZATION.apply(lattice, a)
        assert star(1.0) == 1.0
        assert star(star(0.7)) == star(0.7) == 0.0
        assert lattice.tnorm(star(1.0), star(0.9)) <= star(lattice.tnorm(1.0, 0.9))
