import random

import pytest

from dyncross.dynsys import PartialDynSys, validate
from dyncross.errors import NotAYPair, SpecialCaseViolated
from dyncross.ypairs import (YPair, ZeroSystem, complemented_kernel_system,
                             enumerate_Y_pairs, ideal_system_general,
                             ideal_system_special, is_Y_pair, quotient_system)

from helpers import (all_systems, brute_force_Y_pairs, chain_system,
                     random_system, subsets)


def nodes_of(sys):
    return [(p.V, p.Vprime) for p in enumerate_Y_pairs(sys).nodes]


def test_empty_domain_pairs_are_diagonal():
    sys = PartialDynSys.make(["a", "b"], [], {}, ["a", "b"])
    assert nodes_of(sys) == [(v, v) for v in sorted(subsets(("a", "b")))]


def test_chain2_pairs():
    assert nodes_of(chain_system(2)) == [((), ()), (("1", "2"), ("2",))]


def test_fixed_point_without_relative_set():
    fp = PartialDynSys.make(["a"], ["a"], {"a": "a"}, [])
    assert nodes_of(fp) == [((), ()), (("a",), ())]


def test_bottom_and_top_always_present():
    for sys in all_systems(3):
        nodes = nodes_of(sys)
        assert nodes[0] == ((), ())
        assert (sys.points, sys.relative_set) in nodes
        assert sum(1 for v, vp in nodes if not v) == 1


def test_enumeration_matches_brute_force_exhaustively():
    for sys in all_systems(3):
        assert nodes_of(sys) == brute_force_Y_pairs(sys)


def test_enumeration_matches_brute_force_random():
    rng = random.Random(11)
    for _ in range(60):
        sys = random_system(rng, max_n=6)
        assert nodes_of(sys) == brute_force_Y_pairs(sys)


def test_lattice_count_monotone_in_relative_set():
    rng = random.Random(5)
    for _ in range(40):
        sys = random_system(rng, max_n=5)
        extra = {x for x in sys.points if rng.random() < 0.5}
        bigger = PartialDynSys.make(sys.points, sys.domain, sys.phi_map,
                                    set(sys.relative_set) | extra)
        assert len(nodes_of(bigger)) >= len(nodes_of(sys))


def test_hasse_edges_are_covers():
    lat = enumerate_Y_pairs(chain_system(3))
    assert len(lat.nodes) == 2
    assert lat.hasse_edges == ((0, 1),)
    sys = PartialDynSys.make(["a", "b"], [], {}, ["a", "b"])
    lat = enumerate_Y_pairs(sys)
    for lo, hi in lat.hasse_edges:
        a, b = lat.nodes[lo], lat.nodes[hi]
        assert a.leq(b) and a != b
        assert not any(a.leq(c) and c.leq(b) and c not in (a, b)
                       for c in lat.nodes)
    # the Boolean lattice on two atoms has 4 covers
    assert len(lat.hasse_edges) == 4


def test_quotient_top_is_whole_system():
    chain = chain_system(2)
    top = YPair.make(chain.points, chain.relative_set)
    assert quotient_system(chain, top).sys == chain


def test_quotient_bottom_is_zero():
    q = quotient_system(chain_system(2), YPair.make([], []))
    assert isinstance(q.sys, ZeroSystem) and q.is_zero


def test_quotient_rejects_non_pairs():
    with pytest.raises(NotAYPair):
        quotient_system(chain_system(2), YPair.make(["1"], []))


def test_quotients_validate_everywhere():
    for sys in all_systems(3):
        for p in enumerate_Y_pairs(sys).nodes:
            q = quotient_system(sys, p)
            if not q.is_zero:
                validate(q.sys)


def test_complemented_kernel_chain2():
    ck = complemented_kernel_system(chain_system(2))
    assert ck.sys.points == ("im:1", "rel:2")
    assert ck.sys.domain == ("rel:2",)
    assert ck.sys.phi_map == {"rel:2": "im:1"}
    assert ck.sys.relative_set == ("rel:2",)


def test_complemented_kernel_empty_domain():
    sys = PartialDynSys.make(["a", "b"], [], {}, ["a", "b"])
    ck = complemented_kernel_system(sys)
    assert ck.sys.points == ("rel:a", "rel:b") and ck.sys.domain == ()


def test_complemented_kernel_fixed_point_doubles():
    fp = PartialDynSys.make(["a"], ["a"], {"a": "a"}, ["a"])
    ck = complemented_kernel_system(fp)
    assert ck.sys.points == ("im:a", "rel:a")
    assert ck.sys.domain == ("im:a", "rel:a")
    assert ck.sys.phi_map == {"im:a": "im:a", "rel:a": "im:a"}


def test_ideal_general_bottom_pair_gives_full_extension():
    chain = chain_system(2)
    ideal = ideal_system_general(chain, YPair.make([], []))
    assert ideal.sys == complemented_kernel_system(chain).sys


def test_ideal_general_top_pair_is_zero():
    chain = chain_system(2)
    assert ideal_system_general(
        chain, YPair.make(chain.points, chain.relative_set)).is_zero


def test_ideal_general_validates_everywhere():
    for sys in all_systems(3):
        for p in enumerate_Y_pairs(sys).nodes:
            d = ideal_system_general(sys, p)
            if not d.is_zero:
                validate(d.sys)


def test_ideal_special_examples():
    chain = chain_system(2)
    assert ideal_system_special(chain, YPair.make(["1", "2"], ["2"])).is_zero
    sys = PartialDynSys.make(["a", "b"], ["b"], {"b": "a"}, ["a", "b"])
    d = ideal_system_special(sys, YPair.make(["a"], ["a"]))
    assert d.sys.points == ("b",)
    assert d.sys.domain == ()
    assert d.sys.relative_set == ("b",)


def test_ideal_special_rejects_wrong_vprime():
    sys = PartialDynSys.make(["a"], ["a"], {"a": "a"}, ["a"])
    assert is_Y_pair(sys, ["a"], [])
    with pytest.raises(SpecialCaseViolated):
        ideal_system_special(sys, YPair.make(["a"], []))
