import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bt1fermat.errors import NotABijection, UnknownLabel
from bt1fermat.fermat import quotient_perm_data
from bt1fermat.permdata import (
    PermutationData,
    cyclic_words_of,
    find_isomorphism,
    orbit_word_multisets,
    orbits,
    permdata_isomorphic,
    word_of_orbit,
)
from bt1fermat.words import complement, parse_word


def cycles_to_pi(cycles):
    pi = {}
    for c in cycles:
        for i, a in enumerate(c):
            pi[a] = c[(i + 1) % len(c)]
    return pi


def nine_point_example():
    S = tuple(range(1, 10))
    Sf = {2, 3, 5, 6, 9}
    sector = {a: "f" if a in Sf else "v" for a in S}
    return PermutationData(S, sector, cycles_to_pi([(1, 3, 5), (2, 4, 6), (7, 8, 9)]))


def mod8_times3():
    S = (1, 2, 3, 5, 6, 7)
    return PermutationData(S, {a: "v" if a < 4 else "f" for a in S}, {a: 3 * a % 8 for a in S})


@st.composite
def perm_data(draw, max_size=9):
    n = draw(st.integers(1, max_size))
    labels = list(range(n))
    image = draw(st.permutations(labels))
    sector = {a: draw(st.sampled_from("fv")) for a in labels}
    return PermutationData(tuple(labels), sector, dict(zip(labels, image)))


def test_orbits_of_nine_point_example():
    assert [o.members for o in orbits(nine_point_example())] == [(1, 3, 5), (2, 4, 6), (7, 8, 9)]


def test_orbits_fixed_point():
    P = PermutationData(("a",), {"a": "f"}, {"a": "a"})
    assert [o.members for o in orbits(P)] == [("a",)]


def test_orbits_times_three_mod_eight():
    assert [set(o.members) for o in orbits(mod8_times3())] == [{1, 3}, {2, 6}, {5, 7}]


def test_words_of_nine_point_example():
    P = nine_point_example()
    assert str(word_of_orbit(P, 1)) == "ffv"
    assert str(word_of_orbit(P, 7)) == "fvv"


def test_word_of_orbit_mod8():
    assert str(word_of_orbit(mod8_times3(), 2)) == "fv"


def test_unknown_label():
    with pytest.raises(UnknownLabel):
        word_of_orbit(mod8_times3(), 4)


def test_per_orbit_and_expanded_multisets():
    per, ms = orbit_word_multisets(nine_point_example())
    assert cyclic_words_of(per) == {"ffv": 2, "fvv": 1}
    assert ms.to_dict() == {"ffv": 2, "fvv": 1}

    per, ms = orbit_word_multisets(mod8_times3())
    assert cyclic_words_of(per) == {"ff": 1, "vv": 1, "fv": 1}
    assert ms.to_dict() == {"f": 2, "v": 2, "fv": 1}

    per, _ = orbit_word_multisets(PermutationData((0,), {0: "f"}, {0: 0}))
    assert cyclic_words_of(per) == {"f": 1}


def test_validation():
    with pytest.raises(NotABijection):
        PermutationData((1, 2), {1: "f", 2: "v"}, {1: 2, 2: 2})
    with pytest.raises(NotABijection):
        PermutationData((1, 2), {1: "f"}, {1: 2, 2: 1})
    with pytest.raises(NotABijection):
        PermutationData((1, 2), {1: "f", 2: "x"}, {1: 2, 2: 1})


def test_isomorphic_under_relabeling():
    P = nine_point_example()
    rng = random.Random(7)
    labels = list(P.elements)
    shuffled = labels[:]
    rng.shuffle(shuffled)
    Q = P.relabeled({a: f"x{b}" for a, b in zip(labels, shuffled)})
    assert permdata_isomorphic(P, Q)
    assert find_isomorphism(P, Q) is not None


def test_power_orbit_not_isomorphic_to_two_orbits():
    long = PermutationData((0, 1, 2, 3), {0: "v", 1: "f", 2: "v", 3: "f"}, {0: 1, 1: 2, 2: 3, 3: 0})
    short = PermutationData((0, 1, 2, 3), {0: "v", 1: "f", 2: "v", 3: "f"}, {0: 1, 1: 0, 2: 3, 3: 2})
    assert cyclic_words_of(orbit_word_multisets(long)[0]) == {"fvfv": 1}
    assert cyclic_words_of(orbit_word_multisets(short)[0]) == {"fv": 2}
    assert not permdata_isomorphic(long, short)
    assert find_isomorphism(long, short) is None
    # the modules agree nonetheless
    assert orbit_word_multisets(long)[1] == orbit_word_multisets(short)[1]


def test_swapped_sectors_not_isomorphic():
    P = nine_point_example()
    assert not permdata_isomorphic(P, P.swapped())
    assert find_isomorphism(P, P.swapped()) is None


def test_json_round_trip():
    P = nine_point_example()
    Q = PermutationData.from_json(P.to_json())
    assert Q.elements == P.elements and Q.sector == P.sector and Q.pi == P.pi


def test_json_round_trip_pair_labels():
    from bt1fermat.fermat import fermat_perm_data

    P = fermat_perm_data(2, 5)
    Q = PermutationData.from_json(P.to_json())
    assert Q.elements == P.elements and Q.pi == P.pi and Q.to_json() == P.to_json()


@given(perm_data())
def test_orbit_sizes_partition(P):
    obs = orbits(P)
    assert sum(len(o) for o in obs) == P.size
    assert sorted(a for o in obs for a in o.members) == sorted(P.elements)
    for o in obs:
        assert o.members[0] == min(o.members)
        for i, a in enumerate(o.members):
            assert P.pi[a] == o.members[(i + 1) % len(o)]


@given(perm_data())
def test_word_at_pi_is_rotation(P):
    for a in P.elements:
        assert word_of_orbit(P, P.pi[a]) == word_of_orbit(P, a).rotate(1)


@given(perm_data())
def test_swap_complements_every_word(P):
    Q = P.swapped()
    for a in P.elements:
        assert word_of_orbit(Q, a) == complement(word_of_orbit(P, a))


@settings(max_examples=60, deadline=None)
@given(perm_data(max_size=7), perm_data(max_size=7))
def test_isomorphism_matches_brute_force(P, Q):
    assert permdata_isomorphic(P, Q) == (find_isomorphism(P, Q) is not None)


@settings(max_examples=40, deadline=None)
@given(perm_data(max_size=7), st.randoms(use_true_random=False))
def test_isomorphic_to_random_relabeling(P, rng):
    labels = list(P.elements)
    img = labels[:]
    rng.shuffle(img)
    Q = P.relabeled(dict(zip(labels, img)))
    assert permdata_isomorphic(P, Q)
    iota = find_isomorphism(P, Q)
    assert all(iota[P.pi[a]] == Q.pi[iota[a]] and P.sector[a] == Q.sector[iota[a]] for a in labels)


def test_quotient_data_labels_are_residues():
    P = quotient_perm_data(3, 8)
    assert str(word_of_orbit(P, 1)) == "vv" and str(word_of_orbit(P, 5)) == "ff"
    assert parse_word("fv") == word_of_orbit(P, 2)
