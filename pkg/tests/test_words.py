import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bt1fermat.errors import BadCharacter, EmptyWord, NotPrimitive
from bt1fermat.words import (
    BT1Multiset,
    CyclicWord,
    Word,
    canonicalize,
    complement,
    expand_to_primitive_multiset,
    parse_word,
    primitive_root,
)

from oracles import expand, least_rotation, root_and_exponent

words = st.text(alphabet="fv", min_size=1, max_size=16)


def test_parse_fv_index_order():
    w = parse_word("fv")
    assert (w.u(1), w.u(0)) == ("f", "v")


def test_parse_ffv():
    w = parse_word("ffv")
    assert [w.u(j) for j in (2, 1, 0)] == ["f", "f", "v"]
    assert str(w) == "ffv"


def test_parse_bad_character_reports_position():
    with pytest.raises(BadCharacter) as exc:
        parse_word("xv")
    assert exc.value.position == 0
    with pytest.raises(BadCharacter) as exc:
        parse_word("ffvq")
    assert exc.value.position == 3


def test_parse_empty():
    with pytest.raises(EmptyWord):
        parse_word("")


def test_empty_word_rejected_downstream():
    empty = Word("")
    for op in (complement, canonicalize, primitive_root):
        with pytest.raises(EmptyWord):
            op(empty)
    with pytest.raises(EmptyWord):
        expand_to_primitive_multiset([Word("fv"), empty])


@pytest.mark.parametrize("w, c", [("ffv", "vvf"), ("f", "v"), ("fvv", "vff")])
def test_complement(w, c):
    assert str(complement(parse_word(w))) == c


def test_complement_of_fvv_is_cyclically_ffv():
    assert canonicalize(complement(parse_word("fvv"))) == canonicalize("ffv")


@pytest.mark.parametrize("w, c", [("vf", "fv"), ("fvv", "fvv"), ("vvfv", "fvvv")])
def test_canonicalize(w, c):
    assert str(canonicalize(parse_word(w))) == c


@pytest.mark.parametrize("w, root, e", [("fvfv", "fv", 2), ("ffv", "ffv", 1), ("vvvv", "v", 4)])
def test_primitive_root(w, root, e):
    r, k = primitive_root(parse_word(w))
    assert (str(r), k) == (root, e)


def test_expand_examples():
    ws = lambda xs: [parse_word(x) for x in xs]  # noqa: E731
    assert expand_to_primitive_multiset(ws(["vv", "ff", "fv"])).to_dict() == {"f": 2, "v": 2, "fv": 1}
    assert expand_to_primitive_multiset(ws(["ffv", "ffv", "fvv"])).to_dict() == {"ffv": 2, "fvv": 1}
    assert expand_to_primitive_multiset(ws(["fvfv"])).to_dict() == {"fv": 2}


def test_rotation_convention():
    # one rotation is one step of pi: the new u_j is the old u_{j+1}
    w = parse_word("ffv")
    r = w.rotate(1)
    assert str(r) == "vff"
    assert all(r.u(j) == w.u(j + 1) for j in range(3))


def test_multiset_rejects_non_primitive_keys():
    with pytest.raises(NotPrimitive):
        BT1Multiset({"fvfv": 1})


def test_multiset_multiplicities():
    assert BT1Multiset({"fv": 0, "f": 1}).to_dict() == {"f": 1}
    with pytest.raises(ValueError):
        BT1Multiset({"fv": -1})
    with pytest.raises(ValueError):
        BT1Multiset({"fv": 1.5})


def test_multiset_canonicalizes_keys():
    a = BT1Multiset({"vff": 2, "vvf": 1})
    assert a == BT1Multiset({"ffv": 2, "fvv": 1})
    assert a.to_json() == '{"ffv":2,"fvv":1}'


def test_multiset_arithmetic_and_containment():
    a = BT1Multiset({"f": 2, "fv": 1})
    b = BT1Multiset({"f": 1})
    assert b <= a and not a <= b
    assert (a - b).to_dict() == {"f": 1, "fv": 1}
    assert (a + b).to_dict() == {"f": 3, "fv": 1}
    assert a.dimension == 4
    assert a.scaled(3).to_dict() == {"f": 6, "fv": 3}


def test_multiset_json_round_trip():
    a = BT1Multiset({"v": 2, "f": 2, "fv": 1})
    text = a.to_json()
    assert BT1Multiset.from_json(text) == a
    assert BT1Multiset.from_json(text).to_json() == text
    assert json.loads(text) == {"f": 2, "v": 2, "fv": 1}


@given(words)
def test_render_parse_identity(s):
    assert str(parse_word(s)) == s


@given(words)
def test_complement_involution(s):
    w = parse_word(s)
    assert complement(complement(w)) == w
    assert canonicalize(complement(w)) == canonicalize(w).complement()


@given(words, st.integers(0, 40))
def test_canonicalize_rotation_invariant(s, k):
    w = parse_word(s)
    assert canonicalize(w.rotate(k)) == canonicalize(w)
    assert str(canonicalize(w)) == least_rotation(s)


@given(words, words)
def test_canonicalize_equal_iff_rotation(s, t):
    same = len(s) == len(t) and t in (s + s)
    assert (canonicalize(s) == canonicalize(t)) == same


@given(words)
def test_primitive_root_reassembles(s):
    r, e = primitive_root(parse_word(s))
    assert str(r) * e == s
    assert (str(r), e) == root_and_exponent(s)
    assert canonicalize(r).primitive


@given(st.lists(words, max_size=6), st.lists(words, max_size=6))
def test_expand_additive_and_matches_oracle(xs, ys):
    X = expand_to_primitive_multiset([parse_word(x) for x in xs])
    Y = expand_to_primitive_multiset([parse_word(y) for y in ys])
    XY = expand_to_primitive_multiset([parse_word(z) for z in xs + ys])
    assert X + Y == XY
    assert XY.to_dict() == expand(xs + ys)


def test_cyclic_word_ordering_is_total():
    keys = [CyclicWord(parse_word(x)) for x in ("fv", "f", "v", "ffv")]
    assert [str(k) for k in sorted(keys)] == ["f", "v", "fv", "ffv"]
