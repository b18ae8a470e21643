import pytest
from hypothesis import given, strategies as st

from segaltopos.elements import (
    Atom,
    EMPTY,
    Fam,
    FinFunction,
    FinSet,
    SINGLETON,
    STAR,
    Tup,
    atoms,
)


def small_elements():
    base = st.sampled_from([Atom("a"), Atom("b"), Atom("z"), STAR])
    return st.recursive(
        base,
        lambda inner: st.lists(inner, max_size=3).map(Tup),
        max_leaves=6,
    )


class TestElement:
    def test_structural_equality(self):
        assert Atom("a") == Atom("a")
        assert Tup([Atom("a"), Atom("b")]) == Tup([Atom("a"), Atom("b")])
        assert Atom("a") != Tup([Atom("a")])

    def test_fam_rejects_duplicate_keys(self):
        with pytest.raises(ValueError):
            Fam([(Atom("k"), Atom("x")), (Atom("k"), Atom("y"))])

    def test_fam_sorted_and_lookup(self):
        f = Fam([(Atom("b"), Atom("1")), (Atom("a"), Atom("0"))])
        assert [k.name for k, _ in f.entries] == ["a", "b"]
        assert f.get(Atom("a")) == Atom("0")
        assert Atom("b") in f

    @given(small_elements(), small_elements())
    def test_total_order(self, x, y):
        assert (x < y) + (x == y) + (y < x) == 1

    @given(st.lists(small_elements(), max_size=5))
    def test_order_consistent_with_hash_equality(self, xs):
        s = sorted(xs)
        for a, b in zip(s, s[1:]):
            assert a <= b
            if a == b:
                assert hash(a) == hash(b)


class TestFinSet:
    def test_sorted_dedup(self):
        s = FinSet([Atom("b"), Atom("a"), Atom("b")])
        assert [x.name for x in s] == ["a", "b"]
        assert len(s) == 2
        assert Atom("a") in s and Atom("c") not in s

    def test_constants(self):
        assert len(EMPTY) == 0
        assert list(SINGLETON) == [STAR]


class TestFinFunction:
    def test_totality_enforced(self):
        dom, cod = atoms("a", "b"), atoms("x")
        with pytest.raises(ValueError):
            FinFunction(dom, cod, {Atom("a"): Atom("x")})
        with pytest.raises(ValueError):
            FinFunction(dom, cod, {Atom("a"): Atom("x"), Atom("b"): Atom("y")})

    def test_compose_identity_inverse(self):
        s = atoms("a", "b")
        swap = FinFunction(s, s, {Atom("a"): Atom("b"), Atom("b"): Atom("a")})
        assert swap.compose(swap) == FinFunction.identity(s)
        assert swap.inverse() == swap
        assert swap.is_bijective()

    def test_predicates(self):
        two, one = atoms("a", "b"), atoms("x")
        const = FinFunction.constant(two, one, Atom("x"))
        assert const.is_surjective() and not const.is_injective()
        incl = FinFunction(one, two, {Atom("x"): Atom("a")})
        assert incl.is_injective() and not incl.is_surjective()
        assert incl.image() == atoms("a")
