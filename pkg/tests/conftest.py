"""Shared fixtures; the expensive sweeps are computed once per session."""

from __future__ import annotations

import pytest

from segaltopos.bundles import BUNDLES
from segaltopos.corpus import corpus_categories
from segaltopos.segal import (
    category_object_from_finite_category,
    hoequiv,
    nerve_truncation,
)
from segaltopos.topos import finset_topos
from segaltopos.univalence import _finset_map, is_univalent


def all_fiber_signatures(max_b: int, max_e: int) -> list[tuple]:
    sigs = set()

    def build(prefix, remaining_b, remaining_e):
        sigs.add(tuple(sorted(prefix)))
        if remaining_b == 0:
            return
        start = prefix[-1] if prefix else 0
        for size in range(start, remaining_e + 1):
            build(prefix + [size], remaining_b - 1, remaining_e - size)

    build([], max_b, max_e)
    return sorted(sigs)


@pytest.fixture(scope="session")
def finset_sweep():
    """Univalence reports for every map of finite sets with |E|,|B| <= 3,
    one representative per arrow-isomorphism class."""
    out = {}
    for sig in all_fiber_signatures(3, 3):
        p = _finset_map(sig)
        out[sig] = (p, is_univalent(p, name=str(sig)))
    return out


@pytest.fixture(scope="session")
def corpus_nerves():
    """Nerve truncation and equivalence object for every corpus category."""
    out = {}
    for name, C in corpus_categories().items():
        cat = category_object_from_finite_category(C)
        trunc = nerve_truncation(cat)
        out[name] = (C, cat, trunc, hoequiv(trunc))
    return out


@pytest.fixture(scope="session")
def bundled_workspaces():
    return {name: builder() for name, builder in BUNDLES.items()}
