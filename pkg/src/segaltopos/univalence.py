"""Univalence of maps in a finite presheaf topos.

The nerve of a map p: E -> B is the internal category whose objects are B
and whose morphisms over (a, b) are fiberwise maps E_a -> E_b, built as a
dependent product.  p is univalent when that internal category is
complete: every internal isomorphism of fibers is an identity.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .elements import Atom, Element, Fam, FinFunction, FinSet, STAR, Tup
from .topos import (
    InternalCheckError,
    NatTrans,
    Presheaf,
    SliceMap,
    Topos,
    classify_mono,
    dependent_product,
    enumerate_nat_trans,
    finset_topos,
    is_iso,
    is_minus1_truncated,
    is_mono,
    pairing,
    ps_product,
    ps_pullback,
    slice_exponential,
    subobject_classifier,
    terminal,
)
from .segal import (
    CategoryObject,
    EquivalencesObject,
    TruncatedSimplicialObject,
    composable_pairs,
    hoequiv,
    is_complete,
    is_segal,
    nerve_truncation,
    validate_category_object,
)


def _o(i: int) -> Element:
    return Atom(f"o{i}")


@dataclass
class NerveOfMap:
    p: NatTrans
    M: SliceMap  # fiberwise-map object over B x B
    s: NatTrans
    t: NatTrans
    e: NatTrans
    cat: CategoryObject
    trunc: TruncatedSimplicialObject


def _fiberwise_value(fam: Fam, u, a0, target_b):
    """Chase a fiber element a0 through a fiberwise map family at stage u;
    target_b is the restricted target point the family maps into."""
    v = fam.get(Tup((u, Tup((a0, target_b)))))
    return v[1]


def nerve_of_map(p: NatTrans) -> NerveOfMap:
    E, B = p.dom, p.cod
    T = E.topos
    idx = T.index
    # M = (p x id)_* (E x E -> E x B) as a slice over B x B
    ee = ps_product([E, E])
    eb = ps_product([E, B])
    bb = ps_product([B, B])
    proj = pairing(
        eb, ee.apex, [ee.legs[_o(0)], ee.legs[_o(1)].then(p)]
    )
    p_times_id = pairing(
        bb, eb.apex, [eb.legs[_o(0)].then(p), eb.legs[_o(1)]]
    )
    M = dependent_product(p_times_id, SliceMap(ee.apex, eb.apex, proj))
    s = M.proj.then(bb.legs[_o(0)])
    t = M.proj.then(bb.legs[_o(1)])
    e = _identity_section(p, M, bb)
    _verify_identity_section_unique(p, M, bb, e)
    cone = composable_pairs(T, B, M.total, s, t)
    m = _fiberwise_composition(p, M, cone)
    cat = CategoryObject(T, B, M.total, s, t, e, cone, m)
    problems = validate_category_object(cat)
    if problems:
        raise InternalCheckError(
            "fiberwise maps do not form a category object: " + problems[0]
        )
    trunc = nerve_truncation(cat)
    if not is_segal(trunc):
        raise InternalCheckError("nerve of the map is not Segal")
    return NerveOfMap(p, M, s, t, e, cat, trunc)


def _section_keys(p: NatTrans, c, b2):
    """All dependent-product keys (u: d -> c, (e0, b') in (E x B)(d)) lying
    over b2 in (B x B)(c)."""
    E, B = p.dom, p.cod
    idx = E.topos.index
    for u in idx.morphisms:
        if idx.tgt(u) != c:
            continue
        d = idx.src(u)
        b0 = B.restrict[u](b2[0])
        b1 = B.restrict[u](b2[1])
        for e0 in E.at[d]:
            if p.component[d](e0) == b0:
                yield u, e0, b1


def _identity_section(p: NatTrans, M: SliceMap, bb) -> NatTrans:
    """The unit B -> M: over (b, b), the family sending every fiber element
    to itself."""
    E, B = p.dom, p.cod
    idx = E.topos.index
    component = {}
    for c in idx.objects:
        table = {}
        for b in B.at[c]:
            b2 = Tup((b, b))
            entries = []
            for u, e0, b1 in _section_keys(p, c, b2):
                entries.append((Tup((u, Tup((e0, b1)))), Tup((e0, e0))))
            val = Tup((b2, Fam(entries)))
            if val not in M.total.at[c]:
                raise InternalCheckError("identity family is not a product element")
            table[b] = val
        component[c] = FinFunction(B.at[c], M.total.at[c], table)
    e = NatTrans(B, M.total, component)
    if e.validate():
        raise InternalCheckError("identity section is not natural")
    return e


def _verify_identity_section_unique(p, M, bb, e) -> None:
    """The unit is the only section over the diagonal whose induced
    endomorphism of E is the identity."""
    E, B = p.dom, p.cod
    T = E.topos
    idx = T.index
    diag = pairing(bb, B, [NatTrans.identity(B), NatTrans.identity(B)])
    found = []
    for cand in enumerate_nat_trans(B, M.total, over=(diag, M.proj)):
        if _section_transpose(p, cand) == NatTrans.identity(E):
            found.append(cand)
    if len(found) != 1 or found[0] != e:
        raise InternalCheckError("identity section is not unique")


def _section_transpose(p: NatTrans, h: NatTrans) -> NatTrans:
    """Endomorphism of E induced by a section h: B -> M over the diagonal."""
    E, B = p.dom, p.cod
    idx = E.topos.index
    component = {}
    for c in idx.objects:
        table = {}
        for a in E.at[c]:
            fam = h.component[c](p.component[c](a))[1]
            v = fam.get(Tup((idx.id_of(c), Tup((a, p.component[c](a))))))
            table[a] = v[1]
        component[c] = FinFunction(E.at[c], E.at[c], table)
    return NatTrans(E, E, component)


def _fiberwise_composition(p: NatTrans, M: SliceMap, cone) -> NatTrans:
    """m on composable pairs of fiberwise maps: chase each fiber element
    through the first family, then the second."""
    E, B = p.dom, p.cod
    idx = E.topos.index
    component = {}
    for c in idx.objects:
        table = {}
        for pair in cone.apex.at[c]:
            m1, m2 = pair[0], pair[2]
            b2_1, fam1 = m1[0], m1[1]
            b2_2, fam2 = m2[0], m2[1]
            b2 = Tup((b2_1[0], b2_2[1]))
            entries = []
            for u, e0, b_out in _section_keys(p, c, b2):
                mid_b = B.restrict[u](b2_1[1])
                e_mid = _fiberwise_value(fam1, u, e0, mid_b)
                e_out = _fiberwise_value(fam2, u, e_mid, b_out)
                entries.append((Tup((u, Tup((e0, b_out)))), Tup((e0, e_out))))
            val = Tup((b2, Fam(entries)))
            if val not in M.total.at[c]:
                raise InternalCheckError("composite family is not a product element")
            table[pair] = val
        component[c] = FinFunction(cone.apex.at[c], M.total.at[c], table)
    m = NatTrans(cone.apex, M.total, component)
    if m.validate():
        raise InternalCheckError("fiberwise composition is not natural")
    return m


# ---------------------------------------------------------------------------
# univalence


@dataclass
class UnivalenceReport:
    name: str
    univalent: bool
    mono: bool
    s0_lift_iso: bool
    carrier_sizes: dict  # index object repr -> carrier cardinality
    level_sizes: dict  # n -> total cardinality of nerve level n
    oracle: bool | None  # fiber oracle verdict, when the topos is FinSet
    oracle_agrees: bool | None
    seconds: float | None = None


def is_univalent(p: NatTrans, name: str = "p", run_oracle: bool = True) -> UnivalenceReport:
    start = time.perf_counter()
    nerve = nerve_of_map(p)
    eq = hoequiv(nerve.trunc)
    univalent = is_complete(nerve.trunc, eq)
    oracle = None
    agrees = None
    if run_oracle and _is_finset(p.dom.topos):
        oracle = fiber_oracle_univalent(p)
        agrees = oracle == univalent
    return UnivalenceReport(
        name=name,
        univalent=univalent,
        mono=is_mono(p),
        s0_lift_iso=is_iso(eq.s0_lift),
        carrier_sizes={repr(c): len(s) for c, s in eq.carrier.at.items()},
        level_sizes={n: nerve.trunc.level[n].total_size() for n in range(4)},
        oracle=oracle,
        oracle_agrees=agrees,
        seconds=time.perf_counter() - start,
    )


def _is_finset(T: Topos) -> bool:
    return len(T.index.objects) == 1 and len(T.index.morphisms) == 1


def fiber_oracle_univalent(p: NatTrans) -> bool:
    """Reference implementation for maps of finite sets: every fiber has at
    most one element and no two fibers have the same cardinality."""
    if not _is_finset(p.dom.topos):
        raise ValueError("fiber oracle only applies over the one-point index")
    star = p.dom.topos.index.objects.elements[0]
    func = p.component[star]
    sizes = []
    for b in p.cod.at[star]:
        sizes.append(sum(1 for a in func.dom if func(a) == b))
    return all(n <= 1 for n in sizes) and len(set(sizes)) == len(sizes)


# ---------------------------------------------------------------------------
# enumeration of univalent maps in finite sets


def _finset_map(signature: tuple) -> NatTrans:
    """Canonical map of finite sets with the given tuple of fiber sizes."""
    T = finset_topos()
    star = Atom("*")
    bs = [Atom(f"b{i}") for i in range(len(signature))]
    es = []
    table = {}
    for i, size in enumerate(signature):
        for j in range(size):
            a = Atom(f"e{i}_{j}")
            es.append(a)
            table[a] = bs[i]
    dom = Presheaf(T, {star: FinSet(es)}, {T.index.id_of(star): FinFunction.identity(FinSet(es))})
    cod = Presheaf(T, {star: FinSet(bs)}, {T.index.id_of(star): FinFunction.identity(FinSet(bs))})
    return NatTrans(dom, cod, {star: FinFunction(FinSet(es), FinSet(bs), table)})


def arrows_isomorphic(p: NatTrans, q: NatTrans) -> bool:
    """Whether there is a commuting pair of isomorphisms between two maps."""
    for f_B in enumerate_nat_trans(p.cod, q.cod):
        if not is_iso(f_B):
            continue
        for f_E in enumerate_nat_trans(p.dom, q.dom, over=(p.then(f_B), q)):
            if is_iso(f_E):
                return True
    return False


def enumerate_univalent(T: Topos, max_E: int, max_B: int) -> list[tuple[tuple, NatTrans]]:
    """All univalent maps of finite sets with |E| <= max_E and |B| <= max_B,
    one per isomorphism class of arrows, as (fiber signature, map) pairs in
    deterministic order."""
    if not _is_finset(T):
        raise ValueError("enumeration is only implemented over the one-point index")
    signatures = set()

    def build(prefix, remaining_b, remaining_e):
        signatures.add(tuple(sorted(prefix)))
        if remaining_b == 0:
            return
        start = prefix[-1] if prefix else 0
        for size in range(start, remaining_e + 1):
            build(prefix + [size], remaining_b - 1, remaining_e - size)

    build([], max_B, max_E)
    out = []
    for sig in sorted(signatures):
        p = _finset_map(sig)
        if is_univalent(p, name=str(sig)).univalent:
            out.append((sig, p))
    for i, (_, p) in enumerate(out):
        for _, q in out[:i]:
            if arrows_isomorphic(p, q):
                raise InternalCheckError("duplicate arrow-isomorphism class enumerated")
    return out


# ---------------------------------------------------------------------------
# pullback squares between maps


@dataclass
class PullbackSquareMorphism:
    p2: NatTrans
    p1: NatTrans
    f_E: NatTrans
    f_B: NatTrans


def is_pullback_square(sq: PullbackSquareMorphism) -> bool:
    if sq.p2.then(sq.f_B) != sq.f_E.then(sq.p1):
        return False
    cone = ps_pullback(sq.p1, sq.f_B)
    comparison = cone.mediate(
        sq.p2.dom,
        {_o(0): sq.f_E, _o(1): sq.f_E.then(sq.p1), _o(2): sq.p2},
    )
    return is_iso(comparison)


def pullback_square_homs(p2: NatTrans, p1: NatTrans) -> list[PullbackSquareMorphism]:
    """All morphisms from p2 to p1 in the category of maps and pullback
    squares, by exhaustive enumeration."""
    out = []
    for f_B in enumerate_nat_trans(p2.cod, p1.cod):
        for f_E in enumerate_nat_trans(p2.dom, p1.dom, over=(p2.then(f_B), p1)):
            sq = PullbackSquareMorphism(p2, p1, f_E, f_B)
            if is_pullback_square(sq):
                out.append(sq)
    return out


@dataclass
class BiconditionalVerdict:
    left: bool
    right: bool

    @property
    def agrees(self) -> bool:
        return self.left == self.right


def check_uni_iff_mono(sq: PullbackSquareMorphism) -> BiconditionalVerdict:
    """For a pullback square over a univalent target map: the source map is
    univalent exactly when the base component is mono."""
    if not is_univalent(sq.p1, run_oracle=False).univalent:
        raise ValueError("target map of the square must be univalent")
    return BiconditionalVerdict(
        left=is_univalent(sq.p2, run_oracle=False).univalent,
        right=is_mono(sq.f_B),
    )


@dataclass
class UniversalMonoVerdict:
    univalent: bool
    internal_poset: bool

    @property
    def holds(self) -> bool:
        return self.univalent and self.internal_poset


def check_universal_mono_univalent(T: Topos) -> UniversalMonoVerdict:
    """The point of the subobject classifier is univalent, and its nerve is
    an internal poset."""
    omega, true_arrow = subobject_classifier(T)
    report = is_univalent(true_arrow, name="true", run_oracle=True)
    nerve = nerve_of_map(true_arrow)
    bb = ps_product([omega, omega])
    st = pairing(bb, nerve.M.total, [nerve.s, nerve.t])
    return UniversalMonoVerdict(report.univalent, is_mono(st))


def check_mono_classification(v: NatTrans) -> BiconditionalVerdict:
    """A mono is univalent exactly when its characteristic map is mono."""
    chi = classify_mono(v)
    return BiconditionalVerdict(
        left=is_univalent(v, run_oracle=False).univalent,
        right=is_mono(chi),
    )


def check_alternative_construction(p: NatTrans) -> bool:
    """The fiberwise-map object agrees with the slice-exponential
    construction: same pointwise sizes and some slice isomorphism between
    them over B x B."""
    E, B = p.dom, p.cod
    bb = ps_product([B, B])
    eb = ps_product([E, B])
    be = ps_product([B, E])
    g = SliceMap(
        eb.apex, bb.apex, pairing(bb, eb.apex, [eb.legs[_o(0)].then(p), eb.legs[_o(1)]])
    )
    f = SliceMap(
        be.apex, bb.apex, pairing(bb, be.apex, [be.legs[_o(0)], be.legs[_o(1)].then(p)])
    )
    alt = slice_exponential(g, f)
    M = nerve_of_map(p).M
    for c in bb.apex.topos.index.objects:
        if len(alt.total.at[c]) != len(M.total.at[c]):
            return False
    for cand in enumerate_nat_trans(alt.total, M.total, over=(alt.proj, M.proj)):
        if is_iso(cand):
            return True
    return False
