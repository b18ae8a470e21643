"""Finite presheaf toposes: objects, morphisms, limits, exponentials,
subobject classifier, and dependent products.

Presheaves are contravariant: a morphism u: c -> d of the index category
restricts along X(u): X(d) -> X(c).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .elements import Atom, Element, Fam, FinFunction, FinSet, STAR, Tup
from .fincat import (
    DEFAULT_BOUND,
    Diagram,
    FiniteCategory,
    LimitCone,
    check_bound,
    discrete_category,
    fin_limit,
    terminal_category,
    validate_category,
    zigzag_shape,
)


class InternalCheckError(RuntimeError):
    """A verification that should hold by construction failed."""


@dataclass(frozen=True)
class Topos:
    index: FiniteCategory
    bound: int = DEFAULT_BOUND

    def __post_init__(self):
        problems = validate_category(self.index)
        if problems:
            raise ValueError("invalid index category: " + "; ".join(problems))

    def compose_mor(self, w: Element, u: Element) -> Element:
        """w after u in the index category."""
        return self.index.comp[(w, u)]

    def morphisms_into(self, c: Element):
        return self.index.morphisms_into(c)


def finset_topos(bound: int = DEFAULT_BOUND) -> Topos:
    return Topos(terminal_category(), bound)


@dataclass
class Presheaf:
    topos: Topos
    at: dict
    restrict: dict

    def validate(self) -> list[str]:
        idx = self.topos.index
        report = []
        for c in idx.objects:
            if c not in self.at:
                report.append(f"no set at {c!r}")
        for u in idx.morphisms:
            if u not in self.restrict:
                report.append(f"no restriction along {u!r}")
        if report:
            return report
        for u in idx.morphisms:
            f = self.restrict[u]
            if f.dom != self.at[idx.tgt(u)] or f.cod != self.at[idx.src(u)]:
                report.append(f"restriction along {u!r} has wrong endpoints")
        if report:
            return report
        for c in idx.objects:
            if self.restrict[idx.id_of(c)] != FinFunction.identity(self.at[c]):
                report.append(f"restriction along id of {c!r} is not the identity")
        for (w, u), wu in idx.comp.items():
            if self.restrict[u].compose(self.restrict[w]) != self.restrict[wu]:
                report.append(f"contravariance fails on ({w!r},{u!r})")
        return report

    def __eq__(self, other):
        return (
            isinstance(other, Presheaf)
            and self.at == other.at
            and self.restrict == other.restrict
        )

    def total_size(self) -> int:
        return sum(len(s) for s in self.at.values())

    def elements(self):
        for c in self.topos.index.objects:
            for x in self.at[c]:
                yield c, x


@dataclass
class NatTrans:
    dom: Presheaf
    cod: Presheaf
    component: dict

    def validate(self) -> list[str]:
        idx = self.dom.topos.index
        report = []
        for c in idx.objects:
            f = self.component.get(c)
            if f is None:
                report.append(f"no component at {c!r}")
            elif f.dom != self.dom.at[c] or f.cod != self.cod.at[c]:
                report.append(f"component at {c!r} has wrong endpoints")
        if report:
            return report
        for u in idx.morphisms:
            c, d = idx.src(u), idx.tgt(u)
            lhs = self.component[c].compose(self.dom.restrict[u])
            rhs = self.cod.restrict[u].compose(self.component[d])
            if lhs != rhs:
                report.append(f"naturality fails along {u!r}")
        return report

    def __eq__(self, other):
        return (
            isinstance(other, NatTrans)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.component == other.component
        )

    def apply(self, c: Element, x: Element) -> Element:
        return self.component[c](x)

    def then(self, other: "NatTrans") -> "NatTrans":
        """other after self."""
        if other.dom != self.cod:
            raise ValueError("composition type mismatch")
        return NatTrans(
            self.dom,
            other.cod,
            {c: other.component[c].compose(f) for c, f in self.component.items()},
        )

    def after(self, other: "NatTrans") -> "NatTrans":
        return other.then(self)

    @staticmethod
    def identity(X: Presheaf) -> "NatTrans":
        return NatTrans(X, X, {c: FinFunction.identity(s) for c, s in X.at.items()})


def nat_inverse(f: NatTrans) -> NatTrans:
    if not is_iso(f):
        raise ValueError("not an isomorphism")
    return NatTrans(f.cod, f.dom, {c: g.inverse() for c, g in f.component.items()})


def constant_presheaf(T: Topos, s: FinSet) -> Presheaf:
    idf = FinFunction.identity(s)
    return Presheaf(
        T,
        {c: s for c in T.index.objects},
        {u: idf for u in T.index.morphisms},
    )


def terminal(T: Topos) -> Presheaf:
    return constant_presheaf(T, FinSet([STAR]))


def initial(T: Topos) -> Presheaf:
    return constant_presheaf(T, FinSet(()))


def unique_to_terminal(X: Presheaf) -> NatTrans:
    one = terminal(X.topos)
    return NatTrans(
        X,
        one,
        {c: FinFunction.constant(X.at[c], one.at[c], STAR) for c in X.at},
    )


def from_initial(X: Presheaf) -> NatTrans:
    zero = initial(X.topos)
    return NatTrans(
        zero, X, {c: FinFunction(zero.at[c], X.at[c], {}) for c in X.at}
    )


def yoneda(T: Topos, c: Element) -> Presheaf:
    idx = T.index
    at = {d: FinSet(u for u in idx.morphisms if idx.src(u) == d and idx.tgt(u) == c) for d in idx.objects}
    restrict = {}
    for v in idx.morphisms:
        e, d = idx.src(v), idx.tgt(v)
        restrict[v] = FinFunction(at[d], at[e], {u: idx.comp[(u, v)] for u in at[d]})
    return Presheaf(T, at, restrict)


# ---------------------------------------------------------------------------
# pointwise limits


@dataclass
class PsDiagram:
    shape: FiniteCategory
    obj: dict
    mor: dict


@dataclass
class PsLimitCone:
    apex: Presheaf
    legs: dict
    diagram: PsDiagram
    pointwise: dict = field(default_factory=dict)

    def mediate(self, K: Presheaf, cone: dict) -> NatTrans:
        component = {
            c: self.pointwise[c].mediate(
                K.at[c], {o: f.component[c] for o, f in cone.items()}
            )
            for c in K.topos.index.objects
        }
        return NatTrans(K, self.apex, component)


def ps_limit(T: Topos, d: PsDiagram) -> PsLimitCone:
    idx = T.index
    pointwise = {}
    for c in idx.objects:
        dc = Diagram(
            d.shape,
            {o: p.at[c] for o, p in d.obj.items()},
            {u: f.component[c] for u, f in d.mor.items()},
        )
        pointwise[c] = fin_limit(dc, T.bound)
    at = {c: cone.apex for c, cone in pointwise.items()}
    order = d.shape.objects.elements
    restrict = {}
    for w in idx.morphisms:
        c, dd = idx.src(w), idx.tgt(w)
        table = {}
        for e in at[dd]:
            val = Tup(
                d.obj[o].restrict[w](e[i]) for i, o in enumerate(order)
            )
            if val not in at[c]:
                raise InternalCheckError("induced restriction leaves the limit")
            table[e] = val
        restrict[w] = FinFunction(at[dd], at[c], table)
    apex = Presheaf(T, at, restrict)
    legs = {
        o: NatTrans(
            apex, d.obj[o], {c: pointwise[c].legs[o] for c in idx.objects}
        )
        for o in d.shape.objects
    }
    return PsLimitCone(apex, legs, d, pointwise)


def ps_product(Xs: list[Presheaf]) -> PsLimitCone:
    T = Xs[0].topos
    shape = discrete_category([f"o{i}" for i in range(len(Xs))])
    obj = {Atom(f"o{i}"): X for i, X in enumerate(Xs)}
    mor = {shape.id_of(o): NatTrans.identity(obj[o]) for o in shape.objects}
    return ps_limit(T, PsDiagram(shape, obj, mor))


def ps_pullback(f: NatTrans, g: NatTrans) -> PsLimitCone:
    """Pullback of the cospan f: X -> Z <- Y :g; legs at o0 (X) and o2 (Y)."""
    if f.cod != g.cod:
        raise ValueError("cospan codomain mismatch")
    T = f.dom.topos
    shape = zigzag_shape(2)
    o0, o1, o2 = Atom("o0"), Atom("o1"), Atom("o2")
    obj = {o0: f.dom, o1: f.cod, o2: g.dom}
    mor = {Atom("a0"): f, Atom("a1"): g}
    for o in shape.objects:
        mor[shape.id_of(o)] = NatTrans.identity(obj[o])
    return ps_limit(T, PsDiagram(shape, obj, mor))


def pairing(prod: PsLimitCone, K: Presheaf, fs: list[NatTrans]) -> NatTrans:
    """Tuple maps K -> X_i into the product cone."""
    order = prod.diagram.shape.objects.elements
    return prod.mediate(K, {o: fs[i] for i, o in enumerate(order)})


# ---------------------------------------------------------------------------
# mono / epi / iso


def is_mono(f: NatTrans) -> bool:
    return all(g.is_injective() for g in f.component.values())


def is_epi(f: NatTrans) -> bool:
    return all(g.is_surjective() for g in f.component.values())


def is_iso(f: NatTrans) -> bool:
    return all(g.is_bijective() for g in f.component.values())


def is_minus1_truncated(X: Presheaf) -> bool:
    """True iff the unique map to the terminal is mono.

    Cross-checked against the diagonal-is-iso formulation; the two must
    agree.
    """
    via_terminal = is_mono(unique_to_terminal(X))
    prod = ps_product([X, X])
    diag = pairing(prod, X, [NatTrans.identity(X), NatTrans.identity(X)])
    via_diagonal = is_iso(diag)
    if via_terminal != via_diagonal:
        raise InternalCheckError("(-1)-truncation criteria disagree")
    return via_terminal


# ---------------------------------------------------------------------------
# natural transformation enumeration


def enumerate_nat_trans(X: Presheaf, Y: Presheaf, over=None, limit=None):
    """Yield all natural transformations X -> Y in a deterministic order.

    over=(g, h) restricts to transformations t with h∘t = g, for
    g: X -> Z and h: Y -> Z.
    """
    T = X.topos
    idx = T.index
    mors_into = {c: [u for u in idx.morphisms if idx.tgt(u) == c] for c in idx.objects}
    slots = [(c, x) for c in idx.objects for x in X.at[c]]
    if over is not None:
        g, h = over

    assign = {}

    def admissible(c, x, y):
        if over is None:
            return True
        return h.component[c](y) == g.component[c](x)

    def propagate(c, x, y, added):
        stack = [(c, x, y)]
        while stack:
            c, x, y = stack.pop()
            k = (c, x)
            if k in assign:
                if assign[k] != y:
                    return False
                continue
            if not admissible(c, x, y):
                return False
            assign[k] = y
            added.append(k)
            for u in mors_into[c]:
                d = idx.src(u)
                stack.append((d, X.restrict[u](x), Y.restrict[u](y)))
        return True

    count = 0

    def search(i):
        nonlocal count
        while i < len(slots) and slots[i] in assign:
            i += 1
        if i == len(slots):
            comp = {
                c: FinFunction(
                    X.at[c], Y.at[c], {x: assign[(c, x)] for x in X.at[c]}
                )
                for c in idx.objects
            }
            count += 1
            if limit is not None and count > limit:
                raise check_bound(count, limit)
            yield NatTrans(X, Y, comp)
            return
        c, x = slots[i]
        for y in Y.at[c]:
            added = []
            if propagate(c, x, y, added):
                yield from search(i + 1)
            for k in added:
                del assign[k]

    yield from search(0)


def hom_count(X: Presheaf, Y: Presheaf, over=None) -> int:
    return sum(1 for _ in enumerate_nat_trans(X, Y, over))


def global_elements(X: Presheaf) -> list[NatTrans]:
    return list(enumerate_nat_trans(terminal(X.topos), X))


# ---------------------------------------------------------------------------
# exponentials


@dataclass
class ExponentialObject:
    obj: Presheaf
    base: Presheaf  # F in G^F
    target: Presheaf  # G
    ev_product: PsLimitCone  # product of obj and base
    ev: NatTrans  # ev_product.apex -> target


def exponential(T: Topos, F: Presheaf, G: Presheaf) -> ExponentialObject:
    """Internal hom G^F computed by the Yoneda formula: the value at c is
    the set of natural families from y(c) x F to G, flattened into Fam
    terms keyed by (u, x)."""
    idx = T.index
    at = {}
    for c in idx.objects:
        yc = yoneda(T, c)
        prod = ps_product([yc, F])
        fams = []
        for t in enumerate_nat_trans(prod.apex, G, limit=T.bound):
            entries = []
            for d in idx.objects:
                for e in prod.apex.at[d]:
                    entries.append((e, t.component[d](e)))
            fams.append(Fam(entries))
        check_bound(len(fams), T.bound)
        at[c] = FinSet(fams)
    restrict = {}
    for w in idx.morphisms:
        c1, c2 = idx.src(w), idx.tgt(w)  # w: c1 -> c2
        table = {}
        for fam in at[c2]:
            entries = []
            for d in idx.objects:
                for u in idx.morphisms:
                    if idx.src(u) != d or idx.tgt(u) != c1:
                        continue
                    wu = idx.comp[(w, u)]
                    for x in F.at[d]:
                        key = Tup((u, x))
                        entries.append((key, fam.get(Tup((wu, x)))))
            table[fam] = Fam(entries)
        restrict[w] = FinFunction(at[c2], at[c1], table)
    obj = Presheaf(T, at, restrict)
    prod = ps_product([obj, F])
    ev_component = {}
    for c in idx.objects:
        idc = idx.id_of(c)
        table = {}
        for e in prod.apex.at[c]:
            fam, x = e[0], e[1]
            table[e] = fam.get(Tup((idc, x)))
        ev_component[c] = FinFunction(prod.apex.at[c], G.at[c], table)
    ev = NatTrans(prod.apex, G, ev_component)
    if ev.validate():
        raise InternalCheckError("evaluation map is not natural")
    return ExponentialObject(obj, F, G, prod, ev)


def exp_transpose(expo: ExponentialObject, A: Presheaf, h: NatTrans) -> NatTrans:
    """Transpose A x F -> G to A -> G^F; h.dom must be ps_product([A, F]).apex."""
    T = A.topos
    idx = T.index
    component = {}
    for c in idx.objects:
        table = {}
        for a in A.at[c]:
            entries = []
            for d in idx.objects:
                for u in idx.morphisms:
                    if idx.src(u) != d or idx.tgt(u) != c:
                        continue
                    ad = A.restrict[u](a)
                    for x in expo.base.at[d]:
                        entries.append((Tup((u, x)), h.component[d](Tup((ad, x)))))
            fam = Fam(entries)
            if fam not in expo.obj.at[c]:
                raise InternalCheckError("transpose left the exponential")
            table[a] = fam
        component[c] = FinFunction(A.at[c], expo.obj.at[c], table)
    return NatTrans(A, expo.obj, component)


# ---------------------------------------------------------------------------
# subobject classifier


def _sieves_at(T: Topos, c: Element) -> list[frozenset]:
    idx = T.index
    into = idx.morphisms_into(c)
    check_bound(2 ** len(into), T.bound)
    sieves = []
    for bits in range(2 ** len(into)):
        s = frozenset(u for i, u in enumerate(into) if bits >> i & 1)
        closed = all(
            idx.comp[(u, v)] in s
            for u in s
            for v in idx.morphisms
            if idx.tgt(v) == idx.src(u)
        )
        if closed:
            sieves.append(s)
    return sieves


def _sieve_element(s) -> Element:
    return Tup(sorted(s))


def subobject_classifier(T: Topos):
    """The presheaf of sieves with the maximal-sieve point."""
    idx = T.index
    sieve_sets = {c: _sieves_at(T, c) for c in idx.objects}
    at = {c: FinSet(_sieve_element(s) for s in sieve_sets[c]) for c in idx.objects}
    restrict = {}
    for w in idx.morphisms:
        c1, c2 = idx.src(w), idx.tgt(w)
        table = {}
        for s in sieve_sets[c2]:
            pulled = frozenset(
                u
                for u in idx.morphisms_into(c1)
                if idx.comp[(w, u)] in s
            )
            table[_sieve_element(s)] = _sieve_element(pulled)
        restrict[w] = FinFunction(at[c2], at[c1], table)
    omega = Presheaf(T, at, restrict)
    one = terminal(T)
    true_component = {
        c: FinFunction.constant(
            one.at[c], at[c], _sieve_element(frozenset(idx.morphisms_into(c)))
        )
        for c in idx.objects
    }
    true_arrow = NatTrans(one, omega, true_component)
    if omega.validate() or true_arrow.validate():
        raise InternalCheckError("subobject classifier construction invalid")
    return omega, true_arrow


def classify_mono(m: NatTrans) -> NatTrans:
    """Characteristic map of a mono, verified by pulling the universal mono
    back along it."""
    if not is_mono(m):
        raise ValueError("classify_mono requires a mono")
    T = m.dom.topos
    idx = T.index
    X = m.cod
    omega, true_arrow = subobject_classifier(T)
    images = {c: set(m.component[c].table.values()) for c in idx.objects}
    component = {}
    for c in idx.objects:
        table = {}
        for x in X.at[c]:
            s = frozenset(
                u
                for u in idx.morphisms_into(c)
                if X.restrict[u](x) in images[idx.src(u)]
            )
            table[x] = _sieve_element(s)
        component[c] = FinFunction(X.at[c], omega.at[c], table)
    chi = NatTrans(X, omega, component)
    if chi.validate():
        raise InternalCheckError("characteristic map is not natural")
    pb = ps_pullback(chi, true_arrow)
    comparison = pb.mediate(
        m.dom,
        {
            Atom("o0"): m,
            Atom("o1"): m.then(chi),
            Atom("o2"): unique_to_terminal(m.dom),
        },
    )
    if not is_iso(comparison):
        raise InternalCheckError("classified subobject does not reproduce the mono")
    return chi


# ---------------------------------------------------------------------------
# slices, pullback functor, dependent products


@dataclass
class SliceMap:
    total: Presheaf
    base: Presheaf
    proj: NatTrans

    def validate(self) -> list[str]:
        report = self.proj.validate()
        if self.proj.dom != self.total or self.proj.cod != self.base:
            report.append("projection endpoints do not match the slice")
        return report


def slice_of(proj: NatTrans) -> SliceMap:
    return SliceMap(proj.dom, proj.cod, proj)


@dataclass
class PullbackResult:
    slice: SliceMap
    to_total: NatTrans  # top edge of the pullback square
    cone: PsLimitCone


def pullback_functor(f: NatTrans, x: SliceMap) -> PullbackResult:
    """Base change of x along f: A -> B."""
    if x.base != f.cod:
        raise ValueError("slice is not over the codomain of f")
    cone = ps_pullback(x.proj, f)
    return PullbackResult(
        SliceMap(cone.apex, f.dom, cone.legs[Atom("o2")]),
        cone.legs[Atom("o0")],
        cone,
    )


def comma_presheaf(f: NatTrans, c: Element, b: Element) -> tuple[Presheaf, NatTrans]:
    """The fan of generalized elements of f's codomain at (c, b): elements
    at d are pairs (u: d -> c, a in A(d)) with f(a) = B(u)(b); comes with the
    projection to A = f.dom."""
    T = f.dom.topos
    idx = T.index
    A, B = f.dom, f.cod
    at = {}
    for d in idx.objects:
        elems = []
        for u in idx.morphisms:
            if idx.src(u) != d or idx.tgt(u) != c:
                continue
            bu = B.restrict[u](b)
            for a in A.at[d]:
                if f.component[d](a) == bu:
                    elems.append(Tup((u, a)))
        at[d] = FinSet(elems)
    restrict = {}
    for v in idx.morphisms:
        e, d = idx.src(v), idx.tgt(v)
        table = {
            k: Tup((idx.comp[(k[0], v)], A.restrict[v](k[1]))) for k in at[d]
        }
        restrict[v] = FinFunction(at[d], at[e], table)
    L = Presheaf(T, at, restrict)
    pr = NatTrans(
        L, A, {d: FinFunction(at[d], A.at[d], {k: k[1] for k in at[d]}) for d in idx.objects}
    )
    return L, pr


def _section_family(T: Topos, L: Presheaf, t: NatTrans) -> Fam:
    entries = []
    for d in T.index.objects:
        for k in L.at[d]:
            entries.append((k, t.component[d](k)))
    return Fam(entries)


def dependent_product(f: NatTrans, x: SliceMap) -> SliceMap:
    """Right adjoint to base change along f, computed by enumerating natural
    section families over the fan of generalized elements."""
    if x.base != f.dom:
        raise ValueError("slice is not over the domain of f")
    T = f.dom.topos
    idx = T.index
    B = f.cod
    at = {}
    commas = {}
    for c in idx.objects:
        elems = []
        for b in B.at[c]:
            L, pr = comma_presheaf(f, c, b)
            commas[(c, b)] = (L, pr)
            for t in enumerate_nat_trans(L, x.total, over=(pr, x.proj), limit=T.bound):
                elems.append(Tup((b, _section_family(T, L, t))))
        check_bound(len(elems), T.bound)
        at[c] = FinSet(elems)
    restrict = {}
    for w in idx.morphisms:
        c1, c2 = idx.src(w), idx.tgt(w)
        table = {}
        for e in at[c2]:
            b, fam = e[0], e[1]
            b1 = B.restrict[w](b)
            L1, _ = commas[(c1, b1)]
            entries = []
            for d in idx.objects:
                for k in L1.at[d]:
                    entries.append((k, fam.get(Tup((idx.comp[(w, k[0])], k[1])))))
            val = Tup((b1, Fam(entries)))
            if val not in at[c1]:
                raise InternalCheckError("section restriction left the dependent product")
            table[e] = val
        restrict[w] = FinFunction(at[c2], at[c1], table)
    total = Presheaf(T, at, restrict)
    proj = NatTrans(
        total,
        B,
        {c: FinFunction(at[c], B.at[c], {e: e[0] for e in at[c]}) for c in idx.objects},
    )
    return SliceMap(total, B, proj)


def dependent_product_map(
    f: NatTrans, pix: SliceMap, piy: SliceMap, h: NatTrans
) -> NatTrans:
    """Functorial action of the dependent product along f on a slice
    morphism h over f.dom; pix and piy are the computed products of its
    domain and codomain slices."""
    T = f.dom.topos
    idx = T.index
    component = {}
    for c in idx.objects:
        table = {}
        for e in pix.total.at[c]:
            b, fam = e[0], e[1]
            entries = [
                (k, h.component[idx.src(k[0])](v)) for k, v in fam.entries
            ]
            val = Tup((b, Fam(entries)))
            if val not in piy.total.at[c]:
                raise InternalCheckError("mapped section left the dependent product")
            table[e] = val
        component[c] = FinFunction(pix.total.at[c], piy.total.at[c], table)
    return NatTrans(pix.total, piy.total, component)


def slice_exponential(g: SliceMap, f: SliceMap) -> SliceMap:
    """Internal hom in the slice over the common base: Pi_g of g* f."""
    if g.base != f.base:
        raise ValueError("slices are not over the same base")
    pulled = pullback_functor(g.proj, f)
    return dependent_product(g.proj, pulled.slice)


def slice_hom_count(g: SliceMap, x: SliceMap) -> int:
    """Number of morphisms g -> x in the slice over their common base."""
    if g.base != x.base:
        raise ValueError("slices are not over the same base")
    return hom_count(g.total, x.total, over=(g.proj, x.proj))
