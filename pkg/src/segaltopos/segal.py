"""Truncated simplicial objects internal to a finite presheaf topos:
Segal and completeness checkers, objects of equivalences, mapping objects,
composition, final objects, and functor criteria.

Conventions: level n is the object of n-chains; the source map is d(1,1)
and the target map is d(1,0); composable pairs are stored as
(f1, middle, f2) with the composite m(f1, f2) = "f2 after f1".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .elements import Atom, Element, Fam, FinFunction, FinSet, STAR, Tup
from .fincat import FiniteCategory, zigzag_shape
from .topos import (
    InternalCheckError,
    NatTrans,
    Presheaf,
    PsDiagram,
    PsLimitCone,
    SliceMap,
    Topos,
    dependent_product,
    dependent_product_map,
    enumerate_nat_trans,
    finset_topos,
    is_iso,
    is_mono,
    nat_inverse,
    pairing,
    ps_limit,
    ps_product,
    ps_pullback,
    terminal,
    unique_to_terminal,
)


def _o(i: int) -> Element:
    return Atom(f"o{i}")


def _a(i: int) -> Element:
    return Atom(f"a{i}")


def wide_pullback(
    T: Topos, edges: list[Presheaf], vertices: list[Presheaf], maps: list[NatTrans]
) -> PsLimitCone:
    """Limit of edges[0] -> vertices[0] <- edges[1] -> vertices[1] <- ...;
    maps lists the arrows a0, a1, ... of the zigzag in order."""
    n = len(edges)
    shape = zigzag_shape(n)
    obj = {}
    for i, e in enumerate(edges):
        obj[_o(2 * i)] = e
    for i, v in enumerate(vertices):
        obj[_o(2 * i + 1)] = v
    mor = {_a(i): f for i, f in enumerate(maps)}
    for o in shape.objects:
        mor[shape.id_of(o)] = NatTrans.identity(obj[o])
    return ps_limit(T, PsDiagram(shape, obj, mor))


# ---------------------------------------------------------------------------
# truncated simplicial objects


@dataclass
class TruncatedSimplicialObject:
    topos: Topos
    level: dict  # n in 0..3 -> Presheaf
    face: dict  # (n, i) -> NatTrans level[n] -> level[n-1]
    degen: dict  # (n, i) -> NatTrans level[n] -> level[n+1]

    @property
    def source(self) -> NatTrans:
        return self.face[(1, 1)]

    @property
    def target(self) -> NatTrans:
        return self.face[(1, 0)]

    def validate(self) -> list[str]:
        report = []
        for n in range(4):
            if n not in self.level:
                report.append(f"missing level {n}")
        for n in range(1, 4):
            for i in range(n + 1):
                if (n, i) not in self.face:
                    report.append(f"missing face ({n},{i})")
        for n in range(3):
            for i in range(n + 1):
                if (n, i) not in self.degen:
                    report.append(f"missing degeneracy ({n},{i})")
        if report:
            return report
        for (n, i), f in self.face.items():
            if f.dom != self.level[n] or f.cod != self.level[n - 1]:
                report.append(f"face ({n},{i}) has wrong endpoints")
            report.extend(f"face ({n},{i}): {p}" for p in f.validate())
        for (n, i), f in self.degen.items():
            if f.dom != self.level[n] or f.cod != self.level[n + 1]:
                report.append(f"degeneracy ({n},{i}) has wrong endpoints")
            report.extend(f"degeneracy ({n},{i}): {p}" for p in f.validate())
        if report:
            return report
        d, s = self.face, self.degen
        for n in (2, 3):
            for j in range(n + 1):
                for i in range(j):
                    if d[(n, j)].then(d[(n - 1, i)]) != d[(n, i)].then(d[(n - 1, j - 1)]):
                        report.append(f"d{i} d{j} = d{j - 1} d{i} fails at level {n}")
        for n in (0, 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if s[(n, j)].then(s[(n + 1, i)]) != s[(n, i)].then(s[(n + 1, j + 1)]):
                        report.append(f"s{i} s{j} = s{j + 1} s{i} fails at level {n}")
        for n in range(3):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = s[(n, j)].then(d[(n + 1, i)])
                    if i < j:
                        rhs = d[(n, i)].then(s[(n - 1, j - 1)])
                    elif i in (j, j + 1):
                        rhs = NatTrans.identity(self.level[n])
                    else:
                        rhs = d[(n, i - 1)].then(s[(n - 1, j)])
                    if lhs != rhs:
                        report.append(f"d{i} s{j} identity fails at level {n}")
        return report

    def spine_maps(self, n: int) -> list[NatTrans]:
        """The n edge maps level[n] -> level[1] picking out consecutive
        one-chains."""
        d = self.face
        if n == 1:
            return [NatTrans.identity(self.level[1])]
        if n == 2:
            return [d[(2, 2)], d[(2, 0)]]
        if n == 3:
            return [
                d[(3, 3)].then(d[(2, 2)]),
                d[(3, 3)].then(d[(2, 0)]),
                d[(3, 0)].then(d[(2, 0)]),
            ]
        raise ValueError("spine only defined for levels 1..3")

    def vertex_maps(self, n: int) -> list[NatTrans]:
        """The n+1 maps level[n] -> level[0] picking out vertices."""
        if n == 0:
            return [NatTrans.identity(self.level[0])]
        edges = self.spine_maps(n)
        out = [edges[0].then(self.source)]
        out.extend(e.then(self.target) for e in edges)
        return out


def constant_singleton_simplicial(T: Topos) -> TruncatedSimplicialObject:
    one = terminal(T)
    ident = NatTrans.identity(one)
    return TruncatedSimplicialObject(
        T,
        {n: one for n in range(4)},
        {(n, i): ident for n in range(1, 4) for i in range(n + 1)},
        {(n, i): ident for n in range(3) for i in range(n + 1)},
    )


# ---------------------------------------------------------------------------
# category objects and nerves


@dataclass
class CategoryObject:
    topos: Topos
    C0: Presheaf
    C1: Presheaf
    s: NatTrans
    t: NatTrans
    e: NatTrans
    composable: PsLimitCone  # C1 x_{C0} C1, elements (f1, middle, f2)
    m: NatTrans  # composable.apex -> C1, "second after first"


def composable_pairs(T: Topos, C0, C1, s, t) -> PsLimitCone:
    return wide_pullback(T, [C1, C1], [C0], [t, s])


def validate_category_object(C: CategoryObject) -> list[str]:
    report = []
    for name, f in (("s", C.s), ("t", C.t), ("e", C.e), ("m", C.m)):
        report.extend(f"{name}: {p}" for p in f.validate())
    if report:
        return report
    ident0 = NatTrans.identity(C.C0)
    if C.e.then(C.s) != ident0:
        report.append("s after e is not the identity")
    if C.e.then(C.t) != ident0:
        report.append("t after e is not the identity")
    pr1 = C.composable.legs[_o(0)]
    pr2 = C.composable.legs[_o(2)]
    if C.m.then(C.s) != pr1.then(C.s):
        report.append("source of a composite differs from source of the first factor")
    if C.m.then(C.t) != pr2.then(C.t):
        report.append("target of a composite differs from target of the second factor")
    idx = C.topos.index
    for c in idx.objects:
        mc = C.m.component[c]
        ec, sc, tc = C.e.component[c], C.s.component[c], C.t.component[c]
        pairs = C.composable.apex.at[c]
        for f in C.C1.at[c]:
            if mc(Tup((ec(sc(f)), sc(f), f))) != f:
                report.append(f"left unit law fails at {c!r} on {f!r}")
            if mc(Tup((f, tc(f), ec(tc(f))))) != f:
                report.append(f"right unit law fails at {c!r} on {f!r}")
        for pair in pairs:
            f1, x1, f2 = pair[0], pair[1], pair[2]
            for f3 in C.C1.at[c]:
                if sc(f3) != tc(f2):
                    continue
                x2 = tc(f2)
                lhs = mc(Tup((mc(pair), x2, f3)))
                rhs = mc(Tup((f1, x1, mc(Tup((f2, x2, f3))))))
                if lhs != rhs:
                    report.append(
                        f"associativity fails at {c!r} on ({f1!r},{f2!r},{f3!r})"
                    )
    return report


def category_object_from_finite_category(C: FiniteCategory) -> CategoryObject:
    """A finite category as a category object in the topos of finite sets."""
    T = finset_topos()
    star = Atom("*")
    obj0 = Presheaf(T, {star: C.objects}, {T.index.id_of(star): FinFunction.identity(C.objects)})
    obj1 = Presheaf(T, {star: C.morphisms}, {T.index.id_of(star): FinFunction.identity(C.morphisms)})
    s = NatTrans(obj1, obj0, {star: C.src})
    t = NatTrans(obj1, obj0, {star: C.tgt})
    e = NatTrans(obj0, obj1, {star: C.identity})
    cone = composable_pairs(T, obj0, obj1, s, t)
    table = {p: C.comp[(p[2], p[0])] for p in cone.apex.at[star]}
    m = NatTrans(cone.apex, obj1, {star: FinFunction(cone.apex.at[star], C.morphisms, table)})
    out = CategoryObject(T, obj0, obj1, s, t, e, cone, m)
    problems = validate_category_object(out)
    if problems:
        raise InternalCheckError("finite category gave invalid category object: " + problems[0])
    return out


def nerve_truncation(C: CategoryObject) -> TruncatedSimplicialObject:
    problems = validate_category_object(C)
    if problems:
        raise ValueError("invalid category object: " + "; ".join(problems))
    T = C.topos
    idx = T.index
    X2cone = C.composable
    X3cone = wide_pullback(T, [C.C1, C.C1, C.C1], [C.C0, C.C0], [C.t, C.s, C.t, C.s])
    X = {0: C.C0, 1: C.C1, 2: X2cone.apex, 3: X3cone.apex}

    def tabulated(n_from, n_to, fn) -> NatTrans:
        component = {}
        for c in idx.objects:
            table = {x: fn(c, x) for x in X[n_from].at[c]}
            component[c] = FinFunction(X[n_from].at[c], X[n_to].at[c], table)
        return NatTrans(X[n_from], X[n_to], component)

    def comp(c, f1, f2):
        return C.m.component[c](Tup((f1, C.t.component[c](f1), f2)))

    face = {
        (1, 0): C.t,
        (1, 1): C.s,
        (2, 0): tabulated(2, 1, lambda c, x: x[2]),
        (2, 1): tabulated(2, 1, lambda c, x: comp(c, x[0], x[2])),
        (2, 2): tabulated(2, 1, lambda c, x: x[0]),
        (3, 0): tabulated(3, 2, lambda c, x: Tup((x[2], x[3], x[4]))),
        (3, 1): tabulated(3, 2, lambda c, x: Tup((comp(c, x[0], x[2]), x[3], x[4]))),
        (3, 2): tabulated(3, 2, lambda c, x: Tup((x[0], x[1], comp(c, x[2], x[4])))),
        (3, 3): tabulated(3, 2, lambda c, x: Tup((x[0], x[1], x[2]))),
    }

    def ec(c, x):
        return C.e.component[c](x)

    def sc(c, f):
        return C.s.component[c](f)

    def tc(c, f):
        return C.t.component[c](f)

    degen = {
        (0, 0): C.e,
        (1, 0): tabulated(1, 2, lambda c, f: Tup((ec(c, sc(c, f)), sc(c, f), f))),
        (1, 1): tabulated(1, 2, lambda c, f: Tup((f, tc(c, f), ec(c, tc(c, f))))),
        (2, 0): tabulated(
            2, 3, lambda c, x: Tup((ec(c, sc(c, x[0])), sc(c, x[0]), x[0], x[1], x[2]))
        ),
        (2, 1): tabulated(2, 3, lambda c, x: Tup((x[0], x[1], ec(c, x[1]), x[1], x[2]))),
        (2, 2): tabulated(
            2, 3, lambda c, x: Tup((x[0], x[1], x[2], tc(c, x[2]), ec(c, tc(c, x[2]))))
        ),
    }
    out = TruncatedSimplicialObject(T, X, face, degen)
    problems = out.validate()
    if problems:
        raise InternalCheckError("nerve fails simplicial identities: " + problems[0])
    return out


# ---------------------------------------------------------------------------
# Segal condition


@dataclass
class SegalWitness:
    holds: bool
    comparison: dict  # n -> NatTrans level[n] -> spine limit
    cones: dict  # n -> PsLimitCone


def _spine_cone(X: TruncatedSimplicialObject, n: int) -> PsLimitCone:
    T = X.topos
    maps = []
    for k in range(n - 1):
        maps.append(X.target)
        maps.append(X.source)
    return wide_pullback(T, [X.level[1]] * n, [X.level[0]] * (n - 1), maps)


def _spine_comparison(X, n, cone) -> NatTrans:
    edges = X.spine_maps(n)
    verts = X.vertex_maps(n)
    legs = {}
    for k in range(n):
        legs[_o(2 * k)] = edges[k]
    for k in range(n - 1):
        legs[_o(2 * k + 1)] = verts[k + 1]
    return cone.mediate(X.level[n], legs)


def segal_check(X: TruncatedSimplicialObject) -> SegalWitness:
    problems = X.validate()
    if problems:
        raise ValueError("invalid simplicial object: " + "; ".join(problems))
    comparison, cones = {}, {}
    holds = True
    for n in (2, 3):
        cone = _spine_cone(X, n)
        cmp_map = _spine_comparison(X, n, cone)
        cones[n] = cone
        comparison[n] = cmp_map
        holds = holds and is_iso(cmp_map)
    return SegalWitness(holds, comparison, cones)


def is_segal(X: TruncatedSimplicialObject) -> bool:
    return segal_check(X).holds


def to_category_object(X: TruncatedSimplicialObject) -> CategoryObject:
    """Recover (C0, C1, s, t, e, m) from a Segal simplicial object; m goes
    through the inverse of the two-chain comparison isomorphism."""
    w = segal_check(X)
    if not w.holds:
        raise ValueError("not a Segal object")
    cone = w.cones[2]
    m = nat_inverse(w.comparison[2]).then(X.face[(2, 1)])
    return CategoryObject(
        X.topos, X.level[0], X.level[1], X.source, X.target, X.degen[(0, 0)], cone, m
    )


# ---------------------------------------------------------------------------
# object of equivalences and completeness


@dataclass
class Z3Result:
    Z: Presheaf
    cone: PsLimitCone
    from_X3: NatTrans
    from_X1: NatTrans


def z3(X: TruncatedSimplicialObject) -> Z3Result:
    """The invertibility stage: the wide pullback of
    X1 ->t X0 <-t X1 ->s X0 <-s X1, receiving X3 via (d1 d3, d0 d3, d1 d0)
    and X1 via (s0 d0, id, s0 d1)."""
    T = X.topos
    s, t = X.source, X.target
    d = X.face
    cone = wide_pullback(T, [X.level[1]] * 3, [X.level[0]] * 2, [t, t, s, s])
    a = d[(3, 3)].then(d[(2, 1)])  # composite of the first two chains
    b = d[(3, 3)].then(d[(2, 0)])  # the middle one-chain
    c = d[(3, 0)].then(d[(2, 1)])  # composite of the last two chains
    from_X3 = cone.mediate(
        X.level[3],
        {
            _o(0): a,
            _o(1): b.then(t),
            _o(2): b,
            _o(3): b.then(s),
            _o(4): c,
        },
    )
    s0 = X.degen[(0, 0)]
    from_X1 = cone.mediate(
        X.level[1],
        {
            _o(0): t.then(s0),
            _o(1): t,
            _o(2): NatTrans.identity(X.level[1]),
            _o(3): s,
            _o(4): s.then(s0),
        },
    )
    return Z3Result(cone.apex, cone, from_X3, from_X1)


@dataclass
class EquivalencesObject:
    carrier: Presheaf
    U: NatTrans  # carrier -> X1, mono
    s0_lift: NatTrans  # X0 -> carrier
    to_X3: NatTrans
    cone: PsLimitCone
    z: Z3Result


def total_degeneracy(X: TruncatedSimplicialObject, n: int) -> NatTrans:
    """The unique degeneracy X0 -> level[n] made of identity chains."""
    out = NatTrans.identity(X.level[0])
    for k in range(n):
        out = out.then(X.degen[(k, 0)])
    return out


def hoequiv(X: TruncatedSimplicialObject) -> EquivalencesObject:
    z = z3(X)
    cone = ps_pullback(z.from_X1, z.from_X3)
    U = cone.legs[_o(0)]
    to_X3 = cone.legs[_o(2)]
    s0 = X.degen[(0, 0)]
    s0_lift = cone.mediate(
        X.level[0],
        {
            _o(0): s0,
            _o(1): s0.then(z.from_X1),
            _o(2): total_degeneracy(X, 3),
        },
    )
    if not is_mono(U):
        raise InternalCheckError("projection from the object of equivalences is not mono")
    if s0_lift.then(U) != s0:
        raise InternalCheckError("equivalence lift does not restrict the degeneracy")
    return EquivalencesObject(cone.apex, U, s0_lift, to_X3, cone, z)


def is_complete(X: TruncatedSimplicialObject, eq: EquivalencesObject | None = None) -> bool:
    """Whether every internal equivalence is an identity: the degeneracy
    into the object of equivalences is iso.  Cross-checked against the
    square X0 -> X3, X0 -> X1 over the invertibility stage being a
    pointwise pullback; the two verdicts must agree."""
    if eq is None:
        eq = hoequiv(X)
    via_lift = is_iso(eq.s0_lift)
    z = eq.z
    top = total_degeneracy(X, 3)
    s0 = X.degen[(0, 0)]
    via_square = s0.then(z.from_X1) == top.then(z.from_X3)
    if via_square:
        for c in X.topos.index.objects:
            pairs = {
                (w1, w3)
                for w1 in X.level[1].at[c]
                for w3 in X.level[3].at[c]
                if z.from_X1.component[c](w1) == z.from_X3.component[c](w3)
            }
            images = [
                (s0.component[c](x), top.component[c](x)) for x in X.level[0].at[c]
            ]
            if len(set(images)) != len(images) or set(images) != pairs:
                via_square = False
                break
    if via_lift != via_square:
        raise InternalCheckError("completeness criteria disagree")
    return via_lift


def is_hoequiv_morphism(X: TruncatedSimplicialObject, f: NatTrans, eq=None) -> bool:
    """Whether f: D -> X1 factors through the object of equivalences."""
    if eq is None:
        eq = hoequiv(X)
    for c, func in f.component.items():
        image = set(eq.U.component[c].table.values())
        if any(v not in image for v in func.table.values()):
            return False
    return True


def hoequiv_lift(X: TruncatedSimplicialObject, f: NatTrans, eq=None) -> NatTrans:
    """The unique factorization of f: D -> X1 through the mono U."""
    if eq is None:
        eq = hoequiv(X)
    component = {}
    for c, func in f.component.items():
        back = {v: k for k, v in eq.U.component[c].table.items()}
        component[c] = FinFunction(
            func.dom, eq.carrier.at[c], {x: back[func(x)] for x in func.dom}
        )
    lift = NatTrans(f.dom, eq.carrier, component)
    if lift.then(eq.U) != f:
        raise InternalCheckError("lift does not factor the given morphism")
    return lift


# ---------------------------------------------------------------------------
# mapping objects and composition


@dataclass
class MappingObject:
    obj: Presheaf  # the mapping object itself (over the terminal)
    pi: SliceMap  # dependent product over the terminal; pi.total == obj
    pulled: SliceMap  # (x0..xn)^* level[n] over the context D
    cone: PsLimitCone  # the pullback defining pulled
    context: Presheaf
    points: list
    X: TruncatedSimplicialObject
    n: int


def _points_pairing(X, D, points, prod) -> NatTrans:
    return pairing(prod, D, list(points))


def _pulled_level(X, D, points, n):
    """Pullback of level[n] along (x0..xn): D -> X0^(n+1)."""
    prod = ps_product([X.level[0]] * (n + 1))
    vertex = pairing(prod, X.level[n], X.vertex_maps(n))
    pts = _points_pairing(X, D, points, prod)
    cone = ps_pullback(vertex, pts)
    return cone, SliceMap(cone.apex, D, cone.legs[_o(2)])


def mapping_object(
    X: TruncatedSimplicialObject, D: Presheaf, points: list, check_binary: bool = True
) -> MappingObject:
    n = len(points) - 1
    if not 1 <= n <= 3:
        raise ValueError("mapping objects take 2..4 points")
    cone, pulled = _pulled_level(X, D, points, n)
    pi = dependent_product(unique_to_terminal(D), pulled)
    out = MappingObject(pi.total, pi, pulled, cone, D, list(points), X, n)
    if check_binary and n >= 2:
        if not is_iso(binary_decomposition(out)):
            raise InternalCheckError("mapping object does not split into binary factors")
    return out


def _edge_slice_map(src: MappingObject, k: int, binary: MappingObject) -> NatTrans:
    """Slice morphism over D induced by the k-th spine edge."""
    X, D = src.X, src.context
    edge = src.cone.legs[_o(0)].then(X.spine_maps(src.n)[k])
    prod2 = ps_product([X.level[0]] * 2)
    pts2 = _points_pairing(X, D, [src.points[k], src.points[k + 1]], prod2)
    return binary.cone.mediate(
        src.cone.apex,
        {
            _o(0): edge,
            _o(1): src.pulled.proj.then(pts2),
            _o(2): src.pulled.proj,
        },
    )


def binary_factors(src: MappingObject) -> list[MappingObject]:
    X, D = src.X, src.context
    return [
        mapping_object(X, D, [src.points[k], src.points[k + 1]], check_binary=False)
        for k in range(src.n)
    ]


def binary_decomposition(src: MappingObject, factors=None):
    """The canonical map from an n-ary mapping object to the product of its
    consecutive binary mapping objects."""
    if factors is None:
        factors = binary_factors(src)
    unique = unique_to_terminal(src.context)
    comps = []
    for k, b in enumerate(factors):
        h = _edge_slice_map(src, k, b)
        comps.append(dependent_product_map(unique, src.pi, b.pi, h))
    prod = ps_product([b.obj for b in factors])
    return pairing(prod, src.obj, comps)


def section_element(pi: SliceMap, f: NatTrans, sigma: NatTrans, c: Element) -> Element:
    """The element of the dependent product of sigma: a section of the
    slice (total over f.dom) — specialised to f = D -> terminal."""
    D = f.dom
    idx = D.topos.index
    entries = []
    for d in idx.objects:
        for u in idx.morphisms:
            if idx.src(u) != d or idx.tgt(u) != c:
                continue
            for a in D.at[d]:
                entries.append((Tup((u, a)), sigma.component[d](a)))
    out = Tup((STAR, Fam(entries)))
    if out not in pi.total.at[c]:
        raise InternalCheckError("section does not define a product element")
    return out


def identity_morphism(X: TruncatedSimplicialObject, D: Presheaf, x: NatTrans) -> NatTrans:
    """The global element of map(x, x) given by the degeneracy at x."""
    mp = mapping_object(X, D, [x, x])
    sigma = mp.cone.mediate(
        D,
        {
            _o(0): x.then(X.degen[(0, 0)]),
            _o(1): _points_pairing(X, D, [x, x], ps_product([X.level[0]] * 2)),
            _o(2): NatTrans.identity(D),
        },
    )
    one = terminal(X.topos)
    component = {
        c: FinFunction.constant(
            one.at[c],
            mp.obj.at[c],
            section_element(mp.pi, unique_to_terminal(D), sigma, c),
        )
        for c in X.topos.index.objects
    }
    return NatTrans(one, mp.obj, component)


@dataclass
class CompositionData:
    map_xy: MappingObject
    map_yz: MappingObject
    map_xz: MappingObject
    ternary: MappingObject
    split: NatTrans  # ternary.obj -> map_xy.obj x map_yz.obj, iso
    split_inverse: NatTrans
    to_xz: NatTrans  # ternary.obj -> map_xz.obj, via the inner face
    prod: PsLimitCone


def composition_data(X, D, x, y, z) -> CompositionData:
    ternary = mapping_object(X, D, [x, y, z], check_binary=False)
    map_xy = mapping_object(X, D, [x, y])
    map_yz = mapping_object(X, D, [y, z])
    map_xz = mapping_object(X, D, [x, z])
    split = binary_decomposition(ternary, [map_xy, map_yz])
    if not is_iso(split):
        raise InternalCheckError("two-chain comparison is not invertible")
    prod = ps_product([map_xy.obj, map_yz.obj])
    # the inner face sends a two-chain to its composite one-chain
    inner = ternary.cone.legs[_o(0)].then(X.face[(2, 1)])
    prod2 = ps_product([X.level[0]] * 2)
    pts2 = _points_pairing(X, D, [x, z], prod2)
    h = map_xz.cone.mediate(
        ternary.cone.apex,
        {
            _o(0): inner,
            _o(1): ternary.pulled.proj.then(pts2),
            _o(2): ternary.pulled.proj,
        },
    )
    unique = unique_to_terminal(D)
    to_xz = dependent_product_map(unique, ternary.pi, map_xz.pi, h)
    return CompositionData(
        map_xy, map_yz, map_xz, ternary, split, nat_inverse(split), to_xz, prod
    )


def compose(data: CompositionData, c: Element, f: Element, g: Element) -> Element:
    """Composite of f in map(x,y) and g in map(y,z) at index object c:
    invert the chain splitting, then take the inner face."""
    pair = Tup((f, g))
    chain = data.split_inverse.component[c](pair)
    return data.to_xz.component[c](chain)


def hoequiv_object(X, D, x, y, eq=None):
    """The object of equivalences between two points, with its mono
    comparison into the mapping object."""
    if eq is None:
        eq = hoequiv(X)
    prod2 = ps_product([X.level[0]] * 2)
    st = pairing(prod2, eq.carrier, [eq.U.then(X.source), eq.U.then(X.target)])
    pts = _points_pairing(X, D, [x, y], prod2)
    cone = ps_pullback(st, pts)
    pulled = SliceMap(cone.apex, D, cone.legs[_o(2)])
    unique = unique_to_terminal(D)
    pi = dependent_product(unique, pulled)
    mp = mapping_object(X, D, [x, y])
    h = mp.cone.mediate(
        cone.apex,
        {
            _o(0): cone.legs[_o(0)].then(eq.U),
            _o(1): pulled.proj.then(pts),
            _o(2): pulled.proj,
        },
    )
    comparison = dependent_product_map(unique, pi, mp.pi, h)
    if not is_mono(comparison):
        raise InternalCheckError("equivalence object does not embed into the mapping object")
    return pi.total, comparison


# ---------------------------------------------------------------------------
# final objects


def is_final_object(X: TruncatedSimplicialObject, f: NatTrans) -> bool:
    """f: terminal -> X0 is final when the object of arrows into f projects
    isomorphically to X0 by the source."""
    prod2 = ps_product([X.level[0]] * 2)
    st = pairing(prod2, X.level[1], [X.source, X.target])
    idf = pairing(
        prod2,
        X.level[0],
        [NatTrans.identity(X.level[0]), unique_to_terminal(X.level[0]).then(f)],
    )
    cone = ps_pullback(st, idf)
    return is_iso(cone.legs[_o(2)])


# ---------------------------------------------------------------------------
# maps of Segal objects


@dataclass
class SegalMap:
    dom: TruncatedSimplicialObject
    cod: TruncatedSimplicialObject
    component: dict  # level n -> NatTrans dom.level[n] -> cod.level[n]

    def validate(self) -> list[str]:
        report = []
        for n in range(4):
            f = self.component.get(n)
            if f is None:
                report.append(f"missing level {n} component")
            else:
                report.extend(f"level {n}: {p}" for p in f.validate())
        if report:
            return report
        for (n, i), d in self.dom.face.items():
            if d.then(self.component[n - 1]) != self.component[n].then(self.cod.face[(n, i)]):
                report.append(f"does not commute with face ({n},{i})")
        for (n, i), s in self.dom.degen.items():
            if s.then(self.component[n + 1]) != self.component[n].then(self.cod.degen[(n, i)]):
                report.append(f"does not commute with degeneracy ({n},{i})")
        return report

    @staticmethod
    def identity(X: TruncatedSimplicialObject) -> "SegalMap":
        return SegalMap(X, X, {n: NatTrans.identity(X.level[n]) for n in range(4)})


def segal_map_from_nerves(F0: NatTrans, F1: NatTrans, W, V) -> SegalMap:
    """Extend object/morphism components to a full map of nerve truncations."""
    comps = {0: F0, 1: F1}
    for n in (2, 3):
        cone = _spine_cone(V, n)
        cmp_v = _spine_comparison(V, n, cone)
        legs = {}
        edges_w = W.spine_maps(n)
        verts_w = W.vertex_maps(n)
        for k in range(n):
            legs[_o(2 * k)] = edges_w[k].then(F1)
        for k in range(n - 1):
            legs[_o(2 * k + 1)] = verts_w[k + 1].then(F0)
        comps[n] = cone.mediate(W.level[n], legs).then(nat_inverse(cmp_v))
    out = SegalMap(W, V, comps)
    problems = out.validate()
    if problems:
        raise InternalCheckError("induced map is not simplicial: " + problems[0])
    return out


def is_fully_faithful(F: SegalMap) -> bool:
    W, V = F.dom, F.cod
    prod_v = ps_product([V.level[0]] * 2)
    st_v = pairing(prod_v, V.level[1], [V.source, V.target])
    prod_w = ps_product([W.level[0]] * 2)
    f00 = pairing(
        prod_v,
        prod_w.apex,
        [prod_w.legs[_o(0)].then(F.component[0]), prod_w.legs[_o(1)].then(F.component[0])],
    )
    cone = ps_pullback(st_v, f00)
    st_w = pairing(prod_w, W.level[1], [W.source, W.target])
    comparison = cone.mediate(
        W.level[1],
        {
            _o(0): F.component[1],
            _o(1): F.component[1].then(st_v),
            _o(2): st_w,
        },
    )
    return is_iso(comparison)


def is_essentially_surjective(F: SegalMap, eq=None) -> bool:
    """Every point of the codomain receives an equivalence from the image,
    naturally: the source-of-equivalence evaluation admits a section."""
    W, V = F.dom, F.cod
    if eq is None:
        eq = hoequiv(V)
    cone = ps_pullback(F.component[0], eq.U.then(V.source))
    to_v0 = cone.legs[_o(2)].then(eq.U).then(V.target)
    ident = NatTrans.identity(V.level[0])
    for _ in enumerate_nat_trans(V.level[0], cone.apex, over=(ident, to_v0)):
        return True
    return False
