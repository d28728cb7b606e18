"""Standard families of finite closure spaces and their limits and colimits."""

from __future__ import annotations

from collections.abc import Iterable
from itertools import product as _cartesian

from .core import CMap, FinSpace
from .errors import (
    DiscontinuousMapError,
    InvalidPointError,
    InvalidSizeError,
    InvalidSpaceError,
    MismatchError,
)

__all__ = [
    "apexes",
    "coequalizer",
    "cone_d",
    "coproduct",
    "cycle_space",
    "discrete_space",
    "indiscrete_space",
    "interval_space",
    "partition_with",
    "point_space",
    "product",
    "projections",
    "pushout",
    "quotient",
    "subspace",
    "subspace_inclusion",
    "suspension_d",
    "wedge",
]


def cycle_space(n: int, m: int) -> FinSpace:
    """``n`` points on a cycle, each closed up to its ``m`` nearest neighbours per side."""
    if n < 1:
        raise InvalidSizeError(f"cycle space needs n >= 1, got {n}")
    if m < 0:
        raise InvalidSizeError(f"cycle space needs m >= 0, got {m}")
    closures = []
    for i in range(n):
        closures.append(frozenset(j for j in range(n) if min((i - j) % n, (j - i) % n) <= m))
    return FinSpace(tuple(closures), name=f"Z{n}_c{m}")


def interval_space(n: int, m: int = 1) -> FinSpace:
    """The discrete interval ``{0, ..., n}`` with ``|i - j| <= m`` closure."""
    if n < 0:
        raise InvalidSizeError(f"interval needs n >= 0, got {n}")
    if m < 1:
        raise InvalidSizeError(f"interval needs m >= 1, got {m}")
    closures = [frozenset(range(max(0, i - m), min(n, i + m) + 1)) for i in range(n + 1)]
    return FinSpace(tuple(closures), name=f"J{n}_c{m}")


def point_space() -> FinSpace:
    return FinSpace((frozenset({0}),), name="point")


def discrete_space(n: int) -> FinSpace:
    return FinSpace(tuple(frozenset({i}) for i in range(n)), name=f"discrete{n}")


def indiscrete_space(n: int) -> FinSpace:
    return FinSpace(tuple(frozenset(range(n)) for _ in range(n)), name=f"indiscrete{n}")


def subspace(X: FinSpace, A: Iterable[int]) -> FinSpace:
    """The subspace closure ``c_A(B) = A ∩ c(B)``; points renumbered in increasing order."""
    return subspace_inclusion(X, A).dom


def subspace_inclusion(X: FinSpace, A: Iterable[int]) -> CMap:
    """Inclusion of the subspace on ``A`` into ``X``."""
    members = sorted(X.members(A))
    index = {a: i for i, a in enumerate(members)}
    closures = tuple(frozenset(index[b] for b in X.closures[a] if b in index) for a in members)
    sub = FinSpace(closures, tuple(X.labels[a] for a in members), name=f"{X.name}|sub" if X.name else "")
    return CMap(sub, X, tuple(members))


def product(X: FinSpace, Y: FinSpace) -> FinSpace:
    """Product closure; point ``(a, b)`` gets id ``a * |Y| + b``.

    The closure of ``(a, b)`` is ``c(a) × c(b)``: the neighbourhoods of
    ``(x, y)`` are generated by ``N(x) × N(y)``, and such a box meets
    ``{(a, b)}`` exactly when ``x ∈ c(a)`` and ``y ∈ c(b)``.
    """
    ny = Y.n
    closures = []
    labels = []
    for a, b in _cartesian(range(X.n), range(ny)):
        closures.append(frozenset(u * ny + v for u in X.closures[a] for v in Y.closures[b]))
        labels.append(f"({X.labels[a]},{Y.labels[b]})")
    name = f"{X.name}x{Y.name}" if X.name and Y.name else ""
    return FinSpace(tuple(closures), tuple(labels), name)


def projections(X: FinSpace, Y: FinSpace) -> tuple[FinSpace, CMap, CMap]:
    P = product(X, Y)
    ny = Y.n
    p1 = CMap(P, X, tuple(p // ny for p in range(P.n)))
    p2 = CMap(P, Y, tuple(p % ny for p in range(P.n)))
    return P, p1, p2


def _coproduct_with_maps(X: FinSpace, Y: FinSpace) -> tuple[FinSpace, CMap, CMap]:
    shift = X.n
    closures = list(X.closures) + [frozenset(shift + v for v in cy) for cy in Y.closures]
    labels = [f"0:{lab}" for lab in X.labels] + [f"1:{lab}" for lab in Y.labels]
    name = f"{X.name}+{Y.name}" if X.name and Y.name else ""
    S = FinSpace(tuple(closures), tuple(labels), name)
    return S, CMap(X, S, tuple(range(X.n))), CMap(Y, S, tuple(range(shift, shift + Y.n)))


def coproduct(X: FinSpace, Y: FinSpace) -> FinSpace:
    """Disjoint union; ``Y``'s points are shifted by ``|X|``."""
    return _coproduct_with_maps(X, Y)[0]


def _normalize_blocks(X: FinSpace, blocks: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out = []
    for block in blocks:
        b = tuple(sorted(X.members(block)))
        if not b:
            raise InvalidSpaceError("quotient blocks must be non-empty")
        if seen & set(b):
            raise InvalidSpaceError(f"quotient blocks overlap at {sorted(seen & set(b))}")
        seen |= set(b)
        out.append(b)
    if len(seen) != X.n:
        raise InvalidSpaceError(f"quotient blocks miss points {sorted(X.points - seen)}")
    return out


def quotient(X: FinSpace, blocks: Iterable[Iterable[int]]) -> tuple[FinSpace, CMap]:
    """Quotient by a partition, with closure ``c_q(A) = q(c(q⁻¹(A)))``.

    Blocks become points in the order given. Returns the quotient space and
    the (continuous) quotient map.
    """
    parts = _normalize_blocks(X, blocks)
    q = [0] * X.n
    for i, b in enumerate(parts):
        for x in b:
            q[x] = i
    closures = tuple(frozenset(q[y] for y in X.closure(b)) for b in parts)
    labels = tuple(X.labels[b[0]] if len(b) == 1 else "[" + "|".join(X.labels[x] for x in b) + "]" for b in parts)
    Q = FinSpace(closures, labels, name=f"{X.name}/~" if X.name else "")
    return Q, CMap(X, Q, tuple(q))


def partition_with(X: FinSpace, groups: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    """Blocks ``groups`` (disjoint) plus singletons for every other point, ordered by least member."""
    groups = [tuple(sorted(X.members(g))) for g in groups]
    covered = set().union(*map(set, groups)) if groups else set()
    blocks = groups + [(x,) for x in range(X.n) if x not in covered]
    return sorted(blocks, key=lambda b: b[0])


def _merge_classes(n: int, pairs: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    classes: dict[int, list[int]] = {}
    for x in range(n):
        classes.setdefault(find(x), []).append(x)
    return [tuple(v) for _, v in sorted(classes.items())]


def coequalizer(f: CMap, g: CMap) -> tuple[FinSpace, CMap]:
    """Quotient of the common codomain by the relation generated by ``f(z) ~ g(z)``."""
    if f.dom != g.dom or f.cod != g.cod:
        raise MismatchError("coequalizer needs parallel maps")
    blocks = _merge_classes(f.cod.n, zip(f.image, g.image))
    return quotient(f.cod, blocks)


def pushout(f: CMap, g: CMap) -> tuple[FinSpace, CMap, CMap]:
    """Glue ``f.cod`` and ``g.cod`` along ``f(z) ~ g(z)``; returns ``(P, s1, s2)``."""
    if f.dom != g.dom:
        raise MismatchError("pushout maps must share their domain")
    for name, h in (("f", f), ("g", g)):
        if not h.is_continuous():
            raise DiscontinuousMapError(f"pushout map {name} is not continuous")
    S, i1, i2 = _coproduct_with_maps(f.cod, g.cod)
    blocks = _merge_classes(S.n, ((i1(f(z)), i2(g(z))) for z in range(f.dom.n)))
    P, q = quotient(S, blocks)
    return P, i1.then(q), i2.then(q)


def wedge(X: FinSpace, x0: int, Y: FinSpace, y0: int) -> FinSpace:
    """One-point union of ``X`` and ``Y`` identifying ``x0`` with ``y0``."""
    try:
        X.check_point(x0)
        Y.check_point(y0)
    except InvalidPointError as exc:
        raise InvalidPointError(f"invalid wedge basepoint: {exc}") from None
    pt = point_space()
    P, _, _ = pushout(CMap(pt, X, (x0,)), CMap(pt, Y, (y0,)))
    name = f"{X.name}v{Y.name}" if X.name and Y.name else ""
    return P.relabeled(name=name)


def cone_d(X: FinSpace, h: int = 1) -> FinSpace:
    """Discrete cone: ``X × (J_h, c_1)`` with the layer ``X × {0}`` collapsed to an apex."""
    if h < 1:
        raise InvalidSizeError(f"cone height must be >= 1, got {h}")
    P = product(X, interval_space(h, 1))
    base = [x * (h + 1) for x in range(X.n)]
    C, _ = quotient(P, partition_with(P, [base] if base else []))
    return C.relabeled(name=f"C{X.name}" if X.name else "")


def suspension_d(X: FinSpace, h: int = 2) -> FinSpace:
    """Discrete suspension: ``X × (J_h, c_1)`` with layers ``0`` and ``h`` collapsed to two apexes."""
    if h < 2:
        raise InvalidSizeError(f"suspension height must be >= 2, got {h}")
    P = product(X, interval_space(h, 1))
    bottom = [x * (h + 1) for x in range(X.n)]
    top = [x * (h + 1) + h for x in range(X.n)]
    S, _ = quotient(P, partition_with(P, [bottom, top] if X.n else []))
    return S.relabeled(name=f"S{X.name}" if X.name else "")


def apexes(X: FinSpace, h: int) -> tuple[int, int]:
    """Ids of the bottom and top apex in ``suspension_d(X, h)`` (``X`` non-empty)."""
    # Blocks are ordered by least member: the bottom block holds id 0, the top
    # block's least member is h, preceded by the h-1 interior points of x=0.
    return 0, h
