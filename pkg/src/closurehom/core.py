"""Finite quasi-discrete closure spaces and continuous maps between them.

A closure on a finite set is stored point-wise: ``closures[x]`` is ``c({x})``.
The closure of an arbitrary subset is the union of its point closures, so
``c(∅) = ∅`` and ``c(A ∪ B) = c(A) ∪ c(B)`` hold by construction; the only
axiom left to validate is reflexivity, ``x ∈ c({x})``.

Equivalently a space is a reflexive directed graph with an edge ``x -> y``
whenever ``y ∈ c({x})``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from .errors import InvalidPointError, InvalidSpaceError, MismatchError

__all__ = [
    "CheckResult",
    "CMap",
    "FinSpace",
    "find_homeomorphism",
    "is_coarser",
]


@dataclass(frozen=True)
class CheckResult:
    """Verdict of a check, truthy iff it passed.

    ``witness`` carries whatever object explains a failure (a point, a step
    index, ...), ``reason`` a human readable diagnostic.
    """

    ok: bool
    reason: str = ""
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class FinSpace:
    """A finite closure space with point-additive closure.

    Points are the integers ``0 .. n-1``; ``labels`` are cosmetic names used by
    the JSON format and reports.
    """

    closures: tuple[frozenset[int], ...]
    labels: tuple[str, ...] = ()
    name: str = ""
    _out: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        closures = tuple(frozenset(c) for c in self.closures)
        n = len(closures)
        labels = tuple(str(x) for x in self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise InvalidSpaceError(f"{len(labels)} labels for {n} points")
        if len(set(labels)) != n:
            raise InvalidSpaceError("point labels must be unique")
        for x, cx in enumerate(closures):
            if x not in cx:
                raise InvalidSpaceError(f"closure of point {labels[x]!r} does not contain it")
            for y in cx:
                if not (isinstance(y, int) and 0 <= y < n):
                    raise InvalidPointError(f"closure of point {labels[x]!r} names invalid point {y!r}")
        object.__setattr__(self, "closures", closures)
        object.__setattr__(self, "labels", labels)
        # N(x) = {y : x in c({y})}, the smallest neighborhood of x.
        nbhd: list[set[int]] = [set() for _ in range(n)]
        for y, cy in enumerate(closures):
            for x in cy:
                nbhd[x].add(y)
        object.__setattr__(self, "_out", tuple(frozenset(s) for s in nbhd))

    @classmethod
    def from_relation(cls, n: int, pairs: Iterable[tuple[int, int]], **kwargs: Any) -> FinSpace:
        """Build a space from pairs ``(x, y)`` meaning ``y ∈ c({x})``; reflexive pairs are added."""
        closures = [{i} for i in range(n)]
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise InvalidPointError(f"pair {(x, y)} out of range for {n} points")
            closures[x].add(y)
        return cls(tuple(frozenset(c) for c in closures), **kwargs)

    # -- basic accessors -------------------------------------------------

    def __len__(self) -> int:
        return len(self.closures)

    @property
    def n(self) -> int:
        return len(self.closures)

    @property
    def points(self) -> frozenset[int]:
        return frozenset(range(self.n))

    def __eq__(self, other: object) -> bool:
        # Structural equality; labels and names are cosmetic.
        if not isinstance(other, FinSpace):
            return NotImplemented
        return self.closures == other.closures

    def __hash__(self) -> int:
        return hash(self.closures)

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<FinSpace{tag} with {self.n} points>"

    def check_point(self, x: int) -> int:
        if not (isinstance(x, int) and 0 <= x < self.n):
            raise InvalidPointError(f"{x!r} is not a point of {self!r}")
        return x

    def members(self, A: Iterable[int]) -> frozenset[int]:
        """Validate a subset of the points and return it as a frozenset."""
        A = frozenset(A)
        for a in A:
            self.check_point(a)
        return A

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise InvalidPointError(f"no point labelled {label!r} in {self!r}") from None

    def relabeled(self, labels: Sequence[str] | None = None, name: str | None = None) -> FinSpace:
        return FinSpace(self.closures, tuple(labels) if labels is not None else self.labels,
                        self.name if name is None else name)

    # -- closure calculus ------------------------------------------------

    def closure(self, A: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for a in self.members(A):
            out |= self.closures[a]
        return frozenset(out)

    def interior(self, A: Iterable[int]) -> frozenset[int]:
        A = self.members(A)
        return self.points - self.closure(self.points - A)

    def smallest_neighborhood(self, x: int) -> frozenset[int]:
        """The ⊆-least ``B`` with ``x`` in the interior of ``B``."""
        return self._out[self.check_point(x)]

    def is_closed(self, A: Iterable[int]) -> bool:
        A = self.members(A)
        return self.closure(A) == A

    def is_open(self, A: Iterable[int]) -> bool:
        A = self.members(A)
        return self.interior(A) == A

    def is_symmetric(self) -> bool:
        return all(x in self.closures[y] for x, cx in enumerate(self.closures) for y in cx)

    def is_topological(self) -> bool:
        """True iff the closure is idempotent, i.e. a finite topology."""
        return all(self.closure(cx) == cx for cx in self.closures)

    def adjacency(self) -> list[frozenset[int]]:
        """Neighbours in the symmetrized relation, without the point itself."""
        adj = [set(cx) | set(nx) for cx, nx in zip(self.closures, self._out)]
        for x, s in enumerate(adj):
            s.discard(x)
        return [frozenset(s) for s in adj]

    def path_components(self) -> list[frozenset[int]]:
        """Connected components of the symmetrized relation, ordered by least point."""
        adj = self.adjacency()
        seen = [False] * self.n
        parts = []
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            stack, comp = [start], [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
                        comp.append(y)
            parts.append(frozenset(comp))
        return parts


def is_coarser(coarse: FinSpace, fine: FinSpace) -> bool:
    """True iff ``coarse`` has a coarser closure than ``fine`` on the same points.

    Equivalently, the identity ``fine -> coarse`` is continuous.
    """
    if coarse.n != fine.n:
        raise MismatchError(f"point sets differ: {coarse.n} vs {fine.n} points")
    return all(f <= c for c, f in zip(coarse.closures, fine.closures))


@dataclass(frozen=True, eq=False)
class CMap:
    """A set map between two finite closure spaces."""

    dom: FinSpace
    cod: FinSpace
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(self.image)
        if len(image) != self.dom.n:
            raise InvalidSpaceError(f"map has {len(image)} values for {self.dom.n} domain points")
        for y in image:
            self.cod.check_point(y)
        object.__setattr__(self, "image", image)

    @classmethod
    def from_dict(cls, dom: FinSpace, cod: FinSpace, mapping: Mapping[int, int]) -> CMap:
        missing = set(range(dom.n)) - set(mapping)
        if missing:
            raise InvalidSpaceError(f"map is not total: no value for {sorted(missing)}")
        return cls(dom, cod, tuple(mapping[x] for x in range(dom.n)))

    @classmethod
    def identity(cls, X: FinSpace) -> CMap:
        return cls(X, X, tuple(range(X.n)))

    @classmethod
    def constant(cls, dom: FinSpace, cod: FinSpace, y: int) -> CMap:
        return cls(dom, cod, (cod.check_point(y),) * dom.n)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def apply(self, A: Iterable[int]) -> frozenset[int]:
        return frozenset(self.image[a] for a in self.dom.members(A))

    def preimage(self, B: Iterable[int]) -> frozenset[int]:
        B = self.cod.members(B)
        return frozenset(x for x, y in enumerate(self.image) if y in B)

    def then(self, g: CMap) -> CMap:
        """The composite ``g ∘ self``."""
        if self.cod != g.dom:
            raise MismatchError("codomain of the first map is not the domain of the second")
        return CMap(self.dom, g.cod, tuple(g.image[y] for y in self.image))

    def is_continuous(self) -> bool:
        # f(c(A)) ⊆ d(f(A)) reduces to singletons by additivity.
        cod = self.cod.closures
        return all(
            all(self.image[y] in cod[fx] for y in self.dom.closures[x])
            for x, fx in enumerate(self.image)
        )

    def is_bijective(self) -> bool:
        return self.dom.n == self.cod.n and len(set(self.image)) == self.dom.n

    def inverse(self) -> CMap:
        if not self.is_bijective():
            raise InvalidSpaceError("map is not a bijection")
        inv = [0] * self.dom.n
        for x, y in enumerate(self.image):
            inv[y] = x
        return CMap(self.cod, self.dom, tuple(inv))

    def is_homeomorphism(self) -> bool:
        return self.is_bijective() and self.is_continuous() and self.inverse().is_continuous()


def _signature(X: FinSpace, x: int) -> tuple[int, int]:
    return (len(X.closures[x]), len(X.smallest_neighborhood(x)))


def find_homeomorphism(X: FinSpace, Y: FinSpace) -> CMap | None:
    """Search for a homeomorphism ``X -> Y``; return it or ``None``.

    Exact backtracking. Points are placed in breadth-first order so that each
    new point already has placed neighbours to check against, and candidates
    are restricted to images with the same (out, in) degree.
    """
    n = X.n
    if n != Y.n:
        return None
    sx = [_signature(X, x) for x in range(n)]
    sy = [_signature(Y, y) for y in range(n)]
    if sorted(sx) != sorted(sy):
        return None
    by_sig: dict[tuple[int, int], list[int]] = {}
    for y in range(n):
        by_sig.setdefault(sy[y], []).append(y)

    adj = X.adjacency()
    order: list[int] = []
    seen = set()
    for comp in X.path_components():
        # start each component from its rarest signature to prune early
        root = min(comp, key=lambda x: (len(by_sig[sx[x]]), x))
        queue = [root]
        seen.add(root)
        while queue:
            x = queue.pop(0)
            order.append(x)
            for z in sorted(adj[x]):
                if z not in seen:
                    seen.add(z)
                    queue.append(z)

    phi = [-1] * n
    used = [False] * n
    placed: list[int] = []

    def consistent(x: int, y: int) -> bool:
        for z in placed:
            w = phi[z]
            if (z in X.closures[x]) != (w in Y.closures[y]):
                return False
            if (x in X.closures[z]) != (y in Y.closures[w]):
                return False
        return True

    def extend(i: int) -> bool:
        if i == n:
            return True
        x = order[i]
        for y in by_sig[sx[x]]:
            if used[y] or not consistent(x, y):
                continue
            phi[x], used[y] = y, True
            placed.append(x)
            if extend(i + 1):
                return True
            placed.pop()
            phi[x], used[y] = -1, False
        return False

    if not extend(0):
        return None
    return CMap(X, Y, tuple(phi))
