"""Integer homology of symmetric closure spaces through their flag complexes."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from ..core import CheckResult, FinSpace
from ..errors import ClosureError
from .complex import DEFAULT_MAX_DIM, FlagComplex, IntMatrix, boundary_matrix, flag_complex
from .snf import invariant_factors

__all__ = [
    "GroupPresentation",
    "GroupSummary",
    "HomologySummary",
    "chain_homology",
    "compare_homology",
    "homology",
    "homology_of_complex",
    "pi1_abelianized",
    "relative_homology",
]


@dataclass(frozen=True)
class GroupSummary:
    """A finitely generated abelian group ``Z^rank ⊕ Z/t1 ⊕ Z/t2 ⊕ ...`` with ``t1 | t2 | ...``."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        t = tuple(self.torsion)
        if any(d < 2 for d in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not a divisibility chain of integers >= 2")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_relations(cls, generators: int, factors: Iterable[int]) -> GroupSummary:
        """``Z^generators`` modulo relations whose Smith form has ``factors``."""
        factors = tuple(factors)
        return cls(generators - len(factors), tuple(d for d in factors if d > 1))

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def to_json(self) -> dict[str, Any]:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class HomologySummary:
    """Homology per degree ``0 .. max_deg``; ``None`` marks a degree that was not computed."""

    degrees: dict[int, GroupSummary | None]
    reduced: bool = False
    complex_stats: dict[str, Any] = field(default_factory=dict)

    @property
    def max_deg(self) -> int:
        return max(self.degrees) if self.degrees else -1

    def __getitem__(self, k: int) -> GroupSummary | None:
        return self.degrees[k]

    def computed(self) -> list[int]:
        return [k for k, g in sorted(self.degrees.items()) if g is not None]

    def is_complete(self) -> bool:
        return all(g is not None for g in self.degrees.values())

    def betti(self, k: int) -> int:
        g = self.degrees.get(k)
        if g is None:
            raise ClosureError(f"degree {k} was not computed")
        return g.rank

    def to_json(self) -> dict[str, Any]:
        return {
            "degrees": {str(k): (g.to_json() if g is not None else None) for k, g in sorted(self.degrees.items())},
            "reduced": self.reduced,
            "complex_stats": self.complex_stats,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> HomologySummary:
        degrees = {
            int(k): (GroupSummary(v["rank"], tuple(v["torsion"])) if v is not None else None)
            for k, v in data["degrees"].items()
        }
        return cls(degrees, bool(data.get("reduced", False)), dict(data.get("complex_stats", {})))


def chain_homology(dims: Sequence[int], boundaries: Sequence[IntMatrix | None], max_deg: int) -> dict[int, GroupSummary | None]:
    """Homology of a chain complex with ``dims[k]`` generators in degree ``k``.

    ``boundaries[k]`` is the map from degree ``k`` to ``k-1`` (entry 0 unused);
    a ``None`` entry means it is unknown, which makes the degrees that depend on
    it "not computed".
    """
    factors: dict[int, tuple[int, ...] | None] = {}

    def fac(k: int) -> tuple[int, ...] | None:
        if k <= 0:
            return ()
        if k not in factors:
            b = boundaries[k] if k < len(boundaries) else None
            factors[k] = invariant_factors(b) if b is not None else None
        return factors[k]

    out: dict[int, GroupSummary | None] = {}
    for k in range(max_deg + 1):
        if k >= len(dims) or dims[k] is None:
            out[k] = None
            continue
        f_in, f_out = fac(k), fac(k + 1)
        if f_in is None or f_out is None:
            out[k] = None
            continue
        free = dims[k] - len(f_in) - len(f_out)
        out[k] = GroupSummary(free, tuple(d for d in f_out if d > 1))
    return out


def _complex_chain_data(K: FlagComplex, top: int, keep=None) -> tuple[list[int | None], list[IntMatrix | None]]:
    """Chain groups and boundaries up to degree ``top``, optionally restricted to simplices passing ``keep``."""
    dims: list[int | None] = []
    bds: list[IntMatrix | None] = [None]
    for k in range(top + 1):
        dims.append(K.count(k) if K.is_built(k) else None)
    for k in range(1, top + 1):
        bds.append(boundary_matrix(K, k) if K.is_built(k) else None)
    if keep is None:
        return dims, bds
    # quotient chain complex: drop the generators rejected by keep
    kept: list[list[int] | None] = []
    for k in range(top + 1):
        if dims[k] is None:
            kept.append(None)
        elif k <= K.built_dim:
            kept.append([i for i, s in enumerate(K.simplices[k]) if keep(s)])
        else:
            kept.append([])
    rdims = [len(x) if x is not None else None for x in kept]
    rbds: list[IntMatrix | None] = [None]
    for k in range(1, top + 1):
        b = bds[k]
        if b is None or kept[k] is None or kept[k - 1] is None:
            rbds.append(None)
            continue
        pos = {r: i for i, r in enumerate(kept[k - 1])}
        cols = tuple({pos[r]: v for r, v in b.columns[j].items() if r in pos} for j in kept[k])
        rbds.append(IntMatrix(len(pos), len(cols), cols))
    return rdims, rbds


def homology_of_complex(K: FlagComplex, max_deg: int, reduced: bool = False) -> HomologySummary:
    dims, bds = _complex_chain_data(K, max_deg + 1)
    degrees = chain_homology(dims, bds, max_deg)
    if reduced and degrees.get(0) is not None and degrees[0].rank > 0:
        degrees[0] = GroupSummary(degrees[0].rank - 1, degrees[0].torsion)
    return HomologySummary(degrees, reduced, K.stats())


def homology(X: FinSpace, max_deg: int = 3, reduced: bool = False, budget: int | None = None) -> HomologySummary:
    """Integer homology of ``X`` in degrees ``0 .. max_deg`` from its flag complex.

    ``rank`` is ``dim ker ∂_k - rank ∂_{k+1}`` and the torsion in degree ``k``
    are the invariant factors of ``∂_{k+1}`` above 1. With ``reduced`` the
    degree-0 rank drops by one. Degrees the simplex budget did not reach are
    ``None`` rather than zero.
    """
    if max_deg < 0:
        raise ValueError(f"max_deg must be >= 0, got {max_deg}")
    K = flag_complex(X, max_deg + 1, budget)
    return homology_of_complex(K, max_deg, reduced)


def relative_homology(X: FinSpace, A: Iterable[int], max_deg: int = 3, budget: int | None = None) -> HomologySummary:
    """Homology of the quotient chain complex ``C(K_X) / C(K_A)`` for the induced subcomplex on ``A``."""
    A = X.members(A)
    K = flag_complex(X, max_deg + 1, budget)
    dims, bds = _complex_chain_data(K, max_deg + 1, keep=lambda s: not all(v in A for v in s))
    return HomologySummary(chain_homology(dims, bds, max_deg), False, K.stats())


@dataclass(frozen=True)
class GroupPresentation:
    """Abelianized presentation: ``generators`` symbols, one exponent-sum vector per relator."""

    generators: int
    relators: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for r in self.relators:
            if len(r) != self.generators:
                raise ValueError(f"relator of length {len(r)} for {self.generators} generators")

    def abelianization(self) -> GroupSummary:
        if not self.relators or not self.generators:
            return GroupSummary(self.generators)
        M = IntMatrix.from_dense([list(r) for r in self.relators], self.generators)
        return GroupSummary.from_relations(self.generators, invariant_factors(M))


def edge_path_presentations(K: FlagComplex) -> list[tuple[frozenset[int], GroupPresentation]]:
    """Edge-path group presentation of each connected component of ``K``.

    Generators are the edges off a breadth-first spanning tree; each triangle
    ``(a, b, c)`` contributes the relator ``ab · bc · (ac)⁻¹`` with tree edges
    set to the identity.
    """
    if not K.is_built(2):
        raise ClosureError("the edge-path group needs the complex built to dimension 2")
    nbrs: dict[int, list[int]] = {v: [] for v in K.vertices}
    edges = K.simplices[1] if K.built_dim >= 1 else []
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    comp_of: dict[int, int] = {}
    tree: set[tuple[int, int]] = set()
    roots = []
    for root in K.vertices:
        if root in comp_of:
            continue
        roots.append(root)
        comp_of[root] = root
        queue = [root]
        while queue:
            x = queue.pop(0)
            for y in sorted(nbrs[x]):
                if y not in comp_of:
                    comp_of[y] = root
                    tree.add((min(x, y), max(x, y)))
                    queue.append(y)
    out = []
    triangles = K.simplices[2] if K.built_dim >= 2 else []
    for root in roots:
        gens = [e for e in edges if comp_of[e[0]] == root and e not in tree]
        gidx = {e: i for i, e in enumerate(gens)}
        rels = []
        for a, b, c in triangles:
            if comp_of[a] != root:
                continue
            vec = [0] * len(gens)
            for e, sign in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
                if e in gidx:
                    vec[gidx[e]] += sign
            rels.append(tuple(vec))
        members = frozenset(v for v in K.vertices if comp_of[v] == root)
        out.append((members, GroupPresentation(len(gens), tuple(rels))))
    return out


def pi1_abelianized(K: FlagComplex) -> list[GroupSummary]:
    """Abelianized edge-path group of every component of ``K``, ordered by least vertex."""
    return [p.abelianization() for _, p in edge_path_presentations(K)]


def compare_homology(X: FinSpace, Y: FinSpace, max_deg: int = 3, reduced: bool = False,
                     budget: int | None = None) -> CheckResult:
    """Degree-wise isomorphism check of flag homology over the degrees both sides computed."""
    hx = homology(X, max_deg, reduced, budget)
    hy = homology(Y, max_deg, reduced, budget)
    return compare_summaries(hx, hy)


def compare_summaries(hx: HomologySummary, hy: HomologySummary) -> CheckResult:
    common = sorted(set(hx.computed()) & set(hy.computed()))
    skipped = sorted((set(hx.degrees) | set(hy.degrees)) - set(common))
    diff = [k for k in common if hx[k] != hy[k]]
    note = f"; degrees {skipped} not compared (not computed on both sides)" if skipped else ""
    if diff:
        detail = ", ".join(f"H{k}: {hx[k]} vs {hy[k]}" for k in diff)
        return CheckResult(False, f"differ in {detail}{note}", witness=diff)
    return CheckResult(True, f"equal in degrees {common}{note}", witness=skipped or None)
