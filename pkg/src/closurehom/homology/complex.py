"""Flag (clique) complexes of symmetric closure spaces and their boundary matrices."""

from __future__ import annotations

import os
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from ..core import FinSpace
from ..errors import ClosureError, UnsupportedDirectedError

__all__ = [
    "DEFAULT_MAX_DIM",
    "DEFAULT_SIMPLEX_BUDGET",
    "FlagComplex",
    "IntMatrix",
    "boundary_matrix",
    "flag_complex",
    "simplex_budget",
]

DEFAULT_SIMPLEX_BUDGET = 5_000_000
DEFAULT_MAX_DIM = 4
BUDGET_ENV = "CLOSUREHOM_SIMPLEX_BUDGET"

Simplex = tuple[int, ...]


def simplex_budget() -> int:
    """Simplex budget, overridable through ``CLOSUREHOM_SIMPLEX_BUDGET``."""
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return DEFAULT_SIMPLEX_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ClosureError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ClosureError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


@dataclass(frozen=True, eq=False)
class IntMatrix:
    """Exact integer matrix stored by sparse columns (``row -> value``)."""

    nrows: int
    ncols: int
    columns: tuple[dict[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.columns) != self.ncols:
            raise ValueError(f"{len(self.columns)} columns given for ncols={self.ncols}")
        for col in self.columns:
            for r in col:
                if not 0 <= r < self.nrows:
                    raise ValueError(f"row index {r} out of range for {self.nrows} rows")

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols: list[dict[int, int]] = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = int(v)
        return cls(nrows, ncols, tuple(cols))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(nrows, ncols, tuple({} for _ in range(ncols)))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple({i: 1} for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def rows(self) -> list[dict[int, int]]:
        """Row-major sparse copy (``col -> value`` per row)."""
        out: list[dict[int, int]] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def is_zero(self) -> bool:
        return self.nnz() == 0

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.ncols, self.nrows, tuple(self.rows()))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = []
        for col in other.columns:
            acc: dict[int, int] = {}
            for k, b in col.items():
                for i, a in self.columns[k].items():
                    acc[i] = acc.get(i, 0) + a * b
            cols.append({i: v for i, v in acc.items() if v})
        return IntMatrix(self.nrows, other.ncols, tuple(cols))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            {i: v for i, v in a.items() if v} == {i: v for i, v in b.items() if v}
            for a, b in zip(self.columns, other.columns)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


@dataclass(eq=False)
class FlagComplex:
    """Clique complex of the adjacency ``x != y, y ∈ c({x})`` of a symmetric space.

    ``simplices[k]`` lists the ``k``-simplices as increasing vertex tuples in
    lexicographic order. Dimensions ``0 .. built_dim`` are complete; ``full``
    is true when no simplex of dimension ``built_dim + 1`` exists, i.e. the
    whole complex is present.
    """

    space: FinSpace
    simplices: list[list[Simplex]]
    max_dim: int
    full: bool
    budget_exhausted: bool = False
    _index: list[dict[Simplex, int]] = field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        self._index = [{s: i for i, s in enumerate(level)} for level in self.simplices]

    @property
    def built_dim(self) -> int:
        return len(self.simplices) - 1

    @property
    def vertices(self) -> list[int]:
        return [s[0] for s in self.simplices[0]] if self.simplices else []

    def count(self, k: int) -> int:
        """Number of ``k``-simplices; raises if dimension ``k`` was not built."""
        if k < 0:
            return 0
        if k <= self.built_dim:
            return len(self.simplices[k])
        if self.full:
            return 0
        raise ClosureError(f"dimension {k} was not built (built up to {self.built_dim})")

    def is_built(self, k: int) -> bool:
        return k <= self.built_dim or self.full

    def index(self, k: int, simplex: Simplex) -> int:
        return self._index[k][simplex]

    def __contains__(self, simplex: Iterable[int]) -> bool:
        s = tuple(sorted(simplex))
        k = len(s) - 1
        return 0 <= k <= self.built_dim and s in self._index[k]

    def stats(self) -> dict[str, object]:
        return {
            "vertices": len(self.simplices[0]) if self.simplices else 0,
            "simplices_by_dim": [len(level) for level in self.simplices],
            "built_dim": self.built_dim,
            "full": self.full,
        }

    def euler_characteristic(self) -> int:
        if not self.full:
            raise ClosureError("Euler characteristic needs the full complex")
        return sum((-1) ** k * len(level) for k, level in enumerate(self.simplices))


def flag_complex(X: FinSpace, max_dim: int = DEFAULT_MAX_DIM, budget: int | None = None) -> FlagComplex:
    """Enumerate cliques of size up to ``max_dim + 1`` level by level.

    Raises :class:`UnsupportedDirectedError` for a non-symmetric closure.
    If the running simplex count would exceed ``budget`` while a level is
    being enumerated, that level is dropped and the complex is returned with
    ``budget_exhausted`` set.
    """
    if max_dim < 0:
        raise ValueError(f"max_dim must be >= 0, got {max_dim}")
    if not X.is_symmetric():
        raise UnsupportedDirectedError(f"{X!r} has a non-symmetric closure; flag homology needs an undirected space")
    if budget is None:
        budget = simplex_budget()
    adj = X.adjacency()
    higher = [frozenset(y for y in adj[x] if y > x) for x in range(X.n)]

    level: list[Simplex] = [(x,) for x in range(X.n)]
    cands: list[frozenset[int]] = list(higher)
    total = len(level)
    if total > budget:
        return FlagComplex(X, [], max_dim, full=False, budget_exhausted=True)
    simplices = [level]
    exhausted = False
    while len(simplices) <= max_dim:
        nxt: list[Simplex] = []
        nxt_cands: list[frozenset[int]] = []
        for s, cand in zip(level, cands):
            for v in sorted(cand):
                nxt.append(s + (v,))
                nxt_cands.append(cand & higher[v])
            if total + len(nxt) > budget:
                exhausted = True
                break
        if exhausted or not nxt:
            break
        total += len(nxt)
        simplices.append(nxt)
        level, cands = nxt, nxt_cands
    full = not exhausted and not any(cands)
    return FlagComplex(X, simplices, max_dim, full=full, budget_exhausted=exhausted)


def boundary_matrix(K: FlagComplex, k: int) -> IntMatrix:
    """Matrix of the boundary map from ``k``-chains to ``(k-1)``-chains.

    Column ``j`` holds ``∂σ_j = Σ_i (-1)^i (σ_j with vertex i removed)`` in the
    sorted simplex bases. Dimensions past a full complex give empty matrices.
    """
    if k < 1:
        raise ValueError(f"boundary degree must be >= 1, got {k}")
    rows = K.count(k - 1)
    if k > K.built_dim:
        if not K.full:
            raise ClosureError(f"dimension {k} was not built (built up to {K.built_dim})")
        return IntMatrix.zeros(rows, 0)
    index = K._index[k - 1]
    cols = []
    for s in K.simplices[k]:
        col = {}
        for i in range(k + 1):
            col[index[s[:i] + s[i + 1:]]] = -1 if i % 2 else 1
        cols.append(col)
    return IntMatrix(rows, len(cols), tuple(cols))
