"""Rank-level exactness checks for Mayer-Vietoris and pair long exact sequences.

Every map in a sequence is built at chain level from the flag complexes
(inclusions, differences, projections and the connecting homomorphisms) and
its rank on homology is measured over the rationals as

    rank H(f) = rank [ f(cycles) | boundaries ] - rank [ boundaries ].

A node ``V`` is exact when ``dim V = rank(incoming) + rank(outgoing)``.
Torsion is invisible to these checks.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from ..core import FinSpace
from ..errors import ClosureError, HypothesisError
from .complex import FlagComplex, IntMatrix, boundary_matrix, flag_complex
from .snf import matrix_rank

__all__ = ["ExactnessReport", "SequenceNode", "les_pair_exactness", "mv_rank_exactness"]

Vector = dict[int, int]


@dataclass(frozen=True)
class SequenceNode:
    label: str
    dim: int
    rank_in: int
    rank_out: int

    @property
    def exact(self) -> bool:
        return self.dim == self.rank_in + self.rank_out


@dataclass(frozen=True)
class ExactnessReport:
    nodes: tuple[SequenceNode, ...]
    betti: dict[str, tuple[int, ...]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(node.exact for node in self.nodes)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[SequenceNode]:
        return [node for node in self.nodes if not node.exact]

    def table(self) -> str:
        lines = [f"{'node':<22} {'dim':>4} {'in':>4} {'out':>4}  exact"]
        for n in self.nodes:
            lines.append(f"{n.label:<22} {n.dim:>4} {n.rank_in:>4} {n.rank_out:>4}  {'yes' if n.exact else 'NO'}")
        return "\n".join(lines)


def _kernel(M: IntMatrix) -> list[Vector]:
    """Integer basis (over Q) of the null space of ``M`` as sparse column vectors."""
    n = M.ncols
    rows = [[Fraction(v) for v in r] for r in M.to_dense()]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for i, pc in enumerate(pivots):
            if rows[i][free]:
                vec[pc] = -rows[i][free]
        scale = lcm(*(v.denominator for v in vec.values()))
        basis.append({k: int(v * scale) for k, v in vec.items()})
    return basis


def _induced_rank(images: list[Vector], nrows: int, target_boundary: IntMatrix) -> int:
    if not images:
        return 0
    for v in images:
        if any(not 0 <= i < nrows for i in v):
            raise ClosureError("chain map image leaves the target chain group")
    stacked = IntMatrix(nrows, len(images) + target_boundary.ncols, tuple(images) + target_boundary.columns)
    return matrix_rank(stacked) - matrix_rank(target_boundary)


class _Sub:
    """Induced subcomplex of a flag complex on a vertex set, indexed per degree."""

    def __init__(self, K: FlagComplex, vertices: frozenset[int], top: int):
        self.K = K
        self.ids: list[list[int]] = []
        for k in range(top + 1):
            level = K.simplices[k] if k <= K.built_dim else []
            self.ids.append([i for i, s in enumerate(level) if all(v in vertices for v in s)])
        self.pos = [{g: i for i, g in enumerate(ids)} for ids in self.ids]

    def dim(self, k: int) -> int:
        return len(self.ids[k]) if 0 <= k < len(self.ids) else 0

    def boundary(self, k: int) -> IntMatrix:
        """``∂_k`` of the subcomplex (``k >= 1``); past the top it is empty."""
        if k >= len(self.ids):
            return IntMatrix.zeros(self.dim(k - 1), 0)
        full = boundary_matrix(self.K, k)
        pos = self.pos[k - 1]
        cols = tuple({pos[r]: v for r, v in full.columns[g].items()} for g in self.ids[k])
        return IntMatrix(self.dim(k - 1), len(cols), cols)

    def cycles(self, k: int) -> list[Vector]:
        if k == 0:
            return [{i: 1} for i in range(self.dim(0))]
        return _kernel(self.boundary(k))

    def betti(self, k: int) -> int:
        return len(self.cycles(k)) - matrix_rank(self.boundary(k + 1))

    def to_global(self, k: int, v: Vector) -> Vector:
        return {self.ids[k][i]: c for i, c in v.items()}

    def from_global(self, k: int, v: Vector) -> Vector:
        pos = self.pos[k]
        if any(g not in pos for g in v):
            raise ClosureError("chain does not lie in the subcomplex")
        return {pos[g]: c for g, c in v.items()}


def _apply_boundary(K: FlagComplex, k: int, v: Vector) -> Vector:
    """Boundary of a global ``k``-chain."""
    out: Vector = {}
    for g, c in v.items():
        s = K.simplices[k][g]
        for i in range(k + 1):
            face = K.index(k - 1, s[:i] + s[i + 1:])
            out[face] = out.get(face, 0) + (-c if i % 2 else c)
    return {i: c for i, c in out.items() if c}


def _build(X: FinSpace, max_deg: int, budget: int | None) -> FlagComplex:
    K = flag_complex(X, max_deg + 1, budget)
    if not K.is_built(max_deg + 1):
        raise ClosureError(f"simplex budget too small to reach degree {max_deg + 1}")
    return K


def _blockdiag(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = a.columns + tuple({a.nrows + r: v for r, v in col.items()} for col in b.columns)
    return IntMatrix(a.nrows + b.nrows, a.ncols + b.ncols, cols)


def mv_rank_exactness(X: FinSpace, A: Iterable[int], B: Iterable[int], max_deg: int = 3,
                      budget: int | None = None) -> ExactnessReport:
    """Check the Mayer-Vietoris sequence of the cover ``{A, B}`` for exactness over Q.

    Preconditions, raised as :class:`HypothesisError`: ``{A, B}`` is an
    interior cover, and every simplex of the flag complex lies in the flag
    complex of ``A`` or of ``B`` (it is enough that every edge does).
    """
    from ..covers import Cover, is_interior_cover

    A, B = X.members(A), X.members(B)
    verdict = is_interior_cover(Cover(X, {"A": A, "B": B}))
    if not verdict:
        raise HypothesisError(f"{{A, B}} is not an interior cover: {verdict.reason}")
    K = _build(X, max_deg, budget)
    for u, w in K.simplices[1] if K.built_dim >= 1 else []:
        if not ({u, w} <= A or {u, w} <= B):
            raise HypothesisError(f"edge ({u}, {w}) lies in neither A nor B")

    top = max_deg + 1
    SX, SA, SB, SAB = (_Sub(K, S, top) for S in (X.points, A, B, A & B))

    alpha, beta, delta = {}, {}, {}
    for k in range(top + 1):
        if k <= max_deg:
            imgs = []
            for z in SAB.cycles(k):
                g = SAB.to_global(k, z)
                imgs.append({**SA.from_global(k, g), **{SA.dim(k) + i: c for i, c in SB.from_global(k, g).items()}})
            alpha[k] = _induced_rank(imgs, SA.dim(k) + SB.dim(k), _blockdiag(SA.boundary(k + 1), SB.boundary(k + 1)))
            imgs = [SA.to_global(k, z) for z in SA.cycles(k)]
            imgs += [{g: -c for g, c in SB.to_global(k, z).items()} for z in SB.cycles(k)]
            beta[k] = _induced_rank(imgs, SX.dim(k), SX.boundary(k + 1))
        if k >= 1:
            # split a cycle as a + b with a on A, b on B; the class of ∂a is δ[z]
            imgs = []
            for z in SX.cycles(k):
                part = {g: c for g, c in z.items() if g in SA.pos[k]}
                imgs.append(SAB.from_global(k - 1, _apply_boundary(K, k, part)))
            delta[k] = _induced_rank(imgs, SAB.dim(k - 1), SAB.boundary(k))

    bettis = {name: tuple(S.betti(k) for k in range(max_deg + 1))
              for name, S in (("X", SX), ("A", SA), ("B", SB), ("A&B", SAB))}
    nodes = []
    for k in range(max_deg, -1, -1):
        nodes.append(SequenceNode(f"H{k}(A&B)", bettis["A&B"][k], delta[k + 1], alpha[k]))
        nodes.append(SequenceNode(f"H{k}(A)+H{k}(B)", bettis["A"][k] + bettis["B"][k], alpha[k], beta[k]))
        nodes.append(SequenceNode(f"H{k}(X)", bettis["X"][k], beta[k], delta.get(k, 0)))
    return ExactnessReport(tuple(nodes), bettis)


def les_pair_exactness(X: FinSpace, A: Iterable[int], max_deg: int = 3,
                       budget: int | None = None) -> ExactnessReport:
    """Check the long exact sequence of the pair ``(X, A)`` for exactness over Q."""
    A = X.members(A)
    K = _build(X, max_deg, budget)
    top = max_deg + 1
    SA, SX = _Sub(K, A, top), _Sub(K, X.points, top)
    rel_ids = [[g for g in range(SX.dim(k)) if g not in SA.pos[k]] for k in range(top + 1)]
    rel_pos = [{g: i for i, g in enumerate(ids)} for ids in rel_ids]

    def rel_boundary(k: int) -> IntMatrix:
        if k > top:
            return IntMatrix.zeros(len(rel_ids[k - 1]), 0)
        full = SX.boundary(k)
        cols = tuple({rel_pos[k - 1][r]: v for r, v in full.columns[g].items() if r in rel_pos[k - 1]}
                     for g in rel_ids[k])
        return IntMatrix(len(rel_ids[k - 1]), len(cols), cols)

    def rel_cycles(k: int) -> list[Vector]:
        if k == 0:
            return [{i: 1} for i in range(len(rel_ids[0]))]
        return _kernel(rel_boundary(k))

    inc, proj, conn = {}, {}, {}
    for k in range(top + 1):
        if k <= max_deg:
            inc[k] = _induced_rank([SA.to_global(k, z) for z in SA.cycles(k)], SX.dim(k), SX.boundary(k + 1))
            imgs = [{rel_pos[k][g]: c for g, c in z.items() if g in rel_pos[k]} for z in SX.cycles(k)]
            proj[k] = _induced_rank(imgs, len(rel_ids[k]), rel_boundary(k + 1))
        if k >= 1:
            imgs = []
            for z in rel_cycles(k):
                lifted = {rel_ids[k][i]: c for i, c in z.items()}
                imgs.append(SA.from_global(k - 1, _apply_boundary(K, k, lifted)))
            conn[k] = _induced_rank(imgs, SA.dim(k - 1), SA.boundary(k))

    bettis = {
        "A": tuple(SA.betti(k) for k in range(max_deg + 1)),
        "X": tuple(SX.betti(k) for k in range(max_deg + 1)),
        "X,A": tuple(len(rel_cycles(k)) - matrix_rank(rel_boundary(k + 1)) for k in range(max_deg + 1)),
    }
    nodes = []
    for k in range(max_deg, -1, -1):
        nodes.append(SequenceNode(f"H{k}(A)", bettis["A"][k], conn[k + 1], inc[k]))
        nodes.append(SequenceNode(f"H{k}(X)", bettis["X"][k], inc[k], proj[k]))
        nodes.append(SequenceNode(f"H{k}(X,A)", bettis["X,A"][k], proj[k], conn.get(k, 0)))
    return ExactnessReport(tuple(nodes), bettis)
