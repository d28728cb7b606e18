"""Interior covers, one-step homotopies and certified deformation retractions.

Homotopy is certified here, never decided: a pair of maps is accepted when
the map ``H`` on ``dom × J_1`` with ``H(·, 0) = f`` and ``H(·, 1) = g`` is
continuous. That is sufficient for ``f ≃ g`` but not necessary.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .constructions import subspace_inclusion
from .core import CheckResult, CMap, FinSpace
from .errors import HomotopyInvarianceError, MismatchError, NotACoverError, UnsupportedDirectedError

__all__ = [
    "Cover",
    "RetractionChain",
    "good_pair_witness",
    "is_interior_cover",
    "one_step_homotopic",
    "peel_chain",
    "verify_retraction_chain",
]


@dataclass(frozen=True, eq=False)
class Cover:
    """Named subsets of a space whose union is the whole space."""

    space: FinSpace
    sets: Mapping[str, frozenset[int]]

    def __post_init__(self) -> None:
        sets = {str(name): self.space.members(members) for name, members in self.sets.items()}
        covered = frozenset().union(*sets.values()) if sets else frozenset()
        if covered != self.space.points:
            missing = sorted(self.space.points - covered)
            raise NotACoverError(f"sets do not cover the space; missing points {missing}")
        object.__setattr__(self, "sets", sets)


def is_interior_cover(cover: Cover) -> CheckResult:
    """Every point must have some cover set containing its smallest neighbourhood.

    On failure the witness is the first point without such a set.
    """
    X = cover.space
    for x in range(X.n):
        nbhd = X.smallest_neighborhood(x)
        if not any(nbhd <= s for s in cover.sets.values()):
            return CheckResult(False, f"no cover set is a neighbourhood of point {X.labels[x]}", witness=x)
    return CheckResult(True, "interior cover")


def one_step_homotopic(f: CMap, g: CMap) -> bool:
    """True iff ``H`` on ``dom × J_1`` gluing ``f`` and ``g`` is continuous.

    In the product the closure of ``(x, t)`` is ``c(x) × {0, 1}``, so the
    condition is ``f(c(x)) ∪ g(c(x)) ⊆ c(f(x)) ∩ c(g(x))`` for every ``x``.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise MismatchError("homotopic maps must share domain and codomain")
    cod = f.cod.closures
    for x, cx in enumerate(f.dom.closures):
        allowed = cod[f(x)] & cod[g(x)]
        for y in cx:
            if f(y) not in allowed or g(y) not in allowed:
                return False
    return True


@dataclass(frozen=True, eq=False)
class RetractionChain:
    """Successive self-maps of ``space`` that squeeze it onto ``target``.

    Step ``i`` is only examined on the image of the previous steps (the whole
    space for step 0); its values elsewhere are ignored.
    """

    space: FinSpace
    target: frozenset[int]
    steps: Sequence[CMap] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "target", self.space.members(self.target))
        object.__setattr__(self, "steps", tuple(self.steps))
        for i, s in enumerate(self.steps):
            if s.dom != self.space or s.cod != self.space:
                raise MismatchError(f"step {i} is not a self-map of the chain's space")


def _restrict(step: CMap, current: frozenset[int]) -> CMap | None:
    inc = subspace_inclusion(step.dom, current)
    index = {a: i for i, a in enumerate(inc.image)}
    values = [step(a) for a in inc.image]
    if any(v not in index for v in values):
        return None
    return CMap(inc.dom, inc.dom, tuple(index[v] for v in values))


def verify_retraction_chain(rc: RetractionChain, check_homology: bool = True) -> CheckResult:
    """Certify that ``rc.space`` deformation retracts onto ``rc.target``.

    Each step, restricted to the current image, must be continuous, fix the
    target point-wise and be one-step homotopic to the identity; the final
    image must equal the target. The witness of a failure is the step index.

    With ``check_homology`` (symmetric spaces only) a successful certificate is
    cross-checked against flag homology, and a disagreement raises
    :class:`HomotopyInvarianceError`.
    """
    X, target = rc.space, rc.target
    current = X.points
    for i, step in enumerate(rc.steps):
        moved = [t for t in target if step(t) != t]
        if moved:
            return CheckResult(False, f"step {i} moves target point {X.labels[moved[0]]}", witness=i)
        r = _restrict(step, current)
        if r is None:
            return CheckResult(False, f"step {i} leaves the current image", witness=i)
        if not r.is_continuous():
            return CheckResult(False, f"step {i} is not continuous", witness=i)
        if not one_step_homotopic(CMap.identity(r.dom), r):
            return CheckResult(False, f"step {i} is not one-step homotopic to the identity", witness=i)
        current = frozenset(step(a) for a in current)
    if current != target:
        return CheckResult(False, f"final image {sorted(current)} is not the target {sorted(target)}",
                           witness=len(rc.steps))
    if check_homology and X.is_symmetric():
        _check_invariance(X, target)
    return CheckResult(True, "deformation retraction certified")


def _check_invariance(X: FinSpace, target: frozenset[int], max_deg: int = 2) -> None:
    from .constructions import subspace
    from .homology.groups import compare_summaries, homology

    try:
        hx = homology(X, max_deg)
        ha = homology(subspace(X, target), max_deg)
    except UnsupportedDirectedError:
        return
    verdict = compare_summaries(hx, ha)
    if not verdict:
        raise HomotopyInvarianceError(f"certified retraction changes flag homology: {verdict.reason}")


def peel_chain(X: FinSpace, order: Iterable[tuple[int, int]], target: Iterable[int]) -> RetractionChain:
    """Chain whose step ``i`` sends point ``a_i`` to ``b_i`` and fixes the rest."""
    steps = []
    for a, b in order:
        image = list(range(X.n))
        image[X.check_point(a)] = X.check_point(b)
        steps.append(CMap(X, X, tuple(image)))
    return RetractionChain(X, frozenset(target), tuple(steps))


def good_pair_witness(X: FinSpace, A: Iterable[int], B: Iterable[int], rc: RetractionChain) -> CheckResult:
    """Certify that ``(X, A)`` is a good pair with neighbourhood ``B``.

    ``rc`` must be a chain on ``subspace(X, B)`` (points renumbered in
    increasing order) retracting onto the image of ``A``.
    """
    A, B = X.members(A), X.members(B)
    if not A <= B:
        return CheckResult(False, "A is not contained in B")
    interior = X.interior(B)
    if not A <= interior:
        missing = sorted(A - interior)
        return CheckResult(False, f"not a neighborhood: B is not a neighbourhood of {missing}", witness=missing[0])
    inc = subspace_inclusion(X, B)
    if rc.space != inc.dom:
        return CheckResult(False, "retraction chain is not on the subspace B")
    index = {b: i for i, b in enumerate(inc.image)}
    if rc.target != frozenset(index[a] for a in A):
        return CheckResult(False, "retraction chain does not target A")
    verdict = verify_retraction_chain(rc)
    if not verdict:
        return CheckResult(False, f"B does not deformation retract onto A: {verdict.reason}", verdict.witness)
    return CheckResult(True, "good pair")
