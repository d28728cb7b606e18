"""Parameter sweeps that check the closed-form homology results for (Z_n, c_m).

Each theorem id expands to a list of independent tasks; a task returns one or
more :class:`Cell` rows comparing an expected value with a computed one.
Tasks are evaluated in any order (optionally in worker processes) and the
report keeps the planned order.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .constructions import cycle_space, partition_with, quotient, subspace, suspension_d, wedge
from .core import find_homeomorphism
from .covers import Cover, good_pair_witness, is_interior_cover, peel_chain
from .homology.complex import flag_complex
from .homology.groups import GroupSummary, homology, homology_of_complex, pi1_abelianized, relative_homology
from .homology.sequences import les_pair_exactness, mv_rank_exactness

__all__ = [
    "CSV_COLUMNS",
    "Cell",
    "THEOREMS",
    "VerifyReport",
    "expected_h1",
    "parse_range",
    "recognize_cycle_space",
    "run_theorem",
]

CSV_COLUMNS = ["n", "m", "degree", "expected_rank", "computed_rank", "expected_torsion", "computed_torsion", "verdict"]


@dataclass(frozen=True)
class Cell:
    n: str
    m: str
    degree: str
    expected_rank: str
    computed_rank: str
    expected_torsion: str = ""
    computed_torsion: str = ""
    verdict: str = "pass"
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def _torsion(g: GroupSummary | None) -> str:
    if g is None:
        return "n/c"
    return " ".join(map(str, g.torsion))


def _group_cell(n, m, degree, expected: GroupSummary | None, computed: GroupSummary | None, note: str = "") -> Cell:
    ok = expected is not None and computed is not None and expected == computed
    return Cell(
        str(n), str(m), str(degree),
        str(expected.rank) if expected is not None else "n/c",
        str(computed.rank) if computed is not None else "n/c",
        _torsion(expected), _torsion(computed),
        "pass" if ok else "fail", note,
    )


def _bool_cell(n, m, degree, expected: str, computed: str, ok: bool, note: str = "") -> Cell:
    return Cell(str(n), str(m), str(degree), expected, computed, "", "", "pass" if ok else "fail", note)


@dataclass
class VerifyReport:
    theorem: str
    cells: list[Cell] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.cells) and all(c.passed for c in self.cells)

    def failures(self) -> list[Cell]:
        return [c for c in self.cells if not c.passed]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for c in self.cells:
            w.writerow([getattr(c, col) for col in CSV_COLUMNS])
        return buf.getvalue()

    def to_markdown(self) -> str:
        cols = CSV_COLUMNS + ["note"]
        lines = [f"### {self.theorem}", "", "| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
        for c in self.cells:
            lines.append("| " + " | ".join(str(getattr(c, col)) for col in cols) + " |")
        passed = sum(c.passed for c in self.cells)
        lines += ["", f"{passed}/{len(self.cells)} cells pass"]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"theorem": self.theorem, "ok": self.ok, "cells": [asdict(c) for c in self.cells]}, indent=2) + "\n"


def parse_range(text: str) -> range:
    """Parse ``a..b`` (inclusive) or a single integer; empty ranges are errors."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(p) for p in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise ValueError(f"bad range {text!r}; expected a..b") from None
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return range(lo, hi + 1)


# -- closed forms --------------------------------------------------------------

def circle_like(n: int, m: int) -> bool:
    return 3 <= 3 * m < n


def contractible_like(n: int, m: int) -> bool:
    return n // 2 <= m or (n == 3 and m >= 1)


def expected_h1(n: int, m: int) -> GroupSummary | None:
    """First homology of ``(Z_n, c_m)`` where a closed form is known, else ``None``."""
    if circle_like(n, m):
        return GroupSummary(1)
    if contractible_like(n, m):
        return GroupSummary(0)
    return None


def known_degrees(n: int, m: int, max_deg: int) -> set[int]:
    """Degrees of ``(Z_n, c_m)`` whose homology has an established closed form."""
    known = {0}
    if m == 0 or contractible_like(n, m):
        return set(range(max_deg + 1))
    if expected_h1(n, m) is not None:
        known.add(1)
    if n >= 4 * m:
        known |= set(range(2, max_deg + 1))
    return known


def recognize_cycle_space(X) -> tuple[int, int] | None:
    """``(n, m)`` if ``X`` equals ``cycle_space(n, m)`` point for point."""
    n = X.n
    if n == 0:
        return None
    size = len(X.closures[0])
    m = n // 2 if size == n else (size - 1) // 2
    return (n, m) if X == cycle_space(n, m) else None


# -- tasks ---------------------------------------------------------------------

def _task_h1(n: int, m: int) -> list[Cell]:
    X = cycle_space(n, m)
    h = homology(X, 1)
    return [_group_cell(n, m, 1, expected_h1(n, m), h[1])]


def _task_vanish(n: int, m: int, max_deg: int) -> list[Cell]:
    h = homology(cycle_space(n, m), max_deg)
    return [_group_cell(n, m, k, GroupSummary(0), h[k]) for k in range(2, max_deg + 1)]


def _task_collapse(n: int, max_deg: int) -> list[Cell]:
    ref = homology(cycle_space(4, 1), max_deg)
    h = homology(cycle_space(n, 1), max_deg)
    return [_group_cell(n, 1, k, ref[k], h[k], "vs (Z4,c1)") for k in range(max_deg + 1)]


def _quotient_blocks(kind: str, m: int) -> list[list[int]]:
    if kind == "3m-l":
        return [[0, 1], [m + 1, m + 2], [2 * m + 1, 2 * m + 2], [3 * m + 2, 3 * m + 3]]
    return [[0, 1], [m, m + 1], [2 * m, 2 * m + 1], [3 * m, 3 * m + 1]]


def _task_quotient(kind: str, small_n: int, m: int, max_deg: int) -> list[Cell]:
    big = cycle_space(small_n + 4, m + 1)
    small = cycle_space(small_n, m)
    hb, hs = homology(big, max_deg), homology(small, max_deg)
    note = f"vs (Z{small_n + 4},c{m + 1})"
    cells = [_group_cell(small_n, m, k, hb[k], hs[k], note) for k in range(max_deg + 1)]
    Q, _ = quotient(big, partition_with(big, _quotient_blocks(kind, m)))
    homeo = find_homeomorphism(Q, small) is not None
    cells.append(_bool_cell(small_n, m, "quotient", "homeomorphic", "homeomorphic" if homeo else "not homeomorphic",
                            homeo, f"(Z{small_n + 4},c{m + 1}) with four doubletons collapsed"))
    return cells


def _task_wedge(n1: int, m1: int, n2: int, m2: int) -> list[Cell]:
    X = wedge(cycle_space(n1, m1), 0, cycle_space(n2, m2), 0)
    e1, e2 = expected_h1(n1, m1), expected_h1(n2, m2)
    expected = GroupSummary(e1.rank + e2.rank) if e1 is not None and e2 is not None else None
    return [_group_cell(f"{n1}&{n2}", f"{m1}&{m2}", 1, expected, homology(X, 1)[1], "wedge at 0")]


def _task_hurewicz(label_n: str, label_m: str, recipe: tuple) -> list[Cell]:
    X = _space_from_recipe(recipe)
    K = flag_complex(X, 2)
    h1 = homology_of_complex(K, 1)[1]
    comps = pi1_abelianized(K)
    if len(comps) != 1:
        return [_bool_cell(label_n, label_m, 1, "connected", f"{len(comps)} components", False)]
    return [_group_cell(label_n, label_m, 1, h1, comps[0], "H1 vs abelianized edge-path group")]


def _space_from_recipe(recipe: tuple):
    if recipe[0] == "z":
        return cycle_space(recipe[1], recipe[2])
    _, n1, m1, n2, m2 = recipe
    return wedge(cycle_space(n1, m1), 0, cycle_space(n2, m2), 0)


def six_m_cover(n: int, m: int, variant: str = "printed") -> tuple[frozenset[int], frozenset[int]]:
    """The two arcs covering ``(Z_n, c_m)``, ``n = 6m + l``.

    ``"printed"`` takes ``A = {0..5m+l}``; ``"separated"`` drops its last point
    so that ``A ∩ B`` falls apart into two arcs.
    """
    l = n - 6 * m
    top = 5 * m + l if variant == "printed" else 5 * m + l - 1
    A = frozenset(range(0, top + 1))
    B = frozenset(range(3 * m, n)) | frozenset(range(0, 2 * m))
    return A, B


def _task_mv(n: int, m: int, max_deg: int) -> list[Cell]:
    X = cycle_space(n, m)
    cells = []
    for variant in ("printed", "separated"):
        A, B = six_m_cover(n, m, variant)
        report = mv_rank_exactness(X, A, B, max_deg)
        bad = ", ".join(node.label for node in report.failures())
        cells.append(_bool_cell(n, m, f"0..{max_deg}", "exact", "exact" if report.ok else f"inexact at {bad}",
                                report.ok, f"{variant} cover; betti {report.betti}"))
    A, B = six_m_cover(n, m, "separated")
    parts = len(subspace(X, A & B).path_components())
    cells.append(_bool_cell(n, m, 0, "2 components", f"{parts} components", parts == 2, "A&B of separated cover"))
    return cells


def _task_les(n: int, max_deg: int) -> list[Cell]:
    X = cycle_space(n, 1)
    A = frozenset(range(1, n - 2))
    report = les_pair_exactness(X, A, max_deg)
    cells = [_bool_cell(n, 1, f"0..{max_deg}", "exact", "exact" if report.ok else "inexact", report.ok, "pair LES")]
    B = frozenset(range(0, n - 1))
    rc = peel_chain(subspace(X, B), [(n - 2, n - 3), (0, 1)], range(1, n - 2))
    good = good_pair_witness(X, A, B, rc)
    cells.append(_bool_cell(n, 1, "-", "good pair", "good pair" if good else good.reason, bool(good)))
    Q, _ = quotient(X, partition_with(X, [A]))
    rel = relative_homology(X, A, max_deg)
    red = homology(Q, max_deg, reduced=True)
    cells += [_group_cell(n, 1, k, red[k], rel[k], "H(X,A) vs reduced H(X/A)") for k in range(max_deg + 1)]
    return cells


def _task_suspension(n: int, m: int, degrees: Sequence[int]) -> list[Cell]:
    X = cycle_space(n, m)
    top = max(degrees)
    hx = homology(X, top)
    hs = homology(suspension_d(X, 2), top + 1)
    return [_group_cell(n, m, k + 1, hx[k], hs[k + 1], f"H{k + 1}(SX) vs H{k}(X)") for k in degrees]


def _task_cover_example() -> list[Cell]:
    X = cycle_space(4, 1)
    A, B, C, D = {0, 1, 3}, {1, 2, 3}, {2, 3, 0}, {3, 0, 1}
    cells = []
    two = is_interior_cover(Cover(X, {"A": A, "B": B}))
    cells.append(_bool_cell(4, 1, "-", "not interior", _cover_word(two), not two, "{A,B}"))
    four = is_interior_cover(Cover(X, {"A": A, "B": B, "C": C, "D": D}))
    cells.append(_bool_cell(4, 1, "-", "interior", _cover_word(four), bool(four), "{A,B,C,D} with D={3,0,1}"))
    balls = is_interior_cover(Cover(X, {f"c({i})": X.closure({i}) for i in range(4)}))
    cells.append(_bool_cell(4, 1, "-", "interior", _cover_word(balls), bool(balls), "the four closed balls c(i)"))
    ia, ib = X.interior(A), X.interior(B)
    cells.append(_bool_cell(4, 1, "-", "i(A)={0} i(B)={2}", f"i(A)={sorted(ia)} i(B)={sorted(ib)}",
                            ia == {0} and ib == {2}, "interiors"))
    return cells


def _cover_word(verdict) -> str:
    return "interior" if verdict else f"not interior: witness {verdict.witness}"


_TASKS: dict[str, Callable[..., list[Cell]]] = {
    "h1": _task_h1,
    "vanish": _task_vanish,
    "collapse": _task_collapse,
    "quotient": _task_quotient,
    "wedge": _task_wedge,
    "hurewicz": _task_hurewicz,
    "mv": _task_mv,
    "les": _task_les,
    "suspension": _task_suspension,
    "cover": _task_cover_example,
}


def _run_task(task: tuple) -> list[Cell]:
    return _TASKS[task[0]](*task[1:])


# -- plans ---------------------------------------------------------------------

WEDGE_REPRESENTATIVES = [(7, 2, 7, 2), (7, 2, 6, 3), (6, 3, 3, 1)]


def _plan_h1(ns: range | None, ms: range | None, max_deg: int) -> list[tuple]:
    ns = ns or range(3, 25)
    ms = ms or range(1, 8)
    return [("h1", n, m) for n in ns for m in ms if expected_h1(n, m) is not None]


def _plan_vanish(ns, ms, max_deg):
    ns = ns or range(8, 25)
    ms = ms or range(1, 7)
    return [("vanish", n, m, max(max_deg, 2)) for n in ns for m in ms if n >= 4 * m]


def _plan_collapse(ns, ms, max_deg):
    return [("collapse", n, max_deg) for n in (ns or range(4, 21)) if n >= 4]


def _plan_quotient_3ml(ns, ms, max_deg):
    tasks = []
    for m in ms or range(2, 6):
        if m < 2:
            continue
        for l in range(max(0, m - 3) + 1, m):
            if ns is None or 3 * m + l in ns:
                tasks.append(("quotient", "3m-l", 3 * m + l, m, max_deg))
    return tasks


def _plan_quotient_4m4(ns, ms, max_deg):
    return [("quotient", "4m-4", 4 * m - 4, m, max_deg) for m in (ms or range(5, 7)) if m >= 5]


def _plan_wedge(ns, ms, max_deg):
    if ns is None and ms is None:
        return [("wedge", *w) for w in WEDGE_REPRESENTATIVES]
    grid = [(n, m) for n in (ns or range(3, 13)) for m in (ms or range(1, 4)) if expected_h1(n, m) is not None]
    return [("wedge", n1, m1, n2, m2) for i, (n1, m1) in enumerate(grid) for (n2, m2) in grid[i:]]


def _plan_hurewicz(ns, ms, max_deg):
    recipes: dict[tuple, tuple[str, str]] = {}
    for plan in (_plan_h1, _plan_vanish, _plan_collapse, _plan_quotient_3ml, _plan_quotient_4m4):
        for task in plan(ns, ms, max_deg):
            if task[0] == "quotient":
                n, m = task[2], task[3]
                pairs = [(n, m), (n + 4, m + 1)]
            elif task[0] == "collapse":
                pairs = [(task[1], 1), (4, 1)]
            else:
                pairs = [(task[1], task[2])]
            for n, m in pairs:
                recipes.setdefault(("z", n, m), (str(n), str(m)))
    for task in _plan_wedge(ns, ms, max_deg):
        _, n1, m1, n2, m2 = task
        recipes.setdefault(("w", n1, m1, n2, m2), (f"{n1}&{n2}", f"{m1}&{m2}"))
    return [("hurewicz", ln, lm, recipe) for recipe, (ln, lm) in recipes.items()]


def _plan_mv(ns, ms, max_deg):
    if ns is None and ms is None:
        pairs = [(13, 2), (19, 3)]
    else:
        pairs = [(n, m) for n in (ns or range(6, 20)) for m in (ms or range(1, 4)) if m >= 1 and n >= 6 * m]
    return [("mv", n, m, max_deg) for n, m in pairs]


def _plan_les(ns, ms, max_deg):
    return [("les", n, min(max_deg, 2)) for n in (ns or range(7, 13)) if n >= 4]


def _plan_suspension(ns, ms, max_deg):
    ns = ns or range(4, 13)
    ms = ms or range(1, 5)
    return [("suspension", n, m, (1, 2)) for n in ns for m in ms if circle_like(n, m)]


def _plan_cover(ns, ms, max_deg):
    return [("cover",)]


THEOREMS: dict[str, Callable[[range | None, range | None, int], list[tuple]]] = {
    "h1-roots": _plan_h1,
    "h1-wedge": _plan_wedge,
    "vanish-4m": _plan_vanish,
    "collapse-c1": _plan_collapse,
    "quotient-3m-l": _plan_quotient_3ml,
    "quotient-4m-4": _plan_quotient_4m4,
    "suspension-shift": _plan_suspension,
    "hurewicz": _plan_hurewicz,
    "mv-6m": _plan_mv,
    "les-pair": _plan_les,
    "cover-example": _plan_cover,
}


def run_tasks(theorem: str, tasks: Iterable[tuple], jobs: int = 1) -> VerifyReport:
    tasks = list(tasks)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    return VerifyReport(theorem, [cell for cells in results for cell in cells])


def run_theorem(theorem: str, ns: range | None = None, ms: range | None = None,
                max_deg: int = 3, jobs: int = 1) -> VerifyReport:
    """Plan and run the sweep for ``theorem``; unknown ids raise ``KeyError``."""
    if theorem not in THEOREMS:
        raise KeyError(f"unknown theorem id {theorem!r}; choose from {', '.join(THEOREMS)}")
    return run_tasks(theorem, THEOREMS[theorem](ns, ms, max_deg), jobs)
