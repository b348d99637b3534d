"""Exhaustive solver for stratified extension problems.

The solver underlies everything in this package that "fills a horn": it
takes an inclusion A -> B, a partial map A -> X, and searches for stratified
extensions B -> X.  Unknowns are the nondegenerate simplices of B outside A;
they are processed dimension by dimension in (dim, index) order, depth
first, with candidates pruned on face compatibility and on thinness
preservation.  Degenerate simplices never enter the search: their images are
forced by the assignments below them.  The result list is therefore
deterministic, ordered lexicographically by assignment.

Verification of the weak complicial lifting conditions is bounded by the
cap: a truncated complex can never certify conditions above it, so the
report records the bound actually covered and all downstream claims are
relative to it.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .core import SimplexId, build_map, make_simplicial_map
from .errors import (
    BoundaryMismatch,
    BoundExceedsCap,
    CapTooSmall,
    InvalidInput,
    NotWellDefined,
)
from .standard import complicial_horn, complicial_thin_key, in_horn_key, monotone_maps
from .strat import StratifiedMap, StratifiedSSet, make_stratified_map


@dataclass(frozen=True)
class ExtensionProblem:
    """An inclusion A -> B together with a partial map A -> X."""

    inclusion: StratifiedMap
    partial: StratifiedMap

    def __post_init__(self):
        if self.inclusion.source != self.partial.source:
            raise InvalidInput("inclusion and partial map must share a source")


def _pinned_values(problem: ExtensionProblem) -> dict[SimplexId, SimplexId]:
    inc, par = problem.inclusion, problem.partial
    a = inc.source
    pinned: dict[SimplexId, SimplexId] = {}
    for n in range(min(inc.map.depth, par.map.depth) + 1):
        for s in a.simplices(n):
            b = inc(s)
            v = par(s)
            if pinned.setdefault(b, v) != v:
                raise InvalidInput(
                    f"inclusion is not injective at {b!r} (conflicting pins)"
                )
    return pinned


def find_extensions(
    problem: ExtensionProblem, limit: int | None = None
) -> list[StratifiedMap]:
    """All stratified extensions B -> X of the problem, up to ``limit``.

    Returns the empty list when no extension exists.  Every returned map is
    rebuilt from its full assignment and re-validated, so the output is
    sound by construction.
    """
    if limit is not None and limit < 1:
        raise InvalidInput("limit must be at least 1")
    b = problem.inclusion.target
    x = problem.partial.target
    bu, xu = b.underlying, x.underlying
    if x.cap < b.cap:
        raise CapTooSmall(f"target cap {x.cap} below problem cap {b.cap}")
    pinned = _pinned_values(problem)
    unknowns = [
        s
        for n in range(b.cap + 1)
        for s in bu.nondegenerate(n)
        if s not in pinned
    ]

    face_index: dict[int, dict[tuple[int, ...], list[int]]] = {}

    def candidates_by_faces(m: int, row: tuple[int, ...]) -> list[int]:
        if m not in face_index:
            table: dict[tuple[int, ...], list[int]] = {}
            for i, r in enumerate(xu.faces[m]):
                table.setdefault(r, []).append(i)
            face_index[m] = table
        return face_index[m].get(row, [])

    assigned: dict[SimplexId, SimplexId] = {}

    def value(s: SimplexId) -> SimplexId:
        got = pinned.get(s)
        if got is not None:
            return got
        got = assigned.get(s)
        if got is not None:
            return got
        base, i = bu.degeneracy_witness(s)
        return xu.degeneracy(value(base), i)

    solutions: list[StratifiedMap] = []

    def emit() -> None:
        rows = tuple(
            tuple(value(s).index for s in bu.simplices(n))
            for n in range(b.cap + 1)
        )
        solutions.append(
            make_stratified_map(b, x, make_simplicial_map(bu, xu, rows))
        )

    def search(pos: int) -> bool:
        if pos == len(unknowns):
            emit()
            return limit is not None and len(solutions) >= limit
        u = unknowns[pos]
        m = u.dim
        need_thin = b.is_thin(u)
        if m == 0:
            pool: Sequence[int] = range(xu.counts[0])
        else:
            row = tuple(value(bu.face(u, i)).index for i in range(m + 1))
            pool = candidates_by_faces(m, row)
        for w in pool:
            cand = xu.ids[m][w]
            if need_thin and cand not in x.thin:
                continue
            assigned[u] = cand
            stop = search(pos + 1)
            del assigned[u]
            if stop:
                return True
        return False

    search(0)
    return solutions


def assemble_horn_map(
    horn: StratifiedSSet,
    face_assignments: Mapping[int, SimplexId],
    x: StratifiedSSet,
) -> StratifiedMap:
    """The stratified map from a horn determined by its generating faces.

    ``face_assignments`` maps each face index j (j != k) of the horn of the
    n-simplex to an (n-1)-simplex of X.  Every simplex of the horn is an
    iterated face of some generating face, so the assignment determines the
    map; boundary compatibility and thinness preservation are verified.
    """
    js = sorted(face_assignments)
    n = len(js)
    missing = [j for j in range(n + 1) if j not in face_assignments]
    if len(missing) != 1:
        raise InvalidInput(
            f"assignments {js} are not the faces of a horn of the {n}-simplex"
        )
    hu = horn.underlying
    xu = x.underlying
    for j, img in face_assignments.items():
        if img.dim != n - 1:
            raise InvalidInput(f"face {j} image {img!r} must have dim {n - 1}")
    generators: dict[SimplexId, SimplexId] = {}
    for m in range(min(hu.dim_cap, n - 1) + 1):
        for s in hu.nondegenerate(m):
            key = hu.keys[m][s.index]
            j = min(j for j in js if j not in key)
            ambient_face = tuple(v for v in range(n + 1) if v != j)
            positions = tuple(ambient_face.index(v) for v in key)
            generators[s] = xu.apply_monotone(face_assignments[j], positions)
    try:
        simplicial = build_map(hu, xu, generators)
    except NotWellDefined as exc:
        raise BoundaryMismatch(str(exc)) from exc
    return make_stratified_map(horn, x, simplicial)


def horn_instances(
    k: int, n: int, x: StratifiedSSet
) -> Iterator[dict[int, SimplexId]]:
    """All stratified maps from the k-complicial horn of the n-simplex to X.

    Maps are enumerated through their generating-face assignments, in
    lexicographic order of assigned indices, pruning on pairwise boundary
    compatibility and on the horn's thin faces.  Lower-dimensional thinness
    constraints are verified before an assignment is yielded.
    """
    if n < 1:
        raise InvalidInput("horns need n >= 1")
    horn, _ = complicial_horn(k, n, n)
    hu = horn.underlying
    xu = x.underlying
    js = [j for j in range(n + 1) if j != k]
    thin_face = {
        j: complicial_thin_key(k, n, tuple(v for v in range(n + 1) if v != j))
        for j in js
    }
    lower_thin: list[tuple[tuple[int, ...], int]] = []
    for m in range(n - 1):
        for s in hu.nondegenerate(m):
            key = hu.keys[m][s.index]
            if complicial_thin_key(k, n, key):
                lower_thin.append((key, min(j for j in js if j not in key)))

    def deeper(chosen: dict[int, SimplexId], pos: int
               ) -> Iterator[dict[int, SimplexId]]:
        if pos == len(js):
            for key, j in lower_thin:
                ambient_face = tuple(v for v in range(n + 1) if v != j)
                positions = tuple(ambient_face.index(v) for v in key)
                if xu.apply_monotone(chosen[j], positions) not in x.thin:
                    return
            yield dict(chosen)
            return
        j = js[pos]
        for cand in xu.simplices(n - 1):
            if thin_face[j] and cand not in x.thin:
                continue
            if n >= 2 and any(
                xu.face(cand, i) != xu.face(chosen[i], j - 1)
                for i in js[:pos]
            ):
                continue
            chosen[j] = cand
            yield from deeper(chosen, pos + 1)
            del chosen[j]

    yield from deeper({}, 0)


@dataclass(frozen=True)
class FailedInstance:
    """Witness of one unfillable instance."""

    family: int
    k: int
    n: int
    detail: dict

    def describe(self) -> str:
        return f"family {self.family} (k, n) = ({self.k}, {self.n}): {self.detail}"


@dataclass(frozen=True)
class VerificationRow:
    family: int
    k: int
    n: int
    instances: int
    failures: tuple[FailedInstance, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the bounded weak-complicial verification."""

    checked_dims: int
    rows: tuple[VerificationRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.ok for row in self.rows)

    def failures(self) -> list[FailedInstance]:
        return [f for row in self.rows for f in row.failures]


def _check_family1(k: int, n: int, x: StratifiedSSet) -> VerificationRow:
    horn, inclusion = complicial_horn(k, n, n)
    instances = 0
    failures: list[FailedInstance] = []
    for assignment in horn_instances(k, n, x):
        instances += 1
        partial = assemble_horn_map(horn, assignment, x)
        problem = ExtensionProblem(inclusion, partial)
        if not find_extensions(problem, limit=1):
            failures.append(FailedInstance(
                1, k, n,
                {"faces": {j: assignment[j] for j in sorted(assignment)}},
            ))
    return VerificationRow(1, k, n, instances, tuple(failures))


def _delta_prime_thin_keys(k: int, n: int) -> list[tuple[int, ...]]:
    out = []
    for m in range(n + 1):
        for t in monotone_maps(m, n):
            if any(t[i] == t[i + 1] for i in range(len(t) - 1)):
                continue
            if complicial_thin_key(k, n, t) or \
                    (len(t) == n and in_horn_key(k, n, t)):
                out.append(t)
    return out


def _check_family2(k: int, n: int, x: StratifiedSSet) -> VerificationRow:
    """Thinness-extension check: the inclusion is the identity underneath.

    A map from the primed complex is an n-simplex of X whose images of the
    primed thin simplices are all thin; lifting along the identity-on-
    underlying inclusion asks exactly that the k-th face also lands thin.
    """
    xu = x.underlying
    thin_keys = _delta_prime_thin_keys(k, n)
    kth = tuple(v for v in range(n + 1) if v != k)
    instances = 0
    failures: list[FailedInstance] = []
    for theta in xu.simplices(n):
        if not all(xu.apply_monotone(theta, t) in x.thin for t in thin_keys):
            continue
        instances += 1
        if xu.apply_monotone(theta, kth) not in x.thin:
            failures.append(FailedInstance(
                2, k, n, {"simplex": theta, "missing_thin_face": k}
            ))
    return VerificationRow(2, k, n, instances, tuple(failures))


def verify_weak_complicial(
    x: StratifiedSSet,
    bound: int,
    *,
    threads: int | None = None,
) -> VerificationReport:
    """Check both anodyne families on every instance up to ``bound``.

    Family 1 covers the horn inclusions for 1 <= n <= bound and k in [n];
    family 2 the thinness extensions for 2 <= n <= bound and k in [n].  The
    report is order-normalized by (family, n, k), so parallel and serial
    runs produce identical results.
    """
    if bound > x.cap:
        raise BoundExceedsCap(f"bound {bound} exceeds cap {x.cap}")
    if bound < 0:
        raise InvalidInput("bound must be a natural number")
    work = [(1, n, k) for n in range(1, bound + 1) for k in range(n + 1)]
    work += [(2, n, k) for n in range(2, bound + 1) for k in range(n + 1)]

    def run(item: tuple[int, int, int]) -> VerificationRow:
        family, n, k = item
        if family == 1:
            return _check_family1(k, n, x)
        return _check_family2(k, n, x)

    if threads is not None and threads > 1 and len(work) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(run, work))
    else:
        rows = [run(item) for item in work]
    ordered = tuple(sorted(rows, key=lambda r: (r.family, r.n, r.k)))
    return VerificationReport(bound, ordered)
