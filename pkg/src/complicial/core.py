"""Dimension-truncated simplicial sets presented by explicit tables.

A complex stores, for every dimension ``n`` up to a cap ``D``, the full list
of its n-simplices (degenerate ones included) together with face rows
(``n >= 1``) and degeneracy rows (``n < D``).  Construction goes through
:func:`build_sset`, which checks every simplicial identity that is
expressible inside the cap, so downstream code can rely on the tables
unconditionally.  Instances are immutable after validation and safe to share
between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterator, Mapping, Sequence

from .errors import (
    CapExceeded,
    DanglingReference,
    IdentityViolation,
    IndexOutOfRange,
    InvalidInput,
    NotWellDefined,
)


@dataclass(frozen=True, order=True)
class SimplexId:
    """Identifier of one simplex: its dimension and position within it.

    The optional label is display metadata and takes no part in equality,
    ordering or hashing.
    """

    dim: int
    index: int
    label: str | None = field(default=None, compare=False)

    def __repr__(self) -> str:
        if self.label is not None:
            return f"<{self.dim}:{self.index} {self.label}>"
        return f"<{self.dim}:{self.index}>"


Row = tuple[int, ...]
Table = tuple[tuple[Row, ...], ...]


class TruncatedSSet:
    """A simplicial set truncated at ``dim_cap``, presented by index tables.

    ``faces[n][i][j]`` is the index (in dimension ``n-1``) of the j-th face
    of the i-th n-simplex; ``degeneracies[n][i][j]`` the index (in dimension
    ``n+1``) of its j-th degeneracy.  ``faces[0]`` and
    ``degeneracies[dim_cap]`` are empty.  Simplices may carry hashable keys
    (unique per dimension) used by constructors to identify simplices
    structurally; keys are metadata and are ignored by equality.
    """

    __slots__ = (
        "dim_cap",
        "counts",
        "faces",
        "degeneracies",
        "ids",
        "keys",
        "_key_index",
        "_degenerate",
        "_deg_witness",
    )

    def __init__(
        self,
        dim_cap: int,
        counts: tuple[int, ...],
        faces: Table,
        degeneracies: Table,
        ids: tuple[tuple[SimplexId, ...], ...],
        keys: tuple[tuple[Hashable, ...], ...] | None,
    ):
        self.dim_cap = dim_cap
        self.counts = counts
        self.faces = faces
        self.degeneracies = degeneracies
        self.ids = ids
        self.keys = keys
        if keys is None:
            self._key_index = None
        else:
            self._key_index = tuple(
                {k: i for i, k in enumerate(per_dim)} for per_dim in keys
            )
        degenerate: set[SimplexId] = set()
        witness: dict[SimplexId, tuple[SimplexId, int]] = {}
        for n in range(dim_cap):
            for i, row in enumerate(degeneracies[n]):
                for j, target in enumerate(row):
                    t = ids[n + 1][target]
                    degenerate.add(t)
                    if t not in witness:
                        witness[t] = (ids[n][i], j)
        self._degenerate = frozenset(degenerate)
        self._deg_witness = witness

    # -- basic access ------------------------------------------------------

    def simplices(self, n: int) -> tuple[SimplexId, ...]:
        if not 0 <= n <= self.dim_cap:
            raise IndexOutOfRange(f"dimension {n} outside 0..{self.dim_cap}")
        return self.ids[n]

    def all_simplices(self) -> Iterator[SimplexId]:
        for n in range(self.dim_cap + 1):
            yield from self.ids[n]

    def id_at(self, dim: int, index: int) -> SimplexId:
        return self.ids[dim][index]

    def id_for_key(self, dim: int, key: Hashable) -> SimplexId:
        if self._key_index is None:
            raise InvalidInput("complex carries no simplex keys")
        return self.ids[dim][self._key_index[dim][key]]

    def key_of(self, x: SimplexId) -> Hashable:
        if self.keys is None:
            raise InvalidInput("complex carries no simplex keys")
        return self.keys[x.dim][x.index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSSet):
            return NotImplemented
        return (
            self.dim_cap == other.dim_cap
            and self.counts == other.counts
            and self.faces == other.faces
            and self.degeneracies == other.degeneracies
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TruncatedSSet(cap={self.dim_cap}, counts={self.counts})"

    # -- structure maps ----------------------------------------------------

    def face(self, x: SimplexId, i: int) -> SimplexId:
        """The i-th face of ``x`` (table lookup)."""
        if x.dim < 1:
            raise IndexOutOfRange(f"{x!r} is a vertex and has no faces")
        if not 0 <= i <= x.dim:
            raise IndexOutOfRange(f"face index {i} outside 0..{x.dim}")
        return self.ids[x.dim - 1][self.faces[x.dim][x.index][i]]

    def degeneracy(self, x: SimplexId, i: int) -> SimplexId:
        """The i-th degeneracy of ``x``; fails loudly at the cap."""
        if x.dim >= self.dim_cap:
            raise CapExceeded(
                f"degeneracy of {x!r} would exceed the cap {self.dim_cap}"
            )
        if not 0 <= i <= x.dim:
            raise IndexOutOfRange(f"degeneracy index {i} outside 0..{x.dim}")
        return self.ids[x.dim + 1][self.degeneracies[x.dim][x.index][i]]

    def is_degenerate(self, x: SimplexId) -> bool:
        """True iff ``x`` appears in some degeneracy-table row."""
        if x.dim < 1:
            raise InvalidInput("degeneracy is undefined for vertices")
        return x in self._degenerate

    def nondegenerate(self, n: int) -> tuple[SimplexId, ...]:
        if n == 0:
            return self.ids[0]
        return tuple(x for x in self.ids[n] if x not in self._degenerate)

    def degeneracy_witness(self, x: SimplexId) -> tuple[SimplexId, int]:
        """Some ``(y, i)`` with ``s_i y = x``, for degenerate ``x``."""
        try:
            return self._deg_witness[x]
        except KeyError:
            raise InvalidInput(f"{x!r} is not degenerate") from None

    def const(self, x: SimplexId, m: int) -> SimplexId:
        """The constant m-simplex at the vertex ``x`` (iterated s_0)."""
        if x.dim != 0:
            raise InvalidInput(f"{x!r} is not a vertex")
        if m > self.dim_cap:
            raise CapExceeded(f"constant {m}-simplex exceeds cap {self.dim_cap}")
        y = x
        for _ in range(m):
            y = self.degeneracy(y, 0)
        return y

    def apply_monotone(self, y: SimplexId, values: Sequence[int]) -> SimplexId:
        """Image of ``y`` under the operator induced by a monotone map.

        ``values`` lists a weakly increasing map [m] -> [dim y]; the result is
        the m-simplex obtained by the face word for the missed vertices
        followed by the degeneracy word for the repeats.
        """
        p = y.dim
        m = len(values) - 1
        if m < 0 or any(values[i] > values[i + 1] for i in range(m)):
            raise InvalidInput(f"{values!r} is not weakly increasing")
        if values[0] < 0 or values[-1] > p:
            raise InvalidInput(f"{values!r} out of range for [{p}]")
        if m > self.dim_cap:
            raise CapExceeded(f"result dimension {m} exceeds cap {self.dim_cap}")
        image = set(values)
        for j in range(p, -1, -1):
            if j not in image:
                y = self.face(y, j)
        ranks = sorted(image)
        u = [ranks.index(v) for v in values]

        def expand(z: SimplexId, word: list[int]) -> SimplexId:
            # peel one elementary repeat at a time: the word factors through
            # the collapse of positions t, t+1, so apply that s_t last
            for t in range(len(word) - 1):
                if word[t] == word[t + 1]:
                    return self.degeneracy(
                        expand(z, word[:t + 1] + word[t + 2:]), t
                    )
            return z

        return expand(y, u)


def _as_table(raw, what: str) -> Table:
    try:
        return tuple(tuple(tuple(int(e) for e in row) for row in per_dim)
                     for per_dim in raw)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed {what} table: {exc}") from exc


def build_sset(
    dim_cap: int,
    counts: Sequence[int],
    face_table: Sequence[Sequence[Sequence[int]]],
    degeneracy_table: Sequence[Sequence[Sequence[int]]],
    *,
    keys: Sequence[Sequence[Hashable]] | None = None,
    labels: Sequence[Sequence[str | None]] | None = None,
) -> TruncatedSSet:
    """Validate tables and return the presented complex.

    ``face_table`` and ``degeneracy_table`` are indexed by dimension
    (``face_table[0]`` and ``degeneracy_table[dim_cap]`` must be empty).
    All simplicial identities that can be stated inside the cap are checked
    eagerly; the first violation is reported with the identity's name, the
    dimension and the offending simplex.
    """
    if dim_cap < 0:
        raise InvalidInput("dim_cap must be a natural number")
    counts = tuple(int(c) for c in counts)
    if len(counts) != dim_cap + 1 or any(c < 0 for c in counts):
        raise InvalidInput(f"counts must list dimensions 0..{dim_cap}")
    faces = _as_table(face_table, "face")
    degens = _as_table(degeneracy_table, "degeneracy")
    if len(faces) != dim_cap + 1 or len(degens) != dim_cap + 1:
        raise InvalidInput("tables must be indexed by dimension 0..dim_cap")
    if faces[0] != () or degens[dim_cap] != ():
        raise InvalidInput("faces[0] and degeneracies[dim_cap] must be empty")

    for n in range(1, dim_cap + 1):
        if len(faces[n]) != counts[n]:
            raise InvalidInput(f"face table at dim {n} is not index-complete")
        for i, row in enumerate(faces[n]):
            if len(row) != n + 1:
                raise InvalidInput(f"face row {n}:{i} must have {n + 1} entries")
            for e in row:
                if not 0 <= e < counts[n - 1]:
                    raise DanglingReference(
                        f"face entry {n}:{i} -> {n - 1}:{e} does not exist"
                    )
    for n in range(dim_cap):
        if len(degens[n]) != counts[n]:
            raise InvalidInput(f"degeneracy table at dim {n} is not index-complete")
        for i, row in enumerate(degens[n]):
            if len(row) != n + 1:
                raise InvalidInput(
                    f"degeneracy row {n}:{i} must have {n + 1} entries"
                )
            for e in row:
                if not 0 <= e < counts[n + 1]:
                    raise DanglingReference(
                        f"degeneracy entry {n}:{i} -> {n + 1}:{e} does not exist"
                    )

    def fc(n: int, i: int, j: int) -> int:
        return faces[n][i][j]

    def dg(n: int, i: int, j: int) -> int:
        return degens[n][i][j]

    # d_i d_j = d_{j-1} d_i  (i < j)
    for n in range(2, dim_cap + 1):
        for x in range(counts[n]):
            for j in range(1, n + 1):
                for i in range(j):
                    if fc(n - 1, fc(n, x, j), i) != fc(n - 1, fc(n, x, i), j - 1):
                        raise IdentityViolation(
                            f"d_{i} d_{j} != d_{j - 1} d_{i} at dim {n} simplex {x}"
                        )
    # s_i s_j = s_{j+1} s_i  (i <= j)
    for n in range(dim_cap - 1):
        for x in range(counts[n]):
            for j in range(n + 1):
                for i in range(j + 1):
                    if dg(n + 1, dg(n, x, j), i) != dg(n + 1, dg(n, x, i), j + 1):
                        raise IdentityViolation(
                            f"s_{i} s_{j} != s_{j + 1} s_{i} at dim {n} simplex {x}"
                        )
    # mixed identities, stated for x of dimension n with s_j x of dim n+1
    for n in range(dim_cap):
        for x in range(counts[n]):
            for j in range(n + 1):
                sx = dg(n, x, j)
                for i in range(n + 2):
                    got = fc(n + 1, sx, i)
                    if i < j:
                        want = dg(n - 1, fc(n, x, i), j - 1)
                        name = f"d_{i} s_{j} != s_{j - 1} d_{i}"
                    elif i in (j, j + 1):
                        want = x
                        name = f"d_{i} s_{j} != id"
                    else:
                        want = dg(n - 1, fc(n, x, i - 1), j)
                        name = f"d_{i} s_{j} != s_{j} d_{i - 1}"
                    if got != want:
                        raise IdentityViolation(f"{name} at dim {n} simplex {x}")

    if keys is not None:
        keys = tuple(tuple(per_dim) for per_dim in keys)
        if tuple(len(k) for k in keys) != counts:
            raise InvalidInput("keys must cover every simplex")
        for per_dim in keys:
            if len(set(per_dim)) != len(per_dim):
                raise InvalidInput("keys must be unique within a dimension")
    if labels is None and keys is not None:
        labels = tuple(tuple(str(k) for k in per_dim) for per_dim in keys)
    ids = tuple(
        tuple(
            SimplexId(n, i, labels[n][i] if labels is not None else None)
            for i in range(counts[n])
        )
        for n in range(dim_cap + 1)
    )
    return TruncatedSSet(dim_cap, counts, faces, degens, ids, keys)


class SimplicialMap:
    """A simplicial map given per dimension by index assignment.

    ``assign[n][i]`` is the target index of the i-th source n-simplex, for
    every ``n`` up to the smaller of the two caps.  Build instances through
    :func:`make_simplicial_map` or :func:`build_map`, which verify
    commutation with every face and degeneracy in range.
    """

    __slots__ = ("source", "target", "assign")

    def __init__(self, source: TruncatedSSet, target: TruncatedSSet,
                 assign: tuple[Row, ...]):
        self.source = source
        self.target = target
        self.assign = assign

    @property
    def depth(self) -> int:
        return len(self.assign) - 1

    def __call__(self, x: SimplexId) -> SimplexId:
        return self.target.ids[x.dim][self.assign[x.dim][x.index]]

    def then(self, other: "SimplicialMap") -> "SimplicialMap":
        """Composite ``other after self`` (validated inputs stay valid)."""
        if other.source is not self.target and other.source != self.target:
            raise InvalidInput("maps are not composable")
        depth = min(self.depth, other.depth)
        assign = tuple(
            tuple(other.assign[n][e] for e in self.assign[n])
            for n in range(depth + 1)
        )
        return SimplicialMap(self.source, other.target, assign)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.assign == other.assign
            and self.source == other.source
            and self.target == other.target
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SimplicialMap(depth={self.depth})"


def _validate_map(source: TruncatedSSet, target: TruncatedSSet,
                  assign: tuple[Row, ...]) -> None:
    depth = len(assign) - 1
    if depth != min(source.dim_cap, target.dim_cap):
        raise InvalidInput("assignment must cover min of the two caps")
    for n in range(depth + 1):
        if len(assign[n]) != source.counts[n]:
            raise InvalidInput(f"assignment at dim {n} is not index-complete")
        for e in assign[n]:
            if not 0 <= e < target.counts[n]:
                raise DanglingReference(f"assigned target {n}:{e} does not exist")
    for n in range(1, depth + 1):
        for i in range(source.counts[n]):
            img = assign[n][i]
            for j in range(n + 1):
                if target.faces[n][img][j] != assign[n - 1][source.faces[n][i][j]]:
                    raise NotWellDefined(
                        f"face mismatch at dim {n} simplex {i}, d_{j}"
                    )
    for n in range(depth):
        for i in range(source.counts[n]):
            img = assign[n][i]
            for j in range(n + 1):
                if (target.degeneracies[n][img][j]
                        != assign[n + 1][source.degeneracies[n][i][j]]):
                    raise NotWellDefined(
                        f"degeneracy mismatch at dim {n} simplex {i}, s_{j}"
                    )


def make_simplicial_map(source: TruncatedSSet, target: TruncatedSSet,
                        assign: Sequence[Sequence[int]]) -> SimplicialMap:
    """Wrap a full index assignment as a map, after validating it."""
    assign_t = tuple(tuple(int(e) for e in row) for row in assign)
    _validate_map(source, target, assign_t)
    return SimplicialMap(source, target, assign_t)


def build_map(
    source: TruncatedSSet,
    target: TruncatedSSet,
    assignments: Mapping[SimplexId, SimplexId],
) -> SimplicialMap:
    """Extend generator assignments to a validated simplicial map.

    Assignments must be given at least on every nondegenerate simplex of the
    source (up to the shared cap); images of degenerate simplices are
    propagated through the degeneracy tables, and any conflict or remaining
    gap is reported with a witness.
    """
    depth = min(source.dim_cap, target.dim_cap)
    work: list[list[int | None]] = [
        [None] * source.counts[n] for n in range(depth + 1)
    ]
    for x, y in assignments.items():
        if x.dim != y.dim:
            raise InvalidInput(f"{x!r} and {y!r} differ in dimension")
        if x.dim > depth:
            raise InvalidInput(f"{x!r} lies above the shared cap {depth}")
        current = work[x.dim][x.index]
        if current is not None and current != y.index:
            raise NotWellDefined(f"conflicting assignments for {x!r}")
        work[x.dim][x.index] = y.index
    for n in range(depth):
        for i in range(source.counts[n]):
            img = work[n][i]
            if img is None:
                continue
            for j in range(n + 1):
                si = source.degeneracies[n][i][j]
                want = target.degeneracies[n][img][j]
                current = work[n + 1][si]
                if current is not None and current != want:
                    raise NotWellDefined(
                        f"degeneracy propagation conflict at dim {n + 1} "
                        f"simplex {si} (s_{j} of {n}:{i})"
                    )
                work[n + 1][si] = want
    for n in range(depth + 1):
        for i in range(source.counts[n]):
            if work[n][i] is None:
                raise NotWellDefined(
                    f"no assignment reaches dim {n} simplex {i}; generators "
                    "must cover all nondegenerate simplices"
                )
    assign = tuple(tuple(row) for row in work)  # type: ignore[arg-type]
    _validate_map(source, target, assign)
    return SimplicialMap(source, target, assign)


def identity_map(x: TruncatedSSet) -> SimplicialMap:
    return SimplicialMap(
        x, x, tuple(tuple(range(c)) for c in x.counts)
    )
