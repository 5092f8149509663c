"""Finite categories represented by their zeta matrix, and functors between them.

Only hom-set cardinalities are stored: ``zeta[i][j] = |Hom(a_i, a_j)|``.
Functors are object maps checked against incidence (an arrow ``i -> j``
must land on a nonempty hom-set).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .errors import (
    ArrowNotPreserved,
    CompositionViolation,
    CompositionWarning,
    DomainMismatch,
    DuplicateLabel,
    IndexOutOfRange,
    MissingIdentity,
    ShapeMismatch,
)


@dataclass(frozen=True)
class ObjectId:
    index: int
    label: str


@dataclass(frozen=True)
class FinCategory:
    """A finite category, known through labels and hom-set cardinalities.

    Construct through :func:`validate_category` (or the helpers below) so
    that the invariants are checked.
    """

    labels: Tuple[str, ...]
    zeta: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    def objects(self) -> List[ObjectId]:
        return [ObjectId(i, label) for i, label in enumerate(self.labels)]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def has_arrow(self, i: int, j: int) -> bool:
        return self.zeta[i][j] > 0


def _composition_failures(zeta) -> List[Tuple[int, int, int]]:
    n = len(zeta)
    return [
        (i, j, k)
        for i, j, k in product(range(n), repeat=3)
        if zeta[i][j] > 0 and zeta[j][k] > 0 and zeta[i][k] == 0
    ]


def validate_category(labels: Sequence[str], zeta, strict: bool = True) -> FinCategory:
    """Check the category invariants and return a :class:`FinCategory`.

    Parameters
    ----------
    labels : sequence of str
        Unique object labels.
    zeta : sequence of sequences of int
        Hom-set cardinalities, ``zeta[i][j] = |Hom(a_i, a_j)|``.
    strict : bool
        When False a failure of composition closure only emits a
        :class:`~catent.errors.CompositionWarning`.

    Raises
    ------
    ShapeMismatch, MissingIdentity, CompositionViolation, DuplicateLabel
    """
    labels = tuple(str(x) for x in labels)
    n = len(labels)
    if len(set(labels)) != n:
        raise DuplicateLabel(f"duplicate labels in {list(labels)}")
    rows = list(zeta)
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ShapeMismatch(f"zeta must be {n}x{n} to match the labels")
    clean = []
    for row in rows:
        out = []
        for x in row:
            if isinstance(x, bool) or int(x) != x or x < 0:
                raise ShapeMismatch(f"zeta entries must be nonnegative integers, got {x!r}")
            out.append(int(x))
        clean.append(tuple(out))
    for i in range(n):
        if clean[i][i] < 1:
            raise MissingIdentity(f"object {labels[i]!r} has no identity arrow")
    failures = _composition_failures(clean)
    if failures:
        i, j, k = failures[0]
        msg = (f"arrows {labels[i]}->{labels[j]} and {labels[j]}->{labels[k]} "
               f"exist but Hom({labels[i]}, {labels[k]}) is empty")
        if strict:
            raise CompositionViolation(msg)
        warnings.warn(msg, CompositionWarning, stacklevel=2)
    return FinCategory(labels, tuple(clean))


def _default_labels(n: int, prefix: str = "a") -> List[str]:
    return [f"{prefix}{i}" for i in range(n)]


def discrete(n: int, labels: Optional[Sequence[str]] = None) -> FinCategory:
    """Category with ``n`` objects and only identity arrows."""
    labels = labels or _default_labels(n)
    return validate_category(labels, [[int(i == j) for j in range(n)] for i in range(n)])


def indiscrete(n: int, labels: Optional[Sequence[str]] = None) -> FinCategory:
    """Category with exactly one arrow between any two objects."""
    labels = labels or _default_labels(n)
    return validate_category(labels, [[1] * n for _ in range(n)])


def chain(n: int, labels: Optional[Sequence[str]] = None) -> FinCategory:
    """The total order ``a0 <= a1 <= ... `` viewed as a category."""
    labels = labels or _default_labels(n)
    return validate_category(labels, [[int(i <= j) for j in range(n)] for i in range(n)])


def terminal() -> FinCategory:
    """One object, one arrow."""
    return validate_category(["*"], [[1]])


def from_relation(n: int, pairs, labels: Optional[Sequence[str]] = None) -> FinCategory:
    """Preorder generated by the given arrows (reflexive-transitive closure)."""
    reach = [[i == j for j in range(n)] for i in range(n)]
    for i, j in pairs:
        reach[i][j] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True
    labels = labels or _default_labels(n)
    return validate_category(labels, [[int(x) for x in row] for row in reach])


def opposite(C: FinCategory) -> FinCategory:
    n = C.size
    return FinCategory(C.labels, tuple(tuple(C.zeta[j][i] for j in range(n)) for i in range(n)))


def product_category(A: FinCategory, B: FinCategory) -> FinCategory:
    """Cartesian product; objects in row-major (A-major) order."""
    pairs = [(i, k) for i in range(A.size) for k in range(B.size)]
    labels = tuple(f"({A.labels[i]},{B.labels[k]})" for i, k in pairs)
    zeta = tuple(
        tuple(A.zeta[i][j] * B.zeta[k][l] for j, l in pairs) for i, k in pairs
    )
    return FinCategory(labels, zeta)


def _disjoint_labels(parts: Sequence[FinCategory]) -> Tuple[str, ...]:
    labels = [label for C in parts for label in C.labels]
    if len(set(labels)) == len(labels):
        return tuple(labels)
    return tuple(f"{label}@{n}" for n, C in enumerate(parts) for label in C.labels)


def coproduct_of(parts: Sequence[FinCategory]) -> FinCategory:
    """Disjoint union of several categories, in the given order."""
    total = sum(C.size for C in parts)
    zeta = [[0] * total for _ in range(total)]
    offset = 0
    for C in parts:
        for i in range(C.size):
            for j in range(C.size):
                zeta[offset + i][offset + j] = C.zeta[i][j]
        offset += C.size
    return FinCategory(_disjoint_labels(parts), tuple(tuple(row) for row in zeta))


def coproduct_category(A: FinCategory, B: FinCategory) -> FinCategory:
    """Disjoint union; objects of ``A`` first.  Labels are suffixed if they clash."""
    return coproduct_of([A, B])


@dataclass(frozen=True)
class Functor:
    domain: FinCategory
    codomain: FinCategory
    object_map: Tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.object_map[i]


def validate_functor(domain: FinCategory, codomain: FinCategory, object_map) -> Functor:
    """Check an object map for range and incidence and wrap it as a :class:`Functor`."""
    object_map = tuple(int(x) for x in object_map)
    if len(object_map) != domain.size:
        raise ShapeMismatch(f"object map has length {len(object_map)}, domain has {domain.size} objects")
    for i, b in enumerate(object_map):
        if not 0 <= b < codomain.size:
            raise IndexOutOfRange(f"object {domain.labels[i]!r} mapped to {b}, outside 0..{codomain.size - 1}")
    for i in range(domain.size):
        for j in range(domain.size):
            if domain.zeta[i][j] > 0 and codomain.zeta[object_map[i]][object_map[j]] == 0:
                raise ArrowNotPreserved(
                    f"arrow {domain.labels[i]}->{domain.labels[j]} has no image: "
                    f"Hom({codomain.labels[object_map[i]]}, {codomain.labels[object_map[j]]}) is empty"
                )
    return Functor(domain, codomain, object_map)


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, tuple(range(C.size)))


def collapse_functor(C: FinCategory, target: Optional[FinCategory] = None) -> Functor:
    """Send every object to the single object of ``target`` (default: terminal)."""
    target = target or terminal()
    return validate_functor(C, target, [0] * C.size)


def compose_functors(F: Functor, G: Functor) -> Functor:
    """Return ``G o F`` (apply ``F`` first)."""
    if F.codomain != G.domain:
        raise DomainMismatch("codomain of the first functor differs from domain of the second")
    return Functor(F.domain, G.codomain, tuple(G.object_map[b] for b in F.object_map))


def preimage(F: Functor, b: int) -> FrozenSet[int]:
    if not 0 <= b < F.codomain.size:
        raise IndexOutOfRange(f"{b} is not an object of the codomain")
    return frozenset(i for i, x in enumerate(F.object_map) if x == b)


def fibers(F: Functor) -> List[List[int]]:
    """All preimages, indexed by codomain object."""
    out: List[List[int]] = [[] for _ in range(F.codomain.size)]
    for i, b in enumerate(F.object_map):
        out[b].append(i)
    return out
