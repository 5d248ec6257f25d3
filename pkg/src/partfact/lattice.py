"""The complete lattice of coding partitions of a finite code.

Every coding partition coarsens the finest one, and every coarsening of
the finest one is coding, so the lattice is the ordinary partition
lattice over the classes of the finest coding partition. Meets are
common coarsenings (overlap components); joins are common refinements
computed on that quotient.
"""

from __future__ import annotations

from .errors import PreconditionError
from .finite_code import FiniteCode, Partition, _UnionFind, characteristic_partition, is_coding

MAX_ENUMERABLE_CLASSES = 8  # Bell(9) = 21147 partitions is past useful


def _require_comparable(p1: Partition, p2: Partition) -> None:
    if p1.code != p2.code:
        raise PreconditionError("partitions of different codes are not comparable")


def _require_coding(p: Partition) -> None:
    if not is_coding(p.code, p):
        raise PreconditionError("operand is not a coding partition")


def leq(p1: Partition, p2: Partition) -> bool:
    """True iff p2 refines p1, i.e. every class of p2 lies inside a class
    of p1 (the order in which the trivial partition is least)."""
    _require_comparable(p1, p2)
    owner = {}
    for i, c in enumerate(p1.classes):
        for w in c:
            owner[w] = i
    return all(len({owner[w] for w in c}) == 1 for c in p2.classes)


def coding_meet(p1: Partition, p2: Partition) -> Partition:
    """Greatest lower bound: the finest common coarsening, i.e. connected
    components of the class-overlap graph."""
    _require_comparable(p1, p2)
    _require_coding(p1)
    _require_coding(p2)
    uf = _UnionFind(p1.code.words)
    for p in (p1, p2):
        for c in p.classes:
            members = iter(c)
            first = next(members)
            for w in members:
                uf.unite(first, w)
    classes = sorted((frozenset(g) for g in uf.groups()), key=lambda c: min(c).sort_key())
    return Partition(p1.code, classes)


def coding_join(p1: Partition, p2: Partition) -> Partition:
    """Least upper bound among coding partitions: the common refinement
    of the partitions induced on the classes of the finest coding
    partition."""
    _require_comparable(p1, p2)
    _require_coding(p1)
    _require_coding(p2)
    atoms = characteristic_partition(p1.code).classes

    def owner_map(p: Partition):
        owner = {}
        for i, c in enumerate(p.classes):
            for w in c:
                owner[w] = i
        return owner

    o1, o2 = owner_map(p1), owner_map(p2)
    groups = {}
    for atom in atoms:
        probe = next(iter(atom))  # atoms never straddle coding classes
        key = (o1[probe], o2[probe])
        groups.setdefault(key, set()).update(atom)
    classes = sorted((frozenset(g) for g in groups.values()), key=lambda c: min(c).sort_key())
    return Partition(p1.code, classes)


def _set_partitions(items: list):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in _set_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1:]
        yield [[first]] + smaller


def all_coding_partitions(x: FiniteCode) -> list[Partition]:
    """Every coding partition of x: all coarsenings of the finest one.

    Refuses codes whose finest coding partition has more than
    ``MAX_ENUMERABLE_CLASSES`` classes (Bell-number blowup).
    """
    atoms = list(characteristic_partition(x).classes)
    if len(atoms) > MAX_ENUMERABLE_CLASSES:
        raise PreconditionError(
            f"too many classes to enumerate ({len(atoms)} > {MAX_ENUMERABLE_CLASSES})"
        )
    out = []
    for grouping in _set_partitions(atoms):
        classes = [frozenset().union(*group) for group in grouping]
        classes.sort(key=lambda c: min(c).sort_key())
        out.append(Partition(x, classes))
    out.sort(key=lambda p: (len(p.classes), [[w.sort_key() for w in c] for c in p.normalized_classes()]))
    return out
