"""Concrete finite sets and explicit bijections between them.

Labels are plain unsigned integers.  A LabeledSet is a strictly increasing
tuple of labels standing in for an abstract n-element set; a Bijection
stores its forward images aligned with the sorted domain.  Everything here
is immutable and hashable, so values can be used as dict keys, memoized,
and shared freely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from random import Random
from typing import Iterable, Iterator

from .errors import (
    ContractError,
    DomainMismatch,
    NotMember,
    NotSubset,
    SizeGuard,
    WrongCardinality,
)

Label = int

# Exhaustive bijection listings refuse to run above this many elements.
ENUMERATION_BOUND = 8


@dataclass(frozen=True)
class LabeledSet:
    """A finite set of unsigned integer labels, kept strictly sorted."""

    elements: tuple[Label, ...]

    def __post_init__(self):
        elems = tuple(self.elements)
        object.__setattr__(self, "elements", elems)
        for a in elems:
            if not isinstance(a, int) or isinstance(a, bool) or a < 0:
                raise ContractError(f"labels must be unsigned integers, got {a!r}")
        if any(a >= b for a, b in zip(elems, elems[1:])):
            raise ContractError(f"labels must be strictly increasing, got {elems!r}")
        object.__setattr__(self, "_pos", {a: i for i, a in enumerate(elems)})

    @classmethod
    def of(cls, labels: Iterable[Label]) -> "LabeledSet":
        elems = tuple(sorted(labels))
        if len(set(elems)) != len(elems):
            raise ContractError(f"duplicate labels in {elems!r}")
        return cls(elems)

    @property
    def cardinality(self) -> int:
        return len(self.elements)

    def position(self, label: Label) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise NotMember(f"{label!r} is not in {self.elements!r}") from None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.elements)

    def __contains__(self, label) -> bool:
        return label in self._pos


@lru_cache(maxsize=None)
def fin(n: int) -> LabeledSet:
    """The canonical n-element set {0, ..., n-1}."""
    if n < 0:
        raise ContractError(f"fin needs a natural number, got {n}")
    return LabeledSet(tuple(range(n)))


@dataclass(frozen=True)
class Subset:
    """A subset of a carrier, stored as a sorted member list."""

    carrier: LabeledSet
    members: tuple[Label, ...]

    def __post_init__(self):
        mems = tuple(self.members)
        object.__setattr__(self, "members", mems)
        if any(a >= b for a, b in zip(mems, mems[1:])):
            raise ContractError(f"members must be strictly increasing, got {mems!r}")
        missing = [m for m in mems if m not in self.carrier]
        if missing:
            raise NotSubset(f"{missing!r} not contained in {self.carrier.elements!r}")

    @classmethod
    def of(cls, carrier: LabeledSet, members: Iterable[Label]) -> "Subset":
        mems = tuple(sorted(members))
        if len(set(mems)) != len(mems):
            raise ContractError(f"duplicate members in {mems!r}")
        return cls(carrier, mems)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.members)

    def __contains__(self, label) -> bool:
        return label in self.members


@dataclass(frozen=True)
class Bijection:
    """An explicit bijection between two labeled sets.

    images[i] is the image of domain.elements[i]; construction validates
    that the images enumerate the codomain exactly once, so forward and
    backward tables are mutually inverse by construction.
    """

    domain: LabeledSet
    codomain: LabeledSet
    images: tuple[Label, ...]

    def __post_init__(self):
        imgs = tuple(self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != len(self.domain):
            raise ContractError(
                f"expected {len(self.domain)} images, got {len(imgs)}"
            )
        if tuple(sorted(imgs)) != self.codomain.elements:
            raise ContractError(
                f"images {imgs!r} do not enumerate codomain {self.codomain.elements!r}"
            )
        object.__setattr__(self, "_back", dict(zip(imgs, self.domain.elements)))

    def __call__(self, label: Label) -> Label:
        return self.images[self.domain.position(label)]

    def preimage(self, label: Label) -> Label:
        try:
            return self._back[label]
        except KeyError:
            raise NotMember(f"{label!r} is not in {self.codomain.elements!r}") from None

    def inverse(self) -> "Bijection":
        return Bijection(
            self.codomain,
            self.domain,
            tuple(self._back[y] for y in self.codomain.elements),
        )

    def then(self, other: "Bijection") -> "Bijection":
        """Diagrammatic composite: apply self first, then other."""
        if self.codomain != other.domain:
            raise DomainMismatch(
                f"cannot chain {self.codomain.elements!r} into {other.domain.elements!r}"
            )
        return Bijection(
            self.domain, other.codomain, tuple(other(y) for y in self.images)
        )

    @property
    def is_identity(self) -> bool:
        return self.domain == self.codomain and self.images == self.domain.elements

    def moved(self) -> tuple[Label, ...]:
        """Labels not fixed by an endo-bijection."""
        return tuple(x for x, y in zip(self.domain, self.images) if x != y)


def identity(X: LabeledSet) -> Bijection:
    return Bijection(X, X, X.elements)


def compose_bijection(e: Bijection, f: Bijection) -> Bijection:
    """Apply e, then f.  Requires e.codomain == f.domain."""
    return e.then(f)


def invert_bijection(e: Bijection) -> Bijection:
    return e.inverse()


def enumerate_bijections(
    A: LabeledSet, B: LabeledSet, bound: int = ENUMERATION_BOUND
) -> tuple[Bijection, ...]:
    """All bijections A -> B in lexicographic order of their image tuples.

    Empty when the cardinalities differ; refuses to enumerate above `bound`
    elements since the listing has |A|! entries.
    """
    if len(A) > bound:
        raise SizeGuard(f"refusing to enumerate {len(A)}! bijections (bound {bound})")
    if len(A) != len(B):
        return ()
    return tuple(
        Bijection(A, B, images) for images in itertools.permutations(B.elements)
    )


def k_subsets(X: LabeledSet, k: int) -> tuple[Subset, ...]:
    """All k-element subsets of X in lexicographic member order."""
    if k < 0:
        raise ContractError(f"subset size must be natural, got {k}")
    return tuple(Subset(X, mems) for mems in itertools.combinations(X.elements, k))


def swap_two(T: LabeledSet) -> Bijection:
    """The unique non-identity bijection of a 2-element set with itself."""
    if len(T) != 2:
        raise WrongCardinality(f"swap needs exactly 2 elements, got {len(T)}")
    a, b = T.elements
    return Bijection(T, T, (b, a))


def support(e: Bijection) -> Subset:
    """The subset of labels moved by an endo-bijection."""
    if e.domain != e.codomain:
        raise DomainMismatch("support requires an endo-bijection")
    return Subset(e.domain, e.moved())


def _pair_members(pair) -> tuple[Label, ...]:
    if isinstance(pair, Subset):
        return pair.members
    mems = tuple(sorted(pair))
    if len(set(mems)) != len(mems):
        raise ContractError(f"pair has repeated labels: {mems!r}")
    return mems


def transposition_of_pair(X: LabeledSet, pair) -> Bijection:
    """The endo-bijection of X swapping the two members of `pair`.

    This is the unique endo-bijection whose support is exactly the pair.
    """
    mems = _pair_members(pair)
    if len(mems) != 2:
        raise WrongCardinality(f"transposition needs exactly 2 labels, got {mems!r}")
    a, b = mems
    if a not in X or b not in X:
        raise NotSubset(f"{mems!r} not contained in {X.elements!r}")
    images = tuple(b if x == a else a if x == b else x for x in X.elements)
    return Bijection(X, X, images)


def puncture(X: LabeledSet, x: Label) -> LabeledSet:
    """Remove one point."""
    if x not in X:
        raise NotMember(f"{x!r} is not in {X.elements!r}")
    return LabeledSet(tuple(y for y in X.elements if y != x))


def extend(Y: LabeledSet) -> tuple[LabeledSet, Label]:
    """Add a fresh point: the successor of the max label (0 when empty)."""
    fresh = Y.elements[-1] + 1 if Y.elements else 0
    return LabeledSet(Y.elements + (fresh,)), fresh


@lru_cache(maxsize=None)
def order_bijection(X: LabeledSet) -> Bijection:
    """The order-preserving bijection fin(|X|) -> X; the canonical chart."""
    return Bijection(fin(len(X)), X, X.elements)


def disjoint_union(parts: Iterable[LabeledSet]) -> LabeledSet:
    """Union of pairwise disjoint labeled sets; rejects overlaps."""
    labels: list[Label] = []
    for part in parts:
        labels.extend(part.elements)
    if len(set(labels)) != len(labels):
        raise ContractError("parts are not pairwise disjoint")
    return LabeledSet.of(labels)


def random_labeled_set(
    rng: Random, size: int, low: int = 100, high: int = 1_000_000
) -> LabeledSet:
    """A fresh n-element set with labels far away from {0, ..., n-1}."""
    return LabeledSet(tuple(sorted(rng.sample(range(low, high), size))))


def random_bijection(rng: Random, A: LabeledSet, B: LabeledSet) -> Bijection:
    if len(A) != len(B):
        raise WrongCardinality(
            f"no bijection between sizes {len(A)} and {len(B)}"
        )
    return Bijection(A, B, tuple(rng.sample(B.elements, len(B))))
