"""Functorial two-element families over concrete finite sets.

Four constructions each assign to every n-element labeled set a two-element
fiber together with a transport bijection along any relabeling, and a chart
identifying the fiber over fin(n) with {+1, -1}:

* fixed_point_delooping - equivariant functions from charts to {+1, -1};
  exactly two are fixed by the twisted action, determined by a reference
  chart and the value taken there.
* orbit_delooping - pairs (chart, sign) modulo simultaneous precomposition
  and sign twist; exactly two orbits.
* simpson_delooping - charts modulo "even relative parity"; exactly two
  classes of equal size.
* cartier_delooping - orientations of the complete graph modulo parity of
  their disagreement count; the only construction that never consults
  permutation parity, which is what makes the sign-agreement checks here
  meaningful rather than circular.

Fibers are materialized as the concrete set {0, 1}, where label 0 always
names the class of the construction's documented canonical representative
over the given carrier.  Extracting a sign from any family asks whether the
action of a permutation fixes the charted base point of the fiber over
fin(n).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from random import Random
from typing import Callable

from .errors import (
    ArityMismatch,
    ArityTooSmall,
    CarrierMismatch,
    ContractError,
    NaturalityFailure,
    NotADelooping,
    SizeGuard,
    TooSmall,
)
from .finite import (
    Bijection,
    Label,
    LabeledSet,
    enumerate_bijections,
    fin,
    identity,
    k_subsets,
    order_bijection,
    random_bijection,
    random_labeled_set,
    swap_two,
    transposition_of_pair,
)
from .perms import MINUS, PLUS, Sign, sign_inversions, transposition

# The shared two-element fiber; 0 is the class of the canonical representative.
CLASS_LABELS = fin(2)


# --------------------------------------------------------------------------
# Orientations of the complete graph on a labeled set.

@lru_cache(maxsize=None)
def _pairs(X: LabeledSet) -> tuple[tuple[Label, Label], ...]:
    return tuple(itertools.combinations(X.elements, 2))


@lru_cache(maxsize=None)
def _pair_position(X: LabeledSet) -> dict[tuple[Label, Label], int]:
    return {pair: k for k, pair in enumerate(_pairs(X))}


@dataclass(frozen=True)
class Orientation:
    """One chosen element per 2-element subset of the carrier.

    Encoded as a bitmask over the lexicographically sorted pairs: bit k set
    means the larger element of pair k is chosen.
    """

    carrier: LabeledSet
    bits: int

    def __post_init__(self):
        width = len(_pairs(self.carrier))
        if not 0 <= self.bits < (1 << width):
            raise ContractError(
                f"orientation needs {width} bits, got {self.bits!r}"
            )

    def choose(self, a: Label, b: Label) -> Label:
        """The chosen element of the pair {a, b}."""
        lo, hi = (a, b) if a < b else (b, a)
        k = _pair_position(self.carrier).get((lo, hi))
        if k is None:
            raise CarrierMismatch(f"{{{a!r}, {b!r}}} is not a pair of the carrier")
        return hi if (self.bits >> k) & 1 else lo

    def flip(self, position: int) -> "Orientation":
        """Reverse the choice at one pair position."""
        if not 0 <= position < len(_pairs(self.carrier)):
            raise ContractError(f"no pair at position {position}")
        return Orientation(self.carrier, self.bits ^ (1 << position))

    def choices(self) -> tuple[tuple[Label, Label], ...]:
        """(unchosen, chosen) per pair, in pair order."""
        out = []
        for k, (a, b) in enumerate(_pairs(self.carrier)):
            chosen = b if (self.bits >> k) & 1 else a
            out.append((a + b - chosen, chosen))
        return tuple(out)


def canonical_orientation(X: LabeledSet) -> Orientation:
    """The orientation choosing the larger element of every pair."""
    if len(X) < 2:
        raise TooSmall("orientations need a carrier with at least 2 points")
    return Orientation(X, (1 << len(_pairs(X))) - 1)


def all_orientations(X: LabeledSet):
    """Every orientation of X, in increasing bitmask order."""
    for bits in range(1 << len(_pairs(X))):
        yield Orientation(X, bits)


def relative_inversions(u: Orientation, v: Orientation) -> int:
    """Number of pairs on which two orientations disagree."""
    if u.carrier != v.carrier:
        raise CarrierMismatch("orientations live over different carriers")
    return (u.bits ^ v.bits).bit_count()


def orientation_action(e: Bijection, u: Orientation) -> Orientation:
    """Transport an orientation along a bijection of carriers."""
    if u.carrier != e.domain:
        raise CarrierMismatch("orientation does not live over the domain of the map")
    inv = e.inverse()
    bits = 0
    for k, (a, b) in enumerate(_pairs(e.codomain)):
        if e(u.choose(inv(a), inv(b))) == b:
            bits |= 1 << k
    return Orientation(e.codomain, bits)


def orientation_class(u: Orientation) -> Label:
    """Parity class relative to the canonical orientation of the carrier."""
    return relative_inversions(u, canonical_orientation(u.carrier)) % 2


def orientation_representative(X: LabeledSet, label: Label) -> Orientation:
    if label not in (0, 1):
        raise ContractError(f"class label must be 0 or 1, got {label!r}")
    d = canonical_orientation(X)
    return d if label == 0 else d.flip(0)


# --------------------------------------------------------------------------
# Charts modulo parity (and their signed variant).

def simpson_class(f: Bijection) -> Label:
    """0 when f has even parity relative to the order-preserving chart."""
    h0 = order_bijection(f.codomain)
    return sign_inversions(f.then(h0.inverse())).fin2


def simpson_representative(X: LabeledSet, n: int, label: Label) -> Bijection:
    if label not in (0, 1):
        raise ContractError(f"class label must be 0 or 1, got {label!r}")
    rep = order_bijection(X)
    if label == 1:
        rep = transposition(n, 0, 1).then(rep)
    return rep


def orbit_class(h: Bijection, s: Sign) -> Label:
    """Orbit label of a (chart, sign) pair under twisted precomposition."""
    h0 = order_bijection(h.codomain)
    return (sign_inversions(h.then(h0.inverse())) * s).fin2


def orbit_representative(X: LabeledSet, label: Label) -> tuple[Bijection, Sign]:
    if label not in (0, 1):
        raise ContractError(f"class label must be 0 or 1, got {label!r}")
    return order_bijection(X), PLUS if label == 0 else MINUS


# --------------------------------------------------------------------------
# Equivariant sign-valued functions on charts.

@dataclass(frozen=True)
class FixedPointElement:
    """An equivariant function from charts fin(n) = X to {+1, -1}.

    Stored as a reference chart plus the value taken there; the full table
    follows from equivariance: value_at(h) = parity(reference relative to h)
    times the reference value.  Any two parameterizations of the same
    function agree on every chart.
    """

    reference: Bijection
    value_at_reference: Sign

    def value_at(self, h: Bijection) -> Sign:
        return sign_inversions(h.then(self.reference.inverse())) * self.value_at_reference

    def transport(self, e: Bijection) -> "FixedPointElement":
        """Push forward along a bijection of the underlying carriers."""
        if e.domain != self.reference.codomain:
            raise CarrierMismatch("element does not live over the domain of the map")
        return FixedPointElement(self.reference.then(e), self.value_at_reference)

    def same_function(self, other: "FixedPointElement") -> bool:
        h0 = order_bijection(self.reference.codomain)
        return self.value_at(h0) == other.value_at(h0)


def fixed_point_elements(X: LabeledSet) -> tuple[FixedPointElement, FixedPointElement]:
    """The two equivariant functions over X; index 0 is the +1 one."""
    h0 = order_bijection(X)
    return FixedPointElement(h0, PLUS), FixedPointElement(h0, MINUS)


def fixed_point_class(elem: FixedPointElement) -> Label:
    X = elem.reference.codomain
    return elem.value_at(order_bijection(X)).fin2


# --------------------------------------------------------------------------
# The family abstraction and the four constructions.

@dataclass(frozen=True, eq=False)
class TwoElementFamily:
    """A two-element fiber over every n-element set, transported functorially.

    fiber(X) is a concrete 2-element labeled set; action(e) is a bijection
    fiber(domain e) = fiber(codomain e); base_point is the fiber label over
    fin(arity) charted to +1.
    """

    name: str
    arity: int
    fiber: Callable[[LabeledSet], LabeledSet]
    action: Callable[[Bijection], Bijection]
    base_point: Label

    def chart(self, label: Label) -> Sign:
        base_fiber = self.fiber(fin(self.arity))
        if label not in base_fiber:
            raise ContractError(f"{label!r} is not in the fiber over fin({self.arity})")
        return PLUS if label == self.base_point else MINUS

    def chart_inverse(self, s: Sign) -> Label:
        base_fiber = self.fiber(fin(self.arity))
        if s is PLUS:
            return self.base_point
        return next(x for x in base_fiber if x != self.base_point)


def _require_set_arity(X: LabeledSet, n: int) -> None:
    if len(X) != n:
        raise ArityMismatch(f"expected a {n}-element set, got {len(X)} elements")


def _class_family(name, n, representative, transport, classify) -> TwoElementFamily:
    """Assemble a family from representative/transport/classify data.

    The action transports a representative of each class along the bijection
    and reads off the class of the result; Bijection construction validates
    that the two classes land on distinct labels.
    """

    def fiber(X: LabeledSet) -> LabeledSet:
        _require_set_arity(X, n)
        return CLASS_LABELS

    def action(e: Bijection) -> Bijection:
        _require_set_arity(e.domain, n)
        _require_set_arity(e.codomain, n)
        images = tuple(
            classify(transport(e, representative(e.domain, c))) for c in (0, 1)
        )
        return Bijection(CLASS_LABELS, CLASS_LABELS, images)

    return TwoElementFamily(name, n, fiber, action, base_point=0)


def cartier_delooping(n: int) -> TwoElementFamily:
    """Orientations modulo disagreement parity; sign-free by construction."""
    if n < 2:
        raise ArityTooSmall("cartier family needs arity >= 2")
    return _class_family(
        "cartier", n, orientation_representative, orientation_action, orientation_class
    )


def simpson_delooping(n: int, bound: int = 8) -> TwoElementFamily:
    """Charts modulo even relative parity."""
    if n < 2:
        raise ArityTooSmall("simpson family needs arity >= 2")
    if n > bound:
        raise SizeGuard(f"simpson family enumerates n! charts; bound is {bound}")
    return _class_family(
        "simpson",
        n,
        lambda X, c: simpson_representative(X, n, c),
        lambda e, f: f.then(e),
        simpson_class,
    )


def orbit_delooping(n: int, bound: int = 8) -> TwoElementFamily:
    """(chart, sign) pairs modulo the twisted precomposition action."""
    if n < 2:
        raise ArityTooSmall("orbit family needs arity >= 2")
    if n > bound:
        raise SizeGuard(f"orbit family enumerates n! charts; bound is {bound}")
    return _class_family(
        "orbit",
        n,
        orbit_representative,
        lambda e, pair: (pair[0].then(e), pair[1]),
        lambda pair: orbit_class(*pair),
    )


def fixed_point_delooping(n: int) -> TwoElementFamily:
    """Equivariant sign-valued functions on charts, via their reference form."""
    if n < 2:
        raise ArityTooSmall("fixed-point family needs arity >= 2")
    return _class_family(
        "fixed",
        n,
        lambda X, c: fixed_point_elements(X)[c],
        lambda e, elem: elem.transport(e),
        fixed_point_class,
    )


CONSTRUCTIONS: dict[str, Callable[[int], TwoElementFamily]] = {
    "fixed": fixed_point_delooping,
    "orbit": orbit_delooping,
    "simpson": simpson_delooping,
    "cartier": cartier_delooping,
}


# --------------------------------------------------------------------------
# Exhaustive census of equivariant tables (the independent oracle).

def exhaustive_fixed_points(n: int, bound: int = 4) -> list[dict[Bijection, Sign]]:
    """Scan all 2^(n!) sign-valued tables on permutations and keep the ones
    fixed by every generator of the twisted action.

    The action of a generator g sends a table f to h -> -f(h o g), so a
    table is fixed exactly when its bitmask anticorrelates with its image
    under the index permutation h -> h o g.  The scan runs over every mask;
    adjacent transpositions generate, so fixedness under them is fixedness
    under the whole action.
    """
    import numpy as np

    if n > bound:
        raise SizeGuard(f"census scans 2^(n!) tables; bound is n <= {bound}")
    base = fin(n)
    perms = enumerate_bijections(base, base)
    m = len(perms)
    position = {p.images: i for i, p in enumerate(perms)}
    masks = np.arange(1 << m, dtype=np.uint32)
    full = np.uint32((1 << m) - 1)
    for g in (transposition(n, i, i + 1) for i in range(n - 1)):
        j = [position[g.then(p).images] for p in perms]
        shifted = np.zeros_like(masks)
        for i in range(m):
            shifted |= ((masks >> np.uint32(j[i])) & np.uint32(1)) << np.uint32(i)
        masks = masks[(masks ^ shifted) == full]
    tables = []
    for mask in masks.tolist():
        tables.append(
            {p: (MINUS if (mask >> i) & 1 else PLUS) for i, p in enumerate(perms)}
        )
    return tables


# --------------------------------------------------------------------------
# Sign extraction, recognition, and uniqueness.

def sign_from_delooping(Q: TwoElementFamily, e: Bijection) -> Sign:
    """+1 exactly when the action of e fixes the charted base point."""
    base = fin(Q.arity)
    if e.domain != base or e.codomain != base:
        raise ArityMismatch(f"expected a permutation of fin({Q.arity})")
    return PLUS if Q.action(e)(Q.base_point) == Q.base_point else MINUS


@dataclass(frozen=True)
class RecognitionReport:
    """Results of the three decidable recognition conditions.

    For genuine families the booleans always co-vary: either all hold (the
    family is a delooping) or none do.  counterexample carries a witness
    permutation when some condition fails.
    """

    condition3_surjective: bool
    condition4_transpositions_swap: bool
    condition5_sign_matches: bool
    counterexample: Bijection | None = None

    @property
    def booleans(self) -> tuple[bool, bool, bool]:
        return (
            self.condition3_surjective,
            self.condition4_transpositions_swap,
            self.condition5_sign_matches,
        )

    @property
    def is_delooping(self) -> bool:
        return all(self.booleans)

    @property
    def consistent(self) -> bool:
        return len(set(self.booleans)) == 1


def check_recognition(Q: TwoElementFamily, bound: int = 6) -> RecognitionReport:
    """Decide, by exhaustion over fin(arity), whether a family deloops the sign.

    condition 3: some permutation acts non-trivially on the base fiber;
    condition 4: every transposition acts as the swap;
    condition 5: the extracted sign agrees with the inversion-count sign
    on every permutation.
    """
    if Q.arity > bound:
        raise SizeGuard(f"recognition exhausts {Q.arity}! permutations; bound is {bound}")
    base = fin(Q.arity)
    base_fiber = Q.fiber(base)
    ident = identity(base_fiber)
    swap = swap_two(base_fiber)
    perms = enumerate_bijections(base, base)
    cond3 = any(Q.action(e) != ident for e in perms)
    bad_swap = next(
        (
            transposition_of_pair(base, P)
            for P in k_subsets(base, 2)
            if Q.action(transposition_of_pair(base, P)) != swap
        ),
        None,
    )
    bad_sign = next(
        (e for e in perms if sign_from_delooping(Q, e) != sign_inversions(e)), None
    )
    cond4 = bad_swap is None
    cond5 = bad_sign is None
    witness = None
    if not (cond3 and cond4 and cond5):
        witness = bad_swap or bad_sign
        if witness is None and len(base) >= 2:
            witness = transposition_of_pair(base, k_subsets(base, 2)[0])
    return RecognitionReport(cond3, cond4, cond5, witness)


def mutate_family(Q: TwoElementFamily, rng: Random) -> TwoElementFamily:
    """A random functorial deformation of a family.

    Deformations: trivialize the action, conjugate every fiber by a
    pseudorandom involution, and/or flip the chart.  All deformations stay
    inside the space of genuine functorial two-element families, which is
    exactly the space where the recognition booleans must co-vary.
    """
    trivialize = rng.random() < 0.4
    salt = rng.randrange(1 << 30) if rng.random() < 0.7 else None
    flip_chart = rng.random() < 0.5

    def twist(X: LabeledSet) -> Bijection:
        fib = Q.fiber(X)
        if salt is not None and (hash((salt,) + X.elements) >> 3) & 1:
            return swap_two(fib)
        return identity(fib)

    def action(e: Bijection) -> Bijection:
        if trivialize:
            src, dst = Q.fiber(e.domain), Q.fiber(e.codomain)
            core = Bijection(src, dst, dst.elements)
        else:
            core = Q.action(e)
        return twist(e.domain).inverse().then(core).then(twist(e.codomain))

    base_fiber = Q.fiber(fin(Q.arity))
    base_point = Q.base_point
    if flip_chart:
        base_point = next(x for x in base_fiber if x != Q.base_point)
    tags = [
        tag
        for tag, on in (
            ("trivial", trivialize),
            ("twist", salt is not None),
            ("flip", flip_chart),
        )
        if on
    ]
    name = f"{Q.name}/mutant[{','.join(tags) or 'none'}]"
    return TwoElementFamily(name, Q.arity, Q.fiber, action, base_point)


@dataclass(frozen=True, eq=False)
class NaturalFamily:
    """A fiberwise bijection between two families, natural in the carrier."""

    source: TwoElementFamily
    target: TwoElementFamily
    _at: Callable[[LabeledSet], Bijection]

    def at(self, X: LabeledSet) -> Bijection:
        return self._at(X)


def natural_isomorphism(
    Q: TwoElementFamily,
    Qp: TwoElementFamily,
    squares: int = 50,
    seed: int = 0,
    bound: int = 6,
) -> NaturalFamily:
    """The unique base-point-preserving natural family between two deloopings.

    Over fin(n) the bijection matches charts; over any other carrier it is
    transported along the order-preserving chart (any chart gives the same
    answer since both families realize the same sign action).  The function
    verifies naturality on seeded random squares and verifies uniqueness by
    checking that flipping the bijection on one fiber breaks a square.
    """
    if Q.arity != Qp.arity:
        raise ArityMismatch("families have different arities")
    for fam in (Q, Qp):
        if not check_recognition(fam, bound=bound).is_delooping:
            raise NotADelooping(f"{fam.name} fails recognition")
    n = Q.arity
    base = fin(n)
    src_fiber = Q.fiber(base)
    dst_fiber = Qp.fiber(base)
    phi0 = Bijection(
        src_fiber,
        dst_fiber,
        tuple(Qp.chart_inverse(Q.chart(x)) for x in src_fiber),
    )

    def at(X: LabeledSet) -> Bijection:
        h = order_bijection(X)
        return Q.action(h).inverse().then(phi0).then(Qp.action(h))

    rng = Random(seed)

    def sample_set() -> LabeledSet:
        return base if rng.random() < 0.25 else random_labeled_set(rng, n)

    for _ in range(squares):
        X, Y = sample_set(), sample_set()
        e = random_bijection(rng, X, Y)
        if Q.action(e).then(at(Y)) != at(X).then(Qp.action(e)):
            raise NaturalityFailure("family is not natural", square=(X, Y, e))
    for _ in range(4):
        X, Y = sample_set(), sample_set()
        e = random_bijection(rng, X, Y)
        flipped = at(X).then(swap_two(Qp.fiber(X)))
        if Q.action(e).then(at(Y)) == flipped.then(Qp.action(e)):
            raise NaturalityFailure(
                "flipped fiber map is also natural; uniqueness violated",
                square=(X, Y, e),
            )
    return NaturalFamily(Q, Qp, at)


def alternating_kernel(n: int, bound: int = 8) -> tuple[Bijection, ...]:
    """All permutations of fin(n) with sign +1, in enumeration order."""
    if n < 2:
        raise ArityTooSmall("the kernel is only materialized for n >= 2")
    if n > bound:
        raise SizeGuard(f"kernel listing enumerates n! permutations; bound is {bound}")
    base = fin(n)
    return tuple(
        e for e in enumerate_bijections(base, base) if sign_inversions(e) is PLUS
    )
