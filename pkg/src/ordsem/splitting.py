"""Splitting classes and the staged p-morphism onto finite binary trees.

The abstract interface captures a countable, downward-closed class inside
an ambient join-semilattice in which every class element can be split:
two extensions whose join leaves the class, avoiding joins into the class
with finitely many prescribed elements.  Such a class maps p-morphically
onto every finite binary tree; `build_pmorphism` runs that construction
one requirement at a time so each stage can be checked.

The concrete model works with finite antichains of finite sequences over
the naturals, ordered by prefix-domination (every member of the smaller
antichain is a prefix of some member of the larger).  The class is the
singleton antichains.  Splits diverge by fresh next-letters, which is why
unbounded branching is essential: with a binary alphabet the two cones
above f already cover everything, so any B containing both nearest
extensions of f would be impossible to avoid.
"""

from __future__ import annotations

import itertools
import json
import random
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import InputError, InvariantViolation, Report, StagingError
from .morphism import PMorphism
from .order import Poset
from .semantics import binary_tree_frame

Seq = tuple[int, ...]
Antichain = frozenset[Seq]


class SplittingStructure(ABC):
    """Oracle bundle for a splitting class inside an ambient order."""

    @abstractmethod
    def least(self) -> object:
        """The least class element (image of requirement R0)."""

    @abstractmethod
    def enumerate(self, i: int) -> object:
        """The i-th class element; lazy, injective across calls."""

    @abstractmethod
    def leq(self, a: object, b: object) -> bool:
        """The simulated reducibility order on the ambient."""

    @abstractmethod
    def join(self, a: object, b: object) -> object:
        """Least upper bound in the ambient order."""

    @abstractmethod
    def in_class(self, x: object) -> bool:
        """Membership of an ambient element in the class."""

    @abstractmethod
    def split(self, f: object, avoid: frozenset) -> tuple[object, object]:
        """Two class elements above f whose join leaves the class, with
        all joins against `avoid` leaving the class as well."""

    def describe(self, x: object) -> str:
        return repr(x)


def is_prefix(s: Seq, t: Seq) -> bool:
    return len(s) <= len(t) and t[: len(s)] == s


def reduce_antichain(seqs: Iterable[Seq]) -> Antichain:
    """Drop members that are proper prefixes of other members."""
    pool = set(seqs)
    return frozenset(
        s for s in pool if not any(s != t and is_prefix(s, t) for t in pool)
    )


def seq_label(s: Seq) -> str:
    return "".join(str(d) if d <= 9 else f"({d})" for d in s)


def antichain_label(a: Antichain) -> str:
    return "{" + ",".join(seq_label(s) for s in sorted(a)) + "}"


def antichain_to_json(a: Antichain) -> list[list[int]]:
    return [list(s) for s in sorted(a)]


def antichain_from_json(data: object) -> Antichain:
    if not isinstance(data, list) or not all(isinstance(s, list) for s in data):
        raise InputError("antichain literal must be a list of integer sequences")
    out = frozenset(tuple(int(d) for d in s) for s in data)
    if out != reduce_antichain(out):
        raise InputError("literal is not a reduced antichain")
    if not out:
        raise InputError("antichains must be non-empty")
    return out


def _weight(s: Seq) -> int:
    return len(s) + sum(s)


def _spine() -> Iterable[Seq]:
    """Every finite sequence over the naturals, graded by weight then lex."""
    for w in itertools.count():
        block = [s for s in _sequences_of_weight(w)]
        for s in sorted(block):
            yield s


def _sequences_of_weight(w: int) -> Iterable[Seq]:
    if w == 0:
        yield ()
        return
    for first in range(w):
        for rest in _sequences_of_weight(w - 1 - first):
            yield (first,) + rest


class SyntheticAntichainModel(SplittingStructure):
    """Concrete splitting class over antichains of natural-number strings.

    Enumeration interleaves a canonical weight-graded spine with a
    discovery queue of split-produced elements; without the queue the
    fresh letters introduced by splits would sit arbitrarily deep in any
    fixed enumeration and finite runs could never progress past the root.
    A non-zero seed shuffles delivery inside a small sliding window.
    """

    def __init__(self, seed: int = 0, shuffle_window: int = 5):
        self._rng = random.Random(seed)
        self._shuffle = shuffle_window if seed != 0 else 1
        self._spine = iter(_spine())
        self._queue: deque[Antichain] = deque()
        self._buffer: list[Antichain] = []
        self._delivered: list[Antichain] = []
        self._delivered_set: set[Antichain] = set()
        self._prefer_spine = True

    def least(self) -> Antichain:
        return frozenset({()})

    def in_class(self, x: object) -> bool:
        return isinstance(x, frozenset) and len(x) == 1

    def leq(self, a: Antichain, b: Antichain) -> bool:
        return all(any(is_prefix(s, t) for t in b) for s in a)

    def join(self, a: Antichain, b: Antichain) -> Antichain:
        return reduce_antichain(a | b)

    def _the(self, f: Antichain) -> Seq:
        (s,) = f
        return s

    def _check_split_query(self, f: Antichain, avoid: frozenset) -> Seq:
        if not self.in_class(f):
            raise InputError(f"split called on non-class element {antichain_label(f)}")
        s = self._the(f)
        for g in avoid:
            if not self.in_class(g):
                raise InputError(f"avoid set holds non-class element {antichain_label(g)}")
            if self.leq(g, f):
                raise InputError(
                    f"avoid set holds {antichain_label(g)} <= {antichain_label(f)}"
                )
        return s

    def _excluded_letters(self, s: Seq, avoid: frozenset) -> set[int]:
        out = set()
        for g in avoid:
            t = self._the(g)
            if len(t) > len(s) and t[: len(s)] == s:
                out.add(t[len(s)])
        return out

    def cond_ii(self, f: Antichain, avoid: frozenset) -> Antichain:
        """One strict extension whose joins with `avoid` leave the class."""
        s = self._check_split_query(f, avoid)
        excluded = self._excluded_letters(s, avoid)
        m = next(m for m in itertools.count() if m not in excluded)
        h: Antichain = frozenset({s + (m,)})
        self._discover(h)
        return h

    def split(self, f: Antichain, avoid: frozenset) -> tuple[Antichain, Antichain]:
        s = self._check_split_query(f, avoid)
        excluded = self._excluded_letters(s, avoid)
        fresh = (m for m in itertools.count() if m not in excluded)
        m0, m1 = next(fresh), next(fresh)
        h0: Antichain = frozenset({s + (m0,)})
        h1: Antichain = frozenset({s + (m1,)})
        self._discover(h0)
        self._discover(h1)
        return h0, h1

    def _discover(self, h: Antichain) -> None:
        if h not in self._delivered_set and h not in self._queue:
            self._queue.append(h)

    def _pull(self) -> Antichain:
        """Next stream candidate; spine and discovery queue alternate."""
        while True:
            if self._prefer_spine or not self._queue:
                self._prefer_spine = False
                candidate: Antichain = frozenset({next(self._spine)})
            else:
                self._prefer_spine = True
                candidate = self._queue.popleft()
            if candidate not in self._delivered_set and candidate not in self._buffer:
                return candidate

    def enumerate(self, i: int) -> Antichain:
        while len(self._delivered) <= i:
            while len(self._buffer) < self._shuffle:
                self._buffer.append(self._pull())
            pick = self._rng.randrange(len(self._buffer)) if self._shuffle > 1 else 0
            element = self._buffer.pop(pick)
            self._delivered.append(element)
            self._delivered_set.add(element)
        return self._delivered[i]

    def describe(self, x: object) -> str:
        return antichain_label(x) if isinstance(x, frozenset) else repr(x)


def check_split_conditions(
    structure: SplittingStructure,
    f: object,
    avoid: frozenset,
    h0: object,
    h1: object,
) -> Report:
    """All defining clauses of a split, each violation naming its clause."""
    if not structure.in_class(f):
        raise InputError(f"f = {structure.describe(f)} is not in the class")
    for g in avoid:
        if not structure.in_class(g):
            raise InputError(f"avoid element {structure.describe(g)} is not in the class")
        if structure.leq(g, f):
            raise InputError(
                f"avoid element {structure.describe(g)} is below f = {structure.describe(f)}"
            )
    violations: list[str] = []
    checked = 0
    for name, h in (("h0", h0), ("h1", h1)):
        checked += 2
        if not structure.in_class(h):
            violations.append(f"{name} = {structure.describe(h)} is not in the class")
        if not structure.leq(f, h):
            violations.append(f"{name} is not above f")
    checked += 1
    if structure.in_class(structure.join(h0, h1)):
        violations.append("join(h0, h1) stays in the class")
    for g in avoid:
        for name, h in (("h0", h0), ("h1", h1)):
            checked += 1
            if structure.in_class(structure.join(g, h)):
                violations.append(
                    f"join({structure.describe(g)}, {name}) stays in the class"
                )
    return Report(checked=checked, violations=tuple(violations))


def verify_splitting_class(structure: SplittingStructure, depth: int) -> Report:
    """Sampled evidence that the structure satisfies the splitting law.

    Takes f over the first `depth` enumerated elements and every avoid
    set of size at most three from the window's non-below elements; each
    split is checked clause by clause, and the first half of the split is
    spot-checked as a strict extension (the one-sided formulation).
    """
    if depth < 1:
        raise InputError(f"depth must be >= 1, got {depth}")
    window = [structure.enumerate(i) for i in range(depth)]
    violations: list[str] = []
    checked = 0
    for f in window:
        others = [g for g in window if not structure.leq(g, f)]
        for size in range(4):
            for combo in itertools.combinations(others, size):
                avoid = frozenset(combo)
                label = (
                    f"f={structure.describe(f)}, "
                    f"B={{{', '.join(sorted(structure.describe(g) for g in avoid))}}}"
                )
                try:
                    h0, h1 = structure.split(f, avoid)
                except Exception as exc:  # a failing oracle is a finding, not a crash
                    checked += 1
                    violations.append(f"split failed on {label}: {exc}")
                    continue
                sub = check_split_conditions(structure, f, avoid, h0, h1)
                checked += sub.checked
                violations.extend(f"{v} on {label}" for v in sub.violations)
                checked += 1
                if structure.leq(h0, f):
                    violations.append(f"one-sided form: h0 is not strictly above f on {label}")
    return Report(checked=checked, violations=tuple(violations))


def split_from_cond_ii(
    structure: SplittingStructure,
    cond_ii: Callable[[object, frozenset], object],
) -> Callable[[object, frozenset], tuple[object, object]]:
    """Upgrade a one-extension oracle to a full split oracle.

    The first half avoids the given set; the second call additionally
    avoids the first half, which is what makes their join leave the class.
    """

    def split(f: object, avoid: frozenset) -> tuple[object, object]:
        try:
            h0 = cond_ii(f, avoid)
        except Exception as exc:
            raise InvariantViolation(
                f"one-extension oracle failed on f={structure.describe(f)}, "
                f"B={sorted(structure.describe(g) for g in avoid)}: {exc}"
            ) from exc
        try:
            h1 = cond_ii(f, avoid | {h0})
        except Exception as exc:
            raise InvariantViolation(
                f"one-extension oracle failed on f={structure.describe(f)}, "
                f"B={sorted(structure.describe(g) for g in avoid | {h0})}: {exc}"
            ) from exc
        return h0, h1

    return split


@dataclass
class PartialHomomorphism:
    """Growing partial order-homomorphism into the binary tree 2^{<height}.

    Keeps the two construction invariants checkable at every stage: the
    map respects the order on its domain, and elements with incomparable
    images join outside the class.
    """

    structure: SplittingStructure
    height: int
    pairs: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)

    def image(self, element: object) -> str:
        return self.pairs[element]

    def domain(self) -> list:
        return list(self.pairs)

    def covered_nodes(self) -> set[str]:
        return set(self.pairs.values())

    def check_new_pair(self, element: object, image: str) -> None:
        """Both invariants against the existing pairs, before insertion."""
        s = self.structure
        for other, other_image in self.pairs.items():
            if s.leq(other, element) and not image.startswith(other_image):
                raise InvariantViolation(
                    f"order homomorphism broken: {s.describe(other)} <= "
                    f"{s.describe(element)} but {other_image!r} is not a prefix of {image!r}"
                )
            if s.leq(element, other) and not other_image.startswith(image):
                raise InvariantViolation(
                    f"order homomorphism broken: {s.describe(element)} <= "
                    f"{s.describe(other)} but {image!r} is not a prefix of {other_image!r}"
                )
            incomparable = not image.startswith(other_image) and not other_image.startswith(image)
            if incomparable and s.in_class(s.join(element, other)):
                raise InvariantViolation(
                    f"incomparability invariant broken: images {image!r} | "
                    f"{other_image!r} but join({s.describe(element)}, "
                    f"{s.describe(other)}) stays in the class"
                )

    def check_invariants(self) -> Report:
        """Full pairwise re-check of both invariants (non-incremental)."""
        s = self.structure
        items = list(self.pairs.items())
        violations: list[str] = []
        checked = 0
        for i, (a, ia) in enumerate(items):
            for b, ib in items[i + 1 :]:
                checked += 2
                for (x, ix), (y, iy) in (((a, ia), (b, ib)), ((b, ib), (a, ia))):
                    if s.leq(x, y) and not iy.startswith(ix):
                        violations.append(
                            f"order homomorphism broken on "
                            f"({s.describe(x)}, {s.describe(y)})"
                        )
                if not ia.startswith(ib) and not ib.startswith(ia):
                    if s.in_class(s.join(a, b)):
                        violations.append(
                            f"incomparability invariant broken on "
                            f"({s.describe(a)}, {s.describe(b)})"
                        )
        return Report(checked=checked, violations=tuple(violations))

    def to_json(self) -> dict:
        return {
            "height": self.height,
            "pairs": [
                {"element": antichain_to_json(e), "image": img}
                for e, img in self.pairs.items()
            ],
        }


def build_pmorphism(
    structure: SplittingStructure, height: int, steps: int
) -> PartialHomomorphism:
    """Run requirements R0 .. R(2*steps) of the tree construction.

    R0 sends the least class element to the empty string.  For each k,
    the odd requirement places the k-th enumerated element at the largest
    image among the placed elements below it (a set the invariants force
    to be a chain), and the even requirement splits it into preimages of
    its image's two children, skipped when the image is already maximal
    in 2^{<height}.  Every stage re-establishes both invariants or aborts.
    """
    if height < 1:
        raise InputError(f"target height must be >= 1, got {height}")
    if steps < 1:
        raise InputError(f"steps must be >= 1, got {steps}")
    alpha = PartialHomomorphism(structure, height)

    def place(element: object, image: str, stage: str) -> None:
        alpha.check_new_pair(element, image)
        alpha.pairs[element] = image
        entry = {"stage": stage, "action": "place", "image": image}
        if isinstance(element, frozenset):
            entry["element"] = antichain_to_json(element)
        else:
            entry["element"] = structure.describe(element)
        alpha.trace.append(entry)

    place(structure.least(), "", "R0")

    for k in range(steps):
        a = structure.enumerate(k)
        if a not in alpha.pairs:
            below = {
                image for element, image in alpha.pairs.items() if structure.leq(element, a)
            }
            if not below:
                raise InvariantViolation(
                    f"R{2 * k + 1}: least element is not below {structure.describe(a)}"
                )
            chain = sorted(below, key=len)
            for shorter, longer in zip(chain, chain[1:]):
                if not longer.startswith(shorter):
                    raise InvariantViolation(
                        f"R{2 * k + 1}: images of elements below "
                        f"{structure.describe(a)} are not totally ordered"
                    )
            place(a, chain[-1], f"R{2 * k + 1}")
        image = alpha.pairs[a]

        if len(image) == height - 1:
            alpha.trace.append(
                {"stage": f"R{2 * k + 2}", "action": "skip-maximal", "image": image}
            )
            continue
        child0, child1 = image + "0", image + "1"
        satisfied0 = any(
            img == child0 and structure.leq(a, e) for e, img in alpha.pairs.items()
        )
        satisfied1 = any(
            img == child1 and structure.leq(a, e) for e, img in alpha.pairs.items()
        )
        if satisfied0 and satisfied1:
            alpha.trace.append(
                {"stage": f"R{2 * k + 2}", "action": "skip-satisfied", "image": image}
            )
            continue
        avoid = frozenset(
            element for element in alpha.pairs if not structure.leq(element, a)
        )
        try:
            h0, h1 = structure.split(a, avoid)
        except Exception as exc:
            raise InvariantViolation(f"split oracle failed at stage R{2 * k + 2}: {exc}") from exc
        oracle_report = check_split_conditions(structure, a, avoid, h0, h1)
        if not oracle_report.ok:
            raise InvariantViolation(
                f"split oracle broke its contract at stage R{2 * k + 2}: "
                + "; ".join(oracle_report.violations)
            )
        for h, child in ((h0, child0), (h1, child1)):
            if h in alpha.pairs:
                raise InvariantViolation(
                    f"split oracle returned an already-placed element at stage R{2 * k + 2}"
                )
            place(h, child, f"R{2 * k + 2}")

    return alpha


def _closed_domain(alpha: PartialHomomorphism) -> list:
    """Elements whose full subtree of child requirements is finished.

    An element with a maximal image is closed; otherwise it needs closed
    elements above it mapped onto both children of its image.  Only the
    closed part can be packaged as a frame morphism: the back condition
    descends through finished children exactly as in the limit argument.
    """
    s = alpha.structure
    items = list(alpha.pairs.items())
    closed: dict = {}
    changed = True
    while changed:
        changed = False
        for element, image in items:
            if element in closed:
                continue
            if len(image) == alpha.height - 1:
                closed[element] = image
                changed = True
                continue
            have0 = any(
                img == image + "0" and e in closed and s.leq(element, e)
                for e, img in items
            )
            have1 = any(
                img == image + "1" and e in closed and s.leq(element, e)
                for e, img in items
            )
            if have0 and have1:
                closed[element] = image
                changed = True
    return [e for e, _ in items if e in closed]


def pmorphism_of(alpha: PartialHomomorphism) -> PMorphism:
    """Package the finished part of the construction for the frame verifier."""
    s = alpha.structure
    closed = _closed_domain(alpha)
    covered = {alpha.pairs[e] for e in closed}
    target = binary_tree_frame(alpha.height)
    missing = [node for node in target.elements if node not in covered]
    if missing:
        raise StagingError(
            "construction not finished: tree nodes without closed preimages: "
            + ", ".join(repr(n) for n in missing)
        )
    labels = tuple(s.describe(e) for e in closed)
    cones = []
    for a in closed:
        cone = 0
        for j, b in enumerate(closed):
            if s.leq(a, b):
                cone |= 1 << j
        cones.append(cone)
    source = Poset(labels, tuple(cones))
    mapping = tuple(target.index_of(alpha.pairs[e]) for e in closed)
    return PMorphism(source, target, mapping)


def partial_hom_dumps(alpha: PartialHomomorphism) -> str:
    return json.dumps(alpha.to_json(), sort_keys=True)


def trace_lines(alpha: PartialHomomorphism) -> str:
    return "\n".join(json.dumps(entry, sort_keys=True) for entry in alpha.trace)
