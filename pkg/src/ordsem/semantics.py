"""Algebraic evaluation, Kripke forcing, theories, bounded IPC decision.

A formula holds in a Brouwer algebra when it evaluates to 0: conjunction
lands on the lattice join, disjunction on the meet and falsum on 1.  On a
frame the same formula is checked by intuitionistic forcing over upset
valuations; the two routes define the same theory.

Validity over the full binary trees of bounded height decides IPC
membership in the refutation direction: a countermodel on some 2^{<k}
proves non-membership, while "valid up to the bound" is exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Mapping, Union

from .brouwer import BrouwerAlgebra
from .errors import CapacityError, InputError, ValuationError
from .formulas import And, Bot, Formula, Imp, Or, Var, free_vars, subformulas
from .order import Poset, Upset, upset_masks

MAX_VALUATIONS = 2_000_000


def eval_algebra(f: Formula, algebra: BrouwerAlgebra, valuation: Mapping[str, str]) -> str:
    """Fold the formula through the algebra's tables; returns a carrier label."""
    env = {name: algebra.index_of(label) for name, label in valuation.items()}
    return algebra.carrier[_eval_index(f, algebra, env)]


def _eval_index(f: Formula, algebra: BrouwerAlgebra, env: Mapping[str, int]) -> int:
    if isinstance(f, Var):
        try:
            return env[f.name]
        except KeyError:
            raise ValuationError(f"no value for variable {f.name!r}") from None
    if isinstance(f, Bot):
        return algebra.top
    a = _eval_index(f.left, algebra, env)
    b = _eval_index(f.right, algebra, env)
    if isinstance(f, And):
        return algebra.join[a][b]
    if isinstance(f, Or):
        return algebra.meet[a][b]
    return algebra.impl[a][b]


def holds_in(algebra: BrouwerAlgebra, f: Formula, valuation: Mapping[str, str]) -> bool:
    env = {name: algebra.index_of(label) for name, label in valuation.items()}
    return _eval_index(f, algebra, env) == algebra.bottom


def _forced_mask(frame: Poset, f: Formula, env: Mapping[str, int]) -> int:
    """Mask of the points forcing f; always an upset by persistence."""
    if isinstance(f, Var):
        try:
            return env[f.name]
        except KeyError:
            raise ValuationError(f"no value for variable {f.name!r}") from None
    if isinstance(f, Bot):
        return 0
    a = _forced_mask(frame, f.left, env)
    b = _forced_mask(frame, f.right, env)
    if isinstance(f, And):
        return a & b
    if isinstance(f, Or):
        return a | b
    out = 0
    for x in range(frame.n):
        if not (frame.up[x] & a & ~b):
            out |= 1 << x
    return out


def forced_upset(frame: Poset, valuation: Mapping[str, Upset], f: Formula) -> Upset:
    """The set of points forcing f under the valuation."""
    env = {}
    for name, upset in valuation.items():
        if upset.poset != frame:
            raise InputError(f"valuation of {name!r} lives on a different frame")
        env[name] = upset.mask
    return Upset(frame, _forced_mask(frame, f, env))


def forces(frame: Poset, point: str, valuation: Mapping[str, Upset], f: Formula) -> bool:
    """Standard intuitionistic forcing at one point."""
    i = frame.index_of(point)
    return (forced_upset(frame, valuation, f).mask >> i) & 1 == 1


Structure = Union[BrouwerAlgebra, Poset]


def theory_contains(structure: Structure, f: Formula, *, max_valuations: int = MAX_VALUATIONS) -> bool:
    """Whether f holds under every valuation into the structure.

    Algebra mode evaluates through the tables; frame mode quantifies over
    upset valuations and demands forcing at every point.
    """
    if isinstance(structure, BrouwerAlgebra):
        return _theory_algebra(structure, f, max_valuations)
    if isinstance(structure, Poset):
        return _theory_frame(structure, f, max_valuations)
    raise InputError(f"cannot compute a theory over {type(structure).__name__}")


def _guard(values: int, names: int, max_valuations: int) -> None:
    if values**names > max_valuations:
        raise CapacityError(
            f"valuation guard: {values}^{names} exceeds {max_valuations}"
        )


@lru_cache(maxsize=None)
def _theory_algebra_cached(algebra: BrouwerAlgebra, f: Formula) -> bool:
    names = sorted(free_vars(f))
    _guard(algebra.n, len(names), MAX_VALUATIONS)
    for choice in product(range(algebra.n), repeat=len(names)):
        if _eval_index(f, algebra, dict(zip(names, choice))) != algebra.bottom:
            return False
    return True


def _theory_algebra(algebra: BrouwerAlgebra, f: Formula, max_valuations: int) -> bool:
    names = sorted(free_vars(f))
    _guard(algebra.n, len(names), max_valuations)
    return _theory_algebra_cached(algebra, f)


@lru_cache(maxsize=None)
def _theory_frame_cached(frame: Poset, f: Formula) -> bool:
    names = sorted(free_vars(f))
    masks = upset_masks(frame)
    _guard(len(masks), len(names), MAX_VALUATIONS)
    full = frame.full_mask
    for choice in product(masks, repeat=len(names)):
        if _forced_mask(frame, f, dict(zip(names, choice))) != full:
            return False
    return True


def _theory_frame(frame: Poset, f: Formula, max_valuations: int) -> bool:
    names = sorted(free_vars(f))
    _guard(len(upset_masks(frame)), len(names), max_valuations)
    return _theory_frame_cached(frame, f)


def frame_witness(
    frame: Poset, f: Formula, *, max_valuations: int = MAX_VALUATIONS
) -> tuple[dict[str, Upset], str] | None:
    """First refuting (valuation, point) in canonical order, or None."""
    names = sorted(free_vars(f))
    masks = upset_masks(frame)
    _guard(len(masks), len(names), max_valuations)
    full = frame.full_mask
    for choice in product(masks, repeat=len(names)):
        env = dict(zip(names, choice))
        forced = _forced_mask(frame, f, env)
        if forced != full:
            point = next(i for i in range(frame.n) if not (forced >> i) & 1)
            valuation = {n: Upset(frame, m) for n, m in env.items()}
            return valuation, frame.elements[point]
    return None


def binary_tree_frame(height: int) -> Poset:
    """The frame 2^{<height}: binary strings of length < height, prefix order."""
    if height < 1:
        raise InputError(f"tree height must be >= 1, got {height}")
    nodes = sorted(
        ("".join(word) for k in range(height) for word in product("01", repeat=k)),
        key=lambda s: (len(s), s),
    )
    index = {s: i for i, s in enumerate(nodes)}
    cones = [0] * len(nodes)
    for s in nodes:
        for t in nodes:
            if t.startswith(s):
                cones[index[s]] |= 1 << index[t]
    return Poset(tuple(nodes), tuple(cones))


@dataclass(frozen=True)
class ValidUpToBound:
    """No countermodel exists on any 2^{<k} with k <= bound."""

    formula: Formula
    bound: int

    @property
    def is_countermodel(self) -> bool:
        return False


@dataclass(frozen=True)
class Countermodel:
    """A refutation: the formula fails at `point` under `valuation`."""

    formula: Formula
    frame: Poset
    valuation: dict[str, Upset]
    point: str
    height: int

    @property
    def is_countermodel(self) -> bool:
        return True


IpcResult = Union[ValidUpToBound, Countermodel]


def ipc_check_bounded(f: Formula, max_height: int, *, max_valuations: int = MAX_VALUATIONS) -> IpcResult:
    """Search 2^{<k} for k = 1..max_height for a refuting valuation.

    Per level, refutability is decided exactly by a closure over point
    profiles (which subformulas a point can force); only when a level is
    refutable is the valuation space enumerated, to extract the smallest-k,
    lexicographically-first countermodel.  A countermodel is conclusive;
    validity is only up to the bound.
    """
    if max_height < 1:
        raise InputError(f"max height must be >= 1, got {max_height}")
    subs = subformulas(f)
    position = {g: i for i, g in enumerate(subs)}
    var_bits = {g: 1 << position[g] for g in subs if isinstance(g, Var)}
    goal_bit = 1 << position[f]
    atom_mask = 0
    for bit in var_bits.values():
        atom_mask |= bit

    def close(atoms: int, below0: int | None, below1: int | None) -> int:
        profile = atoms
        for g in subs:
            bit = 1 << position[g]
            if isinstance(g, Var) or isinstance(g, Bot):
                continue
            lbit = 1 << position[g.left]
            rbit = 1 << position[g.right]
            if isinstance(g, And):
                if profile & lbit and profile & rbit:
                    profile |= bit
            elif isinstance(g, Or):
                if profile & (lbit | rbit):
                    profile |= bit
            else:
                local = not (profile & lbit) or bool(profile & rbit)
                above = True if below0 is None else bool(below0 & bit and below1 & bit)
                if local and above:
                    profile |= bit
        return profile

    def atom_subsets(mask: int) -> list[int]:
        positions = [1 << i for i in range(mask.bit_length()) if (mask >> i) & 1]
        out = []
        for r in range(len(positions) + 1):
            for combo in combinations(positions, r):
                sub = 0
                for b in combo:
                    sub |= b
                out.append(sub)
        return out

    level_profiles: set[int] = set()
    previous: set[int] = set()
    for k in range(1, max_height + 1):
        if k == 1:
            current = {close(a, None, None) for a in atom_subsets(atom_mask)}
        else:
            current = set()
            for p0 in previous:
                for p1 in previous:
                    common = p0 & p1 & atom_mask
                    for a in atom_subsets(common):
                        current.add(close(a, p0, p1))
        level_profiles |= current
        if any(not (p & goal_bit) for p in level_profiles):
            return _extract_countermodel(f, k, max_valuations)
        previous = current
    return ValidUpToBound(f, max_height)


def _extract_countermodel(f: Formula, height: int, max_valuations: int) -> Countermodel:
    frame = binary_tree_frame(height)
    witness = frame_witness(frame, f, max_valuations=max_valuations)
    if witness is None:  # profile closure said refutable; enumeration must agree
        raise InputError("internal disagreement between profile search and enumeration")
    valuation, point = witness
    return Countermodel(f, frame, valuation, point, height)
