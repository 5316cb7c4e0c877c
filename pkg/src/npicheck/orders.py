"""Left-ordered target groups: the integers, lexicographic Z^d, and braid
groups under the Dehornoy order or its opposite.

Braid elements are carried as freely reduced words in the Artin generators
(signed ints, sigma_i = i).  Comparison is by sigma-positivity after handle
reduction: a reduced word is greater than the identity iff its lowest-index
generator occurs only with positive exponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .words import Presentation, Word, freely_reduce, inverse_word, letter_gen

LT, EQ, GT = -1, 0, 1

POSITIVE = "positive"
NEGATIVE = "negative"
TRIVIAL = "trivial"


class UnassignedGenerator(KeyError):
    """A word letter has no image under the target assignment."""


class HandleReductionBudget(RuntimeError):
    """Handle reduction exceeded its hard iteration cap."""


class BadTargetSpec(ValueError):
    """Malformed target spec string."""


def _find_handle(word: tuple[int, ...]) -> tuple[int, int] | None:
    """Leftmost-ending handle (s, t): opener word[s], closer word[t].

    A sigma_i-handle is sigma_i^e u sigma_i^-e with u free of sigma_i and
    sigma_{i-1}.  The leftmost-ending one contains no nested handle, so it
    is always safe to reduce.
    """
    last: dict[int, int] = {}
    for t, x in enumerate(word):
        i = abs(x)
        s = last.get(i)
        if s is not None and word[s] == -x:
            if all(abs(word[p]) != i - 1 for p in range(s + 1, t)):
                return s, t
        last[i] = t
    return None


def handle_reduce(word, n_strands: int, max_steps: int = 10**6) -> Word:
    """Handle-free word representing the same braid in B_{n_strands}.

    Each step deletes the flanking pair of a handle and conjugates the
    sigma_{i+1} letters in between: sigma_{i+1}^d -> sigma_{i+1}^-e
    sigma_i^d sigma_{i+1}^e.  Termination is guaranteed for reduction of
    innermost handles; the cap turns a would-be loop into a loud error.
    """
    w = freely_reduce(word)
    for x in w:
        if not 1 <= abs(x) <= n_strands - 1:
            raise ValueError(f"letter {x} outside sigma_1..sigma_{n_strands - 1}")
    for _ in range(max_steps):
        found = _find_handle(w)
        if found is None:
            return w
        s, t = found
        i = abs(w[s])
        e = 1 if w[s] > 0 else -1
        mid: list[int] = []
        for x in w[s + 1 : t]:
            if abs(x) == i + 1:
                d = 1 if x > 0 else -1
                mid.extend([-e * (i + 1), d * i, e * (i + 1)])
            else:
                mid.append(x)
        w = freely_reduce(w[:s] + tuple(mid) + w[t + 1 :])
    raise HandleReductionBudget(f"no handle-free form within {max_steps} steps")


def braid_sign(word, n_strands: int, max_steps: int = 10**6) -> str:
    """Dehornoy trichotomy class of a braid word."""
    w = handle_reduce(word, n_strands, max_steps)
    if not w:
        return TRIVIAL
    main = min(abs(x) for x in w)
    signs = {x > 0 for x in w if abs(x) == main}
    if len(signs) != 1:
        raise AssertionError("handle-free word with mixed main-generator signs")
    return POSITIVE if signs.pop() else NEGATIVE


class OrderedTarget:
    """A group with a left-invariant total order.

    Subclasses fix the element representation and implement the four group
    operations plus ``compare``; all operations are pure.
    """

    name = "abstract"
    local_indicability = "assumed"

    def identity(self):
        raise NotImplementedError

    def multiply(self, g, h):
        raise NotImplementedError

    def inverse(self, g):
        raise NotImplementedError

    def compare(self, g, h) -> int:
        raise NotImplementedError

    def equals(self, g, h) -> bool:
        return self.compare(g, h) == EQ

    def describe(self, g) -> str:
        return str(g)


class IntTarget(OrderedTarget):
    """The integers with the usual order."""

    name = "z"
    local_indicability = "known"

    def identity(self) -> int:
        return 0

    def multiply(self, g: int, h: int) -> int:
        return g + h

    def inverse(self, g: int) -> int:
        return -g

    def compare(self, g: int, h: int) -> int:
        return LT if g < h else GT if g > h else EQ


class LexTarget(OrderedTarget):
    """Z^d with componentwise addition and lexicographic order."""

    local_indicability = "known"

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self.dim = dim
        self.name = f"zlex:{dim}"

    def identity(self) -> tuple[int, ...]:
        return (0,) * self.dim

    def multiply(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def inverse(self, g):
        return tuple(-a for a in g)

    def compare(self, g, h) -> int:
        return LT if g < h else GT if g > h else EQ


class BraidTarget(OrderedTarget):
    """B_n under the Dehornoy order, optionally reversed.

    Elements are freely reduced sigma-words; equality and comparison go
    through handle reduction, so they depend only on the braid element.
    """

    local_indicability = "assumed"

    def __init__(self, n_strands: int, opposite: bool = False, max_steps: int = 10**6):
        if n_strands < 2:
            raise ValueError("need at least 2 strands")
        self.n_strands = n_strands
        self.opposite = opposite
        self.max_steps = max_steps
        self.name = f"braid:{n_strands}" + (":opp" if opposite else "")

    def generator(self, index: int, sign: int = 1) -> Word:
        if not 1 <= index <= self.n_strands - 1:
            raise ValueError(f"sigma index {index} out of range")
        return (sign * index,)

    def identity(self) -> Word:
        return ()

    def multiply(self, g, h) -> Word:
        return freely_reduce(tuple(g) + tuple(h))

    def inverse(self, g) -> Word:
        return inverse_word(g)

    def compare(self, g, h) -> int:
        sign = braid_sign(self.multiply(self.inverse(g), h), self.n_strands, self.max_steps)
        if sign == TRIVIAL:
            return EQ
        base = LT if sign == POSITIVE else GT
        return -base if self.opposite else base

    def describe(self, g) -> str:
        if not g:
            return "1"
        return " ".join(f"s{abs(x)}" + ("" if x > 0 else "^-1") for x in g)


@dataclass(frozen=True)
class TargetAssignment:
    """Images of the presentation generators in an ordered target."""

    target: OrderedTarget
    images: dict = field(default_factory=dict)  # 0-based gen index -> element

    def image(self, gen: int):
        try:
            return self.images[gen]
        except KeyError as exc:
            raise UnassignedGenerator(f"generator index {gen} has no image") from exc

    @staticmethod
    def all_ones(pres: Presentation) -> "TargetAssignment":
        return TargetAssignment(IntTarget(), {j: 1 for j in range(len(pres.generators))})

    @staticmethod
    def from_weights(pres: Presentation, weights) -> "TargetAssignment":
        return TargetAssignment(IntTarget(), {j: int(w) for j, w in enumerate(weights)})

    @staticmethod
    def named_braid(pres: Presentation, target: BraidTarget) -> "TargetAssignment":
        """Generator j maps to sigma_{j+1}."""
        if len(pres.generators) > target.n_strands - 1:
            raise ValueError("more generators than Artin generators")
        return TargetAssignment(
            target, {j: target.generator(j + 1) for j in range(len(pres.generators))}
        )


def evaluate_word(target: OrderedTarget, assignment: TargetAssignment, word):
    """Image of a word under the homomorphism defined by the assignment."""
    acc = target.identity()
    for x in word:
        img = assignment.image(letter_gen(x))
        acc = target.multiply(acc, img if x > 0 else target.inverse(img))
    return acc


def verify_assignment(target: OrderedTarget, assignment: TargetAssignment, pres: Presentation) -> bool:
    """True iff every relator maps to the identity (phi is well defined)."""
    ident = target.identity()
    return all(
        target.equals(evaluate_word(target, assignment, r), ident) for r in pres.relators
    )


def parse_target_spec(spec: str) -> OrderedTarget:
    """Target spec strings: ``z``, ``zlex:<d>``, ``braid:<n>[:opp]``."""
    parts = spec.split(":")
    if parts == ["z"]:
        return IntTarget()
    if parts[0] == "zlex" and len(parts) == 2:
        try:
            return LexTarget(int(parts[1]))
        except ValueError as exc:
            raise BadTargetSpec(spec) from exc
    if parts[0] == "braid" and len(parts) in (2, 3):
        if len(parts) == 3 and parts[2] != "opp":
            raise BadTargetSpec(spec)
        try:
            return BraidTarget(int(parts[1]), opposite=len(parts) == 3)
        except ValueError as exc:
            raise BadTargetSpec(spec) from exc
    raise BadTargetSpec(spec)
