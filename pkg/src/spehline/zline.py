"""Twisted-segment algebra on the line of a cuspidal support.

The basic datum is an opaque cuspidal label ``pi`` living on GL_g; its
unramified twists ``pi{a}`` for half-integers ``a`` form a line, and a
*segment* is an interval of consecutive twists.  A *multisegment* is a
multiset of segments, optionally decorated with a power of the
half-Tate marker and with an opaque wildcard factor of declared degree.
Ladders are the staggered-row shapes of ``Speh_s(St_t(pi))``.

Twists are stored absolutely on every segment.  Because the product of
two multisegments models *normalized* induction, the written twists of
the factors already are absolute positions, and the product reduces to
a plain multiset union; this makes the product exactly associative and
degree additive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class HalfInt:
    """A half-integer, stored as twice its value.

    Closed under addition, subtraction and negation; totally ordered.
    Plain ``int`` operands are coerced, so ``HalfInt(1) + 2`` is 5/2.
    """

    twice: int

    @staticmethod
    def of(value: "HalfInt | int") -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return HalfInt(2 * value)
        raise TypeError(f"cannot coerce {value!r} to a half-integer")

    @property
    def is_integral(self) -> bool:
        return self.twice % 2 == 0

    @property
    def is_zero(self) -> bool:
        return self.twice == 0

    def __add__(self, other: "HalfInt | int") -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other: "HalfInt | int") -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other: "HalfInt | int") -> "HalfInt":
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __mul__(self, k: int) -> "HalfInt":
        if not isinstance(k, int):
            return NotImplemented
        return HalfInt(self.twice * k)

    __rmul__ = __mul__

    def __lt__(self, other: "HalfInt") -> bool:
        if not isinstance(other, HalfInt):
            return NotImplemented
        return self.twice < other.twice

    def __le__(self, other: "HalfInt") -> bool:
        if not isinstance(other, HalfInt):
            return NotImplemented
        return self.twice <= other.twice

    def __gt__(self, other: "HalfInt") -> bool:
        if not isinstance(other, HalfInt):
            return NotImplemented
        return self.twice > other.twice

    def __ge__(self, other: "HalfInt") -> bool:
        if not isinstance(other, HalfInt):
            return NotImplemented
        return self.twice >= other.twice

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self.twice})"


ZERO = HalfInt(0)
HALF = HalfInt(1)


@dataclass(frozen=True)
class InertialCuspidal:
    """Opaque label for an inertial class of cuspidal representations.

    ``g`` is the dimension of the GL_g it lives on, ``e_pi`` the number
    of unramified self-twists, and ``modl_class`` an opaque identifier
    of its mod-l reduction class.  Two labels with the same ``id`` are
    expected to agree in every other field.
    """

    id: str
    g: int
    e_pi: int = 1
    modl_class: str = ""

    def __post_init__(self) -> None:
        if self.g < 1:
            raise ValueError(f"g must be >= 1, got {self.g}")
        if self.e_pi < 1:
            raise ValueError(f"e_pi must be >= 1, got {self.e_pi}")
        if not self.modl_class:
            object.__setattr__(self, "modl_class", self.id)

    def __str__(self) -> str:
        return self.id


def reduced_label(pi: InertialCuspidal) -> InertialCuspidal:
    """The canonical label of the mod-l class of ``pi``.

    Only the class identifier and the GL dimension survive reduction;
    the self-twist count is not meaningful mod l and is normalized to 1
    so that congruent labels reduce to equal values.  Idempotent.
    """
    rid = f"rl({pi.modl_class})"
    if pi.id == rid:
        return pi
    return InertialCuspidal(id=rid, g=pi.g, e_pi=1, modl_class=pi.modl_class)


@dataclass(frozen=True)
class Segment:
    """An interval of ``length`` consecutive twists of ``base``.

    Covers ``base{start}, base{start+1}, ..., base{start+length-1}``.
    """

    base: InertialCuspidal
    start: HalfInt
    length: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError(f"segment length must be >= 1, got {self.length}")
        object.__setattr__(self, "start", HalfInt.of(self.start))

    @property
    def end(self) -> HalfInt:
        return self.start + (self.length - 1)

    @property
    def degree(self) -> int:
        return self.length * self.base.g

    def shifted(self, n: HalfInt | int) -> "Segment":
        return replace(self, start=self.start + HalfInt.of(n))

    def __str__(self) -> str:
        if self.length == 1:
            return f"{self.base.id}[{self.start}]"
        return f"{self.base.id}[{self.start}..{self.end}]"


@dataclass(frozen=True)
class Wildcard:
    """An unspecified factor with a declared degree.

    Stands for a component of the Levi we do not want to name.  It is a
    first-class label: equality is by identifier (plus declared degree
    and accumulated twist), and mod-l reduction fixes it.
    """

    id: str
    degree: int
    shift: HalfInt = ZERO

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError("wildcard degree must be >= 0")
        object.__setattr__(self, "shift", HalfInt.of(self.shift))

    def shifted(self, n: HalfInt | int) -> "Wildcard":
        return replace(self, shift=self.shift + HalfInt.of(n))

    def __str__(self) -> str:
        body = f"?{self.id}({self.degree})"
        if not self.shift.is_zero:
            body += f"{{{self.shift}}}"
        return body


def _segment_key(seg: Segment) -> tuple[str, int, int]:
    return (seg.base.id, seg.start.twice, seg.length)


@dataclass(frozen=True)
class Multisegment:
    """A multiset of segments with optional Tate-power and wildcard markers.

    The segment tuple is kept sorted, so two multisegments built in any
    order compare and hash equal.  ``tate`` records a formal power of
    the half-Tate character; ``order_tag`` marks multisegments produced
    by the ordered product (the tag stores the degrees of the two
    ordered factors).
    """

    segments: tuple[Segment, ...] = ()
    tate: HalfInt = ZERO
    wildcard: Wildcard | None = None
    order_tag: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        segs = tuple(sorted(self.segments, key=_segment_key))
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "tate", HalfInt.of(self.tate))

    @classmethod
    def empty(cls) -> "Multisegment":
        return cls()

    @property
    def degree(self) -> int:
        total = sum(seg.degree for seg in self.segments)
        if self.wildcard is not None:
            total += self.wildcard.degree
        return total

    @property
    def is_empty(self) -> bool:
        return not self.segments and self.wildcard is None

    def shifted(self, n: HalfInt | int) -> "Multisegment":
        n = HalfInt.of(n)
        if n.is_zero:
            return self
        return replace(
            self,
            segments=tuple(seg.shifted(n) for seg in self.segments),
            wildcard=None if self.wildcard is None else self.wildcard.shifted(n),
        )

    def with_tate(self, n: HalfInt | int) -> "Multisegment":
        return replace(self, tate=HalfInt.of(n))

    def without_wildcard(self) -> "Multisegment":
        return replace(self, wildcard=None)

    def reduced(self) -> "Multisegment":
        segs = tuple(replace(s, base=reduced_label(s.base)) for s in self.segments)
        return replace(self, segments=segs)

    def __str__(self) -> str:
        parts = [str(seg) for seg in self.segments]
        if self.wildcard is not None:
            parts.append(str(self.wildcard))
        body = " + ".join(parts) if parts else "[]"
        if not self.tate.is_zero:
            body += f" * Xi^{self.tate}"
        if self.order_tag is not None:
            body += f" >({self.order_tag[0]}|{self.order_tag[1]})"
        return body


@dataclass(frozen=True)
class LadderShape:
    """The multisegment shape of ``Speh_s(St_t(base))`` twisted to ``center``.

    ``s`` rows of length ``t``; row ``j`` (j = 0..s-1) is the Steinberg
    segment of length ``t`` centered at ``center + (1-s)/2 + j``.
    """

    base: InertialCuspidal
    s: int
    t: int
    center: HalfInt = ZERO

    def __post_init__(self) -> None:
        if self.s < 1:
            raise ValueError(f"ladder needs s >= 1, got {self.s}")
        if self.t < 1:
            raise ValueError(f"ladder needs t >= 1, got {self.t}")
        object.__setattr__(self, "center", HalfInt.of(self.center))

    @property
    def degree(self) -> int:
        return self.s * self.t * self.base.g

    def row_start(self, j: int) -> HalfInt:
        # row center is center + (1-s)/2 + j, the row extends (t-1)/2 both ways
        return HalfInt(self.center.twice + (1 - self.s) + 2 * j - (self.t - 1))

    def to_multisegment(self) -> Multisegment:
        rows = tuple(
            Segment(self.base, self.row_start(j), self.t) for j in range(self.s)
        )
        return Multisegment(rows)

    def shifted(self, n: HalfInt | int) -> "LadderShape":
        return replace(self, center=self.center + HalfInt.of(n))

    def reduced(self) -> "LadderShape":
        return replace(self, base=reduced_label(self.base))

    def __str__(self) -> str:
        if self.s == 1:
            body = self.base.id if self.t == 1 else f"St_{self.t}({self.base.id})"
        elif self.t == 1:
            body = f"Speh_{self.s}({self.base.id})"
        else:
            body = f"Speh_{self.s}(St_{self.t}({self.base.id}))"
        if not self.center.is_zero:
            body += f"{{{self.center}}}"
        return body


def make_steinberg(pi: InertialCuspidal, t: int) -> LadderShape:
    """The generalized Steinberg shape ``St_t(pi)``: one row of length t."""
    if t < 1:
        raise ValueError(f"St_t needs t >= 1, got {t}")
    return LadderShape(base=pi, s=1, t=t, center=ZERO)


def make_speh(pi_or_ladder: InertialCuspidal | LadderShape, s: int) -> LadderShape:
    """``Speh_s`` of a cuspidal label or of a Steinberg shape.

    ``Speh_s(St_t(pi))`` stacks s copies of the row of ``St_t(pi)`` at
    the staggered centers ``(1-s)/2, ..., (s-1)/2``.
    """
    if s < 1:
        raise ValueError(f"Speh_s needs s >= 1, got {s}")
    if isinstance(pi_or_ladder, InertialCuspidal):
        return LadderShape(base=pi_or_ladder, s=s, t=1, center=ZERO)
    if isinstance(pi_or_ladder, LadderShape):
        if pi_or_ladder.s != 1:
            raise ValueError("make_speh expects a cuspidal label or a one-row ladder")
        return LadderShape(
            base=pi_or_ladder.base, s=s, t=pi_or_ladder.t, center=pi_or_ladder.center
        )
    raise TypeError(f"cannot build a Speh shape from {pi_or_ladder!r}")


def twist(m: Multisegment | LadderShape, n: HalfInt | int) -> Multisegment | LadderShape:
    """Shift every position of ``m`` by the half-integer ``n``."""
    return m.shifted(n)


def _as_multisegment(x: Multisegment | LadderShape) -> Multisegment:
    if isinstance(x, LadderShape):
        return x.to_multisegment()
    if isinstance(x, Multisegment):
        return x
    raise TypeError(f"expected a multisegment or ladder, got {x!r}")


def normalized_product(
    a: Multisegment | LadderShape, b: Multisegment | LadderShape
) -> Multisegment:
    """The multisegment of the normalized induction of ``a`` and ``b``.

    Because stored twists are absolute, this is the multiset union of
    the two segment multisets; Tate markers add, and at most one factor
    may carry a wildcard.  Degree is additive and the operation is
    associative and commutative up to multiset equality.
    """
    ma, mb = _as_multisegment(a), _as_multisegment(b)
    if ma.wildcard is not None and mb.wildcard is not None:
        raise ValueError("cannot combine two wildcard factors in one product")
    return Multisegment(
        segments=ma.segments + mb.segments,
        tate=ma.tate + mb.tate,
        wildcard=ma.wildcard if ma.wildcard is not None else mb.wildcard,
    )


def ordered_product(
    a: Multisegment | LadderShape, b: Multisegment | LadderShape
) -> Multisegment:
    """Normalized product remembering the ordered pair of factors.

    The tag records the degrees of the left and right factors; it takes
    part in equality and serialization, so an ordered product never
    collides with the unordered one.
    """
    ma, mb = _as_multisegment(a), _as_multisegment(b)
    prod = normalized_product(ma, mb)
    return replace(prod, order_tag=(ma.degree, mb.degree))


def mod_l_reduce(
    m: Multisegment | LadderShape | InertialCuspidal,
) -> Multisegment | LadderShape | InertialCuspidal:
    """Replace every cuspidal base by the label of its mod-l class.

    Idempotent, commutes with twisting and with the normalized product,
    and fixes wildcards.
    """
    if isinstance(m, InertialCuspidal):
        return reduced_label(m)
    return m.reduced()


def jacquet_cuts(ladder: LadderShape) -> list[tuple[Multisegment, Multisegment]]:
    """All two-sided cuts of a ladder shape.

    One cut per weakly decreasing vector ``c_0 >= c_1 >= ... >= c_{s-1}``
    with ``c_j`` in ``0..t`` (rows ordered by increasing twist): row j
    keeps its first ``c_j`` cells on the left and the remaining
    ``t - c_j`` on the right, both sides inheriting absolute twists.
    There are C(s+t, s) cuts, pairwise distinct, and each conserves the
    total degree.
    """
    s, t = ladder.s, ladder.t
    rows = [(ladder.row_start(j), ladder.base) for j in range(s)]
    cuts: list[tuple[Multisegment, Multisegment]] = []
    for nondecreasing in itertools.combinations_with_replacement(range(t + 1), s):
        vector = tuple(reversed(nondecreasing))
        left: list[Segment] = []
        right: list[Segment] = []
        for (start, base), c in zip(rows, vector):
            if c > 0:
                left.append(Segment(base, start, c))
            if c < t:
                right.append(Segment(base, start + c, t - c))
        cuts.append((Multisegment(tuple(left)), Multisegment(tuple(right))))
    return cuts
