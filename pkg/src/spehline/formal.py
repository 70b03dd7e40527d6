"""Formal Z-linear combinations of hashable labels.

A ``GrothSum`` is the image of a list of labelled objects in a free
abelian group: a finite map ``label -> integer coefficient`` with zero
coefficients dropped.  Addition is commutative, the empty sum is the
zero element, and equality ignores construction order.
"""

from __future__ import annotations

from typing import Any, Iterable, Iterator, Mapping


class GrothSum:
    """A finite integer linear combination of labels.

    Labels only need to be hashable and to have a deterministic ``str``
    (used for canonical ordering of the terms).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Any, int] | Iterable[tuple[Any, int]] = ()):
        acc: dict[Any, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for label, coeff in items:
            if not isinstance(coeff, int):
                raise TypeError(f"coefficient must be an integer, got {coeff!r}")
            new = acc.get(label, 0) + coeff
            if new:
                acc[label] = new
            else:
                acc.pop(label, None)
        self._terms = acc

    @classmethod
    def zero(cls) -> "GrothSum":
        return cls()

    @classmethod
    def of(cls, label: Any, coeff: int = 1) -> "GrothSum":
        return cls(((label, coeff),))

    def items(self) -> list[tuple[Any, int]]:
        """Terms sorted by the string form of their label."""
        return sorted(self._terms.items(), key=lambda kv: str(kv[0]))

    def coefficient(self, label: Any) -> int:
        return self._terms.get(label, 0)

    def labels(self) -> Iterator[Any]:
        return iter(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def has_negative(self) -> bool:
        return any(c < 0 for c in self._terms.values())

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "GrothSum") -> "GrothSum":
        if not isinstance(other, GrothSum):
            return NotImplemented
        out = dict(self._terms)
        for label, coeff in other._terms.items():
            new = out.get(label, 0) + coeff
            if new:
                out[label] = new
            else:
                out.pop(label, None)
        return GrothSum(out)

    def __neg__(self) -> "GrothSum":
        return GrothSum({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "GrothSum") -> "GrothSum":
        if not isinstance(other, GrothSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> "GrothSum":
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return GrothSum()
        return GrothSum({label: k * c for label, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrothSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if self.is_zero:
            return "GrothSum(0)"
        body = " + ".join(f"{c}*[{label}]" for label, c in self.items())
        return f"GrothSum({body})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"{c}*[{label}]" for label, c in self.items())
