"""Finite powerset security lattice over a set of agent names.

A security value is the set of agents allowed to read a datum, ordered by
reverse inclusion: the fewer readers, the higher the value.  Bottom is the
full agent universe (public data), top is the empty set (maximally secret).
The minimum of two values is the union of their reader sets, the maximum
their intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class UniverseMismatchError(ValueError):
    """Raised when combining levels that live over different agent universes."""


@dataclass(frozen=True)
class SecurityLevel:
    readers: frozenset[str]
    universe: frozenset[str]

    def __post_init__(self) -> None:
        if not self.readers <= self.universe:
            extra = ", ".join(sorted(self.readers - self.universe))
            raise ValueError(f"readers outside the agent universe: {extra}")

    def is_bottom(self) -> bool:
        return self.readers == self.universe

    def is_top(self) -> bool:
        return not self.readers

    def __str__(self) -> str:
        return format_level(self)


def level(readers: Iterable[str], universe: Iterable[str]) -> SecurityLevel:
    return SecurityLevel(frozenset(readers), frozenset(universe))


def bottom(universe: Iterable[str]) -> SecurityLevel:
    u = frozenset(universe)
    return SecurityLevel(u, u)


def top(universe: Iterable[str]) -> SecurityLevel:
    return SecurityLevel(frozenset(), frozenset(universe))


def _check_universe(a: SecurityLevel, b: SecurityLevel) -> None:
    if a.universe != b.universe:
        raise UniverseMismatchError(
            f"levels over different universes: {sorted(a.universe)} vs {sorted(b.universe)}"
        )


def geq(a: SecurityLevel, b: SecurityLevel) -> bool:
    """True iff a is at least as secret as b (reader-set inclusion a <= b)."""
    _check_universe(a, b)
    return a.readers <= b.readers


def meet(a: SecurityLevel, b: SecurityLevel) -> SecurityLevel:
    """Minimum of two values: the union of the reader sets."""
    _check_universe(a, b)
    return SecurityLevel(a.readers | b.readers, a.universe)


def join(a: SecurityLevel, b: SecurityLevel) -> SecurityLevel:
    """Maximum of two values: the intersection of the reader sets."""
    _check_universe(a, b)
    return SecurityLevel(a.readers & b.readers, a.universe)


def format_level(lv: SecurityLevel, ascii_only: bool = False) -> str:
    if lv.is_bottom():
        return "bottom" if ascii_only else "⊥"
    if lv.is_top():
        return "top" if ascii_only else "⊤"
    return "{" + ",".join(sorted(lv.readers)) + "}"


def parse_level(text: str, universe: Iterable[str]) -> SecurityLevel:
    """Parse a level written as 'bottom', 'top', their glyphs, or '{A,B}'."""
    u = frozenset(universe)
    body = text.strip()
    if body in ("bottom", "⊥"):
        return SecurityLevel(u, u)
    if body in ("top", "⊤"):
        return SecurityLevel(frozenset(), u)
    if body.startswith("{") and body.endswith("}"):
        inner = body[1:-1].strip()
        names = [n.strip() for n in inner.split(",")] if inner else []
        if any(not n for n in names):
            raise ValueError(f"malformed level set: {text!r}")
        return SecurityLevel(frozenset(names), u)
    raise ValueError(f"malformed security level: {text!r}")
