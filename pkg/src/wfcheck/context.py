"""Verification context: agent universe, atom security levels, key readers,
key inverses and freshness declarations.

The level map is a partial function; an atom without a declared level is a
first-class "undefined" outcome (None), consumed by the theorem check.  The
distinguished intruder is always part of the agent universe, so the bottom
level (public) includes it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .lattice import SecurityLevel
from .terms import INV_FN, Apply, Atom, AtomName, Term, Variable

INTRUDER = "I"


class UnknownKeyError(Exception):
    """A key atom was used that the context does not declare."""


class _UnknownReaders:
    """Reader set of a key only known through a variable: unknowable."""

    _instance: "_UnknownReaders | None" = None

    def __new__(cls) -> "_UnknownReaders":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNKNOWN_READERS"


UNKNOWN_READERS = _UnknownReaders()


@dataclass(frozen=True)
class Context:
    agents: frozenset[str]
    levels: Mapping[str, SecurityLevel]
    key_readers: Mapping[str, frozenset[str]]
    key_inverses: Mapping[str, str]
    fresh_by: Mapping[str, tuple[str, int]] = field(default_factory=dict)
    intruder: str = INTRUDER


def level_of(ctx: Context, name: AtomName) -> SecurityLevel | None:
    """Declared level of an atom, looked up session-blind; None if undeclared."""
    return ctx.levels.get(name.base)


def inverse_key(ctx: Context, k: Term) -> Term:
    """The reverse form of a key; symmetric keys are their own inverse.

    For a key known only as a variable the result is an opaque inv(...)
    marker whose reader set is unknowable; applying inverse_key to the
    marker returns the variable, keeping the involution law.
    """
    if isinstance(k, Apply) and k.fn == INV_FN and len(k.args) == 1:
        return k.args[0]
    if isinstance(k, Variable):
        return Apply(INV_FN, (k,))
    if isinstance(k, Atom) and k.name.kind == "key":
        inv_base = ctx.key_inverses.get(k.name.base)
        if inv_base is None:
            raise UnknownKeyError(f"key {k.name.base} is not declared in the context")
        return Atom(AtomName("key", inv_base, k.name.session))
    raise ValueError(f"not a key term: {k}")


def readers_of_inverse(ctx: Context, k: Term) -> SecurityLevel | _UnknownReaders:
    """Reader set of k's inverse, as a level; UNKNOWN_READERS for variable keys."""
    if isinstance(k, Variable) or (isinstance(k, Apply) and k.fn == INV_FN):
        return UNKNOWN_READERS
    inv = inverse_key(ctx, k)
    assert isinstance(inv, Atom)
    readers = ctx.key_readers.get(inv.name.base)
    if readers is None:
        raise UnknownKeyError(f"no reader set declared for key {inv.name.base}")
    return SecurityLevel(readers, ctx.agents)


def validate(ctx: Context, num_steps: int | None = None) -> list[str]:
    """Diagnostics for every violated context invariant; empty when sound."""
    problems: list[str] = []
    if ctx.intruder not in ctx.agents:
        problems.append(f"intruder {ctx.intruder} missing from the agent universe")

    for atom_base, lv in ctx.levels.items():
        extra = lv.readers - ctx.agents
        if extra:
            problems.append(
                f"level of {atom_base} names unknown agents: {', '.join(sorted(extra))}"
            )
        if lv.universe != ctx.agents:
            problems.append(f"level of {atom_base} uses a foreign universe")

    for key_base, readers in ctx.key_readers.items():
        extra = readers - ctx.agents
        if extra:
            problems.append(
                f"readers of {key_base} name unknown agents: {', '.join(sorted(extra))}"
            )
        if ctx.intruder in readers and key_base not in ctx.fresh_by:
            problems.append(f"intruder holds long-term key {key_base}")

    for k, inv in ctx.key_inverses.items():
        if inv not in ctx.key_inverses or ctx.key_inverses[inv] != k:
            problems.append(f"key inverses are not an involution at {k} -> {inv}")
        if k not in ctx.key_readers:
            problems.append(f"key {k} has an inverse but no reader set")

    for atom_base, (creator, step) in ctx.fresh_by.items():
        if creator not in ctx.agents:
            problems.append(f"fresh atom {atom_base} created by unknown agent {creator}")
        if step < 1 or (num_steps is not None and step > num_steps):
            problems.append(f"fresh atom {atom_base} created at unknown step {step}")

    return problems
