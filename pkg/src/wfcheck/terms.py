"""Message algebra for protocol analysis.

Terms are atoms (identities, nonces, keys, constants), variables, n-ary
concatenations, encryptions and opaque function applications such as
pred(Nb) for "Nb - 1".  All values are immutable and kept canonical:
concatenations are flattened and never nest, and an encryption key is
always a key atom or a variable.

Alongside the constructors the module provides the structural operations
the witness computation is built from: atom and identity extraction,
variable stripping, substitution, and text formatting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal, Mapping, Optional

Kind = Literal["identity", "nonce", "key", "constant"]
Sort = Literal["identity", "nonce", "key", "any"]

# Opaque function symbols the algebra knows about.  pred models the
# "decrement a nonce" operation; it has no equations, the analysis only
# needs to see through it for atom containment.
OPAQUE_FNS: dict[str, int] = {"pred": 1}

# Marker symbol for the inverse of a key that is only known as a variable.
INV_FN = "inv"


@dataclass(frozen=True)
class AtomName:
    """Name of an atomic message.

    The optional session index is the superscript of fresh data in a
    generalized role (Na^i); only fresh kinds (nonce, key) may carry one.
    Security-level lookup ignores it.
    """

    kind: Kind
    base: str
    session: str | None = None

    def __post_init__(self) -> None:
        if self.session is not None and self.kind not in ("nonce", "key"):
            raise ValueError(f"session index on non-fresh atom kind {self.kind!r}: {self.base}")

    def __str__(self) -> str:
        return self.base if self.session is None else f"{self.base}^{self.session}"


class Term:
    """Base class for all message terms."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Term):
    name: AtomName

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True)
class Variable(Term):
    name: str
    sort: Sort = "any"

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True)
class Concat(Term):
    parts: tuple[Term, ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("concatenation needs at least two parts")
        if any(isinstance(p, Concat) for p in self.parts):
            raise ValueError("nested concatenation; use concat() to build terms")

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True)
class Enc(Term):
    body: Term
    key: Term

    def __post_init__(self) -> None:
        if isinstance(self.key, Atom):
            if self.key.name.kind != "key":
                raise ValueError(f"encryption key must be a key atom, got {self.key}")
        elif isinstance(self.key, Variable):
            if self.key.sort not in ("key", "any"):
                raise ValueError(f"encryption key variable must have key sort, got {self.key}")
        else:
            raise ValueError("encryption key must be a key atom or a variable")

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True)
class Apply(Term):
    fn: str
    args: tuple[Term, ...]

    def __str__(self) -> str:
        return format_term(self)


# Substitutions map variable names to terms.
Substitution = Mapping[str, Term]


def atom(kind: Kind, base: str, session: str | None = None) -> Atom:
    return Atom(AtomName(kind, base, session))


def identity(base: str) -> Atom:
    return atom("identity", base)


def nonce(base: str, session: str | None = None) -> Atom:
    return atom("nonce", base, session)


def key(base: str, session: str | None = None) -> Atom:
    return atom("key", base, session)


def constant(base: str) -> Atom:
    return atom("constant", base)


def concat(parts: Iterator[Term] | tuple[Term, ...] | list[Term]) -> Term:
    """Build a canonical concatenation: flatten nested ones, collapse singletons."""
    flat: list[Term] = []
    for p in parts:
        if isinstance(p, Concat):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if not flat:
        raise ValueError("empty concatenation")
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def pred(arg: Term) -> Apply:
    return Apply("pred", (arg,))


def atoms(m: Term, include_key_positions: bool = False) -> frozenset[AtomName]:
    """All atom names occurring in m.

    By default an atom occurring only as the key of an encryption is
    excluded: seeing {m}k does not transmit k.
    """
    found: set[AtomName] = set()

    def walk(t: Term) -> None:
        if isinstance(t, Atom):
            found.add(t.name)
        elif isinstance(t, Concat):
            for p in t.parts:
                walk(p)
        elif isinstance(t, Enc):
            walk(t.body)
            if include_key_positions:
                walk(t.key)
        elif isinstance(t, Apply):
            for a in t.args:
                walk(a)

    walk(m)
    return frozenset(found)


def identities(m: Term) -> frozenset[AtomName]:
    """All identity atoms occurring anywhere in m, nested encryptions included."""
    return frozenset(a for a in atoms(m, include_key_positions=True) if a.kind == "identity")


def variables(m: Term, include_key_positions: bool = True) -> frozenset[Variable]:
    found: set[Variable] = set()

    def walk(t: Term) -> None:
        if isinstance(t, Variable):
            found.add(t)
        elif isinstance(t, Concat):
            for p in t.parts:
                walk(p)
        elif isinstance(t, Enc):
            walk(t.body)
            if include_key_positions:
                walk(t.key)
        elif isinstance(t, Apply):
            for a in t.args:
                walk(a)

    walk(m)
    return frozenset(found)


def iter_subjects(m: Term, include_key_positions: bool = False) -> Iterator[Atom | Variable]:
    """Atoms and variables of m in left-to-right order, one yield per occurrence.

    Key positions are skipped unless requested, mirroring atoms().
    """
    if isinstance(m, (Atom, Variable)):
        yield m
    elif isinstance(m, Concat):
        for p in m.parts:
            yield from iter_subjects(p, include_key_positions)
    elif isinstance(m, Enc):
        yield from iter_subjects(m.body, include_key_positions)
        if include_key_positions:
            yield from iter_subjects(m.key, include_key_positions)
    elif isinstance(m, Apply):
        for a in m.args:
            yield from iter_subjects(a, include_key_positions)


def occurs_in(subject: Atom | Variable, m: Term) -> bool:
    """True iff subject occurs in m outside key positions."""
    return any(s == subject for s in iter_subjects(m))


def strip_variables(m: Term, keep: Variable | None = None) -> Optional[Term]:
    """Delete every variable of m except keep; None when nothing remains.

    Deleting a concatenation child shortens the sequence and a one-element
    remainder collapses; an encryption whose body vanishes is deleted; an
    encryption whose KEY is a deleted variable loses the wrapper but keeps
    its stripped body (a variable key protects nothing).  An application
    with a deleted argument vanishes entirely.
    """
    if isinstance(m, Variable):
        return m if m == keep else None
    if isinstance(m, Atom):
        return m
    if isinstance(m, Concat):
        kept = [s for p in m.parts if (s := strip_variables(p, keep)) is not None]
        if not kept:
            return None
        return concat(kept)
    if isinstance(m, Enc):
        body = strip_variables(m.body, keep)
        if isinstance(m.key, Variable) and m.key != keep:
            return body
        if body is None:
            return None
        return Enc(body, m.key)
    if isinstance(m, Apply):
        stripped = []
        for a in m.args:
            sa = strip_variables(a, keep)
            if sa is None:
                return None
            stripped.append(sa)
        return Apply(m.fn, tuple(stripped))
    raise TypeError(f"not a term: {m!r}")


def substitute(m: Term, subst: Substitution) -> Term:
    """Replace every mapped variable by its image, re-canonicalizing."""
    if isinstance(m, Variable):
        return subst.get(m.name, m)
    if isinstance(m, Atom):
        return m
    if isinstance(m, Concat):
        return concat([substitute(p, subst) for p in m.parts])
    if isinstance(m, Enc):
        return Enc(substitute(m.body, subst), substitute(m.key, subst))
    if isinstance(m, Apply):
        return Apply(m.fn, tuple(substitute(a, subst) for a in m.args))
    raise TypeError(f"not a term: {m!r}")


def strip_sessions(m: Term) -> Term:
    """Drop all session indices, turning Na^i back into Na."""
    if isinstance(m, Atom):
        if m.name.session is None:
            return m
        return Atom(AtomName(m.name.kind, m.name.base))
    if isinstance(m, Variable):
        return m
    if isinstance(m, Concat):
        return concat([strip_sessions(p) for p in m.parts])
    if isinstance(m, Enc):
        return Enc(strip_sessions(m.body), strip_sessions(m.key))
    if isinstance(m, Apply):
        return Apply(m.fn, tuple(strip_sessions(a) for a in m.args))
    raise TypeError(f"not a term: {m!r}")


def format_term(m: Term) -> str:
    """Canonical text form: A.B.Na, {body}key, pred(t), Na^i."""
    if isinstance(m, Atom):
        return str(m.name)
    if isinstance(m, Variable):
        return m.name
    if isinstance(m, Concat):
        return ".".join(format_term(p) for p in m.parts)
    if isinstance(m, Enc):
        return "{" + format_term(m.body) + "}" + format_term(m.key)
    if isinstance(m, Apply):
        return m.fn + "(" + ",".join(format_term(a) for a in m.args) + ")"
    raise TypeError(f"not a term: {m!r}")
