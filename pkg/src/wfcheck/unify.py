"""Sorted syntactic unification over the free message algebra.

Variables carry sorts; a nonce-sorted variable only binds nonce atoms or
nonce variables, likewise for key and identity sorts, while an any-sorted
variable binds anything.  The occurs check is included.  Failure is the
normal "not unifiable" outcome and is reported as None, not an exception.
"""

from __future__ import annotations

from .terms import Apply, Atom, Concat, Enc, Term, Variable, substitute, variables


def sort_admits(sort: str, t: Term) -> bool:
    """May a variable of this sort be bound to t (a non-variable term)?"""
    if sort == "any":
        return True
    return isinstance(t, Atom) and t.name.kind == sort


def _bind(subst: dict[str, Term], var: Variable, value: Term) -> bool:
    """Extend subst with var -> value, keeping it idempotent. False on failure."""
    value = substitute(value, subst)
    if value == var:
        return True
    if isinstance(value, Variable):
        if var.sort != value.sort and var.sort != "any":
            if value.sort == "any":
                var, value = value, var
            else:
                return False
    elif not sort_admits(var.sort, value):
        return False
    if var in variables(value):
        return False  # occurs check
    one = {var.name: value}
    try:
        for name in list(subst):
            subst[name] = substitute(subst[name], one)
    except ValueError:
        return False
    subst[var.name] = value
    return True


def unify_pairs(pairs: list[tuple[Term, Term]]) -> dict[str, Term] | None:
    """Most general unifier equalizing every pair, or None.

    The caller is expected to have renamed variable namespaces apart when
    the two sides must not share variables.
    """
    subst: dict[str, Term] = {}
    work = list(reversed(pairs))
    while work:
        a, b = work.pop()
        # A binding can violate a term invariant when applied (an enc key
        # receiving a compound image); that simply means "not unifiable".
        try:
            a = substitute(a, subst)
            b = substitute(b, subst)
        except ValueError:
            return None
        if a == b:
            continue
        if isinstance(a, Variable):
            if not _bind(subst, a, b):
                return None
        elif isinstance(b, Variable):
            if not _bind(subst, b, a):
                return None
        elif isinstance(a, Concat) and isinstance(b, Concat):
            if len(a.parts) != len(b.parts):
                return None
            work.extend(reversed(list(zip(a.parts, b.parts))))
        elif isinstance(a, Enc) and isinstance(b, Enc):
            work.append((a.key, b.key))
            work.append((a.body, b.body))
        elif isinstance(a, Apply) and isinstance(b, Apply):
            if a.fn != b.fn or len(a.args) != len(b.args):
                return None
            work.extend(reversed(list(zip(a.args, b.args))))
        else:
            return None
    return subst


def unify(t1: Term, t2: Term) -> dict[str, Term] | None:
    return unify_pairs([(t1, t2)])


def rename_apart(m: Term, suffix: str) -> Term:
    """Give every variable of m a fresh namespace by appending suffix."""
    if isinstance(m, Variable):
        return Variable(m.name + suffix, m.sort)
    if isinstance(m, (Atom,)):
        return m
    if isinstance(m, Concat):
        return Concat(tuple(rename_apart(p, suffix) for p in m.parts))
    if isinstance(m, Enc):
        return Enc(rename_apart(m.body, suffix), rename_apart(m.key, suffix))
    if isinstance(m, Apply):
        return Apply(m.fn, tuple(rename_apart(a, suffix) for a in m.args))
    raise TypeError(f"not a term: {m!r}")
