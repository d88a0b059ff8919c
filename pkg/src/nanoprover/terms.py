"""Abstract syntax of the object language.

Terms use named binders; substitution freshens binders on demand, so the
names students see in goals survive. Negation is not a constructor:
``~P`` is ``Pi("_", P, FalseP())``. Numerals are parser sugar, not term
variants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

PROP = "Prop"
TYPE = "Type"

ANON = "_"


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Const(Term):
    name: str


@dataclass(frozen=True)
class Sort(Term):
    kind: str  # PROP or TYPE


@dataclass(frozen=True)
class Pi(Term):
    binder: str
    domain: Term
    body: Term


@dataclass(frozen=True)
class Lam(Term):
    binder: str
    domain: Term
    body: Term


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Branch:
    ctor: str
    binders: Tuple[str, ...]
    body: Term


@dataclass(frozen=True)
class Match(Term):
    scrutinee: Term
    branches: Tuple[Branch, ...]
    return_type: Optional[Term] = None


@dataclass(frozen=True)
class And(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Or(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Ex(Term):
    binder: str
    domain: Term
    body: Term


@dataclass(frozen=True)
class Eq(Term):
    ty: Term
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class FalseP(Term):
    pass


@dataclass(frozen=True)
class TrueP(Term):
    pass


@dataclass(frozen=True)
class Hole(Term):
    """Unification placeholder (`_` in apply arguments); never escapes tactics."""

    uid: int


def neg(t: Term) -> Term:
    """~t, by definition t -> False."""
    return Pi(ANON, t, FalseP())


def as_neg(t: Term) -> Optional[Term]:
    if isinstance(t, Pi) and isinstance(t.body, FalseP):
        return t.domain
    return None


def imp(a: Term, b: Term) -> Term:
    return Pi(ANON, a, b)


def apps(fn: Term, *args: Term) -> Term:
    for a in args:
        fn = App(fn, a)
    return fn


def app_spine(t: Term) -> Tuple[Term, Tuple[Term, ...]]:
    """Peel applications: ``f a b`` -> (f, (a, b))."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    return t, tuple(reversed(args))


def free_vars(t: Term) -> FrozenSet[str]:
    out: set = set()
    _free_vars(t, frozenset(), out)
    return frozenset(out)


def _free_vars(t: Term, bound: FrozenSet[str], out: set) -> None:
    if isinstance(t, Var):
        if t.name not in bound:
            out.add(t.name)
    elif isinstance(t, (Pi, Lam, Ex)):
        _free_vars(t.domain, bound, out)
        _free_vars(t.body, bound | {t.binder}, out)
    elif isinstance(t, App):
        _free_vars(t.fn, bound, out)
        _free_vars(t.arg, bound, out)
    elif isinstance(t, Match):
        _free_vars(t.scrutinee, bound, out)
        if t.return_type is not None:
            _free_vars(t.return_type, bound, out)
        for br in t.branches:
            _free_vars(br.body, bound | set(br.binders), out)
    elif isinstance(t, (And, Or)):
        _free_vars(t.left, bound, out)
        _free_vars(t.right, bound, out)
    elif isinstance(t, Eq):
        _free_vars(t.ty, bound, out)
        _free_vars(t.lhs, bound, out)
        _free_vars(t.rhs, bound, out)
    # Var handled; Const/Sort/FalseP/TrueP/Hole have no variables


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """base, then base0, base1, ... first one not in avoid."""
    avoid = set(avoid)
    if base != ANON and base not in avoid:
        return base
    if base == ANON:
        base = "H"
    for i in itertools.count():
        cand = f"{base}{i}"
        if cand not in avoid:
            return cand
    raise AssertionError


def fresh_numbered(base: str, avoid: Iterable[str]) -> str:
    """base0, base1, ... — the scheme used when students omit names."""
    avoid = set(avoid)
    for i in itertools.count():
        cand = f"{base}{i}"
        if cand not in avoid:
            return cand
    raise AssertionError


def substitute(t: Term, x: str, v: Term) -> Term:
    """Capture-avoiding substitution of v for free occurrences of x."""
    return _subst(t, {x: v})


def substitute_many(t: Term, mapping: Dict[str, Term]) -> Term:
    return _subst(t, dict(mapping))


def _subst(t: Term, mapping: Dict[str, Term]) -> Term:
    if not mapping:
        return t
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, (Const, Sort, FalseP, TrueP, Hole)):
        return t
    if isinstance(t, App):
        return App(_subst(t.fn, mapping), _subst(t.arg, mapping))
    if isinstance(t, (And, Or)):
        return type(t)(_subst(t.left, mapping), _subst(t.right, mapping))
    if isinstance(t, Eq):
        return Eq(_subst(t.ty, mapping), _subst(t.lhs, mapping), _subst(t.rhs, mapping))
    if isinstance(t, (Pi, Lam, Ex)):
        dom = _subst(t.domain, mapping)
        binder, body, inner = _enter_binder(t.binder, t.body, mapping)
        return type(t)(binder, dom, _subst(body, inner))
    if isinstance(t, Match):
        scrut = _subst(t.scrutinee, mapping)
        ret = _subst(t.return_type, mapping) if t.return_type is not None else None
        branches = []
        for br in t.branches:
            names, body, inner = _enter_binders(br.binders, br.body, mapping)
            branches.append(Branch(br.ctor, names, _subst(body, inner)))
        return Match(scrut, tuple(branches), ret)
    raise TypeError(f"substitute: unknown term {t!r}")


def _enter_binder(binder: str, body: Term, mapping: Dict[str, Term]):
    """Drop shadowed entries and freshen the binder if a value captures it."""
    inner = {k: v for k, v in mapping.items() if k != binder}
    if binder != ANON and any(binder in free_vars(v) for v in inner.values()):
        taken = free_vars(body) | {binder}
        for v in inner.values():
            taken |= free_vars(v)
        newb = fresh_name(binder, taken)
        body = _subst(body, {binder: Var(newb)})
        return newb, body, inner
    return binder, body, inner


def _enter_binders(binders: Tuple[str, ...], body: Term, mapping: Dict[str, Term]):
    inner = {k: v for k, v in mapping.items() if k not in binders}
    needs = {b for b in binders
             if b != ANON and any(b in free_vars(v) for v in inner.values())}
    if not needs:
        return binders, body, inner
    taken = free_vars(body) | set(binders)
    for v in inner.values():
        taken |= free_vars(v)
    renaming = {}
    new_binders = []
    for b in binders:
        if b in needs:
            nb = fresh_name(b, taken)
            taken.add(nb)
            renaming[b] = Var(nb)
            new_binders.append(nb)
        else:
            new_binders.append(b)
    return tuple(new_binders), _subst(body, renaming), inner


def alpha_equal(t1: Term, t2: Term) -> bool:
    """Equality up to consistent renaming of bound names."""
    return _alpha(t1, t2, {}, {}, 0)


def _alpha(t1: Term, t2: Term, m1: Dict[str, int], m2: Dict[str, int], depth: int) -> bool:
    if type(t1) is not type(t2):
        return False
    if isinstance(t1, Var):
        b1, b2 = m1.get(t1.name), m2.get(t2.name)
        if b1 is None and b2 is None:
            return t1.name == t2.name
        return b1 == b2
    if isinstance(t1, Const):
        return t1.name == t2.name
    if isinstance(t1, Sort):
        return t1.kind == t2.kind
    if isinstance(t1, Hole):
        return t1.uid == t2.uid
    if isinstance(t1, (FalseP, TrueP)):
        return True
    if isinstance(t1, App):
        return _alpha(t1.fn, t2.fn, m1, m2, depth) and _alpha(t1.arg, t2.arg, m1, m2, depth)
    if isinstance(t1, (And, Or)):
        return (_alpha(t1.left, t2.left, m1, m2, depth)
                and _alpha(t1.right, t2.right, m1, m2, depth))
    if isinstance(t1, Eq):
        return (_alpha(t1.ty, t2.ty, m1, m2, depth)
                and _alpha(t1.lhs, t2.lhs, m1, m2, depth)
                and _alpha(t1.rhs, t2.rhs, m1, m2, depth))
    if isinstance(t1, (Pi, Lam, Ex)):
        if not _alpha(t1.domain, t2.domain, m1, m2, depth):
            return False
        n1 = {**m1, t1.binder: depth} if t1.binder != ANON else m1
        n2 = {**m2, t2.binder: depth} if t2.binder != ANON else m2
        return _alpha(t1.body, t2.body, n1, n2, depth + 1)
    if isinstance(t1, Match):
        if len(t1.branches) != len(t2.branches):
            return False
        if not _alpha(t1.scrutinee, t2.scrutinee, m1, m2, depth):
            return False
        if (t1.return_type is None) != (t2.return_type is None):
            return False
        if t1.return_type is not None and not _alpha(t1.return_type, t2.return_type, m1, m2, depth):
            return False
        for b1, b2 in zip(t1.branches, t2.branches):
            if b1.ctor != b2.ctor or len(b1.binders) != len(b2.binders):
                return False
            n1, n2, d = dict(m1), dict(m2), depth
            for x1, x2 in zip(b1.binders, b2.binders):
                if x1 != ANON:
                    n1[x1] = d
                if x2 != ANON:
                    n2[x2] = d
                d += 1
            if not _alpha(b1.body, b2.body, n1, n2, d):
                return False
        return True
    raise TypeError(f"alpha_equal: unknown term {t1!r}")


def contains(t: Term, sub: Term) -> bool:
    """Does sub occur (alpha-equal) anywhere in t?"""
    if alpha_equal(t, sub):
        return True
    return any(contains(c, sub) for c in _children(t))


def _children(t: Term):
    if isinstance(t, App):
        return (t.fn, t.arg)
    if isinstance(t, (Pi, Lam, Ex)):
        return (t.domain, t.body)
    if isinstance(t, (And, Or)):
        return (t.left, t.right)
    if isinstance(t, Eq):
        return (t.ty, t.lhs, t.rhs)
    if isinstance(t, Match):
        extra = (t.return_type,) if t.return_type is not None else ()
        return (t.scrutinee, *extra, *(b.body for b in t.branches))
    return ()


def replace_term(t: Term, old: Term, new: Term) -> Term:
    """Replace every alpha-equal occurrence of old by new.

    Occurrences under binders that capture a free variable of old are left
    alone (they denote something else).
    """
    fv = free_vars(old)

    def go(u: Term) -> Term:
        if alpha_equal(u, old):
            return new
        if isinstance(u, (Var, Const, Sort, FalseP, TrueP, Hole)):
            return u
        if isinstance(u, App):
            return App(go(u.fn), go(u.arg))
        if isinstance(u, (And, Or)):
            return type(u)(go(u.left), go(u.right))
        if isinstance(u, Eq):
            return Eq(go(u.ty), go(u.lhs), go(u.rhs))
        if isinstance(u, (Pi, Lam, Ex)):
            dom = go(u.domain)
            body = u.body if u.binder in fv else go(u.body)
            return type(u)(u.binder, dom, body)
        if isinstance(u, Match):
            scrut = go(u.scrutinee)
            ret = go(u.return_type) if u.return_type is not None else None
            brs = tuple(
                br if (set(br.binders) & fv) else Branch(br.ctor, br.binders, go(br.body))
                for br in u.branches)
            return Match(scrut, brs, ret)
        raise TypeError(f"replace_term: unknown term {u!r}")

    return go(t)


_hole_counter = itertools.count()


def fresh_hole() -> Hole:
    return Hole(next(_hole_counter))
