"""The typing judgment for the educational fragment.

Two sorts only: Prop is impredicative, Type is one predicative level above
it. Formulas are exactly the terms whose type is Prop. The checker fails
rather than guessing on anything ill-typed.
"""

from __future__ import annotations

from typing import Optional, Tuple

from .env import Environment
from .errors import IllTypedApplication, TypingError, UnboundName, UniverseViolation
from .terms import (
    And, App, Const, Eq, Ex, FalseP, Hole, Lam, Match, Or, PROP, Pi, Sort,
    Term, TrueP, TYPE, Var, substitute,
)

Ctx = Tuple[Tuple[str, Term], ...]


def ctx_lookup(ctx: Ctx, name: str) -> Optional[Term]:
    for n, t in reversed(ctx):
        if n == name:
            return t
    return None


def _show(env: Environment, t: Term) -> str:
    from .pretty import pretty_print  # local import: pretty sits above this module
    return pretty_print(env, t)


def type_of(env: Environment, ctx: Ctx, t: Term) -> Term:
    if isinstance(t, Var):
        ty = ctx_lookup(ctx, t.name)
        if ty is None:
            raise UnboundName(f"unknown identifier {t.name}")
        return ty
    if isinstance(t, Const):
        return env.const_type(t.name)
    if isinstance(t, Sort):
        if t.kind == PROP:
            return Sort(TYPE)
        raise UniverseViolation("Type has no type in this fragment")
    if isinstance(t, Pi):
        sort_of(env, ctx, t.domain)
        body_sort = sort_of(env, ctx + ((t.binder, t.domain),), t.body)
        return Sort(PROP) if body_sort == PROP else Sort(TYPE)
    if isinstance(t, Lam):
        sort_of(env, ctx, t.domain)
        body_ty = type_of(env, ctx + ((t.binder, t.domain),), t.body)
        return Pi(t.binder, t.domain, body_ty)
    if isinstance(t, App):
        fn_ty = type_of(env, ctx, t.fn)
        if not isinstance(fn_ty, Pi):
            fn_ty = _normalize(env, fn_ty)
        if not isinstance(fn_ty, Pi):
            raise IllTypedApplication(
                f"{_show(env, t.fn)} is not a function, it has type {_show(env, fn_ty)}")
        arg_ty = type_of(env, ctx, t.arg)
        if not _convertible(env, arg_ty, fn_ty.domain):
            raise IllTypedApplication(
                f"argument {_show(env, t.arg)} has type {_show(env, arg_ty)} "
                f"but {_show(env, fn_ty.domain)} was expected")
        return substitute(fn_ty.body, fn_ty.binder, t.arg)
    if isinstance(t, Match):
        return _type_of_match(env, ctx, t)
    if isinstance(t, (And, Or)):
        _require_prop(env, ctx, t.left)
        _require_prop(env, ctx, t.right)
        return Sort(PROP)
    if isinstance(t, Ex):
        sort_of(env, ctx, t.domain)
        _require_prop(env, ctx + ((t.binder, t.domain),), t.body)
        return Sort(PROP)
    if isinstance(t, Eq):
        lhs_ty = type_of(env, ctx, t.lhs)
        rhs_ty = type_of(env, ctx, t.rhs)
        if not _convertible(env, lhs_ty, t.ty) or not _convertible(env, rhs_ty, t.ty):
            raise TypingError(
                f"equality between {_show(env, lhs_ty)} and {_show(env, rhs_ty)} "
                f"at type {_show(env, t.ty)} is ill-formed")
        return Sort(PROP)
    if isinstance(t, (FalseP, TrueP)):
        return Sort(PROP)
    if isinstance(t, Hole):
        raise TypingError("unresolved hole")
    raise TypingError(f"cannot type {t!r}")


def _type_of_match(env: Environment, ctx: Ctx, t: Match) -> Term:
    scrut_ty = type_of(env, ctx, t.scrutinee)
    scrut_ty = _normalize(env, scrut_ty)
    if not isinstance(scrut_ty, Const) or env.inductive(scrut_ty.name) is None:
        raise TypingError(f"match scrutinee has non-inductive type {_show(env, scrut_ty)}")
    ind = env.inductive(scrut_ty.name)
    if len(t.branches) != len(ind.constructors) or any(
            br.ctor != cname for br, (cname, _) in zip(t.branches, ind.constructors)):
        raise TypingError(
            f"match on {ind.name} must cover constructors "
            f"{', '.join(c for c, _ in ind.constructors)} in order")
    result: Optional[Term] = t.return_type
    for br, (_, arg_tys) in zip(t.branches, ind.constructors):
        if len(br.binders) != len(arg_tys):
            raise TypingError(
                f"branch {br.ctor} binds {len(br.binders)} names, expected {len(arg_tys)}")
        inner = ctx + tuple(zip(br.binders, arg_tys))
        bty = type_of(env, inner, br.body)
        if result is None:
            result = bty
        elif not _convertible(env, bty, result):
            raise TypingError(
                f"branch {br.ctor} has type {_show(env, bty)}, "
                f"expected {_show(env, result)}")
    assert result is not None
    return result


def sort_of(env: Environment, ctx: Ctx, t: Term) -> str:
    """The sort a type lives in; errors when t is not a type."""
    ty = type_of(env, ctx, t)
    if not isinstance(ty, Sort):
        ty = _normalize(env, ty)
    if isinstance(ty, Sort):
        return ty.kind
    raise TypingError(f"{_show(env, t)} is not a type (its type is {_show(env, ty)})")


def _require_prop(env: Environment, ctx: Ctx, t: Term) -> None:
    if sort_of(env, ctx, t) != PROP:
        raise TypingError(f"{_show(env, t)} is not a proposition")


def is_prop(env: Environment, ctx: Ctx, t: Term) -> bool:
    try:
        return sort_of(env, ctx, t) == PROP
    except TypingError:
        return False


def _normalize(env: Environment, t: Term) -> Term:
    from .reduction import normalize
    return normalize(env, t)


def _convertible(env: Environment, a: Term, b: Term) -> bool:
    from .reduction import convertible
    return convertible(env, a, b)
