"""Reduction: beta, iota, fixpoint unfolding; convertibility; clash analysis.

``normalize`` is what the simpl tactic does: run the three computation rules
to a normal form. Plain definitions are deliberately opaque here; expanding
them is the unfold tactic's job (``delta_unfold``). A separate single-step
interface (``find_redexes`` / ``reduce_at`` / ``normalize_trace``) exists so
tests can replay traces and permute reduction order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .env import Definition, Environment, Fixpoint
from .errors import NotUnfoldable
from .terms import (
    And, App, Branch, Const, Eq, Ex, FalseP, Hole, Lam, Match, Or, Pi, Sort,
    Term, TrueP, Var, alpha_equal, app_spine, apps, substitute,
    substitute_many,
)

Path = Tuple[int, ...]

BETA = "beta"
IOTA = "iota"
FIX = "fix-unfold"
DELTA = "delta"


@dataclass(frozen=True)
class ReductionTrace:
    initial: Term
    steps: Tuple[Tuple[str, Path], ...]
    final: Term


def is_constructor_headed(env: Environment, t: Term) -> bool:
    head, _ = app_spine(t)
    return isinstance(head, Const) and env.constructor(head.name) is not None


def _fix_unfold(env: Environment, t: Term) -> Optional[Term]:
    """Unfold a fully-applied fixpoint whose decreasing argument is constructor-headed."""
    head, args = app_spine(t)
    if not isinstance(head, Const):
        return None
    decl = env.lookup(head.name)
    if not isinstance(decl, Fixpoint):
        return None
    k = len(decl.params)
    if len(args) < k:
        return None
    if not is_constructor_headed(env, args[decl.dec_index]):
        return None
    body = substitute_many(
        decl.body, {p: a for (p, _), a in zip(decl.params, args[:k])})
    return apps(body, *args[k:])


def _iota(env: Environment, t: Match) -> Optional[Term]:
    head, args = app_spine(t.scrutinee)
    if not isinstance(head, Const):
        return None
    ctor = env.constructor(head.name)
    if ctor is None:
        return None
    for br in t.branches:
        if br.ctor == head.name:
            if len(br.binders) != len(args):
                return None
            return substitute_many(br.body, dict(zip(br.binders, args)))
    return None


def normalize(env: Environment, t: Term, fix_enabled: bool = True) -> Term:
    if isinstance(t, (Var, Const, Sort, FalseP, TrueP, Hole)):
        return t
    if isinstance(t, App):
        fn = normalize(env, t.fn, fix_enabled)
        arg = normalize(env, t.arg, fix_enabled)
        if isinstance(fn, Lam):
            return normalize(env, substitute(fn.body, fn.binder, arg), fix_enabled)
        res = App(fn, arg)
        if fix_enabled:
            unfolded = _fix_unfold(env, res)
            if unfolded is not None:
                return normalize(env, unfolded, fix_enabled)
        return res
    if isinstance(t, Match):
        scrut = normalize(env, t.scrutinee, fix_enabled)
        m = Match(scrut, t.branches, t.return_type)
        fired = _iota(env, m)
        if fired is not None:
            return normalize(env, fired, fix_enabled)
        branches = tuple(
            Branch(b.ctor, b.binders, normalize(env, b.body, fix_enabled))
            for b in t.branches)
        ret = normalize(env, t.return_type, fix_enabled) if t.return_type is not None else None
        return Match(scrut, branches, ret)
    if isinstance(t, (Pi, Lam, Ex)):
        return type(t)(t.binder, normalize(env, t.domain, fix_enabled),
                       normalize(env, t.body, fix_enabled))
    if isinstance(t, (And, Or)):
        return type(t)(normalize(env, t.left, fix_enabled),
                       normalize(env, t.right, fix_enabled))
    if isinstance(t, Eq):
        return Eq(normalize(env, t.ty, fix_enabled),
                  normalize(env, t.lhs, fix_enabled),
                  normalize(env, t.rhs, fix_enabled))
    raise TypeError(f"normalize: unknown term {t!r}")


def convertible(env: Environment, t1: Term, t2: Term) -> bool:
    return alpha_equal(normalize(env, t1), normalize(env, t2))


# --- single-step interface ----------------------------------------------

def _children(t: Term) -> List[Term]:
    if isinstance(t, App):
        return [t.fn, t.arg]
    if isinstance(t, (Pi, Lam, Ex)):
        return [t.domain, t.body]
    if isinstance(t, (And, Or)):
        return [t.left, t.right]
    if isinstance(t, Eq):
        return [t.ty, t.lhs, t.rhs]
    if isinstance(t, Match):
        out = [t.scrutinee] + [b.body for b in t.branches]
        if t.return_type is not None:
            out.append(t.return_type)
        return out
    return []


def _rebuild(t: Term, idx: int, new: Term) -> Term:
    if isinstance(t, App):
        return App(new, t.arg) if idx == 0 else App(t.fn, new)
    if isinstance(t, (Pi, Lam, Ex)):
        return type(t)(t.binder, new, t.body) if idx == 0 else type(t)(t.binder, t.domain, new)
    if isinstance(t, (And, Or)):
        return type(t)(new, t.right) if idx == 0 else type(t)(t.left, new)
    if isinstance(t, Eq):
        parts = [t.ty, t.lhs, t.rhs]
        parts[idx] = new
        return Eq(*parts)
    if isinstance(t, Match):
        n = len(t.branches)
        if idx == 0:
            return Match(new, t.branches, t.return_type)
        if 1 <= idx <= n:
            b = t.branches[idx - 1]
            brs = t.branches[:idx - 1] + (Branch(b.ctor, b.binders, new),) + t.branches[idx:]
            return Match(t.scrutinee, brs, t.return_type)
        return Match(t.scrutinee, t.branches, new)
    raise TypeError(f"_rebuild: {t!r} has no children")


def _redex_rule(env: Environment, t: Term) -> Optional[str]:
    if isinstance(t, App):
        if isinstance(t.fn, Lam):
            return BETA
        if _fix_unfold(env, t) is not None:
            return FIX
    if isinstance(t, Match) and _iota(env, t) is not None:
        return IOTA
    return None


def find_redexes(env: Environment, t: Term, path: Path = ()) -> List[Tuple[str, Path]]:
    """All enabled redexes, DFS preorder (first entry is leftmost-outermost)."""
    out = []
    rule = _redex_rule(env, t)
    if rule is not None:
        out.append((rule, path))
    for i, c in enumerate(_children(t)):
        out.extend(find_redexes(env, c, path + (i,)))
    return out


def reduce_at(env: Environment, t: Term, path: Path, rule: str) -> Term:
    if path:
        idx, rest = path[0], path[1:]
        children = _children(t)
        return _rebuild(t, idx, reduce_at(env, children[idx], rest, rule))
    if rule == BETA and isinstance(t, App) and isinstance(t.fn, Lam):
        return substitute(t.fn.body, t.fn.binder, t.arg)
    if rule == FIX:
        unfolded = _fix_unfold(env, t)
        if unfolded is not None:
            return unfolded
    if rule == IOTA and isinstance(t, Match):
        fired = _iota(env, t)
        if fired is not None:
            return fired
    raise ValueError(f"rule {rule} not enabled at this position")


def normalize_trace(env: Environment, t: Term, max_steps: int = 20000) -> ReductionTrace:
    """Leftmost-outermost single-stepping; the watchdog must never trip."""
    initial = t
    steps: List[Tuple[str, Path]] = []
    for _ in range(max_steps):
        redexes = find_redexes(env, t)
        if not redexes:
            return ReductionTrace(initial, tuple(steps), t)
        rule, path = redexes[0]
        t = reduce_at(env, t, path, rule)
        steps.append((rule, path))
    raise RuntimeError("normalize_trace watchdog tripped; non-terminating reduction?")


# --- discriminate support -------------------------------------------------

def constructor_clash(env: Environment, lhs: Term, rhs: Term) -> Optional[Path]:
    """First position where head constructors differ, or None.

    Descends only while both sides are constructor-headed with the same
    head; stuck or variable positions are not decidable syntactically.
    """
    h1, args1 = app_spine(lhs)
    h2, args2 = app_spine(rhs)
    if not (isinstance(h1, Const) and env.constructor(h1.name) is not None):
        return None
    if not (isinstance(h2, Const) and env.constructor(h2.name) is not None):
        return None
    if h1.name != h2.name:
        return ()
    if len(args1) != len(args2):
        return None
    for i, (a, b) in enumerate(zip(args1, args2)):
        sub = constructor_clash(env, a, b)
        if sub is not None:
            return (i,) + sub
    return None


# --- unfold support -------------------------------------------------------

def delta_unfold(env: Environment, name: str, t: Term) -> Term:
    """Expand a definition everywhere in t, then clean up with beta/iota."""
    decl = env.lookup(name)
    if decl is None and env.constructor(name) is not None:
        raise NotUnfoldable(f"{name} is a constructor; it has no definition to unfold")
    if decl is None:
        raise NotUnfoldable(f"unknown identifier {name}")
    if not isinstance(decl, Definition):
        what = type(decl).__name__.lower()
        raise NotUnfoldable(f"{name} is a {what}, not a definition")
    expanded = _replace_const(t, name, decl.body)
    return normalize(env, expanded, fix_enabled=False)


def _replace_const(t: Term, name: str, body: Term) -> Term:
    if isinstance(t, Const):
        return body if t.name == name else t
    if isinstance(t, (Var, Sort, FalseP, TrueP, Hole)):
        return t
    if isinstance(t, App):
        return App(_replace_const(t.fn, name, body), _replace_const(t.arg, name, body))
    if isinstance(t, (Pi, Lam, Ex)):
        return type(t)(t.binder, _replace_const(t.domain, name, body),
                       _replace_const(t.body, name, body))
    if isinstance(t, (And, Or)):
        return type(t)(_replace_const(t.left, name, body),
                       _replace_const(t.right, name, body))
    if isinstance(t, Eq):
        return Eq(_replace_const(t.ty, name, body),
                  _replace_const(t.lhs, name, body),
                  _replace_const(t.rhs, name, body))
    if isinstance(t, Match):
        ret = _replace_const(t.return_type, name, body) if t.return_type is not None else None
        return Match(
            _replace_const(t.scrutinee, name, body),
            tuple(Branch(b.ctor, b.binders, _replace_const(b.body, name, body))
                  for b in t.branches),
            ret)
    raise TypeError(f"_replace_const: unknown term {t!r}")
