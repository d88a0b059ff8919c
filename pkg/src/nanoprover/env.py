"""Global declarations: inductives, fixpoints, definitions, axioms, lemmas.

Environments are immutable; extending one returns a new value, which is what
makes per-sentence checkpointing in the stepping service trivial.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Optional, Tuple

from .errors import DuplicateName, UnboundName
from .terms import ANON, And, Const, Lam, Pi, PROP, Sort, Term, Var


@dataclass(frozen=True)
class Inductive:
    name: str
    sort: str
    # constructor name -> argument types (first-order: each a declared type or the inductive)
    constructors: Tuple[Tuple[str, Tuple[Term, ...]], ...]


@dataclass(frozen=True)
class Fixpoint:
    name: str
    params: Tuple[Tuple[str, Term], ...]
    ret_type: Term
    dec_index: int
    body: Term  # in scope of params


@dataclass(frozen=True)
class Definition:
    name: str
    body: Term
    ty: Term


@dataclass(frozen=True)
class Axiom:
    name: str
    statement: Term


@dataclass(frozen=True)
class Lemma:
    name: str
    statement: Term
    proved: bool


Declaration = object  # union of the five payloads above


@dataclass(frozen=True)
class Environment:
    decls: Tuple[Declaration, ...] = ()
    classical_enabled: bool = False
    printing_parentheses: bool = False
    theories: FrozenSet[str] = frozenset()
    _index: Dict[str, Declaration] = field(default_factory=dict, compare=False, repr=False)
    _ctors: Dict[str, Tuple[str, Tuple[Term, ...]]] = field(
        default_factory=dict, compare=False, repr=False)

    def lookup(self, name: str) -> Optional[Declaration]:
        return self._index.get(name)

    def constructor(self, name: str) -> Optional[Tuple[str, Tuple[Term, ...]]]:
        """(inductive name, argument types) when name is a constructor."""
        return self._ctors.get(name)

    def inductive(self, name: str) -> Optional[Inductive]:
        d = self._index.get(name)
        return d if isinstance(d, Inductive) else None

    def has(self, name: str) -> bool:
        return name in self._index or name in self._ctors

    def add(self, decl: Declaration) -> "Environment":
        name = decl.name
        if self.has(name):
            raise DuplicateName(f"{name} is already declared")
        index = dict(self._index)
        index[name] = decl
        ctors = dict(self._ctors)
        if isinstance(decl, Inductive):
            for cname, args in decl.constructors:
                if cname in index or cname in ctors:
                    raise DuplicateName(f"{cname} is already declared")
                ctors[cname] = (decl.name, args)
        return replace(self, decls=self.decls + (decl,), _index=index, _ctors=ctors)

    def with_flag(self, **flags) -> "Environment":
        return replace(self, **flags)

    def with_theory(self, name: str) -> "Environment":
        return replace(self, theories=self.theories | {name})

    def const_type(self, name: str) -> Term:
        """Type of a global constant (declaration or constructor)."""
        d = self._index.get(name)
        if isinstance(d, Inductive):
            return Sort(d.sort)
        if isinstance(d, Fixpoint):
            t = d.ret_type
            for pname, pty in reversed(d.params):
                t = Pi(pname, pty, t)
            return t
        if isinstance(d, Definition):
            return d.ty
        if isinstance(d, Axiom):
            return d.statement
        if isinstance(d, Lemma):
            return d.statement
        c = self._ctors.get(name)
        if c is not None:
            ind, args = c
            t: Term = Const(ind)
            for a in reversed(args):
                t = Pi(ANON, a, t)
            return t
        raise UnboundName(f"unknown identifier {name}")


def initial_environment() -> Environment:
    """Empty environment plus the one built-in defined constant, iff."""
    a, b = Var("A"), Var("B")
    iff_body = Lam("A", Sort(PROP), Lam("B", Sort(PROP),
                   And(Pi(ANON, a, b), Pi(ANON, b, a))))
    iff_ty = Pi("A", Sort(PROP), Pi("B", Sort(PROP), Sort(PROP)))
    return Environment().add(Definition("iff", iff_body, iff_ty))
