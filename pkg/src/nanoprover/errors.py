"""Error hierarchy shared by the whole prover, plus terminal rendering.

Every error knows its class name (for the wire protocol), an optional byte
span into the source being processed, and a message. ``render_error`` turns
an error plus its source text into the one-line summary / caret excerpt /
hint format shown to students.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple


@dataclass
class Span:
    start: int
    end: int

    def shift(self, offset: int) -> "Span":
        return Span(self.start + offset, self.end + offset)


class NanoError(Exception):
    """Base class; subclass name doubles as the protocol error class."""

    hint: Optional[str] = None

    def __init__(self, message: str, span: Optional[Span] = None):
        super().__init__(message)
        self.message = message
        self.span = span

    @property
    def error_class(self) -> str:
        return type(self).__name__


# --- lexing / parsing ---------------------------------------------------

class LexError(NanoError):
    pass


class ParseError(NanoError):
    pass


class ElaborationError(NanoError):
    pass


class NotCourseFragment(ParseError):
    hint = "this construct is not part of the course fragment"


# --- typing -------------------------------------------------------------

class TypingError(NanoError):
    pass


class UnboundName(TypingError):
    hint = "check the spelling; only declared names and hypotheses are in scope"


class IllTypedApplication(TypingError):
    pass


class UniverseViolation(TypingError):
    pass


# --- declarations -------------------------------------------------------

class DeclarationError(NanoError):
    pass


class DuplicateName(DeclarationError):
    pass


class PositivityViolation(DeclarationError):
    pass


class NonStructuralRecursion(DeclarationError):
    hint = "every recursive call must peel at least one constructor off the decreasing argument"


class UnknownTheory(DeclarationError):
    pass


class NotUnfoldable(DeclarationError):
    hint = "only plain definitions unfold; fixpoints compute with simpl"


# --- tactics ------------------------------------------------------------

class TacticError(NanoError):
    pass


class NothingToIntroduce(TacticError):
    hint = "intros needs a goal of the shape forall ... or A -> B"


class NameClash(TacticError):
    hint = "pick a name that is not already used in the goal"


class TypeMismatch(TacticError):
    pass


class WrongConnective(TacticError):
    pass


class UnificationFailure(TacticError):
    hint = "apply matches the conclusion of the lemma against the goal; compare them"


class CannotInferHole(TacticError):
    hint = "give the argument explicitly: unification could not determine it"


class NotDestructible(TacticError):
    pass


class PatternArityMismatch(TacticError):
    pass


class NotConvertible(TacticError):
    hint = "both sides must be equal after computation; maybe you need induction"


class NoMatchingSubterm(TacticError):
    pass


class NoClash(TacticError):
    hint = "discriminate only closes goals when the two sides start with different constructors"


class NotAVariable(TacticError):
    pass


class NotInductive(TacticError):
    pass


class NoOccurrence(TacticError):
    pass


class SideGoalFailed(TacticError):
    pass


class FocusMismatch(TacticError):
    pass


class OpenGoalsRemain(TacticError):
    hint = "Qed only works once no goal is left; use Admitted to give up"


class UnknownHypothesis(TacticError):
    pass


class UnknownTactic(TacticError):
    hint = "this tactic is not part of the course fragment"


# --- solvers ------------------------------------------------------------

class SolverError(NanoError):
    pass


class NotLinear(SolverError):
    hint = "lra/lia only see linear (in)equalities; isolate the non-linear part first"


class NotProvable(SolverError):
    def __init__(self, message: str, assignment=None, span: Optional[Span] = None):
        super().__init__(message, span)
        self.assignment = assignment  # list of (pretty atom, value string) or None


class ClassicalModeRequired(SolverError):
    hint = "push_neg needs the excluded middle: Require Import Classical."


class NothingToPush(SolverError):
    pass


# --- document / session -------------------------------------------------

class DocumentError(NanoError):
    pass


class TacticOutsideProof(DocumentError):
    pass


class NestedTheorem(DocumentError):
    hint = "finish the current proof with Qed or Admitted first"


class ManifestMismatch(DocumentError):
    pass


class StaleId(NanoError):
    pass


_CLASS_HINTS = {
    "WrongConnective": "check the proof state first: split proves /\\, left or right prove \\/",
    "TypeMismatch": "the term you gave does not prove the goal; compare the two types printed above",
    "NothingToIntroduce": "intros needs a goal of the shape forall ... or A -> B",
    "NoMatchingSubterm": "rewrite needs the left-hand side of the equality to occur in the target",
}


def _line_col(source: str, offset: int) -> Tuple[int, int, str]:
    """1-based line/column plus the line's text at a byte offset."""
    offset = max(0, min(offset, len(source)))
    line_start = source.rfind("\n", 0, offset) + 1
    line_end = source.find("\n", offset)
    if line_end < 0:
        line_end = len(source)
    line_no = source.count("\n", 0, offset) + 1
    return line_no, offset - line_start + 1, source[line_start:line_end]


def render_error(err: NanoError, source: str = "") -> str:
    """One-line summary, caret-annotated excerpt, and an actionable hint."""
    out = [f"Error ({err.error_class}): {err.message}"]
    if err.span is not None and source:
        line_no, col, text = _line_col(source, err.span.start)
        width = max(1, min(err.span.end, len(source)) - err.span.start)
        width = min(width, max(1, len(text) - col + 1))
        out.append(f"  --> line {line_no}, column {col}")
        out.append(f"  | {text}")
        out.append("  | " + " " * (col - 1) + "^" * width)
    assignment = getattr(err, "assignment", None)
    if assignment:
        out.append("  counterexample: " + ", ".join(f"{a} = {v}" for a, v in assignment))
    hint = err.hint or _CLASS_HINTS.get(err.error_class)
    if hint:
        out.append(f"  hint: {hint}")
    return "\n".join(out)
