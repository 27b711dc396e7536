"""Normal-order (leftmost-outermost) reduction over an arbitrary basis.

Three routes share one semantics:

* :func:`find_leftmost_outermost_redex` / :func:`step` search the tree in
  preorder and contract one redex (used for traces and as a reference);
* :func:`normalize` runs a spine machine that head-reduces, then normalises
  the arguments left to right, building the normal form;
* :class:`StepCounter` runs the same machine without building anything and
  memoises step counts of small subterms, for censuses.

A redex is a primitive applied to exactly its arity along a left spine; for a
spine ``X a1 .. ak`` with ``k >= arity(X)`` that node is the first redex in
preorder, otherwise the first redex lies in ``a1``, then ``a2``, and so on.
Hence step counts add up over arguments once the head is stuck.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union

from .term import App, Basis, Term, apply_all

__all__ = [
    "Side",
    "RedexSite",
    "NormalForm",
    "FuelExhausted",
    "ReductionOutcome",
    "find_leftmost_outermost_redex",
    "is_normal_form",
    "contract_at",
    "step",
    "trace",
    "normalize",
    "reduction_length",
    "StepCounter",
]


class Side(enum.Enum):
    LEFT = "L"
    RIGHT = "R"


@dataclass(frozen=True)
class RedexSite:
    """Path from the root to the application node that is the redex."""

    path: tuple[Side, ...]


@dataclass(frozen=True)
class NormalForm:
    result: Term
    steps: int


@dataclass(frozen=True)
class FuelExhausted:
    last: Term
    steps_taken: int


ReductionOutcome = Union[NormalForm, FuelExhausted]


def _is_redex(t: Term, basis: Basis) -> bool:
    return t.nargs > 0 and t.nargs == basis[t.head].arity


def find_leftmost_outermost_redex(t: Term, basis: Basis) -> RedexSite | None:
    """Redex whose root comes first in preorder, or None for a normal form."""
    stack: list[tuple[Term, tuple[Side, ...]]] = [(t, ())]
    while stack:
        node, path = stack.pop()
        if not isinstance(node, App):
            continue
        if _is_redex(node, basis):
            return RedexSite(path)
        stack.append((node.right, path + (Side.RIGHT,)))
        stack.append((node.left, path + (Side.LEFT,)))
    return None


def is_normal_form(t: Term, basis: Basis) -> bool:
    return find_leftmost_outermost_redex(t, basis) is None


def _contract(redex: Term, basis: Basis) -> Term:
    head, args = redex.head, []
    node = redex
    while isinstance(node, App):
        args.append(node.right)
        node = node.left
    args.reverse()
    return basis[head].instantiate(args)


def contract_at(t: Term, site: RedexSite, basis: Basis) -> Term:
    """Contract the redex at ``site``; ancestors are rebuilt, siblings shared."""
    ancestors = []
    node = t
    for side in site.path:
        ancestors.append((node, side))
        node = node.left if side is Side.LEFT else node.right
    if not _is_redex(node, basis):
        raise ValueError("no redex at the given site")
    new = _contract(node, basis)
    for parent, side in reversed(ancestors):
        new = App(new, parent.right) if side is Side.LEFT else App(parent.left, new)
    return new


def step(t: Term, basis: Basis) -> Term | None:
    """One leftmost-outermost contraction; None when ``t`` is normal."""
    site = find_leftmost_outermost_redex(t, basis)
    if site is None:
        return None
    return contract_at(t, site, basis)


def trace(t: Term, basis: Basis, fuel: int) -> Iterator[Term]:
    """Yield ``t`` and then each reduct, at most ``fuel`` contractions."""
    yield t
    for _ in range(fuel):
        t = step(t, basis)
        if t is None:
            return
        yield t


# --------------------------------------------------------------------------
# Spine machine


class _Frame:
    """A stuck spine ``prim a1 .. ak`` whose arguments are being normalised."""

    __slots__ = ("prim", "done", "todo", "entry", "start")

    def __init__(self, prim, todo, entry, start):
        self.prim = prim
        self.done = []
        self.todo = todo  # reversed: todo[-1] is the next argument
        self.entry = entry
        self.start = start


def normalize(t: Term, basis: Basis, fuel: int) -> ReductionOutcome:
    """Reduce in normal order using at most ``fuel`` contractions."""
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    rules = {p.name: (p.arity, p.instantiate) for p in basis.primitives}
    steps = 0
    frames: list[_Frame] = []
    cur = t
    while True:
        # head-reduce cur; args kept reversed so pop() yields a1 first
        h = cur
        args: list[Term] = []
        while True:
            while isinstance(h, App):
                args.append(h.right)
                h = h.left
            arity, inst = rules[h.name]
            if len(args) < arity:
                break
            if steps == fuel:
                last = apply_all(h, reversed(args))
                for fr in reversed(frames):
                    last = apply_all(fr.prim, fr.done + [last] + fr.todo[::-1])
                return FuelExhausted(last, steps)
            steps += 1
            h = inst([args.pop() for _ in range(arity)])
        frame = _Frame(h, args, None, 0)
        # climb while frames are complete
        while not frame.todo:
            nf = apply_all(frame.prim, frame.done)
            if not frames:
                return NormalForm(nf, steps)
            frame = frames.pop()
            frame.done.append(nf)
        frames.append(frame)
        cur = frame.todo.pop()


def reduction_length(t: Term, basis: Basis, fuel: int) -> int | None:
    """Number of normal-order steps to normal form, or None past ``fuel``."""
    return StepCounter(basis, memo_size=-1).count(t, fuel)


class StepCounter:
    """Counts normal-order steps without building intermediate normal forms.

    Step counts of argument subterms with ``size <= memo_size`` are cached
    (exact counts, or a lower bound when the fuel ran out), so repeated
    queries over many related terms, as in a census, share work. The cache
    depends only on the basis, never on the fuel of a particular query.
    """

    def __init__(self, basis: Basis, memo_size: int = 8) -> None:
        self.basis = basis
        self.memo_size = memo_size
        # value >= 0: exact steps; value < 0: steps > (-value - 1)
        self.memo: dict[Term, int] = {}
        self._rules = {p.name: (p.arity, p.instantiate) for p in basis.primitives}

    def count(self, t: Term, fuel: int) -> int | None:
        return self.count_spine(t, (), fuel)

    def count_spine(self, head: Term, extra, fuel: int) -> int | None:
        """Steps for ``head`` applied to the terms in ``extra``, or None."""
        if fuel < 0:
            raise ValueError("fuel must be non-negative")
        rules = self._rules
        memo = self.memo
        cap = self.memo_size
        steps = 0
        frames: list[_Frame] = []
        entry = head if not extra and head.size <= cap else None
        h = head
        args = list(reversed(extra))
        while True:
            if entry is not None:
                known = memo.get(entry)
                if known is not None:
                    if known >= 0:
                        steps += known
                        if steps > fuel:
                            return self._fail(frames, fuel)
                        h = None
                    elif fuel - steps <= -known - 1:
                        return self._fail(frames, fuel)
            if h is not None:
                start = steps
                while True:
                    while type(h) is App:
                        args.append(h.right)
                        h = h.left
                    arity, inst = rules[h.name]
                    if len(args) < arity:
                        break
                    if steps == fuel:
                        if entry is not None:
                            self._bound(entry, fuel - start)
                        return self._fail(frames, fuel)
                    steps += 1
                    h = inst([args.pop() for _ in range(arity)])
                frame = _Frame(None, args, entry, start)
            else:
                frame = _Frame(None, (), None, steps)
            while not frame.todo:
                if frame.entry is not None:
                    memo[frame.entry] = steps - frame.start
                if not frames:
                    return steps
                frame = frames.pop()
            frames.append(frame)
            h = frame.todo.pop()
            args = []
            entry = h if h.size <= cap else None

    def _bound(self, entry: Term, lower: int) -> None:
        old = self.memo.get(entry)
        if old is None or (old < 0 and -old - 1 < lower):
            self.memo[entry] = -lower - 1

    def _fail(self, frames, fuel: int) -> None:
        for fr in frames:
            if fr.entry is not None:
                self._bound(fr.entry, fuel - fr.start)
        return None
