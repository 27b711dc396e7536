"""Principal simple types for SK-combinators.

Each leaf gets a fresh instance of its axiom scheme

    S : (a -> b -> c) -> (a -> b) -> a -> c
    K : a -> b -> a

and each application ``N M`` unifies the type of ``N`` with ``type(M) -> r``
for a fresh ``r``. Unification is first order with an occurs check, so the
result is the most general type, or ``None`` when the term is untypeable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .term import Basis, Leaf, Term

__all__ = [
    "TypeVar",
    "Arrow",
    "SimpleType",
    "infer_principal_type",
    "canonical",
    "type_text",
]


@dataclass(frozen=True)
class TypeVar:
    index: int

    def __str__(self) -> str:
        return type_text(self)


@dataclass(frozen=True)
class Arrow:
    arg: SimpleType
    res: SimpleType

    def __str__(self) -> str:
        return type_text(self)


SimpleType = Union[TypeVar, Arrow]


# Working representation: int is a variable, a 2-tuple is an arrow.


class _Unifier:
    def __init__(self) -> None:
        self.subst: dict[int, object] = {}
        self.next_var = 0

    def fresh(self) -> int:
        self.next_var += 1
        return self.next_var - 1

    def find(self, t):
        subst = self.subst
        while type(t) is int and t in subst:
            t = subst[t]
        return t

    def occurs(self, v: int, t) -> bool:
        stack = [t]
        while stack:
            x = self.find(stack.pop())
            if type(x) is int:
                if x == v:
                    return True
            else:
                stack.extend(x)
        return False

    def unify(self, a, b) -> bool:
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            x = self.find(x)
            y = self.find(y)
            if x is y or (type(x) is int and x == y):
                continue
            if type(x) is int:
                if self.occurs(x, y):
                    return False
                self.subst[x] = y
            elif type(y) is int:
                if self.occurs(y, x):
                    return False
                self.subst[y] = x
            else:
                stack.append((x[1], y[1]))
                stack.append((x[0], y[0]))
        return True

    def axiom(self, name: str):
        if name == "S":
            a, b, c = self.fresh(), self.fresh(), self.fresh()
            return ((a, (b, c)), ((a, b), (a, c)))
        if name == "K":
            a, b = self.fresh(), self.fresh()
            return (a, (b, a))
        raise ValueError(f"no axiom scheme for primitive {name!r}")


def infer_principal_type(t: Term, basis: Basis | None = None) -> SimpleType | None:
    """Principal type of an SK-term in canonical form, or None if untypeable."""
    if basis is not None:
        for p in basis.primitives:
            if p.name not in ("S", "K"):
                raise ValueError("principal typing is defined for the SK basis only")
    u = _Unifier()
    # postorder without recursion: results pushed on a value stack
    values: list = []
    stack: list = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Leaf):
            values.append(u.axiom(node.name))
        elif expanded:
            arg = values.pop()
            fun = values.pop()
            res = u.fresh()
            if not u.unify(fun, (arg, res)):
                return None
            values.append(res)
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
    return _canonical(u, values[0])


def _canonical(u: _Unifier, t) -> SimpleType:
    names: dict[int, int] = {}

    def build(x):
        x = u.find(x)
        if type(x) is int:
            if x not in names:
                names[x] = len(names)
            return TypeVar(names[x])
        return Arrow(build(x[0]), build(x[1]))

    return build(t)


def canonical(ty: SimpleType) -> SimpleType:
    """Renumber variables 0, 1, ... in left-to-right depth-first order."""
    names: dict[int, int] = {}

    def build(x):
        if isinstance(x, TypeVar):
            if x.index not in names:
                names[x.index] = len(names)
            return TypeVar(names[x.index])
        return Arrow(build(x.arg), build(x.res))

    return build(ty)


def _var_name(i: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return letters[i] if i < len(letters) else f"t{i}"


def type_text(ty: SimpleType) -> str:
    """Arrows associate to the right: ``a -> b -> a``."""
    if isinstance(ty, TypeVar):
        return _var_name(ty.index)
    left = type_text(ty.arg)
    if isinstance(ty.arg, Arrow):
        left = f"({left})"
    return f"{left} -> {type_text(ty.res)}"
