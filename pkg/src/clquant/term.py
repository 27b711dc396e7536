"""Combinator terms over an arbitrary finite basis.

A term is a plane binary tree: leaves carry primitive names, inner nodes are
applications. Size counts application nodes only, so a term of size ``n`` has
``n + 1`` leaves.

Terms are immutable and cache their size, hash, spine head and spine length at
construction, which keeps redex detection O(1) for the reducers.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence, Union

__all__ = [
    "Term",
    "Leaf",
    "App",
    "Template",
    "PrimitiveCombinator",
    "Basis",
    "SK",
    "TermSyntaxError",
    "UnknownPrimitiveError",
    "parse",
    "parse_template",
    "apply_all",
    "spine",
    "size",
    "leaves",
    "subterms",
    "contains_subterm",
    "omega",
    "omega_omega",
    "phi_transform",
]

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*")


class Term:
    """Base class of :class:`Leaf` and :class:`App`."""

    __slots__ = ("size", "head", "nargs", "_hash")

    size: int
    head: str
    nargs: int

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {to_text(self)}>"

    def __call__(self, *args: Term) -> Term:
        return apply_all(self, args)


class Leaf(Term):
    __slots__ = ("name",)

    def __init__(self, name: str) -> None:
        self.name = name
        self.size = 0
        self.head = name
        self.nargs = 0
        self._hash = hash(("leaf", name))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Leaf) and other.name == self.name

    __hash__ = Term.__hash__

    def __reduce__(self):
        return (Leaf, (self.name,))


class App(Term):
    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term) -> None:
        self.left = left
        self.right = right
        self.size = left.size + right.size + 1
        self.head = left.head
        self.nargs = left.nargs + 1
        self._hash = hash((left._hash, right._hash))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, App):
            return False
        # iterative so that deep terms do not hit the recursion limit
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if a._hash != b._hash or a.size != b.size:
                return False
            if type(a) is Leaf:
                if type(b) is not Leaf or a.name != b.name:
                    return False
                continue
            if type(b) is Leaf:
                return False
            stack.append((a.right, b.right))
            stack.append((a.left, b.left))
        return True

    __hash__ = Term.__hash__

    def __reduce__(self):
        return (App, (self.left, self.right))


# --------------------------------------------------------------------------
# Rewrite templates and bases

#: A rewrite template: metavariable index (1-based) or an application pair.
Template = Union[int, tuple]


@dataclass(frozen=True)
class PrimitiveCombinator:
    """Primitive ``X`` with rule ``X N_1 ... N_m -> template[N_1..N_m]``."""

    name: str
    arity: int
    template: Template

    def __post_init__(self) -> None:
        if not NAME_RE.fullmatch(self.name):
            raise ValueError(f"invalid primitive name {self.name!r}")
        if self.arity < 1:
            raise ValueError(f"{self.name}: arity must be positive")
        for idx in _template_vars(self.template):
            if not 1 <= idx <= self.arity:
                raise ValueError(
                    f"{self.name}: metavariable {idx} outside 1..{self.arity}"
                )

    @property
    def projection(self) -> int | None:
        """Index of the kept argument when the template is a bare metavariable."""
        return self.template if isinstance(self.template, int) else None

    def instantiate(self, args: Sequence[Term]) -> Term:
        """Build the contractum; arguments are shared, not copied."""
        return _instantiate(self.template, args)


def _template_vars(tpl: Template) -> Iterator[int]:
    if isinstance(tpl, int):
        yield tpl
    else:
        yield from _template_vars(tpl[0])
        yield from _template_vars(tpl[1])


def _instantiate(tpl: Template, args: Sequence[Term]) -> Term:
    if isinstance(tpl, int):
        return args[tpl - 1]
    return App(_instantiate(tpl[0], args), _instantiate(tpl[1], args))


def template_text(tpl: Template) -> str:
    if isinstance(tpl, int):
        return str(tpl)
    head, args = tpl, []
    while not isinstance(head, int):
        args.append(head[1])
        head = head[0]
    parts = [str(head)]
    for a in reversed(args):
        parts.append(str(a) if isinstance(a, int) else f"({template_text(a)})")
    return " ".join(parts)


@dataclass(frozen=True)
class Basis:
    """Ordered finite set of primitive combinators.

    ``designated`` maps ``"S"`` and ``"K"`` to term texts over this basis that
    stand in for S and K (used to build omega and for typing). When omitted,
    primitives literally named S and K are used if present.
    """

    primitives: tuple[PrimitiveCombinator, ...]
    designated: tuple[tuple[str, str], ...] = ()
    _by_name: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        prims = tuple(self.primitives)
        object.__setattr__(self, "primitives", prims)
        if not prims:
            raise ValueError("a basis needs at least one primitive")
        by_name = {p.name: p for p in prims}
        if len(by_name) != len(prims):
            raise ValueError("primitive names must be unique")
        object.__setattr__(self, "_by_name", by_name)
        if isinstance(self.designated, dict):
            object.__setattr__(
                self, "designated", tuple(sorted(self.designated.items()))
            )

    @property
    def d(self) -> int:
        return len(self.primitives)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.primitives)

    def __len__(self) -> int:
        return len(self.primitives)

    def __contains__(self, name: object) -> bool:
        return name in self._by_name

    def __getitem__(self, name: str) -> PrimitiveCombinator:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownPrimitiveError(name) from None

    def arity(self, name: str) -> int:
        return self[name].arity

    def leaves(self) -> list[Leaf]:
        return [Leaf(p.name) for p in self.primitives]

    def designated_term(self, which: str) -> Term:
        """Term standing for S or K in this basis."""
        text = dict(self.designated).get(which)
        if text is None:
            if which not in self:
                raise ValueError(f"basis has no designated {which}")
            return Leaf(which)
        return parse(text, self)

    # -- JSON --------------------------------------------------------------
    @classmethod
    def from_dict(cls, data: dict) -> Basis:
        prims = [
            PrimitiveCombinator(
                p["name"], int(p["arity"]), parse_template(str(p["template"]))
            )
            for p in data["primitives"]
        ]
        return cls(tuple(prims), tuple(sorted(data.get("designated", {}).items())))

    @classmethod
    def from_json(cls, source: str | Path) -> Basis:
        """Load from a JSON file path or a JSON string."""
        text = str(source)
        if not text.lstrip().startswith("{"):
            text = Path(source).read_text()
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        data: dict = {
            "primitives": [
                {"name": p.name, "arity": p.arity, "template": template_text(p.template)}
                for p in self.primitives
            ]
        }
        if self.designated:
            data["designated"] = dict(self.designated)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# --------------------------------------------------------------------------
# Parsing and printing


class TermSyntaxError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownPrimitiveError(KeyError):
    def __init__(self, name: str) -> None:
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unknown primitive {self.name!r}"


_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<num>[0-9]+)|(?P<p>[()]))")


def _tokenize(text: str, numeric: bool) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise TermSyntaxError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        if kind == "num" and not numeric:
            raise TermSyntaxError("metavariable index in a term", start)
        if kind == "name" and numeric:
            raise TermSyntaxError("name in a template", start)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("eof", "", end))
    return tokens


class _Parser:
    def __init__(self, text: str, leaf, app, numeric: bool) -> None:
        self.tokens = _tokenize(text, numeric)
        self.i = 0
        self.leaf = leaf
        self.app = app

    def peek(self):
        return self.tokens[self.i]

    def term(self):
        node = self.atom()
        while self.peek()[0] in ("name", "num") or self.peek()[1] == "(":
            node = self.app(node, self.atom())
        return node

    def atom(self):
        kind, value, pos = self.peek()
        if kind in ("name", "num"):
            self.i += 1
            return self.leaf(value, pos)
        if value == "(":
            self.i += 1
            inner = self.term()
            kind, value, pos = self.peek()
            if value != ")":
                raise TermSyntaxError("expected ')'", pos)
            self.i += 1
            return inner
        if kind == "eof":
            raise TermSyntaxError("unexpected end of input", pos)
        raise TermSyntaxError(f"unexpected {value!r}", pos)

    def parse(self):
        node = self.term()
        kind, value, pos = self.peek()
        if kind != "eof":
            raise TermSyntaxError(f"unexpected {value!r}", pos)
        return node


def parse(text: str, basis: Basis | None = None) -> Term:
    """Parse ``term := atom {atom}``, ``atom := NAME | '(' term ')'``.

    Juxtaposition associates to the left. With a basis, every name must be
    one of its primitives.
    """

    def leaf(name: str, pos: int) -> Leaf:
        if basis is not None and name not in basis:
            raise UnknownPrimitiveError(name)
        return Leaf(name)

    return _Parser(text, leaf, App, numeric=False).parse()


def parse_template(text: str) -> Template:
    """Parse a rewrite template such as ``"1 3 (2 3)"``."""
    return _Parser(text, lambda v, pos: int(v), lambda a, b: (a, b), numeric=True).parse()


def to_text(t: Term) -> str:
    """Minimal-parenthesis text; reparses to an identical tree."""
    out: list[str] = []
    # stack items: Term to render, or a literal string
    stack: list = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        head, args = spine(item)
        pending: list = [head.name]
        for a in args:
            pending.append(" ")
            if isinstance(a, App):
                pending.extend(("(", a, ")"))
            else:
                pending.append(a.name)
        stack.extend(reversed(pending))
    return "".join(out)


# --------------------------------------------------------------------------
# Structure


def apply_all(head: Term, args) -> Term:
    for a in args:
        head = App(head, a)
    return head


def spine(t: Term) -> tuple[Leaf, list[Term]]:
    """Split ``X a1 ... ak`` into ``(X, [a1, ..., ak])``."""
    args = []
    while isinstance(t, App):
        args.append(t.right)
        t = t.left
    args.reverse()
    return t, args


def size(t: Term) -> int:
    return t.size


def leaves(t: Term) -> list[Leaf]:
    """Leaves in left-to-right order."""
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, App):
            stack.append(node.right)
            stack.append(node.left)
        else:
            out.append(node)
    return out


def subterms(t: Term) -> Iterator[Term]:
    """All subtrees in preorder, including ``t`` itself."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, App):
            stack.append(node.right)
            stack.append(node.left)


def contains_subterm(t: Term, s: Term) -> bool:
    """True iff ``s`` occurs as a (not necessarily proper) subtree of ``t``."""
    target = s.size
    stack = [t]
    while stack:
        node = stack.pop()
        if node.size == target:
            if node == s:
                return True
        elif node.size > target:
            stack.append(node.right)
            stack.append(node.left)
    return False


# --------------------------------------------------------------------------
# omega and the Phi transformation


def omega(basis: Basis) -> Term:
    """``S (S K K) (S K K)`` built from the designated S and K."""
    s = basis.designated_term("S")
    k = basis.designated_term("K")
    i = App(App(s, k), k)
    return App(App(s, i), i)


def omega_omega(basis: Basis) -> Term:
    w = omega(basis)
    return App(w, w)


def phi_transform(t: Term, basis: Basis) -> Term:
    """Replace the leftmost leaf of ``t`` with omega omega.

    Every other node is kept; the result never normalises under
    leftmost-outermost reduction.
    """
    ww = omega_omega(basis)
    args = []
    while isinstance(t, App):
        args.append(t.right)
        t = t.left
    return apply_all(ww, reversed(args))


SK = Basis(
    (
        PrimitiveCombinator("S", 3, parse_template("1 3 (2 3)")),
        PrimitiveCombinator("K", 2, parse_template("1")),
    )
)
