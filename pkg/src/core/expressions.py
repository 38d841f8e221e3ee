"""
Provenance expressions.

A small prefix grammar naming how a polytope was built, e.g.
``truncate(triplex(2,3),v0)`` or ``pyr^3(pentagon)``. Expressions are
parsed into a tree and evaluated against the constructors in families.

    expr  := NAME | NAME "(" arg ("," arg)* ")" | "pyr" "^" INT "(" expr ")"
    arg   := expr | INT | "v" INT | "f" INT | "{" INT ("," INT)* "}"
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Tuple, Union

from . import families
from .exceptions import ExpressionError
from .lattice import dual
from .models import Polytope

_TOKEN_RE = re.compile(r'\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))')


@dataclass(frozen=True)
class VertexRef:
    index: int


@dataclass(frozen=True)
class FacetRef:
    index: int


@dataclass(frozen=True)
class FaceSet:
    members: Tuple[int, ...]


@dataclass(frozen=True)
class Node:
    name: str
    args: Tuple['Arg', ...] = ()
    power: int = 1
    bare: bool = False


Arg = Union[Node, int, VertexRef, FacetRef, FaceSet]


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match or match.end() == pos:
            break
        number, name, punct = match.groups()
        if number is not None:
            tokens.append(('int', number))
        elif name is not None:
            tokens.append(('name', name))
        elif punct is not None and not punct.isspace():
            if punct not in '(),^{}':
                raise ExpressionError(f"unexpected character {punct!r} in {text!r}")
            tokens.append(('punct', punct))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Tuple[str, str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else ('end', '')

    def take(self, kind: str, value: str = None) -> str:
        tok_kind, tok_value = self.peek()
        if tok_kind != kind or (value is not None and tok_value != value):
            expected = value or kind
            raise ExpressionError(
                f"expected {expected!r} at token {self.pos} of {self.text!r}, got {tok_value!r}")
        self.pos += 1
        return tok_value

    def parse(self) -> Node:
        node = self.expr()
        if self.peek()[0] != 'end':
            raise ExpressionError(f"trailing input in {self.text!r}")
        return node

    def expr(self) -> Node:
        name = self.take('name')
        power = 1
        if self.peek() == ('punct', '^'):
            self.take('punct', '^')
            power = int(self.take('int'))
        if self.peek() != ('punct', '('):
            if power != 1:
                raise ExpressionError(f"{name}^{power} needs an argument")
            return Node(name=name, bare=True)
        self.take('punct', '(')
        args = [self.arg()]
        while self.peek() == ('punct', ','):
            self.take('punct', ',')
            args.append(self.arg())
        self.take('punct', ')')
        return Node(name=name, args=tuple(args), power=power)

    def arg(self) -> Arg:
        kind, value = self.peek()
        if kind == 'int':
            self.pos += 1
            return int(value)
        if kind == 'punct' and value == '{':
            self.take('punct', '{')
            members = [int(self.take('int'))]
            while self.peek() == ('punct', ','):
                self.take('punct', ',')
                members.append(int(self.take('int')))
            self.take('punct', '}')
            return FaceSet(tuple(sorted(members)))
        if kind == 'name' and re.fullmatch(r'[vf]\d+', value) and \
                self.tokens[self.pos + 1:self.pos + 2] != [('punct', '(')]:
            self.pos += 1
            ref = int(value[1:])
            return VertexRef(ref) if value[0] == 'v' else FacetRef(ref)
        return self.expr()


def parse(text: str) -> Node:
    """Parse a provenance expression; raises ExpressionError on bad syntax."""
    if not text or not text.strip():
        raise ExpressionError("empty expression")
    return _Parser(text).parse()


def render(node: Arg) -> str:
    """Canonical text of a parsed expression."""
    if isinstance(node, int):
        return str(node)
    if isinstance(node, VertexRef):
        return f"v{node.index}"
    if isinstance(node, FacetRef):
        return f"f{node.index}"
    if isinstance(node, FaceSet):
        return "{" + ",".join(str(v) for v in node.members) + "}"
    if node.bare:
        return node.name
    head = node.name if node.power == 1 else f"{node.name}^{node.power}"
    return head + "(" + ",".join(render(a) for a in node.args) + ")"


_BARE: Dict[str, Callable[[], Polytope]] = {
    'pentagon': families.pentagon,
    'square': families.square,
    'segment': families.segment,
    'TA': families.antiwedge,
    'antiwedge': families.antiwedge,
}

_INTEGER: Dict[str, Tuple[Callable[..., Polytope], int]] = {
    'simplex': (families.simplex, 1),
    'prism': (families.prism, 1),
    'cube': (families.cube, 1),
    'triplex': (families.triplex, 2),
    'pentasm': (families.pentasm, 1),
    'cp': (families.capped_prism, 2),
    'A': (families.family_A, 1),
    'B': (families.family_B, 1),
    'C': (families.family_C, 1),
    'sigma': (families.family_sigma, 1),
    'gamma': (families.gamma, 2),
    'J': (families.J, 1),
    'cyclic': (families.cyclic, 2),
    'polygon': (families.polygon, 1),
}

CONSTRUCTOR_NAMES = sorted(set(_BARE) | set(_INTEGER) | {
    'delta', 'pyr', 'bipyramid', 'free_sum', 'product', 'minkowski',
    'truncate', 'stack', 'push', 'dual'})


def _ints(node: Node) -> List[int]:
    if not all(isinstance(a, int) for a in node.args):
        raise ExpressionError(f"{node.name} takes integer arguments")
    return list(node.args)


def _operands(node: Node, count: int) -> List[Polytope]:
    if len(node.args) != count or not all(isinstance(a, Node) for a in node.args):
        raise ExpressionError(f"{node.name} takes {count} polytope argument(s)")
    return [_evaluate(a) for a in node.args]


def _face(node: Node, arg: Arg) -> Tuple[int, ...]:
    if isinstance(arg, VertexRef):
        return (arg.index,)
    if isinstance(arg, FaceSet):
        return arg.members
    raise ExpressionError(f"{node.name} expects a vertex v<i> or a face {{...}}")


def _evaluate(node: Node) -> Polytope:
    name = node.name
    if node.bare:
        if name not in _BARE:
            raise ExpressionError(f"unknown polytope name {name!r}")
        return _BARE[name]()

    if name in _INTEGER:
        build, arity = _INTEGER[name]
        values = _ints(node)
        if len(values) != arity:
            raise ExpressionError(f"{name} takes {arity} integer argument(s)")
        return build(*values)
    if name == 'delta':
        return families.simplex_product(_ints(node))
    if name == 'pyr':
        (base,) = _operands(node, 1)
        return families.pyramid(base, node.power)
    if node.power != 1:
        raise ExpressionError(f"only pyr takes a power, not {name}")
    if name == 'bipyramid':
        (base,) = _operands(node, 1)
        return families.bipyramid(base)
    if name == 'dual':
        (base,) = _operands(node, 1)
        return dual(base)
    if name in ('free_sum', 'product', 'minkowski'):
        left, right = _operands(node, 2)
        op = {'free_sum': families.free_sum, 'product': families.product,
              'minkowski': families.minkowski_sum}[name]
        return op(left, right)
    if name == 'truncate':
        if len(node.args) != 2 or not isinstance(node.args[0], Node):
            raise ExpressionError("truncate takes a polytope and a face")
        return families.truncate(_evaluate(node.args[0]), _face(node, node.args[1]))[0]
    if name == 'stack':
        if len(node.args) != 2 or not isinstance(node.args[0], Node):
            raise ExpressionError("stack takes a polytope and a facet or face")
        base, target = _evaluate(node.args[0]), node.args[1]
        if isinstance(target, FacetRef):
            return families.stack(base, target.index)
        return families.stack(base, _face(node, target))
    if name == 'push':
        if len(node.args) != 3 or not isinstance(node.args[0], Node) \
                or not isinstance(node.args[1], FacetRef) or not isinstance(node.args[2], int):
            raise ExpressionError("push takes a polytope, a facet f<i> and a level")
        return families.push(_evaluate(node.args[0]), node.args[1].index, node.args[2])
    raise ExpressionError(f"unknown constructor {name!r}")


@lru_cache(maxsize=4096)
def evaluate(text: str) -> Polytope:
    """Build the polytope an expression describes; its provenance is the canonical text."""
    node = parse(text)
    result = _evaluate(node)
    return result.with_label(provenance=render(node))


def construct(family: str, params: List[str]) -> Polytope:
    """Build from a family name and parameter strings, e.g. ('cp', ['3', '5'])."""
    if not params:
        return evaluate(family)
    return evaluate(f"{family}({','.join(p.strip() for p in params)})")
