"""The group-spec mini language.

    spec := symmetric:N | alternating:N | cyclic:N | dihedral:M
          | product(spec,spec) | wreath2(spec) | file:PATH | data:NAME

`dihedral:M` is the dihedral group of order M.  Products act on disjoint
point sets; `wreath2(L)` is L wr C2 acting on two copies of L's points.
"""
import os
from dataclasses import dataclass
from typing import Tuple, Union

from pcomplex.exceptions import GroupSpecSyntaxError, InvalidInputError, UnknownDataNameError
from pcomplex.permcore import PermGroup, Permutation, parse_generator_text
from pcomplex.utils import debug_print, get_package_path, read_file

INTEGER_KINDS = ("symmetric", "alternating", "cyclic", "dihedral")
TEXT_KINDS = ("file", "data")
COMPOUND_KINDS = {"product": 2, "wreath2": 1}
DATA_NAMES = ("m11", "m12", "m22", "m23", "j1")


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    argument: Union[int, str, None] = None
    children: Tuple["GroupSpec", ...] = ()

    def render(self) -> str:
        if self.kind in COMPOUND_KINDS:
            return f"{self.kind}({','.join(c.render() for c in self.children)})"
        return f"{self.kind}:{self.argument}"

    def __str__(self) -> str:
        return self.render()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.position = 0

    def error(self, message: str, position: int = None):
        raise GroupSpecSyntaxError(
            message, self.text, self.position if position is None else position
        )

    def peek(self) -> str:
        return self.text[self.position] if self.position < len(self.text) else ""

    def expect(self, char: str):
        if self.peek() != char:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"expected {char!r}, found {found}")
        self.position += 1

    def word(self) -> str:
        start = self.position
        while self.peek().isalnum() or self.peek() == "_":
            self.position += 1
        return self.text[start : self.position]

    def until_delimiter(self) -> str:
        start = self.position
        while self.peek() and self.peek() not in ",)":
            self.position += 1
        return self.text[start : self.position]

    def spec(self) -> GroupSpec:
        start = self.position
        kind = self.word()
        if kind in COMPOUND_KINDS:
            self.expect("(")
            children = [self.spec()]
            for _ in range(COMPOUND_KINDS[kind] - 1):
                self.expect(",")
                children.append(self.spec())
            self.expect(")")
            return GroupSpec(kind, None, tuple(children))
        if kind in INTEGER_KINDS:
            self.expect(":")
            digits_at = self.position
            digits = self.word()
            if not digits.isdigit():
                self.error(f"{kind} needs a positive integer", digits_at)
            n = int(digits)
            self._check_integer(kind, n, digits_at)
            return GroupSpec(kind, n)
        if kind in TEXT_KINDS:
            self.expect(":")
            value_at = self.position
            value = self.until_delimiter()
            if not value:
                self.error(f"{kind} needs a value", value_at)
            if kind == "data" and value not in DATA_NAMES:
                raise UnknownDataNameError(
                    f"unknown data name {value!r}; known: {', '.join(DATA_NAMES)}",
                    module="groupspec",
                )
            return GroupSpec(kind, value)
        self.error(f"unknown group kind {kind!r}" if kind else "expected a group kind", start)

    def _check_integer(self, kind: str, n: int, position: int):
        if n < 1:
            self.error(f"{kind} needs a positive integer", position)
        if kind == "dihedral" and n % 2:
            self.error("dihedral:M needs an even order M", position)

    def parse(self) -> GroupSpec:
        spec = self.spec()
        if self.position != len(self.text):
            self.error("unexpected trailing input")
        return spec


def parse_group_spec(text: str) -> GroupSpec:
    return _Parser(text.strip()).parse()


def render(spec: GroupSpec) -> str:
    return spec.render()


def _shift(g: Permutation, offset: int, degree: int) -> Permutation:
    images = list(range(degree))
    for i, image in enumerate(g):
        images[i + offset] = image + offset
    return Permutation(images)


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], degree=1)
    if n == 2:
        return PermGroup([Permutation.from_cycles(2, (1, 2))])
    return PermGroup(
        [Permutation.from_cycles(n, (1, 2)), Permutation.from_cycles(n, tuple(range(1, n + 1)))]
    )


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], degree=n)
    return PermGroup(
        [Permutation.from_cycles(n, (i, i + 1, i + 2)) for i in range(1, n - 1)]
    )


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], degree=1)
    return PermGroup([Permutation.from_cycles(n, tuple(range(1, n + 1)))])


def dihedral_group(order: int) -> PermGroup:
    k = order // 2
    if k == 1:
        return cyclic_group(2)
    if k == 2:
        return PermGroup(
            [Permutation.from_cycles(4, (1, 2)), Permutation.from_cycles(4, (3, 4))]
        )
    rotation = Permutation.from_cycles(k, tuple(range(1, k + 1)))
    reflection = Permutation.from_images([k - 1 - i for i in range(k)])
    return PermGroup([rotation, reflection])


def direct_product(A: PermGroup, B: PermGroup) -> PermGroup:
    degree = A.degree + B.degree
    generators = [_shift(g, 0, degree) for g in A.generators]
    generators += [_shift(g, A.degree, degree) for g in B.generators]
    return PermGroup(generators, degree=degree)


def wreath_with_c2(L: PermGroup) -> PermGroup:
    n = L.degree
    swap = Permutation([i + n for i in range(n)] + list(range(n)))
    return PermGroup([_shift(g, 0, 2 * n) for g in L.generators] + [swap], degree=2 * n)


def data_path(name: str) -> str:
    return get_package_path("data", f"{name}.txt")


def load_data_group(name: str) -> PermGroup:
    if name not in DATA_NAMES:
        raise UnknownDataNameError(
            f"unknown data name {name!r}; known: {', '.join(DATA_NAMES)}",
            module="groupspec",
        )
    path = data_path(name)
    if not os.path.exists(path):
        raise UnknownDataNameError(
            f"no generator file for {name!r}; place one at {path}", module="groupspec"
        )
    return parse_generator_text(read_file(path), source=path)


def load_file_group(path: str) -> PermGroup:
    if not os.path.exists(path):
        raise InvalidInputError(f"generator file {path} not found", module="groupspec")
    return parse_generator_text(read_file(path), source=path)


def resolve(spec: Union[GroupSpec, str]) -> PermGroup:
    """Build the permutation group a spec names."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    debug_print(f"resolving {spec}")
    if spec.kind == "symmetric":
        return symmetric_group(spec.argument)
    if spec.kind == "alternating":
        return alternating_group(spec.argument)
    if spec.kind == "cyclic":
        return cyclic_group(spec.argument)
    if spec.kind == "dihedral":
        return dihedral_group(spec.argument)
    if spec.kind == "product":
        return direct_product(*(resolve(c) for c in spec.children))
    if spec.kind == "wreath2":
        return wreath_with_c2(resolve(spec.children[0]))
    if spec.kind == "file":
        return load_file_group(spec.argument)
    return load_data_group(spec.argument)
