"""AST for ring-construction expressions and their canonical text form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping


class RingExpr:
    """A recipe for building a finite *-ring."""

    __slots__ = ()

    def pretty(self) -> str:
        """Canonical source text; reparsing it yields an equal AST."""
        raise NotImplementedError

    def __str__(self) -> str:
        return self.pretty()


@dataclass(frozen=True)
class Zmod(RingExpr):
    m: int

    def pretty(self) -> str:
        return f"zmod({self.m})"


@dataclass(frozen=True)
class GF(RingExpr):
    p: int

    def pretty(self) -> str:
        return f"gf({self.p})"


@dataclass(frozen=True)
class Mat(RingExpr):
    n: int
    base: RingExpr

    def pretty(self) -> str:
        return f"mat({self.n}, {self.base.pretty()})"


@dataclass(frozen=True)
class Product(RingExpr):
    factors: tuple[RingExpr, ...]

    def pretty(self) -> str:
        return f"product({', '.join(f.pretty() for f in self.factors)})"


@dataclass(frozen=True)
class Unitify(RingExpr):
    base: RingExpr
    scalars: RingExpr

    def pretty(self) -> str:
        return f"unitify({self.base.pretty()}, {self.scalars.pretty()})"


@dataclass(frozen=True)
class Named(RingExpr):
    name: str

    def pretty(self) -> str:
        return self.name


def contains_named(expr: RingExpr) -> bool:
    match expr:
        case Named():
            return True
        case Mat(_, base):
            return contains_named(base)
        case Product(factors):
            return any(contains_named(f) for f in factors)
        case Unitify(base, scalars):
            return contains_named(base) or contains_named(scalars)
        case _:
            return False


def resolve(expr: RingExpr, env: Mapping[str, RingExpr]) -> RingExpr:
    """Substitute Named references using `env`; raises KeyError on unknowns."""
    match expr:
        case Named(name):
            return resolve(env[name], env)
        case Mat(n, base):
            return Mat(n, resolve(base, env))
        case Product(factors):
            return Product(tuple(resolve(f, env) for f in factors))
        case Unitify(base, scalars):
            return Unitify(resolve(base, env), resolve(scalars, env))
        case _:
            return expr
