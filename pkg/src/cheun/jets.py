"""Second-order jets: a value together with its first two derivatives.

A :class:`Jet` is what every evaluator in the package returns, and a
``C2Fn`` is any callable ``z -> Jet``.  Arithmetic on jets applies the
product and chain rules so closed-form solutions can be assembled from
elementary pieces without hand-differentiating each one.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Union

Number = Union[complex, float, int]


@dataclass(frozen=True, slots=True)
class Jet:
    value: complex
    d1: complex = 0j
    d2: complex = 0j

    @classmethod
    def variable(cls, z: Number) -> Jet:
        return cls(complex(z), 1 + 0j, 0j)

    def __iter__(self):
        yield self.value
        yield self.d1
        yield self.d2

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.value + other.value, self.d1 + other.d1, self.d2 + other.d2)
        return Jet(self.value + other, self.d1, self.d2)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.value, -self.d1, -self.d2)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(
                self.value * other.value,
                self.d1 * other.value + self.value * other.d1,
                self.d2 * other.value + 2 * self.d1 * other.d1 + self.value * other.d2,
            )
        return Jet(self.value * other, self.d1 * other, self.d2 * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return Jet(self.value / other, self.d1 / other, self.d2 / other)

    def reciprocal(self) -> Jet:
        v = 1 / self.value
        return Jet(v, -self.d1 * v * v, (2 * self.d1 * self.d1 * v - self.d2) * v * v)

    def rescaled(self, c: Number) -> Jet:
        """Jet of ``t -> F(c t)`` given the jet of ``F`` at ``c t``."""
        return Jet(self.value, c * self.d1, c * c * self.d2)


C2Fn = Callable[[complex], Jet]


def exp_jet(arg: Jet) -> Jet:
    e = cmath.exp(arg.value)
    return Jet(e, e * arg.d1, e * (arg.d2 + arg.d1 * arg.d1))


def linear(c0: Number, c1: Number, z: Number) -> Jet:
    """Jet of ``c0 + c1 z``."""
    return Jet(c0 + c1 * z, complex(c1), 0j)
