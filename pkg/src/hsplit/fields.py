"""Evaluatable functions on [0, 1].

A ScalarField wraps one concrete representation -- a parsed expression, a
bare constant, a polynomial coefficient vector, a running antiderivative,
or a linear combination of other fields -- behind a uniform callable
surface, so downstream code can treat f, its mean, its fluctuation, and
its lift as values of one type.  All fields are immutable and pure.
"""

from __future__ import annotations

from numbers import Real
from typing import TYPE_CHECKING

import numpy as np
from numpy.polynomial import polynomial as npoly

from .expressions import Expr, parse

if TYPE_CHECKING:
    from .quadrature import QuadratureRule


class ScalarField:
    """Function on [0, 1]; call with a float or an ndarray of any shape."""

    def _evaluate(self, x: np.ndarray):
        raise NotImplementedError

    def derivative(self) -> "ScalarField":
        raise NotImplementedError

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
            raise ValueError("evaluation point outside [0, 1]")
        out = np.asarray(self._evaluate(arr), dtype=float)
        if out.shape != arr.shape:
            out = np.array(np.broadcast_to(out, arr.shape))
        if arr.ndim == 0:
            return float(out)
        return out

    # Small algebra: fields form a vector space, so +, - and scaling by a
    # number are defined; field * field is deliberately not.
    def __add__(self, other):
        return LinearCombination([(1.0, self), (1.0, as_field(other))])

    __radd__ = __add__

    def __sub__(self, other):
        return LinearCombination([(1.0, self), (-1.0, as_field(other))])

    def __rsub__(self, other):
        return LinearCombination([(-1.0, self), (1.0, as_field(other))])

    def __mul__(self, scalar):
        if not isinstance(scalar, Real):
            return NotImplemented
        return LinearCombination([(float(scalar), self)])

    __rmul__ = __mul__

    def __neg__(self):
        return LinearCombination([(-1.0, self)])


class ConstantField(ScalarField):
    """The constant function c."""

    def __init__(self, value: float):
        self.value = float(value)

    def _evaluate(self, x):
        return self.value

    def derivative(self):
        return ConstantField(0.0)

    def __repr__(self):
        return f"ConstantField({self.value!r})"


class ExpressionField(ScalarField):
    """Field backed by a parsed expression; differentiates symbolically."""

    def __init__(self, expr: Expr | str):
        self.expr = parse(expr) if isinstance(expr, str) else expr

    def _evaluate(self, x):
        return self.expr.eval(x)

    def derivative(self):
        return ExpressionField(self.expr.derivative())

    def __repr__(self):
        return f"ExpressionField({self.expr.to_text()!r})"


class PolynomialField(ScalarField):
    """Polynomial with coefficients in ascending order of degree."""

    def __init__(self, coefficients):
        self.coefficients = np.atleast_1d(np.asarray(coefficients, dtype=float))

    def _evaluate(self, x):
        return npoly.polyval(x, self.coefficients)

    def derivative(self):
        return PolynomialField(npoly.polyder(self.coefficients))

    def __repr__(self):
        return f"PolynomialField({self.coefficients.tolist()!r})"


class AntiderivativeField(ScalarField):
    """F(x) = integral of ``integrand`` over [0, x].

    Each evaluation maps the stored quadrature rule affinely onto [0, x],
    so F(0) = 0 exactly and the accuracy matches the rule's.
    """

    def __init__(self, integrand, rule: "QuadratureRule"):
        self.integrand = as_field(integrand)
        self.rule = rule

    def _evaluate(self, x):
        t = np.multiply.outer(x, self.rule.nodes)
        return (self.integrand(t) @ self.rule.weights) * x

    def derivative(self):
        return self.integrand

    def __repr__(self):
        return f"AntiderivativeField({self.integrand!r})"


class LinearCombination(ScalarField):
    """Weighted sum of fields; evaluation and differentiation are termwise."""

    def __init__(self, terms):
        self.terms = tuple((float(c), as_field(f)) for c, f in terms)

    def _evaluate(self, x):
        total = 0.0
        for coefficient, field in self.terms:
            total = total + coefficient * field(x)
        return total

    def derivative(self):
        return LinearCombination([(c, f.derivative()) for c, f in self.terms])

    def __repr__(self):
        return f"LinearCombination({list(self.terms)!r})"


def identity_field() -> PolynomialField:
    """The field x -> x."""
    return PolynomialField((0.0, 1.0))


def boundary_trace(field) -> tuple[float, float]:
    """Values at the two endpoints, (f(0), f(1))."""
    f = as_field(field)
    return (f(0.0), f(1.0))


def as_field(obj) -> ScalarField:
    """Coerce a ScalarField, Expr, source text, or number into a field."""
    if isinstance(obj, ScalarField):
        return obj
    if isinstance(obj, Expr):
        return ExpressionField(obj)
    if isinstance(obj, str):
        return ExpressionField(parse(obj))
    if isinstance(obj, Real):
        return ConstantField(float(obj))
    raise TypeError(f"cannot interpret {type(obj).__name__} as a scalar field")
