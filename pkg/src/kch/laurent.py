"""Sparse multivariate Laurent polynomials over Gaussian rationals.

A polynomial is a finite map from exponent vectors to nonzero ``Scalar``
coefficients.  The exponent vector carries one signed integer per declared
variable, so negative powers are first class.  The canonical term order
compares exponent vectors lexicographically reading from the LAST declared
variable back to the first; printing, hashing, and leading-term selection all
use it, which keeps every rendering byte-stable.

Text grammar (``parse_polynomial`` and ``__str__``): terms are joined by
``+``/``-``; a term is an optional coefficient (``3``, ``-1/2``, or a
parenthesized complex value such as ``(2+3i)``) together with ``*``-separated
variable powers ``X^k`` where ``k`` is optionally signed and ``X`` abbreviates
``X^1``.  Whitespace is ignored.  Example: ``1 - X - P + Q*X*P``.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping

from .errors import DomainError, ParseError, RingMismatchError
from .scalars import ONE, ZERO, Scalar

ExponentVector = tuple[int, ...]


def _term_key(exps: ExponentVector) -> ExponentVector:
    return tuple(reversed(exps))


class LaurentPolynomial:
    __slots__ = ("variables", "_terms")

    def __init__(
        self,
        variables: Iterable[str],
        terms: Mapping[ExponentVector, Scalar] | Iterable[tuple[ExponentVector, Scalar]],
    ) -> None:
        variables = tuple(variables)
        for name in variables:
            if name == "i" or not _re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise DomainError(f"invalid variable name {name!r}")
        if len(set(variables)) != len(variables):
            raise DomainError("duplicate variable names in ring")
        items = terms.items() if isinstance(terms, Mapping) else terms
        width = len(variables)
        cleaned: dict[ExponentVector, Scalar] = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != width or not all(isinstance(e, int) for e in exps):
                raise DomainError(f"exponent vector {exps!r} does not fit ring {variables!r}")
            if not isinstance(coeff, Scalar):
                raise DomainError(f"coefficient {coeff!r} is not a scalar")
            if exps in cleaned:
                coeff = cleaned[exps] + coeff
            if coeff.is_zero():
                cleaned.pop(exps, None)
            else:
                cleaned[exps] = coeff
        object.__setattr__(self, "variables", variables)
        object.__setattr__(
            self, "_terms", tuple(sorted(cleaned.items(), key=lambda kv: _term_key(kv[0])))
        )

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("LaurentPolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "LaurentPolynomial":
        return cls(variables, {})

    @classmethod
    def one(cls, variables: Iterable[str]) -> "LaurentPolynomial":
        return cls.constant(variables, ONE)

    @classmethod
    def constant(cls, variables: Iterable[str], value: Scalar | int | Fraction) -> "LaurentPolynomial":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): Scalar.of(value)})

    @classmethod
    def variable(cls, variables: Iterable[str], name: str) -> "LaurentPolynomial":
        variables = tuple(variables)
        if name not in variables:
            raise DomainError(f"variable {name!r} is not in ring {variables!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: ONE})

    @classmethod
    def monomial(
        cls,
        variables: Iterable[str],
        exps: ExponentVector,
        coeff: Scalar | int | Fraction = 1,
    ) -> "LaurentPolynomial":
        return cls(variables, {tuple(exps): Scalar.of(coeff)})

    # -- inspection --------------------------------------------------------

    def terms(self) -> Iterator[tuple[ExponentVector, Scalar]]:
        return iter(self._terms)

    def term_map(self) -> dict[ExponentVector, Scalar]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(exps) for exps, _ in self._terms)

    def constant_term(self) -> Scalar:
        zero_exps = (0,) * len(self.variables)
        for exps, coeff in self._terms:
            if exps == zero_exps:
                return coeff
        return ZERO

    def as_constant(self) -> Scalar:
        if not self.is_constant():
            raise DomainError(f"polynomial {self} is not constant")
        return self.constant_term()

    def leading_term(self) -> tuple[ExponentVector, Scalar]:
        if not self._terms:
            raise DomainError("zero polynomial has no leading term")
        return self._terms[-1]

    def exponent_range(self, name: str) -> tuple[int, int]:
        idx = self._index(name)
        exps = [t[0][idx] for t in self._terms]
        if not exps:
            return (0, 0)
        return (min(exps), max(exps))

    def _index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise DomainError(f"variable {name!r} is not in ring {self.variables!r}") from None

    def _check_ring(self, other: "LaurentPolynomial") -> None:
        if self.variables != other.variables:
            raise RingMismatchError(
                f"mismatched rings {self.variables!r} and {other.variables!r}"
            )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = LaurentPolynomial.constant(self.variables, Scalar.of(other))
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_ring(other)
        acc = dict(self._terms)
        for exps, coeff in other._terms:
            total = acc.get(exps, ZERO) + coeff
            if total.is_zero():
                acc.pop(exps, None)
            else:
                acc[exps] = total
        return LaurentPolynomial(self.variables, acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self.variables, [(e, -c) for e, c in self._terms])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = LaurentPolynomial.constant(self.variables, Scalar.of(other))
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(Scalar.of(other))
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_ring(other)
        acc: dict[ExponentVector, Scalar] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                exps = tuple(a + b for a, b in zip(e1, e2))
                total = acc.get(exps, ZERO) + c1 * c2
                if total.is_zero():
                    acc.pop(exps, None)
                else:
                    acc[exps] = total
        return LaurentPolynomial(self.variables, acc)

    __rmul__ = __mul__

    def scale(self, value: Scalar | int | Fraction) -> "LaurentPolynomial":
        value = Scalar.of(value)
        if value.is_zero():
            return LaurentPolynomial.zero(self.variables)
        return LaurentPolynomial(self.variables, [(e, c * value) for e, c in self._terms])

    def __pow__(self, exponent: int) -> "LaurentPolynomial":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.monomial_inverse() ** (-exponent)
        result = LaurentPolynomial.one(self.variables)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monomial_inverse(self) -> "LaurentPolynomial":
        """Invert a single-term polynomial; anything else is not a unit."""
        if len(self._terms) != 1:
            raise DomainError(f"{self} is not a unit in the Laurent ring")
        exps, coeff = self._terms[0]
        return LaurentPolynomial(self.variables, {tuple(-e for e in exps): coeff.inverse()})

    def shift(self, delta: ExponentVector) -> "LaurentPolynomial":
        delta = tuple(delta)
        return LaurentPolynomial(
            self.variables,
            [(tuple(a + b for a, b in zip(e, delta)), c) for e, c in self._terms],
        )

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, point: Mapping[str, Scalar]) -> Scalar:
        for name in self.variables:
            if name not in point:
                raise DomainError(f"no value supplied for variable {name!r}")
        values = [Scalar.of(point[name]) for name in self.variables]
        total = ZERO
        for exps, coeff in self._terms:
            factor = coeff
            for value, e in zip(values, exps):
                if e == 0:
                    continue
                if value.is_zero() and e < 0:
                    raise DomainError("zero assigned to a variable with a negative exponent")
                factor = factor * value**e
            total = total + factor
        return total

    def substitute(self, name: str, value: Scalar | int | Fraction) -> "LaurentPolynomial":
        """Evaluate one variable, returning a polynomial over the remaining ring."""
        value = Scalar.of(value)
        idx = self._index(name)
        rest = self.variables[:idx] + self.variables[idx + 1 :]
        acc: dict[ExponentVector, Scalar] = {}
        for exps, coeff in self._terms:
            e = exps[idx]
            if e < 0 and value.is_zero():
                raise DomainError("zero assigned to a variable with a negative exponent")
            if e != 0:
                if value.is_zero():
                    continue
                coeff = coeff * value**e
            new_exps = exps[:idx] + exps[idx + 1 :]
            total = acc.get(new_exps, ZERO) + coeff
            if total.is_zero():
                acc.pop(new_exps, None)
            else:
                acc[new_exps] = total
        return LaurentPolynomial(rest, acc)

    def with_variables(self, variables: Iterable[str]) -> "LaurentPolynomial":
        """Reinterpret over a larger (or reordered) ring containing every current variable."""
        variables = tuple(variables)
        try:
            positions = [variables.index(v) for v in self.variables]
        except ValueError as exc:
            raise RingMismatchError(
                f"ring {variables!r} does not contain all of {self.variables!r}"
            ) from exc
        width = len(variables)
        acc = {}
        for exps, coeff in self._terms:
            new_exps = [0] * width
            for pos, e in zip(positions, exps):
                new_exps[pos] = e
            acc[tuple(new_exps)] = coeff
        return LaurentPolynomial(variables, acc)

    # -- calculus ----------------------------------------------------------

    def x_log_derivative(self, name: str) -> "LaurentPolynomial":
        """d/dx where the variable is e^x: the monomial X^k picks up a factor k."""
        idx = self._index(name)
        return LaurentPolynomial(
            self.variables,
            [(e, c * Scalar.of(e[idx])) for e, c in self._terms if e[idx] != 0],
        )

    def derivative(self, name: str) -> "LaurentPolynomial":
        idx = self._index(name)
        acc = {}
        for exps, coeff in self._terms:
            e = exps[idx]
            if e == 0:
                continue
            new_exps = exps[:idx] + (e - 1,) + exps[idx + 1 :]
            acc[new_exps] = acc.get(new_exps, ZERO) + coeff * Scalar.of(e)
        return LaurentPolynomial(self.variables, acc)

    # -- division and normal forms -----------------------------------------

    def strip_monomial_factor(self) -> tuple["LaurentPolynomial", ExponentVector]:
        """Divide out the largest common monomial; returns (result, removed exponents)."""
        if not self._terms:
            return self, (0,) * len(self.variables)
        mins = tuple(min(t[0][i] for t in self._terms) for i in range(len(self.variables)))
        if not any(mins):
            return self, mins
        return self.shift(tuple(-m for m in mins)), mins

    def exact_divide(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact quotient self/divisor, or DomainError when it is not a multiple.

        Both operands are first shifted to nonnegative exponents; the shift
        difference multiplies the quotient back.  Quotients are found whenever
        the shifted division terminates with zero remainder, which covers every
        use in this package; genuinely exotic Laurent cancellations are
        reported as failures rather than guessed at.
        """
        self._check_ring(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        f0, f_shift = self.strip_monomial_factor()
        d0, d_shift = divisor.strip_monomial_factor()
        lead_exps, lead_coeff = d0._terms[-1]
        work = dict(f0._terms)
        quotient: dict[ExponentVector, Scalar] = {}
        while work:
            exps = max(work, key=_term_key)
            coeff = work[exps]
            q_exps = tuple(a - b for a, b in zip(exps, lead_exps))
            if any(e < 0 for e in q_exps):
                raise DomainError("exact division failed: remainder is nonzero")
            factor = coeff / lead_coeff
            quotient[q_exps] = factor
            for de, dc in d0._terms:
                t = tuple(a + b for a, b in zip(q_exps, de))
                total = work.get(t, ZERO) - factor * dc
                if total.is_zero():
                    work.pop(t, None)
                else:
                    work[t] = total
        delta = tuple(a - b for a, b in zip(f_shift, d_shift))
        return LaurentPolynomial(self.variables, quotient).shift(delta)

    def primitive_normalized(self) -> "LaurentPolynomial":
        """Scale so coefficients are Gaussian integers of content one and the
        leading coefficient has positive real part (positive imaginary part
        breaking a zero-real tie)."""
        if self.is_zero():
            return self
        denominators = []
        for _, coeff in self._terms:
            denominators.append(coeff.re.denominator)
            denominators.append(coeff.im.denominator)
        scale = Fraction(lcm(*denominators))
        numerators = 0
        for _, coeff in self._terms:
            numerators = gcd(numerators, abs(int(coeff.re * scale)))
            numerators = gcd(numerators, abs(int(coeff.im * scale)))
        if numerators:
            scale = scale / numerators
        result = self.scale(Scalar.of(scale))
        _, lead = result.leading_term()
        if lead.re < 0 or (lead.re == 0 and lead.im < 0):
            result = -result
        return result

    # -- equality / hashing / printing --------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.variables, self._terms))

    def _monomial_text(self, exps: ExponentVector) -> str:
        pieces = []
        for name, e in zip(self.variables, exps):
            if e == 0:
                continue
            pieces.append(name if e == 1 else f"{name}^{e}")
        return "*".join(pieces)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        rendered = []
        for exps, coeff in self._terms:
            mono = self._monomial_text(exps)
            if coeff.is_real():
                negative = coeff.re < 0
                magnitude = abs(coeff.re)
                if magnitude == 1 and mono:
                    body = mono
                else:
                    body = str(magnitude) if not mono else f"{magnitude}*{mono}"
            else:
                negative = False
                body = f"({coeff})" if not mono else f"({coeff})*{mono}"
            rendered.append((negative, body))
        negative, body = rendered[0]
        out = ("-" if negative else "") + body
        for negative, body in rendered[1:]:
            out += (" - " if negative else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.variables!r}, {self})"


# -- parsing ----------------------------------------------------------------

_TOKEN = _re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[+\-*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos}")
        if match.end() == pos:
            break
        for kind in ("number", "name", "op"):
            value = match.group(kind)
            if value is not None:
                tokens.append((kind, value, match.start(kind)))
                break
        pos = match.end()
    return tokens


class _PolynomialParser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.variables = variables
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        token = self.peek()
        if token is None:
            raise ParseError(f"unexpected end of polynomial {self.text!r}")
        self.pos += 1
        return token

    def parse(self) -> LaurentPolynomial:
        if not self.tokens:
            raise ParseError("empty polynomial text")
        result = LaurentPolynomial.zero(self.variables)
        sign = 1
        first = True
        while True:
            token = self.peek()
            if token is None:
                if first:
                    raise ParseError(f"empty polynomial text {self.text!r}")
                break
            if token[1] in "+-" and token[0] == "op":
                self.take()
                sign = -1 if token[1] == "-" else 1
            elif not first:
                raise ParseError(
                    f"expected '+' or '-' at position {token[2]} in {self.text!r}"
                )
            else:
                sign = 1
            term = self._term()
            result = result + (term.scale(Scalar.of(sign)) if sign < 0 else term)
            first = False
        return result

    def _term(self) -> LaurentPolynomial:
        coeff = ONE
        exps = [0] * len(self.variables)
        saw_factor = False
        while True:
            token = self.peek()
            if token is None:
                break
            kind, value, where = token
            if kind == "number":
                self.take()
                coeff = coeff * Scalar(Fraction(value))
            elif kind == "op" and value == "(":
                self.take()
                coeff = coeff * self._complex_literal(where)
            elif kind == "name":
                if value == "i":
                    raise ParseError(
                        f"imaginary coefficient at position {where} must be parenthesized"
                    )
                if value not in self.variables:
                    raise ParseError(f"unknown variable {value!r} at position {where}")
                self.take()
                exps[self.variables.index(value)] += self._exponent()
            else:
                if not saw_factor:
                    raise ParseError(f"expected a term at position {where} in {self.text!r}")
                break
            saw_factor = True
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "*":
                self.take()
                continue
            break
        if not saw_factor:
            raise ParseError(f"empty term in {self.text!r}")
        return LaurentPolynomial.monomial(self.variables, tuple(exps), coeff)

    def _exponent(self) -> int:
        token = self.peek()
        if token is None or token[0] != "op" or token[1] != "^":
            return 1
        self.take()
        sign = 1
        token = self.take()
        if token[0] == "op" and token[1] in "+-":
            sign = -1 if token[1] == "-" else 1
            token = self.take()
        if token[0] != "number" or "/" in token[1]:
            raise ParseError(f"expected an integer exponent at position {token[2]}")
        return sign * int(token[1])

    def _complex_literal(self, where: int) -> Scalar:
        total = ZERO
        count = 0
        while True:
            token = self.take()
            sign = 1
            if token[0] == "op" and token[1] in "+-":
                sign = -1 if token[1] == "-" else 1
                token = self.take()
            elif count > 0:
                raise ParseError(f"missing sign inside coefficient at position {token[2]}")
            if token[0] == "number":
                value = Scalar(Fraction(token[1]))
                nxt = self.peek()
                if nxt is not None and nxt[0] == "name" and nxt[1] == "i":
                    self.take()
                    value = value * Scalar(0, 1)
            elif token[0] == "name" and token[1] == "i":
                value = Scalar(0, 1)
            else:
                raise ParseError(f"invalid coefficient starting at position {where}")
            total = total + (value if sign > 0 else -value)
            count += 1
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == ")":
                self.take()
                return total
            if nxt is None:
                raise ParseError(f"unterminated coefficient starting at position {where}")


def parse_polynomial(text: str, variables: Iterable[str]) -> LaurentPolynomial:
    return _PolynomialParser(text, tuple(variables)).parse()
