"""Exact Laurent polynomials in u_1, ..., u_n with integer coefficients."""

from __future__ import annotations

import json
import re
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class NotDivisibleError(ArithmeticError):
    """An exact division left a nonzero remainder."""


class LaurentPoly:
    """Immutable element of ``Z[u_1^{+-1}, ..., u_n^{+-1}]``.

    The term map never stores zero coefficients, so equality of values is
    equality of term maps.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, int] = {}
        for exp, c in items:
            exp = tuple(int(x) for x in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have {nvars} entries")
            c = clean.get(exp, 0) + int(c)
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, int]) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> LaurentPoly:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: int) -> LaurentPoly:
        return cls._raw(nvars, {(0,) * nvars: int(c)} if c else {})

    @classmethod
    def one(cls, nvars: int) -> LaurentPoly:
        return cls.constant(nvars, 1)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> LaurentPoly:
        exp = tuple(int(x) for x in exp)
        return cls._raw(len(exp), {exp: int(coeff)} if coeff else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> LaurentPoly:
        """The variable ``u_{i+1}`` (``i`` is 0-based)."""
        return cls.monomial(tuple(1 if j == i else 0 for j in range(nvars)))

    # -- basic protocol --------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self._terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {self!s})"

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other: object) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.nvars, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other: object) -> LaurentPoly:
        other = self._coerce(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                del out[exp]
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> LaurentPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> LaurentPoly:
        return self._coerce(other) - self

    def __mul__(self, other: object) -> LaurentPoly:
        other = self._coerce(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(exp, 0) + c1 * c2
                if v:
                    out[exp] = v
                else:
                    del out[exp]
        return LaurentPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if not self.is_monomial():
                raise NotDivisibleError("only monomials are invertible")
            (exp, c), = self._terms.items()
            if c not in (1, -1):
                raise NotDivisibleError("coefficient is not a unit")
            return LaurentPoly.monomial(tuple(x * k for x in exp), c ** (-k))
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exp: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial ``u^exp``."""
        return LaurentPoly._raw(
            self.nvars, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()}
        )

    def exact_div(self, other: LaurentPoly | int) -> LaurentPoly:
        """Quotient ``self / other``, raising NotDivisibleError if it is not Laurent.

        Long division with respect to the lexicographic order on exponents.
        Newton polytopes add under multiplication, so every quotient exponent
        lies in the box ``[min(A) - min(B), max(A) - max(B)]`` taken
        coordinatewise; leaving the box proves non-divisibility and keeps the
        loop finite.
        """
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return self
        lead_d, lead_c = max(other._terms.items())
        lo = [min(e[i] for e in self._terms) - min(e[i] for e in other._terms) for i in range(self.nvars)]
        hi = [max(e[i] for e in self._terms) - max(e[i] for e in other._terms) for i in range(self.nvars)]
        remainder = dict(self._terms)
        quotient: dict[Exponent, int] = {}
        while remainder:
            lead_r = max(remainder)
            exp = tuple(a - b for a, b in zip(lead_r, lead_d))
            if any(not (l <= x <= h) for l, x, h in zip(lo, exp, hi)):
                raise NotDivisibleError("remainder cannot be cancelled")
            c, rest = divmod(remainder[lead_r], lead_c)
            if rest:
                raise NotDivisibleError("coefficient division is not exact")
            quotient[exp] = c
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(exp, e2))
                v = remainder.get(key, 0) - c * c2
                if v:
                    remainder[key] = v
                else:
                    del remainder[key]
        return LaurentPoly._raw(self.nvars, quotient)

    # -- queries ---------------------------------------------------------

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def denominator_vector(self) -> tuple[int, ...]:
        """``den(L)``: minus the minimal exponent of each variable."""
        if self.is_zero():
            raise ValueError("the zero polynomial has no denominator vector")
        return tuple(-min(e[i] for e in self._terms) for i in range(self.nvars))

    def numerator(self) -> LaurentPoly:
        """``u^den(L) * L``, a polynomial not divisible by any variable."""
        return self.shift(self.denominator_vector())

    def substitute(self, values: Sequence[LaurentPoly]) -> LaurentPoly:
        """Evaluate at ``u_i = values[i]`` for a polynomial ``self``.

        Negative exponents are allowed only where the value is a unit monomial.
        """
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        target = values[0].nvars if values else 0
        out = LaurentPoly.zero(target)
        cache: dict[tuple[int, int], LaurentPoly] = {}

        def power(i: int, k: int) -> LaurentPoly:
            key = (i, k)
            if key not in cache:
                cache[key] = values[i] ** k
            return cache[key]

        for exp, c in self._terms.items():
            term = LaurentPoly.constant(target, c)
            for i, k in enumerate(exp):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    # -- serialization ---------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "vars": self.nvars,
            "terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> LaurentPoly:
        n = int(obj["vars"])
        return cls(n, [(tuple(t["exp"]), int(t["coeff"])) for t in obj["terms"]])

    @classmethod
    def from_json(cls, text: str) -> LaurentPoly:
        return cls.from_json_obj(json.loads(text))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for k, (exp, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mono = " ".join(f"u{i + 1}^{x}" for i, x in enumerate(exp) if x)
            body = f"{abs(c)} * {mono}" if mono else f"{abs(c)}"
            if k == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    @classmethod
    def parse(cls, text: str, nvars: int) -> LaurentPoly:
        """Inverse of ``str``: terms ``c * u1^a1 ... un^an`` joined by + / -."""
        text = text.strip()
        if text == "0":
            return cls.zero(nvars)
        out: dict[Exponent, int] = {}
        token = re.compile(r"\s*([+-])?\s*(\d+)(?:\s*\*\s*((?:u\d+\^-?\d+\s*)+))?")
        pos = 0
        while pos < len(text):
            m = token.match(text, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"cannot parse Laurent polynomial at {text[pos:]!r}")
            sign = -1 if m.group(1) == "-" else 1
            exp = [0] * nvars
            for var, power in re.findall(r"u(\d+)\^(-?\d+)", m.group(3) or ""):
                exp[int(var) - 1] += int(power)
            key = tuple(exp)
            out[key] = out.get(key, 0) + sign * int(m.group(2))
            pos = m.end()
        return cls(nvars, out)


def u_vars(nvars: int) -> list[LaurentPoly]:
    return [LaurentPoly.var(nvars, i) for i in range(nvars)]


def denominator_vector(poly: LaurentPoly) -> tuple[int, ...]:
    return poly.denominator_vector()


def is_nonnegative(poly: LaurentPoly) -> bool:
    return poly.is_nonnegative()
