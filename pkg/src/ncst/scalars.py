"""Exact coefficient arithmetic for the symbolic layers.

Coefficients are Laurent polynomials in the fundamental length ``ell``
and ordinary polynomials in the inverse curvature radius ``inv_radius``,
over the Gaussian rationals (complex numbers with rational real and
imaginary parts).  Keeping everything rational makes contraction limits
(ell -> 0, inv_radius -> 0) and order-in-ell bookkeeping exact
substitutions instead of floating point estimates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Rat = Union[int, Fraction]


class GaussianRational:
    """Complex number with Fraction real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rat = 0, im: Rat = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def _as_gauss(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    if isinstance(value, complex):
        if value.real != int(value.real) or value.imag != int(value.imag):
            raise TypeError("floating complex values are not exact; use GaussianRational")
        return GaussianRational(int(value.real), int(value.imag))
    raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")


class CoeffPoly:
    """Laurent polynomial in ell, polynomial in inv_radius, Gaussian rational coefficients.

    Stored sparsely as ``{(ell_power, inv_radius_power): GaussianRational}``
    with no zero entries.  ell_power may be negative; inv_radius_power may not.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, GaussianRational] | None = None):
        self.terms: dict[tuple, GaussianRational] = {}
        if terms:
            for key, val in terms.items():
                if not val.is_zero():
                    if key[1] < 0:
                        raise ValueError("inv_radius powers must be non-negative")
                    self.terms[key] = val

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "CoeffPoly":
        return CoeffPoly()

    @staticmethod
    def scalar(value) -> "CoeffPoly":
        g = _as_gauss(value)
        return CoeffPoly({(0, 0): g})

    @staticmethod
    def gauss(re: Rat, im: Rat = 0) -> "CoeffPoly":
        return CoeffPoly({(0, 0): GaussianRational(re, im)})

    @staticmethod
    def i_unit() -> "CoeffPoly":
        return CoeffPoly({(0, 0): GR_I})

    @staticmethod
    def ell(power: int = 1, value=1) -> "CoeffPoly":
        return CoeffPoly({(power, 0): _as_gauss(value)})

    @staticmethod
    def inv_radius(power: int = 1, value=1) -> "CoeffPoly":
        return CoeffPoly({(0, power): _as_gauss(value)})

    # -- ring operations ----------------------------------------------
    def __add__(self, other: "CoeffPoly") -> "CoeffPoly":
        out = dict(self.terms)
        for key, val in other.terms.items():
            acc = out.get(key)
            s = val if acc is None else acc + val
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        res = CoeffPoly()
        res.terms = out
        return res

    def __sub__(self, other: "CoeffPoly") -> "CoeffPoly":
        return self + (-other)

    def __neg__(self) -> "CoeffPoly":
        res = CoeffPoly()
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def __mul__(self, other: "CoeffPoly") -> "CoeffPoly":
        out: dict[tuple, GaussianRational] = {}
        for (e1, r1), v1 in self.terms.items():
            for (e2, r2), v2 in other.terms.items():
                key = (e1 + e2, r1 + r2)
                prod = v1 * v2
                acc = out.get(key)
                s = prod if acc is None else acc + prod
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        res = CoeffPoly()
        res.terms = out
        return res

    def scale(self, value) -> "CoeffPoly":
        g = _as_gauss(value)
        if g.is_zero():
            return CoeffPoly()
        res = CoeffPoly()
        res.terms = {k: v * g for k, v in self.terms.items()}
        return res

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    # -- substitutions and queries --------------------------------------
    def contract(self, ell_to_zero: bool = True, inv_radius_to_zero: bool = True) -> "CoeffPoly":
        """Substitute ell -> 0 and/or inv_radius -> 0 exactly."""
        out: dict[tuple, GaussianRational] = {}
        for (e, r), v in self.terms.items():
            if ell_to_zero:
                if e < 0:
                    raise ZeroDivisionError("ell -> 0 limit of a pole term")
                if e > 0:
                    continue
            if inv_radius_to_zero and r > 0:
                continue
            out[(0 if ell_to_zero else e, 0 if inv_radius_to_zero else r)] = v
        res = CoeffPoly()
        res.terms = out
        return res

    def min_ell_power(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no ell order")
        return min(e for (e, _r) in self.terms)

    def evaluate(self, ell: complex, inv_radius: complex = 0.0) -> complex:
        total = 0j
        for (e, r), v in self.terms.items():
            total += complex(v) * (ell ** e) * (inv_radius ** r if r else 1.0)
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (e, r) in sorted(self.terms):
            v = self.terms[(e, r)]
            piece = str(v)
            if e:
                piece += f"*ell^{e}"
            if r:
                piece += f"*invR^{r}"
            parts.append(piece)
        return " + ".join(parts)

    __repr__ = __str__


C_ZERO = CoeffPoly.zero()
C_ONE = CoeffPoly.scalar(1)
C_I = CoeffPoly.i_unit()


def coeff_sum(items: Iterable[CoeffPoly]) -> CoeffPoly:
    total = CoeffPoly.zero()
    for item in items:
        total = total + item
    return total
