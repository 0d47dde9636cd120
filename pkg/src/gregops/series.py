"""Truncated power series whose coefficients are polynomials in a parameter ``n``.

Identities between such series hold for every ``n`` at once when they hold
coefficient-wise.  Everything is exact (``Fraction``).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence


class ParamPolynomial:
    """Dense polynomial in ``n``; ``coeffs[i]`` multiplies ``n**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "ParamPolynomial":
        return cls([c])

    @classmethod
    def n(cls) -> "ParamPolynomial":
        return cls([0, 1])

    @staticmethod
    def lift(x) -> "ParamPolynomial":
        return x if isinstance(x, ParamPolynomial) else ParamPolynomial([x])

    def __add__(self, other) -> "ParamPolynomial":
        o = self.lift(other).coeffs
        a = self.coeffs
        size = max(len(a), len(o))
        return ParamPolynomial([(a[i] if i < len(a) else 0) + (o[i] if i < len(o) else 0)
                                for i in range(size)])

    __radd__ = __add__

    def __neg__(self) -> "ParamPolynomial":
        return ParamPolynomial([-c for c in self.coeffs])

    def __sub__(self, other) -> "ParamPolynomial":
        return self + (-self.lift(other))

    def __rsub__(self, other) -> "ParamPolynomial":
        return self.lift(other) - self

    def __mul__(self, other) -> "ParamPolynomial":
        o = self.lift(other).coeffs
        if not self.coeffs or not o:
            return ParamPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(o) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o):
                    out[i + j] += a * b
        return ParamPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "ParamPolynomial":
        if isinstance(c, ParamPolynomial):
            if c.degree() > 0:
                raise ZeroDivisionError("division by a non-constant polynomial")
            c = c.coeffs[0] if c.coeffs else 0
        c = Fraction(c)
        return ParamPolynomial([a / c for a in self.coeffs])

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ParamPolynomial([other])
        return isinstance(other, ParamPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, value) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "ParamPolynomial":
        return ParamPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("n" if i == 1 else f"n^{i}")
            mag = abs(c)
            body = f"{mag}{mono}" if (mag != 1 or not mono) else mono
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"ParamPolynomial({self})"


P = ParamPolynomial
N_PARAM = ParamPolynomial.n()


class Series:
    """``sum_{k<=order} c_k t^k`` with ParamPolynomial coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = [P.lift(c) for c in list(coeffs)[: order + 1]]
        cs += [P()] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls, order: int) -> "Series":
        return cls([0, 1], order)

    @classmethod
    def const(cls, c, order: int) -> "Series":
        return cls([c], order)

    @classmethod
    def from_egf(cls, values: Sequence, order: int) -> "Series":
        """Series whose ``k!·[t^k]`` are ``values``."""
        return cls([P.lift(v) / factorial(k) for k, v in enumerate(values)], order)

    def _check(self, other: "Series") -> None:
        if self.order != other.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def _lift(self, other) -> "Series":
        if isinstance(other, Series):
            self._check(other)
            return other
        return Series.const(other, self.order)

    def __add__(self, other) -> "Series":
        o = self._lift(other)
        return Series([a + b for a, b in zip(self.coeffs, o.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series([-a for a in self.coeffs], self.order)

    def __sub__(self, other) -> "Series":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Series":
        return self._lift(other) - self

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            return Series([a * P.lift(other) for a in self.coeffs], self.order)
        self._check(other)
        out = [P() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(self.order + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] = out[i + j] + a * b
        return Series(out, self.order)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Series":
        return Series([a / c for a in self.coeffs], self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, Series) and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __getitem__(self, k: int) -> ParamPolynomial:
        return self.coeffs[k]

    def egf(self, k: int) -> ParamPolynomial:
        """``k!·[t^k]``."""
        return self.coeffs[k] * factorial(k)

    def egf_table(self) -> list[ParamPolynomial]:
        return [self.egf(k) for k in range(self.order + 1)]

    def specialize(self, value) -> "Series":
        return Series([P.const(c(value)) for c in self.coeffs], self.order)

    def derivative(self) -> "Series":
        return Series([c * k for k, c in enumerate(self.coeffs)][1:], self.order)

    def truncate(self, order: int) -> "Series":
        return Series(self.coeffs, order)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                terms.append(f"({c}){mono}" if mono else f"({c})")
        return " + ".join(terms) + f" + O(t^{self.order + 1})" if terms else f"O(t^{self.order + 1})"

    def __repr__(self) -> str:
        return f"Series({self})"


def compose(f: Series, g: Series) -> Series:
    """``f(g(t))``; ``g`` must have zero constant term."""
    f._check(g)
    if g.coeffs[0]:
        raise ValueError("inner series must have zero constant term")
    acc = Series.const(f.coeffs[-1], f.order)
    for c in reversed(f.coeffs[:-1]):
        acc = acc * g + Series.const(c, f.order)
    return acc


def exp(f: Series) -> Series:
    """``exp(f)`` for ``f`` with zero constant term."""
    if f.coeffs[0]:
        raise ValueError("exp needs a zero constant term")
    out = [P.const(1)] + [P() for _ in range(f.order)]
    for k in range(1, f.order + 1):
        acc = P()
        for j in range(1, k + 1):
            acc = acc + f.coeffs[j] * out[k - j] * j
        out[k] = acc / k
    return Series(out, f.order)


def log(u: Series) -> Series:
    """``log(u)`` for ``u`` with constant term 1."""
    if u.coeffs[0] != 1:
        raise ValueError("log needs constant term 1")
    out = [P() for _ in range(u.order + 1)]
    for k in range(1, u.order + 1):
        acc = u.coeffs[k] * k
        for j in range(1, k):
            acc = acc - out[j] * u.coeffs[k - j] * j
        out[k] = acc / k
    return Series(out, u.order)


def reversion(f: Series) -> Series:
    """Compositional inverse, solved one order at a time."""
    a1 = f.coeffs[1]
    if f.coeffs[0]:
        raise ValueError("reversion needs a zero constant term")
    if not a1 or not a1.is_constant():
        raise ValueError("reversion needs a nonzero constant linear coefficient")
    N = f.order
    g = [P(), P.const(1) / a1] + [P() for _ in range(N - 1)]
    for k in range(2, N + 1):
        residual = compose(f, Series(g, N)).coeffs[k]
        g[k] = -residual / a1
    return Series(g, N)


# -- generating series of the tree operads and their duals ------------------------


def greg_egf(order: int) -> Series:
    """Solution of ``f = t e^f + n (e^f - f - 1)`` with symbolic ``n``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    t = Series.t(order)
    f = Series([], order)
    for _ in range(order + 1):
        e = exp(f)
        f = t * e + (e - f - 1) * N_PARAM
    return f


def greg_equation_residual(f: Series) -> Series:
    e = exp(f)
    return f - (Series.t(f.order) * e + (e - f - 1) * N_PARAM)


def greg_polynomials(k_max: int) -> list[ParamPolynomial]:
    """``g_1 = 1``, ``g_{k+1} = (n+2) k g_k + (n+1)^2 g_k'``."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    out = [P.const(1)]
    sq = (N_PARAM + 1) * (N_PARAM + 1)
    for k in range(1, k_max):
        g = out[-1]
        out.append((N_PARAM + 2) * g * k + sq * g.derivative())
    return out


def exp_neg_t(order: int) -> Series:
    return exp(-Series.t(order))


def koszul_partner(order: int) -> Series:
    """``h = ((n+1) t + n) e^{-t} - n``."""
    t = Series.t(order)
    return (t * (N_PARAM + 1) + N_PARAM) * exp_neg_t(order) - N_PARAM


def verify_koszul_pair(order: int, h: Series | None = None, n: int | None = None) -> bool:
    """True iff ``h(f(t)) = t`` up to ``order`` with ``f`` the Greg series.

    ``n`` fixes the parameter before composing; ``h`` defaults to the
    symbolic partner series.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    f = greg_egf(order)
    h = koszul_partner(order) if h is None else h
    if n is not None:
        f = f.specialize(n)
        h = h.specialize(n)
    return compose(h, f) == Series.t(order)


def dual_dimension_series(order: int) -> Series:
    """``((n+1) t - n) e^t + n``."""
    t = Series.t(order)
    return (t * (N_PARAM + 1) - N_PARAM) * exp(t) + N_PARAM


def cyclie_egf(order: int) -> Series:
    """``(1-t) ln(1-t) + t``."""
    t = Series.t(order)
    return (1 - t) * log(1 - t) + t


def free_extension_egf(n: int, f_s: Series) -> Series:
    """``(rev(t - (n+1) f_S) - t) / (n+1) + t``; identity series when ``n = 0``."""
    t = Series.t(f_s.order)
    if n == 0:
        return t
    return (reversion(t - f_s * (n + 1)) - t) / (n + 1) + t


def decomposition_check(n: int, order: int) -> bool:
    """``f_{n+1} = f_n o F`` with ``f_k`` the series of k pre-Lie products
    sharing their bracket and ``F`` the free extension by ``n`` copies of CycLie."""
    if n < 1 or order < 3:
        raise ValueError("need n >= 1 and order >= 3")
    f = greg_egf(order)
    big = f.specialize(n)
    small = f.specialize(n - 1)
    F = free_extension_egf(n, cyclie_egf(order))
    return big == compose(small, F)


def lemma_series(order: int) -> dict[str, Series]:
    """The explicit f, g, h of the decomposition argument."""
    t = Series.t(order)
    e = exp_neg_t(order)
    n = N_PARAM
    f = (t * n + t + n) * e - n
    g = (t * n + n - 1) * e - n + 1
    h = t - (1 - t) * log(1 - t) * (n + 1) - t * (n + 1)
    return {"f": f, "g": g, "h": h}


def lemma_identities(order: int) -> dict[str, bool]:
    s = lemma_series(order)
    f, g, h = s["f"], s["g"], s["h"]
    combo = g * (N_PARAM + 1) - f * N_PARAM
    return {
        "(n+1)g - nf = 1 - exp(-t)": combo == 1 - exp_neg_t(order),
        "h((n+1)g - nf) = f": compose(h, combo) == f,
    }


def lagrange_reversion(f: Series) -> Series:
    """Reversion by Lagrange inversion: ``[t^k] g = [w^{k-1}] (w / f(w))^k / k``.

    Independent of :func:`reversion`; used as its oracle.  Needs the linear
    coefficient to be a nonzero constant.
    """
    N = f.order
    a1 = f.coeffs[1].constant()
    if not a1 or not f.coeffs[1].is_constant():
        raise ValueError("needs a nonzero constant linear coefficient")
    # phi = f(w) / w, then (w / f)^k = phi^{-k}
    phi = Series(list(f.coeffs[1:]), N)
    inv = _series_inverse(phi)
    out = [P()]
    power = Series.const(1, N)
    for k in range(1, N + 1):
        power = power * inv
        out.append(power.coeffs[k - 1] / k)
    return Series(out, N)


def _series_inverse(u: Series) -> Series:
    c0 = u.coeffs[0]
    if not c0 or not c0.is_constant():
        raise ValueError("constant term must be a nonzero constant")
    out = [P.const(1) / c0] + [P() for _ in range(u.order)]
    for k in range(1, u.order + 1):
        acc = P()
        for j in range(1, k + 1):
            acc = acc + u.coeffs[j] * out[k - j]
        out[k] = -acc / c0
    return Series(out, u.order)
