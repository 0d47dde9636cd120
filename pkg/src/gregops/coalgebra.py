"""Finite-dimensional cocommutative coassociative coalgebras.

The coproduct is stored sparsely: ``delta[k-1]`` lists the terms
``(i, j, c)`` of ``Delta(e_k) = sum c * e_i (x) e_j``.  Zero coefficients
are never stored.  The dual commutative product on ``V*`` is
``mu(e*_i, e*_j) = sum_k <Delta(e_k), e_i (x) e_j> e*_k``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path


@dataclass(frozen=True)
class Coalgebra:
    dim: int
    delta: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        if not self.delta:
            object.__setattr__(self, "delta", tuple(() for _ in range(self.dim)))
        if len(self.delta) != self.dim:
            raise ValueError(f"need {self.dim} coproduct rows, got {len(self.delta)}")
        rows = []
        for k, row in enumerate(self.delta, start=1):
            acc: dict = defaultdict(Fraction)
            for i, j, c in row:
                if not (1 <= i <= self.dim and 1 <= j <= self.dim):
                    raise ValueError(f"index out of range in Delta(e_{k}): ({i}, {j})")
                acc[(i, j)] += Fraction(c)
            rows.append(tuple(sorted((i, j, c) for (i, j), c in acc.items() if c)))
        object.__setattr__(self, "delta", tuple(rows))

    def coproduct(self, k: int) -> tuple:
        """Sweedler terms ``(c1, c2, coeff)`` of ``Delta(e_k)``."""
        return self.delta[k - 1]

    def is_zero(self) -> bool:
        return not any(self.delta)

    def tensor(self) -> dict:
        return {(k, i, j): c for k, row in enumerate(self.delta, 1) for i, j, c in row}

    def __str__(self) -> str:
        return self.name or format_coalgebra(self)


def zero_coalgebra(n: int) -> Coalgebra:
    return Coalgebra(n, name=f"zero({n})")


def delta_max(n: int) -> Coalgebra:
    """``e_k -> sum_{max(i,j)=k} e_i (x) e_j``."""
    if n < 1:
        raise ValueError("delta_max needs n >= 1")
    rows = []
    for k in range(1, n + 1):
        rows.append(tuple((i, j, 1) for i in range(1, k + 1) for j in range(1, k + 1)
                          if max(i, j) == k))
    return Coalgebra(n, tuple(rows), name=f"max({n})")


def validate(C: Coalgebra) -> list[str]:
    """Violated identities, each with a witnessing basis index.  Empty iff valid."""
    report = []
    for k in range(1, C.dim + 1):
        terms = {(i, j): c for i, j, c in C.coproduct(k)}
        for (i, j), c in sorted(terms.items()):
            if terms.get((j, i), 0) != c:
                report.append(f"cocommutativity fails at k={k}: coeff of e{i}(x)e{j} "
                              f"is {c}, of e{j}(x)e{i} is {terms.get((j, i), 0)}")
                break
    for k in range(1, C.dim + 1):
        left: dict = defaultdict(Fraction)
        right: dict = defaultdict(Fraction)
        for a, b, c in C.coproduct(k):
            for i, j, d in C.coproduct(a):
                left[(i, j, b)] += c * d
            for i, j, d in C.coproduct(b):
                right[(a, i, j)] += c * d
        diff = {key for key in set(left) | set(right) if left[key] != right[key]}
        if diff:
            report.append(f"coassociativity fails at k={k}: e{min(diff)} component differs")
    return report


@dataclass(frozen=True)
class DualProductTable:
    dim: int
    table: tuple  # table[i-1][j-1] is a tuple of (k, coeff)

    def product(self, i: int, j: int) -> tuple:
        return self.table[i - 1][j - 1]

    def multiply(self, u: dict, v: dict) -> dict:
        """Product of two sparse dual vectors ``{index: coeff}``."""
        out: dict = defaultdict(Fraction)
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.product(i, j):
                    out[k] += a * b * c
        return {k: c for k, c in out.items() if c}


def dual_product(C: Coalgebra) -> DualProductTable:
    cells = [[defaultdict(Fraction) for _ in range(C.dim)] for _ in range(C.dim)]
    for k in range(1, C.dim + 1):
        for i, j, c in C.coproduct(k):
            cells[i - 1][j - 1][k] += c
    table = tuple(tuple(tuple(sorted((k, c) for k, c in cell.items() if c)) for cell in row)
                  for row in cells)
    return DualProductTable(C.dim, table)


def dual_to_coalgebra(D: DualProductTable) -> Coalgebra:
    rows: list = [[] for _ in range(D.dim)]
    for i in range(1, D.dim + 1):
        for j in range(1, D.dim + 1):
            for k, c in D.product(i, j):
                rows[k - 1].append((i, j, c))
    return Coalgebra(D.dim, tuple(tuple(r) for r in rows))


def check_dual_product(D: DualProductTable) -> list[str]:
    """Commutativity and associativity failures of the dual product."""
    report = []
    basis = [{i: Fraction(1)} for i in range(1, D.dim + 1)]
    for i in range(D.dim):
        for j in range(D.dim):
            if D.multiply(basis[i], basis[j]) != D.multiply(basis[j], basis[i]):
                report.append(f"not commutative at ({i + 1}, {j + 1})")
            for k in range(D.dim):
                lhs = D.multiply(D.multiply(basis[i], basis[j]), basis[k])
                rhs = D.multiply(basis[i], D.multiply(basis[j], basis[k]))
                if lhs != rhs:
                    report.append(f"not associative at ({i + 1}, {j + 1}, {k + 1})")
    return report


# -- text format: lines "k: i j coeff" ----------------------------------------


def format_coalgebra(C: Coalgebra) -> str:
    lines = [f"dim {C.dim}"]
    for k in range(1, C.dim + 1):
        for i, j, c in C.coproduct(k):
            lines.append(f"{k}: {i} {j} {c}")
    return "\n".join(lines)


def parse_coalgebra(text: str, dim: int | None = None) -> Coalgebra:
    rows: dict = defaultdict(list)
    declared = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dim"):
            declared = int(line.split()[1])
            continue
        head, _, body = line.partition(":")
        parts = body.split()
        if len(parts) != 3:
            raise ValueError(f"bad coproduct line {raw!r}")
        rows[int(head)].append((int(parts[0]), int(parts[1]), Fraction(parts[2])))
    n = dim if dim is not None else declared
    if n is None:
        n = max([*rows, *(max(i, j) for r in rows.values() for i, j, _ in r)], default=0)
    return Coalgebra(n, tuple(tuple(rows.get(k, ())) for k in range(1, n + 1)))


def coalgebra_from_spec(spec: str, colors: int) -> Coalgebra:
    """``zero``, ``max``, ``zero N``, ``max N`` or ``file:PATH``."""
    parts = spec.replace(":", " ", 1).split() if not spec.startswith("file:") else ["file", spec[5:]]
    kind = parts[0]
    if kind == "file":
        return parse_coalgebra(Path(parts[1]).read_text())
    n = int(parts[1]) if len(parts) > 1 else colors
    if kind == "zero":
        return zero_coalgebra(n)
    if kind == "max":
        return delta_max(n)
    raise ValueError(f"unknown coalgebra {spec!r}")
