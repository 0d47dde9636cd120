"""Text form of rational linear combinations: ``2 * u - 1/3 * v + w``."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable


def format_linear(items: Iterable, fmt: Callable) -> str:
    """Render ``(basis, coeff)`` pairs sorted by their text; ``0`` when empty."""
    parts = []
    for text, c in sorted((fmt(b), c) for b, c in items):
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {abs(c)} * {text}")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def split_terms(text: str) -> list[tuple[int, str]]:
    """Split at top-level ``+``/``-`` (outside parentheses) into signed pieces."""
    text = text.replace("−", "-")
    pieces: list[tuple[int, str]] = []
    depth, cur, sign = 0, "", 1
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-":
            body = cur.strip()
            if not body:
                sign = sign if ch == "+" else -sign
                continue
            if not body.endswith(("*", "/")):
                pieces.append((sign, body))
                cur, sign = "", 1 if ch == "+" else -1
                continue
        cur += ch
    if cur.strip():
        pieces.append((sign, cur.strip()))
    return pieces


def parse_linear(text: str) -> list[tuple[str, Fraction]]:
    """``[(body, coeff), ...]`` for each term; the literal ``0`` gives ``[]``."""
    if text.strip() == "0":
        return []
    out = []
    for sign, piece in split_terms(text):
        if "*" in piece:
            coeff, _, body = piece.partition("*")
            out.append((body.strip(), sign * Fraction(coeff.strip())))
        else:
            out.append((piece, Fraction(sign)))
    return out
