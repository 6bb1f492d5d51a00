"""Pairwise comparison matrices, possibly incomplete.

A missing comparison is stored as NaN.  Text input follows the ``.pcm``
format: one row per line (or rows separated by a standalone ``/`` token),
whitespace separated tokens, ``?`` for a missing entry and ``#`` comments.
Tokens may be decimals or fractions such as ``1/6``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import InvalidMatrix, ParseError

RECIPROCITY_TOL = 1e-9
CONSISTENCY_TOL = 1e-9

MISSING = "?"


@dataclass(frozen=True, eq=False)
class PCMatrix:
    """Square matrix of positive ratios; NaN marks a missing comparison.

    Construction only checks the shape.  Use :func:`validate` for the
    reciprocity and positivity checks, or build through :func:`parse_matrix`
    / :func:`from_weights` which guarantee them.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ParseError(f"matrix must be square and non-empty, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def known(self) -> np.ndarray:
        return ~np.isnan(self.values)

    @property
    def complete(self) -> bool:
        return bool(self.known.all())

    def entry(self, i: int, j: int) -> float | None:
        """Entry at 0-based position ``(i, j)``, or None when missing."""
        x = self.values[i, j]
        return None if math.isnan(x) else float(x)

    def known_pairs(self) -> list[tuple[int, int]]:
        """Known upper-triangle positions ``(i, j)`` with ``i < j``, row-major."""
        known = self.known
        return [(i, j) for i, j in itertools.combinations(range(self.n), 2) if known[i, j]]

    def permuted(self, perm) -> PCMatrix:
        """Relabel alternatives so that new alternative ``k`` is old ``perm[k]``."""
        p = np.asarray(perm)
        return PCMatrix(self.values[np.ix_(p, p)])

    def __eq__(self, other):
        if not isinstance(other, PCMatrix):
            return NotImplemented
        return self.values.shape == other.values.shape and bool(
            np.array_equal(self.values, other.values, equal_nan=True)
        )

    def __hash__(self):
        return hash(self.values.tobytes())

    def __repr__(self):
        return f"PCMatrix(n={self.n}, complete={self.complete})"


class ValidationReport(NamedTuple):
    complete: bool
    connected: bool
    violations: list  # of (row, col, description), 0-based

    @property
    def ok(self) -> bool:
        return not self.violations


def _parse_token(tok: str, row: int, col: int) -> Fraction | None:
    if tok == MISSING:
        return None
    try:
        parts = tok.split("/")
        if len(parts) == 1:
            value = Fraction(parts[0])
        elif len(parts) == 2:
            value = Fraction(parts[0]) / Fraction(parts[1])
        else:
            raise ValueError(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"row {row + 1}, column {col + 1}: not a number: {tok!r}") from None
    if value <= 0:
        raise ParseError(f"row {row + 1}, column {col + 1}: comparison must be positive, got {tok!r}")
    return value


def _split_rows(text: str) -> list[list[str]]:
    rows: list[list[str]] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        current: list[str] = []
        for tok in line.split():
            if tok == "/":
                if current:
                    rows.append(current)
                current = []
            else:
                current.append(tok)
        if current:
            rows.append(current)
    return rows


def parse_matrix(text: str, strict: bool = True) -> PCMatrix:
    """Parse ``.pcm`` text into a :class:`PCMatrix`.

    When every strictly-lower entry is ``?`` the lower triangle is filled in
    by reciprocity from the upper one.  Otherwise both triangles are taken as
    given and checked against each other.  With ``strict=False`` reciprocity
    and diagonal problems are left in the matrix for :func:`validate` to
    report; malformed tokens and non-square input always raise.
    """
    rows = _split_rows(text)
    n = len(rows)
    if n == 0:
        raise ParseError("empty matrix")
    for r, row in enumerate(rows):
        if len(row) != n:
            raise ParseError(f"matrix is not square: row {r + 1} has {len(row)} entries, expected {n}")

    grid = [[_parse_token(tok, r, c) for c, tok in enumerate(row)] for r, row in enumerate(rows)]

    upper_only = n > 1 and all(grid[i][j] is None for i in range(n) for j in range(i))
    if upper_only:
        for i, j in itertools.combinations(range(n), 2):
            if grid[i][j] is not None:
                grid[j][i] = 1 / grid[i][j]

    violations = _fraction_violations(grid)
    if strict and violations:
        raise InvalidMatrix(violations)

    values = np.array(
        [[math.nan if x is None else float(x) for x in row] for row in grid], dtype=float
    )
    return PCMatrix(values)


def _fraction_violations(grid) -> list[tuple[int, int, str]]:
    n = len(grid)
    out = []
    for i in range(n):
        if grid[i][i] != 1:
            out.append((i, i, "diagonal entry must be 1"))
    for i, j in itertools.combinations(range(n), 2):
        a, b = grid[i][j], grid[j][i]
        if (a is None) != (b is None):
            out.append((i, j, "missing in one triangle only"))
        elif a is not None and abs(a * b - 1) > RECIPROCITY_TOL:
            out.append((i, j, f"reciprocity violated: {float(a):g} * {float(b):g} != 1"))
    return out


def read_matrix(path, strict: bool = True) -> PCMatrix:
    """Read a ``.pcm`` file; ``"-"`` reads standard input."""
    if str(path) == "-":
        import sys

        return parse_matrix(sys.stdin.read(), strict=strict)
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read(), strict=strict)


def _format_entry(x: float, digits: int) -> str:
    if math.isnan(x):
        return MISSING
    if x < 1:
        # writing 1/x keeps the pair exactly reciprocal after re-parsing
        return f"1/{1 / x:.{digits}g}"
    return f"{x:.{digits}g}"


def format_matrix(m: PCMatrix, digits: int = 6) -> str:
    """Serialize to ``.pcm`` text with ``digits`` significant digits."""
    return "".join(
        " ".join(_format_entry(float(x), digits) for x in row) + "\n" for row in m.values
    )


def from_weights(w) -> PCMatrix:
    """The consistent matrix ``m_ij = w_i / w_j``."""
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or np.any(w <= 0) or not np.all(np.isfinite(w)):
        raise ValueError("weights must be a 1-d array of positive finite numbers")
    values = w[:, None] / w[None, :]
    np.fill_diagonal(values, 1.0)
    return PCMatrix(values)


def validate(m: PCMatrix) -> ValidationReport:
    """Report every broken invariant instead of raising."""
    from .graph import induce_graph

    v = m.values
    n = m.n
    violations = []
    for i in range(n):
        if v[i, i] != 1:
            violations.append((i, i, "diagonal entry must be 1"))
    for i in range(n):
        for j in range(n):
            x = v[i, j]
            if i != j and not math.isnan(x) and not (x > 0 and math.isfinite(x)):
                violations.append((i, j, f"comparison must be positive and finite, got {x:g}"))
    for i, j in itertools.combinations(range(n), 2):
        a, b = v[i, j], v[j, i]
        if math.isnan(a) != math.isnan(b):
            violations.append((i, j, "missing in one triangle only"))
        elif not math.isnan(a) and abs(a * b - 1) > RECIPROCITY_TOL:
            violations.append((i, j, f"reciprocity violated: {a:g} * {b:g} != 1"))
    return ValidationReport(
        complete=m.complete,
        connected=induce_graph(m).is_connected(),
        violations=violations,
    )


def is_consistent(m: PCMatrix, tol: float = CONSISTENCY_TOL) -> bool:
    """True when every fully known triad satisfies ``m_ij m_jk m_ki = 1`` within ``tol``."""
    n = m.n
    if n < 3:
        return True
    v = m.values
    triads = v[:, :, None] * v[None, :, :] * v.T[:, None, :]
    i, j, k = np.array(list(itertools.combinations(range(n), 3))).T
    dev = np.abs(triads[i, j, k] - 1.0)
    dev = dev[~np.isnan(dev)]
    return bool(dev.size == 0 or dev.max() <= tol)
