"""Exact rational matrices with labelled rows and columns.

Entries are :class:`fractions.Fraction` values stored sparsely, one dict per
row mapping column position to a nonzero value.  Rows and columns carry
hashable labels so that blocks can be selected or dropped by name.

Conventions for empty index sets: a matrix with no columns has null space
``{0}``; a matrix with no rows has the whole column-label space as its null
space.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import Inconsistent, UnknownLabel

Label = Hashable

__all__ = [
    "RationalMatrix",
    "null_space_basis",
    "rank",
    "rref",
    "solve_all",
    "hstack",
    "vstack",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


class RationalMatrix:
    """Immutable sparse matrix over Q with labelled rows and columns."""

    __slots__ = ("row_index", "col_index", "_rows", "_rpos", "_cpos")

    def __init__(
        self,
        row_index: Sequence[Label],
        col_index: Sequence[Label],
        rows: Sequence[Mapping[int, Fraction]] | None = None,
    ):
        self.row_index = tuple(row_index)
        self.col_index = tuple(col_index)
        self._rpos = {r: i for i, r in enumerate(self.row_index)}
        self._cpos = {c: j for j, c in enumerate(self.col_index)}
        if len(self._rpos) != len(self.row_index):
            raise ValueError("duplicate row label")
        if len(self._cpos) != len(self.col_index):
            raise ValueError("duplicate column label")
        if rows is None:
            self._rows = tuple({} for _ in self.row_index)
        else:
            if len(rows) != len(self.row_index):
                raise ValueError("row count does not match row_index")
            ncols = len(self.col_index)
            cleaned = []
            for row in rows:
                d = {}
                for j, v in row.items():
                    if not 0 <= j < ncols:
                        raise IndexError(f"column position {j} out of range")
                    if v:
                        d[j] = _frac(v)
                cleaned.append(d)
            self._rows = tuple(cleaned)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_dense(cls, data, row_index=None, col_index=None) -> RationalMatrix:
        data = [list(r) for r in data]
        nrows = len(data)
        ncols = len(data[0]) if data else (0 if col_index is None else len(col_index))
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged dense data")
        row_index = range(nrows) if row_index is None else row_index
        col_index = range(ncols) if col_index is None else col_index
        rows = [{j: v for j, v in enumerate(r) if v} for r in data]
        return cls(row_index, col_index, rows)

    @classmethod
    def from_entries(cls, row_index, col_index, entries: Mapping) -> RationalMatrix:
        """Build from a mapping ``(row_label, col_label) -> value``."""
        m = cls(row_index, col_index)
        rows = [dict() for _ in m.row_index]
        for (r, c), v in entries.items():
            try:
                rows[m._rpos[r]][m._cpos[c]] = v
            except KeyError as exc:
                raise UnknownLabel(exc.args[0]) from None
        return cls(m.row_index, m.col_index, rows)

    @classmethod
    def from_columns(cls, row_index, columns: Sequence[Mapping], col_index=None) -> RationalMatrix:
        """Build from column vectors given as ``{row_label: value}`` maps."""
        row_index = tuple(row_index)
        col_index = range(len(columns)) if col_index is None else col_index
        rpos = {r: i for i, r in enumerate(row_index)}
        rows = [dict() for _ in row_index]
        for j, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    try:
                        rows[rpos[r]][j] = v
                    except KeyError:
                        raise UnknownLabel(r) from None
        return cls(row_index, col_index, rows)

    @classmethod
    def identity(cls, labels: Sequence[Label]) -> RationalMatrix:
        labels = tuple(labels)
        return cls(labels, labels, [{i: Fraction(1)} for i in range(len(labels))])

    @classmethod
    def zeros(cls, row_index, col_index) -> RationalMatrix:
        return cls(row_index, col_index)

    # -- inspection ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_index), len(self.col_index)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def entry(self, r: Label, c: Label) -> Fraction:
        try:
            return self._rows[self._rpos[r]].get(self._cpos[c], Fraction(0))
        except KeyError as exc:
            raise UnknownLabel(exc.args[0]) from None

    def row(self, r: Label) -> dict:
        """Row ``r`` as ``{col_label: value}`` (nonzeros only)."""
        try:
            row = self._rows[self._rpos[r]]
        except KeyError:
            raise UnknownLabel(r) from None
        return {self.col_index[j]: v for j, v in row.items()}

    def column(self, c: Label) -> dict:
        """Column ``c`` as ``{row_label: value}`` (nonzeros only)."""
        try:
            j = self._cpos[c]
        except KeyError:
            raise UnknownLabel(c) from None
        return {self.row_index[i]: row[j] for i, row in enumerate(self._rows) if j in row}

    def columns(self) -> list[dict]:
        cols: list[dict] = [dict() for _ in self.col_index]
        for i, row in enumerate(self._rows):
            r = self.row_index[i]
            for j, v in row.items():
                cols[j][r] = v
        return cols

    def to_dense(self) -> list[list[Fraction]]:
        n = len(self.col_index)
        out = []
        for row in self._rows:
            dense = [Fraction(0)] * n
            for j, v in row.items():
                dense[j] = v
            out.append(dense)
        return out

    def is_zero(self) -> bool:
        return not any(self._rows)

    def is_identity(self) -> bool:
        if self.row_index != self.col_index:
            return False
        return all(len(row) == 1 and row.get(i) == 1 for i, row in enumerate(self._rows))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (
            self.row_index == other.row_index
            and self.col_index == other.col_index
            and self._rows == other._rows
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"RationalMatrix(shape={self.shape}, nnz={self.nnz})"

    def __str__(self) -> str:
        cells = [[_fmt(v) for v in row] for row in self.to_dense()]
        if not cells:
            return f"[empty {self.shape[0]}x{self.shape[1]}]"
        w = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in row) + "]" for row in cells)

    # -- structural operations ---------------------------------------------

    def relabel(self, row_index=None, col_index=None) -> RationalMatrix:
        row_index = self.row_index if row_index is None else tuple(row_index)
        col_index = self.col_index if col_index is None else tuple(col_index)
        if len(row_index) != len(self.row_index) or len(col_index) != len(self.col_index):
            raise ValueError("relabel must preserve shape")
        return _trusted(row_index, col_index, self._rows)

    def transpose(self) -> RationalMatrix:
        rows: list[dict] = [dict() for _ in self.col_index]
        for i, row in enumerate(self._rows):
            for j, v in row.items():
                rows[j][i] = v
        return _trusted(self.col_index, self.row_index, rows)

    @property
    def T(self) -> RationalMatrix:
        return self.transpose()

    def select_rows(self, labels: Iterable[Label]) -> RationalMatrix:
        labels = tuple(labels)
        try:
            pos = [self._rpos[r] for r in labels]
        except KeyError as exc:
            raise UnknownLabel(exc.args[0]) from None
        return _trusted(labels, self.col_index, [self._rows[i] for i in pos])

    def drop_rows(self, labels: Iterable[Label]) -> RationalMatrix:
        drop = set(labels)
        missing = drop.difference(self._rpos)
        if missing:
            raise UnknownLabel(next(iter(missing)))
        keep = [r for r in self.row_index if r not in drop]
        return self.select_rows(keep)

    def select_columns(self, labels: Iterable[Label]) -> RationalMatrix:
        labels = tuple(labels)
        try:
            new_pos = {self._cpos[c]: k for k, c in enumerate(labels)}
        except KeyError as exc:
            raise UnknownLabel(exc.args[0]) from None
        if len(new_pos) != len(labels):
            raise ValueError("duplicate column label")
        rows = [{new_pos[j]: v for j, v in row.items() if j in new_pos} for row in self._rows]
        return _trusted(self.row_index, labels, rows)

    def drop_columns(self, labels: Iterable[Label]) -> RationalMatrix:
        drop = set(labels)
        missing = drop.difference(self._cpos)
        if missing:
            raise UnknownLabel(next(iter(missing)))
        return self.select_columns([c for c in self.col_index if c not in drop])

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if len(self.col_index) != len(other.row_index):
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other._rows
        out = []
        for row in self._rows:
            acc: dict[int, Fraction] = {}
            for k, a in row.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append({j: v for j, v in acc.items() if v})
        return _trusted(self.row_index, other.col_index, out)

    def __neg__(self) -> RationalMatrix:
        return _trusted(self.row_index, self.col_index, [{j: -v for j, v in r.items()} for r in self._rows])

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = []
        for a, b in zip(self._rows, other._rows):
            d = dict(a)
            for j, v in b.items():
                s = d.get(j, 0) + v
                if s:
                    d[j] = s
                else:
                    d.pop(j, None)
            out.append(d)
        return _trusted(self.row_index, self.col_index, out)

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        return self + (-other)

    def scale(self, c) -> RationalMatrix:
        c = _frac(c)
        if not c:
            return RationalMatrix(self.row_index, self.col_index)
        return _trusted(self.row_index, self.col_index, [{j: c * v for j, v in r.items()} for r in self._rows])

    def _raw_rows(self):
        return self._rows


def _trusted(row_index, col_index, rows) -> RationalMatrix:
    # Skips validation; rows must already hold nonzero Fractions keyed by position.
    m = RationalMatrix.__new__(RationalMatrix)
    m.row_index = tuple(row_index)
    m.col_index = tuple(col_index)
    m._rpos = {r: i for i, r in enumerate(m.row_index)}
    m._cpos = {c: j for j, c in enumerate(m.col_index)}
    m._rows = tuple(rows)
    return m


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def hstack(blocks: Sequence[RationalMatrix], col_index=None) -> RationalMatrix:
    """Concatenate matrices sharing a row index side by side.

    Column labels default to ``(block_number, original_label)`` pairs.
    """
    if not blocks:
        raise ValueError("hstack of no blocks")
    rows_idx = blocks[0].row_index
    out: list[dict] = [dict() for _ in rows_idx]
    labels = []
    offset = 0
    for b, blk in enumerate(blocks):
        if blk.row_index != rows_idx:
            raise ValueError("hstack blocks must share row_index")
        for i, row in enumerate(blk._rows):
            if row:
                tgt = out[i]
                for j, v in row.items():
                    tgt[offset + j] = v
        labels.extend((b, c) for c in blk.col_index)
        offset += len(blk.col_index)
    return _trusted(rows_idx, labels if col_index is None else col_index, out)


def vstack(blocks: Sequence[RationalMatrix], row_index=None) -> RationalMatrix:
    """Stack matrices sharing a column index vertically.

    Row labels default to ``(block_number, original_label)`` pairs.
    """
    if not blocks:
        raise ValueError("vstack of no blocks")
    cols = blocks[0].col_index
    rows: list[dict] = []
    labels = []
    for b, blk in enumerate(blocks):
        if blk.col_index != cols:
            raise ValueError("vstack blocks must share col_index")
        rows.extend(blk._rows)
        labels.extend((b, r) for r in blk.row_index)
    return _trusted(labels if row_index is None else row_index, cols, rows)


# -- elimination ------------------------------------------------------------


class EliminationStats:
    """Counts elimination work: one unit per multiply-subtract of an entry."""

    __slots__ = ("ops", "calls")

    def __init__(self):
        self.ops = 0
        self.calls = 0


def _integer_row(row: Mapping[int, object]) -> dict:
    """Scale a rational row to a primitive integer row (same row space)."""
    vals = {j: _frac(v) for j, v in row.items() if v}
    if not vals:
        return {}
    den = 1
    for v in vals.values():
        if v.denominator != 1:
            den = den * v.denominator // gcd(den, v.denominator)
    ints = {j: v.numerator * (den // v.denominator) for j, v in vals.items()}
    g = gcd(*ints.values())
    if g > 1:
        ints = {j: v // g for j, v in ints.items()}
    return ints


def rref(rows: Sequence[Mapping[int, Fraction]], ncols: int, pivot_limit: int | None = None, stats=None):
    """Reduced row-echelon form of sparse rows.

    Pivots are searched column by column in ascending order, only among the
    first ``pivot_limit`` columns when given.  Returns ``(pivots, rest)``
    where ``pivots`` is a list of ``(col, row)`` with ``row[col] == 1`` in
    ascending column order and ``rest`` holds the nonzero leftover rows
    (always empty unless ``pivot_limit`` is set).

    Elimination is fraction-free: rows are kept as primitive integer vectors
    and each pivot row is divided by its pivot only at the end.  The reduced
    form is unique, so neither this nor the pivot-row choice (shortest
    candidate, to limit fill-in) affects the result.
    """
    work: dict[int, dict] = {}
    occ: dict[int, set] = defaultdict(set)
    for i, r in enumerate(rows):
        d = _integer_row(r)
        if d:
            work[i] = d
            for j in d:
                occ[j].add(i)
    stop = ncols if pivot_limit is None else pivot_limit
    remaining = set(work)
    pivots: list[tuple[int, dict]] = []
    ops = 0
    for c in range(stop):
        if not remaining:
            break
        holders = occ.get(c)
        if not holders:
            continue
        cand = holders & remaining
        if not cand:
            continue
        p = min(cand, key=lambda i: (len(work[i]), i))
        remaining.discard(p)
        prow = work[p]
        pc = prow[c]
        for i in list(holders):
            if i == p:
                continue
            row = work[i]
            f = row[c]
            g = gcd(pc, f)
            a, b = pc // g, f // g
            if a != 1:
                for j in row:
                    row[j] *= a
            for j, v in prow.items():
                nv = row.get(j, 0) - b * v
                if nv:
                    if j not in row:
                        occ[j].add(i)
                    row[j] = nv
                else:
                    row.pop(j, None)
                    occ[j].discard(i)
            if row:
                g = gcd(*row.values())
                if g > 1:
                    for j in row:
                        row[j] //= g
            ops += len(prow)
        pivots.append((c, p))
    if stats is not None:
        stats.ops += ops
        stats.calls += 1
    out = []
    for c, p in pivots:
        prow = work[p]
        pc = prow[c]
        out.append((c, {j: Fraction(v, pc) for j, v in prow.items()}))
    rest = [work[i] for i in sorted(remaining) if work[i]]
    return out, rest


def rank(m: RationalMatrix, stats=None) -> int:
    """Exact rank."""
    if not m.row_index or not m.col_index:
        return 0
    pivots, _ = rref(m._raw_rows(), len(m.col_index), stats=stats)
    return len(pivots)


def null_space_basis(m: RationalMatrix, stats=None) -> RationalMatrix:
    """Canonical basis of ``{v : m @ v = 0}`` as the columns of a matrix.

    One basis vector per free (non-pivot) column of the reduced row-echelon
    form, in ascending column order: the vector has a 1 at its free column
    and ``-R[r, f]`` at the pivot column of each row ``r``.  Rows of the
    result are labelled by ``m.col_index``; columns by ``0..k-1``.
    """
    n = len(m.col_index)
    if not m.row_index:
        return RationalMatrix.identity(m.col_index).relabel(col_index=range(n))
    pivots, _ = rref(m._raw_rows(), n, stats=stats)
    pivot_cols = {c for c, _ in pivots}
    free = [j for j in range(n) if j not in pivot_cols]
    fpos = {f: k for k, f in enumerate(free)}
    rows: list[dict] = [dict() for _ in range(n)]
    for f, k in fpos.items():
        rows[f][k] = Fraction(1)
    for c, prow in pivots:
        tgt = rows[c]
        for j, v in prow.items():
            k = fpos.get(j)
            if k is not None:
                tgt[k] = -v
    return _trusted(m.col_index, range(len(free)), rows)


def nullity(m: RationalMatrix, stats=None) -> int:
    return len(m.col_index) - rank(m, stats=stats)


def solve_all(a: RationalMatrix, b: RationalMatrix, stats=None) -> RationalMatrix:
    """Return ``X`` with ``a @ X == b``; free variables are set to zero.

    Raises :class:`Inconsistent` when some column of ``b`` lies outside the
    column space of ``a``.
    """
    if a.row_index != b.row_index:
        if len(a.row_index) != len(b.row_index) or set(a.row_index) != set(b.row_index):
            raise ValueError("a and b must share row labels")
        b = b.select_rows(a.row_index)
    na, nb = len(a.col_index), len(b.col_index)
    out: list[dict] = [dict() for _ in range(na)]
    if not b.col_index:
        return _trusted(a.col_index, b.col_index, out)
    aug = []
    for ra, rb in zip(a._raw_rows(), b._raw_rows()):
        row = dict(ra)
        for j, v in rb.items():
            row[na + j] = v
        aug.append(row)
    pivots, rest = rref(aug, na + nb, pivot_limit=na, stats=stats)
    if rest:
        raise Inconsistent("right-hand side is not in the column space")
    for c, prow in pivots:
        out[c] = {j - na: v for j, v in prow.items() if j >= na}
    return _trusted(a.col_index, b.col_index, out)
