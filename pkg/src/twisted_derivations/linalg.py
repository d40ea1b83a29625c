"""Exact linear algebra used by the derivation solver.

Two small engines, nothing general purpose: a fraction-free reduced row
echelon form over the integers (the constraint systems here have tiny
integer coefficients) and a plain eliminator over an exact field for
inhomogeneous solves. Columns are integers 0..n-1; rows are sparse
dicts. Pivoting always picks the smallest column index, so results are
deterministic and, since the reduced echelon form of a row space is
unique, independent of row insertion order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _normalize(row, pivot_col):
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
    if g > 1:
        for c in list(row):
            row[c] //= g
    if row[pivot_col] < 0:
        for c in list(row):
            row[c] = -row[c]
    return row


def _int_combine(target, a, b, source):
    """target <- a*target - b*source, in place, dropping zeros."""
    if a != 1:
        for c in list(target):
            target[c] *= a
    for c, v in source.items():
        nv = target.get(c, 0) - b * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)
    return target


class IntegerRowReducer:
    """Incremental integer RREF; rows are dicts mapping column to int."""

    def __init__(self):
        self.rows = {}        # pivot column -> normalized row dict
        self._col_index = {}  # column -> set of pivot columns touching it

    @property
    def rank(self):
        return len(self.rows)

    def _index_add(self, pivot_col, row):
        for c in row:
            self._col_index.setdefault(c, set()).add(pivot_col)

    def _index_remove(self, pivot_col, row):
        for c in row:
            bucket = self._col_index.get(c)
            if bucket is not None:
                bucket.discard(pivot_col)
                if not bucket:
                    del self._col_index[c]

    def add_row(self, row) -> bool:
        """Reduce a row into the current form. True if the rank grew."""
        row = {c: v for c, v in row.items() if v}
        # a single pass over the pivot columns present at entry suffices:
        # stored rows touch no pivot column other than their own, so the
        # eliminations below only ever introduce free columns
        for c in sorted(row):
            pivot_row = self.rows.get(c)
            if pivot_row is None or c not in row:
                continue
            _int_combine(row, pivot_row[c], row[c], pivot_row)
        if not row:
            return False
        pivot_col = min(row)
        _normalize(row, pivot_col)
        # eliminate the new pivot column from every stored row touching it
        for pc in list(self._col_index.get(pivot_col, ())):
            stored = self.rows[pc]
            self._index_remove(pc, stored)
            _int_combine(stored, row[pivot_col], stored[pivot_col], row)
            _normalize(stored, pc)
            self._index_add(pc, stored)
        self.rows[pivot_col] = row
        self._index_add(pivot_col, row)
        return True

    def nullspace_basis(self, n_cols):
        """Integer kernel basis, one vector per free column, in column order.

        Each vector has coprime entries and a positive entry at its free
        column.
        """
        free_cols = [c for c in range(n_cols) if c not in self.rows]
        basis = []
        for f in free_cols:
            vec = {f: Fraction(1)}
            for p, row in self.rows.items():
                if f in row:
                    vec[p] = Fraction(-row[f], row[p])
            lcm = 1
            for v in vec.values():
                lcm = lcm * v.denominator // gcd(lcm, v.denominator)
            out = {c: int(v * lcm) for c, v in vec.items()}
            g = 0
            for v in out.values():
                g = gcd(g, abs(v))
            if g > 1:
                out = {c: v // g for c, v in out.items()}
            basis.append(out)
        return basis


class FieldEliminator:
    """Row reduction over an exact field (used with Gaussian rationals).

    Pivot rows are normalized to pivot value one and kept mutually
    reduced, so after feeding all equations a particular solution reads
    off directly with every free variable at zero.
    """

    def __init__(self):
        self.rows = {}  # pivot column -> (row dict, rhs)

    def add_equation(self, row, rhs) -> bool:
        """False when the equation contradicts the ones already seen."""
        row = {c: v for c, v in row.items() if v}
        for c in sorted(row):
            if c not in self.rows or c not in row:
                continue
            pivot_row, pivot_rhs = self.rows[c]
            factor = row[c]
            for pc, pv in pivot_row.items():
                nv = row.get(pc, 0) - factor * pv
                if nv:
                    row[pc] = nv
                else:
                    row.pop(pc, None)
            rhs = rhs - factor * pivot_rhs
        if not row:
            return not rhs
        pivot_col = min(row)
        inv = row[pivot_col]
        row = {c: v / inv for c, v in row.items()}
        rhs = rhs / inv
        for pc, (stored, stored_rhs) in list(self.rows.items()):
            if pivot_col in stored:
                factor = stored[pivot_col]
                for c, v in row.items():
                    nv = stored.get(c, 0) - factor * v
                    if nv:
                        stored[c] = nv
                    else:
                        stored.pop(c, None)
                self.rows[pc] = (stored, stored_rhs - factor * rhs)
        self.rows[pivot_col] = (row, rhs)
        return True

    def solve(self, n_cols):
        """(particular solution, kernel dimension) for the current system."""
        solution = {}
        for p, (_row, rhs) in self.rows.items():
            if rhs:
                solution[p] = rhs
        kernel_dim = n_cols - len(self.rows)
        return solution, kernel_dim
