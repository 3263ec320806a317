"""Smith normal form over the supported Euclidean rings.

The elimination is plain Euclidean row/column reduction: pick the
non-zero entry of minimal size (absolute value / degree, ties broken by
smallest (row, col)), move it to the pivot position, and shrink it by
Bezout combinations until it divides its row and column.  Transform
matrices are always accumulated, so every decomposition carries explicit
unimodular change-of-basis witnesses.  A final gcd fix-up pass restores
the divisibility chain on the diagonal.

The same toolbox provides a canonical row echelon (Hermite) normal form
and integer kernels, which the lattice saturation code builds on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, DomainError
from .pid import PIDElement, Ring, ext_gcd

#: hard cap on matrix dimensions (desk scale).
MAX_DIM = 64


@dataclass(frozen=True)
class Matrix:
    ring: Ring
    rows: int
    cols: int
    entries: tuple[tuple[PIDElement, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows:
            raise DomainError("matrix shape does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise DomainError("ragged matrix rows")
            for e in row:
                if e.ring != self.ring:
                    raise DomainError("matrix entries must share one ring")

    @classmethod
    def from_rows(cls, ring: Ring, rows, cols: int | None = None) -> "Matrix":
        """Build from raw payloads (ints / coefficient lists) or elements."""
        data = tuple(tuple(ring.element(e) for e in row) for row in rows)
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(ring, len(data), ncols, data)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        one, zero = ring.one(), ring.zero()
        return cls(ring, n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "Matrix":
        zero = ring.zero()
        return cls(ring, rows, cols, tuple(tuple(zero for _ in range(cols)) for _ in range(rows)))

    def entry(self, i: int, j: int) -> PIDElement:
        return self.entries[i][j]

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, self.cols, self.rows,
                      tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ring != other.ring or self.cols != other.rows:
            raise DomainError("matrix product shape/ring mismatch")
        zero = self.ring.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(tuple(row))
        return Matrix(self.ring, self.rows, other.cols, tuple(out))

    def diagonal(self) -> tuple[PIDElement, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def to_json(self):
        return {"ring": self.ring.to_json(), "rows": self.rows, "cols": self.cols,
                "entries": [[e.to_json() for e in row] for row in self.entries]}

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        try:
            ring = Ring.from_json(obj["ring"])
            rows, cols = int(obj["rows"]), int(obj["cols"])
            entries = obj["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"bad matrix description: {exc}") from exc
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DomainError("matrix entries do not match declared shape")
        m = cls.from_rows(ring, entries, cols)
        return cls(ring, rows, cols, m.entries)


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V = S with U, V unimodular and S in Smith normal form."""

    U: Matrix
    S: Matrix
    V: Matrix

    def invariant_diagonal(self) -> tuple[PIDElement, ...]:
        """Non-zero diagonal entries, in divisibility order."""
        return tuple(d for d in self.S.diagonal() if not d.is_zero())


class _Eliminator:
    """Mutable elimination state with transform accumulation.

    Row operations multiply U on the left; column operations multiply V
    on the right, and their inverses are applied to Vinv on the left so
    that ``Vinv @ V = I`` holds throughout.
    """

    def __init__(self, A: Matrix):
        self.ring = A.ring
        self.m, self.n = A.rows, A.cols
        self.S = [list(row) for row in A.entries]
        self.U = [list(row) for row in Matrix.identity(A.ring, A.rows).entries]
        self.V = [list(row) for row in Matrix.identity(A.ring, A.cols).entries]
        self.Vinv = [list(row) for row in Matrix.identity(A.ring, A.cols).entries]

    # row operations ----------------------------------------------------

    def swap_rows(self, i, j):
        if i == j:
            return
        self.S[i], self.S[j] = self.S[j], self.S[i]
        self.U[i], self.U[j] = self.U[j], self.U[i]

    def scale_row(self, i, u):
        self.S[i] = [u * e for e in self.S[i]]
        self.U[i] = [u * e for e in self.U[i]]

    def addmul_row(self, dst, src, c):
        self.S[dst] = [a + c * b for a, b in zip(self.S[dst], self.S[src])]
        self.U[dst] = [a + c * b for a, b in zip(self.U[dst], self.U[src])]

    def bezout_rows(self, i, j, x, y, ag, bg):
        """rows (i, j) <- (x*ri + y*rj, -bg*ri + ag*rj); determinant one."""
        for M in (self.S, self.U):
            ri, rj = M[i], M[j]
            M[i] = [x * a + y * b for a, b in zip(ri, rj)]
            M[j] = [ag * b - bg * a for a, b in zip(ri, rj)]

    # column operations --------------------------------------------------

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.S:
            row[i], row[j] = row[j], row[i]
        for row in self.V:
            row[i], row[j] = row[j], row[i]
        self.Vinv[i], self.Vinv[j] = self.Vinv[j], self.Vinv[i]

    def scale_col(self, i, u):
        for row in self.S:
            row[i] = u * row[i]
        for row in self.V:
            row[i] = u * row[i]
        inv = u.inverse_unit()
        self.Vinv[i] = [inv * e for e in self.Vinv[i]]

    def addmul_col(self, dst, src, c):
        for row in self.S:
            row[dst] = row[dst] + c * row[src]
        for row in self.V:
            row[dst] = row[dst] + c * row[src]
        # inverse: Vinv row src -= c * Vinv row dst
        self.Vinv[src] = [a - c * b for a, b in zip(self.Vinv[src], self.Vinv[dst])]

    def bezout_cols(self, i, j, x, y, ag, bg):
        """cols (i, j) <- (x*ci + y*cj, -bg*ci + ag*cj); determinant one."""
        for M in (self.S, self.V):
            for row in M:
                a, b = row[i], row[j]
                row[i] = x * a + y * b
                row[j] = ag * b - bg * a
        ri, rj = self.Vinv[i], self.Vinv[j]
        self.Vinv[i] = [ag * a + bg * b for a, b in zip(ri, rj)]
        self.Vinv[j] = [x * b - y * a for a, b in zip(ri, rj)]

    # ------------------------------------------------------------------

    def matrices(self) -> tuple[Matrix, Matrix, Matrix, Matrix]:
        r = self.ring
        tup = lambda M, rows, cols: Matrix(r, rows, cols, tuple(tuple(row) for row in M))
        return (tup(self.U, self.m, self.m), tup(self.S, self.m, self.n),
                tup(self.V, self.n, self.n), tup(self.Vinv, self.n, self.n))


def _find_pivot(S, t, m, n):
    best = None
    for i in range(t, m):
        for j in range(t, n):
            e = S[i][j]
            if e.is_zero():
                continue
            key = (e.size(), i, j)
            if best is None or key < best[0]:
                best = (key, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(A: Matrix) -> SmithDecomposition:
    snf, _ = smith_with_basis_inverse(A)
    return snf


def smith_with_basis_inverse(A: Matrix) -> tuple[SmithDecomposition, Matrix]:
    """Smith normal form plus the inverse of the right transform.

    The rows of ``V^-1`` express the new coordinate basis; the lattice
    saturation code reads the first rank-many of them directly.
    """
    if A.rows > MAX_DIM or A.cols > MAX_DIM:
        raise CapacityError(f"matrix dimensions capped at {MAX_DIM}x{MAX_DIM}")
    E = _Eliminator(A)
    S, m, n = E.S, E.m, E.n
    t = 0
    while True:
        pos = _find_pivot(S, t, m, n)
        if pos is None:
            break
        E.swap_rows(t, pos[0])
        E.swap_cols(t, pos[1])
        while True:
            for r in range(m):
                if r == t or S[r][t].is_zero():
                    continue
                a, b = S[t][t], S[r][t]
                if a.divides(b):
                    E.addmul_row(r, t, -(b.exact_div(a)))
                else:
                    g, x, y = ext_gcd(a, b)
                    E.bezout_rows(t, r, x, y, a.exact_div(g), b.exact_div(g))
            for c in range(n):
                if c == t or S[t][c].is_zero():
                    continue
                a, b = S[t][t], S[t][c]
                if a.divides(b):
                    E.addmul_col(c, t, -(b.exact_div(a)))
                else:
                    g, x, y = ext_gcd(a, b)
                    E.bezout_cols(t, c, x, y, a.exact_div(g), b.exact_div(g))
            if all(S[r][t].is_zero() for r in range(m) if r != t):
                break
        unit, _ = S[t][t].unit_normal()
        if not unit.is_unit() or unit != E.ring.one():
            E.scale_row(t, unit.inverse_unit())
        t += 1

    # divisibility fix-up: gcd-combine adjacent diagonal entries
    one = E.ring.one()
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            a, b = S[i][i], S[i + 1][i + 1]
            if a.divides(b):
                continue
            changed = True
            E.addmul_col(i, i + 1, one)          # S[i+1][i] = b
            g, x, y = ext_gcd(a, b)
            E.bezout_rows(i, i + 1, x, y, a.exact_div(g), b.exact_div(g))
            rem = S[i][i + 1]                     # = y*b, divisible by g
            if not rem.is_zero():
                E.addmul_col(i + 1, i, -(rem.exact_div(S[i][i])))
            for k in (i, i + 1):
                unit, _ = S[k][k].unit_normal()
                if unit != one:
                    E.scale_row(k, unit.inverse_unit())

    U, Smat, V, Vinv = E.matrices()
    return SmithDecomposition(U, Smat, V), Vinv


def presentation_to_module(generators: int, relations: Matrix):
    """Cokernel of a relation matrix as an invariant-factor module.

    ``relations`` has one row per relator and ``generators`` columns; the
    result is R^generators modulo the row span.
    """
    from .fgmod import FGModule  # deferred: fgmod builds on this module

    if relations.cols != generators:
        raise DomainError(f"relations have {relations.cols} columns for {generators} generators")
    snf = smith_normal_form(relations)
    diag = snf.invariant_diagonal()
    factors = tuple(d for d in diag if not d.is_unit())
    return FGModule(relations.ring, generators - len(diag), factors)


# ---------------------------------------------------------------------------
# row echelon (Hermite) normal form and kernels over a Euclidean PID


def echelon_normal_form(ring: Ring, ncols: int,
                        rows) -> tuple[tuple[PIDElement, ...], ...]:
    """Canonical basis-in-normal-form of the row span.

    Pivots are unit-normal with strictly increasing pivot columns;
    entries above a pivot are reduced to canonical residues.  Equal row
    spans produce identical output, so lattice equality is data equality.
    """
    work = [list(ring.element(e) for e in row) for row in rows]
    if any(len(r) != ncols for r in work):
        raise DomainError(f"row length does not match ambient rank {ncols}")
    work = [r for r in work if any(not e.is_zero() for e in r)]
    pivots: list[tuple[int, list[PIDElement]]] = []
    for col in range(ncols):
        live = [r for r in work if not r[col].is_zero()]
        while len(live) > 1:
            live.sort(key=lambda r: r[col].size())
            base = live[0]
            for r in live[1:]:
                q = r[col] // base[col]
                if not q.is_zero():
                    for k in range(ncols):
                        r[k] = r[k] - q * base[k]
            live = [r for r in live if not r[col].is_zero()]
        if not live:
            continue
        prow = live[0]
        work.remove(prow)
        work = [r for r in work if any(not e.is_zero() for e in r)]
        unit, _ = prow[col].unit_normal()
        if unit != ring.one():
            inv = unit.inverse_unit()
            prow = [inv * e for e in prow]
        pivots.append((col, prow))
    # reduce entries above each pivot to canonical residues
    for idx, (col, prow) in enumerate(pivots):
        for j in range(idx):
            row = pivots[j][1]
            q, _ = divmod(row[col], prow[col])
            if not q.is_zero():
                for k in range(ncols):
                    row[k] = row[k] - q * prow[k]
    return tuple(tuple(row) for _, row in pivots)


def reduce_vector(ring: Ring, basis, vec) -> tuple[PIDElement, ...]:
    """Reduce a vector by echelon basis rows; the zero vector means membership."""
    out = [ring.element(e) for e in vec]
    for row in basis:
        col = next(j for j, e in enumerate(row) if not e.is_zero())
        if out[col].is_zero():
            continue
        q = out[col] // row[col]
        if not q.is_zero():
            for k in range(len(out)):
                out[k] = out[k] - q * row[k]
    return tuple(out)


def left_kernel(ring: Ring, ncols: int, rows) -> tuple[tuple[PIDElement, ...], ...]:
    """Basis of {u : u @ rows = 0}, in echelon normal form."""
    rows = [tuple(ring.element(e) for e in row) for row in rows]
    k = len(rows)
    one, zero = ring.one(), ring.zero()
    # augment with an identity tail recording the row operations
    work = [list(rows[i]) + [one if j == i else zero for j in range(k)] for i in range(k)]
    for col in range(ncols):
        live = [r for r in work if not r[col].is_zero()]
        while len(live) > 1:
            live.sort(key=lambda r: r[col].size())
            base = live[0]
            for r in live[1:]:
                q = r[col] // base[col]
                if not q.is_zero():
                    for idx in range(ncols + k):
                        r[idx] = r[idx] - q * base[idx]
            live = [r for r in live if not r[col].is_zero()]
        if live:
            work.remove(live[0])
    kernel = [tuple(r[ncols:]) for r in work if all(e.is_zero() for e in r[:ncols])]
    return echelon_normal_form(ring, k, kernel)
