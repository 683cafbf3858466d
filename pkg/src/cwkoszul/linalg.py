"""Exact sparse linear algebra over Q, prime fields and Z.

Matrices store only nonzero entries; scalars are `fractions.Fraction` over Q,
canonical residues (ints in [0, p)) over F_p, and Python ints over Z.  All
pivoting is deterministic -- smallest column index first, then smallest row
index -- so ranks, kernels and quotient bases are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class Rationals:
    """The field Q, values are Fraction."""

    key = "Q"
    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def of(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def __repr__(self):
        return "QQ"


class Integers:
    """The ring Z, values are int.  No division; used for SNF paths."""

    key = "Z"
    char = 0
    zero = 0
    one = 1

    def of(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        raise TypeError("Z is not a field")

    def __repr__(self):
        return "ZZ"


class PrimeField:
    """The field F_p, values are canonical residues in [0, p)."""

    _TABLE_LIMIT = 1024  # inverses precomputed below this

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 2**31:
            raise ValueError(f"prime {p} too large (must be < 2^31)")
        self.p = p
        self.key = f"F{p}"
        self.char = p
        self.zero = 0
        self.one = 1 % p
        if p < self._TABLE_LIMIT:
            self._inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
        else:
            self._inv = None

    def of(self, x):
        if isinstance(x, Fraction):
            return self.mul(x.numerator % self.p, self.inv(x.denominator % self.p))
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._inv is not None:
            return self._inv[a]
        return pow(a, self.p - 2, self.p)

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()
ZZ = Integers()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 2^31."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def field_from_spec(text: str):
    """Parse a field selector: 'q', 'f2', 'f3' or 'fp:<prime>'."""
    t = text.strip().lower()
    if t == "q":
        return QQ
    if t == "f2":
        return GF(2)
    if t == "f3":
        return GF(3)
    if t.startswith("fp:"):
        try:
            p = int(t[3:])
        except ValueError:
            raise ValueError(f"bad prime in field selector {text!r}") from None
        return GF(p)
    raise ValueError(f"unknown field selector {text!r} (expected q, f2, f3 or fp:<P>)")


# ---------------------------------------------------------------------------
# sparse matrices


class SparseExactMatrix:
    """Immutable sparse matrix mapping column vectors: F^cols -> F^rows.

    Vectors are dicts {index: nonzero scalar}.
    """

    __slots__ = ("rows", "cols", "entries", "ring")

    def __init__(self, rows: int, cols: int, entries: dict, ring):
        self.rows = rows
        self.cols = cols
        self.ring = ring
        clean = {}
        for (i, j), v in entries.items():
            v = ring.of(v)
            if v != ring.zero:
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i},{j}) outside {rows}x{cols}")
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def zero(cls, rows: int, cols: int, ring) -> "SparseExactMatrix":
        return cls(rows, cols, {}, ring)

    @classmethod
    def identity(cls, n: int, ring) -> "SparseExactMatrix":
        return cls(n, n, {(i, i): ring.one for i in range(n)}, ring)

    @classmethod
    def from_columns(cls, cols: list[dict], nrows: int, ring) -> "SparseExactMatrix":
        entries = {}
        for j, col in enumerate(cols):
            for i, v in col.items():
                entries[(i, j)] = v
        return cls(nrows, len(cols), entries, ring)

    @classmethod
    def from_rows(cls, rows: list[dict], ncols: int, ring) -> "SparseExactMatrix":
        entries = {}
        for i, row in enumerate(rows):
            for j, v in row.items():
                entries[(i, j)] = v
        return cls(len(rows), ncols, entries, ring)

    def row(self, i: int) -> dict:
        return {j: v for (r, j), v in self.entries.items() if r == i}

    def row_list(self) -> list[dict]:
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def col_list(self) -> list[dict]:
        cols = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def apply(self, vec: dict) -> dict:
        """Matrix times column vector."""
        ring = self.ring
        out: dict = {}
        cols = self.col_list()
        for j, x in vec.items():
            if x == ring.zero:
                continue
            for i, m in cols[j].items():
                w = ring.add(out.get(i, ring.zero), ring.mul(m, x))
                if w == ring.zero:
                    out.pop(i, None)
                else:
                    out[i] = w
        return out

    def matmul(self, other: "SparseExactMatrix") -> "SparseExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        ring = self.ring
        cols = [self.apply(c) for c in other.col_list()]
        return SparseExactMatrix.from_columns(cols, self.rows, ring)

    def transpose(self) -> "SparseExactMatrix":
        return SparseExactMatrix(
            self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}, self.ring
        )

    def is_zero(self) -> bool:
        return not self.entries

    def convert(self, ring) -> "SparseExactMatrix":
        return SparseExactMatrix(self.rows, self.cols, dict(self.entries), ring)

    def to_dense(self) -> list[list]:
        out = [[self.ring.zero] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def debug_triples(self) -> str:
        """Printable (row, col, value) triples, one per line, sorted."""
        lines = [f"{self.rows} {self.cols}"]
        for (i, j) in sorted(self.entries):
            lines.append(f"{i} {j} {self.entries[(i, j)]}")
        return "\n".join(lines)

    def __eq__(self, other):
        return (
            isinstance(other, SparseExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseExactMatrix({self.rows}x{self.cols}, {len(self.entries)} nz, {self.ring!r})"


def vec_axpy(ring, target: dict, coeff, source: dict) -> None:
    """target += coeff * source, in place, dropping zeros."""
    if coeff == ring.zero:
        return
    for c, v in source.items():
        w = ring.add(target.get(c, ring.zero), ring.mul(coeff, v))
        if w == ring.zero:
            target.pop(c, None)
        else:
            target[c] = w


def rref_rows(rows: list[dict], ring) -> list[tuple[int, dict]]:
    """Reduced row echelon form of sparse row vectors.

    Returns [(pivot_col, row)] sorted by pivot column; each row has a 1 at its
    pivot and zeros at every other pivot column.  Pivot choice: smallest column
    index, then smallest original row index.
    """
    work = []
    for r in rows:
        work.append({c: v for c, v in r.items() if v != ring.zero})
    live = set(range(len(work)))
    mins = {i: (min(work[i]) if work[i] else None) for i in live}
    order: list[tuple[int, int]] = []
    while True:
        pcol = None
        for i in live:
            m = mins[i]
            if m is not None and (pcol is None or m < pcol):
                pcol = m
        if pcol is None:
            break
        pidx = min(i for i in live if mins[i] == pcol)
        piv = work[pidx]
        inv = ring.inv(piv[pcol])
        if inv != ring.one:
            piv = {c: ring.mul(inv, v) for c, v in piv.items()}
            work[pidx] = piv
        live.discard(pidx)
        for i in range(len(work)):
            if i == pidx:
                continue
            row = work[i]
            coeff = row.get(pcol)
            if coeff is not None:
                vec_axpy(ring, row, ring.neg(coeff), piv)
                if i in live:
                    mins[i] = min(row) if row else None
        order.append((pcol, pidx))
    order.sort()
    return [(c, work[i]) for c, i in order]


def reduce_mod_rows(vec: dict, rref: list[tuple[int, dict]], ring) -> dict:
    """Reduce a vector modulo the row span of an RREF; result has no pivot coords."""
    out = dict(vec)
    for pcol, row in rref:
        coeff = out.get(pcol)
        if coeff is not None:
            vec_axpy(ring, out, ring.neg(coeff), row)
    return out


def rank(m: SparseExactMatrix, ring=None) -> int:
    ring = ring or m.ring
    if ring is not m.ring:
        m = m.convert(ring)
    return len(rref_rows(m.row_list(), ring))


def kernel_vectors(m: SparseExactMatrix, ring=None) -> list[dict]:
    """Basis of {x : m x = 0}, one vector per free column, in reduced form."""
    ring = ring or m.ring
    if ring is not m.ring:
        m = m.convert(ring)
    red = rref_rows(m.row_list(), ring)
    pivot_set = {c for c, _ in red}
    vecs = []
    for j in range(m.cols):
        if j in pivot_set:
            continue
        v = {j: ring.one}
        for c, row in red:
            coeff = row.get(j)
            if coeff is not None:
                v[c] = ring.neg(coeff)
        vecs.append(v)
    return vecs


def kernel_basis(m: SparseExactMatrix, ring=None) -> SparseExactMatrix:
    ring = ring or m.ring
    vecs = kernel_vectors(m, ring)
    return SparseExactMatrix.from_columns(vecs, m.cols, ring)


def image_vectors(m: SparseExactMatrix, ring=None) -> list[dict]:
    """Basis of the column space, in reduced echelon form."""
    ring = ring or m.ring
    if ring is not m.ring:
        m = m.convert(ring)
    red = rref_rows(m.col_list(), ring)
    return [row for _, row in red]


def image_basis(m: SparseExactMatrix, ring=None) -> SparseExactMatrix:
    ring = ring or m.ring
    vecs = image_vectors(m, ring)
    return SparseExactMatrix.from_columns(vecs, m.rows, ring)


# ---------------------------------------------------------------------------
# quotient presentations


class QuotientPresentation:
    """A quotient of F^ambient by the row span of a relation matrix.

    The nonpivot columns of the reduced relations index a basis of the
    quotient; `project` maps ambient vectors to quotient coordinates and
    `lift` embeds quotient basis vectors back as ambient unit vectors, so
    project(lift(j)) is the j-th unit vector.
    """

    def __init__(self, ambient_labels: list, relations: SparseExactMatrix, ring):
        if relations.cols != len(ambient_labels):
            raise ValueError("relation width does not match ambient basis")
        self.ambient_labels = list(ambient_labels)
        self.relations = relations
        self.ring = ring
        self.rref = rref_rows(relations.row_list(), ring)
        pivot_set = {c for c, _ in self.rref}
        self.pivots = sorted(pivot_set)
        self.nonpivots = [j for j in range(len(ambient_labels)) if j not in pivot_set]
        self._nonpivot_pos = {j: q for q, j in enumerate(self.nonpivots)}
        self.dim = len(self.nonpivots)

    def labels(self) -> list:
        return [self.ambient_labels[j] for j in self.nonpivots]

    def reduce(self, vec: dict) -> dict:
        return reduce_mod_rows(vec, self.rref, self.ring)

    def in_relation_span(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def project(self, vec: dict) -> dict:
        red = self.reduce(vec)
        return {self._nonpivot_pos[j]: v for j, v in red.items()}

    def lift(self, q: int) -> dict:
        return {self.nonpivots[q]: self.ring.one}

    def project_matrix(self) -> SparseExactMatrix:
        cols = [self.project({j: self.ring.one}) for j in range(len(self.ambient_labels))]
        return SparseExactMatrix.from_columns(cols, self.dim, self.ring)

    def __repr__(self):
        return f"QuotientPresentation(ambient={len(self.ambient_labels)}, dim={self.dim})"


def quotient(ambient_labels: list, relations: SparseExactMatrix, ring) -> QuotientPresentation:
    return QuotientPresentation(ambient_labels, relations, ring)


def induced_map(
    f: SparseExactMatrix, src: QuotientPresentation, dst: QuotientPresentation
) -> SparseExactMatrix:
    """The map induced by f on quotient coordinates: project o f o lift.

    Raises if f does not carry src's relation span into dst's relation span;
    that always signals a construction bug upstream.
    """
    if f.cols != len(src.ambient_labels) or f.rows != len(dst.ambient_labels):
        raise ValueError("ambient shape mismatch in induced_map")
    for pcol, row in src.rref:
        if not dst.in_relation_span(f.apply(row)):
            raise ValueError(
                f"induced_map: image of relation with pivot {pcol} "
                "is not in the target relation span"
            )
    cols = [dst.project(f.apply(src.lift(q))) for q in range(src.dim)]
    return SparseExactMatrix.from_columns(cols, dst.dim, src.ring)


# ---------------------------------------------------------------------------
# cochain cohomology over a field


def cochain_cohomology(
    dims: list[int], mats: list[SparseExactMatrix], ring
) -> list[tuple[int, list[dict]]]:
    """Cohomology of 0 -> C_0 -> C_1 -> ... -> C_N -> 0.

    mats[i] maps C_i -> C_{i+1}; consecutive composites must vanish.
    Returns per degree (dimension, representative cocycles); representatives
    are echelon kernel vectors reduced modulo the image of the previous map.
    """
    if len(mats) != max(len(dims) - 1, 0):
        raise ValueError("expected one differential less than the number of spaces")
    for i, m in enumerate(mats):
        if m.cols != dims[i] or m.rows != dims[i + 1]:
            raise ValueError(f"differential {i} has shape {m.rows}x{m.cols}, "
                             f"expected {dims[i + 1]}x{dims[i]}")
    for i in range(len(mats) - 1):
        if not mats[i + 1].matmul(mats[i]).is_zero():
            raise ValueError(f"composition of differentials {i} and {i + 1} is nonzero")
    out = []
    for i, d in enumerate(dims):
        if i < len(mats):
            kern = kernel_vectors(mats[i], ring)
        else:
            kern = [{j: ring.one} for j in range(d)]
        if i > 0:
            img = image_vectors(mats[i - 1], ring)
        else:
            img = []
        img_rref = rref_rows(img, ring)
        reduced = [reduce_mod_rows(v, img_rref, ring) for v in kern]
        reps = [row for _, row in rref_rows(reduced, ring)]
        hdim = len(kern) - len(img_rref)
        if len(reps) != hdim:
            raise AssertionError("cohomology representative count mismatch")
        out.append((hdim, reps))
    return out


# ---------------------------------------------------------------------------
# Smith normal form and integral cohomology


@dataclass(frozen=True)
class SmithForm:
    """Nonzero invariant factors d_1 | d_2 | ... | d_r of an integer matrix."""

    factors: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.factors, self.factors[1:]):
            if a <= 0 or b % a != 0:
                raise ValueError(f"invariant factors {self.factors} violate divisibility")
        if self.factors and self.factors[-1] <= 0:
            raise ValueError("invariant factors must be positive")

    @property
    def rank(self) -> int:
        return len(self.factors)


def _snf_reduce(a: list[list[int]], q: list[list[int]] | None, qinv: list[list[int]] | None):
    """In-place SNF of dense integer matrix a; tracks column ops in q, qinv."""
    m = len(a)
    n = len(a[0]) if m else 0

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if q is not None:
            for row in q:
                row[i], row[j] = row[j], row[i]
            qinv[i], qinv[j] = qinv[j], qinv[i]

    def col_addmul(dst, src, c):  # col_dst += c * col_src
        for row in a:
            row[dst] += c * row[src]
        if q is not None:
            for row in q:
                row[dst] += c * row[src]
            for k in range(n):
                qinv[src][k] -= c * qinv[dst][k]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]

    def row_addmul(dst, src, c):
        ai, aj = a[dst], a[src]
        for k in range(n):
            ai[k] += c * aj[k]

    def row_negate(i):
        a[i] = [-x for x in a[i]]

    t = 0
    while t < m and t < n:
        # locate a minimal-magnitude nonzero in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(a[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        while True:
            _, bi, bj = best
            if bi != t:
                row_swap(t, bi)
            if bj != t:
                col_swap(t, bj)
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    row_addmul(i, t, -(a[i][t] // piv))
            for j in range(t + 1, n):
                if a[t][j]:
                    col_addmul(j, t, -(a[t][j] // piv))
            for i in range(t + 1, m):
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    for j in range(t, n):
                        v = abs(a[i][j])
                        if v and (best is None or v < best[0]):
                            best = (v, i, j)
                continue
            # pivot divides the rest of the block?
            piv = a[t][t]
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % piv != 0:
                        offender = (i, j)
                        break
                if offender:
                    break
            if offender is None:
                break
            col_addmul(t, offender[1], 1)
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(a[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
        if a[t][t] < 0:
            row_negate(t)
        t += 1
    return [a[i][i] for i in range(min(m, n)) if a[i][i] != 0]


def smith_normal_form(m: SparseExactMatrix) -> SmithForm:
    """Invariant factors of an integer matrix (transforms not tracked)."""
    dense = [[ZZ.of(v) for v in row] for row in m.convert(ZZ).to_dense()]
    if not dense:
        return SmithForm(())
    return SmithForm(tuple(_snf_reduce(dense, None, None)))


class IntegralQuotient:
    """Z^ambient modulo the row lattice of an integer relation matrix.

    Requires the quotient to be free (all invariant factors 1); the column
    transform of the SNF supplies explicit coordinates on the quotient.
    """

    def __init__(self, ambient_labels: list, relations: SparseExactMatrix):
        self.ambient_labels = list(ambient_labels)
        self.relations = relations.convert(ZZ)
        n = len(ambient_labels)
        if relations.cols != n:
            raise ValueError("relation width does not match ambient basis")
        dense = [[ZZ.of(v) for v in row] for row in self.relations.to_dense()]
        q = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        qinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        if dense:
            factors = _snf_reduce(dense, q, qinv)
        else:
            factors = []
        if any(d != 1 for d in factors):
            raise ValueError(
                f"integral quotient has torsion (invariant factors {factors}); "
                "no free coordinate system exists"
            )
        self._rank = len(factors)
        self._q = q
        self._qinv = qinv
        self.dim = n - self._rank

    def project(self, vec: dict) -> dict:
        """Coordinates of an ambient integer vector in the free quotient."""
        s, q = self._rank, self._q
        out = {}
        for t in range(s, len(self.ambient_labels)):
            acc = 0
            for a, v in vec.items():
                acc += v * q[a][t]
            if acc:
                out[t - s] = acc
        return out

    def lift(self, idx: int) -> dict:
        row = self._qinv[self._rank + idx]
        return {a: v for a, v in enumerate(row) if v}

    def in_relation_lattice(self, vec: dict) -> bool:
        return not self.project(vec)

    def labels(self) -> list:
        # quotient coordinates are SNF-derived; no ambient labels survive
        return list(range(self.dim))

    def __repr__(self):
        return f"IntegralQuotient(ambient={len(self.ambient_labels)}, dim={self.dim})"


def induced_map_integral(
    f: SparseExactMatrix, src: IntegralQuotient, dst: IntegralQuotient
) -> SparseExactMatrix:
    """Induced integer map on free quotient coordinates."""
    f = f.convert(ZZ)
    for row in src.relations.row_list():
        if row and not dst.in_relation_lattice(f.apply(row)):
            raise ValueError("induced_map_integral: relation lattice not preserved")
    cols = [dst.project(f.apply(src.lift(q))) for q in range(src.dim)]
    return SparseExactMatrix.from_columns(cols, dst.dim, ZZ)


def integral_cochain_cohomology(
    dims: list[int], mats: list[SparseExactMatrix]
) -> list[tuple[int, tuple[int, ...]]]:
    """Cohomology of a complex of free Z-modules: (free rank, torsion) per degree.

    Torsion of H^i comes from the invariant factors of the (i-1)-st
    differential exceeding 1; free ranks come from ranks over Q.
    """
    if len(mats) != max(len(dims) - 1, 0):
        raise ValueError("expected one differential less than the number of spaces")
    zmats = [m.convert(ZZ) for m in mats]
    for i in range(len(zmats) - 1):
        if not zmats[i + 1].matmul(zmats[i]).is_zero():
            raise ValueError(f"composition of differentials {i} and {i + 1} is nonzero")
    qranks = [rank(m.convert(QQ)) for m in zmats]
    out = []
    for i, d in enumerate(dims):
        ker = d - qranks[i] if i < len(zmats) else d
        prev = qranks[i - 1] if i > 0 else 0
        if i > 0:
            tors = tuple(f for f in smith_normal_form(zmats[i - 1]).factors if f != 1)
        else:
            tors = ()
        out.append((ker - prev, tors))
    return out
