"""Bigraded cohomology of incident cell pairs of a regular CW complex.

For 0 <= k <= n <= dim X the pair space in bidegree (n, k) is the free module
on pairs (upper n-cell, lower k-cell face).  The horizontal differential pushes
the upper cell up through its cofaces, the vertical one pushes the lower cell
down through its faces; the two commute.  Dividing each column by the vertical
image leaves a complex of quotients whose cohomology generalizes ordinary
cellular cohomology (the k = 0 row reproduces it) and whose vanishing below
the top dimension is exactly what the Koszulity decision needs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cw import ComplexError, RegularCWComplex
from .linalg import (
    ZZ,
    IntegralQuotient,
    SparseExactMatrix,
    cochain_cohomology,
    induced_map,
    induced_map_integral,
    integral_cochain_cohomology,
    quotient,
)


def pair_basis(x: RegularCWComplex, n: int, k: int) -> list[tuple[str, str]]:
    """Pairs (upper n-cell, lower k-cell face), sorted by (upper, lower)."""
    if k > n:
        return []
    out = []
    for beta in x.cells(n):
        if n == k:
            out.append((beta, beta))
            continue
        for alpha in x.cells(k):
            if x.le(alpha, beta):
                out.append((beta, alpha))
    return out


@dataclass
class BigradedLayer:
    """Pair spaces of one column k with both differentials, over Z."""

    complex: RegularCWComplex
    k: int
    bases: dict[int, list[tuple[str, str]]]
    d_up: dict[int, SparseExactMatrix]
    d_down: dict[int, SparseExactMatrix]

    def dims(self) -> dict[int, int]:
        return {n: len(b) for n, b in self.bases.items()}


def build_layer(x: RegularCWComplex, k: int) -> BigradedLayer:
    """Assemble bases and differentials of column k; entries are integers."""
    x.ensure_valid()
    d = x.dim
    if not 0 <= k <= d:
        raise ComplexError(f"column {k} outside 0..{d}")
    bases = {n: pair_basis(x, n, k) for n in range(k, d + 1)}
    index = {n: {pair: i for i, pair in enumerate(bases[n])} for n in bases}
    below = {n: pair_basis(x, n, k - 1) for n in range(k, d + 1)} if k >= 1 else {}
    below_index = {n: {pair: i for i, pair in enumerate(below[n])} for n in below}

    d_up: dict[int, SparseExactMatrix] = {}
    for n in range(k, d + 1):
        entries: dict[tuple[int, int], int] = {}
        tgt = index.get(n + 1, {})
        for j, (beta, alpha) in enumerate(bases[n]):
            for gamma in x.cofaces(beta):
                entries[(tgt[(gamma, alpha)], j)] = x.incidence[(gamma, beta)]
        d_up[n] = SparseExactMatrix(len(bases.get(n + 1, [])), len(bases[n]), entries, ZZ)

    d_down: dict[int, SparseExactMatrix] = {}
    if k >= 1:
        for n in range(k, d + 1):
            entries = {}
            tgt = below_index[n]
            for j, (beta, alpha) in enumerate(bases[n]):
                for gamma in x.faces(alpha):
                    entries[(tgt[(beta, gamma)], j)] = x.incidence[(alpha, gamma)]
            d_down[n] = SparseExactMatrix(len(below[n]), len(bases[n]), entries, ZZ)

    return BigradedLayer(x, k, bases, d_up, d_down)


@dataclass
class ReducedLayer:
    """Column k after dividing out the vertical image, with the induced maps."""

    complex: RegularCWComplex
    k: int
    ring: object
    quotients: dict[int, object]
    mats: dict[int, SparseExactMatrix]

    def dims(self) -> dict[int, int]:
        return {n: q.dim for n, q in self.quotients.items()}

    def chain(self) -> tuple[list[int], list[SparseExactMatrix]]:
        ns = sorted(self.quotients)
        return [self.quotients[n].dim for n in ns], [self.mats[n] for n in ns[:-1]]


def reduced_layer(x: RegularCWComplex, k: int, ring) -> ReducedLayer:
    """Quotient of column k by the vertical image of column k+1."""
    layer = build_layer(x, k)
    d = x.dim
    above = build_layer(x, k + 1) if k + 1 <= d else None
    quotients: dict[int, object] = {}
    for n in range(k, d + 1):
        labels = layer.bases[n]
        if above is not None and n >= k + 1:
            rows = [above.d_down[n].apply({j: 1}) for j in range(len(above.bases[n]))]
        else:
            rows = []
        rel = SparseExactMatrix.from_rows(rows, len(labels), ZZ)
        if ring is ZZ:
            quotients[n] = IntegralQuotient(labels, rel)
        else:
            quotients[n] = quotient(labels, rel.convert(ring), ring)
    mats: dict[int, SparseExactMatrix] = {}
    for n in range(k, d):
        f = layer.d_up[n]
        if ring is ZZ:
            mats[n] = induced_map_integral(f, quotients[n], quotients[n + 1])
        else:
            mats[n] = induced_map(f.convert(ring), quotients[n], quotients[n + 1])
    return ReducedLayer(x, k, ring, quotients, mats)


# ---------------------------------------------------------------------------
# classical cellular and relative cohomology (computed directly on cells)


def cellular_complex(x: RegularCWComplex, ring) -> tuple[list[int], list[SparseExactMatrix]]:
    x.ensure_valid()
    d = x.dim
    dims = [len(x.cells(n)) for n in range(d + 1)]
    mats = []
    for n in range(d):
        src = x.cells(n)
        tgt = {c: i for i, c in enumerate(x.cells(n + 1))}
        entries = {}
        for j, alpha in enumerate(src):
            for gamma in x.cofaces(alpha):
                entries[(tgt[gamma], j)] = x.incidence[(gamma, alpha)]
        mats.append(SparseExactMatrix(dims[n + 1], dims[n], entries, ring))
    return dims, mats


def cellular_cohomology(x: RegularCWComplex, field) -> list[int]:
    """Dimensions of the cellular cohomology of X over a field."""
    dims, mats = cellular_complex(x, field)
    return [h for h, _ in cochain_cohomology(dims, mats, field)]


def integral_cellular_cohomology(x: RegularCWComplex) -> list[tuple[int, tuple[int, ...]]]:
    """Cellular cohomology over Z: (free rank, torsion factors) per degree."""
    dims, mats = cellular_complex(x, ZZ)
    return integral_cochain_cohomology(dims, mats)


def relative_cohomology(x: RegularCWComplex, alpha: str, field) -> list[int]:
    """Dimensions of H^n(X, Y_alpha; F), Y_alpha the complement star of alpha.

    The relative cochain complex lives on the cells having alpha as a face.
    """
    x.ensure_valid()
    x.cell_dim(alpha)
    d = x.dim
    cells = [[c for c in x.cells(n) if x.le(alpha, c)] for n in range(d + 1)]
    dims = [len(cs) for cs in cells]
    mats = []
    for n in range(d):
        tgt = {c: i for i, c in enumerate(cells[n + 1])}
        entries = {}
        for j, beta in enumerate(cells[n]):
            for gamma in x.cofaces(beta):
                if gamma in tgt:
                    entries[(tgt[gamma], j)] = x.incidence[(gamma, beta)]
        mats.append(SparseExactMatrix(dims[n + 1], dims[n], entries, field))
    return [h for h, _ in cochain_cohomology(dims, mats, field)]


# ---------------------------------------------------------------------------
# the bigraded table and the obstruction report


@dataclass
class PairCohomologyTable:
    """Cohomology of the reduced columns: entries for 0 <= k <= n <= dim."""

    coeff: str
    dim: int
    entries: dict[tuple[int, int], object]

    def entry(self, n: int, k: int):
        return self.entries[(n, k)]


def hx_table(x: RegularCWComplex, ring) -> PairCohomologyTable:
    """Bigraded cohomology table over a field or over Z."""
    x.ensure_valid()
    d = x.dim
    entries: dict[tuple[int, int], object] = {}
    for k in range(d + 1):
        layer = reduced_layer(x, k, ring)
        dims, mats = layer.chain()
        if ring is ZZ:
            homs = integral_cochain_cohomology(dims, mats)
            for i, val in enumerate(homs):
                entries[(k + i, k)] = val
        else:
            homs = cochain_cohomology(dims, mats, ring)
            for i, (h, _) in enumerate(homs):
                entries[(k + i, k)] = h
    return PairCohomologyTable(ring.key, d, entries)


@dataclass
class ObstructionReport:
    """Koszulity obstructions of the extended poset, by both routes.

    `bigraded` lists nonzero table entries with 0 <= k < n < dim;
    `cohomology` lists nonzero reduced cellular cohomology in 0 < n < dim;
    `relative` lists cells alpha and degrees n < dim with H^n(X, Y_alpha) != 0.
    The two routes always agree on emptiness.
    """

    coeff: str
    dim: int
    bigraded: list[tuple[int, int, int]]
    cohomology: list[tuple[int, int]]
    relative: list[tuple[str, int, int]]

    @property
    def empty(self) -> bool:
        return not self.bigraded


def koszul_obstructions(x: RegularCWComplex, field) -> ObstructionReport:
    """Both obstruction routes for the extended face poset; cross-checked."""
    x.ensure_valid()
    if not x.is_pure():
        raise ComplexError(f"complex {x.name!r} is not pure")
    if not x.connected_by_codim1():
        raise ComplexError(f"complex {x.name!r} is not connected by codimension-1 faces")
    d = x.dim
    table = hx_table(x, field)
    bigraded = [
        (n, k, table.entry(n, k))
        for k in range(d)
        for n in range(k + 1, d)
        if table.entry(n, k) != 0
    ]
    cell_dims = cellular_cohomology(x, field)
    cohomology = [(n, cell_dims[n]) for n in range(1, d) if cell_dims[n] != 0]
    relative = []
    for alpha in x.cells():
        rel = relative_cohomology(x, alpha, field)
        for n in range(d):
            if rel[n] != 0:
                relative.append((alpha, n, rel[n]))
    if bool(bigraded) != bool(cohomology or relative):
        raise AssertionError(
            "internal error: bigraded and classical obstruction routes disagree "
            f"on {x.name!r} over {field!r}"
        )
    return ObstructionReport(field.key, d, sorted(bigraded), cohomology, sorted(relative))
