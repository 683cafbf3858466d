"""Finite regular CW complexes given combinatorially by signed incidence numbers.

A complex stores cell dimensions and the incidence map d(upper, lower) in
{-1, +1}, defined exactly for codimension-1 faces.  Regularity itself is not
certified; the validator checks the combinatorial consequences that matter
here: vanishing boundary-of-boundary, thin face poset, sphere Euler
characteristics of cell boundaries, and single diamond classes on intervals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .layered import BOTTOM, TOP, GraphError, LayeredGraph


class ComplexError(ValueError):
    pass


class RegularCWComplex:
    """Immutable signed incidence structure of a finite regular CW complex."""

    def __init__(self, name: str, dims: dict[str, int], incidence: dict[tuple[str, str], int]):
        if not dims:
            raise ComplexError("complex has no cells")
        for cid, d in dims.items():
            if not isinstance(cid, str) or not cid:
                raise ComplexError(f"cell id {cid!r} must be a nonempty string")
            if cid in (BOTTOM, TOP):
                raise ComplexError(f"cell id {cid!r} is reserved")
            if not isinstance(d, int) or d < 0:
                raise ComplexError(f"cell {cid!r} has invalid dimension {d!r}")
        for (u, l), s in incidence.items():
            if u not in dims or l not in dims:
                raise ComplexError(f"incidence ({u!r}, {l!r}) references an unknown cell")
            if dims[u] != dims[l] + 1:
                raise ComplexError(
                    f"incidence ({u!r}, {l!r}) joins dimensions {dims[u]} and {dims[l]}"
                )
            if s not in (1, -1):
                raise ComplexError(f"incidence ({u!r}, {l!r}) must be +1 or -1, got {s!r}")
        self.name = name
        self.dims = dict(dims)
        self.incidence = dict(incidence)
        self.dim = max(dims.values())

        by_dim: dict[int, list[str]] = {}
        for cid, d in dims.items():
            by_dim.setdefault(d, []).append(cid)
        self._by_dim = {d: tuple(sorted(cs)) for d, cs in by_dim.items()}

        faces: dict[str, list[str]] = {c: [] for c in dims}
        cofaces: dict[str, list[str]] = {c: [] for c in dims}
        for (u, l) in incidence:
            faces[u].append(l)
            cofaces[l].append(u)
        self._faces = {c: tuple(sorted(fs)) for c, fs in faces.items()}
        self._cofaces = {c: tuple(sorted(fs)) for c, fs in cofaces.items()}

        closure: dict[str, frozenset[str]] = {}
        for d in range(self.dim + 1):
            for c in self._by_dim.get(d, ()):
                acc: set[str] = set()
                for f in self._faces[c]:
                    acc.add(f)
                    acc.update(closure[f])
                closure[c] = frozenset(acc)
        self._strict_faces = closure
        self._report: list[str] | None = None
        self._bar: LayeredGraph | None = None
        self._hat: LayeredGraph | None = None
        self._cache: dict = {}

    # -- basic queries ------------------------------------------------------

    def cells(self, d: int | None = None) -> tuple[str, ...]:
        if d is None:
            out: list[str] = []
            for k in sorted(self._by_dim):
                out.extend(self._by_dim[k])
            return tuple(out)
        return self._by_dim.get(d, ())

    def cell_dim(self, c: str) -> int:
        try:
            return self.dims[c]
        except KeyError:
            raise ComplexError(f"unknown cell {c!r}") from None

    def __contains__(self, c: str) -> bool:
        return c in self.dims

    def d(self, upper: str, lower: str) -> int:
        return self.incidence.get((upper, lower), 0)

    def faces(self, c: str) -> tuple[str, ...]:
        self.cell_dim(c)
        return self._faces[c]

    def cofaces(self, c: str) -> tuple[str, ...]:
        self.cell_dim(c)
        return self._cofaces[c]

    def le(self, a: str, b: str) -> bool:
        """a is a face of b (or equal)."""
        self.cell_dim(a), self.cell_dim(b)
        return a == b or a in self._strict_faces[b]

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self._by_dim.get(d, ())) for d in range(self.dim + 1))

    def euler_characteristic(self, cells=None) -> int:
        if cells is None:
            cells = self.dims
        return sum((-1) ** self.dims[c] for c in cells)

    # -- validation -----------------------------------------------------------

    def validate(self) -> list[str]:
        """Combinatorial admissibility report; empty means no violations found."""
        if self._report is not None:
            return self._report
        report: list[str] = []
        for c in self.cells():
            d = self.dims[c]
            if d >= 1 and not self._faces[c]:
                report.append(f"cell {c!r} of dimension {d} has no codimension-1 face")
        for c in self.cells():
            if self.dims[c] == 1:
                if len(self._faces[c]) != 2:
                    report.append(
                        f"1-cell {c!r} has {len(self._faces[c])} endpoints, expected 2"
                    )
                elif sum(self.incidence[(c, v)] for v in self._faces[c]) != 0:
                    report.append(
                        f"1-cell {c!r} must have one +1 and one -1 endpoint"
                    )
        # boundary of boundary vanishes
        for g in self.cells():
            if self.dims[g] < 2:
                continue
            acc: dict[str, int] = {}
            for b in self._faces[g]:
                sb = self.incidence[(g, b)]
                for a in self._faces[b]:
                    acc[a] = acc.get(a, 0) + sb * self.incidence[(b, a)]
            for a, v in sorted(acc.items()):
                if v != 0:
                    report.append(f"boundary of boundary is nonzero at ({g!r}, {a!r}): {v}")
        # rank-2 intervals between cells have exactly two intermediates
        for g in self.cells():
            dg = self.dims[g]
            if dg < 2:
                continue
            for a in sorted(self._strict_faces[g]):
                if self.dims[a] != dg - 2:
                    continue
                mids = [b for b in self._faces[g] if a in self._strict_faces[b]]
                if len(mids) != 2:
                    report.append(
                        f"interval [{a!r}, {g!r}] has {len(mids)} intermediate cells, expected 2"
                    )
        # boundaries of n-cells have the Euler characteristic of S^(n-1)
        for c in self.cells():
            n = self.dims[c]
            if n < 1:
                continue
            chi = self.euler_characteristic(self._strict_faces[c])
            if chi != 1 + (-1) ** (n - 1):
                report.append(
                    f"boundary of {c!r} has Euler characteristic {chi}, "
                    f"expected {1 + (-1) ** (n - 1)}"
                )
        if not report:
            try:
                bar = self._face_poset_bar_unchecked()
            except GraphError as exc:
                report.append(f"face poset is not a layered graph: {exc}")
            else:
                ok, witness = bar.is_thin()
                if not ok:
                    report.append(f"face poset is not thin at {witness[:2]}")
                for b in bar.vertex_ids():
                    for a in sorted(bar.strictly_below(b)):
                        if len(bar.diamond_classes(b, a)) != 1:
                            report.append(
                                f"interval [{a!r}, {b!r}] splits into several diamond classes"
                            )
        self._report = report
        return report

    def ensure_valid(self) -> None:
        report = self.validate()
        if report:
            raise ComplexError("; ".join(report))

    # -- face posets ------------------------------------------------------------

    def _face_poset_bar_unchecked(self) -> LayeredGraph:
        verts = {c: d + 1 for c, d in self.dims.items()}
        covers = set(self.incidence.keys())
        return LayeredGraph(verts, covers, name=self.name)

    def face_poset_bar(self) -> LayeredGraph:
        """The cell poset with an added minimum; rank = dimension + 1."""
        if self._bar is None:
            self.ensure_valid()
            self._bar = self._face_poset_bar_unchecked()
        return self._bar

    def face_poset_hat(self) -> LayeredGraph:
        """The cell poset with added minimum and maximum; requires purity."""
        if self._hat is None:
            if not self.is_pure():
                raise ComplexError(f"complex {self.name!r} is not pure")
            self._hat = self.face_poset_bar().extend_with_top()
        return self._hat

    # -- structure predicates ------------------------------------------------------

    def is_pure(self) -> bool:
        """Every cell lies in the closure of a top-dimensional cell."""
        covered: set[str] = set()
        for c in self.cells(self.dim):
            covered.add(c)
            covered.update(self._strict_faces[c])
        return len(covered) == len(self.dims)

    def connected_by_codim1(self) -> bool:
        """Top cells form one class under sharing a codimension-1 face."""
        if not self.is_pure():
            raise ComplexError(f"complex {self.name!r} is not pure")
        tops = list(self.cells(self.dim))
        if self.dim == 0:
            return len(tops) == 1
        parent = {c: c for c in tops}

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        for f in self.cells(self.dim - 1):
            owners = self._cofaces[f]
            for other in owners[1:]:
                ra, rb = find(owners[0]), find(other)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        return len({find(c) for c in tops}) == 1

    # -- subcomplexes ------------------------------------------------------------

    def closed_cell(self, alpha: str) -> "Subcomplex":
        """All faces of alpha, alpha included."""
        self.cell_dim(alpha)
        return Subcomplex(self, frozenset(self._strict_faces[alpha] | {alpha}))

    def complement_star(self, alpha: str) -> "Subcomplex":
        """All cells whose closure avoids alpha."""
        self.cell_dim(alpha)
        keep = frozenset(c for c in self.dims if not self.le(alpha, c))
        return Subcomplex(self, keep)

    # -- serialization ---------------------------------------------------------------

    def to_dict(self) -> dict:
        cells = []
        for c in sorted(self.dims):
            boundary = {
                l: self.incidence[(u, l)]
                for (u, l) in self.incidence
                if u == c
            }
            cells.append(
                {
                    "id": c,
                    "dim": self.dims[c],
                    "boundary": {k: boundary[k] for k in sorted(boundary)},
                }
            )
        return {"name": self.name, "cells": cells}

    def __eq__(self, other):
        return (
            isinstance(other, RegularCWComplex)
            and self.name == other.name
            and self.dims == other.dims
            and self.incidence == other.incidence
        )

    def __repr__(self):
        return f"RegularCWComplex({self.name!r}, counts={self.counts()})"


@dataclass(frozen=True)
class Subcomplex:
    """A downward-closed set of cells of a parent complex."""

    parent: RegularCWComplex
    cells: frozenset[str]

    def __post_init__(self):
        for c in self.cells:
            for f in self.parent.faces(c):
                if f not in self.cells:
                    raise ComplexError(
                        f"subcomplex is not downward closed: {c!r} without its face {f!r}"
                    )

    def induced(self) -> RegularCWComplex:
        dims = {c: self.parent.dims[c] for c in self.cells}
        inc = {
            (u, l): s
            for (u, l), s in self.parent.incidence.items()
            if u in self.cells and l in self.cells
        }
        return RegularCWComplex(f"{self.parent.name}|sub", dims, inc)

    def euler_characteristic(self) -> int:
        return self.parent.euler_characteristic(self.cells)


def complex_from_dict(data: dict) -> RegularCWComplex:
    """Build a complex from the JSON schema, with located schema errors."""
    if not isinstance(data, dict):
        raise ComplexError("complex file must contain a JSON object")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ComplexError("'name' must be a string")
    raw_cells = data.get("cells")
    if not isinstance(raw_cells, list):
        raise ComplexError("'cells' must be a list")
    dims: dict[str, int] = {}
    boundaries: dict[str, dict] = {}
    for i, item in enumerate(raw_cells):
        if not isinstance(item, dict) or "id" not in item or "dim" not in item:
            raise ComplexError(f"cells[{i}]: expected an object with 'id' and 'dim'")
        cid, d = item["id"], item["dim"]
        if not isinstance(cid, str) or not cid:
            raise ComplexError(f"cells[{i}]: id must be a nonempty string")
        if not isinstance(d, int) or d < 0:
            raise ComplexError(f"cells[{i}] ({cid!r}): dim must be an integer >= 0")
        if cid in dims:
            raise ComplexError(f"cells[{i}]: duplicate id {cid!r}")
        boundary = item.get("boundary", {})
        if not isinstance(boundary, dict):
            raise ComplexError(f"cells[{i}] ({cid!r}): 'boundary' must be an object")
        dims[cid] = d
        boundaries[cid] = boundary
    incidence: dict[tuple[str, str], int] = {}
    for cid, boundary in boundaries.items():
        if dims[cid] == 0 and boundary:
            raise ComplexError(f"0-cell {cid!r} must have an empty boundary")
        for fid, s in boundary.items():
            if s not in (1, -1):
                raise ComplexError(
                    f"cell {cid!r}: boundary[{fid!r}] must be +1 or -1, got {s!r}"
                )
            if fid not in dims:
                raise ComplexError(f"cell {cid!r}: boundary references unknown cell {fid!r}")
            if dims[fid] != dims[cid] - 1:
                raise ComplexError(
                    f"cell {cid!r} (dim {dims[cid]}): boundary cell {fid!r} "
                    f"has dim {dims[fid]}, expected {dims[cid] - 1}"
                )
            incidence[(cid, fid)] = s
    return RegularCWComplex(name, dims, incidence)
