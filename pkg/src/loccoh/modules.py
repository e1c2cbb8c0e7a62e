"""Finitely generated graded modules as cokernel presentations.

A ModulePresentation is coker(A) for a graded matrix A over a (quotient)
ring, in one of two grading modes: 'Z' (total degree) or 'Zn' (multidegree,
only meaningful when all data is multihomogeneous).  Hilbert functions are
read off standard monomials of the leading-term module, independently of any
resolution; minimal free resolutions are built by iterated syzygies with
degreewise minimalization of the generator sets.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .groebner import (
    DEFAULT_DEGREE_CAP,
    GradedMatrix,
    GradingError,
    Ideal,
    SubmoduleBasis,
    Vec,
    mono_degree,
    preimage_columns,
    shift_add,
    shift_sub,
    shift_total,
    syzygies,
    vec_degree,
    vec_from_poly,
    vec_poly_entries,
    zero_shift,
)
from .rings import Polynomial, Ring, RingError, mono_deg, mono_mul


# ---------------------------------------------------------------------------
# graded piece bookkeeping for free modules over R

def free_piece_basis(ring: Ring, shifts, d, mode: str):
    """Standard monomial basis of degree-d piece of the free module R(-shifts).

    Returns a list of (component, monomial) pairs; only monomials outside the
    leading-term ideal of the modulus count.
    """
    out = []
    for comp, s in enumerate(shifts):
        need = shift_sub(d, s)
        if mode == "Zn":
            if all(e >= 0 for e in need):
                m = tuple(need)
                if ring.is_std_monomial(m):
                    out.append((comp, m))
        else:
            if need >= 0:
                for m in ring.std_monomials(need):
                    out.append((comp, m))
    return out


def vector_coords(v: Vec, basis_pos: dict, p: int) -> np.ndarray:
    out = np.zeros(len(basis_pos), dtype=np.int64)
    for t, c in v.items():
        pos = basis_pos.get(t)
        if pos is None:
            raise RingError(f"term {t} outside the expected graded piece")
        out[pos] = c % p
    return out


# ---------------------------------------------------------------------------
# minimal generators by degreewise linear algebra

def _degree_sort_key(d):
    if isinstance(d, tuple):
        return (sum(d), d)
    return (d, ())


def minimalize_generators(vecs, ring: Ring, row_shifts, mode: str, basis: SubmoduleBasis | None = None):
    """A minimal homogeneous generating subset of the span of vecs in R^rank.

    Graded Nakayama: working degree by degree upward, a generator is kept iff
    it is independent of lower-degree multiples and previously kept ones in
    its graded piece of the ambient free module.
    """
    p = ring.field.p
    items = []
    for v in vecs:
        if not v:
            continue
        items.append((vec_degree(v, row_shifts, mode), v))
    items.sort(key=lambda t: _degree_sort_key(t[0]))
    chosen: list[tuple] = []
    out = []
    degrees = []
    for d in sorted({d for d, _ in items}, key=_degree_sort_key):
        pieces = free_piece_basis(ring, row_shifts, d, mode)
        pos = {t: i for i, t in enumerate(pieces)}
        tracker = linalg.SpanTracker(len(pieces), p)
        # multiples of already chosen generators landing in degree d
        for dg, g in chosen:
            diff = shift_sub(d, dg)
            if mode == "Zn":
                if any(e < 0 for e in diff):
                    continue
                monos = [tuple(diff)]
            else:
                if diff < 0:
                    continue
                if diff == 0:
                    continue
                monos = ring.monomials(diff)
            for m in monos:
                if mode == "Z" and mono_deg(m) == 0:
                    continue
                w = _mono_times_vec(m, g, ring)
                if w:
                    tracker.add(vector_coords(w, pos, p))
        for dg, v in items:
            if dg != d:
                continue
            if tracker.add(vector_coords(v, pos, p)):
                chosen.append((d, v))
                out.append(v)
                degrees.append(d)
    return out, degrees


def _mono_times_vec(m, v: Vec, ring: Ring) -> Vec:
    buckets: dict[int, dict] = {}
    for (c, mm), co in v.items():
        buckets.setdefault(c, {})[mono_mul(mm, m)] = co
    out: Vec = {}
    for c, d in buckets.items():
        f = ring.from_dict(d)
        for mm, co in f.terms:
            out[(c, mm)] = co
    return out


# ---------------------------------------------------------------------------
# presentations

class ModulePresentation:
    """A graded module given as coker(matrix): F_0 / (image + modulus part)."""

    __slots__ = ("ring", "matrix", "mode", "_rel_basis", "_resolution", "_min")

    def __init__(self, ring: Ring, matrix: GradedMatrix, mode: str = "Z"):
        if matrix.mode != mode:
            raise RingError("matrix grading mode mismatch")
        self.ring = ring
        self.matrix = matrix
        self.mode = mode
        self._rel_basis = None
        self._resolution = None
        self._min = None

    # -- constructors ---------------------------------------------------------
    @staticmethod
    def free(ring: Ring, shifts=None, mode: str = "Z") -> "ModulePresentation":
        if shifts is None:
            shifts = [zero_shift(ring, mode)]
        mat = GradedMatrix(ring, [[] for _ in shifts], shifts, (), mode)
        return ModulePresentation(ring, mat, mode)

    @staticmethod
    def cyclic(ring: Ring, gens, mode: str = "Z", shift=None) -> "ModulePresentation":
        """R/(gens), with an optional degree shift of the generator."""
        if shift is None:
            shift = zero_shift(ring, mode)
        polys = [ring.parse(g) if isinstance(g, str) else g for g in gens]
        polys = [f for f in polys if not f.is_zero]
        from .groebner import poly_degree_for_mode

        col_shifts = [shift_add(shift, poly_degree_for_mode(f, mode)) for f in polys]
        mat = GradedMatrix(ring, [polys], [shift], col_shifts, mode)
        return ModulePresentation(ring, mat, mode)

    @staticmethod
    def from_ideal(ideal: Ideal, mode: str = "Z") -> "ModulePresentation":
        """R/I as a module."""
        return ModulePresentation.cyclic(ideal.ring, ideal.gens, mode)

    @staticmethod
    def zero(ring: Ring, mode: str = "Z") -> "ModulePresentation":
        mat = GradedMatrix(ring, [], (), (), mode)
        return ModulePresentation(ring, mat, mode)

    @staticmethod
    def direct_sum(*mods: "ModulePresentation") -> "ModulePresentation":
        if not mods:
            raise RingError("empty direct sum")
        ring = mods[0].ring
        mode = mods[0].mode
        for m in mods:
            if m.ring is not ring or m.mode != mode:
                raise RingError("direct sum of incompatible modules")
        row_shifts = []
        col_shifts = []
        blocks = []
        for m in mods:
            blocks.append((len(row_shifts), len(col_shifts), m.matrix))
            row_shifts.extend(m.matrix.row_shifts)
            col_shifts.extend(m.matrix.col_shifts)
        entries = [[ring.zero] * len(col_shifts) for _ in row_shifts]
        for r0, c0, mat in blocks:
            for i in range(mat.nrows):
                for j in range(mat.ncols):
                    entries[r0 + i][c0 + j] = mat.entry(i, j)
        return ModulePresentation(ring, GradedMatrix(ring, entries, row_shifts, col_shifts, mode), mode)

    # -- basic structure --------------------------------------------------------
    @property
    def gen_shifts(self):
        return self.matrix.row_shifts

    @property
    def rank_f0(self) -> int:
        return self.matrix.nrows

    def relations(self) -> SubmoduleBasis:
        if self._rel_basis is None:
            self._rel_basis = SubmoduleBasis(self.ring, self.rank_f0, self.matrix.columns())
        return self._rel_basis

    def normal_form(self, v: Vec) -> Vec:
        return self.relations().nf(v)

    def is_zero(self) -> bool:
        if self.rank_f0 == 0:
            return True
        unit = (0,) * self.ring.n
        return all(self.normal_form({(i, unit): 1}) == {} for i in range(self.rank_f0))

    # -- graded pieces ----------------------------------------------------------
    def piece_basis(self, d):
        """Standard module monomials spanning the degree-d piece."""
        rel = self.relations()
        out = []
        for comp, m in free_piece_basis(self.ring, self.gen_shifts, d, self.mode):
            if rel.is_std_term(comp, m):
                out.append((comp, m))
        return out

    def hilbert_function(self, d) -> int:
        return len(self.piece_basis(d))

    def multiplication_matrix(self, f: Polynomial, d) -> np.ndarray:
        """Matrix of f: M_d -> M_{d+deg f} in the standard monomial bases."""
        from .groebner import poly_degree_for_mode

        fdeg = poly_degree_for_mode(f, self.mode)
        src = self.piece_basis(d)
        dst = self.piece_basis(shift_add(d, fdeg))
        pos = {t: i for i, t in enumerate(dst)}
        p = self.ring.field.p
        mat = np.zeros((len(dst), len(src)), dtype=np.int64)
        for j, (comp, m) in enumerate(src):
            v: Vec = {}
            for fm, fc in f.terms:
                v[(comp, mono_mul(m, fm))] = fc
            w = self.normal_form(v)
            for t, c in w.items():
                mat[pos[t], j] = c % p
        return mat

    # -- minimal presentation -----------------------------------------------------
    def minimal_presentation(self) -> "ModulePresentation":
        if self._min is None:
            mat = prune_units(self.matrix)
            cols = [c for c in mat.columns() if c]
            cols, degs = minimalize_generators(cols, self.ring, mat.row_shifts, self.mode)
            new = GradedMatrix.from_columns(self.ring, cols, mat.row_shifts, self.mode, degs)
            self._min = ModulePresentation(self.ring, new, self.mode)
            self._min._min = self._min
        return self._min

    def resolution(self, length: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> "FreeResolution":
        if self._resolution is None or self._resolution.length < length:
            self._resolution = minimal_free_resolution(self, length, degree_cap)
        return self._resolution

    def __repr__(self):
        return f"coker({self.matrix.nrows}x{self.matrix.ncols} over {self.ring})"


def prune_units(mat: GradedMatrix) -> GradedMatrix:
    """Remove unit entries of a presentation matrix by row/column reduction.

    Unit pruning is an isomorphism on the cokernel; the result has no
    constant entries.
    """
    ring = mat.ring
    entries = [list(row) for row in mat.entries]
    row_shifts = list(mat.row_shifts)
    col_shifts = list(mat.col_shifts)
    while True:
        pivot = None
        for i, row in enumerate(entries):
            for j, f in enumerate(row):
                if f.is_unit_constant():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        inv = ring.field.inv(entries[i][j].lc)
        # scale column j so the pivot becomes 1
        for r in range(len(entries)):
            entries[r][j] = entries[r][j] * inv
        # clear row i in the other columns
        for jj in range(len(col_shifts)):
            if jj == j:
                continue
            c = entries[i][jj]
            if c.is_zero:
                continue
            for r in range(len(entries)):
                entries[r][jj] = entries[r][jj] - c * entries[r][j]
        del row_shifts[i]
        del col_shifts[j]
        entries = [[row[jj] for jj in range(len(row)) if jj != j] for r, row in enumerate(entries) if r != i]
    keep = [j for j in range(len(col_shifts)) if any(not entries[i][j].is_zero for i in range(len(row_shifts)))]
    entries = [[row[j] for j in keep] for row in entries]
    col_shifts = [col_shifts[j] for j in keep]
    return GradedMatrix(ring, entries, row_shifts, col_shifts, mat.mode)


# ---------------------------------------------------------------------------
# resolutions

class FreeResolution:
    """Graded free resolution data: matrices d_1..d_L and the shifts of F_0..F_L."""

    def __init__(self, ring: Ring, shifts, mats, mode: str, complete: bool, minimal: bool = True):
        self.ring = ring
        self.shifts = [tuple(s) for s in shifts]  # shifts[i] = generator degrees of F_i
        self.mats = list(mats)  # mats[i] = d_{i+1}: F_{i+1} -> F_i
        self.mode = mode
        self.complete = complete
        self.minimal = minimal

    @property
    def length(self) -> int:
        return len(self.mats)

    def rank(self, i: int) -> int:
        if i < len(self.shifts):
            return len(self.shifts[i])
        return 0

    def shift(self, i: int):
        return self.shifts[i] if i < len(self.shifts) else ()

    def differential(self, i: int):
        """d_i: F_i -> F_{i-1}, or None when F_i = 0."""
        if 1 <= i <= len(self.mats):
            return self.mats[i - 1]
        return None

    def betti(self) -> dict:
        """(homological index, degree) -> count of generators."""
        out: dict = {}
        for i, sh in enumerate(self.shifts):
            for d in sh:
                out[(i, d)] = out.get((i, d), 0) + 1
        return out

    def total_betti(self) -> list:
        return [len(s) for s in self.shifts]

    def check_complex(self) -> bool:
        for i in range(len(self.mats) - 1):
            if not self.mats[i].compose(self.mats[i + 1]).is_zero():
                return False
        return True

    def is_minimal(self) -> bool:
        for mat in self.mats:
            for row in mat.entries:
                for f in row:
                    if not f.is_zero and f.degree() == 0:
                        return False
        return True


def minimal_free_resolution(m: ModulePresentation, max_len: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> FreeResolution:
    """Minimal graded free resolution of coker(A), truncated at max_len steps."""
    mp = m.minimal_presentation()
    ring = m.ring
    mode = m.mode
    shifts = [mp.matrix.row_shifts]
    mats = []
    complete = False
    current = mp.matrix
    if current.ncols == 0:
        return FreeResolution(ring, shifts, [], mode, complete=True)
    shifts.append(current.col_shifts)
    mats.append(current)
    for step in range(1, max_len):
        cols = syzygies(current.columns(), current.nrows, ring, degree_cap)
        cols, degs = minimalize_generators(cols, ring, current.col_shifts, mode)
        if not cols:
            complete = True
            break
        nxt = GradedMatrix.from_columns(ring, cols, current.col_shifts, mode, degs)
        mats.append(nxt)
        shifts.append(nxt.col_shifts)
        current = nxt
    else:
        # ran to max_len without hitting a zero kernel; check one more step
        cols = syzygies(current.columns(), current.nrows, ring, degree_cap)
        cols, _ = minimalize_generators(cols, ring, current.col_shifts, mode)
        complete = not cols
    return FreeResolution(ring, shifts, mats, mode, complete)


# ---------------------------------------------------------------------------
# subquotients

def subquotient(ring: Ring, num_cols, den_cols, row_shifts, mode: str = "Z") -> ModulePresentation:
    """Presentation of (span(num) + span(den)) / span(den) inside R^rank."""
    num_cols = [c for c in num_cols if c]
    if not num_cols:
        return ModulePresentation.zero(ring, mode)
    gen_degs = [vec_degree(c, row_shifts, mode) for c in num_cols]
    rels = preimage_columns(num_cols, den_cols, len(row_shifts), ring)
    rel_mat = GradedMatrix.from_columns(ring, rels, gen_degs, mode)
    return ModulePresentation(ring, rel_mat, mode).minimal_presentation()


# ---------------------------------------------------------------------------
# colon ideals, annihilators, intersections

def colon_by_element(j: Ideal, f: Polynomial) -> Ideal:
    """(J : f) = {g : g f lies in J}."""
    ring = j.ring
    cols = [vec_from_poly(f)] + [vec_from_poly(g) for g in j.gens]
    syz = syzygies(cols, 1, ring)
    gens = []
    for s in syz:
        d = {m: c for (comp, m), c in s.items() if comp == 0}
        g = ring._from_reduced_dict(d)
        if not g.is_zero:
            gens.append(g)
    return Ideal(ring, gens)


def ideal_quotient(j: Ideal, i: Ideal) -> Ideal:
    """(J : I), computed as the intersection of the colons by generators."""
    if i.ring is not j.ring:
        raise RingError("ideals from different rings")
    if not i.gens:
        return Ideal(j.ring, [j.ring.one])
    parts = [colon_by_element(j, f) for f in i.gens]
    out = parts[0]
    for part in parts[1:]:
        out = intersect_ideals(out, part)
    return Ideal(j.ring, out.groebner_basis())


def intersect_ideals(a: Ideal, b: Ideal) -> Ideal:
    """A cap B via the kernel of R -> R/A + R/B."""
    ring = a.ring
    unit = (0,) * ring.n
    diag = {(0, unit): 1, (1, unit): 1}
    t_cols = [vec_from_poly(g, 0) for g in a.gens] + [vec_from_poly(g, 1) for g in b.gens]
    pre = preimage_columns([diag], t_cols, 2, ring)
    gens = []
    for v in pre:
        d = {m: c for (comp, m), c in v.items() if comp == 0}
        g = ring._from_reduced_dict(d)
        if not g.is_zero:
            gens.append(g)
    return Ideal(ring, Ideal(ring, gens).groebner_basis())


def annihilator(m: ModulePresentation) -> Ideal:
    """Ann(coker A) as a reduced Groebner basis."""
    ring = m.ring
    if m.rank_f0 == 0 or m.is_zero():
        return Ideal(ring, [ring.one])
    unit = (0,) * ring.n
    rel_cols = m.matrix.columns()
    out = None
    for comp in range(m.rank_f0):
        pre = preimage_columns([{(comp, unit): 1}], rel_cols, m.rank_f0, ring)
        gens = []
        for v in pre:
            d = {mm: c for (cc, mm), c in v.items() if cc == 0}
            g = ring._from_reduced_dict(d)
            if not g.is_zero:
                gens.append(g)
        part = Ideal(ring, gens)
        out = part if out is None else intersect_ideals(out, part)
    return Ideal(ring, out.groebner_basis())
