"""Hom, tensor, Ext, Tor, grade, depth, and regular-sequence search.

Ext and Tor are computed from a minimal free resolution of the first
argument.  Both are presented as subquotients of free covers: Hom(F_i, M)
and F_i (x) M are covered by free modules on pairs (resolution generator,
module generator), and kernels/images are extracted with syzygy-based
preimages, so everything works uniformly over quotient rings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .groebner import (
    GradedMatrix,
    Ideal,
    Vec,
    maximal_ideal,
    preimage_columns,
    shift_add,
    shift_sub,
    vec_from_poly,
)
from .modules import ModulePresentation, subquotient
from .rings import Polynomial, Ring, RingError


# ---------------------------------------------------------------------------
# free covers of Hom(F, M) and F (x) M

def _cover_pairs(n_f: int, n_m: int):
    return [(l, u) for l in range(n_f) for u in range(n_m)]


def _cover_shifts(f_shifts, m_shifts, variant: str):
    out = []
    for l in range(len(f_shifts)):
        for u in range(len(m_shifts)):
            if variant == "hom":
                out.append(shift_sub(m_shifts[u], f_shifts[l]))
            else:
                out.append(shift_add(f_shifts[l], m_shifts[u]))
    return out


def _relation_block_columns(f_shifts, m: ModulePresentation):
    """Columns spanning the module relations inside a cover over f_shifts."""
    n_m = m.rank_f0
    b = m.matrix
    cols = []
    for l in range(len(f_shifts)):
        for c in range(b.ncols):
            col: Vec = {}
            for u in range(n_m):
                f = b.entry(u, c)
                for mono, coeff in f.terms:
                    col[(l * n_m + u, mono)] = coeff
            if col:
                cols.append(col)
    return cols


def _map_block_columns(d: GradedMatrix, m: ModulePresentation, variant: str):
    """Columns of the cover-level map induced by a differential d.

    hom:    Hom(F_dst, M) -> Hom(F_src, M) where d: F_src -> F_dst,
            column for source coordinate (l', u), rows (l, u), entry d[l', l].
    tensor: F_src (x) M -> F_dst (x) M, column for (l, u), rows (l', u),
            entry d[l', l].
    """
    n_m = m.rank_f0
    cols = []
    if variant == "hom":
        # source pairs (l', u) with l' over F_dst gens (d's rows)
        for lp in range(d.nrows):
            for u in range(n_m):
                col: Vec = {}
                for l in range(d.ncols):
                    f = d.entry(lp, l)
                    for mono, coeff in f.terms:
                        col[(l * n_m + u, mono)] = coeff
                cols.append(col)
    else:
        # source pairs (l, u) with l over F_src gens (d's columns)
        for l in range(d.ncols):
            for u in range(n_m):
                col: Vec = {}
                for lp in range(d.nrows):
                    f = d.entry(lp, l)
                    for mono, coeff in f.terms:
                        col[(lp * n_m + u, mono)] = coeff
                cols.append(col)
    return cols


def _unit_columns(ring: Ring, count: int):
    unit = (0,) * ring.n
    return [{(i, unit): 1} for i in range(count)]


# ---------------------------------------------------------------------------
# Hom / Ext / Tor

def hom_module(n: ModulePresentation, m: ModulePresentation) -> ModulePresentation:
    """Presentation of Hom(N, M)."""
    return ext(0, n, m)


def ext(i: int, n: ModulePresentation, m: ModulePresentation) -> ModulePresentation:
    """Presentation of Ext^i(N, M) with grading inherited from both sides."""
    if i < 0:
        raise RingError("negative homological index")
    ring = n.ring
    if ring is not m.ring or n.mode != m.mode:
        raise RingError("modules over different rings or grading modes")
    mode = n.mode
    res = n.resolution(i + 1)
    if i >= len(res.shifts) or res.rank(i) == 0 or m.rank_f0 == 0:
        return ModulePresentation.zero(ring, mode)
    f_i = res.shift(i)
    cover_shifts = _cover_shifts(f_i, m.gen_shifts, "hom")
    d_next = res.differential(i + 1)
    if d_next is not None:
        phi_cols = _map_block_columns(d_next, m, "hom")
        target_rels = _relation_block_columns(res.shift(i + 1), m)
        num = preimage_columns(phi_cols, target_rels, res.rank(i + 1) * m.rank_f0, ring)
    else:
        num = _unit_columns(ring, len(cover_shifts))
    den = list(_relation_block_columns(f_i, m))
    if i >= 1:
        d_i = res.differential(i)
        if d_i is not None:
            den += _map_block_columns(d_i, m, "hom")
    return subquotient(ring, num, den, cover_shifts, mode)


def tor(i: int, n: ModulePresentation, m: ModulePresentation) -> ModulePresentation:
    """Presentation of Tor_i(N, M)."""
    if i < 0:
        raise RingError("negative homological index")
    ring = n.ring
    if ring is not m.ring or n.mode != m.mode:
        raise RingError("modules over different rings or grading modes")
    mode = n.mode
    res = n.resolution(i + 1)
    if i >= len(res.shifts) or res.rank(i) == 0 or m.rank_f0 == 0:
        return ModulePresentation.zero(ring, mode)
    f_i = res.shift(i)
    cover_shifts = _cover_shifts(f_i, m.gen_shifts, "tensor")
    if i == 0:
        num = _unit_columns(ring, len(cover_shifts))
    else:
        d_i = res.differential(i)
        phi_cols = _map_block_columns(d_i, m, "tensor")
        target_rels = _relation_block_columns(res.shift(i - 1), m)
        num = preimage_columns(phi_cols, target_rels, res.rank(i - 1) * m.rank_f0, ring)
    den = list(_relation_block_columns(f_i, m))
    d_next = res.differential(i + 1)
    if d_next is not None:
        den += _map_block_columns(d_next, m, "tensor")
    return subquotient(ring, num, den, cover_shifts, mode)


# ---------------------------------------------------------------------------
# explicit Hom spaces (linear system on generator images)

def hom_space_basis(n: ModulePresentation, m: ModulePresentation, d):
    """Degree-d homomorphisms N -> M solved directly on generator images.

    Independent of the presentation-level hom_module: unknowns are the
    coordinates of each generator image in the graded piece bases of M, and
    every relation column contributes one linear condition per target basis
    vector.  Returns (dimension, [phi]) with each phi a list of image vectors
    (one Vec per generator of N).
    """
    import numpy as np

    from . import linalg

    ring = n.ring
    p = ring.field.p
    pieces = [m.piece_basis(shift_add(s, d)) for s in n.gen_shifts]
    offsets = []
    total = 0
    for pb in pieces:
        offsets.append(total)
        total += len(pb)
    if total == 0:
        return 0, []
    rows = []
    b = n.matrix
    for c in range(b.ncols):
        target_piece = m.piece_basis(shift_add(b.col_shifts[c], d))
        if not target_piece:
            continue
        row = np.zeros((len(target_piece), total), dtype=np.int64)
        used = False
        for l in range(b.nrows):
            f = b.entry(l, c)
            if f.is_zero or not pieces[l]:
                continue
            mult = m.multiplication_matrix(f, shift_add(n.gen_shifts[l], d))
            row[:, offsets[l] : offsets[l] + len(pieces[l])] = (
                row[:, offsets[l] : offsets[l] + len(pieces[l])] + mult
            ) % p
            used = True
        if used:
            rows.append(row)
    if rows:
        system = np.vstack(rows) % p
        basis = linalg.nullspace(system, p)
    else:
        basis = np.eye(total, dtype=np.int64)
    phis = []
    for k in range(basis.shape[1]):
        phi = []
        for l, pb in enumerate(pieces):
            img: Vec = {}
            for idx, (comp, mono) in enumerate(pb):
                coeff = int(basis[offsets[l] + idx, k]) % p
                if coeff:
                    img[(comp, mono)] = coeff
            phi.append(img)
        phis.append(phi)
    return basis.shape[1], phis


# ---------------------------------------------------------------------------
# grade and depth

@dataclass(frozen=True)
class GradeValue:
    """A grade: a nonnegative integer or the distinguished infinite value."""

    value: int | None
    note: str = ""

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other
        if isinstance(other, GradeValue):
            return self.value == other.value
        return NotImplemented

    def __ge__(self, k: int) -> bool:
        return self.value is None or self.value >= k

    def __repr__(self):
        return "grade(inf)" if self.value is None else f"grade({self.value})"


def grade(i: Ideal, m: ModulePresentation, max_i: int | None = None) -> GradeValue:
    """grade(I, M) = min{ j : Ext^j(R/I, M) != 0 }, infinite when none exists."""
    ring = i.ring
    if ring is not m.ring:
        raise RingError("ideal and module over different rings")
    if m.is_zero():
        return GradeValue(None, note="zero module")
    if i.is_unit():
        return GradeValue(None, note="unit ideal")
    bound = ring.n if max_i is None else max_i
    ri = ModulePresentation.cyclic(ring, i.gens, m.mode)
    for j in range(bound + 1):
        e = ext(j, ri, m)
        if not e.is_zero():
            return GradeValue(j)
    return GradeValue(None, note=f"all Ext^j vanish for j <= {bound}")


def depth(m: ModulePresentation) -> GradeValue:
    """depth(M) = grade of the irrelevant maximal ideal on M."""
    if m.is_zero():
        return GradeValue(None, note="zero module")
    return grade(maximal_ideal(m.ring), m)


# ---------------------------------------------------------------------------
# regular sequences

class RegularSequenceNotFound(Exception):
    """Search budget exhausted; says nothing about nonexistence."""


@dataclass
class RegularSequenceWitness:
    elements: list[Polynomial] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.elements)


def is_regular_element(f: Polynomial, m: ModulePresentation) -> bool:
    """True iff multiplication by f is injective on coker(A)."""
    if f.is_zero:
        return False
    ring = m.ring
    rank = m.rank_f0
    f_cols = []
    for l in range(rank):
        col = {(l, mono): c for mono, c in f.terms}
        f_cols.append(col)
    rel_cols = m.matrix.columns()
    pre = preimage_columns(f_cols, rel_cols, rank, ring)
    rel = m.relations()
    return all(not rel.nf(v) for v in pre)


def quotient_by_element(m: ModulePresentation, f: Polynomial) -> ModulePresentation:
    """M / fM as a presentation on the same generators."""
    from .groebner import poly_degree_for_mode

    ring = m.ring
    fd = poly_degree_for_mode(f, m.mode)
    rows = [list(r) for r in m.matrix.entries]
    col_shifts = list(m.matrix.col_shifts)
    for l in range(m.rank_f0):
        for u in range(m.rank_f0):
            rows[u].append(f if u == l else ring.zero)
        col_shifts.append(shift_add(m.gen_shifts[l], fd))
    mat = GradedMatrix(ring, rows, m.gen_shifts, col_shifts, m.mode)
    return ModulePresentation(ring, mat, m.mode).minimal_presentation()


def _candidate_elements(i: Ideal, max_gens: int = 3, max_coeff: int = 4):
    """Generators first, then small coefficient combinations, deterministically."""
    gens = i.gens
    for size in range(1, min(max_gens, len(gens)) + 1):
        for idxs in combinations(range(len(gens)), size):
            for coeffs in product(range(1, max_coeff + 1), repeat=size):
                f = i.ring.zero
                for c, ix in zip(coeffs, idxs):
                    f = f + gens[ix] * c
                yield f


def find_regular_sequence(i: Ideal, m: ModulePresentation, c: int) -> RegularSequenceWitness:
    """A certified M-regular sequence of length c inside I."""
    witness = RegularSequenceWitness()
    current = m
    for _ in range(c):
        found = None
        for f in _candidate_elements(i):
            if is_regular_element(f, current):
                found = f
                break
        if found is None:
            raise RegularSequenceNotFound(
                f"no regular element found in the combination budget at step {witness.length + 1}"
            )
        witness.elements.append(found)
        current = quotient_by_element(current, found)
    return witness
