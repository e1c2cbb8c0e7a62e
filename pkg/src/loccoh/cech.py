"""Multigraded Cech complexes for monomial ideals on monomial-presented modules.

Everything here lives in the Z^n grading, where localizations of cyclic
monomial modules have graded pieces of dimension 0 or 1 with a closed-form
membership test.  Cech differentials preserve multidegree, so the cohomology
at a single multidegree is an exact finite computation; a window is the
region of multidegrees that a scan or an aggregate (slice sums, commuting
families) actually evaluates.  Window-wide vanishing statements are
necessary-condition evidence and are labeled as such by the verifier.

Sign convention: the differential component into the subset with generator
index j added carries (-1)^(number of indices already present below j).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from . import linalg
from .groebner import Ideal, RingError
from .modules import ModulePresentation
from .rings import Mono, Ring, mono_deg

# ---------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class Box:
    """The multidegree box [lo, hi]^n."""

    lo: int
    hi: int
    n: int

    def contains(self, a) -> bool:
        return all(self.lo <= x <= self.hi for x in a)

    def __iter__(self):
        return product(range(self.lo, self.hi + 1), repeat=self.n)

    def on_boundary(self, a) -> bool:
        return any(x in (self.lo, self.hi) for x in a)

    def expanded(self, margin: int) -> "Box":
        return Box(self.lo - margin, self.hi + margin, self.n)

    def slice(self, total: int):
        """Multidegrees in the box with coordinate sum equal to total."""
        for a in self:
            if sum(a) == total:
                yield a

    def __repr__(self):
        return f"[{self.lo},{self.hi}]^{self.n}"


# ---------------------------------------------------------------------------
# monomial modules


@dataclass(frozen=True)
class CyclicSummand:
    """R/q shifted by `shift`; `rels` are the monomial generators of J + q."""

    rels: tuple
    shift: tuple

    def loc_dim(self, inverted: frozenset, a) -> int:
        """Dimension (0 or 1) of the localization piece at multidegree a."""
        b = tuple(x - s for x, s in zip(a, self.shift))
        for i, x in enumerate(b):
            if x < 0 and i not in inverted:
                return 0
        for m in self.rels:
            if all(m[i] <= b[i] for i in range(len(b)) if i not in inverted):
                return 0
        return 1


def _minimal_monomials(monos) -> tuple:
    monos = sorted(set(tuple(m) for m in monos), key=lambda m: (mono_deg(m), m))
    out: list = []
    for m in monos:
        if not any(all(g[i] <= m[i] for i in range(len(m))) for g in out):
            out.append(m)
    return tuple(out)


class MonomialModule:
    """Finite direct sum of shifted cyclic quotients R/q_j(-a_j), all monomial."""

    def __init__(self, ring: Ring, summands):
        self.ring = ring
        for g in ring.modulus:
            if not g.is_monomial():
                raise RingError("monomial modules need a monomial quotient ring")
        self.summands = tuple(summands)

    @staticmethod
    def cyclic(ring: Ring, q_gens, shift=None) -> "MonomialModule":
        if shift is None:
            shift = (0,) * ring.n
        monos = []
        for g in q_gens:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.is_zero:
                continue
            if not g.is_monomial():
                raise RingError(f"non-monomial generator {g}")
            monos.append(g.lm)
        monos += [g.lm for g in ring.modulus]
        return MonomialModule(ring, [CyclicSummand(_minimal_monomials(monos), tuple(shift))])

    @staticmethod
    def direct_sum(*mods: "MonomialModule") -> "MonomialModule":
        ring = mods[0].ring
        parts = []
        for m in mods:
            if m.ring is not ring:
                raise RingError("direct sum over different rings")
            parts.extend(m.summands)
        return MonomialModule(ring, parts)

    def piece_dim(self, a) -> int:
        return sum(s.loc_dim(frozenset(), a) for s in self.summands)

    def to_presentation(self, mode: str = "Zn") -> ModulePresentation:
        """The same module as a cokernel presentation (for the Groebner engines)."""
        ring = self.ring
        mats = []
        for s in self.summands:
            shift = s.shift if mode == "Zn" else sum(s.shift)
            gens = [ring.monomial(m) for m in s.rels if ring.is_std_monomial(m)]
            mats.append(ModulePresentation.cyclic(ring, gens, mode, shift=shift))
        return ModulePresentation.direct_sum(*mats)

    def zgraded_presentation(self) -> ModulePresentation:
        return self.to_presentation("Z")

    def __repr__(self):
        return f"MonomialModule({len(self.summands)} summands over {self.ring})"


def monomial_exponents(i: Ideal) -> list:
    out = []
    for g in i.gens:
        if not g.is_monomial():
            raise RingError(f"non-monomial ideal generator {g}")
        out.append(g.lm)
    return out


# ---------------------------------------------------------------------------
# the Cech engine

def _support(m: Mono) -> frozenset:
    return frozenset(i for i, e in enumerate(m) if e)


class CechEngine:
    """Per-multidegree complexes, cohomology, and variable actions, memoized."""

    def __init__(self, module: MonomialModule, gens):
        self.module = module
        self.ring = module.ring
        self.p = module.ring.field.p
        self.gens = [g if isinstance(g, tuple) else g.lm for g in gens]
        self.r = len(self.gens)
        self.subsets = {t: list(combinations(range(self.r), t)) for t in range(self.r + 1)}
        self.inverted = {
            sigma: frozenset().union(*(_support(self.gens[i]) for i in sigma)) if sigma else frozenset()
            for t in self.subsets
            for sigma in self.subsets[t]
        }
        self._basis_cache: dict = {}
        self._cohom_cache: dict = {}

    # -- term level -----------------------------------------------------------
    def term_basis(self, sigma, a):
        """Summand indices with a one-dimensional localized piece at a."""
        key = (sigma, a)
        got = self._basis_cache.get(key)
        if got is None:
            inv = self.inverted[sigma]
            got = tuple(s for s, sm in enumerate(self.module.summands) if sm.loc_dim(inv, a))
            self._basis_cache[key] = got
        return got

    def level_basis(self, t: int, a):
        """Ordered basis [(sigma, summand)] of the degree-a piece of C^t."""
        out = []
        for sigma in self.subsets.get(t, ()):
            for s in self.term_basis(sigma, a):
                out.append((sigma, s))
        return out

    def diff_matrix(self, t: int, a) -> np.ndarray:
        """C^t_a -> C^{t+1}_a in the level bases."""
        src = self.level_basis(t, a)
        dst = self.level_basis(t + 1, a)
        pos = {b: i for i, b in enumerate(dst)}
        out = np.zeros((len(dst), len(src)), dtype=np.int64)
        for j, (sigma, s) in enumerate(src):
            for add in range(self.r):
                if add in sigma:
                    continue
                tau = tuple(sorted(sigma + (add,)))
                i = pos.get((tau, s))
                if i is None:
                    continue
                sign = (-1) ** sum(1 for x in sigma if x < add)
                out[i, j] = sign % self.p
        return out

    # -- cohomology -------------------------------------------------------------
    def cohomology(self, i: int, a):
        """(dim, reps, img, basis) of H^i at multidegree a.

        reps: columns in C^i_a coordinates representing a basis of H^i_a;
        img: columns spanning the coboundaries inside C^i_a.
        """
        key = (i, a)
        got = self._cohom_cache.get(key)
        if got is not None:
            return got
        basis = self.level_basis(i, a)
        n_here = len(basis)
        if n_here == 0:
            got = (0, linalg.zeros(0, 0), linalg.zeros(0, 0), basis)
            self._cohom_cache[key] = got
            return got
        d_out = self.diff_matrix(i, a)
        ker = linalg.nullspace(d_out, self.p) if d_out.shape[0] else np.eye(n_here, dtype=np.int64)
        if i > 0:
            d_in = self.diff_matrix(i - 1, a)
            img = d_in if d_in.shape[1] else linalg.zeros(n_here, 0)
        else:
            img = linalg.zeros(n_here, 0)
        reps = linalg.quotient_basis(ker, img, self.p)
        got = (reps.shape[1], reps, img, basis)
        self._cohom_cache[key] = got
        return got

    def dim(self, i: int, a) -> int:
        return self.cohomology(i, a)[0]

    def project(self, i: int, a, vec: np.ndarray) -> np.ndarray:
        """Coordinates of a cocycle's class in the chosen H^i_a basis."""
        _, reps, img, basis = self.cohomology(i, a)
        n = len(basis)
        if reps.shape[1] == 0:
            return np.zeros(0, dtype=np.int64)
        stacked = np.hstack([reps, img]) if img.shape[1] else reps
        sol = linalg.solve(stacked, vec.reshape(n, 1), self.p)
        if sol is None:
            raise RingError("vector is not a cocycle class")
        return sol[: reps.shape[1]]

    def chain_variable_action(self, j: int, t: int, a) -> np.ndarray:
        """x_j: C^t_a -> C^t_{a+e_j}, a 0/1 label-matching matrix."""
        a2 = tuple(x + (1 if k == j else 0) for k, x in enumerate(a))
        src = self.level_basis(t, a)
        dst = self.level_basis(t, a2)
        pos = {b: i for i, b in enumerate(dst)}
        out = np.zeros((len(dst), len(src)), dtype=np.int64)
        for jj, b in enumerate(src):
            i = pos.get(b)
            if i is not None:
                out[i, jj] = 1
        return out

    def chain_term_action(self, j: int, sigma, a) -> np.ndarray:
        """x_j on a single localization term, in the summand-label bases."""
        a2 = tuple(x + (1 if k == j else 0) for k, x in enumerate(a))
        src = self.term_basis(sigma, a)
        dst = self.term_basis(sigma, a2)
        pos = {s: i for i, s in enumerate(dst)}
        out = np.zeros((len(dst), len(src)), dtype=np.int64)
        for jj, s in enumerate(src):
            i = pos.get(s)
            if i is not None:
                out[i, jj] = 1
        return out

    def action(self, j: int, i: int, a) -> np.ndarray:
        """Induced x_j: H^i_a -> H^i_{a+e_j} in the chosen bases."""
        a2 = tuple(x + (1 if k == j else 0) for k, x in enumerate(a))
        dim_src, reps, _, _ = self.cohomology(i, a)
        dim_dst = self.dim(i, a2)
        out = np.zeros((dim_dst, dim_src), dtype=np.int64)
        if dim_src == 0 or dim_dst == 0:
            return out
        chain = self.chain_variable_action(j, i, a)
        for col in range(dim_src):
            out[:, col] = self.project(i, a2, (chain @ reps[:, col]) % self.p)
        return out

    def monomial_action(self, m: Mono, i: int, a) -> np.ndarray:
        """Induced x^m: H^i_a -> H^i_{a+m}, composed one variable at a time."""
        cur = np.eye(self.dim(i, a), dtype=np.int64)
        here = a
        for j, e in enumerate(m):
            for _ in range(e):
                cur = (self.action(j, i, here) @ cur) % self.p
                here = tuple(x + (1 if k == j else 0) for k, x in enumerate(here))
        return cur


# ---------------------------------------------------------------------------
# windowed modules

class WindowedModule:
    """Graded pieces of H^i (or of a term module) on a window, with actions."""

    def __init__(self, engine: CechEngine, i: int, window: Box):
        self.engine = engine
        self.i = i
        self.window = window
        self._support = None

    def dim(self, a) -> int:
        return self.engine.dim(self.i, a)

    def action(self, j: int, a) -> np.ndarray:
        return self.engine.action(j, self.i, a)

    def monomial_action(self, m: Mono, a) -> np.ndarray:
        return self.engine.monomial_action(m, self.i, a)

    def support(self):
        """Nonzero window pieces as a sorted list of (multidegree, dim)."""
        if self._support is None:
            self._support = sorted((a, d) for a in self.window if (d := self.dim(a)))
        return self._support

    def is_zero_on_window(self) -> bool:
        return not self.support()

    def total_dim_on_window(self) -> int:
        return sum(d for _, d in self.support())

    def slice_dims(self) -> dict:
        out: dict = {}
        for a, d in self.support():
            out[sum(a)] = out.get(sum(a), 0) + d
        return out


class TermWindow(WindowedModule):
    """A single Cech term (a localization of M), windowed like cohomology."""

    def __init__(self, engine: CechEngine, sigma, window: Box):
        super().__init__(engine, len(sigma), window)
        self.sigma = tuple(sigma)

    def dim(self, a) -> int:
        return len(self.engine.term_basis(self.sigma, a))

    def action(self, j: int, a) -> np.ndarray:
        return self.engine.chain_term_action(j, self.sigma, a)


def module_pieces(m: MonomialModule, window: Box) -> WindowedModule:
    """M itself, windowed: the empty-subset Cech term."""
    return TermWindow(CechEngine(m, []), (), window)


def localized_pieces(m: MonomialModule, u, window: Box) -> WindowedModule:
    """Pieces of the localization M_u for a monomial u."""
    if not isinstance(u, tuple):
        u = u.lm
    return TermWindow(CechEngine(m, [u]), (0,), window)


def cech_cohomology(i: int, i_gens, m: MonomialModule, window: Box) -> WindowedModule:
    """Windowed H^i of the Cech complex on the given monomial generators."""
    gens = [g if isinstance(g, tuple) else g.lm for g in i_gens]
    return WindowedModule(CechEngine(m, gens), i, window)


def cd_scan(i_gens, m: MonomialModule, window: Box) -> int:
    """Largest i with a nonzero piece in the window: a lower bound for cd."""
    gens = [g if isinstance(g, tuple) else g.lm for g in i_gens]
    engine = CechEngine(m, gens)
    for i in range(engine.r, -1, -1):
        for a in window:
            if engine.dim(i, a):
                return i
    return -1


# ---------------------------------------------------------------------------
# simplicial complexes and the independent combinatorial oracle

class SimplicialComplex:
    def __init__(self, n_vertices: int, facets):
        self.n = n_vertices
        faces = {frozenset()}
        for f in facets:
            f = frozenset(f)
            for k in range(len(f) + 1):
                for sub in combinations(sorted(f), k):
                    faces.add(frozenset(sub))
        self.faces = faces

    @staticmethod
    def from_nonfaces(n: int, nonfaces) -> "SimplicialComplex":
        """All subsets of the vertex set containing no declared nonface."""
        nf = [frozenset(x) for x in nonfaces]
        faces = []
        for k in range(n + 1):
            for sub in combinations(range(n), k):
                s = frozenset(sub)
                if not any(x <= s for x in nf):
                    faces.append(s)
        sc = SimplicialComplex.__new__(SimplicialComplex)
        sc.n = n
        sc.faces = set(faces) | {frozenset()}
        return sc

    def is_face(self, w) -> bool:
        return frozenset(w) in self.faces

    def link(self, w) -> "SimplicialComplex":
        w = frozenset(w)
        sc = SimplicialComplex.__new__(SimplicialComplex)
        sc.n = self.n
        sc.faces = {f - w for f in self.faces if w <= f}
        return sc

    def faces_by_dim(self) -> dict:
        out: dict = {}
        for f in self.faces:
            out.setdefault(len(f) - 1, []).append(tuple(sorted(f)))
        for v in out.values():
            v.sort()
        return out

    def reduced_cohomology_dim(self, j: int, p: int) -> int:
        """dim of reduced simplicial cohomology in cohomological degree j."""
        byd = self.faces_by_dim()
        if j not in byd:
            return 0
        here = byd[j]
        above = byd.get(j + 1, [])
        below = byd.get(j - 1, [])
        pos_above = {f: i for i, f in enumerate(above)}

        def coboundary(rows_faces, cols_faces, pos):
            mat = np.zeros((len(rows_faces), len(cols_faces)), dtype=np.int64)
            for jj, f in enumerate(cols_faces):
                fset = set(f)
                for v in range(self.n):
                    if v in fset:
                        continue
                    tau = tuple(sorted(fset | {v}))
                    i = pos.get(tau)
                    if i is None:
                        continue
                    sign = (-1) ** sum(1 for x in f if x < v)
                    mat[i, jj] = sign % p
            return mat

        d_out = coboundary(above, here, pos_above)
        rank_out = linalg.rank(d_out, p)
        if below:
            pos_here = {f: i for i, f in enumerate(here)}
            d_in = coboundary(here, below, pos_here)
            rank_in = linalg.rank(d_in, p)
        else:
            rank_in = 0
        return len(here) - rank_out - rank_in

    def stanley_reisner_nonface_monomials(self) -> list:
        """Exponent tuples of the minimal nonfaces."""
        out = []
        for k in range(1, self.n + 1):
            for sub in combinations(range(self.n), k):
                s = frozenset(sub)
                if s in self.faces:
                    continue
                if all(frozenset(x) in self.faces for x in combinations(sorted(s), k - 1)):
                    out.append(tuple(1 if i in s else 0 for i in range(self.n)))
        return out


def hochster_oracle(delta: SimplicialComplex, i: int, a, p: int) -> int:
    """dim H^i_m(k[Delta])_a via reduced cohomology of links (combinatorial)."""
    if any(x > 0 for x in a):
        return 0
    w = frozenset(j for j, x in enumerate(a) if x < 0)
    if not delta.is_face(w):
        return 0
    return delta.link(w).reduced_cohomology_dim(i - len(w) - 1, p)


# ---------------------------------------------------------------------------
# the comparison map between two generating sets (smaller ideal inside larger)

class PreconditionError(Exception):
    """A verified hypothesis of an operation fails on the given instance."""


def natural_map_between_ideals(j_gens, i_gens, m: MonomialModule, i: int, window: Box):
    """Per-multidegree maps H^i(large generating set) -> H^i(subset).

    The chain map projects away Cech components touching the extra
    generators.  Requires j_gens to be a subset of i_gens and both grades on
    M to agree (checked; mirrors the two-ideal comparison hypothesis).
    Returns a list of (multidegree, dim_source, dim_target, injective).
    """
    j_monos = [g if isinstance(g, tuple) else g.lm for g in j_gens]
    i_monos = [g if isinstance(g, tuple) else g.lm for g in i_gens]
    if not set(j_monos) <= set(i_monos):
        raise PreconditionError("smaller generator set is not a subset")
    ordered = list(j_monos) + [g for g in i_monos if g not in set(j_monos)]
    ring = m.ring
    pres = m.zgraded_presentation()
    gi = _grade_of_monomials(i_monos, ring, pres)
    gj = _grade_of_monomials(j_monos, ring, pres)
    if gi != gj:
        raise PreconditionError(f"grade mismatch: {gi} vs {gj}")
    big = CechEngine(m, ordered)
    small = CechEngine(m, j_monos)
    rj = len(j_monos)
    p = big.p
    rows = []
    for a in window:
        dim_b = big.dim(i, a)
        dim_s = small.dim(i, a)
        if dim_b == 0 and dim_s == 0:
            continue
        src_basis = big.level_basis(i, a)
        dst_basis = small.level_basis(i, a)
        pos = {b: k for k, b in enumerate(dst_basis)}
        chain = np.zeros((len(dst_basis), len(src_basis)), dtype=np.int64)
        for jj, (sigma, s) in enumerate(src_basis):
            if all(x < rj for x in sigma):
                k = pos.get((sigma, s))
                if k is not None:
                    chain[k, jj] = 1
        _, reps, _, _ = big.cohomology(i, a)
        mat = np.zeros((dim_s, dim_b), dtype=np.int64)
        for col in range(dim_b):
            mat[:, col] = small.project(i, a, (chain @ reps[:, col]) % p)
        rows.append((a, dim_b, dim_s, linalg.rank(mat, p) == dim_b))
    return rows


def _grade_of_monomials(monos, ring: Ring, pres: ModulePresentation):
    from .homology import grade

    ideal = Ideal(ring, [ring.monomial(mn) for mn in monos])
    return grade(ideal, pres).value


# ---------------------------------------------------------------------------
# windowed Hom spaces into local cohomology

def stabilization_margin(h: WindowedModule) -> int:
    """Window growth past which ray patterns of the piece data repeat.

    Piece dimensions and action patterns at a multidegree depend only on its
    coordinates clamped to the largest exponent appearing in the module or
    generator data, so values stable under enlargement by this margin have
    left the transient region.
    """
    exps = [1]
    for sm in h.engine.module.summands:
        exps.extend(abs(e) for e in sm.shift)
        for rel in sm.rels:
            exps.extend(rel)
    for g in h.engine.gens:
        exps.extend(g)
    return max(exps) + 2


def _solve_hom_system(n: ModulePresentation, h: WindowedModule, d: int, window: Box) -> int:
    """Dimension of degree-d homomorphisms N -> H with unknowns on the window."""
    ring = n.ring
    p = ring.field.p
    support = {}
    for a in window:
        dim = h.dim(a)
        if dim:
            support[a] = dim
    gen_shifts = n.gen_shifts
    unknown_blocks = []  # (gen index, multidegree, dim, offset)
    offset = 0
    for l, b in enumerate(gen_shifts):
        target_total = sum(b) + d
        for a, dim in support.items():
            if sum(a) != target_total:
                continue
            unknown_blocks.append((l, a, dim, offset))
            offset += dim
    if offset == 0:
        return 0
    block_at = {}
    for l, a, dim, off in unknown_blocks:
        block_at.setdefault(l, []).append((a, dim, off))
    rows = []
    mat_b = n.matrix
    for c in range(mat_b.ncols):
        entries = []
        for l in range(mat_b.nrows):
            f = mat_b.entry(l, c)
            if f.is_zero:
                continue
            if not f.is_monomial():
                raise RingError("windowed Hom needs monomial relations")
            entries.append((l, f.lm, f.lc))
        outputs: dict = {}
        for l, mono, coeff in entries:
            for a, dim, off in block_at.get(l, ()):
                out_a = tuple(x + e for x, e in zip(a, mono))
                outputs.setdefault(out_a, []).append((a, mono, coeff, dim, off))
        for out_a, contribs in outputs.items():
            out_dim = h.dim(out_a)
            if out_dim == 0:
                continue
            row_block = np.zeros((out_dim, offset), dtype=np.int64)
            for a, mono, coeff, dim, off in contribs:
                act = h.monomial_action(mono, a)
                row_block[:, off : off + dim] = (row_block[:, off : off + dim] + coeff * act) % p
            rows.append(row_block)
    if rows:
        system = np.vstack(rows) % p
        return offset - linalg.rank(system, p)
    return offset


def windowed_hom_into_localcoh(n: ModulePresentation, h: WindowedModule, d: int):
    """(dimension, boundary_complete) of degree-d homomorphisms N -> H.

    N must be multigraded with monomial relation entries.  Unknowns are the
    generator images on the matching total-degree slices of H; relation
    columns impose linear conditions through the variable actions (evaluated
    exactly, also outside the window).  The value is computed twice, on the
    window and on an enlargement past the stabilization margin; agreement
    marks the degree boundary-complete.
    """
    if n.mode != "Zn":
        raise RingError("windowed Hom needs a multigraded presentation")
    margin = stabilization_margin(h)
    d1 = _solve_hom_system(n, h, d, h.window)
    d2 = _solve_hom_system(n, h, d, h.window.expanded(margin))
    return d1, d1 == d2


def _ext_into_component(n: ModulePresentation, h: WindowedModule, j: int, delta) -> int:
    """dim of the multidegree-delta component of Ext^j(N, H) via Hom(F_*, H)."""
    p = n.ring.field.p
    res = n.resolution(j + 1)

    def piece(k):
        if k < 0 or k >= len(res.shifts):
            return []
        return [tuple(s + dd for s, dd in zip(shift, delta)) for shift in res.shift(k)]

    def block(k):
        """Hom(F_k, H) -> Hom(F_{k+1}, H) at this component."""
        dmat = res.differential(k + 1)
        if dmat is None:
            return None
        src = piece(k)
        dst = piece(k + 1)
        src_dims = [h.dim(a) for a in src]
        dst_dims = [h.dim(a) for a in dst]
        out = np.zeros((sum(dst_dims), sum(src_dims)), dtype=np.int64)
        so = np.cumsum([0] + src_dims)
        do = np.cumsum([0] + dst_dims)
        for l in range(len(src)):
            for lp in range(len(dst)):
                f = dmat.entry(l, lp)
                if f.is_zero:
                    continue
                if not f.is_monomial():
                    raise RingError("multigraded resolutions must have monomial entries")
                act = (f.lc * h.monomial_action(f.lm, src[l])) % p
                out[do[lp] : do[lp + 1], so[l] : so[l + 1]] = act
        return out

    here = piece(j)
    dim_here = sum(h.dim(a) for a in here)
    if dim_here == 0:
        return 0
    out_map = block(j)
    in_map = block(j - 1) if j >= 1 else None
    kernel = dim_here if out_map is None else dim_here - linalg.rank(out_map, p)
    image = 0 if in_map is None else linalg.rank(in_map, p)
    return kernel - image


def windowed_ext_into(n: ModulePresentation, h: WindowedModule, j: int, d: int):
    """(dimension, stable) of the total-degree-d piece of Ext^j(N, H).

    Contributing multidegree components are enumerated from the window
    support of H shifted by the resolution degrees; stability of the value
    under window enlargement marks it boundary-complete.
    """
    if n.mode != "Zn":
        raise RingError("windowed Ext needs a multigraded presentation")
    margin = stabilization_margin(h)

    def total(window: Box) -> int:
        res = n.resolution(j + 1)
        deltas = set()
        for a in window:
            if h.dim(a) == 0:
                continue
            for k in range(min(j + 2, len(res.shifts))):
                for shift in res.shift(k):
                    delta = tuple(x - s for x, s in zip(a, shift))
                    if sum(delta) == d:
                        deltas.add(delta)
        return sum(_ext_into_component(n, h, j, delta) for delta in sorted(deltas))

    d1 = total(h.window)
    d2 = total(h.window.expanded(margin))
    return d1, d1 == d2


def endo_action_slice_matrices(m: MonomialModule, h: WindowedModule, phi) -> dict:
    """Induced maps of a degree-0 endomorphism on the window slices of H.

    phi lists, per summand s, the image of its generator as a Vec over
    (summand t, monomial) terms.  Returns {slice total: matrix} in the
    concatenated cohomology bases of the slice support.
    """
    engine = h.engine
    i = h.i
    p = engine.p
    shifts = [sm.shift for sm in m.summands]
    terms = [
        (s, t, mono, coeff)
        for s, img in enumerate(phi)
        for (t, mono), coeff in img.items()
    ]
    support = h.support()
    slices: dict = {}
    for a, dim in support:
        slices.setdefault(sum(a), []).append((a, dim))
    out = {}
    for total, blocks in sorted(slices.items()):
        offs = {}
        pos = 0
        for a, dim in blocks:
            offs[a] = (pos, dim)
            pos += dim
        mat = np.zeros((pos, pos), dtype=np.int64)
        for a, dim_a in blocks:
            src_basis = engine.level_basis(i, a)
            _, reps, _, _ = engine.cohomology(i, a)
            by_delta: dict = {}
            for s, t, mono, coeff in terms:
                delta = tuple(e + st - ss for e, st, ss in zip(mono, shifts[t], shifts[s]))
                by_delta.setdefault(delta, []).append((s, t, mono, coeff))
            for delta, tl in by_delta.items():
                a2 = tuple(x + e for x, e in zip(a, delta))
                if a2 not in offs:
                    continue
                dst_basis = engine.level_basis(i, a2)
                dpos = {b: k for k, b in enumerate(dst_basis)}
                chain = np.zeros((len(dst_basis), len(src_basis)), dtype=np.int64)
                for col, (sigma, s_lab) in enumerate(src_basis):
                    for s, t, mono, coeff in tl:
                        if s_lab != s:
                            continue
                        k = dpos.get((sigma, t))
                        if k is not None:
                            chain[k, col] = (chain[k, col] + coeff) % p
                off2, dim2 = offs[a2]
                off1, dim1 = offs[a]
                for col in range(dim1):
                    cls = engine.project(i, a2, (chain @ reps[:, col]) % p)
                    mat[off2 : off2 + dim2, off1 + col] = (mat[off2 : off2 + dim2, off1 + col] + cls) % p
        out[total] = mat
    return out


def endo_action_injective(m: MonomialModule, h: WindowedModule, phis) -> bool:
    """Whether the basis endomorphisms act linearly independently on the window."""
    if not phis:
        return True
    p = h.engine.p
    flat = []
    for phi in phis:
        mats = endo_action_slice_matrices(m, h, phi)
        flat.append(np.concatenate([mats[k].ravel() for k in sorted(mats)]) if mats else np.zeros(0, dtype=np.int64))
    stack = np.vstack(flat) % p
    return linalg.rank(stack, p) == len(phis)


def commuting_family_dimension(h: WindowedModule, window: Box | None = None) -> int:
    """Dimension of families psi_a: H_a -> H_a commuting with all variable
    actions inside the window."""
    p = h.engine.p
    if window is None:
        window = h.window
    support = sorted((a, dim) for a in window if (dim := h.dim(a)))
    offsets = {}
    total = 0
    for a, dim in support:
        offsets[a] = (total, dim)
        total += dim * dim
    if total == 0:
        return 0
    rows = []
    nvars = h.engine.ring.n
    for a, dim_a in support:
        for j in range(nvars):
            a2 = tuple(x + (1 if k == j else 0) for k, x in enumerate(a))
            if not window.contains(a2):
                continue
            dim_a2 = h.dim(a2)
            if dim_a2 == 0:
                continue
            x = h.action(j, a)  # dim_a2 x dim_a
            # constraint: psi_{a2} X - X psi_a = 0
            block = np.zeros((dim_a2 * dim_a, total), dtype=np.int64)
            off2 = offsets.get(a2)
            off1 = offsets[a]
            for r in range(dim_a2):
                for c in range(dim_a):
                    row = r * dim_a + c
                    if off2 is not None:
                        base2, d2 = off2
                        for k in range(dim_a2):
                            block[row, base2 + r * d2 + k] = (block[row, base2 + r * d2 + k] + x[k, c]) % p
                    base1, d1 = off1
                    for k in range(dim_a):
                        block[row, base1 + k * d1 + c] = (block[row, base1 + k * d1 + c] - x[r, k]) % p
            rows.append(block % p)
    if not rows:
        return total
    system = np.vstack(rows)
    return total - linalg.rank(system, p)


# ---------------------------------------------------------------------------
# localization at monomial primes (square-free hypothesis checks)

def localize_at_monomial_prime(m: MonomialModule, p_vars: frozenset):
    """M localized at the monomial prime (x_i : i in p_vars), as monomial data
    over the polynomial ring on those variables.  Returns None when zero."""
    keep = sorted(p_vars)
    ring = m.ring
    names = [ring.names[i] for i in keep]
    s_small = Ring.poly_ring(ring.field.p, names, ring.order.kind)
    mod_stripped = []
    ring_dead = False
    for g in ring.modulus:
        rel = g.lm
        if not any(rel[i] for i in keep):
            ring_dead = True  # modulus generator becomes a unit
            break
        mod_stripped.append(tuple(rel[i] for i in keep))
    if ring_dead:
        return None
    summands = []
    for sm in m.summands:
        stripped = []
        dead = False
        for rel in sm.rels:
            if not any(rel[i] for i in keep):
                dead = True  # relation becomes a unit after inversion
                break
            stripped.append(tuple(rel[i] for i in keep))
        if not dead:
            summands.append(_minimal_monomials(stripped))
    if not summands:
        return None
    from .groebner import quotient_ring

    if mod_stripped:
        r_small = quotient_ring(s_small, [s_small.monomial(mn) for mn in _minimal_monomials(mod_stripped)])
    else:
        r_small = s_small
    zero = tuple(0 for _ in keep)
    return MonomialModule(r_small, [CyclicSummand(rels, zero) for rels in summands])


def depth_at_monomial_prime(m: MonomialModule, p_vars: frozenset):
    """depth of M localized at a monomial prime, None when the stalk is zero."""
    loc = localize_at_monomial_prime(m, p_vars)
    if loc is None:
        return None
    from .homology import depth

    return depth(loc.zgraded_presentation()).value
